//! Faces of the ambient cube `I^n` written as words over `{0, 1, *}`.
//!
//! A word of length `n` names the face of `[0,1]^n` whose coordinates are
//! fixed to `0` or `1` at the non-star letters and free at the star
//! letters. The dimension of the face is the number of stars, and the
//! face order is letterwise with `0 ⪯ *` and `1 ⪯ *`.
//!
//! Words are packed into two `u64` masks, so the ambient dimension is
//! limited to [`MAX_AMBIENT`]. Bit `i` of each mask is letter `i`
//! counting from the left.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported ambient dimension.
pub const MAX_AMBIENT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Zero,
    One,
    Star,
}

impl Letter {
    pub fn to_char(self) -> char {
        match self {
            Letter::Zero => '0',
            Letter::One => '1',
            Letter::Star => '*',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '0' => Some(Letter::Zero),
            '1' => Some(Letter::One),
            '*' => Some(Letter::Star),
            _ => None,
        }
    }
}

/// A face of `I^n`.
///
/// Invariant: `ones & stars == 0` and both masks vanish above bit `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CubeWord {
    n: u8,
    stars: u64,
    ones: u64,
}

#[inline]
fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates all submasks of `mask`, including `0` and `mask` itself.
pub(crate) fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            Some((cur - 1) & mask)
        };
        Some(cur)
    })
}

impl CubeWord {
    /// Builds a word from raw masks. Fails if the masks overlap or exceed `n`.
    pub fn from_masks(n: usize, stars: u64, ones: u64) -> Result<Self> {
        if n > MAX_AMBIENT {
            return Err(Error::Structural(format!(
                "ambient dimension {n} exceeds the supported maximum {MAX_AMBIENT}"
            )));
        }
        if stars & ones != 0 || (stars | ones) & !low_mask(n) != 0 {
            return Err(Error::Structural(format!(
                "invalid masks for ambient dimension {n}: stars={stars:#x} ones={ones:#x}"
            )));
        }
        Ok(Self {
            n: n as u8,
            stars,
            ones,
        })
    }

    pub(crate) fn from_masks_unchecked(n: usize, stars: u64, ones: u64) -> Self {
        debug_assert!(n <= MAX_AMBIENT && stars & ones == 0);
        Self {
            n: n as u8,
            stars,
            ones,
        }
    }

    pub fn from_letters(letters: &[Letter]) -> Result<Self> {
        let n = letters.len();
        let mut stars = 0u64;
        let mut ones = 0u64;
        if n > MAX_AMBIENT {
            return Err(Error::Structural(format!(
                "ambient dimension {n} exceeds the supported maximum {MAX_AMBIENT}"
            )));
        }
        for (i, l) in letters.iter().enumerate() {
            match l {
                Letter::Zero => {}
                Letter::One => ones |= 1 << i,
                Letter::Star => stars |= 1 << i,
            }
        }
        Ok(Self {
            n: n as u8,
            stars,
            ones,
        })
    }

    /// The vertex with the given 0/1 coordinates (bit `i` = coordinate `i`).
    pub fn vertex(n: usize, code: u64) -> Result<Self> {
        Self::from_masks(n, 0, code)
    }

    /// The full cube `(*, ..., *)`.
    pub fn full(n: usize) -> Result<Self> {
        Self::from_masks(n, low_mask(n), 0)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n as usize
    }

    pub fn dim(&self) -> usize {
        self.stars.count_ones() as usize
    }

    pub fn stars(&self) -> u64 {
        self.stars
    }

    pub fn ones(&self) -> u64 {
        self.ones
    }

    pub fn is_vertex(&self) -> bool {
        self.stars == 0
    }

    pub fn letter(&self, i: usize) -> Letter {
        assert!(i < self.ambient_dim(), "letter index {i} out of range");
        if self.stars >> i & 1 == 1 {
            Letter::Star
        } else if self.ones >> i & 1 == 1 {
            Letter::One
        } else {
            Letter::Zero
        }
    }

    pub fn letters(&self) -> Vec<Letter> {
        (0..self.ambient_dim()).map(|i| self.letter(i)).collect()
    }

    /// Positions of the star letters, left to right.
    pub fn star_positions(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.ambient_dim()).filter(move |&i| self.stars >> i & 1 == 1)
    }

    /// The face order `self ⪯ other`.
    pub fn is_subface_of(&self, other: &CubeWord) -> bool {
        self.n == other.n
            && self.stars & !other.stars == 0
            && (self.ones & !other.stars) == other.ones
    }

    /// Whether the vertex `v` lies in this face. `v` must be 0-dimensional.
    pub fn contains_vertex(&self, v: &CubeWord) -> bool {
        v.is_vertex() && v.is_subface_of(self)
    }

    /// All vertices of the face, `2^dim` of them.
    pub fn vertices(&self) -> impl Iterator<Item = CubeWord> + '_ {
        let n = self.ambient_dim();
        let base = self.ones;
        submasks(self.stars).map(move |s| CubeWord::from_masks_unchecked(n, 0, base | s))
    }

    /// All nonempty subfaces including the face itself, `3^dim` of them.
    pub fn subfaces(&self) -> impl Iterator<Item = CubeWord> + '_ {
        let n = self.ambient_dim();
        let stars = self.stars;
        let base = self.ones;
        submasks(stars).flat_map(move |kept| {
            let fixed = stars & !kept;
            submasks(fixed).map(move |o| CubeWord::from_masks_unchecked(n, kept, base | o))
        })
    }

    /// The `2·dim` codimension-one subfaces together with their integer
    /// incidence signs. Replacing the `i`-th star (1-based, left to right)
    /// by `1` carries sign `(-1)^(i+1)`, by `0` sign `(-1)^i`.
    pub fn facets(&self) -> impl Iterator<Item = (CubeWord, i8)> + '_ {
        let n = self.ambient_dim();
        self.star_positions().enumerate().flat_map(move |(idx, p)| {
            let bit = 1u64 << p;
            let stars = self.stars & !bit;
            let one_sign: i8 = if idx % 2 == 0 { 1 } else { -1 };
            [
                (
                    CubeWord::from_masks_unchecked(n, stars, self.ones | bit),
                    one_sign,
                ),
                (
                    CubeWord::from_masks_unchecked(n, stars, self.ones),
                    -one_sign,
                ),
            ]
        })
    }

    /// Smallest face containing every vertex in `vertices`. `None` when empty.
    pub fn join_of<'a>(vertices: impl IntoIterator<Item = &'a CubeWord>) -> Option<CubeWord> {
        let mut it = vertices.into_iter();
        let first = it.next()?;
        let mut stars = first.stars;
        let ones_ref = first.ones;
        for v in it {
            stars |= v.stars | (v.ones ^ ones_ref);
        }
        Some(CubeWord::from_masks_unchecked(
            first.ambient_dim(),
            stars,
            ones_ref & !stars,
        ))
    }

    /// Concatenation `self × other`.
    pub fn concat(&self, other: &CubeWord) -> Result<CubeWord> {
        let n = self.ambient_dim() + other.ambient_dim();
        if n > MAX_AMBIENT {
            return Err(Error::Structural(format!(
                "product ambient dimension {n} exceeds the supported maximum {MAX_AMBIENT}"
            )));
        }
        let shift = self.ambient_dim();
        let shl = |m: u64| if shift >= 64 { 0 } else { m << shift };
        Ok(CubeWord::from_masks_unchecked(
            n,
            self.stars | shl(other.stars),
            self.ones | shl(other.ones),
        ))
    }
}

// Lexicographic with 0 < 1 < *, compared left to right.
impl Ord for CubeWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            let diff = (self.stars ^ other.stars) | (self.ones ^ other.ones);
            if diff == 0 {
                return Ordering::Equal;
            }
            let p = diff.trailing_zeros() as usize;
            self.letter(p).cmp(&other.letter(p))
        })
    }
}

impl PartialOrd for CubeWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CubeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.ambient_dim() {
            write!(f, "{}", self.letter(i).to_char())?;
        }
        Ok(())
    }
}

impl FromStr for CubeWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| {
                Letter::from_char(c)
                    .ok_or_else(|| Error::Structural(format!("invalid letter {c:?} in word {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        CubeWord::from_letters(&letters)
    }
}
