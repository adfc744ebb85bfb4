//! Cubical chain complexes and their homology over GF(2) and the integers.
//!
//! Chains are spanned by a set of faces. For an absolute complex the set is
//! the whole complex; for a pair `(c, a)` it is `c \ a`, and facets falling
//! into `a` are dropped, which realizes the quotient chain complex.
//!
//! Over GF(2) ranks come from packed Gaussian elimination. Over the
//! integers each boundary matrix goes through Smith normal form: the number
//! of invariant factors is the rank and factors above one are torsion.

use std::collections::HashMap;
use std::fmt;

use crate::complex::CubicalComplex;
use crate::error::Result;
use crate::linalg::{smith_normal_form, BitMatrix, IntMatrix};
use crate::word::CubeWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ring {
    Gf2,
    Integer,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Gf2 => "gf2",
            Ring::Integer => "int",
        })
    }
}

/// One homology group: free rank plus torsion invariant factors (> 1, sorted).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DegreeGroup {
    pub betti: usize,
    pub torsion: Vec<u64>,
}

impl DegreeGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for DegreeGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.torsion.is_empty() {
            write!(f, "{}", self.betti)
        } else {
            let t: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
            write!(f, "{}+{}", self.betti, t.join("+"))
        }
    }
}

/// Homology groups in degrees `0..len()`. Degrees outside the stored range,
/// including negative ones, are the zero group.
///
/// Two profiles are equal when they agree in every degree, so trailing zero
/// degrees do not matter.
#[derive(Debug, Clone)]
pub struct HomologyProfile {
    ring: Ring,
    degrees: Vec<DegreeGroup>,
}

impl HomologyProfile {
    pub fn new(ring: Ring, degrees: Vec<DegreeGroup>) -> Self {
        Self { ring, degrees }
    }

    pub fn from_betti(ring: Ring, betti: &[usize]) -> Self {
        Self {
            ring,
            degrees: betti
                .iter()
                .map(|&b| DegreeGroup {
                    betti: b,
                    torsion: vec![],
                })
                .collect(),
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn degrees(&self) -> &[DegreeGroup] {
        &self.degrees
    }

    pub fn degree(&self, j: isize) -> DegreeGroup {
        usize::try_from(j)
            .ok()
            .and_then(|j| self.degrees.get(j))
            .cloned()
            .unwrap_or_default()
    }

    pub fn betti(&self, j: isize) -> usize {
        self.degree(j).betti
    }

    pub fn betti_vector(&self) -> Vec<usize> {
        self.degrees.iter().map(|g| g.betti).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.iter().all(DegreeGroup::is_zero)
    }

    /// Alternating sum of Betti numbers.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .enumerate()
            .map(|(j, g)| {
                if j % 2 == 0 {
                    g.betti as i64
                } else {
                    -(g.betti as i64)
                }
            })
            .sum()
    }
}

impl PartialEq for HomologyProfile {
    fn eq(&self, other: &Self) -> bool {
        let n = self.degrees.len().max(other.degrees.len()) as isize;
        self.ring == other.ring && (0..n).all(|j| self.degree(j) == other.degree(j))
    }
}

impl Eq for HomologyProfile {}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Boundary matrices `D_j : C_j -> C_{j-1}` for `j >= 1`, stored as sparse
/// columns with integer signs. Over GF(2) only the support is used.
#[derive(Debug, Clone)]
pub struct BoundaryMatrixSet {
    ring: Ring,
    basis: Vec<Vec<CubeWord>>,
    index: Vec<HashMap<CubeWord, usize>>,
    columns: Vec<Vec<Vec<(usize, i8)>>>,
}

impl BoundaryMatrixSet {
    /// Chain complex spanned by `faces`. Facets outside the set are dropped.
    pub fn from_faces<'a, I>(ring: Ring, faces: I) -> Self
    where
        I: IntoIterator<Item = &'a CubeWord>,
    {
        let mut basis: Vec<Vec<CubeWord>> = Vec::new();
        for f in faces {
            let d = f.dim();
            if basis.len() <= d {
                basis.resize_with(d + 1, Vec::new);
            }
            basis[d].push(*f);
        }
        let index: Vec<HashMap<CubeWord, usize>> = basis
            .iter()
            .map(|fs| fs.iter().enumerate().map(|(i, f)| (*f, i)).collect())
            .collect();
        let mut columns = vec![Vec::new(); basis.len()];
        for j in 1..basis.len() {
            columns[j] = basis[j]
                .iter()
                .map(|f| {
                    let mut col: Vec<(usize, i8)> = f
                        .facets()
                        .filter_map(|(g, s)| index[j - 1].get(&g).map(|&r| (r, s)))
                        .collect();
                    col.sort_unstable();
                    col
                })
                .collect();
        }
        Self {
            ring,
            basis,
            index,
            columns,
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Number of chain degrees present (top dimension + 1).
    pub fn degree_count(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self, j: usize) -> &[CubeWord] {
        self.basis.get(j).map_or(&[], |v| v.as_slice())
    }

    pub fn position(&self, j: usize, f: &CubeWord) -> Option<usize> {
        self.index.get(j)?.get(f).copied()
    }

    pub fn chain_rank(&self, j: usize) -> usize {
        self.basis(j).len()
    }

    /// Sparse column of `D_j` for the `col`-th `j`-face.
    pub fn column(&self, j: usize, col: usize) -> &[(usize, i8)] {
        &self.columns[j][col]
    }

    pub fn gf2_matrix(&self, j: usize) -> BitMatrix {
        let (rows, cols) = self.shape(j);
        let mut m = BitMatrix::zeros(rows, cols);
        if j >= 1 && j < self.basis.len() {
            for (c, col) in self.columns[j].iter().enumerate() {
                for &(r, _) in col {
                    m.flip(r, c);
                }
            }
        }
        m
    }

    pub fn integer_matrix(&self, j: usize) -> IntMatrix {
        let (rows, cols) = self.shape(j);
        let mut m = IntMatrix::zeros(rows, cols);
        if j >= 1 && j < self.basis.len() {
            for (c, col) in self.columns[j].iter().enumerate() {
                for &(r, s) in col {
                    m.set(r, c, m.get(r, c) + s as i64);
                }
            }
        }
        m
    }

    /// `(rows, cols)` of `D_j`.
    pub fn shape(&self, j: usize) -> (usize, usize) {
        if j == 0 {
            return (0, self.chain_rank(0));
        }
        (self.chain_rank(j - 1), self.chain_rank(j))
    }

    /// Checks `D_{j} ∘ D_{j+1} = 0` in every degree over the set's ring.
    pub fn composition_vanishes(&self) -> Result<bool> {
        for j in 1..self.basis.len().saturating_sub(1) {
            let ok = match self.ring {
                Ring::Gf2 => self.gf2_matrix(j).mul(&self.gf2_matrix(j + 1)).is_zero(),
                Ring::Integer => self
                    .integer_matrix(j)
                    .mul(&self.integer_matrix(j + 1))?
                    .is_zero(),
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn rank_and_torsion(&self, j: usize, transposed: bool) -> Result<(usize, Vec<u64>)> {
        if j == 0 || j >= self.basis.len() {
            return Ok((0, vec![]));
        }
        match self.ring {
            Ring::Gf2 => {
                let m = self.gf2_matrix(j);
                Ok((
                    if transposed {
                        m.transpose().rank()
                    } else {
                        m.rank()
                    },
                    vec![],
                ))
            }
            Ring::Integer => {
                let m = self.integer_matrix(j);
                let f = smith_normal_form(&if transposed { m.transpose() } else { m })?;
                Ok((f.len(), f.into_iter().filter(|&d| d > 1).collect()))
            }
        }
    }

    /// Homology in degrees `0..degree_count`, truncated to `max_degree`.
    pub fn homology(
        &self,
        degree_count: usize,
        max_degree: Option<usize>,
    ) -> Result<HomologyProfile> {
        let count = max_degree.map_or(degree_count, |m| degree_count.min(m + 1));
        let mut ranks = Vec::with_capacity(count + 1);
        for j in 0..=count {
            ranks.push(self.rank_and_torsion(j, false)?);
        }
        let degrees = (0..count)
            .map(|j| DegreeGroup {
                betti: self.chain_rank(j) - ranks[j].0 - ranks[j + 1].0,
                torsion: ranks[j + 1].1.clone(),
            })
            .collect();
        Ok(HomologyProfile {
            ring: self.ring,
            degrees,
        })
    }

    /// Cohomology via the coboundary maps `δ^{j} = D_{j+1}^T`, reduced directly.
    pub fn cohomology(&self, degree_count: usize) -> Result<HomologyProfile> {
        let mut ranks = Vec::with_capacity(degree_count + 1);
        for j in 0..=degree_count {
            ranks.push(self.rank_and_torsion(j, true)?);
        }
        let degrees = (0..degree_count)
            .map(|j| DegreeGroup {
                betti: self.chain_rank(j) - ranks[j].0 - ranks[j + 1].0,
                torsion: ranks[j].1.clone(),
            })
            .collect();
        Ok(HomologyProfile {
            ring: self.ring,
            degrees,
        })
    }
}

fn degree_count(c: &CubicalComplex) -> usize {
    c.dim().map_or(0, |d| d + 1)
}

pub fn boundary_matrices(c: &CubicalComplex, ring: Ring) -> BoundaryMatrixSet {
    BoundaryMatrixSet::from_faces(ring, c.faces())
}

/// Non-reduced homology of `c`.
pub fn homology(c: &CubicalComplex, ring: Ring) -> Result<HomologyProfile> {
    boundary_matrices(c, ring).homology(degree_count(c), None)
}

/// Homology in degrees `0..=max_degree` only; needs ranks up to `D_{max_degree+1}`.
pub fn homology_upto(c: &CubicalComplex, ring: Ring, max_degree: usize) -> Result<HomologyProfile> {
    let faces = c.faces().filter(|f| f.dim() <= max_degree + 1);
    BoundaryMatrixSet::from_faces(ring, faces).homology(degree_count(c), Some(max_degree))
}

pub fn betti_gf2(c: &CubicalComplex) -> HomologyProfile {
    homology(c, Ring::Gf2).expect("GF(2) homology cannot overflow")
}

pub fn homology_integer(c: &CubicalComplex) -> Result<HomologyProfile> {
    homology(c, Ring::Integer)
}

/// Homology of the pair `(c, a)` from the quotient chain complex on `c \ a`.
pub fn relative_profile(
    c: &CubicalComplex,
    a: &CubicalComplex,
    ring: Ring,
) -> Result<HomologyProfile> {
    c.require_subcomplex(a, "relative_profile")?;
    let faces = c.faces().filter(|f| !a.contains(f));
    BoundaryMatrixSet::from_faces(ring, faces).homology(degree_count(c), None)
}

pub fn cohomology_betti_gf2(c: &CubicalComplex) -> HomologyProfile {
    cohomology_profile(c, Ring::Gf2).expect("GF(2) cohomology cannot overflow")
}

pub fn cohomology_profile(c: &CubicalComplex, ring: Ring) -> Result<HomologyProfile> {
    boundary_matrices(c, ring).cohomology(degree_count(c))
}
