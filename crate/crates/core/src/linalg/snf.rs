//! Smith normal form over the integers with overflow detection.
//!
//! Pivots are chosen as the entry of smallest absolute value in the
//! remaining block, which keeps entries small on boundary matrices. All
//! arithmetic is checked; overflow surfaces as [`Error::Arithmetic`].

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Structural("ragged integer matrix".into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Checked matrix product.
    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Structural(
                "dimension mismatch in integer product".into(),
            ));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = a
                        .checked_mul(other.get(k, c))
                        .and_then(|p| p.checked_add(out.get(r, c)))
                        .ok_or_else(overflow)?;
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    // row_dst -= q * row_src, restricted to columns >= from
    fn row_axpy(&mut self, dst: usize, src: usize, q: i64, from: usize) -> Result<()> {
        for c in from..self.cols {
            let s = self.get(src, c);
            if s != 0 {
                let v = q
                    .checked_mul(s)
                    .and_then(|p| self.get(dst, c).checked_sub(p))
                    .ok_or_else(overflow)?;
                self.set(dst, c, v);
            }
        }
        Ok(())
    }

    fn col_axpy(&mut self, dst: usize, src: usize, q: i64, from: usize) -> Result<()> {
        for r in from..self.rows {
            let s = self.get(r, src);
            if s != 0 {
                let v = q
                    .checked_mul(s)
                    .and_then(|p| self.get(r, dst).checked_sub(p))
                    .ok_or_else(overflow)?;
                self.set(r, dst, v);
            }
        }
        Ok(())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(u64, usize, usize)> = None;
        for r in t..self.rows {
            for c in t..self.cols {
                let v = self.get(r, c).unsigned_abs();
                if v != 0 && best.is_none_or(|(b, _, _)| v < b) {
                    best = Some((v, r, c));
                    if v == 1 {
                        return Some((r, c));
                    }
                }
            }
        }
        best.map(|(_, r, c)| (r, c))
    }
}

fn overflow() -> Error {
    Error::Arithmetic("integer overflow during Smith normal form".into())
}

/// Invariant factors `d_1 | d_2 | ... | d_r` of `m`, `r = rank m`.
pub fn smith_normal_form(m: &IntMatrix) -> Result<Vec<u64>> {
    let mut a = m.clone();
    let mut factors = Vec::new();
    let mut t = 0;
    while t < a.rows.min(a.cols) {
        let Some((pr, pc)) = a.smallest_in_block(t) else {
            break;
        };
        a.swap_rows(t, pr);
        a.swap_cols(t, pc);
        loop {
            let p = a.get(t, t);
            let mut dirty = false;
            for r in t + 1..a.rows {
                let x = a.get(r, t);
                if x != 0 {
                    a.row_axpy(r, t, x.div_euclid(p), t)?;
                    dirty |= a.get(r, t) != 0;
                }
            }
            for c in t + 1..a.cols {
                let x = a.get(t, c);
                if x != 0 {
                    a.col_axpy(c, t, x.div_euclid(p), t)?;
                    dirty |= a.get(t, c) != 0;
                }
            }
            if dirty {
                // A nonzero remainder is smaller than the pivot; bring it to (t, t).
                let (mut br, mut bc, mut bv) = (t, t, p.unsigned_abs());
                for r in t + 1..a.rows {
                    let v = a.get(r, t).unsigned_abs();
                    if v != 0 && v < bv {
                        (br, bc, bv) = (r, t, v);
                    }
                }
                for c in t + 1..a.cols {
                    let v = a.get(t, c).unsigned_abs();
                    if v != 0 && v < bv {
                        (br, bc, bv) = (t, c, v);
                    }
                }
                a.swap_rows(t, br);
                a.swap_cols(t, bc);
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let p = a.get(t, t);
            let bad = (t + 1..a.rows).find(|&r| (t + 1..a.cols).any(|c| a.get(r, c) % p != 0));
            match bad {
                Some(r) => a.row_axpy(t, r, -1, t)?,
                None => break,
            }
        }
        factors.push(a.get(t, t).unsigned_abs());
        t += 1;
    }
    Ok(factors)
}
