use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, reduce};

/// A 2×2 matrix over `Z/N`, stored by rows.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MatrixModN {
    pub n: u64,
    pub rows: [[u64; 2]; 2],
}

impl MatrixModN {
    pub fn new(n: u64, a: i64, b: i64, c: i64, d: i64) -> Self {
        let r = |x: i64| reduce(x as i128, n);
        MatrixModN {
            n,
            rows: [[r(a), r(b)], [r(c), r(d)]],
        }
    }

    pub fn identity(n: u64) -> Self {
        Self::new(n, 1, 0, 0, 1)
    }

    pub fn scalar(n: u64, s: u64) -> Self {
        Self::new(n, s as i64, 0, 0, s as i64)
    }

    pub fn det(&self) -> u64 {
        let [[a, b], [c, d]] = self.rows;
        reduce(a as i128 * d as i128 - b as i128 * c as i128, self.n)
    }

    pub fn trace(&self) -> u64 {
        (self.rows[0][0] + self.rows[1][1]) % self.n
    }

    pub fn is_invertible(&self) -> bool {
        gcd(self.det(), self.n) == 1
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "matrix moduli differ");
        let n = self.n as u128;
        let mut rows = [[0u64; 2]; 2];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let s = self.rows[i][0] as u128 * other.rows[0][j] as u128
                    + self.rows[i][1] as u128 * other.rows[1][j] as u128;
                *slot = (s % n) as u64;
            }
        }
        MatrixModN { n: self.n, rows }
    }

    pub fn pow(&self, e: u64) -> Self {
        (0..e).fold(Self::identity(self.n), |acc, _| acc.mul(self))
    }

    /// Every invertible matrix, in lexicographic order of entries.
    pub fn all_gl2(n: u64) -> Vec<Self> {
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let m = MatrixModN {
                            n,
                            rows: [[a, b], [c, d]],
                        };
                        if m.is_invertible() {
                            out.push(m);
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for MatrixModN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.rows;
        write!(f, "[[{a}, {b}], [{c}, {d}]] mod {}", self.n)
    }
}

impl fmt::Debug for MatrixModN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl2_sizes() {
        assert_eq!(MatrixModN::all_gl2(2).len(), 6);
        assert_eq!(MatrixModN::all_gl2(3).len(), 48);
        assert_eq!(MatrixModN::all_gl2(4).len(), 96);
        assert_eq!(MatrixModN::all_gl2(5).len(), 480);
    }

    #[test]
    fn det_is_multiplicative() {
        let all = MatrixModN::all_gl2(3);
        for g in &all {
            for h in all.iter().step_by(7) {
                assert_eq!(g.mul(h).det(), g.det() * h.det() % 3);
            }
        }
    }
}
