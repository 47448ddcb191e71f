//! Small exact matrices over the rationals: 4x4 for quaternion lattices and
//! the L-basis change, plus Gaussian elimination for inverses.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ratio::Rational;

/// Column-major 4x4 rational matrix: `cols[j]` is the j-th column.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat4 {
    pub cols: [[Rational; 4]; 4],
}

fn zero4() -> [Rational; 4] {
    [
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
        Rational::zero(),
    ]
}

impl Mat4 {
    pub fn from_columns(cols: [[Rational; 4]; 4]) -> Self {
        Mat4 { cols }
    }

    pub fn identity() -> Self {
        let mut m = Mat4 {
            cols: [zero4(), zero4(), zero4(), zero4()],
        };
        for i in 0..4 {
            m.cols[i][i] = Rational::one();
        }
        m
    }

    pub fn at(&self, row: usize, col: usize) -> &Rational {
        &self.cols[col][row]
    }

    pub fn mul_vec(&self, v: &[Rational; 4]) -> [Rational; 4] {
        let mut out = zero4();
        for (j, col) in self.cols.iter().enumerate() {
            for i in 0..4 {
                out[i] += &col[i] * &v[j];
            }
        }
        out
    }

    pub fn mul(&self, other: &Mat4) -> Mat4 {
        let mut cols = [zero4(), zero4(), zero4(), zero4()];
        for (j, c) in other.cols.iter().enumerate() {
            cols[j] = self.mul_vec(c);
        }
        Mat4 { cols }
    }

    pub fn det(&self) -> Rational {
        // Fraction-free enough at this size: plain elimination on a copy.
        let mut a: Vec<Vec<Rational>> = (0..4)
            .map(|i| (0..4).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut det = Rational::one();
        for k in 0..4 {
            let pivot = (k..4).find(|&i| !a[i][k].is_zero());
            let Some(p) = pivot else {
                return Rational::zero();
            };
            if p != k {
                a.swap(p, k);
                det = -det;
            }
            det *= &a[k][k];
            let inv = a[k][k].recip();
            for j in k..4 {
                a[k][j] = &a[k][j] * &inv;
            }
            for i in (k + 1)..4 {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone();
                for j in k..4 {
                    let sub = &f * &a[k][j];
                    a[i][j] = &a[i][j] - sub;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Mat4> {
        let mut a: Vec<Vec<Rational>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| self.at(i, j).clone())
                    .chain((0..4).map(|j| {
                        if i == j {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    }))
                    .collect()
            })
            .collect();
        for k in 0..4 {
            let pivot = (k..4).find(|&i| !a[i][k].is_zero()).ok_or(Error::SingularBasis)?;
            a.swap(pivot, k);
            let inv = a[k][k].recip();
            for j in 0..8 {
                a[k][j] = &a[k][j] * &inv;
            }
            for i in 0..4 {
                if i == k || a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone();
                for j in 0..8 {
                    let sub = &f * &a[k][j];
                    a[i][j] = &a[i][j] - sub;
                }
            }
        }
        let mut cols = [zero4(), zero4(), zero4(), zero4()];
        for (j, col) in cols.iter_mut().enumerate() {
            for (i, slot) in col.iter_mut().enumerate() {
                *slot = a[i][4 + j].clone();
            }
        }
        Ok(Mat4 { cols })
    }
}
