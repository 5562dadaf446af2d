//! Coefficient rings: the integers and the field with three elements.

#![allow(clippy::needless_range_loop)]

use std::fmt;

use crate::error::{Error, Result};

/// Coefficient ring of a class. `Integral` is Z, `Three` is Z/3 with values
/// kept as canonical residues in `{0, 1, 2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Modulus {
    Integral,
    Three,
}

impl Modulus {
    pub fn from_value(m: u32) -> Result<Self> {
        match m {
            0 => Ok(Modulus::Integral),
            3 => Ok(Modulus::Three),
            other => Err(Error::Parse(format!("modulus must be 0 or 3, got {other}"))),
        }
    }

    pub fn value(self) -> u32 {
        match self {
            Modulus::Integral => 0,
            Modulus::Three => 3,
        }
    }

    #[inline]
    pub fn reduce(self, x: i64) -> i64 {
        match self {
            Modulus::Integral => x,
            Modulus::Three => x.rem_euclid(3),
        }
    }

    pub fn require_three(self) -> Result<()> {
        match self {
            Modulus::Three => Ok(()),
            Modulus::Integral => Err(Error::ModulusRequired(0)),
        }
    }

    pub fn check_same(self, other: Modulus) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ModulusMismatch {
                left: self.value(),
                right: other.value(),
            })
        }
    }

    /// Multiplicative inverse, if it exists in this ring.
    pub fn inverse(self, x: i64) -> Option<i64> {
        match self {
            Modulus::Integral => match x {
                1 => Some(1),
                -1 => Some(-1),
                _ => None,
            },
            Modulus::Three => match x.rem_euclid(3) {
                1 => Some(1),
                2 => Some(2),
                _ => None,
            },
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Symmetric representative of a residue mod 3, used only for display:
/// 2 prints as -1.
pub fn signed_residue(modulus: Modulus, x: i64) -> i64 {
    match modulus {
        Modulus::Integral => x,
        Modulus::Three => match x.rem_euclid(3) {
            2 => -1,
            r => r,
        },
    }
}

/// Rank over the field with three elements of the matrix whose rows are `rows`.
pub fn rank_mod3(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(3)).collect())
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        // 1 and 2 are their own inverses mod 3
        let inv = m[rank][col];
        for x in m[rank].iter_mut() {
            *x = (*x * inv).rem_euclid(3);
        }
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let factor = m[r][col];
                for c in 0..ncols {
                    m[r][c] = (m[r][c] - factor * m[rank][c]).rem_euclid(3);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Inverse of a square matrix over the field with three elements.
pub fn inverse_mod3(matrix: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = matrix.len();
    let mut aug: Vec<Vec<i64>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "inverse_mod3 needs a square matrix");
            let mut r: Vec<i64> = row.iter().map(|x| x.rem_euclid(3)).collect();
            r.extend((0..n).map(|j| i64::from(i == j)));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| aug[r][col] != 0)?;
        aug.swap(col, pivot);
        let inv = aug[col][col];
        for x in aug[col].iter_mut() {
            *x = (*x * inv).rem_euclid(3);
        }
        for r in 0..n {
            if r != col && aug[r][col] != 0 {
                let factor = aug[r][col];
                for c in 0..2 * n {
                    aug[r][c] = (aug[r][c] - factor * aug[col][c]).rem_euclid(3);
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Integer inverse of a square matrix; `None` unless it is unimodular.
pub fn inverse_integral(matrix: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = matrix.len();
    // fraction-free Gauss-Jordan, rows kept primitive
    let mut aug: Vec<Vec<i128>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<i128> = row.iter().map(|&x| i128::from(x)).collect();
            r.extend((0..n).map(|j| i128::from(i == j)));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| aug[r][col] != 0)?;
        aug.swap(col, pivot);
        for r in 0..n {
            if r != col && aug[r][col] != 0 {
                let a = aug[col][col];
                let b = aug[r][col];
                for c in 0..2 * n {
                    aug[r][c] = aug[r][c] * a - aug[col][c] * b;
                }
                let g = aug[r].iter().fold(0i128, |g, &x| gcd(g, x));
                if g > 1 {
                    for x in aug[r].iter_mut() {
                        *x /= g;
                    }
                }
            }
        }
    }
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        let d = aug[i][i];
        for j in 0..n {
            let num = aug[i][n + j];
            if num % d != 0 {
                return None;
            }
            out[i][j] = i64::try_from(num / d).ok()?;
        }
    }
    Some(out)
}

/// A solution `x` of `sum_j x_j columns[j] = target` over the field with
/// three elements, with free unknowns set to zero.
pub fn solve_mod3(columns: &[Vec<i64>], target: &[i64]) -> Option<Vec<i64>> {
    let n = columns.len();
    let mut rows: Vec<Vec<i64>> = (0..target.len())
        .map(|r| {
            let mut row: Vec<i64> = columns.iter().map(|c| c[r].rem_euclid(3)).collect();
            row.push(target[r].rem_euclid(3));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col];
        for x in rows[rank].iter_mut() {
            *x = (*x * inv).rem_euclid(3);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in 0..=n {
                    rows[r][c] = (rows[r][c] - f * rows[rank][c]).rem_euclid(3);
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if rows[rank..].iter().any(|r| r[n] != 0) {
        return None;
    }
    let mut x = vec![0; n];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = rows[r][n];
    }
    Some(x)
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
