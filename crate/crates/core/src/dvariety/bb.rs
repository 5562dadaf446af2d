//! Fixed points of the one-parameter torus acting on D through a diagonal
//! weight vector on the six coordinates, and the induced cell dimensions.

use serde::Serialize;

use crate::error::{Error, Result};

/// Weights of the diagonal action on the coordinates `1..=6`: the first
/// block of three scales the first matrix, the second block the second.
pub const DEFAULT_WEIGHTS: [i64; 6] = [1, 5, 6, 2, 3, 7];

/// Cell dimension counts the positive tangent weights at the fixed point.
pub const BB_CONVENTION: &str = "cell dimension = number of positive tangent weights on D";

const FIRST: [usize; 3] = [1, 2, 3];
const LAST: [usize; 3] = [4, 5, 6];

/// The two coordinate subspaces of `Gr(3,6)` that do not lie on D.
pub fn excluded_subsets() -> [[usize; 3]; 2] {
    [FIRST, LAST]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BBFixedPoint {
    /// Coordinate subspace, 1-based and increasing.
    pub subset: [usize; 3],
    /// `w_j - w_i` for `j` outside and `i` inside the subset; outer loop
    /// over `j`, inner over `i`, both increasing.
    pub tangent_weights: Vec<i64>,
    /// The swap `(i, j)` whose direction is normal to D at this point.
    pub removed_swap: (usize, usize),
    pub removed_weight: i64,
    pub cell_dim: usize,
}

/// Enumerates the 18 fixed points on D for the given weights.
pub fn bb_cells(weights: &[i64; 6]) -> Result<Vec<BBFixedPoint>> {
    let mut out = Vec::with_capacity(18);
    for a in 1..=6 {
        for b in a + 1..=6 {
            for c in b + 1..=6 {
                let subset = [a, b, c];
                if subset == FIRST || subset == LAST {
                    continue;
                }
                out.push(fixed_point(subset, weights)?);
            }
        }
    }
    Ok(out)
}

fn fixed_point(subset: [usize; 3], w: &[i64; 6]) -> Result<BBFixedPoint> {
    let weight = |i: usize, j: usize| w[j - 1] - w[i - 1];
    let outside: Vec<usize> = (1..=6).filter(|x| !subset.contains(x)).collect();
    let mut tangent_weights = Vec::with_capacity(9);
    for &j in &outside {
        for &i in &subset {
            let t = weight(i, j);
            if t == 0 {
                return Err(Error::DegenerateAction(format!(
                    "weights of coordinates {i} and {j} coincide ({})",
                    w[i - 1]
                )));
            }
            tangent_weights.push(t);
        }
    }
    // exactly one of the two excluded subspaces is a single swap away;
    // the Plucker coordinate of that swap is the linear part of the equation
    let target = [FIRST, LAST]
        .into_iter()
        .find(|t| t.iter().filter(|x| subset.contains(x)).count() == 2)
        .expect("admissible subsets meet one block in two elements");
    let i = *subset.iter().find(|x| !target.contains(x)).expect("one element outside");
    let j = *target.iter().find(|x| !subset.contains(x)).expect("one element missing");
    let removed_weight = weight(i, j);
    let positive = tangent_weights.iter().filter(|&&t| t > 0).count();
    let cell_dim = positive - usize::from(removed_weight > 0);
    Ok(BBFixedPoint {
        subset,
        tangent_weights,
        removed_swap: (i, j),
        removed_weight,
        cell_dim,
    })
}

/// Coefficients of `sum_points t^{cell_dim}`.
pub fn bb_generating_polynomial(weights: &[i64; 6]) -> Result<Vec<u64>> {
    let mut out = vec![0u64; 9];
    for p in bb_cells(weights)? {
        out[p.cell_dim] += 1;
    }
    Ok(out)
}
