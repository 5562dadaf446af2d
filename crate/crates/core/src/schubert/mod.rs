//! Schubert calculus on Grassmannians `Gr(k, n)`.

mod chern;
mod class;
mod partition;
mod ring;

use std::collections::HashMap;

pub use chern::{chern_tangent, chern_tautological, euler_tensor_rank3_line, GrTimesP2};
pub(crate) use class::write_terms;
pub use class::GrClass;
pub use partition::Partition;
pub use ring::GrRing;

use crate::error::Result;

/// Number of box partitions of each size `0..=k(n-k)`.
pub fn poincare_polynomial(k: usize, n: usize) -> Vec<u64> {
    assert!(0 < k && k < n, "Gr({k},{n}) needs 0 < k < n");
    let cols = (n - k) as u32;
    let mut out = vec![0u64; k * (n - k) + 1];
    for p in Partition::all_in_box(k, cols) {
        out[p.size() as usize] += 1;
    }
    out
}

/// Complement of `lambda` in the `k x (n-k)` box, rotated.
pub fn dual_partition(lambda: &Partition, k: usize, n: usize) -> Result<Partition> {
    let cols = (n - k) as u32;
    lambda.check_fits(k, cols)?;
    Partition::new((0..k).rev().map(|i| cols - lambda.part(i)).collect())
}

/// Number of saturated chains from `lambda` up to the full box in Young's
/// lattice, by adding one box at a time. Independent of the Pieri tables.
pub fn skew_path_count(lambda: &Partition, k: usize, n: usize) -> Result<u128> {
    let cols = (n - k) as u32;
    lambda.check_fits(k, cols)?;
    fn count(parts: &mut Vec<u32>, cols: u32, memo: &mut HashMap<Vec<u32>, u128>) -> u128 {
        if parts.iter().all(|&p| p == cols) {
            return 1;
        }
        if let Some(&c) = memo.get(parts.as_slice()) {
            return c;
        }
        let mut total = 0;
        for r in 0..parts.len() {
            let room = if r == 0 { cols } else { parts[r - 1] };
            if parts[r] < room {
                parts[r] += 1;
                total += count(parts, cols, memo);
                parts[r] -= 1;
            }
        }
        memo.insert(parts.clone(), total);
        total
    }
    let mut parts: Vec<u32> = (0..k).map(|i| lambda.part(i)).collect();
    Ok(count(&mut parts, cols, &mut HashMap::new()))
}
