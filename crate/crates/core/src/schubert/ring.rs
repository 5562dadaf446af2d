//! Structure constants of CH(Gr(k,n)) in the Schubert basis.
//!
//! Products are computed by expanding one factor with the Giambelli
//! determinant into special classes and applying Pieri's rule step by step.
//! Tables are built once per `(k, n)` and shared.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use super::partition::Partition;

#[derive(Debug)]
pub struct GrRing {
    k: usize,
    n: usize,
    basis: Vec<Partition>,
    index: HashMap<Partition, usize>,
    /// `pieri[i][a]`: basis indices of `sigma_basis[i] * sigma_(a)`.
    pieri: Vec<Vec<Vec<usize>>>,
    /// `products[i][j]`: integral expansion of `sigma_i * sigma_j`.
    products: Vec<Vec<Vec<(usize, i64)>>>,
}

type Cache = RwLock<HashMap<(usize, usize), Arc<GrRing>>>;

static CACHE: OnceLock<Cache> = OnceLock::new();

impl GrRing {
    /// Shared tables for `Gr(k, n)`. Panics unless `0 < k < n`.
    pub fn get(k: usize, n: usize) -> Arc<GrRing> {
        assert!(0 < k && k < n, "Gr({k},{n}) needs 0 < k < n");
        let cache = CACHE.get_or_init(Default::default);
        if let Some(ring) = cache.read().expect("poisoned").get(&(k, n)) {
            return Arc::clone(ring);
        }
        let built = Arc::new(GrRing::build(k, n));
        let mut w = cache.write().expect("poisoned");
        Arc::clone(w.entry((k, n)).or_insert(built))
    }

    fn build(k: usize, n: usize) -> GrRing {
        let cols = (n - k) as u32;
        let basis = Partition::all_in_box(k, cols);
        let index: HashMap<Partition, usize> =
            basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let pieri = basis
            .iter()
            .map(|lam| {
                (0..=cols)
                    .map(|a| {
                        horizontal_strips(lam, a, k, cols)
                            .into_iter()
                            .map(|mu| index[&mu])
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut ring = GrRing {
            k,
            n,
            basis,
            index,
            pieri,
            products: Vec::new(),
        };
        let len = ring.basis.len();
        let mut products = vec![vec![Vec::new(); len]; len];
        for (i, row) in products.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = ring.giambelli_pieri(i, j);
            }
        }
        ring.products = products;
        ring
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.k
    }

    pub fn cols(&self) -> u32 {
        (self.n - self.k) as u32
    }

    /// Complex dimension `k(n-k)`.
    pub fn dim(&self) -> u32 {
        self.k as u32 * self.cols()
    }

    pub fn basis(&self) -> &[Partition] {
        &self.basis
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// `sigma_i * sigma_(a)` as basis indices (all coefficients 1).
    pub fn pieri(&self, i: usize, a: u32) -> &[usize] {
        &self.pieri[i][a as usize]
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.products[i][j]
    }

    /// Expands `sigma_j` by Giambelli and multiplies it into `sigma_i` by
    /// successive Pieri steps.
    fn giambelli_pieri(&self, i: usize, j: usize) -> Vec<(usize, i64)> {
        let lam = &self.basis[j];
        let len = lam.len();
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for (perm, sign) in permutations(len) {
            // entry (r, perm[r]) of the Jacobi-Trudi matrix h_{lam_r + c - r}
            let mut specials = Vec::with_capacity(len);
            let mut vanishes = false;
            for (r, &c) in perm.iter().enumerate() {
                let a = lam.part(r) as i64 + c as i64 - r as i64;
                if a < 0 || a > self.cols() as i64 {
                    vanishes = true;
                    break;
                }
                specials.push(a as u32);
            }
            if vanishes {
                continue;
            }
            let mut current: BTreeMap<usize, i64> = BTreeMap::from([(i, 1)]);
            for a in specials {
                let mut next = BTreeMap::new();
                for (&b, &c) in &current {
                    for &t in self.pieri(b, a) {
                        *next.entry(t).or_insert(0) += c;
                    }
                }
                current = next;
            }
            for (t, c) in current {
                *acc.entry(t).or_insert(0) += sign * c;
            }
        }
        acc.into_iter().filter(|&(_, c)| c != 0).collect()
    }
}

/// Partitions `mu` in the box with `mu / lam` a horizontal strip of size `a`.
fn horizontal_strips(lam: &Partition, a: u32, rows: usize, cols: u32) -> Vec<Partition> {
    fn rec(
        lam: &Partition,
        r: usize,
        rows: usize,
        upper: u32,
        remaining: u32,
        parts: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if r == rows {
            if remaining == 0 {
                out.push(Partition::new(parts.clone()).expect("interlacing keeps order"));
            }
            return;
        }
        let lo = lam.part(r);
        let hi = upper.min(lo + remaining);
        for m in lo..=hi {
            parts.push(m);
            rec(lam, r + 1, rows, lo, remaining - (m - lo), parts, out);
            parts.pop();
        }
    }
    let mut out = Vec::new();
    rec(lam, 0, rows, cols, a, &mut Vec::with_capacity(rows), &mut out);
    out
}

/// All permutations of `0..len` with their signs.
fn permutations(len: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(rest: &mut Vec<usize>, prefix: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, i64)>) {
        if rest.is_empty() {
            let mut inversions = 0;
            for a in 0..prefix.len() {
                for b in a + 1..prefix.len() {
                    if prefix[a] > prefix[b] {
                        inversions += 1;
                    }
                }
            }
            out.push((prefix.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for idx in 0..rest.len() {
            let v = rest.remove(idx);
            prefix.push(v);
            rec(rest, prefix, out);
            prefix.pop();
            rest.insert(idx, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut (0..len).collect(), &mut Vec::new(), &mut out);
    out
}
