//! Characteristic classes on Grassmannians through formal Chern roots.
//!
//! A product over roots is expanded as an honest polynomial in the root
//! variables, truncated at the dimension, then rewritten in elementary
//! symmetric functions block by block. The elementary functions of the
//! subbundle and quotient roots are then replaced by `c(S)` and `c(Q)`.

use std::collections::{BTreeMap, HashMap};

use super::class::GrClass;
use super::partition::Partition;
use crate::coeff::Modulus;
use crate::error::{Error, Result};

/// A polynomial with integer coefficients in a fixed number of variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct FormalPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u8>, i64>,
}

impl FormalPoly {
    pub fn constant(nvars: usize, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(vec![0; nvars], c);
        }
        FormalPoly { nvars, terms }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        FormalPoly {
            nvars,
            terms: BTreeMap::from([(e, 1)]),
        }
    }

    fn add_term(&mut self, e: Vec<u8>, c: i64) {
        let v = self.terms.get(&e).copied().unwrap_or(0) + c;
        if v == 0 {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn scale(&self, s: i64) -> Self {
        let mut out = FormalPoly::constant(self.nvars, 0);
        for (e, &c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    /// Product with all monomials of total degree above `max_deg` dropped.
    pub fn mul_trunc(&self, other: &Self, max_deg: usize) -> Self {
        let mut out = FormalPoly::constant(self.nvars, 0);
        for (a, &ca) in &self.terms {
            let da: usize = a.iter().map(|&x| x as usize).sum();
            for (b, &cb) in &other.terms {
                let db: usize = b.iter().map(|&x| x as usize).sum();
                if da + db > max_deg {
                    continue;
                }
                let e: Vec<u8> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    fn leading(&self) -> Option<(&Vec<u8>, i64)> {
        self.terms.iter().next_back().map(|(e, &c)| (e, c))
    }
}

/// Rewrites `p`, symmetric in each consecutive block of variables, as a
/// polynomial in the elementary symmetric functions of the blocks. The key
/// of the result lists, block by block, the exponents of `e_1, e_2, ...`.
pub(crate) fn reduce_symmetric(
    p: &FormalPoly,
    blocks: &[usize],
    max_deg: usize,
) -> Result<BTreeMap<Vec<u8>, i64>> {
    let nvars: usize = blocks.iter().sum();
    assert_eq!(nvars, p.nvars, "block sizes must cover the variables");
    let mut offsets = Vec::with_capacity(blocks.len());
    let mut off = 0;
    for &b in blocks {
        offsets.push(off);
        off += b;
    }
    // elementary[e-slot] = e_j of its block, as a polynomial in all variables
    let mut elementary = Vec::with_capacity(nvars);
    for (&size, &start) in blocks.iter().zip(&offsets) {
        // e_j of x_1..x_i from e_j, e_{j-1} of x_1..x_{i-1}
        let mut es = vec![FormalPoly::constant(nvars, 0); size + 1];
        es[0] = FormalPoly::constant(nvars, 1);
        for i in 0..size {
            let x = FormalPoly::var(nvars, start + i);
            for j in (1..=i + 1).rev() {
                es[j] = es[j].add(&es[j - 1].mul_trunc(&x, max_deg));
            }
        }
        elementary.extend(es.into_iter().skip(1));
    }

    let mut powers: HashMap<(usize, u8), FormalPoly> = HashMap::new();
    let mut rest = p.clone();
    let mut out = BTreeMap::new();
    while let Some((lead, c)) = rest.leading() {
        let lead = lead.clone();
        let mut key = Vec::with_capacity(nvars);
        for (&size, &start) in blocks.iter().zip(&offsets) {
            let a = &lead[start..start + size];
            if a.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::ModelInconsistency(format!(
                    "polynomial is not symmetric in block at {start} (leading exponent {a:?})"
                )));
            }
            for j in 0..size {
                key.push(a[j] - a.get(j + 1).copied().unwrap_or(0));
            }
        }
        let mut term = FormalPoly::constant(nvars, 1);
        for (slot, &e) in key.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let pw = powers.entry((slot, e)).or_insert_with(|| {
                let mut acc = FormalPoly::constant(nvars, 1);
                for _ in 0..e {
                    acc = acc.mul_trunc(&elementary[slot], max_deg);
                }
                acc
            });
            term = term.mul_trunc(pw, max_deg);
        }
        rest = rest.add(&term.scale(-c));
        out.insert(key, c);
    }
    Ok(out)
}

/// Total Chern classes `(c(S), c(Q))` of the tautological subbundle and
/// quotient bundle on `Gr(k, n)`.
pub fn chern_tautological(k: usize, n: usize, modulus: Modulus) -> (GrClass, GrClass) {
    let mut cs = GrClass::zero(k, n, modulus);
    for i in 0..=k {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        cs = &cs + &GrClass::schubert(k, n, modulus, Partition::column(i))
            .expect("columns fit")
            .scale(sign);
    }
    let mut cq = GrClass::zero(k, n, modulus);
    for j in 0..=(n - k) as u32 {
        cq = &cq + &GrClass::special(k, n, modulus, j);
    }
    (cs, cq)
}

/// `c_i(S) = (-1)^i sigma_(1^i)`, `c_j(Q) = sigma_(j)`, each as a vector
/// indexed by degree.
fn tautological_components(k: usize, n: usize, modulus: Modulus) -> (Vec<GrClass>, Vec<GrClass>) {
    let (cs, cq) = chern_tautological(k, n, modulus);
    let sub = (0..=k as u32).map(|i| cs.homogeneous(i)).collect();
    let quo = (0..=(n - k) as u32).map(|j| cq.homogeneous(j)).collect();
    (sub, quo)
}

/// Evaluates a polynomial in the elementary functions of the roots of `S`
/// (first `k` slots) and of `Q` (next `n - k` slots) in CH(Gr(k,n)).
fn evaluate_sq(
    reduced: &BTreeMap<Vec<u8>, i64>,
    k: usize,
    n: usize,
    modulus: Modulus,
) -> GrClass {
    let (sub, quo) = tautological_components(k, n, modulus);
    let gens: Vec<&GrClass> = sub[1..].iter().chain(quo[1..].iter()).collect();
    let mut total = GrClass::zero(k, n, modulus);
    for (key, &c) in reduced {
        let mut term = GrClass::one(k, n, modulus).scale(c);
        for (slot, &e) in key.iter().enumerate() {
            for _ in 0..e {
                term = &term * gens[slot];
            }
        }
        total = &total + &term;
    }
    total
}

/// Total Chern class of the tangent bundle `Hom(S, Q)` of `Gr(k, n)`, from
/// `prod_{i,j} (1 + y_j - x_i)` over the roots `x` of `S` and `y` of `Q`.
pub fn chern_tangent(k: usize, n: usize, modulus: Modulus) -> GrClass {
    let m = n - k;
    let nvars = n;
    let dim = k * m;
    let mut prod = FormalPoly::constant(nvars, 1);
    for i in 0..k {
        for j in 0..m {
            let factor = FormalPoly::constant(nvars, 1)
                .add(&FormalPoly::var(nvars, k + j))
                .add(&FormalPoly::var(nvars, i).scale(-1));
            prod = prod.mul_trunc(&factor, dim);
        }
    }
    let reduced = reduce_symmetric(&prod, &[k, m], dim).expect("root product is symmetric");
    evaluate_sq(&reduced, k, n, modulus)
}

/// A class on `Gr(k,n) x P^2`, written as `sum_j components[j] x H^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrTimesP2 {
    pub components: Vec<GrClass>,
}

/// Euler class of `S (x) O(-1)` on `Gr(3,6) x P^2`: `prod_i (x_i + y)` with
/// `y = -H`, so `c_3(S) + c_2(S) y + c_1(S) y^2` since `H^3 = 0`.
pub fn euler_tensor_rank3_line(modulus: Modulus) -> GrTimesP2 {
    let (k, n) = (3, 6);
    let nvars = k + 1;
    let mut prod = FormalPoly::constant(nvars, 1);
    for i in 0..k {
        let factor = FormalPoly::var(nvars, i).add(&FormalPoly::var(nvars, k));
        prod = prod.mul_trunc(&factor, 9);
    }
    let reduced = reduce_symmetric(&prod, &[k, 1], 9).expect("root product is symmetric");
    let (sub, _) = tautological_components(k, n, modulus);
    let mut components = vec![GrClass::zero(k, n, modulus); 3];
    for (key, &c) in &reduced {
        let y_power = key[k] as usize;
        if y_power > 2 {
            continue;
        }
        let sign = if y_power.is_multiple_of(2) { 1 } else { -1 };
        let mut term = GrClass::one(k, n, modulus).scale(c * sign);
        for (slot, &e) in key[..k].iter().enumerate() {
            for _ in 0..e {
                term = &term * &sub[slot + 1];
            }
        }
        components[y_power] = &components[y_power] + &term;
    }
    GrTimesP2 { components }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: &str) -> GrClass {
        GrClass::schubert(3, 6, Modulus::Integral, p.parse().unwrap()).unwrap()
    }

    #[test]
    fn symmetric_reduction_small() {
        // x1^2 + x2^2 = e1^2 - 2 e2
        let mut p = FormalPoly::constant(2, 0);
        p.add_term(vec![2, 0], 1);
        p.add_term(vec![0, 2], 1);
        let r = reduce_symmetric(&p, &[2], 4).unwrap();
        assert_eq!(r, BTreeMap::from([(vec![2, 0], 1), (vec![0, 1], -2)]));
        let mut q = FormalPoly::constant(2, 0);
        q.add_term(vec![1, 0], 1);
        assert!(reduce_symmetric(&q.add(&FormalPoly::var(2, 1).scale(2)), &[2], 4).is_err());
    }

    #[test]
    fn tautological_classes() {
        let (cs, cq) = chern_tautological(3, 6, Modulus::Integral);
        let one = GrClass::one(3, 6, Modulus::Integral);
        assert_eq!(cs, &(&(&one - &s("[1]")) + &s("[1,1]")) - &s("[1,1,1]"));
        assert_eq!(cq, &(&(&one + &s("[1]")) + &s("[2]")) + &s("[3]"));
        assert_eq!(&cs * &cq, one);
        let (a, b) = chern_tautological(1, 3, Modulus::Integral);
        assert_eq!(&a * &b, GrClass::one(1, 3, Modulus::Integral));
    }

    #[test]
    fn tangent_of_p2() {
        let c = chern_tangent(1, 3, Modulus::Integral);
        let h = GrClass::special(1, 3, Modulus::Integral, 1);
        let one = GrClass::one(1, 3, Modulus::Integral);
        assert_eq!(c, &(&one + &h.scale(3)) + &h.pow(2).scale(3));
    }

    #[test]
    fn tangent_of_gr36_low_degrees() {
        let c = chern_tangent(3, 6, Modulus::Integral);
        assert_eq!(c.homogeneous(0), GrClass::one(3, 6, Modulus::Integral));
        assert_eq!(c.homogeneous(1), s("[1]").scale(6));
        // top Chern class is the Euler characteristic, C(6,3) = 20
        assert_eq!(c.degree(), 20);
    }

    #[test]
    fn euler_class_of_tensor() {
        let e = euler_tensor_rank3_line(Modulus::Integral);
        assert_eq!(e.components[0], s("[1,1,1]").scale(-1));
        assert_eq!(e.components[1], s("[1,1]").scale(-1));
        assert_eq!(e.components[2], s("[1]").scale(-1));
    }
}
