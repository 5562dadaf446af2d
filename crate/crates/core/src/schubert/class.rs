use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::partition::Partition;
use super::ring::GrRing;
use crate::coeff::Modulus;
use crate::error::{Error, Result};

/// An element of CH(Gr(k,n)) (or its reduction mod 3) in the Schubert basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrClass {
    k: usize,
    n: usize,
    modulus: Modulus,
    coeffs: BTreeMap<Partition, i64>,
}

impl GrClass {
    pub fn zero(k: usize, n: usize, modulus: Modulus) -> Self {
        assert!(0 < k && k < n, "Gr({k},{n}) needs 0 < k < n");
        GrClass {
            k,
            n,
            modulus,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(k: usize, n: usize, modulus: Modulus) -> Self {
        Self::zero(k, n, modulus).with_term(Partition::empty(), 1)
    }

    /// The Schubert class `sigma_lambda`.
    pub fn schubert(k: usize, n: usize, modulus: Modulus, lambda: Partition) -> Result<Self> {
        lambda.check_fits(k, (n - k) as u32)?;
        Ok(Self::zero(k, n, modulus).with_term(lambda, 1))
    }

    /// The special class `sigma_(a)`; zero when `a > n - k`.
    pub fn special(k: usize, n: usize, modulus: Modulus, a: u32) -> Self {
        if a as usize > n - k {
            return Self::zero(k, n, modulus);
        }
        Self::zero(k, n, modulus).with_term(Partition::row(a), 1)
    }

    pub fn from_terms(
        k: usize,
        n: usize,
        modulus: Modulus,
        terms: impl IntoIterator<Item = (Partition, i64)>,
    ) -> Result<Self> {
        let mut out = Self::zero(k, n, modulus);
        for (p, c) in terms {
            p.check_fits(k, (n - k) as u32)?;
            out.add_term(p, c);
        }
        Ok(out)
    }

    fn with_term(mut self, p: Partition, c: i64) -> Self {
        self.add_term(p, c);
        self
    }

    pub(crate) fn add_term(&mut self, p: Partition, c: i64) {
        let v = self.modulus.reduce(self.coeff(&p) + c);
        if v == 0 {
            self.coeffs.remove(&p);
        } else {
            self.coeffs.insert(p, v);
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, p: &Partition) -> i64 {
        self.coeffs.get(p).copied().unwrap_or(0)
    }

    /// Nonzero terms in canonical (graded lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, i64)> {
        self.coeffs.iter().map(|(p, &c)| (p, c))
    }

    /// Component of codimension `d`.
    pub fn homogeneous(&self, d: u32) -> GrClass {
        GrClass {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(p, _)| p.size() == d)
                .map(|(p, &c)| (p.clone(), c))
                .collect(),
            ..Self::zero(self.k, self.n, self.modulus)
        }
    }

    /// Coefficient of the point class `sigma_(n-k)^k`.
    pub fn degree(&self) -> i64 {
        let full = Partition::new(vec![(self.n - self.k) as u32; self.k]).expect("rectangle");
        self.coeff(&full)
    }

    pub fn reduce(&self, modulus: Modulus) -> GrClass {
        let mut out = Self::zero(self.k, self.n, modulus);
        for (p, c) in self.terms() {
            out.add_term(p.clone(), c);
        }
        out
    }

    pub fn scale(&self, s: i64) -> GrClass {
        let mut out = Self::zero(self.k, self.n, self.modulus);
        for (p, c) in self.terms() {
            out.add_term(p.clone(), c * s);
        }
        out
    }

    fn check_compatible(&self, other: &GrClass) -> Result<()> {
        if (self.k, self.n) != (other.k, other.n) {
            return Err(Error::AmbientMismatch(format!(
                "Gr({},{}) vs Gr({},{})",
                self.k, self.n, other.k, other.n
            )));
        }
        self.modulus.check_same(other.modulus)
    }

    pub fn checked_add(&self, other: &GrClass) -> Result<GrClass> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (p, c) in other.terms() {
            out.add_term(p.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &GrClass) -> Result<GrClass> {
        self.check_compatible(other)?;
        let ring = GrRing::get(self.k, self.n);
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for (p, a) in self.terms() {
            let i = ring.index_of(p).expect("terms fit the box");
            for (q, b) in other.terms() {
                let j = ring.index_of(q).expect("terms fit the box");
                for &(t, c) in ring.product(i, j) {
                    *acc.entry(t).or_insert(0) += a * b * c;
                }
            }
        }
        let mut out = Self::zero(self.k, self.n, self.modulus);
        for (t, c) in acc {
            out.add_term(ring.basis()[t].clone(), c);
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> GrClass {
        let mut out = Self::one(self.k, self.n, self.modulus);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }
}

impl Add for &GrClass {
    type Output = GrClass;
    fn add(self, rhs: &GrClass) -> GrClass {
        self.checked_add(rhs).expect("contract violation")
    }
}

impl Sub for &GrClass {
    type Output = GrClass;
    fn sub(self, rhs: &GrClass) -> GrClass {
        self.checked_add(&-rhs).expect("contract violation")
    }
}

impl Neg for &GrClass {
    type Output = GrClass;
    fn neg(self) -> GrClass {
        self.scale(-1)
    }
}

impl Mul for &GrClass {
    type Output = GrClass;
    fn mul(self, rhs: &GrClass) -> GrClass {
        self.checked_mul(rhs).expect("contract violation")
    }
}

/// Writes `c*X` terms with signs folded into the separators; mod-3
/// coefficients print as canonical residues.
pub(crate) fn write_terms<'a, L: fmt::Display + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl IntoIterator<Item = (L, i64)>,
) -> fmt::Result {
    let mut first = true;
    for (label, c) in terms {
        let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
        if first {
            if sign == "-" {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        if mag == 1 {
            write!(f, "{label}")?;
        } else {
            write!(f, "{mag}*{label}")?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for GrClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms().map(|(p, c)| (format!("S{p}"), c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: &str) -> GrClass {
        GrClass::schubert(3, 6, Modulus::Integral, p.parse().unwrap()).unwrap()
    }

    #[test]
    fn pieri_base_case() {
        assert_eq!(&s("[1]") * &s("[1]"), &s("[2]") + &s("[1,1]"));
    }

    #[test]
    fn middle_codimension_products() {
        assert_eq!(&s("[2,1,1]") * &s("[2,2]"), s("[3,3,2]"));
        assert_eq!(&s("[2,2]") * &s("[3,1]"), s("[3,3,2]"));
        assert_eq!(&s("[2,1,1]") * &s("[2,1,1]"), s("[3,3,2]"));
        assert_eq!(&s("[3,1]") * &s("[3,1]"), s("[3,3,2]"));
        assert!((&s("[3,1]") * &s("[2,1,1]")).is_zero());
        assert!((&s("[2,2]") * &s("[2,2]")).is_zero());
    }

    #[test]
    fn degrees() {
        assert_eq!(s("[3,3,3]").degree(), 1);
        assert_eq!(s("[1]").pow(9).degree(), 42);
        assert_eq!(s("[1]").pow(4).degree(), 0);
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = s("[1]");
        let b = GrClass::schubert(1, 3, Modulus::Integral, Partition::row(1)).unwrap();
        assert!(matches!(a.checked_mul(&b), Err(Error::AmbientMismatch(_))));
        let c = a.reduce(Modulus::Three);
        assert!(matches!(a.checked_add(&c), Err(Error::ModulusMismatch { .. })));
        assert!(GrClass::schubert(3, 6, Modulus::Integral, "[4]".parse().unwrap()).is_err());
    }

    #[test]
    fn mod3_residues_and_display() {
        let x = s("[1]").pow(4).reduce(Modulus::Three);
        // 3*S[2,1,1] + 2*S[2,2] + 3*S[3,1]
        assert_eq!(x.to_string(), "2*S[2,2]");
        assert_eq!((&s("[1]") - &s("[2]").scale(2)).to_string(), "S[1] - 2*S[2]");
        assert_eq!(GrClass::zero(3, 6, Modulus::Three).to_string(), "0");
        assert_eq!(GrClass::one(3, 6, Modulus::Three).to_string(), "S[0]");
    }
}
