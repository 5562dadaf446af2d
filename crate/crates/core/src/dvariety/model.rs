//! Multiplication model of CH(D).
//!
//! In codimension at most 4 the ring is the image of the pullback from
//! `Gr(3,6)` plus the class `d`; on dimensions at most 3 the pushforward is
//! an isomorphism onto the Grassmannian, so `U * L` products are computed
//! through the projection formula and then pulled back along that
//! isomorphism. `d` kills every positive-codimension pullback class and
//! `d * d = delta * pt`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use super::label::DLabel;
use crate::coeff::{inverse_integral, inverse_mod3, Modulus};
use crate::error::{Error, Result};
use crate::schubert::{chern_tangent, write_terms, GrClass, GrRing, Partition};

/// Dimension of D.
pub const DIM: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DModelConfig {
    /// Self-intersection degree `deg(d * d)`; must be nonzero mod 3.
    pub delta: i64,
    /// Test hook: perturbs one entry of the codimension-1 Gram matrix, so
    /// everything built from dual bases goes wrong while products do not.
    pub gram_fault: bool,
}

impl Default for DModelConfig {
    fn default() -> Self {
        DModelConfig {
            delta: 2,
            gram_fault: false,
        }
    }
}

impl DModelConfig {
    pub fn with_delta(delta: i64) -> Self {
        DModelConfig {
            delta,
            ..Default::default()
        }
    }
}

/// A configured model: the integer `delta` plus the coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DModel {
    config: DModelConfig,
    modulus: Modulus,
}

/// Integral structure constants over the 18 labels, for one `delta`.
#[derive(Debug)]
struct Table {
    products: Vec<Vec<Vec<(usize, i64)>>>,
}

static TABLES: OnceLock<RwLock<HashMap<i64, Arc<Table>>>> = OnceLock::new();

fn gr36() -> Arc<GrRing> {
    GrRing::get(3, 6)
}

/// Pullback of one Schubert class, integrally.
fn pullback_basis(nu: &Partition) -> Vec<(DLabel, i64)> {
    if nu.size() <= 4 {
        return vec![(DLabel::U(nu.clone()), 1)];
    }
    let ring = gr36();
    let i = ring.index_of(nu).expect("partition in the 3x3 box");
    ring.pieri(i, 1)
        .iter()
        .map(|&t| (DLabel::L(ring.basis()[t].clone()), 1))
        .collect()
}

fn schubert_product(a: &Partition, b: &Partition) -> Vec<(Partition, i64)> {
    let ring = gr36();
    let i = ring.index_of(a).expect("box partition");
    let j = ring.index_of(b).expect("box partition");
    ring.product(i, j)
        .iter()
        .map(|&(t, c)| (ring.basis()[t].clone(), c))
        .collect()
}

fn basis_product(a: &DLabel, b: &DLabel, delta: i64) -> BTreeMap<DLabel, i64> {
    use DLabel::{L, U, V};
    let mut out = BTreeMap::new();
    let mut push = |l: DLabel, c: i64| *out.entry(l).or_insert(0) += c;
    if a.codim() + b.codim() > DIM {
        return out;
    }
    match (a, b) {
        (U(x), U(y)) => {
            for (nu, c) in schubert_product(x, y) {
                for (l, e) in pullback_basis(&nu) {
                    push(l, c * e);
                }
            }
        }
        (U(x), L(y)) | (L(y), U(x)) => {
            // projection formula: i_*(i^*x . z) = x . i_*z, and i_* is
            // the identity on L-labels
            for (nu, c) in schubert_product(x, y) {
                push(L(nu), c);
            }
        }
        (V, U(x)) | (U(x), V) if x.is_empty() => push(V, 1),
        (V, V) => push(DLabel::point(), delta),
        _ => {}
    }
    out.retain(|_, c| *c != 0);
    out
}

impl Table {
    fn get(delta: i64) -> Arc<Table> {
        let cache = TABLES.get_or_init(Default::default);
        if let Some(t) = cache.read().expect("poisoned").get(&delta) {
            return Arc::clone(t);
        }
        let labels = DLabel::all();
        let products = labels
            .iter()
            .map(|a| {
                labels
                    .iter()
                    .map(|b| {
                        basis_product(a, b, delta)
                            .into_iter()
                            .map(|(l, c)| (l.index(), c))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let built = Arc::new(Table { products });
        Arc::clone(cache.write().expect("poisoned").entry(delta).or_insert(built))
    }
}

impl DModel {
    pub fn new(config: DModelConfig, modulus: Modulus) -> Result<Self> {
        if config.delta.rem_euclid(3) == 0 {
            return Err(Error::InvalidDelta(config.delta));
        }
        Ok(DModel { config, modulus })
    }

    /// Mod-3 model with the given `delta`.
    pub fn mod3(delta: i64) -> Result<Self> {
        Self::new(DModelConfig::with_delta(delta), Modulus::Three)
    }

    pub fn config(&self) -> DModelConfig {
        self.config
    }

    pub fn delta(&self) -> i64 {
        self.config.delta
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn with_modulus(&self, modulus: Modulus) -> DModel {
        DModel { modulus, ..*self }
    }

    /// Integral structure constants `basis[i] * basis[j]` by label index.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<(usize, i64)> {
        Table::get(self.config.delta).products[i][j].clone()
    }

    pub fn zero(&self) -> DClass {
        DClass {
            model: *self,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn label(&self, l: DLabel) -> DClass {
        let mut out = self.zero();
        out.add_term(l, 1);
        out
    }

    pub fn one(&self) -> DClass {
        self.label(DLabel::unit())
    }

    /// The hyperplane class `h1 = U[1]`.
    pub fn h1(&self) -> DClass {
        self.label(DLabel::U(Partition::row(1)))
    }

    /// The vanishing class `d`.
    pub fn d(&self) -> DClass {
        self.label(DLabel::V)
    }

    pub fn pt(&self) -> DClass {
        self.label(DLabel::point())
    }

    pub fn from_terms(&self, terms: impl IntoIterator<Item = (DLabel, i64)>) -> DClass {
        let mut out = self.zero();
        for (l, c) in terms {
            out.add_term(l, c);
        }
        out
    }

    /// Class with coefficients indexed by canonical label position.
    pub fn from_indexed(&self, terms: impl IntoIterator<Item = (usize, i64)>) -> DClass {
        self.from_terms(terms.into_iter().map(|(i, c)| (DLabel::all()[i].clone(), c)))
    }

    /// Pullback along the hyperplane embedding; a ring homomorphism.
    pub fn pullback(&self, x: &GrClass) -> Result<DClass> {
        if (x.k(), x.n()) != (3, 6) {
            return Err(Error::AmbientMismatch(format!(
                "pullback needs a class on Gr(3,6), got Gr({},{})",
                x.k(),
                x.n()
            )));
        }
        self.modulus.check_same(x.modulus())?;
        let mut out = self.zero();
        for (p, c) in x.terms() {
            for (l, e) in pullback_basis(p) {
                out.add_term(l, c * e);
            }
        }
        Ok(out)
    }

    /// Basis labels of codimension `c`, in canonical order.
    pub fn basis_in_codim(c: u32) -> Vec<DLabel> {
        DLabel::all()
            .iter()
            .filter(|l| l.codim() == c)
            .cloned()
            .collect()
    }

    /// `deg(u * v)` for `u` of codimension `c` (rows) against `v` of
    /// codimension `8 - c` (columns).
    pub fn gram_matrix(&self, c: u32) -> Result<Vec<Vec<i64>>> {
        if c > DIM {
            return Err(Error::Unsupported(format!("codimension {c} exceeds 8")));
        }
        let rows = Self::basis_in_codim(c);
        let cols = Self::basis_in_codim(DIM - c);
        let mut g: Vec<Vec<i64>> = rows
            .iter()
            .map(|u| {
                cols.iter()
                    .map(|v| (&self.label(u.clone()) * &self.label(v.clone())).degree())
                    .collect()
            })
            .collect();
        if self.config.gram_fault && c == 1 {
            g[0][0] = self.modulus.reduce(g[0][0] + 1);
        }
        Ok(g)
    }

    /// For each basis label of codimension `c`, the class of codimension
    /// `8 - c` pairing with it to the Kronecker delta.
    pub fn dual_basis(&self, c: u32) -> Result<Vec<DClass>> {
        let g = self.gram_matrix(c)?;
        let inv = match self.modulus {
            Modulus::Three => inverse_mod3(&g),
            Modulus::Integral => inverse_integral(&g),
        }
        .ok_or_else(|| {
            Error::ModelInconsistency(format!(
                "Gram matrix in codimension {c} is not invertible mod {}",
                self.modulus
            ))
        })?;
        let cols = Self::basis_in_codim(DIM - c);
        // G X = I, so the dual of row i is sum_m X[m][i] cols[m]
        Ok((0..g.len())
            .map(|i| {
                self.from_terms(
                    cols.iter()
                        .enumerate()
                        .map(|(m, l)| (l.clone(), inv[m][i])),
                )
            })
            .collect())
    }

    /// Total Chern class of the tangent bundle of D, mod 3:
    /// `i^* c(T Gr) / (1 + h1)`.
    pub fn chern_tangent(&self) -> Result<DClass> {
        self.modulus.require_three()?;
        let ambient = self.pullback(&chern_tangent(3, 6, self.modulus))?;
        let normal_inverse = (&self.one() + &self.h1()).inverse_series();
        Ok(&ambient * &normal_inverse)
    }

    /// `c(-T_D)`, the series inverse of [`DModel::chern_tangent`].
    pub fn chern_negative_tangent(&self) -> Result<DClass> {
        Ok(self.chern_tangent()?.inverse_series())
    }

    /// Per-codimension rank of CH(D) from the label census.
    pub fn poincare_polynomial() -> Vec<u64> {
        let mut out = vec![0u64; DIM as usize + 1];
        for l in DLabel::all() {
            out[l.codim() as usize] += 1;
        }
        out
    }

    /// Polynomial `sum_i c_i h1^i`.
    pub fn h1_polynomial(&self, coeffs: &[i64]) -> DClass {
        let h = self.h1();
        let mut power = self.one();
        let mut out = self.zero();
        for &c in coeffs {
            out = &out + &power.scale(c);
            power = &power * &h;
        }
        out
    }
}

/// An element of CH(D) (or of CH(D) mod 3) over the 18-label basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DClass {
    model: DModel,
    coeffs: BTreeMap<DLabel, i64>,
}

impl DClass {
    pub fn model(&self) -> DModel {
        self.model
    }

    pub fn modulus(&self) -> Modulus {
        self.model.modulus
    }

    pub(crate) fn add_term(&mut self, l: DLabel, c: i64) {
        let v = self.model.modulus.reduce(self.coeff(&l) + c);
        if v == 0 {
            self.coeffs.remove(&l);
        } else {
            self.coeffs.insert(l, v);
        }
    }

    pub fn coeff(&self, l: &DLabel) -> i64 {
        self.coeffs.get(l).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DLabel, i64)> {
        self.coeffs.iter().map(|(l, &c)| (l, c))
    }

    /// Coefficients by canonical label index.
    pub fn indexed(&self) -> Vec<(usize, i64)> {
        self.terms().map(|(l, c)| (l.index(), c)).collect()
    }

    pub fn homogeneous(&self, c: u32) -> DClass {
        DClass {
            model: self.model,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(l, _)| l.codim() == c)
                .map(|(l, &v)| (l.clone(), v))
                .collect(),
        }
    }

    /// Coefficient of the point class.
    pub fn degree(&self) -> i64 {
        self.coeff(&DLabel::point())
    }

    pub fn scale(&self, s: i64) -> DClass {
        let mut out = self.model.zero();
        for (l, c) in self.terms() {
            out.add_term(l.clone(), c * s);
        }
        out
    }

    pub fn reduce(&self, modulus: Modulus) -> DClass {
        let model = self.model.with_modulus(modulus);
        model.from_terms(self.terms().map(|(l, c)| (l.clone(), c)))
    }

    fn check_compatible(&self, other: &DClass) -> Result<()> {
        self.model.modulus.check_same(other.model.modulus)?;
        if self.model.config.delta != other.model.config.delta {
            return Err(Error::AmbientMismatch(format!(
                "delta {} vs {}",
                self.model.config.delta, other.model.config.delta
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &DClass) -> Result<DClass> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (l, c) in other.terms() {
            out.add_term(l.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &DClass) -> Result<DClass> {
        self.check_compatible(other)?;
        let table = Table::get(self.model.config.delta);
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                for &(t, c) in &table.products[a.index()][b.index()] {
                    *acc.entry(t).or_insert(0) += x * y * c;
                }
            }
        }
        Ok(self.model.from_indexed(acc))
    }

    pub fn pow(&self, e: u32) -> DClass {
        let mut out = self.model.one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// `1 / self` as a series, for `self` with constant term 1.
    pub fn inverse_series(&self) -> DClass {
        let one = self.model.one();
        assert_eq!(self.homogeneous(0), one, "series inverse needs constant term 1");
        let nilpotent = &one - self;
        let mut out = one.clone();
        let mut power = one;
        for _ in 0..DIM {
            power = &power * &nilpotent;
            out = &out + &power;
        }
        out
    }

    /// Pushforward to `Gr(3,6)`.
    pub fn pushforward(&self) -> GrClass {
        let m = self.model.modulus;
        let sigma1 = GrClass::special(3, 6, m, 1);
        let mut out = GrClass::zero(3, 6, m);
        for (l, c) in self.terms() {
            let image = match l {
                DLabel::U(p) => {
                    &GrClass::schubert(3, 6, m, p.clone()).expect("box partition") * &sigma1
                }
                DLabel::V => continue,
                DLabel::L(p) => GrClass::schubert(3, 6, m, p.clone()).expect("box partition"),
            };
            out = &out + &image.scale(c);
        }
        out
    }
}

impl Add for &DClass {
    type Output = DClass;
    fn add(self, rhs: &DClass) -> DClass {
        self.checked_add(rhs).expect("contract violation")
    }
}

impl Sub for &DClass {
    type Output = DClass;
    fn sub(self, rhs: &DClass) -> DClass {
        self.checked_add(&-rhs).expect("contract violation")
    }
}

impl Neg for &DClass {
    type Output = DClass;
    fn neg(self) -> DClass {
        self.scale(-1)
    }
}

impl Mul for &DClass {
    type Output = DClass;
    fn mul(self, rhs: &DClass) -> DClass {
        self.checked_mul(rhs).expect("contract violation")
    }
}

impl fmt::Display for DClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> DModel {
        DModel::new(DModelConfig::default(), Modulus::Integral).unwrap()
    }

    fn u(m: DModel, p: &str) -> DClass {
        m.label(DLabel::U(p.parse().unwrap()))
    }

    fn l(m: DModel, p: &str) -> DClass {
        m.label(DLabel::L(p.parse().unwrap()))
    }

    fn s(p: &str) -> GrClass {
        GrClass::schubert(3, 6, Modulus::Integral, p.parse().unwrap()).unwrap()
    }

    #[test]
    fn delta_must_be_a_unit_mod_3() {
        assert!(matches!(DModel::mod3(3), Err(Error::InvalidDelta(3))));
        assert!(DModel::mod3(-1).is_ok());
    }

    #[test]
    fn pullback_examples() {
        let m = z();
        assert_eq!(m.pullback(&s("[2,1,1]")).unwrap(), u(m, "[2,1,1]"));
        assert_eq!(
            m.pullback(&s("[2,2,1]")).unwrap(),
            &l(m, "[3,2,1]") + &l(m, "[2,2,2]")
        );
        assert_eq!(m.pullback(&s("[3,3,2]")).unwrap(), m.pt());
        let p2 = GrClass::one(1, 3, Modulus::Integral);
        assert!(m.pullback(&p2).is_err());
    }

    #[test]
    fn pushforward_examples() {
        let m = z();
        assert!(m.d().pushforward().is_zero());
        assert_eq!(m.h1().pushforward(), &s("[2]") + &s("[1,1]"));
        assert_eq!(l(m, "[3,3,2]").pushforward(), s("[3,3,2]"));
    }

    #[test]
    fn multiplication_examples() {
        let m = z();
        assert_eq!(
            &m.h1() * &u(m, "[2,1]"),
            &(&u(m, "[2,1,1]") + &u(m, "[2,2]")) + &u(m, "[3,1]")
        );
        assert!((&u(m, "[2,1,1]") * &u(m, "[3,1]")).is_zero());
        assert!((&m.d() * &m.h1()).is_zero());
        assert_eq!(&m.d() * &m.one(), m.d());
    }

    #[test]
    fn degree_examples() {
        let m = z();
        assert_eq!(m.h1().pow(8).degree(), 42);
        assert_eq!((&u(m, "[2,1,1]") * &u(m, "[2,1,1]")).degree(), 1);
        assert_eq!((&m.d() * &m.d()).degree(), 2);
        let m1 = DModel::new(DModelConfig::with_delta(1), Modulus::Integral).unwrap();
        assert_eq!((&m1.d() * &m1.d()).degree(), 1);
    }

    #[test]
    fn gram_examples() {
        let m = DModel::mod3(2).unwrap();
        assert_eq!(
            m.gram_matrix(4).unwrap(),
            vec![
                vec![1, 1, 0, 0],
                vec![1, 0, 1, 0],
                vec![0, 1, 1, 0],
                vec![0, 0, 0, 2]
            ]
        );
        assert_eq!(m.gram_matrix(0).unwrap(), vec![vec![1]]);
        assert_eq!(m.gram_matrix(1).unwrap(), vec![vec![1]]);
        for c in 0..=8 {
            for (i, dual) in m.dual_basis(c).unwrap().iter().enumerate() {
                for (j, b) in DModel::basis_in_codim(c).into_iter().enumerate() {
                    let pairing = (&m.label(b) * dual).degree();
                    assert_eq!(pairing, i64::from(i == j), "codim {c}");
                }
            }
        }
        assert!(m.gram_matrix(9).is_err());
    }

    #[test]
    fn integral_middle_gram_is_not_unimodular() {
        assert!(matches!(
            z().dual_basis(4),
            Err(Error::ModelInconsistency(_))
        ));
        assert!(z().dual_basis(1).is_ok());
    }

    #[test]
    fn chern_classes_mod3() {
        let m = DModel::mod3(2).unwrap();
        let ct = m.chern_tangent().unwrap();
        assert_eq!(ct, m.h1_polynomial(&[1, -1, 0, -1, 1]));
        let cn = m.chern_negative_tangent().unwrap();
        assert_eq!(cn, m.h1_polynomial(&[1, 1, 1, -1, -1, -1]));
        assert_eq!(&ct * &cn, m.one());
        let ambient = m.pullback(&chern_tangent(3, 6, Modulus::Three)).unwrap();
        assert_eq!(ambient, m.h1_polynomial(&[1, 0, -1, -1, 0, 1]));
        assert!(z().chern_tangent().is_err());
    }

    #[test]
    fn census() {
        let g = DModel::poincare_polynomial();
        assert_eq!(g, [1, 1, 2, 3, 4, 3, 2, 1, 1]);
        assert_eq!(g.iter().sum::<u64>(), 18);
        assert_eq!(g[4], 2 * 3 - 2);
    }

    #[test]
    fn display() {
        let m = DModel::mod3(2).unwrap();
        assert_eq!((&m.h1() - &m.d()).to_string(), "U[1] + 2*V");
        assert_eq!(m.zero().to_string(), "0");
    }
}
