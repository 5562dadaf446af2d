//! Cellular spaces that correspondences live on.
//!
//! Each space exposes its additive basis, grading, structure constants and
//! degree functional through [`CellularSpace`]. Spaces are constructed by
//! name from a [`SpaceRegistry`], so the correspondence layer never needs
//! to know which concrete ring it is working in.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::coeff::{inverse_integral, inverse_mod3, Modulus};
use crate::dvariety::{DLabel, DModel, DModelConfig};
use crate::error::{Error, Result};
use crate::schubert::GrRing;
use crate::steenrod::{self, AdmissibleMonomial};

/// Sparse vector over a space's basis, keyed by basis index.
pub type SparseVec = BTreeMap<usize, i64>;

pub trait CellularSpace: Send + Sync + fmt::Debug {
    /// Registry name, e.g. `"d"`.
    fn name(&self) -> &'static str;

    /// Distinguishes differently configured instances of the same space.
    fn key(&self) -> String {
        format!("{}/mod{}", self.name(), self.modulus())
    }

    fn dim(&self) -> u32;

    fn modulus(&self) -> Modulus;

    fn rank(&self) -> usize;

    fn label(&self, i: usize) -> String;

    fn codim(&self, i: usize) -> u32;

    /// Structure constants `b_i * b_j`, unreduced.
    fn basis_product(&self, i: usize, j: usize) -> Vec<(usize, i64)>;

    /// `deg(b_i * b_j)`, reduced.
    fn pairing(&self, i: usize, j: usize) -> i64;

    /// Index of the point class.
    fn point(&self) -> usize {
        self.rank() - 1
    }

    fn parse_label(&self, s: &str) -> Option<usize> {
        let s = s.trim();
        (0..self.rank()).find(|&i| self.label(i) == s)
    }

    /// For every basis element, the class pairing with it to the
    /// Kronecker delta.
    fn dual_basis(&self) -> Result<Vec<SparseVec>> {
        generic_dual_basis(self)
    }

    /// Monomials spanning the subalgebra the mod-3 reduced powers act on,
    /// with their total powers.
    fn admissible_monomials(&self) -> Result<Vec<AdmissibleMonomial>> {
        Err(Error::Unsupported(format!(
            "no reduced powers are defined on `{}`",
            self.name()
        )))
    }

    fn multiply(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let m = self.modulus();
        let mut out = SparseVec::new();
        for (&i, &x) in a {
            for (&j, &y) in b {
                for (t, c) in self.basis_product(i, j) {
                    *out.entry(t).or_insert(0) += x * y * c;
                }
            }
        }
        normalize(m, out)
    }

    fn degree(&self, a: &SparseVec) -> i64 {
        self.modulus()
            .reduce(a.get(&self.point()).copied().unwrap_or(0))
    }
}

/// Drops zero entries after reducing by the modulus.
pub fn normalize(m: Modulus, v: SparseVec) -> SparseVec {
    v.into_iter()
        .map(|(i, c)| (i, m.reduce(c)))
        .filter(|&(_, c)| c != 0)
        .collect()
}

fn generic_dual_basis<S: CellularSpace + ?Sized>(space: &S) -> Result<Vec<SparseVec>> {
    let dim = space.dim();
    let mut duals = vec![SparseVec::new(); space.rank()];
    for c in 0..=dim {
        let rows: Vec<usize> = (0..space.rank()).filter(|&i| space.codim(i) == c).collect();
        let cols: Vec<usize> = (0..space.rank())
            .filter(|&i| space.codim(i) == dim - c)
            .collect();
        let g: Vec<Vec<i64>> = rows
            .iter()
            .map(|&u| cols.iter().map(|&v| space.pairing(u, v)).collect())
            .collect();
        let inv = match space.modulus() {
            Modulus::Three => inverse_mod3(&g),
            Modulus::Integral => inverse_integral(&g),
        }
        .ok_or_else(|| {
            Error::ModelInconsistency(format!(
                "Gram matrix of `{}` in codimension {c} is singular mod {}",
                space.name(),
                space.modulus()
            ))
        })?;
        for (i, &u) in rows.iter().enumerate() {
            let v: SparseVec = cols
                .iter()
                .enumerate()
                .map(|(m, &col)| (col, inv[m][i]))
                .collect();
            duals[u] = normalize(space.modulus(), v);
        }
    }
    Ok(duals)
}

fn pairing_table(rank: usize, modulus: Modulus, product: impl Fn(usize, usize) -> Vec<(usize, i64)>, point: usize) -> Vec<Vec<i64>> {
    (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| {
                    let deg: i64 = product(i, j)
                        .into_iter()
                        .filter(|&(t, _)| t == point)
                        .map(|(_, c)| c)
                        .sum();
                    modulus.reduce(deg)
                })
                .collect()
        })
        .collect()
}

/// `Gr(k, n)` in the Schubert basis.
#[derive(Debug)]
pub struct GrassmannianSpace {
    name: &'static str,
    ring: Arc<GrRing>,
    modulus: Modulus,
    pairing: Vec<Vec<i64>>,
}

impl GrassmannianSpace {
    pub fn new(name: &'static str, k: usize, n: usize, modulus: Modulus) -> Self {
        let ring = GrRing::get(k, n);
        let rank = ring.basis().len();
        let pairing = pairing_table(rank, modulus, |i, j| ring.product(i, j).to_vec(), rank - 1);
        GrassmannianSpace {
            name,
            ring,
            modulus,
            pairing,
        }
    }

    pub fn ring(&self) -> &GrRing {
        &self.ring
    }
}

impl CellularSpace for GrassmannianSpace {
    fn name(&self) -> &'static str {
        self.name
    }
    fn dim(&self) -> u32 {
        self.ring.dim()
    }
    fn modulus(&self) -> Modulus {
        self.modulus
    }
    fn rank(&self) -> usize {
        self.ring.basis().len()
    }
    fn label(&self, i: usize) -> String {
        format!("S{}", self.ring.basis()[i])
    }
    fn codim(&self, i: usize) -> u32 {
        self.ring.basis()[i].size()
    }
    fn basis_product(&self, i: usize, j: usize) -> Vec<(usize, i64)> {
        self.ring.product(i, j).to_vec()
    }
    fn pairing(&self, i: usize, j: usize) -> i64 {
        self.pairing[i][j]
    }
}

/// The split hyperplane section D over the 18-label basis.
#[derive(Debug)]
pub struct DSpace {
    model: DModel,
    pairing: Vec<Vec<i64>>,
}

impl DSpace {
    pub fn new(model: DModel) -> Self {
        let rank = DLabel::all().len();
        let pairing = pairing_table(
            rank,
            model.modulus(),
            |i, j| model.basis_product(i, j),
            DLabel::point().index(),
        );
        DSpace { model, pairing }
    }

    pub fn model(&self) -> DModel {
        self.model
    }
}

impl CellularSpace for DSpace {
    fn name(&self) -> &'static str {
        "d"
    }
    fn key(&self) -> String {
        format!("d(delta={})/mod{}", self.model.delta(), self.model.modulus())
    }
    fn dim(&self) -> u32 {
        crate::dvariety::DIM
    }
    fn modulus(&self) -> Modulus {
        self.model.modulus()
    }
    fn rank(&self) -> usize {
        DLabel::all().len()
    }
    fn label(&self, i: usize) -> String {
        DLabel::all()[i].to_string()
    }
    fn codim(&self, i: usize) -> u32 {
        DLabel::all()[i].codim()
    }
    fn basis_product(&self, i: usize, j: usize) -> Vec<(usize, i64)> {
        self.model.basis_product(i, j)
    }
    fn pairing(&self, i: usize, j: usize) -> i64 {
        self.pairing[i][j]
    }
    fn point(&self) -> usize {
        DLabel::point().index()
    }
    fn parse_label(&self, s: &str) -> Option<usize> {
        s.parse::<DLabel>().ok().map(|l| l.index())
    }
    fn dual_basis(&self) -> Result<Vec<SparseVec>> {
        // goes through the model so its Gram matrices are the ones used
        let mut duals = vec![SparseVec::new(); self.rank()];
        for c in 0..=self.dim() {
            let rows = DModel::basis_in_codim(c);
            for (label, dual) in rows.iter().zip(self.model.dual_basis(c)?) {
                duals[label.index()] = dual.indexed().into_iter().collect();
            }
        }
        Ok(duals)
    }
    fn admissible_monomials(&self) -> Result<Vec<AdmissibleMonomial>> {
        steenrod::d_admissible_monomials(self.model)
    }
}

/// The projective plane with basis `1, H, H^2`.
#[derive(Debug)]
pub struct ProjectivePlane {
    modulus: Modulus,
}

impl ProjectivePlane {
    pub fn new(modulus: Modulus) -> Self {
        ProjectivePlane { modulus }
    }
}

impl CellularSpace for ProjectivePlane {
    fn name(&self) -> &'static str {
        "p2"
    }
    fn dim(&self) -> u32 {
        2
    }
    fn modulus(&self) -> Modulus {
        self.modulus
    }
    fn rank(&self) -> usize {
        3
    }
    fn label(&self, i: usize) -> String {
        ["1", "H", "H^2"][i].to_string()
    }
    fn codim(&self, i: usize) -> u32 {
        i as u32
    }
    fn basis_product(&self, i: usize, j: usize) -> Vec<(usize, i64)> {
        if i + j <= 2 {
            vec![(i + j, 1)]
        } else {
            Vec::new()
        }
    }
    fn pairing(&self, i: usize, j: usize) -> i64 {
        i64::from(i + j == 2)
    }
    fn admissible_monomials(&self) -> Result<Vec<AdmissibleMonomial>> {
        // S(H) = H + H^3 = H, so every class is fixed
        Ok((0..3)
            .map(|i| AdmissibleMonomial::fixed(SparseVec::from([(i, 1)])))
            .collect())
    }
}

/// A point, with the single basis class `pt`.
#[derive(Debug)]
pub struct Point {
    modulus: Modulus,
}

impl Point {
    pub fn new(modulus: Modulus) -> Self {
        Point { modulus }
    }
}

impl CellularSpace for Point {
    fn name(&self) -> &'static str {
        "pt"
    }
    fn dim(&self) -> u32 {
        0
    }
    fn modulus(&self) -> Modulus {
        self.modulus
    }
    fn rank(&self) -> usize {
        1
    }
    fn label(&self, _: usize) -> String {
        "pt".to_string()
    }
    fn codim(&self, _: usize) -> u32 {
        0
    }
    fn basis_product(&self, _: usize, _: usize) -> Vec<(usize, i64)> {
        vec![(0, 1)]
    }
    fn pairing(&self, _: usize, _: usize) -> i64 {
        1
    }
    fn admissible_monomials(&self) -> Result<Vec<AdmissibleMonomial>> {
        Ok(vec![AdmissibleMonomial::fixed(SparseVec::from([(0, 1)]))])
    }
}

/// Settings shared by every space built from a registry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpaceConfig {
    pub modulus: Modulus,
    pub d: DModelConfig,
}

impl Default for SpaceConfig {
    fn default() -> Self {
        SpaceConfig {
            modulus: Modulus::Three,
            d: DModelConfig::default(),
        }
    }
}

pub type SpaceCtor = fn(&SpaceConfig) -> Result<Arc<dyn CellularSpace>>;

/// Name-indexed constructors for cellular spaces.
#[derive(Clone)]
pub struct SpaceRegistry {
    entries: Vec<(&'static str, SpaceCtor)>,
}

impl fmt::Debug for SpaceRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

impl SpaceRegistry {
    pub fn empty() -> Self {
        SpaceRegistry {
            entries: Vec::new(),
        }
    }

    /// `gr36`, `d`, `p2` and `pt`.
    pub fn builtin() -> Self {
        let mut r = Self::empty();
        r.register("gr36", |c| {
            Ok(Arc::new(GrassmannianSpace::new("gr36", 3, 6, c.modulus)))
        });
        r.register("d", |c| Ok(Arc::new(DSpace::new(DModel::new(c.d, c.modulus)?))));
        r.register("p2", |c| Ok(Arc::new(ProjectivePlane::new(c.modulus))));
        r.register("pt", |c| Ok(Arc::new(Point::new(c.modulus))));
        r
    }

    /// Adds or replaces a constructor.
    pub fn register(&mut self, name: &'static str, ctor: SpaceCtor) {
        match self.entries.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = ctor,
            None => self.entries.push((name, ctor)),
        }
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|(n, _)| *n).collect()
    }

    pub fn build(&self, name: &str, config: &SpaceConfig) -> Result<Arc<dyn CellularSpace>> {
        let (_, ctor) = self
            .entries
            .iter()
            .find(|(n, _)| *n == name)
            .ok_or_else(|| Error::UnknownSpace(name.to_string()))?;
        ctor(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_builds_every_space() {
        let reg = SpaceRegistry::builtin();
        assert_eq!(reg.names(), ["gr36", "d", "p2", "pt"]);
        let cfg = SpaceConfig::default();
        let dims: Vec<u32> = reg
            .names()
            .iter()
            .map(|n| reg.build(n, &cfg).unwrap().dim())
            .collect();
        assert_eq!(dims, [9, 8, 2, 0]);
        assert!(matches!(reg.build("p3", &cfg), Err(Error::UnknownSpace(_))));
    }

    #[test]
    fn dual_bases_pair_to_kronecker_delta() {
        let reg = SpaceRegistry::builtin();
        for name in reg.names() {
            let s = reg.build(name, &SpaceConfig::default()).unwrap();
            let duals = s.dual_basis().unwrap();
            for (i, dual) in duals.iter().enumerate() {
                for j in 0..s.rank() {
                    let p = s.degree(&s.multiply(&SparseVec::from([(j, 1)]), dual));
                    assert_eq!(p, i64::from(i == j), "{name}: {} vs {}", s.label(i), s.label(j));
                }
            }
        }
    }

    #[test]
    fn integral_d_has_no_integral_dual_basis() {
        let cfg = SpaceConfig {
            modulus: Modulus::Integral,
            ..Default::default()
        };
        let reg = SpaceRegistry::builtin();
        assert!(reg.build("d", &cfg).unwrap().dual_basis().is_err());
        assert!(reg.build("gr36", &cfg).unwrap().dual_basis().is_ok());
        assert!(reg.build("p2", &cfg).unwrap().dual_basis().is_ok());
    }

    #[test]
    fn labels_round_trip() {
        let reg = SpaceRegistry::builtin();
        for name in reg.names() {
            let s = reg.build(name, &SpaceConfig::default()).unwrap();
            for i in 0..s.rank() {
                assert_eq!(s.parse_label(&s.label(i)), Some(i));
            }
        }
    }
}
