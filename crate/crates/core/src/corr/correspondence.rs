use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coeff::Modulus;
use crate::error::{Error, Result};
use crate::schubert::write_terms;
use crate::space::{normalize, CellularSpace, SpaceConfig, SpaceRegistry, SparseVec};

/// A cycle on `source x target` in the Kunneth basis, read as a morphism
/// `source -> target`. Terms of any codimension are allowed.
#[derive(Clone)]
pub struct Correspondence {
    source: Arc<dyn CellularSpace>,
    target: Arc<dyn CellularSpace>,
    coeffs: BTreeMap<(usize, usize), i64>,
}

/// Which factor a projection pushes forward to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Source,
    Target,
}

impl Correspondence {
    pub fn zero(source: Arc<dyn CellularSpace>, target: Arc<dyn CellularSpace>) -> Self {
        assert_eq!(
            source.modulus(),
            target.modulus(),
            "factors of a correspondence share their coefficients"
        );
        Correspondence {
            source,
            target,
            coeffs: BTreeMap::new(),
        }
    }

    /// `a x b`.
    pub fn external(
        source: &Arc<dyn CellularSpace>,
        a: &SparseVec,
        target: &Arc<dyn CellularSpace>,
        b: &SparseVec,
    ) -> Self {
        let mut out = Self::zero(Arc::clone(source), Arc::clone(target));
        for (&u, &x) in a {
            for (&v, &y) in b {
                out.add_term(u, v, x * y);
            }
        }
        out
    }

    pub fn from_terms(
        source: &Arc<dyn CellularSpace>,
        target: &Arc<dyn CellularSpace>,
        terms: impl IntoIterator<Item = ((usize, usize), i64)>,
    ) -> Self {
        let mut out = Self::zero(Arc::clone(source), Arc::clone(target));
        for ((u, v), c) in terms {
            out.add_term(u, v, c);
        }
        out
    }

    pub fn add_term(&mut self, u: usize, v: usize, c: i64) {
        let m = self.modulus();
        let val = m.reduce(self.coeff(u, v) + c);
        if val == 0 {
            self.coeffs.remove(&(u, v));
        } else {
            self.coeffs.insert((u, v), val);
        }
    }

    pub fn source(&self) -> &Arc<dyn CellularSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<dyn CellularSpace> {
        &self.target
    }

    pub fn modulus(&self) -> Modulus {
        self.source.modulus()
    }

    pub fn coeff(&self, u: usize, v: usize) -> i64 {
        self.coeffs.get(&(u, v)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Terms whose total codimension is `c`.
    pub fn homogeneous(&self, c: u32) -> Correspondence {
        let mut out = Self::zero(Arc::clone(&self.source), Arc::clone(&self.target));
        for ((u, v), x) in self.terms() {
            if self.source.codim(u) + self.target.codim(v) == c {
                out.add_term(u, v, x);
            }
        }
        out
    }

    pub fn scale(&self, s: i64) -> Correspondence {
        let mut out = Self::zero(Arc::clone(&self.source), Arc::clone(&self.target));
        for ((u, v), x) in self.terms() {
            out.add_term(u, v, x * s);
        }
        out
    }

    /// Swaps the factors; no sign.
    pub fn transpose(&self) -> Correspondence {
        let mut out = Self::zero(Arc::clone(&self.target), Arc::clone(&self.source));
        for ((u, v), x) in self.terms() {
            out.add_term(v, u, x);
        }
        out
    }

    fn same_spaces(&self, other: &Correspondence) -> Result<()> {
        if self.source.key() != other.source.key() || self.target.key() != other.target.key() {
            return Err(Error::SpaceMismatch(format!(
                "{} -> {} vs {} -> {}",
                self.source.key(),
                self.target.key(),
                other.source.key(),
                other.target.key()
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Correspondence) -> Result<Correspondence> {
        self.same_spaces(other)?;
        let mut out = self.clone();
        for ((u, v), x) in other.terms() {
            out.add_term(u, v, x);
        }
        Ok(out)
    }

    /// Componentwise product in `CH(source) (x) CH(target)`.
    pub fn kunneth_mul(&self, other: &Correspondence) -> Result<Correspondence> {
        self.same_spaces(other)?;
        let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for ((u, v), x) in self.terms() {
            for ((a, b), y) in other.terms() {
                let left = self.source.basis_product(u, a);
                if left.is_empty() {
                    continue;
                }
                let right = self.target.basis_product(v, b);
                for &(s, c) in &left {
                    for &(t, e) in &right {
                        *acc.entry((s, t)).or_insert(0) += x * y * c * e;
                    }
                }
            }
        }
        Ok(Self::from_terms(&self.source, &self.target, acc))
    }

    /// `p_*(x) = pr_2*(pr_1^*(x) . p)`: `sum p_uv deg(x . u) v`.
    pub fn realize(&self, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for ((u, v), c) in self.terms() {
            let deg: i64 = x.iter().map(|(&i, &a)| a * self.source.pairing(i, u)).sum();
            if deg != 0 {
                *out.entry(v).or_insert(0) += c * deg;
            }
        }
        normalize(self.modulus(), out)
    }

    /// Pushforward along a projection: onto the source, `u x v -> deg(v) u`;
    /// onto the target, `u x v -> deg(u) v`.
    pub fn proj_push(&self, side: Side) -> SparseVec {
        let mut out = SparseVec::new();
        for ((u, v), c) in self.terms() {
            match side {
                Side::Source if v == self.target.point() => *out.entry(u).or_insert(0) += c,
                Side::Target if u == self.source.point() => *out.entry(v).or_insert(0) += c,
                _ => {}
            }
        }
        normalize(self.modulus(), out)
    }

    /// Replaces each source basis element by a class on another space,
    /// e.g. a pullback.
    pub fn map_source(
        &self,
        new_source: &Arc<dyn CellularSpace>,
        f: impl Fn(usize) -> Result<SparseVec>,
    ) -> Result<Correspondence> {
        let mut out = Self::zero(Arc::clone(new_source), Arc::clone(&self.target));
        for ((u, v), c) in self.terms() {
            for (s, x) in f(u)? {
                out.add_term(s, v, c * x);
            }
        }
        Ok(out)
    }

    /// Serializable form with labels spelled out.
    pub fn to_doc(&self) -> CorrespondenceDoc {
        CorrespondenceDoc {
            source: self.source.name().to_string(),
            target: self.target.name().to_string(),
            modulus: self.modulus().value(),
            terms: self
                .terms()
                .map(|((u, v), c)| TermDoc {
                    source_label: self.source.label(u),
                    target_label: self.target.label(v),
                    coeff: c,
                })
                .collect(),
        }
    }

    pub fn from_doc(
        doc: &CorrespondenceDoc,
        registry: &SpaceRegistry,
        config: &SpaceConfig,
    ) -> Result<Correspondence> {
        let config = SpaceConfig {
            modulus: Modulus::from_value(doc.modulus)?,
            ..*config
        };
        let source = registry.build(&doc.source, &config)?;
        let target = registry.build(&doc.target, &config)?;
        let mut out = Self::zero(Arc::clone(&source), Arc::clone(&target));
        for t in &doc.terms {
            let u = source.parse_label(&t.source_label).ok_or_else(|| {
                Error::Parse(format!("`{}` is not a label of {}", t.source_label, doc.source))
            })?;
            let v = target.parse_label(&t.target_label).ok_or_else(|| {
                Error::Parse(format!("`{}` is not a label of {}", t.target_label, doc.target))
            })?;
            out.add_term(u, v, t.coeff);
        }
        Ok(out)
    }
}

/// `beta o alpha` for `alpha: X -> Y` and `beta: Y -> Z`:
/// `sum a_uv b_wz deg_Y(v . w) (u x z)`.
pub fn compose(beta: &Correspondence, alpha: &Correspondence) -> Result<Correspondence> {
    if alpha.target.key() != beta.source.key() {
        return Err(Error::SpaceMismatch(format!(
            "cannot compose {} -> {} after {} -> {}",
            beta.source.key(),
            beta.target.key(),
            alpha.source.key(),
            alpha.target.key()
        )));
    }
    let middle = &alpha.target;
    let mut by_row: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
    for ((w, z), b) in beta.terms() {
        by_row.entry(w).or_default().push((z, b));
    }
    let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for ((u, v), a) in alpha.terms() {
        for (&w, row) in &by_row {
            let deg = middle.pairing(v, w);
            if deg == 0 {
                continue;
            }
            for &(z, b) in row {
                *acc.entry((u, z)).or_insert(0) += a * b * deg;
            }
        }
    }
    Ok(Correspondence::from_terms(&alpha.source, &beta.target, acc))
}

/// The diagonal `sum_b b x b^dual`, built from the space's dual basis.
pub fn diagonal(space: &Arc<dyn CellularSpace>) -> Result<Correspondence> {
    let duals = space.dual_basis()?;
    let mut out = Correspondence::zero(Arc::clone(space), Arc::clone(space));
    for (b, dual) in duals.iter().enumerate() {
        for (&v, &c) in dual {
            out.add_term(b, v, c);
        }
    }
    Ok(out)
}

impl PartialEq for Correspondence {
    fn eq(&self, other: &Self) -> bool {
        self.source.key() == other.source.key()
            && self.target.key() == other.target.key()
            && self.coeffs == other.coeffs
    }
}

impl Eq for Correspondence {}

impl fmt::Debug for Correspondence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Correspondence({} -> {}: {self})", self.source.key(), self.target.key())
    }
}

impl fmt::Display for Correspondence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms().map(|((u, v), c)| {
                (format!("{} x {}", self.source.label(u), self.target.label(v)), c)
            }),
        )
    }
}

impl Add for &Correspondence {
    type Output = Correspondence;
    fn add(self, rhs: &Correspondence) -> Correspondence {
        self.checked_add(rhs).expect("contract violation")
    }
}

impl Sub for &Correspondence {
    type Output = Correspondence;
    fn sub(self, rhs: &Correspondence) -> Correspondence {
        self.checked_add(&-rhs).expect("contract violation")
    }
}

impl Neg for &Correspondence {
    type Output = Correspondence;
    fn neg(self) -> Correspondence {
        self.scale(-1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub source_label: String,
    pub target_label: String,
    pub coeff: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrespondenceDoc {
    pub source: String,
    pub target: String,
    pub modulus: u32,
    pub terms: Vec<TermDoc>,
}
