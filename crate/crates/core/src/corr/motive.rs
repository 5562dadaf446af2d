//! Split-level verification of the motivic decomposition of D into five
//! twisted copies of the motive of `P^2` plus a residual rank-3 summand.
//!
//! The correspondences `rho_i: D -> P^2` are built from
//! `r = h3^(1) x 1 + h2^(1) x H + h1 x H^2`; composing `-rho_{4-i}` with
//! `rho_i^t` has to give the diagonal of `P^2`, and the opposite
//! compositions are the idempotents `q_1, ..., q_5` on D.

use std::sync::Arc;

use serde::Serialize;

use super::correspondence::{compose, diagonal, Correspondence};
use crate::coeff::{rank_mod3, Modulus};
use crate::dvariety::{DClass, DLabel, DModel, DIM};
use crate::error::{Error, Result};
use crate::report::{Record, Report, Tuple};
use crate::schubert::euler_tensor_rank3_line;
use crate::space::{CellularSpace, DSpace, ProjectivePlane, SparseVec};

/// The spaces a decomposition check runs on.
#[derive(Debug, Clone)]
pub struct MotiveContext {
    pub model: DModel,
    pub d: Arc<dyn CellularSpace>,
    pub p2: Arc<dyn CellularSpace>,
}

impl MotiveContext {
    pub fn new(model: DModel) -> Self {
        MotiveContext {
            model,
            d: Arc::new(DSpace::new(model)),
            p2: Arc::new(ProjectivePlane::new(model.modulus())),
        }
    }

    pub fn vec(&self, x: &DClass) -> SparseVec {
        x.indexed().into_iter().collect()
    }

    pub fn class(&self, v: &SparseVec) -> DClass {
        self.model.from_indexed(v.iter().map(|(&i, &c)| (i, c)))
    }

    fn h_power(&self, j: usize) -> SparseVec {
        SparseVec::from([(j, 1)])
    }

    /// `x x H^j` on `D x P^2`.
    pub fn times_h(&self, x: &DClass, j: usize) -> Correspondence {
        Correspondence::external(&self.d, &self.vec(x), &self.p2, &self.h_power(j))
    }

    /// `x x y` on `D x D`.
    pub fn times_d(&self, x: &DClass, y: &DClass) -> Correspondence {
        Correspondence::external(&self.d, &self.vec(x), &self.d, &self.vec(y))
    }
}

#[derive(Debug, Clone)]
pub struct Generators {
    pub r: Correspondence,
    /// `rho_0, ..., rho_4`.
    pub rho: Vec<Correspondence>,
    pub rho1_prime: Correspondence,
}

fn u(model: DModel, p: &str) -> DClass {
    model.label(DLabel::U(p.parse().expect("literal partition")))
}

pub fn build_generators(ctx: &MotiveContext) -> Result<Generators> {
    let m = ctx.model;
    let h1 = m.h1();
    let r = &(&ctx.times_h(&u(m, "[1,1,1]"), 0) + &ctx.times_h(&u(m, "[1,1]"), 1))
        + &ctx.times_h(&h1, 2);
    let mut rho = Vec::with_capacity(5);
    rho.push(&r + &ctx.times_h(&h1.pow(3), 0));
    for i in 1..=4 {
        rho.push(r.kunneth_mul(&ctx.times_h(&h1.pow(i), 0))?);
    }
    let rho1_prime = &rho[1] + &ctx.times_h(&h1.pow(4), 0);
    Ok(Generators { r, rho, rho1_prime })
}

/// `r` as minus the pullback of the Euler class of `S (x) O(-1)`.
pub fn r_from_euler(ctx: &MotiveContext) -> Result<Correspondence> {
    let e = euler_tensor_rank3_line(ctx.model.modulus());
    let mut out = Correspondence::zero(Arc::clone(&ctx.d), Arc::clone(&ctx.p2));
    for (j, comp) in e.components.iter().enumerate() {
        let pulled = ctx.model.pullback(comp)?;
        out = &out - &ctx.times_h(&pulled, j);
    }
    Ok(out)
}

/// An idempotent on D with its rank profile.
#[derive(Debug, Clone, Serialize)]
pub struct MotiveSummand {
    pub name: String,
    #[serde(skip)]
    pub idempotent: Correspondence,
    pub idempotent_text: String,
    pub graded_ranks: Vec<usize>,
    pub twist_profile: Vec<u32>,
}

impl MotiveSummand {
    pub fn new(name: impl Into<String>, q: Correspondence) -> Result<Self> {
        let graded_ranks = graded_image_ranks(&q)?;
        let twist_profile = graded_ranks
            .iter()
            .enumerate()
            .filter(|(_, &r)| r > 0)
            .map(|(c, _)| c as u32)
            .collect();
        Ok(MotiveSummand {
            name: name.into(),
            idempotent_text: q.to_string(),
            idempotent: q,
            graded_ranks,
            twist_profile,
        })
    }
}

/// Ranks over the field with three elements of the realization of an
/// idempotent on each codimension.
pub fn graded_image_ranks(q: &Correspondence) -> Result<Vec<usize>> {
    q.modulus().require_three()?;
    if q.source().key() != q.target().key() {
        return Err(Error::SpaceMismatch("rank profile needs an endomorphism".into()));
    }
    if compose(q, q)? != *q {
        return Err(Error::NotIdempotent);
    }
    let space = q.source();
    let rank = space.rank();
    Ok((0..=space.dim())
        .map(|c| {
            let rows: Vec<Vec<i64>> = (0..rank)
                .filter(|&b| space.codim(b) == c)
                .map(|b| {
                    let image = q.realize(&SparseVec::from([(b, 1)]));
                    (0..rank).map(|i| image.get(&i).copied().unwrap_or(0)).collect()
                })
                .collect();
            rank_mod3(&rows)
        })
        .collect())
}

/// The five idempotents in order `q_1, ..., q_5`.
fn idempotents(g: &Generators) -> Result<Vec<(String, Correspondence)>> {
    let rho = &g.rho;
    let pairs: [(&str, &Correspondence, &Correspondence); 5] = [
        ("q1 = (-rho_0)^t o rho_4", &rho[0], &rho[4]),
        ("q2 = (-rho_1)^t o rho_3", &rho[1], &rho[3]),
        ("q3 = (-rho_2)^t o rho_2", &rho[2], &rho[2]),
        ("q4 = (-rho_3)^t o rho'_1", &rho[3], &g.rho1_prime),
        ("q5 = (-rho_4)^t o rho_0", &rho[4], &rho[0]),
    ];
    pairs
        .into_iter()
        .map(|(name, left, right)| Ok((name.to_string(), compose(&(-left).transpose(), right)?)))
        .collect()
}

/// `Delta_D - sum q_i`.
pub fn residual_projector(ctx: &MotiveContext) -> Result<Correspondence> {
    let g = build_generators(ctx)?;
    let mut p = diagonal(&ctx.d)?;
    for (_, q) in idempotents(&g)? {
        p = &p - &q;
    }
    Ok(p)
}

#[derive(Debug, Clone)]
pub struct MotiveReport {
    pub report: Report,
    pub generators: Generators,
    pub summands: Vec<MotiveSummand>,
    pub residual: Correspondence,
    pub residual_summand: Option<MotiveSummand>,
}

const EXPECTED_PROFILES: [[u32; 3]; 5] = [[1, 2, 3], [2, 3, 4], [3, 4, 5], [4, 5, 6], [5, 6, 7]];

/// Runs the decomposition checks in order; every check is recorded and
/// the first failing record names the first broken equation.
pub fn verify_ms_decomposition(model: DModel) -> Result<MotiveReport> {
    model.modulus().require_three()?;
    let ctx = MotiveContext::new(model);
    let mut report = Report::default();
    let delta_inv = Modulus::Three
        .inverse(model.delta())
        .ok_or(Error::InvalidDelta(model.delta()))?;

    let diag_d = diagonal(&ctx.d)?;
    let diag_p2 = diagonal(&ctx.p2)?;
    report.push(Record::compare(
        "diagonal-d-idempotent",
        "Delta_D o Delta_D = Delta_D",
        &compose(&diag_d, &diag_d)?,
        &diag_d,
    ));
    let broken: Vec<String> = (0..ctx.d.rank())
        .filter(|&b| diag_d.realize(&SparseVec::from([(b, 1)])) != SparseVec::from([(b, 1)]))
        .map(|b| ctx.d.label(b))
        .collect();
    report.push(Record::check(
        "diagonal-d-realizes-identity",
        "(Delta_D)_* is the identity on every basis class",
        broken.is_empty(),
        if broken.is_empty() {
            "identity".to_string()
        } else {
            format!("moves {}", broken.join(", "))
        },
        "identity",
    ));

    let g = build_generators(&ctx)?;
    report.push(Record::compare(
        "r-from-euler-class",
        "r = -(i x id)^* e(S (x) O(-1)) = h3^(1) x 1 + h2^(1) x H + h1 x H^2",
        &r_from_euler(&ctx)?,
        &g.r,
    ));

    for i in 0..=4 {
        let lhs = compose(&-&g.rho[4 - i], &g.rho[i].transpose())?;
        report.push(Record::compare(
            format!("diagonal-identity-{i}"),
            format!("(-rho_{}) o rho_{i}^t = Delta_P2", 4 - i),
            &lhs,
            &diag_p2,
        ));
    }
    report.push(Record::compare(
        "diagonal-identity-prime",
        "(-rho'_1) o rho_3^t = Delta_P2",
        &compose(&-&g.rho1_prime, &g.rho[3].transpose())?,
        &diag_p2,
    ));

    let qs = idempotents(&g)?;
    for (i, (name, q)) in qs.iter().enumerate() {
        report.push(Record::compare(
            format!("idempotent-q{}", i + 1),
            format!("{name} satisfies q o q = q"),
            &compose(q, q)?,
            q,
        ));
    }
    let mut nonzero = Vec::new();
    for (i, (_, a)) in qs.iter().enumerate() {
        for (j, (_, b)) in qs.iter().enumerate() {
            if i != j && !compose(a, b)?.is_empty() {
                nonzero.push(format!("q{} o q{}", i + 1, j + 1));
            }
        }
    }
    report.push(Record::check(
        "orthogonality",
        "q_i o q_j = 0 for all 20 ordered pairs i != j",
        nonzero.is_empty(),
        if nonzero.is_empty() {
            "all 20 zero".to_string()
        } else {
            format!("nonzero: {}", nonzero.join(", "))
        },
        "all 20 zero",
    ));

    let mut residual = diag_d.clone();
    for (_, q) in &qs {
        residual = &residual - q;
    }
    report.push(Record::compare(
        "residual-idempotent",
        "p = Delta_D - sum q_i satisfies p o p = p",
        &compose(&residual, &residual)?,
        &residual,
    ));
    let mut tangled = Vec::new();
    for (i, (_, q)) in qs.iter().enumerate() {
        if !compose(&residual, q)?.is_empty() {
            tangled.push(format!("p o q{}", i + 1));
        }
        if !compose(q, &residual)?.is_empty() {
            tangled.push(format!("q{} o p", i + 1));
        }
    }
    report.push(Record::check(
        "residual-orthogonal",
        "p o q_i = q_i o p = 0",
        tangled.is_empty(),
        if tangled.is_empty() {
            "all 10 zero".to_string()
        } else {
            format!("nonzero: {}", tangled.join(", "))
        },
        "all 10 zero",
    ));
    let expected = &(&ctx.times_d(&model.one(), &model.pt())
        + &ctx.times_d(&model.d(), &model.d()).scale(delta_inv))
        + &ctx.times_d(&model.pt(), &model.one());
    report.push(Record::compare(
        "residual-formula",
        "p = 1 x pt + delta^-1 (d x d) + pt x 1",
        &residual,
        &expected,
    ));

    let mut summands = Vec::new();
    for (name, q) in &qs {
        match MotiveSummand::new(name.clone(), q.clone()) {
            Ok(s) => summands.push(s),
            Err(e) => report.push(Record::error(
                format!("ranks-{}", &name[..2]),
                "rank profile of an idempotent",
                &e,
            )),
        }
    }
    let residual_summand = MotiveSummand::new("p", residual.clone()).ok();
    let residual_ranks = residual_summand
        .as_ref()
        .map(|s| s.graded_ranks.clone())
        .unwrap_or_default();
    report.push(Record::check(
        "residual-ranks",
        "p has image ranks (1,0,0,0,1,0,0,0,1): Z + Z(4) + Z(8)",
        residual_ranks == [1, 0, 0, 0, 1, 0, 0, 0, 1],
        Tuple(&residual_ranks),
        Tuple(&[1, 0, 0, 0, 1, 0, 0, 0, 1]),
    ));

    let mut profiles: Vec<Vec<u32>> = summands
        .iter()
        .filter(|s| {
            s.graded_ranks.iter().all(|&r| r <= 1) && s.twist_profile.windows(2).all(|w| w[1] == w[0] + 1)
        })
        .map(|s| s.twist_profile.clone())
        .collect();
    profiles.sort();
    let expected_profiles: Vec<Vec<u32>> = EXPECTED_PROFILES.iter().map(|p| p.to_vec()).collect();
    let show = |ps: &[Vec<u32>]| {
        ps.iter()
            .map(|p| Tuple(p).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    report.push(Record::check(
        "q-profiles",
        "each q_i has rank 1 in three consecutive codimensions, covering (1,2,3)..(5,6,7)",
        profiles == expected_profiles,
        show(&profiles),
        show(&expected_profiles),
    ));

    let mut total = vec![0u64; DIM as usize + 1];
    for s in summands.iter().chain(residual_summand.iter()) {
        for (c, &r) in s.graded_ranks.iter().enumerate() {
            total[c] += r as u64;
        }
    }
    let g_t = DModel::poincare_polynomial();
    report.push(Record::check(
        "profile-sum",
        "sum of all rank profiles = g(t)",
        total == g_t,
        Tuple(&total),
        Tuple(&g_t),
    ));

    Ok(MotiveReport {
        report,
        generators: g,
        summands,
        residual,
        residual_summand,
    })
}
