//! Mod-3 reduced powers on the subalgebra of CH(D)/3 generated by `h1`,
//! `d` and `pt`, on `P^2`, and on external products of such classes.
//!
//! The operations are fixed by `S^0 = id`, the Cartan formula and the
//! generator rules `S(h1) = h1 + h1^3`, `S(d) = d`, `S(pt) = pt`. Classes
//! outside the generated subalgebra are rejected.

use std::sync::Arc;

use serde::Serialize;

use crate::coeff::{solve_mod3, Modulus};
use crate::corr::{diagonal, residual_projector, Correspondence, MotiveContext};
use crate::dvariety::{DClass, DLabel, DModel, DIM};
use crate::error::{Error, Result};
use crate::report::{Record, Report, Status};
use crate::schubert::{skew_path_count, Partition};
use crate::space::{normalize, CellularSpace, SparseVec};

/// A spanning monomial of the admissible subalgebra together with its
/// reduced powers `S^0, S^1, ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleMonomial {
    pub class: SparseVec,
    pub powers: Vec<SparseVec>,
}

impl AdmissibleMonomial {
    /// A class with `S = S^0`.
    pub fn fixed(class: SparseVec) -> Self {
        AdmissibleMonomial {
            powers: vec![class.clone()],
            class,
        }
    }
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * i64::from(n - i) / i64::from(i + 1))
}

/// `1, h1, ..., h1^5, d, pt`; higher powers of `h1` vanish mod 3.
pub fn d_admissible_monomials(model: DModel) -> Result<Vec<AdmissibleMonomial>> {
    model.modulus().require_three()?;
    let vec = |x: &DClass| -> SparseVec { x.indexed().into_iter().collect() };
    let h1 = model.h1();
    let mut out = Vec::new();
    for a in 0..=5u32 {
        let powers = (0..=a)
            .map(|i| vec(&h1.pow(a + 2 * i).scale(binomial(a, i))))
            .collect();
        out.push(AdmissibleMonomial {
            class: vec(&h1.pow(a)),
            powers,
        });
    }
    out.push(AdmissibleMonomial::fixed(vec(&model.d())));
    out.push(AdmissibleMonomial::fixed(vec(&model.pt())));
    Ok(out)
}

fn dense(space: &dyn CellularSpace, v: &SparseVec) -> Vec<i64> {
    (0..space.rank())
        .map(|i| v.get(&i).copied().unwrap_or(0))
        .collect()
}

/// Coordinates of `v` in the admissible monomials of `space`.
fn decompose(
    space: &dyn CellularSpace,
    monomials: &[AdmissibleMonomial],
    v: &SparseVec,
) -> Result<Vec<i64>> {
    let columns: Vec<Vec<i64>> = monomials.iter().map(|m| dense(space, &m.class)).collect();
    solve_mod3(&columns, &dense(space, v)).ok_or_else(|| {
        let shown: Vec<String> = v
            .iter()
            .map(|(&i, &c)| format!("{c}*{}", space.label(i)))
            .collect();
        Error::Unsupported(format!(
            "{} is outside the subalgebra reduced powers are defined on",
            shown.join(" + ")
        ))
    })
}

/// Components `S^0(v), S^1(v), ...` of a class on any space that exposes
/// admissible monomials.
pub fn steenrod_vec(space: &dyn CellularSpace, v: &SparseVec) -> Result<Vec<SparseVec>> {
    space.modulus().require_three()?;
    let monomials = space.admissible_monomials()?;
    let coords = decompose(space, &monomials, v)?;
    let mut out = vec![SparseVec::new(); space.dim() as usize / 2 + 1];
    for (m, c) in monomials.iter().zip(coords) {
        if c == 0 {
            continue;
        }
        for (i, p) in m.powers.iter().enumerate() {
            for (&b, &x) in p {
                *out[i].entry(b).or_insert(0) += c * x;
            }
        }
    }
    Ok(out.into_iter().map(|v| normalize(Modulus::Three, v)).collect())
}

/// Graded reduced powers of a class on D: component `i` raises
/// codimension by `2i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteenrodResult {
    pub components: Vec<DClass>,
}

impl SteenrodResult {
    pub fn component(&self, i: usize) -> Option<&DClass> {
        self.components.get(i)
    }

    pub fn total(&self) -> DClass {
        let mut it = self.components.iter();
        let first = it.next().expect("component 0 always exists").clone();
        it.fold(first, |acc, c| &acc + c)
    }
}

pub fn steenrod_total(x: &DClass) -> Result<SteenrodResult> {
    let model = x.model();
    model.modulus().require_three()?;
    let space = crate::space::DSpace::new(model);
    let components = steenrod_vec(&space, &x.indexed().into_iter().collect())?
        .iter()
        .map(|v| model.from_indexed(v.iter().map(|(&i, &c)| (i, c))))
        .collect();
    Ok(SteenrodResult { components })
}

/// Components of `S` on a correspondence, from the Kunneth rule
/// `S(a x b) = S(a) x S(b)`.
pub fn steenrod_correspondence(alpha: &Correspondence) -> Result<Vec<Correspondence>> {
    alpha.modulus().require_three()?;
    let src = alpha.source();
    let tgt = alpha.target();
    let src_monomials = src.admissible_monomials()?;
    let tgt_monomials = tgt.admissible_monomials()?;

    // alpha = sum_v (column v) x b_v, then split each column over source monomials
    let mut by_source: Vec<SparseVec> = vec![SparseVec::new(); src_monomials.len()];
    for v in 0..tgt.rank() {
        let column: SparseVec = alpha
            .terms()
            .filter(|&((_, w), _)| w == v)
            .map(|((u, _), c)| (u, c))
            .collect();
        if column.is_empty() {
            continue;
        }
        for (m, c) in decompose(src.as_ref(), &src_monomials, &column)?
            .into_iter()
            .enumerate()
        {
            if c != 0 {
                *by_source[m].entry(v).or_insert(0) += c;
            }
        }
    }

    let n = (src.dim() + tgt.dim()) as usize / 2 + 1;
    let mut out = vec![Correspondence::zero(Arc::clone(src), Arc::clone(tgt)); n];
    for (m, row) in by_source.iter().enumerate() {
        let row = normalize(Modulus::Three, row.clone());
        if row.is_empty() {
            continue;
        }
        let a = &src_monomials[m];
        for (k, e) in decompose(tgt.as_ref(), &tgt_monomials, &row)?
            .into_iter()
            .enumerate()
        {
            if e == 0 {
                continue;
            }
            let b = &tgt_monomials[k];
            for (i, sa) in a.powers.iter().enumerate() {
                for (j, sb) in b.powers.iter().enumerate() {
                    if i + j < n {
                        let term = Correspondence::external(src, sa, tgt, sb).scale(e);
                        out[i + j] = &out[i + j] + &term;
                    }
                }
            }
        }
    }
    Ok(out)
}

fn dmodel_check(model: DModel) -> Result<MotiveContext> {
    model.modulus().require_three()?;
    Ok(MotiveContext::new(model))
}

/// Evaluates `X = (c(T_D) x c(T_D)) (c(-T_D) x 1) Delta_D` and checks that
/// the only terms involving `d` are `delta^-1 (d x d)`, the computation
/// behind `S(d) = d`.
pub fn verify_d_invariance(model: DModel) -> Result<Report> {
    let ctx = dmodel_check(model)?;
    let mut report = Report::default();
    let c = model.chern_tangent()?;
    let c_neg = model.chern_negative_tangent()?;
    let one = model.one();
    let delta_inv = Modulus::Three
        .inverse(model.delta())
        .ok_or(Error::InvalidDelta(model.delta()))?;

    report.push(Record::compare(
        "d-invariance-multiplier",
        "c(T_D) c(-T_D) = 1",
        &(&c * &c_neg),
        &one,
    ));

    let diag = diagonal(&ctx.d)?;
    let x = ctx
        .times_d(&c, &c)
        .kunneth_mul(&ctx.times_d(&c_neg, &one))?
        .kunneth_mul(&diag)?;
    let v = DLabel::V.index();
    let expected = ctx.times_d(&model.d(), &model.d()).scale(delta_inv);
    let part = |pick: &dyn Fn(usize, usize) -> bool| {
        Correspondence::from_terms(
            &ctx.d,
            &ctx.d,
            x.terms().filter(|&((a, b), _)| pick(a, b)),
        )
    };
    let left = part(&|a, _| a == v);
    let right = part(&|_, b| b == v);
    report.push(Record::compare(
        "d-invariance-left",
        "the d (x) CH(D) part of X is delta^-1 (d x d)",
        &left,
        &expected,
    ));
    report.push(Record::compare(
        "d-invariance-right",
        "the CH(D) (x) d part of X is delta^-1 (d x d)",
        &right,
        &expected,
    ));
    let raised: Vec<String> = x
        .terms()
        .filter(|&((a, b), _)| {
            (a == v || b == v) && ctx.d.codim(a) + ctx.d.codim(b) != DIM
        })
        .map(|((a, b), _)| format!("{} x {}", ctx.d.label(a), ctx.d.label(b)))
        .collect();
    report.push(Record::check(
        "d-invariance-raised",
        "no d-terms of X outside total codimension 8",
        raised.is_empty(),
        if raised.is_empty() {
            "none".to_string()
        } else {
            raised.join(", ")
        },
        "none",
    ));
    let ok = report.passed();
    report.push(Record::check(
        "d-invariance",
        "S(delta_*(1)) has d-component delta^-1 (d x d), supporting S(d) = d",
        ok,
        Status::from(ok),
        Status::Pass,
    ));
    Ok(report)
}

impl From<bool> for Status {
    fn from(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// Coefficients of `c(-T_D)` as a polynomial in `h1`, lifted to integers.
pub const C_NEG_TANGENT_LIFT: [i64; 6] = [1, 1, 1, -1, -1, -1];

/// The split-level checks of the reduced-power identity
/// `S(p_*(h1^6)) = S(p)_*(h1^6 (1+h1^2)^6 c(-T_D))`.
pub fn verify_km_identity(model: DModel) -> Result<Report> {
    let ctx = dmodel_check(model)?;
    let mut report = Report::default();
    let p = residual_projector(&ctx)?;
    let m = Modulus::Three;
    let h1 = model.h1();
    let vec = |x: &DClass| -> SparseVec { x.indexed().into_iter().collect() };

    let lhs_inner = p.realize(&vec(&h1.pow(6)));
    report.push(Record::check(
        "km-split-realization",
        "(p_s)_*(h1^6) = 0",
        lhs_inner.is_empty(),
        show(&ctx, &lhs_inner),
        "0",
    ));
    report.push(match steenrod_vec(ctx.d.as_ref(), &lhs_inner) {
        Ok(lhs) => {
            let lhs_total = sum_components(&lhs);
            Record::check(
                "km-lhs",
                "S(p_s*(h1^6)) = 0",
                lhs_total.is_empty(),
                show(&ctx, &lhs_total),
                "0",
            )
        }
        Err(e) => Record::error("km-lhs", "S(p_s*(h1^6)) = 0", &e),
    });

    let s_h16 = steenrod_total(&h1.pow(6))?.total();
    let poly = &h1.pow(6) * &(&model.one() + &h1.pow(2)).pow(6);
    report.push(Record::compare(
        "km-s-h1-6",
        "S(h1^6) = h1^6 (1+h1^2)^6",
        &s_h16,
        &poly,
    ));
    let y = &poly * &model.chern_negative_tangent()?;
    let rhs = p.realize(&vec(&y));
    report.push(Record::check(
        "km-rhs",
        "S(p_s)_*(h1^6 (1+h1^2)^6 c(-T_D)) = 0",
        rhs.is_empty(),
        show(&ctx, &rhs),
        "0",
    ));

    // the same product over Z, with c(-T_D) lifted coefficientwise
    let zmodel = model.with_modulus(Modulus::Integral);
    let zh1 = zmodel.h1();
    let zy = &(&zh1.pow(6) * &(&zmodel.one() + &zh1.pow(2)).pow(6))
        * &zmodel.h1_polynomial(&C_NEG_TANGENT_LIFT);
    let top = zy.homogeneous(DIM);
    let top_multiple = top.degree() / zh1.pow(8).degree();
    report.push(Record::check(
        "km-rhs-top-degree",
        "the codimension-8 part of h1^6 (1+h1^2)^6 c(-T_D) is an integer multiple of h1^8, of degree divisible by 3",
        top == zh1.pow(8).scale(top_multiple) && m.reduce(top.degree()) == 0,
        format!("{top_multiple}*h1^8, degree {}", top.degree()),
        "k*h1^8 with 3 | 42k",
    ));

    let anchor = "S^i(p_s) = 0 for i >= 1 (so S(p_s) = p_s)";
    report.push(match steenrod_correspondence(&p) {
        Ok(s_p) => Record::check(
            "km-s1-projector",
            anchor,
            s_p.iter().skip(1).all(Correspondence::is_empty) && s_p[0] == p,
            s_p.get(1).map_or("0".to_string(), ToString::to_string),
            "0",
        ),
        Err(e) => Record::error("km-s1-projector", anchor, &e),
    });

    for (name, lambda) in [("h2^(1)", "[1,1]"), ("h2^(2)", "[2]")] {
        let lambda: Partition = lambda.parse().expect("literal partition");
        let value = (&zh1.pow(6) * &zmodel.label(DLabel::U(lambda.clone()))).degree();
        let paths = skew_path_count(&lambda, 3, 6)?;
        report.push(Record::check(
            format!("km-divisible-{}", lambda),
            format!("deg(h1^6 * {name}) = 21, divisible by 3 (codimension-2 reading)"),
            value == 21 && i128::from(value) == paths as i128 && value % 3 == 0,
            value,
            21,
        ));
    }
    Ok(report)
}

fn sum_components(cs: &[SparseVec]) -> SparseVec {
    let mut out = SparseVec::new();
    for c in cs {
        for (&i, &x) in c {
            *out.entry(i).or_insert(0) += x;
        }
    }
    normalize(Modulus::Three, out)
}

fn show(ctx: &MotiveContext, v: &SparseVec) -> String {
    ctx.class(v).to_string()
}

pub const TORSION_ESTABLISHED: &str = "CONDITIONAL-TORSION-ESTABLISHED";
pub const TORSION_NOT_ESTABLISHED: &str = "NOT-ESTABLISHED";

pub const TORSION_CONCLUSION: &str = "IF D is anisotropic and every closed point of D has degree \
divisible by 3, THEN p*(h1^6) is nonzero 3-torsion in CH_2(D)";

/// Hypotheses of the conclusion that this crate does not check.
pub const UNVERIFIED_HYPOTHESES: [&str; 2] = [
    "D is anisotropic",
    "every closed point of D has degree divisible by 3",
];

#[derive(Debug, Clone, Serialize)]
pub struct DegreeFacts {
    pub deg_h1_8: i64,
    pub factor: i64,
    pub residue: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TorsionCertificate {
    pub status: String,
    pub degree: DegreeFacts,
    pub split_realization: String,
    pub records: Vec<Record>,
    pub conclusion: Option<String>,
    pub unverified_hypotheses: Vec<String>,
    pub notes: Vec<String>,
}

/// Assembles the certificate from the premise reports; the conclusion is
/// emitted only if every premise and every record here passed.
pub fn torsion_certificate(model: DModel, premises: &Report) -> Result<TorsionCertificate> {
    let ctx = dmodel_check(model)?;
    let mut report = Report::default();
    let zmodel = model.with_modulus(Modulus::Integral);
    let deg = zmodel.h1().pow(8).degree();
    let factor = deg / 3;
    let residue = Modulus::Three.reduce(factor);
    report.push(Record::check(
        "torsion-degree",
        "deg h1^8 = 42 = 3 * 14 with 14 = 2 mod 3",
        deg == 42 && deg == 3 * factor && residue == 2,
        format!("{deg} = 3 * {factor}, {factor} = {residue} mod 3"),
        "42 = 3 * 14, 14 = 2 mod 3",
    ));
    let p = residual_projector(&ctx)?;
    let realized = p.realize(&model.h1().pow(6).indexed().into_iter().collect());
    let split_realization = show(&ctx, &realized);
    report.push(Record::check(
        "torsion-split-realization",
        "(p_s)_*(h1^6) = 0",
        realized.is_empty(),
        &split_realization,
        "0",
    ));
    let chain = premises
        .records
        .iter()
        .filter(|r| r.id.starts_with("km-") || r.id.starts_with("d-invariance"));
    let chain_ok = chain.clone().count() > 0 && chain.clone().all(Record::passed);
    report.push(Record::check(
        "torsion-s1-chain",
        "the reduced-power identity chain holds at the split level",
        chain_ok,
        Status::from(chain_ok),
        Status::Pass,
    ));
    let all_ok = premises.passed() && report.passed();
    Ok(TorsionCertificate {
        status: if all_ok {
            TORSION_ESTABLISHED
        } else {
            TORSION_NOT_ESTABLISHED
        }
        .to_string(),
        degree: DegreeFacts {
            deg_h1_8: deg,
            factor,
            residue,
        },
        split_realization,
        records: report.records,
        conclusion: all_ok.then(|| TORSION_CONCLUSION.to_string()),
        unverified_hypotheses: UNVERIFIED_HYPOTHESES.iter().map(|s| s.to_string()).collect(),
        notes: vec![
            "divisibility of h1^6 * alpha is checked for alpha of codimension 2, the reading under which the product is 0-dimensional".to_string(),
        ],
    })
}
