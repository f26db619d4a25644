//! Colour factors of ladder diagrams: powers of a sector Casimir, closed by
//! a full trace (vacuum diagram) or by a trace over the second leg.

use serde::Serialize;

use crate::casimir::SectorLabel;
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, TensorShape};
use crate::scalar::{ExactScalar, Rational};
use crate::spectra::{sector_projector_trace, FamilyKind, ProjectorFamily};

/// Default cap on the rung count, bounding bignum growth.
pub const DEFAULT_MAX_RUNGS: u32 = 16;

/// Bookkeeping of the gauge-coupling normalisation when the generator
/// normalisation is rescaled: the overall power is `k = n_{3,4} − n_pr`,
/// the number of three- and four-gluon vertices minus the number of
/// gluon propagators. Recorded only; vertex diagrams are not evaluated.
pub const COUPLING_POWER_NOTE: &str = "k = n_{3,4} - n_pr";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Closure {
    Open,
    FullTrace,
    PartialTrace,
}

impl std::str::FromStr for Closure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "open" => Ok(Closure::Open),
            "full" | "full_trace" => Ok(Closure::FullTrace),
            "partial" | "partial_trace" => Ok(Closure::PartialTrace),
            other => Err(Error::InvalidArgument(format!("unknown closure {other}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LadderSpec {
    pub r: usize,
    #[serde(rename = "L")]
    pub rungs: u32,
    pub sector: SectorLabel,
    pub closure: Closure,
}

impl LadderSpec {
    pub fn validate(&self, max_rungs: u32) -> Result<()> {
        if self.rungs > max_rungs {
            return Err(Error::InvalidArgument(format!(
                "L = {} exceeds the configured bound {max_rungs}",
                self.rungs
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LadderTerm {
    pub k: usize,
    #[serde(with = "crate::scalar::rational_string")]
    pub eigenvalue_power: Rational,
    /// Projector trace (full closure) or trace per remaining dimension (partial closure).
    #[serde(with = "crate::scalar::rational_string")]
    pub weight: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColourReport {
    pub spec: LadderSpec,
    pub per_k: Vec<LadderTerm>,
    /// Full trace, or the coefficient of the identity for the partial closure.
    pub total: ExactScalar,
    pub is_identity_multiple: bool,
    /// Spectral result equals the direct matrix computation entrywise.
    pub cross_check: bool,
    pub coupling_power_note: &'static str,
}

fn sector_of(family: &ProjectorFamily, spec: &LadderSpec) -> Result<SectorLabel> {
    match family.kind {
        FamilyKind::Sector(l) if l == spec.sector && family.r == spec.r => Ok(l),
        _ => Err(Error::InvalidArgument(
            "projector family does not match the ladder spec".into(),
        )),
    }
}

/// Σ_k c_{(2),k}^L P_k on the sector support.
pub fn ladder_operator(family: &ProjectorFamily, rungs: u32) -> ExactMatrix {
    let mut acc = ExactMatrix::zeros(family.dim());
    for (_, c, p) in &family.projectors {
        acc = &acc + &p.scale_rational(&num_traits::pow::pow(c.clone(), rungs as usize));
    }
    acc
}

/// Direct L-fold power of the sector Casimir by binary exponentiation.
pub fn ladder_direct(family: &ProjectorFamily, rungs: u32) -> ExactMatrix {
    family.operator.pow(rungs)
}

fn terms(family: &ProjectorFamily, rungs: u32, divisor: &Rational) -> Vec<LadderTerm> {
    family
        .projectors
        .iter()
        .map(|(k, c, _)| LadderTerm {
            k: *k,
            eigenvalue_power: num_traits::pow::pow(c.clone(), rungs as usize),
            weight: Rational::from_integer(sector_projector_trace(family.r, *k)) / divisor,
        })
        .collect()
}

fn spectral_total(per_k: &[LadderTerm]) -> Rational {
    per_k.iter().map(|t| &t.eigenvalue_power * &t.weight).sum()
}

/// tr Ĉ_{εε′}^L = Σ_k c_{(2),k}^L tr P_k.
pub fn ladder_full_trace(family: &ProjectorFamily, spec: &LadderSpec) -> Result<ColourReport> {
    sector_of(family, spec)?;
    spec.validate(DEFAULT_MAX_RUNGS)?;
    let per_k = terms(family, spec.rungs, &Rational::from_integer(1.into()));
    let total = ExactScalar::real(spectral_total(&per_k));
    let direct = ladder_direct(family, spec.rungs);
    let cross_check = direct.trace() == total && direct == ladder_operator(family, spec.rungs);
    Ok(ColourReport {
        spec: *spec,
        per_k,
        total,
        is_identity_multiple: false,
        cross_check,
        coupling_power_note: COUPLING_POWER_NOTE,
    })
}

/// tr₂ Ĉ_{εε′}^L = a · 1 on Δ_ε with a = Σ_k c_{(2),k}^L tr P_k / 2^{r−1}.
pub fn ladder_partial_trace(family: &ProjectorFamily, spec: &LadderSpec) -> Result<ColourReport> {
    sector_of(family, spec)?;
    spec.validate(DEFAULT_MAX_RUNGS)?;
    let half = 1usize << (spec.r - 1);
    let per_k = terms(family, spec.rungs, &Rational::from_integer(half.into()));
    let coeff = ExactScalar::real(spectral_total(&per_k));
    let direct = ladder_direct(family, spec.rungs);
    // The sector support is ordered a-major, so it is Δ_ε ⊗ Δ_ε′ with this shape.
    let shape = TensorShape::uniform(half, 2);
    let reduced = direct.partial_trace(&shape, 1)?;
    let Some(a) = reduced.identity_multiple() else {
        return Err(Error::Invariance(format!(
            "partial trace of the L = {} ladder is not a multiple of the identity",
            spec.rungs
        )));
    };
    let cross_check = a == coeff && direct == ladder_operator(family, spec.rungs);
    Ok(ColourReport {
        spec: *spec,
        per_k,
        total: coeff,
        is_identity_multiple: true,
        cross_check,
        coupling_power_note: COUPLING_POWER_NOTE,
    })
}

/// Open ladder: the operator itself; total is its trace.
pub fn ladder_open(
    family: &ProjectorFamily,
    spec: &LadderSpec,
) -> Result<(ExactMatrix, ColourReport)> {
    let mut report = ladder_full_trace(family, spec)?;
    report.spec.closure = Closure::Open;
    Ok((ladder_operator(family, spec.rungs), report))
}

pub fn colour_factor(family: &ProjectorFamily, spec: &LadderSpec) -> Result<ColourReport> {
    match spec.closure {
        Closure::Open => ladder_open(family, spec).map(|(_, r)| r),
        Closure::FullTrace => ladder_full_trace(family, spec),
        Closure::PartialTrace => ladder_partial_trace(family, spec),
    }
}
