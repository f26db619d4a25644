//! Spinor R-matrices: the chiral-sector solutions R^{εε}(u) in plain and
//! braid form, the invariant-expansion solution R̂(u) = Σ_k R̂_k(u) I_k / k!,
//! and exact checks of the Yang–Baxter equation by grid sampling.
//!
//! Spectral parameters are exact rationals. Identities between rational
//! functions of one variable are checked symbolically; identities on the
//! triple tensor product are checked on a grid that is larger than the
//! degree bound of the cleared polynomial entries in each variable.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::casimir::{SectorLabel, Sign, SplitCasimir};
use crate::check::{CheckRecord, Status};
use crate::clifford::{antisym_gamma, increasing_indices, GammaRep, MultiIndex};
use crate::error::{Error, Result};
use crate::linalg::{permutation_operator, ExactMatrix, TensorShape};
use crate::oracles::{c2_closed_form, RepKind};
use crate::scalar::{binomial, format_rational, rat, rat_int, ExactScalar, Rational};
use crate::spectra::{build_sector_projectors, c2k_eigenvalue, ProjectorFamily};

/// Polynomial in u over Q, constant term first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// a·u + b.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Poly::new(vec![b, a])
    }

    /// The variable u.
    pub fn var() -> Self {
        Poly::linear(rat_int(1), rat_int(0))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c * q).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = Rational::zero();
        Poly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat_int(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let q = rem.last().unwrap() / &lead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &q * c;
            }
            quot[shift] = q;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// p(a·u + b).
    pub fn compose_linear(&self, a: &Rational, b: &Rational) -> Self {
        let inner = Poly::linear(a.clone(), b.clone());
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            acc.mul(&inner).add(&Poly::constant(c.clone()))
        })
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = d == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    f.write_str(&format_rational(&mag))?;
                }
            }
            match d {
                0 => {}
                1 if show_coeff => f.write_str("*u")?,
                1 => f.write_str("u")?,
                _ if show_coeff => write!(f, "*u^{d}")?,
                _ => write!(f, "u^{d}")?,
            }
        }
        Ok(())
    }
}

/// num/den in lowest terms with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g)?;
        let (den, _) = den.div_rem(&g)?;
        let lead = den.leading().recip();
        Ok(RationalFunction {
            num: num.scale(&lead),
            den: den.scale(&lead),
        })
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::constant(rat_int(1)),
        }
    }

    pub fn one() -> Self {
        Self::constant(rat_int(1))
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction {
            num: Poly::constant(c),
            den: Poly::constant(rat_int(1)),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction {
            num: p,
            den: Poly::constant(rat_int(1)),
        }
    }

    /// (u + a)/(u + b).
    pub fn mobius(a: Rational, b: Rational) -> Self {
        Self::new(Poly::linear(rat_int(1), a), Poly::linear(rat_int(1), b))
            .expect("nonzero denominator")
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("product of nonzero denominators")
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
        .expect("product of nonzero denominators")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat_int(-1)))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(self.num.scale(q), self.den.clone()).expect("denominator unchanged")
    }

    /// f(a·u + b), a ≠ 0.
    pub fn compose_linear(&self, a: &Rational, b: &Rational) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::InvalidArgument("degenerate substitution".into()));
        }
        Self::new(self.num.compose_linear(a, b), self.den.compose_linear(a, b))
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole(format!("{self} at u = {}", format_rational(x))));
        }
        Ok(self.num.eval(x) / d)
    }

    /// Zeros of the denominator among the given candidates.
    pub fn is_pole(&self, x: &Rational) -> bool {
        self.den.eval(x).is_zero()
    }

    /// Value at u → ∞ when finite.
    pub fn limit_at_infinity(&self) -> Option<Rational> {
        let dn = self.num.degree();
        let dd = self.den.degree().expect("nonzero denominator");
        match dn {
            None => Some(Rational::zero()),
            Some(n) if n < dd => Some(Rational::zero()),
            Some(n) if n == dd => Some(self.num.leading() / self.den.leading()),
            Some(_) => None,
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Serialize for RationalFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Product x(x+1)⋯(x+k−1).
pub fn rising_factorial(x: &Rational, k: usize) -> Rational {
    (0..k).map(|i| x + rat_int(i as i64)).product()
}

/// (p)_k for a polynomial argument.
pub fn rising_factorial_poly(p: &Poly, k: usize) -> Poly {
    (0..k).fold(Poly::constant(rat_int(1)), |acc, i| {
        acc.mul(&p.add(&Poly::constant(rat_int(i as i64))))
    })
}

/// First `n` values p/q with q ∤ p, p = 1, 2, ….
pub fn sample_points(n: usize, q: i64) -> Vec<Rational> {
    (1i64..)
        .filter(|p| p % q != 0)
        .take(n)
        .map(|p| rat(p, q))
        .collect()
}

/// The (u, v) grid: 2r+3 values p/3 for u and 2r+3 values p/7 for v.
/// Neither u, v nor u+v is ever an integer.
pub fn ybe_grid(r: usize) -> Vec<(Rational, Rational)> {
    let us = sample_points(2 * r + 3, 3);
    let vs = sample_points(2 * r + 3, 7);
    us.iter()
        .flat_map(|u| vs.iter().map(move |v| (u.clone(), v.clone())))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Form {
    Plain,
    Braid,
}

impl FromStr for Form {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Form::Plain),
            "braid" => Ok(Form::Braid),
            other => Err(Error::InvalidArgument(format!("unknown form {other}"))),
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::Plain => "plain",
            Form::Braid => "braid",
        })
    }
}

/// Π_{m=1}^{j} (u − (2m−1)) / (u + (2m−1)).
pub fn tau(j: usize) -> RationalFunction {
    (1..=j).fold(RationalFunction::one(), |acc, m| {
        let o = rat_int(2 * m as i64 - 1);
        acc.mul(&RationalFunction::mobius(-o.clone(), o))
    })
}

/// One term τ(u)·P_k of a sector R-matrix.
#[derive(Clone, Debug)]
pub struct RTerm {
    /// Index of the projector P_k.
    pub k: usize,
    pub coefficient: RationalFunction,
    pub projector: ExactMatrix,
}

/// R^{εε}(u) on Δ_ε ⊗ Δ_ε, stored compressed to the sector support.
#[derive(Clone, Debug)]
pub struct RMatrixFamily {
    pub r: usize,
    pub eps: Sign,
    pub form: Form,
    pub support: Vec<usize>,
    /// Terms with k = r, r−2, … in that order.
    pub terms: Vec<RTerm>,
}

/// The sector solution in the requested form.
pub fn sector_r_matrix(
    rep: &GammaRep,
    c: &SplitCasimir,
    eps: Sign,
    form: Form,
) -> Result<RMatrixFamily> {
    let family = build_sector_projectors(
        rep,
        c,
        SectorLabel {
            eps1: eps,
            eps2: eps,
        },
    )?;
    RMatrixFamily::from_projectors(&family, form)
}

impl RMatrixFamily {
    pub fn from_projectors(family: &ProjectorFamily, form: Form) -> Result<Self> {
        let label = match family.kind {
            crate::spectra::FamilyKind::Sector(l) if l.same_chirality() => l,
            _ => {
                return Err(Error::InvalidArgument(
                    "R-matrices need an εε sector family".into(),
                ))
            }
        };
        let r = family.r;
        let mut terms = Vec::new();
        for j in 0..=r / 2 {
            let k = r - 2 * j;
            let (_, _, p) = family
                .projectors
                .iter()
                .find(|(kk, _, _)| *kk == k)
                .ok_or_else(|| Error::InvalidArgument(format!("sector lacks P_{k}")))?;
            let mut coefficient = tau(j);
            if form == Form::Braid && j % 2 == 1 {
                coefficient = coefficient.scale(&rat_int(-1));
            }
            terms.push(RTerm {
                k,
                coefficient,
                projector: p.clone(),
            });
        }
        Ok(RMatrixFamily {
            r,
            eps: label.eps1,
            form,
            support: family.support.clone(),
            terms,
        })
    }

    pub fn label(&self) -> SectorLabel {
        SectorLabel {
            eps1: self.eps,
            eps2: self.eps,
        }
    }

    /// Dimension of Δ_ε.
    pub fn half(&self) -> usize {
        1 << (self.r - 1)
    }

    pub fn dim(&self) -> usize {
        self.half() * self.half()
    }

    pub fn coefficient(&self, k: usize) -> Option<&RationalFunction> {
        self.terms.iter().find(|t| t.k == k).map(|t| &t.coefficient)
    }

    /// Swap of the two Δ_ε factors; the support is ordered first-factor-major.
    pub fn permutation(&self) -> ExactMatrix {
        permutation_operator(self.half())
    }

    pub fn is_pole(&self, u: &Rational) -> bool {
        self.terms.iter().any(|t| t.coefficient.is_pole(u))
    }

    /// R(u) on the sector support.
    pub fn eval(&self, u: &Rational) -> Result<ExactMatrix> {
        let mut acc = ExactMatrix::zeros(self.dim());
        for t in &self.terms {
            acc = &acc + &t.projector.scale_rational(&t.coefficient.eval(u)?);
        }
        Ok(acc)
    }

    /// R(u) as an operator on the whole 4^r-dimensional ρ⊗ρ.
    pub fn eval_full(&self, u: &Rational) -> Result<ExactMatrix> {
        self.eval(u)?.embed(&self.support, 1 << (2 * self.r))
    }

    fn id(&self, what: &str) -> String {
        format!("ybe/r{}/{}/{}/{what}", self.r, self.label(), self.form)
    }

    /// P·P_{r−2j} = (−1)^j P_{r−2j}, the sign that links plain and braid forms.
    pub fn exchange_sign_checks(&self) -> Vec<CheckRecord> {
        let p = self.permutation();
        self.terms
            .iter()
            .enumerate()
            .map(|(j, t)| {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                CheckRecord::matrices_equal(
                    self.id(&format!("exchange-sign/k{}", t.k)),
                    "P·P_{r−2j} = (−1)^j P_{r−2j}",
                    &(&p * &t.projector),
                    &t.projector.scale(&ExactScalar::from_int(sign)),
                )
            })
            .collect()
    }
}

/// R̂(u) = P·R(u) on the sector, comparing the plain and braid families.
pub fn braid_relation_check(
    plain: &RMatrixFamily,
    braid: &RMatrixFamily,
    u: &Rational,
) -> Result<CheckRecord> {
    if plain.form != Form::Plain
        || braid.form != Form::Braid
        || plain.r != braid.r
        || plain.eps != braid.eps
    {
        return Err(Error::InvalidArgument(
            "need matching plain and braid families".into(),
        ));
    }
    let lhs = &plain.permutation() * &plain.eval(u)?;
    Ok(CheckRecord::matrices_equal(
        braid.id(&format!("equals-P-times-plain/u={}", format_rational(u))),
        "R̂(u) = P·R(u)",
        &lhs,
        &braid.eval(u)?,
    ))
}

/// Both sides of the YBE at one point, on the triple product of a d-dimensional space.
pub fn ybe_sides<F>(
    eval: F,
    d: usize,
    form: Form,
    u: &Rational,
    v: &Rational,
) -> Result<(ExactMatrix, ExactMatrix)>
where
    F: Fn(&Rational) -> Result<ExactMatrix>,
{
    let shape = TensorShape::uniform(d, 3);
    let w = u + v;
    let (ru, rw, rv) = (eval(u)?, eval(&w)?, eval(v)?);
    let on = |m: &ExactMatrix, legs: [usize; 2]| m.lift(&shape, &legs);
    Ok(match form {
        Form::Plain => {
            let (a12, a13, a23) = (on(&ru, [0, 1])?, on(&rw, [0, 2])?, on(&rv, [1, 2])?);
            (&(&a12 * &a13) * &a23, &(&a23 * &a13) * &a12)
        }
        Form::Braid => {
            let lhs = &(&on(&ru, [0, 1])? * &on(&rw, [1, 2])?) * &on(&rv, [0, 1])?;
            let rhs = &(&on(&rv, [1, 2])? * &on(&rw, [0, 1])?) * &on(&ru, [1, 2])?;
            (lhs, rhs)
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YbePoint {
    #[serde(with = "crate::scalar::rational_string")]
    pub u: Rational,
    #[serde(with = "crate::scalar::rational_string")]
    pub v: Rational,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Outcome of a YBE sweep; `failures` lists witnesses for failing points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YbeSweep {
    pub mode: String,
    pub form: Form,
    pub r: usize,
    pub certification: String,
    pub points: Vec<YbePoint>,
    pub skipped: Vec<String>,
    pub failures: Vec<String>,
}

impl YbeSweep {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && !self.points.is_empty()
    }

    pub fn to_check(&self) -> CheckRecord {
        let id = format!("ybe/r{}/{}/{}/sweep", self.r, self.mode, self.form);
        let anchor = match self.form {
            Form::Plain => "R12(u)R13(u+v)R23(v) = R23(v)R13(u+v)R12(u)",
            Form::Braid => "R̂12(u)R̂23(u+v)R̂12(v) = R̂23(v)R̂12(u+v)R̂23(u)",
        };
        if self.passed() {
            CheckRecord::pass(id, anchor)
        } else if self.points.is_empty() {
            CheckRecord::with_status(
                id,
                anchor,
                Status::Skipped,
                Some("no admissible points".into()),
            )
        } else {
            CheckRecord::fail(id, anchor, self.failures.join("; "))
        }
    }
}

/// Evaluate the YBE at every point; poles are skipped with a note.
pub fn ybe_sweep<F>(
    mode: &str,
    r: usize,
    d: usize,
    form: Form,
    eval: F,
    is_pole: impl Fn(&Rational) -> bool + Sync,
    points: &[(Rational, Rational)],
    certification: &str,
) -> YbeSweep
where
    F: Fn(&Rational) -> Result<ExactMatrix> + Sync,
{
    let outcomes: Vec<std::result::Result<Option<String>, String>> = points
        .par_iter()
        .map(|(u, v)| {
            let w = u + v;
            if is_pole(u) || is_pole(v) || is_pole(&w) {
                return Err(format!(
                    "pole at (u, v) = ({}, {})",
                    format_rational(u),
                    format_rational(v)
                ));
            }
            match ybe_sides(&eval, d, form, u, v) {
                Ok((lhs, rhs)) => Ok(lhs.first_difference(&rhs).map(|(i, j, a, b)| {
                    format!(
                        "(u, v) = ({}, {}): entry ({i}, {j}) {a} vs {b}",
                        format_rational(u),
                        format_rational(v)
                    )
                })),
                Err(e) => Err(e.to_string()),
            }
        })
        .collect();
    let mut out = YbeSweep {
        mode: mode.to_string(),
        form,
        r,
        certification: certification.to_string(),
        points: Vec::new(),
        skipped: Vec::new(),
        failures: Vec::new(),
    };
    for ((u, v), o) in points.iter().zip(outcomes) {
        match o {
            Ok(diff) => {
                out.points.push(YbePoint {
                    u: u.clone(),
                    v: v.clone(),
                    pass: diff.is_none(),
                    note: diff.clone(),
                });
                out.failures.extend(diff);
            }
            Err(note) => out.skipped.push(note),
        }
    }
    out
}

/// How far a set of sample points certifies the YBE as an identity: a
/// nonzero polynomial of degree ≤ d in each of u and v cannot vanish on a
/// grid with more than d values of each.
pub fn certification(points: &[(Rational, Rational)], degree: usize) -> String {
    let us: std::collections::BTreeSet<&Rational> = points.iter().map(|(u, _)| u).collect();
    let vs: std::collections::BTreeSet<&Rational> = points.iter().map(|(_, v)| v).collect();
    let is_grid = us.len() * vs.len() == points.len();
    if is_grid && us.len() > degree && vs.len() > degree {
        format!(
            "certified: {}x{} grid exceeds the degree bound {degree} per variable of the cleared entries",
            us.len(),
            vs.len()
        )
    } else {
        format!("sampled: {} point(s); certification needs a grid with more than {degree} values per variable", points.len())
    }
}

/// Sector YBE over a list of points.
pub fn sector_ybe_sweep(family: &RMatrixFamily, points: &[(Rational, Rational)]) -> YbeSweep {
    let r = family.r;
    let cert = certification(points, 2 * (r / 2));
    ybe_sweep(
        &format!("sector-{}", family.label()),
        r,
        family.half(),
        family.form,
        |u| family.eval(u),
        |u| family.is_pole(u),
        points,
        &cert,
    )
}

/// R₁₂(u)·R₂₁(−u) = 1 with R₂₁ = P R₁₂ P.
pub fn unitarity_check(family: &RMatrixFamily, u: &Rational) -> Result<CheckRecord> {
    let mu = -u.clone();
    if family.is_pole(u) || family.is_pole(&mu) {
        return Ok(CheckRecord::with_status(
            family.id(&format!("unitarity/u={}", format_rational(u))),
            "R12(u)R21(−u) = 1",
            Status::Skipped,
            Some(format!("pole at ±{}", format_rational(u))),
        ));
    }
    let p = family.permutation();
    let r21 = &(&p * &family.eval(&mu)?) * &p;
    let prod = &family.eval(u)? * &r21;
    Ok(CheckRecord::from_bool(
        family.id(&format!("unitarity/u={}", format_rational(u))),
        "R12(u)R21(−u) = 1",
        prod.is_identity(),
        || match prod.first_difference(&ExactMatrix::identity(prod.dim())) {
            Some((i, j, a, b)) => format!("entry ({i}, {j}) {a} vs {b}"),
            None => String::new(),
        },
    ))
}

/// P·R(u)·P = R(u).
pub fn symmetry_check(family: &RMatrixFamily, u: &Rational) -> Result<CheckRecord> {
    let p = family.permutation();
    let ru = family.eval(u)?;
    Ok(CheckRecord::matrices_equal(
        family.id(&format!("symmetry/u={}", format_rational(u))),
        "R12(u) = R21(u)",
        &(&(&p * &ru) * &p),
        &ru,
    ))
}

/// u(τ_j(u) − 1) → −2j² as u → ∞, and −2j² = 4(r−1)(c_{(2),r−2j} − c_{(2),r}).
pub fn asymptotic_check(family: &RMatrixFamily) -> Result<Vec<CheckRecord>> {
    if family.form != Form::Plain {
        return Err(Error::InvalidArgument(
            "asymptotics are stated for the plain form".into(),
        ));
    }
    let r = family.r;
    let scale = rat_int(4 * (r as i64 - 1));
    let top = c2k_eigenvalue(r, r)?;
    let mut out = Vec::new();
    for (j, t) in family.terms.iter().enumerate() {
        let expr = t
            .coefficient
            .sub(&RationalFunction::one())
            .mul(&RationalFunction::from_poly(Poly::var()));
        let limit = expr.limit_at_infinity();
        let expected = rat_int(-2 * (j * j) as i64);
        let from_casimir = &scale * (c2k_eigenvalue(r, t.k)? - &top);
        let ok = limit.as_ref() == Some(&expected) && from_casimir == expected;
        out.push(CheckRecord::from_bool(
            family.id(&format!("asymptotic/k{}", t.k)),
            "R(u) = 1 + 4(r−1)(Ĉ − c_{(2),r})/u + O(1/u²)",
            ok,
            || {
                format!(
                    "limit {:?}, expected {}, eigenvalue difference gives {}",
                    limit.map(|l| format_rational(&l)),
                    format_rational(&expected),
                    format_rational(&from_casimir)
                )
            },
        ));
    }
    Ok(out)
}

/// τ_{k+2}/τ_k = (u + (r−1−k))/(u − (r−1−k)), checked symbolically, and the
/// same ratio rebuilt from quadratic Casimir differences before rescaling u.
pub fn tau_ratio_constraints(family: &RMatrixFamily) -> Result<Vec<CheckRecord>> {
    if family.form != Form::Plain {
        return Err(Error::InvalidArgument(
            "ratio constraints are stated for the plain form".into(),
        ));
    }
    let r = family.r;
    let ri = r as i64;
    let mut out = Vec::new();
    for t in &family.terms {
        let k = t.k;
        let Some(upper) = family.coefficient(k + 2) else {
            continue;
        };
        let ratio = upper.div(&t.coefficient)?;
        let d = rat_int(ri - 1 - k as i64);
        let expected = RationalFunction::mobius(d.clone(), -d);
        out.push(CheckRecord::from_bool(
            family.id(&format!("tau-ratio/k{k}")),
            "τ_{k+2}/τ_k = (u + (r−1−k))/(u − (r−1−k))",
            ratio == expected,
            || format!("ratio {ratio}, expected {expected}"),
        ));
        let hi = if k + 2 == r {
            RepKind::TrPlusMinus
        } else {
            RepKind::Tk(k + 2)
        };
        let quarter = (c2_closed_form(hi, r)? - c2_closed_form(RepKind::Tk(k), r)?) * rat(1, 4);
        let unscaled = RationalFunction::mobius(quarter.clone(), -quarter);
        let rescaled = unscaled.compose_linear(&rat(1, 4 * (ri - 1)), &rat_int(0))?;
        out.push(CheckRecord::from_bool(
            family.id(&format!("tau-ratio-unscaled/k{k}")),
            "(u + ¼Δc₂)/(u − ¼Δc₂) at u → u/(4(r−1))",
            rescaled == expected,
            || format!("rescaled {rescaled}, expected {expected}"),
        ));
    }
    Ok(out)
}

/// Normalisation of the coefficients R̂_k(u).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// R̂_0 = R̂_1 = 1, higher terms from the recurrence.
    Recurrence,
    /// Rising-factorial closed forms with A(u) = B(u) = 1.
    ClosedForm,
}

/// Coefficients R̂_k(u) for k = 0..=2r.
#[derive(Clone, Debug, Serialize)]
pub struct ShanWitCoefficients {
    pub r: usize,
    /// R̂_{2k}, k = 0..=r.
    pub even: Vec<RationalFunction>,
    /// R̂_{2k+1}, k = 0..r.
    pub odd: Vec<RationalFunction>,
    pub normalization: Normalization,
}

/// (k+u)/(k+2−2r−u).
fn recurrence_step(r: usize, k: usize) -> RationalFunction {
    let ki = k as i64;
    let num = Poly::linear(rat_int(1), rat_int(ki));
    let den = Poly::linear(rat_int(-1), rat_int(ki + 2 - 2 * r as i64));
    RationalFunction::new(num, den).expect("nonzero denominator")
}

fn half_shift(shift: i64) -> Poly {
    // (u + shift)/2
    Poly::linear(rat(1, 2), rat(shift, 2))
}

pub fn shanwit_coefficients(r: usize, normalization: Normalization) -> Result<ShanWitCoefficients> {
    if r < 2 {
        return Err(Error::InvalidRank {
            r,
            reason: "so(2r) is simple only for r ≥ 2",
        });
    }
    let (even, odd) = match normalization {
        Normalization::Recurrence => {
            let mut even = vec![RationalFunction::one()];
            for k in 0..r {
                let next = even[k].mul(&recurrence_step(r, 2 * k));
                even.push(next);
            }
            let mut odd = vec![RationalFunction::one()];
            for k in 0..r - 1 {
                let next = odd[k].mul(&recurrence_step(r, 2 * k + 1));
                odd.push(next);
            }
            (even, odd)
        }
        Normalization::ClosedForm => {
            let x = half_shift(0);
            let y = half_shift(1);
            let sign = |k: usize| rat_int(if k.is_multiple_of(2) { 1 } else { -1 });
            let even = (0..=r)
                .map(|k| {
                    let p = rising_factorial_poly(&x, k)
                        .mul(&rising_factorial_poly(&x, r - k))
                        .scale(&sign(k));
                    RationalFunction::from_poly(p)
                })
                .collect();
            let odd = (0..r)
                .map(|k| {
                    let p = rising_factorial_poly(&y, k)
                        .mul(&rising_factorial_poly(&y, r - k - 1))
                        .scale(&(sign(k) * rat(1, 2)));
                    RationalFunction::from_poly(p)
                })
                .collect();
            (even, odd)
        }
    };
    Ok(ShanWitCoefficients {
        r,
        even,
        odd,
        normalization,
    })
}

impl ShanWitCoefficients {
    /// R̂_k(u); zero for k > 2r.
    pub fn coefficient(&self, k: usize) -> RationalFunction {
        let list = if k.is_multiple_of(2) {
            &self.even
        } else {
            &self.odd
        };
        list.get(k / 2)
            .cloned()
            .unwrap_or_else(RationalFunction::zero)
    }

    pub fn is_pole(&self, u: &Rational) -> bool {
        self.even.iter().chain(&self.odd).any(|c| c.is_pole(u))
    }

    /// R̂_{k+2} = ((k+u)/(k+2−2r−u)) R̂_k as rational functions, k = 0..2r−2.
    pub fn recurrence_checks(&self) -> Vec<CheckRecord> {
        (0..=2 * self.r - 2)
            .map(|k| {
                let lhs = self.coefficient(k + 2);
                let rhs = self.coefficient(k).mul(&recurrence_step(self.r, k));
                CheckRecord::from_bool(
                    format!(
                        "ybe/r{}/coefficients/{:?}/recurrence/k{k}",
                        self.r, self.normalization
                    ),
                    "R̂_{k+2}(u) = (k+u)/(k+2−2r−u) R̂_k(u)",
                    lhs == rhs,
                    || format!("R̂_{} = {lhs}, recurrence gives {rhs}", k + 2),
                )
            })
            .collect()
    }
}

/// The closed forms equal A(u)·(recurrence family) on even k and B(u)·(…)
/// on odd k with A = (u/2)_r and B = ((u+1)/2)_{r−1}/2.
pub fn normalization_check(r: usize) -> Result<Vec<CheckRecord>> {
    let rec = shanwit_coefficients(r, Normalization::Recurrence)?;
    let closed = shanwit_coefficients(r, Normalization::ClosedForm)?;
    let a = RationalFunction::from_poly(rising_factorial_poly(&half_shift(0), r));
    let b =
        RationalFunction::from_poly(rising_factorial_poly(&half_shift(1), r - 1).scale(&rat(1, 2)));
    Ok((0..=2 * r)
        .map(|k| {
            let factor = if k % 2 == 0 { &a } else { &b };
            let lhs = closed.coefficient(k);
            let rhs = rec.coefficient(k).mul(factor);
            CheckRecord::from_bool(
                format!("ybe/r{r}/coefficients/normalization/k{k}"),
                "closed rising-factorial form = A(u)·R̂_k (even), B(u)·R̂_k (odd)",
                lhs == rhs,
                || format!("closed {lhs}, scaled recurrence {rhs}"),
            )
        })
        .collect())
}

/// R̂(u) and its even and odd parts on ρ⊗ρ.
#[derive(Clone, Debug)]
pub struct ShanWitParts {
    pub full: ExactMatrix,
    pub symmetric: ExactMatrix,
    pub antisymmetric: ExactMatrix,
}

/// R̂(u) = Σ_k R̂_k(u) I_k / k! with the I_k / k! precomputed.
#[derive(Clone, Debug)]
pub struct ShanWitFamily {
    pub r: usize,
    pub coefficients: ShanWitCoefficients,
    /// I_k / k! = Σ_{i₁<…<i_k} Γ_{[i…]} ⊗ Γ_{[i…]}, k = 0..=2r.
    pub basis: Vec<ExactMatrix>,
    /// (1 + Γ_{2r+1}⊗Γ_{2r+1})/2.
    pub proj_s: ExactMatrix,
    /// (1 − Γ_{2r+1}⊗Γ_{2r+1})/2.
    pub proj_as: ExactMatrix,
}

/// Σ over increasing multi-indices of Γ_{[i…]} ⊗ Γ_{[i…]}.
pub fn normalized_invariant(rep: &GammaRep, k: usize) -> ExactMatrix {
    let dim = rep.dim();
    increasing_indices(rep.n(), k)
        .into_par_iter()
        .map(|idx| {
            let g = antisym_gamma(rep, &MultiIndex::new(idx)).expect("labels in range");
            g.kron(&g)
        })
        .reduce(|| ExactMatrix::zeros(dim * dim), |a, b| &a + &b)
}

impl ShanWitFamily {
    pub fn new(rep: &GammaRep, normalization: Normalization) -> Result<Self> {
        let r = rep.r();
        let coefficients = shanwit_coefficients(r, normalization)?;
        let basis = (0..=2 * r)
            .into_par_iter()
            .map(|k| normalized_invariant(rep, k))
            .collect();
        let cc = rep.chirality().kron(rep.chirality());
        let id = ExactMatrix::identity(cc.dim());
        let half = ExactScalar::from_ratio(1, 2);
        Ok(ShanWitFamily {
            r,
            coefficients,
            basis,
            proj_s: (&id + &cc).scale(&half),
            proj_as: (&id - &cc).scale(&half),
        })
    }

    pub fn is_pole(&self, u: &Rational) -> bool {
        self.coefficients.is_pole(u)
    }

    pub fn eval_parts(&self, u: &Rational) -> Result<ShanWitParts> {
        let dim = self.proj_s.dim();
        let mut even = ExactMatrix::zeros(dim);
        let mut odd = ExactMatrix::zeros(dim);
        for (k, b) in self.basis.iter().enumerate() {
            let c = self.coefficients.coefficient(k).eval(u)?;
            if c.is_zero() {
                continue;
            }
            let term = b.scale_rational(&c);
            if k % 2 == 0 {
                even = &even + &term;
            } else {
                odd = &odd + &term;
            }
        }
        Ok(ShanWitParts {
            full: &even + &odd,
            symmetric: even,
            antisymmetric: odd,
        })
    }

    pub fn eval(&self, u: &Rational) -> Result<ExactMatrix> {
        Ok(self.eval_parts(u)?.full)
    }

    fn id(&self, what: &str) -> String {
        format!(
            "ybe/r{}/full/{:?}/{what}",
            self.r, self.coefficients.normalization
        )
    }

    /// proj^S R̂ = R̂^S = R̂ proj^S and proj^{AS} R̂ = R̂^{AS} = R̂ proj^{AS}.
    pub fn projection_checks(&self, u: &Rational) -> Result<Vec<CheckRecord>> {
        let parts = self.eval_parts(u)?;
        let at = format_rational(u);
        let mut out = vec![CheckRecord::from_bool(
            self.id("projectors-complete"),
            "proj^S + proj^AS = 1",
            (&self.proj_s + &self.proj_as).is_identity(),
            || "sum differs from the identity".into(),
        )];
        for (name, proj, part) in [
            ("symmetric", &self.proj_s, &parts.symmetric),
            ("antisymmetric", &self.proj_as, &parts.antisymmetric),
        ] {
            out.push(CheckRecord::matrices_equal(
                self.id(&format!("{name}-left/u={at}")),
                "proj·R̂(u) = R̂ restricted part",
                &(proj * &parts.full),
                part,
            ));
            out.push(CheckRecord::matrices_equal(
                self.id(&format!("{name}-right/u={at}")),
                "R̂(u)·proj = R̂ restricted part",
                &(&parts.full * proj),
                part,
            ));
        }
        Ok(out)
    }

    pub fn ybe_sweep(&self, points: &[(Rational, Rational)]) -> YbeSweep {
        let cert = certification(points, 2 * self.r);
        ybe_sweep(
            &format!("full-{:?}", self.coefficients.normalization).to_lowercase(),
            self.r,
            1 << self.r,
            Form::Braid,
            |u| self.eval(u),
            |u| self.is_pole(u),
            points,
            &cert,
        )
    }
}

/// R̂(u) with A = B = 1 and its even and odd parts.
pub fn shanwit_full_rmatrix(rep: &GammaRep, u: &Rational) -> Result<ShanWitParts> {
    ShanWitFamily::new(rep, Normalization::ClosedForm)?.eval_parts(u)
}

/// Σ_k C(r,k)(x)_k(x)_{r−k} = Π_{k=0}^{r−1}(2x+k) at the given points and as polynomials.
pub fn rising_factorial_identity(r: usize, points: &[Rational]) -> Vec<CheckRecord> {
    let lhs_at = |x: &Rational| -> Rational {
        (0..=r)
            .map(|k| {
                Rational::from_integer(binomial(r as u64, k as u64))
                    * rising_factorial(x, k)
                    * rising_factorial(x, r - k)
            })
            .sum()
    };
    let rhs_at =
        |x: &Rational| -> Rational { (0..r).map(|k| rat_int(2) * x + rat_int(k as i64)).product() };
    let bad: Vec<String> = points
        .iter()
        .filter(|x| lhs_at(x) != rhs_at(x))
        .map(format_rational)
        .collect();
    let sampled = CheckRecord::from_bool(
        format!("ybe/r{r}/rising-factorial/sampled"),
        "Σ_k C(r,k)(x)_k(x)_{r−k} = Π_{k<r}(2x+k)",
        bad.is_empty(),
        || format!("differs at x in {bad:?}"),
    );
    let x = Poly::var();
    let lhs = (0..=r).fold(Poly::zero(), |acc, k| {
        acc.add(
            &rising_factorial_poly(&x, k)
                .mul(&rising_factorial_poly(&x, r - k))
                .scale(&Rational::from_integer(binomial(r as u64, k as u64))),
        )
    });
    let rhs = (0..r).fold(Poly::constant(rat_int(1)), |acc, k| {
        acc.mul(&Poly::linear(rat_int(2), rat_int(k as i64)))
    });
    let symbolic = CheckRecord::from_bool(
        format!("ybe/r{r}/rising-factorial/symbolic"),
        "Σ_k C(r,k)(x)_k(x)_{r−k} = Π_{k<r}(2x+k)",
        lhs == rhs,
        || format!("{lhs} vs {rhs}"),
    );
    vec![sampled, symbolic]
}

/// (I_{2k}/(2k)!)·P_r^S = (−1)^k C(r,k) P_r^S for k = 0..=r.
pub fn lemma10_checks(family: &ShanWitFamily, proj_r_s: &ExactMatrix) -> Vec<CheckRecord> {
    let r = family.r;
    (0..=r)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let factor = Rational::from_integer(binomial(r as u64, k as u64) * sign);
            CheckRecord::matrices_equal(
                format!("ybe/r{r}/invariant-on-top-projector/k{k}"),
                "(I_{2k}/(2k)!)·P_r^S = (−1)^k C(r,k) P_r^S",
                &(&family.basis[2 * k] * proj_r_s),
                &proj_r_s.scale_rational(&factor),
            )
        })
        .collect()
}

/// R̂^S(u) = Π_{k<r}(u+k)·(R̂^{++}(u) + R̂^{−−}(u)) with A = 1, plus the
/// projector relations it rests on.
pub fn prop9_check(
    rep: &GammaRep,
    c: &SplitCasimir,
    points: &[Rational],
) -> Result<Vec<CheckRecord>> {
    let r = rep.r();
    let sw = ShanWitFamily::new(rep, Normalization::ClosedForm)?;
    let pp = sector_r_matrix(rep, c, Sign::Plus, Form::Braid)?;
    let mm = sector_r_matrix(rep, c, Sign::Minus, Form::Braid)?;
    let top = |f: &RMatrixFamily| -> Result<ExactMatrix> {
        let t = f.terms.first().expect("k = r term");
        t.projector.embed(&f.support, 1 << (2 * r))
    };
    let proj_r_s = &top(&pp)? + &top(&mm)?;
    let mut out = lemma10_checks(&sw, &proj_r_s);
    let results: Vec<Result<CheckRecord>> = points
        .par_iter()
        .map(|u| {
            let id = format!("ybe/r{r}/symmetric-vs-sectors/u={}", format_rational(u));
            let anchor = "R̂^S(u) = Π_{k<r}(u+k)·(R̂^{++}(u) + R̂^{−−}(u))";
            if pp.is_pole(u) || sw.is_pole(u) {
                return Ok(CheckRecord::with_status(
                    id,
                    anchor,
                    Status::Skipped,
                    Some("pole".into()),
                ));
            }
            let lhs = sw.eval_parts(u)?.symmetric;
            let prefactor: Rational = (0..r).map(|k| u + rat_int(k as i64)).product();
            let rhs = (&pp.eval_full(u)? + &mm.eval_full(u)?).scale_rational(&prefactor);
            Ok(CheckRecord::matrices_equal(id, anchor, &lhs, &rhs))
        })
        .collect();
    for r in results {
        out.push(r?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::casimir::split_casimir_from_gammas;
    use crate::clifford::build_gamma;

    fn setup(r: usize) -> (GammaRep, SplitCasimir) {
        let rep = build_gamma(r).unwrap();
        let c = split_casimir_from_gammas(&rep);
        (rep, c)
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        let p = |v: &[i64]| Poly::new(v.iter().map(|&x| rat_int(x)).collect());
        RationalFunction::new(p(num), p(den)).unwrap()
    }

    #[test]
    fn poly_arithmetic() {
        let p = Poly::new(vec![rat_int(-1), rat_int(0), rat_int(1)]);
        let q = Poly::linear(rat_int(1), rat_int(-1));
        let (quot, rem) = p.div_rem(&q).unwrap();
        assert_eq!(quot, Poly::linear(rat_int(1), rat_int(1)));
        assert!(rem.is_zero());
        assert_eq!(p.gcd(&q.scale(&rat_int(3))), q);
        assert_eq!(
            p.compose_linear(&rat_int(2), &rat_int(1)).eval(&rat_int(1)),
            rat_int(8)
        );
        assert_eq!(p.to_string(), "u^2 - 1");
        assert_eq!(
            Poly::linear(rat(1, 2), rat(-3, 2)).to_string(),
            "1/2*u - 3/2"
        );
    }

    #[test]
    fn rational_function_normal_form() {
        // (u²−1)/(2u−2) = (u+1)/2
        let f = rf(&[-1, 0, 1], &[-2, 2]);
        assert_eq!(
            f,
            RationalFunction::from_poly(Poly::linear(rat(1, 2), rat(1, 2)))
        );
        assert_eq!(f.denominator().leading(), rat_int(1));
        assert!(rf(&[1], &[0, 1]).eval(&rat_int(0)).is_err());
        assert_eq!(rf(&[1, 3], &[2, 1]).limit_at_infinity(), Some(rat_int(3)));
        assert_eq!(rf(&[0, 0, 1], &[1]).limit_at_infinity(), None);
        assert!(RationalFunction::new(Poly::var(), Poly::zero()).is_err());
    }

    #[test]
    fn tau_values() {
        assert_eq!(tau(1), rf(&[-1, 1], &[1, 1]));
        // τ_j(0) = (−1)^j
        for j in 0..5 {
            assert_eq!(
                tau(j).eval(&rat_int(0)).unwrap(),
                rat_int(if j % 2 == 0 { 1 } else { -1 })
            );
        }
        assert_eq!(tau(2).eval(&rat_int(1)).unwrap(), rat_int(0));
    }

    #[test]
    fn rank_two_plain_and_braid() {
        let (rep, c) = setup(2);
        let plain = sector_r_matrix(&rep, &c, Sign::Plus, Form::Plain).unwrap();
        assert_eq!(
            plain.terms.iter().map(|t| t.k).collect::<Vec<_>>(),
            vec![2, 0]
        );
        assert_eq!(plain.coefficient(0).unwrap(), &rf(&[-1, 1], &[1, 1]));
        // u = 1 leaves only the top projector
        assert_eq!(plain.eval(&rat_int(1)).unwrap(), plain.terms[0].projector);
        let braid = sector_r_matrix(&rep, &c, Sign::Plus, Form::Braid).unwrap();
        assert!(braid_relation_check(&plain, &braid, &rat(2, 5))
            .unwrap()
            .passed());
        assert!(plain.exchange_sign_checks().iter().all(CheckRecord::passed));
        let u = rat(2, 3);
        let v = rat(5, 7);
        let (l, r) = ybe_sides(|x| braid.eval(x), 2, Form::Braid, &u, &v).unwrap();
        assert_eq!(l.dim(), 8);
        assert_eq!(l, r);
        let (l, r) = ybe_sides(|x| plain.eval(x), 2, Form::Plain, &u, &v).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn r0_squares_to_identity() {
        let (rep, c) = setup(3);
        let plain = sector_r_matrix(&rep, &c, Sign::Minus, Form::Plain).unwrap();
        let r0 = plain.eval(&rat_int(0)).unwrap();
        assert!((&r0 * &r0).is_identity());
    }

    #[test]
    fn unscaled_ratio_rank_four() {
        let (rep, c) = setup(4);
        let plain = sector_r_matrix(&rep, &c, Sign::Plus, Form::Plain).unwrap();
        let checks = tau_ratio_constraints(&plain).unwrap();
        // k ∈ {0, 2}: two symbolic and two unscaled checks
        assert_eq!(checks.len(), 4);
        assert!(checks.iter().all(CheckRecord::passed));
        let r42 = plain
            .coefficient(4)
            .unwrap()
            .div(plain.coefficient(2).unwrap())
            .unwrap();
        assert_eq!(r42, rf(&[1, 1], &[-1, 1]));
        let asym = asymptotic_check(&plain).unwrap();
        assert!(asym.iter().all(CheckRecord::passed));
        assert!(unitarity_check(&plain, &rat(3, 5)).unwrap().passed());
    }

    #[test]
    fn coefficient_families() {
        let rec = shanwit_coefficients(2, Normalization::Recurrence).unwrap();
        assert_eq!(rec.coefficient(2), rf(&[0, 1], &[-2, -1]));
        let closed = shanwit_coefficients(2, Normalization::ClosedForm).unwrap();
        // (u/2)(u/2+1) and −(u/2)²
        assert_eq!(
            closed.coefficient(0),
            RationalFunction::from_poly(Poly::new(vec![rat_int(0), rat(1, 2), rat(1, 4)]))
        );
        assert_eq!(
            closed.coefficient(2),
            RationalFunction::from_poly(Poly::new(vec![rat_int(0), rat_int(0), rat(-1, 4)]))
        );
        assert_eq!(
            closed.coefficient(2).div(&closed.coefficient(0)).unwrap(),
            rf(&[0, -1], &[2, 1])
        );
        for r in 2..=6 {
            for n in [Normalization::Recurrence, Normalization::ClosedForm] {
                assert!(shanwit_coefficients(r, n)
                    .unwrap()
                    .recurrence_checks()
                    .iter()
                    .all(CheckRecord::passed));
            }
            assert!(normalization_check(r)
                .unwrap()
                .iter()
                .all(CheckRecord::passed));
        }
    }

    #[test]
    fn rising_factorial_small() {
        let x = rat(3, 4);
        assert_eq!(rising_factorial(&x, 0), rat_int(1));
        assert_eq!(rising_factorial(&x, 2), rat(21, 16));
        assert!(rising_factorial_identity(2, &sample_points(5, 7))
            .iter()
            .all(CheckRecord::passed));
    }

    #[test]
    fn grid_avoids_integers() {
        for r in 2..=4 {
            let g = ybe_grid(r);
            assert_eq!(g.len(), (2 * r + 3) * (2 * r + 3));
            assert!(g
                .iter()
                .all(|(u, v)| !u.is_integer() && !v.is_integer() && !(u + v).is_integer()));
        }
    }

    #[test]
    fn full_rank_two_projection_and_braid() {
        let (rep, _) = setup(2);
        let fam = ShanWitFamily::new(&rep, Normalization::ClosedForm).unwrap();
        let u = rat(1, 2);
        assert!(fam
            .projection_checks(&u)
            .unwrap()
            .iter()
            .all(CheckRecord::passed));
        let (l, r) = ybe_sides(|x| fam.eval(x), 4, Form::Braid, &u, &rat(1, 3)).unwrap();
        assert_eq!(l.dim(), 64);
        assert_eq!(l, r);
    }

    #[test]
    fn symmetric_part_rank_two() {
        let (rep, c) = setup(2);
        let checks = prop9_check(&rep, &c, &sample_points(3, 3)).unwrap();
        assert!(
            checks.iter().all(CheckRecord::passed),
            "{:?}",
            checks.iter().find(|c| !c.passed())
        );
    }
}
