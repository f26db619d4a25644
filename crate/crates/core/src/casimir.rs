//! The split Casimir operator on ρ⊗ρ, the invariants I_k, their
//! recurrences and polynomial forms, and the chiral sector restrictions.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::check::CheckRecord;
use crate::clifford::{antisym_gamma, build_gamma, increasing_indices, GammaRep, MultiIndex};
use crate::error::{Error, Result};
use crate::linalg::{poly_eval_rational, ExactMatrix, TensorShape};
use crate::oracles::{c2_closed_form, RepKind, SoAlgebraData};
use crate::scalar::{factorial, rat, rat_int, ExactScalar, Rational};

fn check_rank(r: usize) -> Result<()> {
    if r < 2 {
        return Err(Error::InvalidRank {
            r,
            reason: "so(2r) is simple only for r ≥ 2",
        });
    }
    Ok(())
}

/// Ĉ_ρ on V ⊗ V with V the 2^r-dimensional spinor space.
#[derive(Clone, Debug)]
pub struct SplitCasimir {
    pub r: usize,
    pub matrix: ExactMatrix,
}

impl SplitCasimir {
    pub fn shape(&self) -> TensorShape {
        TensorShape::uniform(1 << self.r, 2)
    }
}

/// −1/(8(N−2)) Σ_{i<j} Γ_iΓ_j ⊗ Γ_iΓ_j.
pub fn split_casimir_rho(r: usize) -> Result<SplitCasimir> {
    check_rank(r)?;
    let rep = build_gamma(r)?;
    Ok(split_casimir_from_gammas(&rep))
}

pub fn split_casimir_from_gammas(rep: &GammaRep) -> SplitCasimir {
    let r = rep.r();
    let n = rep.n();
    let dim = rep.dim();
    let pairs: Vec<_> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect();
    let sum = pairs
        .par_iter()
        .map(|&(i, j)| {
            let g = rep.gamma(i) * rep.gamma(j);
            g.kron(&g)
        })
        .reduce(|| ExactMatrix::zeros(dim * dim), |a, b| &a + &b);
    let coeff = rat(-1, 8 * (n as i64 - 2));
    SplitCasimir {
        r,
        matrix: sum.scale_rational(&coeff),
    }
}

/// ḡ^{AB} ρ(M_A) ⊗ ρ(M_B) with metric and generators taken from the oracle tables.
pub fn split_casimir_from_metric(alg: &SoAlgebraData, rep: &GammaRep) -> ExactMatrix {
    let dim = rep.dim();
    let labels = alg.labels();
    let mut acc = ExactMatrix::zeros(dim * dim);
    for (a, &(i, j)) in labels.iter().enumerate() {
        for (b, &(k, l)) in labels.iter().enumerate() {
            let g = alg.inverse_metric(a, b);
            if g == rat_int(0) {
                continue;
            }
            let term = rep.so_generator(i, j).kron(&rep.so_generator(k, l));
            acc = &acc + &term.scale_rational(&g);
        }
    }
    acc
}

/// Diagonal action X ⊗ 1 + 1 ⊗ X of ρ(M_ij).
pub fn diagonal_action(rep: &GammaRep, i: usize, j: usize) -> ExactMatrix {
    let m = rep.so_generator(i, j);
    let id = ExactMatrix::identity(rep.dim());
    &m.kron(&id) + &id.kron(&m)
}

/// [op, ρ(M_ij)⊗1 + 1⊗ρ(M_ij)] = 0 for every generator.
pub fn ad_invariance_check(rep: &GammaRep, op: &ExactMatrix, name: &str) -> CheckRecord {
    let n = rep.n();
    let pairs: Vec<_> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect();
    let bad = pairs
        .par_iter()
        .find_first(|&&(i, j)| !op.commutator(&diagonal_action(rep, i, j)).is_zero());
    CheckRecord::from_bool(
        format!("casimir/r{}/ad-invariance/{name}", rep.r()),
        "commutes with the diagonal so(2r) action",
        bad.is_none(),
        || format!("fails for M{:?}", bad.unwrap()),
    )
}

/// (ρ⊗ρ)(ΔC_2) = C_2⊗1 + 1⊗C_2 + 2Ĉ_ρ with the left side built from the
/// coproduct directly and C_2 replaced by its closed-form eigenvalue.
pub fn quadratic_casimir_relation(
    alg: &SoAlgebraData,
    rep: &GammaRep,
    c: &SplitCasimir,
) -> CheckRecord {
    let dim = rep.dim();
    let mut lhs = ExactMatrix::zeros(dim * dim);
    for (a, &(i, j)) in alg.labels().iter().enumerate() {
        let x = diagonal_action(rep, i, j);
        lhs = &lhs + &(&x * &x).scale_rational(&alg.inverse_metric(a, a));
    }
    let c2 = c2_closed_form(RepKind::DeltaPlusMinus, rep.r()).expect("r ≥ 2");
    let rhs = &ExactMatrix::scalar(dim * dim, &ExactScalar::real(c2 * rat_int(2)))
        + &c.matrix.scale(&ExactScalar::from_int(2));
    CheckRecord::matrices_equal(
        format!("casimir/r{}/quadratic-relation", rep.r()),
        "coproduct of C_2 equals c_2⊗1 + 1⊗c_2 + 2Ĉ",
        &lhs,
        &rhs,
    )
}

/// Closed form of tr Ĉ_ρ^m for m = 0..5.
pub fn trace_power_closed_form(r: usize, m: u32) -> Option<Rational> {
    let ri = r as i64;
    let base = rat_int(ri * (2 * ri - 1))
        * Rational::from_integer(num_bigint::BigInt::from(4).pow(r as u32));
    let q = ri - 1;
    Some(match m {
        0 => Rational::from_integer(num_bigint::BigInt::from(4).pow(r as u32)),
        1 => rat_int(0),
        2 => base * rat(1, 256 * q * q),
        3 => -base * rat(1, 1024 * q * q),
        4 => base * rat(30 * ri * ri - 63 * ri + 34, 65536 * q * q * q * q),
        5 => -base * rat(34 * ri * ri - 89 * ri + 62, 131072 * q * q * q * q),
        _ => return None,
    })
}

/// I_k = k! Σ_{i_1<…<i_k} Γ^{[i_1…i_k]} ⊗ Γ_{[i_1…i_k]}.
#[derive(Clone, Debug)]
pub struct InvariantI {
    pub r: usize,
    pub k: usize,
    pub matrix: ExactMatrix,
}

pub fn invariant_i(rep: &GammaRep, k: usize) -> InvariantI {
    let dim = rep.dim();
    let n = rep.n();
    // With the Euclidean metric on the Clifford generators, Γ^{[…]} = Γ_{[…]}.
    let sum = increasing_indices(n, k)
        .into_par_iter()
        .map(|idx| {
            let g = antisym_gamma(rep, &MultiIndex::new(idx)).expect("labels in range");
            g.kron(&g)
        })
        .reduce(|| ExactMatrix::zeros(dim * dim), |a, b| &a + &b);
    let fact = Rational::from_integer(factorial(k as u64));
    InvariantI {
        r: rep.r(),
        k,
        matrix: sum.scale_rational(&fact),
    }
}

/// I_0..=I_{kmax}.
pub fn invariants_up_to(rep: &GammaRep, kmax: usize) -> Vec<ExactMatrix> {
    (0..=kmax)
        .into_par_iter()
        .map(|k| invariant_i(rep, k).matrix)
        .collect()
}

/// Both recurrences:
/// I_k I_1 = I_{k+1} − k(k−1−2r) I_{k−1} for k = 1..2r, and
/// I_{2k} I_2 = I_{2k+2} + 8k(r−k) I_{2k} + 4k(2k−1)(r+1−k)(2r+1−2k) I_{2k−2} for k = 1..r.
pub fn verify_recurrences(rep: &GammaRep) -> Vec<CheckRecord> {
    let r = rep.r();
    let ri = r as i64;
    let inv = invariants_up_to(rep, 2 * r + 2);
    let mut out: Vec<CheckRecord> = (1..=2 * r)
        .into_par_iter()
        .map(|k| {
            let ki = k as i64;
            let lhs = &inv[k] * &inv[1];
            let rhs =
                &inv[k + 1] - &inv[k - 1].scale(&ExactScalar::from_int(ki * (ki - 1 - 2 * ri)));
            CheckRecord::matrices_equal(
                format!("casimir/r{r}/odd-recurrence/k{k}"),
                "I_k I_1 = I_{k+1} − k(k−1−2r) I_{k−1}",
                &lhs,
                &rhs,
            )
        })
        .collect();
    out.extend(
        (1..=r)
            .into_par_iter()
            .map(|k| {
                let ki = k as i64;
                let lhs = &inv[2 * k] * &inv[2];
                let a = 8 * ki * (ri - ki);
                let b = 4 * ki * (2 * ki - 1) * (ri + 1 - ki) * (2 * ri + 1 - 2 * ki);
                let rhs = &(&inv[2 * k + 2] + &inv[2 * k].scale(&ExactScalar::from_int(a)))
                    + &inv[2 * k - 2].scale(&ExactScalar::from_int(b));
                CheckRecord::matrices_equal(
                    format!("casimir/r{r}/even-recurrence/k{k}"),
                    "I_{2k} I_2 = I_{2k+2} + 8k(r−k) I_{2k} + 4k(2k−1)(r+1−k)(2r+1−2k) I_{2k−2}",
                    &lhs,
                    &rhs,
                )
            })
            .collect::<Vec<_>>(),
    );
    out
}

/// Coefficients (constant first) of I_{2k} as a polynomial in Ĉ_ρ,
/// generated by the even recurrence from I_0 = 1 and I_2 = −32(r−1)Ĉ_ρ.
pub fn i2k_polynomial(r: usize, k: usize) -> Vec<Rational> {
    let ri = r as i64;
    let p1 = vec![rat_int(0), rat_int(-32 * (ri - 1))];
    let mut prev = vec![rat_int(1)];
    if k == 0 {
        return prev;
    }
    let mut cur = p1.clone();
    for j in 1..k {
        let ji = j as i64;
        let a = rat_int(8 * ji * (ri - ji));
        let b = rat_int(4 * ji * (2 * ji - 1) * (ri + 1 - ji) * (2 * ri + 1 - 2 * ji));
        let mut next = vec![rat_int(0); j + 2];
        for (d, c) in cur.iter().enumerate() {
            next[d + 1] += c * &p1[1];
            next[d] -= c * &a;
        }
        for (d, c) in prev.iter().enumerate() {
            next[d] -= c * &b;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// poly_eval of [`i2k_polynomial`] on an operator.
pub fn i2k_of(r: usize, k: usize, c: &ExactMatrix) -> ExactMatrix {
    poly_eval_rational(&i2k_polynomial(r, k), c)
}

/// (1 ± Γ_{2r+1}) / 2.
pub fn chirality_projectors(rep: &GammaRep) -> (ExactMatrix, ExactMatrix) {
    let id = ExactMatrix::identity(rep.dim());
    let half = ExactScalar::from_ratio(1, 2);
    (
        (&id + rep.chirality()).scale(&half),
        (&id - rep.chirality()).scale(&half),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn letter(self) -> char {
        match self {
            Sign::Plus => 'p',
            Sign::Minus => 'm',
        }
    }
}

/// A chiral sector Δ_ε ⊗ Δ_ε′. Serialised by its short name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SectorLabel {
    pub eps1: Sign,
    pub eps2: Sign,
}

impl SectorLabel {
    pub const PP: SectorLabel = SectorLabel {
        eps1: Sign::Plus,
        eps2: Sign::Plus,
    };
    pub const PM: SectorLabel = SectorLabel {
        eps1: Sign::Plus,
        eps2: Sign::Minus,
    };
    pub const MP: SectorLabel = SectorLabel {
        eps1: Sign::Minus,
        eps2: Sign::Plus,
    };
    pub const MM: SectorLabel = SectorLabel {
        eps1: Sign::Minus,
        eps2: Sign::Minus,
    };
    pub const ALL: [SectorLabel; 4] = [Self::PM, Self::PP, Self::MM, Self::MP];

    pub fn same_chirality(&self) -> bool {
        self.eps1 == self.eps2
    }

    /// Short name: pp, pm, mp, mm.
    pub fn name(&self) -> String {
        format!("{}{}", self.eps1.letter(), self.eps2.letter())
    }

    /// Indices a·2^r + b of V⊗V with Γ_{2r+1} = ε on a and ε′ on b.
    pub fn support(&self, rep: &GammaRep) -> Vec<usize> {
        let d = rep.dim();
        let chir = rep.chirality();
        let has = |i: usize, s: Sign| chir.get(i, i) == ExactScalar::from_int(s.value());
        (0..d * d)
            .filter(|x| has(x / d, self.eps1) && has(x % d, self.eps2))
            .collect()
    }

    /// proj_ε ⊗ proj_ε′ on V⊗V.
    pub fn projector(&self, rep: &GammaRep) -> ExactMatrix {
        let (p, m) = chirality_projectors(rep);
        let pick = |s: Sign| {
            if s == Sign::Plus {
                p.clone()
            } else {
                m.clone()
            }
        };
        pick(self.eps1).kron(&pick(self.eps2))
    }
}

impl fmt::Display for SectorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Serialize for SectorLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

impl<'de> Deserialize<'de> for SectorLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for SectorLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pp" | "++" => Ok(Self::PP),
            "pm" | "+-" => Ok(Self::PM),
            "mp" | "-+" => Ok(Self::MP),
            "mm" | "--" => Ok(Self::MM),
            other => Err(Error::InvalidArgument(format!("unknown sector {other}"))),
        }
    }
}

/// An operator on a chiral sector, stored compressed to the sector support.
#[derive(Clone, Debug)]
pub struct SectorOperator {
    pub r: usize,
    pub label: SectorLabel,
    pub support: Vec<usize>,
    pub compressed: ExactMatrix,
}

impl SectorOperator {
    /// The operator as a 4^r-dimensional matrix, zero off the sector.
    pub fn full(&self) -> ExactMatrix {
        self.compressed
            .embed(&self.support, 1 << (2 * self.r))
            .expect("support fits by construction")
    }
}

/// Ĉ_{εε′} = (proj_ε ⊗ proj_ε′) Ĉ_ρ, compressed to the sector.
pub fn sector_casimir(rep: &GammaRep, c: &SplitCasimir, label: SectorLabel) -> SectorOperator {
    let support = label.support(rep);
    let compressed = c.matrix.compress(&support);
    SectorOperator {
        r: rep.r(),
        label,
        support,
        compressed,
    }
}

/// (1⊗Γ_{2r+1}) I_k / k! = (−1)^r (Γ_{2r+1}⊗1) I_{2r−k} / (2r−k)! for k = 0..2r.
pub fn lemma1_verify(rep: &GammaRep) -> Vec<CheckRecord> {
    let r = rep.r();
    let n = rep.n();
    let id = ExactMatrix::identity(rep.dim());
    let left = id.kron(rep.chirality());
    let right = rep.chirality().kron(&id);
    let inv = invariants_up_to(rep, n);
    let sign = ExactScalar::from_int(if r.is_multiple_of(2) { 1 } else { -1 });
    (0..=n)
        .into_par_iter()
        .map(|k| {
            let lhs = (&left * &inv[k])
                .scale_rational(&(Rational::from_integer(factorial(k as u64))).recip());
            let rhs = (&right * &inv[n - k])
                .scale_rational(&Rational::from_integer(factorial((n - k) as u64)).recip())
                .scale(&sign);
            CheckRecord::matrices_equal(
                format!("casimir/r{r}/chirality-duality/k{k}"),
                "(1⊗Γ_{2r+1}) I_k/k! = (−1)^r (Γ_{2r+1}⊗1) I_{2r−k}/(2r−k)!",
                &lhs,
                &rhs,
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::all_pass;

    #[test]
    fn casimir_rejects_small_rank() {
        assert!(split_casimir_rho(1).is_err());
    }

    #[test]
    fn casimir_two_constructions_agree() {
        for r in 2..=4 {
            let rep = build_gamma(r).unwrap();
            let alg = SoAlgebraData::for_rank(r).unwrap();
            let c = split_casimir_from_gammas(&rep);
            assert_eq!(c.matrix, split_casimir_from_metric(&alg, &rep));
            assert!(c.matrix.trace().is_zero());
            assert!(quadratic_casimir_relation(&alg, &rep, &c).passed());
            assert!(ad_invariance_check(&rep, &c.matrix, "C").passed());
        }
    }

    #[test]
    fn trace_of_square_at_rank_three() {
        // direct matrix trace of the square
        let c = split_casimir_rho(3).unwrap();
        assert_eq!(
            (&c.matrix * &c.matrix).trace(),
            ExactScalar::from_ratio(15, 16)
        );
        assert_eq!(trace_power_closed_form(3, 2).unwrap(), rat(15, 16));
    }

    #[test]
    fn invariant_small_cases() {
        let rep = build_gamma(2).unwrap();
        assert!(invariant_i(&rep, 0).matrix.is_identity());
        assert!(invariant_i(&rep, 5).matrix.is_zero());
        let i1 = invariant_i(&rep, 1).matrix;
        let i2 = invariant_i(&rep, 2).matrix;
        assert_eq!(
            &(&i1 * &i1) - &ExactMatrix::scalar(16, &ExactScalar::from_int(4)),
            i2
        );
        let c = split_casimir_from_gammas(&rep);
        assert_eq!(i2, c.matrix.scale(&ExactScalar::from_int(-32)));
    }

    #[test]
    fn i3_via_i1() {
        let rep = build_gamma(3).unwrap();
        let i1 = invariant_i(&rep, 1).matrix;
        let i3 = invariant_i(&rep, 3).matrix;
        let cube = &(&i1 * &i1) * &i1;
        assert_eq!(
            &cube - &i1.scale(&ExactScalar::from_int(2 * (3 * 3 - 1))),
            i3
        );
    }

    #[test]
    fn polynomial_examples() {
        assert_eq!(i2k_polynomial(5, 0), vec![rat_int(1)]);
        for r in 2..=8i64 {
            let p = i2k_polynomial(r as usize, 2);
            assert_eq!(
                p,
                vec![
                    rat_int(-4 * r * (2 * r - 1)),
                    rat_int(256 * (r - 1) * (r - 1)),
                    rat_int(1024 * (r - 1) * (r - 1))
                ]
            );
        }
        assert_eq!(i2k_polynomial(3, 3)[1], rat_int(-3328));
    }

    #[test]
    fn recurrences_rank_two_and_three() {
        for r in 2..=3 {
            assert!(all_pass(&verify_recurrences(&build_gamma(r).unwrap())));
        }
    }

    #[test]
    fn polynomial_matches_invariants() {
        for r in 2..=3 {
            let rep = build_gamma(r).unwrap();
            let c = split_casimir_from_gammas(&rep);
            for k in 0..=r + 1 {
                assert_eq!(
                    i2k_of(r, k, &c.matrix),
                    invariant_i(&rep, 2 * k).matrix,
                    "r={r} k={k}"
                );
            }
        }
    }

    #[test]
    fn projectors_and_sectors() {
        for r in 2..=4 {
            let rep = build_gamma(r).unwrap();
            let (p, m) = chirality_projectors(&rep);
            assert!((&p + &m).is_identity());
            assert!((&p * &m).is_zero());
            assert_eq!(p.trace(), ExactScalar::from_int(1 << (r - 1)));
            let c = split_casimir_from_gammas(&rep);
            let mut total = ExactMatrix::zeros(c.matrix.dim());
            for label in SectorLabel::ALL {
                let s = sector_casimir(&rep, &c, label);
                assert_eq!(s.full(), &label.projector(&rep) * &c.matrix);
                total = &total + &s.full();
            }
            assert_eq!(total, c.matrix);
        }
    }

    #[test]
    fn rank_two_mixed_sector_vanishes() {
        let rep = build_gamma(2).unwrap();
        let c = split_casimir_from_gammas(&rep);
        let s = sector_casimir(&rep, &c, SectorLabel::PM);
        assert_eq!(s.compressed.dim(), 4);
        assert!(s.compressed.is_zero());
    }

    #[test]
    fn chirality_duality_rank_two_three() {
        for r in 2..=3 {
            assert!(all_pass(&lemma1_verify(&build_gamma(r).unwrap())));
        }
    }

    #[test]
    fn sector_names_round_trip() {
        for l in SectorLabel::ALL {
            assert_eq!(l.name().parse::<SectorLabel>().unwrap(), l);
        }
    }
}
