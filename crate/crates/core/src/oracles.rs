//! Independent ground truth for so(N), N = 2r: structure constants, the
//! Cartan–Killing metric, weight-based Casimir eigenvalues and dimensions.
//!
//! Generators are indexed by labels `(i, j)` with `1 ≤ i < j ≤ N`; the
//! antisymmetric completion M_ji = −M_ij is implicit.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::check::CheckRecord;
use crate::clifford::GammaRep;
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::scalar::{binomial, rat, rat_int, ExactScalar, Rational};

/// Structure data of so(N) on the r(2r−1) labels.
#[derive(Clone, Debug)]
pub struct SoAlgebraData {
    n: usize,
    labels: Vec<(usize, usize)>,
    /// `structure[a][b]` lists `(c, f)` with `[M_a, M_b] = Σ_c f M_c`.
    structure: Vec<Vec<Vec<(usize, i64)>>>,
}

fn delta(a: usize, b: usize) -> i64 {
    (a == b) as i64
}

/// δ^{[k1}_{a} δ^{k2]}_{b}, doubled to stay integral.
fn antisym_delta2(k1: usize, k2: usize, a: usize, b: usize) -> i64 {
    delta(k1, a) * delta(k2, b) - delta(k2, a) * delta(k1, b)
}

/// 2·X^{k1k2}_{i1i2,j1j2}, straight from the closed formula.
pub fn structure_constant_doubled(k: (usize, usize), i: (usize, usize), j: (usize, usize)) -> i64 {
    let (k1, k2) = k;
    let (i1, i2) = i;
    let (j1, j2) = j;
    delta(i2, j1) * antisym_delta2(k1, k2, i1, j2)
        - delta(i2, j2) * antisym_delta2(k1, k2, i1, j1)
        - delta(i1, j1) * antisym_delta2(k1, k2, i2, j2)
        + delta(i1, j2) * antisym_delta2(k1, k2, i2, j1)
}

impl SoAlgebraData {
    pub fn new(n: usize) -> Result<Self> {
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "so(N) oracle needs even N ≥ 4, got {n}"
            )));
        }
        let labels: Vec<(usize, usize)> = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .collect();
        // On labels the coefficient of M_{k1k2} collects X^{k1k2} and −X^{k2k1}, i.e. 2X^{k1k2}.
        let structure = labels
            .iter()
            .map(|&a| {
                labels
                    .iter()
                    .map(|&b| {
                        labels
                            .iter()
                            .enumerate()
                            .filter_map(|(c, &k)| {
                                let f = structure_constant_doubled(k, a, b);
                                (f != 0).then_some((c, f))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(SoAlgebraData {
            n,
            labels,
            structure,
        })
    }

    pub fn for_rank(r: usize) -> Result<Self> {
        Self::new(2 * r)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[(usize, usize)] {
        &self.labels
    }

    pub fn label_index(&self, i: usize, j: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == (i, j))
    }

    pub fn structure(&self, a: usize, b: usize) -> &[(usize, i64)] {
        &self.structure[a][b]
    }

    /// Dense adjoint matrix (ad_a)[c][d] = f^c_{a d}.
    fn ad(&self, a: usize) -> Vec<Vec<i64>> {
        let m = self.labels.len();
        let mut out = vec![vec![0; m]; m];
        for d in 0..m {
            for &(c, f) in &self.structure[a][d] {
                out[c][d] = f;
            }
        }
        out
    }

    /// g_ab = tr(ad_a ad_b) by contraction of the structure constants.
    pub fn killing_from_contraction(&self) -> Vec<Vec<i64>> {
        let m = self.labels.len();
        let ads: Vec<_> = (0..m).map(|a| self.ad(a)).collect();
        let mut g = vec![vec![0; m]; m];
        for a in 0..m {
            for b in a..m {
                let mut t = 0;
                for c in 0..m {
                    for d in 0..m {
                        t += ads[a][c][d] * ads[b][d][c];
                    }
                }
                g[a][b] = t;
                g[b][a] = t;
            }
        }
        g
    }

    /// Closed form 2(N−2)(δ_{i1j2}δ_{i2j1} − δ_{i1j1}δ_{i2j2}).
    pub fn killing_closed_form(&self, a: usize, b: usize) -> i64 {
        let (i1, i2) = self.labels[a];
        let (j1, j2) = self.labels[b];
        2 * (self.n as i64 - 2) * (delta(i1, j2) * delta(i2, j1) - delta(i1, j1) * delta(i2, j2))
    }

    /// Inverse metric on labels, −δ_ab / (2(N−2)).
    pub fn inverse_metric(&self, a: usize, b: usize) -> Rational {
        if a == b {
            rat(-1, 2 * (self.n as i64 - 2))
        } else {
            rat_int(0)
        }
    }

    /// T_f(M_ij) = e_ij − e_ji on C^N.
    pub fn defining_generator(&self, a: usize) -> ExactMatrix {
        let (i, j) = self.labels[a];
        ExactMatrix::from_entries(
            self.n,
            [
                (i - 1, j - 1, ExactScalar::one()),
                (j - 1, i - 1, ExactScalar::from_int(-1)),
            ],
        )
        .expect("indices in range")
    }

    /// Commutators in the defining representation agree with the table.
    pub fn check_against_commutators(&self) -> CheckRecord {
        let m = self.labels.len();
        let gens: Vec<_> = (0..m).map(|a| self.defining_generator(a)).collect();
        for a in 0..m {
            for b in 0..m {
                let lhs = gens[a].commutator(&gens[b]);
                let mut rhs = ExactMatrix::zeros(self.n);
                for &(c, f) in &self.structure[a][b] {
                    rhs = &rhs + &gens[c].scale(&ExactScalar::from_int(f));
                }
                if lhs != rhs {
                    return CheckRecord::fail(
                        format!("oracle/N{}/structure-vs-commutators", self.n),
                        "structure constants reproduce [M_A, M_B] in T_f",
                        format!("labels {:?}, {:?}", self.labels[a], self.labels[b]),
                    );
                }
            }
        }
        CheckRecord::pass(
            format!("oracle/N{}/structure-vs-commutators", self.n),
            "structure constants reproduce [M_A, M_B] in T_f",
        )
    }

    pub fn check_killing(&self) -> CheckRecord {
        let g = self.killing_from_contraction();
        let m = self.labels.len();
        let id = format!("oracle/N{}/killing-metric", self.n);
        let anchor = "contracted Killing metric equals 2(N−2)(δδ − δδ)";
        for a in 0..m {
            for b in 0..m {
                if g[a][b] != self.killing_closed_form(a, b) {
                    return CheckRecord::fail(id, anchor, format!("g[{a}][{b}] = {}", g[a][b]));
                }
            }
        }
        // ḡ · g = 1 on labels
        for a in 0..m {
            let prod = self.inverse_metric(a, a) * rat_int(g[a][a]);
            if prod != rat_int(1) {
                return CheckRecord::fail(id, anchor, format!("ḡg at label {a} is {prod}"));
            }
        }
        CheckRecord::pass(id, anchor)
    }

    pub fn check_antisymmetry(&self) -> CheckRecord {
        let id = format!("oracle/N{}/antisymmetry", self.n);
        let anchor = "X is antisymmetric in each index pair and under A ↔ B";
        let n = self.n;
        for i1 in 1..=n {
            for i2 in 1..=n {
                for j1 in 1..=n {
                    for j2 in 1..=n {
                        for &(k1, k2) in &self.labels {
                            let x = structure_constant_doubled((k1, k2), (i1, i2), (j1, j2));
                            let ok = x == -structure_constant_doubled((k1, k2), (i2, i1), (j1, j2))
                                && x == -structure_constant_doubled((k1, k2), (i1, i2), (j2, j1))
                                && x == -structure_constant_doubled((k2, k1), (i1, i2), (j1, j2))
                                && x == -structure_constant_doubled((k1, k2), (j1, j2), (i1, i2));
                            if !ok {
                                return CheckRecord::fail(
                                    id,
                                    anchor,
                                    format!("k=({k1},{k2}) i=({i1},{i2}) j=({j1},{j2})"),
                                );
                            }
                        }
                    }
                }
            }
        }
        CheckRecord::pass(id, anchor)
    }

    /// Σ_d (f^d_{ab} f^e_{dc} + f^d_{bc} f^e_{da} + f^d_{ca} f^e_{db}) = 0 for all a, b, c, e.
    pub fn check_jacobi(&self) -> CheckRecord {
        let m = self.labels.len();
        let bracket = |x: usize, y: usize, z: usize| -> Vec<i64> {
            // [[M_x, M_y], M_z]
            let mut out = vec![0; m];
            for &(d, f) in &self.structure[x][y] {
                for &(e, g) in &self.structure[d][z] {
                    out[e] += f * g;
                }
            }
            out
        };
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let (p, q, s) = (bracket(a, b, c), bracket(b, c, a), bracket(c, a, b));
                    if (0..m).any(|e| p[e] + q[e] + s[e] != 0) {
                        return CheckRecord::fail(
                            format!("oracle/N{}/jacobi", self.n),
                            "Jacobi identity of the structure constants",
                            format!("labels {a}, {b}, {c}"),
                        );
                    }
                }
            }
        }
        CheckRecord::pass(
            format!("oracle/N{}/jacobi", self.n),
            "Jacobi identity of the structure constants",
        )
    }

    /// ḡ^{AB} T(M_A) T(M_B) for a list of generator images.
    pub fn casimir_contraction(&self, images: &[ExactMatrix]) -> ExactMatrix {
        let dim = images[0].dim();
        let mut acc = ExactMatrix::zeros(dim);
        for (a, x) in images.iter().enumerate() {
            acc = &acc + &(x * x).scale_rational(&self.inverse_metric(a, a));
        }
        acc
    }
}

/// A weight in the orthogonal basis e^(1)..e^(r).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    pub components: Vec<Rational>,
}

impl WeightVector {
    pub fn new(components: Vec<Rational>) -> Self {
        WeightVector { components }
    }

    /// Weyl vector (r−1, r−2, …, 0).
    pub fn weyl(r: usize) -> Self {
        WeightVector::new((0..r).map(|i| rat_int((r - 1 - i) as i64)).collect())
    }
}

/// (λ, λ + 2δ) with (e^(i), e^(j)) = δ^{ij} / (2(N−2)).
pub fn c2_from_weight(lambda: &WeightVector, n: usize) -> Result<Rational> {
    let r = n / 2;
    if !n.is_multiple_of(2) || n < 4 || lambda.components.len() != r {
        return Err(Error::Dimension(format!(
            "weight of length {} for N = {n}",
            lambda.components.len()
        )));
    }
    let delta = WeightVector::weyl(r);
    let mut s = rat_int(0);
    for (l, d) in lambda.components.iter().zip(&delta.components) {
        s += l * (l + d * rat_int(2));
    }
    Ok(s * rat(1, 2 * (n as i64 - 2)))
}

/// Representations with closed-form data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RepKind {
    /// k-th antisymmetric power of the defining representation, k < r.
    Tk(usize),
    /// Self-dual / anti-self-dual halves of the r-th antisymmetric power.
    TrPlusMinus,
    /// Half-spinor representations.
    DeltaPlusMinus,
    /// Defining representation.
    Tf,
}

impl fmt::Display for RepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepKind::Tk(k) => write!(f, "T_{k}"),
            RepKind::TrPlusMinus => write!(f, "T_r_plusminus"),
            RepKind::DeltaPlusMinus => write!(f, "Delta_pm"),
            RepKind::Tf => write!(f, "T_f"),
        }
    }
}

impl RepKind {
    /// Parses the selector names `T_k`, `T_r_plusminus`, `Delta_pm`, `T_f`.
    pub fn parse(name: &str, k: Option<usize>) -> Result<Self> {
        match name {
            "T_k" => k
                .map(RepKind::Tk)
                .ok_or_else(|| Error::InvalidArgument("T_k needs k".into())),
            "T_r_plusminus" => Ok(RepKind::TrPlusMinus),
            "Delta_pm" => Ok(RepKind::DeltaPlusMinus),
            "T_f" => Ok(RepKind::Tf),
            other => Err(Error::InvalidArgument(format!(
                "unknown representation {other}"
            ))),
        }
    }

    /// Highest weight (the + member for the ± pairs).
    pub fn highest_weight(&self, r: usize) -> Result<WeightVector> {
        let comps = match *self {
            RepKind::Tk(k) => {
                check_k(r, k)?;
                (0..r).map(|i| rat_int((i < k) as i64)).collect()
            }
            RepKind::TrPlusMinus => vec![rat_int(1); r],
            RepKind::DeltaPlusMinus => vec![rat(1, 2); r],
            RepKind::Tf => (0..r).map(|i| rat_int((i == 0) as i64)).collect(),
        };
        Ok(WeightVector::new(comps))
    }
}

fn check_k(r: usize, k: usize) -> Result<()> {
    if k > r {
        return Err(Error::InvalidArgument(format!("k = {k} exceeds r = {r}")));
    }
    Ok(())
}

fn check_rank(r: usize) -> Result<()> {
    if r < 2 {
        return Err(Error::InvalidRank {
            r,
            reason: "so(2r) oracles need r ≥ 2",
        });
    }
    Ok(())
}

/// Closed-form quadratic Casimir eigenvalue.
pub fn c2_closed_form(rep: RepKind, r: usize) -> Result<Rational> {
    check_rank(r)?;
    let (r_i, n) = (r as i64, 2 * r as i64);
    Ok(match rep {
        RepKind::Tk(k) => {
            check_k(r, k)?;
            if k == r {
                // T_r is reducible; its halves are TrPlusMinus
                return c2_closed_form(RepKind::TrPlusMinus, r);
            }
            let k = k as i64;
            rat(k * (n - k), 2 * (n - 2))
        }
        RepKind::TrPlusMinus => rat(r_i * r_i, 4 * (r_i - 1)),
        RepKind::DeltaPlusMinus => rat(r_i * (2 * r_i - 1), 16 * (r_i - 1)),
        RepKind::Tf => rat(n - 1, 2 * (n - 2)),
    })
}

pub fn rep_dimension(rep: RepKind, r: usize) -> Result<BigInt> {
    check_rank(r)?;
    Ok(match rep {
        RepKind::Tk(k) => {
            check_k(r, k)?;
            binomial(2 * r as u64, k as u64)
        }
        RepKind::TrPlusMinus => binomial(2 * r as u64, r as u64) / 2,
        RepKind::DeltaPlusMinus => BigInt::from(1u64 << (r - 1)),
        RepKind::Tf => BigInt::from(2 * r),
    })
}

/// Casimir eigenvalue by matrix contraction in T_f.
pub fn c2_matrix_defining(alg: &SoAlgebraData) -> Option<Rational> {
    let gens: Vec<_> = (0..alg.labels().len())
        .map(|a| alg.defining_generator(a))
        .collect();
    alg.casimir_contraction(&gens)
        .identity_multiple()
        .and_then(|s| s.as_real().cloned())
}

/// Casimir eigenvalues by matrix contraction on Δ+ and Δ−, in that order.
pub fn c2_matrix_half_spinors(alg: &SoAlgebraData, rep: &GammaRep) -> [Option<Rational>; 2] {
    let gens: Vec<_> = alg
        .labels()
        .iter()
        .map(|&(i, j)| rep.so_generator(i, j))
        .collect();
    let c = alg.casimir_contraction(&gens);
    let chir = rep.chirality();
    [1i64, -1].map(|sign| {
        let support: Vec<usize> = (0..rep.dim())
            .filter(|&i| chir.get(i, i) == ExactScalar::from_int(sign))
            .collect();
        c.compress(&support)
            .identity_multiple()
            .and_then(|s| s.as_real().cloned())
    })
}

/// Weight formula, closed forms and matrix contractions agree for every
/// representation with closed-form data; the structure-constant tables are
/// checked against commutators and the Killing form.
pub fn consistency_checks(r: usize, rep: &GammaRep) -> Result<Vec<CheckRecord>> {
    check_rank(r)?;
    let n = 2 * r;
    let mut out = Vec::new();
    let mut reps = vec![RepKind::TrPlusMinus, RepKind::DeltaPlusMinus, RepKind::Tf];
    reps.extend((0..r).map(RepKind::Tk));
    for kind in reps {
        let closed = c2_closed_form(kind, r)?;
        let mut w = kind.highest_weight(r)?;
        let plus = c2_from_weight(&w, n)?;
        let last = w.components[r - 1].clone();
        w.components[r - 1] = -last;
        let minus = c2_from_weight(&w, n)?;
        out.push(CheckRecord::from_bool(
            format!("oracles/r{r}/weight-vs-closed/{kind}"),
            "c₂ from (λ, λ + 2δ) equals the closed form",
            plus == closed && minus == closed,
            || format!("weights give {plus}, {minus}; closed form {closed}"),
        ));
    }
    let alg = SoAlgebraData::for_rank(r)?;
    let tf = c2_closed_form(RepKind::Tf, r)?;
    let m = c2_matrix_defining(&alg);
    out.push(CheckRecord::from_bool(
        format!("oracles/r{r}/contraction/T_f"),
        "ḡ^{AB} T(M_A) T(M_B) on T_f equals the closed form",
        m.as_ref() == Some(&tf),
        || format!("contraction {m:?}, closed form {tf}"),
    ));
    let d = c2_closed_form(RepKind::DeltaPlusMinus, r)?;
    let [p, q] = c2_matrix_half_spinors(&alg, rep);
    out.push(CheckRecord::from_bool(
        format!("oracles/r{r}/contraction/Delta_pm"),
        "ḡ^{AB} T(M_A) T(M_B) on Δ± equals the closed form",
        p.as_ref() == Some(&d) && q.as_ref() == Some(&d),
        || format!("contractions {p:?}, {q:?}; closed form {d}"),
    ));
    out.push(alg.check_against_commutators());
    out.push(alg.check_killing());
    Ok(out)
}

impl FromStr for RepKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RepKind::parse(s, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::build_gamma;

    #[test]
    fn adjoint_weight_gives_one() {
        for r in 3..=6 {
            let mut l = vec![rat_int(0); r];
            l[0] = rat_int(1);
            l[1] = rat_int(1);
            assert_eq!(
                c2_from_weight(&WeightVector::new(l), 2 * r).unwrap(),
                rat_int(1)
            );
        }
    }

    #[test]
    fn weight_examples() {
        let spinor = WeightVector::new(vec![rat(1, 2), rat(1, 2), rat(1, 2)]);
        assert_eq!(c2_from_weight(&spinor, 6).unwrap(), rat(15, 32));
        let spinor_m = WeightVector::new(vec![rat(1, 2), rat(1, 2), rat(-1, 2)]);
        assert_eq!(c2_from_weight(&spinor_m, 6).unwrap(), rat(15, 32));
        let vector = WeightVector::new(vec![rat_int(1), rat_int(0), rat_int(0)]);
        assert_eq!(c2_from_weight(&vector, 6).unwrap(), rat(5, 8));
        assert!(c2_from_weight(&vector, 8).is_err());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(
            c2_closed_form(RepKind::DeltaPlusMinus, 5).unwrap(),
            rat(45, 64)
        );
        assert_eq!(c2_closed_form(RepKind::TrPlusMinus, 2).unwrap(), rat_int(1));
        assert_eq!(c2_closed_form(RepKind::Tk(1), 4).unwrap(), rat(7, 12));
        assert_eq!(rep_dimension(RepKind::Tk(3), 5).unwrap(), BigInt::from(120));
        assert_eq!(
            rep_dimension(RepKind::TrPlusMinus, 4).unwrap(),
            BigInt::from(35)
        );
        assert_eq!(
            rep_dimension(RepKind::DeltaPlusMinus, 5).unwrap(),
            BigInt::from(16)
        );
        assert!(c2_closed_form(RepKind::Tk(5), 4).is_err());
    }

    #[test]
    fn closed_forms_match_weights() {
        for r in 2..=6 {
            let mut reps = vec![RepKind::TrPlusMinus, RepKind::DeltaPlusMinus, RepKind::Tf];
            reps.extend((0..r).map(RepKind::Tk));
            for rep in reps {
                let w = rep.highest_weight(r).unwrap();
                assert_eq!(
                    c2_from_weight(&w, 2 * r).unwrap(),
                    c2_closed_form(rep, r).unwrap(),
                    "{rep} r={r}"
                );
            }
            // the − members of the ± pairs
            let mut w = RepKind::TrPlusMinus.highest_weight(r).unwrap();
            w.components[r - 1] = rat_int(-1);
            assert_eq!(
                c2_from_weight(&w, 2 * r).unwrap(),
                c2_closed_form(RepKind::TrPlusMinus, r).unwrap()
            );
        }
    }

    #[test]
    fn killing_and_structure() {
        for r in 2..=4 {
            let alg = SoAlgebraData::for_rank(r).unwrap();
            assert_eq!(alg.labels().len(), r * (2 * r - 1));
            assert!(alg.check_killing().passed());
            assert!(alg.check_against_commutators().passed());
        }
        for r in 2..=3 {
            let alg = SoAlgebraData::for_rank(r).unwrap();
            assert!(alg.check_antisymmetry().passed());
            assert!(alg.check_jacobi().passed());
        }
    }

    #[test]
    fn matrix_contractions() {
        for r in 2..=5 {
            let alg = SoAlgebraData::for_rank(r).unwrap();
            let rep = build_gamma(r).unwrap();
            let tf = c2_closed_form(RepKind::Tf, r).unwrap();
            assert_eq!(c2_matrix_defining(&alg), Some(tf));
            let d = c2_closed_form(RepKind::DeltaPlusMinus, r).unwrap();
            assert_eq!(
                c2_matrix_half_spinors(&alg, &rep),
                [Some(d.clone()), Some(d)]
            );
        }
    }
}
