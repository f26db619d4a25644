//! The irreducible 2^r-dimensional representation of Cl_{2r}.
//!
//! Generators are labelled 1..=2r. The construction keeps the chirality
//! element diagonal: at every rank step the old generators are tensored with
//! the identity and two new generators `γ_c ⊗ σx`, `γ_c ⊗ σy` are appended,
//! where `γ_c` is the previous chirality element. The new chirality element is
//! then `γ_c ⊗ σz = σz ⊗ … ⊗ σz`.

use serde::Serialize;

use crate::check::CheckRecord;
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::scalar::ExactScalar;

#[derive(Clone, Debug)]
pub struct GammaRep {
    r: usize,
    gammas: Vec<ExactMatrix>,
    chirality: ExactMatrix,
}

fn sigma_x() -> ExactMatrix {
    ExactMatrix::from_entries(2, [(0, 1, ExactScalar::one()), (1, 0, ExactScalar::one())]).unwrap()
}

fn sigma_y() -> ExactMatrix {
    ExactMatrix::from_entries(2, [(0, 1, -ExactScalar::i()), (1, 0, ExactScalar::i())]).unwrap()
}

fn sigma_z() -> ExactMatrix {
    ExactMatrix::diagonal(vec![ExactScalar::one(), ExactScalar::from_int(-1)])
}

/// Builds Γ_1..Γ_{2r} and Γ_{2r+1}.
pub fn build_gamma(r: usize) -> Result<GammaRep> {
    if r == 0 {
        return Err(Error::InvalidRank {
            r,
            reason: "Clifford rank must be at least 1",
        });
    }
    let mut gammas = vec![sigma_x(), sigma_y()];
    let mut chirality = sigma_z();
    for _ in 1..r {
        let id2 = ExactMatrix::identity(2);
        let mut next: Vec<ExactMatrix> = gammas.iter().map(|g| g.kron(&id2)).collect();
        next.push(chirality.kron(&sigma_x()));
        next.push(chirality.kron(&sigma_y()));
        chirality = chirality.kron(&sigma_z());
        gammas = next;
    }
    Ok(GammaRep {
        r,
        gammas,
        chirality,
    })
}

impl GammaRep {
    pub fn r(&self) -> usize {
        self.r
    }

    /// Dimension 2^r of the representation space.
    pub fn dim(&self) -> usize {
        1 << self.r
    }

    /// Number of generators, 2r.
    pub fn n(&self) -> usize {
        2 * self.r
    }

    /// Γ_i for 1 ≤ i ≤ 2r.
    pub fn gamma(&self, i: usize) -> &ExactMatrix {
        &self.gammas[i - 1]
    }

    pub fn gammas(&self) -> &[ExactMatrix] {
        &self.gammas
    }

    /// Γ_{2r+1}.
    pub fn chirality(&self) -> &ExactMatrix {
        &self.chirality
    }

    /// (−i)^r Γ_1 ⋯ Γ_{2r}, recomputed from the generators.
    pub fn chirality_from_product(&self) -> ExactMatrix {
        let prod = self
            .gammas
            .iter()
            .fold(ExactMatrix::identity(self.dim()), |acc, g| &acc * g);
        prod.scale(&(-ExactScalar::i()).pow(self.r as u32))
    }

    /// Spinor image of the so(2r) generator M_ij = ½ Γ_i Γ_j (i ≠ j).
    pub fn so_generator(&self, i: usize, j: usize) -> ExactMatrix {
        (self.gamma(i) * self.gamma(j)).scale(&ExactScalar::from_ratio(1, 2))
    }

    /// The defining Clifford relations and chirality properties, one record each.
    pub fn integrity_checks(&self) -> Vec<CheckRecord> {
        let n = self.n();
        let dim = self.dim();
        let r = self.r;
        let mut out = Vec::new();

        let mut bad = None;
        'outer: for i in 1..=n {
            for j in i..=n {
                let ac = self.gamma(i).anticommutator(self.gamma(j));
                let expected = if i == j {
                    ExactMatrix::scalar(dim, &ExactScalar::from_int(2))
                } else {
                    ExactMatrix::zeros(dim)
                };
                if ac != expected {
                    bad = Some((i, j));
                    break 'outer;
                }
            }
        }
        out.push(CheckRecord::from_bool(
            format!("clifford/r{r}/anticommutation"),
            "Γ_iΓ_j + Γ_jΓ_i = 2δ_ij",
            bad.is_none(),
            || format!("pair {:?}", bad.unwrap()),
        ));

        let non_herm = (1..=n).find(|&i| !self.gamma(i).is_hermitian());
        out.push(CheckRecord::from_bool(
            format!("clifford/r{r}/hermitian"),
            "Γ_i is Hermitian",
            non_herm.is_none(),
            || format!("Γ_{} not Hermitian", non_herm.unwrap()),
        ));

        let allowed = |s: &ExactScalar| {
            [
                ExactScalar::one(),
                -ExactScalar::one(),
                ExactScalar::i(),
                -ExactScalar::i(),
            ]
            .contains(s)
        };
        let off = (1..=n).find(|&i| !self.gamma(i).entries().all(|(_, _, s)| allowed(s)));
        out.push(CheckRecord::from_bool(
            format!("clifford/r{r}/entries"),
            "generator entries lie in {0, ±1, ±i}",
            off.is_none(),
            || format!("Γ_{} has an entry outside the set", off.unwrap()),
        ));

        let c = &self.chirality;
        let one = ExactScalar::one();
        let diag_ok = c.is_diagonal()
            && c.nnz() == dim
            && c.entries().all(|(_, _, s)| *s == one || *s == -one.clone());
        out.push(CheckRecord::from_bool(
            format!("clifford/r{r}/chirality-diagonal"),
            "Γ_{2r+1} diagonal with entries ±1",
            diag_ok,
            || "chirality is not a diagonal ±1 matrix".into(),
        ));
        out.push(CheckRecord::from_bool(
            format!("clifford/r{r}/chirality-square"),
            "Γ_{2r+1}² = 1",
            (c * c).is_identity(),
            || "chirality does not square to the identity".into(),
        ));
        let not_anti = (1..=n).find(|&i| !c.anticommutator(self.gamma(i)).is_zero());
        out.push(CheckRecord::from_bool(
            format!("clifford/r{r}/chirality-anticommutes"),
            "Γ_{2r+1} anticommutes with every Γ_i",
            not_anti.is_none(),
            || format!("commutes badly with Γ_{}", not_anti.unwrap()),
        ));
        out.push(CheckRecord::from_bool(
            format!("clifford/r{r}/chirality-traceless"),
            "tr Γ_{2r+1} = 0",
            c.trace().is_zero(),
            || format!("trace {}", c.trace()),
        ));
        out.push(CheckRecord::matrices_equal(
            format!("clifford/r{r}/chirality-product"),
            "Γ_{2r+1} = (−i)^r Γ_1⋯Γ_{2r}",
            c,
            &self.chirality_from_product(),
        ));
        out
    }
}

/// A sequence of generator labels in 1..=2r, not necessarily ordered.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MultiIndex {
    indices: Vec<usize>,
}

/// Sorted form of a multi-index with the sign of the sorting permutation.
/// `sign == 0` flags a repeated index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalIndex {
    pub sorted: Vec<usize>,
    pub sign: i8,
}

impl MultiIndex {
    pub fn new(indices: Vec<usize>) -> Self {
        MultiIndex { indices }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn is_increasing(&self) -> bool {
        self.indices.windows(2).all(|w| w[0] < w[1])
    }

    pub fn canonical(&self) -> CanonicalIndex {
        let mut sorted = self.indices.clone();
        let mut sign = 1i8;
        // insertion sort, counting transpositions
        for a in 1..sorted.len() {
            let mut b = a;
            while b > 0 && sorted[b - 1] > sorted[b] {
                sorted.swap(b - 1, b);
                sign = -sign;
                b -= 1;
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            sign = 0;
        }
        CanonicalIndex { sorted, sign }
    }
}

/// Levi-Civita symbol of a sequence that should be a permutation of 1..=n.
pub fn levi_civita(seq: &[usize], n: usize) -> i8 {
    let c = MultiIndex::new(seq.to_vec()).canonical();
    if c.sorted != (1..=n).collect::<Vec<_>>() {
        return 0;
    }
    c.sign
}

/// Increasing multi-indices of length k drawn from 1..=n, lexicographic order.
pub fn increasing_indices(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            if n - i + 1 < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(1, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Γ_{[i_1…i_k]}. Distinct generators anticommute, so the antisymmetrised
/// product equals the signed product in sorted order.
pub fn antisym_gamma(rep: &GammaRep, idx: &MultiIndex) -> Result<ExactMatrix> {
    if let Some(&bad) = idx.indices().iter().find(|&&i| i == 0 || i > rep.n()) {
        return Err(Error::IndexOutOfRange(format!(
            "generator label {bad} outside 1..={}",
            rep.n()
        )));
    }
    let c = idx.canonical();
    if c.sign == 0 {
        return Ok(ExactMatrix::zeros(rep.dim()));
    }
    let prod = c
        .sorted
        .iter()
        .fold(ExactMatrix::identity(rep.dim()), |acc, &i| {
            &acc * rep.gamma(i)
        });
    Ok(if c.sign < 0 { -&prod } else { prod })
}

/// Checks Γ_{[idx]}Γ_{2r+1} = (−i)^r (−1)^{⌊k/2⌋} (1/(2r−k)!) ε_{idx, rest} Γ^{[rest]}
/// for an increasing `idx`. The sum over the (2r−k)! orderings of the
/// complement collapses to one term because ε and Γ^{[…]} are both antisymmetric.
/// The representation-space metric is δ, so upper and lower indices agree.
pub fn gamma_duality_check(rep: &GammaRep, idx: &MultiIndex) -> Result<CheckRecord> {
    if !idx.is_increasing() || idx.len() > rep.n() {
        return Err(Error::InvalidArgument(format!(
            "{:?} is not an increasing multi-index",
            idx.indices()
        )));
    }
    let n = rep.n();
    let k = idx.len();
    let lhs = &antisym_gamma(rep, idx)? * rep.chirality();
    let rest: Vec<usize> = (1..=n).filter(|i| !idx.indices().contains(i)).collect();
    let mut full = idx.indices().to_vec();
    full.extend(&rest);
    let eps = levi_civita(&full, n) as i64;
    let coeff = (-ExactScalar::i()).pow(rep.r() as u32)
        * ExactScalar::from_int(if (k / 2).is_multiple_of(2) { eps } else { -eps });
    let rhs = antisym_gamma(rep, &MultiIndex::new(rest))?.scale(&coeff);
    Ok(CheckRecord::matrices_equal(
        format!("clifford/r{}/duality/{:?}", rep.r(), idx.indices()),
        "Γ_{[i_1…i_k]}Γ_{2r+1} equals the dual antisymmetrised product",
        &lhs,
        &rhs,
    ))
}

/// Exact rank of the 4^r antisymmetrised products flattened into rows.
pub fn basis_rank(rep: &GammaRep) -> usize {
    let dim = rep.dim();
    let n = rep.n();
    let mut entries = Vec::new();
    let mut row = 0;
    for k in 0..=n {
        for idx in increasing_indices(n, k) {
            let m = antisym_gamma(rep, &MultiIndex::new(idx)).expect("valid labels");
            for (i, j, s) in m.entries() {
                entries.push((row, i * dim + j, s.clone()));
            }
            row += 1;
        }
    }
    ExactMatrix::from_entries(dim * dim, entries)
        .expect("square by construction")
        .rank()
}
