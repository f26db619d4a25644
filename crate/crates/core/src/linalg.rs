//! Sparse exact square matrices and the tensor-product toolkit.
//!
//! Index convention (project-wide): tensor legs are numbered from 0 and the
//! leftmost factor is the slowest index, so for `V1 ⊗ V2` the basis vector
//! `e_a ⊗ e_b` has index `a * dim(V2) + b`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{ExactScalar, Rational};

/// Products of matrices at or below this dimension use the dense kernel.
pub const DENSE_THRESHOLD: usize = 64;

type Row = Vec<(usize, ExactScalar)>;

/// A square matrix over Q(i) stored as sorted sparse rows.
///
/// Stored entries are always nonzero and column indices within a row are
/// strictly increasing, so `==` is entrywise equality.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    dim: usize,
    rows: Vec<Row>,
}

/// Factor dimensions of a tensor-product space, leftmost leg first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorShape {
    factors: Vec<usize>,
}

impl TensorShape {
    pub fn new(factors: Vec<usize>) -> Result<Self> {
        if factors.is_empty() || factors.contains(&0) {
            return Err(Error::Dimension(format!(
                "invalid tensor shape {factors:?}"
            )));
        }
        Ok(TensorShape { factors })
    }

    /// `legs` copies of a `d`-dimensional factor.
    pub fn uniform(d: usize, legs: usize) -> Self {
        TensorShape {
            factors: vec![d; legs],
        }
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn legs(&self) -> usize {
        self.factors.len()
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().product()
    }

    fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.factors.len()];
        for leg in (0..self.factors.len().saturating_sub(1)).rev() {
            strides[leg] = strides[leg + 1] * self.factors[leg + 1];
        }
        strides
    }

    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for leg in (0..self.factors.len()).rev() {
            out[leg] = index % self.factors[leg];
            index /= self.factors[leg];
        }
        out
    }

    pub fn compose(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (d, f)| acc * f + d)
    }
}

impl ExactMatrix {
    pub fn zeros(dim: usize) -> Self {
        ExactMatrix {
            dim,
            rows: vec![Vec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, &ExactScalar::one())
    }

    /// `s * Identity(dim)`.
    pub fn scalar(dim: usize, s: &ExactScalar) -> Self {
        if s.is_zero() {
            return Self::zeros(dim);
        }
        ExactMatrix {
            dim,
            rows: (0..dim).map(|i| vec![(i, s.clone())]).collect(),
        }
    }

    pub fn diagonal(diag: Vec<ExactScalar>) -> Self {
        let dim = diag.len();
        let rows = diag
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                if s.is_zero() {
                    Vec::new()
                } else {
                    vec![(i, s)]
                }
            })
            .collect();
        ExactMatrix { dim, rows }
    }

    /// Builds a matrix from `(row, col, value)` triples; repeated positions are summed.
    pub fn from_entries<I>(dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, ExactScalar)>,
    {
        let mut acc: Vec<BTreeMap<usize, ExactScalar>> = vec![BTreeMap::new(); dim];
        for (i, j, s) in entries {
            if i >= dim || j >= dim {
                return Err(Error::IndexOutOfRange(format!("({i}, {j}) in dim {dim}")));
            }
            *acc[i].entry(j).or_default() += &s;
        }
        Ok(Self::from_row_maps(dim, acc))
    }

    fn from_row_maps(dim: usize, maps: Vec<BTreeMap<usize, ExactScalar>>) -> Self {
        let rows = maps
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, s)| !s.is_zero()).collect())
            .collect();
        ExactMatrix { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &[(usize, ExactScalar)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> ExactScalar {
        match self.rows[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(pos) => self.rows[i][pos].1.clone(),
            Err(_) => ExactScalar::zero(),
        }
    }

    /// All stored entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &ExactScalar)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(j, s)| (i, *j, s)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries().all(|(i, j, _)| i == j)
    }

    /// If `self = c * Identity`, returns `c`.
    pub fn identity_multiple(&self) -> Option<ExactScalar> {
        if self.dim == 0 {
            return Some(ExactScalar::zero());
        }
        let c = self.get(0, 0);
        (*self == Self::scalar(self.dim, &c)).then_some(c)
    }

    pub fn trace(&self) -> ExactScalar {
        let mut t = ExactScalar::zero();
        for i in 0..self.dim {
            t += &self.get(i, i);
        }
        t
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        if s.is_zero() {
            return Self::zeros(self.dim);
        }
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|(j, v)| (*j, v * s)).collect())
            .collect();
        ExactMatrix {
            dim: self.dim,
            rows,
        }
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(&ExactScalar::real(q.clone()))
    }

    fn check_same_dim(&self, other: &Self, op: &str) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!(
                "{op}: {} vs {}",
                self.dim, other.dim
            )));
        }
        Ok(())
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut p, mut q) = (0, 0);
                while p < a.len() || q < b.len() {
                    let ca = a.get(p).map_or(usize::MAX, |e| e.0);
                    let cb = b.get(q).map_or(usize::MAX, |e| e.0);
                    if ca < cb {
                        out.push(a[p].clone());
                        p += 1;
                    } else if cb < ca {
                        let v = if negate_other {
                            -&b[q].1
                        } else {
                            b[q].1.clone()
                        };
                        out.push((cb, v));
                        q += 1;
                    } else {
                        let v = if negate_other {
                            &a[p].1 - &b[q].1
                        } else {
                            &a[p].1 + &b[q].1
                        };
                        if !v.is_zero() {
                            out.push((ca, v));
                        }
                        p += 1;
                        q += 1;
                    }
                }
                out
            })
            .collect();
        ExactMatrix {
            dim: self.dim,
            rows,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other, "add")?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other, "sub")?;
        Ok(self.merge(other, true))
    }

    /// Matrix product; dense kernel for small dimensions, sparse otherwise.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other, "mul")?;
        if self.dim <= DENSE_THRESHOLD {
            Ok(self.mul_dense(other))
        } else {
            Ok(self.mul_sparse(other))
        }
    }

    /// Row-by-row sparse product, parallel over rows.
    pub fn mul_sparse(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "mul_sparse: dimension mismatch");
        let rows = self
            .rows
            .par_iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, ExactScalar> = BTreeMap::new();
                for (k, a) in row {
                    for (j, b) in &other.rows[*k] {
                        let prod = a * b;
                        acc.entry(*j).and_modify(|v| *v += &prod).or_insert(prod);
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        ExactMatrix {
            dim: self.dim,
            rows,
        }
    }

    /// Product against a dense copy of `other`; cost is `nnz(self) * dim`.
    pub fn mul_dense(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "mul_dense: dimension mismatch");
        let n = self.dim;
        let b = other.to_dense();
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = vec![ExactScalar::zero(); n];
                for (k, a) in row {
                    for (j, bkj) in b[*k].iter().enumerate() {
                        if !bkj.is_zero() {
                            acc[j] += &(a * bkj);
                        }
                    }
                }
                acc.into_iter()
                    .enumerate()
                    .filter(|(_, s)| !s.is_zero())
                    .collect()
            })
            .collect();
        ExactMatrix { dim: n, rows }
    }

    pub fn to_dense(&self) -> Vec<Vec<ExactScalar>> {
        let mut out = vec![vec![ExactScalar::zero(); self.dim]; self.dim];
        for (i, j, s) in self.entries() {
            out[i][j] = s.clone();
        }
        out
    }

    /// `self^exp` by binary exponentiation; `self^0 = Identity`.
    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::identity(self.dim);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let db = other.dim;
        let mut rows = Vec::with_capacity(self.dim * db);
        for arow in &self.rows {
            for brow in &other.rows {
                let mut row = Vec::with_capacity(arow.len() * brow.len());
                for (j1, a) in arow {
                    for (j2, b) in brow {
                        row.push((j1 * db + j2, a * b));
                    }
                }
                rows.push(row);
            }
        }
        ExactMatrix {
            dim: self.dim * db,
            rows,
        }
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<Row> = vec![Vec::new(); self.dim];
        for (i, j, s) in self.entries() {
            rows[j].push((i, s.clone()));
        }
        ExactMatrix {
            dim: self.dim,
            rows,
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut rows: Vec<Row> = vec![Vec::new(); self.dim];
        for (i, j, s) in self.entries() {
            rows[j].push((i, s.conj()));
        }
        ExactMatrix {
            dim: self.dim,
            rows,
        }
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.adjoint()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    /// Traces out `leg` of the tensor structure `shape`.
    pub fn partial_trace(&self, shape: &TensorShape, leg: usize) -> Result<Self> {
        if shape.dim() != self.dim {
            return Err(Error::Dimension(format!(
                "shape {:?} has dim {} but matrix has dim {}",
                shape.factors(),
                shape.dim(),
                self.dim
            )));
        }
        if leg >= shape.legs() {
            return Err(Error::IndexOutOfRange(format!(
                "leg {leg} of {}",
                shape.legs()
            )));
        }
        let mut rest = shape.factors().to_vec();
        rest.remove(leg);
        let out_dim: usize = rest.iter().product();
        let rest_shape = TensorShape { factors: rest };
        let mut acc: Vec<BTreeMap<usize, ExactScalar>> = vec![BTreeMap::new(); out_dim];
        for (i, j, s) in self.entries() {
            let mut di = shape.digits(i);
            let mut dj = shape.digits(j);
            if di[leg] != dj[leg] {
                continue;
            }
            di.remove(leg);
            dj.remove(leg);
            *acc[rest_shape.compose(&di)]
                .entry(rest_shape.compose(&dj))
                .or_default() += s;
        }
        Ok(Self::from_row_maps(out_dim, acc))
    }

    /// Lifts an operator on the legs `legs` (taken in the listed order) of
    /// `shape` to the whole space, acting as the identity on the other legs.
    pub fn lift(&self, shape: &TensorShape, legs: &[usize]) -> Result<Self> {
        let sub_factors: Vec<usize> = legs
            .iter()
            .map(|&l| {
                shape
                    .factors()
                    .get(l)
                    .copied()
                    .ok_or_else(|| Error::IndexOutOfRange(format!("leg {l}")))
            })
            .collect::<Result<_>>()?;
        let sub = TensorShape::new(sub_factors)?;
        if sub.dim() != self.dim {
            return Err(Error::Dimension(format!(
                "operator dim {} does not match legs {legs:?}",
                self.dim
            )));
        }
        let mut seen = legs.to_vec();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != legs.len() {
            return Err(Error::InvalidArgument(format!("repeated leg in {legs:?}")));
        }
        let strides = shape.strides();
        let rows = (0..shape.dim())
            .into_par_iter()
            .map(|x| {
                let digits = shape.digits(x);
                let s: Vec<usize> = legs.iter().map(|&l| digits[l]).collect();
                let base = x - legs.iter().map(|&l| digits[l] * strides[l]).sum::<usize>();
                let mut row: Row = self.rows[sub.compose(&s)]
                    .iter()
                    .map(|(t, v)| {
                        let td = sub.digits(*t);
                        let y = base
                            + legs
                                .iter()
                                .zip(&td)
                                .map(|(&l, d)| d * strides[l])
                                .sum::<usize>();
                        (y, v.clone())
                    })
                    .collect();
                row.sort_unstable_by_key(|e| e.0);
                row
            })
            .collect();
        Ok(ExactMatrix {
            dim: shape.dim(),
            rows,
        })
    }

    /// Restriction to the coordinate subspace spanned by `support` (sorted, distinct).
    pub fn compress(&self, support: &[usize]) -> Self {
        let mut pos = HashMap::with_capacity(support.len());
        for (k, &s) in support.iter().enumerate() {
            pos.insert(s, k);
        }
        let rows = support
            .iter()
            .map(|&i| {
                self.rows[i]
                    .iter()
                    .filter_map(|(j, v)| pos.get(j).map(|&k| (k, v.clone())))
                    .collect()
            })
            .collect();
        ExactMatrix {
            dim: support.len(),
            rows,
        }
    }

    /// Inverse of [`compress`](Self::compress): places `self` on `support` inside `dim`.
    pub fn embed(&self, support: &[usize], dim: usize) -> Result<Self> {
        if support.len() != self.dim || support.iter().any(|&s| s >= dim) {
            return Err(Error::Dimension("support does not fit".into()));
        }
        let mut rows: Vec<Row> = vec![Vec::new(); dim];
        for (i, row) in self.rows.iter().enumerate() {
            let mut r: Row = row.iter().map(|(j, v)| (support[*j], v.clone())).collect();
            r.sort_unstable_by_key(|e| e.0);
            rows[support[i]] = r;
        }
        Ok(ExactMatrix { dim, rows })
    }

    /// First position (row-major) where `self` and `other` differ.
    pub fn first_difference(
        &self,
        other: &Self,
    ) -> Option<(usize, usize, ExactScalar, ExactScalar)> {
        if self.dim != other.dim {
            return Some((
                usize::MAX,
                usize::MAX,
                ExactScalar::zero(),
                ExactScalar::zero(),
            ));
        }
        for i in 0..self.dim {
            if self.rows[i] == other.rows[i] {
                continue;
            }
            let mut cols: Vec<usize> = self.rows[i]
                .iter()
                .chain(&other.rows[i])
                .map(|e| e.0)
                .collect();
            cols.sort_unstable();
            for j in cols {
                let (a, b) = (self.get(i, j), other.get(i, j));
                if a != b {
                    return Some((i, j, a, b));
                }
            }
        }
        None
    }

    /// Exact rank by incremental Gaussian elimination over Q(i).
    pub fn rank(&self) -> usize {
        // pivot column -> reduced row whose leading entry is 1 at that column
        let mut pivots: HashMap<usize, Row> = HashMap::new();
        for row in &self.rows {
            let mut cur: BTreeMap<usize, ExactScalar> = row.iter().cloned().collect();
            while let Some((&lead, lead_val)) = cur.iter().next() {
                match pivots.get(&lead) {
                    Some(prow) => {
                        let f = lead_val.clone();
                        for (j, v) in prow {
                            let delta = &f * v;
                            let e = cur.entry(*j).or_default();
                            *e -= &delta;
                            if e.is_zero() {
                                cur.remove(j);
                            }
                        }
                    }
                    None => {
                        let inv = lead_val.inv().expect("stored entries are nonzero");
                        let prow: Row = cur.iter().map(|(j, v)| (*j, v * &inv)).collect();
                        pivots.insert(lead, prow);
                        break;
                    }
                }
            }
        }
        pivots.len()
    }

    pub fn dump(&self) -> MatrixDump {
        MatrixDump {
            dim: self.dim,
            entries: self
                .entries()
                .map(|(i, j, s)| {
                    (
                        i,
                        j,
                        crate::scalar::format_rational(&s.re),
                        crate::scalar::format_rational(&s.im),
                    )
                })
                .collect(),
        }
    }

    pub fn from_dump(dump: &MatrixDump) -> Result<Self> {
        let entries = dump
            .entries
            .iter()
            .map(|(i, j, re, im)| {
                Ok((
                    *i,
                    *j,
                    ExactScalar::new(
                        crate::scalar::parse_rational(re)?,
                        crate::scalar::parse_rational(im)?,
                    ),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_entries(dump.dim, entries)
    }
}

/// JSON dump format: `{dim, entries: [[i, j, "re", "im"], ...]}` sorted by `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDump {
    pub dim: usize,
    pub entries: Vec<(usize, usize, String, String)>,
}

/// The swap `v ⊗ w -> w ⊗ v` on `C^d ⊗ C^d`.
pub fn permutation_operator(d: usize) -> ExactMatrix {
    let rows = (0..d * d)
        .map(|x| {
            let (a, b) = (x / d, x % d);
            vec![(b * d + a, ExactScalar::one())]
        })
        .collect();
    ExactMatrix { dim: d * d, rows }
}

/// Horner evaluation of `Σ coeffs[j] m^j`.
pub fn poly_eval(coeffs: &[ExactScalar], m: &ExactMatrix) -> ExactMatrix {
    let n = m.dim();
    let mut acc = ExactMatrix::zeros(n);
    for c in coeffs.iter().rev() {
        acc = &(&acc * m) + &ExactMatrix::scalar(n, c);
    }
    acc
}

/// Horner evaluation with rational coefficients.
pub fn poly_eval_rational(coeffs: &[Rational], m: &ExactMatrix) -> ExactMatrix {
    let c: Vec<ExactScalar> = coeffs.iter().cloned().map(ExactScalar::real).collect();
    poly_eval(&c, m)
}

impl<'a> Add<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_add(rhs).expect("matrix add")
    }
}

impl<'a> Sub<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_sub(rhs).expect("matrix sub")
    }
}

impl<'a> Mul<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_mul(rhs).expect("matrix mul")
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        self.scale(&-ExactScalar::one())
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactMatrix(dim={}, nnz={})", self.dim, self.nnz())?;
        if self.dim <= 8 {
            for i in 0..self.dim {
                write!(f, "\n  [")?;
                for j in 0..self.dim {
                    write!(f, " {}", self.get(i, j))?;
                }
                write!(f, " ]")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use proptest::prelude::*;

    fn s(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    fn sigma_z() -> ExactMatrix {
        ExactMatrix::diagonal(vec![s(1), s(-1)])
    }

    #[test]
    fn kron_of_identities() {
        assert_eq!(
            ExactMatrix::identity(2).kron(&ExactMatrix::identity(3)),
            ExactMatrix::identity(6)
        );
    }

    #[test]
    fn kron_of_diagonals() {
        let z = sigma_z();
        assert_eq!(
            z.kron(&z),
            ExactMatrix::diagonal(vec![s(1), s(-1), s(-1), s(1)])
        );
    }

    #[test]
    fn kron_index_convention() {
        let a = ExactMatrix::from_entries(2, [(0, 1, s(2))]).unwrap();
        let b = ExactMatrix::from_entries(3, [(2, 0, s(5))]).unwrap();
        let k = a.kron(&b);
        assert_eq!(k.get(2, 3), s(10));
        assert_eq!(k.nnz(), 1);
    }

    #[test]
    fn swap_operator() {
        assert_eq!(permutation_operator(1), ExactMatrix::identity(1));
        let p = permutation_operator(2);
        let expected =
            ExactMatrix::from_entries(4, [(0, 0, s(1)), (3, 3, s(1)), (1, 2, s(1)), (2, 1, s(1))])
                .unwrap();
        assert_eq!(p, expected);
        for d in 1..6 {
            let p = permutation_operator(d);
            assert_eq!(p.trace(), s(d as i64));
            assert!((&p * &p).is_identity());
        }
    }

    #[test]
    fn partial_trace_of_swap_is_identity() {
        // brute-force index sum: (tr_2 P)[a][c] = Σ_b P[(a,b),(c,b)] = Σ_b δ_{ab} δ_{bc}
        let p = permutation_operator(2);
        let mut oracle = vec![vec![0i64; 2]; 2];
        for (a, row) in oracle.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                for b in 0..2 {
                    if p.get(a * 2 + b, c * 2 + b) == s(1) {
                        *v += 1;
                    }
                }
            }
        }
        assert_eq!(oracle, vec![vec![1, 0], vec![0, 1]]);
        let shape = TensorShape::uniform(2, 2);
        assert_eq!(
            p.partial_trace(&shape, 1).unwrap(),
            ExactMatrix::identity(2)
        );
    }

    #[test]
    fn partial_trace_of_identity() {
        let shape = TensorShape::uniform(3, 2);
        let t = ExactMatrix::identity(9).partial_trace(&shape, 1).unwrap();
        assert_eq!(t, ExactMatrix::scalar(3, &s(3)));
    }

    #[test]
    fn partial_trace_shape_mismatch() {
        let shape = TensorShape::uniform(3, 2);
        assert!(ExactMatrix::identity(8).partial_trace(&shape, 0).is_err());
        assert!(ExactMatrix::identity(9).partial_trace(&shape, 2).is_err());
    }

    #[test]
    fn poly_eval_basics() {
        let m = ExactMatrix::from_entries(3, [(0, 1, s(1)), (1, 2, s(2)), (2, 0, s(-1))]).unwrap();
        assert_eq!(poly_eval(&[s(7)], &m), ExactMatrix::scalar(3, &s(7)));
        assert_eq!(poly_eval(&[s(0), s(1)], &m), m);
        let p = poly_eval(&[s(1), s(2), s(3)], &m);
        let direct = &(&ExactMatrix::identity(3) + &m.scale(&s(2))) + &(&m * &m).scale(&s(3));
        assert_eq!(p, direct);
    }

    #[test]
    fn lift_matches_kron() {
        let a = ExactMatrix::from_entries(2, [(0, 1, s(1)), (1, 0, s(3))]).unwrap();
        let shape = TensorShape::uniform(2, 3);
        let id2 = ExactMatrix::identity(2);
        assert_eq!(a.lift(&shape, &[0]).unwrap(), a.kron(&id2).kron(&id2));
        assert_eq!(a.lift(&shape, &[2]).unwrap(), id2.kron(&id2).kron(&a));
        // swapping the order of the legs conjugates by the swap
        let b = a.kron(&sigma_z());
        let p = permutation_operator(2);
        let swapped = &(&p * &b) * &p;
        assert_eq!(
            b.lift(&TensorShape::uniform(2, 2), &[1, 0]).unwrap(),
            swapped
        );
    }

    #[test]
    fn rank_and_compress() {
        let m = ExactMatrix::from_entries(
            3,
            [
                (0, 0, s(1)),
                (0, 1, s(2)),
                (1, 0, s(2)),
                (1, 1, s(4)),
                (2, 2, ExactScalar::i()),
            ],
        )
        .unwrap();
        assert_eq!(m.rank(), 2);
        let c = m.compress(&[0, 2]);
        assert_eq!(c.dim(), 2);
        assert_eq!(c.get(1, 1), ExactScalar::i());
        assert_eq!(c.embed(&[0, 2], 3).unwrap().get(2, 2), ExactScalar::i());
    }

    #[test]
    fn dump_is_sorted_and_round_trips() {
        let m = ExactMatrix::from_entries(
            2,
            [
                (1, 0, ExactScalar::new(rat(1, 2), rat(-1, 3))),
                (0, 1, s(4)),
            ],
        )
        .unwrap();
        let d = m.dump();
        assert_eq!(d.entries[0].0, 0);
        let json = serde_json::to_string(&d).unwrap();
        assert!(json.contains("[1,0,\"1/2\",\"-1/3\"]"));
        let back: MatrixDump = serde_json::from_str(&json).unwrap();
        assert_eq!(ExactMatrix::from_dump(&back).unwrap(), m);
    }

    fn small_matrix(dim: usize) -> impl Strategy<Value = ExactMatrix> {
        proptest::collection::vec((0..dim, 0..dim, -3i64..4, -2i64..3), 0..(2 * dim)).prop_map(
            move |es| {
                ExactMatrix::from_entries(
                    dim,
                    es.into_iter()
                        .map(|(i, j, a, b)| (i, j, ExactScalar::new(rat(a, 1), rat(b, 2)))),
                )
                .unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn mixed_product_rule(a in small_matrix(2), b in small_matrix(3), c in small_matrix(2), d in small_matrix(3)) {
            prop_assert_eq!(&a.kron(&b) * &c.kron(&d), (&a * &c).kron(&(&b * &d)));
            prop_assert_eq!(a.kron(&b).trace(), &a.trace() * &b.trace());
        }

        #[test]
        fn kron_associative(a in small_matrix(2), b in small_matrix(2), c in small_matrix(3)) {
            prop_assert_eq!(a.kron(&b).kron(&c), a.kron(&b.kron(&c)));
        }

        #[test]
        fn successive_partial_traces_give_full_trace(a in small_matrix(2), b in small_matrix(3), noise in small_matrix(6)) {
            let m = &a.kron(&b) + &noise;
            let shape = TensorShape::new(vec![2, 3]).unwrap();
            let t1 = m.partial_trace(&shape, 1).unwrap();
            prop_assert_eq!(t1.trace(), m.trace());
            let t0 = t1.partial_trace(&TensorShape::new(vec![2]).unwrap(), 0).unwrap();
            prop_assert_eq!(t0.get(0, 0), m.trace());
            prop_assert_eq!(a.kron(&b).partial_trace(&shape, 1).unwrap(), a.scale(&b.trace()));
        }

        #[test]
        fn dense_and_sparse_products_agree(a in small_matrix(5), b in small_matrix(5)) {
            prop_assert_eq!(a.mul_dense(&b), a.mul_sparse(&b));
        }
    }
}
