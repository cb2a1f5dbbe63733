//! Nilpotent Lie algebras built from Schreier graphs, stored as exact
//! structure-constant tensors over a graded basis `𝔳 ⊕ 𝔷 ⊕ 𝔱`.
//!
//! The basis is orthonormal for the metric. Only brackets `[e_i, e_j]` with
//! `i < j` are stored; the rest follow from skew-symmetry.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{dot, format_q, parse_q, q, QMatrix, Subspace, Q};
use crate::schreier::SchreierGraph;
use crate::surd::{Surd, SurdMatrix};

pub type SparseVec = BTreeMap<usize, Q>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("no admissible label: every label fails the single 3- or 4-cycle condition")]
    NoAdmissibleLabel,
    #[error("t-assignment for admissible label `{0}` has both vectors zero")]
    AllZeroTAssignment(String),
    #[error("t-assignment is missing admissible label `{0}`")]
    MissingTAssignment(String),
    #[error("t-assignment mentions label `{0}`, which is not admissible")]
    UnexpectedTAssignment(String),
    #[error("t-assignment vectors must have length {expected}, found {found}")]
    TAssignmentLength { expected: usize, found: usize },
    #[error("t-assignment vectors span a space of dimension {rank}, but {dim} t-basis names were declared")]
    TAssignmentRank { rank: usize, dim: usize },
    #[error("vector of length {found} for an algebra of dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("Jacobi identity fails on {0} basis triples")]
    JacobiFailed(usize),
    #[error("graph and adjoint j-operators differ for label `{0}`")]
    AdjointMismatch(String),
    #[error("algebra does not come from this graph: {0}")]
    GraphMismatch(String),
    #[error("invalid algebra: {0}")]
    Invalid(String),
}

/// Where a basis vector sits in the grading. Indices count within the block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisKind {
    V(usize),
    Z(usize),
    T(usize),
}

impl BasisKind {
    pub fn tag(&self) -> &'static str {
        match self {
            BasisKind::V(_) => "v",
            BasisKind::Z(_) => "z",
            BasisKind::T(_) => "t",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub kind: BasisKind,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotentLieAlgebra {
    basis: Vec<BasisElement>,
    brackets: BTreeMap<(usize, usize), SparseVec>,
    dims: (usize, usize, usize),
}

impl NilpotentLieAlgebra {
    /// Checks that the basis is ordered V, Z, T and drops zero coefficients.
    pub fn from_parts(
        basis: Vec<BasisElement>,
        brackets: BTreeMap<(usize, usize), SparseVec>,
    ) -> Result<Self, LieError> {
        let mut counts = [0usize; 3];
        let mut last_block = 0;
        for b in &basis {
            let (block, idx) = match b.kind {
                BasisKind::V(i) => (0, i),
                BasisKind::Z(i) => (1, i),
                BasisKind::T(i) => (2, i),
            };
            if block < last_block || idx != counts[block] {
                return Err(LieError::Invalid(format!(
                    "basis element `{}` out of V, Z, T order",
                    b.name
                )));
            }
            last_block = block;
            counts[block] += 1;
        }
        let n = basis.len();
        let mut clean = BTreeMap::new();
        for ((i, j), v) in brackets {
            if i >= j || j >= n || v.keys().any(|&k| k >= n) {
                return Err(LieError::Invalid(format!("bad bracket entry ({i}, {j})")));
            }
            let v: SparseVec = v.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if !v.is_empty() {
                clean.insert((i, j), v);
            }
        }
        Ok(Self {
            basis,
            brackets: clean,
            dims: (counts[0], counts[1], counts[2]),
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    /// `(dim 𝔳, dim 𝔷, dim 𝔱)` as labeled by the construction.
    pub fn block_dims(&self) -> (usize, usize, usize) {
        self.dims
    }

    pub fn index_of(&self, kind: BasisKind) -> Option<usize> {
        self.basis.iter().position(|b| b.kind == kind)
    }

    pub fn index_by_name(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    /// Nonzero structure constants `[e_i, e_j]` with `i < j`.
    pub fn structure_constants(&self) -> &BTreeMap<(usize, usize), SparseVec> {
        &self.brackets
    }

    /// `[e_i, e_j]` for any pair.
    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => SparseVec::new(),
            std::cmp::Ordering::Less => self.brackets.get(&(i, j)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => self
                .brackets
                .get(&(j, i))
                .map(|v| v.iter().map(|(&k, c)| (k, -c.clone())).collect())
                .unwrap_or_default(),
        }
    }

    /// Bilinear extension of the tensor.
    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Result<Vec<Q>, LieError> {
        let n = self.dim();
        for v in [x, y] {
            if v.len() != n {
                return Err(LieError::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
        }
        let mut out = vec![Q::zero(); n];
        for (&(i, j), c) in &self.brackets {
            let w = &x[i] * &y[j] - &x[j] * &y[i];
            if w.is_zero() {
                continue;
            }
            for (&k, ck) in c {
                out[k] += &w * ck;
            }
        }
        Ok(out)
    }

    /// `[e_i, w]` for a sparse `w`.
    fn bracket_with(&self, i: usize, w: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&m, wm) in w {
            for (k, c) in self.bracket_basis(i, m) {
                let e = out.entry(k).or_insert_with(Q::zero);
                *e += wm * c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Replaces one structure constant; used to build counterexamples.
    pub fn with_bracket(&self, i: usize, j: usize, value: SparseVec) -> Result<Self, LieError> {
        let mut b = self.brackets.clone();
        b.insert((i, j), value);
        Self::from_parts(self.basis.clone(), b)
    }

    /// True when `[𝔳,𝔳] ⊆ 𝔷`, `[𝔳,𝔷] ⊆ 𝔱` and every other block pair brackets to zero.
    pub fn respects_grading(&self) -> bool {
        self.brackets.iter().all(|(&(i, j), v)| {
            let target = match (self.basis[i].kind, self.basis[j].kind) {
                (BasisKind::V(_), BasisKind::V(_)) => "z",
                (BasisKind::V(_), BasisKind::Z(_)) => "t",
                _ => return false,
            };
            v.keys().all(|&k| self.basis[k].kind.tag() == target)
        })
    }

    pub fn to_doc(&self) -> AlgebraDoc {
        AlgebraDoc {
            basis: self
                .basis
                .iter()
                .map(|b| BasisDoc {
                    kind: b.kind.tag().to_string(),
                    name: b.name.clone(),
                })
                .collect(),
            brackets: self
                .brackets
                .iter()
                .map(|(&(i, j), v)| BracketDoc {
                    i,
                    j,
                    coeffs: v.iter().map(|(&k, c)| (k, format_q(c))).collect(),
                })
                .collect(),
        }
    }

    pub fn from_doc(doc: &AlgebraDoc) -> Result<Self, LieError> {
        let mut counts = [0usize; 3];
        let mut basis = Vec::with_capacity(doc.basis.len());
        for b in &doc.basis {
            let kind = match b.kind.as_str() {
                "v" => BasisKind::V(counts[0]),
                "z" => BasisKind::Z(counts[1]),
                "t" => BasisKind::T(counts[2]),
                other => return Err(LieError::Invalid(format!("unknown basis kind `{other}`"))),
            };
            counts[match kind {
                BasisKind::V(_) => 0,
                BasisKind::Z(_) => 1,
                BasisKind::T(_) => 2,
            }] += 1;
            basis.push(BasisElement {
                kind,
                name: b.name.clone(),
            });
        }
        let mut brackets = BTreeMap::new();
        for e in &doc.brackets {
            let mut v = SparseVec::new();
            for (&k, text) in &e.coeffs {
                let c = parse_q(text)
                    .ok_or_else(|| LieError::Invalid(format!("bad rational `{text}`")))?;
                v.insert(k, c);
            }
            if brackets.insert((e.i, e.j), v).is_some() {
                return Err(LieError::Invalid(format!(
                    "duplicate bracket ({}, {})",
                    e.i, e.j
                )));
            }
        }
        Self::from_parts(basis, brackets)
    }
}

/// JSON form `{basis: [{kind, name}], brackets: [{i, j, coeffs: {k: "p/q"}}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub basis: Vec<BasisDoc>,
    pub brackets: Vec<BracketDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisDoc {
    pub kind: String,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketDoc {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<usize, String>,
}

/// Two-step algebra `𝔳 ⊕ 𝔷` of a Schreier graph. The coefficient of `z_p`
/// in `[v_i, v_j]` is `[v_j = α(z_p)v_i] − [v_j = α(z_p⁻¹)v_i]`.
pub fn two_step(g: &SchreierGraph) -> NilpotentLieAlgebra {
    let (basis, brackets) = two_step_parts(g);
    NilpotentLieAlgebra::from_parts(basis, brackets).expect("two-step construction is well formed")
}

fn two_step_parts(g: &SchreierGraph) -> (Vec<BasisElement>, BTreeMap<(usize, usize), SparseVec>) {
    let n = g.vertex_count();
    let mut basis: Vec<BasisElement> = g
        .vertex_names()
        .iter()
        .enumerate()
        .map(|(i, name)| BasisElement {
            kind: BasisKind::V(i),
            name: name.clone(),
        })
        .collect();
    basis.extend(g.labels().iter().enumerate().map(|(p, name)| BasisElement {
        kind: BasisKind::Z(p),
        name: name.clone(),
    }));
    let mut brackets: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    for p in 0..g.labels().len() {
        let s = g.succ(p);
        let pred = g.pred(p);
        for i in 0..n {
            for (j, sign) in [(s[i], 1), (pred[i], -1)] {
                if i < j {
                    let e = brackets
                        .entry((i, j))
                        .or_default()
                        .entry(n + p)
                        .or_insert_with(Q::zero);
                    *e += q(sign);
                }
            }
        }
    }
    (basis, brackets)
}

/// Choice of `t_{k,1}, t_{k,2}` for each admissible label, as coordinate
/// vectors over the `𝔱` basis named by `names`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TAssignment {
    pub names: Vec<String>,
    pub entries: Vec<TEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TEntry {
    pub label: String,
    pub t1: Vec<Q>,
    pub t2: Vec<Q>,
}

impl TAssignment {
    /// Independent unit vectors for every slot, so `dim 𝔱 = 2m`.
    pub fn generic(g: &SchreierGraph) -> Self {
        let report = g.classify_labels();
        let adm = report.admissible();
        let dim = 2 * adm.len();
        let mut names = Vec::with_capacity(dim);
        let mut entries = Vec::with_capacity(adm.len());
        for (k, (label, _)) in adm.iter().enumerate() {
            let name = &g.labels()[*label];
            names.push(format!("t_{name}_1"));
            names.push(format!("t_{name}_2"));
            let unit = |i: usize| (0..dim).map(|j| q((i == j) as i64)).collect();
            entries.push(TEntry {
                label: name.clone(),
                t1: unit(2 * k),
                t2: unit(2 * k + 1),
            });
        }
        Self { names, entries }
    }

    /// One-dimensional `𝔱 = span{t}` with `t_{k,1} = a·t`, `t_{k,2} = b·t` for one label.
    pub fn single(label: &str, name: &str, a: Q, b: Q) -> Self {
        Self {
            names: vec![name.to_string()],
            entries: vec![TEntry {
                label: label.to_string(),
                t1: vec![a],
                t2: vec![b],
            }],
        }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }
}

/// Three-step extension using the admissible cycles as oriented by
/// [`SchreierGraph::classify_labels`].
pub fn three_step(g: &SchreierGraph, t: &TAssignment) -> Result<NilpotentLieAlgebra, LieError> {
    let report = g.classify_labels();
    let cycles: Vec<(usize, Vec<usize>)> = report
        .admissible()
        .into_iter()
        .map(|(l, c)| (l, c.to_vec()))
        .collect();
    three_step_with_cycles(g, t, &cycles)
}

/// Three-step extension with explicitly oriented admissible cycles, one per
/// admissible label. Each 4-cycle `(a, b, c, d)` gets `[a,z] = t₁`,
/// `[b,z] = t₂`, `[c,z] = −t₁`, `[d,z] = −t₂`; each 3-cycle gets
/// `t₁, t₂, −(t₁+t₂)`.
pub fn three_step_with_cycles(
    g: &SchreierGraph,
    t: &TAssignment,
    cycles: &[(usize, Vec<usize>)],
) -> Result<NilpotentLieAlgebra, LieError> {
    if cycles.is_empty() {
        return Err(LieError::NoAdmissibleLabel);
    }
    let dim = t.dim();
    for e in &t.entries {
        if !cycles.iter().any(|(l, _)| g.labels()[*l] == e.label) {
            return Err(LieError::UnexpectedTAssignment(e.label.clone()));
        }
        for v in [&e.t1, &e.t2] {
            if v.len() != dim {
                return Err(LieError::TAssignmentLength {
                    expected: dim,
                    found: v.len(),
                });
            }
        }
        if e.t1.iter().chain(&e.t2).all(Zero::is_zero) {
            return Err(LieError::AllZeroTAssignment(e.label.clone()));
        }
    }
    let span = Subspace::span(
        dim,
        t.entries.iter().flat_map(|e| [e.t1.clone(), e.t2.clone()]),
    );
    if span.dim() != dim {
        return Err(LieError::TAssignmentRank {
            rank: span.dim(),
            dim,
        });
    }

    let (mut basis, mut brackets) = two_step_parts(g);
    let n_v = g.vertex_count();
    let n_z = g.labels().len();
    let t0 = n_v + n_z;
    basis.extend(t.names.iter().enumerate().map(|(k, name)| BasisElement {
        kind: BasisKind::T(k),
        name: name.clone(),
    }));
    for (label, cycle) in cycles {
        let name = &g.labels()[*label];
        let entry = t
            .entries
            .iter()
            .find(|e| &e.label == name)
            .ok_or_else(|| LieError::MissingTAssignment(name.clone()))?;
        let neg = |v: &[Q]| v.iter().map(|x| -x).collect::<Vec<Q>>();
        let values: Vec<Vec<Q>> = match cycle.len() {
            4 => vec![
                entry.t1.clone(),
                entry.t2.clone(),
                neg(&entry.t1),
                neg(&entry.t2),
            ],
            3 => {
                let sum: Vec<Q> = entry.t1.iter().zip(&entry.t2).map(|(a, b)| a + b).collect();
                vec![entry.t1.clone(), entry.t2.clone(), neg(&sum)]
            }
            other => {
                return Err(LieError::Invalid(format!(
                    "admissible cycle of length {other} for label `{name}`"
                )))
            }
        };
        for (&v, value) in cycle.iter().zip(values) {
            let coeffs: SparseVec = value
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (t0 + k, c))
                .collect();
            if !coeffs.is_empty() {
                brackets.insert((v, n_v + label), coeffs);
            }
        }
    }
    let a = NilpotentLieAlgebra::from_parts(basis, brackets)?;
    let report = verify_jacobi(&a);
    if !report.passed() {
        return Err(LieError::JacobiFailed(report.violations.len()));
    }
    Ok(a)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    pub residual: SparseVec,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiReport {
    pub triples_checked: usize,
    pub violations: Vec<JacobiViolation>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustive exact check of the Jacobi identity over basis triples
/// `i < j < k` (the Jacobiator is alternating, so these suffice).
pub fn verify_jacobi(a: &NilpotentLieAlgebra) -> JacobiReport {
    let n = a.dim();
    let mut violations: Vec<JacobiViolation> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut out = Vec::new();
            for j in i + 1..n {
                let bij = a.bracket_basis(i, j);
                for k in j + 1..n {
                    let mut r = a.bracket_with(i, &a.bracket_basis(j, k));
                    for (m, c) in a.bracket_with(j, &a.bracket_basis(k, i)) {
                        *r.entry(m).or_insert_with(Q::zero) += c;
                    }
                    for (m, c) in a.bracket_with(k, &bij) {
                        *r.entry(m).or_insert_with(Q::zero) += c;
                    }
                    r.retain(|_, c| !c.is_zero());
                    if !r.is_empty() {
                        out.push(JacobiViolation {
                            triple: (i, j, k),
                            residual: r,
                        });
                    }
                }
            }
            out
        })
        .collect();
    violations.sort_by_key(|v| v.triple);
    let triples_checked = if n >= 3 { n * (n - 1) * (n - 2) / 6 } else { 0 };
    JacobiReport {
        triples_checked,
        violations,
    }
}

/// Jacobiator `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]` of three vectors.
pub fn jacobiator(a: &NilpotentLieAlgebra, x: &[Q], y: &[Q], z: &[Q]) -> Result<Vec<Q>, LieError> {
    let t1 = a.bracket(x, &a.bracket(y, z)?)?;
    let t2 = a.bracket(y, &a.bracket(z, x)?)?;
    let t3 = a.bracket(z, &a.bracket(x, y)?)?;
    Ok(t1
        .into_iter()
        .zip(t2)
        .zip(t3)
        .map(|((p, q), r)| p + q + r)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesReport {
    /// `𝔫⁽⁰⁾ = 𝔫 ⊇ 𝔫⁽¹⁾ ⊇ …`, ending with the zero space when nilpotent.
    pub descending: Vec<Subspace>,
    /// `Z₁ = Z(𝔫) ⊆ Z₂ ⊆ …`, ending with `𝔫` when nilpotent.
    pub ascending: Vec<Subspace>,
    /// `k` with `𝔫⁽ᵏ⁾ = 0 ≠ 𝔫⁽ᵏ⁻¹⁾`; `None` if the series stabilises above zero.
    pub step: Option<usize>,
}

impl SeriesReport {
    pub fn descending_dims(&self) -> Vec<usize> {
        self.descending.iter().map(Subspace::dim).collect()
    }

    pub fn ascending_dims(&self) -> Vec<usize> {
        self.ascending.iter().map(Subspace::dim).collect()
    }
}

fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

pub fn central_series(a: &NilpotentLieAlgebra) -> SeriesReport {
    let n = a.dim();
    let mut descending = vec![Subspace::full(n)];
    loop {
        let cur = descending.last().unwrap();
        if cur.dim() == 0 {
            break;
        }
        let next = Subspace::span(
            n,
            cur.basis().iter().flat_map(|x| {
                (0..n).map(move |j| a.bracket(x, &unit(n, j)).expect("dimensions agree"))
            }),
        );
        if next == *cur {
            break;
        }
        descending.push(next);
    }
    let nilpotent = descending.last().unwrap().dim() == 0;
    let step = nilpotent.then(|| descending.len() - 1);

    let mut ascending: Vec<Subspace> = Vec::new();
    let mut prev = Subspace::zero(n);
    loop {
        // w ∈ Z_k  iff  ⟨α, [w, e_j]⟩ = 0 for every α ⊥ Z_{k-1} and every j
        let ann = prev.annihilator();
        let mut rows = Vec::new();
        for alpha in ann.basis() {
            for j in 0..n {
                rows.push(
                    (0..n)
                        .map(|i| {
                            let b = a.bracket_basis(i, j);
                            b.iter()
                                .map(|(&k, c)| &alpha[k] * c)
                                .fold(Q::zero(), |s, x| s + x)
                        })
                        .collect::<Vec<Q>>(),
                );
            }
        }
        let next = if rows.is_empty() {
            Subspace::full(n)
        } else {
            Subspace::span(n, QMatrix::from_rows_with_cols(&rows, n).kernel())
        };
        if next == prev {
            break;
        }
        let full = next.dim() == n;
        ascending.push(next.clone());
        prev = next;
        if full {
            break;
        }
    }
    SeriesReport {
        descending,
        ascending,
        step,
    }
}

/// `j(z)` from the graph: column `v` is `α(z)v − α(z⁻¹)v`.
pub fn j_from_graph(g: &SchreierGraph, label: usize) -> QMatrix {
    let n = g.vertex_count();
    let s = g.succ(label);
    let p = g.pred(label);
    let mut m = QMatrix::zeros(n, n);
    for v in 0..n {
        m[(s[v], v)] += q(1);
        m[(p[v], v)] -= q(1);
    }
    m
}

/// `j(z)` from the metric: entry `(w, v)` is `⟨z, [v, w]⟩`.
pub fn j_from_adjoint(a: &NilpotentLieAlgebra, label: usize) -> Result<QMatrix, LieError> {
    let (n_v, n_z, _) = a.block_dims();
    if label >= n_z {
        return Err(LieError::GraphMismatch(format!(
            "no z-basis element {label}"
        )));
    }
    let z = n_v + label;
    let mut m = QMatrix::zeros(n_v, n_v);
    for v in 0..n_v {
        for w in 0..n_v {
            if let Some(c) = a.bracket_basis(v, w).get(&z) {
                m[(w, v)] = c.clone();
            }
        }
    }
    Ok(m)
}

/// `j(z)` on `𝔳`, computed both ways; the two must agree.
pub fn j_operator(
    a: &NilpotentLieAlgebra,
    g: &SchreierGraph,
    label: usize,
) -> Result<QMatrix, LieError> {
    let (n_v, n_z, _) = a.block_dims();
    if n_v != g.vertex_count() || n_z != g.labels().len() {
        return Err(LieError::GraphMismatch(format!(
            "algebra blocks ({n_v}, {n_z}) vs graph ({}, {})",
            g.vertex_count(),
            g.labels().len()
        )));
    }
    let graph = j_from_graph(g, label);
    let adjoint = j_from_adjoint(a, label)?;
    if graph != adjoint {
        return Err(LieError::AdjointMismatch(g.labels()[label].clone()));
    }
    Ok(graph)
}

/// Failing basis pairs with their difference vectors.
pub type BracketDefects = Vec<((usize, usize), Vec<Surd>)>;

/// Basis pairs `(i, j)` where `φ[e_i, e_j]₁ ≠ [φe_i, φe_j]₂`, with the
/// difference. Empty exactly when `φ` is a bracket homomorphism.
pub fn bracket_defects(
    phi: &SurdMatrix,
    a1: &NilpotentLieAlgebra,
    a2: &NilpotentLieAlgebra,
) -> Result<BracketDefects, LieError> {
    let n = a1.dim();
    if phi.rows() != a2.dim() || phi.cols() != n {
        return Err(LieError::DimensionMismatch {
            expected: n,
            found: phi.cols(),
        });
    }
    let cols: Vec<Vec<Surd>> = (0..n).map(|j| phi.column(j)).collect();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = phi.mul_vec(&sparse_to_surd(&a1.bracket_basis(i, j), n));
            let rhs = bracket_surd(a2, &cols[i], &cols[j]);
            let diff: Vec<Surd> = lhs.iter().zip(&rhs).map(|(x, y)| x - y).collect();
            if diff.iter().any(|d| !d.is_zero()) {
                out.push(((i, j), diff));
            }
        }
    }
    Ok(out)
}

fn sparse_to_surd(v: &SparseVec, n: usize) -> Vec<Surd> {
    let mut out = vec![Surd::zero(); n];
    for (&k, c) in v {
        out[k] = Surd::from(c.clone());
    }
    out
}

/// Bracket of two vectors with entries in `Q(√d)`.
pub fn bracket_surd(a: &NilpotentLieAlgebra, x: &[Surd], y: &[Surd]) -> Vec<Surd> {
    let mut out = vec![Surd::zero(); a.dim()];
    for (&(i, j), c) in a.structure_constants() {
        let w = &(&x[i] * &y[j]) - &(&x[j] * &y[i]);
        if w.is_zero() {
            continue;
        }
        for (&k, ck) in c {
            out[k] = &out[k] + &(&w * &Surd::from(ck.clone()));
        }
    }
    out
}

/// Coordinates of `v` as a dense vector.
pub fn dense(v: &SparseVec, n: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); n];
    for (&k, c) in v {
        out[k] = c.clone();
    }
    out
}

/// `⟨x, y⟩` in the orthonormal basis.
pub fn inner(x: &[Q], y: &[Q]) -> Q {
    dot(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schreier::SchreierGraph;

    fn graph(succ: Vec<Vec<usize>>) -> SchreierGraph {
        let n = succ[0].len();
        let labels = (0..succ.len()).map(|i| format!("z{}", i + 1)).collect();
        SchreierGraph::from_succ(
            (0..n).map(|i| format!("v{}", i + 1)).collect(),
            labels,
            succ,
        )
        .unwrap()
    }

    fn s4() -> SchreierGraph {
        graph(vec![vec![0, 3, 1, 2], vec![3, 0, 1, 2]])
    }

    /// Brute-force ε/ε′ reading straight off the edge list.
    fn eps_oracle(g: &SchreierGraph, i: usize, j: usize, p: usize) -> i64 {
        let edges: Vec<(usize, usize)> =
            g.succ(p).iter().enumerate().map(|(a, &b)| (a, b)).collect();
        edges.contains(&(i, j)) as i64 - edges.contains(&(j, i)) as i64
    }

    #[test]
    fn two_step_matches_edge_scan() {
        let g = s4();
        let a = two_step(&g);
        for i in 0..4 {
            for j in 0..4 {
                let b = dense(&a.bracket_basis(i, j), 6);
                for p in 0..2 {
                    assert_eq!(b[4 + p], q(eps_oracle(&g, i, j, p)), "[{i},{j}] z{p}");
                }
            }
        }
        // [H(34), H(14)] = z1
        assert_eq!(a.bracket_basis(1, 3), SparseVec::from([(4, q(1))]));
        assert!(verify_jacobi(&a).passed());
        assert_eq!(central_series(&a).step, Some(2));
    }

    #[test]
    fn single_vertex_is_abelian() {
        let a = two_step(&graph(vec![vec![0]]));
        assert!(a.structure_constants().is_empty());
        assert_eq!(central_series(&a).step, Some(1));
    }

    #[test]
    fn three_step_on_s4() {
        let g = s4();
        let t = TAssignment::generic(&g);
        assert_eq!(t.dim(), 4);
        let a = three_step(&g, &t).unwrap();
        assert_eq!(a.block_dims(), (4, 2, 4));
        assert!(a.respects_grading());
        let s = central_series(&a);
        assert_eq!(s.step, Some(3));
        assert_eq!(s.descending_dims(), vec![10, 6, 4, 0]);
    }

    #[test]
    fn no_admissible_label() {
        let g = graph(vec![vec![1, 2, 3, 4, 0]]);
        let t = TAssignment::generic(&g);
        assert_eq!(three_step(&g, &t), Err(LieError::NoAdmissibleLabel));
    }

    #[test]
    fn t_assignment_validation() {
        let g = s4();
        let zero = TAssignment::single("z2", "t", q(0), q(0));
        assert!(matches!(
            three_step(&g, &zero),
            Err(LieError::AllZeroTAssignment(_))
        ));
        let bad = TAssignment::single("nope", "t", q(1), q(0));
        assert!(matches!(
            three_step(&g, &bad),
            Err(LieError::UnexpectedTAssignment(_))
        ));
        // z1 left without an assignment
        let partial = TAssignment::single("z2", "t", q(1), q(0));
        assert!(matches!(
            three_step(&g, &partial),
            Err(LieError::MissingTAssignment(_))
        ));
        let mut dependent = TAssignment::generic(&g);
        dependent.names.push("extra".into());
        for e in &mut dependent.entries {
            e.t1.push(q(0));
            e.t2.push(q(0));
        }
        assert!(matches!(
            three_step(&g, &dependent),
            Err(LieError::TAssignmentRank { .. })
        ));
    }

    #[test]
    fn corrupted_tensor_breaks_jacobi() {
        let g = s4();
        let a = three_step(&g, &TAssignment::generic(&g)).unwrap();
        // admissible 3-cycle of z1 is (1, 3, 2); break [v1, z1] = t1
        let z1 = 4;
        let broken = a.with_bracket(1, z1, SparseVec::from([(6, q(2))])).unwrap();
        let r = verify_jacobi(&broken);
        assert!(!r.passed());
        assert!(r.violations.iter().any(|v| v.triple == (1, 2, 3)));
    }

    #[test]
    fn j_operator_agrees_and_is_skew() {
        let g = s4();
        let a = two_step(&g);
        for l in 0..2 {
            let j = j_operator(&a, &g, l).unwrap();
            let mut neg = j.transpose();
            for r in 0..4 {
                for c in 0..4 {
                    neg[(r, c)] = -neg[(r, c)].clone();
                }
            }
            assert_eq!(j, neg);
        }
        // j(z1) kills the loop vertex He
        let j = j_operator(&a, &g, 0).unwrap();
        assert!((0..4).all(|w| j[(w, 0)].is_zero()));
    }

    #[test]
    fn doc_round_trip() {
        let g = s4();
        let a = three_step(&g, &TAssignment::generic(&g)).unwrap();
        let doc = a.to_doc();
        let json = serde_json::to_string(&doc).unwrap();
        let back: AlgebraDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(NilpotentLieAlgebra::from_doc(&back).unwrap(), a);
    }

    #[test]
    fn rotated_cycle_gives_isomorphic_algebra() {
        let g = s4();
        let t = TAssignment::generic(&g);
        let a = three_step(&g, &t).unwrap();
        let mut cycles: Vec<(usize, Vec<usize>)> = g
            .classify_labels()
            .admissible()
            .into_iter()
            .map(|(l, c)| (l, c.to_vec()))
            .collect();
        // rotate the 4-cycle of z2 by one step
        cycles[1].1.rotate_left(1);
        let b = three_step_with_cycles(&g, &t, &cycles).unwrap();
        // identity on 𝔳 ⊕ 𝔷; on 𝔱 for z2: t1 ↦ −t2, t2 ↦ t1
        let mut phi = SurdMatrix::identity(10);
        let (t21, t22) = (8, 9);
        phi[(t21, t21)] = Surd::zero();
        phi[(t22, t22)] = Surd::zero();
        phi[(t22, t21)] = Surd::from(-1);
        phi[(t21, t22)] = Surd::from(1);
        assert!(bracket_defects(&phi, &a, &b).unwrap().is_empty());
        assert!(!bracket_defects(&SurdMatrix::identity(10), &a, &b)
            .unwrap()
            .is_empty());
    }
}
