//! Transplantation between the coset representations of a Gassmann-Sunada
//! pair, and the induced isometry of the two-step algebras.

use nalgebra::DMatrix;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{FiniteGroup, DEFAULT_ELEMENT_CAP};
use crate::lie::{bracket_defects, j_from_graph, NilpotentLieAlgebra};
use crate::linalg::{q, QMatrix, Q};
use crate::perm::Permutation;
use crate::schreier::SchreierGraph;
use crate::surd::{Surd, SurdMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GassmannError {
    #[error("coset counts differ: {0} vs {1}")]
    IndexMismatch(usize, usize),
    #[error("the two graphs carry different labels")]
    LabelMismatch,
    #[error("no orthogonal element in the intertwiner space")]
    NoOrthogonalElement,
    #[error("map has shape {rows}x{cols}, expected {expected}x{expected}")]
    DimensionMismatch {
        rows: usize,
        cols: usize,
        expected: usize,
    },
    #[error("extended map is not an isometry: {pairs} bracket pairs fail, residual {residual}")]
    IsometryCheckFailed { pairs: usize, residual: String },
    #[error("map is not exactly orthogonal")]
    NotOrthogonal,
}

/// An orthogonal map found either exactly or numerically.
#[derive(Debug, Clone, PartialEq)]
pub enum LinearMap {
    Exact(SurdMatrix),
    /// Float fallback; `orthogonality_error` is `‖TᵀT − I‖∞`.
    Approximate {
        rows: Vec<Vec<f64>>,
        orthogonality_error: f64,
    },
}

impl LinearMap {
    pub fn is_exact(&self) -> bool {
        matches!(self, LinearMap::Exact(_))
    }

    pub fn exact(&self) -> Option<&SurdMatrix> {
        match self {
            LinearMap::Exact(m) => Some(m),
            LinearMap::Approximate { .. } => None,
        }
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        match self {
            LinearMap::Exact(m) => m.to_f64_rows(),
            LinearMap::Approximate { rows, .. } => rows.clone(),
        }
    }

    pub fn to_doc(&self) -> LinearMapDoc {
        match self {
            LinearMap::Exact(m) => LinearMapDoc {
                exact: true,
                rows: m
                    .to_rows()
                    .iter()
                    .map(|r| r.iter().map(Surd::to_text).collect())
                    .collect(),
            },
            LinearMap::Approximate { rows, .. } => LinearMapDoc {
                exact: false,
                rows: rows
                    .iter()
                    .map(|r| r.iter().map(|x| format!("{x:e}")).collect())
                    .collect(),
            },
        }
    }

    pub fn from_doc(doc: &LinearMapDoc) -> Option<Self> {
        if doc.exact {
            let rows = doc
                .rows
                .iter()
                .map(|r| r.iter().map(|s| Surd::parse(s)).collect::<Option<Vec<_>>>())
                .collect::<Option<Vec<_>>>()?;
            Some(LinearMap::Exact(SurdMatrix::from_rows(rows)))
        } else {
            let rows: Vec<Vec<f64>> = doc
                .rows
                .iter()
                .map(|r| r.iter().map(|s| s.parse().ok()).collect::<Option<Vec<_>>>())
                .collect::<Option<Vec<_>>>()?;
            let err = orthogonality_error(&rows);
            Some(LinearMap::Approximate {
                rows,
                orthogonality_error: err,
            })
        }
    }
}

/// JSON form: row-major strings, `"p/q"` or `"a+b*sqrt(d)"` when exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearMapDoc {
    pub exact: bool,
    pub rows: Vec<Vec<String>>,
}

fn check_pair(g1: &SchreierGraph, g2: &SchreierGraph) -> Result<usize, GassmannError> {
    if g1.vertex_count() != g2.vertex_count() {
        return Err(GassmannError::IndexMismatch(
            g1.vertex_count(),
            g2.vertex_count(),
        ));
    }
    if g1.labels() != g2.labels() {
        return Err(GassmannError::LabelMismatch);
    }
    Ok(g1.vertex_count())
}

/// Exact basis of `{T : T·A₁(z) = A₂(z)·T for every label z}`, where `A_i(z)`
/// is the permutation matrix of `α_i(z)` (`A e_v = e_{α(z)v}`).
pub fn intertwiner_basis(
    g1: &SchreierGraph,
    g2: &SchreierGraph,
) -> Result<Vec<QMatrix>, GassmannError> {
    let n = check_pair(g1, g2)?;
    let var = |a: usize, b: usize| a * n + b;
    let mut rows = Vec::new();
    for l in 0..g1.labels().len() {
        let s1 = g1.succ(l);
        let p2 = g2.pred(l);
        // (T A₁)[a][v] = T[a][s1(v)],  (A₂ T)[a][v] = T[p2(a)][v]
        for (a, &pa) in p2.iter().enumerate() {
            for (v, &sv) in s1.iter().enumerate() {
                let (x, y) = (var(a, sv), var(pa, v));
                if x == y {
                    continue;
                }
                let mut row = vec![Q::zero(); n * n];
                row[x] = q(1);
                row[y] = q(-1);
                rows.push(row);
            }
        }
    }
    let system = QMatrix::from_rows_with_cols(&rows, n * n);
    Ok(system
        .kernel()
        .into_iter()
        .map(|k| QMatrix::from_rows(&k.chunks(n).map(<[Q]>::to_vec).collect::<Vec<_>>()))
        .collect())
}

/// An orthogonal element of the span of `basis`.
///
/// For one- and two-dimensional spans the element is found exactly, possibly
/// with entries in a quadratic field. Otherwise, or if that fails, a polar
/// decomposition is computed numerically, then rounded to rationals and
/// re-verified; if rounding fails the float map is returned.
pub fn orthogonal_intertwiner(basis: &[QMatrix]) -> Result<LinearMap, GassmannError> {
    let first = basis.first().ok_or(GassmannError::NoOrthogonalElement)?;
    let n = first.rows();
    if basis.iter().any(|b| b.rows() != n || b.cols() != n) {
        return Err(GassmannError::DimensionMismatch {
            rows: first.rows(),
            cols: first.cols(),
            expected: n,
        });
    }
    let exact = match basis.len() {
        1 => exact_one(&basis[0]),
        2 => exact_two(&basis[0], &basis[1]),
        _ => None,
    };
    if let Some(m) = exact {
        return Ok(LinearMap::Exact(m));
    }
    numeric_polar(basis)
}

fn gram(a: &QMatrix, b: &QMatrix) -> QMatrix {
    a.transpose().mul(b)
}

fn scalar_of(m: &QMatrix) -> Option<Q> {
    let c = m[(0, 0)].clone();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let want = if i == j { c.clone() } else { Q::zero() };
            if m[(i, j)] != want {
                return None;
            }
        }
    }
    Some(c)
}

fn exact_one(t: &QMatrix) -> Option<SurdMatrix> {
    let c = scalar_of(&gram(t, t))?;
    if !c.is_positive() {
        return None;
    }
    let s = Surd::sqrt_of_rational(&c)?.recip()?;
    let m = SurdMatrix::from_q(t).scale(&s);
    m.is_orthogonal().then_some(m)
}

/// `T = a(T₁ + rT₂)` with `(T₁+rT₂)ᵀ(T₁+rT₂) = P + 2rS + r²R` scalar, or `T = aT₂`.
fn exact_two(t1: &QMatrix, t2: &QMatrix) -> Option<SurdMatrix> {
    let p = gram(t1, t1);
    let r = gram(t2, t2);
    let cross = gram(t1, t2);
    let n = p.rows();
    // constraints: off-diagonal entries vanish, diagonal entries all equal (0,0)
    let entry = |i: usize, j: usize| -> [Q; 3] {
        let s = (&cross[(i, j)] + &cross[(j, i)]) / q(2);
        [p[(i, j)].clone(), q(2) * s, r[(i, j)].clone()]
    };
    let mut polys: Vec<Vec<Q>> = Vec::new();
    let d00 = entry(0, 0);
    for i in 0..n {
        for j in i..n {
            let e = entry(i, j);
            let poly: Vec<Q> = if i == j {
                e.iter().zip(&d00).map(|(a, b)| a - b).collect()
            } else {
                e.to_vec()
            };
            polys.push(poly);
        }
    }
    let g = polys.iter().fold(Vec::new(), |acc, p| poly_gcd(&acc, p));
    let mut candidates: Vec<Surd> = Vec::new();
    match trim(&g).len() {
        // every r works
        0 => candidates.push(Surd::zero()),
        1 => {}
        2 => candidates.push(Surd::from(-&g[0] / &g[1])),
        _ => {
            let (c0, c1, c2) = (&g[0], &g[1], &g[2]);
            let disc = c1 * c1 - q(4) * c2 * c0;
            if !disc.is_negative() {
                if let Some(root) = Surd::sqrt_of_rational(&disc) {
                    let denom = Surd::from(q(2) * c2).recip()?;
                    let minus_b = Surd::from(-c1.clone());
                    candidates.push(&(&minus_b + &root) * &denom);
                    candidates.push(&(&minus_b - &root) * &denom);
                }
            }
        }
    }
    let s1 = SurdMatrix::from_q(t1);
    let s2 = SurdMatrix::from_q(t2);
    for rr in candidates {
        let m = s1.add(&s2.scale(&rr));
        if let Some(t) = normalise(&m) {
            return Some(t);
        }
    }
    normalise(&s2)
}

/// Scales `m` to be orthogonal when `mᵀm` is a positive scalar with an exact root.
fn normalise(m: &SurdMatrix) -> Option<SurdMatrix> {
    let g = m.transpose().mul(m);
    let c = g[(0, 0)].clone();
    if c.signum() <= 0 || g != SurdMatrix::identity(g.rows()).scale(&c) {
        return None;
    }
    let root = c.sqrt()?;
    let t = m.scale(&root.recip()?);
    t.is_orthogonal().then_some(t)
}

fn trim(p: &[Q]) -> &[Q] {
    let mut end = p.len();
    while end > 0 && p[end - 1].is_zero() {
        end -= 1;
    }
    &p[..end]
}

/// Monic gcd of two polynomials over `Q` (coefficients lowest degree first).
fn poly_gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut a = trim(a).to_vec();
    let mut b = trim(b).to_vec();
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(lead) = a.last().cloned() {
        for c in &mut a {
            *c = &*c / &lead;
        }
    }
    a
}

fn poly_rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    let lead = b.last().expect("divisor is nonzero");
    while trim(&r).len() >= b.len() {
        let len = trim(&r).len();
        let f = &r[len - 1] / lead;
        let shift = len - b.len();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        r.truncate(len - 1);
    }
    trim(&r).to_vec()
}

fn orthogonality_error(rows: &[Vec<f64>]) -> f64 {
    let n = rows.len();
    let m = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    let e = m.transpose() * &m - DMatrix::identity(n, n);
    e.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}

fn numeric_polar(basis: &[QMatrix]) -> Result<LinearMap, GassmannError> {
    let n = basis[0].rows();
    let f: Vec<DMatrix<f64>> = basis
        .iter()
        .map(|b| DMatrix::from_fn(n, n, |i, j| b[(i, j)].to_f64().unwrap_or(f64::NAN)))
        .collect();
    // a few fixed combinations; the first invertible one is used
    for weights in [
        (0..basis.len()).map(|_| 1.0).collect::<Vec<f64>>(),
        (0..basis.len()).map(|i| (i + 1) as f64).collect(),
        (0..basis.len()).map(|i| 1.0 / (i as f64 + 1.5)).collect(),
    ] {
        let mut t0 = DMatrix::zeros(n, n);
        for (w, b) in weights.iter().zip(&f) {
            t0 += b * *w;
        }
        let svd = t0.svd(true, true);
        if svd.singular_values.min() < 1e-9 {
            continue;
        }
        let u = svd.u.expect("requested") * svd.v_t.expect("requested");
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| u[(i, j)]).collect())
            .collect();
        if let Some(m) = reconstruct(&rows, basis) {
            return Ok(LinearMap::Exact(m));
        }
        let err = orthogonality_error(&rows);
        if err <= 1e-9 {
            return Ok(LinearMap::Approximate {
                rows,
                orthogonality_error: err,
            });
        }
    }
    Err(GassmannError::NoOrthogonalElement)
}

/// Rounds each entry to a nearby rational and keeps the result only if it
/// is exactly orthogonal and lies in the span of `basis`.
fn reconstruct(rows: &[Vec<f64>], basis: &[QMatrix]) -> Option<SurdMatrix> {
    let n = rows.len();
    let qrows: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| rational_approx(x, 1 << 12))
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<Vec<_>>>()?;
    let m = QMatrix::from_rows(&qrows);
    if m.transpose().mul(&m) != QMatrix::identity(n) {
        return None;
    }
    // membership in the span: solve Σ c_k vec(B_k) = vec(M)
    let cols: Vec<Vec<Q>> = basis
        .iter()
        .map(|b| b.to_rows().into_iter().flatten().collect())
        .collect();
    let system = QMatrix::from_rows(&cols).transpose();
    let target: Vec<Q> = qrows.into_iter().flatten().collect();
    system.solve(&target)?;
    Some(SurdMatrix::from_q(&m))
}

/// Continued-fraction approximation with denominator at most `max_den`,
/// accepted only within `1e-9` of `x`.
fn rational_approx(x: f64, max_den: i64) -> Option<Q> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut y = x;
    for _ in 0..64 {
        let a = y.floor();
        if a.abs() > 1e12 {
            break;
        }
        let a = a as i64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = y - a as f64;
        if frac.abs() < 1e-12 {
            break;
        }
        y = 1.0 / frac;
    }
    if k1 == 0 || (h1 as f64 / k1 as f64 - x).abs() > 1e-9 {
        return None;
    }
    Some(Q::new(h1.into(), k1.into()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelResidual {
    pub label: String,
    /// `‖T·A₁(z) − A₂(z)·T‖²_F`, exact
    pub alpha: String,
    /// `‖T·j₁(z) − j₂(z)·T‖²_F`, exact
    pub j: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransplantReport {
    pub labels: Vec<LabelResidual>,
    /// Group elements checked (all of `G` when both graphs carry cosets).
    pub elements_checked: usize,
    pub elements_failed: usize,
}

impl TransplantReport {
    pub fn passed(&self) -> bool {
        self.elements_failed == 0 && self.labels.iter().all(|l| l.alpha == "0" && l.j == "0")
    }
}

fn frobenius_sq(m: &SurdMatrix) -> Surd {
    let mut s = Surd::zero();
    for i in 0..m.rows() {
        for x in m.row(i) {
            s = &s + &(x * x);
        }
    }
    s
}

fn perm_matrix(succ: &[usize]) -> SurdMatrix {
    let n = succ.len();
    let mut m = SurdMatrix::zeros(n, n);
    for (v, &w) in succ.iter().enumerate() {
        m[(w, v)] = Surd::one();
    }
    m
}

/// Checks `T α₁(z) = α₂(z) T` and `T j₁(z) = j₂(z) T` for every label, and
/// the first relation for every group element when the graphs carry cosets.
pub fn verify_transplant(
    t: &SurdMatrix,
    g1: &SchreierGraph,
    g2: &SchreierGraph,
) -> Result<TransplantReport, GassmannError> {
    let n = check_pair(g1, g2)?;
    if t.rows() != n || t.cols() != n {
        return Err(GassmannError::DimensionMismatch {
            rows: t.rows(),
            cols: t.cols(),
            expected: n,
        });
    }
    let mut labels = Vec::new();
    for (l, name) in g1.labels().iter().enumerate() {
        let a1 = perm_matrix(g1.succ(l));
        let a2 = perm_matrix(g2.succ(l));
        let alpha = frobenius_sq(&t.mul(&a1).sub(&a2.mul(t)));
        let j1 = SurdMatrix::from_q(&j_from_graph(g1, l));
        let j2 = SurdMatrix::from_q(&j_from_graph(g2, l));
        let j = frobenius_sq(&t.mul(&j1).sub(&j2.mul(t)));
        labels.push(LabelResidual {
            label: name.clone(),
            alpha: alpha.to_text(),
            j: j.to_text(),
        });
    }
    let mut elements_checked = 0;
    let mut elements_failed = 0;
    if g1.representatives().is_some() && g2.representatives().is_some() {
        let gens: Vec<Permutation> = g1.label_elements().to_vec();
        if let Ok(group) = FiniteGroup::generate(&gens, DEFAULT_ELEMENT_CAP) {
            for x in group.elements() {
                let s1: Option<Vec<usize>> = (0..n).map(|v| g1.act(x, v)).collect();
                let s2: Option<Vec<usize>> = (0..n).map(|v| g2.act(x, v)).collect();
                let (Some(s1), Some(s2)) = (s1, s2) else {
                    continue;
                };
                elements_checked += 1;
                if !t
                    .mul(&perm_matrix(&s1))
                    .sub(&perm_matrix(&s2).mul(t))
                    .is_zero()
                {
                    elements_failed += 1;
                }
            }
        }
    }
    Ok(TransplantReport {
        labels,
        elements_checked,
        elements_failed,
    })
}

/// `T̃ = T ⊕ Id` on `𝔳 ⊕ 𝔷`, checked to be orthogonal and bracket preserving.
pub fn extend_two_step_isometry(
    t: &SurdMatrix,
    a1: &NilpotentLieAlgebra,
    a2: &NilpotentLieAlgebra,
) -> Result<SurdMatrix, GassmannError> {
    let (n_v, n_z, n_t) = a1.block_dims();
    if a2.block_dims() != (n_v, n_z, n_t) || n_t != 0 {
        return Err(GassmannError::DimensionMismatch {
            rows: a2.dim(),
            cols: a1.dim(),
            expected: n_v + n_z,
        });
    }
    if t.rows() != n_v || t.cols() != n_v {
        return Err(GassmannError::DimensionMismatch {
            rows: t.rows(),
            cols: t.cols(),
            expected: n_v,
        });
    }
    let ext = t.direct_sum(&SurdMatrix::identity(n_z));
    if !ext.is_orthogonal() {
        return Err(GassmannError::NotOrthogonal);
    }
    let (pairs, residual) = isometry_residual(&ext, a1, a2)?;
    if pairs > 0 {
        return Err(GassmannError::IsometryCheckFailed {
            pairs,
            residual: residual.to_text(),
        });
    }
    Ok(ext)
}

/// Number of failing basis pairs and `Σ ‖φ[e_i,e_j]₁ − [φe_i,φe_j]₂‖²`, exact.
pub fn isometry_residual(
    phi: &SurdMatrix,
    a1: &NilpotentLieAlgebra,
    a2: &NilpotentLieAlgebra,
) -> Result<(usize, Surd), GassmannError> {
    let defects = bracket_defects(phi, a1, a2).map_err(|_| GassmannError::DimensionMismatch {
        rows: phi.rows(),
        cols: phi.cols(),
        expected: a1.dim(),
    })?;
    let mut total = Surd::zero();
    for (_, d) in &defects {
        for x in d {
            total = &total + &(x * x);
        }
    }
    Ok((defects.len(), total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::two_step;
    use crate::linalg::q_frac;

    fn cyc(succ: Vec<Vec<usize>>) -> SchreierGraph {
        let n = succ[0].len();
        let labels = (0..succ.len()).map(|i| format!("z{i}")).collect();
        SchreierGraph::from_succ((0..n).map(|i| i.to_string()).collect(), labels, succ).unwrap()
    }

    #[test]
    fn self_intertwiners_contain_identity() {
        let g = cyc(vec![vec![0, 3, 1, 2], vec![3, 0, 1, 2]]);
        let basis = intertwiner_basis(&g, &g).unwrap();
        // S4 on 4 cosets: trivial + standard, so commutant has dimension 2
        assert_eq!(basis.len(), 2);
        let id = SurdMatrix::identity(4);
        let report = verify_transplant(&id, &g, &g).unwrap();
        assert!(report.passed());
        let a = two_step(&g);
        let ext = extend_two_step_isometry(&id, &a, &a).unwrap();
        assert_eq!(ext, SurdMatrix::identity(6));
    }

    #[test]
    fn index_mismatch() {
        let g1 = cyc(vec![vec![1, 2, 0]]);
        let g2 = cyc(vec![vec![1, 0, 3, 2]]);
        assert_eq!(
            intertwiner_basis(&g1, &g2),
            Err(GassmannError::IndexMismatch(3, 4))
        );
    }

    #[test]
    fn orthogonal_from_single_scaled_basis() {
        let b = QMatrix::identity(3);
        let two = QMatrix::from_rows(&[vec![q(2), q(0)], vec![q(0), q(2)]]);
        assert_eq!(
            orthogonal_intertwiner(&[b]).unwrap(),
            LinearMap::Exact(SurdMatrix::identity(3))
        );
        assert_eq!(
            orthogonal_intertwiner(&[two]).unwrap(),
            LinearMap::Exact(SurdMatrix::identity(2))
        );
        let singular = QMatrix::from_rows(&[vec![q(1), q(0)], vec![q(0), q(0)]]);
        assert_eq!(
            orthogonal_intertwiner(&[singular]),
            Err(GassmannError::NoOrthogonalElement)
        );
    }

    #[test]
    fn two_dimensional_span_with_irrational_solution() {
        // span{I, K} with K a quarter-turn: orthogonal elements are rotations;
        // (I + rK)ᵀ(I + rK) = (1 + r²) I for all r, so r = 0 is returned
        let i = QMatrix::identity(2);
        let k = QMatrix::from_rows(&[vec![q(0), q(-1)], vec![q(1), q(0)]]);
        let t = orthogonal_intertwiner(&[i, k]).unwrap();
        assert_eq!(t, LinearMap::Exact(SurdMatrix::identity(2)));
        // span{I + K, D}: (I + K + rD) has orthogonal columns only at r = 0,
        // and then its columns have length √2
        let ik = QMatrix::from_rows(&[vec![q(1), q(-1)], vec![q(1), q(1)]]);
        let d = QMatrix::from_rows(&[vec![q(1), q(0)], vec![q(0), q(-1)]]);
        let m = orthogonal_intertwiner(&[ik, d]).unwrap();
        let m = m.exact().unwrap();
        assert!(m.is_orthogonal());
        assert!(!m.is_rational());
        assert_eq!(m[(0, 0)], Surd::new(q(0), q_frac(1, 2), 2));
    }

    #[test]
    fn rational_rounding() {
        assert_eq!(rational_approx(0.75, 100), Some(q_frac(3, 4)));
        assert_eq!(rational_approx(-1.0 / 3.0, 100), Some(q_frac(-1, 3)));
        assert_eq!(rational_approx(std::f64::consts::SQRT_2, 100), None);
    }

    #[test]
    fn polynomial_gcd() {
        // (r - 1)(r + 2) and (r - 1)(r - 5)
        let a = vec![q(-2), q(1), q(1)];
        let b = vec![q(5), q(-6), q(1)];
        assert_eq!(poly_gcd(&a, &b), vec![q(-1), q(1)]);
        assert_eq!(poly_gcd(&[], &a), a);
    }

    #[test]
    fn map_doc_round_trip() {
        let h = Surd::new(q(0), q_frac(1, 2), 2);
        let m = SurdMatrix::from_rows(vec![vec![h.clone(), -h.clone()], vec![h.clone(), h]]);
        let doc = LinearMap::Exact(m.clone()).to_doc();
        assert_eq!(LinearMap::from_doc(&doc), Some(LinearMap::Exact(m)));
    }
}
