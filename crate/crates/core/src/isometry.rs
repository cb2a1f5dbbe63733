//! Evidence for or against an isometry between two metric nilpotent Lie
//! algebras: exact invariants, and a numerical search over maps that are
//! orthogonal on each graded block.
//!
//! A positive residual floor from the search is evidence of non-isometry,
//! not a proof.

use nalgebra::DMatrix;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lie::{bracket_surd, central_series, NilpotentLieAlgebra, SparseVec};
use crate::linalg::{format_q, q, QMatrix, Subspace, Q};
use crate::spec::SearchSection;
use crate::surd::{Surd, SurdMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsometryError {
    #[error("map is not exactly orthogonal")]
    NotOrthogonal,
    #[error("map mixes the v, z and t blocks")]
    NotBlockPreserving,
    #[error("transformed structure constants are irrational")]
    IrrationalResult,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

/// Intrinsic grading: `𝔱 = 𝔫⁽²⁾`, `𝔷 = 𝔫⁽¹⁾ ⊖ 𝔫⁽²⁾`, `𝔳 = 𝔫 ⊖ 𝔫⁽¹⁾`.
#[derive(Debug, Clone)]
pub struct GradingBlocks {
    pub dims: (usize, usize, usize),
    /// Orthonormal adapted basis as columns, ordered `𝔳`, `𝔷`, `𝔱`.
    pub basis: DMatrix<f64>,
}

impl GradingBlocks {
    pub fn v_range(&self) -> std::ops::Range<usize> {
        0..self.dims.0
    }

    pub fn z_range(&self) -> std::ops::Range<usize> {
        self.dims.0..self.dims.0 + self.dims.1
    }

    pub fn t_range(&self) -> std::ops::Range<usize> {
        self.dims.0 + self.dims.1..self.dims.0 + self.dims.1 + self.dims.2
    }
}

pub fn grading_blocks(a: &NilpotentLieAlgebra) -> GradingBlocks {
    let n = a.dim();
    let series = central_series(a);
    let zero = Subspace::zero(n);
    let d1 = series.descending.get(1).unwrap_or(&zero);
    let d2 = series.descending.get(2).unwrap_or(&zero);
    // exact Gram-Schmidt over 𝔫⁽²⁾, then 𝔫⁽¹⁾, then everything
    let mut ortho: Vec<Vec<Q>> = Vec::new();
    let mut counts = Vec::new();
    let standard: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| q((i == j) as i64)).collect())
        .collect();
    for source in [d2.basis(), d1.basis(), &standard[..]] {
        let before = ortho.len();
        for v in source {
            let mut w = v.clone();
            for u in &ortho {
                let c = dot(&w, u) / dot(u, u);
                for (wi, ui) in w.iter_mut().zip(u) {
                    *wi -= &c * ui;
                }
            }
            if w.iter().any(|x| !x.is_zero()) {
                ortho.push(w);
            }
        }
        counts.push(ortho.len() - before);
    }
    let (d_t, d_z, d_v) = (counts[0], counts[1], counts[2]);
    // reorder as 𝔳, 𝔷, 𝔱 and normalise
    let order: Vec<usize> = (d_t + d_z..n).chain(d_t..d_t + d_z).chain(0..d_t).collect();
    let mut basis = DMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        let v = &ortho[k];
        let norm = dot(v, v).to_f64().unwrap_or(f64::NAN).sqrt();
        for i in 0..n {
            basis[(i, col)] = v[i].to_f64().unwrap_or(f64::NAN) / norm;
        }
    }
    GradingBlocks {
        dims: (d_v, d_z, d_t),
        basis,
    }
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |s, (x, y)| s + x * y)
}

/// Isometry invariants. `dims`, the series and `frobenius_sq` are exact;
/// the spectra are floats rounded to 12 decimals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub dims: (usize, usize, usize),
    pub descending: Vec<usize>,
    pub ascending: Vec<usize>,
    /// eigenvalues of `Σ_a J_a J_aᵀ`, `(J_a)_pq = ⟨z_a, [v_p, v_q]⟩`
    pub vv_spectrum: Vec<f64>,
    /// eigenvalues of `Σ_b K_b K_bᵀ`, `(K_b)_pq = ⟨t_b, [v_p, z_q]⟩`
    pub vz_spectrum: Vec<f64>,
    /// `Σ_{i<j} ‖[e_i, e_j]‖²`, exact
    pub frobenius_sq: String,
}

pub const SPECTRAL_TOLERANCE: f64 = 1e-9;

impl Fingerprint {
    pub fn exact_entries_equal(&self, other: &Fingerprint) -> bool {
        self.dims == other.dims
            && self.descending == other.descending
            && self.ascending == other.ascending
            && self.frobenius_sq == other.frobenius_sq
    }

    /// Largest difference between matching spectral entries; infinite when
    /// the spectra have different lengths.
    pub fn spectral_distance(&self, other: &Fingerprint) -> f64 {
        let mut worst = 0.0f64;
        for (a, b) in [
            (&self.vv_spectrum, &other.vv_spectrum),
            (&self.vz_spectrum, &other.vz_spectrum),
        ] {
            if a.len() != b.len() {
                return f64::INFINITY;
            }
            for (x, y) in a.iter().zip(b) {
                worst = worst.max((x - y).abs());
            }
        }
        worst
    }

    pub fn matches(&self, other: &Fingerprint) -> bool {
        self.exact_entries_equal(other) && self.spectral_distance(other) <= SPECTRAL_TOLERANCE
    }
}

/// Full antisymmetric tensor `c[i][j][k]` in f64, plus its sparse entries.
#[derive(Debug, Clone)]
pub struct DenseTensor {
    n: usize,
    data: Vec<f64>,
    /// `(i, j, k, c)` with `i < j`
    entries: Vec<(usize, usize, usize, f64)>,
}

impl DenseTensor {
    pub fn new(a: &NilpotentLieAlgebra) -> Self {
        let n = a.dim();
        let mut data = vec![0.0; n * n * n];
        let mut entries = Vec::new();
        for (&(i, j), v) in a.structure_constants() {
            for (&k, c) in v {
                let c = c.to_f64().unwrap_or(f64::NAN);
                data[(i * n + j) * n + k] = c;
                data[(j * n + i) * n + k] = -c;
                entries.push((i, j, k, c));
            }
        }
        Self { n, data, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.data[(i * self.n + j) * self.n + k]
    }

    /// `[x, y]`
    pub fn bracket(&self, x: &[f64], y: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|o| *o = 0.0);
        for &(i, j, k, c) in &self.entries {
            out[k] += c * (x[i] * y[j] - x[j] * y[i]);
        }
    }

    /// `[e_i, e_j]` as a dense vector.
    pub fn column(&self, i: usize, j: usize) -> &[f64] {
        let start = (i * self.n + j) * self.n;
        &self.data[start..start + self.n]
    }
}

pub fn fingerprint(a: &NilpotentLieAlgebra) -> Fingerprint {
    let series = central_series(a);
    let blocks = grading_blocks(a);
    let t = DenseTensor::new(a);
    let n = a.dim();
    let col = |k: usize| -> Vec<f64> { (0..n).map(|i| blocks.basis[(i, k)]).collect() };
    let v: Vec<Vec<f64>> = blocks.v_range().map(col).collect();
    let z: Vec<Vec<f64>> = blocks.z_range().map(col).collect();
    let tb: Vec<Vec<f64>> = blocks.t_range().map(col).collect();
    let vv = gram_spectrum(&t, &v, &v, &z);
    let vz = gram_spectrum(&t, &v, &z, &tb);
    let mut fro = Q::zero();
    for c in a.structure_constants().values() {
        for x in c.values() {
            fro += x * x;
        }
    }
    Fingerprint {
        dims: blocks.dims,
        descending: series.descending_dims(),
        ascending: series.ascending_dims(),
        vv_spectrum: vv,
        vz_spectrum: vz,
        frobenius_sq: format_q(&fro),
    }
}

/// Sorted eigenvalues of `Σ_c M_c M_cᵀ` with `(M_c)_pq = ⟨w_c, [x_p, y_q]⟩`.
fn gram_spectrum(t: &DenseTensor, xs: &[Vec<f64>], ys: &[Vec<f64>], ws: &[Vec<f64>]) -> Vec<f64> {
    let (p, r) = (xs.len(), ys.len());
    let mut sum = DMatrix::<f64>::zeros(p, p);
    let mut buf = vec![0.0; t.dim()];
    // brackets[p][q] = [x_p, y_q]
    let brackets: Vec<Vec<Vec<f64>>> = xs
        .iter()
        .map(|x| {
            ys.iter()
                .map(|y| {
                    t.bracket(x, y, &mut buf);
                    buf.clone()
                })
                .collect()
        })
        .collect();
    for w in ws {
        let m = DMatrix::from_fn(p, r, |i, j| {
            brackets[i][j]
                .iter()
                .zip(w)
                .map(|(a, b)| a * b)
                .sum::<f64>()
        });
        sum += &m * m.transpose();
    }
    if p == 0 {
        return Vec::new();
    }
    let mut ev: Vec<f64> = sum
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .map(|&x| round12(x))
        .collect();
    ev.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    ev
}

fn round12(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Pushes the tensor through `φ`: `[x, y]' = φ[φ⁻¹x, φ⁻¹y]`. `φ` must be
/// exactly orthogonal and map each labeled block into itself.
pub fn transform(
    a: &NilpotentLieAlgebra,
    phi: &SurdMatrix,
) -> Result<NilpotentLieAlgebra, IsometryError> {
    let n = a.dim();
    if phi.rows() != n || phi.cols() != n {
        return Err(IsometryError::DimensionMismatch(phi.rows(), n));
    }
    let tag = |i: usize| a.basis()[i].kind.tag();
    for i in 0..n {
        for j in 0..n {
            if tag(i) != tag(j) && !phi[(i, j)].is_zero() {
                return Err(IsometryError::NotBlockPreserving);
            }
        }
    }
    if !phi.is_orthogonal() {
        return Err(IsometryError::NotOrthogonal);
    }
    // φ⁻¹ e_i = φᵀ e_i = row i of φ
    let rows: Vec<Vec<Surd>> = (0..n).map(|i| phi.row(i).to_vec()).collect();
    let mut brackets = std::collections::BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let w = phi.mul_vec(&bracket_surd(a, &rows[i], &rows[j]));
            let mut v = SparseVec::new();
            for (k, x) in w.into_iter().enumerate() {
                let x = x
                    .as_rational()
                    .ok_or(IsometryError::IrrationalResult)?
                    .clone();
                if !x.is_zero() {
                    v.insert(k, x);
                }
            }
            if !v.is_empty() {
                brackets.insert((i, j), v);
            }
        }
    }
    NilpotentLieAlgebra::from_parts(a.basis().to_vec(), brackets)
        .map_err(|_| IsometryError::DimensionMismatch(n, n))
}

/// A random rational orthogonal map preserving the labeled blocks: on each
/// block a Cayley transform `(I − S)(I + S)⁻¹` of a small integer skew `S`,
/// times random signs.
pub fn random_block_orthogonal<R: Rng>(a: &NilpotentLieAlgebra, rng: &mut R) -> SurdMatrix {
    let n = a.dim();
    let mut phi = SurdMatrix::zeros(n, n);
    let groups: Vec<Vec<usize>> = ["v", "z", "t"]
        .iter()
        .map(|t| (0..n).filter(|&i| a.basis()[i].kind.tag() == *t).collect())
        .collect();
    for idx in groups {
        let m = idx.len();
        if m == 0 {
            continue;
        }
        let mut s = QMatrix::zeros(m, m);
        for i in 0..m {
            for j in i + 1..m {
                let x: i64 = rng.random_range(-2..=2);
                s[(i, j)] = q(x);
                s[(j, i)] = q(-x);
            }
        }
        let id = QMatrix::identity(m);
        let mut minus = id.clone();
        let mut plus = id;
        for i in 0..m {
            for j in 0..m {
                minus[(i, j)] -= &s[(i, j)];
                plus[(i, j)] += &s[(i, j)];
            }
        }
        // I + S is invertible for skew S
        let c = minus.mul(&plus.inverse().expect("I + S is invertible"));
        for (bi, &gi) in idx.iter().enumerate() {
            let sign = if rng.random_bool(0.5) { q(1) } else { q(-1) };
            for (bj, &gj) in idx.iter().enumerate() {
                phi[(gi, gj)] = Surd::from(&c[(bi, bj)] * &sign);
            }
        }
    }
    phi
}

/// `Σ_{i<j} ‖φ[e_i, e_j]₁ − [φe_i, φe_j]₂‖²` in floating point.
pub fn bracket_residual(
    phi: &DMatrix<f64>,
    a1: &NilpotentLieAlgebra,
    a2: &NilpotentLieAlgebra,
) -> Result<f64, IsometryError> {
    if a1.dim() != a2.dim() {
        return Err(IsometryError::DimensionMismatch(a1.dim(), a2.dim()));
    }
    if phi.nrows() != a2.dim() || phi.ncols() != a1.dim() {
        return Err(IsometryError::DimensionMismatch(phi.nrows(), a1.dim()));
    }
    let p = Problem::new(a1, a2);
    Ok(p.residual(phi, None))
}

/// Residual evaluation and its Euclidean gradient.
struct Problem {
    n: usize,
    t1: DenseTensor,
    t2: DenseTensor,
}

impl Problem {
    fn new(a1: &NilpotentLieAlgebra, a2: &NilpotentLieAlgebra) -> Self {
        Self {
            n: a1.dim(),
            t1: DenseTensor::new(a1),
            t2: DenseTensor::new(a2),
        }
    }

    fn residual(&self, phi: &DMatrix<f64>, mut grad: Option<&mut DMatrix<f64>>) -> f64 {
        let n = self.n;
        if let Some(g) = grad.as_deref_mut() {
            g.fill(0.0);
        }
        let cols: Vec<Vec<f64>> = (0..n)
            .map(|j| phi.column(j).iter().copied().collect())
            .collect();
        let mut total = 0.0;
        let mut b = vec![0.0; n];
        let mut r = vec![0.0; n];
        for i in 0..n {
            for j in i + 1..n {
                let c = self.t1.column(i, j);
                // r = φ c − [φe_i, φe_j]₂
                self.t2.bracket(&cols[i], &cols[j], &mut b);
                for m in 0..n {
                    let mut s = 0.0;
                    for k in 0..n {
                        if c[k] != 0.0 {
                            s += phi[(m, k)] * c[k];
                        }
                    }
                    r[m] = s - b[m];
                }
                let rr: f64 = r.iter().map(|x| x * x).sum();
                if rr == 0.0 {
                    continue;
                }
                total += rr;
                if let Some(g) = grad.as_deref_mut() {
                    // d/dφ of ‖φc‖ part: 2 r cᵀ
                    for k in 0..n {
                        if c[k] != 0.0 {
                            for m in 0..n {
                                g[(m, k)] += 2.0 * r[m] * c[k];
                            }
                        }
                    }
                    // bracket part through the columns φe_i and φe_j
                    let (x, y) = (&cols[i], &cols[j]);
                    for &(k, l, m, val) in &self.t2.entries {
                        let w = 2.0 * r[m] * val;
                        if w == 0.0 {
                            continue;
                        }
                        g[(k, i)] -= w * y[l];
                        g[(l, i)] += w * y[k];
                        g[(l, j)] -= w * x[k];
                        g[(k, j)] += w * x[l];
                    }
                }
            }
        }
        total
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub restarts: usize,
    pub max_iterations: usize,
    /// stop once the residual or squared gradient norm falls below this
    pub tolerance: f64,
    pub seed: u64,
    pub initial_step: f64,
    /// Armijo sufficient-decrease constant
    pub armijo: f64,
    /// residual below which an isometry is reported
    pub success_threshold: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            restarts: 200,
            max_iterations: 2000,
            tolerance: 1e-12,
            seed: 0,
            initial_step: 0.1,
            armijo: 1e-4,
            success_threshold: 1e-8,
        }
    }
}

impl SearchConfig {
    pub fn with_overrides(mut self, s: &SearchSection) -> Self {
        if let Some(r) = s.restarts {
            self.restarts = r;
        }
        if let Some(m) = s.max_iterations {
            self.max_iterations = m;
        }
        if let Some(t) = s.tolerance {
            self.tolerance = t;
        }
        if let Some(seed) = s.seed {
            self.seed = seed;
        }
        self
    }

    fn validate(&self) -> bool {
        self.restarts > 0
            && self.max_iterations > 0
            && self.tolerance > 0.0
            && self.initial_step > 0.0
            && self.armijo > 0.0
            && self.success_threshold > 0.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RestartTrace {
    pub index: usize,
    pub seed: u64,
    pub final_residual: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// an exact invariant differs; no search was run
    NotIsometric,
    IsometryFound,
    NoIsometryFound,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub verdict: Verdict,
    pub best_residual: Option<f64>,
    pub best_restart: Option<usize>,
    #[serde(skip)]
    pub best_map: Option<DMatrix<f64>>,
    pub restarts: Vec<RestartTrace>,
    pub fingerprint_a: Fingerprint,
    pub fingerprint_b: Fingerprint,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed used for restart `index`.
pub fn restart_seed(seed: u64, index: usize) -> u64 {
    splitmix64(seed ^ splitmix64(index as u64))
}

/// Haar-distributed element of `O(m)`.
fn haar_orthogonal<R: Rng>(m: usize, rng: &mut R) -> DMatrix<f64> {
    if m == 0 {
        return DMatrix::zeros(0, 0);
    }
    let g = DMatrix::from_fn(m, m, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let mut qm = qr.q();
    let r = qr.r();
    for j in 0..m {
        if r[(j, j)] < 0.0 {
            for i in 0..m {
                qm[(i, j)] = -qm[(i, j)];
            }
        }
    }
    qm
}

/// Nearest orthogonal matrix (polar factor).
fn polar(m: &DMatrix<f64>) -> DMatrix<f64> {
    if m.nrows() == 0 {
        return m.clone();
    }
    let svd = m.clone().svd(true, true);
    svd.u.expect("requested") * svd.v_t.expect("requested")
}

/// Minimises the bracket residual over `φ = Q₂ · diag(A, B, C) · Q₁ᵀ` with
/// `A, B, C` orthogonal and `Q_i` the adapted bases. Restart 0 starts from
/// `A = B = C = I`; the others from Haar-random blocks.
pub fn search_isometry(
    a1: &NilpotentLieAlgebra,
    a2: &NilpotentLieAlgebra,
    cfg: &SearchConfig,
) -> SearchResult {
    assert!(cfg.validate(), "search configuration must be positive");
    let fp1 = fingerprint(a1);
    let fp2 = fingerprint(a2);
    if !fp1.exact_entries_equal(&fp2) {
        return SearchResult {
            verdict: Verdict::NotIsometric,
            best_residual: None,
            best_restart: None,
            best_map: None,
            restarts: Vec::new(),
            fingerprint_a: fp1,
            fingerprint_b: fp2,
        };
    }
    let b1 = grading_blocks(a1);
    let b2 = grading_blocks(a2);
    let problem = Problem::new(a1, a2);
    let ranges = [b1.v_range(), b1.z_range(), b1.t_range()];

    let runs: Vec<(RestartTrace, DMatrix<f64>)> = (0..cfg.restarts)
        .into_par_iter()
        .map(|index| {
            let seed = restart_seed(cfg.seed, index);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let blocks: Vec<DMatrix<f64>> = ranges
                .iter()
                .map(|r| {
                    if index == 0 {
                        DMatrix::identity(r.len(), r.len())
                    } else {
                        haar_orthogonal(r.len(), &mut rng)
                    }
                })
                .collect();
            let (residual, iterations, phi) =
                descend(&problem, &b1.basis, &b2.basis, &ranges, blocks, cfg);
            (
                RestartTrace {
                    index,
                    seed,
                    final_residual: residual,
                    iterations,
                },
                phi,
            )
        })
        .collect();

    let (best_i, _) = runs
        .iter()
        .enumerate()
        .min_by(|(i, x), (j, y)| {
            x.0.final_residual
                .partial_cmp(&y.0.final_residual)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(i.cmp(j))
        })
        .expect("at least one restart");
    let best_residual = runs[best_i].0.final_residual;
    let verdict = if best_residual < cfg.success_threshold {
        Verdict::IsometryFound
    } else {
        Verdict::NoIsometryFound
    };
    let best_map = Some(runs[best_i].1.clone());
    SearchResult {
        verdict,
        best_residual: Some(best_residual),
        best_restart: Some(best_i),
        best_map,
        restarts: runs.into_iter().map(|(t, _)| t).collect(),
        fingerprint_a: fp1,
        fingerprint_b: fp2,
    }
}

fn assemble(
    q1: &DMatrix<f64>,
    q2: &DMatrix<f64>,
    ranges: &[std::ops::Range<usize>; 3],
    blocks: &[DMatrix<f64>],
) -> DMatrix<f64> {
    let n = q1.nrows();
    let mut x = DMatrix::zeros(n, n);
    for (r, b) in ranges.iter().zip(blocks) {
        x.view_mut((r.start, r.start), (r.len(), r.len()))
            .copy_from(b);
    }
    q2 * x * q1.transpose()
}

/// Riemannian gradient descent with polar retraction and Armijo backtracking.
/// Returns the final residual, iteration count and map.
fn descend(
    problem: &Problem,
    q1: &DMatrix<f64>,
    q2: &DMatrix<f64>,
    ranges: &[std::ops::Range<usize>; 3],
    mut blocks: Vec<DMatrix<f64>>,
    cfg: &SearchConfig,
) -> (f64, usize, DMatrix<f64>) {
    let n = q1.nrows();
    let mut grad = DMatrix::zeros(n, n);
    let mut phi = assemble(q1, q2, ranges, &blocks);
    let mut f = problem.residual(&phi, Some(&mut grad));
    let mut step = cfg.initial_step;
    let mut iterations = 0;
    while iterations < cfg.max_iterations && f > cfg.tolerance {
        iterations += 1;
        // gradient with respect to diag(A, B, C)
        let gx = q2.transpose() * &grad * q1;
        let rgrads: Vec<DMatrix<f64>> = ranges
            .iter()
            .zip(&blocks)
            .map(|(r, a)| {
                let g = gx.view((r.start, r.start), (r.len(), r.len())).into_owned();
                let ag = a.transpose() * &g;
                let sym = (&ag + ag.transpose()) * 0.5;
                g - a * sym
            })
            .collect();
        let gnorm2: f64 = rgrads.iter().map(|g| g.norm_squared()).sum();
        if gnorm2 < cfg.tolerance * cfg.tolerance {
            break;
        }
        let mut accepted = false;
        for _ in 0..40 {
            let trial: Vec<DMatrix<f64>> = blocks
                .iter()
                .zip(&rgrads)
                .map(|(a, g)| polar(&(a - g * step)))
                .collect();
            let trial_phi = assemble(q1, q2, ranges, &trial);
            let trial_f = problem.residual(&trial_phi, None);
            if trial_f <= f - cfg.armijo * step * gnorm2 {
                blocks = trial;
                phi = trial_phi;
                f = problem.residual(&phi, Some(&mut grad));
                step = (step * 2.0).min(1e3);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (f, iterations, phi)
}
