//! Numerical integration: globally adaptive Gauss–Kronrod (21-point) for
//! scalar and vector-valued integrands, and Gauss–Hermite rules.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::linalg::symmetric_tridiagonal_eigen;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_272_971_234,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
// Gauss weights for the nodes XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone)]
struct Panel {
    a: f64,
    b: f64,
    value: Vec<f64>,
    error: Vec<f64>,
    worst: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.worst == other.worst
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.worst.total_cmp(&other.worst)
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let s = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if s < 1.0 { res_asc * s } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

fn kronrod_panel<F>(f: &F, dim: usize, a: f64, b: f64, scratch: &mut Vec<Vec<f64>>) -> Panel
where
    F: Fn(f64, &mut [f64]),
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    // evaluation order: center, then (center - h x_j, center + h x_j) for j = 0..10
    scratch.resize_with(21, Vec::new);
    for row in scratch.iter_mut() {
        row.clear();
        row.resize(dim, 0.0);
    }
    f(center, &mut scratch[0]);
    for j in 0..10 {
        let dx = half * XGK[j];
        let (lo, hi) = scratch.split_at_mut(2 * j + 2);
        f(center - dx, &mut lo[2 * j + 1]);
        f(center + dx, &mut hi[0]);
    }
    let mut value = vec![0.0; dim];
    let mut error = vec![0.0; dim];
    for d in 0..dim {
        let fc = scratch[0][d];
        let mut kron = WGK[10] * fc;
        let mut gauss = 0.0;
        let mut res_abs = (WGK[10] * fc).abs();
        for j in 0..10 {
            let s = scratch[2 * j + 1][d] + scratch[2 * j + 2][d];
            kron += WGK[j] * s;
            res_abs += WGK[j] * (scratch[2 * j + 1][d].abs() + scratch[2 * j + 2][d].abs());
            if j % 2 == 1 {
                gauss += WG[j / 2] * s;
            }
        }
        let mean = 0.5 * kron;
        let mut res_asc = WGK[10] * (fc - mean).abs();
        for j in 0..10 {
            res_asc += WGK[j]
                * ((scratch[2 * j + 1][d] - mean).abs() + (scratch[2 * j + 2][d] - mean).abs());
        }
        value[d] = kron * half;
        error[d] = rescale_error(
            (kron - gauss) * half,
            res_abs * half.abs(),
            res_asc * half.abs(),
        );
    }
    let worst = error.iter().cloned().fold(0.0, f64::max);
    Panel {
        a,
        b,
        value,
        error,
        worst,
    }
}

/// Globally adaptive 21-point Gauss–Kronrod integrator.
#[derive(Debug, Clone, Copy)]
pub struct Integrator {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
}

impl Default for Integrator {
    fn default() -> Self {
        Self {
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            max_panels: 4000,
        }
    }
}

impl Integrator {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol,
            ..Self::default()
        }
    }

    pub fn with_max_panels(mut self, max_panels: usize) -> Self {
        self.max_panels = max_panels;
        self
    }

    pub fn integrate<F>(&self, f: F, a: f64, b: f64) -> Result<f64>
    where
        F: Fn(f64) -> f64,
    {
        self.integrate_vec(1, |x, out: &mut [f64]| out[0] = f(x), a, b)
            .map(|v| v[0])
    }

    /// Integrates all components of `f` over the same panels. The
    /// tolerance applies to the largest component error against the largest
    /// component magnitude.
    pub fn integrate_vec<F>(&self, dim: usize, f: F, a: f64, b: f64) -> Result<Vec<f64>>
    where
        F: Fn(f64, &mut [f64]),
    {
        self.integrate_vec_breaks(dim, f, &[a, b])
    }

    /// Like [`Integrator::integrate_vec`], seeding the adaptive search with
    /// one panel per pair of consecutive breakpoints.
    pub fn integrate_vec_breaks<F>(&self, dim: usize, f: F, breaks: &[f64]) -> Result<Vec<f64>>
    where
        F: Fn(f64, &mut [f64]),
    {
        if breaks.len() < 2 {
            return Err(Error::Argument("need at least two breakpoints".into()));
        }
        let mut scratch = Vec::new();
        let mut total = vec![0.0; dim];
        let mut total_err = vec![0.0; dim];
        let mut heap = BinaryHeap::new();
        for w in breaks.windows(2) {
            let panel = kronrod_panel(&f, dim, w[0], w[1], &mut scratch);
            for d in 0..dim {
                total[d] += panel.value[d];
                total_err[d] += panel.error[d];
            }
            heap.push(panel);
        }
        let max_panels = self.max_panels.max(2 * heap.len());
        loop {
            let magnitude = total.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let worst = total_err.iter().cloned().fold(0.0, f64::max);
            if worst <= self.abs_tol.max(self.rel_tol * magnitude) {
                return Ok(total);
            }
            if heap.len() >= max_panels {
                return Err(Error::Quadrature {
                    error_estimate: worst,
                    subdivisions: heap.len(),
                });
            }
            let panel = heap.pop().expect("heap is never empty");
            let mid = 0.5 * (panel.a + panel.b);
            if mid <= panel.a || mid >= panel.b {
                // interval exhausted at machine resolution
                return Err(Error::Quadrature {
                    error_estimate: worst,
                    subdivisions: heap.len() + 1,
                });
            }
            let left = kronrod_panel(&f, dim, panel.a, mid, &mut scratch);
            let right = kronrod_panel(&f, dim, mid, panel.b, &mut scratch);
            for d in 0..dim {
                total[d] += left.value[d] + right.value[d] - panel.value[d];
                total_err[d] += left.error[d] + right.error[d] - panel.error[d];
            }
            heap.push(left);
            heap.push(right);
            // periodic resummation keeps the running totals from drifting
            if heap.len() % 64 == 0 {
                total.iter_mut().for_each(|v| *v = 0.0);
                total_err.iter_mut().for_each(|v| *v = 0.0);
                for p in heap.iter() {
                    for d in 0..dim {
                        total[d] += p.value[d];
                        total_err[d] += p.error[d];
                    }
                }
            }
        }
    }
}

/// Walks outward from `start` in steps of `step` until the envelope has
/// dropped below `threshold` and is decreasing, and returns that abscissa.
/// `limit` bounds the search.
pub fn decay_cutoff<F>(envelope: F, start: f64, step: f64, threshold: f64, limit: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    let mut x = start;
    let mut prev = envelope(x);
    while x < limit {
        let next_x = x + step;
        let next = envelope(next_x);
        if next < threshold && next <= prev {
            return next_x;
        }
        x = next_x;
        prev = next;
    }
    limit
}

/// A fixed quadrature rule ∫ w(x) f(x) dx ≈ Σ wᵢ f(xᵢ).
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn apply<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(*x))
            .sum()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Gauss–Hermite rule for the weight e^{−x²}.
///
/// Nodes start from the eigenvalues of the Hermite Jacobi matrix and are
/// polished by Newton steps on the orthonormal recursion; weights come from
/// the Christoffel function, which keeps the tiny outer weights accurate
/// in relative terms.
pub fn gauss_hermite(n: usize) -> Result<GaussRule> {
    if n == 0 {
        return Err(Error::Argument(
            "Gauss–Hermite order must be positive".into(),
        ));
    }
    let diag = vec![0.0; n];
    let off: Vec<f64> = (1..n).map(|k| (k as f64 / 2.0).sqrt()).collect();
    let (mut nodes, _) = symmetric_tridiagonal_eigen(&diag, &off)?;
    let mut weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (p, dp, _) = orthonormal_hermite_with_derivative(n, *x);
            let dx = p / dp;
            *x -= dx;
            if dx.abs() < 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        let (_, _, christoffel) = orthonormal_hermite_with_derivative(n, *x);
        weights.push(1.0 / christoffel);
    }
    // symmetrize to make the rule exactly even
    for i in 0..n / 2 {
        let j = n - 1 - i;
        let x = 0.5 * (nodes[j] - nodes[i]);
        let w = 0.5 * (weights[i] + weights[j]);
        nodes[i] = -x;
        nodes[j] = x;
        weights[i] = w;
        weights[j] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok(GaussRule { nodes, weights })
}

// Orthonormal Hermite polynomials p_k for weight e^{−x²}:
// returns (p_n(x), p_n'(x), Σ_{k<n} p_k(x)²).
fn orthonormal_hermite_with_derivative(n: usize, x: f64) -> (f64, f64, f64) {
    let mut p_prev = 0.0;
    let mut p = std::f64::consts::PI.powf(-0.25);
    let mut dp_prev = 0.0;
    let mut dp = 0.0;
    let mut christoffel = 0.0;
    for k in 0..n {
        christoffel += p * p;
        let kf = k as f64;
        let a = (2.0 / (kf + 1.0)).sqrt();
        let c = (kf / (kf + 1.0)).sqrt();
        let p_next = a * x * p - c * p_prev;
        let dp_next = a * (p + x * dp) - c * dp_prev;
        p_prev = p;
        p = p_next;
        dp_prev = dp;
        dp = dp_next;
    }
    (p, dp, christoffel)
}
