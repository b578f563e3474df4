//! Gauss–Legendre rules, adaptive Gauss–Kronrod integration, and the
//! equispaced-angle rules used for integrals of `Y_{ell,m}` products.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// An `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    order: usize,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Integrate `f` over `[a, b]` with this rule.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }
}

pub const MAX_GAUSS_POINTS: usize = 100_000;

/// Gauss–Legendre nodes and weights by Newton iteration on the three-term
/// recurrence. Nodes are returned in increasing order.
pub fn gauss_legendre(n: usize) -> Result<QuadratureRule> {
    if n == 0 || n > MAX_GAUSS_POINTS {
        return Err(Error::Domain(format!("gauss_legendre needs 1 <= n <= {MAX_GAUSS_POINTS}, got {n}")));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        for _ in 0..100 {
            let (p, p_prev) = legendre_pair(n, x);
            let dp = nf * (x * p - p_prev) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1e-3) {
                break;
            }
        }
        let (p, p_prev) = legendre_pair(n, x);
        let dp = nf * (x * p - p_prev) / (x * x - 1.0);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // i-th largest node, mirrored
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok(QuadratureRule { nodes, weights, order: n })
}

/// `(P_n(x), P_{n-1}(x))`.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = next;
    }
    (p, p_prev)
}

// Gauss–Kronrod 7/15 pair on [-1, 1]; odd-indexed Kronrod nodes are the Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One Gauss–Kronrod panel: value, error estimate and `int |f|`.
///
/// The error estimate is the usual `resasc * min(1, (200 |K - G| / resasc)^1.5)`.
fn kronrod_15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64, f64) {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    let mut fv = [0.0; 15];
    fv[7] = f(mid);
    for j in 0..7 {
        let dx = half * XGK[j];
        fv[j] = f(mid - dx);
        fv[14 - j] = f(mid + dx);
    }
    let mut k = WGK[7] * fv[7];
    let mut g = WG[3] * fv[7];
    let mut abs = WGK[7] * fv[7].abs();
    for j in 0..7 {
        let pair = fv[j] + fv[14 - j];
        k += WGK[j] * pair;
        abs += WGK[j] * (fv[j].abs() + fv[14 - j].abs());
        if j % 2 == 1 {
            g += WG[j / 2] * pair;
        }
    }
    let mean = 0.5 * k;
    let mut asc = WGK[7] * (fv[7] - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());
    }
    let h = half.abs();
    let (asc, abs) = (asc * h, abs * h);
    let mut err = (k - g).abs() * h;
    if asc != 0.0 && err != 0.0 {
        err = asc * (200.0 * err / asc).powf(1.5).min(1.0);
    }
    (k * half, err, abs)
}

/// Result of an adaptive integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

/// Globally adaptive Gauss–Kronrod integration of `f` over `[a, b]`.
///
/// Repeatedly bisects the panel with the largest error estimate until the
/// summed estimate is below `max(abs_tol, rel_tol * |integral|)`.
pub fn integrate_adaptive<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Integral {
    if a == b {
        return Integral { value: 0.0, error: 0.0 };
    }
    let mut panel = |lo: f64, hi: f64, depth: u32| {
        let (value, err, abs) = kronrod_15(&mut f, lo, hi);
        // Differences at rounding level cannot be reduced by bisection.
        let err = if err <= ROUNDOFF * abs { 0.0 } else { err };
        Panel { lo, hi, value, err, depth }
    };
    let first = panel(a, b, 0);
    let mut value = first.value;
    let mut error = first.err;
    let mut heap = BinaryHeap::from([first]);
    let mut done = Vec::new();
    while error > abs_tol.max(rel_tol * value.abs()) && done.len() + heap.len() < MAX_PANELS {
        let Some(worst) = heap.pop() else { break };
        if worst.depth >= MAX_DEPTH || worst.err == 0.0 {
            done.push(worst);
            continue;
        }
        let mid = 0.5 * (worst.lo + worst.hi);
        let left = panel(worst.lo, mid, worst.depth + 1);
        let right = panel(mid, worst.hi, worst.depth + 1);
        value += left.value + right.value - worst.value;
        error += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
    }
    done.extend(heap);
    done.sort_by(|p, q| p.lo.total_cmp(&q.lo));
    Integral { value: done.iter().map(|p| p.value).sum(), error: done.iter().map(|p| p.err).sum() }
}

const MAX_DEPTH: u32 = 60;
const MAX_PANELS: usize = 4000;
const ROUNDOFF: f64 = 50.0 * f64::EPSILON;

struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    err: f64,
    depth: u32,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
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
        self.err.total_cmp(&other.err).then(other.lo.total_cmp(&self.lo))
    }
}

/// Parity class of a family of integrands sampled on the equispaced-angle grid.
///
/// For `x = cos(theta)`, the integral `int_{-1}^{1} F(x) dx` equals
/// `int_0^pi F(cos theta) sin theta d theta`. If `F` is a polynomial in `x`
/// (integer `m`), Clenshaw–Curtis weights are exact; if
/// `F(cos theta) sin theta` is a cosine polynomial (half-integer `m`), the
/// trapezoidal rule in `theta` is exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AngleRule {
    ClenshawCurtis,
    Trapezoid,
}

/// Nodes `theta_k = k pi / N`, `k = 0..=N`, with weights for `int_{-1}^1 F(x) dx`.
#[derive(Clone, Debug)]
pub struct CosThetaRule {
    intervals: usize,
    cc_weights: Vec<f64>,
    trapezoid_weights: Vec<f64>,
}

impl CosThetaRule {
    pub fn new(intervals: usize) -> Result<Self> {
        if intervals < 2 {
            return Err(Error::Domain(format!("need at least 2 intervals, got {intervals}")));
        }
        let n = intervals;
        let nf = n as f64;
        let mut cc = vec![0.0; n + 1];
        for (k, w) in cc.iter_mut().enumerate() {
            let theta = k as f64 * PI / nf;
            let mut s = 0.0;
            for j in 1..=n / 2 {
                let b = if 2 * j == n { 1.0 } else { 2.0 };
                s += b / (4.0 * (j * j) as f64 - 1.0) * (2.0 * j as f64 * theta).cos();
            }
            let c = if k == 0 || k == n { 1.0 } else { 2.0 };
            *w = c / nf * (1.0 - s);
        }
        let trapezoid = (0..=n)
            .map(|k| {
                let end = if k == 0 || k == n { 0.5 } else { 1.0 };
                end * PI / nf * Self::sin_node(n, k)
            })
            .collect();
        Ok(CosThetaRule { intervals: n, cc_weights: cc, trapezoid_weights: trapezoid })
    }

    /// Rule with `nodes` points in total (`nodes - 1` intervals).
    pub fn with_nodes(nodes: usize) -> Result<Self> {
        Self::new(nodes.saturating_sub(1))
    }

    pub fn intervals(&self) -> usize {
        self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `k pi / N`, with the last node exactly `pi`.
    pub fn angle(&self, k: usize) -> f64 {
        if k == self.intervals {
            PI
        } else {
            k as f64 * PI / self.intervals as f64
        }
    }

    fn sin_node(n: usize, k: usize) -> f64 {
        if k == 0 || k == n {
            0.0
        } else {
            (k as f64 * PI / n as f64).sin()
        }
    }

    /// Weights `w_k` such that `sum_k w_k F(cos theta_k)` approximates `int F dx`.
    pub fn weights(&self, rule: AngleRule) -> &[f64] {
        match rule {
            AngleRule::ClenshawCurtis => &self.cc_weights,
            AngleRule::Trapezoid => &self.trapezoid_weights,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_rule_invariants(n: usize) {
        let r = gauss_legendre(n).unwrap();
        assert_eq!(r.nodes().len(), n);
        let sum: f64 = r.weights().iter().sum();
        assert!((sum - 2.0).abs() < 1e-13, "n={n}: weight sum {sum}");
        for w in r.nodes().windows(2) {
            assert!(w[0] < w[1], "n={n}: nodes not increasing");
        }
        for i in 0..n {
            assert_eq!(r.nodes()[i], -r.nodes()[n - 1 - i]);
            assert!(r.weights()[i] > 0.0);
            assert!(r.nodes()[i].abs() < 1.0);
        }
        let max_k = (2 * n - 1).min(60);
        for k in 0..=max_k {
            let got: f64 = r.nodes().iter().zip(r.weights()).map(|(&x, &w)| w * x.powi(k as i32)).sum();
            let want = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
            assert!((got - want).abs() <= 1e-12 * want.max(1e-2), "n={n} k={k}: {got} vs {want}");
        }
    }

    #[test]
    fn small_rules() {
        let r = gauss_legendre(1).unwrap();
        assert_eq!((r.nodes(), r.weights()), (&[0.0][..], &[2.0][..]));
        let r = gauss_legendre(2).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert!((r.nodes()[1] - s).abs() < 1e-15 && (r.nodes()[0] + s).abs() < 1e-15);
        assert!((r.weights()[0] - 1.0).abs() < 1e-15 && (r.weights()[1] - 1.0).abs() < 1e-15);
        let r = gauss_legendre(3).unwrap();
        let v = r.integrate(-1.0, 1.0, |x| x.powi(4));
        assert!((v - 0.4).abs() < 1e-15);
        assert!(gauss_legendre(0).is_err());
        assert!(gauss_legendre(MAX_GAUSS_POINTS + 1).is_err());
    }

    #[test]
    fn rule_invariants() {
        for n in (1..=64).chain([128, 256, 1024]) {
            check_rule_invariants(n);
        }
    }

    #[test]
    fn nodes_are_legendre_roots() {
        for n in [5usize, 33, 200] {
            let r = gauss_legendre(n).unwrap();
            for &x in r.nodes() {
                let (p, p_prev) = legendre_pair(n, x);
                let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
                // Newton step size bounds the node error
                assert!((p / dp).abs() < 1e-14, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn kronrod_pair_exactness() {
        // K15 integrates degree 22 exactly; the embedded G7 degree 13.
        for k in 0..=22 {
            let mut f = |x: f64| x.powi(k);
            let (val, _, _) = kronrod_15(&mut f, -1.0, 1.0);
            let want = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
            assert!((val - want).abs() < 1e-15, "k={k}");
        }
        let g7 = gauss_legendre(7).unwrap();
        for j in 0..4 {
            assert!((g7.nodes()[6 - j] - XGK[2 * j + 1]).abs() < 1e-15);
            assert!((g7.weights()[6 - j] - WG[j]).abs() < 1e-15);
        }
    }

    #[test]
    fn adaptive_handles_peaks_and_endpoint_singularities() {
        let r = integrate_adaptive(|x| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-14, 1e-13);
        let want = 2.0 / 1e-2 * (1.0f64 / 1e-2).atan();
        assert!((r.value - want).abs() < 1e-10 * want);
        let r = integrate_adaptive(|x| x.sqrt(), 0.0, 1.0, 1e-14, 1e-13);
        assert!((r.value - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(integrate_adaptive(|x| x, 1.0, 1.0, 1e-12, 1e-12).value, 0.0);
    }

    #[test]
    fn angle_rules_are_exact_on_their_classes() {
        let rule = CosThetaRule::new(30).unwrap();
        assert_eq!(rule.len(), 31);
        let xs: Vec<f64> = (0..=30).map(|k| rule.angle(k).cos()).collect();
        // Clenshaw–Curtis: polynomials up to degree N
        for k in 0..=30 {
            let got: f64 = rule.weights(AngleRule::ClenshawCurtis).iter().zip(&xs).map(|(w, x)| w * x.powi(k)).sum();
            let want = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
            assert!((got - want).abs() < 1e-14, "cc k={k}");
        }
        // trapezoid: F(x) = (1 - x^2)^{q + 1/2} x^k makes F(cos t) sin t a cosine polynomial
        for q in 0..4 {
            for k in 0..20 {
                let f = |x: f64| (1.0 - x * x).max(0.0).powf(q as f64 + 0.5) * x.powi(k);
                let got: f64 = rule.weights(AngleRule::Trapezoid).iter().zip(&xs).map(|(w, &x)| w * f(x)).sum();
                let want = integrate_adaptive(f, -1.0, 1.0, 1e-15, 1e-14).value;
                assert!((got - want).abs() < 1e-13, "trap q={q} k={k}: {got} vs {want}");
            }
        }
    }
}
