//! Gauss rules for the symmetric Jacobi and generalized Laguerre weights, and
//! adaptive Gauss–Kronrod integration.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::gamma::{gamma, ln_gamma};

/// Nodes and weights of a Gauss rule.
#[derive(Debug)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn apply<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

type Cache = Mutex<HashMap<(u64, usize), Arc<Rule>>>;

fn cached(cache: &'static OnceLock<Cache>, a: f64, n: usize, build: fn(f64, usize) -> Rule) -> Arc<Rule> {
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (a.to_bits(), n);
    if let Some(rule) = map.lock().unwrap().get(&key) {
        return rule.clone();
    }
    let rule = Arc::new(build(a, n));
    map.lock().unwrap().insert(key, rule.clone());
    rule
}

/// `n`-point Gauss rule for the weight `(1 - s²)^a` on `[-1, 1]`, `a > -1`.
pub fn gauss_gegenbauer(a: f64, n: usize) -> Arc<Rule> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    cached(&CACHE, a, n, build_gegenbauer)
}

/// `(P_n, P_{n-1})` of the Jacobi family `P^{(a,a)}`.
fn jacobi_pair(a: f64, n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = (a + 1.0) + (a + 1.0) * (x - 1.0);
    if n == 0 {
        return (p0, 0.0);
    }
    let ab = 2.0 * a;
    for k in 2..=n {
        let k = k as f64;
        let c = 2.0 * k + ab;
        let a1 = 2.0 * k * (k + ab) * (c - 2.0);
        let a3 = (c - 1.0) * c * (c - 2.0);
        let a4 = 2.0 * (k + a - 1.0) * (k + a - 1.0) * c;
        let p2 = (a3 * x * p1 - a4 * p0) / a1;
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

fn build_gegenbauer(a: f64, n: usize) -> Rule {
    assert!(a > -1.0 && n >= 1);
    let nf = n as f64;
    let ab = 2.0 * a;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n.div_ceil(2);
    let c = 2.0 * nf + ab;
    // (1 - x²) P_n'(x), free of the endpoint division
    let q = |x: f64| {
        let (pn, pm) = jacobi_pair(a, n, x);
        (pn, (-nf * c * x * pn + 2.0 * (nf + a) * (nf + a) * pm) / c)
    };
    // monic recurrence coefficients β_k of the weight (1 - x²)^a
    let offdiag: Vec<f64> = (1..n)
        .map(|k| {
            if k == 1 {
                return (1.0 / (2.0 * a + 3.0)).sqrt();
            }
            let k = k as f64;
            (k * (k + ab) / (4.0 * (k + a + 0.5) * (k + a - 0.5))).sqrt()
        })
        .collect();
    for k in 0..half {
        // k-th largest eigenvalue of the Jacobi matrix, polished by Newton in
        // θ = arccos x so that 1 - x² = sin²θ stays accurate near the ends
        let guess = tridiagonal_eigenvalue(&offdiag, n - 1 - k);
        let mut theta = guess.clamp(-1.0, 1.0).acos();
        for _ in 0..8 {
            let (pn, qx) = q(theta.cos());
            let step = pn * theta.sin() / qx;
            theta += step;
            if step.abs() <= 1e-16 * theta.max(1e-3) {
                break;
            }
        }
        let x = theta.cos();
        let (_, qx) = q(x);
        let s2 = theta.sin().powi(2);
        let w = s2 / (qx * qx);
        nodes[k] = x;
        weights[k] = w;
        nodes[n - 1 - k] = -x;
        weights[n - 1 - k] = w;
    }
    // Σ w = ∫ (1 - s²)^a ds = Γ(1/2) Γ(a + 1) / Γ(a + 3/2)
    let mass = (0.5 * std::f64::consts::PI.ln() + ln_gamma(a + 1.0) - ln_gamma(a + 1.5)).exp();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w *= mass / total;
    }
    Rule { nodes, weights }
}

/// The `index`-th smallest eigenvalue of the symmetric tridiagonal matrix with
/// zero diagonal and the given off-diagonal, by Sturm-count bisection.
fn tridiagonal_eigenvalue(offdiag: &[f64], index: usize) -> f64 {
    let n = offdiag.len() + 1;
    let count_below = |x: f64| {
        let mut count = 0;
        let mut q = -x;
        if q < 0.0 {
            count += 1;
        }
        for e in offdiag {
            let prev = if q == 0.0 { f64::EPSILON * e.abs().max(1.0) } else { q };
            q = -x - e * e / prev;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    };
    let (mut lo, mut hi) = (-1.0f64, 1.0f64);
    debug_assert!(index < n);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(mid) > index {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `n`-point Gauss rule for the weight `v^a e^{-v}` on `[0, ∞)`, `a > -1`.
pub fn gauss_laguerre(a: f64, n: usize) -> Arc<Rule> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    cached(&CACHE, a, n, build_laguerre)
}

fn build_laguerre(a: f64, n: usize) -> Rule {
    assert!(a > -1.0 && n >= 1);
    let nf = n as f64;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let mut z = 0.0f64;
    for i in 0..n {
        // initial guesses from Numerical Recipes' gaulag
        z = match i {
            0 => (1.0 + a) * (3.0 + 0.92 * a) / (1.0 + 2.4 * nf + 1.8 * a),
            1 => z + (15.0 + 6.25 * a) / (1.0 + 0.9 * a + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                z + ((1.0 + 2.55 * ai) / (1.9 * ai) + 1.26 * ai * a / (1.0 + 3.5 * ai)) * (z - nodes[i - 2])
                    / (1.0 + 0.3 * a)
            }
        };
        let mut pp = 1.0;
        let mut p2 = 0.0;
        for _ in 0..200 {
            let mut p1 = 1.0;
            p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = ((2.0 * jf + 1.0 + a - z) * p2 - (jf + a) * p3) / (jf + 1.0);
            }
            pp = (nf * p1 - (nf + a) * p2) / z;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 3e-16 * z.abs() {
                break;
            }
        }
        nodes[i] = z;
        weights[i] = -1.0 / (pp * nf * p2);
    }
    let mass = gamma(a + 1.0);
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w *= mass / total;
    }
    Rule { nodes, weights }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One G7/K15 panel: `(kronrod, |kronrod - gauss|)`.
fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Adaptive G7/K15 integration to `abs_tol + rel_tol·|I|`.
///
/// Returns the estimate and the final error bound. Subdivision stops at
/// `max_panels`; callers inspect the error when accuracy matters.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> (f64, f64) {
    integrate_limited(&mut f, a, b, abs_tol, rel_tol, 4000)
}

pub fn integrate_limited<F: FnMut(f64) -> f64>(
    f: &mut F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> (f64, f64) {
    if a == b {
        return (0.0, 0.0);
    }
    let (v, e) = gk15(f, a, b);
    let mut panels = vec![(a, b, v, e)];
    let mut total = v;
    let mut err = e;
    while err > abs_tol.max(rel_tol * total.abs()) && panels.len() < max_panels {
        let (idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .unwrap();
        let (lo, hi, pv, pe) = panels.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            err -= pe;
            panels.push((lo, hi, pv, 0.0));
            continue;
        }
        let (v1, e1) = gk15(f, lo, mid);
        let (v2, e2) = gk15(f, mid, hi);
        total += v1 + v2 - pv;
        err += e1 + e2 - pe;
        panels.push((lo, mid, v1, e1));
        panels.push((mid, hi, v2, e2));
    }
    // re-sum in a fixed order to shed accumulated update error
    panels.sort_by(|x, y| x.0.total_cmp(&y.0));
    let total = panels.iter().map(|p| p.2).sum();
    let err = panels.iter().map(|p| p.3).sum();
    (total, err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn legendre_rule_integrates_polynomials() {
        let rule = gauss_gegenbauer(0.0, 10);
        for k in 0..20 {
            let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
            let got = rule.apply(|x| x.powi(k));
            assert!((got - exact).abs() < 1e-14, "k={k} got={got}");
        }
    }

    #[test]
    fn chebyshev_rule_matches_closed_form() {
        // a = -1/2: nodes cos((2k-1)π/2n), equal weights π/n
        let n = 12;
        let rule = gauss_gegenbauer(-0.5, n);
        for (k, (&x, &w)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
            let expect = ((2 * k + 1) as f64 * PI / (2 * n) as f64).cos();
            assert!((x - expect).abs() < 1e-14);
            assert!((w - PI / n as f64).abs() < 1e-14);
        }
    }

    #[test]
    fn gegenbauer_moments() {
        // ∫ (1-s²)^a s² ds = Γ(3/2)Γ(a+1)/Γ(a+5/2)
        for &a in &[-0.9, -0.3, 0.5, 2.0, 9.5] {
            let rule = gauss_gegenbauer(a, 30);
            let exact = gamma(1.5) * gamma(a + 1.0) / gamma(a + 2.5);
            let got = rule.apply(|x| x * x);
            assert!((got / exact - 1.0).abs() < 1e-13, "a={a}");
        }
    }

    #[test]
    fn laguerre_moments() {
        for &a in &[-0.7, 0.0, 0.5, 3.5, 9.5] {
            let rule = gauss_laguerre(a, 48);
            for k in 0..8 {
                let exact = gamma(a + 1.0 + k as f64);
                let got = rule.apply(|x| x.powi(k));
                assert!((got / exact - 1.0).abs() < 1e-12, "a={a} k={k}");
            }
        }
    }

    #[test]
    fn adaptive_handles_endpoint_singularities() {
        let (v, _) = integrate(|t| (1.0 - t * t).sqrt(), -1.0, 1.0, 1e-14, 1e-13);
        assert!((v - PI / 2.0).abs() < 1e-12);
        let (v, _) = integrate(|t| t.sin() / t.max(1e-300), 0.0, PI, 0.0, 1e-14);
        assert!((v - 1.851_937_051_982_466_2).abs() < 1e-13);
    }
}
