//! Monic orthogonal polynomials on [-1, 1] with their norms h_n.
//!
//! Four families: Chebyshev first/second kind, Legendre, and the
//! Bernstein-Szego family for the weight sqrt(1-x^2)/(1 - gamma^{2r^2} x^2).
//! Evaluation is valid for all real x; the Chebyshev-type families switch to
//! cosh/sinh forms for |x| > 1, which the determinant product formulas need
//! at x = 1/gamma slightly above 1 with degrees up to 10^3.

use crate::special::gamma::ln_binomial;
use crate::special::logsigned::LogSigned;
use crate::special::quad::{QuadKind, QuadratureRule};

use std::f64::consts::{LN_2, PI};

/// Descriptor of a monic interval polynomial family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PolyFamily {
    /// weight 1/sqrt(1-x^2)
    Chebyshev1,
    /// weight sqrt(1-x^2)
    Chebyshev2,
    /// weight 1
    Legendre,
    /// weight sqrt(1-x^2)/(1 - gamma^{2 r^2} x^2), gamma in (0,1], r >= 0
    BernsteinSzego { gamma: f64, r: f64 },
}

impl PolyFamily {
    pub fn bernstein_szego(gamma: f64, r: f64) -> Self {
        assert!(gamma > 0.0 && gamma <= 1.0, "gamma must lie in (0, 1]");
        assert!(r >= 0.0, "r must be nonnegative");
        PolyFamily::BernsteinSzego { gamma, r }
    }

    /// gamma^{2 r^2}, the coefficient of x^2 in the Bernstein-Szego
    /// denominator.
    pub fn bs_rho(&self) -> f64 {
        match self {
            PolyFamily::BernsteinSzego { gamma, r } => (2.0 * r * r * gamma.ln()).exp(),
            _ => panic!("bs_rho is defined for the Bernstein-Szego family only"),
        }
    }

    /// a = (1 - sqrt(1 - gamma^{2 r^2})) / 2, in (0, 1/2], with a = 1/2
    /// exactly when gamma^{2 r^2} = 1.
    pub fn bs_a(&self) -> f64 {
        let rho = self.bs_rho();
        // 1 - sqrt(1 - rho) loses digits for small rho; use rho/(1+sqrt(1-rho))
        let s = (1.0 - rho).sqrt();
        0.5 * rho / (1.0 + s)
    }

    /// The weight function w(x), positive on (-1, 1).
    pub fn weight(&self, x: f64) -> f64 {
        match self {
            PolyFamily::Chebyshev1 => 1.0 / (1.0 - x * x).sqrt(),
            PolyFamily::Chebyshev2 => (1.0 - x * x).sqrt(),
            PolyFamily::Legendre => 1.0,
            PolyFamily::BernsteinSzego { .. } => {
                let rho = self.bs_rho();
                (1.0 - x * x).sqrt() / (1.0 - rho * x * x)
            }
        }
    }
}

/// arccosh(x) for x >= 1 without the cancellation of ln(x + sqrt(x^2-1))
/// near x = 1 (x - 1 is exact there, so the result keeps full precision).
fn arccosh_stable(x: f64) -> f64 {
    debug_assert!(x >= 1.0);
    let e = x - 1.0;
    (e + (e * (2.0 + e)).sqrt()).ln_1p()
}

/// ln cosh(y) for y >= 0 without overflow.
fn ln_cosh(y: f64) -> f64 {
    y - LN_2 + (-2.0 * y).exp().ln_1p()
}

/// ln sinh(y) for y > 0 without overflow.
fn ln_sinh(y: f64) -> f64 {
    if y < 1e-8 {
        y.ln()
    } else {
        y - LN_2 + (-(-2.0 * y).exp()).ln_1p()
    }
}

/// sin((n+1) psi)/sin(psi) evaluated safely, with the limit n+1 at psi = 0
/// and (-1)^n (n+1) at psi = pi.
fn ratio_sin(n: u32, psi: f64) -> f64 {
    let s = psi.sin();
    if s.abs() < 1e-150 {
        let limit = (n + 1) as f64;
        if psi > 1.5 {
            // psi ~ pi
            if n % 2 == 0 {
                limit
            } else {
                -limit
            }
        } else {
            limit
        }
    } else {
        (((n + 1) as f64) * psi).sin() / s
    }
}

/// Monic value P_n(x) for the family (leading coefficient exactly 1).
pub fn eval_monic(fam: PolyFamily, n: u32, x: f64) -> f64 {
    match fam {
        PolyFamily::Chebyshev1 => cheb1_monic(n, x),
        PolyFamily::Chebyshev2 => cheb2_monic(n, x),
        PolyFamily::Legendre => legendre_monic(n, x),
        PolyFamily::BernsteinSzego { .. } => bs_monic(&fam, n, x),
    }
}

/// Log-domain twin of [`eval_monic`]. Monic values scale like 2^{-n}, which
/// underflows doubles past n ~ 1000; product formulas therefore consume this
/// form directly.
pub fn eval_monic_log(fam: PolyFamily, n: u32, x: f64) -> LogSigned {
    match fam {
        PolyFamily::Chebyshev1 => cheb1_monic_log(n, x),
        PolyFamily::Chebyshev2 => cheb2_monic_log(n, x),
        PolyFamily::Legendre => legendre_monic_log(n, x),
        PolyFamily::BernsteinSzego { .. } => bs_monic_log(&fam, n, x),
    }
}

fn cheb1_monic(n: u32, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let scale = (-(n as f64 - 1.0) * LN_2).exp();
    if x.abs() <= 1.0 {
        (n as f64 * x.acos()).cos() * scale
    } else {
        let v = (n as f64 * arccosh_stable(x.abs())).cosh() * scale;
        if x < 0.0 && n % 2 == 1 {
            -v
        } else {
            v
        }
    }
}

fn cheb1_monic_log(n: u32, x: f64) -> LogSigned {
    if n == 0 {
        return LogSigned::ONE;
    }
    let shift = -(n as f64 - 1.0) * LN_2;
    if x.abs() <= 1.0 {
        LogSigned::from_f64((n as f64 * x.acos()).cos()).scale_log(shift)
    } else {
        let mag = ln_cosh(n as f64 * arccosh_stable(x.abs())) + shift;
        let sign = if x < 0.0 && n % 2 == 1 { -1 } else { 1 };
        LogSigned::new(sign, mag)
    }
}

fn cheb2_monic(n: u32, x: f64) -> f64 {
    let scale = (-(n as f64) * LN_2).exp();
    if x.abs() <= 1.0 {
        ratio_sin(n, x.abs().acos()) * scale * parity_sign(n, x)
    } else {
        let t = arccosh_stable(x.abs());
        let v = if t < 1e-8 {
            (n + 1) as f64
        } else {
            ((n as f64 + 1.0) * t).sinh() / t.sinh()
        };
        v * scale * parity_sign(n, x)
    }
}

#[inline]
fn parity_sign(n: u32, x: f64) -> f64 {
    if x < 0.0 && n % 2 == 1 {
        -1.0
    } else {
        1.0
    }
}

fn cheb2_monic_log(n: u32, x: f64) -> LogSigned {
    if n == 0 {
        return LogSigned::ONE;
    }
    let shift = -(n as f64) * LN_2;
    if x.abs() <= 1.0 {
        LogSigned::from_f64(ratio_sin(n, x.abs().acos()) * parity_sign(n, x)).scale_log(shift)
    } else {
        let t = arccosh_stable(x.abs());
        let mag = if t < 1e-8 {
            ((n + 1) as f64).ln()
        } else {
            ln_sinh((n as f64 + 1.0) * t) - ln_sinh(t)
        };
        LogSigned::new(parity_sign(n, x) as i8, mag + shift)
    }
}

fn legendre_monic(n: u32, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0f64;
    let mut cur = x;
    for k in 1..n {
        let kf = k as f64;
        let b = kf * kf / (4.0 * kf * kf - 1.0);
        let next = x * cur - b * prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn legendre_monic_log(n: u32, x: f64) -> LogSigned {
    if n == 0 {
        return LogSigned::ONE;
    }
    let mut prev = 1.0f64;
    let mut cur = x;
    let mut log_scale = 0.0f64;
    for k in 1..n {
        let kf = k as f64;
        let b = kf * kf / (4.0 * kf * kf - 1.0);
        let next = x * cur - b * prev;
        prev = cur;
        cur = next;
        let mag = cur.abs().max(prev.abs());
        if mag > 0.0 && !(1e-120..=1e120).contains(&mag) {
            prev /= mag;
            cur /= mag;
            log_scale += mag.ln();
        }
    }
    if cur == 0.0 {
        LogSigned::ZERO
    } else {
        LogSigned::new(if cur > 0.0 { 1 } else { -1 }, cur.abs().ln() + log_scale)
    }
}

/// sin((k+1)psi)/sin(psi) and cos((k+1)psi) continued to all real x through
/// the monic Chebyshev forms; the 2^k scaling cancels inside.
fn bs_monic(fam: &PolyFamily, k: u32, x: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let a = fam.bs_a();
    let scale = (-(k as f64) * LN_2).exp();
    scale * bs_scaled_value(a, k, x)
}

/// 2^k P_k^{BS}(x): stays O(1) for |x| <= 1 + O(1/k), which is the regime
/// the determinant formulas use.
fn bs_scaled_value(a: f64, k: u32, x: f64) -> f64 {
    let ax = x.abs();
    let v = if ax <= 1.0 {
        let psi = ax.acos();
        let s = ratio_sin(k, psi);
        let c = ((k as f64 + 1.0) * psi).cos();
        ((1.0 - 2.0 * a * ax * ax) * s + 2.0 * a * ax * c) / (1.0 - a)
    } else {
        let t = arccosh_stable(ax);
        let (s, c) = if t < 1e-8 {
            ((k + 1) as f64, 1.0)
        } else {
            (
                ((k as f64 + 1.0) * t).sinh() / t.sinh(),
                ((k as f64 + 1.0) * t).cosh(),
            )
        };
        ((1.0 - 2.0 * a * ax * ax) * s + 2.0 * a * ax * c) / (1.0 - a)
    };
    v * parity_sign(k, x)
}

fn bs_monic_log(fam: &PolyFamily, k: u32, x: f64) -> LogSigned {
    if k == 0 {
        return LogSigned::ONE;
    }
    let a = fam.bs_a();
    let shift = -(k as f64) * LN_2;
    let ax = x.abs();
    if ax <= 1.0 || arccosh_stable(ax) * (k as f64 + 1.0) < 600.0 {
        return LogSigned::from_f64(bs_scaled_value(a, k, x)).scale_log(shift);
    }
    // factor e^{(k+1)t} out of sinh/cosh to avoid overflow
    let t = arccosh_stable(ax);
    let q = (-2.0 * (k as f64 + 1.0) * t).exp();
    let bracket = (1.0 - 2.0 * a * ax * ax) * (1.0 - q) / (2.0 * t.sinh()) + a * ax * (1.0 + q);
    let mag = (k as f64 + 1.0) * t + (bracket / (1.0 - a)).abs().ln() + shift;
    let sign = (bracket.signum() * parity_sign(k, x)) as i8;
    LogSigned::new(sign, mag)
}

/// The norm h_n = int_{-1}^{1} P_n(x)^2 w(x) dx, by the family closed forms.
pub fn norm_h(fam: PolyFamily, n: u32) -> f64 {
    norm_h_log(fam, n).to_f64()
}

/// Log-domain norm (Legendre norms need log-domain binomials past n ~ 500).
pub fn norm_h_log(fam: PolyFamily, n: u32) -> LogSigned {
    let nf = n as f64;
    let logmag = match fam {
        PolyFamily::Chebyshev1 => {
            if n == 0 {
                PI.ln()
            } else {
                PI.ln() - (2.0 * nf - 1.0) * LN_2
            }
        }
        PolyFamily::Chebyshev2 => PI.ln() - (2.0 * nf + 1.0) * LN_2,
        PolyFamily::Legendre => {
            (2.0 * nf + 1.0) * LN_2
                - (2.0 * nf + 1.0).ln()
                - 2.0 * ln_binomial(2 * n as u64, n as u64)
        }
        PolyFamily::BernsteinSzego { .. } => {
            // h_0 = pi/(2(1-a)); h_n = pi / (2 * 4^n * (1-a)^2), n >= 1
            let a = fam.bs_a();
            if n == 0 {
                PI.ln() - LN_2 - (1.0 - a).ln()
            } else {
                PI.ln() - LN_2 - 2.0 * nf * LN_2 - 2.0 * (1.0 - a).ln()
            }
        }
    };
    LogSigned::new(1, logmag)
}

/// Maximum orthonormality defect
/// max_{0<=m,n<=nmax} | int P_n P_m w / sqrt(h_n h_m) - delta_{nm} |
/// under the given quadrature rule, with the family weight folded into the
/// integrand against the rule's own weight function.
pub fn orthonormality_defect(fam: PolyFamily, nmax: u32, rule: &QuadratureRule) -> f64 {
    let ratio = |x: f64| -> f64 {
        let w = fam.weight(x);
        match rule.kind {
            QuadKind::GaussLegendre => w,
            QuadKind::GaussChebyshev1 => w * (1.0 - x * x).sqrt(),
            QuadKind::GaussChebyshev2 => w / (1.0 - x * x).sqrt(),
        }
    };
    let nn = nmax as usize + 1;
    // value table: values[d][i] = P_d(x_i)
    let values: Vec<Vec<f64>> = (0..nn)
        .map(|d| {
            rule.nodes
                .iter()
                .map(|&x| eval_monic(fam, d as u32, x))
                .collect()
        })
        .collect();
    let norms: Vec<f64> = (0..nn).map(|d| norm_h(fam, d as u32)).collect();
    let mut defect = 0.0f64;
    for n in 0..nn {
        for m in 0..=n {
            let mut acc = 0.0;
            for (i, &w) in rule.weights.iter().enumerate() {
                acc += w * values[n][i] * values[m][i] * ratio(rule.nodes[i]);
            }
            acc /= (norms[n] * norms[m]).sqrt();
            let target = if n == m { 1.0 } else { 0.0 };
            defect = defect.max((acc - target).abs());
        }
    }
    defect
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::quad::make_rule;

    fn lcg(seed: &mut u64) -> f64 {
        *seed = seed
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (*seed >> 11) as f64 / (1u64 << 53) as f64
    }

    #[test]
    fn chebyshev1_at_zero() {
        // monic T2/2 = x^2 - 1/2
        assert!((eval_monic(PolyFamily::Chebyshev1, 2, 0.0) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn legendre_at_zero() {
        // L2 = x^2 - 1/3 from the explicit sum
        assert!((eval_monic(PolyFamily::Legendre, 2, 0.0) + 1.0 / 3.0).abs() < 1e-15);
    }

    /// P_n(1/gamma) = (cosh s + O(n^{-2})) / 2^{n-1} for gamma = cos(s/n).
    #[test]
    fn chebyshev1_above_one_matches_cosh() {
        let n = 100u32;
        let s = 1.0f64;
        let gamma = (s / n as f64).cos();
        let got = eval_monic(PolyFamily::Chebyshev1, n, 1.0 / gamma);
        let want = 2f64.powi(1 - n as i32) * s.cosh();
        assert!((got / want - 1.0).abs() < 1e-4, "ratio {} off", got / want);
    }

    #[test]
    fn norms_closed_values() {
        assert!((norm_h(PolyFamily::Legendre, 0) - 2.0).abs() < 1e-14);
        assert!((norm_h(PolyFamily::Chebyshev2, 0) - PI / 2.0).abs() < 1e-14);
        let fam = PolyFamily::bernstein_szego(0.9, 1.0);
        let a = fam.bs_a();
        let want = PI / (2.0 * 64.0 * (1.0 - a) * (1.0 - a));
        assert!((norm_h(fam, 3) - want).abs() < 1e-14 * want);
    }

    /// Norms against direct quadrature, all four families.
    #[test]
    fn norms_against_quadrature() {
        let rule_gl = make_rule(QuadKind::GaussLegendre, 200).unwrap();
        let rule_c1 = make_rule(QuadKind::GaussChebyshev1, 200).unwrap();
        let rule_c2 = make_rule(QuadKind::GaussChebyshev2, 200).unwrap();
        let bs = PolyFamily::bernstein_szego(0.8, 1.3);
        let cases: [(PolyFamily, &QuadratureRule); 4] = [
            (PolyFamily::Chebyshev1, &rule_c1),
            (PolyFamily::Chebyshev2, &rule_c2),
            (PolyFamily::Legendre, &rule_gl),
            (bs, &rule_c2),
        ];
        for (fam, rule) in cases {
            for n in 0..12u32 {
                let ratio = |x: f64| -> f64 {
                    let w = fam.weight(x);
                    match rule.kind {
                        QuadKind::GaussLegendre => w,
                        QuadKind::GaussChebyshev1 => w * (1.0 - x * x).sqrt(),
                        QuadKind::GaussChebyshev2 => w / (1.0 - x * x).sqrt(),
                    }
                };
                let got = rule.integrate(|x| {
                    let p = eval_monic(fam, n, x);
                    p * p * ratio(x)
                });
                let want = norm_h(fam, n);
                assert!(
                    (got - want).abs() < 1e-12 * want,
                    "{fam:?} n={n}: {got} vs {want}"
                );
            }
        }
    }

    /// Leading coefficient extracted as the top divided difference over n+1
    /// Chebyshev sample points must be 1.
    #[test]
    fn monicity_by_divided_differences() {
        let bs = PolyFamily::bernstein_szego(0.7, 0.8);
        for fam in [
            PolyFamily::Chebyshev1,
            PolyFamily::Chebyshev2,
            PolyFamily::Legendre,
            bs,
        ] {
            for n in [1u32, 2, 5, 17, 50] {
                let pts: Vec<f64> = (0..=n).map(|j| (PI * j as f64 / n as f64).cos()).collect();
                // leading coeff = sum_j P(x_j) / prod_{k != j} (x_j - x_k)
                let mut lc = 0.0;
                for j in 0..=n as usize {
                    let mut denom = 1.0;
                    for k in 0..=n as usize {
                        if k != j {
                            denom *= pts[j] - pts[k];
                        }
                    }
                    lc += eval_monic(fam, n, pts[j]) / denom;
                }
                assert!((lc - 1.0).abs() < 1e-9, "{fam:?} n={n}: leading coeff {lc}");
            }
        }
    }

    #[test]
    fn parity() {
        let mut seed = 777u64;
        let bs = PolyFamily::bernstein_szego(0.95, 1.7);
        for fam in [
            PolyFamily::Chebyshev1,
            PolyFamily::Chebyshev2,
            PolyFamily::Legendre,
            bs,
        ] {
            for _ in 0..100 {
                let x = 2.4 * lcg(&mut seed) - 1.2;
                for n in [1u32, 4, 9, 16] {
                    let a = eval_monic(fam, n, -x);
                    let b = eval_monic(fam, n, x) * if n % 2 == 1 { -1.0 } else { 1.0 };
                    let scale = b.abs().max(1e-300);
                    assert!((a - b).abs() <= 1e-12 * scale, "{fam:?} n={n} x={x}");
                }
            }
        }
    }

    /// At r = 0 the Bernstein-Szego weight degenerates to 1/sqrt(1-x^2)
    /// (a = 1/2) and the monic polynomials coincide with monic Chebyshev-1.
    #[test]
    fn bs_degenerates_to_chebyshev1_at_r_zero() {
        let fam = PolyFamily::bernstein_szego(0.6, 0.0);
        assert!((fam.bs_a() - 0.5).abs() < 1e-15);
        let mut seed = 31u64;
        for _ in 0..50 {
            let x = 2.0 * lcg(&mut seed) - 1.0;
            for n in 1..10u32 {
                let a = eval_monic(fam, n, x);
                let b = eval_monic(PolyFamily::Chebyshev1, n, x);
                assert!((a - b).abs() < 1e-12 * b.abs().max(1.0));
            }
        }
    }

    /// As gamma^{2r^2} -> 0 the weight tends to sqrt(1-x^2) and the
    /// polynomials to monic Chebyshev-2.
    #[test]
    fn bs_degenerates_to_chebyshev2_at_large_r() {
        // choose gamma, r with gamma^{2 r^2} = 1e-12
        let gamma = 0.5f64;
        let r = ((1e-12f64).ln() / (2.0 * gamma.ln())).sqrt();
        let fam = PolyFamily::bernstein_szego(gamma, r);
        assert!(fam.bs_rho() < 1.1e-12);
        let mut seed = 77u64;
        for _ in 0..50 {
            let x = 2.0 * lcg(&mut seed) - 1.0;
            for n in 1..10u32 {
                let a = eval_monic(fam, n, x);
                let b = eval_monic(PolyFamily::Chebyshev2, n, x);
                assert!((a - b).abs() < 1e-11, "n={n} x={x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn orthonormality_defects() {
        let c1 = make_rule(QuadKind::GaussChebyshev1, 64).unwrap();
        assert!(orthonormality_defect(PolyFamily::Chebyshev1, 10, &c1) <= 1e-12);

        let c2 = make_rule(QuadKind::GaussChebyshev2, 128).unwrap();
        let bs = PolyFamily::bernstein_szego(0.9, 1.0);
        assert!(orthonormality_defect(bs, 8, &c2) <= 1e-10);

        let gl = make_rule(QuadKind::GaussLegendre, 16).unwrap();
        assert!(orthonormality_defect(PolyFamily::Legendre, 0, &gl) <= 1e-14);
    }

    /// Log evaluator against the plain evaluator in the overlap regime, and
    /// against a rescaled recurrence oracle at degrees where doubles die.
    #[test]
    fn log_evaluator_consistency() {
        let bs = PolyFamily::bernstein_szego(0.99, 1.0);
        for fam in [
            PolyFamily::Chebyshev1,
            PolyFamily::Chebyshev2,
            PolyFamily::Legendre,
            bs,
        ] {
            for &x in &[-0.9, -0.3, 0.2, 0.7, 0.999, 1.0, 1.00001, 1.5] {
                for n in [0u32, 1, 3, 10, 60] {
                    let expect = eval_monic(fam, n, x);
                    let got = eval_monic_log(fam, n, x).to_f64();
                    let scale = expect.abs().max(1e-300);
                    assert!(
                        (got - expect).abs() <= 1e-11 * scale,
                        "{fam:?} n={n} x={x}: {got} vs {expect}"
                    );
                }
            }
        }
    }

    /// Monic Chebyshev-1 at n = 2000 just above 1: closed hyperbolic form in
    /// the log domain against a rescaled three-term recurrence oracle.
    #[test]
    fn large_degree_log_accuracy() {
        let n = 2000u32;
        let x = 1.0 + 10.0 / (n as f64 * n as f64);
        let got = eval_monic_log(PolyFamily::Chebyshev1, n, x);

        // oracle: monic recurrence p_{k+1} = x p_k - b_k p_{k-1} with
        // b_1 = 1/2, b_k = 1/4 (k >= 2), rescaled to stay in range
        let mut prev = 1.0f64;
        let mut cur = x;
        let mut log_scale = 0.0f64;
        for k in 1..n {
            let b = if k == 1 { 0.5 } else { 0.25 };
            let next = x * cur - b * prev;
            prev = cur;
            cur = next;
            let mag = cur.abs().max(prev.abs());
            if !(1e-100..=1e100).contains(&mag) {
                prev /= mag;
                cur /= mag;
                log_scale += mag.ln();
            }
        }
        let oracle_log = cur.abs().ln() + log_scale;
        assert_eq!(got.sign, 1);
        assert!(
            (got.logmag - oracle_log).abs() < 1e-10 * oracle_log.abs(),
            "log {} vs oracle {}",
            got.logmag,
            oracle_log
        );
    }
}
