//! Exact finite-n determinants of the arc weights sin(theta/2) and
//! 1/sin(theta/2), the A_n product, the F(s) integral, and the ratio
//! diagnostics against their large-n asymptotics.

use crate::arcmap::ArcWeight;
use crate::polybase::{eval_monic_log, PolyFamily};
use crate::special::bessel::{bessel_i0, hankel_pq, j0};
use crate::special::constants::widom_constant;
use crate::special::gamma::ln_binomial;
use crate::special::logsigned::LogSigned;
use crate::special::quad::integrate_panels;
use crate::{Error, Result};

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_4, LN_2, PI};
use std::sync::{Mutex, OnceLock};

/// Which of the two Legendre-driven arc weights a report refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LegendreArc {
    /// f1 = sin(theta/2), P-form.
    F1,
    /// f2 = 1/sin(theta/2), Q-form.
    F2,
}

/// One diagnostic row: exact log-determinant, asymptotic log-value, and
/// their ratio exp(exact - asymptotic).
#[derive(Clone, Debug)]
pub struct AsymptoticReport {
    pub family: LegendreArc,
    pub n: u32,
    pub s: f64,
    pub exact_logdet: LogSigned,
    pub asymptotic_logdet: LogSigned,
    pub ratio: f64,
}

/// A_n = prod_{j=0}^{n-1} 2^{2j} / ((j + 1/2) C(2j, j)^2) in the log domain
/// (the product of the Legendre norms h_0 .. h_{n-1}).
pub fn a_n_product(n: u32) -> Result<LogSigned> {
    if n == 0 {
        return Err(Error::InvalidArgument("A_n starts at n = 1".into()));
    }
    let mut logmag = 0.0;
    for j in 0..n as u64 {
        logmag += 2.0 * j as f64 * LN_2 - (j as f64 + 0.5).ln() - 2.0 * ln_binomial(2 * j, j);
    }
    Ok(LogSigned::new(1, logmag))
}

/// A_n / [2^{1/12} e^{3 zeta'(-1)} n^{-1/4} (2 pi)^n 2^{-n^2}], which tends
/// to 1.
pub fn a_n_asymptotic_ratio(n: u32) -> Result<f64> {
    let nf = n as f64;
    let exact = a_n_product(n)?;
    let asympt = widom_constant().ln() - 0.25 * nf.ln() + nf * (2.0 * PI).ln() - nf * nf * LN_2;
    Ok((exact.logmag - asympt).exp())
}

/// Exact D_{n-1}(f1) or D_{n-1}(f2) on the arc alpha = 2s/n
/// (gamma = cos(s/n)), by the closed product formulas
///   D_{n-1}(f1) = 2^{n^2-n} gamma^{n^2+n} pi^{-n} A_n L_n(1/gamma)
///   D_{n-1}(f2) = (2 gamma)^{n^2-n} pi^{-(n-1)} A_{n-1} t_{n-1}.
pub fn dn_exact(family: LegendreArc, n: u32, s: f64) -> Result<LogSigned> {
    if n == 0 {
        return Err(Error::InvalidArgument("dn_exact needs n >= 1".into()));
    }
    if s.is_nan() || s <= 0.0 {
        return Err(Error::InvalidArgument("dn_exact needs s > 0".into()));
    }
    let nf = n as f64;
    let gamma = (s / nf).cos();
    match family {
        LegendreArc::F1 => {
            let l_top = eval_monic_log(PolyFamily::Legendre, n, 1.0 / gamma);
            let log_pref = (nf * nf - nf) * LN_2 + (nf * nf + nf) * gamma.ln() - nf * PI.ln();
            Ok(a_n_product(n)?.mul(l_top).scale_log(log_pref))
        }
        LegendreArc::F2 => {
            let fw = ArcWeight::f2(2.0 * s / nf)?;
            let t = fw.t_coeff(n - 1, None)?;
            if t == 0.0 {
                return Err(Error::DegenerateFamily(format!("t_{} = 0", n - 1)));
            }
            let a = if n == 1 {
                LogSigned::ONE // empty norm product
            } else {
                a_n_product(n - 1)?
            };
            let log_pref = (nf * nf - nf) * (2.0 * gamma).ln() - (nf - 1.0) * PI.ln();
            Ok(LogSigned::from_f64(t).mul(a).scale_log(log_pref))
        }
    }
}

/// The large-n asymptotic values of the two determinants:
///   f1: 2^{-n}   n^{1/4} sqrt(pi) C e^{-s^2/2} I_0(s)
///   f2: 2^{n-1} n^{1/4} sqrt(pi) C e^{-s^2/2} F(s)
/// with C = 2^{1/12} e^{3 zeta'(-1)}.
pub fn dn_asymptotic(family: LegendreArc, n: u32, s: f64) -> Result<LogSigned> {
    if n == 0 || s.is_nan() || s <= 0.0 {
        return Err(Error::InvalidArgument(
            "dn_asymptotic needs n >= 1 and s > 0".into(),
        ));
    }
    let nf = n as f64;
    let shared = 0.25 * nf.ln() + 0.5 * PI.ln() + widom_constant().ln() - 0.5 * s * s;
    match family {
        LegendreArc::F1 => Ok(LogSigned::new(1, shared - nf * LN_2 + bessel_i0(s).ln())),
        LegendreArc::F2 => {
            let f = f_cap(s, None)?;
            Ok(LogSigned::from_f64(f).scale_log(shared + (nf - 1.0) * LN_2))
        }
    }
}

/// Exact-vs-asymptotic rows over a list of n, ordered by n.
pub fn report(family: LegendreArc, s: f64, n_list: &[u32]) -> Result<Vec<AsymptoticReport>> {
    let mut rows: Vec<AsymptoticReport> = n_list
        .iter()
        .map(|&n| {
            let exact = dn_exact(family, n, s)?;
            let asympt = dn_asymptotic(family, n, s)?;
            Ok(AsymptoticReport {
                family,
                n,
                s,
                exact_logdet: exact,
                asymptotic_logdet: asympt,
                ratio: exact.ratio(asympt),
            })
        })
        .collect::<Result<_>>()?;
    rows.sort_by_key(|r| r.n);
    Ok(rows)
}

/// Hilb-asymptotics check value 2^n L_n(1/gamma) / (sqrt(pi n) I_0(s)) at
/// gamma = cos(s/n); tends to 1.
pub fn hilb_ratio(n: u32, s: f64) -> f64 {
    let nf = n as f64;
    let gamma = (s / nf).cos();
    let l = eval_monic_log(PolyFamily::Legendre, n, 1.0 / gamma);
    (l.logmag + nf * LN_2 - 0.5 * (PI * nf).ln() - bessel_i0(s).ln()).exp()
}

/// Quadrature budget for [`f_cap`].
#[derive(Clone, Copy, Debug)]
pub struct FBudget {
    /// where the J0 asymptotic tail split starts
    pub u_split: f64,
    /// half-period segments summed (with averaging acceleration) in the
    /// fast tail
    pub segments: usize,
}

impl Default for FBudget {
    fn default() -> Self {
        FBudget {
            u_split: 60.0,
            segments: 28,
        }
    }
}

/// F(s) = (1/pi) int_0^inf cos(sqrt(x+s^2))/(x+s^2) J_0(sqrt x) dx,
/// computed after the substitution u = sqrt(x + s^2) as
/// (2/pi) int_s^inf (cos u / u) J_0(sqrt(u^2 - s^2)) du.
///
/// Past u_split the J0 asymptotics split the integrand into a
/// non-oscillatory part with phase u - sqrt(u^2-s^2) -> 0 (integrated
/// exactly after mapping u = U/v^2) and a fast part with phase
/// u + sqrt(u^2-s^2) (alternating half-period sums, averaged to
/// convergence). Naive truncation instead stalls near 1e-3: the slow part
/// decays only like u^{-3/2} with a constant-sign phase.
pub fn f_cap(s: f64, budget: Option<FBudget>) -> Result<f64> {
    if s.is_nan() || s <= 0.0 {
        return Err(Error::InvalidArgument(
            "F(s) diverges at s = 0; s must be positive".into(),
        ));
    }
    let budget = budget.unwrap_or_default();
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64, usize), f64>>> = OnceLock::new();
    let key = (s.to_bits(), budget.u_split.to_bits(), budget.segments);
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(&v) = cache.lock().unwrap().get(&key) {
        return Ok(v);
    }

    let u_split = budget.u_split.max(2.0 * s + 10.0);
    let integrand = |u: f64| 2.0 / PI * u.cos() / u * j0((u * u - s * s).sqrt());
    let panels = ((u_split - s) / 1.5).ceil() as usize + 2;
    let main = integrate_panels(s, u_split, panels, 16, integrand);

    // slow tail: amp(u) [P cos(delta + pi/4) + Q sin(delta + pi/4)],
    // delta = u - w = s^2/(u + w), mapped by u = U/v^2 onto (0, 1]
    let amp_pq = |u: f64| -> (f64, f64, f64) {
        let w = (u * u - s * s).sqrt();
        let (p, q) = hankel_pq(0, w);
        let amp = (2.0 / (PI * w)).sqrt() / (PI * u);
        (amp, p, q)
    };
    let slow = integrate_panels(0.0, 1.0, 6, 16, |v| {
        if v < 1e-12 {
            return 0.0;
        }
        let u = u_split / (v * v);
        let w = (u * u - s * s).sqrt();
        let delta = s * s / (u + w);
        let (amp, p, q) = amp_pq(u);
        let du = 2.0 * u_split / (v * v * v);
        amp * (p * (delta + FRAC_PI_4).cos() + q * (delta + FRAC_PI_4).sin()) * du
    });

    // fast tail: amp(u) [P cos(Sigma) - Q sin(Sigma)], Sigma = u + w - pi/4,
    // summed over half-periods of Sigma and repeatedly averaged
    let fast_f = |u: f64| -> f64 {
        let w = (u * u - s * s).sqrt();
        let sigma = u + w - FRAC_PI_4;
        let (amp, p, q) = amp_pq(u);
        amp * (p * sigma.cos() - q * sigma.sin())
    };
    let mut segs = Vec::with_capacity(budget.segments);
    let mut a = u_split;
    for _ in 0..budget.segments {
        let w = (a * a - s * s).sqrt();
        let b = a + PI / (1.0 + a / w);
        segs.push(integrate_panels(a, b, 1, 12, fast_f));
        a = b;
    }
    let mut partial: Vec<f64> = segs
        .iter()
        .scan(0.0, |acc, v| {
            *acc += v;
            Some(*acc)
        })
        .collect();
    while partial.len() > 1 {
        partial = partial.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    let fast = partial[0];

    let value = main + slow + fast;
    cache.lock().unwrap().insert(key, value);
    Ok(value)
}

/// Independent brute-force integrator for F(s): plain partial integrals of
/// the u-form, averaged over one fast period and Richardson-extrapolated in
/// powers U^{-1/2}, U^{-3/2}, U^{-5/2} of the truncation point.
pub fn f_cap_bruteforce(s: f64) -> Result<f64> {
    if s.is_nan() || s <= 0.0 {
        return Err(Error::InvalidArgument("s must be positive".into()));
    }
    let integrand = |u: f64| 2.0 / PI * u.cos() / u * j0((u * u - s * s).sqrt());
    let points = [50.0f64, 100.0, 200.0, 400.0];
    // running integral from s
    let mut samples = Vec::new();
    let mut acc = 0.0;
    let mut lo = s;
    for &u in &points {
        let panels = ((u - lo) / 1.5).ceil() as usize + 1;
        acc += integrate_panels(lo, u, panels, 16, integrand);
        lo = u;
        // average G over one fast period p: G(u) + (1/p) int (u + p - t) f(t) dt
        let w = (u * u - s * s).sqrt();
        let p = 2.0 * PI / (1.0 + u / w);
        let corr = integrate_panels(u, u + p, 2, 16, |t| (u + p - t) * integrand(t)) / p;
        samples.push((u, acc + corr));
    }
    // fit H(U) = F + a U^{-1/2} + b U^{-3/2} + c U^{-5/2}
    let mut mat = [[0.0f64; 4]; 4];
    let mut rhs = [0.0f64; 4];
    for (i, &(u, h)) in samples.iter().enumerate() {
        let x = 1.0 / u.sqrt();
        mat[i] = [1.0, x, x * x * x, x * x * x * x * x];
        rhs[i] = h;
    }
    // tiny Gaussian elimination
    for k in 0..4 {
        let mut piv = k;
        for i in k + 1..4 {
            if mat[i][k].abs() > mat[piv][k].abs() {
                piv = i;
            }
        }
        mat.swap(k, piv);
        rhs.swap(k, piv);
        for i in k + 1..4 {
            let f = mat[i][k] / mat[k][k];
            for j in k..4 {
                mat[i][j] -= f * mat[k][j];
            }
            rhs[i] -= f * rhs[k];
        }
    }
    let mut sol = [0.0f64; 4];
    for k in (0..4).rev() {
        let mut v = rhs[k];
        for j in k + 1..4 {
            v -= mat[k][j] * sol[j];
        }
        sol[k] = v / mat[k][k];
    }
    Ok(sol[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toeplitz::toeplitz_logdet_direct;

    #[test]
    fn a_n_small_values() {
        // A_1 = 2 (single factor 1/((1/2) * 1)), A_2 = 2 * 4/((3/2) * 4) = 4/3
        assert!((a_n_product(1).unwrap().to_f64() - 2.0).abs() < 1e-14);
        assert!((a_n_product(2).unwrap().to_f64() - 4.0 / 3.0).abs() < 1e-14);
        assert!(a_n_product(0).is_err());
    }

    /// Term-by-term log-gamma evaluation against the incremental product.
    #[test]
    fn a_n_incremental_consistency() {
        let mut acc = LogSigned::ONE;
        for j in 0..1000u64 {
            let h_j = crate::polybase::norm_h_log(PolyFamily::Legendre, j as u32);
            acc = acc.mul(h_j);
            let direct = a_n_product(j as u32 + 1).unwrap();
            assert!(
                (acc.logmag - direct.logmag).abs() <= 1e-10 * direct.logmag.abs().max(1.0),
                "n={}: {} vs {}",
                j + 1,
                acc.logmag,
                direct.logmag
            );
        }
    }

    #[test]
    fn a_n_asymptotics() {
        let r = a_n_asymptotic_ratio(200).unwrap();
        assert!((r - 1.0).abs() < 0.01, "ratio {r}");
        // and it should be drifting toward 1
        let r2 = a_n_asymptotic_ratio(400).unwrap();
        assert!((r2 - 1.0).abs() < (r - 1.0).abs());
    }

    /// D_0(f1) = 2 gamma / pi, from the direct integral of sin(theta/2).
    #[test]
    fn d0_f1_closed_value() {
        let s = 1.0;
        let d = dn_exact(LegendreArc::F1, 1, s).unwrap();
        let gamma = (s / 1.0f64).cos();
        assert!((d.to_f64() - 2.0 * gamma / PI).abs() < 1e-14);
    }

    /// The product formulas against the fully independent Toeplitz pipeline
    /// (quadrature Fourier coefficients + pivoted elimination).
    #[test]
    fn exact_path_matches_direct_determinants() {
        let s = 1.0;
        for n in 2..=20u32 {
            let alpha = 2.0 * s / n as f64;
            let f1 = ArcWeight::f1(alpha).unwrap();
            let lhs = dn_exact(LegendreArc::F1, n, s).unwrap();
            let rhs = toeplitz_logdet_direct(&f1, n - 1, None).unwrap();
            assert!(
                (lhs.logmag - rhs.logmag).abs() < 1e-7,
                "f1 n={n}: {} vs {}",
                lhs.logmag,
                rhs.logmag
            );
            let f2 = ArcWeight::f2(alpha).unwrap();
            let lhs = dn_exact(LegendreArc::F2, n, s).unwrap();
            let rhs = toeplitz_logdet_direct(&f2, n - 1, None).unwrap();
            assert!(
                (lhs.logmag - rhs.logmag).abs() < 1e-7,
                "f2 n={n}: {} vs {}",
                lhs.logmag,
                rhs.logmag
            );
        }
    }

    /// Hilb asymptotics: 2^n L_n(1/gamma)/sqrt(pi n) -> I_0(s).
    #[test]
    fn hilb_check() {
        for &s in &[0.5, 1.0, 2.0] {
            let r = hilb_ratio(400, s);
            assert!((r - 1.0).abs() < 0.01, "s={s}: ratio {r}");
        }
    }

    /// Dual-integrator agreement for F(s).
    #[test]
    fn f_cap_two_integrators_agree() {
        for &s in &[0.5, 1.0, 2.0] {
            let a = f_cap(s, None).unwrap();
            let b = f_cap_bruteforce(s).unwrap();
            assert!(
                (a - b).abs() < 1e-6,
                "s={s}: primary {a} vs brute force {b}"
            );
        }
        assert!(f_cap(0.0, None).is_err());
        assert!(f_cap(-1.0, None).is_err());
    }

    /// 2^n t_n / sqrt(pi n) for the Legendre Q-family approaches F(s).
    #[test]
    fn f_cap_consistent_with_t_asymptotics() {
        let s = 1.0;
        let n = 400u32;
        let fw = ArcWeight::f2(2.0 * s / n as f64).unwrap();
        let t = fw.t_coeff(n, None).unwrap();
        let lhs = t.ln() + n as f64 * LN_2 - 0.5 * (PI * n as f64).ln();
        let f = f_cap(s, None).unwrap();
        assert!(
            (lhs.exp() / f - 1.0).abs() < 0.02,
            "scaled t_n {} vs F(s) {f}",
            lhs.exp()
        );
    }

    /// Large-s envelope |F(s)| <= 1/s^2 (diagnostic print, loose assert).
    #[test]
    fn f_cap_large_s_envelope() {
        for &s in &[2.0, 3.0, 5.0] {
            let f = f_cap(s, None).unwrap();
            println!("F({s}) = {f:.3e}, envelope 1/s^2 = {:.3e}", 1.0 / (s * s));
            assert!(f.abs() < 1.5 / (s * s), "s={s}: F={f}");
        }
    }

    /// Exact-to-asymptotic ratio bands at n = 400.
    #[test]
    fn ratio_bands() {
        for &s in &[0.5, 1.0, 2.0] {
            let rows = report(LegendreArc::F1, s, &[400]).unwrap();
            let r = rows[0].ratio;
            assert!((0.98..=1.02).contains(&r), "f1 s={s}: ratio {r}");
            let rows = report(LegendreArc::F2, s, &[400]).unwrap();
            let r = rows[0].ratio;
            assert!((0.95..=1.05).contains(&r), "f2 s={s}: ratio {r}");
        }
    }

    /// Ratios drift toward 1 as n grows (report rows ordered by n).
    #[test]
    fn ratios_converge() {
        let rows = report(LegendreArc::F1, 1.0, &[100, 200, 400]).unwrap();
        assert!(rows.windows(2).all(|w| w[0].n < w[1].n));
        let d100 = (rows[0].ratio - 1.0).abs();
        let d400 = (rows[2].ratio - 1.0).abs();
        assert!(d400 < d100, "no convergence: {d100} vs {d400}");
        for row in &rows {
            assert!(row.ratio > 0.0);
        }
    }
}
