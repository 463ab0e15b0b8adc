//! Weights on an arc of the unit circle and their orthogonal polynomials.
//!
//! A symmetric interval weight w(x) on [-1, 1] induces the circle weight
//! f(theta) = w(cos(theta/2)/gamma) sin(theta/2) supported on the arc
//! [alpha, 2pi - alpha], gamma = cos(alpha/2). The monic circle polynomials
//! Phi_n(z) come from the interval families two ways: through the P-family
//! (orthogonal for w) or through the Q-family (orthogonal for
//! w(x)(1 - gamma^2 x^2)), with norms chi_n^{-2} and the moment-like
//! integrals t_k tying the two together. All integrals run in the variable
//! psi, x = cos psi, theta = 2 arccos(gamma cos psi), where the square-root
//! endpoint behaviour of f cancels identically.

use crate::polybase::{eval_monic, eval_monic_log, norm_h_log, PolyFamily};
use crate::special::logsigned::LogSigned;
use crate::special::quad::gauss_legendre;
use crate::{Error, Result};

use num_complex::Complex64;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex};

/// How the arc weight is generated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ArcKind {
    /// f = 1 on the arc (the sine-kernel reference weight f0). No explicit
    /// polynomial family is known for it; only direct-determinant paths
    /// apply.
    Indicator,
    /// f built from the family orthogonal w.r.t. w(x).
    PForm(PolyFamily),
    /// f built from the family orthogonal w.r.t. w(x)(1 - gamma^2 x^2).
    QForm(PolyFamily),
}

/// Arc-supported circle weight with its generating interval family.
#[derive(Clone, Debug)]
pub struct ArcWeight {
    alpha: f64,
    gamma: f64,
    kind: ArcKind,
    t_cache: Arc<Mutex<HashMap<(u32, usize), f64>>>,
}

/// Monic circle polynomial with real coefficients and its norm.
#[derive(Clone, Debug)]
pub struct CirclePoly {
    pub n: u32,
    /// c_0..c_n with c_n = 1 exactly.
    pub coefficients: Vec<f64>,
    pub chi_sq_inv: LogSigned,
}

impl ArcWeight {
    fn new(alpha: f64, kind: ArcKind) -> Result<Self> {
        if !(0.0..=PI).contains(&alpha) {
            return Err(Error::InvalidArgument(format!(
                "arc parameter alpha = {alpha} outside [0, pi]"
            )));
        }
        Ok(ArcWeight {
            alpha,
            gamma: (alpha / 2.0).cos(),
            kind,
            t_cache: Arc::new(Mutex::new(HashMap::new())),
        })
    }

    /// The indicator weight f0 (gap probability reference).
    pub fn f0(alpha: f64) -> Result<Self> {
        Self::new(alpha, ArcKind::Indicator)
    }

    /// f1 = sin(theta/2) on the arc: Legendre P-family (w = 1).
    pub fn f1(alpha: f64) -> Result<Self> {
        Self::new(alpha, ArcKind::PForm(PolyFamily::Legendre))
    }

    /// f2 = 1/sin(theta/2) on the arc: Legendre Q-family
    /// (w (1 - gamma^2 x^2) = 1).
    pub fn f2(alpha: f64) -> Result<Self> {
        Self::new(alpha, ArcKind::QForm(PolyFamily::Legendre))
    }

    /// The Chebyshev-1 arc weight sin(theta/2)/sqrt(1 - cos^2(theta/2)/gamma^2).
    pub fn chebyshev1(alpha: f64) -> Result<Self> {
        Self::new(alpha, ArcKind::PForm(PolyFamily::Chebyshev1))
    }

    pub fn chebyshev2(alpha: f64) -> Result<Self> {
        Self::new(alpha, ArcKind::PForm(PolyFamily::Chebyshev2))
    }

    /// The Bernstein-Szego arc weight with parameter r; the family's own
    /// gamma is tied to the arc (w(x) = sqrt(1-x^2)/(1 - gamma^{2r^2} x^2)).
    pub fn bernstein_szego(alpha: f64, r: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&alpha) {
            return Err(Error::InvalidArgument(format!(
                "arc parameter alpha = {alpha} outside [0, pi]"
            )));
        }
        let gamma = (alpha / 2.0).cos();
        Self::new(alpha, ArcKind::PForm(PolyFamily::bernstein_szego(gamma, r)))
    }

    /// The r = 1 Bernstein-Szego weight through its Q-family, which is
    /// Chebyshev-2 (w(x)(1 - gamma^2 x^2) = sqrt(1 - x^2)).
    pub fn bernstein_szego_r1_q(alpha: f64) -> Result<Self> {
        Self::new(alpha, ArcKind::QForm(PolyFamily::Chebyshev2))
    }

    /// General constructor for a P-form weight with an arbitrary family.
    pub fn p_form(alpha: f64, family: PolyFamily) -> Result<Self> {
        Self::new(alpha, ArcKind::PForm(family))
    }

    /// General constructor for a Q-form weight.
    pub fn q_form(alpha: f64, family: PolyFamily) -> Result<Self> {
        Self::new(alpha, ArcKind::QForm(family))
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn kind(&self) -> ArcKind {
        self.kind
    }

    /// f(theta); zero off the arc, theta reduced mod 2 pi.
    pub fn eval(&self, theta: f64) -> f64 {
        let mut th = theta.rem_euclid(2.0 * PI);
        if th > PI {
            th = 2.0 * PI - th; // f(theta) = f(2 pi - theta)
        }
        if th < self.alpha {
            return 0.0;
        }
        let half = th / 2.0;
        let sin_half = half.sin();
        match self.kind {
            ArcKind::Indicator => 1.0,
            ArcKind::PForm(fam) => {
                let x = (half.cos() / self.gamma).clamp(-1.0, 1.0);
                fam.weight(x) * sin_half
            }
            ArcKind::QForm(fam) => {
                // w = W_Q / (1 - gamma^2 x^2) and (1 - gamma^2 x^2) = sin^2(theta/2)
                let x = (half.cos() / self.gamma).clamp(-1.0, 1.0);
                fam.weight(x) / sin_half
            }
        }
    }

    /// theta(psi) = 2 arccos(gamma cos psi): psi in [0, pi] sweeps the arc.
    pub fn theta_of_psi(&self, psi: f64) -> f64 {
        2.0 * (self.gamma * psi.cos()).acos()
    }

    /// w(cos psi) sin(psi), the psi-variable integrand factor satisfying
    /// f dtheta = 2 gamma * mapped_weight(psi) dpsi. Smooth and bounded for
    /// every supported kind since gamma < 1 keeps 1 - gamma^2 cos^2 psi > 0.
    pub(crate) fn mapped_weight(&self, psi: f64) -> f64 {
        let c = psi.cos();
        let s = psi.sin();
        match self.kind {
            ArcKind::Indicator => s / (1.0 - self.gamma * self.gamma * c * c).sqrt(),
            ArcKind::PForm(fam) => mapped_family_weight(fam, s, c),
            ArcKind::QForm(fam) => {
                mapped_family_weight(fam, s, c) / (1.0 - self.gamma * self.gamma * c * c)
            }
        }
    }

    fn require_p_family(&self) -> Result<PolyFamily> {
        match self.kind {
            ArcKind::PForm(fam) => Ok(fam),
            _ => Err(Error::Unsupported(
                "operation needs the P-form polynomial family".into(),
            )),
        }
    }

    fn require_q_family(&self) -> Result<PolyFamily> {
        match self.kind {
            ArcKind::QForm(fam) => Ok(fam),
            _ => Err(Error::Unsupported(
                "operation needs the Q-form polynomial family".into(),
            )),
        }
    }

    /// P_{n+1}(1/gamma) / P_n(1/gamma), the ratio steering the P-form
    /// formulas; errors out if the denominator vanishes.
    fn p_ratio(&self, n: u32) -> Result<f64> {
        let fam = self.require_p_family()?;
        let x = 1.0 / self.gamma;
        let num = eval_monic_log(fam, n + 1, x);
        let den = eval_monic_log(fam, n, x);
        if den.is_zero() {
            return Err(Error::DegenerateFamily(format!(
                "P_{n}(1/gamma) = 0 at gamma = {}",
                self.gamma
            )));
        }
        Ok(num.div(den).to_f64())
    }

    /// t_k = (1/2pi) int z^{k/2} Q_k(x) f dtheta, computed in psi as
    /// (gamma/pi) int_0^pi cos(k arccos(gamma cos psi)) Q_k(cos psi)
    ///   w(cos psi) sin(psi) dpsi,
    /// with an m-node Gauss-Legendre rule (default m = 4k + 200).
    pub fn t_coeff(&self, k: u32, m: Option<usize>) -> Result<f64> {
        let fam = self.require_q_family()?;
        let m = m.unwrap_or(4 * k as usize + 200);
        if let Some(&v) = self.t_cache.lock().unwrap().get(&(k, m)) {
            return Ok(v);
        }
        let rule = gauss_legendre(m);
        let gamma = self.gamma;
        let g2 = gamma * gamma;
        let mut acc = 0.0;
        for (&u, &w) in rule.nodes.iter().zip(&rule.weights) {
            let psi = 0.5 * PI * (u + 1.0);
            let c = psi.cos();
            let s = psi.sin();
            let phase = (k as f64 * (gamma * c).acos()).cos();
            let q = eval_monic(fam, k, c);
            acc += w * phase * q * mapped_family_weight(fam, s, c) / (1.0 - g2 * c * c);
        }
        let t = acc * gamma / PI * 0.5 * PI; // affine map [-1,1] -> [0,pi]
        self.t_cache.lock().unwrap().insert((k, m), t);
        Ok(t)
    }

    /// Verblunsky coefficient a_{n-1} = -Phi_n(0), n >= 1, through the
    /// form-appropriate ratio:
    ///   P-form: 1 - a_{n-1} = 2 gamma P_{n+1}(1/gamma)/P_n(1/gamma)
    ///   Q-form: 1 + a_{n-1} = 2 gamma t_n/t_{n-1}
    pub fn verblunsky(&self, n: u32) -> Result<f64> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "verblunsky coefficients start at n = 1".into(),
            ));
        }
        match self.kind {
            ArcKind::PForm(_) => Ok(1.0 - 2.0 * self.gamma * self.p_ratio(n)?),
            ArcKind::QForm(_) => {
                let t_prev = self.t_coeff(n - 1, None)?;
                if t_prev == 0.0 {
                    return Err(Error::DegenerateFamily(format!("t_{} = 0", n - 1)));
                }
                let t_n = self.t_coeff(n, None)?;
                Ok(2.0 * self.gamma * t_n / t_prev - 1.0)
            }
            ArcKind::Indicator => Err(Error::Unsupported(
                "no polynomial family attached to the indicator weight".into(),
            )),
        }
    }

    /// chi_n^{-2} in the log domain.
    pub fn chi_sq_inv(&self, n: u32) -> Result<LogSigned> {
        match self.kind {
            ArcKind::PForm(fam) => {
                let x = 1.0 / self.gamma;
                let num = eval_monic_log(fam, n + 1, x);
                let den = eval_monic_log(fam, n, x);
                if den.is_zero() {
                    return Err(Error::DegenerateFamily(format!("P_{n}(1/gamma) = 0")));
                }
                let ratio = num.div(den);
                let log_pref =
                    2.0 * n as f64 * (2.0 * self.gamma).ln() + 2.0 * self.gamma.ln() - PI.ln();
                Ok(ratio.mul(norm_h_log(fam, n)).scale_log(log_pref))
            }
            ArcKind::QForm(fam) => {
                if n == 0 {
                    return Ok(LogSigned::from_f64(self.t_coeff(0, None)?));
                }
                let t_prev = self.t_coeff(n - 1, None)?;
                if t_prev == 0.0 {
                    return Err(Error::DegenerateFamily(format!("t_{} = 0", n - 1)));
                }
                let t_n = self.t_coeff(n, None)?;
                let log_pref = 2.0 * n as f64 * (2.0 * self.gamma).ln() - PI.ln();
                Ok(LogSigned::from_f64(t_n)
                    .div(LogSigned::from_f64(t_prev))
                    .mul(norm_h_log(fam, n - 1))
                    .scale_log(log_pref))
            }
            ArcKind::Indicator => {
                if n == 0 {
                    // chi_0^{-2} = t_0 = mean of f = 1 - alpha/pi
                    Ok(LogSigned::from_f64(1.0 - self.alpha / PI))
                } else {
                    Err(Error::Unsupported(
                        "no polynomial family attached to the indicator weight".into(),
                    ))
                }
            }
        }
    }

    /// Phi_n(z) from the P-family:
    /// (2 gamma)^{n+1} z^{n/2} (z^{1/2} P_{n+1}(x) - rho_n P_n(x)) / (z - 1),
    /// z^{1/2} = e^{i theta/2} with theta in [0, 2 pi). The removable
    /// singularity at z = 1 is filled by a Richardson limit along the circle.
    pub fn phi_from_p(&self, n: u32, z: Complex64) -> Result<Complex64> {
        let fam = self.require_p_family()?;
        let rho = self.p_ratio(n)?;
        let theta = principal_theta(z);
        if theta.min(2.0 * PI - theta) < 1e-6 {
            // limit at z = 1: the symmetric average over +-h is real
            let v = |h: f64| self.phi_p_at_theta(fam, rho, n, h).re;
            let h = 1e-3;
            let limit = (4.0 * v(h / 2.0) - v(h)) / 3.0;
            return Ok(Complex64::new(limit, 0.0));
        }
        Ok(self.phi_p_at_theta(fam, rho, n, theta))
    }

    fn phi_p_at_theta(&self, fam: PolyFamily, rho: f64, n: u32, theta: f64) -> Complex64 {
        let gamma = self.gamma;
        let half = Complex64::from_polar(1.0, theta / 2.0);
        let z = half * half;
        let x = (theta / 2.0).cos() / gamma;
        let p_hi = eval_monic(fam, n + 1, x);
        let p_lo = eval_monic(fam, n, x);
        let pref =
            (2.0 * gamma).powi(n as i32 + 1) * Complex64::from_polar(1.0, n as f64 * theta / 2.0);
        pref * (half * p_hi - rho * p_lo) / (z - 1.0)
    }

    /// Phi_n(z) from the Q-family:
    /// (2 gamma)^n z^{n/2} (Q_n(x) - z^{-1/2} (t_n/t_{n-1}) Q_{n-1}(x)).
    pub fn phi_from_q(&self, n: u32, z: Complex64) -> Result<Complex64> {
        let fam = self.require_q_family()?;
        if n == 0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let t_prev = self.t_coeff(n - 1, None)?;
        if t_prev == 0.0 {
            return Err(Error::DegenerateFamily(format!("t_{} = 0", n - 1)));
        }
        let ratio = self.t_coeff(n, None)? / t_prev;
        let theta = principal_theta(z);
        let gamma = self.gamma;
        let half_conj = Complex64::from_polar(1.0, -theta / 2.0);
        let x = (theta / 2.0).cos() / gamma;
        let q_n = eval_monic(fam, n, x);
        let q_prev = eval_monic(fam, n - 1, x);
        let pref =
            (2.0 * gamma).powi(n as i32) * Complex64::from_polar(1.0, n as f64 * theta / 2.0);
        Ok(pref * (q_n - half_conj * ratio * q_prev))
    }

    /// Phi_n(z) by whichever family the weight carries.
    pub fn phi(&self, n: u32, z: Complex64) -> Result<Complex64> {
        match self.kind {
            ArcKind::PForm(_) => self.phi_from_p(n, z),
            ArcKind::QForm(_) => self.phi_from_q(n, z),
            ArcKind::Indicator => Err(Error::Unsupported(
                "no polynomial family attached to the indicator weight".into(),
            )),
        }
    }

    /// Reversed polynomial Phi_n^*(z) = z^n Phi_n(1/z); real coefficients
    /// make this z^n conj(Phi_n(z)) on the unit circle.
    pub fn phi_star(&self, n: u32, z: Complex64) -> Result<Complex64> {
        let phi = self.phi(n, z)?;
        Ok(z.powu(n) * phi.conj())
    }

    /// Coefficients of Phi_n by an inverse DFT over 2(n+1) uniformly spaced
    /// circle points, rotated off z = 1; imaginary residues are asserted
    /// small and dropped, and the leading coefficient is normalized to 1.
    pub fn coefficients(&self, n: u32) -> Result<CirclePoly> {
        let nn = 2 * (n as usize + 1);
        let mut samples = Vec::with_capacity(nn);
        for j in 0..nn {
            let theta = (2 * j + 1) as f64 * PI / nn as f64;
            samples.push(self.phi(n, Complex64::from_polar(1.0, theta))?);
        }
        let mut coefficients = Vec::with_capacity(n as usize + 1);
        let mut max_imag = 0.0f64;
        for k in 0..=n as usize {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, &s) in samples.iter().enumerate() {
                let ang = -((2 * j + 1) as f64) * (k as f64) * PI / nn as f64;
                acc += s * Complex64::from_polar(1.0, ang);
            }
            acc /= nn as f64;
            max_imag = max_imag.max(acc.im.abs());
            coefficients.push(acc.re);
        }
        debug_assert!(
            max_imag <= 1e-10,
            "imaginary residue {max_imag:e} in circle-polynomial coefficients"
        );
        let lead = coefficients[n as usize];
        debug_assert!(
            (lead - 1.0).abs() <= 1e-9,
            "extracted leading coefficient {lead} drifts from 1"
        );
        for c in &mut coefficients {
            *c /= lead;
        }
        coefficients[n as usize] = 1.0;
        Ok(CirclePoly {
            n,
            coefficients,
            chi_sq_inv: self.chi_sq_inv(n)?,
        })
    }

    /// Rebuild the interval polynomial from the circle one (the inverse
    /// direction of the correspondence): P_n(x) = (Phi_n + Phi_n^*) /
    /// ((2 gamma)^n (1 - a_{n-1}) z^{n/2}) at z = e^{i theta},
    /// x = cos(theta/2)/gamma.
    pub fn reconstruct_p(&self, n: u32, x: f64) -> Result<f64> {
        let a_prev = if n == 0 { -1.0 } else { self.verblunsky(n)? };
        let theta = 2.0 * (self.gamma * x).acos();
        let z = Complex64::from_polar(1.0, theta);
        let phi = self.phi(n, z)?;
        let star = z.powu(n) * phi.conj();
        let denom = (2.0 * self.gamma).powi(n as i32)
            * (1.0 - a_prev)
            * Complex64::from_polar(1.0, n as f64 * theta / 2.0);
        let v = (phi + star) / denom;
        debug_assert!(v.im.abs() <= 1e-9 * v.re.abs().max(1.0));
        Ok(v.re)
    }

    /// Max orthonormality defect
    /// max_{n,m <= nmax} |(1/2pi) int Phi_n conj(Phi_m) f dtheta
    ///                    - delta_{nm} chi_n^{-2}|
    /// under the psi-mapped rule with `nodes` Gauss-Legendre points.
    pub fn orthogonality_defect(&self, nmax: u32, nodes: usize) -> Result<f64> {
        let rule = gauss_legendre(nodes);
        let count = nmax as usize + 1;
        // sample all polynomials over the rule once
        let mut values = vec![vec![Complex64::new(0.0, 0.0); rule.len()]; count];
        let mut weights = Vec::with_capacity(rule.len());
        for (i, (&u, &w)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
            let psi = 0.5 * PI * (u + 1.0);
            let theta = self.theta_of_psi(psi);
            let z = Complex64::from_polar(1.0, theta);
            for (deg, row) in values.iter_mut().enumerate() {
                row[i] = self.phi(deg as u32, z)?;
            }
            weights.push(w * self.mapped_weight(psi) * 0.5 * self.gamma);
        }
        let mut defect = 0.0f64;
        for n in 0..count {
            for m in 0..=n {
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..rule.len() {
                    acc += weights[i] * values[n][i] * values[m][i].conj();
                }
                let target = if n == m {
                    self.chi_sq_inv(n as u32)?.to_f64()
                } else {
                    0.0
                };
                defect = defect.max((acc.re - target).abs().max(acc.im.abs()));
            }
        }
        Ok(defect)
    }
}

/// w(cos psi) sin(psi) per family, written through sin psi to keep full
/// precision at the endpoints.
fn mapped_family_weight(fam: PolyFamily, s: f64, c: f64) -> f64 {
    match fam {
        PolyFamily::Chebyshev1 => 1.0,
        PolyFamily::Chebyshev2 => s * s,
        PolyFamily::Legendre => s,
        PolyFamily::BernsteinSzego { .. } => {
            let rho = fam.bs_rho();
            s * s / (1.0 - rho * c * c)
        }
    }
}

/// Argument of z folded to [0, 2 pi).
fn principal_theta(z: Complex64) -> f64 {
    let a = z.arg();
    if a < 0.0 {
        a + 2.0 * PI
    } else {
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::quad::integrate_panels;

    fn lcg(seed: &mut u64) -> f64 {
        *seed = seed
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (*seed >> 11) as f64 / (1u64 << 53) as f64
    }

    fn circle_point(seed: &mut u64) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * PI * lcg(seed))
    }

    #[test]
    fn weight_values() {
        let alpha = 0.8;
        // Legendre base (w = 1): f(pi) = sin(pi/2) = 1
        let f1 = ArcWeight::f1(alpha).unwrap();
        assert!((f1.eval(PI) - 1.0).abs() < 1e-15);
        // off the arc
        assert_eq!(f1.eval(alpha / 2.0), 0.0);
        assert_eq!(f1.eval(2.0 * PI - alpha / 2.0), 0.0);
        // mod 2 pi reduction
        assert!((f1.eval(PI + 2.0 * PI) - 1.0).abs() < 1e-15);
        // Chebyshev-1 base at theta = pi: 1/sqrt(1 - 0) * 1 = 1
        let fc = ArcWeight::chebyshev1(alpha).unwrap();
        assert!((fc.eval(PI) - 1.0).abs() < 1e-15);
        // symmetry
        assert!((fc.eval(1.3) - fc.eval(2.0 * PI - 1.3)).abs() < 1e-15);
    }

    /// f2 is the pointwise inverse of f1, and the Bernstein-Szego weights
    /// at r = 0 and r = 1 are inverses of each other.
    #[test]
    fn inverse_pairs() {
        let alpha = 0.9;
        let f1 = ArcWeight::f1(alpha).unwrap();
        let f2 = ArcWeight::f2(alpha).unwrap();
        let b0 = ArcWeight::bernstein_szego(alpha, 0.0).unwrap();
        let b1 = ArcWeight::bernstein_szego(alpha, 1.0).unwrap();
        for i in 0..100 {
            let theta = alpha + (2.0 * PI - 2.0 * alpha) * (i as f64 + 0.5) / 100.0;
            let p = f1.eval(theta) * f2.eval(theta);
            assert!((p - 1.0).abs() < 1e-12, "f1*f2 at {theta}: {p}");
            let p = b0.eval(theta) * b1.eval(theta);
            assert!((p - 1.0).abs() < 1e-12, "bs0*bs1 at {theta}: {p}");
        }
    }

    #[test]
    fn phi_zero_is_one() {
        let mut seed = 5u64;
        for fw in [
            ArcWeight::chebyshev1(0.7).unwrap(),
            ArcWeight::f1(1.1).unwrap(),
            ArcWeight::bernstein_szego(0.5, 1.3).unwrap(),
        ] {
            for _ in 0..10 {
                let z = circle_point(&mut seed);
                let v = fw.phi_from_p(0, z).unwrap();
                assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-12, "{v}");
            }
        }
    }

    /// Coefficient extraction: monic leading coefficient and real
    /// coefficients, across families and degrees.
    #[test]
    fn coefficients_monic_and_real() {
        let fws = [
            ArcWeight::chebyshev1(0.8).unwrap(),
            ArcWeight::chebyshev2(0.8).unwrap(),
            ArcWeight::f1(0.8).unwrap(),
            ArcWeight::bernstein_szego(0.8, 1.0).unwrap(),
            ArcWeight::f2(0.8).unwrap(),
        ];
        for fw in &fws {
            for n in [1u32, 2, 5, 12, 30] {
                let cp = fw.coefficients(n).unwrap();
                assert_eq!(cp.coefficients.len(), n as usize + 1);
                assert_eq!(cp.coefficients[n as usize], 1.0);
                assert_eq!(cp.chi_sq_inv.sign, 1);
            }
        }
    }

    /// Verblunsky coefficients: a_n = -Phi_{n+1}(0) checked against the
    /// constant coefficient from the DFT extraction.
    #[test]
    fn verblunsky_equals_minus_constant_coefficient() {
        for fw in [
            ArcWeight::chebyshev1(0.9).unwrap(),
            ArcWeight::f1(0.6).unwrap(),
            ArcWeight::bernstein_szego(1.2, 0.7).unwrap(),
        ] {
            for n in 1..=12u32 {
                let a = fw.verblunsky(n).unwrap();
                let c0 = fw.coefficients(n).unwrap().coefficients[0];
                assert!((a + c0).abs() < 1e-9, "n={n}: a={a} vs -c0={}", -c0);
                assert!(a.abs() < 1.0, "nontrivial measure needs |a| < 1");
            }
        }
    }

    /// Full-circle limit: at alpha = 0 the Chebyshev-1 arc weight is the
    /// Lebesgue weight, whose Verblunsky coefficients all vanish.
    #[test]
    fn lebesgue_limit_verblunsky_zero() {
        let fw = ArcWeight::chebyshev1(0.0).unwrap();
        assert_eq!(fw.gamma(), 1.0);
        for n in 1..=20u32 {
            let a = fw.verblunsky(n).unwrap();
            assert!(a.abs() < 1e-12, "n={n}: a={a}");
        }
    }

    /// t_0 equals the mean of f over the circle (chi_0^{-2} = t_0).
    #[test]
    fn t0_is_mean_of_f() {
        let alpha = 0.85;
        let fw = ArcWeight::f2(alpha).unwrap();
        let t0 = fw.t_coeff(0, None).unwrap();
        let mean = integrate_panels(alpha, 2.0 * PI - alpha, 64, 16, |th| fw.eval(th)) / (2.0 * PI);
        assert!((t0 - mean).abs() < 1e-10, "{t0} vs {mean}");
        // and chi_0^{-2} agrees
        assert!((fw.chi_sq_inv(0).unwrap().to_f64() - t0).abs() < 1e-12);
    }

    /// Positivity of t_k for the Legendre and Chebyshev-2 Q-families at
    /// alpha <= pi/2 (regression, not a theorem).
    #[test]
    fn t_positivity() {
        for alpha in [0.3, 1.2] {
            for fw in [
                ArcWeight::f2(alpha).unwrap(),
                ArcWeight::bernstein_szego_r1_q(alpha).unwrap(),
            ] {
                for k in 0..=50u32 {
                    let t = fw.t_coeff(k, None).unwrap();
                    assert!(t > 0.0, "alpha={alpha} k={k}: t={t}");
                }
            }
        }
    }

    /// The default rule m = 4k + 200 has settled by k = 200: doubling the
    /// rule moves t_k by less than 1e-10 relative.
    #[test]
    fn t_rule_size_converged() {
        for fw in [
            ArcWeight::f2(0.01).unwrap(),
            ArcWeight::bernstein_szego_r1_q(0.01).unwrap(),
        ] {
            let k = 200u32;
            let m = 4 * k as usize + 200;
            let a = fw.t_coeff(k, Some(m)).unwrap();
            let b = fw.t_coeff(k, Some(2 * m)).unwrap();
            assert!(
                (a - b).abs() <= 1e-10 * a.abs(),
                "{:?}: {a:e} vs {b:e}",
                fw.kind()
            );
        }
    }

    /// 2^n t_n -> e^{-s} for the Chebyshev-2 Q-family at alpha = 2s/n.
    #[test]
    fn t_asymptotics_r1() {
        let s = 1.0;
        let n = 400u32;
        let fw = ArcWeight::bernstein_szego_r1_q(2.0 * s / n as f64).unwrap();
        let t = fw.t_coeff(n, None).unwrap();
        let scaled = t * 2f64.powi(n as i32);
        let want = (-s).exp();
        assert!(
            (scaled / want - 1.0).abs() < 0.02,
            "2^n t_n = {scaled} vs e^-s = {want}"
        );
    }

    /// P-form and Q-form agree for the r = 1 Bernstein-Szego weight: same
    /// Phi_n, same Verblunsky coefficients, same norms.
    #[test]
    fn p_and_q_constructions_coincide() {
        let alpha = 0.8;
        let p = ArcWeight::bernstein_szego(alpha, 1.0).unwrap();
        let q = ArcWeight::bernstein_szego_r1_q(alpha).unwrap();
        let mut seed = 99u64;
        for n in 1..=8u32 {
            for _ in 0..7 {
                let z = circle_point(&mut seed);
                let a = p.phi_from_p(n, z).unwrap();
                let b = q.phi_from_q(n, z).unwrap();
                assert!(
                    (a - b).norm() < 1e-9 * a.norm().max(1.0),
                    "n={n} z={z}: {a} vs {b}"
                );
            }
            let av = p.verblunsky(n).unwrap();
            let bv = q.verblunsky(n).unwrap();
            assert!((av - bv).abs() < 1e-9, "n={n}: {av} vs {bv}");
            let ac = p.chi_sq_inv(n).unwrap();
            let bc = q.chi_sq_inv(n).unwrap();
            assert!((ac.logmag - bc.logmag).abs() < 1e-9);
        }
    }

    /// Szego recurrence Phi_{n+1} = z Phi_n - a_n Phi_n^*.
    #[test]
    fn szego_recurrence() {
        let mut seed = 1234u64;
        for fw in [
            ArcWeight::chebyshev1(0.75).unwrap(),
            ArcWeight::f1(0.75).unwrap(),
            ArcWeight::bernstein_szego(0.75, 0.6).unwrap(),
        ] {
            for n in 0..=20u32 {
                let a_n = fw.verblunsky(n + 1).unwrap();
                for _ in 0..20 {
                    let z = circle_point(&mut seed);
                    let lhs = fw.phi(n + 1, z).unwrap();
                    let rhs = z * fw.phi(n, z).unwrap() - a_n * fw.phi_star(n, z).unwrap();
                    assert!(
                        (lhs - rhs).norm() <= 1e-9 * lhs.norm().max(1.0),
                        "n={n}: residual {:e}",
                        (lhs - rhs).norm()
                    );
                }
            }
        }
    }

    /// Inverse direction of the correspondence: the interval polynomial
    /// rebuilt from Phi_n matches eval_monic.
    #[test]
    fn interval_reconstruction() {
        let mut seed = 4321u64;
        for fw in [
            ArcWeight::chebyshev1(0.6).unwrap(),
            ArcWeight::f1(1.0).unwrap(),
            ArcWeight::bernstein_szego(0.9, 1.4).unwrap(),
        ] {
            let fam = match fw.kind() {
                ArcKind::PForm(f) => f,
                _ => unreachable!(),
            };
            for n in [0u32, 1, 2, 7, 15] {
                for _ in 0..20 {
                    let x = 2.0 * lcg(&mut seed) - 1.0;
                    let rebuilt = fw.reconstruct_p(n, x).unwrap();
                    let direct = eval_monic(fam, n, x);
                    assert!(
                        (rebuilt - direct).abs() <= 1e-9 * direct.abs().max(1.0),
                        "n={n} x={x}: {rebuilt} vs {direct}"
                    );
                }
            }
        }
    }

    /// Orthogonality oracle under the psi-mapped quadrature.
    #[test]
    fn circle_orthogonality() {
        for fw in [
            ArcWeight::chebyshev1(0.8).unwrap(),
            ArcWeight::chebyshev2(0.8).unwrap(),
            ArcWeight::f1(0.8).unwrap(),
            ArcWeight::bernstein_szego(0.8, 1.0).unwrap(),
        ] {
            let defect = fw.orthogonality_defect(12, 400).unwrap();
            assert!(defect <= 1e-8, "{:?}: defect {defect:e}", fw.kind());
        }
        // Q-form variant
        let fw = ArcWeight::f2(0.8).unwrap();
        let defect = fw.orthogonality_defect(8, 400).unwrap();
        assert!(defect <= 1e-8, "f2 defect {defect:e}");
    }

    #[test]
    fn degenerate_and_unsupported_errors() {
        let f0 = ArcWeight::f0(0.5).unwrap();
        assert!(f0.verblunsky(1).is_err());
        assert!(f0.phi(1, Complex64::new(1.0, 0.0)).is_err());
        assert!(f0.chi_sq_inv(0).is_ok());
        assert!(f0.chi_sq_inv(1).is_err());
        assert!(ArcWeight::f1(-0.1).is_err());
        assert!(ArcWeight::f1(3.2).is_err());
        // t_coeff needs the Q form
        assert!(ArcWeight::chebyshev1(0.5)
            .unwrap()
            .t_coeff(0, None)
            .is_err());
    }

    /// The Richardson fill-in at z = 1 agrees with nearby direct values.
    #[test]
    fn phi_near_z_one() {
        let fw = ArcWeight::chebyshev1(0.7).unwrap();
        for n in [1u32, 3, 8] {
            let at_one = fw.phi_from_p(n, Complex64::new(1.0, 0.0)).unwrap();
            let nearby = fw.phi_from_p(n, Complex64::from_polar(1.0, 1e-4)).unwrap();
            assert!(
                (at_one - nearby).norm() < 1e-3 * at_one.norm().max(1.0),
                "n={n}: {at_one} vs {nearby}"
            );
            assert!(at_one.im.abs() < 1e-12);
        }
    }
}
