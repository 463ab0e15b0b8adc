//! Convolution kernels of the Wiener-Hopf determinants: the sine kernel,
//! the Chebyshev kernel K_C, and the Bernstein-Szego kernel K_BS(r, .) in
//! its three integral representations, plus the symbol sigma(r, xi) and
//! Fourier inversion of 1 - sigma back to the kernel.
//!
//! The semi-infinite oscillatory integrals are split three ways:
//! a smooth near section in the t variable, a panel section in u = cosh t
//! with panel widths tied to the oscillation wavelength, and a closed-form
//! tail using the integrand's inverse-power expansion (each power reduces
//! to the sine integral).

use crate::special::bessel::j1;
use crate::special::quad::integrate_panels;
use crate::special::sinint::si;
use crate::{Error, Result};

use std::f64::consts::{FRAC_PI_2, PI};

/// Break between the t-variable near section and the u = cosh t panels.
const U_BREAK: f64 = 3.0;
/// Phase budget per quadrature panel, radians.
const PHASE_PER_PANEL: f64 = 2.5;

/// Quadrature budget for the semi-infinite kernel integrals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelBudget {
    /// where the closed-form inverse-power tail takes over in u = cosh t
    pub tail_cutoff: f64,
    /// Gauss-Legendre nodes per oscillation-sized panel
    pub panel_nodes: usize,
}

impl Default for KernelBudget {
    fn default() -> Self {
        KernelBudget {
            tail_cutoff: 60.0,
            panel_nodes: 16,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum KernelKind {
    /// sin z / (pi z)
    Sine,
    /// The r = 0 kernel, coded independently of the general family.
    ChebyshevKc,
    /// K_BS(r, .), r >= 0.
    BernsteinSzego { r: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Representation {
    /// sin z/(pi z) minus the cos(z cosh t) integral.
    CoshForm,
    /// The sin(z cosh t) integral divided by pi z; requires r > 0.
    SineForm,
    /// Integral of J1(t)/2t from |z|; requires r = 1.
    BesselForm,
}

/// Kernel descriptor: which kernel, and (optionally) which representation.
/// With `representation: None` the evaluator picks the cheapest valid form:
/// Bessel at r = 1, the sine form for r >= 0.1 and |z| >= 1, the cosh form
/// otherwise.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelSpec {
    pub kind: KernelKind,
    pub representation: Option<Representation>,
    pub budget: KernelBudget,
}

impl KernelSpec {
    pub fn sine() -> Self {
        KernelSpec {
            kind: KernelKind::Sine,
            representation: None,
            budget: KernelBudget::default(),
        }
    }

    pub fn chebyshev_kc() -> Self {
        KernelSpec {
            kind: KernelKind::ChebyshevKc,
            representation: None,
            budget: KernelBudget::default(),
        }
    }

    pub fn bernstein_szego(r: f64) -> Self {
        assert!(r >= 0.0);
        KernelSpec {
            kind: KernelKind::BernsteinSzego { r },
            representation: None,
            budget: KernelBudget::default(),
        }
    }

    pub fn with_representation(mut self, rep: Representation) -> Self {
        self.representation = Some(rep);
        self
    }

    pub fn with_budget(mut self, budget: KernelBudget) -> Self {
        self.budget = budget;
        self
    }
}

/// sin(w)/w with the removable singularity filled.
#[inline]
fn sinc(w: f64) -> f64 {
    if w.abs() < 1e-8 {
        1.0 - w * w / 6.0
    } else {
        w.sin() / w
    }
}

/// Evaluate the kernel at real z.
pub fn kernel_eval(spec: &KernelSpec, z: f64) -> Result<f64> {
    let z = z.abs(); // all kernels are even
    match spec.kind {
        KernelKind::Sine => {
            if let Some(rep) = spec.representation {
                return Err(Error::InvalidArgument(format!(
                    "sine kernel has no {rep:?} representation"
                )));
            }
            Ok(sinc(z) / PI)
        }
        KernelKind::ChebyshevKc => match spec.representation {
            None | Some(Representation::CoshForm) => Ok(kc_eval_with(z, spec.budget)),
            Some(rep) => Err(Error::InvalidArgument(format!(
                "K_C is defined by its cosh-form integral; {rep:?} does not apply"
            ))),
        },
        KernelKind::BernsteinSzego { r } => {
            let rep = match spec.representation {
                Some(rep) => rep,
                None => {
                    if (r - 1.0).abs() < 1e-14 {
                        Representation::BesselForm
                    } else if r >= 0.1 && z >= 1.0 {
                        Representation::SineForm
                    } else {
                        Representation::CoshForm
                    }
                }
            };
            match rep {
                Representation::CoshForm => Ok(kbs_cosh_with(r, z, spec.budget)),
                Representation::SineForm => {
                    if r <= 0.0 {
                        Err(Error::InvalidArgument(
                            "sine-form representation requires r > 0".into(),
                        ))
                    } else {
                        Ok(kbs_sine_with(r, z, spec.budget))
                    }
                }
                Representation::BesselForm => {
                    if (r - 1.0).abs() > 1e-14 {
                        Err(Error::InvalidArgument(
                            "Bessel-form representation requires r = 1".into(),
                        ))
                    } else {
                        Ok(kbs_bessel(z))
                    }
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// oscillatory tails: I_m = int_U^inf cos(zu) u^-m du, J_m likewise with sin

/// (I_m, J_m) with I_m = int_U^inf cos(zu) u^-m du and J_m the sine twin,
/// for m = 0..=mmax. Only even-m cosine and odd-m sine entries are defined
/// in every regime (the set the kernel tails consume); the remaining
/// entries would need a cosine-integral seed and stay zero for small z.
///
/// Small z: upward recursion seeded by J_1 = pi/2 - Si(zU),
///   I_m = cos(zU)/((m-1) U^{m-1}) - z J_{m-1}/(m-1),
///   J_m = sin(zU)/((m-1) U^{m-1}) + z I_{m-1}/(m-1)
/// (finite at z = 0). Each step multiplies rounding noise by z/(m-1), so
/// past z = 15 the oscillation-side parts integration is used instead,
///   I_k = -sin(zU) U^{-k}/z + (k/z) J_{k+1},
///   J_k =  cos(zU) U^{-k}/z - (k/z) I_{k+1},
/// iterated downward from leading-term seeds; its noise is damped by
/// k/(zU) per level.
fn power_tails(z: f64, u: f64, mmax: usize) -> (Vec<f64>, Vec<f64>) {
    if z >= 15.0 {
        let top = mmax + 8;
        let mut ci = vec![0.0; top + 1];
        let mut sj = vec![0.0; top + 1];
        let (c, s) = ((z * u).cos(), (z * u).sin());
        let upow_top = u.powi(top as i32);
        ci[top] = -s / (z * upow_top);
        sj[top] = c / (z * upow_top);
        let mut upow = upow_top / u; // u^k for k = top-1 downward
        for k in (1..top).rev() {
            ci[k] = -s / (z * upow) + (k as f64 / z) * sj[k + 1];
            sj[k] = c / (z * upow) - (k as f64 / z) * ci[k + 1];
            upow /= u;
        }
        ci.truncate(mmax + 1);
        sj.truncate(mmax + 1);
        return (ci, sj);
    }
    let mut ci = vec![0.0; mmax + 1];
    let mut sj = vec![0.0; mmax + 1];
    sj[1] = FRAC_PI_2 - si(z * u);
    let (c, s) = ((z * u).cos(), (z * u).sin());
    let mut upow = 1.0; // u^{m-1}
    for m in 2..=mmax {
        upow *= u;
        let k = (m - 1) as f64;
        ci[m] = c / (k * upow) - z * sj[m - 1] / k;
        sj[m] = s / (k * upow) + z * ci[m - 1] / k;
    }
    (ci, sj)
}

/// J_m / z, stable as z -> 0 (used by the sine form, which divides by z).
fn power_tail_sin_over_z(z: f64, u: f64, m: usize, ci: &[f64]) -> f64 {
    let k = (m - 1) as f64;
    let upow = u.powi(m as i32 - 2);
    sinc(z * u) / (k * upow) + ci[m - 1] / k
}

// ---------------------------------------------------------------------------
// cosh form

/// g_r(t) = (sinh t cosh t / (sinh^2 t + r^2) - 1) sinh t, written as
/// sinh t (sinh t e^{-t} - r^2) / (sinh^2 t + r^2) to avoid cancellation.
fn g_cosh(r: f64, t: f64) -> f64 {
    let sh = t.sinh();
    let e = (-t).exp();
    sh * (sh * e - r * r) / (sh * sh + r * r)
}

/// Same integrand in the u = cosh t variable:
/// G_r(u) = (sqrt(u^2-1)/(u + sqrt(u^2-1)) - r^2) / (u^2 - 1 + r^2).
fn g_cosh_u(r: f64, u: f64) -> f64 {
    let w = (u * u - 1.0).sqrt();
    (w / (u + w) - r * r) / (u * u - 1.0 + r * r)
}

/// Inverse-power tail coefficients of G_r: G_r(u) ~ c2/u^2 + c4/u^4 + ...
fn g_tail_coeffs(r: f64) -> [f64; 4] {
    let q = 1.0 - r * r;
    let c2 = 0.5 - r * r;
    let c4 = c2 * q - 0.125;
    let c6 = c2 * q * q - q / 8.0 - 1.0 / 16.0;
    let c8 = c2 * q * q * q - q * q / 8.0 - q / 16.0 - 5.0 / 128.0;
    [c2, c4, c6, c8]
}

/// int_0^inf cos(z cosh t) g_r(t) dt for z >= 0.
fn cosh_integral(r: f64, z: f64, budget: KernelBudget) -> f64 {
    let u_tail = budget.tail_cutoff;
    let nodes = budget.panel_nodes;
    let t_break = U_BREAK.acosh();
    // near section, smooth in t
    let near_panels = (2.0 * z * (U_BREAK - 1.0) / (2.0 * PHASE_PER_PANEL)).ceil() as usize + 4;
    let near = integrate_panels(0.0, t_break, near_panels, nodes, |t| {
        (z * t.cosh()).cos() * g_cosh(r, t)
    });
    // panel section in u
    let width = (PHASE_PER_PANEL / z.max(0.4)).min(6.0);
    let mid_panels = ((u_tail - U_BREAK) / width).ceil() as usize;
    let mid = integrate_panels(U_BREAK, u_tail, mid_panels, nodes, |u| {
        (z * u).cos() * g_cosh_u(r, u)
    });
    // closed-form tail
    let [c2, c4, c6, c8] = g_tail_coeffs(r);
    let (ci, _) = power_tails(z, u_tail, 8);
    let tail = c2 * ci[2] + c4 * ci[4] + c6 * ci[6] + c8 * ci[8];
    near + mid + tail
}

/// K_BS(r, z) by the cosh-form definition (the oracle representation).
#[cfg(test)]
fn kbs_cosh(r: f64, z: f64) -> f64 {
    kbs_cosh_with(r, z, KernelBudget::default())
}

fn kbs_cosh_with(r: f64, z: f64, budget: KernelBudget) -> f64 {
    sinc(z) / PI - cosh_integral(r, z, budget) / PI
}

/// K_C independently coded: the integrand reduces to cos(z cosh t) e^{-t}.
#[cfg(test)]
fn kc_eval(z: f64) -> f64 {
    kc_eval_with(z, KernelBudget::default())
}

fn kc_eval_with(z: f64, budget: KernelBudget) -> f64 {
    sinc(z) / PI - kc_integral_with(z, budget) / PI
}

/// int_0^inf cos(z cosh t) e^{-t} dt, exposed for the Toeplitz-entry
/// asymptotics which quote exactly this integral.
pub fn kc_integral(z: f64) -> f64 {
    kc_integral_with(z, KernelBudget::default())
}

fn kc_integral_with(z: f64, budget: KernelBudget) -> f64 {
    let z = z.abs();
    let u_tail = budget.tail_cutoff;
    let nodes = budget.panel_nodes;
    let t_break = U_BREAK.acosh();
    let near_panels = (2.0 * z * (U_BREAK - 1.0) / (2.0 * PHASE_PER_PANEL)).ceil() as usize + 4;
    let near = integrate_panels(0.0, t_break, near_panels, nodes, |t| {
        (z * t.cosh()).cos() * (-t).exp()
    });
    let width = (PHASE_PER_PANEL / z.max(0.4)).min(6.0);
    let mid_panels = ((u_tail - U_BREAK) / width).ceil() as usize;
    // e^{-t} dt = (u - sqrt(u^2-1)) du / sqrt(u^2-1) = G_0(u) du
    let mid = integrate_panels(U_BREAK, u_tail, mid_panels, nodes, |u| {
        let w = (u * u - 1.0).sqrt();
        (z * u).cos() / (w * (u + w))
    });
    let [c2, c4, c6, c8] = g_tail_coeffs(0.0);
    let (ci, _) = power_tails(z, u_tail, 8);
    near + mid + c2 * ci[2] + c4 * ci[4] + c6 * ci[6] + c8 * ci[8]
}

// ---------------------------------------------------------------------------
// sine form (r > 0)

/// h_r(t) = (r^2 cosh^2 t + (r^2-1) sinh^2 t) / (sinh^2 t + r^2)^2.
fn h_sine(r: f64, t: f64) -> f64 {
    let sh = t.sinh();
    let ch = t.cosh();
    let d = sh * sh + r * r;
    (r * r * ch * ch + (r * r - 1.0) * sh * sh) / (d * d)
}

/// Same in u: H_r(u) = ((2r^2-1) u^2 + 1 - r^2) / ((u^2-1+r^2)^2 sqrt(u^2-1)).
fn h_sine_u(r: f64, u: f64) -> f64 {
    let d = u * u - 1.0 + r * r;
    ((2.0 * r * r - 1.0) * u * u + 1.0 - r * r) / (d * d * (u * u - 1.0).sqrt())
}

/// Inverse-power tail of H_r: H_r(u) ~ d3/u^3 + d5/u^5 + d7/u^7.
fn h_tail_coeffs(r: f64) -> [f64; 3] {
    let q = 1.0 - r * r;
    let p = 2.0 * r * r - 1.0;
    let d3 = p;
    let d5 = q + p * (2.0 * q + 0.5);
    let d7 = q * (2.0 * q + 0.5) + p * (3.0 * q * q + q + 0.375);
    [d3, d5, d7]
}

/// K_BS via the sine form: (1/(pi z)) int_0^inf sin(z cosh t) h_r(t) dt.
#[cfg(test)]
fn kbs_sine(r: f64, z: f64) -> f64 {
    kbs_sine_with(r, z, KernelBudget::default())
}

fn kbs_sine_with(r: f64, z: f64, budget: KernelBudget) -> f64 {
    let u_tail = budget.tail_cutoff;
    let nodes = budget.panel_nodes;
    let t_break = U_BREAK.acosh();
    if z < 1e-10 {
        // limit (1/pi) int_1^inf u H_r(u) du
        let near = integrate_panels(0.0, t_break, 8, nodes, |t| t.cosh() * h_sine(r, t));
        let mid = integrate_panels(U_BREAK, u_tail, 24, nodes, |u| u * h_sine_u(r, u));
        let [d3, d5, d7] = h_tail_coeffs(r);
        let u = u_tail;
        let tail = d3 / u + d5 / (3.0 * u * u * u) + d7 / (5.0 * u.powi(5));
        return (near + mid + tail) / PI;
    }
    // sin(z cosh t)/z stays stable written through sinc
    let near_panels = (2.0 * z * (U_BREAK - 1.0) / (2.0 * PHASE_PER_PANEL)).ceil() as usize + 4;
    let near = integrate_panels(0.0, t_break, near_panels, nodes, |t| {
        let u = t.cosh();
        u * sinc(z * u) * h_sine(r, t)
    });
    let width = (PHASE_PER_PANEL / z.max(0.4)).min(6.0);
    let mid_panels = ((u_tail - U_BREAK) / width).ceil() as usize;
    let mid = integrate_panels(U_BREAK, u_tail, mid_panels, nodes, |u| {
        u * sinc(z * u) * h_sine_u(r, u)
    });
    let [d3, d5, d7] = h_tail_coeffs(r);
    let (ci, _) = power_tails(z, u_tail, 8);
    let tail = d3 * power_tail_sin_over_z(z, u_tail, 3, &ci)
        + d5 * power_tail_sin_over_z(z, u_tail, 5, &ci)
        + d7 * power_tail_sin_over_z(z, u_tail, 7, &ci);
    (near + mid + tail) / PI
}

// ---------------------------------------------------------------------------
// Bessel form (r = 1)

/// K_BS(1, z) = int_{|z|}^inf J1(t)/(2t) dt = (1/2)(1 - int_0^{|z|} J1/t dt).
/// The full integral int_0^inf J1(t)/t dt = 1 (verified by a quadrature
/// oracle in the tests).
fn kbs_bessel(z: f64) -> f64 {
    let z = z.abs();
    if z == 0.0 {
        return 0.5;
    }
    let panels = (z / 2.0).ceil() as usize + 1;
    let inner = integrate_panels(0.0, z, panels, 20, |t| {
        if t < 1e-6 {
            0.5 - t * t / 16.0
        } else {
            j1(t) / t
        }
    });
    0.5 * (1.0 - inner)
}

// ---------------------------------------------------------------------------
// symbol and its inversion

/// sigma(r, xi): 0 for |xi| <= 1, |xi| sqrt(xi^2-1)/(xi^2-1+r^2) beyond.
pub fn symbol_sigma(r: f64, xi: f64) -> f64 {
    let a = xi.abs();
    if a <= 1.0 {
        0.0
    } else {
        a * (a * a - 1.0).sqrt() / (a * a - 1.0 + r * r)
    }
}

/// The kernel recovered from the symbol:
/// K(z) = (1/pi) int_0^inf (1 - sigma(r, xi)) cos(xi z) dxi.
/// On [1, Xi] the substitution xi = 1 + tau^2 removes the square-root
/// singularity of sigma at xi = 1 (present at r = 0); the tail uses the
/// inverse-power expansion of 1 - sigma.
pub fn kernel_from_symbol(r: f64, z: f64) -> f64 {
    let z = z.abs();
    let xi_max: f64 = 40.0;
    let head = sinc(z); // int_0^1 cos(xi z) dxi
    let tau_max = (xi_max - 1.0).sqrt();
    let panels = ((z * (xi_max - 1.0)) / PHASE_PER_PANEL).ceil() as usize + 8;
    let mid = integrate_panels(0.0, tau_max, panels, 16, |tau| {
        let xi = 1.0 + tau * tau;
        2.0 * tau * (1.0 - symbol_sigma(r, xi)) * (xi * z).cos()
    });
    // 1 - sigma = -G_r: tail coefficients flip sign
    let [c2, c4, c6, c8] = g_tail_coeffs(r);
    let (ci, _) = power_tails(z, xi_max, 8);
    let tail = -(c2 * ci[2] + c4 * ci[4] + c6 * ci[6] + c8 * ci[8]);
    (head + mid + tail) / PI
}
