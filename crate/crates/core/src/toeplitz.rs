//! Toeplitz matrices T_n(f) of arc weights: Fourier coefficients, the
//! direct elimination log-determinant, the telescoped norm-product
//! formulas, and the alpha = 2s/n scaling sequences.
//!
//! The direct and product paths are algebraically equal but computationally
//! disjoint (quadrature + pivoted elimination vs. closed norms + values of
//! the interval polynomials at 1/gamma), which is what makes their
//! agreement a meaningful oracle.

use crate::arcmap::{ArcKind, ArcWeight};
use crate::fredholm::closed_form_bs;
use crate::linalg::{logdet_lu, Matrix};
use crate::polybase::{eval_monic_log, norm_h_log};
use crate::special::logsigned::{log_product, LogSigned};
use crate::special::quad::gauss_legendre;
use crate::{Error, Result};

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex};

/// Fourier coefficients I_k of an arc weight, cached per (|k|, rule size).
#[derive(Clone, Debug)]
pub struct FourierCoeffs {
    fw: ArcWeight,
    cache: Arc<Mutex<HashMap<(u32, usize), f64>>>,
}

impl FourierCoeffs {
    pub fn new(fw: ArcWeight) -> Self {
        FourierCoeffs {
            fw,
            cache: Arc::new(Mutex::new(HashMap::new())),
        }
    }

    pub fn weight(&self) -> &ArcWeight {
        &self.fw
    }

    /// I_k with an m-node mapped rule (default m = 4|k| + 200).
    pub fn get(&self, k: i64, m: Option<usize>) -> f64 {
        let ka = k.unsigned_abs() as u32; // I_{-k} = I_k
        let m = m.unwrap_or(4 * ka as usize + 200);
        if let Some(&v) = self.cache.lock().unwrap().get(&(ka, m)) {
            return v;
        }
        let v = fourier_coeff(&self.fw, ka as i64, m);
        self.cache.lock().unwrap().insert((ka, m), v);
        v
    }
}

/// I_k = (1/2pi) int_alpha^{2pi-alpha} e^{-ik theta} f(theta) dtheta.
///
/// For the indicator weight the closed form applies; otherwise the integral
/// is taken in the psi variable,
/// I_k = (gamma/pi) int_0^pi cos(2k arccos(gamma cos psi)) w(cos psi) sin psi dpsi,
/// where the endpoint square roots of f cancel exactly.
pub fn fourier_coeff(fw: &ArcWeight, k: i64, m: usize) -> f64 {
    let ka = k.unsigned_abs();
    if matches!(fw.kind(), ArcKind::Indicator) {
        return if ka == 0 {
            1.0 - fw.alpha() / PI
        } else {
            -(ka as f64 * fw.alpha()).sin() / (PI * ka as f64)
        };
    }
    let rule = gauss_legendre(m);
    let gamma = fw.gamma();
    let mut acc = 0.0;
    for (&u, &w) in rule.nodes.iter().zip(&rule.weights) {
        let psi = 0.5 * PI * (u + 1.0);
        let phase = (2.0 * ka as f64 * (gamma * psi.cos()).acos()).cos();
        acc += w * phase * fw.mapped_weight(psi);
    }
    acc * gamma / PI * 0.5 * PI
}

/// log|det T_n(f)| with sign by dense pivoted elimination of the
/// (n+1) x (n+1) symmetric Toeplitz matrix of Fourier coefficients.
pub fn toeplitz_logdet_direct(fw: &ArcWeight, n: u32, m: Option<usize>) -> Result<LogSigned> {
    if n > 1999 {
        return Err(Error::InvalidArgument(
            "dense elimination budget is n + 1 <= 2000".into(),
        ));
    }
    let coeffs = FourierCoeffs::new(fw.clone());
    let size = n as usize + 1;
    let ik: Vec<f64> = (0..size).map(|d| coeffs.get(d as i64, m)).collect();
    let mat = Matrix::from_fn(size, |i, j| ik[i.abs_diff(j)]);
    Ok(logdet_lu(mat))
}

/// log D_n(f) by the telescoped norm-product formulas:
///   P-form: 2^{n(n+1)} gamma^{n^2+3n+2} pi^{-(n+1)} P_{n+1}(1/gamma) prod h_j
///   Q-form: (2 gamma)^{n(n+1)} t_n pi^{-n} prod h'_j
pub fn toeplitz_logdet_product(fw: &ArcWeight, n: u32) -> Result<LogSigned> {
    let nf = n as f64;
    match fw.kind() {
        ArcKind::PForm(fam) => {
            let gamma = fw.gamma();
            let p_top = eval_monic_log(fam, n + 1, 1.0 / gamma);
            if p_top.is_zero() {
                return Err(Error::DegenerateFamily(format!("P_{}(1/gamma) = 0", n + 1)));
            }
            let norms = log_product((0..=n).map(|j| norm_h_log(fam, j)));
            let log_pref = nf * (nf + 1.0) * 2f64.ln() + (nf * nf + 3.0 * nf + 2.0) * gamma.ln()
                - (nf + 1.0) * PI.ln();
            Ok(p_top.mul(norms).scale_log(log_pref))
        }
        ArcKind::QForm(fam) => {
            let gamma = fw.gamma();
            let t_n = fw.t_coeff(n, None)?;
            if t_n == 0.0 {
                return Err(Error::DegenerateFamily(format!("t_{n} = 0")));
            }
            let norms = log_product((0..n).map(|j| norm_h_log(fam, j)));
            let log_pref = nf * (nf + 1.0) * (2.0 * gamma).ln() - nf * PI.ln();
            Ok(LogSigned::from_f64(t_n).mul(norms).scale_log(log_pref))
        }
        ArcKind::Indicator => Err(Error::Unsupported(
            "the indicator weight has no known polynomial family; use the direct path".into(),
        )),
    }
}

/// log D_n(f) as the factor-by-factor product of chi_j^{-2} (the identity
/// behind the telescoped formulas; kept as their agreement partner).
pub fn toeplitz_logdet_chi_product(fw: &ArcWeight, n: u32) -> Result<LogSigned> {
    let factors: Result<Vec<LogSigned>> = (0..=n).map(|j| fw.chi_sq_inv(j)).collect();
    Ok(log_product(factors?))
}

/// Which scaled arc-weight family a scaling sequence runs over.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ScalingFamily {
    /// Arc indicator (sine-kernel reference); direct determinants only.
    F0,
    /// sin(theta/2) on the arc.
    F1,
    /// 1/sin(theta/2) on the arc.
    F2,
    Chebyshev1,
    Chebyshev2,
    BernsteinSzego {
        r: f64,
    },
}

impl ScalingFamily {
    pub fn weight(&self, alpha: f64) -> Result<ArcWeight> {
        match *self {
            ScalingFamily::F0 => ArcWeight::f0(alpha),
            ScalingFamily::F1 => ArcWeight::f1(alpha),
            ScalingFamily::F2 => ArcWeight::f2(alpha),
            ScalingFamily::Chebyshev1 => ArcWeight::chebyshev1(alpha),
            ScalingFamily::Chebyshev2 => ArcWeight::chebyshev2(alpha),
            ScalingFamily::BernsteinSzego { r } => ArcWeight::bernstein_szego(alpha, r),
        }
    }

    /// The n -> infinity limit of D_n at alpha = 2s/n, where one is known.
    pub fn closed_form_limit(&self, s: f64) -> Option<f64> {
        match *self {
            ScalingFamily::Chebyshev1 => Some(closed_form_bs(0.0, s)),
            ScalingFamily::BernsteinSzego { r } => Some(closed_form_bs(r, s)),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match *self {
            ScalingFamily::F0 => "f0".into(),
            ScalingFamily::F1 => "f1".into(),
            ScalingFamily::F2 => "f2".into(),
            ScalingFamily::Chebyshev1 => "chebyshev1".into(),
            ScalingFamily::Chebyshev2 => "chebyshev2".into(),
            ScalingFamily::BernsteinSzego { r } => format!("bs(r={r})"),
        }
    }
}

/// One row of a scaling-limit table.
#[derive(Clone, Debug)]
pub struct ScalingRow {
    pub n: u32,
    pub alpha: f64,
    pub logdet: LogSigned,
    pub det: f64,
    pub closed_form: Option<f64>,
    pub deviation: Option<f64>,
}

/// D_n at alpha = 2s/n across `n_list` (ascending): the Toeplitz-to-
/// Wiener-Hopf scaling limit. Product-formula determinants for weights
/// with a known family, direct elimination for the indicator.
pub fn scaling_sequence(family: ScalingFamily, s: f64, n_list: &[u32]) -> Result<Vec<ScalingRow>> {
    let closed = family.closed_form_limit(s);
    n_list
        .iter()
        .map(|&n| {
            if n == 0 {
                return Err(Error::InvalidArgument(
                    "scaling sequence needs n >= 1".into(),
                ));
            }
            let alpha = 2.0 * s / n as f64;
            if alpha > PI {
                return Err(Error::InvalidArgument(format!(
                    "alpha = 2s/n = {alpha} exceeds pi at n = {n}"
                )));
            }
            let fw = family.weight(alpha)?;
            let logdet = match family {
                ScalingFamily::F0 => toeplitz_logdet_direct(&fw, n, None)?,
                _ => toeplitz_logdet_product(&fw, n)?,
            };
            let det = logdet.to_f64();
            Ok(ScalingRow {
                n,
                alpha,
                logdet,
                det,
                closed_form: closed,
                deviation: closed.map(|c| (det - c).abs()),
            })
        })
        .collect()
}
