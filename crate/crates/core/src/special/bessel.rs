//! Bessel functions J0, J1 and the modified function I0.
//!
//! J0/J1 use the ascending power series for |x| <= 15 and the Hankel
//! asymptotic expansion beyond. The series suffers cancellation near the
//! switch point, so its terms and partial sums are carried in double-double
//! arithmetic; the switch point is placed where both branches agree to
//! better than 1e-12 (see the overlap test).

use crate::{Error, Result};

const SWITCH: f64 = 15.0;

/// Bessel function of the first kind, order 0 or 1.
pub fn bessel_j(order: u32, x: f64) -> Result<f64> {
    match order {
        0 => Ok(j0(x)),
        1 => Ok(j1(x)),
        _ => Err(Error::InvalidArgument(format!(
            "bessel_j supports orders 0 and 1, got {order}"
        ))),
    }
}

pub fn j0(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= SWITCH {
        j0_series(ax)
    } else {
        j_asymptotic(0, ax)
    }
}

pub fn j1(x: f64) -> f64 {
    let ax = x.abs();
    let v = if ax <= SWITCH {
        j1_series(ax)
    } else {
        j_asymptotic(1, ax)
    };
    if x < 0.0 {
        -v
    } else {
        v
    }
}

/// Modified Bessel function I0(s) = J0(is), by its (all-positive) series.
/// Monotone increasing with I0(0) = 1.
pub fn bessel_i0(s: f64) -> f64 {
    let q = 0.25 * s * s;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..400 {
        term *= q / ((k * k) as f64);
        sum += term;
        if term < f64::EPSILON * sum {
            break;
        }
    }
    sum
}

// ---------------------------------------------------------------------------
// double-double helpers (unevaluated sum hi + lo, |lo| <= ulp(hi)/2)

#[derive(Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    Dd { hi: s, lo: err }
}

#[inline]
fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    let err = a.mul_add(b, -p);
    Dd { hi: p, lo: err }
}

impl Dd {
    fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    fn add(self, other: Dd) -> Dd {
        let s = two_sum(self.hi, other.hi);
        let lo = s.lo + self.lo + other.lo;
        let t = two_sum(s.hi, lo);
        Dd { hi: t.hi, lo: t.lo }
    }

    fn mul(self, other: Dd) -> Dd {
        let p = two_prod(self.hi, other.hi);
        let lo = p.lo + self.hi * other.lo + self.lo * other.hi;
        let t = two_sum(p.hi, lo);
        Dd { hi: t.hi, lo: t.lo }
    }

    fn div_f64(self, d: f64) -> Dd {
        let q0 = self.hi / d;
        // remainder = self - q0*d, evaluated exactly
        let p = two_prod(q0, d);
        let r = (self.hi - p.hi) + self.lo - p.lo;
        let q1 = r / d;
        let t = two_sum(q0, q1);
        Dd { hi: t.hi, lo: t.lo }
    }

    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

fn j0_series(x: f64) -> f64 {
    // J0 = sum (-1)^k (x^2/4)^k / (k!)^2
    let q = two_prod(x, x).div_f64(4.0);
    let mut term = Dd::from(1.0);
    let mut sum = Dd::from(1.0);
    for k in 1u32..80 {
        term = term.mul(q).div_f64((k * k) as f64).neg();
        sum = sum.add(term);
        if term.hi.abs() < 1e-25 {
            break;
        }
    }
    sum.value()
}

fn j1_series(x: f64) -> f64 {
    // J1 = (x/2) sum (-1)^k (x^2/4)^k / (k! (k+1)!)
    let q = two_prod(x, x).div_f64(4.0);
    let mut term = Dd::from(1.0);
    let mut sum = Dd::from(1.0);
    for k in 1u32..80 {
        term = term.mul(q).div_f64((k * (k + 1)) as f64).neg();
        sum = sum.add(term);
        if term.hi.abs() < 1e-25 {
            break;
        }
    }
    0.5 * x * sum.value()
}

/// Hankel amplitude sums: J_nu(x) ~ sqrt(2/(pi x)) [cos(w) P - sin(w) Q],
/// w = x - nu pi/2 - pi/4, series truncated at their smallest terms.
pub(crate) fn hankel_pq(nu: u32, x: f64) -> (f64, f64) {
    let mu = 4.0 * (nu * nu) as f64;
    let mut p = 1.0;
    let mut q = 0.0;
    // c_k = prod_{j=1..k} (mu - (2j-1)^2) / (8 j x)
    let mut c = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1u32..40 {
        let tw = (2 * k - 1) as f64;
        c *= (mu - tw * tw) / (8.0 * k as f64 * x);
        if c.abs() >= prev {
            break; // divergence point of the asymptotic series
        }
        prev = c.abs();
        match k % 4 {
            1 => q += c,
            2 => p -= c,
            3 => q -= c,
            _ => p += c,
        }
        if c.abs() < 1e-18 {
            break;
        }
    }
    (p, q)
}

fn j_asymptotic(nu: u32, x: f64) -> f64 {
    let (p, q) = hankel_pq(nu, x);
    let w = x - (nu as f64) * std::f64::consts::FRAC_PI_2 - std::f64::consts::FRAC_PI_4;
    (2.0 / (std::f64::consts::PI * x)).sqrt() * (w.cos() * p - w.sin() * q)
}
