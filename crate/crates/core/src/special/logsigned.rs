//! Sign plus log-magnitude representation of real numbers.
//!
//! Determinant prefactors like 2^{n(n+1)} gamma^{n^2+3n+2} overflow doubles
//! near n = 30; everything determinant-shaped in this crate is therefore
//! accumulated as (sign, ln|value|).

/// A real number stored as sign and natural log of absolute value.
/// `logmag` is ignored when `sign == 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogSigned {
    pub sign: i8,
    pub logmag: f64,
}

impl LogSigned {
    pub const ONE: LogSigned = LogSigned {
        sign: 1,
        logmag: 0.0,
    };

    pub const ZERO: LogSigned = LogSigned {
        sign: 0,
        logmag: f64::NEG_INFINITY,
    };

    pub fn new(sign: i8, logmag: f64) -> Self {
        debug_assert!(sign == -1 || sign == 0 || sign == 1);
        if sign == 0 {
            Self::ZERO
        } else {
            LogSigned { sign, logmag }
        }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            LogSigned {
                sign: if x > 0.0 { 1 } else { -1 },
                logmag: x.abs().ln(),
            }
        }
    }

    pub fn to_f64(self) -> f64 {
        self.sign as f64 * self.logmag.exp()
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    pub fn mul(self, other: LogSigned) -> LogSigned {
        if self.sign == 0 || other.sign == 0 {
            return Self::ZERO;
        }
        LogSigned {
            sign: self.sign * other.sign,
            logmag: self.logmag + other.logmag,
        }
    }

    pub fn div(self, other: LogSigned) -> LogSigned {
        debug_assert!(other.sign != 0, "division by log-domain zero");
        if self.sign == 0 {
            return Self::ZERO;
        }
        LogSigned {
            sign: self.sign * other.sign,
            logmag: self.logmag - other.logmag,
        }
    }

    /// Multiply by an exact power factor given in the log domain
    /// (e.g. `scale_log(n*n as f64 * LN_2)` for 2^{n^2}).
    pub fn scale_log(self, log_factor: f64) -> LogSigned {
        if self.sign == 0 {
            return Self::ZERO;
        }
        LogSigned {
            sign: self.sign,
            logmag: self.logmag + log_factor,
        }
    }

    /// exp(self.logmag - other.logmag) with signs: the ratio as a plain f64.
    pub fn ratio(self, other: LogSigned) -> f64 {
        self.div(other).to_f64()
    }
}

/// Product of a sequence of log-signed factors; empty product is +1.
pub fn log_product<I: IntoIterator<Item = LogSigned>>(factors: I) -> LogSigned {
    factors
        .into_iter()
        .fold(LogSigned::ONE, |acc, f| acc.mul(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_product_is_one() {
        assert_eq!(log_product([]), LogSigned::ONE);
    }

    #[test]
    fn signed_product() {
        let got = log_product([LogSigned::new(1, 2f64.ln()), LogSigned::new(-1, 3f64.ln())]);
        assert_eq!(got.sign, -1);
        assert!((got.logmag - 6f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn thousand_factors_no_overflow() {
        let got = log_product((0..1000).map(|_| LogSigned::new(1, 10f64.ln())));
        assert_eq!(got.sign, 1);
        assert!((got.logmag - 1000.0 * 10f64.ln()).abs() < 1e-9);
        assert!(got.logmag.is_finite());
    }

    #[test]
    fn roundtrip_near_unity_is_one_ulp() {
        // ln/exp round-trip is ulp-exact only where |ln x| < 1; the log stored
        // in a single f64 cannot carry sub-ulp information at large exponents.
        let mut x = 0.5f64;
        while x < 2.0 {
            let back = LogSigned::from_f64(x).to_f64();
            let dist = (back.to_bits() as i64 - x.to_bits() as i64).abs();
            assert!(dist <= 1, "x={x}: {back} at {dist} ulp");
            x += 0.001953125;
        }
    }

    #[test]
    fn roundtrip_wide_range_relative() {
        for &e in &[-300, -60, -5, 0, 7, 80, 290] {
            let x = 1.2345678901234567 * 10f64.powi(e);
            let back = LogSigned::from_f64(x).to_f64();
            assert!((back - x).abs() <= 1e-13 * x.abs());
        }
        let back = LogSigned::from_f64(-42.0).to_f64();
        assert_eq!(back.signum(), -1.0);
        assert!((back + 42.0).abs() < 1e-13 * 42.0);
    }

    #[test]
    fn zero_semantics() {
        let z = LogSigned::from_f64(0.0);
        assert_eq!(z.sign, 0);
        assert_eq!(z.to_f64(), 0.0);
        assert_eq!(z.mul(LogSigned::ONE), LogSigned::ZERO);
    }

    #[test]
    fn order_independence() {
        let factors: Vec<LogSigned> = (1..200)
            .map(|k| LogSigned::from_f64(if k % 3 == 0 { -1.0 } else { 1.0 } * k as f64 / 7.0))
            .collect();
        let fwd = log_product(factors.iter().copied());
        let rev = log_product(factors.iter().rev().copied());
        assert_eq!(fwd.sign, rev.sign);
        assert!((fwd.logmag - rev.logmag).abs() < 1e-12);
    }
}
