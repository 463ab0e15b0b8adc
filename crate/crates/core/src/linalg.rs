//! Dense pivoted elimination for determinant evaluation. Matrices here top
//! out near 2000x2000, so O(n^3) with partial pivoting is the whole story;
//! pivoting also gives a trustworthy determinant sign.

use crate::special::logsigned::LogSigned;

/// Row-major square matrix buffer.
pub struct Matrix {
    pub n: usize,
    pub data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> f64>(n: usize, mut f: F) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = f(i, j);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }
}

/// log|det| with sign via in-place LU with partial pivoting.
/// An exactly singular matrix yields sign 0 / logmag -inf.
pub fn logdet_lu(mut a: Matrix) -> LogSigned {
    let n = a.n;
    if n == 0 {
        return LogSigned::ONE;
    }
    let mut sign = 1i8;
    let mut logmag = 0.0f64;
    for k in 0..n {
        // pivot search
        let mut p = k;
        let mut best = a.get(k, k).abs();
        for i in (k + 1)..n {
            let v = a.get(i, k).abs();
            if v > best {
                best = v;
                p = i;
            }
        }
        if best == 0.0 {
            return LogSigned::ZERO;
        }
        if p != k {
            for j in 0..n {
                a.data.swap(k * n + j, p * n + j);
            }
            sign = -sign;
        }
        let pivot = a.get(k, k);
        if pivot < 0.0 {
            sign = -sign;
        }
        logmag += pivot.abs().ln();
        let inv = 1.0 / pivot;
        for i in (k + 1)..n {
            let factor = a.get(i, k) * inv;
            if factor == 0.0 {
                continue;
            }
            for j in (k + 1)..n {
                let v = a.get(i, j) - factor * a.get(k, j);
                a.set(i, j, v);
            }
        }
    }
    LogSigned::new(sign, logmag)
}

/// Determinant of a symmetric matrix via unpivoted LDL^T. Intended for
/// near-identity matrices (I - K) where no pivoting is needed; used as the
/// agreement partner for the general elimination path.
pub fn det_ldlt(a: &Matrix) -> f64 {
    let n = a.n;
    let mut l = vec![0.0f64; n * n];
    let mut d = vec![0.0f64; n];
    for j in 0..n {
        let mut dj = a.get(j, j);
        for k in 0..j {
            dj -= l[j * n + k] * l[j * n + k] * d[k];
        }
        d[j] = dj;
        if dj == 0.0 {
            return 0.0;
        }
        for i in (j + 1)..n {
            let mut v = a.get(i, j);
            for k in 0..j {
                v -= l[i * n + k] * l[j * n + k] * d[k];
            }
            l[i * n + j] = v / dj;
        }
    }
    d.iter().product()
}
