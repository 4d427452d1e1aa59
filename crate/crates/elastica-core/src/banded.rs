//! Symmetric positive definite matrices with a periodic band:
//! A[i][j] can be nonzero only when the cyclic distance between i and j is
//! at most `p`.
//!
//! The Cholesky factor of such a matrix keeps the band in its first n − p
//! rows; the wrap-around entries fill the last p rows completely. Both
//! factorization and solves cost O(n·p²).

use alloc::vec;
use alloc::vec::Vec;

use crate::math;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct CyclicBandedSpd {
    n: usize,
    p: usize,
    // lower[i * (p + 1) + k] = A[i][(i - k) mod n]
    lower: Vec<f64>,
}

impl CyclicBandedSpd {
    pub fn new(n: usize, p: usize) -> Result<Self> {
        if n < 2 * p + 1 {
            return Err(Error::Domain("cyclic band too wide for the matrix size"));
        }
        Ok(CyclicBandedSpd { n, p, lower: vec![0.0; n * (p + 1)] })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn bandwidth(&self) -> usize {
        self.p
    }

    fn slot(&self, i: usize, j: usize) -> Option<usize> {
        let n = self.n;
        let d = (i + n - j) % n;
        if d <= self.p {
            Some(i * (self.p + 1) + d)
        } else if n - d <= self.p {
            Some(j * (self.p + 1) + (n - d))
        } else {
            None
        }
    }

    /// Sets A[i][j] and A[j][i]. Panics outside the band.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let s = self.slot(i, j).expect("entry outside the cyclic band");
        self.lower[s] = v;
    }

    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let s = self.slot(i, j).expect("entry outside the cyclic band");
        self.lower[s] += v;
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.slot(i, j).map_or(0.0, |s| self.lower[s])
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut acc = 0.0;
            for k in 0..=self.p {
                acc += self.get(i, (i + n - k) % n) * x[(i + n - k) % n];
                if k > 0 {
                    acc += self.get(i, (i + k) % n) * x[(i + k) % n];
                }
            }
            y[i] = acc;
        }
        y
    }

    pub fn factor(&self) -> Result<CyclicCholesky> {
        let (n, p) = (self.n, self.p);
        let nb = n - p;
        let mut f = CyclicCholesky { n, p, band: vec![0.0; nb * (p + 1)], tail: vec![0.0; p * n] };
        for r in 0..n {
            let rs = f.row_start(r);
            for j in rs..r {
                let ks = rs.max(f.row_start(j));
                let mut s = self.get(r, j);
                for k in ks..j {
                    s -= f.l(r, k) * f.l(j, k);
                }
                let v = s / f.l(j, j);
                f.set(r, j, v);
            }
            let mut d = self.get(r, r);
            for k in rs..r {
                let v = f.l(r, k);
                d -= v * v;
            }
            if !(d > 0.0) {
                return Err(Error::Singular);
            }
            f.set(r, r, math::sqrt(d));
        }
        Ok(f)
    }
}

#[derive(Debug, Clone)]
pub struct CyclicCholesky {
    n: usize,
    p: usize,
    band: Vec<f64>,
    tail: Vec<f64>,
}

impl CyclicCholesky {
    #[inline]
    fn row_start(&self, r: usize) -> usize {
        if r < self.n - self.p {
            r.saturating_sub(self.p)
        } else {
            0
        }
    }

    #[inline]
    fn l(&self, r: usize, j: usize) -> f64 {
        let nb = self.n - self.p;
        if r < nb {
            self.band[r * (self.p + 1) + (r - j)]
        } else {
            self.tail[(r - nb) * self.n + j]
        }
    }

    #[inline]
    fn set(&mut self, r: usize, j: usize, v: f64) {
        let nb = self.n - self.p;
        if r < nb {
            self.band[r * (self.p + 1) + (r - j)] = v;
        } else {
            self.tail[(r - nb) * self.n + j] = v;
        }
    }

    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let mut x = b.to_vec();
        self.solve_in_place(&mut x)?;
        Ok(x)
    }

    pub fn solve_in_place(&self, x: &mut [f64]) -> Result<()> {
        let n = self.n;
        if x.len() != n {
            return Err(Error::GridMismatch { expected: n, got: x.len() });
        }
        for r in 0..n {
            let mut s = x[r];
            for k in self.row_start(r)..r {
                s -= self.l(r, k) * x[k];
            }
            x[r] = s / self.l(r, r);
        }
        for r in (0..n).rev() {
            x[r] /= self.l(r, r);
            let xr = x[r];
            for k in self.row_start(r)..r {
                x[k] -= self.l(r, k) * xr;
            }
        }
        Ok(())
    }
}
