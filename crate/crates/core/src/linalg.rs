//! Banded LU, symmetric-banded inertia, cubic splines, and small dense helpers.
//!
//! The discretized operators here are all banded (Laplacian stencils plus
//! diagonal couplings), so an in-crate LAPACK-style banded LU with partial
//! pivoting covers Newton systems, resolvent solves and inverse iteration
//! for both real and complex scalars.

use num_complex::Complex64;

pub trait Scalar:
    Copy
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Div<Output = Self>
    + std::ops::Neg<Output = Self>
    + PartialEq
{
    fn zero() -> Self;
    fn one() -> Self;
    fn modulus(self) -> f64;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn modulus(self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn modulus(self) -> f64 {
        self.norm()
    }
}

/// General banded matrix with `kl` sub- and `ku` superdiagonals.
///
/// Entry (i, j) is stored when |i - j| is within the band; LAPACK band layout
/// with `kl` extra rows of fill-in space for the pivoted LU.
#[derive(Debug, Clone)]
pub struct Banded<T: Scalar> {
    pub n: usize,
    pub kl: usize,
    pub ku: usize,
    /// row-major: ab[r * n + j] holds A(r + j - kl - ku, j) for r in 0..2kl+ku+1
    ab: Vec<T>,
}

impl<T: Scalar> Banded<T> {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        Banded { n, kl, ku, ab: vec![T::zero(); (2 * kl + ku + 1) * n] }
    }

    #[inline]
    fn slot(&self, i: usize, j: usize) -> Option<usize> {
        let (i, j) = (i as isize, j as isize);
        let (kl, ku) = (self.kl as isize, self.ku as isize);
        if j - i > ku || i - j > kl {
            return None;
        }
        let r = kl + ku + i - j;
        Some(r as usize * self.n + j as usize)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.slot(i, j).map_or(T::zero(), |s| self.ab[s])
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        let s = self.slot(i, j).expect("entry outside band");
        self.ab[s] = v;
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, v: T) {
        let s = self.slot(i, j).expect("entry outside band");
        self.ab[s] = self.ab[s] + v;
    }

    pub fn add_diag(&mut self, d: &[T]) {
        assert_eq!(d.len(), self.n);
        for (i, &v) in d.iter().enumerate() {
            self.add(i, i, v);
        }
    }

    pub fn matvec(&self, x: &[T], y: &mut [T]) {
        assert_eq!(x.len(), self.n);
        assert_eq!(y.len(), self.n);
        for i in 0..self.n {
            let lo = i.saturating_sub(self.kl);
            let hi = (i + self.ku).min(self.n - 1);
            let mut acc = T::zero();
            for j in lo..=hi {
                acc = acc + self.get(i, j) * x[j];
            }
            y[i] = acc;
        }
    }

    pub fn apply(&self, x: &[T]) -> Vec<T> {
        let mut y = vec![T::zero(); self.n];
        self.matvec(x, &mut y);
        y
    }

    /// Banded product self * other (band widths add).
    pub fn matmul(&self, other: &Banded<T>) -> Banded<T> {
        assert_eq!(self.n, other.n);
        let kl = self.kl + other.kl;
        let ku = self.ku + other.ku;
        let mut out = Banded::zeros(self.n, kl, ku);
        for i in 0..self.n {
            let lo = i.saturating_sub(kl);
            let hi = (i + ku).min(self.n - 1);
            for j in lo..=hi {
                let mut acc = T::zero();
                let klo = i.saturating_sub(self.kl).max(j.saturating_sub(other.ku));
                let khi = (i + self.ku).min(j + other.kl).min(self.n - 1);
                for k in klo..=khi {
                    acc = acc + self.get(i, k) * other.get(k, j);
                }
                if acc != T::zero() {
                    out.set(i, j, acc);
                }
            }
        }
        out
    }

    /// Map entries (e.g. real band promoted to complex).
    pub fn map<U: Scalar>(&self, f: impl Fn(T) -> U) -> Banded<U> {
        Banded { n: self.n, kl: self.kl, ku: self.ku, ab: self.ab.iter().map(|&v| f(v)).collect() }
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// LU factorization with partial pivoting (LAPACK gbtrf style; the band is
    /// widened by `kl` superdiagonals of fill-in before factoring).
    pub fn lu(self) -> Result<BandedLu<T>, crate::Error> {
        let n = self.n;
        let (kl, ku) = (self.kl, self.ku);
        let mut wide = Banded::zeros(n, kl, kl + ku);
        for i in 0..n {
            for j in i.saturating_sub(kl)..=(i + ku).min(n - 1) {
                let v = self.get(i, j);
                if v != T::zero() {
                    wide.set(i, j, v);
                }
            }
        }
        let mut this = wide;
        let kv = kl + ku; // true superdiagonal count of U
        let mut piv = vec![0usize; n];
        for j in 0..n {
            // pivot search in column j, rows j..=min(j+kl, n-1)
            let mut p = j;
            let mut pmax = this.get(j, j).modulus();
            for i in (j + 1)..=(j + kl).min(n - 1) {
                let v = this.get(i, j).modulus();
                if v > pmax {
                    pmax = v;
                    p = i;
                }
            }
            piv[j] = p;
            if pmax == 0.0 {
                return Err(crate::Error::LinearSolve(format!("zero pivot at column {j}")));
            }
            if p != j {
                // swap rows j and p within their shared band window
                let hi = (j + kv).min(n - 1);
                for c in j..=hi {
                    let a = this.get(j, c);
                    let b = this.get(p, c);
                    this.set(j, c, b);
                    this.set(p, c, a);
                }
            }
            let pivot = this.get(j, j);
            for i in (j + 1)..=(j + kl).min(n - 1) {
                let m = this.get(i, j) / pivot;
                this.set(i, j, m);
                if m != T::zero() {
                    let hi = (j + kv).min(n - 1);
                    for c in (j + 1)..=hi {
                        let v = this.get(i, c) - m * this.get(j, c);
                        this.set(i, c, v);
                    }
                }
            }
        }
        Ok(BandedLu { mat: this, piv })
    }
}

/// Factored banded matrix; `solve` works for any number of right-hand sides.
pub struct BandedLu<T: Scalar> {
    mat: Banded<T>,
    piv: Vec<usize>,
}

impl<T: Scalar> BandedLu<T> {
    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let n = self.mat.n;
        assert_eq!(b.len(), n);
        let mut x = b.to_vec();
        // forward: apply pivots and L
        for j in 0..n {
            let p = self.piv[j];
            if p != j {
                x.swap(j, p);
            }
            let xj = x[j];
            if xj != T::zero() {
                for i in (j + 1)..=(j + self.mat.kl).min(n - 1) {
                    x[i] = x[i] - self.mat.get(i, j) * xj;
                }
            }
        }
        // back substitution with U (bandwidth kl+ku)
        let kv = self.mat.kl + self.mat.ku;
        for j in (0..n).rev() {
            let mut acc = x[j];
            for c in (j + 1)..=(j + kv).min(n - 1) {
                acc = acc - self.mat.get(j, c) * x[c];
            }
            x[j] = acc / self.mat.get(j, j);
        }
        x
    }
}

/// Count of eigenvalues of a symmetric banded matrix below `sigma`
/// via unpivoted LDL^T (Sylvester inertia). Retries with a jittered shift
/// when a pivot degenerates.
pub fn symmetric_band_count_below(a: &Banded<f64>, sigma: f64) -> usize {
    let scale = (0..a.n).map(|i| a.get(i, i).abs()).fold(1.0, f64::max);
    let kl = a.kl.max(a.ku);
    let n = a.n;
    let mut jitter = 0.0;
    for _attempt in 0..8 {
        let shift = sigma + jitter;
        // low[i*kl + (i-1-k)] = L(i,k) for i-kl <= k < i
        let mut low = vec![0.0f64; n * kl.max(1)];
        let mut dvec = vec![0.0f64; n];
        let mut neg = 0usize;
        let mut broke = false;
        'cols: for j in 0..n {
            let mut dj = a.get(j, j) - shift;
            for k in j.saturating_sub(kl)..j {
                let l = low[j * kl + (j - 1 - k)];
                dj -= l * l * dvec[k];
            }
            if dj.abs() < 1e-13 * scale.max(1.0) {
                broke = true;
                break 'cols;
            }
            dvec[j] = dj;
            if dj < 0.0 {
                neg += 1;
            }
            for i in (j + 1)..=(j + kl).min(n - 1) {
                let mut v = a.get(i, j);
                for k in i.saturating_sub(kl)..j {
                    v -= low[i * kl + (i - 1 - k)] * low[j * kl + (j - 1 - k)] * dvec[k];
                }
                low[i * kl + (i - 1 - j)] = v / dj;
            }
        }
        if !broke {
            return neg;
        }
        jitter = if jitter == 0.0 { 3e-12 * scale.max(1.0) } else { jitter * 10.0 };
    }
    panic!("inertia count failed: persistent pivot breakdown at sigma = {sigma}");
}

/// Natural "not-a-knot" cubic spline; reproduces polynomials of degree <= 3.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    x: Vec<f64>,
    a: Vec<f64>,
    b: Vec<f64>,
    c: Vec<f64>,
    d: Vec<f64>,
}

impl CubicSpline {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Self {
        let n = x.len();
        assert!(n >= 4, "spline needs at least 4 points");
        let h: Vec<f64> = (0..n - 1).map(|i| x[i + 1] - x[i]).collect();
        // second derivatives m_0..m_{n-1}; not-a-knot eliminates m_0 and m_{n-1}:
        //   m_0 = ((h0+h1) m_1 - h0 m_2) / h1
        //   m_{n-1} = ((h_{n-2}+h_{n-3}) m_{n-2} - h_{n-2} m_{n-3}) / h_{n-3}
        // substituted into the standard interior rows for i = 1 and i = n-2.
        let nn = n - 2; // unknowns m_1..m_{n-2}
        let mut sub = vec![0.0; nn];
        let mut diag = vec![0.0; nn];
        let mut sup = vec![0.0; nn];
        let mut rhs = vec![0.0; nn];
        for i in 1..n - 1 {
            let k = i - 1;
            sub[k] = h[i - 1];
            diag[k] = 2.0 * (h[i - 1] + h[i]);
            sup[k] = h[i];
            rhs[k] = 6.0 * ((y[i + 1] - y[i]) / h[i] - (y[i] - y[i - 1]) / h[i - 1]);
        }
        diag[0] += h[0] * (h[0] + h[1]) / h[1];
        sup[0] -= h[0] * h[0] / h[1];
        diag[nn - 1] += h[n - 2] * (h[n - 2] + h[n - 3]) / h[n - 3];
        sub[nn - 1] -= h[n - 2] * h[n - 2] / h[n - 3];
        // Thomas algorithm
        let mut cp = vec![0.0; nn];
        let mut dp = vec![0.0; nn];
        cp[0] = sup[0] / diag[0];
        dp[0] = rhs[0] / diag[0];
        for i in 1..nn {
            let w = diag[i] - sub[i] * cp[i - 1];
            cp[i] = if i < nn - 1 { sup[i] / w } else { 0.0 };
            dp[i] = (rhs[i] - sub[i] * dp[i - 1]) / w;
        }
        let mut m = vec![0.0; n];
        m[nn] = dp[nn - 1];
        for i in (0..nn - 1).rev() {
            m[i + 1] = dp[i] - cp[i] * m[i + 2];
        }
        m[0] = ((h[0] + h[1]) * m[1] - h[0] * m[2]) / h[1];
        m[n - 1] = ((h[n - 2] + h[n - 3]) * m[n - 2] - h[n - 2] * m[n - 3]) / h[n - 3];
        let mut a = Vec::with_capacity(n - 1);
        let mut b = Vec::with_capacity(n - 1);
        let mut c = Vec::with_capacity(n - 1);
        let mut d = Vec::with_capacity(n - 1);
        for i in 0..n - 1 {
            a.push(y[i]);
            b.push((y[i + 1] - y[i]) / h[i] - h[i] * (2.0 * m[i] + m[i + 1]) / 6.0);
            c.push(m[i] / 2.0);
            d.push((m[i + 1] - m[i]) / (6.0 * h[i]));
        }
        CubicSpline { x, a, b, c, d }
    }

    fn seg(&self, t: f64) -> usize {
        match self.x.binary_search_by(|v| v.partial_cmp(&t).unwrap()) {
            Ok(i) => i.min(self.x.len() - 2),
            Err(i) => i.clamp(1, self.x.len() - 1) - 1,
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        let i = self.seg(t);
        let s = t - self.x[i];
        self.a[i] + s * (self.b[i] + s * (self.c[i] + s * self.d[i]))
    }

    pub fn deriv(&self, t: f64) -> f64 {
        let i = self.seg(t);
        let s = t - self.x[i];
        self.b[i] + s * (2.0 * self.c[i] + 3.0 * s * self.d[i])
    }

    pub fn deriv2(&self, t: f64) -> f64 {
        let i = self.seg(t);
        let s = t - self.x[i];
        2.0 * self.c[i] + 6.0 * s * self.d[i]
    }

    /// Integral from x[0] to t.
    pub fn integral(&self, t: f64) -> f64 {
        let i = self.seg(t);
        let mut acc = 0.0;
        for k in 0..i {
            let h = self.x[k + 1] - self.x[k];
            acc += h * (self.a[k] + h * (self.b[k] / 2.0 + h * (self.c[k] / 3.0 + h * self.d[k] / 4.0)));
        }
        let s = t - self.x[i];
        acc + s * (self.a[i] + s * (self.b[i] / 2.0 + s * (self.c[i] / 3.0 + s * self.d[i] / 4.0)))
    }
}

/// Least-squares straight line y ~ a + b x; returns (a, b, rms residual).
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let sx: f64 = x.iter().sum();
    let sy: f64 = y.iter().sum();
    let sxx: f64 = x.iter().map(|v| v * v).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let det = n * sxx - sx * sx;
    let b = (n * sxy - sx * sy) / det;
    let a = (sy - b * sx) / n;
    let rms = (x
        .iter()
        .zip(y)
        .map(|(&xv, &yv)| {
            let r = yv - a - b * xv;
            r * r
        })
        .sum::<f64>()
        / n)
        .sqrt();
    (a, b, rms)
}

/// Coefficient of determination for the fit y ~ a + b x.
pub fn r_squared(x: &[f64], y: &[f64], a: f64, b: f64) -> f64 {
    let mean = y.iter().sum::<f64>() / y.len() as f64;
    let ss_res: f64 = x.iter().zip(y).map(|(&xv, &yv)| (yv - a - b * xv).powi(2)).sum();
    let ss_tot: f64 = y.iter().map(|&yv| (yv - mean).powi(2)).sum();
    if ss_tot == 0.0 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_banded(rng: &mut ChaCha8Rng, n: usize, kl: usize, ku: usize) -> Banded<f64> {
        let mut a = Banded::zeros(n, kl, ku);
        for i in 0..n {
            for j in i.saturating_sub(kl)..=(i + ku).min(n - 1) {
                a.set(i, j, rng.gen::<f64>() - 0.5);
            }
            a.add(i, i, 3.0); // keep it comfortably nonsingular
        }
        a
    }

    #[test]
    fn banded_lu_solves() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &(n, kl, ku) in &[(12usize, 2usize, 3usize), (40, 3, 3), (75, 1, 4)] {
            let a = random_banded(&mut rng, n, kl, ku);
            let x: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
            let b = a.apply(&x);
            let lu = a.clone().lu().unwrap();
            let xs = lu.solve(&b);
            let err = x.iter().zip(&xs).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max);
            assert!(err < 1e-11, "err = {err:.3e}");
        }
    }

    #[test]
    fn banded_lu_complex() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let n = 50;
        let mut a = Banded::<Complex64>::zeros(n, 2, 2);
        for i in 0..n {
            for j in i.saturating_sub(2)..=(i + 2).min(n - 1) {
                a.set(i, j, Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5));
            }
            a.add(i, i, Complex64::new(4.0, 1.0));
        }
        let x: Vec<Complex64> =
            (0..n).map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)).collect();
        let b = a.apply(&x);
        let xs = a.clone().lu().unwrap().solve(&b);
        let err = x.iter().zip(&xs).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max);
        assert!(err < 1e-11);
    }

    #[test]
    fn band_product_matches_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = random_banded(&mut rng, 20, 2, 1);
        let b = random_banded(&mut rng, 20, 1, 2);
        let ab = a.matmul(&b);
        let (da, db, dab) = (a.to_dense(), b.to_dense(), ab.to_dense());
        for i in 0..20 {
            for j in 0..20 {
                let mut acc = 0.0;
                for k in 0..20 {
                    acc += da[i][k] * db[k][j];
                }
                assert!((acc - dab[i][j]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn inertia_counts_eigenvalues() {
        // tridiagonal discrete Laplacian has known eigenvalues 2-2cos(k pi/(n+1))
        let n = 64;
        let mut a = Banded::<f64>::zeros(n, 1, 1);
        for i in 0..n {
            a.set(i, i, 2.0);
            if i + 1 < n {
                a.set(i, i + 1, -1.0);
                a.set(i + 1, i, -1.0);
            }
        }
        let eig: Vec<f64> =
            (1..=n).map(|k| 2.0 - 2.0 * (k as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos()).collect();
        for &sigma in &[0.5, 1.0, 2.0, 3.5] {
            let expect = eig.iter().filter(|&&e| e < sigma).count();
            assert_eq!(symmetric_band_count_below(&a, sigma), expect);
        }
    }

    #[test]
    fn spline_reproduces_cubic_exactly() {
        let x: Vec<f64> = (0..25).map(|i| i as f64 * 0.4).collect();
        let f = |t: f64| 0.3 - 1.2 * t + 0.7 * t * t - 0.05 * t * t * t;
        let y: Vec<f64> = x.iter().map(|&t| f(t)).collect();
        let sp = CubicSpline::new(x, y);
        for &t in &[0.13, 1.7, 4.444, 9.1] {
            assert!((sp.eval(t) - f(t)).abs() < 1e-12);
            let fp = -1.2 + 1.4 * t - 0.15 * t * t;
            assert!((sp.deriv(t) - fp).abs() < 1e-11);
        }
        // integral of the cubic
        let t: f64 = 6.3;
        let exact = 0.3 * t - 0.6 * t * t + 0.7 * t.powi(3) / 3.0 - 0.0125 * t.powi(4);
        assert!((sp.integral(t) - exact).abs() < 1e-10);
    }
}
