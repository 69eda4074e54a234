//! Truncated Taylor-jet arithmetic.
//!
//! Every closed form in this crate is written once, generically over [`Real`],
//! and evaluated either on plain `f64` or on jets. Evaluating on a jet carries
//! exact derivatives through all arithmetic (chain/product rule by truncated
//! Taylor multiplication), so no closed form is ever differentiated by finite
//! differences.
//!
//! Two concrete jet shapes are used:
//! * [`CJet`] = `Jet<8>`: univariate in `t`, orders 0..=7. Used for scale-factor
//!   coefficient functions (they need up to the 6th derivative of the scale).
//! * [`TJet`] = `Jet2<4, 3>`: bivariate in `(t, r)`, t-orders 0..=3 and
//!   r-orders 0..=2, which covers every derivative order the verification
//!   suites request.
//!
//! Coefficients are stored Taylor-scaled: `c[k] = f^(k)/k!` and
//! `c[i][j] = ∂_t^i ∂_r^j f / (i! j!)`.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Scalar abstraction over `f64` and jets.
pub trait Real:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    /// Embed a constant.
    fn c(x: f64) -> Self;
    /// Value part (0th coefficient).
    fn val(self) -> f64;
    fn recip(self) -> Self;
    fn sqrt(self) -> Self;
    fn ln(self) -> Self;
    fn exp(self) -> Self;
    fn atan(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn powi(self, n: i32) -> Self;
    fn powf(self, p: f64) -> Self;
    fn asinh(self) -> Self {
        (self + (self * self + 1.0).sqrt()).ln()
    }
    /// ln(1 + x), accurate for small x.
    fn ln_1p(self) -> Self;
}

impl Real for f64 {
    #[inline]
    fn c(x: f64) -> Self {
        x
    }
    #[inline]
    fn val(self) -> f64 {
        self
    }
    #[inline]
    fn recip(self) -> Self {
        f64::recip(self)
    }
    #[inline]
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    #[inline]
    fn ln(self) -> Self {
        f64::ln(self)
    }
    #[inline]
    fn exp(self) -> Self {
        f64::exp(self)
    }
    #[inline]
    fn atan(self) -> Self {
        f64::atan(self)
    }
    #[inline]
    fn sin(self) -> Self {
        f64::sin(self)
    }
    #[inline]
    fn cos(self) -> Self {
        f64::cos(self)
    }
    #[inline]
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }
    #[inline]
    fn powf(self, p: f64) -> Self {
        f64::powf(self, p)
    }
    #[inline]
    fn asinh(self) -> Self {
        f64::asinh(self)
    }
    #[inline]
    fn ln_1p(self) -> Self {
        f64::ln_1p(self)
    }
}

const FACT: [f64; 13] = [
    1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0, 5040.0, 40320.0, 362880.0, 3628800.0, 39916800.0,
    479001600.0,
];

/// generalized binomial coefficient C(p, n)
fn binom(p: f64, n: usize) -> f64 {
    let mut b = 1.0;
    for i in 0..n {
        b *= (p - i as f64) / (i as f64 + 1.0);
    }
    b
}

/// Series coefficients of an elementary function in the RELATIVE deviation
/// δ = (x - x0)/x0 (for Exp: the absolute deviation), up to order `m`.
/// Working with δ keeps compositions scale-invariant: powers of the deviation
/// jet can neither overflow nor underflow against the table entries.
fn elem_coeffs(kind: Elem, x0: f64, m: usize) -> [f64; 8] {
    debug_assert!(m < 8);
    let mut a = [0.0_f64; 8];
    match kind {
        Elem::Recip => {
            // 1/(x0(1+δ)) = (1/x0) Σ (-δ)^n
            let inv = 1.0 / x0;
            for n in 0..=m {
                a[n] = if n % 2 == 0 { inv } else { -inv };
            }
        }
        Elem::Sqrt => {
            let s = x0.sqrt();
            for n in 0..=m {
                a[n] = binom(0.5, n) * s;
            }
        }
        Elem::Powf(p) => {
            let s = x0.powf(p);
            for n in 0..=m {
                a[n] = binom(p, n) * s;
            }
        }
        Elem::Ln => {
            // ln(x0(1+δ)) = ln x0 + Σ (-1)^{n+1} δ^n / n
            a[0] = x0.ln();
            for n in 1..=m {
                a[n] = if n % 2 == 1 { 1.0 } else { -1.0 } / n as f64;
            }
        }
        Elem::Exp => {
            let e = x0.exp();
            for n in 0..=m {
                a[n] = e / FACT[n];
            }
        }
    }
    a
}

#[derive(Clone, Copy)]
enum Elem {
    Recip,
    Sqrt,
    Powf(f64),
    Ln,
    Exp,
}

// ---------------------------------------------------------------------------
// Univariate jet
// ---------------------------------------------------------------------------

/// Univariate truncated Taylor jet with `N` coefficients (orders `0..N`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet<const N: usize> {
    pub c: [f64; N],
}

/// Coefficient functions of `t` carry the scale factor's derivatives; one
/// spare order beyond the contractual six keeps iterated jet-derivatives of
/// composite coefficients exact where the verification suites need them.
pub type CJet = Jet<8>;

impl<const N: usize> Jet<N> {
    #[inline]
    pub fn zero() -> Self {
        Jet { c: [0.0; N] }
    }
    /// The identity jet at base point `x`: value `x`, first derivative 1.
    #[inline]
    pub fn var(x: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = x;
        if N > 1 {
            c[1] = 1.0;
        }
        Jet { c }
    }
    /// k-th derivative (unscaled).
    #[inline]
    pub fn deriv(&self, k: usize) -> f64 {
        self.c[k] * FACT[k]
    }
    /// Max absolute coefficient, used by quadrature error control.
    pub fn norm(&self) -> f64 {
        self.c.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }
    /// Truncated product.
    fn mul_jet(&self, o: &Self) -> Self {
        let mut r = [0.0; N];
        for i in 0..N {
            if self.c[i] == 0.0 {
                continue;
            }
            for j in 0..N - i {
                r[i + j] += self.c[i] * o.c[j];
            }
        }
        Jet { c: r }
    }
    /// f(self) for an elementary f via Taylor composition around the value.
    /// The series runs in the relative deviation for all kinds except Exp.
    fn compose(self, kind: Elem) -> Self {
        let a = elem_coeffs(kind, self.c[0], N - 1);
        let mut d = self;
        d.c[0] = 0.0;
        if !matches!(kind, Elem::Exp) {
            d = d * (1.0 / self.c[0]);
        }
        let mut out = Self::zero();
        out.c[0] = a[0];
        let mut p = d; // δ^n
        for n in 1..N {
            out = out + p * a[n];
            if n + 1 < N {
                p = p.mul_jet(&d);
            }
        }
        out
    }
    /// Jet of the derivative f'. The top coefficient is zero-filled, so a jet
    /// built from an order-(N-1) exact jet is exact only through order N-2;
    /// callers must not consume deeper orders than their inputs support.
    pub fn d(&self) -> Self {
        let mut c = [0.0; N];
        for i in 0..N - 1 {
            c[i] = self.c[i + 1] * (i as f64 + 1.0);
        }
        Jet { c }
    }
    /// Truncate (or zero-extend) to M coefficients.
    pub fn trunc<const M: usize>(&self) -> Jet<M> {
        let mut c = [0.0; M];
        for i in 0..M.min(N) {
            c[i] = self.c[i];
        }
        Jet { c }
    }
    /// Re-expand this jet (seen as the Taylor series of f at its base point)
    /// around a shifted evaluation: returns coefficients of f at `x0 + h`.
    pub fn shift(&self, h: f64) -> Self {
        // out[j] = sum_{i>=j} c[i] * C(i, j) * h^{i-j}
        let mut out = [0.0; N];
        for j in 0..N {
            let mut acc = 0.0;
            let mut hp = 1.0;
            for i in j..N {
                acc += self.c[i] * binom_usize(i, j) * hp;
                hp *= h;
            }
            out[j] = acc;
        }
        Jet { c: out }
    }
}

fn binom_usize(n: usize, k: usize) -> f64 {
    FACT[n] / (FACT[k] * FACT[n - k])
}

impl<const N: usize> Add for Jet<N> {
    type Output = Self;
    #[inline]
    fn add(mut self, o: Self) -> Self {
        for i in 0..N {
            self.c[i] += o.c[i];
        }
        self
    }
}
impl<const N: usize> Sub for Jet<N> {
    type Output = Self;
    #[inline]
    fn sub(mut self, o: Self) -> Self {
        for i in 0..N {
            self.c[i] -= o.c[i];
        }
        self
    }
}
impl<const N: usize> Neg for Jet<N> {
    type Output = Self;
    #[inline]
    fn neg(mut self) -> Self {
        for i in 0..N {
            self.c[i] = -self.c[i];
        }
        self
    }
}
impl<const N: usize> Mul for Jet<N> {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        self.mul_jet(&o)
    }
}
impl<const N: usize> Div for Jet<N> {
    type Output = Self;
    #[inline]
    fn div(self, o: Self) -> Self {
        self.mul_jet(&o.compose(Elem::Recip))
    }
}
impl<const N: usize> Add<f64> for Jet<N> {
    type Output = Self;
    #[inline]
    fn add(mut self, o: f64) -> Self {
        self.c[0] += o;
        self
    }
}
impl<const N: usize> Sub<f64> for Jet<N> {
    type Output = Self;
    #[inline]
    fn sub(mut self, o: f64) -> Self {
        self.c[0] -= o;
        self
    }
}
impl<const N: usize> Mul<f64> for Jet<N> {
    type Output = Self;
    #[inline]
    fn mul(mut self, o: f64) -> Self {
        for i in 0..N {
            self.c[i] *= o;
        }
        self
    }
}
impl<const N: usize> Div<f64> for Jet<N> {
    type Output = Self;
    #[inline]
    fn div(mut self, o: f64) -> Self {
        for i in 0..N {
            self.c[i] /= o;
        }
        self
    }
}
impl<const N: usize> Mul<Jet<N>> for f64 {
    type Output = Jet<N>;
    #[inline]
    fn mul(self, o: Jet<N>) -> Jet<N> {
        o * self
    }
}

impl<const N: usize> Real for Jet<N> {
    #[inline]
    fn c(x: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = x;
        Jet { c }
    }
    #[inline]
    fn val(self) -> f64 {
        self.c[0]
    }
    fn recip(self) -> Self {
        self.compose(Elem::Recip)
    }
    fn sqrt(self) -> Self {
        self.compose(Elem::Sqrt)
    }
    fn ln(self) -> Self {
        self.compose(Elem::Ln)
    }
    fn exp(self) -> Self {
        if self.c[0] < -700.0 {
            // underflow plateau: the value and every derivative vanish
            return Self::zero();
        }
        self.compose(Elem::Exp)
    }
    fn atan(self) -> Self {
        // atan(x) = atan(x0) + atan(w), w = (x - x0)/(1 + x0 x): w has zero value,
        // so the odd series in w is exact in the truncated algebra.
        let x0 = self.c[0];
        let w = (self - x0) / (self * x0 + 1.0);
        let w2 = w * w;
        let mut term = w;
        let mut acc = Self::c(x0.atan());
        let mut k = 0usize;
        loop {
            let cf = if k % 2 == 0 { 1.0 } else { -1.0 } / (2 * k + 1) as f64;
            acc = acc + term * cf;
            k += 1;
            if 2 * k + 1 >= N {
                break;
            }
            term = term.mul_jet(&w2);
        }
        acc
    }
    fn sin(self) -> Self {
        let (s, c) = sin_cos_jet(self);
        let _ = c;
        s
    }
    fn cos(self) -> Self {
        let (_, c) = sin_cos_jet(self);
        c
    }
    fn powi(self, n: i32) -> Self {
        powi_generic(self, n)
    }
    fn powf(self, p: f64) -> Self {
        self.compose(Elem::Powf(p))
    }
    fn ln_1p(self) -> Self {
        // ln(1+x) = ln1p(x0) + Σ (-1)^{n+1} ε^n / n, ε = (x - x0)/(1 + x0)
        let x0 = self.c[0];
        let mut d = self;
        d.c[0] = 0.0;
        let eps = d * (1.0 / (1.0 + x0));
        let mut out = Self::c(x0.ln_1p());
        let mut p = eps;
        for n in 1..N {
            let cf = if n % 2 == 1 { 1.0 } else { -1.0 } / n as f64;
            out = out + p * cf;
            if n + 1 < N {
                p = p.mul_jet(&eps);
            }
        }
        out
    }
}

fn sin_cos_jet<const N: usize>(x: Jet<N>) -> (Jet<N>, Jet<N>) {
    let x0 = x.c[0];
    let (s0, c0) = x0.sin_cos();
    let mut d = x;
    d.c[0] = 0.0;
    // sin(x0+d) = s0 cos d + c0 sin d ; cos(x0+d) = c0 cos d - s0 sin d
    let mut sin_d = Jet::<N>::zero();
    let mut cos_d = Jet::<N>::c(1.0);
    let mut p = d;
    for n in 1..N {
        let cf = 1.0 / FACT[n];
        match n % 4 {
            1 => sin_d = sin_d + p * cf,
            2 => cos_d = cos_d - p * cf,
            3 => sin_d = sin_d - p * cf,
            _ => cos_d = cos_d + p * cf,
        }
        if n + 1 < N {
            p = p.mul_jet(&d);
        }
    }
    (sin_d * c0 + cos_d * s0, cos_d * c0 - sin_d * s0)
}

fn powi_generic<S: Real>(x: S, n: i32) -> S {
    if n == 0 {
        return S::c(1.0);
    }
    let neg = n < 0;
    let mut k = n.unsigned_abs();
    let mut base = x;
    let mut acc = S::c(1.0);
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * base;
        }
        base = base * base;
        k >>= 1;
    }
    let _ = base;
    if neg {
        acc.recip()
    } else {
        acc
    }
}

// ---------------------------------------------------------------------------
// Bivariate jet
// ---------------------------------------------------------------------------

/// Bivariate truncated Taylor jet: t-orders `0..NT`, r-orders `0..NR`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet2<const NT: usize, const NR: usize> {
    pub c: [[f64; NR]; NT],
}

/// Space-time field jet: `∂_t^{0..=3}`, `∂_r^{0..=2}`.
pub type TJet = Jet2<4, 3>;

impl<const NT: usize, const NR: usize> Jet2<NT, NR> {
    #[inline]
    pub fn zero() -> Self {
        Jet2 { c: [[0.0; NR]; NT] }
    }
    /// The `t` coordinate as a jet.
    #[inline]
    pub fn var_t(t: f64) -> Self {
        let mut j = Self::zero();
        j.c[0][0] = t;
        if NT > 1 {
            j.c[1][0] = 1.0;
        }
        j
    }
    /// The `r` coordinate as a jet.
    #[inline]
    pub fn var_r(r: f64) -> Self {
        let mut j = Self::zero();
        j.c[0][0] = r;
        if NR > 1 {
            j.c[0][1] = 1.0;
        }
        j
    }
    /// ∂_t^i ∂_r^j (unscaled).
    #[inline]
    pub fn deriv(&self, i: usize, j: usize) -> f64 {
        self.c[i][j] * FACT[i] * FACT[j]
    }
    pub fn norm(&self) -> f64 {
        let mut m = 0.0_f64;
        for row in &self.c {
            for x in row {
                m = m.max(x.abs());
            }
        }
        m
    }
    /// Promote a univariate t-jet (coefficient function of t).
    pub fn from_t_jet<const N: usize>(j: &Jet<N>) -> Self {
        let mut out = Self::zero();
        for i in 0..NT.min(N) {
            out.c[i][0] = j.c[i];
        }
        out
    }
    fn mul_jet(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for i1 in 0..NT {
            for j1 in 0..NR {
                let a = self.c[i1][j1];
                if a == 0.0 {
                    continue;
                }
                for i2 in 0..NT - i1 {
                    for j2 in 0..NR - j1 {
                        r.c[i1 + i2][j1 + j2] += a * o.c[i2][j2];
                    }
                }
            }
        }
        r
    }
    fn compose(self, kind: Elem) -> Self {
        let m = NT + NR - 2;
        let a = elem_coeffs(kind, self.c[0][0], m);
        let mut d = self;
        d.c[0][0] = 0.0;
        if !matches!(kind, Elem::Exp) {
            d = d * (1.0 / self.c[0][0]);
        }
        let mut out = Self::zero();
        out.c[0][0] = a[0];
        let mut p = d;
        for n in 1..=m {
            out = out + p * a[n];
            if n < m {
                p = p.mul_jet(&d);
            }
        }
        out
    }
    /// Compose a univariate Taylor table `f` (coefficients at base `self.val()`)
    /// with this jet: computes `f(self)`.
    pub fn compose_series<const N: usize>(self, f: &Jet<N>) -> Self {
        let m = NT + NR - 2;
        let mut d = self;
        d.c[0][0] = 0.0;
        let mut out = Self::zero();
        out.c[0][0] = f.c[0];
        let mut p = d;
        for n in 1..=m.min(N - 1) {
            out = out + p * f.c[n];
            if n < m.min(N - 1) {
                p = p.mul_jet(&d);
            }
        }
        out
    }
}

impl<const NT: usize, const NR: usize> Add for Jet2<NT, NR> {
    type Output = Self;
    #[inline]
    fn add(mut self, o: Self) -> Self {
        for i in 0..NT {
            for j in 0..NR {
                self.c[i][j] += o.c[i][j];
            }
        }
        self
    }
}
impl<const NT: usize, const NR: usize> Sub for Jet2<NT, NR> {
    type Output = Self;
    #[inline]
    fn sub(mut self, o: Self) -> Self {
        for i in 0..NT {
            for j in 0..NR {
                self.c[i][j] -= o.c[i][j];
            }
        }
        self
    }
}
impl<const NT: usize, const NR: usize> Neg for Jet2<NT, NR> {
    type Output = Self;
    #[inline]
    fn neg(mut self) -> Self {
        for i in 0..NT {
            for j in 0..NR {
                self.c[i][j] = -self.c[i][j];
            }
        }
        self
    }
}
impl<const NT: usize, const NR: usize> Mul for Jet2<NT, NR> {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        self.mul_jet(&o)
    }
}
impl<const NT: usize, const NR: usize> Div for Jet2<NT, NR> {
    type Output = Self;
    #[inline]
    fn div(self, o: Self) -> Self {
        self.mul_jet(&o.compose(Elem::Recip))
    }
}
impl<const NT: usize, const NR: usize> Add<f64> for Jet2<NT, NR> {
    type Output = Self;
    #[inline]
    fn add(mut self, o: f64) -> Self {
        self.c[0][0] += o;
        self
    }
}
impl<const NT: usize, const NR: usize> Sub<f64> for Jet2<NT, NR> {
    type Output = Self;
    #[inline]
    fn sub(mut self, o: f64) -> Self {
        self.c[0][0] -= o;
        self
    }
}
impl<const NT: usize, const NR: usize> Mul<f64> for Jet2<NT, NR> {
    type Output = Self;
    #[inline]
    fn mul(mut self, o: f64) -> Self {
        for i in 0..NT {
            for j in 0..NR {
                self.c[i][j] *= o;
            }
        }
        self
    }
}
impl<const NT: usize, const NR: usize> Div<f64> for Jet2<NT, NR> {
    type Output = Self;
    #[inline]
    fn div(mut self, o: f64) -> Self {
        for i in 0..NT {
            for j in 0..NR {
                self.c[i][j] /= o;
            }
        }
        self
    }
}
impl<const NT: usize, const NR: usize> Mul<Jet2<NT, NR>> for f64 {
    type Output = Jet2<NT, NR>;
    #[inline]
    fn mul(self, o: Jet2<NT, NR>) -> Jet2<NT, NR> {
        o * self
    }
}

impl<const NT: usize, const NR: usize> Real for Jet2<NT, NR> {
    #[inline]
    fn c(x: f64) -> Self {
        let mut j = Self::zero();
        j.c[0][0] = x;
        j
    }
    #[inline]
    fn val(self) -> f64 {
        self.c[0][0]
    }
    fn recip(self) -> Self {
        self.compose(Elem::Recip)
    }
    fn sqrt(self) -> Self {
        self.compose(Elem::Sqrt)
    }
    fn ln(self) -> Self {
        self.compose(Elem::Ln)
    }
    fn exp(self) -> Self {
        if self.c[0][0] < -700.0 {
            return Self::zero();
        }
        self.compose(Elem::Exp)
    }
    fn atan(self) -> Self {
        let x0 = self.c[0][0];
        let w = (self - x0) / (self * x0 + 1.0);
        let w2 = w * w;
        let mut term = w;
        let mut acc = Self::c(x0.atan());
        let m = NT + NR - 2;
        let mut k = 0usize;
        loop {
            let cf = if k % 2 == 0 { 1.0 } else { -1.0 } / (2 * k + 1) as f64;
            acc = acc + term * cf;
            k += 1;
            if 2 * k + 1 > m {
                break;
            }
            term = term.mul_jet(&w2);
        }
        acc
    }
    fn sin(self) -> Self {
        sin_cos_jet2(self).0
    }
    fn cos(self) -> Self {
        sin_cos_jet2(self).1
    }
    fn powi(self, n: i32) -> Self {
        powi_generic(self, n)
    }
    fn powf(self, p: f64) -> Self {
        self.compose(Elem::Powf(p))
    }
    fn ln_1p(self) -> Self {
        let x0 = self.c[0][0];
        let mut d = self;
        d.c[0][0] = 0.0;
        let eps = d * (1.0 / (1.0 + x0));
        let mut out = Self::c(x0.ln_1p());
        let mut p = eps;
        let m = NT + NR - 2;
        for n in 1..=m {
            let cf = if n % 2 == 1 { 1.0 } else { -1.0 } / n as f64;
            out = out + p * cf;
            if n < m {
                p = p.mul_jet(&eps);
            }
        }
        out
    }
}

/// Given a bivariate jet `h` of f(t, y) at (t0, y0) and the Taylor jet `dy`
/// of a curve t ↦ y(t) - y0 (zero value), returns the univariate jet of
/// t ↦ (∂₁² f)(t, y(t)): the slot-1 second partial evaluated along the curve.
pub fn slot1_dd_along<const NT: usize, const NR: usize, const M: usize>(
    h: &Jet2<NT, NR>,
    dy: &Jet<M>,
) -> Jet<M> {
    debug_assert!(dy.c[0] == 0.0, "curve jet must have zero value");
    debug_assert!(NT >= M + 2, "need t-orders M+2 to extract ∂₁² to order M");
    let mut out = Jet::<M>::zero();
    let mut dy_pow = Jet::<M>::c(1.0);
    for m in 0..NR {
        // A_m(t) = ∂₂^m ∂₁² h / m!, as a t-jet
        let mut a_m = Jet::<M>::zero();
        for i in 0..M.min(NT - 2) {
            a_m.c[i] = h.c[i + 2][m] * ((i + 1) * (i + 2)) as f64;
        }
        out = out + a_m * dy_pow;
        if m + 1 < NR {
            dy_pow = dy_pow * *dy;
        }
    }
    out
}

fn sin_cos_jet2<const NT: usize, const NR: usize>(
    x: Jet2<NT, NR>,
) -> (Jet2<NT, NR>, Jet2<NT, NR>) {
    let x0 = x.c[0][0];
    let (s0, c0) = x0.sin_cos();
    let mut d = x;
    d.c[0][0] = 0.0;
    let m = NT + NR - 2;
    let mut sin_d = Jet2::<NT, NR>::zero();
    let mut cos_d = Jet2::<NT, NR>::c(1.0);
    let mut p = d;
    for n in 1..=m {
        let cf = 1.0 / FACT[n];
        match n % 4 {
            1 => sin_d = sin_d + p * cf,
            2 => cos_d = cos_d - p * cf,
            3 => sin_d = sin_d - p * cf,
            _ => cos_d = cos_d + p * cf,
        }
        if n < m {
            p = p.mul_jet(&d);
        }
    }
    (sin_d * c0 + cos_d * s0, cos_d * c0 - sin_d * s0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn fd<const K: usize>(f: impl Fn(f64) -> f64, x: f64, k: usize) -> f64 {
        // central differences, order-2, iterated
        let h = 1e-5 * x.abs().max(1.0);
        match k {
            0 => f(x),
            1 => (f(x + h) - f(x - h)) / (2.0 * h),
            2 => (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h),
            _ => unreachable!(),
        }
    }

    #[test]
    fn univariate_elementary_derivatives() {
        let x = 1.7_f64;
        let j = Jet::<5>::var(x);
        let g = ((j * 2.0 + 1.0).sqrt() * j.atan() + j.ln() / (j + 3.0)).exp();
        let f = |x: f64| ((2.0 * x + 1.0).sqrt() * x.atan() + x.ln() / (x + 3.0)).exp();
        assert_relative_eq!(g.deriv(0), f(x), max_relative = 1e-14);
        assert_relative_eq!(g.deriv(1), fd::<5>(f, x, 1), max_relative = 1e-7);
        assert_relative_eq!(g.deriv(2), fd::<5>(f, x, 2), max_relative = 1e-5);
    }

    #[test]
    fn univariate_trig_and_asinh() {
        let x = 0.83_f64;
        let j = Jet::<6>::var(x);
        let g = j.sin() * j.cos() + j.asinh();
        let f = |x: f64| x.sin() * x.cos() + x.asinh();
        assert_relative_eq!(g.deriv(0), f(x), max_relative = 1e-14);
        assert_relative_eq!(g.deriv(1), fd::<6>(f, x, 1), max_relative = 1e-8);
    }

    #[test]
    fn product_rule_holds_exactly() {
        // coefficients of (f*g)' agree with f'g + fg'
        let x = 2.3;
        let f = Jet::<7>::var(x).powf(0.37);
        let g = (Jet::<7>::var(x) + 1.0).atan();
        let prod = f * g;
        let d1 = prod.deriv(1);
        let alt = f.deriv(1) * g.deriv(0) + f.deriv(0) * g.deriv(1);
        assert_relative_eq!(d1, alt, max_relative = 1e-14);
    }

    #[test]
    fn shift_reexpands_taylor() {
        // exact for polynomial jets
        let x = 1.1;
        let j = Jet::<8>::var(x).powi(5) + Jet::<8>::var(x) * 2.0;
        let s = j.shift(0.25);
        let y: f64 = x + 0.25;
        assert_relative_eq!(s.deriv(0), y.powi(5) + 2.0 * y, max_relative = 1e-14);
        assert_relative_eq!(s.deriv(1), 5.0 * y.powi(4) + 2.0, max_relative = 1e-14);
    }

    #[test]
    fn bivariate_mixed_derivatives() {
        let (t, r) = (2.0_f64, 0.7_f64);
        let jt = TJet::var_t(t);
        let jr = TJet::var_r(r);
        let g = (jt * jr).sin() + (jt + jr * jr).sqrt();
        let f = |t: f64, r: f64| (t * r).sin() + (t + r * r).sqrt();
        assert_relative_eq!(g.deriv(0, 0), f(t, r), max_relative = 1e-14);
        let h = 1e-5;
        let dtr = (f(t + h, r + h) - f(t + h, r - h) - f(t - h, r + h) + f(t - h, r - h))
            / (4.0 * h * h);
        assert_relative_eq!(g.deriv(1, 1), dtr, max_relative = 1e-5);
        let dtt = (f(t + h, r) - 2.0 * f(t, r) + f(t - h, r)) / (h * h);
        assert_relative_eq!(g.deriv(2, 0) , dtt, max_relative = 1e-4);
    }

    #[test]
    fn compose_series_matches_direct() {
        // ln evaluated through a precomputed univariate table at a bivariate argument
        let (t, r) = (3.0_f64, 0.4_f64);
        let arg = TJet::var_t(t) + TJet::var_r(r); // t + r
        let table = Jet::<7>::var(t + r).ln();
        let via_table = arg.compose_series(&table);
        let direct = arg.ln();
        for i in 0..4 {
            for j in 0..3 {
                assert_relative_eq!(via_table.c[i][j], direct.c[i][j], max_relative = 1e-12,
                    epsilon = 1e-14);
            }
        }
    }
}
