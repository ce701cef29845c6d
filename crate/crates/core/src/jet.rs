//! Truncated two-parameter Taylor arithmetic.
//!
//! A [`Jet2`] carries `f + f_s·s + f_t·t + f_st·s·t` with `s² = t² = 0`, so
//! evaluating a smooth function on `x + s·u + t·v` yields the exact mixed
//! directional derivative `∂²f/∂s∂t` in the `st` slot.
//!
//! Swapping the `s` and `t` slots of every input swaps them in every output
//! bit for bit, so mixed partials computed this way are exactly symmetric.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Scalars the Finsler norms can be evaluated over.
pub trait Real:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> + Neg<Output = Self>
{
    fn constant(c: f64) -> Self;
    fn sqrt(self) -> Self;
    /// Value part, discarding infinitesimals.
    fn value(self) -> f64;

    fn scale(self, c: f64) -> Self {
        self * Self::constant(c)
    }
}

impl Real for f64 {
    fn constant(c: f64) -> Self {
        c
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn value(self) -> f64 {
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub re: f64,
    pub s: f64,
    pub t: f64,
    pub st: f64,
}

impl Jet2 {
    pub const fn new(re: f64, s: f64, t: f64, st: f64) -> Self {
        Self { re, s, t, st }
    }

    /// `x + s·u + t·v`, coordinatewise.
    pub fn seed(x: [f64; 3], u: [f64; 3], v: [f64; 3]) -> [Jet2; 3] {
        [0, 1, 2].map(|i| Jet2::new(x[i], u[i], v[i], 0.0))
    }

    /// Applies a scalar function given its value and first two derivatives at `re`.
    fn chain(self, f0: f64, f1: f64, f2: f64) -> Self {
        Self {
            re: f0,
            s: f1 * self.s,
            t: f1 * self.t,
            st: f1 * self.st + f2 * (self.s * self.t),
        }
    }

    pub fn recip(self) -> Self {
        let inv = 1.0 / self.re;
        self.chain(inv, -inv * inv, 2.0 * inv * inv * inv)
    }
}

impl Add for Jet2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.s + o.s, self.t + o.t, self.st + o.st)
    }
}

impl Sub for Jet2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.s - o.s, self.t - o.t, self.st - o.st)
    }
}

impl Neg for Jet2 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.s, -self.t, -self.st)
    }
}

impl Mul for Jet2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.re * o.re,
            self.re * o.s + self.s * o.re,
            self.re * o.t + self.t * o.re,
            self.re * o.st + (self.s * o.t + self.t * o.s) + self.st * o.re,
        )
    }
}

impl Div for Jet2 {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.recip()
    }
}

impl Real for Jet2 {
    fn constant(c: f64) -> Self {
        Self::new(c, 0.0, 0.0, 0.0)
    }

    fn sqrt(self) -> Self {
        let r = self.re.sqrt();
        self.chain(r, 0.5 / r, -0.25 / (r * self.re))
    }

    fn value(self) -> f64 {
        self.re
    }
}
