//! Simulated `p`-bit floating point.
//!
//! Every operation is carried out as an error-free transformation in binary64
//! (TwoSum, FMA-based TwoProduct, FMA remainder for division), so the exact
//! result is known as `s + e`. That exact value is then rounded once to a
//! `p`-bit significand with round-to-nearest-even. Underflow and overflow are
//! outside the model: subnormal and non-finite values are passed through.

use crate::error::{Error, Result};

/// Unit roundoff `2^-bits`, round-to-nearest-even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RoundingContext {
    bits: u32,
}

impl RoundingContext {
    pub const MIN_BITS: u32 = 2;
    pub const MAX_BITS: u32 = 53;

    pub fn new(bits: u32) -> Result<Self> {
        if !(Self::MIN_BITS..=Self::MAX_BITS).contains(&bits) {
            return Err(Error::InvalidArgument(format!(
                "significand width must be in {}..={}, got {bits}",
                Self::MIN_BITS,
                Self::MAX_BITS
            )));
        }
        Ok(Self { bits })
    }

    pub fn binary64() -> Self {
        Self { bits: 53 }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn epsilon(&self) -> f64 {
        (-(self.bits as f64)).exp2()
    }

    /// Round a binary64 value to this precision.
    pub fn round(&self, x: f64) -> f64 {
        self.round_exact(x, 0.0)
    }

    pub fn add(&self, a: f64, b: f64) -> f64 {
        let s = a + b;
        let bb = s - a;
        let e = (a - (s - bb)) + (b - bb);
        self.round_exact(s, e)
    }

    pub fn sub(&self, a: f64, b: f64) -> f64 {
        self.add(a, -b)
    }

    pub fn mul(&self, a: f64, b: f64) -> f64 {
        let s = a * b;
        let e = a.mul_add(b, -s);
        self.round_exact(s, e)
    }

    pub fn div(&self, a: f64, b: f64) -> f64 {
        let q = a / b;
        if !q.is_finite() || q == 0.0 {
            return q;
        }
        // a - q*b is exactly representable, and its sign relative to b
        // tells which side of q the exact quotient lies on.
        let r = (-q).mul_add(b, a);
        let side = if r == 0.0 { 0.0 } else { r.signum() * b.signum() };
        self.round_exact(q, side * f64::MIN_POSITIVE)
    }

    /// Round `s + e` where `s = fl53(s + e)`; only the sign of `e` matters.
    fn round_exact(&self, s: f64, e: f64) -> f64 {
        if self.bits >= 53 || s == 0.0 || !s.is_finite() {
            return s;
        }
        let raw = s.to_bits();
        let exp_field = (raw >> 52) & 0x7ff;
        if exp_field == 0 {
            return s;
        }
        let negative = raw >> 63 == 1;
        let mant = (raw & ((1u64 << 52) - 1)) | (1u64 << 52);
        let drop = 53 - self.bits;
        let low = mant & ((1u64 << drop) - 1);
        let half = 1u64 << (drop - 1);
        let mut hi = mant >> drop;
        // Direction of the exact residual measured in magnitude.
        let toward_larger = if negative { e < 0.0 } else { e > 0.0 };
        let toward_smaller = if negative { e > 0.0 } else { e < 0.0 };
        let round_up = match low.cmp(&half) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => {
                if toward_larger {
                    true
                } else if toward_smaller {
                    false
                } else {
                    hi & 1 == 1
                }
            }
        };
        if round_up {
            hi += 1;
        }
        let unbiased = exp_field as i32 - 1023;
        let magnitude = (hi << drop) as f64 * pow2(unbiased - 52);
        if negative {
            -magnitude
        } else {
            magnitude
        }
    }
}

fn pow2(e: i32) -> f64 {
    if (-1022..=1023).contains(&e) {
        f64::from_bits(((e + 1023) as u64) << 52)
    } else {
        (e as f64).exp2()
    }
}

/// A real value held at the precision of its [`RoundingContext`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rounded {
    value: f64,
    ctx: RoundingContext,
}

impl Rounded {
    /// Rounds `x` into the context.
    pub fn new(x: f64, ctx: RoundingContext) -> Self {
        Self {
            value: ctx.round(x),
            ctx,
        }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn context(&self) -> RoundingContext {
        self.ctx
    }

    fn check(&self, rhs: &Self) {
        assert_eq!(
            self.ctx, rhs.ctx,
            "operands carry different rounding contexts"
        );
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        Self {
            value: self.ctx.add(self.value, rhs.value),
            ctx: self.ctx,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.check(rhs);
        Self {
            value: self.ctx.sub(self.value, rhs.value),
            ctx: self.ctx,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        Self {
            value: self.ctx.mul(self.value, rhs.value),
            ctx: self.ctx,
        }
    }

    pub fn div(&self, rhs: &Self) -> Option<Self> {
        self.check(rhs);
        if rhs.value == 0.0 {
            return None;
        }
        Some(Self {
            value: self.ctx.div(self.value, rhs.value),
            ctx: self.ctx,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            value: -self.value,
            ctx: self.ctx,
        }
    }
}

/// Complex value whose real and imaginary parts are rounded independently.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RoundedComplex {
    pub re: f64,
    pub im: f64,
    ctx: RoundingContext,
}

impl RoundedComplex {
    pub fn new(re: f64, im: f64, ctx: RoundingContext) -> Self {
        Self {
            re: ctx.round(re),
            im: ctx.round(im),
            ctx,
        }
    }

    pub fn context(&self) -> RoundingContext {
        self.ctx
    }

    fn check(&self, rhs: &Self) {
        assert_eq!(
            self.ctx, rhs.ctx,
            "operands carry different rounding contexts"
        );
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let c = self.ctx;
        Self {
            re: c.add(self.re, rhs.re),
            im: c.add(self.im, rhs.im),
            ctx: c,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let c = self.ctx;
        Self {
            re: c.sub(self.re, rhs.re),
            im: c.sub(self.im, rhs.im),
            ctx: c,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let c = self.ctx;
        let re = c.sub(c.mul(self.re, rhs.re), c.mul(self.im, rhs.im));
        let im = c.add(c.mul(self.re, rhs.im), c.mul(self.im, rhs.re));
        Self { re, im, ctx: c }
    }

    pub fn div(&self, rhs: &Self) -> Option<Self> {
        self.check(rhs);
        let c = self.ctx;
        let den = c.add(c.mul(rhs.re, rhs.re), c.mul(rhs.im, rhs.im));
        if den == 0.0 {
            return None;
        }
        let re = c.add(c.mul(self.re, rhs.re), c.mul(self.im, rhs.im));
        let im = c.sub(c.mul(self.im, rhs.re), c.mul(self.re, rhs.im));
        Some(Self {
            re: c.div(re, den),
            im: c.div(im, den),
            ctx: c,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            re: -self.re,
            im: -self.im,
            ctx: self.ctx,
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re,
            im: -self.im,
            ctx: self.ctx,
        }
    }
}
