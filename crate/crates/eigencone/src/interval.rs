//! Directed-rounding float intervals and rectangular complex intervals.
//!
//! Endpoints are binary floats; every operation rounds outward by an explicit
//! nudge to the next representable value whenever the float result is not
//! provably exact. Exactness is detected per operation (error-free residuals
//! via two-sum / fused multiply-add), so point arithmetic on representable
//! values stays point arithmetic instead of drifting one ulp per step.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum IntervalError {
    #[error("division by an interval containing zero")]
    DivByZeroInterval,
    #[error("square root of an interval with negative values")]
    NegativeSqrt,
    #[error("endpoints must be finite and ordered")]
    BadEndpoints,
}

/// Adjusts a computed value given the sign of (true result − computed value):
/// nudge only when the computed value sits on the wrong side.
fn round_by_residual(v: f64, true_minus_v: f64, up: bool) -> f64 {
    if true_minus_v == 0.0 {
        v
    } else if true_minus_v > 0.0 {
        if up { v.next_up() } else { v }
    } else if up {
        v
    } else {
        v.next_down()
    }
}

/// Clamps an overflowed result to a sound directed bound.
fn clamp_overflow(v: f64, up: bool) -> f64 {
    if up == (v > 0.0) { v } else if v > 0.0 { f64::MAX } else { f64::MIN }
}

fn add_directed(a: f64, b: f64, up: bool) -> f64 {
    let s = a + b;
    if s.is_infinite() {
        return clamp_overflow(s, up);
    }
    // two-sum: the rounding error of a float addition is itself a float
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    round_by_residual(s, err, up)
}

fn mul_directed(a: f64, b: f64, up: bool) -> f64 {
    let p = a * b;
    if p.is_infinite() {
        return clamp_overflow(p, up);
    }
    // fma residual a·b − p is exact, so its sign locates the true product
    let err = a.mul_add(b, -p);
    round_by_residual(p, err, up)
}

fn div_directed(a: f64, b: f64, up: bool) -> f64 {
    let q = a / b;
    if q.is_infinite() {
        return clamp_overflow(q, up);
    }
    // residual a − q·b is exact; true quotient − q has the sign of err/b
    let err = q.mul_add(-b, a);
    let signed = if b > 0.0 { err } else { -err };
    round_by_residual(q, signed, up)
}

fn sqrt_directed(x: f64, up: bool) -> f64 {
    let r = x.sqrt();
    // residual r² − x is exact; √x − r has the opposite sign
    let err = r.mul_add(r, -x);
    round_by_residual(r, -err, up).max(if up { f64::NEG_INFINITY } else { 0.0 })
}

/// Closed float interval [lo, hi] whose arithmetic encloses the exact real
/// result (outward rounding contract).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    /// Builds an interval from two finite endpoints, normalizing the order.
    pub fn new(a: f64, b: f64) -> Result<Self, IntervalError> {
        if !a.is_finite() || !b.is_finite() {
            return Err(IntervalError::BadEndpoints);
        }
        Ok(if a <= b { Interval { lo: a, hi: b } } else { Interval { lo: b, hi: a } })
    }

    pub fn point(x: f64) -> Result<Self, IntervalError> {
        Interval::new(x, x)
    }

    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_iv(&self, o: &Interval) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval {
            lo: add_directed(self.lo, o.lo, false),
            hi: add_directed(self.hi, o.hi, true),
        }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval {
            lo: add_directed(self.lo, -o.hi, false),
            hi: add_directed(self.hi, -o.lo, true),
        }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let pairs = [
            (self.lo, o.lo),
            (self.lo, o.hi),
            (self.hi, o.lo),
            (self.hi, o.hi),
        ];
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (x, y) in pairs {
            lo = lo.min(mul_directed(x, y, false));
            hi = hi.max(mul_directed(x, y, true));
        }
        Interval { lo, hi }
    }

    pub fn div(&self, o: &Interval) -> Result<Interval, IntervalError> {
        if o.lo <= 0.0 && o.hi >= 0.0 {
            return Err(IntervalError::DivByZeroInterval);
        }
        let pairs = [
            (self.lo, o.lo),
            (self.lo, o.hi),
            (self.hi, o.lo),
            (self.hi, o.hi),
        ];
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (x, y) in pairs {
            lo = lo.min(div_directed(x, y, false));
            hi = hi.max(div_directed(x, y, true));
        }
        Ok(Interval { lo, hi })
    }

    /// Square root enclosure; requires a nonnegative interval.
    pub fn sqrt(&self) -> Result<Interval, IntervalError> {
        if self.lo < 0.0 {
            return Err(IntervalError::NegativeSqrt);
        }
        Ok(Interval {
            lo: sqrt_directed(self.lo, false),
            hi: sqrt_directed(self.hi, true),
        })
    }

    /// max |x| over the interval (exact endpoint arithmetic).
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// min |x| over the interval; 0 when it straddles zero.
    pub fn mig(&self) -> f64 {
        if self.lo <= 0.0 && self.hi >= 0.0 {
            0.0
        } else if self.lo > 0.0 {
            self.lo
        } else {
            -self.hi
        }
    }
}

/// Rectangular complex interval {x + iy : x ∈ re, y ∈ im}. A real scalar has
/// im = [0,0] exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CRect {
    pub re: Interval,
    pub im: Interval,
}

impl CRect {
    pub fn new(re: Interval, im: Interval) -> Self {
        CRect { re, im }
    }

    pub fn real(re: Interval) -> Self {
        CRect { re, im: Interval::ZERO }
    }

    pub fn point(re: f64, im: f64) -> Result<Self, IntervalError> {
        Ok(CRect { re: Interval::point(re)?, im: Interval::point(im)? })
    }

    pub fn is_real(&self) -> bool {
        self.im.lo == 0.0 && self.im.hi == 0.0
    }

    pub fn add(&self, o: &CRect) -> CRect {
        CRect { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &CRect) -> CRect {
        CRect { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &CRect) -> CRect {
        CRect {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    /// Upper bound of sup{|z| : z ∈ rect}, from the corner of maximal
    /// |re|, |im| with outward rounding (exact for real or purely imaginary
    /// rectangles).
    pub fn mag(&self) -> f64 {
        let a = self.re.mag();
        let b = self.im.mag();
        if b == 0.0 {
            a
        } else if a == 0.0 {
            b
        } else {
            let aa = mul_directed(a, a, true);
            let bb = mul_directed(b, b, true);
            sqrt_directed(add_directed(aa, bb, true), true)
        }
    }

    /// Lower bound of inf{|z| : z ∈ rect}; 0 if the rectangle contains 0.
    pub fn mig(&self) -> f64 {
        let dx = self.re.mig();
        let dy = self.im.mig();
        if dx == 0.0 && dy == 0.0 {
            0.0
        } else if dy == 0.0 {
            dx
        } else if dx == 0.0 {
            dy
        } else {
            let aa = mul_directed(dx, dx, false);
            let bb = mul_directed(dy, dy, false);
            sqrt_directed(add_directed(aa, bb, false), false)
        }
    }
}
