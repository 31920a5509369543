//! Exact rational scalars, rational intervals and rectangles, and directed
//! bounds. Everything rigorous in this crate ultimately reduces to rational
//! arithmetic here; binary floating point only enters through the explicitly
//! directed conversions and square-root enclosures.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;
use thiserror::Error;

/// Exact rational number used throughout the crate.
pub type Rat = BigRational;

/// Shorthand for small rational constants.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Exact integer as a rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ScalarError {
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("square root of negative value")]
    NegativeSqrt,
    #[error("scalar is not finite")]
    NonFinite,
}

/// Parses a decimal or rational literal to an exact rational.
///
/// Accepted forms: `"3"`, `"-0.15"`, `"1e-3"`, `"2.5e2"`, `"3/20"`. The
/// decimal forms are exact: `"0.1"` becomes 1/10, not the nearest binary
/// float.
pub fn parse_decimal(s: &str) -> Result<Rat, ScalarError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(ScalarError::Parse(s.to_string()));
    }
    if let Some((num, den)) = t.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| ScalarError::Parse(s.to_string()))?;
        let d: BigInt = den.trim().parse().map_err(|_| ScalarError::Parse(s.to_string()))?;
        if d.is_zero() {
            return Err(ScalarError::Parse(s.to_string()));
        }
        return Ok(Rat::new(n, d));
    }
    let (mantissa, exp10) = match t.split_once(['e', 'E']) {
        Some((m, e)) => {
            let e: i32 = e.parse().map_err(|_| ScalarError::Parse(s.to_string()))?;
            (m, e)
        }
        None => (t, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(ScalarError::Parse(s.to_string()));
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(ScalarError::Parse(s.to_string()));
    }
    let joined = format!("{int_part}{frac_part}");
    let n: BigInt = if joined.is_empty() { BigInt::zero() } else {
        joined.parse().map_err(|_| ScalarError::Parse(s.to_string()))?
    };
    let shift = exp10 - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let q = if shift >= 0 {
        Rat::from_integer(n * ten.pow(shift as u32))
    } else {
        Rat::new(n, ten.pow((-shift) as u32))
    };
    Ok(if sign < 0 { -q } else { q })
}

/// Exact rational value of a finite float.
pub fn rat_of_f64(x: f64) -> Result<Rat, ScalarError> {
    Rat::from_float(x).ok_or(ScalarError::NonFinite)
}

/// Largest-effort float below-or-equal: a finite (or -inf) `t` with `t ≤ q`,
/// within one or two ulps of the true value.
pub fn to_f64_down(q: &Rat) -> f64 {
    directed_f64(q, false)
}

/// Float above-or-equal: `t ≥ q`, within one or two ulps.
pub fn to_f64_up(q: &Rat) -> f64 {
    directed_f64(q, true)
}

fn directed_f64(q: &Rat, up: bool) -> f64 {
    let mut t = q.to_f64().unwrap_or(if q.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY });
    if t.is_nan() {
        t = 0.0;
    }
    if t == f64::INFINITY {
        if up {
            return f64::INFINITY;
        }
        t = f64::MAX;
    } else if t == f64::NEG_INFINITY {
        if !up {
            return f64::NEG_INFINITY;
        }
        t = f64::MIN;
    }
    // The approximation is near-correctly rounded; verify against the exact
    // value and nudge until the directional contract holds.
    for _ in 0..128 {
        let exact = Rat::from_float(t).expect("finite by construction");
        let ok = if up { &exact >= q } else { &exact <= q };
        if ok {
            return t;
        }
        t = if up { t.next_up() } else { t.next_down() };
        if t.is_infinite() {
            return t;
        }
    }
    if up {
        f64::INFINITY
    } else {
        f64::NEG_INFINITY
    }
}

/// Rational upper bound on √q, exact when √q is a representable float and
/// otherwise within one float ulp.
pub fn sqrt_upper(q: &Rat) -> Result<Rat, ScalarError> {
    sqrt_directed(q, true)
}

/// Rational lower bound on √q (nonnegative).
pub fn sqrt_lower(q: &Rat) -> Result<Rat, ScalarError> {
    sqrt_directed(q, false)
}

fn sqrt_directed(q: &Rat, up: bool) -> Result<Rat, ScalarError> {
    if q.is_negative() {
        return Err(ScalarError::NegativeSqrt);
    }
    if q.is_zero() {
        return Ok(Rat::zero());
    }
    let approx = if up { to_f64_up(q) } else { to_f64_down(q) };
    let mut t = approx.sqrt();
    if !t.is_finite() {
        return Err(ScalarError::NonFinite);
    }
    for _ in 0..128 {
        let c = Rat::from_float(t).expect("finite by construction");
        let sq = &c * &c;
        let ok = if up { sq >= *q } else { sq <= *q && !c.is_negative() };
        if ok {
            return Ok(c);
        }
        t = if up { t.next_up() } else { (t.next_down()).max(0.0) };
    }
    Err(ScalarError::NonFinite)
}

/// Closed rational interval [lo, hi]. Arithmetic is exact (rationals are
/// closed under +, -, *) so no rounding step is needed at this level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QIv {
    lo: Rat,
    hi: Rat,
}

impl QIv {
    pub fn new(a: Rat, b: Rat) -> Self {
        if a <= b {
            QIv { lo: a, hi: b }
        } else {
            QIv { lo: b, hi: a }
        }
    }

    pub fn point(q: Rat) -> Self {
        QIv { lo: q.clone(), hi: q }
    }

    pub fn zero() -> Self {
        QIv::point(Rat::zero())
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }

    pub fn contains(&self, q: &Rat) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_iv(&self, other: &QIv) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn add(&self, o: &QIv) -> QIv {
        QIv { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &QIv) -> QIv {
        QIv { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> QIv {
        QIv { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    pub fn mul(&self, o: &QIv) -> QIv {
        let cands = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if *c < lo {
                lo = c.clone();
            }
            if *c > hi {
                hi = c.clone();
            }
        }
        QIv { lo, hi }
    }

    pub fn scale(&self, q: &Rat) -> QIv {
        QIv::new(&self.lo * q, &self.hi * q)
    }

    /// max |x| over the interval.
    pub fn mag(&self) -> Rat {
        self.lo.abs().max(self.hi.abs())
    }

    /// min |x| over the interval; 0 when the interval straddles 0.
    pub fn mig(&self) -> Rat {
        if self.lo.is_negative() && self.hi.is_positive() {
            Rat::zero()
        } else if self.lo >= Rat::zero() {
            self.lo.clone()
        } else {
            -self.hi.clone()
        }
    }
}

impl fmt::Display for QIv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

/// Rational complex rectangle {x+iy : x ∈ re, y ∈ im}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QRect {
    pub re: QIv,
    pub im: QIv,
}

impl QRect {
    pub fn new(re: QIv, im: QIv) -> Self {
        QRect { re, im }
    }

    pub fn real(re: QIv) -> Self {
        QRect { re, im: QIv::zero() }
    }

    pub fn point_real(q: Rat) -> Self {
        QRect::real(QIv::point(q))
    }

    pub fn zero() -> Self {
        QRect::real(QIv::zero())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_point(&self) -> bool {
        self.re.is_point() && self.im.is_point()
    }

    /// The rational value of a real point rectangle, if it is one.
    pub fn as_real_point(&self) -> Option<&Rat> {
        if self.is_real() && self.re.is_point() {
            Some(self.re.lo())
        } else {
            None
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains(&Rat::zero()) && self.im.contains(&Rat::zero())
    }

    pub fn add(&self, o: &QRect) -> QRect {
        QRect { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &QRect) -> QRect {
        QRect { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn neg(&self) -> QRect {
        QRect { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &QRect) -> QRect {
        QRect {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn scale(&self, q: &Rat) -> QRect {
        QRect { re: self.re.scale(q), im: self.im.scale(q) }
    }

    /// Rational upper bound of sup{|z| : z in the rectangle}. Exact for real
    /// or purely imaginary rectangles; otherwise a √-enclosure of the far
    /// corner, tight to one float ulp.
    pub fn mag_upper(&self) -> Rat {
        let a = self.re.mag();
        let b = self.im.mag();
        if b.is_zero() {
            a
        } else if a.is_zero() {
            b
        } else {
            sqrt_upper(&(&a * &a + &b * &b)).expect("nonnegative")
        }
    }

    /// Rational lower bound of inf{|z|}; 0 when the rectangle contains 0.
    pub fn mig_lower(&self) -> Rat {
        if self.contains_zero() {
            return Rat::zero();
        }
        let dx = self.re.mig();
        let dy = self.im.mig();
        if dy.is_zero() {
            dx
        } else if dx.is_zero() {
            dy
        } else {
            sqrt_lower(&(&dx * &dx + &dy * &dy)).expect("nonnegative")
        }
    }
}

impl fmt::Display for QRect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

/// Which side of the true value a `Bound` certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Lower,
    Upper,
    Exact,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Lower => "lower",
            Direction::Upper => "upper",
            Direction::Exact => "exact",
        }
    }
}

/// A certified one-sided (or exact) rational bound on some real quantity.
/// All arithmetic producing a `Bound` is performed in exact rationals with
/// any √ steps rounded in the certified direction, so `q` itself is the
/// certificate; float output is derived, never the source of truth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub q: Rat,
    pub dir: Direction,
}

impl Bound {
    pub fn exact(q: Rat) -> Self {
        Bound { q, dir: Direction::Exact }
    }

    pub fn upper(q: Rat) -> Self {
        Bound { q, dir: Direction::Upper }
    }

    pub fn lower(q: Rat) -> Self {
        Bound { q, dir: Direction::Lower }
    }

    /// Float value rounded toward the certified direction (an exact bound
    /// rounds up; its rational field carries the exact value).
    pub fn value_f64(&self) -> f64 {
        match self.dir {
            Direction::Lower => to_f64_down(&self.q),
            Direction::Upper | Direction::Exact => to_f64_up(&self.q),
        }
    }

    pub fn rational_string(&self) -> String {
        self.q.to_string()
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.dir {
            Direction::Lower => "≥",
            Direction::Upper => "≤",
            Direction::Exact => "=",
        };
        write!(f, "{} {}", tag, self.q)
    }
}
