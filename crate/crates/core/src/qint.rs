//! Exact arithmetic in imaginary quadratic fields `Q(sqrt(d))` and their rings
//! of integers `O_d = Z[w]`.
//!
//! Two coordinate systems are used. [`QuadRat`] stores `x + y*sqrt(d)` with
//! rational `x, y`; [`QuadInt`] stores `a + b*w` with integer `a, b`, where
//! `w = sqrt(d)` for `d = 2, 3 (mod 4)` and `w = (1 + sqrt(d))/2` for
//! `d = 1 (mod 4)`. Conversions between the two are total.
//!
//! Nothing here touches floating point: magnitudes are compared through
//! [`QuadRat::abs_sq`], which is exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeTuple, Serializer};
use thiserror::Error;

/// Largest `|d|` accepted by [`FieldTag::new`].
pub const MAX_ABS_D: i64 = 1_000_000_000_000;

/// The `d` values for which `O_d` contains elements of absolute value below 2
/// other than `0, 1, -1`.
pub const EXCEPTIONAL_D: [i64; 5] = [-1, -2, -3, -7, -11];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadError {
    #[error("d = {0} is not supported: only negative square-free integers are allowed")]
    Unsupported(i64),
    #[error("d = {0} is not square-free")]
    NotSquareFree(i64),
    #[error("|d| = {0} exceeds the supported range")]
    OutOfRange(i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: d = {left} vs d = {right}")]
    FieldMismatch { left: i64, right: i64 },
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

fn parse_err(input: &str, reason: impl Into<String>) -> QuadError {
    QuadError::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OmegaKind {
    /// `w = sqrt(d)`, used when `d = 2, 3 (mod 4)`.
    Sqrt,
    /// `w = (1 + sqrt(d))/2`, used when `d = 1 (mod 4)`.
    HalfIntegral,
}

/// A validated imaginary quadratic field `Q(sqrt(d))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldTag {
    d: i64,
    disc: i64,
    omega_kind: OmegaKind,
}

impl FieldTag {
    pub fn new(d: i64) -> Result<Self, QuadError> {
        if d >= 0 {
            return Err(QuadError::Unsupported(d));
        }
        if d < -MAX_ABS_D {
            return Err(QuadError::OutOfRange(d));
        }
        if !is_square_free(d.unsigned_abs()) {
            return Err(QuadError::NotSquareFree(d));
        }
        let half = d.rem_euclid(4) == 1;
        Ok(FieldTag {
            d,
            disc: if half { d } else { 4 * d },
            omega_kind: if half {
                OmegaKind::HalfIntegral
            } else {
                OmegaKind::Sqrt
            },
        })
    }

    /// `Q(i)`; also the ambient field used for friezes over the rational integers.
    pub fn gaussian() -> Self {
        FieldTag {
            d: -1,
            disc: -4,
            omega_kind: OmegaKind::Sqrt,
        }
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// The fundamental discriminant.
    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn omega_kind(&self) -> OmegaKind {
        self.omega_kind
    }

    pub fn is_exceptional(&self) -> bool {
        EXCEPTIONAL_D.contains(&self.d)
    }

    /// Trace of `w`: 0 or 1.
    pub fn omega_trace(&self) -> i64 {
        match self.omega_kind {
            OmegaKind::Sqrt => 0,
            OmegaKind::HalfIntegral => 1,
        }
    }

    /// Norm of `w`; `w^2 = trace(w)*w - norm(w)`.
    pub fn omega_norm(&self) -> i64 {
        match self.omega_kind {
            OmegaKind::Sqrt => -self.d,
            OmegaKind::HalfIntegral => (1 - self.d) / 4,
        }
    }

    pub fn check_same(&self, other: &FieldTag) -> Result<(), QuadError> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(QuadError::FieldMismatch {
                left: self.d,
                right: other.d,
            })
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(sqrt({}))", self.d)
    }
}

/// The ring a frieze or census lives over: the rational integers, or `O_d`.
///
/// Integer data is carried inside the Gaussian field, which contains `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Integers,
    Quadratic(FieldTag),
}

impl Domain {
    /// Ambient field used for arithmetic.
    pub fn tag(&self) -> FieldTag {
        match self {
            Domain::Integers => FieldTag::gaussian(),
            Domain::Quadratic(t) => *t,
        }
    }

    /// `"Z"` or the decimal value of `d`.
    pub fn label(&self) -> String {
        match self {
            Domain::Integers => "Z".to_string(),
            Domain::Quadratic(t) => t.d().to_string(),
        }
    }

    pub fn parse_label(s: &str) -> Result<Domain, QuadError> {
        match s.trim() {
            "Z" | "z" => Ok(Domain::Integers),
            other => {
                let d: i64 = other.parse().map_err(|_| parse_err(s, "expected Z or an integer d"))?;
                Ok(Domain::Quadratic(FieldTag::new(d)?))
            }
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Integers => f.write_str("Z"),
            Domain::Quadratic(t) => write!(f, "O_{}", t.d()),
        }
    }
}

fn is_square_free(n: u64) -> bool {
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

fn ratio_int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// An element `x + y*sqrt(d)` of `Q(sqrt(d))`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadRat {
    tag: FieldTag,
    x: BigRational,
    y: BigRational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Conj,
}

/// Checked binary/unary field arithmetic. `Neg` and `Conj` ignore `rhs`.
pub fn arith(lhs: &QuadRat, rhs: &QuadRat, op: ArithOp) -> Result<QuadRat, QuadError> {
    lhs.tag.check_same(&rhs.tag)?;
    Ok(match op {
        ArithOp::Add => lhs + rhs,
        ArithOp::Sub => lhs - rhs,
        ArithOp::Mul => lhs * rhs,
        ArithOp::Div => lhs.checked_div(rhs)?,
        ArithOp::Neg => -lhs,
        ArithOp::Conj => lhs.conj(),
    })
}

impl QuadRat {
    pub fn new(tag: FieldTag, x: BigRational, y: BigRational) -> Self {
        QuadRat { tag, x, y }
    }

    pub fn from_int(tag: FieldTag, n: impl Into<BigInt>) -> Self {
        QuadRat::new(tag, ratio_int(n), BigRational::zero())
    }

    pub fn from_ratio(tag: FieldTag, q: BigRational) -> Self {
        QuadRat::new(tag, q, BigRational::zero())
    }

    /// `(x_num/x_den) + (y_num/y_den)*sqrt(d)`, convenience for small literals.
    pub fn from_parts(tag: FieldTag, x: (i64, i64), y: (i64, i64)) -> Self {
        QuadRat::new(
            tag,
            BigRational::new(x.0.into(), x.1.into()),
            BigRational::new(y.0.into(), y.1.into()),
        )
    }

    pub fn zero(tag: FieldTag) -> Self {
        QuadRat::from_int(tag, 0)
    }

    pub fn one(tag: FieldTag) -> Self {
        QuadRat::from_int(tag, 1)
    }

    /// `sqrt(d)` itself.
    pub fn sqrt_d(tag: FieldTag) -> Self {
        QuadRat::new(tag, BigRational::zero(), BigRational::one())
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn y(&self) -> &BigRational {
        &self.y
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.x.is_one() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    /// True iff the element lies in `Z`.
    pub fn is_rational_integer(&self) -> bool {
        self.y.is_zero() && self.x.is_integer()
    }

    pub fn conj(&self) -> Self {
        QuadRat::new(self.tag, self.x.clone(), -self.y.clone())
    }

    /// `z * conj(z) = x^2 - d*y^2`, the exact squared absolute value.
    pub fn abs_sq(&self) -> BigRational {
        &self.x * &self.x - ratio_int(self.tag.d) * &self.y * &self.y
    }

    /// Field norm; equals [`abs_sq`](Self::abs_sq) since `d < 0`.
    pub fn norm(&self) -> BigRational {
        self.abs_sq()
    }

    pub fn checked_div(&self, rhs: &QuadRat) -> Result<QuadRat, QuadError> {
        self.tag.check_same(&rhs.tag)?;
        let n = rhs.abs_sq();
        if n.is_zero() {
            return Err(QuadError::DivisionByZero);
        }
        let p = self * &rhs.conj();
        Ok(QuadRat::new(self.tag, p.x / &n, p.y / &n))
    }

    pub fn inverse(&self) -> Result<QuadRat, QuadError> {
        QuadRat::one(self.tag).checked_div(self)
    }

    pub fn pow(&self, exp: i64) -> Result<QuadRat, QuadError> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut acc = QuadRat::one(self.tag);
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Coordinates `(a, b)` with `self = a + b*w`, rational in general.
    pub fn omega_coords(&self) -> (BigRational, BigRational) {
        match self.tag.omega_kind {
            OmegaKind::Sqrt => (self.x.clone(), self.y.clone()),
            OmegaKind::HalfIntegral => {
                let b = &self.y * ratio_int(2);
                (&self.x - &self.y, b)
            }
        }
    }

    /// Builds `a + b*w` from rational `w`-coordinates.
    pub fn from_omega_coords(tag: FieldTag, a: BigRational, b: BigRational) -> Self {
        match tag.omega_kind {
            OmegaKind::Sqrt => QuadRat::new(tag, a, b),
            OmegaKind::HalfIntegral => {
                let half = &b / ratio_int(2);
                QuadRat::new(tag, a + &half, half)
            }
        }
    }

    /// Membership in `O_d`, returning the integral `w`-coordinates when it holds.
    pub fn to_quad_int(&self) -> Option<QuadInt> {
        let (a, b) = self.omega_coords();
        if a.is_integer() && b.is_integer() {
            Some(QuadInt::new(self.tag, a.to_integer(), b.to_integer()))
        } else {
            None
        }
    }

    pub fn is_integral(&self) -> bool {
        self.to_quad_int().is_some()
    }

    /// Least positive integer `m` with `m*self` in `O_d`.
    pub fn denominator(&self) -> BigInt {
        let (a, b) = self.omega_coords();
        a.denom().lcm(b.denom())
    }

    /// Parses the canonical `x+y*sqrt(d)` form. Also accepts `w`-terms,
    /// `(...)/q`, bare rationals and bare `sqrt(d)`.
    pub fn parse(tag: FieldTag, s: &str) -> Result<QuadRat, QuadError> {
        parse_quad(tag, s)
    }
}

fn binop_tags(l: &FieldTag, r: &FieldTag) -> FieldTag {
    if l.d != r.d {
        panic!("field mismatch: d = {} vs d = {}", l.d, r.d);
    }
    *l
}

impl<'a> Add<&'a QuadRat> for &'a QuadRat {
    type Output = QuadRat;
    fn add(self, rhs: &QuadRat) -> QuadRat {
        let tag = binop_tags(&self.tag, &rhs.tag);
        QuadRat::new(tag, &self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl<'a> Sub<&'a QuadRat> for &'a QuadRat {
    type Output = QuadRat;
    fn sub(self, rhs: &QuadRat) -> QuadRat {
        let tag = binop_tags(&self.tag, &rhs.tag);
        QuadRat::new(tag, &self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl<'a> Mul<&'a QuadRat> for &'a QuadRat {
    type Output = QuadRat;
    fn mul(self, rhs: &QuadRat) -> QuadRat {
        let tag = binop_tags(&self.tag, &rhs.tag);
        let d = ratio_int(tag.d);
        QuadRat::new(
            tag,
            &self.x * &rhs.x + d * &self.y * &rhs.y,
            &self.x * &rhs.y + &self.y * &rhs.x,
        )
    }
}

impl Neg for &QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        QuadRat::new(self.tag, -self.x.clone(), -self.y.clone())
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident :: $m:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                $tr::$m(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a $t> for $t {
            type Output = $t;
            fn $m(self, rhs: &'a $t) -> $t {
                $tr::$m(&self, rhs)
            }
        }
    )*};
}

forward_owned!(QuadRat, Add::add, Sub::sub, Mul::mul);
forward_owned!(QuadInt, Add::add, Sub::sub, Mul::mul);

impl Neg for QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        -&self
    }
}

impl fmt::Display for QuadRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            return write!(f, "{}", self.x);
        }
        let sign = if self.y.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}*sqrt({})", self.x, sign, self.y.abs(), self.tag.d)
    }
}

fn ratio_string(q: &BigRational) -> String {
    q.to_string()
}

impl Serialize for QuadRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&ratio_string(&self.x))?;
        t.serialize_element(&ratio_string(&self.y))?;
        t.end()
    }
}

/// An element `a + b*w` of `O_d`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadInt {
    tag: FieldTag,
    a: BigInt,
    b: BigInt,
}

impl QuadInt {
    pub fn new(tag: FieldTag, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadInt {
            tag,
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn from_int(tag: FieldTag, n: impl Into<BigInt>) -> Self {
        QuadInt::new(tag, n, 0)
    }

    pub fn omega(tag: FieldTag) -> Self {
        QuadInt::new(tag, 0, 1)
    }

    pub fn zero(tag: FieldTag) -> Self {
        QuadInt::new(tag, 0, 0)
    }

    pub fn one(tag: FieldTag) -> Self {
        QuadInt::new(tag, 1, 0)
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational_integer(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_quad_rat(&self) -> QuadRat {
        QuadRat::from_omega_coords(
            self.tag,
            BigRational::from_integer(self.a.clone()),
            BigRational::from_integer(self.b.clone()),
        )
    }

    /// `conj(w) = trace(w) - w`.
    pub fn conj(&self) -> Self {
        let t = BigInt::from(self.tag.omega_trace());
        QuadInt::new(self.tag, &self.a + &t * &self.b, -self.b.clone())
    }

    /// `N(a + b*w) = a^2 + trace(w)*a*b + norm(w)*b^2`, non-negative.
    pub fn norm(&self) -> BigInt {
        let t = BigInt::from(self.tag.omega_trace());
        let n = BigInt::from(self.tag.omega_norm());
        &self.a * &self.a + t * &self.a * &self.b + n * &self.b * &self.b
    }

    pub fn abs_sq(&self) -> BigInt {
        self.norm()
    }

    /// Exact quotient in `O_d`, if it exists.
    pub fn div_exact(&self, rhs: &QuadInt) -> Option<QuadInt> {
        if rhs.is_zero() {
            return None;
        }
        let n = rhs.norm();
        let p = self * &rhs.conj();
        if p.a.is_multiple_of(&n) && p.b.is_multiple_of(&n) {
            Some(QuadInt::new(self.tag, &p.a / &n, &p.b / &n))
        } else {
            None
        }
    }

    pub fn pow(&self, exp: u32) -> QuadInt {
        let mut acc = QuadInt::one(self.tag);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Units of `O_d`: `+-1`, plus `+-i` for `d = -1` and the sixth roots of
    /// unity for `d = -3`. Listed in canonical order.
    pub fn units(tag: FieldTag) -> Vec<QuadInt> {
        let mut out = small_elements(tag, &BigRational::from_integer(2.into()))
            .into_iter()
            .filter(|z| z.norm().is_one())
            .collect::<Vec<_>>();
        out.sort();
        out
    }

    /// `(norm, a, b)`: the key behind the canonical order.
    pub fn canonical_key(&self) -> (BigInt, &BigInt, &BigInt) {
        (self.norm(), &self.a, &self.b)
    }

    pub fn parse(tag: FieldTag, s: &str) -> Result<QuadInt, QuadError> {
        let z = parse_quad(tag, s)?;
        z.to_quad_int()
            .ok_or_else(|| parse_err(s, "value is not in the ring of integers"))
    }

    /// Builds an element from its JSON coordinate strings.
    pub fn from_coord_strings(tag: FieldTag, a: &str, b: &str) -> Result<QuadInt, QuadError> {
        let pa = a.trim().parse::<BigInt>().map_err(|e| parse_err(a, e.to_string()))?;
        let pb = b.trim().parse::<BigInt>().map_err(|e| parse_err(b, e.to_string()))?;
        Ok(QuadInt::new(tag, pa, pb))
    }
}

/// Canonical order: by norm, then `a`, then `b`. Elements of different
/// fields are ordered by `d` first.
impl Ord for QuadInt {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .tag
            .d
            .cmp(&self.tag.d)
            .then_with(|| self.canonical_key().cmp(&other.canonical_key()))
    }
}

impl PartialOrd for QuadInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn add(self, rhs: &QuadInt) -> QuadInt {
        let tag = binop_tags(&self.tag, &rhs.tag);
        QuadInt::new(tag, &self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl<'a> Sub<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn sub(self, rhs: &QuadInt) -> QuadInt {
        let tag = binop_tags(&self.tag, &rhs.tag);
        QuadInt::new(tag, &self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl<'a> Mul<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn mul(self, rhs: &QuadInt) -> QuadInt {
        let tag = binop_tags(&self.tag, &rhs.tag);
        // w^2 = t*w - n
        let t = BigInt::from(tag.omega_trace());
        let n = BigInt::from(tag.omega_norm());
        let bb = &self.b * &rhs.b;
        QuadInt::new(
            tag,
            &self.a * &rhs.a - &n * &bb,
            &self.a * &rhs.b + &self.b * &rhs.a + &t * &bb,
        )
    }
}

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt::new(self.tag, -self.a.clone(), -self.b.clone())
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        -&self
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}*w", self.a, sign, self.b.abs())
    }
}

impl Serialize for QuadInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&self.a.to_string())?;
        t.serialize_element(&self.b.to_string())?;
        t.end()
    }
}

impl From<&QuadInt> for QuadRat {
    fn from(z: &QuadInt) -> QuadRat {
        z.to_quad_rat()
    }
}

/// All `z` in `O_d` with `abs_sq(z) < bound_sq`, in canonical order.
pub fn small_elements(tag: FieldTag, bound_sq: &BigRational) -> Vec<QuadInt> {
    elements_in_disc(tag, bound_sq, false)
}

/// All `z` in `O_d` with `abs_sq(z) <= bound_sq`, in canonical order.
pub fn elements_up_to(tag: FieldTag, bound_sq: &BigRational) -> Vec<QuadInt> {
    elements_in_disc(tag, bound_sq, true)
}

fn elements_in_disc(tag: FieldTag, bound_sq: &BigRational, inclusive: bool) -> Vec<QuadInt> {
    let mut out = Vec::new();
    if bound_sq.is_negative() || (!inclusive && bound_sq.is_zero()) {
        return out;
    }
    // 4*N(a + b*w) = (2a + t*b)^2 + |D|*b^2
    let four_b = (bound_sq * ratio_int(4)).floor().to_integer();
    let abs_disc = BigInt::from(tag.disc.unsigned_abs());
    let t = BigInt::from(tag.omega_trace());
    let b_max = (&four_b / &abs_disc).sqrt();
    let within = |z: &QuadInt| {
        let n = BigRational::from_integer(z.norm());
        if inclusive {
            &n <= bound_sq
        } else {
            &n < bound_sq
        }
    };
    let mut b = -b_max.clone();
    while b <= b_max {
        let rest = &four_b - &abs_disc * &b * &b;
        if !rest.is_negative() {
            let s_max = rest.sqrt();
            // 2a + t*b ranges over [-s_max, s_max]
            let lo: BigInt = (-&s_max - &t * &b).div_floor(&BigInt::from(2)) - 1;
            let hi: BigInt = (&s_max - &t * &b).div_floor(&BigInt::from(2)) + 1;
            let mut a = lo;
            while a <= hi {
                let z = QuadInt::new(tag, a.clone(), b.clone());
                if within(&z) {
                    out.push(z);
                }
                a += 1;
            }
        }
        b += 1;
    }
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// parsing

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n = n.trim().parse::<BigInt>().ok()?;
            let d = d.trim().parse::<BigInt>().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

fn parse_quad(tag: FieldTag, input: &str) -> Result<QuadRat, QuadError> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(parse_err(input, "empty input"));
    }
    // "(expr)/q"
    if let Some(rest) = s.strip_prefix('(') {
        if let Some(close) = matching_paren(&s) {
            if close + 1 < s.len() && s[close + 1..].starts_with('/') {
                let inner = &rest[..close - 1];
                let q = parse_rational(&s[close + 2..])
                    .ok_or_else(|| parse_err(input, "bad denominator"))?;
                let z = parse_sum(tag, inner, input)?;
                return z.checked_div(&QuadRat::from_ratio(tag, q));
            }
        }
    }
    parse_sum(tag, &s, input)
}

fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

fn parse_sum(tag: FieldTag, s: &str, input: &str) -> Result<QuadRat, QuadError> {
    // split into signed terms at top-level '+'/'-' (not inside parentheses,
    // not directly after '(' or at the start)
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth -= 1;
                cur.push(c);
            }
            '+' | '-' if depth == 0 && !cur.is_empty() && !cur.ends_with(['+', '-', '*']) => {
                terms.push(std::mem::take(&mut cur));
                cur.push(c);
            }
            _ => cur.push(c),
        }
    }
    terms.push(cur);
    let mut acc = QuadRat::zero(tag);
    for term in terms {
        acc = &acc + &parse_term(tag, &term, input)?;
    }
    Ok(acc)
}

fn parse_term(tag: FieldTag, term: &str, input: &str) -> Result<QuadRat, QuadError> {
    let (neg, body) = match term.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, term.strip_prefix('+').unwrap_or(term)),
    };
    if body.is_empty() {
        return Err(parse_err(input, "dangling sign"));
    }
    let (coef_str, unit) = match body.rsplit_once('*') {
        Some((c, u)) => (Some(c), u),
        None => {
            if is_unit_symbol(body) {
                (None, body)
            } else {
                (Some(body), "")
            }
        }
    };
    let coef = match coef_str {
        Some(c) => parse_rational(c).ok_or_else(|| parse_err(input, format!("bad number {c:?}")))?,
        None => BigRational::one(),
    };
    let coef = if neg { -coef } else { coef };
    let unit_val = match unit {
        "" => QuadRat::one(tag),
        "w" | "ω" => QuadInt::omega(tag).to_quad_rat(),
        "wbar" | "ω̄" => QuadInt::omega(tag).conj().to_quad_rat(),
        u if u.starts_with("sqrt(") && u.ends_with(')') => {
            let inner = &u[5..u.len() - 1];
            let d: i64 = inner
                .parse()
                .map_err(|_| parse_err(input, format!("bad radicand {inner:?}")))?;
            if d != tag.d {
                return Err(QuadError::FieldMismatch {
                    left: tag.d,
                    right: d,
                });
            }
            QuadRat::sqrt_d(tag)
        }
        "i" if tag.d == -1 => QuadRat::sqrt_d(tag),
        "tau" | "τ" => QuadRat::sqrt_d(tag),
        other => return Err(parse_err(input, format!("unknown symbol {other:?}"))),
    };
    Ok(&QuadRat::from_ratio(tag, coef) * &unit_val)
}

fn is_unit_symbol(s: &str) -> bool {
    matches!(s, "w" | "ω" | "wbar" | "ω̄" | "i" | "tau" | "τ") || s.starts_with("sqrt(")
}

/// Integer square root check used by the lattice code.
pub(crate) fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tag(d: i64) -> FieldTag {
        FieldTag::new(d).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn field_tag_validation() {
        assert_eq!(FieldTag::new(0), Err(QuadError::Unsupported(0)));
        assert_eq!(FieldTag::new(1), Err(QuadError::Unsupported(1)));
        assert_eq!(FieldTag::new(5), Err(QuadError::Unsupported(5)));
        assert_eq!(FieldTag::new(-4), Err(QuadError::NotSquareFree(-4)));
        assert_eq!(FieldTag::new(-18), Err(QuadError::NotSquareFree(-18)));
        let t = tag(-11);
        assert_eq!(t.omega_kind(), OmegaKind::HalfIntegral);
        assert_eq!(t.disc(), -11);
        let t = tag(-13);
        assert_eq!(t.omega_kind(), OmegaKind::Sqrt);
        assert_eq!(t.disc(), -52);
        assert_eq!(tag(-1), FieldTag::gaussian());
    }

    #[test]
    fn gaussian_product_of_conjugates() {
        let t = tag(-1);
        let z = QuadRat::from_parts(t, (1, 1), (1, 1));
        let p = arith(&z, &z.conj(), ArithOp::Mul).unwrap();
        assert_eq!(p, QuadRat::from_int(t, 2));
    }

    #[test]
    fn omega_times_conjugate_for_minus_eleven() {
        let t = tag(-11);
        let w = QuadInt::omega(t);
        assert_eq!(&w * &w.conj(), QuadInt::from_int(t, 3));
        let wr = w.to_quad_rat();
        assert_eq!(wr, QuadRat::from_parts(t, (1, 2), (1, 2)));
        assert_eq!(&wr * &wr.conj(), QuadRat::from_int(t, 3));
    }

    #[test]
    fn subtraction_gives_zero() {
        let t = tag(-7);
        let z = QuadRat::from_parts(t, (3, 5), (-2, 7));
        assert!(arith(&z, &z, ArithOp::Sub).unwrap().is_zero());
    }

    #[test]
    fn division_and_errors() {
        let t = tag(-5);
        let z = QuadRat::from_parts(t, (3, 1), (-2, 1));
        assert!(arith(&z, &z, ArithOp::Div).unwrap().is_one());
        assert_eq!(
            arith(&z, &QuadRat::zero(t), ArithOp::Div),
            Err(QuadError::DivisionByZero)
        );
        let other = QuadRat::one(tag(-7));
        assert_eq!(
            arith(&z, &other, ArithOp::Add),
            Err(QuadError::FieldMismatch { left: -5, right: -7 })
        );
    }

    #[test]
    fn integrality() {
        let t = tag(-11);
        let w = QuadRat::from_parts(t, (1, 2), (1, 2));
        let zi = w.to_quad_int().unwrap();
        assert_eq!((zi.a().clone(), zi.b().clone()), (0.into(), 1.into()));

        let t = tag(-13);
        let alpha = QuadRat::from_parts(t, (-2, 47), (5, 47));
        assert!(!alpha.is_integral());

        let t = tag(-5);
        assert!(QuadRat::from_parts(t, (3, 1), (-2, 1)).is_integral());
        // (1 + sqrt(-5))/2 is not integral since -5 = 3 mod 4
        assert!(!QuadRat::from_parts(t, (1, 2), (1, 2)).is_integral());
    }

    #[test]
    fn abs_sq_examples() {
        assert_eq!(QuadRat::from_parts(tag(-1), (1, 1), (1, 1)).abs_sq(), q(2));
        assert_eq!(
            QuadRat::from_parts(tag(-13), (-34, 1), (9, 1)).abs_sq(),
            q(2209)
        );
        assert_eq!(QuadRat::from_parts(tag(-7), (1, 2), (1, 2)).abs_sq(), q(2));
    }

    #[test]
    fn small_elements_examples() {
        let four = q(4);
        let z = small_elements(tag(-5), &four);
        let t = tag(-5);
        assert_eq!(
            z,
            vec![
                QuadInt::zero(t),
                QuadInt::from_int(t, -1),
                QuadInt::from_int(t, 1)
            ]
        );
        // oracle: scan |a|, |b| <= 2 for d = -1
        let t = tag(-1);
        let mut brute = Vec::new();
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                if a * a + b * b < 4 {
                    brute.push(QuadInt::new(t, a, b));
                }
            }
        }
        brute.sort();
        assert_eq!(small_elements(t, &four), brute);
        assert_eq!(brute.len(), 9);
        // Eisenstein integers: N(a + b*w) = a^2 + ab + b^2
        let t = tag(-3);
        let mut brute = Vec::new();
        for a in -4i64..=4 {
            for b in -4i64..=4 {
                if a * a + a * b + b * b < 4 {
                    brute.push(QuadInt::new(t, a, b));
                }
            }
        }
        brute.sort();
        let got = small_elements(t, &four);
        assert_eq!(got, brute);
        assert_eq!(got.len(), 13);
    }

    #[test]
    fn units_of_special_fields() {
        assert_eq!(QuadInt::units(tag(-1)).len(), 4);
        assert_eq!(QuadInt::units(tag(-3)).len(), 6);
        assert_eq!(QuadInt::units(tag(-13)).len(), 2);
    }

    #[test]
    fn display_and_parse() {
        let t = tag(-13);
        let alpha = QuadRat::from_parts(t, (-2, 47), (5, 47));
        assert_eq!(alpha.to_string(), "-2/47+5/47*sqrt(-13)");
        assert_eq!(QuadRat::parse(t, "-2/47+5/47*sqrt(-13)").unwrap(), alpha);
        assert_eq!(QuadRat::parse(t, "(-2+5*sqrt(-13))/47").unwrap(), alpha);
        assert_eq!(QuadRat::parse(t, "(-2 + 5*tau)/47").unwrap(), alpha);
        let t = tag(-11);
        let wbar = QuadInt::omega(t).conj();
        assert_eq!(wbar.to_string(), "1-1*w");
        assert_eq!(QuadInt::parse(t, "1-1*w").unwrap(), wbar);
        assert_eq!(QuadInt::parse(t, "1-w").unwrap(), wbar);
        assert_eq!(QuadInt::parse(t, "wbar").unwrap(), wbar);
        assert_eq!(QuadInt::parse(t, "-3").unwrap(), QuadInt::from_int(t, -3));
        assert!(QuadInt::parse(t, "1/2").is_err());
        assert!(QuadRat::parse(t, "sqrt(-7)").is_err());
        assert!(QuadRat::parse(t, "1+").is_err());
    }

    #[test]
    fn serializes_as_string_pairs() {
        let t = tag(-13);
        let z = QuadInt::new(t, -34, 9);
        assert_eq!(serde_json::to_string(&z).unwrap(), r#"["-34","9"]"#);
        let r = QuadRat::from_parts(t, (-2, 47), (5, 47));
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"["-2/47","5/47"]"#);
    }
}
