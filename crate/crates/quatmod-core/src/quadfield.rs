//! Exact arithmetic in real quadratic fields `K = Q(sqrt(n))`.
//!
//! Elements are stored in the theta-basis of the ring of integers
//! `Z_K = Z + Z*theta`, where `theta = sqrt(n)` for `n != 1 (mod 4)` and
//! `theta = (1 + sqrt(n))/2` for `n == 1 (mod 4)`. With this convention
//! membership in `Z_K` is a pure integrality test on the coordinates.
//!
//! The rationals are handled as a degenerate field descriptor with no theta
//! and trivial Galois action, so downstream code sees a single abstraction.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{fmath, rat_int, Error, Int, Rat, Result};

/// Generator convention for the ring of integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThetaKind {
    /// `theta = sqrt(n)`, used when `n != 1 (mod 4)`.
    Sqrt,
    /// `theta = (1 + sqrt(n))/2`, used when `n == 1 (mod 4)`.
    HalfPlusSqrt,
}

/// Descriptor of the base field: the rationals or a real quadratic field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadraticField {
    /// `K = Q`; theta is absent and the Galois action is trivial.
    Rational,
    /// `K = Q(sqrt(n))` with `n` squarefree and `n > 1`.
    Real { n: u64, theta: ThetaKind },
}

fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

impl QuadraticField {
    /// The degenerate descriptor for `K = Q`.
    pub fn rational() -> Self {
        QuadraticField::Rational
    }

    /// Constructs `Q(sqrt(n))` for squarefree `n > 1`.
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 || !is_squarefree(n) {
            return Err(Error::NotSquarefree(n));
        }
        let theta = if n % 4 == 1 {
            ThetaKind::HalfPlusSqrt
        } else {
            ThetaKind::Sqrt
        };
        Ok(QuadraticField::Real { n, theta })
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, QuadraticField::Rational)
    }

    /// The squarefree parameter, or `None` for `K = Q`.
    pub fn n(&self) -> Option<u64> {
        match self {
            QuadraticField::Rational => None,
            QuadraticField::Real { n, .. } => Some(*n),
        }
    }

    pub fn theta_kind(&self) -> Option<ThetaKind> {
        match self {
            QuadraticField::Rational => None,
            QuadraticField::Real { theta, .. } => Some(*theta),
        }
    }

    /// Field discriminant: `n` for `n == 1 (mod 4)`, else `4n`; 1 for `Q`.
    pub fn discriminant(&self) -> Int {
        match self {
            QuadraticField::Rational => Int::one(),
            QuadraticField::Real { n, theta } => match theta {
                ThetaKind::Sqrt => Int::from(4 * n),
                ThetaKind::HalfPlusSqrt => Int::from(*n),
            },
        }
    }

    /// Degree over `Q`: 1 or 2.
    pub fn degree(&self) -> usize {
        if self.is_rational() {
            1
        } else {
            2
        }
    }

    /// Numerical value of theta under the canonical embedding.
    pub fn theta_value(&self) -> f64 {
        match self {
            QuadraticField::Rational => 0.0,
            QuadraticField::Real { n, theta } => {
                let s = fmath::sqrt(*n as f64);
                match theta {
                    ThetaKind::Sqrt => s,
                    ThetaKind::HalfPlusSqrt => (1.0 + s) / 2.0,
                }
            }
        }
    }

    /// The element `theta` itself. Errors for `K = Q`.
    pub fn theta(&self) -> Result<FieldElement> {
        if self.is_rational() {
            return Err(Error::RationalField);
        }
        Ok(FieldElement {
            field: *self,
            a: Rat::zero(),
            b: Rat::one(),
        })
    }

    /// The fundamental unit of `Z_K`, normalized so that it exceeds 1 under
    /// the canonical embedding.
    ///
    /// Computed from the purely periodic continued fraction of a reduced
    /// translate of theta; if the period is `l` with convergent denominators
    /// `q`, the unit is `q_{l-1} * alpha + q_{l-2}`.
    pub fn fundamental_unit(&self) -> Result<FieldElement> {
        let (n, theta) = match self {
            QuadraticField::Rational => return Err(Error::RationalField),
            QuadraticField::Real { n, theta } => (*n, *theta),
        };
        let d = Int::from(n);
        let s = d.sqrt(); // floor of sqrt(n); n is never a perfect square

        // alpha = m + theta, shifted so that alpha > 1 and -1 < conj(alpha) < 0.
        // Represent alpha = (p0 + sqrt(n)) / q0.
        let (m, p0, q0): (Int, Int, Int) = match theta {
            ThetaKind::Sqrt => (s.clone(), s.clone(), Int::one()),
            ThetaKind::HalfPlusSqrt => {
                let m = (&s - Int::one()).div_floor(&Int::from(2));
                let p0 = Int::from(2) * &m + Int::one();
                (m, p0, Int::from(2))
            }
        };

        let mut p = p0.clone();
        let mut q = q0.clone();
        // Convergent denominators, seeded with k_{-2} = 1 and k_{-1} = 0.
        let mut den1 = Int::one();
        let mut den0 = Int::zero();
        loop {
            let a = (&p + &s).div_floor(&q);
            let p_next = &a * &q - &p;
            let q_next = (&d - &p_next * &p_next) / &q;
            debug_assert!(q_next > Int::zero(), "continued fraction left the reduced domain");
            let den_next = &a * &den0 + &den1;
            den1 = den0;
            den0 = den_next;
            p = p_next;
            q = q_next;
            if p == p0 && q == q0 {
                break;
            }
        }

        // unit = den0 * alpha + den1 = (den0 * m + den1) + den0 * theta.
        let unit = FieldElement {
            field: *self,
            a: Rat::from_integer(&den0 * &m + &den1),
            b: Rat::from_integer(den0),
        };
        debug_assert!(unit.norm().abs().is_one());
        debug_assert!(unit.embed() > 1.0);
        Ok(unit)
    }

    /// Generator of the totally positive units: the fundamental unit when its
    /// norm is +1, otherwise its square.
    pub fn totally_positive_generator(&self) -> Result<FieldElement> {
        let eps = self.fundamental_unit()?;
        if eps.norm().is_one() {
            Ok(eps)
        } else {
            Ok(&eps * &eps)
        }
    }
}

impl fmt::Display for QuadraticField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadraticField::Rational => write!(f, "Q"),
            QuadraticField::Real { n, .. } => write!(f, "Q(sqrt({n}))"),
        }
    }
}

/// Exact element `a + b*theta` of a quadratic field (or of `Q` when `b = 0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: QuadraticField,
    a: Rat,
    b: Rat,
}

impl FieldElement {
    pub fn new(field: QuadraticField, a: Rat, b: Rat) -> Result<Self> {
        if field.is_rational() && !b.is_zero() {
            return Err(Error::FieldMismatch);
        }
        Ok(FieldElement { field, a, b })
    }

    pub fn from_rat(field: QuadraticField, a: Rat) -> Self {
        FieldElement {
            field,
            a,
            b: Rat::zero(),
        }
    }

    pub fn from_int(field: QuadraticField, v: i64) -> Self {
        Self::from_rat(field, rat_int(v))
    }

    pub fn zero(field: QuadraticField) -> Self {
        Self::from_int(field, 0)
    }

    pub fn one(field: QuadraticField) -> Self {
        Self::from_int(field, 1)
    }

    /// Builds an element from coordinates `p + q*sqrt(n)` in the sqrt-basis.
    pub fn from_sqrt_basis(field: QuadraticField, p: Rat, q: Rat) -> Result<Self> {
        match field {
            QuadraticField::Rational => {
                if q.is_zero() {
                    Ok(Self::from_rat(field, p))
                } else {
                    Err(Error::FieldMismatch)
                }
            }
            QuadraticField::Real { theta, .. } => {
                let (a, b) = match theta {
                    ThetaKind::Sqrt => (p, q),
                    // sqrt(n) = 2*theta - 1
                    ThetaKind::HalfPlusSqrt => (p - &q, Rat::from_integer(Int::from(2)) * q),
                };
                Ok(FieldElement { field, a, b })
            }
        }
    }

    /// Coordinates `(p, q)` such that the value is `p + q*sqrt(n)`.
    pub fn to_sqrt_basis(&self) -> (Rat, Rat) {
        match self.field {
            QuadraticField::Rational => (self.a.clone(), Rat::zero()),
            QuadraticField::Real { theta, .. } => match theta {
                ThetaKind::Sqrt => (self.a.clone(), self.b.clone()),
                ThetaKind::HalfPlusSqrt => {
                    let half = Rat::new(Int::one(), Int::from(2));
                    (&self.a + &half * &self.b, half * &self.b)
                }
            },
        }
    }

    pub fn field(&self) -> QuadraticField {
        self.field
    }

    /// Rational coordinate on 1 in the theta-basis.
    pub fn coeff_a(&self) -> &Rat {
        &self.a
    }

    /// Rational coordinate on theta in the theta-basis.
    pub fn coeff_b(&self) -> &Rat {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational_value(&self) -> bool {
        self.b.is_zero()
    }

    /// Membership in `Z_K = Z + Z*theta`.
    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    fn require_same_field(&self, rhs: &Self) {
        assert_eq!(self.field, rhs.field, "field mismatch");
    }

    /// Galois conjugate; the identity on `Q`.
    pub fn galois(&self) -> Self {
        match self.field {
            QuadraticField::Rational => self.clone(),
            QuadraticField::Real { theta, .. } => match theta {
                // sigma(theta) = -theta
                ThetaKind::Sqrt => FieldElement {
                    field: self.field,
                    a: self.a.clone(),
                    b: -self.b.clone(),
                },
                // sigma(theta) = 1 - theta
                ThetaKind::HalfPlusSqrt => FieldElement {
                    field: self.field,
                    a: &self.a + &self.b,
                    b: -self.b.clone(),
                },
            },
        }
    }

    /// Field norm `x * sigma(x)`, a rational number.
    pub fn norm(&self) -> Rat {
        let prod = self * &self.galois();
        debug_assert!(prod.b.is_zero());
        prod.a
    }

    /// Field trace `x + sigma(x)`, a rational number.
    pub fn trace(&self) -> Rat {
        let sum = self + &self.galois();
        debug_assert!(sum.b.is_zero());
        sum.a
    }

    /// Multiplicative inverse `sigma(x) / N(x)`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        let conj = self.galois();
        Ok(FieldElement {
            field: self.field,
            a: conj.a / &n,
            b: conj.b / &n,
        })
    }

    /// Integer power; negative exponents require a nonzero element.
    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(self.field);
        let mut e = exp.unsigned_abs();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Value under the canonical embedding (`sqrt(n) > 0`).
    ///
    /// Evaluated in the sqrt-basis; when the two terms cancel, the value is
    /// recomputed as `N(x)` divided by the conjugate combination to avoid the
    /// loss of significance.
    pub fn embed(&self) -> f64 {
        let (p, q) = self.to_sqrt_basis();
        let n = match self.field.n() {
            None => return p.to_f64().unwrap_or(f64::NAN),
            Some(n) => n,
        };
        embed_sqrt_basis(&p, &q, n)
    }

    /// The pair of archimedean values `(x, sigma(x))`.
    pub fn embed_pair(&self) -> (f64, f64) {
        (self.embed(), self.galois().embed())
    }

    /// Exact sign under the canonical embedding: -1, 0 or +1.
    pub fn signum(&self) -> i32 {
        let (p, q) = self.to_sqrt_basis();
        let n = match self.field.n() {
            None => return rat_signum(&p),
            Some(n) => n,
        };
        let sp = rat_signum(&p);
        let sq = rat_signum(&q);
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return sq;
        }
        // Opposite signs: compare p^2 against n*q^2.
        let p2 = &p * &p;
        let nq2 = Rat::from_integer(Int::from(n)) * &q * &q;
        match p2.cmp(&nq2) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => unreachable!("sqrt(n) is irrational"),
        }
    }

    /// Positive under both real embeddings.
    pub fn is_totally_positive(&self) -> bool {
        self.signum() > 0 && self.galois().signum() > 0
    }

    /// Exact comparison under the canonical embedding.
    pub fn cmp_embed(&self, rhs: &Self) -> Ordering {
        self.require_same_field(rhs);
        match (self - rhs).signum() {
            s if s > 0 => Ordering::Greater,
            0 => Ordering::Equal,
            _ => Ordering::Less,
        }
    }

    /// Structural ordering key used for deterministic, byte-stable output.
    pub fn canonical_cmp(&self, rhs: &Self) -> Ordering {
        self.a.cmp(&rhs.a).then_with(|| self.b.cmp(&rhs.b))
    }
}

fn rat_signum(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Evaluates `p + q*sqrt(n)` avoiding catastrophic cancellation.
fn embed_sqrt_basis(p: &Rat, q: &Rat, n: u64) -> f64 {
    let sqrt_n = fmath::sqrt(n as f64);
    let pf = p.to_f64().unwrap_or(f64::NAN);
    let qf = q.to_f64().unwrap_or(f64::NAN);
    if p.is_zero() || q.is_zero() || p.is_positive() == q.is_positive() {
        return pf + qf * sqrt_n;
    }
    // p and q*sqrt(n) nearly cancel: use N/(p - q*sqrt(n)), whose terms add.
    let norm = p * p - Rat::from_integer(Int::from(n)) * q * q;
    let denom = pf - qf * sqrt_n;
    norm.to_f64().unwrap_or(f64::NAN) / denom
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.require_same_field(rhs);
        FieldElement {
            field: self.field,
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}
forward_binop!(Add, add);

impl Sub<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.require_same_field(rhs);
        FieldElement {
            field: self.field,
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}
forward_binop!(Sub, sub);

impl Mul<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.require_same_field(rhs);
        let cross = &self.a * &rhs.b + &self.b * &rhs.a;
        let bb = &self.b * &rhs.b;
        let (a, b) = match self.field {
            QuadraticField::Rational => (&self.a * &rhs.a, cross),
            QuadraticField::Real { n, theta } => match theta {
                // theta^2 = n
                ThetaKind::Sqrt => (&self.a * &rhs.a + Rat::from_integer(Int::from(n)) * &bb, cross),
                // theta^2 = theta + (n - 1)/4
                ThetaKind::HalfPlusSqrt => {
                    let m = Rat::from_integer(Int::from((n - 1) / 4));
                    (&self.a * &rhs.a + m * &bb, cross + bb)
                }
            },
        };
        FieldElement {
            field: self.field,
            a,
            b,
        }
    }
}
forward_binop!(Mul, mul);

impl Div<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &FieldElement) -> FieldElement {
        let inv = rhs.inverse().expect("division by zero field element");
        self * &inv
    }
}
forward_binop!(Div, div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field,
            a: -self.a.clone(),
            b: -self.b.clone(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -(&self)
    }
}

impl fmt::Display for FieldElement {
    /// Canonical form: `a`, `b*theta`, `a+b*theta` or `a-b*theta` with
    /// reduced rationals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*theta", self.b);
        }
        if self.b.is_positive() {
            write!(f, "{}+{}*theta", self.a, self.b)
        } else {
            write!(f, "{}-{}*theta", self.a, -self.b.clone())
        }
    }
}

/// Parses the canonical forms emitted by `Display`, plus the convenience
/// forms `theta`, `-theta` and `N*theta`.
impl FieldElement {
    pub fn parse(field: QuadraticField, input: &str) -> Result<Self> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty field element".into()));
        }
        let parse_rat = |txt: &str| -> Result<Rat> {
            Rat::from_str(txt).map_err(|_| Error::Parse(alloc::format!("bad rational '{txt}'")))
        };
        if let Some(idx) = s.find("theta") {
            if idx + 5 != s.len() {
                return Err(Error::Parse(alloc::format!("trailing input in '{s}'")));
            }
            if field.is_rational() {
                return Err(Error::Parse("theta is undefined over Q".into()));
            }
            let head = s[..idx].strip_suffix('*').unwrap_or(&s[..idx]);
            // Split `head` into the rational part and the theta coefficient at
            // the last +/- sign that is not a leading sign.
            let bytes = head.as_bytes();
            let mut split = None;
            for k in (1..bytes.len()).rev() {
                if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'/' {
                    split = Some(k);
                    break;
                }
            }
            let (a_str, b_str) = match split {
                Some(k) => (&head[..k], &head[k..]),
                None => ("0", head),
            };
            let b = match b_str {
                "" | "+" => Rat::one(),
                "-" => -Rat::one(),
                t => parse_rat(t)?,
            };
            let a = parse_rat(a_str)?;
            FieldElement::new(field, a, b)
        } else {
            Ok(FieldElement::from_rat(field, parse_rat(&s)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn q2() -> QuadraticField {
        QuadraticField::new(2).unwrap()
    }
    fn q5() -> QuadraticField {
        QuadraticField::new(5).unwrap()
    }
    fn q13() -> QuadraticField {
        QuadraticField::new(13).unwrap()
    }

    #[test]
    fn squarefree_validation() {
        assert!(QuadraticField::new(4).is_err());
        assert!(QuadraticField::new(12).is_err());
        assert!(QuadraticField::new(0).is_err());
        assert!(QuadraticField::new(1).is_err());
        assert!(QuadraticField::new(2).is_ok());
        assert!(QuadraticField::new(30).is_ok());
    }

    #[test]
    fn theta_kind_follows_residue() {
        assert_eq!(q2().theta_kind(), Some(ThetaKind::Sqrt));
        assert_eq!(q5().theta_kind(), Some(ThetaKind::HalfPlusSqrt));
        assert_eq!(q13().theta_kind(), Some(ThetaKind::HalfPlusSqrt));
    }

    #[test]
    fn addition_cancels() {
        // (1 + theta) + (2 - theta) = 3 over Q(sqrt(2))
        let f = q2();
        let x = FieldElement::new(f, rat_int(1), rat_int(1)).unwrap();
        let y = FieldElement::new(f, rat_int(2), rat_int(-1)).unwrap();
        assert_eq!(&x + &y, FieldElement::from_int(f, 3));
    }

    #[test]
    fn theta_squared() {
        // theta^2 = 2 over Q(sqrt(2))
        let t2 = q2().theta().unwrap();
        assert_eq!(&t2 * &t2, FieldElement::from_int(q2(), 2));
        // theta^2 = 1 + theta over Q(sqrt(5)): check by expansion in the
        // sqrt-basis: ((1+sqrt5)/2)^2 = (3+sqrt5)/2 = 1 + theta.
        let t5 = q5().theta().unwrap();
        let expected = FieldElement::new(q5(), rat_int(1), rat_int(1)).unwrap();
        assert_eq!(&t5 * &t5, expected);
        let (p, q) = (&t5 * &t5).to_sqrt_basis();
        assert_eq!(p, rat(3, 2));
        assert_eq!(q, rat(1, 2));
    }

    #[test]
    fn galois_examples() {
        // sigma(1 + sqrt 2) = 1 - sqrt 2
        let x = FieldElement::new(q2(), rat_int(1), rat_int(1)).unwrap();
        assert_eq!(x.galois(), FieldElement::new(q2(), rat_int(1), rat_int(-1)).unwrap());
        // sigma(theta) = 1 - theta over Q(sqrt 5)
        let t = q5().theta().unwrap();
        assert_eq!(t.galois(), FieldElement::new(q5(), rat_int(1), rat_int(-1)).unwrap());
    }

    #[test]
    fn norm_trace_examples() {
        let x = FieldElement::new(q2(), rat_int(1), rat_int(1)).unwrap();
        assert_eq!(x.norm(), rat_int(-1));
        // (3 + sqrt 13)/2 = 1 + theta over Q(sqrt 13)
        let e = FieldElement::new(q13(), rat_int(1), rat_int(1)).unwrap();
        assert_eq!(e.norm(), rat_int(-1));
        assert_eq!(e.trace(), rat_int(3));
    }

    #[test]
    fn fundamental_units_match_known_values() {
        let e2 = q2().fundamental_unit().unwrap();
        assert_eq!(e2, FieldElement::new(q2(), rat_int(1), rat_int(1)).unwrap());
        let e5 = q5().fundamental_unit().unwrap();
        assert_eq!(e5, q5().theta().unwrap());
        let e13 = q13().fundamental_unit().unwrap();
        assert_eq!(e13, FieldElement::new(q13(), rat_int(1), rat_int(1)).unwrap());
        // n = 3: brute-force Pell sweep gives 2 + sqrt(3).
        let f3 = QuadraticField::new(3).unwrap();
        let e3 = f3.fundamental_unit().unwrap();
        assert_eq!(e3, FieldElement::new(f3, rat_int(2), rat_int(1)).unwrap());
    }

    #[test]
    fn fundamental_unit_against_pell_sweep() {
        // Independent oracle: ascending-b sweep over a + b*theta with
        // |N| = 1, scanning a in a window derived from b.
        for n in [2u64, 3, 5, 6, 7, 10, 11, 13, 14, 17, 19, 21, 22, 23, 29] {
            let f = QuadraticField::new(n).unwrap();
            let eps = f.fundamental_unit().unwrap();
            let oracle = pell_sweep(f);
            assert_eq!(eps, oracle, "n = {n}");
        }
    }

    /// Smallest unit > 1 found by sweeping theta-coefficients upward.
    fn pell_sweep(f: QuadraticField) -> FieldElement {
        for b in 1i64..200_000 {
            // For a unit a + b*theta > 1 with norm ±1, a is bounded by the
            // embedding values; scan a small window around -b*theta and
            // +b*|theta'| roots of N(a) = ±1.
            let tb = f.theta_value() * b as f64;
            let center = -((1.0 - tb) / 2.0);
            let lo = (tb.min(center) - 3.0) as i64;
            let hi = (tb.max(center) + 3.0) as i64;
            let mut best: Option<FieldElement> = None;
            for a in lo..=hi {
                let u = FieldElement::new(f, rat_int(a), rat_int(b)).unwrap();
                if u.norm().abs().is_one() && u.embed() > 1.0 + 1e-12 {
                    match &best {
                        Some(cur) if cur.embed() <= u.embed() => {}
                        _ => best = Some(u),
                    }
                }
            }
            if let Some(u) = best {
                return u;
            }
        }
        panic!("no unit found");
    }

    #[test]
    fn totally_positive_generators() {
        // n = 2: N(eps) = -1, generator is eps^2 = 3 + 2*sqrt(2).
        let g = q2().totally_positive_generator().unwrap();
        assert_eq!(g, FieldElement::new(q2(), rat_int(3), rat_int(2)).unwrap());
        assert!(g.is_totally_positive());
        // n = 5: eps^2 = (3+sqrt5)/2 = 1 + theta.
        let g5 = q5().totally_positive_generator().unwrap();
        assert_eq!(g5, FieldElement::new(q5(), rat_int(1), rat_int(1)).unwrap());
        let (p, q) = g5.to_sqrt_basis();
        assert_eq!(p, rat(3, 2));
        assert_eq!(q, rat(1, 2));
        // Both embeddings positive for all n <= 100.
        for n in 2u64..=100 {
            if !is_squarefree(n) {
                continue;
            }
            let f = QuadraticField::new(n).unwrap();
            let g = f.totally_positive_generator().unwrap();
            let (v, w) = g.embed_pair();
            assert!(v > 0.0 && w > 0.0, "n = {n}");
            assert!(g.is_totally_positive(), "n = {n}");
        }
    }

    #[test]
    fn embeddings() {
        let x = FieldElement::new(q2(), rat_int(1), rat_int(1)).unwrap();
        let (v, w) = x.embed_pair();
        assert!((v - 2.414213562373095).abs() < 1e-14);
        assert!((w + 0.41421356237309515).abs() < 1e-14);
        let three = FieldElement::from_int(q2(), 3);
        assert_eq!(three.embed_pair(), (3.0, 3.0));
    }

    #[test]
    fn embedding_is_accurate_under_cancellation() {
        // sigma(eps^20) is tiny; the naive evaluation loses all precision.
        let eps = q2().fundamental_unit().unwrap();
        let big = eps.pow(20).unwrap();
        let (v, w) = big.embed_pair();
        let expected = 2.414213562373095f64.powi(20);
        assert!((v / expected - 1.0).abs() < 1e-12);
        assert!((w.abs() * expected - 1.0).abs() < 1e-10, "w = {w}");
    }

    #[test]
    fn exact_signs() {
        let x = FieldElement::new(q2(), rat_int(-10), rat_int(8)).unwrap(); // -10 + 8 sqrt2 > 0
        assert_eq!(x.signum(), 1);
        let y = FieldElement::new(q2(), rat_int(10), rat_int(-8)).unwrap();
        assert_eq!(y.signum(), -1);
        let z = FieldElement::new(q2(), rat_int(3), rat_int(-2)).unwrap(); // 3 - 2 sqrt2 > 0
        assert_eq!(z.signum(), 1);
        assert_eq!(FieldElement::zero(q2()).signum(), 0);
    }

    #[test]
    fn display_and_parse_roundtrip() {
        let samples = [
            FieldElement::new(q13(), rat(1, 2), rat(-3, 4)).unwrap(),
            FieldElement::new(q13(), rat_int(0), rat_int(1)).unwrap(),
            FieldElement::new(q13(), rat_int(-7), rat_int(0)).unwrap(),
            FieldElement::new(q13(), rat(22, 7), rat(5, 3)).unwrap(),
        ];
        for x in samples {
            let s = alloc::format!("{x}");
            let back = FieldElement::parse(q13(), &s).unwrap();
            assert_eq!(back, x, "roundtrip of '{s}'");
        }
        let t = FieldElement::parse(q13(), "theta").unwrap();
        assert_eq!(t, q13().theta().unwrap());
        let mt = FieldElement::parse(q13(), "-theta").unwrap();
        assert_eq!(mt, -q13().theta().unwrap());
        assert!(FieldElement::parse(QuadraticField::rational(), "1/2").is_ok());
        assert!(FieldElement::parse(QuadraticField::rational(), "theta").is_err());
    }

    #[test]
    fn division() {
        let f = q5();
        let x = FieldElement::new(f, rat(3, 2), rat(-5, 7)).unwrap();
        let y = FieldElement::new(f, rat_int(2), rat_int(3)).unwrap();
        let q = &x / &y;
        assert_eq!(&q * &y, x);
    }
}
