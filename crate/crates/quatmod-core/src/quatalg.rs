//! Quaternions over a real quadratic field (exact) and over `f64`
//! (geometric), for the totally definite algebra with `i^2 = j^2 = -1`,
//! `ij = -ji = k`.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::ToPrimitive;

use crate::quadfield::{FieldElement, QuadraticField};
use crate::{fmath, rat, Error, Rat, Result};

/// Exact quaternion `x0 + x1 i + x2 j + x3 k` with field-element coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuaternionExact {
    x: [FieldElement; 4],
}

impl QuaternionExact {
    /// Builds a quaternion from four coordinates over one field.
    pub fn new(x0: FieldElement, x1: FieldElement, x2: FieldElement, x3: FieldElement) -> Self {
        let f = x0.field();
        assert!(
            x1.field() == f && x2.field() == f && x3.field() == f,
            "field mismatch"
        );
        QuaternionExact { x: [x0, x1, x2, x3] }
    }

    pub fn from_coords(field: QuadraticField, coords: [FieldElement; 4]) -> Result<Self> {
        if coords.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(QuaternionExact { x: coords })
    }

    /// Quaternion with rational coordinates `(x0, x1, x2, x3)`.
    pub fn from_rats(field: QuadraticField, coords: [Rat; 4]) -> Self {
        let [a, b, c, d] = coords;
        QuaternionExact {
            x: [
                FieldElement::from_rat(field, a),
                FieldElement::from_rat(field, b),
                FieldElement::from_rat(field, c),
                FieldElement::from_rat(field, d),
            ],
        }
    }

    pub fn from_ints(field: QuadraticField, coords: [i64; 4]) -> Self {
        QuaternionExact {
            x: [
                FieldElement::from_int(field, coords[0]),
                FieldElement::from_int(field, coords[1]),
                FieldElement::from_int(field, coords[2]),
                FieldElement::from_int(field, coords[3]),
            ],
        }
    }

    pub fn zero(field: QuadraticField) -> Self {
        Self::from_ints(field, [0, 0, 0, 0])
    }

    pub fn one(field: QuadraticField) -> Self {
        Self::from_ints(field, [1, 0, 0, 0])
    }

    pub fn i(field: QuadraticField) -> Self {
        Self::from_ints(field, [0, 1, 0, 0])
    }

    pub fn j(field: QuadraticField) -> Self {
        Self::from_ints(field, [0, 0, 1, 0])
    }

    pub fn k(field: QuadraticField) -> Self {
        Self::from_ints(field, [0, 0, 0, 1])
    }

    /// The Hurwitz generator `xi = (1 + i + j + k)/2`.
    pub fn xi(field: QuadraticField) -> Self {
        let h = rat(1, 2);
        Self::from_rats(field, [h.clone(), h.clone(), h.clone(), h])
    }

    /// Scalar quaternion from a field element.
    pub fn scalar(v: FieldElement) -> Self {
        let f = v.field();
        QuaternionExact {
            x: [
                v,
                FieldElement::zero(f),
                FieldElement::zero(f),
                FieldElement::zero(f),
            ],
        }
    }

    pub fn field(&self) -> QuadraticField {
        self.x[0].field()
    }

    pub fn coords(&self) -> &[FieldElement; 4] {
        &self.x
    }

    pub fn coord(&self, idx: usize) -> &FieldElement {
        &self.x[idx]
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.x[0].is_one() && self.x[1].is_zero() && self.x[2].is_zero() && self.x[3].is_zero()
    }

    /// Standard involution `x0 - x1 i - x2 j - x3 k`.
    pub fn conj(&self) -> Self {
        QuaternionExact {
            x: [self.x[0].clone(), -&self.x[1], -&self.x[2], -&self.x[3]],
        }
    }

    /// Reduced trace `q + conj(q)`, a scalar of the field.
    pub fn trd(&self) -> FieldElement {
        &self.x[0] + &self.x[0]
    }

    /// Scalar part `trd(q)/2`.
    pub fn re(&self) -> FieldElement {
        self.x[0].clone()
    }

    /// Reduced norm `q * conj(q)`, a scalar of the field.
    pub fn nrd(&self) -> FieldElement {
        let mut acc = &self.x[0] * &self.x[0];
        for c in &self.x[1..] {
            acc = acc + c * c;
        }
        acc
    }

    /// True exactly when the scalar part vanishes.
    pub fn is_pure(&self) -> bool {
        self.x[0].is_zero()
    }

    /// Pure part `(q - conj(q))/2`.
    pub fn pure_part(&self) -> Self {
        QuaternionExact {
            x: [
                FieldElement::zero(self.field()),
                self.x[1].clone(),
                self.x[2].clone(),
                self.x[3].clone(),
            ],
        }
    }

    /// Inverse `conj(q)/nrd(q)`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroQuaternion);
        }
        let n = self.nrd().inverse().expect("nonzero norm");
        Ok(self.conj().mul_scalar(&n))
    }

    /// Left/right multiplication by a central scalar.
    pub fn mul_scalar(&self, s: &FieldElement) -> Self {
        QuaternionExact {
            x: [
                &self.x[0] * s,
                &self.x[1] * s,
                &self.x[2] * s,
                &self.x[3] * s,
            ],
        }
    }

    /// Coordinate-wise Galois conjugate.
    pub fn galois(&self) -> Self {
        QuaternionExact {
            x: [
                self.x[0].galois(),
                self.x[1].galois(),
                self.x[2].galois(),
                self.x[3].galois(),
            ],
        }
    }

    /// Image under the canonical embedding of the field.
    pub fn to_float(&self) -> QuaternionFloat {
        QuaternionFloat {
            x0: self.x[0].embed(),
            x1: self.x[1].embed(),
            x2: self.x[2].embed(),
            x3: self.x[3].embed(),
        }
    }

    /// Galois-twist embedding `q -> (q, sigma(q))` into a pair of Hamilton
    /// quaternions.
    pub fn galois_twist(&self) -> QuaternionPair {
        QuaternionPair {
            first: self.to_float(),
            second: self.galois().to_float(),
        }
    }

    /// Flat list of the rational coordinates in the theta-basis:
    /// `[a0, b0, a1, b1, ...]` (length 8) or `[a0..a3]` over `Q`.
    pub fn rational_coords(&self) -> Vec<Rat> {
        let mut out = Vec::with_capacity(8);
        let quadratic = !self.field().is_rational();
        for c in &self.x {
            out.push(c.coeff_a().clone());
            if quadratic {
                out.push(c.coeff_b().clone());
            }
        }
        out
    }

    /// Inverse of [`rational_coords`](Self::rational_coords).
    pub fn from_rational_coords(field: QuadraticField, coords: &[Rat]) -> Result<Self> {
        let dim = if field.is_rational() { 4 } else { 8 };
        if coords.len() != dim {
            return Err(Error::Parse("wrong coordinate count".into()));
        }
        let mut comps = Vec::with_capacity(4);
        if field.is_rational() {
            for a in coords {
                comps.push(FieldElement::from_rat(field, a.clone()));
            }
        } else {
            for pair in coords.chunks(2) {
                comps.push(FieldElement::new(field, pair[0].clone(), pair[1].clone())?);
            }
        }
        let [x0, x1, x2, x3]: [FieldElement; 4] = comps.try_into().expect("four components");
        Ok(QuaternionExact { x: [x0, x1, x2, x3] })
    }

    /// Deterministic ordering on coordinates, used for canonical sorting.
    pub fn canonical_cmp(&self, rhs: &Self) -> Ordering {
        for (a, b) in self.x.iter().zip(rhs.x.iter()) {
            let ord = a.canonical_cmp(b);
            if ord != Ordering::Equal {
                return ord;
            }
        }
        Ordering::Equal
    }
}

impl Add<&QuaternionExact> for &QuaternionExact {
    type Output = QuaternionExact;
    fn add(self, rhs: &QuaternionExact) -> QuaternionExact {
        QuaternionExact {
            x: [
                &self.x[0] + &rhs.x[0],
                &self.x[1] + &rhs.x[1],
                &self.x[2] + &rhs.x[2],
                &self.x[3] + &rhs.x[3],
            ],
        }
    }
}

impl Sub<&QuaternionExact> for &QuaternionExact {
    type Output = QuaternionExact;
    fn sub(self, rhs: &QuaternionExact) -> QuaternionExact {
        QuaternionExact {
            x: [
                &self.x[0] - &rhs.x[0],
                &self.x[1] - &rhs.x[1],
                &self.x[2] - &rhs.x[2],
                &self.x[3] - &rhs.x[3],
            ],
        }
    }
}

impl Mul<&QuaternionExact> for &QuaternionExact {
    type Output = QuaternionExact;
    /// Hamilton product for the `(-1, -1)` multiplication table.
    fn mul(self, rhs: &QuaternionExact) -> QuaternionExact {
        let (p, q) = (&self.x, &rhs.x);
        let x0 = &(&p[0] * &q[0]) - &(&p[1] * &q[1]) - (&p[2] * &q[2]) - (&p[3] * &q[3]);
        let x1 = &(&p[0] * &q[1]) + &(&p[1] * &q[0]) + (&p[2] * &q[3]) - (&p[3] * &q[2]);
        let x2 = &(&p[0] * &q[2]) - &(&p[1] * &q[3]) + (&p[2] * &q[0]) + (&p[3] * &q[1]);
        let x3 = &(&p[0] * &q[3]) + &(&p[1] * &q[2]) - (&p[2] * &q[1]) + (&p[3] * &q[0]);
        QuaternionExact { x: [x0, x1, x2, x3] }
    }
}

macro_rules! forward_quat_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for QuaternionExact {
            type Output = QuaternionExact;
            fn $method(self, rhs: QuaternionExact) -> QuaternionExact {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuaternionExact> for QuaternionExact {
            type Output = QuaternionExact;
            fn $method(self, rhs: &QuaternionExact) -> QuaternionExact {
                (&self).$method(rhs)
            }
        }
        impl $trait<QuaternionExact> for &QuaternionExact {
            type Output = QuaternionExact;
            fn $method(self, rhs: QuaternionExact) -> QuaternionExact {
                self.$method(&rhs)
            }
        }
    };
}
forward_quat_binop!(Add, add);
forward_quat_binop!(Sub, sub);
forward_quat_binop!(Mul, mul);

impl Neg for &QuaternionExact {
    type Output = QuaternionExact;
    fn neg(self) -> QuaternionExact {
        QuaternionExact {
            x: [-&self.x[0], -&self.x[1], -&self.x[2], -&self.x[3]],
        }
    }
}

impl Neg for QuaternionExact {
    type Output = QuaternionExact;
    fn neg(self) -> QuaternionExact {
        -(&self)
    }
}

impl fmt::Display for QuaternionExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}, {}, {}]",
            self.x[0], self.x[1], self.x[2], self.x[3]
        )
    }
}

/// Geometric quaternion with `f64` coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuaternionFloat {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl QuaternionFloat {
    pub const ZERO: Self = QuaternionFloat {
        x0: 0.0,
        x1: 0.0,
        x2: 0.0,
        x3: 0.0,
    };
    pub const ONE: Self = QuaternionFloat {
        x0: 1.0,
        x1: 0.0,
        x2: 0.0,
        x3: 0.0,
    };

    pub fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        QuaternionFloat { x0, x1, x2, x3 }
    }

    pub fn scalar(v: f64) -> Self {
        QuaternionFloat { x0: v, ..Self::ZERO }
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.x0, self.x1, self.x2, self.x3]
    }

    pub fn conj(&self) -> Self {
        QuaternionFloat {
            x0: self.x0,
            x1: -self.x1,
            x2: -self.x2,
            x3: -self.x3,
        }
    }

    /// Squared Euclidean norm, equal to the reduced norm.
    pub fn nrd(&self) -> f64 {
        self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
    }

    pub fn norm(&self) -> f64 {
        fmath::sqrt(self.nrd())
    }

    pub fn re(&self) -> f64 {
        self.x0
    }

    pub fn is_finite(&self) -> bool {
        self.coords().iter().all(|c| c.is_finite())
    }

    /// `None` when the quaternion is exactly zero.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.nrd();
        if n == 0.0 {
            return None;
        }
        Some(self.conj().scale(1.0 / n))
    }

    pub fn scale(&self, s: f64) -> Self {
        QuaternionFloat {
            x0: self.x0 * s,
            x1: self.x1 * s,
            x2: self.x2 * s,
            x3: self.x3 * s,
        }
    }

    /// Largest coordinate magnitude of the difference.
    pub fn max_coord_dist(&self, rhs: &Self) -> f64 {
        let d = *self - *rhs;
        d.coords().iter().fold(0.0f64, |m, c| m.max(fmath::abs(*c)))
    }
}

impl Add for QuaternionFloat {
    type Output = QuaternionFloat;
    fn add(self, rhs: Self) -> Self {
        QuaternionFloat {
            x0: self.x0 + rhs.x0,
            x1: self.x1 + rhs.x1,
            x2: self.x2 + rhs.x2,
            x3: self.x3 + rhs.x3,
        }
    }
}

impl Sub for QuaternionFloat {
    type Output = QuaternionFloat;
    fn sub(self, rhs: Self) -> Self {
        QuaternionFloat {
            x0: self.x0 - rhs.x0,
            x1: self.x1 - rhs.x1,
            x2: self.x2 - rhs.x2,
            x3: self.x3 - rhs.x3,
        }
    }
}

impl Mul for QuaternionFloat {
    type Output = QuaternionFloat;
    fn mul(self, q: Self) -> Self {
        let p = self;
        QuaternionFloat {
            x0: p.x0 * q.x0 - p.x1 * q.x1 - p.x2 * q.x2 - p.x3 * q.x3,
            x1: p.x0 * q.x1 + p.x1 * q.x0 + p.x2 * q.x3 - p.x3 * q.x2,
            x2: p.x0 * q.x2 - p.x1 * q.x3 + p.x2 * q.x0 + p.x3 * q.x1,
            x3: p.x0 * q.x3 + p.x1 * q.x2 - p.x2 * q.x1 + p.x3 * q.x0,
        }
    }
}

impl Neg for QuaternionFloat {
    type Output = QuaternionFloat;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

/// Point of the compactification `H + {infinity}`; infinity is an explicit
/// variant so Möbius code branches on it deliberately.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtQuaternion {
    Finite(QuaternionFloat),
    Infinity,
}

impl ExtQuaternion {
    pub fn finite(q: QuaternionFloat) -> Self {
        ExtQuaternion::Finite(q)
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ExtQuaternion::Infinity)
    }

    pub fn as_finite(&self) -> Option<&QuaternionFloat> {
        match self {
            ExtQuaternion::Finite(q) => Some(q),
            ExtQuaternion::Infinity => None,
        }
    }
}

impl From<QuaternionFloat> for ExtQuaternion {
    fn from(q: QuaternionFloat) -> Self {
        ExtQuaternion::Finite(q)
    }
}

/// Pair of archimedean images `(q, sigma(q))` of an exact quaternion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuaternionPair {
    pub first: QuaternionFloat,
    pub second: QuaternionFloat,
}

/// Rounds a rational to the nearest `f64` (convenience for tests and CLI).
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
