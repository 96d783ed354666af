//! 2x2 quaternionic matrices: Dieudonné determinant, exact inverses with
//! entries staying in an order, the Bisi-Gentili conditions, Iwasawa
//! decomposition, Möbius action on the compactified quaternions and the
//! Poincaré extension to hyperbolic 5-space.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use num_traits::{One, Zero};

use crate::linalg;
use crate::orders::{NamedOrder, Order};
use crate::quadfield::{FieldElement, QuadraticField};
use crate::quatalg::{ExtQuaternion, QuaternionExact, QuaternionFloat};
use crate::{fmath, rat, Error, Rat, Result};

/// Exact 2x2 quaternionic matrix `(a b; c d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuatMat2Exact {
    pub a: QuaternionExact,
    pub b: QuaternionExact,
    pub c: QuaternionExact,
    pub d: QuaternionExact,
}

/// Floating 2x2 quaternionic matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuatMat2Float {
    pub a: QuaternionFloat,
    pub b: QuaternionFloat,
    pub c: QuaternionFloat,
    pub d: QuaternionFloat,
}

impl QuatMat2Exact {
    pub fn new(
        a: QuaternionExact,
        b: QuaternionExact,
        c: QuaternionExact,
        d: QuaternionExact,
    ) -> Self {
        let f = a.field();
        assert!(
            b.field() == f && c.field() == f && d.field() == f,
            "field mismatch"
        );
        QuatMat2Exact { a, b, c, d }
    }

    pub fn identity(field: QuadraticField) -> Self {
        QuatMat2Exact {
            a: QuaternionExact::one(field),
            b: QuaternionExact::zero(field),
            c: QuaternionExact::zero(field),
            d: QuaternionExact::one(field),
        }
    }

    /// Translation matrix `(1 b; 0 1)`.
    pub fn translation(b: QuaternionExact) -> Self {
        let f = b.field();
        QuatMat2Exact {
            a: QuaternionExact::one(f),
            b,
            c: QuaternionExact::zero(f),
            d: QuaternionExact::one(f),
        }
    }

    /// The inversion `(0 1; 1 0)`.
    pub fn inversion(field: QuadraticField) -> Self {
        QuatMat2Exact {
            a: QuaternionExact::zero(field),
            b: QuaternionExact::one(field),
            c: QuaternionExact::one(field),
            d: QuaternionExact::zero(field),
        }
    }

    /// Diagonal matrix `(u 0; 0 v)`.
    pub fn diagonal(u: QuaternionExact, v: QuaternionExact) -> Self {
        let f = u.field();
        QuatMat2Exact {
            a: u,
            b: QuaternionExact::zero(f),
            c: QuaternionExact::zero(f),
            d: v,
        }
    }

    pub fn field(&self) -> QuadraticField {
        self.a.field()
    }

    pub fn entries(&self) -> [&QuaternionExact; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// Square of the Dieudonné determinant, an exact field element:
    /// `|a|^2 |d|^2 + |c|^2 |b|^2 - trd(c conj(a) b conj(d))`.
    pub fn det_sq(&self) -> FieldElement {
        let t1 = &self.a.nrd() * &self.d.nrd();
        let t2 = &self.c.nrd() * &self.b.nrd();
        let cross = &(&self.c * &self.a.conj()) * &(&self.b * &self.d.conj());
        &(&t1 + &t2) - &cross.trd()
    }

    /// Floating Dieudonné determinant (nonnegative square root of `det_sq`
    /// under the canonical embedding).
    pub fn det(&self) -> f64 {
        fmath::sqrt(self.det_sq().embed().max(0.0))
    }

    /// Entry-wise Galois conjugate.
    pub fn galois(&self) -> Self {
        QuatMat2Exact {
            a: self.a.galois(),
            b: self.b.galois(),
            c: self.c.galois(),
            d: self.d.galois(),
        }
    }

    /// Image under the canonical embedding.
    pub fn to_float(&self) -> QuatMat2Float {
        QuatMat2Float {
            a: self.a.to_float(),
            b: self.b.to_float(),
            c: self.c.to_float(),
            d: self.d.to_float(),
        }
    }

    /// The two archimedean images `(gamma, sigma(gamma))`.
    pub fn galois_twist(&self) -> (QuatMat2Float, QuatMat2Float) {
        (self.to_float(), self.galois().to_float())
    }

    /// Whether every entry lies in the order.
    pub fn entries_in(&self, order: &Order) -> Result<bool> {
        for e in self.entries() {
            if !order.contains(e)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exact inverse for matrices of Dieudonné determinant 1, dispatching on
    /// the zero pattern of the entries. All formulas are polynomial in the
    /// entries and their conjugates, so entries in an order stay in it.
    pub fn sl2_inverse(&self) -> Result<Self> {
        if !self.det_sq().is_one() {
            return Err(Error::DeterminantNotOne);
        }
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (na, nb, nc, nd) = (
            QuaternionExact::scalar(a.nrd()),
            QuaternionExact::scalar(b.nrd()),
            QuaternionExact::scalar(c.nrd()),
            QuaternionExact::scalar(d.nrd()),
        );
        let inv = if a.is_zero() {
            // (0 b; c d): inverse (-conj(c) d conj(b), |b|^2 conj(c); |c|^2 conj(b), 0)
            QuatMat2Exact {
                a: -&(&(&c.conj() * d) * &b.conj()),
                b: &nb * &c.conj(),
                c: &nc * &b.conj(),
                d: QuaternionExact::zero(self.field()),
            }
        } else if d.is_zero() {
            QuatMat2Exact {
                a: QuaternionExact::zero(self.field()),
                b: &nb * &c.conj(),
                c: &nc * &b.conj(),
                d: -&(&(&b.conj() * a) * &c.conj()),
            }
        } else if b.is_zero() {
            QuatMat2Exact {
                a: &nd * &a.conj(),
                b: QuaternionExact::zero(self.field()),
                c: -&(&(&d.conj() * c) * &a.conj()),
                d: &na * &d.conj(),
            }
        } else if c.is_zero() {
            QuatMat2Exact {
                a: &nd * &a.conj(),
                b: -&(&(&a.conj() * b) * &d.conj()),
                c: QuaternionExact::zero(self.field()),
                d: &na * &d.conj(),
            }
        } else {
            // Four nonzero entries. Conjugating the Schur-type entries
            // (a - b d^{-1} c)^{-1} etc. reverses the products, so e.g. the
            // top-left entry is |d|^2 conj(a) - conj(c) d conj(b); this
            // specializes to every zero-pattern case above.
            QuatMat2Exact {
                a: &(&nd * &a.conj()) - &(&(&c.conj() * d) * &b.conj()),
                b: &(&nb * &c.conj()) - &(&(&a.conj() * b) * &d.conj()),
                c: &(&nc * &b.conj()) - &(&(&d.conj() * c) * &a.conj()),
                d: &(&na * &d.conj()) - &(&(&b.conj() * a) * &c.conj()),
            }
        };
        debug_assert!((&inv * self).is_identity() && (self * &inv).is_identity());
        Ok(inv)
    }

    /// Exact inverse by an 8[K:Q]-dimensional rational linear solve, with no
    /// determinant restriction. Kept as an independent cross-check for
    /// [`sl2_inverse`](Self::sl2_inverse).
    pub fn inverse_by_solve(&self) -> Result<Self> {
        let field = self.field();
        let deg = 4 * field.degree();
        let dim = 2 * deg;
        // Left multiplication by the matrix as a Q-linear map on pairs.
        // Column blocks index the input pair (x, y); the map is
        // (x, y) -> (a x + b y, c x + d y).
        let mut columns: Vec<Vec<Rat>> = Vec::with_capacity(dim);
        for comp in 0..2 {
            for t in 0..deg {
                let mut unit_coords = vec![Rat::zero(); deg];
                unit_coords[t] = Rat::one();
                let u = QuaternionExact::from_rational_coords(field, &unit_coords)?;
                let (top, bottom) = if comp == 0 {
                    (&self.a * &u, &self.c * &u)
                } else {
                    (&self.b * &u, &self.d * &u)
                };
                let mut col = top.rational_coords();
                col.extend(bottom.rational_coords());
                columns.push(col);
            }
        }
        // Solve M x = e for both identity columns; M is column-major here,
        // so transpose into solve_row_system's row convention.
        let m_rows: Vec<Vec<Rat>> = columns;
        let solve_for = |target: &QuaternionExact, slot: usize| -> Result<(QuaternionExact, QuaternionExact)> {
            let mut rhs = vec![Rat::zero(); dim];
            let coords = target.rational_coords();
            for (k, v) in coords.iter().enumerate() {
                rhs[slot * deg + k] = v.clone();
            }
            let x = linalg::solve_row_system(&m_rows, &rhs)?;
            let first = QuaternionExact::from_rational_coords(field, &x[..deg])?;
            let second = QuaternionExact::from_rational_coords(field, &x[deg..])?;
            Ok((first, second))
        };
        let one = QuaternionExact::one(field);
        let (xa, xc) = solve_for(&one, 0)?;
        let (xb, xd) = solve_for(&one, 1)?;
        let inv = QuatMat2Exact {
            a: xa,
            b: xb,
            c: xc,
            d: xd,
        };
        Ok(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_one()
    }

    /// Canonical representative of the projective class `{+-gamma}`: the
    /// first nonzero rational coordinate (scan order `a, b, c, d`, each
    /// coordinate in theta-basis order) is made positive.
    pub fn projective_normalize(&self) -> Self {
        for e in self.entries() {
            for c in e.rational_coords() {
                if c.is_zero() {
                    continue;
                }
                return if c < Rat::zero() { -self } else { self.clone() };
            }
        }
        self.clone()
    }

    pub fn projective_eq(&self, rhs: &Self) -> bool {
        self.projective_normalize() == rhs.projective_normalize()
    }
}

impl Mul<&QuatMat2Exact> for &QuatMat2Exact {
    type Output = QuatMat2Exact;
    fn mul(self, rhs: &QuatMat2Exact) -> QuatMat2Exact {
        QuatMat2Exact {
            a: &(&self.a * &rhs.a) + &(&self.b * &rhs.c),
            b: &(&self.a * &rhs.b) + &(&self.b * &rhs.d),
            c: &(&self.c * &rhs.a) + &(&self.d * &rhs.c),
            d: &(&self.c * &rhs.b) + &(&self.d * &rhs.d),
        }
    }
}

impl Mul for QuatMat2Exact {
    type Output = QuatMat2Exact;
    fn mul(self, rhs: Self) -> Self {
        (&self) * (&rhs)
    }
}

impl core::ops::Neg for &QuatMat2Exact {
    type Output = QuatMat2Exact;
    fn neg(self) -> QuatMat2Exact {
        QuatMat2Exact {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }
}

impl fmt::Display for QuatMat2Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl QuatMat2Float {
    pub fn identity() -> Self {
        QuatMat2Float {
            a: QuaternionFloat::ONE,
            b: QuaternionFloat::ZERO,
            c: QuaternionFloat::ZERO,
            d: QuaternionFloat::ONE,
        }
    }

    pub fn det_sq(&self) -> f64 {
        let cross = (self.c * self.a.conj()) * (self.b * self.d.conj());
        self.a.nrd() * self.d.nrd() + self.c.nrd() * self.b.nrd() - 2.0 * cross.re()
    }

    pub fn det(&self) -> f64 {
        fmath::sqrt(self.det_sq().max(0.0))
    }

    pub fn max_entry_dist(&self, rhs: &Self) -> f64 {
        self.a
            .max_coord_dist(&rhs.a)
            .max(self.b.max_coord_dist(&rhs.b))
            .max(self.c.max_coord_dist(&rhs.c))
            .max(self.d.max_coord_dist(&rhs.d))
    }

    pub fn scale(&self, s: f64) -> Self {
        QuatMat2Float {
            a: self.a.scale(s),
            b: self.b.scale(s),
            c: self.c.scale(s),
            d: self.d.scale(s),
        }
    }
}

impl Mul for QuatMat2Float {
    type Output = QuatMat2Float;
    fn mul(self, rhs: Self) -> Self {
        QuatMat2Float {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }
}

/// The three equivalent Bisi-Gentili characterizations of matrices whose
/// Möbius maps preserve the quaternionic half space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BgVariant {
    /// `conj(gamma)^T J gamma = J` with `J = (0 1; 1 0)`.
    One,
    /// `Re(a conj(c)) = 0`, `Re(b conj(d)) = 0`, `conj(b) c + conj(d) a = 1`.
    Two,
    /// `Re(c conj(d)) = 0`, `Re(a conj(b)) = 0`, `a conj(d) + b conj(c) = 1`.
    Three,
}

impl BgVariant {
    pub const ALL: [BgVariant; 3] = [BgVariant::One, BgVariant::Two, BgVariant::Three];
}

/// Exact evaluation of one BG condition.
pub fn bg_check_exact(m: &QuatMat2Exact, variant: BgVariant) -> bool {
    let (a, b, c, d) = (&m.a, &m.b, &m.c, &m.d);
    let one = QuaternionExact::one(m.field());
    match variant {
        BgVariant::One => {
            let m11 = &(&c.conj() * a) + &(&a.conj() * c);
            let m12 = &(&c.conj() * b) + &(&a.conj() * d);
            let m21 = &(&d.conj() * a) + &(&b.conj() * c);
            let m22 = &(&d.conj() * b) + &(&b.conj() * d);
            m11.is_zero() && m12 == one && m21 == one && m22.is_zero()
        }
        BgVariant::Two => {
            (a * &c.conj()).trd().is_zero()
                && (b * &d.conj()).trd().is_zero()
                && (&(&b.conj() * c) + &(&d.conj() * a)) == one
        }
        BgVariant::Three => {
            (c * &d.conj()).trd().is_zero()
                && (a * &b.conj()).trd().is_zero()
                && (&(a * &d.conj()) + &(b * &c.conj())) == one
        }
    }
}

/// Largest residual of one BG condition on a floating matrix.
pub fn bg_residual(m: &QuatMat2Float, variant: BgVariant) -> f64 {
    let (a, b, c, d) = (m.a, m.b, m.c, m.d);
    let dist_to = |q: QuaternionFloat, target: QuaternionFloat| q.max_coord_dist(&target);
    match variant {
        BgVariant::One => {
            let m11 = c.conj() * a + a.conj() * c;
            let m12 = c.conj() * b + a.conj() * d;
            let m21 = d.conj() * a + b.conj() * c;
            let m22 = d.conj() * b + b.conj() * d;
            dist_to(m11, QuaternionFloat::ZERO)
                .max(dist_to(m12, QuaternionFloat::ONE))
                .max(dist_to(m21, QuaternionFloat::ONE))
                .max(dist_to(m22, QuaternionFloat::ZERO))
        }
        BgVariant::Two => {
            let r1 = fmath::abs((a * c.conj()).re());
            let r2 = fmath::abs((b * d.conj()).re());
            let r3 = dist_to(b.conj() * c + d.conj() * a, QuaternionFloat::ONE);
            r1.max(r2).max(r3)
        }
        BgVariant::Three => {
            let r1 = fmath::abs((c * d.conj()).re());
            let r2 = fmath::abs((a * b.conj()).re());
            let r3 = dist_to(a * d.conj() + b * c.conj(), QuaternionFloat::ONE);
            r1.max(r2).max(r3)
        }
    }
}

/// Tolerance-based BG check on a floating matrix.
pub fn bg_check_float(m: &QuatMat2Float, variant: BgVariant, tol: f64) -> bool {
    bg_residual(m, variant) <= tol
}

/// Factors of the Iwasawa decomposition
/// `gamma = diag(lambda, 1/lambda) * (1 omega; 0 1) * (alpha beta; beta alpha)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IwasawaFactors {
    pub lambda: f64,
    pub omega: QuaternionFloat,
    pub alpha: QuaternionFloat,
    pub beta: QuaternionFloat,
}

impl IwasawaFactors {
    pub fn reassemble(&self) -> QuatMat2Float {
        let homothety = QuatMat2Float {
            a: QuaternionFloat::scalar(self.lambda),
            b: QuaternionFloat::ZERO,
            c: QuaternionFloat::ZERO,
            d: QuaternionFloat::scalar(1.0 / self.lambda),
        };
        let parabolic = QuatMat2Float {
            a: QuaternionFloat::ONE,
            b: self.omega,
            c: QuaternionFloat::ZERO,
            d: QuaternionFloat::ONE,
        };
        let rotation = QuatMat2Float {
            a: self.alpha,
            b: self.beta,
            c: self.beta,
            d: self.alpha,
        };
        homothety * parabolic * rotation
    }

    /// Residual of `|alpha|^2 + |beta|^2 = 1`.
    pub fn norm_residual(&self) -> f64 {
        fmath::abs(self.alpha.nrd() + self.beta.nrd() - 1.0)
    }

    /// Residual of `Re(alpha conj(beta)) = 0`.
    pub fn orthogonality_residual(&self) -> f64 {
        fmath::abs((self.alpha * self.beta.conj()).re())
    }

    /// Residual of `Re(omega) = 0`.
    pub fn purity_residual(&self) -> f64 {
        fmath::abs(self.omega.re())
    }
}

/// Tolerances for the Iwasawa decomposition.
#[derive(Debug, Clone, Copy)]
pub struct IwasawaConfig {
    /// Maximum BG residual accepted on input.
    pub bg_tol: f64,
    /// Below this, an off-diagonal norm counts as zero for the recovery.
    pub degenerate_tol: f64,
}

impl Default for IwasawaConfig {
    fn default() -> Self {
        IwasawaConfig {
            bg_tol: 1e-9,
            degenerate_tol: 1e-12,
        }
    }
}

/// Iwasawa decomposition of a BG matrix: `lambda = (|c|^2 + |d|^2)^(-1/2)`,
/// `alpha = lambda d`, `beta = lambda c`, `omega` recovered from the first
/// row (from `a` when `beta != 0`, else from `b`).
pub fn iwasawa_decompose(m: &QuatMat2Float, cfg: &IwasawaConfig) -> Result<IwasawaFactors> {
    let worst = BgVariant::ALL
        .iter()
        .map(|v| bg_residual(m, *v))
        .fold(0.0, f64::max);
    if worst > cfg.bg_tol {
        return Err(Error::BgViolation);
    }
    let denom = m.c.nrd() + m.d.nrd();
    if denom <= cfg.degenerate_tol * cfg.degenerate_tol {
        return Err(Error::IllConditioned);
    }
    let lambda = 1.0 / fmath::sqrt(denom);
    let alpha = m.d.scale(lambda);
    let beta = m.c.scale(lambda);
    let omega = if beta.norm() > cfg.degenerate_tol {
        let beta_inv = beta.inverse().expect("nonzero beta");
        (m.a.scale(1.0 / lambda) - alpha) * beta_inv
    } else if alpha.norm() > cfg.degenerate_tol {
        let alpha_inv = alpha.inverse().expect("nonzero alpha");
        (m.b.scale(1.0 / lambda) - beta) * alpha_inv
    } else {
        return Err(Error::IllConditioned);
    };
    Ok(IwasawaFactors {
        lambda,
        omega,
        alpha,
        beta,
    })
}

/// Möbius action `q -> (a q + b)(c q + d)^{-1}` with explicit branches at
/// infinity and at the pole.
pub fn moebius_apply(m: &QuatMat2Float, q: ExtQuaternion) -> ExtQuaternion {
    match q {
        ExtQuaternion::Infinity => {
            if m.c.nrd() == 0.0 {
                ExtQuaternion::Infinity
            } else {
                ExtQuaternion::Finite(m.a * m.c.inverse().expect("nonzero c"))
            }
        }
        ExtQuaternion::Finite(q) => {
            let denom = m.c * q + m.d;
            match denom.inverse() {
                None => ExtQuaternion::Infinity,
                Some(inv) => ExtQuaternion::Finite((m.a * q + m.b) * inv),
            }
        }
    }
}

/// Point of the compactification with exact coordinates.
#[derive(Debug, Clone, PartialEq)]
pub enum ExtQuaternionExact {
    Finite(QuaternionExact),
    Infinity,
}

/// Exact Möbius action, used where boundary values must be certified.
pub fn moebius_apply_exact(m: &QuatMat2Exact, q: &ExtQuaternionExact) -> ExtQuaternionExact {
    match q {
        ExtQuaternionExact::Infinity => {
            if m.c.is_zero() {
                ExtQuaternionExact::Infinity
            } else {
                ExtQuaternionExact::Finite(&m.a * &m.c.inverse().expect("nonzero c"))
            }
        }
        ExtQuaternionExact::Finite(q) => {
            let denom = &(&m.c * q) + &m.d;
            if denom.is_zero() {
                ExtQuaternionExact::Infinity
            } else {
                ExtQuaternionExact::Finite(&(&(&m.a * q) + &m.b) * &denom.inverse().expect("nonzero"))
            }
        }
    }
}

/// One factor of the elementary decomposition of a Möbius map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ElementaryMap {
    /// `q -> q + b`.
    Translate(QuaternionFloat),
    /// `q -> c q` with `c != 0`.
    LeftMultiply(QuaternionFloat),
    /// `q -> q^{-1}`.
    Invert,
}

impl ElementaryMap {
    pub fn apply(&self, q: ExtQuaternion) -> ExtQuaternion {
        match (self, q) {
            (ElementaryMap::Translate(_), ExtQuaternion::Infinity) => ExtQuaternion::Infinity,
            (ElementaryMap::Translate(b), ExtQuaternion::Finite(q)) => {
                ExtQuaternion::Finite(q + *b)
            }
            (ElementaryMap::LeftMultiply(_), ExtQuaternion::Infinity) => ExtQuaternion::Infinity,
            (ElementaryMap::LeftMultiply(c), ExtQuaternion::Finite(q)) => {
                ExtQuaternion::Finite(*c * q)
            }
            (ElementaryMap::Invert, ExtQuaternion::Infinity) => {
                ExtQuaternion::Finite(QuaternionFloat::ZERO)
            }
            (ElementaryMap::Invert, ExtQuaternion::Finite(q)) => match q.inverse() {
                None => ExtQuaternion::Infinity,
                Some(inv) => ExtQuaternion::Finite(inv),
            },
        }
    }
}

/// Applies a chain of elementary maps in order (first factor first).
pub fn apply_chain(chain: &[ElementaryMap], q: ExtQuaternion) -> ExtQuaternion {
    chain.iter().fold(q, |acc, f| f.apply(acc))
}

/// Decomposes a Möbius map into homotheties, translations and inversions.
///
/// For `c != 0` this is the five-factor chain
/// `T_{c^{-1} d}, h_c, I, h_{b - a c^{-1} d}, T_{a c^{-1}}`.
/// The affine case `c = 0` has no such chain; the right division by `d` is
/// expressed as `I, h_d, I`, giving `I, h_d, I, h_a, T_{b d^{-1}}`.
pub fn moebius_decompose(m: &QuatMat2Float) -> Result<Vec<ElementaryMap>> {
    if m.det_sq() <= 0.0 {
        return Err(Error::NotInvertible);
    }
    if m.c.nrd() != 0.0 {
        let c_inv = m.c.inverse().expect("nonzero c");
        let ac_inv = m.a * c_inv;
        Ok(vec![
            ElementaryMap::Translate(c_inv * m.d),
            ElementaryMap::LeftMultiply(m.c),
            ElementaryMap::Invert,
            ElementaryMap::LeftMultiply(m.b - ac_inv * m.d),
            ElementaryMap::Translate(ac_inv),
        ])
    } else {
        let d_inv = m.d.inverse().ok_or(Error::NotInvertible)?;
        Ok(vec![
            ElementaryMap::Invert,
            ElementaryMap::LeftMultiply(m.d),
            ElementaryMap::Invert,
            ElementaryMap::LeftMultiply(m.a),
            ElementaryMap::Translate(m.b * d_inv),
        ])
    }
}

/// Point of the upper half-space model of hyperbolic 5-space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct H5Point {
    pub q: QuaternionFloat,
    pub t: f64,
}

impl H5Point {
    pub fn new(q: QuaternionFloat, t: f64) -> Self {
        debug_assert!(t > 0.0, "height must be positive");
        H5Point { q, t }
    }

    pub fn dist_coords(&self, rhs: &Self) -> f64 {
        let dq = self.q - rhs.q;
        fmath::sqrt(dq.nrd() + (self.t - rhs.t) * (self.t - rhs.t))
    }
}

/// Poincaré extension of the Möbius action to the upper half-space:
/// `(q, t) -> (((aq+b) conj(cq+d) + a conj(c) t^2) / w, t / w)` with
/// `w = |cq+d|^2 + |c|^2 t^2`.
pub fn poincare_extend(m: &QuatMat2Float, p: &H5Point) -> H5Point {
    let denom_q = m.c * p.q + m.d;
    let w = denom_q.nrd() + m.c.nrd() * p.t * p.t;
    let num = (m.a * p.q + m.b) * denom_q.conj() + (m.a * m.c.conj()).scale(p.t * p.t);
    H5Point {
        q: num.scale(1.0 / w),
        t: p.t / w,
    }
}

/// Hyperbolic distance in the upper half-space model:
/// `cosh d = 1 + (|q1-q2|^2 + (t1-t2)^2) / (2 t1 t2)`.
pub fn hyperbolic_distance(p1: &H5Point, p2: &H5Point) -> f64 {
    let dq = p1.q - p2.q;
    let num = dq.nrd() + (p1.t - p2.t) * (p1.t - p2.t);
    fmath::acosh(1.0 + num / (2.0 * p1.t * p2.t))
}

/// The classical generator set of the projective modular group of an order
/// over `Q`: the inversion, translations by the lattice basis and diagonal
/// unit rotations.
///
/// Unit generators follow the classical sets for the named orders
/// (`{i, j}` for the Lipschitz order, `{i, xi, tau}` for the Hurwitz order)
/// and fall back to a computed generating set otherwise.
pub fn psl2_generators(order: &Order) -> Result<Vec<QuatMat2Exact>> {
    let field = order.field();
    if !field.is_rational() {
        return Err(Error::IncompatibleOrder(
            "the generator set of the projective modular group is the rational (Bianchi) case"
                .into(),
        ));
    }
    let mut gens = vec![QuatMat2Exact::inversion(field)];
    for omega in order.zbasis() {
        gens.push(QuatMat2Exact::translation(omega.clone()));
    }
    for u in unit_generator_set(order) {
        gens.push(QuatMat2Exact::diagonal(u.clone(), u));
    }
    Ok(gens)
}

/// Unit generators: classical sets for named orders, computed otherwise.
pub fn unit_generator_set(order: &Order) -> Vec<QuaternionExact> {
    let field = order.field();
    match order.named_kind() {
        Some(NamedOrder::Lipschitz) => {
            vec![QuaternionExact::i(field), QuaternionExact::j(field)]
        }
        Some(NamedOrder::Hurwitz) => {
            let tau = QuaternionExact::from_rats(
                field,
                [rat(1, 2), rat(1, 2), rat(1, 2), rat(-1, 2)],
            );
            vec![QuaternionExact::i(field), QuaternionExact::xi(field), tau]
        }
        _ => order.unit_generators(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::NamedOrder;
    use crate::rat_int;

    fn fq() -> QuadraticField {
        QuadraticField::rational()
    }

    fn mat_int(field: QuadraticField, entries: [[i64; 4]; 4]) -> QuatMat2Exact {
        QuatMat2Exact::new(
            QuaternionExact::from_ints(field, entries[0]),
            QuaternionExact::from_ints(field, entries[1]),
            QuaternionExact::from_ints(field, entries[2]),
            QuaternionExact::from_ints(field, entries[3]),
        )
    }

    #[test]
    fn matrix_multiplication_basics() {
        let f = fq();
        let id = QuatMat2Exact::identity(f);
        let g = mat_int(f, [[1, 2, 0, 0], [0, 0, 3, 0], [1, 0, 0, 0], [0, 1, 1, 1]]);
        assert_eq!(&g * &id, g);
        let inv = QuatMat2Exact::inversion(f);
        assert!((&inv * &inv).is_identity());
        // Translation composition.
        let ti = QuatMat2Exact::translation(QuaternionExact::i(f));
        let tj = QuatMat2Exact::translation(QuaternionExact::j(f));
        let tij = &ti * &tj;
        assert_eq!(
            tij,
            QuatMat2Exact::translation(QuaternionExact::from_ints(f, [0, 1, 1, 0]))
        );
    }

    #[test]
    fn det_sq_examples() {
        let f = fq();
        assert!(QuatMat2Exact::identity(f).det_sq().is_one());
        assert!(QuatMat2Exact::inversion(f).det_sq().is_one());
        let diag = QuatMat2Exact::diagonal(
            QuaternionExact::from_ints(f, [2, 0, 0, 0]),
            QuaternionExact::from_ints(f, [3, 0, 0, 0]),
        );
        assert_eq!(
            diag.det_sq(),
            FieldElement::from_int(f, 36)
        );
    }

    #[test]
    fn det_multiplicativity_exact() {
        let f = fq();
        let g = mat_int(f, [[1, 2, -1, 0], [0, 1, 3, 0], [2, 0, 0, 1], [1, 1, 1, 1]]);
        let h = mat_int(f, [[0, 1, 0, 2], [1, 0, -2, 0], [3, 1, 0, 0], [0, 0, 1, -1]]);
        let lhs = (&g * &h).det_sq();
        let rhs = &g.det_sq() * &h.det_sq();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sl2_inverse_simple_cases() {
        let f = fq();
        // Translations: T_b^{-1} = T_{-b}.
        let b = QuaternionExact::from_ints(f, [0, 1, 2, 3]);
        let t = QuatMat2Exact::translation(b.clone());
        let t_inv = t.sl2_inverse().unwrap();
        assert_eq!(t_inv, QuatMat2Exact::translation(-&b));
        // The inversion is its own inverse.
        let j = QuatMat2Exact::inversion(f);
        assert_eq!(j.sl2_inverse().unwrap(), j);
        // Unit diagonal.
        let u = QuaternionExact::xi(f);
        let d = QuatMat2Exact::diagonal(u.clone(), u.clone());
        let d_inv = d.sl2_inverse().unwrap();
        assert!((&d * &d_inv).is_identity());
        // Determinant restriction.
        let bad = QuatMat2Exact::diagonal(
            QuaternionExact::from_ints(f, [2, 0, 0, 0]),
            QuaternionExact::one(f),
        );
        assert!(matches!(bad.sl2_inverse(), Err(Error::DeterminantNotOne)));
    }

    #[test]
    fn sl2_inverse_matches_solve_oracle() {
        let f = fq();
        // A generic word with det 1 and all entries nonzero.
        let xi = QuaternionExact::xi(f);
        let g = {
            let t1 = QuatMat2Exact::translation(QuaternionExact::i(f));
            let inv = QuatMat2Exact::inversion(f);
            let t2 = QuatMat2Exact::translation(xi.clone());
            let d = QuatMat2Exact::diagonal(xi.clone(), xi.clone());
            &(&(&t1 * &inv) * &t2) * &d
        };
        assert!(g.det_sq().is_one());
        let by_formula = g.sl2_inverse().unwrap();
        let by_solve = g.inverse_by_solve().unwrap();
        assert_eq!(by_formula, by_solve);
        assert!((&g * &by_formula).is_identity());
        assert!((&by_formula * &g).is_identity());
    }

    #[test]
    fn bg_examples() {
        let f = fq();
        let j = QuatMat2Exact::inversion(f);
        for v in BgVariant::ALL {
            assert!(bg_check_exact(&j, v));
        }
        let ti = QuatMat2Exact::translation(QuaternionExact::i(f));
        for v in BgVariant::ALL {
            assert!(bg_check_exact(&ti, v), "variant {v:?}");
        }
        // Translation by 1 is not half-space preserving: Re(b conj(d)) = 1.
        let t1 = QuatMat2Exact::translation(QuaternionExact::one(f));
        for v in BgVariant::ALL {
            assert!(!bg_check_exact(&t1, v), "variant {v:?}");
        }
    }

    #[test]
    fn iwasawa_trivial_cases() {
        // diag(2, 1/2).
        let m = QuatMat2Float {
            a: QuaternionFloat::scalar(2.0),
            b: QuaternionFloat::ZERO,
            c: QuaternionFloat::ZERO,
            d: QuaternionFloat::scalar(0.5),
        };
        let f = iwasawa_decompose(&m, &IwasawaConfig::default()).unwrap();
        assert!((f.lambda - 2.0).abs() < 1e-12);
        assert!(f.omega.max_coord_dist(&QuaternionFloat::ZERO) < 1e-12);
        assert!(f.alpha.max_coord_dist(&QuaternionFloat::ONE) < 1e-12);
        assert!(f.beta.max_coord_dist(&QuaternionFloat::ZERO) < 1e-12);

        // (1 i; 0 1).
        let m = QuatMat2Float {
            a: QuaternionFloat::ONE,
            b: QuaternionFloat::new(0.0, 1.0, 0.0, 0.0),
            c: QuaternionFloat::ZERO,
            d: QuaternionFloat::ONE,
        };
        let f = iwasawa_decompose(&m, &IwasawaConfig::default()).unwrap();
        assert!((f.lambda - 1.0).abs() < 1e-12);
        assert!(f.omega.max_coord_dist(&QuaternionFloat::new(0.0, 1.0, 0.0, 0.0)) < 1e-12);

        // The inversion: lambda 1, omega 0, alpha 0, beta 1.
        let m = QuatMat2Exact::inversion(fq()).to_float();
        let f = iwasawa_decompose(&m, &IwasawaConfig::default()).unwrap();
        assert!((f.lambda - 1.0).abs() < 1e-12);
        assert!(f.alpha.max_coord_dist(&QuaternionFloat::ZERO) < 1e-12);
        assert!(f.beta.max_coord_dist(&QuaternionFloat::ONE) < 1e-12);
        assert!(f.reassemble().max_entry_dist(&m) < 1e-12);

        // Non-BG input is rejected.
        let bad = QuatMat2Exact::translation(QuaternionExact::one(fq())).to_float();
        assert!(matches!(
            iwasawa_decompose(&bad, &IwasawaConfig::default()),
            Err(Error::BgViolation)
        ));
    }

    #[test]
    fn moebius_basics() {
        let f = fq();
        let b = QuaternionFloat::new(0.0, 1.0, 2.0, 0.0);
        let t = QuatMat2Float {
            a: QuaternionFloat::ONE,
            b,
            c: QuaternionFloat::ZERO,
            d: QuaternionFloat::ONE,
        };
        let q = QuaternionFloat::new(1.0, 0.0, 0.0, 3.0);
        match moebius_apply(&t, ExtQuaternion::finite(q)) {
            ExtQuaternion::Finite(v) => assert!(v.max_coord_dist(&(q + b)) < 1e-15),
            _ => panic!("expected finite"),
        }
        assert!(moebius_apply(&t, ExtQuaternion::Infinity).is_infinity());

        let j = QuatMat2Exact::inversion(f).to_float();
        match moebius_apply(&j, ExtQuaternion::finite(q)) {
            ExtQuaternion::Finite(v) => {
                assert!(v.max_coord_dist(&q.inverse().unwrap()) < 1e-15)
            }
            _ => panic!("expected finite"),
        }
        // J swaps 0 and infinity.
        assert!(moebius_apply(&j, ExtQuaternion::finite(QuaternionFloat::ZERO)).is_infinity());

        // (i 0; 2 -i) sends infinity to i/2.
        let m = mat_int(f, [[0, 1, 0, 0], [0, 0, 0, 0], [2, 0, 0, 0], [0, -1, 0, 0]]);
        assert!(m.det_sq().is_one());
        match moebius_apply(&m.to_float(), ExtQuaternion::Infinity) {
            ExtQuaternion::Finite(v) => {
                assert!(v.max_coord_dist(&QuaternionFloat::new(0.0, 0.5, 0.0, 0.0)) < 1e-15)
            }
            _ => panic!("expected finite"),
        }
        // Exact branch agrees.
        match moebius_apply_exact(&m, &ExtQuaternionExact::Infinity) {
            ExtQuaternionExact::Finite(v) => {
                assert_eq!(
                    v,
                    QuaternionExact::from_rats(
                        f,
                        [rat_int(0), rat(1, 2), rat_int(0), rat_int(0)]
                    )
                );
            }
            _ => panic!("expected finite"),
        }
    }

    #[test]
    fn decompose_reproduces_moebius() {
        let f = fq();
        // J: T_0, h_1, I, h_1, T_0.
        let j = QuatMat2Exact::inversion(f).to_float();
        let chain = moebius_decompose(&j).unwrap();
        assert_eq!(chain.len(), 5);
        let samples = [
            QuaternionFloat::new(0.3, -1.2, 0.7, 2.0),
            QuaternionFloat::new(1.0, 0.0, 0.0, 0.0),
            QuaternionFloat::new(0.0, 2.0, 0.0, 0.0),
        ];
        for q in samples {
            let via_chain = apply_chain(&chain, ExtQuaternion::finite(q));
            let direct = moebius_apply(&j, ExtQuaternion::finite(q));
            match (via_chain, direct) {
                (ExtQuaternion::Finite(u), ExtQuaternion::Finite(v)) => {
                    assert!(u.max_coord_dist(&v) < 1e-12)
                }
                (a, b) => assert_eq!(a, b),
            }
        }
        // Affine fallback.
        let aff = QuatMat2Float {
            a: QuaternionFloat::new(0.0, 1.0, 0.0, 0.0),
            b: QuaternionFloat::new(1.0, 0.0, 2.0, 0.0),
            c: QuaternionFloat::ZERO,
            d: QuaternionFloat::new(0.0, 0.0, 1.0, 0.0),
        };
        let chain = moebius_decompose(&aff).unwrap();
        for q in samples {
            let via_chain = apply_chain(&chain, ExtQuaternion::finite(q));
            let direct = moebius_apply(&aff, ExtQuaternion::finite(q));
            match (via_chain, direct) {
                (ExtQuaternion::Finite(u), ExtQuaternion::Finite(v)) => {
                    assert!(u.max_coord_dist(&v) < 1e-12)
                }
                (a, b) => assert_eq!(a, b),
            }
        }
    }

    #[test]
    fn poincare_examples() {
        let f = fq();
        let id = QuatMat2Exact::identity(f).to_float();
        let p = H5Point::new(QuaternionFloat::new(0.5, -1.0, 0.0, 2.0), 1.5);
        let p2 = poincare_extend(&id, &p);
        assert!(p2.q.max_coord_dist(&p.q) < 1e-15 && (p2.t - p.t).abs() < 1e-15);

        // Inversion at (0, 1) is a fixed point.
        let j = QuatMat2Exact::inversion(f).to_float();
        let origin = H5Point::new(QuaternionFloat::ZERO, 1.0);
        let img = poincare_extend(&j, &origin);
        assert!(img.q.max_coord_dist(&QuaternionFloat::ZERO) < 1e-15);
        assert!((img.t - 1.0).abs() < 1e-15);
        // And sends (0, 1/2) to (0, 2).
        let low = H5Point::new(QuaternionFloat::ZERO, 0.5);
        let img = poincare_extend(&j, &low);
        assert!((img.t - 2.0).abs() < 1e-15);

        // Translations fix t.
        let ti = QuatMat2Exact::translation(QuaternionExact::i(f)).to_float();
        let img = poincare_extend(&ti, &p);
        assert!((img.t - p.t).abs() < 1e-15);
        assert!(img
            .q
            .max_coord_dist(&(p.q + QuaternionFloat::new(0.0, 1.0, 0.0, 0.0)))
            < 1e-15);
    }

    #[test]
    fn poincare_is_isometry() {
        let f = fq();
        let xi = QuaternionExact::xi(f);
        let word = {
            let t = QuatMat2Exact::translation(QuaternionExact::i(f));
            let inv = QuatMat2Exact::inversion(f);
            let d = QuatMat2Exact::diagonal(xi.clone(), xi.clone());
            (&(&t * &inv) * &d).to_float()
        };
        let p1 = H5Point::new(QuaternionFloat::new(0.3, 0.4, -0.2, 1.0), 0.7);
        let p2 = H5Point::new(QuaternionFloat::new(-1.0, 2.0, 0.5, 0.0), 2.2);
        let d_before = hyperbolic_distance(&p1, &p2);
        let d_after = hyperbolic_distance(&poincare_extend(&word, &p1), &poincare_extend(&word, &p2));
        assert!((d_before - d_after).abs() < 1e-10);
    }

    #[test]
    fn boundary_limit_trend() {
        let f = fq();
        let xi = QuaternionExact::xi(f);
        let g = {
            let t = QuatMat2Exact::translation(xi.clone());
            let inv = QuatMat2Exact::inversion(f);
            (&t * &inv).to_float()
        };
        let q = QuaternionFloat::new(0.7, -0.3, 0.4, 0.1);
        let limit = match moebius_apply(&g, ExtQuaternion::finite(q)) {
            ExtQuaternion::Finite(v) => v,
            _ => panic!("pole hit"),
        };
        let mut errors = Vec::new();
        for t in [1e-2, 1e-3, 1e-4] {
            let img = poincare_extend(&g, &H5Point::new(q, t));
            errors.push(img.q.max_coord_dist(&limit));
        }
        // Quadratic decay within an order of magnitude.
        assert!(errors[1] < errors[0] * 0.1);
        assert!(errors[2] < errors[1] * 0.1);
    }

    #[test]
    fn hurwitz_generators() {
        let order = Order::named(NamedOrder::Hurwitz, fq()).unwrap();
        let gens = psl2_generators(&order).unwrap();
        // 1 inversion + 4 translations + 3 unit rotations.
        assert_eq!(gens.len(), 8);
        for g in &gens {
            assert!(g.det_sq().is_one(), "generator {g}");
        }
        // The translation basis is {1, i, j, xi}.
        let expected_b = [
            QuaternionExact::one(fq()),
            QuaternionExact::i(fq()),
            QuaternionExact::j(fq()),
            QuaternionExact::xi(fq()),
        ];
        for (g, b) in gens[1..5].iter().zip(expected_b.iter()) {
            assert_eq!(&g.b, b);
            assert!(g.a.is_one() && g.c.is_zero() && g.d.is_one());
        }
        let quadratic = Order::named(NamedOrder::Lipschitz, QuadraticField::new(2).unwrap()).unwrap();
        assert!(psl2_generators(&quadratic).is_err());
    }

    #[test]
    fn projective_normalization() {
        let f = fq();
        let g = mat_int(f, [[0, -1, 0, 0], [1, 0, 0, 0], [1, 1, 0, 0], [0, 0, 0, 1]]);
        let neg = -&g;
        assert!(g.projective_eq(&neg));
        assert_eq!(g.projective_normalize(), neg.projective_normalize());
        let h = mat_int(f, [[0, 1, 0, 0], [1, 0, 0, 0], [1, 1, 0, 0], [0, 0, 0, 1]]);
        assert!(!g.projective_eq(&h));
    }
}
