//! Right-Euclidean arithmetic in the Hurwitz integers over `Q`: division
//! with remainder, right gcd with Bézout coefficients, the one-cusp matrix
//! construction, and reduction of hyperbolic 5-space points to the
//! fundamental chimney.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::matmob::{poincare_extend, ExtQuaternionExact, H5Point, QuatMat2Exact};
use crate::quadfield::QuadraticField;
use crate::quatalg::QuaternionExact;
use crate::{fmath, rat, Error, Int, Rat, Result};

/// Hurwitz integer test: all four coordinates integers, or all four
/// half-odd integers.
pub fn is_hurwitz(q: &QuaternionExact) -> bool {
    if !q.field().is_rational() {
        return false;
    }
    let two = rat(2, 1);
    let mut parity: Option<bool> = None;
    for c in q.coords() {
        let doubled = c.coeff_a() * &two;
        if !doubled.is_integer() {
            return false;
        }
        let is_integer = c.coeff_a().is_integer();
        match parity {
            None => parity = Some(is_integer),
            Some(p) if p != is_integer => return false,
            _ => {}
        }
    }
    true
}

fn require_hurwitz(q: &QuaternionExact) -> Result<()> {
    if is_hurwitz(q) {
        Ok(())
    } else {
        Err(Error::NotHurwitz)
    }
}

/// Right division with remainder: `a = b * quot + rem` with `quot` a Hurwitz
/// integer nearest to `b^{-1} a` and `nrd(rem) < nrd(b)`.
///
/// Candidates are the 16 floor/ceil roundings of `b^{-1} a` plus the 16
/// nearest half-odd points; ties in the remainder norm are broken by the
/// lexicographically smallest remainder.
pub fn right_divmod(
    a: &QuaternionExact,
    b: &QuaternionExact,
) -> Result<(QuaternionExact, QuaternionExact)> {
    require_hurwitz(a)?;
    require_hurwitz(b)?;
    if b.is_zero() {
        return Err(Error::DivisorZero);
    }
    let field = a.field();
    let target = &b.inverse().expect("nonzero divisor") * a;
    // Coordinate-wise integer and half-odd bracketing values.
    let mut int_choices: Vec<[Rat; 2]> = Vec::with_capacity(4);
    let mut half_choices: Vec<[Rat; 2]> = Vec::with_capacity(4);
    let half = rat(1, 2);
    for c in target.coords() {
        let x = c.coeff_a().clone();
        let lo = x.floor();
        int_choices.push([lo.clone(), &lo + Rat::one()]);
        let hlo = (&x - &half).floor() + &half;
        half_choices.push([hlo.clone(), &hlo + Rat::one()]);
    }
    let mut best: Option<(QuaternionExact, QuaternionExact, Rat)> = None;
    for mask in 0..32u32 {
        let choices = if mask < 16 { &int_choices } else { &half_choices };
        let mut coords = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
        for (idx, slot) in coords.iter_mut().enumerate() {
            *slot = choices[idx][((mask >> idx) & 1) as usize].clone();
        }
        let quot = QuaternionExact::from_rats(field, coords);
        let rem = a - &(b * &quot);
        let nrm = rem.nrd().coeff_a().clone();
        let better = match &best {
            None => true,
            Some((_, best_rem, best_nrm)) => {
                nrm < *best_nrm
                    || (nrm == *best_nrm
                        && rem.canonical_cmp(best_rem) == core::cmp::Ordering::Less)
            }
        };
        if better {
            best = Some((quot, rem, nrm));
        }
    }
    let (quot, rem, nrm) = best.expect("candidate set is nonempty");
    debug_assert!(nrm < *b.nrd().coeff_a(), "division must reduce the norm");
    Ok((quot, rem))
}

/// Extended right Euclid: returns `(g, s, t)` with `a s + b t = g` and `g`
/// generating the right ideal `a O + b O` (not unit-normalized).
pub fn right_gcd_ext(
    a: &QuaternionExact,
    b: &QuaternionExact,
) -> Result<(QuaternionExact, QuaternionExact, QuaternionExact)> {
    require_hurwitz(a)?;
    require_hurwitz(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let field = a.field();
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let mut s0 = QuaternionExact::one(field);
    let mut s1 = QuaternionExact::zero(field);
    let mut t0 = QuaternionExact::zero(field);
    let mut t1 = QuaternionExact::one(field);
    while !r1.is_zero() {
        let (q, r2) = right_divmod(&r0, &r1)?;
        let s2 = &s0 - &(&s1 * &q);
        let t2 = &t0 - &(&t1 * &q);
        r0 = core::mem::replace(&mut r1, r2);
        s0 = core::mem::replace(&mut s1, s2);
        t0 = core::mem::replace(&mut t1, t2);
    }
    debug_assert_eq!(&(a * &s0) + &(b * &t0), r0);
    Ok((r0, s0, t0))
}

/// The 24 Hurwitz units.
pub fn hurwitz_units(field: QuadraticField) -> Vec<QuaternionExact> {
    let mut units = Vec::with_capacity(24);
    for idx in 0..4 {
        for sign in [1i64, -1] {
            let mut coords = [0i64; 4];
            coords[idx] = sign;
            units.push(QuaternionExact::from_ints(field, coords));
        }
    }
    let half = rat(1, 2);
    for mask in 0..16u32 {
        let coords = core::array::from_fn(|idx| {
            if (mask >> idx) & 1 == 1 {
                -half.clone()
            } else {
                half.clone()
            }
        });
        units.push(QuaternionExact::from_rats(field, coords));
    }
    units
}

/// Canonical representative among the right associates `g u`: the
/// lexicographically largest coordinate tuple.
pub fn normalize_right_associate(g: &QuaternionExact) -> QuaternionExact {
    let mut best = g.clone();
    for u in hurwitz_units(g.field()) {
        let cand = g * &u;
        if cand.canonical_cmp(&best) == core::cmp::Ordering::Greater {
            best = cand;
        }
    }
    best
}

/// Right gcd of two Hurwitz integers, unit-normalized; a unit result (the
/// constant 1 after normalization) certifies right-coprimality.
pub fn right_gcd(a: &QuaternionExact, b: &QuaternionExact) -> Result<QuaternionExact> {
    let (g, _, _) = right_gcd_ext(a, b)?;
    Ok(normalize_right_associate(&g))
}

/// Bézout matrix of the one-cusp construction: for right-coprime `alpha`
/// and a nonzero rational integer `c`, returns
/// `gamma = (alpha nu; c mu)` with `alpha mu - c nu = 1`, so that
/// `det = 1` and the Möbius image of infinity is `alpha c^{-1}`.
pub fn bezout_cusp_matrix(alpha: &QuaternionExact, c: &Int) -> Result<QuatMat2Exact> {
    if c.is_zero() {
        return Err(Error::DivisorZero);
    }
    let field = alpha.field();
    require_hurwitz(alpha)?;
    let c_quat = QuaternionExact::from_rats(
        field,
        [
            Rat::from_integer(c.clone()),
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
        ],
    );
    let (g, s, t) = right_gcd_ext(alpha, &c_quat)?;
    if !g.nrd().is_one() {
        return Err(Error::NotCoprime);
    }
    // alpha s + c t = g with g a unit: multiply on the right by conj(g).
    let g_conj = g.conj();
    let mu = &s * &g_conj;
    let nu = -&(&t * &g_conj);
    debug_assert!((&(alpha * &mu) - &(&c_quat * &nu)).is_one());
    let gamma = QuatMat2Exact::new(alpha.clone(), nu, c_quat, mu);
    debug_assert!(gamma.det_sq().is_one());
    Ok(gamma)
}

/// One reduction move, recorded so the reduction can be replayed.
#[derive(Debug, Clone, PartialEq)]
pub enum ReductionStep {
    /// Translation by a (Lipschitz) Hurwitz integer.
    Translate(QuaternionExact),
    /// The inversion `(0 1; 1 0)`.
    Invert,
}

impl ReductionStep {
    pub fn matrix(&self, field: QuadraticField) -> QuatMat2Exact {
        match self {
            ReductionStep::Translate(b) => QuatMat2Exact::translation(b.clone()),
            ReductionStep::Invert => QuatMat2Exact::inversion(field),
        }
    }

    /// Coefficients of a translation amount in the Hurwitz basis
    /// `{1, i, j, xi}`; `None` for the inversion.
    pub fn hurwitz_basis_coefficients(&self) -> Option<[Int; 4]> {
        match self {
            ReductionStep::Invert => None,
            ReductionStep::Translate(b) => {
                // b = m0 + m1 i + m2 j + m3 xi with xi = (1+i+j+k)/2:
                // m3 = 2 x3, m0 = x0 - x3, m1 = x1 - x3, m2 = x2 - x3.
                let x: Vec<Rat> = b.coords().iter().map(|c| c.coeff_a().clone()).collect();
                let m3 = &x[3] * rat(2, 1);
                let m0 = &x[0] - &x[3];
                let m1 = &x[1] - &x[3];
                let m2 = &x[2] - &x[3];
                debug_assert!(
                    m0.is_integer() && m1.is_integer() && m2.is_integer() && m3.is_integer()
                );
                Some([
                    m0.to_integer(),
                    m1.to_integer(),
                    m2.to_integer(),
                    m3.to_integer(),
                ])
            }
        }
    }
}

/// A reduced point together with the word of moves that produced it.
#[derive(Debug, Clone)]
pub struct ChimneyPoint {
    pub point: H5Point,
    pub word: Vec<ReductionStep>,
}

/// Tolerances and caps for the chimney reduction.
#[derive(Debug, Clone, Copy)]
pub struct ReduceConfig {
    pub max_steps: usize,
    /// Points this close to the unit sphere are treated as on it.
    pub boundary_tol: f64,
}

impl Default for ReduceConfig {
    fn default() -> Self {
        ReduceConfig {
            max_steps: 10_000,
            boundary_tol: 1e-12,
        }
    }
}

/// Whether a point satisfies the chimney inequalities within `tol`:
/// all four coordinates in `[-1/2, 1/2]` and `|q|^2 + t^2 >= 1`.
pub fn in_chimney(p: &H5Point, tol: f64) -> bool {
    p.q.coords().iter().all(|x| fmath::abs(*x) <= 0.5 + tol)
        && p.q.nrd() + p.t * p.t >= 1.0 - tol
}

/// Reduces a point of the upper half-space into the chimney by integer
/// translations and inversions, recording the word of moves.
///
/// Translations keep the height fixed; each inversion strictly increases it.
/// Fails with the step count if the iteration cap is exceeded.
pub fn reduce_to_chimney(p: &H5Point, cfg: &ReduceConfig) -> Result<ChimneyPoint> {
    let field = QuadraticField::rational();
    let mut current = *p;
    let mut word: Vec<ReductionStep> = Vec::new();
    for _ in 0..cfg.max_steps {
        // Bring every coordinate into [-1/2, 1/2] with one translation.
        let mut shift = [0i64; 4];
        let coords = current.q.coords();
        let mut any = false;
        for (idx, x) in coords.iter().enumerate() {
            if fmath::abs(*x) > 0.5 + cfg.boundary_tol {
                shift[idx] = fmath::round(*x) as i64;
                any = true;
            }
        }
        if any {
            let omega = QuaternionExact::from_ints(field, [-shift[0], -shift[1], -shift[2], -shift[3]]);
            let step = ReductionStep::Translate(omega);
            let t_before = current.t;
            current = poincare_extend(&step.matrix(field).to_float(), &current);
            debug_assert_eq!(current.t, t_before);
            word.push(step);
            continue;
        }
        // Inside the box: invert if strictly inside the unit sphere.
        if current.q.nrd() + current.t * current.t < 1.0 - cfg.boundary_tol {
            let step = ReductionStep::Invert;
            let t_before = current.t;
            current = poincare_extend(&step.matrix(field).to_float(), &current);
            debug_assert!(current.t > t_before);
            word.push(step);
            continue;
        }
        return Ok(ChimneyPoint {
            point: current,
            word,
        });
    }
    Err(Error::ReductionCap {
        steps: cfg.max_steps,
    })
}

/// Replays a reduction word from a starting point via Poincaré extensions.
pub fn replay_word(p: &H5Point, word: &[ReductionStep]) -> H5Point {
    let field = QuadraticField::rational();
    word.iter().fold(*p, |acc, step| {
        poincare_extend(&step.matrix(field).to_float(), &acc)
    })
}

/// Exact Möbius image of infinity under the cusp matrix, for certification.
pub fn cusp_infinity_image(gamma: &QuatMat2Exact) -> ExtQuaternionExact {
    crate::matmob::moebius_apply_exact(gamma, &ExtQuaternionExact::Infinity)
}
