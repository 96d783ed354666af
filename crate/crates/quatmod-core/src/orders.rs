//! Orders in the totally definite quaternion algebra over `Q` or a real
//! quadratic field, stored as full-rank integer lattices.
//!
//! A `Z_K`-order is kept as a plain `Z`-lattice of rank `4 * [K:Q]` so that
//! membership, pure-sublattice extraction and unit enumeration are exact
//! integer/rational linear algebra regardless of the class group of `K`.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::linalg::{self, RatMatrix};
use crate::quadfield::{FieldElement, QuadraticField};
use crate::quatalg::QuaternionExact;
use crate::{fmath, rat, Error, Int, Rat, Result};

/// The orders named in the classification: the standard (Lipschitz-type)
/// order, the Hurwitz order, and the two exceptional maximal orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedOrder {
    Lipschitz,
    Hurwitz,
    BinaryOctahedral,
    BinaryIcosahedral,
}

impl NamedOrder {
    pub fn as_str(&self) -> &'static str {
        match self {
            NamedOrder::Lipschitz => "lipschitz",
            NamedOrder::Hurwitz => "hurwitz",
            NamedOrder::BinaryOctahedral => "binary_octahedral",
            NamedOrder::BinaryIcosahedral => "binary_icosahedral",
        }
    }
}

impl FromStr for NamedOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lipschitz" | "standard" => Ok(NamedOrder::Lipschitz),
            "hurwitz" => Ok(NamedOrder::Hurwitz),
            "binary_octahedral" | "octahedral" => Ok(NamedOrder::BinaryOctahedral),
            "binary_icosahedral" | "icosahedral" => Ok(NamedOrder::BinaryIcosahedral),
            other => Err(Error::Parse(alloc::format!("unknown order '{other}'"))),
        }
    }
}

/// A full-rank lattice in the quaternion algebra, together with the exact
/// change-of-basis matrices needed for membership tests.
#[derive(Debug, Clone)]
pub struct Order {
    field: QuadraticField,
    zbasis: Vec<QuaternionExact>,
    name: Option<String>,
    basis_mat: RatMatrix,
    inv_mat: RatMatrix,
}

impl Order {
    /// Builds an order-candidate lattice from an explicit `Z`-basis
    /// (4 quaternions over `Q`, 8 over a quadratic field). Ring closure is
    /// not checked here; see [`verify_ring`](Self::verify_ring).
    pub fn from_zbasis(
        field: QuadraticField,
        zbasis: Vec<QuaternionExact>,
        name: Option<String>,
    ) -> Result<Self> {
        let dim = 4 * field.degree();
        if zbasis.len() != dim {
            return Err(Error::RankDeficient);
        }
        if zbasis.iter().any(|q| q.field() != field) {
            return Err(Error::FieldMismatch);
        }
        let basis_mat: RatMatrix = zbasis.iter().map(|q| q.rational_coords()).collect();
        let inv_mat = linalg::invert_rat(&basis_mat).map_err(|_| Error::RankDeficient)?;
        Ok(Order {
            field,
            zbasis,
            name,
            basis_mat,
            inv_mat,
        })
    }

    /// Expands a rank-4 `Z_K`-basis to a `Z`-basis by tensoring with
    /// `{1, theta}` and builds the lattice.
    pub fn from_zk_basis(
        field: QuadraticField,
        basis: [QuaternionExact; 4],
        name: Option<String>,
    ) -> Result<Self> {
        let mut zbasis = Vec::with_capacity(4 * field.degree());
        for q in &basis {
            zbasis.push(q.clone());
            if !field.is_rational() {
                let theta = QuaternionExact::scalar(field.theta()?);
                zbasis.push(&theta * q);
            }
        }
        Self::from_zbasis(field, zbasis, name)
    }

    /// One of the named orders of the classification.
    pub fn named(which: NamedOrder, field: QuadraticField) -> Result<Self> {
        let one = QuaternionExact::one(field);
        let i = QuaternionExact::i(field);
        let j = QuaternionExact::j(field);
        let k = QuaternionExact::k(field);
        let xi = QuaternionExact::xi(field);
        let name = Some(String::from(which.as_str()));
        match which {
            NamedOrder::Lipschitz => Self::from_zk_basis(field, [one, i, j, k], name),
            NamedOrder::Hurwitz => Self::from_zk_basis(field, [one, i, j, xi], name),
            NamedOrder::BinaryOctahedral => {
                if field.n() != Some(2) {
                    return Err(Error::IncompatibleOrder(
                        "binary octahedral order requires n = 2".into(),
                    ));
                }
                // eta = (1 + i)/sqrt(2), delta = (1 + j)/sqrt(2), eta*delta = xi.
                let half_theta = FieldElement::new(field, rat(0, 1), rat(1, 2))?;
                let eta = QuaternionExact::new(
                    half_theta.clone(),
                    half_theta.clone(),
                    FieldElement::zero(field),
                    FieldElement::zero(field),
                );
                let delta = QuaternionExact::new(
                    half_theta.clone(),
                    FieldElement::zero(field),
                    half_theta,
                    FieldElement::zero(field),
                );
                let eta_delta = &eta * &delta;
                debug_assert_eq!(eta_delta, xi);
                Self::from_zk_basis(field, [one, eta, delta, eta_delta], name)
            }
            NamedOrder::BinaryIcosahedral => {
                if field.n() != Some(5) {
                    return Err(Error::IncompatibleOrder(
                        "binary icosahedral order requires n = 5".into(),
                    ));
                }
                // zeta = (phi + phi^{-1} i + j)/2 with phi = theta.
                let phi = field.theta()?;
                let phi_inv = phi.inverse()?;
                let half = FieldElement::new(field, rat(1, 2), rat(0, 1))?;
                let zeta = QuaternionExact::new(
                    &phi * &half,
                    &phi_inv * &half,
                    half.clone(),
                    FieldElement::zero(field),
                );
                let i_zeta = &i * &zeta;
                Self::from_zk_basis(field, [one, i, zeta, i_zeta], name)
            }
        }
    }

    pub fn field(&self) -> QuadraticField {
        self.field
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn named_kind(&self) -> Option<NamedOrder> {
        self.name.as_deref().and_then(|s| s.parse().ok())
    }

    /// Rank of the lattice over `Z`: 4 over `Q`, 8 over a quadratic field.
    pub fn dimension(&self) -> usize {
        self.zbasis.len()
    }

    pub fn zbasis(&self) -> &[QuaternionExact] {
        &self.zbasis
    }

    /// Exact coordinates of `q` in the `Z`-basis.
    pub fn coordinates(&self, q: &QuaternionExact) -> Result<Vec<Rat>> {
        if q.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        let coords = q.rational_coords();
        // x = coords * inv(basis_mat), with vectors as rows.
        let mut x = vec![Rat::zero(); coords.len()];
        for (k, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (jx, inv_kj) in self.inv_mat[k].iter().enumerate() {
                let delta = c * inv_kj;
                x[jx] = &x[jx] + &delta;
            }
        }
        Ok(x)
    }

    /// Lattice membership: integer coordinates in the `Z`-basis.
    pub fn contains(&self, q: &QuaternionExact) -> Result<bool> {
        Ok(self.coordinates(q)?.iter().all(|c| c.is_integer()))
    }

    /// Checks that the lattice is a ring with unity: `1` is a lattice point
    /// and all pairwise basis products stay inside.
    pub fn verify_ring(&self) -> RingCertificate {
        let one = QuaternionExact::one(self.field);
        if !self.contains(&one).expect("same field") {
            return RingCertificate::MissingOne;
        }
        for (ix, bi) in self.zbasis.iter().enumerate() {
            for (jx, bj) in self.zbasis.iter().enumerate() {
                let product = bi * bj;
                if !self.contains(&product).expect("same field") {
                    return RingCertificate::ProductOutside {
                        i: ix,
                        j: jx,
                        product,
                    };
                }
            }
        }
        RingCertificate::Pass
    }

    /// Ambient pure coordinates `(x1, x2, x3)` flattened over the theta
    /// basis; length 6 (or 3 over `Q`).
    fn pure_coords(q: &QuaternionExact) -> Vec<Rat> {
        let quadratic = !q.field().is_rational();
        let mut out = Vec::with_capacity(6);
        for c in &q.coords()[1..] {
            out.push(c.coeff_a().clone());
            if quadratic {
                out.push(c.coeff_b().clone());
            }
        }
        out
    }

    /// Canonical `Z`-basis of the sublattice of pure (trace-zero) elements:
    /// rank 6 over a quadratic field, rank 3 over `Q`.
    ///
    /// The basis is returned in Hermite normal form with respect to the
    /// fixed ambient frame `(i, theta*i, j, theta*j, k, theta*k)`, so the
    /// output is byte-stable.
    pub fn pure_sublattice(&self) -> Vec<QuaternionExact> {
        let dim = self.dimension();
        // Linear functionals cutting out trd = 0: the theta-coordinates of
        // the scalar part of sum x_m b_m.
        let quadratic = !self.field.is_rational();
        let mut functionals: Vec<Vec<Rat>> = vec![Vec::with_capacity(dim)];
        if quadratic {
            functionals.push(Vec::with_capacity(dim));
        }
        for b in &self.zbasis {
            functionals[0].push(b.coord(0).coeff_a().clone());
            if quadratic {
                functionals[1].push(b.coord(0).coeff_b().clone());
            }
        }
        let kernel = linalg::int_kernel(&functionals);
        // Map kernel vectors into ambient pure coordinates.
        let pure_dim = if quadratic { 6 } else { 3 };
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(kernel.len());
        for x in &kernel {
            let mut v = QuaternionExact::zero(self.field);
            for (c, b) in x.iter().zip(&self.zbasis) {
                if !c.is_zero() {
                    let scale = FieldElement::from_rat(self.field, Rat::from_integer(c.clone()));
                    v = &v + &b.mul_scalar(&scale);
                }
            }
            debug_assert!(v.is_pure());
            rows.push(Self::pure_coords(&v));
        }
        // Scale to integers, HNF, scale back.
        let mut denom = Int::one();
        for row in &rows {
            for c in row {
                denom = denom.lcm(c.denom());
            }
        }
        let scaled: Vec<Vec<Int>> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| c.numer() * (&denom / c.denom()))
                    .collect()
            })
            .collect();
        let hnf = linalg::row_hnf(&scaled);
        debug_assert_eq!(hnf.len(), pure_dim);
        hnf.iter()
            .map(|row| {
                let mut coords = Vec::with_capacity(8);
                coords.push(Rat::zero());
                if quadratic {
                    coords.push(Rat::zero());
                }
                for c in row {
                    coords.push(Rat::new(c.clone(), denom.clone()));
                }
                QuaternionExact::from_rational_coords(self.field, &coords)
                    .expect("valid pure coordinates")
            })
            .collect()
    }

    /// Exact Gram matrix of the trace form `q(v) = nrd(v) + sigma(nrd(v))`
    /// in the `Z`-basis (over `Q` this is `2 nrd(v)`; either way norm-one
    /// units sit exactly at value 2).
    fn trace_gram(&self) -> RatMatrix {
        let d = self.dimension();
        let mut gram = vec![vec![Rat::zero(); d]; d];
        for ix in 0..d {
            for jx in ix..d {
                let prod = &self.zbasis[ix] * &self.zbasis[jx].conj();
                // Tr_{K/Q}(trd(b_i conj(b_j)))/2.
                let entry = prod.trd().trace() / rat(2, 1);
                gram[ix][jx] = entry.clone();
                gram[jx][ix] = entry;
            }
        }
        gram
    }

    /// Enumerates the torsion group `O^1` of norm-one units by short-vector
    /// enumeration of the positive definite trace form at value 2, followed
    /// by exact verification of `nrd(u) = 1`.
    pub fn unit_torsion(&self) -> TorsionGroup {
        let gram = self.trace_gram();
        let candidates = enumerate_small_vectors(&gram, 2.0 + 1e-6);
        let mut elements = Vec::new();
        for x in candidates {
            let mut v = QuaternionExact::zero(self.field);
            for (c, b) in x.iter().zip(&self.zbasis) {
                if *c != 0 {
                    let scale = FieldElement::from_int(self.field, *c);
                    v = &v + &b.mul_scalar(&scale);
                }
            }
            if v.nrd().is_one() {
                elements.push(v);
            }
        }
        elements.sort_by(|a, b| a.canonical_cmp(b));
        TorsionGroup { elements }
    }

    /// A generating set for the torsion group, chosen greedily from the
    /// canonical enumeration order (deterministic).
    pub fn unit_generators(&self) -> Vec<QuaternionExact> {
        self.unit_torsion().generators()
    }
}

/// Outcome of the ring verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingCertificate {
    Pass,
    /// `1` is not a lattice point.
    MissingOne,
    /// First basis product that leaves the lattice.
    ProductOutside {
        i: usize,
        j: usize,
        product: QuaternionExact,
    },
}

impl RingCertificate {
    pub fn is_pass(&self) -> bool {
        matches!(self, RingCertificate::Pass)
    }
}

impl fmt::Display for RingCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingCertificate::Pass => write!(f, "pass"),
            RingCertificate::MissingOne => write!(f, "fail: 1 is not in the lattice"),
            RingCertificate::ProductOutside { i, j, product } => {
                write!(f, "fail: basis product b{i}*b{j} = {product} leaves the lattice")
            }
        }
    }
}

/// The finite group of norm-one units of a definite order.
#[derive(Debug, Clone)]
pub struct TorsionGroup {
    elements: Vec<QuaternionExact>,
}

/// Classification of a finite subgroup of the unit Hamiltonians.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorsionClass {
    /// Cyclic group of order `n`.
    Cyclic(usize),
    /// Binary dihedral (dicyclic) group of order `4n`.
    BinaryDihedral(usize),
    /// Binary tetrahedral group, order 24.
    BinaryTetrahedral,
    /// Binary octahedral group, order 48.
    BinaryOctahedral,
    /// Binary icosahedral group, order 120.
    BinaryIcosahedral,
}

impl fmt::Display for TorsionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorsionClass::Cyclic(n) => write!(f, "C_{n}"),
            TorsionClass::BinaryDihedral(n) => write!(f, "Q_{}", 4 * n),
            TorsionClass::BinaryTetrahedral => write!(f, "2T"),
            TorsionClass::BinaryOctahedral => write!(f, "2O"),
            TorsionClass::BinaryIcosahedral => write!(f, "2I"),
        }
    }
}

impl TorsionGroup {
    pub fn elements(&self) -> &[QuaternionExact] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    fn key(q: &QuaternionExact) -> Vec<Rat> {
        q.rational_coords()
    }

    /// Exact group verification: every element has norm one, the set is
    /// closed under multiplication and inverses, and contains `+-1`.
    pub fn verify_closed(&self) -> bool {
        if self.elements.is_empty() {
            return false;
        }
        let field = self.elements[0].field();
        let set: BTreeSet<Vec<Rat>> = self.elements.iter().map(Self::key).collect();
        if set.len() != self.elements.len() {
            return false;
        }
        let one = QuaternionExact::one(field);
        if !set.contains(&Self::key(&one)) || !set.contains(&Self::key(&(-&one))) {
            return false;
        }
        for u in &self.elements {
            if !u.nrd().is_one() {
                return false;
            }
            // For norm-one elements the inverse is the conjugate.
            if !set.contains(&Self::key(&u.conj())) {
                return false;
            }
            for v in &self.elements {
                if !set.contains(&Self::key(&(u * v))) {
                    return false;
                }
            }
        }
        true
    }

    /// Multiplicative order of an element inside the group.
    fn element_order(u: &QuaternionExact, cap: usize) -> usize {
        let mut acc = u.clone();
        for m in 1..=cap {
            if acc.is_one() {
                return m;
            }
            acc = &acc * u;
        }
        usize::MAX
    }

    /// Census of element orders: sorted `(order, count)` pairs.
    pub fn order_census(&self) -> Vec<(usize, usize)> {
        let cap = 2 * self.elements.len().max(1);
        let mut counts: alloc::collections::BTreeMap<usize, usize> =
            alloc::collections::BTreeMap::new();
        for u in &self.elements {
            *counts.entry(Self::element_order(u, cap)).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }

    /// Classifies the group by order and element-order census against the
    /// list of finite subgroups of the unit Hamiltonians.
    pub fn classify(&self) -> Result<TorsionClass> {
        let n = self.elements.len();
        if n == 0 {
            return Err(Error::UnrecognizedTorsion);
        }
        let census = self.order_census();
        let max_order = census.last().map(|(o, _)| *o).unwrap_or(0);
        if max_order == n {
            return Ok(TorsionClass::Cyclic(n));
        }
        let exceptional: &[(usize, &[(usize, usize)], TorsionClass)] = &[
            (
                24,
                &[(1, 1), (2, 1), (3, 8), (4, 6), (6, 8)],
                TorsionClass::BinaryTetrahedral,
            ),
            (
                48,
                &[(1, 1), (2, 1), (3, 8), (4, 18), (6, 8), (8, 12)],
                TorsionClass::BinaryOctahedral,
            ),
            (
                120,
                &[(1, 1), (2, 1), (3, 20), (4, 30), (5, 24), (6, 20), (10, 24)],
                TorsionClass::BinaryIcosahedral,
            ),
        ];
        for (size, expected, class) in exceptional {
            if n == *size && census == *expected {
                return Ok(*class);
            }
        }
        if n % 4 == 0 && n >= 8 && max_order == n / 2 {
            return Ok(TorsionClass::BinaryDihedral(n / 4));
        }
        Err(Error::UnrecognizedTorsion)
    }

    /// Greedy generating set in canonical order.
    pub fn generators(&self) -> Vec<QuaternionExact> {
        if self.elements.is_empty() {
            return Vec::new();
        }
        let field = self.elements[0].field();
        let full: BTreeSet<Vec<Rat>> = self.elements.iter().map(Self::key).collect();
        let mut gens: Vec<QuaternionExact> = Vec::new();
        let mut span: BTreeSet<Vec<Rat>> = BTreeSet::new();
        span.insert(Self::key(&QuaternionExact::one(field)));
        for candidate in &self.elements {
            if span.contains(&Self::key(candidate)) {
                continue;
            }
            gens.push(candidate.clone());
            span = Self::generated_set(field, &gens);
            if span.len() == full.len() {
                break;
            }
        }
        gens
    }

    /// The subgroup generated by `gens` (as a set of canonical keys).
    fn generated_set(field: QuadraticField, gens: &[QuaternionExact]) -> BTreeSet<Vec<Rat>> {
        let mut set: BTreeSet<Vec<Rat>> = BTreeSet::new();
        let one = QuaternionExact::one(field);
        let mut frontier = vec![one];
        set.insert(Self::key(&frontier[0]));
        while let Some(current) = frontier.pop() {
            for g in gens {
                for next in [&current * g, &current * &g.conj()] {
                    let k = Self::key(&next);
                    if set.insert(k) {
                        frontier.push(next);
                    }
                }
            }
        }
        set
    }

    /// Checks that a candidate set generates exactly this group.
    pub fn is_generating_set(&self, gens: &[QuaternionExact]) -> bool {
        if self.elements.is_empty() {
            return gens.is_empty();
        }
        let field = self.elements[0].field();
        let span = Self::generated_set(field, gens);
        let full: BTreeSet<Vec<Rat>> = self.elements.iter().map(Self::key).collect();
        span == full
    }
}

/// All integer vectors with `x^T G x <= bound` for a positive definite
/// rational Gram matrix `G`, excluding zero.
///
/// Floating Cholesky (`U^T D U`) with a generous bound margin restricts the
/// search tree; callers re-verify candidates exactly.
fn enumerate_small_vectors(gram: &RatMatrix, bound: f64) -> Vec<Vec<i64>> {
    let d = gram.len();
    let g: Vec<Vec<f64>> = gram
        .iter()
        .map(|row| row.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect())
        .collect();
    // Unit upper-triangular U and positive diagonal D with G = U^T D U.
    let mut u = vec![vec![0.0f64; d]; d];
    let mut diag = vec![0.0f64; d];
    for ix in 0..d {
        let mut v = g[ix][ix];
        for k in 0..ix {
            v -= diag[k] * u[k][ix] * u[k][ix];
        }
        diag[ix] = v;
        assert!(v > 0.0, "trace form must be positive definite");
        for jx in ix + 1..d {
            let mut w = g[ix][jx];
            for k in 0..ix {
                w -= diag[k] * u[k][ix] * u[k][jx];
            }
            u[ix][jx] = w / v;
        }
    }
    let mut out = Vec::new();
    let mut x = vec![0i64; d];
    enumerate_level(&u, &diag, bound, d, &mut x, &mut out);
    out.retain(|v| v.iter().any(|&c| c != 0));
    out
}

fn enumerate_level(
    u: &[Vec<f64>],
    diag: &[f64],
    remaining: f64,
    level: usize,
    x: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if level == 0 {
        out.push(x.clone());
        return;
    }
    let ix = level - 1;
    let center: f64 = (level..u.len()).map(|j| u[ix][j] * x[j] as f64).sum();
    let radius = fmath::sqrt(remaining.max(0.0) / diag[ix]) + 1e-9;
    let lo = fmath::floor(-center - radius) as i64;
    let hi = fmath::floor(-center + radius) as i64 + 1;
    for cand in lo..=hi {
        let term = diag[ix] * (cand as f64 + center) * (cand as f64 + center);
        if term <= remaining + 1e-9 {
            x[ix] = cand;
            enumerate_level(u, diag, remaining - term, ix, x, out);
            x[ix] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat_int;

    fn fq() -> QuadraticField {
        QuadraticField::rational()
    }

    #[test]
    fn hurwitz_over_q_basics() {
        let order = Order::named(NamedOrder::Hurwitz, fq()).unwrap();
        assert_eq!(order.dimension(), 4);
        assert!(order.verify_ring().is_pass());
        let xi = QuaternionExact::xi(fq());
        assert!(order.contains(&xi).unwrap());
        // xi is not a Lipschitz integer.
        let lip = Order::named(NamedOrder::Lipschitz, fq()).unwrap();
        assert!(!lip.contains(&xi).unwrap());
        assert!(lip.verify_ring().is_pass());
    }

    #[test]
    fn half_pure_vector_is_not_hurwitz() {
        // (i + j + k)/2 lies outside Hur(Z[sqrt n]).
        let f = QuadraticField::new(3).unwrap();
        let order = Order::named(NamedOrder::Hurwitz, f).unwrap();
        let h = rat(1, 2);
        let v = QuaternionExact::from_rats(f, [rat_int(0), h.clone(), h.clone(), h]);
        assert!(!order.contains(&v).unwrap());
    }

    #[test]
    fn non_ring_lattice_fails_with_witness() {
        // Z + Zi + Zj + Z(k/2): (k/2)^2 = -1/4 is outside.
        let f = fq();
        let basis = vec![
            QuaternionExact::one(f),
            QuaternionExact::i(f),
            QuaternionExact::j(f),
            QuaternionExact::from_rats(f, [rat_int(0), rat_int(0), rat_int(0), rat(1, 2)]),
        ];
        let order = Order::from_zbasis(f, basis.clone(), None).unwrap();
        match order.verify_ring() {
            RingCertificate::ProductOutside { i, j, product } => {
                // First violation in scan order is i * (k/2) = -j/2; the
                // square (k/2)^2 = -1/4 also violates.
                assert_eq!((i, j), (1, 3));
                assert_eq!(
                    product,
                    QuaternionExact::from_rats(f, [rat_int(0), rat_int(0), rat(-1, 2), rat_int(0)])
                );
            }
            other => panic!("expected a product witness, got {other:?}"),
        }
        let sq = &basis[3] * &basis[3];
        assert_eq!(
            sq,
            QuaternionExact::from_rats(f, [rat(-1, 4), rat_int(0), rat_int(0), rat_int(0)])
        );
        assert!(!order.contains(&sq).unwrap());
    }

    #[test]
    fn named_orders_over_quadratic_fields_are_rings() {
        let f2 = QuadraticField::new(2).unwrap();
        let f5 = QuadraticField::new(5).unwrap();
        let f13 = QuadraticField::new(13).unwrap();
        for order in [
            Order::named(NamedOrder::Lipschitz, f2).unwrap(),
            Order::named(NamedOrder::Hurwitz, f2).unwrap(),
            Order::named(NamedOrder::BinaryOctahedral, f2).unwrap(),
            Order::named(NamedOrder::Lipschitz, f5).unwrap(),
            Order::named(NamedOrder::BinaryIcosahedral, f5).unwrap(),
            Order::named(NamedOrder::Hurwitz, f13).unwrap(),
        ] {
            assert_eq!(order.dimension(), 8);
            assert!(order.verify_ring().is_pass(), "order {:?}", order.name());
        }
        assert!(Order::named(NamedOrder::BinaryOctahedral, f5).is_err());
        assert!(Order::named(NamedOrder::BinaryIcosahedral, f2).is_err());
    }

    #[test]
    fn octahedral_contains_hurwitz() {
        let f2 = QuadraticField::new(2).unwrap();
        let oct = Order::named(NamedOrder::BinaryOctahedral, f2).unwrap();
        let hur = Order::named(NamedOrder::Hurwitz, f2).unwrap();
        for b in hur.zbasis() {
            assert!(oct.contains(b).unwrap());
        }
        // Proper containment: eta is not a Hurwitz element.
        let eta = &oct.zbasis()[2];
        assert!(!hur.contains(eta).unwrap());
    }

    #[test]
    fn pure_sublattice_hurwitz_over_q() {
        let order = Order::named(NamedOrder::Hurwitz, fq()).unwrap();
        let pure = order.pure_sublattice();
        assert_eq!(pure.len(), 3);
        assert_eq!(pure[0], QuaternionExact::i(fq()));
        assert_eq!(pure[1], QuaternionExact::j(fq()));
        assert_eq!(pure[2], QuaternionExact::k(fq()));
    }

    #[test]
    fn pure_sublattice_lipschitz_quadratic() {
        let f = QuadraticField::new(2).unwrap();
        let order = Order::named(NamedOrder::Lipschitz, f).unwrap();
        let pure = order.pure_sublattice();
        assert_eq!(pure.len(), 6);
        let theta = QuaternionExact::scalar(f.theta().unwrap());
        let expected = [
            QuaternionExact::i(f),
            &theta * &QuaternionExact::i(f),
            QuaternionExact::j(f),
            &theta * &QuaternionExact::j(f),
            QuaternionExact::k(f),
            &theta * &QuaternionExact::k(f),
        ];
        for (got, want) in pure.iter().zip(expected.iter()) {
            assert_eq!(got, want);
        }
        // Hurwitz over Z[sqrt2] has the same pure lattice.
        let hur = Order::named(NamedOrder::Hurwitz, f).unwrap();
        assert_eq!(hur.pure_sublattice(), pure);
    }

    #[test]
    fn pure_sublattice_octahedral() {
        let f = QuadraticField::new(2).unwrap();
        let oct = Order::named(NamedOrder::BinaryOctahedral, f).unwrap();
        let pure = oct.pure_sublattice();
        assert_eq!(pure.len(), 6);
        for v in &pure {
            assert!(v.is_pure());
            assert!(oct.contains(v).unwrap());
        }
        // Spot-check spanning: every small pure element of the order lies in
        // the span (via exact coordinates in the pure basis).
        let lip_pure = Order::named(NamedOrder::Lipschitz, f)
            .unwrap()
            .pure_sublattice();
        let mat: RatMatrix = pure.iter().map(|q| Order::pure_coords(q)).collect();
        for v in &lip_pure {
            let rhs = Order::pure_coords(v);
            let x = linalg::solve_row_system(&mat, &rhs).unwrap();
            assert!(x.iter().all(|c| c.is_integer()));
        }
    }

    #[test]
    fn lipschitz_units_q8() {
        let order = Order::named(NamedOrder::Lipschitz, fq()).unwrap();
        let group = order.unit_torsion();
        assert_eq!(group.len(), 8);
        assert!(group.verify_closed());
        assert_eq!(group.classify().unwrap(), TorsionClass::BinaryDihedral(2));
        // Brute-force oracle: all +-1, +-i, +-j, +-k.
        let mut expected = Vec::new();
        for idx in 0..4 {
            for sign in [1i64, -1] {
                let mut coords = [0i64; 4];
                coords[idx] = sign;
                expected.push(QuaternionExact::from_ints(fq(), coords));
            }
        }
        expected.sort_by(|a, b| a.canonical_cmp(b));
        assert_eq!(group.elements(), &expected[..]);
    }

    #[test]
    fn hurwitz_units_2t() {
        let order = Order::named(NamedOrder::Hurwitz, fq()).unwrap();
        let group = order.unit_torsion();
        assert_eq!(group.len(), 24);
        assert!(group.verify_closed());
        assert_eq!(group.classify().unwrap(), TorsionClass::BinaryTetrahedral);
        // Exhaustive box oracle over half-integer coordinates.
        let mut expected = 0usize;
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                for c in -2i64..=2 {
                    for d in -2i64..=2 {
                        let q = QuaternionExact::from_rats(
                            fq(),
                            [rat(a, 2), rat(b, 2), rat(c, 2), rat(d, 2)],
                        );
                        if q.nrd().is_one() && order.contains(&q).unwrap() {
                            expected += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(expected, 24);
    }

    #[test]
    fn exceptional_unit_groups() {
        let f2 = QuadraticField::new(2).unwrap();
        let oct = Order::named(NamedOrder::BinaryOctahedral, f2).unwrap();
        let group = oct.unit_torsion();
        assert_eq!(group.len(), 48);
        assert_eq!(group.classify().unwrap(), TorsionClass::BinaryOctahedral);

        let f5 = QuadraticField::new(5).unwrap();
        let ico = Order::named(NamedOrder::BinaryIcosahedral, f5).unwrap();
        let group = ico.unit_torsion();
        assert_eq!(group.len(), 120);
        assert_eq!(group.classify().unwrap(), TorsionClass::BinaryIcosahedral);
    }

    #[test]
    fn hurwitz_units_stay_2t_over_quadratic_fields() {
        for n in [2u64, 13] {
            let f = QuadraticField::new(n).unwrap();
            let order = Order::named(NamedOrder::Hurwitz, f).unwrap();
            let group = order.unit_torsion();
            assert_eq!(group.len(), 24, "n = {n}");
            assert_eq!(group.classify().unwrap(), TorsionClass::BinaryTetrahedral);
        }
    }

    #[test]
    fn torsion_is_galois_stable() {
        let f = QuadraticField::new(2).unwrap();
        let oct = Order::named(NamedOrder::BinaryOctahedral, f).unwrap();
        let group = oct.unit_torsion();
        let keys: BTreeSet<Vec<Rat>> = group.elements().iter().map(TorsionGroup::key).collect();
        for u in group.elements() {
            assert!(keys.contains(&TorsionGroup::key(&u.galois())));
        }
    }

    #[test]
    fn generators_generate() {
        let order = Order::named(NamedOrder::Hurwitz, fq()).unwrap();
        let group = order.unit_torsion();
        let gens = group.generators();
        assert!(group.is_generating_set(&gens));
        // The classical generating set {i, xi, tau}.
        let tau = QuaternionExact::from_rats(
            fq(),
            [rat(1, 2), rat(1, 2), rat(1, 2), rat(-1, 2)],
        );
        let classical = vec![QuaternionExact::i(fq()), QuaternionExact::xi(fq()), tau];
        assert!(group.is_generating_set(&classical));
        // {i, j} generates the Lipschitz units.
        let lip = Order::named(NamedOrder::Lipschitz, fq()).unwrap();
        let lip_group = lip.unit_torsion();
        assert!(lip_group
            .is_generating_set(&[QuaternionExact::i(fq()), QuaternionExact::j(fq())]));
    }
}
