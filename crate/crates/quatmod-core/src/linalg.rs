//! Exact linear algebra helpers: rational Gaussian elimination, integer
//! Hermite normal form and kernels, big-integer matrix algebra, exact
//! characteristic polynomials and small floating-point utilities.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{fmath, Error, Int, Rat, Result};

pub type RatMatrix = Vec<Vec<Rat>>;
pub type IntMatrix = Vec<Vec<Int>>;

pub fn identity_rat(n: usize) -> RatMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect()
}

pub fn identity_int(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect()
}

/// Solves `x * a = b` for a row vector `x` (all matrices row-major).
///
/// Equivalently solves `a^T x^T = b^T`; `a` must be square and invertible.
pub fn solve_row_system(a: &RatMatrix, b: &[Rat]) -> Result<Vec<Rat>> {
    let n = a.len();
    debug_assert!(a.iter().all(|r| r.len() == n) && b.len() == n);
    // Build the augmented transpose [a^T | b^T] and eliminate.
    let mut m: RatMatrix = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = (0..n).map(|j| a[j][i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or(Error::SingularMatrix)?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for j in col..=n {
            m[col][j] = &m[col][j] * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for j in col..=n {
                    let delta = &factor * &m[col][j];
                    m[r][j] = &m[r][j] - &delta;
                }
            }
        }
    }
    Ok(m.into_iter().map(|row| row[row.len() - 1].clone()).collect())
}

/// Inverse of a square rational matrix.
pub fn invert_rat(a: &RatMatrix) -> Result<RatMatrix> {
    let n = a.len();
    let mut m: RatMatrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or(Error::SingularMatrix)?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for j in col..2 * n {
            m[col][j] = &m[col][j] * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for j in col..2 * n {
                    let delta = &factor * &m[col][j];
                    m[r][j] = &m[r][j] - &delta;
                }
            }
        }
    }
    Ok(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Determinant by exact Gaussian elimination.
pub fn det_rat(a: &RatMatrix) -> Rat {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = Rat::one();
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !m[r][col].is_zero()) {
            Some(p) => p,
            None => return Rat::zero(),
        };
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        det = &det * &m[col][col];
        let inv = m[col][col].recip();
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let factor = &m[r][col] * &inv;
                for j in col..n {
                    let delta = &factor * &m[col][j];
                    m[r][j] = &m[r][j] - &delta;
                }
            }
        }
    }
    det
}

pub fn mat_mul_rat(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let n = a.len();
    let p = b[0].len();
    let mut out = vec![vec![Rat::zero(); p]; n];
    for (i, row) in a.iter().enumerate() {
        for (k, aik) in row.iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..p {
                let delta = aik * &b[k][j];
                out[i][j] = &out[i][j] + &delta;
            }
        }
    }
    out
}

pub fn mat_mul_int(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let p = b[0].len();
    let mut out = vec![vec![Int::zero(); p]; n];
    for (i, row) in a.iter().enumerate() {
        for (k, aik) in row.iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..p {
                out[i][j] += aik * &b[k][j];
            }
        }
    }
    out
}

pub fn mat_vec_int(a: &IntMatrix, v: &[Int]) -> Vec<Int> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Integer matrix power for signed exponents. Negative exponents require a
/// unimodular matrix (integral inverse).
pub fn mat_pow_int(m: &IntMatrix, exp: i64) -> Result<IntMatrix> {
    let n = m.len();
    let base = if exp < 0 {
        invert_unimodular(m)?
    } else {
        m.clone()
    };
    let mut acc = identity_int(n);
    let mut e = exp.unsigned_abs();
    let mut sq = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul_int(&acc, &sq);
        }
        sq = mat_mul_int(&sq, &sq);
        e >>= 1;
    }
    Ok(acc)
}

/// Exact inverse of a matrix with determinant +-1.
pub fn invert_unimodular(m: &IntMatrix) -> Result<IntMatrix> {
    let rat_m: RatMatrix = m
        .iter()
        .map(|row| row.iter().map(|v| Rat::from_integer(v.clone())).collect())
        .collect();
    let inv = invert_rat(&rat_m)?;
    rat_to_int(&inv).ok_or(Error::NotInLattice)
}

/// Casts a rational matrix to integers, returning `None` on any non-integer.
pub fn rat_to_int(m: &RatMatrix) -> Option<IntMatrix> {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|v| v.is_integer().then(|| v.to_integer()))
                .collect()
        })
        .collect()
}

/// Characteristic polynomial `det(xI - M)` of an integer matrix, returned as
/// coefficients in ascending degree order (constant term first).
///
/// Faddeev-LeVerrier over exact rationals; the result is always integral.
pub fn charpoly_int(m: &IntMatrix) -> Vec<Int> {
    let n = m.len();
    let rm: RatMatrix = m
        .iter()
        .map(|row| row.iter().map(|v| Rat::from_integer(v.clone())).collect())
        .collect();
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    let mut a = rm.clone();
    for k in 1..=n {
        let trace: Rat = (0..n).map(|i| a[i][i].clone()).sum();
        let c = -(trace / Rat::from_integer(Int::from(k as i64)));
        coeffs[n - k] = c.clone();
        if k < n {
            for (i, row) in a.iter_mut().enumerate() {
                row[i] = &row[i] + &c;
            }
            a = mat_mul_rat(&rm, &a);
        }
    }
    coeffs
        .into_iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect()
}

/// Determinant of an integer matrix (via the characteristic polynomial
/// constant term: `det M = (-1)^n p(0)`).
pub fn det_int(m: &IntMatrix) -> Int {
    let n = m.len();
    let p0 = charpoly_int(m).swap_remove(0);
    if n % 2 == 0 {
        p0
    } else {
        -p0
    }
}

/// Row-style Hermite normal form of an integer matrix whose rows span a
/// lattice. Pivots are positive, entries above a pivot are reduced into
/// `[0, pivot)`, rows are ordered by pivot column and zero rows dropped.
pub fn row_hnf(rows: &IntMatrix) -> IntMatrix {
    let mut m = rows.clone();
    let nrows = m.len();
    if nrows == 0 {
        return m;
    }
    let ncols = m[0].len();
    let mut pivot_row = 0;
    for col in 0..ncols {
        if pivot_row == nrows {
            break;
        }
        clear_column(&mut m, pivot_row, col, ncols);
        if m[pivot_row][col].is_zero() {
            continue;
        }
        if m[pivot_row][col].is_negative() {
            for j in 0..ncols {
                m[pivot_row][j] = -m[pivot_row][j].clone();
            }
        }
        // Reduce the entries above the pivot into [0, pivot).
        for r in 0..pivot_row {
            let q = m[r][col].div_floor(&m[pivot_row][col]);
            if !q.is_zero() {
                for j in 0..ncols {
                    let delta = &q * &m[pivot_row][j];
                    m[r][j] -= delta;
                }
            }
        }
        pivot_row += 1;
    }
    m.truncate(pivot_row);
    m
}

/// Euclidean elimination of one column below `pivot_row`, leaving the
/// column's gcd (or zero) at `pivot_row`.
fn clear_column(m: &mut IntMatrix, pivot_row: usize, col: usize, ncols: usize) {
    let nrows = m.len();
    loop {
        // Smallest nonzero magnitude in the column at or below pivot_row.
        let mut best: Option<usize> = None;
        for r in pivot_row..nrows {
            if !m[r][col].is_zero() {
                best = match best {
                    Some(b) if m[b][col].abs() <= m[r][col].abs() => Some(b),
                    _ => Some(r),
                };
            }
        }
        let Some(b) = best else { break };
        m.swap(pivot_row, b);
        let mut done = true;
        for r in pivot_row + 1..nrows {
            if !m[r][col].is_zero() {
                let q = m[r][col].div_floor(&m[pivot_row][col]);
                for j in 0..ncols {
                    let delta = &q * &m[pivot_row][j];
                    m[r][j] -= delta;
                }
                if !m[r][col].is_zero() {
                    done = false;
                }
            }
        }
        if done {
            break;
        }
    }
}

/// Basis of the integer kernel `{x in Z^k : a x^T = 0}` of a rational matrix
/// `a` given by rows of linear functionals of length `k`.
///
/// Row-reduces `[a^T | I]`; rows whose `a^T` part vanishes carry a kernel
/// basis in the identity part. The result is saturated (a direct summand)
/// and is returned in Hermite normal form.
pub fn int_kernel(a: &[Vec<Rat>]) -> IntMatrix {
    let nrows = a.len();
    if nrows == 0 {
        return Vec::new();
    }
    let ncols = a[0].len();
    // Clear denominators per functional.
    let scaled: IntMatrix = a
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(Int::one(), |acc, v| acc.lcm(v.denom()));
            row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
        })
        .collect();
    // Augmented rows: [value of each functional on e_j | e_j].
    let mut m: IntMatrix = (0..ncols)
        .map(|j| {
            let mut row: Vec<Int> = (0..nrows).map(|i| scaled[i][j].clone()).collect();
            row.extend((0..ncols).map(|t| if t == j { Int::one() } else { Int::zero() }));
            row
        })
        .collect();
    let total = nrows + ncols;
    let mut pivot_row = 0;
    for col in 0..nrows {
        if pivot_row == m.len() {
            break;
        }
        clear_column_from(&mut m, pivot_row, col, total);
        if !m[pivot_row][col].is_zero() {
            pivot_row += 1;
        }
    }
    let kernel: IntMatrix = m
        .into_iter()
        .filter(|row| row[..nrows].iter().all(|v| v.is_zero()))
        .map(|row| row[nrows..].to_vec())
        .collect();
    row_hnf(&kernel)
}

fn clear_column_from(m: &mut IntMatrix, pivot_row: usize, col: usize, ncols: usize) {
    clear_column(m, pivot_row, col, ncols);
}

/// Complex number used only for polynomial root extraction.
#[derive(Debug, Clone, Copy)]
struct C64 {
    re: f64,
    im: f64,
}

impl C64 {
    fn new(re: f64, im: f64) -> Self {
        C64 { re, im }
    }
    fn abs(self) -> f64 {
        fmath::sqrt(self.re * self.re + self.im * self.im)
    }
    fn add(self, o: Self) -> Self {
        C64::new(self.re + o.re, self.im + o.im)
    }
    fn sub(self, o: Self) -> Self {
        C64::new(self.re - o.re, self.im - o.im)
    }
    fn mul(self, o: Self) -> Self {
        C64::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
    fn div(self, o: Self) -> Self {
        let d = o.re * o.re + o.im * o.im;
        C64::new(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )
    }
}

/// Moduli of all complex roots of an integer polynomial (ascending
/// coefficients, constant first), with multiplicity, sorted ascending.
///
/// Repeated roots ruin the convergence of simultaneous iteration, so the
/// polynomial is first split into square-free factors (Yun's algorithm over
/// exact rationals); Durand-Kerner then sees only simple roots.
pub fn root_moduli(coeffs: &[Int]) -> Vec<f64> {
    let p: Vec<Rat> = coeffs
        .iter()
        .map(|v| Rat::from_integer(v.clone()))
        .collect();
    let mut moduli = Vec::new();
    for (factor, mult) in squarefree_factors(&p) {
        for m in durand_kerner_moduli(&factor) {
            for _ in 0..mult {
                moduli.push(m);
            }
        }
    }
    moduli.sort_by(|a, b| a.partial_cmp(b).expect("finite moduli"));
    moduli
}

fn poly_trim(p: &mut Vec<Rat>) {
    while p.len() > 1 && p.last().expect("nonempty").is_zero() {
        p.pop();
    }
}

fn poly_derivative(p: &[Rat]) -> Vec<Rat> {
    if p.len() <= 1 {
        return vec![Rat::zero()];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * Rat::from_integer(Int::from(k as i64)))
        .collect()
}

fn poly_monic(p: &[Rat]) -> Vec<Rat> {
    let lead = p.last().expect("nonempty polynomial");
    if lead.is_zero() || lead.is_one() {
        return p.to_vec();
    }
    let inv = lead.recip();
    p.iter().map(|c| c * &inv).collect()
}

/// Remainder of monic polynomial division.
fn poly_rem(num: &[Rat], den: &[Rat]) -> Vec<Rat> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let lead_inv = den.last().expect("nonempty").recip();
    while r.len() - 1 >= dd && !(r.len() == 1 && r[0].is_zero()) {
        let shift = r.len() - 1 - dd;
        let factor = r.last().expect("nonempty") * &lead_inv;
        for (k, c) in den.iter().enumerate() {
            let delta = &factor * c;
            r[shift + k] = &r[shift + k] - &delta;
        }
        poly_trim(&mut r);
        if r.len() - 1 < dd {
            break;
        }
    }
    r
}

fn poly_div_exact(num: &[Rat], den: &[Rat]) -> Vec<Rat> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let lead_inv = den.last().expect("nonempty").recip();
    let mut q = vec![Rat::zero(); num.len() - dd];
    while r.len() - 1 >= dd && !(r.len() == 1 && r[0].is_zero()) {
        let shift = r.len() - 1 - dd;
        let factor = r.last().expect("nonempty") * &lead_inv;
        q[shift] = factor.clone();
        for (k, c) in den.iter().enumerate() {
            let delta = &factor * c;
            r[shift + k] = &r[shift + k] - &delta;
        }
        poly_trim(&mut r);
        if r.len() - 1 < dd {
            break;
        }
    }
    debug_assert!(r.iter().all(|c| c.is_zero()), "inexact polynomial division");
    q
}

fn poly_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut x = poly_monic(a);
    let mut y = poly_monic(b);
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !(y.len() == 1 && y[0].is_zero()) {
        let mut r = poly_rem(&x, &y);
        poly_trim(&mut r);
        if !(r.len() == 1 && r[0].is_zero()) {
            r = poly_monic(&r);
        }
        x = y;
        y = r;
    }
    x
}

/// Yun's square-free decomposition: returns `(factor, multiplicity)` pairs
/// with each factor monic and square-free.
fn squarefree_factors(p: &[Rat]) -> Vec<(Vec<Rat>, usize)> {
    let mut p = poly_monic(p);
    poly_trim(&mut p);
    if p.len() <= 1 {
        return Vec::new();
    }
    let dp = poly_derivative(&p);
    let g = poly_gcd(&p, &dp);
    if g.len() == 1 {
        return vec![(p, 1)];
    }
    let mut out = Vec::new();
    let mut w = poly_div_exact(&p, &g);
    let mut y = poly_div_exact(&dp, &g);
    let mut mult = 1usize;
    loop {
        // z = y - w'
        let dw = poly_derivative(&w);
        let mut z: Vec<Rat> = (0..y.len().max(dw.len()))
            .map(|k| {
                let a = y.get(k).cloned().unwrap_or_else(Rat::zero);
                let b = dw.get(k).cloned().unwrap_or_else(Rat::zero);
                a - b
            })
            .collect();
        poly_trim(&mut z);
        if z.len() == 1 && z[0].is_zero() {
            if w.len() > 1 {
                out.push((poly_monic(&w), mult));
            }
            break;
        }
        let f = poly_gcd(&w, &z);
        if f.len() > 1 {
            out.push((f.clone(), mult));
        }
        w = poly_div_exact(&w, &f);
        y = poly_div_exact(&z, &f);
        mult += 1;
        if w.len() == 1 {
            break;
        }
    }
    out
}

/// Durand-Kerner on a square-free rational polynomial; returns root moduli.
fn durand_kerner_moduli(p: &[Rat]) -> Vec<f64> {
    let n = p.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = p[n].to_f64().unwrap_or(1.0);
    let c: Vec<f64> = p.iter().map(|v| v.to_f64().unwrap_or(0.0) / lead).collect();
    let eval = |z: C64| -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for k in (0..=n).rev() {
            acc = acc.mul(z).add(C64::new(c[k], 0.0));
        }
        acc
    };
    let radius = 1.0 + c[..n].iter().fold(0.0f64, |m, v| m.max(fmath::abs(*v)));
    let mut roots: Vec<C64> = (0..n)
        .map(|k| {
            // Non-real, non-symmetric starting angles.
            let angle = 2.0 * core::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            C64::new(radius * fcos(angle), radius * fsin(angle))
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let mut denom = C64::new(1.0, 0.0);
            for l in 0..n {
                if l != k {
                    denom = denom.mul(roots[k].sub(roots[l]));
                }
            }
            let delta = eval(roots[k]).div(denom);
            roots[k] = roots[k].sub(delta);
            moved = moved.max(delta.abs());
        }
        if moved < 1e-14 {
            break;
        }
    }
    roots.iter().map(|z| z.abs()).collect()
}

#[cfg(feature = "std")]
fn fcos(x: f64) -> f64 {
    x.cos()
}
#[cfg(feature = "std")]
fn fsin(x: f64) -> f64 {
    x.sin()
}
#[cfg(not(feature = "std"))]
fn fcos(x: f64) -> f64 {
    libm::cos(x)
}
#[cfg(not(feature = "std"))]
fn fsin(x: f64) -> f64 {
    libm::sin(x)
}

/// `l-infinity` condition estimate of a small square matrix; `inf` when
/// numerically singular.
pub fn condition_estimate(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    let norm = |m: &[Vec<f64>]| -> f64 {
        m.iter()
            .map(|row| row.iter().map(|v| fmath::abs(*v)).sum::<f64>())
            .fold(0.0, f64::max)
    };
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| {
                fmath::abs(m[x][col])
                    .partial_cmp(&fmath::abs(m[y][col]))
                    .expect("finite entries")
            })
            .expect("nonempty range");
        if fmath::abs(m[pivot][col]) < 1e-300 {
            return f64::INFINITY;
        }
        m.swap(col, pivot);
        let inv = 1.0 / m[col][col];
        for j in 0..2 * n {
            m[col][j] *= inv;
        }
        for r in 0..n {
            if r != col {
                let f = m[r][col];
                if f != 0.0 {
                    for j in 0..2 * n {
                        m[r][j] -= f * m[col][j];
                    }
                }
            }
        }
    }
    let inv: Vec<Vec<f64>> = m.into_iter().map(|row| row[n..].to_vec()).collect();
    norm(a) * norm(&inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};

    fn int_mat(rows: &[&[i64]]) -> IntMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&v| Int::from(v)).collect())
            .collect()
    }

    #[test]
    fn solve_and_invert() {
        let a: RatMatrix = vec![vec![rat_int(2), rat_int(1)], vec![rat_int(1), rat_int(1)]];
        let b = vec![rat_int(5), rat_int(3)];
        // x * a = b has solution x = (2, 1): 2*row0 + 1*row1 = (5, 3).
        let x = solve_row_system(&a, &b).unwrap();
        assert_eq!(x, vec![rat_int(2), rat_int(1)]);
        let inv = invert_rat(&a).unwrap();
        let prod = mat_mul_rat(&a, &inv);
        assert_eq!(prod, identity_rat(2));
        assert_eq!(det_rat(&a), rat_int(1));
        let singular: RatMatrix = vec![vec![rat_int(1), rat_int(2)], vec![rat_int(2), rat_int(4)]];
        assert!(invert_rat(&singular).is_err());
        assert_eq!(det_rat(&singular), rat_int(0));
    }

    #[test]
    fn hnf_canonical_form() {
        let m = int_mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let h = row_hnf(&m);
        let mut last_pivot = None;
        for row in &h {
            let p = row.iter().position(|v| !v.is_zero()).expect("nonzero row");
            assert!(row[p].is_positive());
            if let Some(lp) = last_pivot {
                assert!(p > lp);
            }
            last_pivot = Some(p);
        }
        // Idempotent.
        assert_eq!(row_hnf(&h), h);
    }

    #[test]
    fn kernel_of_simple_map() {
        // Kernel of x |-> (x0 + x1, x2) is spanned by (1, -1, 0) up to sign.
        let a: Vec<Vec<Rat>> = vec![
            vec![rat_int(1), rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(0), rat_int(1)],
        ];
        let k = int_kernel(&a);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(&v[0] + &v[1], Int::zero());
        assert_eq!(v[2], Int::zero());
        assert_eq!(v[0].abs(), Int::one());
    }

    #[test]
    fn kernel_with_denominators() {
        // Functional x0/2 + x1/3 over Z^2: saturated kernel (2, -3).
        let a: Vec<Vec<Rat>> = vec![vec![rat(1, 2), rat(1, 3)]];
        let k = int_kernel(&a);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0].abs(), Int::from(2));
        assert_eq!(&k[0][0] * Int::from(3) + &k[0][1] * Int::from(2), Int::zero());
    }

    #[test]
    fn charpoly_block() {
        // [[3,4],[2,3]] has charpoly x^2 - 6x + 1.
        let m = int_mat(&[&[3, 4], &[2, 3]]);
        assert_eq!(
            charpoly_int(&m),
            vec![Int::from(1), Int::from(-6), Int::from(1)]
        );
        assert_eq!(det_int(&m), Int::one());
        let id = identity_int(3);
        assert_eq!(det_int(&id), Int::one());
    }

    #[test]
    fn matrix_power_signed() {
        let m = int_mat(&[&[3, 4], &[2, 3]]);
        let m2 = mat_pow_int(&m, 2).unwrap();
        assert_eq!(m2, mat_mul_int(&m, &m));
        let minv = mat_pow_int(&m, -1).unwrap();
        assert_eq!(mat_mul_int(&m, &minv), identity_int(2));
        let m0 = mat_pow_int(&m, 0).unwrap();
        assert_eq!(m0, identity_int(2));
    }

    #[test]
    fn roots_of_quadratic_cubed() {
        // (x^2 - 3x + 1)^3: roots (3 +- sqrt5)/2, each three times.
        let coeffs: Vec<Int> = [1, -9, 30, -45, 30, -9, 1]
            .iter()
            .map(|&v| Int::from(v))
            .collect();
        let moduli = root_moduli(&coeffs);
        assert_eq!(moduli.len(), 6);
        let lo = (3.0 - 5f64.sqrt()) / 2.0;
        let hi = (3.0 + 5f64.sqrt()) / 2.0;
        for m in &moduli[..3] {
            assert!((m - lo).abs() < 1e-8, "modulus {m}");
        }
        for m in &moduli[3..] {
            assert!((m - hi).abs() < 1e-8, "modulus {m}");
        }
    }

    #[test]
    fn repeated_unit_circle_roots_are_resolved() {
        // (x - 1)^3 (x - 2)^3 = (x^2 - 3x + 2)^3; the triple root at 1 must
        // come out with full precision despite its multiplicity.
        let coeffs: Vec<Int> = [8, -36, 66, -63, 33, -9, 1]
            .iter()
            .map(|&v| Int::from(v))
            .collect();
        let moduli = root_moduli(&coeffs);
        assert_eq!(moduli.len(), 6);
        for m in &moduli[..3] {
            assert!((m - 1.0).abs() < 1e-12, "modulus {m}");
        }
        for m in &moduli[3..] {
            assert!((m - 2.0).abs() < 1e-12, "modulus {m}");
        }
    }

    #[test]
    fn condition_of_identity() {
        let id = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert!((condition_estimate(&id) - 1.0).abs() < 1e-12);
        let sing = vec![vec![1.0, 1.0], vec![1.0, 1.0]];
        assert!(condition_estimate(&sing) > 1e12);
    }
}
