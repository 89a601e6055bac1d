//! Exact linear algebra over the field of rational functions.
//!
//! Determinants use Bareiss elimination; solves, ranks and kernels use
//! Gauss-Jordan elimination pivoting on the first nonzero entry of each
//! column. Both are deterministic.

use num_traits::{One, Signed, Zero};

use super::{Rational, RationalFn};
use crate::error::{Error, Result};

/// Dense row-major matrix of rational functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    nrows: usize,
    ncols: usize,
    nvars: usize,
    data: Vec<RationalFn>,
}

impl Matrix {
    pub fn zeros(nrows: usize, ncols: usize, nvars: usize) -> Self {
        Matrix {
            nrows,
            ncols,
            nvars,
            data: vec![RationalFn::zero(nvars); nrows * ncols],
        }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        Self::from_fn(n, n, nvars, |i, j| {
            if i == j {
                RationalFn::one(nvars)
            } else {
                RationalFn::zero(nvars)
            }
        })
    }

    pub fn from_fn(
        nrows: usize,
        ncols: usize,
        nvars: usize,
        mut f: impl FnMut(usize, usize) -> RationalFn,
    ) -> Self {
        let mut data = Vec::with_capacity(nrows * ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                data.push(f(i, j));
            }
        }
        Matrix {
            nrows,
            ncols,
            nvars,
            data,
        }
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<RationalFn>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::ShapeMismatch("ragged matrix rows".into()));
        }
        Ok(Matrix {
            nrows,
            ncols,
            nvars,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(nvars: usize, nrows: usize, cols: &[Vec<RationalFn>]) -> Self {
        Self::from_fn(nrows, cols.len(), nvars, |i, j| cols[j][i].clone())
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalFn {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RationalFn) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<RationalFn> {
        self.data[i * self.ncols..(i + 1) * self.ncols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<RationalFn> {
        (0..self.nrows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<RationalFn>> {
        (0..self.nrows).map(|i| self.row(i)).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &RationalFn)> {
        let ncols = self.ncols;
        self.data
            .iter()
            .enumerate()
            .map(move |(k, v)| ((k / ncols, k % ncols), v))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RationalFn::is_zero)
    }

    /// First entry that differs from `other`, with the difference.
    pub fn first_difference(&self, other: &Matrix) -> Option<((usize, usize), RationalFn)> {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        self.entries().find_map(|((i, j), a)| {
            let d = a - other.get(i, j);
            (!d.is_zero()).then_some(((i, j), d))
        })
    }

    pub fn transpose(&self) -> Matrix {
        Self::from_fn(self.ncols, self.nrows, self.nvars, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.ncols, rhs.nrows, "matrix product shape mismatch");
        Self::from_fn(self.nrows, rhs.ncols, self.nvars, |i, j| {
            let mut acc = RationalFn::zero(self.nvars);
            for k in 0..self.ncols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let b = rhs.get(k, j);
                if b.is_zero() {
                    continue;
                }
                acc += &(a * b);
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[RationalFn]) -> Vec<RationalFn> {
        assert_eq!(self.ncols, v.len());
        (0..self.nrows)
            .map(|i| {
                let mut acc = RationalFn::zero(self.nvars);
                for (k, vk) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_zero() && !vk.is_zero() {
                        acc += &(a * vk);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        Self::from_fn(self.nrows, self.ncols, self.nvars, |i, j| {
            self.get(i, j) + rhs.get(i, j)
        })
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        Self::from_fn(self.nrows, self.ncols, self.nvars, |i, j| {
            self.get(i, j) - rhs.get(i, j)
        })
    }

    pub fn scale(&self, c: &RationalFn) -> Matrix {
        Self::from_fn(self.nrows, self.ncols, self.nvars, |i, j| self.get(i, j) * c)
    }

    pub fn neg(&self) -> Matrix {
        Self::from_fn(self.nrows, self.ncols, self.nvars, |i, j| -self.get(i, j))
    }

    /// Outer product `u vᵀ`.
    pub fn outer(u: &[RationalFn], v: &[RationalFn]) -> Matrix {
        let nvars = u.first().or(v.first()).map_or(0, RationalFn::nvars);
        Self::from_fn(u.len(), v.len(), nvars, |i, j| &u[i] * &v[j])
    }

    /// `uᵀ M v`.
    pub fn bilinear(&self, u: &[RationalFn], v: &[RationalFn]) -> RationalFn {
        let mv = self.mul_vec(v);
        let mut acc = RationalFn::zero(self.nvars);
        for (a, b) in u.iter().zip(&mv) {
            if !a.is_zero() && !b.is_zero() {
                acc += &(a * b);
            }
        }
        acc
    }

    pub fn trace(&self) -> RationalFn {
        let mut acc = RationalFn::zero(self.nvars);
        for i in 0..self.nrows.min(self.ncols) {
            acc += self.get(i, i);
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && self.first_difference(&self.transpose()).is_none()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.ncols {
            self.data.swap(a * self.ncols + j, b * self.ncols + j);
        }
    }

    pub fn map(&self, f: impl Fn(&RationalFn) -> RationalFn) -> Matrix {
        Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            nvars: self.nvars,
            data: self.data.iter().map(f).collect(),
        }
    }
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(m: &Matrix) -> RationalFn {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.nrows();
    let nvars = m.nvars();
    if n == 0 {
        return RationalFn::one(nvars);
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = RationalFn::one(nvars);
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                Some(i) => {
                    a.swap_rows(i, k);
                    negate = !negate;
                }
                None => return RationalFn::zero(nvars),
            }
        }
        let pivot = a.get(k, k).clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&(&pivot * a.get(i, j)) - &(a.get(i, k) * a.get(k, j))) / &prev;
                a.set(i, j, v);
            }
        }
        prev = pivot;
    }
    let det = a.get(n - 1, n - 1).clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Reduced row echelon form over the first `ncols_pivot` columns; returns
/// the pivot columns in row order.
fn rref(a: &mut Matrix, ncols_pivot: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols_pivot {
        if r == a.nrows() {
            break;
        }
        let Some(p) = (r..a.nrows()).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        let inv = a.get(r, c).recip().expect("pivot is nonzero");
        for j in 0..a.ncols() {
            if j == c {
                a.set(r, j, RationalFn::one(a.nvars()));
            } else if !a.get(r, j).is_zero() {
                let v = a.get(r, j) * &inv;
                a.set(r, j, v);
            }
        }
        for i in 0..a.nrows() {
            if i == r || a.get(i, c).is_zero() {
                continue;
            }
            let f = a.get(i, c).clone();
            for j in 0..a.ncols() {
                let rj = a.get(r, j);
                if rj.is_zero() {
                    continue;
                }
                let v = a.get(i, j) - &(&f * rj);
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    rref(&mut a, m.ncols()).len()
}

/// Solves `m x = rhs`. Free variables of an underdetermined system are set
/// to zero.
pub fn linear_solve(m: &Matrix, rhs: &[RationalFn]) -> Result<Vec<RationalFn>> {
    assert_eq!(m.nrows(), rhs.len(), "right-hand side length mismatch");
    let n = m.ncols();
    let mut aug = Matrix::from_fn(m.nrows(), n + 1, m.nvars(), |i, j| {
        if j < n {
            m.get(i, j).clone()
        } else {
            rhs[i].clone()
        }
    });
    let pivots = rref(&mut aug, n);
    for i in pivots.len()..aug.nrows() {
        if !aug.get(i, n).is_zero() {
            return Err(Error::SingularSystem);
        }
    }
    if m.is_square() && pivots.len() < n {
        return Err(Error::SingularSystem);
    }
    let mut x = vec![RationalFn::zero(m.nvars()); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug.get(r, n).clone();
    }
    Ok(x)
}

pub fn inverse(m: &Matrix) -> Result<Matrix> {
    assert!(m.is_square());
    let n = m.nrows();
    let mut aug = Matrix::from_fn(n, 2 * n, m.nvars(), |i, j| {
        if j < n {
            m.get(i, j).clone()
        } else if j - n == i {
            RationalFn::one(m.nvars())
        } else {
            RationalFn::zero(m.nvars())
        }
    });
    if rref(&mut aug, n).len() < n {
        return Err(Error::SingularSystem);
    }
    Ok(Matrix::from_fn(n, n, m.nvars(), |i, j| {
        aug.get(i, j + n).clone()
    }))
}

/// Basis of the right kernel, one vector per free column in column order,
/// each scaled to polynomial primitive form.
pub fn null_space(m: &Matrix) -> Vec<Vec<RationalFn>> {
    let mut a = m.clone();
    let pivots = rref(&mut a, m.ncols());
    let nvars = m.nvars();
    (0..m.ncols())
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![RationalFn::zero(nvars); m.ncols()];
            v[free] = RationalFn::one(nvars);
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a.get(r, free);
            }
            primitive_vector(v)
        })
        .collect()
}

/// Rescales a vector by a nonzero function so that its components are
/// polynomials with no common monomial factor, coprime integer
/// coefficients, and a positive leading coefficient in the first nonzero
/// component.
pub fn primitive_vector(mut v: Vec<RationalFn>) -> Vec<RationalFn> {
    let Some(nvars) = v.first().map(RationalFn::nvars) else {
        return v;
    };
    let mut seen: Vec<super::MultiPoly> = Vec::new();
    for i in 0..v.len() {
        let den = v[i].denom().clone();
        if den.is_constant() || seen.contains(&den) {
            continue;
        }
        let d = RationalFn::from_poly(den.clone());
        for c in v.iter_mut() {
            *c = &*c * &d;
        }
        seen.push(den);
    }
    if v.iter().any(|c| !c.is_polynomial()) {
        return v;
    }
    let polys: Vec<super::MultiPoly> = v
        .iter()
        .map(|c| {
            let d = c.denom().constant_value().expect("constant denominator");
            c.numer().scale(&d.recip())
        })
        .collect();
    let mut mono: Option<super::Monomial> = None;
    let mut lcm = num_bigint::BigInt::one();
    let mut gcd = num_bigint::BigInt::zero();
    for p in polys.iter().filter(|p| !p.is_zero()) {
        let m = p.monomial_content().expect("nonzero");
        mono = Some(match mono {
            None => m,
            Some(acc) => acc.meet(&m),
        });
        lcm = num_integer::Integer::lcm(&lcm, &p.coefficient_denominator_lcm());
    }
    let Some(mono) = mono else {
        return v;
    };
    let scaled: Vec<super::MultiPoly> = polys
        .iter()
        .map(|p| p.div_monomial(&mono).scale(&Rational::from_integer(lcm.clone())))
        .collect();
    for p in &scaled {
        gcd = num_integer::Integer::gcd(&gcd, &p.coefficient_numerator_gcd());
    }
    let mut factor = Rational::from_integer(gcd).recip();
    let lead_negative = scaled
        .iter()
        .find(|p| !p.is_zero())
        .and_then(|p| p.leading_term())
        .is_some_and(|(_, c)| c.is_negative());
    if lead_negative {
        factor = -factor;
    }
    let _ = nvars;
    scaled
        .iter()
        .map(|p| RationalFn::from_poly(p.scale(&factor)))
        .collect()
}

/// Signature of a nonsingular symmetric rational matrix via symmetric
/// elimination. A block with zero diagonal is fixed up by the congruence
/// `e_i → e_i + e_j`, which makes the new diagonal entry `2 a_ij`.
pub fn signature(m: &[Vec<Rational>]) -> Result<(usize, usize)> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut alive: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0, 0);
    while !alive.is_empty() {
        let pivot = match alive.iter().copied().find(|&i| !a[i][i].is_zero()) {
            Some(p) => p,
            None => {
                let pair = alive.iter().copied().find_map(|i| {
                    alive
                        .iter()
                        .copied()
                        .find(|&j| j != i && !a[i][j].is_zero())
                        .map(|j| (i, j))
                });
                let Some((i, j)) = pair else {
                    return Err(Error::SingularAtPoint);
                };
                for &k in &alive {
                    let v = &a[i][k] + &a[j][k];
                    a[i][k] = v;
                }
                for &k in &alive {
                    let v = &a[k][i] + &a[k][j];
                    a[k][i] = v;
                }
                if a[i][i].is_zero() {
                    return Err(Error::SingularAtPoint);
                }
                i
            }
        };
        let d = a[pivot][pivot].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        alive.retain(|&k| k != pivot);
        for &i in &alive {
            if a[i][pivot].is_zero() {
                continue;
            }
            let f = &a[i][pivot] / &d;
            for &j in &alive {
                let v = &a[i][j] - &(&f * &a[pivot][j]);
                a[i][j] = v;
            }
        }
    }
    Ok((pos, neg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn c(n: i64) -> RationalFn {
        RationalFn::from_int(3, n)
    }

    fn q(n: i64, d: i64) -> RationalFn {
        RationalFn::from_ratio(3, n, d)
    }

    fn y() -> RationalFn {
        RationalFn::var(3, 1)
    }

    /// Laplace expansion along the first row.
    fn cofactor_det(m: &Matrix) -> RationalFn {
        let n = m.nrows();
        if n == 0 {
            return RationalFn::one(m.nvars());
        }
        let mut acc = RationalFn::zero(m.nvars());
        for j in 0..n {
            let minor = Matrix::from_fn(n - 1, n - 1, m.nvars(), |r, s| {
                m.get(r + 1, if s < j { s } else { s + 1 }).clone()
            });
            let term = m.get(0, j) * &cofactor_det(&minor);
            if j % 2 == 0 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        acc
    }

    fn standard_metric() -> Matrix {
        Matrix::from_rows(
            3,
            vec![
                vec![y().pow(2), q(1, 2), -y()],
                vec![q(1, 2), c(0), c(0)],
                vec![-y(), c(0), c(1)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&Matrix::identity(3, 3)), c(1));
        assert_eq!(determinant(&standard_metric()), q(-1, 4));
        assert_eq!(cofactor_det(&standard_metric()), q(-1, 4));
        let twin = Matrix::from_rows(
            3,
            vec![
                vec![y(), c(2), c(3)],
                vec![y(), c(2), c(3)],
                vec![c(1), y(), c(0)],
            ],
        )
        .unwrap();
        assert!(determinant(&twin).is_zero());
    }

    #[test]
    fn determinant_needs_row_swap() {
        let m = Matrix::from_rows(
            3,
            vec![
                vec![c(0), c(1), y()],
                vec![c(1), c(0), c(0)],
                vec![y(), y(), c(1)],
            ],
        )
        .unwrap();
        assert_eq!(determinant(&m), cofactor_det(&m));
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::identity(3, 3);
        let rhs = vec![c(1), y(), c(0)];
        assert_eq!(linear_solve(&id, &rhs).unwrap(), rhs);
        let swap = Matrix::from_rows(3, vec![vec![c(0), c(1)], vec![c(1), c(0)]]).unwrap();
        let x = RationalFn::var(3, 0);
        assert_eq!(
            linear_solve(&swap, &[x.clone(), y()]).unwrap(),
            vec![y(), x]
        );
        let sing = Matrix::from_rows(3, vec![vec![y(), c(1)], vec![y(), c(1)]]).unwrap();
        assert_eq!(
            linear_solve(&sing, &[c(1), c(2)]),
            Err(Error::SingularSystem)
        );
    }

    #[test]
    fn kernel_examples() {
        let zero = Matrix::zeros(2, 2, 3);
        assert_eq!(
            null_space(&zero),
            vec![vec![c(1), c(0)], vec![c(0), c(1)]]
        );
        // psi -/+ I for the standard three-dimensional structure
        let psi = Matrix::from_rows(
            3,
            vec![
                vec![c(-1), c(0), c(0)],
                vec![c(0), c(1), c(0)],
                vec![-y(), c(0), c(0)],
            ],
        )
        .unwrap();
        let id = Matrix::identity(3, 3);
        assert_eq!(null_space(&psi.sub(&id)), vec![vec![c(0), c(1), c(0)]]);
        assert_eq!(null_space(&psi.add(&id)), vec![vec![c(1), c(0), y()]]);
        assert!(null_space(&id).is_empty());
    }

    #[test]
    fn inverse_roundtrip() {
        let g = standard_metric();
        let gi = inverse(&g).unwrap();
        assert_eq!(g.mul(&gi), Matrix::identity(3, 3));
    }

    fn rq(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn signature_examples() {
        let g0 = vec![
            vec![rq(0, 1), rq(1, 2), rq(0, 1)],
            vec![rq(1, 2), rq(0, 1), rq(0, 1)],
            vec![rq(0, 1), rq(0, 1), rq(1, 1)],
        ];
        assert_eq!(signature(&g0).unwrap(), (2, 1));
        let id: Vec<Vec<Rational>> = (0..3)
            .map(|i| (0..3).map(|j| rq((i == j) as i64, 1)).collect())
            .collect();
        assert_eq!(signature(&id).unwrap(), (3, 0));
        let d = vec![
            vec![rq(1, 1), rq(0, 1), rq(0, 1)],
            vec![rq(0, 1), rq(-1, 1), rq(0, 1)],
            vec![rq(0, 1), rq(0, 1), rq(-1, 1)],
        ];
        assert_eq!(signature(&d).unwrap(), (1, 2));
        let sing = vec![vec![rq(0, 1), rq(0, 1)], vec![rq(0, 1), rq(1, 1)]];
        assert_eq!(signature(&sing), Err(Error::SingularAtPoint));
    }
}
