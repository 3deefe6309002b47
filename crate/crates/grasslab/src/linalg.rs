//! Dense exact linear algebra, generic over the coefficient field.

use crate::exprcore::{Expr, Rat};

/// Errors raised by linear solvers.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("linear system is underdetermined")]
    Underdetermined,
    #[error("matrix is singular")]
    Singular,
}

/// Exact field operations. `zero_like`/`one_like` take a witness so types
/// carrying context (a variable table) can produce constants.
pub trait Field: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Division by a nonzero element; callers must check `is_zero` first.
    fn div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Rough size measure used to pick small pivots.
    fn pivot_cost(&self) -> usize {
        1
    }
}

impl Field for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn pivot_cost(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
}

impl Field for Expr {
    fn zero_like(&self) -> Self {
        Expr::zero(self.vars())
    }
    fn one_like(&self) -> Self {
        Expr::one(self.vars())
    }
    fn is_zero(&self) -> bool {
        Expr::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        Expr::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Expr::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Expr::mul(self, other)
    }
    fn div(&self, other: &Self) -> Self {
        self.checked_div(other)
            .expect("matrix pivot must be nonzero")
    }
    fn neg(&self) -> Self {
        Expr::neg(self)
    }
    fn pivot_cost(&self) -> usize {
        self.num().num_terms() + self.den().num_terms()
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row);
        }
        Self { rows: r, cols: c, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros_like(rows: usize, cols: usize, like: &T) -> Self {
        Self::from_fn(rows, cols, |_, _| like.zero_like())
    }

    pub fn identity_like(n: usize, like: &T) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                like.one_like()
            } else {
                like.zero_like()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// A witness element for building constants; panics on an empty matrix.
    fn witness(&self) -> &T {
        self.data.first().expect("empty matrix has no field witness")
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn map<U: Field>(&self, mut f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(&mut f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|x| x.mul(k))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let zero = self.witness().zero_like();
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = zero.clone();
            for k in 0..self.cols {
                acc = acc.add(&self.at(i, k).mul(other.at(k, j)));
            }
            acc
        })
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        let zero = self.witness().zero_like();
        (0..self.rows)
            .map(|i| {
                let mut acc = zero.clone();
                for k in 0..self.cols {
                    acc = acc.add(&self.at(i, k).mul(&v[k]));
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Fraction-free determinant (Bareiss). Exact over any field; divisions
    /// cancel exactly, which keeps intermediate entries small.
    pub fn det_bareiss(&self) -> Result<T, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::NotSquare);
        }
        let n = self.rows;
        if n == 0 {
            return Err(LinAlgError::DimensionMismatch("empty matrix".into()));
        }
        let mut a = self.clone();
        let one = a.witness().one_like();
        let mut prev = one.clone();
        let mut sign_flip = false;
        for k in 0..n - 1 {
            if a.at(k, k).is_zero() {
                // Swap in a nonzero pivot from below; all zero means det 0.
                let Some(r) = (k + 1..n).find(|&r| !a.at(r, k).is_zero()) else {
                    return Ok(one.zero_like());
                };
                a.swap_rows(k, r);
                sign_flip = !sign_flip;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a
                        .at(k, k)
                        .mul(a.at(i, j))
                        .sub(&a.at(i, k).mul(a.at(k, j)));
                    a.set(i, j, num.div(&prev));
                }
            }
            for i in k + 1..n {
                a.set(i, k, one.zero_like());
            }
            prev = a.at(k, k).clone();
        }
        let det = a.at(n - 1, n - 1).clone();
        Ok(if sign_flip { det.neg() } else { det })
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// Rank via fraction-free (Bareiss) forward elimination.
    pub fn rank_bareiss(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let mut a = self.clone();
        let one = a.witness().one_like();
        let mut prev = one;
        let mut pivot_row = 0;
        for col in 0..a.cols {
            if pivot_row == a.rows {
                break;
            }
            // Cheapest nonzero pivot in this column keeps entries small.
            let Some(r) = (pivot_row..a.rows)
                .filter(|&r| !a.at(r, col).is_zero())
                .min_by_key(|&r| a.at(r, col).pivot_cost())
            else {
                continue;
            };
            a.swap_rows(pivot_row, r);
            for i in pivot_row + 1..a.rows {
                for j in col + 1..a.cols {
                    let num = a
                        .at(pivot_row, col)
                        .mul(a.at(i, j))
                        .sub(&a.at(i, col).mul(a.at(pivot_row, j)));
                    a.set(i, j, num.div(&prev));
                }
                a.set(i, col, a.witness().zero_like());
            }
            prev = a.at(pivot_row, col).clone();
            pivot_row += 1;
        }
        pivot_row
    }

    /// Reduced row echelon form; returns the pivot column indices.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        if self.rows == 0 || self.cols == 0 {
            return pivots;
        }
        let mut pr = 0;
        for col in 0..self.cols {
            if pr == self.rows {
                break;
            }
            let Some(r) = (pr..self.rows)
                .filter(|&r| !self.at(r, col).is_zero())
                .min_by_key(|&r| self.at(r, col).pivot_cost())
            else {
                continue;
            };
            self.swap_rows(pr, r);
            let inv_head = self.at(pr, col).clone();
            for j in col..self.cols {
                let v = self.at(pr, j).div(&inv_head);
                self.set(pr, j, v);
            }
            for i in 0..self.rows {
                if i == pr || self.at(i, col).is_zero() {
                    continue;
                }
                let factor = self.at(i, col).clone();
                for j in col..self.cols {
                    let v = self.at(i, j).sub(&factor.mul(self.at(pr, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(col);
            pr += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        a.rref_in_place().len()
    }

    /// Gauss-Jordan inverse; errors when singular or not square.
    pub fn inverse(&self) -> Result<Self, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::NotSquare);
        }
        let n = self.rows;
        if n == 0 {
            return Err(LinAlgError::DimensionMismatch("empty matrix".into()));
        }
        let like = self.witness().clone();
        let mut aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.at(i, j).clone()
            } else if j - n == i {
                like.one_like()
            } else {
                like.zero_like()
            }
        });
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots.iter().enumerate().any(|(k, &c)| c != k) {
            return Err(LinAlgError::Singular);
        }
        Ok(Matrix::from_fn(n, n, |i, j| aug.at(i, n + j).clone()))
    }

    /// Solves `self * X = rhs` exactly, requiring a unique solution.
    /// Overdetermined consistent systems are fine; inconsistency and free
    /// variables are reported as errors.
    pub fn solve_unique(&self, rhs: &Self) -> Result<Self, LinAlgError> {
        if rhs.rows != self.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "lhs has {} rows, rhs has {}",
                self.rows, rhs.rows
            )));
        }
        if self.rows == 0 || self.cols == 0 {
            return Err(LinAlgError::DimensionMismatch("empty system".into()));
        }
        let n = self.cols;
        let k = rhs.cols;
        let mut aug = Matrix::from_fn(self.rows, n + k, |i, j| {
            if j < n {
                self.at(i, j).clone()
            } else {
                rhs.at(i, j - n).clone()
            }
        });
        let pivots = aug.rref_in_place();
        // A pivot in the rhs block marks an inconsistent row.
        if pivots.iter().any(|&c| c >= n) {
            return Err(LinAlgError::Inconsistent);
        }
        if pivots.len() < n {
            return Err(LinAlgError::Underdetermined);
        }
        let like = self.witness().clone();
        let mut out = Matrix::zeros_like(n, k, &like);
        for (row, &col) in pivots.iter().enumerate() {
            for j in 0..k {
                out.set(col, j, aug.at(row, n + j).clone());
            }
        }
        Ok(out)
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        if self.rows == 0 || self.cols == 0 {
            return Vec::new();
        }
        let mut a = self.clone();
        let pivots = a.rref_in_place();
        let like = self.witness().clone();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut vec = vec![like.zero_like(); self.cols];
            vec[free] = like.one_like();
            for (row, &col) in pivots.iter().enumerate() {
                vec[col] = a.at(row, free).neg();
            }
            basis.push(vec);
        }
        basis
    }
}

/// Determinant of a 3x3 matrix by cofactor expansion.
pub fn det3<T: Field>(m: &Matrix<T>) -> T {
    assert!(m.rows() == 3 && m.cols() == 3, "det3 needs a 3x3 matrix");
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
        m.at(r0, c0).mul(m.at(r1, c1)).sub(&m.at(r0, c1).mul(m.at(r1, c0)))
    };
    m.at(0, 0)
        .mul(&minor(1, 2, 1, 2))
        .sub(&m.at(0, 1).mul(&minor(1, 2, 0, 2)))
        .add(&m.at(0, 2).mul(&minor(1, 2, 0, 1)))
}

/// Adjugate of a 3x3 matrix, so that m * adj(m) = det(m) * id.
pub fn adjugate3<T: Field>(m: &Matrix<T>) -> Matrix<T> {
    assert!(m.rows() == 3 && m.cols() == 3, "adjugate3 needs a 3x3 matrix");
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
        m.at(r0, c0).mul(m.at(r1, c1)).sub(&m.at(r0, c1).mul(m.at(r1, c0)))
    };
    let rows_of = |skip: usize| -> (usize, usize) {
        match skip {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        }
    };
    Matrix::from_fn(3, 3, |i, j| {
        // adj(i, j) is the (j, i) cofactor.
        let (r0, r1) = rows_of(j);
        let (c0, c1) = rows_of(i);
        let v = minor(r0, r1, c0, c1);
        if (i + j) % 2 == 0 {
            v
        } else {
            v.neg()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprcore::{parse_expr, Vars};

    fn rm(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rat::from_int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn bareiss_determinant() {
        let m = rm(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        assert_eq!(m.det_bareiss().unwrap(), Rat::from_int(-3));
        let singular = rm(&[&[1, 2], &[2, 4]]);
        assert!(singular.det_bareiss().unwrap().is_zero());
        // Zero leading pivot forces a row swap.
        let swapped = rm(&[&[0, 1], &[1, 0]]);
        assert_eq!(swapped.det_bareiss().unwrap(), Rat::from_int(-1));
    }

    #[test]
    fn symbolic_vandermonde_determinant() {
        let v = Vars::new(&["a", "b", "p"]).unwrap();
        let e = |s: &str| parse_expr(&v, s).unwrap();
        let m = Matrix::from_rows(vec![
            vec![e("1"), e("a"), e("a^2")],
            vec![e("1"), e("b"), e("b^2")],
            vec![e("1"), e("p"), e("p^2")],
        ]);
        let det = m.det_bareiss().unwrap();
        assert_eq!(det, e("(b - a)*(p - a)*(p - b)"));
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn rank_detects_dependent_rows() {
        let m = rm(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1], &[2, 2, 4]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rank_bareiss(), 2);
        assert_eq!(m.transpose().rank(), 2);
    }

    #[test]
    fn inverse_round_trip() {
        let m = rm(&[&[2, 1, 0], &[1, 1, 1], &[0, 3, 1]]);
        let inv = m.inverse().unwrap();
        let id = Matrix::identity_like(3, &Rat::one());
        assert_eq!(m.matmul(&inv), id);
        assert_eq!(inv.matmul(&m), id);
        assert!(rm(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn solve_overdetermined_consistent() {
        // Three equations, two unknowns, consistent: x = 1, y = 2.
        let a = rm(&[&[1, 1], &[1, -1], &[2, 1]]);
        let b = rm(&[&[3], &[-1], &[4]]);
        let x = a.solve_unique(&b).unwrap();
        assert_eq!(x.at(0, 0), &Rat::from_int(1));
        assert_eq!(x.at(1, 0), &Rat::from_int(2));
        // Perturbed rhs is inconsistent.
        let bad = rm(&[&[3], &[-1], &[5]]);
        assert_eq!(a.solve_unique(&bad), Err(LinAlgError::Inconsistent));
        // Dropping to one equation leaves a free variable.
        let under = rm(&[&[1, 1]]);
        let rhs1 = rm(&[&[3]]);
        assert_eq!(
            under.solve_unique(&rhs1),
            Err(LinAlgError::Underdetermined)
        );
    }

    #[test]
    fn kernel_matches_rank_nullity() {
        let m = rm(&[&[1, 2, 3], &[2, 4, 6]]);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(m.apply(v).iter().all(|x| x.is_zero()));
        }
        let full = rm(&[&[1, 0], &[0, 1]]);
        assert!(full.kernel_basis().is_empty());
    }

    #[test]
    fn matmul_and_transpose() {
        let a = rm(&[&[1, 2], &[3, 4]]);
        let b = rm(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.matmul(&b), rm(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose(), rm(&[&[1, 3], &[2, 4]]));
        let v = vec![Rat::from_int(1), Rat::from_int(1)];
        assert_eq!(a.apply(&v), vec![Rat::from_int(3), Rat::from_int(7)]);
    }
}
