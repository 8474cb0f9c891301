//! Dense matrices over [`Scalar`] and the determinant routines every
//! identity in this crate reduces to.
//!
//! EXACT determinants use Gaussian elimination with exact division (no
//! rounding, first nonzero pivot); FLOAT determinants use partially
//! pivoted LU. Both are O(n^3). The Vandermonde product
//! Delta(x) = prod_{i<j} (x_i - x_j) is evaluated by its product form.

use crate::error::{Error, Result};
use crate::scalar::{Mode, Scalar};

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize, mode: Mode) -> Matrix {
        Matrix::from_fn(rows, cols, |_, _| mode.zero())
    }

    pub fn identity(n: usize, mode: Mode) -> Matrix {
        Matrix::from_fn(n, n, |i, j| if i == j { mode.one() } else { mode.zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shapes");
        let mode = self.mode().or(other.mode()).unwrap_or(Mode::Exact);
        let mut out = Matrix::zero(self.rows, other.cols, mode);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j).clone();
                    out.set(i, j, &cur + &(a * b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shapes");
        let mode = self.mode().unwrap_or_else(|| v[0].mode());
        (0..self.rows)
            .map(|i| {
                let mut acc = mode.zero();
                for j in 0..self.cols {
                    let a = self.at(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += &(a * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Row vector times matrix: returns v^T * self.
    pub fn vec_mul(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.rows, v.len(), "vector-matrix shapes");
        let mode = self.mode().unwrap_or_else(|| v[0].mode());
        (0..self.cols)
            .map(|j| {
                let mut acc = mode.zero();
                for i in 0..self.rows {
                    if !v[i].is_zero() {
                        let a = self.at(i, j);
                        if !a.is_zero() {
                            acc += &(&v[i] * a);
                        }
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + other.at(i, j))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - other.at(i, j))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) * s)
    }

    /// Kronecker product; the left factor indexes the most significant
    /// block, so kron(A, B)[(ia*nb+ib),(ja*mb+jb)] = A[ia,ja] * B[ib,jb].
    pub fn kron(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(
            self.rows * other.rows,
            self.cols * other.cols,
            |i, j| {
                let (ia, ib) = (i / other.rows, i % other.rows);
                let (ja, jb) = (j / other.cols, j % other.cols);
                self.at(ia, ja) * other.at(ib, jb)
            },
        )
    }

    /// New matrix from the given columns of `self`, in the given order.
    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.rows, idx.len(), |i, j| self.at(i, idx[j]).clone())
    }

    /// Largest entry magnitude; zero for an empty matrix.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn to_float(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j).to_float())
    }

    fn mode(&self) -> Option<Mode> {
        self.data.first().map(Scalar::mode)
    }

    /// Determinant. EXACT entries are eliminated with exact division;
    /// FLOAT entries with partial pivoting. The empty matrix has
    /// determinant one (in EXACT mode, since it carries no entries).
    pub fn det(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Mode::Exact.one());
        }
        let mode = self.mode().unwrap();
        let mut m = self.clone();
        let mut sign_flip = false;
        let mut det = mode.one();
        for col in 0..n {
            let pivot_row = match mode {
                Mode::Exact => (col..n).find(|&r| !m.at(r, col).is_zero()),
                Mode::Float => (col..n)
                    .filter(|&r| !m.at(r, col).is_zero())
                    .max_by(|&a, &b| {
                        m.at(a, col)
                            .magnitude()
                            .partial_cmp(&m.at(b, col).magnitude())
                            .unwrap()
                    }),
            };
            let Some(p) = pivot_row else {
                return Ok(mode.zero());
            };
            if p != col {
                for j in 0..n {
                    let a = m.at(col, j).clone();
                    let b = m.at(p, j).clone();
                    m.set(col, j, b);
                    m.set(p, j, a);
                }
                sign_flip = !sign_flip;
            }
            let pivot = m.at(col, col).clone();
            det = &det * &pivot;
            for r in col + 1..n {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col) / &pivot;
                for j in col..n {
                    let v = m.at(r, j) - &(&factor * m.at(col, j));
                    m.set(r, j, v);
                }
            }
        }
        Ok(if sign_flip { -det } else { det })
    }

    /// Solves self * x = b for square regular systems. Returns `None`
    /// when the matrix is singular.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if self.rows != self.cols {
            return Err(Error::Dimension("solve needs a square matrix".into()));
        }
        if b.len() != self.rows {
            return Err(Error::Dimension("right-hand side length".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Some(Vec::new()));
        }
        let mode = self.mode().unwrap();
        let mut m = self.clone();
        let mut rhs = b.to_vec();
        for col in 0..n {
            let pivot_row = match mode {
                Mode::Exact => (col..n).find(|&r| !m.at(r, col).is_zero()),
                Mode::Float => (col..n)
                    .filter(|&r| !m.at(r, col).is_zero())
                    .max_by(|&a, &b| {
                        m.at(a, col)
                            .magnitude()
                            .partial_cmp(&m.at(b, col).magnitude())
                            .unwrap()
                    }),
            };
            let Some(p) = pivot_row else {
                return Ok(None);
            };
            if p != col {
                for j in 0..n {
                    let a = m.at(col, j).clone();
                    let bb = m.at(p, j).clone();
                    m.set(col, j, bb);
                    m.set(p, j, a);
                }
                rhs.swap(col, p);
            }
            let pivot = m.at(col, col).clone();
            for r in col + 1..n {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col) / &pivot;
                for j in col..n {
                    let v = m.at(r, j) - &(&factor * m.at(col, j));
                    m.set(r, j, v);
                }
                let v = &rhs[r] - &(&factor * &rhs[col]);
                rhs[r] = v;
            }
        }
        let mut x = vec![mode.zero(); n];
        for i in (0..n).rev() {
            let mut acc = rhs[i].clone();
            for j in i + 1..n {
                acc -= &(m.at(i, j) * &x[j]);
            }
            x[i] = &acc / m.at(i, i);
        }
        Ok(Some(x))
    }

    /// Basis of the right nullspace (EXACT-oriented; FLOAT works with
    /// literal zero tests only).
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (rows, cols) = (self.rows, self.cols);
        if cols == 0 {
            return Vec::new();
        }
        let mode = self.mode().unwrap();
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut r = 0usize;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    let a = m.at(r, j).clone();
                    let b = m.at(p, j).clone();
                    m.set(r, j, b);
                    m.set(p, j, a);
                }
            }
            let pivot = m.at(r, c).clone();
            for j in 0..cols {
                let v = m.at(r, j) / &pivot;
                m.set(r, j, v);
            }
            for i in 0..rows {
                if i != r && !m.at(i, c).is_zero() {
                    let factor = m.at(i, c).clone();
                    for j in 0..cols {
                        let v = m.at(i, j) - &(&factor * m.at(r, j));
                        m.set(i, j, v);
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in 0..cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![mode.zero(); cols];
            v[free] = mode.one();
            for (pr, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -m.at(pr, free).clone();
            }
            basis.push(v);
        }
        basis
    }
}

/// Vandermonde product Delta(x) = prod_{i<j} (x_i - x_j); the empty and
/// singleton products are one.
pub fn vandermonde(xs: &[Scalar]) -> Scalar {
    let mode = xs.first().map(Scalar::mode).unwrap_or(Mode::Exact);
    let mut acc = mode.one();
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            acc = &acc * &(&xs[i] - &xs[j]);
        }
    }
    acc
}

/// True when all entries are pairwise distinct (exact comparison).
pub fn pairwise_distinct(xs: &[Scalar]) -> bool {
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if xs[i] == xs[j] {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::random_rational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Cofactor expansion along the first row; the independent oracle for
    /// elimination determinants, usable up to n = 5.
    pub(crate) fn det_cofactor(m: &Matrix) -> Scalar {
        let n = m.rows();
        assert!(n <= 5, "cofactor oracle capped at 5x5");
        if n == 0 {
            return Mode::Exact.one();
        }
        if n == 1 {
            return m.at(0, 0).clone();
        }
        let mode = m.at(0, 0).mode();
        let mut acc = mode.zero();
        for j in 0..n {
            let sub = Matrix::from_fn(n - 1, n - 1, |r, c| {
                m.at(r + 1, if c < j { c } else { c + 1 }).clone()
            });
            let term = m.at(0, j) * &det_cofactor(&sub);
            if j % 2 == 0 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        acc
    }

    fn random_matrix(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
        Matrix::from_fn(n, n, |_, _| {
            let s = random_rational(rng, 9);
            if rng.gen_bool(0.5) {
                -s
            } else {
                s
            }
        })
    }

    #[test]
    fn elimination_det_matches_cofactor_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=5 {
            for _ in 0..6 {
                let m = random_matrix(n, &mut rng);
                assert_eq!(m.det().unwrap(), det_cofactor(&m));
            }
        }
    }

    #[test]
    fn exact_and_float_dets_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..10 {
            let m = random_matrix(4, &mut rng);
            let exact = m.det().unwrap();
            let float = m.to_float().det().unwrap();
            assert!(exact.to_float().approx_eq(&float, 1e-10));
        }
    }

    #[test]
    fn singular_matrix_has_zero_det() {
        // Two equal rows.
        let m = Matrix::new(
            2,
            2,
            vec![
                Mode::Exact.int(3),
                Mode::Exact.int(5),
                Mode::Exact.int(3),
                Mode::Exact.int(5),
            ],
        );
        assert!(m.det().unwrap().is_zero());
    }

    #[test]
    fn det_rejects_non_square() {
        let m = Matrix::zero(2, 3, Mode::Exact);
        assert!(m.det().is_err());
    }

    #[test]
    fn det_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let a = random_matrix(3, &mut rng);
        let b = random_matrix(3, &mut rng);
        let lhs = a.mul(&b).det().unwrap();
        let rhs = &a.det().unwrap() * &b.det().unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn row_swap_flips_sign_row_scale_scales() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let m = random_matrix(3, &mut rng);
        let d = m.det().unwrap();
        let mut swapped = m.clone();
        for j in 0..3 {
            let a = swapped.at(0, j).clone();
            let b = swapped.at(1, j).clone();
            swapped.set(0, j, b);
            swapped.set(1, j, a);
        }
        assert_eq!(swapped.det().unwrap(), -d.clone());
        let mut scaled = m.clone();
        let c = Mode::Exact.ratio(7, 3);
        for j in 0..3 {
            let v = scaled.at(2, j) * &c;
            scaled.set(2, j, v);
        }
        assert_eq!(scaled.det().unwrap(), &c * &d);
    }

    #[test]
    fn vandermonde_matches_alternant_det() {
        let xs = vec![Mode::Exact.int(2), Mode::Exact.int(3), Mode::Exact.int(5)];
        let n = xs.len();
        let alternant = Matrix::from_fn(n, n, |i, j| xs[j].pow((n - 1 - i) as i64));
        assert_eq!(alternant.det().unwrap(), vandermonde(&xs));
        assert_eq!(vandermonde(&xs), Mode::Exact.int(-6));
    }

    #[test]
    fn vandermonde_vanishes_iff_repeated() {
        let xs = vec![Mode::Exact.int(2), Mode::Exact.int(2)];
        assert!(vandermonde(&xs).is_zero());
        let ys = vec![Mode::Exact.int(2), Mode::Exact.int(4)];
        assert!(!vandermonde(&ys).is_zero());
    }

    #[test]
    fn kron_and_identity() {
        let a = Matrix::new(
            2,
            2,
            vec![
                Mode::Exact.int(1),
                Mode::Exact.int(2),
                Mode::Exact.int(3),
                Mode::Exact.int(4),
            ],
        );
        let i2 = Matrix::identity(2, Mode::Exact);
        let k = a.kron(&i2);
        assert_eq!(k.rows(), 4);
        assert_eq!(k.at(0, 0), &Mode::Exact.int(1));
        assert_eq!(k.at(1, 1), &Mode::Exact.int(1));
        assert_eq!(k.at(0, 2), &Mode::Exact.int(2));
        assert_eq!(k.at(2, 0), &Mode::Exact.int(3));
        // det(A kron I2) = det(A)^2
        assert_eq!(k.det().unwrap(), a.det().unwrap().pow(2));
    }

    #[test]
    fn solve_recovers_solution() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let a = random_matrix(4, &mut rng);
        if a.det().unwrap().is_zero() {
            return;
        }
        let x: Vec<Scalar> = (0..4).map(|_| random_rational(&mut rng, 7)).collect();
        let b = a.mul_vec(&x);
        let sol = a.solve(&b).unwrap().unwrap();
        assert_eq!(sol, x);
    }

    #[test]
    fn nullspace_of_rank_deficient_matrix() {
        // rows: (1,2,3), (2,4,6) -> rank 1, nullity 2
        let m = Matrix::new(
            2,
            3,
            vec![
                Mode::Exact.int(1),
                Mode::Exact.int(2),
                Mode::Exact.int(3),
                Mode::Exact.int(2),
                Mode::Exact.int(4),
                Mode::Exact.int(6),
            ],
        );
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let img = m.mul_vec(v);
            assert!(img.iter().all(Scalar::is_zero));
        }
    }
}
