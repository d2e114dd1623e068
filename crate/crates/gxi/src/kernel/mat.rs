use std::fmt;
use std::ops::{Index, IndexMut};

use super::field::Field;
use super::KernelError;

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Mat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Solution set `{X : A X = B}` as particular solution plus kernel basis.
#[derive(Clone, Debug)]
pub struct Solution<F> {
    pub particular: Mat<F>,
    /// Columns span the kernel of `A`.
    pub kernel: Mat<F>,
}

/// Reduced row echelon form with the pivot column of each nonzero row.
pub struct Echelon<F> {
    pub reduced: Mat<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Mat {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn scalar(x: F) -> Self {
        Mat {
            rows: 1,
            cols: 1,
            data: vec![x],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[F] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && self.sub(&Self::identity(self.rows)).is_zero()
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.shape() == other.shape() && self.sub(other).is_zero()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    out.data[i * rhs.cols + j].add_mul(a, b);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape");
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&rhs.data) {
            *x += y;
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape");
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&rhs.data) {
            *x -= y;
        }
        out
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|x| x.clone() * s)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn kron(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out[(i * rhs.rows + k, j * rhs.cols + l)] = a.clone() * &rhs[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(blocks: &[Mat<F>]) -> Self {
        let r = blocks.iter().map(|b| b.rows).sum();
        let c = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat<F>) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        out
    }

    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows, "hstack rows");
        let mut out = Self::zeros(self.rows, self.cols + rhs.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, rhs);
        out
    }

    pub fn vstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.cols, "vstack cols");
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Mat {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn column(&self, j: usize) -> Self {
        self.block(0, j, self.rows, 1)
    }

    pub fn trace(&self) -> F {
        let mut t = F::zero();
        for i in 0..self.rows.min(self.cols) {
            t += &self[(i, i)];
        }
        t
    }

    pub fn echelon(&self) -> Echelon<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let mut best = None;
            let mut best_w = 0.0;
            for i in r..m.rows {
                let w = m[(i, c)].pivot_weight();
                if w > best_w {
                    best_w = w;
                    best = Some(i);
                }
            }
            let Some(p) = best else { continue };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("pivot is invertible");
            for j in c..m.cols {
                let v = m[(r, j)].clone() * &inv;
                m[(r, j)] = v;
            }
            m[(r, c)] = F::one();
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    if i != r {
                        m[(i, c)] = F::zero();
                    }
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let d = f.clone() * &m[(r, j)];
                    m[(i, j)] -= &d;
                }
                m[(i, c)] = F::zero();
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right kernel, one vector per column.
    pub fn nullspace(&self) -> Mat<F> {
        let e = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        let mut out = Self::zeros(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out[(fc, k)] = F::one();
            for (r, &pc) in e.pivots.iter().enumerate() {
                out[(pc, k)] = -e.reduced[(r, fc)].clone();
            }
        }
        out
    }

    /// All solutions of `self · X = rhs`.
    pub fn solve(&self, rhs: &Mat<F>) -> Result<Solution<F>, KernelError> {
        if rhs.rows != self.rows {
            return Err(KernelError::Shape {
                op: "solve",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let aug = self.hstack(rhs);
        let e = aug.echelon();
        if e.pivots.iter().any(|&p| p >= self.cols) {
            return Err(KernelError::NoSolution);
        }
        let mut particular = Self::zeros(self.cols, rhs.cols);
        for (r, &pc) in e.pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                particular[(pc, j)] = e.reduced[(r, self.cols + j)].clone();
            }
        }
        Ok(Solution {
            particular,
            kernel: self.nullspace(),
        })
    }

    pub fn inverse(&self) -> Option<Mat<F>> {
        if self.rows != self.cols {
            return None;
        }
        let sol = self.solve(&Self::identity(self.rows)).ok()?;
        (sol.kernel.cols == 0).then_some(sol.particular)
    }

    /// Row vector of all entries, row-major.
    pub fn flatten(&self) -> Vec<F> {
        self.data.clone()
    }
}

/// Basis of `{X : A X = B}` in the sense of the kernel operation: for `B = 0`
/// this is a kernel basis; otherwise the particular solution followed by the
/// kernel, or an explicit no-solution error.
pub fn solve_linear<F: Field>(a: &Mat<F>, b: &Mat<F>) -> Result<Solution<F>, KernelError> {
    a.solve(b)
}

impl<F> Index<(usize, usize)> for Mat<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Mat<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<F: fmt::Debug> fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| format!("{:?}", self.data[i * self.cols + j]))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
