use std::fmt;

use num_traits::One;

use super::{Polynomial, Rational};
use crate::error::{Error, Result};

/// Dense row-major matrix of polynomials sharing one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, nvars: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: entries.len() });
        }
        if let Some(p) = entries.iter().find(|p| p.nvars() != nvars) {
            return Err(Error::VariableMismatch { left: nvars, right: p.nvars() });
        }
        Ok(Self { rows, cols, nvars, entries })
    }

    /// Builds from a list of equally long rows; `nvars` is taken from the entries.
    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let nvars = rows
            .first()
            .and_then(|r| r.first())
            .map_or(0, Polynomial::nvars);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch { expected: ncols, found: row.len() });
            }
            entries.extend(row);
        }
        Self::new(nrows, ncols, nvars, entries)
    }

    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        Self { rows, cols, nvars, entries: vec![Polynomial::zero(nvars); rows * cols] }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Self::zeros(n, n, nvars);
        for i in 0..n {
            m.entries[i * n + i] = Polynomial::one(nvars);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        assert_eq!(p.nvars(), self.nvars, "entry lives in a different ring");
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Polynomial>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn map<F: Fn(&Polynomial) -> Polynomial>(&self, f: F) -> PolyMatrix {
        let entries: Vec<_> = self.entries.iter().map(f).collect();
        let nvars = entries.first().map_or(self.nvars, Polynomial::nvars);
        PolyMatrix { rows: self.rows, cols: self.cols, nvars, entries }
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = Self::zeros(self.cols, self.rows, self.nvars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> PolyMatrix {
        self.map(|p| p.scale(c))
    }

    pub fn checked_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch { left: self.nvars, right: other.nvars });
        }
        let mut out = Self::zeros(self.rows, other.cols, self.nvars);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(self.nvars);
                for k in 0..self.cols {
                    acc += &(self.get(i, k) * other.get(k, j));
                }
                out.entries[i * other.cols + j] = acc;
            }
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows, self.nvars) && self.is_square()
    }

    fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(())
    }

    /// Submatrix with row `skip_row` and column `skip_col` removed.
    pub fn minor(&self, skip_row: usize, skip_col: usize) -> PolyMatrix {
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != skip_row) {
            for j in (0..self.cols).filter(|&j| j != skip_col) {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix { rows: self.rows - 1, cols: self.cols - 1, nvars: self.nvars, entries }
    }

    /// Exact determinant. Explicit cofactor formulas up to 3x3, fraction-free
    /// Bareiss elimination beyond.
    pub fn det(&self) -> Result<Polynomial> {
        self.require_square()?;
        let n = self.rows;
        let e = |i: usize, j: usize| self.get(i, j);
        Ok(match n {
            0 => Polynomial::one(self.nvars),
            1 => e(0, 0).clone(),
            2 => &(e(0, 0) * e(1, 1)) - &(e(0, 1) * e(1, 0)),
            3 => {
                let m0 = &(e(1, 1) * e(2, 2)) - &(e(1, 2) * e(2, 1));
                let m1 = &(e(1, 0) * e(2, 2)) - &(e(1, 2) * e(2, 0));
                let m2 = &(e(1, 0) * e(2, 1)) - &(e(1, 1) * e(2, 0));
                &(&(e(0, 0) * &m0) - &(e(0, 1) * &m1)) + &(e(0, 2) * &m2)
            }
            _ => self.det_bareiss()?,
        })
    }

    fn det_bareiss(&self) -> Result<Polynomial> {
        let n = self.rows;
        let mut m: Vec<Vec<Polynomial>> = self.row_vecs();
        let mut negate = false;
        let mut prev = Polynomial::one(self.nvars);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        negate = !negate;
                    }
                    None => return Ok(Polynomial::zero(self.nvars)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num.div_exact(&prev)?;
                }
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// Transpose of the cofactor matrix.
    pub fn adjugate(&self) -> Result<PolyMatrix> {
        self.require_square()?;
        let n = self.rows;
        if n == 1 {
            return Ok(Self::identity(1, self.nvars));
        }
        let mut out = Self::zeros(n, n, self.nvars);
        for i in 0..n {
            for j in 0..n {
                let d = self.minor(i, j).det()?;
                out.entries[j * n + i] = if (i + j) % 2 == 0 { d } else { -d };
            }
        }
        Ok(out)
    }

    /// Inverse over the polynomial ring, `adj(M) / det(M)`.
    ///
    /// Exists exactly when the determinant is a nonzero constant.
    pub fn adjugate_inverse(&self) -> Result<PolyMatrix> {
        let det = self.det()?;
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let c = det
            .constant_value()
            .ok_or_else(|| Error::NotUnimodular { det: det.to_string() })?;
        Ok(self.adjugate()?.scale(&(Rational::one() / c)))
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Jacobi matrix `(df_i/dx_j)` of `n` polynomials in `n` variables.
pub fn jacobian(fs: &[Polynomial]) -> Result<PolyMatrix> {
    let n = fs.len();
    let nvars = fs.first().map_or(0, Polynomial::nvars);
    if n != nvars {
        return Err(Error::DimensionMismatch { expected: nvars, found: n });
    }
    let mut entries = Vec::with_capacity(n * n);
    for f in fs {
        if f.nvars() != nvars {
            return Err(Error::VariableMismatch { left: nvars, right: f.nvars() });
        }
        for j in 0..n {
            entries.push(f.partial(j)?);
        }
    }
    PolyMatrix::new(n, n, nvars, entries)
}
