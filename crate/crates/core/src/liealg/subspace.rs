//! Exact rational linear algebra: row reduction, subspaces, basis changes.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyring::Rational;

pub type QVector = Vec<Rational>;

pub(crate) fn zero_vec(n: usize) -> QVector {
    vec![Rational::zero(); n]
}

pub(crate) fn unit_vec(n: usize, i: usize) -> QVector {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

pub(crate) fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Reduced row echelon form with first-nonzero pivoting. Zero rows are dropped;
/// returns the rows and their pivot columns.
pub fn row_reduce(mut rows: Vec<QVector>, ncols: usize) -> (Vec<QVector>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][col];
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Basis of `{x : M x = 0}` where `M` is given by its rows.
pub fn nullspace(rows: &[QVector], ncols: usize) -> Vec<QVector> {
    let (rref, pivots) = row_reduce(rows.to_vec(), ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = zero_vec(ncols);
            x[f] = Rational::one();
            for (row, &p) in rref.iter().zip(&pivots) {
                x[p] = -row[f].clone();
            }
            x
        })
        .collect()
}

/// Linear subspace of `Q^n`, stored as a reduced echelon basis so equal
/// subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<QVector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: Vec<QVector>) -> Self {
        let (basis, pivots) = row_reduce(vectors, ambient);
        Self { ambient, basis, pivots }
    }

    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::coordinate(ambient, 0..ambient)
    }

    /// Span of the coordinate vectors `e_i`, `i` in `range` (0-based).
    pub fn coordinate(ambient: usize, range: std::ops::Range<usize>) -> Self {
        Self::span(ambient, range.map(|i| unit_vec(ambient, i)).collect())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[QVector] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        // reduce v against the echelon basis
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                *x -= &f * y;
            }
        }
        is_zero_vec(&r)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, vs)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Subspace::zero(self.ambient);
        }
        // columns: basis of self, then negated basis of other
        let rows: Vec<QVector> = (0..self.ambient)
            .map(|i| {
                self.basis
                    .iter()
                    .map(|u| u[i].clone())
                    .chain(other.basis.iter().map(|v| -v[i].clone()))
                    .collect()
            })
            .collect();
        let vs = nullspace(&rows, a + b)
            .into_iter()
            .map(|coef| {
                let mut v = zero_vec(self.ambient);
                for (c, u) in coef.iter().take(a).zip(&self.basis) {
                    for (x, y) in v.iter_mut().zip(u) {
                        *x += c * y;
                    }
                }
                v
            })
            .collect();
        Subspace::span(self.ambient, vs)
    }

    /// Greedily extends a basis of `self` by candidates not yet in the span,
    /// in the given order. Returns only the added vectors.
    pub fn extend_with(&self, candidates: &[QVector]) -> Vec<QVector> {
        let mut current = self.clone();
        let mut added = Vec::new();
        for c in candidates {
            if !current.contains(c) {
                added.push(c.clone());
                current = current.sum(&Subspace::span(self.ambient, vec![c.clone()]));
            }
        }
        added
    }
}

pub(crate) fn mat_mul(a: &[QVector], b: &[QVector]) -> Vec<QVector> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(Rational::zero(), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect()
}

/// Row vector times matrix.
pub(crate) fn vec_mat(v: &[Rational], m: &[QVector]) -> QVector {
    mat_mul(&[v.to_vec()], m).pop().unwrap_or_default()
}

pub(crate) fn identity(n: usize) -> Vec<QVector> {
    (0..n).map(|i| unit_vec(n, i)).collect()
}

pub(crate) fn mat_inverse(m: &[QVector]) -> Result<Vec<QVector>> {
    let n = m.len();
    let aug: Vec<QVector> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != n {
                return Err(Error::NotSquare { rows: n, cols: row.len() });
            }
            let mut r = row.clone();
            r.extend(unit_vec(n, i));
            Ok(r)
        })
        .collect::<Result<_>>()?;
    let (rref, pivots) = row_reduce(aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::Singular);
    }
    Ok(rref.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Change of basis `l'_i = sum_a P[i][a] l_a`, kept together with `P^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange {
    matrix: Vec<QVector>,
    inverse: Vec<QVector>,
}

impl BasisChange {
    pub fn new(matrix: Vec<QVector>) -> Result<Self> {
        let inverse = mat_inverse(&matrix)?;
        Ok(Self { matrix, inverse })
    }

    pub fn identity(n: usize) -> Self {
        Self { matrix: identity(n), inverse: identity(n) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[QVector] {
        &self.matrix
    }

    pub fn inverse(&self) -> &[QVector] {
        &self.inverse
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == identity(self.dim())
    }

    /// Old coordinates to new coordinates.
    pub fn to_new(&self, v: &[Rational]) -> QVector {
        vec_mat(v, &self.inverse)
    }

    /// New coordinates to old coordinates.
    pub fn to_old(&self, v: &[Rational]) -> QVector {
        vec_mat(v, &self.matrix)
    }

    /// Apply `self` first, then `next` (expressed in the basis produced by `self`).
    pub fn then(&self, next: &BasisChange) -> BasisChange {
        BasisChange {
            matrix: mat_mul(&next.matrix, &self.matrix),
            inverse: mat_mul(&self.inverse, &next.inverse),
        }
    }
}
