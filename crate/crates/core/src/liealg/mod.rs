//! Finite-dimensional Lie algebras over `Q` given by structure constants.
//!
//! Indices are 0-based in the Rust API and 1-based in files, reports and
//! error values.

pub(crate) mod series;
pub(crate) mod split;
pub(crate) mod subspace;

pub use series::{
    acts_nilpotently, adapted_nilpotent_basis, bracket_span, derived_series, is_nilpotent, is_solvable,
    lower_central_series, satisfies_flag_condition,
};
pub use split::{
    heuristic_cartan, is_subalgebra, radical, solvable_split_basis, verify_levi,
    verify_solvable_split, verify_split, LeviData, SolvableSplit, Split,
};
pub use subspace::{nullspace, row_reduce, BasisChange, QVector, Subspace};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polyring::Rational;

/// Structure constants `c_ij^k` with `[l_i, l_j] = sum_k c_ij^k l_k`.
///
/// Constructors validate antisymmetry and the Jacobi identity, so every
/// value of this type is a Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    constants: Vec<Rational>,
    nonzero: Vec<(usize, usize, usize, Rational)>,
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        Self { dim, constants: vec![Rational::zero(); dim * dim * dim], nonzero: Vec::new() }
    }

    /// From brackets `[l_i, l_j] = ... + c l_k` with `i < j`; the entries with
    /// `i > j` are completed by antisymmetry.
    pub fn from_brackets<I>(dim: usize, brackets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize, Rational)>,
    {
        let mut alg = Self::abelian(dim);
        for (i, j, k, c) in brackets {
            alg.check_index(i)?;
            alg.check_index(j)?;
            alg.check_index(k)?;
            if i >= j {
                return Err(Error::InvalidBracket {
                    i: i + 1,
                    j: j + 1,
                    reason: "entries must be listed with i < j".into(),
                });
            }
            let at = alg.offset(i, j, k);
            if !alg.constants[at].is_zero() {
                return Err(Error::InvalidBracket {
                    i: i + 1,
                    j: j + 1,
                    reason: format!("component {} listed twice", k + 1),
                });
            }
            alg.constants[at] = c.clone();
            let at = alg.offset(j, i, k);
            alg.constants[at] = -c;
        }
        alg.reindex();
        alg.validate()?;
        Ok(alg)
    }

    /// From a full table of constants (no completion); both axioms are checked.
    pub fn from_constants<I>(dim: usize, constants: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize, Rational)>,
    {
        let mut alg = Self::abelian(dim);
        for (i, j, k, c) in constants {
            alg.check_index(i)?;
            alg.check_index(j)?;
            alg.check_index(k)?;
            let at = alg.offset(i, j, k);
            alg.constants[at] = c;
        }
        alg.reindex();
        alg.validate()?;
        Ok(alg)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.dim {
            return Err(Error::IndexOutOfRange { index: i + 1, dim: self.dim });
        }
        Ok(())
    }

    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    fn reindex(&mut self) {
        let n = self.dim;
        self.nonzero.clear();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = &self.constants[self.offset(i, j, k)];
                    if !c.is_zero() {
                        self.nonzero.push((i, j, k, c.clone()));
                    }
                }
            }
        }
    }

    /// Checks antisymmetry and the Jacobi identity exactly.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let s = self.c(i, j, k) + self.c(j, i, k);
                    if !s.is_zero() {
                        return Err(Error::NotAntisymmetric { i: i + 1, j: j + 1, k: k + 1 });
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in 0..n {
                        let mut s = Rational::zero();
                        for m in 0..n {
                            s += self.c(i, j, m) * self.c(m, k, l)
                                + self.c(j, k, m) * self.c(m, i, l)
                                + self.c(k, i, m) * self.c(m, j, l);
                        }
                        if !s.is_zero() {
                            return Err(Error::JacobiFails { i: i + 1, j: j + 1, k: k + 1, l: l + 1 });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c_ij^k`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.constants[self.offset(i, j, k)]
    }

    /// All nonzero `(i, j, k, c_ij^k)`, both orders of `(i, j)`.
    pub fn nonzero_constants(&self) -> &[(usize, usize, usize, Rational)] {
        &self.nonzero
    }

    /// Nonzero constants with `i < j`, the form used by the file format.
    pub fn brackets(&self) -> impl Iterator<Item = &(usize, usize, usize, Rational)> + '_ {
        self.nonzero.iter().filter(|(i, j, _, _)| i < j)
    }

    pub fn is_abelian(&self) -> bool {
        self.nonzero.is_empty()
    }

    /// Coordinates of `[u, v]`.
    pub fn bracket_coords(&self, u: &[Rational], v: &[Rational]) -> QVector {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, j, k, c) in &self.nonzero {
            if u[*i].is_zero() || v[*j].is_zero() {
                continue;
            }
            out[*k] += c * &u[*i] * &v[*j];
        }
        out
    }

    /// Matrix of `ad d`, column `j` holding the coordinates of `[d, l_j]`.
    pub fn ad_matrix(&self, d: &[Rational]) -> Vec<QVector> {
        let n = self.dim;
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (i, j, k, c) in &self.nonzero {
            if !d[*i].is_zero() {
                m[*k][*j] += c * &d[*i];
            }
        }
        m
    }

    /// `tr(ad d) = sum_i d_i sum_j c_ij^j`.
    pub fn ad_trace(&self, d: &[Rational]) -> Rational {
        self.nonzero
            .iter()
            .filter(|(_, j, k, _)| j == k)
            .map(|(i, _, _, c)| c * &d[*i])
            .sum()
    }

    /// Constants in the basis `l'_i = sum_a P[i][a] l_a`.
    pub fn change_basis(&self, change: &BasisChange) -> Result<LieAlgebra> {
        if change.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: change.dim() });
        }
        let p = change.matrix();
        let mut entries = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let new = change.to_new(&self.bracket_coords(&p[i], &p[j]));
                for (k, c) in new.into_iter().enumerate() {
                    if !c.is_zero() {
                        entries.push((i, j, k, c));
                    }
                }
            }
        }
        LieAlgebra::from_brackets(self.dim, entries)
    }

    /// Subalgebra on the basis vectors `range`, which must close under the bracket.
    pub fn restrict(&self, range: std::ops::Range<usize>) -> Result<LieAlgebra> {
        let offset = range.start;
        let dim = range.len();
        let mut entries = Vec::new();
        for (i, j, k, c) in self.brackets() {
            if !range.contains(i) || !range.contains(j) {
                continue;
            }
            if !range.contains(k) {
                return Err(Error::SplitInvalid(format!(
                    "basis vectors {}..{} do not span a subalgebra: [l{}, l{}] has a component on l{}",
                    range.start + 1,
                    range.end,
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            entries.push((i - offset, j - offset, k - offset, c.clone()));
        }
        LieAlgebra::from_brackets(dim, entries)
    }

    /// Recognizes the standard Heisenberg basis `[l_i, l_{r+i}] = l_{2r+1}`;
    /// returns `r`.
    pub fn heisenberg_rank(&self) -> Option<usize> {
        if self.dim < 3 || self.dim.is_multiple_of(2) {
            return None;
        }
        let r = (self.dim - 1) / 2;
        let expected: Vec<_> = (0..r).map(|i| (i, r + i, 2 * r)).collect();
        let brackets: Vec<_> = self.brackets().collect();
        let ok = brackets.len() == r
            && brackets.iter().all(|(i, j, k, c)| {
                expected.contains(&(*i, *j, *k)) && *c == Rational::from_integer(1.into())
            });
        ok.then_some(r)
    }
}
