//! Polynomial vector fields `sum_i a_i ∂_i` on `Q^n` and families of them.

use std::fmt;

use crate::error::{Error, Result};
use crate::polyring::{PolyMatrix, Polynomial, Rational};
use crate::tensorlie::write_term;

/// A derivation of `Q[x1..xn]`, stored by its coefficients `a_i = D(x_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    coeffs: Vec<Polynomial>,
}

impl VectorField {
    pub fn new(coeffs: Vec<Polynomial>) -> Result<Self> {
        let n = coeffs.len();
        if let Some(p) = coeffs.iter().find(|p| p.nvars() != n) {
            return Err(Error::VariableMismatch { left: n, right: p.nvars() });
        }
        Ok(Self { coeffs })
    }

    pub fn zero(nvars: usize) -> Self {
        Self { coeffs: vec![Polynomial::zero(nvars); nvars] }
    }

    /// `∂_{p+1}`.
    pub fn partial(nvars: usize, p: usize) -> Self {
        let mut f = Self::zero(nvars);
        f.coeffs[p] = Polynomial::one(nvars);
        f
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Polynomial {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    fn check(&self, other: &VectorField) -> Result<()> {
        if self.nvars() != other.nvars() {
            return Err(Error::VariableMismatch { left: self.nvars(), right: other.nvars() });
        }
        Ok(())
    }

    /// `D(f) = sum_i a_i ∂f/∂x_i`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.nvars() != self.nvars() {
            return Err(Error::VariableMismatch { left: self.nvars(), right: f.nvars() });
        }
        let mut out = Polynomial::zero(self.nvars());
        for (i, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                out += &(a * &f.partial(i)?);
            }
        }
        Ok(out)
    }

    /// `[X, Y]_i = X(Y_i) - Y(X_i)`.
    pub fn bracket(&self, other: &VectorField) -> Result<VectorField> {
        self.check(other)?;
        let coeffs = (0..self.nvars())
            .map(|i| Ok(self.apply(&other.coeffs[i])? - other.apply(&self.coeffs[i])?))
            .collect::<Result<_>>()?;
        Ok(VectorField { coeffs })
    }

    pub fn divergence(&self) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.nvars());
        for (i, a) in self.coeffs.iter().enumerate() {
            out += &a.partial(i)?;
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &VectorField) -> Result<VectorField> {
        self.check(other)?;
        Ok(VectorField { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn checked_sub(&self, other: &VectorField) -> Result<VectorField> {
        self.check(other)?;
        Ok(VectorField { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, c: &Rational) -> VectorField {
        VectorField { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn mul_poly(&self, f: &Polynomial) -> Result<VectorField> {
        if f.nvars() != self.nvars() {
            return Err(Error::VariableMismatch { left: self.nvars(), right: f.nvars() });
        }
        Ok(VectorField { coeffs: self.coeffs.iter().map(|a| f * a).collect() })
    }

    /// Conjugate by `x ↦ -x`: coefficients become `-a_i(-x)`.
    pub fn reflect(&self) -> VectorField {
        VectorField { coeffs: self.coeffs.iter().map(|a| -a.reflect()).collect() }
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            write_term(f, first, a, &format!("d/dx{}", i + 1))?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// An ordered family `D_1..D_m` of fields on the same `Q^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldFamily {
    nvars: usize,
    fields: Vec<VectorField>,
}

impl FieldFamily {
    pub fn new(nvars: usize, fields: Vec<VectorField>) -> Result<Self> {
        if let Some(d) = fields.iter().find(|d| d.nvars() != nvars) {
            return Err(Error::VariableMismatch { left: nvars, right: d.nvars() });
        }
        Ok(Self { nvars, fields })
    }

    /// Row `i` of the matrix becomes `D_{i+1}`.
    pub fn from_matrix(m: &PolyMatrix) -> Result<Self> {
        if m.cols() != m.nvars() {
            return Err(Error::DimensionMismatch { expected: m.nvars(), found: m.cols() });
        }
        let fields = (0..m.rows()).map(|i| VectorField::new(m.row(i).to_vec())).collect::<Result<_>>()?;
        Self::new(m.nvars(), fields)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }

    pub fn fields(&self) -> &[VectorField] {
        &self.fields
    }

    pub fn get(&self, i: usize) -> &VectorField {
        &self.fields[i]
    }

    /// Coefficient matrix, row `i` holding `D_{i+1}`.
    pub fn matrix(&self) -> PolyMatrix {
        let rows = self.fields.iter().map(|d| d.coeffs().to_vec()).collect();
        PolyMatrix::from_rows(rows).unwrap_or_else(|_| PolyMatrix::zeros(0, self.nvars, self.nvars))
    }

    /// Determinant of the coefficient matrix, `None` unless there are exactly
    /// `n` fields.
    pub fn determinant(&self) -> Option<Polynomial> {
        if self.fields.len() != self.nvars {
            return None;
        }
        self.matrix().det().ok()
    }

    /// True when the fields form a basis of the free module of all
    /// derivations, i.e. the determinant is a nonzero constant.
    pub fn is_module_basis(&self) -> bool {
        self.determinant().is_some_and(|d| d.is_unit())
    }

    pub fn reflect(&self) -> FieldFamily {
        FieldFamily { nvars: self.nvars, fields: self.fields.iter().map(VectorField::reflect).collect() }
    }
}

impl fmt::Display for FieldFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.fields.iter().enumerate() {
            writeln!(f, "D{} = {d}", i + 1)?;
        }
        Ok(())
    }
}
