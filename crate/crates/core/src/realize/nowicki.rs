use crate::error::{Error, Result};
use crate::polyring::{jacobian, Polynomial};
use crate::vectorfield::FieldFamily;

/// Commuting basis `D_i(h) = det J(f_1, .., f_{i-1}, h, f_{i+1}, .., f_n)` for
/// polynomials with constant nonzero Jacobian determinant.
///
/// `D_i(x_j)` is the `(i, j)` cofactor of `J`, so the coefficient matrix is
/// the transposed adjugate.
pub fn nowicki_commuting_basis(fs: &[Polynomial]) -> Result<FieldFamily> {
    let j = jacobian(fs)?;
    let det = j.det()?;
    if det.is_zero() || !det.is_constant() {
        return Err(Error::NonConstantJacobian { det: det.to_string() });
    }
    FieldFamily::from_matrix(&j.adjugate()?.transpose())
}
