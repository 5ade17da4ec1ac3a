use super::{transport, zero_rows, Realization, SignConvention, Witness};
use crate::error::Result;
use crate::liealg::{adapted_nilpotent_basis, LieAlgebra};
use crate::tensorlie::{TensorElement, TensorLie};

const HEISENBERG_NOTE: &str = "Heisenberg basis: for n < i <= 2n the field D_i carries \
x_(i-n)/2 in its last component; the subscript n-i would be out of range";

/// Realization of a nilpotent algebra in `dim L` variables:
/// `∂_p + b̄_p = e^{ad w}(∂_p)` with `w = sum x_i ⊗ l_i`.
///
/// The basis is first adapted to the flag condition if necessary; the result
/// then realizes the adapted constants and records the basis change.
pub fn realize_nilpotent(alg: &LieAlgebra, convention: SignConvention) -> Result<Realization> {
    let (change, adapted) = adapted_nilpotent_basis(alg)?;
    let n = adapted.dim();
    let tl = TensorLie::new(&adapted, n);
    let w = TensorElement::coordinate_sum(n, n, 0..n);
    let rows = transport(&tl, &zero_rows(&tl), &[&w])?;

    let mut witness = Witness { w: Some(w), ..Witness::default() };
    if !change.is_identity() {
        witness.notes.push("input basis adapted to the flag condition c_ij^k = 0 for k <= max(i,j)".into());
        witness.basis_change = Some(change);
    }
    if adapted.heisenberg_rank().is_some() {
        witness.notes.push(HEISENBERG_NOTE.into());
    }
    let raw = Realization::assemble(adapted, rows, witness, SignConvention::Proof)?;
    Ok(raw.with_convention(convention))
}
