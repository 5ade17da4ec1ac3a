use super::{transport, zero_rows, Realization, SignConvention, Witness};
use crate::error::{Error, Result};
use crate::liealg::{derived_series, verify_solvable_split, LieAlgebra, SolvableSplit};
use crate::tensorlie::{TensorElement, TensorLie};

/// Realization of a solvable algebra whose basis is laid out by `split`.
///
/// With `w = sum_{i<=k} x_i ⊗ l_i` and `u = sum_{i>k} x_i ⊗ l_i`, each
/// `∂_p + b̄_p` is `e^{ad u} e^{ad w} (∂_p)`. The inner exponential only
/// touches `R ⊗ H`, where `ad w` is nilpotent because `H` is; the outer one is
/// finite because `[L,L]` acts nilpotently on a solvable `L`.
pub fn realize_solvable(
    alg: &LieAlgebra,
    split: &SolvableSplit,
    convention: SignConvention,
) -> Result<Realization> {
    let series = derived_series(alg);
    let last = series.last().expect("series starts with L");
    if !last.is_zero() {
        return Err(Error::NotSolvable { stable_dim: last.dim() });
    }
    verify_solvable_split(alg, split)?;
    let n = alg.dim();
    let tl = TensorLie::new(alg, n);
    let w = TensorElement::coordinate_sum(n, n, 0..split.k);
    let u = TensorElement::coordinate_sum(n, n, split.k..n);
    let rows = transport(&tl, &zero_rows(&tl), &[&w, &u])?;
    let witness = Witness { w: Some(w), u: Some(u), ..Witness::default() };
    let raw = Realization::assemble(alg.clone(), rows, witness, SignConvention::Proof)?;
    Ok(raw.with_convention(convention))
}
