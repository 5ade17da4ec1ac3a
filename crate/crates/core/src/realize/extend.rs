use super::{transport, Realization, SignConvention, Witness};
use crate::error::{Error, Result};
use crate::liealg::{acts_nilpotently, is_subalgebra, verify_levi, LeviData, LieAlgebra, SolvableSplit, Subspace};
use crate::tensorlie::{TensorElement, TensorLie};

use super::realize_solvable;

fn lift(t: &TensorElement, nvars: usize, dim: usize) -> Result<TensorElement> {
    Ok(t.embed(nvars)?.pad(dim))
}

/// Extends a realization of the subalgebra `l_1..l_m` to all of `L`, when
/// `l_{m+1}..l_n` span a subalgebra acting nilpotently on `L`.
///
/// The inner `b̄_p` are embedded into `R ⊗ L` over `n` variables and
/// transported by `θ = e^{ad b}`, `b = sum_{i>m} x_i ⊗ l_i`; for `p > m` the
/// seed is `∂_p` alone. The inner data is read in the `Proof` convention
/// whatever convention it was stored in.
pub fn extend_realization(
    alg: &LieAlgebra,
    m: usize,
    inner: &Realization,
    convention: SignConvention,
) -> Result<Realization> {
    let n = alg.dim();
    if !(1 <= m && m <= n) {
        return Err(Error::SplitInvalid(format!("need 1 <= m <= n, got m={m}, n={n}")));
    }
    let prefix = alg.restrict(0..m)?;
    if *inner.algebra() != prefix || inner.nvars() != m {
        return Err(Error::SplitInvalid(format!("inner realization does not realize l1..l{m}")));
    }
    if m < n {
        let suffix = Subspace::coordinate(n, m..n);
        if !is_subalgebra(alg, &suffix) {
            return Err(Error::SplitInvalid(format!("l{}..l{n} do not span a subalgebra", m + 1)));
        }
        if !acts_nilpotently(alg, &suffix) {
            return Err(Error::SplitInvalid(format!("l{}..l{n} do not act nilpotently on L", m + 1)));
        }
    }

    let raw_inner = inner.with_convention(SignConvention::Proof);
    let tl = TensorLie::new(alg, n);
    let mut seeds = raw_inner.b_rows().iter().map(|r| lift(r, n, n)).collect::<Result<Vec<_>>>()?;
    seeds.resize(n, tl.zero());
    let b = TensorElement::coordinate_sum(n, n, m..n);
    let rows = transport(&tl, &seeds, &[&b])?;

    let iw = raw_inner.witness();
    let witness = Witness {
        w: iw.w.as_ref().map(|t| lift(t, n, n)).transpose()?,
        u: iw.u.as_ref().map(|t| lift(t, n, n)).transpose()?,
        b: Some(b),
        basis_change: None,
        notes: iw.notes.clone(),
    };
    let raw = Realization::assemble(alg.clone(), rows, witness, SignConvention::Proof)?;
    Ok(raw.with_convention(convention))
}

/// Realizes the solvable prefix `l_1..l_m` with `inner_split`, then extends
/// over the suffix.
pub fn realize_general(
    alg: &LieAlgebra,
    levi: &LeviData,
    inner_split: &SolvableSplit,
    convention: SignConvention,
) -> Result<Realization> {
    verify_levi(alg, levi)?;
    let m = levi.borel_end;
    let prefix = alg.restrict(0..m)?;
    let inner = realize_solvable(&prefix, inner_split, SignConvention::Proof)?;
    extend_realization(alg, m, &inner, convention)
}
