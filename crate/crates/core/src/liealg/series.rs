
use super::subspace::{BasisChange, QVector, Subspace};
use super::LieAlgebra;
use crate::error::{Error, Result};

/// `span{[a, b] : a in A, b in B}`.
pub fn bracket_span(alg: &LieAlgebra, a: &Subspace, b: &Subspace) -> Subspace {
    let mut vs: Vec<QVector> = Vec::new();
    for u in a.basis() {
        for v in b.basis() {
            vs.push(alg.bracket_coords(u, v));
        }
    }
    Subspace::span(alg.dim(), vs)
}

fn descend<F>(alg: &LieAlgebra, next: F) -> Vec<Subspace>
where
    F: Fn(&Subspace) -> Subspace,
{
    let mut series = vec![Subspace::full(alg.dim())];
    loop {
        let last = series.last().unwrap();
        if last.is_zero() {
            break;
        }
        let n = next(last);
        if n.dim() == last.dim() {
            break;
        }
        series.push(n);
    }
    series
}

/// `L ⊇ [L,L] ⊇ [L,[L,L]] ⊇ ...`, strictly decreasing, ending either at 0 or
/// at the term where the series stabilizes.
pub fn lower_central_series(alg: &LieAlgebra) -> Vec<Subspace> {
    let full = Subspace::full(alg.dim());
    descend(alg, |s| bracket_span(alg, &full, s))
}

/// `L ⊇ [L,L] ⊇ [[L,L],[L,L]] ⊇ ...`, with the same termination rule.
pub fn derived_series(alg: &LieAlgebra) -> Vec<Subspace> {
    descend(alg, |s| bracket_span(alg, s, s))
}

pub fn is_nilpotent(alg: &LieAlgebra) -> bool {
    lower_central_series(alg).last().is_some_and(Subspace::is_zero)
}

pub fn is_solvable(alg: &LieAlgebra) -> bool {
    derived_series(alg).last().is_some_and(Subspace::is_zero)
}

/// Checks `c_ij^k = 0` whenever `k <= max(i, j)`; returns the first violation.
pub fn satisfies_flag_condition(alg: &LieAlgebra) -> Result<()> {
    for (i, j, k, _) in alg.nonzero_constants() {
        if k <= i.max(j) {
            return Err(Error::FlagConditionFails { i: i + 1, j: j + 1, k: k + 1 });
        }
    }
    Ok(())
}

/// A basis of a nilpotent algebra satisfying the flag condition, obtained by
/// refining the lower central series (shallow terms first).
///
/// A basis that already satisfies the condition is kept as is. Otherwise each
/// step `L^d ⊃ L^{d+1}` is refined by adding vectors from the echelon basis
/// of `L^d` in pivot order.
pub fn adapted_nilpotent_basis(alg: &LieAlgebra) -> Result<(BasisChange, LieAlgebra)> {
    let series = lower_central_series(alg);
    let last = series.last().unwrap();
    if !last.is_zero() {
        return Err(Error::NotNilpotent { stable_dim: last.dim() });
    }
    if satisfies_flag_condition(alg).is_ok() {
        return Ok((BasisChange::identity(alg.dim()), alg.clone()));
    }
    let mut rows: Vec<QVector> = Vec::with_capacity(alg.dim());
    for pair in series.windows(2) {
        rows.extend(pair[1].extend_with(pair[0].basis()));
    }
    let change = BasisChange::new(rows)?;
    let adapted = alg.change_basis(&change)?;
    debug_assert!(satisfies_flag_condition(&adapted).is_ok());
    Ok((change, adapted))
}

/// Does `s` act nilpotently on `L`,
/// i.e. do all products of `ad s_1 ... ad s_t` vanish for `t = dim L`?
pub fn acts_nilpotently(alg: &LieAlgebra, s: &Subspace) -> bool {
    let mut current = Subspace::full(alg.dim());
    for _ in 0..=alg.dim() {
        if current.is_zero() {
            return true;
        }
        current = bracket_span(alg, s, &current);
    }
    current.is_zero()
}
