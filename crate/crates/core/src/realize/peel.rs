use super::{b_rows, check_commuting, shifted};
use crate::error::{Error, Result};
use crate::liealg::{satisfies_flag_condition, LieAlgebra};
use crate::polyring::{PolyMatrix, Polynomial};
use crate::tensorlie::{AhatElement, TensorElement, TensorLie};

/// `e^{ad h_s ⊗ l_{m_s}} ∘ ... ∘ e^{ad h_1 ⊗ l_{m_1}}`, kept as its factors.
/// Columns are 0-based here and strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredAutomorphism {
    factors: Vec<(usize, Polynomial)>,
}

impl FactoredAutomorphism {
    pub fn new(factors: Vec<(usize, Polynomial)>) -> Result<Self> {
        for pair in factors.windows(2) {
            if pair[1].0 <= pair[0].0 {
                return Err(Error::NoProgress { column: pair[1].0 + 1 });
            }
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[(usize, Polynomial)] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Applies the factors in order, first factor first.
    pub fn apply(&self, alg: &LieAlgebra, a: &AhatElement) -> Result<AhatElement> {
        let tl = TensorLie::new(alg, a.tensor().nvars());
        let mut cur = a.clone();
        for (col, h) in &self.factors {
            cur = tl.exp_ad(&TensorElement::single(alg.dim(), *col, h.clone()), &cur)?;
        }
        Ok(cur)
    }

    /// True when every `∂_p + b̄_p` is carried to `∂_p`.
    pub fn straightens(&self, alg: &LieAlgebra, b: &PolyMatrix) -> Result<bool> {
        let tl = TensorLie::new(alg, b.nvars());
        for (p, row) in b_rows(b).iter().enumerate() {
            if self.apply(alg, &shifted(&tl, p, row))? != tl.partial(p) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `h` with `∂h/∂x_p = g_p` for all `p`, by integrating one variable at a
/// time. Fails with `NotClosed` (reporting `column`, 1-based) when no such
/// polynomial exists.
pub fn polynomial_potential(g: &[Polynomial], column: usize) -> Result<Polynomial> {
    let nvars = g.len();
    let mut h = Polynomial::zero(nvars);
    for (p, gp) in g.iter().enumerate() {
        let rest = gp - &h.partial(p)?;
        // closedness makes `rest` free of x_1..x_p
        h += &rest.integrate(p)?;
    }
    for (p, gp) in g.iter().enumerate() {
        if h.partial(p)? != *gp {
            return Err(Error::NotClosed { column });
        }
    }
    Ok(h)
}

/// Recovers factors `e^{ad h_s ⊗ l_{m_s}}` straightening `∂_p + b̄_p` to
/// `∂_p`, one column at a time from the first nonzero column of `B`.
///
/// Requires the flag condition on the basis and the compatibility of `B`;
/// under both, each column is a closed form and every step clears it without
/// touching earlier columns.
pub fn peel_to_factored_automorphism(alg: &LieAlgebra, b: &PolyMatrix) -> Result<FactoredAutomorphism> {
    let n = alg.dim();
    if b.rows() != n || b.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: b.rows().max(b.cols()) });
    }
    if b.nvars() != n {
        return Err(Error::VariableMismatch { left: n, right: b.nvars() });
    }
    satisfies_flag_condition(alg)?;
    let mut rows = b_rows(b);
    check_commuting(alg, &rows)?;

    let tl = TensorLie::new(alg, n);
    let mut factors: Vec<(usize, Polynomial)> = Vec::new();
    while let Some(col) = (0..n).find(|&k| rows.iter().any(|r| !r.coord(k).is_zero())) {
        if factors.last().is_some_and(|(prev, _)| col <= *prev) {
            return Err(Error::NoProgress { column: col + 1 });
        }
        let g: Vec<Polynomial> = rows.iter().map(|r| r.coord(col).clone()).collect();
        for p in 0..n {
            for q in p + 1..n {
                if g[q].partial(p)? != g[p].partial(q)? {
                    return Err(Error::NotClosed { column: col + 1 });
                }
            }
        }
        let h = polynomial_potential(&g, col + 1)?;
        let gen = TensorElement::single(n, col, h.clone());
        rows = rows
            .iter()
            .enumerate()
            .map(|(p, r)| Ok(tl.exp_ad(&gen, &shifted(&tl, p, r))?.into_tensor()))
            .collect::<Result<_>>()?;
        factors.push((col, h));
    }
    FactoredAutomorphism::new(factors)
}
