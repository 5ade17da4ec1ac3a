//! The constructions: each one produces elements `b̄_p ∈ R ⊗ L` with
//! `[∂_p + b̄_p, ∂_q + b̄_q] = 0` in `Â`, then reads off the fields from
//! `∂_p = sum_j b_pj D_j`, i.e. `A = B^{-1}` and `D_i = sum_j a_ij ∂_j`.

mod extend;
mod nilpotent;
mod nowicki;
mod peel;
mod solvable;

pub use extend::{extend_realization, realize_general};
pub use nilpotent::realize_nilpotent;
pub use nowicki::nowicki_commuting_basis;
pub use peel::{peel_to_factored_automorphism, polynomial_potential, FactoredAutomorphism};
pub use solvable::realize_solvable;

use crate::error::{Error, Result};
use crate::liealg::{BasisChange, LieAlgebra};
use crate::polyring::PolyMatrix;
use crate::tensorlie::{AhatElement, TensorElement, TensorLie};
use crate::vectorfield::FieldFamily;

/// Which of two equivalent sign choices the output uses.
///
/// `Proof` keeps the constructions' own choices: exponentials of
/// `sum x_i ⊗ l_i`, so an abelian algebra comes out as `D_i = -∂_i`.
/// `Normalized` conjugates the result by `x ↦ -x` (coefficients `a(x)`
/// become `-a(-x)`), which turns the abelian case into the standard basis and
/// matches the worked Heisenberg and `sl2` fields term by term.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SignConvention {
    Proof,
    #[default]
    Normalized,
}

/// The elements a construction exponentiated, for traceability.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Witness {
    /// Generator over the nilpotent (or Cartan) part.
    pub w: Option<TensorElement>,
    /// Generator over `[L,L]` in the solvable construction.
    pub u: Option<TensorElement>,
    /// Generator over the suffix in an extension.
    pub b: Option<TensorElement>,
    /// Set when the input basis had to be changed; the realized constants
    /// are then those of the new basis.
    pub basis_change: Option<BasisChange>,
    pub notes: Vec<String>,
}

impl Witness {
    fn reflect(&self) -> Witness {
        Witness {
            w: self.w.as_ref().map(TensorElement::reflect),
            u: self.u.as_ref().map(TensorElement::reflect),
            b: self.b.as_ref().map(TensorElement::reflect),
            basis_change: self.basis_change.clone(),
            notes: self.notes.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    algebra: LieAlgebra,
    fields: FieldFamily,
    b: PolyMatrix,
    a: PolyMatrix,
    witness: Witness,
    convention: SignConvention,
}

impl Realization {
    /// Builds the realization from `b̄_1..b̄_n`, after checking that the
    /// elements `∂_p + b̄_p` commute in `Â`.
    pub(crate) fn assemble(
        algebra: LieAlgebra,
        rows: Vec<TensorElement>,
        witness: Witness,
        convention: SignConvention,
    ) -> Result<Realization> {
        let n = algebra.dim();
        if rows.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: rows.len() });
        }
        check_commuting(&algebra, &rows)?;
        let b = PolyMatrix::from_rows(rows.into_iter().map(TensorElement::into_coords).collect())?;
        let a = b.adjugate_inverse()?;
        let fields = FieldFamily::from_matrix(&a)?;
        Ok(Realization { algebra, fields, b, a, witness, convention })
    }

    /// Reassembles a realization read from a file; checks shapes and `A·B = I`.
    pub fn from_parts(
        algebra: LieAlgebra,
        fields: FieldFamily,
        b: PolyMatrix,
        a: PolyMatrix,
        witness: Witness,
        convention: SignConvention,
    ) -> Result<Realization> {
        let n = algebra.dim();
        for m in [&b, &a] {
            if m.rows() != n || m.cols() != n || m.nvars() != n {
                return Err(Error::DimensionMismatch { expected: n, found: m.rows() });
            }
        }
        if fields.matrix() != a {
            return Err(Error::Parse("fields do not match the matrix A".into()));
        }
        if !a.checked_mul(&b)?.is_identity() {
            return Err(Error::Parse("A is not the inverse of B".into()));
        }
        Ok(Realization { algebra, fields, b, a, witness, convention })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn fields(&self) -> &FieldFamily {
        &self.fields
    }

    /// `∂_p = sum_j b_pj D_j`; row `p` holds the coordinates of `b̄_p`.
    pub fn b(&self) -> &PolyMatrix {
        &self.b
    }

    pub fn a(&self) -> &PolyMatrix {
        &self.a
    }

    pub fn witness(&self) -> &Witness {
        &self.witness
    }

    pub fn convention(&self) -> SignConvention {
        self.convention
    }

    pub fn nvars(&self) -> usize {
        self.b.nvars()
    }

    /// `b̄_1..b̄_n` as elements of `R ⊗ L`.
    pub fn b_rows(&self) -> Vec<TensorElement> {
        b_rows(&self.b)
    }

    /// Records that the realized algebra is the input rewritten by `change`.
    pub fn with_basis_change(mut self, change: BasisChange, note: String) -> Realization {
        self.witness.basis_change = Some(match self.witness.basis_change.take() {
            Some(inner) => change.then(&inner),
            None => change,
        });
        self.witness.notes.push(note);
        self
    }

    pub fn with_convention(&self, convention: SignConvention) -> Realization {
        if convention == self.convention {
            return self.clone();
        }
        let flip = |m: &PolyMatrix| m.map(|p| -p.reflect());
        Realization {
            algebra: self.algebra.clone(),
            fields: self.fields.reflect(),
            b: flip(&self.b),
            a: flip(&self.a),
            witness: self.witness.reflect(),
            convention,
        }
    }
}

pub(crate) fn b_rows(b: &PolyMatrix) -> Vec<TensorElement> {
    (0..b.rows())
        .map(|p| TensorElement::new(b.nvars(), b.row(p).to_vec()).expect("rows share the matrix ring"))
        .collect()
}

pub(crate) fn shifted(tl: &TensorLie<'_>, p: usize, bp: &TensorElement) -> AhatElement {
    tl.partial(p).add(&AhatElement::from_tensor(bp.clone()))
}

/// First `(p, q, k)` (1-based) with `[∂_p + b̄_p, ∂_q + b̄_q]` nonzero in
/// coordinate `k`.
pub(crate) fn check_commuting(algebra: &LieAlgebra, rows: &[TensorElement]) -> Result<()> {
    let nvars = rows.first().map_or(0, TensorElement::nvars);
    let tl = TensorLie::new(algebra, nvars);
    for p in 0..rows.len() {
        for q in p + 1..rows.len() {
            let br = tl.ahat_bracket(&shifted(&tl, p, &rows[p]), &shifted(&tl, q, &rows[q]))?;
            if let Some(k) = br.tensor().coords().iter().position(|c| !c.is_zero()) {
                return Err(Error::CompatibilityFails { p: p + 1, q: q + 1, k: k + 1 });
            }
        }
    }
    Ok(())
}

/// `θ(∂_p + d̄_p) - ∂_p` for each `p`, where `θ` applies the exponentials of
/// `gens` in order.
pub(crate) fn transport(
    tl: &TensorLie<'_>,
    seeds: &[TensorElement],
    gens: &[&TensorElement],
) -> Result<Vec<TensorElement>> {
    seeds
        .iter()
        .enumerate()
        .map(|(p, d)| {
            let mut cur = shifted(tl, p, d);
            for g in gens {
                cur = tl.exp_ad(g, &cur)?;
            }
            Ok(cur.into_tensor())
        })
        .collect()
}

pub(crate) fn zero_rows(tl: &TensorLie<'_>) -> Vec<TensorElement> {
    vec![tl.zero(); tl.nvars()]
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::liealg::tests::{heisenberg, sl2, two_dim};
    use crate::liealg::{LeviData, SolvableSplit};
    use crate::polyring::{int, rat, Polynomial};

    pub(crate) fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    pub(crate) fn k(n: usize, v: i64) -> Polynomial {
        Polynomial::constant(n, int(v))
    }

    pub(crate) fn field(coeffs: Vec<Polynomial>) -> crate::vectorfield::VectorField {
        crate::vectorfield::VectorField::new(coeffs).unwrap()
    }

    /// Heisenberg fields in closed form:
    /// `∂_i - x_{r+i}/2 ∂_{2r+1}`, `∂_i + x_{i-r}/2 ∂_{2r+1}`, `∂_{2r+1}`.
    pub(crate) fn heisenberg_golden(r: usize) -> FieldFamily {
        let n = 2 * r + 1;
        let fields = (0..n)
            .map(|i| {
                let mut c = vec![Polynomial::zero(n); n];
                c[i] = Polynomial::one(n);
                if i < r {
                    c[n - 1] = x(n, r + i).scale(&rat(-1, 2));
                } else if i < 2 * r {
                    c[n - 1] = x(n, i - r).scale(&rat(1, 2));
                }
                field(c)
            })
            .collect();
        FieldFamily::new(n, fields).unwrap()
    }

    #[test]
    fn heisenberg_matches_closed_form() {
        for r in 1..=3 {
            let real = realize_nilpotent(&heisenberg(r), SignConvention::Normalized).unwrap();
            assert_eq!(*real.fields(), heisenberg_golden(r));
            assert_eq!(real.b().det().unwrap(), Polynomial::one(2 * r + 1));
            assert!(real.witness().notes.iter().any(|n| n.contains("x_(i-n)")));
        }
    }

    #[test]
    fn normalized_nilpotent_equals_negated_generator() {
        // conjugating by x -> -x is the same as exponentiating -sum x_i ⊗ l_i
        let h = heisenberg(1);
        let tl = TensorLie::new(&h, 3);
        let w = -&TensorElement::coordinate_sum(3, 3, 0..3);
        let rows = transport(&tl, &zero_rows(&tl), &[&w]).unwrap();
        let direct = Realization::assemble(h.clone(), rows, Witness::default(), SignConvention::Normalized).unwrap();
        let real = realize_nilpotent(&h, SignConvention::Normalized).unwrap();
        assert_eq!(real.b(), direct.b());
        assert_eq!(real.fields(), direct.fields());
        assert_eq!(real.witness().w, Some(w));
    }

    #[test]
    fn abelian_signs() {
        let ab = LieAlgebra::abelian(3);
        let raw = realize_nilpotent(&ab, SignConvention::Proof).unwrap();
        assert_eq!(*raw.b(), PolyMatrix::identity(3, 3).scale(&int(-1)));
        let norm = realize_nilpotent(&ab, SignConvention::Normalized).unwrap();
        assert!(norm.a().is_identity());
        assert_eq!(norm.with_convention(SignConvention::Proof), raw);
    }

    #[test]
    fn two_dim_solvable_trace() {
        let real = realize_solvable(&two_dim(), &SolvableSplit { k: 1, m: 1 }, SignConvention::Proof).unwrap();
        let b = PolyMatrix::from_rows(vec![vec![k(2, -1), x(2, 1)], vec![k(2, 0), k(2, -1)]]).unwrap();
        assert_eq!(*real.b(), b);
        // D1 = -∂1 - x2 ∂2, D2 = -∂2
        assert_eq!(*real.fields().get(0), field(vec![k(2, -1), -x(2, 1)]));
        assert_eq!(*real.fields().get(1), field(vec![k(2, 0), k(2, -1)]));
    }

    #[test]
    fn sl2_through_the_general_pipeline() {
        let s = sl2();
        let levi = LeviData { solvable_dim: None, borel_end: 2 };
        let split = SolvableSplit { k: 1, m: 1 };
        let raw = realize_general(&s, &levi, &split, SignConvention::Proof).unwrap();
        let x2x3 = &x(3, 1) * &x(3, 2);
        let one_plus = &k(3, 1) + &x2x3.scale(&int(2));
        // rows of B: b̄_1, b̄_2, b̄_3 in the (H, E, F) basis
        let b1 = [
            -one_plus.clone(),
            x(3, 1).scale(&int(2)),
            -(&x(3, 2).scale(&int(2)) + &(&x2x3 * &x(3, 2)).scale(&int(2))),
        ];
        assert_eq!(raw.b().row(0), &b1[..]);
        assert_eq!(raw.b().row(1), &[x(3, 2), k(3, -1), x(3, 2).pow(2)][..]);
        assert_eq!(raw.b().row(2), &[k(3, 0), k(3, 0), k(3, -1)][..]);

        let norm = raw.with_convention(SignConvention::Normalized);
        let h = field(vec![k(3, 1), x(3, 1).scale(&int(-2)), x(3, 2).scale(&int(2))]);
        let e = field(vec![-x(3, 2), one_plus, -x(3, 2).pow(2)]);
        let f = field(vec![k(3, 0), k(3, 0), k(3, 1)]);
        assert_eq!(norm.fields().fields(), &[h, e, f][..]);
    }

    #[test]
    fn assemble_rejects_non_commuting_rows() {
        let h = heisenberg(1);
        let tl = TensorLie::new(&h, 3);
        let rows = vec![tl.basis(0), tl.basis(1), tl.basis(2)];
        let err = Realization::assemble(h, rows, Witness::default(), SignConvention::Proof).unwrap_err();
        assert_eq!(err, Error::CompatibilityFails { p: 1, q: 2, k: 3 });
    }
}
