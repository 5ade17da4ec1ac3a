//! Independent checks of candidate realizations.
//!
//! Nothing here goes through `R ⊗ L` or the constructions: brackets are
//! recomputed as brackets of vector fields, and the compatibility equations
//! are evaluated entry by entry on the matrix `B`.

use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::liealg::LieAlgebra;
use crate::polyring::{format_rational, int, PolyMatrix, Polynomial, Rational};
use crate::vectorfield::{FieldFamily, VectorField};

/// Seed for the random combinations in [`check_trace_divergence`].
pub const DEFAULT_SEED: u64 = 1;

/// Number of random combinations tested on top of the basis fields.
pub const RANDOM_COMBINATIONS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketFailure {
    /// 1-based.
    pub i: usize,
    pub j: usize,
    pub bracket: VectorField,
    pub expected: VectorField,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicReport {
    /// `None` when the family is not `n` fields in `n` variables.
    pub det: Option<Polynomial>,
    pub shape_error: Option<String>,
    pub bracket_failures: Vec<BracketFailure>,
}

impl BasicReport {
    pub fn det_is_unit(&self) -> bool {
        self.det.as_ref().is_some_and(Polynomial::is_unit)
    }

    pub fn verdict(&self) -> bool {
        self.shape_error.is_none() && self.det_is_unit() && self.bracket_failures.is_empty()
    }
}

fn combination(fam: &FieldFamily, coeffs: &[Rational]) -> VectorField {
    let mut out = VectorField::zero(fam.nvars());
    for (d, c) in fam.fields().iter().zip(coeffs) {
        if !c.is_zero() {
            out = out.checked_add(&d.scale(c)).expect("fields share the ring");
        }
    }
    out
}

/// Determinant of the coefficient matrix and `[D_i, D_j] = sum_k c_ij^k D_k`
/// for every `i < j`.
pub fn check_basic(alg: &LieAlgebra, fam: &FieldFamily) -> BasicReport {
    let n = alg.dim();
    let mut shape_error = None;
    if fam.len() != n {
        shape_error = Some(format!("{} fields for an algebra of dimension {n}", fam.len()));
    } else if fam.nvars() != n {
        shape_error = Some(format!("{n} fields in {} variables", fam.nvars()));
    }
    let det = fam.determinant();
    let mut bracket_failures = Vec::new();
    if fam.len() == n {
        for i in 0..n {
            for j in i + 1..n {
                let bracket = fam.get(i).bracket(fam.get(j)).expect("fields share the ring");
                let coeffs: Vec<Rational> = (0..n).map(|k| alg.c(i, j, k).clone()).collect();
                let expected = combination(fam, &coeffs);
                if bracket != expected {
                    bracket_failures.push(BracketFailure { i: i + 1, j: j + 1, bracket, expected });
                }
            }
        }
    }
    BasicReport { det, shape_error, bracket_failures }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatResidual {
    /// 1-based.
    pub p: usize,
    pub q: usize,
    pub k: usize,
    pub residual: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatReport {
    pub shape_error: Option<String>,
    pub residuals: Vec<CompatResidual>,
}

impl CompatReport {
    pub fn verdict(&self) -> bool {
        self.shape_error.is_none() && self.residuals.is_empty()
    }

    /// The first failing `(p, q, k)`, 1-based.
    pub fn first_failure(&self) -> Option<(usize, usize, usize)> {
        self.residuals.first().map(|r| (r.p, r.q, r.k))
    }
}

/// Evaluates `sum_{i,j} b_pi b_qj c_ij^k + ∂b_qk/∂x_p - ∂b_pk/∂x_q` for all
/// `p < q` and all `k`.
pub fn check_compat_equations(alg: &LieAlgebra, b: &PolyMatrix) -> CompatReport {
    let n = alg.dim();
    if b.rows() != n || b.cols() != n || b.nvars() != n {
        return CompatReport {
            shape_error: Some(format!(
                "B is {}x{} over {} variables, expected {n}x{n} over {n}",
                b.rows(),
                b.cols(),
                b.nvars()
            )),
            residuals: Vec::new(),
        };
    }
    let mut residuals = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            for k in 0..n {
                let mut r = b.get(q, k).partial(p).expect("axis in range") - b.get(p, k).partial(q).expect("axis in range");
                for i in 0..n {
                    for j in 0..n {
                        let c = alg.c(i, j, k);
                        if !c.is_zero() {
                            r += &(b.get(p, i) * b.get(q, j)).scale(c);
                        }
                    }
                }
                if !r.is_zero() {
                    residuals.push(CompatResidual { p: p + 1, q: q + 1, k: k + 1, residual: r });
                }
            }
        }
    }
    CompatReport { shape_error: None, residuals }
}

/// The unique `γ_ij^k ∈ R` with `[D_i, D_j] = sum_k γ_ij^k D_k` (0-based
/// `i`, `j`). Requires the family to be a module basis.
pub fn extract_bracket_coefficients(fam: &FieldFamily, i: usize, j: usize) -> Result<Vec<Polynomial>> {
    let inv = fam.matrix().adjugate_inverse()?;
    let bracket = fam.get(i).bracket(fam.get(j))?;
    let n = fam.nvars();
    Ok((0..n)
        .map(|k| {
            let mut g = Polynomial::zero(n);
            for (l, c) in bracket.coeffs().iter().enumerate() {
                g += &(c * inv.get(l, k));
            }
            g
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    /// Coordinates of the element `d = sum_i d_i l_i`.
    pub element: Vec<Rational>,
    pub trace: Rational,
    pub divergence: Polynomial,
}

impl TraceEntry {
    pub fn holds(&self) -> bool {
        self.divergence.constant_value().is_some_and(|d| d + &self.trace == Rational::zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceReport {
    pub entries: Vec<TraceEntry>,
}

impl TraceReport {
    pub fn verdict(&self) -> bool {
        self.entries.iter().all(TraceEntry::holds)
    }
}

/// `tr(ad d) = -div(d)` for each basis field and for
/// [`RANDOM_COMBINATIONS`] seeded combinations with coefficients in `-3..=3`.
pub fn check_trace_divergence(alg: &LieAlgebra, fam: &FieldFamily, seed: u64) -> TraceReport {
    let n = alg.dim();
    if fam.len() != n {
        return TraceReport { entries: Vec::new() };
    }
    let mut elements: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| int(i64::from(i == j))).collect()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_COMBINATIONS {
        elements.push((0..n).map(|_| int(rng.random_range(-3..=3))).collect());
    }
    let entries = elements
        .into_iter()
        .map(|element| {
            let trace = alg.ad_trace(&element);
            let divergence = combination(fam, &element).divergence().expect("axes in range");
            TraceEntry { element, trace, divergence }
        })
        .collect();
    TraceReport { entries }
}

/// Everything the verifier checked about one candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub basic: BasicReport,
    pub compat: Option<CompatReport>,
    pub trace: TraceReport,
    pub notes: Vec<String>,
}

impl Report {
    /// Runs all checks; `b` adds the compatibility equations.
    pub fn run(alg: &LieAlgebra, fam: &FieldFamily, b: Option<&PolyMatrix>, seed: u64) -> Report {
        Report {
            basic: check_basic(alg, fam),
            compat: b.map(|b| check_compat_equations(alg, b)),
            trace: check_trace_divergence(alg, fam, seed),
            notes: Vec::new(),
        }
    }

    pub fn verdict(&self) -> bool {
        self.basic.verdict()
            && self.compat.as_ref().is_none_or(CompatReport::verdict)
            && self.trace.verdict()
    }
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict: {}", if self.verdict() { "PASS" } else { "FAIL" })?;
        if let Some(e) = &self.basic.shape_error {
            writeln!(f, "shape: {e}")?;
        }
        match &self.basic.det {
            Some(d) => writeln!(f, "det: {d} [{}]", pass(self.basic.det_is_unit()))?,
            None => writeln!(f, "det: undefined (not n fields in n variables) [FAIL]")?,
        }
        writeln!(f, "brackets: {} failing pair(s)", self.basic.bracket_failures.len())?;
        for b in &self.basic.bracket_failures {
            writeln!(f, "  [D{}, D{}] = {}", b.i, b.j, b.bracket)?;
            writeln!(f, "    expected {}", b.expected)?;
        }
        if let Some(c) = &self.compat {
            if let Some(e) = &c.shape_error {
                writeln!(f, "compatibility: {e}")?;
            }
            writeln!(f, "compatibility: {} nonzero residual(s)", c.residuals.len())?;
            for r in &c.residuals {
                writeln!(f, "  (p,q,k) = ({},{},{}): {}", r.p, r.q, r.k, r.residual)?;
            }
        }
        let bad: Vec<_> = self.trace.entries.iter().filter(|e| !e.holds()).collect();
        writeln!(
            f,
            "trace/divergence: {} of {} element(s) satisfy tr(ad d) = -div(d)",
            self.trace.entries.len() - bad.len(),
            self.trace.entries.len()
        )?;
        for e in bad {
            let coords: Vec<String> = e.element.iter().map(format_rational).collect();
            writeln!(f, "  d = ({}): tr = {}, div = {}", coords.join(", "), format_rational(&e.trace), e.divergence)?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}
