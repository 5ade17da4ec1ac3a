//! Cartan and Levi data supplied alongside an algebra, and their checks.
//!
//! The constructions take these as inputs. [`heuristic_cartan`] can propose a
//! Cartan subalgebra of a solvable algebra, but nothing here computes Levi
//! decompositions.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::series::{acts_nilpotently, bracket_span, is_solvable};
use super::subspace::{nullspace, BasisChange, QVector, Subspace};
use super::LieAlgebra;
use crate::error::{Error, Result};
use crate::polyring::{int, Rational};

/// Basis layout for a solvable algebra: `l_1..l_m` span a Cartan subalgebra
/// `H`, `l_{k+1}..l_m` span `H ∩ [L,L]`, and `l_{k+1}..l_n` span `[L,L]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolvableSplit {
    pub k: usize,
    pub m: usize,
}

/// Basis layout for the general case: `l_1..l_m` span a solvable subalgebra
/// (radical plus a Borel subalgebra), `l_{m+1}..l_n` span a subalgebra acting
/// nilpotently on `L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LeviData {
    /// Dimension of the solvable radical, checked when given.
    pub solvable_dim: Option<usize>,
    pub borel_end: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Split {
    Solvable(SolvableSplit),
    Levi(LeviData),
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::SplitInvalid(msg.into())
}

pub fn is_subalgebra(alg: &LieAlgebra, s: &Subspace) -> bool {
    s.contains_subspace(&bracket_span(alg, s, s))
}

fn is_nilpotent_subalgebra(alg: &LieAlgebra, s: &Subspace) -> bool {
    let mut current = s.clone();
    for _ in 0..=s.dim() {
        if current.is_zero() {
            return true;
        }
        current = bracket_span(alg, s, &current);
    }
    current.is_zero()
}

fn normalizer(alg: &LieAlgebra, s: &Subspace) -> Subspace {
    let n = alg.dim();
    // rows of `ann` cut out `s`: x in s iff ann * x = 0
    let ann = nullspace(s.basis(), n);
    let mut rows: Vec<QVector> = Vec::new();
    for h in s.basis() {
        let ad = alg.ad_matrix(h);
        for q in &ann {
            rows.push(
                (0..n)
                    .map(|j| q.iter().zip(&ad).map(|(a, row)| a * &row[j]).sum())
                    .collect(),
            );
        }
    }
    Subspace::span(n, nullspace(&rows, n))
}

fn is_cartan(alg: &LieAlgebra, h: &Subspace) -> bool {
    is_subalgebra(alg, h) && is_nilpotent_subalgebra(alg, h) && normalizer(alg, h) == *h
}

fn killing(alg: &LieAlgebra, x: &[Rational], y: &[Rational]) -> Rational {
    let (a, b) = (alg.ad_matrix(x), alg.ad_matrix(y));
    let n = alg.dim();
    let mut t = Rational::zero();
    for i in 0..n {
        for k in 0..n {
            t += &a[i][k] * &b[k][i];
        }
    }
    t
}

/// The solvable radical, computed as the Killing-orthogonal of `[L,L]`.
pub fn radical(alg: &LieAlgebra) -> Subspace {
    let n = alg.dim();
    let full = Subspace::full(n);
    let derived = bracket_span(alg, &full, &full);
    let rows: Vec<QVector> = derived
        .basis()
        .iter()
        .map(|y| (0..n).map(|i| killing(alg, &super::subspace::unit_vec(n, i), y)).collect())
        .collect();
    Subspace::span(n, nullspace(&rows, n))
}

pub fn verify_solvable_split(alg: &LieAlgebra, split: &SolvableSplit) -> Result<()> {
    let n = alg.dim();
    let SolvableSplit { k, m } = *split;
    if !(1 <= k && k <= m && m <= n) {
        return Err(invalid(format!("need 1 <= k <= m <= n, got k={k}, m={m}, n={n}")));
    }
    if !is_solvable(alg) {
        return Err(invalid("algebra is not solvable"));
    }
    let h = Subspace::coordinate(n, 0..m);
    if !is_subalgebra(alg, &h) {
        return Err(invalid(format!("l1..l{m} do not span a subalgebra")));
    }
    if !is_nilpotent_subalgebra(alg, &h) {
        return Err(invalid(format!("l1..l{m} span a subalgebra that is not nilpotent")));
    }
    if normalizer(alg, &h) != h {
        return Err(invalid(format!("l1..l{m} span a subalgebra that is not self-normalizing")));
    }
    let full = Subspace::full(n);
    let derived = bracket_span(alg, &full, &full);
    if Subspace::coordinate(n, k..n) != derived {
        return Err(invalid(format!(
            "l{}..l{n} do not span [L,L] (dimension {})",
            k + 1,
            derived.dim()
        )));
    }
    Ok(())
}

pub fn verify_levi(alg: &LieAlgebra, levi: &LeviData) -> Result<()> {
    let n = alg.dim();
    let m = levi.borel_end;
    if !(1 <= m && m <= n) {
        return Err(invalid(format!("need 1 <= m <= n, got m={m}, n={n}")));
    }
    let prefix = Subspace::coordinate(n, 0..m);
    if !is_subalgebra(alg, &prefix) {
        return Err(invalid(format!("l1..l{m} do not span a subalgebra")));
    }
    if !is_solvable(&alg.restrict(0..m)?) {
        return Err(invalid(format!("l1..l{m} span a subalgebra that is not solvable")));
    }
    if m < n {
        let suffix = Subspace::coordinate(n, m..n);
        if !is_subalgebra(alg, &suffix) {
            return Err(invalid(format!("l{}..l{n} do not span a subalgebra", m + 1)));
        }
        if !acts_nilpotently(alg, &suffix) {
            return Err(invalid(format!("l{}..l{n} do not act nilpotently on L", m + 1)));
        }
    }
    if let Some(d) = levi.solvable_dim {
        let rad = radical(alg);
        if rad.dim() != d {
            return Err(invalid(format!("radical has dimension {}, not {d}", rad.dim())));
        }
        if !prefix.contains_subspace(&rad) {
            return Err(invalid(format!("radical is not contained in l1..l{m}")));
        }
    }
    Ok(())
}

pub fn verify_split(alg: &LieAlgebra, split: &Split) -> Result<()> {
    match split {
        Split::Solvable(s) => verify_solvable_split(alg, s),
        Split::Levi(l) => verify_levi(alg, l),
    }
}

/// Heuristic: the Fitting null space of `ad x` for a random rational `x` is a
/// Cartan subalgebra when `x` is regular. Tries up to 8 seeded elements and
/// returns the first candidate that checks out.
pub fn heuristic_cartan(alg: &LieAlgebra, seed: u64) -> Result<Subspace> {
    let n = alg.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..8 {
        let x: QVector = (0..n).map(|_| int(rng.random_range(-3..=3))).collect();
        if x.iter().all(Zero::is_zero) {
            continue;
        }
        let ad = alg.ad_matrix(&x);
        let mut power = ad.clone();
        for _ in 1..n {
            power = super::subspace::mat_mul(&power, &ad);
        }
        let h = Subspace::span(n, nullspace(&power, n));
        if is_cartan(alg, &h) {
            return Ok(h);
        }
    }
    Err(invalid("no Cartan subalgebra found after 8 random attempts"))
}

/// Rewrites a solvable algebra in a basis adapted to the Cartan subalgebra `h`:
/// a complement of `H ∩ [L,L]` in `H`, then `H ∩ [L,L]`, then a complement of
/// it in `[L,L]`.
pub fn solvable_split_basis(
    alg: &LieAlgebra,
    h: &Subspace,
) -> Result<(BasisChange, LieAlgebra, SolvableSplit)> {
    let n = alg.dim();
    let full = Subspace::full(n);
    let derived = bracket_span(alg, &full, &full);
    let meet = h.intersect(&derived);
    let head = meet.extend_with(h.basis());
    let tail = meet.extend_with(derived.basis());
    let mut rows = head.clone();
    rows.extend(meet.basis().iter().cloned());
    rows.extend(tail);
    if rows.len() != n {
        return Err(invalid("H + [L,L] does not span L"));
    }
    let change = BasisChange::new(rows)?;
    let adapted = alg.change_basis(&change)?;
    let split = SolvableSplit { k: head.len(), m: head.len() + meet.dim() };
    verify_solvable_split(&adapted, &split)?;
    Ok((change, adapted, split))
}
