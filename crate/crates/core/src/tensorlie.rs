//! The Lie algebra `R ⊗ L` over `R = Q[x1..xn]`, and its extension `Â` by the
//! constant-coefficient partials `∂_1..∂_n`.
//!
//! In `Â` the partials commute with each other and act on `R ⊗ L` through the
//! coefficients: `[∂_p, f ⊗ l] = (∂f/∂x_p) ⊗ l`. So for `w ∈ R ⊗ L`,
//! `ad w (∂_p) = -∂_p w`, and `e^{ad w}` is a finite sum whenever `ad w` is
//! nilpotent on `R ⊗ L`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::liealg::LieAlgebra;
use crate::polyring::{factorial, int, Polynomial, Rational};

/// `sum_k f_k ⊗ l_k`, stored as the coefficient vector `(f_1..f_dim)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    nvars: usize,
    coords: Vec<Polynomial>,
}

impl TensorElement {
    pub fn new(nvars: usize, coords: Vec<Polynomial>) -> Result<Self> {
        if let Some(p) = coords.iter().find(|p| p.nvars() != nvars) {
            return Err(Error::VariableMismatch { left: nvars, right: p.nvars() });
        }
        Ok(Self { nvars, coords })
    }

    pub fn zero(dim: usize, nvars: usize) -> Self {
        Self { nvars, coords: vec![Polynomial::zero(nvars); dim] }
    }

    /// `f ⊗ l_k`.
    pub fn single(dim: usize, k: usize, f: Polynomial) -> Self {
        let mut t = Self::zero(dim, f.nvars());
        t.coords[k] = f;
        t
    }

    /// `1 ⊗ l_k`.
    pub fn basis(dim: usize, nvars: usize, k: usize) -> Self {
        Self::single(dim, k, Polynomial::one(nvars))
    }

    /// `sum_{i in range} x_{i+1} ⊗ l_{i+1}` (0-based range), the element every
    /// construction exponentiates.
    pub fn coordinate_sum(dim: usize, nvars: usize, range: std::ops::Range<usize>) -> Self {
        let mut t = Self::zero(dim, nvars);
        for i in range {
            t.coords[i] = Polynomial::var(nvars, i);
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coords(&self) -> &[Polynomial] {
        &self.coords
    }

    pub fn coord(&self, k: usize) -> &Polynomial {
        &self.coords[k]
    }

    pub fn into_coords(self) -> Vec<Polynomial> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Polynomial::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|p| p.scale(c))
    }

    /// Multiplication by a scalar of `R`.
    pub fn mul_poly(&self, f: &Polynomial) -> Self {
        self.map(|p| f * p)
    }

    pub fn partial(&self, axis: usize) -> Result<Self> {
        let coords = self.coords.iter().map(|p| p.partial(axis)).collect::<Result<_>>()?;
        Ok(Self { nvars: self.nvars, coords })
    }

    /// `sum_p alpha_p ∂_p self`.
    pub fn directional(&self, alpha: &[Rational]) -> Result<Self> {
        let mut out = Self::zero(self.dim(), self.nvars);
        for (p, a) in alpha.iter().enumerate() {
            if !a.is_zero() {
                out = &out + &self.partial(p)?.scale(a);
            }
        }
        Ok(out)
    }

    /// The same element over more variables.
    pub fn embed(&self, nvars: usize) -> Result<Self> {
        let coords = self.coords.iter().map(|p| p.embed(nvars)).collect::<Result<_>>()?;
        Ok(Self { nvars, coords })
    }

    /// The same element in a larger algebra whose first `dim` basis vectors
    /// are the current ones.
    pub fn pad(&self, dim: usize) -> Self {
        let mut coords = self.coords.clone();
        coords.resize(dim, Polynomial::zero(self.nvars));
        Self { nvars: self.nvars, coords }
    }

    /// Coefficients evaluated at `-x`.
    pub fn reflect(&self) -> Self {
        self.map(Polynomial::reflect)
    }

    fn map<F: Fn(&Polynomial) -> Polynomial>(&self, f: F) -> Self {
        Self { nvars: self.nvars, coords: self.coords.iter().map(f).collect() }
    }

    fn zip<F: Fn(&Polynomial, &Polynomial) -> Polynomial>(&self, other: &Self, f: F) -> Self {
        assert_eq!(self.dim(), other.dim(), "tensor elements over different algebras");
        Self {
            nvars: self.nvars,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for &TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Neg for &TensorElement {
    type Output = TensorElement;
    fn neg(self) -> TensorElement {
        self.map(|p| -p)
    }
}

pub(crate) fn write_term(f: &mut fmt::Formatter<'_>, first: bool, coeff: &Polynomial, label: &str) -> fmt::Result {
    let text = coeff.to_string();
    let (neg, body) = match (coeff.num_terms(), text.strip_prefix('-')) {
        (1, Some(rest)) => (true, rest.to_string()),
        (1, None) => (false, text),
        (_, Some(_)) => (true, format!("({})", -coeff)),
        _ => (false, format!("({text})")),
    };
    match (first, neg) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    match body.as_str() {
        "1" => f.write_str(label),
        _ => write!(f, "{body}*{label}"),
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, p) in self.coords.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            write_term(f, first, p, &format!("l{}", k + 1))?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `sum_p alpha_p ∂_p + t` with constant `alpha` and `t ∈ R ⊗ L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AhatElement {
    partials: Vec<Rational>,
    tensor: TensorElement,
}

impl AhatElement {
    pub fn new(partials: Vec<Rational>, tensor: TensorElement) -> Result<Self> {
        if partials.len() != tensor.nvars() {
            return Err(Error::VariableMismatch { left: tensor.nvars(), right: partials.len() });
        }
        Ok(Self { partials, tensor })
    }

    pub fn from_tensor(tensor: TensorElement) -> Self {
        Self { partials: vec![Rational::zero(); tensor.nvars()], tensor }
    }

    /// `∂_{p+1}`.
    pub fn partial(dim: usize, nvars: usize, p: usize) -> Self {
        let mut partials = vec![Rational::zero(); nvars];
        partials[p] = Rational::one();
        Self { partials, tensor: TensorElement::zero(dim, nvars) }
    }

    pub fn partials(&self) -> &[Rational] {
        &self.partials
    }

    pub fn tensor(&self) -> &TensorElement {
        &self.tensor
    }

    pub fn into_tensor(self) -> TensorElement {
        self.tensor
    }

    pub fn is_zero(&self) -> bool {
        self.partials.iter().all(Zero::is_zero) && self.tensor.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            partials: self.partials.iter().zip(&other.partials).map(|(a, b)| a + b).collect(),
            tensor: &self.tensor + &other.tensor,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            partials: self.partials.iter().zip(&other.partials).map(|(a, b)| a - b).collect(),
            tensor: &self.tensor - &other.tensor,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            partials: self.partials.iter().map(|a| a * c).collect(),
            tensor: self.tensor.scale(c),
        }
    }
}

impl fmt::Display for AhatElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nvars = self.tensor.nvars();
        let mut first = true;
        for (p, a) in self.partials.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            write_term(f, first, &Polynomial::constant(nvars, a.clone()), &format!("d/dx{}", p + 1))?;
            first = false;
        }
        if !self.tensor.is_zero() {
            let t = self.tensor.to_string();
            match (first, t.strip_prefix('-')) {
                (true, _) => f.write_str(&t)?,
                (false, Some(rest)) => write!(f, " - {rest}")?,
                (false, None) => write!(f, " + {t}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `R ⊗ L` for a fixed algebra and number of variables.
#[derive(Clone, Copy, Debug)]
pub struct TensorLie<'a> {
    algebra: &'a LieAlgebra,
    nvars: usize,
}

impl<'a> TensorLie<'a> {
    pub fn new(algebra: &'a LieAlgebra, nvars: usize) -> Self {
        Self { algebra, nvars }
    }

    pub fn algebra(&self) -> &'a LieAlgebra {
        self.algebra
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn zero(&self) -> TensorElement {
        TensorElement::zero(self.dim(), self.nvars)
    }

    pub fn basis(&self, k: usize) -> TensorElement {
        TensorElement::basis(self.dim(), self.nvars, k)
    }

    pub fn partial(&self, p: usize) -> AhatElement {
        AhatElement::partial(self.dim(), self.nvars, p)
    }

    fn check(&self, t: &TensorElement) -> Result<()> {
        if t.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: t.dim() });
        }
        if t.nvars() != self.nvars {
            return Err(Error::VariableMismatch { left: self.nvars, right: t.nvars() });
        }
        Ok(())
    }

    /// `[f, g]_k = sum_{i,j} c_ij^k f_i g_j`.
    pub fn bracket(&self, f: &TensorElement, g: &TensorElement) -> Result<TensorElement> {
        self.check(f)?;
        self.check(g)?;
        let mut out = self.zero();
        for (i, j, k, c) in self.algebra.nonzero_constants() {
            let (a, b) = (&f.coords[*i], &g.coords[*j]);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            out.coords[*k] += &(a * b).scale(c);
        }
        Ok(out)
    }

    /// `[α∂ + f, β∂ + g] = α∂g - β∂f + [f, g]`.
    pub fn ahat_bracket(&self, a: &AhatElement, b: &AhatElement) -> Result<AhatElement> {
        let t = &(&a.tensor.directional(&b.partials.iter().map(|x| -x).collect::<Vec<_>>())?
            + &b.tensor.directional(&a.partials)?)
            + &self.bracket(&a.tensor, &b.tensor)?;
        Ok(AhatElement::from_tensor(t))
    }

    /// `[w, [w, ... [w, t]]]`, `times` brackets deep.
    pub fn ad_power(&self, w: &TensorElement, t: &TensorElement, times: usize) -> Result<TensorElement> {
        let mut cur = t.clone();
        for _ in 0..times {
            cur = self.bracket(w, &cur)?;
        }
        Ok(cur)
    }

    /// `t, [w,t], [w,[w,t]], ...` up to the last nonzero term. Fails when
    /// `(ad w)^{dim+1} t` is still nonzero.
    fn ad_orbit(&self, w: &TensorElement, t: &TensorElement) -> Result<Vec<TensorElement>> {
        let mut orbit = Vec::new();
        let mut cur = t.clone();
        while !cur.is_zero() {
            if orbit.len() > self.dim() {
                return Err(Error::NotNilpotentAction { steps: self.dim() + 1 });
            }
            let next = self.bracket(w, &cur)?;
            orbit.push(cur);
            cur = next;
        }
        Ok(orbit)
    }

    /// `φ_w(t) = sum_{i>=1} (ad w)^{i-1} t / i!`.
    pub fn phi(&self, w: &TensorElement, t: &TensorElement) -> Result<TensorElement> {
        self.weighted_orbit_sum(w, t, 1)
    }

    /// `e^{ad w} t = sum_{i>=0} (ad w)^i t / i!` on `R ⊗ L`.
    pub fn exp_ad_tensor(&self, w: &TensorElement, t: &TensorElement) -> Result<TensorElement> {
        self.weighted_orbit_sum(w, t, 0)
    }

    fn weighted_orbit_sum(&self, w: &TensorElement, t: &TensorElement, shift: usize) -> Result<TensorElement> {
        let mut out = self.zero();
        for (i, term) in self.ad_orbit(w, t)?.iter().enumerate() {
            out = &out + &term.scale(&(int(1) / factorial(i + shift)));
        }
        Ok(out)
    }

    /// `e^{ad w}` on `Â`: `α∂ + t ↦ α∂ + e^{ad w} t + φ_w(-α∂w)`.
    pub fn exp_ad(&self, w: &TensorElement, a: &AhatElement) -> Result<AhatElement> {
        self.check(w)?;
        let drift = -&w.directional(&a.partials)?;
        let t = &self.exp_ad_tensor(w, &a.tensor)? + &self.phi(w, &drift)?;
        Ok(AhatElement { partials: a.partials.clone(), tensor: t })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::tests::{heisenberg, sl2};
    use crate::polyring::arb_poly;
    use crate::polyring::rat;
    use proptest::prelude::*;

    fn x(nvars: usize, i: usize) -> Polynomial {
        Polynomial::var(nvars, i)
    }

    fn c(nvars: usize, v: i64) -> Polynomial {
        Polynomial::constant(nvars, int(v))
    }

    fn tensor(coords: Vec<Polynomial>) -> TensorElement {
        TensorElement::new(coords[0].nvars(), coords).unwrap()
    }

    // sl2 basis order (H, E, F) = (l1, l2, l3)
    #[test]
    fn sl2_brackets_over_r() {
        let s = sl2();
        let tl = TensorLie::new(&s, 3);
        let u = TensorElement::single(3, 1, x(3, 1));
        let h = tl.basis(0);
        assert_eq!(tl.bracket(&u, &h).unwrap(), TensorElement::single(3, 1, x(3, 1).scale(&int(-2))));
        assert!(tl.bracket(&u, &u).unwrap().is_zero());
    }

    #[test]
    fn sl2_exponential_intermediates() {
        let s = sl2();
        let tl = TensorLie::new(&s, 3);
        let u = TensorElement::single(3, 1, x(3, 1));
        let b = TensorElement::single(3, 2, x(3, 2));

        let d2 = tl.exp_ad(&u, &tl.partial(1)).unwrap();
        assert_eq!(d2.partials(), tl.partial(1).partials());
        assert_eq!(*d2.tensor(), -&tl.basis(1));

        // ∂1 + 2 x2 E - H
        let start = AhatElement::new(
            vec![int(1), int(0), int(0)],
            tensor(vec![c(3, -1), x(3, 1).scale(&int(2)), Polynomial::zero(3)]),
        )
        .unwrap();
        let got = tl.exp_ad(&b, &start).unwrap();
        let x2x3 = &x(3, 1) * &x(3, 2);
        let expected = tensor(vec![
            -(&c(3, 1) + &x2x3.scale(&int(2))),
            x(3, 1).scale(&int(2)),
            -(&x(3, 2).scale(&int(2)) + &(&x2x3 * &x(3, 2)).scale(&int(2))),
        ]);
        assert_eq!(*got.tensor(), expected);

        let got = tl.exp_ad(&b, &tl.exp_ad(&u, &tl.partial(1)).unwrap()).unwrap();
        assert_eq!(got.partials()[0], int(0));
        let expected = tensor(vec![x(3, 2), c(3, -1), x(3, 2).pow(2)]);
        assert_eq!(*tl.exp_ad(&b, &d2).unwrap().tensor(), expected);

        assert_eq!(*tl.exp_ad(&b, &tl.partial(2)).unwrap().tensor(), -&tl.basis(2));
    }

    #[test]
    fn heisenberg_phi() {
        let h = heisenberg(1);
        let tl = TensorLie::new(&h, 3);
        let w = TensorElement::coordinate_sum(3, 3, 0..3);
        let got = tl.exp_ad(&w, &tl.partial(0)).unwrap();
        let expected = tensor(vec![c(3, -1), Polynomial::zero(3), x(3, 1).scale(&rat(1, 2))]);
        assert_eq!(*got.tensor(), expected);
        let got = tl.phi(&w, &(-&tl.basis(1))).unwrap();
        let expected = tensor(vec![Polynomial::zero(3), c(3, -1), x(3, 0).scale(&rat(-1, 2))]);
        assert_eq!(got, expected);
    }

    #[test]
    fn non_nilpotent_action_is_rejected() {
        let s = sl2();
        let tl = TensorLie::new(&s, 1);
        let w = TensorElement::single(3, 0, x(1, 0));
        let err = tl.exp_ad_tensor(&w, &tl.basis(1)).unwrap_err();
        assert_eq!(err, Error::NotNilpotentAction { steps: 4 });
    }

    #[test]
    fn display_forms() {
        let t = tensor(vec![c(3, -1), &c(3, 1) + &(&x(3, 1) * &x(3, 2)).scale(&int(2)), x(3, 0).scale(&rat(1, 2))]);
        assert_eq!(t.to_string(), "-l1 + (1 + 2*x2*x3)*l2 + 1/2*x1*l3");
        let a = AhatElement::new(vec![int(1), int(0), int(-2)], -&t).unwrap();
        assert_eq!(a.to_string(), "d/dx1 - 2*d/dx3 + l1 - (1 + 2*x2*x3)*l2 - 1/2*x1*l3");
        assert_eq!(TensorElement::zero(2, 1).to_string(), "0");
    }

    fn arb_tensor(dim: usize, nvars: usize) -> impl Strategy<Value = TensorElement> {
        prop::collection::vec(arb_poly(nvars), dim).prop_map(move |cs| TensorElement::new(nvars, cs).unwrap())
    }

    fn arb_ahat(dim: usize, nvars: usize) -> impl Strategy<Value = AhatElement> {
        (prop::collection::vec(-2i64..=2, nvars), arb_tensor(dim, nvars))
            .prop_map(|(p, t)| AhatElement::new(p.into_iter().map(int).collect(), t).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn bracket_is_r_bilinear_and_alternating(f in arb_tensor(3, 2), g in arb_tensor(3, 2), h in arb_poly(2)) {
            let s = sl2();
            let tl = TensorLie::new(&s, 2);
            prop_assert!(tl.bracket(&f, &f).unwrap().is_zero());
            prop_assert_eq!(tl.bracket(&f.mul_poly(&h), &g).unwrap(), tl.bracket(&f, &g).unwrap().mul_poly(&h));
            prop_assert_eq!(tl.bracket(&g, &f).unwrap(), -&tl.bracket(&f, &g).unwrap());
        }

        #[test]
        fn partials_are_derivations(f in arb_tensor(3, 2), g in arb_tensor(3, 2)) {
            let s = sl2();
            let tl = TensorLie::new(&s, 2);
            let lhs = tl.bracket(&f, &g).unwrap().partial(1).unwrap();
            let rhs = &tl.bracket(&f.partial(1).unwrap(), &g).unwrap() + &tl.bracket(&f, &g.partial(1).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn ahat_jacobi(a in arb_ahat(3, 2), b in arb_ahat(3, 2), cc in arb_ahat(3, 2)) {
            let s = sl2();
            let tl = TensorLie::new(&s, 2);
            let br = |u: &AhatElement, v: &AhatElement| tl.ahat_bracket(u, v).unwrap();
            let sum = br(&a, &br(&b, &cc)).add(&br(&b, &br(&cc, &a))).add(&br(&cc, &br(&a, &b)));
            prop_assert!(sum.is_zero());
        }

        #[test]
        fn exp_ad_is_an_automorphism(w in arb_tensor(3, 2), a in arb_ahat(3, 2), b in arb_ahat(3, 2)) {
            let h = heisenberg(1);
            let tl = TensorLie::new(&h, 2);
            let e = |u: &AhatElement| tl.exp_ad(&w, u).unwrap();
            let lhs = e(&tl.ahat_bracket(&a, &b).unwrap());
            let rhs = tl.ahat_bracket(&e(&a), &e(&b)).unwrap();
            prop_assert_eq!(lhs, rhs);
            // e^{-ad w} undoes e^{ad w}
            prop_assert_eq!(tl.exp_ad(&(-&w), &e(&a)).unwrap(), a);
        }

        #[test]
        fn phi_matches_series_oracle(w in arb_tensor(3, 2), t in arb_tensor(3, 2)) {
            // (ad w) φ_w(t) = e^{ad w} t - t
            let h = heisenberg(1);
            let tl = TensorLie::new(&h, 2);
            let lhs = tl.bracket(&w, &tl.phi(&w, &t).unwrap()).unwrap();
            let rhs = &tl.exp_ad_tensor(&w, &t).unwrap() - &t;
            prop_assert_eq!(lhs, rhs);
        }
    }
}
