use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::{format_rational, int, Rational};
use crate::error::{Error, Result};

/// Exponent vector of a monomial `x1^e1 * ... * xn^en`.
///
/// Ordered by total degree first; within a degree, `x1` ranks ahead of
/// `x2`, so `x1^2 < x1*x2 < x2^2`. This is a monomial order (compatible
/// with multiplication), which exact division relies on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Self { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Self { exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, axis: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[axis] = 1;
        Self { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Sparse polynomial with rational coefficients in a fixed number of variables.
///
/// No stored coefficient is zero. Terms iterate in the canonical graded order
/// of [`Monomial`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    /// The coordinate function `x_{axis+1}`. Panics if `axis >= nvars`.
    pub fn var(nvars: usize, axis: usize) -> Self {
        assert!(axis < nvars, "variable x{} not in a ring of {nvars} variables", axis + 1);
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::var(nvars, axis), Rational::one());
        p
    }

    pub fn monomial(mono: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(mono.nvars());
        if !c.is_zero() {
            p.terms.insert(mono, c);
        }
        p
    }

    /// Collects terms, summing repeated monomials and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::VariableMismatch { left: nvars, right: exps.len() });
            }
            p.add_term(Monomial::new(exps), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, mono: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Constant and nonzero: a unit of the polynomial ring.
    pub fn is_unit(&self) -> bool {
        self.constant_value().is_some_and(|c| !c.is_zero())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    fn check_same_ring(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        (0..k).fold(Polynomial::one(self.nvars), |acc, _| &acc * self)
    }

    fn check_axis(&self, axis: usize) -> Result<()> {
        if axis >= self.nvars {
            return Err(Error::AxisOutOfRange { axis: axis + 1, nvars: self.nvars });
        }
        Ok(())
    }

    /// Formal partial derivative with respect to `x_{axis+1}`.
    pub fn partial(&self, axis: usize) -> Result<Polynomial> {
        self.check_axis(axis)?;
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps[axis];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[axis] -= 1;
            out.terms.insert(Monomial::new(exps), c * int(e as i64));
        }
        Ok(out)
    }

    /// Antiderivative in `x_{axis+1}` with zero integration constant.
    pub fn integrate(&self, axis: usize) -> Result<Polynomial> {
        self.check_axis(axis)?;
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut exps = m.exps.clone();
            exps[axis] += 1;
            let e = exps[axis];
            out.terms.insert(Monomial::new(exps), c / int(e as i64));
        }
        Ok(out)
    }

    /// Includes `Q[x1..xm]` into `Q[x1..xn]`, `n >= m`, by appending zero exponents.
    pub fn embed(&self, new_nvars: usize) -> Result<Polynomial> {
        if new_nvars < self.nvars {
            return Err(Error::VariableMismatch { left: self.nvars, right: new_nvars });
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = m.exps.clone();
                exps.resize(new_nvars, 0);
                (Monomial::new(exps), c.clone())
            })
            .collect();
        Ok(Polynomial { nvars: new_nvars, terms })
    }

    /// `p(-x1, ..., -xn)`.
    pub fn reflect(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let c = if m.degree() % 2 == 1 { -c.clone() } else { c.clone() };
                    (m.clone(), c)
                })
                .collect(),
        }
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: point.len() });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.exps) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Quotient `self / divisor`, which must be exact.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(divisor)?;
        let (lm, lc) = divisor.leading().ok_or(Error::Singular)?;
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading() {
            if !lm.divides(rm) {
                return Err(Error::InexactDivision);
            }
            let t = Polynomial::monomial(rm.div(lm), rc / lc);
            rem = &rem - &(&t * divisor);
            quot += &t;
        }
        Ok(quot)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

// Operator forms panic on a variable-count mismatch; use the `checked_*`
// methods where the operands come from outside the engine.

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial add")
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial sub")
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial mul")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.nvars, rhs.nvars, "polynomial add: variable count mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.nvars, rhs.nvars, "polynomial sub: variable count mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::polyring::rat;
    use proptest::prelude::*;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    fn c(n: usize, v: i64) -> Polynomial {
        Polynomial::constant(n, int(v))
    }

    #[test]
    fn add_examples() {
        let n = 3;
        assert!((&x(n, 0) + &-x(n, 0)).is_zero());
        let p = &(&x(n, 0) * &x(n, 1)) + &c(n, 1);
        let q = &x(n, 0) * &x(n, 1);
        let expect = &(&x(n, 0) * &x(n, 1)).scale(&int(2)) + &c(n, 1);
        assert_eq!(&p + &q, expect);
        assert_eq!(&p + &Polynomial::zero(n), p);
    }

    #[test]
    fn mul_examples() {
        let n = 3;
        let p = &c(n, 1) + &(&x(n, 1) * &x(n, 2)).scale(&int(2));
        assert_eq!(&p * &c(n, 1), p);
        assert_eq!(&x(n, 2) * &x(n, 2), x(n, 2).pow(2));
        let lhs = &(&x(n, 0) + &x(n, 1)) * &(&x(n, 0) - &x(n, 1));
        assert_eq!(lhs, &x(n, 0).pow(2) - &x(n, 1).pow(2));
    }

    #[test]
    fn partial_examples() {
        let n = 3;
        let p = &c(n, 1) + &(&x(n, 1) * &x(n, 2)).scale(&int(2));
        assert_eq!(p.partial(1).unwrap(), x(n, 2).scale(&int(2)));
        assert!(c(n, 7).partial(0).unwrap().is_zero());
        assert_eq!(x(n, 2).pow(2).partial(2).unwrap(), x(n, 2).scale(&int(2)));
        assert_eq!(p.partial(3), Err(Error::AxisOutOfRange { axis: 4, nvars: 3 }));
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        assert!(x(2, 0).checked_add(&x(3, 0)).is_err());
        assert!(x(2, 0).checked_mul(&x(3, 0)).is_err());
        assert!(Polynomial::from_terms(2, [(vec![1, 0, 0], int(1))]).is_err());
    }

    #[test]
    fn display_uses_graded_order() {
        let n = 3;
        let p = &c(n, 1) + &(&x(n, 1) * &x(n, 2)).scale(&int(2));
        assert_eq!(p.to_string(), "1 + 2*x2*x3");
        let q = &x(n, 2).scale(&int(-2)) - &(&x(n, 1) * &x(n, 2).pow(2)).scale(&int(2));
        assert_eq!(q.to_string(), "-2*x3 - 2*x2*x3^2");
        assert_eq!((&x(n, 1) + &x(n, 0)).to_string(), "x1 + x2");
        assert_eq!(x(n, 1).scale(&rat(-1, 2)).to_string(), "-1/2*x2");
    }

    #[test]
    fn integrate_inverts_partial() {
        let n = 2;
        let p = &(&x(n, 0) * &x(n, 1)).scale(&int(3)) + &x(n, 0).pow(2);
        assert_eq!(p.integrate(0).unwrap().partial(0).unwrap(), p);
    }

    #[test]
    fn embed_and_reflect() {
        let p = &x(2, 1) + &x(2, 0).pow(2);
        let e = p.embed(4).unwrap();
        assert_eq!(e.nvars(), 4);
        assert_eq!(e, &x(4, 1) + &x(4, 0).pow(2));
        assert!(p.embed(1).is_err());
        assert_eq!(p.reflect(), &x(2, 0).pow(2) - &x(2, 1));
    }

    #[test]
    fn exact_division() {
        let n = 2;
        let a = &x(n, 0) + &x(n, 1);
        let b = &x(n, 0) - &c(n, 3);
        assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
        assert_eq!(x(n, 0).div_exact(&x(n, 1)), Err(Error::InexactDivision));
    }

    pub(crate) fn arb_poly(nvars: usize) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(
            (prop::collection::vec(0u32..3, nvars), -4i64..5, 1i64..3),
            0..5,
        )
        .prop_map(move |ts| {
            Polynomial::from_terms(nvars, ts.into_iter().map(|(e, a, b)| (e, rat(a, b)))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(3), q in arb_poly(3), r in arb_poly(3)) {
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert!((&p - &p).is_zero());
        }

        #[test]
        fn mixed_partials_commute(p in arb_poly(3), a in 0usize..3, b in 0usize..3) {
            prop_assert_eq!(
                p.partial(a).unwrap().partial(b).unwrap(),
                p.partial(b).unwrap().partial(a).unwrap()
            );
        }

        #[test]
        fn leibniz_rule_for_partial(p in arb_poly(2), q in arb_poly(2), a in 0usize..2) {
            let lhs = (&p * &q).partial(a).unwrap();
            let rhs = &(&p.partial(a).unwrap() * &q) + &(&p * &q.partial(a).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn division_recovers_factor(p in arb_poly(2), q in arb_poly(2)) {
            prop_assume!(!q.is_zero());
            prop_assert_eq!((&p * &q).div_exact(&q).unwrap(), p);
        }
    }
}
