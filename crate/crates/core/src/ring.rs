//! Coefficient rings: F₂ edge monomials and finitely supported long power series.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{format, int, Rational};

/// Exponent vector of a monomial `u_1^{a_1} ⋯ u_κ^{a_κ}` in the strand variables.
pub type EdgeMonomial = Vec<u32>;

/// Σ t_i a_i: the exponent of `u` after substituting `u_i = u^{t_i}`.
pub fn specialized_exponent(m: &[u32], t: &[Rational]) -> Rational {
    m.iter()
        .zip(t)
        .filter(|(a, _)| **a != 0)
        .fold(int(0), |acc, (a, ti)| acc + ti * int(*a as i64))
}

/// `u^{Σ t_i a_i}` as a ring element.
pub fn specialize(m: &[u32], t: &[Rational]) -> HahnElement {
    HahnElement::monomial(specialized_exponent(m, t))
}

/// Valuation of a ring element; `None` stands for +∞.
pub type Valuation = Option<Rational>;

/// A finite F₂-sum of powers `u^r`, `r ≥ 0` rational.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct HahnElement {
    support: Vec<Rational>,
}

impl HahnElement {
    pub fn zero() -> Self {
        HahnElement { support: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(int(0))
    }

    pub fn monomial(e: Rational) -> Self {
        assert!(e >= int(0), "negative exponent u^{e}");
        HahnElement { support: vec![e] }
    }

    /// Builds from any list of exponents, cancelling repeats in pairs.
    pub fn from_exponents<I: IntoIterator<Item = Rational>>(exps: I) -> Self {
        let mut count: BTreeMap<Rational, bool> = BTreeMap::new();
        for e in exps {
            assert!(e >= int(0), "negative exponent u^{e}");
            let odd = count.entry(e).or_insert(false);
            *odd = !*odd;
        }
        HahnElement { support: count.into_iter().filter(|(_, odd)| *odd).map(|(e, _)| e).collect() }
    }

    /// Sorted, distinct exponents.
    pub fn support(&self) -> &[Rational] {
        &self.support
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn as_monomial(&self) -> Option<&Rational> {
        match self.support.as_slice() {
            [e] => Some(e),
            _ => None,
        }
    }

    pub fn valuation(&self) -> Valuation {
        self.support.first().cloned()
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = (&self.support, &other.support);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        HahnElement { support: out }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_exponents(
            self.support
                .iter()
                .flat_map(|x| other.support.iter().map(move |y| x + y)),
        )
    }

    /// Multiplies by `u^e`.
    pub fn shift(&self, e: &Rational) -> Self {
        HahnElement { support: self.support.iter().map(|x| x + e).collect() }
    }

    /// Exact quotient by `u^e`; requires `e ≤ valuation`.
    pub fn divide_by_monomial(&self, e: &Rational) -> Result<Self> {
        if e < &int(0) {
            return Err(Error::Division(format(e)));
        }
        match self.valuation() {
            Some(v) if &v < e => Err(Error::Division(format(e))),
            _ => Ok(HahnElement { support: self.support.iter().map(|x| x - e).collect() }),
        }
    }
}

impl std::ops::Add for &HahnElement {
    type Output = HahnElement;
    fn add(self, rhs: Self) -> HahnElement {
        HahnElement::add(self, rhs)
    }
}

impl std::ops::Mul for &HahnElement {
    type Output = HahnElement;
    fn mul(self, rhs: Self) -> HahnElement {
        HahnElement::mul(self, rhs)
    }
}

impl fmt::Display for HahnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.support.iter().map(|e| format!("u^{{{}}}", format(e))).collect();
        write!(f, "{}", terms.join("+"))
    }
}

/// Adds two monomials' exponent vectors.
pub fn monomial_product(a: &[u32], b: &[u32]) -> EdgeMonomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use proptest::prelude::*;

    fn h(exps: &[(i64, i64)]) -> HahnElement {
        HahnElement::from_exponents(exps.iter().map(|&(p, q)| ratio(p, q)))
    }

    #[test]
    fn addition_cancels_in_characteristic_two() {
        assert!(h(&[(1, 1)]).add(&h(&[(1, 1)])).is_zero());
        assert_eq!(h(&[(0, 1)]).add(&h(&[(1, 2)])), h(&[(0, 1), (1, 2)]));
        assert_eq!(h(&[(0, 1), (1, 1)]).add(&h(&[(1, 1), (2, 1)])), h(&[(0, 1), (2, 1)]));
    }

    #[test]
    fn multiplication() {
        assert_eq!(h(&[(1, 2)]).mul(&h(&[(3, 2)])), h(&[(2, 1)]));
        let x = h(&[(0, 1), (1, 1)]);
        assert_eq!(x.mul(&x), h(&[(0, 1), (2, 1)]));
        assert!(HahnElement::zero().mul(&x).is_zero());
    }

    #[test]
    fn valuation_and_display() {
        let x = h(&[(3, 4), (2, 1)]);
        assert_eq!(x.valuation(), Some(ratio(3, 4)));
        assert_eq!(HahnElement::zero().valuation(), None);
        assert_eq!(HahnElement::one().valuation(), Some(int(0)));
        assert_eq!(x.to_string(), "u^{3/4}+u^{2}");
        assert_eq!(HahnElement::zero().to_string(), "0");
    }

    #[test]
    fn specialization() {
        let t = [ratio(1, 2), ratio(3, 2)];
        assert_eq!(specialize(&[1, 0], &t), h(&[(1, 2)]));
        assert_eq!(specialize(&[0, 0], &t), HahnElement::one());
        assert_eq!(specialize(&[1, 1], &[int(2), int(0)]), h(&[(2, 1)]));
    }

    #[test]
    fn division_by_monomial() {
        let x = h(&[(3, 4), (2, 1)]);
        assert_eq!(x.divide_by_monomial(&ratio(1, 2)).unwrap(), h(&[(1, 4), (3, 2)]));
        assert_eq!(x.divide_by_monomial(&int(1)).unwrap_err().code(), "E_DIVISION");
    }

    fn arb_hahn() -> impl Strategy<Value = HahnElement> {
        prop::collection::vec((0i64..12, 1i64..5), 0..5)
            .prop_map(|v| HahnElement::from_exponents(v.into_iter().map(|(p, q)| ratio(p, q))))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_hahn(), b in arb_hahn(), c in arb_hahn()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn valuation_is_additive(a in arb_hahn(), b in arb_hahn()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let v = a.valuation().unwrap() + b.valuation().unwrap();
            prop_assert_eq!(a.mul(&b).valuation(), Some(v));
        }

        #[test]
        fn specialize_is_multiplicative(
            m1 in prop::collection::vec(0u32..4, 3),
            m2 in prop::collection::vec(0u32..4, 3),
            t in prop::collection::vec((0i64..8, 1i64..4), 3),
        ) {
            let t: Vec<Rational> = t.into_iter().map(|(p, q)| ratio(p, q)).collect();
            prop_assert_eq!(
                specialize(&monomial_product(&m1, &m2), &t),
                specialize(&m1, &t).mul(&specialize(&m2, &t))
            );
        }
    }
}
