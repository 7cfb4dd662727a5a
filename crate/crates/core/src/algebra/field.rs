//! Galois fields GF(p^u) with elements indexed in lexicographic order.
//!
//! An element a_0 + a_1 x + ... + a_{u-1} x^{u-1} has index
//! a_0 + a_1 p + ... + a_{u-1} p^{u-1}, so index order is the order in which
//! elements are listed everywhere in this crate (0, 1, x, x+1, x^2, ...).
//! Addition and multiplication are tabulated at construction time; fields
//! are capped at 256 elements.

use std::fmt;
use std::sync::Arc;

use super::poly;
use super::Elem;
use crate::error::{Error, Result};

pub const MAX_FIELD_ORDER: u32 = 256;

struct FieldInner {
    p: u32,
    u: u32,
    order: u32,
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
}

/// A validated finite field. Cloning is cheap.
#[derive(Clone)]
pub struct FieldSpec(Arc<FieldInner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.u == other.0.u && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({};{})", self.order(), poly::format(&self.0.modulus))
    }
}

impl FieldSpec {
    /// Builds GF(p^u). Without an explicit modulus the catalog default is used.
    pub fn new(p: u32, u: u32, irreducible: Option<&[u32]>) -> Result<Self> {
        if !poly::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if u == 0 {
            return Err(Error::InvalidPolynomial("extension degree must be at least 1".into()));
        }
        let order = (p as u64).checked_pow(u).unwrap_or(u64::MAX);
        if order > MAX_FIELD_ORDER as u64 {
            return Err(Error::FieldTooLarge(order));
        }
        let modulus = match irreducible {
            Some(m) => m.to_vec(),
            None => crate::catalog::default_irreducible(p, u)?,
        };
        if modulus.len() != u as usize + 1 || modulus[u as usize] != 1 {
            return Err(Error::InvalidPolynomial(format!(
                "{} is not a monic polynomial of degree {u}",
                poly::format(&poly::trim(modulus.clone()))
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidPolynomial(format!(
                "coefficients must lie in 0..{p}"
            )));
        }
        if let Some(factor) = poly::find_factor(&modulus, p) {
            return Err(Error::Reducible {
                poly: poly::format(&modulus),
                p,
                factor: poly::format(&factor),
            });
        }
        Ok(Self::build(p, u, order as u32, modulus))
    }

    /// Builds GF(p^u) from modulus text such as `x^3+x+1`.
    pub fn with_modulus_text(p: u32, u: u32, text: &str) -> Result<Self> {
        let m = poly::parse(text, p)?;
        Self::new(p, u, Some(&m))
    }

    /// Builds the field of the given prime-power order with the default modulus.
    pub fn of_order(order: u32) -> Result<Self> {
        let (p, u) = prime_power(order)
            .ok_or_else(|| Error::InvalidParameter(format!("{order} is not a prime power")))?;
        Self::new(p, u, None)
    }

    fn build(p: u32, u: u32, order: u32, modulus: Vec<u32>) -> Self {
        let len = u as usize;
        let n = order as usize;
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        let coeffs: Vec<Vec<u32>> = (0..order).map(|i| poly::from_index(i, p, len)).collect();
        for a in 0..n {
            for b in 0..n {
                let sum: Vec<u32> = coeffs[a]
                    .iter()
                    .zip(&coeffs[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[a * n + b] = poly::to_index(&sum, p) as u16;
                let prod = poly::rem_monic(&poly::mul(&coeffs[a], &coeffs[b], p), &modulus, p);
                mul[a * n + b] = poly::to_index(&prod, p) as u16;
            }
        }
        FieldSpec(Arc::new(FieldInner { p, u, order, modulus, add, mul }))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn u(&self) -> u32 {
        self.0.u
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// Modulus coefficients, constant term first (length u + 1).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn contains(&self, e: Elem) -> bool {
        e.0 < self.0.order
    }

    fn check(&self, e: Elem) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange { element: e.0, group: self.to_string() })
        }
    }

    /// Coefficientwise sum mod p.
    pub fn add(&self, a: Elem, b: Elem) -> Result<Elem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    /// Product reduced modulo the field polynomial.
    pub fn mul(&self, a: Elem, b: Elem) -> Result<Elem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn add_unchecked(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.0.add[(a.0 * self.0.order + b.0) as usize] as u32)
    }

    pub(crate) fn mul_unchecked(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.0.mul[(a.0 * self.0.order + b.0) as usize] as u32)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.0.p;
        let c: Vec<u32> = self.coeffs(a).iter().map(|&x| (p - x) % p).collect();
        Elem(poly::to_index(&c, p))
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add_unchecked(a, self.neg(b))
    }

    /// The u coefficients of `e`, constant term first.
    pub fn coeffs(&self, e: Elem) -> Vec<u32> {
        poly::from_index(e.0, self.0.p, self.0.u as usize)
    }

    /// Element with the given coefficients (constant term first, at most u of them).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        let c = poly::trim(coeffs.to_vec());
        if c.len() > self.0.u as usize || c.iter().any(|&x| x >= self.0.p) {
            return Err(Error::InvalidPolynomial(format!(
                "{} is not an element of {self}",
                poly::format(&c)
            )));
        }
        Ok(Elem(poly::to_index(&c, self.0.p)))
    }

    /// Polynomial degree of an element; zero has no degree.
    pub fn degree(&self, e: Elem) -> Option<usize> {
        poly::degree(&self.coeffs(e))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.order).map(Elem)
    }

    pub fn format(&self, e: Elem) -> String {
        poly::format(&self.coeffs(e))
    }

    /// Parses element text like `x^2+1`. Text of too high a degree is rejected.
    pub fn parse(&self, text: &str) -> Result<Elem> {
        let err = || Error::ParseElement { text: text.to_string(), group: self.to_string() };
        let c = poly::parse(text, self.0.p).map_err(|_| err())?;
        self.from_coeffs(&c).map_err(|_| err())
    }
}

/// Decomposes `n` as p^u with p prime.
pub fn prime_power(n: u32) -> Option<(u32, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n % d == 0)?;
    let mut m = n;
    let mut u = 0;
    while m % p == 0 {
        m /= p;
        u += 1;
    }
    (m == 1).then_some((p, u))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, u: u32, m: &str) -> FieldSpec {
        FieldSpec::with_modulus_text(p, u, m).unwrap()
    }

    #[test]
    fn gf4_listing_and_product() {
        let f = gf(2, 2, "x^2+x+1");
        let names: Vec<String> = f.elements().map(|e| f.format(e)).collect();
        assert_eq!(names, ["0", "1", "x", "x+1"]);
        let x = f.parse("x").unwrap();
        assert_eq!(f.format(f.mul(x, x).unwrap()), "x+1");
        assert_eq!(f.format(f.add(x, f.parse("x+1").unwrap()).unwrap()), "1");
    }

    #[test]
    fn gf8_products() {
        let f = gf(2, 3, "x^3+x+1");
        let x2 = f.parse("x^2").unwrap();
        let x = f.parse("x").unwrap();
        assert_eq!(f.format(f.mul(x2, x).unwrap()), "x+1");
        assert_eq!(f.add(x2, x2).unwrap(), Elem(0));
    }

    #[test]
    fn gf9_addition() {
        let f = gf(3, 2, "x^2+x+2");
        let a = f.parse("x+1").unwrap();
        let b = f.parse("x+2").unwrap();
        assert_eq!(f.format(f.add(a, b).unwrap()), "2x");
    }

    #[test]
    fn zero_annihilates() {
        let f = gf(3, 3, "x^3+2x+1");
        for a in f.elements() {
            assert_eq!(f.mul(a, Elem(0)).unwrap(), Elem(0));
        }
    }

    #[test]
    fn prime_field_default() {
        let f = FieldSpec::new(2, 1, None).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.modulus(), &[1, 1]);
    }

    #[test]
    fn rejects_reducible_modulus() {
        let err = FieldSpec::with_modulus_text(2, 5, "x^5+x+1").unwrap_err();
        match err {
            Error::Reducible { factor, .. } => assert_eq!(factor, "x^2+x+1"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(FieldSpec::new(4, 1, None).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(
            FieldSpec::with_modulus_text(2, 3, "x^2+x+1"),
            Err(Error::InvalidPolynomial(_))
        ));
        assert!(matches!(FieldSpec::new(2, 9, None), Err(Error::FieldTooLarge(512))));
        let f = gf(2, 2, "x^2+x+1");
        assert!(f.add(Elem(4), Elem(0)).is_err());
        assert!(f.parse("x^2").is_err());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(81), Some((3, 4)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }
}
