//! Polynomials in `x_1..x_n` and `w_1..w_m` with big-integer coefficients,
//! truncated above a fixed total `x`-degree.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("monomial has {got} {which}-exponents, expected {expected}")]
    ExponentLength { which: &'static str, expected: usize, got: usize },
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("bad coefficient {0:?}")]
    BadCoefficient(String),
}

/// Exponent vectors of a monomial `x^a w^b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub x: Vec<u32>,
    pub w: Vec<u32>,
}

impl Monomial {
    pub fn x_degree(&self) -> u32 {
        self.x.iter().sum()
    }
}

/// Shape of the ring: variable counts and the truncation degree.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    pub n_x: usize,
    pub n_w: usize,
    pub max_deg: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedPolynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, BigInt>,
}

impl TruncatedPolynomial {
    pub fn zero(ring: Ring) -> Self {
        TruncatedPolynomial { ring, terms: BTreeMap::new() }
    }

    pub fn one(ring: Ring) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(vec![0; ring.n_x], vec![0; ring.n_w], BigInt::one()).expect("lengths match");
        p
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Adds `coef * x^xexp w^wexp`; terms above the truncation degree are
    /// dropped.
    pub fn add_term(&mut self, xexp: Vec<u32>, wexp: Vec<u32>, coef: impl Into<BigInt>) -> Result<(), PolyError> {
        if xexp.len() != self.ring.n_x {
            return Err(PolyError::ExponentLength { which: "x", expected: self.ring.n_x, got: xexp.len() });
        }
        if wexp.len() != self.ring.n_w {
            return Err(PolyError::ExponentLength { which: "w", expected: self.ring.n_w, got: wexp.len() });
        }
        self.add_monomial(Monomial { x: xexp, w: wexp }, coef.into());
        Ok(())
    }

    pub(crate) fn add_monomial(&mut self, m: Monomial, coef: BigInt) {
        if m.x_degree() > self.ring.max_deg || coef.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
        }
    }

    pub fn coefficient(&self, xexp: &[u32], wexp: &[u32]) -> BigInt {
        self.terms.get(&Monomial { x: xexp.to_vec(), w: wexp.to_vec() }).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.ring);
        for (m, c) in &self.terms {
            out.add_monomial(m.clone(), c * k);
        }
        out
    }

    /// Multiplies by `w^wexp`.
    pub fn times_w(&self, wexp: &[u32]) -> Self {
        let mut out = Self::zero(self.ring);
        for (m, c) in &self.terms {
            let w = m.w.iter().zip(wexp).map(|(a, b)| a + b).collect();
            out.add_monomial(Monomial { x: m.x.clone(), w }, c.clone());
        }
        out
    }

    /// Sets every `w` to 1, leaving a polynomial in `x` alone.
    pub fn at_w_equals_one(&self) -> Self {
        let ring = Ring { n_w: 0, ..self.ring };
        let mut out = Self::zero(ring);
        for (m, c) in &self.terms {
            out.add_monomial(Monomial { x: m.x.clone(), w: Vec::new() }, c.clone());
        }
        out
    }

    /// Re-embeds into a ring with more `w` variables.
    pub fn widen_w(&self, n_w: usize) -> Self {
        assert!(n_w >= self.ring.n_w);
        let ring = Ring { n_w, ..self.ring };
        let mut out = Self::zero(ring);
        for (m, c) in &self.terms {
            let mut w = m.w.clone();
            w.resize(n_w, 0);
            out.add_monomial(Monomial { x: m.x.clone(), w }, c.clone());
        }
        out
    }

    /// Invariance under every permutation of the `x` variables, checked on
    /// adjacent transpositions.
    pub fn is_symmetric_in_x(&self) -> bool {
        (0..self.ring.n_x.saturating_sub(1)).all(|i| {
            self.terms.iter().all(|(m, c)| {
                let mut x = m.x.clone();
                x.swap(i, i + 1);
                self.terms.get(&Monomial { x, w: m.w.clone() }) == Some(c)
            })
        })
    }

    fn checked_same_ring(&self, other: &Self) -> Result<(), PolyError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.checked_same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_monomial(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.checked_same_ring(other)?;
        let mut out = Self::zero(self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if m1.x_degree() + m2.x_degree() > self.ring.max_deg {
                    continue;
                }
                let x = m1.x.iter().zip(&m2.x).map(|(a, b)| a + b).collect();
                let w = m1.w.iter().zip(&m2.w).map(|(a, b)| a + b).collect();
                out.add_monomial(Monomial { x, w }, c1 * c2);
            }
        }
        Ok(out)
    }
}

impl Add for &TruncatedPolynomial {
    type Output = TruncatedPolynomial;
    fn add(self, rhs: Self) -> TruncatedPolynomial {
        self.try_add(rhs).expect("polynomials in the same ring")
    }
}

impl Sub for &TruncatedPolynomial {
    type Output = TruncatedPolynomial;
    fn sub(self, rhs: Self) -> TruncatedPolynomial {
        self.try_add(&-rhs).expect("polynomials in the same ring")
    }
}

impl Mul for &TruncatedPolynomial {
    type Output = TruncatedPolynomial;
    fn mul(self, rhs: Self) -> TruncatedPolynomial {
        self.try_mul(rhs).expect("polynomials in the same ring")
    }
}

impl Neg for &TruncatedPolynomial {
    type Output = TruncatedPolynomial;
    fn neg(self) -> TruncatedPolynomial {
        self.scale(&BigInt::from(-1))
    }
}

impl fmt::Display for TruncatedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let mut vars = String::new();
            for (name, exps) in [("x", &m.x), ("w", &m.w)] {
                for (i, &e) in exps.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => vars.push_str(&format!("{name}{}", i + 1)),
                        _ => vars.push_str(&format!("{name}{}^{e}", i + 1)),
                    }
                }
            }
            let negative = c < &BigInt::zero();
            let mag = if negative { -c } else { c.clone() };
            let sign = match (first, negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let body = match (vars.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => vars,
                (false, false) => format!("{mag}{vars}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    xexp: Vec<u32>,
    wexp: Vec<u32>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    n_x: usize,
    n_w: usize,
    max_deg: u32,
    terms: Vec<TermJson>,
}

impl Serialize for TruncatedPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson {
            n_x: self.ring.n_x,
            n_w: self.ring.n_w,
            max_deg: self.ring.max_deg,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson { xexp: m.x.clone(), wexp: m.w.clone(), coef: c.to_string() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncatedPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PolyJson::deserialize(d)?;
        let mut p = TruncatedPolynomial::zero(Ring { n_x: raw.n_x, n_w: raw.n_w, max_deg: raw.max_deg });
        for t in raw.terms {
            let coef: BigInt =
                t.coef.parse().map_err(|_| D::Error::custom(PolyError::BadCoefficient(t.coef.clone())))?;
            p.add_term(t.xexp, t.wexp, coef).map_err(D::Error::custom)?;
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n_x: usize, n_w: usize, max_deg: u32) -> Ring {
        Ring { n_x, n_w, max_deg }
    }

    #[test]
    fn truncation_drops_high_terms() {
        let r = ring(2, 0, 2);
        let mut x1 = TruncatedPolynomial::zero(r);
        x1.add_term(vec![1, 0], vec![], 1).unwrap();
        let cube = &(&x1 * &x1) * &x1;
        assert!(cube.is_zero());
        assert_eq!((&x1 * &x1).coefficient(&[2, 0], &[]), BigInt::from(1));
    }

    #[test]
    fn arithmetic_and_symmetry() {
        let r = ring(2, 1, 3);
        let mut p = TruncatedPolynomial::zero(r);
        p.add_term(vec![1, 0], vec![0], 1).unwrap();
        p.add_term(vec![0, 1], vec![0], 1).unwrap();
        assert!(p.is_symmetric_in_x());
        let sq = &p * &p;
        assert_eq!(sq.coefficient(&[1, 1], &[0]), BigInt::from(2));
        assert!((&sq - &sq).is_zero());
        let mut q = p.clone();
        q.add_term(vec![1, 0], vec![1], -3).unwrap();
        assert!(!q.is_symmetric_in_x());
        let spec = q.at_w_equals_one();
        assert_eq!(spec.coefficient(&[1, 0], &[]), BigInt::from(-2));
        assert!(p.add_term(vec![1], vec![0], 1).is_err());
    }

    #[test]
    fn big_coefficients_survive_json() {
        let r = ring(1, 1, 5);
        let mut p = TruncatedPolynomial::zero(r);
        let huge: BigInt = "123456789012345678901234567890".parse().unwrap();
        p.add_term(vec![2], vec![1], huge.clone()).unwrap();
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(
            j,
            r#"{"n_x":1,"n_w":1,"max_deg":5,"terms":[{"xexp":[2],"wexp":[1],"coef":"123456789012345678901234567890"}]}"#
        );
        let back: TruncatedPolynomial = serde_json::from_str(&j).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.to_string(), "123456789012345678901234567890x1^2w1");
    }
}
