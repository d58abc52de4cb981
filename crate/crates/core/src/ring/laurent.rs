use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::poly::{write_terms, MonomialOrder, Poly};
use crate::linalg::{rat, Rat};

/// Laurent polynomial: exponents range over `Z^d`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, Rat>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], Rat::one())
    }

    pub fn monomial(exp: Vec<i64>, c: Rat) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    pub fn from_int_terms(nvars: usize, terms: &[(&[i64], i64)]) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e.to_vec(), rat(*c));
        }
        p
    }

    /// `1 − x^e`.
    pub fn one_minus(exp: Vec<i64>) -> Self {
        let n = exp.len();
        &Self::one(n) - &Self::monomial(exp, Rat::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, e: Vec<i64>, c: Rat) {
        assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    pub fn mul_monomial(&self, e: &[i64]) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Write `self = x^{-shift} · p` with `p` a polynomial not divisible by any variable
    /// (for non-zero `self`).
    pub fn clear_denominators(&self) -> (Poly, Vec<i64>) {
        let shift: Vec<i64> = (0..self.nvars)
            .map(|i| self.terms.keys().map(|e| e[i]).min().map_or(0, |m| -m))
            .collect();
        let p = Poly::from_terms(
            self.nvars,
            self.terms
                .iter()
                .map(|(e, c)| (e.iter().zip(&shift).map(|(a, s)| (a + s) as u32).collect(), c.clone())),
        );
        (p, shift)
    }

    pub fn from_poly(p: &Poly) -> Self {
        LaurentPoly {
            nvars: p.nvars(),
            terms: p.terms().map(|(e, c)| (e.iter().map(|&x| x as i64).collect(), c.clone())).collect(),
        }
    }
}

impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.nvars);
        for (e, c) in &rhs.terms {
            for (m, x) in &self.terms {
                out.add_term(m.iter().zip(e).map(|(a, b)| a + b).collect(), x * c);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, shift) = self.clear_denominators();
        let order = MonomialOrder::GrevLex;
        let sorted = p.sorted_terms(order);
        let shifted: Vec<(Vec<i64>, Rat)> = sorted
            .into_iter()
            .map(|(e, c)| (e.iter().zip(&shift).map(|(a, s)| *a as i64 - s).collect(), c.clone()))
            .collect();
        let refs: Vec<(&Vec<i64>, &Rat)> = shifted.iter().map(|(e, c)| (e, c)).collect();
        write_terms(f, self.nvars, &refs)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
