use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use super::groebner::{groebner_basis, normal_form, saturate_by_monomial, GbLimits};
use super::laurent::LaurentPoly;
use super::poly::{divides, Monomial, MonomialOrder, Poly};
use crate::error::Result;
use crate::linalg::{self, Rat};

const ORDER: MonomialOrder = MonomialOrder::GrevLex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(untagged)]
pub enum QuotientDim {
    Finite(usize),
    #[serde(serialize_with = "infinite")]
    Infinite,
}

fn infinite<S: serde::Serializer>(s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str("INFINITE")
}

impl QuotientDim {
    pub fn finite(self) -> Option<usize> {
        match self {
            QuotientDim::Finite(d) => Some(d),
            QuotientDim::Infinite => None,
        }
    }
}

impl fmt::Display for QuotientDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientDim::Finite(d) => write!(f, "{d}"),
            QuotientDim::Infinite => f.write_str("INFINITE"),
        }
    }
}

/// `Q[x_1..x_d] / I` described by a reduced grevlex Gröbner basis, with the
/// standard-monomial basis when the quotient is finite-dimensional.
#[derive(Clone, Debug)]
pub struct Quotient {
    nvars: usize,
    gb: Vec<Poly>,
    dim: QuotientDim,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Quotient {
    pub fn polynomial(nvars: usize, gens: &[Poly], limits: GbLimits) -> Result<Self> {
        let gb = groebner_basis(gens, ORDER, limits)?;
        Ok(Self::from_groebner(nvars, gb))
    }

    /// `gb` must be a reduced grevlex Gröbner basis.
    pub fn from_groebner(nvars: usize, gb: Vec<Poly>) -> Self {
        let leads: Vec<Monomial> = gb.iter().map(|g| g.leading_monomial(ORDER).unwrap().clone()).collect();
        let mut bounds = vec![None; nvars];
        for l in &leads {
            let support: Vec<usize> = (0..nvars).filter(|&i| l[i] > 0).collect();
            if support.len() == 1 {
                let i = support[0];
                bounds[i] = Some(bounds[i].map_or(l[i], |b: u32| b.min(l[i])));
            }
        }
        let finite = leads.iter().any(|l| l.iter().all(|&e| e == 0)) || bounds.iter().all(Option::is_some);
        if !finite {
            return Quotient { nvars, gb, dim: QuotientDim::Infinite, basis: Vec::new(), index: HashMap::new() };
        }
        let mut basis: Vec<Monomial> = Vec::new();
        let mut seen = BTreeSet::new();
        let mut frontier = vec![vec![0u32; nvars]];
        while let Some(m) = frontier.pop() {
            if !seen.insert(m.clone()) || leads.iter().any(|l| divides(l, &m)) {
                continue;
            }
            for i in 0..nvars {
                let mut next = m.clone();
                next[i] += 1;
                frontier.push(next);
            }
            basis.push(m);
        }
        basis.sort_by(|a, b| ORDER.cmp(a, b));
        let index = basis.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
        Quotient { nvars, gb, dim: QuotientDim::Finite(basis.len()), basis, index }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn groebner(&self) -> &[Poly] {
        &self.gb
    }

    pub fn dim(&self) -> QuotientDim {
        self.dim
    }

    /// Standard monomials in increasing grevlex order (empty when infinite).
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        normal_form(f, &self.gb, ORDER)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Coordinates of `f` in the standard-monomial basis.
    pub fn coords(&self, f: &Poly) -> Option<Vec<Rat>> {
        self.dim.finite()?;
        let nf = self.normal_form(f);
        let mut v = vec![Rat::zero(); self.basis.len()];
        for (e, c) in nf.terms() {
            v[self.index[e]] = c.clone();
        }
        Some(v)
    }

    pub fn element(&self, coords: &[Rat]) -> Poly {
        Poly::from_terms(self.nvars, self.basis.iter().cloned().zip(coords.iter().cloned()))
    }

    /// Matrix of multiplication by `f`: column `k` holds the coordinates of `f·b_k`.
    pub fn mult_matrix(&self, f: &Poly) -> Option<Vec<Vec<Rat>>> {
        self.dim.finite()?;
        let n = self.basis.len();
        let mut m = vec![vec![Rat::zero(); n]; n];
        for (k, b) in self.basis.iter().enumerate() {
            let col = self.coords(&f.mul_term(b, &Rat::one()))?;
            for (r, x) in col.into_iter().enumerate() {
                m[r][k] = x;
            }
        }
        Some(m)
    }
}

/// `Q[x_1^±..x_d^±] / J`, computed from the saturation of the cleared generators
/// by the product of all variables.
#[derive(Clone, Debug)]
pub struct LaurentQuotient {
    inner: Quotient,
    forward: Vec<Vec<Vec<Rat>>>,
    inverse: Vec<Vec<Vec<Rat>>>,
}

impl LaurentQuotient {
    pub fn new(nvars: usize, gens: &[LaurentPoly], limits: GbLimits) -> Result<Self> {
        let cleared: Vec<Poly> =
            gens.iter().filter(|g| !g.is_zero()).map(|g| g.clear_denominators().0).collect();
        let gb = if cleared.is_empty() {
            Vec::new()
        } else {
            saturate_by_monomial(&cleared, &vec![1; nvars], limits)?
        };
        let inner = Quotient::from_groebner(nvars, gb);
        let (mut forward, mut inverse) = (Vec::new(), Vec::new());
        if inner.dim.finite().is_some() {
            for i in 0..nvars {
                let m = inner.mult_matrix(&Poly::var(nvars, i)).unwrap();
                // variables act invertibly on a saturated Artinian quotient
                let inv = if m.is_empty() { Vec::new() } else { linalg::inverse(&m).expect("variable not invertible") };
                forward.push(m);
                inverse.push(inv);
            }
        }
        Ok(LaurentQuotient { inner, forward, inverse })
    }

    pub fn dim(&self) -> QuotientDim {
        self.inner.dim
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.inner.basis
    }

    pub fn polynomial_part(&self) -> &Quotient {
        &self.inner
    }

    pub fn contains(&self, f: &LaurentPoly) -> bool {
        f.is_zero() || self.inner.contains(&f.clear_denominators().0)
    }

    pub fn coords(&self, f: &LaurentPoly) -> Option<Vec<Rat>> {
        let n = self.inner.dim.finite()?;
        let mut out = vec![Rat::zero(); n];
        if n == 0 {
            return Some(out);
        }
        let mut unit = vec![Rat::zero(); n];
        unit[0] = Rat::one();
        for (e, c) in f.terms() {
            let mut v = unit.clone();
            for (i, &k) in e.iter().enumerate() {
                let m = if k >= 0 { &self.forward[i] } else { &self.inverse[i] };
                for _ in 0..k.unsigned_abs() {
                    v = linalg::mat_vec(m, &v);
                }
            }
            for (o, x) in out.iter_mut().zip(&v) {
                *o += c * x;
            }
        }
        Some(out)
    }

    pub fn element(&self, coords: &[Rat]) -> LaurentPoly {
        LaurentPoly::from_poly(&self.inner.element(coords))
    }
}

/// Dimension and standard-monomial basis of a Laurent quotient.
pub fn laurent_quotient_basis(nvars: usize, gens: &[LaurentPoly], limits: GbLimits) -> Result<(QuotientDim, Vec<Monomial>)> {
    let q = LaurentQuotient::new(nvars, gens, limits)?;
    Ok((q.dim(), q.basis().to_vec()))
}

/// Membership of `f` in the Laurent ideal generated by `gens`.
pub fn ideal_membership(f: &LaurentPoly, gens: &[LaurentPoly], limits: GbLimits) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    Ok(LaurentQuotient::new(f.nvars(), gens, limits)?.contains(f))
}
