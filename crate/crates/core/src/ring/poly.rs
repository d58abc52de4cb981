use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::linalg::{rat, Rat};

pub type Monomial = Vec<u32>;

/// Term orders used by the engine. `Block { first }` compares the first
/// `first` variables by grevlex and breaks ties by grevlex on the rest, so it
/// eliminates the leading block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    #[default]
    GrevLex,
    Block { first: usize },
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&x| x as u64).sum();
    let db: u64 = b.iter().map(|&x| x as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match *self {
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Block { first } => {
                grevlex(&a[..first], &b[..first]).then_with(|| grevlex(&a[first..], &b[first..]))
            }
        }
    }
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn quotient(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Polynomial with rational coefficients in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn monomial(nvars: usize, exp: Monomial, c: Rat) -> Self {
        assert_eq!(exp.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// The variable `x_{i+1}`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Rat::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(nvars: usize, terms: &[(&[u32], i64)]) -> Self {
        Self::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), rat(*c))))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, e: Monomial, c: Rat) {
        assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|t| t.0)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn mul_term(&self, e: &[u32], c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.iter().zip(e).map(|(a, b)| a + b).collect(), x * c))
                .collect(),
        }
    }

    pub fn make_monic(&self, order: MonomialOrder) -> Self {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Terms listed from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Monomial, &Rat)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| order.cmp(b.0, a.0));
        t
    }

    /// Substitute a larger ring by inserting `extra` variables at position `at`.
    pub fn embed(&self, at: usize, extra: usize) -> Self {
        Poly {
            nvars: self.nvars + extra,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut n = e[..at].to_vec();
                    n.extend(std::iter::repeat_n(0, extra));
                    n.extend_from_slice(&e[at..]);
                    (n, c.clone())
                })
                .collect(),
        }
    }

    /// Drop the first `k` variables, which must not occur.
    pub fn drop_leading_vars(&self, k: usize) -> Option<Self> {
        let mut out = Self::zero(self.nvars - k);
        for (e, c) in &self.terms {
            if e[..k].iter().any(|&x| x != 0) {
                return None;
            }
            out.terms.insert(e[k..].to_vec(), c.clone());
        }
        Some(out)
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rat::one())
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &rhs.terms {
            for (m, x) in &self.terms {
                out.add_term(m.iter().zip(e).map(|(a, b)| a + b).collect(), x * c);
            }
        }
        out
    }
}

pub(crate) fn var_name(nvars: usize, i: usize) -> String {
    if nvars <= 3 {
        ["x", "y", "z"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

pub(crate) fn write_terms<E: Copy + PartialEq + Zero + One + fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    nvars: usize,
    terms: &[(&Vec<E>, &Rat)],
) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (k, (e, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if k == 0 {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        let constant = e.iter().all(|x| x.is_zero());
        if constant {
            write!(f, "{a}")?;
            continue;
        }
        let mut first = true;
        if !a.is_one() {
            write!(f, "{a}")?;
            first = false;
        }
        for (i, x) in e.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&var_name(nvars, i))?;
            if !x.is_one() {
                write!(f, "^{x}")?;
            }
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.nvars, &self.sorted_terms(MonomialOrder::GrevLex))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Full reduction of `f` by `basis` (leading terms taken under `order`).
pub fn reduce(f: &Poly, basis: &[Poly], order: MonomialOrder) -> Poly {
    let leads: Vec<(Monomial, Rat)> = basis
        .iter()
        .map(|g| {
            let (e, c) = g.leading_term(order).expect("zero polynomial in basis");
            (e.clone(), c.clone())
        })
        .collect();
    let mut p = f.clone();
    let mut rem = Poly::zero(f.nvars);
    while let Some((e, c)) = p.leading_term(order).map(|(e, c)| (e.clone(), c.clone())) {
        match leads.iter().position(|(l, _)| divides(l, &e)) {
            Some(j) => {
                let q = quotient(&e, &leads[j].0);
                let factor = &c / &leads[j].1;
                p = &p - &basis[j].mul_term(&q, &factor);
            }
            None => {
                p.terms.remove(&e);
                rem.terms.insert(e, c);
            }
        }
    }
    rem
}

pub(crate) fn s_polynomial(f: &Poly, g: &Poly, order: MonomialOrder) -> Poly {
    let (ef, cf) = f.leading_term(order).unwrap();
    let (eg, cg) = g.leading_term(order).unwrap();
    let l = lcm(ef, eg);
    let a = f.mul_term(&quotient(&l, ef), &cf.recip());
    let b = g.mul_term(&quotient(&l, eg), &cg.recip());
    &a - &b
}
