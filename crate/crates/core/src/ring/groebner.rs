use std::collections::BTreeSet;

use super::poly::{coprime, divides, lcm, reduce, s_polynomial, MonomialOrder, Poly};
use crate::error::{Error, Result};

/// Caps on a single Buchberger run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbLimits {
    pub max_pairs: usize,
    pub max_basis: usize,
}

impl Default for GbLimits {
    fn default() -> Self {
        GbLimits { max_pairs: 50_000, max_basis: 2_000 }
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`, sorted by decreasing
/// leading monomial. The zero ideal yields an empty basis.
pub fn groebner_basis(gens: &[Poly], order: MonomialOrder, limits: GbLimits) -> Result<Vec<Poly>> {
    let mut g: Vec<Poly> = Vec::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for f in gens {
        let r = reduce(f, &g, order);
        if !r.is_zero() {
            push(&mut g, &mut pending, r.make_monic(order), limits)?;
        }
    }
    let mut processed = 0usize;
    while let Some(&(i, j)) = pending.iter().min_by(|a, b| {
        let la = pair_lcm(&g, **a, order);
        let lb = pair_lcm(&g, **b, order);
        order.cmp(&la, &lb).then(a.cmp(b))
    }) {
        pending.remove(&(i, j));
        processed += 1;
        if processed > limits.max_pairs {
            return Err(Error::ResourceLimit(format!("more than {} S-pairs", limits.max_pairs)));
        }
        let li = g[i].leading_monomial(order).unwrap();
        let lj = g[j].leading_monomial(order).unwrap();
        if coprime(li, lj) {
            continue;
        }
        let l = lcm(li, lj);
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && divides(g[k].leading_monomial(order).unwrap(), &l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let r = reduce(&s_polynomial(&g[i], &g[j], order), &g, order);
        if !r.is_zero() {
            push(&mut g, &mut pending, r.make_monic(order), limits)?;
        }
    }
    Ok(reduce_basis(g, order))
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn pair_lcm(g: &[Poly], (i, j): (usize, usize), order: MonomialOrder) -> Vec<u32> {
    lcm(g[i].leading_monomial(order).unwrap(), g[j].leading_monomial(order).unwrap())
}

fn push(g: &mut Vec<Poly>, pending: &mut BTreeSet<(usize, usize)>, p: Poly, limits: GbLimits) -> Result<()> {
    if g.len() >= limits.max_basis {
        return Err(Error::ResourceLimit(format!("basis exceeds {} elements", limits.max_basis)));
    }
    let n = g.len();
    for i in 0..n {
        pending.insert((i, n));
    }
    g.push(p);
    Ok(())
}

fn reduce_basis(mut g: Vec<Poly>, order: MonomialOrder) -> Vec<Poly> {
    g.sort_by(|a, b| order.cmp(a.leading_monomial(order).unwrap(), b.leading_monomial(order).unwrap()));
    let mut minimal: Vec<Poly> = Vec::new();
    for p in g {
        let lp = p.leading_monomial(order).unwrap().clone();
        if !minimal.iter().any(|q| divides(q.leading_monomial(order).unwrap(), &lp)) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Poly> = minimal.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, q)| q.clone()).collect();
        let lead = minimal[k].leading_term(order).map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut tail = minimal[k].clone();
        tail.add_term(lead.0.clone(), -lead.1.clone());
        let mut r = reduce(&tail, &others, order);
        r.add_term(lead.0, lead.1);
        out.push(r.make_monic(order));
    }
    out.sort_by(|a, b| order.cmp(b.leading_monomial(order).unwrap(), a.leading_monomial(order).unwrap()));
    out
}

/// Remainder of `f` modulo a Gröbner basis.
pub fn normal_form(f: &Poly, gb: &[Poly], order: MonomialOrder) -> Poly {
    reduce(f, gb, order)
}

/// `(I : mono^∞)` as a reduced grevlex basis, computed by eliminating an
/// auxiliary variable `s` from `I + ⟨s·mono − 1⟩`.
pub fn saturate_by_monomial(gens: &[Poly], mono: &[u32], limits: GbLimits) -> Result<Vec<Poly>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let d = first.nvars();
    assert_eq!(mono.len(), d);
    let mut ext: Vec<Poly> = gens.iter().map(|g| g.embed(0, 1)).collect();
    let mut e = vec![1u32];
    e.extend_from_slice(mono);
    ext.push(&Poly::monomial(d + 1, e, num_traits::One::one()) - &Poly::one(d + 1));
    let gb = groebner_basis(&ext, MonomialOrder::Block { first: 1 }, limits)?;
    let kept: Vec<Poly> = gb.iter().filter_map(|p| p.drop_leading_vars(1)).collect();
    groebner_basis(&kept, MonomialOrder::GrevLex, limits)
}
