//! The category-O algebra as a grid of rank-one components `e_α A e_β`, each a
//! quotient of the coefficient ring by the ideal generated by crossing factors
//! through feasible unbounded chambers.
//!
//! The same grid carries two coefficient models: the Laurent ring of the torus
//! `F` (Betti) and the symmetric algebra of its Lie algebra (de Rham).

pub mod betti;
pub mod derham;
pub mod presentation;

use std::collections::HashMap;

use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{PolarizedArrangement, SignVector};
use crate::error::{Error, Result};
use crate::lattice::ToriSequence;
use crate::linalg::{rat, Rat};
use crate::ring::{GbLimits, LaurentPoly, LaurentQuotient, Monomial, Poly, Quotient, QuotientDim};

pub use betti::{build_betti_algebra, chi};
pub use derham::{build_derham_algebra, chi_add, compare_dimensions, DimensionComparison};
pub use presentation::{verify_presentation, PresentationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Betti,
    Derham,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Betti => "betti",
            Side::Derham => "derham",
        })
    }
}

/// Which crossing factors use the inverse monodromy: bit `i` set means
/// coordinate `i + 1` contributes `1 − m̄_i^{-1}` instead of `1 − m̄_i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Orientation(pub u32);

impl Orientation {
    pub fn flipped(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn from_coords(coords: &[usize]) -> Self {
        Orientation(SignVector::from_coords(coords).0)
    }
}

/// `Z^d` exponents of the monodromies `m̄_i = x^{P e_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyRing {
    pub rank: usize,
    pub exponents: Vec<Vec<i64>>,
}

impl MonodromyRing {
    pub fn new(seq: &ToriSequence) -> Self {
        MonodromyRing { rank: seq.f_rank(), exponents: (0..seq.n()).map(|i| seq.monodromy_exponent(i)).collect() }
    }

    pub fn monodromy(&self, i: usize) -> LaurentPoly {
        LaurentPoly::monomial(self.exponents[i].clone(), Rat::one())
    }

    /// The linear form `x̄_i = Σ_j (P e_i)_j x_j`.
    pub fn linear_form(&self, i: usize) -> LaurentPoly {
        let mut p = LaurentPoly::zero(self.rank);
        for (j, &c) in self.exponents[i].iter().enumerate() {
            let mut e = vec![0; self.rank];
            e[j] = 1;
            p.add_term(e, rat(c));
        }
        p
    }
}

/// Coordinates where `α` and `β` agree and `γ` differs from both.
pub fn crossed_coordinates(n: usize, a: SignVector, g: SignVector, b: SignVector) -> impl Iterator<Item = usize> {
    (0..n).filter(move |&i| a.contains(i) == b.contains(i) && a.contains(i) != g.contains(i))
}

#[derive(Clone, Debug)]
pub(crate) enum CoeffQuotient {
    Laurent(LaurentQuotient),
    Poly(Quotient),
}

impl CoeffQuotient {
    fn dim(&self) -> QuotientDim {
        match self {
            CoeffQuotient::Laurent(q) => q.dim(),
            CoeffQuotient::Poly(q) => q.dim(),
        }
    }

    fn basis(&self) -> &[Monomial] {
        match self {
            CoeffQuotient::Laurent(q) => q.basis(),
            CoeffQuotient::Poly(q) => q.basis(),
        }
    }

    fn coords(&self, f: &LaurentPoly) -> Option<Vec<Rat>> {
        match self {
            CoeffQuotient::Laurent(q) => q.coords(f),
            CoeffQuotient::Poly(q) => q.coords(&to_poly(f)),
        }
    }

    fn contains(&self, f: &LaurentPoly) -> bool {
        match self {
            CoeffQuotient::Laurent(q) => q.contains(f),
            CoeffQuotient::Poly(q) => q.contains(&to_poly(f)),
        }
    }

    fn element(&self, c: &[Rat]) -> LaurentPoly {
        match self {
            CoeffQuotient::Laurent(q) => q.element(c),
            CoeffQuotient::Poly(q) => LaurentPoly::from_poly(&q.element(c)),
        }
    }
}

fn to_poly(f: &LaurentPoly) -> Poly {
    Poly::from_terms(
        f.nvars(),
        f.terms().map(|(e, c)| (e.iter().map(|&x| u32::try_from(x).expect("negative exponent in polynomial ring")).collect(), c.clone())),
    )
}

/// One component `e_α A e_β = R / J(α, β)`.
#[derive(Clone, Debug)]
pub struct Component {
    pub source: SignVector,
    pub target: SignVector,
    pub generators: Vec<LaurentPoly>,
    quotient: CoeffQuotient,
}

impl Component {
    pub fn dim(&self) -> usize {
        self.quotient.dim().finite().expect("built components are finite")
    }

    pub fn basis(&self) -> &[Monomial] {
        self.quotient.basis()
    }

    pub fn coords(&self, f: &LaurentPoly) -> Vec<Rat> {
        self.quotient.coords(f).expect("built components are finite")
    }

    pub fn contains(&self, f: &LaurentPoly) -> bool {
        self.quotient.contains(f)
    }

    pub fn element(&self, coords: &[Rat]) -> LaurentPoly {
        self.quotient.element(coords)
    }
}

/// Element `coeff · w(source, target)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordElem {
    pub source: SignVector,
    pub target: SignVector,
    pub coeff: LaurentPoly,
}

#[derive(Clone, Debug)]
pub struct CatOAlgebra {
    side: Side,
    n: usize,
    ring: MonodromyRing,
    orientation: Orientation,
    vertices: Vec<SignVector>,
    feasible: Vec<SignVector>,
    unbounded: Vec<SignVector>,
    index: HashMap<SignVector, usize>,
    components: Vec<Component>,
}

/// Component generators and quotient for `(α, β)` without building the algebra.
pub fn component_quotient(
    side: Side,
    arr: &PolarizedArrangement,
    orientation: Orientation,
    a: SignVector,
    b: SignVector,
    limits: GbLimits,
) -> Result<(Vec<LaurentPoly>, QuotientDim)> {
    let ring = MonodromyRing::new(arr.seq());
    let unbounded = arr.classification().with_class(crate::arrangement::ChamberClass::FeasibleUnbounded);
    let gens = component_generators(side, &ring, orientation, arr.n(), a, b, &unbounded);
    let q = make_quotient(side, ring.rank, &gens, limits)?;
    Ok((gens, q.dim()))
}

pub(crate) fn component_generators(
    side: Side,
    ring: &MonodromyRing,
    orientation: Orientation,
    n: usize,
    a: SignVector,
    b: SignVector,
    unbounded: &[SignVector],
) -> Vec<LaurentPoly> {
    let mut gens: Vec<LaurentPoly> = Vec::new();
    for &g in unbounded {
        let c = crossing(side, ring, orientation, n, a, g, b);
        if !gens.contains(&c) {
            gens.push(c);
        }
    }
    gens
}

fn make_quotient(side: Side, rank: usize, gens: &[LaurentPoly], limits: GbLimits) -> Result<CoeffQuotient> {
    Ok(match side {
        Side::Betti => CoeffQuotient::Laurent(LaurentQuotient::new(rank, gens, limits)?),
        Side::Derham => {
            let polys: Vec<Poly> = gens.iter().map(to_poly).collect();
            CoeffQuotient::Poly(Quotient::polynomial(rank, &polys, limits)?)
        }
    })
}

pub(crate) fn crossing(
    side: Side,
    ring: &MonodromyRing,
    orientation: Orientation,
    n: usize,
    a: SignVector,
    g: SignVector,
    b: SignVector,
) -> LaurentPoly {
    let mut out = LaurentPoly::one(ring.rank);
    for i in crossed_coordinates(n, a, g, b) {
        let factor = match side {
            Side::Betti => {
                let e: Vec<i64> = if orientation.flipped(i) {
                    ring.exponents[i].iter().map(|x| -x).collect()
                } else {
                    ring.exponents[i].clone()
                };
                LaurentPoly::one_minus(e)
            }
            Side::Derham => {
                let f = ring.linear_form(i);
                if orientation.flipped(i) {
                    f.scale(&-Rat::one())
                } else {
                    f
                }
            }
        };
        out = &out * &factor;
    }
    out
}

impl CatOAlgebra {
    pub(crate) fn build(side: Side, arr: &PolarizedArrangement, orientation: Orientation, limits: GbLimits) -> Result<Self> {
        arr.require_generic()?;
        let n = arr.n();
        let ring = MonodromyRing::new(arr.seq());
        let cls = arr.classification();
        let vertices = cls.with_class(crate::arrangement::ChamberClass::FeasibleBounded);
        let unbounded = cls.with_class(crate::arrangement::ChamberClass::FeasibleUnbounded);
        let feasible = cls.feasible();
        let pairs: Vec<(SignVector, SignVector)> =
            vertices.iter().flat_map(|&a| vertices.iter().map(move |&b| (a, b))).collect();
        let components = pairs
            .par_iter()
            .map(|&(a, b)| {
                let generators = component_generators(side, &ring, orientation, n, a, b, &unbounded);
                let quotient = make_quotient(side, ring.rank, &generators, limits)?;
                if quotient.dim() == QuotientDim::Infinite {
                    return Err(Error::DimensionInfinite(a, b));
                }
                Ok(Component { source: a, target: b, generators, quotient })
            })
            .collect::<Result<Vec<_>>>()?;
        let index = vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        Ok(CatOAlgebra { side, n, ring, orientation, vertices, feasible, unbounded, index, components })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &MonodromyRing {
        &self.ring
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Feasible bounded sign vectors in increasing bitmask order.
    pub fn vertices(&self) -> &[SignVector] {
        &self.vertices
    }

    pub fn feasible(&self) -> &[SignVector] {
        &self.feasible
    }

    pub fn unbounded(&self) -> &[SignVector] {
        &self.unbounded
    }

    pub fn vertex_index(&self, v: SignVector) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn component(&self, a: SignVector, b: SignVector) -> Option<&Component> {
        let (i, j) = (self.vertex_index(a)?, self.vertex_index(b)?);
        Some(&self.components[i * self.vertices.len() + j])
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Crossing factor of this algebra's coefficient model.
    pub fn crossing(&self, a: SignVector, g: SignVector, b: SignVector) -> LaurentPoly {
        crossing(self.side, &self.ring, self.orientation, self.n, a, g, b)
    }

    fn zero_coeff(&self) -> LaurentPoly {
        LaurentPoly::zero(self.ring.rank)
    }

    /// Normal form of `coeff · w(source, target)`; zero off the vertex grid.
    pub fn normalize(&self, source: SignVector, target: SignVector, coeff: &LaurentPoly) -> WordElem {
        let coeff = match self.component(source, target) {
            Some(c) => c.element(&c.coords(coeff)),
            None => self.zero_coeff(),
        };
        WordElem { source, target, coeff }
    }

    pub fn word(&self, source: SignVector, target: SignVector) -> WordElem {
        self.normalize(source, target, &LaurentPoly::one(self.ring.rank))
    }

    pub fn idempotent(&self, v: SignVector) -> WordElem {
        self.word(v, v)
    }

    /// `a · b` read as "a then b".
    pub fn multiply(&self, a: &WordElem, b: &WordElem) -> Result<WordElem> {
        if a.target != b.source {
            return Err(Error::CompositionMismatch(a.target, b.source));
        }
        let chi = self.crossing(a.source, a.target, b.target);
        let coeff = &(&chi * &a.coeff) * &b.coeff;
        Ok(self.normalize(a.source, b.target, &coeff))
    }

    pub fn is_zero(&self, w: &WordElem) -> bool {
        match self.component(w.source, w.target) {
            Some(c) => c.contains(&w.coeff),
            None => true,
        }
    }

    /// Component dimensions over vertices, and their sum.
    pub fn cartan_and_total(&self) -> (Vec<Vec<usize>>, usize) {
        let v = self.vertices.len();
        let cartan: Vec<Vec<usize>> =
            (0..v).map(|i| (0..v).map(|j| self.components[i * v + j].dim()).collect()).collect();
        let total = cartan.iter().flatten().sum();
        (cartan, total)
    }

    pub fn total_dim(&self) -> usize {
        self.cartan_and_total().1
    }

    /// First triple `(α, δ, γ, β)`-style failure of crossing-factor divisibility:
    /// `χ(α,δ,γ)·χ(α,γ,β)` must lie in the ideal generated by `χ(α,δ,β)`.
    pub fn check_cocycle(&self, limits: GbLimits) -> Result<Option<(SignVector, SignVector, SignVector, SignVector)>> {
        let f = &self.feasible;
        for &a in f {
            for &b in f {
                for &d in f {
                    let base = self.crossing(a, d, b);
                    let q = make_quotient(self.side, self.ring.rank, std::slice::from_ref(&base), limits)?;
                    for &g in f {
                        let prod = &self.crossing(a, d, g) * &self.crossing(a, g, b);
                        if !q.contains(&prod) {
                            return Ok(Some((a, d, g, b)));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn summary(&self) -> AlgebraSummary {
        let (cartan, total) = self.cartan_and_total();
        AlgebraSummary {
            side: self.side,
            vertices: self.vertices.clone(),
            vertex_labels: self.vertices.iter().map(|v| v.to_string()).collect(),
            cartan,
            total_dim: total,
            components: self
                .components
                .iter()
                .map(|c| ComponentSummary {
                    source: c.source,
                    target: c.target,
                    generators: c.generators.iter().map(|g| g.to_string()).collect(),
                    dim: c.dim(),
                    basis: c.basis().to_vec(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentSummary {
    pub source: SignVector,
    pub target: SignVector,
    pub generators: Vec<String>,
    pub dim: usize,
    pub basis: Vec<Monomial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraSummary {
    pub side: Side,
    pub vertices: Vec<SignVector>,
    pub vertex_labels: Vec<String>,
    pub cartan: Vec<Vec<usize>>,
    pub total_dim: usize,
    pub components: Vec<ComponentSummary>,
}
