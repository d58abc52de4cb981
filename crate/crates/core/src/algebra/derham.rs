//! de Rham model: coefficients in `Sym(f) = Q[x_1..x_d]`, crossing factors `x̄_i`.

use serde::Serialize;

use super::{crossing, CatOAlgebra, MonodromyRing, Orientation, Side};
use crate::arrangement::{PolarizedArrangement, SignVector};
use crate::error::Result;
use crate::ring::{GbLimits, LaurentPoly};

/// `∏_{i : α_i = β_i ≠ γ_i} x̄_i`.
pub fn chi_add(ring: &MonodromyRing, a: SignVector, g: SignVector, b: SignVector) -> LaurentPoly {
    crossing(Side::Derham, ring, Orientation::default(), ring.exponents.len(), a, g, b)
}

pub fn build_derham_algebra(arr: &PolarizedArrangement, limits: GbLimits) -> Result<CatOAlgebra> {
    CatOAlgebra::build(Side::Derham, arr, Orientation::default(), limits)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentDiff {
    pub source: SignVector,
    pub target: SignVector,
    pub betti: usize,
    pub derham: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionComparison {
    pub betti_total: usize,
    pub derham_total: usize,
    pub vertices_match: bool,
    pub diffs: Vec<ComponentDiff>,
}

impl DimensionComparison {
    pub fn is_equal(&self) -> bool {
        self.vertices_match && self.diffs.is_empty() && self.betti_total == self.derham_total
    }
}

pub fn compare_dimensions(betti: &CatOAlgebra, derham: &CatOAlgebra) -> DimensionComparison {
    let vertices_match = betti.vertices() == derham.vertices();
    let mut diffs = Vec::new();
    if vertices_match {
        for (b, d) in betti.components().iter().zip(derham.components()) {
            if b.dim() != d.dim() {
                diffs.push(ComponentDiff { source: b.source, target: b.target, betti: b.dim(), derham: d.dim() });
            }
        }
    }
    DimensionComparison { betti_total: betti.total_dim(), derham_total: derham.total_dim(), vertices_match, diffs }
}
