//! Betti model: coefficients in the Laurent ring `Q[f_Z]`, crossing factors `1 − m̄_i`.

use super::{component_generators, crossing, CatOAlgebra, MonodromyRing, Orientation, Side};
use crate::arrangement::{ChamberClass, PolarizedArrangement, SignVector};
use crate::error::Result;
use crate::ring::{GbLimits, LaurentPoly};

/// `∏_{i : α_i = β_i ≠ γ_i} (1 − m̄_i^{±1})`, the sign chosen by `orientation`.
pub fn chi(ring: &MonodromyRing, orientation: Orientation, a: SignVector, g: SignVector, b: SignVector) -> LaurentPoly {
    crossing(Side::Betti, ring, orientation, ring.exponents.len(), a, g, b)
}

/// Generators of `J(α, β)`: crossing factors through every feasible unbounded chamber.
pub fn component_ideal(arr: &PolarizedArrangement, orientation: Orientation, a: SignVector, b: SignVector) -> Vec<LaurentPoly> {
    let ring = MonodromyRing::new(arr.seq());
    let unbounded = arr.classification().with_class(ChamberClass::FeasibleUnbounded);
    component_generators(Side::Betti, &ring, orientation, arr.n(), a, b, &unbounded)
}

pub fn build_betti_algebra(arr: &PolarizedArrangement, orientation: Orientation, limits: GbLimits) -> Result<CatOAlgebra> {
    CatOAlgebra::build(Side::Betti, arr, orientation, limits)
}
