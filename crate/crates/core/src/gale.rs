//! Gale duality of polarized arrangements and the feasibility/boundedness exchange.
//!
//! The dual of `(H_G(t), m)` lives on the slice `{y : P y = m}` of the dual
//! sequence, with polarization given by a lift `t̂` of `t` (`Iᵀ t̂ = t`). Sign
//! vectors are matched by complementation `α ↦ [n] ∖ α`.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::arrangement::{validate_arrangement, PolarizedArrangement, SignVector};
use crate::error::{Error, Result};
use crate::lattice::{gale_dual_sequence, solve_lift, Params, ToriSequence};
use crate::linalg::{self, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualData {
    pub dual_seq: ToriSequence,
    /// Lift `m̂` of the primal polarization; the dual slice is `{y : P y = P m̂}`.
    pub dual_t_lift: Vec<Rat>,
    /// Lift `t̂` of the primal stability parameter, serving as the dual polarization.
    pub dual_m_lift: Vec<Rat>,
    /// Parameters of the dual arrangement in its own conventions.
    pub dual_params: Params,
}

pub fn dual_data(seq: &ToriSequence, params: &Params) -> Result<DualData> {
    params.check_lengths(seq)?;
    let dual_seq = gale_dual_sequence(seq)?;
    let m = linalg::mat_vec(&seq.projection().to_rational_rows(), &params.m_lift);
    let dual_t = m
        .iter()
        .map(|x| {
            if x.denom().is_one() {
                Ok(x.numer().clone())
            } else {
                Err(Error::InvalidParameter(format!("P·m̂ has non-integral entry {x}")))
            }
        })
        .collect::<Result<Vec<BigInt>>>()?;
    let t_hat = solve_lift(&seq.inclusion().transpose(), &params.t_rational())?;
    Ok(DualData {
        dual_seq,
        dual_t_lift: params.m_lift.clone(),
        dual_m_lift: t_hat.clone(),
        dual_params: Params { t: dual_t, m_lift: t_hat },
    })
}

/// Validated primal and dual arrangements.
pub fn dual_pair(seq: &ToriSequence, params: &Params) -> Result<(PolarizedArrangement, PolarizedArrangement)> {
    let primal = validate_arrangement(seq, params)?;
    let dd = dual_data(seq, params)?;
    let dual = validate_arrangement(&dd.dual_seq, &dd.dual_params)?;
    Ok((primal, dual))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ExchangeFailure {
    /// primal feasibility differs from dual boundedness of the complement
    FeasibleVsDualBounded,
    /// primal boundedness differs from dual feasibility of the complement
    BoundedVsDualFeasible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeViolation {
    pub sign_vector: SignVector,
    pub failure: ExchangeFailure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeReport {
    pub checked: usize,
    pub violations: Vec<ExchangeViolation>,
}

impl ExchangeReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn verify_exchange(seq: &ToriSequence, params: &Params) -> Result<ExchangeReport> {
    let (primal, dual) = dual_pair(seq, params)?;
    Ok(exchange_between(&primal, &dual))
}

pub fn exchange_between(primal: &PolarizedArrangement, dual: &PolarizedArrangement) -> ExchangeReport {
    let n = primal.n();
    let mut violations = Vec::new();
    for a in SignVector::all(n) {
        let c = a.complement(n);
        if primal.is_feasible(a) != dual.is_bounded_above(c) {
            violations.push(ExchangeViolation { sign_vector: a, failure: ExchangeFailure::FeasibleVsDualBounded });
        }
        if primal.is_bounded_above(a) != dual.is_feasible(c) {
            violations.push(ExchangeViolation { sign_vector: a, failure: ExchangeFailure::BoundedVsDualFeasible });
        }
    }
    ExchangeReport { checked: 1 << n, violations }
}
