//! Polarized hyperplane arrangements on the affine slice `{y : Iᵀ y = t}` and the
//! classification of sign vectors by exact linear programming.

use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Genericity, Result};
use crate::lattice::{subsets, Params, ToriSequence};
use crate::linalg::{self, Rat};
use crate::lp::{LinearProgram, LpOutcome, Relation};

/// A subset of `{1, …, n}`; bit `i` (0-based) set means coordinate `i + 1` is positive.
/// Serialized as the sorted list of its 1-based coordinates.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SignVector(pub u32);

impl Serialize for SignVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coords: Vec<usize> = (0..32).filter(|&i| self.contains(i)).map(|i| i + 1).collect();
        coords.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SignVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let coords = Vec::<usize>::deserialize(d)?;
        if coords.iter().any(|&c| c == 0 || c > 32) {
            return Err(serde::de::Error::custom("sign vector coordinates must lie in 1..=32"));
        }
        Ok(SignVector::from_coords(&coords))
    }
}

impl SignVector {
    pub const EMPTY: SignVector = SignVector(0);

    pub fn from_coords(coords: &[usize]) -> Self {
        SignVector(coords.iter().fold(0, |m, &c| m | (1 << (c - 1))))
    }

    pub fn full(n: usize) -> Self {
        SignVector(((1u64 << n) - 1) as u32)
    }

    /// Whether 0-based coordinate `i` lies in the set.
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn complement(self, n: usize) -> Self {
        SignVector(!self.0 & Self::full(n).0)
    }

    pub fn toggle(self, i: usize) -> Self {
        SignVector(self.0 ^ (1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: SignVector) -> Self {
        SignVector(self.0 | o.0)
    }

    pub fn intersection(self, o: SignVector) -> Self {
        SignVector(self.0 & o.0)
    }

    /// 0-based members.
    pub fn members(self, n: usize) -> impl Iterator<Item = usize> {
        (0..n).filter(move |&i| self.contains(i))
    }

    /// `+1` on members, `−1` elsewhere.
    pub fn sign(self, i: usize) -> Rat {
        if self.contains(i) {
            Rat::one()
        } else {
            -Rat::one()
        }
    }

    pub fn all(n: usize) -> impl Iterator<Item = SignVector> {
        (0..1u32 << n).map(SignVector)
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("∅");
        }
        let items: Vec<String> = (0..32).filter(|&i| self.contains(i)).map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "-")]
    Neg,
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "+")]
    Pos,
}

/// A sign pattern in `{+, 0, −}^n` with nonempty realization on the slice.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Covector(pub Vec<Sign>);

impl Covector {
    pub fn zero_set(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] == Sign::Zero).collect()
    }
}

impl fmt::Display for Covector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<&str> = self
            .0
            .iter()
            .map(|s| match s {
                Sign::Neg => "-",
                Sign::Zero => "0",
                Sign::Pos => "+",
            })
            .collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for Covector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChamberClass {
    Infeasible,
    FeasibleBounded,
    FeasibleUnbounded,
}

/// Feasibility and boundedness of every sign vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignClassification {
    n: usize,
    feasible: Vec<bool>,
    bounded: Vec<bool>,
}

impl SignClassification {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_feasible(&self, a: SignVector) -> bool {
        self.feasible[a.0 as usize]
    }

    pub fn is_bounded(&self, a: SignVector) -> bool {
        self.bounded[a.0 as usize]
    }

    pub fn class(&self, a: SignVector) -> ChamberClass {
        match (self.is_feasible(a), self.is_bounded(a)) {
            (false, _) => ChamberClass::Infeasible,
            (true, true) => ChamberClass::FeasibleBounded,
            (true, false) => ChamberClass::FeasibleUnbounded,
        }
    }

    pub fn with_class(&self, c: ChamberClass) -> Vec<SignVector> {
        SignVector::all(self.n).filter(|&a| self.class(a) == c).collect()
    }

    pub fn feasible(&self) -> Vec<SignVector> {
        SignVector::all(self.n).filter(|&a| self.is_feasible(a)).collect()
    }
}

/// `(H_G(t), m)`: the coordinate arrangement restricted to the slice, with polarization.
#[derive(Clone, Debug)]
pub struct PolarizedArrangement {
    seq: ToriSequence,
    params: Params,
    classification: SignClassification,
}

impl PolarizedArrangement {
    pub fn seq(&self) -> &ToriSequence {
        &self.seq
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.seq.n()
    }

    pub fn slice_dim(&self) -> usize {
        self.seq.f_rank()
    }

    pub fn classification(&self) -> &SignClassification {
        &self.classification
    }

    pub fn is_feasible(&self, a: SignVector) -> bool {
        self.classification.is_feasible(a)
    }

    pub fn is_bounded_above(&self, a: SignVector) -> bool {
        self.classification.is_bounded(a)
    }

    pub fn is_simple(&self) -> bool {
        is_simple(&self.seq, &self.params)
    }

    /// Simple stability parameter and a polarization that is nonconstant on every 1-flat.
    pub fn is_generic(&self) -> bool {
        self.is_simple() && self.is_polarization_generic().unwrap_or(false)
    }

    /// Fails with the first failing genericity condition.
    pub fn require_generic(&self) -> Result<()> {
        if !self.is_simple() {
            return Err(Error::NonGenericParameter(Genericity::NotSimple));
        }
        if !self.is_polarization_generic()? {
            return Err(Error::NonGenericParameter(Genericity::PolarizationConstantOnFlat));
        }
        Ok(())
    }

    pub fn is_polarization_generic(&self) -> Result<bool> {
        if !self.is_simple() {
            return Err(Error::NonGenericParameter(Genericity::NotSimple));
        }
        let it = self.seq.inclusion().transpose().to_rational_rows();
        let n = self.n();
        let d = self.slice_dim();
        if d == 0 {
            return Ok(true);
        }
        for s in subsets(n, d - 1) {
            let rows = stacked(&it, &s, n);
            let dirs = linalg::nullspace(&rows, n);
            if dirs.len() != 1 {
                continue;
            }
            let slope = dirs[0].iter().zip(&self.params.m_lift).fold(Rat::zero(), |a, (r, m)| a + r * m);
            if slope.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All covectors with nonempty relatively open realization, in lexicographic
    /// order of their sign words (− < 0 < +).
    pub fn enumerate_faces(&self) -> Vec<Covector> {
        let n = self.n();
        let total = 3usize.pow(n as u32);
        let all: Vec<Covector> = (0..total)
            .map(|mut code| {
                let mut v = vec![Sign::Neg; n];
                for i in (0..n).rev() {
                    v[i] = match code % 3 {
                        0 => Sign::Neg,
                        1 => Sign::Zero,
                        _ => Sign::Pos,
                    };
                    code /= 3;
                }
                Covector(v)
            })
            .collect();
        all.into_par_iter().filter(|c| covector_realizable(&self.seq, &self.params, c)).collect()
    }

    /// Dimension of the realization of a realizable covector.
    pub fn face_dim(&self, c: &Covector) -> usize {
        let it = self.seq.inclusion().transpose().to_rational_rows();
        let rows = stacked(&it, &c.zero_set(), self.n());
        self.n() - linalg::rank(&rows)
    }

    pub fn count_vertices(&self) -> Result<usize> {
        if !self.is_simple() {
            return Err(Error::NonGenericParameter(Genericity::NotSimple));
        }
        // in a simple arrangement a vertex lies on exactly `slice_dim` hyperplanes
        let n = self.n();
        let d = self.slice_dim();
        let candidates: Vec<Covector> = subsets(n, d)
            .flat_map(|zeros| {
                (0..1u32 << (n - d)).map(move |bits| {
                    let mut v = vec![Sign::Zero; n];
                    let mut k = 0;
                    for (i, s) in v.iter_mut().enumerate() {
                        if !zeros.contains(&i) {
                            *s = if bits >> k & 1 == 1 { Sign::Pos } else { Sign::Neg };
                            k += 1;
                        }
                    }
                    Covector(v)
                })
            })
            .collect();
        Ok(candidates
            .into_par_iter()
            .filter(|c| covector_realizable(&self.seq, &self.params, c) && self.face_dim(c) == 0)
            .count())
    }

    /// Feasible-bounded chambers joined across shared facets.
    pub fn skeleton_graph(&self) -> Result<SkeletonGraph> {
        self.require_generic()?;
        let n = self.n();
        let vertices = self.classification.with_class(ChamberClass::FeasibleBounded);
        let mut edges = Vec::new();
        for &a in &vertices {
            for i in 0..n {
                if a.contains(i) {
                    continue;
                }
                let b = a.toggle(i);
                if !vertices.contains(&b) {
                    continue;
                }
                let signs = (0..n)
                    .map(|j| {
                        if j == i {
                            Sign::Zero
                        } else if a.contains(j) {
                            Sign::Pos
                        } else {
                            Sign::Neg
                        }
                    })
                    .collect();
                if covector_realizable(&self.seq, &self.params, &Covector(signs)) {
                    edges.push(SkeletonEdge { lower: a, upper: b, hyperplane: i + 1 });
                }
            }
        }
        edges.sort_by_key(|e| (e.lower, e.upper));
        Ok(SkeletonGraph { vertices, edges })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonEdge {
    pub lower: SignVector,
    pub upper: SignVector,
    /// 1-based index of the separating hyperplane.
    pub hyperplane: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonGraph {
    pub vertices: Vec<SignVector>,
    pub edges: Vec<SkeletonEdge>,
}

/// Rows of `Iᵀ` followed by unit rows `e_i` for `i ∈ zeros`.
fn stacked(it: &[Vec<Rat>], zeros: &[usize], n: usize) -> Vec<Vec<Rat>> {
    let mut rows = it.to_vec();
    for &i in zeros {
        let mut e = vec![Rat::zero(); n];
        e[i] = Rat::one();
        rows.push(e);
    }
    rows
}

/// Validates the data and caches the full sign-vector classification.
pub fn validate_arrangement(seq: &ToriSequence, params: &Params) -> Result<PolarizedArrangement> {
    params.check_lengths(seq)?;
    let n = seq.n();
    if n > 20 {
        return Err(Error::InvalidParameter(format!("n = {n} exceeds the supported maximum of 20")));
    }
    let it = seq.inclusion().transpose().to_rational_rows();
    let t = params.t_rational();
    let base = linalg::solve(&it, &t, n).ok_or_else(|| Error::InvalidSequence("slice is empty".into()))?;
    let rank_it = linalg::rank(&it);
    for i in 0..n {
        // the slice lies inside {y_i = 0} iff y_i is constant on it and vanishes at one point
        let constant = linalg::rank(&stacked(&it, &[i], n)) == rank_it;
        if constant && base[i].is_zero() {
            return Err(Error::DegenerateHyperplane(i + 1));
        }
    }
    let classification = classify_all(seq, params);
    Ok(PolarizedArrangement { seq: seq.clone(), params: params.clone(), classification })
}

/// Strict feasibility of the open chamber: maximize a common slack `s ≤ 1` with
/// `ε_i y_i ≥ s`; the chamber is nonempty iff the optimum is positive.
pub fn is_feasible(seq: &ToriSequence, params: &Params, a: SignVector) -> bool {
    let signs: Vec<Sign> = (0..seq.n()).map(|i| if a.contains(i) { Sign::Pos } else { Sign::Neg }).collect();
    covector_realizable(seq, params, &Covector(signs))
}

/// With `y_i = ε_i (u_i + s)` on the nonzero coordinates, `u ≥ 0`, `y_i = 0` on the
/// zero set: maximize `s ≤ 1` subject to the slice equations.
fn covector_realizable(seq: &ToriSequence, params: &Params, c: &Covector) -> bool {
    let signed: Vec<(usize, Rat)> = c
        .0
        .iter()
        .enumerate()
        .filter_map(|(i, s)| match s {
            Sign::Zero => None,
            Sign::Pos => Some((i, Rat::one())),
            Sign::Neg => Some((i, -Rat::one())),
        })
        .collect();
    let nv = signed.len() + 1;
    let mut obj = vec![Rat::zero(); nv];
    obj[nv - 1] = Rat::one();
    let mut lp = LinearProgram::maximize(obj);
    for j in 0..signed.len() {
        lp.nonnegative(j);
    }
    for (row, ti) in seq.inclusion().transpose().to_rational_rows().into_iter().zip(params.t_rational()) {
        let mut r = vec![Rat::zero(); nv];
        for (j, (i, e)) in signed.iter().enumerate() {
            let coeff = &row[*i] * e;
            r[nv - 1] += &coeff;
            r[j] = coeff;
        }
        lp.constrain(r, Relation::Eq, ti);
    }
    let mut cap = vec![Rat::zero(); nv];
    cap[nv - 1] = Rat::one();
    lp.constrain(cap, Relation::Le, Rat::one());
    match lp.solve() {
        LpOutcome::Optimal { value, .. } => value.is_positive(),
        LpOutcome::Infeasible => false,
        LpOutcome::Unbounded => unreachable!("slack is capped"),
    }
}

/// Whether `⟨m̂, r⟩ ≤ 0` on the recession cone `{r : Iᵀ r = 0, ε_i r_i ≥ 0}`.
/// Decided on the cone cut by `Σ |r_i| ≤ 1`, writing `r_i = ε_i s_i` with `s ≥ 0`.
pub fn is_bounded_above(seq: &ToriSequence, params: &Params, a: SignVector) -> bool {
    let n = seq.n();
    let eps: Vec<Rat> = (0..n).map(|i| a.sign(i)).collect();
    let obj: Vec<Rat> = params.m_lift.iter().zip(&eps).map(|(m, e)| m * e).collect();
    let mut lp = LinearProgram::maximize(obj);
    for j in 0..n {
        lp.nonnegative(j);
    }
    for row in seq.inclusion().transpose().to_rational_rows() {
        lp.constrain(row.iter().zip(&eps).map(|(x, e)| x * e).collect(), Relation::Eq, Rat::zero());
    }
    lp.constrain(vec![Rat::one(); n], Relation::Le, Rat::one());
    match lp.solve() {
        LpOutcome::Optimal { value, .. } => !value.is_positive(),
        other => unreachable!("recession LP on a simplex with the origin feasible: {other:?}"),
    }
}

pub fn classify_all(seq: &ToriSequence, params: &Params) -> SignClassification {
    let n = seq.n();
    let pairs: Vec<(bool, bool)> = SignVector::all(n)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|a| (is_feasible(seq, params, a), is_bounded_above(seq, params, a)))
        .collect();
    let (feasible, bounded) = pairs.into_iter().unzip();
    SignClassification { n, feasible, bounded }
}

/// Every `n−k` hyperplanes meet the slice in exactly one point and every `n−k+1`
/// have empty intersection with it.
pub fn is_simple(seq: &ToriSequence, params: &Params) -> bool {
    let n = seq.n();
    let d = seq.f_rank();
    let it = seq.inclusion().transpose().to_rational_rows();
    let t = params.t_rational();
    let consistent = |s: &[usize]| {
        let rows = stacked(&it, s, n);
        let mut rhs = t.clone();
        rhs.extend(std::iter::repeat_n(Rat::zero(), s.len()));
        linalg::solve(&rows, &rhs, n).is_some().then(|| linalg::rank(&rows))
    };
    for s in subsets(n, d) {
        if consistent(&s) != Some(n) {
            return false;
        }
    }
    if d < n {
        for s in subsets(n, d + 1) {
            if consistent(&s).is_some() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn e1() -> PolarizedArrangement {
        let seq = ToriSequence::from_columns(2, &[vec![1, -1]]).unwrap();
        validate_arrangement(&seq, &Params::from_ints(&[1], &[-1, 0])).unwrap()
    }

    pub(crate) fn e2() -> PolarizedArrangement {
        let seq = ToriSequence::from_columns(3, &[vec![1, 1, 1]]).unwrap();
        validate_arrangement(&seq, &Params::from_ints(&[1], &[0, -1, -2])).unwrap()
    }

    fn sv(c: &[usize]) -> SignVector {
        SignVector::from_coords(c)
    }

    #[test]
    fn sign_vector_display() {
        assert_eq!(sv(&[1, 2]).to_string(), "{1,2}");
        assert_eq!(SignVector::EMPTY.to_string(), "∅");
        assert_eq!(sv(&[2]).complement(3), sv(&[1, 3]));
    }

    #[test]
    fn validation() {
        e1();
        let seq = ToriSequence::from_columns(1, &[vec![1]]).unwrap();
        let err = validate_arrangement(&seq, &Params::from_ints(&[0], &[0])).unwrap_err();
        assert_eq!(err, Error::DegenerateHyperplane(1));
        let seq = ToriSequence::from_columns(3, &[vec![1, 1, 1]]).unwrap();
        validate_arrangement(&seq, &Params::from_ints(&[1], &[0, 0, 0])).unwrap();
    }

    #[test]
    fn e1_classification() {
        let a = e1();
        let c = a.classification();
        assert_eq!(c.class(SignVector::EMPTY), ChamberClass::FeasibleUnbounded);
        assert_eq!(c.class(sv(&[1])), ChamberClass::FeasibleBounded);
        assert_eq!(c.class(sv(&[2])), ChamberClass::Infeasible);
        assert_eq!(c.class(sv(&[1, 2])), ChamberClass::FeasibleBounded);
        assert!(!a.is_bounded_above(SignVector::EMPTY));
    }

    #[test]
    fn trivial_group_everything_feasible() {
        let seq = ToriSequence::from_columns(3, &[]).unwrap();
        let a = validate_arrangement(&seq, &Params::from_ints(&[], &[1, -2, 3])).unwrap();
        assert!(SignVector::all(3).all(|s| a.is_feasible(s)));
        // bounded above iff every direction of the orthant decreases m
        assert_eq!(a.classification().with_class(ChamberClass::FeasibleBounded), vec![sv(&[2])]);
    }

    #[test]
    fn zero_polarization_bounds_everything() {
        let seq = ToriSequence::from_columns(3, &[vec![1, 1, 1]]).unwrap();
        let a = validate_arrangement(&seq, &Params::from_ints(&[1], &[0, 0, 0])).unwrap();
        assert!(SignVector::all(3).all(|s| a.is_bounded_above(s)));
    }

    #[test]
    fn e2_classification() {
        let a = e2();
        assert_eq!(a.classification().feasible().len(), 7);
        assert_eq!(
            a.classification().with_class(ChamberClass::FeasibleBounded),
            vec![sv(&[3]), sv(&[2, 3]), sv(&[1, 2, 3])]
        );
    }

    #[test]
    fn whole_torus_single_chamber() {
        let seq = ToriSequence::from_inclusion(crate::lattice::IntMatrix::identity(2)).unwrap();
        let a = validate_arrangement(&seq, &Params::from_ints(&[1, -1], &[0, 0])).unwrap();
        assert_eq!(a.classification().feasible(), vec![sv(&[1])]);
        assert!(a.is_simple());
        assert_eq!(a.count_vertices().unwrap(), 1);
        let g = a.skeleton_graph().unwrap();
        assert_eq!(g.vertices, vec![sv(&[1])]);
        assert!(g.edges.is_empty());
    }

    #[test]
    fn simplicity() {
        assert!(e1().is_simple());
        let seq = ToriSequence::from_columns(2, &[vec![1, -1]]).unwrap();
        assert!(!is_simple(&seq, &Params::from_ints(&[0], &[-1, 0])));
        let seq3 = ToriSequence::from_columns(3, &[vec![1, 1, 1]]).unwrap();
        assert!(!is_simple(&seq3, &Params::from_ints(&[0], &[0, -1, -2])));
    }

    #[test]
    fn polarization_genericity() {
        assert!(e1().is_polarization_generic().unwrap());
        assert!(e2().is_polarization_generic().unwrap());
        let seq = ToriSequence::from_columns(3, &[vec![1, 1, 1]]).unwrap();
        let flat = validate_arrangement(&seq, &Params::from_ints(&[1], &[1, 1, 1])).unwrap();
        assert!(!flat.is_polarization_generic().unwrap());
        let nonsimple = validate_arrangement(&seq, &Params::from_ints(&[0], &[0, -1, -2])).unwrap();
        assert_eq!(
            nonsimple.is_polarization_generic(),
            Err(Error::NonGenericParameter(Genericity::NotSimple))
        );
    }

    #[test]
    fn faces() {
        let f = e1().enumerate_faces();
        let words: Vec<String> = f.iter().map(|c| c.to_string()).collect();
        assert_eq!(words, vec!["(-,-)", "(0,-)", "(+,-)", "(+,0)", "(+,+)"]);
        let seq = ToriSequence::from_inclusion(crate::lattice::IntMatrix::identity(1)).unwrap();
        let pt = validate_arrangement(&seq, &Params::from_ints(&[1], &[0])).unwrap();
        assert_eq!(pt.enumerate_faces().len(), 1);
        let e2 = e2();
        let f2 = e2.enumerate_faces();
        assert_eq!(f2.len(), 19);
        let dims: Vec<usize> = f2.iter().map(|c| e2.face_dim(c)).collect();
        assert_eq!(dims.iter().filter(|&&d| d == 2).count(), 7);
        assert_eq!(dims.iter().filter(|&&d| d == 1).count(), 9);
        assert_eq!(dims.iter().filter(|&&d| d == 0).count(), 3);
    }

    #[test]
    fn vertices() {
        assert_eq!(e1().count_vertices().unwrap(), 2);
        assert_eq!(e2().count_vertices().unwrap(), 3);
    }

    #[test]
    fn skeletons() {
        let g = e1().skeleton_graph().unwrap();
        assert_eq!(g.vertices, vec![sv(&[1]), sv(&[1, 2])]);
        assert_eq!(g.edges, vec![SkeletonEdge { lower: sv(&[1]), upper: sv(&[1, 2]), hyperplane: 2 }]);
        let g2 = e2().skeleton_graph().unwrap();
        assert_eq!(g2.vertices, vec![sv(&[3]), sv(&[2, 3]), sv(&[1, 2, 3])]);
        let pairs: Vec<(SignVector, SignVector)> = g2.edges.iter().map(|e| (e.lower, e.upper)).collect();
        assert_eq!(pairs, vec![(sv(&[3]), sv(&[2, 3])), (sv(&[2, 3]), sv(&[1, 2, 3]))]);
    }

    #[test]
    fn negating_t_complements_feasibility() {
        let seq = ToriSequence::from_columns(3, &[vec![1, 1, 1]]).unwrap();
        let p = Params::from_ints(&[1], &[0, -1, -2]);
        let q = Params::from_ints(&[-1], &[0, 1, 2]);
        let a = validate_arrangement(&seq, &p).unwrap();
        let b = validate_arrangement(&seq, &q).unwrap();
        for s in SignVector::all(3) {
            assert_eq!(a.classification().class(s), b.classification().class(s.complement(3)));
        }
    }
}
