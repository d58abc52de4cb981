//! The quiver presentation of the category-O algebra, checked against the
//! closed-basis grid.
//!
//! Vertices of the quiver are the feasible sign vectors; each arrow flips one
//! coordinate. Relations: square moves (two length-two paths to a diagonal
//! opposite agree), out-and-back `α → α^i → α` equals the crossing factor of
//! coordinate `i`, and idempotents of unbounded chambers vanish.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::Serialize;

use super::{make_quotient, CatOAlgebra, WordElem};
use crate::arrangement::SignVector;
use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, Rat};
use crate::ring::{GbLimits, LaurentPoly};

/// Longest path (in arrows) whose rewriting is checked exhaustively.
pub const MAX_CHECKED_PATH: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationReport {
    /// Relations (vanishing, square, out-and-back) evaluated in the grid algebra.
    pub relations_checked: usize,
    /// Dimension of the subalgebra spanned by products of generators.
    pub generated_dim: usize,
    pub total_dim: usize,
    /// Paths rewritten to normal form and compared with the grid product.
    pub paths_checked: usize,
    /// Rewriting branch points whose outcomes were compared.
    pub critical_pairs: usize,
    /// Pairs `(α, β)` whose taut paths all lie in one square-move class.
    pub taut_pairs: usize,
}

pub fn verify_presentation(alg: &CatOAlgebra, limits: GbLimits) -> Result<PresentationReport> {
    let relations_checked = check_relations(alg)?;
    let generated_dim = check_generation(alg)?;
    let mut rw = Rewriter::new(alg);
    let taut_pairs = rw.check_taut_classes()?;
    let paths_checked = rw.check_paths(MAX_CHECKED_PATH)?;
    rw.check_component_ideals(limits)?;
    Ok(PresentationReport {
        relations_checked,
        generated_dim,
        total_dim: alg.total_dim(),
        paths_checked,
        critical_pairs: rw.critical_pairs,
        taut_pairs,
    })
}

fn mismatch(msg: String) -> Error {
    Error::PresentationMismatch(msg)
}

/// Value in the grid algebra of the path `α → m → β`, or `None` if `m` is infeasible.
fn two_step(alg: &CatOAlgebra, a: SignVector, m: SignVector, b: SignVector) -> Result<Option<WordElem>> {
    if !alg.feasible().contains(&m) {
        return Ok(None);
    }
    if alg.vertex_index(m).is_none() {
        return Ok(Some(alg.normalize(a, b, &LaurentPoly::zero(alg.ring().rank))));
    }
    Ok(Some(alg.multiply(&alg.word(a, m), &alg.word(m, b))?))
}

fn check_relations(alg: &CatOAlgebra) -> Result<usize> {
    let n = alg.n();
    let verts = alg.vertices();
    let mut count = 0;
    for &a in verts {
        for &b in verts {
            let comp = alg.component(a, b).unwrap();
            for &g in alg.unbounded() {
                count += 1;
                if !comp.contains(&alg.crossing(a, g, b)) {
                    return Err(mismatch(format!("path {a} → {g} → {b} through an unbounded chamber is nonzero")));
                }
            }
        }
        for i in 0..n {
            let ai = a.toggle(i);
            if alg.vertex_index(ai).is_some() {
                count += 1;
                let uv = alg.multiply(&alg.word(a, ai), &alg.word(ai, a))?;
                let expected = alg.normalize(a, a, &alg.crossing(a, ai, a));
                if uv != expected {
                    return Err(mismatch(format!("out-and-back {a} → {ai} → {a} differs from its crossing factor")));
                }
            }
            for j in i + 1..n {
                let b = a.toggle(i).toggle(j);
                if alg.vertex_index(b).is_none() {
                    continue;
                }
                let p = two_step(alg, a, a.toggle(i), b)?;
                let q = two_step(alg, a, a.toggle(j), b)?;
                if let (Some(p), Some(q)) = (p, q) {
                    count += 1;
                    if p != q {
                        return Err(mismatch(format!("square {a} → {b} via coordinates {} and {} does not commute", i + 1, j + 1)));
                    }
                }
            }
        }
    }
    Ok(count)
}

/// Span closure of idempotents, arrows between vertices and coefficient generators.
fn check_generation(alg: &CatOAlgebra) -> Result<usize> {
    let n = alg.n();
    let d = alg.ring().rank;
    let mut gens: Vec<WordElem> = Vec::new();
    for &a in alg.vertices() {
        gens.push(alg.idempotent(a));
        for i in 0..n {
            if alg.vertex_index(a.toggle(i)).is_some() {
                gens.push(alg.word(a, a.toggle(i)));
            }
        }
        for j in 0..d {
            let mut e = vec![0i64; d];
            e[j] = 1;
            gens.push(alg.normalize(a, a, &LaurentPoly::monomial(e.clone(), Rat::from_integer(1.into()))));
            if alg.side() == super::Side::Betti {
                e[j] = -1;
                gens.push(alg.normalize(a, a, &LaurentPoly::monomial(e, Rat::from_integer(1.into()))));
            }
        }
    }
    let mut spans: HashMap<(SignVector, SignVector), EchelonBasis> = HashMap::new();
    let mut queue: VecDeque<WordElem> = VecDeque::new();
    let add = |w: WordElem, spans: &mut HashMap<(SignVector, SignVector), EchelonBasis>, queue: &mut VecDeque<WordElem>| {
        let comp = alg.component(w.source, w.target).unwrap();
        let span = spans.entry((w.source, w.target)).or_insert_with(|| EchelonBasis::new(comp.dim()));
        if span.insert(&comp.coords(&w.coeff)) {
            queue.push_back(w);
        }
    };
    for g in &gens {
        add(g.clone(), &mut spans, &mut queue);
    }
    while let Some(w) = queue.pop_front() {
        for g in gens.iter().filter(|g| g.source == w.target) {
            let p = alg.multiply(&w, g)?;
            add(p, &mut spans, &mut queue);
        }
    }
    let reached: usize = spans.values().map(EchelonBasis::rank).sum();
    if reached != alg.total_dim() {
        return Err(mismatch(format!("generators span {reached} of {} dimensions", alg.total_dim())));
    }
    Ok(reached)
}

type Path = Vec<SignVector>;

fn is_taut(p: &Path) -> bool {
    let mut seen = 0u32;
    for w in p.windows(2) {
        let bit = w[0].0 ^ w[1].0;
        if seen & bit != 0 {
            return false;
        }
        seen |= bit;
    }
    true
}

struct Rewriter<'a> {
    alg: &'a CatOAlgebra,
    feasible: HashSet<SignVector>,
    memo: HashMap<Path, LaurentPoly>,
    critical_pairs: usize,
}

impl<'a> Rewriter<'a> {
    fn new(alg: &'a CatOAlgebra) -> Self {
        Rewriter { alg, feasible: alg.feasible().iter().copied().collect(), memo: HashMap::new(), critical_pairs: 0 }
    }

    fn one(&self) -> LaurentPoly {
        LaurentPoly::one(self.alg.ring().rank)
    }

    /// All paths reachable by square moves.
    fn square_class(&self, p: &Path) -> BTreeSet<Path> {
        let mut seen = BTreeSet::new();
        seen.insert(p.clone());
        let mut queue = vec![p.clone()];
        while let Some(q) = queue.pop() {
            for k in 0..q.len().saturating_sub(2) {
                let (a, c) = (q[k], q[k + 2]);
                if a == c {
                    continue;
                }
                let alt = SignVector(a.0 ^ (q[k + 1].0 ^ c.0));
                if alt != q[k + 1] && self.feasible.contains(&alt) {
                    let mut r = q.clone();
                    r[k + 1] = alt;
                    if seen.insert(r.clone()) {
                        queue.push(r);
                    }
                }
            }
        }
        seen
    }

    /// Coefficient `c` with `path = c · (taut path)` in the presented algebra, checking
    /// that every out-and-back reduction available anywhere in the square class agrees.
    fn normal_form(&mut self, p: &Path) -> Result<LaurentPoly> {
        if let Some(c) = self.memo.get(p) {
            return Ok(c.clone());
        }
        let class = self.square_class(p);
        let mut outcomes: Vec<LaurentPoly> = Vec::new();
        for q in &class {
            for k in 0..q.len().saturating_sub(2) {
                if q[k] == q[k + 2] {
                    let factor = self.alg.crossing(q[k], q[k + 1], q[k]);
                    let mut shorter = q.clone();
                    shorter.drain(k + 1..k + 3);
                    let rest = self.normal_form(&shorter)?;
                    outcomes.push(&factor * &rest);
                }
            }
        }
        let value = if outcomes.is_empty() {
            if !is_taut(p) {
                return Err(mismatch(format!("path {} cannot be shortened by the relations", show(p))));
            }
            self.one()
        } else {
            self.critical_pairs += outcomes.len() - 1;
            if outcomes.iter().any(|o| *o != outcomes[0]) {
                return Err(mismatch(format!("rewriting of {} is not confluent", show(p))));
            }
            outcomes.swap_remove(0)
        };
        for q in class {
            self.memo.insert(q, value.clone());
        }
        Ok(value)
    }

    /// Grid-model coefficient: `∏_j χ(α_0, α_j, α_{j+1})`.
    fn grid_value(&self, p: &Path) -> LaurentPoly {
        let mut c = self.one();
        for j in 1..p.len().saturating_sub(1) {
            c = &c * &self.alg.crossing(p[0], p[j], p[j + 1]);
        }
        c
    }

    fn taut_paths(&self, a: SignVector, b: SignVector) -> Vec<Path> {
        let mut out = Vec::new();
        let mut stack = vec![vec![a]];
        while let Some(p) = stack.pop() {
            let last = *p.last().unwrap();
            if last == b {
                out.push(p);
                continue;
            }
            let diff = last.0 ^ b.0;
            for i in 0..self.alg.n() {
                if diff >> i & 1 == 1 {
                    let next = last.toggle(i);
                    if self.feasible.contains(&next) {
                        let mut q = p.clone();
                        q.push(next);
                        stack.push(q);
                    }
                }
            }
        }
        out
    }

    fn canonical_taut(&self, a: SignVector, b: SignVector) -> Result<Path> {
        let paths = self.taut_paths(a, b);
        let first = paths.iter().min().ok_or_else(|| mismatch(format!("no taut path from {a} to {b}")))?;
        let class = self.square_class(first);
        if let Some(p) = paths.iter().find(|p| !class.contains(*p)) {
            return Err(mismatch(format!("taut paths {} and {} are not related by square moves", show(first), show(p))));
        }
        Ok(first.clone())
    }

    fn check_taut_classes(&mut self) -> Result<usize> {
        let f = self.alg.feasible().to_vec();
        let mut count = 0;
        for &a in &f {
            for &b in &f {
                self.canonical_taut(a, b)?;
                count += 1;
            }
        }
        Ok(count)
    }

    fn check_paths(&mut self, max_len: usize) -> Result<usize> {
        let n = self.alg.n();
        let mut frontier: Vec<Path> = self.alg.feasible().iter().map(|&a| vec![a]).collect();
        let mut checked = 0;
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                let last = *p.last().unwrap();
                for i in 0..n {
                    let v = last.toggle(i);
                    if self.feasible.contains(&v) {
                        let mut q = p.clone();
                        q.push(v);
                        next.push(q);
                    }
                }
            }
            for p in &next {
                let nf = self.normal_form(p)?;
                if nf != self.grid_value(p) {
                    return Err(mismatch(format!(
                        "path {} rewrites to {nf} but the grid product is {}",
                        show(p),
                        self.grid_value(p)
                    )));
                }
                checked += 1;
            }
            frontier = next;
        }
        Ok(checked)
    }

    /// The ideal killed by the unbounded idempotents, computed from rewritten
    /// concatenations of taut paths, must equal each grid component ideal.
    fn check_component_ideals(&mut self, limits: GbLimits) -> Result<()> {
        let alg = self.alg;
        for &a in alg.vertices() {
            for &b in alg.vertices() {
                let mut gens = Vec::new();
                for &g in alg.unbounded() {
                    let mut p = self.canonical_taut(a, g)?;
                    let q = self.canonical_taut(g, b)?;
                    p.extend_from_slice(&q[1..]);
                    gens.push(self.normal_form(&p)?);
                }
                let comp = alg.component(a, b).unwrap();
                if let Some(g) = gens.iter().find(|g| !comp.contains(g)) {
                    return Err(mismatch(format!("relation {g} at ({a}, {b}) is not in the grid ideal")));
                }
                let presented = make_quotient(alg.side(), alg.ring().rank, &gens, limits)?;
                if let Some(g) = comp.generators.iter().find(|g| !presented.contains(g)) {
                    return Err(mismatch(format!("grid relation {g} at ({a}, {b}) is not implied by the presentation")));
                }
            }
        }
        Ok(())
    }
}

fn show(p: &Path) -> String {
    p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" → ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_betti_algebra, build_derham_algebra, Orientation};
    use crate::arrangement::validate_arrangement;
    use crate::lattice::{IntMatrix, Params, ToriSequence};

    fn lim() -> GbLimits {
        GbLimits::default()
    }

    #[test]
    fn e1_presentation() {
        let seq = ToriSequence::from_columns(2, &[vec![1, -1]]).unwrap();
        let arr = validate_arrangement(&seq, &Params::from_ints(&[1], &[-1, 0])).unwrap();
        for o in 0..4 {
            let a = build_betti_algebra(&arr, Orientation(o), lim()).unwrap();
            let r = verify_presentation(&a, lim()).unwrap();
            assert_eq!(r.generated_dim, 5);
            assert!(r.paths_checked > 0);
        }
        let d = build_derham_algebra(&arr, lim()).unwrap();
        verify_presentation(&d, lim()).unwrap();
    }

    #[test]
    fn e2_presentation() {
        let seq = ToriSequence::from_columns(3, &[vec![1, 1, 1]]).unwrap();
        let arr = validate_arrangement(&seq, &Params::from_ints(&[1], &[0, -1, -2])).unwrap();
        let a = build_betti_algebra(&arr, Orientation::default(), lim()).unwrap();
        let r = verify_presentation(&a, lim()).unwrap();
        assert_eq!(r.generated_dim, 9);
    }

    #[test]
    fn whole_torus_presentation() {
        let seq = ToriSequence::from_inclusion(IntMatrix::identity(2)).unwrap();
        let arr = validate_arrangement(&seq, &Params::from_ints(&[1, -1], &[0, 0])).unwrap();
        let a = build_betti_algebra(&arr, Orientation::default(), lim()).unwrap();
        let r = verify_presentation(&a, lim()).unwrap();
        assert_eq!((r.generated_dim, r.paths_checked), (1, 0));
    }
}
