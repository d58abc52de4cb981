//! Descriptive rendering of the matrix of fiber products `X ×_{A^n/G} X`, where
//! `X` is the disjoint union of closures of coordinate strata `A^α`.
//!
//! Entry `(α, β)` is the derived intersection `A^α ×_{A^n} A^β`: classically the
//! stratum `A^{α∩β}`, with a shifted normal bundle in the directions `[n] ∖ (α∪β)`
//! cut out by both factors.

use serde::Serialize;

use crate::arrangement::SignVector;
use crate::lattice::ToriSequence;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixEntryDescriptor {
    pub source: SignVector,
    pub target: SignVector,
    pub classical_support: SignVector,
    pub derived_directions: SignVector,
    pub residual_symmetry: usize,
    /// e.g. `N_{A^1_x}[-1]A^2`
    pub space: String,
    /// Endomorphism ring of the generator, e.g. `k[x,β_y]`
    pub ring: String,
}

fn labels(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

fn subscript(items: &[String]) -> String {
    if items.len() == 1 && items[0].len() == 1 {
        items[0].clone()
    } else {
        format!("{{{}}}", items.join(","))
    }
}

/// `0`, `A^n`, or `A^s_{labels}` for a coordinate subspace.
pub fn stratum_name(n: usize, s: SignVector) -> String {
    if s.is_empty() {
        return "0".into();
    }
    if s == SignVector::full(n) {
        return format!("A^{n}");
    }
    let l = labels(n);
    let names: Vec<String> = s.members(n).map(|i| l[i].clone()).collect();
    format!("A^{}_{}", s.len(), subscript(&names))
}

fn ring_name(n: usize, support: SignVector, derived: SignVector) -> String {
    let l = labels(n);
    let mut vars: Vec<String> = support.members(n).map(|i| l[i].clone()).collect();
    for i in derived.members(n) {
        vars.push(if n == 1 { "β".to_string() } else { format!("β_{}", l[i]) });
    }
    if vars.is_empty() {
        "k".into()
    } else {
        format!("k[{}]", vars.join(","))
    }
}

pub fn entry_descriptor(seq: &ToriSequence, a: SignVector, b: SignVector) -> MatrixEntryDescriptor {
    let n = seq.n();
    let support = a.intersection(b);
    let derived = a.union(b).complement(n);
    let space = if derived.is_empty() {
        stratum_name(n, support)
    } else {
        format!("N_{}[-1]{}", braced(&stratum_name(n, support)), stratum_name(n, support.union(derived)))
    };
    MatrixEntryDescriptor {
        source: a,
        target: b,
        classical_support: support,
        derived_directions: derived,
        residual_symmetry: seq.f_rank(),
        space,
        ring: ring_name(n, support, derived),
    }
}

fn braced(s: &str) -> String {
    if s.len() == 1 {
        s.to_string()
    } else {
        format!("{{{s}}}")
    }
}

/// Canonical row order: decreasing size, then lexicographic on sorted members.
pub fn canonical_order(n: usize, restriction: Option<&[SignVector]>) -> Vec<SignVector> {
    let mut all: Vec<SignVector> = match restriction {
        Some(r) => r.to_vec(),
        None => SignVector::all(n).collect(),
    };
    all.sort_by_key(|s| (std::cmp::Reverse(s.len()), s.members(n).collect::<Vec<_>>()));
    all.dedup();
    all
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BsideMatrix {
    pub n: usize,
    pub order: Vec<SignVector>,
    pub entries: Vec<Vec<MatrixEntryDescriptor>>,
}

pub fn render_matrix(seq: &ToriSequence, restriction: Option<&[SignVector]>) -> BsideMatrix {
    let order = canonical_order(seq.n(), restriction);
    let entries = order.iter().map(|&a| order.iter().map(|&b| entry_descriptor(seq, a, b)).collect()).collect();
    BsideMatrix { n: seq.n(), order, entries }
}

fn grid(rows: &[Vec<String>]) -> String {
    let cols = rows.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..cols).map(|j| rows.iter().map(|r| r[j].chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

impl BsideMatrix {
    pub fn to_text(&self) -> String {
        let header: Vec<String> = std::iter::once(String::new()).chain(self.order.iter().map(|v| v.to_string())).collect();
        let table = |f: &dyn Fn(&MatrixEntryDescriptor) -> String| {
            let mut rows = vec![header.clone()];
            for (a, row) in self.order.iter().zip(&self.entries) {
                rows.push(std::iter::once(a.to_string()).chain(row.iter().map(f)).collect());
            }
            grid(&rows)
        };
        format!(
            "n = {}\nspaces:\n{}rings:\n{}",
            self.n,
            table(&|e: &MatrixEntryDescriptor| e.space.clone()),
            table(&|e: &MatrixEntryDescriptor| e.ring.clone())
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(c: &[usize]) -> SignVector {
        SignVector::from_coords(c)
    }

    #[test]
    fn descriptors_n2() {
        let seq = ToriSequence::from_columns(2, &[vec![1, 1]]).unwrap();
        let e = entry_descriptor(&seq, sv(&[1]), sv(&[1]));
        assert_eq!((e.classical_support, e.derived_directions), (sv(&[1]), sv(&[2])));
        assert_eq!(e.space, "N_{A^1_x}[-1]A^2");
        assert_eq!(e.ring, "k[x,β_y]");
        let e = entry_descriptor(&seq, sv(&[1]), sv(&[2]));
        assert_eq!((e.classical_support, e.derived_directions, e.space.as_str()), (sv(&[]), sv(&[]), "0"));
        assert_eq!(entry_descriptor(&seq, sv(&[]), sv(&[])).space, "N_0[-1]A^2");
        assert_eq!(entry_descriptor(&seq, sv(&[1]), sv(&[])).space, "N_0[-1]A^1_y");
    }

    #[test]
    fn symmetric_and_diagonal() {
        let seq = ToriSequence::from_columns(3, &[vec![1, 1, 1]]).unwrap();
        for a in SignVector::all(3) {
            let d = entry_descriptor(&seq, a, a);
            assert_eq!(d.derived_directions, a.complement(3));
            for b in SignVector::all(3) {
                let (x, y) = (entry_descriptor(&seq, a, b), entry_descriptor(&seq, b, a));
                assert_eq!((x.classical_support, x.derived_directions), (y.classical_support, y.derived_directions));
                assert!(x.derived_directions.intersection(a.union(b)).is_empty());
            }
        }
    }

    #[test]
    fn order_n2() {
        assert_eq!(canonical_order(2, None), vec![sv(&[1, 2]), sv(&[1]), sv(&[2]), sv(&[])]);
    }

    #[test]
    fn n1_rings() {
        let seq = ToriSequence::from_columns(1, &[]).unwrap();
        let m = render_matrix(&seq, None);
        let rings: Vec<Vec<&str>> = m.entries.iter().map(|r| r.iter().map(|e| e.ring.as_str()).collect()).collect();
        assert_eq!(rings, vec![vec!["k[x]", "k"], vec!["k", "k[β]"]]);
    }
}
