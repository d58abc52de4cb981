//! Finite-dimensional algebras over Q: radical, simples, minimal projective
//! resolutions of simples, Ext tables and the decategorified Koszul check.
//!
//! Modules are left modules; `P_δ = A e_δ` and products read "a then b".

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{build_betti_algebra, CatOAlgebra, Orientation};
use crate::arrangement::SignVector;
use crate::error::{Error, Result};
use crate::gale::dual_pair;
use crate::lattice::{Params, ToriSequence};
use crate::linalg::{self, EchelonBasis, Rat};
use crate::ring::{GbLimits, LaurentPoly};

/// Structure constants plus a complete set of orthogonal vertex idempotents.
#[derive(Clone, Debug)]
pub struct FinDimAlgebra {
    dim: usize,
    /// `products[i][j]` lists the nonzero coordinates of `b_i · b_j`.
    products: Vec<Vec<Vec<(usize, Rat)>>>,
    vertices: Vec<SignVector>,
    idempotents: Vec<Vec<Rat>>,
    /// Source and target vertex index of each basis element.
    ends: Vec<(usize, usize)>,
}

pub fn flatten(alg: &CatOAlgebra) -> FinDimAlgebra {
    let verts = alg.vertices().to_vec();
    let nv = verts.len();
    let mut offsets = Vec::with_capacity(nv * nv);
    let mut ends = Vec::new();
    for (i, &a) in verts.iter().enumerate() {
        for (j, &b) in verts.iter().enumerate() {
            offsets.push(ends.len());
            ends.extend(std::iter::repeat_n((i, j), alg.component(a, b).unwrap().dim()));
        }
    }
    let dim = ends.len();
    let mono = |m: &[u32]| LaurentPoly::monomial(m.iter().map(|&x| x as i64).collect(), Rat::one());
    let rows: Vec<Vec<Vec<(usize, Rat)>>> = (0..dim)
        .into_par_iter()
        .map(|p| {
            let (ia, ig) = ends[p];
            let kp = p - offsets[ia * nv + ig];
            let cp = alg.component(verts[ia], verts[ig]).unwrap();
            (0..dim)
                .map(|q| {
                    let (jg, ib) = ends[q];
                    if jg != ig {
                        return Vec::new();
                    }
                    let kq = q - offsets[jg * nv + ib];
                    let cq = alg.component(verts[jg], verts[ib]).unwrap();
                    let target = alg.component(verts[ia], verts[ib]).unwrap();
                    let coeff = &(&alg.crossing(verts[ia], verts[ig], verts[ib]) * &mono(&cp.basis()[kp])) * &mono(&cq.basis()[kq]);
                    let off = offsets[ia * nv + ib];
                    target.coords(&coeff).into_iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (off + k, x)).collect()
                })
                .collect()
        })
        .collect();
    let idempotents = (0..nv)
        .map(|i| {
            let c = alg.component(verts[i], verts[i]).unwrap();
            let mut v = vec![Rat::zero(); dim];
            for (k, x) in c.coords(&LaurentPoly::one(alg.ring().rank)).into_iter().enumerate() {
                v[offsets[i * nv + i] + k] = x;
            }
            v
        })
        .collect();
    FinDimAlgebra { dim, products: rows, vertices: verts, idempotents, ends }
}

impl FinDimAlgebra {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[SignVector] {
        &self.vertices
    }

    pub fn idempotent(&self, v: usize) -> &[Rat] {
        &self.idempotents[v]
    }

    pub fn ends(&self, basis: usize) -> (usize, usize) {
        self.ends[basis]
    }

    pub fn structure_constant(&self, i: usize, j: usize) -> Vec<(usize, Rat)> {
        self.products[i][j].clone()
    }

    pub fn mul(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in &self.products[i][j] {
                    out[k.to_owned()] += &ab * c;
                }
            }
        }
        out
    }

    pub fn unit(&self) -> Vec<Rat> {
        let mut u = vec![Rat::zero(); self.dim];
        for e in &self.idempotents {
            for (x, y) in u.iter_mut().zip(e) {
                *x += y;
            }
        }
        u
    }

    fn basis_vec(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim];
        v[i] = Rat::one();
        v
    }

    /// Matrix of left multiplication by `b_i` (columns indexed by basis).
    fn left_matrix(&self, i: usize) -> Vec<Vec<Rat>> {
        let mut m = vec![vec![Rat::zero(); self.dim]; self.dim];
        for j in 0..self.dim {
            for (k, c) in &self.products[i][j] {
                m[*k][j] = c.clone();
            }
        }
        m
    }

    /// First associativity failure `(i, j, k)` on basis triples.
    pub fn check_associative(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.dim {
            let bi = self.basis_vec(i);
            for j in 0..self.dim {
                let ij = self.mul(&bi, &self.basis_vec(j));
                for k in 0..self.dim {
                    let bk = self.basis_vec(k);
                    if self.mul(&ij, &bk) != self.mul(&bi, &self.mul(&self.basis_vec(j), &bk)) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Unit, idempotent and orthogonality laws.
    pub fn check_idempotents(&self) -> bool {
        let u = self.unit();
        let unit_ok = (0..self.dim).all(|i| {
            let b = self.basis_vec(i);
            self.mul(&u, &b) == b && self.mul(&b, &u) == b
        });
        let orth = self.idempotents.iter().enumerate().all(|(i, e)| {
            self.idempotents.iter().enumerate().all(|(j, f)| {
                let p = self.mul(e, f);
                if i == j {
                    p == *e
                } else {
                    p.iter().all(Zero::is_zero)
                }
            })
        });
        unit_ok && orth
    }
}

/// Jacobson radical as the kernel of the trace form `(a, b) ↦ tr(L_{ab})`.
#[derive(Clone, Debug)]
pub struct Radical {
    pub basis: Vec<Vec<Rat>>,
    /// Smallest `k` with `rad^k = 0`.
    pub nilpotency: usize,
}

pub fn radical(a: &FinDimAlgebra) -> Result<Radical> {
    let n = a.dim;
    let traces: Vec<Rat> = (0..n)
        .map(|l| (0..n).fold(Rat::zero(), |acc, k| {
            let c = a.products[l][k].iter().find(|(i, _)| *i == k).map(|(_, c)| c.clone()).unwrap_or_else(Rat::zero);
            acc + c
        }))
        .collect();
    let form: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| a.products[i][j].iter().fold(Rat::zero(), |acc, (l, c)| acc + c * &traces[*l]))
                .collect()
        })
        .collect();
    let basis = linalg::nullspace(&form, n);
    let mut power = basis.clone();
    let mut k = 1;
    while !power.is_empty() {
        if k > n + 1 {
            return Err(Error::NonBasicAlgebra { quotient: n - basis.len(), vertices: a.vertices.len() });
        }
        let mut next = EchelonBasis::new(n);
        for p in &power {
            for r in &basis {
                next.insert(&a.mul(p, r));
            }
        }
        power = next.basis();
        k += 1;
    }
    Ok(Radical { basis, nilpotency: k })
}

/// Simple and projective dimensions per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplesAndProjectives {
    pub vertices: Vec<SignVector>,
    pub simple_dims: Vec<usize>,
    pub projective_dims: Vec<usize>,
}

pub fn simples_and_projectives(a: &FinDimAlgebra, rad: &Radical) -> Result<SimplesAndProjectives> {
    let nv = a.vertices.len();
    let quotient = a.dim - rad.basis.len();
    if quotient != nv {
        return Err(Error::NonBasicAlgebra { quotient, vertices: nv });
    }
    let projective_dims = (0..nv).map(|g| a.ends.iter().filter(|e| e.1 == g).count()).collect();
    Ok(SimplesAndProjectives { vertices: a.vertices.clone(), simple_dims: vec![1; nv], projective_dims })
}

/// A submodule of `⊕_j A e_{γ_j}`, stored as vectors in `A^m`.
struct Submodule {
    summands: usize,
    basis: Vec<Vec<Rat>>,
}

struct Resolver<'a> {
    a: &'a FinDimAlgebra,
    rad: &'a Radical,
    left: Vec<Vec<Vec<Rat>>>,
}

impl<'a> Resolver<'a> {
    fn new(a: &'a FinDimAlgebra, rad: &'a Radical) -> Self {
        let left = (0..a.dim).map(|i| a.left_matrix(i)).collect();
        Resolver { a, rad, left }
    }

    fn left_mul(&self, x: &[Rat], v: &[Rat], summands: usize) -> Vec<Rat> {
        let n = self.a.dim;
        let mut out = vec![Rat::zero(); n * summands];
        for (i, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for s in 0..summands {
                let part = linalg::mat_vec(&self.left[i], &v[s * n..(s + 1) * n]);
                for (o, p) in out[s * n..(s + 1) * n].iter_mut().zip(part) {
                    *o += c * p;
                }
            }
        }
        out
    }

    /// Generators of `K / rad K`, grouped by vertex.
    fn top(&self, k: &Submodule) -> Vec<(usize, Vec<Rat>)> {
        let width = self.a.dim * k.summands;
        let mut rad_k = EchelonBasis::new(width);
        for v in &k.basis {
            for r in &self.rad.basis {
                rad_k.insert(&self.left_mul(r, v, k.summands));
            }
        }
        let mut gens = Vec::new();
        for g in 0..self.a.vertices.len() {
            let mut span = rad_k.clone();
            for v in &k.basis {
                let ev = self.left_mul(&self.a.idempotents[g], v, k.summands);
                if span.insert(&ev) {
                    gens.push((g, ev));
                }
            }
        }
        gens
    }

    /// Kernel of the projective cover `⊕ A e_γ → K`, as a submodule.
    fn cover_kernel(&self, k: &Submodule, gens: &[(usize, Vec<Rat>)]) -> Result<Submodule> {
        let n = self.a.dim;
        let mut cols: Vec<(usize, usize)> = Vec::new();
        let mut images: Vec<Vec<Rat>> = Vec::new();
        for (s, (g, v)) in gens.iter().enumerate() {
            for b in (0..n).filter(|&b| self.a.ends[b].1 == *g) {
                cols.push((s, b));
                images.push(self.left_mul(&self.a.basis_vec(b), v, k.summands));
            }
        }
        let width = n * k.summands;
        let matrix: Vec<Vec<Rat>> = (0..width).map(|r| images.iter().map(|c| c[r].clone()).collect()).collect();
        let rank = linalg::rank(&matrix);
        if rank != k.basis.len() {
            return Err(Error::InvalidParameter(format!("projective cover not surjective: rank {rank} < {}", k.basis.len())));
        }
        let kernel = linalg::nullspace(&matrix, cols.len());
        let basis = kernel
            .into_iter()
            .map(|z| {
                let mut v = vec![Rat::zero(); n * gens.len()];
                for ((s, b), x) in cols.iter().zip(z) {
                    v[s * n + b] = x;
                }
                v
            })
            .collect();
        Ok(Submodule { summands: gens.len(), basis })
    }

    fn resolve(&self, delta: usize, max_deg: usize) -> Result<Vec<Vec<usize>>> {
        let nv = self.a.vertices.len();
        let mut degrees = Vec::new();
        let mut deg0 = vec![0; nv];
        deg0[delta] = 1;
        degrees.push(deg0);
        let e = &self.a.idempotents[delta];
        let mut syz = EchelonBasis::new(self.a.dim);
        for r in &self.rad.basis {
            syz.insert(&self.a.mul(r, e));
        }
        let mut k = Submodule { summands: 1, basis: syz.basis() };
        while !k.basis.is_empty() {
            if degrees.len() > max_deg {
                return Err(Error::DimensionBoundExceeded(self.a.vertices[delta], max_deg));
            }
            let gens = self.top(&k);
            let mut mult = vec![0; nv];
            for (g, _) in &gens {
                mult[*g] += 1;
            }
            degrees.push(mult);
            k = self.cover_kernel(&k, &gens)?;
        }
        Ok(degrees)
    }
}

/// Multiplicity of `P_γ` in each homological degree of the minimal resolution of `L_δ`.
pub fn minimal_resolution(a: &FinDimAlgebra, rad: &Radical, delta: usize, max_deg: usize) -> Result<Vec<Vec<usize>>> {
    Resolver::new(a, rad).resolve(delta, max_deg)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtTable {
    pub vertices: Vec<SignVector>,
    /// `ext[δ][γ][i] = dim Ext^i(L_δ, L_γ)`.
    pub ext: Vec<Vec<Vec<usize>>>,
    pub totals: Vec<Vec<usize>>,
    pub grand_total: usize,
    pub euler: Vec<Vec<i64>>,
    pub projective_dimensions: Vec<usize>,
}

pub fn ext_table(a: &FinDimAlgebra, max_deg: usize) -> Result<ExtTable> {
    let rad = radical(a)?;
    simples_and_projectives(a, &rad)?;
    let resolver = Resolver::new(a, &rad);
    let nv = a.vertices.len();
    let resolutions: Vec<Vec<Vec<usize>>> =
        (0..nv).into_par_iter().map(|d| resolver.resolve(d, max_deg)).collect::<Result<_>>()?;
    let ext: Vec<Vec<Vec<usize>>> =
        resolutions.iter().map(|res| (0..nv).map(|g| res.iter().map(|m| m[g]).collect()).collect()).collect();
    let totals: Vec<Vec<usize>> = ext.iter().map(|row| row.iter().map(|e| e.iter().sum()).collect()).collect();
    let euler = ext
        .iter()
        .map(|row| row.iter().map(|e| e.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum()).collect())
        .collect();
    Ok(ExtTable {
        vertices: a.vertices.clone(),
        grand_total: totals.iter().flatten().sum(),
        totals,
        ext,
        euler,
        projective_dimensions: resolutions.iter().map(|r| r.len() - 1).collect(),
    })
}

/// `euler · cartan = identity`.
pub fn euler_inverts_cartan(euler: &[Vec<i64>], cartan: &[Vec<usize>]) -> bool {
    let n = cartan.len();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let s: i64 = (0..n).map(|k| euler[i][k] * cartan[k][j] as i64).sum();
            s == i64::from(i == j)
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulDiff {
    pub primal: (SignVector, SignVector),
    pub ext_total: usize,
    pub dual_component: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulReport {
    pub primal_vertices: Vec<SignVector>,
    pub dual_vertices: Vec<SignVector>,
    pub ext_grand_total: usize,
    pub dual_total_dim: usize,
    pub ext_totals: Vec<Vec<usize>>,
    /// Dual Cartan matrix re-indexed so that entry `[δ][γ]` is the dual component at
    /// `(complement δ, complement γ)`.
    pub dual_cartan_reindexed: Vec<Vec<usize>>,
    pub vertex_bijection: bool,
    pub diffs: Vec<KoszulDiff>,
}

impl KoszulReport {
    pub fn totals_match(&self) -> bool {
        self.ext_grand_total == self.dual_total_dim
    }

    pub fn matrix_match(&self) -> bool {
        self.vertex_bijection && self.diffs.is_empty()
    }

    pub fn is_clean(&self, refined: bool) -> bool {
        self.totals_match() && (!refined || self.matrix_match())
    }
}

pub fn koszul_compare(primal: &CatOAlgebra, dual: &CatOAlgebra, max_deg: usize) -> Result<KoszulReport> {
    let ext = ext_table(&flatten(primal), max_deg)?;
    let n = primal.n();
    let (dual_cartan, dual_total) = dual.cartan_and_total();
    let pv = primal.vertices();
    let vertex_bijection = pv.len() == dual.vertices().len()
        && pv.iter().all(|v| dual.vertex_index(v.complement(n)).is_some());
    let mut reindexed = vec![vec![0; pv.len()]; pv.len()];
    let mut diffs = Vec::new();
    if vertex_bijection {
        for (i, &d) in pv.iter().enumerate() {
            for (j, &g) in pv.iter().enumerate() {
                let di = dual.vertex_index(d.complement(n)).unwrap();
                let dj = dual.vertex_index(g.complement(n)).unwrap();
                reindexed[i][j] = dual_cartan[di][dj];
                if ext.totals[i][j] != reindexed[i][j] {
                    diffs.push(KoszulDiff { primal: (d, g), ext_total: ext.totals[i][j], dual_component: reindexed[i][j] });
                }
            }
        }
    }
    Ok(KoszulReport {
        primal_vertices: pv.to_vec(),
        dual_vertices: dual.vertices().to_vec(),
        ext_grand_total: ext.grand_total,
        dual_total_dim: dual_total,
        ext_totals: ext.totals,
        dual_cartan_reindexed: reindexed,
        vertex_bijection,
        diffs,
    })
}

/// Build the Betti algebras of an instance and of its Gale dual and compare.
pub fn koszul_check(seq: &ToriSequence, params: &Params, max_deg: usize, limits: GbLimits) -> Result<KoszulReport> {
    let (primal, dual) = dual_pair(seq, params)?;
    if dual.require_generic().is_err() {
        return Err(Error::NonGenericParameter(crate::Genericity::DualNotSimple));
    }
    let a = build_betti_algebra(&primal, Orientation::default(), limits)?;
    let b = build_betti_algebra(&dual, Orientation::default(), limits)?;
    koszul_compare(&a, &b, max_deg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::validate_arrangement;
    use crate::lattice::IntMatrix;

    fn lim() -> GbLimits {
        GbLimits::default()
    }

    fn e1() -> (ToriSequence, Params) {
        (ToriSequence::from_columns(2, &[vec![1, -1]]).unwrap(), Params::from_ints(&[1], &[-1, 0]))
    }

    fn e2() -> (ToriSequence, Params) {
        (ToriSequence::from_columns(3, &[vec![1, 1, 1]]).unwrap(), Params::from_ints(&[1], &[0, -1, -2]))
    }

    fn flat(sp: &(ToriSequence, Params)) -> FinDimAlgebra {
        let arr = validate_arrangement(&sp.0, &sp.1).unwrap();
        flatten(&build_betti_algebra(&arr, Orientation::default(), lim()).unwrap())
    }

    #[test]
    fn e1_structure() {
        let a = flat(&e1());
        assert_eq!(a.dim(), 5);
        assert_eq!(a.check_associative(), None);
        assert!(a.check_idempotents());
        let rad = radical(&a).unwrap();
        assert_eq!(rad.basis.len(), 3);
        let sp = simples_and_projectives(&a, &rad).unwrap();
        assert_eq!(sp.projective_dims, vec![2, 3]);
    }

    #[test]
    fn e1_resolutions() {
        let a = flat(&e1());
        let rad = radical(&a).unwrap();
        assert_eq!(minimal_resolution(&a, &rad, 1, 4).unwrap(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(minimal_resolution(&a, &rad, 0, 4).unwrap(), vec![vec![1, 0], vec![0, 1], vec![1, 0]]);
        assert!(matches!(minimal_resolution(&a, &rad, 0, 1), Err(Error::DimensionBoundExceeded(_, 1))));
        let t = ext_table(&a, 4).unwrap();
        assert_eq!(t.totals, vec![vec![2, 1], vec![1, 1]]);
        assert_eq!(t.grand_total, 5);
        assert_eq!(t.euler, vec![vec![2, -1], vec![-1, 1]]);
        assert!(euler_inverts_cartan(&t.euler, &[vec![1, 1], vec![1, 2]]));
    }

    #[test]
    fn semisimple_case() {
        let seq = ToriSequence::from_inclusion(IntMatrix::identity(2)).unwrap();
        let a = flat(&(seq, Params::from_ints(&[1, -1], &[0, 0])));
        assert_eq!(a.dim(), 1);
        let rad = radical(&a).unwrap();
        assert!(rad.basis.is_empty());
        let t = ext_table(&a, 2).unwrap();
        assert_eq!((t.totals.clone(), t.grand_total), (vec![vec![1]], 1));
    }

    #[test]
    fn e2_structure() {
        let a = flat(&e2());
        assert_eq!(a.dim(), 9);
        let rad = radical(&a).unwrap();
        assert_eq!(rad.basis.len(), 6);
        assert_eq!(simples_and_projectives(&a, &rad).unwrap().projective_dims, vec![3, 4, 2]);
    }

    #[test]
    fn koszul_e1() {
        let (seq, p) = e1();
        let r = koszul_check(&seq, &p, 4, lim()).unwrap();
        assert_eq!((r.ext_grand_total, r.dual_total_dim), (5, 5));
        assert_eq!(r.ext_totals, vec![vec![2, 1], vec![1, 1]]);
        assert!(r.is_clean(true), "{r:?}");
    }

    #[test]
    fn koszul_e2() {
        let (seq, p) = e2();
        let r = koszul_check(&seq, &p, 6, lim()).unwrap();
        assert_eq!((r.ext_grand_total, r.dual_total_dim), (14, 14));
        assert!(r.is_clean(true), "{r:?}");
    }

    #[test]
    fn koszul_trivial_pair() {
        let seq = ToriSequence::from_columns(2, &[]).unwrap();
        let r = koszul_check(&seq, &Params::from_ints(&[], &[-1, -2]), 4, lim()).unwrap();
        assert_eq!((r.ext_grand_total, r.dual_total_dim), (1, 1));
    }
}
