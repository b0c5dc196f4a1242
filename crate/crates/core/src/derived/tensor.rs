use std::sync::Arc;

use crate::error::Result;
use crate::exactfield::{self, Mat, Scalar};
use crate::modcat::{ModMorphism, Representation};
use crate::quivalg::{AlgElem, AlgRef, AlgebraMorphism, StructureAlgebra};

use super::complex::ProjComplex;
use super::repcx::{RepChainMap, RepComplex};

/// A finite-dimensional right module over a structure-constant algebra.
/// `action[i]` is the matrix of `m |-> m b_i`; hence `A_{xy} = A_y A_x`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructModule {
    pub algebra: Arc<StructureAlgebra>,
    pub dim: usize,
    pub action: Vec<Mat>,
}

impl StructModule {
    pub fn regular(g: &Arc<StructureAlgebra>) -> StructModule {
        let action = (0..g.dim()).map(|i| g.right_mult(&g.basis_elem(i))).collect();
        StructModule { algebra: g.clone(), dim: g.dim(), action }
    }

    /// The right ideal `e Γ` with basis given by the columns of `basis` (in Γ coordinates).
    pub fn right_ideal(g: &Arc<StructureAlgebra>, e: &[Scalar]) -> (StructModule, Vec<AlgElem>) {
        let basis = g.left_mult(e).image_basis();
        let action = (0..g.dim())
            .map(|i| {
                let cols: Vec<Vec<Scalar>> = basis
                    .iter()
                    .map(|b| coords(&basis, &g.mul(b, &g.basis_elem(i))))
                    .collect();
                Mat::from_cols(basis.len(), &cols)
            })
            .collect();
        (StructModule { algebra: g.clone(), dim: basis.len(), action }, basis)
    }

    pub fn act(&self, x: &[Scalar]) -> Mat {
        let mut acc = Mat::zeros(self.dim, self.dim);
        for (a, c) in self.action.iter().zip(x) {
            if !num_traits::Zero::is_zero(c) {
                acc = &acc + &a.scale(c);
            }
        }
        acc
    }

    /// `Hom_Γ(M, N)`: matrices `f` with `f A^M_i = A^N_i f`.
    pub fn hom_dim(&self, other: &StructModule) -> usize {
        let (m, n) = (self.dim, other.dim);
        if m == 0 || n == 0 {
            return 0;
        }
        let mut rows = Vec::new();
        for (am, an) in self.action.iter().zip(&other.action) {
            for r in 0..n {
                for c in 0..m {
                    let mut row = exactfield::zero_vec(n * m);
                    // (f am)_{rc} - (an f)_{rc}
                    for k in 0..m {
                        row[r * m + k] += am.get(k, c);
                    }
                    for k in 0..n {
                        row[k * m + c] -= an.get(r, k);
                    }
                    if !exactfield::is_zero_vec(&row) {
                        rows.push(row);
                    }
                }
            }
        }
        if rows.is_empty() {
            return n * m;
        }
        Mat::from_rows(rows).kernel_basis().len()
    }
}

fn coords(basis: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    if basis.is_empty() {
        return Vec::new();
    }
    exactfield::coordinates(v.len(), basis, v).expect("vector lies in the span")
}

/// `X ⊗_Φ Γ` for a complex of projectives: the term `e_v Φ` becomes `φ(e_v)Γ`
/// and differentials act by left multiplication with `φ`-images.
#[derive(Clone, Debug)]
pub struct GammaComplex {
    pub lo: i64,
    /// Bases of the summands `φ(e_v)Γ` of each term, in Γ coordinates.
    pub bases: Vec<Vec<Vec<AlgElem>>>,
    pub modules: Vec<StructModule>,
    /// `diffs[k]` leaves degree `lo + k`.
    pub diffs: Vec<Mat>,
}

impl GammaComplex {
    pub fn hi(&self) -> i64 {
        self.lo + self.modules.len() as i64 - 1
    }

    pub fn homology_dims(&self) -> Vec<(i64, usize)> {
        let mut out = Vec::new();
        for k in 0..self.modules.len() {
            let dim = self.modules[k].dim;
            let out_rank = if k < self.diffs.len() { self.diffs[k].rank() } else { 0 };
            let in_rank = if k > 0 { self.diffs[k - 1].rank() } else { 0 };
            let h = dim - out_rank - in_rank;
            if h > 0 {
                out.push((self.lo + k as i64, h));
            }
        }
        out
    }

    pub fn homology_at(&self, p: i64) -> usize {
        self.homology_dims().iter().find(|(q, _)| *q == p).map_or(0, |(_, h)| *h)
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology_dims().is_empty()
    }
}

fn block_struct(g: &Arc<StructureAlgebra>, parts: &[StructModule]) -> StructModule {
    let dim = parts.iter().map(|p| p.dim).sum();
    let action = (0..g.dim()).map(|i| Mat::block_diag(&parts.iter().map(|p| &p.action[i]).collect::<Vec<_>>())).collect();
    StructModule { algebra: g.clone(), dim, action }
}

/// Derived tensor product along `phi`; `alg` is the source presentation (same basis
/// as `phi.source`).
pub fn derived_tensor(x: &ProjComplex, phi: &AlgebraMorphism) -> GammaComplex {
    let g = &phi.target;
    if x.is_zero() {
        return GammaComplex { lo: 0, bases: Vec::new(), modules: Vec::new(), diffs: Vec::new() };
    }
    let alg = x.algebra();
    let mut bases = Vec::new();
    let mut modules = Vec::new();
    for p in x.lo..=x.hi() {
        let mut b = Vec::new();
        let mut parts = Vec::new();
        for &v in x.term(p) {
            let (m, basis) = StructModule::right_ideal(g, &phi.image_of_basis(alg.idempotent(v)));
            parts.push(m);
            b.push(basis);
        }
        modules.push(block_struct(g, &parts));
        bases.push(b);
    }
    let diffs = (x.lo..x.hi())
        .map(|p| {
            let k = (p - x.lo) as usize;
            let d = x.diff(p);
            let (src, tgt) = (&bases[k], &bases[k + 1]);
            let rows: usize = tgt.iter().map(Vec::len).sum();
            let mut cols = Vec::new();
            for (i, sb) in src.iter().enumerate() {
                for b in sb {
                    let mut col = Vec::with_capacity(rows);
                    for (j, tb) in tgt.iter().enumerate() {
                        let img = g.mul(&phi.apply(&d.entries[j][i]), b);
                        col.extend(coords(tb, &img));
                    }
                    cols.push(col);
                }
            }
            Mat::from_cols(rows, &cols)
        })
        .collect();
    GammaComplex { lo: x.lo, bases, modules, diffs }
}

/// Restriction of scalars data for a Γ-module: per vertex, the basis of `M φ(e_w)`.
struct Restriction {
    rep: Representation,
    /// Inverse of the adapted basis change; rows grouped by vertex.
    to_adapted: Mat,
    offsets: Vec<usize>,
    blocks: Vec<Vec<Vec<Scalar>>>,
}

fn restriction(m: &StructModule, alg: &AlgRef, phi: &AlgebraMorphism) -> Restriction {
    let nv = alg.num_vertices();
    let blocks: Vec<Vec<Vec<Scalar>>> =
        (0..nv).map(|w| m.act(&phi.image_of_basis(alg.idempotent(w))).image_basis()).collect();
    let dims: Vec<usize> = blocks.iter().map(Vec::len).collect();
    let mut offsets = Vec::with_capacity(nv);
    let mut o = 0;
    for d in &dims {
        offsets.push(o);
        o += d;
    }
    let all: Vec<Vec<Scalar>> = blocks.iter().flatten().cloned().collect();
    let to_adapted = if m.dim == 0 {
        Mat::zeros(0, 0)
    } else {
        Mat::from_cols(m.dim, &all).inverse().expect("images of orthogonal idempotents span")
    };
    let maps = alg
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let act = m.act(&phi.image_of_basis(alg.arrow_elem(ai)));
            let cols: Vec<Vec<Scalar>> = blocks[a.source]
                .iter()
                .map(|b| {
                    let y = to_adapted.mul_vec(&act.mul_vec(b));
                    y[offsets[a.target]..offsets[a.target] + dims[a.target]].to_vec()
                })
                .collect();
            Mat::from_cols(dims[a.target], &cols)
        })
        .collect();
    let rep = Representation::new(alg.clone(), dims, maps).expect("restriction respects relations");
    Restriction { rep, to_adapted, offsets, blocks }
}

/// `φ_*`: the Φ-module underlying a Γ-module.
pub fn restrict(m: &StructModule, alg: &AlgRef, phi: &AlgebraMorphism) -> Representation {
    restriction(m, alg, phi).rep
}

fn restrict_map(f: &Mat, src: &Restriction, tgt: &Restriction) -> ModMorphism {
    let nv = src.blocks.len();
    let maps = (0..nv)
        .map(|w| {
            let d = tgt.rep.dim_at(w);
            let cols: Vec<Vec<Scalar>> = src.blocks[w]
                .iter()
                .map(|b| {
                    let y = tgt.to_adapted.mul_vec(&f.mul_vec(b));
                    y[tgt.offsets[w]..tgt.offsets[w] + d].to_vec()
                })
                .collect();
            Mat::from_cols(d, &cols)
        })
        .collect();
    ModMorphism::new(src.rep.clone(), tgt.rep.clone(), maps).expect("restriction of a Γ-linear map")
}

/// The unit `η_X : X -> φ_* (X ⊗ Γ)` together with its target.
pub fn unit_map(x: &ProjComplex, phi: &AlgebraMorphism) -> RepChainMap {
    let alg = x.algebra().clone();
    let t = derived_tensor(x, phi);
    let source = RepComplex::from_projective(x);
    if x.is_zero() {
        return RepChainMap { target: source.clone(), source, maps: Vec::new() };
    }
    let res: Vec<Restriction> = t.modules.iter().map(|m| restriction(m, &alg, phi)).collect();
    let terms: Vec<Representation> = res.iter().map(|r| r.rep.clone()).collect();
    let diffs: Vec<ModMorphism> = t.diffs.iter().enumerate().map(|(k, d)| restrict_map(d, &res[k], &res[k + 1])).collect();
    let target = RepComplex { alg: alg.clone(), lo: x.lo, terms, diffs };
    let nv = alg.num_vertices();
    let maps = (x.lo..=x.hi())
        .map(|p| {
            let k = (p - x.lo) as usize;
            let verts = x.term(p);
            let r = &res[k];
            let src = &source.terms[k];
            let blocks = (0..nv)
                .map(|w| {
                    let mut cols = Vec::new();
                    let mut sum_off = 0;
                    for (i, &v) in verts.iter().enumerate() {
                        let basis = &t.bases[k][i];
                        for &path in alg.paths_between(v, w) {
                            let img = phi.image_of_basis(path);
                            let mut full = exactfield::zero_vec(t.modules[k].dim);
                            for (c, val) in coords(basis, &img).into_iter().enumerate() {
                                full[sum_off + c] = val;
                            }
                            let y = r.to_adapted.mul_vec(&full);
                            cols.push(y[r.offsets[w]..r.offsets[w] + r.rep.dim_at(w)].to_vec());
                        }
                        sum_off += basis.len();
                    }
                    Mat::from_cols(r.rep.dim_at(w), &cols)
                })
                .collect();
            ModMorphism::new(src.clone(), r.rep.clone(), blocks).expect("unit is Φ-linear")
        })
        .collect();
    RepChainMap { source, target, maps }
}

/// Whether `η_X` is a quasi-isomorphism, i.e. `X` lies in the image of `φ_*`.
pub fn unit_is_iso(x: &ProjComplex, phi: &AlgebraMorphism) -> bool {
    unit_map(x, phi).cone().is_acyclic()
}

/// `Γ_Φ`, the restriction of the regular module.
pub fn restricted_regular(alg: &AlgRef, phi: &AlgebraMorphism) -> Representation {
    restrict(&StructModule::regular(&phi.target), alg, phi)
}

/// `dim Tor_i^Φ(Γ, Γ)` from a projective resolution of `Γ_Φ`.
pub fn tor(alg: &AlgRef, phi: &AlgebraMorphism, i: usize) -> Result<usize> {
    let res = ProjComplex::from_module(&restricted_regular(alg, phi))?;
    Ok(derived_tensor(&res, phi).homology_at(-(i as i64)))
}

/// Spanning set of the relations `gφ(x) ⊗ h - g ⊗ φ(x)h` inside `Γ ⊗_k Γ`.
fn balancing_relations(phi: &AlgebraMorphism) -> Vec<Vec<Scalar>> {
    let g = &phi.target;
    let n = g.dim();
    let mut rel = Vec::new();
    for x in 0..phi.source.dim() {
        let fx = phi.image_of_basis(x);
        for a in 0..n {
            let left = g.mul(&g.basis_elem(a), &fx);
            for b in 0..n {
                let right = g.mul(&fx, &g.basis_elem(b));
                let mut v = exactfield::zero_vec(n * n);
                for (i, c) in left.iter().enumerate() {
                    v[i * n + b] += c;
                }
                for (j, c) in right.iter().enumerate() {
                    v[a * n + j] -= c;
                }
                if !exactfield::is_zero_vec(&v) {
                    rel.push(v);
                }
            }
        }
    }
    exactfield::independent_subset(n * n, &rel)
}

/// `dim Γ ⊗_Φ Γ`.
pub fn balanced_tensor_dim(phi: &AlgebraMorphism) -> usize {
    let n = phi.target.dim();
    n * n - balancing_relations(phi).len()
}

/// Whether `Γ ⊗_Φ Γ -> Γ` is bijective.
pub fn is_ring_epi(phi: &AlgebraMorphism) -> bool {
    balanced_tensor_dim(phi) == phi.target.dim()
}

/// Whether `g ⊗ 1 = 1 ⊗ g` holds in `Γ ⊗_Φ Γ` for every basis element `g`; this is what
/// forces uniqueness of factorizations through `φ`.
pub fn balancing_identity_holds(phi: &AlgebraMorphism) -> bool {
    let g = &phi.target;
    let n = g.dim();
    let rel = balancing_relations(phi);
    (0..n).all(|k| {
        let mut v = exactfield::zero_vec(n * n);
        for (j, c) in g.unit.iter().enumerate() {
            v[k * n + j] += c;
            v[j * n + k] -= c;
        }
        exactfield::is_zero_vec(&v) || exactfield::coordinates(n * n, &rel, &v).is_some()
    })
}
