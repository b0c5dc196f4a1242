use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactfield::{self, is_zero_vec, unit_vec, zero_vec, Mat, Scalar};
use crate::quivalg::{AlgElem, AlgRef};

/// A finite-dimensional right module, stored as a representation of the quiver.
///
/// `maps[a]` is the `dims[target] x dims[source]` matrix of arrow `a`, acting on
/// column vectors.
#[derive(Clone)]
pub struct Representation {
    alg: AlgRef,
    dims: Vec<usize>,
    maps: Vec<Mat>,
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep{:?}", self.dims)
    }
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims && self.maps == other.maps
    }
}

impl Representation {
    pub fn new(alg: AlgRef, dims: Vec<usize>, maps: Vec<Mat>) -> Result<Representation> {
        let q = &alg.quiver;
        if dims.len() != q.num_vertices() || maps.len() != q.arrows.len() {
            return Err(Error::Precondition("representation shape does not match the quiver".into()));
        }
        for (a, m) in q.arrows.iter().zip(&maps) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] {
                return Err(Error::Precondition(format!("arrow '{}' has a matrix of the wrong size", a.name)));
            }
        }
        let rep = Representation { alg: alg.clone(), dims, maps };
        for (ri, rel) in alg.relations.iter().enumerate() {
            let (s, t) = {
                let p = &rel.terms[0].1;
                (q.arrows[p[0]].source, q.arrows[*p.last().unwrap()].target)
            };
            let mut acc = Mat::zeros(rep.dims[t], rep.dims[s]);
            for (c, p) in &rel.terms {
                acc = &acc + &rep.arrow_path_matrix(p).scale(c);
            }
            if !acc.is_zero() {
                return Err(Error::Precondition(format!("relation {ri} does not vanish on the representation")));
            }
        }
        Ok(rep)
    }

    /// Builds without re-checking relations; callers guarantee they hold.
    pub(crate) fn new_unchecked(alg: AlgRef, dims: Vec<usize>, maps: Vec<Mat>) -> Representation {
        debug_assert_eq!(maps.len(), alg.quiver.arrows.len());
        Representation { alg, dims, maps }
    }

    pub fn zero(alg: &AlgRef) -> Representation {
        let q = &alg.quiver;
        Representation {
            alg: alg.clone(),
            dims: vec![0; q.num_vertices()],
            maps: q.arrows.iter().map(|_| Mat::zeros(0, 0)).collect(),
        }
    }

    pub fn algebra(&self) -> &AlgRef {
        &self.alg
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn offset(&self, v: usize) -> usize {
        self.dims[..v].iter().sum()
    }

    pub fn arrow_map(&self, a: usize) -> &Mat {
        &self.maps[a]
    }

    pub fn arrow_maps(&self) -> &[Mat] {
        &self.maps
    }

    fn arrow_path_matrix(&self, arrows: &[usize]) -> Mat {
        let q = &self.alg.quiver;
        let mut m = Mat::identity(self.dims[q.arrows[arrows[0]].source]);
        for &a in arrows {
            m = &self.maps[a] * &m;
        }
        m
    }

    /// Matrix of `m |-> m p` for the basis path `k`, from the source to the target vertex.
    pub fn path_matrix(&self, k: usize) -> Mat {
        let p = &self.alg.basis()[k];
        if p.is_trivial() {
            Mat::identity(self.dims[p.source])
        } else {
            self.arrow_path_matrix(&p.arrows)
        }
    }

    /// Matrix of `m |-> m x` on the total space.
    pub fn act(&self, x: &[Scalar]) -> Mat {
        let n = self.total_dim();
        let mut out = Mat::zeros(n, n);
        for (k, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (s, t) = self.alg.ends(k);
            if self.dims[s] == 0 || self.dims[t] == 0 {
                continue;
            }
            let block = self.path_matrix(k).scale(c);
            let (r0, c0) = (self.offset(t), self.offset(s));
            for i in 0..block.rows() {
                for j in 0..block.cols() {
                    *out.at_mut(r0 + i, c0 + j) += block.get(i, j);
                }
            }
        }
        out
    }

    /// The block of `act(x)` from vertex `v` to vertex `w`.
    pub fn act_block(&self, x: &[Scalar], v: usize, w: usize) -> Mat {
        let mut out = Mat::zeros(self.dims[w], self.dims[v]);
        for &k in self.alg.paths_between(v, w) {
            if !x[k].is_zero() {
                out = &out + &self.path_matrix(k).scale(&x[k]);
            }
        }
        out
    }

    pub fn dim_vector(&self) -> Vec<usize> {
        self.dims.clone()
    }

    /// Restricts a total-space vector to vertex `v`.
    pub fn component(&self, vec: &[Scalar], v: usize) -> Vec<Scalar> {
        let o = self.offset(v);
        vec[o..o + self.dims[v]].to_vec()
    }

    /// The dual `D M`, a representation of the opposite algebra `target`.
    pub fn dual(&self, target: &AlgRef) -> Representation {
        debug_assert_eq!(target.quiver, self.alg.quiver.opposite());
        Representation {
            alg: target.clone(),
            dims: self.dims.clone(),
            maps: self.maps.iter().map(Mat::transpose).collect(),
        }
    }

    /// Canonical sort key: support interval, dimension vector, matrix entries.
    pub fn sort_key(&self) -> (usize, usize, Vec<usize>, Vec<Scalar>) {
        let support: Vec<usize> = (0..self.dims.len()).filter(|&v| self.dims[v] > 0).collect();
        let lo = support.first().copied().unwrap_or(usize::MAX);
        let hi = support.last().copied().unwrap_or(usize::MAX);
        let entries = self.maps.iter().flat_map(|m| m.entries().iter().cloned()).collect();
        (lo, hi, self.dims.clone(), entries)
    }

    pub fn canonical_cmp(&self, other: &Representation) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }

    /// `sum_a im(M_a)` at every vertex.
    pub fn radical_spaces(&self) -> Vec<Vec<Vec<Scalar>>> {
        let q = &self.alg.quiver;
        (0..self.dims.len())
            .map(|w| {
                let mut gens = Vec::new();
                for (ai, a) in q.arrows.iter().enumerate() {
                    if a.target == w {
                        gens.extend(self.maps[ai].image_basis());
                    }
                }
                exactfield::independent_subset(self.dims[w], &gens)
            })
            .collect()
    }

    /// `intersection of ker(M_a)` over arrows leaving each vertex.
    pub fn socle_spaces(&self) -> Vec<Vec<Vec<Scalar>>> {
        let q = &self.alg.quiver;
        (0..self.dims.len())
            .map(|v| {
                let outgoing: Vec<&Mat> =
                    q.arrows.iter().enumerate().filter(|(_, a)| a.source == v).map(|(i, _)| &self.maps[i]).collect();
                if outgoing.is_empty() {
                    return (0..self.dims[v]).map(|i| exactfield::unit_vec(self.dims[v], i)).collect();
                }
                Mat::vstack(&outgoing).kernel_basis()
            })
            .collect()
    }

    pub fn top_dims(&self) -> Vec<usize> {
        self.radical_spaces().iter().zip(&self.dims).map(|(r, d)| d - r.len()).collect()
    }

    pub fn socle_dims(&self) -> Vec<usize> {
        self.socle_spaces().iter().map(Vec::len).collect()
    }

    /// Submodule with the given per-vertex bases, which must be closed under the arrows.
    pub fn submodule(&self, bases: &[Vec<Vec<Scalar>>]) -> (Representation, ModMorphism) {
        let q = &self.alg.quiver;
        let incl: Vec<Mat> =
            (0..self.dims.len()).map(|v| Mat::from_cols(self.dims[v], &bases[v])).collect();
        let maps = q
            .arrows
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let cols: Vec<Vec<Scalar>> = bases[a.source]
                    .iter()
                    .map(|b| {
                        let img = self.maps[ai].mul_vec(b);
                        exactfield::coordinates(self.dims[a.target], &bases[a.target], &img)
                            .expect("subspace closed under arrows")
                    })
                    .collect();
                Mat::from_cols(bases[a.target].len(), &cols)
            })
            .collect();
        let sub = Representation::new_unchecked(self.alg.clone(), bases.iter().map(Vec::len).collect(), maps);
        let mor = ModMorphism::new_unchecked(sub.clone(), self.clone(), incl);
        (sub, mor)
    }

    /// Quotient by a submodule given by per-vertex bases.
    pub fn quotient(&self, bases: &[Vec<Vec<Scalar>>]) -> (Representation, ModMorphism) {
        let q = &self.alg.quiver;
        let mut projs = Vec::new();
        let mut sections = Vec::new();
        for v in 0..self.dims.len() {
            let n = self.dims[v];
            let units: Vec<Vec<Scalar>> = (0..n).map(|i| exactfield::unit_vec(n, i)).collect();
            let keep = exactfield::complement_indices(n, &bases[v], &units);
            let mut cols: Vec<Vec<Scalar>> = keep.iter().map(|&i| units[i].clone()).collect();
            cols.extend(bases[v].iter().cloned());
            let change = if n == 0 { Mat::zeros(0, 0) } else { Mat::from_cols(n, &cols).inverse().expect("basis") };
            let rows: Vec<usize> = (0..keep.len()).collect();
            let all: Vec<usize> = (0..n).collect();
            projs.push(change.submatrix(&rows, &all));
            sections.push(Mat::from_cols(n, &keep.iter().map(|&i| units[i].clone()).collect::<Vec<_>>()));
        }
        let maps = q
            .arrows
            .iter()
            .enumerate()
            .map(|(ai, a)| &(&projs[a.target] * &self.maps[ai]) * &sections[a.source])
            .collect();
        let quo = Representation::new_unchecked(self.alg.clone(), projs.iter().map(Mat::rows).collect(), maps);
        let mor = ModMorphism::new_unchecked(self.clone(), quo.clone(), projs);
        (quo, mor)
    }

    /// Smallest submodule containing the given vertex-homogeneous vectors.
    pub fn generated_submodule_spaces(&self, gens: &[(usize, Vec<Scalar>)]) -> Vec<Vec<Vec<Scalar>>> {
        let mut spaces: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); self.dims.len()];
        for (v, g) in gens {
            for k in 0..self.alg.dim() {
                let (s, t) = self.alg.ends(k);
                if s == *v {
                    spaces[t].push(self.path_matrix(k).mul_vec(g));
                }
            }
        }
        spaces.iter().enumerate().map(|(v, s)| exactfield::independent_subset(self.dims[v], s)).collect()
    }

    pub fn radical(&self) -> (Representation, ModMorphism) {
        self.submodule(&self.radical_spaces())
    }

    pub fn top_quotient(&self) -> (Representation, ModMorphism) {
        self.quotient(&self.radical_spaces())
    }

    pub fn socle(&self) -> (Representation, ModMorphism) {
        self.submodule(&self.socle_spaces())
    }

    pub fn mod_socle(&self) -> (Representation, ModMorphism) {
        self.quotient(&self.socle_spaces())
    }

    pub fn identity(&self) -> ModMorphism {
        ModMorphism::new_unchecked(self.clone(), self.clone(), self.dims.iter().map(|&d| Mat::identity(d)).collect())
    }
}

/// A module homomorphism, one matrix per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct ModMorphism {
    pub source: Representation,
    pub target: Representation,
    maps: Vec<Mat>,
}

impl ModMorphism {
    pub fn new(source: Representation, target: Representation, maps: Vec<Mat>) -> Result<ModMorphism> {
        let f = ModMorphism { source, target, maps };
        for (v, m) in f.maps.iter().enumerate() {
            if m.rows() != f.target.dims[v] || m.cols() != f.source.dims[v] {
                return Err(Error::Precondition(format!("vertex {v}: block has the wrong size")));
            }
        }
        if !f.commutes() {
            return Err(Error::Precondition("maps do not commute with the arrows".into()));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: Representation, target: Representation, maps: Vec<Mat>) -> ModMorphism {
        ModMorphism { source, target, maps }
    }

    pub fn zero(source: &Representation, target: &Representation) -> ModMorphism {
        let maps = (0..source.dims.len()).map(|v| Mat::zeros(target.dims[v], source.dims[v])).collect();
        ModMorphism { source: source.clone(), target: target.clone(), maps }
    }

    /// Builds from a matrix on total spaces; off-vertex blocks are ignored.
    pub fn from_total(source: &Representation, target: &Representation, m: &Mat) -> ModMorphism {
        let maps = (0..source.dims.len())
            .map(|v| {
                let rows: Vec<usize> = (target.offset(v)..target.offset(v) + target.dims[v]).collect();
                let cols: Vec<usize> = (source.offset(v)..source.offset(v) + source.dims[v]).collect();
                m.submatrix(&rows, &cols)
            })
            .collect();
        ModMorphism { source: source.clone(), target: target.clone(), maps }
    }

    /// Inverse of [`ModMorphism::flatten`].
    pub fn from_flat(source: &Representation, target: &Representation, v: &[Scalar]) -> ModMorphism {
        let mut maps = Vec::new();
        let mut pos = 0;
        for w in 0..source.dims.len() {
            let (r, c) = (target.dims[w], source.dims[w]);
            let mut m = Mat::zeros(r, c);
            for i in 0..r {
                for j in 0..c {
                    m.set(i, j, v[pos].clone());
                    pos += 1;
                }
            }
            maps.push(m);
        }
        ModMorphism { source: source.clone(), target: target.clone(), maps }
    }

    pub fn map_at(&self, v: usize) -> &Mat {
        &self.maps[v]
    }

    pub fn maps(&self) -> &[Mat] {
        &self.maps
    }

    pub fn commutes(&self) -> bool {
        let q = &self.source.alg.quiver;
        q.arrows.iter().enumerate().all(|(ai, a)| {
            &self.target.maps[ai] * &self.maps[a.source] == &self.maps[a.target] * &self.source.maps[ai]
        })
    }

    pub fn flat_len(&self) -> usize {
        self.maps.iter().map(|m| m.rows() * m.cols()).sum()
    }

    pub fn flatten(&self) -> Vec<Scalar> {
        self.maps.iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }

    pub fn total_matrix(&self) -> Mat {
        Mat::block_diag(&self.maps.iter().collect::<Vec<_>>())
    }

    /// `other ∘ self`
    pub fn then(&self, other: &ModMorphism) -> ModMorphism {
        let maps = self.maps.iter().zip(&other.maps).map(|(f, g)| g * f).collect();
        ModMorphism { source: self.source.clone(), target: other.target.clone(), maps }
    }

    pub fn add(&self, other: &ModMorphism) -> ModMorphism {
        let maps = self.maps.iter().zip(&other.maps).map(|(f, g)| f + g).collect();
        ModMorphism { source: self.source.clone(), target: self.target.clone(), maps }
    }

    pub fn scale(&self, c: &Scalar) -> ModMorphism {
        ModMorphism { source: self.source.clone(), target: self.target.clone(), maps: self.maps.iter().map(|m| m.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Mat::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.maps.iter().map(Mat::rank).sum()
    }

    pub fn is_mono(&self) -> bool {
        self.rank() == self.source.total_dim()
    }

    pub fn is_epi(&self) -> bool {
        self.rank() == self.target.total_dim()
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    pub fn trace(&self) -> Scalar {
        self.maps.iter().map(Mat::trace).fold(Scalar::zero(), |a, b| a + b)
    }

    pub fn inverse(&self) -> Option<ModMorphism> {
        let maps = self.maps.iter().map(|m| if m.rows() == 0 && m.cols() == 0 { Some(Mat::zeros(0, 0)) } else { m.inverse() }).collect::<Option<Vec<_>>>()?;
        Some(ModMorphism { source: self.target.clone(), target: self.source.clone(), maps })
    }

    pub fn kernel(&self) -> (Representation, ModMorphism) {
        let bases: Vec<Vec<Vec<Scalar>>> = self.maps.iter().map(Mat::kernel_basis).collect();
        self.source.submodule(&bases)
    }

    pub fn image_spaces(&self) -> Vec<Vec<Vec<Scalar>>> {
        self.maps.iter().map(Mat::image_basis).collect()
    }

    pub fn image(&self) -> (Representation, ModMorphism) {
        self.target.submodule(&self.image_spaces())
    }

    pub fn cokernel(&self) -> (Representation, ModMorphism) {
        self.target.quotient(&self.image_spaces())
    }

    /// Solves `self ∘ x = g` for `x` when `self` is a monomorphism and `g` lands in its image.
    pub fn factor_through_mono(&self, g: &ModMorphism) -> Option<ModMorphism> {
        let mut maps = Vec::new();
        for v in 0..self.maps.len() {
            let cols: Option<Vec<Vec<Scalar>>> = (0..g.maps[v].cols())
                .map(|j| {
                    let col = g.maps[v].column(j);
                    if self.maps[v].cols() == 0 {
                        return if is_zero_vec(&col) { Some(Vec::new()) } else { None };
                    }
                    self.maps[v].solve(&col)
                })
                .collect();
            maps.push(Mat::from_cols(self.source.dims[v], &cols?));
        }
        Some(ModMorphism { source: g.source.clone(), target: self.source.clone(), maps })
    }

    /// Solves `x ∘ self = g` for `x` when `self` is an epimorphism and `g` vanishes on its kernel.
    pub fn factor_through_epi(&self, g: &ModMorphism) -> Option<ModMorphism> {
        let mut maps = Vec::new();
        for v in 0..self.maps.len() {
            // x_v self_v = g_v  <=>  self_v^T x_v^T = g_v^T
            let st = self.maps[v].transpose();
            let gt = g.maps[v].transpose();
            let cols: Option<Vec<Vec<Scalar>>> = (0..gt.cols())
                .map(|j| {
                    let col = gt.column(j);
                    if st.cols() == 0 {
                        return if is_zero_vec(&col) { Some(Vec::new()) } else { None };
                    }
                    st.solve(&col)
                })
                .collect();
            maps.push(Mat::from_cols(self.target.dims[v], &cols?).transpose());
        }
        Some(ModMorphism { source: self.target.clone(), target: g.target.clone(), maps })
    }
}

/// Direct sum with its injections and projections.
pub fn direct_sum(alg: &AlgRef, parts: &[Representation]) -> (Representation, Vec<ModMorphism>, Vec<ModMorphism>) {
    let q = &alg.quiver;
    let nv = q.num_vertices();
    let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
    let maps = q
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, _)| Mat::block_diag(&parts.iter().map(|p| &p.maps[ai]).collect::<Vec<_>>()))
        .collect();
    let sum = Representation::new_unchecked(alg.clone(), dims.clone(), maps);
    let mut incs = Vec::new();
    let mut projs = Vec::new();
    let mut offs = vec![0usize; nv];
    for p in parts {
        let mut inc = Vec::new();
        let mut pr = Vec::new();
        for v in 0..nv {
            let mut m = Mat::zeros(dims[v], p.dims[v]);
            for i in 0..p.dims[v] {
                m.set(offs[v] + i, i, Scalar::one());
            }
            pr.push(m.transpose());
            inc.push(m);
            offs[v] += p.dims[v];
        }
        incs.push(ModMorphism::new_unchecked(p.clone(), sum.clone(), inc));
        projs.push(ModMorphism::new_unchecked(sum.clone(), p.clone(), pr));
    }
    (sum, incs, projs)
}

/// `[f_1 ... f_n] : ⊕ X_i -> Y`
pub fn row_morphism(sum: &Representation, target: &Representation, parts: &[ModMorphism]) -> ModMorphism {
    let nv = sum.dims.len();
    let maps = (0..nv)
        .map(|v| {
            if parts.is_empty() {
                Mat::zeros(target.dims[v], 0)
            } else {
                Mat::hstack(&parts.iter().map(|f| &f.maps[v]).collect::<Vec<_>>())
            }
        })
        .collect();
    ModMorphism::new_unchecked(sum.clone(), target.clone(), maps)
}

/// `[f_1; ...; f_n] : X -> ⊕ Y_i`
pub fn column_morphism(source: &Representation, sum: &Representation, parts: &[ModMorphism]) -> ModMorphism {
    let nv = sum.dims.len();
    let maps = (0..nv)
        .map(|v| {
            if parts.is_empty() {
                Mat::zeros(0, source.dims[v])
            } else {
                Mat::vstack(&parts.iter().map(|f| &f.maps[v]).collect::<Vec<_>>())
            }
        })
        .collect();
    ModMorphism::new_unchecked(source.clone(), sum.clone(), maps)
}

/// `⊕ P_{v_i}`; at vertex `w` the basis is the concatenation of the paths from each `v_i` to `w`.
pub fn proj_sum(alg: &AlgRef, verts: &[usize]) -> Representation {
    let q = &alg.quiver;
    let nv = q.num_vertices();
    let dims: Vec<usize> = (0..nv).map(|w| verts.iter().map(|&v| alg.paths_between(v, w).len()).sum()).collect();
    let maps = q
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let (w, u) = (a.source, a.target);
            let mut m = Mat::zeros(dims[u], dims[w]);
            let (mut ro, mut co) = (0, 0);
            for &v in verts {
                let src = alg.paths_between(v, w);
                for (ci, &p) in src.iter().enumerate() {
                    for (k, c) in alg.product_of_basis(p, alg.arrow_elem(ai)) {
                        *m.at_mut(ro + alg.between_position(*k), co + ci) += c;
                    }
                }
                ro += alg.paths_between(v, u).len();
                co += src.len();
            }
            m
        })
        .collect();
    Representation::new_unchecked(alg.clone(), dims, maps)
}

/// `⊕ I_{v_i}` with `I_v = D(A e_v)`; at vertex `w` the basis is dual to the paths from `w` to each `v_i`.
pub fn inj_sum(alg: &AlgRef, verts: &[usize]) -> Representation {
    let q = &alg.quiver;
    let nv = q.num_vertices();
    let dims: Vec<usize> = (0..nv).map(|w| verts.iter().map(|&v| alg.paths_between(w, v).len()).sum()).collect();
    let maps = q
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let (w, u) = (a.source, a.target);
            let mut m = Mat::zeros(dims[u], dims[w]);
            let (mut ro, mut co) = (0, 0);
            for &v in verts {
                // entry [p*][z*] = coeff_z(a p) for p: u -> v, z: w -> v
                let rows = alg.paths_between(u, v);
                for (ri, &p) in rows.iter().enumerate() {
                    for (k, c) in alg.product_of_basis(alg.arrow_elem(ai), p) {
                        *m.at_mut(ro + ri, co + alg.between_position(*k)) += c;
                    }
                }
                ro += rows.len();
                co += alg.paths_between(w, v).len();
            }
            m
        })
        .collect();
    Representation::new_unchecked(alg.clone(), dims, maps)
}

pub fn projective(alg: &AlgRef, v: usize) -> Representation {
    proj_sum(alg, &[v])
}

pub fn injective(alg: &AlgRef, v: usize) -> Representation {
    inj_sum(alg, &[v])
}

pub fn simple(alg: &AlgRef, v: usize) -> Representation {
    let q = &alg.quiver;
    let mut dims = vec![0; q.num_vertices()];
    dims[v] = 1;
    let maps = q.arrows.iter().map(|a| Mat::zeros(dims[a.target], dims[a.source])).collect();
    Representation::new_unchecked(alg.clone(), dims, maps)
}

/// A morphism between sums of indecomposable projectives. `entries[j][i]` lies in
/// `e_{target_j} A e_{source_i}`; the generator of summand `i` maps to
/// `sum_j e_{target_j} * entries[j][i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjMorphism {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub entries: Vec<Vec<AlgElem>>,
}

impl ProjMorphism {
    pub fn zero(alg: &AlgRef, source: &[usize], target: &[usize]) -> ProjMorphism {
        ProjMorphism {
            source: source.to_vec(),
            target: target.to_vec(),
            entries: vec![vec![zero_vec(alg.dim()); source.len()]; target.len()],
        }
    }

    pub fn identity(alg: &AlgRef, verts: &[usize]) -> ProjMorphism {
        let mut f = ProjMorphism::zero(alg, verts, verts);
        for (i, &v) in verts.iter().enumerate() {
            f.entries[i][i] = alg.basis_elem(alg.idempotent(v));
        }
        f
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|row| row.iter().all(|x| is_zero_vec(x)))
    }

    /// `other ∘ self`
    pub fn then(&self, alg: &AlgRef, other: &ProjMorphism) -> ProjMorphism {
        let mut out = ProjMorphism::zero(alg, &self.source, &other.target);
        for k in 0..other.target.len() {
            for i in 0..self.source.len() {
                let mut acc = zero_vec(alg.dim());
                for j in 0..self.target.len() {
                    if is_zero_vec(&other.entries[k][j]) || is_zero_vec(&self.entries[j][i]) {
                        continue;
                    }
                    acc = exactfield::add_vec(&acc, &alg.mul(&other.entries[k][j], &self.entries[j][i]));
                }
                out.entries[k][i] = acc;
            }
        }
        out
    }

    pub fn add(&self, other: &ProjMorphism) -> ProjMorphism {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(r, s)| r.iter().zip(s).map(|(x, y)| exactfield::add_vec(x, y)).collect())
            .collect();
        ProjMorphism { source: self.source.clone(), target: self.target.clone(), entries }
    }

    pub fn scale(&self, c: &Scalar) -> ProjMorphism {
        let entries = self.entries.iter().map(|r| r.iter().map(|x| exactfield::scale_vec(c, x)).collect()).collect();
        ProjMorphism { source: self.source.clone(), target: self.target.clone(), entries }
    }

    pub fn neg(&self) -> ProjMorphism {
        self.scale(&-Scalar::one())
    }

    /// Writes `block` into the entries starting at target row `r0` and source column `c0`.
    pub fn put(&mut self, r0: usize, c0: usize, block: &ProjMorphism) {
        for (j, row) in block.entries.iter().enumerate() {
            for (i, x) in row.iter().enumerate() {
                self.entries[r0 + j][c0 + i] = x.clone();
            }
        }
    }

    /// Restriction to the given target rows and source columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> ProjMorphism {
        ProjMorphism {
            source: cols.iter().map(|&i| self.source[i]).collect(),
            target: rows.iter().map(|&j| self.target[j]).collect(),
            entries: rows.iter().map(|&j| cols.iter().map(|&i| self.entries[j][i].clone()).collect()).collect(),
        }
    }

    /// The morphism sending generator `i` to `images[i]`, a vector of
    /// `proj_sum(target)` at vertex `source[i]`.
    pub fn from_images(alg: &AlgRef, source: &[usize], target: &[usize], images: &[Vec<Scalar>]) -> ProjMorphism {
        let mut f = ProjMorphism::zero(alg, source, target);
        for (i, (&u, img)) in source.iter().zip(images).enumerate() {
            for (j, x) in elements_of_vector(alg, target, u, img).into_iter().enumerate() {
                f.entries[j][i] = x;
            }
        }
        f
    }

    /// True when every entry lies in the radical (no idempotent coefficients).
    pub fn is_radical(&self, alg: &AlgRef) -> bool {
        self.entries.iter().enumerate().all(|(j, row)| {
            row.iter().enumerate().all(|(i, x)| self.source[i] != self.target[j] || alg.unit_part(x, self.source[i]).is_zero())
        })
    }

    /// The induced module map between `proj_sum(source)` and `proj_sum(target)`.
    pub fn to_module(&self, alg: &AlgRef) -> ModMorphism {
        let src = proj_sum(alg, &self.source);
        let tgt = proj_sum(alg, &self.target);
        self.to_module_between(alg, &src, &tgt)
    }

    pub fn to_module_between(&self, alg: &AlgRef, src: &Representation, tgt: &Representation) -> ModMorphism {
        let nv = alg.num_vertices();
        let maps = (0..nv)
            .map(|u| {
                let mut m = Mat::zeros(tgt.dim_at(u), src.dim_at(u));
                let mut co = 0;
                for (i, &s) in self.source.iter().enumerate() {
                    let cols = alg.paths_between(s, u);
                    let mut ro = 0;
                    for (j, &t) in self.target.iter().enumerate() {
                        let x = &self.entries[j][i];
                        if !is_zero_vec(x) {
                            for (ci, &p) in cols.iter().enumerate() {
                                let prod = alg.mul(x, &alg.basis_elem(p));
                                for &k in alg.paths_between(t, u) {
                                    if !prod[k].is_zero() {
                                        *m.at_mut(ro + alg.between_position(k), co + ci) += &prod[k];
                                    }
                                }
                            }
                        }
                        ro += alg.paths_between(t, u).len();
                    }
                    co += cols.len();
                }
                m
            })
            .collect();
        ModMorphism::new_unchecked(src.clone(), tgt.clone(), maps)
    }

    /// The image under the Nakayama functor, `⊕ I_{source} -> ⊕ I_{target}`.
    pub fn nakayama(&self, alg: &AlgRef) -> ModMorphism {
        let src = inj_sum(alg, &self.source);
        let tgt = inj_sum(alg, &self.target);
        let nv = alg.num_vertices();
        let maps = (0..nv)
            .map(|u| {
                let mut m = Mat::zeros(tgt.dim_at(u), src.dim_at(u));
                let mut co = 0;
                for (i, &s) in self.source.iter().enumerate() {
                    let mut ro = 0;
                    for (j, &t) in self.target.iter().enumerate() {
                        let x = &self.entries[j][i];
                        // entry [p*][z*] = coeff_z(p x), p: u -> t, z: u -> s
                        for (ri, &p) in alg.paths_between(u, t).iter().enumerate() {
                            if is_zero_vec(x) {
                                break;
                            }
                            let prod = alg.mul(&alg.basis_elem(p), x);
                            for &z in alg.paths_between(u, s) {
                                if !prod[z].is_zero() {
                                    *m.at_mut(ro + ri, co + alg.between_position(z)) += &prod[z];
                                }
                            }
                        }
                        ro += alg.paths_between(u, t).len();
                    }
                    co += alg.paths_between(u, s).len();
                }
                m
            })
            .collect();
        ModMorphism::new_unchecked(src, tgt, maps)
    }

    /// Linear trace of the induced map on `⊕ P_v` for an endomorphism; only the
    /// idempotent coefficients on the diagonal contribute.
    pub fn trace(&self, alg: &AlgRef) -> Scalar {
        let mut t = Scalar::zero();
        for (i, &v) in self.source.iter().enumerate() {
            let dim_p: usize = (0..alg.num_vertices()).map(|w| alg.paths_between(v, w).len()).sum();
            t += alg.unit_part(&self.entries[i][i], v) * exactfield::int(dim_p as i64);
        }
        t
    }
}

/// The morphism `proj_sum(verts) -> target` sending generator `i` to `gens[i]`,
/// a vector of `target` at vertex `verts[i]`.
pub fn from_generators(alg: &AlgRef, verts: &[usize], target: &Representation, gens: &[Vec<Scalar>]) -> ModMorphism {
    let src = proj_sum(alg, verts);
    let maps = (0..alg.num_vertices())
        .map(|w| {
            let mut cols = Vec::new();
            for (&v, g) in verts.iter().zip(gens) {
                for &k in alg.paths_between(v, w) {
                    cols.push(target.path_matrix(k).mul_vec(g));
                }
            }
            Mat::from_cols(target.dim_at(w), &cols)
        })
        .collect();
    ModMorphism::new_unchecked(src, target.clone(), maps)
}

/// Vector of the generator of summand `i` of `proj_sum(verts)`, at vertex `verts[i]`.
pub fn generator_vector(alg: &AlgRef, verts: &[usize], i: usize) -> Vec<Scalar> {
    let u = verts[i];
    let len: usize = verts.iter().map(|&v| alg.paths_between(v, u).len()).sum();
    let off: usize = verts[..i].iter().map(|&v| alg.paths_between(v, u).len()).sum();
    unit_vec(len, off + alg.between_position(alg.idempotent(u)))
}

/// Reads a vector of `proj_sum(verts)` at vertex `w` as the column of algebra
/// elements `x_i ∈ e_{v_i} A e_w`.
pub fn elements_of_vector(alg: &AlgRef, verts: &[usize], w: usize, vec: &[Scalar]) -> Vec<AlgElem> {
    let mut out = Vec::with_capacity(verts.len());
    let mut o = 0;
    for &v in verts {
        let mut x = zero_vec(alg.dim());
        for (pi, &p) in alg.paths_between(v, w).iter().enumerate() {
            x[p] = vec[o + pi].clone();
        }
        o += alg.paths_between(v, w).len();
        out.push(x);
    }
    out
}
