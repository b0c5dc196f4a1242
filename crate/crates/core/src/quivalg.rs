//! Bound quiver algebras, abstract structure-constant algebras and algebra
//! morphisms between them.
//!
//! Conventions: paths compose left to right, so the path `p q` means "first
//! `p`, then `q`". Modules are right modules; the representation of a module
//! `M` puts `M e_v` at vertex `v`, and an arrow `a: v -> w` acts as the linear
//! map `M e_v -> M e_w`, `m |-> m a`. The indecomposable projective `e_v A` has
//! the paths starting at `v` as basis.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactfield::{self, is_zero_vec, zero_vec, Mat, Scalar};

/// Hard cap on the number of paths enumerated while computing a path basis.
const PATH_CAP: usize = 20_000;
/// Longest path length explored for quivers with oriented cycles.
const LENGTH_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds a quiver from vertex ids and `(name, source id, target id)` triples.
    pub fn new(vertices: Vec<String>, arrows: &[(String, String, String)]) -> Result<Quiver> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex id '{v}'")));
            }
        }
        let index = |id: &str| -> Result<usize> {
            vertices
                .iter()
                .position(|v| v == id)
                .ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex '{id}'")))
        };
        let mut out = Vec::with_capacity(arrows.len());
        for (name, s, t) in arrows {
            if out.iter().any(|a: &Arrow| &a.name == name) || vertices.contains(name) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow id '{name}'")));
            }
            out.push(Arrow { name: name.clone(), source: index(s)?, target: index(t)? });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
                .collect(),
        }
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self.num_vertices();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        seen == n
    }

    /// Every vertex has at most one incoming and at most one outgoing arrow.
    pub fn is_nakayama(&self) -> bool {
        (0..self.num_vertices()).all(|v| {
            self.arrows.iter().filter(|a| a.source == v).count() <= 1
                && self.arrows.iter().filter(|a| a.target == v).count() <= 1
        })
    }
}

/// A path in the quiver. The trivial path at `v` has no arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn label(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", q.vertices[self.source])
        } else {
            self.arrows.iter().map(|&a| q.arrows[a].name.as_str()).collect::<Vec<_>>().join("")
        }
    }
}

/// A linear combination of parallel paths of positive length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

impl Relation {
    pub fn monomial(arrows: Vec<usize>) -> Relation {
        Relation { terms: vec![(exactfield::one(), arrows)] }
    }
}

/// Input data for [`build_algebra`].
#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    pub name: Option<String>,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub d: usize,
}

/// An element of a finite-dimensional algebra, as coordinates in its basis.
pub type AlgElem = Vec<Scalar>;

/// `kQ/I` with a basis of residue classes of paths.
#[derive(Clone)]
pub struct BoundQuiverAlgebra {
    pub name: Option<String>,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub d: usize,
    basis: Vec<Path>,
    products: Vec<Vec<Vec<(usize, Scalar)>>>,
    between: Vec<Vec<Vec<usize>>>,
    /// Position of each basis element inside its `between` list.
    between_pos: Vec<usize>,
    idempotents: Vec<usize>,
    arrow_elems: Vec<usize>,
    /// Smallest `N` with `rad^N = 0` in the quotient.
    loewy_bound: usize,
    op: OnceLock<AlgRef>,
}

pub type AlgRef = Arc<BoundQuiverAlgebra>;

impl fmt::Debug for BoundQuiverAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundQuiverAlgebra")
            .field("name", &self.name)
            .field("vertices", &self.quiver.vertices)
            .field("dim", &self.dim())
            .finish()
    }
}

impl PartialEq for BoundQuiverAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver && self.basis == other.basis && self.products == other.products
    }
}

fn path_valid(q: &Quiver, arrows: &[usize]) -> bool {
    arrows.windows(2).all(|w| q.arrows[w[0]].target == q.arrows[w[1]].source)
}

fn path_of(q: &Quiver, arrows: &[usize]) -> Path {
    Path { source: q.arrows[arrows[0]].source, target: q.arrows[*arrows.last().unwrap()].target, arrows: arrows.to_vec() }
}

/// All paths of exactly `len` arrows (trivial paths for `len == 0`).
fn paths_of_length(q: &Quiver, len: usize, cap: usize) -> Result<Vec<Path>> {
    let mut cur: Vec<Path> = (0..q.num_vertices()).map(Path::trivial).collect();
    for _ in 0..len {
        let mut next = Vec::new();
        for p in &cur {
            for (ai, a) in q.arrows.iter().enumerate() {
                if a.source == p.target {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    next.push(Path { source: p.source, target: a.target, arrows });
                    if next.len() > cap {
                        return Err(Error::ExceedsBound(format!("more than {cap} paths of length {len}")));
                    }
                }
            }
        }
        cur = next;
    }
    Ok(cur)
}

/// Expands `p r q` for every path `p` into the source of `r` and `q` out of its target,
/// restricted to total length `total` when given.
fn ideal_span(
    q: &Quiver,
    rel: &Relation,
    paths_by_len: &[Vec<Path>],
    total: Option<usize>,
) -> Vec<Vec<(Scalar, Vec<usize>)>> {
    let first = &rel.terms[0].1;
    let (s, t) = (q.arrows[first[0]].source, q.arrows[*first.last().unwrap()].target);
    let rel_len = first.len();
    let mut out = Vec::new();
    for (lp, pre) in paths_by_len.iter().enumerate() {
        for p in pre.iter().filter(|p| p.target == s) {
            for (lq, post) in paths_by_len.iter().enumerate() {
                if let Some(tot) = total {
                    if lp + lq + rel_len != tot {
                        continue;
                    }
                }
                for qq in post.iter().filter(|qq| qq.source == t) {
                    let elem = rel
                        .terms
                        .iter()
                        .map(|(c, r)| {
                            let mut arrows = p.arrows.clone();
                            arrows.extend_from_slice(r);
                            arrows.extend_from_slice(&qq.arrows);
                            (c.clone(), arrows)
                        })
                        .collect();
                    out.push(elem);
                }
            }
        }
    }
    out
}

/// Reduces the span of `gens` inside the space with ordered columns `cols`.
/// Returns the normal form of every column: pivot columns are rewritten in
/// terms of the non-pivot ones, which are kept as basis.
fn reduce_columns(
    cols: &[Path],
    gens: &[Vec<(Scalar, Vec<usize>)>],
) -> (Vec<usize>, HashMap<Vec<usize>, Vec<(usize, Scalar)>>) {
    let index: HashMap<&Vec<usize>, usize> = cols.iter().enumerate().map(|(i, p)| (&p.arrows, i)).collect();
    let rows: Vec<Vec<Scalar>> = gens
        .iter()
        .map(|g| {
            let mut v = zero_vec(cols.len());
            for (c, arrows) in g {
                if let Some(&i) = index.get(arrows) {
                    v[i] += c;
                }
            }
            v
        })
        .filter(|v| !is_zero_vec(v))
        .collect();
    let mut nf: HashMap<Vec<usize>, Vec<(usize, Scalar)>> = HashMap::new();
    let (pivots, reduced) = if rows.is_empty() {
        (Vec::new(), None)
    } else {
        let r = Mat::from_rows(rows).rref();
        (r.pivots.clone(), Some(r.reduced))
    };
    let free: Vec<usize> = (0..cols.len()).filter(|c| !pivots.contains(c)).collect();
    for &f in &free {
        nf.insert(cols[f].arrows.clone(), vec![(f, Scalar::one())]);
    }
    if let Some(red) = reduced {
        for (row, &pc) in pivots.iter().enumerate() {
            let combo = free
                .iter()
                .filter(|&&f| !red.get(row, f).is_zero())
                .map(|&f| (f, -red.get(row, f).clone()))
                .collect();
            nf.insert(cols[pc].arrows.clone(), combo);
        }
    }
    (free, nf)
}

/// Builds `kQ/I` and its path basis.
///
/// Homogeneous relations are handled degree by degree, which also covers
/// quivers with oriented cycles; non-homogeneous relations require an acyclic
/// quiver so that the whole path space is finite.
pub fn build_algebra(spec: &AlgebraSpec) -> Result<BoundQuiverAlgebra> {
    let q = &spec.quiver;
    let mut relations = Vec::new();
    for (ri, rel) in spec.relations.iter().enumerate() {
        let terms: Vec<(Scalar, Vec<usize>)> = rel.terms.iter().filter(|(c, _)| !c.is_zero()).cloned().collect();
        if terms.is_empty() {
            continue;
        }
        let mut ends = None;
        for (_, arrows) in &terms {
            if arrows.is_empty() {
                return Err(Error::NonAdmissible(format!("relation {ri} contains a trivial path")));
            }
            if arrows.iter().any(|&a| a >= q.arrows.len()) {
                return Err(Error::InvalidRelation(format!("relation {ri} names an unknown arrow")));
            }
            if !path_valid(q, arrows) {
                let names: Vec<&str> = arrows.iter().map(|&a| q.arrows[a].name.as_str()).collect();
                return Err(Error::InvalidRelation(format!(
                    "relation {ri}: arrows {} do not compose",
                    names.join(",")
                )));
            }
            if arrows.len() < 2 {
                return Err(Error::NonAdmissible(format!(
                    "relation {ri} has a term of length 1 (arrow '{}'), so the ideal is not inside rad^2",
                    q.arrows[arrows[0]].name
                )));
            }
            let p = path_of(q, arrows);
            match ends {
                None => ends = Some((p.source, p.target)),
                Some(e) if e != (p.source, p.target) => {
                    return Err(Error::InvalidRelation(format!("relation {ri} mixes non-parallel paths")))
                }
                _ => {}
            }
        }
        relations.push(Relation { terms });
    }
    let homogeneous = relations.iter().all(|r| r.terms.iter().all(|(_, p)| p.len() == r.terms[0].1.len()));

    let mut basis_paths: Vec<Path> = Vec::new();
    let mut normal: HashMap<Vec<usize>, Vec<(Path, Scalar)>> = HashMap::new();
    let loewy_bound;
    if homogeneous {
        let mut by_len: Vec<Vec<Path>> = vec![paths_of_length(q, 0, PATH_CAP)?];
        let mut len = 1;
        loop {
            if len > LENGTH_CAP {
                return Err(Error::InfiniteDimensional(format!(
                    "paths of length {LENGTH_CAP} survive the relations"
                )));
            }
            let cur = paths_of_length(q, len, PATH_CAP)?;
            by_len.push(cur.clone());
            if cur.is_empty() {
                loewy_bound = len;
                break;
            }
            let gens: Vec<_> = relations.iter().flat_map(|r| ideal_span(q, r, &by_len, Some(len))).collect();
            let (free, nf) = reduce_columns(&cur, &gens);
            for (k, v) in nf {
                normal.insert(k, v.into_iter().map(|(i, c)| (cur[i].clone(), c)).collect());
            }
            if free.is_empty() {
                loewy_bound = len;
                break;
            }
            basis_paths.extend(free.iter().map(|&i| cur[i].clone()));
            len += 1;
        }
    } else {
        if !q.is_acyclic() {
            return Err(Error::NonAdmissible(
                "non-homogeneous relations on a quiver with oriented cycles are not supported".into(),
            ));
        }
        let mut by_len: Vec<Vec<Path>> = vec![paths_of_length(q, 0, PATH_CAP)?];
        loop {
            let next = paths_of_length(q, by_len.len(), PATH_CAP)?;
            if next.is_empty() {
                break;
            }
            by_len.push(next);
        }
        // longest paths first so they are the ones eliminated
        let mut cols: Vec<Path> = by_len[1..].iter().rev().flatten().cloned().collect();
        cols.sort_by(|a, b| b.len().cmp(&a.len()).then(a.arrows.cmp(&b.arrows)));
        let gens: Vec<_> = relations.iter().flat_map(|r| ideal_span(q, r, &by_len, None)).collect();
        let (free, nf) = reduce_columns(&cols, &gens);
        for (k, v) in nf {
            normal.insert(k, v.into_iter().map(|(i, c)| (cols[i].clone(), c)).collect());
        }
        basis_paths.extend(free.iter().map(|&i| cols[i].clone()));
        let mut lb = 1;
        for p in &basis_paths {
            lb = lb.max(p.len() + 1);
        }
        loewy_bound = lb;
    }

    let mut basis: Vec<Path> = (0..q.num_vertices()).map(Path::trivial).collect();
    basis_paths.sort_by(|a, b| a.len().cmp(&b.len()).then(a.arrows.cmp(&b.arrows)));
    basis.extend(basis_paths);
    let pos: HashMap<Vec<usize>, usize> =
        basis.iter().enumerate().filter(|(_, p)| !p.is_trivial()).map(|(i, p)| (p.arrows.clone(), i)).collect();
    let reduce = |arrows: &[usize]| -> Vec<(usize, Scalar)> {
        match normal.get(arrows) {
            Some(combo) => combo.iter().map(|(p, c)| (pos[&p.arrows], c.clone())).collect(),
            None => Vec::new(), // longer than every surviving path
        }
    };

    let n = basis.len();
    let mut products = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (&basis[i], &basis[j]);
            if a.target != b.source {
                continue;
            }
            products[i][j] = if a.is_trivial() {
                vec![(j, Scalar::one())]
            } else if b.is_trivial() {
                vec![(i, Scalar::one())]
            } else {
                let mut arrows = a.arrows.clone();
                arrows.extend_from_slice(&b.arrows);
                reduce(&arrows)
            };
        }
    }
    let nv = q.num_vertices();
    let mut between = vec![vec![Vec::new(); nv]; nv];
    let mut between_pos = vec![0; n];
    for (i, p) in basis.iter().enumerate() {
        between_pos[i] = between[p.source][p.target].len();
        between[p.source][p.target].push(i);
    }
    let arrow_elems = (0..q.arrows.len())
        .map(|a| {
            pos.get(&vec![a]).copied().ok_or_else(|| Error::NonAdmissible(format!("arrow '{}' lies in the ideal", q.arrows[a].name)))
        })
        .collect::<Result<Vec<_>>>()?;
    if spec.d == 0 {
        return Err(Error::Precondition("d must be at least 1".into()));
    }
    Ok(BoundQuiverAlgebra {
        name: spec.name.clone(),
        quiver: q.clone(),
        relations,
        d: spec.d,
        basis,
        products,
        between,
        between_pos,
        idempotents: (0..nv).collect(),
        arrow_elems,
        loewy_bound,
        op: OnceLock::new(),
    })
}

impl BoundQuiverAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_label(&self, i: usize) -> String {
        self.basis[i].label(&self.quiver)
    }

    pub fn loewy_bound(&self) -> usize {
        self.loewy_bound
    }

    /// Basis indices of the paths from `v` to `w`, i.e. a basis of `e_v A e_w`.
    pub fn paths_between(&self, v: usize, w: usize) -> &[usize] {
        &self.between[v][w]
    }

    /// Index of basis element `k` within `paths_between(source, target)`.
    pub fn between_position(&self, k: usize) -> usize {
        self.between_pos[k]
    }

    /// Source and target vertex of basis element `k`.
    pub fn ends(&self, k: usize) -> (usize, usize) {
        (self.basis[k].source, self.basis[k].target)
    }

    /// The opposite algebra, built once and shared.
    pub fn opposite_ref(&self) -> AlgRef {
        self.op.get_or_init(|| Arc::new(self.opposite())).clone()
    }

    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    pub fn arrow_elem(&self, a: usize) -> usize {
        self.arrow_elems[a]
    }

    pub fn is_hereditary_shape(&self) -> bool {
        self.relations.is_empty() && self.quiver.is_acyclic()
    }

    pub fn product_of_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i][j]
    }

    pub fn basis_elem(&self, i: usize) -> AlgElem {
        exactfield::unit_vec(self.dim(), i)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> AlgElem {
        let mut out = zero_vec(self.dim());
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                for (k, c) in &self.products[i][j] {
                    out[*k] += xi * yj * c;
                }
            }
        }
        out
    }

    /// Coefficient of the idempotent `e_v` in `x`; nonzero exactly when an
    /// element of `e_v A e_v` is invertible there.
    pub fn unit_part(&self, x: &[Scalar], v: usize) -> Scalar {
        x[self.idempotents[v]].clone()
    }

    /// Inverse of `x` in the local algebra `e_v A e_v`, assuming its unit part is nonzero.
    pub fn local_inverse(&self, x: &[Scalar], v: usize) -> AlgElem {
        let lambda = self.unit_part(x, v);
        assert!(!lambda.is_zero(), "element is not invertible in e_v A e_v");
        let inv_l = lambda.recip();
        let e = self.basis_elem(self.idempotents[v]);
        // x = lambda (e - r), r nilpotent; x^{-1} = lambda^{-1} (e + r + r^2 + ...)
        let r: AlgElem = e.iter().zip(x).map(|(ei, xi)| ei - xi * &inv_l).collect();
        let mut acc = e.clone();
        let mut pow = e;
        for _ in 0..self.loewy_bound + 1 {
            pow = self.mul(&pow, &r);
            if is_zero_vec(&pow) {
                break;
            }
            acc = exactfield::add_vec(&acc, &pow);
        }
        exactfield::scale_vec(&inv_l, &acc)
    }

    /// `e_v x e_w`
    pub fn corner(&self, x: &[Scalar], v: usize, w: usize) -> AlgElem {
        let mut out = zero_vec(self.dim());
        for &i in &self.between[v][w] {
            out[i] = x[i].clone();
        }
        out
    }

    /// The opposite algebra, on the opposite quiver with reversed relation paths.
    /// Arrow indices are preserved.
    pub fn opposite(&self) -> BoundQuiverAlgebra {
        let spec = AlgebraSpec {
            name: self.name.as_ref().map(|n| format!("{n}^op")),
            quiver: self.quiver.opposite(),
            relations: self
                .relations
                .iter()
                .map(|r| Relation {
                    terms: r.terms.iter().map(|(c, p)| (c.clone(), p.iter().rev().copied().collect())).collect(),
                })
                .collect(),
            d: self.d,
        };
        build_algebra(&spec).expect("opposite of an admissible presentation is admissible")
    }

    pub fn to_structure_algebra(&self) -> StructureAlgebra {
        let n = self.dim();
        let mut mult = vec![vec![zero_vec(n); n]; n];
        for i in 0..n {
            for j in 0..n {
                for (k, c) in &self.products[i][j] {
                    mult[i][j][*k] += c;
                }
            }
        }
        let mut unit = zero_vec(n);
        for &e in &self.idempotents {
            unit[e] = Scalar::one();
        }
        StructureAlgebra {
            labels: (0..n).map(|i| self.basis_label(i)).collect(),
            mult,
            unit,
        }
    }
}

/// The family `k A_n / rad^l` on the linear quiver `n -> n-1 -> ... -> 1`.
pub fn nakayama_spec(n: usize, l: usize, d: usize) -> AlgebraSpec {
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    // arrow a_i : i+1 -> i
    let arrows: Vec<(String, String, String)> =
        (1..n).map(|i| (format!("a{i}"), (i + 1).to_string(), i.to_string())).collect();
    let quiver = Quiver::new(vertices, &arrows).expect("linear quiver is valid");
    let mut relations = Vec::new();
    if l >= 1 {
        // paths of length l starting at vertex s: a_{s-1} a_{s-2} ... a_{s-l}
        for s in (l + 1)..=n {
            let arrows: Vec<usize> = (0..l).map(|k| s - 2 - k).collect();
            relations.push(Relation::monomial(arrows));
        }
    }
    AlgebraSpec { name: Some(format!("kA{n}/rad^{l}")), quiver, relations, d }
}

/// Closed-form dimension of `k A_n / rad^l`.
pub fn nakayama_dimension(n: usize, l: usize) -> usize {
    (1..=n).map(|i| l.min(n - i + 1)).sum()
}

/// A finite-dimensional algebra given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureAlgebra {
    pub labels: Vec<String>,
    /// `mult[i][j]` holds the coordinates of `b_i * b_j`.
    pub mult: Vec<Vec<AlgElem>>,
    pub unit: AlgElem,
}

impl StructureAlgebra {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> AlgElem {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                exactfield::axpy(&mut out, &c, &self.mult[i][j]);
            }
        }
        out
    }

    pub fn basis_elem(&self, i: usize) -> AlgElem {
        exactfield::unit_vec(self.dim(), i)
    }

    /// Matrix of `y |-> x y` in the basis.
    pub fn left_mult(&self, x: &[Scalar]) -> Mat {
        let n = self.dim();
        Mat::from_cols(n, &(0..n).map(|j| self.mul(x, &self.basis_elem(j))).collect::<Vec<_>>())
    }

    /// Matrix of `y |-> y x` in the basis.
    pub fn right_mult(&self, x: &[Scalar]) -> Mat {
        let n = self.dim();
        Mat::from_cols(n, &(0..n).map(|j| self.mul(&self.basis_elem(j), x)).collect::<Vec<_>>())
    }

    /// First failing basis triple for associativity, if any.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = &self.mult[i][j];
                for k in 0..n {
                    let left = self.mul(ij, &self.basis_elem(k));
                    let right = self.mul(&self.basis_elem(i), &self.mult[j][k]);
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn unit_law_holds(&self) -> bool {
        (0..self.dim()).all(|i| {
            let b = self.basis_elem(i);
            self.mul(&self.unit, &b) == b && self.mul(&b, &self.unit) == b
        })
    }

    /// Direct product `A x B` with componentwise multiplication.
    pub fn product(&self, other: &StructureAlgebra) -> StructureAlgebra {
        let (n, m) = (self.dim(), other.dim());
        let mut labels: Vec<String> = self.labels.iter().map(|l| format!("({l},0)")).collect();
        labels.extend(other.labels.iter().map(|l| format!("(0,{l})")));
        let mut mult = vec![vec![zero_vec(n + m); n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    mult[i][j][k] = self.mult[i][j][k].clone();
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    mult[n + i][n + j][n + k] = other.mult[i][j][k].clone();
                }
            }
        }
        let mut unit = self.unit.clone();
        unit.extend(other.unit.iter().cloned());
        StructureAlgebra { labels, mult, unit }
    }

    /// Quotient by the two-sided ideal generated by `gens`, together with the
    /// projection matrix (quotient dim x self dim).
    pub fn quotient(&self, gens: &[AlgElem]) -> (StructureAlgebra, Mat) {
        let n = self.dim();
        let mut span: Vec<AlgElem> = Vec::new();
        for g in gens {
            for i in 0..n {
                let left = self.mul(&self.basis_elem(i), g);
                for j in 0..n {
                    span.push(self.mul(&left, &self.basis_elem(j)));
                }
            }
        }
        let ideal = exactfield::independent_subset(n, &span);
        let keep = exactfield::complement_indices(
            n,
            &ideal,
            &(0..n).map(|i| self.basis_elem(i)).collect::<Vec<_>>(),
        );
        // coordinates of any x modulo the ideal in the kept basis elements
        let mut cols: Vec<AlgElem> = keep.iter().map(|&i| self.basis_elem(i)).collect();
        cols.extend(ideal.iter().cloned());
        let change = Mat::from_cols(n, &cols).inverse().expect("complement plus ideal spans");
        let rows: Vec<usize> = (0..keep.len()).collect();
        let all: Vec<usize> = (0..n).collect();
        let proj = change.submatrix(&rows, &all);
        let q = keep.len();
        let mut mult = vec![vec![zero_vec(q); q]; q];
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                mult[a][b] = proj.mul_vec(&self.mult[i][j]);
            }
        }
        let unit = proj.mul_vec(&self.unit);
        let labels = keep.iter().map(|&i| format!("[{}]", self.labels[i])).collect();
        (StructureAlgebra { labels, mult, unit }, proj)
    }
}

/// An algebra homomorphism given by its matrix on bases (target dim x source dim).
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    pub source: Arc<StructureAlgebra>,
    pub target: Arc<StructureAlgebra>,
    pub matrix: Mat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismCertificate {
    pub pass: bool,
    pub witness: Option<String>,
}

impl AlgebraMorphism {
    pub fn identity(a: Arc<StructureAlgebra>) -> AlgebraMorphism {
        let n = a.dim();
        AlgebraMorphism { source: a.clone(), target: a, matrix: Mat::identity(n) }
    }

    pub fn apply(&self, x: &[Scalar]) -> AlgElem {
        self.matrix.mul_vec(x)
    }

    pub fn image_of_basis(&self, i: usize) -> AlgElem {
        self.matrix.column(i)
    }

    /// `other ∘ self`
    pub fn then(&self, other: &AlgebraMorphism) -> AlgebraMorphism {
        AlgebraMorphism { source: self.source.clone(), target: other.target.clone(), matrix: &other.matrix * &self.matrix }
    }

    /// Exact check of unitality and multiplicativity on basis pairs.
    pub fn check(&self) -> MorphismCertificate {
        if self.apply(&self.source.unit) != self.target.unit {
            return MorphismCertificate { pass: false, witness: Some("unit".into()) };
        }
        let n = self.source.dim();
        for i in 0..n {
            let fi = self.image_of_basis(i);
            for j in 0..n {
                let lhs = self.apply(&self.source.mult[i][j]);
                let rhs = self.target.mul(&fi, &self.image_of_basis(j));
                if lhs != rhs {
                    return MorphismCertificate {
                        pass: false,
                        witness: Some(format!(
                            "multiplicative({},{})",
                            self.source.labels[i], self.source.labels[j]
                        )),
                    };
                }
            }
        }
        MorphismCertificate { pass: true, witness: None }
    }
}

pub fn check_morphism(phi: &AlgebraMorphism) -> MorphismCertificate {
    phi.check()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture() -> BoundQuiverAlgebra {
        build_algebra(&nakayama_spec(3, 2, 2)).unwrap()
    }

    #[test]
    fn fixture_dimension() {
        let a = fixture();
        assert_eq!(a.dim(), 5);
        assert_eq!(a.paths_between(1, 0).len(), 1); // arrow 2 -> 1
        assert_eq!(a.paths_between(2, 0).len(), 0); // killed by rad^2
    }

    #[test]
    fn ka2_dimension() {
        let a = build_algebra(&nakayama_spec(2, 0, 1)).unwrap();
        assert_eq!(a.dim(), 3);
    }

    #[test]
    fn length_one_relation_rejected() {
        let mut spec = nakayama_spec(2, 0, 1);
        spec.relations = vec![Relation::monomial(vec![0])];
        assert!(matches!(build_algebra(&spec), Err(Error::NonAdmissible(_))));
    }

    #[test]
    fn closed_form_dimension_matches_enumeration() {
        for n in 1..=5 {
            for l in 2..=n + 1 {
                let a = build_algebra(&nakayama_spec(n, l, 1)).unwrap();
                assert_eq!(a.dim(), nakayama_dimension(n, l), "n={n} l={l}");
            }
        }
    }

    #[test]
    fn loop_with_homogeneous_relation() {
        let q = Quiver::new(vec!["1".into()], &[("x".into(), "1".into(), "1".into())]).unwrap();
        let spec = AlgebraSpec { name: None, quiver: q, relations: vec![Relation::monomial(vec![0, 0, 0])], d: 1 };
        let a = build_algebra(&spec).unwrap();
        assert_eq!(a.dim(), 3);
        let x = a.basis_elem(a.arrow_elem(0));
        let x2 = a.mul(&x, &x);
        assert!(!is_zero_vec(&x2));
        assert!(is_zero_vec(&a.mul(&x2, &x)));
    }

    #[test]
    fn loop_without_relations_is_infinite() {
        let q = Quiver::new(vec!["1".into()], &[("x".into(), "1".into(), "1".into())]).unwrap();
        let spec = AlgebraSpec { name: None, quiver: q, relations: vec![], d: 1 };
        assert!(matches!(build_algebra(&spec), Err(Error::InfiniteDimensional(_))));
    }

    #[test]
    fn commutativity_relation_on_square() {
        // 1 -> 2 -> 4, 1 -> 3 -> 4 with ab - cd
        let q = Quiver::new(
            ["1", "2", "3", "4"].iter().map(|s| s.to_string()).collect(),
            &[
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "4".into()),
                ("c".into(), "1".into(), "3".into()),
                ("e".into(), "3".into(), "4".into()),
            ],
        )
        .unwrap();
        let rel = Relation { terms: vec![(exactfield::one(), vec![0, 1]), (exactfield::int(-1), vec![2, 3])] };
        let a = build_algebra(&AlgebraSpec { name: None, quiver: q, relations: vec![rel], d: 2 }).unwrap();
        assert_eq!(a.dim(), 4 + 4 + 1);
        let ab = a.mul(&a.basis_elem(a.arrow_elem(0)), &a.basis_elem(a.arrow_elem(1)));
        let ce = a.mul(&a.basis_elem(a.arrow_elem(2)), &a.basis_elem(a.arrow_elem(3)));
        assert_eq!(ab, ce);
    }

    #[test]
    fn structure_algebra_is_associative() {
        let s = fixture().to_structure_algebra();
        assert_eq!(s.associativity_witness(), None);
        assert!(s.unit_law_holds());
    }

    #[test]
    fn morphism_checks() {
        let s = Arc::new(fixture().to_structure_algebra());
        assert!(check_morphism(&AlgebraMorphism::identity(s.clone())).pass);
        let zero = AlgebraMorphism { source: s.clone(), target: s.clone(), matrix: Mat::zeros(5, 5) };
        assert_eq!(check_morphism(&zero).witness.as_deref(), Some("unit"));
    }

    #[test]
    fn opposite_swaps_arrows() {
        let a = fixture();
        let op = a.opposite();
        assert_eq!(op.dim(), a.dim());
        assert_eq!(op.quiver.arrows[0].source, a.quiver.arrows[0].target);
    }

    #[test]
    fn local_inverse() {
        let q = Quiver::new(vec!["1".into()], &[("x".into(), "1".into(), "1".into())]).unwrap();
        let spec = AlgebraSpec { name: None, quiver: q, relations: vec![Relation::monomial(vec![0, 0, 0])], d: 1 };
        let a = build_algebra(&spec).unwrap();
        let mut x = a.basis_elem(a.idempotent(0));
        x[a.arrow_elem(0)] = exactfield::int(3);
        let inv = a.local_inverse(&x, 0);
        assert_eq!(a.mul(&x, &inv), a.basis_elem(a.idempotent(0)));
    }

    #[test]
    fn quotient_by_arrow() {
        let s = fixture().to_structure_algebra();
        let (q, proj) = s.quotient(&[s.basis_elem(3)]);
        assert_eq!(q.dim(), 4);
        assert_eq!(q.associativity_witness(), None);
        assert_eq!(proj.mul_vec(&s.unit), q.unit);
    }
}
