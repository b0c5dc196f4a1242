use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactfield::Scalar;
use crate::modcat::{proj_resolution, proj_sum, ModMorphism, ProjMorphism, Representation};
use crate::quivalg::AlgRef;

/// A bounded complex of finitely generated projectives, cohomologically graded.
///
/// `terms[k]` lists the vertices of the indecomposable projective summands in
/// degree `lo + k`, and `diffs[k]` is the differential out of that degree.
#[derive(Clone)]
pub struct ProjComplex {
    alg: AlgRef,
    pub lo: i64,
    pub terms: Vec<Vec<usize>>,
    pub diffs: Vec<ProjMorphism>,
}

impl fmt::Debug for ProjComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjComplex(lo={}, terms={:?})", self.lo, self.terms)
    }
}

impl PartialEq for ProjComplex {
    fn eq(&self, other: &Self) -> bool {
        self.lo == other.lo && self.terms == other.terms && self.diffs == other.diffs
    }
}

impl ProjComplex {
    /// Builds and trims; the caller guarantees `d ∘ d = 0`.
    pub fn new(alg: &AlgRef, lo: i64, terms: Vec<Vec<usize>>, diffs: Vec<ProjMorphism>) -> ProjComplex {
        let mut c = ProjComplex { alg: alg.clone(), lo, terms, diffs };
        c.trim();
        c
    }

    pub fn zero(alg: &AlgRef) -> ProjComplex {
        ProjComplex { alg: alg.clone(), lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    /// `⊕ P_v` concentrated in degree `deg`.
    pub fn stalk_projective(alg: &AlgRef, verts: &[usize], deg: i64) -> ProjComplex {
        ProjComplex::new(alg, deg, vec![verts.to_vec()], Vec::new())
    }

    /// The minimal projective resolution of `m`, ending in degree 0.
    pub fn from_module(m: &Representation) -> Result<ProjComplex> {
        let alg = m.algebra();
        if m.is_zero() {
            return Ok(ProjComplex::zero(alg));
        }
        let res = proj_resolution(m)?;
        let n = res.terms.len();
        let terms: Vec<Vec<usize>> = res.terms.iter().rev().cloned().collect();
        let diffs: Vec<ProjMorphism> = res.diffs.iter().rev().cloned().collect();
        Ok(ProjComplex::new(alg, -(n as i64 - 1), terms, diffs))
    }

    pub fn algebra(&self) -> &AlgRef {
        &self.alg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Top degree; equal to `lo - 1` for the zero complex.
    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn term(&self, p: i64) -> &[usize] {
        if p < self.lo || p > self.hi() {
            &[]
        } else {
            &self.terms[(p - self.lo) as usize]
        }
    }

    /// The differential `X^p -> X^{p+1}`.
    pub fn diff(&self, p: i64) -> ProjMorphism {
        if p >= self.lo && p < self.hi() {
            self.diffs[(p - self.lo) as usize].clone()
        } else {
            ProjMorphism::zero(&self.alg, self.term(p), self.term(p + 1))
        }
    }

    pub fn module_term(&self, p: i64) -> Representation {
        proj_sum(&self.alg, self.term(p))
    }

    pub fn module_diff(&self, p: i64) -> ModMorphism {
        self.diff(p).to_module(&self.alg)
    }

    /// Total dimension of all terms.
    pub fn dim(&self) -> usize {
        self.terms.iter().flatten().map(|&v| self.projective_dim(v)).sum()
    }

    fn projective_dim(&self, v: usize) -> usize {
        (0..self.alg.num_vertices()).map(|w| self.alg.paths_between(v, w).len()).sum()
    }

    pub fn num_summands(&self) -> usize {
        self.terms.iter().map(Vec::len).sum()
    }

    /// Drops empty terms at both ends.
    fn trim(&mut self) {
        while self.terms.last().is_some_and(Vec::is_empty) {
            self.terms.pop();
            self.diffs.pop();
        }
        while self.terms.first().is_some_and(Vec::is_empty) {
            self.terms.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        if self.terms.is_empty() {
            self.lo = 0;
            self.diffs.clear();
        }
        self.diffs.truncate(self.terms.len().saturating_sub(1));
    }

    pub fn is_complex(&self) -> bool {
        self.diffs.windows(2).all(|w| w[0].then(&self.alg, &w[1]).is_zero())
    }

    pub fn is_minimal(&self) -> bool {
        self.diffs.iter().all(|d| d.is_radical(&self.alg))
    }

    /// `Σ^n`: `(Σ^n X)^p = X^{p+n}`, differential scaled by `(-1)^n`.
    pub fn shift(&self, n: i64) -> ProjComplex {
        let diffs = if n % 2 == 0 { self.diffs.clone() } else { self.diffs.iter().map(ProjMorphism::neg).collect() };
        ProjComplex { alg: self.alg.clone(), lo: self.lo - n, terms: self.terms.clone(), diffs }
    }

    /// Shift placing the top nonzero degree at 0.
    pub fn normalized(&self) -> ProjComplex {
        if self.is_zero() {
            return self.clone();
        }
        self.shift(self.hi())
    }

    /// `H^p` as a module.
    pub fn homology(&self, p: i64) -> Representation {
        let (_, incl) = self.module_diff(p).kernel();
        let into = self.module_diff(p - 1);
        let into_kernel = incl.factor_through_mono(&into).expect("d ∘ d = 0");
        into_kernel.cokernel().0
    }

    /// Dimension vectors of the nonzero homology, by degree.
    pub fn homology_dims(&self) -> Vec<(i64, Vec<usize>)> {
        let mut out = Vec::new();
        for p in self.lo..=self.hi() {
            let out_d = self.module_diff(p);
            let in_d = self.module_diff(p - 1);
            let dims: Vec<usize> = (0..self.alg.num_vertices())
                .map(|v| out_d.map_at(v).cols() - out_d.map_at(v).rank() - in_d.map_at(v).rank())
                .collect();
            if dims.iter().any(|&d| d > 0) {
                out.push((p, dims));
            }
        }
        out
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology_dims().is_empty()
    }

    /// Removes contractible summands `P --u--> P` with `u` invertible, by Gaussian elimination.
    pub fn minimize(&self) -> ProjComplex {
        let alg = self.alg.clone();
        let mut c = self.clone();
        'outer: loop {
            for k in 0..c.diffs.len() {
                let d = &c.diffs[k];
                for (j, &t) in d.target.iter().enumerate() {
                    for (i, &s) in d.source.iter().enumerate() {
                        if s == t && !alg.unit_part(&d.entries[j][i], s).is_zero() {
                            c.eliminate(k, j, i);
                            continue 'outer;
                        }
                    }
                }
            }
            break;
        }
        c.trim();
        c
    }

    fn eliminate(&mut self, k: usize, j: usize, i: usize) {
        let alg = self.alg.clone();
        let d = &self.diffs[k];
        let v = d.source[i];
        let uinv = alg.local_inverse(&d.entries[j][i], v);
        let rows: Vec<usize> = (0..d.target.len()).filter(|&r| r != j).collect();
        let cols: Vec<usize> = (0..d.source.len()).filter(|&c| c != i).collect();
        let mut nd = d.select(&rows, &cols);
        for (rr, &r) in rows.iter().enumerate() {
            if crate::exactfield::is_zero_vec(&d.entries[r][i]) {
                continue;
            }
            let left = alg.mul(&d.entries[r][i], &uinv);
            for (cc, &cidx) in cols.iter().enumerate() {
                let corr = alg.mul(&left, &d.entries[j][cidx]);
                nd.entries[rr][cc] = crate::exactfield::sub_vec(&nd.entries[rr][cc], &corr);
            }
        }
        self.diffs[k] = nd;
        if k > 0 {
            let prev = &self.diffs[k - 1];
            let keep: Vec<usize> = (0..prev.target.len()).filter(|&r| r != i).collect();
            let all: Vec<usize> = (0..prev.source.len()).collect();
            self.diffs[k - 1] = prev.select(&keep, &all);
        }
        if k + 1 < self.diffs.len() {
            let next = &self.diffs[k + 1];
            let keep: Vec<usize> = (0..next.source.len()).filter(|&c| c != j).collect();
            let all: Vec<usize> = (0..next.target.len()).collect();
            self.diffs[k + 1] = next.select(&all, &keep);
        }
        self.terms[k].remove(i);
        self.terms[k + 1].remove(j);
    }

    /// Termwise direct sum.
    pub fn direct_sum(alg: &AlgRef, parts: &[ProjComplex]) -> ProjComplex {
        let nonzero: Vec<&ProjComplex> = parts.iter().filter(|p| !p.is_zero()).collect();
        if nonzero.is_empty() {
            return ProjComplex::zero(alg);
        }
        let lo = nonzero.iter().map(|p| p.lo).min().unwrap();
        let hi = nonzero.iter().map(|p| p.hi()).max().unwrap();
        let terms: Vec<Vec<usize>> =
            (lo..=hi).map(|p| nonzero.iter().flat_map(|c| c.term(p).iter().copied()).collect()).collect();
        let diffs = (lo..hi)
            .map(|p| {
                let mut d = ProjMorphism::zero(alg, &terms[(p - lo) as usize], &terms[(p - lo + 1) as usize]);
                let (mut r0, mut c0) = (0, 0);
                for c in &nonzero {
                    d.put(r0, c0, &c.diff(p));
                    r0 += c.term(p + 1).len();
                    c0 += c.term(p).len();
                }
                d
            })
            .collect();
        ProjComplex::new(alg, lo, terms, diffs)
    }
}

/// A chain map of degree 0; `maps[k]` is the component in degree `source.lo + k`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: ProjComplex,
    pub target: ProjComplex,
    pub maps: Vec<ProjMorphism>,
}

impl ChainMap {
    pub fn zero(source: &ProjComplex, target: &ProjComplex) -> ChainMap {
        let alg = source.algebra();
        let maps = (source.lo..=source.hi()).map(|p| ProjMorphism::zero(alg, source.term(p), target.term(p))).collect();
        ChainMap { source: source.clone(), target: target.clone(), maps }
    }

    pub fn identity(x: &ProjComplex) -> ChainMap {
        let alg = x.algebra();
        let maps = (x.lo..=x.hi()).map(|p| ProjMorphism::identity(alg, x.term(p))).collect();
        ChainMap { source: x.clone(), target: x.clone(), maps }
    }

    pub fn component(&self, p: i64) -> ProjMorphism {
        if p < self.source.lo || p > self.source.hi() {
            ProjMorphism::zero(self.source.algebra(), self.source.term(p), self.target.term(p))
        } else {
            self.maps[(p - self.source.lo) as usize].clone()
        }
    }

    pub fn is_chain_map(&self) -> bool {
        let alg = self.source.algebra();
        (self.source.lo - 1..=self.source.hi()).all(|p| {
            let lhs = self.component(p).then(alg, &self.target.diff(p));
            let rhs = self.source.diff(p).then(alg, &self.component(p + 1));
            lhs == rhs
        })
    }

    /// `other ∘ self`
    pub fn then(&self, other: &ChainMap) -> ChainMap {
        let alg = self.source.algebra();
        let maps = (self.source.lo..=self.source.hi()).map(|p| self.component(p).then(alg, &other.component(p))).collect();
        ChainMap { source: self.source.clone(), target: other.target.clone(), maps }
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        let maps = self.maps.iter().zip(&other.maps).map(|(f, g)| f.add(g)).collect();
        ChainMap { source: self.source.clone(), target: self.target.clone(), maps }
    }

    pub fn scale(&self, c: &Scalar) -> ChainMap {
        ChainMap { source: self.source.clone(), target: self.target.clone(), maps: self.maps.iter().map(|f| f.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(ProjMorphism::is_zero)
    }

    /// Trace of the induced maps on the tops of the terms, weighted by the
    /// dimensions of the projectives. Vanishes on null-homotopic endomorphisms of
    /// minimal complexes.
    pub fn top_trace(&self) -> Scalar {
        let alg = self.source.algebra();
        self.maps.iter().fold(Scalar::zero(), |acc, f| acc + f.trace(alg))
    }

    /// `cone^p = X^{p+1} ⊕ Y^p` with `d = [[-d_X, 0], [f, d_Y]]`.
    pub fn cone(&self) -> ProjComplex {
        let (x, y) = (&self.source, &self.target);
        let alg = x.algebra();
        if x.is_zero() {
            return y.clone();
        }
        let lo = if y.is_zero() { x.lo - 1 } else { (x.lo - 1).min(y.lo) };
        let hi = if y.is_zero() { x.hi() - 1 } else { (x.hi() - 1).max(y.hi()) };
        let term = |p: i64| -> Vec<usize> { x.term(p + 1).iter().chain(y.term(p)).copied().collect() };
        let terms: Vec<Vec<usize>> = (lo..=hi).map(term).collect();
        let diffs = (lo..hi)
            .map(|p| {
                let mut d = ProjMorphism::zero(alg, &terms[(p - lo) as usize], &terms[(p - lo + 1) as usize]);
                let nx_next = x.term(p + 2).len();
                let nx = x.term(p + 1).len();
                d.put(0, 0, &x.diff(p + 1).neg());
                d.put(nx_next, 0, &self.component(p + 1));
                d.put(nx_next, nx, &y.diff(p));
                d
            })
            .collect();
        ProjComplex::new(alg, lo, terms, diffs)
    }

    /// `Σ^{-1} cone(f)`, so that `cocone -> X -> Y` is part of a triangle.
    pub fn cocone(&self) -> ProjComplex {
        self.cone().shift(-1)
    }
}

pub(crate) fn cap_error(what: &str, cap: usize) -> Error {
    Error::ExceedsBound(format!("{what} exceeds the cap {cap}"))
}
