//! Cluster tilting, d-kernels and d-cokernels, wide subcategories of a
//! d-cluster-tilting subcategory, and the shifted closure inside `D^b`.

use serde::Serialize;

use crate::derived::{derived_right_approx, ChainMap, DerivedSubcat, HomSpace, ProjComplex, ShiftPolicy};
use crate::error::{Error, Result};
use crate::exactfield::{self, Scalar};
use crate::modcat::{
    direct_sum, ext, global_dimension, hom_basis, indecomposables, is_injective_indec, is_projective_indec,
    left_approx, right_approx, AdditiveSubcategory, ModMorphism, Representation,
};
use crate::quivalg::AlgRef;

/// An algebra with a certified d-cluster-tilting subcategory and `gldim <= d`.
#[derive(Clone, Debug)]
pub struct HomologicalPair {
    pub alg: AlgRef,
    pub f: AdditiveSubcategory,
    pub d: usize,
    /// All indecomposable modules, in canonical order.
    pub indecs: Vec<Representation>,
    pub gldim: usize,
}

impl HomologicalPair {
    pub fn new(alg: &AlgRef, f: AdditiveSubcategory, d: usize, dim_cap: usize) -> Result<HomologicalPair> {
        if d == 0 {
            return Err(Error::Precondition("d must be at least 1".into()));
        }
        let indecs = indecomposables(alg, dim_cap)?;
        let gldim = global_dimension(alg)?;
        if gldim > d {
            return Err(Error::Precondition(format!("global dimension {gldim} exceeds d = {d}")));
        }
        let cert = is_d_cluster_tilting(&indecs, &f, d)?;
        if !cert.pass {
            return Err(Error::Precondition(format!(
                "subcategory is not {d}-cluster tilting: {}",
                cert.witness.unwrap_or_default()
            )));
        }
        Ok(HomologicalPair { alg: alg.clone(), f, d, indecs, gldim })
    }

    /// The unique d-cluster-tilting subcategory, when there is exactly one.
    pub fn from_search(alg: &AlgRef, d: usize, dim_cap: usize) -> Result<HomologicalPair> {
        let indecs = indecomposables(alg, dim_cap)?;
        let mut found = find_d_cluster_tilting(&indecs, d)?;
        if found.len() != 1 {
            return Err(Error::Precondition(format!(
                "expected one {d}-cluster-tilting subcategory, found {}",
                found.len()
            )));
        }
        HomologicalPair::new(alg, found.remove(0), d, dim_cap)
    }

    /// Index of the indecomposable `x` among the generators of `F`.
    pub fn f_index(&self, x: &Representation) -> Option<usize> {
        crate::modcat::find_iso(&self.f.generators, x)
    }

    /// The subcategory of `F` generated by the listed generator indices.
    pub fn sub(&self, indices: &[usize]) -> AdditiveSubcategory {
        AdditiveSubcategory::new(indices.iter().map(|&i| self.f.generators[i].clone()).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DctCertificate {
    pub pass: bool,
    /// `c = {X : Ext^{1..d-1}(c, X) = 0}`.
    pub right_perp_matches: bool,
    /// `c = {X : Ext^{1..d-1}(X, c) = 0}`.
    pub left_perp_matches: bool,
    /// Automatic for `add` of a single module.
    pub functorially_finite: bool,
    pub witness: Option<String>,
}

fn ext_vanishes(x: &Representation, y: &Representation, d: usize) -> Result<bool> {
    for i in 1..d {
        if ext(x, y, i)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks both perpendicular characterizations over the full list of indecomposables.
pub fn is_d_cluster_tilting(indecs: &[Representation], c: &AdditiveSubcategory, d: usize) -> Result<DctCertificate> {
    let mut right = true;
    let mut left = true;
    let mut witness = None;
    for (k, x) in indecs.iter().enumerate() {
        let inside = c.contains_indec(x);
        let mut r = true;
        let mut l = true;
        for g in &c.generators {
            r &= ext_vanishes(g, x, d)?;
            l &= ext_vanishes(x, g, d)?;
        }
        if r != inside {
            right = false;
            witness.get_or_insert(format!("indecomposable #{k} breaks the right perpendicular"));
        }
        if l != inside {
            left = false;
            witness.get_or_insert(format!("indecomposable #{k} breaks the left perpendicular"));
        }
    }
    Ok(DctCertificate { pass: right && left, right_perp_matches: right, left_perp_matches: left, functorially_finite: true, witness })
}

/// All d-cluster-tilting subcategories containing every projective and injective.
pub fn find_d_cluster_tilting(indecs: &[Representation], d: usize) -> Result<Vec<AdditiveSubcategory>> {
    let forced: Vec<usize> =
        (0..indecs.len()).filter(|&i| is_projective_indec(&indecs[i]) || is_injective_indec(&indecs[i])).collect();
    let free: Vec<usize> = (0..indecs.len()).filter(|i| !forced.contains(i)).collect();
    if free.len() > 20 {
        return Err(Error::ExceedsBound(format!("{} non-forced indecomposables", free.len())));
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << free.len()) {
        let mut idx = forced.clone();
        idx.extend(free.iter().enumerate().filter(|(b, _)| mask & (1 << b) != 0).map(|(_, &i)| i));
        idx.sort_unstable();
        let c = AdditiveSubcategory::new(idx.iter().map(|&i| indecs[i].clone()).collect());
        if is_d_cluster_tilting(indecs, &c, d)?.pass {
            out.push(c);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DiagramRole {
    DKernel,
    DCokernel,
    DExact,
}

/// `A^0 -> A^1 -> ... -> A^{d+1}`.
#[derive(Clone, Debug)]
pub struct DExactDiagram {
    pub role: DiagramRole,
    pub objects: Vec<Representation>,
    pub maps: Vec<ModMorphism>,
}

impl DExactDiagram {
    pub fn is_complex(&self) -> bool {
        self.maps.windows(2).all(|w| w[0].then(&w[1]).is_zero())
    }

    /// First test object (by index) for which the relevant Hom sequence fails to be exact.
    pub fn hom_exactness_witness(&self, test: &[Representation]) -> Option<String> {
        if !self.is_complex() {
            return Some("consecutive maps do not compose to zero".into());
        }
        let cov = matches!(self.role, DiagramRole::DKernel | DiagramRole::DExact);
        let contra = matches!(self.role, DiagramRole::DCokernel | DiagramRole::DExact);
        for (k, b) in test.iter().enumerate() {
            if cov {
                if let Some(p) = covariant_failure(b, self) {
                    return Some(format!("Hom(B#{k}, -) is not exact at position {p}"));
                }
            }
            if contra {
                if let Some(p) = contravariant_failure(b, self) {
                    return Some(format!("Hom(-, B#{k}) is not exact at position {p}"));
                }
            }
        }
        None
    }

    pub fn is_hom_exact(&self, test: &[Representation]) -> bool {
        self.hom_exactness_witness(test).is_none()
    }
}

/// Rank of `Hom(b, f)` restricted to a basis of `Hom(b, source)`.
fn post_rank(b: &Representation, f: &ModMorphism) -> (usize, usize) {
    let basis = hom_basis(b, &f.source);
    let len = ModMorphism::zero(b, &f.target).flat_len();
    let images: Vec<Vec<Scalar>> = basis.iter().map(|h| h.then(f).flatten()).collect();
    (basis.len(), exactfield::span_rank(len, &images))
}

fn pre_rank(b: &Representation, f: &ModMorphism) -> (usize, usize) {
    let basis = hom_basis(&f.target, b);
    let len = ModMorphism::zero(&f.source, b).flat_len();
    let images: Vec<Vec<Scalar>> = basis.iter().map(|h| f.then(h).flatten()).collect();
    (basis.len(), exactfield::span_rank(len, &images))
}

/// `0 -> Hom(B, A^0) -> ... -> Hom(B, A^{d+1})` exact except at the last place.
fn covariant_failure(b: &Representation, dg: &DExactDiagram) -> Option<usize> {
    let n = dg.objects.len();
    let mut in_rank = 0;
    for p in 0..n - 1 {
        let (dim, out_rank) = post_rank(b, &dg.maps[p]);
        if dim - out_rank != in_rank {
            return Some(p);
        }
        in_rank = out_rank;
    }
    None
}

/// `0 -> Hom(A^{d+1}, B) -> ... -> Hom(A^0, B)` exact except at the last place.
fn contravariant_failure(b: &Representation, dg: &DExactDiagram) -> Option<usize> {
    let n = dg.objects.len();
    let mut in_rank = 0;
    for p in (1..n).rev() {
        let (dim, out_rank) = pre_rank(b, &dg.maps[p - 1]);
        if dim - out_rank != in_rank {
            return Some(p);
        }
        in_rank = out_rank;
    }
    None
}

/// d-kernel of `f : A^d -> A^{d+1}` by iterated kernels and minimal right `F`-approximations.
pub fn d_kernel(pair: &HomologicalPair, f: &ModMorphism) -> DExactDiagram {
    let mut objects = vec![f.target.clone(), f.source.clone()];
    let mut maps = vec![f.clone()];
    let mut cur = f.clone();
    for _ in 1..pair.d {
        let (k, incl) = cur.kernel();
        let ap = right_approx(&k, &pair.f);
        let next = ap.map.then(&incl);
        objects.push(ap.object.clone());
        maps.push(next.clone());
        cur = next;
    }
    let (k, incl) = cur.kernel();
    objects.push(k);
    maps.push(incl);
    objects.reverse();
    maps.reverse();
    DExactDiagram { role: DiagramRole::DKernel, objects, maps }
}

/// d-cokernel of `f : A^0 -> A^1` by iterated cokernels and minimal left `F`-approximations.
pub fn d_cokernel(pair: &HomologicalPair, f: &ModMorphism) -> DExactDiagram {
    let mut objects = vec![f.source.clone(), f.target.clone()];
    let mut maps = vec![f.clone()];
    let mut cur = f.clone();
    for _ in 1..pair.d {
        let (c, q) = cur.cokernel();
        let ap = left_approx(&c, &pair.f);
        let next = q.then(&ap.map);
        objects.push(ap.object.clone());
        maps.push(next.clone());
        cur = next;
    }
    let (c, q) = cur.cokernel();
    objects.push(c);
    maps.push(q);
    DExactDiagram { role: DiagramRole::DCokernel, objects, maps }
}

/// Middle terms `E^1, ..., E^d` of the minimal d-extension representing `δ : X -> Σ^d Y`.
#[derive(Clone, Debug)]
pub struct DAngle {
    pub middle: Vec<Representation>,
    /// The final remainder was a module in `F` concentrated in degree 0.
    pub closed: bool,
}

/// Builds the angle `Y -> E^1 -> ... -> E^d -> X` from `δ` by a tower of triangles:
/// start from the cocone of `δ` and peel off minimal right approximations by the
/// stalks of `F` in degree 0.
pub fn build_d_angle(pair: &HomologicalPair, delta: &ChainMap) -> Result<DAngle> {
    let alg = &pair.alg;
    let stalks: Vec<ProjComplex> =
        pair.f.generators.iter().map(ProjComplex::from_module).collect::<Result<_>>()?;
    let mut cur = delta.cocone().minimize();
    let mut rev = Vec::new();
    for _ in 1..pair.d {
        let ap = derived_right_approx(&cur, &stalks);
        let parts: Vec<Representation> = ap.summands.iter().map(|&i| pair.f.generators[i].clone()).collect();
        rev.push(direct_sum(alg, &parts).0);
        cur = ap.map.cocone().minimize();
    }
    let h = cur.homology_dims();
    let closed = h.iter().all(|(p, _)| *p == 0);
    let last = if closed { cur.homology(0) } else { Representation::zero(alg) };
    let closed = closed && pair.f.contains(&last);
    rev.push(last);
    rev.reverse();
    Ok(DAngle { middle: rev, closed })
}

/// Basis of `Hom_{D^b}(X, Σ^d Y)` as chain maps between stalk resolutions.
pub fn ext_d_basis(x: &Representation, y: &Representation, d: usize) -> Result<Vec<ChainMap>> {
    let xs = ProjComplex::from_module(x)?;
    let ys = ProjComplex::from_module(y)?.shift(d as i64);
    Ok(HomSpace::new(&xs, &ys).class_maps())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WideCertificate {
    pub pass: bool,
    pub kernels: bool,
    pub cokernels: bool,
    pub extensions: bool,
    pub witnesses: Vec<String>,
}

/// Definitional wideness check of `w ⊆ F`.
pub fn is_wide_in_f(pair: &HomologicalPair, w: &AdditiveSubcategory) -> Result<WideCertificate> {
    let mut cert = WideCertificate { pass: true, kernels: true, cokernels: true, extensions: true, witnesses: Vec::new() };
    let n = w.generators.len();
    let d = pair.d;
    for a in 0..n {
        for b in 0..n {
            let (x, y) = (&w.generators[a], &w.generators[b]);
            for (k, f) in hom_basis(x, y).iter().enumerate() {
                let ker = d_kernel(pair, f);
                if !ker.objects[..d].iter().all(|o| w.contains(o)) {
                    cert.kernels = false;
                    cert.witnesses.push(format!("d-kernel of basis map {k} from #{a} to #{b} leaves w"));
                }
                let cok = d_cokernel(pair, f);
                if !cok.objects[2..].iter().all(|o| w.contains(o)) {
                    cert.cokernels = false;
                    cert.witnesses.push(format!("d-cokernel of basis map {k} from #{a} to #{b} leaves w"));
                }
            }
            for (k, delta) in ext_d_basis(x, y, d)?.iter().enumerate() {
                let angle = build_d_angle(pair, delta)?;
                if !angle.closed || !angle.middle.iter().all(|o| w.contains(o)) {
                    cert.extensions = false;
                    cert.witnesses.push(format!("d-extension {k} of #{a} by #{b} has middle terms outside w"));
                }
            }
        }
    }
    cert.pass = cert.kernels && cert.cokernels && cert.extensions;
    Ok(cert)
}

/// One candidate subset of `F` with both decision procedures.
#[derive(Clone, Debug, Serialize)]
pub struct WideCandidate {
    /// Indices into the generators of `F`.
    pub indices: Vec<usize>,
    pub definitional: bool,
    /// `None` for the zero subcategory, where no localization is built.
    pub round_trip: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WideEnumeration {
    pub wide: Vec<Vec<usize>>,
    pub candidates: Vec<WideCandidate>,
    /// Candidates on which the two procedures disagree.
    pub anomalies: Vec<Vec<usize>>,
}

/// All (nonzero unless `include_zero`) subsets of `F` that are wide, ordered by size
/// and then lexicographically by generator index.
pub fn enumerate_wide(pair: &HomologicalPair, include_zero: bool) -> Result<WideEnumeration> {
    let n = pair.f.generators.len();
    if n > 16 {
        return Err(Error::ExceedsBound(format!("{n} generators of F")));
    }
    let mut subsets: Vec<Vec<usize>> =
        (0u32..(1 << n)).map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect()).collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut wide = Vec::new();
    let mut candidates = Vec::new();
    let mut anomalies = Vec::new();
    for idx in subsets {
        if idx.is_empty() {
            if include_zero {
                wide.push(idx.clone());
                candidates.push(WideCandidate { indices: idx, definitional: true, round_trip: None });
            }
            continue;
        }
        let w = pair.sub(&idx);
        let definitional = is_wide_in_f(pair, &w)?.pass;
        let round_trip = crate::homoepi::round_trip_holds(pair, &w);
        if definitional != round_trip {
            anomalies.push(idx.clone());
        }
        if definitional && round_trip {
            wide.push(idx.clone());
        }
        candidates.push(WideCandidate { indices: idx, definitional, round_trip: Some(round_trip) });
    }
    Ok(WideEnumeration { wide, candidates, anomalies })
}

/// `add{Σ^{di} w : i ∈ Z}` inside `D^b`.
#[derive(Clone, Debug)]
pub struct OverlineSubcategory {
    pub base: AdditiveSubcategory,
    pub d: usize,
}

pub fn overline(w: &AdditiveSubcategory, d: usize) -> OverlineSubcategory {
    OverlineSubcategory { base: w.clone(), d }
}

impl OverlineSubcategory {
    pub fn to_derived(&self) -> Result<DerivedSubcat> {
        let gens = self.base.generators.iter().map(ProjComplex::from_module).collect::<Result<Vec<_>>>()?;
        Ok(DerivedSubcat::new(gens, ShiftPolicy::Multiples(self.d)))
    }

    /// Modules among `modules` whose stalk in degree 0 lies in the closure.
    pub fn degree_zero_part(&self, modules: &[Representation]) -> Result<Vec<usize>> {
        let sub = self.to_derived()?;
        let mut out = Vec::new();
        for (i, m) in modules.iter().enumerate() {
            if sub.contains_indec(&ProjComplex::from_module(m)?) {
                out.push(i);
            }
        }
        Ok(out)
    }
}
