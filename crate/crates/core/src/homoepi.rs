//! From a wide subcategory `W ⊆ F` to a homological epimorphism of pairs.

use std::sync::Arc;

use serde::Serialize;

use crate::derived::{is_ring_epi, restrict, tor, unit_is_iso, ProjComplex, StructModule};
use crate::error::{Error, Result};
use crate::exactfield::{self, Mat, Scalar};
use crate::higher::HomologicalPair;
use crate::modcat::{
    direct_sum, endo_algebra, ext, find_iso, hom_basis, hom_dim, is_envelope, left_approx, projective, AdditiveSubcategory,
    Approximation, ModMorphism, ProjMorphism, Representation,
};
use crate::quivalg::{AlgebraMorphism, StructureAlgebra};

/// The reflection `s = ι*(Φ_Φ)` with the envelope of each indecomposable projective.
#[derive(Clone, Debug)]
pub struct ReflectionData {
    pub w: AdditiveSubcategory,
    pub s: Representation,
    /// `envelopes[v] : P_v -> ι*(P_v)`.
    pub envelopes: Vec<Approximation>,
    /// `η : Φ_Φ -> s`, the sum of the envelopes.
    pub unit: ModMorphism,
}

pub fn reflection(pair: &HomologicalPair, w: &AdditiveSubcategory) -> Result<ReflectionData> {
    let alg = &pair.alg;
    let n = alg.num_vertices();
    let mut envelopes = Vec::with_capacity(n);
    for v in 0..n {
        let p = projective(alg, v);
        let env = left_approx(&p, w);
        let check = is_envelope(&env.map, w);
        if !check.strong {
            return Err(Error::NotStrong(format!("envelope of the projective at vertex {}", alg.quiver.vertices[v])));
        }
        envelopes.push(env);
    }
    let projs: Vec<Representation> = (0..n).map(|v| projective(alg, v)).collect();
    let (reg, _, reg_pr) = direct_sum(alg, &projs);
    let objs: Vec<Representation> = envelopes.iter().map(|e| e.object.clone()).collect();
    let (s, s_inc, _) = direct_sum(alg, &objs);
    let mut unit = ModMorphism::zero(&reg, &s);
    for v in 0..n {
        unit = unit.add(&reg_pr[v].then(&envelopes[v].map).then(&s_inc[v]));
    }
    Ok(ReflectionData { w: w.clone(), s, envelopes, unit })
}

/// A homological epimorphism of pairs built from a wide subcategory.
#[derive(Clone, Debug)]
pub struct EpiOfPairs {
    pub reflection: ReflectionData,
    pub gamma: Arc<StructureAlgebra>,
    /// Basis of `End(s)` matching the basis of `gamma`.
    pub end_basis: Vec<ModMorphism>,
    pub phi: AlgebraMorphism,
    /// `G_i = Hom_Φ(s, w_i)` as right Γ-modules.
    pub g_modules: Vec<StructModule>,
    /// Indices into the generators of `F` of the restrictions `φ_*(G_i)`.
    pub pushdown: Vec<usize>,
}

/// Left multiplication by `x` on the regular module `⊕_v P_v`.
fn left_mult_on_regular(pair: &HomologicalPair, x: &[Scalar], reg: &Representation) -> ModMorphism {
    let alg = &pair.alg;
    let verts: Vec<usize> = (0..alg.num_vertices()).collect();
    let mut f = ProjMorphism::zero(alg, &verts, &verts);
    for u in 0..verts.len() {
        for w in 0..verts.len() {
            f.entries[u][w] = alg.corner(x, u, w);
        }
    }
    f.to_module_between(alg, reg, reg)
}

fn hom_module(gamma: &Arc<StructureAlgebra>, end_basis: &[ModMorphism], s: &Representation, w: &Representation) -> StructModule {
    let basis = hom_basis(s, w);
    let flat: Vec<Vec<Scalar>> = basis.iter().map(ModMorphism::flatten).collect();
    let len = ModMorphism::zero(s, w).flat_len();
    let action = end_basis
        .iter()
        .map(|b| {
            let cols: Vec<Vec<Scalar>> = basis
                .iter()
                .map(|h| exactfield::coordinates(len, &flat, &b.then(h).flatten()).expect("composite lies in Hom(s, w)"))
                .collect();
            Mat::from_cols(basis.len(), &cols)
        })
        .collect();
    StructModule { algebra: gamma.clone(), dim: basis.len(), action }
}

pub fn construct_homoepi(pair: &HomologicalPair, w: &AdditiveSubcategory) -> Result<EpiOfPairs> {
    let alg = &pair.alg;
    let refl = reflection(pair, w)?;
    let fail = |stage: &str, detail: String| Error::ConstructionFailed { stage: stage.into(), detail };
    if refl.s.is_zero() {
        return Err(fail("reflection", "the reflection of Φ is zero".into()));
    }
    let (gamma, end_basis) = endo_algebra(&refl.s);
    let gamma = Arc::new(gamma);
    let source = Arc::new(alg.to_structure_algebra());
    let reg = refl.unit.source.clone();
    let len = refl.unit.flat_len();
    let through_unit: Vec<Vec<Scalar>> = end_basis.iter().map(|b| refl.unit.then(b).flatten()).collect();
    let mut cols = Vec::with_capacity(alg.dim());
    for i in 0..alg.dim() {
        let lam = left_mult_on_regular(pair, &alg.basis_elem(i), &reg);
        let target = lam.then(&refl.unit).flatten();
        let c = exactfield::coordinates(len, &through_unit, &target)
            .ok_or_else(|| fail("algebra map", format!("no endomorphism of s extends basis element {}", alg.basis_label(i))))?;
        cols.push(c);
    }
    let phi = AlgebraMorphism { source, target: gamma.clone(), matrix: Mat::from_cols(gamma.dim(), &cols) };
    let cert = phi.check();
    if !cert.pass {
        return Err(fail("algebra map", cert.witness.unwrap_or_default()));
    }
    let mut g_modules = Vec::new();
    let mut pushdown = Vec::new();
    for (k, wi) in w.generators.iter().enumerate() {
        let g = hom_module(&gamma, &end_basis, &refl.s, wi);
        let down = restrict(&g, alg, &phi);
        let idx = pair
            .f_index(&down)
            .ok_or_else(|| fail("pushdown", format!("restriction of G_{k} is not an indecomposable of F")))?;
        pushdown.push(idx);
        g_modules.push(g);
    }
    pushdown.sort_unstable();
    pushdown.dedup();
    Ok(EpiOfPairs { reflection: refl, gamma, end_basis, phi, g_modules, pushdown })
}

/// Exact certificate for a homological epimorphism of d-homological pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EpiCertificate {
    pub morphism: bool,
    pub ring_epi: bool,
    /// `dim Tor_i(Γ, Γ)` for `i = 1..=d`.
    pub tor: Vec<usize>,
    pub homological: bool,
    /// `Tor_d = 0` alone.
    pub pseudoflat: bool,
    pub pseudoflat_agrees: bool,
    /// Indices into the indecomposables of `mod Φ` lying in the image of `φ_*`.
    pub image: Vec<usize>,
    /// Indices into the generators of `F` of the image of `φ_*` meeting `F`.
    pub image_in_f: Vec<usize>,
    /// The image of `G` is d-cluster tilting inside the image of `φ_*`.
    pub image_pair_dct: bool,
    pub pass: bool,
    pub witness: Option<String>,
}

/// Certifies `φ` given the pushdown of `G` as indices into `F`.
pub fn certify_morphism(pair: &HomologicalPair, phi: &AlgebraMorphism, pushdown: &[usize]) -> Result<EpiCertificate> {
    let alg = &pair.alg;
    let mut c = EpiCertificate { morphism: phi.check().pass, ..Default::default() };
    c.ring_epi = c.morphism && is_ring_epi(phi);
    if !c.ring_epi {
        c.witness = Some("not a ring epimorphism".into());
        return Ok(c);
    }
    for i in 1..=pair.d {
        c.tor.push(tor(alg, phi, i)?);
    }
    c.homological = c.tor.iter().all(|&t| t == 0);
    c.pseudoflat = c.tor[pair.d - 1] == 0;
    c.pseudoflat_agrees = c.pseudoflat == c.homological;
    if let Some(i) = c.tor.iter().position(|&t| t != 0) {
        c.witness = Some(format!("Tor_{} = {}", i + 1, c.tor[i]));
    }
    for (k, m) in pair.indecs.iter().enumerate() {
        if unit_is_iso(&ProjComplex::from_module(m)?, phi) {
            c.image.push(k);
            if let Some(j) = pair.f_index(m) {
                c.image_in_f.push(j);
            }
        }
    }
    let pushed: Vec<&Representation> = pushdown.iter().map(|&j| &pair.f.generators[j]).collect();
    let mut dct = pushdown.iter().all(|j| c.image_in_f.contains(j));
    for &k in &c.image {
        let x = &pair.indecs[k];
        let inside = pushed.iter().any(|g| find_iso(std::slice::from_ref(*g), x).is_some());
        let mut right = true;
        let mut left = true;
        for g in &pushed {
            for i in 1..pair.d {
                right &= ext(g, x, i)? == 0;
                left &= ext(x, g, i)? == 0;
            }
        }
        dct &= right == inside && left == inside;
    }
    c.image_pair_dct = dct;
    if !dct && c.witness.is_none() {
        c.witness = Some("pushdown of G is not cluster tilting in the image".into());
    }
    c.pass = c.morphism && c.ring_epi && c.homological && c.pseudoflat_agrees && c.image_pair_dct;
    Ok(c)
}

/// Further checks on a constructed epimorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionChecks {
    pub epi: EpiCertificate,
    /// `dim Γ = dim End_Φ(s)` from an independent Hom computation.
    pub gamma_dim_matches: bool,
    /// Hom dimensions between the `G_i` over Γ equal those between their pushdowns.
    pub fully_faithful: bool,
    pub pushdown_in_f: bool,
    pub pushdown_is_w: bool,
    pub pass: bool,
}

pub fn certify(pair: &HomologicalPair, e: &EpiOfPairs) -> Result<ConstructionChecks> {
    let epi = certify_morphism(pair, &e.phi, &e.pushdown)?;
    let gamma_dim_matches = e.gamma.dim() == hom_dim(&e.reflection.s, &e.reflection.s);
    let gens = &e.reflection.w.generators;
    let mut fully_faithful = true;
    for (i, gi) in e.g_modules.iter().enumerate() {
        for (j, gj) in e.g_modules.iter().enumerate() {
            fully_faithful &= gi.hom_dim(gj) == hom_dim(&gens[i], &gens[j]);
        }
    }
    let pushdown_in_f = e.pushdown.iter().all(|&j| j < pair.f.generators.len());
    let mut w_idx: Vec<usize> = gens.iter().filter_map(|g| pair.f_index(g)).collect();
    w_idx.sort_unstable();
    let pushdown_is_w = w_idx == e.pushdown && e.pushdown == epi.image_in_f;
    let pass = epi.pass && gamma_dim_matches && fully_faithful && pushdown_in_f && pushdown_is_w;
    Ok(ConstructionChecks { epi, gamma_dim_matches, fully_faithful, pushdown_in_f, pushdown_is_w, pass })
}

/// Whether the construction succeeds, certifies, and pushes `G` down onto `w`.
pub fn round_trip_holds(pair: &HomologicalPair, w: &AdditiveSubcategory) -> bool {
    match construct_homoepi(pair, w) {
        Ok(e) => certify(pair, &e).map(|c| c.pass).unwrap_or(false),
        Err(_) => false,
    }
}
