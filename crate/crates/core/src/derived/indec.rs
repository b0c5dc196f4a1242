use serde::Serialize;

use crate::error::{Error, Result};
use crate::modcat::{global_dimension, indecomposables, ProjMorphism};
use crate::quivalg::{AlgRef, AlgebraMorphism};

use super::approx::{derived_left_approx, derived_right_approx, DerivedApprox};
use super::complex::ProjComplex;
use super::homs::{hom_window, hyper_hom, is_indecomposable, same_orbit};
use super::repcx::proj_replace;
use super::tensor::{derived_tensor, is_ring_epi, unit_is_iso, unit_map};

/// Default bound on the total dimension of complexes visited by the search.
pub const DERIVED_DIM_CAP: usize = 32;

/// Where an orbit representative came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Origin {
    /// Resolution of the module with this index in the canonical module list.
    Module(usize),
    /// Found by the bounded search over minimal complexes.
    Search,
}

/// One representative per shift orbit, normalized so that its top degree is 0.
#[derive(Clone, Debug)]
pub struct DerivedIndec {
    pub complex: ProjComplex,
    pub origin: Origin,
}

/// Shift orbits of indecomposables of `D^b(mod A)` for Nakayama algebras.
///
/// Module stalks come first, in canonical module order. The remaining orbits come
/// from minimal complexes with at most `window` terms, multiplicity-free terms and
/// differential entries that are single radical paths, whose homology is spread
/// over at least two degrees.
pub fn indec_derived(alg: &AlgRef, window: usize, dim_cap: usize) -> Result<Vec<DerivedIndec>> {
    if !alg.quiver.is_nakayama() {
        return Err(Error::UnsupportedAlgebraClass(
            "derived indecomposables are only enumerated for Nakayama algebras".into(),
        ));
    }
    global_dimension(alg)?;
    let mut out = Vec::new();
    for (i, m) in indecomposables(alg, dim_cap)?.iter().enumerate() {
        out.push(DerivedIndec { complex: ProjComplex::from_module(m)?, origin: Origin::Module(i) });
    }
    let n = alg.num_vertices();
    let proj_dim: Vec<usize> = (0..n).map(|v| (0..n).map(|w| alg.paths_between(v, w).len()).sum()).collect();
    let subsets: Vec<Vec<usize>> = (1u32..(1 << n))
        .map(|mask| (0..n).filter(|v| mask & (1 << v) != 0).collect())
        .collect();
    for len in 2..=window {
        let mut idx = vec![0usize; len];
        loop {
            let terms: Vec<Vec<usize>> = idx.iter().map(|&i| subsets[i].clone()).collect();
            let total: usize = terms.iter().flatten().map(|&v| proj_dim[v]).sum();
            if total <= dim_cap {
                search_differentials(alg, &terms, &mut out);
            }
            if !advance(&mut idx, subsets.len()) {
                break;
            }
        }
    }
    Ok(out)
}

fn advance(idx: &mut [usize], base: usize) -> bool {
    for slot in idx.iter_mut().rev() {
        *slot += 1;
        if *slot < base {
            return true;
        }
        *slot = 0;
    }
    false
}

/// Radical entries available for a map `P_s -> P_t`: zero or one radical path.
fn entry_choices(alg: &AlgRef, s: usize, t: usize) -> Vec<Option<usize>> {
    let mut v = vec![None];
    v.extend(alg.paths_between(t, s).iter().copied().filter(|&p| !alg.basis()[p].is_trivial()).map(Some));
    v
}

fn search_differentials(alg: &AlgRef, terms: &[Vec<usize>], out: &mut Vec<DerivedIndec>) {
    // one choice list per (k, j, i)
    let mut slots: Vec<(usize, usize, usize, Vec<Option<usize>>)> = Vec::new();
    for k in 0..terms.len() - 1 {
        for (j, &t) in terms[k + 1].iter().enumerate() {
            for (i, &s) in terms[k].iter().enumerate() {
                slots.push((k, j, i, entry_choices(alg, s, t)));
            }
        }
    }
    let mut pick = vec![0usize; slots.len()];
    loop {
        let mut diffs: Vec<ProjMorphism> =
            (0..terms.len() - 1).map(|k| ProjMorphism::zero(alg, &terms[k], &terms[k + 1])).collect();
        for ((k, j, i, choices), &c) in slots.iter().zip(&pick) {
            if let Some(p) = choices[c] {
                diffs[*k].entries[*j][*i] = alg.basis_elem(p);
            }
        }
        if diffs.iter().all(|d| !d.is_zero()) {
            let lo = -(terms.len() as i64 - 1);
            let x = ProjComplex::new(alg, lo, terms.to_vec(), diffs);
            consider(x, out);
        }
        let mut carried = true;
        for (slot, (_, _, _, choices)) in pick.iter_mut().zip(&slots).rev() {
            *slot += 1;
            if *slot < choices.len() {
                carried = false;
                break;
            }
            *slot = 0;
        }
        if carried {
            break;
        }
    }
}

fn consider(x: ProjComplex, out: &mut Vec<DerivedIndec>) {
    if !x.is_complex() || x.homology_dims().len() < 2 {
        return;
    }
    if out.iter().any(|o| same_orbit(&o.complex, &x)) || !is_indecomposable(&x) {
        return;
    }
    out.push(DerivedIndec { complex: x, origin: Origin::Search });
}

/// Shift closure of a derived subcategory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ShiftPolicy {
    All,
    /// Shifts by multiples of `d` only.
    Multiples(usize),
}

impl ShiftPolicy {
    pub fn allows(&self, n: i64) -> bool {
        match self {
            ShiftPolicy::All => true,
            ShiftPolicy::Multiples(d) => n.rem_euclid(*d as i64) == 0,
        }
    }
}

/// `add{Σ^S g : g in generators}` for the shifts `S` allowed by `policy`.
#[derive(Clone, Debug)]
pub struct DerivedSubcat {
    pub generators: Vec<ProjComplex>,
    pub policy: ShiftPolicy,
}

impl DerivedSubcat {
    pub fn new(generators: Vec<ProjComplex>, policy: ShiftPolicy) -> DerivedSubcat {
        DerivedSubcat { generators, policy }
    }

    /// Index of the generator `g` with `z ≅ Σ^n g` for an allowed `n`.
    pub fn index_of(&self, z: &ProjComplex) -> Option<usize> {
        self.generators.iter().position(|g| {
            !z.is_zero() && !g.is_zero() && self.policy.allows(g.hi() - z.hi()) && same_orbit(g, z)
        })
    }

    pub fn contains_indec(&self, z: &ProjComplex) -> bool {
        self.index_of(z).is_some()
    }

    /// The allowed shifts `Σ^n g` that can have nonzero morphisms to or from `z`.
    pub fn shifts_near(&self, z: &ProjComplex) -> Vec<(usize, i64, ProjComplex)> {
        let mut out = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            for n in hom_window(z, g) {
                if self.policy.allows(n) {
                    out.push((i, n, g.shift(n)));
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

/// Candidates `x` with `Hom(x, Σ^n g) = 0` (left) or `Hom(g, Σ^n x) = 0` (right)
/// for every generator `g` and every allowed `n`. Only shifts where the supports
/// overlap are tested; outside that window the Hom spaces vanish degreewise.
pub fn perp(side: Side, s: &DerivedSubcat, candidates: &[ProjComplex]) -> Vec<usize> {
    candidates
        .iter()
        .enumerate()
        .filter(|(_, x)| {
            s.generators.iter().all(|g| match side {
                Side::Left => hom_window(x, g).filter(|&n| s.policy.allows(n)).all(|n| hyper_hom(x, g, n) == 0),
                Side::Right => hom_window(g, x).filter(|&n| s.policy.allows(-n)).all(|n| hyper_hom(g, x, n) == 0),
            })
        })
        .map(|(i, _)| i)
        .collect()
}

/// Minimal right approximation of `z` by the subcategory; summands index into
/// `s.shifts_near(z)`.
pub fn subcat_right_approx(z: &ProjComplex, s: &DerivedSubcat) -> (Vec<(usize, i64)>, DerivedApprox) {
    let near = s.shifts_near(z);
    let gens: Vec<ProjComplex> = near.iter().map(|(_, _, g)| g.clone()).collect();
    let ap = derived_right_approx(z, &gens);
    (near.iter().map(|(i, n, _)| (*i, *n)).collect(), ap)
}

pub fn subcat_left_approx(z: &ProjComplex, s: &DerivedSubcat) -> (Vec<(usize, i64)>, DerivedApprox) {
    let near = s.shifts_near(z);
    let gens: Vec<ProjComplex> = near.iter().map(|(_, _, g)| g.clone()).collect();
    let ap = derived_left_approx(z, &gens);
    (near.iter().map(|(i, n, _)| (*i, *n)).collect(), ap)
}

/// The triangle `y -> x -> r -> Σy` built from the unit `η_x : x -> φ_*φ^*(x)`.
#[derive(Clone, Debug)]
pub struct UnitTriangle {
    pub y: ProjComplex,
    pub r: ProjComplex,
    pub y_tensor_acyclic: bool,
    pub r_in_image: bool,
}

impl UnitTriangle {
    pub fn holds(&self) -> bool {
        self.y_tensor_acyclic && self.r_in_image
    }
}

pub fn unit_triangle(x: &ProjComplex, phi: &AlgebraMorphism) -> Result<UnitTriangle> {
    if !is_ring_epi(phi) {
        return Err(Error::NotHomologicalEpi("multiplication Γ ⊗_Φ Γ -> Γ is not bijective".into()));
    }
    let eta = unit_map(x, phi);
    let r = proj_replace(&eta.target)?;
    let y = proj_replace(&eta.cone())?.shift(-1);
    let y_tensor_acyclic = derived_tensor(&y, phi).is_acyclic();
    let r_in_image = unit_is_iso(&r, phi);
    Ok(UnitTriangle { y, r, y_tensor_acyclic, r_in_image })
}

/// Position of the orbit of `z` in `list`.
pub fn orbit_index(list: &[DerivedIndec], z: &ProjComplex) -> Option<usize> {
    list.iter().position(|o| same_orbit(&o.complex, z))
}

/// Decomposes a minimal complex into orbit indices with shifts, by multiplicity
/// counting against the shifts of every representative whose support overlaps.
pub fn orbit_decomposition(list: &[DerivedIndec], z: &ProjComplex) -> Vec<(usize, i64, usize)> {
    let mut out = Vec::new();
    if z.is_zero() {
        return out;
    }
    let mut found_dim = 0;
    for (i, o) in list.iter().enumerate() {
        for n in hom_window(z, &o.complex) {
            let g = o.complex.shift(n);
            let m = super::homs::multiplicity(&g, z);
            if m > 0 {
                found_dim += m * g.dim();
                out.push((i, n, m));
            }
        }
    }
    debug_assert!(found_dim <= z.dim());
    out
}
