use serde::Serialize;

use crate::exactfield::{self, Mat, Scalar};
use crate::quivalg::AlgRef;

use super::decompose::{endo_data, trace_radical};
use super::hom::hom_basis;
use super::rep::{column_morphism, direct_sum, row_morphism, ModMorphism, Representation};

/// `add` of finitely many pairwise non-isomorphic indecomposables.
#[derive(Clone, Debug)]
pub struct AdditiveSubcategory {
    pub generators: Vec<Representation>,
}

impl AdditiveSubcategory {
    pub fn new(generators: Vec<Representation>) -> AdditiveSubcategory {
        AdditiveSubcategory { generators }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Whether the indecomposable `x` is isomorphic to a generator.
    pub fn contains_indec(&self, x: &Representation) -> bool {
        super::decompose::find_iso(&self.generators, x).is_some()
    }

    /// Whether every summand of `m` is a generator.
    pub fn contains(&self, m: &Representation) -> bool {
        let total: usize =
            self.generators.iter().map(|g| super::decompose::multiplicity(g, m) * g.total_dim()).sum();
        total == m.total_dim()
    }
}

/// An approximation morphism together with the generator index of each summand of its
/// source (right approximations) or target (left approximations).
#[derive(Clone, Debug)]
pub struct Approximation {
    pub summands: Vec<usize>,
    pub object: Representation,
    pub map: ModMorphism,
}

fn radical_between(c: &[Representation], i: usize, j: usize) -> Vec<ModMorphism> {
    if i == j {
        endo_data(&c[i]).radical
    } else {
        hom_basis(&c[i], &c[j])
    }
}

/// Minimal right `add(c)`-approximation `⊕ C_i^{m_i} -> m`.
pub fn right_approx(m: &Representation, c: &AdditiveSubcategory) -> Approximation {
    let alg = m.algebra().clone();
    let gens = &c.generators;
    let homs: Vec<Vec<ModMorphism>> = gens.iter().map(|g| hom_basis(g, m)).collect();
    let mut summands = Vec::new();
    let mut maps = Vec::new();
    for i in 0..gens.len() {
        if homs[i].is_empty() {
            continue;
        }
        let len = homs[i][0].flat_len();
        let mut radical_part: Vec<Vec<Scalar>> = Vec::new();
        for j in 0..gens.len() {
            if homs[j].is_empty() {
                continue;
            }
            for r in radical_between(gens, i, j) {
                for h in &homs[j] {
                    radical_part.push(r.then(h).flatten());
                }
            }
        }
        let radical_part = exactfield::independent_subset(len, &radical_part);
        let flat: Vec<Vec<Scalar>> = homs[i].iter().map(ModMorphism::flatten).collect();
        for k in exactfield::complement_indices(len, &radical_part, &flat) {
            summands.push(i);
            maps.push(homs[i][k].clone());
        }
    }
    assemble_right(&alg, gens, summands, maps, m)
}

fn assemble_right(
    alg: &AlgRef,
    gens: &[Representation],
    summands: Vec<usize>,
    maps: Vec<ModMorphism>,
    m: &Representation,
) -> Approximation {
    let parts: Vec<Representation> = summands.iter().map(|&i| gens[i].clone()).collect();
    let (object, _, _) = direct_sum(alg, &parts);
    let map = row_morphism(&object, m, &maps);
    Approximation { summands, object, map }
}

/// Minimal left `add(c)`-approximation `m -> ⊕ C_i^{m_i}`.
pub fn left_approx(m: &Representation, c: &AdditiveSubcategory) -> Approximation {
    let alg = m.algebra().clone();
    let gens = &c.generators;
    let homs: Vec<Vec<ModMorphism>> = gens.iter().map(|g| hom_basis(m, g)).collect();
    let mut summands = Vec::new();
    let mut maps = Vec::new();
    for i in 0..gens.len() {
        if homs[i].is_empty() {
            continue;
        }
        let len = homs[i][0].flat_len();
        let mut radical_part: Vec<Vec<Scalar>> = Vec::new();
        for j in 0..gens.len() {
            if homs[j].is_empty() {
                continue;
            }
            for r in radical_between(gens, j, i) {
                for h in &homs[j] {
                    radical_part.push(h.then(&r).flatten());
                }
            }
        }
        let radical_part = exactfield::independent_subset(len, &radical_part);
        let flat: Vec<Vec<Scalar>> = homs[i].iter().map(ModMorphism::flatten).collect();
        for k in exactfield::complement_indices(len, &radical_part, &flat) {
            summands.push(i);
            maps.push(homs[i][k].clone());
        }
    }
    let parts: Vec<Representation> = summands.iter().map(|&i| gens[i].clone()).collect();
    let (object, _, _) = direct_sum(&alg, &parts);
    let map = column_morphism(m, &object, &maps);
    Approximation { summands, object, map }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CoverCheck {
    /// Every map from a generator factors through the morphism.
    pub approximation: bool,
    /// Right (resp. left) minimal.
    pub minimal: bool,
    /// The factorizations are unique.
    pub strong: bool,
}

impl CoverCheck {
    pub fn is_cover(&self) -> bool {
        self.approximation && self.minimal
    }
}

fn rank_of(len: usize, vecs: &[Vec<Scalar>]) -> usize {
    exactfield::span_rank(len, vecs)
}

/// Whether `xi : X -> M` is an `add(c)`-cover, checked by linear algebra.
pub fn is_cover(xi: &ModMorphism, c: &AdditiveSubcategory) -> CoverCheck {
    let (x, m) = (&xi.source, &xi.target);
    let mut approximation = true;
    let mut injective = true;
    for g in &c.generators {
        let into_m = hom_basis(g, m);
        let into_x = hom_basis(g, x);
        let len = ModMorphism::zero(g, m).flat_len();
        let images: Vec<Vec<Scalar>> = into_x.iter().map(|h| h.then(xi).flatten()).collect();
        let r = rank_of(len, &images);
        approximation &= r == into_m.len();
        injective &= r == into_x.len();
    }
    // right minimal: {ψ ∈ End(X) : ξψ = 0} lies in rad End(X)
    let minimal = annihilator_in_radical(x, |psi| psi.then(xi));
    CoverCheck { approximation, minimal, strong: approximation && minimal && injective }
}

/// Whether `eta : M -> X` is an `add(c)`-envelope.
pub fn is_envelope(eta: &ModMorphism, c: &AdditiveSubcategory) -> CoverCheck {
    let (m, x) = (&eta.source, &eta.target);
    let mut approximation = true;
    let mut injective = true;
    for g in &c.generators {
        let from_m = hom_basis(m, g);
        let from_x = hom_basis(x, g);
        let len = ModMorphism::zero(m, g).flat_len();
        let images: Vec<Vec<Scalar>> = from_x.iter().map(|h| eta.then(h).flatten()).collect();
        let r = rank_of(len, &images);
        approximation &= r == from_m.len();
        injective &= r == from_x.len();
    }
    let minimal = annihilator_in_radical(x, |psi| eta.then(psi));
    CoverCheck { approximation, minimal, strong: approximation && minimal && injective }
}

fn annihilator_in_radical(x: &Representation, compose: impl Fn(&ModMorphism) -> ModMorphism) -> bool {
    let basis = hom_basis(x, x);
    if basis.is_empty() {
        return true;
    }
    let images: Vec<Vec<Scalar>> = basis.iter().map(|b| compose(b).flatten()).collect();
    let len = images[0].len();
    let annihilator = if len == 0 {
        (0..basis.len()).map(|i| exactfield::unit_vec(basis.len(), i)).collect()
    } else {
        Mat::from_cols(len, &images).kernel_basis()
    };
    if annihilator.is_empty() {
        return true;
    }
    let mats: Vec<Mat> = basis.iter().map(ModMorphism::total_matrix).collect();
    let radical = trace_radical(&mats);
    annihilator.iter().all(|a| exactfield::coordinates(basis.len(), &radical, a).is_some())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::modcat::rep::{injective, projective, simple};
    use crate::quivalg::{build_algebra, nakayama_spec};

    fn fixture() -> AlgRef {
        Arc::new(build_algebra(&nakayama_spec(3, 2, 2)).unwrap())
    }

    #[test]
    fn approximation_examples() {
        let a = fixture();
        let (f1, f2, f3) = (projective(&a, 0), projective(&a, 1), projective(&a, 2));
        let c = AdditiveSubcategory::new(vec![f2.clone()]);
        let env = left_approx(&f3, &c);
        assert!(env.object.is_zero());
        let env = left_approx(&f1, &c);
        assert_eq!(env.summands, vec![0]);
        assert!(env.map.is_mono());
        let cover = right_approx(&f2, &c);
        assert!(cover.map.is_iso());
    }

    #[test]
    fn cover_checks() {
        let a = fixture();
        let (f2, s2) = (projective(&a, 1), simple(&a, 1));
        let c = AdditiveSubcategory::new(vec![f2.clone()]);
        assert!(is_cover(&f2.identity(), &c).is_cover());
        let q = right_approx(&s2, &c);
        assert_eq!(q.summands, vec![0]);
        assert!(is_cover(&q.map, &c).is_cover());
        let zero = ModMorphism::zero(&f2, &s2);
        assert!(!is_cover(&zero, &c).approximation);
    }

    #[test]
    fn approximations_are_covers() {
        let a = fixture();
        let f = AdditiveSubcategory::new(vec![projective(&a, 0), projective(&a, 1), projective(&a, 2), injective(&a, 2)]);
        for m in [simple(&a, 1), injective(&a, 2), projective(&a, 1)] {
            assert!(is_cover(&right_approx(&m, &f).map, &f).is_cover());
            assert!(is_envelope(&left_approx(&m, &f).map, &f).is_cover());
        }
    }
}
