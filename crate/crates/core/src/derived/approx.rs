use crate::exactfield::{self, Scalar};
use crate::modcat::ProjMorphism;

use super::complex::{ChainMap, ProjComplex};
use super::homs::{endo_radical, HomSpace};

/// A right (or left) approximation of a complex by a list of indecomposable
/// generators; `summands` holds the generator index of each summand.
#[derive(Clone, Debug)]
pub struct DerivedApprox {
    pub summands: Vec<usize>,
    pub object: ProjComplex,
    pub map: ChainMap,
}

fn radical_maps(gens: &[ProjComplex], i: usize, j: usize) -> Vec<ChainMap> {
    if i == j {
        endo_radical(&gens[i]).1
    } else {
        HomSpace::new(&gens[i], &gens[j]).class_maps()
    }
}

/// Minimal right approximation `⊕ G_i -> z` by pairwise non-isomorphic
/// indecomposable minimal complexes `gens`.
pub fn derived_right_approx(z: &ProjComplex, gens: &[ProjComplex]) -> DerivedApprox {
    let alg = z.algebra();
    let homs: Vec<HomSpace> = gens.iter().map(|g| HomSpace::new(g, z)).collect();
    let mut summands = Vec::new();
    let mut maps = Vec::new();
    for i in 0..gens.len() {
        if homs[i].dim() == 0 {
            continue;
        }
        let n = homs[i].len();
        let mut base = homs[i].boundaries.clone();
        for j in 0..gens.len() {
            if homs[j].dim() == 0 {
                continue;
            }
            let into_z = homs[j].class_maps();
            for r in radical_maps(gens, i, j) {
                for h in &into_z {
                    base.push(homs[i].flatten(&r.then(h)));
                }
            }
        }
        let base = exactfield::independent_subset(n, &base);
        for k in exactfield::complement_indices(n, &base, &homs[i].classes) {
            summands.push(i);
            maps.push(homs[i].to_map(&homs[i].classes[k]));
        }
    }
    let parts: Vec<ProjComplex> = summands.iter().map(|&i| gens[i].clone()).collect();
    let object = ProjComplex::direct_sum(alg, &parts);
    let map = row_map(&object, z, &parts, &maps);
    DerivedApprox { summands, object, map }
}

/// Minimal left approximation `z -> ⊕ G_i`.
pub fn derived_left_approx(z: &ProjComplex, gens: &[ProjComplex]) -> DerivedApprox {
    let alg = z.algebra();
    let homs: Vec<HomSpace> = gens.iter().map(|g| HomSpace::new(z, g)).collect();
    let mut summands = Vec::new();
    let mut maps = Vec::new();
    for i in 0..gens.len() {
        if homs[i].dim() == 0 {
            continue;
        }
        let n = homs[i].len();
        let mut base = homs[i].boundaries.clone();
        for j in 0..gens.len() {
            if homs[j].dim() == 0 {
                continue;
            }
            let from_z = homs[j].class_maps();
            for r in radical_maps(gens, j, i) {
                for h in &from_z {
                    base.push(homs[i].flatten(&h.then(&r)));
                }
            }
        }
        let base = exactfield::independent_subset(n, &base);
        for k in exactfield::complement_indices(n, &base, &homs[i].classes) {
            summands.push(i);
            maps.push(homs[i].to_map(&homs[i].classes[k]));
        }
    }
    let parts: Vec<ProjComplex> = summands.iter().map(|&i| gens[i].clone()).collect();
    let object = ProjComplex::direct_sum(alg, &parts);
    let map = column_map(z, &object, &parts, &maps);
    DerivedApprox { summands, object, map }
}

/// `[f_1 ... f_n] : ⊕ X_i -> Y`, with `sum` built by [`ProjComplex::direct_sum`] from `parts`.
pub fn row_map(sum: &ProjComplex, target: &ProjComplex, parts: &[ProjComplex], maps: &[ChainMap]) -> ChainMap {
    let alg = target.algebra();
    let mut f = ChainMap::zero(sum, target);
    if sum.is_zero() {
        return f;
    }
    for p in sum.lo..=sum.hi() {
        let mut comp = ProjMorphism::zero(alg, sum.term(p), target.term(p));
        let mut c0 = 0;
        for (x, g) in parts.iter().zip(maps) {
            comp.put(0, c0, &g.component(p));
            c0 += x.term(p).len();
        }
        f.maps[(p - sum.lo) as usize] = comp;
    }
    f
}

/// `[f_1; ...; f_n] : X -> ⊕ Y_i`.
pub fn column_map(source: &ProjComplex, sum: &ProjComplex, parts: &[ProjComplex], maps: &[ChainMap]) -> ChainMap {
    let alg = source.algebra();
    let mut f = ChainMap::zero(source, sum);
    if source.is_zero() {
        return f;
    }
    for p in source.lo..=source.hi() {
        let mut comp = ProjMorphism::zero(alg, source.term(p), sum.term(p));
        let mut r0 = 0;
        for (y, g) in parts.iter().zip(maps) {
            comp.put(r0, 0, &g.component(p));
            r0 += y.term(p).len();
        }
        f.maps[(p - source.lo) as usize] = comp;
    }
    f
}

/// Whether every map from a generator into `z` factors through `map`.
pub fn is_right_approximation(map: &ChainMap, gens: &[ProjComplex]) -> bool {
    gens.iter().all(|g| {
        let into_z = HomSpace::new(g, &map.target);
        if into_z.dim() == 0 {
            return true;
        }
        let into_c = HomSpace::new(g, &map.source);
        let mut images: Vec<Vec<Scalar>> = into_c.class_maps().iter().map(|h| into_z.flatten(&h.then(map))).collect();
        images.extend(into_z.boundaries.iter().cloned());
        exactfield::span_rank(into_z.len(), &images) == into_z.boundaries.len() + into_z.dim()
    })
}

/// Whether every map from `z` into a generator factors through `map`.
pub fn is_left_approximation(map: &ChainMap, gens: &[ProjComplex]) -> bool {
    gens.iter().all(|g| {
        let from_z = HomSpace::new(&map.source, g);
        if from_z.dim() == 0 {
            return true;
        }
        let from_c = HomSpace::new(&map.target, g);
        let mut images: Vec<Vec<Scalar>> = from_c.class_maps().iter().map(|h| from_z.flatten(&map.then(h))).collect();
        images.extend(from_z.boundaries.iter().cloned());
        exactfield::span_rank(from_z.len(), &images) == from_z.boundaries.len() + from_z.dim()
    })
}
