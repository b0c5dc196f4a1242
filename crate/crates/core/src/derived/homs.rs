use std::collections::HashMap;

use crate::exactfield::{self, is_zero_vec, Mat, Scalar};
use crate::modcat::ProjMorphism;

use super::complex::{ChainMap, ProjComplex};

/// One unknown coefficient of a graded map: degree, target summand, source summand, basis path.
#[derive(Clone, Copy, Debug)]
struct Slot {
    deg: i64,
    j: usize,
    i: usize,
    path: usize,
}

/// `Hom_{K^b}(X, Y)` in degree 0: chain maps, null-homotopic maps, and a basis of
/// representatives of the quotient.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: ProjComplex,
    pub target: ProjComplex,
    slots: Vec<Slot>,
    pub cycles: Vec<Vec<Scalar>>,
    pub boundaries: Vec<Vec<Scalar>>,
    /// Chain maps whose classes form a basis of the homotopy classes.
    pub classes: Vec<Vec<Scalar>>,
}

fn slots_for(x: &ProjComplex, y: &ProjComplex, deg: i64) -> Vec<Slot> {
    let alg = x.algebra();
    let mut out = Vec::new();
    if x.is_zero() || y.is_zero() {
        return out;
    }
    for p in x.lo..=x.hi() {
        let (src, tgt) = (x.term(p), y.term(p + deg));
        for (j, &t) in tgt.iter().enumerate() {
            for (i, &s) in src.iter().enumerate() {
                for &path in alg.paths_between(t, s) {
                    out.push(Slot { deg: p, j, i, path });
                }
            }
        }
    }
    out
}

/// Graded map with a single nonzero coefficient: components by source degree.
fn single(x: &ProjComplex, y: &ProjComplex, deg: i64, slot: &Slot) -> (i64, ProjMorphism) {
    let alg = x.algebra();
    let mut f = ProjMorphism::zero(alg, x.term(slot.deg), y.term(slot.deg + deg));
    f.entries[slot.j][slot.i] = alg.basis_elem(slot.path);
    (slot.deg, f)
}

impl HomSpace {
    pub fn new(x: &ProjComplex, y: &ProjComplex) -> HomSpace {
        let alg = x.algebra().clone();
        let slots = slots_for(x, y, 0);
        let n = slots.len();
        if n == 0 {
            return HomSpace { source: x.clone(), target: y.clone(), slots, cycles: Vec::new(), boundaries: Vec::new(), classes: Vec::new() };
        }
        // D(f)^p = d_Y f^p - f^{p+1} d_X^p, laid out over degrees x.lo-1 ..= x.hi()
        let eq_layout: Vec<(i64, usize, usize)> =
            (x.lo - 1..=x.hi()).map(|p| (p, x.term(p).len(), y.term(p + 1).len())).collect();
        let eq_len: usize = eq_layout.iter().map(|(_, a, b)| a * b * alg.dim()).sum();
        let eq_offset = |p: i64| -> usize {
            eq_layout.iter().take_while(|(q, _, _)| *q < p).map(|(_, a, b)| a * b * alg.dim()).sum()
        };
        let place = |out: &mut Vec<Scalar>, p: i64, g: &ProjMorphism, sgn: bool| {
            let mut o = eq_offset(p);
            for row in &g.entries {
                for x in row {
                    for (k, c) in x.iter().enumerate() {
                        if sgn {
                            out[o + k] -= c;
                        } else {
                            out[o + k] += c;
                        }
                    }
                    o += alg.dim();
                }
            }
        };
        let mut cols = Vec::with_capacity(n);
        for s in &slots {
            let mut v = exactfield::zero_vec(eq_len);
            let (p, f) = single(x, y, 0, s);
            place(&mut v, p, &f.then(&alg, &y.diff(p)), false);
            place(&mut v, p - 1, &x.diff(p - 1).then(&alg, &f), true);
            cols.push(v);
        }
        let cycles = if eq_len == 0 {
            (0..n).map(|i| exactfield::unit_vec(n, i)).collect()
        } else {
            Mat::from_cols(eq_len, &cols).kernel_basis()
        };
        // null-homotopic maps d_Y h + h d_X
        let mut boundaries = Vec::new();
        let lookup: HashMap<(i64, usize, usize, usize), usize> =
            slots.iter().enumerate().map(|(k, s)| ((s.deg, s.j, s.i, s.path), k)).collect();
        let index = |p: i64, j: usize, i: usize, path: usize| -> usize { lookup[&(p, j, i, path)] };
        let flatten_at = |v: &mut Vec<Scalar>, p: i64, g: &ProjMorphism| {
            for (j, row) in g.entries.iter().enumerate() {
                for (i, e) in row.iter().enumerate() {
                    for (k, c) in e.iter().enumerate() {
                        if !num_traits::Zero::is_zero(c) {
                            v[index(p, j, i, k)] += c;
                        }
                    }
                }
            }
        };
        for h in slots_for(x, y, -1) {
            let (p, hp) = single(x, y, -1, &h);
            let mut v = exactfield::zero_vec(n);
            flatten_at(&mut v, p, &hp.then(&alg, &y.diff(p - 1)));
            flatten_at(&mut v, p - 1, &x.diff(p - 1).then(&alg, &hp));
            if !is_zero_vec(&v) {
                boundaries.push(v);
            }
        }
        let boundaries = exactfield::independent_subset(n, &boundaries);
        let classes: Vec<Vec<Scalar>> = exactfield::complement_indices(n, &boundaries, &cycles)
            .into_iter()
            .map(|k| cycles[k].clone())
            .collect();
        HomSpace { source: x.clone(), target: y.clone(), slots, cycles, boundaries, classes }
    }

    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn to_map(&self, v: &[Scalar]) -> ChainMap {
        let mut f = ChainMap::zero(&self.source, &self.target);
        for (s, c) in self.slots.iter().zip(v) {
            if !num_traits::Zero::is_zero(c) {
                let k = (s.deg - self.source.lo) as usize;
                f.maps[k].entries[s.j][s.i][s.path] += c;
            }
        }
        f
    }

    pub fn flatten(&self, f: &ChainMap) -> Vec<Scalar> {
        self.slots
            .iter()
            .map(|s| {
                let comp = f.component(s.deg);
                comp.entries[s.j][s.i][s.path].clone()
            })
            .collect()
    }

    pub fn class_maps(&self) -> Vec<ChainMap> {
        self.classes.iter().map(|v| self.to_map(v)).collect()
    }

    /// Whether `f` is null-homotopic.
    pub fn is_null_homotopic(&self, f: &ChainMap) -> bool {
        let v = self.flatten(f);
        is_zero_vec(&v) || exactfield::coordinates(self.len(), &self.boundaries, &v).is_some()
    }
}

/// `dim Hom_{D^b}(X, Σ^n Y)` for bounded complexes of projectives.
pub fn hyper_hom(x: &ProjComplex, y: &ProjComplex, n: i64) -> usize {
    HomSpace::new(x, &y.shift(n)).dim()
}

/// Shifts `n` for which `Hom(X, Σ^n Y)` can be nonzero: the supports of `X` and
/// `Σ^n Y` must overlap.
pub fn hom_window(x: &ProjComplex, y: &ProjComplex) -> std::ops::RangeInclusive<i64> {
    if x.is_zero() || y.is_zero() {
        #[allow(clippy::reversed_empty_ranges)]
        return 1..=0;
    }
    (y.lo - x.hi())..=(y.hi() - x.lo)
}

/// Whether `Hom(X, Σ^n Y) = 0` for every `n`.
pub fn hom_orthogonal(x: &ProjComplex, y: &ProjComplex) -> bool {
    hom_window(x, y).all(|n| hyper_hom(x, y, n) == 0)
}

/// Basis coordinates (in `classes`) of the radical of `End_{K^b}(X)` for a
/// minimal complex, via the trace form.
pub fn endo_radical(x: &ProjComplex) -> (HomSpace, Vec<ChainMap>) {
    let h = HomSpace::new(x, x);
    let maps = h.class_maps();
    let n = maps.len();
    let mut form = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            form.set(i, j, maps[i].then(&maps[j]).top_trace());
        }
    }
    let rad: Vec<ChainMap> = if n == 0 {
        Vec::new()
    } else {
        form.kernel_basis().iter().map(|c| combine(&maps, c)).collect()
    };
    (h, rad)
}

pub(crate) fn combine(maps: &[ChainMap], c: &[Scalar]) -> ChainMap {
    let mut acc = ChainMap::zero(&maps[0].source, &maps[0].target);
    for (f, x) in maps.iter().zip(c) {
        if !num_traits::Zero::is_zero(x) {
            acc = acc.add(&f.scale(x));
        }
    }
    acc
}

/// `dim End_{K^b}(X) / rad` for a minimal complex.
pub fn top_dim(x: &ProjComplex) -> usize {
    let (h, rad) = endo_radical(x);
    h.dim() - rad.len()
}

pub fn is_indecomposable(x: &ProjComplex) -> bool {
    !x.is_zero() && top_dim(x) == 1
}

/// Multiplicity of the indecomposable minimal complex `g` as a summand of the minimal complex `z`.
pub fn multiplicity(g: &ProjComplex, z: &ProjComplex) -> usize {
    let into = HomSpace::new(g, z).class_maps();
    if into.is_empty() {
        return 0;
    }
    let back = HomSpace::new(z, g).class_maps();
    if back.is_empty() {
        return 0;
    }
    let mut pairing = Mat::zeros(into.len(), back.len());
    for (a, f) in into.iter().enumerate() {
        for (b, h) in back.iter().enumerate() {
            pairing.set(a, b, f.then(h).top_trace());
        }
    }
    pairing.rank()
}

/// Isomorphism of indecomposable minimal complexes.
pub fn isomorphic_indec(x: &ProjComplex, y: &ProjComplex) -> bool {
    if x.lo != y.lo || x.terms.len() != y.terms.len() {
        return false;
    }
    let xs: Vec<Vec<usize>> = x.terms.iter().map(|t| sorted(t)).collect();
    let ys: Vec<Vec<usize>> = y.terms.iter().map(|t| sorted(t)).collect();
    if xs != ys {
        return false;
    }
    multiplicity(x, y) == 1
}

fn sorted(t: &[usize]) -> Vec<usize> {
    let mut v = t.to_vec();
    v.sort_unstable();
    v
}

/// Whether the indecomposable `x` lies in the shift orbit of the indecomposable `y`.
pub fn same_orbit(x: &ProjComplex, y: &ProjComplex) -> bool {
    isomorphic_indec(&x.normalized(), &y.normalized())
}
