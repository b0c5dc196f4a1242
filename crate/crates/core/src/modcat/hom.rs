use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactfield::{self, Mat, Scalar};
use crate::quivalg::AlgRef;

use super::rep::{elements_of_vector, proj_sum, ModMorphism, ProjMorphism, Representation};

/// Longest projective resolution computed before giving up.
pub const RESOLUTION_CAP: usize = 64;

/// Basis of `Hom(m, n)`, from the kernel of the commuting-square system
/// `N_a F_v - F_w M_a = 0`.
pub fn hom_basis(m: &Representation, n: &Representation) -> Vec<ModMorphism> {
    let alg = m.algebra();
    let nv = alg.num_vertices();
    let mut offs = Vec::with_capacity(nv);
    let mut total = 0;
    for v in 0..nv {
        offs.push(total);
        total += n.dim_at(v) * m.dim_at(v);
    }
    if total == 0 {
        return Vec::new();
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (ai, a) in alg.quiver.arrows.iter().enumerate() {
        let (v, w) = (a.source, a.target);
        let (na, ma) = (n.arrow_map(ai), m.arrow_map(ai));
        let (dmv, dnv, dnw) = (m.dim_at(v), n.dim_at(v), n.dim_at(w));
        for r in 0..dnw {
            for c in 0..dmv {
                let mut row = exactfield::zero_vec(total);
                for k in 0..dnv {
                    let x = na.get(r, k);
                    if !x.is_zero() {
                        row[offs[v] + k * dmv + c] += x;
                    }
                }
                for k in 0..m.dim_at(w) {
                    let x = ma.get(k, c);
                    if !x.is_zero() {
                        row[offs[w] + r * m.dim_at(w) + k] -= x;
                    }
                }
                if !exactfield::is_zero_vec(&row) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..total).map(|i| exactfield::unit_vec(total, i)).collect()
    } else {
        Mat::from_rows(rows).kernel_basis()
    };
    kernel.iter().map(|v| ModMorphism::from_flat(m, n, v)).collect()
}

pub fn hom_dim(m: &Representation, n: &Representation) -> usize {
    hom_basis(m, n).len()
}

/// Projective cover data: the vertices of the summands and their generators.
pub struct ProjectiveCover {
    pub vertices: Vec<usize>,
    pub map: ModMorphism,
}

/// Minimal projective cover, with generators lifted from a complement of the radical.
pub fn projective_cover(m: &Representation) -> ProjectiveCover {
    let alg = m.algebra();
    let rad = m.radical_spaces();
    let mut gens: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for v in 0..alg.num_vertices() {
        let d = m.dim_at(v);
        let units: Vec<Vec<Scalar>> = (0..d).map(|i| exactfield::unit_vec(d, i)).collect();
        for i in exactfield::complement_indices(d, &rad[v], &units) {
            gens.push((v, units[i].clone()));
        }
    }
    let vertices: Vec<usize> = gens.iter().map(|(v, _)| *v).collect();
    let p = proj_sum(alg, &vertices);
    let maps = (0..alg.num_vertices())
        .map(|w| {
            let mut cols = Vec::new();
            for (v, g) in &gens {
                for &k in alg.paths_between(*v, w) {
                    cols.push(m.path_matrix(k).mul_vec(g));
                }
            }
            Mat::from_cols(m.dim_at(w), &cols)
        })
        .collect();
    ProjectiveCover { vertices, map: ModMorphism::new_unchecked(p, m.clone(), maps) }
}

/// Expresses a monomorphism `K -> ⊕ P_{verts}` as a morphism out of the
/// projective cover of `K`.
fn cover_into(alg: &AlgRef, verts: &[usize], incl: &ModMorphism) -> ProjMorphism {
    let k = &incl.source;
    let cover = projective_cover(k);
    let mut entries = vec![Vec::new(); verts.len()];
    for (gi, &u) in cover.vertices.iter().enumerate() {
        // the generator sits at vertex u; its column in the cover map at u
        let co: usize = cover.vertices[..gi].iter().map(|&w| alg.paths_between(w, u).len()).sum();
        let col_in_k = cover.map.map_at(u).column(co + alg.between_position(alg.idempotent(u)));
        let in_p = incl.map_at(u).mul_vec(&col_in_k);
        for (j, x) in elements_of_vector(alg, verts, u, &in_p).into_iter().enumerate() {
            entries[j].push(x);
        }
    }
    ProjMorphism { source: cover.vertices, target: verts.to_vec(), entries }
}

/// A minimal projective resolution `... -> P_1 -> P_0 -> M`.
#[derive(Clone, Debug)]
pub struct ProjResolution {
    /// Vertices of the summands of `P_i`.
    pub terms: Vec<Vec<usize>>,
    /// `diffs[i] : P_{i+1} -> P_i`
    pub diffs: Vec<ProjMorphism>,
    pub augmentation: ModMorphism,
}

impl ProjResolution {
    pub fn length(&self) -> usize {
        self.terms.iter().rposition(|t| !t.is_empty()).unwrap_or(0)
    }
}

/// The first differential `P_1 -> P_0` of the minimal resolution, if `m` is not projective.
pub fn minimal_presentation(m: &Representation) -> Option<ProjMorphism> {
    let cover = projective_cover(m);
    let (kernel, incl) = cover.map.kernel();
    if kernel.is_zero() {
        return None;
    }
    Some(cover_into(m.algebra(), &cover.vertices, &incl))
}

pub fn proj_resolution(m: &Representation) -> Result<ProjResolution> {
    proj_resolution_bounded(m, RESOLUTION_CAP)
}

/// Resolution computed up to `P_{max_len}`; errors if it has not terminated by the cap.
pub fn proj_resolution_bounded(m: &Representation, max_len: usize) -> Result<ProjResolution> {
    let alg = m.algebra().clone();
    let cover = projective_cover(m);
    let mut terms = vec![cover.vertices.clone()];
    let mut diffs = Vec::new();
    let (mut kernel, mut incl) = cover.map.kernel();
    while !kernel.is_zero() {
        if terms.len() > max_len {
            return Err(Error::ExceedsBound(format!("projective resolution longer than {max_len}")));
        }
        let prev = terms.last().unwrap().clone();
        let d = cover_into(&alg, &prev, &incl);
        let dm = d.to_module(&alg);
        let (k2, i2) = dm.kernel();
        terms.push(d.source.clone());
        diffs.push(d);
        kernel = k2;
        incl = i2;
    }
    Ok(ProjResolution { terms, diffs, augmentation: cover.map })
}

pub fn projective_dimension(m: &Representation) -> Result<usize> {
    Ok(proj_resolution(m)?.length())
}

/// Matrix of `Hom(P_i, N) -> Hom(P_{i+1}, N)`, precomposition with `d : P_{i+1} -> P_i`,
/// using `Hom(⊕ P_v, N) = ⊕ N e_v`.
pub fn hom_into_module(d: &ProjMorphism, n: &Representation) -> Mat {
    let rows: usize = d.source.iter().map(|&u| n.dim_at(u)).sum();
    let cols: usize = d.target.iter().map(|&v| n.dim_at(v)).sum();
    let mut out = Mat::zeros(rows, cols);
    let mut ro = 0;
    for (k, &u) in d.source.iter().enumerate() {
        let mut co = 0;
        for (j, &v) in d.target.iter().enumerate() {
            let block = n.act_block(&d.entries[j][k], v, u);
            out.put_block(ro, co, &block);
            co += n.dim_at(v);
        }
        ro += n.dim_at(u);
    }
    out
}

/// `dim Ext^i(m, n)`
pub fn ext(m: &Representation, n: &Representation, i: usize) -> Result<usize> {
    let res = proj_resolution(m)?;
    Ok(ext_from_resolution(&res, n, i))
}

pub fn ext_from_resolution(res: &ProjResolution, n: &Representation, i: usize) -> usize {
    if i >= res.terms.len() {
        return 0;
    }
    let dim_i: usize = res.terms[i].iter().map(|&v| n.dim_at(v)).sum();
    let out_rank = if i < res.diffs.len() { hom_into_module(&res.diffs[i], n).rank() } else { 0 };
    let in_rank = if i > 0 { hom_into_module(&res.diffs[i - 1], n).rank() } else { 0 };
    dim_i - out_rank - in_rank
}

/// Global dimension as the largest projective dimension of a simple.
pub fn global_dimension(alg: &AlgRef) -> Result<usize> {
    let mut g = 0;
    for v in 0..alg.num_vertices() {
        g = g.max(projective_dimension(&super::rep::simple(alg, v))?);
    }
    Ok(g)
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
    fn fixture_projectives_and_injectives() {
        let a = fixture();
        assert_eq!(projective(&a, 0).dims(), &[1, 0, 0]);
        assert_eq!(projective(&a, 1).dims(), &[1, 1, 0]);
        assert_eq!(projective(&a, 2).dims(), &[0, 1, 1]);
        assert_eq!(injective(&a, 2).dims(), &[0, 0, 1]);
        assert_eq!(injective(&a, 0).dims(), &[1, 1, 0]);
    }

    #[test]
    fn hom_examples() {
        let a = fixture();
        let (f1, f2) = (projective(&a, 0), projective(&a, 1));
        assert_eq!(hom_dim(&f1, &f2), 1);
        assert_eq!(hom_dim(&f2, &f1), 0);
        let basis = hom_basis(&f2, &f2);
        assert_eq!(basis.len(), 1);
        assert!(basis[0].is_iso());
    }

    #[test]
    fn resolutions() {
        let a = fixture();
        let f4 = injective(&a, 2);
        let r = proj_resolution(&f4).unwrap();
        assert_eq!(r.terms, vec![vec![2], vec![1], vec![0]]);
        assert_eq!(r.length(), 2);
        let s2 = simple(&a, 1);
        let r = proj_resolution(&s2).unwrap();
        assert_eq!(r.terms, vec![vec![1], vec![0]]);
        assert_eq!(proj_resolution(&projective(&a, 2)).unwrap().length(), 0);
    }

    #[test]
    fn ext_examples() {
        let a = fixture();
        let (f1, f2, f4, s2) = (projective(&a, 0), projective(&a, 1), injective(&a, 2), simple(&a, 1));
        assert_eq!(ext(&f4, &f1, 2).unwrap(), 1);
        assert_eq!(ext(&s2, &f1, 1).unwrap(), 1);
        for n in [&f1, &f2, &f4, &s2] {
            assert_eq!(ext(&f2, n, 1).unwrap(), 0);
            assert_eq!(ext(&f2, n, 2).unwrap(), 0);
        }
        assert_eq!(ext(&f1, &f1, 0).unwrap(), 1);
    }

    #[test]
    fn gldim() {
        assert_eq!(global_dimension(&fixture()).unwrap(), 2);
        let a2 = Arc::new(build_algebra(&nakayama_spec(2, 0, 1)).unwrap());
        assert_eq!(global_dimension(&a2).unwrap(), 1);
        let ss = Arc::new(build_algebra(&nakayama_spec(1, 0, 1)).unwrap());
        assert_eq!(global_dimension(&ss).unwrap(), 0);
    }
}
