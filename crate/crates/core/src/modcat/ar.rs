use std::env;

use crate::error::{Error, Result};
use crate::exactfield::{self, Mat, Scalar};
use crate::quivalg::AlgRef;

use super::decompose::{decompose, endo_data, indecomposables_isomorphic, sort_canonical};
use super::hom::{hom_basis, minimal_presentation, projective_cover};
use super::rep::{direct_sum, column_morphism, injective, projective, ModMorphism, Representation};

/// Default bound on the dimension of enumerated indecomposables.
pub const DEFAULT_DIM_CAP: usize = 64;
/// Bound on the number of enumerated indecomposables.
const COUNT_CAP: usize = 4096;

/// The dimension cap, honouring `DHOM_DIM_CAP` when set.
pub fn dim_cap_from_env() -> usize {
    env::var("DHOM_DIM_CAP").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_DIM_CAP)
}

pub fn is_projective_indec(m: &Representation) -> bool {
    let top = m.top_dims();
    if top.iter().sum::<usize>() != 1 {
        return false;
    }
    let v = top.iter().position(|&d| d == 1).unwrap();
    projective(m.algebra(), v).dims() == m.dims()
}

pub fn is_injective_indec(m: &Representation) -> bool {
    let soc = m.socle_dims();
    if soc.iter().sum::<usize>() != 1 {
        return false;
    }
    let v = soc.iter().position(|&d| d == 1).unwrap();
    injective(m.algebra(), v).dims() == m.dims()
}

/// `τ m = ker ν(p_1)` for a minimal presentation `p_1 : P_1 -> P_0` of `m`.
/// Returns the zero module for projectives.
pub fn ar_translate(m: &Representation) -> Result<Representation> {
    let alg = m.algebra().clone();
    match minimal_presentation(m) {
        None => Ok(Representation::zero(&alg)),
        Some(p1) => Ok(p1.nakayama(&alg).kernel().0),
    }
}

/// `τ⁻¹ m = D τ_op D m`
pub fn ar_translate_inverse(m: &Representation) -> Result<Representation> {
    let alg = m.algebra().clone();
    let op = alg.opposite_ref();
    let tau_op = ar_translate(&m.dual(&op))?;
    Ok(tau_op.dual(&alg))
}

/// The almost split sequence `0 -> τX -> E -> X -> 0` ending in the
/// non-projective indecomposable `x`; returns `E` with the two maps.
pub struct ArSequence {
    pub left: Representation,
    pub middle: Representation,
    pub inl: ModMorphism,
    pub outr: ModMorphism,
}

pub fn almost_split_sequence(x: &Representation) -> Result<Option<ArSequence>> {
    let alg = x.algebra().clone();
    let n = ar_translate(x)?;
    if n.is_zero() {
        return Ok(None);
    }
    let cover = projective_cover(x);
    let pi = &cover.map;
    let p0 = pi.source.clone();
    let (omega, iota) = pi.kernel();

    // Ext^1(X, N) = Hom(Ω, N) / {h ι}
    let hs = hom_basis(&omega, &n);
    let len = ModMorphism::zero(&omega, &n).flat_len();
    let boundary: Vec<Vec<Scalar>> = hom_basis(&p0, &n).iter().map(|h| iota.then(h).flatten()).collect();
    let boundary = exactfield::independent_subset(len, &boundary);
    // rows of `quot` cut out the span of the boundary
    let quot = if boundary.is_empty() {
        Mat::identity(len)
    } else {
        Mat::from_rows(Mat::from_cols(len, &boundary).transpose().kernel_basis())
    };

    let endo = endo_data(x);
    let p0_endos = hom_basis(&p0, &p0);
    let lift_sys: Vec<Vec<Scalar>> = p0_endos.iter().map(|h| h.then(pi).flatten()).collect();
    let lift_mat = Mat::from_cols(ModMorphism::zero(&p0, x).flat_len(), &lift_sys);
    let mut restrictions = Vec::new();
    for r in &endo.radical {
        let target = pi.then(r).flatten();
        let c = lift_mat.solve(&target).ok_or_else(|| Error::ConstructionFailed {
            stage: "almost split sequence".into(),
            detail: "endomorphism does not lift to the projective cover".into(),
        })?;
        let lifted = super::decompose::combine(&p0_endos, &c).unwrap();
        let rho = iota.factor_through_mono(&iota.then(&lifted)).expect("lift preserves the syzygy");
        restrictions.push(rho);
    }

    // socle of Ext^1(X, N) over End(X): classes killed by every radical endomorphism
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for rho in &restrictions {
        let cols: Vec<Vec<Scalar>> = hs.iter().map(|h| quot.mul_vec(&rho.then(h).flatten())).collect();
        if cols.is_empty() || quot.rows() == 0 {
            continue;
        }
        let m = Mat::from_cols(quot.rows(), &cols);
        for i in 0..m.rows() {
            rows.push(m.row(i).to_vec());
        }
    }
    let candidates = if rows.is_empty() {
        (0..hs.len()).map(|i| exactfield::unit_vec(hs.len(), i)).collect()
    } else {
        Mat::from_rows(rows).kernel_basis()
    };
    let g = candidates
        .iter()
        .filter_map(|c| super::decompose::combine(&hs, c))
        .find(|g| !exactfield::is_zero_vec(&quot.mul_vec(&g.flatten())))
        .ok_or_else(|| Error::ConstructionFailed {
            stage: "almost split sequence".into(),
            detail: "no nonzero socle element in Ext^1(X, τX)".into(),
        })?;

    // pushout of P0 <- Ω -> N
    let (sum, incs, _) = direct_sum(&alg, &[p0.clone(), n.clone()]);
    let into_sum = column_morphism(&omega, &sum, &[iota.clone(), g.scale(&exactfield::int(-1))]);
    let (e, q) = into_sum.cokernel();
    let inl = incs[1].then(&q);
    let out_on_sum = super::rep::row_morphism(&sum, x, &[pi.clone(), ModMorphism::zero(&n, x)]);
    let outr = q.factor_through_epi(&out_on_sum).expect("pushout map descends");
    if e.total_dim() != x.total_dim() + n.total_dim() {
        return Err(Error::ConstructionFailed {
            stage: "almost split sequence".into(),
            detail: "middle term has the wrong dimension".into(),
        });
    }
    Ok(Some(ArSequence { left: n, middle: e, inl, outr }))
}

/// Complete list of indecomposables up to isomorphism, in canonical order.
pub fn indecomposables(alg: &AlgRef, dim_cap: usize) -> Result<Vec<Representation>> {
    if alg.quiver.is_nakayama() {
        indecomposables_nakayama(alg, dim_cap)
    } else {
        indecomposables_knitting(alg, dim_cap)
    }
}

/// Nakayama algebras: the indecomposables are the `P_v / rad^j P_v`.
pub fn indecomposables_nakayama(alg: &AlgRef, dim_cap: usize) -> Result<Vec<Representation>> {
    let mut out = Vec::new();
    for v in 0..alg.num_vertices() {
        let p = projective(alg, v);
        for sub in p.radical_spaces_as_submodule_chain() {
            let (q, _) = p.quotient(&sub);
            if q.is_zero() {
                continue;
            }
            if q.total_dim() > dim_cap {
                return Err(Error::NotRepresentationFinite(format!("indecomposable of dimension {} exceeds the cap {dim_cap}", q.total_dim())));
            }
            out.push(q);
        }
    }
    sort_canonical(&mut out);
    Ok(out)
}

/// Generic backend: close the projectives under AR neighbours.
pub fn indecomposables_knitting(alg: &AlgRef, dim_cap: usize) -> Result<Vec<Representation>> {
    let mut found: Vec<Representation> = Vec::new();
    let mut queue: Vec<Representation> = Vec::new();
    let push = |m: Representation, found: &mut Vec<Representation>, queue: &mut Vec<Representation>| -> Result<()> {
        if m.is_zero() || found.iter().any(|f| indecomposables_isomorphic(f, &m)) {
            return Ok(());
        }
        if m.total_dim() > dim_cap || found.len() >= COUNT_CAP {
            return Err(Error::NotRepresentationFinite(format!(
                "enumeration passed the cap (dimension {dim_cap}, {} modules)",
                found.len()
            )));
        }
        found.push(m.clone());
        queue.push(m);
        Ok(())
    };
    for v in 0..alg.num_vertices() {
        push(projective(alg, v), &mut found, &mut queue)?;
        push(injective(alg, v), &mut found, &mut queue)?;
    }
    while let Some(x) = queue.pop() {
        let mut next = Vec::new();
        if is_projective_indec(&x) {
            next.extend(decompose(&x.radical().0)?.pieces);
        } else {
            next.push(ar_translate(&x)?);
            if let Some(seq) = almost_split_sequence(&x)? {
                next.extend(decompose(&seq.middle)?.pieces);
            }
        }
        if is_injective_indec(&x) {
            next.extend(decompose(&x.mod_socle().0)?.pieces);
        } else {
            next.push(ar_translate_inverse(&x)?);
        }
        for m in next {
            push(m, &mut found, &mut queue)?;
        }
    }
    sort_canonical(&mut found);
    Ok(found)
}

impl Representation {
    /// Per-vertex bases of `rad^j M` for `j = 1, 2, ...` until zero (inclusive).
    pub fn radical_spaces_as_submodule_chain(&self) -> Vec<Vec<Vec<Vec<Scalar>>>> {
        let mut chain = Vec::new();
        let mut cur = self.clone();
        let mut incl = self.identity();
        loop {
            let (r, i) = cur.radical();
            let total = i.then(&incl);
            let spaces: Vec<Vec<Vec<Scalar>>> = total.image_spaces();
            chain.push(spaces);
            if r.is_zero() {
                break;
            }
            cur = r;
            incl = total;
        }
        chain
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::modcat::decompose::find_iso;
    use crate::modcat::rep::simple;
    use crate::quivalg::{build_algebra, nakayama_spec, AlgebraSpec, Quiver, Relation};

    fn fixture() -> AlgRef {
        Arc::new(build_algebra(&nakayama_spec(3, 2, 2)).unwrap())
    }

    #[test]
    fn translates() {
        let a = fixture();
        let (f1, f2, f3) = (projective(&a, 0), projective(&a, 1), projective(&a, 2));
        assert!(ar_translate(&f2).unwrap().is_zero());
        let t = ar_translate(&simple(&a, 1)).unwrap();
        assert!(indecomposables_isomorphic(&t, &f1));
        let t = ar_translate(&injective(&a, 2)).unwrap();
        assert!(indecomposables_isomorphic(&t, &simple(&a, 1)));
        let _ = f3;
        let ti = ar_translate_inverse(&f1).unwrap();
        assert!(indecomposables_isomorphic(&ti, &simple(&a, 1)));
        assert!(ar_translate_inverse(&injective(&a, 2)).unwrap().is_zero());
    }

    #[test]
    fn fixture_has_five_indecomposables() {
        let a = fixture();
        let ind = indecomposables(&a, 64).unwrap();
        let dims: Vec<Vec<usize>> = ind.iter().map(Representation::dim_vector).collect();
        assert_eq!(dims, vec![vec![1, 0, 0], vec![1, 1, 0], vec![0, 1, 0], vec![0, 1, 1], vec![0, 0, 1]]);
    }

    #[test]
    fn knitting_agrees_with_closed_form() {
        for (n, l) in [(3, 2), (3, 3), (4, 2), (4, 3), (2, 2)] {
            let a = Arc::new(build_algebra(&nakayama_spec(n, l, 1)).unwrap());
            let closed = indecomposables_nakayama(&a, 64).unwrap();
            let knit = indecomposables_knitting(&a, 64).unwrap();
            assert_eq!(closed.len(), knit.len(), "n={n} l={l}");
            for m in &knit {
                assert!(find_iso(&closed, m).is_some());
            }
        }
    }

    #[test]
    fn small_counts() {
        let a2 = Arc::new(build_algebra(&nakayama_spec(2, 0, 1)).unwrap());
        assert_eq!(indecomposables(&a2, 64).unwrap().len(), 3);
        let k = Arc::new(build_algebra(&nakayama_spec(1, 0, 1)).unwrap());
        assert_eq!(indecomposables(&k, 64).unwrap().len(), 1);
    }

    #[test]
    fn d4_knitting() {
        // three arrows into a central vertex: 12 indecomposables
        let q = Quiver::new(
            ["c", "x", "y", "z"].iter().map(|s| s.to_string()).collect(),
            &[("a".into(), "x".into(), "c".into()), ("b".into(), "y".into(), "c".into()), ("e".into(), "z".into(), "c".into())],
        )
        .unwrap();
        let a = Arc::new(build_algebra(&AlgebraSpec { name: None, quiver: q, relations: Vec::<Relation>::new(), d: 1 }).unwrap());
        let ind = indecomposables(&a, 64).unwrap();
        assert_eq!(ind.len(), 12);
        assert!(ind.iter().any(|m| m.dims() == [2, 1, 1, 1]));
    }

    #[test]
    fn almost_split_sequence_of_simple() {
        let a = fixture();
        let seq = almost_split_sequence(&simple(&a, 1)).unwrap().unwrap();
        assert_eq!(seq.middle.dims(), &[1, 1, 0]);
        assert!(seq.inl.then(&seq.outr).is_zero());
        assert!(seq.inl.is_mono() && seq.outr.is_epi());
    }
}
