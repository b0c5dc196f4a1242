use crate::error::Result;
use crate::exactfield;
use crate::modcat::{
    direct_sum, from_generators, projective_cover, proj_sum, ModMorphism, ProjMorphism, Representation, RESOLUTION_CAP,
};
use crate::quivalg::AlgRef;

use super::complex::{cap_error, ProjComplex};

/// A bounded complex of modules; `diffs[k]` leaves degree `lo + k`.
#[derive(Clone, Debug)]
pub struct RepComplex {
    pub alg: AlgRef,
    pub lo: i64,
    pub terms: Vec<Representation>,
    pub diffs: Vec<ModMorphism>,
}

impl RepComplex {
    pub fn stalk(m: &Representation, deg: i64) -> RepComplex {
        RepComplex { alg: m.algebra().clone(), lo: deg, terms: vec![m.clone()], diffs: Vec::new() }
    }

    pub fn from_projective(x: &ProjComplex) -> RepComplex {
        let alg = x.algebra().clone();
        if x.is_zero() {
            return RepComplex { alg, lo: 0, terms: Vec::new(), diffs: Vec::new() };
        }
        let terms: Vec<Representation> = (x.lo..=x.hi()).map(|p| x.module_term(p)).collect();
        let diffs = (x.lo..x.hi())
            .map(|p| {
                let k = (p - x.lo) as usize;
                x.diff(p).to_module_between(&alg, &terms[k], &terms[k + 1])
            })
            .collect();
        RepComplex { alg, lo: x.lo, terms, diffs }
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn term(&self, p: i64) -> Representation {
        if p < self.lo || p > self.hi() {
            Representation::zero(&self.alg)
        } else {
            self.terms[(p - self.lo) as usize].clone()
        }
    }

    pub fn diff(&self, p: i64) -> ModMorphism {
        if p >= self.lo && p < self.hi() {
            self.diffs[(p - self.lo) as usize].clone()
        } else {
            ModMorphism::zero(&self.term(p), &self.term(p + 1))
        }
    }

    pub fn is_complex(&self) -> bool {
        self.diffs.windows(2).all(|w| w[0].then(&w[1]).is_zero())
    }

    /// Dimension vectors of the nonzero homology, by degree.
    pub fn homology_dims(&self) -> Vec<(i64, Vec<usize>)> {
        let mut out = Vec::new();
        for p in self.lo..=self.hi() {
            let (o, i) = (self.diff(p), self.diff(p - 1));
            let dims: Vec<usize> = (0..self.alg.num_vertices())
                .map(|v| o.map_at(v).cols() - o.map_at(v).rank() - i.map_at(v).rank())
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
}

/// A degree-0 chain map of module complexes; `maps[k]` is the component in degree `source.lo + k`.
#[derive(Clone, Debug)]
pub struct RepChainMap {
    pub source: RepComplex,
    pub target: RepComplex,
    pub maps: Vec<ModMorphism>,
}

impl RepChainMap {
    pub fn component(&self, p: i64) -> ModMorphism {
        if p < self.source.lo || p > self.source.hi() {
            ModMorphism::zero(&self.source.term(p), &self.target.term(p))
        } else {
            self.maps[(p - self.source.lo) as usize].clone()
        }
    }

    pub fn is_chain_map(&self) -> bool {
        (self.source.lo - 1..=self.source.hi()).all(|p| {
            self.component(p).then(&self.target.diff(p)) == self.source.diff(p).then(&self.component(p + 1))
        })
    }

    /// `cone^p = X^{p+1} ⊕ Y^p` with `d = [[-d_X, 0], [f, d_Y]]`.
    pub fn cone(&self) -> RepComplex {
        let (x, y) = (&self.source, &self.target);
        let alg = x.alg.clone();
        let lo = (x.lo - 1).min(y.lo);
        let hi = (x.hi() - 1).max(y.hi());
        let sums: Vec<_> = (lo..=hi + 1).map(|p| direct_sum(&alg, &[x.term(p + 1), y.term(p)])).collect();
        let terms: Vec<Representation> = sums[..sums.len() - 1].iter().map(|s| s.0.clone()).collect();
        let minus = exactfield::int(-1);
        let diffs = (lo..hi)
            .map(|p| {
                let k = (p - lo) as usize;
                let (_, _, pr) = &sums[k];
                let (_, inc, _) = &sums[k + 1];
                let a = pr[0].then(&x.diff(p + 1).scale(&minus)).then(&inc[0]);
                let b = pr[0].then(&self.component(p + 1)).then(&inc[1]);
                let c = pr[1].then(&y.diff(p)).then(&inc[1]);
                a.add(&b).add(&c)
            })
            .collect();
        RepComplex { alg, lo, terms, diffs }
    }
}

/// A bounded complex of projectives quasi-isomorphic to `r`, minimized.
///
/// Built from the top degree down: `P^n` covers the cycles of the partial mapping
/// cone modulo the boundaries coming from `R^{n-1}`.
pub fn proj_replace(r: &RepComplex) -> Result<ProjComplex> {
    let alg = r.alg.clone();
    if r.terms.is_empty() {
        return Ok(ProjComplex::zero(&alg));
    }
    let mut terms_rev: Vec<Vec<usize>> = Vec::new();
    let mut diffs_rev: Vec<ProjMorphism> = Vec::new();
    // data for degree n + 1
    let mut p_next: Vec<usize> = Vec::new();
    let mut d_next = ProjMorphism::zero(&alg, &[], &[]);
    let mut pi_next = ModMorphism::zero(&proj_sum(&alg, &[]), &r.term(r.hi() + 1));
    let mut n = r.hi();
    let mut steps = 0;
    loop {
        if n < r.lo && p_next.is_empty() {
            break;
        }
        steps += 1;
        if steps > RESOLUTION_CAP + r.terms.len() {
            return Err(cap_error("projective replacement length", RESOLUTION_CAP));
        }
        let pm = proj_sum(&alg, &p_next);
        let (m, m_inc, m_pr) = direct_sum(&alg, &[pm.clone(), r.term(n)]);
        let p_after = d_next.target.clone();
        let (nsum, n_inc, _) = direct_sum(&alg, &[proj_sum(&alg, &p_after), r.term(n + 1)]);
        let dp_mod = d_next.to_module_between(&alg, &pm, &proj_sum(&alg, &p_after));
        let psi = m_pr[0]
            .then(&dp_mod)
            .then(&n_inc[0])
            .add(&m_pr[0].then(&pi_next).then(&n_inc[1]))
            .add(&m_pr[1].then(&r.diff(n)).then(&n_inc[1]));
        debug_assert!(psi.target == nsum);
        let (_, incl) = psi.kernel();
        let bound = r.diff(n - 1).then(&m_inc[1]);
        let bound_in_cycles = incl.factor_through_mono(&bound).expect("boundaries are cycles");
        let (quot, q) = bound_in_cycles.cokernel();
        let cover = projective_cover(&quot);
        let verts = cover.vertices.clone();
        // lift generators through q, then split into the P^{n+1} and R^n parts
        let mut g1 = Vec::new();
        let mut g2 = Vec::new();
        for (gi, &u) in verts.iter().enumerate() {
            let gen = crate::modcat::generator_vector(&alg, &verts, gi);
            let img = cover.map.map_at(u).mul_vec(&gen);
            let lift = if q.map_at(u).cols() == 0 {
                Vec::new()
            } else {
                q.map_at(u).solve(&img).expect("quotient map is onto")
            };
            let in_m = if lift.is_empty() { exactfield::zero_vec(m.dim_at(u)) } else { incl.map_at(u).mul_vec(&lift) };
            g1.push(m_pr[0].map_at(u).mul_vec(&in_m));
            g2.push(m_pr[1].map_at(u).mul_vec(&in_m));
        }
        let d = ProjMorphism::from_images(&alg, &verts, &p_next, &g1).neg();
        let pi = from_generators(&alg, &verts, &r.term(n), &g2);
        terms_rev.push(verts.clone());
        diffs_rev.push(d.clone());
        p_next = verts;
        d_next = d;
        pi_next = pi;
        n -= 1;
    }
    // terms_rev[k] sits in degree hi - k; diffs_rev[k] leaves it
    let count = terms_rev.len();
    let lo = r.hi() - count as i64 + 1;
    let terms: Vec<Vec<usize>> = terms_rev.into_iter().rev().collect();
    let mut diffs: Vec<ProjMorphism> = diffs_rev.into_iter().rev().collect();
    // the last entry maps out of the top degree into nothing
    diffs.pop();
    Ok(ProjComplex::new(&alg, lo, terms, diffs).minimize())
}
