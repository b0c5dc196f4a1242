use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactfield::{self, Mat, Scalar};
use super::hom::hom_basis;
use super::rep::{direct_sum, row_morphism, ModMorphism, Representation};

/// Coefficient vectors (in the given basis) spanning the radical of the algebra
/// of endomorphisms `basis`, via the trace form `(x, y) |-> tr(x y)`.
pub fn trace_radical(basis: &[Mat]) -> Vec<Vec<Scalar>> {
    let n = basis.len();
    if n == 0 {
        return Vec::new();
    }
    trace_form(basis).kernel_basis()
}

pub fn trace_form(basis: &[Mat]) -> Mat {
    let n = basis.len();
    let mut t = Mat::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = (&basis[i] * &basis[j]).trace();
            t.set(i, j, v.clone());
            t.set(j, i, v);
        }
    }
    t
}

/// Basis of `End(m)` together with the radical, as total-space matrices.
pub struct EndoData {
    pub basis: Vec<ModMorphism>,
    pub radical: Vec<ModMorphism>,
}

impl EndoData {
    pub fn top_dim(&self) -> usize {
        self.basis.len() - self.radical.len()
    }
}

pub fn endo_data(m: &Representation) -> EndoData {
    let basis = hom_basis(m, m);
    let mats: Vec<Mat> = basis.iter().map(ModMorphism::total_matrix).collect();
    let radical = trace_radical(&mats)
        .iter()
        .map(|c| combine(&basis, c).unwrap_or_else(|| ModMorphism::zero(m, m)))
        .collect();
    EndoData { basis, radical }
}

/// `sum_i c_i f_i`
pub fn combine(fs: &[ModMorphism], c: &[Scalar]) -> Option<ModMorphism> {
    let mut acc: Option<ModMorphism> = None;
    for (f, ci) in fs.iter().zip(c) {
        if ci.is_zero() {
            continue;
        }
        let t = f.scale(ci);
        acc = Some(match acc {
            None => t,
            Some(a) => a.add(&t),
        });
    }
    acc.or_else(|| fs.first().map(|f| ModMorphism::zero(&f.source, &f.target)))
}

/// Indecomposable with `End/rad = k`.
pub fn is_indecomposable(m: &Representation) -> bool {
    !m.is_zero() && endo_data(m).top_dim() == 1
}

/// Whether two indecomposables are isomorphic: some composite `Y -> X -> Y` has nonzero trace.
pub fn indecomposables_isomorphic(x: &Representation, y: &Representation) -> bool {
    if x.dims() != y.dims() {
        return false;
    }
    let fs = hom_basis(x, y);
    if fs.is_empty() {
        return false;
    }
    let gs = hom_basis(y, x);
    fs.iter().any(|f| gs.iter().any(|g| !f.then(g).trace().is_zero()))
}

/// Multiplicity of the indecomposable `x` as a summand of `m`: the rank of the
/// trace pairing `Hom(m, x) x Hom(x, m) -> k`.
pub fn multiplicity(x: &Representation, m: &Representation) -> usize {
    let fs = hom_basis(x, m);
    let gs = hom_basis(m, x);
    if fs.is_empty() || gs.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Scalar>> = gs.iter().map(|g| fs.iter().map(|f| f.then(g).trace()).collect()).collect();
    Mat::from_rows(rows).rank()
}

/// Krull-Schmidt decomposition with an explicit isomorphism.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// Representatives of the isomorphism classes with multiplicities, in canonical order.
    pub summands: Vec<(Representation, usize)>,
    /// The individual summands in the order used by `iso`.
    pub pieces: Vec<Representation>,
    /// `iso : ⊕ pieces -> m`
    pub iso: ModMorphism,
}

pub fn decompose(m: &Representation) -> Result<Decomposition> {
    let alg = m.algebra().clone();
    let mut pieces: Vec<(Representation, ModMorphism)> = Vec::new();
    split(m, m.identity(), &mut pieces)?;
    pieces.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    let reps: Vec<Representation> = pieces.iter().map(|(r, _)| r.clone()).collect();
    let (sum, _, _) = direct_sum(&alg, &reps);
    let iso = row_morphism(&sum, m, &pieces.iter().map(|(_, i)| i.clone()).collect::<Vec<_>>());
    debug_assert!(iso.is_iso());
    let mut summands: Vec<(Representation, usize)> = Vec::new();
    for r in &reps {
        if let Some(entry) = summands.iter_mut().find(|(s, _)| indecomposables_isomorphic(s, r)) {
            entry.1 += 1;
        } else {
            summands.push((r.clone(), 1));
        }
    }
    Ok(Decomposition { summands, pieces: reps, iso })
}

fn split(m: &Representation, incl: ModMorphism, out: &mut Vec<(Representation, ModMorphism)>) -> Result<()> {
    if m.is_zero() {
        return Ok(());
    }
    let end = endo_data(m);
    if end.top_dim() == 1 {
        out.push((m.clone(), incl));
        return Ok(());
    }
    let y = find_splitting_element(m, &end).ok_or_else(|| {
        Error::UnsupportedAlgebraClass(
            "endomorphism algebra has a non-split semisimple quotient over the rationals".into(),
        )
    })?;
    let n = m.total_dim();
    let yn = y.total_matrix().pow(n);
    let ymod = ModMorphism::from_total(m, m, &yn);
    let (img, img_incl) = ymod.image();
    let (ker, ker_incl) = ymod.kernel();
    split(&img, img_incl.then(&incl), out)?;
    split(&ker, ker_incl.then(&incl), out)
}

/// An endomorphism that is neither nilpotent nor invertible, so its Fitting
/// decomposition is proper.
fn find_splitting_element(m: &Representation, end: &EndoData) -> Option<ModMorphism> {
    let n = m.total_dim();
    let proper = |f: &ModMorphism| {
        let r = f.total_matrix().pow(n).rank();
        r > 0 && r < n
    };
    let mats: Vec<Mat> = end.basis.iter().map(ModMorphism::total_matrix).collect();
    for f in &end.basis {
        if proper(f) {
            return Some(f.clone());
        }
    }
    for (f, mat) in end.basis.iter().zip(&mats) {
        for lambda in rational_eigenvalues(mat) {
            let g = f.add(&m.identity().scale(&-lambda));
            if proper(&g) {
                return Some(g);
            }
        }
    }
    for i in 0..end.basis.len() {
        for j in i + 1..end.basis.len() {
            let g = end.basis[i].add(&end.basis[j]);
            if proper(&g) {
                return Some(g);
            }
            for lambda in rational_eigenvalues(&g.total_matrix()) {
                let h = g.add(&m.identity().scale(&-lambda));
                if proper(&h) {
                    return Some(h);
                }
            }
        }
    }
    None
}

/// Characteristic polynomial coefficients `c_0..c_n` (monic, `c_n = 1`) by Faddeev-LeVerrier.
pub fn characteristic_polynomial(a: &Mat) -> Vec<Scalar> {
    let n = a.rows();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut m = Mat::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        m = &(a * &m) + &Mat::scalar(n, &coeffs[n - k + 1]);
        let am = a * &m;
        coeffs[n - k] = -am.trace() / exactfield::int(k as i64);
    }
    coeffs
}

/// Rational roots of the characteristic polynomial, found with the rational root theorem.
pub fn rational_eigenvalues(a: &Mat) -> Vec<Scalar> {
    let mut coeffs = characteristic_polynomial(a);
    let mut roots = Vec::new();
    while coeffs.len() > 1 && coeffs[0].is_zero() {
        coeffs.remove(0);
        if !roots.contains(&Scalar::zero()) {
            roots.push(Scalar::zero());
        }
    }
    if coeffs.len() <= 1 {
        return roots;
    }
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * Scalar::from_integer(lcm.clone())).to_integer()).collect();
    let (a0, an) = (ints[0].abs(), ints.last().unwrap().abs());
    let limit = BigInt::from(1_000_000_000_000i64);
    if a0 > limit || an > limit {
        return roots;
    }
    let divisors = |x: &BigInt| -> Vec<BigInt> {
        let mut out = Vec::new();
        let mut d = BigInt::one();
        while &d * &d <= *x {
            if (x % &d).is_zero() {
                out.push(d.clone());
                out.push(x / &d);
            }
            d += 1;
        }
        out
    };
    for p in divisors(&a0) {
        for q in divisors(&an) {
            for sign in [1i64, -1] {
                let cand = Scalar::new(p.clone() * sign, q.clone());
                if roots.contains(&cand) {
                    continue;
                }
                let mut val = Scalar::zero();
                for c in coeffs.iter().rev() {
                    val = val * &cand + c;
                }
                if val.is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Whether two arbitrary modules are isomorphic, by comparing decompositions.
pub fn is_isomorphic(m: &Representation, n: &Representation) -> Result<bool> {
    if m.dims() != n.dims() {
        return Ok(false);
    }
    let dm = decompose(m)?;
    Ok(dm.summands.iter().all(|(x, k)| multiplicity(x, n) == *k))
}

/// The canonical sort of a list of pairwise non-isomorphic modules.
pub fn sort_canonical(list: &mut [Representation]) {
    list.sort_by(|a, b| a.canonical_cmp(b));
}

/// Index in `list` of the module isomorphic to the indecomposable `x`.
pub fn find_iso(list: &[Representation], x: &Representation) -> Option<usize> {
    list.iter().position(|y| indecomposables_isomorphic(y, x))
}

/// `End(m)` as a structure-constant algebra; the basis is `hom_basis(m, m)`
/// and the product is composition, `b_i b_j = b_i ∘ b_j`.
pub fn endo_algebra(m: &Representation) -> (crate::quivalg::StructureAlgebra, Vec<ModMorphism>) {
    let basis = hom_basis(m, m);
    let n = basis.len();
    let flat: Vec<Vec<Scalar>> = basis.iter().map(ModMorphism::flatten).collect();
    let len = m.identity().flat_len();
    let coords = |f: &ModMorphism| -> Vec<Scalar> {
        exactfield::coordinates(len, &flat, &f.flatten()).expect("composite of endomorphisms is an endomorphism")
    };
    let mult = (0..n).map(|i| (0..n).map(|j| coords(&basis[j].then(&basis[i]))).collect()).collect();
    let unit = if n == 0 { Vec::new() } else { coords(&m.identity()) };
    let labels = (0..n).map(|i| format!("g{i}")).collect();
    (crate::quivalg::StructureAlgebra { labels, mult, unit }, basis)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::modcat::rep::{injective, proj_sum, projective, simple};
    use crate::quivalg::{build_algebra, nakayama_spec};

    use crate::quivalg::AlgRef;

    fn fixture() -> AlgRef {
        Arc::new(build_algebra(&nakayama_spec(3, 2, 2)).unwrap())
    }

    #[test]
    fn regular_module_decomposes_into_projectives() {
        let a = fixture();
        let phi = proj_sum(&a, &[0, 1, 2]);
        let d = decompose(&phi).unwrap();
        assert!(d.iso.is_iso());
        assert_eq!(d.summands.len(), 3);
        assert!(d.summands.iter().all(|(_, k)| *k == 1));
        let dims: Vec<Vec<usize>> = d.summands.iter().map(|(r, _)| r.dim_vector()).collect();
        assert_eq!(dims, vec![vec![1, 0, 0], vec![1, 1, 0], vec![0, 1, 1]]);
    }

    #[test]
    fn doubled_projective() {
        let a = fixture();
        let f2 = projective(&a, 1);
        let (m, _, _) = direct_sum(&a, &[f2.clone(), f2.clone()]);
        let d = decompose(&m).unwrap();
        assert_eq!(d.summands.len(), 1);
        assert_eq!(d.summands[0].1, 2);
        assert_eq!(multiplicity(&f2, &m), 2);
    }

    #[test]
    fn indecomposable_is_its_own_decomposition() {
        let a = fixture();
        let f4 = injective(&a, 2);
        let d = decompose(&f4).unwrap();
        assert_eq!(d.summands.len(), 1);
        assert_eq!(d.summands[0].1, 1);
        assert!(indecomposables_isomorphic(&d.summands[0].0, &f4));
    }

    #[test]
    fn triple_simple() {
        let a = fixture();
        let s = simple(&a, 1);
        let (m, _, _) = direct_sum(&a, &[s.clone(), s.clone(), s]);
        let d = decompose(&m).unwrap();
        assert_eq!(d.summands[0].1, 3);
    }

    #[test]
    fn end_dimensions() {
        let a = fixture();
        let (f1, f2, f3) = (projective(&a, 0), projective(&a, 1), projective(&a, 2));
        assert_eq!(endo_algebra(&f1).0.dim(), 1);
        let (m, _, _) = direct_sum(&a, &[f2.clone(), f2]);
        assert_eq!(endo_algebra(&m).0.dim(), 4);
        let (m, _, _) = direct_sum(&a, &[f1, f3.clone(), f3]);
        let (e, _) = endo_algebra(&m);
        assert_eq!(e.dim(), 5);
        assert_eq!(e.associativity_witness(), None);
        assert!(e.unit_law_holds());
    }

    #[test]
    fn rational_roots() {
        let m = Mat::from_i64(&[&[2, 1], &[0, -3]]);
        assert_eq!(rational_eigenvalues(&m), vec![exactfield::int(-3), exactfield::int(2)]);
        let rot = Mat::from_i64(&[&[0, -1], &[1, 0]]);
        assert!(rational_eigenvalues(&rot).is_empty());
    }
}
