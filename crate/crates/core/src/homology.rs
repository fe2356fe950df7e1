//! Projective covers, syzygies, `Ext^k` and realizations of `Ext¹` classes.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{quotient_basis, Matrix};
use crate::quiver::{projective_at, simple_at, Algebra};
use crate::rep::endo::are_isomorphic;
use crate::rep::{
    combine, hom_basis, hom_dim, kernel, pushout, IndecCatalog, Morphism, Representation,
};

/// Minimal projective cover `P -> x`, with `P = ⊕ P_v^{t_v}` and `t_v = dim top(x)_v`.
pub fn projective_cover(x: &Representation) -> (Representation, Morphism) {
    let alg = x.algebra();
    let f = x.field();
    let n = alg.num_vertices();
    let rad = x.radical_bases();
    let mut parts = Vec::new();
    let mut cols: Vec<Matrix> = (0..n).map(|w| Matrix::zeros(f, x.dims()[w], 0)).collect();
    for v in 0..n {
        let (_, reps) = quotient_basis(&rad[v], x.dims()[v]);
        for j in 0..reps.cols() {
            let gen = reps.col(j);
            parts.push(projective_at(alg, v));
            for (w, c) in cols.iter_mut().enumerate() {
                let images: Vec<Vec<u32>> = alg
                    .residue_paths(v, w)
                    .iter()
                    .map(|q| x.eval_path(q).mul_vec(&gen))
                    .collect();
                *c = c.hstack(&Matrix::from_columns(f, x.dims()[w], &images));
            }
        }
    }
    let p = Representation::direct_sum_all(alg, parts.iter());
    let epi = Morphism::new(&p, x, cols).expect("generators define a morphism");
    (p, epi)
}

/// Kernel of the projective cover.
pub fn syzygy(x: &Representation) -> Representation {
    let (_, epi) = projective_cover(x);
    kernel(&epi).0
}

pub fn is_projective(x: &Representation) -> bool {
    syzygy(x).is_zero()
}

/// `dim Ext^k(z, x)` via dimension shifting along minimal syzygies.
pub fn ext_dim(k: usize, z: &Representation, x: &Representation) -> usize {
    assert!(k >= 1, "ext_dim needs k >= 1");
    let mut z = z.clone();
    for _ in 1..k {
        z = syzygy(&z);
        if z.is_zero() {
            return 0;
        }
    }
    let (p0, epi) = projective_cover(&z);
    let (omega, _) = kernel(&epi);
    hom_dim(&omega, x) + hom_dim(&z, x) - hom_dim(&p0, x)
}

/// `max { k : Ω^k x ≠ 0 }`, and 0 for the zero module.
pub fn projective_dimension(x: &Representation) -> usize {
    let mut k = 0;
    let mut z = syzygy(x);
    while !z.is_zero() {
        k += 1;
        z = syzygy(&z);
    }
    k
}

pub fn global_dimension(alg: &Arc<Algebra>) -> usize {
    (0..alg.num_vertices())
        .map(|v| projective_dimension(&simple_at(alg, v)))
        .max()
        .unwrap_or(0)
}

/// `Ext¹(z, x)` as `Hom(Ωz, x)` modulo maps factoring through the projective cover.
pub struct Ext1Space {
    pub z: Representation,
    pub x: Representation,
    pub p0: Representation,
    /// `P0 -> z`
    pub cover: Morphism,
    /// `Ωz -> P0`
    pub iota: Morphism,
    /// Cocycles `Ωz -> x` whose classes form a basis of `Ext¹(z, x)`.
    pub basis: Vec<Morphism>,
}

/// An extension `0 -> x -> e -> z -> 0`.
#[derive(Clone, Debug)]
pub struct ShortExact {
    pub inflation: Morphism,
    pub deflation: Morphism,
}

impl ShortExact {
    pub fn left(&self) -> &Representation {
        &self.inflation.source
    }

    pub fn middle(&self) -> &Representation {
        &self.inflation.target
    }

    pub fn right(&self) -> &Representation {
        &self.deflation.target
    }

    /// Mono, epi, composite zero and dimension count.
    pub fn is_exact(&self) -> bool {
        if !self.inflation.is_valid() || !self.deflation.is_valid() {
            return false;
        }
        let dims_ok = (0..self.middle().dims().len())
            .all(|v| self.left().dims()[v] + self.right().dims()[v] == self.middle().dims()[v]);
        dims_ok
            && self.inflation.is_mono()
            && self.deflation.is_epi()
            && self.inflation.then(&self.deflation).is_zero()
    }
}

impl Ext1Space {
    pub fn new(z: &Representation, x: &Representation) -> Ext1Space {
        let (p0, cover) = projective_cover(z);
        let (omega, iota) = kernel(&cover);
        let homs = hom_basis(&omega, x);
        let f = x.field();
        let len = omega.dims().iter().zip(x.dims()).map(|(a, b)| a * b).sum();
        let basis = if homs.is_empty() {
            vec![]
        } else {
            let cols: Vec<Vec<u32>> = homs.iter().map(|h| h.flatten()).collect();
            let hm = Matrix::from_columns(f, len, &cols);
            // coboundaries g ∘ iota, in coordinates of the Hom basis
            let bcols: Vec<Vec<u32>> = hom_basis(&p0, x)
                .iter()
                .map(|g| {
                    hm.solve(&iota.then(g).flatten())
                        .expect("restrictions lie in Hom(Ωz, x)")
                })
                .collect();
            let b = Matrix::from_columns(f, homs.len(), &bcols);
            let (_, reps) = quotient_basis(&b, homs.len());
            (0..reps.cols())
                .map(|j| combine(&omega, x, &homs, &reps.col(j)))
                .collect()
        };
        Ext1Space {
            z: z.clone(),
            x: x.clone(),
            p0,
            cover,
            iota,
            basis,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The extension whose class has the given coordinates.
    pub fn extension(&self, coeffs: &[u32]) -> ShortExact {
        let omega = &self.iota.source;
        let xi = combine(omega, &self.x, &self.basis, coeffs);
        let (e, infl, from_p0) = pushout(&xi, &self.iota);
        // deflation: induced by (0, cover) on x ⊕ P0; solve d ∘ from_p0 = cover and d ∘ infl = 0
        let f = self.x.field();
        let mats = (0..e.dims().len())
            .map(|v| {
                let q = infl.mats[v].hstack(&from_p0.mats[v]);
                let g = Matrix::zeros(f, self.z.dims()[v], self.x.dims()[v])
                    .hstack(&self.cover.mats[v]);
                if e.dims()[v] == 0 {
                    return Matrix::zeros(f, self.z.dims()[v], 0);
                }
                q.transpose()
                    .solve_matrix(&g.transpose())
                    .expect("deflation factors through the pushout")
                    .transpose()
            })
            .collect();
        let deflation = Morphism::new(&e, &self.z, mats).expect("induced deflation is a morphism");
        ShortExact {
            inflation: infl,
            deflation,
        }
    }

    /// Every class, as coefficient vectors, in lexicographic order.
    pub fn classes(&self, cap: u64) -> Result<Vec<Vec<u32>>> {
        let p = self.x.field().p() as u64;
        let e = self.dim() as u32;
        let count = p.checked_pow(e).filter(|&c| c <= cap);
        let Some(count) = count else {
            return Err(Error::Bounds(format!(
                "{p}^{e} extension classes exceed the cap {cap}"
            )));
        };
        Ok((0..count)
            .map(|mut i| {
                (0..self.dim())
                    .map(|_| {
                        let d = (i % p) as u32;
                        i /= p;
                        d
                    })
                    .collect()
            })
            .collect())
    }
}

/// Middle terms of all extensions `0 -> x -> e -> z -> 0`, up to isomorphism.
pub fn ext1_middle_terms(
    z: &Representation,
    x: &Representation,
    cap: u64,
    seed: u64,
) -> Result<Vec<Representation>> {
    let space = Ext1Space::new(z, x);
    let mut out: Vec<Representation> = Vec::new();
    for c in space.classes(cap)? {
        let e = space.extension(&c).middle().clone();
        let mut seen = false;
        for o in &out {
            if are_isomorphic(o, &e, seed)? {
                seen = true;
                break;
            }
        }
        if !seen {
            out.push(e);
        }
    }
    Ok(out)
}

/// As [`ext1_middle_terms`], with middle terms decomposed over a catalog.
pub fn ext1_middle_multisets(
    cat: &IndecCatalog,
    z: &Representation,
    x: &Representation,
    cap: u64,
) -> Result<Vec<Vec<usize>>> {
    let space = Ext1Space::new(z, x);
    let mut out: Vec<Vec<usize>> = Vec::new();
    for c in space.classes(cap)? {
        let m = cat.decompose(space.extension(&c).middle())?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    out.sort();
    Ok(out)
}

/// `Σ_k (-1)^k (dim Ext^k(t,a) - dim Ext^k(t,b) + dim Ext^k(t,c))` for `0 <= k <= top`
/// (with `Ext^0 = Hom`); zero for every short exact sequence once `top` reaches the global dimension.
pub fn les_alternating_sum(t: &Representation, ses: &ShortExact, top: usize) -> i64 {
    let d = |k: usize, m: &Representation| -> i64 {
        if k == 0 {
            hom_dim(t, m) as i64
        } else {
            ext_dim(k, t, m) as i64
        }
    };
    let mut s = 0;
    for k in 0..=top {
        let term = d(k, ses.left()) - d(k, ses.middle()) + d(k, ses.right());
        s += if k % 2 == 0 { term } else { -term };
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::tests::{a2, square};
    use crate::quiver::{injective_at, parse_algebra};

    #[test]
    fn covers_and_syzygies() {
        let a = a2();
        let (s1, s2, p1) = (simple_at(&a, 0), simple_at(&a, 1), projective_at(&a, 0));
        let (p, epi) = projective_cover(&p1);
        assert_eq!(p.dims(), p1.dims());
        assert!(epi.is_iso());
        let (p, epi) = projective_cover(&s1);
        assert_eq!(p.dims(), &[1, 1]);
        assert!(epi.is_epi());
        let (p, _) = projective_cover(&Representation::zero(&a));
        assert!(p.is_zero());
        assert!(syzygy(&p1).is_zero());
        assert_eq!(syzygy(&s1).dims(), s2.dims());
        assert!(syzygy(&s2).is_zero());
    }

    #[test]
    fn ext_examples() {
        let a = a2();
        let (s1, s2, p1) = (simple_at(&a, 0), simple_at(&a, 1), projective_at(&a, 0));
        assert_eq!(ext_dim(1, &s1, &s2), 1);
        assert_eq!(ext_dim(1, &s2, &s1), 0);
        assert_eq!(ext_dim(1, &p1, &s2), 0);
        for m in [&s1, &s2, &p1] {
            for n in [&s1, &s2, &p1] {
                assert_eq!(ext_dim(2, m, n), 0);
            }
        }
    }

    #[test]
    fn middle_terms() {
        let a = a2();
        let (s1, s2) = (simple_at(&a, 0), simple_at(&a, 1));
        let terms = ext1_middle_terms(&s1, &s2, 10_000, 3).unwrap();
        let dims: Vec<usize> = terms.iter().map(|t| crate::rep::hom_dim(t, t)).collect();
        assert_eq!(terms.len(), 2);
        // the split S1 ⊕ S2 has a 2-dimensional endomorphism ring, P1 a 1-dimensional one
        assert!(dims.contains(&2) && dims.contains(&1));
        assert_eq!(ext1_middle_terms(&s2, &s1, 10_000, 3).unwrap().len(), 1);
        let space = Ext1Space::new(&s1, &s2);
        for c in space.classes(1000).unwrap() {
            assert!(space.extension(&c).is_exact());
        }
        assert!(matches!(space.classes(50), Err(Error::Bounds(_))));
    }

    #[test]
    fn global_dimensions() {
        assert_eq!(global_dimension(&a2()), 1);
        assert_eq!(global_dimension(&square()), 2);
        let pt = parse_algebra(r#"{"vertices":["x"],"arrows":[]}"#).unwrap();
        assert_eq!(global_dimension(&pt), 0);
    }

    #[test]
    fn square_ext2_between_simples() {
        let b = square();
        // the commutativity relation gives Ext²(S1, S4) ≠ 0
        assert_eq!(ext_dim(2, &simple_at(&b, 0), &simple_at(&b, 3)), 1);
        assert_eq!(ext_dim(1, &injective_at(&b, 3), &simple_at(&b, 0)), 0);
    }
}
