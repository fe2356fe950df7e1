//! Representations of bound quivers, morphisms between them, and the basic
//! abelian-category constructions (Hom, kernels, cokernels, sums, pullbacks).

pub mod catalog;
pub mod endo;
pub mod enumerate;
pub mod poly;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{quotient_basis, Fp, Matrix};
use crate::quiver::{Algebra, Path};

pub use catalog::IndecCatalog;
pub use endo::{are_isomorphic, decompose_by_splitting, end_info, is_indecomposable, EndInfo};
pub use enumerate::{enumerate_indecomposables, EnumConfig};

/// A finite-dimensional module: one vector space per vertex and one matrix per arrow.
#[derive(Clone)]
pub struct Representation {
    alg: Arc<Algebra>,
    dims: Vec<usize>,
    mats: Vec<Matrix>,
}

impl std::fmt::Debug for Representation {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(out, "Rep{:?}", self.dims)?;
        for (a, m) in self.mats.iter().enumerate() {
            write!(out, " {}={:?}", self.alg.arrow(a).name, m)?;
        }
        Ok(())
    }
}

impl PartialEq for Representation {
    /// Equality of the concrete data (same basis), not isomorphism.
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) && self.dims == other.dims && self.mats == other.mats
    }
}

impl Representation {
    pub fn new(alg: &Arc<Algebra>, dims: Vec<usize>, mats: Vec<Matrix>) -> Result<Representation> {
        let r = Representation::new_unchecked(alg, dims, mats)?;
        for (i, rel) in alg.relations().iter().enumerate() {
            let mut acc: Option<Matrix> = None;
            for (c, path) in &rel.terms {
                let m = r.eval_arrows(path).scale(*c);
                acc = Some(match acc {
                    None => m,
                    Some(a) => a.add(&m),
                });
            }
            if acc.is_some_and(|m| !m.is_zero()) {
                return Err(Error::Input(format!("relation {i} does not hold")));
            }
        }
        Ok(r)
    }

    /// Checks shapes only; relations are the caller's responsibility.
    pub fn new_unchecked(
        alg: &Arc<Algebra>,
        dims: Vec<usize>,
        mats: Vec<Matrix>,
    ) -> Result<Representation> {
        if dims.len() != alg.num_vertices() || mats.len() != alg.num_arrows() {
            return Err(Error::Input(
                "representation data does not match the quiver".into(),
            ));
        }
        let f = alg.field();
        for (a, m) in mats.iter().enumerate() {
            let arr = alg.arrow(a);
            if m.shape() != (dims[arr.target], dims[arr.source]) || m.field() != f {
                return Err(Error::Input(format!(
                    "matrix for arrow {} has the wrong shape",
                    arr.name
                )));
            }
        }
        Ok(Representation {
            alg: alg.clone(),
            dims,
            mats,
        })
    }

    pub fn zero_maps(alg: &Arc<Algebra>, dims: Vec<usize>) -> Representation {
        let f = alg.field();
        let mats = (0..alg.num_arrows())
            .map(|a| {
                let arr = alg.arrow(a);
                Matrix::zeros(f, dims[arr.target], dims[arr.source])
            })
            .collect();
        Representation {
            alg: alg.clone(),
            dims,
            mats,
        }
    }

    pub fn zero(alg: &Arc<Algebra>) -> Representation {
        Representation::zero_maps(alg, vec![0; alg.num_vertices()])
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn field(&self) -> Fp {
        self.alg.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn mat(&self, a: usize) -> &Matrix {
        &self.mats[a]
    }

    /// Action of the path `arrows` (first arrow applied first).
    pub fn eval_arrows(&self, arrows: &[usize]) -> Matrix {
        let first = self.alg.arrow(arrows[0]).source;
        let mut acc = Matrix::identity(self.field(), self.dims[first]);
        for &a in arrows {
            acc = self.mats[a].mul(&acc);
        }
        acc
    }

    pub fn eval_path(&self, p: &Path) -> Matrix {
        if p.arrows.is_empty() {
            Matrix::identity(self.field(), self.dims[p.source])
        } else {
            self.eval_arrows(&p.arrows)
        }
    }

    pub fn direct_sum(&self, other: &Representation) -> Representation {
        assert!(
            Arc::ptr_eq(&self.alg, &other.alg),
            "modules over different algebras"
        );
        let dims = self
            .dims
            .iter()
            .zip(&other.dims)
            .map(|(a, b)| a + b)
            .collect();
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        Representation {
            alg: self.alg.clone(),
            dims,
            mats,
        }
    }

    pub fn direct_sum_all<'a>(
        alg: &Arc<Algebra>,
        parts: impl IntoIterator<Item = &'a Representation>,
    ) -> Representation {
        let mut acc = Representation::zero(alg);
        for p in parts {
            acc = acc.direct_sum(p);
        }
        acc
    }

    /// Dimension of the radical `sum of images of incoming arrows` at each vertex.
    pub fn radical_dims(&self) -> Vec<usize> {
        self.radical_bases().iter().map(|b| b.cols()).collect()
    }

    pub fn radical_bases(&self) -> Vec<Matrix> {
        let f = self.field();
        (0..self.dims.len())
            .map(|w| {
                let mut span = Matrix::zeros(f, self.dims[w], 0);
                for (a, m) in self.mats.iter().enumerate() {
                    if self.alg.arrow(a).target == w {
                        span = span.hstack(m);
                    }
                }
                span.column_space()
            })
            .collect()
    }

    /// The submodule spanned by the given per-vertex column bases, which must
    /// be linearly independent and stable under the arrows.
    pub fn submodule(&self, bases: &[Matrix]) -> Result<(Representation, Morphism)> {
        let f = self.field();
        let mut left = Vec::new();
        for b in bases {
            left.push(if b.cols() == 0 {
                Matrix::zeros(f, 0, b.rows())
            } else {
                b.left_inverse()
                    .ok_or_else(|| Error::Internal("submodule basis is dependent".into()))?
            });
        }
        let dims: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
        let mut mats = Vec::new();
        for (a, m) in self.mats.iter().enumerate() {
            let arr = self.alg.arrow(a);
            let image = m.mul(&bases[arr.source]);
            let coords = left[arr.target].mul(&image);
            if bases[arr.target].mul(&coords) != image {
                return Err(Error::Internal("subspaces are not a submodule".into()));
            }
            mats.push(coords);
        }
        let sub = Representation {
            alg: self.alg.clone(),
            dims,
            mats,
        };
        let incl = Morphism {
            source: sub.clone(),
            target: self.clone(),
            mats: bases.to_vec(),
        };
        Ok((sub, incl))
    }

    /// Applies a change of basis: the result is isomorphic via `t`, with `t_v` invertible.
    pub fn conjugate(&self, t: &[Matrix]) -> Representation {
        let mats = self
            .mats
            .iter()
            .enumerate()
            .map(|(a, m)| {
                let arr = self.alg.arrow(a);
                t[arr.target]
                    .mul(m)
                    .mul(&t[arr.source].inverse().expect("invertible base change"))
            })
            .collect();
        Representation {
            alg: self.alg.clone(),
            dims: self.dims.clone(),
            mats,
        }
    }

    /// The same data viewed over another algebra with an identical quiver.
    pub fn rebase(&self, alg: &Arc<Algebra>) -> Result<Representation> {
        Representation::new(alg, self.dims.clone(), self.mats.clone())
    }

    /// A cheap content hash used to derive per-object random seeds.
    pub fn content_hash(&self) -> u64 {
        let mut h = 0x9e37_79b9_7f4a_7c15u64;
        for &d in &self.dims {
            h = mix(h ^ d as u64);
        }
        for m in &self.mats {
            for &x in m.data() {
                h = mix(h ^ x as u64);
            }
        }
        h
    }
}

/// splitmix64 finalizer
pub(crate) fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A module homomorphism, one matrix per vertex.
#[derive(Clone, Debug)]
pub struct Morphism {
    pub source: Representation,
    pub target: Representation,
    pub mats: Vec<Matrix>,
}

impl Morphism {
    pub fn new(
        source: &Representation,
        target: &Representation,
        mats: Vec<Matrix>,
    ) -> Result<Morphism> {
        let m = Morphism {
            source: source.clone(),
            target: target.clone(),
            mats,
        };
        if !m.is_valid() {
            return Err(Error::Input(
                "matrices do not intertwine the arrow actions".into(),
            ));
        }
        Ok(m)
    }

    pub fn is_valid(&self) -> bool {
        let (x, y) = (&self.source, &self.target);
        if self.mats.len() != x.dims.len() {
            return false;
        }
        for (v, m) in self.mats.iter().enumerate() {
            if m.shape() != (y.dims[v], x.dims[v]) {
                return false;
            }
        }
        for a in 0..x.alg.num_arrows() {
            let arr = x.alg.arrow(a);
            if self.mats[arr.target].mul(&x.mats[a]) != y.mats[a].mul(&self.mats[arr.source]) {
                return false;
            }
        }
        true
    }

    pub fn identity(x: &Representation) -> Morphism {
        let f = x.field();
        let mats = x.dims.iter().map(|&d| Matrix::identity(f, d)).collect();
        Morphism {
            source: x.clone(),
            target: x.clone(),
            mats,
        }
    }

    pub fn zero(x: &Representation, y: &Representation) -> Morphism {
        let f = x.field();
        let mats = x
            .dims
            .iter()
            .zip(&y.dims)
            .map(|(&dx, &dy)| Matrix::zeros(f, dy, dx))
            .collect();
        Morphism {
            source: x.clone(),
            target: y.clone(),
            mats,
        }
    }

    /// `other ∘ self`
    pub fn then(&self, other: &Morphism) -> Morphism {
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| b.mul(a))
            .collect();
        Morphism {
            source: self.source.clone(),
            target: other.target.clone(),
            mats,
        }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| a.add(b))
            .collect();
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            mats,
        }
    }

    pub fn scale(&self, c: u32) -> Morphism {
        let mats = self.mats.iter().map(|a| a.scale(c)).collect();
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            mats,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(|m| m.is_zero())
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.mats.iter().map(|m| m.rank()).collect()
    }

    pub fn is_mono(&self) -> bool {
        self.ranks()
            .iter()
            .zip(&self.source.dims)
            .all(|(r, d)| r == d)
    }

    pub fn is_epi(&self) -> bool {
        self.ranks()
            .iter()
            .zip(&self.target.dims)
            .all(|(r, d)| r == d)
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    /// Flattened coordinates, vertex by vertex in row-major order.
    pub fn flatten(&self) -> Vec<u32> {
        self.mats
            .iter()
            .flat_map(|m| m.data().iter().copied())
            .collect()
    }
}

/// Linear system whose kernel is `Hom(x, y)`; unknowns are the entries of
/// every `F_v`, row-major, vertex after vertex.
fn hom_system(x: &Representation, y: &Representation) -> (Matrix, Vec<usize>) {
    assert!(
        Arc::ptr_eq(&x.alg, &y.alg),
        "modules over different algebras"
    );
    let f = x.field();
    let n = x.dims.len();
    let mut offset = vec![0; n + 1];
    for v in 0..n {
        offset[v + 1] = offset[v] + y.dims[v] * x.dims[v];
    }
    let unknowns = offset[n];
    let mut rows: Vec<u32> = Vec::new();
    let mut nrows = 0;
    for a in 0..x.alg.num_arrows() {
        let arr = x.alg.arrow(a);
        let (s, t) = (arr.source, arr.target);
        let (xa, ya) = (&x.mats[a], &y.mats[a]);
        // (F_t X_a - Y_a F_s)[i][j] = 0
        for i in 0..y.dims[t] {
            for j in 0..x.dims[s] {
                let mut row = vec![0u32; unknowns];
                for k in 0..x.dims[t] {
                    let c = xa.get(k, j);
                    if c != 0 {
                        let idx = offset[t] + i * x.dims[t] + k;
                        row[idx] = f.add(row[idx], c);
                    }
                }
                for k in 0..y.dims[s] {
                    let c = ya.get(i, k);
                    if c != 0 {
                        let idx = offset[s] + k * x.dims[s] + j;
                        row[idx] = f.sub(row[idx], c);
                    }
                }
                rows.extend(row);
                nrows += 1;
            }
        }
    }
    (Matrix::from_vec(f, nrows, unknowns, rows), offset)
}

fn unflatten(x: &Representation, y: &Representation, offset: &[usize], v: &[u32]) -> Vec<Matrix> {
    let f = x.field();
    (0..x.dims.len())
        .map(|w| {
            Matrix::from_vec(
                f,
                y.dims[w],
                x.dims[w],
                v[offset[w]..offset[w + 1]].to_vec(),
            )
        })
        .collect()
}

/// A basis of `Hom(x, y)`.
pub fn hom_basis(x: &Representation, y: &Representation) -> Vec<Morphism> {
    let (sys, offset) = hom_system(x, y);
    let k = sys.kernel_basis();
    (0..k.cols())
        .map(|j| Morphism {
            source: x.clone(),
            target: y.clone(),
            mats: unflatten(x, y, &offset, &k.col(j)),
        })
        .collect()
}

pub fn hom_dim(x: &Representation, y: &Representation) -> usize {
    let (sys, offset) = hom_system(x, y);
    offset[offset.len() - 1] - sys.rank()
}

/// Builds a morphism from flattened coordinates (as produced by [`Morphism::flatten`]).
pub fn morphism_from_flat(x: &Representation, y: &Representation, v: &[u32]) -> Morphism {
    let n = x.dims.len();
    let mut offset = vec![0; n + 1];
    for w in 0..n {
        offset[w + 1] = offset[w] + y.dims[w] * x.dims[w];
    }
    Morphism {
        source: x.clone(),
        target: y.clone(),
        mats: unflatten(x, y, &offset, v),
    }
}

/// Linear combination `sum c_i b_i` of morphisms with common source and target.
pub fn combine(
    x: &Representation,
    y: &Representation,
    basis: &[Morphism],
    coeffs: &[u32],
) -> Morphism {
    let mut acc = Morphism::zero(x, y);
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

/// Vertexwise kernel with the induced arrow action.
pub fn kernel(f: &Morphism) -> (Representation, Morphism) {
    let bases: Vec<Matrix> = f.mats.iter().map(|m| m.kernel_basis()).collect();
    f.source.submodule(&bases).expect("kernel is a submodule")
}

/// Vertexwise cokernel with the induced arrow action.
pub fn cokernel(f: &Morphism) -> (Representation, Morphism) {
    let y = &f.target;
    let alg = y.algebra();
    let (projs, reps): (Vec<Matrix>, Vec<Matrix>) = f
        .mats
        .iter()
        .zip(&y.dims)
        .map(|(m, &d)| quotient_basis(&m.column_space(), d))
        .unzip();
    let dims: Vec<usize> = projs.iter().map(|p| p.rows()).collect();
    let mats = (0..alg.num_arrows())
        .map(|a| {
            let arr = alg.arrow(a);
            projs[arr.target].mul(&y.mats[a]).mul(&reps[arr.source])
        })
        .collect();
    let c = Representation {
        alg: alg.clone(),
        dims,
        mats,
    };
    let proj = Morphism {
        source: y.clone(),
        target: c.clone(),
        mats: projs,
    };
    (c, proj)
}

/// Vertexwise image of `f` as a submodule of the target.
pub fn image(f: &Morphism) -> (Representation, Morphism) {
    let bases: Vec<Matrix> = f.mats.iter().map(|m| m.column_space()).collect();
    f.target.submodule(&bases).expect("image is a submodule")
}

/// Canonical inclusions and projections of `x ⊕ y`.
pub struct SumMaps {
    pub sum: Representation,
    pub in1: Morphism,
    pub in2: Morphism,
    pub pr1: Morphism,
    pub pr2: Morphism,
}

pub fn direct_sum_maps(x: &Representation, y: &Representation) -> SumMaps {
    let f = x.field();
    let sum = x.direct_sum(y);
    let n = x.dims.len();
    let mut in1 = Vec::new();
    let mut in2 = Vec::new();
    let mut pr1 = Vec::new();
    let mut pr2 = Vec::new();
    for v in 0..n {
        let (a, b) = (x.dims[v], y.dims[v]);
        let id = Matrix::identity(f, a + b);
        let first: Vec<usize> = (0..a).collect();
        let second: Vec<usize> = (a..a + b).collect();
        in1.push(id.select_cols(&first));
        in2.push(id.select_cols(&second));
        pr1.push(id.select_rows(&first));
        pr2.push(id.select_rows(&second));
    }
    SumMaps {
        in1: Morphism {
            source: x.clone(),
            target: sum.clone(),
            mats: in1,
        },
        in2: Morphism {
            source: y.clone(),
            target: sum.clone(),
            mats: in2,
        },
        pr1: Morphism {
            source: sum.clone(),
            target: x.clone(),
            mats: pr1,
        },
        pr2: Morphism {
            source: sum.clone(),
            target: y.clone(),
            mats: pr2,
        },
        sum,
    }
}

/// Morphism `x -> y1 ⊕ y2` with components `f` and `g`.
pub fn pair_into(f: &Morphism, g: &Morphism) -> Morphism {
    let s = direct_sum_maps(&f.target, &g.target);
    f.then(&s.in1).add(&g.then(&s.in2))
}

/// Morphism `x1 ⊕ x2 -> y` restricting to `f` and `g`.
pub fn copair_from(f: &Morphism, g: &Morphism) -> Morphism {
    let s = direct_sum_maps(&f.source, &g.source);
    s.pr1.then(f).add(&s.pr2.then(g))
}

/// Pullback of `a: x -> z` and `b: y -> z`: returns `(P, P -> x, P -> y)`.
pub fn pullback(a: &Morphism, b: &Morphism) -> (Representation, Morphism, Morphism) {
    let d = copair_from(a, &b.scale(b.source.field().neg(1)));
    let (p, incl) = kernel(&d);
    let s = direct_sum_maps(&a.source, &b.source);
    (p, incl.then(&s.pr1), incl.then(&s.pr2))
}

/// Pushout of `a: z -> x` and `b: z -> y`: returns `(Q, x -> Q, y -> Q)`.
pub fn pushout(a: &Morphism, b: &Morphism) -> (Representation, Morphism, Morphism) {
    let d = pair_into(a, &b.scale(b.source.field().neg(1)));
    let (q, proj) = cokernel(&d);
    let s = direct_sum_maps(&a.target, &b.target);
    (q, s.in1.then(&proj), s.in2.then(&proj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::tests::a2;
    use crate::quiver::{projective_at, simple_at};

    #[test]
    fn hom_examples() {
        let a = a2();
        let s1 = simple_at(&a, 0);
        let s2 = simple_at(&a, 1);
        let p1 = projective_at(&a, 0);
        assert_eq!(hom_basis(&s1, &s1).len(), 1);
        assert_eq!(hom_dim(&s1, &s2), 0);
        assert_eq!(hom_dim(&p1, &s1), 1);
        assert_eq!(hom_dim(&s2, &p1), 1);
        assert_eq!(hom_dim(&p1, &s2), 0);
        for h in hom_basis(&p1, &s1) {
            assert!(h.is_valid());
        }
    }

    #[test]
    fn kernel_and_cokernel_examples() {
        let a = a2();
        let s1 = simple_at(&a, 0);
        let s2 = simple_at(&a, 1);
        let p1 = projective_at(&a, 0);
        let (k, _) = kernel(&Morphism::identity(&p1));
        assert!(k.is_zero());
        let (k, _) = kernel(&Morphism::zero(&p1, &s1));
        assert_eq!(k.dims(), p1.dims());
        let top = hom_basis(&p1, &s1).remove(0);
        let (k, incl) = kernel(&top);
        assert_eq!(k.dims(), &[0, 1]);
        assert!(incl.then(&top).is_zero());
        let (c, _) = cokernel(&Morphism::identity(&p1));
        assert!(c.is_zero());
        let (c, _) = cokernel(&Morphism::zero(&s1, &p1));
        assert_eq!(c.dims(), p1.dims());
        let sub = hom_basis(&s2, &p1).remove(0);
        let (c, proj) = cokernel(&sub);
        assert_eq!(c.dims(), &[1, 0]);
        assert!(sub.then(&proj).is_zero());
        assert!(proj.is_epi());
    }

    #[test]
    fn direct_sum_shapes() {
        let a = a2();
        let s1 = simple_at(&a, 0);
        let s2 = simple_at(&a, 1);
        let p1 = projective_at(&a, 0);
        assert_eq!(s1.direct_sum(&Representation::zero(&a)), s1);
        assert_eq!(s1.direct_sum(&s2).dims(), &[1, 1]);
        assert_eq!(p1.direct_sum(&p1).dims(), &[2, 2]);
    }

    #[test]
    fn pullback_of_epi_along_identity() {
        let a = a2();
        let p1 = projective_at(&a, 0);
        let s1 = simple_at(&a, 0);
        let top = hom_basis(&p1, &s1).remove(0);
        let (p, x, y) = pullback(&top, &Morphism::identity(&s1));
        assert_eq!(p.dims(), p1.dims());
        assert!(x.is_valid() && y.is_valid());
        assert!(x
            .then(&top)
            .add(&y.then(&Morphism::identity(&s1)).scale(100))
            .is_zero());
    }
}
