//! Endomorphism rings: Jacobson radical, locality, Fitting splitting and
//! randomized isomorphism witnesses.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly;
use super::{combine, hom_basis, hom_dim, mix, Morphism, Representation};
use crate::error::{Error, Result};
use crate::exactlin::{quotient_basis, Matrix};

/// Number of random trials before an isomorphism search is declared ambiguous.
pub const ISO_TRIALS: usize = 48;
const SPLIT_TRIALS: usize = 96;

pub fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix(seed ^ mix(salt)))
}

/// Summary of `End(X)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EndInfo {
    pub dim: usize,
    pub rad_dim: usize,
    /// `End(X)` is local, i.e. `X` is indecomposable.
    pub local: bool,
    /// `dim End/rad` over `F_p`; the residue field is `F_{p^r}` when local.
    pub residue_degree: usize,
}

struct EndAlgebra {
    basis: Vec<Morphism>,
    left: Matrix,
}

impl EndAlgebra {
    fn new(x: &Representation) -> EndAlgebra {
        let basis = hom_basis(x, x);
        let f = x.field();
        let len = x.dims().iter().map(|d| d * d).sum();
        let cols: Vec<Vec<u32>> = basis.iter().map(|b| b.flatten()).collect();
        let left = if cols.is_empty() {
            Matrix::zeros(f, 0, len)
        } else {
            Matrix::from_columns(f, len, &cols)
                .left_inverse()
                .expect("hom basis is independent")
        };
        EndAlgebra { basis, left }
    }

    fn coords(&self, m: &Morphism) -> Vec<u32> {
        self.left.mul_vec(&m.flatten())
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn trace(m: &Morphism) -> u32 {
    let f = m.source.field();
    let mut t = 0;
    for a in &m.mats {
        for i in 0..a.rows() {
            t = f.add(t, a.get(i, i));
        }
    }
    t
}

fn check_prime(x: &Representation) -> Result<()> {
    let p = x.field().p();
    if (p as usize) <= x.total_dim() {
        return Err(Error::PrimeTooSmall {
            p,
            needed: x.total_dim(),
        });
    }
    Ok(())
}

/// Radical via the trace form `(a, b) -> tr(ab)` on the natural module, then
/// locality via the residue algebra: local iff it is commutative and the
/// Frobenius fixed space is one-dimensional (a single field factor).
pub fn end_info(x: &Representation) -> Result<EndInfo> {
    if x.is_zero() {
        return Err(Error::Precondition(
            "zero module has no local endomorphism ring".into(),
        ));
    }
    check_prime(x)?;
    let f = x.field();
    let e = EndAlgebra::new(x);
    let n = e.dim();
    let gram = Matrix::from_fn(f, n, n, |i, j| trace(&e.basis[i].then(&e.basis[j])));
    let rad = gram.kernel_basis();
    let q = n - rad.cols();
    if q == 1 {
        return Ok(EndInfo {
            dim: n,
            rad_dim: rad.cols(),
            local: true,
            residue_degree: 1,
        });
    }
    let (proj, reps) = quotient_basis(&rad, n);
    let lifts: Vec<Morphism> = (0..q)
        .map(|a| {
            let coeffs = reps.col(a);
            combine(x, x, &e.basis, &coeffs)
        })
        .collect();
    // structure constants of End/rad
    let mut table = vec![vec![Vec::new(); q]; q];
    for a in 0..q {
        for b in 0..q {
            table[a][b] = proj.mul_vec(&e.coords(&lifts[a].then(&lifts[b])));
        }
    }
    let commutative = (0..q).all(|a| (0..q).all(|b| table[a][b] == table[b][a]));
    if !commutative {
        return Ok(EndInfo {
            dim: n,
            rad_dim: rad.cols(),
            local: false,
            residue_degree: q,
        });
    }
    let mult = |u: &[u32], v: &[u32]| -> Vec<u32> {
        let mut out = vec![0; q];
        for a in 0..q {
            if u[a] == 0 {
                continue;
            }
            for b in 0..q {
                if v[b] == 0 {
                    continue;
                }
                let c = f.mul(u[a], v[b]);
                for k in 0..q {
                    out[k] = f.add(out[k], f.mul(c, table[a][b][k]));
                }
            }
        }
        out
    };
    let p = f.p() as u64;
    let mut frob_minus_id = Matrix::zeros(f, q, q);
    for a in 0..q {
        let mut unit = vec![0; q];
        unit[a] = 1;
        let mut acc: Option<Vec<u32>> = None;
        let mut base = unit.clone();
        let mut ex = p;
        while ex > 0 {
            if ex & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(v) => mult(&v, &base),
                });
            }
            ex >>= 1;
            if ex > 0 {
                base = mult(&base, &base);
            }
        }
        let img = acc.expect("p >= 2");
        for k in 0..q {
            frob_minus_id.set(k, a, f.sub(img[k], unit[k]));
        }
    }
    let fixed = q - frob_minus_id.rank();
    Ok(EndInfo {
        dim: n,
        rad_dim: rad.cols(),
        local: fixed == 1,
        residue_degree: q,
    })
}

pub fn is_indecomposable(x: &Representation) -> Result<bool> {
    Ok(end_info(x)?.local)
}

/// One Fitting split of `x` from a random endomorphism: `None` if `x` is indecomposable.
fn split_once(x: &Representation, rng: &mut ChaCha8Rng) -> Result<Option<Vec<Representation>>> {
    if end_info(x)?.local {
        return Ok(None);
    }
    let f = x.field();
    let basis = hom_basis(x, x);
    for _ in 0..SPLIT_TRIALS {
        let coeffs: Vec<u32> = (0..basis.len()).map(|_| rng.gen_range(0..f.p())).collect();
        let phi = combine(x, x, &basis, &coeffs);
        let mut big = Matrix::zeros(f, 0, 0);
        for m in &phi.mats {
            big = big.block_diag(m);
        }
        let mp = poly::minimal_polynomial(&big);
        let factors = poly::factor(f, &mp, rng);
        if factors.len() < 2 {
            continue;
        }
        let mut parts = Vec::new();
        for (g, e) in &factors {
            let mut ge = vec![1];
            for _ in 0..*e {
                ge = poly::mul(f, &ge, g);
            }
            let bases: Vec<Matrix> = phi
                .mats
                .iter()
                .map(|m| poly::eval_matrix(f, &ge, m).kernel_basis())
                .collect();
            let (sub, _) = x.submodule(&bases)?;
            parts.push(sub);
        }
        return Ok(Some(parts));
    }
    Err(Error::Bounds(format!(
        "no splitting endomorphism found in {SPLIT_TRIALS} random trials"
    )))
}

/// Indecomposable summands of `x` by recursive Fitting decomposition.
pub fn decompose_by_splitting(x: &Representation, seed: u64) -> Result<Vec<Representation>> {
    let mut rng = rng_for(seed, x.content_hash());
    let mut out = Vec::new();
    let mut todo = vec![x.clone()];
    while let Some(m) = todo.pop() {
        if m.is_zero() {
            continue;
        }
        match split_once(&m, &mut rng)? {
            None => out.push(m),
            Some(parts) => todo.extend(parts),
        }
    }
    out.sort_by(|a, b| (a.total_dim(), a.dims()).cmp(&(b.total_dim(), b.dims())));
    Ok(out)
}

/// Tries random elements of `Hom(x, y)` for one that is invertible at every vertex.
pub fn find_isomorphism(
    x: &Representation,
    y: &Representation,
    seed: u64,
    trials: usize,
) -> Option<Morphism> {
    if x.dims() != y.dims() {
        return None;
    }
    if x.is_zero() {
        return Some(Morphism::zero(x, y));
    }
    let basis = hom_basis(x, y);
    if basis.is_empty() {
        return None;
    }
    let f = x.field();
    let mut rng = rng_for(seed, x.content_hash() ^ y.content_hash().rotate_left(17));
    for _ in 0..trials {
        let coeffs: Vec<u32> = (0..basis.len()).map(|_| rng.gen_range(0..f.p())).collect();
        let m = combine(x, y, &basis, &coeffs);
        if m.is_iso() {
            return Some(m);
        }
    }
    None
}

/// Isomorphism test without a catalog: deterministic filters on dimension
/// vectors and Hom dimensions, then random witnesses. Equal invariants with no
/// witness is reported as [`Error::Ambiguous`].
pub fn are_isomorphic(x: &Representation, y: &Representation, seed: u64) -> Result<bool> {
    if x.dims() != y.dims() {
        return Ok(false);
    }
    let hxx = hom_dim(x, x);
    if hxx != hom_dim(y, y) || hxx != hom_dim(x, y) || hxx != hom_dim(y, x) {
        return Ok(false);
    }
    if find_isomorphism(x, y, seed, ISO_TRIALS).is_some() {
        return Ok(true);
    }
    Err(Error::Ambiguous(ISO_TRIALS))
}
