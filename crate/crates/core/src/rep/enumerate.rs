//! Exhaustive enumeration of indecomposables with bounded dimension vectors.
//!
//! Every non-simple indecomposable `M` has a simple submodule `S_v`, so it is
//! the middle term of some `0 -> S_v -> M -> N -> 0` with `N` a module of
//! smaller dimension. Writing `N = ⊕ U_i^{m_i}` over already known
//! indecomposables, the classes live in `⊕ Ext¹(U_i, S_v)^{m_i}`, and the block
//! scalars `GL_{m_i}(k) ⊆ Aut(U_i^{m_i})` act on the `m_i` components. If those
//! components are linearly dependent a copy of `U_i` splits off, so for
//! indecomposable `M` they span an `m_i`-dimensional subspace, and the subspace
//! alone determines the orbit. Running over all multisets with `m_i ≤ dim Ext¹`
//! and all subspaces therefore reaches every indecomposable.

use std::sync::Arc;

use rayon::prelude::*;

use super::catalog::IndecCatalog;
use super::endo::{are_isomorphic, end_info};
use super::Representation;
use crate::error::{Error, Result};
use crate::exactlin::{quotient_basis, Fp, Matrix};
use crate::quiver::{simple_at, Algebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumConfig {
    /// Largest allowed dimension at any single vertex.
    pub dim_bound: usize,
    /// Maximal number of candidate modules built.
    pub budget: u64,
    pub seed: u64,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            dim_bound: 4,
            budget: 10_000_000,
            seed: 42,
        }
    }
}

/// Representatives of `Ext¹(U, S_v)` as cocycles `(c_a)` for the arrows `a` ending at `v`.
#[derive(Clone, Debug)]
struct ExtToSimple {
    /// Each entry is a cocycle, flattened over the incoming arrows in index order.
    reps: Vec<Vec<u32>>,
}

fn incoming(alg: &Algebra, v: usize) -> Vec<usize> {
    (0..alg.num_arrows())
        .filter(|&a| alg.arrow(a).target == v)
        .collect()
}

fn ext_to_simple(u: &Representation, v: usize) -> ExtToSimple {
    let alg = u.algebra();
    let f = u.field();
    let ins = incoming(alg, v);
    let mut offset = vec![0; alg.num_arrows()];
    let mut len = 0;
    for &a in &ins {
        offset[a] = len;
        len += u.dims()[alg.arrow(a).source];
    }
    if len == 0 {
        return ExtToSimple { reps: vec![] };
    }
    // cocycle condition: for each relation ending at v, sum coef * c_last * U(prefix) = 0
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for rel in alg.relations() {
        let (_, first) = &rel.terms[0];
        let last = *first.last().expect("relation paths are nonempty");
        if alg.arrow(last).target != v {
            continue;
        }
        let src = alg.arrow(first[0]).source;
        for j in 0..u.dims()[src] {
            let mut row = vec![0; len];
            for (c, path) in &rel.terms {
                let (a_n, prefix) = path.split_last().unwrap();
                let m = u.eval_arrows(prefix);
                for k in 0..m.rows() {
                    let idx = offset[*a_n] + k;
                    row[idx] = f.add(row[idx], f.mul(*c, m.get(k, j)));
                }
            }
            rows.push(row);
        }
    }
    let z = if rows.is_empty() {
        Matrix::identity(f, len)
    } else {
        Matrix::from_fn(f, rows.len(), len, |r, c| rows[r][c]).kernel_basis()
    };
    // coboundaries: h * U_a for h a row vector at v
    let dv = u.dims()[v];
    let bcols: Vec<Vec<u32>> = (0..dv)
        .map(|k| {
            let mut col = vec![0; len];
            for &a in &ins {
                let m = u.mat(a);
                for (j, x) in m.row(k).iter().enumerate() {
                    col[offset[a] + j] = *x;
                }
            }
            z.solve(&col).expect("coboundaries are cocycles")
        })
        .collect();
    let b = Matrix::from_columns(f, z.cols(), &bcols);
    let (_, reps) = quotient_basis(&b, z.cols());
    let reps = (0..reps.cols()).map(|j| z.mul_vec(&reps.col(j))).collect();
    ExtToSimple { reps }
}

/// All `m x e` matrices in reduced row echelon form of full rank.
fn grassmannian(f: Fp, m: usize, e: usize) -> Vec<Vec<Vec<u32>>> {
    fn pivot_sets(
        m: usize,
        e: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for c in start..e {
            cur.push(c);
            pivot_sets(m, e, c + 1, cur, out);
            cur.pop();
        }
    }
    let mut sets = Vec::new();
    pivot_sets(m, e, 0, &mut vec![], &mut sets);
    let p = f.p();
    let mut out = Vec::new();
    for piv in sets {
        let free: Vec<(usize, usize)> = (0..m)
            .flat_map(|r| {
                (piv[r] + 1..e)
                    .filter(|c| !piv.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let mut vals = vec![0u32; free.len()];
        loop {
            let mut rows = vec![vec![0; e]; m];
            for (r, &c) in piv.iter().enumerate() {
                rows[r][c] = 1;
            }
            for (&(r, c), &x) in free.iter().zip(&vals) {
                rows[r][c] = x;
            }
            out.push(rows);
            let mut i = 0;
            while i < vals.len() {
                vals[i] += 1;
                if vals[i] < p {
                    break;
                }
                vals[i] = 0;
                i += 1;
            }
            if i == vals.len() {
                break;
            }
        }
    }
    out
}

fn grassmannian_size(p: u64, m: usize, e: usize) -> u128 {
    // Gaussian binomial [e choose m]_p
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..m {
        num = num.saturating_mul((p as u128).pow((e - i) as u32) - 1);
        den = den.saturating_mul((p as u128).pow((i + 1) as u32) - 1);
    }
    if num == u128::MAX {
        u128::MAX
    } else {
        num / den
    }
}

/// Middle term of `0 -> S_v -> M -> N -> 0` where `N` is the sum of `parts`,
/// each paired with its cocycle (flattened over arrows into `v`).
fn one_point_extension(
    alg: &Arc<Algebra>,
    v: usize,
    parts: &[(&Representation, Vec<u32>)],
) -> Representation {
    let f = alg.field();
    let n = Representation::direct_sum_all(alg, parts.iter().map(|(u, _)| *u));
    let ins = incoming(alg, v);
    let mut dims = n.dims().to_vec();
    dims[v] += 1;
    let mats = (0..alg.num_arrows())
        .map(|a| {
            let arr = alg.arrow(a);
            let na = n.mat(a);
            if arr.target == v {
                let mut row = Vec::with_capacity(na.cols());
                for (u, c) in parts {
                    let mut off = 0;
                    for &b in &ins {
                        let w = u.dims()[alg.arrow(b).source];
                        if b == a {
                            row.extend_from_slice(&c[off..off + w]);
                        }
                        off += w;
                    }
                }
                Matrix::from_vec(f, 1, na.cols(), row).vstack(na)
            } else if arr.source == v {
                Matrix::zeros(f, na.rows(), 1).hstack(na)
            } else {
                na.clone()
            }
        })
        .collect();
    Representation::new(alg, dims, mats).expect("cocycles give modules")
}

struct Known {
    item: Representation,
    /// `ext[v]`: representatives of `Ext¹(item, S_v)`.
    ext: Vec<ExtToSimple>,
}

/// Multisets `(index, multiplicity)` over `eligible` with total dimension `total`
/// and every vertex dimension at most `cap[v]`.
fn multisets(
    known: &[Known],
    eligible: &[(usize, usize)],
    total: usize,
    cap: &[usize],
) -> Vec<Vec<(usize, usize)>> {
    fn go(
        known: &[Known],
        eligible: &[(usize, usize)],
        k: usize,
        left: usize,
        dims: &mut Vec<usize>,
        cap: &[usize],
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if k == eligible.len() {
            return;
        }
        let (i, max_m) = eligible[k];
        let d = known[i].item.dims();
        let t = known[i].item.total_dim();
        go(known, eligible, k + 1, left, dims, cap, cur, out);
        for m in 1..=max_m {
            if m * t > left
                || dims
                    .iter()
                    .zip(d)
                    .zip(cap)
                    .any(|((x, y), c)| x + m * y > *c)
            {
                break;
            }
            for (x, y) in dims.iter_mut().zip(d) {
                *x += m * y;
            }
            cur.push((i, m));
            go(known, eligible, k + 1, left - m * t, dims, cap, cur, out);
            cur.pop();
            for (x, y) in dims.iter_mut().zip(d) {
                *x -= m * y;
            }
        }
    }
    let mut out = Vec::new();
    let mut dims = vec![0; cap.len()];
    go(
        known,
        eligible,
        0,
        total,
        &mut dims,
        cap,
        &mut vec![],
        &mut out,
    );
    out
}

/// All indecomposables whose dimension at every vertex is at most `cfg.dim_bound`.
pub fn enumerate_indecomposables(alg: &Arc<Algebra>, cfg: &EnumConfig) -> Result<IndecCatalog> {
    if cfg.dim_bound == 0 {
        return Err(Error::Input("dim_bound must be at least 1".into()));
    }
    let n = alg.num_vertices();
    let f = alg.field();
    let add = |known: &mut Vec<Known>, item: Representation| {
        let ext = (0..n).map(|v| ext_to_simple(&item, v)).collect();
        known.push(Known { item, ext });
    };
    let mut known: Vec<Known> = Vec::new();
    for v in 0..n {
        add(&mut known, simple_at(alg, v));
    }
    let mut spent: u64 = 0;
    for total in 2..=cfg.dim_bound * n {
        let mut candidates: Vec<Representation> = Vec::new();
        for v in 0..n {
            let mut cap = vec![cfg.dim_bound; n];
            cap[v] -= 1;
            let eligible: Vec<(usize, usize)> = known
                .iter()
                .enumerate()
                .filter(|(_, k)| !k.ext[v].reps.is_empty())
                .map(|(i, k)| (i, k.ext[v].reps.len()))
                .collect();
            for ms in multisets(&known, &eligible, total - 1, &cap) {
                let count = ms
                    .iter()
                    .map(|&(i, m)| grassmannian_size(f.p() as u64, m, known[i].ext[v].reps.len()))
                    .fold(1u128, |a, b| a.saturating_mul(b));
                if count > (cfg.budget - spent) as u128 {
                    return Err(Error::Bounds(format!(
                        "enumeration budget of {} candidates exhausted",
                        cfg.budget
                    )));
                }
                spent += count as u64;
                let choices: Vec<Vec<Vec<Vec<u32>>>> = ms
                    .iter()
                    .map(|&(i, m)| {
                        let e = &known[i].ext[v];
                        grassmannian(f, m, e.reps.len())
                            .into_iter()
                            .map(|rows| {
                                rows.iter()
                                    .map(|coef| {
                                        let len = e.reps[0].len();
                                        (0..len)
                                            .map(|t| {
                                                coef.iter().zip(&e.reps).fold(0, |acc, (&c, r)| {
                                                    f.add(acc, f.mul(c, r[t]))
                                                })
                                            })
                                            .collect()
                                    })
                                    .collect()
                            })
                            .collect()
                    })
                    .collect();
                let mut pick = vec![0; ms.len()];
                loop {
                    let mut parts: Vec<(&Representation, Vec<u32>)> = Vec::new();
                    for (k, &(i, _)) in ms.iter().enumerate() {
                        for c in &choices[k][pick[k]] {
                            parts.push((&known[i].item, c.clone()));
                        }
                    }
                    candidates.push(one_point_extension(alg, v, &parts));
                    let mut k = 0;
                    while k < pick.len() {
                        pick[k] += 1;
                        if pick[k] < choices[k].len() {
                            break;
                        }
                        pick[k] = 0;
                        k += 1;
                    }
                    if k == pick.len() {
                        break;
                    }
                }
            }
        }
        let local: Vec<bool> = candidates
            .par_iter()
            .map(|m| end_info(m).map(|e| e.local))
            .collect::<Result<Vec<_>>>()?;
        let mut found: Vec<Representation> = Vec::new();
        for (m, is_local) in candidates.into_iter().zip(local) {
            if !is_local {
                continue;
            }
            let mut dup = false;
            for x in found.iter().filter(|x| x.dims() == m.dims()) {
                if are_isomorphic(x, &m, cfg.seed)? {
                    dup = true;
                    break;
                }
            }
            if !dup {
                found.push(m);
            }
        }
        for m in found {
            add(&mut known, m);
        }
    }
    IndecCatalog::from_items(
        alg,
        cfg.dim_bound,
        cfg.seed,
        known.into_iter().map(|k| k.item).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_algebra;
    use crate::quiver::tests::{a2, square};

    fn dims(c: &IndecCatalog) -> Vec<Vec<usize>> {
        c.items().iter().map(|x| x.dims().to_vec()).collect()
    }

    #[test]
    fn a2_has_three() {
        let c = enumerate_indecomposables(
            &a2(),
            &EnumConfig {
                dim_bound: 2,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(dims(&c), vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(c.labels(), ["S2", "S1", "P1"]);
    }

    #[test]
    fn point_has_one() {
        let alg = parse_algebra(r#"{"vertices":["x"],"arrows":[]}"#).unwrap();
        let c = enumerate_indecomposables(&alg, &EnumConfig::default()).unwrap();
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn zero_budget_is_enforced() {
        let c = enumerate_indecomposables(
            &a2(),
            &EnumConfig {
                dim_bound: 2,
                budget: 0,
                seed: 1,
            },
        );
        assert!(matches!(c, Err(Error::Bounds(_))));
    }

    #[test]
    fn grassmannian_counts() {
        let f = Fp::new(5).unwrap();
        assert_eq!(grassmannian(f, 1, 2).len(), 6);
        assert_eq!(
            grassmannian(f, 2, 3).len() as u128,
            grassmannian_size(5, 2, 3)
        );
        assert_eq!(grassmannian(f, 2, 2).len(), 1);
    }

    #[test]
    fn square_indecomposables() {
        let c = enumerate_indecomposables(&square(), &EnumConfig::default()).unwrap();
        assert_eq!(c.len(), 11);
        for i in 0..c.len() {
            assert!(c.end_info(i).local);
        }
    }
}
