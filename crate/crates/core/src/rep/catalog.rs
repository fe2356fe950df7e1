//! The catalog of indecomposables: labels, Hom fingerprints, identification
//! and decomposition of arbitrary modules into catalog items.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::endo::{decompose_by_splitting, end_info, find_isomorphism, EndInfo, ISO_TRIALS};
use super::{hom_dim, Representation};
use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::quiver::{injective_at, projective_at, simple_at, Algebra};

/// Pairwise non-isomorphic indecomposables, ordered by total dimension and
/// then dimension vector.
#[derive(Clone, Debug)]
pub struct IndecCatalog {
    alg: Arc<Algebra>,
    dim_bound: usize,
    seed: u64,
    items: Vec<Representation>,
    labels: Vec<String>,
    /// `hom[i][j] = dim Hom(items[i], items[j])`
    hom: Vec<Vec<usize>>,
    ends: Vec<EndInfo>,
    hom_inv: Option<Vec<Vec<BigRational>>>,
}

fn invert(h: &[Vec<usize>]) -> Option<Vec<Vec<BigRational>>> {
    let n = h.len();
    let mut a: Vec<Vec<BigRational>> = h
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row
                .iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for c in 0..n {
        let pr = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, pr);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let factor = a[r][c].clone();
                for k in 0..2 * n {
                    let t = &factor * &a[c][k];
                    a[r][k] = &a[r][k] - t;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

impl IndecCatalog {
    /// Builds a catalog from pairwise non-isomorphic indecomposables, sorting them.
    pub fn from_items(
        alg: &Arc<Algebra>,
        dim_bound: usize,
        seed: u64,
        mut items: Vec<Representation>,
    ) -> Result<IndecCatalog> {
        items.sort_by(|a, b| (a.total_dim(), a.dims()).cmp(&(b.total_dim(), b.dims())));
        let ends = items.iter().map(end_info).collect::<Result<Vec<_>>>()?;
        if let Some(i) = ends.iter().position(|e| !e.local) {
            return Err(Error::Input(format!("catalog item {i} is decomposable")));
        }
        let hom: Vec<Vec<usize>> = items
            .iter()
            .map(|x| items.iter().map(|y| hom_dim(x, y)).collect())
            .collect();
        let hom_inv = invert(&hom);
        let mut cat = IndecCatalog {
            alg: alg.clone(),
            dim_bound,
            seed,
            labels: vec![],
            items,
            hom,
            ends,
            hom_inv,
        };
        cat.labels = cat.default_labels();
        Ok(cat)
    }

    fn default_labels(&self) -> Vec<String> {
        let n = self.alg.num_vertices();
        let mut labels: Vec<Option<String>> = vec![None; self.items.len()];
        let families: [(&str, fn(&Arc<Algebra>, usize) -> Representation); 3] =
            [("S", simple_at), ("P", projective_at), ("I", injective_at)];
        for (prefix, build) in families {
            for v in 0..n {
                let m = build(&self.alg, v);
                if m.dims().iter().any(|&d| d > self.dim_bound) {
                    continue;
                }
                if let Ok(i) = self.identify(&m) {
                    labels[i].get_or_insert_with(|| format!("{prefix}{}", self.alg.vertex_name(v)));
                }
            }
        }
        let mut out = Vec::new();
        for (i, l) in labels.into_iter().enumerate() {
            out.push(l.unwrap_or_else(|| {
                let d = self.items[i].dims();
                let k = self.items[..i].iter().filter(|x| x.dims() == d).count();
                let ds: Vec<String> = d.iter().map(|x| x.to_string()).collect();
                format!("M[{}]#{k}", ds.join(","))
            }));
        }
        out
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn dim_bound(&self) -> usize {
        self.dim_bound
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[Representation] {
        &self.items
    }

    pub fn item(&self, i: usize) -> &Representation {
        &self.items[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.items.len());
        self.labels = labels;
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Row `i`: `dim Hom(items[i], items[j])` for every `j`.
    pub fn fingerprint(&self, i: usize) -> &[usize] {
        &self.hom[i]
    }

    pub fn hom_table(&self) -> &[Vec<usize>] {
        &self.hom
    }

    pub fn end_info(&self, i: usize) -> EndInfo {
        self.ends[i]
    }

    /// `dim Hom(items[i], x)` for every item.
    pub fn hom_profile(&self, x: &Representation) -> Vec<usize> {
        self.items.iter().map(|it| hom_dim(it, x)).collect()
    }

    /// Catalog index of an indecomposable module.
    pub fn identify(&self, u: &Representation) -> Result<usize> {
        let profile = self.hom_profile(u);
        for (j, it) in self.items.iter().enumerate() {
            if it.dims() != u.dims() || (0..self.len()).any(|i| self.hom[i][j] != profile[i]) {
                continue;
            }
            if find_isomorphism(u, it, self.seed, ISO_TRIALS).is_some() {
                return Ok(j);
            }
            return Err(Error::Ambiguous(ISO_TRIALS));
        }
        Err(Error::NotInCatalog(u.dims().to_vec()))
    }

    /// Direct sum of the listed items.
    pub fn object(&self, multiset: &[usize]) -> Representation {
        Representation::direct_sum_all(&self.alg, multiset.iter().map(|&i| &self.items[i]))
    }

    /// Sorted multiset of catalog indices whose sum is isomorphic to `x`.
    ///
    /// First solves the Hom-dimension system `H m = profile(x)`, accepting the
    /// answer only with an explicit isomorphism witness; otherwise splits `x`
    /// by idempotents and identifies each summand.
    pub fn decompose(&self, x: &Representation) -> Result<Vec<usize>> {
        if x.is_zero() {
            return Ok(vec![]);
        }
        if let Some(m) = self.decompose_by_fingerprint(x) {
            let s = self.object(&m);
            if find_isomorphism(x, &s, self.seed, 8).is_some() {
                return Ok(m);
            }
        }
        self.decompose_by_idempotents(x)
    }

    /// Candidate multiset from the Hom-dimension profile alone (no witness).
    pub fn decompose_by_fingerprint(&self, x: &Representation) -> Option<Vec<usize>> {
        let inv = self.hom_inv.as_ref()?;
        let profile = self.hom_profile(x);
        // profile_i = sum_j hom[i][j] m_j
        let n = self.len();
        let mut out = Vec::new();
        let mut dims = vec![0; x.dims().len()];
        for j in 0..n {
            let mut s = BigRational::zero();
            for i in 0..n {
                if profile[i] != 0 {
                    s += &inv[j][i] * BigRational::from_integer(BigInt::from(profile[i]));
                }
            }
            if !s.is_integer() || s.is_negative() {
                return None;
            }
            let m: usize = s.to_integer().try_into().ok()?;
            for _ in 0..m {
                out.push(j);
            }
            for (d, e) in dims.iter_mut().zip(self.items[j].dims()) {
                *d += m * e;
            }
        }
        (dims == x.dims()).then_some(out)
    }

    pub fn decompose_by_idempotents(&self, x: &Representation) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for part in decompose_by_splitting(x, self.seed)? {
            out.push(self.identify(&part)?);
        }
        out.sort();
        Ok(out)
    }

    /// Isomorphism test with the deterministic Hom-profile filter.
    pub fn are_isomorphic(&self, x: &Representation, y: &Representation) -> Result<bool> {
        if x.dims() != y.dims() || self.hom_profile(x) != self.hom_profile(y) {
            return Ok(false);
        }
        if find_isomorphism(x, y, self.seed, ISO_TRIALS).is_some() {
            return Ok(true);
        }
        Err(Error::Ambiguous(ISO_TRIALS))
    }

    pub fn to_data(&self) -> CatalogData {
        let f = self.alg.field();
        CatalogData {
            dim_bound: self.dim_bound,
            seed: self.seed,
            items: self
                .items
                .iter()
                .zip(&self.labels)
                .map(|(it, l)| ItemData {
                    label: l.clone(),
                    dims: it.dims().to_vec(),
                    mats: it
                        .mats()
                        .iter()
                        .map(|m| {
                            (0..m.rows())
                                .map(|r| m.row(r).iter().map(|&x| f.to_signed(x)).collect())
                                .collect()
                        })
                        .collect(),
                })
                .collect(),
            hom: self.hom.clone(),
        }
    }

    /// Rebuilds a catalog from stored data, recomputing and checking every fingerprint.
    pub fn from_data(alg: &Arc<Algebra>, data: &CatalogData) -> Result<IndecCatalog> {
        let f = alg.field();
        let mut items = Vec::new();
        for it in &data.items {
            if it.mats.len() != alg.num_arrows() || it.dims.len() != alg.num_vertices() {
                return Err(Error::Input("stored item does not match the quiver".into()));
            }
            let mats = it
                .mats
                .iter()
                .enumerate()
                .map(|(a, rows)| {
                    let arr = alg.arrow(a);
                    let (r, c) = (it.dims[arr.target], it.dims[arr.source]);
                    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                        return Err(Error::Input("stored matrix has the wrong shape".into()));
                    }
                    Ok(if r == 0 {
                        Matrix::zeros(f, 0, c)
                    } else {
                        Matrix::from_rows(f, rows)
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            items.push(Representation::new(alg, it.dims.clone(), mats)?);
        }
        let mut cat = IndecCatalog::from_items(alg, data.dim_bound, data.seed, items)?;
        if cat.hom != data.hom {
            return Err(Error::Input(
                "stored fingerprints do not match the stored items".into(),
            ));
        }
        cat.set_labels(data.items.iter().map(|i| i.label.clone()).collect());
        Ok(cat)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CatalogData {
    pub dim_bound: usize,
    pub seed: u64,
    pub items: Vec<ItemData>,
    pub hom: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ItemData {
    pub label: String,
    pub dims: Vec<usize>,
    pub mats: Vec<Vec<Vec<i64>>>,
}
