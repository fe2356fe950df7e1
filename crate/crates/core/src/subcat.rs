//! Subcategories of a module category (or of an extension-closed part of it),
//! represented by sets of catalog indecomposables, together with the closure
//! operators behind thickness, thick closures and the cone/cocone towers.
//!
//! All quantifiers over objects range over bounded objects: direct sums of at
//! most `sum_mult` indecomposables. The conflations between bounded objects are
//! computed once per catalog and stored as a [`FactTable`]; every predicate
//! below is then a pure set computation over that table.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::homology::Ext1Space;
use crate::rep::{
    cokernel, combine, hom_basis, kernel, pushout, IndecCatalog, Morphism, Representation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    /// Maximal number of indecomposable summands in a composite object.
    pub sum_mult: usize,
    /// Maximal number of Hom representatives per pair of objects; larger
    /// Hom spaces are left out of the search.
    pub hom_cap: u64,
    /// Maximal number of extension representatives per pair of objects.
    pub ext_cap: u64,
    pub tower_depth: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            sum_mult: 2,
            hom_cap: 100_000,
            ext_cap: 10_000,
            tower_depth: 8,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactKind {
    /// `left -> out -> right`
    Extension,
    /// a mono `left -> right` with cokernel `out`
    Cone,
    /// an epi `left -> right` with kernel `out`
    Cocone,
}

/// One conflation between bounded objects, recorded by its summand multisets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fact {
    pub kind: FactKind,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub out: Vec<usize>,
}

pub type Mask = u128;

pub fn mask_of(items: &[usize]) -> Mask {
    items.iter().fold(0, |m, &i| m | (1 << i))
}

pub fn members_of(mask: Mask) -> Vec<usize> {
    (0..128).filter(|i| mask >> i & 1 == 1).collect()
}

impl Fact {
    /// The conflation `A -> B -> C` as summand multisets.
    pub fn conflation(&self) -> (&[usize], &[usize], &[usize]) {
        match self.kind {
            FactKind::Extension => (&self.left, &self.out, &self.right),
            FactKind::Cone => (&self.left, &self.right, &self.out),
            FactKind::Cocone => (&self.out, &self.left, &self.right),
        }
    }

    fn masks(&self) -> (Mask, Mask, Mask) {
        (
            mask_of(&self.left),
            mask_of(&self.right),
            mask_of(&self.out),
        )
    }
}

#[derive(Clone, Debug)]
struct IndexedFact {
    fact: Fact,
    left: Mask,
    right: Mask,
    out: Mask,
}

/// All conflations with bounded end terms, up to the torus action on the ends.
///
/// Pairs of objects whose Hom or Ext¹ space has more than the capped number
/// of representatives are not enumerated; they are counted in `skipped`.
/// Every conflation found from an Ext¹ class is also recorded as a cone and
/// a cocone fact when the corresponding ends are bounded.
#[derive(Clone, Debug)]
pub struct FactTable {
    bounds: SearchBounds,
    facts: Vec<IndexedFact>,
    skipped: usize,
}

/// Connected bipartite supports that touch every summand, together with
/// torus-normalized coefficient vectors on the edges.
///
/// `dims[i][j]` is the dimension of the block from left summand `i` to right
/// summand `j`. Scaling each summand by a nonzero scalar acts on the blocks;
/// along a spanning tree each block can be normalized to have leading
/// coordinate 1, and the remaining edges take every nonzero value.
/// `None` if there are more than `cap` representatives.
fn block_patterns(
    p: u32,
    dims: &[Vec<usize>],
    cap: u64,
) -> Option<Vec<Vec<(usize, usize, Vec<u32>)>>> {
    let nl = dims.len();
    let nr = dims.first().map_or(0, |r| r.len());
    let edges: Vec<(usize, usize)> = (0..nl)
        .flat_map(|i| (0..nr).map(move |j| (i, j)))
        .filter(|&(i, j)| dims[i][j] > 0)
        .collect();
    let mut out = Vec::new();
    let mut total: u64 = 0;
    for support in 1u32..(1 << edges.len()) {
        let chosen: Vec<(usize, usize)> = (0..edges.len())
            .filter(|k| support >> k & 1 == 1)
            .map(|k| edges[k])
            .collect();
        // spanning tree by BFS over nodes 0..nl (left) and nl..nl+nr (right)
        let mut seen = vec![false; nl + nr];
        let mut tree = vec![false; chosen.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for (k, &(i, j)) in chosen.iter().enumerate() {
                let (a, b) = (i, nl + j);
                let w = if a == u {
                    b
                } else if b == u {
                    a
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    tree[k] = true;
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            continue;
        }
        let choices: Vec<Vec<Vec<u32>>> = chosen
            .iter()
            .zip(&tree)
            .map(|(&(i, j), &t)| nonzero_vectors(p, dims[i][j], t))
            .collect();
        let count = choices
            .iter()
            .try_fold(1u64, |a, c| a.checked_mul(c.len() as u64));
        total = count
            .and_then(|c| total.checked_add(c))
            .filter(|&t| t <= cap)?;
        let mut pick = vec![0; chosen.len()];
        loop {
            out.push(
                chosen
                    .iter()
                    .enumerate()
                    .map(|(k, &(i, j))| (i, j, choices[k][pick[k]].clone()))
                    .collect(),
            );
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
    Some(out)
}

/// Nonzero vectors of `F_p^d`; with `normalized`, only those whose first nonzero entry is 1.
fn nonzero_vectors(p: u32, d: usize, normalized: bool) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut v = vec![0u32; d];
    loop {
        let mut k = 0;
        while k < d {
            v[k] += 1;
            if v[k] < p {
                break;
            }
            v[k] = 0;
            k += 1;
        }
        if k == d {
            break;
        }
        let lead = v.iter().rev().find(|&&x| x != 0).copied();
        if !normalized || lead == Some(1) {
            out.push(v.clone());
        }
    }
    out
}

/// A morphism `⊕ src -> ⊕ tgt` assembled from blocks `(i, j, f_ij: src_i -> tgt_j)`.
fn block_morphism(
    src: &[&Representation],
    tgt: &[&Representation],
    blocks: &[(usize, usize, Morphism)],
) -> Morphism {
    let alg = src.first().or(tgt.first()).expect("nonempty").algebra();
    let f = alg.field();
    let s = Representation::direct_sum_all(alg, src.iter().copied());
    let t = Representation::direct_sum_all(alg, tgt.iter().copied());
    let mats = (0..alg.num_vertices())
        .map(|v| {
            let mut m = Matrix::zeros(f, t.dims()[v], s.dims()[v]);
            for (i, j, g) in blocks {
                let c0: usize = src[..*i].iter().map(|x| x.dims()[v]).sum();
                let r0: usize = tgt[..*j].iter().map(|x| x.dims()[v]).sum();
                m.paste(r0, c0, &g.mats[v]);
            }
            m
        })
        .collect();
    Morphism {
        source: s,
        target: t,
        mats,
    }
}

fn multisets(n: usize, max: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max {
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, max, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max, 0, &mut vec![], &mut out);
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

impl FactTable {
    pub fn build(cat: &IndecCatalog, bounds: &SearchBounds) -> Result<FactTable> {
        if bounds.sum_mult == 0
            || bounds.tower_depth == 0
            || bounds.hom_cap == 0
            || bounds.ext_cap == 0
        {
            return Err(Error::Input("search bounds must be positive".into()));
        }
        if cat.len() > 128 {
            return Err(Error::Bounds(format!(
                "catalog of {} items exceeds 128",
                cat.len()
            )));
        }
        let n = cat.len();
        let p = cat.algebra().field().p();
        let homs: Vec<Vec<Vec<Morphism>>> = (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .map(|j| hom_basis(cat.item(i), cat.item(j)))
                    .collect()
            })
            .collect();
        let exts: Vec<Vec<Ext1Space>> = (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .map(|j| Ext1Space::new(cat.item(i), cat.item(j)))
                    .collect()
            })
            .collect();
        let objects = multisets(n, bounds.sum_mult);
        let pairs: Vec<(usize, usize)> = (0..objects.len())
            .flat_map(|a| (0..objects.len()).map(move |b| (a, b)))
            .collect();
        let per_pair: Vec<(Vec<Fact>, usize)> = pairs
            .par_iter()
            .map(|&(a, b)| {
                let (l, r) = (&objects[a], &objects[b]);
                let mut facts = Vec::new();
                let lr: Vec<&Representation> = l.iter().map(|&i| cat.item(i)).collect();
                let rr: Vec<&Representation> = r.iter().map(|&i| cat.item(i)).collect();
                // morphisms left -> right
                let hd: Vec<Vec<usize>> = l
                    .iter()
                    .map(|&i| r.iter().map(|&j| homs[i][j].len()).collect())
                    .collect();
                let mut skipped = 0;
                let hom_pats = block_patterns(p, &hd, bounds.hom_cap).unwrap_or_else(|| {
                    skipped += 1;
                    vec![]
                });
                for pat in hom_pats {
                    let blocks: Vec<(usize, usize, Morphism)> = pat
                        .iter()
                        .map(|(i, j, c)| (*i, *j, combine(lr[*i], rr[*j], &homs[l[*i]][r[*j]], c)))
                        .collect();
                    let g = block_morphism(&lr, &rr, &blocks);
                    if g.is_mono() {
                        let out = cat.decompose(&cokernel(&g).0)?;
                        facts.push(Fact {
                            kind: FactKind::Cone,
                            left: l.clone(),
                            right: r.clone(),
                            out,
                        });
                    }
                    if g.is_epi() {
                        let out = cat.decompose(&kernel(&g).0)?;
                        facts.push(Fact {
                            kind: FactKind::Cocone,
                            left: l.clone(),
                            right: r.clone(),
                            out,
                        });
                    }
                }
                // extensions 0 -> left -> E -> right -> 0, classes in ⊕ Ext¹(right_j, left_i)
                let ed: Vec<Vec<usize>> = l
                    .iter()
                    .map(|&i| r.iter().map(|&j| exts[j][i].dim()).collect())
                    .collect();
                let pats = block_patterns(p, &ed, bounds.ext_cap).unwrap_or_else(|| {
                    skipped += 1;
                    vec![]
                });
                if !pats.is_empty() {
                    let omegas: Vec<&Representation> =
                        r.iter().map(|&j| &exts[j][l[0]].iota.source).collect();
                    let p0s: Vec<&Representation> =
                        r.iter().map(|&j| &exts[j][l[0]].iota.target).collect();
                    let iota_blocks: Vec<(usize, usize, Morphism)> = r
                        .iter()
                        .enumerate()
                        .map(|(k, &j)| (k, k, exts[j][l[0]].iota.clone()))
                        .collect();
                    let iota = block_morphism(&omegas, &p0s, &iota_blocks);
                    for pat in pats {
                        let blocks: Vec<(usize, usize, Morphism)> = pat
                            .iter()
                            .map(|(i, j, c)| {
                                let sp = &exts[r[*j]][l[*i]];
                                (*j, *i, combine(&sp.iota.source, lr[*i], &sp.basis, c))
                            })
                            .collect();
                        let xi = block_morphism(&omegas, &lr, &blocks);
                        let (e, _, _) = pushout(&xi, &iota);
                        let out = cat.decompose(&e)?;
                        if out.len() <= bounds.sum_mult {
                            facts.push(Fact {
                                kind: FactKind::Cone,
                                left: l.clone(),
                                right: out.clone(),
                                out: r.clone(),
                            });
                            facts.push(Fact {
                                kind: FactKind::Cocone,
                                left: out.clone(),
                                right: r.clone(),
                                out: l.clone(),
                            });
                        }
                        facts.push(Fact {
                            kind: FactKind::Extension,
                            left: l.clone(),
                            right: r.clone(),
                            out,
                        });
                    }
                }
                Ok((facts, skipped))
            })
            .collect::<Result<Vec<_>>>()?;
        let skipped = per_pair.iter().map(|(_, k)| k).sum();
        let mut seen = HashSet::new();
        let mut facts = Vec::new();
        for f in per_pair.into_iter().flat_map(|(f, _)| f) {
            if seen.insert(f.clone()) {
                let (left, right, out) = f.masks();
                facts.push(IndexedFact {
                    fact: f,
                    left,
                    right,
                    out,
                });
            }
        }
        Ok(FactTable {
            bounds: *bounds,
            facts,
            skipped,
        })
    }

    pub fn bounds(&self) -> SearchBounds {
        self.bounds
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    /// Number of Hom or Ext¹ enumerations skipped for exceeding their cap.
    pub fn skipped(&self) -> usize {
        self.skipped
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn facts(&self) -> impl Iterator<Item = &Fact> {
        self.facts.iter().map(|f| &f.fact)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// The whole module category; conflations are all short exact sequences.
    Full,
    /// An extension-closed subcategory; conflations have all terms in it.
    ExtensionClosed,
}

/// A category in which subcategories live: a universe of catalog items.
#[derive(Clone, Debug)]
pub struct CategoryContext {
    cat: Arc<IndecCatalog>,
    universe: Vec<usize>,
    universe_mask: Mask,
    mode: Mode,
    table: Arc<FactTable>,
}

/// A full additive subcategory `add(members)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subcategory {
    members: Vec<usize>,
}

impl Subcategory {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Subcategory {
        let set: BTreeSet<usize> = members.into_iter().collect();
        Subcategory {
            members: set.into_iter().collect(),
        }
    }

    pub fn from_mask(mask: Mask) -> Subcategory {
        Subcategory {
            members: members_of(mask),
        }
    }

    pub fn empty() -> Subcategory {
        Subcategory::default()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn mask(&self) -> Mask {
        mask_of(&self.members)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn is_subset(&self, other: &Subcategory) -> bool {
        self.mask() & !other.mask() == 0
    }

    pub fn union(&self, other: &Subcategory) -> Subcategory {
        Subcategory::from_mask(self.mask() | other.mask())
    }

    pub fn intersection(&self, other: &Subcategory) -> Subcategory {
        Subcategory::from_mask(self.mask() & other.mask())
    }
}

/// Outcome of a bounded closure predicate, with a violating conflation on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub holds: bool,
    pub witness: Option<Fact>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThickReport {
    pub extensions: Check,
    pub cones: Check,
    pub cocones: Check,
}

impl ThickReport {
    pub fn holds(&self) -> bool {
        self.extensions.holds && self.cones.holds && self.cocones.holds
    }
}

/// Layers of `X^∧` (iterated cones) or `X^∨` (iterated cocones), each
/// closed under summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    pub layers: Vec<Subcategory>,
    /// The union of the layers is the whole universe.
    pub saturated: bool,
    /// The last layer equals the previous one (a fixed point was reached).
    pub stable: bool,
}

impl Tower {
    pub fn union(&self) -> Subcategory {
        self.layers.last().cloned().unwrap_or_default()
    }

    /// First layer containing item `i`.
    pub fn level_of(&self, i: usize) -> Option<usize> {
        self.layers.iter().position(|l| l.contains(i))
    }
}

impl CategoryContext {
    /// The whole module category over the catalog.
    pub fn full(cat: Arc<IndecCatalog>, bounds: &SearchBounds) -> Result<CategoryContext> {
        let table = Arc::new(FactTable::build(&cat, bounds)?);
        Ok(CategoryContext::with_table(cat, table))
    }

    pub fn with_table(cat: Arc<IndecCatalog>, table: Arc<FactTable>) -> CategoryContext {
        let universe: Vec<usize> = (0..cat.len()).collect();
        CategoryContext {
            universe_mask: mask_of(&universe),
            cat,
            universe,
            mode: Mode::Full,
            table,
        }
    }

    /// The extension-closed subcategory on `universe`; fails if some bounded
    /// extension of universe objects leaves it.
    pub fn restrict(&self, universe: &Subcategory) -> Result<CategoryContext> {
        let m = universe.mask();
        if m & !self.universe_mask != 0 {
            return Err(Error::Precondition(
                "restricted universe is not inside the ambient one".into(),
            ));
        }
        if let Some(f) = self.table.facts.iter().find(|f| {
            f.fact.kind == FactKind::Extension && (f.left | f.right) & !m == 0 && f.out & !m != 0
        }) {
            return Err(Error::Precondition(format!(
                "universe is not extension-closed: {:?}",
                f.fact
            )));
        }
        Ok(CategoryContext {
            cat: self.cat.clone(),
            universe: universe.members().to_vec(),
            universe_mask: m,
            mode: Mode::ExtensionClosed,
            table: self.table.clone(),
        })
    }

    pub fn catalog(&self) -> &Arc<IndecCatalog> {
        &self.cat
    }

    pub fn universe(&self) -> Subcategory {
        Subcategory {
            members: self.universe.clone(),
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn bounds(&self) -> SearchBounds {
        self.table.bounds
    }

    pub fn table(&self) -> &Arc<FactTable> {
        &self.table
    }

    /// Facts that are conflations of this category.
    fn live(&self) -> impl Iterator<Item = &IndexedFact> {
        let u = self.universe_mask;
        self.table
            .facts
            .iter()
            .filter(move |f| (f.left | f.right | f.out) & !u == 0)
    }

    pub fn conflations(&self) -> impl Iterator<Item = &Fact> {
        self.live().map(|f| &f.fact)
    }

    pub fn check_members(&self, s: &Subcategory) -> Result<()> {
        if s.mask() & !self.universe_mask != 0 {
            return Err(Error::Precondition(
                "subcategory has members outside the universe".into(),
            ));
        }
        Ok(())
    }

    /// `add` of the summands of the generators.
    pub fn add_closure(&self, generators: &[Representation]) -> Result<Subcategory> {
        let mut m: Mask = 0;
        for g in generators {
            for i in self.cat.decompose(g)? {
                if self.universe_mask >> i & 1 == 0 {
                    return Err(Error::Precondition(format!(
                        "summand {} lies outside the universe",
                        self.cat.label(i)
                    )));
                }
                m |= 1 << i;
            }
        }
        Ok(Subcategory::from_mask(m))
    }

    fn closed_under(&self, s: &Subcategory, kind: FactKind) -> Check {
        let m = s.mask();
        let bad = self
            .live()
            .find(|f| f.fact.kind == kind && (f.left | f.right) & !m == 0 && f.out & !m != 0);
        Check {
            holds: bad.is_none(),
            witness: bad.map(|f| f.fact.clone()),
        }
    }

    pub fn is_extension_closed(&self, s: &Subcategory) -> Check {
        self.closed_under(s, FactKind::Extension)
    }

    pub fn is_cone_closed(&self, s: &Subcategory) -> Check {
        self.closed_under(s, FactKind::Cone)
    }

    pub fn is_cocone_closed(&self, s: &Subcategory) -> Check {
        self.closed_under(s, FactKind::Cocone)
    }

    pub fn is_thick(&self, s: &Subcategory) -> ThickReport {
        ThickReport {
            extensions: self.is_extension_closed(s),
            cones: self.is_cone_closed(s),
            cocones: self.is_cocone_closed(s),
        }
    }

    fn closure_mask(&self, mut m: Mask) -> Mask {
        loop {
            let mut next = m;
            for f in self.live() {
                if (f.left | f.right) & !m == 0 {
                    next |= f.out;
                }
            }
            if next == m {
                return m;
            }
            m = next;
        }
    }

    /// Least subcategory containing `generators` and closed under every bounded conflation.
    pub fn thick_closure(&self, generators: &Subcategory) -> Result<Subcategory> {
        self.check_members(generators)?;
        Ok(Subcategory::from_mask(self.closure_mask(generators.mask())))
    }

    /// Every thick subcategory containing `require`, sorted by size then members.
    pub fn enumerate_thick(&self, require: Option<&Subcategory>) -> Result<Vec<Subcategory>> {
        if self.universe.len() > 20 {
            return Err(Error::Bounds(format!(
                "universe of {} items exceeds the guard of 20",
                self.universe.len()
            )));
        }
        let start = match require {
            Some(r) => {
                self.check_members(r)?;
                self.closure_mask(r.mask())
            }
            None => self.closure_mask(0),
        };
        let mut seen: HashSet<Mask> = HashSet::from([start]);
        let mut frontier = vec![start];
        while !frontier.is_empty() {
            let next: Vec<Mask> = frontier
                .par_iter()
                .flat_map_iter(|&m| {
                    self.universe
                        .iter()
                        .filter(move |&&u| m >> u & 1 == 0)
                        .map(move |&u| self.closure_mask(m | 1 << u))
                })
                .collect();
            frontier = Vec::new();
            for m in next {
                if seen.insert(m) {
                    frontier.push(m);
                }
            }
        }
        let mut out: Vec<Subcategory> = seen.into_iter().map(Subcategory::from_mask).collect();
        out.sort_by(|a, b| (a.len(), a.members()).cmp(&(b.len(), b.members())));
        Ok(out)
    }

    fn tower(&self, s: &Subcategory, kind: FactKind) -> Result<Tower> {
        self.check_members(s)?;
        let x = s.mask();
        let mut layers = vec![s.clone()];
        let mut cur = x;
        let mut stable = false;
        for _ in 0..self.bounds().tower_depth {
            let mut next = cur;
            for f in self.live().filter(|f| f.fact.kind == kind) {
                let ok = match kind {
                    // K -> T -> C with K in the previous layer and T in X
                    FactKind::Cone => f.left & !cur == 0 && f.right & !x == 0,
                    // K -> T -> Y with T in X and Y in the previous layer
                    _ => f.left & !x == 0 && f.right & !cur == 0,
                };
                if ok {
                    next |= f.out;
                }
            }
            if next == cur {
                stable = true;
                break;
            }
            cur = next;
            layers.push(Subcategory::from_mask(cur));
        }
        let saturated = cur == self.universe_mask;
        Ok(Tower {
            layers,
            saturated,
            stable: stable || saturated,
        })
    }

    /// Layers `X^∧_n = Cone(X^∧_{n-1}, X)`, starting from `X^∧_0 = X`.
    pub fn tower_hat(&self, s: &Subcategory) -> Result<Tower> {
        self.tower(s, FactKind::Cone)
    }

    /// Layers `X^∨_n = Cocone(X, X^∨_{n-1})`, starting from `X^∨_0 = X`.
    pub fn tower_check(&self, s: &Subcategory) -> Result<Tower> {
        self.tower(s, FactKind::Cocone)
    }

    /// Labels of the members, for reports.
    pub fn labels(&self, s: &Subcategory) -> Vec<String> {
        s.members()
            .iter()
            .map(|&i| self.cat.label(i).to_string())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_algebra;
    use crate::quiver::tests::a2;
    use crate::rep::{enumerate_indecomposables, EnumConfig};

    fn a2_ctx() -> (CategoryContext, usize, usize, usize) {
        let cat = Arc::new(enumerate_indecomposables(&a2(), &EnumConfig::default()).unwrap());
        let ix = |l: &str| cat.index_of_label(l).unwrap();
        let (s1, s2, p1) = (ix("S1"), ix("S2"), ix("P1"));
        (
            CategoryContext::full(cat, &SearchBounds::default()).unwrap(),
            s1,
            s2,
            p1,
        )
    }

    #[test]
    fn predicates_on_a2() {
        let (ctx, s1, s2, p1) = a2_ctx();
        let simples = Subcategory::new([s1, s2]);
        let ext = ctx.is_extension_closed(&simples);
        assert!(!ext.holds);
        assert_eq!(ext.witness.unwrap().out, vec![p1]);
        assert!(ctx.is_extension_closed(&Subcategory::new([p1])).holds);
        assert!(!ctx.is_cone_closed(&Subcategory::new([p1, s2])).holds);
        assert!(ctx.is_cone_closed(&Subcategory::new([s2])).holds);
        assert!(ctx.is_thick(&Subcategory::new([s1])).holds());
        assert!(ctx.is_thick(&Subcategory::new([p1])).holds());
        assert!(ctx.is_thick(&ctx.universe()).holds());
    }

    #[test]
    fn closures_and_enumeration() {
        let (ctx, s1, s2, p1) = a2_ctx();
        assert!(ctx.thick_closure(&Subcategory::empty()).unwrap().is_empty());
        assert_eq!(
            ctx.thick_closure(&Subcategory::new([p1, s2])).unwrap(),
            ctx.universe()
        );
        let all = ctx.enumerate_thick(None).unwrap();
        let expect = vec![
            Subcategory::empty(),
            Subcategory::new([s2]),
            Subcategory::new([s1]),
            Subcategory::new([p1]),
            ctx.universe(),
        ];
        assert_eq!(all.len(), 5);
        for e in &expect {
            assert!(all.contains(e));
        }
        let pt = parse_algebra(r#"{"vertices":["x"],"arrows":[]}"#).unwrap();
        let cat = Arc::new(enumerate_indecomposables(&pt, &EnumConfig::default()).unwrap());
        let c = CategoryContext::full(cat, &SearchBounds::default()).unwrap();
        assert_eq!(c.enumerate_thick(None).unwrap().len(), 2);
    }

    #[test]
    fn towers() {
        let (ctx, _s1, s2, p1) = a2_ctx();
        let t = ctx.tower_hat(&ctx.universe()).unwrap();
        assert!(t.saturated && t.layers.len() == 1);
        let proj = Subcategory::new([p1, s2]);
        let t = ctx.tower_hat(&proj).unwrap();
        assert!(t.saturated);
        assert_eq!(t.layers.len(), 2);
        let t = ctx.tower_check(&proj).unwrap();
        assert_eq!(t.union(), proj);
        let t = ctx.tower_hat(&Subcategory::empty()).unwrap();
        assert!(t.union().is_empty() && !t.saturated);
    }

    #[test]
    fn pattern_counts() {
        // one block of dim 2 on a tree edge: projective line over F_5
        assert_eq!(block_patterns(5, &[vec![2]], 100).unwrap().len(), 6);
        // 2x2 all ones: supports with a spanning tree (4 trees of 3 edges, 1 full cycle)
        let pats = block_patterns(5, &[vec![1, 1], vec![1, 1]], 100).unwrap();
        assert_eq!(pats.len(), 4 + 4);
        assert!(block_patterns(101, &[vec![1, 1], vec![1, 1]], 10).is_none());
    }
}
