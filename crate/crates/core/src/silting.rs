//! Presilting and silting subcategories, cotorsion pairs, the correspondence
//! `M ↦ (M^∨, M^∧)`, and gluing and restriction of silting subcategories
//! along the triangular recollement.

use crate::error::{Error, Result};
use crate::homology::{ext_dim, global_dimension};
use crate::recollement::{Adjunction, Functor, RecollementContext};
use crate::rep::{hom_basis, kernel, pullback, Morphism, Representation};
use crate::subcat::{CategoryContext, Fact, Mode, Subcategory, Tower};

fn require_full(ctx: &CategoryContext) -> Result<()> {
    if ctx.mode() != Mode::Full {
        return Err(Error::Precondition(
            "silting predicates need a full module category".into(),
        ));
    }
    Ok(())
}

fn top_degree(ctx: &CategoryContext) -> usize {
    global_dimension(ctx.catalog().algebra()).max(1)
}

/// `(k, x, y)` with `Ext^k(x, y) ≠ 0`, searching `k` in `degrees`.
fn ext_witness(
    ctx: &CategoryContext,
    xs: &Subcategory,
    ys: &Subcategory,
    degrees: std::ops::RangeInclusive<usize>,
) -> Option<(usize, usize, usize)> {
    let cat = ctx.catalog();
    for k in degrees {
        for &x in xs.members() {
            for &y in ys.members() {
                if ext_dim(k, cat.item(x), cat.item(y)) != 0 {
                    return Some((k, x, y));
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presilting {
    /// `(k, x, y)` with `Ext^k(x, y) ≠ 0`.
    pub witness: Option<(usize, usize, usize)>,
}

impl Presilting {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// `Ext^k(M, M) = 0` for `1 ≤ k ≤ gldim`.
pub fn is_presilting(ctx: &CategoryContext, m: &Subcategory) -> Result<Presilting> {
    require_full(ctx)?;
    ctx.check_members(m)?;
    Ok(Presilting {
        witness: ext_witness(ctx, m, m, 1..=top_degree(ctx)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiltingReport {
    pub presilting: Presilting,
    /// Thick closure at the search bounds; saturation is the certificate.
    pub closure: Subcategory,
    pub saturated: bool,
}

impl SiltingReport {
    pub fn holds(&self) -> bool {
        self.presilting.holds() && self.saturated
    }
}

pub fn is_silting(ctx: &CategoryContext, m: &Subcategory) -> Result<SiltingReport> {
    let presilting = is_presilting(ctx, m)?;
    let closure = ctx.thick_closure(m)?;
    let saturated = closure == ctx.universe();
    Ok(SiltingReport {
        presilting,
        closure,
        saturated,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CotorsionPair {
    pub t: Subcategory,
    pub f: Subcategory,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Approximation {
    /// The object itself lies on the required side.
    Trivial,
    Conflation(Fact),
    Missing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CotorsionReport {
    /// `(t, f)` with `Ext¹(t, f) ≠ 0`.
    pub ext_witness: Option<(usize, usize)>,
    /// `F -> T -> C` for every universe item `C`.
    pub left: Vec<(usize, Approximation)>,
    /// `C -> F -> T` for every universe item `C`.
    pub right: Vec<(usize, Approximation)>,
}

impl CotorsionReport {
    pub fn holds(&self) -> bool {
        self.ext_witness.is_none()
            && self
                .left
                .iter()
                .chain(&self.right)
                .all(|(_, a)| *a != Approximation::Missing)
    }
}

pub fn is_cotorsion_pair(ctx: &CategoryContext, p: &CotorsionPair) -> Result<CotorsionReport> {
    require_full(ctx)?;
    ctx.check_members(&p.t)?;
    ctx.check_members(&p.f)?;
    let ext_witness = ext_witness(ctx, &p.t, &p.f, 1..=1).map(|(_, t, f)| (t, f));
    let inside = |ms: &[usize], s: &Subcategory| ms.iter().all(|&i| s.contains(i));
    let mut left = Vec::new();
    let mut right = Vec::new();
    for &c in ctx.universe().members() {
        let l = if p.t.contains(c) {
            Approximation::Trivial
        } else {
            ctx.conflations()
                .find(|f| {
                    let (a, b, z) = f.conflation();
                    z == [c] && inside(a, &p.f) && inside(b, &p.t)
                })
                .map_or(Approximation::Missing, |f| {
                    Approximation::Conflation(f.clone())
                })
        };
        left.push((c, l));
        let r = if p.f.contains(c) {
            Approximation::Trivial
        } else {
            ctx.conflations()
                .find(|f| {
                    let (a, b, z) = f.conflation();
                    a == [c] && inside(b, &p.f) && inside(z, &p.t)
                })
                .map_or(Approximation::Missing, |f| {
                    Approximation::Conflation(f.clone())
                })
        };
        right.push((c, r));
    }
    Ok(CotorsionReport {
        ext_witness,
        left,
        right,
    })
}

/// `(k, t, f)` with `k ≥ 2` and `Ext^k(t, f) ≠ 0`, if any.
pub fn hereditary_witness(
    ctx: &CategoryContext,
    p: &CotorsionPair,
) -> Result<Option<(usize, usize, usize)>> {
    require_full(ctx)?;
    let top = top_degree(ctx);
    Ok(if top < 2 {
        None
    } else {
        ext_witness(ctx, &p.t, &p.f, 2..=top)
    })
}

pub fn is_hereditary(ctx: &CategoryContext, p: &CotorsionPair) -> Result<bool> {
    Ok(hereditary_witness(ctx, p)?.is_none())
}

/// `T^∧` and `F^∨` both saturate the universe within the tower depth.
pub fn is_bounded(ctx: &CategoryContext, p: &CotorsionPair) -> Result<bool> {
    Ok(ctx.tower_hat(&p.t)?.saturated && ctx.tower_check(&p.f)?.saturated)
}

/// `(M^∨, M^∧)` from the bounded towers.
pub fn at_pair(ctx: &CategoryContext, m: &Subcategory) -> Result<(CotorsionPair, Tower, Tower)> {
    let check = ctx.tower_check(m)?;
    let hat = ctx.tower_hat(m)?;
    Ok((
        CotorsionPair {
            t: check.union(),
            f: hat.union(),
        },
        check,
        hat,
    ))
}

#[derive(Clone, Debug)]
pub struct AtReport {
    pub pair: CotorsionPair,
    pub cotorsion: CotorsionReport,
    pub hereditary: Option<(usize, usize, usize)>,
    pub bounded: bool,
    /// `M^∨ ∩ M^∧`
    pub intersection: Subcategory,
}

impl AtReport {
    pub fn holds(&self, m: &Subcategory) -> bool {
        self.cotorsion.holds()
            && self.hereditary.is_none()
            && self.bounded
            && &self.intersection == m
    }
}

/// Checks that `(M^∨, M^∧)` is a bounded hereditary cotorsion pair with `M^∨ ∩ M^∧ = M`.
pub fn at_bijection_check(ctx: &CategoryContext, m: &Subcategory) -> Result<AtReport> {
    if !is_silting(ctx, m)?.holds() {
        return Err(Error::Precondition(
            "the subcategory is not silting at the search bounds".into(),
        ));
    }
    let (pair, _, _) = at_pair(ctx, m)?;
    let cotorsion = is_cotorsion_pair(ctx, &pair)?;
    let hereditary = hereditary_witness(ctx, &pair)?;
    let bounded = is_bounded(ctx, &pair)?;
    let intersection = pair.t.intersection(&pair.f);
    Ok(AtReport {
        pair,
        cotorsion,
        hereditary,
        bounded,
        intersection,
    })
}

fn inside(ctx: &RecollementContext, which: Functor, i: usize, s: &Subcategory) -> Result<bool> {
    Ok(ctx.image_of_item(which, i)?.iter().all(|&k| s.contains(k)))
}

/// The glued pair: `T = {B | i^*B ∈ T₁, j^*B ∈ T₂}`, `F = {B | i^!B ∈ F₁, j^*B ∈ F₂}`.
pub fn glue_cotorsion(
    ctx: &RecollementContext,
    p1: &CotorsionPair,
    p2: &CotorsionPair,
) -> Result<CotorsionPair> {
    let mut t = Vec::new();
    let mut f = Vec::new();
    for &b in ctx.b.universe().members() {
        if inside(ctx, Functor::IUpperStar, b, &p1.t)?
            && inside(ctx, Functor::JUpperStar, b, &p2.t)?
        {
            t.push(b);
        }
        if inside(ctx, Functor::IUpperShriek, b, &p1.f)?
            && inside(ctx, Functor::JUpperStar, b, &p2.f)?
        {
            f.push(b);
        }
    }
    Ok(CotorsionPair {
        t: Subcategory::new(t),
        f: Subcategory::new(f),
    })
}

/// Exactness of the functors on the bounded conflations of their source categories.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Hypotheses {
    pub i_upper_shriek_exact: bool,
    pub j_lower_shriek_exact: bool,
    pub i_upper_star_exact: bool,
}

impl Hypotheses {
    pub fn of(ctx: &RecollementContext) -> Hypotheses {
        Hypotheses {
            i_upper_shriek_exact: ctx.exact_at_bounds(Functor::IUpperShriek).0,
            j_lower_shriek_exact: ctx.exact_at_bounds(Functor::JLowerShriek).0,
            i_upper_star_exact: ctx.exact_at_bounds(Functor::IUpperStar).0,
        }
    }

    pub fn all(&self) -> bool {
        self.i_upper_shriek_exact && self.j_lower_shriek_exact && self.i_upper_star_exact
    }
}

#[derive(Clone, Debug)]
pub struct GlueReport {
    pub hypotheses: Hypotheses,
    /// `{B | i^*B ∈ M_A^∨, j^*B ∈ M_C^∨, i^!B ∈ M_A^∧, j^*B ∈ M_C^∧}`
    pub m_b: Subcategory,
    pub m_b_silting: SiltingReport,
    /// `add(i_* M_A ⊕ j_! M_C)`
    pub formula: Subcategory,
    pub formula_silting: SiltingReport,
    pub glued: CotorsionPair,
}

impl GlueReport {
    pub fn agrees(&self) -> bool {
        self.m_b == self.formula
    }

    /// Every hypothesis verified, the glued subcategory silting and equal to the formula.
    pub fn verified(&self) -> bool {
        self.hypotheses.all() && self.m_b_silting.holds() && self.agrees()
    }
}

pub fn glue_silting(
    ctx: &RecollementContext,
    ma: &Subcategory,
    mc: &Subcategory,
) -> Result<GlueReport> {
    if !is_silting(&ctx.a, ma)?.holds() {
        return Err(Error::Precondition(
            "M_A is not silting at the search bounds".into(),
        ));
    }
    if !is_silting(&ctx.c, mc)?.holds() {
        return Err(Error::Precondition(
            "M_C is not silting at the search bounds".into(),
        ));
    }
    let (pa, _, _) = at_pair(&ctx.a, ma)?;
    let (pc, _, _) = at_pair(&ctx.c, mc)?;
    let glued = glue_cotorsion(ctx, &pa, &pc)?;
    let m_b = glued.t.intersection(&glued.f);
    let formula = ctx
        .image(Functor::ILowerStar, ma)?
        .union(&ctx.image(Functor::JLowerShriek, mc)?);
    Ok(GlueReport {
        hypotheses: Hypotheses::of(ctx),
        m_b_silting: is_silting(&ctx.b, &m_b)?,
        formula_silting: is_silting(&ctx.b, &formula)?,
        m_b,
        formula,
        glued,
    })
}

#[derive(Clone, Debug)]
pub struct RestrictReport {
    /// `i_* i^! M^∨ ⊆ M^∨` and `i_* i^* M^∨ ⊆ M^∨`
    pub branch_a: bool,
    /// `j_* j^* M^∧ ⊆ M^∧` or `j_! j^* M^∨ ⊆ M^∨`
    pub branch_c: bool,
    /// `i^* M^∨ ∩ i^! M^∧`
    pub candidate_a: Subcategory,
    pub silting_a: SiltingReport,
    /// `j^* M^∨ ∩ j^* M^∧`
    pub candidate_c: Subcategory,
    pub silting_c: SiltingReport,
    /// The summands of `i^* M` and `j^* M` are exactly the candidates.
    pub generated_a: bool,
    pub generated_c: bool,
}

impl RestrictReport {
    pub fn verified(&self) -> bool {
        self.branch_a
            && self.branch_c
            && self.silting_a.holds()
            && self.silting_c.holds()
            && self.generated_a
            && self.generated_c
    }
}

pub fn restrict_silting(ctx: &RecollementContext, m: &Subcategory) -> Result<RestrictReport> {
    use Functor::*;
    if !is_silting(&ctx.b, m)?.holds() {
        return Err(Error::Precondition(
            "M is not silting at the search bounds".into(),
        ));
    }
    let (p, _, _) = at_pair(&ctx.b, m)?;
    let (mv, mh) = (&p.t, &p.f);
    let through = |outer: Functor, inner: Functor, s: &Subcategory| -> Result<Subcategory> {
        ctx.image(outer, &ctx.image(inner, s)?)
    };
    let branch_a = through(ILowerStar, IUpperShriek, mv)?.is_subset(mv)
        && through(ILowerStar, IUpperStar, mv)?.is_subset(mv);
    let branch_c = through(JLowerStar, JUpperStar, mh)?.is_subset(mh)
        || through(JLowerShriek, JUpperStar, mv)?.is_subset(mv);
    let candidate_a = ctx
        .image(IUpperStar, mv)?
        .intersection(&ctx.image(IUpperShriek, mh)?);
    let candidate_c = ctx
        .image(JUpperStar, mv)?
        .intersection(&ctx.image(JUpperStar, mh)?);
    Ok(RestrictReport {
        branch_a,
        branch_c,
        silting_a: is_silting(&ctx.a, &candidate_a)?,
        silting_c: is_silting(&ctx.c, &candidate_c)?,
        generated_a: ctx.image(IUpperStar, m)? == candidate_a,
        generated_c: ctx.image(JUpperStar, m)? == candidate_c,
        candidate_a,
        candidate_c,
    })
}

/// One conflation `K -> T -> M` of an approximation chain.
#[derive(Clone, Debug)]
pub struct ApproxStep {
    pub m: Vec<usize>,
    pub t: Vec<usize>,
    pub k: Vec<usize>,
    pub exact: bool,
    pub t_in_glued: bool,
    /// Tower level of `i^! K` over `T₁` and of `j^* K` over `T₂` (`Some(0)` for zero).
    pub level_a: Option<usize>,
    pub level_c: Option<usize>,
}

/// The sum of every map from `T`-items to `y` along a Hom basis; `None` if
/// the result is not an epimorphism.
fn universal_map(ctx: &CategoryContext, t: &Subcategory, y: &Representation) -> Option<Morphism> {
    let cat = ctx.catalog();
    let alg = y.algebra();
    let maps: Vec<Morphism> = t
        .members()
        .iter()
        .flat_map(|&i| hom_basis(cat.item(i), y))
        .collect();
    let source = Representation::direct_sum_all(alg, maps.iter().map(|h| &h.source));
    let f = y.field();
    let mats = (0..alg.num_vertices())
        .map(|v| {
            let mut m = crate::exactlin::Matrix::zeros(f, y.dims()[v], source.dims()[v]);
            let mut c0 = 0;
            for h in &maps {
                m.paste(0, c0, &h.mats[v]);
                c0 += h.source.dims()[v];
            }
            m
        })
        .collect();
    let g = Morphism {
        source,
        target: y.clone(),
        mats,
    };
    g.is_epi().then_some(g)
}

/// A right `T`-approximation of `y`: the identity when `y ∈ add T`, else [`universal_map`].
fn approximation(
    ctx: &CategoryContext,
    t: &Subcategory,
    y: &Representation,
) -> Result<Option<Morphism>> {
    let parts = ctx.catalog().decompose(y)?;
    if parts.iter().all(|&i| t.contains(i)) {
        return Ok(Some(Morphism::identity(y)));
    }
    Ok(universal_map(ctx, t, y))
}

fn level(ctx: &CategoryContext, tower: &Tower, x: &Representation) -> Result<Option<usize>> {
    let mut top = 0;
    for i in ctx.catalog().decompose(x)? {
        match tower.level_of(i) {
            Some(l) => top = top.max(l),
            None => return Ok(None),
        }
    }
    Ok(Some(top))
}

/// Builds conflations `K_{n-1} -> T_n -> M` with `T_n` in the glued `T`,
/// continuing with `K` until it vanishes or `max_steps` is reached:
/// approximate `j^*M` over `T₂`, pull back along `M -> j_* j^* M` to get `H`,
/// approximate `i^*H` over `T₁`, pull back along `H -> i_* i^* H` to get `T_n`.
pub fn approximation_chain(
    ctx: &RecollementContext,
    p1: &CotorsionPair,
    p2: &CotorsionPair,
    m: &Representation,
    max_steps: usize,
) -> Result<Vec<ApproxStep>> {
    use Functor::*;
    let glued = glue_cotorsion(ctx, p1, p2)?;
    let tower_a = ctx.a.tower_hat(&p1.t)?;
    let tower_c = ctx.c.tower_hat(&p2.t)?;
    let cb = ctx.cat_b();
    let mut steps = Vec::new();
    let mut x = m.clone();
    while !x.is_zero() {
        if steps.len() == max_steps {
            return Err(Error::Bounds(format!(
                "approximation chain longer than {max_steps}"
            )));
        }
        let parts = cb.decompose(&x)?;
        if parts.iter().all(|&i| glued.t.contains(i)) {
            steps.push(ApproxStep {
                m: parts.clone(),
                t: parts,
                k: vec![],
                exact: true,
                t_in_glued: true,
                level_a: Some(0),
                level_c: Some(0),
            });
            break;
        }
        let stage = |s: &str| Error::Internal(format!("approximation failed at the {s} stage"));
        let y = ctx.apply(JUpperStar, &x);
        let g = approximation(&ctx.c, &p2.t, &y)?.ok_or_else(|| stage("right-hand"))?;
        let vt = ctx
            .unit_counit(Adjunction::Vartheta, &x)
            .ok_or_else(|| stage("unit"))?;
        let (h, h_to_x, _) = pullback(&vt, &ctx.apply_morphism(JLowerStar, &g));
        let z = ctx.apply(IUpperStar, &h);
        let f = approximation(&ctx.a, &p1.t, &z)?.ok_or_else(|| stage("left-hand"))?;
        let eta = ctx
            .unit_counit(Adjunction::Eta, &h)
            .ok_or_else(|| stage("unit"))?;
        let (t, t_to_h, _) = pullback(&eta, &ctx.apply_morphism(ILowerStar, &f));
        let d = t_to_h.then(&h_to_x);
        let (k, incl) = kernel(&d);
        let exact = d.is_epi() && incl.is_mono() && incl.then(&d).is_zero();
        let t_parts = cb.decompose(&t)?;
        steps.push(ApproxStep {
            m: parts,
            t_in_glued: t_parts.iter().all(|&i| glued.t.contains(i)),
            t: t_parts,
            k: cb.decompose(&k)?,
            exact,
            level_a: level(&ctx.a, &tower_a, &ctx.apply(IUpperShriek, &k))?,
            level_c: level(&ctx.c, &tower_c, &ctx.apply(JUpperStar, &k))?,
        });
        x = k;
    }
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_algebra;
    use crate::quiver::tests::a2;
    use crate::rep::{enumerate_indecomposables, EnumConfig};
    use crate::subcat::SearchBounds;
    use std::sync::Arc;

    fn a2_ctx() -> CategoryContext {
        let cat = Arc::new(enumerate_indecomposables(&a2(), &EnumConfig::default()).unwrap());
        CategoryContext::full(cat, &SearchBounds::default()).unwrap()
    }

    fn sub(ctx: &CategoryContext, labels: &[&str]) -> Subcategory {
        Subcategory::new(
            labels
                .iter()
                .map(|l| ctx.catalog().index_of_label(l).unwrap()),
        )
    }

    #[test]
    fn presilting_examples() {
        let c = a2_ctx();
        assert!(is_presilting(&c, &sub(&c, &["P1", "S2"])).unwrap().holds());
        assert!(!is_presilting(&c, &sub(&c, &["S1", "S2"])).unwrap().holds());
        assert!(is_presilting(&c, &sub(&c, &["S1", "P1"])).unwrap().holds());
        assert!(is_silting(&c, &sub(&c, &["P1", "S2"])).unwrap().holds());
        assert!(is_silting(&c, &sub(&c, &["S1", "P1"])).unwrap().holds());
        let r = is_silting(&c, &sub(&c, &["P1"])).unwrap();
        assert!(!r.holds() && r.closure == sub(&c, &["P1"]));
        let ec = c.restrict(&sub(&c, &["P1"])).unwrap();
        assert!(is_presilting(&ec, &sub(&c, &["P1"])).is_err());
    }

    #[test]
    fn cotorsion_examples() {
        let c = a2_ctx();
        // (mod A, 0) lacks C -> F' -> T' for nonzero C
        let r = is_cotorsion_pair(
            &c,
            &CotorsionPair {
                t: c.universe(),
                f: Subcategory::empty(),
            },
        )
        .unwrap();
        assert!(
            r.ext_witness.is_none() && r.right.iter().all(|(_, a)| *a == Approximation::Missing)
        );
        let r = is_cotorsion_pair(
            &c,
            &CotorsionPair {
                t: c.universe(),
                f: c.universe(),
            },
        )
        .unwrap();
        assert_eq!(
            r.ext_witness
                .map(|(t, f)| (c.catalog().label(t), c.catalog().label(f))),
            Some(("S1", "S2"))
        );
        let r = is_cotorsion_pair(
            &c,
            &CotorsionPair {
                t: Subcategory::empty(),
                f: c.universe(),
            },
        )
        .unwrap();
        assert!(!r.holds() && r.left.iter().all(|(_, a)| *a == Approximation::Missing));
        let r = is_cotorsion_pair(
            &c,
            &CotorsionPair {
                t: Subcategory::empty(),
                f: Subcategory::empty(),
            },
        )
        .unwrap();
        assert!(!r.holds());
        let proj = sub(&c, &["P1", "S2"]);
        let (p, _, _) = at_pair(&c, &proj).unwrap();
        assert_eq!(
            p,
            CotorsionPair {
                t: proj.clone(),
                f: c.universe()
            }
        );
        assert!(is_cotorsion_pair(&c, &p).unwrap().holds());
        assert!(is_hereditary(&c, &p).unwrap() && is_bounded(&c, &p).unwrap());
        assert!(!is_bounded(
            &c,
            &CotorsionPair {
                t: Subcategory::empty(),
                f: c.universe()
            }
        )
        .unwrap());
    }

    #[test]
    fn at_round_trips() {
        let c = a2_ctx();
        for m in [sub(&c, &["P1", "S2"]), sub(&c, &["S1", "P1"])] {
            assert!(at_bijection_check(&c, &m).unwrap().holds(&m));
        }
        assert!(at_bijection_check(&c, &sub(&c, &["P1"])).is_err());
        let pt = parse_algebra(r#"{"vertices":["1"],"arrows":[]}"#).unwrap();
        let cat = Arc::new(enumerate_indecomposables(&pt, &EnumConfig::default()).unwrap());
        let c = CategoryContext::full(cat, &SearchBounds::default()).unwrap();
        let r = at_bijection_check(&c, &c.universe()).unwrap();
        assert!(r.holds(&c.universe()) && r.pair.t == c.universe() && r.pair.f == c.universe());
    }

    fn rctx() -> RecollementContext {
        RecollementContext::triangular(&a2(), &EnumConfig::default(), &SearchBounds::default())
            .unwrap()
    }

    #[test]
    fn gluing_projectives() {
        let c = rctx();
        let proj = sub(&c.a, &["P1", "S2"]);
        let r = glue_silting(&c, &proj, &proj).unwrap();
        let projb = Subcategory::new(
            ["(P1,0)", "(S2,0)", "(P1,P1)_1", "(S2,S2)_1"]
                .iter()
                .map(|l| c.cat_b().index_of_label(l).unwrap()),
        );
        assert_eq!(r.formula, projb);
        assert!(r.formula_silting.holds());
        assert!(
            r.hypotheses.i_upper_shriek_exact
                && r.hypotheses.j_lower_shriek_exact
                && !r.hypotheses.i_upper_star_exact
        );
        let back = restrict_silting(&c, &r.formula).unwrap();
        assert!(back.verified(), "{back:?}");
        assert_eq!(
            (back.candidate_a.clone(), back.candidate_c.clone()),
            (proj.clone(), proj.clone())
        );
        assert!(glue_silting(&c, &proj, &sub(&c.a, &["P1"])).is_err());
    }

    #[test]
    fn approximation_chains() {
        let c = rctx();
        let proj = sub(&c.a, &["P1", "S2"]);
        let (p, _, _) = at_pair(&c.a, &proj).unwrap();
        let cb = c.cat_b();
        for i in 0..cb.len() {
            let steps = approximation_chain(&c, &p, &p, cb.item(i), 8).unwrap();
            assert!(!steps.is_empty());
            for s in &steps {
                assert!(s.exact && s.t_in_glued, "{}", cb.label(i));
            }
        }
        let projb = cb.index_of_label("(P1,P1)_1").unwrap();
        let steps = approximation_chain(&c, &p, &p, cb.item(projb), 8).unwrap();
        assert_eq!(steps.len(), 1);
        assert!(steps[0].k.is_empty() && steps[0].t == vec![projb]);
    }
}
