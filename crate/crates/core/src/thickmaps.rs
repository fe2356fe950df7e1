//! The mutually inverse maps between thick subcategories of the right-hand
//! category and thick subcategories of the middle one containing `i_* A`:
//! `Φ(V) = j^* V` and `Ψ(W) = {M | j^* M ∈ W}`.

use crate::error::Result;
use crate::recollement::{Functor, RecollementContext, Report};
use crate::subcat::{Subcategory, ThickReport};

pub fn phi(ctx: &RecollementContext, v: &Subcategory) -> Result<Subcategory> {
    ctx.image(Functor::JUpperStar, v)
}

/// Members of the `B`-universe whose `j^*` image decomposes inside `W`.
pub fn psi(ctx: &RecollementContext, w: &Subcategory) -> Result<Subcategory> {
    let mut out = Vec::new();
    for &i in ctx.b.universe().members() {
        let img = ctx.image_of_item(Functor::JUpperStar, i)?;
        if img.iter().all(|k| w.contains(*k)) {
            out.push(i);
        }
    }
    Ok(Subcategory::new(out))
}

/// One row of the correspondence: `V` and `Φ(V)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub v: Subcategory,
    pub phi_v: Subcategory,
}

#[derive(Clone, Debug)]
pub struct BijectionReport {
    /// Thick subcategories of the right-hand category.
    pub thick_c: Vec<Subcategory>,
    /// Thick subcategories of the middle category containing `i_* A`.
    pub thick_b: Vec<Subcategory>,
    /// Sorted by the size of `Φ(V)`, then its members.
    pub rows: Vec<Row>,
    pub checks: Report,
}

pub type SubcatMap<'a> = &'a dyn Fn(&RecollementContext, &Subcategory) -> Result<Subcategory>;

pub fn verify_bijection(ctx: &RecollementContext) -> Result<BijectionReport> {
    verify_bijection_with(ctx, &phi, &psi)
}

/// [`verify_bijection`] with replaceable maps.
pub fn verify_bijection_with(
    ctx: &RecollementContext,
    phi: SubcatMap,
    psi: SubcatMap,
) -> Result<BijectionReport> {
    use Functor::*;
    let ia = ctx.image(ILowerStar, &ctx.a.universe())?;
    let thick_b = ctx.b.enumerate_thick(Some(&ia))?;
    let thick_c = ctx.c.enumerate_thick(None)?;
    let mut checks = Report::default();
    let cb = ctx.cat_b();

    let images: Vec<Subcategory> = thick_b.iter().map(|v| phi(ctx, v)).collect::<Result<_>>()?;
    let preimages: Vec<Subcategory> = thick_c.iter().map(|w| psi(ctx, w)).collect::<Result<_>>()?;

    let fail = images
        .iter()
        .zip(&thick_b)
        .find(|(w, _)| !thick_c.contains(w))
        .map(|(w, v)| {
            format!(
                "Φ({:?}) = {:?} is not thick",
                ctx.b.labels(v),
                ctx.c.labels(w)
            )
        });
    checks.push("Φ maps into thick subcategories", fail);
    let fail = preimages
        .iter()
        .zip(&thick_c)
        .find(|(v, _)| !thick_b.contains(v))
        .map(|(v, w)| {
            format!(
                "Ψ({:?}) = {:?} is not thick or misses i_* A",
                ctx.c.labels(w),
                ctx.b.labels(v)
            )
        });
    checks.push("Ψ maps into thick subcategories containing i_* A", fail);

    let mut fail = None;
    for (v, w) in thick_b.iter().zip(&images) {
        if &psi(ctx, w)? != v {
            fail = Some(format!(
                "ΨΦ differs from the identity at {:?}",
                ctx.b.labels(v)
            ));
            break;
        }
    }
    checks.push("ΨΦ = id", fail);
    let mut fail = None;
    for (w, v) in thick_c.iter().zip(&preimages) {
        if &phi(ctx, v)? != w {
            fail = Some(format!(
                "ΦΨ differs from the identity at {:?}",
                ctx.c.labels(w)
            ));
            break;
        }
    }
    checks.push("ΦΨ = id", fail);

    // j^* M ∈ j^* V implies M ∈ V
    let mut fail = None;
    'reflect: for (v, w) in thick_b.iter().zip(&images) {
        for &m in ctx.b.universe().members() {
            let img = ctx.image_of_item(JUpperStar, m)?;
            if img.iter().all(|k| w.contains(*k)) && !v.contains(m) {
                fail = Some(format!(
                    "{} has j^* image in Φ({:?}) but is not a member",
                    cb.label(m),
                    ctx.b.labels(v)
                ));
                break 'reflect;
            }
        }
    }
    checks.push("membership is detected by j^*", fail);

    let mut fail = None;
    'stable: for v in &thick_b {
        for (outer, inner) in [
            (ILowerStar, IUpperStar),
            (ILowerStar, IUpperShriek),
            (JLowerStar, JUpperStar),
            (JLowerShriek, JUpperStar),
        ] {
            let back = ctx.image(outer, &ctx.image(inner, v)?)?;
            if !back.is_subset(v) {
                fail = Some(format!(
                    "{}{} does not preserve {:?}",
                    outer.name(),
                    inner.name(),
                    ctx.b.labels(v)
                ));
                break 'stable;
            }
        }
    }
    checks.push("V is stable under the four composites", fail);

    let mut fail = None;
    'mono: for (v1, w1) in thick_b.iter().zip(&images) {
        for (v2, w2) in thick_b.iter().zip(&images) {
            if v1.is_subset(v2) && !w1.is_subset(w2) {
                fail = Some(format!(
                    "Φ not monotone on {:?} ⊆ {:?}",
                    ctx.b.labels(v1),
                    ctx.b.labels(v2)
                ));
                break 'mono;
            }
        }
    }
    checks.push("Φ is monotone", fail);

    let mut rows: Vec<Row> = thick_b
        .iter()
        .zip(images)
        .map(|(v, w)| Row {
            v: v.clone(),
            phi_v: w,
        })
        .collect();
    rows.sort_by(|a, b| {
        (a.phi_v.len(), a.phi_v.members()).cmp(&(b.phi_v.len(), b.phi_v.members()))
    });
    Ok(BijectionReport {
        thick_c,
        thick_b,
        rows,
        checks,
    })
}

/// `i^* V` or `i^! V`, with the hypothesis `i_* i^* V ⊆ V` (resp. `i_* i^! V ⊆ V`).
#[derive(Clone, Debug)]
pub struct LeftImage {
    pub image: Subcategory,
    pub hypothesis: bool,
    pub thick: ThickReport,
}

#[derive(Clone, Debug)]
pub struct LeftImages {
    pub i_upper_star: LeftImage,
    pub i_upper_shriek: LeftImage,
    /// `Some(both images are the whole A-universe)` when `i_* A ⊆ V`.
    pub contains_ia: Option<bool>,
}

impl LeftImages {
    /// Whether every statement applicable under the checked hypotheses holds.
    pub fn holds(&self) -> bool {
        [&self.i_upper_star, &self.i_upper_shriek]
            .iter()
            .all(|x| !x.hypothesis || x.thick.holds())
            && self.contains_ia != Some(false)
    }
}

pub fn image_under_left_functors(ctx: &RecollementContext, v: &Subcategory) -> Result<LeftImages> {
    let side = |f: Functor| -> Result<LeftImage> {
        let image = ctx.image(f, v)?;
        let hypothesis = ctx.image(Functor::ILowerStar, &image)?.is_subset(v);
        let thick = ctx.a.is_thick(&image);
        Ok(LeftImage {
            image,
            hypothesis,
            thick,
        })
    };
    let i_upper_star = side(Functor::IUpperStar)?;
    let i_upper_shriek = side(Functor::IUpperShriek)?;
    let ia = ctx.image(Functor::ILowerStar, &ctx.a.universe())?;
    let contains_ia = ia.is_subset(v).then(|| {
        let a = ctx.a.universe();
        i_upper_star.image == a && i_upper_shriek.image == a
    });
    Ok(LeftImages {
        i_upper_star,
        i_upper_shriek,
        contains_ia,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_algebra;
    use crate::quiver::tests::a2;
    use crate::rep::EnumConfig;
    use crate::subcat::SearchBounds;

    fn ctx() -> RecollementContext {
        RecollementContext::triangular(&a2(), &EnumConfig::default(), &SearchBounds::default())
            .unwrap()
    }

    fn sub(c: &RecollementContext, labels: &[&str]) -> Subcategory {
        Subcategory::new(labels.iter().map(|l| c.cat_b().index_of_label(l).unwrap()))
    }

    #[test]
    fn five_rows() {
        let c = ctx();
        let r = verify_bijection(&c).unwrap();
        assert!(r.checks.passed(), "{:?}", r.checks);
        assert_eq!(r.thick_b.len(), 5);
        assert_eq!(r.thick_c.len(), 5);
        let phis: Vec<Vec<String>> = r.rows.iter().map(|row| c.c.labels(&row.phi_v)).collect();
        assert_eq!(
            phis,
            vec![
                vec![],
                vec!["S2".to_string()],
                vec!["S1".into()],
                vec!["P1".into()],
                vec!["S2".into(), "S1".into(), "P1".into()]
            ]
        );
        assert_eq!(r.rows[0].v, sub(&c, &["(S2,0)", "(P1,0)", "(S1,0)"]));
        assert_eq!(
            r.rows[3].v,
            sub(
                &c,
                &[
                    "(S2,0)",
                    "(P1,0)",
                    "(S1,0)",
                    "(P1,P1)_1",
                    "(S1,P1)_f",
                    "(0,P1)"
                ]
            )
        );
    }

    #[test]
    fn psi_examples() {
        let c = ctx();
        assert_eq!(
            psi(&c, &Subcategory::empty()).unwrap(),
            sub(&c, &["(S2,0)", "(P1,0)", "(S1,0)"])
        );
        assert_eq!(psi(&c, &c.c.universe()).unwrap(), c.b.universe());
    }

    #[test]
    fn corrupted_psi_is_detected() {
        let c = ctx();
        let bad = |ctx: &RecollementContext, w: &Subcategory| -> Result<Subcategory> {
            let v = psi(ctx, w)?;
            Ok(Subcategory::new(v.members().iter().copied().skip(1)))
        };
        let r = verify_bijection_with(&c, &phi, &bad).unwrap();
        assert!(!r.checks.passed());
    }

    #[test]
    fn point_gives_two_and_two() {
        let pt = parse_algebra(r#"{"vertices":["1"],"arrows":[]}"#).unwrap();
        let c =
            RecollementContext::triangular(&pt, &EnumConfig::default(), &SearchBounds::default())
                .unwrap();
        let r = verify_bijection(&c).unwrap();
        assert!(r.checks.passed());
        assert_eq!((r.thick_b.len(), r.thick_c.len()), (2, 2));
    }

    #[test]
    fn left_images() {
        let c = ctx();
        let r = image_under_left_functors(&c, &c.b.universe()).unwrap();
        assert!(r.holds() && r.contains_ia == Some(true));
        let row = verify_bijection(&c).unwrap().rows[2].v.clone();
        let r = image_under_left_functors(&c, &row).unwrap();
        assert_eq!(r.contains_ia, Some(true));
        let r = image_under_left_functors(&c, &sub(&c, &["(P1,P1)_1"])).unwrap();
        // i^* kills (P1,P1)_1; i^! gives P1, whose i_* is not in V
        assert!(r.i_upper_star.image.is_empty() && r.i_upper_star.hypothesis);
        assert!(!r.i_upper_shriek.hypothesis);
        assert_eq!(r.contains_ia, None);
    }

    #[test]
    fn restricted_row_three() {
        let c = ctx();
        let v = sub(&c, &["(S2,0)", "(P1,0)", "(S1,0)", "(S1,S1)_1", "(0,S1)"]);
        let r = c.restricted(&v).unwrap();
        assert!(r.verify().unwrap().passed());
        assert_eq!(r.c.labels(&phi(&r, &v).unwrap()), vec!["S1".to_string()]);
        let row1 = sub(&c, &["(S2,0)", "(P1,0)", "(S1,0)"]);
        let r = c.restricted(&row1).unwrap();
        assert!(r.c.universe().is_empty());
        assert!(r.verify().unwrap().passed());
    }
}
