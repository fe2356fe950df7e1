use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use qrep::exactlin::{Fp, Matrix};
use qrep::homology::{ext_dim, Ext1Space};
use qrep::recollement::RecollementContext;
use qrep::rep::{cokernel, combine, hom_basis, hom_dim, kernel, EnumConfig};
use qrep::subcat::{SearchBounds, Subcategory};
use qrep::{parse_algebra, IndecCatalog};

const A2: &str = r#"{"vertices": ["1", "2"], "arrows": [{"name": "alpha", "from": "1", "to": "2"}], "relations": []}"#;

fn ctx() -> &'static RecollementContext {
    static CTX: OnceLock<RecollementContext> = OnceLock::new();
    CTX.get_or_init(|| {
        let alg = parse_algebra(A2).unwrap();
        RecollementContext::triangular(&alg, &EnumConfig::default(), &SearchBounds::default())
            .unwrap()
    })
}

fn catalogs() -> [&'static Arc<IndecCatalog>; 2] {
    [ctx().cat_a(), ctx().cat_b()]
}

fn matrix(p: u32, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(0..p, rows * cols)
        .prop_map(move |d| Matrix::from_vec(Fp::new(p as u64).unwrap(), rows, cols, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| matrix(7, r, c))) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.cols(), m.cols());
        prop_assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn solve_recovers_image(m in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| matrix(5, r, c)), seed in any::<u64>()) {
        let f = m.field();
        let x: Vec<u32> = (0..m.cols()).map(|i| ((seed >> (i * 3)) % f.p() as u64) as u32).collect();
        let b = m.mul_vec(&x);
        let y = m.solve(&b).expect("b lies in the column space");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn hom_is_additive(which in 0usize..2, i in 0usize..11, j in 0usize..11, k in 0usize..11) {
        let cat = catalogs()[which];
        let n = cat.len();
        let (x, y, z) = (cat.item(i % n), cat.item(j % n), cat.item(k % n));
        prop_assert_eq!(hom_dim(&x.direct_sum(y), z), hom_dim(x, z) + hom_dim(y, z));
        prop_assert_eq!(hom_dim(z, &x.direct_sum(y)), hom_dim(z, x) + hom_dim(z, y));
        prop_assert_eq!(ext_dim(1, &x.direct_sum(y), z), ext_dim(1, x, z) + ext_dim(1, y, z));
    }

    #[test]
    fn decomposition_inverts_direct_sums(which in 0usize..2, picks in prop::collection::vec(0usize..11, 1..4)) {
        let cat = catalogs()[which];
        let mut picks: Vec<usize> = picks.into_iter().map(|i| i % cat.len()).collect();
        let object = cat.object(&picks);
        picks.sort();
        prop_assert_eq!(cat.decompose(&object).unwrap(), picks);
    }

    #[test]
    fn kernel_and_cokernel_are_exact(which in 0usize..2, i in 0usize..11, j in 0usize..11, coeffs in prop::collection::vec(0u32..101, 4)) {
        let cat = catalogs()[which];
        let (x, y) = (cat.item(i % cat.len()), cat.item(j % cat.len()));
        let basis = hom_basis(x, y);
        let g = combine(x, y, &basis, &coeffs[..basis.len()]);
        let (k, inc) = kernel(&g);
        let (c, proj) = cokernel(&g);
        prop_assert!(inc.then(&g).is_zero());
        prop_assert!(g.then(&proj).is_zero());
        prop_assert!(inc.is_mono() && proj.is_epi());
        let rank: usize = g.ranks().iter().sum();
        prop_assert_eq!(k.total_dim() + rank, x.total_dim());
        prop_assert_eq!(c.total_dim() + rank, y.total_dim());
    }

    #[test]
    fn extensions_add_dimensions(which in 0usize..2, i in 0usize..11, j in 0usize..11, coeffs in prop::collection::vec(0u32..101, 4)) {
        let cat = catalogs()[which];
        let (z, x) = (cat.item(i % cat.len()), cat.item(j % cat.len()));
        let space = Ext1Space::new(z, x);
        let ses = space.extension(&coeffs[..space.dim()]);
        prop_assert!(ses.is_exact());
        prop_assert_eq!(ses.middle().total_dim(), z.total_dim() + x.total_dim());
        let split = coeffs[..space.dim()].iter().all(|&c| c == 0);
        prop_assert_eq!(cat.decompose(ses.middle()).unwrap() == { let mut s = vec![i % cat.len(), j % cat.len()]; s.sort(); s }, split);
    }

    #[test]
    fn triples_round_trip(i in 0usize..11) {
        let ctx = ctx();
        let cat = ctx.cat_b();
        let m = cat.item(i % cat.len());
        let t = ctx.tri.to_triple(m);
        let back = ctx.tri.from_triple(&t.x, &t.y, &t.f);
        prop_assert_eq!(cat.identify(&back).unwrap(), i % cat.len());
    }

    #[test]
    fn closure_is_a_closure_operator(which in 0usize..2, s in 0u64..2048, t in 0u64..2048) {
        let c = if which == 0 { &ctx().a } else { &ctx().b };
        let n = c.catalog().len();
        let s = Subcategory::new((0..n).filter(|i| s >> i & 1 == 1));
        let t = s.union(&Subcategory::new((0..n).filter(|i| t >> i & 1 == 1)));
        let cs = c.thick_closure(&s).unwrap();
        prop_assert!(s.is_subset(&cs));
        prop_assert!(cs.is_subset(&c.thick_closure(&t).unwrap()));
        prop_assert_eq!(c.thick_closure(&cs).unwrap(), cs.clone());
        prop_assert!(c.is_thick(&cs).holds());
    }

    #[test]
    fn set_operations(s in 0u64..2048, t in 0u64..2048) {
        let a = Subcategory::new((0..11).filter(|i| s >> i & 1 == 1));
        let b = Subcategory::new((0..11).filter(|i| t >> i & 1 == 1));
        let u = a.union(&b);
        let m = a.intersection(&b);
        prop_assert!(a.is_subset(&u) && b.is_subset(&u));
        prop_assert!(m.is_subset(&a) && m.is_subset(&b));
        prop_assert_eq!(u.len() + m.len(), a.len() + b.len());
    }
}
