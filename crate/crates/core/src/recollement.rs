//! The recollement `mod A -> mod B -> mod A` of the triangular matrix algebra
//! `B = [[A, A], [0, A]]`, whose modules are triples `(X, Y)_f` with `f: Y -> X`.
//!
//! `B` is realized as a bound quiver algebra: an `x`-copy and a `y`-copy of the
//! quiver of `A`, one arrow `f_v: y_v -> x_v` per vertex, the relations of `A`
//! in both copies, and a commutativity relation for every arrow of `A`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::homology::{ext_dim, global_dimension};
use crate::quiver::{Algebra, Arrow, Quiver, Relation};
use crate::rep::endo::are_isomorphic;
use crate::rep::{
    cokernel, enumerate_indecomposables, hom_basis, hom_dim, EnumConfig, IndecCatalog, Morphism,
    Representation,
};
use crate::subcat::{CategoryContext, Fact, SearchBounds, Subcategory};

/// A `B`-module in triple form.
#[derive(Clone, Debug)]
pub struct Triple {
    pub x: Representation,
    pub y: Representation,
    /// `Y -> X`
    pub f: Morphism,
}

/// The algebra `B` together with the translation between `B`-modules and triples.
#[derive(Debug)]
pub struct Triangular {
    a: Arc<Algebra>,
    b: Arc<Algebra>,
}

impl Triangular {
    pub fn new(a: &Arc<Algebra>) -> Result<Triangular> {
        let n = a.num_vertices();
        let na = a.num_arrows();
        let mut vertices: Vec<String> = (0..n).map(|v| format!("x{}", a.vertex_name(v))).collect();
        vertices.extend((0..n).map(|v| format!("y{}", a.vertex_name(v))));
        let mut arrows = Vec::new();
        for (suffix, shift) in [("x", 0), ("y", n)] {
            for i in 0..na {
                let arr = a.arrow(i);
                arrows.push(Arrow {
                    name: format!("{}_{suffix}", arr.name),
                    source: arr.source + shift,
                    target: arr.target + shift,
                });
            }
        }
        for v in 0..n {
            arrows.push(Arrow {
                name: format!("f_{}", a.vertex_name(v)),
                source: n + v,
                target: v,
            });
        }
        let p = a.field().p();
        let mut relations = Vec::new();
        for shift in [0, na] {
            for r in a.relations() {
                relations.push(Relation {
                    terms: r
                        .terms
                        .iter()
                        .map(|(c, path)| (*c, path.iter().map(|x| x + shift).collect()))
                        .collect(),
                });
            }
        }
        for i in 0..na {
            let arr = a.arrow(i);
            // a_y then f_t equals f_s then a_x
            relations.push(Relation {
                terms: vec![
                    (1, vec![na + i, 2 * na + arr.target]),
                    (p - 1, vec![2 * na + arr.source, i]),
                ],
            });
        }
        let b = Algebra::new(Quiver { vertices, arrows }, relations, p as u64)?;
        Ok(Triangular {
            a: a.clone(),
            b: Arc::new(b),
        })
    }

    pub fn a(&self) -> &Arc<Algebra> {
        &self.a
    }

    pub fn b(&self) -> &Arc<Algebra> {
        &self.b
    }

    fn n(&self) -> usize {
        self.a.num_vertices()
    }

    fn na(&self) -> usize {
        self.a.num_arrows()
    }

    pub fn to_triple(&self, m: &Representation) -> Triple {
        let (n, na) = (self.n(), self.na());
        let x = Representation::new(&self.a, m.dims()[..n].to_vec(), m.mats()[..na].to_vec())
            .expect("x-part is an A-module");
        let y = Representation::new(
            &self.a,
            m.dims()[n..].to_vec(),
            m.mats()[na..2 * na].to_vec(),
        )
        .expect("y-part is an A-module");
        let f = Morphism::new(&y, &x, m.mats()[2 * na..].to_vec()).expect("f is an A-morphism");
        Triple { x, y, f }
    }

    pub fn from_triple(
        &self,
        x: &Representation,
        y: &Representation,
        f: &Morphism,
    ) -> Representation {
        let mut dims = x.dims().to_vec();
        dims.extend_from_slice(y.dims());
        let mut mats = x.mats().to_vec();
        mats.extend_from_slice(y.mats());
        mats.extend(f.mats.iter().cloned());
        Representation::new(&self.b, dims, mats).expect("a triple defines a B-module")
    }

    /// The `(X, Y)` components of a `B`-morphism.
    pub fn split_morphism(&self, g: &Morphism) -> (Morphism, Morphism) {
        let n = self.n();
        let s = self.to_triple(&g.source);
        let t = self.to_triple(&g.target);
        (
            Morphism {
                source: s.x,
                target: t.x,
                mats: g.mats[..n].to_vec(),
            },
            Morphism {
                source: s.y,
                target: t.y,
                mats: g.mats[n..].to_vec(),
            },
        )
    }

    /// A `B`-morphism from its components, or `None` if shapes or compatibility fail.
    pub fn join_morphism(
        &self,
        src: &Representation,
        tgt: &Representation,
        xs: Vec<Matrix>,
        ys: Vec<Matrix>,
    ) -> Option<Morphism> {
        let n = self.n();
        if src.algebra().num_vertices() != 2 * n || tgt.algebra().num_vertices() != 2 * n {
            return None;
        }
        let mut mats = xs;
        mats.extend(ys);
        for (v, m) in mats.iter().enumerate() {
            if m.shape() != (tgt.dims()[v], src.dims()[v]) {
                return None;
            }
        }
        Morphism::new(src, tgt, mats).ok()
    }

    /// `(X, Y)`, `(X, Y)_1` or `(X, Y)_f` according to whether `f` is zero, an isomorphism or neither.
    pub fn triple_label(&self, cat_a: &IndecCatalog, m: &Representation) -> Result<String> {
        let t = self.to_triple(m);
        let name = |r: &Representation| -> Result<String> {
            if r.is_zero() {
                return Ok("0".into());
            }
            let parts: Vec<&str> = cat_a
                .decompose(r)?
                .iter()
                .map(|&i| cat_a.label(i))
                .collect();
            Ok(parts.join("+"))
        };
        let suffix = if t.f.is_zero() {
            ""
        } else if t.f.is_iso() {
            "_1"
        } else {
            "_f"
        };
        Ok(format!("({},{}){suffix}", name(&t.x)?, name(&t.y)?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Functor {
    IUpperStar,
    ILowerStar,
    IUpperShriek,
    JLowerShriek,
    JUpperStar,
    JLowerStar,
}

impl Functor {
    pub const ALL: [Functor; 6] = [
        Functor::IUpperStar,
        Functor::ILowerStar,
        Functor::IUpperShriek,
        Functor::JLowerShriek,
        Functor::JUpperStar,
        Functor::JLowerStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Functor::IUpperStar => "i^*",
            Functor::ILowerStar => "i_*",
            Functor::IUpperShriek => "i^!",
            Functor::JLowerShriek => "j_!",
            Functor::JUpperStar => "j^*",
            Functor::JLowerStar => "j_*",
        }
    }

    /// Whether the functor goes from `mod B` to `mod A`.
    pub fn from_b(self) -> bool {
        matches!(
            self,
            Functor::IUpperStar | Functor::IUpperShriek | Functor::JUpperStar
        )
    }
}

pub type ObjectAction = fn(&Triangular, &Representation) -> Representation;
pub type MorphismAction = fn(&Triangular, &Morphism) -> Morphism;

/// Object and morphism actions of the six functors, indexed by [`Functor`].
#[derive(Clone, Copy)]
pub struct FunctorTable {
    pub objects: [ObjectAction; 6],
    pub morphisms: [MorphismAction; 6],
}

fn right_inverse(m: &Matrix) -> Matrix {
    if m.rows() == 0 {
        return Matrix::zeros(m.field(), m.cols(), 0);
    }
    m.transpose()
        .left_inverse()
        .expect("full row rank")
        .transpose()
}

fn i_upper_star(t: &Triangular, m: &Representation) -> Representation {
    cokernel(&t.to_triple(m).f).0
}

fn i_upper_star_mor(t: &Triangular, g: &Morphism) -> Morphism {
    let (gx, _) = t.split_morphism(g);
    let (cs, ps) = cokernel(&t.to_triple(&g.source).f);
    let (ct, pt) = cokernel(&t.to_triple(&g.target).f);
    let q = gx.then(&pt);
    let mats = q
        .mats
        .iter()
        .zip(&ps.mats)
        .map(|(qv, pv)| qv.mul(&right_inverse(pv)))
        .collect();
    Morphism {
        source: cs,
        target: ct,
        mats,
    }
}

fn i_lower_star(t: &Triangular, x: &Representation) -> Representation {
    let z = Representation::zero(&t.a);
    t.from_triple(x, &z, &Morphism::zero(&z, x))
}

fn i_lower_star_mor(t: &Triangular, g: &Morphism) -> Morphism {
    let z = Representation::zero(&t.a);
    let (s, tg) = (i_lower_star(t, &g.source), i_lower_star(t, &g.target));
    t.join_morphism(&s, &tg, g.mats.clone(), Morphism::identity(&z).mats)
        .expect("i_* of a morphism")
}

fn i_upper_shriek(t: &Triangular, m: &Representation) -> Representation {
    t.to_triple(m).x
}

fn i_upper_shriek_mor(t: &Triangular, g: &Morphism) -> Morphism {
    t.split_morphism(g).0
}

fn j_lower_shriek(t: &Triangular, y: &Representation) -> Representation {
    t.from_triple(y, y, &Morphism::identity(y))
}

fn j_lower_shriek_mor(t: &Triangular, g: &Morphism) -> Morphism {
    let (s, tg) = (j_lower_shriek(t, &g.source), j_lower_shriek(t, &g.target));
    t.join_morphism(&s, &tg, g.mats.clone(), g.mats.clone())
        .expect("j_! of a morphism")
}

fn j_upper_star(t: &Triangular, m: &Representation) -> Representation {
    t.to_triple(m).y
}

fn j_upper_star_mor(t: &Triangular, g: &Morphism) -> Morphism {
    t.split_morphism(g).1
}

fn j_lower_star(t: &Triangular, y: &Representation) -> Representation {
    let z = Representation::zero(&t.a);
    t.from_triple(&z, y, &Morphism::zero(y, &z))
}

fn j_lower_star_mor(t: &Triangular, g: &Morphism) -> Morphism {
    let z = Representation::zero(&t.a);
    let (s, tg) = (j_lower_star(t, &g.source), j_lower_star(t, &g.target));
    t.join_morphism(&s, &tg, Morphism::identity(&z).mats, g.mats.clone())
        .expect("j_* of a morphism")
}

impl Default for FunctorTable {
    fn default() -> Self {
        FunctorTable {
            objects: [
                i_upper_star,
                i_lower_star,
                i_upper_shriek,
                j_lower_shriek,
                j_upper_star,
                j_lower_star,
            ],
            morphisms: [
                i_upper_star_mor,
                i_lower_star_mor,
                i_upper_shriek_mor,
                j_lower_shriek_mor,
                j_upper_star_mor,
                j_lower_star_mor,
            ],
        }
    }
}

/// Which unit or counit of the two adjoint triples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Adjunction {
    /// `M -> i_* i^* M`, unit of `i^* ⊣ i_*`
    Eta,
    /// `i_* i^! M -> M`, counit of `i_* ⊣ i^!`
    Theta,
    /// `j_! j^* M -> M`, counit of `j_! ⊣ j^*`
    Upsilon,
    /// `M -> j_* j^* M`, unit of `j^* ⊣ j_*`
    Vartheta,
}

/// Result of one named check, with a witness description on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn push(&mut self, name: &str, failure: Option<String>) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            passed: failure.is_none(),
            detail: failure.unwrap_or_default(),
        });
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// `mod A`, `mod B` and `mod A` (possibly restricted to subcategories) with
/// the six functors between them.
#[derive(Clone)]
pub struct RecollementContext {
    pub tri: Arc<Triangular>,
    pub a: CategoryContext,
    pub b: CategoryContext,
    pub c: CategoryContext,
    pub functors: FunctorTable,
}

fn same_morphism(x: &Morphism, y: &Morphism) -> bool {
    x.source.dims() == y.source.dims() && x.target.dims() == y.target.dims() && x.mats == y.mats
}

fn compose(first: &Morphism, second: &Morphism) -> Option<Morphism> {
    (first.target.dims() == second.source.dims()).then(|| first.then(second))
}

impl RecollementContext {
    /// Builds `B` from `A`, enumerates both catalogs and labels `B`-modules as triples.
    pub fn triangular(
        a: &Arc<Algebra>,
        cfg: &EnumConfig,
        bounds: &SearchBounds,
    ) -> Result<RecollementContext> {
        let tri = Arc::new(Triangular::new(a)?);
        let cat_a = Arc::new(enumerate_indecomposables(a, cfg)?);
        let mut cat_b = enumerate_indecomposables(tri.b(), cfg)?;
        let labels = cat_b
            .items()
            .iter()
            .map(|m| tri.triple_label(&cat_a, m))
            .collect::<Result<Vec<_>>>()?;
        cat_b.set_labels(labels);
        RecollementContext::from_catalogs(tri, cat_a, Arc::new(cat_b), bounds)
    }

    pub fn from_catalogs(
        tri: Arc<Triangular>,
        cat_a: Arc<IndecCatalog>,
        cat_b: Arc<IndecCatalog>,
        bounds: &SearchBounds,
    ) -> Result<RecollementContext> {
        let a = CategoryContext::full(cat_a, bounds)?;
        let b = CategoryContext::full(cat_b, bounds)?;
        Ok(RecollementContext {
            tri,
            c: a.clone(),
            a,
            b,
            functors: FunctorTable::default(),
        })
    }

    pub fn cat_a(&self) -> &Arc<IndecCatalog> {
        self.a.catalog()
    }

    pub fn cat_b(&self) -> &Arc<IndecCatalog> {
        self.b.catalog()
    }

    pub fn apply(&self, which: Functor, m: &Representation) -> Representation {
        (self.functors.objects[which as usize])(&self.tri, m)
    }

    pub fn apply_morphism(&self, which: Functor, g: &Morphism) -> Morphism {
        (self.functors.morphisms[which as usize])(&self.tri, g)
    }

    /// Catalog indices of the summands of `F(item)`, in the target catalog.
    pub fn image_of_item(&self, which: Functor, i: usize) -> Result<Vec<usize>> {
        if which.from_b() {
            self.cat_a()
                .decompose(&self.apply(which, self.cat_b().item(i)))
        } else {
            self.cat_b()
                .decompose(&self.apply(which, self.cat_a().item(i)))
        }
    }

    /// `F(S)` as a subcategory: the union of the summands of the images.
    pub fn image(&self, which: Functor, s: &Subcategory) -> Result<Subcategory> {
        let mut out = Vec::new();
        for &i in s.members() {
            out.extend(self.image_of_item(which, i)?);
        }
        Ok(Subcategory::new(out))
    }

    /// The unit or counit at a `B`-module, built from its defining formula;
    /// `None` if the functor table does not produce matching objects.
    pub fn unit_counit(&self, which: Adjunction, m: &Representation) -> Option<Morphism> {
        use Functor::*;
        let t = self.tri.to_triple(m);
        let f = m.field();
        let zeros = |rows: &[usize], cols: &[usize]| -> Vec<Matrix> {
            rows.iter()
                .zip(cols)
                .map(|(&r, &c)| Matrix::zeros(f, r, c))
                .collect()
        };
        match which {
            Adjunction::Eta => {
                let target = self.apply(ILowerStar, &self.apply(IUpperStar, m));
                let (c, proj) = cokernel(&t.f);
                let tt = self.tri.to_triple(&target);
                if tt.x.dims() != c.dims() {
                    return None;
                }
                let ys = zeros(tt.y.dims(), t.y.dims());
                self.tri.join_morphism(m, &target, proj.mats, ys)
            }
            Adjunction::Theta => {
                let source = self.apply(ILowerStar, &self.apply(IUpperShriek, m));
                let st = self.tri.to_triple(&source);
                if st.x.dims() != t.x.dims() {
                    return None;
                }
                let xs = Morphism::identity(&t.x).mats;
                let ys = zeros(t.y.dims(), st.y.dims());
                self.tri.join_morphism(&source, m, xs, ys)
            }
            Adjunction::Upsilon => {
                let source = self.apply(JLowerShriek, &self.apply(JUpperStar, m));
                let st = self.tri.to_triple(&source);
                if st.x.dims() != t.y.dims() || st.y.dims() != t.y.dims() {
                    return None;
                }
                self.tri
                    .join_morphism(&source, m, t.f.mats.clone(), Morphism::identity(&t.y).mats)
            }
            Adjunction::Vartheta => {
                let target = self.apply(JLowerStar, &self.apply(JUpperStar, m));
                let tt = self.tri.to_triple(&target);
                if tt.y.dims() != t.y.dims() {
                    return None;
                }
                let xs = zeros(tt.x.dims(), t.x.dims());
                self.tri
                    .join_morphism(m, &target, xs, Morphism::identity(&t.y).mats)
            }
        }
    }

    /// Checks (R1)-(R5), the vanishing and isomorphism identities for the
    /// composites of the functors, additivity, and the Ext-dimension
    /// identities for `i_* ⊣ i^!` and `j_! ⊣ j^*`, over the three universes.
    pub fn verify(&self) -> Result<Report> {
        use Functor::*;
        let mut rep = Report::default();
        let ca = self.cat_a().clone();
        let cb = self.cat_b().clone();
        let seed = cb.seed();
        let a_items: Vec<usize> = self.a.universe().members().to_vec();
        let b_items: Vec<usize> = self.b.universe().members().to_vec();
        let c_items: Vec<usize> = self.c.universe().members().to_vec();
        let a = |i: usize| ca.item(i);
        let b = |i: usize| cb.item(i);
        let la = |i: usize| ca.label(i).to_string();
        let lb = |i: usize| cb.label(i).to_string();

        // functors restrict to the universes
        let mut fail = None;
        'restrict: for (which, src, dst) in [
            (IUpperStar, &b_items, &self.a),
            (IUpperShriek, &b_items, &self.a),
            (JUpperStar, &b_items, &self.c),
            (ILowerStar, &a_items, &self.b),
            (JLowerShriek, &c_items, &self.b),
            (JLowerStar, &c_items, &self.b),
        ] {
            for &i in src.iter() {
                let img = self.image_of_item(which, i);
                let ok = img.as_ref().is_ok_and(|v| {
                    dst.check_members(&Subcategory::new(v.iter().copied()))
                        .is_ok()
                });
                if !ok {
                    fail = Some(format!(
                        "{} does not map item {i} into its target universe",
                        which.name()
                    ));
                    break 'restrict;
                }
            }
        }
        rep.push("functors restrict to the universes", fail);

        // (R1) adjunctions: Hom dimensions
        let mut fail = None;
        'r1: for &i in &b_items {
            for &k in &a_items {
                if hom_dim(&self.apply(IUpperStar, b(i)), a(k))
                    != hom_dim(b(i), &self.apply(ILowerStar, a(k)))
                {
                    fail = Some(format!("i^* ⊣ i_* at ({}, {})", lb(i), la(k)));
                    break 'r1;
                }
                if hom_dim(&self.apply(ILowerStar, a(k)), b(i))
                    != hom_dim(a(k), &self.apply(IUpperShriek, b(i)))
                {
                    fail = Some(format!("i_* ⊣ i^! at ({}, {})", la(k), lb(i)));
                    break 'r1;
                }
            }
            for &k in &c_items {
                if hom_dim(&self.apply(JLowerShriek, a(k)), b(i))
                    != hom_dim(a(k), &self.apply(JUpperStar, b(i)))
                {
                    fail = Some(format!("j_! ⊣ j^* at ({}, {})", la(k), lb(i)));
                    break 'r1;
                }
                if hom_dim(&self.apply(JUpperStar, b(i)), a(k))
                    != hom_dim(b(i), &self.apply(JLowerStar, a(k)))
                {
                    fail = Some(format!("j^* ⊣ j_* at ({}, {})", lb(i), la(k)));
                    break 'r1;
                }
            }
        }
        rep.push("R1 adjunction Hom dimensions", fail);

        // (R1) naturality of units and counits on a Hom basis, and triangle identities
        let mut fail = None;
        'nat: for &i in &b_items {
            for &j in &b_items {
                for g in hom_basis(b(i), b(j)) {
                    for (adj, f2) in [
                        (Adjunction::Eta, [IUpperStar, ILowerStar]),
                        (Adjunction::Theta, [IUpperShriek, ILowerStar]),
                        (Adjunction::Upsilon, [JUpperStar, JLowerShriek]),
                        (Adjunction::Vartheta, [JUpperStar, JLowerStar]),
                    ] {
                        let fg = self.apply_morphism(f2[1], &self.apply_morphism(f2[0], &g));
                        let (ui, uj) = (self.unit_counit(adj, b(i)), self.unit_counit(adj, b(j)));
                        let ok = match (ui, uj) {
                            (Some(ui), Some(uj)) => {
                                let (lhs, rhs) = match adj {
                                    // M -> FM: u_j ∘ g = F(g) ∘ u_i
                                    Adjunction::Eta | Adjunction::Vartheta => {
                                        (compose(&g, &uj), compose(&ui, &fg))
                                    }
                                    // FM -> M: g ∘ u_i = u_j ∘ F(g)
                                    _ => (compose(&ui, &g), compose(&fg, &uj)),
                                };
                                matches!((lhs, rhs), (Some(l), Some(r)) if same_morphism(&l, &r))
                            }
                            _ => false,
                        };
                        if !ok {
                            fail = Some(format!(
                                "{adj:?} not natural on a map {} -> {}",
                                lb(i),
                                lb(j)
                            ));
                            break 'nat;
                        }
                    }
                }
            }
        }
        rep.push("R1 naturality of units and counits", fail);

        let mut fail = None;
        for &i in &b_items {
            let m = b(i);
            let checks = [
                (Adjunction::Eta, IUpperStar),
                (Adjunction::Theta, IUpperShriek),
                (Adjunction::Upsilon, JUpperStar),
                (Adjunction::Vartheta, JUpperStar),
            ];
            for (adj, f) in checks {
                let ok = self
                    .unit_counit(adj, m)
                    .map(|u| {
                        let fu = self.apply_morphism(f, &u);
                        fu.source.dims() == fu.target.dims()
                            && fu.mats.iter().all(|x| x.is_identity())
                    })
                    .unwrap_or(false);
                if !ok && fail.is_none() {
                    fail = Some(format!("triangle identity for {adj:?} fails at {}", lb(i)));
                }
            }
        }
        for &k in a_items.iter().chain(&c_items) {
            let x = a(k);
            for (adj, obj) in [
                (Adjunction::Eta, self.apply(ILowerStar, x)),
                (Adjunction::Theta, self.apply(ILowerStar, x)),
                (Adjunction::Upsilon, self.apply(JLowerShriek, x)),
                (Adjunction::Vartheta, self.apply(JLowerStar, x)),
            ] {
                let ok = self.unit_counit(adj, &obj).is_some_and(|u| u.is_iso());
                if !ok && fail.is_none() {
                    fail = Some(format!(
                        "{adj:?} is not invertible on the image of {}",
                        la(k)
                    ));
                }
            }
        }
        rep.push("R1 triangle identities", fail);

        // (R2) Im i_* = Ker j^*
        let mut fail = None;
        for &k in &a_items {
            if !self
                .apply(JUpperStar, &self.apply(ILowerStar, a(k)))
                .is_zero()
            {
                fail = Some(format!("j^* i_* {} is nonzero", la(k)));
                break;
            }
        }
        if fail.is_none() {
            for &i in &b_items {
                if self.apply(JUpperStar, b(i)).is_zero() {
                    let back = self.apply(ILowerStar, &self.apply(IUpperShriek, b(i)));
                    if !are_isomorphic(&back, b(i), seed)? {
                        fail = Some(format!(
                            "{} is killed by j^* but is not in the image of i_*",
                            lb(i)
                        ));
                        break;
                    }
                }
            }
        }
        rep.push("R2 Im i_* = Ker j^*", fail);

        // (R3) full faithfulness
        let mut fail = None;
        'r3: for (which, items) in [
            (ILowerStar, &a_items),
            (JLowerShriek, &c_items),
            (JLowerStar, &c_items),
        ] {
            for &k in items.iter() {
                for &l in items.iter() {
                    if hom_dim(a(k), a(l))
                        != hom_dim(&self.apply(which, a(k)), &self.apply(which, a(l)))
                    {
                        fail = Some(format!(
                            "{} not fully faithful on ({}, {})",
                            which.name(),
                            la(k),
                            la(l)
                        ));
                        break 'r3;
                    }
                }
            }
        }
        rep.push("R3 i_*, j_!, j_* fully faithful", fail);

        // (R4) 0 -> i_* i^! M -> M -> j_* j^* M -> i_* A' -> 0 and
        // (R5) 0 -> i_* A'' -> j_! j^* M -> M -> i_* i^* M -> 0
        let mut fail4 = None;
        let mut fail5 = None;
        for &i in &b_items {
            let m = b(i);
            let (th, vt) = (
                self.unit_counit(Adjunction::Theta, m),
                self.unit_counit(Adjunction::Vartheta, m),
            );
            let ok4 = match (th, vt) {
                (Some(th), Some(vt)) => {
                    let (c, _) = cokernel(&vt);
                    th.is_mono()
                        && th.then(&vt).is_zero()
                        && th
                            .ranks()
                            .iter()
                            .zip(vt.ranks())
                            .zip(m.dims())
                            .all(|((r1, r2), d)| r1 + r2 == *d)
                        && self.apply(JUpperStar, &c).is_zero()
                }
                _ => false,
            };
            if !ok4 && fail4.is_none() {
                fail4 = Some(format!("sequence fails at {}", lb(i)));
            }
            let (up, eta) = (
                self.unit_counit(Adjunction::Upsilon, m),
                self.unit_counit(Adjunction::Eta, m),
            );
            let ok5 = match (up, eta) {
                (Some(up), Some(eta)) => {
                    let (k, _) = crate::rep::kernel(&up);
                    eta.is_epi()
                        && up.then(&eta).is_zero()
                        && up
                            .ranks()
                            .iter()
                            .zip(eta.ranks())
                            .zip(m.dims())
                            .all(|((r1, r2), d)| r1 + r2 == *d)
                        && self.apply(JUpperStar, &k).is_zero()
                }
                _ => false,
            };
            if !ok5 && fail5.is_none() {
                fail5 = Some(format!("sequence fails at {}", lb(i)));
            }
        }
        rep.push("R4 left exact sequence", fail4);
        rep.push("R5 right exact sequence", fail5);

        // vanishing composites and the four isomorphisms
        let mut fail = None;
        for &k in &c_items {
            if !self
                .apply(IUpperStar, &self.apply(JLowerShriek, a(k)))
                .is_zero()
            {
                fail = Some(format!("i^* j_! {} is nonzero", la(k)));
            }
            if !self
                .apply(IUpperShriek, &self.apply(JLowerStar, a(k)))
                .is_zero()
            {
                fail = Some(format!("i^! j_* {} is nonzero", la(k)));
            }
        }
        rep.push("i^* j_! = 0 and i^! j_* = 0", fail);

        let mut fail = None;
        for (outer, inner, items) in [
            (IUpperStar, ILowerStar, &a_items),
            (IUpperShriek, ILowerStar, &a_items),
            (JUpperStar, JLowerShriek, &c_items),
            (JUpperStar, JLowerStar, &c_items),
        ] {
            for &k in items.iter() {
                let back = self.apply(outer, &self.apply(inner, a(k)));
                if back.dims() != a(k).dims() || !are_isomorphic(&back, a(k), seed)? {
                    fail = Some(format!(
                        "{}{} {} is not isomorphic to {}",
                        outer.name(),
                        inner.name(),
                        la(k),
                        la(k)
                    ));
                }
            }
        }
        rep.push("composites with the embeddings are the identity", fail);

        // additivity on pairs of items
        let mut fail = None;
        'add: for which in Functor::ALL {
            let (cat, items): (&IndecCatalog, &Vec<usize>) = if which.from_b() {
                (&cb, &b_items)
            } else {
                (&ca, &a_items)
            };
            for &i in items.iter() {
                for &j in items.iter().filter(|&&j| j >= i) {
                    let lhs = self.apply(which, &cat.item(i).direct_sum(cat.item(j)));
                    let rhs = self
                        .apply(which, cat.item(i))
                        .direct_sum(&self.apply(which, cat.item(j)));
                    if lhs.dims() != rhs.dims() || !are_isomorphic(&lhs, &rhs, seed)? {
                        fail = Some(format!(
                            "{} does not commute with sums on ({}, {})",
                            which.name(),
                            cat.label(i),
                            cat.label(j)
                        ));
                        break 'add;
                    }
                }
            }
        }
        rep.push("functors are additive", fail);

        // Ext-dimension identities for i_* ⊣ i^! and j_! ⊣ j^*
        let top = global_dimension(self.tri.b()).max(1);
        let mut fail = None;
        'ext: for k in 1..=top {
            for &i in &b_items {
                for &x in &a_items {
                    if ext_dim(k, &self.apply(ILowerStar, a(x)), b(i))
                        != ext_dim(k, a(x), &self.apply(IUpperShriek, b(i)))
                    {
                        fail = Some(format!("Ext^{k}(i_* {}, {}) differs", la(x), lb(i)));
                        break 'ext;
                    }
                }
                for &x in &c_items {
                    if ext_dim(k, &self.apply(JLowerShriek, a(x)), b(i))
                        != ext_dim(k, a(x), &self.apply(JUpperStar, b(i)))
                    {
                        fail = Some(format!("Ext^{k}(j_! {}, {}) differs", la(x), lb(i)));
                        break 'ext;
                    }
                }
            }
        }
        rep.push("Ext dimensions across the adjunctions", fail);
        Ok(rep)
    }

    /// Vertexwise dimension vector of `F(item)`.
    fn image_dims(&self, which: Functor, i: usize) -> Vec<usize> {
        let cat = if which.from_b() {
            self.cat_b()
        } else {
            self.cat_a()
        };
        self.apply(which, cat.item(i)).dims().to_vec()
    }

    /// Tests exactness of a functor on every bounded conflation of its source
    /// category. The functors here are all left or right exact, so exactness
    /// on `A -> B -> C` is equivalent to `dim F(B) = dim F(A) + dim F(C)`.
    pub fn exact_at_bounds(&self, which: Functor) -> (bool, Option<Fact>) {
        let (src, n) = if which.from_b() {
            (&self.b, self.tri.a().num_vertices())
        } else if which == Functor::ILowerStar {
            (&self.a, self.tri.b().num_vertices())
        } else {
            (&self.c, self.tri.b().num_vertices())
        };
        let dims: Vec<Vec<usize>> = (0..src.catalog().len())
            .map(|i| self.image_dims(which, i))
            .collect();
        let total = |ms: &[usize]| -> Vec<usize> {
            let mut d = vec![0; n];
            for &i in ms {
                for (x, y) in d.iter_mut().zip(&dims[i]) {
                    *x += y;
                }
            }
            d
        };
        for f in src.conflations() {
            let (l, m, r) = f.conflation();
            let (dl, dm, dr) = (total(l), total(m), total(r));
            if (0..n).any(|v| dm[v] != dl[v] + dr[v]) {
                return (false, Some(f.clone()));
            }
        }
        (true, None)
    }

    /// The recollement `(mod A, V, j^* V)` induced by a thick `V ⊇ i_* mod A`.
    pub fn restricted(&self, v: &Subcategory) -> Result<RecollementContext> {
        if !self.b.is_thick(v).holds() {
            return Err(Error::Precondition(
                "V is not thick at the search bounds".into(),
            ));
        }
        let ia = self.image(Functor::ILowerStar, &self.a.universe())?;
        if !ia.is_subset(v) {
            return Err(Error::Precondition(
                "V does not contain i_* of the A-universe".into(),
            ));
        }
        let w = self.image(Functor::JUpperStar, v)?;
        Ok(RecollementContext {
            tri: self.tri.clone(),
            a: self.a.clone(),
            b: self.b.restrict(v)?,
            c: self.c.restrict(&w)?,
            functors: self.functors,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::tests::a2;
    use crate::quiver::{parse_algebra, projective_at, simple_at};

    fn ctx() -> RecollementContext {
        RecollementContext::triangular(&a2(), &EnumConfig::default(), &SearchBounds::default())
            .unwrap()
    }

    #[test]
    fn square_from_a2() {
        let t = Triangular::new(&a2()).unwrap();
        assert_eq!(t.b().dim(), 9);
        assert_eq!(t.b().num_vertices(), 4);
        assert_eq!(t.b().relations().len(), 1);
        let a = a2();
        let s2 = simple_at(&a, 1);
        let m = i_lower_star(&t, &s2);
        let tr = t.to_triple(&m);
        assert!(tr.y.is_zero() && tr.x.dims() == s2.dims());
        let p1 = projective_at(&a, 0);
        let m = j_lower_shriek(&t, &p1);
        assert!(t.to_triple(&m).f.is_iso());
    }

    #[test]
    fn catalog_labels() {
        let c = ctx();
        let mut labels: Vec<&str> = c.cat_b().labels().iter().map(|s| s.as_str()).collect();
        labels.sort();
        let mut expect = vec![
            "(S2,0)",
            "(P1,0)",
            "(S1,0)",
            "(0,S2)",
            "(0,P1)",
            "(0,S1)",
            "(S2,S2)_1",
            "(P1,P1)_1",
            "(S1,S1)_1",
            "(P1,S2)_f",
            "(S1,P1)_f",
        ];
        expect.sort();
        assert_eq!(labels, expect);
    }

    #[test]
    fn functor_examples() {
        let c = ctx();
        let cb = c.cat_b();
        let ix = |l: &str| cb.index_of_label(l).unwrap();
        assert!(c
            .apply(Functor::IUpperStar, cb.item(ix("(P1,P1)_1")))
            .is_zero());
        let y = c.apply(Functor::JUpperStar, cb.item(ix("(P1,S2)_f")));
        assert_eq!(c.cat_a().label(c.cat_a().identify(&y).unwrap()), "S2");
        let x = c.apply(Functor::IUpperShriek, cb.item(ix("(S1,P1)_f")));
        assert_eq!(c.cat_a().label(c.cat_a().identify(&x).unwrap()), "S1");
        let counit = c
            .unit_counit(Adjunction::Upsilon, cb.item(ix("(P1,S2)_f")))
            .unwrap();
        let t = c.tri.to_triple(cb.item(ix("(P1,S2)_f")));
        assert_eq!(counit.mats[..2], t.f.mats[..]);
    }

    #[test]
    fn verify_passes() {
        let c = ctx();
        let r = c.verify().unwrap();
        assert!(r.passed(), "{r:?}");
        for f in [
            Functor::IUpperShriek,
            Functor::JLowerShriek,
            Functor::JUpperStar,
            Functor::ILowerStar,
        ] {
            assert!(c.exact_at_bounds(f).0, "{f:?}");
        }
        assert!(!c.exact_at_bounds(Functor::IUpperStar).0);
    }

    #[test]
    fn corrupted_i_lower_star_fails_r2() {
        let mut c = ctx();
        c.functors.objects[Functor::ILowerStar as usize] = |t, x| j_lower_star(t, x);
        let r = c.verify().unwrap();
        assert!(!r.get("R2 Im i_* = Ker j^*").unwrap().passed);
    }

    #[test]
    fn point_algebra_recollement() {
        let pt = parse_algebra(r#"{"vertices":["1"],"arrows":[]}"#).unwrap();
        let c =
            RecollementContext::triangular(&pt, &EnumConfig::default(), &SearchBounds::default())
                .unwrap();
        assert_eq!(c.cat_b().len(), 3);
        assert!(c.verify().unwrap().passed());
    }
}
