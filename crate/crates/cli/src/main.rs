//! `qrep`: indecomposables, thick subcategories, recollement checks and
//! silting gluing for bound quiver algebras given as JSON.

mod cache;
mod report;
mod select;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use qrep::recollement::{Functor, RecollementContext, Report, Triangular};
use qrep::rep::{enumerate_indecomposables, EnumConfig};
use qrep::silting::{
    at_bijection_check, glue_silting, is_silting, restrict_silting, SiltingReport,
};
use qrep::subcat::{CategoryContext, SearchBounds, Subcategory};
use qrep::thickmaps::{phi, verify_bijection};
use qrep::{parse_algebra, Algebra, IndecCatalog};
use serde_json::{json, Value};

use crate::cache::{Cache, Lookup};
use crate::report::{emit, object, Output};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] qrep::Error),
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error("cache: {0}")]
    Cache(String),
    #[error("selector: {0}")]
    Selector(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use qrep::Error::*;
        match self {
            CliError::Core(Bounds(_) | Ambiguous(_) | NotInCatalog(_)) => 2,
            CliError::Core(Internal(_)) => 1,
            _ => 3,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "qrep",
    version,
    about = "Modules over bound quiver algebras and the triangular recollement"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Global {
    /// Override the prime of the algebra file.
    #[arg(long, global = true)]
    field_prime: Option<u64>,
    /// Largest dimension at any vertex in enumeration.
    #[arg(long, global = true, default_value_t = 4)]
    dim_bound: usize,
    /// Largest number of indecomposable summands in a composite object.
    #[arg(long, global = true, default_value_t = 2)]
    mult_bound: usize,
    #[arg(long, global = true, default_value_t = 100_000)]
    hom_cap: u64,
    #[arg(long, global = true, default_value_t = 10_000)]
    ext_cap: u64,
    #[arg(long, global = true, default_value_t = 8)]
    tower_depth: usize,
    /// Candidate budget for the enumeration of indecomposables.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    enum_budget: u64,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Indecomposable modules.
    #[command(subcommand)]
    Indec(IndecCmd),
    /// Thick subcategories.
    #[command(subcommand)]
    Thick(ThickCmd),
    /// The recollement of the triangular matrix algebra.
    #[command(subcommand)]
    Recollement(RecollementCmd),
    /// Thick subcategories of the middle category against those of the right one.
    #[command(subcommand)]
    Bijection(BijectionCmd),
    /// Silting subcategories.
    #[command(subcommand)]
    Silting(SiltingCmd),
}

#[derive(Subcommand)]
enum IndecCmd {
    Enumerate {
        spec: PathBuf,
        /// Enumerate over the triangular matrix algebra of SPEC, with triple labels.
        #[arg(long)]
        triangular: bool,
    },
}

#[derive(Subcommand)]
enum ThickCmd {
    Enumerate {
        spec: PathBuf,
        #[arg(long)]
        triangular: bool,
        /// Only subcategories containing these items.
        #[arg(long, num_args = 1..)]
        contains: Vec<String>,
    },
    Closure {
        spec: PathBuf,
        #[arg(long)]
        triangular: bool,
        #[arg(long, num_args = 1.., required = true)]
        gens: Vec<String>,
    },
}

#[derive(Subcommand)]
enum RecollementCmd {
    Verify {
        spec: PathBuf,
        /// Verify the recollement restricted to this thick subcategory of the middle category.
        #[arg(long, num_args = 1..)]
        restrict: Vec<String>,
    },
}

#[derive(Subcommand)]
enum BijectionCmd {
    Verify { spec: PathBuf },
}

#[derive(Subcommand)]
enum SiltingCmd {
    Check {
        spec: PathBuf,
        #[arg(long)]
        triangular: bool,
        #[arg(long, num_args = 1.., required = true)]
        gens: Vec<String>,
    },
    Glue {
        spec: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        ma: Vec<String>,
        #[arg(long, num_args = 1.., required = true)]
        mc: Vec<String>,
    },
    Restrict {
        spec: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        m: Vec<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Unverified,
}

impl Status {
    fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Unverified => "unverified",
        }
    }

    fn code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Unverified => 2,
        }
    }

    fn of(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

struct Session {
    g: Global,
    cache: Option<Cache>,
}

impl Session {
    fn bounds(&self) -> SearchBounds {
        SearchBounds {
            sum_mult: self.g.mult_bound,
            hom_cap: self.g.hom_cap,
            ext_cap: self.g.ext_cap,
            tower_depth: self.g.tower_depth,
        }
    }

    fn enum_config(&self) -> EnumConfig {
        EnumConfig {
            dim_bound: self.g.dim_bound,
            budget: self.g.enum_budget,
            seed: self.g.seed,
        }
    }

    fn algebra(&self, path: &Path) -> Result<Arc<Algebra>, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(path.display().to_string(), e))?;
        let alg = parse_algebra(&text)?;
        Ok(match self.g.field_prime {
            Some(p) => Arc::new(alg.with_prime(p)?),
            None => alg,
        })
    }

    /// Enumerates (or loads) a catalog; `relabel` runs only on fresh enumerations.
    fn catalog(
        &self,
        alg: &Arc<Algebra>,
        flavor: &str,
        relabel: impl FnOnce(&mut IndecCatalog) -> Result<(), CliError>,
    ) -> Result<Arc<IndecCatalog>, CliError> {
        let key = cache::key(alg, self.g.dim_bound, self.g.seed, flavor);
        if let Some(c) = &self.cache {
            if let Lookup::Hit(cat) = c.read(alg, &key)? {
                return Ok(Arc::new(cat));
            }
        }
        let mut cat = enumerate_indecomposables(alg, &self.enum_config())?;
        relabel(&mut cat)?;
        if let Some(c) = &self.cache {
            c.write(&key, &cat)?;
        }
        Ok(Arc::new(cat))
    }

    fn plain_catalog(&self, alg: &Arc<Algebra>) -> Result<Arc<IndecCatalog>, CliError> {
        self.catalog(alg, "plain", |_| Ok(()))
    }

    fn triangular(
        &self,
        a: &Arc<Algebra>,
    ) -> Result<(Arc<Triangular>, Arc<IndecCatalog>, Arc<IndecCatalog>), CliError> {
        let tri = Arc::new(Triangular::new(a)?);
        let cat_a = self.plain_catalog(a)?;
        let cat_b = self.catalog(tri.b(), "triple", |cat| {
            let labels = cat
                .items()
                .iter()
                .map(|m| tri.triple_label(&cat_a, m))
                .collect::<qrep::Result<Vec<_>>>()?;
            cat.set_labels(labels);
            Ok(())
        })?;
        Ok((tri, cat_a, cat_b))
    }

    fn recollement(&self, a: &Arc<Algebra>) -> Result<RecollementContext, CliError> {
        let (tri, cat_a, cat_b) = self.triangular(a)?;
        Ok(RecollementContext::from_catalogs(
            tri,
            cat_a,
            cat_b,
            &self.bounds(),
        )?)
    }

    /// The module category of SPEC, or of its triangular matrix algebra.
    fn context(
        &self,
        spec: &Path,
        triangular: bool,
    ) -> Result<(Arc<Algebra>, CategoryContext), CliError> {
        let a = self.algebra(spec)?;
        let cat = if triangular {
            self.triangular(&a)?.2
        } else {
            self.plain_catalog(&a)?
        };
        Ok((a, CategoryContext::full(cat, &self.bounds())?))
    }

    fn header(
        &self,
        command: &str,
        alg: &Algebra,
        status: Status,
        body: Vec<(&str, Value)>,
    ) -> Value {
        let b = self.bounds();
        let mut pairs = vec![
            ("command", json!(command)),
            (
                "algebra_hash",
                json!(cache::sha256_hex(&alg.canonical_json())),
            ),
            ("prime", json!(alg.field().p())),
            ("seed", json!(self.g.seed)),
            (
                "bounds",
                json!({
                    "dim_bound": self.g.dim_bound,
                    "sum_mult": b.sum_mult,
                    "hom_cap": b.hom_cap,
                    "ext_cap": b.ext_cap,
                    "tower_depth": b.tower_depth,
                }),
            ),
            ("status", json!(status.name())),
        ];
        pairs.extend(body);
        object(pairs)
    }
}

fn labels(ctx: &CategoryContext, s: &Subcategory) -> Value {
    json!(ctx.labels(s))
}

fn checks_json(r: &Report) -> Value {
    Value::Array(
        r.checks
            .iter()
            .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
            .collect(),
    )
}

fn silting_json(ctx: &CategoryContext, r: &SiltingReport) -> Value {
    let cat = ctx.catalog();
    json!({
        "silting": r.holds(),
        "presilting": r.presilting.holds(),
        "ext_witness": r.presilting.witness.map(|(k, x, y)| json!({"k": k, "x": cat.label(x), "y": cat.label(y)})),
        "closure": labels(ctx, &r.closure),
        "closure_saturates": r.saturated,
    })
}

fn run(cli: Cli) -> Result<(Value, Status), CliError> {
    let s = Session {
        cache: cli.global.cache_dir.as_deref().map(Cache::new),
        g: cli.global.clone(),
    };
    match cli.cmd {
        Cmd::Indec(IndecCmd::Enumerate { spec, triangular }) => {
            let a = s.algebra(&spec)?;
            let cat = if triangular {
                s.triangular(&a)?.2
            } else {
                s.plain_catalog(&a)?
            };
            let items: Vec<Value> = (0..cat.len())
                .map(|i| json!({"index": i, "label": cat.label(i), "dims": cat.item(i).dims(), "dim": cat.item(i).total_dim()}))
                .collect();
            let body = vec![
                (
                    "enumerated_algebra_hash",
                    json!(cache::sha256_hex(&cat.algebra().canonical_json())),
                ),
                ("count", json!(cat.len())),
                ("items", Value::Array(items)),
            ];
            Ok((
                s.header("indec enumerate", &a, Status::Pass, body),
                Status::Pass,
            ))
        }
        Cmd::Thick(ThickCmd::Enumerate {
            spec,
            triangular,
            contains,
        }) => {
            let (a, ctx) = s.context(&spec, triangular)?;
            let req = select::resolve(ctx.catalog(), &contains)?;
            let all = ctx.enumerate_thick(if contains.is_empty() {
                None
            } else {
                Some(&req)
            })?;
            let st = Status::of(all.iter().all(|t| ctx.is_thick(t).holds()));
            let body = vec![
                ("count", json!(all.len())),
                (
                    "subcategories",
                    Value::Array(
                        all.iter()
                            .map(|t| json!({"members": ctx.labels(t)}))
                            .collect(),
                    ),
                ),
                ("skipped_enumerations", json!(ctx.table().skipped())),
            ];
            Ok((s.header("thick enumerate", &a, st, body), st))
        }
        Cmd::Thick(ThickCmd::Closure {
            spec,
            triangular,
            gens,
        }) => {
            let (a, ctx) = s.context(&spec, triangular)?;
            let g = select::resolve(ctx.catalog(), &gens)?;
            let c = ctx.thick_closure(&g)?;
            let st = Status::of(ctx.is_thick(&c).holds());
            let body = vec![
                ("generators", labels(&ctx, &g)),
                ("closure", labels(&ctx, &c)),
                ("saturates", json!(c == ctx.universe())),
                ("skipped_enumerations", json!(ctx.table().skipped())),
            ];
            Ok((s.header("thick closure", &a, st, body), st))
        }
        Cmd::Recollement(RecollementCmd::Verify { spec, restrict }) => {
            let a = s.algebra(&spec)?;
            let full = s.recollement(&a)?;
            let (ctx, v) = if restrict.is_empty() {
                (full, None)
            } else {
                let v = select::resolve(full.cat_b(), &restrict)?;
                (full.restricted(&v)?, Some(v))
            };
            let r = ctx.verify()?;
            let exact: serde_json::Map<String, Value> = Functor::ALL
                .iter()
                .map(|&f| (f.name().to_string(), json!(ctx.exact_at_bounds(f).0)))
                .collect();
            let st = Status::of(r.passed());
            let mut body = vec![
                ("checks", checks_json(&r)),
                ("exact_at_bounds", Value::Object(exact)),
                ("a_items", json!(ctx.a.labels(&ctx.a.universe()))),
                ("b_items", json!(ctx.b.labels(&ctx.b.universe()))),
                ("c_items", json!(ctx.c.labels(&ctx.c.universe()))),
            ];
            if let Some(v) = v {
                body.push(("V", labels(&ctx.b, &v)));
                body.push(("phiV", labels(&ctx.c, &phi(&ctx, &v)?)));
            }
            Ok((s.header("recollement verify", &a, st, body), st))
        }
        Cmd::Bijection(BijectionCmd::Verify { spec }) => {
            let a = s.algebra(&spec)?;
            let ctx = s.recollement(&a)?;
            let r = verify_bijection(&ctx)?;
            let st = Status::of(r.checks.passed());
            let body = vec![
                ("pairs", Value::Array(r.rows.iter().map(|row| json!({"V": ctx.b.labels(&row.v), "phiV": ctx.c.labels(&row.phi_v)})).collect())),
                ("thick_c", Value::Array(r.thick_c.iter().map(|w| labels(&ctx.c, w)).collect())),
                ("thick_b_count", json!(r.thick_b.len())),
                ("thick_c_count", json!(r.thick_c.len())),
                ("checks", checks_json(&r.checks)),
            ];
            Ok((s.header("bijection verify", &a, st, body), st))
        }
        Cmd::Silting(SiltingCmd::Check {
            spec,
            triangular,
            gens,
        }) => {
            let (a, ctx) = s.context(&spec, triangular)?;
            let m = select::resolve(ctx.catalog(), &gens)?;
            let sr = is_silting(&ctx, &m)?;
            let mut body = vec![
                ("M", labels(&ctx, &m)),
                ("silting", silting_json(&ctx, &sr)),
            ];
            let st = if sr.holds() {
                let at = at_bijection_check(&ctx, &m)?;
                body.push((
                    "at_pair",
                    json!({
                        "T": labels(&ctx, &at.pair.t),
                        "F": labels(&ctx, &at.pair.f),
                        "cotorsion": at.cotorsion.holds(),
                        "hereditary": at.hereditary.is_none(),
                        "bounded": at.bounded,
                        "intersection": labels(&ctx, &at.intersection),
                        "round_trip": at.intersection == m,
                    }),
                ));
                Status::of(at.holds(&m))
            } else {
                Status::Fail
            };
            Ok((s.header("silting check", &a, st, body), st))
        }
        Cmd::Silting(SiltingCmd::Glue { spec, ma, mc }) => {
            let a = s.algebra(&spec)?;
            let ctx = s.recollement(&a)?;
            let ma = select::resolve(ctx.cat_a(), &ma)?;
            let mc = select::resolve(ctx.cat_a(), &mc)?;
            let r = glue_silting(&ctx, &ma, &mc)?;
            let st = if !(r.m_b_silting.holds() && r.agrees()) {
                Status::Fail
            } else if !r.hypotheses.all() {
                Status::Unverified
            } else {
                Status::Pass
            };
            let h = r.hypotheses;
            let body = vec![
                ("M_A", labels(&ctx.a, &ma)),
                ("M_C", labels(&ctx.c, &mc)),
                ("M_B", labels(&ctx.b, &r.m_b)),
                ("M_B_silting", silting_json(&ctx.b, &r.m_b_silting)),
                ("formula", labels(&ctx.b, &r.formula)),
                ("formula_silting", silting_json(&ctx.b, &r.formula_silting)),
                ("agrees_with_formula", json!(r.agrees())),
                ("glued_T", labels(&ctx.b, &r.glued.t)),
                ("glued_F", labels(&ctx.b, &r.glued.f)),
                (
                    "hypotheses",
                    json!({
                        "i_upper_shriek_exact": h.i_upper_shriek_exact,
                        "j_lower_shriek_exact": h.j_lower_shriek_exact,
                        "i_upper_star_exact": h.i_upper_star_exact,
                    }),
                ),
            ];
            Ok((s.header("silting glue", &a, st, body), st))
        }
        Cmd::Silting(SiltingCmd::Restrict { spec, m }) => {
            let a = s.algebra(&spec)?;
            let ctx = s.recollement(&a)?;
            let m = select::resolve(ctx.cat_b(), &m)?;
            let r = restrict_silting(&ctx, &m)?;
            let st = Status::of(r.verified());
            let body = vec![
                ("M", labels(&ctx.b, &m)),
                ("branch_a_hypotheses", json!(r.branch_a)),
                ("branch_c_hypotheses", json!(r.branch_c)),
                ("candidate_A", labels(&ctx.a, &r.candidate_a)),
                ("candidate_C", labels(&ctx.c, &r.candidate_c)),
                ("candidate_A_silting", silting_json(&ctx.a, &r.silting_a)),
                ("candidate_C_silting", silting_json(&ctx.c, &r.silting_c)),
                ("generated_by_i_upper_star_M", json!(r.generated_a)),
                ("generated_by_j_upper_star_M", json!(r.generated_c)),
            ];
            Ok((s.header("silting restrict", &a, st, body), st))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mode = cli.global.output;
    match run(cli) {
        Ok((report, status)) => {
            print!("{}", emit(&report, mode));
            ExitCode::from(status.code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
