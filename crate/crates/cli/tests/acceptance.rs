//! Acceptance suite. Runs without the libtest harness so that every criterion
//! prints exactly one PASS/FAIL line; the process exits non-zero if any fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use qrep::homology::{global_dimension, les_alternating_sum, Ext1Space};
use qrep::quiver::projective_at;
use qrep::recollement::RecollementContext;
use qrep::rep::enumerate::EnumConfig;
use qrep::subcat::{CategoryContext, SearchBounds, Subcategory};
use qrep::{parse_algebra, Representation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;
/// Number, name, check, time limit in seconds.
type Criterion = (u32, &'static str, fn() -> Outcome, u64);

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name]
        .iter()
        .collect();
    p.display().to_string()
}

struct Run {
    code: i32,
    stdout: String,
    json: Value,
}

fn qrep(args: &[&str]) -> Run {
    qrep_env(args, &[])
}

fn qrep_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_qrep"))
        .args(args)
        .envs(env.iter().copied())
        .output()
        .expect("qrep runs");
    let stdout = String::from_utf8(out.stdout).expect("utf-8 output");
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout,
        json,
    }
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .map(|xs| {
            xs.iter()
                .filter_map(|x| x.as_str().map(String::from))
                .collect()
        })
        .unwrap_or_default()
}

fn set(xs: &[&str]) -> BTreeSet<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn all_checks_pass(v: &Value) -> Result<usize, String> {
    let checks = v["checks"].as_array().ok_or("report has no checks")?;
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| c["passed"] != Value::Bool(true))
        .filter_map(|c| c["name"].as_str())
        .collect();
    if failed.is_empty() {
        Ok(checks.len())
    } else {
        Err(format!("failed checks: {failed:?}"))
    }
}

/// AR-quiver vertices of the commutative square, written as triples.
const AR_LABELS: [&str; 11] = [
    "(P1,0)",
    "(0,S2)",
    "(S1,S1)_1",
    "(S2,0)",
    "(P1,S2)_f",
    "(P1,P1)_1",
    "(S1,P1)_f",
    "(0,S1)",
    "(S2,S2)_1",
    "(S1,0)",
    "(0,P1)",
];

fn criterion_1() -> Outcome {
    let a = qrep(&["indec", "enumerate", &data("a2.json")]);
    if a.code != 0 {
        return Err(format!("kA2 enumeration exited {}", a.code));
    }
    let dims: BTreeSet<Vec<u64>> = a.json["items"]
        .as_array()
        .ok_or("no items")?
        .iter()
        .map(|i| {
            i["dims"]
                .as_array()
                .unwrap()
                .iter()
                .map(|d| d.as_u64().unwrap())
                .collect()
        })
        .collect();
    let want: BTreeSet<Vec<u64>> = [vec![1, 0], vec![0, 1], vec![1, 1]].into_iter().collect();
    if a.json["count"] != 3 || dims != want {
        return Err(format!("kA2: count {} dims {dims:?}", a.json["count"]));
    }
    let b = qrep(&["indec", "enumerate", &data("a2.json"), "--triangular"]);
    if b.code != 0 {
        return Err(format!("B enumeration exited {}", b.code));
    }
    let labels: BTreeSet<String> = b.json["items"]
        .as_array()
        .ok_or("no items")?
        .iter()
        .map(|i| i["label"].as_str().unwrap().to_string())
        .collect();
    let count = b.json["count"].as_u64().unwrap_or(0);
    let ar = set(&AR_LABELS);
    let detail = format!(
        "kA2: 3 modules (1,0),(0,1),(1,1); B: {count} modules, labels equal to the AR quiver: {}",
        labels == ar
    );
    if count == 12 && labels == ar {
        Ok(detail)
    } else {
        Err(format!("{detail}; expected exactly 12 B-modules"))
    }
}

/// Brute force over subsets of {S2, S1, P1}: the only non-split conflations
/// have shape S2^a -> P1 (+) S2^(a-1) -> S1, so thickness is the two-out-of-three
/// rule on (S2, P1, S1).
fn oracle_thick_a2() -> BTreeSet<BTreeSet<String>> {
    let names = ["S2", "S1", "P1"];
    (0u8..8)
        .map(|m| {
            (0..3)
                .filter(|i| m >> i & 1 == 1)
                .map(|i| names[i].to_string())
                .collect::<BTreeSet<String>>()
        })
        .filter(|s| {
            let n = ["S2", "P1", "S1"]
                .iter()
                .filter(|x| s.contains(**x))
                .count();
            n != 2
        })
        .collect()
}

fn criterion_2() -> Outcome {
    let r = qrep(&["bijection", "verify", &data("a2.json")]);
    if r.code != 0 {
        return Err(format!("exit {}", r.code));
    }
    let thick_c: BTreeSet<BTreeSet<String>> = r.json["thick_c"]
        .as_array()
        .ok_or("no thick_c")?
        .iter()
        .map(|s| strings(s).into_iter().collect())
        .collect();
    let oracle = oracle_thick_a2();
    if thick_c != oracle || oracle.len() != 5 {
        return Err(format!(
            "thick subcategories of mod A {thick_c:?}, oracle {oracle:?}"
        ));
    }
    let ia = ["(S2,0)", "(P1,0)", "(S1,0)"];
    let rows: Vec<(Vec<&str>, Vec<&str>)> = vec![
        (vec![], vec![]),
        (vec!["(P1,S2)_f", "(S2,S2)_1", "(0,S2)"], vec!["S2"]),
        (vec!["(S1,S1)_1", "(0,S1)"], vec!["S1"]),
        (vec!["(P1,P1)_1", "(S1,P1)_f", "(0,P1)"], vec!["P1"]),
        (AR_LABELS.to_vec(), vec!["S2", "S1", "P1"]),
    ];
    let pairs = r.json["pairs"].as_array().ok_or("no pairs")?;
    if pairs.len() != 5 || r.json["thick_b_count"] != 5 {
        return Err(format!(
            "{} thick subcategories of mod B contain i_* mod A",
            pairs.len()
        ));
    }
    for (k, ((extra, phi), got)) in rows.iter().zip(pairs).enumerate() {
        let v: BTreeSet<String> = ia.iter().chain(extra).map(|s| s.to_string()).collect();
        let got_v: BTreeSet<String> = strings(&got["V"]).into_iter().collect();
        let got_phi: BTreeSet<String> = strings(&got["phiV"]).into_iter().collect();
        if got_v != v || got_phi != set(phi) {
            return Err(format!("row {}: V {got_v:?} phi {got_phi:?}", k + 1));
        }
    }
    let n = all_checks_pass(&r.json)?;
    Ok(format!("5 thick in mod A (oracle agrees), 5 in mod B over i_* mod A, table rows match, {n} checks incl. PsiPhi = PhiPsi = id"))
}

fn criterion_3() -> Outcome {
    let r = qrep(&["recollement", "verify", &data("a2.json")]);
    if r.code != 0 {
        return Err(format!("exit {}: {:?}", r.code, r.json["checks"]));
    }
    let n = all_checks_pass(&r.json)?;
    let b_items = strings(&r.json["b_items"]);
    let a_items = strings(&r.json["a_items"]);
    let full_b: BTreeSet<String> = b_items.iter().cloned().collect();
    if full_b != set(&AR_LABELS) || a_items.len() != 3 {
        return Err(format!(
            "checked over {} B- and {} A-indecomposables",
            b_items.len(),
            a_items.len()
        ));
    }
    Ok(format!(
        "{n} checks pass over all {} B- and 3 A-indecomposables, Ext degrees 1..=2",
        b_items.len()
    ))
}

fn criterion_4() -> Outcome {
    let v = ["(S2,0)", "(P1,0)", "(S1,0)", "(S1,S1)_1", "(0,S1)"];
    let mut args = vec!["recollement", "verify", &data("a2.json")]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>();
    args.push("--restrict".into());
    args.extend(v.iter().map(|s| s.to_string()));
    let r = qrep(&args.iter().map(String::as_str).collect::<Vec<_>>());
    if r.code != 0 {
        return Err(format!("exit {}", r.code));
    }
    all_checks_pass(&r.json)?;
    let phi = strings(&r.json["phiV"]);
    if phi != ["S1"] {
        return Err(format!("Phi(V) = {phi:?}"));
    }
    Ok("restricted context verifies, Phi(V) = add(S1)".into())
}

/// Projectivity oracle: M is projective iff dim M equals the dimension of the
/// projective cover of its top, read off from the radical.
fn is_projective_by_top(m: &Representation, proj: &[Representation]) -> bool {
    let top: Vec<usize> = m
        .dims()
        .iter()
        .zip(m.radical_dims())
        .map(|(d, r)| d - r)
        .collect();
    let cover: usize = top.iter().zip(proj).map(|(t, p)| t * p.total_dim()).sum();
    cover == m.total_dim()
}

fn criterion_5() -> Outcome {
    let expected = set(&["(P1,0)", "(S2,0)", "(P1,P1)_1", "(S2,S2)_1"]);
    // oracle: the indecomposable projective B-modules, identified in the catalog
    let alg = parse_algebra(&std::fs::read_to_string(data("a2.json")).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let ctx =
        RecollementContext::triangular(&alg, &EnumConfig::default(), &SearchBounds::default())
            .map_err(|e| e.to_string())?;
    let b = ctx.tri.b().clone();
    let proj: Vec<Representation> = (0..b.num_vertices())
        .map(|v| projective_at(&b, v))
        .collect();
    let cat_b = ctx.cat_b();
    let oracle: BTreeSet<String> = proj
        .iter()
        .map(|p| cat_b.label(cat_b.identify(p).unwrap()).to_string())
        .collect();
    if oracle != expected {
        return Err(format!("projective oracle gives {oracle:?}"));
    }
    let gldim = global_dimension(&b);

    let g = qrep(&[
        "silting",
        "glue",
        &data("a2.json"),
        "--ma",
        "P1",
        "S2",
        "--mc",
        "P1",
        "S2",
    ]);
    let m_b: Vec<String> = strings(&g.json["M_B"]);
    let m_b_set: BTreeSet<String> = m_b.iter().cloned().collect();
    let non_projective: Vec<&String> = m_b
        .iter()
        .filter(|l| !is_projective_by_top(cat_b.item(cat_b.index_of_label(l).unwrap()), &proj))
        .collect();
    let silting = g.json["M_B_silting"]["silting"] == true;
    let saturates = g.json["M_B_silting"]["closure_saturates"] == true;

    let mut args: Vec<String> = ["silting", "restrict", &data("a2.json"), "--m"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    args.extend(m_b.iter().cloned());
    let r = qrep(&args.iter().map(String::as_str).collect::<Vec<_>>());
    let restrict_ok = r.code == 0
        && strings(&r.json["candidate_A"])
            .into_iter()
            .collect::<BTreeSet<_>>()
            == set(&["P1", "S2"])
        && strings(&r.json["candidate_C"])
            .into_iter()
            .collect::<BTreeSet<_>>()
            == set(&["P1", "S2"])
        && r.json["branch_a_hypotheses"] == true
        && r.json["branch_c_hypotheses"] == true;

    let detail = format!(
        "gldim B = {gldim}; glue gives {} members, silting {silting}, closure saturates {saturates}, non-projective {non_projective:?}, \
         hypotheses {}; restrict of the glue output: exit {} ok {restrict_ok}",
        m_b.len(),
        g.json["hypotheses"],
        r.code
    );
    if gldim == 2
        && m_b_set == expected
        && silting
        && saturates
        && non_projective.is_empty()
        && restrict_ok
    {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_6() -> Outcome {
    // oracle: over kA2 the only non-zero Ext is Ext^1(S1, S2), and gldim is 1
    let names = ["S2", "S1", "P1"];
    let oracle_ext = |x: &str, y: &str| x == "S1" && y == "S2";
    let oracle_thick = oracle_thick_a2();
    let mut oracle_silting = BTreeSet::new();
    for m in 1u8..8 {
        let s: BTreeSet<String> = (0..3)
            .filter(|i| m >> i & 1 == 1)
            .map(|i| names[i].to_string())
            .collect();
        let presilting = s.iter().all(|x| s.iter().all(|y| !oracle_ext(x, y)));
        let closure = oracle_thick
            .iter()
            .filter(|t| s.is_subset(t))
            .min_by_key(|t| t.len())
            .unwrap();
        if presilting && closure.len() == 3 {
            oracle_silting.insert(s);
        }
    }
    let want: BTreeSet<BTreeSet<String>> = [set(&["P1", "S2"]), set(&["P1", "S1"])]
        .into_iter()
        .collect();
    if oracle_silting != want {
        return Err(format!("oracle finds {oracle_silting:?}"));
    }
    let mut found = BTreeSet::new();
    for m in 1u8..8 {
        let gens: Vec<&str> = (0..3)
            .filter(|i| m >> i & 1 == 1)
            .map(|i| names[i])
            .collect();
        let mut args = vec!["silting", "check", &data("a2.json"), "--gens"]
            .into_iter()
            .map(String::from)
            .collect::<Vec<_>>();
        args.extend(gens.iter().map(|s| s.to_string()));
        let r = qrep(&args.iter().map(String::as_str).collect::<Vec<_>>());
        if r.json["silting"]["silting"] != true {
            continue;
        }
        let at = &r.json["at_pair"];
        let m_set: BTreeSet<String> = gens.iter().map(|s| s.to_string()).collect();
        let inter: BTreeSet<String> = strings(&at["intersection"]).into_iter().collect();
        if r.code != 0
            || at["cotorsion"] != true
            || at["hereditary"] != true
            || at["bounded"] != true
            || inter != m_set
        {
            return Err(format!("{gens:?}: AT pair {at}"));
        }
        found.insert(m_set);
    }
    if found != oracle_silting {
        return Err(format!("search finds {found:?}, oracle {oracle_silting:?}"));
    }
    Ok("silting: add(P1+S2), add(P1+S1) (oracle agrees); each gives a bounded hereditary cotorsion pair with intersection M".into())
}

fn random_mask(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Subcategory {
    Subcategory::new((0..n).filter(|_| rng.gen_bool(density)))
}

fn closure_laws(ctx: &CategoryContext, rng: &mut ChaCha8Rng, rounds: usize) -> Result<(), String> {
    let n = ctx.catalog().len();
    for _ in 0..rounds {
        let s = random_mask(rng, n, 0.3);
        let t = s.union(&random_mask(rng, n, 0.3));
        let cs = ctx.thick_closure(&s).map_err(|e| e.to_string())?;
        let ct = ctx.thick_closure(&t).map_err(|e| e.to_string())?;
        let ccs = ctx.thick_closure(&cs).map_err(|e| e.to_string())?;
        if !s.is_subset(&cs) {
            return Err(format!("not extensive on {:?}", s.members()));
        }
        if !cs.is_subset(&ct) {
            return Err(format!(
                "not monotone on {:?} <= {:?}",
                s.members(),
                t.members()
            ));
        }
        if ccs != cs {
            return Err(format!("not idempotent on {:?}", s.members()));
        }
    }
    Ok(())
}

/// Random conflations `0 -> X -> E -> Z -> 0` between objects of at most two
/// summands; checks exactness and the alternating sum against every indecomposable.
fn les_laws(ctx: &CategoryContext, rng: &mut ChaCha8Rng, rounds: usize) -> Result<usize, String> {
    let cat = ctx.catalog();
    let top = global_dimension(cat.algebra());
    let pick = |rng: &mut ChaCha8Rng| -> Representation {
        let k = rng.gen_range(1..=2);
        let idx: Vec<usize> = (0..k).map(|_| rng.gen_range(0..cat.len())).collect();
        cat.object(&idx)
    };
    let p = cat.algebra().field().p();
    let mut nonsplit = 0;
    for _ in 0..rounds {
        let (z, x) = (pick(rng), pick(rng));
        let space = Ext1Space::new(&z, &x);
        let coeffs: Vec<u32> = (0..space.dim()).map(|_| rng.gen_range(0..p)).collect();
        if coeffs.iter().any(|&c| c != 0) {
            nonsplit += 1;
        }
        let ses = space.extension(&coeffs);
        if !ses.is_exact() {
            return Err("constructed sequence is not exact".into());
        }
        for t in cat.items() {
            let s = les_alternating_sum(t, &ses, top);
            if s != 0 {
                return Err(format!("alternating sum {s} != 0"));
            }
        }
    }
    Ok(nonsplit)
}

fn criterion_7() -> Outcome {
    let alg = parse_algebra(&std::fs::read_to_string(data("a2.json")).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let ctx =
        RecollementContext::triangular(&alg, &EnumConfig::default(), &SearchBounds::default())
            .map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut thick_total = 0;
    let mut nonsplit = 0;
    for c in [&ctx.a, &ctx.b] {
        closure_laws(c, &mut rng, 500)?;
        let all = c.enumerate_thick(None).map_err(|e| e.to_string())?;
        for t in &all {
            if !c.is_thick(t).holds() {
                return Err(format!(
                    "enumerate_thick output {:?} is not thick",
                    c.labels(t)
                ));
            }
        }
        thick_total += all.len();
        nonsplit += les_laws(c, &mut rng, 500)?;
    }
    Ok(format!(
        "1000 generator sets: extensive, monotone, idempotent; {thick_total} enumerated thick subcategories are thick; \
         1000 conflations ({nonsplit} non-split) satisfy the alternating-sum identity"
    ))
}

fn criterion_8() -> Outcome {
    let a2 = data("a2.json");
    let commands: Vec<Vec<&str>> = vec![
        vec!["indec", "enumerate", &a2, "--triangular"],
        vec!["bijection", "verify", &a2],
        vec!["recollement", "verify", &a2],
        vec![
            "silting", "glue", &a2, "--ma", "P1", "S2", "--mc", "P1", "S2",
        ],
        vec!["silting", "check", &a2, "--gens", "P1", "S1"],
    ];
    let cache = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cache_dir = cache.path().display().to_string();
    for cmd in &commands {
        let first = qrep(cmd);
        let single = qrep_env(cmd, &[("RAYON_NUM_THREADS", "1")]);
        let mut cached_args: Vec<&str> = vec!["--cache-dir", &cache_dir];
        cached_args.extend(cmd.iter().copied());
        let miss = qrep(&cached_args);
        let hit = qrep(&cached_args);
        if first.json.is_null() {
            return Err(format!("{cmd:?}: no JSON report"));
        }
        for (what, other) in [
            ("second run", &single),
            ("cache miss", &miss),
            ("cache hit", &hit),
        ] {
            if other.stdout != first.stdout || other.code != first.code {
                return Err(format!("{cmd:?}: {what} differs"));
            }
        }
    }
    Ok(format!(
        "{} commands byte-identical across thread counts and cache states",
        commands.len()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        (1, "indecomposable counts", criterion_1, 60),
        (2, "thick bijection table", criterion_2, 300),
        (3, "recollement axioms", criterion_3, 120),
        (4, "restricted recollement", criterion_4, 300),
        (5, "silting gluing round trip", criterion_5, 300),
        (6, "AT-bijection suite", criterion_6, 300),
        (7, "closure-operator laws", criterion_7, 600),
        (8, "determinism", criterion_8, 600),
    ];
    let only: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failures = 0;
    for (n, name, run, limit) in criteria {
        if only.is_some_and(|o| o != n) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(d) if took > Duration::from_secs(limit) => Err(format!("{d}; exceeded {limit} s")),
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if outcome.is_err() {
            failures += 1;
        }
        println!(
            "criterion {n} {tag} [{name}] ({:.1} s, limit {limit} s): {detail}",
            took.as_secs_f64()
        );
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
