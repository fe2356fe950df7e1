//! Acyclic quivers, admissible relations and the resulting bound quiver algebras.
//!
//! Paths are arrow sequences read left to right: `[a1, a2]` traverses `a1`
//! first, and a representation acts on it by `M(a2) * M(a1)`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{Fp, Matrix};
use crate::rep::Representation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    fn is_acyclic(&self) -> bool {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        seen == n
    }
}

/// A path from `source` to `target`; `arrows` empty means the trivial path.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

/// A linear combination of parallel paths (arrow indices), each of length at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(u32, Vec<usize>)>,
}

/// On-disk form of an algebra, also used to hash algebras.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<TermSpec>>,
    #[serde(default)]
    pub prime: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: i64,
    pub path: Vec<String>,
}

pub const DEFAULT_PRIME: u64 = 101;

/// A bound quiver algebra `kQ/I` over `F_p` with a chosen residue path basis.
#[derive(Debug)]
pub struct Algebra {
    quiver: Quiver,
    relations: Vec<Relation>,
    field: Fp,
    /// `basis[s][t]`: residue paths from `s` to `t`.
    basis: Vec<Vec<Vec<Path>>>,
    /// Normal form of every path of `kQ` in the residue basis of its endpoints.
    normal: HashMap<Path, Vec<u32>>,
}

fn all_paths(q: &Quiver) -> Vec<Path> {
    let mut out = Vec::new();
    for s in 0..q.vertices.len() {
        let mut stack = vec![Path {
            source: s,
            target: s,
            arrows: vec![],
        }];
        while let Some(p) = stack.pop() {
            for (ai, a) in q.arrows.iter().enumerate() {
                if a.source == p.target {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    stack.push(Path {
                        source: s,
                        target: a.target,
                        arrows,
                    });
                }
            }
            out.push(p);
        }
    }
    out.sort_by(|a, b| {
        (a.arrows.len(), &a.arrows, a.source).cmp(&(b.arrows.len(), &b.arrows, b.source))
    });
    out
}

impl Algebra {
    pub fn new(quiver: Quiver, relations: Vec<Relation>, prime: u64) -> Result<Algebra> {
        let field = Fp::new(prime)?;
        let n = quiver.vertices.len();
        if n == 0 {
            return Err(Error::Input("quiver has no vertices".into()));
        }
        for (i, v) in quiver.vertices.iter().enumerate() {
            if quiver.vertices[..i].contains(v) {
                return Err(Error::Input(format!("duplicate vertex {v}")));
            }
        }
        for (i, a) in quiver.arrows.iter().enumerate() {
            if quiver.arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::Input(format!("duplicate arrow {}", a.name)));
            }
            if a.source >= n || a.target >= n {
                return Err(Error::Input(format!(
                    "arrow {} has an unknown endpoint",
                    a.name
                )));
            }
        }
        if !quiver.is_acyclic() {
            return Err(Error::Input("quiver has an oriented cycle".into()));
        }
        let mut ends = Vec::new();
        for (ri, r) in relations.iter().enumerate() {
            let mut st = None;
            for (_, path) in &r.terms {
                if path.len() < 2 {
                    return Err(Error::Input(format!(
                        "relation {ri} has a path of length < 2"
                    )));
                }
                for w in path.windows(2) {
                    if quiver.arrows[w[0]].target != quiver.arrows[w[1]].source {
                        return Err(Error::Input(format!(
                            "relation {ri} has a non-composable path"
                        )));
                    }
                }
                let e = (
                    quiver.arrows[path[0]].source,
                    quiver.arrows[*path.last().unwrap()].target,
                );
                if *st.get_or_insert(e) != e {
                    return Err(Error::Input(format!(
                        "relation {ri} mixes paths with different endpoints"
                    )));
                }
            }
            ends.push(st.unwrap_or((0, 0)));
        }

        let paths = all_paths(&quiver);
        let mut by_ends: Vec<Vec<Vec<Path>>> = vec![vec![vec![]; n]; n];
        for p in &paths {
            by_ends[p.source][p.target].push(p.clone());
        }
        // two-sided ideal: prefix . relation . suffix
        let mut ideal_rows: Vec<Vec<Vec<Vec<u32>>>> = vec![vec![vec![]; n]; n];
        for (r, &(rs, rt)) in relations.iter().zip(&ends) {
            if r.terms.is_empty() {
                continue;
            }
            for pre in paths.iter().filter(|p| p.target == rs) {
                for suf in paths.iter().filter(|p| p.source == rt) {
                    let (s, t) = (pre.source, suf.target);
                    let list = &by_ends[s][t];
                    let mut row = vec![0u32; list.len()];
                    for (c, arrows) in &r.terms {
                        let mut full = pre.arrows.clone();
                        full.extend(arrows);
                        full.extend(&suf.arrows);
                        let idx = list
                            .iter()
                            .position(|p| p.arrows == full)
                            .expect("path listed");
                        row[idx] = field.add(row[idx], *c % field.p());
                    }
                    ideal_rows[s][t].push(row);
                }
            }
        }
        let mut basis = vec![vec![vec![]; n]; n];
        let mut normal = HashMap::new();
        for s in 0..n {
            for t in 0..n {
                let list = &by_ends[s][t];
                let rows = &ideal_rows[s][t];
                let m = if rows.is_empty() {
                    Matrix::zeros(field, 0, list.len())
                } else {
                    let flat: Vec<u32> = rows.iter().flatten().copied().collect();
                    Matrix::from_vec(field, rows.len(), list.len(), flat)
                };
                let rr = m.rref();
                let free: Vec<usize> = (0..list.len()).filter(|c| !rr.pivots.contains(c)).collect();
                for (k, &c) in free.iter().enumerate() {
                    let mut v = vec![0; free.len()];
                    v[k] = 1;
                    normal.insert(list[c].clone(), v);
                }
                for (i, &pc) in rr.pivots.iter().enumerate() {
                    let v = free
                        .iter()
                        .map(|&c| field.neg(rr.reduced.get(i, c)))
                        .collect();
                    normal.insert(list[pc].clone(), v);
                }
                basis[s][t] = free.iter().map(|&c| list[c].clone()).collect();
            }
        }
        let alg = Algebra {
            quiver,
            relations,
            field,
            basis,
            normal,
        };
        let dim = alg.dim();
        if (prime as usize) <= dim {
            return Err(Error::PrimeTooSmall {
                p: prime as u32,
                needed: dim,
            });
        }
        Ok(alg)
    }

    pub fn from_spec(spec: &AlgebraSpec) -> Result<Algebra> {
        let vertices = spec.vertices.clone();
        let quiver0 = Quiver {
            vertices: vertices.clone(),
            arrows: vec![],
        };
        let mut arrows = Vec::new();
        for a in &spec.arrows {
            let source = quiver0.vertex_index(&a.from).ok_or_else(|| {
                Error::Input(format!(
                    "arrow {} starts at unknown vertex {}",
                    a.name, a.from
                ))
            })?;
            let target = quiver0.vertex_index(&a.to).ok_or_else(|| {
                Error::Input(format!("arrow {} ends at unknown vertex {}", a.name, a.to))
            })?;
            arrows.push(Arrow {
                name: a.name.clone(),
                source,
                target,
            });
        }
        let quiver = Quiver { vertices, arrows };
        let prime = spec.prime.unwrap_or(DEFAULT_PRIME);
        let f = Fp::new(prime)?;
        let mut relations = Vec::new();
        for r in &spec.relations {
            let mut terms = Vec::new();
            for t in r {
                let path = t
                    .path
                    .iter()
                    .map(|name| {
                        quiver.arrow_index(name).ok_or_else(|| {
                            Error::Input(format!("unknown arrow {name} in relation"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                terms.push((f.from_i64(t.coeff), path));
            }
            relations.push(Relation { terms });
        }
        Algebra::new(quiver, relations, prime)
    }

    /// Inverse of [`Algebra::from_spec`]; the canonical text of this is what gets hashed.
    pub fn to_spec(&self) -> AlgebraSpec {
        let q = &self.quiver;
        AlgebraSpec {
            vertices: q.vertices.clone(),
            arrows: q
                .arrows
                .iter()
                .map(|a| ArrowSpec {
                    name: a.name.clone(),
                    from: q.vertices[a.source].clone(),
                    to: q.vertices[a.target].clone(),
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|(c, p)| TermSpec {
                            coeff: self.field.to_signed(*c),
                            path: p.iter().map(|&a| q.arrows[a].name.clone()).collect(),
                        })
                        .collect()
                })
                .collect(),
            prime: Some(self.field.p() as u64),
        }
    }

    pub fn canonical_json(&self) -> String {
        serde_json::to_string(&self.to_spec()).expect("spec serializes")
    }

    /// The same algebra over a different prime field.
    pub fn with_prime(&self, prime: u64) -> Result<Algebra> {
        let mut spec = self.to_spec();
        spec.prime = Some(prime);
        Algebra::from_spec(&spec)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.quiver.arrows.len()
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.quiver.arrows[a]
    }

    pub fn residue_paths(&self, s: usize, t: usize) -> &[Path] {
        &self.basis[s][t]
    }

    pub fn path_basis(&self) -> Vec<Path> {
        let n = self.num_vertices();
        let mut out: Vec<Path> = (0..n)
            .flat_map(|s| (0..n).flat_map(move |t| self.basis[s][t].iter().cloned()))
            .collect();
        out.sort_by(|a, b| {
            (a.arrows.len(), &a.arrows, a.source).cmp(&(b.arrows.len(), &b.arrows, b.source))
        });
        out
    }

    pub fn dim(&self) -> usize {
        self.basis.iter().flatten().map(|b| b.len()).sum()
    }

    /// Coordinates of a path of `kQ` in the residue basis from its source to its target.
    pub fn normal_form(&self, p: &Path) -> &[u32] {
        &self.normal[p]
    }

    pub fn trivial_path(v: usize) -> Path {
        Path {
            source: v,
            target: v,
            arrows: vec![],
        }
    }

    /// `p` followed by arrow `a`.
    pub fn extend(&self, p: &Path, a: usize) -> Path {
        let arr = self.arrow(a);
        assert_eq!(arr.source, p.target);
        let mut arrows = p.arrows.clone();
        arrows.push(a);
        Path {
            source: p.source,
            target: arr.target,
            arrows,
        }
    }

    fn vertex(&self, v: &str) -> Result<usize> {
        self.quiver
            .vertex_index(v)
            .ok_or_else(|| Error::Input(format!("unknown vertex {v}")))
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.quiver.vertices[v]
    }
}

/// Parses the JSON algebra dialect.
pub fn parse_algebra(text: &str) -> Result<Arc<Algebra>> {
    if text.trim().is_empty() {
        return Err(Error::Input("empty algebra spec".into()));
    }
    let spec: AlgebraSpec = serde_json::from_str(text)
        .map_err(|e| Error::Input(format!("malformed algebra spec: {e}")))?;
    Ok(Arc::new(Algebra::from_spec(&spec)?))
}

pub fn simple_module(alg: &Arc<Algebra>, v: &str) -> Result<Representation> {
    let v = alg.vertex(v)?;
    Ok(simple_at(alg, v))
}

pub fn simple_at(alg: &Arc<Algebra>, v: usize) -> Representation {
    let mut dims = vec![0; alg.num_vertices()];
    dims[v] = 1;
    Representation::zero_maps(alg, dims)
}

pub fn projective_module(alg: &Arc<Algebra>, v: &str) -> Result<Representation> {
    let v = alg.vertex(v)?;
    Ok(projective_at(alg, v))
}

/// `P_v`: residue paths starting at `v`, acted on by appending arrows.
pub fn projective_at(alg: &Arc<Algebra>, v: usize) -> Representation {
    let f = alg.field();
    let n = alg.num_vertices();
    let dims: Vec<usize> = (0..n).map(|w| alg.residue_paths(v, w).len()).collect();
    let mats = (0..alg.num_arrows())
        .map(|a| {
            let arr = alg.arrow(a);
            let src = alg.residue_paths(v, arr.source);
            let cols: Vec<Vec<u32>> = src
                .iter()
                .map(|p| alg.normal_form(&alg.extend(p, a)).to_vec())
                .collect();
            Matrix::from_columns(f, dims[arr.target], &cols)
        })
        .collect();
    Representation::new(alg, dims, mats).expect("projective module satisfies the relations")
}

pub fn injective_module(alg: &Arc<Algebra>, v: &str) -> Result<Representation> {
    let v = alg.vertex(v)?;
    Ok(injective_at(alg, v))
}

/// `I_v`: the dual of the residue paths ending at `v`.
pub fn injective_at(alg: &Arc<Algebra>, v: usize) -> Representation {
    let f = alg.field();
    let n = alg.num_vertices();
    let dims: Vec<usize> = (0..n).map(|w| alg.residue_paths(w, v).len()).collect();
    let mats = (0..alg.num_arrows())
        .map(|a| {
            let arr = alg.arrow(a);
            let tgt = alg.residue_paths(arr.target, v);
            let mut m = Matrix::zeros(f, dims[arr.target], dims[arr.source]);
            for (i, q) in tgt.iter().enumerate() {
                let mut arrows = vec![a];
                arrows.extend(&q.arrows);
                let path = Path {
                    source: arr.source,
                    target: v,
                    arrows,
                };
                for (j, &c) in alg.normal_form(&path).iter().enumerate() {
                    m.set(i, j, c);
                }
            }
            m
        })
        .collect();
    Representation::new(alg, dims, mats).expect("injective module satisfies the relations")
}

/// `A` as a left module over itself: the direct sum of all `P_v`.
pub fn regular_module(alg: &Arc<Algebra>) -> Representation {
    let mut m = Representation::zero(alg);
    for v in 0..alg.num_vertices() {
        m = m.direct_sum(&projective_at(alg, v));
    }
    m
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn a2() -> Arc<Algebra> {
        parse_algebra(r#"{"vertices":["1","2"],"arrows":[{"name":"a","from":"1","to":"2"}]}"#)
            .unwrap()
    }

    pub fn square() -> Arc<Algebra> {
        parse_algebra(
            r#"{"vertices":["1","2","3","4"],
                "arrows":[{"name":"alpha","from":"1","to":"2"},{"name":"beta","from":"2","to":"4"},
                          {"name":"delta","from":"1","to":"3"},{"name":"gamma","from":"3","to":"4"}],
                "relations":[[{"coeff":1,"path":["alpha","beta"]},{"coeff":-1,"path":["delta","gamma"]}]]}"#,
        )
        .unwrap()
    }

    /// Counts paths of kQ by brute force and subtracts one per independent
    /// relation, which is exact for relations with disjoint supports.
    fn oracle_dim(q: &Quiver, independent_relations: usize) -> usize {
        fn count(q: &Quiver, v: usize) -> usize {
            1 + q
                .arrows
                .iter()
                .filter(|a| a.source == v)
                .map(|a| count(q, a.target))
                .sum::<usize>()
        }
        (0..q.vertices.len()).map(|v| count(q, v)).sum::<usize>() - independent_relations
    }

    #[test]
    fn dimensions() {
        let a = a2();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.dim(), oracle_dim(a.quiver(), 0));
        let b = square();
        assert_eq!(b.dim(), 9);
        assert_eq!(b.dim(), oracle_dim(b.quiver(), 1));
        let pt = parse_algebra(r#"{"vertices":["x"],"arrows":[]}"#).unwrap();
        assert_eq!(pt.dim(), 1);
    }

    #[test]
    fn parse_errors() {
        assert!(parse_algebra("").is_err());
        assert!(parse_algebra("{").is_err());
        let cyc = r#"{"vertices":["1","2"],"arrows":[{"name":"a","from":"1","to":"2"},{"name":"b","from":"2","to":"1"}]}"#;
        assert!(matches!(parse_algebra(cyc), Err(Error::Input(_))));
        let bad = r#"{"vertices":["1","2","3"],"arrows":[{"name":"a","from":"1","to":"2"},{"name":"b","from":"1","to":"3"}],
                      "relations":[[{"coeff":1,"path":["a","b"]}]]}"#;
        assert!(parse_algebra(bad).is_err());
        let small =
            r#"{"vertices":["1","2"],"arrows":[{"name":"a","from":"1","to":"2"}],"prime":3}"#;
        assert!(matches!(
            parse_algebra(small),
            Err(Error::PrimeTooSmall { .. })
        ));
    }

    #[test]
    fn simple_projective_regular() {
        let a = a2();
        assert_eq!(simple_module(&a, "1").unwrap().dims(), &[1, 0]);
        assert_eq!(simple_module(&a, "2").unwrap().dims(), &[0, 1]);
        assert_eq!(projective_module(&a, "1").unwrap().dims(), &[1, 1]);
        assert_eq!(projective_module(&a, "2").unwrap().dims(), &[0, 1]);
        assert_eq!(regular_module(&a).dims(), &[1, 2]);
        assert!(simple_module(&a, "9").is_err());
        let b = square();
        assert_eq!(regular_module(&b).total_dim(), 9);
        assert_eq!(projective_module(&b, "1").unwrap().dims(), &[1, 1, 1, 1]);
        assert_eq!(injective_module(&b, "4").unwrap().dims(), &[1, 1, 1, 1]);
    }

    #[test]
    fn projective_has_simple_top() {
        let b = square();
        for v in 0..b.num_vertices() {
            let p = projective_at(&b, v);
            let rad = p.radical_dims();
            let top: Vec<usize> = p.dims().iter().zip(&rad).map(|(d, r)| d - r).collect();
            let mut expect = vec![0; b.num_vertices()];
            expect[v] = 1;
            assert_eq!(top, expect);
        }
    }
}
