//! Built-in example dgas.
//!
//! Most entries share one shape: closed `x1, x2`, a second layer `y1, y2, y3`
//! with `dy1 = x1^3 x2`, `dy2 = x1^2 x2^2`, `dy3 = x1 x2^3`, and a top
//! generator `z` with `dz = c * alpha * beta + P`, where
//! `alpha = x1 y2 - x2 y1` and `beta = x1 y3 - x2 y2`. The Amann entry uses
//! `x2^2` in place of `x2` throughout.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Element};
use crate::checker::{
    build_bm, run_checker, split_top_differential, Bm, CheckerReport, Ordering, PresentationOptions, Splitting,
    ThreeStepPresentation, Verdict,
};
use crate::dga::{QuotientContext, SullivanDga};
use crate::error::{Error, Result};

/// Keys accepted by [`build_corpus`], with a one-line description.
pub const CORPUS_KEYS: &[(&str, &str)] = &[
    ("arkowitz-lupton-5.1", "degrees 8, 10, 33, 35, 37, 119"),
    ("arkowitz-lupton-5.2", "degrees 10, 12, 41, 43, 45, 119"),
    ("cl-I.1", "degrees 2, 4, 9, 11, 13, 35"),
    ("cl-I.2", "degrees 4, 6, 17, 19, 21, 59"),
    ("cl-I.3", "same dga as arkowitz-lupton-5.1"),
    ("cl-I.4", "same dga as arkowitz-lupton-5.2"),
    ("cmv", "family indexed by k >= 1"),
    ("amann-3.8", "degrees 2, 2, 9, 11, 13, 35 with x2^2 in place of x2"),
    ("amann-massey", "seven generators, family indexed by k >= 0"),
    ("graph", "Arkowitz-Lupton core extended along a graph (needs a graph)"),
];

/// Parameters for parametrized entries.
#[derive(Clone, Debug, Default)]
pub struct CorpusParams {
    pub k: Option<u32>,
    pub graph: Option<Graph>,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub key: String,
    pub k: Option<u32>,
    pub graph: Option<Graph>,
    pub dga: SullivanDga,
    pub top: String,
    pub nu: Element,
}

impl CorpusEntry {
    pub fn presentation(&self, opts: PresentationOptions) -> Result<ThreeStepPresentation> {
        ThreeStepPresentation::new(&self.dga, &self.top, &self.nu, opts)
    }

    /// Generator degrees in declaration order.
    pub fn degrees(&self) -> Vec<u32> {
        self.dga.algebra().generators().iter().map(|g| g.degree).collect()
    }

    pub fn formal_dimension(&self) -> u32 {
        self.nu.degree().unwrap_or(0)
    }
}

struct AlShape<'a> {
    degrees: [u32; 6],
    /// What plays the role of `x2` inside the differentials.
    x2: &'a str,
    /// Coefficient of `alpha * beta` in `dz`.
    prefactor: &'a str,
    rest: &'a str,
    nu: &'a str,
}

fn al_shape(key: &str, k: Option<u32>, s: AlShape) -> Result<CorpusEntry> {
    let names = ["x1", "x2", "y1", "y2", "y3", "z"];
    let mut algebra = Algebra::new();
    for (n, d) in names.iter().zip(s.degrees) {
        algebra.add_generator(n, d)?;
    }
    let p = |t: &str| crate::expr::parse_element(&algebra, t);
    let x1 = p("x1")?;
    let x2 = p(s.x2)?;
    let [y1, y2, y3] = [p("y1")?, p("y2")?, p("y3")?];
    let alpha = &(&x1 * &y2) - &(&x2 * &y1);
    let beta = &(&x1 * &y3) - &(&x2 * &y2);
    let dz = &(&(&p(s.prefactor)? * &alpha) * &beta) + &p(s.rest)?;
    let diff = vec![
        Element::zero(),
        Element::zero(),
        &x1.pow(3) * &x2,
        &x1.pow(2) * &x2.pow(2),
        &x1 * &x2.pow(3),
        dz,
    ];
    let nu = p(s.nu)?;
    let dga = SullivanDga::new(algebra, diff)?;
    Ok(CorpusEntry {
        key: key.to_string(),
        k,
        graph: None,
        dga,
        top: "z".into(),
        nu,
    })
}

fn arkowitz_lupton_51(key: &str) -> Result<CorpusEntry> {
    al_shape(
        key,
        None,
        AlShape {
            degrees: [8, 10, 33, 35, 37, 119],
            x2: "x2",
            prefactor: "x1^4",
            rest: "x1^15 + x2^12",
            nu: "x1^26",
        },
    )
}

fn arkowitz_lupton_52(key: &str) -> Result<CorpusEntry> {
    al_shape(
        key,
        None,
        AlShape {
            degrees: [10, 12, 41, 43, 45, 119],
            x2: "x2",
            prefactor: "x2",
            rest: "x1^12 + x2^10",
            nu: "x2^19",
        },
    )
}

fn cmv(k: u32) -> Result<CorpusEntry> {
    let (k6, k5) = (6 * k, 5 * k);
    let prefactor = format!("x1^{}", k6 - 6);
    let rest = format!("x1^{} + x2^{}", k6 + 5, k5 + 4);
    let nu = format!("x1^{}", k6 + 16);
    al_shape(
        "cmv",
        Some(k),
        AlShape {
            degrees: [
                10 * k + 8,
                12 * k + 10,
                42 * k + 33,
                44 * k + 35,
                46 * k + 37,
                60 * k * k + 98 * k + 39,
            ],
            x2: "x2",
            prefactor: &prefactor,
            rest: &rest,
            nu: &nu,
        },
    )
}

fn amann_massey(k: u32) -> Result<CorpusEntry> {
    let y4 = 75 + 4 * k;
    let dy4 = format!("x1^{}", 19 + k);
    let mut dga = SullivanDga::from_tables(
        &[
            ("x1", 4),
            ("x2", 6),
            ("y1", 27),
            ("y2", 29),
            ("y3", 31),
            ("y4", y4),
            ("z", 77),
        ],
        &[
            ("y1", "x1^4*x2^2"),
            ("y2", "x1^3*x2^3"),
            ("y3", "x1^2*x2^4"),
            ("y4", &dy4),
        ],
    )?;
    let alpha = dga.parse("x1*y2 - x2*y1")?;
    let beta = dga.parse("x1*y3 - x2*y2")?;
    let dz = &(&(&dga.parse("x1*x2")? * &alpha) * &beta) + &dga.parse("x2*x1^18 + x2^13")?;
    let mut diff = dga.differentials().to_vec();
    diff[6] = dz;
    dga = SullivanDga::new(dga.algebra().clone(), diff)?;
    let nu = dga.parse(&format!("x2^26*y4 - x1^{}*x2^24*y1", 15 + k))?;
    Ok(CorpusEntry {
        key: "amann-massey".into(),
        k: Some(k),
        graph: None,
        dga,
        top: "z".into(),
        nu,
    })
}

/// Builds a corpus entry by key.
pub fn build_corpus(key: &str, params: &CorpusParams) -> Result<CorpusEntry> {
    let needs_k = matches!(key, "cmv" | "amann-massey");
    if params.k.is_some() && !needs_k {
        return Err(Error::Parameter(format!("{key} takes no parameter k")));
    }
    match key {
        "arkowitz-lupton-5.1" | "cl-I.3" => arkowitz_lupton_51(key),
        "arkowitz-lupton-5.2" | "cl-I.4" => arkowitz_lupton_52(key),
        "cl-I.1" => al_shape(
            key,
            None,
            AlShape {
                degrees: [2, 4, 9, 11, 13, 35],
                x2: "x2",
                prefactor: "x2^2",
                rest: "x1^18 + x2^9",
                nu: "x2^16",
            },
        ),
        "cl-I.2" => al_shape(
            key,
            None,
            AlShape {
                degrees: [4, 6, 17, 19, 21, 59],
                x2: "x2",
                prefactor: "x2^2",
                rest: "x1^15 + x2^10",
                nu: "x2^18",
            },
        ),
        "amann-3.8" => al_shape(
            key,
            None,
            AlShape {
                degrees: [2, 2, 9, 11, 13, 35],
                x2: "x2^2",
                prefactor: "x2^4",
                rest: "x1^18 + x2^18",
                nu: "x2^33",
            },
        ),
        "cmv" => {
            let k = params.k.ok_or_else(|| Error::Parameter("cmv needs k >= 1".into()))?;
            if k < 1 {
                return Err(Error::Parameter(format!("cmv needs k >= 1, got {k}")));
            }
            cmv(k)
        }
        "amann-massey" => amann_massey(params.k.unwrap_or(0)),
        "graph" => {
            let g = params
                .graph
                .as_ref()
                .ok_or_else(|| Error::Parameter("the graph family needs a graph".into()))?;
            build_graph_dga(g)
        }
        _ => Err(Error::UnknownCorpus(key.to_string())),
    }
}

/// A finite simple graph, read from `{"vertices": [...], "edges": [[a, b], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl Graph {
    pub fn new(vertices: &[&str], edges: &[(&str, &str)]) -> Self {
        Graph {
            vertices: vertices.iter().map(|v| v.to_string()).collect(),
            edges: edges.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Graph(format!("bad graph JSON: {e}")))
    }

    /// Checks that the graph is simple, connected and has at least two
    /// vertices with identifier names.
    pub fn validate(&self) -> Result<()> {
        if self.vertices.len() < 2 {
            return Err(Error::Graph(format!(
                "a graph needs at least two vertices, got {}",
                self.vertices.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for v in &self.vertices {
            let ok = !v.is_empty() && v.bytes().all(|c| c.is_ascii_alphanumeric() || c == b'_');
            if !ok {
                return Err(Error::Graph(format!("vertex name {v:?} is not an identifier")));
            }
            if !seen.insert(v.as_str()) {
                return Err(Error::Graph(format!("duplicate vertex {v}")));
            }
        }
        let mut adjacency: BTreeMap<&str, Vec<&str>> = self.vertices.iter().map(|v| (v.as_str(), Vec::new())).collect();
        let mut pairs = BTreeSet::new();
        for [a, b] in &self.edges {
            for v in [a, b] {
                if !seen.contains(v.as_str()) {
                    return Err(Error::Graph(format!("edge ({a}, {b}) uses unknown vertex {v}")));
                }
            }
            if a == b {
                return Err(Error::Graph(format!("loop at vertex {a}")));
            }
            let key = if a < b { (a, b) } else { (b, a) };
            if !pairs.insert(key) {
                return Err(Error::Graph(format!("repeated edge ({a}, {b})")));
            }
            adjacency.get_mut(a.as_str()).expect("known vertex").push(b);
            adjacency.get_mut(b.as_str()).expect("known vertex").push(a);
        }
        let start = self.vertices[0].as_str();
        let mut reached = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[v] {
                if reached.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        if let Some(v) = self.vertices.iter().find(|v| !reached.contains(v.as_str())) {
            return Err(Error::Graph(format!(
                "graph is not connected: {v} is unreachable from {start}"
            )));
        }
        Ok(())
    }

    /// Neighbours of `v` in edge order.
    pub fn neighbours<'a>(&'a self, v: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.edges.iter().filter_map(move |[a, b]| {
            if a == v {
                Some(b.as_str())
            } else if b == v {
                Some(a.as_str())
            } else {
                None
            }
        })
    }
}

/// Extends the first Arkowitz-Lupton dga along a graph by closed `x_v` of
/// degree 40 and `z_v` of degree 119 with
/// `dz_v = x_v^3 + sum over edges (v, w) of x_v x_w x2^4`.
pub fn build_graph_dga(graph: &Graph) -> Result<CorpusEntry> {
    graph.validate()?;
    let mut gens: Vec<(String, u32)> = [("x1", 8), ("x2", 10), ("y1", 33), ("y2", 35), ("y3", 37)]
        .iter()
        .map(|(n, d)| (n.to_string(), *d))
        .collect();
    gens.extend(graph.vertices.iter().map(|v| (format!("x_{v}"), 40)));
    gens.extend(graph.vertices.iter().map(|v| (format!("z_{v}"), 119)));
    gens.push(("z".into(), 119));
    let mut diffs: Vec<(String, String)> = vec![
        ("y1".into(), "x1^3*x2".into()),
        ("y2".into(), "x1^2*x2^2".into()),
        ("y3".into(), "x1*x2^3".into()),
        (
            "z".into(),
            "x1^6*y2*y3 - x1^5*x2*y1*y3 + x1^4*x2^2*y1*y2 + x1^15 + x2^12".into(),
        ),
    ];
    for v in &graph.vertices {
        let mut text = format!("x_{v}^3");
        for w in graph.neighbours(v) {
            text.push_str(&format!(" + x_{v}*x_{w}*x2^4"));
        }
        diffs.push((format!("z_{v}"), text));
    }
    let gen_refs: Vec<(&str, u32)> = gens.iter().map(|(n, d)| (n.as_str(), *d)).collect();
    let diff_refs: Vec<(&str, &str)> = diffs.iter().map(|(n, e)| (n.as_str(), e.as_str())).collect();
    let dga = SullivanDga::from_tables(&gen_refs, &diff_refs)?;
    let mut nu_text = "x1^26".to_string();
    for v in &graph.vertices {
        nu_text.push_str(&format!("*x_{v}^2"));
    }
    let nu = dga.parse(&nu_text)?;
    Ok(CorpusEntry {
        key: "graph".into(),
        k: None,
        graph: Some(graph.clone()),
        dga,
        top: "z".into(),
        nu,
    })
}

/// `B` for a graph dga together with the quotient by the differential ideal
/// generated by the dotted vertex generators `@x_v`, `@z_v`.
pub struct GraphQuotient {
    pub bm: Bm,
    pub ctx: QuotientContext,
}

impl GraphQuotient {
    pub fn new(pres: &ThreeStepPresentation, graph: &Graph, ordering: &Ordering) -> Result<Self> {
        let bm = build_bm(pres, ordering)?;
        let alg = bm.dga.algebra();
        let mut gens = Vec::new();
        for prefix in ["@x_", "@z_"] {
            for v in &graph.vertices {
                gens.push(alg.var(&format!("{prefix}{v}"))?);
            }
        }
        let ctx = QuotientContext::new(bm.dga.clone(), &gens, Some(&bm.weight))?;
        Ok(GraphQuotient { bm, ctx })
    }

    pub fn dga(&self) -> &Arc<SullivanDga> {
        &self.bm.dga
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientRecord {
    pub shift: i64,
    pub ideal_generators: Vec<String>,
    pub weight_positive: bool,
    pub weight_compatible: bool,
    pub psi_verified: bool,
    /// Non-exactness of `psi(nu)` in the quotient, when requested.
    pub direct: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphReport {
    pub input: String,
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    pub formal_dimension: u32,
    pub nu: String,
    pub nu_cocycle: bool,
    pub nu_exact: bool,
    pub core: CheckerReport,
    pub quotient: QuotientRecord,
    pub warnings: Vec<String>,
    pub verdict: Verdict,
}

/// Checks a graph dga: the criterion on the Arkowitz-Lupton core, then the
/// map into the quotient of `B` by the dotted vertex generators. The
/// expensive exactness test in the quotient runs only when `direct` is set.
pub fn run_graph_checker(entry: &CorpusEntry, input: &str, direct: bool) -> Result<GraphReport> {
    let graph = entry
        .graph
        .as_ref()
        .ok_or_else(|| Error::Parameter("not a graph entry".into()))?;
    let pres = entry.presentation(PresentationOptions::default())?;
    let core_entry = build_corpus("arkowitz-lupton-5.1", &CorpusParams::default())?;
    let core_pres = core_entry.presentation(PresentationOptions::default())?;
    let core = run_checker(&core_pres, input)?;
    let Splitting::TwoPieces(orderings) = split_top_differential(&pres) else {
        return Err(Error::Presentation(
            "the graph dga must have a two-piece top differential".into(),
        ));
    };
    let chosen = core.orderings.iter().position(|o| o.pass).unwrap_or(0);
    let ordering = &orderings[chosen];
    let q = GraphQuotient::new(&pres, graph, ordering)?;
    let psi_verified = q.bm.psi.verify_modulo(&q.ctx)?.ok;
    let direct_result = if direct {
        let image = q.bm.psi.apply(pres.nu());
        Some(!q.ctx.coboundary_in_quotient(&image)?)
    } else {
        None
    };
    let quotient = QuotientRecord {
        shift: ordering.shift(),
        ideal_generators: q.ctx.generators().iter().map(|g| q.dga().format(g)).collect(),
        weight_positive: q.bm.weight.is_positive(),
        weight_compatible: q.bm.weight.is_compatible(),
        psi_verified,
        direct: direct_result,
    };
    let mut warnings = core.warnings.clone();
    if direct_result.is_none() {
        warnings.push("non-exactness of psi(nu) in the quotient was not checked directly".into());
    }
    let refuted = core.verdict == Verdict::Refuted
        && quotient.weight_positive
        && quotient.weight_compatible
        && psi_verified
        && direct_result != Some(false);
    Ok(GraphReport {
        input: input.to_string(),
        vertices: graph.vertices.clone(),
        edges: graph.edges.clone(),
        formal_dimension: pres.formal_dimension(),
        nu: pres.full().format(pres.nu()),
        nu_cocycle: pres.full().is_cocycle(pres.nu()),
        // the presentation rejects exact representatives
        nu_exact: false,
        core,
        quotient,
        warnings,
        verdict: if refuted {
            Verdict::Refuted
        } else {
            Verdict::Inconclusive
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(key: &str, k: Option<u32>) -> CorpusEntry {
        build_corpus(key, &CorpusParams { k, graph: None }).unwrap()
    }

    #[test]
    fn al_definition() {
        let e = entry("arkowitz-lupton-5.1", None);
        assert_eq!(e.degrees(), vec![8, 10, 33, 35, 37, 119]);
        assert_eq!(e.formal_dimension(), 208);
        let dz = e.dga.generator_differential(5);
        assert_eq!(
            *dz,
            e.dga
                .parse("x1^6*y2*y3 - x1^5*x2*y1*y3 + x1^4*x2^2*y1*y2 + x1^15 + x2^12")
                .unwrap()
        );
        assert!(e.dga.check_d_squared().is_empty());
    }

    #[test]
    fn cmv_first_member() {
        let e = entry("cmv", Some(1));
        assert_eq!(e.degrees(), vec![18, 22, 75, 79, 83, 197]);
        let dz = e.dga.generator_differential(5);
        assert_eq!(dz.degree(), Some(198));
        assert_eq!(e.nu, e.dga.parse("x1^22").unwrap());
        assert!(build_corpus(
            "cmv",
            &CorpusParams {
                k: Some(0),
                graph: None
            }
        )
        .is_err());
        assert!(build_corpus("cmv", &CorpusParams::default()).is_err());
    }

    #[test]
    fn amann_expansion() {
        let e = entry("amann-3.8", None);
        assert_eq!(e.degrees(), vec![2, 2, 9, 11, 13, 35]);
        assert_eq!(*e.dga.generator_differential(2), e.dga.parse("x1^3*x2^2").unwrap());
        assert_eq!(e.formal_dimension(), 66);
        let m = entry("amann-massey", Some(0));
        assert_eq!(m.formal_dimension(), 231);
        assert!(m.dga.is_cocycle(&m.nu));
    }

    #[test]
    fn unknown_key() {
        assert!(matches!(
            build_corpus("nope", &CorpusParams::default()),
            Err(Error::UnknownCorpus(_))
        ));
        assert!(matches!(
            build_corpus(
                "cl-I.1",
                &CorpusParams {
                    k: Some(2),
                    graph: None
                }
            ),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn graph_validation() {
        assert!(Graph::new(&["a"], &[]).validate().is_err());
        assert!(Graph::new(&["a", "b"], &[]).validate().is_err());
        assert!(Graph::new(&["a", "b"], &[("a", "a")]).validate().is_err());
        assert!(Graph::new(&["a", "b"], &[("a", "b"), ("b", "a")]).validate().is_err());
        assert!(Graph::new(&["a", "b"], &[("a", "c")]).validate().is_err());
        assert!(Graph::new(&["a", "b"], &[("a", "b")]).validate().is_ok());
        let g = Graph::from_json(r#"{"vertices": ["a", "b"], "edges": [["a", "b"]]}"#).unwrap();
        assert_eq!(g, Graph::new(&["a", "b"], &[("a", "b")]));
    }

    #[test]
    fn path_and_triangle() {
        let path = build_graph_dga(&Graph::new(&["a", "b"], &[("a", "b")])).unwrap();
        assert_eq!(path.formal_dimension(), 368);
        let za = path.dga.algebra().index_of("z_a").unwrap();
        assert_eq!(
            *path.dga.generator_differential(za),
            path.dga.parse("x_a^3 + x_a*x_b*x2^4").unwrap()
        );
        let tri = build_graph_dga(&Graph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")])).unwrap();
        assert_eq!(tri.formal_dimension(), 448);
        for v in ["a", "b", "c"] {
            let i = tri.dga.algebra().index_of(&format!("z_{v}")).unwrap();
            assert_eq!(tri.dga.generator_differential(i).len(), 3);
        }
        assert!(tri.dga.check_d_squared().is_empty());
    }

    #[test]
    fn path_quotient() {
        let g = Graph::new(&["a", "b"], &[("a", "b")]);
        let entry = build_graph_dga(&g).unwrap();
        let pres = entry.presentation(PresentationOptions::default()).unwrap();
        let Splitting::TwoPieces(ords) = split_top_differential(&pres) else {
            panic!("two pieces expected")
        };
        let q = GraphQuotient::new(&pres, &g, &ords[0]).unwrap();
        let za = q.dga().parse("z_a").unwrap();
        let image = q.bm.psi.apply(&pres.full().var("z_a").unwrap());
        assert_eq!(q.ctx.normal_form(&image).unwrap(), za);
        assert!(q.bm.psi.verify_modulo(&q.ctx).unwrap().ok);
        assert!(q.bm.weight.is_positive());
    }
}
