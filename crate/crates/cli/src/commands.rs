use std::fmt;
use std::path::Path;

use serde_json::{json, Value};
use turansep_core::combin::binomial;
use turansep_core::constructions::{
    augment_matching, bipartite_g, blowup, iterated_blowup_s6, six_part_h, BlowupSpec, Matching5, SixPartParams,
};
use turansep_core::criteria::{
    check_condition1_with, check_condition2, is_counterexample, separate_with, Condition2, Verdict,
};
use turansep_core::densopt::{exact_count_closed_form, h_density_poly, maximize_constrained, reconcile, reference_bounds};
use turansep_core::embed::{contains, find_dense_subset, Embedding};
use turansep_core::exact::{random_maximal_free, turan_number_with, SearchOptions};
use turansep_core::partition_lab::expectation_check;
use turansep_core::{Error, FamilySpec, Hypergraph, Schedule, Vertex};

use crate::report::{Report, Status};
use crate::{Cli, Command, Construct};

pub struct Output {
    pub report: Report,
    /// Printed after the report in text mode.
    pub graph: Option<Hypergraph>,
}

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Core(Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Core(Error::Incomplete { .. }) => 3,
            Failure::Core(Error::Consistency(_)) => 1,
            Failure::Core(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => f.write_str(m),
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<Output, Failure>;

struct Loaded {
    graph: Hypergraph,
    label: String,
}

fn load(arg: &str) -> Result<Loaded, Failure> {
    match arg.parse::<FamilySpec>() {
        Ok(spec) => Ok(Loaded {
            graph: spec.build()?,
            label: spec.to_string(),
        }),
        Err(spec_err) => {
            if !Path::new(arg).exists() {
                return Err(Failure::Input(format!(
                    "'{arg}' is neither a family ({spec_err}) nor a readable file"
                )));
            }
            let text = std::fs::read_to_string(arg).map_err(|e| Failure::Input(format!("cannot read {arg}: {e}")))?;
            let graph = Hypergraph::parse(&text).map_err(|e| Failure::Input(format!("{arg}: {e}")))?;
            Ok(Loaded {
                graph,
                label: format!("file:{arg}"),
            })
        }
    }
}

fn describe(l: &Loaded) -> Value {
    json!({
        "source": l.label,
        "k": l.graph.uniformity(),
        "n": l.graph.vertex_count(),
        "edges": l.graph.edge_count(),
    })
}

fn status(holds: bool) -> Status {
    if holds {
        Status::Ok
    } else {
        Status::Violated
    }
}

fn consistency(msg: impl Into<String>) -> Failure {
    Failure::Core(Error::Consistency(msg.into()))
}

fn checked_embedding(host: &Hypergraph, pattern: &Hypergraph, emb: Embedding) -> Result<Embedding, Failure> {
    if emb.validate(host, pattern) {
        Ok(emb)
    } else {
        Err(consistency("reported embedding does not validate"))
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let opts = SearchOptions {
        budget: cli.budget,
        schedule: Schedule::Parallel,
    };
    match &cli.command {
        Command::Build { family } => {
            let l = load(family)?;
            let outcome = if cli.json { json!({ "graph": l.graph }) } else { json!({}) };
            let report = Report::new(format!("build {family}"), Status::Ok, json!({ "family": describe(&l) }), outcome);
            Ok(Output {
                report,
                graph: (!cli.json).then_some(l.graph),
            })
        }
        Command::Contains { host, pattern } => {
            let (h, f) = (load(host)?, load(pattern)?);
            let found = contains(&h.graph, &f.graph)?
                .map(|e| checked_embedding(&h.graph, &f.graph, e))
                .transpose()?;
            let report = Report::new(
                format!("contains {host} {pattern}"),
                status(found.is_some()),
                json!({ "host": describe(&h), "pattern": describe(&f) }),
                json!({ "contains": found.is_some(), "embedding": found.map(|e| e.map) }),
            );
            Ok(Output { report, graph: None })
        }
        Command::FreeCheck { host, pattern } => free_check(host, pattern),
        Command::Turan { n, pattern } => {
            let f = load(pattern)?;
            let r = turan_number_with(*n, &f.graph, opts)?;
            if r.witness.edge_count() as u64 != r.value || contains(&r.witness, &f.graph)?.is_some() {
                return Err(consistency("Turán witness does not validate"));
            }
            let report = Report::new(
                format!("turan {n} {pattern}"),
                if r.exhausted { Status::Ok } else { Status::Incomplete },
                json!({ "n": n, "pattern": describe(&f), "budget": cli.budget }),
                json!({
                    "value": r.value,
                    "exact": r.exhausted,
                    "meaning": if r.exhausted { "ex(n, F)" } else { "lower bound on ex(n, F)" },
                    "nodes_explored": r.nodes_explored,
                    "witness": r.witness,
                }),
            );
            Ok(Output { report, graph: None })
        }
        Command::Condition1 { host, sub } => {
            let (h, s) = (load(host)?, load(sub)?);
            let c = check_condition1_with(&h.graph, &s.graph, opts)?;
            let st = match c.holds {
                Some(b) => status(b),
                None => Status::Incomplete,
            };
            let report = Report::new(
                format!("condition1 {host} {sub}"),
                st,
                json!({ "f": describe(&h), "f_prime": describe(&s), "budget": cli.budget }),
                serde_json::to_value(&c).expect("serializable"),
            );
            Ok(Output { report, graph: None })
        }
        Command::Condition2 { host, sub } => {
            let (h, s) = (load(host)?, load(sub)?);
            let c = check_condition2(&h.graph, &s.graph)?;
            validate_condition2(&h.graph, &s.graph, &c)?;
            let report = Report::new(
                format!("condition2 {host} {sub}"),
                status(c.holds),
                json!({ "f": describe(&h), "f_prime": describe(&s) }),
                serde_json::to_value(&c).expect("serializable"),
            );
            Ok(Output { report, graph: None })
        }
        Command::Separate { host, sub } => {
            let (h, s) = (load(host)?, load(sub)?);
            let r = separate_with(&h.graph, &s.graph, opts)?;
            validate_condition2(&h.graph, &s.graph, &r.condition2)?;
            let verdict = match r.verdict {
                Verdict::Separated => format!(
                    "separated-via-condition-{}",
                    r.via.iter().map(u8::to_string).collect::<Vec<_>>().join("-and-")
                ),
                Verdict::NotEstablished => "not-established".to_string(),
            };
            let st = match (r.verdict, r.condition1.holds) {
                (Verdict::Separated, _) => Status::Ok,
                (Verdict::NotEstablished, None) => Status::Incomplete,
                (Verdict::NotEstablished, Some(_)) => Status::Violated,
            };
            let report = Report::new(
                format!("separate {host} {sub}"),
                st,
                json!({ "f": describe(&h), "f_prime": describe(&s), "budget": cli.budget }),
                json!({
                    "verdict": verdict,
                    "via": r.via,
                    "condition1": r.condition1,
                    "condition2": r.condition2,
                }),
            );
            Ok(Output { report, graph: None })
        }
        Command::Construct { what } => construct(cli, what),
        Command::Densopt => {
            let poly = h_density_poly();
            let opt = maximize_constrained(&poly);
            let bounds = reference_bounds();
            let margin = opt.value - bounds.chung_lu.to_f64();
            let report = Report::new(
                "densopt".into(),
                status(opt.golden_section.agrees),
                json!({ "constraint": "4x + 2y = 1, x, y >= 0" }),
                json!({
                    "polynomial": poly,
                    "optimum": opt,
                    "reference_bounds": bounds.table(),
                    "margin_over_chung_lu": format!("{margin:.15}"),
                }),
            );
            Ok(Output { report, graph: None })
        }
        Command::Crossing { host, t0, trials } => {
            let h = load(host)?;
            let r = expectation_check(&h.graph, *t0, *trials, cli.seed)?;
            let exact = *r.exact_expectation.numer() as f64 / *r.exact_expectation.denom() as f64;
            let within = match r.z_score {
                Some(z) => z.abs() <= 3.0,
                None => r.empirical_mean == exact,
            };
            let report = Report::new(
                format!("crossing {host} --t0 {t0} --trials {trials}"),
                status(within),
                json!({ "host": describe(&h), "t0": t0, "trials": trials, "seed": cli.seed }),
                json!({ "report": r, "within_three_standard_errors": within }),
            );
            Ok(Output { report, graph: None })
        }
    }
}

fn validate_condition2(host: &Hypergraph, sub: &Hypergraph, c: &Condition2) -> Result<(), Failure> {
    if let Some(parts) = &c.counterexample {
        if !is_counterexample(host, sub, parts)? {
            return Err(consistency("reported counterexample partition does not validate"));
        }
    }
    Ok(())
}

// Complete and complete-minus patterns reduce to an edge-count threshold on
// vertex subsets of the pattern's size.
fn threshold_for(pattern: &Hypergraph) -> Option<usize> {
    let (l, k) = (pattern.vertex_count(), pattern.uniformity());
    let all = binomial(l as u64, k as u64) as usize;
    let e = pattern.edge_count();
    if l > k && (e == all || e + 1 == all) {
        Some(e - 1)
    } else {
        None
    }
}

fn free_check(host: &str, pattern: &str) -> Outcome {
    let (h, f) = (load(host)?, load(pattern)?);
    if h.graph.uniformity() != f.graph.uniformity() {
        return Err(Failure::Input("host and pattern have different uniformity".into()));
    }
    let (method, found) = match threshold_for(&f.graph) {
        Some(max) if f.graph.vertex_count() <= h.graph.vertex_count() => {
            let r = f.graph.vertex_count();
            let found = match find_dense_subset(&h.graph, r, max, Schedule::Parallel)? {
                None => None,
                Some(set) => {
                    let local = contains(&h.graph.induced(&set)?, &f.graph)?
                        .ok_or_else(|| consistency("dense subset without a copy"))?;
                    let map: Vec<Vertex> = local.map.iter().map(|&v| set[v as usize]).collect();
                    Some(Embedding { map })
                }
            };
            ("threshold-scan", found)
        }
        _ => ("backtracking", contains(&h.graph, &f.graph)?),
    };
    let found = found.map(|e| checked_embedding(&h.graph, &f.graph, e)).transpose()?;
    let report = Report::new(
        format!("free-check {host} {pattern}"),
        status(found.is_none()),
        json!({ "host": describe(&h), "pattern": describe(&f) }),
        json!({ "free": found.is_none(), "method": method, "embedding": found.map(|e| e.map) }),
    );
    Ok(Output { report, graph: None })
}

fn parse_blocks(s: &str) -> Result<Vec<[Vertex; 5]>, Failure> {
    s.split(';')
        .filter(|b| !b.trim().is_empty())
        .map(|b| {
            let v: Vec<Vertex> = b
                .split(',')
                .map(|x| x.trim().parse::<Vertex>())
                .collect::<Result<_, _>>()
                .map_err(|e| Failure::Input(format!("bad block '{b}': {e}")))?;
            <[Vertex; 5]>::try_from(v).map_err(|_| Failure::Input(format!("block '{b}' must have 5 vertices")))
        })
        .collect()
}

fn construct(cli: &Cli, what: &Construct) -> Outcome {
    let (command, inputs, outcome, graph) = match what {
        Construct::S6star { n } => {
            let g = iterated_blowup_s6(*n);
            (format!("s6star {n}"), json!({ "n": n }), json!({}), g)
        }
        Construct::BipartiteG { n } => {
            let g = bipartite_g(*n)?;
            (format!("bipartite-g {n}"), json!({ "n": n }), json!({}), g)
        }
        Construct::SixPart { sizes } => {
            let arr: [usize; 6] = sizes
                .as_slice()
                .try_into()
                .map_err(|_| Failure::Input("six-part needs exactly six sizes".into()))?;
            let params = SixPartParams::new(arr)?;
            let built = six_part_h(params)?;
            let reconciled = reconcile(&built)?;
            let args = sizes.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            (
                format!("six-part {args}"),
                json!({ "sizes": sizes }),
                json!({
                    "layers": built.layers,
                    "bookkeeping_count": exact_count_closed_form(&params),
                    "reconciled_edges": reconciled,
                }),
                built.graph,
            )
        }
        Construct::Blowup { base, sizes } => {
            let b = load(base)?;
            let g = blowup(&BlowupSpec::new(b.graph.clone(), sizes.clone())?)?;
            let args = sizes.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            (format!("blowup {base} {args}"), json!({ "base": describe(&b), "sizes": sizes }), json!({}), g)
        }
        Construct::Augment { host, blocks } => {
            let h = load(host)?;
            let matching = blocks
                .as_deref()
                .map(|s| parse_blocks(s).and_then(|b| Ok(Matching5::new(h.graph.vertex_count(), b)?)))
                .transpose()?;
            let g = augment_matching(&h.graph, matching.as_ref())?;
            let added = g.edge_count() - h.graph.edge_count();
            let mut command = format!("augment {host}");
            if let Some(b) = blocks {
                command += &format!(" --blocks {b}");
            }
            (command, json!({ "host": describe(&h) }), json!({ "added_edges": added }), g)
        }
        Construct::MaximalFree { n, pattern } => {
            let f = load(pattern)?;
            let g = random_maximal_free(*n, &f.graph, cli.seed)?;
            (
                format!("maximal-free {n} {pattern}"),
                json!({ "n": n, "pattern": describe(&f), "seed": cli.seed }),
                json!({}),
                g,
            )
        }
    };
    let mut outcome = outcome;
    let density = if graph.vertex_count() >= graph.uniformity() {
        Some(graph.density()?.to_string())
    } else {
        None
    };
    let summary = json!({
        "k": graph.uniformity(),
        "n": graph.vertex_count(),
        "edges": graph.edge_count(),
        "density": density,
    });
    outcome
        .as_object_mut()
        .expect("object payload")
        .insert("graph_summary".into(), summary);
    if cli.json {
        outcome
            .as_object_mut()
            .expect("object payload")
            .insert("graph".into(), serde_json::to_value(&graph).expect("serializable"));
    }
    let report = Report::new(format!("construct {command}"), Status::Ok, inputs, outcome);
    Ok(Output {
        report,
        graph: (!cli.json).then_some(graph),
    })
}
