use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Deserialize;
use serde_json::{json, Value};

use edge_ends::ends::{
    lovasz_cherkassky_ends, menger_ends, reduced_multigraph, verify_family, EndSelector, ExtendedPath, LambdaOptions,
    LcOptions, ReducedNode, SeparatorCertificate, Terminal,
};
use edge_ends::io::{graph_from_json, graph_to_dot, graph_to_json, DotStyle};
use edge_ends::menger::{max_edge_disjoint_paths, verify_lies_on};
use edge_ends::presentation::{truncate, EdgeCoord, EndStructure, Presentation, VertexCoord};
use edge_ends::suites::{run_suite, Suite, SuiteConfig};
use edge_ends::tpath::check_parity_condition;
use edge_ends::{pack_tpaths, Multigraph, Path, VertexSet};

use crate::{Command, Failure, Format, Outcome, RunConfig, SCHEMA};

pub fn run(cfg: &RunConfig) -> Result<Outcome, Failure> {
    match &cfg.command {
        Command::Analyze { file } => analyze(cfg, file),
        Command::Truncate { file, depth } => truncate_cmd(cfg, file, *depth),
        Command::Menger { graph, a, b } => menger(cfg, graph, a, b),
        Command::Pack { graph, terminals } => pack(cfg, graph, terminals),
        Command::MengerEnds { file, a, b } => menger_ends_cmd(cfg, file, a, b),
        Command::LcEnds { file, terminals } => lc_ends(cfg, file, terminals),
        Command::Verify { file, result } => verify(cfg, file, result, cfg.nmax.unwrap_or(VERIFY_DEPTH)),
        Command::Oracle { suite, count, max_v, max_e } => oracle(cfg, suite, *count, *max_v, *max_e),
    }
}

fn read(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

fn load_presentation(path: &str) -> Result<(Presentation, EndStructure), Failure> {
    let p = Presentation::from_json(&read(path)?)?;
    let ends = EndStructure::new(&p)?;
    Ok((p, ends))
}

fn only(cfg: &RunConfig, allowed: &[Format], command: &str) -> Result<(), Failure> {
    if allowed.contains(&cfg.format) {
        Ok(())
    } else {
        Err(Failure::usage(format!("{command} does not support --format {:?}", cfg.format).to_lowercase()))
    }
}

fn report(command: &str, mut body: Value) -> String {
    let obj = body.as_object_mut().expect("report is an object");
    let mut out = serde_json::Map::new();
    out.insert("schema".into(), json!(SCHEMA));
    out.insert("command".into(), json!(command));
    out.append(obj);
    serde_json::to_string_pretty(&Value::Object(out)).expect("json") + "\n"
}

fn ok(body: String) -> Result<Outcome, Failure> {
    Ok(Outcome { body, ok: true })
}

fn split(list: &str) -> impl Iterator<Item = &str> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn vertex_set(g: &Multigraph, list: &str) -> Result<VertexSet, Failure> {
    split(list)
        .map(|l| g.vertex_by_label(l).ok_or_else(|| Failure::usage(format!("unknown vertex {l:?}"))))
        .collect()
}

fn labels(g: &Multigraph, vs: impl IntoIterator<Item = edge_ends::VertexId>) -> Vec<String> {
    vs.into_iter().map(|v| g.label(v)).collect()
}

fn path_json(g: &Multigraph, p: &Path) -> Value {
    json!({ "vertices": labels(g, p.vertices.iter().copied()), "edges": p.edges })
}

fn coord_label(p: &Presentation, c: VertexCoord) -> String {
    match c {
        VertexCoord::Core { id } => p.core.label(id),
        VertexCoord::Arm { arm, layer, pat } => format!("{}:{}@{}", p.arms[arm].name, p.arms[arm].vertices[pat], layer),
    }
}

fn terminal_label(p: &Presentation, t: Terminal) -> String {
    match t {
        Terminal::Core(v) => p.core.label(v),
        Terminal::Class(c) => format!("class:{c}"),
    }
}

fn analyze(cfg: &RunConfig, file: &str) -> Result<Outcome, Failure> {
    only(cfg, &[Format::Json, Format::Text], "analyze")?;
    let (p, ends) = load_presentation(file)?;
    let strand_json = |s: &edge_ends::presentation::Strand| {
        let arm = &p.arms[s.id.arm];
        json!({
            "arm": arm.name,
            "component": s.id.component,
            "residue": s.id.residue,
            "pattern": s.pattern.iter().map(|&i| arm.vertices[i].clone()).collect::<Vec<_>>(),
            "period": s.period,
            "class": ends.class_of[&s.id],
        })
    };
    let classes: Vec<Value> = ends
        .classes
        .iter()
        .map(|c| {
            json!({
                "id": c.id,
                "strands": c.strands.iter().map(|s| format!("{}:{}:{}", p.arms[s.arm].name, s.component, s.residue)).collect::<Vec<_>>(),
                "dominators": labels(&p.core, c.dominators.iter().copied()),
            })
        })
        .collect();
    if cfg.format == Format::Text {
        let mut out = String::new();
        let _ = writeln!(out, "{} strands, {} edge-end classes", ends.strands.len(), ends.classes.len());
        for c in &classes {
            let _ = writeln!(out, "class {}: strands {} dominators {}", c["id"], c["strands"], c["dominators"]);
        }
        return ok(out);
    }
    ok(report(
        "analyze",
        json!({
            "strands": ends.strands.iter().map(strand_json).collect::<Vec<_>>(),
            "classes": classes,
            "pocket_depth": ends.dip,
        }),
    ))
}

fn truncate_cmd(cfg: &RunConfig, file: &str, depth: u32) -> Result<Outcome, Failure> {
    let (p, _) = load_presentation(file)?;
    let t = truncate(&p, depth);
    match cfg.format {
        Format::Dot => {
            let mut style = DotStyle::default();
            for (v, c) in t.vertex_coords() {
                if let VertexCoord::Core { .. } = c {
                    style.vertex_attrs.insert(v, "shape=box".into());
                }
            }
            for (e, c) in t.edge_coords() {
                if let EdgeCoord::Dom { .. } = c {
                    style.edge_attrs.insert(e, "style=dashed".into());
                }
            }
            ok(graph_to_dot(&t.graph, &style))
        }
        Format::Text => ok(format!("depth {depth}: {} vertices, {} edges\n", t.graph.num_vertices(), t.graph.num_edges())),
        Format::Json => ok(report("truncate", json!({ "depth": depth, "graph": graph_to_json(&t.graph) }))),
    }
}

fn menger(cfg: &RunConfig, graph: &str, a: &str, b: &str) -> Result<Outcome, Failure> {
    only(cfg, &[Format::Json, Format::Text], "menger")?;
    let g = graph_from_json(&read(graph)?)?;
    let (a, b) = (vertex_set(&g, a)?, vertex_set(&g, b)?);
    let r = max_edge_disjoint_paths(&g, &a, &b)?;
    if cfg.format == Format::Text {
        let cut: Vec<String> = r.cut.edges.iter().map(|e| e.to_string()).collect();
        return ok(format!("{} edge-disjoint paths, cut {{{}}}\n", r.family.len(), cut.join(", ")));
    }
    ok(report(
        "menger",
        json!({
            "value": r.family.len(),
            "paths": r.family.paths.iter().map(|p| path_json(&g, p)).collect::<Vec<_>>(),
            "cut": { "edges": r.cut.edges, "side": labels(&g, r.cut.side.iter().copied()) },
            "lies_on": r.lies_on,
            "verified": verify_lies_on(&r.family, &r.cut),
        }),
    ))
}

fn pack(cfg: &RunConfig, graph: &str, terminals: &str) -> Result<Outcome, Failure> {
    let g = graph_from_json(&read(graph)?)?;
    let t = vertex_set(&g, terminals)?;
    let parity = check_parity_condition(&g, &t, cfg.bound as usize)?;
    if let Some(side) = parity.violating {
        let cut = g.delta(&side)?.edges.len();
        return Err(Failure {
            code: 1,
            kind: "parity_violation",
            message: format!("parity condition fails: |delta(X)| = {cut} is odd"),
            detail: json!({ "side": labels(&g, side), "cut_size": cut }),
        });
    }
    let r = pack_tpaths(&g, &t)?;
    match cfg.format {
        Format::Dot => {
            let mut style = DotStyle::default();
            for &v in &t {
                style.vertex_attrs.insert(v, "shape=doublecircle".into());
            }
            for (i, path) in r.family.paths.iter().enumerate() {
                for &e in &path.edges {
                    style.edge_attrs.insert(e, format!("color=\"/set19/{}\", penwidth=2, label=\"P{i}\"", i % 9 + 1));
                }
            }
            ok(graph_to_dot(&g, &style))
        }
        Format::Text => ok(format!("{} edge-disjoint T-paths\n", r.family.len())),
        Format::Json => ok(report(
            "pack",
            json!({
                "value": r.family.len(),
                "paths": r.family.paths.iter().map(|p| path_json(&g, p)).collect::<Vec<_>>(),
                "cuts": r.per_terminal_cuts.iter().map(|(&v, c)| json!({
                    "terminal": g.label(v),
                    "lambda": c.edges.len(),
                    "edges": c.edges,
                    "side": labels(&g, c.side.iter().copied()),
                })).collect::<Vec<_>>(),
            }),
        )),
    }
}

fn lambda_options(cfg: &RunConfig) -> LambdaOptions {
    let mut opts = LambdaOptions::default();
    if let Some(n) = cfg.nmax {
        opts.n_max = n;
    }
    opts
}

fn selectors(p: &Presentation, list: &str) -> Result<Vec<EndSelector>, Failure> {
    split(list).map(|s| EndSelector::parse(p, s).map_err(Failure::from)).collect()
}

fn menger_ends_cmd(cfg: &RunConfig, file: &str, a: &str, b: &str) -> Result<Outcome, Failure> {
    only(cfg, &[Format::Json, Format::Text], "menger-ends")?;
    let (p, ends) = load_presentation(file)?;
    let (a, b) = (selectors(&p, a)?, selectors(&p, b)?);
    let r = menger_ends(&p, &ends, &a, &b, &lambda_options(cfg))?;
    if cfg.format == Format::Text {
        return ok(format!("lambda {}, stabilized at depth {}\n", r.family.len(), r.lambda.depth));
    }
    ok(report(
        "menger-ends",
        json!({
            "value": r.family.len(),
            "depth": r.lambda.depth,
            "history": r.lambda.history,
            "family": r.family,
            "certificates": [r.certificate],
        }),
    ))
}

fn lc_ends(cfg: &RunConfig, file: &str, terminals: &str) -> Result<Outcome, Failure> {
    let (p, ends) = load_presentation(file)?;
    let t: Vec<Terminal> = split(terminals).map(|s| Terminal::parse(&p, &ends, s)).collect::<Result<_, _>>()?;
    let opts = LcOptions { lambda: lambda_options(cfg), ..LcOptions::default() };
    if cfg.format == Format::Dot {
        return ok(reduced_dot(&p, &ends, &t, &opts.lambda)?);
    }
    let r = lovasz_cherkassky_ends(&p, &ends, &t, &opts)?;
    if cfg.format == Format::Text {
        let lambdas: Vec<String> = r.cuts.iter().map(|c| format!("{}={}", terminal_label(&p, c.terminal), c.lambda)).collect();
        return ok(format!("{} edge-disjoint T-paths; lambda {}\n", r.family.len(), lambdas.join(" ")));
    }
    ok(report(
        "lc-ends",
        json!({
            "value": r.family.len(),
            "depth": r.depth,
            "cap": r.cap,
            "cuts": r.cuts.iter().map(|c| json!({ "terminal": c.terminal, "lambda": c.lambda })).collect::<Vec<_>>(),
            "family": r.family,
            "certificates": r.certificates(),
        }),
    ))
}

/// The reduced graph with contracted classes and infinite bundles.
fn reduced_dot(p: &Presentation, ends: &EndStructure, t: &[Terminal], opts: &LambdaOptions) -> Result<String, Failure> {
    let r = reduced_multigraph(p, ends, t, opts)?;
    let mut g = r.graph.clone();
    let mut style = DotStyle::default();
    for (i, node) in r.nodes.iter().enumerate() {
        let v = edge_ends::VertexId(i as u32);
        match *node {
            ReducedNode::Class { id } => {
                g.set_label(v, format!("class:{id}"));
                style.vertex_attrs.insert(v, "shape=hexagon".into());
            }
            ReducedNode::Vertex { at } => g.set_label(v, coord_label(p, at)),
        }
    }
    for &v in &r.terminal_set() {
        let shape = style.vertex_attrs.get(&v).cloned().unwrap_or_default();
        style.vertex_attrs.insert(v, if shape.is_empty() { "peripheries=2".into() } else { format!("{shape}, peripheries=2") });
    }
    let mut dot = graph_to_dot(&g, &style);
    dot.truncate(dot.len() - 2);
    let mut bundles = BTreeMap::new();
    for b in &r.bundles {
        let d = r.node_id(ReducedNode::Vertex { at: VertexCoord::Core { id: b.dominator } }).expect("dominator");
        let c = r.node_id(ReducedNode::Class { id: b.class }).expect("class");
        bundles.insert((d.0, c.0), ());
    }
    for (d, c) in bundles.keys() {
        let _ = writeln!(dot, "  {d} -- {c} [label=\"inf\", style=bold, penwidth=3];");
    }
    dot.push_str("}\n");
    Ok(dot)
}

/// Deepest truncation `verify` checks unless `--nmax` says otherwise.
const VERIFY_DEPTH: u32 = 40;

#[derive(Deserialize)]
struct ResultFile {
    family: Vec<ExtendedPath>,
    certificates: Vec<SeparatorCertificate>,
}

fn verify(cfg: &RunConfig, file: &str, result: &str, n_max: u32) -> Result<Outcome, Failure> {
    only(cfg, &[Format::Json, Format::Text], "verify")?;
    let (p, ends) = load_presentation(file)?;
    let res: ResultFile = serde_json::from_str(&read(result)?).map_err(|e| edge_ends::Error::Parse(format!("{result}: {e}")))?;
    let rep = verify_family(&p, &ends, &res.family, &res.certificates, n_max)?;
    let body = if cfg.format == Format::Text {
        let mut out = format!("{}\n", if rep.ok { "ok" } else { "FAILED" });
        for f in &rep.failures {
            let _ = writeln!(out, "  {f}");
        }
        out
    } else {
        report("verify", serde_json::to_value(&rep).expect("json"))
    };
    Ok(Outcome { body, ok: rep.ok })
}

fn oracle(cfg: &RunConfig, suite: &str, count: Option<usize>, max_v: Option<u32>, max_e: Option<u64>) -> Result<Outcome, Failure> {
    only(cfg, &[Format::Json, Format::Text], "oracle")?;
    let suite: Suite = suite.parse()?;
    let mut sc = SuiteConfig::defaults(suite, cfg.seed);
    if let Some(c) = count {
        sc.count = c;
    }
    if let Some(v) = max_v {
        sc.max_v = v;
    }
    if let Some(e) = max_e {
        sc.max_e = e as usize;
    }
    let r = run_suite(suite, &sc);
    let body = if cfg.format == Format::Text {
        let mut out = format!(
            "{} seed {}: {} instances, {} checks, {} skipped, {} failures\n",
            r.suite, r.seed, r.instances, r.checks, r.skipped, r.failures.len()
        );
        for w in &r.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        for f in &r.failures {
            let _ = writeln!(out, "#{}: {}\n  {}", f.index, f.message, f.instance);
        }
        out
    } else {
        let mut v = serde_json::to_value(&r).expect("json");
        v["passed"] = json!(r.passed());
        report("oracle", v)
    };
    Ok(Outcome { body, ok: r.passed() })
}
