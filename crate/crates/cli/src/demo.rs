//! Worked examples computed from the inputs bundled in `fixtures/`.

use std::io::Write;

use hooks_core::{
    dependence_graph, is_irreducible, psi_inverse, psi_trace, splice, CTuple, DependenceGraph,
    RootedTree, SetPartition, StageCase, Vertex,
};
use serde_json::{json, Value};

use crate::{CliError, CliResult, Format};

const TREE_S: &str = include_str!("../../../fixtures/tree_s.json");
const SPLICE_T: &str = include_str!("../../../fixtures/splice_t.json");
const WORKED_PI: &str = include_str!("../../../fixtures/worked_pi.json");
const WORKED_C: &str = include_str!("../../../fixtures/worked_c.json");
const IRREDUCIBLE_PI: &str = include_str!("../../../fixtures/irreducible_pi.json");
const IRREDUCIBLE_T1: &str = include_str!("../../../fixtures/irreducible_t1.json");
const IRREDUCIBLE_T2: &str = include_str!("../../../fixtures/irreducible_t2.json");

struct Section {
    name: &'static str,
    value: Value,
    text: Vec<String>,
}

fn parse<T: serde::de::DeserializeOwned>(s: &str) -> CliResult<T> {
    serde_json::from_str(s).map_err(|e| CliError::Domain(e.into()))
}

fn graph_text(g: &DependenceGraph) -> String {
    let edges: Vec<String> = g
        .edges
        .iter()
        .map(|(a, b)| format!("pi{a}->pi{b}"))
        .collect();
    format!("G_{}: {}", g.anchor, edges.join(", "))
}

fn decomposition(s: &RootedTree, v: Vertex) -> CliResult<Section> {
    let d = s.v_decomposition(v)?;
    let mut text = vec![
        format!("tree S = {s}"),
        format!("hook of {v}: {:?}", s.hook(v)?),
        format!("{v}-decomposition along {:?}:", d.chain),
    ];
    text.extend(
        d.chain
            .iter()
            .zip(&d.parts)
            .map(|(a, p)| format!("  part at {a}: {p}")),
    );
    Ok(Section {
        name: "decomposition",
        value: json!({"tree": s, "v": v, "decomposition": d}),
        text,
    })
}

fn splicing(t: &RootedTree, s: &RootedTree) -> CliResult<Section> {
    let (v1, v2) = (18, 14);
    let spliced = splice(t, v1, s, v2)?;
    Ok(Section {
        name: "splice",
        value: json!({"t1": t, "v1": v1, "t2": s, "v2": v2, "result": spliced}),
        text: vec![
            format!("T = {t}"),
            format!("splice(T, {v1}, S, {v2}) = {spliced}"),
        ],
    })
}

fn worked(pi: &SetPartition, c: &CTuple) -> CliResult<Section> {
    let stages = psi_trace(pi, c)?;
    let mut text = vec![format!("pi = {pi}, c = {c}")];
    for st in &stages {
        let case = match st.case {
            Some(StageCase::Internal) => " (internal)",
            Some(StageCase::External) => " (external)",
            None => "",
        };
        let comps: Vec<String> = st
            .forest
            .components
            .iter()
            .map(|k| format!("tau{} = {}", k.index, k.tree))
            .collect();
        text.push(format!(
            "stage {}{case}: {}; nu = {}",
            st.stage,
            comps.join(", "),
            st.forest.nu
        ));
    }
    let tree = &stages.last().expect("at least one stage").forest.components[0].tree;
    let back = psi_inverse(pi, tree)?;
    let graph = dependence_graph(tree, tree.max_vertex(), pi)?;
    text.push(format!("encoding the result gives back {back}"));
    text.push(graph_text(&graph));
    Ok(Section {
        name: "bijection",
        value: json!({"pi": pi, "c": c, "stages": stages, "code": back, "graph": graph}),
        text,
    })
}

fn irreducible(pi: &SetPartition, t1: &RootedTree, t2: &RootedTree) -> CliResult<Section> {
    let t = splice(t1, 10, t2, 5)?;
    let mut text = vec![
        format!("pi = {pi}"),
        format!("T = splice(T1, 10, T2, 5) = {t}"),
    ];
    let mut graphs = Vec::new();
    for (name, tree, v) in [("T1", t1, 10), ("T2", t2, 11), ("T", &t, 11), ("T", &t, 10)] {
        let restricted = pi.restrict(&tree.vertex_set())?;
        let g = dependence_graph(tree, v, pi)?;
        let irr = is_irreducible(tree, &restricted)?;
        text.push(format!(
            "{name} at {v}: {} ({})",
            graph_text(&g),
            if g.is_connected() {
                "connected"
            } else {
                "disconnected"
            }
        ));
        if v == tree.max_vertex() {
            text.push(format!(
                "  {name} is {}",
                if irr { "irreducible" } else { "reducible" }
            ));
        }
        graphs.push(json!({"tree": name, "graph": g, "irreducible": irr}));
    }
    Ok(Section {
        name: "irreducible",
        value: json!({"pi": pi, "t": t, "graphs": graphs}),
        text,
    })
}

pub fn run(format: Format, out: &mut dyn Write) -> CliResult {
    let s: RootedTree = parse(TREE_S)?;
    let sections = [
        decomposition(&s, 14)?,
        splicing(&parse(SPLICE_T)?, &s)?,
        worked(&parse(WORKED_PI)?, &parse(WORKED_C)?)?,
        irreducible(
            &parse(IRREDUCIBLE_PI)?,
            &parse(IRREDUCIBLE_T1)?,
            &parse(IRREDUCIBLE_T2)?,
        )?,
    ];
    for (i, sec) in sections.iter().enumerate() {
        match format {
            Format::Json => {
                writeln!(out, "{}", json!({"name": sec.name, "value": sec.value}))?;
            }
            Format::Text => {
                if i > 0 {
                    writeln!(out)?;
                }
                writeln!(out, "== {}", sec.name)?;
                for line in &sec.text {
                    writeln!(out, "{line}")?;
                }
            }
        }
    }
    Ok(())
}
