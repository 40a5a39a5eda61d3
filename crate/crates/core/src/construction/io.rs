//! Instance serialization: an edge-list file for H' plus a layout sidecar.
//!
//! `<stem>.edges` holds the full pre-prune graph in the core edge-list
//! format. `<stem>.layout` is a line-oriented key-value sidecar carrying
//! the construction parameters, the cluster assignment, the base-edge to
//! embedded-edge map, and the pruned set. Writers are canonical, so a
//! read/write round trip reproduces both files byte for byte.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use super::{CycleLayout, EmbeddedInstance};
use crate::error::{Error, Result};
use crate::girth::weighted_girth;
use crate::graph::WeightedGraph;
use crate::io::{parse_edge_list, write_edge_list};
use crate::weight::w_int;

const HEADER: &str = "spanlab-layout v1";

/// Paths for an instance stem.
fn files(stem: &Path) -> (PathBuf, PathBuf) {
    let mut edges = stem.as_os_str().to_owned();
    edges.push(".edges");
    let mut layout = stem.as_os_str().to_owned();
    layout.push(".layout");
    (PathBuf::from(edges), PathBuf::from(layout))
}

/// Renders the layout sidecar text.
pub fn layout_sidecar_text(inst: &EmbeddedInstance) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    out.push_str(&format!("k {}\n", inst.layout.k()));
    out.push_str(&format!("inv_epsilon {}\n", inst.layout.inv_epsilon()));
    out.push_str(&format!("seed {}\n", inst.seed));
    out.push_str(&format!("base_spec {}\n", inst.base_spec));
    let assign: Vec<String> = inst
        .layout
        .assignment()
        .iter()
        .map(|c| c.to_string())
        .collect();
    out.push_str(&format!("assignment {}\n", assign.join(" ")));
    out.push_str(&format!("base_edges {}\n", inst.base.edge_count()));
    for (b, e) in inst.base.edges().iter().enumerate() {
        out.push_str(&format!("e {} {} {}\n", e.u, e.v, inst.embedded[b]));
    }
    out.push_str(&format!("pruned {}\n", inst.pruned.len()));
    for id in &inst.pruned {
        out.push_str(&format!("p {id}\n"));
    }
    match &inst.certificate {
        Some(cert) => out.push_str(&format!("certificate {}\n", cert.value)),
        None => out.push_str("certificate none\n"),
    }
    out
}

/// Writes `<stem>.edges` and `<stem>.layout`.
pub fn write_instance(inst: &EmbeddedInstance, stem: &Path) -> Result<()> {
    let (edges_path, layout_path) = files(stem);
    std::fs::write(&edges_path, write_edge_list(&inst.graph))?;
    std::fs::write(&layout_path, layout_sidecar_text(inst))?;
    Ok(())
}

/// Reads an instance back from `<stem>.edges` + `<stem>.layout`,
/// revalidating every structural invariant. The stored certificate line is
/// informational only; verification recomputes the girth from scratch.
pub fn read_instance(stem: &Path) -> Result<EmbeddedInstance> {
    let (edges_path, layout_path) = files(stem);
    let edges_text = std::fs::read_to_string(&edges_path)?;
    let layout_text = std::fs::read_to_string(&layout_path)?;
    parse_instance(&edges_text, &layout_text)
}

struct Cursor<'a> {
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Cursor<'a> {
    fn next_line(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.lines.next().ok_or_else(|| Error::Parse {
            line: 0,
            message: format!("unexpected end of layout, wanted {what}"),
        })
    }

    fn take_kv(&mut self, key: &str) -> Result<String> {
        let (ln, line) = self.next_line(key)?;
        let (k, v) = line.split_once(' ').ok_or_else(|| Error::Parse {
            line: ln + 1,
            message: format!("expected `{key} <value>`"),
        })?;
        if k != key {
            return Err(Error::Parse {
                line: ln + 1,
                message: format!("expected key {key}, found {k}"),
            });
        }
        Ok(v.to_string())
    }

    fn take_parsed<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        self.take_kv(key)?.parse().map_err(|_| Error::Parse {
            line: 0,
            message: format!("bad value for {key}"),
        })
    }
}

/// Parses instance text (see [`read_instance`]).
pub fn parse_instance(edges_text: &str, layout_text: &str) -> Result<EmbeddedInstance> {
    let graph = parse_edge_list(edges_text, true)?;
    let mut cur = Cursor {
        lines: layout_text.lines().enumerate(),
    };

    let (ln, header) = cur.next_line("header")?;
    if header != HEADER {
        return Err(Error::Parse {
            line: ln + 1,
            message: format!("expected header {HEADER:?}"),
        });
    }
    let k: usize = cur.take_parsed("k")?;
    let r: i64 = cur.take_parsed("inv_epsilon")?;
    let seed: u64 = cur.take_parsed("seed")?;
    let base_spec = cur.take_kv("base_spec")?;
    let assignment: Vec<usize> = cur
        .take_kv("assignment")?
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Parse {
            line: 6,
            message: "bad assignment".into(),
        })?;
    let m_base: usize = cur.take_parsed("base_edges")?;

    let layout = CycleLayout::new(k, r, assignment)?;
    if layout.cycle_len() != graph.node_count() {
        return Err(Error::Parse {
            line: 1,
            message: format!(
                "graph has {} nodes but the layout implies N = {}",
                graph.node_count(),
                layout.cycle_len()
            ),
        });
    }

    let mut base = WeightedGraph::new(layout.cluster_count());
    let mut embedded = Vec::with_capacity(m_base);
    for i in 0..m_base {
        let (ln, line) = cur.next_line(&format!("edge line {i}"))?;
        let mut f = line.split_whitespace();
        let bad = |m: &str| Error::Parse {
            line: ln + 1,
            message: m.into(),
        };
        if f.next() != Some("e") {
            return Err(bad("expected `e <u> <v> <h_id>`"));
        }
        let u: usize = f.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad("bad base edge u"))?;
        let v: usize = f.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad("bad base edge v"))?;
        let h: usize = f.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad("bad embedded id"))?;
        base.add_edge(u, v, w_int(1))?;
        embedded.push(h);
    }

    let pruned_count: usize = cur.take_parsed("pruned")?;
    let mut pruned = BTreeSet::new();
    for i in 0..pruned_count {
        let (ln, line) = cur.next_line(&format!("pruned line {i}"))?;
        let id = line
            .strip_prefix("p ")
            .and_then(|t| t.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse {
                line: ln + 1,
                message: "expected `p <edge id>`".into(),
            })?;
        pruned.insert(id);
    }
    let cert_line = cur.take_kv("certificate")?;

    let inst = validate_instance(graph, layout, base, embedded, pruned, seed, base_spec)?;
    // recompute the certificate only if the file claims one; never trust the value
    let inst = if cert_line == "none" {
        inst
    } else {
        let (h, _) = inst.current_graph();
        EmbeddedInstance {
            certificate: Some(weighted_girth(&h)),
            ..inst
        }
    };
    Ok(inst)
}

/// Structural invariants shared by the builder and the parser.
fn validate_instance(
    graph: WeightedGraph,
    layout: CycleLayout,
    base: WeightedGraph,
    embedded: Vec<usize>,
    pruned: BTreeSet<usize>,
    seed: u64,
    base_spec: String,
) -> Result<EmbeddedInstance> {
    let n = layout.cycle_len();
    let bad = |m: String| Error::Parse { line: 0, message: m };
    if graph.edge_count() != n + embedded.len() {
        return Err(bad(format!(
            "graph has {} edges, expected {} SC + {} embedded",
            graph.edge_count(),
            n,
            embedded.len()
        )));
    }
    for i in 0..n {
        let e = &graph.edges()[i];
        let (a, b) = e.key();
        let ok = (b == a + 1 && a == i) || (a == 0 && b == n - 1 && i == n - 1);
        if !ok || e.weight != w_int(1) {
            return Err(bad(format!("edge {i} is not the expected unit SC edge")));
        }
    }
    let r = w_int(layout.inv_epsilon());
    let mut seen = BTreeSet::new();
    for (b_id, &h) in embedded.iter().enumerate() {
        if h < n || h >= graph.edge_count() || !seen.insert(h) {
            return Err(bad(format!("embedded id {h} out of range or repeated")));
        }
        let he = &graph.edges()[h];
        if he.weight != r {
            return Err(bad(format!("embedded edge {h} weight is not 1/epsilon")));
        }
        let be = &base.edges()[b_id];
        let cu = layout.cluster_of_base_node(be.u);
        let cv = layout.cluster_of_base_node(be.v);
        let ca = layout.cluster_of_position(he.u);
        let cb = layout.cluster_of_position(he.v);
        if !(ca == Some(cu) && cb == Some(cv)) && !(ca == Some(cv) && cb == Some(cu)) {
            return Err(bad(format!(
                "embedded edge {h} does not join the clusters of base edge {b_id}"
            )));
        }
    }
    for &p in &pruned {
        if !embedded.contains(&p) {
            return Err(bad(format!("pruned id {p} is not an embedded edge")));
        }
    }
    Ok(EmbeddedInstance {
        graph,
        layout,
        base,
        embedded,
        pruned,
        certificate: None,
        seed,
        base_spec,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build_instance, ConstructionParams};
    use crate::girth_graphs::gen_complete_bipartite;

    #[test]
    fn round_trip_is_byte_exact() {
        let base = gen_complete_bipartite(3).unwrap();
        let params = ConstructionParams::new(2, 6, 42).unwrap();
        let inst = build_instance(&base, &params, "biclique:side=3").unwrap();
        let edges_text = write_edge_list(&inst.graph);
        let layout_text = layout_sidecar_text(&inst);
        let parsed = parse_instance(&edges_text, &layout_text).unwrap();
        assert_eq!(write_edge_list(&parsed.graph), edges_text);
        assert_eq!(layout_sidecar_text(&parsed), layout_text);
        assert_eq!(parsed.pruned(), inst.pruned());
        assert_eq!(parsed.embedded(), inst.embedded());
        assert_eq!(parsed.layout(), inst.layout());
    }

    #[test]
    fn corrupted_sidecars_are_rejected() {
        let base = gen_complete_bipartite(2).unwrap();
        let params = ConstructionParams::new(2, 4, 7).unwrap();
        let inst = build_instance(&base, &params, "biclique:side=2").unwrap();
        let edges_text = write_edge_list(&inst.graph);
        let layout_text = layout_sidecar_text(&inst);

        let truncated: String = layout_text.lines().take(3).map(|l| format!("{l}\n")).collect();
        assert!(parse_instance(&edges_text, &truncated).is_err());

        let wrong_header = layout_text.replacen("spanlab-layout v1", "bogus", 1);
        assert!(parse_instance(&edges_text, &wrong_header).is_err());

        // claim an embedded id that is actually an SC edge
        let broken = layout_text.replacen(
            &format!("e 0 2 {}", inst.embedded()[0]),
            "e 0 2 0",
            1,
        );
        assert!(parse_instance(&edges_text, &broken).is_err());
    }
}
