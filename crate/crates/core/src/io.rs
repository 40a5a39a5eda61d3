//! Plain-text edge-list format.
//!
//! First line `n m`, then m lines `u v w_num w_den` with 0-indexed nodes
//! and exact fractional weights. Writers emit edges sorted by edge id, so
//! output is deterministic byte for byte.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::weight::w_frac;

/// Serializes a graph in the edge-list format.
pub fn write_edge_list(graph: &WeightedGraph) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", graph.node_count(), graph.edge_count()));
    for e in graph.edges() {
        out.push_str(&format!(
            "{} {} {} {}\n",
            e.u,
            e.v,
            e.weight.numer(),
            e.weight.denom()
        ));
    }
    out
}

/// Parses the edge-list format. `allow_parallel` selects the graph mode;
/// files containing parallel edges fail to parse in simple mode.
pub fn parse_edge_list(text: &str, allow_parallel: bool) -> Result<WeightedGraph> {
    let mut lines = text.lines().enumerate();
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| Error::Parse {
            line: 1,
            message: "empty file".into(),
        })?;
    let mut head = header.split_whitespace();
    let n: usize = parse_field(head.next(), line_no, "node count")?;
    let m: usize = parse_field(head.next(), line_no, "edge count")?;
    if head.next().is_some() {
        return Err(Error::Parse {
            line: line_no + 1,
            message: "trailing fields after `n m`".into(),
        });
    }
    let mut graph = if allow_parallel {
        WeightedGraph::new_multi(n)
    } else {
        WeightedGraph::new(n)
    };
    let mut read = 0usize;
    for (line_no, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        if read == m {
            return Err(Error::Parse {
                line: line_no + 1,
                message: format!("more than {m} edge lines"),
            });
        }
        let mut fields = line.split_whitespace();
        let u: usize = parse_field(fields.next(), line_no, "u")?;
        let v: usize = parse_field(fields.next(), line_no, "v")?;
        let num: i64 = parse_field(fields.next(), line_no, "w_num")?;
        let den: i64 = parse_field(fields.next(), line_no, "w_den")?;
        if fields.next().is_some() {
            return Err(Error::Parse {
                line: line_no + 1,
                message: "trailing fields on edge line".into(),
            });
        }
        let w = w_frac(num, den).map_err(|e| Error::Parse {
            line: line_no + 1,
            message: e.to_string(),
        })?;
        graph.add_edge(u, v, w).map_err(|e| Error::Parse {
            line: line_no + 1,
            message: e.to_string(),
        })?;
        read += 1;
    }
    if read != m {
        return Err(Error::Parse {
            line: text.lines().count(),
            message: format!("expected {m} edges, found {read}"),
        });
    }
    Ok(graph)
}

fn parse_field<T: std::str::FromStr>(
    field: Option<&str>,
    line_no: usize,
    what: &str,
) -> Result<T> {
    field
        .ok_or_else(|| Error::Parse {
            line: line_no + 1,
            message: format!("missing field {what}"),
        })?
        .parse()
        .map_err(|_| Error::Parse {
            line: line_no + 1,
            message: format!("bad field {what}"),
        })
}
