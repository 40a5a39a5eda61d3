//! Pruning of light cycles and the final weighted-girth certificate.

use std::collections::HashMap;

use super::{corresponding_cycle, EmbeddedInstance};
use crate::cycles::{enumerate_cycles_of_length, enumerate_cycles_within_weight, Cycle};
use crate::error::{Error, Result};
use crate::girth::weighted_girth;
use crate::weight::{format_weight, w_int};

/// Deletes every embedded edge that participates in a cycle of normalized
/// weight at most (1+epsilon) * 2k, then certifies the survivor.
///
/// Base cycles of even length 2k through 2k + 2*floor(k*epsilon) are the
/// only candidates: shorter cycles do not exist (base girth >= 2k via
/// bipartiteness), longer ones already exceed the bound on embedded
/// weight alone, odd lengths are empty in a bipartite base, and any H'
/// cycle whose non-SC edges do not form a base cycle crosses a spacer and
/// therefore weighs at least 3k. Parallel embedded pairs (possible only
/// for multigraph bases) form 2-cycles of normalized weight 2 and are
/// removed by a direct scan. The final certificate recomputes the exact
/// weighted girth and fails loudly if anything slipped through.
pub fn prune_light_cycles(mut inst: EmbeddedInstance) -> Result<EmbeddedInstance> {
    if !inst.pruned.is_empty() || inst.certificate.is_some() {
        return Err(Error::Parameter("instance was already pruned".into()));
    }
    if inst.base.bipartition().is_none() {
        return Err(Error::Parameter("base graph must be bipartite".into()));
    }
    let k = inst.layout.k;
    let r = inst.layout.inv_epsilon;
    let c_max = k / r as usize; // floor(k * epsilon)
    for c in 0..=c_max {
        let len = 2 * k + 2 * c;
        // sigma threshold from |x| + eps*sigma <= 2k(1+eps)
        let sigma_max = 2 * k as i64 - 2 * c as i64 * r;
        if sigma_max < 0 {
            continue;
        }
        let cap = len.max(crate::cycles::DEFAULT_LENGTH_CAP);
        for x in enumerate_cycles_of_length(&inst.base, len, cap)? {
            let (image, sigma) = corresponding_cycle(&inst, &x)?;
            debug_assert_eq!(
                image.normalized_weight() <= inst.girth_bound(),
                sigma as i64 <= sigma_max
            );
            if sigma as i64 <= sigma_max {
                for &b in x.edges() {
                    inst.pruned.insert(inst.embedded[b]);
                }
            }
        }
    }

    // parallel embedded pairs: normalized weight exactly 2
    let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for &h in &inst.embedded {
        let e = &inst.graph.edges()[h];
        by_pair.entry(e.key()).or_default().push(h);
    }
    for (_, group) in by_pair {
        if group.len() > 1 {
            inst.pruned.extend(group);
        }
    }

    let bound = inst.girth_bound();
    let (h, _) = inst.current_graph();
    let cert = weighted_girth(&h);
    if !cert.value.exceeds(bound) {
        let witness = cert
            .witness
            .map(|c| format!("{:?}", c.nodes()))
            .unwrap_or_else(|| "<none>".into());
        return Err(Error::Certification {
            value: cert.value.to_string(),
            bound: format_weight(&bound),
            witness,
        });
    }
    inst.certificate = Some(cert);
    Ok(inst)
}

/// A light cycle found by the exhaustive scan: the cycle, its normalized
/// weight components, and how many of its edges are embedded (non-SC).
#[derive(Debug)]
pub struct LightCycle {
    pub cycle: Cycle,
    pub non_sc_edges: usize,
    pub sc_edges: usize,
}

/// Exhaustively enumerates every cycle of H' (or of the pruned graph when
/// `current_only`) with normalized weight at most (1+epsilon) * 2k.
///
/// Any such cycle must contain an embedded edge (the spanning cycle alone
/// has normalized weight N), so its maximum edge weight is r and the scan
/// reduces to total weight <= bound * r, which keeps the search shallow.
pub fn light_cycle_scan(inst: &EmbeddedInstance, current_only: bool) -> Vec<LightCycle> {
    let bound = inst.girth_bound();
    let budget = bound * w_int(inst.layout.inv_epsilon);
    let n_sc = inst.sc_edge_count();
    if current_only {
        let (h, old_ids) = inst.current_graph();
        enumerate_cycles_within_weight(&h, budget)
            .into_iter()
            .filter(|c| c.normalized_weight() <= bound)
            .map(|c| {
                let non_sc = c.edges().iter().filter(|&&e| old_ids[e] >= n_sc).count();
                LightCycle {
                    sc_edges: c.len() - non_sc,
                    non_sc_edges: non_sc,
                    cycle: c,
                }
            })
            .collect()
    } else {
        enumerate_cycles_within_weight(&inst.graph, budget)
            .into_iter()
            .filter(|c| c.normalized_weight() <= bound)
            .map(|c| {
                let non_sc = c.edges().iter().filter(|&&e| e >= n_sc).count();
                LightCycle {
                    sc_edges: c.len() - non_sc,
                    non_sc_edges: non_sc,
                    cycle: c,
                }
            })
            .collect()
    }
}
