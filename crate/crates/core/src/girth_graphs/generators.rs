//! Base-graph generators: complete bipartite (girth > 2), projective-plane
//! incidence (girth > 4), and a randomized alteration fallback for other
//! parameters.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Certification, GirthGraph, Provenance};
use crate::error::{Error, Result};
use crate::girth::shortest_cycle_edges;
use crate::graph::WeightedGraph;
use crate::weight::{weight_to_f64, Weight};

fn provenance(generator: &str, params: String, seed: Option<u64>, kappa: usize) -> Provenance {
    Provenance {
        generator: generator.to_string(),
        params,
        seed,
        girth_parameter: kappa,
        certification: Certification::Construction,
        nodes: 0,
        edges: 0,
    }
}

/// K_{side,side}: the densest graph of girth exactly 4; serves girth
/// parameter 1 (girth > 2). Left side is nodes `0..side`, right side
/// `side..2*side`.
pub fn gen_complete_bipartite(side: usize) -> Result<GirthGraph> {
    if side < 2 {
        return Err(Error::Parameter(format!(
            "biclique side must be at least 2, got {side}"
        )));
    }
    let n = 2 * side;
    let mut graph = WeightedGraph::new(n);
    for a in 0..side {
        for b in 0..side {
            graph.add_edge(a, side + b, crate::weight::w_int(1))?;
        }
    }
    let coloring: Vec<u8> = (0..n).map(|v| u8::from(v >= side)).collect();
    GirthGraph::certify(
        graph,
        1,
        provenance("biclique", format!("side={side}"), None, 1),
        Some(coloring),
        Some((side, side)),
    )
}

fn is_prime(q: usize) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Incidence graph of the projective plane PG(2, q) for prime q:
/// 2(q^2+q+1) nodes, (q+1)(q^2+q+1) edges, (q+1)-regular, bipartite,
/// girth 6; serves girth parameter 2.
///
/// Points and lines are the projective triples over GF(q) (first nonzero
/// coordinate normalized to 1); a point lies on a line when their dot
/// product vanishes mod q. Point i is node i, line j is node P + j.
pub fn gen_projective_plane_incidence(q: usize) -> Result<GirthGraph> {
    if !is_prime(q) {
        return Err(Error::Parameter(format!(
            "projective plane order must be prime, got {q} (prime powers are out of scope)"
        )));
    }
    let triples = projective_triples(q);
    let p = triples.len();
    debug_assert_eq!(p, q * q + q + 1);
    let mut graph = WeightedGraph::new(2 * p);
    for (i, point) in triples.iter().enumerate() {
        for (j, line) in triples.iter().enumerate() {
            let dot = point[0] * line[0] + point[1] * line[1] + point[2] * line[2];
            if dot % q == 0 {
                graph.add_edge(i, p + j, crate::weight::w_int(1))?;
            }
        }
    }
    let coloring: Vec<u8> = (0..2 * p).map(|v| u8::from(v >= p)).collect();
    GirthGraph::certify(
        graph,
        2,
        provenance("pg2", format!("q={q}"), None, 2),
        Some(coloring),
        Some((q + 1, q + 1)),
    )
}

/// Representatives of the projective points of GF(q)^3: (1, y, z),
/// (0, 1, z), (0, 0, 1).
fn projective_triples(q: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(q * q + q + 1);
    for y in 0..q {
        for z in 0..q {
            out.push([1, y, z]);
        }
    }
    for z in 0..q {
        out.push([0, 1, z]);
    }
    out.push([0, 0, 1]);
    out
}

/// Randomized fallback for girth parameters without an explicit
/// construction; no optimality claim. Samples a connected graph with
/// roughly `fill * n^density_exponent` edges (spanning tree first, then
/// uniform extra pairs), then repeatedly deletes one random edge from a
/// shortest cycle until girth > 2*kappa. Deleted edges always lie on a
/// cycle, so connectivity survives.
///
/// `density_exponent` defaults to `1 + 1/(2*kappa - 1)`; `fill` defaults
/// to 1/2, which keeps the deletion phase from consuming the graph at
/// desk scale.
pub fn gen_random_high_girth(
    n: usize,
    kappa: usize,
    density_exponent: Option<f64>,
    fill: Option<Weight>,
    seed: u64,
) -> Result<GirthGraph> {
    if n < 3 {
        return Err(Error::Parameter(format!("need at least 3 nodes, got {n}")));
    }
    if kappa < 1 {
        return Err(Error::Parameter("girth parameter must be at least 1".into()));
    }
    let exponent = density_exponent.unwrap_or(1.0 + 1.0 / (2.0 * kappa as f64 - 1.0));
    let fill = fill.map(|w| weight_to_f64(&w)).unwrap_or(0.5);
    if fill.is_nan() || fill <= 0.0 {
        return Err(Error::Parameter("fill must be positive".into()));
    }
    let max_edges = n * (n - 1) / 2;
    let target = ((fill * (n as f64).powf(exponent)).round() as usize)
        .clamp(n - 1, max_edges);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Random spanning tree: random permutation, attach each node to a
    // uniform predecessor.
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut chosen: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    for i in 1..n {
        let a = order[i];
        let b = order[rng.random_range(0..i)];
        chosen.insert(if a < b { (a, b) } else { (b, a) });
    }
    // Top up with uniform random distinct pairs.
    let mut guard = 0usize;
    while chosen.len() < target {
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        if a != b {
            chosen.insert(if a < b { (a, b) } else { (b, a) });
        }
        guard += 1;
        if guard > 200 * max_edges {
            break;
        }
    }
    let mut pairs: Vec<(usize, usize)> = chosen.into_iter().collect();
    pairs.sort_unstable();
    let mut graph = WeightedGraph::from_unit_edges(n, &pairs)?;

    // Alteration: delete one random edge per shortest cycle while the
    // girth is still too small.
    loop {
        match shortest_cycle_edges(&graph) {
            Some(cycle) if cycle.len() <= 2 * kappa => {
                let kill = cycle[rng.random_range(0..cycle.len())];
                let removed: std::collections::BTreeSet<_> = [kill].into_iter().collect();
                graph = graph.without_edges(&removed).0;
            }
            _ => break,
        }
    }

    if let Some(stranded) = graph.first_stranded() {
        return Err(Error::GenerationFailure(format!(
            "alteration left node {stranded} disconnected; try a lower density"
        )));
    }
    if 2 * graph.edge_count() < target {
        return Err(Error::GenerationFailure(format!(
            "alteration kept {} of {} sampled edges (less than half); try a lower density",
            graph.edge_count(),
            target
        )));
    }
    let params = format!("n={n},kappa={kappa},exponent={exponent},fill={fill}");
    GirthGraph::certify(
        graph,
        kappa,
        provenance("random-alteration", params, Some(seed), kappa),
        None,
        None,
    )
}
