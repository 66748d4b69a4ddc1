//! Shared fixture builders for the integration suites.

use std::collections::BTreeSet;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use wdlc::decomposition::RootedTreeDecomposition;
use wdlc::graph::{ball, bfs_distances, Color, Coloring, Distance, Graph, Vertex};
use wdlc::legitimacy::ListAssignment;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random simple graph with roughly `avg_deg * n / 2` edges.
pub fn random_graph(n: usize, avg_deg: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = BTreeSet::new();
    if n >= 2 {
        let target = ((avg_deg * n as f64) / 2.0).round() as usize;
        for _ in 0..target.saturating_mul(3) {
            if edges.len() >= target {
                break;
            }
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v {
                edges.insert((u.min(v), u.max(v)));
            }
        }
    }
    let edges: Vec<(Vertex, Vertex)> = edges.into_iter().collect();
    Graph::from_edges(n, &edges).expect("deduplicated edges")
}

/// Random coloring of every vertex from `1..=colors`.
pub fn random_coloring(n: usize, colors: u32, rng: &mut ChaCha8Rng) -> Coloring {
    Coloring::from_pairs((0..n).map(|v| (v, rng.gen_range(1..=colors))))
}

/// Chain-shaped width-w decomposition: bags {i, ..., i+w} over the w-th
/// power of a path. Long geodesics force deep engine recursions.
pub fn chain_ktree(n: usize, w: usize) -> (Graph, RootedTreeDecomposition) {
    assert!(n > w);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..(u + w + 1).min(n) {
            edges.push((u, v));
        }
    }
    let g = Graph::from_edges(n, &edges).unwrap();
    let bags: Vec<BTreeSet<Vertex>> = (0..n - w).map(|i| (i..=i + w).collect()).collect();
    let tree_edges: Vec<(usize, usize)> = (0..n - w - 1).map(|i| (i, i + 1)).collect();
    let td = RootedTreeDecomposition::from_parts(0, &tree_edges, bags).unwrap();
    (g, td)
}

/// Per-vertex random 2-subset of the 1..=palette colors.
pub fn random_two_lists(n: usize, palette: u32, rng: &mut ChaCha8Rng) -> ListAssignment {
    let colors: Vec<Color> = (1..=palette).collect();
    let lists: Vec<BTreeSet<Color>> = (0..n)
        .map(|_| {
            let mut pick = colors.clone();
            pick.shuffle(rng);
            pick.into_iter().take(2).collect()
        })
        .collect();
    ListAssignment::new(colors.into_iter().collect(), lists).unwrap()
}

/// Precoloring made of disjoint painted balls of radius floor(k/2) whose
/// centers are pairwise farther than 2*radius+1 apart, so no monochromatic
/// component can leave a single ball; its weak diameter is at most k by
/// construction.
pub fn ball_painted_precoloring(
    g: &Graph,
    lists: &ListAssignment,
    k: usize,
    attempts: usize,
    rng: &mut ChaCha8Rng,
) -> Coloring {
    let radius = k / 2;
    let n = g.vertex_count();
    let mut centers: Vec<Vertex> = Vec::new();
    let mut out = Coloring::new();
    for _ in 0..attempts {
        if n == 0 {
            break;
        }
        let candidate = rng.gen_range(0..n);
        let dist = bfs_distances(g, &BTreeSet::from([candidate])).unwrap();
        let clear = centers.iter().all(|&c| match dist[c] {
            Distance::Finite(d) => d > 2 * radius + 1,
            Distance::Infinite => true,
        });
        if !clear {
            continue;
        }
        centers.push(candidate);
        for v in ball(g, &BTreeSet::from([candidate]), radius).unwrap() {
            let choices: Vec<Color> = lists.list(v).iter().copied().collect();
            out.set(v, *choices.choose(rng).unwrap());
        }
    }
    out
}

/// Chain of cliques glued on `p` shared vertices per joint.
pub fn glued_clique_chain(
    torsos: usize,
    clique: usize,
    p: usize,
) -> (Graph, RootedTreeDecomposition) {
    assert!(p < clique);
    let mut edges = BTreeSet::new();
    let mut bags: Vec<BTreeSet<Vertex>> = Vec::new();
    let mut prev: Vec<Vertex> = Vec::new();
    let mut next_vertex = 0usize;
    for t in 0..torsos {
        let mut members: Vec<Vertex> = if t == 0 {
            Vec::new()
        } else {
            prev[prev.len() - p..].to_vec()
        };
        while members.len() < clique {
            members.push(next_vertex);
            next_vertex += 1;
        }
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                let (a, b) = (members[i].min(members[j]), members[i].max(members[j]));
                edges.insert((a, b));
            }
        }
        bags.push(members.iter().copied().collect());
        prev = members;
    }
    let edges: Vec<(Vertex, Vertex)> = edges.into_iter().collect();
    let g = Graph::from_edges(next_vertex, &edges).unwrap();
    let tree_edges: Vec<(usize, usize)> = (0..torsos - 1).map(|i| (i, i + 1)).collect();
    let td = RootedTreeDecomposition::from_parts(0, &tree_edges, bags).unwrap();
    (g, td)
}
