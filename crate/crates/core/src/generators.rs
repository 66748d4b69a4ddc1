//! Instance generators: triangular grids, seeded k-trees with their
//! width-w decompositions, small named host graphs, and the bipartite
//! lower-bound gadget built from a regular high-girth host.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::decomposition::RootedTreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{girth, Color, Distance, Graph, Vertex};
use crate::legitimacy::ListAssignment;

/// n-by-n triangular grid: the square grid plus one diagonal per cell,
/// vertices numbered row-major.
pub fn triangular_grid(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidInput("grid size must be positive".into()));
    }
    let id = |row: usize, col: usize| row * n + col;
    let mut edges = Vec::new();
    for row in 0..n {
        for col in 0..n {
            if col + 1 < n {
                edges.push((id(row, col), id(row, col + 1)));
            }
            if row + 1 < n {
                edges.push((id(row, col), id(row + 1, col)));
            }
            if row + 1 < n && col + 1 < n {
                edges.push((id(row, col), id(row + 1, col + 1)));
            }
        }
    }
    Graph::from_edges(n * n, &edges)
}

/// Seeded k-tree on `n` vertices together with its width-`w`
/// decomposition: start from a (w+1)-clique, then attach each new vertex
/// to a random w-subset of a random existing bag.
pub fn random_ktree(n: usize, w: usize, seed: u64) -> Result<(Graph, RootedTreeDecomposition)> {
    if n < w + 1 {
        return Err(Error::InvalidInput(format!(
            "a width-{w} k-tree needs at least {} vertices, got {n}",
            w + 1
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for i in 0..=w {
        for j in i + 1..=w {
            edges.push((i, j));
        }
    }
    let mut bags: Vec<BTreeSet<Vertex>> = vec![(0..=w).collect()];
    let mut tree_edges: Vec<(usize, usize)> = Vec::new();
    for v in w + 1..n {
        let host = rng.gen_range(0..bags.len());
        let mut pool: Vec<Vertex> = bags[host].iter().copied().collect();
        pool.shuffle(&mut rng);
        pool.truncate(w);
        let mut bag: BTreeSet<Vertex> = pool.iter().copied().collect();
        for &u in &bag {
            edges.push((u.min(v), u.max(v)));
        }
        bag.insert(v);
        tree_edges.push((host, bags.len()));
        bags.push(bag);
    }
    let g = Graph::from_edges(n, &edges)?;
    let td = RootedTreeDecomposition::from_parts(0, &tree_edges, bags)?;
    Ok((g, td))
}

/// The Petersen graph: outer 5-cycle 0..5, inner pentagram 5..10, spokes.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::from_edges(10, &edges).expect("fixed graph")
}

/// Cycle on n >= 3 vertices.
pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidInput("a cycle needs at least 3 vertices".into()));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// d-dimensional hypercube.
pub fn hypercube(d: u32) -> Graph {
    let n = 1usize << d;
    let mut edges = Vec::new();
    for v in 0..n {
        for bit in 0..d {
            let u = v ^ (1 << bit);
            if v < u {
                edges.push((v, u));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("fixed graph")
}

/// What a gadget vertex encodes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GadgetOrigin {
    /// The i-th copy vertex of a host vertex (i is 1-based).
    HostVertex { v: Vertex, i: usize },
    /// A typed copy of a host edge.
    HostEdge { u: Vertex, v: Vertex, r#type: Vec<Color> },
}

/// The bipartite lower-bound gadget: graph, k-lists, bipartition and the
/// origin of every vertex.
#[derive(Clone, Debug)]
pub struct GadgetOutput {
    pub graph: Graph,
    pub lists: ListAssignment,
    pub bipartition: (BTreeSet<Vertex>, BTreeSet<Vertex>),
    pub provenance: BTreeMap<Vertex, GadgetOrigin>,
    pub host_degree: usize,
    pub host_girth: Distance,
}

/// All type sequences (t_1, ..., t_k) with t_i in ((i-1)k, ik], in
/// lexicographic order.
fn all_types(k: usize) -> Vec<Vec<Color>> {
    let mut out: Vec<Vec<Color>> = vec![Vec::new()];
    for i in 1..=k {
        let lo = ((i - 1) * k + 1) as Color;
        let hi = (i * k) as Color;
        let mut next = Vec::new();
        for prefix in &out {
            for t in lo..=hi {
                let mut seq = prefix.clone();
                seq.push(t);
                next.push(seq);
            }
        }
        out = next;
    }
    out
}

/// Builds the gadget over a d-regular host of girth at least 4: per type,
/// a copy of the vertex-edge incidence graph of the host, with the k
/// per-vertex copies identified across types. Lists: the i-th copy of a
/// host vertex gets ((i-1)k, ik]; an edge copy gets the entries of its
/// type.
pub fn build_bipartite_gadget(host: &Graph, k: usize) -> Result<GadgetOutput> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    let hn = host.vertex_count();
    if hn == 0 {
        return Err(Error::rejected("host graph is empty"));
    }
    let degree = host.degree(0);
    if host.vertices().any(|v| host.degree(v) != degree) {
        return Err(Error::rejected("host graph is not regular"));
    }
    let host_girth = girth(host);
    if let Distance::Finite(g) = host_girth {
        if g < 4 {
            return Err(Error::rejected(format!("host girth {g} < 4")));
        }
    }

    let types = all_types(k);
    let host_edges = host.edges();
    let q_id = |v: Vertex, i: usize| v * k + (i - 1);
    let edge_base = hn * k;
    let e_id = |edge_idx: usize, type_idx: usize| edge_base + edge_idx * types.len() + type_idx;
    let total = hn * k + host_edges.len() * types.len();

    let mut edges = Vec::new();
    for (edge_idx, &(u, v)) in host_edges.iter().enumerate() {
        for type_idx in 0..types.len() {
            let e = e_id(edge_idx, type_idx);
            for i in 1..=k {
                edges.push((q_id(u, i), e));
                edges.push((q_id(v, i), e));
            }
        }
    }
    let graph = Graph::from_edges(total, &edges)?;

    let mut lists = Vec::with_capacity(total);
    let mut provenance = BTreeMap::new();
    for v in 0..hn {
        for i in 1..=k {
            let list: BTreeSet<Color> =
                (((i - 1) * k + 1) as Color..=(i * k) as Color).collect();
            lists.push(list);
            provenance.insert(q_id(v, i), GadgetOrigin::HostVertex { v, i });
        }
    }
    for (edge_idx, &(u, v)) in host_edges.iter().enumerate() {
        for (type_idx, t) in types.iter().enumerate() {
            lists.push(t.iter().copied().collect());
            provenance.insert(
                e_id(edge_idx, type_idx),
                GadgetOrigin::HostEdge {
                    u,
                    v,
                    r#type: t.clone(),
                },
            );
        }
    }
    let palette: BTreeSet<Color> = (1..=(k * k) as Color).collect();
    let lists = ListAssignment::new(palette, lists)?;

    let side_a: BTreeSet<Vertex> = (0..edge_base).collect();
    let side_b: BTreeSet<Vertex> = (edge_base..total).collect();

    Ok(GadgetOutput {
        graph,
        lists,
        bipartition: (side_a, side_b),
        provenance,
        host_degree: degree,
        host_girth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{validate_tree_decomposition, ConstructionParams};

    #[test]
    fn grid_sizes() {
        let g1 = triangular_grid(1).unwrap();
        assert_eq!((g1.vertex_count(), g1.edge_count()), (1, 0));
        let g2 = triangular_grid(2).unwrap();
        assert_eq!((g2.vertex_count(), g2.edge_count()), (4, 5));
        // 12 grid edges plus 4 diagonals, counted by hand
        let g3 = triangular_grid(3).unwrap();
        assert_eq!((g3.vertex_count(), g3.edge_count()), (9, 16));
    }

    #[test]
    fn ktree_base_case_is_clique() {
        let (g, td) = random_ktree(3, 2, 1).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(td.node_count(), 1);
    }

    #[test]
    fn ktree_is_valid_and_reproducible() {
        for seed in 0..5 {
            let (g, td) = random_ktree(40, 3, seed).unwrap();
            assert!(validate_tree_decomposition(&g, &td).ok);
            assert!(td.width() <= 3);
            let (g2, td2) = random_ktree(40, 3, seed).unwrap();
            assert_eq!(g, g2);
            assert_eq!(td, td2);
        }
        let (g, td) = random_ktree(40, 3, 0).unwrap();
        let (g3, _) = random_ktree(40, 3, 12345).unwrap();
        assert_ne!(g, g3);
        // normalization applies as-is
        let p = ConstructionParams::new(4, 4).unwrap();
        assert!(crate::decomposition::validate_construction(&g, &td, p).ok);
    }

    #[test]
    fn petersen_shape() {
        let g = petersen();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.edge_count(), 15);
        assert!(g.vertices().all(|v| g.degree(v) == 3));
    }

    #[test]
    fn hypercube_shape() {
        let q3 = hypercube(3);
        assert_eq!(q3.vertex_count(), 8);
        assert_eq!(q3.edge_count(), 12);
        assert_eq!(girth(&q3), Distance::Finite(4));
    }

    #[test]
    fn type_enumeration() {
        assert_eq!(all_types(1), vec![vec![1]]);
        let t2 = all_types(2);
        assert_eq!(t2.len(), 4);
        assert_eq!(t2[0], vec![1, 3]);
        assert_eq!(t2[3], vec![2, 4]);
    }

    #[test]
    fn gadget_petersen_k1() {
        let out = build_bipartite_gadget(&petersen(), 1).unwrap();
        // 10 vertex copies plus 15 edge copies
        assert_eq!(out.graph.vertex_count(), 25);
        let max_deg = out
            .graph
            .vertices()
            .map(|v| out.graph.degree(v))
            .max()
            .unwrap();
        assert_eq!(max_deg, 3);
        assert!(out
            .graph
            .vertices()
            .all(|v| out.lists.list(v) == &BTreeSet::from([1])));
    }

    #[test]
    fn gadget_c6_k1() {
        let out = build_bipartite_gadget(&cycle_graph(6).unwrap(), 1).unwrap();
        assert_eq!(out.graph.vertex_count(), 12);
        let max_deg = out
            .graph
            .vertices()
            .map(|v| out.graph.degree(v))
            .max()
            .unwrap();
        assert_eq!(max_deg, 2);
    }

    #[test]
    fn gadget_rejects_irregular_host() {
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(build_bipartite_gadget(&path, 1).is_err());
    }

    #[test]
    fn gadget_degree_structure_k2() {
        let out = build_bipartite_gadget(&cycle_graph(6).unwrap(), 2).unwrap();
        let d = out.host_degree;
        let k = 2usize;
        for (v, origin) in &out.provenance {
            match origin {
                GadgetOrigin::HostVertex { .. } => {
                    assert_eq!(out.graph.degree(*v), d * k.pow(k as u32));
                }
                GadgetOrigin::HostEdge { .. } => {
                    assert_eq!(out.graph.degree(*v), 2 * k);
                }
            }
        }
        assert!(out.graph.vertices().all(|v| out.lists.list(v).len() == k));
    }
}
