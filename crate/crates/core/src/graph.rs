//! Undirected simple graphs with dense integer vertex ids, plus the
//! distance and coloring measurements used everywhere else: balls,
//! weak diameter, monochromatic components, bipartiteness, girth.
//!
//! The weak diameter of a vertex set is measured in the *whole* graph,
//! never in the induced subgraph.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Color = u32;

/// Hop distance; `Infinite` compares greater than every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    /// True when the distance does not exceed `bound`.
    pub fn le_int(self, bound: &num_bigint::BigUint) -> bool {
        match self {
            Distance::Finite(d) => num_bigint::BigUint::from(d) <= *bound,
            Distance::Infinite => false,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => write!(f, "infinite"),
        }
    }
}

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl Graph {
    /// Empty graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        let mut seen = BTreeSet::new();
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop at vertex {u}")));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::InvalidInput(format!(
                    "duplicate edge ({}, {})",
                    key.0, key.1
                )));
            }
            g.adjacency[u].push(v);
            g.adjacency[v].push(u);
            g.edge_count += 1;
        }
        for list in &mut g.adjacency {
            list.sort_unstable();
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        0..self.vertex_count()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in self.vertices() {
            for &v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                count: self.vertex_count(),
            })
        }
    }

    fn check_vertex_set(&self, s: &BTreeSet<Vertex>) -> Result<()> {
        for &v in s {
            self.check_vertex(v)?;
        }
        Ok(())
    }
}

/// Partial or total vertex coloring.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Coloring {
    assignment: BTreeMap<Vertex, Color>,
}

impl Coloring {
    pub fn new() -> Self {
        Coloring::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Vertex, Color)>) -> Self {
        Coloring {
            assignment: pairs.into_iter().collect(),
        }
    }

    pub fn get(&self, v: Vertex) -> Option<Color> {
        self.assignment.get(&v).copied()
    }

    pub fn set(&mut self, v: Vertex, c: Color) {
        self.assignment.insert(v, c);
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn domain(&self) -> BTreeSet<Vertex> {
        self.assignment.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Color)> + '_ {
        self.assignment.iter().map(|(&v, &c)| (v, c))
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.assignment.contains_key(&v)
    }

    pub fn restrict(&self, keep: &BTreeSet<Vertex>) -> Coloring {
        Coloring {
            assignment: self
                .assignment
                .iter()
                .filter(|(v, _)| keep.contains(v))
                .map(|(&v, &c)| (v, c))
                .collect(),
        }
    }

    pub fn restrict_out(&self, drop: &BTreeSet<Vertex>) -> Coloring {
        Coloring {
            assignment: self
                .assignment
                .iter()
                .filter(|(v, _)| !drop.contains(v))
                .map(|(&v, &c)| (v, c))
                .collect(),
        }
    }

    /// Union of two colorings that must agree on shared vertices.
    pub fn union(&self, other: &Coloring) -> Result<Coloring> {
        let mut merged = self.assignment.clone();
        for (&v, &c) in &other.assignment {
            if let Some(&prev) = merged.get(&v) {
                if prev != c {
                    return Err(Error::invariant(format!(
                        "coloring union disagrees at vertex {v}: {prev} vs {c}"
                    )));
                }
            }
            merged.insert(v, c);
        }
        Ok(Coloring { assignment: merged })
    }

    /// True when `other` agrees with `self` on all of `self`'s domain.
    pub fn extends(&self, smaller: &Coloring) -> bool {
        smaller
            .assignment
            .iter()
            .all(|(&v, &c)| self.get(v) == Some(c))
    }

    /// Relabels the domain through `map` (old id -> new id); vertices
    /// missing from the map are dropped.
    pub fn relabel(&self, map: &BTreeMap<Vertex, Vertex>) -> Coloring {
        Coloring {
            assignment: self
                .assignment
                .iter()
                .filter_map(|(v, &c)| map.get(v).map(|&nv| (nv, c)))
                .collect(),
        }
    }
}

/// BFS hop distances from a set of sources; `Infinite` for unreachable.
pub fn bfs_distances(g: &Graph, sources: &BTreeSet<Vertex>) -> Result<Vec<Distance>> {
    g.check_vertex_set(sources)?;
    let mut dist = vec![Distance::Infinite; g.vertex_count()];
    let mut queue = VecDeque::new();
    for &s in sources {
        dist[s] = Distance::Finite(0);
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        let du = match dist[u] {
            Distance::Finite(d) => d,
            Distance::Infinite => unreachable!(),
        };
        for &w in g.neighbors(u) {
            if dist[w] == Distance::Infinite {
                dist[w] = Distance::Finite(du + 1);
                queue.push_back(w);
            }
        }
    }
    Ok(dist)
}

/// `{v : dist(v, s) <= r}`.
pub fn ball(g: &Graph, s: &BTreeSet<Vertex>, r: usize) -> Result<BTreeSet<Vertex>> {
    let dist = bfs_distances(g, s)?;
    Ok(g.vertices()
        .filter(|&v| match dist[v] {
            Distance::Finite(d) => d <= r,
            Distance::Infinite => false,
        })
        .collect())
}

/// Max over pairs of `s` of the distance in the whole graph `g`.
/// 0 when `|s| <= 1`; `Infinite` when `s` spans several components.
pub fn weak_diameter(g: &Graph, s: &BTreeSet<Vertex>) -> Result<Distance> {
    g.check_vertex_set(s)?;
    if s.len() <= 1 {
        return Ok(Distance::Finite(0));
    }
    let mut best = Distance::Finite(0);
    for &v in s {
        let dist = bfs_distances(g, &BTreeSet::from([v]))?;
        for &w in s {
            best = best.max(dist[w]);
            if best == Distance::Infinite {
                return Ok(Distance::Infinite);
            }
        }
    }
    Ok(best)
}

/// Like `weak_diameter` but also reports a pair realizing the maximum.
pub fn weak_diameter_witness(
    g: &Graph,
    s: &BTreeSet<Vertex>,
) -> Result<(Distance, Option<(Vertex, Vertex)>)> {
    g.check_vertex_set(s)?;
    if s.len() <= 1 {
        return Ok((Distance::Finite(0), None));
    }
    let mut best = Distance::Finite(0);
    let mut pair = None;
    for &v in s {
        let dist = bfs_distances(g, &BTreeSet::from([v]))?;
        for &w in s {
            if w <= v && dist[w] != Distance::Infinite {
                continue;
            }
            if dist[w] > best || pair.is_none() {
                best = best.max(dist[w]);
                pair = Some((v, w));
                if best == Distance::Infinite {
                    return Ok((best, pair));
                }
            }
        }
    }
    Ok((best, pair))
}

/// Connected components of the subgraph induced by each color class,
/// as `(color, vertex set)` entries sorted by minimum vertex id.
pub fn monochromatic_components(g: &Graph, c: &Coloring) -> Result<Vec<(Color, BTreeSet<Vertex>)>> {
    for (v, _) in c.iter() {
        g.check_vertex(v)?;
    }
    let mut visited: BTreeSet<Vertex> = BTreeSet::new();
    let mut out: Vec<(Color, BTreeSet<Vertex>)> = Vec::new();
    for (v, color) in c.iter() {
        if visited.contains(&v) {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut queue = VecDeque::from([v]);
        visited.insert(v);
        while let Some(u) = queue.pop_front() {
            comp.insert(u);
            for &w in g.neighbors(u) {
                if c.get(w) == Some(color) && visited.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        out.push((color, comp));
    }
    // Coloring iteration is ordered by vertex id, so each component is
    // discovered at its minimum vertex.
    Ok(out)
}

/// Max over monochromatic components of their weak diameter in `g`;
/// 0 for the empty coloring.
pub fn coloring_weak_diameter(g: &Graph, c: &Coloring) -> Result<Distance> {
    let mut best = Distance::Finite(0);
    for (_, comp) in monochromatic_components(g, c)? {
        best = best.max(weak_diameter(g, &comp)?);
        if best == Distance::Infinite {
            break;
        }
    }
    Ok(best)
}

/// Like `coloring_weak_diameter` but also reports an offending pair.
pub fn coloring_weak_diameter_witness(
    g: &Graph,
    c: &Coloring,
) -> Result<(Distance, Option<(Vertex, Vertex)>)> {
    let mut best = Distance::Finite(0);
    let mut pair = None;
    for (_, comp) in monochromatic_components(g, c)? {
        let (d, p) = weak_diameter_witness(g, &comp)?;
        if d > best || pair.is_none() {
            best = best.max(d);
            if p.is_some() {
                pair = p;
            }
        }
        if best == Distance::Infinite {
            break;
        }
    }
    Ok((best, pair))
}

/// Connected components in deterministic order (by minimum vertex id).
pub fn connected_components(g: &Graph) -> Vec<BTreeSet<Vertex>> {
    let mut visited = vec![false; g.vertex_count()];
    let mut out = Vec::new();
    for v in g.vertices() {
        if visited[v] {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut queue = VecDeque::from([v]);
        visited[v] = true;
        while let Some(u) = queue.pop_front() {
            comp.insert(u);
            for &w in g.neighbors(u) {
                if !visited[w] {
                    visited[w] = true;
                    queue.push_back(w);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Induced subgraph on `s`, plus the order-preserving id mapping old -> new.
pub fn induced_subgraph(g: &Graph, s: &BTreeSet<Vertex>) -> Result<(Graph, BTreeMap<Vertex, Vertex>)> {
    g.check_vertex_set(s)?;
    let to_new: BTreeMap<Vertex, Vertex> = s.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut edges = Vec::new();
    for &u in s {
        for &w in g.neighbors(u) {
            if u < w && s.contains(&w) {
                edges.push((to_new[&u], to_new[&w]));
            }
        }
    }
    let sub = Graph::from_edges(s.len(), &edges)?;
    Ok((sub, to_new))
}

/// 2-coloring witness when the graph has no odd cycle. Per component the
/// side containing its lowest vertex id is the first side.
pub fn is_bipartite(g: &Graph) -> Option<(BTreeSet<Vertex>, BTreeSet<Vertex>)> {
    let mut side = vec![None::<bool>; g.vertex_count()];
    for start in g.vertices() {
        if side[start].is_some() {
            continue;
        }
        side[start] = Some(true);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let su = side[u].unwrap();
            for &w in g.neighbors(u) {
                match side[w] {
                    None => {
                        side[w] = Some(!su);
                        queue.push_back(w);
                    }
                    Some(sw) if sw == su => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let mut a = BTreeSet::new();
    let mut b = BTreeSet::new();
    for v in g.vertices() {
        if side[v] == Some(true) {
            a.insert(v);
        } else {
            b.insert(v);
        }
    }
    Some((a, b))
}

/// Length of a shortest cycle; `Infinite` for forests.
///
/// One BFS per start vertex; every non-tree edge closes a walk of length
/// `dist[a] + dist[b] + 1` that contains a cycle no longer than itself, and
/// for a shortest cycle the bound is attained from some start.
pub fn girth(g: &Graph) -> Distance {
    let mut best = Distance::Infinite;
    for start in g.vertices() {
        let mut dist = vec![usize::MAX; g.vertex_count()];
        let mut parent = vec![usize::MAX; g.vertex_count()];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w && parent[w] != u {
                    let len = dist[u] + dist[w] + 1;
                    best = best.min(Distance::Finite(len));
                }
            }
        }
    }
    best
}
