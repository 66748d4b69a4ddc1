//! Rooted tree-decompositions, their validation, torsos, truncations and
//! the special constructions the extension engine runs on: adhesion at most
//! theta, with adhesion sets larger than eta allowed only at childless star
//! ends whose residual components have at most two vertices.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{connected_components, Graph, Vertex};

/// Rooted tree of bags over a graph. Node ids are dense `0..node_count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTreeDecomposition {
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    bags: Vec<BTreeSet<Vertex>>,
}

impl RootedTreeDecomposition {
    /// Builds from parent->child edges, validating the rooted-tree shape:
    /// exactly one root, in-degree one elsewhere, everything reachable.
    pub fn from_parts(
        root: usize,
        edges: &[(usize, usize)],
        bags: Vec<BTreeSet<Vertex>>,
    ) -> Result<Self> {
        let n = bags.len();
        if n == 0 {
            return Err(Error::InvalidDecomposition(
                "a decomposition needs at least one node".into(),
            ));
        }
        if root >= n {
            return Err(Error::InvalidDecomposition(format!(
                "root {root} out of range (node count {n})"
            )));
        }
        if edges.len() != n - 1 {
            return Err(Error::InvalidDecomposition(format!(
                "{} edges for {} nodes; a tree needs {}",
                edges.len(),
                n,
                n - 1
            )));
        }
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        for &(p, c) in edges {
            if p >= n || c >= n {
                return Err(Error::InvalidDecomposition(format!(
                    "tree edge ({p}, {c}) out of range"
                )));
            }
            if c == root {
                return Err(Error::InvalidDecomposition(format!(
                    "root {root} has an incoming edge"
                )));
            }
            if parent[c].is_some() {
                return Err(Error::InvalidDecomposition(format!(
                    "node {c} has two parents"
                )));
            }
            parent[c] = Some(p);
            children[p].push(c);
        }
        for list in &mut children {
            list.sort_unstable();
        }
        let td = RootedTreeDecomposition {
            root,
            parent,
            children,
            bags,
        };
        // Reachability from the root covers all nodes exactly when the
        // in-degree constraints above hold and there is no cycle.
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        let mut count = 0;
        while let Some(t) = queue.pop_front() {
            count += 1;
            for &c in &td.children[t] {
                if !seen[c] {
                    seen[c] = true;
                    queue.push_back(c);
                }
            }
        }
        if count != n {
            return Err(Error::InvalidDecomposition(
                "tree is not connected from the root".into(),
            ));
        }
        Ok(td)
    }

    /// Single node holding the given bag.
    pub fn single(bag: BTreeSet<Vertex>) -> Self {
        RootedTreeDecomposition {
            root: 0,
            parent: vec![None],
            children: vec![Vec::new()],
            bags: vec![bag],
        }
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn bag(&self, t: usize) -> &BTreeSet<Vertex> {
        &self.bags[t]
    }

    pub fn parent(&self, t: usize) -> Option<usize> {
        self.parent[t]
    }

    pub fn children(&self, t: usize) -> &[usize] {
        &self.children[t]
    }

    pub fn nodes(&self) -> impl Iterator<Item = usize> + '_ {
        0..self.node_count()
    }

    /// Tree edges as `(parent, child)` pairs, sorted by child.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .parent
            .iter()
            .enumerate()
            .filter_map(|(c, p)| p.map(|p| (p, c)))
            .collect();
        out.sort_unstable_by_key(|&(_, c)| c);
        out
    }

    pub fn check_node(&self, t: usize) -> Result<()> {
        if t < self.node_count() {
            Ok(())
        } else {
            Err(Error::InvalidNode {
                node: t,
                count: self.node_count(),
            })
        }
    }

    /// All vertices appearing in some bag.
    pub fn bag_union(&self) -> BTreeSet<Vertex> {
        self.bags.iter().flatten().copied().collect()
    }

    /// Max bag intersection over tree edges; 0 for a one-node tree.
    pub fn adhesion(&self) -> usize {
        self.edges()
            .iter()
            .map(|&(p, c)| self.bags[p].intersection(&self.bags[c]).count())
            .max()
            .unwrap_or(0)
    }

    /// Max bag size minus one; -1 when every bag is empty.
    pub fn width(&self) -> i64 {
        self.bags.iter().map(|b| b.len() as i64 - 1).max().unwrap_or(-1)
    }

    /// Adhesion set of a tree edge.
    pub fn adhesion_set(&self, parent: usize, child: usize) -> Result<BTreeSet<Vertex>> {
        self.check_node(parent)?;
        self.check_node(child)?;
        if self.parent[child] != Some(parent) {
            return Err(Error::InvalidInput(format!(
                "({parent}, {child}) is not a tree edge"
            )));
        }
        Ok(self.bags[parent]
            .intersection(&self.bags[child])
            .copied()
            .collect())
    }

    /// Same tree with every bag intersected with `s`.
    pub fn restrict_bags(&self, s: &BTreeSet<Vertex>) -> RootedTreeDecomposition {
        RootedTreeDecomposition {
            root: self.root,
            parent: self.parent.clone(),
            children: self.children.clone(),
            bags: self
                .bags
                .iter()
                .map(|b| b.intersection(s).copied().collect())
                .collect(),
        }
    }

    /// Nodes of the subtree rooted at `t`, ascending.
    pub fn subtree(&self, t: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut queue = VecDeque::from([t]);
        while let Some(u) = queue.pop_front() {
            out.push(u);
            queue.extend(self.children[u].iter().copied());
        }
        out.sort_unstable();
        out
    }

    /// Distance (in tree edges) from the root to every node.
    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0usize; self.node_count()];
        let mut queue = VecDeque::from([self.root]);
        while let Some(t) = queue.pop_front() {
            for &c in &self.children[t] {
                depth[c] = depth[t] + 1;
                queue.push_back(c);
            }
        }
        depth
    }

    /// Path of nodes from `a` up/down to `b` (inclusive).
    pub fn tree_path(&self, a: usize, b: usize) -> Vec<usize> {
        let depth = self.depths();
        let (mut x, mut y) = (a, b);
        let mut up_a = vec![x];
        let mut up_b = vec![y];
        while depth[x] > depth[y] {
            x = self.parent[x].expect("depth > 0");
            up_a.push(x);
        }
        while depth[y] > depth[x] {
            y = self.parent[y].expect("depth > 0");
            up_b.push(y);
        }
        while x != y {
            x = self.parent[x].expect("distinct nodes share an ancestor");
            y = self.parent[y].expect("distinct nodes share an ancestor");
            up_a.push(x);
            up_b.push(y);
        }
        up_b.pop();
        up_b.reverse();
        up_a.extend(up_b);
        up_a
    }

    /// Keeps exactly `keep` (which must contain the root and be connected),
    /// renumbering nodes order-preservingly. Returns the node map old -> new.
    pub fn induced_rooted(&self, keep: &BTreeSet<usize>) -> Result<(Self, BTreeMap<usize, usize>)> {
        if !keep.contains(&self.root) {
            return Err(Error::invariant(
                "induced_rooted requires the root to be kept",
            ));
        }
        let map: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let mut edges = Vec::new();
        for &t in keep {
            if let Some(p) = self.parent[t] {
                if keep.contains(&p) {
                    edges.push((map[&p], map[&t]));
                } else {
                    return Err(Error::invariant(
                        "induced_rooted requires a connected node set",
                    ));
                }
            }
        }
        let bags = keep.iter().map(|&t| self.bags[t].clone()).collect();
        let td = RootedTreeDecomposition::from_parts(map[&self.root], &edges, bags)?;
        Ok((td, map))
    }

    /// Reroots the tree at `new_root` (edge directions flipped along the
    /// path to the old root).
    pub fn reroot(&self, new_root: usize) -> Result<Self> {
        self.check_node(new_root)?;
        if new_root == self.root {
            return Ok(self.clone());
        }
        let undirected: Vec<(usize, usize)> = self.edges();
        let mut adj = vec![Vec::new(); self.node_count()];
        for &(p, c) in &undirected {
            adj[p].push(c);
            adj[c].push(p);
        }
        let mut parent = vec![None; self.node_count()];
        let mut seen = vec![false; self.node_count()];
        seen[new_root] = true;
        let mut queue = VecDeque::from([new_root]);
        let mut edges = Vec::new();
        while let Some(t) = queue.pop_front() {
            for &u in &adj[t] {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = Some(t);
                    edges.push((t, u));
                    queue.push_back(u);
                }
            }
        }
        RootedTreeDecomposition::from_parts(new_root, &edges, self.bags.clone())
    }
}

/// Rule identifiers for validation violations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    TreeShape,
    BagRange,
    VertexCoverage,
    EdgeCoverage,
    Connectivity,
    Adhesion,
    C1,
    C2,
    L1,
    L2,
    L3,
    WitnessRequired,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: Rule,
    pub location: String,
}

/// Outcome of a validation pass; `ok` iff no violations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn from_violations(violations: Vec<Violation>) -> Self {
        ValidationReport {
            ok: violations.is_empty(),
            violations,
        }
    }

    pub fn push(&mut self, rule: Rule, location: impl Into<String>) {
        self.violations.push(Violation {
            rule,
            location: location.into(),
        });
        self.ok = false;
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
        self.ok = self.violations.is_empty();
    }
}

/// Checks the three tree-decomposition axioms against `g`.
pub fn validate_tree_decomposition(g: &Graph, td: &RootedTreeDecomposition) -> ValidationReport {
    let mut violations = Vec::new();

    for t in td.nodes() {
        for &v in td.bag(t) {
            if v >= g.vertex_count() {
                violations.push(Violation {
                    rule: Rule::BagRange,
                    location: format!("bag {t} contains invalid vertex {v}"),
                });
            }
        }
    }

    let covered = td.bag_union();
    for v in g.vertices() {
        if !covered.contains(&v) {
            violations.push(Violation {
                rule: Rule::VertexCoverage,
                location: format!("vertex {v} is in no bag"),
            });
        }
    }

    for (u, v) in g.edges() {
        let inside = td
            .nodes()
            .any(|t| td.bag(t).contains(&u) && td.bag(t).contains(&v));
        if !inside {
            violations.push(Violation {
                rule: Rule::EdgeCoverage,
                location: format!("edge ({u}, {v}) is inside no bag"),
            });
        }
    }

    // Connectivity: the nodes whose bags contain v must induce a subtree.
    for v in covered {
        let holding: BTreeSet<usize> = td.nodes().filter(|&t| td.bag(t).contains(&v)).collect();
        if holding.is_empty() {
            continue;
        }
        let start = *holding.iter().next().unwrap();
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(t) = queue.pop_front() {
            let mut step = |u: usize| {
                if holding.contains(&u) && seen.insert(u) {
                    queue.push_back(u);
                }
            };
            if let Some(p) = td.parent(t) {
                step(p);
            }
            for &c in td.children(t) {
                step(c);
            }
        }
        if seen.len() != holding.len() {
            violations.push(Violation {
                rule: Rule::Connectivity,
                location: format!("bags containing vertex {v} induce a disconnected subtree"),
            });
        }
    }

    ValidationReport::from_violations(violations)
}

/// Parameters of a construction: adhesion bounded by `theta`, with sets
/// larger than `eta` confined to childless star ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionParams {
    pub eta: usize,
    pub theta: usize,
}

impl ConstructionParams {
    pub fn new(eta: usize, theta: usize) -> Result<Self> {
        if eta > theta {
            return Err(Error::InvalidInput(format!(
                "construction params need eta <= theta, got ({eta}, {theta})"
            )));
        }
        Ok(ConstructionParams { eta, theta })
    }
}

/// Checks the construction conditions on top of a (presumed valid)
/// tree-decomposition: adhesion at most theta; every tree edge whose
/// adhesion set exceeds eta ends in a childless node whose residual
/// components have at most two vertices; root bag at most theta and
/// nonempty when eta > 0.
pub fn validate_construction(
    g: &Graph,
    td: &RootedTreeDecomposition,
    p: ConstructionParams,
) -> ValidationReport {
    let mut report = ValidationReport {
        ok: true,
        violations: Vec::new(),
    };

    for (t, c) in td.edges() {
        let adh: BTreeSet<Vertex> = td.bag(t).intersection(td.bag(c)).copied().collect();
        if adh.len() > p.theta {
            report.push(
                Rule::Adhesion,
                format!("edge ({t}, {c}) has adhesion {} > theta {}", adh.len(), p.theta),
            );
        }
        if adh.len() > p.eta {
            if !td.children(c).is_empty() {
                report.push(
                    Rule::C1,
                    format!(
                        "edge ({t}, {c}) has adhesion {} > eta {} but node {c} has children",
                        adh.len(),
                        p.eta
                    ),
                );
                continue;
            }
            let residual: BTreeSet<Vertex> = td
                .bag(c)
                .difference(td.bag(t))
                .copied()
                .filter(|&v| v < g.vertex_count())
                .collect();
            if let Ok((sub, _)) = crate::graph::induced_subgraph(g, &residual) {
                for comp in connected_components(&sub) {
                    if comp.len() > 2 {
                        report.push(
                            Rule::C1,
                            format!(
                                "edge ({t}, {c}): a residual component has {} > 2 vertices",
                                comp.len()
                            ),
                        );
                        break;
                    }
                }
            }
        }
    }

    let root_bag = td.bag(td.root());
    if root_bag.len() > p.theta {
        report.push(
            Rule::C2,
            format!(
                "root bag has {} > theta {} vertices",
                root_bag.len(),
                p.theta
            ),
        );
    }
    if p.eta > 0 && root_bag.is_empty() {
        report.push(Rule::C2, "root bag is empty but eta > 0".to_string());
    }

    report
}

/// Torso at `t`: induced bag subgraph plus a clique over each adhesion set
/// with a tree neighbor. Returns the graph on renumbered vertices and the
/// order-preserving id mapping old -> new.
pub fn torso(
    g: &Graph,
    td: &RootedTreeDecomposition,
    t: usize,
) -> Result<(Graph, BTreeMap<Vertex, Vertex>)> {
    td.check_node(t)?;
    let bag = td.bag(t);
    let to_new: BTreeMap<Vertex, Vertex> = bag.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut edges: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    for &u in bag {
        g.check_vertex(u)?;
        for &w in g.neighbors(u) {
            if u < w && bag.contains(&w) {
                edges.insert((to_new[&u], to_new[&w]));
            }
        }
    }
    let mut neighbors: Vec<usize> = td.children(t).to_vec();
    if let Some(p) = td.parent(t) {
        neighbors.push(p);
    }
    for n in neighbors {
        let adh: Vec<Vertex> = td.bag(n).intersection(bag).copied().collect();
        for i in 0..adh.len() {
            for j in i + 1..adh.len() {
                let (a, b) = (to_new[&adh[i]], to_new[&adh[j]]);
                edges.insert((a.min(b), a.max(b)));
            }
        }
    }
    let edges: Vec<_> = edges.into_iter().collect();
    let torso = Graph::from_edges(bag.len(), &edges)?;
    Ok((torso, to_new))
}

/// Truncation at a tree edge: the far-from-root side, re-rooted at a new
/// node carrying the adhesion set of the edge. Also returns the node map
/// old -> new for the retained nodes.
pub fn truncation_with_map(
    td: &RootedTreeDecomposition,
    edge: (usize, usize),
) -> Result<(RootedTreeDecomposition, usize, BTreeMap<usize, usize>)> {
    let (p, c) = edge;
    let adhesion = td.adhesion_set(p, c)?;
    let keep = td.subtree(c);
    let map: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let new_root = keep.len();
    let mut edges = vec![(new_root, map[&c])];
    for &t in &keep {
        if t != c {
            let pt = td.parent(t).expect("non-root of subtree has parent");
            edges.push((map[&pt], map[&t]));
        }
    }
    let mut bags: Vec<BTreeSet<Vertex>> = keep.iter().map(|&t| td.bag(t).clone()).collect();
    bags.push(adhesion);
    let out = RootedTreeDecomposition::from_parts(new_root, &edges, bags)?;
    Ok((out, new_root, map))
}

/// Truncation per the public contract: decomposition plus new root id.
pub fn truncation(
    td: &RootedTreeDecomposition,
    edge: (usize, usize),
) -> Result<(RootedTreeDecomposition, usize)> {
    let (out, root, _) = truncation_with_map(td, edge)?;
    Ok((out, root))
}

/// Normalizes a width-w decomposition into a (w+1, w+1)-construction:
/// reroots at a nonempty bag (smallest node id wins) and prunes subtrees
/// whose bags are all empty.
pub fn make_tw_construction(
    g: &Graph,
    td: &RootedTreeDecomposition,
) -> Result<(RootedTreeDecomposition, ConstructionParams)> {
    let width = td.width();
    let theta = (width + 1).max(0) as usize;
    let params = ConstructionParams::new(theta, theta)?;

    if td.bags.iter().all(|b| b.is_empty()) {
        if g.vertex_count() > 0 {
            return Err(Error::InvalidDecomposition(
                "graph is nonempty but every bag is empty".into(),
            ));
        }
        return Ok((RootedTreeDecomposition::single(BTreeSet::new()), params));
    }

    let rooted = if td.bag(td.root()).is_empty() {
        let new_root = td
            .nodes()
            .find(|&t| !td.bag(t).is_empty())
            .expect("some bag is nonempty");
        td.reroot(new_root)?
    } else {
        td.clone()
    };

    // Drop maximal subtrees in which every bag is empty.
    let mut keep: BTreeSet<usize> = rooted.nodes().collect();
    let mut changed = true;
    while changed {
        changed = false;
        let leaves: Vec<usize> = keep
            .iter()
            .copied()
            .filter(|&t| {
                t != rooted.root()
                    && rooted.bag(t).is_empty()
                    && rooted.children(t).iter().all(|c| !keep.contains(c))
            })
            .collect();
        for t in leaves {
            keep.remove(&t);
            changed = true;
        }
    }
    let (out, _) = rooted.induced_rooted(&keep)?;
    Ok((out, params))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[Vertex]) -> BTreeSet<Vertex> {
        vs.iter().copied().collect()
    }

    fn path_decomposition(n: usize) -> RootedTreeDecomposition {
        // bags {0,1},{1,2},...,{n-2,n-1}
        let bags: Vec<_> = (0..n - 1).map(|i| set(&[i, i + 1])).collect();
        let edges: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
        RootedTreeDecomposition::from_parts(0, &edges, bags).unwrap()
    }

    fn path_graph(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn single_bag_is_valid() {
        let g = path_graph(3);
        let td = RootedTreeDecomposition::single(set(&[0, 1, 2]));
        assert!(validate_tree_decomposition(&g, &td).ok);
    }

    #[test]
    fn missing_edge_coverage_reported() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let td = path_decomposition(3); // bags {0,1},{1,2}: edge (0,2) uncovered
        let report = validate_tree_decomposition(&g, &td);
        assert!(!report.ok);
        assert!(report.violations.iter().any(|v| v.rule == Rule::EdgeCoverage));
    }

    #[test]
    fn disconnected_vertex_trace_reported() {
        let g = path_graph(3);
        let bags = vec![set(&[0, 1]), set(&[1, 2]), set(&[0, 2])];
        // vertex 0 appears in bags 0 and 2, which are not adjacent
        let td =
            RootedTreeDecomposition::from_parts(0, &[(0, 1), (1, 2)], bags).unwrap();
        let report = validate_tree_decomposition(&g, &td);
        assert!(report.violations.iter().any(|v| v.rule == Rule::Connectivity));
    }

    #[test]
    fn adhesion_and_width() {
        let td = path_decomposition(3);
        assert_eq!(td.adhesion(), 1);
        assert_eq!(td.width(), 1);

        let single = RootedTreeDecomposition::single(set(&[0, 1, 2, 3]));
        assert_eq!(single.adhesion(), 0);
        assert_eq!(single.width(), 3);

        let disjoint = RootedTreeDecomposition::from_parts(
            0,
            &[(0, 1)],
            vec![set(&[0, 1]), set(&[2, 3])],
        )
        .unwrap();
        assert_eq!(disjoint.adhesion(), 0);
    }

    #[test]
    fn restrict_bags_identity_empty_and_single_vertex() {
        let g = path_graph(3);
        let td = path_decomposition(3);
        let all: BTreeSet<_> = g.vertices().collect();
        assert_eq!(td.restrict_bags(&all), td);

        let restricted = td.restrict_bags(&BTreeSet::new());
        assert!(restricted.bags.iter().all(|b| b.is_empty()));

        let without_1 = td.restrict_bags(&set(&[0, 2]));
        assert_eq!(without_1.bag(0), &set(&[0]));
        assert_eq!(without_1.bag(1), &set(&[2]));
    }

    #[test]
    fn torso_unfolds_definition() {
        // bags {a,b,c} = {0,1,2} and {b,c,d} = {1,2,3}; graph edges ab, cd
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let td = RootedTreeDecomposition::from_parts(
            0,
            &[(0, 1)],
            vec![set(&[0, 1, 2]), set(&[1, 2, 3])],
        )
        .unwrap();
        let (t0, map) = torso(&g, &td, 0).unwrap();
        // torso at first node: edge ab plus clique on {b,c}
        assert_eq!(t0.edge_count(), 2);
        assert!(t0.has_edge(map[&0], map[&1]));
        assert!(t0.has_edge(map[&1], map[&2]));
    }

    #[test]
    fn torso_of_unique_bag_is_graph() {
        let g = path_graph(4);
        let td = RootedTreeDecomposition::single(g.vertices().collect());
        let (t, _) = torso(&g, &td, 0).unwrap();
        assert_eq!(t, g);
    }

    #[test]
    fn torso_size_one_adhesion_adds_nothing() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let td = RootedTreeDecomposition::from_parts(
            0,
            &[(0, 1)],
            vec![set(&[0, 1]), set(&[1, 2])],
        )
        .unwrap();
        let (t0, _) = torso(&g, &td, 0).unwrap();
        assert_eq!(t0.edge_count(), 1);
    }

    #[test]
    fn truncation_two_node_tree() {
        let td = RootedTreeDecomposition::from_parts(
            0,
            &[(0, 1)],
            vec![set(&[0, 1, 2]), set(&[1, 2, 3])],
        )
        .unwrap();
        let (out, root) = truncation(&td, (0, 1)).unwrap();
        assert_eq!(out.node_count(), 2);
        assert_eq!(root, 1);
        assert_eq!(out.bag(root), &set(&[1, 2]));
        assert_eq!(out.bag(0), &set(&[1, 2, 3]));
    }

    #[test]
    fn truncation_of_path_leaf_edge() {
        let td = path_decomposition(4); // bags {0,1},{1,2},{2,3}
        let (out, root) = truncation(&td, (1, 2)).unwrap();
        assert_eq!(out.node_count(), 2);
        assert_eq!(out.bag(root), &set(&[2]));
        assert_eq!(out.bag(0), &set(&[2, 3]));
        assert!(truncation(&td, (0, 2)).is_err());
    }

    #[test]
    fn construction_checks() {
        let g = path_graph(3);
        let td = path_decomposition(3);
        // width 1 decomposition, nonempty root bag: a (2,2)-construction
        let ok = validate_construction(&g, &td, ConstructionParams::new(2, 2).unwrap());
        assert!(ok.ok, "{:?}", ok.violations);

        // adhesion exceeding theta
        let bad = validate_construction(&g, &td, ConstructionParams::new(0, 0).unwrap());
        assert!(bad.violations.iter().any(|v| v.rule == Rule::Adhesion));

        // eta = 1 with empty root bag
        let td2 = RootedTreeDecomposition::from_parts(
            0,
            &[(0, 1)],
            vec![BTreeSet::new(), set(&[0, 1, 2])],
        )
        .unwrap();
        let r = validate_construction(&g, &td2, ConstructionParams::new(1, 3).unwrap());
        assert!(r.violations.iter().any(|v| v.rule == Rule::C2));
    }

    #[test]
    fn construction_c1_residual_size() {
        // adhesion {0} of size 1 > eta 0, child has pendant path of 3 vertices
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let td = RootedTreeDecomposition::from_parts(
            0,
            &[(0, 1)],
            vec![set(&[0]), set(&[0, 1, 2, 3])],
        )
        .unwrap();
        let r = validate_construction(&g, &td, ConstructionParams::new(0, 4).unwrap());
        assert!(r.violations.iter().any(|v| v.rule == Rule::C1));
        // with eta = 1 the edge is unconstrained
        let r = validate_construction(&g, &td, ConstructionParams::new(1, 4).unwrap());
        assert!(r.ok);
    }

    #[test]
    fn make_tw_construction_normalizes() {
        let g = path_graph(3);
        let td = path_decomposition(3);
        let (out, params) = make_tw_construction(&g, &td).unwrap();
        assert_eq!(params, ConstructionParams { eta: 2, theta: 2 });
        assert!(validate_construction(&g, &out, params).ok);

        // empty root bag: rerooted at the first nonempty bag
        let td2 = RootedTreeDecomposition::from_parts(
            0,
            &[(0, 1), (1, 2)],
            vec![BTreeSet::new(), set(&[0, 1]), set(&[1, 2])],
        )
        .unwrap();
        let (out, params) = make_tw_construction(&g, &td2).unwrap();
        assert!(!out.bag(out.root()).is_empty());
        assert!(validate_construction(&g, &out, params).ok);
        assert!(validate_tree_decomposition(&g, &out).ok);

        // empty graph accepted trivially
        let empty = Graph::empty(0);
        let td3 = RootedTreeDecomposition::single(BTreeSet::new());
        let (_, params) = make_tw_construction(&empty, &td3).unwrap();
        assert_eq!(params, ConstructionParams { eta: 0, theta: 0 });

        // nonempty graph with all-empty bags rejected
        let td4 = RootedTreeDecomposition::single(BTreeSet::new());
        assert!(make_tw_construction(&g, &td4).is_err());
    }

    #[test]
    fn reroot_preserves_validity() {
        let g = path_graph(4);
        let td = path_decomposition(4);
        let rerooted = td.reroot(2).unwrap();
        assert_eq!(rerooted.root(), 2);
        assert!(validate_tree_decomposition(&g, &rerooted).ok);
        assert_eq!(rerooted.adhesion(), td.adhesion());
    }
}
