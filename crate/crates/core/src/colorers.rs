//! User-facing coloring algorithms assembled from the extension engine:
//! precoloring extension over bounded-width decompositions, extension
//! through small pendant pieces, coloring through a torso oracle, and the
//! bipartite-plus-apexes torso colorer.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;

use crate::decomposition::{
    make_tw_construction, validate_tree_decomposition, ConstructionParams,
    RootedTreeDecomposition,
};
use crate::engine::{extend_coloring_with_stats, ChildExtension, EngineInstance, EngineStats, LocalColorer};
use crate::error::{Error, Result};
use crate::graph::{
    bfs_distances, coloring_weak_diameter, coloring_weak_diameter_witness, connected_components,
    induced_subgraph, is_bipartite, Color, Coloring, Distance, Graph, Vertex,
};
use crate::legitimacy::{
    bound_add_centered, bound_all_centered, bound_small_extension_big, bound_torso_big, bound_tw,
    CenteredWitness, LegitimacyParams, ListAssignment,
};

/// Colors every vertex with the smallest color on its list. Sound as a
/// local colorer whenever every component of a child-extension is
/// centered, which holds throughout the bounded-treewidth setting.
pub struct ArbitraryLocalColorer {
    guarantee: BigUint,
}

impl ArbitraryLocalColorer {
    pub fn new(guarantee: BigUint) -> Self {
        ArbitraryLocalColorer { guarantee }
    }

    /// Guarantee for width-w instances: any coloring of a child-extension
    /// stays within the centered-set bound at w+1 centers and radius 2.
    pub fn for_width(w: usize) -> Self {
        ArbitraryLocalColorer {
            guarantee: bound_all_centered(w + 1, 2).max(BigUint::from(4u32)),
        }
    }
}

impl LocalColorer for ArbitraryLocalColorer {
    fn guarantee(&self) -> BigUint {
        self.guarantee.clone()
    }

    fn color(&self, ext: &ChildExtension, lists: &ListAssignment) -> Result<Coloring> {
        Ok(Coloring::from_pairs(
            ext.graph.vertices().map(|v| (v, lists.smallest(v))),
        ))
    }

    fn describe(&self) -> String {
        "smallest-list-color local colorer".into()
    }
}

/// Outcome of a colorer run: the coloring, its measured weak diameter,
/// the declared bound it obeys, and the engine's self-check counters.
#[derive(Clone, Debug)]
pub struct ColoringOutcome {
    pub coloring: Coloring,
    pub weak_diameter: Distance,
    pub bound: BigUint,
    pub stats: EngineStats,
}

/// Extends a precoloring of weak diameter at most k to a total coloring
/// from lists of size two over a width-w decomposition; the result has
/// weak diameter at most `bound_tw(width, k)`.
pub fn color_bounded_treewidth(
    g: &Graph,
    td: &RootedTreeDecomposition,
    lists: &ListAssignment,
    precoloring: &Coloring,
    k: usize,
) -> Result<ColoringOutcome> {
    color_bounded_treewidth_opts(g, td, lists, precoloring, k, false)
}

/// `color_bounded_treewidth` with the strict per-subset gadget count.
pub fn color_bounded_treewidth_opts(
    g: &Graph,
    td: &RootedTreeDecomposition,
    lists: &ListAssignment,
    precoloring: &Coloring,
    k: usize,
    strict_gadgets: bool,
) -> Result<ColoringOutcome> {
    let report = validate_tree_decomposition(g, td);
    if !report.ok {
        return Err(Error::rejected(format!(
            "invalid tree decomposition: {} violations",
            report.violations.len()
        )));
    }
    if lists.vertex_count() != g.vertex_count() {
        return Err(Error::rejected("list assignment does not cover the graph"));
    }
    for v in g.vertices() {
        if lists.list(v).len() != 2 {
            return Err(Error::rejected(format!(
                "vertex {v} has a list of size {}, need exactly 2",
                lists.list(v).len()
            )));
        }
    }
    if !lists.respected_by(precoloring) {
        return Err(Error::rejected("precoloring violates a list"));
    }
    let k = k.max(1);
    let (diameter, pair) = coloring_weak_diameter_witness(g, precoloring)?;
    if !diameter.le_int(&BigUint::from(k)) {
        let (a, b) = pair.expect("a stretched component has at least two vertices");
        return Err(Error::PrecoloringTooSpread {
            a,
            b,
            distance: diameter,
            limit: k,
        });
    }

    let w = td.width().max(1) as usize;
    let (construction, params) = make_tw_construction(g, td)?;

    // singleton lists on the precolored vertices
    let mut singleton_lists = Vec::with_capacity(g.vertex_count());
    for v in g.vertices() {
        match precoloring.get(v) {
            Some(c) => singleton_lists.push(BTreeSet::from([c])),
            None => singleton_lists.push(lists.list(v).clone()),
        }
    }
    let working = ListAssignment::new(lists.palette().clone(), singleton_lists)?;

    // each precolored bag vertex is its own center at radius zero
    let forced = working.one_list_set();
    let mut witnesses = BTreeMap::new();
    for t in construction.nodes() {
        let centers: BTreeSet<Vertex> =
            forced.intersection(construction.bag(t)).copied().collect();
        if !centers.is_empty() {
            witnesses.insert(t, CenteredWitness::new(centers, 0));
        }
    }

    let legitimacy = LegitimacyParams::new(2, w + 1, 1, k)?;
    let colorer = ArbitraryLocalColorer::for_width(w);
    let instance = EngineInstance {
        graph: g,
        decomposition: &construction,
        params,
        legitimacy,
        lists: &working,
        witnesses: &witnesses,
        precoloring: &Coloring::new(),
        colorer: &colorer,
        strict_gadgets,
    };
    let (coloring, stats) = extend_coloring_with_stats(&instance)?;

    let bound = bound_tw(w, k)?;
    let weak_diameter = coloring_weak_diameter(g, &coloring)?;
    if !coloring.extends(precoloring) || !lists.respected_by(&coloring) {
        return Err(Error::invariant("treewidth colorer output check failed"));
    }
    if !weak_diameter.le_int(&bound) {
        return Err(Error::invariant(format!(
            "treewidth colorer exceeded its bound: {weak_diameter} > {bound}"
        )));
    }
    Ok(ColoringOutcome {
        coloring,
        weak_diameter,
        bound,
        stats,
    })
}

/// A procedure coloring contracted branch graphs, with a declared
/// guarantee on the weak diameter of its output in the graph it is given.
pub trait TorsoOracle {
    fn guarantee(&self) -> BigUint;
    /// `original_ids[v]` is the vertex id in the caller's input graph.
    fn color(
        &self,
        w: &Graph,
        lists: &ListAssignment,
        original_ids: &[Vertex],
    ) -> Result<Coloring>;
    fn describe(&self) -> String {
        "torso oracle".into()
    }
}

/// Extends an inner coloring of the contracted graph (pendant components
/// collapsed to cliques over their attachments) to the whole graph with
/// smallest list colors; the result has weak diameter at most
/// (d+2)N + 2d + 2 when every pendant component has diameter at most d
/// and the inner coloring has weak diameter at most N.
pub fn small_extension_color(
    g: &Graph,
    lists: &ListAssignment,
    s: &BTreeSet<Vertex>,
    d: usize,
    original_ids: &[Vertex],
    inner: &dyn TorsoOracle,
) -> Result<Coloring> {
    for &v in s {
        g.check_vertex(v)?;
    }
    let outside: BTreeSet<Vertex> = g.vertices().filter(|v| !s.contains(v)).collect();
    let (residual, rmap) = induced_subgraph(g, &outside)?;
    let rinv: BTreeMap<Vertex, Vertex> = rmap.iter().map(|(&a, &b)| (b, a)).collect();
    let comps = connected_components(&residual);
    for comp in &comps {
        let mut diameter = 0usize;
        for &v in comp {
            let dist = bfs_distances(&residual, &BTreeSet::from([v]))?;
            for &w in comp {
                match dist[w] {
                    Distance::Finite(x) => diameter = diameter.max(x),
                    Distance::Infinite => {
                        return Err(Error::invariant("component of itself disconnected"))
                    }
                }
            }
        }
        if diameter > d {
            return Err(Error::rejected(format!(
                "a component outside the kept set has diameter {diameter} > {d}"
            )));
        }
    }

    // contracted graph: kept set plus a clique over each component's
    // closed neighborhood in the kept set
    let smap: BTreeMap<Vertex, Vertex> = s.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut edges: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    for &u in s {
        for &w in g.neighbors(u) {
            if u < w && s.contains(&w) {
                edges.insert((smap[&u], smap[&w]));
            }
        }
    }
    for comp in &comps {
        let mut attach: BTreeSet<Vertex> = BTreeSet::new();
        for &cv in comp {
            let orig = rinv[&cv];
            for &w in g.neighbors(orig) {
                if s.contains(&w) {
                    attach.insert(smap[&w]);
                }
            }
        }
        let attach: Vec<Vertex> = attach.into_iter().collect();
        for i in 0..attach.len() {
            for j in i + 1..attach.len() {
                edges.insert((attach[i].min(attach[j]), attach[i].max(attach[j])));
            }
        }
    }
    let edges: Vec<(Vertex, Vertex)> = edges.into_iter().collect();
    let contracted = Graph::from_edges(s.len(), &edges)?;
    let contracted_lists = lists.relabel(&smap, s.len());
    let contracted_ids: Vec<Vertex> = s.iter().map(|&v| original_ids[v]).collect();

    let inner_coloring = inner.color(&contracted, &contracted_lists, &contracted_ids)?;
    if inner_coloring.len() != contracted.vertex_count()
        || !contracted_lists.respected_by(&inner_coloring)
    {
        return Err(Error::invariant("torso oracle output is not a list coloring"));
    }
    let (measured, pair) = coloring_weak_diameter_witness(&contracted, &inner_coloring)?;
    let oracle_guarantee = inner.guarantee();
    if !measured.le_int(&oracle_guarantee) {
        return Err(Error::ContractViolation {
            who: inner.describe(),
            measured,
            guarantee: oracle_guarantee,
            pair,
        });
    }

    let sinv: BTreeMap<Vertex, Vertex> = smap.iter().map(|(&a, &b)| (b, a)).collect();
    let mut out = inner_coloring.relabel(&sinv);
    for &v in &outside {
        out.set(v, lists.smallest(v));
    }
    let bound = bound_small_extension_big(d, &inner.guarantee());
    let achieved = coloring_weak_diameter(g, &out)?;
    if !achieved.le_int(&bound) {
        return Err(Error::invariant(format!(
            "small extension exceeded its bound: {achieved} > {bound}"
        )));
    }
    Ok(out)
}

/// Local colorer for the torso pipeline: contract pendant pieces, hand
/// the contracted graph (a subgraph of a torso) to the oracle, extend
/// back with smallest list colors.
struct TorsoLocalColorer<'a> {
    oracle: &'a dyn TorsoOracle,
    guarantee: BigUint,
}

impl LocalColorer for TorsoLocalColorer<'_> {
    fn guarantee(&self) -> BigUint {
        self.guarantee.clone()
    }

    fn describe(&self) -> String {
        format!("torso local colorer[{}]", self.oracle.describe())
    }

    fn color(&self, ext: &ChildExtension, lists: &ListAssignment) -> Result<Coloring> {
        let ids: Vec<Vertex> = ext
            .origins
            .iter()
            .enumerate()
            .map(|(v, o)| {
                if ext.bag.contains(&v) {
                    o.ok_or_else(|| {
                        Error::invariant("bag vertex without an original id reached the oracle")
                    })
                } else {
                    // pendant vertices are contracted away before the
                    // oracle sees the graph; auxiliary ids are fine
                    Ok(o.unwrap_or(usize::MAX))
                }
            })
            .collect::<Result<_>>()?;
        small_extension_color(&ext.graph, lists, &ext.bag, 1, &ids, self.oracle)
    }
}

/// Colors the whole graph through an oracle for subgraphs of torsos, over
/// a decomposition of adhesion at most p; the result has weak diameter at
/// most `bound_torso(p, N)` for the oracle guarantee N.
pub fn color_with_torso_oracle(
    g: &Graph,
    td: &RootedTreeDecomposition,
    lists: &ListAssignment,
    oracle: &dyn TorsoOracle,
) -> Result<ColoringOutcome> {
    color_with_torso_oracle_opts(g, td, lists, oracle, false)
}

/// `color_with_torso_oracle` with the strict per-subset gadget count.
pub fn color_with_torso_oracle_opts(
    g: &Graph,
    td: &RootedTreeDecomposition,
    lists: &ListAssignment,
    oracle: &dyn TorsoOracle,
    strict_gadgets: bool,
) -> Result<ColoringOutcome> {
    let report = validate_tree_decomposition(g, td);
    if !report.ok {
        return Err(Error::rejected(format!(
            "invalid tree decomposition: {} violations",
            report.violations.len()
        )));
    }
    if lists.vertex_count() != g.vertex_count() {
        return Err(Error::rejected("list assignment does not cover the graph"));
    }
    let m = match g.vertices().map(|v| lists.list(v).len()).min() {
        Some(m) => m,
        None => {
            // empty graph
            return Ok(ColoringOutcome {
                coloring: Coloring::new(),
                weak_diameter: Distance::Finite(0),
                bound: BigUint::from(0u32),
                stats: EngineStats::default(),
            });
        }
    };
    if m < 2 || g.vertices().any(|v| lists.list(v).len() != m) {
        return Err(Error::rejected(
            "torso coloring needs uniform list sizes of at least 2",
        ));
    }
    let p = (td.adhesion().max(1)).max(1);

    // root the engine at an artificial singleton bag above a nonempty bag
    let base = match td.nodes().find(|&t| !td.bag(t).is_empty()) {
        Some(t) => t,
        None => return Err(Error::rejected("all bags are empty on a nonempty graph")),
    };
    let rerooted = td.reroot(base)?;
    let v0 = *rerooted.bag(rerooted.root()).iter().next().unwrap();
    let mut bags: Vec<BTreeSet<Vertex>> = rerooted.nodes().map(|t| rerooted.bag(t).clone()).collect();
    let mut edges = rerooted.edges();
    let new_root = bags.len();
    edges.push((new_root, rerooted.root()));
    bags.push(BTreeSet::from([v0]));
    let construction = RootedTreeDecomposition::from_parts(new_root, &edges, bags)?;
    let params = ConstructionParams::new(p, p)?;

    let oracle_n = oracle.guarantee();
    let local = TorsoLocalColorer {
        oracle,
        guarantee: BigUint::from(3u32) * &oracle_n + BigUint::from(4u32),
    };
    let legitimacy = LegitimacyParams::new(m, p, 1, 1)?;
    let witnesses = BTreeMap::new();
    let instance = EngineInstance {
        graph: g,
        decomposition: &construction,
        params,
        legitimacy,
        lists,
        witnesses: &witnesses,
        precoloring: &Coloring::new(),
        colorer: &local,
        strict_gadgets,
    };
    let (coloring, stats) = extend_coloring_with_stats(&instance)?;

    let bound = bound_torso_big(p, &oracle_n)?;
    let weak_diameter = coloring_weak_diameter(g, &coloring)?;
    if !lists.respected_by(&coloring) || !weak_diameter.le_int(&bound) {
        return Err(Error::invariant("torso pipeline output check failed"));
    }
    Ok(ColoringOutcome {
        coloring,
        weak_diameter,
        bound,
        stats,
    })
}

/// Proper two-coloring of a bipartite graph after removing an apex set,
/// with the smallest palette color on the apexes; weak diameter at most
/// `bound_add_centered(|z|, 0, 1)`.
pub fn bipartite_apex_color(
    g: &Graph,
    apexes: &BTreeSet<Vertex>,
    palette: [Color; 3],
) -> Result<Coloring> {
    for &v in apexes {
        g.check_vertex(v)?;
    }
    let mut palette_sorted = palette;
    palette_sorted.sort_unstable();
    let keep: BTreeSet<Vertex> = g.vertices().filter(|v| !apexes.contains(v)).collect();
    let (rest, map) = induced_subgraph(g, &keep)?;
    let Some((side_a, _)) = is_bipartite(&rest) else {
        return Err(Error::rejected(
            "graph minus the apex set is not bipartite",
        ));
    };
    let mut out = Coloring::new();
    for (&orig, &new) in &map {
        let color = if side_a.contains(&new) {
            palette_sorted[0]
        } else {
            palette_sorted[1]
        };
        out.set(orig, color);
    }
    for &v in apexes {
        out.set(v, palette_sorted[0]);
    }
    let bound = bound_add_centered(apexes.len(), 0, 1);
    let measured = coloring_weak_diameter(g, &out)?;
    if !measured.le_int(&bound) {
        return Err(Error::invariant(format!(
            "bipartite apex coloring exceeded its bound: {measured} > {bound}"
        )));
    }
    Ok(out)
}

/// Brute-force torso oracle: smallest achievable weak diameter on graphs
/// up to a size limit; the guarantee is size_limit - 1 since a connected
/// monochromatic component can never stretch farther.
pub struct BruteForceTorsoOracle {
    pub size_limit: usize,
    pub cap: u64,
}

impl TorsoOracle for BruteForceTorsoOracle {
    fn guarantee(&self) -> BigUint {
        BigUint::from(self.size_limit.saturating_sub(1).max(1))
    }

    fn color(&self, w: &Graph, lists: &ListAssignment, _ids: &[Vertex]) -> Result<Coloring> {
        if w.vertex_count() > self.size_limit {
            return Err(Error::rejected(format!(
                "brute-force oracle limited to {} vertices, got {}",
                self.size_limit,
                w.vertex_count()
            )));
        }
        match crate::oracle::brute_force_min_weak_diameter(w, lists, self.cap)? {
            crate::oracle::BruteForceOutcome::Found { witness, .. } => Ok(witness),
            crate::oracle::BruteForceOutcome::TooLarge { product } => {
                Err(Error::TooLarge { product, cap: self.cap })
            }
        }
    }

    fn describe(&self) -> String {
        "brute-force torso oracle".into()
    }
}

/// Torso oracle that strips a per-graph apex set (mapped through original
/// vertex ids) and properly two-colors the bipartite remainder.
pub struct BipartiteApexTorsoOracle {
    pub apexes: BTreeSet<Vertex>,
    pub palette: [Color; 3],
}

impl TorsoOracle for BipartiteApexTorsoOracle {
    fn guarantee(&self) -> BigUint {
        bound_add_centered(self.apexes.len(), 0, 1).max(BigUint::from(1u32))
    }

    fn color(&self, w: &Graph, lists: &ListAssignment, ids: &[Vertex]) -> Result<Coloring> {
        for v in w.vertices() {
            for c in self.palette {
                if !lists.list(v).contains(&c) {
                    return Err(Error::rejected(format!(
                        "list at vertex {v} misses palette color {c}"
                    )));
                }
            }
        }
        let local_apexes: BTreeSet<Vertex> = w
            .vertices()
            .filter(|&v| self.apexes.contains(&ids[v]))
            .collect();
        bipartite_apex_color(w, &local_apexes, self.palette)
    }

    fn describe(&self) -> String {
        "bipartite-apex torso oracle".into()
    }
}
