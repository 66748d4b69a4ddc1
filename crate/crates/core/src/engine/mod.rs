//! The recursive precoloring-extension engine.
//!
//! Given a graph with an (eta, theta)-construction, a legitimate
//! list-assignment, a local colorer for child-extensions and a precoloring
//! of a ball around the root bag, `extend_coloring` produces a total
//! list-coloring whose weak diameter is bounded by the `bound_fstar`
//! recursion. Control flow:
//!
//! 1. precolored set equal to the whole graph: return the precoloring;
//! 2. eta = 0: the tree splits at empty adhesions into stars, each star
//!    region is one child-extension handed to the local colorer, and the
//!    precoloring is folded back in;
//! 3. disconnected graphs are split per component;
//! 4. eta >= 1: the precoloring is normalized to the full root ball, a
//!    gadget graph simulating the pruned branches is built over the region
//!    the ball touches, the engine recurses on it at eta - 1 with a
//!    wrapped colorer, a buffer coloring is laid down along each branch
//!    boundary, and the engine recurses into each branch at the same eta.
//!
//! Structural self-checks (boundedness of every intermediate coloring, the
//! gadget forced-coloring check, descent validation, strict decrease of
//! the recursion measure) are always on; a failed check aborts the run.

use std::collections::{BTreeMap, BTreeSet};
use std::rc::Rc;

use num_bigint::BigUint;

use crate::decomposition::{
    validate_construction, validate_tree_decomposition, ConstructionParams,
    RootedTreeDecomposition, ValidationReport,
};
use crate::error::{Error, Result};
use crate::graph::{
    ball, coloring_weak_diameter, coloring_weak_diameter_witness, connected_components,
    induced_subgraph, Coloring, Graph, Vertex,
};
use crate::legitimacy::{
    bound_all_centered, bound_fstar, check_legitimate, fstar_f2, fstar_n1, BoundParams,
    CenteredWitness, LegitimacyParams, ListAssignment,
};

mod structure;

pub use structure::partition_boundary;

/// A bag graph together with pendant pieces: every component outside the
/// bag has at most two vertices and attaches only to bag vertices.
#[derive(Clone, Debug)]
pub struct ChildExtension {
    pub graph: Graph,
    pub bag: BTreeSet<Vertex>,
    /// Per vertex, the id it carries in the caller's original graph;
    /// `None` for engine-created auxiliary vertices (which only ever
    /// appear as pendants).
    pub origins: Vec<Option<Vertex>>,
}

impl ChildExtension {
    /// Checks the pendant structure.
    pub fn validate(&self) -> Result<()> {
        for &v in &self.bag {
            self.graph.check_vertex(v)?;
        }
        if self.origins.len() != self.graph.vertex_count() {
            return Err(Error::invariant(
                "child-extension origin table size mismatch",
            ));
        }
        let outside: BTreeSet<Vertex> = self
            .graph
            .vertices()
            .filter(|v| !self.bag.contains(v))
            .collect();
        let (residual, _) = induced_subgraph(&self.graph, &outside)?;
        for comp in connected_components(&residual) {
            if comp.len() > 2 {
                return Err(Error::invariant(format!(
                    "child-extension pendant component has {} > 2 vertices",
                    comp.len()
                )));
            }
        }
        Ok(())
    }
}

/// A procedure that colors child-extensions, with a declared guarantee:
/// the returned coloring respects the given lists and has weak diameter at
/// most `guarantee()` in the extension graph.
pub trait LocalColorer {
    fn guarantee(&self) -> BigUint;
    fn color(&self, ext: &ChildExtension, lists: &ListAssignment) -> Result<Coloring>;
    /// Label used in contract-violation reports.
    fn describe(&self) -> String {
        "local colorer".into()
    }
}

/// Everything a run needs. The precoloring domain must sit inside the
/// ball of radius (k+2)(theta+1) around the root bag.
pub struct EngineInstance<'a> {
    pub graph: &'a Graph,
    pub decomposition: &'a RootedTreeDecomposition,
    pub params: ConstructionParams,
    pub legitimacy: LegitimacyParams,
    pub lists: &'a ListAssignment,
    pub witnesses: &'a BTreeMap<usize, CenteredWitness>,
    pub precoloring: &'a Coloring,
    pub colorer: &'a dyn LocalColorer,
    /// When set, one gadget vertex is created per m-subset of the whole
    /// color universe instead of only the subsets that buffer vertices
    /// can look up. Behavior is identical; the count matches the
    /// construction as written.
    pub strict_gadgets: bool,
}

/// Counters for the always-on structural assertions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub levels: usize,
    pub max_depth: usize,
    pub local_colorings: usize,
    pub gadget_soundness_checks: usize,
    pub level_validations: usize,
    pub measure_checks: usize,
    pub bound_checks: usize,
}

impl EngineStats {
    pub fn absorb(&mut self, other: &EngineStats) {
        self.levels += other.levels;
        self.max_depth = self.max_depth.max(other.max_depth);
        self.local_colorings += other.local_colorings;
        self.gadget_soundness_checks += other.gadget_soundness_checks;
        self.level_validations += other.level_validations;
        self.measure_checks += other.measure_checks;
        self.bound_checks += other.bound_checks;
    }
}

/// How a tree node came to be; drives local-coloring dispatch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum NodeTag {
    /// Present in (or derived from) the caller's decomposition: the
    /// instance's local colorer handles its child-extensions.
    Inherited,
    /// Gadget leaf created at a descent: every component of a
    /// child-extension here sits within distance 2 of the adhesion set,
    /// so any list coloring is bounded.
    GadgetBag,
    /// Artificial root with at most one bag vertex: components of its
    /// child-extensions have diameter at most 4.
    SingletonRoot,
}

pub(crate) struct Ctx {
    pub leg: LegitimacyParams,
    pub bp: BoundParams,
    pub strict_gadgets: bool,
    pub stats: EngineStats,
}

pub(crate) type Measure = (usize, usize, usize);

/// One recursion level, self-contained: its own graph, decomposition,
/// lists and precoloring, plus the trail back to original vertex ids.
pub(crate) struct Level<'a> {
    pub graph: Graph,
    pub td: RootedTreeDecomposition,
    pub tags: Vec<NodeTag>,
    pub eta: usize,
    pub lists: ListAssignment,
    pub witnesses: BTreeMap<usize, CenteredWitness>,
    pub z: BTreeSet<Vertex>,
    pub c_z: Coloring,
    pub colorer: Rc<dyn LocalColorer + 'a>,
    pub level_n: BigUint,
    pub origins: Vec<Option<Vertex>>,
    pub depth: usize,
    pub internal: bool,
}

impl<'a> Level<'a> {
    pub(crate) fn measure(&self) -> Measure {
        (
            self.eta,
            self.graph.vertex_count() - self.z.len() + self.graph.vertex_count(),
            self.td.node_count(),
        )
    }

    pub(crate) fn fail(&self, report: impl Into<String>) -> Error {
        let msg = report.into();
        if self.internal {
            Error::invariant(msg)
        } else {
            Error::rejected(msg)
        }
    }
}

struct BorrowedColorer<'a>(&'a dyn LocalColorer);

impl LocalColorer for BorrowedColorer<'_> {
    fn guarantee(&self) -> BigUint {
        self.0.guarantee()
    }
    fn color(&self, ext: &ChildExtension, lists: &ListAssignment) -> Result<Coloring> {
        self.0.color(ext, lists)
    }
    fn describe(&self) -> String {
        self.0.describe()
    }
}

/// The descent-level colorer. Bags with at most one vertex are colored
/// with smallest list colors (their extensions have diameter at most 4);
/// larger bags delegate to the parent with singleton lists on the bag
/// enlarged to size m, then restore the forced colors.
pub struct WrappedColorer<'a> {
    parent: Rc<dyn LocalColorer + 'a>,
    m: usize,
    guarantee: BigUint,
}

/// Wraps a colorer for one descent level; the new guarantee is
/// `n1 + f2(parent guarantee)` in the bound recursion's base functions.
pub fn wrap_local_colorer<'a>(
    parent: Rc<dyn LocalColorer + 'a>,
    leg: &LegitimacyParams,
    bp: &BoundParams,
) -> Rc<WrappedColorer<'a>> {
    let guarantee = fstar_n1(bp) + fstar_f2(bp, &parent.guarantee());
    Rc::new(WrappedColorer {
        parent,
        m: leg.m,
        guarantee,
    })
}

impl<'a> LocalColorer for WrappedColorer<'a> {
    fn guarantee(&self) -> BigUint {
        self.guarantee.clone()
    }

    fn describe(&self) -> String {
        format!("wrapped[{}]", self.parent.describe())
    }

    fn color(&self, ext: &ChildExtension, lists: &ListAssignment) -> Result<Coloring> {
        if ext.bag.len() <= 1 {
            let c = smallest_list_coloring(lists);
            let measured = coloring_weak_diameter(&ext.graph, &c)?;
            if !measured.le_int(&BigUint::from(4u32)) {
                return Err(Error::invariant(format!(
                    "extension at a singleton bag has weak diameter {measured} > 4"
                )));
            }
            return Ok(c);
        }
        let forced: BTreeSet<Vertex> = lists
            .one_list_set()
            .intersection(&ext.bag)
            .copied()
            .collect();
        let enlarged = lists.with_enlarged(&forced, self.m);
        let c = self.parent.color(ext, &enlarged)?;
        check_local_output(&ext.graph, &enlarged, &c)?;
        let (measured, pair) = coloring_weak_diameter_witness(&ext.graph, &c)?;
        let parent_guarantee = self.parent.guarantee();
        if !measured.le_int(&parent_guarantee) {
            return Err(Error::ContractViolation {
                who: self.parent.describe(),
                measured,
                guarantee: parent_guarantee,
                pair,
            });
        }
        let mut out = c;
        for &v in &forced {
            out.set(v, lists.smallest(v));
        }
        Ok(out)
    }
}

/// Smallest list color for every vertex.
pub(crate) fn smallest_list_coloring(lists: &ListAssignment) -> Coloring {
    Coloring::from_pairs((0..lists.vertex_count()).map(|v| (v, lists.smallest(v))))
}

fn check_local_output(graph: &Graph, lists: &ListAssignment, c: &Coloring) -> Result<()> {
    if c.len() != graph.vertex_count() {
        return Err(Error::invariant(format!(
            "local colorer returned {} colors for {} vertices",
            c.len(),
            graph.vertex_count()
        )));
    }
    if !lists.respected_by(c) {
        return Err(Error::invariant("local colorer violated a list assignment"));
    }
    Ok(())
}

pub(crate) fn invert_map(map: &BTreeMap<Vertex, Vertex>) -> BTreeMap<Vertex, Vertex> {
    map.iter().map(|(&a, &b)| (b, a)).collect()
}

/// Extends the instance's precoloring to a total list-coloring with weak
/// diameter at most `bound_fstar(params, eta, colorer guarantee)`.
pub fn extend_coloring(inst: &EngineInstance) -> Result<Coloring> {
    extend_coloring_with_stats(inst).map(|(c, _)| c)
}

/// Like `extend_coloring`, also reporting the self-check counters.
pub fn extend_coloring_with_stats(inst: &EngineInstance) -> Result<(Coloring, EngineStats)> {
    let bp = BoundParams::new(
        inst.params.theta,
        inst.legitimacy.s,
        inst.legitimacy.r,
        inst.legitimacy.k,
    )?;
    let guarantee = inst.colorer.guarantee();
    if guarantee < BigUint::from(4u32) {
        return Err(Error::rejected(format!(
            "local colorer guarantee must be at least 4, got {guarantee}"
        )));
    }
    let n = inst.graph.vertex_count();
    let level = Level {
        graph: inst.graph.clone(),
        td: inst.decomposition.clone(),
        tags: vec![NodeTag::Inherited; inst.decomposition.node_count()],
        eta: inst.params.eta,
        lists: inst.lists.clone(),
        witnesses: inst.witnesses.clone(),
        z: inst.precoloring.domain(),
        c_z: inst.precoloring.clone(),
        colorer: Rc::new(BorrowedColorer(inst.colorer)),
        level_n: guarantee,
        origins: (0..n).map(Some).collect(),
        depth: 0,
        internal: false,
    };
    let mut ctx = Ctx {
        leg: inst.legitimacy,
        bp,
        strict_gadgets: inst.strict_gadgets,
        stats: EngineStats::default(),
    };
    let coloring = solve(&mut ctx, level, None)?;
    Ok((coloring, ctx.stats))
}

fn report_text(kind: &str, report: &ValidationReport) -> String {
    let details: Vec<String> = report
        .violations
        .iter()
        .map(|v| format!("{:?}: {}", v.rule, v.location))
        .collect();
    format!("{kind} failed: {}", details.join("; "))
}

fn entry_validate(ctx: &mut Ctx, lv: &Level) -> Result<()> {
    let params =
        ConstructionParams::new(lv.eta, ctx.bp.theta).map_err(|e| lv.fail(e.to_string()))?;
    let tdr = validate_tree_decomposition(&lv.graph, &lv.td);
    if !tdr.ok {
        return Err(lv.fail(report_text("tree-decomposition validation", &tdr)));
    }
    let cr = validate_construction(&lv.graph, &lv.td, params);
    if !cr.ok {
        return Err(lv.fail(report_text("construction validation", &cr)));
    }
    let lr = check_legitimate(&lv.graph, &lv.td, &lv.lists, ctx.leg, &lv.witnesses)?;
    if !lr.ok {
        return Err(lv.fail(report_text("legitimacy check", &lr)));
    }
    for &v in &lv.z {
        lv.graph.check_vertex(v).map_err(|e| lv.fail(e.to_string()))?;
    }
    if lv.c_z.domain() != lv.z {
        return Err(lv.fail("precoloring domain differs from the precolored set"));
    }
    if !lv.lists.respected_by(&lv.c_z) {
        return Err(lv.fail("precoloring violates the list assignment"));
    }
    let root_ball = ball(&lv.graph, lv.td.bag(lv.td.root()), ctx.bp.root_ball_radius())?;
    if !lv.z.is_subset(&root_ball) {
        return Err(lv.fail(format!(
            "precolored set leaves the radius-{} ball around the root bag",
            ctx.bp.root_ball_radius()
        )));
    }
    ctx.stats.level_validations += 1;
    Ok(())
}

fn self_check_final(ctx: &mut Ctx, lv: &Level, c: &Coloring) -> Result<Coloring> {
    if c.len() != lv.graph.vertex_count() {
        return Err(Error::invariant(format!(
            "final coloring covers {} of {} vertices",
            c.len(),
            lv.graph.vertex_count()
        )));
    }
    if !lv.lists.respected_by(c) {
        return Err(Error::invariant("final coloring violates a list"));
    }
    if !c.extends(&lv.c_z) {
        return Err(Error::invariant(
            "final coloring does not extend the precoloring",
        ));
    }
    let bound = bound_fstar(&ctx.bp, lv.eta, &lv.level_n)?;
    let measured = coloring_weak_diameter(&lv.graph, c)?;
    if !measured.le_int(&bound) {
        return Err(Error::invariant(format!(
            "weak diameter {measured} exceeds the guarantee {bound} at eta {}",
            lv.eta
        )));
    }
    ctx.stats.bound_checks += 1;
    Ok(c.clone())
}

pub(crate) fn solve(ctx: &mut Ctx, lv: Level, parent: Option<Measure>) -> Result<Coloring> {
    ctx.stats.levels += 1;
    ctx.stats.max_depth = ctx.stats.max_depth.max(lv.depth);
    let measure = lv.measure();
    if let Some(pm) = parent {
        if measure >= pm {
            return Err(Error::invariant(format!(
                "recursion measure did not decrease: {measure:?} vs {pm:?}"
            )));
        }
        ctx.stats.measure_checks += 1;
    }
    entry_validate(ctx, &lv)?;

    if lv.z.len() == lv.graph.vertex_count() {
        let c = lv.c_z.clone();
        return self_check_final(ctx, &lv, &c);
    }
    if lv.eta == 0 {
        return solve_base(ctx, lv);
    }
    let comps = connected_components(&lv.graph);
    if comps.len() > 1 {
        return solve_components(ctx, lv, measure, comps);
    }
    structure::solve_main(ctx, lv, measure)
}

/// eta = 0: the tree splits at empty-adhesion edges into stars; each star
/// region is one child-extension.
fn solve_base(ctx: &mut Ctx, lv: Level) -> Result<Coloring> {
    let groups = star_groups(&lv.td);
    let depths = lv.td.depths();
    let mut c_all = Coloring::new();
    let mut colored = 0usize;
    for group in groups {
        let verts: BTreeSet<Vertex> = group
            .iter()
            .flat_map(|&t| lv.td.bag(t).iter().copied())
            .collect();
        if verts.is_empty() {
            continue;
        }
        let top = *group
            .iter()
            .min_by_key(|&&t| (depths[t], t))
            .expect("group nonempty");
        for &t in &group {
            if t == top {
                continue;
            }
            if lv.td.parent(t) != Some(top) || !lv.td.children(t).is_empty() {
                return Err(Error::invariant(
                    "an empty-adhesion region of the tree is not a star",
                ));
            }
        }
        let (ext_graph, map) = induced_subgraph(&lv.graph, &verts)?;
        let bag: BTreeSet<Vertex> = lv.td.bag(top).iter().map(|v| map[v]).collect();
        let inv = invert_map(&map);
        let origins: Vec<Option<Vertex>> = (0..ext_graph.vertex_count())
            .map(|v| lv.origins[inv[&v]])
            .collect();
        let ext = ChildExtension {
            graph: ext_graph,
            bag,
            origins,
        };
        ext.validate()?;
        check_pendant_attachments(&lv, &group, top)?;
        let ext_lists = lv.lists.relabel(&map, ext.graph.vertex_count());
        let coloring = dispatch_local_coloring(ctx, &lv, lv.tags[top], &ext, &ext_lists)?;
        colored += coloring.len();
        c_all = c_all.union(&coloring.relabel(&inv))?;
    }
    if colored != lv.graph.vertex_count() || c_all.len() != lv.graph.vertex_count() {
        return Err(Error::invariant("star regions did not partition the graph"));
    }
    let merged = c_all.restrict_out(&lv.z).union(&lv.c_z)?;
    self_check_final(ctx, &lv, &merged)
}

/// Components of the tree after removing empty-adhesion edges, each a
/// sorted node list.
fn star_groups(td: &RootedTreeDecomposition) -> Vec<Vec<usize>> {
    let mut group_of = vec![usize::MAX; td.node_count()];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for t in td.nodes() {
        if group_of[t] != usize::MAX {
            continue;
        }
        let id = groups.len();
        let mut stack = vec![t];
        let mut members = Vec::new();
        group_of[t] = id;
        while let Some(u) = stack.pop() {
            members.push(u);
            let mut neighbors: Vec<usize> = td.children(u).to_vec();
            if let Some(p) = td.parent(u) {
                neighbors.push(p);
            }
            for w in neighbors {
                if group_of[w] != usize::MAX {
                    continue;
                }
                let adhesion_empty = td.bag(u).intersection(td.bag(w)).next().is_none();
                if !adhesion_empty {
                    group_of[w] = id;
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        groups.push(members);
    }
    groups
}

/// Pendant vertices contributed by each star leaf may only attach to the
/// adhesion set they cross.
fn check_pendant_attachments(lv: &Level, group: &[usize], top: usize) -> Result<()> {
    let top_bag = lv.td.bag(top);
    for &leaf in group {
        if leaf == top {
            continue;
        }
        let adhesion: BTreeSet<Vertex> = lv.td.bag(leaf).intersection(top_bag).copied().collect();
        for &w in lv.td.bag(leaf) {
            if top_bag.contains(&w) {
                continue;
            }
            for &b in lv.graph.neighbors(w) {
                if top_bag.contains(&b) && !adhesion.contains(&b) {
                    return Err(Error::invariant(format!(
                        "pendant vertex {w} attaches outside its adhesion set"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Colors one child-extension according to the node's provenance,
/// checking the applicable bound.
pub(crate) fn dispatch_local_coloring(
    ctx: &mut Ctx,
    lv: &Level,
    tag: NodeTag,
    ext: &ChildExtension,
    lists: &ListAssignment,
) -> Result<Coloring> {
    ctx.stats.local_colorings += 1;
    match tag {
        NodeTag::SingletonRoot => {
            let c = smallest_list_coloring(lists);
            let measured = coloring_weak_diameter(&ext.graph, &c)?;
            if !measured.le_int(&BigUint::from(4u32)) {
                return Err(Error::invariant(format!(
                    "singleton-root extension has weak diameter {measured} > 4"
                )));
            }
            Ok(c)
        }
        NodeTag::GadgetBag => {
            let c = smallest_list_coloring(lists);
            let bound = bound_all_centered(ctx.bp.theta, 2);
            let measured = coloring_weak_diameter(&ext.graph, &c)?;
            if !measured.le_int(&bound) {
                return Err(Error::invariant(format!(
                    "gadget-bag extension has weak diameter {measured} > {bound}"
                )));
            }
            Ok(c)
        }
        NodeTag::Inherited => {
            let c = lv.colorer.color(ext, lists)?;
            check_local_output(&ext.graph, lists, &c)?;
            let (measured, pair) = coloring_weak_diameter_witness(&ext.graph, &c)?;
            if !measured.le_int(&lv.level_n) {
                return Err(Error::ContractViolation {
                    who: lv.colorer.describe(),
                    measured,
                    guarantee: lv.level_n.clone(),
                    pair,
                });
            }
            Ok(c)
        }
    }
}

/// eta >= 1 on a disconnected graph: solve each component over the
/// subtree of bags meeting it.
fn solve_components(
    ctx: &mut Ctx,
    lv: Level,
    measure: Measure,
    comps: Vec<BTreeSet<Vertex>>,
) -> Result<Coloring> {
    let depths = lv.td.depths();
    let mut out = Coloring::new();
    for comp in comps {
        let keep: BTreeSet<usize> = lv
            .td
            .nodes()
            .filter(|&t| lv.td.bag(t).intersection(&comp).next().is_some())
            .collect();
        if keep.is_empty() {
            return Err(Error::invariant("a component is covered by no bag"));
        }
        let top = *keep.iter().min_by_key(|&&t| (depths[t], t)).unwrap();
        for &t in &keep {
            if t != top && !keep.contains(&lv.td.parent(t).expect("non-top node has parent")) {
                return Err(Error::invariant(
                    "bags meeting a component do not induce a subtree",
                ));
            }
        }

        let (comp_graph, vmap) = induced_subgraph(&lv.graph, &comp)?;
        let vinv = invert_map(&vmap);
        let node_list: Vec<usize> = keep.iter().copied().collect();
        let node_map: BTreeMap<usize, usize> =
            node_list.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let mut bags: Vec<BTreeSet<Vertex>> = node_list
            .iter()
            .map(|&t| lv.td.bag(t).intersection(&comp).map(|v| vmap[v]).collect())
            .collect();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for &t in &node_list {
            if t != top {
                edges.push((node_map[&lv.td.parent(t).unwrap()], node_map[&t]));
            }
        }
        let mut tags: Vec<NodeTag> = node_list.iter().map(|&t| lv.tags[t]).collect();
        let mut witnesses = BTreeMap::new();
        for (&t, w) in &lv.witnesses {
            if let Some(&nt) = node_map.get(&t) {
                let centers: BTreeSet<Vertex> = w
                    .centers
                    .iter()
                    .filter(|v| comp.contains(v))
                    .map(|v| vmap[v])
                    .collect();
                witnesses.insert(nt, CenteredWitness::new(centers, w.radius));
            }
        }
        let root = if top == lv.td.root() {
            node_map[&top]
        } else {
            // the component misses the root bag entirely, so it contains
            // no precolored vertex; anchor it at a fresh singleton root
            if lv.z.intersection(&comp).next().is_some() {
                return Err(Error::invariant(
                    "precolored vertex in a component detached from the root bag",
                ));
            }
            let anchor = *bags[node_map[&top]]
                .iter()
                .next()
                .expect("bag meets component");
            let new_root = bags.len();
            edges.push((new_root, node_map[&top]));
            bags.push(BTreeSet::from([anchor]));
            tags.push(NodeTag::SingletonRoot);
            witnesses.insert(new_root, CenteredWitness::new(BTreeSet::from([anchor]), 0));
            new_root
        };
        let td = RootedTreeDecomposition::from_parts(root, &edges, bags)?;

        let z: BTreeSet<Vertex> = lv.z.intersection(&comp).map(|v| vmap[v]).collect();
        let c_z = lv.c_z.restrict(&comp).relabel(&vmap);
        let origins = (0..comp_graph.vertex_count())
            .map(|v| lv.origins[vinv[&v]])
            .collect();
        let sub = Level {
            graph: comp_graph,
            td,
            tags,
            eta: lv.eta,
            lists: lv.lists.relabel(&vmap, comp.len()),
            witnesses,
            z,
            c_z,
            colorer: lv.colorer.clone(),
            level_n: lv.level_n.clone(),
            origins,
            depth: lv.depth,
            internal: true,
        };
        let colored = solve(ctx, sub, Some(measure))?;
        out = out.union(&colored.relabel(&vinv))?;
    }
    self_check_final(ctx, &lv, &out)
}
