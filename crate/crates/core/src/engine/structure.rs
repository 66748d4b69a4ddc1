//! The eta >= 1 main case: root-ball normalization, branch regions and
//! their boundary partitions, the gadget graph simulating branches, the
//! descent construction at eta - 1, the buffer coloring along branch
//! boundaries, and the per-branch recursions.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;

use crate::decomposition::RootedTreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{
    ball, bfs_distances, coloring_weak_diameter, induced_subgraph, monochromatic_components,
    Color, Coloring, Distance, Graph, Vertex,
};
use crate::legitimacy::{bound_fstar, fstar_f1, fstar_f3, CenteredWitness, ListAssignment};

use super::{
    invert_map, self_check_final, solve, wrap_local_colorer, Ctx, Level, LocalColorer, Measure,
    NodeTag,
};

/// Partition of a boundary set: two boundary vertices share a part iff
/// they are linked by a chain of boundary vertices with consecutive
/// distances at most 2(k+2)(theta+1)+1 in the branch graph. Parts are
/// sorted by minimum vertex.
pub fn partition_boundary(
    g_e: &Graph,
    x_e: &BTreeSet<Vertex>,
    k: usize,
    theta: usize,
) -> Result<Vec<BTreeSet<Vertex>>> {
    for &v in x_e {
        g_e.check_vertex(v)?;
    }
    let threshold = 2 * (k + 2) * (theta + 1) + 1;
    let verts: Vec<Vertex> = x_e.iter().copied().collect();
    let dists: Vec<Vec<Distance>> = verts
        .iter()
        .map(|&v| bfs_distances(g_e, &BTreeSet::from([v])))
        .collect::<Result<_>>()?;
    let mut part_of: Vec<Option<usize>> = vec![None; verts.len()];
    let mut parts: Vec<BTreeSet<Vertex>> = Vec::new();
    for i in 0..verts.len() {
        if part_of[i].is_some() {
            continue;
        }
        let id = parts.len();
        let mut stack = vec![i];
        part_of[i] = Some(id);
        let mut members = BTreeSet::from([verts[i]]);
        while let Some(a) = stack.pop() {
            for b in 0..verts.len() {
                if part_of[b].is_none() {
                    if let Distance::Finite(d) = dists[a][verts[b]] {
                        if d <= threshold {
                            part_of[b] = Some(id);
                            members.insert(verts[b]);
                            stack.push(b);
                        }
                    }
                }
            }
        }
        parts.push(members);
    }
    parts.sort_by_key(|p| p.iter().next().copied());
    Ok(parts)
}

/// One branch hanging off the precolored region.
pub(crate) struct UEdge {
    pub parent: usize,
    pub child: usize,
    /// Adhesion set of the tree edge, level vertex ids.
    pub adhesion: BTreeSet<Vertex>,
    pub branch_graph: Graph,
    pub branch_map: BTreeMap<Vertex, Vertex>,
    pub branch_inv: BTreeMap<Vertex, Vertex>,
    /// Boundary partition, level vertex ids, sorted by minimum vertex.
    pub parts: Vec<BTreeSet<Vertex>>,
    /// Distance in the branch graph to the adhesion set, per branch id.
    pub dist_to_adhesion: Vec<Distance>,
    /// Distance in the branch graph to each part, per branch id.
    pub part_dist: Vec<Vec<Distance>>,
}

pub(crate) struct Regions {
    pub t0_nodes: BTreeSet<usize>,
    pub g0_vertices: BTreeSet<Vertex>,
    pub u_edges: Vec<UEdge>,
}

/// Gadget graph over the precolored region plus the per-branch gadgets.
pub(crate) struct GadgetInfo {
    pub h: Graph,
    pub lists_h: ListAssignment,
    pub level_to_h: BTreeMap<Vertex, Vertex>,
    pub h_to_level: Vec<Option<Vertex>>,
    pub g0_count: usize,
    /// (edge index, part index) -> sorted list -> gadget vertex.
    pub subset_vertex: BTreeMap<(usize, usize), BTreeMap<Vec<Color>, Vertex>>,
    /// (edge index, inner-ring level vertex) -> covering part index.
    pub rule3_part: BTreeMap<(usize, Vertex), usize>,
    /// All gadget vertices created for each branch, for the leaf bags.
    pub gadgets_of_edge: Vec<BTreeSet<Vertex>>,
}

/// Drops subtrees hanging on empty adhesion sets; their bag unions must
/// be empty once the graph is connected and the root bag is nonempty.
fn prune_empty_adhesions(lv: &mut Level) -> Result<()> {
    let mut drop: BTreeSet<usize> = BTreeSet::new();
    for (p, c) in lv.td.edges() {
        if drop.contains(&c) {
            continue;
        }
        if lv.td.bag(p).intersection(lv.td.bag(c)).next().is_none() {
            for t in lv.td.subtree(c) {
                if !lv.td.bag(t).is_empty() {
                    return Err(Error::invariant(
                        "empty-adhesion subtree carries vertices in a connected graph",
                    ));
                }
                drop.insert(t);
            }
        }
    }
    if drop.is_empty() {
        return Ok(());
    }
    let keep: BTreeSet<usize> = lv.td.nodes().filter(|t| !drop.contains(t)).collect();
    let (new_td, node_map) = lv.td.induced_rooted(&keep)?;
    let mut tags = vec![NodeTag::Inherited; new_td.node_count()];
    let mut witnesses = BTreeMap::new();
    for (&old, &new) in &node_map {
        tags[new] = lv.tags[old];
        if let Some(w) = lv.witnesses.get(&old) {
            witnesses.insert(new, w.clone());
        }
    }
    lv.td = new_td;
    lv.tags = tags;
    lv.witnesses = witnesses;
    Ok(())
}

fn compute_regions(ctx: &Ctx, lv: &Level) -> Result<Regions> {
    let t0_nodes: BTreeSet<usize> = lv
        .td
        .nodes()
        .filter(|&t| lv.td.bag(t).intersection(&lv.z).next().is_some())
        .collect();
    if !t0_nodes.contains(&lv.td.root()) {
        return Err(Error::invariant("root bag misses the precolored set"));
    }
    for &t in &t0_nodes {
        if t != lv.td.root() {
            let p = lv.td.parent(t).expect("non-root has a parent");
            if !t0_nodes.contains(&p) {
                return Err(Error::invariant(
                    "bags meeting the precolored set do not induce a subtree",
                ));
            }
        }
    }
    let g0_vertices: BTreeSet<Vertex> = t0_nodes
        .iter()
        .flat_map(|&t| lv.td.bag(t).iter().copied())
        .collect();

    let mut u_edges = Vec::new();
    for &t in &t0_nodes {
        for &c in lv.td.children(t) {
            if t0_nodes.contains(&c) {
                continue;
            }
            let subtree = lv.td.subtree(c);
            let branch_vertices: BTreeSet<Vertex> = subtree
                .iter()
                .flat_map(|&u| lv.td.bag(u).iter().copied())
                .collect();
            if branch_vertices.intersection(&lv.z).next().is_some() {
                return Err(Error::invariant("a branch contains precolored vertices"));
            }
            let adhesion: BTreeSet<Vertex> =
                lv.td.bag(t).intersection(lv.td.bag(c)).copied().collect();
            if adhesion.is_empty() {
                return Err(Error::invariant("unpruned empty adhesion"));
            }
            let (branch_graph, branch_map) = induced_subgraph(&lv.graph, &branch_vertices)?;
            let branch_inv = invert_map(&branch_map);
            let adhesion_branch: BTreeSet<Vertex> =
                adhesion.iter().map(|v| branch_map[v]).collect();
            let dist_to_adhesion = bfs_distances(&branch_graph, &adhesion_branch)?;
            let parts_branch =
                partition_boundary(&branch_graph, &adhesion_branch, ctx.leg.k, ctx.bp.theta)?;
            let mut parts: Vec<BTreeSet<Vertex>> = parts_branch
                .iter()
                .map(|p| p.iter().map(|v| branch_inv[v]).collect())
                .collect();
            parts.sort_by_key(|p: &BTreeSet<Vertex>| p.iter().next().copied());
            let part_dist: Vec<Vec<Distance>> = parts_branch
                .iter()
                .map(|p| bfs_distances(&branch_graph, p))
                .collect::<Result<_>>()?;
            u_edges.push(UEdge {
                parent: t,
                child: c,
                adhesion,
                branch_graph,
                branch_map,
                branch_inv,
                parts,
                dist_to_adhesion,
                part_dist,
            });
        }
    }
    u_edges.sort_by_key(|ue| ue.child);
    Ok(Regions {
        t0_nodes,
        g0_vertices,
        u_edges,
    })
}

/// Smallest `m` colors of the universe, padded with fresh colors beyond
/// its maximum when the universe is too small.
fn canonical_m_set(universe: &BTreeSet<Color>, m: usize) -> BTreeSet<Color> {
    let mut out: BTreeSet<Color> = universe.iter().take(m).copied().collect();
    let mut next = universe.iter().next_back().map_or(0, |&c| c + 1);
    while out.len() < m {
        out.insert(next);
        next += 1;
    }
    out
}

/// All m-element subsets of the universe in lexicographic order.
fn all_m_subsets(universe: &BTreeSet<Color>, m: usize) -> Vec<Vec<Color>> {
    let items: Vec<Color> = universe.iter().copied().collect();
    let n = items.len();
    let mut out = Vec::new();
    if m == 0 || m > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..m).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let mut advanced = false;
        for i in (0..m).rev() {
            if idx[i] < n - m + i {
                idx[i] += 1;
                for j in i + 1..m {
                    idx[j] = idx[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            return out;
        }
    }
}

fn build_gadget_graph(
    ctx: &mut Ctx,
    lv: &Level,
    regions: &Regions,
    m_comps: &[(Color, BTreeSet<Vertex>)],
) -> Result<GadgetInfo> {
    let g0_sorted: Vec<Vertex> = regions.g0_vertices.iter().copied().collect();
    let g0_count = g0_sorted.len();
    let level_to_h: BTreeMap<Vertex, Vertex> = g0_sorted
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();

    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for &v in &g0_sorted {
        for &w in lv.graph.neighbors(v) {
            if v < w && regions.g0_vertices.contains(&w) {
                edges.push((level_to_h[&v], level_to_h[&w]));
            }
        }
    }

    let universe = lv.lists.color_universe();
    let m = ctx.leg.m;
    let rho = ctx.bp.root_ball_radius();
    let step = ctx.leg.k + 2;
    let forced_set = lv.lists.one_list_set();

    let mut lists_h: Vec<BTreeSet<Color>> = g0_sorted
        .iter()
        .map(|&v| lv.lists.list(v).clone())
        .collect();
    let mut h_to_level: Vec<Option<Vertex>> = g0_sorted.iter().map(|&v| Some(v)).collect();
    let mut subset_vertex: BTreeMap<(usize, usize), BTreeMap<Vec<Color>, Vertex>> = BTreeMap::new();
    let mut rule3_part: BTreeMap<(usize, Vertex), usize> = BTreeMap::new();
    let mut gadgets_of_edge: Vec<BTreeSet<Vertex>> = Vec::new();
    let mut next_id = g0_count;

    for (ei, ue) in regions.u_edges.iter().enumerate() {
        let mut created: BTreeSet<Vertex> = BTreeSet::new();

        // Lists the buffer coloring will look up: the first-ring vertices
        // without forced colors, keyed by their unique covering part.
        let mut needed: BTreeMap<usize, BTreeSet<Vec<Color>>> = BTreeMap::new();
        for bv in 0..ue.branch_graph.vertex_count() {
            let level_v = ue.branch_inv[&bv];
            let d = match ue.dist_to_adhesion[bv] {
                Distance::Finite(d) => d,
                Distance::Infinite => continue,
            };
            if d == 0 || d > step || forced_set.contains(&level_v) {
                continue;
            }
            let covering: Vec<usize> = (0..ue.parts.len())
                .filter(|&pi| match ue.part_dist[pi][bv] {
                    Distance::Finite(pd) => pd <= rho,
                    Distance::Infinite => false,
                })
                .collect();
            if covering.len() != 1 {
                return Err(Error::invariant(format!(
                    "first-ring vertex covered by {} parts instead of one",
                    covering.len()
                )));
            }
            let list = lv.lists.list(level_v);
            if list.len() != m {
                return Err(Error::invariant(
                    "unforced vertex without a size-m list survived the legitimacy check",
                ));
            }
            rule3_part.insert((ei, level_v), covering[0]);
            needed
                .entry(covering[0])
                .or_default()
                .insert(list.iter().copied().collect());
        }

        for (pi, part) in ue.parts.iter().enumerate() {
            let subsets: Vec<Vec<Color>> = if ctx.strict_gadgets {
                all_m_subsets(&universe, m)
            } else {
                needed
                    .get(&pi)
                    .map(|s| s.iter().cloned().collect())
                    .unwrap_or_default()
            };
            let mut lookup: BTreeMap<Vec<Color>, Vertex> = BTreeMap::new();
            for subset in subsets {
                let id = next_id;
                next_id += 1;
                lists_h.push(subset.iter().copied().collect());
                h_to_level.push(None);
                created.insert(id);
                for v in part {
                    edges.push((level_to_h[v], id));
                }
                lookup.insert(subset, id);
            }
            if let Some(want) = needed.get(&pi) {
                for list in want {
                    if !lookup.contains_key(list) {
                        return Err(Error::invariant("missing gadget vertex for a needed list"));
                    }
                }
            }
            subset_vertex.insert((ei, pi), lookup);
        }

        // A linked pair of gadget vertices per forced component that
        // reaches into the first ring of this branch.
        let adhesion_branch: BTreeSet<Vertex> =
            ue.adhesion.iter().map(|v| ue.branch_map[v]).collect();
        for (color, mset) in m_comps.iter() {
            let inner: BTreeSet<Vertex> = mset
                .iter()
                .filter_map(|v| ue.branch_map.get(v).copied())
                .filter(|bv| !adhesion_branch.contains(bv))
                .collect();
            let touches_ring = inner
                .iter()
                .any(|&bv| ue.dist_to_adhesion[bv] == Distance::Finite(1));
            if !touches_ring {
                continue;
            }
            let near1: BTreeSet<Vertex> = ball(&ue.branch_graph, &inner, 1)?
                .intersection(&adhesion_branch)
                .map(|bv| level_to_h[&ue.branch_inv[bv]])
                .collect();
            let neark: BTreeSet<Vertex> = ball(&ue.branch_graph, &inner, ctx.leg.k)?
                .intersection(&adhesion_branch)
                .map(|bv| level_to_h[&ue.branch_inv[bv]])
                .collect();
            if near1.is_empty() {
                return Err(Error::invariant(
                    "forced component touches the ring but no adhesion vertex",
                ));
            }
            let u_id = next_id;
            let u_prime_id = next_id + 1;
            next_id += 2;
            lists_h.push(BTreeSet::from([*color]));
            lists_h.push(canonical_m_set(&universe, m));
            h_to_level.push(None);
            h_to_level.push(None);
            created.insert(u_id);
            created.insert(u_prime_id);
            edges.push((u_id, u_prime_id));
            for &a in &near1 {
                edges.push((a, u_id));
            }
            for &a in &neark {
                edges.push((a, u_prime_id));
            }
        }
        gadgets_of_edge.push(created);
    }

    let h = Graph::from_edges(next_id, &edges)?;
    let palette: BTreeSet<Color> = lists_h.iter().flatten().copied().collect();
    let lists_h = ListAssignment::new(palette, lists_h)?;

    // The forced coloring of the gadget graph must stay within weak
    // diameter k: forced components only extend along their own linked
    // gadget vertices.
    let forced_h = lists_h.forced_coloring();
    let measured = coloring_weak_diameter(&h, &forced_h)?;
    if !measured.le_int(&BigUint::from(ctx.leg.k)) {
        return Err(Error::invariant(format!(
            "gadget forced coloring has weak diameter {measured} > k = {}",
            ctx.leg.k
        )));
    }
    ctx.stats.gadget_soundness_checks += 1;

    Ok(GadgetInfo {
        h,
        lists_h,
        level_to_h,
        h_to_level,
        g0_count,
        subset_vertex,
        rule3_part,
        gadgets_of_edge,
    })
}

struct DescentOutput<'a> {
    level: Level<'a>,
    sub_to_h: BTreeMap<Vertex, Vertex>,
    enlarged: BTreeSet<Vertex>,
    sub_guarantee: BigUint,
}

fn build_descent_level<'a>(
    ctx: &Ctx,
    lv: &Level<'a>,
    regions: &Regions,
    hinfo: &GadgetInfo,
) -> Result<DescentOutput<'a>> {
    let t0_sorted: Vec<usize> = regions.t0_nodes.iter().copied().collect();
    let tpos: BTreeMap<usize, usize> = t0_sorted
        .iter()
        .enumerate()
        .map(|(i, &t)| (t, i))
        .collect();
    let n_t0 = t0_sorted.len();
    let n_tprime = n_t0 + regions.u_edges.len();

    let mut bags_h: Vec<BTreeSet<Vertex>> = t0_sorted
        .iter()
        .map(|&t| lv.td.bag(t).iter().map(|v| hinfo.level_to_h[v]).collect())
        .collect();
    for (ei, ue) in regions.u_edges.iter().enumerate() {
        let mut bag: BTreeSet<Vertex> =
            ue.adhesion.iter().map(|v| hinfo.level_to_h[v]).collect();
        bag.extend(hinfo.gadgets_of_edge[ei].iter().copied());
        bags_h.push(bag);
    }
    let mut tags: Vec<NodeTag> = t0_sorted.iter().map(|&t| lv.tags[t]).collect();
    tags.extend(std::iter::repeat(NodeTag::GadgetBag).take(regions.u_edges.len()));

    let mut edges: Vec<(usize, usize)> = Vec::new();
    for &t in &t0_sorted {
        if t != lv.td.root() {
            edges.push((tpos[&lv.td.parent(t).unwrap()], tpos[&t]));
        }
    }
    for (ei, ue) in regions.u_edges.iter().enumerate() {
        edges.push((tpos[&ue.parent], n_t0 + ei));
    }
    let root_prime = tpos[&lv.td.root()];

    let z_h: BTreeSet<Vertex> = lv
        .z
        .iter()
        .map(|v| {
            hinfo
                .level_to_h
                .get(v)
                .copied()
                .ok_or_else(|| Error::invariant("precolored vertex outside the gadget region"))
        })
        .collect::<Result<_>>()?;

    let near: BTreeSet<Vertex> = ball(&hinfo.h, &z_h, ctx.leg.k + ctx.leg.r)?
        .difference(&z_h)
        .copied()
        .collect();
    let lists_prime_h = hinfo.lists_h.with_enlarged(&near, ctx.leg.m);

    let mut remainders: Vec<BTreeSet<Vertex>> = bags_h
        .iter()
        .map(|b| b.difference(&z_h).copied().collect())
        .collect();

    let root_sub;
    if lv.eta >= 2 {
        // artificial singleton root threaded along the path to the first
        // node with leftover vertices
        let mut depth = vec![usize::MAX; n_tprime];
        depth[root_prime] = 0;
        let mut parent_prime = vec![usize::MAX; n_tprime];
        let mut order = vec![root_prime];
        let mut children_prime: Vec<Vec<usize>> = vec![Vec::new(); n_tprime];
        for &(p, c) in &edges {
            children_prime[p].push(c);
            parent_prime[c] = p;
        }
        let mut head = 0;
        while head < order.len() {
            let t = order[head];
            head += 1;
            for &c in &children_prime[t] {
                depth[c] = depth[t] + 1;
                order.push(c);
            }
        }
        let t_0 = (0..n_tprime)
            .filter(|&t| !remainders[t].is_empty())
            .min_by_key(|&t| (depth[t], t))
            .ok_or_else(|| Error::invariant("no vertex survives outside the precolored set"))?;
        let v_0 = *remainders[t_0].iter().next().unwrap();
        let mut on_path = vec![false; n_tprime];
        let mut cursor = t_0;
        loop {
            on_path[cursor] = true;
            if cursor == root_prime {
                break;
            }
            cursor = parent_prime[cursor];
        }
        for t in 0..n_tprime {
            if on_path[t] {
                remainders[t].insert(v_0);
            }
        }
        let new_root = n_tprime;
        remainders.push(BTreeSet::from([v_0]));
        tags.push(NodeTag::SingletonRoot);
        edges.push((new_root, root_prime));
        root_sub = new_root;
    } else {
        root_sub = root_prime;
    }

    let keep: BTreeSet<Vertex> = hinfo
        .h
        .vertices()
        .filter(|v| !z_h.contains(v))
        .collect();
    let (sub_graph, h_sub_map) = induced_subgraph(&hinfo.h, &keep)?;
    let sub_to_h = invert_map(&h_sub_map);
    let bags_sub: Vec<BTreeSet<Vertex>> = remainders
        .iter()
        .map(|b| b.iter().map(|v| h_sub_map[v]).collect())
        .collect();

    let mut witnesses: BTreeMap<usize, CenteredWitness> = BTreeMap::new();
    for (node, bag) in bags_sub.iter().enumerate() {
        if bag.len() <= 1 {
            witnesses.insert(node, CenteredWitness::trivial(bag));
            continue;
        }
        if node >= n_t0 && node < n_tprime {
            let ue = &regions.u_edges[node - n_t0];
            let centers: BTreeSet<Vertex> = ue
                .adhesion
                .iter()
                .map(|v| h_sub_map[&hinfo.level_to_h[v]])
                .collect();
            witnesses.insert(node, CenteredWitness::new(centers, 1));
            continue;
        }
        if node < n_t0 {
            if let Some(w) = lv.witnesses.get(&t0_sorted[node]) {
                let centers: BTreeSet<Vertex> = w
                    .centers
                    .iter()
                    .filter(|v| !lv.z.contains(v))
                    .map(|v| h_sub_map[&hinfo.level_to_h[v]])
                    .collect();
                witnesses.insert(node, CenteredWitness::new(centers, w.radius));
            }
        }
    }

    let td_sub = RootedTreeDecomposition::from_parts(root_sub, &edges, bags_sub)?;
    let origins: Vec<Option<Vertex>> = (0..sub_graph.vertex_count())
        .map(|v| {
            hinfo.h_to_level[sub_to_h[&v]].and_then(|level_v| lv.origins[level_v])
        })
        .collect();

    let wrapped = wrap_local_colorer(lv.colorer.clone(), &ctx.leg, &ctx.bp);
    let sub_guarantee = wrapped.guarantee();
    let level = Level {
        lists: lists_prime_h.relabel(&h_sub_map, sub_graph.vertex_count()),
        graph: sub_graph,
        td: td_sub,
        tags,
        eta: lv.eta - 1,
        witnesses,
        z: BTreeSet::new(),
        c_z: Coloring::new(),
        colorer: wrapped,
        level_n: sub_guarantee.clone(),
        origins,
        depth: lv.depth + 1,
        internal: true,
    };
    Ok(DescentOutput {
        level,
        sub_to_h,
        enlarged: near,
        sub_guarantee,
    })
}

/// Lays down colors along every branch boundary region: copies of the
/// gadget coloring on the adhesion sets, forced colors, gadget-derived
/// colors on the first ring, and ring-indexed avoidance colors beyond.
fn define_buffer_coloring(
    ctx: &Ctx,
    lv: &Level,
    regions: &Regions,
    hinfo: &GadgetInfo,
    c_h: &Coloring,
) -> Result<Coloring> {
    let step = ctx.leg.k + 2;
    let theta = ctx.bp.theta;
    let forced_set = lv.lists.one_list_set();
    let mut out = Coloring::new();
    for (ei, ue) in regions.u_edges.iter().enumerate() {
        let adhesion_sorted: Vec<Vertex> = ue.adhesion.iter().copied().collect();
        for bv in 0..ue.branch_graph.vertex_count() {
            let level_v = ue.branch_inv[&bv];
            let d = match ue.dist_to_adhesion[bv] {
                Distance::Finite(d) => d,
                Distance::Infinite => continue,
            };
            if d > step * (theta + 1) {
                continue;
            }
            let color = if d == 0 {
                c_h.get(hinfo.level_to_h[&level_v])
                    .ok_or_else(|| Error::invariant("gadget coloring misses a boundary vertex"))?
            } else if forced_set.contains(&level_v) {
                lv.lists.smallest(level_v)
            } else if d <= step {
                let pi = *hinfo
                    .rule3_part
                    .get(&(ei, level_v))
                    .ok_or_else(|| Error::invariant("first-ring vertex missing its part"))?;
                let key: Vec<Color> = lv.lists.list(level_v).iter().copied().collect();
                let s_u = *hinfo
                    .subset_vertex
                    .get(&(ei, pi))
                    .and_then(|lookup| lookup.get(&key))
                    .ok_or_else(|| Error::invariant("first-ring vertex missing its gadget"))?;
                c_h.get(s_u)
                    .ok_or_else(|| Error::invariant("gadget vertex left uncolored"))?
            } else {
                let ring = (d + step - 1) / step - 1;
                if ring < 1 || ring > theta {
                    return Err(Error::invariant(format!(
                        "ring index {ring} outside [1, {theta}]"
                    )));
                }
                let avoid = if adhesion_sorted.len() >= ring {
                    let anchor = adhesion_sorted[ring - 1];
                    c_h.get(hinfo.level_to_h[&anchor])
                } else {
                    None
                };
                *lv.lists
                    .list(level_v)
                    .iter()
                    .find(|&&c| Some(c) != avoid)
                    .ok_or_else(|| Error::invariant("no admissible buffer color"))?
            };
            out.set(level_v, color);
        }
    }
    if !lv.lists.respected_by(&out) {
        return Err(Error::invariant("buffer coloring violates a list"));
    }
    Ok(out)
}

fn build_branch_level<'a>(
    ctx: &Ctx,
    lv: &Level<'a>,
    ue: &UEdge,
    buffer: &Coloring,
) -> Result<Level<'a>> {
    let step = ctx.leg.k + 2;
    let rho = step * (ctx.bp.theta + 1);
    let (branch_td, new_root, node_map) =
        crate::decomposition::truncation_with_map(&lv.td, (ue.parent, ue.child))?;

    let bags: Vec<BTreeSet<Vertex>> = branch_td
        .nodes()
        .map(|t| {
            branch_td
                .bag(t)
                .iter()
                .map(|v| ue.branch_map[v])
                .collect::<BTreeSet<Vertex>>()
        })
        .collect();
    let edges: Vec<(usize, usize)> = branch_td.edges();
    let td = RootedTreeDecomposition::from_parts(new_root, &edges, bags)?;

    let mut tags = vec![NodeTag::Inherited; td.node_count()];
    for (&old, &new) in &node_map {
        tags[new] = lv.tags[old];
    }
    tags[new_root] = lv.tags[ue.parent];

    let z_level: BTreeSet<Vertex> = (0..ue.branch_graph.vertex_count())
        .filter(|&bv| match ue.dist_to_adhesion[bv] {
            Distance::Finite(d) => d <= rho,
            Distance::Infinite => false,
        })
        .map(|bv| ue.branch_inv[&bv])
        .collect();
    let lists = lv
        .lists
        .with_enlarged(&z_level, ctx.leg.m)
        .relabel(&ue.branch_map, ue.branch_graph.vertex_count());
    let z: BTreeSet<Vertex> = z_level.iter().map(|v| ue.branch_map[v]).collect();
    let c_z = buffer.restrict(&z_level).relabel(&ue.branch_map);
    if c_z.domain() != z {
        return Err(Error::invariant("buffer does not cover the branch boundary"));
    }

    let mut witnesses = BTreeMap::new();
    for (&old, &new) in &node_map {
        if let Some(w) = lv.witnesses.get(&old) {
            let centers: BTreeSet<Vertex> =
                w.centers.iter().map(|v| ue.branch_map[v]).collect();
            witnesses.insert(new, CenteredWitness::new(centers, w.radius));
        }
    }

    let origins: Vec<Option<Vertex>> = (0..ue.branch_graph.vertex_count())
        .map(|bv| lv.origins[ue.branch_inv[&bv]])
        .collect();

    Ok(Level {
        graph: ue.branch_graph.clone(),
        td,
        tags,
        eta: lv.eta,
        lists,
        witnesses,
        z,
        c_z,
        colorer: lv.colorer.clone(),
        level_n: lv.level_n.clone(),
        origins,
        depth: lv.depth,
        internal: true,
    })
}

pub(crate) fn solve_main(ctx: &mut Ctx, mut lv: Level, measure: Measure) -> Result<Coloring> {
    let rho = ctx.bp.root_ball_radius();
    let root_bag = lv.td.bag(lv.td.root()).clone();
    let full_ball = ball(&lv.graph, &root_bag, rho)?;
    for &v in &full_ball {
        if !lv.z.contains(&v) {
            lv.c_z.set(v, lv.lists.smallest(v));
        }
    }
    lv.z = full_ball;
    if lv.z.len() == lv.graph.vertex_count() {
        let c = lv.c_z.clone();
        return self_check_final(ctx, &lv, &c);
    }

    prune_empty_adhesions(&mut lv)?;
    let regions = compute_regions(ctx, &lv)?;
    let forced = lv.lists.forced_coloring();
    let m_comps = monochromatic_components(&lv.graph, &forced)?;
    let hinfo = build_gadget_graph(ctx, &lv, &regions, &m_comps)?;
    let descent = build_descent_level(ctx, &lv, &regions, &hinfo)?;
    let sub_guarantee = descent.sub_guarantee.clone();
    let sub_to_h = descent.sub_to_h.clone();
    let enlarged = descent.enlarged.clone();
    let c_sub = solve(ctx, descent.level, Some(measure))?;
    let c_sub_h = c_sub.relabel(&sub_to_h);

    let z_to_h: BTreeMap<Vertex, Vertex> = lv
        .z
        .iter()
        .map(|&v| (v, hinfo.level_to_h[&v]))
        .collect();
    let c_z_h = lv.c_z.relabel(&z_to_h);
    let mut c_h = c_sub_h.union(&c_z_h)?;
    for &v in &enlarged {
        c_h.set(v, hinfo.lists_h.smallest(v));
    }
    if c_h.len() != hinfo.h.vertex_count() {
        return Err(Error::invariant("gadget coloring is not total"));
    }
    if !hinfo.lists_h.respected_by(&c_h) {
        return Err(Error::invariant("gadget coloring violates a list"));
    }
    // the merged-and-recolored gadget coloring obeys the level's merge
    // bound before any branch work begins
    let inner = bound_fstar(&ctx.bp, lv.eta - 1, &sub_guarantee)?;
    let merge_bound = fstar_f3(&ctx.bp, &fstar_f1(&ctx.bp, &inner));
    let measured = coloring_weak_diameter(&hinfo.h, &c_h)?;
    if !measured.le_int(&merge_bound) {
        return Err(Error::invariant(format!(
            "gadget coloring has weak diameter {measured} > {merge_bound}"
        )));
    }

    let buffer = define_buffer_coloring(ctx, &lv, &regions, &hinfo, &c_h)?;

    let mut total = Coloring::new();
    for h_id in 0..hinfo.g0_count {
        let level_v = hinfo.h_to_level[h_id].expect("region vertices map back");
        total.set(level_v, c_h.get(h_id).expect("gadget coloring is total"));
    }
    for ue in &regions.u_edges {
        let branch = build_branch_level(ctx, &lv, ue, &buffer)?;
        let c_branch = solve(ctx, branch, Some(measure))?;
        total = total.union(&c_branch.relabel(&ue.branch_inv))?;
    }
    self_check_final(ctx, &lv, &total)
}
