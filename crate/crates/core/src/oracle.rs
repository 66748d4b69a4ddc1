//! Brute-force ground truth: exhaustive list-coloring enumeration for the
//! minimum achievable weak diameter, exhaustive cycle enumeration, and the
//! far-apart-cycle-vertices check for high-girth graphs.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::generators::GadgetOutput;
use crate::graph::{
    coloring_weak_diameter, girth, weak_diameter_witness, Coloring, Distance, Graph, Vertex,
};
use crate::legitimacy::ListAssignment;

/// Result of an exhaustive enumeration that may refuse oversized inputs.
#[derive(Clone, Debug)]
pub enum BruteForceOutcome {
    Found {
        minimum: Distance,
        witness: Coloring,
    },
    TooLarge {
        product: BigUint,
    },
}

/// Product of list sizes, the number of colorings to enumerate.
pub fn coloring_space(lists: &ListAssignment) -> BigUint {
    let mut product = BigUint::from(1u32);
    for list in lists.lists() {
        product *= BigUint::from(list.len());
    }
    product
}

/// Exhaustively enumerates all list-colorings in lexicographic order
/// (vertex by vertex, colors ascending) and returns the minimum achievable
/// weak diameter with the first witness attaining it.
pub fn brute_force_min_weak_diameter(
    g: &Graph,
    lists: &ListAssignment,
    cap: u64,
) -> Result<BruteForceOutcome> {
    if lists.vertex_count() != g.vertex_count() {
        return Err(Error::InvalidInput(format!(
            "list assignment covers {} vertices, graph has {}",
            lists.vertex_count(),
            g.vertex_count()
        )));
    }
    let product = coloring_space(lists);
    if product > BigUint::from(cap) {
        return Ok(BruteForceOutcome::TooLarge { product });
    }

    let n = g.vertex_count();
    let choices: Vec<Vec<u32>> = (0..n).map(|v| lists.list(v).iter().copied().collect()).collect();
    let mut index = vec![0usize; n];
    let mut best: Option<(Distance, Coloring)> = None;
    loop {
        let coloring = Coloring::from_pairs((0..n).map(|v| (v, choices[v][index[v]])));
        let measured = coloring_weak_diameter(g, &coloring)?;
        let improves = match &best {
            None => true,
            Some((b, _)) => measured < *b,
        };
        if improves {
            let done = measured == Distance::Finite(0);
            best = Some((measured, coloring));
            if done {
                break;
            }
        }
        if n == 0 {
            break;
        }
        // advance the lexicographic odometer, last vertex fastest
        let mut pos = n;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            index[pos] += 1;
            if index[pos] < choices[pos].len() {
                break;
            }
            index[pos] = 0;
        }
        if pos == 0 && index[0] == 0 {
            break;
        }
    }
    let (minimum, witness) = best.unwrap_or((Distance::Finite(0), Coloring::new()));
    Ok(BruteForceOutcome::Found { minimum, witness })
}

/// Verdict of the gadget's lower-bound claim at a given host girth.
#[derive(Clone, Debug)]
pub enum GadgetClaim {
    Verdict {
        /// 2 * floor(girth/4) - 3; may be negative.
        threshold: i64,
        /// True iff every list-coloring has a monochromatic component of
        /// weak diameter exceeding the threshold.
        verdict: bool,
    },
    TooLarge {
        product: BigUint,
    },
}

/// Checks, by exhaustive enumeration, that every list-coloring of the
/// gadget has some monochromatic component of weak diameter greater than
/// 2*floor(g/4) - 3 where g is the host girth.
pub fn gadget_weak_diameter_claim(out: &GadgetOutput, host_girth: usize, cap: u64) -> Result<GadgetClaim> {
    let threshold = 2 * (host_girth as i64 / 4) - 3;
    match brute_force_min_weak_diameter(&out.graph, &out.lists, cap)? {
        BruteForceOutcome::TooLarge { product } => Ok(GadgetClaim::TooLarge { product }),
        BruteForceOutcome::Found { minimum, .. } => {
            let verdict = match minimum {
                Distance::Infinite => true,
                Distance::Finite(d) => (d as i64) > threshold,
            };
            Ok(GadgetClaim::Verdict { threshold, verdict })
        }
    }
}

/// Verifies that `c` is a cycle of `g`: at least three distinct vertices,
/// consecutive pairs (and the wrap-around pair) adjacent.
fn check_cycle(g: &Graph, c: &[Vertex]) -> Result<()> {
    if c.len() < 3 {
        return Err(Error::rejected("a cycle needs at least 3 vertices"));
    }
    let distinct: BTreeSet<Vertex> = c.iter().copied().collect();
    if distinct.len() != c.len() {
        return Err(Error::rejected("cycle repeats a vertex"));
    }
    for i in 0..c.len() {
        let u = c[i];
        let v = c[(i + 1) % c.len()];
        g.check_vertex(u)?;
        if !g.has_edge(u, v) {
            return Err(Error::rejected(format!("({u}, {v}) is not an edge")));
        }
    }
    Ok(())
}

/// For a cycle in a graph of girth at least 4, returns a pair of cycle
/// vertices at maximum distance together with that distance, which is
/// always at least floor(girth/4).
pub fn girth_far_check(g: &Graph, cycle: &[Vertex]) -> Result<(Vertex, Vertex, usize)> {
    check_cycle(g, cycle)?;
    let girth_value = match girth(g) {
        Distance::Finite(v) => v,
        Distance::Infinite => {
            return Err(Error::invariant("graph contains a cycle but girth is infinite"))
        }
    };
    if girth_value < 4 {
        return Err(Error::rejected(format!("girth {girth_value} < 4")));
    }
    let set: BTreeSet<Vertex> = cycle.iter().copied().collect();
    let (dist, pair) = weak_diameter_witness(g, &set)?;
    let d = dist
        .finite()
        .ok_or_else(|| Error::invariant("cycle vertices are mutually reachable"))?;
    let (x, y) = pair.ok_or_else(|| Error::invariant("cycle has at least two vertices"))?;
    if d < girth_value / 4 {
        return Err(Error::invariant(format!(
            "cycle pair ({x}, {y}) at distance {d} < floor({girth_value}/4)"
        )));
    }
    Ok((x, y, d))
}

/// Every cycle of the graph, each listed once as a vertex sequence whose
/// first entry is the cycle's minimum vertex and whose second entry is
/// smaller than its last (fixing the direction).
pub fn all_cycles(g: &Graph) -> Vec<Vec<Vertex>> {
    let mut cycles = Vec::new();
    let n = g.vertex_count();
    let mut path: Vec<Vertex> = Vec::new();
    let mut on_path = vec![false; n];

    fn extend(
        g: &Graph,
        root: Vertex,
        path: &mut Vec<Vertex>,
        on_path: &mut Vec<bool>,
        cycles: &mut Vec<Vec<Vertex>>,
    ) {
        let last = *path.last().unwrap();
        for &next in g.neighbors(last) {
            if next == root && path.len() >= 3 && path[1] < last {
                cycles.push(path.clone());
            }
            if next > root && !on_path[next] {
                path.push(next);
                on_path[next] = true;
                extend(g, root, path, on_path, cycles);
                on_path[next] = false;
                path.pop();
            }
        }
    }

    for root in 0..n {
        path.push(root);
        on_path[root] = true;
        extend(g, root, &mut path, &mut on_path, &mut cycles);
        on_path[root] = false;
        path.pop();
    }
    cycles.sort();
    cycles
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{build_bipartite_gadget, cycle_graph, petersen};
    use std::collections::BTreeSet;

    fn uniform(n: usize, colors: &[u32]) -> ListAssignment {
        ListAssignment::uniform(n, colors.iter().copied().collect()).unwrap()
    }

    #[test]
    fn brute_single_vertex() {
        let g = Graph::empty(1);
        match brute_force_min_weak_diameter(&g, &uniform(1, &[3, 4]), 1 << 10).unwrap() {
            BruteForceOutcome::Found { minimum, witness } => {
                assert_eq!(minimum, Distance::Finite(0));
                assert_eq!(witness.get(0), Some(3));
            }
            _ => panic!("too large"),
        }
    }

    #[test]
    fn brute_c4_two_lists_proper() {
        let g = cycle_graph(4).unwrap();
        match brute_force_min_weak_diameter(&g, &uniform(4, &[1, 2]), 1 << 10).unwrap() {
            BruteForceOutcome::Found { minimum, .. } => {
                assert_eq!(minimum, Distance::Finite(0));
            }
            _ => panic!("too large"),
        }
    }

    #[test]
    fn brute_k3_two_lists_forced_pair() {
        // enumerating all 8 colorings by pigeonhole: some adjacent pair
        // shares a color, so the minimum is exactly 1
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        match brute_force_min_weak_diameter(&g, &uniform(3, &[1, 2]), 1 << 10).unwrap() {
            BruteForceOutcome::Found { minimum, witness } => {
                assert_eq!(minimum, Distance::Finite(1));
                assert_eq!(coloring_weak_diameter(&g, &witness).unwrap(), minimum);
            }
            _ => panic!("too large"),
        }
    }

    #[test]
    fn brute_respects_cap() {
        let g = Graph::empty(40);
        match brute_force_min_weak_diameter(&g, &uniform(40, &[1, 2]), 1 << 10).unwrap() {
            BruteForceOutcome::TooLarge { product } => {
                assert_eq!(product, BigUint::from(2u32).pow(40));
            }
            _ => panic!("expected too-large outcome"),
        }
    }

    #[test]
    fn brute_singleton_lists_matches_unique_coloring() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let lists = uniform(4, &[9]);
        match brute_force_min_weak_diameter(&g, &lists, 16).unwrap() {
            BruteForceOutcome::Found { minimum, witness } => {
                assert_eq!(minimum, coloring_weak_diameter(&g, &witness).unwrap());
                assert_eq!(minimum, Distance::Finite(3));
            }
            _ => panic!("too large"),
        }
    }

    #[test]
    fn cycles_of_triangle_and_k4() {
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(all_cycles(&k3), vec![vec![0, 1, 2]]);
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        // four triangles plus three 4-cycles
        assert_eq!(all_cycles(&k4).len(), 7);
    }

    #[test]
    fn petersen_girth_cross_checked_by_cycle_enumeration() {
        let g = petersen();
        let cycles = all_cycles(&g);
        let shortest = cycles.iter().map(|c| c.len()).min().unwrap();
        assert_eq!(shortest, 5);
        assert_eq!(girth(&g), Distance::Finite(5));
        // the well-known count of 5-cycles in the Petersen graph
        assert_eq!(cycles.iter().filter(|c| c.len() == 5).count(), 12);
    }

    #[test]
    fn girth_far_on_c12() {
        let g = cycle_graph(12).unwrap();
        let cycle: Vec<Vertex> = (0..12).collect();
        let (_, _, d) = girth_far_check(&g, &cycle).unwrap();
        assert_eq!(d, 6);
        assert!(d >= 12 / 4);
    }

    #[test]
    fn girth_far_on_petersen_five_cycles() {
        let g = petersen();
        for cycle in all_cycles(&g).iter().filter(|c| c.len() == 5) {
            let (_, _, d) = girth_far_check(&g, cycle).unwrap();
            assert!(d >= 1);
        }
    }

    #[test]
    fn girth_far_rejects_non_cycles() {
        let g = cycle_graph(5).unwrap();
        assert!(girth_far_check(&g, &[0, 1, 2]).is_err());
        assert!(girth_far_check(&g, &[0, 1]).is_err());
        // triangle: girth 3 < 4 rejected
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(girth_far_check(&k3, &[0, 1, 2]).is_err());
    }

    #[test]
    fn gadget_claim_k1_hosts() {
        for host in [petersen(), cycle_graph(6).unwrap()] {
            let host_girth = match girth(&host) {
                Distance::Finite(g) => g,
                _ => unreachable!(),
            };
            let out = build_bipartite_gadget(&host, 1).unwrap();
            match gadget_weak_diameter_claim(&out, host_girth, 1 << 20).unwrap() {
                GadgetClaim::Verdict { threshold, verdict } => {
                    assert_eq!(threshold, 2 * (host_girth as i64 / 4) - 3);
                    assert!(verdict);
                }
                _ => panic!("k = 1 means a single coloring"),
            }
        }
    }

    #[test]
    fn gadget_claim_too_large_path() {
        let out = build_bipartite_gadget(&petersen(), 2).unwrap();
        match gadget_weak_diameter_claim(&out, 5, 1 << 10).unwrap() {
            GadgetClaim::TooLarge { product } => {
                assert!(product > BigUint::from(1u64 << 10));
            }
            _ => panic!("k = 2 gadget should exceed the cap"),
        }
    }

    #[test]
    fn brute_empty_graph() {
        let g = Graph::empty(0);
        let lists = ListAssignment::new(BTreeSet::new(), vec![]).unwrap();
        match brute_force_min_weak_diameter(&g, &lists, 16).unwrap() {
            BruteForceOutcome::Found { minimum, witness } => {
                assert_eq!(minimum, Distance::Finite(0));
                assert!(witness.is_empty());
            }
            _ => panic!(),
        }
    }
}
