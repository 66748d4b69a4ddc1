//! List-assignments, centered-set witnesses, the legitimacy conditions on a
//! list-assignment over a tree-decomposition, and every explicit bound
//! calculator, including the recursion that bounds the weak diameter the
//! extension engine guarantees.
//!
//! The base bounds follow the chain-of-centers argument: a connected set
//! whose vertices sit within distance rho of at most k centers has weak
//! diameter at most 2*rho + (k-1)(2*rho+1), since consecutive centers along
//! a connecting walk are at most 2*rho+1 apart. For the merge bound the
//! effective radius grows to N+r+1: a vertex of a merged component reaches
//! a center through at most one inner component of weak diameter N, one
//! edge, and a radius-r path. These are sound (property-tested) upper
//! bounds; nothing downstream depends on their tightness.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;

use crate::decomposition::{RootedTreeDecomposition, Rule, ValidationReport};
use crate::error::{Error, Result};
use crate::graph::{
    ball, coloring_weak_diameter_witness, induced_subgraph, Color, Coloring, Graph, Vertex,
};

/// Per-vertex allowed color sets over an integer palette.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListAssignment {
    palette: BTreeSet<Color>,
    lists: Vec<BTreeSet<Color>>,
}

impl ListAssignment {
    /// Every vertex needs a nonempty list contained in the palette.
    pub fn new(palette: BTreeSet<Color>, lists: Vec<BTreeSet<Color>>) -> Result<Self> {
        for (v, list) in lists.iter().enumerate() {
            if list.is_empty() {
                return Err(Error::InvalidInput(format!("empty list at vertex {v}")));
            }
            if !list.is_subset(&palette) {
                return Err(Error::InvalidInput(format!(
                    "list at vertex {v} leaves the palette"
                )));
            }
        }
        Ok(ListAssignment { palette, lists })
    }

    /// The same list for every vertex.
    pub fn uniform(n: usize, list: BTreeSet<Color>) -> Result<Self> {
        ListAssignment::new(list.clone(), vec![list; n])
    }

    pub fn vertex_count(&self) -> usize {
        self.lists.len()
    }

    pub fn palette(&self) -> &BTreeSet<Color> {
        &self.palette
    }

    pub fn list(&self, v: Vertex) -> &BTreeSet<Color> {
        &self.lists[v]
    }

    pub fn lists(&self) -> &[BTreeSet<Color>] {
        &self.lists
    }

    pub fn smallest(&self, v: Vertex) -> Color {
        *self.lists[v].iter().next().expect("lists are nonempty")
    }

    /// Vertices with singleton lists.
    pub fn one_list_set(&self) -> BTreeSet<Vertex> {
        self.lists
            .iter()
            .enumerate()
            .filter(|(_, l)| l.len() == 1)
            .map(|(v, _)| v)
            .collect()
    }

    /// The forced coloring on the singleton-list vertices.
    pub fn forced_coloring(&self) -> Coloring {
        Coloring::from_pairs(
            self.lists
                .iter()
                .enumerate()
                .filter(|(_, l)| l.len() == 1)
                .map(|(v, l)| (v, *l.iter().next().unwrap())),
        )
    }

    /// Union of all lists (the used color universe).
    pub fn color_universe(&self) -> BTreeSet<Color> {
        self.lists.iter().flatten().copied().collect()
    }

    /// True when `c` assigns every vertex of `domain` a color from its list.
    pub fn respected_by(&self, c: &Coloring) -> bool {
        c.iter()
            .all(|(v, col)| v < self.lists.len() && self.lists[v].contains(&col))
    }

    /// Deterministic size-`m` superset of the list at `v`: existing colors
    /// first, then ascending palette colors, then fresh colors past the
    /// palette maximum.
    pub fn enlarged_list(&self, v: Vertex, m: usize) -> BTreeSet<Color> {
        let mut out = self.lists[v].clone();
        for &c in &self.palette {
            if out.len() >= m {
                break;
            }
            out.insert(c);
        }
        let mut next = self.palette.iter().next_back().map_or(0, |&c| c + 1);
        while out.len() < m {
            out.insert(next);
            next += 1;
        }
        out
    }

    /// New assignment with the lists at `targets` enlarged to size `m`.
    pub fn with_enlarged(&self, targets: &BTreeSet<Vertex>, m: usize) -> ListAssignment {
        let mut lists = self.lists.clone();
        let mut palette = self.palette.clone();
        for &v in targets {
            let enlarged = self.enlarged_list(v, m);
            palette.extend(enlarged.iter().copied());
            lists[v] = enlarged;
        }
        ListAssignment { palette, lists }
    }

    /// Restriction to a vertex subset, relabeled through `map` (old -> new).
    pub fn relabel(&self, map: &BTreeMap<Vertex, Vertex>, new_len: usize) -> ListAssignment {
        let mut lists = vec![BTreeSet::new(); new_len];
        for (&old, &new) in map {
            lists[new] = self.lists[old].clone();
        }
        ListAssignment {
            palette: self.palette.clone(),
            lists,
        }
    }
}

/// Explicit `(centers, radius)` certificate that a set lies inside the
/// union of radius-`radius` balls around at most `|centers|` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenteredWitness {
    pub centers: BTreeSet<Vertex>,
    pub radius: usize,
}

impl CenteredWitness {
    pub fn new(centers: BTreeSet<Vertex>, radius: usize) -> Self {
        CenteredWitness { centers, radius }
    }

    /// Zero-radius witness with the set as its own centers.
    pub fn trivial(set: &BTreeSet<Vertex>) -> Self {
        CenteredWitness {
            centers: set.clone(),
            radius: 0,
        }
    }
}

/// True iff `z` is inside the union of balls described by the witness.
pub fn check_centered(g: &Graph, z: &BTreeSet<Vertex>, w: &CenteredWitness) -> Result<bool> {
    let covered = ball(g, &w.centers, w.radius)?;
    Ok(z.is_subset(&covered))
}

/// Parameters of the legitimacy conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LegitimacyParams {
    pub m: usize,
    pub s: usize,
    pub r: usize,
    pub k: usize,
}

impl LegitimacyParams {
    pub fn new(m: usize, s: usize, r: usize, k: usize) -> Result<Self> {
        if m < 2 || r < 1 || k < 1 {
            return Err(Error::InvalidInput(format!(
                "legitimacy params need m >= 2, r >= 1, k >= 1; got m={m}, r={r}, k={k}"
            )));
        }
        Ok(LegitimacyParams { m, s, r, k })
    }
}

/// Checks the three legitimacy conditions:
/// every list has size 1 or m; the singleton-list vertices of each bag are
/// covered by the supplied witness inside the bag-induced subgraph with at
/// most s centers and radius at most r; the forced coloring has weak
/// diameter at most k in the whole graph.
pub fn check_legitimate(
    g: &Graph,
    td: &RootedTreeDecomposition,
    lists: &ListAssignment,
    p: LegitimacyParams,
    witnesses: &BTreeMap<usize, CenteredWitness>,
) -> Result<ValidationReport> {
    let mut report = ValidationReport {
        ok: true,
        violations: Vec::new(),
    };
    if lists.vertex_count() != g.vertex_count() {
        return Err(Error::InvalidInput(format!(
            "list assignment covers {} vertices, graph has {}",
            lists.vertex_count(),
            g.vertex_count()
        )));
    }

    for v in g.vertices() {
        let size = lists.list(v).len();
        if size != 1 && size != p.m {
            report.push(
                Rule::L1,
                format!("vertex {v} has a list of size {size}, not 1 or {}", p.m),
            );
        }
    }

    let forced_set = lists.one_list_set();
    for t in td.nodes() {
        let in_bag: BTreeSet<Vertex> = forced_set.intersection(td.bag(t)).copied().collect();
        if in_bag.is_empty() {
            continue;
        }
        let Some(w) = witnesses.get(&t) else {
            report.push(
                Rule::WitnessRequired,
                format!("bag {t} has singleton-list vertices but no witness"),
            );
            continue;
        };
        if w.centers.len() > p.s {
            report.push(
                Rule::L2,
                format!("bag {t}: witness has {} > s = {} centers", w.centers.len(), p.s),
            );
            continue;
        }
        if w.radius > p.r {
            report.push(
                Rule::L2,
                format!("bag {t}: witness radius {} > r = {}", w.radius, p.r),
            );
            continue;
        }
        if !w.centers.is_subset(td.bag(t)) {
            report.push(
                Rule::L2,
                format!("bag {t}: witness centers leave the bag"),
            );
            continue;
        }
        let (bag_graph, map) = induced_subgraph(g, td.bag(t))?;
        let centers = w.centers.iter().map(|v| map[v]).collect();
        let target: BTreeSet<Vertex> = in_bag.iter().map(|v| map[v]).collect();
        let witness_local = CenteredWitness::new(centers, w.radius);
        if !check_centered(&bag_graph, &target, &witness_local)? {
            report.push(
                Rule::L2,
                format!("bag {t}: witness does not cover its singleton-list vertices"),
            );
        }
    }

    let forced = lists.forced_coloring();
    let (diameter, pair) = coloring_weak_diameter_witness(g, &forced)?;
    if !diameter.le_int(&BigUint::from(p.k)) {
        let loc = match pair {
            Some((a, b)) => format!(
                "forced coloring has weak diameter {diameter} > k = {}; vertices {a} and {b}",
                p.k
            ),
            None => format!("forced coloring has weak diameter {diameter} > k = {}", p.k),
        };
        report.push(Rule::L3, loc);
    }

    Ok(report)
}

/// Fixed quadruple of the bound recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundParams {
    pub theta: usize,
    pub s: usize,
    pub r: usize,
    pub k: usize,
}

impl BoundParams {
    pub fn new(theta: usize, s: usize, r: usize, k: usize) -> Result<Self> {
        if s < theta || r < 1 || k < 1 {
            return Err(Error::InvalidInput(format!(
                "bound params need s >= theta, r >= 1, k >= 1; got ({theta}, {s}, {r}, {k})"
            )));
        }
        Ok(BoundParams { theta, s, r, k })
    }

    /// Ball radius around the root bag within which precolored vertices
    /// are allowed: (k+2)(theta+1).
    pub fn root_ball_radius(&self) -> usize {
        (self.k + 2) * (self.theta + 1)
    }
}

fn big(x: usize) -> BigUint {
    BigUint::from(x)
}

/// Weak-diameter bound for any coloring of a graph whose vertex set is
/// within distance r of at most k centers: 2r + max(k-1, 0) * (2r+1).
pub fn bound_all_centered(k: usize, r: usize) -> BigUint {
    big(2 * r) + big(k.saturating_sub(1)) * big(2 * r + 1)
}

/// Bound after merging an arbitrary coloring of a (k, r)-centered set into
/// a coloring of the rest with weak diameter at most n.
pub fn bound_add_centered_big(k: usize, r: usize, n: &BigUint) -> BigUint {
    let rho = n + big(r) + big(1usize);
    let diam = big(2usize) * &rho;
    &diam + big(k.saturating_sub(1)) * (diam.clone() + big(1usize))
}

pub fn bound_add_centered(k: usize, r: usize, n: usize) -> BigUint {
    bound_add_centered_big(k, r, &big(n))
}

/// The base value of the recursion: the all-centered bound at theta
/// centers and the root-ball radius.
pub fn fstar_n1(bp: &BoundParams) -> BigUint {
    bound_all_centered(bp.theta, bp.root_ball_radius())
}

/// Merge bound for folding precolored root-ball vertices back in.
pub fn fstar_f1(bp: &BoundParams, x: &BigUint) -> BigUint {
    bound_add_centered_big(bp.theta, bp.root_ball_radius(), x)
}

/// Merge bound for recoloring forced bag vertices after delegation.
pub fn fstar_f2(bp: &BoundParams, x: &BigUint) -> BigUint {
    bound_add_centered_big(bp.s, bp.r, x)
}

/// Merge bound for recoloring the vertices whose lists were enlarged
/// near the precolored region.
pub fn fstar_f3(bp: &BoundParams, x: &BigUint) -> BigUint {
    bound_add_centered_big(bp.theta, bp.root_ball_radius() + bp.k + bp.r, x)
}

struct FstarBase {
    n1: BigUint,
    bp: BoundParams,
}

impl FstarBase {
    fn new(bp: &BoundParams) -> Self {
        FstarBase {
            n1: fstar_n1(bp),
            bp: *bp,
        }
    }

    fn f1(&self, x: &BigUint) -> BigUint {
        fstar_f1(&self.bp, x)
    }

    fn f2(&self, x: &BigUint) -> BigUint {
        fstar_f2(&self.bp, x)
    }

    fn f3(&self, x: &BigUint) -> BigUint {
        fstar_f3(&self.bp, x)
    }
}

/// The engine's weak-diameter guarantee:
/// f(0, y) = N1 + f1(y) and
/// f(x, y) = (k+2)(theta+1)^2 * (4 + f3(f1(f(x-1, N1 + f2(y))))).
pub fn bound_fstar(bp: &BoundParams, eta: usize, n: &BigUint) -> Result<BigUint> {
    if eta > bp.theta {
        return Err(Error::InvalidInput(format!(
            "eta = {eta} exceeds theta = {}",
            bp.theta
        )));
    }
    if *n < big(4) {
        return Err(Error::InvalidInput(format!(
            "the bound recursion needs n >= 4, got {n}"
        )));
    }
    let base = FstarBase::new(bp);
    // f(eta, n) only depends on the second argument through the chain
    // y_0 = n, y_{j+1} = N1 + f2(y_j); unfold iteratively from the bottom.
    let mut seconds = vec![n.clone()];
    for _ in 0..eta {
        let prev = seconds.last().unwrap();
        seconds.push(&base.n1 + base.f2(prev));
    }
    let mut value = &base.n1 + base.f1(seconds.last().unwrap());
    let factor = big((bp.k + 2) * (bp.theta + 1) * (bp.theta + 1));
    for _ in 0..eta {
        value = &factor * (big(4) + base.f3(&base.f1(&value)));
    }
    Ok(value)
}

/// Bound for extending a precoloring of weak diameter at most k on a graph
/// of tree-width at most w with lists of size two.
pub fn bound_tw(w: usize, k: usize) -> Result<BigUint> {
    if w < 1 || k < 1 {
        return Err(Error::InvalidInput(format!(
            "bound_tw needs w >= 1 and k >= 1, got ({w}, {k})"
        )));
    }
    let bp = BoundParams::new(w + 1, w + 1, 1, k)?;
    let n2 = bound_all_centered(w + 1, 2).max(big(4));
    bound_fstar(&bp, w + 1, &n2)
}

/// Bound for extending through pendant pieces of diameter at most d:
/// (d+2)N + 2d + 2.
pub fn bound_small_extension(d: usize, n: usize) -> BigUint {
    big((d + 2) * n + 2 * d + 2)
}

pub fn bound_small_extension_big(d: usize, n: &BigUint) -> BigUint {
    big(d + 2) * n + big(2 * d + 2)
}

/// Bound for coloring through a torso oracle with guarantee n over a
/// decomposition of adhesion at most p.
pub fn bound_torso(p: usize, n: usize) -> Result<BigUint> {
    bound_torso_big(p, &big(n))
}

pub fn bound_torso_big(p: usize, n: &BigUint) -> Result<BigUint> {
    if p < 1 || *n < big(1) {
        return Err(Error::InvalidInput(format!(
            "bound_torso needs p >= 1 and n >= 1, got ({p}, {n})"
        )));
    }
    let bp = BoundParams::new(p, p, 1, 1)?;
    bound_fstar(&bp, p, &(big(3) * n + big(4)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::RootedTreeDecomposition;

    fn set(cs: &[Color]) -> BTreeSet<Color> {
        cs.iter().copied().collect()
    }

    #[test]
    fn one_list_set_cases() {
        let two = ListAssignment::uniform(3, set(&[1, 2])).unwrap();
        assert!(two.one_list_set().is_empty());

        let one = ListAssignment::uniform(3, set(&[5])).unwrap();
        assert_eq!(one.one_list_set(), BTreeSet::from([0, 1, 2]));

        let mixed = ListAssignment::new(
            set(&[1, 2]),
            vec![set(&[1]), set(&[1, 2]), set(&[2])],
        )
        .unwrap();
        assert_eq!(mixed.one_list_set(), BTreeSet::from([0, 2]));
    }

    #[test]
    fn check_centered_cases() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let z = BTreeSet::from([0, 1, 2]);
        let w = CenteredWitness::new(BTreeSet::from([1]), 1);
        assert!(check_centered(&g, &z, &w).unwrap());

        let w0 = CenteredWitness::new(BTreeSet::from([0]), 0);
        assert!(check_centered(&g, &BTreeSet::from([0]), &w0).unwrap());

        let far = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let w = CenteredWitness::new(BTreeSet::from([0]), 5);
        assert!(!check_centered(&far, &BTreeSet::from([0, 2]), &w).unwrap());
    }

    #[test]
    fn legitimate_vacuous_case() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let td = RootedTreeDecomposition::single(g.vertices().collect());
        let lists = ListAssignment::uniform(3, set(&[1, 2])).unwrap();
        let p = LegitimacyParams::new(2, 3, 1, 1).unwrap();
        let report = check_legitimate(&g, &td, &lists, p, &BTreeMap::new()).unwrap();
        assert!(report.ok, "{:?}", report.violations);
    }

    #[test]
    fn legitimate_l1_violation() {
        let g = Graph::empty(2);
        let td = RootedTreeDecomposition::single(g.vertices().collect());
        let lists = ListAssignment::new(
            set(&[1, 2, 3]),
            vec![set(&[1, 2]), set(&[1, 2, 3])],
        )
        .unwrap();
        // m = 3: the size-2 list violates L1
        let p = LegitimacyParams::new(3, 2, 1, 1).unwrap();
        let report = check_legitimate(&g, &td, &lists, p, &BTreeMap::new()).unwrap();
        assert!(report.violations.iter().any(|v| v.rule == Rule::L1));
    }

    #[test]
    fn legitimate_l3_violation_and_witness_required() {
        // path 0-1-2: forced singletons at ends with the same color,
        // connected through... not connected in the forced set, so instead
        // force all three: one component of weak diameter 2 > k = 1.
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let td = RootedTreeDecomposition::single(g.vertices().collect());
        let lists = ListAssignment::uniform(3, set(&[7])).unwrap();
        let p = LegitimacyParams::new(2, 3, 1, 1).unwrap();
        let report = check_legitimate(&g, &td, &lists, p, &BTreeMap::new()).unwrap();
        assert!(report.violations.iter().any(|v| v.rule == Rule::WitnessRequired));
        assert!(report.violations.iter().any(|v| v.rule == Rule::L3));

        let witnesses =
            BTreeMap::from([(0usize, CenteredWitness::new(BTreeSet::from([1]), 1))]);
        let report = check_legitimate(&g, &td, &lists, p, &witnesses).unwrap();
        assert!(!report.violations.iter().any(|v| v.rule == Rule::WitnessRequired));
        assert!(report.violations.iter().any(|v| v.rule == Rule::L3));

        // with k = 2 the forced component is fine
        let p = LegitimacyParams::new(2, 3, 1, 2).unwrap();
        let report = check_legitimate(&g, &td, &lists, p, &witnesses).unwrap();
        assert!(report.ok, "{:?}", report.violations);
    }

    #[test]
    fn all_centered_values() {
        assert_eq!(bound_all_centered(1, 0), big(0));
        assert_eq!(bound_all_centered(1, 3), big(6));
        assert_eq!(bound_all_centered(2, 1), big(5));
        assert_eq!(bound_all_centered(0, 5), big(10));
    }

    #[test]
    fn add_centered_values() {
        assert_eq!(bound_add_centered(1, 0, 1), big(4));
        assert_eq!(bound_add_centered(2, 1, 3), big(21));
        for r in 0..4 {
            for n in 1..5 {
                assert_eq!(bound_add_centered(0, r, n), big(2 * (n + r + 1)));
            }
        }
    }

    #[test]
    fn add_centered_monotone_and_dominates_n() {
        let mut prev = BigUint::from(0u32);
        for n in 1..8usize {
            let v = bound_add_centered(2, 1, n);
            assert!(v > prev);
            assert!(v >= big(n));
            prev = v;
        }
    }

    #[test]
    fn fstar_hand_evaluated_values() {
        let bp = BoundParams::new(1, 1, 1, 1).unwrap();
        let base = FstarBase::new(&bp);
        assert_eq!(base.n1, big(12));
        assert_eq!(bound_fstar(&bp, 0, &big(4)).unwrap(), big(34));
        assert_eq!(bound_fstar(&bp, 1, &big(4)).unwrap(), big(4152));
        // f(1, y) = 12 * (16y + 282) from hand expansion
        for y in 4..10usize {
            assert_eq!(
                bound_fstar(&bp, 1, &big(y)).unwrap(),
                big(12 * (16 * y + 282))
            );
        }
    }

    #[test]
    fn fstar_increasing_in_eta_and_dominates_n() {
        let bp = BoundParams::new(2, 2, 1, 1).unwrap();
        let mut prev = big(0);
        for eta in 0..3usize {
            let v = bound_fstar(&bp, eta, &big(5)).unwrap();
            assert!(v > prev);
            assert!(v >= big(5));
            prev = v;
        }
    }

    #[test]
    fn fstar_monotone_in_n() {
        let bp = BoundParams::new(2, 3, 2, 2).unwrap();
        for eta in 0..3usize {
            let a = bound_fstar(&bp, eta, &big(4)).unwrap();
            let b = bound_fstar(&bp, eta, &big(9)).unwrap();
            assert!(a < b);
        }
    }

    #[test]
    fn fstar_rejects_bad_params() {
        let bp = BoundParams::new(1, 1, 1, 1).unwrap();
        assert!(bound_fstar(&bp, 2, &big(4)).is_err());
        assert!(bound_fstar(&bp, 0, &big(3)).is_err());
        assert!(BoundParams::new(3, 2, 1, 1).is_err());
    }

    #[test]
    fn bound_tw_composition_and_monotonicity() {
        let bp = BoundParams::new(2, 2, 1, 1).unwrap();
        let n2 = bound_all_centered(2, 2).max(big(4));
        assert_eq!(bound_tw(1, 1).unwrap(), bound_fstar(&bp, 2, &n2).unwrap());
        for k in 1..4usize {
            let mut prev = big(0);
            for w in 1..4usize {
                let v = bound_tw(w, k).unwrap();
                assert!(v > prev);
                prev = v;
            }
        }
        for w in 1..4usize {
            let mut prev = big(0);
            for k in 1..4usize {
                let v = bound_tw(w, k).unwrap();
                assert!(v > prev);
                prev = v;
            }
        }
    }

    #[test]
    fn small_extension_values() {
        assert_eq!(bound_small_extension(1, 4), big(16));
        for n in 0..5 {
            assert_eq!(bound_small_extension(0, n), big(2 * n + 2));
        }
        for d in 0..5 {
            assert_eq!(bound_small_extension(d, 0), big(2 * d + 2));
        }
    }

    #[test]
    fn bound_torso_value_and_sweeps() {
        // hand expansion for params (1,1,1,1): f(1, y) = 192y + 3384
        assert_eq!(bound_torso(1, 1).unwrap(), big(192 * 7 + 3384));
        let mut prev = big(0);
        for n in 1..4usize {
            let v = bound_torso(1, n).unwrap();
            assert!(v > prev);
            prev = v;
        }
        let mut prev = big(0);
        for p in 1..4usize {
            let v = bound_torso(p, 1).unwrap();
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn enlarged_lists_are_deterministic_supersets() {
        let lists = ListAssignment::new(
            set(&[1, 2, 3]),
            vec![set(&[2]), set(&[1, 3])],
        )
        .unwrap();
        let e0 = lists.enlarged_list(0, 3);
        assert_eq!(e0, set(&[1, 2, 3]));
        let e1 = lists.enlarged_list(1, 4);
        assert_eq!(e1, set(&[1, 2, 3, 4]));
        let big_list = lists.enlarged_list(0, 5);
        assert_eq!(big_list, set(&[1, 2, 3, 4, 5]));
        assert!(big_list.is_superset(lists.list(0)));
    }
}
