//! JSON document formats for graphs, colorings, tree-decompositions,
//! list-assignments, centered witnesses and gadget output.
//!
//! Vertex and node keys appear as strings in maps (JSON object keys);
//! everything else is plain integers. All maps serialize in sorted key
//! order, so documents are byte-stable for fixed inputs.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::decomposition::RootedTreeDecomposition;
use crate::error::{Error, Result};
use crate::generators::{GadgetOrigin, GadgetOutput};
use crate::graph::{Color, Coloring, Distance, Graph, Vertex};
use crate::legitimacy::{CenteredWitness, ListAssignment};

#[derive(Serialize, Deserialize)]
pub struct GraphDoc {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphDoc {
    pub fn from_graph(g: &Graph) -> Self {
        GraphDoc {
            n: g.vertex_count(),
            edges: g.edges(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        Graph::from_edges(self.n, &self.edges)
    }
}

#[derive(Serialize, Deserialize)]
pub struct ColoringDoc {
    pub colors: BTreeMap<String, Color>,
}

impl ColoringDoc {
    pub fn from_coloring(c: &Coloring) -> Self {
        ColoringDoc {
            colors: c.iter().map(|(v, col)| (v.to_string(), col)).collect(),
        }
    }

    pub fn to_coloring(&self) -> Result<Coloring> {
        let mut out = Coloring::new();
        for (key, &color) in &self.colors {
            out.set(parse_key(key)?, color);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
pub struct TreeDecompositionDoc {
    pub root: usize,
    pub nodes: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub bags: BTreeMap<String, Vec<Vertex>>,
}

impl TreeDecompositionDoc {
    pub fn from_decomposition(td: &RootedTreeDecomposition) -> Self {
        TreeDecompositionDoc {
            root: td.root(),
            nodes: td.nodes().collect(),
            edges: td.edges(),
            bags: td
                .nodes()
                .map(|t| (t.to_string(), td.bag(t).iter().copied().collect()))
                .collect(),
        }
    }

    pub fn to_decomposition(&self) -> Result<RootedTreeDecomposition> {
        let count = self.nodes.len();
        let listed: BTreeSet<usize> = self.nodes.iter().copied().collect();
        if listed.len() != count || listed.iter().next_back().map_or(false, |&m| m >= count) {
            return Err(Error::InvalidDecomposition(
                "node ids must be exactly 0..count".into(),
            ));
        }
        let mut bags = vec![BTreeSet::new(); count];
        for (key, verts) in &self.bags {
            let node = parse_key(key)?;
            if node >= count {
                return Err(Error::InvalidDecomposition(format!(
                    "bag for unknown node {node}"
                )));
            }
            bags[node] = verts.iter().copied().collect();
        }
        RootedTreeDecomposition::from_parts(self.root, &self.edges, bags)
    }
}

#[derive(Serialize, Deserialize)]
pub struct ListAssignmentDoc {
    pub palette: Vec<Color>,
    pub lists: BTreeMap<String, Vec<Color>>,
}

impl ListAssignmentDoc {
    pub fn from_lists(lists: &ListAssignment) -> Self {
        ListAssignmentDoc {
            palette: lists.palette().iter().copied().collect(),
            lists: (0..lists.vertex_count())
                .map(|v| (v.to_string(), lists.list(v).iter().copied().collect()))
                .collect(),
        }
    }

    /// The document must name a list for every vertex of the graph.
    pub fn to_lists(&self, n: usize) -> Result<ListAssignment> {
        let mut lists = vec![None; n];
        for (key, colors) in &self.lists {
            let v = parse_key(key)?;
            if v >= n {
                return Err(Error::InvalidInput(format!(
                    "list for vertex {v} outside 0..{n}"
                )));
            }
            lists[v] = Some(colors.iter().copied().collect::<BTreeSet<Color>>());
        }
        let lists: Vec<BTreeSet<Color>> = lists
            .into_iter()
            .enumerate()
            .map(|(v, l)| l.ok_or_else(|| Error::InvalidInput(format!("vertex {v} has no list"))))
            .collect::<Result<_>>()?;
        let palette: BTreeSet<Color> = self.palette.iter().copied().collect();
        ListAssignment::new(palette, lists)
    }
}

#[derive(Serialize, Deserialize)]
pub struct WitnessEntryDoc {
    pub centers: Vec<Vertex>,
    pub radius: usize,
}

/// Witness documents map tree-node ids to (centers, radius) pairs.
pub type WitnessesDoc = BTreeMap<String, WitnessEntryDoc>;

pub fn witnesses_from_doc(doc: &WitnessesDoc) -> Result<BTreeMap<usize, CenteredWitness>> {
    let mut out = BTreeMap::new();
    for (key, entry) in doc {
        out.insert(
            parse_key(key)?,
            CenteredWitness::new(entry.centers.iter().copied().collect(), entry.radius),
        );
    }
    Ok(out)
}

pub fn witnesses_to_doc(witnesses: &BTreeMap<usize, CenteredWitness>) -> WitnessesDoc {
    witnesses
        .iter()
        .map(|(t, w)| {
            (
                t.to_string(),
                WitnessEntryDoc {
                    centers: w.centers.iter().copied().collect(),
                    radius: w.radius,
                },
            )
        })
        .collect()
}

#[derive(Serialize)]
pub struct GadgetDoc {
    pub graph: GraphDoc,
    pub lists: ListAssignmentDoc,
    pub bipartition: (Vec<Vertex>, Vec<Vertex>),
    pub provenance: BTreeMap<String, GadgetOrigin>,
    pub host_degree: usize,
    pub host_girth: Value,
}

impl GadgetDoc {
    pub fn from_output(out: &GadgetOutput) -> Self {
        GadgetDoc {
            graph: GraphDoc::from_graph(&out.graph),
            lists: ListAssignmentDoc::from_lists(&out.lists),
            bipartition: (
                out.bipartition.0.iter().copied().collect(),
                out.bipartition.1.iter().copied().collect(),
            ),
            provenance: out
                .provenance
                .iter()
                .map(|(v, origin)| (v.to_string(), origin.clone()))
                .collect(),
            host_degree: out.host_degree,
            host_girth: distance_value(out.host_girth),
        }
    }
}

/// Distances serialize as plain integers, with `"infinite"` for the
/// unreachable value.
pub fn distance_value(d: Distance) -> Value {
    match d {
        Distance::Finite(x) => Value::from(x),
        Distance::Infinite => Value::from("infinite"),
    }
}

fn parse_key(key: &str) -> Result<usize> {
    key.parse::<usize>()
        .map_err(|_| Error::InvalidInput(format!("bad integer key {key:?}")))
}
