//! Finite multigraphs with loops and parallel edges, plus the structural
//! operations the semigroup layer is built on: Betti number, bridges and
//! cycle edges, edge cutting, the associated tree, degree-two suppression,
//! trivalent refinement and the multiple polygon core.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("duplicate edge id `{0}`")]
    DuplicateEdgeId(String),
    #[error("empty identifier")]
    EmptyId,
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("edge `{0}` is a leaf edge and cannot be cut")]
    CutLeafEdge(String),
    #[error("expected first Betti number {expected}, found {found}")]
    WrongBetti { expected: usize, found: usize },
    #[error("vertex `{0}` has valence 2 and must be suppressed first")]
    NotNormalized(String),
    #[error("vertex `{0}` is an inner vertex of valence {1}, expected 3")]
    NotTrivalent(String, usize),
    #[error("graph has a cycle-free component; no polygon core exists")]
    ForestComponent,
    #[error("labels on merged edges disagree at `{0}`")]
    TransportMismatch(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameters for family `{family}`: {reason}")]
    BadFamilyParams { family: String, reason: String },
}

/// An undirected edge. Equal endpoints encode a loop.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub ends: (String, String),
    pub id: String,
}

impl Edge {
    pub fn new(id: impl Into<String>, u: impl Into<String>, v: impl Into<String>) -> Self {
        let (u, v) = (u.into(), v.into());
        // endpoints kept in sorted order; the graphs are undirected
        let ends = if u <= v { (u, v) } else { (v, u) };
        Edge { ends, id: id.into() }
    }

    pub fn is_loop(&self) -> bool {
        self.ends.0 == self.ends.1
    }

    /// The endpoint different from `v`, or `v` itself for a loop.
    pub fn other_end(&self, v: &str) -> &str {
        if self.ends.0 == v {
            &self.ends.1
        } else {
            &self.ends.0
        }
    }
}

/// A finite multigraph. The vertex set is implied by edge endpoints; edges
/// are kept sorted by id so that equal graphs compare equal structurally.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Graph {
    name: String,
    edges: Vec<Edge>,
    #[serde(skip)]
    vertices: Vec<String>,
}

/// Result of cutting an inner edge: the cut graph together with the two
/// fresh leaf edges that replaced it.
#[derive(Clone, Debug)]
pub struct CutResult {
    pub graph: Graph,
    pub new_leaves: (String, String),
}

/// A tree obtained by repeatedly cutting cycle edges, with one distinguished
/// leaf pair per independent cycle. `origin` maps every tree edge id to the
/// edge id of the source graph it came from.
#[derive(Clone, Debug)]
pub struct AssociatedTree {
    pub tree: Graph,
    pub pairs: Vec<(String, String)>,
    pub origin: BTreeMap<String, String>,
}

impl AssociatedTree {
    /// Re-glues every distinguished pair back into a single edge. With the
    /// id scheme used by [`Graph::associated_tree`] this reproduces the
    /// source graph exactly.
    pub fn reglue(&self) -> Result<Graph, GraphError> {
        let mut g = self.tree.clone();
        for (e1, e2) in self.pairs.iter().rev() {
            let orig = self
                .origin
                .get(e1)
                .ok_or_else(|| GraphError::UnknownEdge(e1.clone()))?
                .clone();
            let u = g.attachment_end(e1)?.to_string();
            let v = g.attachment_end(e2)?.to_string();
            let mut edges: Vec<Edge> = g
                .edges
                .iter()
                .filter(|e| e.id != *e1 && e.id != *e2)
                .cloned()
                .collect();
            edges.push(Edge::new(orig, u, v));
            g = Graph::new(g.name.clone(), edges)?;
        }
        Ok(g)
    }
}

/// Result of suppressing all valence-2 vertices. `provenance` maps each
/// output edge id to the input edges it replaced (a singleton for edges
/// that were untouched).
#[derive(Clone, Debug)]
pub struct Suppression {
    pub graph: Graph,
    pub provenance: BTreeMap<String, Vec<String>>,
}

/// Result of refining all inner vertices to valence 3. Original edges keep
/// their ids; `new_edges` lists the bridging edges added by vertex splits.
#[derive(Clone, Debug)]
pub struct Refinement {
    pub graph: Graph,
    pub new_edges: BTreeSet<String>,
}

/// Decomposition of a graph into a multiple polygon core and pruned trees.
/// Cutting `cut_edges` (in order) separates `trees` from `core`; the stub
/// leaf edges created by the cuts are recorded in `stub_origin`.
#[derive(Clone, Debug)]
pub struct PolygonCore {
    pub cut_edges: Vec<String>,
    pub core: Graph,
    pub trees: Vec<Graph>,
    pub stub_origin: BTreeMap<String, String>,
}

impl Graph {
    pub fn new(name: impl Into<String>, mut edges: Vec<Edge>) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        for e in &edges {
            if e.id.is_empty() || e.ends.0.is_empty() || e.ends.1.is_empty() {
                return Err(GraphError::EmptyId);
            }
            if !seen.insert(e.id.clone()) {
                return Err(GraphError::DuplicateEdgeId(e.id.clone()));
            }
        }
        edges.sort_by(|a, b| a.id.cmp(&b.id));
        let mut vertices: BTreeSet<String> = BTreeSet::new();
        for e in &edges {
            vertices.insert(e.ends.0.clone());
            vertices.insert(e.ends.1.clone());
        }
        Ok(Graph {
            name: name.into(),
            edges,
            vertices: vertices.into_iter().collect(),
        })
    }

    pub fn from_pairs<I, S>(name: &str, pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (S, S, S)>,
        S: Into<String>,
    {
        let edges = pairs
            .into_iter()
            .map(|(id, u, v)| Edge::new(id, u, v))
            .collect();
        Graph::new(name, edges)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = &str> {
        self.edges.iter().map(|e| e.id.as_str())
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges
            .binary_search_by(|e| e.id.as_str().cmp(id))
            .ok()
            .map(|i| &self.edges[i])
    }

    pub fn has_edge(&self, id: &str) -> bool {
        self.edge(id).is_some()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Edge-ends incident to `v`; a loop at `v` contributes two entries.
    pub fn ends_at<'a>(&'a self, v: &str) -> Vec<&'a Edge> {
        let mut out = Vec::new();
        for e in &self.edges {
            if e.ends.0 == v {
                out.push(e);
            }
            if e.ends.1 == v {
                out.push(e);
            }
        }
        out
    }

    /// Number of edge-ends at `v`; a loop counts twice.
    pub fn valence(&self, v: &str) -> usize {
        self.ends_at(v).len()
    }

    pub fn is_leaf_vertex(&self, v: &str) -> bool {
        self.valence(v) == 1
    }

    pub fn is_inner_vertex(&self, v: &str) -> bool {
        self.valence(v) >= 2
    }

    pub fn inner_vertices(&self) -> Vec<&String> {
        self.vertices.iter().filter(|v| self.is_inner_vertex(v)).collect()
    }

    /// An edge is a leaf edge when at least one endpoint is a leaf vertex.
    pub fn is_leaf_edge(&self, id: &str) -> Result<bool, GraphError> {
        let e = self
            .edge(id)
            .ok_or_else(|| GraphError::UnknownEdge(id.to_string()))?;
        Ok(self.is_leaf_vertex(&e.ends.0) || self.is_leaf_vertex(&e.ends.1))
    }

    pub fn is_inner_edge(&self, id: &str) -> Result<bool, GraphError> {
        Ok(!self.is_leaf_edge(id)?)
    }

    /// The inner endpoint of a leaf edge (the one that is not a leaf).
    fn attachment_end(&self, id: &str) -> Result<&str, GraphError> {
        let e = self
            .edge(id)
            .ok_or_else(|| GraphError::UnknownEdge(id.to_string()))?;
        if self.is_leaf_vertex(&e.ends.1) {
            Ok(&e.ends.0)
        } else {
            Ok(&e.ends.1)
        }
    }

    fn component_count_skipping(&self, skip: Option<&str>) -> usize {
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        let mut count = 0;
        for start in &self.vertices {
            if seen.contains(start.as_str()) {
                continue;
            }
            count += 1;
            let mut queue = VecDeque::from([start.as_str()]);
            seen.insert(start);
            while let Some(v) = queue.pop_front() {
                for e in &self.edges {
                    if Some(e.id.as_str()) == skip {
                        continue;
                    }
                    for (a, b) in [(&e.ends.0, &e.ends.1), (&e.ends.1, &e.ends.0)] {
                        if a == v && seen.insert(b) {
                            queue.push_back(b);
                        }
                    }
                }
            }
        }
        count
    }

    pub fn component_count(&self) -> usize {
        self.component_count_skipping(None)
    }

    /// Vertex sets of the connected components, each sorted.
    pub fn components(&self) -> Vec<BTreeSet<String>> {
        let mut seen: BTreeSet<String> = BTreeSet::new();
        let mut comps = Vec::new();
        for start in &self.vertices {
            if seen.contains(start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start.clone()]);
            comp.insert(start.clone());
            while let Some(v) = queue.pop_front() {
                for e in &self.edges {
                    for (a, b) in [(&e.ends.0, &e.ends.1), (&e.ends.1, &e.ends.0)] {
                        if *a == v && comp.insert(b.clone()) {
                            queue.push_back(b.clone());
                        }
                    }
                }
            }
            seen.extend(comp.iter().cloned());
            comps.push(comp);
        }
        comps
    }

    /// |E| - |V| + number of connected components: the number of independent
    /// cycles, equivalently the minimal number of cuts that leave a forest.
    pub fn first_betti_number(&self) -> usize {
        self.edges.len() + self.component_count() - self.vertices.len()
    }

    /// Edges whose removal increases the component count. Loops and parallel
    /// edges are never bridges.
    pub fn bridges(&self) -> BTreeSet<String> {
        let base = self.component_count();
        self.edges
            .iter()
            .filter(|e| !e.is_loop())
            .filter(|e| self.component_count_skipping(Some(&e.id)) > base)
            .map(|e| e.id.clone())
            .collect()
    }

    /// Edges lying on some cycle: exactly the non-bridges.
    pub fn cycle_edges(&self) -> BTreeSet<String> {
        let bridges = self.bridges();
        self.edges
            .iter()
            .filter(|e| !bridges.contains(&e.id))
            .map(|e| e.id.clone())
            .collect()
    }

    /// Non-cycle edges sharing a vertex with some cycle edge.
    pub fn cycle_legs(&self) -> BTreeSet<String> {
        let cyc = self.cycle_edges();
        let mut cycle_vertices: BTreeSet<&str> = BTreeSet::new();
        for id in &cyc {
            let e = self.edge(id).expect("cycle edge exists");
            cycle_vertices.insert(&e.ends.0);
            cycle_vertices.insert(&e.ends.1);
        }
        self.edges
            .iter()
            .filter(|e| !cyc.contains(&e.id))
            .filter(|e| {
                cycle_vertices.contains(e.ends.0.as_str())
                    || cycle_vertices.contains(e.ends.1.as_str())
            })
            .map(|e| e.id.clone())
            .collect()
    }

    /// All cycles, as edge sets. A cycle is a closed trail with unrepeated
    /// edges, i.e. a nonempty connected edge set in which every vertex has
    /// even degree. On trivalent graphs these are exactly the simple cycles.
    /// Exponential in the number of cycle edges; intended for small graphs.
    pub fn enumerate_cycles(&self) -> Vec<BTreeSet<String>> {
        let cyc: Vec<&Edge> = {
            let ids = self.cycle_edges();
            self.edges.iter().filter(|e| ids.contains(&e.id)).collect()
        };
        assert!(cyc.len() <= 30, "cycle enumeration limited to 30 cycle edges");
        let mut out = Vec::new();
        for mask in 1u64..(1u64 << cyc.len()) {
            let subset: Vec<&Edge> = (0..cyc.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| cyc[i])
                .collect();
            if Self::is_closed_trail(&subset) {
                out.push(subset.iter().map(|e| e.id.clone()).collect());
            }
        }
        out.sort_by(|a: &BTreeSet<String>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    fn is_closed_trail(subset: &[&Edge]) -> bool {
        let mut deg: BTreeMap<&str, usize> = BTreeMap::new();
        for e in subset {
            *deg.entry(&e.ends.0).or_insert(0) += 1;
            *deg.entry(&e.ends.1).or_insert(0) += 1;
        }
        if deg.values().any(|d| d % 2 != 0) {
            return false;
        }
        // connectivity over the subset's edges
        let verts: Vec<&str> = deg.keys().copied().collect();
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        let mut queue = VecDeque::from([verts[0]]);
        seen.insert(verts[0]);
        while let Some(v) = queue.pop_front() {
            for e in subset {
                for (a, b) in [(&e.ends.0, &e.ends.1), (&e.ends.1, &e.ends.0)] {
                    if a.as_str() == v && seen.insert(b) {
                        queue.push_back(b);
                    }
                }
            }
        }
        seen.len() == verts.len()
    }

    fn fresh_id(taken: &BTreeSet<String>, base: &str) -> String {
        let mut c = base.to_string();
        while taken.contains(&c) {
            c.push('+');
        }
        c
    }

    /// Replaces the inner edge `e` by two fresh leaf edges, one at each of
    /// its endpoints. Rejects leaf edges.
    pub fn cut_edge(&self, id: &str) -> Result<CutResult, GraphError> {
        let e = self
            .edge(id)
            .ok_or_else(|| GraphError::UnknownEdge(id.to_string()))?
            .clone();
        if self.is_leaf_edge(id)? {
            return Err(GraphError::CutLeafEdge(id.to_string()));
        }
        let mut edge_ids: BTreeSet<String> = self.edge_ids().map(String::from).collect();
        let e1 = Self::fresh_id(&edge_ids, &format!("{id}'"));
        edge_ids.insert(e1.clone());
        let e2 = Self::fresh_id(&edge_ids, &format!("{id}''"));
        let mut vertex_ids: BTreeSet<String> = self.vertices.iter().cloned().collect();
        let x1 = Self::fresh_id(&vertex_ids, &format!("{id}'x"));
        vertex_ids.insert(x1.clone());
        let x2 = Self::fresh_id(&vertex_ids, &format!("{id}''x"));

        let mut edges: Vec<Edge> = self.edges.iter().filter(|f| f.id != id).cloned().collect();
        edges.push(Edge::new(e1.clone(), e.ends.0.clone(), x1));
        edges.push(Edge::new(e2.clone(), e.ends.1.clone(), x2));
        Ok(CutResult {
            graph: Graph::new(self.name.clone(), edges)?,
            new_leaves: (e1, e2),
        })
    }

    /// Cuts one cycle edge at a time (always the lexicographically smallest)
    /// until no cycle remains, recording the distinguished leaf pairs in cut
    /// order.
    pub fn associated_tree(&self) -> AssociatedTree {
        let mut g = self.clone();
        let mut pairs = Vec::new();
        let mut origin: BTreeMap<String, String> = BTreeMap::new();
        while g.first_betti_number() > 0 {
            let e = g
                .cycle_edges()
                .into_iter()
                .next()
                .expect("positive Betti number implies a cycle edge");
            let cut = g.cut_edge(&e).expect("cycle edges are inner");
            let (e1, e2) = cut.new_leaves.clone();
            origin.insert(e1.clone(), e.clone());
            origin.insert(e2.clone(), e.clone());
            pairs.push((e1, e2));
            g = cut.graph;
        }
        for id in g.edge_ids() {
            origin.entry(id.to_string()).or_insert_with(|| id.to_string());
        }
        AssociatedTree { tree: g, pairs, origin }
    }

    /// Merges the two edges at every valence-2 vertex until none remains.
    /// A vertex whose two ends come from a single loop is left alone (it has
    /// nothing to merge). A cycle of valence-2 vertices collapses to a loop.
    pub fn suppress_degree2(&self) -> Suppression {
        let mut g = self.clone();
        let mut provenance: BTreeMap<String, Vec<String>> =
            g.edge_ids().map(|id| (id.to_string(), vec![id.to_string()])).collect();
        loop {
            let target = g.vertices.iter().find_map(|v| {
                let ends = g.ends_at(v);
                if ends.len() != 2 || ends[0].id == ends[1].id {
                    return None;
                }
                Some((v.clone(), ends[0].id.clone(), ends[1].id.clone()))
            });
            let Some((v, id1, id2)) = target else { break };
            let (lo, hi) = if id1 <= id2 { (id1, id2) } else { (id2, id1) };
            let a = g.edge(&lo).unwrap().other_end(&v).to_string();
            let b = g.edge(&hi).unwrap().other_end(&v).to_string();
            let mut chain = provenance.remove(&lo).unwrap();
            chain.extend(provenance.remove(&hi).unwrap());
            provenance.insert(lo.clone(), chain);
            let mut edges: Vec<Edge> = g
                .edges
                .iter()
                .filter(|e| e.id != lo && e.id != hi)
                .cloned()
                .collect();
            edges.push(Edge::new(lo, a, b));
            g = Graph::new(g.name.clone(), edges).expect("ids stay unique");
        }
        Suppression { graph: g, provenance }
    }

    /// Splits every inner vertex of valence above 3 into two vertices joined
    /// by a new edge until the graph is trivalent. When the vertex lies on a
    /// cycle, the split keeps one cycle edge on each side so the new edge
    /// becomes a cycle edge and no cycle legs are created.
    pub fn trivalent_refinement(&self) -> Result<Refinement, GraphError> {
        for v in &self.vertices {
            let ends = self.ends_at(v);
            if ends.len() == 2 && ends[0].id != ends[1].id {
                return Err(GraphError::NotNormalized(v.clone()));
            }
        }
        let mut g = self.clone();
        let mut new_edges = BTreeSet::new();
        loop {
            let Some(v) = g
                .vertices
                .iter()
                .find(|v| g.valence(v) > 3)
                .cloned()
            else {
                break;
            };
            // ends as (edge id, slot), sorted; a loop occupies two slots
            let mut ends: Vec<(String, u8)> = Vec::new();
            for e in g.ends_at(&v) {
                let slot = ends.iter().filter(|(id, _)| *id == e.id).count() as u8;
                ends.push((e.id.clone(), slot));
            }
            ends.sort();
            let cyc = g.cycle_edges();
            let cycle_ends: Vec<&(String, u8)> =
                ends.iter().filter(|(id, _)| cyc.contains(id)).collect();
            let picked: (usize, usize) = if cycle_ends.len() >= 2 {
                let a = ends.iter().position(|x| x == cycle_ends[0]).unwrap();
                // keep the cycle through `a` intact on one side: the partner
                // end must not belong to that cycle, so the new edge closes
                // the cycle through `a` instead of bridging two cycles
                let small_cycle = g
                    .enumerate_cycles()
                    .into_iter()
                    .find(|c| c.contains(&ends[a].0));
                let partner = match small_cycle {
                    Some(c) => ends
                        .iter()
                        .position(|(id, _)| !c.contains(id) && !cyc.contains(id))
                        .or_else(|| ends.iter().position(|(id, _)| !c.contains(id))),
                    None => None,
                };
                let b = partner
                    .or_else(|| ends.iter().position(|(id, _)| *id != ends[a].0))
                    .unwrap_or(1);
                (a.min(b), a.max(b))
            } else {
                (0, 1)
            };

            let mut vertex_ids: BTreeSet<String> = g.vertices.iter().cloned().collect();
            let va = Self::fresh_id(&vertex_ids, &format!("{v}'"));
            vertex_ids.insert(va.clone());
            let vb = Self::fresh_id(&vertex_ids, &format!("{v}''"));
            let edge_ids: BTreeSet<String> = g.edge_ids().map(String::from).collect();
            let bridge = Self::fresh_id(&edge_ids, &format!("{v}^"));

            let mut edges: Vec<Edge> = Vec::new();
            for e in &g.edges {
                if e.ends.0 != v && e.ends.1 != v {
                    edges.push(e.clone());
                    continue;
                }
                // reattach each end of e at va or vb
                let mut new_ends = Vec::new();
                for (slot, end) in [&e.ends.0, &e.ends.1].into_iter().enumerate() {
                    if *end != v {
                        new_ends.push(end.clone());
                        continue;
                    }
                    let this = (e.id.clone(), {
                        // slot index among this edge's ends at v
                        if e.is_loop() {
                            slot as u8
                        } else {
                            0
                        }
                    });
                    let pos = ends.iter().position(|x| *x == this).unwrap();
                    if pos == picked.0 || pos == picked.1 {
                        new_ends.push(va.clone());
                    } else {
                        new_ends.push(vb.clone());
                    }
                }
                edges.push(Edge::new(e.id.clone(), new_ends[0].clone(), new_ends[1].clone()));
            }
            edges.push(Edge::new(bridge.clone(), va, vb));
            new_edges.insert(bridge);
            g = Graph::new(g.name.clone(), edges)?;
        }
        for v in &g.vertices {
            let val = g.valence(v);
            let ends = g.ends_at(v);
            let bare_loop = val == 2 && ends[0].id == ends[1].id;
            if val > 3 || (val == 2 && !bare_loop) {
                return Err(GraphError::NotTrivalent(v.clone(), val));
            }
        }
        Ok(Refinement { graph: g, new_edges })
    }

    /// Separates maximal hanging trees from the cycle-bearing part of the
    /// graph. The chosen cut edges are the non-cycle inner edges closest to
    /// the cycles whose far side is a tree with more than one edge.
    pub fn multiple_polygon_core(&self) -> Result<PolygonCore, GraphError> {
        if self.first_betti_number() == 0 {
            return Err(GraphError::ForestComponent);
        }
        let cyc = self.cycle_edges();
        let comps = self.components();
        for comp in &comps {
            let has_cycle = self
                .edges
                .iter()
                .any(|e| cyc.contains(&e.id) && comp.contains(&e.ends.0));
            if !has_cycle {
                return Err(GraphError::ForestComponent);
            }
        }

        // candidate cuts: non-cycle inner edges whose far side is cycle-free
        // and has at least one real edge
        let mut candidates: Vec<(String, BTreeSet<String>)> = Vec::new();
        for e in &self.edges {
            if cyc.contains(&e.id) || self.is_leaf_edge(&e.id)? {
                continue;
            }
            let (side0, side1) = self.split_sides(&e.id);
            for side in [&side0, &side1] {
                let side_has_cycle = side.iter().any(|id| cyc.contains(id));
                if !side_has_cycle && !side.is_empty() {
                    candidates.push((e.id.clone(), side.clone()));
                }
            }
        }
        // a candidate shadowed by another candidate's tree side is not maximal
        let cut_ids: Vec<String> = candidates
            .iter()
            .filter(|(id, _)| {
                !candidates
                    .iter()
                    .any(|(other, side)| other != id && side.contains(id))
            })
            .map(|(id, _)| id.clone())
            .collect();

        let mut g = self.clone();
        let mut stub_origin = BTreeMap::new();
        let mut tree_stubs = Vec::new();
        for id in &cut_ids {
            let (side0, _side1) = g.split_sides(id);
            let tree_is_side0 = !side0.iter().any(|f| cyc.contains(f));
            let cut = g.cut_edge(id)?;
            let (e1, e2) = cut.new_leaves.clone();
            stub_origin.insert(e1.clone(), id.clone());
            stub_origin.insert(e2.clone(), id.clone());
            // e1 attaches at ends.0's side, e2 at ends.1's side
            tree_stubs.push(if tree_is_side0 { e1 } else { e2 });
            g = cut.graph;
        }

        // partition the cut graph's components into the core and the trees
        let comps = g.components();
        let mut trees = Vec::new();
        let mut core_edges: Vec<Edge> = Vec::new();
        let mut tree_comp_edges: Vec<Vec<Edge>> = vec![Vec::new(); cut_ids.len()];
        for e in &g.edges {
            let comp = comps
                .iter()
                .position(|c| c.contains(&e.ends.0))
                .expect("endpoint in some component");
            let tree_idx = tree_stubs.iter().position(|stub| {
                let se = g.edge(stub).unwrap();
                comps[comp].contains(&se.ends.0)
            });
            match tree_idx {
                Some(i) => tree_comp_edges[i].push(e.clone()),
                None => core_edges.push(e.clone()),
            }
        }
        for (i, edges) in tree_comp_edges.into_iter().enumerate() {
            let t = Graph::new(format!("{}/tree{}", self.name, i), edges)?;
            debug_assert_eq!(t.first_betti_number(), 0);
            trees.push(t);
        }
        let core = Graph::new(self.name.clone(), core_edges)?;
        Ok(PolygonCore { cut_edges: cut_ids, core, trees, stub_origin })
    }

    /// Vertex-side edge sets after removing edge `id`: edges reachable from
    /// each endpoint without crossing `id`. For a non-bridge the two sides
    /// coincide.
    fn split_sides(&self, id: &str) -> (BTreeSet<String>, BTreeSet<String>) {
        let e = self.edge(id).expect("edge exists");
        let reach = |start: &str| -> BTreeSet<String> {
            let mut verts: BTreeSet<&str> = BTreeSet::from([start]);
            let mut queue = VecDeque::from([start]);
            let mut out = BTreeSet::new();
            while let Some(v) = queue.pop_front() {
                for f in &self.edges {
                    if f.id == id {
                        continue;
                    }
                    for (a, b) in [(&f.ends.0, &f.ends.1), (&f.ends.1, &f.ends.0)] {
                        if a.as_str() == v {
                            out.insert(f.id.clone());
                            if verts.insert(b) {
                                queue.push_back(b);
                            }
                        }
                    }
                }
            }
            out
        };
        (reach(&e.ends.0), reach(&e.ends.1))
    }

    /// The subgraph induced by an edge-id set (vertices implied).
    pub fn edge_subgraph(&self, ids: &BTreeSet<String>) -> Result<Graph, GraphError> {
        let mut edges = Vec::new();
        for id in ids {
            let e = self
                .edge(id)
                .ok_or_else(|| GraphError::UnknownEdge(id.clone()))?;
            edges.push(e.clone());
        }
        Graph::new(self.name.clone(), edges)
    }

    /// Disjoint union with ids namespaced by the given prefixes.
    pub fn disjoint_union(name: &str, parts: &[(&str, &Graph)]) -> Result<Graph, GraphError> {
        let mut edges = Vec::new();
        for (prefix, g) in parts {
            for e in &g.edges {
                edges.push(Edge::new(
                    format!("{prefix}.{}", e.id),
                    format!("{prefix}.{}", e.ends.0),
                    format!("{prefix}.{}", e.ends.1),
                ));
            }
        }
        Graph::new(name, edges)
    }
}

impl Suppression {
    /// Carries a labeling of the input graph to the suppressed graph. All
    /// merged edges must carry the same label, which holds for members.
    pub fn transport(
        &self,
        labels: &BTreeMap<String, u32>,
    ) -> Result<BTreeMap<String, u32>, GraphError> {
        let mut out = BTreeMap::new();
        for (id, chain) in &self.provenance {
            let first = chain
                .first()
                .and_then(|c| labels.get(c))
                .ok_or_else(|| GraphError::UnknownEdge(id.clone()))?;
            for c in chain {
                if labels.get(c) != Some(first) {
                    return Err(GraphError::TransportMismatch(id.clone()));
                }
            }
            out.insert(id.clone(), *first);
        }
        Ok(out)
    }

    /// Expands a labeling of the suppressed graph back to the input graph.
    pub fn expand(&self, labels: &BTreeMap<String, u32>) -> Result<BTreeMap<String, u32>, GraphError> {
        let mut out = BTreeMap::new();
        for (id, chain) in &self.provenance {
            let val = labels
                .get(id)
                .ok_or_else(|| GraphError::UnknownEdge(id.clone()))?;
            for c in chain {
                out.insert(c.clone(), *val);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::family;

    fn theta() -> Graph {
        family("theta", &[]).unwrap()
    }

    fn triangle_with_legs() -> Graph {
        family("polygon", &[3]).unwrap()
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(theta().first_betti_number(), 2);
        assert_eq!(triangle_with_legs().first_betti_number(), 1);
        let tree = Graph::from_pairs("path", [("a", "u", "v"), ("b", "v", "w")]).unwrap();
        assert_eq!(tree.first_betti_number(), 0);
    }

    #[test]
    fn cycle_edges_and_legs() {
        let t = theta();
        assert_eq!(t.cycle_edges().len(), 3);
        assert!(t.cycle_legs().is_empty());

        let p = triangle_with_legs();
        let cyc = p.cycle_edges();
        assert_eq!(cyc, ["c0", "c1", "c2"].iter().map(|s| s.to_string()).collect());
        assert_eq!(p.cycle_legs(), ["l0", "l1", "l2"].iter().map(|s| s.to_string()).collect());

        let tree = Graph::from_pairs("path", [("a", "u", "v"), ("b", "v", "w")]).unwrap();
        assert!(tree.cycle_edges().is_empty());
    }

    #[test]
    fn dumbbell_cycle_legs_are_the_path_edges() {
        let d = family("dumbbell", &[2]).unwrap();
        assert_eq!(
            d.cycle_legs(),
            ["q1", "q2"].iter().map(|s| s.to_string()).collect()
        );
    }

    #[test]
    fn loops_count_twice_for_valence() {
        let b = family("bouquet", &[1]).unwrap();
        assert_eq!(b.valence("w"), 2);
        assert!(b.cycle_edges().contains("p0"));
    }

    #[test]
    fn enumerate_cycles_theta_and_tree() {
        assert_eq!(theta().enumerate_cycles().len(), 3);
        assert_eq!(triangle_with_legs().enumerate_cycles().len(), 1);
        let tree = Graph::from_pairs("path", [("a", "u", "v"), ("b", "v", "w")]).unwrap();
        assert!(tree.enumerate_cycles().is_empty());
    }

    #[test]
    fn enumerate_cycles_bouquet_includes_trail_union() {
        let b = family("bouquet", &[2]).unwrap();
        // two loops plus the figure-eight trail through both
        assert_eq!(b.enumerate_cycles().len(), 3);
    }

    #[test]
    fn cut_edge_drops_betti_on_cycle_edges() {
        let t = theta();
        let cut = t.cut_edge("m1").unwrap();
        assert_eq!(cut.graph.first_betti_number(), 1);
        assert_eq!(cut.graph.component_count(), 1);
        for id in [&cut.new_leaves.0, &cut.new_leaves.1] {
            assert!(cut.graph.is_leaf_edge(id).unwrap());
        }
    }

    #[test]
    fn cut_edge_splits_on_bridges() {
        let d = family("dumbbell", &[1]).unwrap();
        let cut = d.cut_edge("q1").unwrap();
        assert_eq!(cut.graph.component_count(), d.component_count() + 1);
        assert_eq!(cut.graph.first_betti_number(), d.first_betti_number());
    }

    #[test]
    fn cut_edge_rejects_leaf_edges() {
        let p = triangle_with_legs();
        assert!(matches!(p.cut_edge("l0"), Err(GraphError::CutLeafEdge(_))));
    }

    #[test]
    fn associated_tree_reglues_to_original() {
        for g in [
            theta(),
            triangle_with_legs(),
            family("bouquet", &[2]).unwrap(),
            family("dumbbell", &[2]).unwrap(),
        ] {
            let at = g.associated_tree();
            assert_eq!(at.tree.first_betti_number(), 0);
            assert_eq!(at.pairs.len(), g.first_betti_number());
            assert_eq!(at.reglue().unwrap(), g);
        }
    }

    #[test]
    fn associated_tree_of_tree_is_identity() {
        let tree = Graph::from_pairs("path", [("a", "u", "v"), ("b", "v", "w")]).unwrap();
        let at = tree.associated_tree();
        assert!(at.pairs.is_empty());
        assert_eq!(at.tree, tree);
    }

    #[test]
    fn bouquet_associated_tree_is_a_claw() {
        let b = family("bouquet", &[2]).unwrap();
        let at = b.associated_tree();
        assert_eq!(at.pairs.len(), 2);
        assert_eq!(at.tree.edge_count(), 4);
        assert_eq!(at.tree.valence("w"), 4);
    }

    #[test]
    fn suppress_square_to_loop() {
        let square = Graph::from_pairs(
            "square",
            [("a", "v0", "v1"), ("b", "v1", "v2"), ("c", "v2", "v3"), ("d", "v0", "v3")],
        )
        .unwrap();
        let s = square.suppress_degree2();
        assert_eq!(s.graph.edge_count(), 1);
        assert!(s.graph.edges()[0].is_loop());
        assert_eq!(s.provenance["a"].len(), 4);
    }

    #[test]
    fn suppress_path_to_edge_and_idempotence() {
        let path = Graph::from_pairs(
            "path3",
            [("a", "u", "v"), ("b", "v", "w"), ("c", "w", "x")],
        )
        .unwrap();
        let s = path.suppress_degree2();
        assert_eq!(s.graph.edge_count(), 1);
        let again = s.graph.suppress_degree2();
        assert_eq!(again.graph, s.graph);
    }

    #[test]
    fn suppress_leaves_normalized_untouched() {
        let p = triangle_with_legs();
        assert_eq!(p.suppress_degree2().graph, p);
    }

    #[test]
    fn refinement_splits_claw() {
        let claw = Graph::from_pairs(
            "claw4",
            [("a", "c", "x0"), ("b", "c", "x1"), ("d", "c", "x2"), ("e", "c", "x3")],
        )
        .unwrap();
        let r = claw.trivalent_refinement().unwrap();
        assert_eq!(r.new_edges.len(), 1);
        assert_eq!(r.graph.edge_count(), 5);
        for v in r.graph.vertices() {
            assert!(r.graph.valence(v) == 1 || r.graph.valence(v) == 3);
        }
    }

    #[test]
    fn refinement_keeps_betti_and_avoids_new_cycle_legs() {
        let sv = family("shared_vertex", &[]).unwrap();
        let legs_before = sv.cycle_legs();
        let r = sv.trivalent_refinement().unwrap();
        assert_eq!(r.graph.first_betti_number(), sv.first_betti_number());
        let legs_after = r.graph.cycle_legs();
        assert_eq!(legs_after, legs_before, "vertex splits must not create cycle legs");

        let b = family("bouquet", &[2]).unwrap();
        let r = b.trivalent_refinement().unwrap();
        assert_eq!(r.graph.first_betti_number(), 2);
        assert!(r.graph.cycle_legs().is_empty());
        // two loops at one vertex become three parallel edges
        assert_eq!(r.graph.edge_count(), 3);
    }

    #[test]
    fn refinement_of_trivalent_graph_is_identity() {
        let p = triangle_with_legs();
        let r = p.trivalent_refinement().unwrap();
        assert!(r.new_edges.is_empty());
        assert_eq!(r.graph, p);
    }

    #[test]
    fn polygon_core_of_polygon_is_itself() {
        let p = triangle_with_legs();
        let core = p.multiple_polygon_core().unwrap();
        assert!(core.cut_edges.is_empty());
        assert!(core.trees.is_empty());
        assert_eq!(core.core, p);

        let t = theta();
        let core = t.multiple_polygon_core().unwrap();
        assert!(core.cut_edges.is_empty());
        assert_eq!(core.core, t);
    }

    #[test]
    fn polygon_core_prunes_cherry() {
        // triangle with legs at two vertices; the third vertex extends into
        // an inner edge carrying a cherry
        let g = Graph::from_pairs(
            "tailed",
            [
                ("c0", "v0", "v1"),
                ("c1", "v1", "v2"),
                ("c2", "v0", "v2"),
                ("l1", "v1", "w1"),
                ("l2", "v2", "w2"),
                ("t", "v0", "x"),
                ("y1", "x", "x1"),
                ("y2", "x", "x2"),
            ],
        )
        .unwrap();
        let core = g.multiple_polygon_core().unwrap();
        assert_eq!(core.cut_edges, vec!["t".to_string()]);
        assert_eq!(core.trees.len(), 1);
        assert_eq!(core.trees[0].edge_count(), 3);
        assert_eq!(core.core.edge_count(), 6);
        assert_eq!(core.core.first_betti_number(), 1);
    }

    #[test]
    fn polygon_core_rejects_forests() {
        let tree = Graph::from_pairs("path", [("a", "u", "v"), ("b", "v", "w")]).unwrap();
        assert!(matches!(tree.multiple_polygon_core(), Err(GraphError::ForestComponent)));
    }

    #[test]
    fn dumbbell_is_its_own_core() {
        let d = family("dumbbell", &[2]).unwrap();
        let core = d.multiple_polygon_core().unwrap();
        assert!(core.cut_edges.is_empty());
        assert_eq!(core.core, d);
    }
}
