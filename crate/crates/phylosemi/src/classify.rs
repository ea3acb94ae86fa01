//! Closed-form characterizations of minimal generators, as pure predicates.
//!
//! Everything here is decided structurally, without searching over member
//! lists, so these predicates can be cross-validated against the exhaustive
//! layer in `generators`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError, PolygonCore};
use crate::semigroup::{
    enumerate_dense, is_member, restrict, DenseGraph, Labeling, SemigroupError,
};

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("expected first Betti number {expected}, found {found}")]
    WrongBetti { expected: usize, found: usize },
    #[error("expected a labeling of degree {expected}, found {found}")]
    WrongDegree { expected: u32, found: u32 },
    #[error("labeling is not a member of the semigroup")]
    NotAMember,
    #[error("vertex `{0}` has valence {1}; graph is not trivalent")]
    NotTrivalent(String, usize),
    #[error("vertex `{0}` has valence 2 and must be suppressed first")]
    NotNormalized(String),
    #[error("graph is not a polygon graph: {0}")]
    NotPolygon(String),
    #[error("cycles are not separated by a unique path")]
    AmbiguousPath,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

/// Structural classes of graphs with first Betti number 2, with the maximal
/// degree of a minimal generator each class attains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Betti2Class {
    NoFreeLegs,
    CyclesInDifferentComponents,
    CyclesShareEdgeOrVertexWithFreeLeg,
    CyclesSeparatedBySingleEdge,
    CyclesSeparatedByInnerVertex,
}

impl Betti2Class {
    pub fn max_degree(self) -> u32 {
        match self {
            Betti2Class::NoFreeLegs => 1,
            Betti2Class::CyclesInDifferentComponents => 2,
            Betti2Class::CyclesShareEdgeOrVertexWithFreeLeg => 2,
            Betti2Class::CyclesSeparatedBySingleEdge => 2,
            Betti2Class::CyclesSeparatedByInnerVertex => 3,
        }
    }
}

impl std::fmt::Display for Betti2Class {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Betti2Class::NoFreeLegs => "NoFreeLegs",
            Betti2Class::CyclesInDifferentComponents => "CyclesInDifferentComponents",
            Betti2Class::CyclesShareEdgeOrVertexWithFreeLeg => {
                "CyclesShareEdgeOrVertexWithFreeLeg"
            }
            Betti2Class::CyclesSeparatedBySingleEdge => "CyclesSeparatedBySingleEdge",
            Betti2Class::CyclesSeparatedByInnerVertex => "CyclesSeparatedByInnerVertex",
        };
        f.write_str(s)
    }
}

/// Classification tag attached to a minimal generator in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GeneratorTag {
    Network,
    Deg2OddLegs,
    Deg3Separated,
    Unclassified,
}

impl std::fmt::Display for GeneratorTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            GeneratorTag::Network => "Network",
            GeneratorTag::Deg2OddLegs => "Deg2OddLegs",
            GeneratorTag::Deg3Separated => "Deg3Separated",
            GeneratorTag::Unclassified => "Unclassified",
        };
        f.write_str(s)
    }
}

/// The unique split of a degree-three element that is not a sum of three
/// networks: a network plus a degree-two indecomposable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deg3Witness {
    pub degree_one: Labeling,
    pub degree_two: Labeling,
}

fn check_degree(w: &Labeling, expected: u32) -> Result<(), ClassifyError> {
    if w.degree() != expected {
        return Err(ClassifyError::WrongDegree { expected, found: w.degree() });
    }
    Ok(())
}

fn check_member(g: &Graph, w: &Labeling) -> Result<(), ClassifyError> {
    if !is_member(g, w)? {
        return Err(ClassifyError::NotAMember);
    }
    Ok(())
}

fn check_trivalent(g: &Graph) -> Result<(), ClassifyError> {
    for v in g.vertices() {
        let val = g.valence(v);
        if val >= 2 && val != 3 {
            return Err(ClassifyError::NotTrivalent(v.clone(), val));
        }
    }
    Ok(())
}

/// Transport of a labeling onto a polygon core: stubs inherit the label of
/// the edge they replaced.
fn restrict_to_core(core: &PolygonCore, w: &Labeling) -> Result<Labeling, ClassifyError> {
    let mut labels = BTreeMap::new();
    for id in core.core.edge_ids() {
        let source = core.stub_origin.get(id).map(String::as_str).unwrap_or(id);
        let val = w
            .get(source)
            .ok_or_else(|| SemigroupError::MissingLabel(source.to_string()))?;
        labels.insert(id.to_string(), val);
    }
    Ok(Labeling::new(w.degree(), labels))
}

/// Degree-two minimal generators on a graph with first Betti number 1:
/// after restriction to the polygon core, the unique cycle carries label 1
/// everywhere, an odd number of cycle legs carry 2, and the rest carry 0.
pub fn is_deg2_indec_betti1(g: &Graph, w: &Labeling) -> Result<bool, ClassifyError> {
    let betti = g.first_betti_number();
    if betti != 1 {
        return Err(ClassifyError::WrongBetti { expected: 1, found: betti });
    }
    check_degree(w, 2)?;
    check_member(g, w)?;
    let core = g.multiple_polygon_core()?;
    let wc = restrict_to_core(&core, w)?;
    let cyc = core.core.cycle_edges();
    Ok(odd_leg_conditions(&core.core, &cyc, &wc))
}

/// Conditions on a cycle with its legs: label 1 on every cycle edge, label
/// 0 or 2 on every leg, with an odd number of 2s.
fn odd_leg_conditions(core: &Graph, cycle: &BTreeSet<String>, w: &Labeling) -> bool {
    let mut twos = 0usize;
    for id in core.edge_ids() {
        let val = w.get(id).expect("core labels present");
        if cycle.contains(id) {
            if val != 1 {
                return false;
            }
        } else {
            match val {
                0 => {}
                2 => twos += 1,
                _ => return false,
            }
        }
    }
    twos % 2 == 1
}

/// Degree-two indecomposability on a trivalent graph: some cycle, taken with
/// the cycle legs incident to it, satisfies the odd-leg conditions. Returns
/// the witness cycle.
pub fn is_deg2_indec_trivalent(
    g: &Graph,
    w: &Labeling,
) -> Result<Option<BTreeSet<String>>, ClassifyError> {
    check_trivalent(g)?;
    check_degree(w, 2)?;
    check_member(g, w)?;
    Ok(deg2_witness_cycle(g, w))
}

fn deg2_witness_cycle(g: &Graph, w: &Labeling) -> Option<BTreeSet<String>> {
    let cyc_edges = g.cycle_edges();
    for cycle in g.enumerate_cycles() {
        if !cycle.iter().all(|id| w.get(id) == Some(1)) {
            continue;
        }
        let cycle_vertices: BTreeSet<&str> = cycle
            .iter()
            .flat_map(|id| {
                let e = g.edge(id).unwrap();
                [e.ends.0.as_str(), e.ends.1.as_str()]
            })
            .collect();
        let mut twos = 0usize;
        let mut ok = true;
        for e in g.edges() {
            if cyc_edges.contains(&e.id) {
                continue; // only non-cycle edges are legs
            }
            if !cycle_vertices.contains(e.ends.0.as_str())
                && !cycle_vertices.contains(e.ends.1.as_str())
            {
                continue;
            }
            match w.get(&e.id) {
                Some(0) => {}
                Some(2) => twos += 1,
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && twos % 2 == 1 {
            return Some(cycle);
        }
    }
    None
}

/// Degree-two indecomposability on arbitrary normalized graphs: suppress, go
/// to a trivalent refinement, and ask whether some member preimage there has
/// a witness cycle. Projections of decomposables are decomposable, and every
/// indecomposable is the projection of an indecomposable, so this decides
/// indecomposability whenever the trivalent characterization does.
pub fn deg2_witness_any(g: &Graph, w: &Labeling) -> Result<bool, ClassifyError> {
    check_degree(w, 2)?;
    check_member(g, w)?;
    let supp = g.suppress_degree2();
    let ws = Labeling::new(w.degree(), supp.transport(w.labels())?);
    if check_trivalent(&supp.graph).is_ok() {
        return Ok(deg2_witness_cycle(&supp.graph, &ws).is_some());
    }
    let refined = supp.graph.trivalent_refinement()?;
    for pre in member_preimages(&refined.graph, &refined.new_edges, &ws)? {
        if deg2_witness_cycle(&refined.graph, &pre).is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// All members of the refined graph projecting onto `w` (new edges free).
fn member_preimages(
    refined: &Graph,
    new_edges: &BTreeSet<String>,
    w: &Labeling,
) -> Result<Vec<Labeling>, ClassifyError> {
    let dg = DenseGraph::new(refined);
    let fixed: Vec<Option<u32>> = dg
        .edge_ids
        .iter()
        .map(|id| {
            if new_edges.contains(id) {
                Ok(None)
            } else {
                w.get(id)
                    .map(Some)
                    .ok_or_else(|| SemigroupError::MissingLabel(id.clone()))
            }
        })
        .collect::<Result<_, _>>()?;
    let found = enumerate_dense(&dg, w.degree(), &fixed);
    Ok(found.iter().map(|m| dg.to_labeling(w.degree(), m)).collect())
}

/// Walked form of a polygon graph: `arcs[i]` joins `verts[i]` to
/// `verts[(i+1) % m]`, and `leg_at[i]` is the pendant leg at `verts[i]`.
struct PolygonShape {
    arcs: Vec<String>,
    leg_at: Vec<Option<String>>,
}

fn polygon_shape(g: &Graph) -> Result<PolygonShape, ClassifyError> {
    let betti = g.first_betti_number();
    if betti != 1 {
        return Err(ClassifyError::WrongBetti { expected: 1, found: betti });
    }
    if g.component_count() != 1 {
        return Err(ClassifyError::NotPolygon("not connected".to_string()));
    }
    let cyc = g.cycle_edges();
    let cyc_edges: Vec<_> = g.edges().iter().filter(|e| cyc.contains(&e.id)).collect();

    // walk the unique cycle
    let (arcs, verts): (Vec<String>, Vec<String>) = if cyc_edges.len() == 1 {
        let e = cyc_edges[0];
        (vec![e.id.clone()], vec![e.ends.0.clone()])
    } else {
        let start = cyc_edges[0];
        let mut arcs = vec![start.id.clone()];
        let mut verts = vec![start.ends.0.clone()];
        let mut cur = start.ends.1.clone();
        while cur != verts[0] {
            verts.push(cur.clone());
            let prev = arcs.last().unwrap().clone();
            let next = cyc_edges
                .iter()
                .find(|e| e.id != prev && (e.ends.0 == cur || e.ends.1 == cur))
                .ok_or_else(|| ClassifyError::NotPolygon("broken cycle walk".to_string()))?;
            arcs.push(next.id.clone());
            cur = next.other_end(&cur).to_string();
        }
        (arcs, verts)
    };

    let mut leg_at: Vec<Option<String>> = vec![None; verts.len()];
    for e in g.edges() {
        if cyc.contains(&e.id) {
            continue;
        }
        if !g.is_leaf_edge(&e.id)? {
            return Err(ClassifyError::NotPolygon(format!(
                "non-cycle edge `{}` is not a pendant leg",
                e.id
            )));
        }
        let attach = if verts.contains(&e.ends.0) { &e.ends.0 } else { &e.ends.1 };
        let pos = verts
            .iter()
            .position(|v| v == attach)
            .ok_or_else(|| ClassifyError::NotPolygon(format!("leg `{}` off the cycle", e.id)))?;
        if leg_at[pos].is_some() {
            return Err(ClassifyError::NotTrivalent(attach.clone(), g.valence(attach)));
        }
        leg_at[pos] = Some(e.id.clone());
    }
    Ok(PolygonShape { arcs, leg_at })
}

impl PolygonShape {
    fn len(&self) -> usize {
        self.arcs.len()
    }

    /// Edge set of the path from the leg at `from` to the leg at `to`,
    /// walking in direction `dir` (1 forward, -1 backward).
    fn leg_path(&self, from: usize, to: usize, dir: i64) -> BTreeSet<String> {
        let m = self.len() as i64;
        let mut set = BTreeSet::new();
        set.insert(self.leg_at[from].clone().expect("path endpoint has a leg"));
        set.insert(self.leg_at[to].clone().expect("path endpoint has a leg"));
        let mut p = from as i64;
        while p.rem_euclid(m) != to as i64 {
            let arc = if dir == 1 { p } else { p - 1 };
            set.insert(self.arcs[arc.rem_euclid(m) as usize].clone());
            p += dir;
        }
        set
    }
}

/// Decides whether a degree-three member of a trivalent polygon graph fails
/// to decompose into three networks; when it does fail, returns the unique
/// split into a network and a degree-two indecomposable.
///
/// The split is forced: the degree-two part has label 1 on the cycle and
/// label 2 exactly on the legs where `w` is at least 2. The leftover must be
/// a network consisting of paths that pair up those legs consecutively
/// around the polygon (with the small variations at the end of the pairing),
/// or the bare cycle when only one leg carries 2. The pairing start and the
/// walking direction are not determined by the graph, so all rotations and
/// both orientations are tried.
pub fn deg3_polygon_characterize(
    g: &Graph,
    w: &Labeling,
) -> Result<Option<Deg3Witness>, ClassifyError> {
    let shape = polygon_shape(g)?;
    check_degree(w, 3)?;
    check_member(g, w)?;

    let m = shape.len();
    // positions of value >= 2 legs, and of all legs
    let mut heavy: Vec<usize> = Vec::new();
    for (i, leg) in shape.leg_at.iter().enumerate() {
        if let Some(id) = leg {
            if w.get(id).expect("leg labeled") >= 2 {
                heavy.push(i);
            }
        }
    }
    if heavy.len() % 2 == 0 {
        return Ok(None);
    }
    let k = (heavy.len() - 1) / 2;

    // forced degree-two part
    let mut two_labels: BTreeMap<String, u32> = BTreeMap::new();
    for arc in &shape.arcs {
        two_labels.insert(arc.clone(), 1);
    }
    for (i, leg) in shape.leg_at.iter().enumerate() {
        if let Some(id) = leg {
            two_labels.insert(id.clone(), if heavy.contains(&i) { 2 } else { 0 });
        }
    }
    let two = Labeling::new(2, two_labels);
    let Some(one) = w.checked_sub(&two) else {
        return Ok(None);
    };
    if !one.is_zero_one() || !is_member(g, &one)? {
        return Ok(None);
    }
    let support = one.support();

    // candidate network shapes, over all rotations and both orientations
    let n_heavy = heavy.len();
    for dir in [1i64, -1] {
        for r in 0..n_heavy {
            let e = |j: usize| -> usize {
                let idx = (r as i64 + dir * j as i64).rem_euclid(n_heavy as i64);
                heavy[idx as usize]
            };
            let mut candidates: Vec<BTreeSet<String>> = Vec::new();
            if k == 0 {
                // empty network, the bare cycle, or a single path from the
                // heavy leg to any other leg
                candidates.push(BTreeSet::new());
                candidates.push(shape.arcs.iter().cloned().collect());
                for (i, leg) in shape.leg_at.iter().enumerate() {
                    if leg.is_some() && i != e(0) {
                        candidates.push(shape.leg_path(e(0), i, dir));
                    }
                }
            } else {
                let paired: BTreeSet<String> = (0..k)
                    .flat_map(|t| shape.leg_path(e(2 * t), e(2 * t + 1), dir))
                    .collect();
                candidates.push(paired.clone());
                // replace the last pair by the skip over the final heavy leg
                let mut skip: BTreeSet<String> = (0..k.saturating_sub(1))
                    .flat_map(|t| shape.leg_path(e(2 * t), e(2 * t + 1), dir))
                    .collect();
                skip.extend(shape.leg_path(e(2 * k - 2), e(2 * k), dir));
                candidates.push(skip);
                // append a path from the unmatched heavy leg to a light leg
                // strictly between it and the pairing start
                let mut p = (e(2 * k) as i64 + dir).rem_euclid(m as i64) as usize;
                while p != e(0) {
                    if shape.leg_at[p].is_some() && !heavy.contains(&p) {
                        let mut ext = paired.clone();
                        ext.extend(shape.leg_path(e(2 * k), p, dir));
                        candidates.push(ext);
                    }
                    p = (p as i64 + dir).rem_euclid(m as i64) as usize;
                }
            }
            if candidates.iter().any(|c| *c == support) {
                return Ok(Some(Deg3Witness { degree_one: one, degree_two: two }));
            }
        }
    }
    Ok(None)
}

/// Classifies a normalized graph with first Betti number 2 by the structure
/// of its two cycles, which determines the maximal degree of a minimal
/// generator.
pub fn classify_betti2(g: &Graph) -> Result<Betti2Class, ClassifyError> {
    let betti = g.first_betti_number();
    if betti != 2 {
        return Err(ClassifyError::WrongBetti { expected: 2, found: betti });
    }
    for v in g.vertices() {
        let ends = g.ends_at(v);
        if ends.len() == 2 && ends[0].id != ends[1].id {
            return Err(ClassifyError::NotNormalized(v.clone()));
        }
    }
    if g.cycle_legs().is_empty() {
        return Ok(Betti2Class::NoFreeLegs);
    }
    let cyc = g.cycle_edges();
    let cyclic_components = g
        .components()
        .iter()
        .filter(|comp| {
            g.edges()
                .iter()
                .any(|e| cyc.contains(&e.id) && comp.contains(&e.ends.0))
        })
        .count();
    if cyclic_components >= 2 {
        return Ok(Betti2Class::CyclesInDifferentComponents);
    }
    let trails = g.enumerate_cycles();
    if trails.len() == 3 {
        // the union of the two cycles is itself a closed trail exactly when
        // they share an edge or a vertex
        return Ok(Betti2Class::CyclesShareEdgeOrVertexWithFreeLeg);
    }
    debug_assert_eq!(trails.len(), 2);
    let dist = cycle_distance(g, &trails[0], &trails[1]);
    if dist == 1 {
        Ok(Betti2Class::CyclesSeparatedBySingleEdge)
    } else {
        Ok(Betti2Class::CyclesSeparatedByInnerVertex)
    }
}

fn cycle_vertices<'g>(g: &'g Graph, cycle: &BTreeSet<String>) -> BTreeSet<&'g str> {
    g.edges()
        .iter()
        .filter(|e| cycle.contains(&e.id))
        .flat_map(|e| [e.ends.0.as_str(), e.ends.1.as_str()])
        .collect()
}

/// Edge-distance between the vertex sets of two cycles.
fn cycle_distance(g: &Graph, c1: &BTreeSet<String>, c2: &BTreeSet<String>) -> usize {
    let start: BTreeSet<String> =
        cycle_vertices(g, c1).iter().map(|s| s.to_string()).collect();
    let goal: BTreeSet<String> = cycle_vertices(g, c2).iter().map(|s| s.to_string()).collect();
    let mut dist: BTreeMap<String, usize> = start.iter().map(|v| (v.clone(), 0)).collect();
    let mut queue: VecDeque<String> = start.iter().cloned().collect();
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        if goal.contains(&v) {
            return d;
        }
        for e in g.ends_at(&v) {
            let u = e.other_end(&v).to_string();
            if !dist.contains_key(&u) {
                dist.insert(u.clone(), d + 1);
                queue.push_back(u);
            }
        }
    }
    usize::MAX
}

/// The ordered edge path separating the two cycles of a separated Betti-2
/// graph: the non-cycle edges whose removal disconnects the cycles.
fn separating_path(
    g: &Graph,
    c1: &BTreeSet<String>,
    c2: &BTreeSet<String>,
) -> Result<Vec<String>, ClassifyError> {
    let cyc = g.cycle_edges();
    let start = cycle_vertices(g, c1);
    let goal = cycle_vertices(g, c2);
    let mut path: Vec<(usize, String)> = Vec::new();
    for e in g.edges() {
        if cyc.contains(&e.id) {
            continue;
        }
        // does removing e disconnect the cycles?
        let mut seen: BTreeSet<&str> = start.clone();
        let mut queue: VecDeque<&str> = start.iter().copied().collect();
        let mut reached = false;
        'bfs: while let Some(v) = queue.pop_front() {
            for f in g.ends_at(v) {
                if f.id == e.id {
                    continue;
                }
                let u = f.other_end(v);
                if goal.contains(u) {
                    reached = true;
                    break 'bfs;
                }
                if seen.insert(u) {
                    queue.push_back(u);
                }
            }
        }
        if !reached {
            // order by distance of the near endpoint from the first cycle
            let d = distance_from(g, &start, &e.ends.0).min(distance_from(g, &start, &e.ends.1));
            path.push((d, e.id.clone()));
        }
    }
    path.sort();
    let ordered: Vec<String> = path.into_iter().map(|(_, id)| id).collect();
    // the separating edges must form a simple chain
    for pair in ordered.windows(2) {
        let a = g.edge(&pair[0]).unwrap();
        let b = g.edge(&pair[1]).unwrap();
        let shared = [&a.ends.0, &a.ends.1]
            .iter()
            .any(|v| **v == b.ends.0 || **v == b.ends.1);
        if !shared {
            return Err(ClassifyError::AmbiguousPath);
        }
    }
    if ordered.is_empty() {
        return Err(ClassifyError::AmbiguousPath);
    }
    Ok(ordered)
}

fn distance_from(g: &Graph, start: &BTreeSet<&str>, to: &str) -> usize {
    if start.contains(to) {
        return 0;
    }
    let mut dist: BTreeMap<String, usize> = start.iter().map(|v| (v.to_string(), 0)).collect();
    let mut queue: VecDeque<String> = start.iter().map(|v| v.to_string()).collect();
    while let Some(v) = queue.pop_front() {
        for e in g.ends_at(&v) {
            let u = e.other_end(&v).to_string();
            let d = dist[&v] + 1;
            if u == to {
                return d;
            }
            if !dist.contains_key(&u) {
                dist.insert(u.clone(), d);
                queue.push_back(u);
            }
        }
    }
    usize::MAX
}

/// Degree-three indecomposability on a trivalent Betti-2 graph whose cycles
/// are separated by at least one inner vertex. The conditions, evaluated on
/// the polygon core:
///
/// 1. the restriction to each cycle with its legs is not a sum of three
///    networks,
/// 2. every edge on the path between the cycles carries 1 or 2,
/// 3. among the remaining edges hanging off that path, exactly one carries
///    1 or 2 and all others carry 0 or 3.
pub fn is_deg3_indec_sep(g: &Graph, w: &Labeling) -> Result<bool, ClassifyError> {
    check_trivalent(g)?;
    let betti = g.first_betti_number();
    if betti != 2 {
        return Err(ClassifyError::WrongBetti { expected: 2, found: betti });
    }
    if classify_betti2(g)? != Betti2Class::CyclesSeparatedByInnerVertex {
        return Err(ClassifyError::NotPolygon(
            "cycles are not separated by an inner vertex".to_string(),
        ));
    }
    check_degree(w, 3)?;
    check_member(g, w)?;

    let core = g.multiple_polygon_core()?;
    let wc = restrict_to_core(&core, w)?;
    let cg = &core.core;
    let trails = cg.enumerate_cycles();
    debug_assert_eq!(trails.len(), 2);

    let path = separating_path(cg, &trails[0], &trails[1])?;
    // (2): path labels in {1, 2}
    for id in &path {
        if !matches!(wc.get(id), Some(1) | Some(2)) {
            return Ok(false);
        }
    }
    // (3): side edges at path vertices
    let cyc = cg.cycle_edges();
    let path_set: BTreeSet<&str> = path.iter().map(String::as_str).collect();
    let path_vertices: BTreeSet<&str> = path
        .iter()
        .flat_map(|id| {
            let e = cg.edge(id).unwrap();
            [e.ends.0.as_str(), e.ends.1.as_str()]
        })
        .collect();
    let mut middling = 0usize;
    for e in cg.edges() {
        if cyc.contains(&e.id) || path_set.contains(e.id.as_str()) {
            continue;
        }
        if !path_vertices.contains(e.ends.0.as_str())
            && !path_vertices.contains(e.ends.1.as_str())
        {
            continue;
        }
        match wc.get(&e.id) {
            Some(1) | Some(2) => middling += 1,
            Some(0) | Some(3) => {}
            _ => return Ok(false),
        }
    }
    if middling != 1 {
        return Ok(false);
    }
    // (1): each cycle restriction resists a three-network decomposition
    for trail in &trails {
        let verts = cycle_vertices(cg, trail);
        let mut sub: BTreeSet<String> = trail.clone();
        for e in cg.edges() {
            if cyc.contains(&e.id) {
                continue;
            }
            if verts.contains(e.ends.0.as_str()) || verts.contains(e.ends.1.as_str()) {
                sub.insert(e.id.clone());
            }
        }
        let subgraph = cg.edge_subgraph(&sub)?;
        let rw = restrict(cg, &wc, &sub)?;
        if deg3_polygon_characterize(&subgraph, &rw)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Best-effort classification tag for a minimal generator.
pub fn tag_generator(g: &Graph, w: &Labeling) -> GeneratorTag {
    match w.degree() {
        1 => GeneratorTag::Network,
        2 => match deg2_witness_any(g, w) {
            Ok(true) => GeneratorTag::Deg2OddLegs,
            _ => GeneratorTag::Unclassified,
        },
        3 => match is_deg3_indec_sep(g, w) {
            Ok(true) => GeneratorTag::Deg3Separated,
            _ => GeneratorTag::Unclassified,
        },
        _ => GeneratorTag::Unclassified,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::family;

    fn lab(g: &Graph, degree: u32, vals: &[(&str, u32)]) -> Labeling {
        Labeling::from_support(g, degree, vals.iter().copied())
    }

    #[test]
    fn betti1_conditions_on_polygon3() {
        let p = family("polygon", &[3]).unwrap();
        let w = lab(&p, 2, &[("c0", 1), ("c1", 1), ("c2", 1), ("l0", 2)]);
        assert!(is_deg2_indec_betti1(&p, &w).unwrap());

        // all three legs: odd count, still indecomposable
        let w = lab(&p, 2, &[("c0", 1), ("c1", 1), ("c2", 1), ("l0", 2), ("l1", 2), ("l2", 2)]);
        assert!(is_deg2_indec_betti1(&p, &w).unwrap());

        // doubled cycle fails condition (1)
        let w = lab(&p, 2, &[("c0", 2), ("c1", 2), ("c2", 2)]);
        assert!(!is_deg2_indec_betti1(&p, &w).unwrap());
    }

    #[test]
    fn betti1_conditions_on_polygon4_even_count() {
        let p = family("polygon", &[4]).unwrap();
        let w = lab(
            &p,
            2,
            &[("c0", 1), ("c1", 1), ("c2", 1), ("c3", 1), ("l0", 2), ("l1", 2)],
        );
        assert!(!is_deg2_indec_betti1(&p, &w).unwrap());
    }

    #[test]
    fn betti1_goes_through_the_core() {
        // triangle with a cherry hanging off one vertex
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
        // 2 on the tail edge, extended over the cherry by parity
        let w = lab(&g, 2, &[("c0", 1), ("c1", 1), ("c2", 1), ("t", 2), ("y1", 2)]);
        assert!(is_member(&g, &w).unwrap());
        assert!(is_deg2_indec_betti1(&g, &w).unwrap());

        // same but the tail carries 0: conditions fail on the core stub
        let w = lab(&g, 2, &[("c0", 1), ("c1", 1), ("c2", 1), ("l1", 2)]);
        assert!(is_deg2_indec_betti1(&g, &w).unwrap());
        let w = lab(&g, 2, &[("c0", 1), ("c1", 1), ("c2", 1), ("l1", 2), ("l2", 2)]);
        assert!(!is_deg2_indec_betti1(&g, &w).unwrap());
    }

    #[test]
    fn theta_degree_two_member_is_not_indecomposable() {
        let t = family("theta", &[]).unwrap();
        let w = lab(&t, 2, &[("m0", 1), ("m1", 1), ("m2", 2)]);
        assert!(is_member(&t, &w).unwrap());
        assert_eq!(is_deg2_indec_trivalent(&t, &w).unwrap(), None);
    }

    #[test]
    fn dumbbell_witness_cycle() {
        let d = family("dumbbell", &[2]).unwrap().suppress_degree2().graph;
        // left loop at weight 1, its path leg doubled
        let w = lab(&d, 2, &[("ca0", 1), ("q1", 2), ("q2", 2), ("cb0", 1)]);
        assert!(is_member(&d, &w).unwrap());
        let witness = is_deg2_indec_trivalent(&d, &w).unwrap();
        assert!(witness.is_some());
    }

    #[test]
    fn classify_the_five_shapes() {
        let theta = family("theta", &[]).unwrap();
        assert_eq!(classify_betti2(&theta).unwrap(), Betti2Class::NoFreeLegs);

        let two = family("disjoint_polygons", &[3, 3]).unwrap();
        assert_eq!(
            classify_betti2(&two).unwrap(),
            Betti2Class::CyclesInDifferentComponents
        );

        let shared = family("dumbbell", &[0]).unwrap();
        assert_eq!(
            classify_betti2(&shared).unwrap(),
            Betti2Class::CyclesShareEdgeOrVertexWithFreeLeg
        );

        let sv = family("shared_vertex", &[]).unwrap();
        assert_eq!(
            classify_betti2(&sv).unwrap(),
            Betti2Class::CyclesShareEdgeOrVertexWithFreeLeg
        );

        let d1 = family("dumbbell", &[1]).unwrap().suppress_degree2().graph;
        assert_eq!(
            classify_betti2(&d1).unwrap(),
            Betti2Class::CyclesSeparatedBySingleEdge
        );

        let d2 = family("dumbbell", &[2]).unwrap().suppress_degree2().graph;
        assert_eq!(
            classify_betti2(&d2).unwrap(),
            Betti2Class::CyclesSeparatedByInnerVertex
        );
    }

    #[test]
    fn classify_rejects_unnormalized() {
        let d2 = family("dumbbell", &[2]).unwrap();
        assert!(matches!(
            classify_betti2(&d2),
            Err(ClassifyError::NotNormalized(_))
        ));
    }

    #[test]
    fn bouquet_two_is_no_free_legs() {
        let b = family("bouquet", &[2]).unwrap();
        assert_eq!(classify_betti2(&b).unwrap(), Betti2Class::NoFreeLegs);
    }

    #[test]
    fn deg3_witness_on_suppressed_dumbbell() {
        let d = family("dumbbell", &[2]).unwrap().suppress_degree2().graph;
        let w = lab(&d, 3, &[("ca0", 2), ("cb0", 2), ("q1", 2), ("q2", 2), ("s1", 2)]);
        assert!(is_member(&d, &w).unwrap());
        assert!(is_deg3_indec_sep(&d, &w).unwrap());

        // a path edge at 3 can be split off
        let w = lab(&d, 3, &[("ca0", 2), ("cb0", 2), ("q1", 3), ("q2", 3), ("s1", 0)]);
        if is_member(&d, &w).unwrap() {
            assert!(!is_deg3_indec_sep(&d, &w).unwrap());
        }
    }

    #[test]
    fn characterize_polygon3_cycle_path_case() {
        let p = family("polygon", &[3]).unwrap();
        let w = lab(&p, 3, &[("c0", 2), ("c1", 2), ("c2", 2), ("l0", 2)]);
        let witness = deg3_polygon_characterize(&p, &w).unwrap().unwrap();
        assert_eq!(witness.degree_one.support().len(), 3, "the cycle path");
        assert_eq!(witness.degree_two.get("l0"), Some(2));
        assert_eq!(witness.degree_one.add(&witness.degree_two).unwrap(), w);
    }

    #[test]
    fn characterize_rejects_three_network_sums() {
        let p = family("polygon", &[3]).unwrap();
        // triple of the cycle path
        let w = lab(&p, 3, &[("c0", 3), ("c1", 3), ("c2", 3)]);
        assert!(deg3_polygon_characterize(&p, &w).unwrap().is_none());
        // sum of the three leg-to-leg paths
        let w = lab(&p, 3, &[("c0", 1), ("c1", 1), ("c2", 1), ("l0", 2), ("l1", 2), ("l2", 2)]);
        assert!(deg3_polygon_characterize(&p, &w).unwrap().is_none());
    }

    #[test]
    fn tags() {
        let p = family("polygon", &[3]).unwrap();
        let net = lab(&p, 1, &[("c0", 1), ("c1", 1), ("c2", 1)]);
        assert_eq!(tag_generator(&p, &net), GeneratorTag::Network);
        let w = lab(&p, 2, &[("c0", 1), ("c1", 1), ("c2", 1), ("l0", 2)]);
        assert_eq!(tag_generator(&p, &w), GeneratorTag::Deg2OddLegs);
    }

    #[test]
    fn deg2_witness_on_shared_vertex_graph() {
        // valence-4 vertex goes through the refinement route
        let sv = family("shared_vertex", &[]).unwrap();
        let w = lab(&sv, 2, &[("ca0", 1), ("ca1", 1), ("ca2", 1), ("la1", 2)]);
        assert!(is_member(&sv, &w).unwrap());
        assert!(deg2_witness_any(&sv, &w).unwrap());
    }
}
