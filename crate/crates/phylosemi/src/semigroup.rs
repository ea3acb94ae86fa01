//! Graded edge labelings and membership in the phylogenetic semigroup.
//!
//! A labeling of degree `d` assigns a non-negative integer to every edge.
//! Membership is decided locally: at every inner vertex the end labels
//! (a loop contributes both of its ends) must have even sum, and for every
//! odd-cardinality subset `S` of the end slots
//!
//! ```text
//!     sum(S) - sum(complement) <= (|S| - 1) * d
//! ```
//!
//! together with `0 <= label <= d` on every edge. For a trivalent vertex
//! the size-1 subsets are the triangle inequalities and the full subset is
//! the degree inequality. Since the left side is maximized by taking the
//! largest labels, only sorted prefixes need checking.
//!
//! [`is_member_oracle`] decides membership definitionally instead: it lifts
//! the labeling to an associated tree and searches for a decomposition into
//! degree-one networks. The two routes are compared exhaustively in tests.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error)]
pub enum SemigroupError {
    #[error("edge `{0}` has no label")]
    MissingLabel(String),
    #[error("label refers to unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("labeling is not a member of the semigroup")]
    NotAMember,
    #[error("degree must be at least 1")]
    DegreeTooSmall,
    #[error("vertex `{0}` is not a trivalent inner vertex")]
    NotTrivalentVertex(String),
    #[error("local view violates parity")]
    LocalParity,
    #[error("local view violates a triangle inequality")]
    LocalTriangle,
    #[error("graph too large for exhaustive search ({0} edges)")]
    TooLarge(usize),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
}

/// A graded assignment of non-negative integers to the edges of a graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Labeling {
    degree: u32,
    labels: BTreeMap<String, u32>,
}

impl Labeling {
    pub fn new(degree: u32, labels: BTreeMap<String, u32>) -> Self {
        Labeling { degree, labels }
    }

    /// The all-zero labeling of the given degree on a graph's edges.
    pub fn zero(graph: &Graph, degree: u32) -> Self {
        Labeling {
            degree,
            labels: graph.edge_ids().map(|id| (id.to_string(), 0)).collect(),
        }
    }

    /// Zero labeling with the listed edges set to the given values.
    pub fn from_support<'a, I>(graph: &Graph, degree: u32, support: I) -> Self
    where
        I: IntoIterator<Item = (&'a str, u32)>,
    {
        let mut w = Self::zero(graph, degree);
        for (id, val) in support {
            w.labels.insert(id.to_string(), val);
        }
        w
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn labels(&self) -> &BTreeMap<String, u32> {
        &self.labels
    }

    pub fn get(&self, id: &str) -> Option<u32> {
        self.labels.get(id).copied()
    }

    pub fn support(&self) -> BTreeSet<String> {
        self.labels
            .iter()
            .filter(|(_, &v)| v > 0)
            .map(|(k, _)| k.clone())
            .collect()
    }

    pub fn is_zero_one(&self) -> bool {
        self.labels.values().all(|&v| v <= 1)
    }

    pub fn add(&self, other: &Labeling) -> Result<Labeling, SemigroupError> {
        let mut labels = BTreeMap::new();
        for (id, &a) in &self.labels {
            let b = other
                .get(id)
                .ok_or_else(|| SemigroupError::MissingLabel(id.clone()))?;
            labels.insert(id.clone(), a + b);
        }
        for id in other.labels.keys() {
            if !self.labels.contains_key(id) {
                return Err(SemigroupError::UnknownEdge(id.clone()));
            }
        }
        Ok(Labeling { degree: self.degree + other.degree, labels })
    }

    /// Componentwise difference; `None` when any label or the degree would
    /// go negative.
    pub fn checked_sub(&self, other: &Labeling) -> Option<Labeling> {
        if other.degree > self.degree {
            return None;
        }
        let mut labels = BTreeMap::new();
        for (id, &a) in &self.labels {
            let b = other.get(id)?;
            labels.insert(id.clone(), a.checked_sub(b)?);
        }
        Some(Labeling { degree: self.degree - other.degree, labels })
    }
}

impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(deg {};", self.degree)?;
        for (id, v) in &self.labels {
            write!(f, " {id}={v}")?;
        }
        write!(f, ")")
    }
}

/// Why a labeling fails membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Sum of end labels at an inner vertex is odd.
    Parity { vertex: String },
    /// An odd-subset inequality fails at an inner vertex. Size 1 is the
    /// triangle inequality; the full odd valence is the degree inequality.
    OddSubset { vertex: String, subset_size: usize, valence: usize },
    /// An edge label exceeds the degree.
    LabelBound { edge: String },
}

impl Violation {
    /// Condition tag used in CLI output.
    pub fn tag(&self) -> String {
        match self {
            Violation::Parity { .. } => "[\u{2665}\u{2665}] parity".to_string(),
            Violation::OddSubset { subset_size: 1, .. } => "[\u{25b3}] triangle".to_string(),
            Violation::OddSubset { subset_size, valence, .. } if subset_size == valence => {
                "[\u{00b0}] degree".to_string()
            }
            Violation::OddSubset { subset_size, .. } => {
                format!("odd-subset(size {subset_size})")
            }
            Violation::LabelBound { .. } => "[\u{00b0}] label bound".to_string(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Parity { vertex } => write!(f, "{} at vertex {vertex}", self.tag()),
            Violation::OddSubset { vertex, .. } => write!(f, "{} at vertex {vertex}", self.tag()),
            Violation::LabelBound { edge } => write!(f, "{} on edge {edge}", self.tag()),
        }
    }
}

/// Indexed view of a graph for the enumeration and membership hot paths.
pub(crate) struct DenseGraph {
    pub edge_ids: Vec<String>,
    /// Per inner vertex: (vertex name, edge indices of its ends; a loop
    /// appears twice).
    pub inner_ends: Vec<(String, Vec<usize>)>,
}

impl DenseGraph {
    pub fn new(g: &Graph) -> Self {
        let edge_ids: Vec<String> = g.edge_ids().map(String::from).collect();
        let index: BTreeMap<&str, usize> = edge_ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.as_str(), i))
            .collect();
        let mut inner_ends = Vec::new();
        for v in g.vertices() {
            let ends = g.ends_at(v);
            if ends.len() < 2 {
                continue;
            }
            inner_ends.push((v.clone(), ends.iter().map(|e| index[e.id.as_str()]).collect()));
        }
        DenseGraph { edge_ids, inner_ends }
    }

    pub fn to_dense(&self, w: &Labeling) -> Result<Vec<u32>, SemigroupError> {
        for id in w.labels.keys() {
            if !self.edge_ids.contains(id) {
                return Err(SemigroupError::UnknownEdge(id.clone()));
            }
        }
        self.edge_ids
            .iter()
            .map(|id| w.get(id).ok_or_else(|| SemigroupError::MissingLabel(id.clone())))
            .collect()
    }

    pub fn to_labeling(&self, degree: u32, dense: &[u32]) -> Labeling {
        Labeling {
            degree,
            labels: self
                .edge_ids
                .iter()
                .cloned()
                .zip(dense.iter().copied())
                .collect(),
        }
    }

    /// Full membership check on dense labels.
    pub fn check(&self, labels: &[u32], degree: u32) -> Result<(), Violation> {
        for (i, &t) in labels.iter().enumerate() {
            if t > degree {
                return Err(Violation::LabelBound { edge: self.edge_ids[i].clone() });
            }
        }
        for (v, ends) in &self.inner_ends {
            let mut t: Vec<u32> = ends.iter().map(|&i| labels[i]).collect();
            check_vertex(&mut t, degree).map_err(|viol| match viol {
                VertexViolation::Parity => Violation::Parity { vertex: v.clone() },
                VertexViolation::OddSubset(s) => Violation::OddSubset {
                    vertex: v.clone(),
                    subset_size: s,
                    valence: ends.len(),
                },
            })?;
        }
        Ok(())
    }

    pub fn is_member(&self, labels: &[u32], degree: u32) -> bool {
        self.check(labels, degree).is_ok()
    }
}

enum VertexViolation {
    Parity,
    OddSubset(usize),
}

/// Parity plus all odd-subset inequalities at one vertex. Sorts in place.
fn check_vertex(t: &mut [u32], degree: u32) -> Result<(), VertexViolation> {
    let total: u64 = t.iter().map(|&x| x as u64).sum();
    if total % 2 != 0 {
        return Err(VertexViolation::Parity);
    }
    t.sort_unstable_by(|a, b| b.cmp(a));
    let mut prefix: u64 = 0;
    for (i, &x) in t.iter().enumerate() {
        prefix += x as u64;
        let s = i + 1;
        if s % 2 == 1 && 2 * prefix > total + (s as u64 - 1) * degree as u64 {
            return Err(VertexViolation::OddSubset(s));
        }
    }
    Ok(())
}

/// Membership with the violated condition on failure. A missing or unknown
/// label is a hard error, not a violation.
pub fn check_membership(g: &Graph, w: &Labeling) -> Result<Result<(), Violation>, SemigroupError> {
    let dg = DenseGraph::new(g);
    let dense = dg.to_dense(w)?;
    Ok(dg.check(&dense, w.degree()))
}

pub fn is_member(g: &Graph, w: &Labeling) -> Result<bool, SemigroupError> {
    Ok(check_membership(g, w)?.is_ok())
}

/// All degree-one members, i.e. the 0/1 labelings with an even number of
/// selected ends at every inner vertex. These correspond to the edge-disjoint
/// unions of leaf-to-leaf paths and cycles, including the empty one.
///
/// Enumerated combinatorially from the parity conditions alone; tests compare
/// the result against `enumerate_degree(g, 1)`, which goes through the full
/// inequality description.
pub fn enumerate_networks(g: &Graph) -> Vec<Labeling> {
    let dg = DenseGraph::new(g);
    let n = dg.edge_ids.len();
    assert!(n <= 40, "network enumeration limited to 40 edges");
    let mut out = Vec::new();
    let mut labels = vec![0u32; n];
    // backtracking over edges; a vertex is checked once all its ends are set
    let last_end: Vec<usize> = dg
        .inner_ends
        .iter()
        .map(|(_, ends)| ends.iter().copied().max().unwrap())
        .collect();
    fn rec(
        dg: &DenseGraph,
        last_end: &[usize],
        labels: &mut Vec<u32>,
        pos: usize,
        out: &mut Vec<Labeling>,
    ) {
        if pos == labels.len() {
            out.push(dg.to_labeling(1, labels));
            return;
        }
        'next: for val in 0..=1u32 {
            labels[pos] = val;
            for (vi, (_, ends)) in dg.inner_ends.iter().enumerate() {
                if last_end[vi] == pos {
                    let sum: u32 = ends.iter().map(|&i| labels[i]).sum();
                    if sum % 2 != 0 {
                        continue 'next;
                    }
                }
            }
            rec(dg, last_end, labels, pos + 1, out);
        }
        labels[pos] = 0;
    }
    rec(&dg, &last_end, &mut labels, 0, &mut out);
    out.sort();
    out
}

/// All members of degree exactly `d`, in lexicographic label order.
pub fn enumerate_degree(g: &Graph, d: u32) -> Result<Vec<Labeling>, SemigroupError> {
    if d == 0 {
        return Err(SemigroupError::DegreeTooSmall);
    }
    let dg = DenseGraph::new(g);
    let mut out = enumerate_dense(&dg, d, &vec![None; dg.edge_ids.len()]);
    out.sort_unstable();
    Ok(out
        .into_iter()
        .map(|dense| dg.to_labeling(d, &dense))
        .collect())
}

/// Backtracking enumeration of all dense member labelings of degree `d`
/// extending the `fixed` partial assignment. Edges are ordered so vertices
/// complete early; completed inner vertices are checked exactly, incomplete
/// ones pruned optimistically.
pub(crate) fn enumerate_dense(dg: &DenseGraph, d: u32, fixed: &[Option<u32>]) -> Vec<Vec<u32>> {
    let n = dg.edge_ids.len();
    if n == 0 {
        return vec![vec![]];
    }
    if fixed.iter().any(|f| matches!(f, Some(v) if *v > d)) {
        return Vec::new();
    }

    // assignment order: repeatedly take the edge finishing the most vertex
    // ends, preferring vertices that are nearly complete
    let mut order: Vec<usize> = Vec::with_capacity(n);
    {
        let mut remaining_at: Vec<usize> = dg.inner_ends.iter().map(|(_, e)| e.len()).collect();
        let mut assigned = vec![false; n];
        let vertex_of: Vec<Vec<usize>> = (0..n)
            .map(|e| {
                dg.inner_ends
                    .iter()
                    .enumerate()
                    .filter(|(_, (_, ends))| ends.contains(&e))
                    .map(|(vi, _)| vi)
                    .collect()
            })
            .collect();
        for _ in 0..n {
            let best = (0..n)
                .filter(|&e| !assigned[e])
                .min_by_key(|&e| {
                    let slack: usize = vertex_of[e]
                        .iter()
                        .map(|&vi| {
                            let uses = dg.inner_ends[vi].1.iter().filter(|&&x| x == e).count();
                            remaining_at[vi] - uses
                        })
                        .sum();
                    (slack, e)
                })
                .unwrap();
            assigned[best] = true;
            for &vi in &vertex_of[best] {
                let uses = dg.inner_ends[vi].1.iter().filter(|&&x| x == best).count();
                remaining_at[vi] -= uses;
            }
            order.push(best);
        }
    }

    // per assignment position, the inner vertices the edge touches
    let pos_of: Vec<usize> = {
        let mut p = vec![0; n];
        for (i, &e) in order.iter().enumerate() {
            p[e] = i;
        }
        p
    };
    let touched_by: Vec<Vec<usize>> = (0..n)
        .map(|pos| {
            let e = order[pos];
            dg.inner_ends
                .iter()
                .enumerate()
                .filter(|(_, (_, ends))| ends.contains(&e))
                .map(|(vi, _)| vi)
                .collect()
        })
        .collect();

    struct Search<'a> {
        dg: &'a DenseGraph,
        d: u32,
        order: &'a [usize],
        pos_of: &'a [usize],
        touched_by: &'a [Vec<usize>],
        fixed: &'a [Option<u32>],
        labels: Vec<u32>,
        out: Vec<Vec<u32>>,
    }

    impl Search<'_> {
        fn feasible(&self, pos: usize, vi: usize) -> bool {
            let (_, ends) = &self.dg.inner_ends[vi];
            let mut assigned: Vec<u32> = Vec::with_capacity(ends.len());
            let mut unassigned = 0usize;
            for &e in ends {
                if self.pos_of[e] <= pos {
                    assigned.push(self.labels[e]);
                } else {
                    unassigned += 1;
                }
            }
            if unassigned == 0 {
                let mut t = assigned;
                return check_vertex(&mut t, self.d).is_ok();
            }
            let sum: u64 = assigned.iter().map(|&x| x as u64).sum();
            let max = assigned.iter().copied().max().unwrap_or(0) as u64;
            // the size-1 inequality with unassigned ends at their maximum
            if max > (sum - max) + unassigned as u64 * self.d as u64 {
                return false;
            }
            // the full-subset inequality when the valence is odd
            if ends.len() % 2 == 1 && sum > (ends.len() as u64 - 1) * self.d as u64 {
                return false;
            }
            true
        }

        fn rec(&mut self, pos: usize) {
            if pos == self.order.len() {
                self.out.push(self.labels.clone());
                return;
            }
            let e = self.order[pos];
            let range = match self.fixed[e] {
                Some(v) => v..=v,
                None => 0..=self.d,
            };
            'next: for val in range {
                self.labels[e] = val;
                for &vi in &self.touched_by[pos] {
                    if !self.feasible(pos, vi) {
                        continue 'next;
                    }
                }
                self.rec(pos + 1);
            }
            self.labels[e] = 0;
        }
    }

    let mut s = Search {
        dg,
        d,
        order: &order,
        pos_of: &pos_of,
        touched_by: &touched_by,
        fixed,
        labels: vec![0; n],
        out: Vec::new(),
    };
    s.rec(0);
    s.out
}

/// The three end labels at a trivalent inner vertex, in edge-id order with
/// loop slots adjacent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalView {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

/// The unique path multiplicities at a trivalent vertex: a = y+z, b = x+z,
/// c = x+y.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalPaths {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

pub fn local_view(g: &Graph, w: &Labeling, v: &str) -> Result<LocalView, SemigroupError> {
    let ends = g.ends_at(v);
    if ends.len() != 3 {
        return Err(SemigroupError::NotTrivalentVertex(v.to_string()));
    }
    let mut vals = Vec::with_capacity(3);
    for e in ends {
        vals.push(
            w.get(&e.id)
                .ok_or_else(|| SemigroupError::MissingLabel(e.id.clone()))?,
        );
    }
    Ok(LocalView { a: vals[0], b: vals[1], c: vals[2] })
}

pub fn local_paths(view: LocalView) -> Result<LocalPaths, SemigroupError> {
    let LocalView { a, b, c } = view;
    if (a + b + c) % 2 != 0 {
        return Err(SemigroupError::LocalParity);
    }
    if a + b < c || b + c < a || a + c < b {
        return Err(SemigroupError::LocalTriangle);
    }
    Ok(LocalPaths { x: (b + c - a) / 2, y: (a + c - b) / 2, z: (a + b - c) / 2 })
}

/// Restriction of a labeling to an edge subset, keeping the degree.
pub fn restrict(
    g: &Graph,
    w: &Labeling,
    sub: &BTreeSet<String>,
) -> Result<Labeling, SemigroupError> {
    let mut labels = BTreeMap::new();
    for id in sub {
        if !g.has_edge(id) {
            return Err(SemigroupError::UnknownEdge(id.clone()));
        }
        labels.insert(
            id.clone(),
            w.get(id).ok_or_else(|| SemigroupError::MissingLabel(id.clone()))?,
        );
    }
    Ok(Labeling { degree: w.degree(), labels })
}

/// Definitional membership test, used as the test oracle.
///
/// Lifts a labeling to an associated tree (both stubs of a cut edge carry
/// the edge's label) and decides by exhaustive backtracking whether the tree
/// labeling is a sum of `degree` tree networks. Tree networks are generated
/// by a plain bitmask scan over 0/1 labelings with even end sums, so this
/// path shares nothing with the inequality-based membership test.
///
/// The struct form caches the associated tree and its network list so many
/// labelings of the same graph can be tested cheaply.
pub struct MembershipOracle {
    dg: DenseGraph,
    origin_index: Vec<usize>,
    vertex_ends: Vec<Vec<usize>>,
    nets: Vec<Vec<u32>>,
}

impl MembershipOracle {
    pub fn new(g: &Graph) -> Result<Self, SemigroupError> {
        let dg = DenseGraph::new(g);
        let at = g.associated_tree();
        let tree = &at.tree;
        let m = tree.edge_count();
        if m > 26 {
            return Err(SemigroupError::TooLarge(m));
        }
        let ids: Vec<&str> = tree.edge_ids().collect();
        // tree edge index -> source edge index
        let origin_index = ids
            .iter()
            .map(|id| {
                let orig = &at.origin[*id];
                dg.edge_ids.iter().position(|x| x == orig).unwrap()
            })
            .collect();

        let mut vertex_ends: Vec<Vec<usize>> = Vec::new();
        for v in tree.vertices() {
            let ends = tree.ends_at(v);
            if ends.len() < 2 {
                continue;
            }
            vertex_ends.push(
                ends.iter()
                    .map(|e| ids.iter().position(|id| *id == e.id).unwrap())
                    .collect(),
            );
        }

        let mut nets: Vec<Vec<u32>> = Vec::new();
        'mask: for mask in 0u64..(1u64 << m) {
            let vals: Vec<u32> = (0..m).map(|i| ((mask >> i) & 1) as u32).collect();
            for ends in &vertex_ends {
                if ends.iter().map(|&i| vals[i]).sum::<u32>() % 2 != 0 {
                    continue 'mask;
                }
            }
            nets.push(vals);
        }
        nets.sort();
        Ok(MembershipOracle { dg, origin_index, vertex_ends, nets })
    }

    pub fn is_member(&self, w: &Labeling) -> Result<bool, SemigroupError> {
        let dense = self.dg.to_dense(w)?;
        let mut rest: Vec<u32> = self.origin_index.iter().map(|&i| dense[i]).collect();
        Ok(self.rec(&mut rest, w.degree(), 0))
    }

    fn prunable(&self, rest: &[u32], r: u32) -> bool {
        if rest.iter().any(|&x| x > r) {
            return true;
        }
        self.vertex_ends
            .iter()
            .any(|ends| ends.iter().map(|&i| rest[i] as u64).sum::<u64>() % 2 != 0)
    }

    fn rec(&self, rest: &mut Vec<u32>, r: u32, from: usize) -> bool {
        if r == 0 {
            return rest.iter().all(|&x| x == 0);
        }
        if self.prunable(rest, r) {
            return false;
        }
        for (i, net) in self.nets.iter().enumerate().skip(from) {
            if net.iter().zip(rest.iter()).any(|(&n, &x)| n > x) {
                continue;
            }
            for (x, &n) in rest.iter_mut().zip(net.iter()) {
                *x -= n;
            }
            if self.rec(rest, r - 1, i) {
                return true;
            }
            for (x, &n) in rest.iter_mut().zip(net.iter()) {
                *x += n;
            }
        }
        false
    }
}

/// One-shot form of [`MembershipOracle`].
pub fn is_member_oracle(g: &Graph, w: &Labeling) -> Result<bool, SemigroupError> {
    MembershipOracle::new(g)?.is_member(w)
}
