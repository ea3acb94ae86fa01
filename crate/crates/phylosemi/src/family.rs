//! Named graph families used by the test suites and the atlas command.

use crate::graph::{Graph, GraphError};

fn bad(family: &str, reason: &str) -> GraphError {
    GraphError::BadFamilyParams { family: family.to_string(), reason: reason.to_string() }
}

/// Builds a member of a named family.
///
/// - `theta`: two vertices joined by three parallel edges (same as `multi_edge 2`).
/// - `multi_edge g`: two vertices joined by `g + 1` parallel edges; Betti `g`.
/// - `polygon k`: a `k`-cycle with one pendant leg per cycle vertex.
/// - `bouquet g`: a single vertex carrying `g` loops.
/// - `dumbbell L`: two triangles joined by an `L`-edge path whose inner
///   vertices are made trivalent by pendant leaves. `L = 0` yields the
///   shared-edge form, with pendant legs keeping the free cycle vertices
///   trivalent. The triangle shapes are inferred from the structural case
///   split (cycles sharing an edge / joined by one edge / separated by inner
///   vertices); the non-attachment triangle vertices stay bare.
/// - `caterpillar n`: the trivalent tree with an `n`-vertex spine.
/// - `shared_edge` / `shared_vertex`: the Betti-2 graphs whose two cycles
///   share one edge, respectively exactly one vertex, with free legs.
/// - `chained_polygon g`: `g` triangles in a chain, consecutive ones joined
///   by a single edge; Betti `g`.
/// - `disjoint_polygons k1 k2`: disjoint union of `polygon k1` and `polygon k2`.
pub fn family(name: &str, params: &[u32]) -> Result<Graph, GraphError> {
    match name {
        "theta" => {
            expect_params(name, params, 0)?;
            multi_edge(2)
        }
        "multi_edge" => {
            let g = one_param(name, params, 1)?;
            multi_edge(g)
        }
        "polygon" => {
            let k = one_param(name, params, 1)?;
            polygon(k)
        }
        "bouquet" => {
            let g = one_param(name, params, 1)?;
            let edges = (0..g).map(|i| (format!("p{i}"), "w".to_string(), "w".to_string()));
            Graph::from_pairs(&format!("bouquet{g}"), edges)
        }
        "dumbbell" => {
            let l = one_param(name, params, 0)?;
            dumbbell(l)
        }
        "caterpillar" => {
            let n = one_param(name, params, 1)?;
            caterpillar(n)
        }
        "shared_edge" => {
            expect_params(name, params, 0)?;
            dumbbell(0)
        }
        "shared_vertex" => {
            expect_params(name, params, 0)?;
            Graph::from_pairs(
                "shared_vertex",
                [
                    ("ca0", "x", "a1"),
                    ("ca1", "a1", "a2"),
                    ("ca2", "a2", "x"),
                    ("cb0", "x", "b1"),
                    ("cb1", "b1", "b2"),
                    ("cb2", "b2", "x"),
                    ("la1", "a1", "wa1"),
                    ("la2", "a2", "wa2"),
                    ("lb1", "b1", "wb1"),
                    ("lb2", "b2", "wb2"),
                ]
                .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string())),
            )
        }
        "chained_polygon" => {
            let g = one_param(name, params, 1)?;
            chained_polygon(g)
        }
        "disjoint_polygons" => {
            if params.len() != 2 {
                return Err(bad(name, "expected two parameters"));
            }
            let a = polygon(params[0])?;
            let b = polygon(params[1])?;
            Graph::disjoint_union(
                &format!("disjoint_polygons{}_{}", params[0], params[1]),
                &[("A", &a), ("B", &b)],
            )
        }
        other => Err(GraphError::UnknownFamily(other.to_string())),
    }
}

/// Family names accepted by [`family`].
pub const FAMILY_NAMES: &[&str] = &[
    "theta",
    "multi_edge",
    "polygon",
    "bouquet",
    "dumbbell",
    "caterpillar",
    "shared_edge",
    "shared_vertex",
    "chained_polygon",
    "disjoint_polygons",
];

fn expect_params(name: &str, params: &[u32], n: usize) -> Result<(), GraphError> {
    if params.len() != n {
        return Err(bad(name, &format!("expected {n} parameter(s)")));
    }
    Ok(())
}

fn one_param(name: &str, params: &[u32], min: u32) -> Result<u32, GraphError> {
    expect_params(name, params, 1)?;
    if params[0] < min {
        return Err(bad(name, &format!("parameter must be at least {min}")));
    }
    Ok(params[0])
}

fn multi_edge(g: u32) -> Result<Graph, GraphError> {
    let edges = (0..=g).map(|i| (format!("m{i}"), "u".to_string(), "v".to_string()));
    let name = if g == 2 { "theta".to_string() } else { format!("multi_edge{g}") };
    Graph::from_pairs(&name, edges)
}

fn polygon(k: u32) -> Result<Graph, GraphError> {
    if k == 0 {
        return Err(bad("polygon", "parameter must be at least 1"));
    }
    let mut edges = Vec::new();
    for i in 0..k {
        edges.push((format!("c{i}"), format!("v{i}"), format!("v{}", (i + 1) % k)));
        edges.push((format!("l{i}"), format!("v{i}"), format!("w{i}")));
    }
    Graph::from_pairs(&format!("polygon{k}"), edges)
}

fn dumbbell(l: u32) -> Result<Graph, GraphError> {
    let mut edges: Vec<(String, String, String)> = Vec::new();
    let name = format!("dumbbell{l}");
    if l == 0 {
        // two triangles sharing the edge `s`, pendant legs at the free vertices
        edges.push(("s".into(), "a0".into(), "b0".into()));
        edges.push(("ca0".into(), "a0".into(), "a1".into()));
        edges.push(("ca1".into(), "a1".into(), "b0".into()));
        edges.push(("cb0".into(), "a0".into(), "b1".into()));
        edges.push(("cb1".into(), "b1".into(), "b0".into()));
        edges.push(("la1".into(), "a1".into(), "wa1".into()));
        edges.push(("lb1".into(), "b1".into(), "wb1".into()));
        return Graph::from_pairs(&name, edges);
    }
    for (side, attach) in [("a", "a0"), ("b", "b0")] {
        edges.push((format!("c{side}0"), attach.into(), format!("{side}1")));
        edges.push((format!("c{side}1"), format!("{side}1"), format!("{side}2")));
        edges.push((format!("c{side}2"), format!("{side}2"), attach.into()));
    }
    let mut prev = "a0".to_string();
    for i in 1..l {
        edges.push((format!("q{i}"), prev.clone(), format!("p{i}")));
        edges.push((format!("s{i}"), format!("p{i}"), format!("pw{i}")));
        prev = format!("p{i}");
    }
    edges.push((format!("q{l}"), prev, "b0".into()));
    Graph::from_pairs(&name, edges)
}

fn caterpillar(n: u32) -> Result<Graph, GraphError> {
    let mut edges: Vec<(String, String, String)> = Vec::new();
    if n == 1 {
        for id in ["f0", "g0", "h0"] {
            edges.push((id.into(), "v0".into(), format!("{id}w")));
        }
        return Graph::from_pairs("caterpillar1", edges);
    }
    for i in 1..n {
        edges.push((format!("e{i}"), format!("v{}", i - 1), format!("v{i}")));
    }
    for i in 0..n {
        edges.push((format!("f{i}"), format!("v{i}"), format!("fw{i}")));
        if i == 0 || i == n - 1 {
            edges.push((format!("g{i}"), format!("v{i}"), format!("gw{i}")));
        }
    }
    Graph::from_pairs(&format!("caterpillar{n}"), edges)
}

fn chained_polygon(g: u32) -> Result<Graph, GraphError> {
    let mut edges: Vec<(String, String, String)> = Vec::new();
    for i in 0..g {
        let (a, b, c) = (format!("t{i}a"), format!("t{i}b"), format!("t{i}c"));
        edges.push((format!("c{i}0"), a.clone(), b.clone()));
        edges.push((format!("c{i}1"), b.clone(), c.clone()));
        edges.push((format!("c{i}2"), c.clone(), a.clone()));
        edges.push((format!("lc{i}"), c, format!("w{i}")));
        if i + 1 < g {
            edges.push((format!("j{i}"), b, format!("t{}a", i + 1)));
        } else {
            edges.push((format!("lb{i}"), b, format!("wb{i}")));
        }
        if i == 0 {
            edges.push(("la0".into(), a, "wa0".into()));
        }
    }
    Graph::from_pairs(&format!("chained_polygon{g}"), edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multi_edge_2_is_theta() {
        assert_eq!(family("theta", &[]).unwrap(), family("multi_edge", &[2]).unwrap());
    }

    #[test]
    fn polygon_3_shape() {
        let p = family("polygon", &[3]).unwrap();
        assert_eq!(p.edge_count(), 6);
        assert_eq!(p.first_betti_number(), 1);
        for v in ["v0", "v1", "v2"] {
            assert_eq!(p.valence(v), 3);
        }
    }

    #[test]
    fn dumbbell_shapes() {
        let d0 = family("dumbbell", &[0]).unwrap();
        assert_eq!(d0.first_betti_number(), 2);
        let d1 = family("dumbbell", &[1]).unwrap();
        assert_eq!(d1.first_betti_number(), 2);
        assert_eq!(d1.edge_count(), 7);
        let d2 = family("dumbbell", &[2]).unwrap();
        assert_eq!(d2.first_betti_number(), 2);
        assert_eq!(d2.edge_count(), 9);
        assert!(d2.has_edge("s1"), "inner path vertex carries a pendant");
    }

    #[test]
    fn chained_polygon_is_trivalent_with_right_betti() {
        for g in 1..=4 {
            let c = family("chained_polygon", &[g]).unwrap();
            assert_eq!(c.first_betti_number() as u32, g);
            for v in c.vertices() {
                assert!(c.valence(v) == 1 || c.valence(v) == 3);
            }
        }
    }

    #[test]
    fn caterpillar_is_trivalent_tree() {
        for n in 1..=4 {
            let t = family("caterpillar", &[n]).unwrap();
            assert_eq!(t.first_betti_number(), 0);
            for v in t.vertices() {
                assert!(t.valence(v) == 1 || t.valence(v) == 3);
            }
        }
    }

    #[test]
    fn bad_params_rejected() {
        assert!(family("polygon", &[]).is_err());
        assert!(family("bouquet", &[0]).is_err());
        assert!(family("nope", &[1]).is_err());
    }
}
