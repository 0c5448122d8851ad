//! Constructors for the standard example classes.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::dirichlet::{validate_order, ArrowOrder, DirichletOrder};
use crate::error::{GraphError, GroupoidError};
use crate::groupoid::{Arrow, FiniteTwistedGroupoid, PointId, UnitSpace};

/// Full equivalence relation on points `1..=n`; its algebra is `M_n`.
pub fn build_full_relation(n: usize) -> Result<FiniteTwistedGroupoid, GroupoidError> {
    build_block_relation(&[n])
}

/// Disjoint union of full relations, points numbered `1, 2, …` block by block.
pub fn build_block_relation(sizes: &[usize]) -> Result<FiniteTwistedGroupoid, GroupoidError> {
    let total: usize = sizes.iter().sum();
    let units = UnitSpace::new((1..=total).map(|i| i.to_string()))?;
    FiniteTwistedGroupoid::untwisted(units, block_arrows(sizes))
}

fn block_arrows(sizes: &[usize]) -> Vec<Arrow> {
    let mut arrows = Vec::new();
    let mut start = 0;
    for &n in sizes {
        for i in start..start + n {
            for j in start..start + n {
                arrows.push(Arrow::new(PointId(i), PointId(j)));
            }
        }
        start += n;
    }
    arrows
}

/// `{(x, y) : x ≤ y}` by point index: the upper-triangular order.
pub fn upper_triangular_order(g: &Arc<FiniteTwistedGroupoid>) -> ArrowOrder {
    ArrowOrder::new(g, g.arrows().iter().filter(|a| a.range <= a.source).copied())
        .expect("arrows come from the groupoid")
}

/// Upper-triangular matrices inside `M_n`: a strongly maximal triangular order.
pub fn build_taf_order(n: usize) -> Result<DirichletOrder, GroupoidError> {
    let g = Arc::new(build_full_relation(n)?);
    Ok(validate_order(upper_triangular_order(&g)).expect("upper-triangular order is total and closed"))
}

/// Full relation on `1..=n` twisted by the coboundary of a fixed family of
/// phases `b`: `σ(α, β) = b(α) b(β) conj(b(αβ))` with `b = 1` on units.
///
/// Every 2-cocycle on a full relation is of this form, so this covers the
/// twisted case up to a diagonal change of basis while still exercising
/// every phase in convolution, involution and the GNS matrices.
pub fn build_twisted_full_relation(n: usize) -> Result<FiniteTwistedGroupoid, GroupoidError> {
    let units = UnitSpace::new((1..=n).map(|i| i.to_string()))?;
    let arrows = block_arrows(&[n]);
    let phase = |a: Arrow| -> Complex64 {
        if a.is_unit() {
            return Complex64::new(1.0, 0.0);
        }
        let (i, j) = ((a.range.0 + 1) as f64, (a.source.0 + 1) as f64);
        Complex64::from_polar(1.0, (0.7 * i * j * j + 0.3 * i + 0.11 * j * j * j).rem_euclid(2.0 * PI))
    };
    let mut cocycle = Vec::new();
    for &a in &arrows {
        for &b in arrows.iter().filter(|b| a.is_composable_with(b)) {
            let ab = Arrow::new(a.range, b.source);
            cocycle.push(((a, b), phase(a) * phase(b) * phase(ab).conj()));
        }
    }
    FiniteTwistedGroupoid::new(units, arrows, cocycle)
}

/// Four points with `1` on top, `2` at the bottom and `3`, `4` incomparable
/// in between. The order is closed under composition but not total, and its
/// up-sets `{1,3}` and `{1,4}` are incomparable.
pub fn build_diamond_order() -> ArrowOrder {
    let g = Arc::new(build_full_relation(4).expect("n > 0"));
    let covers = [(0, 2), (0, 3), (0, 1), (2, 1), (3, 1)];
    let arrows = g
        .units_iter()
        .chain(covers.iter().map(|&(x, y)| Arrow::new(PointId(x), PointId(y))))
        .collect::<Vec<_>>();
    ArrowOrder::new(&g, arrows).expect("arrows of the full relation")
}

/// A named directed edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub from: String,
    pub to: String,
}

impl Edge {
    pub fn new(name: &str, from: &str, to: &str) -> Self {
        Edge {
            name: name.to_string(),
            from: from.to_string(),
            to: to.to_string(),
        }
    }
}

/// Path groupoid of a finite acyclic graph.
///
/// Points are the paths ending at a sink, named by their edges joined with
/// `.`; the empty path at a sink is named after the sink. Two paths are
/// equivalent when they end at the same sink, and the order relates `μ` to
/// `ν` when `|μ| ≥ |ν|`.
pub fn build_graph_groupoid(
    vertices: &[&str],
    edges: &[Edge],
) -> Result<(Arc<FiniteTwistedGroupoid>, DirichletOrder), GraphError> {
    let index: BTreeMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut names = BTreeSet::new();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    let mut incoming: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    for (e, edge) in edges.iter().enumerate() {
        if edge.name.is_empty() || edge.name.contains('.') {
            return Err(GraphError::BadEdgeName(edge.name.clone()));
        }
        if !names.insert(edge.name.as_str()) {
            return Err(GraphError::DuplicateEdge(edge.name.clone()));
        }
        let from = *index
            .get(edge.from.as_str())
            .ok_or_else(|| GraphError::UnknownVertex(edge.from.clone()))?;
        let to = *index
            .get(edge.to.as_str())
            .ok_or_else(|| GraphError::UnknownVertex(edge.to.clone()))?;
        out[from].push(e);
        incoming[to].push(e);
    }

    let vertex_of = |name: &str| index[name];
    let sinks: Vec<usize> = (0..vertices.len()).filter(|&v| out[v].is_empty()).collect();

    // backward search from the sinks
    let mut reaches = vec![false; vertices.len()];
    let mut stack = sinks.clone();
    while let Some(v) = stack.pop() {
        if std::mem::replace(&mut reaches[v], true) {
            continue;
        }
        stack.extend(incoming[v].iter().map(|&e| vertex_of(&edges[e].from)));
    }
    if let Some(v) = (0..vertices.len()).find(|&v| !reaches[v]) {
        return Err(GraphError::NoSinkReachable(vertices[v].to_string()));
    }
    if let Some(cycle) = find_cycle(vertices.len(), &out, |e| vertex_of(&edges[e].to)) {
        return Err(GraphError::Cycle(cycle.into_iter().map(|v| vertices[v].to_string()).collect()));
    }

    // paths grouped by sink, shortest first
    let mut point_names = Vec::new();
    let mut lengths = Vec::new();
    let mut blocks = Vec::new();
    for &sink in &sinks {
        let start = point_names.len();
        let mut layer: Vec<(usize, Vec<usize>)> = vec![(sink, Vec::new())];
        while !layer.is_empty() {
            let mut labelled: Vec<(String, usize, Vec<usize>)> = layer
                .into_iter()
                .map(|(v, path)| {
                    let name = if path.is_empty() {
                        vertices[sink].to_string()
                    } else {
                        path.iter().map(|&e| edges[e].name.as_str()).collect::<Vec<_>>().join(".")
                    };
                    (name, v, path)
                })
                .collect();
            labelled.sort();
            let mut next = Vec::new();
            for (name, v, path) in labelled {
                lengths.push(path.len());
                point_names.push(name);
                for &e in &incoming[v] {
                    let mut longer = vec![e];
                    longer.extend(&path);
                    next.push((vertex_of(&edges[e].from), longer));
                }
            }
            layer = next;
        }
        blocks.push(start..point_names.len());
    }

    let units = UnitSpace::new(point_names)?;
    let mut arrows = Vec::new();
    let mut order = Vec::new();
    for block in &blocks {
        for i in block.clone() {
            for j in block.clone() {
                let a = Arrow::new(PointId(i), PointId(j));
                arrows.push(a);
                if lengths[i] >= lengths[j] {
                    order.push(a);
                }
            }
        }
    }
    let g = Arc::new(FiniteTwistedGroupoid::untwisted(units, arrows)?);
    let order = ArrowOrder::new(&g, order).expect("arrows of the groupoid");
    let order = validate_order(order).expect("length order is total and closed");
    Ok((g, order))
}

fn find_cycle(n: usize, out: &[Vec<usize>], head: impl Fn(usize) -> usize) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    fn visit(
        v: usize,
        out: &[Vec<usize>],
        head: &dyn Fn(usize) -> usize,
        mark: &mut [Mark],
        path: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        mark[v] = Mark::Active;
        path.push(v);
        for &e in &out[v] {
            let w = head(e);
            match mark[w] {
                Mark::Active => {
                    let at = path.iter().position(|&u| u == w).expect("active vertices are on the path");
                    let mut cycle = path[at..].to_vec();
                    cycle.push(w);
                    return Some(cycle);
                }
                Mark::New => {
                    if let Some(c) = visit(w, out, head, mark, path) {
                        return Some(c);
                    }
                }
                Mark::Done => {}
            }
        }
        path.pop();
        mark[v] = Mark::Done;
        None
    }
    let mut mark = vec![Mark::New; n];
    for v in 0..n {
        if mark[v] == Mark::New {
            if let Some(c) = visit(v, out, &head, &mut mark, &mut Vec::new()) {
                return Some(c);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_relation_sizes() {
        assert_eq!(build_full_relation(1).unwrap().num_arrows(), 1);
        let g = build_full_relation(3).unwrap();
        assert_eq!(g.num_arrows(), 9);
        assert!(g.validate().is_valid());
        assert!(matches!(build_full_relation(0), Err(GroupoidError::EmptyUnitSpace)));
    }

    #[test]
    fn taf2_order() {
        let d = build_taf_order(2).unwrap();
        let expected: BTreeSet<Arrow> = [(0, 0), (1, 1), (0, 1)]
            .iter()
            .map(|&(i, j)| Arrow::new(PointId(i), PointId(j)))
            .collect();
        assert_eq!(d.arrows(), &expected);
        assert!(d.is_strong());
        assert_eq!(d.density_dimension(), (4, 4));
    }

    #[test]
    fn twisted_relation_is_valid_and_twisted() {
        let g = build_twisted_full_relation(4).unwrap();
        assert!(g.validate().is_valid());
        assert!(!g.is_untwisted());
    }

    #[test]
    fn single_edge_graph() {
        let (g, order) = build_graph_groupoid(&["v", "w"], &[Edge::new("e", "v", "w")]).unwrap();
        assert_eq!(g.units().names(), &["w".to_string(), "e".to_string()]);
        assert_eq!(g.orbits().len(), 1);
        let (w, e) = (g.point("w").unwrap(), g.point("e").unwrap());
        assert!(order.relates(e, w));
        assert!(!order.relates(w, e));
    }

    #[test]
    fn binary_tree_graph() {
        let edges = [
            Edge::new("l", "r", "a"),
            Edge::new("m", "r", "b"),
            Edge::new("p", "a", "c"),
            Edge::new("q", "a", "d"),
            Edge::new("s", "b", "e"),
            Edge::new("t", "b", "f"),
        ];
        let (g, order) = build_graph_groupoid(&["r", "a", "b", "c", "d", "e", "f"], &edges).unwrap();
        assert_eq!(g.orbits().iter().map(Vec::len).collect::<Vec<_>>(), vec![3; 4]);
        assert_eq!(order.density_dimension(), (36, 36));
        assert!(g.point("l.p").is_ok());
    }

    #[test]
    fn graph_errors() {
        let cyc = build_graph_groupoid(
            &["a", "b", "c"],
            &[Edge::new("x", "a", "b"), Edge::new("y", "b", "a"), Edge::new("z", "b", "c")],
        )
        .unwrap_err();
        match cyc {
            GraphError::Cycle(vs) => assert_eq!(vs, vec!["a", "b", "a"]),
            other => panic!("unexpected {other:?}"),
        }
        let trapped =
            build_graph_groupoid(&["a", "b"], &[Edge::new("x", "a", "b"), Edge::new("y", "b", "a")]).unwrap_err();
        assert!(matches!(trapped, GraphError::NoSinkReachable(_)));
        assert!(matches!(
            build_graph_groupoid(&["a"], &[Edge::new("x", "a", "q")]),
            Err(GraphError::UnknownVertex(_))
        ));
        assert!(matches!(
            build_graph_groupoid(&["a", "b"], &[Edge::new("x.y", "a", "b")]),
            Err(GraphError::BadEdgeName(_))
        ));
    }

    #[test]
    fn diamond_is_closed_but_not_total() {
        let order = build_diamond_order();
        let report = validate_order(order.clone()).unwrap_err();
        assert!(report.missing_units.is_empty());
        assert!(report.not_closed.is_empty());
        assert_eq!(report.not_total, vec![Arrow::new(PointId(2), PointId(3)), Arrow::new(PointId(3), PointId(2))]);
        assert_eq!(order.density_dimension(), (14, 16));
    }
}
