//! The standard fixture corpus, generated from the builders.

use std::sync::Arc;

use crate::builders::{
    build_block_relation, build_diamond_order, build_full_relation, build_graph_groupoid,
    build_twisted_full_relation, upper_triangular_order, Edge,
};
use crate::groupoid::FiniteTwistedGroupoid;
use crate::semicrossed::FiniteDynamicalSystem;
use crate::spec_file::GroupoidSpec;

fn taf(n: usize) -> GroupoidSpec {
    let g = Arc::new(build_full_relation(n).expect("n > 0"));
    GroupoidSpec::from_parts(&format!("taf{n}"), &g, Some(&upper_triangular_order(&g)), None)
}

fn graph(name: &str, vertices: &[&str], edges: &[Edge]) -> GroupoidSpec {
    let (g, order) = build_graph_groupoid(vertices, edges).expect("corpus graphs are acyclic");
    GroupoidSpec::from_parts(name, &g, Some(&order), None)
}

/// Every fixture of the corpus, keyed by its name (the file stem).
pub fn standard_fixtures() -> Vec<GroupoidSpec> {
    let twisted = Arc::new(build_twisted_full_relation(4).expect("n > 0"));
    let diamond = build_diamond_order();
    let blocks = Arc::new(build_block_relation(&[3, 2]).expect("nonempty"));
    let cycle = FiniteDynamicalSystem::from_cycles(3, "1 2 3").expect("valid cycle");
    let cycle_orbit: FiniteTwistedGroupoid = build_full_relation(3).expect("n > 0");

    vec![
        taf(2),
        taf(3),
        taf(4),
        taf(6),
        graph("graph_edge", &["v", "w"], &[Edge::new("e", "v", "w")]),
        graph(
            "graph_tree",
            &["r", "a", "b", "c", "d", "e", "f"],
            &[
                Edge::new("l", "r", "a"),
                Edge::new("m", "r", "b"),
                Edge::new("p", "a", "c"),
                Edge::new("q", "a", "d"),
                Edge::new("s", "b", "e"),
                Edge::new("t", "b", "f"),
            ],
        ),
        graph(
            "graph_diamond",
            &["s", "a", "b", "t"],
            &[
                Edge::new("x", "s", "a"),
                Edge::new("y", "s", "b"),
                Edge::new("u", "a", "t"),
                Edge::new("w", "b", "t"),
            ],
        ),
        GroupoidSpec::from_parts("twisted4", &twisted, Some(&upper_triangular_order(&twisted)), None),
        GroupoidSpec::from_parts("diamond4", diamond.groupoid(), Some(&diamond), None),
        GroupoidSpec::from_parts("two_block", &blocks, Some(&upper_triangular_order(&blocks)), None),
        GroupoidSpec::from_parts("semicrossed3", &cycle_orbit, None, Some(&cycle)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_round_trips() {
        for spec in standard_fixtures() {
            let text = spec.serialize().unwrap();
            assert_eq!(GroupoidSpec::parse(&text).unwrap(), spec, "{}", spec.name);
            let model = spec.to_model().unwrap();
            assert_eq!(model.to_spec(), spec);
        }
    }
}
