//! DOT rendering of the layered graph at a chosen level.
//!
//! State vertices carry their 1-based number, support vertices a braced
//! 1-based list; enforced edges are solid and labeled "level:word",
//! inclusion edges dashed and unlabeled. Emission order is lexicographic
//! so output is deterministic.

use std::collections::HashMap;
use std::fmt::Write as _;

use creachable::{Dfa, Error, LayeredGraph, StateSet};

fn label(set: StateSet) -> String {
    if set.len() == 1 {
        return format!("{}", set.first().unwrap() + 1);
    }
    let inner: Vec<String> = set.iter().map(|q| (q + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Renders the subgraph Γ_level of `graph`.
pub fn emit_dot(dfa: &Dfa, graph: &LayeredGraph, level: usize) -> Result<String, Error> {
    if level == 0 || level > graph.max_level() {
        return Err(Error::LevelOutOfRange {
            level,
            max: graph.max_level(),
        });
    }
    // First registration level per support vertex.
    let mut first_level: HashMap<StateSet, usize> = HashMap::new();
    for (k, members) in graph.levels() {
        for &member in members {
            first_level.entry(member).or_insert(*k);
        }
    }

    let mut vertices: Vec<StateSet> = graph
        .vertices()
        .iter()
        .copied()
        .filter(|v| v.len() == 1 || first_level[v] <= level)
        .collect();
    vertices.sort();

    let mut out = String::new();
    writeln!(out, "digraph gamma_{level} {{").unwrap();
    for v in &vertices {
        if v.len() == 1 {
            writeln!(out, "    \"{}\";", label(*v)).unwrap();
        } else {
            writeln!(out, "    \"{}\" [shape=box];", label(*v)).unwrap();
        }
    }
    let mut enforced: Vec<&creachable::EnforcedEdge> = graph
        .enforced_edges()
        .iter()
        .filter(|e| e.level <= level)
        .collect();
    enforced.sort_by_key(|e| (e.source, e.target, e.level));
    for e in &enforced {
        let word: Vec<&str> = e
            .word
            .letters()
            .iter()
            .map(|&l| dfa.letter_name(l))
            .collect();
        writeln!(
            out,
            "    \"{}\" -> \"{}\" [label=\"{}:{}\"];",
            label(e.source),
            e.target + 1,
            e.level,
            word.join(" ")
        )
        .unwrap();
    }
    let mut inclusions: Vec<&creachable::InclusionEdge> = graph
        .inclusion_edges()
        .iter()
        .filter(|e| e.level <= level)
        .collect();
    inclusions.sort_by_key(|e| (e.source, e.target));
    for e in &inclusions {
        writeln!(
            out,
            "    \"{}\" -> \"{}\" [style=dashed];",
            label(e.source),
            label(e.target)
        )
        .unwrap();
    }
    writeln!(out, "}}").unwrap();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use creachable::families::{self, RandomKind};

    fn count_lines(text: &str, needle: &str) -> usize {
        text.lines().filter(|l| l.contains(needle)).count()
    }

    #[test]
    fn gamma2_of_e3_renders_expected_shape() {
        let e3 = families::e3();
        let verdict = creachable::decide(&e3).unwrap();
        let dot = emit_dot(&e3, &verdict.graph, 2).unwrap();
        // 4 vertices, 3 solid level-1 edges + 1 level-2 edge, 2 dashed.
        assert_eq!(count_lines(&dot, "[shape=box]"), 1);
        assert_eq!(count_lines(&dot, ";"), 4 + 4 + 2);
        assert_eq!(count_lines(&dot, "label="), 4);
        assert_eq!(count_lines(&dot, "style=dashed"), 2);
        assert!(
            dot.contains("\"{1,2}\" -> \"3\" [label=\"2:a_[1,2]\"];"),
            "{dot}"
        );
    }

    #[test]
    fn gamma1_view_hides_later_levels() {
        let e3 = families::e3();
        let verdict = creachable::decide(&e3).unwrap();
        let dot = emit_dot(&e3, &verdict.graph, 1).unwrap();
        assert!(!dot.contains("{1,2}"), "{dot}");
        assert_eq!(count_lines(&dot, "label="), 3);
        assert_eq!(count_lines(&dot, "style=dashed"), 0);
    }

    #[test]
    fn permutation_automaton_renders_isolated_vertices() {
        let dfa = families::random(4, 2, RandomKind::Permutation, 9).unwrap();
        let verdict = creachable::decide(&dfa).unwrap();
        let dot = emit_dot(&dfa, &verdict.graph, 1).unwrap();
        assert_eq!(count_lines(&dot, "->"), 0);
        for q in 1..=4 {
            assert!(dot.contains(&format!("\"{q}\";")));
        }
    }

    #[test]
    fn gamma3_of_e5_has_inclusions_into_the_top_vertex_only_from_its_parts() {
        let e5 = families::e5(true);
        let verdict = creachable::decide(&e5).unwrap();
        let dot = emit_dot(&e5, &verdict.graph, 3).unwrap();
        let into_top: Vec<&str> = dot
            .lines()
            .filter(|l| l.contains("-> \"{1,2,3}\""))
            .collect();
        assert_eq!(into_top.len(), 4, "{dot}");
        for source in ["\"1\"", "\"2\"", "\"3\"", "\"{1,2}\""] {
            assert!(into_top.iter().any(|l| l.trim_start().starts_with(source)));
        }
    }

    #[test]
    fn out_of_range_level_is_rejected() {
        let e3 = families::e3();
        let verdict = creachable::decide(&e3).unwrap();
        assert!(matches!(
            emit_dot(&e3, &verdict.graph, 3),
            Err(Error::LevelOutOfRange { .. })
        ));
    }
}
