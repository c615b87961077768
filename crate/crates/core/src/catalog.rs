//! Named forbidden patterns of bipartite graph classes.
//!
//! Each class is characterized by avoidability: a graph belongs to the class
//! iff some ordering of its biadjacency matrix is free of all the class's
//! patterns. Only the patterns are stored here; the recognition algorithms
//! of the other classes are not implemented.

use crate::pattern::Pattern;

/// A named pattern in text form.
#[derive(Debug, Clone, Copy)]
pub struct NamedPattern {
    pub name: &'static str,
    pub text: &'static str,
}

#[derive(Debug, Clone, Copy)]
pub struct GraphClass {
    pub name: &'static str,
    pub selector: &'static str,
    pub patterns: &'static [&'static str],
    pub note: Option<&'static str>,
}

pub const PATTERNS: &[NamedPattern] = &[
    NamedPattern { name: "gamma", text: "*1*\n101\n01*" },
    NamedPattern { name: "delta", text: "1**\n01*\n101" },
    NamedPattern { name: "D", text: "1*\n01" },
    NamedPattern { name: "chain", text: "01" },
    NamedPattern { name: "chain10", text: "10" },
    NamedPattern { name: "conv", text: "101" },
    NamedPattern { name: "bpg1", text: "10\n*1" },
    NamedPattern { name: "bpg2", text: "1*\n01" },
    NamedPattern { name: "chordal", text: "11\n01" },
    NamedPattern { name: "stick1", text: "*1*\n101" },
    NamedPattern { name: "stick2", text: "1*\n01\n1*" },
    NamedPattern { name: "stick3", text: "*1*\n*01\n1**" },
    NamedPattern { name: "segray", text: "*1*\n101" },
    NamedPattern { name: "gig", text: "*1*\n101\n*1*" },
];

pub const CLASSES: &[GraphClass] = &[
    GraphClass {
        name: "CHAIN",
        selector: "chain",
        patterns: &["chain"],
        note: Some("the mirrored form (1 0) is stored as `chain10`; the two are equivalent under column reversal"),
    },
    GraphClass { name: "BPG", selector: "bpg", patterns: &["bpg1", "bpg2"], note: None },
    GraphClass { name: "CONV", selector: "conv", patterns: &["conv"], note: None },
    GraphClass { name: "CHAIN^2", selector: "D", patterns: &["D"], note: None },
    GraphClass { name: "Chordal Bipartite", selector: "chordal", patterns: &["chordal"], note: None },
    GraphClass {
        name: "Stick Graphs",
        selector: "stick",
        patterns: &["stick1", "stick2", "stick3"],
        note: None,
    },
    GraphClass { name: "Segment Ray", selector: "segray", patterns: &["segray"], note: None },
    GraphClass { name: "Grid Intersection (GIG)", selector: "gig", patterns: &["gig"], note: None },
    GraphClass { name: "CHAIN^3", selector: "chain3", patterns: &["gamma", "delta"], note: None },
];

fn text_of(name: &str) -> Option<&'static str> {
    PATTERNS.iter().find(|p| p.name == name).map(|p| p.text)
}

/// A single pattern by name.
pub fn pattern(name: &str) -> Option<Pattern> {
    text_of(name).map(|t| Pattern::parse(t).expect("catalog patterns parse"))
}

/// Resolves a selector: a single pattern name, or a class selector such as
/// `chain3` (= gamma and delta) or `stick`.
pub fn select(name: &str) -> Option<Vec<(String, Pattern)>> {
    if let Some(p) = pattern(name) {
        return Some(vec![(name.to_string(), p)]);
    }
    let class = CLASSES.iter().find(|c| c.selector == name)?;
    Some(
        class
            .patterns
            .iter()
            .map(|n| (n.to_string(), pattern(n).expect("class patterns exist")))
            .collect(),
    )
}

pub fn gamma() -> Pattern {
    pattern("gamma").unwrap()
}

pub fn delta() -> Pattern {
    pattern("delta").unwrap()
}

/// The 2×2 pattern whose avoidability characterizes Ferrers dimension ≤ 2.
pub fn d_pattern() -> Pattern {
    pattern("D").unwrap()
}

/// Gamma and delta, in that order.
pub fn chain3() -> Vec<Pattern> {
    vec![gamma(), delta()]
}

/// Every catalog pattern, in table order.
pub fn all_patterns() -> Vec<(&'static str, Pattern)> {
    PATTERNS
        .iter()
        .map(|p| (p.name, Pattern::parse(p.text).unwrap()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_parses() {
        for p in PATTERNS {
            assert!(Pattern::parse(p.text).is_ok(), "{}", p.name);
        }
        for c in CLASSES {
            for n in c.patterns {
                assert!(pattern(n).is_some(), "{} -> {}", c.name, n);
            }
        }
    }

    #[test]
    fn selectors() {
        let s = select("chain3").unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].1.to_row_strings(), ["*1*", "101", "01*"]);
        assert_eq!(s[1].1.to_row_strings(), ["1**", "01*", "101"]);
        assert_eq!(select("stick").unwrap().len(), 3);
        assert_eq!(select("gamma").unwrap().len(), 1);
        assert!(select("nope").is_none());
        assert_eq!(d_pattern(), pattern("bpg2").unwrap());
    }
}
