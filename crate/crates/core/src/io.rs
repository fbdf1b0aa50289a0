//! Line-based text formats for instances, matchings and graphs.
//!
//! Instance:
//!
//! ```text
//! # comment
//! men m1 m2
//! women w1 w2
//! pref m1 : w2 w1
//! pref w1 : m1
//! edge m1 w1
//! ```
//!
//! `men` and `women` appear at most once each. An agent without a `pref`
//! line has an empty list. When a name is both a man and a woman, its first
//! `pref` line belongs to the man and its second to the woman.
//!
//! Matching: `match <man> <woman>` lines. Graph: `vertex <name>` lines in
//! enumeration order and `edge <name> <name>` lines.

use std::fmt::Write as _;

use crate::error::ParseError;
use crate::model::{validate_instance, AgentId, Instance, Matching, RawInstance, Side};
use crate::reduction::UndirectedGraph;

/// Non-blank lines with comments stripped, as (1-based line number, tokens).
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split_once('#').map_or(line, |(before, _)| before).trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut men: Option<Vec<String>> = None;
    let mut women: Option<Vec<String>> = None;
    let mut prefs: Vec<(usize, String, Vec<String>)> = Vec::new();
    let mut edges = Vec::new();

    for (line_no, line) in content_lines(text) {
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match keyword {
            "men" | "women" => {
                let slot = if keyword == "men" { &mut men } else { &mut women };
                if slot.is_some() {
                    return Err(ParseError::syntax(line_no, format!("second `{keyword}` line")));
                }
                let names: Vec<String> = rest.split_whitespace().map(str::to_owned).collect();
                if names.is_empty() {
                    return Err(ParseError::syntax(line_no, format!("`{keyword}` needs at least one name")));
                }
                *slot = Some(names);
            }
            "pref" => {
                let (owner, list) = rest
                    .split_once(':')
                    .ok_or_else(|| ParseError::syntax(line_no, "expected `pref <name> : <name>*`"))?;
                let owner: Vec<&str> = owner.split_whitespace().collect();
                let [owner] = owner[..] else {
                    return Err(ParseError::syntax(line_no, "expected exactly one owner before ':'"));
                };
                if list.contains(':') {
                    return Err(ParseError::syntax(line_no, "unexpected second ':'"));
                }
                prefs.push((line_no, owner.to_owned(), list.split_whitespace().map(str::to_owned).collect()));
            }
            "edge" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let [m, w] = toks[..] else {
                    return Err(ParseError::syntax(line_no, "expected `edge <man> <woman>`"));
                };
                edges.push((m.to_owned(), w.to_owned()));
            }
            other => return Err(ParseError::syntax(line_no, format!("unknown keyword `{other}`"))),
        }
    }

    let men = men.unwrap_or_default();
    let women = women.unwrap_or_default();
    let mut man_seen = std::collections::HashSet::new();
    let mut resolved = Vec::with_capacity(prefs.len());
    for (line_no, owner, list) in prefs {
        let is_man = men.contains(&owner);
        let is_woman = women.contains(&owner);
        let side = match (is_man, is_woman) {
            (true, false) => Side::Man,
            (false, true) => Side::Woman,
            (true, true) if man_seen.contains(&owner) => Side::Woman,
            (true, true) => Side::Man,
            (false, false) => {
                return Err(ParseError::syntax(line_no, format!("`pref` for unknown agent `{owner}`")))
            }
        };
        if side == Side::Man {
            man_seen.insert(owner.clone());
        }
        resolved.push((AgentId { side, name: owner }, list));
    }

    Ok(validate_instance(&RawInstance { men, women, prefs: resolved, edges })?)
}

/// Canonical text: declaration order for agents and lists, men's lists
/// first, edges sorted by (man name, woman name).
pub fn serialize_instance(instance: &Instance) -> String {
    let mut out = String::new();
    if instance.num_men() > 0 {
        let _ = writeln!(out, "men {}", instance.man_names().join(" "));
    }
    if instance.num_women() > 0 {
        let _ = writeln!(out, "women {}", instance.woman_names().join(" "));
    }
    for m in instance.men() {
        let list: Vec<&str> = instance.man_prefs(m).iter().map(|&w| instance.woman_name(w)).collect();
        push_pref(&mut out, instance.man_name(m), &list);
    }
    for w in instance.women() {
        let list: Vec<&str> = instance.woman_prefs(w).iter().map(|&m| instance.man_name(m)).collect();
        push_pref(&mut out, instance.woman_name(w), &list);
    }
    let mut edges: Vec<(&str, &str)> = instance
        .social_edges()
        .map(|(m, w)| (instance.man_name(m), instance.woman_name(w)))
        .collect();
    edges.sort_unstable();
    for (m, w) in edges {
        let _ = writeln!(out, "edge {m} {w}");
    }
    out
}

fn push_pref(out: &mut String, owner: &str, list: &[&str]) {
    if list.is_empty() {
        let _ = writeln!(out, "pref {owner} :");
    } else {
        let _ = writeln!(out, "pref {owner} : {}", list.join(" "));
    }
}

pub fn parse_matching(instance: &Instance, text: &str) -> Result<Matching, ParseError> {
    let mut pairs = Vec::new();
    for (line_no, line) in content_lines(text) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let ["match", m, w] = toks[..] else {
            return Err(ParseError::syntax(line_no, "expected `match <man> <woman>`"));
        };
        pairs.push((m, w));
    }
    Ok(Matching::from_names(instance, pairs)?)
}

/// `match <man> <woman>` lines sorted by (man name, woman name); empty
/// matching gives empty text.
pub fn serialize_matching(instance: &Instance, matching: &Matching) -> String {
    matching
        .named_pairs(instance)
        .into_iter()
        .map(|(m, w)| format!("match {m} {w}\n"))
        .collect()
}

pub fn parse_graph(text: &str) -> Result<UndirectedGraph, ParseError> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (line_no, line) in content_lines(text) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[..] {
            ["vertex", v] => vertices.push(v.to_owned()),
            ["edge", a, b] => edges.push((a.to_owned(), b.to_owned())),
            _ => {
                return Err(ParseError::syntax(
                    line_no,
                    "expected `vertex <name>` or `edge <name> <name>`",
                ))
            }
        }
    }
    Ok(UndirectedGraph::new(vertices, &edges)?)
}

pub fn serialize_graph(graph: &UndirectedGraph) -> String {
    let mut out = String::new();
    for v in graph.vertices() {
        let _ = writeln!(out, "vertex {v}");
    }
    for (u, v) in graph.edges() {
        let _ = writeln!(out, "edge {} {}", graph.vertex_name(u), graph.vertex_name(v));
    }
    out
}
