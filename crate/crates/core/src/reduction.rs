//! Reduction from Independent Set to maximum socially stable matching.
//!
//! Every vertex `i` becomes a gadget of two men `A_i`, `B_i` and two women
//! `X_i`, `Y_i`:
//!
//! ```text
//! A_i: Y_i, Y_j (j in N(i), ascending), X_i
//! Y_i: A_i, A_j (j in N(i), ascending), B_i
//! B_i: Y_i
//! X_i: A_i
//! ```
//!
//! with social edges `(A_i, Y_j)` for every neighbor `j` of `i`. A graph on
//! `n` vertices has an independent set of size `r` iff the instance has a
//! socially stable matching of size `n + r`.

use std::collections::{BTreeSet, HashMap};

use crate::error::{GraphError, ReductionError};
use crate::model::{is_valid_name, validate_instance, AgentId, Instance, ManId, Matching, RawInstance, WomanId};
use crate::stability::is_socially_stable;

/// Default bound on `|V|` for [`brute_force_max_is`].
pub const DEFAULT_VERTEX_LIMIT: usize = 20;

/// Simple undirected graph; vertex order is the enumeration used by the
/// reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    vertices: Vec<String>,
    adj: Vec<BTreeSet<usize>>,
}

impl UndirectedGraph {
    pub fn new<S: AsRef<str>>(vertices: Vec<String>, edges: &[(S, S)]) -> Result<Self, GraphError> {
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if !is_valid_name(v) {
                return Err(GraphError::InvalidName(v.clone()));
            }
            if index.insert(v.as_str(), i).is_some() {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| GraphError::UnknownVertex(name.to_owned()))
        };
        let mut resolved = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let (u, v) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
            if u == v {
                return Err(GraphError::SelfLoop(a.as_ref().to_owned()));
            }
            resolved.push((u, v));
        }
        let mut graph = UndirectedGraph { adj: vec![BTreeSet::new(); vertices.len()], vertices };
        for (u, v) in resolved {
            graph.add_edge(u, v);
        }
        Ok(graph)
    }

    /// Vertices named `v1..vn` with edges given by index.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        let named: Vec<(String, String)> = edges
            .iter()
            .map(|&(u, v)| {
                let name = |i: usize| vertices.get(i).cloned().unwrap_or_else(|| format!("#{i}"));
                (name(u), name(v))
            })
            .collect();
        UndirectedGraph::new(vertices.clone(), &named)
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[i].iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    /// Edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.num_vertices())
            .flat_map(|u| self.adj[u].range(u + 1..).map(move |&v| (u, v)))
            .collect()
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        self.first_conflict(set).is_none()
    }

    fn first_conflict(&self, set: &[usize]) -> Option<(usize, usize)> {
        set.iter()
            .enumerate()
            .flat_map(|(k, &u)| set[k + 1..].iter().map(move |&v| (u, v)))
            .find(|&(u, v)| self.has_edge(u, v))
    }
}

/// The four agents encoding one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gadget {
    pub a: ManId,
    pub b: ManId,
    pub x: WomanId,
    pub y: WomanId,
}

/// Vertex index to gadget, in vertex enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetMap {
    pub gadgets: Vec<Gadget>,
}

impl GadgetMap {
    /// Builds the map for an instance produced by [`reduce_is_to_socstable`].
    pub fn for_vertices(n: usize) -> Self {
        let gadgets = (0..n)
            .map(|i| Gadget { a: ManId(i), b: ManId(n + i), x: WomanId(i), y: WomanId(n + i) })
            .collect();
        GadgetMap { gadgets }
    }

    pub fn len(&self) -> usize {
        self.gadgets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gadgets.is_empty()
    }
}

pub fn a_name(v: &str) -> String {
    format!("m1_{v}")
}

pub fn b_name(v: &str) -> String {
    format!("m2_{v}")
}

pub fn x_name(v: &str) -> String {
    format!("w1_{v}")
}

pub fn y_name(v: &str) -> String {
    format!("w2_{v}")
}

/// Builds the matching instance for `graph`. Men are `A_1..A_n, B_1..B_n`
/// and women `X_1..X_n, Y_1..Y_n`.
pub fn reduce_is_to_socstable(graph: &UndirectedGraph) -> (Instance, GadgetMap) {
    let names = graph.vertices();
    let mut raw = RawInstance {
        men: names.iter().map(|v| a_name(v)).chain(names.iter().map(|v| b_name(v))).collect(),
        women: names.iter().map(|v| x_name(v)).chain(names.iter().map(|v| y_name(v))).collect(),
        ..Default::default()
    };
    for (i, v) in names.iter().enumerate() {
        let nbrs: Vec<&str> = graph.neighbors(i).map(|j| names[j].as_str()).collect();

        let mut a_list = vec![y_name(v)];
        a_list.extend(nbrs.iter().map(|u| y_name(u)));
        a_list.push(x_name(v));
        raw.prefs.push((AgentId::man(a_name(v)), a_list));

        let mut y_list = vec![a_name(v)];
        y_list.extend(nbrs.iter().map(|u| a_name(u)));
        y_list.push(b_name(v));
        raw.prefs.push((AgentId::woman(y_name(v)), y_list));

        raw.prefs.push((AgentId::man(b_name(v)), vec![y_name(v)]));
        raw.prefs.push((AgentId::woman(x_name(v)), vec![a_name(v)]));

        raw.edges.extend(nbrs.iter().map(|u| (a_name(v), y_name(u))));
    }
    let instance = validate_instance(&raw).expect("reduction output is well formed");
    (instance, GadgetMap::for_vertices(graph.num_vertices()))
}

fn check_fits(instance: &Instance, map: &GadgetMap, matching: &Matching) -> Result<(), ReductionError> {
    if !matching.fits(instance) || instance.num_men() != 2 * map.len() || instance.num_women() != 2 * map.len() {
        return Err(ReductionError::ForeignMatching);
    }
    Ok(())
}

/// Rewrites a socially stable matching so every `A_i` is matched and no
/// cross pair `(A_i, Y_j)`, `i != j`, remains, without losing size or
/// social stability.
pub fn normalize_matching(
    instance: &Instance,
    map: &GadgetMap,
    matching: &Matching,
) -> Result<Matching, ReductionError> {
    check_fits(instance, map, matching)?;
    if !is_socially_stable(instance, matching) {
        return Err(ReductionError::NotSociallyStable);
    }
    let n = map.len();
    let mut mu = matching.clone();

    // Phase 1: hand each single A_i his own Y_i, repeatedly.
    let guard = 4 * n * n;
    let mut steps = 0;
    while let Some(g) = map.gadgets.iter().find(|g| mu.partner_of_man(g.a).is_none()) {
        steps += 1;
        if steps > guard {
            return Err(ReductionError::NormalizationDiverged(format!(
                "phase 1 exceeded {guard} steps"
            )));
        }
        mu.set(g.a, g.y);
    }

    // Phase 2: cross pairs come in mirrored dyads; uncross them.
    let y_owner: HashMap<WomanId, usize> = map.gadgets.iter().enumerate().map(|(i, g)| (g.y, i)).collect();
    for i in 0..n {
        let gi = map.gadgets[i];
        let Some(w) = mu.partner_of_man(gi.a) else {
            return Err(ReductionError::NormalizationDiverged(format!(
                "{} single after phase 1",
                instance.man_name(gi.a)
            )));
        };
        let Some(&j) = y_owner.get(&w) else { continue };
        if j == i {
            continue;
        }
        let gj = map.gadgets[j];
        if mu.partner_of_man(gj.a) != Some(gi.y) {
            return Err(ReductionError::NormalizationDiverged(format!(
                "({}, {}) has no mirror pair",
                instance.man_name(gi.a),
                instance.woman_name(w)
            )));
        }
        mu.set(gi.a, gi.y);
        mu.set(gj.a, gj.y);
    }

    if mu.cardinality() < matching.cardinality() || !is_socially_stable(instance, &mu) {
        return Err(ReductionError::NormalizationDiverged(
            "normalized matching lost size or social stability".into(),
        ));
    }
    Ok(mu)
}

/// Vertex indices (ascending) whose `B_i` is matched after normalization.
pub fn extract_independent_set(
    graph: &UndirectedGraph,
    instance: &Instance,
    map: &GadgetMap,
    matching: &Matching,
) -> Result<Vec<usize>, ReductionError> {
    let mu = normalize_matching(instance, map, matching)?;
    let set: Vec<usize> = map
        .gadgets
        .iter()
        .enumerate()
        .filter(|(_, g)| mu.partner_of_man(g.b).is_some())
        .map(|(i, _)| i)
        .collect();
    if set.len() + map.len() != mu.cardinality() || !graph.is_independent(&set) {
        return Err(ReductionError::NormalizationDiverged(
            "extracted vertex set is not an independent set of the expected size".into(),
        ));
    }
    Ok(set)
}

/// The matching of size `n + |set|` built from an independent set:
/// `(A_i, Y_i)` outside the set, `(A_i, X_i)` and `(B_i, Y_i)` inside it.
pub fn is_to_matching(
    graph: &UndirectedGraph,
    instance: &Instance,
    map: &GadgetMap,
    set: &[usize],
) -> Result<Matching, ReductionError> {
    if let Some(&bad) = set.iter().find(|&&i| i >= graph.num_vertices()) {
        return Err(GraphError::UnknownVertex(format!("#{bad}")).into());
    }
    if let Some((u, v)) = graph.first_conflict(set) {
        return Err(ReductionError::NotIndependent(
            graph.vertex_name(u).to_owned(),
            graph.vertex_name(v).to_owned(),
        ));
    }
    let mut mu = Matching::empty(instance);
    for (i, g) in map.gadgets.iter().enumerate() {
        if set.contains(&i) {
            mu.set(g.a, g.x);
            mu.set(g.b, g.y);
        } else {
            mu.set(g.a, g.y);
        }
    }
    Ok(mu)
}

/// A maximum independent set by exhaustive search; among maximum sets the
/// lexicographically least ascending index list.
pub fn brute_force_max_is(graph: &UndirectedGraph, limit: usize) -> Result<Vec<usize>, ReductionError> {
    let n = graph.num_vertices();
    if n > limit {
        return Err(ReductionError::GraphTooLarge { vertices: n, limit });
    }
    let mut best: Vec<usize> = Vec::new();
    let mut found = false;
    let mut current = Vec::new();
    // include-first DFS visits equal-size sets in lexicographic order
    fn go(g: &UndirectedGraph, v: usize, cur: &mut Vec<usize>, best: &mut Vec<usize>, found: &mut bool) {
        let n = g.num_vertices();
        if *found && cur.len() + (n - v) <= best.len() {
            return;
        }
        if v == n {
            *best = cur.clone();
            *found = true;
            return;
        }
        if cur.iter().all(|&u| !g.has_edge(u, v)) {
            cur.push(v);
            go(g, v + 1, cur, best, found);
            cur.pop();
        }
        go(g, v + 1, cur, best, found);
    }
    go(graph, 0, &mut current, &mut best, &mut found);
    Ok(best)
}
