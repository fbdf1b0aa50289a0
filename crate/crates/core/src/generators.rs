//! Fixed example instances and seeded random generators.
//!
//! Randomness comes from `ChaCha8Rng` (crate `rand_chacha`) seeded with
//! `seed_from_u64`, driven through `rand` 0.9's `random_bool` and
//! `SliceRandom::shuffle`. Outputs are reproducible for a given seed as long
//! as those crate versions are kept.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::UnknownFixture;
use crate::model::{validate_instance, AgentId, Instance, RawInstance};
use crate::reduction::{reduce_is_to_socstable, GadgetMap, UndirectedGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixture {
    /// Two men, two women; the stable matching has one pair but a
    /// socially stable matching has two.
    Fig1,
    /// Three men, three women on which socGS returns exactly 2/3 of the
    /// optimum.
    Tight,
    /// Reduction of the single-edge graph.
    Gadget,
    /// Reduction of the triangle.
    K3Red,
}

impl Fixture {
    pub const ALL: [Fixture; 4] = [Fixture::Fig1, Fixture::Tight, Fixture::Gadget, Fixture::K3Red];
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fixture::Fig1 => "FIG1",
            Fixture::Tight => "TIGHT",
            Fixture::Gadget => "GADGET",
            Fixture::K3Red => "K3RED",
        })
    }
}

impl FromStr for Fixture {
    type Err = UnknownFixture;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Fixture::ALL
            .into_iter()
            .find(|f| f.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownFixture(s.to_owned()))
    }
}

#[derive(Debug, Clone)]
pub struct FixtureData {
    pub instance: Instance,
    /// Present for the reduction fixtures.
    pub reduction: Option<(UndirectedGraph, GadgetMap)>,
}

pub fn fixture_by_name(name: &str) -> Result<FixtureData, UnknownFixture> {
    Ok(fixture(name.parse()?))
}

pub fn fixture(which: Fixture) -> FixtureData {
    match which {
        Fixture::Fig1 => plain(build(
            &["m1", "m2"],
            &["w1", "w2"],
            &[
                ("m1", &["w2", "w1"]),
                ("m2", &["w2", "w1"]),
            ],
            &[("w1", &["m1"]), ("w2", &["m1", "m2"])],
            &[("m1", "w1"), ("m2", "w2")],
        )),
        Fixture::Tight => plain(build(
            &["m1", "m2", "m3"],
            &["w1", "w2", "w3"],
            &[
                ("m1", &["w1", "w2"]),
                ("m2", &["w1", "w3", "w2"]),
                ("m3", &["w3"]),
            ],
            &[
                ("w1", &["m2", "m1"]),
                ("w2", &["m1"]),
                ("w3", &["m2", "m3"]),
            ],
            &[("m1", "w1"), ("m3", "w3"), ("m2", "w3")],
        )),
        Fixture::Gadget => reduced(UndirectedGraph::from_edges(2, &[(0, 1)]).expect("valid graph")),
        Fixture::K3Red => {
            reduced(UndirectedGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).expect("valid graph"))
        }
    }
}

fn plain(instance: Instance) -> FixtureData {
    FixtureData { instance, reduction: None }
}

fn reduced(graph: UndirectedGraph) -> FixtureData {
    let (instance, map) = reduce_is_to_socstable(&graph);
    FixtureData { instance, reduction: Some((graph, map)) }
}

type Lists<'a> = &'a [(&'a str, &'a [&'a str])];

fn build(men: &[&str], women: &[&str], man_lists: Lists, woman_lists: Lists, edges: &[(&str, &str)]) -> Instance {
    let owned = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let mut raw = RawInstance { men: owned(men), women: owned(women), ..Default::default() };
    raw.prefs.extend(man_lists.iter().map(|(o, l)| (AgentId::man(*o), owned(l))));
    raw.prefs.extend(woman_lists.iter().map(|(o, l)| (AgentId::woman(*o), owned(l))));
    raw.edges = edges.iter().map(|(m, w)| (m.to_string(), w.to_string())).collect();
    validate_instance(&raw).expect("fixture is valid")
}

/// Parameters for [`gen_random`].
#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub n_men: usize,
    pub n_women: usize,
    pub p_accept: f64,
    pub p_social: f64,
    pub seed: u64,
    /// Draw each side's acceptability independently instead of one coin per
    /// pair.
    pub asymmetric: bool,
}

impl GenConfig {
    pub fn new(n_men: usize, n_women: usize, p_accept: f64, p_social: f64, seed: u64) -> Self {
        GenConfig { n_men, n_women, p_accept, p_social, seed, asymmetric: false }
    }

    pub fn is_valid(&self) -> bool {
        (0.0..=1.0).contains(&self.p_accept) && (0.0..=1.0).contains(&self.p_social)
    }
}

/// Random instance with men `m1..` and women `w1..`.
///
/// Pairs are visited man-major; for each pair the acceptability coin(s) are
/// drawn before the social coin. Each agent's acceptable partners are then
/// shuffled into a strict list, men first, in index order.
///
/// # Panics
///
/// If a probability lies outside `[0, 1]`.
pub fn gen_random(config: &GenConfig) -> Instance {
    assert!(config.is_valid(), "probabilities must lie in [0, 1]");
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let men: Vec<String> = (1..=config.n_men).map(|i| format!("m{i}")).collect();
    let women: Vec<String> = (1..=config.n_women).map(|i| format!("w{i}")).collect();
    let mut man_lists = vec![Vec::new(); config.n_men];
    let mut woman_lists = vec![Vec::new(); config.n_women];
    let mut edges = Vec::new();
    for m in 0..config.n_men {
        for w in 0..config.n_women {
            let (man_ok, woman_ok) = if config.asymmetric {
                (rng.random_bool(config.p_accept), rng.random_bool(config.p_accept))
            } else {
                let both = rng.random_bool(config.p_accept);
                (both, both)
            };
            if man_ok {
                man_lists[m].push(women[w].clone());
            }
            if woman_ok {
                woman_lists[w].push(men[m].clone());
            }
            if rng.random_bool(config.p_social) {
                edges.push((men[m].clone(), women[w].clone()));
            }
        }
    }
    for list in man_lists.iter_mut().chain(woman_lists.iter_mut()) {
        list.shuffle(&mut rng);
    }
    let prefs = men
        .iter()
        .zip(man_lists)
        .map(|(m, l)| (AgentId::man(m.clone()), l))
        .chain(women.iter().zip(woman_lists).map(|(w, l)| (AgentId::woman(w.clone()), l)))
        .collect();
    validate_instance(&RawInstance { men, women, prefs, edges }).expect("generated instance is valid")
}

/// Erdős–Rényi graph on `v1..vn`: each pair `(i, j)`, `i < j`, in
/// lexicographic order, is an edge with probability `p_edge`.
///
/// # Panics
///
/// If `p_edge` lies outside `[0, 1]`.
pub fn gen_random_graph(n: usize, p_edge: f64, seed: u64) -> UndirectedGraph {
    assert!((0.0..=1.0).contains(&p_edge), "p_edge must lie in [0, 1]");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p_edge) {
                edges.push((i, j));
            }
        }
    }
    UndirectedGraph::from_edges(n, &edges).expect("generated graph is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_shapes() {
        let fig1 = fixture(Fixture::Fig1).instance;
        assert_eq!((fig1.num_men(), fig1.num_women(), fig1.num_social_edges()), (2, 2, 2));
        let tight = fixture(Fixture::Tight).instance;
        assert_eq!((tight.num_men(), tight.num_women(), tight.num_social_edges()), (3, 3, 3));
        for (m, w) in [("m1", "w1"), ("m3", "w3"), ("m2", "w3")] {
            assert!(tight.is_social(tight.man_by_name(m).unwrap(), tight.woman_by_name(w).unwrap()));
        }
        let gadget = fixture(Fixture::Gadget);
        assert_eq!((gadget.instance.num_men(), gadget.instance.num_women()), (4, 4));
        assert_eq!(gadget.instance.num_social_edges(), 2);
        assert!(gadget.reduction.is_some());
        let k3 = fixture(Fixture::K3Red).instance;
        assert_eq!((k3.num_men(), k3.num_women(), k3.num_social_edges()), (6, 6, 6));
    }

    #[test]
    fn fixtures_revalidate() {
        for f in Fixture::ALL {
            let i = fixture(f).instance;
            assert_eq!(validate_instance(&i.to_raw()).unwrap(), i, "{f}");
        }
    }

    #[test]
    fn fixture_names() {
        assert_eq!("tight".parse::<Fixture>().unwrap(), Fixture::Tight);
        assert_eq!(fixture_by_name("K3RED").unwrap().instance.num_men(), 6);
        assert!(fixture_by_name("FIG9").is_err());
    }

    #[test]
    fn full_probabilities() {
        let i = gen_random(&GenConfig::new(2, 2, 1.0, 1.0, 1));
        assert!(i.men().all(|m| i.man_prefs(m).len() == 2));
        assert!(i.women().all(|w| i.woman_prefs(w).len() == 2));
        assert_eq!(i.num_social_edges(), 4);
    }

    #[test]
    fn zero_acceptance_keeps_edges() {
        let i = gen_random(&GenConfig::new(3, 3, 0.0, 0.5, 7));
        assert!(i.men().all(|m| i.man_prefs(m).is_empty()));
        assert!(i.num_social_edges() > 0);
    }

    #[test]
    fn same_seed_same_instance() {
        let c = GenConfig::new(4, 3, 0.6, 0.4, 99);
        assert_eq!(gen_random(&c), gen_random(&c));
        assert_ne!(gen_random(&c), gen_random(&GenConfig { seed: 100, ..c.clone() }));
    }

    #[test]
    fn symmetric_acceptability() {
        for seed in 0..20 {
            let i = gen_random(&GenConfig::new(4, 4, 0.5, 0.5, seed));
            for m in i.men() {
                for w in i.women() {
                    assert_eq!(i.man_rank(m, w).is_some(), i.woman_rank(w, m).is_some());
                }
            }
        }
    }

    #[test]
    fn asymmetric_flag_can_break_symmetry() {
        let asym = (0..20).any(|seed| {
            let c = GenConfig { asymmetric: true, ..GenConfig::new(4, 4, 0.5, 0.0, seed) };
            let i = gen_random(&c);
            i.men()
                .any(|m| i.women().any(|w| i.man_rank(m, w).is_some() != i.woman_rank(w, m).is_some()))
        });
        assert!(asym);
    }

    #[test]
    fn graphs() {
        let k3 = gen_random_graph(3, 1.0, 5);
        assert_eq!(k3.edges(), vec![(0, 1), (0, 2), (1, 2)]);
        assert!(gen_random_graph(4, 0.0, 5).edges().is_empty());
        assert_eq!(gen_random_graph(6, 0.5, 3), gen_random_graph(6, 0.5, 3));
    }
}
