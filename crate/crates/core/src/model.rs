//! Market data model: agents, strict preference lists, the social graph and
//! matchings.
//!
//! Agents are addressed internally by dense indices ([`ManId`], [`WomanId`])
//! into the declaration order of the instance. Names are only used at the
//! boundaries (parsing, serialization, reports and tie-breaking).

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::error::ModelError;

/// Which side of the market an agent belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Man,
    Woman,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Man => f.write_str("man"),
            Side::Woman => f.write_str("woman"),
        }
    }
}

/// An agent named by side and token. Two agents on different sides may
/// share a name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AgentId {
    pub side: Side,
    pub name: String,
}

impl AgentId {
    pub fn man(name: impl Into<String>) -> Self {
        AgentId { side: Side::Man, name: name.into() }
    }

    pub fn woman(name: impl Into<String>) -> Self {
        AgentId { side: Side::Woman, name: name.into() }
    }
}

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.side, self.name)
    }
}

/// Index of a man in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ManId(pub usize);

/// Index of a woman in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WomanId(pub usize);

/// Returns true if `name` is usable as an agent or vertex token.
pub fn is_valid_name(name: &str) -> bool {
    !name.is_empty() && !name.contains(':') && !name.chars().any(char::is_whitespace)
}

/// Unvalidated market description, addressed by names.
///
/// `prefs` holds at most one list per agent; agents without an entry get an
/// empty list. Edges are `(man, woman)` name pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawInstance {
    pub men: Vec<String>,
    pub women: Vec<String>,
    pub prefs: Vec<(AgentId, Vec<String>)>,
    pub edges: Vec<(String, String)>,
}

/// A validated market. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    men: Vec<String>,
    women: Vec<String>,
    man_prefs: Vec<Vec<WomanId>>,
    woman_prefs: Vec<Vec<ManId>>,
    // rank tables; `None` = unacceptable
    man_rank: Vec<Vec<Option<usize>>>,
    woman_rank: Vec<Vec<Option<usize>>>,
    social: BTreeSet<(ManId, WomanId)>,
    man_social: Vec<Vec<WomanId>>,
    woman_social: Vec<Vec<ManId>>,
}

/// Checks every instance invariant and builds the indexed form.
pub fn validate_instance(raw: &RawInstance) -> Result<Instance, ModelError> {
    let men_idx = index_names(&raw.men, Side::Man)?;
    let women_idx = index_names(&raw.women, Side::Woman)?;

    let mut man_prefs = vec![Vec::new(); raw.men.len()];
    let mut woman_prefs = vec![Vec::new(); raw.women.len()];
    let mut seen_owner = HashSet::new();
    for (owner, ranked) in &raw.prefs {
        if !seen_owner.insert(owner.clone()) {
            return Err(ModelError::DuplicatePrefList(owner.clone()));
        }
        match owner.side {
            Side::Man => {
                let m = *men_idx
                    .get(owner.name.as_str())
                    .ok_or_else(|| ModelError::UnknownAgentInPref(owner.name.clone()))?;
                man_prefs[m] = resolve_list(owner, ranked, &women_idx)?
                    .into_iter()
                    .map(WomanId)
                    .collect();
            }
            Side::Woman => {
                let w = *women_idx
                    .get(owner.name.as_str())
                    .ok_or_else(|| ModelError::UnknownAgentInPref(owner.name.clone()))?;
                woman_prefs[w] = resolve_list(owner, ranked, &men_idx)?
                    .into_iter()
                    .map(ManId)
                    .collect();
            }
        }
    }

    let mut social = BTreeSet::new();
    for (a, b) in &raw.edges {
        let m = men_idx.get(a.as_str());
        let w = women_idx.get(b.as_str());
        match (m, w) {
            (Some(&m), Some(&w)) => {
                social.insert((ManId(m), WomanId(w)));
            }
            _ => {
                let both_men = men_idx.contains_key(a.as_str()) && men_idx.contains_key(b.as_str());
                let both_women =
                    women_idx.contains_key(a.as_str()) && women_idx.contains_key(b.as_str());
                if both_men || both_women {
                    return Err(ModelError::SelfSideEdge(a.clone(), b.clone()));
                }
                let unknown = if m.is_none() { a } else { b };
                return Err(ModelError::UnknownAgentInEdge(unknown.clone()));
            }
        }
    }

    Ok(Instance::from_parts(
        raw.men.clone(),
        raw.women.clone(),
        man_prefs,
        woman_prefs,
        social,
    ))
}

fn index_names(
    names: &[String],
    side: Side,
) -> Result<HashMap<&str, usize>, ModelError> {
    let mut idx = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if !is_valid_name(name) {
            return Err(ModelError::InvalidName(name.clone()));
        }
        if idx.insert(name.as_str(), i).is_some() {
            return Err(ModelError::DuplicateAgent(AgentId { side, name: name.clone() }));
        }
    }
    Ok(idx)
}

fn resolve_list(
    owner: &AgentId,
    ranked: &[String],
    other: &HashMap<&str, usize>,
) -> Result<Vec<usize>, ModelError> {
    let mut seen = HashSet::with_capacity(ranked.len());
    let mut out = Vec::with_capacity(ranked.len());
    for name in ranked {
        let i = *other
            .get(name.as_str())
            .ok_or_else(|| ModelError::UnknownAgentInPref(name.clone()))?;
        if !seen.insert(i) {
            return Err(ModelError::DuplicateInPref { owner: owner.clone(), entry: name.clone() });
        }
        out.push(i);
    }
    Ok(out)
}

fn rank_table<T: Copy>(lists: &[Vec<T>], other_len: usize, index: impl Fn(T) -> usize) -> Vec<Vec<Option<usize>>> {
    lists
        .iter()
        .map(|list| {
            let mut ranks = vec![None; other_len];
            for (r, &a) in list.iter().enumerate() {
                ranks[index(a)] = Some(r);
            }
            ranks
        })
        .collect()
}

impl Instance {
    fn from_parts(
        men: Vec<String>,
        women: Vec<String>,
        man_prefs: Vec<Vec<WomanId>>,
        woman_prefs: Vec<Vec<ManId>>,
        social: BTreeSet<(ManId, WomanId)>,
    ) -> Self {
        let man_rank = rank_table(&man_prefs, women.len(), |w| w.0);
        let woman_rank = rank_table(&woman_prefs, men.len(), |m| m.0);
        let mut man_social = vec![Vec::new(); men.len()];
        let mut woman_social = vec![Vec::new(); women.len()];
        for &(m, w) in &social {
            man_social[m.0].push(w);
            woman_social[w.0].push(m);
        }
        Instance {
            men,
            women,
            man_prefs,
            woman_prefs,
            man_rank,
            woman_rank,
            social,
            man_social,
            woman_social,
        }
    }

    /// Converts back to the name-addressed form. Every agent gets an explicit
    /// (possibly empty) list, men first.
    pub fn to_raw(&self) -> RawInstance {
        let mut prefs = Vec::with_capacity(self.men.len() + self.women.len());
        for m in self.men() {
            let list = self.man_prefs(m).iter().map(|&w| self.woman_name(w).to_owned()).collect();
            prefs.push((AgentId::man(self.man_name(m)), list));
        }
        for w in self.women() {
            let list = self.woman_prefs(w).iter().map(|&m| self.man_name(m).to_owned()).collect();
            prefs.push((AgentId::woman(self.woman_name(w)), list));
        }
        let edges = self
            .social
            .iter()
            .map(|&(m, w)| (self.man_name(m).to_owned(), self.woman_name(w).to_owned()))
            .collect();
        RawInstance { men: self.men.clone(), women: self.women.clone(), prefs, edges }
    }

    /// Same preferences with the social graph replaced by `edges`.
    pub fn with_social_edges(&self, edges: impl IntoIterator<Item = (ManId, WomanId)>) -> Instance {
        Instance::from_parts(
            self.men.clone(),
            self.women.clone(),
            self.man_prefs.clone(),
            self.woman_prefs.clone(),
            edges.into_iter().collect(),
        )
    }

    /// Same preferences with every man-woman pair socially connected.
    pub fn with_complete_social_graph(&self) -> Instance {
        let all: Vec<_> =
            self.men().flat_map(|m| self.women().map(move |w| (m, w))).collect();
        self.with_social_edges(all)
    }

    pub fn num_men(&self) -> usize {
        self.men.len()
    }

    pub fn num_women(&self) -> usize {
        self.women.len()
    }

    pub fn num_agents(&self) -> usize {
        self.men.len() + self.women.len()
    }

    pub fn men(&self) -> impl Iterator<Item = ManId> + Clone {
        (0..self.men.len()).map(ManId)
    }

    pub fn women(&self) -> impl Iterator<Item = WomanId> + Clone {
        (0..self.women.len()).map(WomanId)
    }

    pub fn man_name(&self, m: ManId) -> &str {
        &self.men[m.0]
    }

    pub fn woman_name(&self, w: WomanId) -> &str {
        &self.women[w.0]
    }

    pub fn man_names(&self) -> &[String] {
        &self.men
    }

    pub fn woman_names(&self) -> &[String] {
        &self.women
    }

    pub fn man_by_name(&self, name: &str) -> Option<ManId> {
        self.men.iter().position(|n| n == name).map(ManId)
    }

    pub fn woman_by_name(&self, name: &str) -> Option<WomanId> {
        self.women.iter().position(|n| n == name).map(WomanId)
    }

    pub fn man_prefs(&self, m: ManId) -> &[WomanId] {
        &self.man_prefs[m.0]
    }

    pub fn woman_prefs(&self, w: WomanId) -> &[ManId] {
        &self.woman_prefs[w.0]
    }

    /// Rank of `w` in `m`'s list, `None` if unacceptable.
    pub fn man_rank(&self, m: ManId, w: WomanId) -> Option<usize> {
        self.man_rank[m.0][w.0]
    }

    /// Rank of `m` in `w`'s list, `None` if unacceptable.
    pub fn woman_rank(&self, w: WomanId, m: ManId) -> Option<usize> {
        self.woman_rank[w.0][m.0]
    }

    /// Both sides list each other.
    pub fn mutually_acceptable(&self, m: ManId, w: WomanId) -> bool {
        self.man_rank(m, w).is_some() && self.woman_rank(w, m).is_some()
    }

    pub fn is_social(&self, m: ManId, w: WomanId) -> bool {
        self.social.contains(&(m, w))
    }

    pub fn social_edges(&self) -> impl Iterator<Item = (ManId, WomanId)> + '_ {
        self.social.iter().copied()
    }

    pub fn num_social_edges(&self) -> usize {
        self.social.len()
    }

    pub fn social_neighbors_of_man(&self, m: ManId) -> &[WomanId] {
        &self.man_social[m.0]
    }

    pub fn social_neighbors_of_woman(&self, w: WomanId) -> &[ManId] {
        &self.woman_social[w.0]
    }

    fn resolve(&self, agent: &AgentId) -> Result<usize, ModelError> {
        let found = match agent.side {
            Side::Man => self.man_by_name(&agent.name).map(|m| m.0),
            Side::Woman => self.woman_by_name(&agent.name).map(|w| w.0),
        };
        found.ok_or_else(|| ModelError::UnknownAgent(agent.clone()))
    }

    /// Position of `candidate` in `owner`'s list (0 = most preferred), or
    /// `None` if `owner` finds `candidate` unacceptable.
    pub fn rank_of(&self, owner: &AgentId, candidate: &AgentId) -> Result<Option<usize>, ModelError> {
        let o = self.resolve(owner)?;
        let c = self.resolve(candidate)?;
        match (owner.side, candidate.side) {
            (Side::Man, Side::Woman) => Ok(self.man_rank(ManId(o), WomanId(c))),
            (Side::Woman, Side::Man) => Ok(self.woman_rank(WomanId(o), ManId(c))),
            _ => Err(ModelError::SameSide(owner.clone(), candidate.clone())),
        }
    }
}

/// A one-to-one partial assignment of men to women of one instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    man_partner: Vec<Option<WomanId>>,
    woman_partner: Vec<Option<ManId>>,
}

impl Matching {
    /// Empty matching sized for `instance`.
    pub fn empty(instance: &Instance) -> Self {
        Matching::with_sizes(instance.num_men(), instance.num_women())
    }

    pub fn with_sizes(num_men: usize, num_women: usize) -> Self {
        Matching { man_partner: vec![None; num_men], woman_partner: vec![None; num_women] }
    }

    /// Builds a matching from index pairs, rejecting out-of-range agents and
    /// agents used twice.
    pub fn from_pairs(
        instance: &Instance,
        pairs: impl IntoIterator<Item = (ManId, WomanId)>,
    ) -> Result<Self, ModelError> {
        let mut mu = Matching::empty(instance);
        for (m, w) in pairs {
            if m.0 >= instance.num_men() || w.0 >= instance.num_women() {
                return Err(ModelError::PairOutOfRange(m.0, w.0));
            }
            if mu.man_partner[m.0].is_some() {
                return Err(ModelError::AlreadyMatched(AgentId::man(instance.man_name(m))));
            }
            if mu.woman_partner[w.0].is_some() {
                return Err(ModelError::AlreadyMatched(AgentId::woman(instance.woman_name(w))));
            }
            mu.set(m, w);
        }
        Ok(mu)
    }

    /// Builds a matching from `(man name, woman name)` pairs.
    pub fn from_names<'a>(
        instance: &Instance,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self, ModelError> {
        let resolved = pairs
            .into_iter()
            .map(|(m, w)| {
                let mi = instance.man_by_name(m).ok_or_else(|| ModelError::UnknownAgent(AgentId::man(m)))?;
                let wi = instance
                    .woman_by_name(w)
                    .ok_or_else(|| ModelError::UnknownAgent(AgentId::woman(w)))?;
                Ok((mi, wi))
            })
            .collect::<Result<Vec<_>, ModelError>>()?;
        Matching::from_pairs(instance, resolved)
    }

    pub fn partner_of_man(&self, m: ManId) -> Option<WomanId> {
        self.man_partner[m.0]
    }

    pub fn partner_of_woman(&self, w: WomanId) -> Option<ManId> {
        self.woman_partner[w.0]
    }

    /// Pairs the two agents, first unmatching whatever partners they had.
    pub fn set(&mut self, m: ManId, w: WomanId) {
        self.unmatch_man(m);
        self.unmatch_woman(w);
        self.man_partner[m.0] = Some(w);
        self.woman_partner[w.0] = Some(m);
    }

    /// Returns the woman `m` was matched to.
    pub fn unmatch_man(&mut self, m: ManId) -> Option<WomanId> {
        let w = self.man_partner[m.0].take()?;
        self.woman_partner[w.0] = None;
        Some(w)
    }

    /// Returns the man `w` was matched to.
    pub fn unmatch_woman(&mut self, w: WomanId) -> Option<ManId> {
        let m = self.woman_partner[w.0].take()?;
        self.man_partner[m.0] = None;
        Some(m)
    }

    /// Matched pairs in man index order.
    pub fn pairs(&self) -> impl Iterator<Item = (ManId, WomanId)> + '_ {
        self.man_partner
            .iter()
            .enumerate()
            .filter_map(|(m, w)| w.map(|w| (ManId(m), w)))
    }

    /// Matched pairs as names, sorted by (man name, woman name).
    pub fn named_pairs<'a>(&self, instance: &'a Instance) -> Vec<(&'a str, &'a str)> {
        let mut out: Vec<_> = self
            .pairs()
            .map(|(m, w)| (instance.man_name(m), instance.woman_name(w)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Number of matched pairs.
    pub fn cardinality(&self) -> usize {
        self.man_partner.iter().filter(|w| w.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.cardinality() == 0
    }

    /// True if the matching's dimensions agree with `instance`.
    pub fn fits(&self, instance: &Instance) -> bool {
        self.man_partner.len() == instance.num_men() && self.woman_partner.len() == instance.num_women()
    }
}

/// Number of matched pairs of `matching`.
pub fn cardinality(matching: &Matching) -> usize {
    matching.cardinality()
}
