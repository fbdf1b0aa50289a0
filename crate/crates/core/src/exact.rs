//! Exhaustive maximum socially stable matching, used as ground truth.
//!
//! Men are decided one at a time in name order; each is matched to a free
//! acceptable woman (in woman-name order) or left single, last. This visits
//! complete matchings in lexicographic order of their sorted pair lists, so
//! the first maximum found is the lexicographically least one.
//!
//! A branch is cut as soon as a social edge between a decided man and a
//! matched woman blocks: both ends of such a pair are final. Every leaf is
//! still confirmed by the full stability check.

use crate::error::OracleError;
use crate::model::{Instance, ManId, Matching, WomanId};
use crate::stability::{is_blocking, is_socially_stable};

/// Default bound on `|men| + |women|`.
pub const DEFAULT_AGENT_LIMIT: usize = 16;

pub fn exact_max_socially_stable(instance: &Instance, limit: usize) -> Result<Matching, OracleError> {
    guard(instance, limit)?;
    let mut search = Search::new(instance, Mode::Maximum);
    search.run(0);
    Ok(search.best.expect("the empty branch always reaches a leaf"))
}

/// All socially stable matchings, sorted by their pair lists.
pub fn enumerate_socially_stable(instance: &Instance, limit: usize) -> Result<Vec<Matching>, OracleError> {
    guard(instance, limit)?;
    let mut search = Search::new(instance, Mode::Enumerate);
    search.run(0);
    let mut all = search.all;
    all.sort_by_cached_key(|mu| {
        mu.named_pairs(instance)
            .into_iter()
            .map(|(m, w)| (m.to_owned(), w.to_owned()))
            .collect::<Vec<_>>()
    });
    Ok(all)
}

fn guard(instance: &Instance, limit: usize) -> Result<(), OracleError> {
    let agents = instance.num_agents();
    if agents > limit {
        return Err(OracleError::InstanceTooLarge { agents, limit });
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Maximum,
    Enumerate,
}

struct Search<'a> {
    instance: &'a Instance,
    mode: Mode,
    men: Vec<ManId>,
    options: Vec<Vec<WomanId>>,
    matching: Matching,
    size: usize,
    best: Option<Matching>,
    best_size: usize,
    all: Vec<Matching>,
}

impl<'a> Search<'a> {
    fn new(instance: &'a Instance, mode: Mode) -> Self {
        let mut men: Vec<ManId> = instance.men().collect();
        men.sort_by_key(|&m| instance.man_name(m));
        let options = men
            .iter()
            .map(|&m| {
                let mut ws: Vec<WomanId> = instance
                    .man_prefs(m)
                    .iter()
                    .copied()
                    .filter(|&w| instance.woman_rank(w, m).is_some())
                    .collect();
                ws.sort_by_key(|&w| instance.woman_name(w));
                ws
            })
            .collect();
        Search {
            instance,
            mode,
            men,
            options,
            matching: Matching::empty(instance),
            size: 0,
            best: None,
            best_size: 0,
            all: Vec::new(),
        }
    }

    fn run(&mut self, depth: usize) {
        if self.mode == Mode::Maximum && self.best.is_some() {
            let free_women = self.instance.num_women() - self.size;
            let bound = self.size + (self.men.len() - depth).min(free_women);
            if bound <= self.best_size {
                return;
            }
        }
        if depth == self.men.len() {
            self.leaf();
            return;
        }
        let m = self.men[depth];
        for k in 0..self.options[depth].len() {
            let w = self.options[depth][k];
            if self.matching.partner_of_woman(w).is_some() {
                continue;
            }
            self.matching.set(m, w);
            self.size += 1;
            if self.consistent(depth, m, Some(w)) {
                self.run(depth + 1);
            }
            self.matching.unmatch_man(m);
            self.size -= 1;
        }
        if self.consistent(depth, m, None) {
            self.run(depth + 1);
        }
    }

    // Checks the pairs that became final once `m` was decided.
    fn consistent(&self, depth: usize, m: ManId, partner: Option<WomanId>) -> bool {
        let inst = self.instance;
        let mu = &self.matching;
        let man_ok = inst
            .social_neighbors_of_man(m)
            .iter()
            .filter(|&&w| mu.partner_of_woman(w).is_some())
            .all(|&w| !is_blocking(inst, mu, m, w));
        if !man_ok {
            return false;
        }
        match partner {
            None => true,
            Some(w) => inst
                .social_neighbors_of_woman(w)
                .iter()
                .filter(|&&other| other != m && self.decided(depth, other))
                .all(|&other| !is_blocking(inst, mu, other, w)),
        }
    }

    fn decided(&self, depth: usize, m: ManId) -> bool {
        self.men[..depth].contains(&m)
    }

    fn leaf(&mut self) {
        if !is_socially_stable(self.instance, &self.matching) {
            return;
        }
        match self.mode {
            Mode::Maximum => {
                if self.best.is_none() || self.size > self.best_size {
                    self.best = Some(self.matching.clone());
                    self.best_size = self.size;
                }
            }
            Mode::Enumerate => self.all.push(self.matching.clone()),
        }
    }
}
