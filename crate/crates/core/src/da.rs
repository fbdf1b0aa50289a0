//! Man-proposing deferred acceptance over arbitrary women's orders.

use std::collections::VecDeque;

use crate::error::SolveError;
use crate::model::{Instance, ManId, Matching, WomanId};

/// A strict order per woman over exactly her acceptable men. Used both for
/// true preferences and for altered ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WomanOrder {
    orders: Vec<Vec<ManId>>,
    ranks: Vec<Vec<Option<usize>>>,
}

impl WomanOrder {
    /// The women's true preference lists.
    pub fn truthful(instance: &Instance) -> Self {
        let orders = instance.women().map(|w| instance.woman_prefs(w).to_vec()).collect();
        Self::build(instance.num_men(), orders)
    }

    /// Wraps per-woman orders, checking each is a permutation of that woman's
    /// true acceptable set.
    pub fn new(instance: &Instance, orders: Vec<Vec<ManId>>) -> Result<Self, SolveError> {
        if orders.len() != instance.num_women() {
            return Err(SolveError::InvalidWomanOrder(format!(
                "expected {} orders, got {}",
                instance.num_women(),
                orders.len()
            )));
        }
        for (w, order) in instance.women().zip(&orders) {
            let mut got = order.clone();
            let mut want = instance.woman_prefs(w).to_vec();
            got.sort_unstable();
            want.sort_unstable();
            if got != want {
                return Err(SolveError::InvalidWomanOrder(instance.woman_name(w).to_owned()));
            }
        }
        Ok(Self::build(instance.num_men(), orders))
    }

    pub(crate) fn build(num_men: usize, orders: Vec<Vec<ManId>>) -> Self {
        let ranks = orders
            .iter()
            .map(|order| {
                let mut r = vec![None; num_men];
                for (i, m) in order.iter().enumerate() {
                    r[m.0] = Some(i);
                }
                r
            })
            .collect();
        WomanOrder { orders, ranks }
    }

    pub fn order(&self, w: WomanId) -> &[ManId] {
        &self.orders[w.0]
    }

    pub fn rank(&self, w: WomanId, m: ManId) -> Option<usize> {
        self.ranks[w.0][m.0]
    }

    /// True if `a` is strictly better than `b` for `w`; being single is
    /// represented by `None` and ranks below every acceptable man.
    pub fn prefers(&self, w: WomanId, a: Option<ManId>, b: Option<ManId>) -> bool {
        let ra = a.and_then(|m| self.rank(w, m));
        let rb = b.and_then(|m| self.rank(w, m));
        match (ra, rb) {
            (Some(x), Some(y)) => x < y,
            (Some(_), None) => true,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// She was single and accepted.
    Accepted,
    /// She found him unacceptable or preferred her current partner.
    Rejected,
    /// She accepted and released `previous`.
    Displaced { previous: ManId },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Proposal {
    pub man: ManId,
    pub woman: WomanId,
    pub outcome: Outcome,
}

/// Every proposal of one deferred-acceptance run, in order.
///
/// `rounds` counts proposal waves: the men free at the start propose in
/// round 1, men released during round k propose again in round k + 1.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveTrace {
    pub proposals: Vec<Proposal>,
    pub rounds: usize,
}

/// Order in which free men are picked to propose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Discipline {
    /// Queue seeded in input order.
    #[default]
    Fifo,
    /// Stack; the most recently freed man proposes first.
    Lifo,
}

/// Man-proposing deferred acceptance with the default FIFO discipline.
pub fn man_proposing_da(instance: &Instance, order: &WomanOrder) -> (Matching, SolveTrace) {
    man_proposing_da_with(instance, order, Discipline::Fifo)
}

pub fn man_proposing_da_with(
    instance: &Instance,
    order: &WomanOrder,
    discipline: Discipline,
) -> (Matching, SolveTrace) {
    let mut matching = Matching::empty(instance);
    let mut next = vec![0usize; instance.num_men()];
    let mut trace = SolveTrace::default();
    // (man, round he proposes in)
    let mut free: VecDeque<(ManId, usize)> = instance
        .men()
        .filter(|&m| !instance.man_prefs(m).is_empty())
        .map(|m| (m, 1))
        .collect();

    loop {
        let popped = match discipline {
            Discipline::Fifo => free.pop_front(),
            Discipline::Lifo => free.pop_back(),
        };
        let Some((m, round)) = popped else { break };
        let list = instance.man_prefs(m);
        let w = list[next[m.0]];
        next[m.0] += 1;
        trace.rounds = trace.rounds.max(round);

        let current = matching.partner_of_woman(w);
        let (outcome, released, next_round) = if order.prefers(w, Some(m), current) {
            matching.set(m, w);
            match current {
                Some(prev) => (Outcome::Displaced { previous: prev }, Some(prev), round + 1),
                None => (Outcome::Accepted, None, round),
            }
        } else {
            (Outcome::Rejected, Some(m), round + 1)
        };
        trace.proposals.push(Proposal { man: m, woman: w, outcome });
        if let Some(r) = released {
            if next[r.0] < instance.man_prefs(r).len() {
                free.push_back((r, next_round));
            }
        }
    }
    (matching, trace)
}

/// Checks the two textbook properties of a deferred-acceptance outcome:
/// a woman ends single iff no acceptable man proposed to her, and a man
/// ends single iff he exhausted his list (proposed to every woman on it and
/// was turned away by each). Also checks that each man's proposals walk his
/// list in order without skips.
pub fn assert_da_properties(trace: &SolveTrace, matching: &Matching, instance: &Instance) -> bool {
    let mut proposed = vec![0usize; instance.num_men()];
    let mut turned_away = vec![0usize; instance.num_men()];
    let mut received = vec![false; instance.num_women()];
    for p in &trace.proposals {
        match p.outcome {
            Outcome::Rejected => turned_away[p.man.0] += 1,
            Outcome::Displaced { previous } => turned_away[previous.0] += 1,
            Outcome::Accepted => {}
        }
        let list = instance.man_prefs(p.man);
        match list.get(proposed[p.man.0]) {
            Some(&w) if w == p.woman => proposed[p.man.0] += 1,
            _ => return false,
        }
        if instance.woman_rank(p.woman, p.man).is_some() {
            received[p.woman.0] = true;
        }
    }
    let women_ok = instance
        .women()
        .all(|w| matching.partner_of_woman(w).is_none() == !received[w.0]);
    let men_ok = instance
        .men()
        .all(|m| {
            let len = instance.man_prefs(m).len();
            let exhausted = proposed[m.0] == len && turned_away[m.0] == len;
            matching.partner_of_man(m).is_none() == exhausted
        });
    women_ok && men_ok
}
