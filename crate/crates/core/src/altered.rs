//! Women's altered preference orders used by socGS.
//!
//! Each woman's acceptable men are split into a promoted prefix and a tail.
//! The prefix starts as her acceptable social neighbors and grows as single
//! men get their second chance. Both parts keep her true relative order, so
//! the altered order is always `prefix ++ tail`.

use crate::da::WomanOrder;
use crate::error::SolveError;
use crate::model::{Instance, ManId, WomanId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlteredPrefState {
    prefix: Vec<Vec<ManId>>,
    tail: Vec<Vec<ManId>>,
    second_chance: Vec<bool>,
}

impl AlteredPrefState {
    /// Promotes every woman's acceptable social neighbors; no man has had a
    /// second chance yet.
    pub fn init(instance: &Instance) -> Self {
        let (prefix, tail) = instance
            .women()
            .map(|w| {
                instance
                    .woman_prefs(w)
                    .iter()
                    .partition::<Vec<ManId>, _>(|&&m| instance.is_social(m, w))
            })
            .unzip();
        AlteredPrefState { prefix, tail, second_chance: vec![false; instance.num_men()] }
    }

    /// Gives `man` his second chance: every woman who finds him acceptable
    /// moves him into her prefix at his true-preference position.
    pub fn promote(&mut self, instance: &Instance, man: ManId) -> Result<(), SolveError> {
        if self.second_chance[man.0] {
            return Err(SolveError::AlreadyPromoted(instance.man_name(man).to_owned()));
        }
        self.second_chance[man.0] = true;
        for w in instance.women() {
            let Some(rank) = instance.woman_rank(w, man) else { continue };
            let tail = &mut self.tail[w.0];
            let Some(pos) = tail.iter().position(|&m| m == man) else { continue };
            tail.remove(pos);
            let prefix = &mut self.prefix[w.0];
            let at = prefix
                .iter()
                .position(|&m| instance.woman_rank(w, m) > Some(rank))
                .unwrap_or(prefix.len());
            prefix.insert(at, man);
        }
        Ok(())
    }

    pub fn prefix(&self, w: WomanId) -> &[ManId] {
        &self.prefix[w.0]
    }

    pub fn tail(&self, w: WomanId) -> &[ManId] {
        &self.tail[w.0]
    }

    pub fn has_second_chance(&self, m: ManId) -> bool {
        self.second_chance[m.0]
    }

    /// `prefix ++ tail` for one woman.
    pub fn altered_order(&self, w: WomanId) -> Vec<ManId> {
        let mut out = self.prefix[w.0].clone();
        out.extend_from_slice(&self.tail[w.0]);
        out
    }

    pub fn woman_order(&self, instance: &Instance) -> WomanOrder {
        let orders = instance.women().map(|w| self.altered_order(w)).collect();
        WomanOrder::build(instance.num_men(), orders)
    }

    pub(crate) fn mark_without_promotion(&mut self, man: ManId) {
        self.second_chance[man.0] = true;
    }
}
