//! Stability predicates over an (instance, matching) pair.

use crate::model::{Instance, ManId, Matching, WomanId};

/// Blocking pairs as `(man name, woman name)`, sorted lexicographically.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BlockingReport {
    pub pairs: Vec<(String, String)>,
}

impl BlockingReport {
    fn from_ids(instance: &Instance, ids: impl IntoIterator<Item = (ManId, WomanId)>) -> Self {
        let mut pairs: Vec<_> = ids
            .into_iter()
            .map(|(m, w)| (instance.man_name(m).to_owned(), instance.woman_name(w).to_owned()))
            .collect();
        pairs.sort();
        BlockingReport { pairs }
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, man: &str, woman: &str) -> bool {
        self.pairs.iter().any(|(m, w)| m == man && w == woman)
    }
}

/// True if `m` strictly prefers `w` to his current partner (being single
/// counts as worse than any acceptable woman).
pub fn man_prefers(instance: &Instance, matching: &Matching, m: ManId, w: WomanId) -> bool {
    let Some(rw) = instance.man_rank(m, w) else { return false };
    match matching.partner_of_man(m) {
        None => true,
        Some(cur) => instance.man_rank(m, cur).is_none_or(|rc| rw < rc),
    }
}

/// True if `w` strictly prefers `m` to her current partner.
pub fn woman_prefers(instance: &Instance, matching: &Matching, w: WomanId, m: ManId) -> bool {
    let Some(rm) = instance.woman_rank(w, m) else { return false };
    match matching.partner_of_woman(w) {
        None => true,
        Some(cur) => instance.woman_rank(w, cur).is_none_or(|rc| rm < rc),
    }
}

/// `(m, w)` is a blocking pair: unmatched to each other and each strictly
/// prefers the other.
pub fn is_blocking(instance: &Instance, matching: &Matching, m: ManId, w: WomanId) -> bool {
    matching.partner_of_man(m) != Some(w)
        && man_prefers(instance, matching, m, w)
        && woman_prefers(instance, matching, w, m)
}

pub fn is_individually_rational(instance: &Instance, matching: &Matching) -> bool {
    matching
        .pairs()
        .all(|(m, w)| instance.mutually_acceptable(m, w))
}

pub fn blocking_pairs(instance: &Instance, matching: &Matching) -> BlockingReport {
    let ids = instance
        .men()
        .flat_map(|m| instance.man_prefs(m).iter().map(move |&w| (m, w)))
        .filter(|&(m, w)| is_blocking(instance, matching, m, w));
    BlockingReport::from_ids(instance, ids)
}

pub fn social_blocking_pairs(instance: &Instance, matching: &Matching) -> BlockingReport {
    let ids = instance
        .social_edges()
        .filter(|&(m, w)| is_blocking(instance, matching, m, w));
    BlockingReport::from_ids(instance, ids)
}

pub fn is_socially_stable(instance: &Instance, matching: &Matching) -> bool {
    is_individually_rational(instance, matching)
        && instance
            .social_edges()
            .all(|(m, w)| !is_blocking(instance, matching, m, w))
}

pub fn is_stable(instance: &Instance, matching: &Matching) -> bool {
    is_individually_rational(instance, matching) && blocking_pairs(instance, matching).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{fixture, Fixture};
    use crate::model::{validate_instance, RawInstance};

    fn fig1() -> Instance {
        fixture(Fixture::Fig1).instance
    }

    fn mu(inst: &Instance, pairs: &[(&str, &str)]) -> Matching {
        Matching::from_names(inst, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn individual_rationality() {
        let i = fig1();
        assert!(is_individually_rational(&i, &mu(&i, &[("m1", "w2")])));
        assert!(!is_individually_rational(&i, &mu(&i, &[("m2", "w1")])));
        assert!(is_individually_rational(&i, &Matching::empty(&i)));
    }

    #[test]
    fn fig1_blocking_pairs() {
        let i = fig1();
        let big = mu(&i, &[("m1", "w1"), ("m2", "w2")]);
        assert_eq!(blocking_pairs(&i, &big).pairs, vec![("m1".into(), "w2".into())]);
        assert!(blocking_pairs(&i, &mu(&i, &[("m1", "w2")])).is_empty());
        assert!(social_blocking_pairs(&i, &big).is_empty());

        let complete = i.with_complete_social_graph();
        assert_eq!(social_blocking_pairs(&complete, &big).pairs, vec![("m1".into(), "w2".into())]);
        assert!(!is_socially_stable(&complete, &big));
    }

    #[test]
    fn fig1_stability() {
        let i = fig1();
        let big = mu(&i, &[("m1", "w1"), ("m2", "w2")]);
        let small = mu(&i, &[("m1", "w2")]);
        assert!(is_socially_stable(&i, &big));
        assert!(is_socially_stable(&i, &small));
        assert!(is_stable(&i, &small));
        assert!(!is_stable(&i, &big));
        let empty = Matching::empty(&i);
        assert!(!is_stable(&i, &empty));
        assert!(blocking_pairs(&i, &empty).contains("m1", "w2"));
    }

    #[test]
    fn empty_instance_has_no_blocking_pairs() {
        let i = validate_instance(&RawInstance::default()).unwrap();
        assert!(blocking_pairs(&i, &Matching::empty(&i)).is_empty());
        assert!(is_stable(&i, &Matching::empty(&i)));
    }

    #[test]
    fn empty_social_graph_only_needs_rationality() {
        let i = fig1().with_social_edges([]);
        assert!(is_socially_stable(&i, &Matching::empty(&i)));
        assert!(social_blocking_pairs(&i, &mu(&i, &[("m1", "w1")])).is_empty());
        assert!(!is_socially_stable(&i, &mu(&i, &[("m2", "w1")])));
    }
}
