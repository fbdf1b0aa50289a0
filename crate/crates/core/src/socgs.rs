//! The socGS 3/2-approximation and the stable-matching baseline.

use crate::altered::AlteredPrefState;
use crate::da::{man_proposing_da, SolveTrace, WomanOrder};
use crate::model::{Instance, ManId, Matching};

/// One deferred-acceptance run inside socGS.
#[derive(Debug, Clone)]
pub struct Iteration {
    /// `None` for the initial run, otherwise the man given a second chance.
    pub promoted: Option<ManId>,
    pub matching: Matching,
    /// Women's altered orders this run was solved against.
    pub order: WomanOrder,
    pub trace: SolveTrace,
}

#[derive(Debug, Clone)]
pub struct SocGsResult {
    pub matching: Matching,
    pub iterations: Vec<Iteration>,
    pub da_run_count: usize,
    pub state: AlteredPrefState,
}

/// Runs socGS: deferred acceptance against the socially-altered orders, then
/// repeatedly promotes the lowest-index single man without a second chance
/// and reruns deferred acceptance from scratch.
pub fn socgs(instance: &Instance) -> SocGsResult {
    let mut state = AlteredPrefState::init(instance);
    let mut iterations = Vec::new();

    let order = state.woman_order(instance);
    let (mut matching, trace) = man_proposing_da(instance, &order);
    iterations.push(Iteration { promoted: None, matching: matching.clone(), order, trace });

    loop {
        let Some(chosen) = instance
            .men()
            .find(|&m| matching.partner_of_man(m).is_none() && !state.has_second_chance(m))
        else {
            break;
        };
        if instance.man_prefs(chosen).is_empty() {
            // he cannot propose, rerunning would reproduce the same matching
            state.mark_without_promotion(chosen);
            continue;
        }
        state
            .promote(instance, chosen)
            .expect("chosen man has no second chance yet");
        let order = state.woman_order(instance);
        let (next, trace) = man_proposing_da(instance, &order);
        matching = next;
        iterations.push(Iteration { promoted: Some(chosen), matching: matching.clone(), order, trace });
    }

    SocGsResult { da_run_count: iterations.len(), matching, iterations, state }
}

/// The man-optimal stable matching under true preferences.
pub fn stable_baseline(instance: &Instance) -> Matching {
    stable_baseline_traced(instance).0
}

pub fn stable_baseline_traced(instance: &Instance) -> (Matching, SolveTrace) {
    man_proposing_da(instance, &WomanOrder::truthful(instance))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{fixture, Fixture};
    use crate::model::{validate_instance, RawInstance};
    use crate::stability::{blocking_pairs, is_socially_stable};

    #[test]
    fn fig1_single_run() {
        let i = fixture(Fixture::Fig1).instance;
        let r = socgs(&i);
        assert_eq!(r.matching.named_pairs(&i), vec![("m1", "w1"), ("m2", "w2")]);
        assert_eq!(r.da_run_count, 1);
        assert!(is_socially_stable(&i, &r.matching));
    }

    #[test]
    fn tight_two_runs() {
        let i = fixture(Fixture::Tight).instance;
        let r = socgs(&i);
        assert_eq!(r.matching.named_pairs(&i), vec![("m1", "w1"), ("m2", "w3")]);
        assert_eq!(r.da_run_count, 2);
        assert_eq!(r.iterations[1].promoted, i.man_by_name("m3"));
    }

    #[test]
    fn no_men() {
        let raw = RawInstance { women: vec!["w".into()], ..Default::default() };
        let i = validate_instance(&raw).unwrap();
        let r = socgs(&i);
        assert!(r.matching.is_empty());
        assert_eq!(r.da_run_count, 1);
    }

    #[test]
    fn men_with_empty_lists_are_flagged_without_rerun() {
        let raw = RawInstance { men: vec!["a".into(), "b".into()], ..Default::default() };
        let i = validate_instance(&raw).unwrap();
        let r = socgs(&i);
        assert_eq!(r.da_run_count, 1);
        assert!(i.men().all(|m| r.state.has_second_chance(m)));
    }

    #[test]
    fn baseline_fixtures() {
        let fig1 = fixture(Fixture::Fig1).instance;
        assert_eq!(stable_baseline(&fig1).named_pairs(&fig1), vec![("m1", "w2")]);

        let tight = fixture(Fixture::Tight).instance;
        let mu = stable_baseline(&tight);
        assert_eq!(mu.named_pairs(&tight), vec![("m1", "w2"), ("m2", "w1"), ("m3", "w3")]);
        assert!(blocking_pairs(&tight, &mu).is_empty());

        let empty = validate_instance(&RawInstance::default()).unwrap();
        assert!(stable_baseline(&empty).is_empty());
    }
}
