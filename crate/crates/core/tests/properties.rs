use proptest::prelude::*;

use socstable::altered::AlteredPrefState;
use socstable::da::{assert_da_properties, man_proposing_da, man_proposing_da_with, Discipline, Outcome, WomanOrder};
use socstable::exact::{enumerate_socially_stable, exact_max_socially_stable, DEFAULT_AGENT_LIMIT};
use socstable::generators::{gen_random, GenConfig};
use socstable::io::{parse_instance, serialize_instance};
use socstable::model::{validate_instance, AgentId, Instance, ManId, Matching, WomanId};
use socstable::socgs::{socgs, stable_baseline, stable_baseline_traced};
use socstable::stability::{
    blocking_pairs, is_individually_rational, is_socially_stable, is_stable, social_blocking_pairs,
};

/// Every matching of the instance over mutually acceptable pairs, by plain
/// recursion over men in index order with no pruning.
fn all_rational_matchings(instance: &Instance) -> Vec<Matching> {
    fn go(inst: &Instance, m: usize, cur: &mut Matching, out: &mut Vec<Matching>) {
        if m == inst.num_men() {
            out.push(cur.clone());
            return;
        }
        go(inst, m + 1, cur, out);
        for w in inst.women() {
            if cur.partner_of_woman(w).is_none() && inst.mutually_acceptable(ManId(m), w) {
                cur.set(ManId(m), w);
                go(inst, m + 1, cur, out);
                cur.unmatch_man(ManId(m));
            }
        }
    }
    let mut out = Vec::new();
    go(instance, 0, &mut Matching::empty(instance), &mut out);
    out
}

/// Naive direct definition of a social blocking pair, independent of the
/// library's predicates.
fn naive_socially_stable(inst: &Instance, mu: &Matching) -> bool {
    let man_better = |m: ManId, w: WomanId| match mu.partner_of_man(m) {
        None => inst.man_rank(m, w).is_some(),
        Some(p) => matches!((inst.man_rank(m, w), inst.man_rank(m, p)), (Some(a), Some(b)) if a < b),
    };
    let woman_better = |w: WomanId, m: ManId| match mu.partner_of_woman(w) {
        None => inst.woman_rank(w, m).is_some(),
        Some(p) => matches!((inst.woman_rank(w, m), inst.woman_rank(w, p)), (Some(a), Some(b)) if a < b),
    };
    mu.pairs().all(|(m, w)| inst.mutually_acceptable(m, w))
        && inst
            .social_edges()
            .all(|(m, w)| mu.partner_of_man(m) == Some(w) || !(man_better(m, w) && woman_better(w, m)))
}

fn lex_key(inst: &Instance, mu: &Matching) -> Vec<(String, String)> {
    mu.named_pairs(inst).into_iter().map(|(a, b)| (a.to_owned(), b.to_owned())).collect()
}

fn config() -> impl Strategy<Value = GenConfig> {
    (
        0usize..=4,
        0usize..=4,
        prop::sample::select(vec![0.0, 0.3, 0.5, 0.7, 1.0]),
        prop::sample::select(vec![0.0, 0.3, 0.7, 1.0]),
        any::<u64>(),
        any::<bool>(),
    )
        .prop_map(|(n_men, n_women, p_accept, p_social, seed, asymmetric)| GenConfig {
            n_men,
            n_women,
            p_accept,
            p_social,
            seed,
            asymmetric,
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn exact_agrees_with_naive_enumeration(cfg in config()) {
        let inst = gen_random(&cfg);
        let stable: Vec<Matching> = all_rational_matchings(&inst)
            .into_iter()
            .filter(|mu| naive_socially_stable(&inst, mu))
            .collect();
        let max = stable.iter().map(Matching::cardinality).max().unwrap();
        let want = stable
            .iter()
            .filter(|mu| mu.cardinality() == max)
            .map(|mu| lex_key(&inst, mu))
            .min()
            .unwrap();
        let got = exact_max_socially_stable(&inst, DEFAULT_AGENT_LIMIT).unwrap();
        prop_assert_eq!(lex_key(&inst, &got), want);

        let mut want_all: Vec<_> = stable.iter().map(|mu| lex_key(&inst, mu)).collect();
        want_all.sort();
        let got_all: Vec<_> = enumerate_socially_stable(&inst, DEFAULT_AGENT_LIMIT)
            .unwrap()
            .iter()
            .map(|mu| lex_key(&inst, mu))
            .collect();
        prop_assert_eq!(got_all, want_all);
    }

    #[test]
    fn stability_predicates_agree_with_definitions(cfg in config()) {
        let inst = gen_random(&cfg);
        let complete = inst.with_complete_social_graph();
        let no_edges = inst.with_social_edges([]);
        for mu in all_rational_matchings(&inst).iter().take(200) {
            prop_assert_eq!(is_socially_stable(&inst, mu), naive_socially_stable(&inst, mu));
            let social = social_blocking_pairs(&inst, mu);
            let all = blocking_pairs(&inst, mu);
            prop_assert!(social.pairs.iter().all(|p| all.pairs.contains(p)));
            if is_stable(&inst, mu) {
                prop_assert!(is_socially_stable(&inst, mu));
            }
            prop_assert_eq!(is_stable(&inst, mu), is_socially_stable(&complete, mu));
            prop_assert_eq!(is_socially_stable(&no_edges, mu), is_individually_rational(&no_edges, mu));
        }
    }

    #[test]
    fn socgs_guarantees(cfg in config()) {
        let inst = gen_random(&cfg);
        let result = socgs(&inst);
        prop_assert!(is_socially_stable(&inst, &result.matching));
        prop_assert!(result.da_run_count <= inst.num_men() + 1);
        prop_assert_eq!(result.da_run_count, result.iterations.len());
        for m in inst.men() {
            prop_assert!(result.matching.partner_of_man(m).is_some() || result.state.has_second_chance(m));
        }
        let exact = exact_max_socially_stable(&inst, DEFAULT_AGENT_LIMIT).unwrap().cardinality();
        prop_assert!(3 * result.matching.cardinality() >= 2 * exact);

        let (baseline, trace) = stable_baseline_traced(&inst);
        prop_assert!(is_stable(&inst, &baseline));
        prop_assert!(2 * baseline.cardinality() >= exact);
        prop_assert!(assert_da_properties(&trace, &baseline, &inst));
        for it in &result.iterations {
            prop_assert!(assert_da_properties(&it.trace, &it.matching, &inst));
        }
    }

    #[test]
    fn women_weakly_improve_across_iterations(cfg in config()) {
        let inst = gen_random(&cfg);
        let result = socgs(&inst);
        for pair in result.iterations.windows(2) {
            let (prev, next) = (&pair[0], &pair[1]);
            for w in inst.women() {
                let before = prev.matching.partner_of_woman(w);
                let after = next.matching.partner_of_woman(w);
                prop_assert!(before == after || next.order.prefers(w, after, before));
            }
        }
    }

    #[test]
    fn da_is_order_independent_and_women_improve(cfg in config(), promote in prop::collection::vec(any::<prop::sample::Index>(), 0..3)) {
        let inst = gen_random(&cfg);
        let mut state = AlteredPrefState::init(&inst);
        if inst.num_men() > 0 {
            for idx in promote {
                let _ = state.promote(&inst, ManId(idx.index(inst.num_men())));
            }
        }
        let order = state.woman_order(&inst);
        let (fifo, trace) = man_proposing_da_with(&inst, &order, Discipline::Fifo);
        let (lifo, lifo_trace) = man_proposing_da_with(&inst, &order, Discipline::Lifo);
        prop_assert_eq!(&fifo, &lifo);
        prop_assert!(assert_da_properties(&trace, &fifo, &inst));
        prop_assert!(assert_da_properties(&lifo_trace, &lifo, &inst));

        // each woman's held partner only improves under the order in use
        let mut held: Vec<Option<ManId>> = vec![None; inst.num_women()];
        for p in &trace.proposals {
            if p.outcome != Outcome::Rejected {
                prop_assert!(order.prefers(p.woman, Some(p.man), held[p.woman.0]));
                held[p.woman.0] = Some(p.man);
            }
        }
        // stable with respect to (true men's lists, altered women's orders)
        for m in inst.men() {
            for &w in inst.man_prefs(m) {
                let man_wants = match fifo.partner_of_man(m) {
                    None => true,
                    Some(p) => inst.man_rank(m, w) < inst.man_rank(m, p),
                };
                let woman_wants = order.prefers(w, Some(m), fifo.partner_of_woman(w));
                prop_assert!(fifo.partner_of_man(m) == Some(w) || !(man_wants && woman_wants));
            }
        }
        prop_assert!(is_individually_rational(&inst, &fifo));
    }

    #[test]
    fn altered_state_invariants(cfg in config(), promote in prop::collection::vec(any::<prop::sample::Index>(), 0..6)) {
        let inst = gen_random(&cfg);
        let mut state = AlteredPrefState::init(&inst);
        let check = |state: &AlteredPrefState| -> Result<(), TestCaseError> {
            for w in inst.women() {
                let order = state.altered_order(w);
                let mut sorted = order.clone();
                sorted.sort();
                let mut truth = inst.woman_prefs(w).to_vec();
                truth.sort();
                prop_assert_eq!(sorted, truth);
                for part in [state.prefix(w), state.tail(w)] {
                    prop_assert!(part.windows(2).all(|x| inst.woman_rank(w, x[0]) < inst.woman_rank(w, x[1])));
                }
            }
            Ok(())
        };
        check(&state)?;
        for w in inst.women() {
            for &m in state.prefix(w) {
                prop_assert!(inst.is_social(m, w));
            }
            for &m in state.tail(w) {
                prop_assert!(!inst.is_social(m, w));
            }
        }
        if inst.num_men() > 0 {
            for idx in promote {
                let m = ManId(idx.index(inst.num_men()));
                let before: Vec<Vec<ManId>> = inst.women().map(|w| state.prefix(w).to_vec()).collect();
                let was = state.has_second_chance(m);
                let res = state.promote(&inst, m);
                prop_assert_eq!(res.is_err(), was);
                for w in inst.women() {
                    prop_assert!(before[w.0].iter().all(|x| state.prefix(w).contains(x)));
                    if inst.woman_rank(w, m).is_some() {
                        prop_assert!(state.prefix(w).contains(&m));
                    }
                }
                check(&state)?;
            }
        }
    }

    #[test]
    fn exact_dominates_enumeration(cfg in config()) {
        let inst = gen_random(&cfg);
        let all = enumerate_socially_stable(&inst, DEFAULT_AGENT_LIMIT).unwrap();
        let best = exact_max_socially_stable(&inst, DEFAULT_AGENT_LIMIT).unwrap();
        prop_assert!(all.iter().all(|mu| mu.cardinality() <= best.cardinality()));
        prop_assert!(all.contains(&stable_baseline(&inst)));
        let complete = inst.with_complete_social_graph();
        let stable = enumerate_socially_stable(&complete, DEFAULT_AGENT_LIMIT).unwrap();
        prop_assert!(stable.windows(2).all(|x| x[0].cardinality() == x[1].cardinality()));
    }

    #[test]
    fn validation_is_idempotent_and_text_round_trips(cfg in config()) {
        let inst = gen_random(&cfg);
        prop_assert_eq!(&validate_instance(&inst.to_raw()).unwrap(), &inst);
        prop_assert_eq!(&parse_instance(&serialize_instance(&inst)).unwrap(), &inst);
    }

    #[test]
    fn rank_of_is_a_strict_order(cfg in config()) {
        let inst = gen_random(&cfg);
        for m in inst.men() {
            let owner = AgentId::man(inst.man_name(m));
            let mut ranks: Vec<usize> = inst
                .women()
                .filter_map(|w| inst.rank_of(&owner, &AgentId::woman(inst.woman_name(w))).unwrap())
                .collect();
            ranks.sort();
            prop_assert_eq!(ranks, (0..inst.man_prefs(m).len()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn cardinality_grows_with_insertion(cfg in config()) {
        let inst = gen_random(&cfg);
        let mut mu = Matching::empty(&inst);
        let mut last = 0;
        for m in inst.men() {
            if let Some(w) = inst.women().find(|&w| mu.partner_of_woman(w).is_none()) {
                mu.set(m, w);
                prop_assert!(mu.cardinality() > last);
                last = mu.cardinality();
            }
        }
    }
}

#[test]
fn truthful_da_is_man_optimal() {
    for seed in 0..200 {
        let inst = gen_random(&GenConfig::new(4, 4, 0.7, 0.5, seed));
        let (mu, _) = man_proposing_da(&inst, &WomanOrder::truthful(&inst));
        let complete = inst.with_complete_social_graph();
        for other in enumerate_socially_stable(&complete, DEFAULT_AGENT_LIMIT).unwrap() {
            for m in inst.men() {
                let mine = mu.partner_of_man(m).and_then(|w| inst.man_rank(m, w));
                let theirs = other.partner_of_man(m).and_then(|w| inst.man_rank(m, w));
                match (mine, theirs) {
                    (Some(a), Some(b)) => assert!(a <= b, "seed {seed}"),
                    (None, Some(_)) => panic!("seed {seed}: man single in man-optimal matching"),
                    _ => {}
                }
            }
        }
    }
}
