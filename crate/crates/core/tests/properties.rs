use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use concur::analysis::{find_useless_checkpoints, CheckpointMarking, Engine};
use concur::generate::{random_asc, random_chain_poset, random_computation, random_marking, ComputationShape};
use concur::lattice::{
    antichain_to_cut, cut_to_antichain, enumerate_event_cuts, enumerate_event_cuts_in,
    enumerate_state_cuts, lattice_meet_join, Order,
};
use concur::oracle;
use concur::state::{check_width_extensible, Witness};
use concur::trace::{self, LoadOptions, Trace};
use concur::transform::{es_transform, roundtrip_es_se, roundtrip_se_es, se_transform};
use concur::{EventModel, Poset, StateModel};

fn computation(seed: u64) -> EventModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=4);
    let lens: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=4)).collect();
    let shape = ComputationShape {
        send: rng.gen_range(0.0..0.9),
        receive: 0.6,
        sync: if rng.gen_bool(0.4) { rng.gen_range(0.1..0.5) } else { 0.0 },
    };
    random_computation(&mut rng, &lens, shape)
}

fn chain_poset(seed: u64) -> StateModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edge = rng.gen_range(0.02..0.4);
    random_chain_poset(&mut rng, 12, 4, edge)
}

/// Width-sized view of a state model.
fn width_view(sm: &StateModel) -> StateModel {
    let p = sm.poset();
    if sm.n() == p.width().0 {
        sm.clone()
    } else {
        sm.with_chains(p.minimum_chain_partition())
    }
}

fn id_sets(p: &Poset, sets: impl IntoIterator<Item = Vec<usize>>) -> BTreeSet<BTreeSet<String>> {
    sets.into_iter()
        .map(|s| s.into_iter().map(|e| p.id(e).to_string()).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dilworth_partition_matches_largest_antichain(seed in any::<u64>()) {
        let p = chain_poset(seed).poset().clone();
        let (w, witness) = p.width();
        let largest = oracle::enumerate_antichains(&p, None).unwrap().iter().map(|a| a.len()).max().unwrap();
        prop_assert_eq!(w, largest);
        prop_assert!(p.is_antichain(witness.members()));
        prop_assert_eq!(witness.len(), w);
        let cp = p.minimum_chain_partition();
        prop_assert_eq!(cp.len(), w);
        let mut seen = vec![false; p.len()];
        for chain in cp.chains() {
            for pair in chain.windows(2) {
                prop_assert!(p.less(pair[0], pair[1]));
            }
            for &e in chain {
                prop_assert!(!seen[e]);
                seen[e] = true;
            }
        }
        prop_assert!(seen.into_iter().all(|x| x));
    }

    #[test]
    fn incomparable_elements_form_an_interval(seed in any::<u64>()) {
        let sm = chain_poset(seed);
        let p = sm.poset();
        let cp = sm.chains();
        for s in 0..p.len() {
            for c in 0..cp.len() {
                let got = p.incomparable_interval(cp, s, c).unwrap();
                let want: Vec<usize> = if cp.chain_of(s) == c {
                    Vec::new()
                } else {
                    (0..cp.chain(c).len()).filter(|&k| p.concurrent(s, cp.chain(c)[k])).collect()
                };
                match got {
                    None => prop_assert!(want.is_empty()),
                    Some(iv) => {
                        let range: Vec<usize> = (iv.lo..=iv.hi).collect();
                        prop_assert_eq!(range, want);
                    }
                }
            }
        }
    }

    #[test]
    fn cut_stream_matches_downsets(seed in any::<u64>()) {
        let m = computation(seed);
        let p = m.poset();
        let want = id_sets(p, oracle::enumerate_downsets_bruteforce(p).unwrap());
        for order in [Order::Lexicographic, Order::Level] {
            let cuts: Vec<_> = enumerate_event_cuts_in(&m, order).collect();
            let got = id_sets(p, cuts.iter().map(|c| c.events(&m)));
            prop_assert_eq!(cuts.len(), got.len());
            prop_assert_eq!(&got, &want);
        }
    }

    #[test]
    fn cuts_and_width_antichains_correspond(seed in any::<u64>()) {
        let m = computation(seed);
        let sm = es_transform(&m);
        let widest = id_sets(sm.poset(), oracle::width_antichains(sm.poset()).unwrap().into_iter().map(|a| a.members().to_vec()));
        let mut images = BTreeSet::new();
        for cut in enumerate_event_cuts(&m) {
            let w = cut_to_antichain(&cut);
            prop_assert!(w.is_consistent(&sm));
            prop_assert_eq!(antichain_to_cut(&m, &w).unwrap(), cut);
            images.insert(w.names(&sm).into_iter().collect::<BTreeSet<String>>());
        }
        prop_assert_eq!(images, widest);
    }

    #[test]
    fn width_antichains_are_closed_under_meet_and_join(seed in any::<u64>()) {
        let sm = es_transform(&computation(seed));
        let mut stream = enumerate_state_cuts(&sm, Order::Lexicographic).unwrap();
        let mut all = Vec::new();
        for w in stream.by_ref() {
            all.push(w);
        }
        let view = stream.state_model();
        let p = view.poset();
        for a in all.iter().take(12) {
            for b in all.iter().take(12) {
                let (meet, join) = lattice_meet_join(view, a, b).unwrap();
                prop_assert!(meet.is_consistent(view) && join.is_consistent(view));
                let (sa, sb) = (a.states(view), b.states(view));
                // Meet is below both and join above both in the antichain order.
                prop_assert!(oracle::antichain_leq(p, &meet.states(view), &sa));
                prop_assert!(oracle::antichain_leq(p, &meet.states(view), &sb));
                prop_assert!(oracle::antichain_leq(p, &sa, &join.states(view)));
                prop_assert!(oracle::antichain_leq(p, &sb, &join.states(view)));
            }
        }
    }

    #[test]
    fn transforms_round_trip(seed in any::<u64>()) {
        let m = computation(seed);
        prop_assert!(roundtrip_es_se(&m).unwrap());
        prop_assert!(roundtrip_se_es(&es_transform(&m)).unwrap());
        prop_assert_eq!(es_transform(&m).n(), m.n());
    }

    #[test]
    fn extensible_posets_transform_and_round_trip(seed in any::<u64>()) {
        let sm = chain_poset(seed);
        let p = sm.poset();
        let we = oracle::width_extensible_by_definition(p).unwrap().is_none();
        prop_assert_eq!(check_width_extensible(p).holds, we);
        if we {
            let view = width_view(&sm);
            prop_assert!(se_transform(&view).unwrap().model().is_some());
            prop_assert!(roundtrip_se_es(&view).unwrap());
        }
    }

    #[test]
    fn witnesses_are_real_violations(seed in any::<u64>()) {
        let sm = width_view(&chain_poset(seed));
        let p = sm.poset();
        let id = |s: &str| p.index_of(s).unwrap();
        let cp = sm.chains();
        for v in [sm.check_omega1(), sm.check_omega2(), sm.check_omega3(), sm.check_psi()] {
            match v.witness {
                None => prop_assert!(v.holds),
                Some(Witness::Ordered { lower, upper }) => prop_assert!(p.less(id(&lower), id(&upper))),
                Some(Witness::Transitivity { lower, middle, predecessor, upper }) => {
                    let (l, m, q, u) = (id(&lower), id(&middle), id(&predecessor), id(&upper));
                    prop_assert!(p.less(l, m) && p.less(q, u) && !p.less(l, u));
                    prop_assert_eq!(cp.chain_of(q), cp.chain_of(m));
                    prop_assert_eq!(cp.position(q) + 1, cp.position(m));
                }
                Some(Witness::Crossing { from_first, to_second, from_second, to_first }) => {
                    let (a, b, c, d) = (id(&from_first), id(&to_second), id(&from_second), id(&to_first));
                    prop_assert!(p.less(a, b) && p.less(c, d));
                    prop_assert_eq!(cp.position(a) + 1, cp.position(d));
                    prop_assert_eq!(cp.position(c) + 1, cp.position(b));
                }
                Some(Witness::Antichain { .. }) => prop_assert!(false, "unexpected antichain witness"),
            }
        }
    }

    #[test]
    fn canonical_output_is_stable(seed in any::<u64>()) {
        let m = computation(seed);
        let text = trace::to_canonical_string(&trace::event_to_value(&m));
        let again = match trace::parse_trace(&text, LoadOptions::default()).unwrap() {
            Trace::Event(back) => back,
            other => panic!("kind {}", other.kind()),
        };
        prop_assert!(again.equivalent(&m));
        prop_assert_eq!(trace::to_canonical_string(&trace::event_to_value(&again)), text.clone());

        let sm = es_transform(&m);
        let text = trace::to_canonical_string(&trace::state_to_value(&sm));
        let back = match trace::parse_trace(&text, LoadOptions::default()).unwrap() {
            Trace::State(back) => back,
            other => panic!("kind {}", other.kind()),
        };
        prop_assert_eq!(trace::to_canonical_string(&trace::state_to_value(&back)), text);
    }
}

#[test]
fn checkpoint_engines_agree_on_many_markings() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut useless = 0;
    for _ in 0..1500 {
        let n = rng.gen_range(2..=4);
        let len = rng.gen_range(2..=8);
        let send = rng.gen_range(0.3..1.0);
        let m = random_asc(&mut rng, n, len, send);
        let sm = es_transform(&m);
        let marks = CheckpointMarking {
            marks: random_marking(&mut rng, &sm, 3),
        };
        let r = find_useless_checkpoints(&sm, &marks, Engine::Both).unwrap();
        assert_eq!(r.disagreements.as_deref(), Some(&[][..]), "marks {:?}", marks.marks);
        useless += r.useless.len();
    }
    assert!(useless > 100, "too few useless checkpoints to be a meaningful sample");
}

#[test]
fn full_marking_of_a_computation_has_no_useless_checkpoint() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let n = rng.gen_range(1..=3);
        let m = random_asc(&mut rng, n, 4, 0.6);
        let sm = es_transform(&m);
        let r = find_useless_checkpoints(&sm, &CheckpointMarking::all(&sm), Engine::Both).unwrap();
        assert!(r.useless.is_empty(), "{:?}", r.useless);
    }
}
