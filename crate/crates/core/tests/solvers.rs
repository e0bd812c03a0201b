mod common;

use common::e1;
use num_bigint::BigInt;
use seip_core::analysis::exact_solve;
use seip_core::closure::extend_closure;
use seip_core::generators::{corpus_instance, gen_problem_i, ProblemIParams};
use seip_core::instance::instance_from_pairs;
use seip_core::solvers::ea::{Acceptance, Initialization};
use seip_core::solvers::semo::semo_run_with_archive;
use seip_core::solvers::seip::seip_run_with_population;
use seip_core::solvers::trace::write_trace;
use seip_core::solvers::{
    gaww_solve, greedy_solve, opo_ea_run, replay_seip, seip_run, semo_run, EaConfig, GawwConfig,
    RunResult, TraceEvent, TraceLevel,
};
use seip_core::weight::{harmonic, integer, rational};
use seip_core::{IsolationFunction, Mutation, Rational, Solution};

fn gaww_bound(k: usize) -> Rational {
    let k = k as i64;
    harmonic(k as u64).unwrap() - rational(k - 1, 8 * k.pow(9))
}

#[test]
fn greedy_and_gaww_on_part_of_the_corpus() {
    let mut withdrawal_runs = 0;
    for idx in (0..200).step_by(5) {
        let inst = corpus_instance(idx).unwrap();
        let (opt, _) = exact_solve(&inst).unwrap();
        let k = inst.k();

        let g = greedy_solve(&inst);
        assert_eq!(g.prices.total(), g.cost);
        assert!(g.prices.is_complete());
        assert!(g.cost.clone() / &opt <= harmonic(k as u64).unwrap(), "greedy {idx}");

        let ext = extend_closure(&inst).unwrap();
        let w = gaww_solve(&ext, &GawwConfig::for_instance(&ext)).unwrap();
        assert!(ext.is_feasible(&w.solution).unwrap());
        assert_eq!(ext.cost(&w.solution).unwrap(), w.cost);
        assert_eq!(w.prices.total(), w.cost, "gaww price identity {idx}");
        assert!(w.cost.clone() / &opt <= gaww_bound(k), "gaww {idx}");
        if w.withdrawals() > 0 {
            withdrawal_runs += 1;
        }
    }
    assert!(withdrawal_runs > 0, "no withdrawal exercised the price identity");
}

#[test]
fn gaww_matches_greedy_on_e1() {
    let inst = e1();
    let g = greedy_solve(&inst);
    let w = gaww_solve(&inst, &GawwConfig::for_instance(&inst)).unwrap();
    assert_eq!(w.cost, integer(2));
    assert_eq!(w.solution, g.solution);
    assert_eq!(w.withdrawals(), 0);
}

fn trace_bytes(run: &RunResult<Rational>, name: &str) -> Vec<u8> {
    let mut out = Vec::new();
    write_trace(&mut out, name, &run.trace).unwrap();
    out
}

#[test]
fn replays_are_byte_identical() {
    let inst = corpus_instance(11).unwrap();
    let iso = IsolationFunction::covered_elements(&inst);
    for mutation in [Mutation::OneBit, Mutation::BitWise] {
        let cfg = EaConfig::new(mutation, 3000, 17).with_trace(TraceLevel::Full);
        let a = seip_run(&inst, &iso, &cfg).unwrap();
        let b = seip_run(&inst, &iso, &cfg).unwrap();
        assert_eq!(trace_bytes(&a, "seip"), trace_bytes(&b, "seip"));
        let a = semo_run(&inst, &cfg).unwrap();
        let b = semo_run(&inst, &cfg).unwrap();
        assert_eq!(trace_bytes(&a, "semo"), trace_bytes(&b, "semo"));
        let a = opo_ea_run(&inst, &cfg).unwrap();
        let b = opo_ea_run(&inst, &cfg).unwrap();
        assert_eq!(trace_bytes(&a, "opo"), trace_bytes(&b, "opo"));
    }
    let g1 = greedy_solve(&inst);
    let g2 = greedy_solve(&inst);
    assert_eq!(g1.trace(&inst), g2.trace(&inst));
}

#[test]
fn scaled_runs_agree_with_rational_runs() {
    let inst = corpus_instance(23).unwrap();
    let (scaled, d) = inst.scaled::<i128>().unwrap();
    let iso = IsolationFunction::covered_elements(&inst);
    let cfg = EaConfig::new(Mutation::BitWise, 5000, 3).with_trace(TraceLevel::Accepted);
    let exact = seip_run(&inst, &iso, &cfg).unwrap();
    let fast = seip_run(&scaled, &iso, &cfg).unwrap().to_rational(&d);
    assert_eq!(exact, fast);
    assert!(d > BigInt::from(0));
}

#[test]
fn seip_population_invariants_and_lemma_4_3() {
    for idx in [4, 60, 133] {
        let inst = corpus_instance(idx).unwrap();
        let iso = IsolationFunction::covered_elements(&inst);
        for (mutation, seed) in [(Mutation::OneBit, 1), (Mutation::BitWise, 2)] {
            let cfg = EaConfig::new(mutation, 20_000, seed).with_trace(TraceLevel::Full);
            let (run, pop) = seip_run_with_population(&inst, &iso, &cfg).unwrap();
            // Rebuild the population step by step and check it as we go.
            let mut resident: Vec<Option<Rational>> = vec![None; iso.q() + 1];
            resident[0] = Some(integer(0));
            let mut feasible_seen = false;
            for r in &run.trace {
                if r.event == TraceEvent::Accept {
                    if let Some(old) = &resident[r.cardinality] {
                        assert!(r.cost <= *old, "Lemma 4.3 at cardinality {}", r.cardinality);
                    }
                    resident[r.cardinality] = Some(r.cost.clone());
                }
                let occupied = resident.iter().filter(|c| c.is_some()).count();
                assert!(occupied <= iso.q() + 1);
                if feasible_seen {
                    assert!(resident[iso.q()].is_some());
                }
                feasible_seen |= resident[iso.q()].is_some();
            }
            assert_eq!(pop.len(), resident.iter().filter(|c| c.is_some()).count());
            for (card, res) in pop.residents() {
                assert_eq!(iso.cardinality(&inst, &res.solution).unwrap(), card);
                assert_eq!(Some(&res.cost), resident[card].as_ref());
            }
            assert_eq!(replay_seip(&inst, &iso, &run.trace).unwrap(), pop);
            if let Some(best) = &run.best_feasible {
                assert!(inst.is_feasible(best).unwrap());
            }
        }
    }
}

#[test]
fn feasibility_isolation_keeps_two_residents() {
    let inst = corpus_instance(9).unwrap();
    let iso = IsolationFunction::feasibility();
    let (run, pop) =
        seip_run_with_population(&inst, &iso, &EaConfig::new(Mutation::BitWise, 20_000, 4)).unwrap();
    assert!(pop.len() <= 2);
    let best = run.best_feasible.unwrap();
    assert!(inst.is_feasible(&best).unwrap());
}

#[test]
fn gseip_solves_smallest_problem_i() {
    let p = gen_problem_i(&ProblemIParams { k: 2, l: 1, epsilon: rational(1, 10) }).unwrap();
    let (scaled, d) = p.instance.scaled::<i128>().unwrap();
    let iso = IsolationFunction::covered_elements(&scaled);
    let optimum = Solution::from_flags(&[1, 0, 0]);
    let mut hits = 0;
    for seed in 0..100 {
        let run = seip_run(&scaled, &iso, &EaConfig::new(Mutation::BitWise, 100_000, seed))
            .unwrap()
            .to_rational(&d);
        if run.best_feasible.as_ref() == Some(&optimum) {
            assert_eq!(run.best_cost, Some(rational(11, 10)));
            hits += 1;
        }
    }
    assert!(hits >= 95, "{hits}/100");
}

#[test]
fn semo_archive_invariants() {
    for idx in [8, 90] {
        let inst = corpus_instance(idx).unwrap();
        for seed in 0..5 {
            let cfg = EaConfig::new(Mutation::BitWise, 5000, seed).with_trace(TraceLevel::Accepted);
            let (run, archive) = semo_run_with_archive(&inst, &cfg).unwrap();
            assert!(archive.is_mutually_non_dominated());
            assert!(archive.contains(&inst.empty_solution()));
            if let Some(best) = &run.best_feasible {
                assert!(inst.is_feasible(best).unwrap());
            }
        }
    }
}

#[test]
fn opo_contract_cases() {
    let one = instance_from_pairs(3, "one", &[(&[1, 2, 3], integer(4))]).unwrap();
    let run = opo_ea_run(&one, &EaConfig::new(Mutation::OneBit, 1, 0)).unwrap();
    assert_eq!(run.best_feasible, Some(Solution::full(1)));
    assert_eq!(run.population[0].0, Solution::full(1));

    // Literal acceptance from a random infeasible start can stay stuck; with
    // a budget of one step from x^∅ nothing feasible is reachable here.
    let inst = e1();
    let cfg = EaConfig::new(Mutation::OneBit, 1, 3)
        .with_acceptance(Acceptance::Literal)
        .with_initialization(Initialization::Empty);
    let mut absent = 0;
    for seed in 0..20 {
        let run = opo_ea_run(&inst, &EaConfig { seed, ..cfg.clone() }).unwrap();
        if run.best_feasible.is_none() {
            absent += 1;
        }
    }
    assert!(absent > 0);
}
