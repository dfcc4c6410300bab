//! Acceptance suite: one PASS/FAIL line per criterion, exact arithmetic
//! throughout. Runs without the libtest harness so the lines always print.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use dr_ktheory::abelian::GroupType;
use dr_ktheory::cli::{render_machine, run_command, AssumptionKey, Command, RunOptions};
use dr_ktheory::finiteness::{
    check_prop_c_equals_m, coboundary_lattice, condition_c, condition_m, condition_m_bruteforce, sf_verdict,
    Assumptions, Conclusion, MatrixWitness, Policy, Status, Verdict,
};
use dr_ktheory::ktheory::{blockmatrix_reduction, ideal_morphism, k0_of_system};
use dr_ktheory::linalg::IntMatrix;
use dr_ktheory::models::{
    enumerate_invariant_subsets, matrix_system, InvariantSubset, Model, Rank2MatrixSystem,
};
use dr_ktheory::parallel::Exec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Verdict runs collected by criteria 4 and 6 for criteria 7 and 8.
struct VerdictRun {
    system: Rank2MatrixSystem,
    subset: InvariantSubset,
    assumptions: Assumptions,
    verdict: Verdict,
}

fn random_policy(rng: &mut StdRng) -> Policy {
    match rng.random_range(0..3) {
        0 => Policy::Auto,
        1 => Policy::Assume,
        _ => Policy::Deny,
    }
}

fn random_assumptions(rng: &mut StdRng) -> Assumptions {
    Assumptions {
        p: random_policy(rng),
        ideal_sf: random_policy(rng),
        quotient_sf: random_policy(rng),
    }
}

fn systems_200() -> Vec<Rank2MatrixSystem> {
    let mut rng = common::rng(0x5e5);
    (0..200).map(|_| common::random_commuting_system(&mut rng, 4)).collect()
}

fn criterion_1(systems: &[Rank2MatrixSystem]) -> Outcome {
    let mut bad = 0;
    for s in systems {
        match k0_of_system(s) {
            Ok(k) => {
                let c = &k.checks;
                let ok = k.j.is_injective()
                    && k.tau.is_surjective()
                    && k.tau.compose(&k.j).map(|z| z.is_zero_map()).unwrap_or(false)
                    && dr_ktheory::abelian::is_exact_at(&k.j, &k.tau).unwrap_or(false)
                    && c.all();
                bad += usize::from(!ok);
            }
            Err(_) => bad += 1,
        }
    }
    outcome(bad == 0, format!("{} systems, {bad} failures", systems.len()))
}

fn criterion_2(systems: &[Rank2MatrixSystem]) -> Outcome {
    let mut bad = 0;
    for s in systems {
        match blockmatrix_reduction(s) {
            Ok(r) => bad += usize::from(!(r.cokernels_agree() && r.kernels_agree())),
            Err(_) => bad += 1,
        }
    }
    outcome(bad == 0, format!("{} systems, {bad} failures", systems.len()))
}

fn criterion_3() -> Outcome {
    let mut bad = Vec::new();
    for m in 2..=9i64 {
        for n in 2..=9i64 {
            let s = Rank2MatrixSystem::raw(IntMatrix::from_i64(&[&[m]]), IntMatrix::from_i64(&[&[n]])).unwrap();
            let d = (m - 1).gcd(&(n - 1));
            let expected = GroupType {
                free_rank: 0,
                torsion: if d == 1 { vec![] } else { vec![BigInt::from(d)] },
            };
            if k0_of_system(&s).map(|k| k.group_type()).ok() != Some(expected) {
                bad.push(format!("({m},{n})"));
            }
        }
    }
    for n in 1..=5usize {
        let s = Rank2MatrixSystem::raw(IntMatrix::identity(n), IntMatrix::identity(n)).unwrap();
        let expected = GroupType {
            free_rank: 2 * n,
            torsion: vec![],
        };
        if k0_of_system(&s).map(|k| k.group_type()).ok() != Some(expected) {
            bad.push(format!("I_{n}"));
        }
    }
    outcome(bad.is_empty(), format!("64 one-vertex cases + 5 identity cases, failures: {bad:?}"))
}

fn criterion_4(runs: &mut Vec<VerdictRun>) -> Outcome {
    let mut rng = common::rng(0xd1a6);
    let mut models: Vec<Model> = (0..50)
        .map(|_| Model::FiniteMap(common::random_finite_map(&mut rng, 6)))
        .collect();
    models.extend((0..20).map(|_| Model::TwoGraph(common::random_block_two_graph(&mut rng))));
    let (mut subsets, mut bad) = (0, 0);
    for model in &models {
        let s = matrix_system(model).unwrap();
        for w in enumerate_invariant_subsets(model, 20).unwrap() {
            subsets += 1;
            match ideal_morphism(&s, &w) {
                Ok(m) => {
                    let c = &m.checks;
                    let ok = c.left_square_commutes
                        && c.right_square_commutes
                        && c.top_row_exact
                        && c.bottom_row_exact
                        && c.v_right_injective
                        && m.v_right.is_injective();
                    bad += usize::from(!ok);
                }
                Err(_) => bad += 1,
            }
            let assumptions = random_assumptions(&mut rng);
            if let Ok(verdict) = sf_verdict(&s, &w, assumptions) {
                runs.push(VerdictRun {
                    system: s.clone(),
                    subset: w,
                    assumptions,
                    verdict,
                });
            } else {
                bad += 1;
            }
        }
    }
    outcome(
        bad == 0,
        format!("{} models, {subsets} invariant subsets, {bad} failures", models.len()),
    )
}

/// Independent re-check: `(1−m₁)f + (1−m₂)g = v`, `v ≥ 0`, `v ≠ 0`.
fn witness_holds(s: &Rank2MatrixSystem, w: &MatrixWitness) -> bool {
    let n = s.dim();
    (0..n).all(|i| {
        let mut acc = BigInt::zero();
        for j in 0..n {
            let d1 = if i == j { BigInt::from(1) } else { BigInt::zero() } - &s.m1()[(i, j)];
            let d2 = if i == j { BigInt::from(1) } else { BigInt::zero() } - &s.m2()[(i, j)];
            acc += d1 * &w.f[j] + d2 * &w.g[j];
        }
        acc == w.v[i]
    }) && w.v.iter().all(|x| !x.is_negative())
        && w.v.iter().any(|x| !x.is_zero())
}

fn criterion_5() -> Outcome {
    let mut rng = common::rng(0x3a7);
    let (mut contradictions, mut bad_witness, mut fails) = (0, 0, 0);
    for _ in 0..100 {
        let s = common::random_commuting_system(&mut rng, 4);
        let lp = condition_m(&s).unwrap();
        let bf = condition_m_bruteforce(&s, 6).unwrap();
        if !bf.holds && lp.holds {
            contradictions += 1;
        }
        for w in [&lp.witness, &bf.witness].into_iter().flatten() {
            bad_witness += usize::from(!witness_holds(&s, w));
        }
        fails += usize::from(!lp.holds);
    }
    outcome(
        contradictions == 0 && bad_witness == 0,
        format!("100 systems ({fails} fail (M)), {contradictions} contradictions, {bad_witness} bad witnesses"),
    )
}

fn criterion_6(runs: &mut Vec<VerdictRun>) -> Outcome {
    let mut rng = common::rng(0xc0b);
    let mut bad = 0;
    for _ in 0..30 {
        let fm = common::random_finite_map(&mut rng, 6);
        let k = fm.orbit_lcm();
        let eq = check_prop_c_equals_m(&fm, k).unwrap_or(false);
        let model = Model::FiniteMap(fm.clone());
        let s = matrix_system(&model).unwrap();
        let c = condition_c(&coboundary_lattice(&fm, k).unwrap());
        let m = condition_m(&s).unwrap().holds;
        bad += usize::from(!eq || c != m);
        for w in enumerate_invariant_subsets(&model, 20).unwrap() {
            let assumptions = random_assumptions(&mut rng);
            match sf_verdict(&s, &w, assumptions) {
                Ok(verdict) => runs.push(VerdictRun {
                    system: s.clone(),
                    subset: w,
                    assumptions,
                    verdict,
                }),
                Err(_) => bad += 1,
            }
        }
    }
    outcome(bad == 0, format!("30 bijective models, {bad} failures"))
}

fn criterion_7(runs: &[VerdictRun]) -> Outcome {
    let (mut global_m, mut exceptions) = (0, 0);
    for r in runs {
        if r.subset.is_trivial() || !condition_m(&r.system).unwrap().holds {
            continue;
        }
        global_m += 1;
        let h = r.system.restrict(&r.subset).unwrap();
        exceptions += usize::from(!condition_m(&h).unwrap().holds);
        exceptions += usize::from(r.verdict.status_of("M_ideal") != Some(Status::Proven));
        exceptions += usize::from(!r.verdict.restriction_lemma_consistent);
    }
    outcome(
        exceptions == 0,
        format!("{} verdict runs, {global_m} with global (M) on a nontrivial subset, {exceptions} exceptions", runs.len()),
    )
}

fn sound(r: &VerdictRun) -> bool {
    let v = &r.verdict;
    let required_ok = v.checked.iter().filter(|c| c.required).all(|c| c.status.is_satisfied());
    let assumed: Vec<&str> = v
        .checked
        .iter()
        .filter(|c| c.status == Status::Assumed)
        .map(|c| c.condition.as_str())
        .collect();
    let assumed_listed = assumed == v.assumed.iter().map(String::as_str).collect::<Vec<_>>();
    let denied_blocks = [
        (r.assumptions.p, "P"),
        (r.assumptions.ideal_sf, "ideal_sf"),
        (r.assumptions.quotient_sf, "quotient_sf"),
    ]
    .iter()
    .all(|(p, name)| *p != Policy::Deny || r.subset.is_trivial() && *name != "quotient_sf" || v.status_of(name) == Some(Status::Failed));
    let p_never_proven = r.subset.is_trivial() || v.status_of("P") != Some(Status::Proven);
    let conclusion_ok = match v.conclusion {
        Conclusion::StablyFinite => required_ok,
        Conclusion::Inconclusive => !required_ok,
        Conclusion::NotApplicable => r.system.dim() == 0,
    };
    conclusion_ok && assumed_listed && denied_blocks && p_never_proven
}

fn criterion_8(runs: &[VerdictRun]) -> Outcome {
    let unsound = runs.iter().filter(|r| !sound(r)).count();
    let sf = runs
        .iter()
        .filter(|r| r.verdict.conclusion == Conclusion::StablyFinite)
        .count();

    let swap = Model::FiniteMap(dr_ktheory::models::FiniteMapModel::unlabelled(vec![1, 0], vec![0, 1]).unwrap());
    let swap_s = matrix_system(&swap).unwrap();
    let swap_v = sf_verdict(&swap_s, &InvariantSubset::empty(2), Assumptions::default()).unwrap();
    let swap_ok = swap_v.conclusion == Conclusion::StablyFinite
        && swap_v.route == dr_ktheory::finiteness::Route::Minimal
        && swap_v.assumed.is_empty();

    let s23 = Rank2MatrixSystem::raw(IntMatrix::from_i64(&[&[2]]), IntMatrix::from_i64(&[&[3]])).unwrap();
    let v23 = sf_verdict(&s23, &InvariantSubset::empty(1), Assumptions::assume_all()).unwrap();
    let ok23 = v23.conclusion == Conclusion::Inconclusive && v23.status_of("M") == Some(Status::Failed);

    outcome(
        unsound == 0 && swap_ok && ok23,
        format!(
            "{} runs ({sf} stably finite), {unsound} unsound; swap minimal route {}; ((2),(3)) Failed(M) {}",
            runs.len(),
            if swap_ok { "ok" } else { "WRONG" },
            if ok23 { "ok" } else { "WRONG" }
        ),
    )
}

fn all_outputs(inputs: &[String], exec: Exec) -> Vec<String> {
    let commands = [
        Command::K0,
        Command::ConditionM { brute_force: Some(2) },
        Command::Coboundary { k_bound: None },
        Command::Verdict {
            assume: vec![AssumptionKey::P],
            deny: vec![],
        },
        Command::Invariants,
        Command::Ideal,
    ];
    let opts = RunOptions {
        exec,
        ..RunOptions::default()
    };
    let mut out = Vec::new();
    for text in inputs {
        for c in &commands {
            out.push(match run_command(text, c, &opts) {
                Ok(d) => render_machine(&d),
                Err(e) => format!("error: {e}"),
            });
        }
    }
    out
}

fn criterion_9() -> Outcome {
    let docs = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/examples");
    let mut inputs: Vec<String> = ["swap.toml", "identity.toml", "one_vertex.toml"]
        .iter()
        .map(|f| std::fs::read_to_string(format!("{docs}/{f}")).expect("sample documents exist"))
        .collect();
    let mut rng = common::rng(0xde7);
    for _ in 0..5 {
        inputs.push(common::raw_document(&common::random_commuting_system(&mut rng, 3)));
        inputs.push(common::finite_map_document(&common::random_finite_map(&mut rng, 5)));
    }
    let baseline = all_outputs(&inputs, Exec::Parallel);
    let mut same = baseline == all_outputs(&inputs, Exec::Parallel);
    same &= baseline == all_outputs(&inputs, Exec::Sequential);
    for threads in [1, 4] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        same &= pool.install(|| all_outputs(&inputs, Exec::Parallel)) == baseline;
    }
    outcome(
        same,
        format!("{} documents, repeated, sequential and 1/4-thread pools", baseline.len()),
    )
}

fn main() -> ExitCode {
    let systems = systems_200();
    let mut runs = Vec::new();
    let mut results: Vec<(&str, Outcome, f64)> = Vec::new();
    let mut timed = |name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let o = f();
        results.push((name, o, t.elapsed().as_secs_f64()));
    };
    timed("1 split exact sequence on 200 random systems", &mut || criterion_1(&systems));
    timed("2 block-matrix reduction on 200 random systems", &mut || criterion_2(&systems));
    timed("3 closed-form spot checks", &mut criterion_3);
    timed("4 ideal morphism diagram on random models", &mut || criterion_4(&mut runs));
    timed("5 (M) exact test vs brute force", &mut criterion_5);
    timed("6 coboundary lattice equals matrix image", &mut || criterion_6(&mut runs));
    timed("7 (M) passes to invariant restrictions", &mut || criterion_7(&runs));
    timed("8 verdict soundness", &mut || criterion_8(&runs));
    timed("9 deterministic result documents", &mut criterion_9);

    let mut all = true;
    for (name, o, secs) in &results {
        all &= o.pass;
        println!(
            "criterion {name}: {} ({}; {secs:.2}s)",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
