//! Acceptance report: one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails.

mod common;

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use pag::congestion::{solve_chain, Payoffs, Road, RoadGame, Schedule, Solution};
use pag::{
    balanced_spne, brute_force_nash_oracle, check_balanced, check_nash, check_spne,
    construct_balanced, count_extensions, enumerate_extensions, indifferent,
    lexicographic_ordering, load_scenario, pair_traversal, petersen_graph, precarious_ordering,
    sole_survivor, strongly_prefers, terminal_outcome, validate_path, weakly_prefers, DecisionRule,
    Guarantee, PowerVector, Sign, SignedGraph, State,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;
const ORACLE_CASES: usize = 600;
const ORACLE_TIME_LIMIT: Duration = Duration::from_secs(60);
const TRAVERSAL_CASES: usize = 250;
const COROLLARY_CASES: usize = 150;
const COROLLARY_TOL: f64 = 1e-9;
const INVARIANT_CASES: usize = 1000;
const PETERSEN_ORDERINGS: usize = 1000;

struct Report {
    failures: usize,
}

impl Report {
    fn line(&mut self, id: &str, ok: bool, text: String) {
        if !ok {
            self.failures += 1;
        }
        println!("{}  [{id}] {text}", if ok { "PASS" } else { "FAIL" });
    }

    fn detail(&self, text: String) {
        println!("        {text}");
    }
}

fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ (stream << 32))
}

fn oracle_agreement(rep: &mut Report) {
    let mut r = rng(1);
    let start = Instant::now();
    let (mut agree, mut holds, mut fails) = (0, 0, 0);
    for _ in 0..ORACLE_CASES {
        let n = r.gen_range(2..=4);
        let grid = r.gen_range(1..=4);
        let g = random_graph(&mut r, n, 0.3, 0.5, 6);
        let p = integer_powers(&mut r, n, 4);
        let u = on_grid_matrix(&mut r, &g, &p, grid);
        let a = check_nash(&u).unwrap().holds;
        let b = brute_force_nash_oracle(&u, grid).unwrap().holds;
        agree += usize::from(a == b);
        if a {
            holds += 1;
        } else {
            fails += 1;
        }
    }
    let took = start.elapsed();
    rep.line(
        "1",
        agree == ORACLE_CASES && took < ORACLE_TIME_LIMIT,
        format!(
            "oracle agreement: {agree}/{ORACLE_CASES} agree ({holds} hold, {fails} fail), {:.2} s (limit {} s)",
            took.as_secs_f64(),
            ORACLE_TIME_LIMIT.as_secs()
        ),
    );
}

fn traversal_and_containment(rep: &mut Report) {
    let mut r = rng(2);
    let (mut certified, mut rule1_too, mut max_pairs) = (0, 0, 0);
    for _ in 0..TRAVERSAL_CASES {
        let n = r.gen_range(2..=8);
        let g = random_graph(&mut r, n, 0.2, 0.5, 12);
        max_pairs = max_pairs.max(g.adversary_pairs().len());
        let p = if r.gen_bool(0.5) {
            integer_powers(&mut r, n, 5)
        } else {
            real_powers(&mut r, n)
        };
        let trace = pair_traversal(&g, &p, &shuffled_pairs(&mut r, &g)).unwrap();
        let ok = validate_path(&trace.path).is_empty()
            && trace.path.rule() == DecisionRule::Rule1_1
            && check_spne(&trace.path).unwrap().holds;
        if ok {
            certified += 1;
            if check_spne(&trace.path.with_rule(DecisionRule::Rule1))
                .unwrap()
                .holds
            {
                rule1_too += 1;
            }
        }
    }
    rep.line(
        "2",
        certified == TRAVERSAL_CASES,
        format!(
            "pair traversal: {certified}/{TRAVERSAL_CASES} paths valid and certified under rule 1.1 (n <= 8, up to {max_pairs} adversary pairs)"
        ),
    );
    rep.line(
        "3",
        rule1_too == certified,
        format!(
            "rule 1.1 certified paths also certified under rule 1: {rule1_too}/{certified}, {} counterexamples",
            certified - rule1_too
        ),
    );
}

fn corollary(rep: &mut Report) {
    let mut r = rng(4);
    let (mut done, mut ok, mut worst) = (0, 0, 0.0f64);
    while done < COROLLARY_CASES {
        let n = r.gen_range(2..=8);
        let g = random_graph(&mut r, n, 0.2, 0.5, 12);
        let p = real_powers(&mut r, n);
        let i = r.gen_range(1..=n);
        let adv = g.adversaries_of(i).unwrap();
        let opposing: f64 = adv.iter().map(|&j| p.get(j)).sum();
        if adv.is_empty() || p.get(i) > opposing {
            continue;
        }
        done += 1;
        let last = precarious_ordering(&g, &p, i).unwrap();
        let u = last.final_matrix();
        let gap = (u.support(i) - u.threat(i)).abs();
        worst = worst.max(gap);
        ok += usize::from(gap <= COROLLARY_TOL);
    }
    rep.line(
        "4",
        ok == COROLLARY_CASES,
        format!(
            "precarious ordering: {ok}/{COROLLARY_CASES} targets with |sigma - tau| <= {COROLLARY_TOL:e} (worst {worst:e})"
        ),
    );
}

fn survivor(rep: &mut Report) {
    let g = SignedGraph::complete_adversary(3);
    let expect = [State::Safe, State::Unsafe, State::Unsafe];
    let mut all = true;
    for p in [[3.0, 3.0, 1.0], [1.0, 2.0, 2.0]] {
        let s = sole_survivor(&g, &PowerVector::new(p.to_vec()).unwrap(), 1).unwrap();
        let states = terminal_outcome(&s.path).unwrap();
        let cert = check_spne(&s.path).unwrap().holds;
        let ok = states.as_slice() == expect && cert && s.guarantee == Guarantee::Strict;
        all &= ok;
        rep.detail(format!(
            "p = {p:?}: terminal {:?}, spne {cert}, {:?}",
            states.as_slice(),
            s.guarantee
        ));
    }
    let eq = sole_survivor(&g, &PowerVector::new(vec![1.0, 3.0, 2.0]).unwrap(), 1).unwrap();
    let degraded =
        matches!(&eq.guarantee, Guarantee::Degraded { shortfalls } if !shortfalls.is_empty());
    let no_false_claim = terminal_outcome(&eq.path).unwrap().get(2) == State::Precarious;
    rep.detail(format!("p = [1, 3, 2] (equality): {:?}", eq.guarantee));
    rep.line(
        "5",
        all && degraded && no_false_claim && check_spne(&eq.path).unwrap().holds,
        "sole survivor desk examples reproduce; equality instance reports a degraded guarantee"
            .into(),
    );
}

fn petersen(rep: &mut Report) {
    let g = petersen_graph();
    let p = PowerVector::uniform(10, 1.0).unwrap();
    let lex = pair_traversal(&g, &p, &lexicographic_ordering(&g)).unwrap();
    let lex_cert = check_balanced(lex.final_matrix()).unwrap();
    let mut r = rng(6);
    let mut any_balanced = lex_cert.holds;
    for _ in 0..PETERSEN_ORDERINGS {
        let mut order = lexicographic_ordering(&g);
        order.shuffle(&mut r);
        let t = pair_traversal(&g, &p, &order).unwrap();
        any_balanced |= check_balanced(t.final_matrix()).unwrap().holds;
    }
    let leftover = lex
        .residuals
        .last()
        .unwrap()
        .iter()
        .filter(|&&z| z > 0.0)
        .count();
    rep.detail(format!(
        "(a) pair traversal balanced: lexicographic {} (condition {:?}, {leftover} countries keep reserve), any of {PETERSEN_ORDERINGS} random orderings {any_balanced}",
        lex_cert.holds, lex_cert.violated_condition
    ));
    let u_star = construct_balanced(&g, &p).unwrap().found().unwrap();
    let path = balanced_spne(&g, &p, &u_star, None).unwrap();
    let spne = check_spne(&path).unwrap().holds;
    let all_precarious = terminal_outcome(&path).unwrap().count(State::Precarious) == 10;
    rep.detail(format!(
        "(b) balanced_spne on the linear-program equilibrium certifies: {spne}"
    ));
    rep.detail(format!(
        "(c) terminal outcome all precarious: {all_precarious}"
    ));
    rep.line(
        "6",
        any_balanced && spne && all_precarious,
        "Petersen scenario: pair traversal balanced, balanced_spne certified, all precarious"
            .into(),
    );
}

fn extension_audit(rep: &mut Report) {
    // 10 edges of K5, signs alternating
    let pairs: Vec<(usize, usize)> = (1..=5)
        .flat_map(|i| (i + 1..=5).map(move |j| (i, j)))
        .collect();
    let sign = |k: usize| {
        if k.is_multiple_of(2) {
            Sign::Adversary
        } else {
            Sign::Friend
        }
    };
    let mut exact_ok = true;
    let mut divergence = None;
    let mut audited = 0;
    for m in 0..=10usize {
        let target = SignedGraph::from_signed_edges(
            5,
            pairs[..m]
                .iter()
                .enumerate()
                .map(|(k, &e)| (e.into(), sign(k))),
        )
        .unwrap();
        for alpha in 0..=m {
            let current = SignedGraph::from_signed_edges(
                5,
                pairs[..alpha]
                    .iter()
                    .enumerate()
                    .map(|(k, &e)| (e.into(), sign(k))),
            )
            .unwrap();
            let listed = enumerate_extensions(&current, &target).unwrap().len() as u128;
            let count = count_extensions(m as u32, alpha as u32).unwrap();
            exact_ok &= listed == 1u128 << (m - alpha) && count.exact == listed;
            if divergence.is_none() && !count.agrees() {
                divergence = Some((m - alpha, count.exact, count.printed_formula));
            }
            audited += 1;
        }
    }
    rep.detail(format!(
        "first divergence (m - alpha, true, formula): {divergence:?}"
    ));
    rep.line(
        "7",
        exact_ok && divergence == Some((2, 4, 5)),
        format!("extension audit: {audited} (m, alpha) pairs with m <= 10 match 2^(m - alpha); formula diverges from m - alpha = 2"),
    );
}

fn congestion(rep: &mut Report) {
    let solve = |s: Schedule| solve_chain(&RoadGame::new(Payoffs::default(), s)).unwrap();
    let a = solve(Schedule::a_first());
    let b = solve(Schedule::b_first());
    rep.detail(format!("a-first {a:?}, b-first {b:?}"));
    rep.line(
        "8",
        a == Solution::Unique((Road::A, Road::B)) && b == Solution::Unique((Road::B, Road::A)),
        "congestion chains: a-first solves to (A, B), b-first to (B, A)".into(),
    );
}

fn invariants(rep: &mut Report) {
    let mut r = rng(9);
    let mut counts = [0usize; 5];
    for _ in 0..INVARIANT_CASES {
        let n = r.gen_range(2..=6);
        let g = random_graph(&mut r, n, 0.3, 0.4, 12);
        let p = integer_powers(&mut r, n, 3);
        let u = on_grid_matrix(&mut r, &g, &p, 2);
        let v = on_grid_matrix(&mut r, &g, &p, 2);

        counts[0] += usize::from((1..=n).all(|i| weakly_prefers(i, &u, &u).unwrap()));
        counts[1] += usize::from((1..=n).all(|i| {
            let ind = indifferent(i, &u, &v).unwrap();
            ind == indifferent(i, &v, &u).unwrap()
                && (!ind
                    || (weakly_prefers(i, &u, &v).unwrap() && weakly_prefers(i, &v, &u).unwrap()))
        }));
        counts[2] += usize::from((1..=n).all(|i| {
            !(strongly_prefers(i, &u, &v).unwrap() && strongly_prefers(i, &v, &u).unwrap())
        }));
        let c = r.gen_range(0.01..100.0);
        let s = u.scaled(c).unwrap();
        counts[3] += usize::from(
            u.classify() == s.classify()
                && check_nash(&u).unwrap().holds == check_nash(&s).unwrap().holds
                && check_balanced(&u).unwrap().holds == check_balanced(&s).unwrap().holds,
        );

        let pr = real_powers(&mut r, n);
        let trace = pair_traversal(&g, &pr, &shuffled_pairs(&mut r, &g)).unwrap();
        let conserved = trace.residuals.iter().enumerate().all(|(t, res)| {
            let spent: f64 = trace.steps[..t].iter().map(|s| 2.0 * s.amount).sum();
            let left: f64 = res.iter().sum();
            (spent + left - pr.total()).abs() <= 1e-9 * pr.total()
                && res.iter().all(|&z| z >= 0.0)
                && (1..=n).all(|i| trace.path.matrices()[t].get(i, i) == res[i - 1])
        });
        counts[4] += usize::from(conserved);
    }
    let names = [
        "reflexive weak preference",
        "indifference symmetry and equivalence",
        "strong preference antisymmetry",
        "scale covariance of classify and both certificates",
        "residual conservation in pair traversal",
    ];
    for (name, c) in names.iter().zip(counts) {
        rep.detail(format!("{name}: {c}/{INVARIANT_CASES}"));
    }
    rep.line(
        "9",
        counts.iter().all(|&c| c == INVARIANT_CASES),
        format!("invariant suites: 5 properties over {INVARIANT_CASES} randomized cases each"),
    );
}

fn cli_contract(rep: &mut Report) {
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let bin = env!("CARGO_BIN_EXE_pag");
    let run = |args: &[&str]| {
        Command::new(bin)
            .args(args)
            .env("PAG_NO_COLOR", "1")
            .output()
            .unwrap()
    };
    let fx = |name: &str| fixtures.join(name).to_string_lossy().into_owned();

    let mut round_trip = true;
    for name in [
        "triangle.json",
        "ne_false.json",
        "mixed.json",
        "petersen.json",
    ] {
        let s = load_scenario(&std::fs::read(fx(name)).unwrap()).unwrap();
        let again = load_scenario(s.to_json_string().as_bytes()).unwrap();
        round_trip &= s == again;
    }
    let dot1 = run(&["export", "dot", &fx("petersen.json")]).stdout;
    let dot2 = run(&["export", "dot", &fx("petersen.json")]).stdout;
    let holds = run(&["check", "ne", &fx("triangle.json")]).status.code();
    let fails = run(&["check", "ne", &fx("ne_false.json")]).status.code();
    rep.detail(format!(
        "round trip {round_trip}, DOT identical {} ({} bytes), exit codes holds={holds:?} fails={fails:?}",
        dot1 == dot2,
        dot1.len()
    ));
    rep.line(
        "10",
        round_trip && dot1 == dot2 && !dot1.is_empty() && holds == Some(0) && fails == Some(2),
        "CLI contract: round trip, deterministic DOT, exit codes 0 and 2".into(),
    );
}

fn main() {
    let mut rep = Report { failures: 0 };
    oracle_agreement(&mut rep);
    traversal_and_containment(&mut rep);
    corollary(&mut rep);
    survivor(&mut rep);
    petersen(&mut rep);
    extension_audit(&mut rep);
    congestion(&mut rep);
    invariants(&mut rep);
    cli_contract(&mut rep);
    println!("acceptance: {} of 10 criteria failed", rep.failures);
    if rep.failures > 0 {
        std::process::exit(1);
    }
}
