//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Oracles (brute force, subset enumeration, closed-form ratios) are
//! computed here, independently of the library code under test.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use matching_discovery::discovery::{
    blind_spots, greedy_local, l_double_greedy, l_greedy_local, naive_local, run, Algorithm,
};
use matching_discovery::extensions::{brute_force_bhm, solve_bhm, HypergraphInstance};
use matching_discovery::harness::generators::{
    beta_instance, double_instance, fig1, fig2_with_edge_order, fig6_intervals, gamma_instance,
    gen_random, weak_c_instance, OrderModel, RandomConfig, WeightModel,
};
use matching_discovery::order::{
    certified_params, consistent_node_orders, extract_params, overlap_counts,
};
use matching_discovery::reference::{
    brute_force_matching, classic_greedy, exact_matching, optimal_path,
};
use matching_discovery::{BipartiteInstance, Edge, IntervalPolicy, Orders};

/// Exact-equality tolerance for ratios and extracted parameters.
const TOL: f64 = 1e-9;
/// Tolerance against the two-decimal values quoted for the interval example.
const QUOTED_TOL: f64 = 0.01;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

fn within(limit: Duration, t0: Instant) -> Result<(), String> {
    let took = t0.elapsed();
    check(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn ratio(exact: f64, got: f64) -> f64 {
    exact / got
}

fn criterion_1() -> Outcome {
    let t0 = Instant::now();
    let inst = fig1();
    let got = [
        ("exact", exact_matching(&inst).total_weight, 23.0),
        ("classic greedy", classic_greedy(&inst).total_weight, 17.0),
        ("greedy-local", greedy_local(&inst).map_err(|e| e.to_string())?.matching.total_weight, 16.0),
        ("naive-local", naive_local(&inst).map_err(|e| e.to_string())?.matching.total_weight, 19.0),
        ("1-greedy-local", l_greedy_local(&inst, 1).map_err(|e| e.to_string())?.matching.total_weight, 23.0),
        ("1-double-greedy", l_double_greedy(&inst, 1).map_err(|e| e.to_string())?.matching.total_weight, 23.0),
    ];
    for (name, w, want) in got {
        check(w == want, || format!("{name}: got {w}, want {want}"))?;
    }
    within(Duration::from_secs(1), t0)?;
    Ok("weights 23, 17, 16, 19, 23, 23".into())
}

fn criterion_2() -> Outcome {
    let p = extract_params(&fig1()).map_err(|e| e.to_string())?;
    let got = [
        ("beta", p.beta, 7.0 / 3.0),
        ("gamma", p.gamma, 8.0),
        ("beta_1", p.beta_at(1), 0.0),
        ("gamma_1", p.gamma_at(1), 3.0),
        ("gamma_2", p.gamma_at(2), 0.0),
    ];
    for (name, v, want) in got {
        check((v - want).abs() <= TOL, || format!("{name} = {v}, want {want}"))?;
    }
    Ok("beta=7/3 gamma=8 beta_1=0 gamma_1=3 gamma_2=0".into())
}

fn criterion_3() -> Outcome {
    let e = |x: matching_discovery::Error| x.to_string();
    let mut cases = 0;
    for beta in [0.5, 4.0, 10.0] {
        let inst = beta_instance(beta).map_err(e)?;
        let opt = brute_force_matching(&inst).map_err(e)?.total_weight;
        let got = greedy_local(&inst).map_err(e)?.matching.total_weight;
        let r = ratio(opt, got);
        check(close(r, 1.0 + beta, TOL), || format!("beta({beta}): ratio {r}, want {}", 1.0 + beta))?;
        cases += 1;
    }
    for (beta, gamma) in [(3.0, 4.0), (0.5, 0.8), (2.0, 0.1)] {
        let inst = gamma_instance(beta, gamma).map_err(e)?;
        let opt = brute_force_matching(&inst).map_err(e)?.total_weight;
        let got = naive_local(&inst).map_err(e)?.matching.total_weight;
        let r = ratio(opt, got);
        check(close(r, beta + gamma, TOL), || format!("gamma({beta},{gamma}): ratio {r}"))?;
        cases += 1;
    }
    for (ell, beta, gamma) in [(2, 2.0, 3.0), (1, 0.5, 1.5), (4, 3.0, 2.0)] {
        let inst = weak_c_instance(ell, beta, gamma).map_err(e)?;
        let opt = brute_force_matching(&inst).map_err(e)?.total_weight;
        let got = l_greedy_local(&inst, ell).map_err(e)?.matching.total_weight;
        let r = ratio(opt, got);
        check(close(r, beta + gamma, TOL), || format!("weak_c({ell},{beta},{gamma}): ratio {r}"))?;
        cases += 1;
    }
    for (ell, beta, gamma, eps) in [(1, 1.8, 2.0, 0.1), (2, 1.5, 3.0, 0.05), (1, 2.0, 2.0, 0.0)] {
        let inst = double_instance(ell, beta, gamma, eps).map_err(e)?;
        let opt = brute_force_matching(&inst).map_err(e)?.total_weight;
        let got = l_double_greedy(&inst, ell).map_err(e)?.matching.total_weight;
        let r = ratio(opt, got);
        let want = (beta + (1.0 + eps) * gamma) / (1.0 + eps);
        check(close(r, want, TOL), || format!("double({ell},{beta},{gamma},{eps}): ratio {r}, want {want}"))?;
        cases += 1;
    }
    Ok(format!("{cases} lower-bound instances attain their ratios"))
}

fn criterion_4() -> Outcome {
    let t0 = Instant::now();
    let densities = [0.2, 0.5, 1.0];
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut runs = 0;
    for i in 0..200u64 {
        let s = rng.gen_range(1..=30);
        let q = rng.gen_range(1..=30);
        let cfg = RandomConfig::new(1000 + i, s, q, densities[i as usize % 3])
            .with_orders(OrderModel::Random);
        let inst = gen_random(&cfg).map_err(|e| e.to_string())?.instance;
        let n = inst.n();
        for algo in [Algorithm::NaiveLocal, Algorithm::NaiveEdge] {
            let r = run(&inst, algo, 0).map_err(|e| e.to_string())?;
            check(r.ledger.query_count() == 0, || format!("{algo} queried on instance {i}"))?;
            runs += 1;
        }
        for ell in [0usize, 1, 2, 4] {
            let q1 = l_greedy_local(&inst, ell).map_err(|e| e.to_string())?.ledger.query_count();
            check(q1 <= (ell + 1) * n, || format!("l-greedy-local({ell}) used {q1} > {}", (ell + 1) * n))?;
            let q2 = l_double_greedy(&inst, ell).map_err(|e| e.to_string())?.ledger.query_count();
            check(q2 <= 3 * (ell + 1) * n, || format!("l-double-greedy({ell}) used {q2} > {}", 3 * (ell + 1) * n))?;
            check(q1 <= inst.m() && q2 <= inst.m(), || "more queries than edges".into())?;
            runs += 2;
        }
    }
    within(Duration::from_secs(10), t0)?;
    Ok(format!("{runs} runs within their query ceilings"))
}

/// Random instance with n <= 12 and about 4..24 edges, drawn from a mix of
/// weight and order models.
fn mixed_instance(seed: u64) -> BipartiteInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = rng.gen_range(1..=12);
    let q = rng.gen_range(1..=12);
    let target = rng.gen_range(4.0..=22.0);
    let density = (target / (s * q) as f64).min(1.0);
    let weights = match rng.gen_range(0..3) {
        0 => WeightModel::Uniform { lo: 0.5, hi: 10.0 },
        1 => WeightModel::Integer { lo: 1, hi: 4 },
        _ => WeightModel::Decaying {
            beta_cap: rng.gen_range(0.5..3.0),
            gamma_cap: rng.gen_range(0.5..3.0),
        },
    };
    let orders = match rng.gen_range(0..4) {
        0 => OrderModel::Identity,
        1 => OrderModel::Random,
        2 => OrderModel::WeightInformed,
        _ => OrderModel::IntervalInduced { spread: 0.3, policy: IntervalPolicy::Centered },
    };
    let cfg = RandomConfig::new(seed, s, q, density).with_weights(weights).with_orders(orders);
    gen_random(&cfg).expect("valid config").instance
}

fn criterion_5() -> Outcome {
    let t0 = Instant::now();
    let mut instances = 0;
    let mut checks = 0;
    let mut seed = 5_000u64;
    while instances < 500 {
        seed += 1;
        let inst = mixed_instance(seed);
        if inst.m() > 24 || inst.n() > 12 {
            continue;
        }
        instances += 1;
        let opt = brute_force_matching(&inst).map_err(|e| e.to_string())?.total_weight;
        let hung = exact_matching(&inst).total_weight;
        check(close(hung, opt, TOL), || format!("seed {seed}: exact {hung} vs brute force {opt}"))?;
        let p = extract_params(&inst).map_err(|e| e.to_string())?;
        let w = |algo, ell| run(&inst, algo, ell).map(|r| r.matching.total_weight).map_err(|e| e.to_string());
        let mut ineq = |name: &str, bound: f64, got: f64| {
            checks += 1;
            check(opt <= bound * got * (1.0 + TOL) + TOL, || {
                format!("seed {seed}: {name}: opt {opt} > {bound} * {got}")
            })
        };
        let strong = 1f64.max(p.beta + p.gamma);
        ineq("greedy-local <= 1+beta", 1.0 + p.beta, w(Algorithm::GreedyLocal, 0)?)?;
        ineq("naive-local <= max(1,beta+gamma)", strong, w(Algorithm::NaiveLocal, 0)?)?;
        ineq("naive-edge", 2.0 * 1f64.max(p.zeta.unwrap()), w(Algorithm::NaiveEdge, 0)?)?;
        for ell in 0..=3 {
            let lg = w(Algorithm::LGreedyLocal, ell)?;
            ineq("l-greedy-local weak", (1.0 + p.beta).max(p.beta + p.gamma_at(ell)), lg)?;
            ineq("l-greedy-local strong", strong, lg)?;
            let dg_bound = 2.0 * 1f64.max(p.beta_at(ell)).max(p.gamma_at(ell));
            ineq("l-double-greedy", dg_bound, w(Algorithm::LDoubleGreedy, ell)?)?;
            let le_bound = 2.0 * 1f64.max(p.zeta_at(ell).unwrap());
            ineq("local-edge", le_bound, w(Algorithm::LocalEdge, ell)?)?;
        }
    }
    within(Duration::from_secs(60), t0)?;
    Ok(format!("{instances} instances, {checks} inequalities, 0 violations"))
}

fn criterion_6() -> Outcome {
    let inst = fig1();
    let iv = fig6_intervals();
    let sigma_e = fig2_with_edge_order().sigma_e.unwrap();
    let (sigma_p, sigma_c) =
        consistent_node_orders(&inst, &sigma_e).ok_or("figure 6 order has no consistent node orders")?;
    let orders = Orders { sigma_p, sigma_c, sigma_e: Some(sigma_e) };
    let p = certified_params(&inst, &iv, &orders).map_err(|e| e.to_string())?;
    let z = |l| p.zeta_at(l).unwrap();
    let quoted = [
        ("zeta", z(0), 1.857),
        ("beta", p.beta, 1.651),
        ("gamma", p.gamma, 1.651),
        ("zeta_1", z(1), 1.65),
        ("zeta_2", z(2), 1.62),
        ("zeta_3", z(3), 1.44),
        ("zeta_4", z(4), 0.82),
        ("gamma_1", p.gamma_at(1), 1.44),
        ("gamma_2", p.gamma_at(2), 0.0),
        ("beta_1", p.beta_at(1), 0.0),
    ];
    for (name, v, want) in quoted {
        check((v - want).abs() <= QUOTED_TOL, || format!("{name} = {v:.4}, quoted {want}"))?;
    }

    let mut accepted = 0;
    let mut seed = 60_000u64;
    while accepted < 100 {
        seed += 1;
        let policy = if seed.is_multiple_of(2) { IntervalPolicy::Optimistic } else { IntervalPolicy::Pessimistic };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = RandomConfig::new(seed, rng.gen_range(2..=5), rng.gen_range(2..=5), rng.gen_range(0.4..=1.0))
            .with_orders(OrderModel::IntervalInduced { spread: rng.gen_range(0.05..0.5), policy });
        let g = gen_random(&cfg).map_err(|e| e.to_string())?;
        let (inst, iv) = (g.instance, g.intervals.unwrap());
        let sigma_e = inst.sigma_e.clone().unwrap();
        let Some((sigma_p, sigma_c)) = consistent_node_orders(&inst, &sigma_e) else { continue };
        accepted += 1;
        let orders = Orders { sigma_p, sigma_c, sigma_e: Some(sigma_e) };
        let p = certified_params(&inst, &iv, &orders).map_err(|e| e.to_string())?;
        let (oc, oc_p, oc_c) = overlap_counts(&inst, &iv).map_err(|e| e.to_string())?;
        let z = p.zeta_at(oc).unwrap();
        check(z <= 1.0 + TOL, || format!("seed {seed}: zeta_{oc} = {z}"))?;
        check(p.gamma_at(oc_p) <= 1.0 + TOL, || format!("seed {seed}: gamma_{oc_p} = {}", p.gamma_at(oc_p)))?;
        check(p.beta_at(oc_c) <= 1.0 + TOL, || format!("seed {seed}: beta_{oc_c} = {}", p.beta_at(oc_c)))?;
    }
    Ok(format!("quoted values within {QUOTED_TOL}; overlap bounds hold on {accepted} instances"))
}

/// Heaviest subset of path positions with no two consecutive, by enumeration.
fn best_independent(w: &[f64], i: usize, last_taken: bool) -> f64 {
    if i == w.len() {
        return 0.0;
    }
    let skip = best_independent(w, i + 1, false);
    if last_taken {
        skip
    } else {
        skip.max(w[i] + best_independent(w, i + 1, true))
    }
}

fn zigzag_path(k: usize) -> Vec<Edge> {
    (0..k).map(|i| Edge::new(i.div_ceil(2), i / 2)).collect()
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..1000 {
        let k = rng.gen_range(1..=15);
        let weights: Vec<f64> = (0..k)
            .map(|_| if rng.gen_bool(0.3) { rng.gen_range(1..=3) as f64 } else { rng.gen_range(0.1..10.0) })
            .collect();
        let path: Vec<(Edge, f64)> = zigzag_path(k).into_iter().zip(weights.iter().copied()).collect();
        let sel = optimal_path(&path).map_err(|e| e.to_string())?;
        let got: f64 = sel.iter().map(|&i| weights[i]).sum();
        let want = best_independent(&weights, 0, false);
        check(close(got, want, TOL), || format!("trial {trial}: dp {got}, enumeration {want}"))?;
        let rest: f64 = weights.iter().sum::<f64>() - got;
        check(got + TOL >= rest, || format!("trial {trial}: selected {got} < unselected {rest}"))?;
        check(sel.windows(2).all(|w| w[1] >= w[0] + 2), || format!("trial {trial}: adjacent picks"))?;
        let mut taken = vec![false; k];
        sel.iter().for_each(|&i| taken[i] = true);
        check(!taken.windows(3).any(|w| w.iter().all(|t| !t)), || format!("trial {trial}: three skipped"))?;
    }
    Ok("1000 paths match enumeration and satisfy the half-weight inequality".into())
}

fn criterion_8() -> Outcome {
    let mut equal = 0;
    let mut seed = 80_000u64;
    let mut structural = 0;
    while equal < 200 {
        seed += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = RandomConfig::new(seed, rng.gen_range(1..=10), rng.gen_range(1..=10), rng.gen_range(0.2..=1.0))
            .with_weights(WeightModel::Decaying {
                beta_cap: rng.gen_range(0.5..3.0),
                gamma_cap: rng.gen_range(0.3..0.99),
            });
        let inst = gen_random(&cfg).map_err(|e| e.to_string())?.instance;
        if extract_params(&inst).map_err(|e| e.to_string())?.gamma >= 1.0 {
            continue;
        }
        equal += 1;
        let a = naive_local(&inst).map_err(|e| e.to_string())?.matching;
        let b = greedy_local(&inst).map_err(|e| e.to_string())?.matching;
        check(a.edges == b.edges, || format!("seed {seed}: naive-local and greedy-local differ"))?;
    }
    for seed in 0..300u64 {
        let inst = if seed % 2 == 0 { mixed_instance(90_000 + seed) } else {
            gen_random(&RandomConfig::new(seed, 12, 15, 0.4).with_orders(OrderModel::Random))
                .map_err(|e| e.to_string())?
                .instance
        };
        let topo = inst.topology().map_err(|e| e.to_string())?;
        for algo in Algorithm::DISCOVERY.into_iter().filter(|a| a.is_node_based()) {
            for ell in [0, 1, 3] {
                let r = run(&inst, algo, ell).map_err(|e| e.to_string())?;
                let blind = blind_spots(&topo, &r.ledger, &r.matching.edges);
                check(blind.is_empty(), || format!("seed {seed} {algo}({ell}): unseen free edges {blind:?}"))?;
                structural += 1;
            }
        }
    }
    Ok(format!("{equal} gamma<1 instances agree edge-for-edge; {structural} runs leave no blind spot"))
}

fn criterion_9() -> Outcome {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut checked = 0;
    for i in 0..100u64 {
        let cfg = RandomConfig::new(9_000 + i, rng.gen_range(1..=4), rng.gen_range(1..=6), rng.gen_range(0.3..=1.0))
            .with_orders(if i % 2 == 0 { OrderModel::Random } else { OrderModel::WeightInformed });
        let base = gen_random(&cfg).map_err(|e| e.to_string())?.instance;
        let h = HypergraphInstance::max_of_pairs(base, 3).map_err(|e| e.to_string())?;
        check(h.alpha1 == 0.5 && h.alpha2 == 1.0, || "unexpected alpha band".into())?;
        let (_, opt) = brute_force_bhm(&h).map_err(|e| e.to_string())?;
        for algo in [Algorithm::LGreedyLocal, Algorithm::LDoubleGreedy] {
            let r = solve_bhm(&h, algo, 2).map_err(|e| e.to_string())?;
            check(opt <= r.certified_ratio * r.total_weight * (1.0 + TOL) + TOL, || {
                format!("instance {i} {algo}: opt {opt} > {} * {}", r.certified_ratio, r.total_weight)
            })?;
            checked += 1;
        }
    }
    within(Duration::from_secs(30), t0)?;
    Ok(format!("{checked} hypergraph runs within the transferred bound"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("figure 1 reproduction", criterion_1),
        ("parameter extraction", criterion_2),
        ("lower bounds attained", criterion_3),
        ("query ceilings", criterion_4),
        ("approximation bound suite", criterion_5),
        ("interval numerics", criterion_6),
        ("path dynamic program", criterion_7),
        ("degeneracy and structure", criterion_8),
        ("hypergraph transfer", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let outcome = f();
        let ms = t0.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({why}; {ms} ms)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
