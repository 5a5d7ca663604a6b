//! Instance × algorithm × ℓ grids.

use std::time::Instant;

use crate::bounds::{bound_satisfied, ratio_bound, realized_ratio};
use crate::discovery::{run, Algorithm};
use crate::harness::report::RunReport;
use crate::instance::BipartiteInstance;
use crate::order::{extract_params, OrderParams};
use crate::parallel::Execution;
use crate::reference::exact_matching;

#[derive(Clone, Debug)]
pub struct NamedInstance {
    pub name: String,
    pub instance: BipartiteInstance,
}

impl NamedInstance {
    pub fn new(name: impl Into<String>, instance: BipartiteInstance) -> Self {
        NamedInstance { name: name.into(), instance }
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub instances: Vec<NamedInstance>,
    pub algorithms: Vec<Algorithm>,
    /// Used for algorithms with a lookahead; the others run once with ℓ = 0.
    pub ells: Vec<usize>,
    pub compute_exact: bool,
    pub execution: Execution,
}

impl ExperimentConfig {
    pub fn new(instances: Vec<NamedInstance>, algorithms: Vec<Algorithm>, ells: Vec<usize>) -> Self {
        ExperimentConfig { instances, algorithms, ells, compute_exact: true, execution: Execution::default() }
    }

    /// Grid cells in report order.
    pub fn cells(&self) -> Vec<(usize, Algorithm, usize)> {
        let mut out = Vec::new();
        for i in 0..self.instances.len() {
            for &a in &self.algorithms {
                if a.uses_ell() {
                    out.extend(self.ells.iter().map(|&l| (i, a, l)));
                } else {
                    out.push((i, a, 0));
                }
            }
        }
        out
    }
}

/// Per-instance data shared by all of its cells.
struct Prepared {
    exact: Option<f64>,
    params: Option<OrderParams>,
    setup_error: Option<String>,
}

fn prepare(inst: &BipartiteInstance, compute_exact: bool) -> Prepared {
    if let Err(e) = inst.ensure_valid() {
        return Prepared { exact: None, params: None, setup_error: Some(e.to_string()) };
    }
    Prepared {
        exact: compute_exact.then(|| exact_matching(inst).total_weight),
        params: extract_params(inst).ok(),
        setup_error: None,
    }
}

/// Runs one cell with a fresh ledger.
pub fn run_cell(
    name: &str,
    inst: &BipartiteInstance,
    algo: Algorithm,
    ell: usize,
    exact: Option<f64>,
    params: Option<&OrderParams>,
) -> RunReport {
    let t0 = Instant::now();
    let result = match run(inst, algo, ell) {
        Ok(r) => r,
        Err(e) => return RunReport::failed(name, algo.id(), ell, e.to_string()),
    };
    let wall_time_ms = t0.elapsed().as_secs_f64() * 1e3;
    let weight = result.matching.total_weight;
    let ratio = exact.map(|x| realized_ratio(x, weight));
    let (bound, error) = match params.map(|p| ratio_bound(algo, ell, p)) {
        Some(Ok(b)) => (Some(b), None),
        Some(Err(e)) => (None, Some(e.to_string())),
        None => (None, None),
    };
    let satisfied = match (ratio, bound) {
        (Some(r), Some(b)) => Some(bound_satisfied(r, b)),
        _ => None,
    };
    RunReport {
        instance: name.into(),
        algorithm: algo.id().into(),
        ell,
        matching: result.matching.edges.iter().map(ToString::to_string).collect(),
        weight,
        query_count: result.query_count(inst.m()),
        m: inst.m(),
        n: inst.n(),
        exact_weight: exact,
        ratio,
        params: params.cloned(),
        bound,
        bound_satisfied: satisfied,
        wall_time_ms,
        error,
    }
}

/// Evaluates every cell; failures become reports with `error` set. Output
/// order is grid order whatever the execution mode.
pub fn run_experiment(cfg: &ExperimentConfig) -> Vec<RunReport> {
    let prepared = cfg.execution.map(&cfg.instances, |ni| prepare(&ni.instance, cfg.compute_exact));
    let cells = cfg.cells();
    cfg.execution.map(&cells, |&(i, algo, ell)| {
        let ni = &cfg.instances[i];
        let prep = &prepared[i];
        match &prep.setup_error {
            Some(e) => RunReport::failed(&ni.name, algo.id(), ell, e.clone()),
            None => run_cell(&ni.name, &ni.instance, algo, ell, prep.exact, prep.params.as_ref()),
        }
    })
}

/// 1 if any bound is violated, else 2 if any cell failed, else 0.
pub fn exit_status(reports: &[RunReport]) -> i32 {
    if reports.iter().any(|r| r.bound_satisfied == Some(false)) {
        1
    } else if reports.iter().any(|r| r.error.is_some()) {
        2
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generators::fig1;

    #[test]
    fn figure_one_grid() {
        let cfg = ExperimentConfig::new(
            vec![NamedInstance::new("fig1", fig1())],
            vec![Algorithm::GreedyLocal, Algorithm::NaiveLocal, Algorithm::LGreedyLocal, Algorithm::LDoubleGreedy],
            vec![1],
        );
        let reports = run_experiment(&cfg);
        let weights: Vec<f64> = reports.iter().map(|r| r.weight).collect();
        assert_eq!(weights, vec![16.0, 19.0, 23.0, 23.0]);
        let queries: Vec<usize> = reports.iter().map(|r| r.query_count).collect();
        assert_eq!(queries[..2], [5, 0]);
        assert!(queries[2] <= 6);
        assert!(reports.iter().all(|r| r.bound_satisfied == Some(true)));
        assert_eq!(exit_status(&reports), 0);
    }

    #[test]
    fn empty_grid() {
        let cfg = ExperimentConfig::new(vec![], vec![Algorithm::Exact], vec![0]);
        let reports = run_experiment(&cfg);
        assert!(reports.is_empty());
        assert_eq!(exit_status(&reports), 0);
    }

    #[test]
    fn errors_do_not_abort_the_grid() {
        let mut bad = fig1();
        bad.weights[0] = 0.0;
        let cfg = ExperimentConfig::new(
            vec![NamedInstance::new("bad", bad), NamedInstance::new("fig1", fig1())],
            vec![Algorithm::NaiveEdge, Algorithm::Exact],
            vec![0],
        );
        let reports = run_experiment(&cfg);
        assert_eq!(reports.len(), 4);
        assert!(reports[0].error.is_some() && reports[1].error.is_some());
        assert!(reports[2].error.is_some(), "fig1 has no edge order");
        assert_eq!(reports[3].weight, 23.0);
        assert_eq!(exit_status(&reports), 2);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let mut cfg = ExperimentConfig::new(
            vec![NamedInstance::new("a", fig1()), NamedInstance::new("b", fig1())],
            Algorithm::ALL.to_vec(),
            vec![0, 1, 2],
        );
        cfg.execution = Execution::Sequential;
        let a: Vec<_> = run_experiment(&cfg).into_iter().map(|r| (r.weight, r.query_count)).collect();
        cfg.execution = Execution::Parallel;
        let b: Vec<_> = run_experiment(&cfg).into_iter().map(|r| (r.weight, r.query_count)).collect();
        assert_eq!(a, b);
    }
}
