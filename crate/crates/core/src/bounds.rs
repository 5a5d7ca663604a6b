//! Approximation-ratio guarantees as functions of the order parameters.

use crate::discovery::Algorithm;
use crate::error::Result;
use crate::order::OrderParams;
use crate::REL_TOL;

/// Guaranteed ratio `w(opt) / w(alg)` for `algo` run with lookahead `ell`.
pub fn ratio_bound(algo: Algorithm, ell: usize, p: &OrderParams) -> Result<f64> {
    let strong_pair = 1f64.max(p.beta + p.gamma);
    Ok(match algo {
        Algorithm::Exact => 1.0,
        Algorithm::ClassicGreedy => 2.0,
        Algorithm::GreedyLocal => (1.0 + p.beta).min(strong_pair),
        Algorithm::NaiveLocal => strong_pair,
        Algorithm::LGreedyLocal => {
            let weak = (1.0 + p.beta).max(p.beta + p.gamma_at(ell));
            weak.min(strong_pair)
        }
        Algorithm::LDoubleGreedy => 2.0 * 1f64.max(p.beta_at(ell)).max(p.gamma_at(ell)),
        Algorithm::NaiveEdge => 2.0 * 1f64.max(p.zeta()?),
        Algorithm::LocalEdge => 2.0 * 1f64.max(p.zeta_at(ell)?),
    })
}

/// Realised ratio `exact / achieved`; an empty achieved matching only
/// matches an empty optimum.
pub fn realized_ratio(exact: f64, achieved: f64) -> f64 {
    if exact == 0.0 {
        1.0
    } else if achieved == 0.0 {
        f64::INFINITY
    } else {
        exact / achieved
    }
}

pub fn bound_satisfied(ratio: f64, bound: f64) -> bool {
    ratio <= bound + REL_TOL
}
