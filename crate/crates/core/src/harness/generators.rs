//! Figure instances and seeded random instances.
//!
//! Random generation uses ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`),
//! so a seed reproduces the same instance on every platform.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{BipartiteInstance, EdgeId, Orders};
use crate::order::{
    build_interval_order, consistent_node_orders, IntervalPolicy, IntervalWeights,
};

/// Figure 1 / Figure 2(a): three producers, four consumers, identity orders.
pub fn fig1() -> BipartiteInstance {
    BipartiteInstance::new(
        3,
        4,
        &[
            (0, 0, 7.0),
            (0, 1, 8.0),
            (0, 2, 9.0),
            (1, 0, 1.0),
            (1, 2, 8.0),
            (1, 3, 3.0),
            (2, 1, 4.0),
            (2, 3, 7.0),
        ],
    )
}

/// Edge order e1..e8 of Figure 6 over the Figure 1 graph, as edge ids of [`fig1`].
pub const FIG6_SIGMA_E: [EdgeId; 8] = [2, 1, 4, 0, 7, 6, 5, 3];

/// [`fig1`] with the Figure 6 edge order attached.
pub fn fig2_with_edge_order() -> BipartiteInstance {
    let mut inst = fig1();
    inst.sigma_e = Some(FIG6_SIGMA_E.to_vec());
    inst
}

/// The Figure 6 intervals: every weight of [`fig1`] ±30%.
pub fn fig6_intervals() -> IntervalWeights {
    IntervalWeights::around(&fig1().weights, 0.3).expect("valid spread")
}

fn positive(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be positive, got {x}")))
    }
}

/// Figure 3: (p1,c1) = (p1,c2) = 1, (p2,c1) = β.
pub fn beta_instance(beta: f64) -> Result<BipartiteInstance> {
    positive("beta", beta)?;
    Ok(BipartiteInstance::new(2, 2, &[(0, 0, 1.0), (0, 1, 1.0), (1, 0, beta)]))
}

/// Figure 4: (p1,c1) = 1, (p1,c2) = γ, (p2,c1) = β.
pub fn gamma_instance(beta: f64, gamma: f64) -> Result<BipartiteInstance> {
    positive("beta", beta)?;
    positive("gamma", gamma)?;
    Ok(BipartiteInstance::new(2, 2, &[(0, 0, 1.0), (0, 1, gamma), (1, 0, beta)]))
}

/// Figure 5: p1 sees c1 = 1, then ℓ consumers at 0.5, then c_{ℓ+2} = γ;
/// p2 sees only c1 = β.
pub fn weak_c_instance(ell: usize, beta: f64, gamma: f64) -> Result<BipartiteInstance> {
    positive("beta", beta)?;
    positive("gamma", gamma)?;
    let q = ell + 2;
    let mut edges = vec![(0, 0, 1.0)];
    edges.extend((1..=ell).map(|c| (0, c, 0.5)));
    edges.push((0, q - 1, gamma));
    edges.push((1, 0, beta));
    Ok(BipartiteInstance::new(2, q, &edges))
}

/// Figure 7: p1 sees c1 = 1+ε, ℓ consumers at 0.5 and c_{ℓ+2} = (1+ε)γ;
/// c1 additionally sees p2 = 1, ℓ producers at 0.5 and p_{ℓ+3} = β.
pub fn double_instance(ell: usize, beta: f64, gamma: f64, eps: f64) -> Result<BipartiteInstance> {
    positive("beta", beta)?;
    positive("gamma", gamma)?;
    if !(eps >= 0.0 && eps.is_finite()) {
        return Err(Error::InvalidParameter(format!("epsilon must be non-negative, got {eps}")));
    }
    let s = ell + 3;
    let q = ell + 2;
    let mut edges = vec![(0, 0, 1.0 + eps)];
    edges.extend((1..=ell).map(|c| (0, c, 0.5)));
    edges.push((0, q - 1, (1.0 + eps) * gamma));
    edges.push((1, 0, 1.0));
    edges.extend((2..=ell + 1).map(|p| (p, 0, 0.5)));
    edges.push((s - 1, 0, beta));
    Ok(BipartiteInstance::new(s, q, &edges))
}

/// One producer joined to `m` consumers with unit weights.
pub fn star(m: usize) -> Result<BipartiteInstance> {
    if m == 0 {
        return Err(Error::InvalidParameter("a star needs at least one edge".into()));
    }
    let edges: Vec<_> = (0..m).map(|c| (0, c, 1.0)).collect();
    Ok(BipartiteInstance::new(1, m, &edges))
}

/// Path p1-c1-p2-c2-p3 with edges e1=(p1,c1), e2=(p2,c1), e3=(p2,c2), e4=(p3,c2).
pub fn p4_instance(weights: [f64; 4]) -> Result<BipartiteInstance> {
    for w in weights {
        positive("weight", w)?;
    }
    Ok(BipartiteInstance::new(
        3,
        2,
        &[(0, 0, weights[0]), (1, 0, weights[1]), (1, 1, weights[2]), (2, 1, weights[3])],
    ))
}

/// Catalogue of figure instances, parsable from `name` or `name:a,b,...`.
#[derive(Clone, Debug, PartialEq)]
pub enum Figure {
    Fig1,
    Fig2,
    Beta { beta: f64 },
    Gamma { beta: f64, gamma: f64 },
    WeakC { ell: usize, beta: f64, gamma: f64 },
    Double { ell: usize, beta: f64, gamma: f64, eps: f64 },
    Star { m: usize },
    P4 { weights: [f64; 4] },
}

pub fn gen_figure(fig: &Figure) -> Result<BipartiteInstance> {
    match *fig {
        Figure::Fig1 => Ok(fig1()),
        Figure::Fig2 => Ok(fig2_with_edge_order()),
        Figure::Beta { beta } => beta_instance(beta),
        Figure::Gamma { beta, gamma } => gamma_instance(beta, gamma),
        Figure::WeakC { ell, beta, gamma } => weak_c_instance(ell, beta, gamma),
        Figure::Double { ell, beta, gamma, eps } => double_instance(ell, beta, gamma, eps),
        Figure::Star { m } => star(m),
        Figure::P4 { weights } => p4_instance(weights),
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Figure::Fig1 => write!(f, "fig1"),
            Figure::Fig2 => write!(f, "fig2"),
            Figure::Beta { beta } => write!(f, "beta:{beta}"),
            Figure::Gamma { beta, gamma } => write!(f, "gamma:{beta},{gamma}"),
            Figure::WeakC { ell, beta, gamma } => write!(f, "weak-c:{ell},{beta},{gamma}"),
            Figure::Double { ell, beta, gamma, eps } => {
                write!(f, "double:{ell},{beta},{gamma},{eps}")
            }
            Figure::Star { m } => write!(f, "star:{m}"),
            Figure::P4 { weights: [a, b, c, d] } => write!(f, "p4:{a},{b},{c},{d}"),
        }
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = match s.split_once(':') {
            Some((n, a)) => (n, a),
            None => (s, ""),
        };
        let nums: Vec<&str> = args.split(',').map(str::trim).filter(|a| !a.is_empty()).collect();
        let bad = |what: &str| Error::InvalidParameter(format!("figure '{s}': {what}"));
        let float = |i: usize| -> Result<f64> {
            nums.get(i)
                .ok_or_else(|| bad("missing argument"))?
                .parse::<f64>()
                .map_err(|_| bad("arguments must be numbers"))
        };
        let int = |i: usize| -> Result<usize> {
            nums.get(i)
                .ok_or_else(|| bad("missing argument"))?
                .parse::<usize>()
                .map_err(|_| bad("ell and m must be non-negative integers"))
        };
        let expect = |n: usize| {
            if nums.len() == n {
                Ok(())
            } else {
                Err(bad(&format!("expected {n} arguments, got {}", nums.len())))
            }
        };
        let name = name.trim().to_ascii_lowercase().replace('_', "-");
        match name.as_str() {
            "fig1" => expect(0).map(|_| Figure::Fig1),
            "fig2" => expect(0).map(|_| Figure::Fig2),
            "beta" | "fig3" => {
                expect(1)?;
                Ok(Figure::Beta { beta: float(0)? })
            }
            "gamma" | "fig4" => {
                expect(2)?;
                Ok(Figure::Gamma { beta: float(0)?, gamma: float(1)? })
            }
            "weak-c" | "fig5" => {
                expect(3)?;
                Ok(Figure::WeakC { ell: int(0)?, beta: float(1)?, gamma: float(2)? })
            }
            "double" | "fig7" => {
                expect(4)?;
                Ok(Figure::Double { ell: int(0)?, beta: float(1)?, gamma: float(2)?, eps: float(3)? })
            }
            "star" => {
                expect(1)?;
                Ok(Figure::Star { m: int(0)? })
            }
            "p4" => {
                expect(4)?;
                Ok(Figure::P4 { weights: [float(0)?, float(1)?, float(2)?, float(3)?] })
            }
            _ => Err(bad("unknown figure")),
        }
    }
}

/// How random weights are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WeightModel {
    /// Uniform reals in `[lo, hi]`.
    Uniform { lo: f64, hi: f64 },
    /// Uniform integers in `[lo, hi]`.
    Integer { lo: u32, hi: u32 },
    /// Product weights `x_p * y_c * u` with `x`, `y` non-increasing along the
    /// index order. Under identity orders the extracted β and γ stay below the
    /// caps (below 1 when a cap is below 1).
    Decaying { beta_cap: f64, gamma_cap: f64 },
}

/// How the heuristic orders are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OrderModel {
    /// Index order for producers, consumers and edges.
    Identity,
    /// Uniform random permutations.
    Random,
    /// Edges by decreasing true weight; node orders consistent with it when
    /// possible, first appearance otherwise.
    WeightInformed,
    /// Orders built from `±spread` intervals around the true weights.
    IntervalInduced { spread: f64, policy: IntervalPolicy },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomConfig {
    pub seed: u64,
    pub producers: usize,
    pub consumers: usize,
    pub density: f64,
    pub weights: WeightModel,
    pub orders: OrderModel,
}

impl RandomConfig {
    pub fn new(seed: u64, producers: usize, consumers: usize, density: f64) -> Self {
        RandomConfig {
            seed,
            producers,
            consumers,
            density,
            weights: WeightModel::Uniform { lo: 1.0, hi: 10.0 },
            orders: OrderModel::Identity,
        }
    }

    pub fn with_weights(mut self, weights: WeightModel) -> Self {
        self.weights = weights;
        self
    }

    pub fn with_orders(mut self, orders: OrderModel) -> Self {
        self.orders = orders;
        self
    }
}

/// A generated instance and, for interval-induced orders, its intervals.
#[derive(Clone, Debug, PartialEq)]
pub struct Generated {
    pub instance: BipartiteInstance,
    pub intervals: Option<IntervalWeights>,
}

fn check_config(cfg: &RandomConfig) -> Result<()> {
    if cfg.producers == 0 || cfg.consumers == 0 {
        return Err(Error::InvalidParameter("s and q must be at least 1".into()));
    }
    if !(cfg.density > 0.0 && cfg.density <= 1.0) {
        return Err(Error::InvalidParameter(format!("density {} not in (0, 1]", cfg.density)));
    }
    match cfg.weights {
        WeightModel::Uniform { lo, hi } if !(lo > 0.0 && lo <= hi && hi.is_finite()) => {
            Err(Error::InvalidParameter(format!("uniform weights need 0 < lo <= hi, got [{lo}, {hi}]")))
        }
        WeightModel::Integer { lo, hi } if !(lo >= 1 && lo <= hi) => {
            Err(Error::InvalidParameter(format!("integer weights need 1 <= lo <= hi, got [{lo}, {hi}]")))
        }
        WeightModel::Decaying { beta_cap, gamma_cap }
            if !(beta_cap > 0.0 && gamma_cap > 0.0 && beta_cap.is_finite() && gamma_cap.is_finite()) =>
        {
            Err(Error::InvalidParameter("decaying caps must be positive".into()))
        }
        _ => Ok(()),
    }?;
    if let OrderModel::IntervalInduced { spread, .. } = cfg.orders {
        if !(0.0..1.0).contains(&spread) {
            return Err(Error::InvalidParameter(format!("spread {spread} not in [0, 1)")));
        }
    }
    Ok(())
}

fn decay_sequence(rng: &mut ChaCha8Rng, n: usize, cap: f64) -> Vec<f64> {
    let top = cap.min(1.0);
    let mut v = Vec::with_capacity(n);
    let mut x = 1.0;
    for _ in 0..n {
        v.push(x);
        x *= rng.gen_range(0.5 * top..=top);
    }
    v
}

/// Deterministic random instance for a given configuration.
pub fn gen_random(cfg: &RandomConfig) -> Result<Generated> {
    check_config(cfg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (s, q) = (cfg.producers, cfg.consumers);

    let mut pairs = Vec::new();
    for p in 0..s {
        for c in 0..q {
            if cfg.density >= 1.0 || rng.gen_bool(cfg.density) {
                pairs.push((p, c));
            }
        }
    }

    let weights: Vec<f64> = match cfg.weights {
        WeightModel::Uniform { lo, hi } => {
            pairs.iter().map(|_| if lo == hi { lo } else { rng.gen_range(lo..=hi) }).collect()
        }
        WeightModel::Integer { lo, hi } => {
            pairs.iter().map(|_| rng.gen_range(lo..=hi) as f64).collect()
        }
        WeightModel::Decaying { beta_cap, gamma_cap } => {
            let x = decay_sequence(&mut rng, s, beta_cap);
            let y = decay_sequence(&mut rng, q, gamma_cap);
            let r = if beta_cap >= 1.0 && gamma_cap >= 1.0 { beta_cap.min(gamma_cap) } else { 1.0 };
            pairs
                .iter()
                .map(|&(p, c)| {
                    let u = if r > 1.0 { rng.gen_range(1.0..=r) } else { 1.0 };
                    x[p] * y[c] * u
                })
                .collect()
        }
    };

    let edges: Vec<_> = pairs.iter().zip(&weights).map(|(&(p, c), &w)| (p, c, w)).collect();
    let mut inst = BipartiteInstance::new(s, q, &edges);
    let m = inst.m();
    let mut intervals = None;

    let orders = match cfg.orders {
        OrderModel::Identity => Orders {
            sigma_p: (0..s).collect(),
            sigma_c: (0..q).collect(),
            sigma_e: Some((0..m).collect()),
        },
        OrderModel::Random => {
            let mut sigma_p: Vec<usize> = (0..s).collect();
            let mut sigma_c: Vec<usize> = (0..q).collect();
            let mut sigma_e: Vec<usize> = (0..m).collect();
            sigma_p.shuffle(&mut rng);
            sigma_c.shuffle(&mut rng);
            sigma_e.shuffle(&mut rng);
            Orders { sigma_p, sigma_c, sigma_e: Some(sigma_e) }
        }
        OrderModel::WeightInformed => {
            let exact = IntervalWeights::around(&inst.weights, 0.0)?;
            let mut orders = build_interval_order(&inst, &exact, IntervalPolicy::Centered)?;
            if let Some((sp, sc)) = consistent_node_orders(&inst, orders.sigma_e.as_ref().unwrap()) {
                orders.sigma_p = sp;
                orders.sigma_c = sc;
            }
            orders
        }
        OrderModel::IntervalInduced { spread, policy } => {
            let mut lo = Vec::with_capacity(m);
            let mut hi = Vec::with_capacity(m);
            for &w in &inst.weights {
                let (a, b) = (w / (1.0 + spread), w / (1.0 - spread));
                let f = if a < b { rng.gen_range(a..=b) } else { w };
                // Clamp so that rounding never pushes w outside the interval.
                lo.push((f * (1.0 - spread)).min(w));
                hi.push((f * (1.0 + spread)).max(w));
            }
            let iv = IntervalWeights::new(lo, hi)?;
            let orders = build_interval_order(&inst, &iv, policy)?;
            intervals = Some(iv);
            orders
        }
    };
    inst.set_orders(orders);
    Ok(Generated { instance: inst, intervals })
}
