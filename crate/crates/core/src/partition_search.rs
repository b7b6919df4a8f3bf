//! Partitioned forbidden-intersection bounds.
//!
//! Splitting `[n]` into blocks with sizes `nu_i n` and asking each member to
//! meet block `i` in `rho_share_i n` points turns an `s`-avoiding family into
//! a subset of a product with no orthogonal path, where each coordinate is a
//! Frankl-Wilson graph with a prime `r_i - s_i`. The bound is
//!
//! ```text
//! |F| <= binom(n, r) * sum_i delta(rho_i, sigma_i)^{nu_i n}
//! ```
//!
//! and the sum is governed by its slowest-decaying term, so rates use the
//! maximum over blocks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::prime_split::{self, is_prime, PrimeSplit};
use crate::rates::{self, entropy, GrowthRate, PrimeClass};
use crate::simplex_opt::{nelder_mead, NelderMeadOptions};

pub const SUM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanBlock {
    pub nu: f64,
    pub rho_share: f64,
    pub sigma_share: f64,
}

impl PlanBlock {
    pub fn local_rho(&self) -> f64 {
        self.rho_share / self.nu
    }

    pub fn local_sigma(&self) -> f64 {
        self.sigma_share / self.nu
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionPlan {
    pub blocks: Vec<PlanBlock>,
}

impl PartitionPlan {
    /// `k` equal blocks with equal local parameters.
    pub fn symmetric(rho: f64, sigma: f64, k: usize) -> Self {
        let kf = k as f64;
        Self {
            blocks: vec![PlanBlock { nu: 1.0 / kf, rho_share: rho / kf, sigma_share: sigma / kf }; k],
        }
    }

    /// Scales the `rho` and `sigma` shares so they sum exactly to the targets,
    /// keeping their proportions. Useful for plans quoted to a few decimals.
    pub fn rescaled(&self, rho: f64, sigma: f64) -> Self {
        let (cr, cs) = (rho / self.rho(), sigma / self.sigma());
        let nu_total: f64 = self.blocks.iter().map(|b| b.nu).sum();
        Self {
            blocks: self
                .blocks
                .iter()
                .map(|b| PlanBlock { nu: b.nu / nu_total, rho_share: b.rho_share * cr, sigma_share: b.sigma_share * cs })
                .collect(),
        }
    }

    pub fn rho(&self) -> f64 {
        self.blocks.iter().map(|b| b.rho_share).sum()
    }

    pub fn sigma(&self) -> f64 {
        self.blocks.iter().map(|b| b.sigma_share).sum()
    }

    fn check_sums(&self, rho: f64) -> Result<()> {
        if self.blocks.is_empty() {
            return domain("a plan needs at least one block");
        }
        for (i, b) in self.blocks.iter().enumerate() {
            if !(b.nu > 0.0 && b.rho_share > 0.0 && b.sigma_share > 0.0) {
                return domain(format!("block {i} has a non-positive entry: {b:?}"));
            }
        }
        let nu: f64 = self.blocks.iter().map(|b| b.nu).sum();
        if (nu - 1.0).abs() > SUM_TOL {
            return domain(format!("block sizes sum to {nu}, not 1"));
        }
        if (self.rho() - rho).abs() > SUM_TOL {
            return domain(format!("rho shares sum to {}, not {rho}", self.rho()));
        }
        Ok(())
    }
}

/// `nu_i * ln delta(rho_i, sigma_i)` for each block, complementing blocks
/// with `rho_i > 1/2` first.
pub fn block_log_rates(plan: &PartitionPlan, rho: f64) -> Result<Vec<f64>> {
    plan.check_sums(rho)?;
    plan.blocks
        .iter()
        .enumerate()
        .map(|(i, b)| {
            rates::reduced_log_delta(b.local_rho(), b.local_sigma())
                .map(|ld| b.nu * ld)
                .map_err(|e| Error::Domain(format!("block {i} ({b:?}): {e}")))
        })
        .collect()
}

/// `exp(H(rho)) * max_i delta(rho_i, sigma_i)^{nu_i}`.
pub fn plan_rate(plan: &PartitionPlan, rho: f64) -> Result<GrowthRate> {
    let h = entropy(rho)?;
    let worst = block_log_rates(plan, rho)?.into_iter().fold(f64::NEG_INFINITY, f64::max);
    GrowthRate::from_log(h + worst)
}

/// `exp(H(rho)) * delta(rho, sigma)^{1/c}`.
pub fn forbidden_intersection_base(rho: f64, sigma: f64, class: PrimeClass) -> Result<GrowthRate> {
    let ld = rates::log_delta(rho, sigma)?;
    GrowthRate::from_log(rates::entropy_unchecked(rho) + ld / class.c() as f64)
}

/// Per-coordinate base over `[kn]` for families with no `k` sets pairwise
/// meeting in `2s + (k-2)r` points: `exp(H(rho)) * delta(rho, sigma)^{1/(kc)}`.
pub fn clique_base(rho: f64, sigma: f64, k: usize, class: PrimeClass) -> Result<GrowthRate> {
    if k < 3 {
        return domain(format!("cliques need k >= 3 (got {k})"));
    }
    let ld = rates::log_delta(rho, sigma)?;
    GrowthRate::from_log(rates::entropy_unchecked(rho) + ld / (k as f64 * class.c() as f64))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerSettings {
    pub starts: usize,
    pub tolerance: f64,
    pub max_iter: usize,
    /// Extra Nelder-Mead passes restarted from each local result.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        Self { starts: 64, tolerance: 1e-8, max_iter: 4_000, restarts: 3, seed: 0x5eed }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizedPlan {
    pub plan: PartitionPlan,
    pub rate: GrowthRate,
    pub symmetric_rate: GrowthRate,
    /// `symmetric - optimized` in log space; zero when nothing better was found.
    pub log_improvement: f64,
    pub evaluations: usize,
    pub settings: OptimizerSettings,
}

fn softmax_shares(x: &[f64], total: f64) -> Vec<f64> {
    let m = x.iter().copied().fold(0.0f64, f64::max);
    let weights: Vec<f64> = std::iter::once(0.0).chain(x.iter().copied()).map(|v| (v - m).exp()).collect();
    let z: f64 = weights.iter().sum();
    weights.iter().map(|w| total * w / z).collect()
}

fn decode(x: &[f64], rho: f64, sigma: f64, k: usize) -> PartitionPlan {
    let d = k - 1;
    let nu = softmax_shares(&x[..d], 1.0);
    let rs = softmax_shares(&x[d..2 * d], rho);
    let ss = softmax_shares(&x[2 * d..], sigma);
    PartitionPlan {
        blocks: (0..k)
            .map(|i| PlanBlock { nu: nu[i], rho_share: rs[i], sigma_share: ss[i] })
            .collect(),
    }
}

/// Minimizes [`plan_rate`] over `k`-block plans by multistart Nelder-Mead.
///
/// Block sizes, `rho` shares and `sigma` shares are each parameterized as
/// a softmax over `k - 1` free logits, so every decoded plan satisfies the
/// sum constraints; blocks that leave the rate domain score `+inf`. The
/// symmetric plan is always the first start, so the result is never worse
/// than it.
pub fn optimize_plan(rho: f64, sigma: f64, k: usize, settings: &OptimizerSettings) -> Result<OptimizedPlan> {
    if !(2..=8).contains(&k) {
        return domain(format!("block count must be between 2 and 8 (got {k})"));
    }
    rates::RateParams::new(rho, sigma, PrimeClass::PrimePower)?;
    let symmetric = PartitionPlan::symmetric(rho, sigma, k);
    let symmetric_rate = plan_rate(&symmetric, rho)?;
    let objective = |x: &[f64]| match plan_rate(&decode(x, rho, sigma, k), rho) {
        Ok(r) => r.log_base,
        Err(_) => f64::INFINITY,
    };
    let dims = 3 * (k - 1);
    let opts = NelderMeadOptions {
        initial_step: 0.5,
        f_tol: settings.tolerance,
        x_tol: settings.tolerance,
        max_iter: settings.max_iter,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let mut best_x = vec![0.0; dims];
    let mut best_f = objective(&best_x);
    let mut evaluations = 1;
    for start in 0..settings.starts.max(1) {
        let mut x: Vec<f64> = if start == 0 {
            vec![0.0; dims]
        } else {
            (0..dims).map(|_| rng.gen_range(-2.5..2.5)).collect()
        };
        // pull infeasible starts toward the symmetric point
        let mut pulls = 0;
        while !objective(&x).is_finite() && pulls < 12 {
            x.iter_mut().for_each(|v| *v *= 0.5);
            evaluations += 1;
            pulls += 1;
        }
        let mut fx = f64::INFINITY;
        for _ in 0..=settings.restarts {
            let r = nelder_mead(objective, &x, &opts);
            evaluations += r.evaluations;
            let stalled = fx - r.f <= settings.tolerance;
            x = r.x;
            fx = r.f;
            if stalled {
                break;
            }
        }
        if fx < best_f {
            best_f = fx;
            best_x = x;
        }
    }
    let plan = decode(&best_x, rho, sigma, k);
    let rate = plan_rate(&plan, rho)?;
    let (plan, rate) = if rate.log_base < symmetric_rate.log_base {
        (plan, rate)
    } else {
        (symmetric, symmetric_rate)
    };
    Ok(OptimizedPlan {
        log_improvement: symmetric_rate.log_base - rate.log_base,
        plan,
        rate,
        symmetric_rate,
        evaluations,
        settings: settings.clone(),
    })
}

/// Integer realization of a three-block plan at a concrete `n`, with the
/// prime differences `r_i - s_i` found by [`prime_split::proportional_prime_split`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanCertificate {
    pub n: u64,
    pub r: u64,
    pub s: u64,
    pub block_sizes: Vec<u64>,
    pub block_r: Vec<u64>,
    pub block_s: Vec<u64>,
    pub primes: PrimeSplit,
    /// Largest `|r_i - s_i - aim_i|` over blocks.
    pub prime_deviation: f64,
}

pub fn plan_certificate(plan: &PartitionPlan, n: u64) -> Result<PlanCertificate> {
    if plan.blocks.len() != 3 {
        return domain("finite certificates are available for three-block plans only");
    }
    let rho = plan.rho();
    let sigma = plan.sigma();
    plan.check_sums(rho)?;
    let nf = n as f64;
    let r = (rho * nf).round() as u64;
    let s = (sigma * nf).round() as u64;
    if r <= s || (r - s) % 2 == 0 {
        return domain(format!("r - s = {} must be positive and odd at n = {n}", r as i64 - s as i64));
    }
    let mut block_sizes: Vec<u64> = plan.blocks[..2].iter().map(|b| (b.nu * nf).round() as u64).collect();
    let mut block_r: Vec<u64> = plan.blocks[..2].iter().map(|b| (b.rho_share * nf).round() as u64).collect();
    let used_n: u64 = block_sizes.iter().sum();
    let used_r: u64 = block_r.iter().sum();
    if used_n >= n || used_r >= r {
        return domain(format!("n = {n} is too small to realize the plan"));
    }
    block_sizes.push(n - used_n);
    block_r.push(r - used_r);
    let diff = r - s;
    let weights: Vec<f64> = plan.blocks.iter().map(|b| (b.rho_share - b.sigma_share) / (rho - sigma)).collect();
    let primes = prime_split::proportional_prime_split(diff, &weights)?;
    let mut block_s = Vec::with_capacity(3);
    for i in 0..3 {
        let p = primes.parts[i];
        if p > block_r[i] || block_r[i] > block_sizes[i] {
            return Err(Error::Infeasible(format!(
                "block {i}: prime {p} exceeds r_i = {} (or r_i > n_i) at n = {n}",
                block_r[i]
            )));
        }
        block_s.push(block_r[i] - p);
    }
    debug_assert!(primes.parts.iter().all(|&p| is_prime(p)));
    Ok(PlanCertificate {
        n,
        r,
        s,
        block_sizes,
        block_r,
        block_s,
        prime_deviation: primes.deviation,
        primes,
    })
}

/// One reduction in the weak-sunflower argument and what it costs per `n`
/// in log space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainStep {
    pub name: String,
    pub description: String,
    /// Change of the log-base; polynomial factors contribute `0`.
    pub log_rate_cost: f64,
    /// The factor is polynomial in `n` and disappears into the `o(1)` term.
    pub polynomial: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteChain {
    /// `n` rounded up to a multiple of `2k`.
    pub n: u64,
    pub block_n: u64,
    pub block_r: u64,
    /// Largest prime below `(2 - sqrt 2)/4 * n/k`.
    pub p: u64,
    pub s: u64,
    /// `n/2 - 2p`, equal to `2s + (k-2) n/(2k)`.
    pub forbidden_intersection: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SunflowerChain {
    pub k: usize,
    pub block_rho: f64,
    pub block_sigma: f64,
    pub class: PrimeClass,
    pub steps: Vec<ChainStep>,
    pub rate: GrowthRate,
    pub finite: Option<FiniteChain>,
}

/// The reduction from a weak-sunflower-free family to a clique-free
/// uniform family, with the rate each step costs.
///
/// The family is made uniform, shifted by a symmetric difference onto the
/// middle layer, and then cut into `k` blocks of size `n/k` where each set
/// meets every block in `n/2k` points. Pairwise intersections of
/// `n/2 - 2p` are forbidden, which is the clique condition with block
/// parameters `rho = 1/2`, `sigma = sqrt 2 / 4` and a prime difference `p`.
pub fn sunflower_chain(k: usize, n: Option<u64>) -> Result<SunflowerChain> {
    if k < 3 {
        return domain(format!("weak sunflowers need k >= 3 (got {k})"));
    }
    let block_rho = 0.5;
    let block_sigma = 2f64.sqrt() / 4.0;
    let class = PrimeClass::PrimePower;
    let log_delta = rates::log_delta(block_rho, block_sigma)?;
    let kf = k as f64;
    let steps = vec![
        ChainStep {
            name: "uniformize".into(),
            description: "keep the most populous layer |F| = r; loses at most a factor n + 1".into(),
            log_rate_cost: 0.0,
            polynomial: true,
        },
        ChainStep {
            name: "pad".into(),
            description: format!("embed [n] into [n'] with n' the next multiple of 2k = {}", 2 * k),
            log_rate_cost: 0.0,
            polynomial: true,
        },
        ChainStep {
            name: "shift".into(),
            description: "F' = {F xor G} restricted to the middle layer; |F'| 2^n >= |F| binom(n, n/2)".into(),
            log_rate_cost: 0.0,
            polynomial: true,
        },
        ChainStep {
            name: "prime".into(),
            description: "p = largest prime below (2 - sqrt 2)/4 * n/k, s = n/2k - p ~ (sqrt 2/4) n/k; \
                          the middle-layer family avoids k sets pairwise meeting in n/2 - 2p = 2s + (k-2) n/2k"
                .into(),
            log_rate_cost: 0.0,
            polynomial: false,
        },
        ChainStep {
            name: "clique".into(),
            description: "k blocks of size n/k, r = n/2k, prime difference: |F'| <= binom(n, n/2) delta(1/2, sqrt 2/4)^{n/k}"
                .into(),
            log_rate_cost: log_delta / kf,
            polynomial: false,
        },
    ];
    let base = clique_base(block_rho, block_sigma, k, class)?;
    let rate = base;

    let finite = match n {
        None => None,
        Some(n) => Some(finite_chain(k, n)?),
    };
    Ok(SunflowerChain { k, block_rho, block_sigma, class, steps, rate, finite })
}

fn finite_chain(k: usize, n: u64) -> Result<FiniteChain> {
    let k64 = k as u64;
    let step = 2 * k64;
    let n = n.div_ceil(step).max(1) * step;
    let block_n = n / k64;
    let block_r = block_n / 2;
    let limit = (2.0 - 2f64.sqrt()) / 4.0 * block_n as f64;
    let mut p = limit.ceil() as u64;
    if p as f64 >= limit {
        p = p.saturating_sub(1);
    }
    while p >= 2 && !is_prime(p) {
        p -= 1;
    }
    if p < 2 {
        return Err(Error::Infeasible(format!("no prime below {limit:.3} at n = {n}, k = {k}")));
    }
    let s = block_r - p;
    let forbidden_intersection = n / 2 - 2 * p;
    if forbidden_intersection != 2 * s + (k64 - 2) * block_r {
        return Err(Error::Certification("intersection bookkeeping does not balance".into()));
    }
    Ok(FiniteChain { n, block_n, block_r, p, s, forbidden_intersection })
}

/// True when `c` is one of the proven classes, i.e. not the conjectural `c = 2`.
pub fn is_proven(class: PrimeClass) -> bool {
    !class.is_hypothetical()
}
