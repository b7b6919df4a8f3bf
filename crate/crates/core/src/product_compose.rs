//! Rate arithmetic for composing two super-Ramsey configurations as a
//! Cartesian product.
//!
//! With `V = V1(n1) x V2(n2)`, `n1 ~ (1-eta) n`, `n2 ~ eta n`, a copy-free
//! `W` satisfies
//!
//! ```text
//! |W| / |V| <= (1+eps2)^{-n2} + c2^{(m-1) n2} / (1+eps1)^{n1}
//! ```
//!
//! Both terms are tracked as per-`n` log-rates; the layer split is a real
//! proportion.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::rates::GrowthRate;

/// Parameters witnessing super-Ramsey-ness: `|V(n)| <= c^n`,
/// `|V| / alpha >= (1+eps)^n`, configuration size `m`.
///
/// `eps = 0` is accepted and stands for the trivial configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuperRamseyParams {
    pub c: f64,
    pub epsilon: f64,
    pub m: u32,
}

impl SuperRamseyParams {
    pub fn new(c: f64, epsilon: f64, m: u32) -> Result<Self> {
        if !(c >= 1.0) || !c.is_finite() {
            return domain(format!("size base c = {c} must be >= 1"));
        }
        if !(epsilon >= 0.0) || !epsilon.is_finite() {
            return domain(format!("ratio excess eps = {epsilon} must be >= 0"));
        }
        if m == 0 {
            return domain("configuration size m must be >= 1");
        }
        Ok(Self { c, epsilon, m })
    }

    pub fn ratio_log(&self) -> f64 {
        self.epsilon.ln_1p()
    }
}

/// `eta = ln(1+eps1) / ln((1+eps1)(1+eps2) c2^{m2-1})`.
pub fn optimal_eta(p1: &SuperRamseyParams, p2: &SuperRamseyParams) -> Result<f64> {
    let num = p1.ratio_log();
    let denom = num + p2.ratio_log() + (p2.m as f64 - 1.0) * p2.c.ln();
    if !(denom > 0.0) {
        return domain(format!("degenerate split: denominator {denom} <= 0"));
    }
    let eta = num / denom;
    if !(eta > 0.0) {
        return domain("eps1 = 0 leaves no room for the first factor (eta = 0)");
    }
    Ok(eta)
}

/// Per-`n` log-rates of the two summands bounding `|W|/|V|` at split `eta`.
pub fn summand_log_rates(p1: &SuperRamseyParams, p2: &SuperRamseyParams, eta: f64) -> (f64, f64) {
    let layer = -eta * p2.ratio_log();
    let copies = eta * (p2.m as f64 - 1.0) * p2.c.ln() - (1.0 - eta) * p1.ratio_log();
    (layer, copies)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Composition {
    pub eta: f64,
    /// `(1+eps2)^eta`, the guaranteed ratio base of the product.
    pub rate: GrowthRate,
    pub product: SuperRamseyParams,
    pub summand_log_rates: (f64, f64),
}

/// Composes `N1 x N2`. The product has size base `c1^{1-eta} c2^eta`,
/// ratio base `(1+eps2)^eta` and `m1 m2` points.
pub fn composed_rate(p1: &SuperRamseyParams, p2: &SuperRamseyParams) -> Result<Composition> {
    let eta = optimal_eta(p1, p2)?;
    let log_ratio = eta * p2.ratio_log();
    let log_c = (1.0 - eta) * p1.c.ln() + eta * p2.c.ln();
    let product = SuperRamseyParams {
        c: log_c.exp(),
        epsilon: log_ratio.exp_m1(),
        m: p1.m.saturating_mul(p2.m),
    };
    Ok(Composition {
        eta,
        rate: GrowthRate { log_base: log_ratio },
        product,
        summand_log_rates: summand_log_rates(p1, p2, eta),
    })
}

/// Ratio bases of the left-folded products `N, N x N, ..., N^k`.
///
/// This is what repeated product composition guarantees for a `k`-fold
/// power, to compare with the `base^{1/k}` obtained from tree-like
/// concatenation.
pub fn iterated_rates(p: &SuperRamseyParams, k: usize) -> Result<Vec<GrowthRate>> {
    let mut acc = *p;
    let mut out = vec![GrowthRate { log_base: p.ratio_log() }];
    for _ in 1..k {
        let comp = composed_rate(&acc, p)?;
        out.push(comp.rate);
        acc = comp.product;
    }
    Ok(out)
}
