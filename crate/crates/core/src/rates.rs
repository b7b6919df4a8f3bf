//! Entropy and the forbidden-intersection rate function.
//!
//! For an `s`-avoiding family of `r`-subsets of `[n]` with `r ~ rho*n` and
//! `s ~ sigma*n`, `r - s` a prime power, the family is at most
//! `binom(n, r) * (delta(rho, sigma) + o(1))^n`. Everything here works with
//! natural logarithms; bases are exponentiated only for presentation.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Slack used when classifying parameters against the boundary of a domain.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// A per-dimension exponential base `exp(log_base)`. The `o(1)` corrections
/// of the asymptotic statements are not modeled.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct GrowthRate {
    pub log_base: f64,
}

impl GrowthRate {
    pub fn from_log(log_base: f64) -> Result<Self> {
        if !log_base.is_finite() {
            return domain(format!("log base {log_base} is not finite"));
        }
        Ok(Self { log_base })
    }

    pub fn from_base(base: f64) -> Result<Self> {
        if !(base > 0.0) || !base.is_finite() {
            return domain(format!("base {base} must be positive and finite"));
        }
        Ok(Self { log_base: base.ln() })
    }

    pub fn base(self) -> f64 {
        self.log_base.exp()
    }

    /// `base^power`, i.e. the rate of `n * power` dimensions per `n`.
    pub fn pow(self, power: f64) -> Self {
        Self { log_base: self.log_base * power }
    }

    pub fn times(self, other: Self) -> Self {
        Self { log_base: self.log_base + other.log_base }
    }
}

/// Which arithmetic condition `r - s` satisfies; it fixes how many primes
/// the difference must be split into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PrimeClass {
    /// `r - s` is a prime or a prime power (`c = 1`).
    PrimePower,
    /// `r - s` is odd (`c = 3`).
    Odd,
    /// `r - s` is even (`c = 4`).
    Even,
    /// Even `r - s` under the unproved two-prime strengthening (`c = 2`).
    /// Only reachable through explicitly hypothetical entry points.
    HypotheticalEven,
}

impl PrimeClass {
    pub fn c(self) -> u32 {
        match self {
            PrimeClass::PrimePower => 1,
            PrimeClass::HypotheticalEven => 2,
            PrimeClass::Odd => 3,
            PrimeClass::Even => 4,
        }
    }

    /// Parses the proven classes `1`, `3`, `4`.
    pub fn from_c(c: u32) -> Result<Self> {
        match c {
            1 => Ok(PrimeClass::PrimePower),
            3 => Ok(PrimeClass::Odd),
            4 => Ok(PrimeClass::Even),
            2 => domain("c = 2 is conjectural; use the hypothetical mode explicitly"),
            other => domain(format!("c must be one of 1, 3, 4 (got {other})")),
        }
    }

    pub fn is_hypothetical(self) -> bool {
        self == PrimeClass::HypotheticalEven
    }
}

/// Limiting proportions `r/n -> rho`, `s/n -> sigma` plus the prime class of `r - s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateParams {
    pub rho: f64,
    pub sigma: f64,
    pub class: PrimeClass,
}

impl RateParams {
    pub fn new(rho: f64, sigma: f64, class: PrimeClass) -> Result<Self> {
        check_canonical(rho, sigma)?;
        Ok(Self { rho, sigma, class })
    }

    pub fn delta(&self) -> f64 {
        delta_unchecked(self.rho, self.sigma)
    }
}

/// `H(x) = -x ln x - (1-x) ln(1-x)`, with `H(0) = H(1) = 0`.
pub fn entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return domain(format!("entropy argument {x} outside [0, 1]"));
    }
    Ok(entropy_unchecked(x))
}

pub(crate) fn entropy_unchecked(x: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.ln() };
    term(x) + term(1.0 - x)
}

fn check_canonical(rho: f64, sigma: f64) -> Result<()> {
    if !(rho.is_finite() && sigma.is_finite()) {
        return domain("rho and sigma must be finite");
    }
    if sigma <= BOUNDARY_TOL || sigma >= rho - BOUNDARY_TOL || rho > 0.5 + BOUNDARY_TOL {
        return domain(format!(
            "(rho, sigma) = ({rho}, {sigma}) outside 0 < sigma < rho <= 1/2"
        ));
    }
    Ok(())
}

/// The rate `delta(rho, sigma)`: `exp{H(rho-sigma) - H(rho)}` below the
/// switch `sigma = rho/2`, `exp{H(rho-sigma) - H(2rho-2sigma)}` from it on.
pub fn delta(rho: f64, sigma: f64) -> Result<f64> {
    check_canonical(rho, sigma)?;
    Ok(delta_unchecked(rho, sigma))
}

pub fn log_delta(rho: f64, sigma: f64) -> Result<f64> {
    check_canonical(rho, sigma)?;
    Ok(log_delta_unchecked(rho, sigma))
}

fn log_delta_unchecked(rho: f64, sigma: f64) -> f64 {
    let rho = rho.min(0.5);
    if sigma < rho / 2.0 {
        entropy_unchecked(rho - sigma) - entropy_unchecked(rho)
    } else {
        entropy_unchecked(rho - sigma) - entropy_unchecked(2.0 * rho - 2.0 * sigma)
    }
}

fn delta_unchecked(rho: f64, sigma: f64) -> f64 {
    log_delta_unchecked(rho, sigma).exp()
}

/// Replaces every set by its complement: an `s`-avoiding family of
/// `r`-sets is an `(n - 2r + s)`-avoiding family of `(n - r)`-sets.
/// The map is an involution.
pub fn complement_params(rho: f64, sigma: f64) -> Result<(f64, f64)> {
    if !(0.0 < sigma && sigma < rho && rho < 1.0) {
        return domain(format!(
            "(rho, sigma) = ({rho}, {sigma}) outside 0 < sigma < rho < 1"
        ));
    }
    let sigma_c = 1.0 - 2.0 * rho + sigma;
    if sigma_c <= BOUNDARY_TOL {
        return domain(format!(
            "complement of ({rho}, {sigma}) is degenerate: sigma' = {sigma_c} <= 0"
        ));
    }
    Ok((1.0 - rho, sigma_c))
}

/// Brings `(rho, sigma)` into `rho <= 1/2` by complementation when needed,
/// then evaluates `ln delta`.
pub fn reduced_log_delta(rho: f64, sigma: f64) -> Result<f64> {
    let (r, s) = if rho > 0.5 + BOUNDARY_TOL {
        complement_params(rho, sigma)?
    } else {
        (rho, sigma)
    };
    log_delta(r, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn entropy_values() {
        assert_eq!(entropy(0.0).unwrap(), 0.0);
        assert_eq!(entropy(1.0).unwrap(), 0.0);
        assert!((entropy(0.5).unwrap() - std::f64::consts::LN_2).abs() < 1e-15);
        // -(1/4)ln(1/4) - (3/4)ln(3/4)
        assert!((entropy(0.25).unwrap() - 0.562_335_144_618_808_4).abs() < 1e-14);
        assert!(matches!(entropy(-0.1), Err(crate::Error::Domain(_))));
        assert!(entropy(1.5).is_err());
    }

    #[test]
    fn delta_centered_case() {
        let d = delta(0.5, 0.25).unwrap();
        assert!((d - 0.877_382_675_301_661_6).abs() < 1e-12);
        assert!((2.0 * d - 1.755).abs() < 5e-4);
    }

    #[test]
    fn delta_at_sunflower_parameters_is_inverse_psi() {
        let d = delta(0.5, 2f64.sqrt() / 4.0).unwrap();
        assert!((d - 2.0 / (1.0 + 2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn delta_continuous_across_branch_switch() {
        let lo = delta(0.5, 0.25 - 1e-9).unwrap();
        let hi = delta(0.5, 0.25 + 1e-9).unwrap();
        assert!((lo - hi).abs() < 1e-6);
    }

    #[test]
    fn delta_rejects_outside_region() {
        for (r, s) in [(0.6, 0.2), (0.4, 0.4), (0.4, 0.0), (0.4, -0.1), (0.3, 0.5)] {
            assert!(delta(r, s).is_err(), "({r}, {s})");
        }
    }

    #[test]
    fn complement_examples() {
        let (r, s) = complement_params(0.5487, 0.3363).unwrap();
        assert!((r - 0.4513).abs() < 1e-12);
        assert!((s - 0.2389).abs() < 1e-12);
        assert_eq!(complement_params(0.5, 0.25).unwrap(), (0.5, 0.25));
        // sigma' = 1 - 1.8 + 0.7 = -0.1
        assert!(complement_params(0.9, 0.7).is_err());
    }

    #[test]
    fn delta_below_one_on_grid() {
        for i in 1..=100 {
            let rho = 0.5 * i as f64 / 100.0;
            for j in 1..100 {
                let sigma = rho * j as f64 / 100.0;
                if let Ok(d) = delta(rho, sigma) {
                    assert!(d < 1.0 && d > 0.0, "delta({rho}, {sigma}) = {d}");
                }
            }
        }
    }

    #[test]
    fn prime_class_parsing() {
        assert_eq!(PrimeClass::from_c(3).unwrap().c(), 3);
        assert!(PrimeClass::from_c(2).is_err());
        assert!(PrimeClass::from_c(5).is_err());
    }

    proptest! {
        #[test]
        fn entropy_concave_and_symmetric(a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
            let mid = entropy((a + b) / 2.0).unwrap();
            prop_assert!(mid + 1e-12 >= (entropy(a).unwrap() + entropy(b).unwrap()) / 2.0);
            prop_assert!((entropy(a).unwrap() - entropy(1.0 - a).unwrap()).abs() < 1e-12);
        }

        #[test]
        fn branches_agree_at_switch(rho in 0.01f64..=0.5) {
            let h = |x: f64| entropy(x).unwrap();
            let s = rho / 2.0;
            let below = h(rho - s) - h(rho);
            let above = h(rho - s) - h(2.0 * rho - 2.0 * s);
            prop_assert!((below - above).abs() < 1e-12);
            prop_assert!((log_delta(rho, s).unwrap() - below).abs() < 1e-12);
        }

        #[test]
        fn complement_is_involution(rho in 0.05f64..0.95, t in 0.05f64..0.95) {
            let sigma = rho * t;
            if let Ok((r2, s2)) = complement_params(rho, sigma) {
                let (r3, s3) = complement_params(r2, s2).unwrap();
                prop_assert!((r3 - rho).abs() < 1e-12 && (s3 - sigma).abs() < 1e-12);
            }
        }
    }
}
