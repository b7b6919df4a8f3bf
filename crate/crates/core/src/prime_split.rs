//! Deterministic primality and exact searches for sums of primes: three
//! near-equal primes for odd targets, four for even targets, and three in
//! prescribed proportions.
//!
//! The asymptotic existence results are replaced by finite searches that
//! either return the true optimum or say they failed.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Exact primality for every `u64` (Miller-Rabin with the first twelve
/// prime bases, which is deterministic below `3.3 * 10^24`).
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Primes summing to `target`, each compared against its share of it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrimeSplit {
    pub target: u64,
    pub parts: Vec<u64>,
    /// What each part was aiming for (`target / len`, or a proportion of it).
    pub aims: Vec<f64>,
    /// `max_i |parts[i] - aims[i]|`.
    pub deviation: f64,
}

impl PrimeSplit {
    fn new(target: u64, parts: Vec<u64>, aims: Vec<f64>) -> Self {
        let deviation = parts
            .iter()
            .zip(&aims)
            .map(|(&p, a)| (p as f64 - a).abs())
            .fold(0.0, f64::max);
        Self { target, parts, aims, deviation }
    }

    /// Sum and primality re-checked from scratch.
    pub fn is_consistent(&self) -> bool {
        self.parts.iter().sum::<u64>() == self.target && self.parts.iter().all(|&p| is_prime(p))
    }
}

/// Primes ordered by distance from `aim`, nearest first.
struct Outward {
    below: u64,
    above: u64,
    aim: f64,
    limit: u64,
}

impl Outward {
    fn new(aim: f64, limit: u64) -> Self {
        let start = aim.floor().max(0.0) as u64;
        Self { below: start, above: start + 1, aim, limit }
    }
}

impl Iterator for Outward {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            let down = (self.below >= 2).then_some(self.below);
            let up = (self.above <= self.limit).then_some(self.above);
            let take_down = match (down, up) {
                (None, None) => return None,
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (Some(d), Some(u)) => self.aim - d as f64 <= u as f64 - self.aim,
            };
            let p = if take_down {
                self.below -= 1;
                down.unwrap()
            } else {
                self.above += 1;
                up.unwrap()
            };
            if is_prime(p) {
                return Some(p);
            }
        }
    }
}

/// Exact minimizer of `max_i |p_i - aims[i]|` over ordered prime tuples
/// with `sum p_i = target`, ties broken by the lexicographically smallest
/// tuple.
///
/// Each slot's candidate primes are revealed in order of distance from its
/// aim. The first radius at which a full tuple exists is the optimum, and
/// every tuple at that radius is compared for the tie-break.
fn min_deviation_tuple(target: u64, aims: &[f64]) -> Option<Vec<u64>> {
    let k = aims.len();
    let mut streams: Vec<std::iter::Peekable<Outward>> =
        aims.iter().map(|&a| Outward::new(a, target).peekable()).collect();
    let mut revealed: Vec<Vec<u64>> = vec![Vec::new(); k];
    loop {
        // next radius: the nearest unrevealed prime over all slots
        let next = (0..k)
            .filter_map(|i| streams[i].peek().map(|&p| (i, (p as f64 - aims[i]).abs())))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        let Some((_, radius)) = next else {
            return None;
        };
        for i in 0..k {
            while let Some(&p) = streams[i].peek() {
                if (p as f64 - aims[i]).abs() <= radius {
                    revealed[i].push(p);
                    streams[i].next();
                } else {
                    break;
                }
            }
        }
        let mut best: Option<Vec<u64>> = None;
        let mut current = Vec::with_capacity(k);
        complete_tuples(&revealed, target, &mut current, &mut best);
        if best.is_some() {
            return best;
        }
    }
}

fn complete_tuples(revealed: &[Vec<u64>], remaining: u64, current: &mut Vec<u64>, best: &mut Option<Vec<u64>>) {
    let slot = current.len();
    if slot + 1 == revealed.len() {
        if revealed[slot].contains(&remaining) {
            current.push(remaining);
            if best.as_ref().map_or(true, |b| current.as_slice() < b.as_slice()) {
                *best = Some(current.clone());
            }
            current.pop();
        }
        return;
    }
    for &p in &revealed[slot] {
        if p < remaining {
            current.push(p);
            complete_tuples(revealed, remaining - p, current, best);
            current.pop();
        }
    }
}

/// Splits `target` into `parts` primes as close to `target / parts` as
/// possible: three primes for odd `target > 5`, four for even `target >= 8`.
/// The returned parts are sorted ascending.
pub fn near_equal_prime_split(target: u64, parts: usize) -> Result<PrimeSplit> {
    match parts {
        3 if target % 2 == 1 && target > 5 => {}
        3 => return domain(format!("three-prime splits need an odd target > 5 (got {target})")),
        4 if target % 2 == 0 && target >= 8 => {}
        4 => return domain(format!("four-prime splits need an even target >= 8 (got {target})")),
        other => return domain(format!("parts must be 3 or 4 (got {other})")),
    }
    let aim = target as f64 / parts as f64;
    let aims = vec![aim; parts];
    let mut tuple = min_deviation_tuple(target, &aims).ok_or_else(|| {
        Error::Infeasible(format!("no {parts} primes sum to {target}"))
    })?;
    tuple.sort_unstable();
    Ok(PrimeSplit::new(target, tuple, aims))
}

/// The four-prime construction for even targets spelled out: one prime
/// `head` near `target / 4` and the remainder split into three near-equal
/// primes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourPrimeRecipe {
    pub head: u64,
    pub rest: PrimeSplit,
}

/// Tries odd primes outward from `target / 4` until the odd remainder has a
/// three-prime split.
pub fn four_prime_recipe(target: u64) -> Result<FourPrimeRecipe> {
    if target % 2 == 1 || target < 8 {
        return domain(format!("the recipe needs an even target >= 8 (got {target})"));
    }
    for head in Outward::new(target as f64 / 4.0, target) {
        if head == 2 || head + 7 > target {
            continue;
        }
        if let Ok(rest) = near_equal_prime_split(target - head, 3) {
            return Ok(FourPrimeRecipe { head, rest });
        }
    }
    // only 8 = 2+2+2+2 has no odd head
    let split = near_equal_prime_split(target, 4)?;
    Ok(FourPrimeRecipe {
        head: split.parts[0],
        rest: PrimeSplit::new(target - split.parts[0], split.parts[1..].to_vec(), vec![(target - split.parts[0]) as f64 / 3.0; 3]),
    })
}

/// Three primes summing to the odd `target` with `p_i` as close as possible
/// to `proportions[i] * target`, in the order the proportions are given.
pub fn proportional_prime_split(target: u64, proportions: &[f64]) -> Result<PrimeSplit> {
    if proportions.len() != 3 {
        return domain(format!("expected 3 proportions, got {}", proportions.len()));
    }
    if proportions.iter().any(|p| !(*p > 0.0) || !p.is_finite()) {
        return domain("proportions must be positive");
    }
    let total: f64 = proportions.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return domain(format!("proportions sum to {total}, not 1"));
    }
    if target % 2 == 0 {
        return domain(format!("target {target} must be odd"));
    }
    let aims: Vec<f64> = proportions.iter().map(|p| p * target as f64).collect();
    let tuple = min_deviation_tuple(target, &aims)
        .ok_or_else(|| Error::Infeasible(format!("no three primes sum to {target}")))?;
    Ok(PrimeSplit::new(target, tuple, aims))
}

/// Two near-equal primes for an even target. Success for every even
/// target is the binary Goldbach conjecture, so a result here is empirical.
pub fn goldbach_pair_split(target: u64) -> Result<PrimeSplit> {
    if target % 2 == 1 || target < 4 {
        return domain(format!("pair splits need an even target >= 4 (got {target})"));
    }
    let aim = target as f64 / 2.0;
    let mut tuple = min_deviation_tuple(target, &[aim, aim])
        .ok_or_else(|| Error::Infeasible(format!("no two primes sum to {target}")))?;
    tuple.sort_unstable();
    Ok(PrimeSplit::new(target, tuple, vec![aim; 2]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2u64;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!((0..20_000).all(|n| is_prime(n) == trial_division(n)));
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime((1 << 61) + 1));
        // strong pseudoprime to bases 2..=37 except the last few; and a Carmichael number
        assert!(!is_prime(3_825_123_056_546_413_051));
        assert!(!is_prime(561));
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn mersenne_61_by_odd_trial_division() {
        // sqrt(2^61 - 1) < 2^31; odd divisors only
        let n: u64 = (1 << 61) - 1;
        let mut d = 3u64;
        let mut composite = false;
        while d * d <= n {
            if n % d == 0 {
                composite = true;
                break;
            }
            d += 2;
        }
        assert!(!composite);
    }

    #[test]
    fn three_way_examples() {
        let s = near_equal_prime_split(21, 3).unwrap();
        assert_eq!(s.parts, vec![7, 7, 7]);
        assert_eq!(s.deviation, 0.0);
        let s = near_equal_prime_split(35, 3).unwrap();
        assert_eq!(s.parts, vec![11, 11, 13]);
        assert!((s.deviation - 4.0 / 3.0).abs() < 1e-12);
        assert_eq!(near_equal_prime_split(7, 3).unwrap().parts, vec![2, 2, 3]);
    }

    #[test]
    fn four_way_examples() {
        let s = near_equal_prime_split(36, 4).unwrap();
        assert_eq!(s.parts, vec![7, 7, 11, 11]);
        assert_eq!(s.deviation, 2.0);
        assert_eq!(near_equal_prime_split(8, 4).unwrap().parts, vec![2, 2, 2, 2]);
        assert_eq!(near_equal_prime_split(10, 4).unwrap().parts, vec![2, 2, 3, 3]);
    }

    #[test]
    fn parity_checks() {
        assert!(near_equal_prime_split(36, 3).is_err());
        assert!(near_equal_prime_split(35, 4).is_err());
        assert!(near_equal_prime_split(5, 3).is_err());
        assert!(near_equal_prime_split(6, 4).is_err());
        assert!(near_equal_prime_split(35, 5).is_err());
    }

    #[test]
    fn recipe_shape() {
        for t in (8..400).step_by(2) {
            let r = four_prime_recipe(t).unwrap();
            assert!(is_prime(r.head));
            assert_eq!(r.head + r.rest.target, t);
            assert!(r.rest.is_consistent());
        }
        let r = four_prime_recipe(36).unwrap();
        assert_eq!(r.head, 7);
        assert_eq!(r.rest.parts, vec![7, 11, 11]);
    }

    fn brute_proportional(t: u64, props: &[f64]) -> (f64, Vec<u64>) {
        let primes: Vec<u64> = (2..t).filter(|&p| trial_division(p)).collect();
        let mut best: Option<(f64, Vec<u64>)> = None;
        for &a in &primes {
            for &b in &primes {
                if a + b >= t {
                    break;
                }
                let c = t - a - b;
                if !trial_division(c) {
                    continue;
                }
                let tuple = vec![a, b, c];
                let dev = tuple
                    .iter()
                    .zip(props)
                    .map(|(&p, q)| (p as f64 - q * t as f64).abs())
                    .fold(0.0, f64::max);
                let better = match &best {
                    None => true,
                    Some((d, tb)) => dev < *d - 1e-12 || ((dev - d).abs() <= 1e-12 && tuple < *tb),
                };
                if better {
                    best = Some((dev, tuple));
                }
            }
        }
        best.unwrap()
    }

    #[test]
    fn proportional_examples() {
        let third = 1.0 / 3.0;
        let s = proportional_prime_split(101, &[third, third, third]).unwrap();
        assert_eq!(s.parts, vec![29, 31, 41]);
        assert!((s.deviation - 22.0 / 3.0).abs() < 1e-9);
        for t in [351, 701, 1051] {
            let props = [0.857, 0.0715, 0.0715];
            let s = proportional_prime_split(t, &props).unwrap();
            let (dev, tuple) = brute_proportional(t, &props);
            assert!((s.deviation - dev).abs() < 1e-9);
            assert_eq!(s.parts, tuple);
        }
        assert_eq!(proportional_prime_split(351, &[0.857, 0.0715, 0.0715]).unwrap().parts, vec![293, 29, 29]);
    }

    #[test]
    fn proportional_permutation() {
        let a = proportional_prime_split(101, &[0.5, 1.0 / 3.0, 1.0 / 6.0]).unwrap();
        let b = proportional_prime_split(101, &[1.0 / 6.0, 0.5, 1.0 / 3.0]).unwrap();
        assert_eq!(a.parts, vec![53, 31, 17]);
        assert_eq!(b.parts, vec![17, 53, 31]);
    }

    #[test]
    fn proportional_errors() {
        assert!(matches!(proportional_prime_split(5, &[0.4, 0.3, 0.3]), Err(Error::Infeasible(_))));
        assert!(proportional_prime_split(100, &[0.4, 0.3, 0.3]).is_err());
        assert!(proportional_prime_split(101, &[0.5, 0.5]).is_err());
        assert!(proportional_prime_split(101, &[0.5, 0.4, 0.3]).is_err());
    }

    #[test]
    fn goldbach_pairs() {
        assert_eq!(goldbach_pair_split(4).unwrap().parts, vec![2, 2]);
        assert_eq!(goldbach_pair_split(100).unwrap().parts, vec![47, 53]);
        assert!((4..3000).step_by(2).all(|t| goldbach_pair_split(t).unwrap().is_consistent()));
    }
}
