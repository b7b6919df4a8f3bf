//! Exact set-family machinery on ground sets of at most 24 points.
//!
//! Sets are `u32` bitmasks with bit `i` standing for element `i` of `[n]`.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, usage, Error, Result};

pub const MAX_GROUND: usize = 24;
/// Largest number of `k`-subsets of members the weak-sunflower search enumerates.
pub const SUNFLOWER_CAPACITY: u128 = 10_000_000;
pub const EXHAUSTIVE_PARTITION_GROUND: usize = 12;
/// Ordered partitions enumerated at most in exhaustive mode.
pub const PARTITION_CAPACITY: u128 = 5_000_000;
pub const DEFAULT_PARTITION_SEED: u64 = 0x00c0_ffee;
pub const DEFAULT_PARTITION_TRIALS: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetFamily {
    n: usize,
    members: Vec<u32>,
    uniformity: Option<u32>,
}

fn ground_mask(n: usize) -> u32 {
    if n == 32 { u32::MAX } else { (1u32 << n) - 1 }
}

impl SetFamily {
    pub fn new(n: usize, members: Vec<u32>) -> Result<Self> {
        if n > MAX_GROUND {
            return usage(format!("ground set of size {n} exceeds {MAX_GROUND}"));
        }
        let mask = ground_mask(n);
        let mut seen = BTreeSet::new();
        for &m in &members {
            if m & !mask != 0 {
                return usage(format!("member {m:#x} is not a subset of [{n}]"));
            }
            if !seen.insert(m) {
                return usage(format!("member {m:#x} appears twice"));
            }
        }
        let uniformity = match members.first() {
            Some(first) if members.iter().all(|m| m.count_ones() == first.count_ones()) => Some(first.count_ones()),
            _ => None,
        };
        Ok(Self { n, members, uniformity })
    }

    pub fn from_sets(n: usize, sets: &[&[usize]]) -> Result<Self> {
        let mut members = Vec::with_capacity(sets.len());
        for s in sets {
            let mut m = 0u32;
            for &x in *s {
                if x >= n {
                    return usage(format!("element {x} is outside [{n}]"));
                }
                m |= 1 << x;
            }
            members.push(m);
        }
        Self::new(n, members)
    }

    /// `m` distinct `r`-subsets of `[n]` drawn uniformly.
    pub fn random_uniform(rng: &mut impl Rng, n: usize, r: usize, m: usize) -> Result<Self> {
        if n > MAX_GROUND || r > n {
            return usage(format!("cannot draw {r}-subsets of [{n}]"));
        }
        if (m as u128) > binomial(n as u64, r as u64) {
            return usage(format!("[{n}] has fewer than {m} subsets of size {r}"));
        }
        let mut points: Vec<usize> = (0..n).collect();
        let mut members = BTreeSet::new();
        while members.len() < m {
            points.shuffle(rng);
            members.insert(points[..r].iter().fold(0u32, |acc, &x| acc | 1 << x));
        }
        Self::new(n, members.into_iter().collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Common member size, or `None` for mixed sizes and for the empty family.
    pub fn uniformity(&self) -> Option<u32> {
        self.uniformity
    }

    pub fn complements(&self) -> Self {
        let mask = ground_mask(self.n);
        Self::new(self.n, self.members.iter().map(|m| !m & mask).collect()).expect("complements stay distinct")
    }
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn factorial(n: u64) -> u128 {
    (1..=n as u128).product()
}

/// Indices of `k` members whose pairwise intersections all have one size.
///
/// The search is exhaustive and returns the lexicographically smallest
/// index tuple.
pub fn find_weak_sunflower(f: &SetFamily, k: usize) -> Result<Option<Vec<usize>>> {
    if k < 3 {
        return domain(format!("weak sunflowers need k >= 3 (got {k})"));
    }
    let m = f.len();
    if binomial(m as u64, k as u64) > SUNFLOWER_CAPACITY {
        return Err(Error::Capacity(format!(
            "{m} members choose {k} exceeds {SUNFLOWER_CAPACITY} candidate tuples"
        )));
    }
    let sets = f.members();
    let mut chosen = Vec::with_capacity(k);
    fn extend(sets: &[u32], k: usize, start: usize, size: Option<u32>, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == k {
            return true;
        }
        let need = k - chosen.len();
        for i in start..sets.len() {
            if sets.len() - i < need {
                break;
            }
            let mut common = size;
            let fits = chosen.iter().all(|&j| {
                let c = (sets[i] & sets[j]).count_ones();
                match common {
                    None => {
                        common = Some(c);
                        true
                    }
                    Some(x) => x == c,
                }
            });
            if !fits {
                continue;
            }
            chosen.push(i);
            if extend(sets, k, i + 1, common, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    Ok(extend(sets, k, 0, None, &mut chosen).then_some(chosen))
}

/// True iff no two distinct members meet in exactly `s` points.
pub fn is_s_avoiding(f: &SetFamily, s: u32) -> Result<bool> {
    if f.uniformity().is_none() && !f.is_empty() {
        return usage("s-avoidance is defined for uniform families");
    }
    let sets = f.members();
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            if (a & b).count_ones() == s {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftResult {
    pub family: SetFamily,
    /// For each member of `family`, the index of the member it came from.
    pub preimages: Vec<usize>,
}

/// `{F xor g}` restricted to sets of size `half`, after checking
/// `2|A & B| - 2|(A^g) & (B^g)| = |A| + |B| - |A^g| - |B^g|` on every pair.
pub fn symdiff_shift(f: &SetFamily, g: u32, half: u32) -> Result<ShiftResult> {
    if g & !ground_mask(f.n()) != 0 {
        return usage(format!("shift {g:#x} is not a subset of [{}]", f.n()));
    }
    if half as usize > f.n() {
        return usage(format!("target size {half} exceeds n = {}", f.n()));
    }
    let sets = f.members();
    let pc = |x: u32| x.count_ones() as i64;
    for (i, &a) in sets.iter().enumerate() {
        for &b in &sets[i + 1..] {
            let lhs = 2 * pc(a & b) - 2 * pc((a ^ g) & (b ^ g));
            let rhs = pc(a) + pc(b) - pc(a ^ g) - pc(b ^ g);
            if lhs != rhs {
                return Err(Error::Certification(format!(
                    "shift identity fails for {a:#x}, {b:#x} with g = {g:#x}: {lhs} != {rhs}"
                )));
            }
        }
    }
    let (preimages, shifted): (Vec<usize>, Vec<u32>) = sets
        .iter()
        .enumerate()
        .map(|(i, &a)| (i, a ^ g))
        .filter(|&(_, x)| x.count_ones() == half)
        .unzip();
    Ok(ShiftResult { family: SetFamily::new(f.n(), shifted)?, preimages })
}

/// The most populous layer of `f`; ties go to the smaller size.
pub fn largest_uniform_layer(f: &SetFamily) -> SetFamily {
    let mut counts = [0usize; MAX_GROUND + 1];
    for m in f.members() {
        counts[m.count_ones() as usize] += 1;
    }
    let best = (0..=f.n()).max_by_key(|&r| (counts[r], std::cmp::Reverse(r))).unwrap_or(0);
    let layer = f.members().iter().copied().filter(|m| m.count_ones() as usize == best).collect();
    SetFamily::new(f.n(), layer).expect("a sub-family of a valid family")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionMode {
    Exhaustive,
    Randomized { seed: u64, trials: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionChoice {
    /// Block `i` as a bitmask of `[n]`.
    pub blocks: Vec<u32>,
    pub subfamily: SetFamily,
    /// `|F| * prod binom(n_i, r_i)`.
    pub required: u128,
    /// `|F'| * binom(n, r)`.
    pub achieved: u128,
    pub mode: PartitionMode,
    pub partitions_examined: u64,
}

fn check_partition_shape(f: &SetFamily, sizes: &[usize], shares: &[usize]) -> Result<u32> {
    if sizes.is_empty() || sizes.len() != shares.len() {
        return usage(format!("{} block sizes but {} shares", sizes.len(), shares.len()));
    }
    if sizes.iter().sum::<usize>() != f.n() {
        return usage(format!("block sizes sum to {}, not n = {}", sizes.iter().sum::<usize>(), f.n()));
    }
    let r = match f.uniformity() {
        Some(r) => r,
        None if f.is_empty() => shares.iter().sum::<usize>() as u32,
        None => return usage("partitions are chosen for uniform families"),
    };
    if shares.iter().sum::<usize>() != r as usize {
        return usage(format!("shares sum to {}, not r = {r}", shares.iter().sum::<usize>()));
    }
    if let Some(i) = (0..sizes.len()).find(|&i| shares[i] > sizes[i]) {
        return usage(format!("block {i} has share {} above its size {}", shares[i], sizes[i]));
    }
    Ok(r)
}

fn kept(f: &SetFamily, blocks: &[u32], shares: &[usize]) -> Vec<u32> {
    f.members()
        .iter()
        .copied()
        .filter(|m| blocks.iter().zip(shares).all(|(b, &s)| (m & b).count_ones() as usize == s))
        .collect()
}

fn for_each_partition(free: u32, sizes: &[usize], acc: &mut Vec<u32>, visit: &mut impl FnMut(&[u32])) {
    let Some((&size, rest)) = sizes.split_first() else {
        visit(acc);
        return;
    };
    let points: Vec<u32> = (0..32).filter(|i| free >> i & 1 == 1).collect();
    let mut pick = Vec::with_capacity(size);
    fn choose(
        points: &[u32],
        start: usize,
        size: usize,
        pick: &mut Vec<u32>,
        emit: &mut dyn FnMut(u32),
    ) {
        if pick.len() == size {
            emit(pick.iter().fold(0, |a, &p| a | 1 << p));
            return;
        }
        for i in start..points.len() {
            if points.len() - i < size - pick.len() {
                break;
            }
            pick.push(points[i]);
            choose(points, i + 1, size, pick, emit);
            pick.pop();
        }
    }
    choose(&points, 0, size, &mut pick, &mut |block| {
        acc.push(block);
        for_each_partition(free & !block, rest, acc, visit);
        acc.pop();
    });
}

fn partition_count(sizes: &[usize]) -> u128 {
    let mut left = sizes.iter().sum::<usize>() as u64;
    let mut total: u128 = 1;
    for &s in sizes {
        total = total.saturating_mul(binomial(left, s as u64));
        left -= s as u64;
    }
    total
}

/// A partition `[n] = N_1 + ... + N_k` with `|N_i| = sizes[i]` whose
/// subfamily `{F : |F & N_i| = shares[i]}` meets the averaging bound
/// `|F'| binom(n, r) >= |F| prod binom(n_i, r_i)`.
///
/// Exhaustive mode (small `n` and few partitions) returns the partition
/// keeping the most members, first in enumeration order on ties. Otherwise
/// random partitions are drawn from a ChaCha stream with the given seed and
/// the best one is returned, or a search failure if none meets the bound.
pub fn best_partition(
    f: &SetFamily,
    sizes: &[usize],
    shares: &[usize],
    seed: u64,
    trials: usize,
) -> Result<PartitionChoice> {
    let r = check_partition_shape(f, sizes, shares)?;
    let n = f.n();
    let required = f.len() as u128
        * sizes.iter().zip(shares).map(|(&a, &b)| binomial(a as u64, b as u64)).product::<u128>();
    let total = binomial(n as u64, r as u64);
    let finish = |blocks: Vec<u32>, members: Vec<u32>, mode, examined| -> Result<PartitionChoice> {
        let achieved = members.len() as u128 * total;
        Ok(PartitionChoice {
            blocks,
            subfamily: SetFamily::new(n, members)?,
            required,
            achieved,
            mode,
            partitions_examined: examined,
        })
    };

    if n <= EXHAUSTIVE_PARTITION_GROUND && partition_count(sizes) <= PARTITION_CAPACITY {
        let mut best: Option<(Vec<u32>, Vec<u32>)> = None;
        let mut examined = 0u64;
        for_each_partition(ground_mask(n), sizes, &mut Vec::new(), &mut |blocks| {
            examined += 1;
            let members = kept(f, blocks, shares);
            if best.as_ref().map_or(true, |(_, b)| members.len() > b.len()) {
                best = Some((blocks.to_vec(), members));
            }
        });
        let (blocks, members) = best.expect("at least one partition exists");
        let choice = finish(blocks, members, PartitionMode::Exhaustive, examined)?;
        if choice.achieved < choice.required {
            return Err(Error::Certification(format!(
                "best of all partitions keeps {} members, below the averaging bound",
                choice.subfamily.len()
            )));
        }
        return Ok(choice);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<u32> = (0..n as u32).collect();
    let mut best: Option<(Vec<u32>, Vec<u32>)> = None;
    for _ in 0..trials {
        points.shuffle(&mut rng);
        let mut blocks = Vec::with_capacity(sizes.len());
        let mut at = 0;
        for &s in sizes {
            blocks.push(points[at..at + s].iter().fold(0u32, |a, &p| a | 1 << p));
            at += s;
        }
        let members = kept(f, &blocks, shares);
        if best.as_ref().map_or(true, |(_, b)| members.len() > b.len()) {
            best = Some((blocks, members));
        }
    }
    let mode = PartitionMode::Randomized { seed, trials };
    match best {
        Some((blocks, members)) if members.len() as u128 * total >= required => {
            finish(blocks, members, mode, trials as u64)
        }
        _ => Err(Error::SearchFailure(format!(
            "{trials} random partitions (seed {seed}) never met the averaging bound"
        ))),
    }
}

/// Sum of `|F'|` over every ordered partition, and the count each member
/// should contribute times `|F|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleCount {
    pub summed: u128,
    pub expected: u128,
    pub partitions: u128,
}

pub fn partition_double_count(f: &SetFamily, sizes: &[usize], shares: &[usize]) -> Result<DoubleCount> {
    let r = check_partition_shape(f, sizes, shares)? as u64;
    let partitions = partition_count(sizes);
    if partitions > PARTITION_CAPACITY {
        return Err(Error::Capacity(format!("{partitions} partitions exceed {PARTITION_CAPACITY}")));
    }
    let mut summed = 0u128;
    for_each_partition(ground_mask(f.n()), sizes, &mut Vec::new(), &mut |blocks| {
        summed += kept(f, blocks, shares).len() as u128;
    });
    let n = f.n() as u64;
    let per_member = factorial(r) / shares.iter().map(|&x| factorial(x as u64)).product::<u128>()
        * factorial(n - r)
        / sizes.iter().zip(shares).map(|(&a, &b)| factorial((a - b) as u64)).product::<u128>();
    Ok(DoubleCount { summed, expected: f.len() as u128 * per_member, partitions })
}

/// One block of an orthogonal star: two `r`-sets `w` and `u` of the
/// block universe meeting in `s` points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarBlock {
    pub w: BTreeSet<u64>,
    pub u: BTreeSet<u64>,
}

/// `F_0 = union of all w_i` and `F_j = F_0 - w_j + u_j`.
pub fn star_sets(blocks: &[StarBlock]) -> Vec<BTreeSet<u64>> {
    let base: BTreeSet<u64> = blocks.iter().flat_map(|b| b.w.iter().copied()).collect();
    let mut sets = vec![base.clone()];
    for b in blocks {
        let mut f: BTreeSet<u64> = base.difference(&b.w).copied().collect();
        f.extend(b.u.iter().copied());
        sets.push(f);
    }
    sets
}

/// Builds the star sets and checks that `F_1..F_k` pairwise meet in
/// exactly `2s + (k-2) r` points.
pub fn star_intersection_identity(blocks: &[StarBlock], r: usize) -> Result<bool> {
    let k = blocks.len();
    if k < 2 {
        return usage("a star needs at least two blocks");
    }
    let s = blocks[0].w.intersection(&blocks[0].u).count();
    let mut seen: BTreeSet<u64> = BTreeSet::new();
    for (i, b) in blocks.iter().enumerate() {
        if b.w.len() != r || b.u.len() != r {
            return usage(format!("block {i} sets have sizes {} and {}, not {r}", b.w.len(), b.u.len()));
        }
        if b.w.intersection(&b.u).count() != s {
            return usage(format!("block {i} overlap differs from block 0 overlap {s}"));
        }
        let universe: BTreeSet<u64> = b.w.union(&b.u).copied().collect();
        if !seen.is_disjoint(&universe) {
            return usage(format!("block {i} shares points with an earlier block"));
        }
        seen.extend(universe);
    }
    let sets = star_sets(blocks);
    let target = 2 * s + (k - 2) * r;
    Ok((1..=k).all(|a| (a + 1..=k).all(|b| sets[a].intersection(&sets[b]).count() == target)))
}

/// Family file: a header line `n=<int>` followed by one hexadecimal
/// bitmask per line. Blank lines and lines starting with `#` are skipped.
pub fn parse_family(text: &str) -> Result<SetFamily> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let Some((_, header)) = lines.next() else {
        return usage("family file is empty");
    };
    let n: usize = header
        .strip_prefix("n=")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| Error::Usage(format!("expected header `n=<int>`, found `{header}`")))?;
    let mut members = Vec::new();
    for (no, line) in lines {
        let digits = line.strip_prefix("0x").or_else(|| line.strip_prefix("0X")).unwrap_or(line);
        let m = u32::from_str_radix(digits, 16)
            .map_err(|e| Error::Usage(format!("line {}: `{line}` is not a hex bitmask ({e})", no + 1)))?;
        members.push(m);
    }
    SetFamily::new(n, members)
}

pub fn format_family(f: &SetFamily) -> String {
    let mut out = format!("n={}\n", f.n());
    for m in f.members() {
        out.push_str(&format!("{m:x}\n"));
    }
    out
}

/// Totals from [`fuzz_shift`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftFuzzReport {
    pub trials: usize,
    pub pairs_checked: u64,
    pub identity_violations: usize,
    pub sunflower_checks: usize,
    /// Shifted triples that are weak sunflowers while their preimages are not.
    pub sunflower_violations: usize,
}

/// Random families on even ground sets of at most `max_n` points, shifted
/// by random sets onto the middle layer. Every pair is checked against the
/// shift identity; small uniform families are also checked for weak
/// 3-sunflowers appearing only after the shift.
pub fn fuzz_shift(rng: &mut impl Rng, trials: usize, max_n: usize) -> Result<ShiftFuzzReport> {
    if !(2..=MAX_GROUND).contains(&max_n) {
        return usage(format!("max_n must lie in 2..={MAX_GROUND} (got {max_n})"));
    }
    let mut report = ShiftFuzzReport {
        trials,
        pairs_checked: 0,
        identity_violations: 0,
        sunflower_checks: 0,
        sunflower_violations: 0,
    };
    for _ in 0..trials {
        let n = 2 * rng.gen_range(1..=max_n / 2);
        let uniform = rng.gen_bool(0.5);
        let f = if uniform {
            let r = rng.gen_range(1..n);
            let m = (rng.gen_range(3..=12) as u128).min(binomial(n as u64, r as u64)) as usize;
            SetFamily::random_uniform(rng, n, r, m)?
        } else {
            let m = rng.gen_range(2..=24);
            let members: BTreeSet<u32> = (0..m).map(|_| rng.gen::<u32>() & ground_mask(n)).collect();
            SetFamily::new(n, members.into_iter().collect())?
        };
        let g = rng.gen::<u32>() & ground_mask(n);
        report.pairs_checked += (f.len() * f.len().saturating_sub(1) / 2) as u64;
        let shifted = match symdiff_shift(&f, g, (n / 2) as u32) {
            Ok(s) => s,
            Err(Error::Certification(_)) => {
                report.identity_violations += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        if uniform && shifted.family.len() >= 3 {
            report.sunflower_checks += 1;
            if let Some(idx) = find_weak_sunflower(&shifted.family, 3)? {
                let pre: Vec<u32> = idx.iter().map(|&i| f.members()[shifted.preimages[i]]).collect();
                if find_weak_sunflower(&SetFamily::new(n, pre)?, 3)?.is_none() {
                    report.sunflower_violations += 1;
                }
            }
        }
    }
    Ok(report)
}
