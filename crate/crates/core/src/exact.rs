//! Exhaustive computation of `T(N, K)` for tiny instances.
//!
//! Only designs made of full permutations of `1..=N` are searched. That loses
//! nothing: appending the missing items to the end of a test never changes
//! which member of a defective set comes first when some member was already
//! present, and can only add detections otherwise, so every feasible design
//! extends to a feasible permutation design of the same size.
//!
//! With symmetry pruning on, the first test is fixed to the identity: any
//! design can be relabeled so that one of its tests becomes the identity,
//! and relabeling preserves feasibility and size.
//!
//! Sizes are tried in increasing order. Candidates of one size are visited
//! as increasing index combinations into the lexicographically sorted list
//! of permutations, so the first feasible candidate is the lexicographically
//! least optimal design. Each candidate is checked against the leader
//! condition through precomputed per-permutation coverage masks over all
//! `(K-set, member)` pairs: a design is feasible exactly when the union of
//! its masks covers every pair.

use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;

use crate::budget::{binomial, Budget};
use crate::design::{Design, ItemId, TestSeq};
use crate::error::{Error, Result};

/// Largest item count the solver will even consider (`10! = 3628800`
/// permutations).
pub const MAX_ITEMS: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactOptions {
    pub budget: Budget,
    /// Fix the first test to the identity permutation.
    pub fix_identity: bool,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            budget: Budget::default(),
            fix_identity: true,
        }
    }
}

/// One design size that was searched completely without success.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExhaustedLevel {
    pub size: usize,
    pub candidates_examined: u128,
}

/// Evidence that no smaller design exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub permutations: u64,
    pub symmetry_fixed: bool,
    pub exhausted: Vec<ExhaustedLevel>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub n: u32,
    pub k: u32,
    pub optimum: usize,
    pub witness: Design,
    pub certificate: Certificate,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let largest = self.exhausted.last().map_or(0, |l| l.size);
        write!(
            f,
            "no feasible design with {largest} or fewer tests: every candidate of sizes 0..={largest} \
             over {} permutations was checked",
            self.permutations
        )?;
        if self.symmetry_fixed {
            f.write_str(" (first test fixed to the identity by relabeling)")?;
        }
        for level in &self.exhausted {
            write!(
                f,
                "; size {}: {} candidates",
                level.size, level.candidates_examined
            )?;
        }
        Ok(())
    }
}

/// Number of candidate designs of `size` tests.
pub fn candidates_at(n_perms: u64, size: usize, fix_identity: bool) -> u128 {
    match (size, fix_identity) {
        (0, _) => 1,
        (s, true) => binomial(n_perms - 1, s as u64 - 1),
        (s, false) => binomial(n_perms, s as u64),
    }
}

/// Smallest design size admitting a feasible design for `(n, k)`, with a
/// witness and an exhaustion certificate for every smaller size.
///
/// Cost estimate: `n! · C(n,k) · k` to build the masks, then
/// `candidates · size · words` per size; each is checked against the
/// budget before running.
pub fn exact_optimal_t(n: u32, k: u32, options: ExactOptions) -> Result<ExactResult> {
    if k < 1 || k > n {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    if n > MAX_ITEMS {
        return Err(Error::InvalidParameters(format!(
            "exact search supports n <= {MAX_ITEMS}, got {n}"
        )));
    }
    let n_perms: u64 = (1..=u64::from(n)).product();
    let subsets: Vec<Vec<u32>> = (0..n).combinations(k as usize).collect();
    let k_us = k as usize;
    let pairs = subsets.len() * k_us;
    let words = pairs.div_ceil(64);
    options.budget.admit(
        u128::from(n_perms)
            .saturating_mul(subsets.len() as u128)
            .saturating_mul(u128::from(k)),
    )?;

    let perms: Vec<Vec<u32>> = (0..n).permutations(n as usize).collect();
    let mut masks = vec![0u64; perms.len() * words];
    let mut pos = vec![0u32; n as usize];
    for (p, perm) in perms.iter().enumerate() {
        for (i, &item) in perm.iter().enumerate() {
            pos[item as usize] = i as u32;
        }
        let mask = &mut masks[p * words..(p + 1) * words];
        for (s, subset) in subsets.iter().enumerate() {
            let slot = (0..k_us).min_by_key(|&j| pos[subset[j] as usize]).unwrap();
            let bit = s * k_us + slot;
            mask[bit / 64] |= 1 << (bit % 64);
        }
    }
    let mut full = vec![u64::MAX; words];
    if !pairs.is_multiple_of(64) {
        full[words - 1] = (1u64 << (pairs % 64)) - 1;
    }

    let search = Search {
        masks: &masks,
        words,
        full: &full,
        n_perms: perms.len(),
    };
    let mut exhausted = Vec::new();
    for size in 0usize.. {
        let candidates = candidates_at(n_perms, size, options.fix_identity);
        options.budget.admit(
            candidates
                .saturating_mul(size.max(1) as u128)
                .saturating_mul(words as u128),
        )?;
        if let Some(chosen) = search.level(size, options.fix_identity) {
            let tests = chosen
                .iter()
                .map(|&p| {
                    TestSeq::from_vec_unchecked(
                        perms[p]
                            .iter()
                            .map(|&i| ItemId::from_index(i as usize))
                            .collect(),
                    )
                })
                .collect();
            let witness = Design::new(n, k, tests)?;
            return Ok(ExactResult {
                n,
                k,
                optimum: size,
                witness,
                certificate: Certificate {
                    permutations: n_perms,
                    symmetry_fixed: options.fix_identity,
                    exhausted,
                },
            });
        }
        exhausted.push(ExhaustedLevel {
            size,
            candidates_examined: candidates,
        });
    }
    unreachable!("the size loop only ends by returning")
}

struct Search<'a> {
    masks: &'a [u64],
    words: usize,
    full: &'a [u64],
    n_perms: usize,
}

impl Search<'_> {
    fn mask(&self, p: usize) -> &[u64] {
        &self.masks[p * self.words..(p + 1) * self.words]
    }

    fn covers_with(&self, acc: &[u64], p: usize) -> bool {
        acc.iter()
            .zip(self.mask(p))
            .zip(self.full)
            .all(|((a, m), f)| a | m == *f)
    }

    /// First feasible combination of `size` permutation indices, if any.
    fn level(&self, size: usize, fix_identity: bool) -> Option<Vec<usize>> {
        let zero = vec![0u64; self.words];
        let (prefix, start, remaining): (Vec<usize>, usize, usize) = match (size, fix_identity) {
            (0, _) => return (zero == self.full).then(Vec::new),
            (s, true) => (vec![0], 1, s - 1),
            (s, false) => (Vec::new(), 0, s),
        };
        let acc: Vec<u64> = prefix.iter().fold(zero, |mut acc, &p| {
            or_into(&mut acc, self.mask(p));
            acc
        });
        if remaining == 0 {
            return (acc == self.full).then_some(prefix);
        }
        if start + remaining > self.n_perms {
            return None;
        }
        (start..=self.n_perms - remaining)
            .into_par_iter()
            .find_map_first(|first| {
                let mut next = acc.clone();
                or_into(&mut next, self.mask(first));
                let mut chosen = prefix.clone();
                chosen.push(first);
                self.dfs(first + 1, remaining - 1, &next, &mut chosen)
                    .then_some(chosen)
            })
    }

    fn dfs(&self, start: usize, remaining: usize, acc: &[u64], chosen: &mut Vec<usize>) -> bool {
        if remaining == 0 {
            return acc == self.full;
        }
        if remaining == 1 {
            if let Some(p) = (start..self.n_perms).find(|&p| self.covers_with(acc, p)) {
                chosen.push(p);
                return true;
            }
            return false;
        }
        let mut next = vec![0u64; self.words];
        for p in start..=self.n_perms - remaining {
            next.copy_from_slice(acc);
            or_into(&mut next, self.mask(p));
            chosen.push(p);
            if self.dfs(p + 1, remaining - 1, &next, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

fn or_into(acc: &mut [u64], mask: &[u64]) {
    acc.iter_mut().zip(mask).for_each(|(a, m)| *a |= m);
}
