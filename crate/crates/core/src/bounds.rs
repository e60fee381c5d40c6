//! Closed-form bounds on `T(N, K)`, the fewest tests of any feasible design.
//!
//! Lower bounds: the trivial `K`, the `αβ` bound for splits `α + β = K + 1`
//! (with its balanced special case), and the monotone-subsequence bound
//! `T > floor(log2 log2 (N-1))` for `K >= 3`.
//!
//! Upper bounds: the random-permutation bound
//! `floor(log_{K/(K-1)} (K·C(N,K))) + 1`, the size of the recursive tower,
//! and the size of the design [`design_for`] actually builds when that is
//! cheap. The random bound is evaluated exactly with big integers; the
//! looser `ceil(K ln(K·C(N,K)))` form it implies is not reported.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::construct::design_for;
use crate::error::{Error, Result};
use crate::tower::Tower;

/// Largest `n · (top tower level)` for which [`bounds_summary`] builds the
/// design to report its exact size.
const CONSTRUCT_LIMIT: u128 = 4_000_000;

/// `αβ` when `n >= α(β+1) - 1`, otherwise `None`.
pub fn lower_bound_thm4(n: u32, k: u32, alpha: u32, beta: u32) -> Result<Option<u64>> {
    if alpha < 1 || beta < 1 || u64::from(alpha) + u64::from(beta) != u64::from(k) + 1 {
        return Err(Error::InvalidParameters(format!(
            "need alpha, beta >= 1 with alpha + beta = k + 1, got alpha={alpha}, beta={beta}, k={k}"
        )));
    }
    let (alpha, beta) = (u64::from(alpha), u64::from(beta));
    let threshold = alpha * (beta + 1) - 1;
    Ok((u64::from(n) >= threshold).then_some(alpha * beta))
}

/// Balanced split `α = floor((k+1)/2)`, `β = ceil((k+1)/2)`.
pub fn lower_bound_corollary(n: u32, k: u32) -> Option<u64> {
    if k < 1 {
        return None;
    }
    let alpha = k.div_ceil(2);
    let beta = (k + 2) / 2;
    lower_bound_thm4(n, k, alpha, beta).ok().flatten()
}

/// Best applicable `αβ` bound over every split `α + β = k + 1`.
pub fn lower_bound_alpha_beta(n: u32, k: u32) -> Option<u64> {
    (1..=k)
        .filter_map(|alpha| lower_bound_thm4(n, k, alpha, k + 1 - alpha).ok().flatten())
        .max()
}

/// `floor(log2 log2 (n-1)) + 1` for `k >= 3`, `n >= 3`.
///
/// The underlying statement is strict (`T > floor(log2 log2 (N-1))`), hence
/// the `+ 1`. Computed with integer logarithms:
/// `floor(log2 log2 x) = floor(log2 floor(log2 x))`.
pub fn lower_bound_es(n: u32, k: u32) -> Option<u64> {
    if k < 3 || n < 3 {
        return None;
    }
    let x = n - 1;
    Some(u64::from(x.ilog2().ilog2()) + 1)
}

/// `floor(log_{k/(k-1)} (k·C(n,k))) + 1`, exact.
///
/// The floor is the largest `t` with `k^t <= k·C(n,k)·(k-1)^t`, found from a
/// floating-point estimate and then corrected with exact integer powers.
pub fn upper_bound_randomized(n: u32, k: u32) -> Result<u64> {
    if k < 2 {
        return Err(Error::InvalidParameters(
            "randomized bound needs k >= 2 (one test suffices for k = 1)".into(),
        ));
    }
    if k > n {
        return Err(Error::InvalidParameters(format!(
            "need k <= n, got n={n}, k={k}"
        )));
    }
    let target = BigUint::from(k) * binomial_big(n, k);
    let big_k = BigUint::from(k);
    let big_km1 = BigUint::from(k - 1);
    let fits = |t: u64| -> bool {
        let t = t as u32;
        big_k.pow(t) <= &target * big_km1.pow(t)
    };

    let ratio = f64::from(k) / f64::from(k - 1);
    let estimate = (ln_big(&target) / ratio.ln()).floor().max(0.0) as u64;
    let mut t = estimate;
    while t > 0 && !fits(t) {
        t -= 1;
    }
    while fits(t + 1) {
        t += 1;
    }
    Ok(t + 1)
}

/// Size of the recursive construction for `(n, k)`.
///
/// Families `j >= 3` start from a `j`-test anchor on `j` items and grow by
/// `best(m, j-1)²` per squaring `m -> m²`; the value reported is the
/// smallest family size over `j` in `k..=n`. For `k = 3` the family alone
/// gives `4r + 3` at `n = 3^(2^r)`. Values for `k > n` are those for `k = n`.
/// Saturates at `u64::MAX`.
pub fn upper_bound_recursive(n: u32, k: u32) -> u64 {
    if n == 0 {
        return 0;
    }
    let size = Tower::new().best(u64::from(n), k).size;
    u64::try_from(size).unwrap_or(u64::MAX)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsSummary {
    pub n: u32,
    pub k: u32,
    pub lower_trivial: u64,
    pub lower_alpha_beta: Option<u64>,
    pub lower_es: Option<u64>,
    pub upper_randomized: Option<u64>,
    pub upper_recursive: u64,
    /// Size of the design built by [`design_for`], when cheap enough to build.
    pub upper_constructed: Option<u64>,
    pub best_lower: u64,
    pub best_upper: u64,
}

/// Evaluates every applicable bound for `(n, k)`.
pub fn bounds_summary(n: u32, k: u32) -> Result<BoundsSummary> {
    if k < 1 || k > n {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    let lower_trivial = u64::from(k);
    let lower_alpha_beta = lower_bound_alpha_beta(n, k);
    let lower_es = lower_bound_es(n, k);
    let upper_randomized = if k >= 2 {
        Some(upper_bound_randomized(n, k)?)
    } else {
        None
    };
    let upper_recursive = upper_bound_recursive(n, k);

    let plan = Tower::new().best(u64::from(n), k);
    let top = *Tower::levels(plan.family, u64::from(n)).last().unwrap();
    let cost = plan.size.saturating_mul(u128::from(top.max(u64::from(n))));
    let upper_constructed = if cost <= CONSTRUCT_LIMIT {
        Some(design_for(n, k)?.len() as u64)
    } else {
        None
    };

    let best_lower = [Some(lower_trivial), lower_alpha_beta, lower_es]
        .into_iter()
        .flatten()
        .max()
        .unwrap();
    let best_upper = [upper_randomized, Some(upper_recursive), upper_constructed]
        .into_iter()
        .flatten()
        .min()
        .unwrap();
    Ok(BoundsSummary {
        n,
        k,
        lower_trivial,
        lower_alpha_beta,
        lower_es,
        upper_randomized,
        upper_recursive,
        upper_constructed,
        best_lower,
        best_upper,
    })
}

impl BoundsSummary {
    fn rows(&self) -> Vec<(&'static str, &'static str, Option<u64>)> {
        vec![
            ("lower_trivial", "lower: K", Some(self.lower_trivial)),
            (
                "lower_alpha_beta",
                "lower: alpha*beta split",
                self.lower_alpha_beta,
            ),
            (
                "lower_es",
                "lower: monotone subsequence (strict, +1)",
                self.lower_es,
            ),
            (
                "upper_randomized",
                "upper: random permutations",
                self.upper_randomized,
            ),
            (
                "upper_recursive",
                "upper: recursive tower",
                Some(self.upper_recursive),
            ),
            (
                "upper_constructed",
                "upper: constructed design",
                self.upper_constructed,
            ),
            ("best_lower", "best lower", Some(self.best_lower)),
            ("best_upper", "best upper", Some(self.best_upper)),
        ]
    }

    /// Aligned human-readable table.
    pub fn to_table(&self) -> String {
        let rows = self.rows();
        let width = rows.iter().map(|r| r.1.len()).max().unwrap_or(0);
        let mut out = format!("bounds on T(N={}, K={})\n", self.n, self.k);
        for (_, label, value) in rows {
            let value = value.map_or_else(|| "n/a".to_string(), |v| v.to_string());
            let _ = writeln!(out, "  {label:<width$}  {value:>8}");
        }
        out
    }

    /// One `key=value` pair per line; inapplicable bounds are `none`.
    pub fn to_key_values(&self) -> String {
        let mut out = format!("n={}\nk={}\n", self.n, self.k);
        for (key, _, value) in self.rows() {
            let value = value.map_or_else(|| "none".to_string(), |v| v.to_string());
            let _ = writeln!(out, "{key}={value}");
        }
        out
    }

    /// `best_lower=.. best_upper=..` on one line.
    pub fn summary_line(&self) -> String {
        format!(
            "n={} k={} best_lower={} best_upper={}",
            self.n, self.k, self.best_lower, self.best_upper
        )
    }
}

fn binomial_big(n: u32, k: u32) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).to_u64().unwrap_or(u64::MAX) as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}
