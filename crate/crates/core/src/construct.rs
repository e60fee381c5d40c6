//! Explicit and randomized feasible designs.
//!
//! * `K = 1`: one test listing every item.
//! * `K = 2`: the identity order and its reversal.
//! * `K >= 3`: squaring construction. From a design for `(n, K)` and one for
//!   `(n, K-1)`, both made of full permutations, [`procedure_a`] builds a
//!   design for `(n², K)`. [`design_for`] climbs this tower from an anchor
//!   and restricts the top level down to the requested item count.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::compose::compose;
use crate::design::{Design, ItemId, TestSeq};
use crate::error::{Error, Result};
use crate::tower::Tower;

/// Name of the generator behind [`randomized_design`], recorded in design
/// file provenance.
pub const RNG_NAME: &str = "chacha8/rand_chacha-0.3/seed_from_u64";

/// Seed for reproducible random designs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Seed(pub u64);

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `{(1, 2, ..., n)}`, feasible for one defective.
pub fn design_k1(n: u32) -> Result<Design> {
    if n < 1 {
        return Err(Error::InvalidParameters("n must be at least 1".into()));
    }
    Design::new(n, 1, vec![TestSeq::identity(n)])
}

/// `{(1, ..., n), (n, ..., 1)}`, feasible for two defectives.
pub fn design_k2(n: u32) -> Result<Design> {
    if n < 2 {
        return Err(Error::InvalidParameters(
            "the two-defective design needs n >= 2".into(),
        ));
    }
    Design::new(n, 2, vec![TestSeq::identity(n), TestSeq::reversed(n)])
}

/// Anchor for three defectives on three items: `{(1,2,3), (2,1,3), (3,2,1)}`.
pub fn anchor_k3() -> Design {
    Design::from_lists(3, 3, [vec![1, 2, 3], vec![2, 1, 3], vec![3, 2, 1]])
        .expect("static anchor is valid")
}

/// All `n` cyclic rotations of `(1, ..., n)`, feasible for `K = n`: the only
/// `n`-subset is the whole item set and every item leads one rotation.
pub fn rotations(n: u32) -> Result<Design> {
    if n < 1 {
        return Err(Error::InvalidParameters("n must be at least 1".into()));
    }
    let tests = (0..n)
        .map(|shift| {
            TestSeq::from_vec_unchecked(
                (0..n)
                    .map(|i| ItemId::from_index(((i + shift) % n) as usize))
                    .collect(),
            )
        })
        .collect();
    Design::new(n, n, tests)
}

/// Squares the item count of a design.
///
/// Given `base` feasible for `(n, K)` and `lower` feasible for `(n, K-1)`,
/// both made of full permutations of `1..=n`, returns the deduplicated union
/// of `{t∘t : t in base}` and `{g∘h : g, h in lower}`, a design for
/// `(n², K)` with at most `|base| + |lower|²` tests.
pub fn procedure_a(base: &Design, lower: &Design) -> Result<Design> {
    let n = base.n_items();
    if lower.n_items() != n {
        return Err(Error::InvalidParameters(format!(
            "item counts differ: {} and {}",
            n,
            lower.n_items()
        )));
    }
    if lower.max_defectives() + 1 != base.max_defectives() {
        return Err(Error::InvalidParameters(format!(
            "second design must handle K-1 = {} defectives, got {}",
            base.max_defectives().saturating_sub(1),
            lower.max_defectives()
        )));
    }
    if !base.is_permutation_design() || !lower.is_permutation_design() {
        return Err(Error::NotPermutation(n));
    }
    let big_n = n
        .checked_mul(n)
        .ok_or_else(|| Error::InvalidParameters(format!("n = {n} is too large to square")))?;

    let mut tests = Vec::with_capacity(base.len() + lower.len() * lower.len());
    for t in base.tests() {
        tests.push(compose(t, t)?);
    }
    for g in lower.tests() {
        for h in lower.tests() {
            tests.push(compose(g, h)?);
        }
    }
    Ok(Design::new(big_n, base.max_defectives(), tests)?.dedupe_tests())
}

/// A feasible design for `n` items and up to `k` defectives.
///
/// `k = 1` and `k = 2` use the direct designs. For `k >= 3` the squaring
/// tower is climbed from an anchor of the family with the smallest size
/// bound (see [`crate::upper_bound_recursive`]), then restricted to `n`
/// items. The size never exceeds `upper_bound_recursive(n, k)`.
pub fn design_for(n: u32, k: u32) -> Result<Design> {
    if k < 1 || k > n {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    let mut tower = Tower::new();
    build(&mut tower, n, k)?.with_max_defectives(k)
}

fn build(tower: &mut Tower, n: u32, k: u32) -> Result<Design> {
    let plan = tower.best(u64::from(n), k);
    match plan.family {
        1 => design_k1(n),
        2 => design_k2(n),
        family => {
            let mut design = if family == 3 {
                anchor_k3()
            } else {
                rotations(family)?
            };
            while design.n_items() < n {
                let m = design.n_items();
                let lower = build(tower, m, family - 1)?.with_max_defectives(family - 1)?;
                design = procedure_a(&design, &lower)?;
            }
            if design.n_items() > n {
                design = design.restrict(n)?;
            }
            Ok(design)
        }
    }
}

/// `t_count` independent uniformly random permutations of `1..=n`, drawn
/// from a ChaCha8 stream seeded with `seed` (Fisher–Yates shuffles).
/// Not necessarily feasible.
pub fn randomized_design(n: u32, k: u32, t_count: usize, seed: Seed) -> Result<Design> {
    if k < 1 || k > n {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    if t_count == 0 {
        return Err(Error::InvalidParameters(
            "number of tests must be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
    let tests = (0..t_count)
        .map(|_| {
            let mut items: Vec<ItemId> = (0..n as usize).map(ItemId::from_index).collect();
            items.shuffle(&mut rng);
            TestSeq::from_vec_unchecked(items)
        })
        .collect();
    Design::new(n, k, tests)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::feasibility::{check_feasible_thm1, check_injective_oracle};

    fn feasible(d: &Design) -> bool {
        check_feasible_thm1(d, Budget::default())
            .unwrap()
            .is_feasible()
    }

    #[test]
    fn k1_designs() {
        assert_eq!(design_k1(5).unwrap().test_set().len(), 1);
        assert_eq!(design_k1(5).unwrap().tests()[0].raw(), vec![1, 2, 3, 4, 5]);
        assert_eq!(design_k1(1).unwrap().tests()[0].raw(), vec![1]);
        let d = design_k1(3).unwrap();
        assert!(check_injective_oracle(&d, Budget::default())
            .unwrap()
            .is_feasible());
    }

    #[test]
    fn k2_designs() {
        let d = design_k2(4).unwrap();
        assert_eq!(d.tests()[0].raw(), vec![1, 2, 3, 4]);
        assert_eq!(d.tests()[1].raw(), vec![4, 3, 2, 1]);
        let d = design_k2(2).unwrap();
        assert_eq!(d.tests()[1].raw(), vec![2, 1]);
        assert!(design_k2(1).is_err());
        let d = design_k2(6).unwrap();
        assert!(check_injective_oracle(&d, Budget::default())
            .unwrap()
            .is_feasible());
    }

    #[test]
    fn rotations_feasible_at_n_equals_k() {
        for n in 1..=6 {
            let d = rotations(n).unwrap();
            assert_eq!(d.len(), n as usize);
            assert!(feasible(&d));
        }
    }

    #[test]
    fn squaring_the_anchor_gives_nine_item_design() {
        let g = design_k2(3).unwrap();
        let d = procedure_a(&anchor_k3(), &g).unwrap();
        let expected = Design::from_lists(
            9,
            3,
            [
                vec![1, 2, 3, 4, 5, 6, 7, 8, 9],
                vec![9, 8, 7, 6, 5, 4, 3, 2, 1],
                vec![3, 2, 1, 6, 5, 4, 9, 8, 7],
                vec![7, 8, 9, 4, 5, 6, 1, 2, 3],
                vec![5, 4, 6, 2, 1, 3, 8, 7, 9],
            ],
        )
        .unwrap();
        assert_eq!(d.test_set(), expected.test_set());
        assert_eq!(d.len(), 5);
        assert!(feasible(&d));
    }

    #[test]
    fn procedure_a_k2_from_k1() {
        let d = procedure_a(&design_k2(2).unwrap(), &design_k1(2).unwrap()).unwrap();
        assert_eq!(d.n_items(), 4);
        assert!(d.len() <= 3);
        assert!(check_injective_oracle(&d, Budget::default())
            .unwrap()
            .is_feasible());
    }

    #[test]
    fn procedure_a_dedupes_into_h() {
        // base ⊆ lower: every t∘t also appears among g∘h.
        let base = design_k2(3).unwrap().with_max_defectives(2).unwrap();
        let lower = Design::from_lists(3, 1, [vec![1, 2, 3], vec![3, 2, 1]]).unwrap();
        let d = procedure_a(&base, &lower).unwrap();
        assert_eq!(d.len(), 4);
    }

    #[test]
    fn procedure_a_rejects_bad_inputs() {
        let partial = Design::from_lists(3, 3, [vec![1, 2]]).unwrap();
        assert!(matches!(
            procedure_a(&partial, &design_k2(3).unwrap()),
            Err(Error::NotPermutation(3))
        ));
        assert!(procedure_a(&anchor_k3(), &design_k2(4).unwrap()).is_err());
        assert!(procedure_a(&anchor_k3(), &design_k1(3).unwrap()).is_err());
    }

    #[test]
    fn design_for_small_cases() {
        assert_eq!(design_for(7, 1).unwrap(), design_k1(7).unwrap());
        assert_eq!(design_for(7, 2).unwrap(), design_k2(7).unwrap());
        let d = design_for(9, 3).unwrap();
        assert_eq!(d.len(), 5);
        assert!(design_for(3, 4).is_err());
        assert!(design_for(3, 0).is_err());
    }

    #[test]
    fn design_for_is_feasible_exhaustively() {
        for k in 1..=4u32 {
            for n in k..=20 {
                let d = design_for(n, k).unwrap();
                assert_eq!(d.n_items(), n);
                assert_eq!(d.max_defectives(), k);
                assert!(d.is_permutation_design(), "n={n} k={k}");
                assert!(feasible(&d), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn randomized_is_deterministic() {
        let a = randomized_design(8, 2, 6, Seed(7)).unwrap();
        let b = randomized_design(8, 2, 6, Seed(7)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 6);
        assert!(a.is_permutation_design());
        assert_ne!(a, randomized_design(8, 2, 6, Seed(8)).unwrap());
        assert!(randomized_design(8, 2, 0, Seed(7)).is_err());
    }

    #[test]
    fn randomized_three_of_three_agrees_with_oracle() {
        let mut any = false;
        for seed in 0..100 {
            let d = randomized_design(3, 3, 3, Seed(seed)).unwrap();
            let thm1 = check_feasible_thm1(&d, Budget::default())
                .unwrap()
                .is_feasible();
            let oracle = check_injective_oracle(&d, Budget::default())
                .unwrap()
                .is_feasible();
            assert_eq!(thm1, oracle);
            any |= thm1;
        }
        assert!(any);
    }
}
