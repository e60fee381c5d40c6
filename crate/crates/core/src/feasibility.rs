//! Feasibility of a design: can every defective set of size at most `K` be
//! recovered from the outputs?
//!
//! Three deciders live here:
//!
//! * [`check_feasible_thm1`] checks the leader condition: for every set of
//!   exactly `K` items and every member `v`, some test sees `v` before the
//!   other members.
//! * [`check_injective_oracle`] enumerates every defective set of size at
//!   most `K` and looks for two sets with the same output vector. It shares
//!   no code with the leader condition and serves as its cross-check.
//! * [`check_systematic_thm3`] applies the counting condition that holds for
//!   designs in systematic form.
//!
//! Subsets are enumerated in lexicographic order, so the witness reported on
//! failure is always the lexicographically smallest one.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;

use crate::budget::{binomial, Budget};
use crate::design::{DefectiveSet, Design, ItemId};
use crate::error::{Error, Result};
use crate::outcome::run_design;

const ABSENT: u32 = u32::MAX;

/// Why a design is not feasible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `item` is a member of `defectives` (of size exactly `K`) but no test
    /// sees it before the other members.
    Uncovered {
        defectives: DefectiveSet,
        item: ItemId,
    },
    /// Two distinct defective sets produce the same output vector.
    Collision {
        first: DefectiveSet,
        second: DefectiveSet,
    },
    /// Systematic-form condition failure: `item` leads `subset` in only
    /// `count` tests where `required` are needed.
    Deficient {
        subset: DefectiveSet,
        item: ItemId,
        count: usize,
        required: usize,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Uncovered { defectives, item } => write!(
                f,
                "defective set {defectives}: item {item} is never first among the set"
            ),
            Witness::Collision { first, second } => {
                write!(
                    f,
                    "defective sets {first} and {second} give identical outputs"
                )
            }
            Witness::Deficient {
                subset,
                item,
                count,
                required,
            } => write!(
                f,
                "subset {subset}: item {item} leads {count} tests, needs {required}"
            ),
        }
    }
}

/// Outcome of a feasibility check. Feasible exactly when no witness exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityReport {
    witness: Option<Witness>,
}

impl FeasibilityReport {
    pub fn feasible() -> Self {
        FeasibilityReport { witness: None }
    }

    pub fn infeasible(witness: Witness) -> Self {
        FeasibilityReport {
            witness: Some(witness),
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.witness.is_none()
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }
}

/// Position of every item in every test, for constant-time "who comes
/// first" queries.
#[derive(Debug, Clone)]
pub struct LeaderIndex {
    n_items: usize,
    // positions[t * n_items + (item - 1)]
    positions: Vec<u32>,
    n_tests: usize,
}

impl LeaderIndex {
    pub fn new(design: &Design) -> Self {
        let n_items = design.n_items() as usize;
        let n_tests = design.len();
        let mut positions = vec![ABSENT; n_items * n_tests];
        for (t, test) in design.tests().iter().enumerate() {
            let row = &mut positions[t * n_items..(t + 1) * n_items];
            for (pos, item) in test.items().iter().enumerate() {
                row[item.index()] = pos as u32;
            }
        }
        LeaderIndex {
            n_items,
            positions,
            n_tests,
        }
    }

    pub fn n_tests(&self) -> usize {
        self.n_tests
    }

    /// Index into `subset` of the member appearing first in `test`, if any
    /// member appears at all.
    fn leader_slot(&self, test: usize, subset: &[ItemId]) -> Option<usize> {
        let row = &self.positions[test * self.n_items..(test + 1) * self.n_items];
        let mut best = ABSENT;
        let mut slot = None;
        for (s, item) in subset.iter().enumerate() {
            let p = row.get(item.index()).copied().unwrap_or(ABSENT);
            if p < best {
                best = p;
                slot = Some(s);
            }
        }
        slot
    }

    /// The output of `test` when `subset` is the defective set.
    pub fn leader(&self, test: usize, subset: &[ItemId]) -> Option<ItemId> {
        self.leader_slot(test, subset).map(|s| subset[s])
    }

    /// Number of tests in which `item` appears before every other member of
    /// `subset`.
    pub fn f_count(&self, subset: &[ItemId], item: ItemId) -> Result<usize> {
        let slot = subset
            .iter()
            .position(|&x| x == item)
            .ok_or(Error::NotMember(item.get()))?;
        Ok((0..self.n_tests)
            .filter(|&t| self.leader_slot(t, subset) == Some(slot))
            .count())
    }

    /// Smallest member of `subset` (by position in the slice) that leads no
    /// test. Pass the subset sorted to get the smallest item.
    pub fn first_uncovered(&self, subset: &[ItemId]) -> Option<ItemId> {
        let mut covered = vec![false; subset.len()];
        self.first_uncovered_with(subset, &mut covered)
    }

    fn first_uncovered_with(&self, subset: &[ItemId], covered: &mut [bool]) -> Option<ItemId> {
        covered.iter_mut().for_each(|c| *c = false);
        let mut remaining = subset.len();
        for t in 0..self.n_tests {
            if let Some(s) = self.leader_slot(t, subset) {
                if !covered[s] {
                    covered[s] = true;
                    remaining -= 1;
                    if remaining == 0 {
                        return None;
                    }
                }
            }
        }
        covered.iter().position(|c| !c).map(|s| subset[s])
    }
}

/// Number of tests in which `item` comes before every other member of `set`.
pub fn f_count(design: &Design, set: &DefectiveSet, item: ItemId) -> Result<usize> {
    if !set.contains(item) {
        return Err(Error::NotMember(item.get()));
    }
    LeaderIndex::new(design).f_count(&set.to_vec(), item)
}

/// Step estimate used by [`check_feasible_thm1`]: `C(N,K) * K * total test length`.
pub fn thm1_cost(design: &Design) -> u128 {
    let n = u64::from(design.n_items());
    let k = u64::from(design.max_defectives());
    binomial(n, k)
        .saturating_mul(u128::from(k))
        .saturating_mul(design.total_len().max(1) as u128)
}

/// Step estimate used by [`check_injective_oracle`]:
/// `sum_{j<=K} C(N,j) * K * total test length`.
pub fn injective_cost(design: &Design) -> u128 {
    let n = u64::from(design.n_items());
    let k = u64::from(design.max_defectives());
    (0..=k)
        .map(|j| binomial(n, j))
        .fold(0u128, u128::saturating_add)
        .saturating_mul(u128::from(k))
        .saturating_mul(design.total_len().max(1) as u128)
}

/// Decides feasibility through the leader condition over all `K`-subsets.
///
/// On failure the witness is the lexicographically smallest `(set, item)`
/// pair. The search is split across threads by smallest set member, and the
/// earliest failing partition wins, so the answer does not depend on the
/// thread count.
pub fn check_feasible_thm1(design: &Design, budget: Budget) -> Result<FeasibilityReport> {
    budget.admit(thm1_cost(design))?;
    let n = design.n_items();
    let k = design.max_defectives() as usize;
    let index = LeaderIndex::new(design);

    let witness = (1..=n + 1 - k as u32)
        .into_par_iter()
        .find_map_first(|first| {
            let first = ItemId::from_index(first as usize - 1);
            let mut subset = Vec::with_capacity(k);
            let mut covered = vec![false; k];
            for rest in (first.get() + 1..=n).combinations(k - 1) {
                subset.clear();
                subset.push(first);
                subset.extend(rest.iter().map(|&i| ItemId::from_index(i as usize - 1)));
                if let Some(item) = index.first_uncovered_with(&subset, &mut covered) {
                    return Some(Witness::Uncovered {
                        defectives: subset.iter().copied().collect(),
                        item,
                    });
                }
            }
            None
        });

    Ok(witness.map_or_else(FeasibilityReport::feasible, FeasibilityReport::infeasible))
}

/// Decides feasibility by checking that distinct defective sets of size at
/// most `K` always produce distinct output vectors.
///
/// Sets are visited by size, then lexicographically; the reported collision
/// pairs the earlier set with the first later set that repeats its output.
pub fn check_injective_oracle(design: &Design, budget: Budget) -> Result<FeasibilityReport> {
    budget.admit(injective_cost(design))?;
    let n = design.n_items();
    let k = design.max_defectives() as usize;
    let mut seen: HashMap<Vec<u32>, DefectiveSet> = HashMap::new();
    for size in 0..=k {
        for members in (1..=n).combinations(size) {
            let set = DefectiveSet::from_items(members)?;
            let outputs = run_design(design, &set)?.raw();
            if let Some(prev) = seen.get(&outputs) {
                return Ok(FeasibilityReport::infeasible(Witness::Collision {
                    first: prev.clone(),
                    second: set,
                }));
            }
            seen.insert(outputs, set);
        }
    }
    Ok(FeasibilityReport::feasible())
}

/// True when every test is nonempty and no test's first item appears in any
/// other test.
pub fn is_systematic(design: &Design) -> bool {
    let mut occurrences = vec![0usize; design.n_items() as usize];
    for test in design.tests() {
        for item in test.items() {
            occurrences[item.index()] += 1;
        }
    }
    design
        .tests()
        .iter()
        .all(|t| t.leader().is_some_and(|l| occurrences[l.index()] == 1))
}

/// Leaders of a design: the first item of each nonempty test.
pub fn leaders(design: &Design) -> Vec<ItemId> {
    design.tests().iter().filter_map(|t| t.leader()).collect()
}

/// Step estimate used by [`check_systematic_thm3`].
pub fn thm3_cost(design: &Design) -> u128 {
    let p = (design.n_items() as usize).saturating_sub(leaders(design).len()) as u64;
    let k = u64::from(design.max_defectives());
    (1..=k)
        .map(|s| binomial(p, s).saturating_mul(u128::from(s)))
        .fold(0u128, u128::saturating_add)
        .saturating_mul(design.total_len().max(1) as u128)
}

/// Feasibility check for designs in systematic form: every subset `S` of
/// non-leader items with `1 <= |S| <= K` and every `v` in `S` must satisfy
/// `f(S, v) >= K + 1 - |S|`.
///
/// Subsets are visited by size, then lexicographically, and members in
/// ascending order; the first violation is the witness.
pub fn check_systematic_thm3(design: &Design, budget: Budget) -> Result<FeasibilityReport> {
    if !is_systematic(design) {
        return Err(Error::NotSystematic);
    }
    budget.admit(thm3_cost(design))?;
    let k = design.max_defectives() as usize;
    let mut is_leader = vec![false; design.n_items() as usize];
    for l in leaders(design) {
        is_leader[l.index()] = true;
    }
    let non_leaders: Vec<ItemId> = (0..design.n_items() as usize)
        .filter(|&i| !is_leader[i])
        .map(ItemId::from_index)
        .collect();
    let index = LeaderIndex::new(design);
    for size in 1..=k.min(non_leaders.len()) {
        let required = k + 1 - size;
        for subset in non_leaders.iter().copied().combinations(size) {
            for &item in &subset {
                let count = index.f_count(&subset, item)?;
                if count < required {
                    return Ok(FeasibilityReport::infeasible(Witness::Deficient {
                        subset: subset.iter().copied().collect(),
                        item,
                        count,
                        required,
                    }));
                }
            }
        }
    }
    Ok(FeasibilityReport::feasible())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(items: &[u32]) -> DefectiveSet {
        DefectiveSet::from_items(items.iter().copied()).unwrap()
    }

    fn item(v: u32) -> ItemId {
        ItemId::new(v).unwrap()
    }

    fn three_tests_on_four() -> Design {
        Design::from_lists(4, 3, [vec![1, 2, 3, 4], vec![3, 2, 4, 1], vec![4, 2, 3, 1]]).unwrap()
    }

    fn systematic_four() -> Design {
        Design::from_lists(4, 3, [vec![1, 2], vec![3, 2], vec![4, 2]]).unwrap()
    }

    fn squared_nine() -> Design {
        Design::from_lists(
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
        .unwrap()
    }

    #[test]
    fn f_count_examples() {
        let d = systematic_four();
        assert_eq!(f_count(&d, &set(&[2]), item(2)).unwrap(), 3);
        assert_eq!(f_count(&d, &set(&[1, 2]), item(2)).unwrap(), 2);
        let d = Design::from_lists(5, 1, [vec![1, 2]]).unwrap();
        assert_eq!(f_count(&d, &set(&[5]), item(5)).unwrap(), 0);
    }

    #[test]
    fn f_count_rejects_non_member() {
        assert_eq!(
            f_count(&systematic_four(), &set(&[1, 2]), item(3)),
            Err(Error::NotMember(3))
        );
    }

    #[test]
    fn thm1_examples() {
        assert!(check_feasible_thm1(&systematic_four(), Budget::default())
            .unwrap()
            .is_feasible());
        assert!(check_feasible_thm1(&squared_nine(), Budget::default())
            .unwrap()
            .is_feasible());
    }

    #[test]
    fn thm1_single_identity_test_fails_for_k2() {
        let d = Design::from_lists(6, 2, [1..=6]).unwrap();
        let report = check_feasible_thm1(&d, Budget::default()).unwrap();
        assert_eq!(
            report.witness(),
            Some(&Witness::Uncovered {
                defectives: set(&[1, 2]),
                item: item(2)
            })
        );
    }

    #[test]
    fn thm1_witness_is_lexicographically_smallest() {
        // Item 3 is never tested; {1,3} would be found before {2,3}.
        let d = Design::from_lists(4, 2, [vec![1, 2, 4], vec![4, 2, 1]]).unwrap();
        let report = check_feasible_thm1(&d, Budget::default()).unwrap();
        assert_eq!(
            report.witness(),
            Some(&Witness::Uncovered {
                defectives: set(&[1, 3]),
                item: item(3)
            })
        );
    }

    #[test]
    fn injective_examples() {
        assert!(
            check_injective_oracle(&three_tests_on_four(), Budget::default())
                .unwrap()
                .is_feasible()
        );
        let d = Design::from_lists(3, 1, [vec![1, 2, 3]]).unwrap();
        assert!(check_injective_oracle(&d, Budget::default())
            .unwrap()
            .is_feasible());
    }

    #[test]
    fn injective_untested_item_collides_with_empty_set() {
        let d = Design::from_lists(3, 1, [vec![1, 2]]).unwrap();
        let report = check_injective_oracle(&d, Budget::default()).unwrap();
        assert_eq!(
            report.witness(),
            Some(&Witness::Collision {
                first: set(&[]),
                second: set(&[3])
            })
        );
    }

    #[test]
    fn budget_guard_refuses() {
        let d = squared_nine();
        assert!(matches!(
            check_feasible_thm1(&d, Budget::new(10)),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(
            check_injective_oracle(&d, Budget::new(10)),
            Err(Error::BudgetExceeded { .. })
        ));
        // 84 triples * 3 * 45 positions
        assert_eq!(thm1_cost(&d), 84 * 3 * 45);
    }

    #[test]
    fn systematic_form_detection() {
        assert!(is_systematic(&systematic_four()));
        let d = Design::from_lists(3, 2, [vec![1, 2, 3], vec![2, 1, 3]]).unwrap();
        assert!(!is_systematic(&d));
        let empty = Design::new(3, 1, vec![]).unwrap();
        assert!(is_systematic(&empty));
        let with_empty = Design::from_lists(3, 1, [vec![1], vec![]]).unwrap();
        assert!(!is_systematic(&with_empty));
    }

    #[test]
    fn thm3_examples() {
        assert!(check_systematic_thm3(&systematic_four(), Budget::default())
            .unwrap()
            .is_feasible());

        let d = Design::from_lists(4, 3, [vec![1, 2], vec![3, 2]]).unwrap();
        let report = check_systematic_thm3(&d, Budget::default()).unwrap();
        assert_eq!(
            report.witness(),
            Some(&Witness::Deficient {
                subset: set(&[2]),
                item: item(2),
                count: 2,
                required: 3
            })
        );

        let d = Design::from_lists(1, 1, [vec![1]]).unwrap();
        assert!(check_systematic_thm3(&d, Budget::default())
            .unwrap()
            .is_feasible());
    }

    #[test]
    fn thm3_rejects_non_systematic() {
        assert_eq!(
            check_systematic_thm3(&three_tests_on_four(), Budget::default()),
            Err(Error::NotSystematic)
        );
    }

    #[test]
    fn leader_index_queries() {
        let d = three_tests_on_four();
        let idx = LeaderIndex::new(&d);
        let s = [item(2), item(4)];
        assert_eq!(idx.leader(0, &s), Some(item(2)));
        assert_eq!(idx.leader(2, &s), Some(item(4)));
        assert_eq!(idx.first_uncovered(&s), None);
        assert_eq!(idx.first_uncovered(&[item(2), item(3), item(4)]), None);
    }
}
