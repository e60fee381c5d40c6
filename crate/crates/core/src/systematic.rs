//! Reduction of a design to systematic form.
//!
//! In systematic form every test is nonempty and the first item of each test
//! appears in no other test. Any feasible design reduces to a feasible
//! systematic design with no more tests.

use crate::design::{Design, TestSeq};
use crate::error::{Error, Result};

/// Removes the first item of test `index` (0-based) from every other test.
/// Test `index` itself is left unchanged. Preserves feasibility.
pub fn strip_leader(design: &Design, index: usize) -> Result<Design> {
    let test = design
        .tests()
        .get(index)
        .ok_or(Error::TestIndexOutOfRange {
            index,
            len: design.len(),
        })?;
    let leader = test.leader().ok_or(Error::EmptyTest(index))?;
    let tests = design
        .tests()
        .iter()
        .enumerate()
        .map(|(j, t)| {
            if j == index {
                t.clone()
            } else {
                t.without(leader)
            }
        })
        .collect();
    Ok(Design::from_parts_unchecked(
        design.n_items(),
        design.max_defectives(),
        tests,
    ))
}

/// Reduces a design to systematic form.
///
/// Empty tests are dropped first. Tests are then visited in stored order:
/// a test found empty is marked for removal, otherwise its first item is
/// stripped from every other test. Marked tests are removed at the end.
///
/// The result is systematic and never larger than the input. When the input
/// is feasible so is the output; for infeasible input the procedure still
/// runs but promises nothing about feasibility.
pub fn to_systematic(design: &Design) -> Design {
    let mut tests: Vec<TestSeq> = design
        .tests()
        .iter()
        .filter(|t| !t.is_empty())
        .cloned()
        .collect();
    let mut emptied = vec![false; tests.len()];
    for i in 0..tests.len() {
        let Some(leader) = tests[i].leader() else {
            emptied[i] = true;
            continue;
        };
        for (j, t) in tests.iter_mut().enumerate() {
            if j != i && t.contains(leader) {
                *t = t.without(leader);
            }
        }
    }
    let tests = tests
        .into_iter()
        .zip(emptied)
        .filter_map(|(t, gone)| (!gone).then_some(t))
        .collect();
    Design::from_parts_unchecked(design.n_items(), design.max_defectives(), tests)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feasibility::is_systematic;

    fn three_tests_on_four() -> Design {
        Design::from_lists(4, 3, [vec![1, 2, 3, 4], vec![3, 2, 4, 1], vec![4, 2, 3, 1]]).unwrap()
    }

    #[test]
    fn strip_first_leader_of_three_tests_on_four() {
        let d = strip_leader(&three_tests_on_four(), 0).unwrap();
        let expected =
            Design::from_lists(4, 3, [vec![1, 2, 3, 4], vec![3, 2, 4], vec![4, 2, 3]]).unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn strip_leader_unique_is_noop() {
        let d = Design::from_lists(4, 3, [vec![1, 2], vec![3, 2], vec![4, 2]]).unwrap();
        assert_eq!(strip_leader(&d, 1).unwrap(), d);
    }

    #[test]
    fn strip_leader_can_empty_a_test() {
        let d = Design::from_lists(1, 1, [vec![1], vec![1]]).unwrap();
        let expected = Design::from_lists(1, 1, [vec![1], vec![]]).unwrap();
        assert_eq!(strip_leader(&d, 0).unwrap(), expected);
    }

    #[test]
    fn strip_leader_errors() {
        let d = Design::from_lists(2, 1, [vec![1], vec![]]).unwrap();
        assert_eq!(strip_leader(&d, 1), Err(Error::EmptyTest(1)));
        assert!(matches!(
            strip_leader(&d, 2),
            Err(Error::TestIndexOutOfRange { index: 2, len: 2 })
        ));
    }

    #[test]
    fn three_tests_on_four_reduce_to_systematic_four() {
        let r = to_systematic(&three_tests_on_four());
        let expected = Design::from_lists(4, 3, [vec![1, 2], vec![3, 2], vec![4, 2]]).unwrap();
        assert_eq!(r, expected);
    }

    #[test]
    fn systematic_input_unchanged() {
        let d = Design::from_lists(4, 3, [vec![1, 2], vec![3, 2], vec![4, 2]]).unwrap();
        assert_eq!(to_systematic(&d), d);
    }

    #[test]
    fn three_item_trace() {
        let d = Design::from_lists(3, 3, [vec![1, 2, 3], vec![2, 1, 3], vec![3, 2, 1]]).unwrap();
        let expected = Design::from_lists(3, 3, [vec![1], vec![2], vec![3]]).unwrap();
        assert_eq!(to_systematic(&d), expected);
    }

    #[test]
    fn emptied_tests_are_dropped() {
        let d = Design::from_lists(2, 1, [vec![1, 2], vec![], vec![1], vec![2, 1]]).unwrap();
        let r = to_systematic(&d);
        assert!(is_systematic(&r));
        assert_eq!(r, Design::from_lists(2, 1, [vec![1], vec![2]]).unwrap());
    }
}
