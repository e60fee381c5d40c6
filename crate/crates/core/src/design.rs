//! Items, cascaded tests, designs and defective sets.
//!
//! Items are the integers `1..=N`. The value 0 never names an item; a test
//! that sees no defective reports `None`, rendered as `0` in text output.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};

/// One item, numbered from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ItemId(u32);

impl ItemId {
    pub fn new(value: u32) -> Result<Self> {
        if value == 0 {
            Err(Error::ZeroItem)
        } else {
            Ok(ItemId(value))
        }
    }

    pub const fn get(self) -> u32 {
        self.0
    }

    /// Zero-based index, handy for position tables.
    pub(crate) const fn index(self) -> usize {
        self.0 as usize - 1
    }

    pub(crate) const fn from_index(index: usize) -> Self {
        ItemId(index as u32 + 1)
    }
}

impl fmt::Display for ItemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An ordered sequence of distinct items; the outcome of running it is the
/// first defective item in sequence order.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TestSeq(Vec<ItemId>);

impl TestSeq {
    pub fn new(items: Vec<ItemId>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(items.len());
        for &item in &items {
            if !seen.insert(item) {
                return Err(Error::DuplicateItem(item.get()));
            }
        }
        Ok(TestSeq(items))
    }

    pub fn from_items<I: IntoIterator<Item = u32>>(items: I) -> Result<Self> {
        let items = items
            .into_iter()
            .map(ItemId::new)
            .collect::<Result<Vec<_>>>()?;
        Self::new(items)
    }

    pub(crate) fn from_vec_unchecked(items: Vec<ItemId>) -> Self {
        TestSeq(items)
    }

    /// `(1, 2, ..., n)`.
    pub fn identity(n: u32) -> Self {
        TestSeq((1..=n).map(ItemId).collect())
    }

    /// `(n, n-1, ..., 1)`.
    pub fn reversed(n: u32) -> Self {
        TestSeq((1..=n).rev().map(ItemId).collect())
    }

    pub fn items(&self) -> &[ItemId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The first item of the test.
    pub fn leader(&self) -> Option<ItemId> {
        self.0.first().copied()
    }

    pub fn contains(&self, item: ItemId) -> bool {
        self.0.contains(&item)
    }

    pub fn max_item(&self) -> Option<ItemId> {
        self.0.iter().copied().max()
    }

    /// True when the test lists every item of `1..=n` exactly once.
    pub fn is_permutation_of(&self, n: u32) -> bool {
        if self.0.len() != n as usize {
            return false;
        }
        let mut seen = vec![false; n as usize];
        for item in &self.0 {
            match seen.get_mut(item.index()) {
                Some(slot) if !*slot => *slot = true,
                _ => return false,
            }
        }
        true
    }

    pub fn without(&self, item: ItemId) -> TestSeq {
        TestSeq(self.0.iter().copied().filter(|&x| x != item).collect())
    }

    pub fn raw(&self) -> Vec<u32> {
        self.0.iter().map(|i| i.get()).collect()
    }
}

impl fmt::Display for TestSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, item) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{item}")?;
        }
        f.write_str(")")
    }
}

/// A set of at most `K` defective items.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DefectiveSet(BTreeSet<ItemId>);

impl DefectiveSet {
    pub fn new() -> Self {
        DefectiveSet(BTreeSet::new())
    }

    pub fn from_items<I: IntoIterator<Item = u32>>(items: I) -> Result<Self> {
        items
            .into_iter()
            .map(ItemId::new)
            .collect::<Result<BTreeSet<_>>>()
            .map(DefectiveSet)
    }

    pub fn contains(&self, item: ItemId) -> bool {
        self.0.contains(&item)
    }

    pub fn insert(&mut self, item: ItemId) -> bool {
        self.0.insert(item)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = ItemId> + '_ {
        self.0.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<ItemId> {
        self.0.iter().copied().collect()
    }

    pub fn raw(&self) -> Vec<u32> {
        self.0.iter().map(|i| i.get()).collect()
    }
}

impl FromIterator<ItemId> for DefectiveSet {
    fn from_iter<T: IntoIterator<Item = ItemId>>(iter: T) -> Self {
        DefectiveSet(iter.into_iter().collect())
    }
}

impl fmt::Display for DefectiveSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, item) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{item}")?;
        }
        f.write_str("}")
    }
}

/// A non-adaptive design: an ordered list of tests over items `1..=n_items`,
/// intended to identify up to `max_defectives` defectives.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Design {
    n_items: u32,
    max_defectives: u32,
    tests: Vec<TestSeq>,
}

impl Design {
    pub fn new(n_items: u32, max_defectives: u32, tests: Vec<TestSeq>) -> Result<Self> {
        check_params(n_items, max_defectives)?;
        for test in &tests {
            if let Some(max) = test.max_item() {
                if max.get() > n_items {
                    return Err(Error::ItemOutOfRange {
                        item: max.get(),
                        n_items,
                    });
                }
            }
        }
        Ok(Design {
            n_items,
            max_defectives,
            tests,
        })
    }

    /// Builds a design from plain integer lists.
    pub fn from_lists<T, I>(n_items: u32, max_defectives: u32, lists: T) -> Result<Self>
    where
        T: IntoIterator<Item = I>,
        I: IntoIterator<Item = u32>,
    {
        let tests = lists
            .into_iter()
            .map(TestSeq::from_items)
            .collect::<Result<Vec<_>>>()?;
        Self::new(n_items, max_defectives, tests)
    }

    pub(crate) fn from_parts_unchecked(
        n_items: u32,
        max_defectives: u32,
        tests: Vec<TestSeq>,
    ) -> Self {
        Design {
            n_items,
            max_defectives,
            tests,
        }
    }

    pub fn n_items(&self) -> u32 {
        self.n_items
    }

    pub fn max_defectives(&self) -> u32 {
        self.max_defectives
    }

    pub fn tests(&self) -> &[TestSeq] {
        &self.tests
    }

    pub fn len(&self) -> usize {
        self.tests.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tests.is_empty()
    }

    /// Sum of test lengths.
    pub fn total_len(&self) -> usize {
        self.tests.iter().map(TestSeq::len).sum()
    }

    pub fn with_max_defectives(mut self, max_defectives: u32) -> Result<Self> {
        check_params(self.n_items, max_defectives)?;
        self.max_defectives = max_defectives;
        Ok(self)
    }

    /// Appends a test, keeping the item-range invariant.
    pub fn push(&mut self, test: TestSeq) -> Result<()> {
        if let Some(max) = test.max_item() {
            if max.get() > self.n_items {
                return Err(Error::ItemOutOfRange {
                    item: max.get(),
                    n_items: self.n_items,
                });
            }
        }
        self.tests.push(test);
        Ok(())
    }

    /// Removes exact duplicate tests, keeping first occurrences in order.
    pub fn dedupe_tests(&self) -> Design {
        let mut seen = HashSet::with_capacity(self.tests.len());
        let tests = self
            .tests
            .iter()
            .filter(|t| seen.insert(*t))
            .cloned()
            .collect();
        Design { tests, ..*self }
    }

    /// Drops empty tests.
    pub fn without_empty_tests(&self) -> Design {
        Design {
            tests: self
                .tests
                .iter()
                .filter(|t| !t.is_empty())
                .cloned()
                .collect(),
            ..*self
        }
    }

    /// Keeps only items `1..=m` in every test (order preserved), then drops
    /// empty and duplicate tests.
    ///
    /// A design feasible for `(N, K)` stays feasible for `(m, min(K, m))`:
    /// the feasibility condition only ever compares items of one defective
    /// set, and those all survive the restriction. `max_defectives` is
    /// lowered to `m` when it exceeds it.
    pub fn restrict(&self, m: u32) -> Result<Design> {
        if m < 1 {
            return Err(Error::InvalidParameters(
                "restriction size must be at least 1".into(),
            ));
        }
        if m > self.n_items {
            return Err(Error::InvalidParameters(format!(
                "cannot restrict {} items to {m}",
                self.n_items
            )));
        }
        let tests = self
            .tests
            .iter()
            .map(|t| TestSeq(t.0.iter().copied().filter(|i| i.get() <= m).collect()))
            .collect();
        let restricted = Design {
            n_items: m,
            max_defectives: self.max_defectives.min(m),
            tests,
        };
        Ok(restricted.without_empty_tests().dedupe_tests())
    }

    /// True when every test is a full permutation of `1..=n_items`.
    pub fn is_permutation_design(&self) -> bool {
        self.tests.iter().all(|t| t.is_permutation_of(self.n_items))
    }

    /// Test sequences as sorted plain lists; order-insensitive comparison.
    pub fn test_set(&self) -> BTreeSet<Vec<u32>> {
        self.tests.iter().map(TestSeq::raw).collect()
    }

    /// Checks that `defectives` is admissible for this design.
    pub fn check_defectives(&self, defectives: &DefectiveSet) -> Result<()> {
        if let Some(max) = defectives.iter().last() {
            if max.get() > self.n_items {
                return Err(Error::ItemOutOfRange {
                    item: max.get(),
                    n_items: self.n_items,
                });
            }
        }
        if defectives.len() > self.max_defectives as usize {
            return Err(Error::TooManyDefectives {
                got: defectives.len(),
                max: self.max_defectives,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Design {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={} K={} {{", self.n_items, self.max_defectives)?;
        for (i, t) in self.tests.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("}")
    }
}

fn check_params(n_items: u32, max_defectives: u32) -> Result<()> {
    if n_items < 1 {
        return Err(Error::InvalidParameters("N must be at least 1".into()));
    }
    if max_defectives < 1 || max_defectives > n_items {
        return Err(Error::InvalidParameters(format!(
            "K must satisfy 1 <= K <= N, got K={max_defectives}, N={n_items}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn item_zero_is_rejected() {
        assert_eq!(ItemId::new(0), Err(Error::ZeroItem));
        assert_eq!(TestSeq::from_items([1, 0]), Err(Error::ZeroItem));
    }

    #[test]
    fn duplicate_items_in_test_rejected() {
        assert_eq!(TestSeq::from_items([1, 2, 1]), Err(Error::DuplicateItem(1)));
    }

    #[test]
    fn design_validates_range_and_k() {
        assert!(matches!(
            Design::from_lists(3, 1, [vec![1, 4]]),
            Err(Error::ItemOutOfRange {
                item: 4,
                n_items: 3
            })
        ));
        assert!(Design::from_lists(3, 4, [vec![1]]).is_err());
        assert!(Design::from_lists(3, 0, [vec![1]]).is_err());
        assert!(Design::from_lists(3, 1, [Vec::<u32>::new()]).is_ok());
    }

    #[test]
    fn dedupe_keeps_first_occurrence() {
        let d = Design::from_lists(2, 1, [vec![1, 2], vec![1, 2], vec![2, 1]]).unwrap();
        let expected = Design::from_lists(2, 1, [vec![1, 2], vec![2, 1]]).unwrap();
        assert_eq!(d.dedupe_tests(), expected);
        assert_eq!(expected.dedupe_tests(), expected);
    }

    #[test]
    fn restrict_nine_item_design_to_four() {
        let r = squared_nine().restrict(4).unwrap();
        let expected = Design::from_lists(
            4,
            3,
            [
                vec![1, 2, 3, 4],
                vec![4, 3, 2, 1],
                vec![3, 2, 1, 4],
                vec![4, 1, 2, 3],
                vec![4, 2, 1, 3],
            ],
        )
        .unwrap();
        assert_eq!(r, expected);
    }

    #[test]
    fn restrict_to_full_size_only_dedupes() {
        let d = squared_nine();
        assert_eq!(d.restrict(9).unwrap(), d.dedupe_tests());
    }

    #[test]
    fn restrict_single_test_to_one_item() {
        let d = Design::from_lists(9, 1, [1..=9]).unwrap();
        let r = d.restrict(1).unwrap();
        assert_eq!(r, Design::from_lists(1, 1, [vec![1]]).unwrap());
    }

    #[test]
    fn restrict_rejects_zero_and_growth() {
        let d = squared_nine();
        assert!(d.restrict(0).is_err());
        assert!(d.restrict(10).is_err());
        assert_eq!(d.restrict(2).unwrap().max_defectives(), 2);
    }

    #[test]
    fn permutation_detection() {
        assert!(TestSeq::from_items([3, 1, 2]).unwrap().is_permutation_of(3));
        assert!(!TestSeq::from_items([3, 1]).unwrap().is_permutation_of(3));
        assert!(!TestSeq::from_items([4, 1, 2]).unwrap().is_permutation_of(3));
    }

    #[test]
    fn check_defectives_limits() {
        let d = squared_nine();
        assert!(d
            .check_defectives(&DefectiveSet::from_items([1, 2, 3]).unwrap())
            .is_ok());
        assert!(matches!(
            d.check_defectives(&DefectiveSet::from_items([1, 2, 3, 4]).unwrap()),
            Err(Error::TooManyDefectives { got: 4, max: 3 })
        ));
        assert!(matches!(
            d.check_defectives(&DefectiveSet::from_items([10]).unwrap()),
            Err(Error::ItemOutOfRange { item: 10, .. })
        ));
    }

    #[test]
    fn display_forms() {
        let t = TestSeq::from_items([3, 5, 2]).unwrap();
        assert_eq!(t.to_string(), "(3,5,2)");
        let s = DefectiveSet::from_items([5, 2]).unwrap();
        assert_eq!(s.to_string(), "{2,5}");
    }
}
