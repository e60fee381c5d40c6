//! Block composition of permutations.

use crate::design::{ItemId, TestSeq};
use crate::error::{Error, Result};

/// Composes two permutations of `1..=n` into a permutation of `1..=n²`.
///
/// Items are split into blocks `A_i = {(i-1)n+1, ..., in}`. Every block is
/// ordered internally by `inner`, and the blocks are concatenated in the
/// order given by `outer`.
///
/// ```
/// use cascade::{compose, TestSeq};
/// let outer = TestSeq::from_items([2, 3, 1]).unwrap();
/// let inner = TestSeq::from_items([1, 3, 2]).unwrap();
/// assert_eq!(compose(&outer, &inner).unwrap().raw(), vec![4, 6, 5, 7, 9, 8, 1, 3, 2]);
/// ```
pub fn compose(outer: &TestSeq, inner: &TestSeq) -> Result<TestSeq> {
    let n = outer.len();
    if inner.len() != n {
        return Err(Error::InvalidParameters(format!(
            "composition needs equal lengths, got {} and {}",
            outer.len(),
            inner.len()
        )));
    }
    let n32 = u32::try_from(n)
        .ok()
        .filter(|&v| v.checked_mul(v).is_some())
        .ok_or_else(|| Error::InvalidParameters(format!("n = {n} is too large to square")))?;
    if !outer.is_permutation_of(n32) || !inner.is_permutation_of(n32) {
        return Err(Error::NotPermutation(n32));
    }
    let mut items = Vec::with_capacity(n * n);
    for block in outer.items() {
        let offset = (block.get() - 1) * n32;
        items.extend(
            inner
                .items()
                .iter()
                .map(|i| ItemId::from_index((offset + i.get() - 1) as usize)),
        );
    }
    Ok(TestSeq::from_vec_unchecked(items))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(items: &[u32]) -> TestSeq {
        TestSeq::from_items(items.iter().copied()).unwrap()
    }

    #[test]
    fn worked_example() {
        let s = compose(&seq(&[2, 3, 1]), &seq(&[1, 3, 2])).unwrap();
        assert_eq!(s.raw(), vec![4, 6, 5, 7, 9, 8, 1, 3, 2]);
    }

    #[test]
    fn identity_and_reversal() {
        for n in 1..=5 {
            let id = TestSeq::identity(n);
            assert_eq!(compose(&id, &id).unwrap(), TestSeq::identity(n * n));
            let rev = TestSeq::reversed(n);
            assert_eq!(compose(&rev, &rev).unwrap(), TestSeq::reversed(n * n));
        }
    }

    #[test]
    fn reversal_squared_n3() {
        let s = compose(&seq(&[3, 2, 1]), &seq(&[3, 2, 1])).unwrap();
        assert_eq!(s.raw(), vec![9, 8, 7, 6, 5, 4, 3, 2, 1]);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(compose(&seq(&[1, 2]), &seq(&[1, 2, 3])).is_err());
        assert_eq!(
            compose(&seq(&[1, 3]), &seq(&[1, 2])),
            Err(Error::NotPermutation(2))
        );
    }
}
