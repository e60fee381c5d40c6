//! Size bookkeeping for the recursive constructions.
//!
//! A family for `j >= 3` defectives starts at an anchor design on `j` items
//! with `j` tests and squares the item count at every level:
//! `size(m²) = size(m) + best(m, j-1)²`. Families `j = 1, 2` have constant
//! size. A design feasible for `j` defectives is feasible for any `k <= j`,
//! so the best size for `(n, k)` is the minimum over families `j` in
//! `k..=n`. Every family is at least `j` tests large, which bounds the scan.

use std::collections::HashMap;

/// Chosen family and level for building a design for `(n, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Plan {
    /// Family (number of defectives the built design handles).
    pub family: u32,
    /// Size bound of the design built by this plan.
    pub size: u128,
}

#[derive(Default)]
pub(crate) struct Tower {
    memo: HashMap<(u64, u32), Plan>,
}

impl Tower {
    pub fn new() -> Self {
        Self::default()
    }

    /// Item counts `j, j², j⁴, ...` up to and including the first `>= n`.
    pub fn levels(family: u32, n: u64) -> Vec<u64> {
        let mut levels = vec![u64::from(family)];
        if family < 2 {
            return levels;
        }
        while *levels.last().unwrap() < n {
            let m = *levels.last().unwrap();
            levels.push(m.saturating_mul(m));
        }
        levels
    }

    /// Size bound of family `family` at `n` items (requires `n >= family`).
    pub fn family_size(&mut self, n: u64, family: u32) -> u128 {
        match family {
            1 => 1,
            2 => 2,
            _ => {
                let levels = Self::levels(family, n);
                let mut size = u128::from(family);
                for &m in &levels[..levels.len() - 1] {
                    let g = self.best(m, family - 1).size;
                    size = size.saturating_add(g.saturating_mul(g));
                }
                size
            }
        }
    }

    /// Smallest-size family for `(n, k)`; ties go to the smaller family.
    pub fn best(&mut self, n: u64, k: u32) -> Plan {
        let k = k.max(1);
        let k = if u64::from(k) > n { n as u32 } else { k };
        if let Some(plan) = self.memo.get(&(n, k)) {
            return *plan;
        }
        let mut plan = Plan {
            family: k,
            size: self.family_size(n, k),
        };
        let mut j = k + 1;
        while u64::from(j) <= n && u128::from(j) < plan.size {
            let size = self.family_size(n, j);
            if size < plan.size {
                plan = Plan { family: j, size };
            }
            j += 1;
        }
        self.memo.insert((n, k), plan);
        plan
    }
}
