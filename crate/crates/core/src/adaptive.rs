//! Adaptive identification: each query lists every item not yet known to be
//! defective, so each answer reveals a new defective or ends the search.

use crate::design::{DefectiveSet, ItemId, TestSeq};
use crate::error::{Error, Result};
use crate::outcome::run_test;

/// Something that answers cascaded tests against a fixed hidden defective set.
pub trait CascadeOracle {
    /// First defective item of `test`, or `None`.
    fn answer(&mut self, test: &TestSeq) -> Option<ItemId>;

    /// Number of queries answered so far.
    fn queries(&self) -> usize;
}

/// Oracle backed by a known defective set.
#[derive(Debug, Clone)]
pub struct SimulatedOracle {
    hidden: DefectiveSet,
    queries: usize,
}

impl SimulatedOracle {
    pub fn new(hidden: DefectiveSet) -> Self {
        SimulatedOracle { hidden, queries: 0 }
    }
}

impl CascadeOracle for SimulatedOracle {
    fn answer(&mut self, test: &TestSeq) -> Option<ItemId> {
        self.queries += 1;
        run_test(test, &self.hidden)
    }

    fn queries(&self) -> usize {
        self.queries
    }
}

/// One query and its answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub test: TestSeq,
    pub answer: Option<ItemId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptiveOutcome {
    pub defectives: DefectiveSet,
    pub trace: Vec<Query>,
}

/// Runs the adaptive search and keeps every query with its answer.
///
/// Queries list the remaining items in ascending order. The loop stops on a
/// null answer or after `k` defectives are found, so at most `k` queries are
/// issued.
pub fn adaptive_trace(n: u32, k: u32, oracle: &mut dyn CascadeOracle) -> Result<AdaptiveOutcome> {
    if n < 1 || k < 1 {
        return Err(Error::InvalidParameters(format!(
            "need n >= 1 and k >= 1, got n={n}, k={k}"
        )));
    }
    let mut found = DefectiveSet::new();
    let mut trace = Vec::new();
    for _ in 0..k {
        let remaining: Vec<ItemId> = (0..n as usize)
            .map(ItemId::from_index)
            .filter(|&i| !found.contains(i))
            .collect();
        let test = TestSeq::from_vec_unchecked(remaining);
        let answer = oracle.answer(&test);
        trace.push(Query {
            test: test.clone(),
            answer,
        });
        match answer {
            None => break,
            Some(item) if test.contains(item) => {
                found.insert(item);
            }
            Some(item) => return Err(Error::Protocol { answer: item.get() }),
        }
    }
    Ok(AdaptiveOutcome {
        defectives: found,
        trace,
    })
}

/// Identifies the hidden defective set using at most `k` queries.
pub fn adaptive_identify(n: u32, k: u32, oracle: &mut dyn CascadeOracle) -> Result<DefectiveSet> {
    adaptive_trace(n, k, oracle).map(|o| o.defectives)
}
