//! Running tests against a defective set and decoding the outputs.

use std::fmt;

use crate::design::{DefectiveSet, Design, ItemId, TestSeq};
use crate::error::Result;

/// Outputs of every test of a design, in test order. `None` is the null
/// output (rendered as `0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OutputVector(Vec<Option<ItemId>>);

impl OutputVector {
    pub fn new(outputs: Vec<Option<ItemId>>) -> Self {
        OutputVector(outputs)
    }

    pub fn outputs(&self) -> &[Option<ItemId>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Plain integers with 0 standing for the null output.
    pub fn raw(&self) -> Vec<u32> {
        self.0.iter().map(|o| o.map_or(0, ItemId::get)).collect()
    }
}

impl fmt::Display for OutputVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.raw().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

/// First item of `test` that is defective, if any.
pub fn run_test(test: &TestSeq, defectives: &DefectiveSet) -> Option<ItemId> {
    test.items()
        .iter()
        .copied()
        .find(|&i| defectives.contains(i))
}

/// Output vector of `design` for the given defective set.
pub fn run_design(design: &Design, defectives: &DefectiveSet) -> Result<OutputVector> {
    design.check_defectives(defectives)?;
    Ok(OutputVector(
        design
            .tests()
            .iter()
            .map(|t| run_test(t, defectives))
            .collect(),
    ))
}

/// Distinct non-null outputs. Recovers the defective set exactly whenever
/// the design is feasible.
pub fn decode(outputs: &OutputVector) -> DefectiveSet {
    outputs.0.iter().flatten().copied().collect()
}
