use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("item ids start at 1; 0 is reserved for the null output")]
    ZeroItem,

    #[error("item {0} appears more than once in a test")]
    DuplicateItem(u32),

    #[error("item {item} is outside 1..={n_items}")]
    ItemOutOfRange { item: u32, n_items: u32 },

    #[error("{got} defectives given, at most {max} allowed")]
    TooManyDefectives { got: usize, max: u32 },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("test is not a permutation of 1..={0}")]
    NotPermutation(u32),

    #[error("test index {index} out of range for a design with {len} tests")]
    TestIndexOutOfRange { index: usize, len: usize },

    #[error("test {0} is empty")]
    EmptyTest(usize),

    #[error("item {0} is not a member of the given set")]
    NotMember(u32),

    #[error("design is not in systematic form")]
    NotSystematic,

    #[error("estimated {required} elementary steps exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("oracle answered {answer}, which is not in the queried test")]
    Protocol { answer: u32 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
