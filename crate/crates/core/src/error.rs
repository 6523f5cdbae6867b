use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid quantile `{0}`: expected p/q in lowest terms with 0 <= p <= q, q > 0")]
    InvalidQuantile(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid allocation: {0}")]
    InvalidAllocation(String),

    #[error("agent index {agent} out of range for {agents} agents")]
    AgentOutOfRange { agent: usize, agents: usize },

    #[error("item index {item} out of range for {items} items")]
    ItemOutOfRange { item: usize, items: usize },

    #[error("{operation} requires a {expected} instance")]
    KindMismatch {
        operation: &'static str,
        expected: &'static str,
    },

    #[error("balanced allocations need the agent count ({agents}) to divide the item count ({items})")]
    NotDivisible { agents: usize, items: usize },

    #[error("{0} requires binary (0/1) values")]
    NotBinary(&'static str),

    #[error("{0} requires identical valuations across agents")]
    NotIdentical(&'static str),

    #[error("{0} requires every agent to share one quantile")]
    HeterogeneousQuantiles(&'static str),

    #[error("{operation} requires quantile {expected}, found {found}")]
    QuantileMismatch {
        operation: &'static str,
        expected: String,
        found: String,
    },

    #[error("intractable quantile {0}: exact ESW is only supported for tau in {{0, 1/3, 1}} and t/(t+1)")]
    IntractableQuantile(String),

    #[error("no agent has quantile 1")]
    NoOptimisticAgent,

    #[error("{operation} needs at least {required} agents, found {found}")]
    TooFewAgents {
        operation: &'static str,
        required: usize,
        found: usize,
    },

    #[error("enumeration budget exceeded: {count} candidates > cap {budget}")]
    BudgetExceeded { count: u128, budget: u64 },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("operation requires a bipartite-annotated graph")]
    NotBipartite,

    #[error("approximation bound violated for seed {seed}: {detail}")]
    BoundViolation { seed: u64, detail: String },

    #[error("unsupported combination: {0}")]
    Unsupported(String),
}
