use thiserror::Error;

use crate::model::AgentId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid agent name {0:?}: must be nonempty with no whitespace or ':'")]
    InvalidName(String),
    #[error("duplicate agent: {0}")]
    DuplicateAgent(AgentId),
    #[error("unknown agent in preference list: {0}")]
    UnknownAgentInPref(String),
    #[error("{owner} lists {entry} more than once")]
    DuplicateInPref { owner: AgentId, entry: String },
    #[error("more than one preference list for {0}")]
    DuplicatePrefList(AgentId),
    #[error("social edge joins two agents of the same side: {0} {1}")]
    SelfSideEdge(String, String),
    #[error("unknown agent in social edge: {0}")]
    UnknownAgentInEdge(String),
    #[error("unknown agent: {0}")]
    UnknownAgent(AgentId),
    #[error("{0} and {1} are on the same side")]
    SameSide(AgentId, AgentId),
    #[error("{0} is matched more than once")]
    AlreadyMatched(AgentId),
    #[error("pair ({0}, {1}) is out of range for the instance")]
    PairOutOfRange(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("man {0} has already been given a second chance")]
    AlreadyPromoted(String),
    #[error("altered order for woman {0} is not a permutation of her acceptable men")]
    InvalidWomanOrder(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {agents} agents, exact search is limited to {limit}")]
    InstanceTooLarge { agents: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid vertex name {0:?}")]
    InvalidName(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("self-loop on vertex {0}")]
    SelfLoop(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("matching is not socially stable on the reduced instance")]
    NotSociallyStable,
    #[error("normalization did not reach a fixpoint: {0}")]
    NormalizationDiverged(String),
    #[error("vertices {0} and {1} are adjacent")]
    NotIndependent(String, String),
    #[error("graph has {vertices} vertices, exhaustive search is limited to {limit}")]
    GraphTooLarge { vertices: usize, limit: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("matching does not belong to the reduced instance")]
    ForeignMatching,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl ParseError {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax { line, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown fixture {0:?} (expected one of FIG1, TIGHT, GADGET, K3RED)")]
pub struct UnknownFixture(pub String);
