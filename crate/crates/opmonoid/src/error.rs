use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("relation is not square")]
    NotSquare,
    #[error("not reflexive at {0}")]
    NotReflexive(usize),
    #[error("not antisymmetric: {0} <= {1} <= {0}")]
    NotAntisymmetric(usize, usize),
    #[error("not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(usize, usize, usize),
    #[error("cover list contains a cycle through {0}")]
    Cycle(usize),
    #[error("point {0} out of range for a poset of size {1}")]
    OutOfRange(usize, usize),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("bad range: {0} must be below {1}")]
    BadRange(i64, i64),
    #[error("relation is not a partial order")]
    NotAPartialOrder,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("empty word")]
    EmptyWord,
    #[error("unknown letter {0:?}")]
    UnknownLetter(char),
    #[error("invalid parameters m={0}, n={1}: need 2 <= m <= n")]
    BadParams(u32, u32),
    #[error("{0} is not a normal form for these parameters")]
    NotNormal(String),
    #[error("parameter mismatch")]
    ParamMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("{0} is not monotone")]
    NotMonotone(&'static str),
    #[error("s is not pointwise below t")]
    NotDominated,
    #[error("{0} does not satisfy its periodicity law")]
    NotPeriodic(&'static str),
    #[error("not a closure operator")]
    NotAClosure,
    #[error("not an interior operator")]
    NotAnInterior,
    #[error("map violates the Galois law at ({0}, {1})")]
    NotGalois(usize, usize),
    #[error("partition is not in the catalog")]
    Unclassified,
    #[error("precondition failed: {0}")]
    PreconditionFailed(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("missing meet or join of {0} and {1}")]
    NotALattice(usize, usize),
    #[error("distributivity fails at ({0}, {1}, {2})")]
    NotDistributive(usize, usize, usize),
}

#[derive(Debug, Error)]
pub enum DataError {
    #[error("io error reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed json in {path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error("bad catalog: {0}")]
    Catalog(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("not a Hasse diagram: {0}")]
    NotAHasseDiagram(String),
    #[error("unknown node {0:?}")]
    UnknownNode(String),
}
