use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cap exceeded: {what} is {actual}, limit {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("subgroup is not central")]
    NotCentral,

    #[error("identification map is not an isomorphism")]
    NotIso,

    #[error("element set is not a subgroup")]
    NotSubgroup,

    #[error("generator {index} does not lie in the span of the ambient generators")]
    Membership { index: usize },

    #[error("map does not respect the relations of its domain (generator {generator})")]
    IllFormedHom { generator: usize },

    #[error("infinite quotient: zero invariant factor encountered")]
    InfiniteQuotient,

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("p = 2 is not supported: the commutator-form fast path and central-type construction need p odd")]
    EvenPrimeUnsupported,

    #[error("group is not a p-group")]
    NotPGroup,

    #[error("no generating set of size at most {0} found")]
    GeneratorSearchFailed(usize),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn cap(what: &'static str, limit: usize, actual: usize) -> Self {
        Error::CapExceeded {
            what,
            limit,
            actual,
        }
    }
}
