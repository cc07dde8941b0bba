use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no image given for generator x{0}")]
    MissingImage(u32),

    #[error("cannot parse word token `{token}`: {reason}")]
    WordParse { token: String, reason: String },

    #[error("degree bounds differ: {0} vs {1}")]
    DegreeBoundMismatch(usize, usize),

    #[error("monomial of length {len} is not representable below degree bound {bound}")]
    MonomialTooLong { len: usize, bound: usize },

    #[error("invalid degree bound {0}: must be at least 2")]
    DegreeBoundTooSmall(usize),

    #[error("invalid index `{0}`")]
    IndexParse(String),

    #[error("index {index} uses component {component}, but the link has {m} components")]
    ComponentOutOfRange { index: String, component: u32, m: usize },

    #[error("index must have weight at least 2, got {0}")]
    IndexTooShort(usize),

    #[error("weight {weight} exceeds what depth {depth} supports (need weight <= depth - 1)")]
    WeightExceedsDepth { weight: usize, depth: usize },

    #[error("invalid longitude system: {0}")]
    InvalidLongitudes(String),

    #[error("malformed PD code{}: {reason}", crossing.map(|c| format!(" at crossing {c}")).unwrap_or_default())]
    MalformedPd { crossing: Option<usize>, reason: String },

    #[error("cannot parse braid: {0}")]
    BraidParse(String),

    #[error("braid is not pure: strand {strand} ends at position {ends_at}")]
    NotPureBraid { strand: usize, ends_at: usize },

    #[error("systems are incompatible: {0}")]
    Incompatible(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("index {0} must only use components 1 and 2")]
    NotTwoComponentIndex(String),

    #[error("precondition violated: mu-bar({index}) does not vanish below weight {weight}")]
    LowerWeightNonvanishing { index: String, weight: usize },

    #[error("cannot parse bracket at position {pos}: {reason}")]
    BracketParse { pos: usize, reason: String },

    #[error("bracket weight {weight} is outside the supported range {min}..={max}")]
    BracketWeight { weight: usize, min: usize, max: usize },

    #[error("massey sum needs first and last index to differ, got {0}")]
    RepeatedEndpoint(String),

    #[error("the two lower-central-quotient criteria disagree (mu-bar route: {mu_route}, relator route: {relator_route})")]
    RouteDisagreement { mu_route: bool, relator_route: bool },
}

impl Error {
    /// True for errors caused by unreadable input text (as opposed to a
    /// well-formed input that violates a precondition).
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::WordParse { .. }
                | Error::IndexParse(_)
                | Error::MalformedPd { .. }
                | Error::BraidParse(_)
                | Error::BracketParse { .. }
                | Error::InvalidLongitudes(_)
        )
    }
}
