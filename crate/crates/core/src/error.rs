use thiserror::Error;

use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("axiom {axiom} violated at {witness:?}")]
    AxiomViolation { axiom: String, witness: Vec<usize> },

    #[error("product is not associative at {0:?}")]
    NotAssociative([usize; 3]),

    #[error("semigroup is not regular: element {0} has no inverse")]
    NotRegular(usize),

    #[error("biordered set is not regular: sandwich set S({0}, {1}) is empty")]
    NotRegularBiorder(usize, usize),

    #[error("sequence is not an E-path: {0} and {1} are neither R- nor L-related")]
    NotAPath(usize, usize),

    #[error("empty E-path")]
    EmptyPath,

    #[error("chains are not composable: last entry {0} differs from first entry {1}")]
    NotComposable(usize, usize),

    #[error("groupoid closure exceeded {0} morphisms")]
    ClosureBoundExceeded(usize),

    #[error("malformed composition: {0}")]
    MalformedComposition(String),

    #[error("no restriction of morphism {morphism} to object {object}")]
    NoRestriction { object: usize, morphism: usize },

    #[error("morphism {0} has no normal factorization")]
    NoFactorization(usize),

    #[error("no transpose for morphism {0}")]
    NoTranspose(usize),

    #[error("morphism {0} has {1} transpose candidates")]
    NonUniqueTranspose(usize, usize),

    #[error("structure fails its axioms: {0}")]
    Invalid(Report),

    #[error("size bound exceeded: {0}")]
    SizeBound(String),

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),

    #[error("json: {0}")]
    Json(String),

    #[error("io: {0}")]
    Io(String),
}

impl Error {
    /// A stable snake-case name for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MalformedTable(_) => "malformed_table",
            Error::AxiomViolation { .. } => "axiom_violation",
            Error::NotAssociative(_) => "not_associative",
            Error::NotRegular(_) => "not_regular",
            Error::NotRegularBiorder(..) => "not_regular_biorder",
            Error::NotAPath(..) => "not_a_path",
            Error::EmptyPath => "empty_path",
            Error::NotComposable(..) => "not_composable",
            Error::ClosureBoundExceeded(_) => "closure_bound_exceeded",
            Error::MalformedComposition(_) => "malformed_composition",
            Error::NoRestriction { .. } => "no_restriction",
            Error::NoFactorization(_) => "no_factorization",
            Error::NoTranspose(_) => "no_transpose",
            Error::NonUniqueTranspose(..) => "non_unique_transpose",
            Error::Invalid(_) => "invalid",
            Error::SizeBound(_) => "size_bound",
            Error::UnknownFixture(_) => "unknown_fixture",
            Error::Json(_) => "json",
            Error::Io(_) => "io",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
