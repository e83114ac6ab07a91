use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("point set of size {needed} exceeds the degree cap {cap}")]
    DegreeCap { needed: usize, cap: usize },

    #[error("images do not define a permutation (point {point} -> {image})")]
    NotAPermutation { point: usize, image: usize },

    #[error("a group needs at least one generator")]
    EmptyGenerators,

    #[error("element {element} is not a member of the group")]
    NotAMember { element: String },

    #[error("subgroup of order {sub} is not normal in the parent of order {parent}")]
    NotNormal { sub: u64, parent: u64 },

    #[error(
        "uncertified: {what} needs order {size} <= cap {cap}; \
         use the socle shortcut or raise the cap"
    )]
    CapExceeded {
        what: &'static str,
        size: u64,
        cap: u64,
    },

    #[error("time budget exceeded during {what}")]
    TimeBudget { what: &'static str },

    #[error("generator images do not define a homomorphism")]
    NotAHomomorphism,

    #[error("action images do not define an automorphism of the normal factor")]
    NotAnAutomorphism,

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("catalog schema violation at {pointer}: {message}")]
    Catalog { pointer: String, message: String },

    #[error("catalog entry {label}: {message}")]
    CatalogEntry { label: String, message: String },

    #[error("unknown case combination: {0}")]
    UnknownCase(String),

    #[error("case {id} is not verified; aggregation blocked")]
    UnverifiedCase { id: String },

    #[error("group type {group} is not admissible over {field}")]
    InvalidTypeForField { group: String, field: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
