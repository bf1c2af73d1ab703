//! Finite and bounded models of permutative categories, Γ-categories,
//! the Leinster category and Segal nerves, together with exhaustive
//! checkers for the identities relating them.
//!
//! Everything infinite is represented by a bounded presentation: all
//! objects up to a size bound, with the tensor product partial. Checkers
//! quantify over that fragment only and report how much they looked at.

pub mod fincat;
pub mod freeperm;
pub mod gammacat;
pub mod gammaskel;
pub mod harness;
pub mod leinster;
pub mod permcat;
pub mod segalnerve;

use thiserror::Error;

pub use fincat::{CheckReport, FinCategory, Functor, Mor, NatTrans, Ob, Violation};

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("lifting square does not commute: {0}")]
    NonCommutingSquare(String),
    #[error("enumeration budget of {budget} exceeded while {what}")]
    BudgetExceeded { what: String, budget: usize },
    #[error("truncation too tight: {0}")]
    Truncation(String),
    #[error("Segal condition fails: {0}")]
    NotSegal(String),
    #[error("unknown structural map kind `{0}`")]
    UnknownKind(String),
    #[error("colimit not finitely modeled: {0}")]
    NotFinitelyModeled(String),
    #[error("coherence failure: {0}")]
    Coherence(String),
    #[error("schema violation at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("unknown corpus entry `{0}`")]
    UnknownCorpus(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Default cap on search nodes for exhaustive enumerations.
pub const DEFAULT_BUDGET: usize = 5_000_000;
