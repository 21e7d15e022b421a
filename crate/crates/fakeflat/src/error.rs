//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// The algebraic law that a failed eager check refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    Identity,
    Inverse,
    Associativity,
    Closure,
    Homomorphism,
    ActionIdentity,
    ActionCompatibility,
    ActionAutomorphism,
    /// First crossed-module axiom: the boundary map is equivariant,
    /// `d(g > h) = g d(h) g^-1`.
    Equivariance,
    /// Second crossed-module axiom (Peiffer identity):
    /// `d(h1) > h2 = h1 h2 h1^-1`.
    Peiffer,
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Axiom::Identity => "identity",
            Axiom::Inverse => "inverse",
            Axiom::Associativity => "associativity",
            Axiom::Closure => "closure",
            Axiom::Homomorphism => "homomorphism",
            Axiom::ActionIdentity => "action identity",
            Axiom::ActionCompatibility => "action compatibility",
            Axiom::ActionAutomorphism => "action automorphism",
            Axiom::Equivariance => "equivariance (first crossed-module axiom)",
            Axiom::Peiffer => "Peiffer identity (second crossed-module axiom)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("axiom violation ({axiom}), witness {witness:?}")]
    AxiomViolation { axiom: Axiom, witness: Vec<usize> },

    #[error("kernel of the boundary map is not central in H: h={h} does not commute with f={f}")]
    KernelNotCentral { h: usize, f: usize },

    #[error("homomorphism is not surjective: target element {missing} has no preimage")]
    NotSurjective { missing: usize },

    #[error("enumeration of {needed} states exceeds the cap of {cap}")]
    SizeLimit { needed: u128, cap: u128 },

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("edge or vertex {0} is not internal to the planar region")]
    NotInternal(usize),

    #[error("not mergeable: {0}")]
    NotMergeable(String),

    #[error("the two positions coincide")]
    SamePosition,

    #[error("edge {0} does not separate two distinct faces")]
    NotSeparating(usize),

    #[error("boundary mismatch: {out_of_first} out components vs {in_of_second} in components")]
    BoundaryMismatch {
        out_of_first: usize,
        in_of_second: usize,
    },

    #[error("missing colour for cell {0}")]
    MissingColour(usize),

    #[error("unknown surface kind {0:?}")]
    UnknownKind(String),

    #[error("arity mismatch: composing a map out of {right_out} boundary circles into one expecting {left_in}")]
    ArityMismatch { left_in: usize, right_out: usize },

    #[error("matrices were built over different crossed modules")]
    ModuleMismatch,

    #[error("cylinder composition identity violated at (g={g}, j={j})")]
    IdentityViolation { g: usize, j: usize },

    #[error("oracle and fast counts diverge: oracle {oracle}, fast {fast}")]
    CountDivergence { oracle: u128, fast: u128 },

    #[error("crossed-module components do not fit together: {0}")]
    ComponentMismatch(String),

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::UnknownFixture(_) | Error::UnknownKind(_) => 3,
            Error::SizeLimit { .. } => 4,
            _ => 5,
        }
    }
}
