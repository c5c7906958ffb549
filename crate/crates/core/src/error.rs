use std::fmt;

use crate::textio::ParseError;

/// Which groupoid axiom a table failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// `∃g(hl)` iff `∃(gh)l`, and the two agree.
    Associativity,
    /// `∃g(hl)` iff `∃gh` and `∃hl`.
    Definedness,
    /// Unique `d(g)`, `r(g)` with `g d(g) = g = r(g) g`.
    Units,
    /// Some `g⁻¹` with `g⁻¹g = d(g)` and `gg⁻¹ = r(g)`.
    Inverses,
    /// `∃gh` iff `d(g) = r(h)`.
    Composability,
}

impl Axiom {
    pub fn id(self) -> &'static str {
        match self {
            Axiom::Associativity => "A1",
            Axiom::Definedness => "A2",
            Axiom::Units => "A3",
            Axiom::Inverses => "A4",
            Axiom::Composability => "C",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// First failing axiom found by the validator, with the element tokens that
/// witness the failure (a triple, a pair or a single element).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: Vec<String>,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "axiom {} fails at ({})",
            self.axiom,
            self.witness.join(",")
        )
    }
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0}")]
    Axiom(AxiomViolation),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("element identifiers must be nonempty")]
    EmptyIdentifier,
    #[error("index {index} outside carrier of size {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("`{0}` is not an identity")]
    NotAnIdentity(String),
    #[error("set is empty")]
    EmptySet,
    #[error("intersection is empty")]
    EmptyIntersection,
    #[error("subsets belong to different groupoids")]
    ParentMismatch,
    #[error("set is not a subgroupoid: {0}")]
    NotASubgroupoid(String),
    #[error("subgroupoid is not wide")]
    NotWide,
    #[error("subgroupoid is not normal")]
    NotNormal,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("coset product is not well defined: {0}")]
    IllDefinedQuotient(String),
    #[error("map is not a function into the target: {0}")]
    NotAFunction(String),
    #[error("map is not a homomorphism")]
    NotHomomorphism,
    #[error("map is not a strong homomorphism")]
    NotStrong,
    #[error("map is not surjective")]
    NotSurjective,
    #[error("kernel is not a normal subgroupoid")]
    NotNormalKernel,
    #[error("`{0}` and `{1}` do not lie in a common isotropy group")]
    NotCoIsotropic(String, String),
    #[error("target groupoid is not abelian")]
    TargetNotAbelian,
    #[error("isotropy group of order {order} exceeds enumeration bound {bound}")]
    BoundExceeded { order: usize, bound: usize },
    #[error("theorem check failed: {0}")]
    TheoremViolated(String),
    #[error("builder: {0}")]
    Builder(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
