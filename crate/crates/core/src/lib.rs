//! Finite groupoids given by partial composition tables.
//!
//! A [`Groupoid`] is validated once at construction and immutable after
//! that. Subsets and subgroupoids borrow their parent, so operations that
//! combine two of them can check they share one.
//!
//! ```
//! use grpd::{build, center};
//!
//! let s3 = build::symmetric(3).unwrap();
//! let z = center::center(&s3).unwrap();
//! assert_eq!(z.view.tokens(), vec!["e"]);
//! ```

pub mod build;
pub mod center;
pub mod error;
pub mod groupoid;
pub mod inner;
pub mod morphisms;
pub mod normality;
pub mod subgroupoid;
pub mod textio;
pub mod verify;

pub use error::{Axiom, AxiomViolation, Error, Result};
pub use groupoid::{validate, Elem, ElemSet, Groupoid, IsotropyGroup, RawTable};
pub use morphisms::GroupoidMap;
pub use normality::Quotient;
pub use subgroupoid::{ElementSet, SubgroupoidView};
pub use textio::{parse, read_groupoid, serialize, ParseError};
