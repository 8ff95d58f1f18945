//! Word problem, constructible right ideals, left inverse hulls and boundary
//! groupoids for a small catalog of left cancellative monoids.

pub mod boundary;
pub mod catalog;
pub mod config;
pub mod error;
pub mod free_product;
pub mod groupoid;
pub mod hull;
pub mod ideals;
pub mod mean;
pub mod monoid;
pub mod product;
pub mod regularity;
pub mod rewrite;
pub mod search;
pub mod verify;
pub mod words;

pub use catalog::{free_monoid, monoid_r, monoid_s4, monoid_s5, CatalogMonoid, MonoidKind};
pub use config::Config;
pub use error::{Error, Result};
pub use ideals::{ConstructibleIdeal, Shape};
pub use rewrite::{Mode, Presentation};
pub use words::{Index, InfiniteWord, Letter, Word, WordType, ZKind};
pub use boundary::{BoundaryClass, Character, Verdict};
pub use free_product::free_product;
pub use groupoid::{Equivalence, GroupoidElement, Hull};
pub use hull::{HullElement, Move};
pub use mean::{MeanDistribution, Rational};
pub use product::{direct_product, Pair};
pub use regularity::{Instance, RegularityKind, WitnessResult};
pub use search::{FoundationOutcome, GeneralizedIdeal};
pub use verify::{CheckReport, Suite, SuiteReport};
