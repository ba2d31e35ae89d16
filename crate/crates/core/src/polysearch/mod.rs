//! Search for graph polymorphisms satisfying systems of identities.

mod identity;
mod search;
mod table;
mod taylor;
mod verify;

pub use self::identity::{IdentitySystem, PRESETS};
pub use self::search::{
    search_polymorphism, SearchOptions, SearchOutcome, SearchStats, SearchStatus, DEFAULT_MAX_CLASSES,
    MAX_RAW_TUPLES,
};
pub use self::table::PolymorphismTable;
pub use self::taylor::{derive_taylor_witness, separating_patterns, SubTaylorWitness, TaylorDerivation};
pub use self::verify::{identity_violation, verify_polymorphism, Counterexample};
