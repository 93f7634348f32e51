//! Local-global obstructions for embeddings of étale algebras with involution.
//!
//! The obstruction group is built from the sets `V_i` of places at which some
//! place of `F_i` is inert or ramified in `E_i`: factors whose sets meet are
//! glued, and the group is the space of class-constant maps to `Z/2` modulo
//! constants. A local datum then defines `ρ` on that group, and a global
//! embedding exists exactly when `ρ` vanishes.
//!
//! Two layers compute the sets: [`qfields`] works exactly with multiquadratic
//! towers over Q, [`galois`] works with abstract Galois groups and sees only
//! unramified places.

pub mod arith;
pub mod error;
pub mod galois;
pub mod gf2;
pub mod hasse;
pub mod local;
pub mod obstruction;
pub mod perm;
pub mod qfields;

pub use error::{Error, Result, ViolationReport};
pub use hasse::{decide, rho, validate_datum, DatumEntry, Existence, LocalDatum, Verdict};
pub use local::{InvValue, LocalComponent, Place, TowerElement};
pub use obstruction::{ClassMap, ObstructionGroup, Partition};
pub use qfields::{EtaleProblem, QuadraticTower};
