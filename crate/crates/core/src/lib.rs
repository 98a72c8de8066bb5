//! Core of `argact`: a finite-horizon implementation of assumption-based
//! reasoning about action.
//!
//! The pipeline is
//!
//! 1. build or parse a [`DomainDescription`],
//! 2. [`resolve_times`] to replace symbolic time constants by integers,
//! 3. [`ground`] to instantiate every rule schema over `[0, H]`,
//! 4. query the [`Framework`] for extensions, or the [`models`] module for
//!    the model-theoretic counterpart.
//!
//! ```
//! use argact_core::{ground, resolve_times, DomainBuilder, Framework, Literal};
//!
//! let d = DomainBuilder::new("still", 1)
//!     .fluents(&["f"])
//!     .fact_literal(0, Literal::pos("f"))
//!     .build()
//!     .unwrap();
//! let g = ground(&resolve_times(&d).unwrap()).unwrap();
//! let fw = Framework::new(&g);
//! let sets = fw.plausible_sets().unwrap();
//! assert_eq!(sets.len(), 1);
//! assert_eq!(sets[0].assumptions.len(), 2);
//! ```

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bits;
pub mod deduction;
pub mod error;
pub mod ground;
pub mod lang;
pub mod models;
pub mod ramification;
pub mod sat;
pub mod semantics;

mod search;

#[cfg(test)]
mod fixtures;

pub use deduction::{check_well_defined, close, entails, r_consistent, Closure, WellDefinedMode};
pub use error::{Error, Result};
pub use ground::{ground, relevant_assumptions, GroundAtom, GroundDomain, GroundFormula, GroundRule};
pub use lang::{
    negate, resolve_times, Assumption, BinOp, CmpOp, DomainBuilder, DomainDescription, Formula, Inertia, InferenceRule,
    Literal, Mode, OrderChain, OrderRel, QualTag, QualTarget, RuleDecl, RuleKind, Signature, TimeBase, TimeExpr,
};
pub use semantics::{select_min_lr_aq, AssumptionVerdict, Framework, Limits, VerdictFlags};
