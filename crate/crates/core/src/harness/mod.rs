//! Executable checks of the structural theorems: certified witness search,
//! Keller-map preservation of square-freeness, bounded falsifiers for
//! algebraic closedness and for square-factorial / root closedness.

pub mod certificate;
pub mod falsify;
pub mod gen;
pub mod keller;
pub mod report;
pub mod verdict;
pub mod witness;

pub use certificate::{square_split, Certificate, Ctx};
pub use witness::{witness_search, witness_search_with, Outcome, WitnessConfig, WitnessKind, WitnessResult};
pub use falsify::{
    algebraic_solution_space, check_thm62_pairing, jc_falsifier, root_closed_check, sqf_closed_check,
    sqf_closed_check_subring, square_factorial_split, PairingCheck, RootGrid,
};
pub use keller::{
    check_keller_preservation, check_keller_preservation_with, check_thm24, check_thm24_with, KellerCheck, SampleOutcome,
};
pub use verdict::{EquivalenceVerdict, FalsifierReport, Status};
pub use report::Report;
