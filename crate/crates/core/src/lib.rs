//! Fusion rings, based modules and exact sequences of tensor categories at
//! the level of Grothendieck rings, with certified Frobenius-Perron
//! dimensions.

pub mod corpus;
pub mod error;
pub mod group;
pub mod interval;
pub mod io;
pub mod library;
pub mod matrix;
pub mod module;
pub mod perron;
pub mod ring;
pub mod sequence;
pub mod validation;

pub use error::{Error, Result};
pub use group::{conjugacy_classes, rep_g_fusion, vec_g_ring, CharacterFusion, ClassData, GroupTable};
pub use interval::{Interval, Rational};
pub use matrix::QMatrix;
pub use module::{BasedModule, IntMatrix, ModuleFPData};
pub use perron::{perron_compare, perron_eigen, ComparisonVerdict, PerronOptions, PerronOrdering, PerronResult};
pub use ring::{FusionRing, GrothendieckElement, Unit};
pub use sequence::{
    check_exact, AlphaCertificate, AlphaDecision, ExactnessReport, NotExactReason, SequenceData, Verdict,
};
pub use validation::{ValidationReport, Violation, ViolationKind};
