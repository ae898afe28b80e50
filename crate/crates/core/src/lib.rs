//! Primitivity and strong primitivity of nonnegative tensors, decided on their
//! zero patterns.
//!
//! A tensor `A` of order `m` and dimension `n` is stored as a [`BooleanTensor`]
//! (one bit per entry). [`gamma`] returns the primitive degree (least `r` with
//! `M(A^r) > 0`) and [`eta`] the strongly primitive degree (least `k` with
//! `A^k > 0`); negative answers carry a [`Certificate`] that can be re-checked
//! independently.
//!
//! ```
//! use tprim_core::{constructions::{named_example, NamedExample}, eta, gamma};
//!
//! let t = named_example(NamedExample::Example2_3).unwrap();
//! assert_eq!(gamma(&t).unwrap().degree(), Some(4));
//! assert_eq!(eta(&t).unwrap().degree(), Some(4));
//! ```

pub mod constructions;
pub mod engine;
pub mod error;
pub mod format;
pub mod matrix;
pub mod screening;
pub mod search;
pub mod tensor;

pub use engine::{
    eta, explicit_power, gamma, power_entry, Certificate, EtaResult, GammaResult, NestedIndex,
    SupportFamily, SupportSet,
};
pub use error::{Error, Result};
pub use matrix::{is_primitive_matrix, mat_exponent, BooleanMatrix, MatrixExpResult};
pub use tensor::{BooleanTensor, CanonicalKey, MultiIndex, Permutation};
