//! Degree computation over column-support families, with an explicit-power oracle.

pub mod certificate;
pub mod degree;
pub mod explicit;
pub mod family;
pub mod nested;
pub mod support;

pub use certificate::{Certificate, Claim};
pub use degree::{eta, eta_degree, gamma, zero_witness, EtaResult, GammaResult};
pub use explicit::{explicit_power, product};
pub use family::{initial_family, step_family, FamilyTrace, Realizer, SupportFamily};
pub use nested::{column_support_of, power_entry, ColumnEvaluator, NestedIndex};
pub use support::{column_support, g_map, SupportMap, SupportSet, MAX_SUPPORT_DIM};
