// SPDX-License-Identifier: Apache-2.0

//! Narrow-sense primitive BCH codes with Bose distance
//! `q^m - q^{m-1} - q^i - 1`, studied through quadratic forms.
//!
//! The crate offers finite-field arithmetic, cyclotomic cosets, code
//! construction, quadratic-form classification, closed-form inner
//! distributions and weight enumerators, and exhaustive oracles that check
//! each closed form.

pub mod api;
pub mod bchcode;
pub mod cyclotomic;
pub mod error;
pub mod forms;
pub mod gf;
pub mod oracle;
pub mod poly;
pub mod schemes;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
pub use gf::{BaseField, FieldContext, FieldSpec, GfElem, Subfield};
pub use poly::Poly;
