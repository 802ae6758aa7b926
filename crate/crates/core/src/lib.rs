//! Exact computation of Weierstrass gap sequences and weights at the
//! hyperosculating points of generalized Fermat curves of type `(k, n)`,
//! together with the osculating-flag ramification, Pluecker closure and the
//! weight lower bound attached to them.
//!
//! ```
//! use gfweight_core::{gap_sequence, GFCurve, PointSpec};
//! use gfweight_core::arith::int;
//!
//! let curve = GFCurve::with_rationals(2, 4, &[int(-1), int(2)]).unwrap();
//! let data = gap_sequence(&curve, &PointSpec::GenericFixed { axis: 1 }, None).unwrap();
//! assert_eq!(data.gaps, vec![1, 2, 3, 5, 7]);
//! assert_eq!(data.weight, 3);
//! ```

pub mod arith;
pub mod charts;
pub mod curve;
pub mod error;
pub mod json;
pub mod moduli;
pub mod osc;
pub mod series;
pub mod theorems;

pub use arith::{FieldElem, NumberField, Rational};
pub use charts::{local_expansion, LocalExpansion, PointSpec};
pub use curve::{GFCurve, GradedBasis, Monomial};
pub use error::{Error, Result};
pub use osc::{embedding_profile, gap_sequence, profile, GapData, OscProfile};
pub use series::TruncatedSeries;
pub use theorems::{PlueckerData, StrictnessReport};
