//! Exact computations in Green rings and tensor-power growth of
//! representations in positive characteristic.

pub mod error;
pub mod finite_group;
pub mod green;
pub mod jordan;
pub mod kp;
pub mod lie;
pub mod quantum;
pub mod reductive;
pub mod ring;
pub mod util;
pub mod verlinde;

pub use error::{Error, Result};
pub use ring::{FusionTable, RingElement};
pub use verlinde::{DeltaValue, VerlindeRing};
