//! Integrated information (big Phi) for small binary networks, plus
//! prior-guided random search over the space of transition probability
//! matrices and a statistical-inference harness over node counts.

pub mod emd;
pub mod error;
pub mod io;
pub mod mechanism;
pub mod net;
pub mod repertoire;
pub mod search;
pub mod stats;
pub mod system;

pub use error::{PhiError, Result};
