//! Quantum discord, classical correlation and entanglement of two-qubit
//! X-states.
//!
//! ```
//! use xdiscord::{discord, BlochX};
//!
//! let p = BlochX::new(-0.5934, -0.5934, 0.2, 0.2, 0.5).unwrap();
//! let q = discord(&p).discord;
//! assert!((q - 0.13274).abs() < 1e-5);
//! ```

pub mod cli;
pub mod discord;
pub mod entanglement;
pub mod error;
pub mod golden;
pub mod linalg;
pub mod oracle;
pub mod xstate;

pub use discord::{discord, discord_with, DiscordResult, Mode, RegionTag, SolutionPath};
pub use error::{Error, Result};
pub use xstate::{bloch_to_matrix, matrix_to_bloch, BlochX, Spectrum, XDensityMatrix};
