//! Decoding and analysis toolkit for deletion and insertion channels.
//!
//! The crate is organised bottom up:
//!
//! * [`word`]: q-ary words, run profiles, indel distance.
//! * [`count`] and [`combinatorics`]: exact embedding numbers, deletion and
//!   insertion balls, maximal-run statistics.
//! * [`supersequences`]: LCS/SCS lengths and enumeration of all shortest common
//!   supersequences and longest common subsequences.
//! * [`channels`]: samplers and exact conditional probabilities for `Del(p)`,
//!   `Ins(p)` and `k-Del`.
//! * [`decoders`]: lazy, embedding-number, ML over a code, the two-trace
//!   degraded ML decoders and the exact ML* decoders for one and two deletions.
//! * [`codes`]: VT and shifted VT codes.
//! * [`analysis`]: closed-form error approximations.
//! * [`harness`]: Monte Carlo experiments, exact evaluators and figure output.

pub mod analysis;
pub mod channels;
pub mod codes;
pub mod combinatorics;
pub mod count;
pub mod decoders;
pub mod error;
pub mod harness;
pub mod rng;
pub mod supersequences;
pub mod word;

pub use count::EmbeddingCount;
pub use error::{Error, Result};
pub use word::{RunProfile, Word};
