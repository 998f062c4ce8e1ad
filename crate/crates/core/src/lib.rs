//! Flip-swap languages of binary strings.
//!
//! A set `S` of length-`n` binary strings is a flip-swap language when
//! `S ∪ {0^n}` is closed under flipping the leftmost 1 and under swapping
//! the leftmost 1 with the bit to its right. Every such language, listed in
//! binary reflected Gray code order, is a cyclic 2-Gray code, and
//! [`engine::generate`] walks it with one membership test per string on
//! amortized average.
//!
//! ```
//! use flipswap::{engine, languages};
//!
//! let necklaces = languages::necklace(4).unwrap();
//! let listing = engine::generate_listing(&necklaces).unwrap();
//! assert_eq!(listing.to_text(), "0000\n0011\n1111\n0111\n0101\n0001\n");
//! ```

pub mod bitstring;
pub mod brgc;
pub mod engine;
pub mod error;
pub mod expr;
pub mod languages;
pub mod listing;
pub mod oracle;

pub use bitstring::BinaryString;
pub use error::{Error, Result};
pub use languages::{MembershipTester, Pivot};
pub use listing::Listing;

/// Largest `n` for which exhaustive enumeration over `B(n)` is allowed.
pub const ENUMERATION_BOUND: usize = 16;
