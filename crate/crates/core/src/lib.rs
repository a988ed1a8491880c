#![no_std]

extern crate alloc;
#[cfg(any(feature = "std", test))]
extern crate std;

pub mod circle;
pub mod error;
pub mod group;
pub mod verdict;
pub mod fc;
pub mod quotient;
pub mod subgroup;
pub mod cocycle;
pub mod kleppner;
pub mod engine;
