pub mod bounds;
pub mod checkers;
pub mod constructions;
pub mod error;
pub mod facts;
pub mod hamming;
pub mod numerics;
pub mod random_codes;
pub mod scenario;
pub mod seeding;

pub use error::{Error, Result};
