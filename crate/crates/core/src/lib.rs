//! Finite setoids, directed families, Bishop spaces with certificate-checked
//! topologies, spectra of such spaces, and their direct and inverse limits.

#![allow(clippy::needless_range_loop)]

pub mod check;
pub mod duality;
pub mod family;
pub mod fixtures;
pub mod gen;
pub mod laws;
pub mod limits;
pub mod order;
pub mod setoid;
pub mod spectrum;
pub mod topology;

pub use check::{Checks, LawCheck, Outcome};
pub use topology::CertConfig;

/// Search and enumeration bounds shared by the constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    /// Cap on candidate visits while enumerating threads.
    pub thread_bound: usize,
    /// Cap on visits while enumerating dependent functions.
    pub enum_bound: usize,
    /// Largest search space for uniqueness checks.
    pub uniq_bound: u128,
    /// Largest number of set-maps tried when generating morphism pools.
    pub map_bound: u128,
    /// Depth limit for synthesized certificates.
    pub cert_depth: usize,
    /// Constants offered to thread enumeration.
    pub constants: Vec<topology::Q>,
    pub cert: CertConfig,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            thread_bound: 10_000,
            enum_bound: 100_000,
            uniq_bound: 1_000_000,
            map_bound: 100_000,
            cert_depth: 8,
            constants: vec![topology::q(0), topology::q(1)],
            cert: CertConfig::default(),
        }
    }
}
