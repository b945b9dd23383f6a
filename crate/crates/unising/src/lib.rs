//! Exact eigenvalue-one multiplicities for complex characters of the rank-1
//! groups of Lie type and of ingested character tables.

pub mod classify;
pub mod cyclo;
pub mod gtables;
pub mod ingest;
pub mod mult;
pub mod numth;
pub mod oracle;
