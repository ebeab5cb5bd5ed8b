//! Institution-level collaboration and citation network analysis.
//!
//! The pipeline runs in five stages:
//!
//! - [`ingest`] parses publication records from JSONL,
//! - [`resolve`] maps raw affiliation strings onto canonical institutions,
//! - [`geo`] places institutions on the map and bins pairwise distances,
//! - [`netbuild`] builds collaboration, citation and category networks,
//! - [`metrics`] computes strengths, centralities, knowledge flow and tables.
//!
//! [`cli`] wires the stages together behind the `scholnet` binary.

#![forbid(unsafe_code)]

pub mod cli;
pub mod geo;
pub mod ingest;
pub mod metrics;
pub mod netbuild;
pub mod resolve;
