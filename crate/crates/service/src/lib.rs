//! Service layer, HTTP API and command-line front end for ontoforge.

pub mod api;
pub mod cli;
pub mod service;
