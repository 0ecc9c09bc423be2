//! Catalog formats and the class cache behind the `wildprim` command line.

pub mod cache;
pub mod catalog;
