//! Problem and certificate files, the solve/recheck pipeline and demos.

pub mod canonical;
pub mod commands;
pub mod demos;
pub mod error;
pub mod files;
pub mod format;
pub mod load;
pub mod run;
pub mod schema;
