//! Experiment harness around spanlab-core: configuration, reports, and
//! the generate / verify / sweep / montecarlo / compare commands.

pub mod commands;
pub mod config;
pub mod report;
