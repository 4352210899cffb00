//! Front end for `surgcalc-core`: the JSON catalog format, JSON reports with
//! their human rendering, and the `surgcalc` command line.

pub mod catalog_file;
pub mod cli;
pub mod report;

pub use catalog_file::{dump_catalog, load_catalog, parse_catalog, CatalogFileError};
pub use cli::{run, Output};
pub use report::{Body, ClaimJson, DossierJson, OutcomeJson, Report, StatusJson};
