//! Manifold blocks, surgery operations, classifiers and the block catalog.

mod block;
pub mod catalog;
mod classify;
mod data;
mod ops;

pub use block::{Invariants, Kodaira, ManifoldBlock, Minimality, SurgeryError};
pub use catalog::{Catalog, CatalogDefect, CatalogEntry, FibrationData};
pub use classify::{
    free_group_table, geography_check, geography_check_numbers, group_size_bounds,
    kodaira_dimension, BoundsReport, GeographyReport, Sign,
};
pub use data::{EmbeddedSurfaceData, LagrangianTorusData, MeridianCertificate, SphereChain};
pub use ops::{
    blow_up, fiber_sum, luttinger_sequence, luttinger_surgery, rational_blowdown, sum_sphere_groups,
    sum_spheres, SummedBlock,
};
