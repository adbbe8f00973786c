//! Facade-PV potential estimation from per-pixel semantic label rasters.
//!
//! The crate turns a facade's semantic segmentation (13-class CMP convention)
//! plus its physical geometry into:
//!
//! - a PV-suitability mask ([`suitability`]): facade pixels minus openings,
//!   protrusions, clearance buffers, and too-small fragments;
//! - an installable panel layout ([`layout`]): maximal all-true rectangle
//!   search plus portrait/landscape grid fitting for a module catalog;
//! - peak-capacity and annual-energy estimates ([`energy`]), either offline
//!   or through an irradiance web service with disk caching;
//! - segmentation quality metrics ([`metrics`]): confusion matrices, IoU,
//!   macro precision/recall/F1, pixel accuracy, class-share errors, and the
//!   uniform-random / majority-class baselines.
//!
//! All raster operations are pure functions over immutable values and are
//! safe to run in parallel across facades.

pub mod energy;
pub mod layout;
pub mod metrics;
pub mod raster;
pub mod suitability;

pub use raster::{BinaryMask, ClassMapping, ComponentSet, Connectivity, LabelMap, SemanticClass};
pub use suitability::{FacadeGeometry, SuitabilityConfig, SuitabilityResult};
