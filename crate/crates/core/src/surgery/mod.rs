//! Slopes, augmentation by crossing circles, the smoothing planner and the
//! Borromean surgery classifier.

pub mod augment;
pub mod borromean;
pub mod planner;
pub mod slope;

pub use augment::{augment, augment_regions, AugmentedLink, CrossingCircle};
pub use borromean::{classify_borromean, BorromeanClass, BorromeanVerdict};
pub use planner::{plan_configurations, realized_interval, verify_plan, ConfigAssignment, Kind, PlanError, SmoothingConfig};
pub use slope::{Bound, Slope, SlopeError, SlopeInterval};
