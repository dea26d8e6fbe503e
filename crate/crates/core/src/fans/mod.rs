//! Coordinate index sets, tree-metric cones and the fans they assemble into.

pub mod cone;
pub mod fan;
pub mod index;

pub use cone::{cone_rays, interior_point, quotient_map_q, second_difference, symmetric_lengths, tree_metric, ConeZ, DistTable};
pub use fan::{assemble_fan, assemble_fan_with, meet_in_common_face, Fan};
pub use index::{successor, IndexSetD, Kind};
