//! Exact planar geometry over log-lifted points.

mod chain;
mod hull;
mod io;
mod point;

pub use chain::{max_convex_chain, max_convex_chain_with, ChainResult};
pub use hull::{convex_hull_vertices, is_convexly_independent, minkowski_sum, minkowski_sum_all, upper_envelope};
pub use io::{parse_point_csv, to_point_csv, PointJson, VertexReport};
pub use point::{compare_xy, compare_y, orientation, LogPoint, PointSet, Tau, Turn};
