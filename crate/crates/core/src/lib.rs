pub mod bergman;
pub mod fan_cycles;
pub mod fan_intersect;
pub mod homology;
pub mod linalg;
pub mod matroid;
pub mod poly;
pub mod ratio_str;
pub mod surface;
