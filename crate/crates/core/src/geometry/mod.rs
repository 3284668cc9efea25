//! Exact convex geometry: polytopes, cones, piecewise-linear functions.

pub mod cone;
pub mod dd;
pub mod integrate;
pub mod pl;
pub mod polytope;

pub use cone::ConvexCone;
pub use integrate::{fubini_volume, iterated_integral};
pub use pl::{subgraph_body, upper_concave_envelope, Affine, Cell, PLFunction};
pub use polytope::{Halfspace, Polytope};
