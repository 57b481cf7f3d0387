//! Cylindrical drawings of `K_{n,n} - nK_2` and of the Kronecker products
//! `K_n x P_3`, `K_n x C_4`, with two independent exact crossing counters and
//! certified lower bounds.

pub mod bounds;
pub mod count;
pub mod drawing;
pub mod expanded;
pub mod formulas;
pub mod graph;
pub mod io;
pub mod split;

pub use bounds::{certify, CertifiedInterval, GraphFamily};
pub use count::{count_drawing, count_expanded, split_drawing_count, CrossingBreakdown};
pub use drawing::{generate_dn, CylindricalDrawing, EdgeClass};
pub use expanded::{expand_dn, ExpandedDrawing};
pub use graph::{Graph, VertexLabel};
pub use split::{generate_split_drawing, MeshSpec, SplitDrawing};
