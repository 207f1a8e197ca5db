//! Geometry: ball coordinates, quadrature, point clouds, meshes, rotations,
//! and rasterization.

mod cloud;
mod coord;
mod mesh;
mod quad;
mod rotation;
mod shape;

pub use cloud::{
    load_xyz, normalize_to_ball, rotate_points, save_xyz, split_hemispheres, PointCloud,
};
pub use coord::{direction, direction_angles, BallCoord};
pub use mesh::{load_off, mesh_to_points, TriangleMesh};
pub use quad::{gauss_legendre_rule, make_quadrature, BallQuadrature};
pub use rotation::Rotation;
pub use shape::{rasterize, ShapeFunction};
