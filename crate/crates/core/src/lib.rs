//! Exact verification engine for the q-oscillator 3D R, its tetrahedron
//! equation, and the Yang-Baxter R-matrices obtained from it by boundary
//! vector reduction together with their quantum affine symmetry.

pub mod fock;
pub mod mpo;
pub mod r3d;
pub mod report;
pub mod scalar;
pub mod uq;
