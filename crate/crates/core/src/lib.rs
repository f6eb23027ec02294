pub mod fol;
pub mod formats;
pub mod homsearch;
pub mod interval;
pub mod lattice;
pub mod modelfinder;
pub mod sets;
pub mod space;
pub mod sweep;
pub mod wallman;

pub use lattice::{Elem, FiniteLattice, LatticeError, LatticeTables};
pub use sets::PointSet;
