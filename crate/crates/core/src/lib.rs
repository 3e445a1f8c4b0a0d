//! Lax-Wendroff flux reconstruction with subcell blending and admissibility
//! preserving flux correction for 1-D and 2-D conservation laws.

pub mod basis;
pub mod cases;
pub mod equations;
pub mod driver;
pub mod error;
pub mod flux_correction;
pub mod io;
pub mod limiters;
pub mod lwfr;
pub mod state;
pub mod subcell;

pub use basis::{Basis, NodeFamily};
pub use equations::{Dir, Equation, Point};
pub use error::{Error, Result};
pub use state::State;
