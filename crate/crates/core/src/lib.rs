//! Word-coded networks on the Sierpinski gasket: words, exact geometry,
//! network construction, geodesic distances and the asymptotics of the
//! average path length.

pub mod asymptotics;
pub mod decimal;
pub mod distance;
pub mod error;
pub mod geometry;
pub mod network;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use network::{build, build_reference, Network};
pub use word::Word;
