pub mod cli;
pub mod contour;
pub mod datafun;
pub mod error;
pub mod lab;
pub mod ops;
pub mod oracle;
pub mod quad;
pub mod spaces;
pub mod transforms;

pub use error::{Error, Result};
