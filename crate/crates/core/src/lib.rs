//! Growth rates of minor-closed classes of labelled graphs.

pub mod canon;
pub mod classify;
pub mod dfs;
pub mod dsl;
pub mod enumerate;
pub mod error;
pub mod gfun;
pub mod graph;
pub mod growth;
pub mod minor;
pub mod oracle;
pub mod verify;

pub use classify::{classify, ClassSpec, GrowthCategory};
pub use error::{Error, Result};
pub use graph::Graph;
