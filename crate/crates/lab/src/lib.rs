//! Batch workbench over `linkage-core`: `.lnk` session scripts, their execution,
//! and JSON or text reports.

pub mod render;
pub mod run;
pub mod session;

pub use render::render_text;
pub use run::{run_session, Options, Outcome};
pub use session::{parse_session, ParseError, Session};
