//! Command-line surface for `simplex-sweep`: validation, sweeping orders,
//! oracle-driven reconstruction, test-instance generation and SVG output.

pub mod commands;
pub mod gen;
pub mod svg;

pub use commands::{exit_code, run, sweep_order, validate, Cli, Command};
pub use gen::gen_complex;
pub use svg::plot_svg;
