//! Energy sweeps, figure presets and flat-file output on top of
//! `jmatrix-core`.

pub mod config;
pub mod output;
pub mod preset;
pub mod sweep;

pub use config::{ConfigError, SweepConfig, SweepMethod};
pub use output::{emit_outputs, parse_csv, plot_script, write_csv, CsvRow, OutputFiles};
pub use preset::FigurePreset;
pub use sweep::{run_sweep, verify, RowFlag, SweepRow, SweepTable, VerifyReport};
