//! JSON input documents, trajectory CSV and JSON summaries.

mod csv;
mod input;
mod summary;

pub use csv::{read_trajectory_csv, write_trajectory_csv, CsvRow};
pub use input::{parse_input, write_input, InputMatrix, MatrixInputDocument};
pub use summary::{write_summary, Summary};
