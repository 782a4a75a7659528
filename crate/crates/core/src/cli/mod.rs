//! The command-line driver: configuration, discovery, the analysis pipeline
//! and report rendering, plus the testbed generator.

mod args;
mod report;
mod run;
mod testbed;

pub use args::{main_with, parse_cli, Cli, Command, OutputFormat};
pub use report::{render_diagnostics, render_json, render_report, show_all_errors, FIELD_LABELS};
pub use run::{
    analyse, discover, get_class_infos, run_analysis, AnalysisRun, ParsedTree, ProjectFiles,
    RunOptions, EXIT_CONFIG, EXIT_MISMATCHES, EXIT_OK, EXIT_PARSE, SOURCE_FILE_EXTENSION,
};
pub use testbed::{
    gen_testbed, inject_parameter_fault, CONSTANTS_PROPERTIES, SAMPLE_CLASS_A, SAMPLE_CLASS_B,
    SOURCES, TEST_BED,
};
