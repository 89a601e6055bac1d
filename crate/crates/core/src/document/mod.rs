//! Structure documents, the example gallery, verification suites and reports.

pub mod expr;
pub mod format;
pub mod gallery;
pub mod report;
pub mod suite;

pub use expr::{parse_expression, parse_one_form, print_expression, print_one_form};
pub use format::{parse_structure_file, parse_structure_text, print_structure, ContactMetricData, StructureDocument, Suite};
pub use gallery::{load_gallery, GALLERY};
pub use report::{emit_report, parse_tree, Classification, Fact, Report, ReportFormat, Section};
pub use suite::{run_suite, SuiteOptions};
