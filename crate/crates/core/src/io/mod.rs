pub mod points;
pub mod report;
pub mod svg;

pub use points::{parse_points, read_points, write_points, format_points};
pub use report::{report_json, write_report};
pub use svg::render_svg;
