//! Generators, file formats, rendering and the benchmark harness.

mod bench;
mod generate;
mod io;
mod report;
mod svg;

pub use bench::{
    bench, bench_csv, bench_row, bench_rows, default_bench_specs, parse_bench_specs, sqrt_n12, sqrt_n12_ceil, BenchRow,
    Method, COLUMNS, FORMAT_LINE,
};
pub use generate::{generate, GenKind, GenSpec, Generated, MAX_RETRIES};
pub use io::{format_points, parse_points, read_points, write_points};
pub use report::{format_parts, format_simplices, join, parse_index_set, parse_parts, parse_simplices, Report};
pub use svg::{render_svg, svg_string, Overlay};

/// Environment variable bounding the worker thread count.
pub const THREADS_ENV: &str = "AVOIDKIT_THREADS";

/// Sizes the global thread pool from `AVOIDKIT_THREADS`, if set. Returns
/// the thread count applied.
pub fn init_threads_from_env() -> crate::Result<Option<usize>> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(None);
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| crate::Error::Input(format!("{THREADS_ENV} must be a positive integer, got `{raw}`")))?;
    // a pool that is already running keeps its size
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(Some(n))
}
