//! Opt-in wall-clock diagnostics.
//!
//! Setting the `ARTIN_TIMING` environment variable makes the pipeline and
//! the lifting stages print per-phase durations to stderr. Nothing here
//! touches reports or results; output stays byte-identical either way.

use std::sync::OnceLock;
use std::time::Instant;

pub(crate) fn enabled() -> bool {
    static ON: OnceLock<bool> = OnceLock::new();
    *ON.get_or_init(|| std::env::var_os("ARTIN_TIMING").is_some())
}

/// Print `label: <seconds>` to stderr when timing is enabled.
pub(crate) fn mark(label: &str, start: Instant) {
    if enabled() {
        eprintln!("[timing] {label}: {:.3}s", start.elapsed().as_secs_f64());
    }
}
