//! Worker-count configuration via the `SKIPVEC_THREADS` environment
//! variable.

use std::sync::Once;

static INIT: Once = Once::new();

/// Caps the global worker pool at `SKIPVEC_THREADS` if set. Called by
/// parallel entry points; the first call wins, later ones are no-ops.
pub fn configure_from_env() {
    INIT.call_once(|| {
        if let Ok(text) = std::env::var("SKIPVEC_THREADS") {
            if let Ok(n) = text.trim().parse::<usize>() {
                if n >= 1 {
                    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
                }
            }
        }
    });
}
