//! Enumerate every Skip-pattern shape per depth.
//!
//! The census doubles per depth (prepend a kept or skipped predicate), so
//! the total up to depth d is 3·2^d − 3: 3, 9, 21, 45, ...
//!
//! ```bash
//! cargo run -p skipvec --example pattern_census
//! ```

use skipvec::pattern_census;

fn main() {
    let levels = pattern_census(4);
    let mut total = 0;
    for level in &levels {
        let depth = level[0].depth;
        total += level.len();
        println!(
            "depth {depth}: {} patterns (cumulative {total}, closed form {})",
            level.len(),
            3 * 2usize.pow(depth) - 3
        );
        for descriptor in level {
            println!("  {:6} {}", descriptor.abbreviation(), descriptor.sequence_form());
        }
    }
}
