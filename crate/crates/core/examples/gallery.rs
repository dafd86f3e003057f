//! Runs the built-in fixture gallery.
//!
//! Run with: cargo run --example gallery

use forge::cli::{load_fixtures, run_gallery, BUILTIN_FIXTURES};

fn main() {
    let fixtures = load_fixtures(BUILTIN_FIXTURES).unwrap();
    for o in run_gallery(&fixtures, None) {
        println!(
            "{:<20} {:<18} printed {:<5} expected {}",
            o.id,
            format!("{:?}", o.status),
            o.printed_ok,
            o.expected
        );
    }
}
