//! Runs the seeded verification suite and prints every check.

use std::time::Instant;

use spinframe::verify::run_group;

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    for id in 1..=7 {
        let start = Instant::now();
        let group = run_group(id, seed);
        println!("group {} {} ({:.2} s)", group.id, group.title, start.elapsed().as_secs_f64());
        for c in &group.checks {
            println!("  {}", c.line());
        }
    }
}
