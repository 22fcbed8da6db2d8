//! Run every consistency check over all ambients up to a given n and print
//! one line per ambient, as `exotic-orbits check` does.
//!
//!     cargo run --release --example consistency_sweep -- 6

use exotic_orbits::sweep::run_sweep;
use exotic_orbits::SamplingConfig;

fn main() -> exotic_orbits::Result<()> {
    let max_n = std::env::args().nth(1).map_or(5, |a| a.parse().expect("max n"));
    let report = run_sweep(max_n, 0, SamplingConfig::default(), |r| println!("{}", r.render_text()))?;
    println!("{}", report.summary_line());
    if let Some((amb, c)) = report.first_failure() {
        eprintln!("first failure at {amb}: {} {}", c.name, c.detail.as_deref().unwrap_or(""));
        std::process::exit(1);
    }
    Ok(())
}
