//! Build the tableau -> orbit map for one ambient and print each fiber with
//! the Jordan type of the witness that reached it.
//!
//!     cargo run --release --example correspondence_table -- 3 1 2 [seed]

use exotic_orbits::correspondence::bijectivity_predicate;
use exotic_orbits::{full_correspondence, Ambient, SamplingConfig};

fn main() -> exotic_orbits::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("p q k [seed]")).collect();
    let (p, q, k, seed) = match args[..] {
        [p, q, k] => (p, q, k, 0),
        [p, q, k, s] => (p, q, k, s),
        _ => (3, 1, 2, 0),
    };
    let amb = Ambient::new(p as usize, q as usize, k as usize)?;
    let table = full_correspondence(amb, seed, SamplingConfig::default())?;

    for (label, entries) in table.fibers() {
        let pre: Vec<String> = entries.iter().map(|e| format!("{} via {}", e.tableau, e.lambda)).collect();
        println!("{label:<16} <- {}", pre.join(", "));
    }
    println!(
        "bijective: {} (predicate says {}), weakest vote share {:.2}",
        table.bijective,
        bijectivity_predicate(amb),
        table.stats.min_share()
    );
    table.verify_witnesses()?;
    Ok(())
}
