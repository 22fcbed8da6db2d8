//! List the K-orbits on the exotic cone and on the Grassmannian side for one
//! ambient, with orbit dimensions and diagrams.
//!
//!     cargo run --example enumerate_orbits -- 3 1 2

use exotic_orbits::exotic::{dim_exotic_orbit, enumerate_pi2k, mu_of, render_striped_diagram};
use exotic_orbits::tableaux::enumerate_theta2k;
use exotic_orbits::{Ambient, RenderFormat};

fn main() -> exotic_orbits::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse().expect("p q k")).collect();
    let (p, q, k) = match args[..] {
        [p, q, k] => (p, q, k),
        _ => (3, 1, 2),
    };
    let amb = Ambient::new(p, q, k)?;

    let labels = enumerate_pi2k(amb);
    println!("{amb}: {} exotic orbits, conormal dim {}", labels.len(), amb.conormal_dim());
    for lab in &labels {
        println!("  {lab:<16} mu={:?} dim={}", mu_of(lab), dim_exotic_orbit(lab));
        for row in render_striped_diagram(lab, RenderFormat::Ascii).lines() {
            println!("      {row}");
        }
    }

    let tableaux = enumerate_theta2k(amb);
    println!("{} marked tableaux:", tableaux.len());
    for t in &tableaux {
        println!("  {t}");
    }
    Ok(())
}
