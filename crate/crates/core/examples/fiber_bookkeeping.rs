//! For each orbit, list the good Jordan types together with the pieces of
//! delta = orbit dim + fiber dim + Spaltenstein dim, and compare the fiber
//! dimension measured on the representative with the closed form.

use exotic_orbits::correspondence::{delta, fiber_dimension, fiber_dimension_closed_form, good_partitions};
use exotic_orbits::exotic::{dim_exotic_orbit, enumerate_pi2k, representative};
use exotic_orbits::partitions::{spaltenstein_dim, Composition};
use exotic_orbits::Ambient;

fn main() -> exotic_orbits::Result<()> {
    let amb = Ambient::new(4, 2, 3)?;
    let target = amb.conormal_dim();
    println!("{amb}: conormal dim {target}");
    for lab in enumerate_pi2k(amb) {
        let pt = representative(&lab);
        for lam in good_partitions(&lab) {
            let fiber = fiber_dimension(&pt, &lam)?;
            assert_eq!(fiber, fiber_dimension_closed_form(&lab, &lam)?);
            let spalt = spaltenstein_dim(&lam, &Composition::maximal(amb.k, amb.n()))?;
            let d = delta(&lab, &lam)?;
            let mark = if d == Some(target) { "good" } else { "" };
            println!(
                "  {lab:<16} {lam:<10} orbit {:>2} + fiber {} + spaltenstein {} = {} {mark}",
                dim_exotic_orbit(&lab),
                show(fiber),
                show(spalt),
                show(d)
            );
        }
    }
    Ok(())
}

fn show(x: Option<usize>) -> String {
    x.map_or("-".into(), |v| v.to_string())
}
