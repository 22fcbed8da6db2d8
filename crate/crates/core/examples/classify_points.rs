//! Move orbit representatives around by random elements of K and check the
//! classifiers still recover the same labels.

use exotic_orbits::exotic::{classify_exotic_point, enumerate_pi2k, representative};
use exotic_orbits::linalg::{random_invertible, seeded_rng};
use exotic_orbits::tableaux::{classify_flag_pair, enumerate_theta2k, representative_flag};
use exotic_orbits::Ambient;

fn main() -> exotic_orbits::Result<()> {
    let amb = Ambient::new(3, 2, 2)?;
    let mut rng = seeded_rng(7);

    for lab in enumerate_pi2k(amb) {
        let g1 = random_invertible(amb.p, 5, &mut rng);
        let g2 = random_invertible(amb.q, 5, &mut rng);
        let moved = representative(&lab).transform(&g1, &g2)?;
        moved.validate()?;
        let got = classify_exotic_point(&moved)?;
        println!("{lab:<16} -> {got:<16} rank a = {}, rank b = {}", moved.a.rank(), moved.b.rank());
        assert_eq!(got, lab);
    }

    for t in enumerate_theta2k(amb) {
        let g1 = random_invertible(amb.p, 5, &mut rng);
        let g2 = random_invertible(amb.q, 5, &mut rng);
        let moved = representative_flag(&t).transform(&g1, &g2)?;
        let got = classify_flag_pair(&moved)?;
        println!("{t:<16} -> {got}");
        assert_eq!(got, t);
    }

    // a point can also be read from JSON, the same way `classify` does it
    let pt = representative(&enumerate_pi2k(amb)[0]);
    let json = serde_json::to_string(&pt).unwrap();
    let back: exotic_orbits::ExoticPoint = serde_json::from_str(&json).unwrap();
    println!("round trip: {}", classify_exotic_point(&back)?);
    Ok(())
}
