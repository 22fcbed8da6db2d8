//! Print the small correspondence tables as LaTeX arrays, ready to paste
//! into a document using youngtab.

use exotic_orbits::cli::run;

fn main() {
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    for (p, q, k) in [(3, 1, 0), (3, 1, 1), (3, 1, 2), (3, 1, 3), (3, 1, 4), (2, 2, 2), (3, 3, 3)] {
        let (p, q, k) = (p.to_string(), q.to_string(), k.to_string());
        let args = ["exotic-orbits", "correspond", "-p", &p, "-q", &q, "-k", &k, "--format", "latex"];
        let code = run(args, &mut out, &mut err);
        assert_eq!(code, 0);
    }
}
