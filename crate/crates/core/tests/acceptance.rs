//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use exotic_orbits::cli;
use exotic_orbits::correspondence::{
    delta, fiber_dimension, full_correspondence, full_correspondence_with, good_partitions, is_good_pair, CorrespondenceTable,
    Execution, SamplingConfig,
};
use exotic_orbits::exotic::{
    classify_exotic_point, dim_exotic_orbit, enumerate_pi2k, mu_of, representative, Ambient, OrbitType, RefinedType,
};
use exotic_orbits::linalg::{jordan_type, random_in_subspace, random_invertible, random_vector, seeded_rng, theta_split, RatMatrix};
use exotic_orbits::tableaux::{classify_flag_pair, enumerate_theta2k, representative_flag};
use exotic_orbits::Partition;
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || format!("{what} took {:.2} s, limit {:.0} s", elapsed.as_secs_f64(), limit.as_secs_f64()))
}

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["exotic-orbits"];
    argv.extend_from_slice(args);
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn correspond_json(p: usize, q: usize, k: usize) -> Result<CorrespondenceTable, String> {
    let (p, q, k) = (p.to_string(), q.to_string(), k.to_string());
    let (code, out, err) = run_cli(&["correspond", "-p", &p, "-q", &q, "-k", &k, "--seed", "0", "--format", "json"]);
    ensure(code == 0, || format!("correspond exited {code}: {err}"))?;
    serde_json::from_str(&out).map_err(|e| format!("table JSON does not decode: {e}"))
}

fn compare_with_expected(table: &CorrespondenceTable) -> Result<(), String> {
    let Ambient { p, q, k } = table.ambient;
    let mut expected = expected_table(p, q, k);
    let mut got: Vec<(TableauCounts, LabelShort)> = table
        .entries
        .iter()
        .map(|e| ((e.tableau.n1, e.tableau.n2, e.tableau.ell, e.tableau.mark), (e.label.r, e.label.s, e.label.typ)))
        .collect();
    expected.sort();
    got.sort();
    ensure(got == expected, || format!("{}: computed {got:?}\n  expected {expected:?}", table.ambient))?;
    table.verify_witnesses().map_err(|e| e.to_string())
}

fn criterion_1() -> Outcome {
    let mut times = Vec::new();
    for k in [1, 2] {
        let start = Instant::now();
        let table = correspond_json(3, 1, k)?;
        let elapsed = start.elapsed();
        within(elapsed, Duration::from_secs(1), &format!("correspond -p 3 -q 1 -k {k}"))?;
        times.push(elapsed.as_secs_f64());
        compare_with_expected(&table)?;
        ensure(table.bijective == (k == 1), || format!("k={k}: bijective flag {}", table.bijective))?;
    }
    let table = correspond_json(3, 1, 2)?;
    for (label, fiber) in expected_two_element_fibers_312() {
        let mut got: Vec<(TableauCounts, Vec<usize>)> = table
            .entries
            .iter()
            .filter(|e| (e.label.r, e.label.s, e.label.typ) == label)
            .map(|e| ((e.tableau.n1, e.tableau.n2, e.tableau.ell, e.tableau.mark), e.lambda.parts().to_vec()))
            .collect();
        got.sort();
        let mut want = fiber.clone();
        want.sort();
        ensure(got == want, || format!("fiber of {label:?}: {got:?}, expected {want:?}"))?;
    }
    Ok(format!("(3,1,1) 5-entry and (3,1,2) 7-entry maps exact, both IIstar fibers match ({:.2}s, {:.2}s)", times[0], times[1]))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    compare_with_expected(&correspond_json(2, 2, 2)?)?;
    compare_with_expected(&correspond_json(3, 3, 3)?)?;
    let amb = Ambient::new(4, 4, 4).unwrap();
    let table = full_correspondence(amb, 0, SamplingConfig::default()).map_err(|e| e.to_string())?;
    ensure(table.entries.len() == enumerate_theta2k(amb).len(), || "m=4 table is not total".into())?;
    for e in &table.entries {
        let t = e.tableau;
        let typ = match t.mark {
            2 => OrbitType::I,
            1 => OrbitType::II,
            _ => OrbitType::III,
        };
        let want = (t.n1, t.n2, typ);
        let got = (e.label.r, e.label.s, e.label.typ);
        ensure(got == want, || format!("m=4: {t} maps to {got:?}, rule gives {want:?}"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(10), "criterion 2")?;
    Ok(format!(
        "(2,2,2) 9 entries and (3,3,3) 18 entries exact; m=4 agrees with the p=q=k rule on {} tableaux ({:.2}s)",
        table.entries.len(),
        elapsed.as_secs_f64()
    ))
}

fn is_iistar_by_definition(amb: Ambient, r: usize, s: usize, typ: OrbitType) -> bool {
    let ell = r + s;
    typ == OrbitType::II && amb.q == ell && ell + 2 <= amb.p && amb.q < amb.k.min(amb.n() - amb.k)
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    for k in [1, 2] {
        let amb = Ambient::new(3, 1, k).unwrap();
        let pi = enumerate_pi2k(amb).len();
        let theta = enumerate_theta2k(amb).len();
        ensure(pi == 5, || format!("|Pi| = {pi} at {amb}"))?;
        ensure(theta == if k == 1 { 5 } else { 7 }, || format!("|Theta| = {theta} at {amb}"))?;
    }
    let mut ambients = 0;
    let mut non_bijective = 0;
    let mut min_share = 1.0f64;
    for amb in Ambient::all_up_to(8) {
        let theta = brute_force_tableaux(amb.p, amb.q, amb.k).len();
        ensure(theta == enumerate_theta2k(amb).len(), || format!("{amb}: tableau enumeration disagrees with brute force"))?;
        let labels = enumerate_pi2k(amb);
        let iistar = labels.iter().filter(|l| is_iistar_by_definition(amb, l.r, l.s, l.typ)).count();
        ensure(theta == labels.len() + iistar, || format!("{amb}: |Theta| = {theta}, |Pi| = {}, #IIstar = {iistar}", labels.len()))?;

        let table = full_correspondence(amb, 0, SamplingConfig::default()).map_err(|e| format!("{amb}: {e}"))?;
        let mut preimages = vec![0usize; labels.len()];
        for e in &table.entries {
            let i = labels.iter().position(|l| *l == e.label).ok_or_else(|| format!("{amb}: unknown label"))?;
            preimages[i] += 1;
        }
        ensure(preimages.iter().all(|&c| c >= 1), || format!("{amb}: some orbit has no preimage"))?;
        let bijective = preimages.iter().all(|&c| c == 1);
        let predicate = amb.p <= amb.k.max(amb.n() - amb.k).max(amb.q + 1);
        ensure(bijective == predicate, || format!("{amb}: bijective = {bijective}, predicate = {predicate}"))?;
        ensure(table.bijective == bijective, || format!("{amb}: table flag disagrees"))?;
        min_share = min_share.min(table.stats.min_share());
        ambients += 1;
        non_bijective += usize::from(!bijective);
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(300), "criterion 3")?;
    // genericity health, not a correctness condition
    if min_share < exotic_orbits::sweep::HEALTHY_SHARE {
        println!("warning: weakest majority won only {:.0}% of samples", 100.0 * min_share);
    }
    Ok(format!(
        "counts for (3,1,k) match; counting identity and bijectivity predicate hold on {ambients} ambients with n <= 8, {non_bijective} non-bijective; weakest majority {:.0}% ({:.1}s)",
        100.0 * min_share,
        elapsed.as_secs_f64()
    ))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let (mut labels_checked, mut good, mut case3) = (0, 0, 0);
    for amb in Ambient::all_up_to(10) {
        let n = amb.n();
        let dim_y = amb.k * (n - amb.k) + amb.p - 1;
        for lab in enumerate_pi2k(amb) {
            let ell = lab.ell();
            let (r, s) = (lab.r, lab.s);
            let from_mu = (ell * (n - ell)) as i64 + mu_of(&lab).into_iter().map(ceil_half).sum::<i64>() - 1;
            let closed = match lab.typ {
                OrbitType::I => ell * (n - ell) + r - 1,
                OrbitType::II => ell * (n - ell) + amb.p - s - 1,
                OrbitType::III => ell * (n - ell) + amb.p - 1,
            };
            let dim = dim_exotic_orbit(&lab);
            ensure(dim == closed && from_mu == closed as i64, || format!("{amb} {lab}: dim {dim}, mu sum {from_mu}, closed {closed}"))?;
            labels_checked += 1;

            for lam in good_partitions(&lab) {
                let d = delta(&lab, &lam).map_err(|e| e.to_string())?;
                ensure(d == Some(dim_y), || format!("{amb} good pair ({lab}, {lam}): delta {d:?} != {dim_y}"))?;
                good += 1;
            }
            let ii0_case = lab.refined() == RefinedType::II0 && ell < amb.k.min(n - amb.k).min(amb.p - 1);
            if ii0_case {
                let lam = Partition::square_zero(n, ell + 1).map_err(|e| e.to_string())?;
                let d = delta(&lab, &lam).map_err(|e| e.to_string())?;
                let want = dim_y as i64 + ell as i64 - amb.q as i64;
                ensure(d.map(|d| d as i64) == Some(want), || format!("{amb} ({lab}, {lam}): delta {d:?}, expected {want}"))?;
                ensure(!is_good_pair(&lab, &lam).unwrap(), || format!("{amb} ({lab}, {lam}) wrongly good"))?;
                case3 += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60), "criterion 4")?;
    Ok(format!(
        "{labels_checked} labels (n <= 10): dimension formulas agree; {good} good pairs reach dim Y; {case3} II0 strata at dim Y + (l - q) ({:.1}s)",
        elapsed.as_secs_f64()
    ))
}

/// Points of the conormal variety in the shape `[[v.tu, a], [b, 0]]`.
fn block_shape_laws(trials: usize) -> Result<(usize, usize), String> {
    let mut rng = seeded_rng(44);
    let (mut equal, mut drop) = (0, 0);
    for _ in 0..trials {
        let n = rng.gen_range(2..=7);
        let p = rng.gen_range(1..n);
        let q = n - p;
        let r = rng.gen_range(0..=p.min(q));
        let s = rng.gen_range(0..=p.min(q) - r);
        let (a, b) = random_two_step(p, q, r, s, &mut rng);
        let im_a = a.image();
        let ker_b = b.kernel();
        let v = loop {
            let v = match rng.gen_range(0..3) {
                0 if im_a.dim() > 0 => random_in_subspace(&im_a, 5, &mut rng),
                1 if ker_b.dim() > 0 => random_in_subspace(&ker_b, 5, &mut rng),
                _ => random_vector(p, 5, &mut rng),
            };
            if !v.is_zero() {
                break v;
            }
        };
        let im_tb = b.transpose().image();
        let u = if !b.mul(&v).unwrap().is_zero() {
            RatMatrix::zeros(p, 1)
        } else if rng.gen_bool(0.3) {
            random_in_subspace(&im_tb, 5, &mut rng)
        } else {
            let v_perp = v.transpose().kernel();
            random_in_subspace(&a.transpose().kernel().intersect(&v_perp).unwrap(), 5, &mut rng)
        };
        let eta = v.mul(&u.transpose()).unwrap();
        let x = RatMatrix::from_blocks(&eta, &a, &b, &RatMatrix::zeros(q, q)).unwrap();
        ensure(x.mul(&x).unwrap().is_zero(), || "sampler produced x^2 != 0".into())?;
        let z = theta_split(&x, p, q).unwrap().minus_theta_part;
        ensure(z.mul(&z).unwrap().is_zero(), || format!("(x^-theta)^2 != 0 for x = {x}"))?;
        let (rx, rz) = (x.rank(), z.rank());
        ensure(rz == rx || rz + 1 == rx, || format!("rk x = {rx}, rk x^-theta = {rz}"))?;
        let in_im_a = im_a.contains_vector(v.as_vector()).unwrap();
        let in_im_tb = im_tb.contains_vector(u.as_vector()).unwrap();
        ensure((rz == rx) == (in_im_a || in_im_tb), || {
            format!("rank equality {} but v in Im a = {in_im_a}, u in Im tb = {in_im_tb}", rz == rx)
        })?;
        if rz == rx {
            equal += 1;
        } else {
            drop += 1;
        }
    }
    Ok((equal, drop))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let (equal, drop) = block_shape_laws(1000)?;
    ensure(equal > 0 && drop > 0, || format!("sampler only hit one case: {equal} equal, {drop} drops"))?;

    let mut fibers = 0;
    let mut round_trips = 0;
    for amb in Ambient::all_up_to(10) {
        let n = amb.n();
        for lab in enumerate_pi2k(amb) {
            let pt = representative(&lab);
            ensure(classify_exotic_point(&pt).map_err(|e| e.to_string())? == lab, || format!("{amb}: {lab} round trip"))?;
            round_trips += 1;
            let ell = lab.ell();
            let low = fiber_dimension(&pt, &Partition::square_zero(n, ell).unwrap()).map_err(|e| e.to_string())?;
            let want_low = match lab.typ {
                OrbitType::I => amb.p - lab.r,
                OrbitType::II => lab.s,
                OrbitType::III => 0,
            };
            ensure(low == Some(want_low), || format!("{amb} {lab}: fiber {low:?}, expected {want_low}"))?;
            if let Ok(high) = Partition::square_zero(n, ell + 1) {
                let got = fiber_dimension(&pt, &high).map_err(|e| e.to_string())?;
                let nonempty = lab.typ == OrbitType::II && ell + 1 < amb.p && ell < amb.k.min(n - amb.k);
                let want = nonempty.then(|| amb.p - lab.r - 1);
                ensure(got == want, || format!("{amb} {lab} {high}: fiber {got:?}, expected {want:?}"))?;
            }
            fibers += 1;
        }
        for t in enumerate_theta2k(amb) {
            let got = classify_flag_pair(&representative_flag(&t)).map_err(|e| e.to_string())?;
            ensure(got == t, || format!("{amb}: {t} round trip gave {got}"))?;
            round_trips += 1;
        }
    }

    let mut rng = seeded_rng(500);
    for _ in 0..500 {
        let amb = random_ambient(7, &mut rng);
        let g1 = random_invertible(amb.p, 4, &mut rng);
        let g2 = random_invertible(amb.q, 4, &mut rng);
        let labels = enumerate_pi2k(amb);
        let lab = labels[rng.gen_range(0..labels.len())];
        let moved = representative(&lab).transform(&g1, &g2).map_err(|e| e.to_string())?;
        let got = classify_exotic_point(&moved).map_err(|e| e.to_string())?;
        ensure(got == lab, || format!("{amb}: {lab} moved to {got}"))?;
        let tableaux = enumerate_theta2k(amb);
        let t = tableaux[rng.gen_range(0..tableaux.len())];
        let moved = representative_flag(&t).transform(&g1, &g2).map_err(|e| e.to_string())?;
        let got = classify_flag_pair(&moved).map_err(|e| e.to_string())?;
        ensure(got == t, || format!("{amb}: {t} moved to {got}"))?;
    }

    let mut rng = seeded_rng(1000);
    for i in 0..1000 {
        let n = rng.gen_range(1..=6);
        let m = if i % 2 == 0 {
            let all = partitions(n);
            let blocks = &all[rng.gen_range(0..all.len())];
            let g = random_invertible(n, 3, &mut rng);
            let m = conjugate(&jordan_matrix(blocks), &g);
            let got = jordan_type(&m).map_err(|e| e.to_string())?;
            ensure(got.parts() == blocks.as_slice(), || format!("conjugated blocks {blocks:?} gave {got}"))?;
            m
        } else {
            let mut m = RatMatrix::zeros(n, n);
            for r in 0..n {
                for c in r + 1..n {
                    m.set(r, c, exotic_orbits::linalg::rat(rng.gen_range(-1..=1)));
                }
            }
            m
        };
        let got = jordan_type(&m).map_err(|e| e.to_string())?;
        let want = jordan_oracle(&m);
        ensure(got.parts() == want.as_slice(), || format!("jordan type {got} vs oracle {want:?}"))?;
    }

    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(120), "criterion 5")?;
    Ok(format!(
        "block-shape laws on 1000 points ({equal} equal, {drop} drops); {fibers} fiber checks and {round_trips} round trips (n <= 10); 500 K-invariance trials; 1000 Jordan types ({:.1}s)",
        elapsed.as_secs_f64()
    ))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let first = run_cli(&["check", "--max-n", "8", "--seed", "0"]);
    let second = run_cli(&["check", "--max-n", "8", "--seed", "0"]);
    ensure(first.0 == 0, || format!("check exited {}: {}", first.0, first.2))?;
    ensure(first.1 == second.1, || "two check reports differ".into())?;
    let lines = first.1.lines().count();

    let cfg = SamplingConfig::default();
    let mut tables = 0;
    let mut ambients: Vec<Ambient> = Ambient::all_up_to(5);
    ambients.push(Ambient::new(3, 3, 3).unwrap());
    for amb in ambients {
        let serial = full_correspondence_with(amb, 0, cfg, Execution::Serial).map_err(|e| e.to_string())?;
        let parallel = full_correspondence_with(amb, 0, cfg, Execution::Parallel).map_err(|e| e.to_string())?;
        ensure(serial == parallel, || format!("{amb}: serial and parallel tables differ"))?;
        let a = serde_json::to_string(&serial).unwrap();
        let b = serde_json::to_string(&parallel).unwrap();
        ensure(a == b, || format!("{amb}: serialized tables differ"))?;
        tables += 1;
    }
    Ok(format!(
        "two `check --max-n 8 --seed 0` reports byte-identical ({lines} lines); {tables} serial/parallel table pairs identical ({:.1}s)",
        start.elapsed().as_secs_f64()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 6] = [
        ("1 tabulated maps (3,1,k)", criterion_1),
        ("2 tabulated maps (2,2,2), (3,3,3), m=4 rule", criterion_2),
        ("3 enumeration counts and bijectivity", criterion_3),
        ("4 dimension bookkeeping", criterion_4),
        ("5 property suites", criterion_5),
        ("6 determinism", criterion_6),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(msg) => println!("PASS criterion {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 6 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
