//! Consistency sweep over every ambient up to a given `n`: enumeration,
//! classification round trips, dimension bookkeeping and the full
//! correspondence with its fiber law.

use std::time::Duration;

use rayon::prelude::*;
use serde::Serialize;

use crate::correspondence::{
    bijectivity_predicate, check_bijectivity_criterion, closed_form_phi_pqk_equal, delta, fiber_dimension,
    full_correspondence, good_partitions, is_good_pair, CorrespondenceTable, SamplingConfig,
};
use crate::error::Result;
use crate::exotic::{
    admissible_mu_sequences, classify_exotic_point, dim_exotic_orbit, enumerate_pi2k, mu_of, representative, Ambient,
    OrbitType, RefinedType,
};
use crate::partitions::Partition;
use crate::tableaux::{classify_flag_pair, enumerate_theta2k, representative_flag};

/// Shares below this are reported as a genericity warning.
pub const HEALTHY_SHARE: f64 = 0.9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AmbientReport {
    pub ambient: Ambient,
    pub theta: usize,
    pub pi: usize,
    pub iistar: usize,
    pub bijective: Option<bool>,
    pub min_share: Option<f64>,
    pub checks: Vec<CheckResult>,
}

impl AmbientReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }

    /// One deterministic line, plus one line per failed check.
    pub fn render_text(&self) -> String {
        let bij = self.bijective.map_or("?".to_string(), |b| b.to_string());
        let mut out = format!(
            "{} theta={} pi={} iistar={} bijective={} checks={} {}",
            self.ambient,
            self.theta,
            self.pi,
            self.iistar,
            bij,
            self.checks.len(),
            if self.passed() { "ok" } else { "FAIL" }
        );
        for c in self.checks.iter().filter(|c| !c.passed) {
            out.push_str(&format!("\n  FAIL {}: {}", c.name, c.detail.as_deref().unwrap_or("")));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub max_n: usize,
    pub seed: u64,
    pub ambients: Vec<AmbientReport>,
    /// Wall-clock time; kept out of the rendered report so reruns compare equal.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.ambients.iter().all(AmbientReport::passed)
    }

    pub fn first_failure(&self) -> Option<(Ambient, &CheckResult)> {
        self.ambients.iter().find_map(|a| a.first_failure().map(|c| (a.ambient, c)))
    }

    pub fn check_count(&self) -> usize {
        self.ambients.iter().map(|a| a.checks.len()).sum()
    }

    pub fn summary_line(&self) -> String {
        let failures = self.ambients.iter().flat_map(|a| &a.checks).filter(|c| !c.passed).count();
        format!(
            "# {} ambients, {} checks, {} failures",
            self.ambients.len(),
            self.check_count(),
            failures
        )
    }
}

fn check(name: &'static str, outcome: std::result::Result<(), String>) -> CheckResult {
    match outcome {
        Ok(()) => CheckResult { name, passed: true, detail: None },
        Err(detail) => CheckResult { name, passed: false, detail: Some(detail) },
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Labels agree with a brute-force list of admissible `mu` sequences.
pub fn check_labels_against_definition(amb: Ambient) -> std::result::Result<(), String> {
    let Ambient { p, q, .. } = amb;
    let mut brute: Vec<(usize, usize, Vec<i32>)> = Vec::new();
    for r in 0..=p.min(q) {
        for s in 0..=(p.min(q) - r) {
            if r + s > amb.rank_cap() {
                continue;
            }
            for mu in admissible_mu_sequences(p, q, r, s) {
                brute.push((r, s, mu));
            }
        }
    }
    let mut ours: Vec<(usize, usize, Vec<i32>)> = enumerate_pi2k(amb).iter().map(|l| (l.r, l.s, mu_of(l))).collect();
    brute.sort();
    ours.sort();
    ensure(brute == ours, || format!("enumerated {} labels, definition admits {}", ours.len(), brute.len()))
}

pub fn check_round_trips(amb: Ambient) -> std::result::Result<(), String> {
    for lab in enumerate_pi2k(amb) {
        let got = classify_exotic_point(&representative(&lab)).map_err(|e| e.to_string())?;
        ensure(got == lab, || format!("representative of {lab} classifies as {got}"))?;
    }
    for t in enumerate_theta2k(amb) {
        let got = classify_flag_pair(&representative_flag(&t)).map_err(|e| e.to_string())?;
        ensure(got == t, || format!("representative of {t} classifies as {got}"))?;
    }
    Ok(())
}

/// Orbit dimensions against the per-type closed forms.
pub fn check_orbit_dimensions(amb: Ambient) -> std::result::Result<(), String> {
    let Ambient { p, .. } = amb;
    let n = amb.n();
    for lab in enumerate_pi2k(amb) {
        let ell = lab.ell();
        let base = ell * (n - ell);
        let closed = match lab.typ {
            OrbitType::I => base + lab.r - 1,
            OrbitType::II => base + p - lab.s - 1,
            OrbitType::III => base + p - 1,
        };
        let got = dim_exotic_orbit(&lab);
        ensure(got == closed, || format!("dim of {lab}: {got} vs closed form {closed}"))?;
    }
    Ok(())
}

/// Good pairs reach `dim Y`; other nonempty strata fall short, by exactly
/// `q - l` in the II0 case with `l < min{k, n-k, p-1}`.
pub fn check_delta(amb: Ambient) -> std::result::Result<(), String> {
    let n = amb.n();
    let dim_y = amb.conormal_dim();
    for lab in enumerate_pi2k(amb) {
        let good = good_partitions(&lab);
        let ell = lab.ell();
        for lam in [Partition::square_zero(n, ell), Partition::square_zero(n, ell + 1)].into_iter().flatten() {
            let d = delta(&lab, &lam).map_err(|e| e.to_string())?;
            let is_good = good.contains(&lam);
            match d {
                Some(d) if is_good => ensure(d == dim_y, || format!("delta({lab}, {lam}) = {d} != dim Y = {dim_y}"))?,
                None if is_good => return Err(format!("good pair ({lab}, {lam}) has an empty stratum")),
                Some(d) => {
                    ensure(d < dim_y, || format!("non-good ({lab}, {lam}) has delta {d} >= dim Y"))?;
                    let case3 = lab.refined() == RefinedType::II0 && ell < amb.rank_cap().min(amb.p - 1);
                    if case3 {
                        let expected = dim_y as i64 + ell as i64 - amb.q as i64;
                        ensure(d as i64 == expected, || format!("delta({lab}, {lam}) = {d}, expected {expected}"))?;
                    }
                }
                None => {}
            }
            ensure(is_good_pair(&lab, &lam).map_err(|e| e.to_string())? == is_good, || {
                format!("goodness of ({lab}, {lam}) disagrees with the good partition list")
            })?;
        }
    }
    Ok(())
}

pub fn check_fiber_dimensions(amb: Ambient) -> std::result::Result<(), String> {
    let n = amb.n();
    for lab in enumerate_pi2k(amb) {
        let pt = representative(&lab);
        for lam in [Partition::square_zero(n, lab.ell()), Partition::square_zero(n, lab.ell() + 1)].into_iter().flatten() {
            fiber_dimension(&pt, &lam).map_err(|e| e.to_string())?;
        }
    }
    Ok(())
}

/// Fiber law, counting identity, bijectivity predicate, witnesses and, for
/// `p = q = k`, the closed-form map.
pub fn check_table(amb: Ambient, table: &CorrespondenceTable) -> std::result::Result<(), String> {
    for (lab, fiber) in table.fibers() {
        let expected = if lab.refined() == RefinedType::IIstar { 2 } else { 1 };
        ensure(fiber.len() == expected, || format!("{lab} has {} preimages, expected {expected}", fiber.len()))?;
    }
    let theta = enumerate_theta2k(amb).len();
    let pi = enumerate_pi2k(amb);
    let iistar = pi.iter().filter(|l| l.refined() == RefinedType::IIstar).count();
    ensure(theta == pi.len() + iistar, || format!("|Theta| = {theta} != |Pi| + #IIstar = {}", pi.len() + iistar))?;
    check_bijectivity_criterion(amb, table).map_err(|e| e.to_string())?;
    table.verify_witnesses().map_err(|e| e.to_string())?;
    if amb.p == amb.q && amb.q == amb.k {
        for e in &table.entries {
            let cf = closed_form_phi_pqk_equal(&e.tableau).map_err(|e| e.to_string())?;
            ensure(cf == e.label, || format!("{} maps to {}, closed form says {cf}", e.tableau, e.label))?;
        }
    }
    Ok(())
}

pub fn check_ambient(amb: Ambient, seed: u64, cfg: SamplingConfig) -> AmbientReport {
    let pi = enumerate_pi2k(amb);
    let iistar = pi.iter().filter(|l| l.refined() == RefinedType::IIstar).count();
    let mut checks = vec![
        check("labels-match-definition", check_labels_against_definition(amb)),
        check("classify-representative", check_round_trips(amb)),
        check("orbit-dimensions", check_orbit_dimensions(amb)),
        check("delta-bookkeeping", check_delta(amb)),
        check("fiber-dimensions", check_fiber_dimensions(amb)),
    ];
    let (bijective, min_share) = match full_correspondence(amb, seed, cfg) {
        Ok(table) => {
            checks.push(check("correspondence", check_table(amb, &table)));
            (Some(table.bijective), Some(table.stats.min_share()))
        }
        Err(e) => {
            checks.push(check("correspondence", Err(e.to_string())));
            (None, None)
        }
    };
    checks.push(check("bijectivity-predicate", {
        ensure(bijective.map_or(true, |b| b == bijectivity_predicate(amb)), || "table disagrees with predicate".into())
    }));
    AmbientReport { ambient: amb, theta: enumerate_theta2k(amb).len(), pi: pi.len(), iistar, bijective, min_share, checks }
}

/// Runs every ambient with `n <= max_n`, calling `on_ambient` in order as
/// results become available. Ambients of one `n` run in parallel.
pub fn run_sweep(
    max_n: usize,
    seed: u64,
    cfg: SamplingConfig,
    mut on_ambient: impl FnMut(&AmbientReport),
) -> Result<SweepReport> {
    let start = std::time::Instant::now();
    let mut ambients = Vec::new();
    for n in 1..=max_n {
        let batch: Vec<Ambient> = Ambient::all_up_to(n).into_iter().filter(|a| a.n() == n).collect();
        let reports: Vec<AmbientReport> = batch.par_iter().map(|&a| check_ambient(a, seed, cfg)).collect();
        for r in reports {
            on_ambient(&r);
            ambients.push(r);
        }
    }
    Ok(SweepReport { max_n, seed, ambients, elapsed: start.elapsed() })
}
