//! The map from K-orbits on `Gr_k(V) x P(V1)` to K-orbits on the exotic cone.
//!
//! Components of the conormal variety are indexed by good pairs
//! (exotic orbit, Jordan type). For each good pair we sample a generic
//! `x` over the orbit representative, a generic `W` in its Spaltenstein
//! fiber, classify `(W, L)`, and take a majority vote.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exotic::{
    classify_exotic_point, dim_exotic_orbit, enumerate_pi2k, representative, Ambient, ExoticOrbitLabel, ExoticPoint,
    OrbitType, RefinedType,
};
use crate::linalg::{jordan_type, random_in_subspace, seeded_rng, theta_split, RatMatrix, SeededRng, Subspace, DEFAULT_BOUND};
use crate::partitions::{spaltenstein_dim, Composition, Partition};
use crate::tableaux::{classify_flag_pair, enumerate_theta2k, FlagPair, MarkedTableau};

/// Retries for the `u`-rejection step and for dimension-deficient `W`.
pub const RETRY_BUDGET: usize = 20;
pub const DEFAULT_SAMPLES: usize = 25;
pub const ESCALATED_BOUND: i64 = 1_000_000;
pub const ESCALATED_SAMPLES: usize = 101;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplingConfig {
    pub samples: usize,
    pub bound: i64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig { samples: DEFAULT_SAMPLES, bound: DEFAULT_BOUND }
    }
}

/// `[(n-l, l)*]`, plus `(n-l-1, l+1)*` for type IIstar.
pub fn good_partitions(lab: &ExoticOrbitLabel) -> Vec<Partition> {
    let n = lab.ambient.n();
    let ell = lab.ell();
    let mut out = vec![Partition::square_zero(n, ell).expect("r+s <= n/2")];
    if lab.refined() == RefinedType::IIstar {
        out.push(Partition::square_zero(n, ell + 1).expect("r+s < min{k,n-k}"));
    }
    out
}

/// Which of the two square-zero strata `lam` is: `false` for rank `l`,
/// `true` for rank `l+1`.
fn stratum_shift(lab: &ExoticOrbitLabel, lam: &Partition) -> Result<bool> {
    let n = lab.ambient.n();
    let ell = lab.ell();
    if lam.size() == n {
        if Partition::square_zero(n, ell).is_ok_and(|p| &p == lam) {
            return Ok(false);
        }
        if Partition::square_zero(n, ell + 1).is_ok_and(|p| &p == lam) {
            return Ok(true);
        }
    }
    Err(Error::Precondition(format!("{lam} is neither (n-l,l)* nor (n-l-1,l+1)* for l = {ell}, n = {n}")))
}

/// Closed-form fiber dimension: `p - r`, `s` or `0` on the rank-`l` stratum
/// for types I, II, III; `p - r - 1` on the rank-`(l+1)` stratum of type II
/// when `l < p-1` and `l < min{k,n-k}`; `None` for an empty stratum.
pub fn fiber_dimension_closed_form(lab: &ExoticOrbitLabel, lam: &Partition) -> Result<Option<usize>> {
    let Ambient { p, .. } = lab.ambient;
    let ell = lab.ell();
    Ok(match (stratum_shift(lab, lam)?, lab.typ) {
        (false, OrbitType::I) => Some(p - lab.r),
        (false, OrbitType::II) => Some(lab.s),
        (false, OrbitType::III) => Some(0),
        (true, OrbitType::II) if ell + 1 < p && ell < lab.ambient.rank_cap() => Some(p - lab.r - 1),
        (true, _) => None,
    })
}

/// The admissible `u`-space over a point, as a subspace of `Q^p` plus an
/// excluded subspace (`u` must avoid it) for the rank-`(l+1)` stratum.
struct USpace {
    allowed: Subspace,
    excluded: Option<Subspace>,
}

fn u_space(pt: &ExoticPoint, lab: &ExoticOrbitLabel, shifted: bool) -> Result<Option<USpace>> {
    let p = pt.ambient.p;
    let ker_ta = pt.a.transpose().kernel();
    let im_tb = pt.b.transpose().image();
    Ok(match (shifted, lab.typ) {
        (false, OrbitType::I) => Some(USpace { allowed: ker_ta, excluded: None }),
        (false, OrbitType::II) => Some(USpace { allowed: im_tb, excluded: None }),
        (false, OrbitType::III) => Some(USpace { allowed: Subspace::zero(p), excluded: None }),
        (true, OrbitType::II) => {
            if lab.ell() + 1 > pt.ambient.rank_cap() {
                return Ok(None);
            }
            let v_perp = RatMatrix::from_rows(&[pt.v()], p).kernel();
            let allowed = ker_ta.intersect(&v_perp)?;
            if im_tb.contains(&allowed)? {
                None
            } else {
                Some(USpace { allowed, excluded: Some(im_tb) })
            }
        }
        // v in Im a (type I) or bv != 0 (type III): adding v.tu never raises the rank
        (true, _) => None,
    })
}

/// Dimension of the `u`-space over `pt` for the stratum `lam`, computed by
/// linear algebra on `ker ta`, `v⊥` and `Im tb`, and checked against
/// [`fiber_dimension_closed_form`].
pub fn fiber_dimension(pt: &ExoticPoint, lam: &Partition) -> Result<Option<usize>> {
    let lab = classify_exotic_point(pt)?;
    let shifted = stratum_shift(&lab, lam)?;
    let computed = u_space(pt, &lab, shifted)?.map(|u| u.allowed.dim());
    let expected = fiber_dimension_closed_form(&lab, lam)?;
    if computed != expected {
        return Err(Error::Consistency(format!(
            "fiber dimension over {lab} for {lam}: computed {computed:?}, closed form {expected:?}"
        )));
    }
    Ok(computed)
}

/// `dim orbit + dim fiber + dim Spaltenstein`, or `None` for an empty stratum.
pub fn delta(lab: &ExoticOrbitLabel, lam: &Partition) -> Result<Option<usize>> {
    let Some(fiber) = fiber_dimension_closed_form(lab, lam)? else {
        return Ok(None);
    };
    let amb = lab.ambient;
    let Some(spalt) = spaltenstein_dim(lam, &Composition::maximal(amb.k, amb.n()))? else {
        return Ok(None);
    };
    Ok(Some(dim_exotic_orbit(lab) + fiber + spalt))
}

pub fn is_good_pair(lab: &ExoticOrbitLabel, lam: &Partition) -> Result<bool> {
    Ok(delta(lab, lam)? == Some(lab.ambient.conormal_dim()))
}

/// `x = [[v.tu, a], [b, 0]]` with `u` random in the admissible set for `lam`.
/// The defining properties of `x` are asserted before returning.
pub fn generic_x(pt: &ExoticPoint, lam: &Partition, bound: i64, rng: &mut SeededRng) -> Result<RatMatrix> {
    let lab = classify_exotic_point(pt)?;
    let shifted = stratum_shift(&lab, lam)?;
    let space = u_space(pt, &lab, shifted)?
        .ok_or_else(|| Error::EmptyStratum(format!("{lab} has no points of Jordan type {lam}")))?;
    let mut attempt = 0;
    let u = loop {
        let u = random_in_subspace(&space.allowed, bound, rng);
        match &space.excluded {
            Some(ex) if ex.contains_vector(u.as_vector())? => {}
            _ => break u,
        }
        attempt += 1;
        if attempt == RETRY_BUDGET {
            return Err(Error::BudgetExhausted(format!(
                "{RETRY_BUDGET} draws of u for {lab}, {lam} all fell in Im tb"
            )));
        }
    };
    let v = RatMatrix::column_vector(pt.v());
    let x = RatMatrix::from_blocks(&v.mul(&u.transpose())?, &pt.a, &pt.b, &RatMatrix::zeros(pt.ambient.q, pt.ambient.q))?;
    check_x(pt, &x, lam)?;
    Ok(x)
}

fn check_x(pt: &ExoticPoint, x: &RatMatrix, lam: &Partition) -> Result<()> {
    let fail = |what: &str| Err(Error::InvariantViolation(format!("generic x: {what}")));
    if !x.mul(x)?.is_zero() {
        return fail("x^2 != 0");
    }
    let split = theta_split(x, pt.ambient.p, pt.ambient.q)?;
    if split.minus_theta_part != pt.z() {
        return fail("x^(-theta) differs from z");
    }
    jordan_type(&split.minus_theta_part)?;
    let xt = &split.theta_part;
    if !pt.line.contains(&xt.image())? || !xt.kernel().contains(&pt.line)? {
        return fail("x^theta is not in n_L");
    }
    if &jordan_type(x)? != lam {
        return fail("wrong Jordan type");
    }
    Ok(())
}

/// `W = Im x + (k - rk x)` random vectors of `ker x`.
pub fn generic_w(x: &RatMatrix, k: usize, bound: i64, rng: &mut SeededRng) -> Result<Subspace> {
    let n = x.rows();
    if !x.is_square() || !x.mul(x)?.is_zero() {
        return Err(Error::Precondition("generic W needs a square-zero matrix".into()));
    }
    let im = x.image();
    let ker = x.kernel();
    if k > n || im.dim() > k.min(n - k) {
        return Err(Error::Precondition(format!("rank {} exceeds min{{k,n-k}} for k = {k}, n = {n}", im.dim())));
    }
    for _ in 0..RETRY_BUDGET {
        let mut w = im.clone();
        for _ in im.dim()..k {
            let vec = random_in_subspace(&ker, bound, rng);
            w = w.sum(&Subspace::span(n, &[vec.as_vector().to_vec()]))?;
        }
        if w.dim() == k {
            debug_assert!(w.contains(&im).unwrap() && ker.contains(&w).unwrap());
            return Ok(w);
        }
    }
    Err(Error::BudgetExhausted(format!("{RETRY_BUDGET} attempts at a {k}-dimensional W all fell short")))
}

/// A sampled point `(x, W, L)` of the conormal variety.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub x: RatMatrix,
    #[serde(rename = "W")]
    pub w: Subspace,
    #[serde(rename = "L")]
    pub line: Subspace,
}

impl Witness {
    /// Re-checks the conormal conditions and that the witness lies over the
    /// claimed orbit pair.
    pub fn verify(&self, tableau: &MarkedTableau, label: &ExoticOrbitLabel, lam: &Partition) -> Result<()> {
        let Ambient { p, q, .. } = label.ambient;
        let fail = |what: &str| Err(Error::Consistency(format!("witness for {tableau}: {what}")));
        if !self.x.mul(&self.x)?.is_zero() {
            return fail("x^2 != 0");
        }
        if !self.w.contains(&self.x.image())? || !self.x.kernel().contains(&self.w)? {
            return fail("W is not between Im x and ker x");
        }
        let split = theta_split(&self.x, p, q)?;
        let xt = &split.theta_part;
        if !self.line.contains(&xt.image())? || !xt.kernel().contains(&self.line)? {
            return fail("L is not between Im x^theta and ker x^theta");
        }
        if &jordan_type(&self.x)? != lam {
            return fail("Jordan type of x");
        }
        let fp = FlagPair { ambient: label.ambient, w: self.w.clone(), line: self.line.clone() };
        if &classify_flag_pair(&fp)? != tableau {
            return fail("(W, L) lies in a different orbit");
        }
        let z = &split.minus_theta_part;
        let pt = ExoticPoint { ambient: label.ambient, line: self.line.clone(), a: z.block(0, p, p, q), b: z.block(p, 0, q, p) };
        if &classify_exotic_point(&pt)? != label {
            return fail("(L, x^(-theta)) lies in a different orbit");
        }
        Ok(())
    }
}

/// Outcome of the vote for one good pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preimage {
    pub lam: Partition,
    pub tableau: MarkedTableau,
    pub witness: Witness,
    /// Votes per tableau, in enumeration order.
    pub tally: Vec<(MarkedTableau, usize)>,
    pub samples: usize,
    pub escalated: bool,
}

impl Preimage {
    pub fn winner_votes(&self) -> usize {
        self.tally.iter().find(|(t, _)| *t == self.tableau).map_or(0, |(_, c)| *c)
    }

    pub fn winner_share(&self) -> f64 {
        self.winner_votes() as f64 / self.samples as f64
    }
}

fn format_tally(tally: &[(MarkedTableau, usize)]) -> String {
    tally.iter().map(|(t, c)| format!("{t}: {c}")).collect::<Vec<_>>().join(", ")
}

fn vote(
    pt: &ExoticPoint,
    lam: &Partition,
    samples: usize,
    bound: i64,
    rng: &mut SeededRng,
) -> Result<(Vec<(MarkedTableau, usize)>, HashMap<MarkedTableau, Witness>)> {
    let mut counts: BTreeMap<MarkedTableau, usize> = BTreeMap::new();
    let mut witnesses = HashMap::new();
    for _ in 0..samples {
        let x = generic_x(pt, lam, bound, rng)?;
        let w = generic_w(&x, pt.ambient.k, bound, rng)?;
        let fp = FlagPair { ambient: pt.ambient, w, line: pt.line.clone() };
        let t = classify_flag_pair(&fp)?;
        *counts.entry(t).or_default() += 1;
        witnesses.entry(t).or_insert(Witness { x, w: fp.w, line: fp.line });
    }
    let order = enumerate_theta2k(pt.ambient);
    let tally = order.into_iter().filter_map(|t| counts.get(&t).map(|&c| (t, c))).collect();
    Ok((tally, witnesses))
}

/// One preimage tableau per good partition of `lab`, found by majority vote.
/// Without a strict majority the vote is rerun once with a larger bound and
/// more samples, then fails with the tally.
pub fn phi_preimage(lab: &ExoticOrbitLabel, cfg: SamplingConfig, rng: &mut SeededRng) -> Result<Vec<Preimage>> {
    let pt = representative(lab);
    let mut out: Vec<Preimage> = Vec::new();
    for lam in good_partitions(lab) {
        let mut attempt = (cfg.samples, cfg.bound, false);
        let preimage = loop {
            let (samples, bound, escalated) = attempt;
            let (tally, mut witnesses) = vote(&pt, &lam, samples, bound, rng)?;
            if let Some(&(t, _)) = tally.iter().find(|(_, c)| 2 * c > samples) {
                let witness = witnesses.remove(&t).expect("winner was sampled");
                break Preimage { lam: lam.clone(), tableau: t, witness, tally, samples, escalated };
            }
            if escalated {
                return Err(Error::NoMajority(format!(
                    "{lab}, lambda = {lam}, {samples} samples: {}",
                    format_tally(&tally)
                )));
            }
            attempt = (ESCALATED_SAMPLES.max(cfg.samples), ESCALATED_BOUND.max(cfg.bound), true);
        };
        if let Some(prev) = out.iter().find(|e| e.tableau == preimage.tableau) {
            return Err(Error::Consistency(format!(
                "{lab}: partitions {} and {} give the same tableau {}",
                prev.lam, preimage.lam, preimage.tableau
            )));
        }
        out.push(preimage);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrespondenceEntry {
    pub tableau: MarkedTableau,
    pub label: ExoticOrbitLabel,
    pub lambda: Partition,
    pub witness: Witness,
}

/// Vote statistics kept alongside a table but not serialized.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct VoteStats {
    /// Share of samples won by the chosen tableau, in entry order.
    pub winner_shares: Vec<f64>,
    pub escalations: usize,
}

impl VoteStats {
    pub fn min_share(&self) -> f64 {
        self.winner_shares.iter().copied().fold(1.0, f64::min)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrespondenceTable {
    pub ambient: Ambient,
    /// One entry per tableau, in enumeration order.
    pub entries: Vec<CorrespondenceEntry>,
    pub bijective: bool,
    #[serde(skip)]
    pub stats: VoteStats,
}

impl CorrespondenceTable {
    pub fn image_of(&self, t: &MarkedTableau) -> Option<&CorrespondenceEntry> {
        self.entries.iter().find(|e| e.tableau == *t)
    }

    /// Preimage tableaux of each label, labels in enumeration order.
    pub fn fibers(&self) -> Vec<(ExoticOrbitLabel, Vec<&CorrespondenceEntry>)> {
        enumerate_pi2k(self.ambient)
            .into_iter()
            .map(|l| (l, self.entries.iter().filter(|e| e.label == l).collect()))
            .collect()
    }

    pub fn verify_witnesses(&self) -> Result<()> {
        for e in &self.entries {
            e.witness.verify(&e.tableau, &e.label, &e.lambda)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Serial,
    Parallel,
}

/// Each label gets its own stream of the master seed, so the result does not
/// depend on scheduling.
pub fn label_rng(seed: u64, index: usize) -> SeededRng {
    let mut rng = seeded_rng(seed);
    rng.set_stream(index as u64);
    rng
}

pub fn full_correspondence(amb: Ambient, seed: u64, cfg: SamplingConfig) -> Result<CorrespondenceTable> {
    full_correspondence_with(amb, seed, cfg, Execution::Parallel)
}

pub fn full_correspondence_with(amb: Ambient, seed: u64, cfg: SamplingConfig, exec: Execution) -> Result<CorrespondenceTable> {
    let labels = enumerate_pi2k(amb);
    let run = |(i, lab): (usize, &ExoticOrbitLabel)| phi_preimage(lab, cfg, &mut label_rng(seed, i));
    let preimages: Vec<Vec<Preimage>> = match exec {
        Execution::Serial => labels.iter().enumerate().map(run).collect::<Result<_>>()?,
        Execution::Parallel => labels.par_iter().enumerate().map(run).collect::<Result<_>>()?,
    };

    let mut by_tableau: HashMap<MarkedTableau, (ExoticOrbitLabel, Preimage)> = HashMap::new();
    for (lab, pre) in labels.iter().zip(preimages) {
        let expected = if lab.refined() == RefinedType::IIstar { 2 } else { 1 };
        if pre.len() != expected {
            return Err(Error::Consistency(format!("{lab} has {} preimages, expected {expected}", pre.len())));
        }
        for entry in pre {
            if let Some((other, _)) = by_tableau.get(&entry.tableau) {
                return Err(Error::Consistency(format!(
                    "tableau {} is a preimage of both {other} and {lab}",
                    entry.tableau
                )));
            }
            by_tableau.insert(entry.tableau, (*lab, entry));
        }
    }

    let tableaux = enumerate_theta2k(amb);
    let missing: Vec<String> = tableaux.iter().filter(|t| !by_tableau.contains_key(t)).map(|t| t.to_string()).collect();
    if !missing.is_empty() {
        return Err(Error::Consistency(format!("no label maps from {}", missing.join(", "))));
    }

    let mut stats = VoteStats::default();
    let entries = tableaux
        .into_iter()
        .map(|t| {
            let (label, pre) = by_tableau.remove(&t).expect("checked above");
            stats.winner_shares.push(pre.winner_share());
            stats.escalations += usize::from(pre.escalated);
            CorrespondenceEntry { tableau: t, label, lambda: pre.lam, witness: pre.witness }
        })
        .collect::<Vec<_>>();
    let bijective = entries.len() == labels.len();
    Ok(CorrespondenceTable { ambient: amb, entries, bijective, stats })
}

/// `p <= max{k, n-k, q+1}`.
pub fn bijectivity_predicate(amb: Ambient) -> bool {
    amb.p <= amb.k.max(amb.n() - amb.k).max(amb.q + 1)
}

/// Whether the table is a bijection; errors if that disagrees with
/// [`bijectivity_predicate`].
pub fn check_bijectivity_criterion(amb: Ambient, table: &CorrespondenceTable) -> Result<bool> {
    if table.ambient != amb {
        return Err(Error::Precondition(format!("table is for {}, not {amb}", table.ambient)));
    }
    let fibers = table.fibers();
    let bijective = fibers.iter().all(|(_, f)| f.len() == 1);
    if bijective != bijectivity_predicate(amb) || bijective != table.bijective {
        return Err(Error::Consistency(format!(
            "{amb}: table bijective = {bijective}, predicate says {}",
            bijectivity_predicate(amb)
        )));
    }
    Ok(bijective)
}

/// For `p = q = k`: `r = n1`, `s = n2`, and the type is read off the mark.
pub fn closed_form_phi_pqk_equal(t: &MarkedTableau) -> Result<ExoticOrbitLabel> {
    let Ambient { p, q, k } = t.ambient;
    if p != q || q != k {
        return Err(Error::Precondition(format!("closed form needs p = q = k, got {}", t.ambient)));
    }
    let typ = match t.mark {
        2 => OrbitType::I,
        1 => OrbitType::II,
        _ => OrbitType::III,
    };
    ExoticOrbitLabel::new(t.ambient, t.n1, t.n2, typ)
}
