//! K-orbits on the exotic nilpotent cone `P(V1) x N(s)_2^k`, labelled by
//! striped signed diagrams `((r, s), mu)`.
//!
//! The sequence `mu` is never stored: a label is determined by `(p, q, r, s)`
//! and its type, and [`mu_of`] recomputes it.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{RatMatrix, Rational, Subspace};
use crate::RenderFormat;

/// Dimensions `p = dim V1`, `q = dim V2` and the Grassmannian index `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ambient {
    pub p: usize,
    pub q: usize,
    pub k: usize,
}

impl Ambient {
    pub fn new(p: usize, q: usize, k: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidAmbient("p must be at least 1 (P(V1) is empty otherwise)".into()));
        }
        if k > p + q {
            return Err(Error::InvalidAmbient(format!("k = {k} exceeds n = {}", p + q)));
        }
        Ok(Ambient { p, q, k })
    }

    pub fn n(&self) -> usize {
        self.p + self.q
    }

    /// `min{k, n-k}`: the largest rank allowed in `N(s)_2^k`.
    pub fn rank_cap(&self) -> usize {
        self.k.min(self.n() - self.k)
    }

    /// `dim Y = k(n-k) + p - 1`.
    pub fn conormal_dim(&self) -> usize {
        self.k * (self.n() - self.k) + self.p - 1
    }

    /// Every ambient with `p >= 1` and `p + q = n` for `n` in `1..=max_n`.
    pub fn all_up_to(max_n: usize) -> Vec<Ambient> {
        let mut out = Vec::new();
        for n in 1..=max_n {
            for p in 1..=n {
                for k in 0..=n {
                    out.push(Ambient { p, q: n - p, k });
                }
            }
        }
        out
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&format!("(p,q,k)=({},{},{})", self.p, self.q, self.k))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OrbitType {
    I,
    II,
    III,
}

/// Type II split by whether `q = r+s <= p-2` and `q < min{k, n-k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RefinedType {
    I,
    II0,
    IIstar,
    III,
}

impl fmt::Display for RefinedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RefinedType::I => "I",
            RefinedType::II0 => "II0",
            RefinedType::IIstar => "IIstar",
            RefinedType::III => "III",
        };
        f.pad(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExoticOrbitLabel {
    pub ambient: Ambient,
    pub r: usize,
    pub s: usize,
    pub typ: OrbitType,
}

impl ExoticOrbitLabel {
    pub fn new(ambient: Ambient, r: usize, s: usize, typ: OrbitType) -> Result<Self> {
        let Ambient { p, q, .. } = ambient;
        let ell = r + s;
        let bad = |why: &str| Err(Error::InvalidLabel(format!("((r,s)=({r},{s}), {typ:?}) in {ambient}: {why}")));
        if ell > p.min(q) {
            return bad("r+s exceeds min{p,q}");
        }
        if ell > ambient.rank_cap() {
            return bad("r+s exceeds min{k,n-k}");
        }
        match typ {
            OrbitType::I if r == 0 => bad("type I needs r >= 1"),
            OrbitType::II if ell == p => bad("type II needs r+s < p"),
            OrbitType::III if s == 0 => bad("type III needs s >= 1"),
            _ => Ok(ExoticOrbitLabel { ambient, r, s, typ }),
        }
    }

    pub fn ell(&self) -> usize {
        self.r + self.s
    }

    pub fn refined(&self) -> RefinedType {
        refine_type(self)
    }
}

impl fmt::Display for ExoticOrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&format!("(({},{}),{})", self.r, self.s, self.refined()))
    }
}

#[derive(Serialize, Deserialize)]
struct LabelJson {
    p: usize,
    q: usize,
    k: usize,
    r: usize,
    s: usize,
    #[serde(rename = "type")]
    typ: String,
}

impl Serialize for ExoticOrbitLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let Ambient { p, q, k } = self.ambient;
        LabelJson { p, q, k, r: self.r, s: self.s, typ: self.refined().to_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExoticOrbitLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = LabelJson::deserialize(d)?;
        let ambient = Ambient::new(j.p, j.q, j.k).map_err(D::Error::custom)?;
        let typ = match j.typ.as_str() {
            "I" => OrbitType::I,
            "II" | "II0" | "IIstar" => OrbitType::II,
            "III" => OrbitType::III,
            other => return Err(D::Error::custom(format!("unknown orbit type {other:?}"))),
        };
        let label = ExoticOrbitLabel::new(ambient, j.r, j.s, typ).map_err(D::Error::custom)?;
        if j.typ.starts_with("II") && j.typ != "II" && label.refined().to_string() != j.typ {
            return Err(D::Error::custom(format!("label is of type {}, not {}", label.refined(), j.typ)));
        }
        Ok(label)
    }
}

/// All labels of `Π_2^k`, ordered by `r+s` descending, then `r` descending,
/// then type.
pub fn enumerate_pi2k(amb: Ambient) -> Vec<ExoticOrbitLabel> {
    let cap = amb.p.min(amb.q).min(amb.rank_cap());
    let mut out = Vec::new();
    for ell in (0..=cap).rev() {
        for r in (0..=ell).rev() {
            for typ in [OrbitType::I, OrbitType::II, OrbitType::III] {
                if let Ok(label) = ExoticOrbitLabel::new(amb, r, ell - r, typ) {
                    out.push(label);
                }
            }
        }
    }
    out
}

/// `(1^r, c^s, e^(p-r-s), 0^(q-r-s))` with `(c, e)` fixed by the type.
pub fn mu_of(lab: &ExoticOrbitLabel) -> Vec<i32> {
    let Ambient { p, q, .. } = lab.ambient;
    let (c, e) = match lab.typ {
        OrbitType::I => (0, -1),
        OrbitType::II => (0, 1),
        OrbitType::III => (2, 1),
    };
    let ell = lab.ell();
    let mut mu = vec![1; lab.r];
    mu.extend(std::iter::repeat(c).take(lab.s));
    mu.extend(std::iter::repeat(e).take(p - ell));
    mu.extend(std::iter::repeat(0).take(q - ell));
    mu
}

pub fn refine_type(lab: &ExoticOrbitLabel) -> RefinedType {
    match lab.typ {
        OrbitType::I => RefinedType::I,
        OrbitType::III => RefinedType::III,
        OrbitType::II => {
            let Ambient { p, q, .. } = lab.ambient;
            let ell = lab.ell();
            if q == ell && ell + 2 <= p && q < lab.ambient.rank_cap() {
                RefinedType::IIstar
            } else {
                RefinedType::II0
            }
        }
    }
}

/// `(r+s)(n-(r+s))`.
pub fn dim_s_orbit(r: usize, s: usize, amb: Ambient) -> usize {
    let ell = r + s;
    ell * (amb.n() - ell)
}

/// `(r+s)(n-(r+s)) + Σ ceil(mu_i / 2) - 1`.
pub fn dim_exotic_orbit(lab: &ExoticOrbitLabel) -> usize {
    let ceil_sum: i64 = mu_of(lab).iter().map(|&m| (m as i64 + 1).div_euclid(2)).sum();
    let total = dim_s_orbit(lab.r, lab.s, lab.ambient) as i64 + ceil_sum - 1;
    usize::try_from(total).expect("orbit dimension is nonnegative")
}

/// A point `(L, z)` of the exotic nilpotent cone, with `z = [[0, a], [b, 0]]`.
///
/// `line` is a line of `Q^n` contained in `V1 = Q^p x 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExoticPoint {
    pub ambient: Ambient,
    pub line: Subspace,
    pub a: RatMatrix,
    pub b: RatMatrix,
}

impl ExoticPoint {
    /// `z = [[0, a], [b, 0]]`.
    pub fn z(&self) -> RatMatrix {
        let Ambient { p, q, .. } = self.ambient;
        RatMatrix::from_blocks(&RatMatrix::zeros(p, p), &self.a, &self.b, &RatMatrix::zeros(q, q))
            .expect("block shapes checked by validate")
    }

    /// A spanning vector of `L`, restricted to its `V1` coordinates.
    pub fn v(&self) -> Vec<Rational> {
        self.line.basis().row(0)[..self.ambient.p].to_vec()
    }

    /// Checks shapes, the line, the two-step condition and the rank cap.
    pub fn validate(&self) -> Result<()> {
        let Ambient { p, q, .. } = self.ambient;
        let n = p + q;
        if self.a.rows() != p || self.a.cols() != q || self.b.rows() != q || self.b.cols() != p {
            return Err(Error::InvariantViolation(format!(
                "block shapes: a is {}x{}, b is {}x{}; expected {p}x{q} and {q}x{p}",
                self.a.rows(),
                self.a.cols(),
                self.b.rows(),
                self.b.cols()
            )));
        }
        if self.line.ambient_dim() != n || self.line.dim() != 1 {
            return Err(Error::InvariantViolation(format!("L must be a line in Q^{n}")));
        }
        if !Subspace::coordinate(n, 0..p).contains(&self.line)? {
            return Err(Error::InvariantViolation("L is not contained in V1".into()));
        }
        if !self.a.mul(&self.b)?.is_zero() {
            return Err(Error::InvariantViolation("two-step condition violated: ab != 0".into()));
        }
        if !self.b.mul(&self.a)?.is_zero() {
            return Err(Error::InvariantViolation("two-step condition violated: ba != 0".into()));
        }
        let ell = self.a.rank() + self.b.rank();
        if ell > self.ambient.rank_cap() {
            return Err(Error::InvariantViolation(format!(
                "rank bound exceeded: rk a + rk b = {ell} > min{{k,n-k}} = {}",
                self.ambient.rank_cap()
            )));
        }
        Ok(())
    }

    /// The action of `(g1, g2) ∈ GL(V1) x GL(V2)`.
    pub fn transform(&self, g1: &RatMatrix, g2: &RatMatrix) -> Result<ExoticPoint> {
        let g1_inv = crate::linalg::inverse(g1)?;
        let g2_inv = crate::linalg::inverse(g2)?;
        let g = RatMatrix::from_blocks(
            g1,
            &RatMatrix::zeros(self.ambient.p, self.ambient.q),
            &RatMatrix::zeros(self.ambient.q, self.ambient.p),
            g2,
        )?;
        Ok(ExoticPoint {
            ambient: self.ambient,
            line: self.line.apply(&g)?,
            a: g1.mul(&self.a)?.mul(&g2_inv)?,
            b: g2.mul(&self.b)?.mul(&g1_inv)?,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct PointJson {
    p: usize,
    q: usize,
    k: usize,
    #[serde(rename = "L")]
    line: Subspace,
    a: RatMatrix,
    b: RatMatrix,
}

impl Serialize for ExoticPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let Ambient { p, q, k } = self.ambient;
        PointJson { p, q, k, line: self.line.clone(), a: self.a.clone(), b: self.b.clone() }.serialize(s)
    }
}

/// Decoding checks only the ambient; point invariants are left to
/// [`ExoticPoint::validate`] so callers can report them.
impl<'de> Deserialize<'de> for ExoticPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = PointJson::deserialize(d)?;
        let ambient = Ambient::new(j.p, j.q, j.k).map_err(D::Error::custom)?;
        Ok(ExoticPoint { ambient, line: j.line, a: j.a, b: j.b })
    }
}

/// Standard representative: `a f_j = e_j` for `j <= r`, `b e_(p-s+j) = f_(q-s+j)`
/// for `j <= s`, and `L` spanned by `e_1`, `e_(r+1)` or `e_p` for types
/// I, II, III.
pub fn representative(lab: &ExoticOrbitLabel) -> ExoticPoint {
    let Ambient { p, q, .. } = lab.ambient;
    let n = p + q;
    let mut a = RatMatrix::zeros(p, q);
    for j in 0..lab.r {
        a.set(j, j, Rational::from_integer(1.into()));
    }
    let mut b = RatMatrix::zeros(q, p);
    for j in 0..lab.s {
        b.set(q - lab.s + j, p - lab.s + j, Rational::from_integer(1.into()));
    }
    let v_index = match lab.typ {
        OrbitType::I => 0,
        OrbitType::II => lab.r,
        OrbitType::III => p - 1,
    };
    ExoticPoint { ambient: lab.ambient, line: Subspace::coordinate(n, [v_index]), a, b }
}

pub fn classify_exotic_point(pt: &ExoticPoint) -> Result<ExoticOrbitLabel> {
    pt.validate()?;
    let r = pt.a.rank();
    let s = pt.b.rank();
    let v = pt.v();
    let typ = if pt.a.image().contains_vector(&v)? {
        OrbitType::I
    } else if pt.b.mul(&RatMatrix::column_vector(v))?.is_zero() {
        OrbitType::II
    } else {
        OrbitType::III
    };
    ExoticOrbitLabel::new(pt.ambient, r, s, typ)
}

/// Striped signed diagram: row `i` starts in column `-mu_i`; the thick line
/// sits between columns -1 and 0.
///
/// ASCII uses `+`, `-`, `:` for an empty cell and `|` for the thick line, one
/// row per line. LaTeX emits a `youngtab` `\smallyoung` body with the thick
/// line as `\thickline`.
pub fn render_striped_diagram(lab: &ExoticOrbitLabel, fmt: RenderFormat) -> String {
    let rows = diagram_rows(lab);
    let mu = mu_of(lab);
    let min_col = mu.iter().map(|&m| -m).min().unwrap_or(0);
    let rendered: Vec<String> = rows
        .iter()
        .zip(&mu)
        .map(|(signs, &m)| {
            let start = -m;
            let end = start + signs.len() as i32;
            let touches_line = start <= 0 && end > -1;
            let mut out = String::new();
            let mut col = min_col;
            let mut sign_iter = signs.chars();
            while col < end {
                if col == 0 && touches_line {
                    out.push_str(match fmt {
                        RenderFormat::Ascii => "|",
                        RenderFormat::Latex => "\\thickline ",
                    });
                }
                if col < start {
                    out.push(':');
                } else {
                    out.push(sign_iter.next().expect("row length"));
                }
                col += 1;
            }
            if end == 0 && touches_line {
                out.push_str(match fmt {
                    RenderFormat::Ascii => "|",
                    RenderFormat::Latex => "\\thickline",
                });
            }
            out
        })
        .collect();
    match fmt {
        RenderFormat::Ascii => rendered.join("\n"),
        RenderFormat::Latex => format!("\\smallyoung{{{}}}", rendered.join(",")),
    }
}

/// Sign content of each row before shifting.
fn diagram_rows(lab: &ExoticOrbitLabel) -> Vec<&'static str> {
    let Ambient { p, q, .. } = lab.ambient;
    let ell = lab.ell();
    let mut rows = vec!["+-"; lab.r];
    rows.extend(std::iter::repeat("-+").take(lab.s));
    rows.extend(std::iter::repeat("+").take(p - ell));
    rows.extend(std::iter::repeat("-").take(q - ell));
    rows
}

/// Brute-force list of every sequence satisfying the six defining conditions
/// for the given `(r, s)`, used to cross-check [`mu_of`].
pub fn admissible_mu_sequences(p: usize, q: usize, r: usize, s: usize) -> Vec<Vec<i32>> {
    let ell = r + s;
    let mut out = Vec::new();
    let c_choices: &[i32] = if s > 0 { &[0, 2] } else { &[0] };
    let e_choices: &[i32] = if p > ell { &[-1, 1] } else { &[1] };
    for &c in c_choices {
        for &e in e_choices {
            let mut mu = vec![1; r];
            mu.extend(std::iter::repeat(c).take(s));
            mu.extend(std::iter::repeat(e).take(p - ell));
            mu.extend(std::iter::repeat(0).take(q - ell));
            if satisfies_mu_conditions(&mu, p, q, r, s) && !out.contains(&mu) {
                out.push(mu);
            }
        }
    }
    out
}

/// The six conditions on `mu` for given `(p, q, r, s)`.
pub fn satisfies_mu_conditions(mu: &[i32], p: usize, q: usize, r: usize, s: usize) -> bool {
    let ell = r + s;
    if mu.len() != p + q - ell || ell > p.min(q) {
        return false;
    }
    let all_eq = |xs: &[i32]| xs.windows(2).all(|w| w[0] == w[1]);
    let cond_a = mu[..r].iter().all(|&m| m == 1);
    let cond_b = all_eq(&mu[r..ell]) && mu[r..ell].iter().all(|&m| m == 0 || m == 2);
    let cond_c = all_eq(&mu[ell..p]) && mu[ell..p].iter().all(|&m| m == -1 || m == 1);
    let cond_d = mu[p..].iter().all(|&m| m == 0);
    let cond_e = mu.iter().any(|&m| m >= 1);
    let cond_f = !(mu.contains(&-1) && mu.contains(&2));
    cond_a && cond_b && cond_c && cond_d && cond_e && cond_f
}

/// Convenience for tests and examples: `v` as a column in `Q^p`.
pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}
