//! Marked (1,2)-tableaux `Θ_2^k`, which label the K-orbits on
//! `Gr_k(V) x P(V1)`.
//!
//! A tableau is stored by its counts: `n1`, `n2` twos in the two columns,
//! `ell` ones in each column, and the marked first-column entry. The digit
//! grid only exists in [`render_tableau`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exotic::Ambient;
use crate::linalg::{inverse, RatMatrix, Rational, Subspace};
use crate::RenderFormat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedTableau {
    pub ambient: Ambient,
    pub n1: usize,
    pub n2: usize,
    pub ell: usize,
    pub mark: u8,
}

impl MarkedTableau {
    pub fn new(ambient: Ambient, n1: usize, n2: usize, ell: usize, mark: u8) -> Result<Self> {
        let Ambient { p, q, k } = ambient;
        let bad = |why: &str| Err(Error::InvalidTableau(format!("({n1},{n2},{ell};{mark}) in {ambient}: {why}")));
        if n1 + n2 + ell != k {
            return bad("n1 + n2 + ell must equal k");
        }
        if n1 + ell > p || n2 + ell > q {
            return bad("column overflow");
        }
        match mark {
            2 if n1 == 0 => bad("no 2 in the first column to mark"),
            1 if ell == 0 => bad("no 1 in the first column to mark"),
            0 if n1 + ell == p => bad("no 0 in the first column to mark"),
            0..=2 => Ok(MarkedTableau { ambient, n1, n2, ell, mark }),
            _ => bad("mark must be 0, 1 or 2"),
        }
    }

    /// Top-to-bottom entries of column 1 and column 2.
    pub fn columns(&self) -> (Vec<u8>, Vec<u8>) {
        let Ambient { p, q, .. } = self.ambient;
        let col = |len: usize, twos: usize| {
            let mut c = vec![0u8; len - twos - self.ell];
            c.extend(std::iter::repeat(1).take(self.ell));
            c.extend(std::iter::repeat(2).take(twos));
            c
        };
        (col(p, self.n1), col(q, self.n2))
    }
}

impl fmt::Display for MarkedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&render_tableau(self, RenderFormat::Ascii))
    }
}

#[derive(Serialize, Deserialize)]
struct TableauJson {
    p: usize,
    q: usize,
    k: usize,
    n1: usize,
    n2: usize,
    ell: usize,
    mark: u8,
}

impl Serialize for MarkedTableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let Ambient { p, q, k } = self.ambient;
        TableauJson { p, q, k, n1: self.n1, n2: self.n2, ell: self.ell, mark: self.mark }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MarkedTableau {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = TableauJson::deserialize(d)?;
        let ambient = Ambient::new(j.p, j.q, j.k).map_err(D::Error::custom)?;
        MarkedTableau::new(ambient, j.n1, j.n2, j.ell, j.mark).map_err(D::Error::custom)
    }
}

/// All of `Θ_2^k`, ordered by `n1+n2` descending, then `n1` descending, then
/// mark ascending.
pub fn enumerate_theta2k(amb: Ambient) -> Vec<MarkedTableau> {
    let mut out = Vec::new();
    for twos in (0..=amb.k).rev() {
        let ell = amb.k - twos;
        for n1 in (0..=twos).rev() {
            for mark in 0..=2 {
                if let Ok(t) = MarkedTableau::new(amb, n1, twos - n1, ell, mark) {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// A point `(W, L)` of `Gr_k(Q^n) x P(V1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagPair {
    pub ambient: Ambient,
    pub w: Subspace,
    pub line: Subspace,
}

impl FlagPair {
    pub fn validate(&self) -> Result<()> {
        let Ambient { p, q, k } = self.ambient;
        let n = p + q;
        if self.w.ambient_dim() != n || self.w.dim() != k {
            return Err(Error::InvariantViolation(format!(
                "W must be a {k}-dimensional subspace of Q^{n} (got dim {} in Q^{})",
                self.w.dim(),
                self.w.ambient_dim()
            )));
        }
        if self.line.ambient_dim() != n || self.line.dim() != 1 {
            return Err(Error::InvariantViolation(format!("L must be a line in Q^{n}")));
        }
        if !Subspace::coordinate(n, 0..p).contains(&self.line)? {
            return Err(Error::InvariantViolation("L is not contained in V1".into()));
        }
        Ok(())
    }

    /// The action of `(g1, g2) ∈ GL(V1) x GL(V2)`.
    pub fn transform(&self, g1: &RatMatrix, g2: &RatMatrix) -> Result<FlagPair> {
        let Ambient { p, q, .. } = self.ambient;
        inverse(g1)?;
        inverse(g2)?;
        let g = RatMatrix::from_blocks(g1, &RatMatrix::zeros(p, q), &RatMatrix::zeros(q, p), g2)?;
        Ok(FlagPair { ambient: self.ambient, w: self.w.apply(&g)?, line: self.line.apply(&g)? })
    }
}

#[derive(Serialize, Deserialize)]
struct FlagPairJson {
    p: usize,
    q: usize,
    k: usize,
    #[serde(rename = "W")]
    w: Subspace,
    #[serde(rename = "L")]
    line: Subspace,
}

impl Serialize for FlagPair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let Ambient { p, q, k } = self.ambient;
        FlagPairJson { p, q, k, w: self.w.clone(), line: self.line.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FlagPair {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = FlagPairJson::deserialize(d)?;
        let ambient = Ambient::new(j.p, j.q, j.k).map_err(D::Error::custom)?;
        Ok(FlagPair { ambient, w: j.w, line: j.line })
    }
}

pub fn classify_flag_pair(fp: &FlagPair) -> Result<MarkedTableau> {
    fp.validate()?;
    let Ambient { p, q, k } = fp.ambient;
    let n = p + q;
    let v1 = Subspace::coordinate(n, 0..p);
    let v2 = Subspace::coordinate(n, p..n);
    let n1 = fp.w.intersect(&v1)?.dim();
    let n2 = fp.w.intersect(&v2)?.dim();
    let mark = if fp.w.contains(&fp.line)? {
        2
    } else if fp.w.sum(&v2)?.contains(&fp.line)? {
        1
    } else {
        0
    };
    MarkedTableau::new(fp.ambient, n1, n2, k - n1 - n2, mark)
        .map_err(|e| Error::Consistency(format!("classifier produced an invalid tableau: {e}")))
}

/// `W = <e_1..e_n1> + <f_1..f_n2> + <e_(n1+j) + f_(n2+j)>`, with `L` spanned
/// by `e_1`, `e_(n1+1)` or `e_p` for marks 2, 1, 0.
pub fn representative_flag(t: &MarkedTableau) -> FlagPair {
    let Ambient { p, q, .. } = t.ambient;
    let n = p + q;
    let one = || Rational::from_integer(1.into());
    let unit = |i: usize| {
        let mut v = vec![Rational::from_integer(0.into()); n];
        v[i] = one();
        v
    };
    let mut gens: Vec<Vec<Rational>> = (0..t.n1).map(unit).collect();
    gens.extend((0..t.n2).map(|j| unit(p + j)));
    for j in 0..t.ell {
        let mut v = unit(t.n1 + j);
        v[p + t.n2 + j] = one();
        gens.push(v);
    }
    let l_index = match t.mark {
        2 => 0,
        1 => t.n1,
        _ => p - 1,
    };
    FlagPair { ambient: t.ambient, w: Subspace::span(n, &gens), line: Subspace::coordinate(n, [l_index]) }
}

/// ASCII: `(00/2/2, i=2)` with rows top to bottom. LaTeX: the same grid as a
/// `\smallyoung` body. A `:` fills column 1 when column 2 is longer.
pub fn render_tableau(t: &MarkedTableau, fmt: RenderFormat) -> String {
    let (c1, c2) = t.columns();
    let rows: Vec<String> = (0..c1.len().max(c2.len()))
        .map(|i| {
            let mut row = c1.get(i).map_or(":".to_string(), |d| d.to_string());
            if let Some(d) = c2.get(i) {
                row.push_str(&d.to_string());
            }
            row
        })
        .collect();
    match fmt {
        RenderFormat::Ascii => format!("({}, i={})", rows.join("/"), t.mark),
        RenderFormat::Latex => format!("\\left(\\smallyoung{{{}}},{}\\right)", rows.join(","), t.mark),
    }
}
