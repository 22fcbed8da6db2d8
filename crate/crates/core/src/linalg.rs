//! Exact linear algebra over the rationals.
//!
//! Matrices are dense and row-major. Subspaces are stored by the reduced
//! row-echelon form of a basis, so two equal subspaces compare equal
//! structurally.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partitions::Partition;

pub type Rational = BigRational;

/// Deterministic generator used for every randomized construction.
pub type SeededRng = ChaCha8Rng;

/// Default half-width of the integer box random entries are drawn from.
pub const DEFAULT_BOUND: i64 = 1000;

pub fn seeded_rng(seed: u64) -> SeededRng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as `a` or `a/b`.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
        Some((a, b)) => {
            let num = a.trim().parse::<BigInt>().map_err(|_| bad())?;
            let den = b.trim().parse::<BigInt>().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(num, den))
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(RatMatrix { rows, cols, entries })
    }

    /// Builds a matrix from integer rows. Panics on ragged input.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged integer rows");
            entries.extend(row.iter().map(|&x| rat(x)));
        }
        RatMatrix { rows: rows.len(), cols, entries }
    }

    pub fn from_rows(rows: &[Vec<Rational>], cols: usize) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            entries.extend(row.iter().cloned());
        }
        RatMatrix { rows: rows.len(), cols, entries }
    }

    /// Column vector with the given entries.
    pub fn column_vector(v: Vec<Rational>) -> Self {
        let rows = v.len();
        RatMatrix { rows, cols: 1, entries: v }
    }

    /// The standard basis vector `e_i` (0-based) of length `dim`, as a column.
    pub fn unit_vector(dim: usize, i: usize) -> Self {
        let mut m = Self::zeros(dim, 1);
        m.set(i, 0, Rational::one());
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// All entries of a vector-shaped matrix (either a row or a column).
    pub fn as_vector(&self) -> &[Rational] {
        debug_assert!(self.rows == 1 || self.cols == 1);
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.entries[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &RatMatrix) -> Result<RatMatrix> {
        self.same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(RatMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn sub(&self, other: &RatMatrix) -> Result<RatMatrix> {
        self.same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(RatMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        let entries = self.entries.iter().map(|a| a * c).collect();
        RatMatrix { rows: self.rows, cols: self.cols, entries }
    }

    fn same_shape(&self, other: &RatMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn pow(&self, e: u32) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Copies the block `rows r0..r0+h`, `cols c0..c0+w`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> RatMatrix {
        let mut out = Self::zeros(h, w);
        for i in 0..h {
            for j in 0..w {
                out.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        out
    }

    /// Writes `b` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, b: &RatMatrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    /// Assembles `[[tl, tr], [bl, br]]`.
    pub fn from_blocks(tl: &RatMatrix, tr: &RatMatrix, bl: &RatMatrix, br: &RatMatrix) -> Result<RatMatrix> {
        if tl.rows != tr.rows || bl.rows != br.rows || tl.cols != bl.cols || tr.cols != br.cols {
            return Err(Error::DimensionMismatch("incompatible block shapes".into()));
        }
        let mut out = Self::zeros(tl.rows + bl.rows, tl.cols + tr.cols);
        out.set_block(0, 0, tl);
        out.set_block(0, tl.cols, tr);
        out.set_block(tl.rows, 0, bl);
        out.set_block(tl.rows, tl.cols, br);
        Ok(out)
    }

    /// Reduced row-echelon form and the pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = rref_in_place(&mut m);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        echelon_rank(&mut m)
    }

    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let n = self.cols;
        let mut basis = Vec::new();
        let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
        for &f in &free {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(i, f).clone();
            }
            basis.push(v);
        }
        Subspace::span(n, &basis)
    }

    /// Column space, as a subspace of `Q^rows`.
    pub fn image(&self) -> Subspace {
        Subspace::from_row_matrix(&self.transpose())
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(MatrixJson::from(self)).expect("matrix encodes")
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(format_rational).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            write!(f, "[{}]", padded.join(" "))?;
        }
        Ok(())
    }
}

/// Row-reduces in place; returns pivot columns.
fn rref_in_place(m: &mut RatMatrix) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        swap_rows(m, r, p);
        let inv = m.get(r, c).recip();
        for j in c..cols {
            let idx = r * cols + j;
            m.entries[idx] = &m.entries[idx] * &inv;
        }
        for i in 0..rows {
            if i == r || m.get(i, c).is_zero() {
                continue;
            }
            let factor = m.get(i, c).clone();
            for j in c..cols {
                let delta = &factor * m.get(r, j);
                if !delta.is_zero() {
                    m.entries[i * cols + j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Forward elimination only; cheaper than a full reduction when only the rank matters.
fn echelon_rank(m: &mut RatMatrix) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        swap_rows(m, r, p);
        for i in r + 1..rows {
            if m.get(i, c).is_zero() {
                continue;
            }
            let factor = m.get(i, c) / m.get(r, c);
            for j in c..cols {
                let delta = &factor * m.get(r, j);
                if !delta.is_zero() {
                    m.entries[i * cols + j] -= delta;
                }
            }
        }
        r += 1;
    }
    r
}

fn swap_rows(m: &mut RatMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols {
        m.entries.swap(a * m.cols + j, b * m.cols + j);
    }
}

pub fn rank(m: &RatMatrix) -> usize {
    m.rank()
}

pub fn kernel(m: &RatMatrix) -> Subspace {
    m.kernel()
}

pub fn image(m: &RatMatrix) -> Subspace {
    m.image()
}

/// A linear subspace of `Q^ambient_dim`, held in canonical (RREF) form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: RatMatrix,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: RatMatrix::zeros(0, ambient_dim) }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: RatMatrix::identity(ambient_dim) }
    }

    /// Span of the given vectors (each of length `ambient_dim`).
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Self {
        let m = RatMatrix::from_rows(vectors, ambient_dim);
        Self::from_row_matrix(&m)
    }

    /// Row space of `m`.
    pub fn from_row_matrix(m: &RatMatrix) -> Self {
        let (r, pivots) = m.rref();
        let basis = r.block(0, 0, pivots.len(), m.cols);
        Subspace { ambient_dim: m.cols, basis }
    }

    /// Span of the standard basis vectors with the given 0-based indices.
    pub fn coordinate(ambient_dim: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let vecs: Vec<Vec<Rational>> = indices
            .into_iter()
            .map(|i| {
                let mut v = vec![Rational::zero(); ambient_dim];
                v[i] = Rational::one();
                v
            })
            .collect();
        Self::span(ambient_dim, &vecs)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vecs()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of Q^{} and Q^{}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Ok(Subspace::span(self.ambient_dim, &rows))
    }

    /// Vectors orthogonal to every basis vector under the standard bilinear form.
    pub fn annihilator(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.ambient_dim);
        }
        self.basis.kernel()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let joint = self.annihilator().sum(&other.annihilator())?;
        Ok(joint.annihilator())
    }

    /// `true` when `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        if other.dim() > self.dim() {
            return Ok(false);
        }
        Ok(self.sum(other)?.dim() == self.dim())
    }

    pub fn contains_vector(&self, v: &[Rational]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in Q^{}",
                v.len(),
                self.ambient_dim
            )));
        }
        let line = Subspace::span(self.ambient_dim, &[v.to_vec()]);
        self.contains(&line)
    }

    /// Image of the subspace under `m` (acting on column vectors).
    pub fn apply(&self, m: &RatMatrix) -> Result<Subspace> {
        if m.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch("map does not act on this space".into()));
        }
        let images = m.mul(&self.basis.transpose())?;
        Ok(Subspace::from_row_matrix(&images.transpose()))
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        self.basis.to_json_value()
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in Q^{}: {:?})", self.dim(), self.ambient_dim, self.basis)
    }
}

pub fn sum(s: &Subspace, t: &Subspace) -> Result<Subspace> {
    s.sum(t)
}

pub fn intersect(s: &Subspace, t: &Subspace) -> Result<Subspace> {
    s.intersect(t)
}

pub fn contains(s: &Subspace, t: &Subspace) -> Result<bool> {
    s.contains(t)
}

/// Jordan type of a nilpotent matrix: the number of parts `>= i` is
/// `rk m^(i-1) - rk m^i`.
pub fn jordan_type(m: &RatMatrix) -> Result<Partition> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let mut ranks = vec![n];
    let mut power = RatMatrix::identity(n);
    while *ranks.last().unwrap() > 0 {
        power = power.mul(m)?;
        let r = power.rank();
        if r == *ranks.last().unwrap() {
            return Err(Error::NotNilpotent);
        }
        ranks.push(r);
    }
    let column_lengths: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    Partition::new(column_lengths).map(|cols| cols.dual())
}

/// Block-diagonal and block-antidiagonal parts of a `(p+q)x(p+q)` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaSplit {
    pub theta_part: RatMatrix,
    pub minus_theta_part: RatMatrix,
    pub p: usize,
    pub q: usize,
}

pub fn theta_split(m: &RatMatrix, p: usize, q: usize) -> Result<ThetaSplit> {
    let n = p + q;
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "theta split of a {}x{} matrix with p={p}, q={q}",
            m.rows(),
            m.cols()
        )));
    }
    let mut theta_part = RatMatrix::zeros(n, n);
    let mut minus_theta_part = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let same_block = (i < p) == (j < p);
            let target = if same_block { &mut theta_part } else { &mut minus_theta_part };
            target.set(i, j, m.get(i, j).clone());
        }
    }
    Ok(ThetaSplit { theta_part, minus_theta_part, p, q })
}

/// Column vector with integer entries uniform in `[-bound, bound]`.
pub fn random_vector(dim: usize, bound: i64, rng: &mut SeededRng) -> RatMatrix {
    let v = (0..dim).map(|_| rat(rng.gen_range(-bound..=bound))).collect();
    RatMatrix::column_vector(v)
}

/// Random integer combination of the canonical basis of `s`, as a column vector.
pub fn random_in_subspace(s: &Subspace, bound: i64, rng: &mut SeededRng) -> RatMatrix {
    let mut v = vec![Rational::zero(); s.ambient_dim()];
    for i in 0..s.dim() {
        let c = rat(rng.gen_range(-bound..=bound));
        if c.is_zero() {
            continue;
        }
        for (vj, bj) in v.iter_mut().zip(s.basis().row(i)) {
            *vj += &c * bj;
        }
    }
    RatMatrix::column_vector(v)
}

/// Random invertible matrix with small integer entries (used to move points
/// along group orbits).
pub fn random_invertible(n: usize, bound: i64, rng: &mut SeededRng) -> RatMatrix {
    loop {
        let entries = (0..n * n).map(|_| rat(rng.gen_range(-bound..=bound))).collect();
        let m = RatMatrix::from_entries(n, n, entries).expect("square");
        if m.rank() == n {
            return m;
        }
    }
}

pub fn inverse(m: &RatMatrix) -> Result<RatMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(RatMatrix::identity(0));
    }
    let aug = RatMatrix::from_blocks(m, &RatMatrix::identity(n), &RatMatrix::zeros(0, n), &RatMatrix::zeros(0, n))?;
    let (r, pivots) = aug.rref();
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::Precondition("matrix is singular".into()));
    }
    Ok(r.block(0, n, n, n))
}

pub fn dot(u: &[Rational], v: &[Rational]) -> Rational {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<String>,
}

impl From<&RatMatrix> for MatrixJson {
    fn from(m: &RatMatrix) -> Self {
        MatrixJson { rows: m.rows, cols: m.cols, entries: m.entries.iter().map(format_rational).collect() }
    }
}

impl TryFrom<MatrixJson> for RatMatrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        let entries = j.entries.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        RatMatrix::from_entries(j.rows, j.cols, entries)
    }
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MatrixJson::deserialize(d)?;
        RatMatrix::try_from(j).map_err(serde::de::Error::custom)
    }
}

/// Subspaces travel as a matrix whose rows span them.
impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.basis.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = RatMatrix::deserialize(d)?;
        Ok(Subspace::from_row_matrix(&m))
    }
}

/// Largest absolute numerator or denominator, for bit-growth diagnostics.
pub fn max_height(m: &RatMatrix) -> BigInt {
    m.entries
        .iter()
        .flat_map(|x| [x.numer().abs(), x.denom().clone()])
        .max()
        .unwrap_or_else(BigInt::zero)
}
