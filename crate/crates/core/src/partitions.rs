//! Partition combinatorics for nilpotent orbits of `GL_n`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&x| x == 0) {
            return Err(Error::InvalidPartition(format!("zero part in {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    /// Sorts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    /// `(n)`.
    pub fn row(n: usize) -> Self {
        Partition::from_unsorted(vec![n])
    }

    /// `(n-l, l)*`, i.e. `(2^l, 1^(n-2l))`: the Jordan type of a square-zero
    /// matrix of rank `l`.
    pub fn square_zero(n: usize, ell: usize) -> Result<Self> {
        if 2 * ell > n {
            return Err(Error::InvalidPartition(format!("no square-zero matrix of rank {ell} in size {n}")));
        }
        let mut parts = vec![2; ell];
        parts.extend(std::iter::repeat(1).take(n - 2 * ell));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn dual(&self) -> Partition {
        dual(self)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Exponent notation, e.g. `(2,1^2)`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut groups: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match groups.last_mut() {
                Some((v, c)) if *v == p => *c += 1,
                _ => groups.push((p, 1)),
            }
        }
        let body: Vec<String> = groups
            .iter()
            .map(|&(v, c)| if c == 1 { v.to_string() } else { format!("{v}^{c}") })
            .collect();
        f.pad(&format!("({})", body.join(",")))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// An ordered sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&x| x == 0) {
            return Err(Error::InvalidPartition(format!("zero part in composition {parts:?}")));
        }
        Ok(Composition { parts })
    }

    /// `(k, n-k)` with empty parts dropped.
    pub fn maximal(k: usize, n: usize) -> Self {
        Composition { parts: [k, n - k].into_iter().filter(|&x| x > 0).collect() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }
}

impl<'de> Deserialize<'de> for Composition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Composition::new(parts).map_err(serde::de::Error::custom)
    }
}

pub fn dual(lam: &Partition) -> Partition {
    let first = lam.parts.first().copied().unwrap_or(0);
    let parts = (1..=first).map(|i| lam.parts.iter().filter(|&&p| p >= i).count()).collect();
    Partition { parts }
}

/// `mu ⪯ lam` in the dominance order.
pub fn dominance_leq(mu: &Partition, lam: &Partition) -> Result<bool> {
    if mu.size() != lam.size() {
        return Err(Error::InvalidPartition(format!("{mu} and {lam} have different sizes")));
    }
    let len = mu.len().max(lam.len());
    let (mut a, mut b) = (0usize, 0usize);
    for i in 0..len {
        a += mu.parts.get(i).copied().unwrap_or(0);
        b += lam.parts.get(i).copied().unwrap_or(0);
        if a > b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `n^2 - Σ (λ*_i)^2`.
pub fn dim_nilpotent_orbit(lam: &Partition) -> usize {
    let n = lam.size();
    n * n - dual(lam).parts.iter().map(|c| c * c).sum::<usize>()
}

/// Jordan type of the Richardson orbit of the parabolic of type `d`.
pub fn richardson_partition(d: &Composition) -> Partition {
    Partition::from_unsorted(d.parts.clone()).dual()
}

pub fn flag_dim(d: &Composition) -> usize {
    let n = d.size();
    (n * n - d.parts.iter().map(|x| x * x).sum::<usize>()) / 2
}

/// Dimension of the Spaltenstein variety, or `None` when it is empty.
pub fn spaltenstein_dim(lam: &Partition, d: &Composition) -> Result<Option<usize>> {
    if lam.size() != d.size() {
        return Err(Error::InvalidPartition(format!("{lam} is not a partition of {}", d.size())));
    }
    if !dominance_leq(lam, &richardson_partition(d))? {
        return Ok(None);
    }
    Ok(Some(flag_dim(d) - dim_nilpotent_orbit(lam) / 2))
}

/// `(k-l)(n-k-l)`: dimension of `Gr_{k-l}(ker x / Im x)` for `x` square-zero of rank `l`.
pub fn spaltenstein_grassmann_dim(ell: usize, k: usize, n: usize) -> Result<usize> {
    if k > n || ell > k.min(n - k) {
        return Err(Error::Precondition(format!("need l <= min(k, n-k); got l={ell}, k={k}, n={n}")));
    }
    Ok((k - ell) * (n - k - ell))
}

/// Number of fillings of the diagram of `lam` with `d_i` entries equal to `i`,
/// strictly increasing along rows and weakly increasing down columns.
pub fn count_ssyt(lam: &Partition, d: &Composition) -> u64 {
    if lam.size() != d.size() {
        return 0;
    }
    let cells: Vec<(usize, usize)> =
        lam.parts.iter().enumerate().flat_map(|(i, &len)| (0..len).map(move |j| (i, j))).collect();
    let mut grid: Vec<Vec<usize>> = lam.parts.iter().map(|&len| vec![0; len]).collect();
    let mut remaining = d.parts.clone();
    fill(&cells, 0, &mut grid, &mut remaining)
}

fn fill(cells: &[(usize, usize)], idx: usize, grid: &mut [Vec<usize>], remaining: &mut [usize]) -> u64 {
    let Some(&(i, j)) = cells.get(idx) else {
        return 1;
    };
    let mut total = 0;
    for v in 0..remaining.len() {
        if remaining[v] == 0 {
            continue;
        }
        if j > 0 && grid[i][j - 1] >= v {
            continue;
        }
        if i > 0 && grid[i - 1][j] > v {
            continue;
        }
        remaining[v] -= 1;
        grid[i][j] = v;
        total += fill(cells, idx + 1, grid, remaining);
        remaining[v] += 1;
    }
    total
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}
