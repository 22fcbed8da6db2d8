//! Oracles and samplers shared by the integration tests. Nothing here calls
//! the library's own enumeration or classification code.
#![allow(dead_code)]

use exotic_orbits::exotic::{Ambient, OrbitType};
use exotic_orbits::linalg::{inverse, rat, random_invertible, RatMatrix, Rational, SeededRng};
use exotic_orbits::Partition;
use rand::Rng;

pub type TableauCounts = (usize, usize, usize, u8);
pub type LabelShort = (usize, usize, OrbitType);

/// Expected maps `(n1, n2, ell, mark) -> (r, s, type)`, tabulated by hand for
/// the small ambients.
pub fn expected_table(p: usize, q: usize, k: usize) -> Vec<(TableauCounts, LabelShort)> {
    use OrbitType::*;
    match (p, q, k) {
        (3, 1, 1) => vec![
            ((1, 0, 0, 2), (1, 0, I)),
            ((1, 0, 0, 0), (1, 0, II)),
            ((0, 0, 1, 1), (0, 1, II)),
            ((0, 1, 0, 0), (0, 1, III)),
            ((0, 0, 1, 0), (0, 0, II)),
        ],
        (3, 1, 2) => vec![
            ((1, 0, 1, 2), (1, 0, I)),
            ((2, 0, 0, 2), (1, 0, II)),
            ((2, 0, 0, 0), (1, 0, II)),
            ((1, 1, 0, 2), (0, 1, II)),
            ((1, 0, 1, 1), (0, 1, II)),
            ((1, 1, 0, 0), (0, 1, III)),
            ((1, 0, 1, 0), (0, 0, II)),
        ],
        (2, 2, 2) => vec![
            ((2, 0, 0, 2), (2, 0, I)),
            ((1, 1, 0, 2), (1, 1, I)),
            ((1, 1, 0, 0), (1, 1, III)),
            ((0, 2, 0, 0), (0, 2, III)),
            ((1, 0, 1, 2), (1, 0, I)),
            ((1, 0, 1, 1), (1, 0, II)),
            ((0, 1, 1, 1), (0, 1, II)),
            ((0, 1, 1, 0), (0, 1, III)),
            ((0, 0, 2, 1), (0, 0, II)),
        ],
        (3, 3, 3) => vec![
            ((3, 0, 0, 2), (3, 0, I)),
            ((2, 1, 0, 0), (2, 1, III)),
            ((2, 1, 0, 2), (2, 1, I)),
            ((1, 2, 0, 0), (1, 2, III)),
            ((1, 2, 0, 2), (1, 2, I)),
            ((0, 3, 0, 0), (0, 3, III)),
            ((2, 0, 1, 1), (2, 0, II)),
            ((2, 0, 1, 2), (2, 0, I)),
            ((1, 1, 1, 0), (1, 1, III)),
            ((1, 1, 1, 1), (1, 1, II)),
            ((1, 1, 1, 2), (1, 1, I)),
            ((0, 2, 1, 0), (0, 2, III)),
            ((0, 2, 1, 1), (0, 2, II)),
            ((1, 0, 2, 1), (1, 0, II)),
            ((1, 0, 2, 2), (1, 0, I)),
            ((0, 1, 2, 0), (0, 1, III)),
            ((0, 1, 2, 1), (0, 1, II)),
            ((0, 0, 3, 1), (0, 0, II)),
        ],
        _ => panic!("no tabulated map for ({p},{q},{k})"),
    }
}

/// The two-element fibers at (3,1,2), with the Jordan type each tableau is
/// reached through.
pub fn expected_two_element_fibers_312() -> Vec<(LabelShort, Vec<(TableauCounts, Vec<usize>)>)> {
    use OrbitType::*;
    vec![
        ((1, 0, II), vec![((2, 0, 0, 0), vec![2, 1, 1]), ((2, 0, 0, 2), vec![2, 2])]),
        ((0, 1, II), vec![((1, 0, 1, 1), vec![2, 1, 1]), ((1, 1, 0, 2), vec![2, 2])]),
    ]
}

/// Every marked tableau, found by listing all pairs of nondecreasing
/// {0,1,2}-columns of lengths p and q and filtering by the definition.
pub fn brute_force_tableaux(p: usize, q: usize, k: usize) -> Vec<TableauCounts> {
    fn columns(len: usize) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        for zeros in 0..=len {
            for ones in 0..=len - zeros {
                let mut c = vec![0u8; zeros];
                c.extend(std::iter::repeat(1).take(ones));
                c.extend(std::iter::repeat(2).take(len - zeros - ones));
                out.push(c);
            }
        }
        out
    }
    let mut out = Vec::new();
    for c1 in columns(p) {
        for c2 in columns(q) {
            let ones1 = c1.iter().filter(|&&d| d == 1).count();
            let ones2 = c2.iter().filter(|&&d| d == 1).count();
            let total: usize = c1.iter().chain(&c2).map(|&d| d as usize).sum();
            if ones1 != ones2 || total != 2 * k {
                continue;
            }
            let n1 = c1.iter().filter(|&&d| d == 2).count();
            let n2 = c2.iter().filter(|&&d| d == 2).count();
            for mark in [0u8, 1, 2] {
                if c1.contains(&mark) {
                    out.push((n1, n2, ones1, mark));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Partitions of `n`, generated independently of the library.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Direct sum of nilpotent Jordan blocks of the given sizes.
pub fn jordan_matrix(blocks: &[usize]) -> RatMatrix {
    let n: usize = blocks.iter().sum();
    let mut m = RatMatrix::zeros(n, n);
    let mut start = 0;
    for &b in blocks {
        for i in 0..b.saturating_sub(1) {
            m.set(start + i, start + i + 1, rat(1));
        }
        start += b;
    }
    m
}

/// `g m g^-1`.
pub fn conjugate(m: &RatMatrix, g: &RatMatrix) -> RatMatrix {
    g.mul(m).unwrap().mul(&inverse(g).unwrap()).unwrap()
}

/// Jordan type from the ranks of powers, written out independently: the
/// number of blocks of size >= i is `rk m^(i-1) - rk m^i`.
pub fn jordan_oracle(m: &RatMatrix) -> Vec<usize> {
    let n = m.rows();
    let mut ranks = vec![n];
    let mut power = RatMatrix::identity(n);
    for _ in 0..n {
        power = power.mul(m).unwrap();
        ranks.push(power.rank());
    }
    assert_eq!(*ranks.last().unwrap(), 0, "not nilpotent");
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for (i, &c) in at_least.iter().enumerate() {
        let next = at_least.get(i + 1).copied().unwrap_or(0);
        for _ in 0..c - next {
            parts.push(i + 1);
        }
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

pub fn partition(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

/// A random pair with `ab = 0`, `ba = 0` of prescribed ranks, moved by a
/// random element of `GL(p) x GL(q)`.
pub fn random_two_step(p: usize, q: usize, r: usize, s: usize, rng: &mut SeededRng) -> (RatMatrix, RatMatrix) {
    assert!(r + s <= p.min(q));
    let mut a0 = RatMatrix::zeros(p, q);
    for j in 0..r {
        a0.set(j, j, rat(1));
    }
    let mut b0 = RatMatrix::zeros(q, p);
    for j in 0..s {
        b0.set(q - s + j, p - s + j, rat(1));
    }
    let g1 = random_invertible(p, 3, rng);
    let g2 = random_invertible(q, 3, rng);
    let a = g1.mul(&a0).unwrap().mul(&inverse(&g2).unwrap()).unwrap();
    let b = g2.mul(&b0).unwrap().mul(&inverse(&g1).unwrap()).unwrap();
    (a, b)
}

pub fn random_ambient(max_n: usize, rng: &mut SeededRng) -> Ambient {
    let n = rng.gen_range(1..=max_n);
    let p = rng.gen_range(1..=n);
    let k = rng.gen_range(0..=n);
    Ambient::new(p, n - p, k).unwrap()
}

pub fn block_diag(g1: &RatMatrix, g2: &RatMatrix) -> RatMatrix {
    RatMatrix::from_blocks(g1, &RatMatrix::zeros(g1.rows(), g2.cols()), &RatMatrix::zeros(g2.rows(), g1.cols()), g2).unwrap()
}

pub fn rationals(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| rat(x)).collect()
}

/// `ceil(m / 2)` for a possibly negative integer.
pub fn ceil_half(m: i32) -> i64 {
    let m = m as i64;
    if m >= 0 {
        (m + 1) / 2
    } else {
        -((-m) / 2)
    }
}
