//! Exact integer combinatorics: multinomials, part-multiplicity vectors,
//! strict word counts, and the polynomial identities built from them.
//!
//! Everything here is computed with arbitrary-precision integers and
//! checked for exact equality; there are no tolerances anywhere.

mod identities;
mod poly;

pub use identities::{
    check_binomial_value, check_master_identity, check_multinomial_value, check_tower_recurrence,
    IdentityReport, IdentitySide,
};
pub use poly::{geometric_sum_poly, tower_poly, IntPolynomial};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer, the scalar type of every exact count.
pub type ExactInt = BigInt;

/// Exact binomial coefficient C(n, k).
///
/// Multiplicative form: the running product is divisible by `i` at step `i`,
/// so every intermediate division is exact.
pub fn binomial(n: u64, k: u64) -> ExactInt {
    if k > n {
        return ExactInt::zero();
    }
    let k = k.min(n - k);
    let mut result = ExactInt::one();
    for i in 1..=k {
        result = result * ExactInt::from(n - k + i) / ExactInt::from(i);
    }
    result
}

/// Multinomial coefficient (Σ parts)! / Π partsᵢ!, with 0! = 1.
///
/// An empty sequence gives 1. Computed as a telescoping product of
/// binomials so no factorial is ever materialized.
pub fn multinomial(parts: &[u64]) -> ExactInt {
    let mut result = ExactInt::one();
    let mut total = 0u64;
    for &p in parts {
        total += p;
        result *= binomial(total, p);
    }
    result
}

/// Multiplicity vector (k_1, …, k_{n-1}) with Σ i·k_i = n: the number of
/// parts of each size in an unordered cut of `n` into parts of size < n.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Composition {
    n: usize,
    multiplicities: Vec<u64>,
}

impl Composition {
    pub fn n(&self) -> usize {
        self.n
    }

    /// The tuple (k_1, …, k_{n-1}); entry i-1 counts parts of size i.
    pub fn multiplicities(&self) -> &[u64] {
        &self.multiplicities
    }

    /// Total number of parts m = Σ k_i.
    pub fn part_count(&self) -> u64 {
        self.multiplicities.iter().sum()
    }

    /// Number of ordered arrangements of the parts: the multinomial
    /// coefficient of the multiplicity vector.
    pub fn multinomial(&self) -> ExactInt {
        multinomial(&self.multiplicities)
    }
}

/// All multiplicity vectors of length n-1 with Σ i·k_i = n, in ascending
/// lexicographic order of the tuple.
///
/// `n = 1` gives the empty set: the length-0 tuple cannot sum to 1.
pub fn sum_set(n: usize) -> Vec<Composition> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let len = n - 1;
    let mut current = vec![0u64; len];
    // Choose k_1, then k_2, ... keeping the weighted remainder nonnegative.
    fn recurse(
        n: usize,
        len: usize,
        pos: usize,
        remaining: u64,
        current: &mut Vec<u64>,
        out: &mut Vec<Composition>,
    ) {
        if pos == len {
            if remaining == 0 {
                out.push(Composition {
                    n,
                    multiplicities: current.clone(),
                });
            }
            return;
        }
        let size = (pos + 1) as u64;
        for k in 0..=(remaining / size) {
            current[pos] = k;
            recurse(n, len, pos + 1, remaining - k * size, current, out);
        }
        current[pos] = 0;
    }
    recurse(n, len, 0, n as u64, &mut current, &mut out);
    out
}

/// Number of odd-length words of degree 2r over {1..k} whose even positions
/// avoid the letter 1: k^r (k-1)^{r-1}, with the convention 0^0 = 1.
///
/// Cutting an arbitrary word at every even position carrying a 1
/// decomposes it uniquely into such strict segments, which is what makes
/// this the master count of the generation analysis.
pub fn strict_word_count(r: u64, k: u64) -> ExactInt {
    ExactInt::from(k).pow(r as u32) * strict_filling_count(r, k)
}

/// Number of even-position fillings avoiding the letter 1: (k-1)^{r-1},
/// with 0^0 = 1.
pub fn strict_filling_count(r: u64, k: u64) -> ExactInt {
    if r == 0 {
        return ExactInt::one();
    }
    ExactInt::from(k.saturating_sub(1)).pow((r - 1) as u32)
}

/// Both counts at once, `(strict words, strict fillings)`.
pub fn f_values(r: u64, k: u64) -> Result<(ExactInt, ExactInt)> {
    if r < 1 || k < 1 {
        return Err(Error::Range(format!("need r,k >= 1, got r={r}, k={k}")));
    }
    Ok((strict_word_count(r, k), strict_filling_count(r, k)))
}
