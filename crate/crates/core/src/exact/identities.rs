//! Exact verification of the combinatorial identities underlying the
//! coset-word counts. Each check evaluates both sides independently and
//! reports them; equality is always exact, never approximate.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{
    binomial, strict_word_count, sum_set, tower_poly, ExactInt, IntPolynomial,
};

/// One evaluated side of an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentitySide {
    Int(ExactInt),
    Poly(IntPolynomial),
}

impl fmt::Display for IdentitySide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentitySide::Int(v) => write!(f, "{v}"),
            IdentitySide::Poly(p) => write!(f, "{p}"),
        }
    }
}

/// Outcome of a single identity check, carrying both evaluated sides.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub description: String,
    pub holds: bool,
    pub lhs: IdentitySide,
    pub rhs: IdentitySide,
}

impl IdentityReport {
    fn new(description: String, lhs: IdentitySide, rhs: IdentitySide) -> Self {
        let holds = lhs == rhs;
        IdentityReport {
            description,
            holds,
            lhs,
            rhs,
        }
    }
}

/// Tower recurrence: the level-i divided difference equals the sum of the
/// level-(i-1) members over all shorter geometric sums,
/// T_{i,r} = Σ_{j=i}^{r-1} T_{i-1,j}. Valid for r >= 3, 2 <= i <= r-1.
pub fn check_tower_recurrence(i: u64, r: u64) -> Result<IdentityReport> {
    if r < 3 || i < 2 || i > r - 1 {
        return Err(Error::Range(format!(
            "tower recurrence needs r >= 3 and 2 <= i <= r-1, got i={i}, r={r}"
        )));
    }
    let lhs = tower_poly(i, r)?;
    let mut rhs = IntPolynomial::zero();
    for j in i..=(r - 1) {
        rhs = rhs.add(&tower_poly(i - 1, j)?);
    }
    Ok(IdentityReport::new(
        format!("tower recurrence at (i, r) = ({i}, {r})"),
        IdentitySide::Poly(lhs),
        IdentitySide::Poly(rhs),
    ))
}

/// Value at 1: T_{i,j}(1) = C(j-1, i). Valid for j >= 2, 1 <= i <= j-1.
pub fn check_binomial_value(i: u64, j: u64) -> Result<IdentityReport> {
    if j < 2 || i < 1 || i > j - 1 {
        return Err(Error::Range(format!(
            "binomial value needs j >= 2 and 1 <= i <= j-1, got i={i}, j={j}"
        )));
    }
    let lhs = tower_poly(i, j)?.eval_one();
    let rhs = binomial(j - 1, i);
    Ok(IdentityReport::new(
        format!("binomial value at (i, j) = ({i}, {j})"),
        IdentitySide::Int(lhs),
        IdentitySide::Int(rhs),
    ))
}

/// Constrained multinomial sum: C(r-1, i) equals the sum of multinomial
/// coefficients over the multiplicity vectors of r with exactly r-i parts;
/// both are checked against the tower value at 1. Valid for r >= 2,
/// 1 <= i <= r-1.
pub fn check_multinomial_value(i: u64, r: u64) -> Result<IdentityReport> {
    if r < 2 || i < 1 || i > r - 1 {
        return Err(Error::Range(format!(
            "multinomial value needs r >= 2 and 1 <= i <= r-1, got i={i}, r={r}"
        )));
    }
    let tower_value = tower_poly(i, r)?.eval_one();
    let mut sum = ExactInt::zero();
    for c in sum_set(r as usize) {
        if c.part_count() == r - i {
            sum += c.multinomial();
        }
    }
    let mut report = IdentityReport::new(
        format!("multinomial value at (i, r) = ({i}, {r})"),
        IdentitySide::Int(tower_value),
        IdentitySide::Int(sum),
    );
    report.holds = report.holds && report.lhs == IdentitySide::Int(binomial(r - 1, i));
    Ok(report)
}

/// Master count: k^{2r-1} minus the strict-segment decomposition sum equals
/// the strict word count,
/// k^{2r-1} - Σ multinomial(c) Π_i f(i,k)^{k_i} = f(r,k),
/// where f is `strict_word_count` and the sum runs over the multiplicity
/// vectors of r. Valid for r, k >= 1.
pub fn check_master_identity(r: u64, k: u64) -> Result<IdentityReport> {
    if r < 1 || k < 1 {
        return Err(Error::Range(format!(
            "master identity needs r, k >= 1, got r={r}, k={k}"
        )));
    }
    let mut lhs = ExactInt::from(k).pow((2 * r - 1) as u32);
    for c in sum_set(r as usize) {
        let mut term = c.multinomial();
        for (idx, &mult) in c.multiplicities().iter().enumerate() {
            if mult > 0 {
                term *= strict_word_count((idx + 1) as u64, k).pow(mult as u32);
            }
        }
        lhs -= term;
    }
    let rhs = strict_word_count(r, k);
    Ok(IdentityReport::new(
        format!("master identity at (r, k) = ({r}, {k})"),
        IdentitySide::Int(lhs),
        IdentitySide::Int(rhs),
    ))
}
