//! The Hecke algebra as data: coset words, rational-coefficient elements,
//! the graded leading-term product, and full table-backed multiplication.

mod word;

pub use word::{enumerate_words, CosetWord};

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::ExactInt;
use crate::oracle::StructureConstantTable;

/// Exact rational scalar of the algebra.
pub type Rational = BigRational;

/// Maximal-degree terms of δ_u * δ_v: the k words u·b·v, each exactly
/// once. A unit factor passes the other word through.
pub fn leading_product(u: &CosetWord, v: &CosetWord, k: usize) -> Vec<CosetWord> {
    if u.is_unit() {
        return vec![v.clone()];
    }
    if v.is_unit() {
        return vec![u.clone()];
    }
    (1..=k as u8).map(|b| u.bridge(b, v)).collect()
}

/// Maximal-degree terms of an m-fold product of nonempty words: the
/// k^{m-1} words w_1·b_1·w_2 ··· b_{m-1}·w_m, each exactly once.
pub fn leading_product_multi(words: &[CosetWord], k: usize) -> Result<Vec<CosetWord>> {
    if words.is_empty() {
        return Err(Error::InvalidWord("product of zero words".into()));
    }
    if let Some(unit) = words.iter().find(|w| w.is_unit()) {
        return Err(Error::InvalidWord(format!(
            "unit word ({unit}) in a multi-factor leading product"
        )));
    }
    let mut acc = vec![words[0].clone()];
    for w in &words[1..] {
        let mut next = Vec::with_capacity(acc.len() * k);
        for prefix in &acc {
            for b in 1..=k as u8 {
                next.push(prefix.bridge(b, w));
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// Finite rational combination of coset words; zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeElement {
    terms: BTreeMap<CosetWord, Rational>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        HeckeElement {
            terms: BTreeMap::new(),
        }
    }

    /// The basis element 1_{KγK} for the class of `word`.
    pub fn delta(word: CosetWord) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(word, Rational::one());
        HeckeElement { terms }
    }

    pub fn from_terms(pairs: impl IntoIterator<Item = (CosetWord, Rational)>) -> Self {
        let mut el = HeckeElement::zero();
        for (w, c) in pairs {
            el.add_term(w, c);
        }
        el
    }

    pub fn add_term(&mut self, word: CosetWord, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CosetWord, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &CosetWord) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    /// Maximal degree over the support; None for the zero element.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.degree()).max()
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return HeckeElement::zero();
        }
        HeckeElement {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c * factor))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    /// JSON form: a list of {word, numerator, denominator}, in word order,
    /// numerator and denominator as decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(w, c)| {
                    serde_json::json!({
                        "word": w.to_string(),
                        "numerator": c.numer().to_string(),
                        "denominator": c.denom().to_string(),
                    })
                })
                .collect(),
        )
    }

    /// Parse the JSON form produced by [`HeckeElement::to_json`].
    pub fn from_json(value: &serde_json::Value, k: usize) -> Result<Self> {
        let arr = value
            .as_array()
            .ok_or_else(|| Error::InvalidWord("element JSON must be an array".into()))?;
        let mut el = HeckeElement::zero();
        for item in arr {
            let get = |field: &str| -> Result<&str> {
                item.get(field).and_then(|v| v.as_str()).ok_or_else(|| {
                    Error::InvalidWord(format!("element JSON entry missing {field:?}"))
                })
            };
            let word = CosetWord::parse(get("word")?, k)?;
            let numer: ExactInt = get("numerator")?
                .parse()
                .map_err(|_| Error::InvalidWord("bad numerator".into()))?;
            let denom: ExactInt = get("denominator")?
                .parse()
                .map_err(|_| Error::InvalidWord("bad denominator".into()))?;
            if denom.is_zero() {
                return Err(Error::InvalidWord("zero denominator".into()));
            }
            el.add_term(word, Rational::new(numer, denom));
        }
        Ok(el)
    }
}

/// Bilinear extension of the structure-constant rows to whole elements.
/// Every word pair in the support product must be present in the table.
pub fn mul(
    a: &HeckeElement,
    b: &HeckeElement,
    table: &StructureConstantTable,
) -> Result<HeckeElement> {
    let mut out = HeckeElement::zero();
    for (u, cu) in a.terms() {
        for (v, cv) in b.terms() {
            let row = table
                .row(u, v)
                .ok_or_else(|| Error::MissingStructureConstants {
                    u: u.to_string(),
                    v: v.to_string(),
                })?;
            let scale = cu * cv;
            for (w, coeff) in row {
                out.add_term(
                    w.clone(),
                    &scale * Rational::from_integer(coeff.clone()),
                );
            }
        }
    }
    Ok(out)
}

/// Outcome of the commutativity probe.
#[derive(Debug, Clone)]
pub enum CommutativityReport {
    /// Every basis pair with degree sum within the cap commutes exactly.
    Commutative { pairs_checked: usize },
    /// A witness pair whose leading-term multisets are disjoint, so the
    /// products differ already in top degree.
    Witness {
        u: CosetWord,
        v: CosetWord,
        left_leading: Vec<CosetWord>,
        right_leading: Vec<CosetWord>,
    },
}

/// For k = 1, verify full commutativity of all basis pairs with degree sum
/// within the cap, using the table. For k >= 2, produce the standard
/// leading-term witness pair (1) and (2) without needing any table.
pub fn commutativity_probe(
    k: usize,
    degree_cap: usize,
    table: Option<&StructureConstantTable>,
) -> Result<CommutativityReport> {
    if k >= 2 {
        let u = CosetWord::new(vec![1], k)?;
        let v = CosetWord::new(vec![2], k)?;
        let left = leading_product(&u, &v, k);
        let right = leading_product(&v, &u, k);
        debug_assert!(left.iter().all(|w| !right.contains(w)));
        return Ok(CommutativityReport::Witness {
            u,
            v,
            left_leading: left,
            right_leading: right,
        });
    }
    let table = table.ok_or_else(|| Error::MissingStructureConstants {
        u: "<any>".into(),
        v: "<any>".into(),
    })?;
    let mut words = Vec::new();
    for degree in (0..=degree_cap).step_by(2) {
        words.extend(enumerate_words(k, degree)?);
    }
    let mut pairs_checked = 0usize;
    for u in &words {
        for v in &words {
            if u.degree() + v.degree() > degree_cap {
                continue;
            }
            let uv = mul(&HeckeElement::delta(u.clone()), &HeckeElement::delta(v.clone()), table)?;
            let vu = mul(&HeckeElement::delta(v.clone()), &HeckeElement::delta(u.clone()), table)?;
            if uv != vu {
                return Ok(CommutativityReport::Witness {
                    u: u.clone(),
                    v: v.clone(),
                    left_leading: leading_product(u, v, k),
                    right_leading: leading_product(v, u, k),
                });
            }
            pairs_checked += 1;
        }
    }
    Ok(CommutativityReport::Commutative { pairs_checked })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str, k: usize) -> CosetWord {
        CosetWord::parse(s, k).unwrap()
    }

    #[test]
    fn leading_product_examples() {
        let terms = leading_product(&word("1", 2), &word("2", 2), 2);
        assert_eq!(terms, vec![word("1,1,2", 2), word("1,2,2", 2)]);
        assert_eq!(
            leading_product(&word("1", 1), &word("1", 1), 1),
            vec![word("1,1,1", 1)]
        );
        assert_eq!(
            leading_product(&CosetWord::unit(), &word("2,2,1", 2), 2),
            vec![word("2,2,1", 2)]
        );
        assert_eq!(
            leading_product(&CosetWord::unit(), &CosetWord::unit(), 2),
            vec![CosetWord::unit()]
        );
    }

    #[test]
    fn leading_multi_counts() {
        let ws = vec![word("1", 2), word("1", 2), word("1", 2)];
        let terms = leading_product_multi(&ws, 2).unwrap();
        assert_eq!(terms.len(), 4);
        for t in &terms {
            assert_eq!(t.degree(), 6);
            assert_eq!(t.skeleton(), vec![1, 1, 1]);
        }
        let single = leading_product_multi(&[word("2,2,1", 3)], 3).unwrap();
        assert_eq!(single, vec![word("2,2,1", 3)]);
        assert!(leading_product_multi(&[], 2).is_err());
        assert!(leading_product_multi(&[CosetWord::unit()], 2).is_err());
    }

    #[test]
    fn leading_degrees_add() {
        for k in 1..=3usize {
            for du in [2usize, 4] {
                for dv in [2usize, 4] {
                    for u in enumerate_words(k, du).unwrap() {
                        for v in enumerate_words(k, dv).unwrap() {
                            let terms = leading_product(&u, &v, k);
                            assert_eq!(terms.len(), k);
                            for t in &terms {
                                assert_eq!(t.degree(), du + dv);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn leading_multi_is_associative_under_grouping() {
        for k in 1..=3usize {
            let ws: Vec<CosetWord> = enumerate_words(k, 2).unwrap();
            for a in &ws {
                for b in &ws {
                    for c in &ws {
                        // Degree sum 6 <= 6.
                        let flat =
                            leading_product_multi(&[a.clone(), b.clone(), c.clone()], k).unwrap();
                        let mut left: Vec<CosetWord> = leading_product(a, b, k)
                            .into_iter()
                            .flat_map(|ab| leading_product(&ab, c, k))
                            .collect();
                        let mut right: Vec<CosetWord> = leading_product(b, c, k)
                            .into_iter()
                            .flat_map(|bc| leading_product(a, &bc, k))
                            .collect();
                        let mut flat_sorted = flat.clone();
                        flat_sorted.sort();
                        left.sort();
                        right.sort();
                        assert_eq!(left, flat_sorted);
                        assert_eq!(right, flat_sorted);
                    }
                }
            }
        }
    }

    #[test]
    fn element_arithmetic_drops_zeros() {
        let w = word("1", 2);
        let mut el = HeckeElement::delta(w.clone());
        el.add_term(w.clone(), -Rational::one());
        assert!(el.is_zero());
        assert_eq!(el.degree(), None);
    }

    #[test]
    fn element_json_round_trip() {
        let el = HeckeElement::from_terms(vec![
            (word("1", 2), Rational::new(ExactInt::from(3), ExactInt::from(2))),
            (word("1,2,1", 2), Rational::from_integer(ExactInt::from(-1))),
        ]);
        let json = el.to_json();
        let back = HeckeElement::from_json(&json, 2).unwrap();
        assert_eq!(el, back);
    }

    #[test]
    fn probe_yields_witness_for_two_suborbits() {
        match commutativity_probe(2, 8, None).unwrap() {
            CommutativityReport::Witness {
                left_leading,
                right_leading,
                ..
            } => {
                assert_eq!(left_leading, vec![word("1,1,2", 2), word("1,2,2", 2)]);
                assert_eq!(right_leading, vec![word("2,1,1", 2), word("2,2,1", 2)]);
                assert!(left_leading.iter().all(|w| !right_leading.contains(w)));
            }
            other => panic!("expected witness, got {other:?}"),
        }
        assert!(matches!(
            commutativity_probe(3, 8, None).unwrap(),
            CommutativityReport::Witness { .. }
        ));
    }
}
