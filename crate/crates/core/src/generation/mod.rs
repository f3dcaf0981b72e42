//! Generation analysis of the algebra: graded sub-bases, per-skeleton
//! leading-term equation systems, weak linear independence via exact rank,
//! uniqueness of sub-base completion, and the finite/infinite generation
//! verdict.
//!
//! Everything here works with leading terms only. The odd (skeleton)
//! letters of a word are preserved by the graded product, so systems
//! never mix skeletons, and the analysis runs one skeleton at a time.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{strict_filling_count, strict_word_count, ExactInt};
use crate::hecke::{leading_product_multi, CosetWord};
use crate::ratmat::{RatMatrix, Rational};

/// Internal cap on materialized words and matrix columns.
const SIZE_GUARD: u64 = 1 << 20;

/// Graded sub-base: all words of degree at most 2r whose even positions
/// avoid the letter 1. The degree-2t layer has exactly
/// `strict_word_count(t, k)` words.
#[derive(Debug, Clone)]
pub struct SubBase {
    k: usize,
    r: usize,
    /// Sorted in word order (degree, then lexicographic).
    words: Vec<CosetWord>,
}

/// All degree-2t words over {1..k} with even positions in {2..k}, in word
/// order.
fn strict_layer(k: usize, t: usize) -> Vec<CosetWord> {
    let mut out = Vec::new();
    if k == 0 || t == 0 {
        return out;
    }
    if k == 1 && t > 1 {
        return out; // even positions would need letters from an empty set
    }
    let len = 2 * t - 1;
    let mut letters = vec![0u8; len];
    fn walk(letters: &mut Vec<u8>, pos: usize, k: u8, out: &mut Vec<CosetWord>) {
        if pos == letters.len() {
            out.push(CosetWord::new(letters.clone(), k as usize).expect("valid by construction"));
            return;
        }
        // 0-based even indices are the odd (skeleton) positions.
        let low = if pos % 2 == 0 { 1 } else { 2 };
        for l in low..=k {
            letters[pos] = l;
            walk(letters, pos + 1, k, out);
        }
    }
    walk(&mut letters, 0, k as u8, &mut out);
    out
}

/// Build the canonical sub-base of degree <= 2r.
pub fn subbase(k: usize, r: usize) -> Result<SubBase> {
    if k < 1 || r < 1 {
        return Err(Error::Range(format!("need k, r >= 1, got k={k}, r={r}")));
    }
    let mut expected = ExactInt::zero();
    for t in 1..=r {
        expected += strict_word_count(t as u64, k as u64);
    }
    if expected > ExactInt::from(SIZE_GUARD) {
        return Err(Error::EnumerationTooLarge {
            needed: u128::MAX,
            bound: SIZE_GUARD,
        });
    }
    let mut words = Vec::new();
    for t in 1..=r {
        words.extend(strict_layer(k, t));
    }
    debug_assert_eq!(ExactInt::from(words.len()), expected);
    Ok(SubBase { k, r, words })
}

impl SubBase {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Degree bound divided by two.
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn words(&self) -> &[CosetWord] {
        &self.words
    }

    pub fn contains(&self, w: &CosetWord) -> bool {
        self.words.binary_search(w).is_ok()
    }

    pub fn cardinality(&self) -> usize {
        self.words.len()
    }

    /// Number of words of degree exactly 2t.
    pub fn layer_size(&self, t: usize) -> usize {
        self.words.iter().filter(|w| w.degree() == 2 * t).count()
    }
}

/// A degree-n convolution expression: an ordered sequence of at least two
/// sub-base words with total degree n. Its leading terms are the
/// k^{m-1} bridge words of the factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    factors: Vec<CosetWord>,
}

impl Equation {
    pub fn factors(&self) -> &[CosetWord] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|f| f.degree()).sum()
    }

    pub fn leading_words(&self, k: usize) -> Vec<CosetWord> {
        leading_product_multi(&self.factors, k).expect("factors are nonempty words")
    }
}

impl std::fmt::Display for Equation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for w in &self.factors {
            if !first {
                write!(f, " * ")?;
            }
            write!(f, "d({w})")?;
            first = false;
        }
        Ok(())
    }
}

/// The leading-term system of one skeleton: every equation built from
/// sub-base factors whose concatenated skeleton matches, with the
/// skeleton-compatible words as columns.
#[derive(Debug, Clone)]
pub struct EquationSystem {
    k: usize,
    skeleton: Vec<u8>,
    columns: Vec<CosetWord>,
    equations: Vec<Equation>,
}

/// All ordered compositions of t into parts >= 1, ascending lexicographic.
fn compositions(t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn walk(remaining: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for part in 1..=remaining {
            current.push(part);
            walk(remaining - part, current, out);
            current.pop();
        }
    }
    walk(t, &mut current, &mut out);
    out
}

/// Form the degree-2t equation system of a skeleton, using sub-base words
/// as factors. One equation per ordered composition of t with at least two
/// parts and per strict filling of each part's interior.
pub fn equation_system(skeleton: &[u8], base: &SubBase) -> Result<EquationSystem> {
    let t = skeleton.len();
    let k = base.k();
    if t < 2 {
        return Err(Error::SkeletonTooShort { len: t });
    }
    if let Some(&bad) = skeleton.iter().find(|&&l| l == 0 || l as usize > k) {
        return Err(Error::InvalidWord(format!(
            "skeleton letter {bad} outside 1..={k}"
        )));
    }
    if base.r() < t - 1 {
        return Err(Error::Range(format!(
            "sub-base of degree <= {} cannot factor degree-{} equations",
            2 * base.r(),
            2 * t
        )));
    }
    let columns_len = (k as u64).checked_pow((t - 1) as u32).unwrap_or(u64::MAX);
    if columns_len > SIZE_GUARD {
        return Err(Error::EnumerationTooLarge {
            needed: columns_len as u128,
            bound: SIZE_GUARD,
        });
    }

    // Columns: words with this skeleton, indexed by their even letters in
    // ascending lexicographic order.
    let mut columns = Vec::with_capacity(columns_len as usize);
    let mut evens = vec![1u8; t - 1];
    loop {
        columns.push(interleave(skeleton, &evens, k));
        if !increment(&mut evens, 1, k as u8) {
            break;
        }
    }

    let mut equations = Vec::new();
    for comp in compositions(t) {
        if comp.len() < 2 {
            continue;
        }
        // Strict interior fillings: one choice vector per part, letters 2..k.
        let interior: usize = comp.iter().map(|s| s - 1).sum();
        if interior > 0 && k == 1 {
            continue;
        }
        let mut filling = vec![2u8; interior];
        loop {
            let mut factors = Vec::with_capacity(comp.len());
            let mut skel_at = 0usize;
            let mut fill_at = 0usize;
            for &s in &comp {
                let part_skeleton = &skeleton[skel_at..skel_at + s];
                let part_evens = &filling[fill_at..fill_at + (s - 1)];
                let word = interleave(part_skeleton, part_evens, k);
                debug_assert!(base.contains(&word));
                factors.push(word);
                skel_at += s;
                fill_at += s - 1;
            }
            equations.push(Equation { factors });
            if interior == 0 || !increment(&mut filling, 2, k as u8) {
                break;
            }
        }
    }

    Ok(EquationSystem {
        k,
        skeleton: skeleton.to_vec(),
        columns,
        equations,
    })
}

/// Word with `skeleton` on odd positions and `evens` in between.
fn interleave(skeleton: &[u8], evens: &[u8], k: usize) -> CosetWord {
    debug_assert_eq!(evens.len() + 1, skeleton.len());
    let mut letters = Vec::with_capacity(2 * skeleton.len() - 1);
    for (i, &a) in skeleton.iter().enumerate() {
        letters.push(a);
        if i < evens.len() {
            letters.push(evens[i]);
        }
    }
    CosetWord::new(letters, k).expect("valid by construction")
}

/// Lexicographic increment of a bounded letter vector; false on wrap.
fn increment(letters: &mut [u8], low: u8, high: u8) -> bool {
    for slot in letters.iter_mut().rev() {
        if *slot < high {
            *slot += 1;
            return true;
        }
        *slot = low;
    }
    false
}

impl EquationSystem {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn skeleton(&self) -> &[u8] {
        &self.skeleton
    }

    pub fn columns(&self) -> &[CosetWord] {
        &self.columns
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    fn column_index(&self, word: &CosetWord) -> usize {
        self.columns
            .binary_search(word)
            .expect("leading terms stay within the skeleton")
    }

    /// Leading-term multiplicity matrix: one row per equation, one column
    /// per skeleton-compatible word.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        self.equations
            .iter()
            .map(|eq| {
                let mut row = vec![0i64; self.columns.len()];
                for w in eq.leading_words(self.k) {
                    row[self.column_index(&w)] += 1;
                }
                row
            })
            .collect()
    }
}

/// Rank data of one equation system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankReport {
    pub rows: usize,
    pub rank: usize,
    pub weakly_independent: bool,
}

/// Exact rank of the leading-term matrix; the system is weakly linearly
/// independent iff no combination of equations cancels in top degree,
/// i.e. iff the rank equals the number of equations.
pub fn rank_check(system: &EquationSystem) -> RankReport {
    let matrix = RatMatrix::from_int_rows(&system.matrix());
    let rows = system.equations.len();
    let rank = matrix.rank();
    RankReport {
        rows,
        rank,
        weakly_independent: rank == rows,
    }
}

/// Completion data for all skeletons of one degree.
#[derive(Debug, Clone)]
pub struct CompletionReport {
    pub k: usize,
    pub t: usize,
    /// Dimension of the chosen complement per skeleton: (k-1)^{t-1}.
    pub complement_dim: usize,
    /// Solvability and minimality of the canonical choice: the equation
    /// rows and the strict words' coordinate vectors are jointly
    /// independent and span the whole column space.
    pub unique: bool,
    /// Whether the canonical choice could be exchanged: true iff some
    /// non-strict word appears in at least as many equations as a strict
    /// word, which happens exactly in degree 4.
    pub ambiguous: bool,
    pub equations_per_skeleton: usize,
    pub rank_per_skeleton: usize,
    /// The chosen new sub-base words, per skeleton in lexicographic order.
    pub new_elements: Vec<(Vec<u8>, Vec<CosetWord>)>,
}

/// Check, for every skeleton of length t, that the equation system plus
/// the strict words complete the degree exactly and minimally.
///
/// The leading-term matrix does not depend on the skeleton letters (only
/// multiplicity patterns of even letters enter), so the elimination runs
/// once on the first skeleton and every other skeleton's matrix is
/// required to coincide with it.
pub fn completion_check(k: usize, t: usize) -> Result<CompletionReport> {
    if t < 2 {
        return Err(Error::Range(format!("completion check needs t >= 2, got {t}")));
    }
    if k < 1 {
        return Err(Error::Range("completion check needs k >= 1".into()));
    }
    let base = subbase(k, t - 1)?;
    let mut skeletons = Vec::new();
    {
        let mut s = vec![1u8; t];
        loop {
            skeletons.push(s.clone());
            if !increment(&mut s, 1, k as u8) {
                break;
            }
        }
    }

    let mut canonical_matrix: Option<Vec<Vec<i64>>> = None;
    let mut unique = true;
    let mut ambiguous = false;
    let mut equations_per_skeleton = 0usize;
    let mut rank_per_skeleton = 0usize;
    let mut new_elements = Vec::with_capacity(skeletons.len());

    for skeleton in &skeletons {
        let system = equation_system(skeleton, &base)?;
        let strict_cols: Vec<usize> = system
            .columns
            .iter()
            .enumerate()
            .filter(|(_, w)| w.even_letters().iter().all(|&l| l != 1))
            .map(|(i, _)| i)
            .collect();
        let chosen: Vec<CosetWord> = strict_cols
            .iter()
            .map(|&i| system.columns[i].clone())
            .collect();

        let matrix = system.matrix();
        match &canonical_matrix {
            None => {
                let dim = system.columns.len();
                equations_per_skeleton = system.equations.len();

                let rank_report = rank_check(&system);
                rank_per_skeleton = rank_report.rank;

                // Equation rows plus one unit row per strict word must form
                // a basis of the column space: that single rank computation
                // gives spanning (every word reachable) and minimality (no
                // chosen word lies in the span of the others).
                let mut full = RatMatrix::from_int_rows(&matrix);
                if full.cols() == 0 {
                    full = RatMatrix::zero(0, dim);
                }
                for &col in &strict_cols {
                    let mut unit = vec![Rational::zero(); dim];
                    unit[col] = Rational::one();
                    full.push_row(unit);
                }
                unique = rank_report.weakly_independent
                    && full.rank() == dim
                    && equations_per_skeleton + strict_cols.len() == dim;

                // Appearance counts: how many equations contain each word.
                let appearances: Vec<i64> = (0..dim)
                    .map(|j| matrix.iter().map(|row| row[j].min(1)).sum())
                    .collect();
                let min_strict = strict_cols
                    .iter()
                    .map(|&j| appearances[j])
                    .min();
                let max_other = (0..dim)
                    .filter(|j| !strict_cols.contains(j))
                    .map(|j| appearances[j])
                    .max();
                ambiguous = match (min_strict, max_other) {
                    (Some(s), Some(o)) => s <= o,
                    _ => false,
                };

                canonical_matrix = Some(matrix);
            }
            Some(reference) => {
                if &matrix != reference {
                    return Err(Error::OracleInvariant(format!(
                        "leading-term matrix differs between skeletons {:?} and {:?}",
                        skeletons[0], skeleton
                    )));
                }
            }
        }
        new_elements.push((skeleton.clone(), chosen));
    }

    let complement_dim = strict_filling_count(t as u64, k as u64)
        .try_into()
        .map_err(|_| Error::EnumerationTooLarge {
            needed: u128::MAX,
            bound: SIZE_GUARD,
        })?;

    Ok(CompletionReport {
        k,
        t,
        complement_dim,
        unique,
        ambiguous,
        equations_per_skeleton,
        rank_per_skeleton,
        new_elements,
    })
}

/// An exact leading-term expression of a non-sub-base word: coefficients
/// on equations and on same-skeleton sub-base words whose leading terms
/// sum to the word, valid modulo strictly smaller degree.
#[derive(Debug, Clone)]
pub struct LeadingExpression {
    pub word: CosetWord,
    pub equations: Vec<(Equation, Rational)>,
    pub subbase_words: Vec<(CosetWord, Rational)>,
}

/// Express a word with an even-position 1 through its skeleton's system.
pub fn express_leading(w: &CosetWord, base: &SubBase) -> Result<LeadingExpression> {
    if w.is_unit() {
        return Err(Error::NotExpressible(w.to_string()));
    }
    if w.even_letters().iter().all(|&l| l != 1) {
        // Sub-base words (and degree-2 words) are generators, not targets.
        return Err(Error::NotExpressible(w.to_string()));
    }
    let t = w.degree() / 2;
    if t > base.r() {
        return Err(Error::Range(format!(
            "word of degree {} exceeds the sub-base bound {}",
            w.degree(),
            2 * base.r()
        )));
    }
    let skeleton = w.skeleton();
    let system = equation_system(&skeleton, base)?;
    let dim = system.columns.len();
    let matrix = system.matrix();
    let strict_cols: Vec<usize> = system
        .columns
        .iter()
        .enumerate()
        .filter(|(_, word)| word.even_letters().iter().all(|&l| l != 1))
        .map(|(i, _)| i)
        .collect();

    // Unknowns: one per equation, one per chosen strict word. Solve
    // columnwise: sum of unknown-weighted vectors equals e_w.
    let unknowns = system.equations.len() + strict_cols.len();
    let mut a = RatMatrix::zero(dim, unknowns);
    for (j, row) in matrix.iter().enumerate() {
        for i in 0..dim {
            a[(i, j)] = Rational::from_integer(row[i].into());
        }
    }
    for (extra, &col) in strict_cols.iter().enumerate() {
        a[(col, system.equations.len() + extra)] = Rational::one();
    }
    let mut rhs = vec![Rational::zero(); dim];
    rhs[system.column_index(w)] = Rational::one();
    let solution = a
        .solve(&rhs)
        .ok_or_else(|| Error::NotExpressible(w.to_string()))?;

    let expression = LeadingExpression {
        word: w.clone(),
        equations: system
            .equations
            .iter()
            .cloned()
            .zip(solution[..system.equations.len()].iter().cloned())
            .filter(|(_, c)| !c.is_zero())
            .collect(),
        subbase_words: strict_cols
            .iter()
            .map(|&col| system.columns[col].clone())
            .zip(solution[system.equations.len()..].iter().cloned())
            .filter(|(_, c)| !c.is_zero())
            .collect(),
    };

    // Independent reconstruction through the leading products.
    let mut acc: std::collections::BTreeMap<CosetWord, Rational> = Default::default();
    for (eq, c) in &expression.equations {
        for lw in leading_product_multi(eq.factors(), base.k())? {
            *acc.entry(lw).or_insert_with(Rational::zero) += c;
        }
    }
    for (word, c) in &expression.subbase_words {
        *acc.entry(word.clone()).or_insert_with(Rational::zero) += c;
    }
    acc.retain(|_, c| !c.is_zero());
    let expected: Vec<(&CosetWord, Rational)> = vec![(w, Rational::one())];
    let got: Vec<(&CosetWord, Rational)> = acc.iter().map(|(k, v)| (k, v.clone())).collect();
    if got != expected {
        return Err(Error::OracleInvariant(format!(
            "leading expression for ({w}) failed reconstruction"
        )));
    }
    Ok(expression)
}

/// Finite/infinite generation verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictTag {
    FinitelyGeneratedOneGenerator,
    StrictlyGrowing,
}

impl VerdictTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerdictTag::FinitelyGeneratedOneGenerator => "finitely_generated_one_generator",
            VerdictTag::StrictlyGrowing => "strictly_growing",
        }
    }
}

/// Per-degree summary inside a verdict.
#[derive(Debug, Clone)]
pub struct DegreeReport {
    pub degree: usize,
    /// Cumulative sub-base cardinality up to this degree.
    pub subbase_size: ExactInt,
    pub equations: usize,
    pub rank: usize,
    pub unique_completion: bool,
}

#[derive(Debug, Clone)]
pub struct GenerationVerdict {
    pub k: usize,
    pub max_degree: usize,
    pub degrees: Vec<DegreeReport>,
    pub strictly_growing: bool,
    pub verdict: VerdictTag,
}

/// Run the sub-base construction and completion checks for every even
/// degree up to `max_degree` and classify the growth.
pub fn generation_verdict(k: usize, max_degree: usize) -> Result<GenerationVerdict> {
    if max_degree < 2 || max_degree % 2 != 0 {
        return Err(Error::Range(format!(
            "max degree must be even and >= 2, got {max_degree}"
        )));
    }
    if k < 1 {
        return Err(Error::Range("need k >= 1".into()));
    }
    let r_max = max_degree / 2;
    let full = subbase(k, r_max)?;

    let mut degrees = Vec::with_capacity(r_max);
    let mut cumulative = ExactInt::zero();
    let mut previous = ExactInt::zero();
    let mut strictly_growing = true;
    for t in 1..=r_max {
        let layer = strict_word_count(t as u64, k as u64);
        // The materialized sub-base must realize the counting formula.
        if ExactInt::from(full.layer_size(t)) != layer {
            return Err(Error::OracleInvariant(format!(
                "sub-base layer at degree {} has size {} instead of {layer}",
                2 * t,
                full.layer_size(t)
            )));
        }
        cumulative += &layer;
        if t > 1 && cumulative <= previous {
            strictly_growing = false;
        }
        let (equations, rank, unique_completion) = if t == 1 {
            // Degree 2: the k single-letter words, no equations, unique.
            (0, 0, true)
        } else {
            let report = completion_check(k, t)?;
            (
                report.equations_per_skeleton,
                report.rank_per_skeleton,
                report.unique && !report.ambiguous,
            )
        };
        degrees.push(DegreeReport {
            degree: 2 * t,
            subbase_size: cumulative.clone(),
            equations,
            rank,
            unique_completion,
        });
        previous = cumulative.clone();
    }

    let verdict = if k == 1 {
        VerdictTag::FinitelyGeneratedOneGenerator
    } else {
        VerdictTag::StrictlyGrowing
    };
    if k == 1 {
        debug_assert!(degrees.iter().all(|d| d.subbase_size.is_one()));
    }
    Ok(GenerationVerdict {
        k,
        max_degree,
        degrees,
        strictly_growing,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str, k: usize) -> CosetWord {
        CosetWord::parse(s, k).unwrap()
    }

    #[test]
    fn subbase_examples() {
        let b = subbase(1, 5).unwrap();
        assert_eq!(b.words(), &[word("1", 1)]);

        let b = subbase(2, 2).unwrap();
        let expected: Vec<CosetWord> = ["1", "2", "1,2,1", "1,2,2", "2,2,1", "2,2,2"]
            .iter()
            .map(|s| word(s, 2))
            .collect();
        assert_eq!(b.words(), expected.as_slice());

        assert_eq!(subbase(2, 3).unwrap().cardinality(), 14);
        assert_eq!(subbase(2, 5).unwrap().cardinality(), 62);
        assert_eq!(subbase(3, 3).unwrap().cardinality(), 129);
    }

    #[test]
    fn subbase_matches_counting_formula() {
        for k in 1..=3usize {
            for r in 1..=5usize {
                let b = subbase(k, r).unwrap();
                let expected: ExactInt = (1..=r)
                    .map(|t| strict_word_count(t as u64, k as u64))
                    .sum();
                assert_eq!(ExactInt::from(b.cardinality()), expected);
                // Closed under degree truncation.
                let shorter = subbase(k, r.max(2) - 1).unwrap();
                assert!(shorter.words().iter().all(|w| b.contains(w)));
            }
        }
    }

    #[test]
    fn equation_counts() {
        let b2 = subbase(2, 4).unwrap();
        let sys = equation_system(&[1, 2], &b2).unwrap();
        assert_eq!(sys.equations().len(), 1);
        assert_eq!(sys.equations()[0].factors(), &[word("1", 2), word("2", 2)]);

        let sys = equation_system(&[1, 1, 1], &b2).unwrap();
        assert_eq!(sys.equations().len(), 3);

        let b1 = subbase(1, 4).unwrap();
        let sys = equation_system(&[1, 1, 1], &b1).unwrap();
        assert_eq!(sys.equations().len(), 1);

        assert!(matches!(
            equation_system(&[1], &b2).unwrap_err(),
            Error::SkeletonTooShort { len: 1 }
        ));
        assert!(equation_system(&[1, 3], &b2).is_err());
    }

    #[test]
    fn equation_count_matches_both_formulas() {
        use crate::exact::sum_set;
        for k in 1..=4usize {
            let b = subbase(k, 4).unwrap();
            for t in 2..=5usize {
                let skeleton = vec![1u8; t];
                let sys = equation_system(&skeleton, &b).unwrap();
                let count = ExactInt::from(sys.equations().len());
                let closed = ExactInt::from(k as u64).pow((t - 1) as u32)
                    - strict_filling_count(t as u64, k as u64);
                assert_eq!(count, closed, "closed form at k={k}, t={t}");
                let combinatorial: ExactInt = sum_set(t)
                    .iter()
                    .map(|c| {
                        let mut term = c.multinomial();
                        for (idx, &mult) in c.multiplicities().iter().enumerate() {
                            if mult > 0 {
                                term *= strict_filling_count((idx + 1) as u64, k as u64)
                                    .pow(mult as u32);
                            }
                        }
                        term
                    })
                    .sum();
                assert_eq!(count, combinatorial, "segment sum at k={k}, t={t}");
            }
        }
    }

    #[test]
    fn rank_examples() {
        let b = subbase(2, 4).unwrap();
        let sys = equation_system(&[1, 2], &b).unwrap();
        assert_eq!(
            rank_check(&sys),
            RankReport {
                rows: 1,
                rank: 1,
                weakly_independent: true
            }
        );
        let sys = equation_system(&[1, 1, 1], &b).unwrap();
        assert_eq!(
            rank_check(&sys),
            RankReport {
                rows: 3,
                rank: 3,
                weakly_independent: true
            }
        );
        // A duplicated equation drops weak independence.
        let mut doubled = sys.clone();
        doubled.equations.push(doubled.equations[0].clone());
        let report = rank_check(&doubled);
        assert_eq!(report.rank, 3);
        assert!(!report.weakly_independent);
    }

    #[test]
    fn weak_independence_sweep() {
        for k in 1..=3usize {
            let b = subbase(k, 4).unwrap();
            for t in 2..=5usize {
                // All skeletons share one matrix; spot-check a few directly.
                let mut skeletons = vec![vec![1u8; t]];
                if k > 1 {
                    skeletons.push(vec![k as u8; t]);
                    let mut mixed = vec![1u8; t];
                    mixed[t - 1] = 2;
                    skeletons.push(mixed);
                }
                for skeleton in skeletons {
                    let sys = equation_system(&skeleton, &b).unwrap();
                    let report = rank_check(&sys);
                    assert!(report.weakly_independent, "k={k}, t={t}");
                }
            }
        }
    }

    #[test]
    fn completion_examples() {
        // Degree 4 completes with one word per skeleton but the choice is
        // exchangeable.
        let c = completion_check(2, 2).unwrap();
        assert_eq!(c.complement_dim, 1);
        assert!(c.unique);
        assert!(c.ambiguous);
        assert_eq!(c.new_elements.len(), 4);
        for (skeleton, words) in &c.new_elements {
            assert_eq!(words.len(), 1);
            assert_eq!(words[0].even_letters(), vec![2]);
            assert_eq!(&words[0].skeleton(), skeleton);
        }

        // Degree 6 and up: the canonical completion is forced.
        let c = completion_check(2, 3).unwrap();
        assert_eq!(c.complement_dim, 1);
        assert!(c.unique && !c.ambiguous);

        let c = completion_check(1, 3).unwrap();
        assert_eq!(c.complement_dim, 0);
        assert!(c.unique && !c.ambiguous);
    }

    #[test]
    fn completion_sweep() {
        for k in 1..=3usize {
            for t in 2..=5usize {
                let c = completion_check(k, t).unwrap();
                let expected_dim: usize = strict_filling_count(t as u64, k as u64)
                    .try_into()
                    .unwrap();
                assert_eq!(c.complement_dim, expected_dim);
                assert!(c.unique, "k={k}, t={t}");
                if k == 1 {
                    assert!(!c.ambiguous);
                } else {
                    assert_eq!(c.ambiguous, t == 2, "k={k}, t={t}");
                }
            }
        }
    }

    #[test]
    fn express_leading_examples() {
        let b = subbase(2, 2).unwrap();
        let expr = express_leading(&word("1,1,2", 2), &b).unwrap();
        // One equation d(1)*d(2) with coefficient 1, one correction -d(1,2,2).
        assert_eq!(expr.equations.len(), 1);
        assert_eq!(expr.equations[0].1, Rational::one());
        assert_eq!(
            expr.equations[0].0.factors(),
            &[word("1", 2), word("2", 2)]
        );
        assert_eq!(
            expr.subbase_words,
            vec![(word("1,2,2", 2), -Rational::one())]
        );

        let b1 = subbase(1, 2).unwrap();
        let expr = express_leading(&word("1,1,1", 1), &b1).unwrap();
        assert_eq!(expr.equations.len(), 1);
        assert_eq!(expr.equations[0].1, Rational::one());
        assert!(expr.subbase_words.is_empty());

        // Sub-base members are rejected.
        assert!(matches!(
            express_leading(&word("1,2,2", 2), &b).unwrap_err(),
            Error::NotExpressible(_)
        ));
    }

    #[test]
    fn express_leading_sweep() {
        for k in 2..=3usize {
            let b = subbase(k, 3).unwrap();
            for t in 2..=3usize {
                let mut skeleton = vec![1u8; t];
                skeleton[0] = k as u8;
                let sys = equation_system(&skeleton, &b).unwrap();
                for w in sys.columns() {
                    if w.even_letters().contains(&1) {
                        let expr = express_leading(w, &b).unwrap();
                        assert!(!expr.equations.is_empty());
                    }
                }
            }
        }
    }

    #[test]
    fn verdict_examples() {
        let v = generation_verdict(1, 10).unwrap();
        assert_eq!(v.verdict, VerdictTag::FinitelyGeneratedOneGenerator);
        assert!(v.degrees.iter().all(|d| d.subbase_size == ExactInt::one()));
        assert!(!v.strictly_growing);

        let v = generation_verdict(2, 8).unwrap();
        assert_eq!(v.verdict, VerdictTag::StrictlyGrowing);
        let sizes: Vec<ExactInt> = v.degrees.iter().map(|d| d.subbase_size.clone()).collect();
        assert_eq!(
            sizes,
            vec![2, 6, 14, 30]
                .into_iter()
                .map(ExactInt::from)
                .collect::<Vec<_>>()
        );
        assert!(v.strictly_growing);

        let v = generation_verdict(3, 6).unwrap();
        let sizes: Vec<ExactInt> = v.degrees.iter().map(|d| d.subbase_size.clone()).collect();
        assert_eq!(
            sizes,
            vec![3, 21, 129]
                .into_iter()
                .map(ExactInt::from)
                .collect::<Vec<_>>()
        );

        assert!(generation_verdict(2, 7).is_err());
        assert!(generation_verdict(2, 0).is_err());
    }
}
