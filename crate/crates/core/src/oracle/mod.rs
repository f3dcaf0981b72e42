//! Finite truncations of the legally colored d-regular tree.
//!
//! Vertices are addressed by the color sequence of the geodesic from the
//! base vertex; the stabilizer of an edge acts through point stabilizers
//! of F at every vertex below it, independently per vertex. Orbit counts
//! are computed two independent ways (profile invariant vs union-find
//! over local moves), and full convolution structure constants come from
//! brute-force counting of intermediate vertices.

mod table;

pub use table::{StructureConstantTable, TableFingerprint};

use std::collections::{BTreeMap, HashSet};

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::ExactInt;
use crate::hecke::{enumerate_words, leading_product, CosetWord};
use crate::perm::{suborbit_table, PermGroup, Permutation, SuborbitTable, UnionFind};

/// Default cap on the number of enumerated tree states.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 10_000_000;

/// A legal color sequence: consecutive edge colors differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorPath {
    colors: Vec<u8>,
}

impl ColorPath {
    pub fn new(colors: Vec<u8>, d: usize) -> Result<Self> {
        for &c in &colors {
            if c == 0 || c as usize > d {
                return Err(Error::IllegalPath(format!("color {c} outside 1..={d}")));
            }
        }
        if let Some(w) = colors.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::IllegalPath(format!(
                "consecutive edges share color {}",
                w[0]
            )));
        }
        Ok(ColorPath { colors })
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }
}

/// Label string of a legal color sequence: entry i is the label, in entry
/// color c_i, of the exit color c_{i+1}. One entry shorter than the path.
pub fn profile_of_path(path: &ColorPath, table: &SuborbitTable) -> Vec<u8> {
    profile_of_colors_unchecked(&path.colors, table)
}

/// As [`profile_of_path`] for a raw color sequence, validating legality.
pub fn profile_of_colors(colors: &[u8], d: usize, table: &SuborbitTable) -> Result<Vec<u8>> {
    let path = ColorPath::new(colors.to_vec(), d)?;
    Ok(profile_of_path(&path, table))
}

fn profile_of_colors_unchecked(colors: &[u8], table: &SuborbitTable) -> Vec<u8> {
    colors
        .windows(2)
        .map(|w| table.label(w[0], w[1]))
        .collect()
}

/// Which of the two independent orbit-counting routes to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitMethod {
    /// Union-find over all paths under the local stabilizer moves.
    Bfs,
    /// Count distinct profile strings.
    Profile,
}

/// Exact counting oracle over a finite truncation of the colored tree.
#[derive(Debug, Clone)]
pub struct TreeOracle {
    group: PermGroup,
    table: SuborbitTable,
    /// stabilizers[c-1]: all elements of F fixing the color c.
    stabilizers: Vec<Vec<Permutation>>,
    /// exits[c-1][j-1]: ascending exit colors with label j in entry color c.
    exits: Vec<Vec<Vec<u8>>>,
    bound: u64,
}

impl TreeOracle {
    /// Requires a transitive group; non-primitive groups are accepted here
    /// and flagged by callers that need the full theory.
    pub fn new(group: PermGroup, bound: u64) -> Result<Self> {
        let table = suborbit_table(&group)?;
        let d = group.degree();
        let stabilizers = (1..=d as u8)
            .map(|c| group.stabilizer_elements(c))
            .collect();
        let exits = (1..=d as u8)
            .map(|c| {
                (1..=table.k() as u8)
                    .map(|j| table.exits_with_label(c, j))
                    .collect()
            })
            .collect();
        Ok(TreeOracle {
            group,
            table,
            stabilizers,
            exits,
            bound,
        })
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    pub fn k(&self) -> usize {
        self.table.k()
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn suborbits(&self) -> &SuborbitTable {
        &self.table
    }

    pub fn fingerprint(&self) -> TableFingerprint {
        TableFingerprint {
            d: self.degree(),
            generators: self
                .group
                .generators()
                .iter()
                .map(|g| g.images().to_vec())
                .collect(),
            k: self.k(),
            sizes: self.table.sizes().to_vec(),
        }
    }

    /// Number of vertices in the class of `w`: d · Π n_{w_i}, which is the
    /// mass of the double coset when the stabilizer of the base vertex has
    /// measure one.
    pub fn class_size(&self, w: &CosetWord) -> ExactInt {
        if w.is_unit() {
            return ExactInt::one();
        }
        let mut size = ExactInt::from(self.degree());
        for &l in w.letters() {
            size *= ExactInt::from(self.table.sizes()[(l - 1) as usize]);
        }
        size
    }

    /// Orbit count of the edge stabilizer acting on the far half of the
    /// sphere of radius 2r, by the requested method. Both methods must
    /// agree (and equal k^{2r-1}); comparing them is the caller's check.
    pub fn orbit_count(&self, r: usize, method: OrbitMethod) -> Result<ExactInt> {
        if r == 0 {
            return Err(Error::Range("orbit count needs r >= 1".into()));
        }
        let m = 2 * r;
        let states = self.sphere_states(m)?;
        match method {
            OrbitMethod::Profile => self.orbit_count_profile(m),
            OrbitMethod::Bfs => self.orbit_count_bfs(m, states),
        }
    }

    /// Size (d-1)^{m-1} of the fixed-first-color sphere slice, checked
    /// against the enumeration bound.
    fn sphere_states(&self, m: usize) -> Result<usize> {
        let base = (self.degree() - 1) as u128;
        let mut states: u128 = 1;
        for _ in 1..m {
            states = states.saturating_mul(base);
            if states > self.bound as u128 {
                return Err(Error::EnumerationTooLarge {
                    needed: states,
                    bound: self.bound,
                });
            }
        }
        Ok(states as usize)
    }

    fn orbit_count_profile(&self, m: usize) -> Result<ExactInt> {
        let mut profiles: HashSet<Vec<u8>> = HashSet::new();
        let mut colors = Vec::with_capacity(m);
        colors.push(1u8);
        self.walk_profiles(&mut colors, m, &mut profiles);
        Ok(ExactInt::from(profiles.len()))
    }

    fn walk_profiles(&self, colors: &mut Vec<u8>, m: usize, out: &mut HashSet<Vec<u8>>) {
        if colors.len() == m {
            out.insert(profile_of_colors_unchecked(colors, &self.table));
            return;
        }
        let entry = *colors.last().unwrap();
        for e in 1..=self.degree() as u8 {
            if e != entry {
                colors.push(e);
                self.walk_profiles(colors, m, out);
                colors.pop();
            }
        }
    }

    fn orbit_count_bfs(&self, m: usize, states: usize) -> Result<ExactInt> {
        let mut uf = UnionFind::new(states);
        let mut colors = vec![0u8; m];
        for idx in 0..states {
            self.decode_path(idx, m, &mut colors);
            let base_profile = profile_of_colors_unchecked(&colors, &self.table);
            // Local move: an element fixing the entry color of the vertex
            // at depth j+1 relabels everything below it.
            let mut moved = colors.clone();
            for j in 0..m - 1 {
                let entry = colors[j];
                for sigma in &self.stabilizers[(entry - 1) as usize] {
                    moved.copy_from_slice(&colors);
                    for c in moved[j + 1..].iter_mut() {
                        *c = sigma.apply(*c);
                    }
                    let target = self.encode_path(&moved);
                    if profile_of_colors_unchecked(&moved, &self.table) != base_profile {
                        return Err(Error::OracleInvariant(format!(
                            "local move at depth {} changed the profile of {:?}",
                            j + 1,
                            colors
                        )));
                    }
                    uf.union(idx, target);
                }
            }
        }
        Ok(ExactInt::from(uf.class_count(0..states)))
    }

    /// Rank of `exit` among the d-1 colors other than `entry`, ascending.
    fn exit_rank(entry: u8, exit: u8) -> usize {
        debug_assert_ne!(entry, exit);
        if exit < entry {
            (exit - 1) as usize
        } else {
            (exit - 2) as usize
        }
    }

    fn exit_of_rank(entry: u8, rank: usize) -> u8 {
        let candidate = (rank + 1) as u8;
        if candidate < entry {
            candidate
        } else {
            candidate + 1
        }
    }

    /// Mixed-radix index of a path with fixed first color 1.
    fn encode_path(&self, colors: &[u8]) -> usize {
        let radix = self.degree() - 1;
        let mut idx = 0usize;
        for j in 1..colors.len() {
            idx = idx * radix + Self::exit_rank(colors[j - 1], colors[j]);
        }
        idx
    }

    fn decode_path(&self, mut idx: usize, m: usize, colors: &mut [u8]) {
        let radix = self.degree() - 1;
        let mut ranks = vec![0usize; m - 1];
        for slot in ranks.iter_mut().rev() {
            *slot = idx % radix;
            idx /= radix;
        }
        colors[0] = 1;
        for (j, &rank) in ranks.iter().enumerate() {
            colors[j + 1] = Self::exit_of_rank(colors[j], rank);
        }
    }

    /// Lexicographically smallest legal path with the given profile,
    /// starting with `first` as its first color.
    fn realize_profile(&self, profile: &[u8], first: u8) -> Vec<u8> {
        let mut colors = Vec::with_capacity(profile.len() + 1);
        colors.push(first);
        for &label in profile {
            let entry = *colors.last().unwrap();
            let exit = self.exits[(entry - 1) as usize][(label - 1) as usize][0];
            colors.push(exit);
        }
        colors
    }

    /// All paths from the base vertex whose profile equals `profile`, in
    /// lexicographic order; exactly class_size many.
    fn class_paths(&self, profile: &[u8]) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        if profile.is_empty() {
            out.push(Vec::new());
            return out;
        }
        let mut colors: Vec<u8> = Vec::with_capacity(profile.len() + 1);
        for first in 1..=self.degree() as u8 {
            colors.push(first);
            self.walk_class(profile, &mut colors, &mut out);
            colors.pop();
        }
        out
    }

    fn walk_class(&self, profile: &[u8], colors: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        let depth = colors.len() - 1;
        if depth == profile.len() {
            out.push(colors.clone());
            return;
        }
        let entry = *colors.last().unwrap();
        let label = profile[depth];
        for &exit in &self.exits[(entry - 1) as usize][(label - 1) as usize] {
            colors.push(exit);
            self.walk_class(profile, colors, out);
            colors.pop();
        }
    }

    /// Profile of the geodesic from the vertex addressed by `p` to the one
    /// addressed by `q`: climb to the last common vertex, then descend.
    fn pair_profile(&self, p: &[u8], q: &[u8]) -> Vec<u8> {
        let mut l = 0usize;
        while l < p.len() && l < q.len() && p[l] == q[l] {
            l += 1;
        }
        let len = (p.len() - l) + (q.len() - l);
        let mut colors = Vec::with_capacity(len);
        colors.extend(p[l..].iter().rev());
        colors.extend(&q[l..]);
        debug_assert!(colors.windows(2).all(|w| w[0] != w[1]));
        profile_of_colors_unchecked(&colors, &self.table)
    }

    /// Structure constants of δ_u * δ_v by brute-force counting: for each
    /// candidate class w, fix one vertex z in it and count the vertices y
    /// lying in class u from the base and class v from z. Zero rows are
    /// omitted. Mass conservation is verified unconditionally.
    pub fn convolve(
        &self,
        u: &CosetWord,
        v: &CosetWord,
    ) -> Result<BTreeMap<CosetWord, ExactInt>> {
        let k = self.k();
        self.check_word(u)?;
        self.check_word(v)?;
        let du = u.degree();
        let dv = v.degree();

        // Work estimate: one pass over the class of u per candidate class.
        let candidates: u128 = (du.abs_diff(dv)..=du + dv)
            .step_by(2)
            .map(|dw| (k as u128).saturating_pow(dw.saturating_sub(1) as u32))
            .sum();
        let work = candidates.saturating_mul(
            self.class_size(u)
                .to_u128()
                .unwrap_or(u128::MAX),
        );
        if work > self.bound as u128 {
            return Err(Error::EnumerationTooLarge {
                needed: work,
                bound: self.bound,
            });
        }

        let y_paths = self.class_paths(u.letters());
        let mut row: BTreeMap<CosetWord, ExactInt> = BTreeMap::new();
        for dw in (du.abs_diff(dv)..=du + dv).step_by(2) {
            for w in enumerate_words(k, dw)? {
                let count = self.count_intermediates(&y_paths, w.letters(), v.letters(), 1);
                #[cfg(debug_assertions)]
                if dw > 0 && self.degree() >= 2 {
                    let second = self.count_intermediates(&y_paths, w.letters(), v.letters(), 2);
                    debug_assert_eq!(
                        count, second,
                        "structure constant depends on the class representative"
                    );
                }
                if count > 0 {
                    row.insert(w, ExactInt::from(count));
                }
            }
        }

        // Mass conservation: total mass multiplies under convolution.
        let mut mass = ExactInt::zero();
        for (w, c) in &row {
            mass += c * self.class_size(w);
        }
        let expected = self.class_size(u) * self.class_size(v);
        if mass != expected {
            return Err(Error::OracleInvariant(format!(
                "mass {mass} != {expected} for ({u}) * ({v})"
            )));
        }
        Ok(row)
    }

    fn count_intermediates(
        &self,
        y_paths: &[Vec<u8>],
        w_profile: &[u8],
        v_profile: &[u8],
        first_color: u8,
    ) -> u64 {
        let z = self.realize_profile(w_profile, first_color);
        let target_len = v_profile.len() + usize::from(!v_profile.is_empty());
        let mut count = 0u64;
        for y in y_paths {
            // Geodesic length from y to z must match deg(v).
            let mut l = 0usize;
            while l < y.len() && l < z.len() && y[l] == z[l] {
                l += 1;
            }
            if (y.len() - l) + (z.len() - l) != target_len {
                continue;
            }
            if self.pair_profile(y, &z) == v_profile {
                count += 1;
            }
        }
        count
    }

    fn check_word(&self, w: &CosetWord) -> Result<()> {
        let k = self.k();
        if let Some(&bad) = w.letters().iter().find(|&&l| l as usize > k) {
            return Err(Error::InvalidWord(format!(
                "letter {bad} outside 1..={k} for this group"
            )));
        }
        Ok(())
    }

    /// All rows with degree(u) + degree(v) <= degree_cap, as a persistent
    /// table keyed by this oracle's fingerprint. Deterministic content.
    pub fn build_structure_table(&self, degree_cap: usize) -> Result<StructureConstantTable> {
        if degree_cap % 2 != 0 {
            return Err(Error::Range(format!(
                "degree cap must be even, got {degree_cap}"
            )));
        }
        let k = self.k();
        let mut table = StructureConstantTable::new(self.fingerprint(), degree_cap);
        for du in (0..=degree_cap).step_by(2) {
            for dv in (0..=degree_cap - du).step_by(2) {
                for u in enumerate_words(k, du)? {
                    for v in enumerate_words(k, dv)? {
                        let row = self.convolve(&u, &v)?;
                        debug_assert_eq!(
                            {
                                let top: Vec<CosetWord> = row
                                    .keys()
                                    .filter(|w| w.degree() == du + dv)
                                    .cloned()
                                    .collect();
                                top
                            },
                            {
                                let mut lead = leading_product(&u, &v, k);
                                lead.sort();
                                lead
                            },
                            "maximal support must match the leading product"
                        );
                        table.insert_row(u.clone(), v.clone(), row);
                    }
                }
            }
        }
        Ok(table)
    }
}

/// Convenience free functions mirroring the oracle methods.
pub fn orbit_count(
    group: &PermGroup,
    r: usize,
    method: OrbitMethod,
    bound: u64,
) -> Result<ExactInt> {
    TreeOracle::new(group.clone(), bound)?.orbit_count(r, method)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{parse_generators, DEFAULT_GROUP_ORDER_BOUND};

    fn oracle(d: usize, gens: &str) -> TreeOracle {
        let generators = parse_generators(gens, d).unwrap();
        let group = PermGroup::closure(d, generators, DEFAULT_GROUP_ORDER_BOUND).unwrap();
        TreeOracle::new(group, DEFAULT_ENUMERATION_BOUND).unwrap()
    }

    fn d5_oracle() -> TreeOracle {
        oracle(5, "(1 2 3 4 5),(2 5)(3 4)")
    }

    fn sym3_oracle() -> TreeOracle {
        oracle(3, "(1 2),(1 2 3)")
    }

    fn word(s: &str, k: usize) -> CosetWord {
        CosetWord::parse(s, k).unwrap()
    }

    #[test]
    fn profile_examples() {
        let o = d5_oracle();
        // 2 lies in the label-1 suborbit seen from 1.
        assert_eq!(profile_of_colors(&[1, 2], 5, o.suborbits()).unwrap(), vec![1]);
        // 3 is at label 2 from 1; 1 is at label 2 from 3.
        assert_eq!(
            profile_of_colors(&[1, 3, 1], 5, o.suborbits()).unwrap(),
            vec![2, 2]
        );
        let s = sym3_oracle();
        assert_eq!(
            profile_of_colors(&[1, 2, 3, 1], 3, s.suborbits()).unwrap(),
            vec![1, 1, 1]
        );
        assert!(profile_of_colors(&[1, 1, 2], 5, o.suborbits()).is_err());
    }

    #[test]
    fn orbit_counts_match_suborbit_power() {
        let cases: Vec<(TreeOracle, usize)> = vec![
            (d5_oracle(), 3),
            (oracle(5, "(1 2 3 4 5)"), 3),
            (sym3_oracle(), 3),
            (oracle(4, "(1 2),(1 2 3 4)"), 3),
        ];
        for (o, rmax) in cases {
            let k = o.k();
            for r in 1..=rmax {
                let expected = ExactInt::from(k).pow((2 * r - 1) as u32);
                let profile = o.orbit_count(r, OrbitMethod::Profile).unwrap();
                let bfs = o.orbit_count(r, OrbitMethod::Bfs).unwrap();
                assert_eq!(profile, expected, "profile at r={r}");
                assert_eq!(bfs, expected, "bfs at r={r}");
            }
        }
    }

    #[test]
    fn orbit_count_respects_bound() {
        let generators = parse_generators("(1 2 3 4 5),(2 5)(3 4)", 5).unwrap();
        let group = PermGroup::closure(5, generators, DEFAULT_GROUP_ORDER_BOUND).unwrap();
        let o = TreeOracle::new(group, 10).unwrap();
        assert!(matches!(
            o.orbit_count(2, OrbitMethod::Bfs).unwrap_err(),
            Error::EnumerationTooLarge { .. }
        ));
    }

    #[test]
    fn class_sizes() {
        let s = sym3_oracle();
        assert_eq!(s.class_size(&word("1", 1)), ExactInt::from(6));
        assert_eq!(s.class_size(&CosetWord::unit()), ExactInt::one());
        assert_eq!(s.class_size(&word("1,1,1", 1)), ExactInt::from(24));
        let o = d5_oracle();
        assert_eq!(o.class_size(&word("1", 2)), ExactInt::from(10));
        assert_eq!(o.class_size(&word("2", 2)), ExactInt::from(10));
        // Classes of one degree tile the sphere: d (d-1)^{2r-1}.
        for r in 1..=3usize {
            let total: ExactInt = enumerate_words(o.k(), 2 * r)
                .unwrap()
                .iter()
                .map(|w| o.class_size(w))
                .sum();
            let sphere = ExactInt::from(5) * ExactInt::from(4).pow((2 * r - 1) as u32);
            assert_eq!(total, sphere);
        }
    }

    #[test]
    fn convolve_trivalent_example() {
        let s = sym3_oracle();
        let row = s.convolve(&word("1", 1), &word("1", 1)).unwrap();
        let expected: BTreeMap<CosetWord, ExactInt> = [
            (CosetWord::unit(), ExactInt::from(6)),
            (word("1", 1), ExactInt::from(1)),
            (word("1,1,1", 1), ExactInt::from(1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(row, expected);
    }

    #[test]
    fn convolve_d5_cross_pair() {
        let o = d5_oracle();
        let row = o.convolve(&word("1", 2), &word("2", 2)).unwrap();
        let expected: BTreeMap<CosetWord, ExactInt> = [
            (word("1", 2), ExactInt::one()),
            (word("2", 2), ExactInt::one()),
            (word("1,1,2", 2), ExactInt::one()),
            (word("1,2,2", 2), ExactInt::one()),
        ]
        .into_iter()
        .collect();
        assert_eq!(row, expected);
    }

    #[test]
    fn convolve_unit_is_identity() {
        let o = d5_oracle();
        for w in [CosetWord::unit(), word("2", 2), word("1,2,1", 2)] {
            let left = o.convolve(&CosetWord::unit(), &w).unwrap();
            let right = o.convolve(&w, &CosetWord::unit()).unwrap();
            let expected: BTreeMap<CosetWord, ExactInt> =
                [(w.clone(), ExactInt::one())].into_iter().collect();
            assert_eq!(left, expected);
            assert_eq!(right, expected);
        }
    }

    #[test]
    fn maximal_terms_are_the_leading_product() {
        let o = d5_oracle();
        let words: Vec<CosetWord> = enumerate_words(2, 2)
            .unwrap()
            .into_iter()
            .chain(enumerate_words(2, 4).unwrap())
            .collect();
        for u in &words {
            for v in &words {
                let row = o.convolve(u, v).unwrap();
                let top: Vec<CosetWord> = row
                    .iter()
                    .filter(|(w, _)| w.degree() == u.degree() + v.degree())
                    .map(|(w, c)| {
                        assert_eq!(c, &ExactInt::one());
                        w.clone()
                    })
                    .collect();
                let mut lead = leading_product(u, v, o.k());
                lead.sort();
                assert_eq!(top, lead, "u={u} v={v}");
            }
        }
    }

    #[test]
    fn structure_table_small_caps() {
        let s = sym3_oracle();
        let t = s.build_structure_table(4).unwrap();
        let row = t.row(&word("1", 1), &word("1", 1)).unwrap();
        assert_eq!(row.get(&CosetWord::unit()), Some(&ExactInt::from(6)));

        let o = d5_oracle();
        let t = o.build_structure_table(4).unwrap();
        // Length-1 word pairs: 2 x 2 rows, plus unit rows.
        let pairs_of_degree = |du: usize, dv: usize| {
            t.rows()
                .filter(|((u, v), _)| u.degree() == du && v.degree() == dv)
                .count()
        };
        assert_eq!(pairs_of_degree(2, 2), 4);

        let empty = o.build_structure_table(0).unwrap();
        assert_eq!(empty.rows().count(), 1);
        let unit_row = empty.row(&CosetWord::unit(), &CosetWord::unit()).unwrap();
        assert_eq!(unit_row.get(&CosetWord::unit()), Some(&ExactInt::one()));
    }
}
