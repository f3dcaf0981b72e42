//! Finite permutation groups on {1..d}: parsing, breadth-first closure,
//! transitivity / primitivity / 2-transitivity analysis, and the canonical
//! suborbit table used everywhere else in the crate.
//!
//! Degrees here are desk scale, so groups are materialized in full by BFS
//! closure rather than through stabilizer chains.

mod suborbit;

pub use suborbit::{label_consistency_check, suborbit_table, SuborbitTable};

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Default cap on the order of a materialized group.
pub const DEFAULT_GROUP_ORDER_BOUND: u64 = 1_000_000;

/// A permutation of {1..d}, stored as the image sequence (1-based values).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (1..=degree as u8).collect(),
        }
    }

    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let d = images.len();
        if d == 0 || d > 255 {
            return Err(Error::InvalidPermutation(format!(
                "degree must be in 1..=255, got {d}"
            )));
        }
        let mut seen = vec![false; d + 1];
        for &v in &images {
            if v == 0 || v as usize > d || seen[v as usize] {
                return Err(Error::InvalidPermutation(format!(
                    "images {images:?} are not a permutation of 1..={d}"
                )));
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a point, 1-based.
    pub fn apply(&self, point: u8) -> u8 {
        self.images[(point - 1) as usize]
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// Composition acting right-to-left: (self * other)(p) = self(other(p)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&p| self.apply(p)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[(v - 1) as usize] = (i + 1) as u8;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// Parse either an image list "2,3,4,5,1" or cycles "(1 2 3 4 5)(6 7)".
    /// Fixed points may be omitted in cycle notation; `d` fixes the degree.
    pub fn parse(input: &str, d: usize) -> Result<Self> {
        let s = input.trim();
        if s.is_empty() {
            return Err(Error::InvalidPermutation("empty permutation".into()));
        }
        if s.starts_with('(') {
            return Self::parse_cycles(s, d);
        }
        let images = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u8>()
                    .map_err(|_| Error::InvalidPermutation(format!("bad image entry {tok:?}")))
            })
            .collect::<Result<Vec<u8>>>()?;
        if images.len() != d {
            return Err(Error::InvalidPermutation(format!(
                "expected {d} images, got {}",
                images.len()
            )));
        }
        Self::from_images(images)
    }

    fn parse_cycles(s: &str, d: usize) -> Result<Self> {
        if d == 0 || d > 255 {
            return Err(Error::InvalidPermutation(format!(
                "degree must be in 1..=255, got {d}"
            )));
        }
        let mut images: Vec<u8> = (1..=d as u8).collect();
        let mut rest = s;
        while !rest.is_empty() {
            let open = rest.find('(').ok_or_else(|| {
                Error::InvalidPermutation(format!("unexpected trailing text {rest:?}"))
            })?;
            if !rest[..open].trim().is_empty() {
                return Err(Error::InvalidPermutation(format!(
                    "unexpected text before cycle: {:?}",
                    &rest[..open]
                )));
            }
            let close = rest.find(')').ok_or_else(|| {
                Error::InvalidPermutation("unbalanced parenthesis in cycle".into())
            })?;
            if close < open {
                return Err(Error::InvalidPermutation("unbalanced parenthesis".into()));
            }
            let body = &rest[open + 1..close];
            let points = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|tok| {
                    tok.parse::<u8>()
                        .map_err(|_| Error::InvalidPermutation(format!("bad cycle entry {tok:?}")))
                })
                .collect::<Result<Vec<u8>>>()?;
            for &p in &points {
                if p == 0 || p as usize > d {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle point {p} outside 1..={d}"
                    )));
                }
            }
            for w in points.windows(2) {
                images[(w[0] - 1) as usize] = w[1];
            }
            if points.len() > 1 {
                images[(points[points.len() - 1] - 1) as usize] = points[0];
            }
            rest = rest[close + 1..].trim_start();
        }
        Self::from_images(images)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation; the identity prints as "()".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut seen = vec![false; d + 1];
        let mut wrote = false;
        for start in 1..=d as u8 {
            if seen[start as usize] || self.apply(start) == start {
                seen[start as usize] = true;
                continue;
            }
            write!(f, "(")?;
            let mut p = start;
            let mut first = true;
            loop {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
                seen[p as usize] = true;
                first = false;
                p = self.apply(p);
                if p == start {
                    break;
                }
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Split a generator specification into individual permutations.
///
/// Generators are separated by ';' or by commas at paren depth zero.
/// Image-list generators are recognized as runs of `d` bare integers.
pub fn parse_generators(input: &str, d: usize) -> Result<Vec<Permutation>> {
    let mut specs: Vec<String> = Vec::new();
    for chunk in input.split(';') {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        // Tokenize at top-level commas.
        let mut tokens: Vec<String> = Vec::new();
        let mut depth = 0usize;
        let mut cur = String::new();
        for c in chunk.chars() {
            match c {
                '(' => {
                    depth += 1;
                    cur.push(c);
                }
                ')' => {
                    depth = depth.checked_sub(1).ok_or_else(|| {
                        Error::InvalidPermutation("unbalanced parenthesis".into())
                    })?;
                    cur.push(c);
                }
                ',' if depth == 0 => {
                    tokens.push(cur.trim().to_string());
                    cur.clear();
                }
                _ => cur.push(c),
            }
        }
        if depth != 0 {
            return Err(Error::InvalidPermutation("unbalanced parenthesis".into()));
        }
        if !cur.trim().is_empty() {
            tokens.push(cur.trim().to_string());
        }
        // Group bare-integer tokens into image lists of length d; every
        // parenthesized token is one whole permutation.
        let mut run: Vec<String> = Vec::new();
        for tok in tokens {
            if tok.starts_with('(') {
                if !run.is_empty() {
                    return Err(Error::InvalidPermutation(format!(
                        "dangling image entries {run:?} before cycle {tok:?}"
                    )));
                }
                specs.push(tok);
            } else {
                run.push(tok);
                if run.len() == d {
                    specs.push(run.join(","));
                    run.clear();
                }
            }
        }
        if !run.is_empty() {
            return Err(Error::InvalidPermutation(format!(
                "image list {:?} is not a multiple of the degree {d}",
                run.join(",")
            )));
        }
    }
    if specs.is_empty() {
        return Err(Error::InvalidPermutation("no generators given".into()));
    }
    specs.iter().map(|s| Permutation::parse(s, d)).collect()
}

/// A finite permutation group materialized by breadth-first closure.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

/// Transitivity facts of a group action, as reported by [`PermGroup::analyze`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupAnalysis {
    pub transitive: bool,
    pub primitive: bool,
    pub two_transitive: bool,
}

impl PermGroup {
    /// Breadth-first closure of the generators, with deterministic element
    /// order (discovery order, generators applied in input order).
    pub fn closure(degree: usize, generators: Vec<Permutation>, bound: u64) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator degree {} does not match d={degree}",
                    g.degree()
                )));
            }
        }
        let mut elements = vec![Permutation::identity(degree)];
        let mut index: HashMap<Vec<u8>, usize> = HashMap::new();
        index.insert(elements[0].images.clone(), 0);
        let mut frontier = 0usize;
        while frontier < elements.len() {
            let current = elements[frontier].clone();
            frontier += 1;
            for g in &generators {
                let next = current.compose(g);
                if !index.contains_key(&next.images) {
                    if elements.len() as u64 >= bound {
                        return Err(Error::GroupTooLarge { bound });
                    }
                    index.insert(next.images.clone(), elements.len());
                    elements.push(next);
                }
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            elements,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    /// All elements fixing `point`, in element order.
    pub fn stabilizer_elements(&self, point: u8) -> Vec<Permutation> {
        self.elements
            .iter()
            .filter(|g| g.apply(point) == point)
            .cloned()
            .collect()
    }

    /// Orbits of the natural action on {1..d}, each sorted, ordered by
    /// minimal element.
    pub fn orbits(&self) -> Vec<Vec<u8>> {
        orbits_of(&self.generators, self.degree, None)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Transitive with no nontrivial block system. Computed by refining,
    /// for every pair {1, b}, the finest partition in which the pair is
    /// joined; a proper joint partition witnesses imprimitivity.
    pub fn is_primitive(&self) -> bool {
        if !self.is_transitive() {
            return false;
        }
        let d = self.degree;
        if d <= 2 {
            return true;
        }
        for b in 2..=d as u8 {
            if self.minimal_block_size(1, b) < d {
                return false;
            }
        }
        true
    }

    /// Size of the smallest block containing {a, b} in any block system.
    fn minimal_block_size(&self, a: u8, b: u8) -> usize {
        let d = self.degree;
        let mut uf = UnionFind::new(d + 1);
        uf.union(a as usize, b as usize);
        let mut queue = vec![(a, b)];
        while let Some((p, q)) = queue.pop() {
            for g in &self.generators {
                let (gp, gq) = (g.apply(p), g.apply(q));
                if uf.union(gp as usize, gq as usize) {
                    queue.push((gp, gq));
                }
            }
        }
        let root = uf.find(a as usize);
        (1..=d).filter(|&p| uf.find(p) == root).count()
    }

    /// Transitivity, primitivity, and 2-transitivity (single suborbit).
    pub fn analyze(&self) -> GroupAnalysis {
        let transitive = self.is_transitive();
        let primitive = transitive && self.is_primitive();
        let two_transitive = transitive
            && suborbit::stabilizer_orbits(self, 1)
                .map_or(false, |orbits| orbits.len() == 1);
        GroupAnalysis {
            transitive,
            primitive,
            two_transitive,
        }
    }

    /// First element mapping 1 to each point, found by BFS over the
    /// generators in input order; `None` entries for unreachable points.
    pub(crate) fn transversals_from_one(&self) -> Vec<Option<Permutation>> {
        let d = self.degree;
        let mut reps: Vec<Option<Permutation>> = vec![None; d + 1];
        reps[1] = Some(Permutation::identity(d));
        let mut queue = std::collections::VecDeque::from([1u8]);
        while let Some(point) = queue.pop_front() {
            let rep = reps[point as usize].clone().unwrap();
            for g in &self.generators {
                let target = g.apply(point);
                if reps[target as usize].is_none() {
                    reps[target as usize] = Some(g.compose(&rep));
                    queue.push_back(target);
                }
            }
        }
        reps
    }
}

/// Orbits of a set of permutations on {1..d}, optionally excluding a point.
pub(crate) fn orbits_of(perms: &[Permutation], d: usize, exclude: Option<u8>) -> Vec<Vec<u8>> {
    let mut uf = UnionFind::new(d + 1);
    for p in 1..=d as u8 {
        if Some(p) == exclude {
            continue;
        }
        for g in perms {
            let q = g.apply(p);
            debug_assert!(Some(q) != exclude);
            uf.union(p as usize, q as usize);
        }
    }
    let mut buckets: HashMap<usize, Vec<u8>> = HashMap::new();
    for p in 1..=d as u8 {
        if Some(p) == exclude {
            continue;
        }
        buckets.entry(uf.find(p as usize)).or_default().push(p);
    }
    let mut orbits: Vec<Vec<u8>> = buckets.into_values().collect();
    for orbit in &mut orbits {
        orbit.sort_unstable();
    }
    orbits.sort_by_key(|o| o[0]);
    orbits
}

/// Union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if the two classes were distinct before the union.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn class_count(&mut self, members: impl Iterator<Item = usize>) -> usize {
        let mut roots: Vec<usize> = members.map(|m| self.find(m)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn group(d: usize, gens: &str) -> PermGroup {
        let generators = parse_generators(gens, d).unwrap();
        PermGroup::closure(d, generators, DEFAULT_GROUP_ORDER_BOUND).unwrap()
    }

    #[test]
    fn parse_both_notations() {
        let p = Permutation::parse("2,3,4,5,1", 5).unwrap();
        let q = Permutation::parse("(1 2 3 4 5)", 5).unwrap();
        assert_eq!(p, q);
        let r = Permutation::parse("(2 5)(3 4)", 5).unwrap();
        assert_eq!(r.images(), &[1, 5, 4, 3, 2]);
        assert_eq!(r.to_string(), "(2 5)(3 4)");
        assert!(Permutation::parse("2,2,3", 3).is_err());
        assert!(Permutation::parse("(1 2", 5).is_err());
        assert!(Permutation::parse("(1 9)", 5).is_err());
    }

    #[test]
    fn parse_generator_lists() {
        let gens = parse_generators("(1 2 3 4 5),(2 5)(3 4)", 5).unwrap();
        assert_eq!(gens.len(), 2);
        let gens = parse_generators("2,3,4,5,1;1,5,4,3,2", 5).unwrap();
        assert_eq!(gens.len(), 2);
        let gens = parse_generators("2,3,4,5,1,1,5,4,3,2", 5).unwrap();
        assert_eq!(gens.len(), 2);
        assert!(parse_generators("2,3,4", 5).is_err());
        assert!(parse_generators("", 5).is_err());
    }

    #[test]
    fn closure_orders() {
        assert_eq!(group(5, "(1 2 3 4 5)").order(), 5);
        assert_eq!(group(5, "(1 2 3 4 5),(2 5)(3 4)").order(), 10);
        assert_eq!(group(3, "(1 2),(1 2 3)").order(), 6);
        assert_eq!(group(4, "(1 2),(1 2 3 4)").order(), 24);
    }

    #[test]
    fn closure_respects_bound() {
        let gens = parse_generators("(1 2),(1 2 3 4 5)", 5).unwrap();
        let err = PermGroup::closure(5, gens, 100).unwrap_err();
        assert!(matches!(err, Error::GroupTooLarge { bound: 100 }));
    }

    #[test]
    fn compose_and_inverse() {
        let p = Permutation::parse("(1 2 3 4 5)", 5).unwrap();
        let q = Permutation::parse("(2 5)(3 4)", 5).unwrap();
        // (p ∘ q)(2) = p(5) = 1.
        assert_eq!(p.compose(&q).apply(2), 1);
        assert!(p.compose(&p.inverse()).is_identity());
        assert!(q.compose(&q).is_identity());
    }

    #[test]
    fn analyze_examples() {
        let sym3 = group(3, "(1 2),(1 2 3)").analyze();
        assert_eq!(
            sym3,
            GroupAnalysis {
                transitive: true,
                primitive: true,
                two_transitive: true
            }
        );
        let d5 = group(5, "(1 2 3 4 5),(2 5)(3 4)").analyze();
        assert_eq!(
            d5,
            GroupAnalysis {
                transitive: true,
                primitive: true,
                two_transitive: false
            }
        );
        let c5 = group(5, "(1 2 3 4 5)").analyze();
        assert_eq!(
            c5,
            GroupAnalysis {
                transitive: true,
                primitive: true,
                two_transitive: false
            }
        );
        // C4 has blocks {1,3},{2,4}.
        let c4 = group(4, "(1 2 3 4)").analyze();
        assert!(c4.transitive && !c4.primitive && !c4.two_transitive);
        // Klein four-group acting regularly is imprimitive.
        let v4 = group(4, "(1 2)(3 4),(1 3)(2 4)").analyze();
        assert!(v4.transitive && !v4.primitive);
        // Intransitive: a single transposition on 4 points.
        let fix = group(4, "(1 2)").analyze();
        assert!(!fix.transitive && !fix.primitive && !fix.two_transitive);
    }

    #[test]
    fn analyze_wider_corpus() {
        // (group, expected (transitive, primitive, two_transitive)).
        let cases: Vec<(PermGroup, (bool, bool, bool))> = vec![
            (group(3, "(1 2),(1 2 3)"), (true, true, true)),
            (group(4, "(1 2),(1 2 3 4)"), (true, true, true)),
            (group(4, "(1 2 3),(2 3 4)"), (true, true, true)), // Alt(4)
            (group(5, "(1 2 3),(3 4 5)"), (true, true, true)), // Alt(5)
            (group(5, "(1 2),(1 2 3 4 5)"), (true, true, true)), // Sym(5)
            (group(5, "(1 2 3 4 5)"), (true, true, false)),    // C5
            (group(5, "(1 2 3 4 5),(2 5)(3 4)"), (true, true, false)), // D5
            (group(7, "(1 2 3 4 5 6 7)"), (true, true, false)), // C7
            (group(7, "(1 2 3 4 5 6 7),(2 7)(3 6)(4 5)"), (true, true, false)), // D7
            (group(4, "(1 2 3 4)"), (true, false, false)),     // C4
            (group(4, "(1 2)(3 4),(1 3)(2 4)"), (true, false, false)), // V4
            (group(6, "(1 2 3 4 5 6)"), (true, false, false)), // C6
            (group(4, "(1 2)"), (false, false, false)),
        ];
        for (g, (t, p, tt)) in cases {
            let a = g.analyze();
            assert_eq!((a.transitive, a.primitive, a.two_transitive), (t, p, tt));
        }
    }
}
