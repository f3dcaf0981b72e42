//! Canonical suborbit data of a transitive permutation group: the number
//! of point-stabilizer orbits, their sizes, and a cross-color labeling
//! transported along fixed transversals.

use crate::error::{Error, Result};
use crate::perm::{orbits_of, PermGroup, Permutation};

/// Suborbit invariants of a transitive group F on {1..d}.
///
/// Label j in entry color c marks the F_c-orbit on {1..d}\{c} obtained by
/// transporting the j-th F_1-orbit along any transversal mapping 1 to c.
/// The labeling is independent of that choice, which
/// [`label_consistency_check`] verifies exhaustively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuborbitTable {
    degree: usize,
    k: usize,
    sizes: Vec<usize>,
    /// labels[c-1][e-1] for e != c; 0 on the diagonal.
    labels: Vec<Vec<u8>>,
    /// transversals[c-1] maps 1 to c.
    transversals: Vec<Permutation>,
}

impl SuborbitTable {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of suborbits.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Suborbit sizes n_1..n_k, sorted by (size, minimal element) of the
    /// stabilizer orbits they label.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Label in {1..k} of exit color `exit` seen from entry color `entry`.
    pub fn label(&self, entry: u8, exit: u8) -> u8 {
        debug_assert_ne!(entry, exit);
        self.labels[(entry - 1) as usize][(exit - 1) as usize]
    }

    /// Exit colors carrying `label` in entry color `entry`, ascending.
    pub fn exits_with_label(&self, entry: u8, label: u8) -> Vec<u8> {
        (1..=self.degree as u8)
            .filter(|&e| e != entry && self.label(entry, e) == label)
            .collect()
    }

    pub fn transversal(&self, color: u8) -> &Permutation {
        &self.transversals[(color - 1) as usize]
    }
}

/// Orbits of the stabilizer of `point` on the remaining points, each
/// sorted, ordered by minimal element.
pub(crate) fn stabilizer_orbits(group: &PermGroup, point: u8) -> Vec<Vec<u8>> {
    let stab = group.stabilizer_elements(point);
    orbits_of(&stab, group.degree(), Some(point))
}

/// Build the canonical suborbit table of a transitive group.
///
/// The stabilizer orbits of the point 1 are sorted by (size, minimal
/// element) to fix labels 1..k; other colors inherit labels through the
/// BFS transversals.
pub fn suborbit_table(group: &PermGroup) -> Result<SuborbitTable> {
    let d = group.degree();
    if !group.is_transitive() {
        return Err(Error::NotTransitive { degree: d });
    }
    let mut base_orbits = stabilizer_orbits(group, 1);
    base_orbits.sort_by_key(|o| (o.len(), o[0]));
    let k = base_orbits.len();
    let sizes: Vec<usize> = base_orbits.iter().map(|o| o.len()).collect();
    debug_assert_eq!(sizes.iter().sum::<usize>(), d - 1);

    let mut base_label = vec![0u8; d + 1];
    for (j, orbit) in base_orbits.iter().enumerate() {
        for &p in orbit {
            base_label[p as usize] = (j + 1) as u8;
        }
    }

    let reps = group.transversals_from_one();
    let mut transversals = Vec::with_capacity(d);
    let mut labels = vec![vec![0u8; d]; d];
    for c in 1..=d as u8 {
        let tau = reps[c as usize]
            .clone()
            .expect("transitive group reaches every point");
        let tau_inv = tau.inverse();
        for e in 1..=d as u8 {
            if e != c {
                labels[(c - 1) as usize][(e - 1) as usize] =
                    base_label[tau_inv.apply(e) as usize];
            }
        }
        transversals.push(tau);
    }

    Ok(SuborbitTable {
        degree: d,
        k,
        sizes,
        labels,
        transversals,
    })
}

/// True iff every element mapping 1 to c induces the same labeling in
/// color c as the table's transversal, for every color. Exhaustive over
/// the full coset of the point stabilizer.
pub fn label_consistency_check(group: &PermGroup, table: &SuborbitTable) -> bool {
    let d = group.degree();
    let mut base_label = vec![0u8; d + 1];
    for e in 2..=d as u8 {
        base_label[e as usize] = table.label(1, e);
    }
    for tau in group.elements() {
        let c = tau.apply(1);
        let tau_inv = tau.inverse();
        for e in 1..=d as u8 {
            if e == c {
                continue;
            }
            if base_label[tau_inv.apply(e) as usize] != table.label(c, e) {
                return false;
            }
        }
    }
    true
}

/// True iff, for every color c, the fibers of the label map equal the
/// orbits of the stabilizer of c computed independently.
pub fn fibers_match_stabilizer_orbits(group: &PermGroup, table: &SuborbitTable) -> bool {
    let d = group.degree();
    for c in 1..=d as u8 {
        for orbit in stabilizer_orbits(group, c) {
            let first = table.label(c, orbit[0]);
            if orbit.iter().any(|&e| table.label(c, e) != first) {
                return false;
            }
            // Distinct orbits must carry distinct labels.
            let same_label: Vec<u8> = table.exits_with_label(c, first);
            if same_label != orbit {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{parse_generators, PermGroup, DEFAULT_GROUP_ORDER_BOUND};

    fn group(d: usize, gens: &str) -> PermGroup {
        let generators = parse_generators(gens, d).unwrap();
        PermGroup::closure(d, generators, DEFAULT_GROUP_ORDER_BOUND).unwrap()
    }

    #[test]
    fn sym3_single_suborbit() {
        let g = group(3, "(1 2),(1 2 3)");
        let t = suborbit_table(&g).unwrap();
        assert_eq!(t.k(), 1);
        assert_eq!(t.sizes(), &[2]);
        assert!(label_consistency_check(&g, &t));
    }

    #[test]
    fn d5_two_suborbits() {
        let g = group(5, "(1 2 3 4 5),(2 5)(3 4)");
        let t = suborbit_table(&g).unwrap();
        assert_eq!(t.k(), 2);
        assert_eq!(t.sizes(), &[2, 2]);
        // Stabilizer of 1 splits {2..5} into {2,5} (label 1) and {3,4} (label 2).
        assert_eq!(t.exits_with_label(1, 1), vec![2, 5]);
        assert_eq!(t.exits_with_label(1, 2), vec![3, 4]);
        assert!(label_consistency_check(&g, &t));
        assert!(fibers_match_stabilizer_orbits(&g, &t));
    }

    #[test]
    fn c5_trivial_stabilizer() {
        let g = group(5, "(1 2 3 4 5)");
        let t = suborbit_table(&g).unwrap();
        assert_eq!(t.k(), 4);
        assert_eq!(t.sizes(), &[1, 1, 1, 1]);
        assert!(label_consistency_check(&g, &t));
        assert!(fibers_match_stabilizer_orbits(&g, &t));
    }

    #[test]
    fn sizes_sum_to_degree_minus_one() {
        for (d, gens) in [
            (3, "(1 2),(1 2 3)"),
            (4, "(1 2),(1 2 3 4)"),
            (4, "(1 2 3),(2 3 4)"),
            (5, "(1 2 3 4 5),(2 5)(3 4)"),
            (5, "(1 2 3 4 5)"),
            (6, "(1 2 3 4 5 6)"),
            (7, "(1 2 3 4 5 6 7)"),
        ] {
            let g = group(d, gens);
            let t = suborbit_table(&g).unwrap();
            assert_eq!(t.sizes().iter().sum::<usize>(), d - 1);
            assert!(label_consistency_check(&g, &t));
            assert!(fibers_match_stabilizer_orbits(&g, &t));
        }
    }

    #[test]
    fn rejects_intransitive_groups() {
        let g = group(4, "(1 2)");
        assert!(matches!(
            suborbit_table(&g).unwrap_err(),
            Error::NotTransitive { degree: 4 }
        ));
    }
}
