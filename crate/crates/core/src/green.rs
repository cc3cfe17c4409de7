//! Green's relations, the finiteness criteria, and the Schützenberger group.
//!
//! R-classes are computed by equality of right principal ideals `{a} ∪ aS`,
//! L-classes by `{a} ∪ Sa`, H as the meet of R and L, and D by equality of
//! two-sided principal ideals `{a} ∪ aS ∪ Sa ∪ SaS` (D coincides with J in a
//! finite semigroup). These sets are already ideals, so no iterative closure
//! is needed.

use std::collections::HashMap;

use thiserror::Error;

use crate::semigroup::FiniteSemigroup;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CriteriaError {
    /// The two right-zero-subsemigroup predicates (direct product check vs
    /// R-related idempotents) disagreed. They are provably equivalent, so
    /// this indicates a bug in the Green machinery.
    #[error("right-zero predicates disagree: product-check pairs {product_pairs:?}, R-related pairs {r_related_pairs:?}")]
    InternalDisagreement {
        product_pairs: Vec<(usize, usize)>,
        r_related_pairs: Vec<(usize, usize)>,
    },
}

/// The R/L/H/D partitions of a finite semigroup plus the D-class order,
/// its maximal classes and the complementary ideal.
#[derive(Debug, Clone)]
pub struct GreenStructure {
    r_class_of: Vec<usize>,
    l_class_of: Vec<usize>,
    h_class_of: Vec<usize>,
    d_class_of: Vec<usize>,
    r_members: Vec<Vec<usize>>,
    l_members: Vec<Vec<usize>>,
    h_members: Vec<Vec<usize>>,
    d_members: Vec<Vec<usize>>,
    /// `d_below[i][j]` iff the principal ideal of class `i` is strictly
    /// contained in that of class `j`.
    d_below: Vec<Vec<bool>>,
    maximal_d: Vec<usize>,
    ideal: Vec<usize>,
}

impl GreenStructure {
    pub fn r_class_of(&self, a: usize) -> usize {
        self.r_class_of[a]
    }
    pub fn l_class_of(&self, a: usize) -> usize {
        self.l_class_of[a]
    }
    pub fn h_class_of(&self, a: usize) -> usize {
        self.h_class_of[a]
    }
    pub fn d_class_of(&self, a: usize) -> usize {
        self.d_class_of[a]
    }
    pub fn r_classes(&self) -> &[Vec<usize>] {
        &self.r_members
    }
    pub fn l_classes(&self) -> &[Vec<usize>] {
        &self.l_members
    }
    pub fn h_classes(&self) -> &[Vec<usize>] {
        &self.h_members
    }
    pub fn d_classes(&self) -> &[Vec<usize>] {
        &self.d_members
    }
    /// Strict order on D-classes by principal-ideal containment.
    pub fn d_strictly_below(&self, i: usize, j: usize) -> bool {
        self.d_below[i][j]
    }
    /// Ids of the maximal D-classes, ascending.
    pub fn maximal_d(&self) -> &[usize] {
        &self.maximal_d
    }
    /// Complement of the union of maximal D-classes, ascending. When
    /// nonempty this is a two-sided ideal.
    pub fn ideal(&self) -> &[usize] {
        &self.ideal
    }
    pub fn is_h_trivial(&self) -> bool {
        self.h_members.iter().all(|h| h.len() == 1)
    }
}

fn partition_by_sets(sets: &[Vec<usize>]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut ids: HashMap<&[usize], usize> = HashMap::new();
    let mut class_of = Vec::with_capacity(sets.len());
    let mut members: Vec<Vec<usize>> = Vec::new();
    for (a, set) in sets.iter().enumerate() {
        let next = ids.len();
        let id = *ids.entry(set.as_slice()).or_insert(next);
        if id == members.len() {
            members.push(Vec::new());
        }
        class_of.push(id);
        members[id].push(a);
    }
    (class_of, members)
}

fn sorted_set(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

pub fn green(s: &FiniteSemigroup) -> GreenStructure {
    let n = s.order();
    let right_ideals: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            let mut v: Vec<usize> = (0..n).map(|x| s.product(a, x)).collect();
            v.push(a);
            sorted_set(v)
        })
        .collect();
    let left_ideals: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            let mut v: Vec<usize> = (0..n).map(|x| s.product(x, a)).collect();
            v.push(a);
            sorted_set(v)
        })
        .collect();
    let two_sided: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            let mut v = right_ideals[a].clone();
            v.extend_from_slice(&left_ideals[a]);
            for x in 0..n {
                let xa = s.product(x, a);
                for y in 0..n {
                    v.push(s.product(xa, y));
                }
            }
            sorted_set(v)
        })
        .collect();

    let (r_class_of, r_members) = partition_by_sets(&right_ideals);
    let (l_class_of, l_members) = partition_by_sets(&left_ideals);
    let (d_class_of, d_members) = partition_by_sets(&two_sided);

    let mut h_ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut h_class_of = Vec::with_capacity(n);
    let mut h_members: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        let key = (r_class_of[a], l_class_of[a]);
        let next = h_ids.len();
        let id = *h_ids.entry(key).or_insert(next);
        if id == h_members.len() {
            h_members.push(Vec::new());
        }
        h_class_of.push(id);
        h_members[id].push(a);
    }

    let d_count = d_members.len();
    let d_ideal_of: Vec<&Vec<usize>> = (0..d_count).map(|c| &two_sided[d_members[c][0]]).collect();
    let mut d_below = vec![vec![false; d_count]; d_count];
    for i in 0..d_count {
        for j in 0..d_count {
            if i != j {
                let (small, big) = (d_ideal_of[i], d_ideal_of[j]);
                d_below[i][j] =
                    small.len() < big.len() && small.iter().all(|x| big.binary_search(x).is_ok());
            }
        }
    }
    let maximal_d: Vec<usize> = (0..d_count)
        .filter(|&i| (0..d_count).all(|j| !d_below[i][j]))
        .collect();
    let ideal: Vec<usize> = (0..n)
        .filter(|&a| !maximal_d.contains(&d_class_of[a]))
        .collect();

    GreenStructure {
        r_class_of,
        l_class_of,
        h_class_of,
        d_class_of,
        r_members,
        l_members,
        h_members,
        d_members,
        d_below,
        maximal_d,
        ideal,
    }
}

/// Outcome of the finiteness criteria for the Cayley and dual Cayley
/// automaton semigroups of a finite semigroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionVerdict {
    pub h_trivial: bool,
    /// First pair of distinct R-related idempotents in lexicographic order,
    /// i.e. a two-element right zero subsemigroup.
    pub right_zero_pair: Option<(usize, usize)>,
    /// The Cayley automaton semigroup is finite iff the semigroup is
    /// H-trivial.
    pub cayley_finite: bool,
    /// The dual Cayley automaton semigroup is finite iff the semigroup is
    /// H-trivial and has no non-trivial right zero subsemigroup.
    pub dual_finite: bool,
}

pub fn criteria(s: &FiniteSemigroup) -> Result<CriterionVerdict, CriteriaError> {
    criteria_with(s, &green(s))
}

/// [`criteria`] against a precomputed [`GreenStructure`].
pub fn criteria_with(
    s: &FiniteSemigroup,
    g: &GreenStructure,
) -> Result<CriterionVerdict, CriteriaError> {
    let n = s.order();
    let idempotents: Vec<usize> = (0..n).filter(|&e| s.product(e, e) == e).collect();

    // Predicate (i): {e, f} is a right zero subsemigroup, ef = f and fe = e.
    let mut product_pairs = Vec::new();
    // Predicate (ii): distinct R-related idempotents.
    let mut r_related_pairs = Vec::new();
    for (i, &e) in idempotents.iter().enumerate() {
        for &f in &idempotents[i + 1..] {
            if s.product(e, f) == f && s.product(f, e) == e {
                product_pairs.push((e, f));
            }
            if g.r_class_of(e) == g.r_class_of(f) {
                r_related_pairs.push((e, f));
            }
        }
    }
    if product_pairs != r_related_pairs {
        return Err(CriteriaError::InternalDisagreement {
            product_pairs,
            r_related_pairs,
        });
    }

    let h_trivial = g.is_h_trivial();
    let right_zero_pair = product_pairs.first().copied();
    Ok(CriterionVerdict {
        h_trivial,
        right_zero_pair,
        cayley_finite: h_trivial,
        dual_finite: h_trivial && right_zero_pair.is_none(),
    })
}

/// The Schützenberger group of an H-class: the bijections of `H` induced by
/// right translations that map `H` into itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchutzenbergerGroup {
    /// Members of the H-class, ascending.
    pub h_class: Vec<usize>,
    /// `T = {t in S : Ht ⊆ H}`, ascending. May be empty for a singleton
    /// H-class whose member is not stabilized by any element.
    pub stabilizer: Vec<usize>,
    /// The induced bijections as permutations of positions in `h_class`,
    /// deduplicated and sorted. Always contains the identity map (the group
    /// identity, contributed by the adjoined monoid identity when no element
    /// of `S` stabilizes `H`).
    pub maps: Vec<Vec<usize>>,
}

pub fn schutzenberger(s: &FiniteSemigroup, h_member: usize) -> SchutzenbergerGroup {
    schutzenberger_with(s, &green(s), h_member)
}

/// [`schutzenberger`] against a precomputed [`GreenStructure`].
pub fn schutzenberger_with(
    s: &FiniteSemigroup,
    g: &GreenStructure,
    h_member: usize,
) -> SchutzenbergerGroup {
    let h_id = g.h_class_of(h_member);
    let h_class = g.h_classes()[h_id].clone();
    let pos_in_h: HashMap<usize, usize> =
        h_class.iter().enumerate().map(|(i, &x)| (x, i)).collect();

    let mut stabilizer = Vec::new();
    let mut maps: Vec<Vec<usize>> = Vec::new();
    for t in s.elements() {
        let images: Option<Vec<usize>> = h_class
            .iter()
            .map(|&h| pos_in_h.get(&s.product(h, t)).copied())
            .collect();
        if let Some(map) = images {
            stabilizer.push(t);
            if !maps.contains(&map) {
                maps.push(map);
            }
        }
    }
    let identity: Vec<usize> = (0..h_class.len()).collect();
    if !maps.contains(&identity) {
        maps.push(identity);
    }
    maps.sort_unstable();
    SchutzenbergerGroup {
        h_class,
        stabilizer,
        maps,
    }
}

/// Checks the stability property: whenever `a`, `b` and `ab` share a
/// D-class, `ab` lies in `R_a ∩ L_b`. This holds in every finite semigroup,
/// so a `false` return signals a bug in the Green machinery.
pub fn miller_clifford_holds(s: &FiniteSemigroup) -> bool {
    let g = green(s);
    for a in s.elements() {
        for b in s.elements() {
            let ab = s.product(a, b);
            if g.d_class_of(a) == g.d_class_of(b) && g.d_class_of(a) == g.d_class_of(ab) {
                if g.r_class_of(ab) != g.r_class_of(a) || g.l_class_of(ab) != g.l_class_of(b) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::named;

    #[test]
    fn chain_green_structure() {
        let s = named("chain:2").unwrap();
        let g = green(&s);
        assert_eq!(g.r_classes().len(), 2);
        assert_eq!(g.l_classes().len(), 2);
        assert_eq!(g.h_classes().len(), 2);
        assert_eq!(g.d_classes().len(), 2);
        assert_eq!(g.maximal_d(), &[g.d_class_of(1)]);
        assert_eq!(g.ideal(), &[0]);
        assert!(g.d_strictly_below(g.d_class_of(0), g.d_class_of(1)));
    }

    #[test]
    fn rightzero_green_structure() {
        let s = named("rightzero:2").unwrap();
        let g = green(&s);
        // aS = S so R is universal; Sa = {a} so L is trivial.
        assert_eq!(g.r_classes().len(), 1);
        assert_eq!(g.l_classes().len(), 2);
        assert_eq!(g.h_classes().len(), 2);
        assert_eq!(g.d_classes().len(), 1);
        assert!(g.ideal().is_empty());
    }

    #[test]
    fn cyclic_group_is_one_class() {
        let s = named("cyclic:2").unwrap();
        let g = green(&s);
        assert_eq!(g.r_classes().len(), 1);
        assert_eq!(g.l_classes().len(), 1);
        assert_eq!(g.h_classes().len(), 1);
        assert_eq!(g.d_classes().len(), 1);
        assert!(g.ideal().is_empty());
        assert!(!g.is_h_trivial());
    }

    #[test]
    fn criteria_examples() {
        let v = criteria(&named("cyclic:2").unwrap()).unwrap();
        assert_eq!(
            v,
            CriterionVerdict {
                h_trivial: false,
                right_zero_pair: None,
                cayley_finite: false,
                dual_finite: false
            }
        );
        let v = criteria(&named("rightzero:2").unwrap()).unwrap();
        assert_eq!(
            v,
            CriterionVerdict {
                h_trivial: true,
                right_zero_pair: Some((0, 1)),
                cayley_finite: true,
                dual_finite: false
            }
        );
        let v = criteria(&named("chain:2").unwrap()).unwrap();
        assert_eq!(
            v,
            CriterionVerdict {
                h_trivial: true,
                right_zero_pair: None,
                cayley_finite: true,
                dual_finite: true
            }
        );
    }

    #[test]
    fn leftzero_pair_is_not_right_zero() {
        // Both elements are idempotent and L-related, but not R-related.
        let v = criteria(&named("leftzero:2").unwrap()).unwrap();
        assert_eq!(v.right_zero_pair, None);
        assert!(v.dual_finite);
    }

    #[test]
    fn schutzenberger_of_group_h_class() {
        let s = named("cyclic:2").unwrap();
        let g = schutzenberger(&s, 0);
        assert_eq!(g.h_class, vec![0, 1]);
        assert_eq!(g.stabilizer, vec![0, 1]);
        assert_eq!(g.maps, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn schutzenberger_of_singleton_h_class() {
        let s = named("chain:2").unwrap();
        let g = schutzenberger(&s, 1);
        assert_eq!(g.h_class, vec![1]);
        assert_eq!(g.maps, vec![vec![0]]);
    }

    #[test]
    fn schutzenberger_cyclic3() {
        let s = named("cyclic:3").unwrap();
        let g = schutzenberger(&s, 0);
        assert_eq!(g.maps.len(), 3);
        assert_eq!(g.h_class.len(), 3);
    }

    #[test]
    fn schutzenberger_unstabilized_singleton() {
        // In null:2, H(1) = {1} and 1*t = 0 for every t, so no element of S
        // stabilizes it; the group is still the trivial group.
        let s = named("null:2").unwrap();
        let g = schutzenberger(&s, 1);
        assert_eq!(g.h_class, vec![1]);
        assert_eq!(g.stabilizer, Vec::<usize>::new());
        assert_eq!(g.maps, vec![vec![0]]);
    }

    #[test]
    fn stability_on_named_families() {
        for spec in ["chain:2", "rightzero:3", "cyclic:4", "leftzero:3", "null:3"] {
            assert!(miller_clifford_holds(&named(spec).unwrap()), "{spec}");
        }
    }

    #[test]
    fn ideal_is_two_sided() {
        for spec in ["chain:3", "null:3", "cyclic:2"] {
            let s = named(spec).unwrap();
            let g = green(&s);
            for &x in g.ideal() {
                for y in s.elements() {
                    assert!(g.ideal().contains(&s.product(x, y)));
                    assert!(g.ideal().contains(&s.product(y, x)));
                }
            }
        }
    }
}
