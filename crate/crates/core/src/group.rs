//! Finite groups stored as dense multiplication tables.
//!
//! Elements are indices `0..n` with the identity at `0`. Groups built from
//! permutations are indexed breadth-first from the identity, applying the
//! generators on the right in the order given, so indexing is reproducible.

use std::collections::HashMap;
use std::sync::Arc;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Default bound on group order; the multiplication table has `n²` entries.
pub const DEFAULT_MAX_ORDER: usize = 20_000;

/// Tables up to this order are checked for associativity on every triple.
const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 128;

pub type Elem = u32;

/// How associativity of the multiplication table was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssociativityCheck {
    /// Built by composing permutations or restricting a valid group.
    ByConstruction,
    Exhaustive,
    Sampled {
        triples: u64,
    },
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
    elem_order: Vec<u32>,
    exponent: u64,
    associativity: AssociativityCheck,
    permutations: Option<Vec<Vec<u32>>>,
}

impl FiniteGroup {
    /// Closure of permutation generators given as image arrays on `0..degree`.
    pub fn from_permutation_generators(degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        Self::from_permutation_generators_with_limit(degree, generators, DEFAULT_MAX_ORDER)
    }

    pub fn from_permutation_generators_with_limit(
        degree: usize,
        generators: &[Vec<usize>],
        max_order: usize,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidGroup(
                "permutation degree must be positive".into(),
            ));
        }
        let mut gens: Vec<Vec<u32>> = Vec::with_capacity(generators.len());
        for (gi, g) in generators.iter().enumerate() {
            if g.len() != degree {
                return Err(Error::InvalidGroup(format!(
                    "generator {gi} has {} images, expected {degree}",
                    g.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &img in g {
                if img >= degree || seen[img] {
                    return Err(Error::InvalidGroup(format!(
                        "generator {gi} is not a bijection of 0..{degree}"
                    )));
                }
                seen[img] = true;
            }
            gens.push(g.iter().map(|&v| v as u32).collect());
        }

        let identity: Vec<u32> = (0..degree as u32).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<u32>, Elem> = HashMap::new();
        index.insert(identity, 0);
        // parent[b] = (a, g) with b = a * gens[g]
        let mut parent: Vec<(Elem, usize)> = vec![(0, 0)];
        let mut head = 0;
        while head < elements.len() {
            for (gi, g) in gens.iter().enumerate() {
                let next = compose(&elements[head], g);
                if !index.contains_key(&next) {
                    if elements.len() >= max_order {
                        return Err(Error::SizeLimit { limit: max_order });
                    }
                    index.insert(next.clone(), elements.len() as Elem);
                    elements.push(next);
                    parent.push((head as Elem, gi));
                }
            }
            head += 1;
        }

        let n = elements.len();
        let mut right = vec![0 as Elem; n * gens.len()];
        for (x, perm) in elements.iter().enumerate() {
            for (gi, g) in gens.iter().enumerate() {
                right[x * gens.len() + gi] = index[&compose(perm, g)];
            }
        }
        let mut mul = vec![0 as Elem; n * n];
        for a in 0..n {
            mul[a * n] = a as Elem;
            for b in 1..n {
                let (p, gi) = parent[b];
                let ap = mul[a * n + p as usize] as usize;
                mul[a * n + b] = right[ap * gens.len() + gi];
            }
        }
        let mut group = Self::from_valid_table(n, mul, AssociativityCheck::ByConstruction);
        group.permutations = Some(elements);
        Ok(group)
    }

    /// Validates a Cayley table and derives inverses, element orders and exponent.
    ///
    /// If the identity is not element `0` it is swapped into position `0`.
    pub fn from_cayley_table(table: &[Vec<usize>]) -> Result<Self> {
        Self::from_cayley_table_with_limit(table, DEFAULT_MAX_ORDER)
    }

    pub fn from_cayley_table_with_limit(table: &[Vec<usize>], max_order: usize) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty Cayley table".into()));
        }
        if n > max_order {
            return Err(Error::SizeLimit { limit: max_order });
        }
        for (r, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "row {r} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidGroup(format!(
                    "entry {bad} in row {r} is out of range"
                )));
            }
        }
        for r in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for c in 0..n {
                if std::mem::replace(&mut seen_row[table[r][c]], true) {
                    return Err(Error::InvalidGroup(format!(
                        "not a Latin square: row {r} repeats {}",
                        table[r][c]
                    )));
                }
                if std::mem::replace(&mut seen_col[table[c][r]], true) {
                    return Err(Error::InvalidGroup(format!(
                        "not a Latin square: column {r} repeats {}",
                        table[c][r]
                    )));
                }
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|k| table[e][k] == k && table[k][e] == k))
            .ok_or_else(|| Error::InvalidGroup("missing identity element".into()))?;

        // relabel so the identity is element 0
        let relabel = |k: usize| {
            if k == e {
                0
            } else if k == 0 {
                e
            } else {
                k
            }
        };
        let mut mul = vec![0 as Elem; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[relabel(a) * n + relabel(b)] = relabel(table[a][b]) as Elem;
            }
        }

        let at = |a: usize, b: usize| mul[a * n + b] as usize;
        let associativity = if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = at(a, b);
                    for c in 0..n {
                        if at(ab, c) != at(a, at(b, c)) {
                            return Err(Error::NonAssociative { a, b, c });
                        }
                    }
                }
            }
            AssociativityCheck::Exhaustive
        } else {
            let triples = 10 * (n as u64) * (n as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..triples {
                let (a, b, c) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if at(at(a, b), c) != at(a, at(b, c)) {
                    return Err(Error::NonAssociative { a, b, c });
                }
            }
            AssociativityCheck::Sampled { triples }
        };
        Ok(Self::from_valid_table(n, mul, associativity))
    }

    fn from_valid_table(n: usize, mul: Vec<Elem>, associativity: AssociativityCheck) -> Self {
        let mut inv = vec![0 as Elem; n];
        for a in 0..n {
            let row = &mul[a * n..(a + 1) * n];
            inv[a] = row
                .iter()
                .position(|&v| v == 0)
                .expect("Latin row contains identity") as Elem;
        }
        let mut elem_order = vec![1u32; n];
        let mut exponent = 1u64;
        for a in 0..n {
            let mut k = 1u32;
            let mut x = a;
            while x != 0 {
                x = mul[x * n + a] as usize;
                k += 1;
            }
            elem_order[a] = k;
            exponent = exponent.lcm(&(k as u64));
        }
        FiniteGroup {
            order: n,
            mul,
            inv,
            elem_order,
            exponent,
            associativity,
            permutations: None,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        0
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    pub fn elem_order(&self, a: Elem) -> u32 {
        self.elem_order[a as usize]
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn associativity(&self) -> AssociativityCheck {
        self.associativity
    }

    /// Permutation images of each element, when the group was built from permutations.
    pub fn permutation(&self, a: Elem) -> Option<&[u32]> {
        self.permutations.as_ref().map(|p| p[a as usize].as_slice())
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order as Elem
    }

    /// `u * x * u⁻¹`
    #[inline]
    pub fn conjugate(&self, u: Elem, x: Elem) -> Elem {
        self.mul(self.mul(u, x), self.inv(u))
    }

    #[inline]
    pub fn commute(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// `x^k` for any integer `k`; `x^0` is the identity.
    pub fn power(&self, x: Elem, k: i64) -> Elem {
        let mut e = k.rem_euclid(self.elem_order(x) as i64) as u64;
        let mut base = x;
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order as Elem).all(|a| (0..a).all(|b| self.commute(a, b)))
    }

    /// Sorted list of elements commuting with `x`.
    pub fn centralizer_members(&self, x: Elem) -> Vec<Elem> {
        self.elements().filter(|&g| self.commute(g, x)).collect()
    }

    /// The full table as nested rows, suitable for [`FiniteGroup::from_cayley_table`].
    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| {
                self.mul[a * self.order..(a + 1) * self.order]
                    .iter()
                    .map(|&v| v as usize)
                    .collect()
            })
            .collect()
    }

    /// Cycle type of an element given by permutations, largest cycle first.
    pub fn cycle_type(&self, a: Elem) -> Option<Vec<usize>> {
        let perm = self.permutation(a)?;
        let mut seen = vec![false; perm.len()];
        let mut cycles = Vec::new();
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i] as usize;
                len += 1;
            }
            cycles.push(len);
        }
        cycles.sort_unstable_by(|a, b| b.cmp(a));
        Some(cycles)
    }
}

/// `(a ∘ b)(i) = a(b(i))`
fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    b.iter().map(|&i| a[i as usize]).collect()
}

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub representative: Elem,
    pub members: Vec<Elem>,
}

/// Conjugacy classes ordered by representative, which is the least member.
#[derive(Clone, Debug)]
pub struct ClassData {
    pub classes: Vec<ConjugacyClass>,
    pub class_of: Vec<u32>,
    /// `conjugator[x] = u` with `u * rep * u⁻¹ = x`.
    pub conjugator: Vec<Elem>,
}

impl ClassData {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, x: Elem) -> usize {
        self.class_of[x as usize] as usize
    }

    pub fn size(&self, class: usize) -> usize {
        self.classes[class].members.len()
    }

    pub fn representative(&self, class: usize) -> Elem {
        self.classes[class].representative
    }

    pub fn conjugator(&self, x: Elem) -> Elem {
        self.conjugator[x as usize]
    }
}

pub fn conjugacy_classes(group: &FiniteGroup) -> ClassData {
    let n = group.order();
    let unassigned = u32::MAX;
    let mut class_of = vec![unassigned; n];
    let mut conjugator = vec![0 as Elem; n];
    let mut classes = Vec::new();
    for rep in group.elements() {
        if class_of[rep as usize] != unassigned {
            continue;
        }
        let id = classes.len() as u32;
        let mut members = Vec::new();
        for u in group.elements() {
            let x = group.conjugate(u, rep);
            if class_of[x as usize] == unassigned {
                class_of[x as usize] = id;
                conjugator[x as usize] = u;
                members.push(x);
            }
        }
        members.sort_unstable();
        classes.push(ConjugacyClass {
            representative: rep,
            members,
        });
    }
    ClassData {
        classes,
        class_of,
        conjugator,
    }
}

/// A subgroup together with its own group structure on local indices `0..m`.
#[derive(Clone, Debug)]
pub struct EmbeddedGroup {
    parent: Arc<FiniteGroup>,
    members: Vec<Elem>,
    local: Arc<FiniteGroup>,
}

impl EmbeddedGroup {
    /// Builds the subgroup on `members`, which must be closed and contain the identity.
    pub fn from_members(parent: Arc<FiniteGroup>, mut members: Vec<Elem>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if members.first() != Some(&0) {
            return Err(Error::InvalidGroup(
                "subgroup must contain the identity".into(),
            ));
        }
        let m = members.len();
        let locate = |x: Elem| members.binary_search(&x).ok();
        let mut mul = vec![0 as Elem; m * m];
        for (i, &a) in members.iter().enumerate() {
            if locate(parent.inv(a)).is_none() {
                return Err(Error::InvalidGroup(
                    "subset is not closed under inverses".into(),
                ));
            }
            for (j, &b) in members.iter().enumerate() {
                let k = locate(parent.mul(a, b)).ok_or_else(|| {
                    Error::InvalidGroup("subset is not closed under multiplication".into())
                })?;
                mul[i * m + j] = k as Elem;
            }
        }
        let mut local = FiniteGroup::from_valid_table(m, mul, AssociativityCheck::ByConstruction);
        if let Some(perms) = &parent.permutations {
            local.permutations = Some(members.iter().map(|&x| perms[x as usize].clone()).collect());
        }
        Ok(EmbeddedGroup {
            parent,
            members,
            local: Arc::new(local),
        })
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn local(&self) -> &Arc<FiniteGroup> {
        &self.local
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn to_parent(&self, local: Elem) -> Elem {
        self.members[local as usize]
    }

    pub fn local_index(&self, x: Elem) -> Option<Elem> {
        self.members.binary_search(&x).ok().map(|i| i as Elem)
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.local_index(x).is_some()
    }
}

pub fn centralizer(group: &Arc<FiniteGroup>, x: Elem) -> EmbeddedGroup {
    EmbeddedGroup::from_members(Arc::clone(group), group.centralizer_members(x))
        .expect("centralizers are subgroups")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(degree: usize, points: &[usize]) -> Vec<usize> {
        let mut img: Vec<usize> = (0..degree).collect();
        for w in 0..points.len() {
            img[points[w]] = points[(w + 1) % points.len()];
        }
        img
    }

    fn a5() -> Arc<FiniteGroup> {
        Arc::new(
            FiniteGroup::from_permutation_generators(
                5,
                &[cycle(5, &[0, 1, 2, 3, 4]), cycle(5, &[0, 1, 2])],
            )
            .unwrap(),
        )
    }

    fn find_perm(g: &FiniteGroup, img: &[usize]) -> Elem {
        g.elements()
            .find(|&e| {
                g.permutation(e)
                    .unwrap()
                    .iter()
                    .map(|&v| v as usize)
                    .eq(img.iter().copied())
            })
            .unwrap()
    }

    #[test]
    fn permutation_closures() {
        assert_eq!(a5().order(), 60);
        let c2 = FiniteGroup::from_permutation_generators(2, &[vec![1, 0]]).unwrap();
        assert_eq!(c2.order(), 2);
        let s3 =
            FiniteGroup::from_permutation_generators(3, &[vec![1, 0, 2], cycle(3, &[0, 1, 2])])
                .unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.exponent(), 6);
    }

    #[test]
    fn rejects_bad_permutations_and_size() {
        assert!(matches!(
            FiniteGroup::from_permutation_generators(3, &[vec![0, 0, 1]]),
            Err(Error::InvalidGroup(_))
        ));
        assert!(matches!(
            FiniteGroup::from_permutation_generators(3, &[vec![0, 1]]),
            Err(Error::InvalidGroup(_))
        ));
        let gens = [cycle(5, &[0, 1, 2, 3, 4]), cycle(5, &[0, 1])];
        assert!(matches!(
            FiniteGroup::from_permutation_generators_with_limit(5, &gens, 100),
            Err(Error::SizeLimit { limit: 100 })
        ));
    }

    #[test]
    fn cayley_tables() {
        let trivial = FiniteGroup::from_cayley_table(&[vec![0]]).unwrap();
        assert_eq!(trivial.order(), 1);
        assert_eq!(trivial.exponent(), 1);
        let c3: Vec<Vec<usize>> = (0..3)
            .map(|a| (0..3).map(|b| (a + b) % 3).collect())
            .collect();
        let c3 = FiniteGroup::from_cayley_table(&c3).unwrap();
        assert_eq!((c3.order(), c3.exponent()), (3, 3));
        assert_eq!(c3.associativity(), AssociativityCheck::Exhaustive);
    }

    #[test]
    fn cayley_identity_relabelled() {
        // Z/3 with 0 and 1 swapped: identity is element 1
        let swap = |k: usize| [1, 0, 2][k];
        let t: Vec<Vec<usize>> = (0..3)
            .map(|a| (0..3).map(|b| swap((swap(a) + swap(b)) % 3)).collect())
            .collect();
        let g = FiniteGroup::from_cayley_table(&t).unwrap();
        assert_eq!(g.mul(0, 2), 2);
        assert_eq!(g.elem_order(0), 1);
    }

    #[test]
    fn cayley_associativity_defect_reports_witness() {
        // Latin square with identity 0 that is not associative
        let t = vec![
            vec![0, 1, 2, 3, 4, 5],
            vec![1, 2, 0, 5, 3, 4],
            vec![2, 3, 4, 0, 5, 1],
            vec![3, 0, 5, 4, 1, 2],
            vec![4, 5, 1, 2, 0, 3],
            vec![5, 4, 3, 1, 2, 0],
        ];
        match FiniteGroup::from_cayley_table(&t) {
            Err(Error::NonAssociative { a, b, c }) => {
                let m = |x: usize, y: usize| t[x][y];
                assert_ne!(m(m(a, b), c), m(a, m(b, c)));
            }
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn cayley_rejects_non_latin_and_missing_identity() {
        assert!(FiniteGroup::from_cayley_table(&[vec![0, 0], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_cayley_table(&[vec![1, 0], vec![0, 1]]).is_ok());
        assert!(
            FiniteGroup::from_cayley_table(&[vec![1, 2, 0], vec![2, 0, 1], vec![0, 2, 1]]).is_err()
        );
        let no_identity = vec![vec![1, 0, 2], vec![2, 1, 0], vec![0, 2, 1]];
        assert!(matches!(
            FiniteGroup::from_cayley_table(&no_identity),
            Err(Error::InvalidGroup(_))
        ));
    }

    #[test]
    fn a5_classes_and_centralizers() {
        let g = a5();
        let cd = conjugacy_classes(&g);
        let mut sizes: Vec<usize> = (0..cd.len()).map(|c| cd.size(c)).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 12, 12, 15, 20]);

        let alpha = find_perm(&g, &[1, 0, 3, 2, 4]);
        let c = centralizer(&g, alpha);
        let mut expected: Vec<Elem> = [
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 2, 4],
            vec![2, 3, 0, 1, 4],
            vec![3, 2, 1, 0, 4],
        ]
        .iter()
        .map(|p| find_perm(&g, p))
        .collect();
        expected.sort_unstable();
        assert_eq!(c.members(), expected.as_slice());

        let beta = find_perm(&g, &cycle(5, &[0, 1, 2]));
        let cb = centralizer(&g, beta);
        assert_eq!(cb.order(), 3);
        assert!(cb.contains(beta));
        assert_eq!(centralizer(&g, 0).order(), 60);
    }

    #[test]
    fn s3_class_sizes_in_index_order() {
        let s3 =
            FiniteGroup::from_permutation_generators(3, &[vec![1, 0, 2], cycle(3, &[0, 1, 2])])
                .unwrap();
        let cd = conjugacy_classes(&s3);
        // generator order makes element 1 a transposition and element 2 a 3-cycle
        let sizes: Vec<usize> = (0..cd.len()).map(|c| cd.size(c)).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
    }

    #[test]
    fn class_invariants_hold_exhaustively() {
        let g = a5();
        let cd = conjugacy_classes(&g);
        let mut all: Vec<Elem> = cd.classes.iter().flat_map(|c| c.members.clone()).collect();
        all.sort_unstable();
        assert_eq!(all, g.elements().collect::<Vec<_>>());
        for x in g.elements() {
            let c = cd.class_of(x);
            assert_eq!(g.conjugate(cd.conjugator(x), cd.representative(c)), x);
            assert_eq!(cd.size(c) * g.centralizer_members(x).len(), g.order());
            assert_eq!(
                cd.representative(c),
                *cd.classes[c].members.iter().min().unwrap()
            );
        }
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let c6: Vec<Vec<usize>> = (0..6)
            .map(|a| (0..6).map(|b| (a + b) % 6).collect())
            .collect();
        let g = FiniteGroup::from_cayley_table(&c6).unwrap();
        assert!(g.is_abelian());
        assert_eq!(conjugacy_classes(&g).len(), 6);
    }

    #[test]
    fn powers() {
        let c5: Vec<Vec<usize>> = (0..5)
            .map(|a| (0..5).map(|b| (a + b) % 5).collect())
            .collect();
        let g = FiniteGroup::from_cayley_table(&c5).unwrap();
        assert_eq!(g.power(1, 0), 0);
        assert_eq!(g.power(1, 5), 0);
        assert_eq!(g.power(1, -2), g.power(1, 3));
        assert_eq!(g.power(2, -2), 1);
    }

    #[test]
    fn permutation_group_round_trips_through_cayley_table() {
        let g = a5();
        let h = FiniteGroup::from_cayley_table(&g.cayley_table()).unwrap();
        assert_eq!(h.cayley_table(), g.cayley_table());
        assert_eq!(h.exponent(), 30);
    }

    #[test]
    fn embedded_group_agrees_with_parent() {
        let g = a5();
        for x in [0, 1, 2, 5] {
            let c = centralizer(&g, x);
            let local = c.local();
            for a in local.elements() {
                for b in local.elements() {
                    assert_eq!(
                        c.to_parent(local.mul(a, b)),
                        g.mul(c.to_parent(a), c.to_parent(b))
                    );
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn power_is_additive(x in 0u32..60, a in -200i64..200, b in -200i64..200) {
                let g = a5();
                prop_assert_eq!(g.power(x, a + b), g.mul(g.power(x, a), g.power(x, b)));
            }
        }
    }
}
