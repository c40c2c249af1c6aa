//! Brute-force homomorphism counting from finite presentations.

use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::seifert::SeifertData;

pub const DEFAULT_MAX_SPACE: u128 = 1_000_000_000;

/// Generators are numbered from 1; a letter `+k` is generator `k`, `-k` its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub num_generators: usize,
    pub relators: Vec<Vec<i32>>,
}

impl Presentation {
    pub fn new(num_generators: usize, relators: Vec<Vec<i32>>) -> Result<Self> {
        let p = Presentation {
            num_generators,
            relators,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for word in &self.relators {
            for &l in word {
                if l == 0 || l.unsigned_abs() as usize > self.num_generators {
                    return Err(Error::InvalidArgument(format!(
                        "letter {l} out of range for {} generators",
                        self.num_generators
                    )));
                }
            }
        }
        Ok(())
    }
}

fn commutator(a: i32, b: i32) -> Vec<i32> {
    vec![a, b, -a, -b]
}

fn power_word(x: i32, a: i64, h: i32, b: i64) -> Vec<i32> {
    let mut w = vec![x; a as usize];
    w.extend(std::iter::repeat_n(
        if b >= 0 { h } else { -h },
        b.unsigned_abs() as usize,
    ));
    w
}

/// Generators `x₁…x_n, u₁, v₁, …, u_g, v_g, h`. Relators: every generator
/// commutes with `h`, `xⱼ^aⱼ h^bⱼ`, and `x₁⋯x_n [u₁,v₁]⋯[u_g,v_g]`.
pub fn presentation_orientable(genus: u32, pairs: &[(i64, i64)]) -> Result<Presentation> {
    let data = SeifertData::orientable(genus, pairs)?;
    let n = data.n();
    let g = genus as usize;
    let x = |j: usize| (j + 1) as i32;
    let u = |k: usize| (n + 2 * k + 1) as i32;
    let v = |k: usize| (n + 2 * k + 2) as i32;
    let h = (n + 2 * g + 1) as i32;

    let mut relators = Vec::new();
    for j in 0..n {
        relators.push(commutator(x(j), h));
    }
    for k in 0..g {
        relators.push(commutator(u(k), h));
        relators.push(commutator(v(k), h));
    }
    for (j, &(a, b)) in data.pairs.iter().enumerate() {
        relators.push(power_word(x(j), a, h, b));
    }
    let mut surface: Vec<i32> = (0..n).map(x).collect();
    for k in 0..g {
        surface.extend(commutator(u(k), v(k)));
    }
    relators.push(surface);
    Presentation::new(h as usize, relators)
}

fn nonorientable(genus: u32, pairs: &[(i64, i64)], split: bool) -> Result<Presentation> {
    let data = SeifertData::nonorientable(genus, pairs)?;
    let n = data.n();
    let g = genus as usize;
    let x = |j: usize| (j + 1) as i32;
    let y = |k: usize| (n + k + 1) as i32;
    let h = (n + g + 1) as i32;

    let mut relators = Vec::new();
    for j in 0..n {
        relators.push(commutator(x(j), h));
    }
    for k in 0..g {
        if split {
            relators.push(commutator(y(k), h));
        } else {
            relators.push(vec![y(k), h, -y(k), h]);
        }
    }
    if split {
        relators.push(vec![h, h]);
    }
    for (j, &(a, b)) in data.pairs.iter().enumerate() {
        relators.push(power_word(x(j), a, h, b));
    }
    let mut surface: Vec<i32> = (0..n).map(x).collect();
    for k in 0..g {
        surface.extend([y(k), y(k)]);
    }
    relators.push(surface);
    Presentation::new(h as usize, relators)
}

/// Generators `x₁…x_n, y₁…y_g, h`. Relators: `[xⱼ,h]`, `[yₖ,h]`, `h²`,
/// `xⱼ^aⱼ h^bⱼ`, and `x₁⋯x_n y₁²⋯y_g²`.
pub fn presentation_nonorientable_split(genus: u32, pairs: &[(i64, i64)]) -> Result<Presentation> {
    nonorientable(genus, pairs, true)
}

/// Same generators, with `yₖ h yₖ⁻¹ h` in place of `[yₖ,h]` and no `h²`.
pub fn presentation_nonorientable_standard(
    genus: u32,
    pairs: &[(i64, i64)],
) -> Result<Presentation> {
    nonorientable(genus, pairs, false)
}

#[derive(Clone, Debug)]
pub struct OracleConfig {
    /// Upper bound on `#G^num_generators`.
    pub max_space: u128,
    pub parallel: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_space: DEFAULT_MAX_SPACE,
            parallel: true,
        }
    }
}

pub fn search_space(group: &FiniteGroup, p: &Presentation) -> u128 {
    let mut space: u128 = 1;
    for _ in 0..p.num_generators {
        space = space.saturating_mul(group.order() as u128);
    }
    space
}

pub fn count_homs(group: &FiniteGroup, p: &Presentation) -> Result<u128> {
    count_homs_with(group, p, &OracleConfig::default())
}

pub fn count_homs_with(
    group: &FiniteGroup,
    p: &Presentation,
    config: &OracleConfig,
) -> Result<u128> {
    p.validate()?;
    let space = search_space(group, p);
    if space > config.max_space {
        return Err(Error::CostLimit {
            space,
            limit: config.max_space,
        });
    }
    let plan = Plan::new(group, p);
    if plan.order.is_empty() {
        return Ok(u128::from(plan.relators_at_start_hold()));
    }
    let mut images = vec![0 as Elem; p.num_generators];
    let first = plan.candidates(0, &images);
    let total = if config.parallel {
        first
            .par_iter()
            .map(|&c| {
                let mut images = vec![0 as Elem; p.num_generators];
                plan.branch(0, c, &mut images)
            })
            .sum()
    } else {
        first.iter().map(|&c| plan.branch(0, c, &mut images)).sum()
    };
    Ok(total)
}

struct Plan<'a> {
    group: &'a FiniteGroup,
    /// Generator (0-based) assigned at each depth.
    order: Vec<usize>,
    /// Earlier generators that the generator at each depth must commute with.
    commute_with: Vec<Vec<usize>>,
    /// Relators, as (generator, inverted) letters, grouped by the depth of their deepest generator.
    relators_at: Vec<Vec<Vec<(usize, bool)>>>,
    trivial_relators: Vec<Vec<(usize, bool)>>,
    centralizers: Vec<OnceLock<Vec<Elem>>>,
}

fn is_commutator(w: &[i32]) -> Option<(usize, usize)> {
    match *w {
        [a, b, c, d] if a > 0 && b > 0 && a != b && c == -a && d == -b => {
            Some((a as usize - 1, b as usize - 1))
        }
        _ => None,
    }
}

impl<'a> Plan<'a> {
    fn new(group: &'a FiniteGroup, p: &Presentation) -> Self {
        let k = p.num_generators;
        let commutators: Vec<(usize, usize)> =
            p.relators.iter().filter_map(|w| is_commutator(w)).collect();

        // The generator in the most commutator relators goes first, ties to the later one (h, for Seifert presentations).
        let mut hits = vec![0usize; k];
        for &(a, b) in &commutators {
            hits[a] += 1;
            hits[b] += 1;
        }
        let mut order: Vec<usize> = (0..k).collect();
        if let Some(hub) = (0..k)
            .filter(|&g| hits[g] > 0)
            .max_by_key(|&g| (hits[g], g))
        {
            order.retain(|&g| g != hub);
            order.insert(0, hub);
        }
        let mut depth_of = vec![0; k];
        for (d, &g) in order.iter().enumerate() {
            depth_of[g] = d;
        }

        let mut commute_with = vec![Vec::new(); k];
        for &(a, b) in &commutators {
            let (early, late) = if depth_of[a] < depth_of[b] {
                (a, b)
            } else {
                (b, a)
            };
            if !commute_with[depth_of[late]].contains(&early) {
                commute_with[depth_of[late]].push(early);
            }
        }

        let mut relators_at = vec![Vec::new(); k];
        let mut trivial_relators = Vec::new();
        for w in &p.relators {
            let letters: Vec<(usize, bool)> = w
                .iter()
                .map(|&l| (l.unsigned_abs() as usize - 1, l < 0))
                .collect();
            match letters.iter().map(|&(g, _)| depth_of[g]).max() {
                Some(d) => relators_at[d].push(letters),
                None => trivial_relators.push(letters),
            }
        }

        Plan {
            group,
            order,
            commute_with,
            relators_at,
            trivial_relators,
            centralizers: (0..group.order()).map(|_| OnceLock::new()).collect(),
        }
    }

    fn relators_at_start_hold(&self) -> bool {
        self.trivial_relators.iter().all(|w| w.is_empty())
    }

    fn centralizer(&self, x: Elem) -> &[Elem] {
        self.centralizers[x as usize].get_or_init(|| self.group.centralizer_members(x))
    }

    fn candidates(&self, depth: usize, images: &[Elem]) -> Vec<Elem> {
        match self.commute_with[depth].split_first() {
            None => self.group.elements().collect(),
            Some((&first, rest)) => self
                .centralizer(images[first])
                .iter()
                .copied()
                .filter(|&c| rest.iter().all(|&g| self.group.commute(c, images[g])))
                .collect(),
        }
    }

    fn holds(&self, word: &[(usize, bool)], images: &[Elem]) -> bool {
        let g = self.group;
        let mut acc = g.identity();
        for &(gen, inverted) in word {
            let x = images[gen];
            acc = g.mul(acc, if inverted { g.inv(x) } else { x });
        }
        acc == g.identity()
    }

    fn branch(&self, depth: usize, value: Elem, images: &mut [Elem]) -> u128 {
        images[self.order[depth]] = value;
        if !self.relators_at[depth]
            .iter()
            .all(|w| self.holds(w, images))
        {
            return 0;
        }
        let next = depth + 1;
        if next == self.order.len() {
            return 1;
        }
        let mut total = 0;
        for c in self.candidates(next, images) {
            total += self.branch(next, c, images);
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::from_permutation_generators(3, &[vec![1, 2, 0], vec![1, 0, 2]]).unwrap()
    }

    fn c2() -> FiniteGroup {
        FiniteGroup::from_permutation_generators(2, &[vec![1, 0]]).unwrap()
    }

    fn c3() -> FiniteGroup {
        FiniteGroup::from_permutation_generators(3, &[vec![1, 2, 0]]).unwrap()
    }

    #[test]
    fn small_presentations() {
        let g = s3();
        assert_eq!(
            count_homs(&g, &Presentation::new(1, vec![vec![1, 1]]).unwrap()).unwrap(),
            4
        );
        assert_eq!(
            count_homs(&g, &Presentation::new(2, vec![]).unwrap()).unwrap(),
            36
        );
        assert_eq!(
            count_homs(&g, &Presentation::new(2, vec![vec![1, 2, -1, -2]]).unwrap()).unwrap(),
            18
        );
        assert_eq!(
            count_homs(&g, &Presentation::new(0, vec![vec![]]).unwrap()).unwrap(),
            1
        );
    }

    #[test]
    fn rejects_bad_letters() {
        assert!(Presentation::new(1, vec![vec![2]]).is_err());
        assert!(Presentation::new(1, vec![vec![0]]).is_err());
    }

    #[test]
    fn cost_limit() {
        let p = Presentation::new(3, vec![]).unwrap();
        let cfg = OracleConfig {
            max_space: 100,
            parallel: false,
        };
        assert!(matches!(
            count_homs_with(&s3(), &p, &cfg),
            Err(Error::CostLimit {
                space: 216,
                limit: 100
            })
        ));
    }

    #[test]
    fn seifert_presentation_shapes() {
        let p = presentation_orientable(0, &[(2, 1)]).unwrap();
        assert_eq!(
            p,
            Presentation {
                num_generators: 2,
                relators: vec![vec![1, 2, -1, -2], vec![1, 1, 2], vec![1]]
            }
        );
        assert!(presentation_orientable(0, &[(2, 4)]).is_err());
        assert!(presentation_nonorientable_split(0, &[]).is_err());
        let p = presentation_nonorientable_standard(1, &[(3, -2)]).unwrap();
        assert_eq!(p.relators[2], vec![1, 1, 1, -3, -3]);
        assert_eq!(p.relators[1], vec![2, 3, -2, 3]);
    }

    #[test]
    fn seifert_oracle_examples() {
        let count = |g: &FiniteGroup, p: Presentation| count_homs(g, &p).unwrap();
        assert_eq!(
            count(&c2(), presentation_orientable(0, &[(2, 1)]).unwrap()),
            1
        );
        assert_eq!(count(&c2(), presentation_orientable(1, &[]).unwrap()), 8);
        assert_eq!(
            count(&s3(), presentation_orientable(0, &[(1, 0)]).unwrap()),
            6
        );
        assert_eq!(
            count(&c2(), presentation_nonorientable_split(1, &[]).unwrap()),
            4
        );
        assert_eq!(
            count(&c3(), presentation_nonorientable_split(1, &[]).unwrap()),
            1
        );
        assert_eq!(
            count(&c2(), presentation_nonorientable_split(2, &[]).unwrap()),
            8
        );
        assert_eq!(
            count(&c2(), presentation_nonorientable_standard(1, &[]).unwrap()),
            4
        );
        assert_eq!(
            count(&c3(), presentation_nonorientable_standard(1, &[]).unwrap()),
            1
        );
        // the two variants differ once h can be inverted by conjugation
        assert_eq!(
            count(&s3(), presentation_nonorientable_split(1, &[]).unwrap()),
            10
        );
        assert_eq!(
            count(&s3(), presentation_nonorientable_standard(1, &[]).unwrap()),
            16
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn strategy_independence(
            words in proptest::collection::vec(proptest::collection::vec(prop_oneof![1i32..=3, -3i32..=-1], 0..5), 0..4),
            flip in any::<bool>(),
        ) {
            let g = s3();
            let p = Presentation::new(3, words.clone()).unwrap();
            let serial = count_homs_with(&g, &p, &OracleConfig { max_space: DEFAULT_MAX_SPACE, parallel: false }).unwrap();
            prop_assert_eq!(serial, count_homs(&g, &p).unwrap());

            let mut reordered: Vec<Vec<i32>> = words.into_iter().rev().collect();
            if flip {
                if let Some(w) = reordered.first_mut() {
                    *w = w.iter().rev().map(|l| -l).collect();
                }
            }
            prop_assert_eq!(serial, count_homs(&g, &Presentation::new(3, reordered).unwrap()).unwrap());
        }
    }
}
