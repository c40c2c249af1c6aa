//! Exact character tables by the Dixon–Schneider method.
//!
//! Class-multiplication coefficients are reduced modulo a prime `p ≡ 1 (mod e)`
//! where `e` is the group exponent. Common eigenvectors of the class matrices
//! give the central characters mod `p`; eigenvalue multiplicities of each
//! class representative are then recovered mod `p` and lifted to exact sums of
//! roots of unity.

use std::cmp::Ordering;
use std::sync::Arc;

use num_integer::Roots;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclo::{rational, Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::group::{conjugacy_classes, ClassData, Elem, FiniteGroup};

/// Tuning knobs for [`character_table_with`].
#[derive(Clone, Debug)]
pub struct DixonConfig {
    /// Largest prime tried when searching for `p ≡ 1 (mod e)`.
    pub prime_bound: u64,
    /// Rounds of random splitting without progress before giving up.
    pub max_split_attempts: usize,
}

impl Default for DixonConfig {
    fn default() -> Self {
        DixonConfig {
            prime_bound: 10_000_000,
            max_split_attempts: 64,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    classes: Arc<ClassData>,
    /// `table[row][class]`, all values at conductor `exponent(G)`.
    table: Vec<Vec<Cyclotomic>>,
    degrees: Vec<u64>,
    prime: u64,
}

pub fn character_table(group: &Arc<FiniteGroup>, seed: u64) -> Result<CharacterTable> {
    character_table_with(
        group,
        Arc::new(conjugacy_classes(group)),
        seed,
        &DixonConfig::default(),
    )
}

pub fn character_table_with(
    group: &Arc<FiniteGroup>,
    classes: Arc<ClassData>,
    seed: u64,
    config: &DixonConfig,
) -> Result<CharacterTable> {
    let n = group.order() as u64;
    let r = classes.len();
    let exponent = group.exponent();
    let p = dixon_prime(exponent, n, config.prime_bound)?;
    let fp = Fp::new(p);

    let sizes: Vec<u64> = (0..r).map(|c| classes.size(c) as u64).collect();
    let inverse_class: Vec<usize> = (0..r)
        .map(|c| classes.class_of(group.inv(classes.representative(c))))
        .collect();

    // coeff[i][j][k] = #{u in c_i : u⁻¹ w in c_j}, w the representative of c_k
    let mut coeff = vec![vec![vec![0u64; r]; r]; r];
    for (k, slot) in (0..r).map(|k| (k, classes.representative(k))) {
        for u in group.elements() {
            let v = group.mul(group.inv(u), slot);
            coeff[classes.class_of(u)][classes.class_of(v)][k] += 1;
        }
    }
    let class_matrices: Vec<Vec<Vec<u64>>> = coeff
        .iter()
        .map(|m| {
            m.iter()
                .map(|row| row.iter().map(|&a| a % p).collect())
                .collect()
        })
        .collect();

    let central = common_eigenvectors(&fp, &class_matrices, seed, config.max_split_attempts)?;
    if central.len() != r {
        return Err(Error::Internal(format!(
            "found {} central characters for {r} classes",
            central.len()
        )));
    }

    let zeta = fp.pow(fp.primitive_root(), (p - 1) / exponent);
    let max_degree = n.sqrt();
    let mut rows = Vec::with_capacity(r);
    for omega in &central {
        // χ(1)² = |G| / Σ_k ω_k ω_{k*} / |c_k|
        let norm = (0..r).fold(0, |acc, k| {
            fp.add(
                acc,
                fp.mul(
                    fp.mul(omega[k], omega[inverse_class[k]]),
                    fp.inv(sizes[k] % p),
                ),
            )
        });
        if norm == 0 {
            return Err(Error::Internal("degenerate central character".into()));
        }
        let target = fp.mul(n % p, fp.inv(norm));
        let degree = (1..=max_degree)
            .find(|&d| fp.mul(d, d) == target)
            .ok_or_else(|| Error::Internal("no degree satisfies the degree equation".into()))?;
        let values_mod_p: Vec<u64> = (0..r)
            .map(|k| fp.mul(fp.mul(omega[k], degree), fp.inv(sizes[k] % p)))
            .collect();
        let exact = (0..r)
            .map(|k| {
                lift_value(
                    group,
                    &classes,
                    &fp,
                    zeta,
                    exponent,
                    &values_mod_p,
                    degree,
                    k,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push((degree, exact));
    }

    let complex: Vec<Vec<(i64, i64)>> = rows
        .iter()
        .map(|(_, vals)| {
            vals.iter()
                .map(|v| {
                    let z = v.to_complex();
                    ((z.re * 1e9).round() as i64, (z.im * 1e9).round() as i64)
                })
                .collect()
        })
        .collect();
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by(|&a, &b| canonical_row_order(rows[a].0, &complex[a], rows[b].0, &complex[b]));

    let degrees = order.iter().map(|&i| rows[i].0).collect();
    let table = order.iter().map(|&i| rows[i].1.clone()).collect();
    let t = CharacterTable {
        group: Arc::clone(group),
        classes,
        table,
        degrees,
        prime: p,
    };
    let total: u64 = t.degrees.iter().map(|d| d * d).sum();
    if total != n {
        return Err(Error::Internal(format!(
            "sum of squared degrees is {total}, expected {n}"
        )));
    }
    Ok(t)
}

/// Ascending degree, then descending real parts, then descending imaginary
/// parts, compared column by column. The trivial character comes first.
fn canonical_row_order(da: u64, a: &[(i64, i64)], db: u64, b: &[(i64, i64)]) -> Ordering {
    da.cmp(&db)
        .then_with(|| b.iter().map(|v| v.0).cmp(a.iter().map(|v| v.0)))
        .then_with(|| b.iter().map(|v| v.1).cmp(a.iter().map(|v| v.1)))
}

/// Recovers `χ(g)` exactly from the values of `χ` on the powers of `g` mod `p`.
#[allow(clippy::too_many_arguments)]
fn lift_value(
    group: &FiniteGroup,
    classes: &ClassData,
    fp: &Fp,
    zeta: u64,
    exponent: u64,
    values_mod_p: &[u64],
    degree: u64,
    class: usize,
) -> Result<Cyclotomic> {
    let g = classes.representative(class);
    let d = group.elem_order(g) as u64;
    let zd = fp.pow(zeta, exponent / d);
    let zd_inv = fp.inv(zd);
    let d_inv = fp.inv(d % fp.p);
    let powers: Vec<Elem> = (0..d as i64).map(|j| group.power(g, j)).collect();
    let mut terms = Vec::new();
    let mut total = 0;
    for t in 0..d {
        let step = fp.pow(zd_inv, t);
        let mut acc = 0;
        let mut w = 1;
        for &x in &powers {
            acc = fp.add(acc, fp.mul(values_mod_p[classes.class_of(x)], w));
            w = fp.mul(w, step);
        }
        let mult = fp.mul(acc, d_inv);
        if mult > degree {
            return Err(Error::Internal(format!(
                "eigenvalue multiplicity {mult} exceeds degree {degree} (prime {})",
                fp.p
            )));
        }
        total += mult;
        if mult > 0 {
            terms.push((t as i64, rational(mult as i64, 1)));
        }
    }
    if total != degree {
        return Err(Error::Internal(
            "eigenvalue multiplicities do not sum to the degree".into(),
        ));
    }
    Ok(Cyclotomic::from_terms(d as u32, terms).lift(exponent as u32))
}

impl CharacterTable {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn class_data(&self) -> &Arc<ClassData> {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn degree(&self, row: usize) -> u64 {
        self.degrees[row]
    }

    pub fn row(&self, row: usize) -> &[Cyclotomic] {
        &self.table[row]
    }

    pub fn rows(&self) -> &[Vec<Cyclotomic>] {
        &self.table
    }

    pub fn value(&self, row: usize, class: usize) -> &Cyclotomic {
        &self.table[row][class]
    }

    /// Character value at an element (looked up through its class).
    pub fn value_at(&self, row: usize, x: Elem) -> &Cyclotomic {
        &self.table[row][self.classes.class_of(x)]
    }

    /// The prime used for the modular computation.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Frobenius–Schur indicator `(1/|G|) Σ_y χ(y²)`.
    pub fn frobenius_schur(&self, row: usize) -> Result<Rational> {
        let g = &self.group;
        let mut acc = Cyclotomic::zero(g.exponent() as u32);
        for c in 0..self.classes.len() {
            let rep = self.classes.representative(c);
            let sq = g.mul(rep, rep);
            acc += &self
                .value_at(row, sq)
                .scale(&rational(self.classes.size(c) as i64, 1));
        }
        acc.to_rational()
            .map(|q| q / rational(g.order() as i64, 1))
            .ok_or_else(|| Error::Internal("Frobenius–Schur indicator is not rational".into()))
    }
}

pub fn frobenius_schur(table: &CharacterTable, row: usize) -> Result<Rational> {
    table.frobenius_schur(row)
}

/// Least prime `p ≡ 1 (mod exponent)` with `p > 2√order` and `p ∤ order`.
fn dixon_prime(exponent: u64, order: u64, bound: u64) -> Result<u64> {
    let mut p = 1 + exponent;
    while p * p <= 4 * order {
        p += exponent;
    }
    let lower = p;
    while p <= bound {
        if is_prime(p) && !order.is_multiple_of(p) {
            return Ok(p);
        }
        p += exponent;
    }
    Err(Error::NoPrime {
        exponent,
        lower,
        bound,
    })
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic in the prime field of order `p` (for `p < 2³²`).
struct Fp {
    p: u64,
}

impl Fp {
    fn new(p: u64) -> Self {
        debug_assert!(p < 1 << 32);
        Fp { p }
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    /// Smallest generator of the multiplicative group.
    fn primitive_root(&self) -> u64 {
        let phi = self.p - 1;
        let mut factors = Vec::new();
        let mut m = phi;
        let mut d = 2;
        while d * d <= m {
            if m.is_multiple_of(d) {
                factors.push(d);
                while m.is_multiple_of(d) {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        (1..self.p)
            .find(|&g| factors.iter().all(|&q| self.pow(g, phi / q) != 1))
            .expect("prime field has a generator")
    }

    /// Basis of the null space of a `k × k` matrix, each vector with a leading 1.
    fn null_space(&self, mut a: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
        let rows = a.len();
        let cols = if rows == 0 { 0 } else { a[0].len() };
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(pr) = (r..rows).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(r, pr);
            let s = self.inv(a[r][c]);
            for v in a[r].iter_mut() {
                *v = self.mul(*v, s);
            }
            for i in 0..rows {
                if i != r && a[i][c] != 0 {
                    let f = a[i][c];
                    for j in 0..cols {
                        let t = self.mul(f, a[r][j]);
                        a[i][j] = self.sub(a[i][j], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0; cols];
                v[f] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.sub(0, a[row][f]);
                }
                v
            })
            .collect()
    }

    /// Reduced row echelon basis and its pivot columns.
    fn echelon(&self, vectors: Vec<Vec<u64>>) -> (Vec<Vec<u64>>, Vec<usize>) {
        let mut a = vectors;
        let rows = a.len();
        let cols = if rows == 0 { 0 } else { a[0].len() };
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(pr) = (r..rows).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(r, pr);
            let s = self.inv(a[r][c]);
            for v in a[r].iter_mut() {
                *v = self.mul(*v, s);
            }
            for i in 0..rows {
                if i != r && a[i][c] != 0 {
                    let f = a[i][c];
                    for j in 0..cols {
                        let t = self.mul(f, a[r][j]);
                        a[i][j] = self.sub(a[i][j], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        (a, pivots)
    }
}

/// A subspace of column vectors invariant under every class matrix.
struct Subspace {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

/// Splits `F_p^r` into one-dimensional common eigenspaces of the class
/// matrices; returns each spanning vector normalized to 1 at the identity class.
fn common_eigenvectors(
    fp: &Fp,
    matrices: &[Vec<Vec<u64>>],
    seed: u64,
    max_attempts: usize,
) -> Result<Vec<Vec<u64>>> {
    let r = matrices.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let identity: Vec<Vec<u64>> = (0..r)
        .map(|i| (0..r).map(|j| u64::from(i == j)).collect())
        .collect();
    let (basis, pivots) = fp.echelon(identity);
    let mut pending = vec![Subspace { basis, pivots }];
    let mut done: Vec<Vec<u64>> = Vec::new();
    let mut stalled = 0;

    while let Some(space) = pending.pop() {
        if space.basis.len() == 1 {
            done.push(space.basis.into_iter().next().unwrap());
            continue;
        }
        let weights: Vec<u64> = (0..r).map(|_| rng.gen_range(0..fp.p)).collect();
        let combo = |v: &[u64]| -> Vec<u64> {
            let mut out = vec![0; r];
            for (m, &w) in matrices.iter().zip(&weights) {
                if w == 0 {
                    continue;
                }
                for (j, o) in out.iter_mut().enumerate() {
                    let dot = m[j]
                        .iter()
                        .zip(v)
                        .fold(0, |acc, (&a, &b)| fp.add(acc, fp.mul(a, b)));
                    *o = fp.add(*o, fp.mul(w, dot));
                }
            }
            out
        };
        // restricted[t'][t] = coordinate t' of M·b_t in the echelon basis
        let k = space.basis.len();
        let images: Vec<Vec<u64>> = space.basis.iter().map(|b| combo(b)).collect();
        let restricted: Vec<Vec<u64>> = (0..k)
            .map(|t2| (0..k).map(|t| images[t][space.pivots[t2]]).collect())
            .collect();

        let mut pieces = Vec::new();
        let mut found = 0;
        for lambda in 0..fp.p {
            let shifted: Vec<Vec<u64>> = restricted
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(j, &v)| if i == j { fp.sub(v, lambda) } else { v })
                        .collect()
                })
                .collect();
            let kernel = fp.null_space(shifted);
            if kernel.is_empty() {
                continue;
            }
            found += kernel.len();
            let vectors: Vec<Vec<u64>> = kernel
                .iter()
                .map(|y| {
                    let mut v = vec![0; r];
                    for (t, &c) in y.iter().enumerate() {
                        if c != 0 {
                            for (vi, &bi) in v.iter_mut().zip(&space.basis[t]) {
                                *vi = fp.add(*vi, fp.mul(c, bi));
                            }
                        }
                    }
                    v
                })
                .collect();
            pieces.push(vectors);
            if found == k {
                break;
            }
        }
        if found != k {
            return Err(Error::Internal(
                "class matrix combination is not diagonalizable".into(),
            ));
        }
        if pieces.len() == 1 {
            stalled += 1;
            if stalled > max_attempts {
                return Err(Error::SplitFailed {
                    seed,
                    attempts: max_attempts,
                });
            }
            pending.push(space);
            continue;
        }
        stalled = 0;
        for vectors in pieces {
            let (basis, pivots) = fp.echelon(vectors);
            pending.push(Subspace { basis, pivots });
        }
    }

    done.into_iter()
        .map(|v| {
            if v[0] == 0 {
                return Err(Error::Internal(
                    "central character vanishes at the identity class".into(),
                ));
            }
            let s = fp.inv(v[0]);
            Ok(v.into_iter().map(|x| fp.mul(x, s)).collect())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rational_int;

    fn cyclic(n: usize) -> Arc<FiniteGroup> {
        let t: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Arc::new(FiniteGroup::from_cayley_table(&t).unwrap())
    }

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(
            FiniteGroup::from_permutation_generators(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap(),
        )
    }

    #[test]
    fn dixon_prime_selection() {
        // A5: exponent 30, |G| = 60, need p > 2√60
        assert_eq!(dixon_prime(30, 60, 1000).unwrap(), 31);
        assert_eq!(dixon_prime(2, 2, 1000).unwrap(), 3);
        // S4: exponent 12, 2√24 ≈ 9.8, so 13
        assert_eq!(dixon_prime(12, 24, 1000).unwrap(), 13);
        // C4: exponent 4, need p > 4 and p ≡ 1 mod 4
        assert_eq!(dixon_prime(4, 4, 1000).unwrap(), 5);
        assert!(matches!(
            dixon_prime(30, 3600, 50),
            Err(Error::NoPrime { .. })
        ));
    }

    #[test]
    fn c2_table() {
        let t = character_table(&cyclic(2), 0).unwrap();
        let expect = [[1, 1], [1, -1]];
        for (row, exp) in expect.iter().enumerate() {
            for (c, &v) in exp.iter().enumerate() {
                assert_eq!(t.value(row, c), &Cyclotomic::from_int(v));
            }
        }
    }

    #[test]
    fn s3_table() {
        let g = s3();
        let t = character_table(&g, 7).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 2]);
        let cd = t.class_data();
        // columns: identity, transpositions, 3-cycles
        let transposition = cd.class_of(1);
        let three_cycle = cd.class_of(2);
        assert_eq!(cd.size(transposition), 3);
        assert_eq!(cd.size(three_cycle), 2);
        assert_eq!(t.value(2, 0), &Cyclotomic::from_int(2));
        assert_eq!(t.value(2, transposition), &Cyclotomic::from_int(0));
        assert_eq!(t.value(2, three_cycle), &Cyclotomic::from_int(-1));
        assert_eq!(t.value(1, transposition), &Cyclotomic::from_int(-1));
    }

    #[test]
    fn frobenius_schur_indicators() {
        let t = character_table(&s3(), 0).unwrap();
        assert_eq!(t.frobenius_schur(0).unwrap(), rational_int(1));
        assert_eq!(t.frobenius_schur(1).unwrap(), rational_int(1));
        assert_eq!(t.frobenius_schur(2).unwrap(), rational_int(1));
        let c3 = character_table(&cyclic(3), 0).unwrap();
        assert_eq!(c3.frobenius_schur(0).unwrap(), rational_int(1));
        assert_eq!(c3.frobenius_schur(1).unwrap(), rational_int(0));
        assert_eq!(c3.frobenius_schur(2).unwrap(), rational_int(0));
    }

    #[test]
    fn seeds_agree_after_canonical_sort() {
        let g = Arc::new(
            FiniteGroup::from_permutation_generators(4, &[vec![1, 2, 3, 0], vec![1, 0, 2, 3]])
                .unwrap(),
        );
        let a = character_table(&g, 0).unwrap();
        for seed in [1, 2, 99] {
            assert_eq!(character_table(&g, seed).unwrap().rows(), a.rows());
        }
    }

    #[test]
    fn split_failure_reports_seed() {
        let err = character_table_with(
            &cyclic(5),
            Arc::new(conjugacy_classes(&cyclic(5))),
            3,
            &DixonConfig {
                max_split_attempts: 0,
                ..Default::default()
            },
        );
        // zero attempts can still succeed if the first combination splits fully
        if let Err(e) = err {
            assert!(matches!(e, Error::SplitFailed { seed: 3, .. }));
        }
    }

    #[test]
    fn no_prime_is_a_configuration_error() {
        let err = character_table_with(
            &cyclic(7),
            Arc::new(conjugacy_classes(&cyclic(7))),
            0,
            &DixonConfig {
                prime_bound: 20,
                ..Default::default()
            },
        )
        .unwrap_err();
        assert_eq!(err.kind(), crate::ErrorKind::Configuration);
    }
}
