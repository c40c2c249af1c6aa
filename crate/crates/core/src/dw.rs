//! The Dijkgraaf–Witten basis of the torus space.
//!
//! Basis elements are pairs `(c, ρ)` of a conjugacy class `c` of Γ and an
//! irreducible character `ρ` of the centralizer of the class representative.
//! The function `χ_(c,ρ)` on commuting pairs is `ρ` transported along the
//! conjugator of `x`, and zero off the class.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::Zero;

use crate::character::{character_table_with, CharacterTable, DixonConfig};
use crate::cyclo::{rational, rational_int, Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::group::{centralizer, conjugacy_classes, ClassData, Elem, EmbeddedGroup, FiniteGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisIndex {
    pub class: usize,
    pub char_row: usize,
}

/// Per-class data: representative, centralizer and its character table.
#[derive(Clone, Debug)]
pub struct ClassSector {
    pub representative: Elem,
    pub centralizer: EmbeddedGroup,
    pub table: CharacterTable,
    /// `values[row][local class]`, lifted to the conductor of Γ.
    values: Vec<Vec<Cyclotomic>>,
}

#[derive(Clone, Debug)]
pub struct LambdaBasis {
    group: Arc<FiniteGroup>,
    classes: Arc<ClassData>,
    sectors: Vec<ClassSector>,
    indices: Vec<BasisIndex>,
    conductor: u32,
}

pub fn build_lambda(group: &Arc<FiniteGroup>, seed: u64) -> Result<LambdaBasis> {
    LambdaBasis::build(group, seed, &DixonConfig::default())
}

impl LambdaBasis {
    pub fn build(group: &Arc<FiniteGroup>, seed: u64, config: &DixonConfig) -> Result<Self> {
        let classes = Arc::new(conjugacy_classes(group));
        let conductor = group.exponent() as u32;
        let mut sectors = Vec::with_capacity(classes.len());
        let mut indices = Vec::new();
        for c in 0..classes.len() {
            let rep = classes.representative(c);
            let cent = centralizer(group, rep);
            let local = Arc::clone(cent.local());
            let local_classes = Arc::new(conjugacy_classes(&local));
            let table = character_table_with(&local, local_classes, seed, config)?;
            let values = table
                .rows()
                .iter()
                .map(|row| row.iter().map(|v| v.lift(conductor)).collect())
                .collect();
            indices.extend((0..table.len()).map(|char_row| BasisIndex { class: c, char_row }));
            sectors.push(ClassSector {
                representative: rep,
                centralizer: cent,
                table,
                values,
            });
        }
        Ok(LambdaBasis {
            group: Arc::clone(group),
            classes,
            sectors,
            indices,
            conductor,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn class_data(&self) -> &Arc<ClassData> {
        &self.classes
    }

    pub fn sectors(&self) -> &[ClassSector] {
        &self.sectors
    }

    pub fn sector(&self, class: usize) -> &ClassSector {
        &self.sectors[class]
    }

    /// `#Λ`
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[BasisIndex] {
        &self.indices
    }

    pub fn index(&self, i: usize) -> BasisIndex {
        self.indices[i]
    }

    pub fn position(&self, idx: BasisIndex) -> Option<usize> {
        self.indices.binary_search(&idx).ok()
    }

    /// Position of (identity class, trivial character).
    pub fn zero_index(&self) -> usize {
        0
    }

    /// Conductor shared by every value the basis produces (the exponent of Γ).
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn group_order(&self) -> usize {
        self.group.order()
    }

    /// `χ_i(x, h)` as a borrowed value, `None` where it vanishes.
    pub fn chi_ref(&self, i: usize, x: Elem, h: Elem) -> Option<&Cyclotomic> {
        let BasisIndex { class, char_row } = self.indices[i];
        if self.classes.class_of(x) != class || !self.group.commute(x, h) {
            return None;
        }
        let u = self.classes.conjugator(x);
        // u·rep·u⁻¹ = x, so u⁻¹·h·u centralizes rep
        let moved = self.group.mul(self.group.mul(self.group.inv(u), h), u);
        let sector = &self.sectors[class];
        let local = sector
            .centralizer
            .local_index(moved)
            .expect("transported element centralizes the representative");
        let local_class = sector.table.class_data().class_of(local);
        Some(&sector.values[char_row][local_class])
    }

    pub fn chi_eval(&self, i: usize, x: Elem, h: Elem) -> Cyclotomic {
        self.chi_ref(i, x, h)
            .cloned()
            .unwrap_or_else(|| Cyclotomic::zero(self.conductor))
    }

    /// `#c · ρ(e)`
    pub fn dim_chi(&self, i: usize) -> u64 {
        let BasisIndex { class, char_row } = self.indices[i];
        self.classes.size(class) as u64 * self.sectors[class].table.degree(char_row)
    }

    /// `s₀ⁱ = dim χᵢ / #Γ`
    pub fn s_zero(&self, i: usize) -> Rational {
        rational(self.dim_chi(i) as i64, self.group.order() as i64)
    }

    /// `ρ(rep) / ρ(e)`, the T-eigenvalue.
    pub fn kappa(&self, i: usize) -> Cyclotomic {
        self.kappa_at(i, self.sectors[self.indices[i].class].representative)
    }

    /// `χᵢ(x, x) / χᵢ(x, e)` evaluated at an arbitrary `x` in the support.
    pub fn kappa_at(&self, i: usize, x: Elem) -> Cyclotomic {
        let BasisIndex { class, char_row } = self.indices[i];
        let deg = self.sectors[class].table.degree(char_row) as i64;
        self.chi_eval(i, x, x).scale(&rational(1, deg))
    }

    /// `ηᵢ(a, b) = Σ_z χᵢ(z^a, z^(-b))`, evaluated through the reduction
    /// `Σ_y χᵢ(y^d, y^(-bc))` with `d = gcd(a, #Γ)` and `c` a unit mod `#Γ`
    /// satisfying `a·c ≡ d`.
    pub fn eta(&self, i: usize, a: i64, b: i64) -> Result<Cyclotomic> {
        check_pair(a, b)?;
        let n = self.group.order() as i64;
        let (d, c) = eta_reduction(a, n);
        let exp = ((-(b as i128).rem_euclid(n as i128)) * c as i128).rem_euclid(n as i128) as i64;
        Ok(self.sum_over_group(i, |y| (self.group.power(y, d), self.group.power(y, exp))))
    }

    /// `ηᵢ(a, b)` by the direct sum over `z ∈ Γ`.
    pub fn eta_direct(&self, i: usize, a: i64, b: i64) -> Result<Cyclotomic> {
        check_pair(a, b)?;
        let n = self.group.order() as i64;
        let neg_b = (-(b as i128)).rem_euclid(n as i128) as i64;
        Ok(self.sum_over_group(i, |z| (self.group.power(z, a), self.group.power(z, neg_b))))
    }

    fn sum_over_group(&self, i: usize, pair: impl Fn(Elem) -> (Elem, Elem)) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(self.conductor);
        for y in self.group.elements() {
            let (x, h) = pair(y);
            if let Some(v) = self.chi_ref(i, x, h) {
                acc += v;
            }
        }
        acc
    }

    /// Modified Frobenius–Schur indicator: zero unless `rep² = e`, otherwise
    /// `(1/#C(rep)) Σ_{h ∈ C(rep)} χᵢ(rep, h²)`.
    pub fn c_tilde(&self, i: usize) -> Cyclotomic {
        let class = self.indices[i].class;
        let sector = &self.sectors[class];
        let rep = sector.representative;
        if self.group.mul(rep, rep) != self.group.identity() {
            return Cyclotomic::zero(self.conductor);
        }
        let mut acc = Cyclotomic::zero(self.conductor);
        for &h in sector.centralizer.members() {
            if let Some(v) = self.chi_ref(i, rep, self.group.mul(h, h)) {
                acc += v;
            }
        }
        acc.scale(&rational(1, sector.centralizer.order() as i64))
    }

    /// `c̃ᵢ` as a rational number.
    pub fn c_tilde_rational(&self, i: usize) -> Result<Rational> {
        self.c_tilde(i)
            .to_rational()
            .ok_or_else(|| Error::Internal("c̃ is not rational".into()))
    }

    /// `sᵢʲ = (S χᵢ, χⱼ)`, summed over the centralizer of the class
    /// representative of `j` only (the summand is conjugation invariant).
    pub fn s_entry(&self, i: usize, j: usize) -> Cyclotomic {
        let sector = &self.sectors[self.indices[j].class];
        let x = sector.representative;
        let mut acc = Cyclotomic::zero(self.conductor);
        for &h in sector.centralizer.members() {
            let Some(left) = self.chi_ref(i, self.group.inv(h), x) else {
                continue;
            };
            let right = self
                .chi_ref(j, x, h)
                .expect("h centralizes the representative");
            acc += &(left * &right.conj());
        }
        acc.scale(&rational(1, sector.centralizer.order() as i64))
    }

    /// `sᵢʲ = (1/#Γ) Σ_{xh=hx} χᵢ(h⁻¹, x)·conj(χⱼ(x, h))` over all commuting pairs.
    pub fn s_entry_direct(&self, i: usize, j: usize) -> Cyclotomic {
        let g = &self.group;
        let mut acc = Cyclotomic::zero(self.conductor);
        for x in g.elements() {
            for h in g.elements() {
                if !g.commute(x, h) {
                    continue;
                }
                if let (Some(l), Some(r)) = (self.chi_ref(i, g.inv(h), x), self.chi_ref(j, x, h)) {
                    acc += &(l * &r.conj());
                }
            }
        }
        acc.scale(&rational(1, g.order() as i64))
    }

    /// Sum of `(dim χᵢ)²`, which equals `(#Γ)²`.
    pub fn dim_square_sum(&self) -> Rational {
        (0..self.len())
            .map(|i| rational_int(self.dim_chi(i) as i64).pow(2))
            .fold(Rational::zero(), |a, b| a + b)
    }
}

pub(crate) fn check_pair(a: i64, b: i64) -> Result<()> {
    if a < 1 {
        return Err(Error::InvalidArgument(format!(
            "pair ({a},{b}) needs a >= 1"
        )));
    }
    if a.gcd(&b) != 1 {
        return Err(Error::InvalidArgument(format!(
            "pair ({a},{b}) is not coprime"
        )));
    }
    Ok(())
}

/// `(d, c)` with `d = gcd(a, n)`, `a·c ≡ d (mod n)` and `gcd(c, n) = 1`.
///
/// Extended Euclid gives `c ≡ (a/d)⁻¹ mod n/d`; stepping by `n/d` reaches a
/// representative that is also a unit mod `n`, which makes `y ↦ y^c` a
/// bijection of Γ.
pub fn eta_reduction(a: i64, n: i64) -> (i64, i64) {
    let d = a.gcd(&n);
    let (a1, n1) = (a / d, n / d);
    let inv = if n1 == 1 {
        0
    } else {
        a1.rem_euclid(n1).extended_gcd(&n1).x.rem_euclid(n1)
    };
    let mut c = inv;
    while c.gcd(&n) != 1 {
        c += n1;
    }
    (d, c)
}
