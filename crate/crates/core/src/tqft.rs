//! The torus space `E` and the cut-and-glue computation of `Z(M)`.
//!
//! Vectors of `E` are conjugation-invariant functions on commuting pairs
//! `(x, h)`, with inner product `(θ, φ) = (1/#Γ) Σ θ(x,h)·conj φ(x,h)`. The
//! `χ` basis is orthonormal; the `τ` basis is `τᵢ = S⁻¹χᵢ` and diagonalizes
//! the fusion product. The `τ`-coordinates of `v` are the `χ`-coordinates of
//! `S v`.
//!
//! `SL(2,ℤ)` acts by `(a b; c d)·θ (x, h) = θ(x^a h^b, x^c h^d)`, with
//! `S = (0 -1; 1 0)` and `T = (1 0; 1 1)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cyclo::{rational, rational_int, rational_pow, Cyclotomic, Rational};
use crate::dw::{check_pair, LambdaBasis};
use crate::error::{Error, Result};
use crate::group::Elem;
use crate::seifert::{integral_count, SeifertData};

/// Work bound for the direct evaluation of the non-orientable piece.
pub const DIRECT_PIECE_LIMIT: u128 = 10_000_000;

pub const S_MATRIX: [[i64; 2]; 2] = [[0, -1], [1, 0]];
pub const T_MATRIX: [[i64; 2]; 2] = [[1, 0], [1, 1]];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisTag {
    Chi,
    Tau,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EVector {
    pub tag: BasisTag,
    pub coords: Vec<Cyclotomic>,
}

/// A matrix acting on column vectors: `matrix[row][col]`.
#[derive(Clone, Debug, PartialEq)]
pub struct EOperator {
    pub domain: BasisTag,
    pub codomain: BasisTag,
    pub matrix: Vec<Vec<Cyclotomic>>,
}

impl EOperator {
    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply(&self, v: &EVector) -> Result<EVector> {
        if v.tag != self.domain || v.coords.len() != self.dim() {
            return Err(Error::InvalidArgument(
                "operator and vector do not match".into(),
            ));
        }
        let coords = self.matrix.iter().map(|row| dot(row, &v.coords)).collect();
        Ok(EVector {
            tag: self.codomain,
            coords,
        })
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &EOperator) -> Result<EOperator> {
        if other.codomain != self.domain || other.dim() != self.dim() {
            return Err(Error::InvalidArgument("operators do not compose".into()));
        }
        Ok(EOperator {
            domain: other.domain,
            codomain: self.codomain,
            matrix: mat_mul(&self.matrix, &other.matrix),
        })
    }

    pub fn conjugate_transpose(&self) -> EOperator {
        let n = self.dim();
        let matrix = (0..n)
            .map(|r| (0..n).map(|c| self.matrix[c][r].conj()).collect())
            .collect();
        EOperator {
            domain: self.codomain,
            codomain: self.domain,
            matrix,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.iter().enumerate().all(|(r, row)| {
            row.iter().enumerate().all(|(c, v)| {
                if r == c {
                    *v == Cyclotomic::one()
                } else {
                    v.is_zero()
                }
            })
        })
    }
}

fn dot(a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
    let mut acc = Cyclotomic::zero(1);
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

pub(crate) fn mat_mul(a: &[Vec<Cyclotomic>], b: &[Vec<Cyclotomic>]) -> Vec<Vec<Cyclotomic>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|c| {
                    let col: Vec<Cyclotomic> = b.iter().map(|r| r[c].clone()).collect();
                    dot(row, &col)
                })
                .collect()
        })
        .collect()
}

/// The diagonal `τ`-basis form of `Z(Σ_{g; p, q} × S¹)`: `τᵢ^{⊗p} ↦ entries[i]·τᵢ^{⊗q}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalOperator {
    pub genus: u32,
    pub inputs: u32,
    pub outputs: u32,
    pub entries: Vec<Rational>,
}

/// `(s₀ⁱ)^{-(p+q+2g-2)}` per basis index.
pub fn surface_operator(
    basis: &LambdaBasis,
    genus: u32,
    p: u32,
    q: u32,
) -> Result<DiagonalOperator> {
    if p < 1 || q < 1 {
        return Err(Error::InvalidArgument(
            "surface operator needs p >= 1 and q >= 1".into(),
        ));
    }
    let exp = -(p as i64 + q as i64 + 2 * genus as i64 - 2);
    let entries = (0..basis.len())
        .map(|i| rational_pow(&basis.s_zero(i), exp))
        .collect();
    Ok(DiagonalOperator {
        genus,
        inputs: p,
        outputs: q,
        entries,
    })
}

/// Commuting pairs `(x, h)`, grouped by `x` with `h` ascending.
#[derive(Clone, Debug)]
pub struct PairSpace {
    offsets: Vec<usize>,
    partners: Vec<Vec<Elem>>,
}

impl PairSpace {
    pub fn new(basis: &LambdaBasis) -> Self {
        let g = basis.group();
        let partners: Vec<Vec<Elem>> = g.elements().map(|x| g.centralizer_members(x)).collect();
        let mut offsets = Vec::with_capacity(partners.len() + 1);
        let mut total = 0;
        for p in &partners {
            offsets.push(total);
            total += p.len();
        }
        offsets.push(total);
        PairSpace { offsets, partners }
    }

    pub fn len(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, x: Elem, h: Elem) -> Option<usize> {
        let pos = self.partners[x as usize].binary_search(&h).ok()?;
        Some(self.offsets[x as usize] + pos)
    }

    /// `C(x)`, sorted.
    pub fn centralizer(&self, x: Elem) -> &[Elem] {
        &self.partners[x as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        self.partners
            .iter()
            .enumerate()
            .flat_map(|(x, hs)| hs.iter().map(move |&h| (x as Elem, h)))
    }
}

/// Values on the pair space, in pair-space order.
#[derive(Clone, Debug, PartialEq)]
pub struct PairFunction {
    pub values: Vec<Cyclotomic>,
}

/// `E` together with the exact S-matrix.
#[derive(Clone, Debug)]
pub struct Tqft<'a> {
    basis: &'a LambdaBasis,
    pairs: PairSpace,
    class_members: Vec<Vec<usize>>,
    s: EOperator,
    s_inv: EOperator,
}

/// Outcome of the structural computation.
#[derive(Clone, Debug)]
pub struct StructuralResult {
    pub z: Rational,
    pub count: BigInt,
    /// `τ`-coordinates of the fused solid-torus state.
    pub boundary_state: Vec<Cyclotomic>,
    /// Whether the non-orientable piece was also evaluated directly; `None` for orientable bases.
    pub piece_cross_checked: Option<bool>,
}

impl<'a> Tqft<'a> {
    pub fn new(basis: &'a LambdaBasis) -> Self {
        let n = basis.len();
        let mut class_members = vec![Vec::new(); basis.class_data().len()];
        for i in 0..n {
            class_members[basis.index(i).class].push(i);
        }
        // column i holds the χ-coordinates of S χᵢ
        let mut matrix = vec![vec![Cyclotomic::zero(1); n]; n];
        for (i, row) in (0..n).map(|i| (i, (0..n).map(|j| basis.s_entry(i, j)).collect::<Vec<_>>()))
        {
            for (j, v) in row.into_iter().enumerate() {
                matrix[j][i] = v;
            }
        }
        let s = EOperator {
            domain: BasisTag::Chi,
            codomain: BasisTag::Chi,
            matrix,
        };
        let s_inv = s.conjugate_transpose();
        Tqft {
            basis,
            pairs: PairSpace::new(basis),
            class_members,
            s,
            s_inv,
        }
    }

    pub fn basis(&self) -> &LambdaBasis {
        self.basis
    }

    pub fn pairs(&self) -> &PairSpace {
        &self.pairs
    }

    /// `S` in the `χ` basis: entry `[j][i] = sᵢʲ`.
    pub fn s_matrix(&self) -> &EOperator {
        &self.s
    }

    pub fn s_inverse(&self) -> &EOperator {
        &self.s_inv
    }

    /// Diagonal with entries `κᵢ`.
    pub fn t_matrix(&self) -> EOperator {
        let n = self.basis.len();
        let matrix = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        if r == c {
                            self.basis.kappa(r)
                        } else {
                            Cyclotomic::zero(1)
                        }
                    })
                    .collect()
            })
            .collect();
        EOperator {
            domain: BasisTag::Chi,
            codomain: BasisTag::Chi,
            matrix,
        }
    }

    fn zero_function(&self) -> PairFunction {
        PairFunction {
            values: vec![Cyclotomic::zero(self.basis.conductor()); self.pairs.len()],
        }
    }

    pub fn indicator(&self, pred: impl Fn(Elem, Elem) -> bool) -> PairFunction {
        let one = Cyclotomic::one().lift(self.basis.conductor());
        let zero = Cyclotomic::zero(self.basis.conductor());
        let values = self
            .pairs
            .iter()
            .map(|(x, h)| {
                if pred(x, h) {
                    one.clone()
                } else {
                    zero.clone()
                }
            })
            .collect();
        PairFunction { values }
    }

    pub fn chi_function(&self, i: usize) -> PairFunction {
        let values = self
            .pairs
            .iter()
            .map(|(x, h)| self.basis.chi_eval(i, x, h))
            .collect();
        PairFunction { values }
    }

    /// `θ ↦ θ(x^a h^b, x^c h^d)` for an integer matrix of determinant ±1.
    pub fn sl2_action(&self, theta: &PairFunction, m: [[i64; 2]; 2]) -> Result<PairFunction> {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if det.abs() != 1 {
            return Err(Error::InvalidArgument(format!(
                "matrix {m:?} is not invertible over the integers"
            )));
        }
        let g = self.basis.group();
        let values = self
            .pairs
            .iter()
            .map(|(x, h)| {
                let nx = g.mul(g.power(x, m[0][0]), g.power(h, m[0][1]));
                let nh = g.mul(g.power(x, m[1][0]), g.power(h, m[1][1]));
                let k = self
                    .pairs
                    .index(nx, nh)
                    .expect("images of a commuting pair commute");
                theta.values[k].clone()
            })
            .collect();
        Ok(PairFunction { values })
    }

    pub fn inner_product(&self, a: &PairFunction, b: &PairFunction) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(self.basis.conductor());
        for (x, y) in a.values.iter().zip(&b.values) {
            if !x.is_zero() && !y.is_zero() {
                acc += &(x * &y.conj());
            }
        }
        acc.scale(&rational(1, self.basis.group_order() as i64))
    }

    /// `χ`-coordinates `(θ, χᵢ)`, summing each over the support of `χᵢ` only.
    pub fn expand(&self, theta: &PairFunction) -> EVector {
        let basis = self.basis;
        let classes = basis.class_data();
        let mut coords = vec![Cyclotomic::zero(basis.conductor()); basis.len()];
        for (c, members) in self.class_members.iter().enumerate() {
            for &x in &classes.classes[c].members {
                for &h in self.pairs.centralizer(x) {
                    let v = &theta.values[self.pairs.index(x, h).expect("pair")];
                    if v.is_zero() {
                        continue;
                    }
                    for &i in members {
                        if let Some(chi) = basis.chi_ref(i, x, h) {
                            coords[i] += &(v * &chi.conj());
                        }
                    }
                }
            }
        }
        let scale = rational(1, basis.group_order() as i64);
        EVector {
            tag: BasisTag::Chi,
            coords: coords.iter().map(|c| c.scale(&scale)).collect(),
        }
    }

    /// Function values of a vector given in either basis.
    pub fn evaluate(&self, v: &EVector) -> Result<PairFunction> {
        let chi = self.to_chi(v)?;
        let basis = self.basis;
        let classes = basis.class_data();
        let mut out = self.zero_function();
        for (k, (x, h)) in self.pairs.iter().enumerate() {
            for &i in &self.class_members[classes.class_of(x)] {
                if chi.coords[i].is_zero() {
                    continue;
                }
                if let Some(val) = basis.chi_ref(i, x, h) {
                    out.values[k] += &(&chi.coords[i] * val);
                }
            }
        }
        Ok(out)
    }

    pub fn to_tau(&self, v: &EVector) -> Result<EVector> {
        self.check_len(v)?;
        match v.tag {
            BasisTag::Tau => Ok(v.clone()),
            BasisTag::Chi => {
                let mut t = self.s.apply(v)?;
                t.tag = BasisTag::Tau;
                Ok(t)
            }
        }
    }

    pub fn to_chi(&self, v: &EVector) -> Result<EVector> {
        self.check_len(v)?;
        match v.tag {
            BasisTag::Chi => Ok(v.clone()),
            BasisTag::Tau => {
                let as_chi = EVector {
                    tag: BasisTag::Chi,
                    coords: v.coords.clone(),
                };
                self.s_inv.apply(&as_chi)
            }
        }
    }

    fn check_len(&self, v: &EVector) -> Result<()> {
        if v.coords.len() != self.basis.len() {
            return Err(Error::InvalidArgument(format!(
                "vector has {} coordinates, expected {}",
                v.coords.len(),
                self.basis.len()
            )));
        }
        Ok(())
    }

    pub fn basis_vector(&self, i: usize, tag: BasisTag) -> EVector {
        let coords = (0..self.basis.len())
            .map(|k| {
                if k == i {
                    Cyclotomic::one()
                } else {
                    Cyclotomic::zero(1)
                }
            })
            .collect();
        EVector { tag, coords }
    }

    /// `m(θ ⊗ φ)(x, h) = Σ_{x₁x₂ = x} θ(x₁, h)·φ(x₂, h)` with `x₁, x₂ ∈ C(h)`.
    pub fn convolve(&self, a: &PairFunction, b: &PairFunction) -> PairFunction {
        let g = self.basis.group();
        let mut out = self.zero_function();
        for h in g.elements() {
            let cent = self.pairs.centralizer(h);
            for &x1 in cent {
                let va = &a.values[self.pairs.index(x1, h).expect("pair")];
                if va.is_zero() {
                    continue;
                }
                for &x2 in cent {
                    let vb = &b.values[self.pairs.index(x2, h).expect("pair")];
                    if vb.is_zero() {
                        continue;
                    }
                    let k = self.pairs.index(g.mul(x1, x2), h).expect("C(h) is closed");
                    out.values[k] += &(va * vb);
                }
            }
        }
        out
    }

    /// The fusion product, returned in the basis of `a`.
    pub fn fusion_product(&self, a: &EVector, b: &EVector) -> Result<EVector> {
        let f = self.convolve(&self.evaluate(a)?, &self.evaluate(b)?);
        let chi = self.expand(&f);
        match a.tag {
            BasisTag::Chi => Ok(chi),
            BasisTag::Tau => self.to_tau(&chi),
        }
    }

    /// `n[i][j][k] = (m(χᵢ ⊗ χⱼ), χₖ)`
    pub fn fusion_coefficients(&self) -> Vec<Vec<Vec<Cyclotomic>>> {
        let n = self.basis.len();
        let funcs: Vec<PairFunction> = (0..n).map(|i| self.chi_function(i)).collect();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.expand(&self.convolve(&funcs[i], &funcs[j])).coords)
                    .collect()
            })
            .collect()
    }

    /// The state `δ_{e, x^a h^b}` in the `τ` basis. Its coordinates are
    /// computed from the S-transformed function and from `ηᵢ(a, b)/#Γ`, and
    /// the two must agree.
    pub fn z_solid_torus(&self, a: i64, b: i64) -> Result<EVector> {
        check_pair(a, b)?;
        let g = self.basis.group();
        let theta = self.indicator(|x, h| g.mul(g.power(x, a), g.power(h, b)) == g.identity());
        let via_s = self.expand(&self.sl2_action(&theta, S_MATRIX)?).coords;
        let order = rational(1, self.basis.group_order() as i64);
        for (i, t) in via_s.iter().enumerate() {
            let from_eta = self.basis.eta(i, a, b)?.scale(&order);
            if *t != from_eta {
                return Err(Error::Internal(format!(
                    "solid torus ({a},{b}): τ-coordinate {i} is {t} but η/#Γ gives {from_eta}"
                )));
            }
        }
        Ok(EVector {
            tag: BasisTag::Tau,
            coords: via_s,
        })
    }

    /// `τ`-coefficients `(#Γ/dim χᵢ)^{g-1}·c̃ᵢ^g` of the circle bundle over a
    /// punctured non-orientable surface of genus `g`.
    pub fn nonorientable_piece(&self, genus: u32) -> Result<Vec<Rational>> {
        let order = rational_int(self.basis.group_order() as i64);
        let g = genus as i64;
        (0..self.basis.len())
            .map(|i| {
                let dim = rational_int(self.basis.dim_chi(i) as i64);
                Ok(rational_pow(&(&order / &dim), g - 1)
                    * rational_pow(&self.basis.c_tilde_rational(i)?, g))
            })
            .collect()
    }

    /// The same coefficients from the direct count of `(y₁…y_g) ∈ C(h)^g`
    /// with `Π yⱼ² = x`, zero unless `h² = e`. `None` above the work bound.
    pub fn nonorientable_piece_direct(&self, genus: u32) -> Result<Option<Vec<Cyclotomic>>> {
        let g = self.basis.group();
        let involutive: Vec<Elem> = g
            .elements()
            .filter(|&h| g.mul(h, h) == g.identity())
            .collect();
        let work: u128 = involutive
            .iter()
            .map(|&h| (self.pairs.centralizer(h).len() as u128).pow(2))
            .sum::<u128>()
            .saturating_mul(genus as u128);
        if work > DIRECT_PIECE_LIMIT {
            return Ok(None);
        }
        // F'(x, h) = F(x⁻¹, h), so that Z(M) = (w, F')
        let mut reversed = self.zero_function();
        let n = g.order();
        for &h in &involutive {
            let cent = self.pairs.centralizer(h);
            let mut dist = vec![BigInt::zero(); n];
            dist[g.identity() as usize] = BigInt::one();
            for _ in 0..genus {
                let mut next = vec![BigInt::zero(); n];
                for &z in cent {
                    if dist[z as usize].is_zero() {
                        continue;
                    }
                    for &y in cent {
                        next[g.mul(z, g.mul(y, y)) as usize] += &dist[z as usize];
                    }
                }
                dist = next;
            }
            for &x in cent {
                let count = &dist[g.inv(x) as usize];
                if !count.is_zero() {
                    let k = self.pairs.index(x, h).expect("pair");
                    reversed.values[k] =
                        Cyclotomic::from_rational(Rational::from_integer(count.clone()))
                            .lift(self.basis.conductor());
                }
            }
        }
        let tau = self.expand(&self.sl2_action(&reversed, S_MATRIX)?);
        Ok(Some(tau.coords.iter().map(Cyclotomic::conj).collect()))
    }

    /// `Z(M)` by gluing solid-torus states through fusion, then closing with
    /// the surface operator and cap (orientable base) or pairing with the
    /// non-orientable piece.
    pub fn z_seifert_structural(&self, data: &SeifertData) -> Result<StructuralResult> {
        let basis = self.basis;
        let tori = if data.pairs.is_empty() {
            vec![self.z_solid_torus(1, 0)?]
        } else {
            data.pairs
                .iter()
                .map(|&(a, b)| self.z_solid_torus(a, b))
                .collect::<Result<Vec<_>>>()?
        };
        let mut fused = self.to_chi(&tori[0])?;
        for t in &tori[1..] {
            fused = self.fusion_product(&fused, &self.to_chi(t)?)?;
        }
        let state = self.to_tau(&fused)?;

        // fusion is diagonal in τ with eigenvalue 1/s₀ⁱ
        for i in 0..basis.len() {
            let mut expected = Cyclotomic::one();
            for t in &tori {
                expected = &expected * &t.coords[i];
            }
            let expected = expected.scale(&rational_pow(&basis.s_zero(i), 1 - tori.len() as i64));
            if state.coords[i] != expected {
                return Err(Error::Internal(format!(
                    "fused state is not diagonal at index {i}"
                )));
            }
        }

        let (total, piece_cross_checked) = if data.orientable_base {
            let surface = surface_operator(basis, data.genus, 1, 1)?;
            let mut total = Cyclotomic::zero(basis.conductor());
            for i in 0..basis.len() {
                // closing cap: Z(-ST)(τᵢ) = s₀ⁱ
                let weight = &surface.entries[i] * basis.s_zero(i);
                total += &state.coords[i].scale(&weight);
            }
            (total, None)
        } else {
            let piece = self.nonorientable_piece(data.genus)?;
            let direct = self.nonorientable_piece_direct(data.genus)?;
            if let Some(direct) = &direct {
                for (i, (p, d)) in piece.iter().zip(direct).enumerate() {
                    if Cyclotomic::from_rational(p.clone()) != *d {
                        return Err(Error::Internal(format!(
                            "non-orientable piece at index {i}: closed form {p}, direct count {d}"
                        )));
                    }
                }
            }
            let mut total = Cyclotomic::zero(basis.conductor());
            for (i, p) in piece.iter().enumerate() {
                total += &state.coords[i].scale(p);
            }
            (total, Some(direct.is_some()))
        };

        let z = total
            .to_rational()
            .ok_or_else(|| Error::Internal(format!("Z(M) = {total} is not rational")))?;
        let count_value = Cyclotomic::from_rational(&z * rational_int(basis.group_order() as i64));
        let count = integral_count(&count_value)?;
        Ok(StructuralResult {
            z,
            count,
            boundary_state: state.coords,
            piece_cross_checked,
        })
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::builtin::builtin;
    use crate::dw::build_lambda;

    fn basis(name: &str) -> LambdaBasis {
        build_lambda(&Arc::new(builtin(name).unwrap()), 0).unwrap()
    }

    #[test]
    fn s_is_unitary_and_squares_to_inversion() {
        for name in ["C2", "C3", "S3", "Q8"] {
            let l = basis(name);
            let tq = Tqft::new(&l);
            let s = tq.s_matrix();
            assert!(
                s.compose(&s.conjugate_transpose()).unwrap().is_identity(),
                "{name}"
            );
            let s2 = s.compose(s).unwrap();
            let g = l.group();
            for i in 0..l.len() {
                let inverted = tq
                    .sl2_action(&tq.chi_function(i), [[-1, 0], [0, -1]])
                    .unwrap();
                let col: Vec<Cyclotomic> = s2.matrix.iter().map(|r| r[i].clone()).collect();
                assert_eq!(tq.expand(&inverted).coords, col, "{name}");
                // and directly on values
                for (k, (x, h)) in tq.pairs().iter().enumerate() {
                    assert_eq!(inverted.values[k], l.chi_eval(i, g.inv(x), g.inv(h)));
                }
            }
        }
    }

    #[test]
    fn s_matrix_matches_function_action() {
        let l = basis("S3");
        let tq = Tqft::new(&l);
        for i in 0..l.len() {
            let moved = tq.expand(&tq.sl2_action(&tq.chi_function(i), S_MATRIX).unwrap());
            let col: Vec<Cyclotomic> = tq.s_matrix().matrix.iter().map(|r| r[i].clone()).collect();
            assert_eq!(moved.coords, col);
            let twisted = tq.expand(&tq.sl2_action(&tq.chi_function(i), T_MATRIX).unwrap());
            let t = tq.t_matrix();
            let col: Vec<Cyclotomic> = t.matrix.iter().map(|r| r[i].clone()).collect();
            assert_eq!(twisted.coords, col);
        }
    }

    #[test]
    fn chi_is_orthonormal_and_tau_round_trips() {
        let l = basis("S3");
        let tq = Tqft::new(&l);
        for i in 0..l.len() {
            for j in 0..l.len() {
                let ip = tq.inner_product(&tq.chi_function(i), &tq.chi_function(j));
                assert_eq!(ip, Cyclotomic::from_int(i64::from(i == j)));
            }
            let v = tq.basis_vector(i, BasisTag::Tau);
            assert_eq!(tq.to_tau(&tq.to_chi(&v).unwrap()).unwrap(), v);
        }
    }

    #[test]
    fn fusion_unit_and_tau_diagonal() {
        let l = basis("S3");
        let tq = Tqft::new(&l);
        let unit = tq.basis_vector(l.zero_index(), BasisTag::Chi);
        for i in 0..l.len() {
            let v = tq.basis_vector(i, BasisTag::Chi);
            assert_eq!(tq.fusion_product(&unit, &v).unwrap(), v);
            let ti = tq.basis_vector(i, BasisTag::Tau);
            for j in 0..l.len() {
                let tj = tq.basis_vector(j, BasisTag::Tau);
                let prod = tq.fusion_product(&ti, &tj).unwrap();
                let scale = if i == j {
                    Rational::one() / l.s_zero(i)
                } else {
                    Rational::zero()
                };
                let expected: Vec<Cyclotomic> = ti.coords.iter().map(|c| c.scale(&scale)).collect();
                assert_eq!(prod.coords, expected);
            }
        }
    }

    #[test]
    fn solid_torus_states() {
        let l = basis("C2");
        let tq = Tqft::new(&l);
        let st = tq.z_solid_torus(1, 0).unwrap();
        let s0: Vec<Cyclotomic> = (0..l.len())
            .map(|i| Cyclotomic::from_rational(l.s_zero(i)))
            .collect();
        assert_eq!(st.coords, s0);
        assert!(tq.z_solid_torus(0, 1).is_err());
        // δ_{h,e} is S applied to the (1,0) state
        let moved = tq.sl2_action(&tq.evaluate(&st).unwrap(), S_MATRIX).unwrap();
        let g = l.group();
        assert_eq!(moved, tq.indicator(|_, h| h == g.identity()));
        // x²h = e on C₂ holds exactly for h = e
        let f = tq.evaluate(&tq.z_solid_torus(2, 1).unwrap()).unwrap();
        assert_eq!(f, tq.indicator(|_, h| h == g.identity()));
    }

    #[test]
    fn surface_operators() {
        let l = basis("S3");
        let cyl = surface_operator(&l, 0, 1, 1).unwrap();
        assert!(cyl.entries.iter().all(|e| e.is_one()));
        let handle = surface_operator(&l, 1, 1, 1).unwrap();
        for i in 0..l.len() {
            assert_eq!(handle.entries[i], rational_pow(&l.s_zero(i), -2));
        }
        let pants = surface_operator(&l, 0, 2, 1).unwrap();
        assert_eq!(pants.entries[3], Rational::one() / l.s_zero(3));
        assert!(surface_operator(&l, 0, 0, 1).is_err());
    }

    #[test]
    fn structural_examples() {
        let l = basis("C2");
        let tq = Tqft::new(&l);
        let z = |s: &str| tq.z_seifert_structural(&s.parse().unwrap()).unwrap();
        assert_eq!(z("O;g=1;").z, rational_int(4));
        assert_eq!(z("O;g=0;(1,0)").z, rational_int(1));
        let r = z("N;g=1;");
        assert_eq!(r.z, rational_int(2));
        assert_eq!(r.piece_cross_checked, Some(true));
        let l = basis("A4");
        let tq = Tqft::new(&l);
        assert_eq!(
            tq.z_seifert_structural(&"O;g=0;(1,0)".parse().unwrap())
                .unwrap()
                .count,
            BigInt::from(12)
        );
    }
}
