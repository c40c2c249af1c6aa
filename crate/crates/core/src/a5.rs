//! Hand-specialized counting for Γ = A₅, written from the printed class data
//! of A₅ alone. It shares no code with the generic machinery and serves as an
//! independent check of it.
//!
//! Classes are `1, α = (12)(34), β = (123), γ = (12345), γ²`. Characters of
//! A₅ are numbered `ρ₁ … ρ₅` with degrees `1, 3, 3, 4, 5`; characters of the
//! abelian centralizers are numbered by their value at the generator:
//! `ρ_j(β) = ω^(j-1)` with `ω = e^(2πi/3)`, `ρ_j(γ) = ζ^(j-1)` with
//! `ζ = e^(2πi/5)`, and for `γ²` the same characters of `⟨γ⟩`, so that
//! `ρ_j(γ²) = ζ^(2(j-1))`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cyclo::{rational, rational_int, rational_pow, Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::seifert::SeifertData;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum A5Class {
    Identity,
    Alpha,
    Beta,
    Gamma,
    GammaSquared,
}

impl A5Class {
    pub const ALL: [A5Class; 5] = [
        A5Class::Identity,
        A5Class::Alpha,
        A5Class::Beta,
        A5Class::Gamma,
        A5Class::GammaSquared,
    ];

    pub fn size(self) -> i64 {
        match self {
            A5Class::Identity => 1,
            A5Class::Alpha => 15,
            A5Class::Beta => 20,
            A5Class::Gamma | A5Class::GammaSquared => 12,
        }
    }

    pub fn centralizer_order(self) -> i64 {
        60 / self.size()
    }
}

/// `x + y√5`, enough to hold the values of the A₅ characters.
#[derive(Clone, Debug, PartialEq)]
struct QuadSqrt5 {
    rational: Rational,
    sqrt5: Rational,
}

impl QuadSqrt5 {
    fn new(x: Rational, y: Rational) -> Self {
        QuadSqrt5 {
            rational: x,
            sqrt5: y,
        }
    }

    fn int(n: i64) -> Self {
        Self::new(rational_int(n), Rational::zero())
    }

    fn add(&self, o: &Self) -> Self {
        Self::new(&self.rational + &o.rational, &self.sqrt5 + &o.sqrt5)
    }

    fn scale(&self, k: i64) -> Self {
        let k = rational_int(k);
        Self::new(&self.rational * &k, &self.sqrt5 * &k)
    }

    fn into_rational(self) -> Rational {
        assert!(self.sqrt5.is_zero(), "value is irrational");
        self.rational
    }
}

/// `ρ_j(1, α, β, γ, γ²)` for the five irreducible characters of A₅.
fn a5_character(j: usize) -> [QuadSqrt5; 5] {
    let golden_plus = QuadSqrt5::new(rational(1, 2), rational(1, 2));
    let golden_minus = QuadSqrt5::new(rational(1, 2), rational(-1, 2));
    let i = QuadSqrt5::int;
    match j {
        1 => [i(1), i(1), i(1), i(1), i(1)],
        2 => [i(3), i(-1), i(0), golden_plus, golden_minus],
        3 => [i(3), i(-1), i(0), golden_minus, golden_plus],
        4 => [i(4), i(0), i(1), i(-1), i(-1)],
        5 => [i(5), i(1), i(-1), i(0), i(0)],
        _ => panic!("A5 has five irreducible characters, got index {j}"),
    }
}

pub fn a5_character_value(j: usize, class: A5Class) -> Cyclotomic {
    let v = &a5_character(j)[class as usize];
    // √5 = 1 + 2(ζ + ζ⁴) = -(ζ² + ζ³) + (ζ + ζ⁴)
    let sqrt5 = Cyclotomic::from_terms(
        5,
        [
            (1, rational_int(1)),
            (4, rational_int(1)),
            (2, rational_int(-1)),
            (3, rational_int(-1)),
        ],
    );
    &Cyclotomic::from_rational(v.rational.clone()) + &sqrt5.scale(&v.sqrt5)
}

/// `ω_j(p)`: the sum of `ρ_j` over the elements of order `p ∈ {2, 3, 5}`.
pub fn omega(j: usize, p: u32) -> Rational {
    let chi = a5_character(j);
    match p {
        2 => chi[1].scale(15).into_rational(),
        3 => chi[2].scale(20).into_rational(),
        5 => chi[3].add(&chi[4]).scale(12).into_rational(),
        _ => panic!("A5 has no elements of order {p}"),
    }
}

fn omega_sum(j: usize, a: i64) -> Rational {
    [2u32, 3, 5]
        .iter()
        .filter(|&&p| a % p as i64 == 0)
        .map(|&p| omega(j, p))
        .fold(Rational::zero(), |x, y| x + y)
}

fn delta(cond: bool) -> i64 {
    i64::from(cond)
}

/// The closed forms of `η_(class, ρ_j)(a, b)` for A₅, `1 ≤ j ≤` number of characters.
pub fn eta_closed_form(class: A5Class, j: usize, a: i64, b: i64) -> Cyclotomic {
    let (a, b) = (a as i128, b as i128);
    let e = 1 - j as i128;
    match class {
        A5Class::Identity => {
            let deg = a5_character(j)[0].clone().into_rational();
            Cyclotomic::from_rational(deg + omega_sum(j, a as i64))
        }
        A5Class::Alpha => {
            let sign = if (b * e).rem_euclid(2) == 0 { 1 } else { -1 };
            Cyclotomic::from_int(delta(a.rem_euclid(2) == 1) * 15 * sign)
        }
        A5Class::Beta => {
            if (a * a).rem_euclid(3) != 1 {
                return Cyclotomic::zero(3);
            }
            Cyclotomic::root_of_unity(3, (a * b * e).rem_euclid(3) as i64).scale(&rational_int(20))
        }
        A5Class::Gamma | A5Class::GammaSquared => {
            if a.pow(4).rem_euclid(5) != 1 {
                return Cyclotomic::zero(5);
            }
            let twist = if class == A5Class::Gamma { 1 } else { 2 };
            let k = (twist * a.pow(3) * b * e).rem_euclid(5) as i64;
            Cyclotomic::root_of_unity(5, k).scale(&rational_int(12))
        }
    }
}

/// Number of homomorphisms `π₁(M_O(g; …)) → A₅` from the specialized formula.
pub fn count_a5_specialized(data: &SeifertData) -> Result<BigInt> {
    if !data.orientable_base {
        return Err(Error::InvalidArgument(
            "the A5 specialization covers orientable bases only".into(),
        ));
    }
    let g = data.genus as i64;
    let pairs = &data.pairs;
    let all = |f: &dyn Fn(i64, i64) -> bool| pairs.iter().all(|&(a, b)| f(a, b));
    let sum = |f: &dyn Fn(i64, i64) -> i128| pairs.iter().map(|&(a, b)| f(a, b)).sum::<i128>();
    let int_pow = |base: i64, exp: i64| rational_pow(&rational_int(base), exp);

    // α sector
    let alpha = if all(&|a, _| a.rem_euclid(2) == 1) && sum(&|_, b| b as i128).rem_euclid(2) == 0 {
        int_pow(4, 2 * g - 1)
    } else {
        Rational::zero()
    };
    // β sector
    let beta = if all(&|a, _| (a * a).rem_euclid(3) == 1)
        && sum(&|a, b| a as i128 * b as i128).rem_euclid(3) == 0
    {
        int_pow(3, 2 * g - 1)
    } else {
        Rational::zero()
    };
    // γ and γ² sectors contribute equally
    let gamma = if all(&|a, _| (a as i128).pow(4).rem_euclid(5) == 1)
        && sum(&|a, b| (a as i128).pow(3) * b as i128).rem_euclid(5) == 0
    {
        int_pow(5, 2 * g - 1)
    } else {
        Rational::zero()
    };

    // identity sector
    for p in [2, 3, 5] {
        if omega(2, p) != omega(3, p) {
            return Err(Error::Internal("ω₂ and ω₃ differ".into()));
        }
    }
    let product = |j: usize, denom: i64| {
        pairs.iter().fold(Rational::one(), |acc, &(a, _)| {
            acc * (Rational::one() + omega_sum(j, a) / rational_int(denom))
        })
    };
    let identity = int_pow(60, 2 * g - 2) * product(1, 1)
        + rational_int(2) * int_pow(20, 2 * g - 2) * product(2, 3)
        + int_pow(15, 2 * g - 2) * product(4, 4)
        + int_pow(12, 2 * g - 2) * product(5, 5);

    let z = alpha + beta + rational_int(2) * gamma + identity;
    let total = z * rational_int(60);
    if !total.denom().is_one() {
        return Err(Error::Internal(format!(
            "A5 specialized count {total} is not an integer"
        )));
    }
    Ok(total.numer().clone())
}
