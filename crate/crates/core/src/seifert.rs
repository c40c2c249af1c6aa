//! Seifert manifold descriptors and the closed-form covering counts.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::cyclo::{rational_int, rational_pow, Cyclotomic, Rational};
use crate::dw::{BasisIndex, LambdaBasis};
use crate::error::{Error, Result};

/// `M_O(g; (a₁,b₁), …)` when `orientable_base`, otherwise `M_N(g; …)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertData {
    pub orientable_base: bool,
    pub genus: u32,
    pub pairs: Vec<(i64, i64)>,
}

impl SeifertData {
    pub fn new(orientable_base: bool, genus: u32, pairs: Vec<(i64, i64)>) -> Result<Self> {
        if !orientable_base && genus == 0 {
            return Err(Error::InvalidSeifert(
                "a non-orientable base needs genus >= 1".into(),
            ));
        }
        for &(a, b) in &pairs {
            if a < 1 {
                return Err(Error::InvalidSeifert(format!(
                    "pair ({a},{b}) needs a >= 1"
                )));
            }
            if a.gcd(&b) != 1 {
                return Err(Error::InvalidSeifert(format!(
                    "gcd({a},{b}) = {} is not 1",
                    a.gcd(&b)
                )));
            }
        }
        Ok(SeifertData {
            orientable_base,
            genus,
            pairs,
        })
    }

    pub fn orientable(genus: u32, pairs: &[(i64, i64)]) -> Result<Self> {
        Self::new(true, genus, pairs.to_vec())
    }

    pub fn nonorientable(genus: u32, pairs: &[(i64, i64)]) -> Result<Self> {
        Self::new(false, genus, pairs.to_vec())
    }

    /// Number of exceptional-fiber pairs `n`.
    pub fn n(&self) -> usize {
        self.pairs.len()
    }
}

impl fmt::Display for SeifertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{};g={};",
            if self.orientable_base { 'O' } else { 'N' },
            self.genus
        )?;
        for (a, b) in &self.pairs {
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}

impl FromStr for SeifertData {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_seifert(s)
    }
}

/// Parses `("O"|"N") ";" "g=" INT ";" ("(" INT "," INT ")")*`, whitespace allowed between tokens.
pub fn parse_seifert(text: &str) -> Result<SeifertData> {
    let mut p = Cursor {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let orientable = match p.peek_non_ws() {
        Some(b'O') => true,
        Some(b'N') => false,
        _ => return Err(p.error("expected 'O' or 'N'")),
    };
    p.pos += 1;
    p.expect(b';')?;
    p.expect(b'g')?;
    p.expect(b'=')?;
    let genus_pos = p.pos;
    let genus = p.int()?;
    let genus = u32::try_from(genus).map_err(|_| Error::Parse {
        pos: genus_pos,
        msg: "genus must be a nonnegative integer".into(),
    })?;
    p.expect(b';')?;
    let mut pairs = Vec::new();
    loop {
        match p.peek_non_ws() {
            None => break,
            Some(b'(') => {
                p.next_non_ws();
                let a = p.int()?;
                p.expect(b',')?;
                let b = p.int()?;
                p.expect(b')')?;
                pairs.push((a, b));
            }
            Some(_) => return Err(p.error("expected '(' or end of input")),
        }
    }
    SeifertData::new(orientable, genus, pairs)
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek_non_ws(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn next_non_ws(&mut self) -> Option<u8> {
        let c = self.peek_non_ws()?;
        self.pos += 1;
        Some(c)
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek_non_ws() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error(&format!("expected '{}'", c as char))),
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.bytes.get(self.pos), Some(b'-' | b'+')) {
            self.pos += 1;
        }
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or(Error::Parse {
                pos: start,
                msg: "expected an integer".into(),
            })
    }
}

/// One summand of the closed-form count.
#[derive(Clone, Debug)]
pub struct CountTerm {
    pub index: BasisIndex,
    pub dim: u64,
    pub eta_product: Cyclotomic,
    /// The full summand, including the `#Γ` and `dim χᵢ` powers.
    pub contribution: Cyclotomic,
}

#[derive(Clone, Debug)]
pub struct CountResult {
    /// `#hom(π₁(M), Γ)`
    pub count: BigInt,
    /// `Z(M) = count / #Γ`
    pub z: Rational,
    pub terms: Vec<CountTerm>,
}

/// Dispatches on the base orientability.
pub fn count(basis: &LambdaBasis, data: &SeifertData) -> Result<CountResult> {
    if data.orientable_base {
        count_orientable(basis, data)
    } else {
        count_nonorientable(basis, data)
    }
}

/// `Σᵢ (#Γ)^(2g-1) · (dim χᵢ)^(-(n+2g-2)) · Πⱼ ηᵢ(aⱼ, bⱼ)`
pub fn count_orientable(basis: &LambdaBasis, data: &SeifertData) -> Result<CountResult> {
    if !data.orientable_base {
        return Err(Error::InvalidArgument(
            "count_orientable needs an orientable base".into(),
        ));
    }
    let order = rational_int(basis.group_order() as i64);
    let g = data.genus as i64;
    let n = data.n() as i64;
    let group_factor = rational_pow(&order, 2 * g - 1);
    evaluate(basis, data, |i| {
        let dim = rational_int(basis.dim_chi(i) as i64);
        Ok(&group_factor * rational_pow(&dim, -(n + 2 * g - 2)))
    })
}

/// `Σᵢ (#Γ)^(g-1) · c̃ᵢ^g · (dim χᵢ)^(-(n+g-2)) · Πⱼ ηᵢ(aⱼ, bⱼ)`
pub fn count_nonorientable(basis: &LambdaBasis, data: &SeifertData) -> Result<CountResult> {
    if data.orientable_base || data.genus == 0 {
        return Err(Error::InvalidArgument(
            "count_nonorientable needs a non-orientable base of genus >= 1".into(),
        ));
    }
    let order = rational_int(basis.group_order() as i64);
    let g = data.genus as i64;
    let n = data.n() as i64;
    let group_factor = rational_pow(&order, g - 1);
    evaluate(basis, data, |i| {
        let c = basis.c_tilde_rational(i)?;
        let dim = rational_int(basis.dim_chi(i) as i64);
        Ok(&group_factor * rational_pow(&c, g) * rational_pow(&dim, -(n + g - 2)))
    })
}

fn evaluate(
    basis: &LambdaBasis,
    data: &SeifertData,
    coefficient: impl Fn(usize) -> Result<Rational> + Sync,
) -> Result<CountResult> {
    let terms = (0..basis.len())
        .into_par_iter()
        .map(|i| {
            let coeff = coefficient(i)?;
            let mut eta_product = Cyclotomic::one();
            if !coeff.is_zero() {
                for &(a, b) in &data.pairs {
                    eta_product = &eta_product * &basis.eta(i, a, b)?;
                    if eta_product.is_zero() {
                        break;
                    }
                }
            }
            let contribution = eta_product.scale(&coeff);
            Ok(CountTerm {
                index: basis.index(i),
                dim: basis.dim_chi(i),
                eta_product,
                contribution,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut total = Cyclotomic::zero(basis.conductor());
    for t in &terms {
        total += &t.contribution;
    }
    let count = integral_count(&total)?;
    let z = Rational::new(count.clone(), BigInt::from(basis.group_order()));
    Ok(CountResult { count, z, terms })
}

/// The total must be a positive integer: the trivial homomorphism always exists.
pub(crate) fn integral_count(total: &Cyclotomic) -> Result<BigInt> {
    let q = total
        .to_rational()
        .ok_or_else(|| Error::Internal(format!("count {total} is not rational")))?;
    if !q.denom().is_one() {
        return Err(Error::Internal(format!("count {q} is not an integer")));
    }
    if !q.numer().is_positive() {
        return Err(Error::Internal(format!("count {q} is not positive")));
    }
    Ok(q.numer().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_descriptors() {
        let d = parse_seifert("O;g=2;(3,1)(5,2)").unwrap();
        assert_eq!(
            d,
            SeifertData {
                orientable_base: true,
                genus: 2,
                pairs: vec![(3, 1), (5, 2)]
            }
        );
        let d = parse_seifert("O;g=0;").unwrap();
        assert!(d.orientable_base && d.genus == 0 && d.pairs.is_empty());
        let d = parse_seifert("  N ; g = 1 ; ( 3 , -2 )( 1,0 ) ").unwrap();
        assert_eq!(d.pairs, vec![(3, -2), (1, 0)]);
        assert!(!d.orientable_base);
        assert_eq!(d.to_string(), "N;g=1;(3,-2)(1,0)");
    }

    #[test]
    fn rejects_bad_descriptors() {
        assert!(
            matches!(parse_seifert("O;g=0;(2,4)"), Err(Error::InvalidSeifert(m)) if m.contains("gcd"))
        );
        assert!(matches!(
            parse_seifert("O;g=0;(0,1)"),
            Err(Error::InvalidSeifert(_))
        ));
        assert!(matches!(
            parse_seifert("O;g=0;(-1,1)"),
            Err(Error::InvalidSeifert(_))
        ));
        assert!(matches!(
            parse_seifert("N;g=0;"),
            Err(Error::InvalidSeifert(_))
        ));
        assert!(matches!(
            parse_seifert("X;g=0;"),
            Err(Error::Parse { pos: 0, .. })
        ));
        assert!(matches!(parse_seifert("O;g=-1;"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_seifert("O;g=1;(2,1"),
            Err(Error::Parse { pos: 10, .. })
        ));
        assert!(matches!(
            parse_seifert("O;g=1;(2,1)x"),
            Err(Error::Parse { pos: 11, .. })
        ));
        assert!(matches!(parse_seifert("O;g=1"), Err(Error::Parse { .. })));
    }
}
