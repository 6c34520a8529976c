//! Ordinals below ε₀ in Cantor normal form.
//!
//! `Cnf<C>` is generic over the coefficient type; [`crate::Ordinal`] uses
//! `u64` and [`crate::BigOrdinal`] uses `BigUint`. Arithmetic on `u64`
//! coefficients panics on overflow rather than wrapping.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{CheckedAdd, One, Unsigned, Zero};

use crate::error::{Error, Result};

pub trait Coefficient:
    Clone + Ord + Hash + fmt::Debug + fmt::Display + FromStr + Zero + One + CheckedAdd + Unsigned + From<u64>
{
}

impl<T> Coefficient for T where
    T: Clone + Ord + Hash + fmt::Debug + fmt::Display + FromStr + Zero + One + CheckedAdd + Unsigned + From<u64>
{
}

/// `ω^e₁·c₁ + … + ω^eₖ·cₖ` with `e₁ > … > eₖ` and every `cᵢ ≥ 1`. The
/// empty sum is 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cnf<C> {
    terms: Vec<(Cnf<C>, C)>,
}

fn coeff_add<C: Coefficient>(a: &C, b: &C) -> C {
    a.checked_add(b).expect("ordinal coefficient overflow")
}

impl<C: Coefficient> Cnf<C> {
    pub fn zero() -> Self {
        Cnf { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::finite(C::one())
    }

    pub fn omega() -> Self {
        Self::omega_pow(Self::one())
    }

    pub fn finite(c: C) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Cnf {
                terms: vec![(Self::zero(), c)],
            }
        }
    }

    pub fn nat(n: u64) -> Self {
        Self::finite(C::from(n))
    }

    pub fn omega_pow(e: Self) -> Self {
        Cnf {
            terms: vec![(e, C::one())],
        }
    }

    /// Builds from `(exponent, coefficient)` terms, rejecting anything not
    /// already in normal form.
    pub fn from_terms(terms: Vec<(Cnf<C>, C)>) -> Result<Self> {
        if terms.iter().any(|(_, c)| c.is_zero()) {
            return Err(Error::Parse("zero coefficient".into()));
        }
        if terms.windows(2).any(|w| w[0].0 <= w[1].0) {
            return Err(Error::Parse("exponents must strictly decrease".into()));
        }
        Ok(Cnf { terms })
    }

    pub fn terms(&self) -> &[(Cnf<C>, C)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.as_finite().is_some()
    }

    /// The natural number this ordinal equals, if it is finite.
    pub fn as_finite(&self) -> Option<C> {
        match self.terms.as_slice() {
            [] => Some(C::zero()),
            [(e, c)] if e.is_zero() => Some(c.clone()),
            _ => None,
        }
    }

    /// Nonzero and not a successor.
    pub fn is_limit(&self) -> bool {
        self.terms.last().is_some_and(|(e, _)| !e.is_zero())
    }

    /// Ordinal sum `self + other`. Terms of `self` below the leading exponent
    /// of `other` are absorbed.
    pub fn add(&self, other: &Self) -> Self {
        let Some((lead, lead_c)) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(Cnf<C>, C)> = self
            .terms
            .iter()
            .take_while(|(e, _)| e >= lead)
            .cloned()
            .collect();
        match terms.last_mut() {
            Some((e, c)) if e == lead => {
                *c = coeff_add(c, lead_c);
                terms.extend(other.terms[1..].iter().cloned());
            }
            _ => terms.extend(other.terms.iter().cloned()),
        }
        Cnf { terms }
    }

    /// Hessenberg sum: merge terms, adding coefficients of equal exponents.
    pub fn natural_sum(&self, other: &Self) -> Self {
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let mut terms = Vec::with_capacity(a.len() + b.len());
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    terms.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    terms.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    terms.push((a[i].0.clone(), coeff_add(&a[i].1, &b[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend(a[i..].iter().cloned());
        terms.extend(b[j..].iter().cloned());
        Cnf { terms }
    }

    /// Splits `α = ω·β + r` into `(ω·β, r)`.
    pub fn limit_part(&self) -> (Self, C) {
        match self.terms.split_last() {
            Some(((e, c), rest)) if e.is_zero() => (Cnf { terms: rest.to_vec() }, c.clone()),
            _ => (self.clone(), C::zero()),
        }
    }

    /// `ω·self`: every exponent `e` becomes `1 + e`.
    pub fn omega_times(&self) -> Self {
        let one = Self::one();
        Cnf {
            terms: self.terms.iter().map(|(e, c)| (one.add(e), c.clone())).collect(),
        }
    }

    fn exponent_needs_parens(&self) -> bool {
        !(self.is_finite() || *self == Self::omega())
    }
}

impl<C: Coefficient> Ord for Cnf<C> {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let o = a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl<C: Coefficient> PartialOrd for Cnf<C> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<C: Coefficient> fmt::Display for Cnf<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str("+")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            f.write_str("w")?;
            if *e != Self::one() {
                if e.exponent_needs_parens() {
                    write!(f, "^({e})")?;
                } else {
                    write!(f, "^{e}")?;
                }
            }
            if !c.is_one() {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

/// Accepts exactly the normal forms [`fmt::Display`] produces, with
/// whitespace allowed anywhere.
impl<C: Coefficient> FromStr for Cnf<C> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty ordinal".into()));
        }
        let mut p = Parser {
            chars: compact.as_bytes(),
            pos: 0,
        };
        let value = p.ordinal()?;
        if p.pos != compact.len() {
            return Err(Error::Parse(format!(
                "unexpected '{}' at offset {}",
                compact[p.pos..].chars().next().unwrap(),
                p.pos
            )));
        }
        let canonical = value.to_string();
        if canonical != compact {
            return Err(Error::Parse(format!(
                "'{compact}' is not in normal form; write '{canonical}'"
            )));
        }
        Ok(value)
    }
}

struct Parser<'a> {
    chars: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number<C: Coefficient>(&mut self) -> Result<C> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected a number at offset {start}")));
        }
        let digits = std::str::from_utf8(&self.chars[start..self.pos]).unwrap();
        digits
            .parse()
            .map_err(|_| Error::Parse(format!("coefficient '{digits}' out of range")))
    }

    fn ordinal<C: Coefficient>(&mut self) -> Result<Cnf<C>> {
        let mut terms: Vec<(Cnf<C>, C)> = vec![self.term()?];
        while self.eat(b'+') {
            terms.push(self.term()?);
        }
        if terms.iter().any(|(_, c)| c.is_zero()) {
            if terms.len() == 1 && terms[0].0.is_zero() {
                return Ok(Cnf::zero());
            }
            return Err(Error::Parse("zero coefficient or term".into()));
        }
        Cnf::from_terms(terms)
    }

    fn term<C: Coefficient>(&mut self) -> Result<(Cnf<C>, C)> {
        if !self.eat(b'w') {
            return Ok((Cnf::zero(), self.number()?));
        }
        let exponent = if self.eat(b'^') {
            if self.eat(b'w') {
                Cnf::omega()
            } else if self.eat(b'(') {
                let e = self.ordinal()?;
                if !self.eat(b')') {
                    return Err(Error::Parse(format!("expected ')' at offset {}", self.pos)));
                }
                e
            } else {
                Cnf::finite(self.number()?)
            }
        } else {
            Cnf::one()
        };
        let coefficient = if self.eat(b'*') { self.number()? } else { C::one() };
        Ok((exponent, coefficient))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{BigOrdinal, Ordinal};
    use num_bigint::BigUint;
    use proptest::prelude::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    /// Ordinals below ω^4 with coefficients 1..=5.
    fn arb_ordinal() -> impl Strategy<Value = Ordinal> {
        proptest::collection::vec(0u64..=5, 4).prop_map(|cs| {
            let terms = (0..4u64)
                .rev()
                .filter(|&e| cs[e as usize] > 0)
                .map(|e| (Ordinal::nat(e), cs[e as usize]))
                .collect();
            Ordinal::from_terms(terms).unwrap()
        })
    }

    /// Adds one `ω^e` at a time: drop smaller terms, bump the coefficient.
    /// Only for ordinals below ω^ω.
    fn naive_add(a: &Ordinal, b: &Ordinal) -> Ordinal {
        let mut coeffs = [0u64; 8];
        for (e, c) in a.terms() {
            coeffs[e.as_finite().unwrap() as usize] = *c;
        }
        for (e, c) in b.terms() {
            let e = e.as_finite().unwrap() as usize;
            for _ in 0..*c {
                coeffs[..e].iter_mut().for_each(|x| *x = 0);
                coeffs[e] += 1;
            }
        }
        let terms = (0..8u64)
            .rev()
            .filter(|&e| coeffs[e as usize] > 0)
            .map(|e| (Ordinal::nat(e), coeffs[e as usize]))
            .collect();
        Ordinal::from_terms(terms).unwrap()
    }

    #[test]
    fn display_and_parse() {
        for s in ["0", "4", "w", "w+1", "w*2+1", "w^2*3+w+4", "w^w", "w^(w+1)*2+w^5", "w^(w^2)"] {
            assert_eq!(o(s).to_string(), s);
        }
        assert_eq!(o("w^2*3 + w + 4"), o("w^2*3+w+4"));
        for bad in [
            "", "w^0", "w^1", "w*1", "w*0", "0+w", "w+w", "1+w", "w^(3)", "w^(w)", "007", "w^", "w+", "x", "(w)",
        ] {
            assert!(bad.parse::<Ordinal>().is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn compare_examples() {
        assert_eq!(Ordinal::zero().cmp(&Ordinal::zero()), Ordering::Equal);
        assert!(Ordinal::omega() > Ordinal::nat(5));
        assert!(o("w^w") > o("w^9*9"));
        assert!(o("w*2") > o("w+100"));
    }

    #[test]
    fn add_examples() {
        assert_eq!(Ordinal::one().add(&Ordinal::omega()), Ordinal::omega());
        assert_eq!(Ordinal::omega().add(&Ordinal::one()), o("w+1"));
        assert_eq!(o("w*2+3").add(&o("w+1")), o("w*3+1"));
        assert_eq!(naive_add(&o("w*2+3"), &o("w+1")), o("w*3+1"));
    }

    #[test]
    fn natural_sum_examples() {
        assert_eq!(Ordinal::omega().natural_sum(&Ordinal::omega()), o("w*2"));
        assert_eq!(o("w+1").natural_sum(&o("w")), o("w*2+1"));
        assert_eq!(Ordinal::zero().natural_sum(&o("w^2+3")), o("w^2+3"));
    }

    #[test]
    fn limit_part_examples() {
        assert_eq!(Ordinal::nat(5).limit_part(), (Ordinal::zero(), 5));
        assert_eq!(o("w*2+3").limit_part(), (o("w*2"), 3));
        assert_eq!(o("w^2").limit_part(), (o("w^2"), 0));
        assert_eq!(o("w^2").omega_times(), o("w^3"));
        assert_eq!(o("w^w+2").omega_times(), o("w^w+w*2"));
    }

    #[test]
    fn big_coefficients() {
        let big: BigOrdinal = "w*18446744073709551615".parse().unwrap();
        let sum = big.natural_sum(&"w".parse().unwrap());
        assert_eq!(sum.to_string(), "w*18446744073709551616");
        assert_eq!(sum.terms()[0].1, BigUint::from(u64::MAX) + 1u32);
        assert!("w*18446744073709551616".parse::<Ordinal>().is_err());
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn u64_overflow_panics() {
        let big: Ordinal = "w*18446744073709551615".parse().unwrap();
        big.natural_sum(&Ordinal::omega());
    }

    #[test]
    fn order_matches_additive_oracle() {
        // Below ω^3 with coefficients up to 3, a < b iff a + c = b for some c > 0.
        let all: Vec<Ordinal> = (0..64u64)
            .map(|k| {
                let terms = (0..3u64)
                    .rev()
                    .filter(|&e| (k >> (2 * e)) & 3 > 0)
                    .map(|e| (Ordinal::nat(e), (k >> (2 * e)) & 3))
                    .collect();
                Ordinal::from_terms(terms).unwrap()
            })
            .collect();
        for a in &all {
            for b in &all {
                let witnessed = all.iter().any(|c| !c.is_zero() && a.add(c) == *b);
                assert_eq!(a < b, witnessed, "{a} vs {b}");
            }
        }
    }

    proptest! {
        #[test]
        fn round_trip_text(a in arb_ordinal()) {
            prop_assert_eq!(a.to_string().parse::<Ordinal>().unwrap(), a);
        }

        #[test]
        fn add_matches_naive(a in arb_ordinal(), b in arb_ordinal()) {
            prop_assert_eq!(a.add(&b), naive_add(&a, &b));
        }

        #[test]
        fn sums_are_associative(a in arb_ordinal(), b in arb_ordinal(), c in arb_ordinal()) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.natural_sum(&b).natural_sum(&c), a.natural_sum(&b.natural_sum(&c)));
            prop_assert_eq!(a.natural_sum(&b), b.natural_sum(&a));
        }

        #[test]
        fn sums_dominate(a in arb_ordinal(), b in arb_ordinal()) {
            prop_assert!(a <= a.add(&b));
            prop_assert!(b <= a.add(&b));
            prop_assert!(a.add(&b) <= a.natural_sum(&b));
        }

        #[test]
        fn add_is_right_monotone(a in arb_ordinal(), b in arb_ordinal(), c in arb_ordinal()) {
            if b < c {
                prop_assert!(a.add(&b) < a.add(&c));
            }
        }

        #[test]
        fn limit_part_reconstructs(a in arb_ordinal()) {
            let (l, r) = a.limit_part();
            prop_assert!(l.is_zero() || l.is_limit());
            prop_assert_eq!(l.add(&Ordinal::nat(r)), a);
        }
    }
}
