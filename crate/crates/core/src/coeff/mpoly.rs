//! Multivariate polynomials in `u, v, a, b` over arbitrary-size integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Bindings, CoeffError, Frac};

/// Number of polynomial variables.
pub const NVARS: usize = 4;

/// The four indeterminates, in display precedence order `u > v > a > b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    U,
    V,
    A,
    B,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::U, Var::V, Var::A, Var::B];

    pub fn index(self) -> usize {
        match self {
            Var::U => 0,
            Var::V => 1,
            Var::A => 2,
            Var::B => 3,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Var::U => 'u',
            Var::V => 'v',
            Var::A => 'a',
            Var::B => 'b',
        }
    }
}

/// A monomial: exponents for `(u, v, a, b)`.
///
/// Ordered by total degree, then lexicographically with `u > v > a > b`;
/// the canonical rendering walks monomials in descending order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mono(pub [u16; NVARS]);

impl Mono {
    pub fn one() -> Self {
        Mono([0; NVARS])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; NVARS];
        e[v.index()] = 1;
        Mono(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Mono) -> Mono {
        let mut e = [0; NVARS];
        for i in 0..NVARS {
            e[i] = self.0[i] + other.0[i];
        }
        Mono(e)
    }

    /// Componentwise quotient; caller guarantees divisibility.
    fn div(&self, other: &Mono) -> Mono {
        let mut e = [0; NVARS];
        for i in 0..NVARS {
            debug_assert!(self.0[i] >= other.0[i]);
            e[i] = self.0[i] - other.0[i];
        }
        Mono(e)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `u, v, a, b` with [`BigInt`] coefficients.
///
/// Stored as monomial -> coefficient with no zero entries, so structural
/// equality is mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Mono, BigInt>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::from_int(1)
    }

    pub fn from_int(k: i64) -> Self {
        MPoly::from_bigint(BigInt::from(k))
    }

    pub fn from_bigint(k: BigInt) -> Self {
        let mut p = MPoly::zero();
        if !k.is_zero() {
            p.terms.insert(Mono::one(), k);
        }
        p
    }

    pub fn var(v: Var) -> Self {
        let mut p = MPoly::zero();
        p.terms.insert(Mono::var(v), BigInt::one());
        p
    }

    /// Monomial `var^exp` with coefficient 1.
    pub fn var_pow(v: Var, exp: u16) -> Self {
        let mut e = [0; NVARS];
        e[v.index()] = exp;
        let mut p = MPoly::zero();
        p.terms.insert(Mono(e), BigInt::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Mono::one())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, mono: Mono, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Coefficient of the largest monomial in the canonical order.
    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.iter().next_back().map(|(_, c)| c)
    }

    /// Positive gcd of all integer coefficients (zero polynomial gives 0).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Componentwise minimum of all exponent vectors (the largest monomial
    /// dividing every term). Zero polynomial gives the unit monomial.
    pub fn mono_content(&self) -> Mono {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => *m,
            None => return Mono::one(),
        };
        let mut e = first.0;
        for m in it {
            for i in 0..NVARS {
                e[i] = e[i].min(m.0[i]);
            }
        }
        Mono(e)
    }

    /// Divide every coefficient by `g` (must divide exactly).
    pub fn div_int(&self, g: &BigInt) -> MPoly {
        debug_assert!(!g.is_zero());
        let mut p = MPoly::zero();
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(g);
            debug_assert!(r.is_zero());
            p.terms.insert(*m, q);
        }
        p
    }

    /// Divide every term by the monomial `m` (must divide exactly).
    pub fn div_mono(&self, m: &Mono) -> MPoly {
        let mut p = MPoly::zero();
        for (mm, c) in &self.terms {
            p.terms.insert(mm.div(m), c.clone());
        }
        p
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Apply `bindings` to every variable, producing a rational expression.
    pub fn substitute(&self, bindings: &Bindings) -> Result<Frac, CoeffError> {
        // Cache powers of each bound value as we go; exponents are small.
        let mut out = Frac::zero();
        for (mono, coeff) in &self.terms {
            let mut term = Frac::from_mpoly(MPoly::from_bigint(coeff.clone()));
            for var in Var::ALL {
                let e = mono.0[var.index()];
                if e == 0 {
                    continue;
                }
                let factor = match bindings.get(var) {
                    Some(f) => f.powi(e as i64).expect("nonnegative power is total"),
                    None => Frac::from_mpoly(MPoly::var_pow(var, e)),
                };
                term = &term * &factor;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// A small random polynomial: up to `terms` monomials with exponents
    /// below 3 and coefficients in `-3..=3`. Used by the randomized suites.
    pub fn random(rng: &mut impl Rng, terms: usize) -> MPoly {
        let mut p = MPoly::zero();
        let k = rng.gen_range(1..=terms.max(1));
        for _ in 0..k {
            let mut e = [0u16; NVARS];
            for ei in e.iter_mut() {
                *ei = rng.gen_range(0..3);
            }
            let c = rng.gen_range(-3i64..=3);
            p.add_term(Mono(e), BigInt::from(c));
        }
        p
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            out.terms.insert(*m, -c.clone());
        }
        out
    }
}

impl fmt::Display for MPoly {
    /// Canonical rendering: monomials in descending (degree, u > v > a > b)
    /// order, e.g. `u*b - b + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (mono, coeff)) in self.terms.iter().rev().enumerate() {
            let neg = coeff.is_negative();
            let abs = coeff.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            for var in Var::ALL {
                let e = mono.0[var.index()];
                match e {
                    0 => {}
                    1 => factors.push(var.symbol().to_string()),
                    _ => factors.push(format!("{}^{}", var.symbol(), e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u() -> MPoly {
        MPoly::var(Var::U)
    }
    fn b() -> MPoly {
        MPoly::var(Var::B)
    }

    #[test]
    fn rendering_follows_degree_then_lex_order() {
        // u*b - b + 1
        let p = &(&(&u() * &b()) - &b()) + &MPoly::one();
        assert_eq!(p.to_string(), "u*b - b + 1");
        let q = &(&u() - &MPoly::var(Var::V)) + &MPoly::var(Var::A);
        assert_eq!(q.to_string(), "u - v + a");
        assert_eq!(MPoly::zero().to_string(), "0");
        assert_eq!((&MPoly::zero() - &MPoly::one()).to_string(), "-1");
        assert_eq!(MPoly::var_pow(Var::U, 3).to_string(), "u^3");
        assert_eq!(MPoly::from_int(-2).to_string(), "-2");
        let r = &MPoly::from_int(2) * &(&u() * &u());
        assert_eq!(r.to_string(), "2*u^2");
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = &u() - &u();
        assert!(p.is_zero());
        assert_eq!(p.term_count(), 0);
    }

    #[test]
    fn content_and_mono_content() {
        // 2*u^2*b + 4*u*b^2 has content 2 and monomial content u*b.
        let p = &(&MPoly::from_int(2) * &(&(&u() * &u()) * &b()))
            + &(&MPoly::from_int(4) * &(&u() * &(&b() * &b())));
        assert_eq!(p.content(), BigInt::from(2));
        assert_eq!(p.mono_content(), Mono([1, 0, 0, 1]));
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let p = &u() + &MPoly::one();
        let mut byhand = MPoly::one();
        for _ in 0..5 {
            byhand = &byhand * &p;
        }
        assert_eq!(p.pow(5), byhand);
    }
}
