//! The fraction field of [`MPoly`].

use num_integer::Integer;
use num_traits::{One, Signed};
use rand::Rng;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Bindings, CoeffError, MPoly, Var};

/// A quotient of two polynomials in `u, v, a, b`.
///
/// Kept partially reduced: the integer content and any common monomial
/// factor are cancelled, and the denominator's leading coefficient is made
/// positive. Full polynomial gcd is deliberately not attempted, so equality
/// is decided by cross-multiplication, never by comparing representatives.
#[derive(Debug, Clone)]
pub struct Frac {
    num: MPoly,
    den: MPoly,
}

impl Frac {
    /// Build `num/den`, normalizing. Panics if `den` is zero: a zero
    /// denominator is always a programming error here, since the only
    /// fallible routes to one ([`Frac::div`], [`Frac::powi`],
    /// [`Frac::substitute`]) check first.
    pub fn new(num: MPoly, den: MPoly) -> Frac {
        assert!(!den.is_zero(), "fraction with zero denominator");
        let mut f = Frac { num, den };
        f.normalize();
        f
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = MPoly::one();
            return;
        }
        // Common integer content.
        let g = self.num.content().gcd(&self.den.content());
        if !g.is_one() {
            self.num = self.num.div_int(&g);
            self.den = self.den.div_int(&g);
        }
        // Common monomial factor.
        let mn = self.num.mono_content();
        let md = self.den.mono_content();
        let mut common = [0u16; super::NVARS];
        for i in 0..super::NVARS {
            common[i] = mn.0[i].min(md.0[i]);
        }
        let common = super::Mono(common);
        if !common.is_one() {
            self.num = self.num.div_mono(&common);
            self.den = self.den.div_mono(&common);
        }
        // Sign convention: leading denominator coefficient positive.
        if self
            .den
            .leading_coeff()
            .map(|c| c.is_negative())
            .unwrap_or(false)
        {
            self.num = -&self.num;
            self.den = -&self.den;
        }
    }

    pub fn zero() -> Frac {
        Frac {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }

    pub fn one() -> Frac {
        Frac {
            num: MPoly::one(),
            den: MPoly::one(),
        }
    }

    pub fn from_int(k: i64) -> Frac {
        Frac {
            num: MPoly::from_int(k),
            den: MPoly::one(),
        }
    }

    pub fn from_mpoly(p: MPoly) -> Frac {
        Frac {
            num: p,
            den: MPoly::one(),
        }
    }

    pub fn var(v: Var) -> Frac {
        Frac::from_mpoly(MPoly::var(v))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &Frac::one()
    }

    pub fn inv(&self) -> Result<Frac, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Frac::new(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &Frac) -> Result<Frac, CoeffError> {
        Ok(self * &rhs.inv()?)
    }

    /// Integer power, negative exponents allowed for nonzero values.
    pub fn powi(&self, e: i64) -> Result<Frac, CoeffError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Frac::one();
        let mut pow = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &pow;
            }
            e >>= 1;
            if e > 0 {
                pow = &pow * &pow;
            }
        }
        Ok(acc)
    }

    /// Apply variable bindings to numerator and denominator.
    ///
    /// Fails if the denominator becomes zero; the error names the original
    /// denominator so callers can report which expression lost meaning.
    pub fn substitute(&self, bindings: &Bindings) -> Result<Frac, CoeffError> {
        let num = self.num.substitute(bindings)?;
        let den = self.den.substitute(bindings)?;
        if den.is_zero() {
            return Err(CoeffError::SubstituteError {
                denominator: self.den.to_string(),
            });
        }
        num.div(&den)
    }

    /// Random small fraction with a monomial denominator (the shape that
    /// actually occurs as an algebra coefficient).
    pub fn random(rng: &mut impl Rng) -> Frac {
        let mut num = MPoly::random(rng, 2);
        if num.is_zero() {
            num = MPoly::one();
        }
        let den = MPoly::var_pow(Var::U, rng.gen_range(0..2));
        Frac::new(num, den)
    }
}

impl PartialEq for Frac {
    fn eq(&self, other: &Self) -> bool {
        // Cross-multiplication; representatives need not match.
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for Frac {}

impl Add for &Frac {
    type Output = Frac;
    fn add(self, rhs: &Frac) -> Frac {
        Frac::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &Frac {
    type Output = Frac;
    fn sub(self, rhs: &Frac) -> Frac {
        Frac::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &Frac {
    type Output = Frac;
    fn mul(self, rhs: &Frac) -> Frac {
        Frac::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        Frac {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}
