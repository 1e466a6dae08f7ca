//! Values living in the quadratic extension by a formal `sqrt(c)`.

use std::fmt;

use super::{Bindings, CoeffError, Frac, MPoly, Var};

/// A value `even + odd * sqrt(c)`, carrying the rational expression `c`
/// it is a square root of.
///
/// The invariant normalization only ever introduces half-integer powers of
/// `c`, so this two-component form is closed under the arithmetic we need.
/// Operations between scalars require the same `c` (panicking otherwise:
/// mixing extensions is a programming error, not a data condition).
#[derive(Debug, Clone)]
pub struct Scalar {
    even: Frac,
    odd: Frac,
    c: Frac,
}

impl Scalar {
    /// The generic trace parameter `c = (a + b(1-v)) / (a u)`.
    pub fn generic_c() -> Frac {
        let a = Frac::var(Var::A);
        let b = Frac::var(Var::B);
        let v = Frac::var(Var::V);
        let u = Frac::var(Var::U);
        let num = &a + &(&b * &(&Frac::one() - &v));
        num.div(&(&a * &u)).expect("a*u is nonzero")
    }

    pub fn new(even: Frac, odd: Frac, c: Frac) -> Scalar {
        assert!(!c.is_zero(), "sqrt of zero has no two-component form");
        Scalar { even, odd, c }
    }

    /// `f`, as an element of the extension for the generic `c`.
    pub fn from_frac(f: Frac) -> Scalar {
        Scalar::new(f, Frac::zero(), Scalar::generic_c())
    }

    pub fn zero() -> Scalar {
        Scalar::from_frac(Frac::zero())
    }

    pub fn one() -> Scalar {
        Scalar::from_frac(Frac::one())
    }

    /// `sqrt(c)^k` for the generic `c`; `k` may be negative.
    pub fn sqrt_c_pow(k: i64) -> Scalar {
        Scalar::sqrt_c_pow_of(k, Scalar::generic_c())
    }

    /// `sqrt(c)^k` in the extension by the given `c`.
    pub fn sqrt_c_pow_of(k: i64, c: Frac) -> Scalar {
        // Even powers collapse to c^(k/2); odd powers keep one sqrt(c).
        let half = k.div_euclid(2);
        let cp = c.powi(half).expect("c is nonzero");
        if k.rem_euclid(2) == 0 {
            Scalar::new(cp, Frac::zero(), c)
        } else {
            Scalar::new(Frac::zero(), cp, c)
        }
    }

    pub fn even(&self) -> &Frac {
        &self.even
    }

    pub fn odd(&self) -> &Frac {
        &self.odd
    }

    pub fn c(&self) -> &Frac {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    fn assert_same_c(&self, other: &Scalar) {
        assert!(
            self.c == other.c,
            "scalar arithmetic across different extensions"
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.assert_same_c(other);
        Scalar {
            even: &self.even + &other.even,
            odd: &self.odd + &other.odd,
            c: self.c.clone(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.assert_same_c(other);
        Scalar {
            even: &self.even - &other.even,
            odd: &self.odd - &other.odd,
            c: self.c.clone(),
        }
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            even: -&self.even,
            odd: -&self.odd,
            c: self.c.clone(),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.assert_same_c(other);
        // (e1 + o1 s)(e2 + o2 s) with s^2 = c.
        let even = &(&self.even * &other.even) + &(&(&self.odd * &other.odd) * &self.c);
        let odd = &(&self.even * &other.odd) + &(&self.odd * &other.even);
        Scalar {
            even,
            odd,
            c: self.c.clone(),
        }
    }

    pub fn scale(&self, f: &Frac) -> Scalar {
        Scalar {
            even: &self.even * f,
            odd: &self.odd * f,
            c: self.c.clone(),
        }
    }

    /// Multiply by `sqrt(c)^k`.
    pub fn mul_sqrt_c_pow(&self, k: i64) -> Scalar {
        self.mul(&Scalar::sqrt_c_pow_of(k, self.c.clone()))
    }

    /// Inverse via the conjugate: `(e - o s) / (e^2 - c o^2)`.
    pub fn inv(&self) -> Result<Scalar, CoeffError> {
        let norm = &(&self.even * &self.even) - &(&self.c * &(&self.odd * &self.odd));
        if norm.is_zero() {
            // For our c (a formal square root of a non-square) this means
            // the scalar itself is zero.
            return Err(CoeffError::DivisionByZero);
        }
        let ninv = norm.inv()?;
        Ok(Scalar {
            even: &self.even * &ninv,
            odd: &(-&self.odd) * &ninv,
            c: self.c.clone(),
        })
    }

    pub fn powi(&self, e: i64) -> Result<Scalar, CoeffError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Scalar::new(Frac::one(), Frac::zero(), self.c.clone());
        let mut pow = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&pow);
            }
            e >>= 1;
            if e > 0 {
                pow = pow.mul(&pow);
            }
        }
        Ok(acc)
    }

    /// Apply bindings to both components and to `c` itself.
    pub fn substitute(&self, bindings: &Bindings) -> Result<Scalar, CoeffError> {
        let c = self.c.substitute(bindings)?;
        if c.is_zero() {
            return Err(CoeffError::SubstituteError {
                denominator: format!("sqrt of ({})", self.c),
            });
        }
        Ok(Scalar {
            even: self.even.substitute(bindings)?,
            odd: self.odd.substitute(bindings)?,
            c,
        })
    }

    /// The canonical one-line rendering: `even: (..)/(..) ; odd: (..)/(..)`.
    pub fn canonical_render(&self) -> String {
        format!("even: {} ; odd: {}", self.even, self.odd)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.even == other.even && self.odd == other.odd
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_render())
    }
}

/// Whether the reduced denominator of `f` divides a product of powers of
/// the `allowed` polynomials; used to confirm that computed values stay
/// inside the expected multiplicative set.
pub fn denominator_divides_only(f: &Frac, allowed: &[MPoly]) -> bool {
    // The reduced denominator must divide a product of powers of the
    // allowed polynomials. We check by repeated exact division attempts.
    let mut den = f.den().clone();
    let mut progress = true;
    while progress && !den.is_one() {
        progress = false;
        for p in allowed {
            if let Some(q) = try_div_exact(&den, p) {
                den = q;
                progress = true;
                break;
            }
        }
    }
    den.is_one()
}

/// Exact multivariate division `num / d`, if it leaves no remainder.
pub fn try_div_exact(num: &MPoly, d: &MPoly) -> Option<MPoly> {
    if d.is_zero() {
        return None;
    }
    let mut rem = num.clone();
    let mut quot = MPoly::zero();
    let (dm, dc) = {
        let (m, c) = d.terms().next_back()?;
        (*m, c.clone())
    };
    while !rem.is_zero() {
        let (rm, rc) = {
            let (m, c) = rem.terms().next_back().unwrap();
            (*m, c.clone())
        };
        // Leading term of rem must be divisible by leading term of d.
        let mut q = [0u16; super::NVARS];
        for i in 0..super::NVARS {
            if rm.0[i] < dm.0[i] {
                return None;
            }
            q[i] = rm.0[i] - dm.0[i];
        }
        use num_integer::Integer;
        let (qc, rr) = rc.div_rem(&dc);
        if !num_traits::Zero::is_zero(&rr) {
            return None;
        }
        let mut t = MPoly::zero();
        t.add_term(super::Mono(q), qc);
        quot = &quot + &t;
        rem = &rem - &(&t * d);
    }
    Some(quot)
}
