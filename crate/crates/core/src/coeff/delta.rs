//! The quadratic extension of [`Frac`] by the deformation parameter `delta`.
//!
//! `delta` (written `z` below) is a root of `u (z+1)^2 - (v-1)(z+1) - 1`,
//! the relation that makes `(1+delta) R_i` satisfy the one-parameter
//! quadratic. Elements are kept as `c0 + c1 z` and multiplied via the
//! rewrite `u z^2 = (v-1-2u) z + (v-u)`, which is that minimal polynomial
//! expanded around `z` rather than `z+1`.

use std::fmt;

use super::{CoeffError, Frac, Var};

#[derive(Debug, Clone)]
pub struct DeltaExt {
    c0: Frac,
    c1: Frac,
}

/// Coefficients of the reduction `z^2 = alpha z + beta`.
fn alpha() -> Frac {
    // (v - 1 - 2u)/u
    let v = Frac::var(Var::V);
    let u = Frac::var(Var::U);
    let num = &(&v - &Frac::one()) - &(&Frac::from_int(2) * &u);
    num.div(&u).expect("u is nonzero")
}

fn beta() -> Frac {
    // (v - u)/u
    let v = Frac::var(Var::V);
    let u = Frac::var(Var::U);
    (&v - &u).div(&u).expect("u is nonzero")
}

impl DeltaExt {
    pub fn new(c0: Frac, c1: Frac) -> DeltaExt {
        DeltaExt { c0, c1 }
    }

    pub fn zero() -> DeltaExt {
        DeltaExt::new(Frac::zero(), Frac::zero())
    }

    pub fn one() -> DeltaExt {
        DeltaExt::new(Frac::one(), Frac::zero())
    }

    pub fn from_frac(f: Frac) -> DeltaExt {
        DeltaExt::new(f, Frac::zero())
    }

    /// The adjoined root itself.
    pub fn delta() -> DeltaExt {
        DeltaExt::new(Frac::zero(), Frac::one())
    }

    pub fn c0(&self) -> &Frac {
        &self.c0
    }

    pub fn c1(&self) -> &Frac {
        &self.c1
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn add(&self, other: &DeltaExt) -> DeltaExt {
        DeltaExt::new(&self.c0 + &other.c0, &self.c1 + &other.c1)
    }

    pub fn sub(&self, other: &DeltaExt) -> DeltaExt {
        DeltaExt::new(&self.c0 - &other.c0, &self.c1 - &other.c1)
    }

    pub fn neg(&self) -> DeltaExt {
        DeltaExt::new(-&self.c0, -&self.c1)
    }

    pub fn mul(&self, other: &DeltaExt) -> DeltaExt {
        // (a0 + a1 z)(b0 + b1 z), reducing z^2.
        let cross = &(&self.c0 * &other.c1) + &(&self.c1 * &other.c0);
        let zz = &self.c1 * &other.c1;
        DeltaExt::new(
            &(&self.c0 * &other.c0) + &(&beta() * &zz),
            &cross + &(&alpha() * &zz),
        )
    }

    pub fn scale(&self, f: &Frac) -> DeltaExt {
        DeltaExt::new(&self.c0 * f, &self.c1 * f)
    }

    /// Inverse by solving the 2x2 linear system `(c0 + c1 z) x = 1` on the
    /// basis `{1, z}`. The defining quadratic has non-square discriminant
    /// `((v-1)^2 + 4u)/u^2`, so the extension is a field and this fails
    /// exactly on zero.
    pub fn inv(&self) -> Result<DeltaExt, CoeffError> {
        let al = alpha();
        let det = &(&(&self.c0 * &self.c0) + &(&al * &(&self.c0 * &self.c1)))
            - &(&beta() * &(&self.c1 * &self.c1));
        if det.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        let dinv = det.inv()?;
        Ok(DeltaExt::new(
            &(&self.c0 + &(&al * &self.c1)) * &dinv,
            &(-&self.c1) * &dinv,
        ))
    }
}

impl PartialEq for DeltaExt {
    fn eq(&self, other: &Self) -> bool {
        // {1, z} is a free basis over the fraction field.
        self.c0 == other.c0 && self.c1 == other.c1
    }
}

impl Eq for DeltaExt {}

impl fmt::Display for DeltaExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({}) delta", self.c0, self.c1)
    }
}
