//! Exact coefficient arithmetic for the invariant computations.
//!
//! Everything is computed symbolically over the rationals: multivariate
//! polynomials in the four indeterminates `u, v, a, b` with arbitrary-size
//! integer coefficients ([`MPoly`]), their fraction field ([`Frac`]), a
//! quadratic layer adjoining a formal square root `sqrt(c)` ([`Scalar`]),
//! and a quadratic extension by the deformation root `delta` ([`DeltaExt`]).
//!
//! No floating point anywhere; every comparison is exact.

mod delta;
mod frac;
mod mpoly;
mod scalar;

pub use delta::DeltaExt;
pub use frac::Frac;
pub use mpoly::{MPoly, Mono, Var, NVARS};
pub use scalar::{denominator_divides_only, try_div_exact, Scalar};

use std::fmt;

/// Errors from coefficient arithmetic.
///
/// Arithmetic itself is total; errors arise only from inverting zero (or a
/// zero divisor in [`DeltaExt`]) and from substitutions that send a
/// denominator to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoeffError {
    /// Inverse of zero (or of a zero divisor in the delta extension).
    DivisionByZero,
    /// A substitution made a denominator vanish; carries the denominator
    /// as it was before the substitution.
    SubstituteError { denominator: String },
}

impl fmt::Display for CoeffError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffError::DivisionByZero => write!(f, "division by zero"),
            CoeffError::SubstituteError { denominator } => {
                write!(f, "substitution makes denominator ({denominator}) vanish")
            }
        }
    }
}

impl std::error::Error for CoeffError {}

/// A partial assignment of the four variables to rational expressions.
///
/// Unbound variables are left alone. Bindings are applied simultaneously:
/// `v := u` together with `u := 1` sends `v` to `u`, not to `1`.
#[derive(Debug, Clone, Default)]
pub struct Bindings {
    map: [Option<Frac>; NVARS],
}

impl Bindings {
    pub fn new() -> Self {
        Bindings::default()
    }

    /// Bind `var` to `value`, replacing any previous binding for it.
    pub fn set(mut self, var: Var, value: Frac) -> Self {
        self.map[var.index()] = Some(value);
        self
    }

    pub fn get(&self, var: Var) -> Option<&Frac> {
        self.map[var.index()].as_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u() -> Frac {
        Frac::var(Var::U)
    }
    fn v() -> Frac {
        Frac::var(Var::V)
    }
    fn a() -> Frac {
        Frac::var(Var::A)
    }
    fn b() -> Frac {
        Frac::var(Var::B)
    }
    fn int(k: i64) -> Frac {
        Frac::from_int(k)
    }

    /// The trace parameter `c = (a + b(1-v)) / (a u)` used throughout.
    fn generic_c() -> Frac {
        (&a() + &(&b() * &(&int(1) - &v()))).div(&(&a() * &u())).unwrap()
    }

    #[test]
    fn binding_is_simultaneous_not_sequential() {
        // v := u and u := 1 applied at once: v picks up the *old* u.
        let bind = Bindings::new().set(Var::V, u()).set(Var::U, int(1));
        let got = v().substitute(&bind).unwrap();
        assert_eq!(got, u());
        let got_u = u().substitute(&bind).unwrap();
        assert_eq!(got_u, int(1));
    }

    #[test]
    fn substitute_commutes_with_arithmetic() {
        // (x + y) * z with v := u*a etc. agrees whether we substitute before
        // or after doing the arithmetic.
        let mut rng = crate::testutil::rng(42);
        for _ in 0..200 {
            let x = Frac::random(&mut rng);
            let y = Frac::random(&mut rng);
            let z = Frac::random(&mut rng);
            let bind = Bindings::new()
                .set(Var::V, &u() * &a())
                .set(Var::B, int(3));
            let lhs = (&(&x + &y) * &z).substitute(&bind);
            let xa = x.substitute(&bind);
            let ya = y.substitute(&bind);
            let za = z.substitute(&bind);
            match (lhs, xa, ya, za) {
                (Ok(l), Ok(x2), Ok(y2), Ok(z2)) => assert_eq!(l, &(&x2 + &y2) * &z2),
                // A vanishing denominator must then show up on at least one side.
                _ => {}
            }
        }
    }

    #[test]
    fn b_definition_round_trips() {
        // a (u c - 1) / (1 - v) with c left symbolic collapses back to b.
        let c = generic_c();
        let num = &a() * &(&(&u() * &c) - &int(1));
        let expr = num.div(&(&int(1) - &v())).unwrap();
        assert_eq!(expr, b());
    }

    #[test]
    fn substitute_reports_vanishing_denominator() {
        // 1 / (v - 1) dies under v := 1.
        let f = int(1).div(&(&v() - &int(1))).unwrap();
        let bind = Bindings::new().set(Var::V, int(1));
        match f.substitute(&bind) {
            Err(CoeffError::SubstituteError { denominator }) => {
                assert!(denominator.contains('v'));
            }
            other => panic!("expected vanishing denominator, got {other:?}"),
        }
    }

    #[test]
    fn specialized_c_values() {
        let c = generic_c();
        // v := 1 gives c = 1/u.
        let omega = c.substitute(&Bindings::new().set(Var::V, int(1))).unwrap();
        assert_eq!(omega, int(1).div(&u()).unwrap());
        // u := 1 gives c = (a + b(1-v))/a.
        let theta = c.substitute(&Bindings::new().set(Var::U, int(1))).unwrap();
        let want = (&a() + &(&b() * &(&int(1) - &v()))).div(&a()).unwrap();
        assert_eq!(theta, want);
    }
}
