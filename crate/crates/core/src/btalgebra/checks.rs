//! Randomized verification that the engine satisfies the defining
//! relations, their specializations, and the deformed-generator
//! presentation.
//!
//! Every check applies both sides of an identity to random elements and
//! compares normal forms exactly. The deformed generators `T_i = R_i +
//! delta E_i R_i` live over the quadratic extension [`DeltaExt`].

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{AlgebraElem, Perm, SetPartition};
use crate::coeff::{Bindings, DeltaExt, Frac, Var};

/// Outcome of one named identity check.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub counterexample: Option<String>,
}

/// Outcomes of a whole suite, in a fixed order.
#[derive(Debug, Clone, Default)]
pub struct SuiteReport {
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn push_pass(&mut self, name: &str) {
        self.checks.push(CheckReport {
            name: name.to_string(),
            passed: true,
            counterexample: None,
        });
    }

    pub fn push_fail(&mut self, name: &str, witness: String) {
        self.checks.push(CheckReport {
            name: name.to_string(),
            passed: false,
            counterexample: Some(witness),
        });
    }

    pub fn merge(&mut self, other: SuiteReport) {
        self.checks.extend(other.checks);
    }
}

/// Which index pairs an identity ranges over.
#[derive(Clone, Copy)]
enum IndexKind {
    Single,
    Adjacent,
    Far,
    AnyPair,
}

fn index_pairs(kind: IndexKind, n: usize) -> Vec<(usize, usize)> {
    let gens = n.saturating_sub(1);
    let mut out = Vec::new();
    match kind {
        IndexKind::Single => {
            for i in 0..gens {
                out.push((i, 0));
            }
        }
        IndexKind::Adjacent => {
            for i in 0..gens {
                for j in 0..gens {
                    if i.abs_diff(j) == 1 {
                        out.push((i, j));
                    }
                }
            }
        }
        IndexKind::Far => {
            for i in 0..gens {
                for j in 0..gens {
                    if i.abs_diff(j) >= 2 {
                        out.push((i, j));
                    }
                }
            }
        }
        IndexKind::AnyPair => {
            for i in 0..gens {
                for j in 0..gens {
                    if i != j {
                        out.push((i, j));
                    }
                }
            }
        }
    }
    out
}

type Sides = fn(&AlgebraElem, usize, usize) -> (AlgebraElem, AlgebraElem);

struct Identity {
    name: &'static str,
    kind: IndexKind,
    sides: Sides,
    /// `None`: sides must agree exactly. `Some(bindings)`: their
    /// difference must vanish after the substitution.
    specialize: Option<fn() -> Bindings>,
}

fn u() -> Frac {
    Frac::var(Var::U)
}

fn v() -> Frac {
    Frac::var(Var::V)
}

fn um1() -> Frac {
    &u() - &Frac::one()
}

fn vm1() -> Frac {
    &v() - &Frac::one()
}

fn at_v_one() -> Bindings {
    Bindings::new().set(Var::V, Frac::one())
}

fn at_v_eq_u() -> Bindings {
    Bindings::new().set(Var::V, u())
}

fn at_u_one() -> Bindings {
    Bindings::new().set(Var::U, Frac::one())
}

fn identity_table() -> Vec<Identity> {
    vec![
        Identity {
            name: "far crossings commute",
            kind: IndexKind::Far,
            sides: |x, i, j| (x.mul_r(i, 1).mul_r(j, 1), x.mul_r(j, 1).mul_r(i, 1)),
            specialize: None,
        },
        Identity {
            name: "braid relation",
            kind: IndexKind::Adjacent,
            sides: |x, i, j| {
                (
                    x.mul_r(i, 1).mul_r(j, 1).mul_r(i, 1),
                    x.mul_r(j, 1).mul_r(i, 1).mul_r(j, 1),
                )
            },
            specialize: None,
        },
        Identity {
            name: "ties commute",
            kind: IndexKind::AnyPair,
            sides: |x, i, j| (x.mul_e(i).mul_e(j), x.mul_e(j).mul_e(i)),
            specialize: None,
        },
        Identity {
            name: "tie idempotent",
            kind: IndexKind::Single,
            sides: |x, i, _| (x.mul_e(i).mul_e(i), x.mul_e(i)),
            specialize: None,
        },
        Identity {
            name: "tie commutes with its crossing",
            kind: IndexKind::Single,
            sides: |x, i, _| (x.mul_e(i).mul_r(i, 1), x.mul_r(i, 1).mul_e(i)),
            specialize: None,
        },
        Identity {
            name: "tie commutes with far crossing",
            kind: IndexKind::Far,
            sides: |x, i, j| (x.mul_e(i).mul_r(j, 1), x.mul_r(j, 1).mul_e(i)),
            specialize: None,
        },
        Identity {
            name: "tie slides along braid",
            kind: IndexKind::Adjacent,
            sides: |x, i, j| {
                (
                    x.mul_e(i).mul_r(j, 1).mul_r(i, 1),
                    x.mul_r(j, 1).mul_r(i, 1).mul_e(j),
                )
            },
            specialize: None,
        },
        Identity {
            name: "tie pair absorbs crossing (left)",
            kind: IndexKind::Adjacent,
            sides: |x, i, j| {
                (
                    x.mul_e(i).mul_e(j).mul_r(i, 1),
                    x.mul_e(j).mul_r(i, 1).mul_e(j),
                )
            },
            specialize: None,
        },
        Identity {
            name: "tie pair absorbs crossing (right)",
            kind: IndexKind::Adjacent,
            sides: |x, i, j| {
                (
                    x.mul_e(j).mul_r(i, 1).mul_e(j),
                    x.mul_r(i, 1).mul_e(i).mul_e(j),
                )
            },
            specialize: None,
        },
        Identity {
            name: "quadratic relation",
            kind: IndexKind::Single,
            sides: |x, i, _| {
                (
                    x.mul_r(i, 1).mul_r(i, 1),
                    x.add(&x.mul_e(i).scale_frac(&um1()))
                        .add(&x.mul_e(i).mul_r(i, 1).scale_frac(&vm1())),
                )
            },
            specialize: None,
        },
        Identity {
            name: "inverse expansion cancels",
            kind: IndexKind::Single,
            sides: |x, i, _| {
                (
                    x.mul_r(i, 1).mul_r(i, -1),
                    x.mul_r(i, -1).mul_r(i, 1),
                )
            },
            specialize: None,
        },
        Identity {
            name: "crossing square at v=1",
            kind: IndexKind::Single,
            sides: |x, i, _| {
                (
                    x.mul_r(i, 1).mul_r(i, 1),
                    x.add(&x.mul_e(i).scale_frac(&um1())),
                )
            },
            specialize: Some(at_v_one),
        },
        Identity {
            name: "inverse at v=1",
            kind: IndexKind::Single,
            sides: |x, i, _| {
                let uinv_m1 = &u().inv().expect("u nonzero") - &Frac::one();
                (
                    x.mul_r(i, -1),
                    x.mul_r(i, 1)
                        .add(&x.mul_e(i).mul_r(i, 1).scale_frac(&uinv_m1)),
                )
            },
            specialize: Some(at_v_one),
        },
        Identity {
            name: "cubic at v=1",
            kind: IndexKind::Single,
            sides: |x, i, _| {
                let up1 = &u() + &Frac::one();
                (
                    x.mul_r(i, 1)
                        .scale_frac(&up1)
                        .sub(&x.mul_r(i, -1).scale_frac(&u())),
                    x.mul_r(i, 1).mul_r(i, 1).mul_r(i, 1),
                )
            },
            specialize: Some(at_v_one),
        },
        Identity {
            name: "quartic at v=1",
            kind: IndexKind::Single,
            sides: |x, i, _| {
                let up1 = &u() + &Frac::one();
                let r2 = x.mul_r(i, 1).mul_r(i, 1);
                (
                    r2.mul_r(i, 1).mul_r(i, 1).add(&x.scale_frac(&u())),
                    r2.scale_frac(&up1),
                )
            },
            specialize: Some(at_v_one),
        },
        Identity {
            name: "one-parameter quadratic at v=u",
            kind: IndexKind::Single,
            sides: |x, i, _| {
                (
                    x.mul_r(i, 1).mul_r(i, 1),
                    x.add(&x.mul_e(i).scale_frac(&um1()))
                        .add(&x.mul_e(i).mul_r(i, 1).scale_frac(&um1())),
                )
            },
            specialize: Some(at_v_eq_u),
        },
        Identity {
            name: "one-parameter quadratic at u=1",
            kind: IndexKind::Single,
            sides: |x, i, _| {
                (
                    x.mul_r(i, 1).mul_r(i, 1),
                    x.add(&x.mul_e(i).mul_r(i, 1).scale_frac(&vm1())),
                )
            },
            specialize: Some(at_u_one),
        },
    ]
}

/// Check every defining relation and specialization as an operator
/// identity on `trials` random elements of the `n`-strand algebra.
pub fn check_relations(n: usize, seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::default();
    for identity in identity_table() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pairs = index_pairs(identity.kind, n);
        let mut witness = None;
        'trials: for _ in 0..trials {
            let x = AlgebraElem::random(&mut rng, n, 2);
            for &(i, j) in &pairs {
                let (lhs, rhs) = (identity.sides)(&x, i, j);
                let ok = match identity.specialize {
                    None => lhs == rhs,
                    Some(bind) => match lhs.sub(&rhs).substitute(&bind()) {
                        Ok(diff) => diff.is_zero(),
                        Err(_) => false,
                    },
                };
                if !ok {
                    witness = Some(format!("n={n} i={i} j={j} x={x}"));
                    break 'trials;
                }
            }
        }
        match witness {
            None => report.push_pass(identity.name),
            Some(w) => report.push_fail(identity.name, w),
        }
    }
    report
}

fn delta() -> DeltaExt {
    DeltaExt::delta()
}

fn one_plus_delta() -> DeltaExt {
    DeltaExt::one().add(&delta())
}

/// `x · T_i` for the deformed generator `T_i = R_i + delta E_i R_i`.
fn mul_t(x: &AlgebraElem<DeltaExt>, i: usize) -> AlgebraElem<DeltaExt> {
    x.mul_r(i, 1).add(&x.mul_e(i).mul_r(i, 1).scale(&delta()))
}

fn random_delta_elem(rng: &mut impl Rng, n: usize, max_terms: usize) -> AlgebraElem<DeltaExt> {
    let mut out = AlgebraElem::zero(n);
    let k = rng.gen_range(1..=max_terms.max(1));
    for _ in 0..k {
        out.add_term(
            SetPartition::random(rng, n),
            Perm::random(rng, n),
            DeltaExt::new(Frac::random(rng), Frac::random(rng)),
        );
    }
    out
}

/// Verify that the deformed generators present the same algebra: the
/// rescaled quadratic, the untouched defining relations, and recovery of
/// the original crossing generator.
pub fn check_isomorphism(n: usize, seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::default();

    // u (1+delta)^2 - 1 = (v-1)(1+delta): the scalar identity that makes
    // the deformed quadratic one-parameter in shape.
    let lhs = one_plus_delta()
        .mul(&one_plus_delta())
        .scale(&u())
        .sub(&DeltaExt::one());
    let rhs = one_plus_delta().scale(&vm1());
    if lhs == rhs {
        report.push_pass("deformation coefficient identity");
    } else {
        report.push_fail(
            "deformation coefficient identity",
            format!("{lhs:?} != {rhs:?}"),
        );
    }

    type TSides = fn(&AlgebraElem<DeltaExt>, usize, usize) -> (AlgebraElem<DeltaExt>, AlgebraElem<DeltaExt>);
    let table: Vec<(&'static str, IndexKind, TSides)> = vec![
        (
            "deformed quadratic",
            IndexKind::Single,
            |x, i, _| {
                let coeff_e = one_plus_delta()
                    .mul(&one_plus_delta())
                    .scale(&u())
                    .sub(&DeltaExt::one());
                let coeff_et = one_plus_delta().scale(&vm1());
                (
                    mul_t(&mul_t(x, i), i),
                    x.add(&x.mul_e(i).scale(&coeff_e))
                        .add(&mul_t(&x.mul_e(i), i).scale(&coeff_et)),
                )
            },
        ),
        (
            "deformed braid relation",
            IndexKind::Adjacent,
            |x, i, j| {
                (
                    mul_t(&mul_t(&mul_t(x, i), j), i),
                    mul_t(&mul_t(&mul_t(x, j), i), j),
                )
            },
        ),
        (
            "deformed far crossings commute",
            IndexKind::Far,
            |x, i, j| (mul_t(&mul_t(x, i), j), mul_t(&mul_t(x, j), i)),
        ),
        (
            "tie commutes with deformed crossing",
            IndexKind::Single,
            |x, i, _| (mul_t(&x.mul_e(i), i), mul_t(x, i).mul_e(i)),
        ),
        (
            "tie commutes with far deformed crossing",
            IndexKind::Far,
            |x, i, j| (mul_t(&x.mul_e(i), j), mul_t(x, j).mul_e(i)),
        ),
        (
            "tie slides along deformed braid",
            IndexKind::Adjacent,
            |x, i, j| {
                (
                    mul_t(&mul_t(&x.mul_e(i), j), i),
                    mul_t(&mul_t(x, j), i).mul_e(j),
                )
            },
        ),
        (
            "tie pair absorbs deformed crossing (left)",
            IndexKind::Adjacent,
            |x, i, j| {
                (
                    mul_t(&x.mul_e(i).mul_e(j), i),
                    mul_t(&x.mul_e(j), i).mul_e(j),
                )
            },
        ),
        (
            "tie pair absorbs deformed crossing (right)",
            IndexKind::Adjacent,
            |x, i, j| {
                (
                    mul_t(&x.mul_e(j), i).mul_e(j),
                    mul_t(x, i).mul_e(i).mul_e(j),
                )
            },
        ),
        (
            "crossing recovered from deformed generator",
            IndexKind::Single,
            |x, i, _| {
                let ratio = delta().mul(&one_plus_delta().inv().expect("1+delta invertible"));
                (
                    x.mul_r(i, 1),
                    mul_t(x, i).sub(&mul_t(&x.mul_e(i), i).scale(&ratio)),
                )
            },
        ),
    ];

    for (name, kind, sides) in table {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pairs = index_pairs(kind, n);
        let mut witness = None;
        'trials: for _ in 0..trials {
            let x = random_delta_elem(&mut rng, n, 2);
            for &(i, j) in &pairs {
                let (lhs, rhs) = sides(&x, i, j);
                if lhs != rhs {
                    witness = Some(format!("n={n} i={i} j={j} x={x}"));
                    break 'trials;
                }
            }
        }
        match witness {
            None => report.push_pass(name),
            Some(w) => report.push_fail(name, w),
        }
    }
    report
}
