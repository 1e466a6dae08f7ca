//! The two-parameter invariant of tied links and its one-parameter
//! specializations.
//!
//! A tied braid word is sent through the diagram algebra, traced, and
//! normalized by the writhe and strand count into a value in the
//! quadratic extension by `sqrt(c)`:
//!
//! ```text
//! value = a^(1-n) * sqrt(c)^(e+1-n) * trace(elem(word))
//! ```
//!
//! where `n` is the strand count and `e` the exponent sum. Invariance
//! under all the moves relating braid presentations of the same tied
//! link is what the [`check_markov_invariance`] suite verifies.
//!
//! Three substitutions collapse the two-parameter invariant to
//! one-parameter ones, and tying all components together recovers the
//! classical two-variable skein invariant of the underlying link.

mod trace;

use std::error::Error;
use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use trace::{PartnerChoice, TraceEngine};

use crate::btalgebra::{elem_from_word, AlgebraElem, SuiteReport};
use crate::coeff::{Bindings, CoeffError, Frac, Scalar, Var};
use crate::tiedbraid::{apply_move, random_move, random_word, TiedBraidWord};

/// Which substitution, if any, has been applied to a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Specialization {
    /// The full two-parameter invariant.
    Generic,
    /// `v := u`: the one-parameter invariant seen by the deformed
    /// generators.
    Delta,
    /// `u := 1`: the partition-algebra flavored invariant.
    Theta,
    /// `v := 1`: the invariant that only sees the linking graph.
    Omega,
}

impl Specialization {
    pub fn bindings(self) -> Bindings {
        match self {
            Specialization::Generic => Bindings::new(),
            Specialization::Delta => Bindings::new().set(Var::V, Frac::var(Var::U)),
            Specialization::Theta => Bindings::new().set(Var::U, Frac::one()),
            Specialization::Omega => Bindings::new().set(Var::V, Frac::one()),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Specialization::Generic => "upsilon",
            Specialization::Delta => "delta",
            Specialization::Theta => "theta",
            Specialization::Omega => "omega",
        }
    }
}

/// A computed invariant, together with the combinatorial data the
/// normalization used and the specialization applied.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantValue {
    pub value: Scalar,
    pub strands: usize,
    pub exponent_sum: i64,
    /// Components of the closed-up link.
    pub components: usize,
    /// Classes of components after merging along ties.
    pub classes: usize,
    pub specialization: Specialization,
}

#[derive(Debug, Clone, PartialEq)]
pub enum InvariantError {
    /// The two-variable skein reduction is only defined for inputs
    /// without ties of their own.
    TiedInput { name: String },
    Coeff(CoeffError),
}

impl fmt::Display for InvariantError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantError::TiedInput { name } => {
                write!(f, "input `{name}` carries ties; expected a plain braid word")
            }
            InvariantError::Coeff(e) => write!(f, "{e}"),
        }
    }
}

impl Error for InvariantError {}

impl From<CoeffError> for InvariantError {
    fn from(e: CoeffError) -> Self {
        InvariantError::Coeff(e)
    }
}

/// The two-parameter invariant of the tied link closing up `word`.
pub fn upsilon(word: &TiedBraidWord) -> InvariantValue {
    let (elem, exponent_sum) = elem_from_word(word);
    let tau = TraceEngine::new().trace(&elem);
    let n = word.strands as i64;
    let a_norm = Frac::var(Var::A).powi(1 - n).expect("a is invertible");
    let value = Scalar::sqrt_c_pow(exponent_sum + 1 - n).scale(&(&a_norm * &tau));
    let (components, _) = word.closure_components();
    let classes = word.class_partition().block_count();
    InvariantValue {
        value,
        strands: word.strands,
        exponent_sum,
        components,
        classes,
        specialization: Specialization::Generic,
    }
}

/// Substitute one of the one-parameter points into a generic value.
///
/// Fails only if the substituted `c` would vanish, which none of the
/// supported points cause.
pub fn specialize(
    value: &InvariantValue,
    which: Specialization,
) -> Result<InvariantValue, InvariantError> {
    assert_eq!(
        value.specialization,
        Specialization::Generic,
        "specialize from the generic invariant"
    );
    Ok(InvariantValue {
        value: value.value.substitute(&which.bindings())?,
        specialization: which,
        ..value.clone()
    })
}

/// Rewrite a `u := 1` value through the change of variable
/// `v := (q^2 - 1 + q) / q`, reusing the freed first slot for `q`.
///
/// At `u = 1` the value depends on `v` alone (besides `a`, `b`), so the
/// slot that held `u` is available to carry the reparameterizing
/// variable.
pub fn theta_in_q(value: &InvariantValue) -> Result<Scalar, InvariantError> {
    assert_eq!(
        value.specialization,
        Specialization::Theta,
        "the q form applies to the u := 1 specialization"
    );
    let q = Frac::var(Var::U);
    let v_of_q = (&(&(&q * &q) - &Frac::one()) + &q).div(&q)?;
    Ok(value.value.substitute(&Bindings::new().set(Var::V, v_of_q))?)
}

/// The two-variable skein invariant of the closure of a plain braid
/// word, computed by tying all components together.
pub fn homflypt_value(word: &TiedBraidWord) -> Result<InvariantValue, InvariantError> {
    if !word.is_classical() {
        return Err(InvariantError::TiedInput {
            name: word.name.clone().unwrap_or_else(|| "<unnamed>".to_string()),
        });
    }
    Ok(upsilon(&word.tie_all()))
}

/// Whether two plain braid words close up to links with the same
/// two-variable skein invariant.
pub fn homflypt_equal(
    left: &TiedBraidWord,
    right: &TiedBraidWord,
) -> Result<bool, InvariantError> {
    Ok(homflypt_value(left)?.value == homflypt_value(right)?.value)
}

/// Verify the defining properties of the trace on random elements:
/// normalization, cyclicity, the three removal rules for a final
/// crossing/tied crossing/tie, compatibility with the tower inclusions,
/// and indifference to the detach-partner choice.
pub fn check_trace_rules(max_strands: usize, seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::default();
    let a = Frac::var(Var::A);
    let b = Frac::var(Var::B);

    {
        let mut witness = None;
        for n in 1..=max_strands {
            if TraceEngine::new().trace(&AlgebraElem::one(n)) != Frac::one() {
                witness = Some(format!("identity at {n} strands"));
            }
        }
        push(&mut report, "trace of the identity is one", witness);
    }

    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut witness = None;
        for _ in 0..trials {
            let n = rng.gen_range(2..=max_strands);
            let x = AlgebraElem::random(&mut rng, n, 2);
            let y = AlgebraElem::random(&mut rng, n, 2);
            let mut eng = TraceEngine::new();
            if eng.trace(&x.mul(&y)) != eng.trace(&y.mul(&x)) {
                witness = Some(format!("x = {x}, y = {y}"));
                break;
            }
        }
        push(&mut report, "trace is invariant under cyclic rotation", witness);
    }

    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
        let mut witness = None;
        for _ in 0..trials {
            let n = rng.gen_range(1..max_strands);
            let x = AlgebraElem::random(&mut rng, n, 2);
            let up = x.embed(n + 1);
            let want = &a * &TraceEngine::new().trace(&x);
            let plain = TraceEngine::new().trace(&up.mul_r(n - 1, 1));
            let tied_after = TraceEngine::new().trace(&up.mul_r(n - 1, 1).mul_e(n - 1));
            let tied_before = TraceEngine::new().trace(&up.mul_e(n - 1).mul_r(n - 1, 1));
            if plain != want || tied_after != want || tied_before != want {
                witness = Some(format!("x = {x} at {n} strands"));
                break;
            }
        }
        push(
            &mut report,
            "removing a final crossing costs a, tied or not",
            witness,
        );
    }

    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
        let mut witness = None;
        for _ in 0..trials {
            let n = rng.gen_range(1..max_strands);
            let x = AlgebraElem::random(&mut rng, n, 2);
            let got = TraceEngine::new().trace(&x.embed(n + 1).mul_e(n - 1));
            if got != &b * &TraceEngine::new().trace(&x) {
                witness = Some(format!("x = {x} at {n} strands"));
                break;
            }
        }
        push(&mut report, "removing a final free tie costs b", witness);
    }

    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(3));
        let mut witness = None;
        for _ in 0..trials {
            let n = rng.gen_range(1..max_strands);
            let x = AlgebraElem::random(&mut rng, n, 2);
            if TraceEngine::new().trace(&x.embed(n + 1)) != TraceEngine::new().trace(&x) {
                witness = Some(format!("x = {x} at {n} strands"));
                break;
            }
        }
        push(
            &mut report,
            "tower inclusions preserve the trace",
            witness,
        );
    }

    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(4));
        let mut witness = None;
        for _ in 0..trials {
            let n = rng.gen_range(2..=max_strands);
            let x = AlgebraElem::random(&mut rng, n, 3);
            let largest = TraceEngine::with_partner(PartnerChoice::Largest).trace(&x);
            let smallest = TraceEngine::with_partner(PartnerChoice::Smallest).trace(&x);
            if largest != smallest {
                witness = Some(format!("x = {x}"));
                break;
            }
        }
        push(
            &mut report,
            "the detach partner never affects the value",
            witness,
        );
    }

    report
}

/// Fuzz the full invariant against random move sequences: the value must
/// not change under any move relating presentations of the same tied
/// link, with or without tying everything at the top, and on one
/// component closures ties must not matter at all.
pub fn check_markov_invariance(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut plain_witness = None;
    let mut tied_witness = None;
    for _ in 0..trials {
        let start = random_word(&mut rng, 4, 10, true);
        let mut word = start.clone();
        for _ in 0..rng.gen_range(1..=6) {
            if let Some(mv) = random_move(&word, &mut rng, 5, 12) {
                word = apply_move(&word, &mv);
            }
        }
        if plain_witness.is_none() && upsilon(&word).value != upsilon(&start).value {
            plain_witness = Some(format!(
                "from:\n{}to:\n{}",
                start.to_file_string(),
                word.to_file_string()
            ));
        }
        if tied_witness.is_none()
            && upsilon(&word.tie_all()).value != upsilon(&start.tie_all()).value
        {
            tied_witness = Some(format!(
                "all tied, from:\n{}to:\n{}",
                start.to_file_string(),
                word.to_file_string()
            ));
        }
        if plain_witness.is_some() && tied_witness.is_some() {
            break;
        }
    }
    push(&mut report, "the invariant survives markov moves", plain_witness);
    push(
        &mut report,
        "the all-tied invariant survives markov moves",
        tied_witness,
    );

    // A closure with a single component has nothing to tie together.
    let mut knot_witness = None;
    let mut found = 0;
    for _ in 0..trials.max(20) * 10 {
        if found >= trials.max(5) {
            break;
        }
        let word = random_word(&mut rng, 4, 8, false);
        if word.closure_components().0 != 1 {
            continue;
        }
        found += 1;
        if upsilon(&word).value != upsilon(&word.tie_all()).value {
            knot_witness = Some(word.to_file_string());
            break;
        }
    }
    push(
        &mut report,
        "ties are invisible on one-component closures",
        knot_witness,
    );

    report
}

fn push(report: &mut SuiteReport, name: &str, witness: Option<String>) {
    match witness {
        None => report.push_pass(name),
        Some(w) => report.push_fail(name, w),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiedbraid::Letter;

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

    fn word(strands: usize, letters: Vec<Letter>) -> TiedBraidWord {
        TiedBraidWord::from_letters(strands, letters)
    }

    fn hopf() -> TiedBraidWord {
        word(2, vec![Letter::Sig(0, 1), Letter::Sig(0, 1)])
    }

    fn trefoil() -> TiedBraidWord {
        word(2, vec![Letter::Sig(0, 1); 3])
    }

    #[test]
    fn unknot_is_the_unit() {
        let got = upsilon(&TiedBraidWord::unlink(1));
        assert_eq!(got.value, Scalar::one());
        assert_eq!((got.components, got.classes), (1, 1));
    }

    #[test]
    fn unlink_family() {
        for n in 1..=5i64 {
            let got = upsilon(&TiedBraidWord::unlink(n as usize));
            let want = Scalar::sqrt_c_pow(1 - n).scale(&a().powi(1 - n).unwrap());
            assert_eq!(got.value, want, "{n} circles");
            assert_eq!(got.components, n as usize);
            assert_eq!(got.classes, n as usize);
        }
    }

    #[test]
    fn all_tied_unlink_family() {
        for n in 1..=5i64 {
            let got = upsilon(&TiedBraidWord::unlink(n as usize).tie_all());
            let factor = &b().powi(n - 1).unwrap() * &a().powi(1 - n).unwrap();
            let want = Scalar::sqrt_c_pow(1 - n).scale(&factor);
            assert_eq!(got.value, want, "{n} tied circles");
            assert_eq!(got.classes, 1);

            // Rewriting b through c = (a + b(1-v))/(au) gives the same
            // family as ((uc-1)/(1-v))^(n-1) sqrt(c)^(1-n).
            let c = Scalar::generic_c();
            let alt = (&(&(&u() * &c) - &Frac::one())).div(&(&Frac::one() - &v())).unwrap();
            let alt_want = Scalar::sqrt_c_pow(1 - n).scale(&alt.powi(n - 1).unwrap());
            assert_eq!(got.value, alt_want, "{n} tied circles, c form");
        }
    }

    #[test]
    fn hopf_link_value() {
        let got = upsilon(&hopf());
        let rho = &(&Frac::one() + &(&(&u() - &Frac::one()) * &b()))
            + &(&(&v() - &Frac::one()) * &a());
        let want = Scalar::sqrt_c_pow(1).scale(&rho.div(&a()).unwrap());
        assert_eq!(got.value, want);
        assert_eq!((got.components, got.classes), (2, 2));
        assert!(got.value.even().is_zero(), "two components, even writhe");
    }

    #[test]
    fn tied_hopf_link_value() {
        let got = upsilon(&hopf().tie_all());
        let rho = &(&u() * &b()) + &(&(&v() - &Frac::one()) * &a());
        let want = Scalar::sqrt_c_pow(1).scale(&rho.div(&a()).unwrap());
        assert_eq!(got.value, want);
        assert_eq!((got.components, got.classes), (2, 1));
    }

    #[test]
    fn trefoil_value() {
        let got = upsilon(&trefoil());
        let vm1 = &v() - &Frac::one();
        let rho = &(&a() * &(&u() + &(&vm1 * &vm1))) + &(&(&u() * &vm1) * &b());
        let c = Scalar::generic_c();
        let want = Scalar::sqrt_c_pow(2).scale(&rho.div(&a()).unwrap());
        assert_eq!(got.value, want);
        assert_eq!(got.value.even(), &(&c * &rho.div(&a()).unwrap()));
        assert!(got.value.odd().is_zero(), "knot values are even");
        assert_eq!((got.components, got.classes), (1, 1));
    }

    #[test]
    fn knots_do_not_see_ties() {
        let figure_eight = word(
            3,
            vec![
                Letter::Sig(0, 1),
                Letter::Sig(1, -1),
                Letter::Sig(0, 1),
                Letter::Sig(1, -1),
            ],
        );
        for w in [trefoil(), figure_eight] {
            assert_eq!(w.closure_components().0, 1);
            assert_eq!(upsilon(&w).value, upsilon(&w.tie_all()).value);
        }
    }

    #[test]
    fn specializations_of_the_hopf_link() {
        let generic = upsilon(&hopf());

        // v := 1 collapses c to 1/u and kills the a-term.
        let omega = specialize(&generic, Specialization::Omega).unwrap();
        let c_om = Frac::one().div(&u()).unwrap();
        let rho = &Frac::one() + &(&(&u() - &Frac::one()) * &b());
        let want = Scalar::sqrt_c_pow_of(1, c_om).scale(&rho.div(&a()).unwrap());
        assert_eq!(omega.value, want);

        // v := u keeps the shape with v renamed.
        let delta = specialize(&generic, Specialization::Delta).unwrap();
        let c_d = (&a() + &(&b() * &(&Frac::one() - &u())))
            .div(&(&a() * &u()))
            .unwrap();
        let rho_d = &(&Frac::one() + &(&(&u() - &Frac::one()) * &b()))
            + &(&(&u() - &Frac::one()) * &a());
        let want_d = Scalar::sqrt_c_pow_of(1, c_d).scale(&rho_d.div(&a()).unwrap());
        assert_eq!(delta.value, want_d);

        // u := 1 kills the b-term instead.
        let theta = specialize(&generic, Specialization::Theta).unwrap();
        let c_t = (&a() + &(&b() * &(&Frac::one() - &v()))).div(&a()).unwrap();
        let rho_t = &Frac::one() + &(&(&v() - &Frac::one()) * &a());
        let want_t = Scalar::sqrt_c_pow_of(1, c_t).scale(&rho_t.div(&a()).unwrap());
        assert_eq!(theta.value, want_t);
    }

    #[test]
    fn theta_q_form_meets_omega_at_the_common_point() {
        // Setting q := 1 in the reparameterized theta value and u := 1 in
        // the omega value both land at (u, v) = (1, 1).
        let generic = upsilon(&trefoil());
        let theta = specialize(&generic, Specialization::Theta).unwrap();
        let in_q = theta_in_q(&theta).unwrap();
        let at_q1 = in_q
            .substitute(&Bindings::new().set(Var::U, Frac::one()))
            .unwrap();
        let omega = specialize(&generic, Specialization::Omega).unwrap();
        let at_u1 = omega
            .value
            .substitute(&Bindings::new().set(Var::U, Frac::one()))
            .unwrap();
        assert_eq!(at_q1, at_u1);
    }

    #[test]
    fn skein_reduction_requires_plain_words() {
        let tied = word(2, vec![Letter::Tie(0), Letter::Sig(0, 1)]);
        assert!(matches!(
            homflypt_value(&tied),
            Err(InvariantError::TiedInput { .. })
        ));
        let top = hopf().tie_all();
        assert!(matches!(
            homflypt_value(&top),
            Err(InvariantError::TiedInput { .. })
        ));
    }

    #[test]
    fn skein_reduction_separates_and_identifies() {
        // A stabilized, conjugated presentation of the trefoil.
        let alt = word(
            3,
            vec![
                Letter::Sig(0, -1),
                Letter::Sig(0, 1),
                Letter::Sig(0, 1),
                Letter::Sig(0, 1),
                Letter::Sig(1, 1),
                Letter::Sig(0, 1),
            ],
        );
        assert!(homflypt_equal(&trefoil(), &alt).unwrap());
        assert!(!homflypt_equal(&trefoil(), &TiedBraidWord::unlink(1)).unwrap());
        assert!(!homflypt_equal(&hopf(), &TiedBraidWord::unlink(2)).unwrap());
    }

    #[test]
    fn trace_rule_suite_passes() {
        let report = check_trace_rules(4, 42, 6);
        for c in &report.checks {
            assert!(c.passed, "{}: {:?}", c.name, c.counterexample);
        }
    }

    #[test]
    fn markov_suite_passes() {
        let report = check_markov_invariance(42, 8);
        for c in &report.checks {
            assert!(c.passed, "{}: {:?}", c.name, c.counterexample);
        }
    }
}
