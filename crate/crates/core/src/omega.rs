//! The `v := 1` invariant, its closed-form evaluation from linking data,
//! and the skein relations of the full invariant.
//!
//! At `v = 1` the invariant stops seeing anything about a tied link
//! beyond its class-level linking graph: the value is a sum over edge
//! subsets of that graph. This module provides that direct evaluation
//! ([`omega_fast`]), the inverse direction recovering component and
//! class counts from the shape of a value ([`omega_exponents`]), and the
//! randomized suites tying it all together: the crossing-switch skein
//! relations of the generic invariant, their `v = 1` shadows, the
//! disjoint-union rules, and exact agreement between the graph
//! evaluation and the trace engine.

use std::error::Error;
use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::btalgebra::{DisjointSet, SetPartition, SuiteReport};
use crate::coeff::{Frac, MPoly, Scalar, Var};
use crate::invariants::{specialize, upsilon, InvariantValue, Specialization};
use crate::tiedbraid::{random_word, Letter, TiedBraidWord};

/// Evaluate the `v := 1` invariant from the class linking graph alone.
///
/// With `m` components, tie classes as vertices and aggregated linking
/// numbers `l(e)` as edge weights, the value is
///
/// ```text
/// (sqrt(u)/a)^(m-1) * sum over S of edges:
///     prod_{e not in S} u^(-l(e)) * prod_{e in S} (1 - u^(-l(e))) * b^(m - h(S))
/// ```
///
/// where `h(S)` counts the classes left after merging along `S`. The
/// agreement suite checks this equals the trace route on random words.
pub fn omega_fast(word: &TiedBraidWord) -> InvariantValue {
    let graph = word.clinking_graph();
    let m = graph.components;
    let k = graph.classes;
    assert!(graph.edges.len() <= 20, "edge subset sum is exponential");
    let u = Frac::var(Var::U);
    let b = Frac::var(Var::B);
    let mut sum = Frac::zero();
    for mask in 0u32..1 << graph.edges.len() {
        let mut merged = DisjointSet::new(k);
        let mut prod = Frac::one();
        for (i, &(x, y, w)) in graph.edges.iter().enumerate() {
            let uw = u.powi(-w).expect("u is invertible");
            if mask >> i & 1 == 1 {
                prod = &prod * &(&Frac::one() - &uw);
                merged.unite(x, y);
            } else {
                prod = &prod * &uw;
            }
        }
        let h = merged.component_count();
        prod = &prod * &b.powi((m - h) as i64).expect("nonnegative power");
        sum = &sum + &prod;
    }
    // sqrt(u) = u * sqrt(c) for c = 1/u, so (sqrt(u)/a)^(m-1) becomes
    // (u/a)^(m-1) * sqrt(c)^(m-1).
    let c_omega = Frac::new(MPoly::one(), MPoly::var(Var::U));
    let m = m as i64;
    let norm = u.div(&Frac::var(Var::A)).expect("a is invertible").powi(m - 1).expect("unit ratio");
    let value = Scalar::sqrt_c_pow_of(m - 1, c_omega).scale(&(&norm * &sum));
    InvariantValue {
        value,
        strands: word.strands,
        exponent_sum: word.exponent_sum(),
        components: graph.components,
        classes: graph.classes,
        specialization: Specialization::Omega,
    }
}

/// Component and class counts read back off the shape of a `v := 1`
/// value, with the exponents that encode them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OmegaExponents {
    pub components: usize,
    pub classes: usize,
    /// The uniform exponent of `a`; components = 1 - a_exponent.
    pub a_exponent: i64,
    /// The smallest exponent of `b`; classes = components - min_b_exponent.
    pub min_b_exponent: i64,
}

/// Ways a scalar can fail to have the shape of a `v := 1` invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OmegaError {
    NotSpecialized,
    ZeroValue,
    BothParitiesPresent,
    WrongParity { components: usize },
    DenominatorNotMonomial { rendered: String },
    MixedAExponent { rendered: String },
    ExponentOutOfRange { a_exponent: i64, min_b_exponent: i64 },
}

impl fmt::Display for OmegaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaError::NotSpecialized => {
                write!(f, "exponent laws apply to the v := 1 specialization")
            }
            OmegaError::ZeroValue => write!(f, "the zero scalar encodes no link data"),
            OmegaError::BothParitiesPresent => {
                write!(f, "both sqrt(c) parities present; not an invariant value")
            }
            OmegaError::WrongParity { components } => {
                write!(f, "sqrt(c) parity contradicts {components} components")
            }
            OmegaError::DenominatorNotMonomial { rendered } => {
                write!(f, "denominator is not a monomial in u and a: {rendered}")
            }
            OmegaError::MixedAExponent { rendered } => {
                write!(f, "terms disagree on the exponent of a: {rendered}")
            }
            OmegaError::ExponentOutOfRange {
                a_exponent,
                min_b_exponent,
            } => write!(
                f,
                "exponents a^{a_exponent}, b^{min_b_exponent} encode no positive counts"
            ),
        }
    }
}

impl Error for OmegaError {}

/// Recover component and class counts from a `v := 1` value.
///
/// Every monomial of such a value carries the same power of `a`, namely
/// `1 - components`, and the smallest power of `b` is `components -
/// classes`. Values that violate the shape (which no actual invariant
/// value does) produce a structural error.
pub fn omega_exponents(value: &InvariantValue) -> Result<OmegaExponents, OmegaError> {
    if value.specialization != Specialization::Omega {
        return Err(OmegaError::NotSpecialized);
    }
    let (even_zero, odd_zero) = (value.value.even().is_zero(), value.value.odd().is_zero());
    let active = match (even_zero, odd_zero) {
        (true, true) => return Err(OmegaError::ZeroValue),
        (false, false) => return Err(OmegaError::BothParitiesPresent),
        (false, true) => value.value.even(),
        (true, false) => value.value.odd(),
    };

    let den = active.den();
    if den.term_count() != 1 {
        return Err(OmegaError::DenominatorNotMonomial {
            rendered: format!("{den}"),
        });
    }
    let den_mono = *den.terms().next().expect("one term").0;
    let (bi, ai) = (Var::B.index(), Var::A.index());
    if den_mono.0[bi] != 0 {
        return Err(OmegaError::DenominatorNotMonomial {
            rendered: format!("{den}"),
        });
    }

    let mut a_exp = None;
    let mut min_b = None;
    for (mono, _) in active.num().terms() {
        let a_here = mono.0[ai] as i64 - den_mono.0[ai] as i64;
        if *a_exp.get_or_insert(a_here) != a_here {
            return Err(OmegaError::MixedAExponent {
                rendered: format!("{}", active.num()),
            });
        }
        let b_here = mono.0[bi] as i64;
        min_b = Some(min_b.map_or(b_here, |m: i64| m.min(b_here)));
    }
    let (a_exponent, min_b_exponent) = (a_exp.expect("nonzero"), min_b.expect("nonzero"));

    let components = 1 - a_exponent;
    let classes = components - min_b_exponent;
    if components < 1 || classes < 1 {
        return Err(OmegaError::ExponentOutOfRange {
            a_exponent,
            min_b_exponent,
        });
    }
    let components = components as usize;
    if (components % 2 == 1) != odd_zero {
        return Err(OmegaError::WrongParity { components });
    }
    Ok(OmegaExponents {
        components,
        classes: classes as usize,
        a_exponent,
        min_b_exponent,
    })
}

/// The five words differing only at one crossing site: positive,
/// negative, tie, tied positive, tied negative.
fn crossing_variants(
    word: &TiedBraidWord,
    pos: usize,
) -> [TiedBraidWord; 5] {
    let g = match word.letters[pos] {
        Letter::Sig(g, _) => g,
        Letter::Tie(g) => g,
    };
    [
        word.replace_letters(pos, 1, &[Letter::Sig(g, 1)]),
        word.replace_letters(pos, 1, &[Letter::Sig(g, -1)]),
        word.replace_letters(pos, 1, &[Letter::Tie(g)]),
        word.replace_letters(pos, 1, &[Letter::Tie(g), Letter::Sig(g, 1)]),
        word.replace_letters(pos, 1, &[Letter::Tie(g), Letter::Sig(g, -1)]),
    ]
}

/// Add a split unknotted circle, optionally tied to the strand `tie_to`.
fn with_extra_circle(word: &TiedBraidWord, tie_to: Option<usize>) -> TiedBraidWord {
    let n = word.strands;
    let mut top_ties = word.top_ties.extend(n + 1);
    if let Some(x) = tie_to {
        top_ties = top_ties.join_pair(x, n);
    }
    TiedBraidWord {
        strands: n + 1,
        top_ties,
        ..word.clone()
    }
}

/// Verify the crossing-switch relations on random words: the two
/// four-term relations and the two resolution relations of the generic
/// invariant, their `v := 1` shadows (where the tied terms glue into a
/// three-term relation and the tied crossing forgets its sign), and the
/// disjoint-union rules for an extra circle, free or tied.
pub fn check_skein_rules(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let u = Frac::var(Var::U);
    let v = Frac::var(Var::V);
    let one = Frac::one();
    let vm1_over_u = (&v - &one).div(&u).expect("u invertible");
    let one_minus_uinv = &one - &u.inv().expect("u invertible");

    let mut four_term = None;
    let mut tied_four_term = None;
    let mut resolve_plus = None;
    let mut resolve_minus = None;
    let mut three_term = None;
    let mut sign_blind = None;
    for _ in 0..trials {
        let mut word = random_word(&mut rng, 4, 8, true);
        if rng.gen_bool(0.3) {
            word.top_ties = SetPartition::random(&mut rng, word.strands);
        }
        if word.letters.is_empty() {
            continue;
        }
        let pos = rng.gen_range(0..word.letters.len());
        let [wp, wm, wt, wpt, wmt] = crossing_variants(&word, pos);
        let up = upsilon(&wp).value;
        let um = upsilon(&wm).value;
        let ut = upsilon(&wt).value;
        let upt = upsilon(&wpt).value;
        let umt = upsilon(&wmt).value;
        let witness = || format!("site {pos} of:\n{}", word.to_file_string());

        // (1/sqrt c) U+ - sqrt(c) U- = ((v-1)/u) U~ + (1/sqrt c)(1 - 1/u) U+~
        let lhs = up.mul_sqrt_c_pow(-1).sub(&um.mul_sqrt_c_pow(1));
        let rhs = ut
            .scale(&vm1_over_u)
            .add(&upt.mul_sqrt_c_pow(-1).scale(&one_minus_uinv));
        if four_term.is_none() && lhs != rhs {
            four_term = Some(witness());
        }

        // (1/(u sqrt c)) U+~ - sqrt(c) U-~ = ((v-1)/u) U~
        let lhs = upt
            .mul_sqrt_c_pow(-1)
            .scale(&u.inv().expect("u invertible"))
            .sub(&umt.mul_sqrt_c_pow(1));
        if tied_four_term.is_none() && lhs != ut.scale(&vm1_over_u) {
            tied_four_term = Some(witness());
        }

        // (1/sqrt c) U+ = sqrt(c) [U- + (u-1) U-~] + (v-1) U~
        let rhs = um
            .add(&umt.scale(&(&u - &one)))
            .mul_sqrt_c_pow(1)
            .add(&ut.scale(&(&v - &one)));
        if resolve_plus.is_none() && up.mul_sqrt_c_pow(-1) != rhs {
            resolve_plus = Some(witness());
        }

        // sqrt(c) U- = (1/sqrt c) [U+ + ((1-u)/u) U+~] + ((1-v)/u) U~
        let rhs = up
            .add(&upt.scale(&(&one - &u).div(&u).expect("u invertible")))
            .mul_sqrt_c_pow(-1)
            .add(&ut.scale(&(&one - &v).div(&u).expect("u invertible")));
        if resolve_minus.is_none() && um.mul_sqrt_c_pow(1) != rhs {
            resolve_minus = Some(witness());
        }

        // At v := 1: sqrt(u) O+ - (1/sqrt u) O- + sqrt(u)(1/u - 1) O+~ = 0,
        // and the tied crossing forgets its sign.
        let at_v1 = Specialization::Omega.bindings();
        let op = up.substitute(&at_v1).expect("v-free denominators");
        let om = um.substitute(&at_v1).expect("v-free denominators");
        let opt = upt.substitute(&at_v1).expect("v-free denominators");
        let omt = umt.substitute(&at_v1).expect("v-free denominators");
        let residue = op
            .mul_sqrt_c_pow(-1)
            .sub(&om.mul_sqrt_c_pow(1))
            .sub(&opt.mul_sqrt_c_pow(-1).scale(&one_minus_uinv));
        if three_term.is_none() && !residue.is_zero() {
            three_term = Some(witness());
        }
        if sign_blind.is_none() && opt != omt {
            sign_blind = Some(witness());
        }
    }
    push(&mut report, "four-term crossing switch", four_term);
    push(&mut report, "four-term switch at a tied crossing", tied_four_term);
    push(&mut report, "positive crossing resolution", resolve_plus);
    push(&mut report, "negative crossing resolution", resolve_minus);
    push(&mut report, "three-term switch at v = 1", three_term);
    push(
        &mut report,
        "tied crossings forget their sign at v = 1",
        sign_blind,
    );

    // Disjoint-union rules at v = 1, on the graph evaluation.
    let mut free_circle = None;
    let mut tied_circle = None;
    for _ in 0..trials {
        let mut word = random_word(&mut rng, 4, 8, true);
        if rng.gen_bool(0.3) {
            word.top_ties = SetPartition::random(&mut rng, word.strands);
        }
        let base = omega_fast(&word).value;
        let ainv = Frac::var(Var::A).inv().expect("a invertible");
        let free = omega_fast(&with_extra_circle(&word, None)).value;
        if free_circle.is_none() && free != base.mul_sqrt_c_pow(-1).scale(&ainv) {
            free_circle = Some(word.to_file_string());
        }
        let x = rng.gen_range(0..word.strands);
        let tied = omega_fast(&with_extra_circle(&word, Some(x))).value;
        let b_over_a = &Frac::var(Var::B) * &ainv;
        if tied_circle.is_none() && tied != base.mul_sqrt_c_pow(-1).scale(&b_over_a) {
            tied_circle = Some(format!("circle tied to strand {x} of:\n{}", word.to_file_string()));
        }
    }
    push(
        &mut report,
        "a split circle multiplies by sqrt(u)/a at v = 1",
        free_circle,
    );
    push(
        &mut report,
        "a tied split circle multiplies by b sqrt(u)/a at v = 1",
        tied_circle,
    );

    report
}

/// Verify on random words that the graph evaluation, the trace engine at
/// `v := 1`, and the exponent laws all agree, and that words with the
/// same component count and canonical linking graph get the same value.
pub fn check_engine_agreement(seed: u64, trials: usize) -> SuiteReport {
    let mut report = SuiteReport::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // The value is a function of the component count and the canonical
    // weighted class graph; the count is not redundant (an all-tied
    // two-component link and an unknot share the one-vertex graph).
    type GraphShape = (usize, (usize, Vec<(usize, usize, i64)>));
    let mut engines = None;
    let mut exponents = None;
    let mut buckets: std::collections::BTreeMap<GraphShape, (Scalar, String)> =
        std::collections::BTreeMap::new();
    let mut bucketing = None;
    for _ in 0..trials {
        let mut word = random_word(&mut rng, 4, 8, true);
        if rng.gen_bool(0.3) {
            word.top_ties = SetPartition::random(&mut rng, word.strands);
        }
        let fast = omega_fast(&word);
        let slow = specialize(&upsilon(&word), Specialization::Omega).expect("v-free denominators");
        if engines.is_none() && fast.value != slow.value {
            engines = Some(word.to_file_string());
        }

        let (m, _) = word.closure_components();
        let k = word.class_partition().block_count();
        for value in [&fast, &slow] {
            let ex = omega_exponents(value);
            if exponents.is_none()
                && ex != Ok(OmegaExponents {
                    components: m,
                    classes: k,
                    a_exponent: 1 - m as i64,
                    min_b_exponent: (m - k) as i64,
                })
            {
                exponents = Some(format!("{ex:?} for m={m} k={k}:\n{}", word.to_file_string()));
            }
        }

        let shape = (m, word.clinking_graph().canonical_form());
        match buckets.get(&shape) {
            None => {
                buckets.insert(shape, (fast.value.clone(), word.to_file_string()));
            }
            Some((earlier, from)) => {
                if bucketing.is_none() && &fast.value != earlier {
                    bucketing = Some(format!(
                        "same canonical graph, different values:\n{}vs\n{from}",
                        word.to_file_string()
                    ));
                }
            }
        }
    }
    push(
        &mut report,
        "graph evaluation matches the trace engine at v = 1",
        engines,
    );
    push(
        &mut report,
        "exponent laws recover component and class counts",
        exponents,
    );
    push(
        &mut report,
        "component count and canonical graph determine the value",
        bucketing,
    );

    report
}

fn push(report: &mut SuiteReport, name: &str, witness: Option<String>) {
    match witness {
        None => report.push_pass(name),
        Some(w) => report.push_fail(name, w),
    }
}
