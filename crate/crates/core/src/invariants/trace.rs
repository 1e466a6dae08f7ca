//! The Markov trace on the tower of diagram algebras.
//!
//! The trace is the linear map fixed by: trace of the identity is 1;
//! invariance under cyclic rotation; removing a final crossing (with or
//! without a tie on it) costs `a`; removing a final free tie costs `b`;
//! and compatibility with the tower inclusions. Evaluation is a recursion
//! on basis terms `E_A R_w` that peels off the last strand, using the
//! engine itself to renormalize the intermediate products.

use std::collections::HashMap;

use crate::btalgebra::{AlgebraElem, Perm, SetPartition};
use crate::coeff::{Frac, Var};

/// When the last strand is tied to several others, which mate the
/// recursion detaches through. Any choice yields the same trace; the
/// dedicated suite exercises both.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartnerChoice {
    Largest,
    Smallest,
}

/// A trace evaluator with a per-evaluation memo table keyed on basis
/// terms (partition, permutation); the pair determines its strand count.
#[derive(Debug)]
pub struct TraceEngine {
    memo: HashMap<(SetPartition, Perm), Frac>,
    partner: PartnerChoice,
}

impl Default for TraceEngine {
    fn default() -> Self {
        TraceEngine::new()
    }
}

impl TraceEngine {
    pub fn new() -> TraceEngine {
        TraceEngine::with_partner(PartnerChoice::Largest)
    }

    pub fn with_partner(partner: PartnerChoice) -> TraceEngine {
        TraceEngine {
            memo: HashMap::new(),
            partner,
        }
    }

    /// Trace of a general element: linear extension over its terms.
    pub fn trace(&mut self, x: &AlgebraElem<Frac>) -> Frac {
        let mut out = Frac::zero();
        for ((a, w), c) in x.terms() {
            out = &out + &(c * &self.trace_term(a, w));
        }
        out
    }

    /// Trace of a basis term `E_A R_w`.
    pub fn trace_term(&mut self, a: &SetPartition, w: &Perm) -> Frac {
        let n = a.n();
        assert_eq!(n, w.n());
        if n <= 1 {
            return Frac::one();
        }
        let key = (a.clone(), w.clone());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let last = n - 1;
        let value = if w.apply(last) == last {
            if a.is_singleton(last) {
                // The last strand is untouched: drop down the tower.
                self.trace_term(&a.restrict(), &w.restrict())
            } else {
                self.last_fixed_but_tied(a, w)
            }
        } else {
            self.last_moved(a, w)
        };
        self.memo.insert(key, value.clone());
        value
    }

    fn pick_partner(&self, a: &SetPartition, last: usize) -> usize {
        let mates: Vec<usize> = a
            .block_members(last)
            .into_iter()
            .filter(|&x| x != last)
            .collect();
        match self.partner {
            PartnerChoice::Largest => *mates.last().expect("tied strand has a mate"),
            PartnerChoice::Smallest => mates[0],
        }
    }

    /// `w` fixes the last strand but the partition ties it to `j`:
    /// `E_A R_w = E_{A'} R_w E_{j', last}` with `j' = w^{-1}(j)`. If the
    /// tie is already adjacent it pays `b` immediately; otherwise
    /// conjugating by the crossing chain `R_{j'} ⋯ R_{n-3}` (which fixes
    /// the trace) slides it into adjacent position, and the conjugated
    /// product is renormalized through the engine before descending.
    fn last_fixed_but_tied(&mut self, a: &SetPartition, w: &Perm) -> Frac {
        let n = a.n();
        let last = n - 1;
        let j = self.pick_partner(a, last);
        let detached = a.detach(last);
        let jp = w.inv().apply(j);
        let b = Frac::var(Var::B);
        if jp == last - 1 {
            let lower = self.trace_term(&detached.restrict(), &w.restrict());
            return &b * &lower;
        }
        let mut p: AlgebraElem = AlgebraElem::one(n);
        for g in (jp..=n - 3).rev() {
            p = p.mul_r(g, -1);
        }
        p = p.mul(&AlgebraElem::from_term(n, detached, w.clone(), Frac::one()));
        for g in jp..=n - 3 {
            p = p.mul_r(g, 1);
        }
        let mut out = Frac::zero();
        for ((pa, pw), pc) in p.terms() {
            assert!(
                pw.apply(last) == last && pa.is_singleton(last),
                "conjugated product must live one level down"
            );
            out = &out + &(pc * &self.trace_term(&pa.restrict(), &pw.restrict()));
        }
        &b * &out
    }

    /// `w` moves the last strand: split off the crossing chain carrying it
    /// there, cycle the tail to the front, and pay `a` for the exposed
    /// final crossing (rule two also swallows a tie sitting on it).
    fn last_moved(&mut self, a: &SetPartition, w: &Perm) -> Frac {
        let n = a.n();
        let last = n - 1;
        let p = w.inv().apply(last);
        debug_assert!(p < last);
        // gamma sends p to the end and shifts the tail down by one;
        // w = w' ∘ gamma with lengths adding, so R_w = R_{w'} R_{n-2} ⋯ R_p.
        let mut images: Vec<usize> = Vec::with_capacity(n);
        for k in 0..n {
            images.push(match k.cmp(&p) {
                std::cmp::Ordering::Less => k,
                std::cmp::Ordering::Equal => last,
                std::cmp::Ordering::Greater => k - 1,
            });
        }
        let gamma = Perm::from_images(images);
        let wp = w.compose(&gamma.inv());
        debug_assert_eq!(wp.apply(last), last);
        debug_assert_eq!(wp.len() + (last - p), w.len());

        // The element is X · R_{n-2} · tail with X = E_{A1} R_{w'} (a tie
        // between the last strand and j rides across as E_{j'', n-2} into
        // the tail, or is absorbed by the crossing when already adjacent).
        let (x_part, mut tie_for_tail) = if a.is_singleton(last) {
            (a.clone(), None)
        } else {
            let j = self.pick_partner(a, last);
            let jpp = wp.inv().apply(j);
            if jpp == last - 1 {
                (a.detach(last), None)
            } else {
                (a.detach(last), Some(jpp))
            }
        };
        let x = AlgebraElem::from_term(n, x_part, wp, Frac::one());
        let mut y: AlgebraElem = AlgebraElem::one(n);
        if let Some(jpp) = tie_for_tail.take() {
            y = y.mul_e_pair(jpp, n - 2);
        }
        if n >= 3 {
            for g in (p..=n - 3).rev() {
                y = y.mul_r(g, 1);
            }
        }
        let q = y.mul(&x);
        let mut out = Frac::zero();
        for ((qa, qw), qc) in q.terms() {
            assert!(
                qw.apply(last) == last && qa.is_singleton(last),
                "cycled product must live one level down"
            );
            out = &out + &(qc * &self.trace_term(&qa.restrict(), &qw.restrict()));
        }
        &Frac::var(Var::A) * &out
    }
}
