//! Normal-form elements `Σ coeff · E_A · R_w` and their multiplication.

use std::collections::BTreeMap;
use std::fmt;

use super::{Perm, SetPartition};
use crate::coeff::{DeltaExt, Frac, Var};
use crate::tiedbraid::{Letter, TiedBraidWord};
use rand::Rng;

/// Coefficient rings the algebra can be defined over: the fraction field
/// itself, and its quadratic extension by the deformation root.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_frac(f: Frac) -> Self;
}

impl Coeff for Frac {
    fn zero() -> Self {
        Frac::zero()
    }
    fn one() -> Self {
        Frac::one()
    }
    fn is_zero(&self) -> bool {
        Frac::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_frac(f: Frac) -> Self {
        f
    }
}

impl Coeff for DeltaExt {
    fn zero() -> Self {
        DeltaExt::zero()
    }
    fn one() -> Self {
        DeltaExt::one()
    }
    fn is_zero(&self) -> bool {
        DeltaExt::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        DeltaExt::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        DeltaExt::mul(self, other)
    }
    fn neg(&self) -> Self {
        DeltaExt::neg(self)
    }
    fn from_frac(f: Frac) -> Self {
        DeltaExt::from_frac(f)
    }
}

/// An element of the algebra on `n` strands in normal form: a finite sum
/// of basis terms `E_A R_w` over (partition, permutation) pairs, with no
/// zero coefficients stored.
///
/// All multiplication happens on the right by generators; the rewrite into
/// normal form uses the quadratic relation for a descent and the transport
/// rule `R_w E_{p,q} = E_{w(p),w(q)} R_w` to move ties past crossings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElem<C: Coeff = Frac> {
    n: usize,
    terms: BTreeMap<(SetPartition, Perm), C>,
}

fn u_minus_1() -> Frac {
    &Frac::var(Var::U) - &Frac::one()
}

fn v_minus_1() -> Frac {
    &Frac::var(Var::V) - &Frac::one()
}

/// `(1-v)/u` and `(1/u - 1)`: the inverse-expansion coefficients.
fn inv_tie_coeff() -> Frac {
    (&Frac::one() - &Frac::var(Var::V))
        .div(&Frac::var(Var::U))
        .expect("u is nonzero")
}

fn inv_tie_cross_coeff() -> Frac {
    &Frac::var(Var::U).inv().expect("u is nonzero") - &Frac::one()
}

impl<C: Coeff> AlgebraElem<C> {
    pub fn zero(n: usize) -> Self {
        AlgebraElem {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        AlgebraElem::from_term(
            n,
            SetPartition::singletons(n),
            Perm::identity(n),
            C::one(),
        )
    }

    pub fn from_term(n: usize, a: SetPartition, w: Perm, coeff: C) -> Self {
        assert!(a.n() == n && w.n() == n);
        let mut e = AlgebraElem::zero(n);
        e.add_term(a, w, coeff);
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(SetPartition, Perm), &C)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, a: SetPartition, w: Perm, coeff: C) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((a, w)) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for ((a, w), c) in &other.terms {
            out.add_term(a.clone(), w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for ((a, w), c) in &other.terms {
            out.add_term(a.clone(), w.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, f: &C) -> Self {
        let mut out = AlgebraElem::zero(self.n);
        for ((a, w), c) in &self.terms {
            out.add_term(a.clone(), w.clone(), c.mul(f));
        }
        out
    }

    pub fn scale_frac(&self, f: &Frac) -> Self {
        self.scale(&C::from_frac(f.clone()))
    }

    /// Right-multiply by the tie generator on positions `i, i+1`.
    pub fn mul_e(&self, i: usize) -> Self {
        assert!(i + 1 < self.n);
        let mut out = AlgebraElem::zero(self.n);
        for ((a, w), c) in &self.terms {
            let joined = a.join_pair(w.apply(i), w.apply(i + 1));
            out.add_term(joined, w.clone(), c.clone());
        }
        out
    }

    /// Right-multiply by the generalized tie on positions `p, q`.
    pub fn mul_e_pair(&self, p: usize, q: usize) -> Self {
        assert!(p < self.n && q < self.n && p != q);
        let mut out = AlgebraElem::zero(self.n);
        for ((a, w), c) in &self.terms {
            let joined = a.join_pair(w.apply(p), w.apply(q));
            out.add_term(joined, w.clone(), c.clone());
        }
        out
    }

    /// Left-multiply by the ties of a whole partition: coarsen every term.
    pub fn left_mul_partition(&self, part: &SetPartition) -> Self {
        assert_eq!(part.n(), self.n);
        let mut out = AlgebraElem::zero(self.n);
        for ((a, w), c) in &self.terms {
            out.add_term(a.join(part), w.clone(), c.clone());
        }
        out
    }

    /// Right-multiply by the crossing generator (`sign = 1`) or its
    /// inverse (`sign = -1`) on positions `i, i+1`.
    pub fn mul_r(&self, i: usize, sign: i8) -> Self {
        assert!(i + 1 < self.n);
        match sign {
            1 => self.mul_r_positive(i),
            -1 => {
                // R_i^{-1} = R_i + (1-v)/u E_i + (1/u - 1) E_i R_i.
                let xr = self.mul_r_positive(i);
                let xe = self.mul_e(i);
                let xer = xe.mul_r_positive(i);
                xr.add(&xe.scale(&C::from_frac(inv_tie_coeff())))
                    .add(&xer.scale(&C::from_frac(inv_tie_cross_coeff())))
            }
            _ => panic!("sign must be ±1"),
        }
    }

    fn mul_r_positive(&self, i: usize) -> Self {
        let um1 = C::from_frac(u_minus_1());
        let vm1 = C::from_frac(v_minus_1());
        let mut out = AlgebraElem::zero(self.n);
        for ((a, w), c) in &self.terms {
            if !w.has_descent(i) {
                // Reduced case: the word just grows.
                out.add_term(a.clone(), w.mul_right_adjacent(i), c.clone());
            } else {
                // w = w' s_i with w' shorter; R_w R_i = R_{w'} R_i^2 and the
                // quadratic relation expands, with the tie transported to
                // the left of R_{w'}.
                let shorter = w.mul_right_adjacent(i);
                let pair = (shorter.apply(i), shorter.apply(i + 1));
                let joined = a.join_pair(pair.0, pair.1);
                out.add_term(a.clone(), shorter.clone(), c.clone());
                out.add_term(joined.clone(), shorter, c.mul(&um1));
                out.add_term(joined, w.clone(), c.mul(&vm1));
            }
        }
        out
    }

    /// Right-multiply by `R_w` along a reduced word for `w`.
    pub fn mul_perm(&self, w: &Perm) -> Self {
        let mut out = self.clone();
        for i in w.reduced_word() {
            out = out.mul_r(i, 1);
        }
        out
    }

    /// Full product in the algebra.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = AlgebraElem::zero(self.n);
        for ((b, sigma), d) in &other.terms {
            // x · (E_B R_σ): coarsen by B on the right, then walk σ.
            let mut partial = AlgebraElem::zero(self.n);
            for ((a, w), c) in &self.terms {
                partial.add_term(a.join(&b.apply_perm(w)), w.clone(), c.clone());
            }
            partial = partial.mul_perm(sigma);
            out = out.add(&partial.scale(d));
        }
        out
    }

    /// Embed into the algebra on `m` strands.
    pub fn embed(&self, m: usize) -> Self {
        assert!(m >= self.n);
        let mut out = AlgebraElem::zero(m);
        for ((a, w), c) in &self.terms {
            out.add_term(a.extend(m), w.extend(m), c.clone());
        }
        out
    }

    /// Apply one word letter on the right.
    pub fn mul_letter(&self, l: Letter) -> Self {
        match l {
            Letter::Sig(g, s) => self.mul_r(g, s),
            Letter::Tie(g) => self.mul_e(g),
        }
    }
}

impl AlgebraElem<Frac> {
    /// Substitute into every coefficient; fails only if a coefficient
    /// denominator vanishes (never for the specializations used here).
    pub fn substitute(
        &self,
        bindings: &crate::coeff::Bindings,
    ) -> Result<Self, crate::coeff::CoeffError> {
        let mut out = AlgebraElem::zero(self.n);
        for ((a, w), c) in &self.terms {
            out.add_term(a.clone(), w.clone(), c.substitute(bindings)?);
        }
        Ok(out)
    }

    /// Random small element for the randomized identity suites.
    pub fn random(rng: &mut impl Rng, n: usize, max_terms: usize) -> Self {
        let mut out = AlgebraElem::zero(n);
        let k = rng.gen_range(1..=max_terms.max(1));
        for _ in 0..k {
            out.add_term(
                SetPartition::random(rng, n),
                Perm::random(rng, n),
                Frac::random(rng),
            );
        }
        out
    }
}

impl<C: Coeff> fmt::Display for AlgebraElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((a, w), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{c:?}]·E")?;
            let tied: Vec<Vec<usize>> = a.blocks().into_iter().filter(|b| b.len() > 1).collect();
            if tied.is_empty() {
                write!(f, "{{}}")?;
            }
            for block in tied {
                let human: Vec<String> = block.iter().map(|x| (x + 1).to_string()).collect();
                write!(f, "{{{}}}", human.join(","))?;
            }
            let images: Vec<String> = (0..w.n()).map(|i| (w.apply(i) + 1).to_string()).collect();
            write!(f, "·R[{}]", images.join(" "))?;
        }
        Ok(())
    }
}

/// Map a tied braid word to its algebra element, together with the
/// exponent sum of the word (the power of the rescaling square root the
/// invariant normalization owes it).
pub fn elem_from_word(word: &TiedBraidWord) -> (AlgebraElem<Frac>, i64) {
    let mut elem = AlgebraElem::one(word.strands);
    for &l in &word.letters {
        elem = elem.mul_letter(l);
    }
    // Closure-level ties join components no matter where along the braid
    // they are attached; putting them at the top keeps the indices the
    // strand indices.
    if word.has_top_ties() {
        elem = elem.left_mul_partition(&word.top_ties);
    }
    (elem, word.exponent_sum())
}
