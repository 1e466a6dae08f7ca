//! Permutations of `{0, .., n-1}` in one-line notation.

use rand::Rng;

/// A permutation `w`, stored as the image vector `w(0), .., w(n-1)`.
///
/// Composition is `(w.compose(x))(i) = w(x(i))`. Multiplying on the right
/// by the adjacent transposition `s_i` swaps the one-line entries at
/// positions `i, i+1`, and lengthens the word exactly when `w(i) < w(i+1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u8).collect())
    }

    /// The adjacent transposition `s_i` in `S_n` (`i`, `i+1` swapped).
    pub fn adjacent(n: usize, i: usize) -> Perm {
        assert!(i + 1 < n);
        let mut v: Vec<u8> = (0..n as u8).collect();
        v.swap(i, i + 1);
        Perm(v)
    }

    pub fn from_images(images: Vec<usize>) -> Perm {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            assert!(x < n && !seen[x], "not a permutation");
            seen[x] = true;
        }
        Perm(images.into_iter().map(|x| x as u8).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn inv(&self) -> Perm {
        let mut v = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            v[x as usize] = i as u8;
        }
        Perm(v)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.n(), other.n());
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    /// `w ∘ s_i`: swap the one-line entries at positions `i` and `i+1`.
    pub fn mul_right_adjacent(&self, i: usize) -> Perm {
        let mut v = self.0.clone();
        v.swap(i, i + 1);
        Perm(v)
    }

    /// Coxeter length: the number of inversions.
    pub fn len(&self) -> usize {
        let v = &self.0;
        let mut inv = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Whether right-multiplying by `s_i` shortens the word.
    pub fn has_descent(&self, i: usize) -> bool {
        self.0[i] > self.0[i + 1]
    }

    /// A reduced word `(i_1, .., i_k)` with `w = s_{i_1} ∘ ⋯ ∘ s_{i_k}`.
    ///
    /// Peeling descents off the right end reverses the word, so the
    /// recorded indices come out back to front and are flipped at the end.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut rev = Vec::with_capacity(self.len());
        'outer: while !w.is_identity() {
            for i in 0..w.n() - 1 {
                if w.has_descent(i) {
                    w = w.mul_right_adjacent(i);
                    rev.push(i);
                    continue 'outer;
                }
            }
            unreachable!("non-identity permutation has a descent");
        }
        rev.reverse();
        rev
    }

    /// Embed into `S_m`, fixing the new points.
    pub fn extend(&self, m: usize) -> Perm {
        assert!(m >= self.n());
        let mut v = self.0.clone();
        v.extend(self.n() as u8..m as u8);
        Perm(v)
    }

    /// Drop the last point, which must be fixed.
    pub fn restrict(&self) -> Perm {
        let n = self.n();
        assert!(n > 0 && self.apply(n - 1) == n - 1, "last point not fixed");
        Perm(self.0[..n - 1].to_vec())
    }

    /// Cycles, each sorted internally, ordered by smallest member.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            cyc.sort_unstable();
            out.push(cyc);
        }
        out
    }

    /// Uniform random permutation (Fisher-Yates).
    pub fn random(rng: &mut impl Rng, n: usize) -> Perm {
        let mut v: Vec<u8> = (0..n as u8).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            v.swap(i, j);
        }
        Perm(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::rng;

    #[test]
    fn composition_applies_right_factor_first() {
        // (s_0 ∘ s_1)(2) = s_0(s_1(2)) = s_0(1) = 0.
        let w = Perm::adjacent(3, 0).compose(&Perm::adjacent(3, 1));
        assert_eq!(w.apply(0), 1);
        assert_eq!(w.apply(1), 2);
        assert_eq!(w.apply(2), 0);
    }

    #[test]
    fn right_multiplication_swaps_one_line_entries() {
        let mut r = rng(42);
        for _ in 0..100 {
            let w = Perm::random(&mut r, 6);
            for i in 0..5 {
                assert_eq!(w.mul_right_adjacent(i), w.compose(&Perm::adjacent(6, i)));
            }
        }
    }

    #[test]
    fn length_counts_descents_correctly() {
        let mut r = rng(7);
        for _ in 0..100 {
            let w = Perm::random(&mut r, 6);
            for i in 0..5 {
                let longer = w.mul_right_adjacent(i).len() == w.len() + 1;
                assert_eq!(longer, !w.has_descent(i));
            }
        }
    }

    #[test]
    fn reduced_word_rebuilds_the_permutation() {
        let mut r = rng(11);
        for _ in 0..200 {
            let w = Perm::random(&mut r, 7);
            let word = w.reduced_word();
            assert_eq!(word.len(), w.len());
            let mut rebuilt = Perm::identity(7);
            for i in word {
                rebuilt = rebuilt.mul_right_adjacent(i);
            }
            assert_eq!(rebuilt, w);
        }
    }

    #[test]
    fn inverse_and_cycles() {
        let w = Perm::from_images(vec![2, 0, 1, 3]);
        assert!(w.compose(&w.inv()).is_identity());
        assert_eq!(w.cycles(), vec![vec![0, 1, 2], vec![3]]);
    }
}
