//! Set partitions of `{0, .., n-1}` and the disjoint-set helper behind them.

use super::Perm;
use rand::Rng;

/// Union-find over `0..n` with path halving; no rank, the sets are tiny.
#[derive(Debug, Clone)]
pub struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    pub fn new(n: usize) -> DisjointSet {
        DisjointSet {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn unite(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            // Smaller root wins so roots stay canonical-ish; normalization
            // happens in SetPartition anyway.
            let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
            self.parent[hi] = lo;
        }
    }

    pub fn same(&mut self, x: usize, y: usize) -> bool {
        self.find(x) == self.find(y)
    }

    pub fn component_count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// A partition of `{0, .., n-1}`, stored canonically: `block_id[i]` is the
/// smallest member of the block containing `i`. Structural equality and
/// ordering are therefore mathematical.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetPartition(Vec<u8>);

impl SetPartition {
    pub fn singletons(n: usize) -> SetPartition {
        SetPartition((0..n as u8).collect())
    }

    pub fn one_block(n: usize) -> SetPartition {
        SetPartition(vec![0; n])
    }

    fn from_dsu(mut dsu: DisjointSet, n: usize) -> SetPartition {
        // Roots are minimal already only by luck; recompute the minimum of
        // each class explicitly.
        let mut min_of_root = vec![u8::MAX; n];
        for i in 0..n {
            let r = dsu.find(i);
            min_of_root[r] = min_of_root[r].min(i as u8);
        }
        let mut ids = vec![0u8; n];
        for i in 0..n {
            ids[i] = min_of_root[dsu.find(i)];
        }
        SetPartition(ids)
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> SetPartition {
        let mut dsu = DisjointSet::new(n);
        for &(p, q) in pairs {
            dsu.unite(p, q);
        }
        SetPartition::from_dsu(dsu, n)
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> SetPartition {
        let mut dsu = DisjointSet::new(n);
        for block in blocks {
            for w in block.windows(2) {
                dsu.unite(w[0], w[1]);
            }
        }
        SetPartition::from_dsu(dsu, n)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn same_block(&self, p: usize, q: usize) -> bool {
        self.0[p] == self.0[q]
    }

    pub fn is_singleton(&self, i: usize) -> bool {
        self.0[i] == i as u8 && !self.0.iter().skip(i + 1).any(|&b| b == i as u8)
    }

    pub fn block_count(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .filter(|&(i, &b)| b == i as u8)
            .count()
    }

    pub fn block_members(&self, i: usize) -> Vec<usize> {
        let id = self.0[i];
        (0..self.n()).filter(|&j| self.0[j] == id).collect()
    }

    /// Blocks, each sorted, ordered by smallest member.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.n() {
            if self.0[i] == i as u8 {
                out.push(self.block_members(i));
            }
        }
        out
    }

    /// The partition with the blocks of `p` and `q` merged.
    pub fn join_pair(&self, p: usize, q: usize) -> SetPartition {
        if self.same_block(p, q) {
            return self.clone();
        }
        let mut ids = self.0.clone();
        let (keep, absorb) = if ids[p] < ids[q] {
            (ids[p], ids[q])
        } else {
            (ids[q], ids[p])
        };
        for b in ids.iter_mut() {
            if *b == absorb {
                *b = keep;
            }
        }
        SetPartition(ids)
    }

    /// Common refinement-closure: the finest partition coarser than both.
    pub fn join(&self, other: &SetPartition) -> SetPartition {
        assert_eq!(self.n(), other.n());
        let mut dsu = DisjointSet::new(self.n());
        for i in 0..self.n() {
            dsu.unite(i, self.0[i] as usize);
            dsu.unite(i, other.0[i] as usize);
        }
        SetPartition::from_dsu(dsu, self.n())
    }

    /// Image partition: `i ~ j` in the result iff `w⁻¹(i) ~ w⁻¹(j)` here.
    pub fn apply_perm(&self, w: &Perm) -> SetPartition {
        assert_eq!(self.n(), w.n());
        let pairs: Vec<(usize, usize)> = (0..self.n())
            .map(|i| (w.apply(i), w.apply(self.0[i] as usize)))
            .collect();
        SetPartition::from_pairs(self.n(), &pairs)
    }

    /// Extend with new singleton points.
    pub fn extend(&self, m: usize) -> SetPartition {
        assert!(m >= self.n());
        let mut ids = self.0.clone();
        ids.extend(self.n() as u8..m as u8);
        SetPartition(ids)
    }

    /// Drop the last point, which must be a singleton.
    pub fn restrict(&self) -> SetPartition {
        let n = self.n();
        assert!(n > 0 && self.is_singleton(n - 1), "last point not free");
        SetPartition(self.0[..n - 1].to_vec())
    }

    /// Make `i` a singleton, leaving the rest of its block tied.
    pub fn detach(&self, i: usize) -> SetPartition {
        let mut dsu = DisjointSet::new(self.n());
        for j in 0..self.n() {
            if j != i && self.0[j] as usize != i {
                dsu.unite(j, self.0[j] as usize);
            }
        }
        // Re-tie the remainder of i's block below its old minimum.
        let members: Vec<usize> = self.block_members(i).into_iter().filter(|&j| j != i).collect();
        for w in members.windows(2) {
            dsu.unite(w[0], w[1]);
        }
        SetPartition::from_dsu(dsu, self.n())
    }

    /// Random partition generated from a few random unions.
    pub fn random(rng: &mut impl Rng, n: usize) -> SetPartition {
        let mut dsu = DisjointSet::new(n);
        if n > 1 {
            let joins = rng.gen_range(0..n);
            for _ in 0..joins {
                let p = rng.gen_range(0..n);
                let q = rng.gen_range(0..n);
                dsu.unite(p, q);
            }
        }
        SetPartition::from_dsu(dsu, n)
    }
}
