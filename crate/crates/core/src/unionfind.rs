/// Disjoint-set forest over `0..len` with path compression and union by rank.
///
/// Roots depend on merge order, so callers that need reproducible output pick
/// class representatives by their own key instead of reading roots directly.
#[derive(Clone, Debug)]
pub struct UnionFind {
    // If `x >= 0`, it's the parent index. If `x < 0`, it's `-rank - 1`.
    parents_or_ranks: Vec<i64>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        Self {
            parents_or_ranks: vec![-1; len],
        }
    }

    pub fn len(&self) -> usize {
        self.parents_or_ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parents_or_ranks.is_empty()
    }

    /// Appends a fresh singleton and returns its index.
    pub fn push(&mut self) -> usize {
        self.parents_or_ranks.push(-1);
        self.parents_or_ranks.len() - 1
    }

    pub fn find(&mut self, mut index: usize) -> usize {
        let mut leader = index;
        while self.parents_or_ranks[leader] >= 0 {
            leader = self.parents_or_ranks[leader] as usize;
        }
        while index != leader {
            index = std::mem::replace(&mut self.parents_or_ranks[index], leader as i64) as usize;
        }
        leader
    }

    /// Read-only lookup without compression.
    pub fn find_const(&self, mut index: usize) -> usize {
        while self.parents_or_ranks[index] >= 0 {
            index = self.parents_or_ranks[index] as usize;
        }
        index
    }

    /// Merges the classes of `a` and `b`; returns `true` if they were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let mut a = self.find(a);
        let mut b = self.find(b);
        if a == b {
            return false;
        }
        let rank_a = self.parents_or_ranks[a];
        let rank_b = self.parents_or_ranks[b];
        if rank_a > rank_b {
            std::mem::swap(&mut a, &mut b);
        } else if rank_a == rank_b {
            self.parents_or_ranks[a] -= 1;
        }
        self.parents_or_ranks[b] = a as i64;
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    /// Dense class labels `0..k`, numbered by first occurrence in index order.
    pub fn labels(&mut self) -> (Vec<usize>, usize) {
        let mut root_label = vec![usize::MAX; self.len()];
        let mut labels = Vec::with_capacity(self.len());
        let mut next = 0;
        for i in 0..self.len() {
            let r = self.find(i);
            if root_label[r] == usize::MAX {
                root_label[r] = next;
                next += 1;
            }
            labels.push(root_label[r]);
        }
        (labels, next)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_are_transitive() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(0, 1));
        assert!(uf.union(3, 4));
        assert!(!uf.union(1, 0));
        assert!(uf.union(1, 4));
        assert!(uf.same(0, 3));
        assert!(!uf.same(2, 0));
        let (labels, count) = uf.labels();
        assert_eq!(count, 2);
        assert_eq!(labels, vec![0, 0, 1, 0, 0]);
    }
}
