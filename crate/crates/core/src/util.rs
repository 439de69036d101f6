//! Small internal helpers.

/// Union-find with least-index canonical representatives.
///
/// Quotients of element sets are computed by merging related indices; the
/// canonical representative of a class is its least member, which keeps
/// every quotient deterministic.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    min: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            min: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    pub fn union(&mut self, i: usize, j: usize) {
        let a = self.find(i);
        let b = self.find(j);
        if a != b {
            let m = self.min[a].min(self.min[b]);
            self.parent[a] = b;
            self.min[b] = m;
        }
    }

    /// Least index in the class of `i`.
    pub fn canonical(&mut self, i: usize) -> usize {
        let r = self.find(i);
        self.min[r]
    }
}

/// Iterates over all functions `[0, domain) -> [0, codomain)` in
/// lexicographic order, calling `visit` with each table.
pub(crate) fn for_each_function(
    domain: usize,
    codomain: usize,
    mut visit: impl FnMut(&[usize]) -> bool,
) {
    if codomain == 0 && domain > 0 {
        return;
    }
    let mut table = vec![0usize; domain];
    loop {
        if !visit(&table) {
            return;
        }
        let mut k = domain;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            table[k] += 1;
            if table[k] < codomain {
                break;
            }
            table[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_find_least_representative() {
        let mut uf = UnionFind::new(5);
        uf.union(3, 4);
        uf.union(1, 3);
        assert_eq!(uf.canonical(4), 1);
        assert_eq!(uf.canonical(0), 0);
        uf.union(0, 4);
        assert_eq!(uf.canonical(3), 0);
    }

    #[test]
    fn function_enumeration_count() {
        let mut n = 0;
        for_each_function(3, 2, |_| {
            n += 1;
            true
        });
        assert_eq!(n, 8);
    }
}
