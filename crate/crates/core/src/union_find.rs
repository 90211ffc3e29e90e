/// Disjoint-set forest with path compression.
///
/// Unions are directed: callers decide which root survives, because both the
/// linkage and the skeleton need control over representatives.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut node = x;
        while self.parent[node] != root {
            let next = self.parent[node];
            self.parent[node] = root;
            node = next;
        }
        root
    }

    /// Root of `x` without compressing.
    pub fn root(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    pub fn is_root(&self, x: usize) -> bool {
        self.parent[x] == x
    }

    /// Points the class of `loser` at the root of `survivor`. Returns the
    /// surviving root, or `None` if both were already in one class.
    pub fn union_into(&mut self, loser: usize, survivor: usize) -> Option<usize> {
        let l = self.find(loser);
        let s = self.find(survivor);
        if l == s {
            return None;
        }
        self.parent[l] = s;
        Some(s)
    }
}
