/// Union-find whose roots are always the minimal index of their class.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }

    pub fn into_quotient(mut self) -> QuotientSet {
        let n = self.parent.len();
        let mut class_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            let r = self.find(x);
            if r == x {
                class_of[x] = reps.len();
                reps.push(x);
            } else {
                class_of[x] = class_of[r];
            }
        }
        QuotientSet { class_of, reps }
    }
}

/// A finite set of equivalence classes over `0..n`.
///
/// Classes are numbered in order of their minimal member, which is also
/// the stored representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSet {
    class_of: Vec<usize>,
    reps: Vec<usize>,
}

impl QuotientSet {
    pub fn num_classes(&self) -> usize {
        self.reps.len()
    }

    pub fn ambient_size(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn rep(&self, class: usize) -> usize {
        self.reps[class]
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    /// Members of each class, ascending.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.reps.len()];
        for (x, &c) in self.class_of.iter().enumerate() {
            out[c].push(x);
        }
        out
    }
}
