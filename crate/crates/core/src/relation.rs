//! Dense boolean relation on `0..n`.

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            bits: vec![false; n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut r = Self::empty(n);
        for a in 0..n {
            for b in 0..n {
                r.bits[a * n + b] = f(a, b);
            }
        }
        r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.n + b]
    }

    pub fn set(&mut self, a: usize, b: usize, v: bool) {
        self.bits[a * self.n + b] = v;
    }

    pub fn intersect(&self, other: &Relation) -> Relation {
        Relation::from_fn(self.n, |a, b| self.get(a, b) && other.get(a, b))
    }

    pub fn transpose(&self) -> Relation {
        Relation::from_fn(self.n, |a, b| self.get(b, a))
    }

    /// `self ∩ self⁻¹`.
    pub fn symmetric_part(&self) -> Relation {
        Relation::from_fn(self.n, |a, b| self.get(a, b) && self.get(b, a))
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|a| self.get(a, a))
    }

    pub fn first_intransitive(&self) -> Option<[usize; 3]> {
        for a in 0..self.n {
            for b in 0..self.n {
                if !self.get(a, b) {
                    continue;
                }
                for c in 0..self.n {
                    if self.get(b, c) && !self.get(a, c) {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }

    /// Class id per element, numbered by least member. Assumes an equivalence.
    pub fn classes(&self) -> Vec<usize> {
        let mut id = vec![usize::MAX; self.n];
        let mut next = 0;
        for a in 0..self.n {
            if id[a] != usize::MAX {
                continue;
            }
            for b in a..self.n {
                if self.get(a, b) {
                    id[b] = next;
                }
            }
            next += 1;
        }
        id
    }
}
