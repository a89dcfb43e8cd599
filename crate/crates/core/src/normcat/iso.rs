//! Exhaustive isomorphism search between categories with subobjects.

use std::collections::VecDeque;

use super::{check_isomorphism, Functor, NormalCategory};

fn object_signature(c: &NormalCategory, x: usize) -> [usize; 6] {
    let n = c.object_count();
    let into = (0..n).map(|a| c.hom(a, x).len()).sum();
    let endo_isos = c.hom(x, x).iter().filter(|&&f| c.is_iso(f)).count();
    let supers = (0..n).filter(|&a| c.subobject(x, a)).count();
    [
        c.out_of(x).len(),
        into,
        c.hom(x, x).len(),
        endo_isos,
        c.ideal(x).len(),
        supers,
    ]
}

fn morphism_kind(c: &NormalCategory, f: usize) -> (bool, bool, bool) {
    (c.is_iso(f), c.is_inclusion(f), c.is_retraction(f))
}

struct Search<'a> {
    c: &'a NormalCategory,
    d: &'a NormalCategory,
    into_c: Vec<Vec<usize>>,
}

#[derive(Clone)]
struct State {
    map: Vec<Option<usize>>,
    rev: Vec<Option<usize>>,
}

impl Search<'_> {
    /// Assigns `x ↦ y` and closes under composition with assigned morphisms.
    fn assign(&self, st: &mut State, x: usize, y: usize) -> bool {
        let mut queue = VecDeque::from([(x, y)]);
        while let Some((x, y)) = queue.pop_front() {
            match (st.map[x], st.rev[y]) {
                (Some(a), _) if a != y => return false,
                (_, Some(b)) if b != x => return false,
                (Some(_), _) => continue,
                _ => {}
            }
            st.map[x] = Some(y);
            st.rev[y] = Some(x);
            for &z in self.c.out_of(self.c.cod(x)) {
                if let Some(w) = st.map[z] {
                    queue.push_back((self.c.compose(x, z), self.d.compose(y, w)));
                }
            }
            for &z in &self.into_c[self.c.dom(x)] {
                if let Some(w) = st.map[z] {
                    queue.push_back((self.c.compose(z, x), self.d.compose(w, y)));
                }
            }
        }
        true
    }

    fn candidates(&self, st: &State, objects: &[usize], x: usize) -> Vec<usize> {
        let (c, d) = (self.c, self.d);
        let image = c.image(x).ok().map(|i| objects[i]);
        d.hom(objects[c.dom(x)], objects[c.cod(x)])
            .iter()
            .copied()
            .filter(|&y| st.rev[y].is_none())
            .filter(|&y| morphism_kind(c, x) == morphism_kind(d, y) && d.image(y).ok() == image)
            .collect()
    }

    fn extend(&self, st: State, objects: &[usize]) -> Option<Vec<usize>> {
        let mut best: Option<(usize, Vec<usize>)> = None;
        for x in 0..self.c.morphism_count() {
            if st.map[x].is_some() {
                continue;
            }
            let cand = self.candidates(&st, objects, x);
            if cand.is_empty() {
                return None;
            }
            if best.as_ref().is_none_or(|b| cand.len() < b.1.len()) {
                best = Some((x, cand));
            }
        }
        let Some((x, cand)) = best else {
            return Some(st.map.iter().map(|m| m.expect("all assigned")).collect());
        };
        for y in cand {
            let mut next = st.clone();
            if self.assign(&mut next, x, y) {
                if let Some(done) = self.extend(next, objects) {
                    return Some(done);
                }
            }
        }
        None
    }

    fn morphisms_for(&self, objects: &[usize]) -> Option<Functor> {
        let (c, d) = (self.c, self.d);
        let mut st = State {
            map: vec![None; c.morphism_count()],
            rev: vec![None; d.morphism_count()],
        };
        for a in 0..c.object_count() {
            for b in 0..c.object_count() {
                if let Some(j) = c.inclusion(a, b) {
                    let k = d.inclusion(objects[a], objects[b])?;
                    if !self.assign(&mut st, j, k) {
                        return None;
                    }
                }
            }
        }
        let morphisms = self.extend(st, objects)?;
        let f = Functor {
            objects: objects.to_vec(),
            morphisms,
        };
        check_isomorphism(c, d, &f).is_ok().then_some(f)
    }

    fn objects(
        &self,
        objects: &mut Vec<usize>,
        used: &mut [bool],
        sig_c: &[[usize; 6]],
        sig_d: &[[usize; 6]],
    ) -> Option<Functor> {
        let (c, d) = (self.c, self.d);
        let x = objects.len();
        if x == c.object_count() {
            return self.morphisms_for(objects);
        }
        for y in 0..d.object_count() {
            if used[y] || sig_c[x] != sig_d[y] {
                continue;
            }
            let fits = (0..x).all(|a| {
                let b = objects[a];
                c.hom(a, x).len() == d.hom(b, y).len()
                    && c.hom(x, a).len() == d.hom(y, b).len()
                    && c.subobject(a, x) == d.subobject(b, y)
                    && c.subobject(x, a) == d.subobject(y, b)
            });
            if !fits {
                continue;
            }
            used[y] = true;
            objects.push(y);
            if let Some(f) = self.objects(objects, used, sig_c, sig_d) {
                return Some(f);
            }
            objects.pop();
            used[y] = false;
        }
        None
    }
}

/// An isomorphism `C → D` of categories with subobjects, if one exists.
///
/// Objects are matched by backtracking over invariant-compatible bijections;
/// morphisms by choosing the most constrained unassigned morphism, closing the
/// partial map under composition, and backtracking on conflicts.
pub fn find_isomorphism(c: &NormalCategory, d: &NormalCategory) -> Option<Functor> {
    if c.object_count() != d.object_count() || c.morphism_count() != d.morphism_count() {
        return None;
    }
    let mut into_c = vec![Vec::new(); c.object_count()];
    for f in 0..c.morphism_count() {
        into_c[c.cod(f)].push(f);
    }
    let search = Search { c, d, into_c };
    let sig_c: Vec<_> = (0..c.object_count())
        .map(|x| object_signature(c, x))
        .collect();
    let sig_d: Vec<_> = (0..d.object_count())
        .map(|x| object_signature(d, x))
        .collect();
    search.objects(
        &mut Vec::new(),
        &mut vec![false; d.object_count()],
        &sig_c,
        &sig_d,
    )
}

#[cfg(test)]
mod tests {
    use super::super::tests::two_chain;
    use super::*;

    #[test]
    fn finds_the_identity_shape() {
        let c = two_chain(true);
        let f = find_isomorphism(&c, &c).unwrap();
        assert!(check_isomorphism(&c, &c, &f).is_ok());
    }

    #[test]
    fn split_and_non_split_chains_differ() {
        assert!(find_isomorphism(&two_chain(true), &two_chain(false)).is_none());
    }
}
