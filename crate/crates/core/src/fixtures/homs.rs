//! Brute-force semigroup homomorphism search.

use super::FiniteSemigroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    pub map: Vec<usize>,
}

impl Homomorphism {
    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x)
    }
}

fn closure(s: &FiniteSemigroup, gens: &[usize]) -> Vec<bool> {
    let mut inside = vec![false; s.n()];
    let mut stack: Vec<usize> = gens.to_vec();
    for &g in gens {
        inside[g] = true;
    }
    while let Some(a) = stack.pop() {
        for &g in gens {
            let p = s.mul(a, g);
            if !inside[p] {
                inside[p] = true;
                stack.push(p);
            }
        }
    }
    inside
}

/// A small generating set, each step adding the element whose closure grows most.
pub fn generators(s: &FiniteSemigroup) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut inside = vec![false; s.n()];
    while inside.iter().any(|&b| !b) {
        let best = (0..s.n())
            .filter(|&a| !inside[a])
            .map(|a| {
                let mut g = gens.clone();
                g.push(a);
                let c = closure(s, &g);
                (c.iter().filter(|&&b| b).count(), std::cmp::Reverse(a), c)
            })
            .max_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)))
            .expect("some element outside");
        gens.push(best.1 .0);
        inside = best.2;
    }
    gens
}

/// Extends generator images to the generated subsemigroup; `None` unless the
/// result is an injective homomorphism there.
fn extend(
    s: &FiniteSemigroup,
    t: &FiniteSemigroup,
    gens: &[usize],
    imgs: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; s.n()];
    let mut stack = Vec::new();
    for (&g, &i) in gens.iter().zip(imgs) {
        if map[g] != usize::MAX && map[g] != i {
            return None;
        }
        map[g] = i;
        stack.push(g);
    }
    while let Some(a) = stack.pop() {
        for (&g, &i) in gens.iter().zip(imgs) {
            let p = s.mul(a, g);
            let v = t.mul(map[a], i);
            if map[p] == usize::MAX {
                map[p] = v;
                stack.push(p);
            } else if map[p] != v {
                return None;
            }
        }
    }
    let dom: Vec<usize> = (0..s.n()).filter(|&a| map[a] != usize::MAX).collect();
    let mut seen = vec![false; t.n()];
    if !dom
        .iter()
        .all(|&a| !std::mem::replace(&mut seen[map[a]], true))
    {
        return None;
    }
    let hom = dom.iter().all(|&a| {
        dom.iter()
            .all(|&b| map[s.mul(a, b)] == t.mul(map[a], map[b]))
    });
    hom.then_some(map)
}

/// All injective homomorphisms `S → T`, in lexicographic order of the map.
pub fn embeddings(s: &FiniteSemigroup, t: &FiniteSemigroup) -> Vec<Homomorphism> {
    let gens = generators(s);
    let mut out = Vec::new();
    let mut imgs = Vec::new();
    search(s, t, &gens, &mut imgs, &mut out);
    out.sort_by(|a, b| a.map.cmp(&b.map));
    out.dedup();
    out
}

fn search(
    s: &FiniteSemigroup,
    t: &FiniteSemigroup,
    gens: &[usize],
    imgs: &mut Vec<usize>,
    out: &mut Vec<Homomorphism>,
) {
    if imgs.len() == gens.len() {
        if let Some(map) = extend(s, t, gens, imgs) {
            out.push(Homomorphism { map });
        }
        return;
    }
    for x in 0..t.n() {
        imgs.push(x);
        if extend(s, t, &gens[..imgs.len()], imgs).is_some() {
            search(s, t, gens, imgs, out);
        }
        imgs.pop();
    }
}

pub fn automorphisms(s: &FiniteSemigroup) -> Vec<Homomorphism> {
    embeddings(s, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&fixtures::rect_band(2, 2).unwrap()).len(), 4);
        assert_eq!(automorphisms(&fixtures::brandt2()).len(), 2);
        assert_eq!(
            automorphisms(&fixtures::full_transformation(3).unwrap()).len(),
            6
        );
        assert_eq!(
            automorphisms(&fixtures::semilattice_chain(2).unwrap()).len(),
            1
        );
    }

    #[test]
    fn embeddings_exist() {
        let lz = fixtures::left_zero(2).unwrap();
        let rb = fixtures::rect_band(2, 2).unwrap();
        assert!(!embeddings(&lz, &rb).is_empty());
        let t2 = fixtures::full_transformation(2).unwrap();
        let t3 = fixtures::full_transformation(3).unwrap();
        assert!(!embeddings(&t2, &t3).is_empty());
    }
}
