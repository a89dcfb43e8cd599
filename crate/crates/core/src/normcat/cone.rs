//! Cones and the semigroup of cones.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::NormalCategory;
use crate::fixtures::FiniteSemigroup;
use crate::report::Report;
use crate::{Error, Result};

/// A cone: one morphism `components[c]: c → apex` per object.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cone {
    pub apex: usize,
    pub components: Vec<usize>,
}

impl Cone {
    pub fn component(&self, c: usize) -> usize {
        self.components[c]
    }

    /// The apex component is the identity.
    pub fn is_idempotent(&self, cat: &NormalCategory) -> bool {
        self.components[self.apex] == cat.identity(self.apex)
    }

    /// `Mγ`: objects whose component is an isomorphism.
    pub fn m_set(&self, cat: &NormalCategory) -> Vec<usize> {
        (0..self.components.len())
            .filter(|&c| cat.is_iso(self.components[c]))
            .collect()
    }

    /// `γ∗f` for `f` out of the apex.
    pub fn star(&self, cat: &NormalCategory, f: usize) -> Cone {
        Cone {
            apex: cat.cod(f),
            components: self.components.iter().map(|&g| cat.compose(g, f)).collect(),
        }
    }
}

/// Ncone1 to Ncone3.
pub fn check_cone(cat: &NormalCategory, g: &Cone) -> Report {
    let mut rep = Report::new();
    let n = cat.object_count();
    if g.components.len() != n
        || g.apex >= n
        || g.components.iter().any(|&f| f >= cat.morphism_count())
    {
        rep.push("shape", &[g.components.len()]);
        return rep;
    }
    for c in 0..n {
        let f = g.components[c];
        rep.check(cat.dom(f) == c && cat.cod(f) == g.apex, "Ncone1", &[c]);
    }
    if rep.has("Ncone1") {
        return rep;
    }
    for c in 0..n {
        for c2 in 0..n {
            if let Some(j) = cat.inclusion(c, c2) {
                rep.check(
                    cat.compose(j, g.components[c2]) == g.components[c],
                    "Ncone2",
                    &[c, c2],
                );
            }
        }
    }
    rep.check(
        g.components.iter().any(|&f| cat.is_iso(f)),
        "Ncone3",
        &[g.apex],
    );
    rep
}

/// `γ·σ = γ∗(σ(c_γ))°`.
pub fn compose_cone(cat: &NormalCategory, g: &Cone, s: &Cone) -> Result<Cone> {
    Ok(g.star(cat, cat.epi(s.components[g.apex])?))
}

/// Every cone of `cat`, sorted. A cone is fixed by its components at the
/// maximal objects, so the search runs over those and extends downwards.
pub fn all_cones(cat: &NormalCategory, limit: usize) -> Result<Vec<Cone>> {
    let n = cat.object_count();
    let maximal = cat.maximal_objects();
    let above: Vec<Vec<usize>> = (0..n)
        .map(|c| {
            (0..maximal.len())
                .filter(|&k| cat.subobject(c, maximal[k]))
                .collect()
        })
        .collect();
    let mut cones = Vec::new();
    let mut visited = 0usize;
    for apex in 0..n {
        let choices: Vec<&[usize]> = maximal.iter().map(|&m| cat.hom(m, apex)).collect();
        if choices.iter().any(|h| h.is_empty()) {
            continue;
        }
        let mut idx = vec![0usize; maximal.len()];
        'tuples: loop {
            visited += 1;
            if visited > limit {
                return Err(Error::SizeBound(format!(
                    "cone search visited more than {limit} tuples"
                )));
            }
            let mut comps = Vec::with_capacity(n);
            let mut consistent = true;
            for (c, ks) in above.iter().enumerate() {
                let mut val = None;
                for &k in ks {
                    let j = cat.inclusion(c, maximal[k]).expect("listed above");
                    let v = cat.compose(j, choices[k][idx[k]]);
                    if val.is_some_and(|w| w != v) {
                        consistent = false;
                        break;
                    }
                    val = Some(v);
                }
                match val {
                    Some(v) if consistent => comps.push(v),
                    _ => {
                        consistent = false;
                        break;
                    }
                }
            }
            if consistent {
                let g = Cone {
                    apex,
                    components: comps,
                };
                if check_cone(cat, &g).is_ok() {
                    cones.push(g);
                }
            }
            for k in 0..idx.len() {
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    continue 'tuples;
                }
                idx[k] = 0;
            }
            break;
        }
    }
    cones.sort();
    Ok(cones)
}

/// A finite set of cones closed under `compose_cone`, sorted, with its table.
#[derive(Debug, Clone)]
pub struct ConeSemigroup {
    cones: Vec<Cone>,
    index: HashMap<Cone, usize>,
    table: Vec<usize>,
}

impl ConeSemigroup {
    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn cone(&self, i: usize) -> &Cone {
        &self.cones[i]
    }

    pub fn index_of(&self, g: &Cone) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.cones.len() + j]
    }

    /// The same table as a `FiniteSemigroup`, labelled by apex and components.
    pub fn to_semigroup(&self, name: &str) -> Result<FiniteSemigroup> {
        let labels = self
            .cones
            .iter()
            .map(|g| format!("{}:{:?}", g.apex, g.components))
            .collect();
        FiniteSemigroup::new(
            name.to_string(),
            self.cones.len(),
            self.table.clone(),
            labels,
        )
    }
}

/// Closure of `seeds` under the cone product; at most `cap` cones.
pub fn cone_semigroup(cat: &NormalCategory, seeds: &[Cone], cap: usize) -> Result<ConeSemigroup> {
    let mut cones: Vec<Cone> = Vec::new();
    let mut index: HashMap<Cone, usize> = HashMap::new();
    let mut products: HashMap<(usize, usize), usize> = HashMap::new();
    let add = |g: Cone, cones: &mut Vec<Cone>, index: &mut HashMap<Cone, usize>| -> Result<usize> {
        if let Some(&i) = index.get(&g) {
            return Ok(i);
        }
        if cones.len() == cap {
            return Err(Error::ClosureBoundExceeded(cap));
        }
        index.insert(g.clone(), cones.len());
        cones.push(g);
        Ok(cones.len() - 1)
    };
    for g in seeds {
        add(g.clone(), &mut cones, &mut index)?;
    }
    let mut done = 0;
    while done < cones.len() {
        let i = done;
        for j in 0..=i {
            for (a, b) in [(i, j), (j, i)] {
                if products.contains_key(&(a, b)) {
                    continue;
                }
                let p = compose_cone(cat, &cones[a], &cones[b])?;
                let k = add(p, &mut cones, &mut index)?;
                products.insert((a, b), k);
            }
        }
        done += 1;
    }
    let mut order: Vec<usize> = (0..cones.len()).collect();
    order.sort_by(|&a, &b| cones[a].cmp(&cones[b]));
    let mut rank = vec![0; cones.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let n = cones.len();
    let mut table = vec![0; n * n];
    for ((a, b), k) in products {
        table[rank[a] * n + rank[b]] = rank[k];
    }
    let sorted: Vec<Cone> = order.iter().map(|&i| cones[i].clone()).collect();
    let index = sorted
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, g)| (g, i))
        .collect();
    Ok(ConeSemigroup {
        cones: sorted,
        index,
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::two_chain;
    use super::*;

    #[test]
    fn idempotent_cone_squares_to_itself() {
        let c = two_chain(true);
        for g in all_cones(&c, 1000).unwrap() {
            if g.is_idempotent(&c) {
                assert_eq!(compose_cone(&c, &g, &g).unwrap(), g);
                let s = cone_semigroup(&c, std::slice::from_ref(&g), 10).unwrap();
                assert_eq!(s.len(), 1);
            }
        }
    }

    #[test]
    fn cones_of_the_split_chain() {
        // Apex a: (1_a, q); apex b: (j, 1_b). The family (j, q·j) has no iso component.
        let c = two_chain(true);
        let cones = all_cones(&c, 1000).unwrap();
        assert_eq!(
            cones,
            vec![
                Cone {
                    apex: 0,
                    components: vec![0, 3]
                },
                Cone {
                    apex: 1,
                    components: vec![2, 1]
                },
            ]
        );
        let t = cone_semigroup(&c, &cones, 10).unwrap();
        assert_eq!(t.len(), 2);
        assert!(t.to_semigroup("T").unwrap().is_regular());
    }

    #[test]
    fn iso_component_keeps_the_apex() {
        let c = two_chain(true);
        let cones = all_cones(&c, 1000).unwrap();
        for g in &cones {
            for s in &cones {
                if c.is_iso(s.component(g.apex)) {
                    assert_eq!(compose_cone(&c, g, s).unwrap().apex, s.apex);
                }
            }
        }
    }
}
