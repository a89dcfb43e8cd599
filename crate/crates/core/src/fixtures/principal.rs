//! The categories of principal left and right ideals of a regular semigroup.

use std::collections::HashMap;

use super::FiniteSemigroup;
use crate::normcat::NormalCategory;
use crate::{Error, Result};

/// `L_S`: objects `Se`, one per 𝓛-class of idempotents; morphisms are the
/// right translations `ρ(e,u,f)` with `u ∈ eSf`, stored with `e` and `f` the
/// least idempotents of their classes.
#[derive(Debug, Clone)]
pub struct PrincipalCategory {
    pub cat: NormalCategory,
    /// Least idempotent of each object's 𝓛-class.
    pub reps: Vec<usize>,
    /// `(e, u, f)` per morphism.
    pub triples: Vec<(usize, usize, usize)>,
    /// The semigroup this is `L` of; the opposite one for `R_S`.
    pub semigroup: FiniteSemigroup,
    index: HashMap<(usize, usize, usize), usize>,
    object_of: HashMap<usize, usize>,
}

impl PrincipalCategory {
    /// The object `Se`.
    pub fn object(&self, e: usize) -> Option<usize> {
        self.object_of.get(&e).copied()
    }

    /// `ρ(e,u,f)`; equal to `ρ(g,v,h)` iff `e 𝓛 g`, `f 𝓛 h` and `u = ev`.
    pub fn morphism(&self, e: usize, u: usize, f: usize) -> Option<usize> {
        let (a, b) = (self.object(e)?, self.object(f)?);
        let (g, h) = (self.reps[a], self.reps[b]);
        self.index.get(&(g, self.semigroup.mul(g, u), h)).copied()
    }
}

pub fn principal_lcat(s: &FiniteSemigroup) -> Result<PrincipalCategory> {
    principal_ideals(s, "L")
}

/// `R_S`, built as `L` of the opposite semigroup.
pub fn principal_rcat(s: &FiniteSemigroup) -> Result<PrincipalCategory> {
    principal_ideals(&s.opposite(), "R")
}

pub fn principal_categories(s: &FiniteSemigroup) -> Result<(PrincipalCategory, PrincipalCategory)> {
    Ok((principal_lcat(s)?, principal_rcat(s)?))
}

fn principal_ideals(s: &FiniteSemigroup, prefix: &str) -> Result<PrincipalCategory> {
    s.require_regular()?;
    let mut reps: Vec<usize> = Vec::new();
    let mut object_of = HashMap::new();
    for &e in s.idempotents() {
        let k = match reps.iter().position(|&r| s.l_related(r, e)) {
            Some(k) => k,
            None => {
                reps.push(e);
                reps.len() - 1
            }
        };
        object_of.insert(e, k);
    }
    let n = reps.len();
    let mut triples = Vec::new();
    for &e in &reps {
        for &f in &reps {
            let mut us: Vec<usize> = (0..s.n()).map(|x| s.mul(s.mul(e, x), f)).collect();
            us.sort_unstable();
            us.dedup();
            triples.extend(us.into_iter().map(|u| (e, u, f)));
        }
    }
    let index: HashMap<_, _> = triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let obj = |e: usize| object_of[&e];
    let identity = reps.iter().map(|&e| index[&(e, e, e)]).collect();
    let inclusions: Vec<usize> = reps
        .iter()
        .flat_map(|&e| reps.iter().map(move |&f| (e, f)))
        .filter(|&(e, f)| s.mul(e, f) == e)
        .map(|(e, f)| index[&(e, e, f)])
        .collect();
    let label = |x: usize| s.label(x).to_string();
    let cat = NormalCategory::new(
        &format!("{prefix}_{}", s.name()),
        reps.iter().map(|&e| format!("S{}", label(e))).collect(),
        triples.iter().map(|t| obj(t.0)).collect(),
        triples.iter().map(|t| obj(t.2)).collect(),
        triples
            .iter()
            .map(|&(e, u, f)| format!("{prefix}({},{},{})", label(e), label(u), label(f)))
            .collect(),
        identity,
        &inclusions,
        |x, y| {
            let ((e, u, _), (_, v, g)) = (triples[x], triples[y]);
            index
                .get(&(e, s.mul(u, v), g))
                .copied()
                .ok_or_else(|| Error::MalformedComposition(format!("{x}·{y}")))
        },
    )?;
    debug_assert_eq!(cat.object_count(), n);
    Ok(PrincipalCategory {
        cat,
        reps,
        triples,
        semigroup: s.clone(),
        index,
        object_of,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{left_zero, rect_band, semilattice_chain, standard_fixtures};
    use crate::normcat::check_normal_category;

    #[test]
    fn left_zero_has_one_object() {
        let (l, r) = principal_categories(&left_zero(2).unwrap()).unwrap();
        assert_eq!(l.cat.object_count(), 1);
        assert_eq!(r.cat.object_count(), 2);
    }

    #[test]
    fn chain_inclusions_are_ideal_containments() {
        let s = semilattice_chain(2).unwrap();
        let l = principal_lcat(&s).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                let (e, f) = (l.reps[a], l.reps[b]);
                assert_eq!(l.cat.subobject(a, b), s.l_leq(e, f));
            }
        }
    }

    #[test]
    fn rectangular_band_morphisms() {
        // eSf = {ef} in a rectangular band, so every hom-set is a singleton.
        let l = principal_lcat(&rect_band(2, 2).unwrap()).unwrap();
        assert_eq!(l.cat.object_count(), 2);
        assert_eq!(l.cat.morphism_count(), 4);
    }

    #[test]
    fn principal_categories_are_normal() {
        for s in standard_fixtures() {
            let (l, r) = principal_categories(&s).unwrap();
            for c in [&l.cat, &r.cat] {
                let rep = check_normal_category(c, None).unwrap();
                assert!(rep.is_ok(), "{}: {rep}", c.name());
            }
        }
    }
}
