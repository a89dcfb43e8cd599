//! Functors between normal categories given by object and morphism tables.

use serde::{Deserialize, Serialize};

use super::NormalCategory;
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Functor {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl Functor {
    pub fn identity(c: &NormalCategory) -> Self {
        Functor {
            objects: (0..c.object_count()).collect(),
            morphisms: (0..c.morphism_count()).collect(),
        }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Functor) -> Self {
        Functor {
            objects: self.objects.iter().map(|&c| other.objects[c]).collect(),
            morphisms: self.morphisms.iter().map(|&f| other.morphisms[f]).collect(),
        }
    }
}

/// Table shape, ends, identities and composites.
pub fn check_functor(c: &NormalCategory, d: &NormalCategory, f: &Functor) -> Report {
    let mut rep = Report::new();
    if f.objects.len() != c.object_count()
        || f.morphisms.len() != c.morphism_count()
        || f.objects.iter().any(|&x| x >= d.object_count())
        || f.morphisms.iter().any(|&x| x >= d.morphism_count())
    {
        rep.push("shape", &[f.objects.len(), f.morphisms.len()]);
        return rep;
    }
    for x in 0..c.morphism_count() {
        let y = f.morphisms[x];
        rep.check(
            d.dom(y) == f.objects[c.dom(x)] && d.cod(y) == f.objects[c.cod(x)],
            "ends",
            &[x],
        );
    }
    if rep.has("ends") {
        return rep;
    }
    for a in 0..c.object_count() {
        rep.check(
            f.morphisms[c.identity(a)] == d.identity(f.objects[a]),
            "identity",
            &[a],
        );
    }
    for x in 0..c.morphism_count() {
        for &y in c.out_of(c.cod(x)) {
            let lhs = f.morphisms[c.compose(x, y)];
            rep.check(
                lhs == d.compose(f.morphisms[x], f.morphisms[y]),
                "composition",
                &[x, y],
            );
        }
    }
    rep
}

fn check_inclusions(c: &NormalCategory, d: &NormalCategory, f: &Functor, rep: &mut Report) {
    for a in 0..c.object_count() {
        for b in 0..c.object_count() {
            if let Some(j) = c.inclusion(a, b) {
                rep.check(d.is_inclusion(f.morphisms[j]), "inclusion", &[j]);
            }
        }
    }
}

/// Functor laws, inclusion preservation, full faithfulness, and for each `c`
/// an isomorphism of the ideal `⟨c⟩` onto `⟨F c⟩`.
pub fn is_local_isomorphism(c: &NormalCategory, d: &NormalCategory, f: &Functor) -> Report {
    let mut rep = check_functor(c, d, f);
    if !rep.is_ok() {
        return rep;
    }
    check_inclusions(c, d, f, &mut rep);
    let n = c.object_count();
    for a in 0..n {
        for b in 0..n {
            let mut image: Vec<usize> = c.hom(a, b).iter().map(|&x| f.morphisms[x]).collect();
            image.sort_unstable();
            image.dedup();
            let target = d.hom(f.objects[a], f.objects[b]);
            rep.check(image.len() == c.hom(a, b).len(), "faithful", &[a, b]);
            rep.check(image.len() == target.len(), "full", &[a, b]);
        }
    }
    for x in 0..n {
        let ideal = c.ideal(x);
        let mut image: Vec<usize> = ideal.iter().map(|&y| f.objects[y]).collect();
        image.sort_unstable();
        image.dedup();
        rep.check(
            image.len() == ideal.len() && image == d.ideal(f.objects[x]),
            "ideal",
            &[x],
        );
        for &y in &ideal {
            for &z in &ideal {
                rep.check(
                    c.subobject(y, z) == d.subobject(f.objects[y], f.objects[z]),
                    "ideal-order",
                    &[x, y, z],
                );
            }
        }
    }
    rep
}

/// An isomorphism of categories with subobjects: a functor bijective on
/// objects and morphisms whose object map preserves and reflects `⊆`.
pub fn check_isomorphism(c: &NormalCategory, d: &NormalCategory, f: &Functor) -> Report {
    let mut rep = check_functor(c, d, f);
    if !rep.is_ok() {
        return rep;
    }
    let bijective = |map: &[usize], size: usize| {
        let mut seen = vec![false; size];
        map.len() == size && map.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
    };
    rep.check(
        bijective(&f.objects, d.object_count()),
        "bijective-objects",
        &[],
    );
    rep.check(
        bijective(&f.morphisms, d.morphism_count()),
        "bijective-morphisms",
        &[],
    );
    check_inclusions(c, d, f, &mut rep);
    for a in 0..c.object_count() {
        for b in 0..c.object_count() {
            rep.check(
                c.subobject(a, b) == d.subobject(f.objects[a], f.objects[b]),
                "order",
                &[a, b],
            );
        }
    }
    rep
}
