//! The set-valued functors `H(γ;−)` and their representability data.

use super::{Cone, NormalCategory};
use crate::report::Report;
use crate::Result;

/// `H(γ;−)` tabulated: `sets[c]` is sorted, `maps[g][i]` indexes into
/// `sets[cod g]`, and `eta[c][i]` is the morphism `c_γ → c` paired with
/// `sets[c][i]` by the isomorphism onto `𝒞(c_γ, −)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HFunctor {
    pub base: Cone,
    pub sets: Vec<Vec<Cone>>,
    pub maps: Vec<Vec<usize>>,
    pub eta: Vec<Vec<usize>>,
}

impl HFunctor {
    pub fn position(&self, c: usize, s: &Cone) -> Option<usize> {
        self.sets[c].binary_search(s).ok()
    }

    /// Same sets and maps; the base cone and `eta` may differ.
    pub fn same_functor(&self, other: &HFunctor) -> bool {
        self.sets == other.sets && self.maps == other.maps
    }

    /// `η(c)⁻¹(f) = γ∗f°`.
    pub fn eta_inverse(&self, cat: &NormalCategory, f: usize) -> Result<Cone> {
        Ok(self.base.star(cat, cat.epi(f)?))
    }
}

/// Tabulates `H(γ;−)`. The Yoneda element is `γ` itself: `η` pairs
/// `γ∗f°` with `f`.
pub fn h_functor(cat: &NormalCategory, g: &Cone) -> Result<HFunctor> {
    let n = cat.object_count();
    let mut sets = Vec::with_capacity(n);
    let mut eta = Vec::with_capacity(n);
    for c in 0..n {
        let mut pairs = Vec::new();
        for &f in cat.hom(g.apex, c) {
            pairs.push((g.star(cat, cat.epi(f)?), f));
        }
        pairs.sort();
        pairs.dedup_by(|a, b| a.0 == b.0);
        sets.push(pairs.iter().map(|p| p.0.clone()).collect::<Vec<_>>());
        eta.push(pairs.iter().map(|p| p.1).collect::<Vec<_>>());
    }
    let mut maps = Vec::with_capacity(cat.morphism_count());
    for x in 0..cat.morphism_count() {
        let (c, c2) = (cat.dom(x), cat.cod(x));
        let row = eta[c]
            .iter()
            .map(|&f| {
                let s = g.star(cat, cat.epi(cat.compose(f, x))?);
                Ok(sets[c2]
                    .binary_search(&s)
                    .expect("γ∗(f·x)° lies in H(γ;c′)"))
            })
            .collect::<Result<Vec<_>>>()?;
        maps.push(row);
    }
    Ok(HFunctor {
        base: g.clone(),
        sets,
        maps,
        eta,
    })
}

/// Well-definedness of the maps, functoriality, and bijectivity and
/// naturality of `eta`.
pub fn check_h_functor(cat: &NormalCategory, h: &HFunctor) -> Result<Report> {
    let mut rep = Report::new();
    let g = &h.base;
    for c in 0..cat.object_count() {
        rep.check(
            h.sets[c].len() == cat.hom(g.apex, c).len(),
            "eta-bijective",
            &[c],
        );
        for (i, &f) in h.eta[c].iter().enumerate() {
            rep.check(
                h.eta_inverse(cat, f)? == h.sets[c][i],
                "eta-inverse",
                &[c, i],
            );
        }
        for &f in cat.hom(g.apex, c) {
            let i = h.position(c, &h.eta_inverse(cat, f)?).expect("listed");
            for &x in cat.out_of(c) {
                let s = h.eta_inverse(cat, cat.compose(f, x))?;
                rep.check(
                    h.sets[cat.cod(x)][h.maps[x][i]] == s,
                    "map-well-defined",
                    &[f, x],
                );
            }
        }
    }
    for x in 0..cat.morphism_count() {
        let (c, c2) = (cat.dom(x), cat.cod(x));
        for i in 0..h.sets[c].len() {
            rep.check(
                h.eta[c2][h.maps[x][i]] == cat.compose(h.eta[c][i], x),
                "eta-natural",
                &[x, i],
            );
        }
        if cat.is_identity(x) {
            rep.check(
                h.maps[x].iter().enumerate().all(|(i, &k)| i == k),
                "functor-identity",
                &[x],
            );
        }
        for &y in cat.out_of(c2) {
            let xy = cat.compose(x, y);
            for i in 0..h.sets[c].len() {
                rep.check(
                    h.maps[xy][i] == h.maps[y][h.maps[x][i]],
                    "functor-composition",
                    &[x, y],
                );
            }
        }
    }
    Ok(rep)
}

/// Number of natural isomorphisms `𝒞(c_γ, −) → H(γ;−)`, by Yoneda: elements
/// `x ∈ H(γ;c_γ)` whose induced transformation is bijective everywhere.
pub fn natural_iso_count(cat: &NormalCategory, h: &HFunctor) -> usize {
    let apex = h.base.apex;
    (0..h.sets[apex].len())
        .filter(|&x| {
            (0..cat.object_count()).all(|c| {
                let mut hit = vec![false; h.sets[c].len()];
                cat.hom(apex, c)
                    .iter()
                    .all(|&f| !std::mem::replace(&mut hit[h.maps[f][x]], true))
                    && hit.iter().all(|&b| b)
            })
        })
        .count()
}
