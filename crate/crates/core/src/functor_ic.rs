//! The inductive groupoid `𝒢_Γ` of a cross-connection, and the restriction
//! of a cross-connection morphism to it.

use std::collections::HashMap;

use crate::crossconn::{biorder_of, CCMorphism, ValidCross};
use crate::echain::{
    chain_groupoid_or_section, check_path, default_cap, h_sequence, reduce_path, restrict_chain,
};
use crate::inductive::{
    check_ordered_groupoid, InductiveFunctor, InductiveGroupoid, OrderedGroupoid,
};
use crate::normcat::{compose_cone, Cone, NormalCategory};
use crate::relation::Relation;
use crate::report::Report;
use crate::{Error, Result};

/// Chains longer than this are left out of the chain-order comparison when
/// `𝒢(E_Γ)` has no small closure.
pub const CHAIN_CHECK_LEN: usize = 4;

/// `(f, g): (c,d) → (c′,d′)` with `f`, `g` isomorphisms and `g = (f⁻¹)*`;
/// `dom` and `cod` index `E_Γ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CCGroupoidMorphism {
    pub dom: usize,
    pub cod: usize,
    pub f: usize,
    pub g: usize,
}

/// `(𝒢_Γ, ε_Γ)` with object `i` the `i`-th pair of `E_Γ`.
#[derive(Debug, Clone)]
pub struct CrossGroupoid {
    pub ig: InductiveGroupoid,
    pub pairs: Vec<(usize, usize)>,
    pub morphisms: Vec<CCGroupoidMorphism>,
    index: HashMap<(usize, usize), usize>,
}

impl CrossGroupoid {
    pub fn morphism(&self, f: usize, g: usize) -> Option<usize> {
        self.index.get(&(f, g)).copied()
    }

    pub fn pair(&self, c: usize, d: usize) -> Option<usize> {
        self.pairs.iter().position(|&p| p == (c, d))
    }
}

fn malformed(what: String) -> Error {
    Error::MalformedComposition(what)
}

/// `(j(c,c₁)f₁)°` when `c ⊆ dom f₁`.
fn restrict_iso(cat: &NormalCategory, c: usize, f1: usize) -> Result<Option<usize>> {
    match cat.inclusion(c, cat.dom(f1)) {
        Some(j) => Ok(Some(cat.epi(cat.compose(j, f1))?)),
        None => Ok(None),
    }
}

/// `f ≤ f₁` in the groupoid of isomorphisms of `cat`.
fn iso_leq(cat: &NormalCategory, f: usize, f1: usize) -> Result<bool> {
    if !cat.subobject(cat.cod(f), cat.cod(f1)) {
        return Ok(false);
    }
    Ok(restrict_iso(cat, cat.dom(f), f1)? == Some(f))
}

/// Morphisms are the pairs `(f, (f⁻¹)*)` over all isomorphisms `f` between
/// first components of `E_Γ`; pairs whose second component is not an
/// isomorphism are left out. Composition is componentwise, the order is
/// `(f,g) ≤ (f₁,g₁)` iff the ends lie below and `(f,g) = ((j f₁)°, (j g₁)°)`,
/// and `ε_Γ(p,q) = ((γ_p γ_q)(c_p), (δ_p δ_q)(d_p))` on generators.
pub fn build_ig(v: &ValidCross) -> Result<CrossGroupoid> {
    let (c_cat, d_cat) = (&v.x.c, &v.x.d);
    let e = biorder_of(v)?;
    let n = v.pairs.len();
    let mut morphisms = Vec::new();
    for p in 0..n {
        for p2 in 0..n {
            let (c, c2) = (v.pairs[p].0, v.pairs[p2].0);
            for &f in c_cat.hom(c, c2) {
                let Some(fi) = c_cat.inverse(f) else { continue };
                let g = v.transpose(fi, p2, p)?;
                if d_cat.is_iso(g) {
                    morphisms.push(CCGroupoidMorphism {
                        dom: p,
                        cod: p2,
                        f,
                        g,
                    });
                }
            }
        }
    }
    let index: HashMap<(usize, usize), usize> = morphisms
        .iter()
        .enumerate()
        .map(|(i, m)| ((m.f, m.g), i))
        .collect();
    let lookup = |f: usize, g: usize| {
        index
            .get(&(f, g))
            .copied()
            .ok_or_else(|| malformed(format!("pair ({f},{g}) is not in G_Γ")))
    };
    let identity = v
        .pairs
        .iter()
        .map(|&(c, d)| lookup(c_cat.identity(c), d_cat.identity(d)))
        .collect::<Result<Vec<_>>>()?;
    let inverse = morphisms
        .iter()
        .map(|m| {
            let fi = c_cat.inverse(m.f).expect("isomorphism");
            let gi = d_cat.inverse(m.g).expect("isomorphism");
            lookup(fi, gi)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut compose = HashMap::new();
    for (i, a) in morphisms.iter().enumerate() {
        for (j, b) in morphisms.iter().enumerate().filter(|(_, b)| b.dom == a.cod) {
            compose.insert(
                (i, j),
                lookup(c_cat.compose(a.f, b.f), d_cat.compose(a.g, b.g))?,
            );
        }
    }
    let m = morphisms.len();
    let mut leq = Relation::empty(m);
    for (i, a) in morphisms.iter().enumerate() {
        for (k, b) in morphisms.iter().enumerate() {
            if e.leq(a.dom, b.dom)
                && e.leq(a.cod, b.cod)
                && iso_leq(c_cat, a.f, b.f)?
                && iso_leq(d_cat, a.g, b.g)?
            {
                leq.set(i, k, true);
            }
        }
    }
    let labels = morphisms
        .iter()
        .map(|x| format!("({},{})", c_cat.label(x.f), d_cat.label(x.g)))
        .collect();
    let g = OrderedGroupoid::from_parts(
        n,
        morphisms.iter().map(|x| x.dom).collect(),
        morphisms.iter().map(|x| x.cod).collect(),
        identity,
        inverse,
        compose,
        leq,
        labels,
        true,
    );
    let mut eval = HashMap::new();
    for p in 0..n {
        for q in (0..n).filter(|&q| q != p && (e.r_rel(p, q) || e.l_rel(p, q))) {
            let (c, d) = v.pairs[p];
            let f = compose_cone(c_cat, &v.gcone[p], &v.gcone[q])?.component(c);
            let gg = compose_cone(d_cat, &v.dcone[p], &v.dcone[q])?.component(d);
            eval.insert((p, q), lookup(f, gg)?);
        }
    }
    Ok(CrossGroupoid {
        ig: InductiveGroupoid::new(g, e, eval),
        pairs: v.pairs.clone(),
        morphisms,
        index,
    })
}

/// The sequence `(h_i, k_i)` with `γ(h_i,k_i) = γ_i γ(h_{i−1},k_{i−1}) γ_i` and
/// dually for `δ`, started at `(h,k) = p ≤ chain[0]`. `None` when a product
/// is not the cone of a pair.
fn cone_sequence(v: &ValidCross, p: usize, chain: &[usize]) -> Result<Option<Vec<usize>>> {
    let (c_cat, d_cat) = (&v.x.c, &v.x.d);
    let sandwich =
        |cat: &NormalCategory, a: &Cone, b: &Cone| compose_cone(cat, &compose_cone(cat, a, b)?, a);
    let mut seq = vec![p];
    for &q in &chain[1..] {
        let prev = *seq.last().expect("nonempty");
        let theta = sandwich(c_cat, &v.gcone[q], &v.gcone[prev])?;
        let eta = sandwich(d_cat, &v.dcone[q], &v.dcone[prev])?;
        let Some(next) = v.pair(theta.apex, eta.apex) else {
            return Ok(None);
        };
        if v.gcone[next] != theta || v.dcone[next] != eta {
            return Ok(None);
        }
        seq.push(next);
    }
    Ok(Some(seq))
}

/// The order on `𝒢(E_Γ)` computed with cone products agrees with the
/// biorder computation: for every chain and every `p ≤` its start, the two
/// h-sequences coincide and the restriction lies below the chain.
pub fn check_chain_order(v: &ValidCross, x: &CrossGroupoid) -> Result<Report> {
    let b = &x.ig.e;
    let chains = chain_groupoid_or_section(b, default_cap(b), CHAIN_CHECK_LEN);
    let mut rep = Report::new();
    for (k, c) in chains.chains.iter().enumerate() {
        for p in (0..b.n()).filter(|&p| b.leq(p, c.dom())) {
            let cones = cone_sequence(v, p, c.entries())?;
            let expect = h_sequence(b, p, c);
            rep.check(
                cones.is_some() && cones == expect,
                "chain-order.sequence",
                &[k, p],
            );
            let Some(seq) = cones else { continue };
            let ok = check_path(b, &seq).is_ok()
                && reduce_path(b, &seq).ok() == restrict_chain(b, p, c)
                && restrict_chain(b, p, c).is_some_and(|r| crate::echain::chain_leq(b, &r, c));
            rep.check(ok, "chain-order", &[k, p]);
        }
    }
    Ok(rep)
}

/// `(f,g)(γ′₁(c′), δ′₁(d′)) = (γ₁(c), δ₁(d))(f₁,g₁)` for every morphism
/// `(f,g)` and every restriction `(f₁,g₁) = (c₁,d₁)↿(f,g)`.
pub fn check_restriction_retractions(v: &ValidCross, x: &CrossGroupoid) -> Result<Report> {
    let (c_cat, d_cat) = (&v.x.c, &v.x.d);
    let g = &x.ig.g;
    let mut rep = Report::new();
    for (i, m) in x.morphisms.iter().enumerate() {
        let ((c, d), (c2, d2)) = (v.pairs[m.dom], v.pairs[m.cod]);
        for p1 in (0..v.pairs.len()).filter(|&p1| x.ig.e.leq(p1, m.dom)) {
            let r = x.ig.restrict(p1, i)?;
            let m1 = x.morphisms[r];
            debug_assert_eq!(crate::inductive::Groupoid::dom(g, r), p1);
            let lhs_f = c_cat.compose(m.f, v.gcone[m1.cod].component(c2));
            let rhs_f = c_cat.compose(v.gcone[p1].component(c), m1.f);
            let lhs_g = d_cat.compose(m.g, v.dcone[m1.cod].component(d2));
            let rhs_g = d_cat.compose(v.dcone[p1].component(d), m1.g);
            rep.check(
                lhs_f == rhs_f && lhs_g == rhs_g,
                "restriction-retraction",
                &[i, p1],
            );
        }
    }
    Ok(rep)
}

/// The ordered groupoid on a set of isomorphisms of `cat` closed under
/// composition and inverses, ordered by `f ≤ f₁ ⟺ f = (j f₁)°`.
pub fn iso_groupoid(cat: &NormalCategory, isos: &[usize]) -> Result<OrderedGroupoid> {
    let mut isos = isos.to_vec();
    isos.sort_unstable();
    isos.dedup();
    let pos: HashMap<usize, usize> = isos.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let find = |f: usize| {
        pos.get(&f)
            .copied()
            .ok_or_else(|| malformed(format!("morphism {f} is not in the groupoid")))
    };
    let identity = (0..cat.object_count())
        .map(|c| find(cat.identity(c)))
        .collect::<Result<Vec<_>>>()?;
    let inverse = isos
        .iter()
        .map(|&f| {
            find(
                cat.inverse(f)
                    .ok_or_else(|| malformed(format!("morphism {f} is not an isomorphism")))?,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let mut compose = HashMap::new();
    for (i, &f) in isos.iter().enumerate() {
        for (j, &h) in isos
            .iter()
            .enumerate()
            .filter(|(_, &h)| cat.dom(h) == cat.cod(f))
        {
            compose.insert((i, j), find(cat.compose(f, h))?);
        }
    }
    let mut leq = Relation::empty(isos.len());
    for (i, &f) in isos.iter().enumerate() {
        for (k, &f1) in isos.iter().enumerate() {
            if iso_leq(cat, f, f1)? {
                leq.set(i, k, true);
            }
        }
    }
    Ok(OrderedGroupoid::from_parts(
        cat.object_count(),
        isos.iter().map(|&f| cat.dom(f)).collect(),
        isos.iter().map(|&f| cat.cod(f)).collect(),
        identity,
        inverse,
        compose,
        leq,
        isos.iter().map(|&f| cat.label(f).to_string()).collect(),
        true,
    ))
}

/// The groupoids of all isomorphisms of `𝒞` and `𝒟` and the one-sided
/// groupoids of first and second components of `𝒢_Γ`, each checked as an
/// ordered groupoid.
pub fn check_one_sided(v: &ValidCross, x: &CrossGroupoid) -> Result<Report> {
    let mut rep = Report::new();
    for (name, cat, comps) in [
        (
            "G_C",
            &v.x.c,
            x.morphisms.iter().map(|m| m.f).collect::<Vec<_>>(),
        ),
        (
            "G_D",
            &v.x.d,
            x.morphisms.iter().map(|m| m.g).collect::<Vec<_>>(),
        ),
    ] {
        let all: Vec<usize> = (0..cat.morphism_count())
            .filter(|&f| cat.is_iso(f))
            .collect();
        rep.absorb(name, check_ordered_groupoid(&iso_groupoid(cat, &all)?)?);
        rep.absorb(
            &format!("{name}|Γ"),
            check_ordered_groupoid(&iso_groupoid(cat, &comps)?)?,
        );
    }
    Ok(rep)
}

/// `m|𝒢_Γ`: `(c,d) ↦ (Fc, Gd)` and `(f,g) ↦ (Ff, Gg)`.
pub fn map_morphism(
    m: &CCMorphism,
    src: &CrossGroupoid,
    tgt: &CrossGroupoid,
) -> Result<InductiveFunctor> {
    let objects = src
        .pairs
        .iter()
        .map(|&(c, d)| {
            tgt.pair(m.f.objects[c], m.g.objects[d])
                .ok_or_else(|| malformed(format!("pair ({c},{d}) maps outside E_Γ′")))
        })
        .collect::<Result<Vec<_>>>()?;
    let morphisms = src
        .morphisms
        .iter()
        .map(|x| {
            let (f, g) = (m.f.morphisms[x.f], m.g.morphisms[x.g]);
            tgt.morphism(f, g)
                .ok_or_else(|| malformed(format!("pair ({f},{g}) is not in G_Γ′")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(InductiveFunctor { objects, morphisms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossconn::analyze;
    use crate::fixtures::{
        brandt2, full_transformation, left_zero, rect_band, trace_groupoid, FiniteSemigroup,
    };
    use crate::functor_ci::build_gamma;
    use crate::inductive::{check_inductive, check_inductive_functor, Groupoid};

    fn round(s: &FiniteSemigroup) -> (InductiveGroupoid, ValidCross, CrossGroupoid) {
        let (ig, _) = trace_groupoid(s).unwrap();
        let v = analyze(&build_gamma(&ig).unwrap().cross).unwrap();
        let x = build_ig(&v).unwrap();
        (ig, v, x)
    }

    #[test]
    fn sizes_match_the_source_groupoid() {
        for s in [
            left_zero(2).unwrap(),
            rect_band(2, 2).unwrap(),
            brandt2(),
            full_transformation(2).unwrap(),
        ] {
            let (ig, _, x) = round(&s);
            assert_eq!(
                x.ig.g.morphism_count(),
                ig.g.morphism_count(),
                "{}",
                s.name()
            );
            assert_eq!(x.ig.e.n(), ig.e.n());
        }
    }

    #[test]
    fn is_inductive_with_all_subcontracts() {
        for s in [
            rect_band(2, 2).unwrap(),
            brandt2(),
            full_transformation(2).unwrap(),
        ] {
            let (_, v, x) = round(&s);
            for rep in [
                check_inductive(&x.ig).unwrap(),
                check_chain_order(&v, &x).unwrap(),
                check_restriction_retractions(&v, &x).unwrap(),
                check_one_sided(&v, &x).unwrap(),
            ] {
                assert!(rep.is_ok(), "{}: {rep}", s.name());
            }
        }
    }

    #[test]
    fn identities_are_identity_pairs() {
        let (_, v, x) = round(&full_transformation(2).unwrap());
        for (p, &(c, d)) in v.pairs.iter().enumerate() {
            let m = x.morphisms[x.ig.g.identity(p)];
            assert_eq!((m.f, m.g), (v.x.c.identity(c), v.x.d.identity(d)));
        }
    }

    #[test]
    fn identity_morphism_maps_to_identity() {
        let (_, v, x) = round(&brandt2());
        let f = map_morphism(&CCMorphism::identity(&v.x), &x, &x).unwrap();
        assert_eq!(f, InductiveFunctor::identity(&x.ig));
        assert!(check_inductive_functor(&x.ig, &x.ig, &f).is_ok());
    }

    #[test]
    fn corrupted_object_map_breaks_the_eval_square() {
        let (_, v, x) = round(&rect_band(2, 2).unwrap());
        let mut m = CCMorphism::identity(&v.x);
        m.g.objects.swap(0, 1);
        let f = map_morphism(&m, &x, &x).unwrap();
        assert!(check_inductive_functor(&x.ig, &x.ig, &f).has("eval-square"));
    }
}
