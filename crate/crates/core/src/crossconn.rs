//! Cross-connections between normal categories.
//!
//! `Γ: 𝒟 → N*𝒞` is given by an idempotent cone `gamma[d]` per object, with
//! `Γ(d) = H(gamma[d];−)`, and a cone `gamma_mor[g]` per morphism, with
//! `Γ(g) = λ(gamma[d], gamma_mor[g], gamma[d′])`. The dual `Δ` is given the
//! same way and is checked, not derived.
//!
//! `N*𝒞` is presented as the category of principal right ideals of the cone
//! semigroup `T𝒞`: `H(ε;−) = H(ε′;−)` exactly when `ε 𝓡 ε′`, which validation
//! confirms on every input.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::biorder::{load_biorder, BiorderedSet};
use crate::fixtures::{principal_rcat, PrincipalCategory};
use crate::normcat::{
    all_cones, check_cone, check_functor, check_normal_category, cone_semigroup, h_functor,
    is_local_isomorphism, CategoryDoc, Cone, ConeSemigroup, Functor, HFunctor, NormalCategory,
    CONE_SEARCH_LIMIT,
};
use crate::report::Report;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct CrossConnection {
    pub name: String,
    pub c: NormalCategory,
    pub d: NormalCategory,
    pub gamma: Vec<Cone>,
    pub gamma_mor: Vec<Cone>,
    pub delta: Vec<Cone>,
    pub delta_mor: Vec<Cone>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossConnectionDoc {
    pub name: String,
    pub c: CategoryDoc,
    pub d: CategoryDoc,
    pub gamma: Vec<Cone>,
    pub gamma_mor: Vec<Cone>,
    pub delta: Vec<Cone>,
    pub delta_mor: Vec<Cone>,
}

impl CrossConnection {
    pub fn from_doc(doc: &CrossConnectionDoc) -> Result<Self> {
        Ok(Self {
            name: doc.name.clone(),
            c: NormalCategory::from_doc(&doc.c)?,
            d: NormalCategory::from_doc(&doc.d)?,
            gamma: doc.gamma.clone(),
            gamma_mor: doc.gamma_mor.clone(),
            delta: doc.delta.clone(),
            delta_mor: doc.delta_mor.clone(),
        })
    }

    pub fn to_doc(&self) -> CrossConnectionDoc {
        CrossConnectionDoc {
            name: self.name.clone(),
            c: self.c.to_doc(),
            d: self.d.to_doc(),
            gamma: self.gamma.clone(),
            gamma_mor: self.gamma_mor.clone(),
            delta: self.delta.clone(),
            delta_mor: self.delta_mor.clone(),
        }
    }

    /// The same data read from the other side: `(𝒞, 𝒟, Δ, Γ)`.
    pub fn dual(&self) -> Self {
        Self {
            name: format!("{}*", self.name),
            c: self.d.clone(),
            d: self.c.clone(),
            gamma: self.delta.clone(),
            gamma_mor: self.delta_mor.clone(),
            delta: self.gamma.clone(),
            delta_mor: self.gamma_mor.clone(),
        }
    }
}

/// `m = (F, G)` with `F: 𝒞 → 𝒞′` and `G: 𝒟 → 𝒟′`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CCMorphism {
    pub f: Functor,
    pub g: Functor,
}

impl CCMorphism {
    pub fn identity(x: &CrossConnection) -> Self {
        let id = |c: &NormalCategory| Functor {
            objects: (0..c.object_count()).collect(),
            morphisms: (0..c.morphism_count()).collect(),
        };
        Self {
            f: id(&x.c),
            g: id(&x.d),
        }
    }

    /// `self` then `other`.
    pub fn then(&self, other: &CCMorphism) -> Self {
        Self {
            f: self.f.then(&other.f),
            g: self.g.then(&other.g),
        }
    }
}

/// One side of a cross-connection, oriented so that transposes go from `own`
/// to `other`: the cones live in `other` and are indexed by `own`.
struct Side<'a> {
    own: &'a NormalCategory,
    other: &'a NormalCategory,
    obj_cones: &'a [Cone],
    mor_cones: &'a [Cone],
    pair_cones: &'a [Cone],
    h: &'a HashMap<Cone, HFunctor>,
    flip: bool,
}

/// A validated cross-connection with everything derived from it.
#[derive(Debug, Clone)]
pub struct ValidCross {
    pub x: CrossConnection,
    /// `T𝒞` and `T𝒟`: all cones, sorted.
    pub tc: ConeSemigroup,
    pub td: ConeSemigroup,
    /// `N*𝒞` and `N*𝒟` as principal right ideal categories of `tc`, `td`.
    pub nc: PrincipalCategory,
    pub nd: PrincipalCategory,
    /// `Γ: 𝒟 → N*𝒞` and `Δ: 𝒞 → N*𝒟`.
    pub gamma_f: Functor,
    pub delta_f: Functor,
    /// `E_Γ`, sorted, with lookups by pair, by `c` and by `d`.
    pub pairs: Vec<(usize, usize)>,
    pub pair_index: HashMap<(usize, usize), usize>,
    pub by_c: Vec<Vec<usize>>,
    pub by_d: Vec<Vec<usize>>,
    /// `γ(c,d)` and `δ(c,d)` per pair.
    pub gcone: Vec<Cone>,
    pub dcone: Vec<Cone>,
    /// `H(ε;−)` for every idempotent cone of `𝒞` (`hc`) and of `𝒟` (`hd`).
    pub hc: HashMap<Cone, HFunctor>,
    pub hd: HashMap<Cone, HFunctor>,
    /// `f*` keyed by `(f, p, p′)` for `f ∈ 𝒞(c,c′)`, and `g*` for `g ∈ 𝒟(d,d′)`.
    pub transpose_c: HashMap<(usize, usize, usize), usize>,
    pub transpose_d: HashMap<(usize, usize, usize), usize>,
}

impl ValidCross {
    pub fn pair(&self, c: usize, d: usize) -> Option<usize> {
        self.pair_index.get(&(c, d)).copied()
    }

    fn side_c(&self) -> Side<'_> {
        Side {
            own: &self.x.c,
            other: &self.x.d,
            obj_cones: &self.x.delta,
            mor_cones: &self.x.delta_mor,
            pair_cones: &self.dcone,
            h: &self.hd,
            flip: false,
        }
    }

    fn side_d(&self) -> Side<'_> {
        Side {
            own: &self.x.d,
            other: &self.x.c,
            obj_cones: &self.x.gamma,
            mor_cones: &self.x.gamma_mor,
            pair_cones: &self.gcone,
            h: &self.hc,
            flip: true,
        }
    }

    /// `f* ∈ 𝒟(d′,d)` for `f ∈ 𝒞(c,c′)`, `p = (c,d)`, `p′ = (c′,d′)`.
    pub fn transpose(&self, f: usize, p: usize, p2: usize) -> Result<usize> {
        match self.transpose_c.get(&(f, p, p2)) {
            Some(&t) => Ok(t),
            None => transpose_in(&self.side_c(), &self.pairs, f, p, p2),
        }
    }

    /// `g* ∈ 𝒞(c′,c)` for `g ∈ 𝒟(d,d′)`, `p = (c,d)`, `p′ = (c′,d′)`.
    pub fn transpose_dual(&self, g: usize, p: usize, p2: usize) -> Result<usize> {
        match self.transpose_d.get(&(g, p, p2)) {
            Some(&t) => Ok(t),
            None => transpose_in(&self.side_d(), &self.pairs, g, p, p2),
        }
    }
}

/// Every cone of `cat`, closed under the cone product.
fn cone_semigroup_of(cat: &NormalCategory) -> Result<ConeSemigroup> {
    let cones = all_cones(cat, CONE_SEARCH_LIMIT)?;
    cone_semigroup(cat, &cones, cones.len().max(1))
}

fn h_table(cat: &NormalCategory, t: &ConeSemigroup) -> Result<HashMap<Cone, HFunctor>> {
    t.cones()
        .iter()
        .filter(|g| g.is_idempotent(cat))
        .map(|g| Ok((g.clone(), h_functor(cat, g)?)))
        .collect()
}

/// `ε 𝓡 ε′` in `T` exactly when `H(ε;−) = H(ε′;−)`, over idempotent cones.
fn check_h_classes(
    t: &ConeSemigroup,
    h: &HashMap<Cone, HFunctor>,
    rule: &str,
    rep: &mut Report,
) -> Result<()> {
    let s = t.to_semigroup("T")?;
    let idem: Vec<usize> = (0..t.len())
        .filter(|&i| h.contains_key(t.cone(i)))
        .collect();
    for &a in &idem {
        for &b in &idem {
            let same = h[t.cone(a)].same_functor(&h[t.cone(b)]);
            rep.check(same == s.r_related(a, b), rule, &[a, b]);
        }
    }
    Ok(())
}

/// The functor `𝒟 → N*𝒞` given by the cone tables, or the rule it breaks.
fn dual_functor(
    own: &NormalCategory,
    other: &NormalCategory,
    t: &ConeSemigroup,
    n: &PrincipalCategory,
    obj: &[Cone],
    mor: &[Cone],
    rule: &str,
    rep: &mut Report,
) -> Option<Functor> {
    if obj.len() != other.object_count() || mor.len() != other.morphism_count() {
        rep.push(&format!("{rule}.shape"), &[obj.len(), mor.len()]);
        return None;
    }
    let mut ok = true;
    let mut idx = |g: &Cone, w: usize, rep: &mut Report| {
        let i = t.index_of(g);
        if i.is_none() {
            rep.push(&format!("{rule}.cone"), &[w]);
            ok = false;
        }
        i
    };
    let objs: Vec<Option<usize>> = (0..obj.len()).map(|d| idx(&obj[d], d, rep)).collect();
    let mors: Vec<Option<usize>> = (0..mor.len()).map(|m| idx(&mor[m], m, rep)).collect();
    if !ok {
        return None;
    }
    let mut objects = Vec::with_capacity(obj.len());
    for (d, i) in objs.iter().enumerate() {
        let i = i.expect("checked");
        rep.check(
            obj[d].is_idempotent(own),
            &format!("{rule}.idempotent"),
            &[d],
        );
        objects.push(n.object(i)?);
    }
    if !rep.is_ok() {
        return None;
    }
    let s = &n.semigroup;
    let mut morphisms = Vec::with_capacity(mor.len());
    for (m, u) in mors.iter().enumerate() {
        let (e, f, u) = (
            objs[other.dom(m)].expect("checked"),
            objs[other.cod(m)].expect("checked"),
            u.expect("checked"),
        );
        // In the opposite semigroup `n` was built from, `u ∈ e∘T∘f` means `u ∈ fTe`.
        if s.mul(s.mul(e, u), f) != u {
            rep.push(&format!("{rule}.morphism"), &[m]);
            continue;
        }
        match n.morphism(e, u, f) {
            Some(y) => morphisms.push(y),
            None => rep.push(&format!("{rule}.morphism"), &[m]),
        }
    }
    (morphisms.len() == mor.len()).then_some(Functor { objects, morphisms })
}

/// `ε∗(ε(c))⁻¹`: the idempotent cone with apex `c` in the 𝓡-class of `ε`.
fn recentre(cat: &NormalCategory, e: &Cone, c: usize) -> Option<Cone> {
    Some(e.star(cat, cat.inverse(e.component(c))?))
}

fn inspect(x: &CrossConnection) -> Result<(Report, Option<ValidCross>)> {
    let mut rep = Report::new();
    rep.absorb("C", check_normal_category(&x.c, None)?);
    rep.absorb("D", check_normal_category(&x.d, None)?);
    if !rep.is_ok() {
        return Ok((rep, None));
    }
    for (rule, cat, cones) in [
        ("gamma.cone", &x.c, &x.gamma),
        ("gamma.cone", &x.c, &x.gamma_mor),
        ("delta.cone", &x.d, &x.delta),
        ("delta.cone", &x.d, &x.delta_mor),
    ] {
        for (i, g) in cones.iter().enumerate() {
            rep.check(check_cone(cat, g).is_ok(), rule, &[i]);
        }
    }
    if !rep.is_ok() {
        return Ok((rep, None));
    }
    let (tc, td) = (cone_semigroup_of(&x.c)?, cone_semigroup_of(&x.d)?);
    let (hc, hd) = (h_table(&x.c, &tc)?, h_table(&x.d, &td)?);
    check_h_classes(&tc, &hc, "H-classes", &mut rep)?;
    check_h_classes(&td, &hd, "H-classes", &mut rep)?;
    let nc = principal_rcat(&tc.to_semigroup(&format!("T{}", x.c.name()))?)?;
    let nd = principal_rcat(&td.to_semigroup(&format!("T{}", x.d.name()))?)?;
    let gamma_f = dual_functor(
        &x.c,
        &x.d,
        &tc,
        &nc,
        &x.gamma,
        &x.gamma_mor,
        "gamma",
        &mut rep,
    );
    let delta_f = dual_functor(
        &x.d,
        &x.c,
        &td,
        &nd,
        &x.delta,
        &x.delta_mor,
        "delta",
        &mut rep,
    );
    let (Some(gamma_f), Some(delta_f)) = (gamma_f, delta_f) else {
        return Ok((rep, None));
    };
    rep.absorb("gamma", is_local_isomorphism(&x.d, &nc.cat, &gamma_f));
    rep.absorb("delta", is_local_isomorphism(&x.c, &nd.cat, &delta_f));

    let (nc_obj, nd_obj) = (x.c.object_count(), x.d.object_count());
    let mut pairs = Vec::new();
    for c in 0..nc_obj {
        for d in 0..nd_obj {
            let in_gamma = x.c.is_iso(x.gamma[d].component(c));
            let in_delta = x.d.is_iso(x.delta[c].component(d));
            rep.check(in_gamma == in_delta, "duality", &[c, d]);
            if in_gamma {
                pairs.push((c, d));
            }
        }
    }
    for c in 0..nc_obj {
        rep.check(pairs.iter().any(|p| p.0 == c), "gamma.M-surjective", &[c]);
    }
    for d in 0..nd_obj {
        rep.check(pairs.iter().any(|p| p.1 == d), "delta.M-surjective", &[d]);
    }
    let mut gcone = Vec::with_capacity(pairs.len());
    let mut dcone = Vec::with_capacity(pairs.len());
    for (k, &(c, d)) in pairs.iter().enumerate() {
        for (rule, cat, base, apex, h, out) in [
            ("gamma.unique-cone", &x.c, &x.gamma[d], c, &hc, &mut gcone),
            ("delta.unique-cone", &x.d, &x.delta[c], d, &hd, &mut dcone),
        ] {
            let Some(e) = recentre(cat, base, apex) else {
                rep.push(rule, &[k]);
                continue;
            };
            let target = &h[base];
            let count = h
                .iter()
                .filter(|(g, hg)| g.apex == apex && hg.same_functor(target))
                .count();
            rep.check(count == 1 && h.contains_key(&e), rule, &[k]);
            out.push(e);
        }
    }
    if !rep.is_ok() {
        return Ok((rep, None));
    }
    let pair_index: HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut by_c = vec![Vec::new(); nc_obj];
    let mut by_d = vec![Vec::new(); nd_obj];
    for (i, &(c, d)) in pairs.iter().enumerate() {
        by_c[c].push(i);
        by_d[d].push(i);
    }
    let mut v = ValidCross {
        x: x.clone(),
        tc,
        td,
        nc,
        nd,
        gamma_f,
        delta_f,
        pairs,
        pair_index,
        by_c,
        by_d,
        gcone,
        dcone,
        hc,
        hd,
        transpose_c: HashMap::new(),
        transpose_d: HashMap::new(),
    };
    let transpose_c = transpose_table(&v.side_c(), &v.pairs, "transpose", &mut rep);
    let transpose_d = transpose_table(&v.side_d(), &v.pairs, "transpose-dual", &mut rep);
    v.transpose_c = transpose_c;
    v.transpose_d = transpose_d;
    if !rep.is_ok() {
        return Ok((rep, None));
    }
    Ok((rep, Some(v)))
}

/// Normality of both categories, the cone tables, `Γ` and `Δ` as local
/// isomorphisms into the normal duals, M-surjectivity, agreement of `E_Γ`
/// with `E_Δ`, uniqueness of `γ(c,d)` and `δ(c,d)`, and existence and
/// uniqueness of every transpose.
pub fn validate_crossconnection(x: &CrossConnection) -> Result<Report> {
    Ok(inspect(x)?.0)
}

/// Validates `x` and returns its derived data.
pub fn analyze(x: &CrossConnection) -> Result<ValidCross> {
    match inspect(x)? {
        (_, Some(v)) => Ok(v),
        (rep, None) => Err(Error::Invalid(rep)),
    }
}

fn transpose_table(
    side: &Side<'_>,
    pairs: &[(usize, usize)],
    rule: &str,
    rep: &mut Report,
) -> HashMap<(usize, usize, usize), usize> {
    let mut table = HashMap::new();
    let ends = |p: usize| {
        if side.flip {
            (pairs[p].1, pairs[p].0)
        } else {
            pairs[p]
        }
    };
    for p in 0..pairs.len() {
        for p2 in 0..pairs.len() {
            for &f in side.own.hom(ends(p).0, ends(p2).0) {
                match transpose_in(side, pairs, f, p, p2) {
                    Ok(t) => {
                        table.insert((f, p, p2), t);
                    }
                    Err(Error::NonUniqueTranspose(..)) => {
                        rep.push(&format!("{rule}.unique"), &[f, p, p2])
                    }
                    Err(_) => rep.push(rule, &[f, p, p2]),
                }
            }
        }
    }
    table
}

/// Searches `other(d′,d)` for the `u` with `u·η_{δ(c,d)}(x)(σ) =
/// η_{δ(c′,d′)}(x)(Δ(f)_x(σ))` for all `x` and `σ ∈ Δ(c)(x)`, where `Δ(f)`
/// acts by `σ ↦ δ_{c′}∗(δ̃_f·η_{δ_c}(x)(σ))°`.
fn transpose_in(
    side: &Side<'_>,
    pairs: &[(usize, usize)],
    f: usize,
    p: usize,
    p2: usize,
) -> Result<usize> {
    let ends = |p: usize| {
        if side.flip {
            (pairs[p].1, pairs[p].0)
        } else {
            pairs[p]
        }
    };
    let ((c, d), (c2, d2)) = (ends(p), ends(p2));
    let (own, other) = (side.own, side.other);
    if own.dom(f) != c || own.cod(f) != c2 {
        return Err(Error::MalformedTable(format!(
            "morphism {f} does not run between the given pairs"
        )));
    }
    let lookup = |g: &Cone| side.h.get(g).ok_or(Error::NoTranspose(f));
    let (dc, dc2, df) = (&side.obj_cones[c], &side.obj_cones[c2], &side.mor_cones[f]);
    let j = other
        .inclusion(df.apex, dc.apex)
        .ok_or(Error::NoTranspose(f))?;
    let tilde = other.compose(df.component(dc2.apex), j);
    let (hs, ht) = (lookup(&side.pair_cones[p])?, lookup(&side.pair_cones[p2])?);
    let (h_c, h_c2) = (lookup(dc)?, lookup(dc2)?);
    let mut constraints = Vec::new();
    for y in 0..other.object_count() {
        for (i, sigma) in hs.sets[y].iter().enumerate() {
            let a = h_c.eta[y][h_c.position(y, sigma).ok_or(Error::NoTranspose(f))?];
            let s2 = h_c2.eta_inverse(other, other.compose(tilde, a))?;
            let rhs = ht.eta[y][ht.position(y, &s2).ok_or(Error::NoTranspose(f))?];
            constraints.push((hs.eta[y][i], rhs));
        }
    }
    let found: Vec<usize> = other
        .hom(d2, d)
        .iter()
        .copied()
        .filter(|&u| constraints.iter().all(|&(l, r)| other.compose(u, l) == r))
        .collect();
    match found.as_slice() {
        [u] => Ok(*u),
        [] => Err(Error::NoTranspose(f)),
        many => Err(Error::NonUniqueTranspose(f, many.len())),
    }
}

/// `E_Γ` with `(c,d) ≤ℓ (c′,d′) ⟺ c ⊆ c′`, `(c,d) ≤r (c′,d′) ⟺ d ⊆ d′` and
/// basic products
///
/// - `c ⊆ c′`: `(c,d)`
/// - `c′ ⊆ c`: `(c′, im δ(c,d)(d′))`
/// - `d′ ⊆ d`: `(c′,d′)`
/// - `d ⊆ d′`: `(im γ(c′,d′)(c), d)`
///
/// which must agree wherever two cases apply.
pub fn biorder_of(v: &ValidCross) -> Result<BiorderedSet> {
    let (c_cat, d_cat) = (&v.x.c, &v.x.d);
    let n = v.pairs.len();
    let mut table = vec![vec![None; n]; n];
    let find = |c: usize, d: usize, w: [usize; 2]| {
        v.pair(c, d)
            .ok_or_else(|| Error::MalformedTable(format!("product of pairs {w:?} is not in E_Γ")))
    };
    for p in 0..n {
        let (c, d) = v.pairs[p];
        for q in 0..n {
            let (c2, d2) = v.pairs[q];
            let mut cands = Vec::new();
            if c_cat.subobject(c, c2) {
                cands.push(p);
            }
            if c_cat.subobject(c2, c) {
                let im = d_cat.image(v.dcone[p].component(d2))?;
                cands.push(find(c2, im, [p, q])?);
            }
            if d_cat.subobject(d2, d) {
                cands.push(q);
            }
            if d_cat.subobject(d, d2) {
                let im = c_cat.image(v.gcone[q].component(c))?;
                cands.push(find(im, d, [p, q])?);
            }
            if let Some(&first) = cands.first() {
                if cands.iter().any(|&r| r != first) {
                    return Err(Error::AxiomViolation {
                        axiom: "basic-product".into(),
                        witness: vec![p, q],
                    });
                }
                table[p][q] = Some(first);
            }
        }
    }
    let labels = v
        .pairs
        .iter()
        .map(|&(c, d)| format!("({},{})", c_cat.object_label(c), d_cat.object_label(d)))
        .collect();
    load_biorder(&format!("E({})", v.x.name), &table, Some(labels))
}

/// Both functors and inclusion preservation, then
///
/// - M1: `(Fc, Gd) ∈ E_Γ′` and `F(γ(c,d)(c′)) = γ′(Fc,Gd)(Fc′)` for all `(c,d)`, `c′`;
/// - M2: `G(f*) = (Ff)*` for every transpose.
pub fn check_cc_morphism(m: &CCMorphism, x: &ValidCross, y: &ValidCross) -> Report {
    let mut rep = Report::new();
    rep.absorb("F", check_functor(&x.x.c, &y.x.c, &m.f));
    rep.absorb("G", check_functor(&x.x.d, &y.x.d, &m.g));
    if !rep.is_ok() {
        return rep;
    }
    for (rule, src, tgt, func) in [
        ("F.inclusion", &x.x.c, &y.x.c, &m.f),
        ("G.inclusion", &x.x.d, &y.x.d, &m.g),
    ] {
        for a in 0..src.object_count() {
            for b in 0..src.object_count() {
                if let Some(j) = src.inclusion(a, b) {
                    rep.check(tgt.is_inclusion(func.morphisms[j]), rule, &[a, b]);
                }
            }
        }
    }
    let image: Vec<Option<usize>> = x
        .pairs
        .iter()
        .map(|&(c, d)| y.pair(m.f.objects[c], m.g.objects[d]))
        .collect();
    for (p, q) in image.iter().enumerate() {
        let Some(q) = *q else {
            rep.push("M1", &[p]);
            continue;
        };
        for c2 in 0..x.x.c.object_count() {
            let lhs = m.f.morphisms[x.gcone[p].component(c2)];
            rep.check(lhs == y.gcone[q].component(m.f.objects[c2]), "M1", &[p, c2]);
        }
    }
    if rep.has("M1") {
        return rep;
    }
    let mut keys: Vec<_> = x.transpose_c.iter().collect();
    keys.sort_unstable();
    for (&(f, p, p2), &t) in keys {
        let (q, q2) = (image[p].expect("M1 holds"), image[p2].expect("M1 holds"));
        match y.transpose(m.f.morphisms[f], q, q2) {
            Ok(t2) => rep.check(m.g.morphisms[t] == t2, "M2", &[f, p, p2]),
            Err(_) => rep.push("M2", &[f, p, p2]),
        }
    }
    rep
}
