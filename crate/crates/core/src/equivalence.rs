//! The two round trips: `𝕀ℂ ≅ 1` on cross-connections and `ℂ𝕀 ≅ 1` on
//! inductive groupoids, checked extensionally on finite instances.

use serde::{Deserialize, Serialize};

use crate::crossconn::{analyze, check_cc_morphism, CCMorphism, CrossConnection, ValidCross};
use crate::fixtures::{automorphisms, embeddings, trace_functor, trace_groupoid, FiniteSemigroup};
use crate::functor_ci::{build_gamma, map_inductive_functor, CrossOfG, LCat};
use crate::functor_ic::{build_ig, map_morphism, CrossGroupoid};
use crate::inductive::{
    check_inductive, check_inductive_functor, Groupoid, InductiveFunctor, InductiveGroupoid,
};
use crate::normcat::{check_isomorphism, Cone, Functor, NormalCategory};
use crate::report::Report;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    CrSide,
    IgSide,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IsoComponents {
    /// `(F_Γ1, F_Γ2)`.
    Pair(CCMorphism),
    /// `F_𝒢`.
    Single(InductiveFunctor),
}

/// One naturality square, named by the test morphism it was run for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NaturalityCheck {
    pub morphism: String,
    pub commutes: bool,
    pub report: Report,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundTripReport {
    pub direction: Direction,
    pub subject: String,
    pub iso_components: Option<IsoComponents>,
    pub checks: Report,
    pub naturality_checks: Vec<NaturalityCheck>,
    pub verdict: Verdict,
}

impl RoundTripReport {
    fn new(
        direction: Direction,
        subject: &str,
        iso: Option<IsoComponents>,
        checks: Report,
        squares: Vec<NaturalityCheck>,
    ) -> Self {
        let ok = iso.is_some() && checks.is_ok() && squares.iter().all(|s| s.commutes);
        Self {
            direction,
            subject: subject.to_string(),
            iso_components: iso,
            checks,
            naturality_checks: squares,
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        }
    }

    fn failed(direction: Direction, subject: &str, checks: Report) -> Self {
        Self::new(direction, subject, None, checks, Vec::new())
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn square(morphism: &str, report: Report) -> NaturalityCheck {
    NaturalityCheck {
        morphism: morphism.to_string(),
        commutes: report.is_ok(),
        report,
    }
}

/// `G`, `ℂ(G)`, `𝕀ℂ(G)` and `F_𝒢: G → 𝒢_{ℂ(G)}` with its checks.
#[derive(Debug, Clone)]
pub struct IgRound {
    pub name: String,
    pub ig: InductiveGroupoid,
    pub cc: CrossOfG,
    pub valid: ValidCross,
    pub back: CrossGroupoid,
    pub iso: InductiveFunctor,
}

/// `F_𝒢(e) = (←e, →e)` and `F_𝒢(α) = ([𝐝α,α,𝐫α⟩, ⟨𝐝α,α⁻¹,𝐫α])`.
fn f_g(ig: &InductiveGroupoid, cc: &CrossOfG, back: &CrossGroupoid) -> Result<InductiveFunctor> {
    let g = &ig.g;
    let objects = (0..ig.e.n())
        .map(|e| {
            let (c, d) = cc.pair_of(e);
            back.pair(c, d)
                .ok_or_else(|| Error::MalformedTable(format!("(←{e},→{e}) is not in E_Γ")))
        })
        .collect::<Result<Vec<_>>>()?;
    let morphisms = (0..g.morphism_count())
        .map(|a| {
            let (d, r) = (g.dom(a), g.cod(a));
            let l = cc.lg.canon(d, a, r)?;
            let rr = cc.rg.canon(d, g.inverse(a), r)?;
            match (l, rr) {
                (Some(l), Some(rr)) => back.morphism(l, rr).ok_or_else(|| {
                    Error::MalformedTable(format!("image of morphism {a} is not in G_Γ"))
                }),
                _ => Err(Error::MalformedTable(format!(
                    "morphism {a} has no canonical image"
                ))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(InductiveFunctor { objects, morphisms })
}

/// Inverse tables of a bijective functor, or `None`.
fn invert(f: &InductiveFunctor, objects: usize, morphisms: usize) -> Option<InductiveFunctor> {
    let inv = |map: &[usize], size: usize| {
        let mut out = vec![usize::MAX; size];
        for (i, &y) in map.iter().enumerate() {
            if y >= size || out[y] != usize::MAX {
                return None;
            }
            out[y] = i;
        }
        (map.len() == size).then_some(out)
    };
    Some(InductiveFunctor {
        objects: inv(&f.objects, objects)?,
        morphisms: inv(&f.morphisms, morphisms)?,
    })
}

/// Builds the round trip of `ig`.
pub fn ig_round(name: &str, ig: &InductiveGroupoid) -> Result<IgRound> {
    let cc = build_gamma(ig)?;
    let valid = analyze(&cc.cross)?;
    let back = build_ig(&valid)?;
    let iso = f_g(ig, &cc, &back)?;
    Ok(IgRound {
        name: name.to_string(),
        ig: ig.clone(),
        cc,
        valid,
        back,
        iso,
    })
}

/// `F_𝒢` is an inductive isomorphism whose object map preserves basic
/// products in both directions.
pub fn check_ig_iso(r: &IgRound) -> Report {
    let (ig, back, iso) = (&r.ig, &r.back, &r.iso);
    let mut report = Report::new();
    report.absorb("F_G", check_inductive_functor(ig, &back.ig, iso));
    match invert(iso, back.ig.e.n(), back.ig.g.morphism_count()) {
        Some(inv)
            if back.ig.g.morphism_count() == ig.g.morphism_count() && back.ig.e.n() == ig.e.n() =>
        {
            report.absorb("F_G^-1", check_inductive_functor(&back.ig, ig, &inv));
        }
        _ => report.push("F_G.bijective", &[]),
    }
    if !report.is_ok() {
        return report;
    }
    for e in 0..ig.e.n() {
        for f in 0..ig.e.n() {
            let image = back.ig.e.product(iso.objects[e], iso.objects[f]);
            let ok = ig.e.product(e, f).map(|p| iso.objects[p]) == image;
            report.check(ok, "F_G.biorder", &[e, f]);
        }
    }
    report
}

/// `ℂ𝕀(F)∘F_𝒢 = F_𝒢′∘F` for an inductive functor `F: G → G′`.
pub fn ig_square(src: &IgRound, tgt: &IgRound, f: &InductiveFunctor) -> Result<Report> {
    let mut rep = check_inductive_functor(&src.ig, &tgt.ig, f);
    if !rep.is_ok() {
        return Ok(rep);
    }
    let ci = match map_inductive_functor(&src.cc, &tgt.cc, f)
        .and_then(|m| map_morphism(&m, &src.back, &tgt.back))
    {
        Ok(ci) => ci,
        Err(_) => {
            rep.push("CI(F)", &[]);
            return Ok(rep);
        }
    };
    rep.absorb(
        "CI(F)",
        check_inductive_functor(&src.back.ig, &tgt.back.ig, &ci),
    );
    let (lhs, rhs) = (src.iso.then(&ci), f.then(&tgt.iso));
    for e in 0..src.ig.e.n() {
        rep.check(lhs.objects[e] == rhs.objects[e], "square.objects", &[e]);
    }
    for a in 0..src.ig.g.morphism_count() {
        rep.check(lhs.morphisms[a] == rhs.morphisms[a], "square", &[a]);
    }
    Ok(rep)
}

/// A test morphism for a naturality square, with the round trip of its target.
pub struct TestFunctor<'a, R> {
    pub label: String,
    pub target: &'a R,
    pub functor: InductiveFunctor,
}

/// `F_𝒢` is an inductive isomorphism and every listed square commutes.
pub fn iso_ig(src: &IgRound, tests: &[TestFunctor<'_, IgRound>]) -> Result<RoundTripReport> {
    let mut squares = vec![square(
        "identity",
        ig_square(src, src, &InductiveFunctor::identity(&src.ig))?,
    )];
    for t in tests {
        squares.push(square(&t.label, ig_square(src, t.target, &t.functor)?));
    }
    Ok(RoundTripReport::new(
        Direction::IgSide,
        &src.name,
        Some(IsoComponents::Single(src.iso.clone())),
        check_ig_iso(src),
        squares,
    ))
}

/// `x`, `𝕀(x)`, `ℂ𝕀(x)` and `(F_Γ1, F_Γ2): x → ℂ𝕀(x)` with its checks.
#[derive(Debug, Clone)]
pub struct CrRound {
    pub name: String,
    pub valid: ValidCross,
    pub ig: CrossGroupoid,
    pub cc: CrossOfG,
    pub valid2: ValidCross,
    pub iso: CCMorphism,
    pub report: Report,
}

/// One side of `(F_Γ1, F_Γ2)`. A triple `[p,α,p′⟩` of `lc` is realized in
/// `own` as `γ(𝐝α)(c_p) · comp(α) · j(c_{𝐫α}, c_{p′})`; the functor sends
/// each morphism to the one triple class realizing it.
fn realize(
    own: &NormalCategory,
    lc: &LCat,
    cones: &[Cone],
    proj: &dyn Fn(usize) -> usize,
    comp: &dyn Fn(usize) -> usize,
    rule: &str,
    rep: &mut Report,
) -> Result<Option<Functor>> {
    let g = &lc.ig.g;
    let n = lc.ig.e.n();
    let mut hit: Vec<Option<usize>> = vec![None; own.morphism_count()];
    let mut realized: Vec<Option<usize>> = vec![None; lc.cat.morphism_count()];
    for e in 0..n {
        for f in 0..n {
            for a in 0..g.morphism_count() {
                if !lc.is_valid(e, a, f) {
                    continue;
                }
                let (d, r) = (g.dom(a), g.cod(a));
                let Some(j) = own.inclusion(proj(r), proj(f)) else {
                    rep.push(&format!("{rule}.inclusion"), &[e, a, f]);
                    continue;
                };
                let h = own.compose(own.compose(cones[d].component(proj(e)), comp(a)), j);
                let m = lc.canon(e, a, f)?.ok_or_else(|| {
                    Error::MalformedTable(format!("valid triple ({e},{a},{f}) has no class"))
                })?;
                if realized[m].is_some_and(|x| x != h) || hit[h].is_some_and(|x| x != m) {
                    rep.push(&format!("{rule}.well-defined"), &[e, a, f]);
                }
                realized[m] = Some(h);
                hit[h] = Some(m);
            }
        }
    }
    for (h, m) in hit.iter().enumerate() {
        rep.check(m.is_some(), &format!("{rule}.surjective"), &[h]);
    }
    if rep.has(&format!("{rule}.well-defined")) || rep.has(&format!("{rule}.surjective")) {
        return Ok(None);
    }
    let mut objects = vec![usize::MAX; own.object_count()];
    for p in 0..n {
        let (c, o) = (proj(p), lc.object(p));
        rep.check(
            objects[c] == usize::MAX || objects[c] == o,
            &format!("{rule}.objects"),
            &[p],
        );
        objects[c] = o;
    }
    if objects.contains(&usize::MAX) {
        rep.push(&format!("{rule}.objects"), &[]);
        return Ok(None);
    }
    Ok(Some(Functor {
        objects,
        morphisms: hit.into_iter().map(|m| m.expect("surjective")).collect(),
    }))
}

/// Builds the round trip of `x`. `report` holds the realization failures
/// that left `iso` undefined.
pub fn cr_round(x: &CrossConnection) -> Result<CrRound> {
    let valid = analyze(x)?;
    let ig = build_ig(&valid)?;
    let cc = build_gamma(&ig.ig)?;
    let valid2 = analyze(&cc.cross)?;
    let mut report = Report::new();
    let gg = &ig.ig.g;
    let proj_c = |p: usize| ig.pairs[p].0;
    let proj_d = |p: usize| ig.pairs[p].1;
    let first = |a: usize| ig.morphisms[a].f;
    let second_inv = |a: usize| ig.morphisms[gg.inverse(a)].g;
    let f1 = realize(
        &x.c,
        &cc.lg,
        &valid.gcone,
        &proj_c,
        &first,
        "F1",
        &mut report,
    )?;
    let f2 = realize(
        &x.d,
        &cc.rg,
        &valid.dcone,
        &proj_d,
        &second_inv,
        "F2",
        &mut report,
    )?;
    let empty = || Functor {
        objects: vec![],
        morphisms: vec![],
    };
    let iso = CCMorphism {
        f: f1.unwrap_or_else(empty),
        g: f2.unwrap_or_else(empty),
    };
    Ok(CrRound {
        name: x.name.clone(),
        valid,
        ig,
        cc,
        valid2,
        iso,
        report,
    })
}

/// `F_Γ1`, `F_Γ2` are isomorphisms forming a cross-connection morphism,
/// agree with `[c,f,c′⟩` on groupoid pairs, and `α ∼_L β` iff the first
/// components agree (dually for `∼_R`).
pub fn check_cr_iso(r: &CrRound) -> Result<Report> {
    let mut report = r.report.clone();
    if !report.is_ok() {
        return Ok(report);
    }
    let (x, cc, iso) = (&r.valid.x, &r.cc, &r.iso);
    report.absorb("F1", check_isomorphism(&x.c, &cc.lg.cat, &iso.f));
    report.absorb("F2", check_isomorphism(&x.d, &cc.rg.cat, &iso.g));
    if !report.is_ok() {
        return Ok(report);
    }
    report.absorb("F", check_cc_morphism(iso, &r.valid, &r.valid2));
    let ms = &r.ig.morphisms;
    let gg = &r.ig.ig.g;
    let classes = (0..ms.len())
        .map(|a| {
            let (d, c) = (gg.dom(a), gg.cod(a));
            Ok((cc.lg.canon(d, a, c)?, cc.rg.canon(d, gg.inverse(a), c)?))
        })
        .collect::<Result<Vec<_>>>()?;
    for (a, m) in ms.iter().enumerate() {
        let (l, rr) = classes[a];
        report.check(l == Some(iso.f.morphisms[m.f]), "F1.pair", &[a]);
        report.check(rr == Some(iso.g.morphisms[m.g]), "F2.pair", &[a]);
        for (b, m2) in ms.iter().enumerate() {
            report.check((l == classes[b].0) == (m.f == m2.f), "sim-L", &[a, b]);
            report.check((rr == classes[b].1) == (m.g == m2.g), "sim-R", &[a, b]);
        }
    }
    Ok(report)
}

/// `𝕀ℂ(m)∘(F_Γ1,F_Γ2) = (F_Γ′1,F_Γ′2)∘m` for a morphism `m: x → y`.
pub fn cr_square(src: &CrRound, tgt: &CrRound, m: &CCMorphism) -> Result<Report> {
    let mut rep = check_cc_morphism(m, &src.valid, &tgt.valid);
    if !rep.is_ok() {
        return Ok(rep);
    }
    let ic = match map_morphism(m, &src.ig, &tgt.ig)
        .and_then(|f| map_inductive_functor(&src.cc, &tgt.cc, &f))
    {
        Ok(ic) => ic,
        Err(_) => {
            rep.push("IC(m)", &[]);
            return Ok(rep);
        }
    };
    rep.absorb("IC(m)", check_cc_morphism(&ic, &src.valid2, &tgt.valid2));
    let (lhs, rhs) = (src.iso.then(&ic), m.then(&tgt.iso));
    for (rule, l, r) in [("square.F", &lhs.f, &rhs.f), ("square.G", &lhs.g, &rhs.g)] {
        for (i, (a, b)) in l.morphisms.iter().zip(&r.morphisms).enumerate() {
            rep.check(a == b, rule, &[i]);
        }
        for (i, (a, b)) in l.objects.iter().zip(&r.objects).enumerate() {
            rep.check(a == b, &format!("{rule}.objects"), &[i]);
        }
    }
    Ok(rep)
}

/// A test cross-connection morphism for a naturality square.
pub struct TestMorphism<'a> {
    pub label: String,
    pub target: &'a CrRound,
    pub morphism: CCMorphism,
}

/// `(F_Γ1, F_Γ2)` is an isomorphism of cross-connections and every listed
/// square commutes.
pub fn iso_cr(src: &CrRound, tests: &[TestMorphism<'_>]) -> Result<RoundTripReport> {
    if !src.report.is_ok() {
        return Ok(RoundTripReport::failed(
            Direction::CrSide,
            &src.name,
            src.report.clone(),
        ));
    }
    let mut squares = vec![square(
        "identity",
        cr_square(src, src, &CCMorphism::identity(&src.valid.x))?,
    )];
    for t in tests {
        if t.target.report.is_ok() {
            squares.push(square(&t.label, cr_square(src, t.target, &t.morphism)?));
        } else {
            let mut rep = Report::new();
            rep.push("target-iso", &[]);
            squares.push(square(&t.label, rep));
        }
    }
    let iso = Some(IsoComponents::Pair(src.iso.clone()));
    Ok(RoundTripReport::new(
        Direction::CrSide,
        &src.name,
        iso,
        check_cr_iso(src)?,
        squares,
    ))
}

/// What a round trip can start from.
#[derive(Debug, Clone)]
pub enum RoundTripInput {
    Semigroup(FiniteSemigroup),
    Groupoid(String, InductiveGroupoid),
    Cross(CrossConnection),
}

/// Both directions on one input. Semigroups contribute their automorphisms
/// as test morphisms; the other inputs are checked against the identity.
pub fn roundtrip_report(input: &RoundTripInput) -> Result<[RoundTripReport; 2]> {
    let (name, ig) = match input {
        RoundTripInput::Semigroup(s) => {
            let [pair] =
                <[_; 1]>::try_from(fixture_suite(std::slice::from_ref(s))?).expect("one fixture");
            return Ok(pair);
        }
        RoundTripInput::Groupoid(name, ig) => (name, ig),
        RoundTripInput::Cross(x) => return cross_roundtrip(x),
    };
    let checked = check_inductive(ig)?;
    if !checked.is_ok() {
        let mut cr = Report::new();
        cr.push("input-not-inductive", &[]);
        return Ok([
            RoundTripReport::failed(Direction::IgSide, name, checked),
            RoundTripReport::failed(Direction::CrSide, name, cr),
        ]);
    }
    let ir = ig_round(name, ig)?;
    let cr = cr_round(&ir.cc.cross)?;
    Ok([iso_ig(&ir, &[])?, iso_cr(&cr, &[])?])
}

/// A semigroup homomorphism used as a test morphism, as a trace functor.
#[derive(Debug, Clone)]
pub struct TestArrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
    pub functor: InductiveFunctor,
}

/// The nonidentity automorphisms of each fixture and, for every ordered pair
/// of distinct fixtures, the two least embeddings between them.
pub fn test_arrows(fixtures: &[FiniteSemigroup]) -> Result<Vec<TestArrow>> {
    let mut out = Vec::new();
    for (i, s) in fixtures.iter().enumerate() {
        for h in automorphisms(s).into_iter().filter(|h| !h.is_identity()) {
            let functor = trace_functor(s, s, &h)?;
            out.push(TestArrow {
                label: format!("{} aut {:?}", s.name(), h.map),
                source: i,
                target: i,
                functor,
            });
        }
        for (j, t) in fixtures.iter().enumerate() {
            if i == j {
                continue;
            }
            for h in embeddings(s, t).into_iter().take(2) {
                let functor = trace_functor(s, t, &h)?;
                out.push(TestArrow {
                    label: format!("{} -> {} {:?}", s.name(), t.name(), h.map),
                    source: i,
                    target: j,
                    functor,
                });
            }
        }
    }
    Ok(out)
}

/// `G(S)`, `ℂ(G(S))` and the round trips built from them.
pub fn fixture_round(s: &FiniteSemigroup) -> Result<(IgRound, CrRound)> {
    let (ig, _) = trace_groupoid(s)?;
    let ir = ig_round(s.name(), &ig)?;
    let cr = cr_round(&ir.cc.cross)?;
    Ok((ir, cr))
}

/// Both reports for fixture `i`, with squares for the identity and every
/// arrow leaving it. `rounds` holds `fixture_round` of each fixture.
pub fn fixture_reports(
    i: usize,
    rounds: &[(IgRound, CrRound)],
    arrows: &[TestArrow],
) -> Result<[RoundTripReport; 2]> {
    let (ir, cr) = &rounds[i];
    let mine: Vec<&TestArrow> = arrows.iter().filter(|a| a.source == i).collect();
    let ig_tests: Vec<TestFunctor<'_, IgRound>> = mine
        .iter()
        .map(|a| TestFunctor {
            label: a.label.clone(),
            target: &rounds[a.target].0,
            functor: a.functor.clone(),
        })
        .collect();
    let cr_tests = mine
        .iter()
        .map(|a| {
            let morphism = map_inductive_functor(&ir.cc, &rounds[a.target].0.cc, &a.functor)?;
            Ok(TestMorphism {
                label: a.label.clone(),
                target: &rounds[a.target].1,
                morphism,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok([iso_ig(ir, &ig_tests)?, iso_cr(cr, &cr_tests)?])
}

/// Both round trips for every fixture.
pub fn fixture_suite(fixtures: &[FiniteSemigroup]) -> Result<Vec<[RoundTripReport; 2]>> {
    let rounds = fixtures
        .iter()
        .map(fixture_round)
        .collect::<Result<Vec<_>>>()?;
    let arrows = test_arrows(fixtures)?;
    (0..fixtures.len())
        .map(|i| fixture_reports(i, &rounds, &arrows))
        .collect()
}

fn cross_roundtrip(x: &CrossConnection) -> Result<[RoundTripReport; 2]> {
    let checked = crate::crossconn::validate_crossconnection(x)?;
    if !checked.is_ok() {
        let mut ig = Report::new();
        ig.push("input-not-valid", &[]);
        return Ok([
            RoundTripReport::failed(Direction::IgSide, &x.name, ig),
            RoundTripReport::failed(Direction::CrSide, &x.name, checked),
        ]);
    }
    let cr = cr_round(x)?;
    let cr_side = iso_cr(&cr, &[])?;
    let ir = ig_round(&x.name, &cr.ig.ig)?;
    let ig_side = iso_ig(&ir, &[])?;
    Ok([ig_side, cr_side])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{
        brandt2, full_transformation, left_zero, rect_band, right_zero, semilattice_chain,
        standard_fixtures,
    };

    #[test]
    fn fixtures_round_trip() {
        for s in [
            left_zero(2).unwrap(),
            right_zero(2).unwrap(),
            rect_band(2, 2).unwrap(),
            brandt2(),
            full_transformation(2).unwrap(),
        ] {
            let [ig, cr] = roundtrip_report(&RoundTripInput::Semigroup(s.clone())).unwrap();
            assert!(ig.passed(), "{}: {:?}", s.name(), ig.checks);
            assert!(
                cr.passed(),
                "{}: {} {:?}",
                s.name(),
                cr.checks,
                cr.naturality_checks
            );
        }
    }

    #[test]
    fn singleton_round_trips() {
        let [ig, cr] =
            roundtrip_report(&RoundTripInput::Semigroup(semilattice_chain(1).unwrap())).unwrap();
        assert!(ig.passed() && cr.passed());
    }

    #[test]
    fn corrupted_eval_fails_ig_side() {
        let (mut ig, _) = trace_groupoid(&rect_band(2, 2).unwrap()).unwrap();
        let key = *ig.eval.keys().min().unwrap();
        let other = (0..ig.g.morphism_count())
            .find(|&x| Some(&x) != ig.eval.get(&key))
            .unwrap();
        ig.eval.insert(key, other);
        let [g, c] = roundtrip_report(&RoundTripInput::Groupoid("bad".into(), ig)).unwrap();
        assert!(!g.passed() && !c.passed());
        assert!(g.checks.has("eval"), "{}", g.checks);
    }

    #[test]
    fn suite_has_arrows_for_every_fixture() {
        let fx = standard_fixtures();
        let arrows = test_arrows(&fx).unwrap();
        for i in 0..fx.len() {
            let touching = arrows
                .iter()
                .filter(|a| a.source == i || a.target == i)
                .count();
            assert!(touching >= 2, "{}", fx[i].name());
        }
        for [g, c] in fixture_suite(&fx).unwrap() {
            assert!(
                g.passed() && c.passed(),
                "{}: {} {}",
                g.subject,
                g.checks,
                c.checks
            );
        }
    }

    fn twist(s: &FiniteSemigroup) -> (IgRound, CrRound, Vec<InductiveFunctor>) {
        let (ig, _) = trace_groupoid(s).unwrap();
        let mut ir = ig_round(s.name(), &ig).unwrap();
        let mut cr = cr_round(&ir.cc.cross).unwrap();
        let autos: Vec<_> = automorphisms(s)
            .into_iter()
            .filter(|h| !h.is_identity())
            .map(|h| trace_functor(s, s, &h).unwrap())
            .collect();
        let m = map_inductive_functor(&ir.cc, &ir.cc, &autos[0]).unwrap();
        ir.iso = ir.iso.then(&map_morphism(&m, &ir.back, &ir.back).unwrap());
        let back = map_morphism(&m, &cr.ig, &cr.ig).unwrap();
        cr.iso = cr
            .iso
            .then(&map_inductive_functor(&cr.cc, &cr.cc, &back).unwrap());
        (ir, cr, autos)
    }

    #[test]
    fn twisted_isomorphisms_are_not_natural() {
        let s = full_transformation(3).unwrap();
        let (ir, cr, autos) = twist(&s);
        let tests: Vec<_> = autos
            .iter()
            .map(|f| TestFunctor {
                label: String::new(),
                target: &ir,
                functor: f.clone(),
            })
            .collect();
        let rep = iso_ig(&ir, &tests).unwrap();
        assert!(rep.checks.is_ok());
        assert!(!rep.passed());
        let tests = autos
            .iter()
            .map(|f| TestMorphism {
                label: String::new(),
                target: &cr,
                morphism: map_inductive_functor(&ir.cc, &ir.cc, f).unwrap(),
            })
            .collect::<Vec<_>>();
        let rep = iso_cr(&cr, &tests).unwrap();
        assert!(!rep.passed());
        assert!(rep
            .naturality_checks
            .iter()
            .any(|c| !c.commutes && c.report.has("square.F")));
    }

    #[test]
    fn cross_input_round_trips() {
        let (ig, _) = trace_groupoid(&brandt2()).unwrap();
        let x = build_gamma(&ig).unwrap().cross;
        let [g, c] = roundtrip_report(&RoundTripInput::Cross(x)).unwrap();
        assert!(g.passed() && c.passed(), "{} {}", g.checks, c.checks);
    }
}
