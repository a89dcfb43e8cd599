//! The acceptance suite: one line per criterion, each `PASS` or `FAIL` with
//! what was checked and how long it took.

use std::time::{Duration, Instant};

use regcat_core::biorder::{check_bimorphism, is_regular, BiorderedSet};
use regcat_core::crossconn::{
    analyze, biorder_of, check_cc_morphism, validate_crossconnection, CCMorphism,
};
use regcat_core::echain::{chain_groupoid_or_section, default_cap, DEFAULT_SECTION_LEN};
use regcat_core::equivalence::{
    fixture_reports, fixture_round, roundtrip_report, test_arrows, RoundTripInput,
};
use regcat_core::fixtures::{
    idempotent_biorder, load_cayley, principal_lcat, principal_rcat, standard_fixtures,
    trace_groupoid, CayleyDoc, FiniteSemigroup,
};
use regcat_core::functor_ci::{
    build_gamma, build_lcat, build_rcat, check_factorizations, check_principal_cones,
    check_representative_independence, check_sandwich_independence,
};
use regcat_core::functor_ic::{
    build_ig, check_chain_order, check_one_sided, check_restriction_retractions, map_morphism,
};
use regcat_core::inductive::{
    check_inductive, check_inductive_functor, check_ordered_groupoid, object_leq, Groupoid,
    InductiveFunctor,
};
use regcat_core::io::{validate_structure, Bounds, Structure};
use regcat_core::normcat::{
    all_cones, check_normal_category, cone_semigroup, find_isomorphism, is_local_isomorphism,
    Functor,
};
use regcat_core::{Error, Report};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, ok_detail: String) -> Outcome {
    if failures.is_empty() {
        Outcome {
            pass: true,
            detail: ok_detail,
        }
    } else {
        Outcome {
            pass: false,
            detail: failures.join("; "),
        }
    }
}

fn fail_unless(failures: &mut Vec<String>, what: &str, rep: &Report) {
    if !rep.is_ok() {
        failures.push(format!("{what}: {rep}"));
    }
}

fn within(failures: &mut Vec<String>, start: Instant, budget: Duration) {
    let t = start.elapsed();
    if t > budget {
        failures.push(format!("took {t:?}, over {budget:?}"));
    }
}

fn names(fx: &[FiniteSemigroup]) -> String {
    fx.iter().map(|s| s.name()).collect::<Vec<_>>().join(", ")
}

fn c1_axioms(fx: &[FiniteSemigroup]) -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    for s in fx {
        let b = idempotent_biorder(s).unwrap();
        fail_unless(&mut bad, s.name(), &b.axiom_report());
        if !is_regular(&b) {
            bad.push(format!("{} is not regular", s.name()));
        }
    }
    within(&mut bad, t, Duration::from_secs(10));
    outcome(bad, format!("B1-B5 and regularity on {}", names(fx)))
}

/// Exactly one `y ≤ x` with `dom(y) = e` for every `e ≤ dom(x)`, and dually.
fn restriction_uniqueness<G: Groupoid>(g: &G) -> Report {
    let mut rep = Report::new();
    for x in 0..g.morphism_count() {
        for e in 0..g.object_count() {
            if object_leq(g, e, g.dom(x)) {
                let k = g.down(x).iter().filter(|&&u| g.dom(u) == e).count();
                rep.check(k == 1, "restriction", &[e, x]);
            }
            if object_leq(g, e, g.cod(x)) {
                let k = g.down(x).iter().filter(|&&u| g.cod(u) == e).count();
                rep.check(k == 1, "corestriction", &[e, x]);
            }
        }
    }
    rep
}

fn c2_chain_groupoid(fx: &[FiniteSemigroup]) -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    let (mut complete, mut section) = (Vec::new(), Vec::new());
    for s in fx {
        let b = idempotent_biorder(s).unwrap();
        let g = chain_groupoid_or_section(&b, default_cap(&b), DEFAULT_SECTION_LEN);
        if g.is_complete() {
            complete.push(format!("{} ({})", s.name(), g.groupoid.morphism_count()));
        } else {
            section.push(format!(
                "{} ({} chains of length <= {DEFAULT_SECTION_LEN})",
                s.name(),
                g.chains.len()
            ));
        }
        fail_unless(
            &mut bad,
            s.name(),
            &check_ordered_groupoid(&g.groupoid).unwrap(),
        );
        fail_unless(&mut bad, s.name(), &restriction_uniqueness(&g.groupoid));
    }
    within(&mut bad, t, Duration::from_secs(30));
    outcome(
        bad,
        format!(
            "OG1-OG3* and restriction uniqueness; complete: {}; bounded section (closure exceeds cap): {}",
            complete.join(", "),
            section.join(", ")
        ),
    )
}

fn c3_inductive(fx: &[FiniteSemigroup]) -> Outcome {
    let mut bad = Vec::new();
    for s in fx {
        let (ig, _) = trace_groupoid(s).unwrap();
        fail_unless(&mut bad, s.name(), &check_inductive(&ig).unwrap());
    }
    outcome(
        bad,
        format!("IG1 (all four mirror forms) and IG2 on {}", names(fx)),
    )
}

fn c4_c_construction(fx: &[FiniteSemigroup]) -> Outcome {
    let mut bad = Vec::new();
    for s in fx {
        let (ig, _) = trace_groupoid(s).unwrap();
        for (side, lc) in [
            ("L", build_lcat(&ig).unwrap()),
            ("R", build_rcat(&ig).unwrap()),
        ] {
            let what = format!("{} {side}", s.name());
            fail_unless(
                &mut bad,
                &what,
                &check_normal_category(&lc.cat, None).unwrap(),
            );
            fail_unless(&mut bad, &what, &check_sandwich_independence(&lc).unwrap());
            fail_unless(
                &mut bad,
                &what,
                &check_representative_independence(&lc).unwrap(),
            );
            fail_unless(&mut bad, &what, &check_principal_cones(&lc).unwrap());
            fail_unless(&mut bad, &what, &check_factorizations(&lc).unwrap());
        }
    }
    outcome(
        bad,
        "normality, sandwich and representative independence over all choices, principal-cone products, factorization of every morphism".into(),
    )
}

fn c5_oracle(fx: &[FiniteSemigroup]) -> Outcome {
    let mut bad = Vec::new();
    for s in fx {
        let (ig, _) = trace_groupoid(s).unwrap();
        if find_isomorphism(
            &principal_lcat(s).unwrap().cat,
            &build_lcat(&ig).unwrap().cat,
        )
        .is_none()
        {
            bad.push(format!("{}: L_S is not isomorphic to L_G", s.name()));
        }
        if find_isomorphism(
            &principal_rcat(s).unwrap().cat,
            &build_rcat(&ig).unwrap().cat,
        )
        .is_none()
        {
            bad.push(format!("{}: R_S is not isomorphic to R_G", s.name()));
        }
    }
    outcome(
        bad,
        format!(
            "L_S = L_G(S) and R_S = R_G(S) by exhaustive search on {}",
            names(fx)
        ),
    )
}

/// `e ↦ (←e, →e)` carries `E` onto `biorder_of(ℂ(G))` with equal tables.
fn same_biorder(e: &BiorderedSet, x: &BiorderedSet, map: &[usize]) -> bool {
    let n = e.n();
    let mut seen = map.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len() == n
        && x.n() == n
        && (0..n)
            .all(|a| (0..n).all(|b| e.product(a, b).map(|p| map[p]) == x.product(map[a], map[b])))
}

fn c6_cross_connection(fx: &[FiniteSemigroup]) -> Outcome {
    let mut bad = Vec::new();
    for s in fx {
        let (ig, _) = trace_groupoid(s).unwrap();
        let cc = build_gamma(&ig).unwrap();
        fail_unless(
            &mut bad,
            s.name(),
            &validate_crossconnection(&cc.cross).unwrap(),
        );
        let v = analyze(&cc.cross).unwrap();
        let eb = biorder_of(&v).unwrap();
        let map: Vec<usize> = (0..ig.e.n())
            .map(|e| {
                let (c, d) = cc.pair_of(e);
                v.pair(c, d).unwrap()
            })
            .collect();
        if !same_biorder(&ig.e, &eb, &map) {
            bad.push(format!("{}: biorder_of differs from E", s.name()));
        }
    }
    outcome(
        bad,
        "local isomorphism, M-surjectivity, duality; biorder_of(C(G)) = E by table equality".into(),
    )
}

fn c7_i_construction(fx: &[FiniteSemigroup]) -> Outcome {
    let mut bad = Vec::new();
    for s in fx {
        let (ig, _) = trace_groupoid(s).unwrap();
        let v = analyze(&build_gamma(&ig).unwrap().cross).unwrap();
        let x = build_ig(&v).unwrap();
        fail_unless(&mut bad, s.name(), &check_inductive(&x.ig).unwrap());
        fail_unless(&mut bad, s.name(), &check_chain_order(&v, &x).unwrap());
        fail_unless(
            &mut bad,
            s.name(),
            &check_restriction_retractions(&v, &x).unwrap(),
        );
        fail_unless(&mut bad, s.name(), &check_one_sided(&v, &x).unwrap());
    }
    outcome(
        bad,
        "ordered and inductive checks, cone-product order = chain order, restriction retractions"
            .into(),
    )
}

fn c8_round_trips(fx: &[FiniteSemigroup]) -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    let rounds: Vec<_> = fx.iter().map(|s| fixture_round(s).unwrap()).collect();
    let arrows = test_arrows(fx).unwrap();
    let mut squares = 0;
    for (i, s) in fx.iter().enumerate() {
        let out = arrows.iter().filter(|a| a.source == i).count();
        let autos = arrows
            .iter()
            .filter(|a| a.source == i && a.target == i)
            .count();
        let embeds = arrows
            .iter()
            .filter(|a| a.source != a.target && (a.source == i || a.target == i))
            .count();
        if out < 3 {
            bad.push(format!(
                "{}: only {out} nonidentity test morphisms",
                s.name()
            ));
        }
        if embeds == 0 {
            bad.push(format!("{}: no embedding between fixtures", s.name()));
        }
        if autos == 0 && regcat_core::fixtures::automorphisms(s).len() > 1 {
            bad.push(format!("{}: automorphism not tested", s.name()));
        }
        for r in fixture_reports(i, &rounds, &arrows).unwrap() {
            squares += r.naturality_checks.len();
            if !r.passed() {
                let failed: Vec<_> = r
                    .naturality_checks
                    .iter()
                    .filter(|c| !c.commutes)
                    .map(|c| c.morphism.clone())
                    .collect();
                bad.push(format!(
                    "{} {:?}: {} {:?}",
                    r.subject, r.direction, r.checks, failed
                ));
            }
        }
    }
    within(&mut bad, t, Duration::from_secs(300));
    outcome(
        bad,
        format!("both isomorphisms on every fixture; {squares} naturality squares over {} test morphisms and identities", arrows.len()),
    )
}

fn expect_rule(bad: &mut Vec<String>, what: &str, rep: &Report, rule: &str) {
    if !rep.has(rule) {
        bad.push(format!("{what}: expected {rule}, got {rep}"));
    }
}

fn c9_negative_controls() -> Outcome {
    let mut bad = Vec::new();
    let t2 = regcat_core::fixtures::full_transformation(2).unwrap();
    let rb = regcat_core::fixtures::rect_band(2, 2).unwrap();

    // Biorder with a corrupted product.
    let mut doc = idempotent_biorder(&rb).unwrap().to_doc();
    doc.product[0][1] = Some(0);
    let rep = validate_structure(&Structure::Biorder(doc), &Bounds::default()).unwrap();
    if !rep.rules().first().is_some_and(|r| r.starts_with('B')) {
        bad.push(format!("corrupted biorder: {rep}"));
    }

    // Non-associative table.
    let doc = CayleyDoc {
        n: 2,
        table: vec![vec![1, 0], vec![0, 0]],
        labels: None,
        name: None,
    };
    if !matches!(load_cayley(&doc), Err(Error::NotAssociative(_))) {
        bad.push("non-associative table accepted".into());
    }

    // Inverse of the top identity replaced by another loop.
    let (ig, _) = trace_groupoid(&t2).unwrap();
    let g = &ig.g;
    let top = (0..g.object_count())
        .max_by_key(|&e| g.down(g.identity(e)).len())
        .unwrap();
    let loop_ = g
        .out_of(top)
        .iter()
        .copied()
        .find(|&y| g.cod(y) == top && y != g.identity(top))
        .unwrap();
    let mut inv = g.inverse_table().to_vec();
    inv[g.identity(top)] = loop_;
    expect_rule(
        &mut bad,
        "corrupted inverse",
        &check_ordered_groupoid(&g.with_inverse(inv)).unwrap(),
        "OG2",
    );

    // eval moved off one nontrivial pair.
    let mut broken = ig.clone();
    let (&key, _) = broken
        .eval
        .iter()
        .filter(|(&(e, f), _)| e != f)
        .min()
        .unwrap();
    let other = (0..g.morphism_count())
        .find(|&x| x != ig.eval[&key] && g.dom(x) == key.0 && g.cod(x) == key.1);
    let other = other.unwrap_or_else(|| g.identity(key.0));
    broken.eval.insert(key, other);
    let rep = check_inductive(&broken).unwrap();
    if rep.is_ok() {
        bad.push(format!("corrupted eval: {rep}"));
    }
    let [ig_side, _] =
        roundtrip_report(&RoundTripInput::Groupoid("broken".into(), broken)).unwrap();
    if ig_side.passed() || ig_side.checks.is_ok() {
        bad.push("corrupted eval passed the round trip".into());
    }

    // Object map of T2's idempotents swapping id and a constant.
    let n = ig.e.n();
    let id = (0..n).find(|&e| (0..n).all(|f| ig.e.leq(f, e))).unwrap();
    let other = (0..n).find(|&e| e != id).unwrap();
    let objects: Vec<usize> = (0..n)
        .map(|e| {
            if e == id {
                other
            } else if e == other {
                id
            } else {
                e
            }
        })
        .collect();
    let morphisms = (0..g.morphism_count())
        .map(|x| g.identity(objects[g.dom(x)]))
        .collect();
    let f = InductiveFunctor {
        objects: objects.clone(),
        morphisms,
    };
    let rep = check_bimorphism(&ig.e, &ig.e, &objects, true);
    expect_rule(&mut bad, "non-bimorphism", &rep, "BM2");
    expect_rule(
        &mut bad,
        "non-bimorphism functor",
        &check_inductive_functor(&ig, &ig, &f),
        "BM2",
    );

    // Two-object chain whose inclusion has no retraction.
    let chain = regcat_core::normcat::NormalCategory::new(
        "chain",
        vec!["a".into(), "b".into()],
        vec![0, 1, 0],
        vec![0, 1, 1],
        (0..3).map(|i| i.to_string()).collect(),
        vec![0, 1],
        &[0, 1, 2],
        |f, g| Ok(if f == 0 || f == 1 { g } else { f }),
    )
    .unwrap();
    expect_rule(
        &mut bad,
        "non-split inclusion",
        &check_normal_category(&chain, None).unwrap(),
        "NC2",
    );

    // Collapsing L of SL2 onto a one-object category.
    let sl2 = principal_lcat(&regcat_core::fixtures::semilattice_chain(2).unwrap())
        .unwrap()
        .cat;
    let point = principal_lcat(&regcat_core::fixtures::semilattice_chain(1).unwrap())
        .unwrap()
        .cat;
    let collapse = Functor {
        objects: vec![0; sl2.object_count()],
        morphisms: vec![point.identity(0); sl2.morphism_count()],
    };
    expect_rule(
        &mut bad,
        "collapsing functor",
        &is_local_isomorphism(&sl2, &point, &collapse),
        "ideal",
    );

    // Γ with a non-idempotent cone.
    let (ig_t2, _) = trace_groupoid(&t2).unwrap();
    let mut x = build_gamma(&ig_t2).unwrap().cross;
    let cones = all_cones(&x.c, 10_000).unwrap();
    let cones = cone_semigroup(&x.c, &cones, cones.len()).unwrap();
    x.gamma[0] = cones
        .cones()
        .iter()
        .find(|g| !g.is_idempotent(&x.c))
        .unwrap()
        .clone();
    let rep = validate_crossconnection(&x).unwrap();
    if !rep.has("gamma.idempotent") {
        bad.push(format!("non-idempotent gamma: {rep}"));
    }

    // F1 conjugated by an automorphism of one object of L_T2.
    let v = analyze(&build_gamma(&ig_t2).unwrap().cross).unwrap();
    let c = &v.x.c;
    let (a, u) = (0..c.object_count())
        .find_map(|a| {
            c.hom(a, a)
                .iter()
                .copied()
                .find(|&u| c.is_iso(u) && !c.is_identity(u))
                .map(|u| (a, u))
        })
        .unwrap();
    let uinv = c.inverse(u).unwrap();
    let theta = |o: usize, w: usize| if o == a { w } else { c.identity(o) };
    let f1 = Functor {
        objects: (0..c.object_count()).collect(),
        morphisms: (0..c.morphism_count())
            .map(|m| c.compose(c.compose(theta(c.dom(m), uinv), m), theta(c.cod(m), u)))
            .collect(),
    };
    let m = CCMorphism {
        f: f1,
        g: Functor::identity(&v.x.d),
    };
    expect_rule(
        &mut bad,
        "F1 breaking an inclusion",
        &check_cc_morphism(&m, &v, &v),
        "M1",
    );

    // F2 with two objects of R_RB22 exchanged.
    let (ig_rb, _) = trace_groupoid(&rb).unwrap();
    let v = analyze(&build_gamma(&ig_rb).unwrap().cross).unwrap();
    let x = build_ig(&v).unwrap();
    let mut m = CCMorphism::identity(&v.x);
    m.g.objects.swap(0, 1);
    match map_morphism(&m, &x, &x) {
        Ok(f) => expect_rule(
            &mut bad,
            "corrupted F2",
            &check_inductive_functor(&x.ig, &x.ig, &f),
            "eval-square",
        ),
        Err(e) => bad.push(format!("corrupted F2: {e}")),
    }

    let ok = "B-axiom, NotAssociative, OG2, corrupted-eval rejection, BM2, NC2, ideal, gamma, M1 and eval-square witnesses".to_string();
    outcome(bad, ok)
}

fn c10_determinism() -> Outcome {
    let mut bad = Vec::new();
    for s in [
        regcat_core::fixtures::full_transformation(2).unwrap(),
        regcat_core::fixtures::brandt2(),
    ] {
        let run = || {
            serde_json::to_vec(&roundtrip_report(&RoundTripInput::Semigroup(s.clone())).unwrap())
                .unwrap()
        };
        if run() != run() {
            bad.push(format!("{}: reports differ", s.name()));
        }
    }
    outcome(
        bad,
        "two roundtrip runs serialize to identical bytes".into(),
    )
}

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() {
    let fx = standard_fixtures();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("axiom suite", Box::new(|| c1_axioms(&fx))),
        ("chain groupoid", Box::new(|| c2_chain_groupoid(&fx))),
        ("inductive suite", Box::new(|| c3_inductive(&fx))),
        ("C construction", Box::new(|| c4_c_construction(&fx))),
        ("independent oracle", Box::new(|| c5_oracle(&fx))),
        (
            "cross-connection validity",
            Box::new(|| c6_cross_connection(&fx)),
        ),
        ("I construction", Box::new(|| c7_i_construction(&fx))),
        (
            "round trips with naturality",
            Box::new(|| c8_round_trips(&fx)),
        ),
        ("negative controls", Box::new(c9_negative_controls)),
        ("determinism", Box::new(c10_determinism)),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {verdict} {name} [{:.2?}]: {}",
            i + 1,
            t.elapsed(),
            o.detail
        );
        if !o.pass {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
