//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every criterion is evaluated as stated. Some fail because the example data
//! does not satisfy the claimed property; those outcomes are pinned in
//! `EXPECTED` together with the reason, so a change in either direction is
//! noticed. The suite runs without the libtest harness so the lines are
//! always printed.

mod common;
mod oracle;

use common::*;
use homleib::construct::*;
use homleib::corpus::{corpus_list, corpus_root, corpus_run, golden, CheckKind};
use homleib::duality::*;
use homleib::identities::*;
use homleib::linalg::{LinearMap, Product, Vector};
use homleib::model::{AlgebraPresentation, VarietyTag};
use homleib::scalar::{parse_scalar, FieldSpec, Scalar};

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

fn lines(r: &Report) -> String {
    r.render_text().trim_end().replace('\n', "; ")
}

fn verdicts(r: &Report, names: &[&str]) -> bool {
    names.iter().all(|n| r.get(n).is_some_and(CheckReport::passed))
}

fn scalar(text: &str, field: &FieldSpec) -> Scalar {
    parse_scalar(text, field).unwrap_or_else(|e| panic!("`{text}`: {e}"))
}

fn coefficient(p: &AlgebraPresentation, prod: &str, i: usize, j: usize, k: usize) -> Scalar {
    p.products[prod].get(i - 1, j - 1, k - 1).clone()
}

// ---------------------------------------------------------------------------

fn criterion_1() -> Outcome {
    let p = presentation("homleib-2dim", "twodim.alg");
    let v = check_variety(&p).unwrap();
    let counts = v.get("hom_leibniz").map(|e| (e.passed(), e.assignments)) == Some((true, 8))
        && v.get("multiplicativity_al").map(|e| (e.passed(), e.assignments)) == Some((true, 4));
    let skew = check_named(&["skew_symmetry"], &Context::algebra(&p), CheckOptions::default()).unwrap();
    let s = &skew.entries[0];
    let want = Vector(vec![Scalar::from_int(2), Scalar::zero()]);
    let skew_ok = !s.passed() && s.assignment.as_deref() == Some(&[2, 2][..]) && s.residual.as_ref() == Some(&want);
    Outcome::new(counts && skew_ok, format!("{}; {}", lines(&v), lines(&skew)))
}

fn criterion_2() -> Outcome {
    let p = presentation("dendr3", "dendr3.alg");
    let v = check_variety(&p).unwrap();
    let dendr = verdicts(&v, &["dendr_1", "dendr_2", "dendr_3"]);
    let mult = verdicts(&v, &["multiplicativity_al_prec", "multiplicativity_al_succ"]);
    Outcome::new(dendr && mult, lines(&v))
}

/// Whether a verification report passes; a failure is noted with its first failing line.
fn record(notes: &mut Vec<String>, what: String, r: &Report) -> bool {
    if let Some(f) = r.first_failure() {
        notes.push(format!("{what}: {}", f.render_text(&r.field)));
        return false;
    }
    true
}

fn criterion_3() -> Outcome {
    let mut ok = true;
    let mut notes = vec![];
    // The three-dimensional Hom-Leibniz dendriform example.
    let d = presentation("dendr3", "dendr3.alg");
    let yau = yau_twist(&d, &TwistRecipe::hom(d.alpha(), TwistMode::ComposeOntoTwisted), Policy::Lenient).unwrap();
    ok &= record(&mut notes, "dendr3 twisted by al".into(), &yau.verification);
    let f = d.field.clone();
    let mut sign_diffs = vec![];
    for kind in [1u8, 2] {
        for n in 1..=3u32 {
            let c = derived_algebra(&d, kind, n, Policy::Lenient).unwrap();
            ok &= record(&mut notes, format!("dendr3 derived type {kind} n={n}"), &c.verification);
            if kind == 1 {
                let got = coefficient(&c.value, "prec", 1, 3, 2);
                let formula = scalar(&format!("-(p^2/2)^{n}"), &f);
                let listed = scalar(&format!("-(-p^2/2)^{n}"), &f);
                ok &= got == formula;
                if got != listed {
                    sign_diffs.push(format!(
                        "n={n}: e1<e3 = {} e2 (listed {})",
                        got.render(&f),
                        listed.render(&f)
                    ));
                }
            }
        }
    }
    notes.push(format!("documented derived-table diff: {}", sign_diffs.join(", ")));

    // The BiHom-Leibniz dendriform examples.
    let b = presentation("bihom-dendr-twist", "base.alg");
    let (ta, tb) = (matrix("bihom-dendr-twist", "twist_al.mat", &b.field), matrix("bihom-dendr-twist", "twist_be.mat", &b.field));
    let tw = yau_twist(&b, &TwistRecipe::bihom(ta, tb, TwistMode::ComposeOntoTwisted), Policy::Lenient).unwrap();
    ok &= record(&mut notes, "bihom base twisted".into(), &tw.verification);
    let entry = coefficient(&tw.value, "prec", 2, 3, 1);
    let want = scalar("4/3*p*q", &b.field);
    ok &= entry == want;
    notes.push(format!("twisted e2<'e3 = {} e1", entry.render(&b.field)));

    let g = presentation("bihom-dendr-derived", "derived.alg");
    for kind in [1u8, 2] {
        for n in 1..=3u32 {
            let c = derived_algebra(&g, kind, n, Policy::Lenient).unwrap();
            ok &= record(&mut notes, format!("derived.alg type {kind} n={n}"), &c.verification);
        }
    }
    Outcome::new(ok, notes.join("; "))
}

fn criterion_4() -> Outcome {
    let q = FieldSpec::Rationals;
    let dendr = ["dendr_1", "dendr_2", "dendr_3"];
    let mut ok = true;
    let mut notes = vec![];
    for (label, beta) in [
        ("beta=id", LinearMap::identity(2)),
        ("beta=diag(1,2)", LinearMap::diagonal(vec![Scalar::one(), Scalar::from_int(2)])),
    ] {
        let c = omni_gl_example(2, &beta, &q, Policy::Lenient).unwrap();
        let r = &c.verification;
        let pass = c.value.dim == 6 && dendr.iter().all(|n| r.get(n).is_some_and(|e| e.passed() && e.assignments == 216));
        ok &= pass;
        let shown: Vec<String> = dendr.iter().filter_map(|n| r.get(n)).map(|e| e.render_text(&q)).collect();
        notes.push(format!("{label}: {}", shown.join(", ")));
    }
    Outcome::new(ok, notes.join("; "))
}

fn criterion_5() -> Outcome {
    let (a, b) = (presentation("bihom-pair", "a.alg"), presentation("bihom-pair", "b.alg"));
    let (ab, ba) = (action("bihom-pair", "a_on_b.act"), action("bihom-pair", "b_on_a.act"));
    let bim_a = check_bimodule(&a, &ab).unwrap();
    let bim_b = check_bimodule(&b, &ba).unwrap();
    let coupling = check_named(&matched_identities(a.variety), &Context::matched(&a, &b, &ab, &ba), CheckOptions::default()).unwrap();
    let sum = matched_sum(&a, &b, &ab, &ba, Policy::Lenient).unwrap();
    let sum_ok = sum.value.dim == 6 && verdicts(&sum.verification, &["bihom_leibniz"]);
    let first = |r: &Report| r.first_failure().map(|f| f.render_text(&r.field)).unwrap_or_else(|| "all pass".into());
    let detail = format!(
        "A on B: {}; B on A: {}; coupling: {}/{} pass; matched sum: {}",
        first(&bim_a),
        first(&bim_b),
        coupling.entries.iter().filter(|e| e.passed()).count(),
        coupling.entries.len(),
        sum.verification.get("bihom_leibniz").map(|e| e.render_text(&a.field)).unwrap_or_default()
    );
    Outcome::new(bim_a.passed() && bim_b.passed() && coupling.passed() && sum_ok, detail)
}

fn criterion_6() -> Outcome {
    let id = "bihom-rb";
    let p = presentation(id, "corrected.alg");
    let reg = action(id, "regular.act");
    let f = p.field.clone();
    let restricted = matrix(id, "K_restricted.mat", &f);
    let full = matrix(id, "K_full.mat", &f);
    let op = OOperatorData::new(restricted.clone());

    let as_rb = check_rota_baxter(&p, &restricted).unwrap();
    let as_oop = check_ooperator(&p, &reg, &op).unwrap();
    let induced = induce_dendriform(&p, &reg, &op, Policy::Lenient).unwrap();
    let m = &induced.value.module;
    let l1 = scalar("l1", &f);
    let table = coefficient(m, "prec", 2, 2, 1) == l1 && coefficient(m, "succ", 2, 2, 1) == l1;
    let dendr = verdicts(&induced.verification, &["bihom_dendr_1", "bihom_dendr_2", "bihom_dendr_3"]);

    let fully = check_rota_baxter(&p, &matrix(id, "K_fully_restricted.mat", &f)).unwrap();
    let free = check_rota_baxter(&p, &full).unwrap();
    let free_fails_at_e2 = free.first_failure().is_some_and(|e| e.assignment.as_deref() == Some(&[2][..]));

    let first = |r: &Report| r.first_failure().map(|e| e.render_text(&f)).unwrap_or_else(|| "passes".into());
    let detail = format!(
        "l2=l3=0 as Rota-Baxter: {}; as O-operator of the regular bimodule: {}; induced e2<e2 = {} e1, e2>e2 = {} e1; induced dendriform identities {}; free l2, l3: {}; l2=l3=l4=0 as Rota-Baxter: {}",
        first(&as_rb),
        first(&as_oop),
        coefficient(m, "prec", 2, 2, 1).render(&f),
        coefficient(m, "succ", 2, 2, 1).render(&f),
        if dendr { "pass" } else { "fail" },
        first(&free),
        first(&fully),
    );
    Outcome::new(as_rb.passed() && as_oop.passed() && table && dendr && free_fails_at_e2, detail)
}

/// The Leibniz actions `l = l≺ + l≻`, `r = r≺ + r≻` of a dendriform action family.
fn summed_actions(a: &homleib::model::ActionFamily) -> homleib::model::ActionFamily {
    let mut out = a.clone();
    out.actions.clear();
    for (name, (x, y)) in [("l", ("lprec", "lsucc")), ("r", ("rprec", "rsucc"))] {
        let sum = a.actions[x].iter().zip(&a.actions[y]).map(|(m, n)| m.add(n).unwrap()).collect();
        out.actions.insert(name.to_string(), sum);
    }
    out.module_twists = a.module_twists.clone();
    out
}

fn criterion_7() -> Outcome {
    let root = corpus_root();
    let mut pairs = 0;
    let mut dendriform_pairs = 0;
    let mut problems = vec![];
    for entry in corpus_list(&root).unwrap() {
        for spec in &entry.checks {
            let CheckKind::Bimodule { alg, act } = &spec.kind else { continue };
            let loader = homleib::corpus::Loader { dir: &entry.dir, at: spec.at.as_deref() };
            let (p, a) = (loader.presentation(alg).unwrap(), loader.action(act).unwrap());
            if !check_bimodule(&p, &a).unwrap().passed() {
                continue;
            }
            pairs += 1;
            let label = format!("{}: {}", entry.id, spec.line);
            let sum = semidirect_sum(&p, &a, Policy::Strict);
            match &sum {
                Ok(c) if c.verification.passed() => {}
                Ok(c) => problems.push(format!("{label}: {}", lines(&c.verification))),
                Err(e) => problems.push(format!("{label}: {e}")),
            }
            if p.variety.is_dendriform() {
                dendriform_pairs += 1;
                let lhs = sub_adjacent(&sum.unwrap().value, Policy::Lenient).unwrap().value;
                let sub = sub_adjacent(&p, Policy::Lenient).unwrap().value;
                let rhs = semidirect_sum(&sub, &summed_actions(&a), Policy::Lenient).unwrap().value;
                if lhs.products != rhs.products || lhs.twists != rhs.twists {
                    problems.push(format!("{label}: sub-adjacent of the semidirect sum differs"));
                }
            }
        }
    }
    let detail = format!("{pairs} bimodule pairs, {dendriform_pairs} dendriform; {}", if problems.is_empty() { "no problems".into() } else { problems.join("; ") });
    Outcome::new(problems.is_empty() && pairs > 0 && dendriform_pairs > 0, detail)
}

fn criterion_8() -> Outcome {
    let p = presentation("leibniz-dual", "e22.alg");
    let d = presentation("leibniz-dual", "dendr.alg");
    let reg = regular_actions(&p, Regular::Full, Policy::Strict).unwrap().value;
    let dreg = regular_actions(&d, Regular::Full, Policy::Strict).unwrap().value;
    let mut failed = vec![];
    for mode in DualMode::ALL {
        let (alg, fam) = if mode.takes_dendriform() { (&d, &dreg) } else { (&p, &reg) };
        let c = dual_actions(alg, fam, mode, Policy::Lenient).unwrap();
        let target = dual_target(alg, mode);
        let r = check_bimodule(&target, &c.value).unwrap();
        if !r.passed() {
            failed.push(format!("{mode}: {}", lines(&r)));
        }
    }
    let detail = if failed.is_empty() { "all ten modes are bimodules".to_string() } else { failed.join("; ") };
    Outcome::new(failed.is_empty(), detail)
}

fn criterion_9() -> Outcome {
    let p = presentation("leibniz-dual", "e22.alg");
    let dual = presentation("leibniz-dual", "abelian-dual.alg");
    let trivial = bialgebra_matchedpair_equiv(&p, &dual).unwrap();
    let cases = random_equivalence_cases(0, 200);
    let disagree = cases.iter().filter(|c| !c.outcome.agree()).count();
    let matched = cases.iter().filter(|c| c.outcome.matched_pair.passed()).count();
    let dims: Vec<usize> = (1..=3).map(|d| cases.iter().filter(|c| c.algebra.dim == d).count()).collect();
    let detail = format!(
        "trivial dual: matched pair {}, bialgebra {}; 200 random duals (dims 1/2/3: {}/{}/{}): {} matched pairs, {} disagreements",
        trivial.matched_pair.passed(),
        trivial.bialgebra.passed(),
        dims[0],
        dims[1],
        dims[2],
        matched,
        disagree
    );
    Outcome::new(trivial.agree() && disagree == 0, detail)
}

fn criterion_10() -> Outcome {
    let mut ok = true;
    let mut notes = vec![];
    for n in [1usize, 2] {
        let p = AlgebraPresentation::abelian(2 * n, FieldSpec::Rationals, VarietyTag::HomLeibniz);
        let c = dendriform_from_form(&p, &standard_form(n), Policy::Strict).unwrap();
        let zero = c.value.products.values().all(Product::is_zero);
        ok &= zero && c.sound();
        notes.push(format!("abelian dim {}: {}", 2 * n, if zero { "zero structure" } else { "nonzero structure" }));
    }
    // Every corpus Hom-Leibniz presentation of even dimension, with the standard form.
    let mut used = 0;
    for entry in corpus_list(&corpus_root()).unwrap() {
        for file in std::fs::read_dir(&entry.dir).unwrap() {
            let path = file.unwrap().path();
            if path.extension().is_none_or(|e| e != "alg") {
                continue;
            }
            let Ok(p) = homleib::model::load_presentation(&std::fs::read_to_string(&path).unwrap()) else { continue };
            if p.variety != VarietyTag::HomLeibniz || p.dim % 2 == 1 || p.field.is_parametric() {
                continue;
            }
            let omega = standard_form(p.dim / 2);
            let Ok(c) = dendriform_from_form(&p, &omega, Policy::Strict) else { continue };
            used += 1;
            // ω(x ≺ y, z) = ω(y, [z, x]) on all basis triples, recomputed here.
            let (br, prec) = (p.bracket(), &c.value.products["prec"]);
            let e = |i: usize| Vector::basis(p.dim, i);
            for x in 0..p.dim {
                for y in 0..p.dim {
                    for z in 0..p.dim {
                        let lhs = omega.eval(&prec.basis_product(x, y), &e(z));
                        let rhs = omega.eval(&e(y), &br.basis_product(z, x));
                        ok &= lhs == rhs;
                    }
                }
            }
            notes.push(format!("{}/{}", entry.id, path.file_name().unwrap().to_string_lossy()));
        }
    }
    notes.push(format!("{used} corpus instances satisfy the hypotheses"));
    Outcome::new(ok, notes.join("; "))
}

fn criterion_11() -> Outcome {
    let entries = corpus_list(&corpus_root()).unwrap();
    let mut bad = vec![];
    let mut lines_checked = 0;
    for e in &entries {
        let want = golden(e).unwrap();
        lines_checked += want.lines().count();
        if oracle::render_entry(e) != want || corpus_run(e).unwrap() != want {
            bad.push(e.id.clone());
        }
    }
    let detail = format!("{} entries, {lines_checked} report lines; mismatches: {:?}", entries.len(), bad);
    Outcome::new(bad.is_empty(), detail)
}

// ---------------------------------------------------------------------------

/// Documented outcome of each criterion and, for failures, why.
const EXPECTED: [(bool, &str); 11] = [
    (true, ""),
    (false, "the twist is not multiplicative for the products: al(e1 < e3) = -(p^2/2)e2 but al(e1) < al(e3) = (p^2/2)e2"),
    (false, "the three-dimensional dendriform base is not multiplicative, so its twisted and derived algebras fail multiplicativity; the derived.alg base fails it too"),
    (false, "the products of gl(V) + V are not twisted, so the identities need Ad(beta) = id; beta = diag(1, 2) fails dendr_1 at (E11, E12, E11)"),
    (false, "the diagonal module twists violate the bimodule twist compatibility conditions; only the coupling conditions hold"),
    (false, "with l4 free the al-intertwining still fails at e3, and the O-operator intertwining al T = T beV2 differs from commutation"),
    (true, ""),
    (true, ""),
    (true, ""),
    (true, ""),
    (true, ""),
];

fn main() {
    let criteria: [fn() -> Outcome; 11] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
        criterion_11,
    ];
    let mut surprises = vec![];
    for (i, run) in criteria.iter().enumerate() {
        let o = run();
        println!("{} criterion {}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
        let (want, why) = EXPECTED[i];
        if !o.pass {
            println!("    known failure: {why}");
        }
        if o.pass != want {
            surprises.push(format!("criterion {} now {}", i + 1, if o.pass { "passes" } else { "fails" }));
        }
    }
    assert!(surprises.is_empty(), "outcomes differ from the documented ones: {}", surprises.join(", "));
}
