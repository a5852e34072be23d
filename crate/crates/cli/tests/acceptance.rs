//! Acceptance gate: the eight shipping criteria, one test per criterion.
//! Each test prints exactly one `acceptance N (...): pass|FAIL` line before
//! asserting, so a scan of the output shows the full scoreboard.

use lgroup_cli::workspace::{parse_workspace, Workspace};
use lgroup_core::conjugacy::{
    conjugate_by_point, conjugate_by_point_in, crisp_bridge, generated, is_maximal,
    maximal_conjugate_check, MaximalConjugateOutcome,
};
use lgroup_core::group::{EltSet, FiniteGroup, GElt};
use lgroup_core::lattice::{Lattice, LatticeElt};
use lgroup_core::lsubset::{LPoint, LSubset};
use lgroup_core::normality::{
    normalizer_conjugacy, normalizer_conjugation_identity, normalizer_setproduct,
};
use lgroup_core::verify::{
    gen_instance, maximal_chain_instance, run_all, run_suite, Bounds, Instance, LatticeKind,
    SuiteId, Verdict,
};
use std::sync::Arc;
use std::time::{Duration, Instant};

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn load(name: &str) -> Workspace {
    parse_workspace(&std::fs::read_to_string(data(name)).unwrap()).unwrap()
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = lgroup_cli::run_with(args.iter().copied(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn report(n: usize, name: &str, started: Instant, budget: Duration, ok: bool, detail: String) {
    let elapsed = started.elapsed();
    let within = elapsed <= budget;
    let verdict = if ok && within { "pass" } else { "FAIL" };
    println!(
        "acceptance {n} ({name}): {verdict} [{:.2}s of {:.0}s budget]",
        elapsed.as_secs_f64(),
        budget.as_secs_f64()
    );
    assert!(ok, "acceptance {n} ({name}): {detail}");
    assert!(
        within,
        "acceptance {n} ({name}): took {elapsed:?}, budget {budget:?}"
    );
}

#[test]
fn criterion_1_s4_conjugate_golden() {
    let started = Instant::now();
    let (code, out) = cli(&[
        "lgroup",
        "--in",
        &data("s4_lattice_m.json"),
        "conjugate",
        "--subject",
        "eta",
        "--point",
        "p",
    ]);
    let expected = "\
d : e, (1 2)(3 4), (1 3)(2 4), (1 4)(2 3)
c : (3 4), (1 2), (1 3 2 4), (1 4 2 3)
b : (2 4), (1 2 3 4), (1 3), (1 4 3 2)
a : (2 3), (1 2 4 3), (1 3 4 2), (1 4)
l : (2 3 4), (2 4 3), (1 2 3), (1 2 4), (1 3 2), (1 3 4), (1 4 2), (1 4 3)
";
    let ok = code == 0 && out == expected;
    report(
        1,
        "s4 conjugate golden",
        started,
        Duration::from_secs(1),
        ok,
        format!("exit {code}, output:\n{out}"),
    );
}

const D16_NORMALIZER_TABLE: &str = "\
1/2 : e, r^4, s, sr^4
1/16 : r, r^2, r^3, r^5, r^6, r^7, sr, sr^2, sr^3, sr^5, sr^6, sr^7
";

#[test]
fn criterion_2_d16_normalizer_golden() {
    let started = Instant::now();
    let (code, out) = cli(&[
        "lgroup",
        "--in",
        &data("d16_chain.json"),
        "normalizer",
        "--subject",
        "eta",
        "--method",
        "setproduct",
    ]);
    let ok = code == 0 && out == D16_NORMALIZER_TABLE;
    report(
        2,
        "d16 normalizer golden",
        started,
        Duration::from_secs(1),
        ok,
        format!("exit {code}, output:\n{out}"),
    );
}

#[test]
fn criterion_3_normalizer_conjugation_identity() {
    let started = Instant::now();
    let ws = load("d16_chain.json");
    let (eta, mu) = (&ws.lsubsets["eta"], &ws.lsubsets["mu"]);
    let p = ws.points["p"];

    // Left side: conjugate the coset-commutation normalizer.
    let lhs = conjugate_by_point(&normalizer_setproduct(eta, mu).unwrap(), &p);
    // Right side: meet with the conjugate's normalizer, built from the
    // conjugate-containment construction instead.
    let conj = conjugate_by_point_in(eta, &p, mu).unwrap();
    let n_conj = normalizer_conjugacy(&conj, mu).unwrap();
    let mut ok = true;
    let mut detail = String::new();
    for x in ws.group.elements() {
        let left = lhs.eval(x);
        let right = ws.lattice.meet(p.value, n_conj.eval(x));
        if left != right {
            ok = false;
            detail = format!(
                "at {}: {} vs {}",
                ws.group.label(x),
                ws.lattice.label(left),
                ws.lattice.label(right)
            );
            break;
        }
    }
    // The engine's own combined check must agree.
    ok &= normalizer_conjugation_identity(eta, mu, &p).unwrap().equal;
    // Pinned golden: the conjugate attains 1/12 exactly on {e, sr^2},
    // derived directly from the conjugation formula.
    let support = conj.level_set(ws.lattice.elt("1/12").unwrap());
    let expected: EltSet = ["e", "sr^2"]
        .iter()
        .map(|l| ws.group.resolve(l).unwrap())
        .collect();
    if support != expected {
        ok = false;
        detail = format!("conjugate support at 1/12 is {support:?}");
    }
    report(
        3,
        "normalizer conjugation identity",
        started,
        Duration::from_secs(1),
        ok,
        detail,
    );
}

#[test]
fn criterion_4_normalizer_equivalence() {
    let started = Instant::now();
    let ws = load("d16_chain.json");
    let (eta, mu) = (&ws.lsubsets["eta"], &ws.lsubsets["mu"]);
    let by_conjugacy = normalizer_conjugacy(eta, mu).unwrap();
    let by_product = normalizer_setproduct(eta, mu).unwrap();
    let half = ws.lattice.elt("1/2").unwrap();
    let sixteenth = ws.lattice.elt("1/16").unwrap();
    let mut ok = by_conjugacy == by_product;
    ok &= by_conjugacy.eval(ws.group.resolve("s").unwrap()) == half;
    ok &= by_conjugacy.eval(ws.group.resolve("r").unwrap()) == sixteenth;
    let (code, out) = cli(&[
        "lgroup",
        "--in",
        &data("d16_chain.json"),
        "normalizer",
        "--subject",
        "eta",
        "--method",
        "both",
    ]);
    ok &= code == 0 && out == D16_NORMALIZER_TABLE;
    report(
        4,
        "normalizer equivalence",
        started,
        Duration::from_secs(1),
        ok,
        format!("exit {code}, output:\n{out}"),
    );
}

#[test]
fn criterion_5_seeded_suite_sweep() {
    let started = Instant::now();
    let bounds = Bounds {
        max_group_order: 16,
        max_lattice_size: 8,
        lattice_kind: LatticeKind::Any,
    };
    let instances: Vec<Instance> = (0..200)
        .map(|seed| gen_instance(seed, &bounds).unwrap())
        .collect();

    let mut ok = true;
    let mut detail = String::new();
    let mut note = |cond: bool, msg: String| {
        if !cond && ok {
            ok = false;
            detail = msg;
        }
    };

    // No registered law may ever fail.
    let all = run_all(&instances);
    for r in &all {
        note(
            !r.verdict.is_fail(),
            format!("{} failed on {}: {:?}", r.suite, r.instance, r.verdict),
        );
    }

    // The always-applicable suites must actually pass on every instance
    // they accept (skips only for genuinely absent hypotheses).
    let unconditional = [
        SuiteId::T2_2,
        SuiteId::T2_7,
        SuiteId::T2_12,
        SuiteId::T3_2,
        SuiteId::R3Tip,
        SuiteId::T3_7,
        SuiteId::P4_1,
        SuiteId::P4_7,
        SuiteId::L4_8,
        SuiteId::L4_9,
        SuiteId::D4_10Equivalence,
    ];
    for suite in unconditional {
        for r in run_suite(suite, &instances) {
            note(
                r.verdict == Verdict::Pass,
                format!("{suite} did not pass on {}: {:?}", r.instance, r.verdict),
            );
        }
    }
    // The largest-normalizer suite is applicable on distributive lattices.
    for (inst, r) in instances.iter().zip(run_suite(SuiteId::D4_3Largest, &instances)) {
        let want_pass = inst.lattice.is_distributive();
        note(
            (r.verdict == Verdict::Pass) == want_pass
                && (matches!(r.verdict, Verdict::Skip { .. }) == !want_pass),
            format!("D4.3-largest on {}: {:?}", r.instance, r.verdict),
        );
    }

    // Distributivity-gated suites: pass wherever all hypotheses hold, skip
    // on every non-distributive lattice.
    for suite in [SuiteId::T3_4, SuiteId::T3_5, SuiteId::T3_6, SuiteId::T4_4] {
        for (inst, r) in instances.iter().zip(run_suite(suite, &instances)) {
            let hyps = inst.lattice.is_distributive()
                && match suite {
                    SuiteId::T3_5 => inst.hom.is_some(),
                    SuiteId::T3_6 => inst.hom.as_ref().is_some_and(|f| f.is_surjective()),
                    _ => true,
                };
            if hyps {
                note(
                    r.verdict == Verdict::Pass,
                    format!("{suite} did not pass on {}: {:?}", r.instance, r.verdict),
                );
            } else if !inst.lattice.is_distributive() {
                note(
                    matches!(r.verdict, Verdict::Skip { .. }),
                    format!("{suite} did not skip on {}: {:?}", r.instance, r.verdict),
                );
            }
        }
    }

    report(
        5,
        "200-instance suite sweep",
        started,
        Duration::from_secs(300),
        ok,
        detail,
    );
}

#[test]
fn criterion_6_generated_subgroup_oracle() {
    let started = Instant::now();
    let bounds = Bounds {
        max_group_order: 6,
        max_lattice_size: 4,
        lattice_kind: LatticeKind::Any,
    };
    let mut ok = true;
    let mut detail = String::new();
    for seed in 0..50u64 {
        let inst = gen_instance(seed, &bounds).unwrap();
        let engine = generated(&inst.eta, &inst.mu).unwrap();
        let oracle = meet_of_all_l_subgroups_between(&inst.eta, &inst.mu);
        if engine != oracle {
            ok = false;
            detail = format!("seed {seed}: engine and enumeration oracle disagree");
            break;
        }
    }
    report(
        6,
        "generated-subgroup oracle",
        started,
        Duration::from_secs(120),
        ok,
        detail,
    );
}

/// Pointwise meet of every L-subgroup sigma of `mu` with `eta ≤ sigma ≤ mu`,
/// by exhaustive mixed-radix enumeration of the value tables.
fn meet_of_all_l_subgroups_between(eta: &LSubset, mu: &LSubset) -> LSubset {
    let g = eta.group().clone();
    let l = eta.lattice().clone();
    let slots: Vec<Vec<LatticeElt>> = g
        .elements()
        .map(|x| {
            l.elements()
                .filter(|t| l.leq(eta.eval(x), *t) && l.leq(*t, mu.eval(x)))
                .collect()
        })
        .collect();
    let mut meet: Vec<LatticeElt> = g.elements().map(|x| mu.eval(x)).collect();
    let mut digits = vec![0usize; slots.len()];
    loop {
        let values: Vec<LatticeElt> = digits
            .iter()
            .zip(&slots)
            .map(|(&d, slot)| slot[d])
            .collect();
        let candidate = LSubset::new(g.clone(), l.clone(), values).unwrap();
        if candidate.is_l_subgroup_of(mu).unwrap() {
            for (m, x) in meet.iter_mut().zip(g.elements()) {
                *m = l.meet(*m, candidate.eval(x));
            }
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                return LSubset::new(g, l, meet).unwrap();
            }
            digits[i] += 1;
            if digits[i] < slots[i].len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn criterion_7_maximality_under_conjugation() {
    let started = Instant::now();
    let mut ok = true;
    let mut detail = String::new();
    let mut used = 0;
    let mut seed = 0u64;
    while used < 20 {
        let inst = maximal_chain_instance(seed, 6).unwrap();
        seed += 1;
        if inst.lattice.size() > 3 {
            continue;
        }
        used += 1;
        match is_maximal(&inst.eta, &inst.mu, None) {
            Ok(true) => {}
            other => {
                ok = false;
                detail = format!("{}: constructed subject not maximal: {other:?}", inst.descriptor);
                break;
            }
        }
        for p in &inst.points {
            match maximal_conjugate_check(&inst.eta, &inst.mu, p, None) {
                Ok(MaximalConjugateOutcome::Collapsed)
                | Ok(MaximalConjugateOutcome::MaximalInConjugate) => {}
                other => {
                    ok = false;
                    detail = format!("{}: conjugate outcome {other:?}", inst.descriptor);
                    break;
                }
            }
        }
        if !ok {
            break;
        }
    }
    report(
        7,
        "maximality under conjugation",
        started,
        Duration::from_secs(120),
        ok,
        detail,
    );
}

#[test]
fn criterion_8_crisp_bridge() {
    let started = Instant::now();
    let group = Arc::new(FiniteGroup::symmetric(4).unwrap());
    let subgroups: Vec<EltSet> = group
        .all_subgroups()
        .into_iter()
        .filter(|h| h.len() <= 8)
        .collect();
    let mut ok = subgroups.len() == 28;
    let mut detail = format!("{} subgroups of order <= 8", subgroups.len());

    for h in &subgroups {
        for k in &subgroups {
            let classical = group.elements().any(|z| group.conj_set(h, z) == *k);
            let bridged = crisp_bridge(&group, h, k).unwrap();
            if bridged != classical {
                ok = false;
                detail = format!("bridge disagrees with element search on |H|={}, |K|={}", h.len(), k.len());
            }
        }
    }

    // Crisp normalizer-conjugation corollary over 20 sampled (H, x) pairs.
    let two = Arc::new(Lattice::chain(&["0", "1"]).unwrap());
    let ambient = LSubset::constant(group.clone(), two.clone(), two.top());
    for i in 0..20usize {
        let h = &subgroups[(i * 7 + 3) % subgroups.len()];
        let x = GElt((i * 5 + 1) % group.order());
        let chi = LSubset::characteristic(group.clone(), two.clone(), h);
        let p = LPoint::new(two.top(), x);
        let lhs = normalizer_setproduct(&conjugate_by_point(&chi, &p), &ambient).unwrap();
        let rhs = conjugate_by_point(&normalizer_setproduct(&chi, &ambient).unwrap(), &p);
        if lhs != rhs {
            ok = false;
            detail = format!("crisp corollary fails at sample {i}");
        }
    }
    report(
        8,
        "crisp bridge",
        started,
        Duration::from_secs(60),
        ok,
        detail,
    );
}
