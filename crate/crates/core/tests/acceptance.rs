//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the report is always printed.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use relcat::isocalc::{arith_eval, conjecture_scan, ScanConfig};
use relcat::pointedsets::{
    all_maps, check_equation, coproduct, default_valuations, from_partial, internal_hom,
    interp_formula, naturality_failure_witness, product, smash, to_partial, valuations_over,
    EvalConfig, Evaluator, ModelError, PartialFn, PointedSet, Valuation,
};
use relcat::relcoherence::{decide_remon_eq, rel_of};
use relcat::syntax::{parse_formula, ArrowTerm, Formula};
use relcat::theories::{
    axioms, instantiate, random_formula, random_schema_instances, Equation, InstanceConfig,
    Substitution, TermGenerator, Theory,
};

type Outcome = Result<String, String>;

fn sizes(n: usize) -> PointedSet {
    PointedSet::new(n).expect("non-empty")
}

fn letters(names: &[&str]) -> Vec<Arc<str>> {
    names.iter().map(|s| Arc::from(*s)).collect()
}

/// Whether every object in `eq` stays within the evaluation budget when all letters have size 3.
fn admitted(eq: &Equation) -> bool {
    let v = Valuation::from_sizes(eq.letters().iter().map(|m| (&**m, 3))).expect("size 3");
    let mut ev = Evaluator::new(&v, EvalConfig::default()).expect("under cap");
    ev.admits(&eq.lhs).is_ok() && ev.admits(&eq.rhs).is_ok()
}

fn is_remon_schema(theory: Theory) -> bool {
    matches!(theory, Theory::SyMon | Theory::ReMon)
}

/// Instances for criterion 1. SyMon and ReMon schemata are instantiated over
/// the ∧/⊤ fragment so that their instances are also ReMon axioms.
fn rmc_instances() -> Result<Vec<(&'static str, Theory, Vec<Equation>)>, String> {
    let cfg = InstanceConfig {
        size_bound: 4,
        min_letters: 2,
        max_letters: 3,
        seed: 42,
        ..InstanceConfig::default()
    };
    let mut out = Vec::new();
    for schema in axioms(Theory::Rmc) {
        let gen_theory = if is_remon_schema(schema.theory) {
            Theory::ReMon
        } else {
            Theory::Rmc
        };
        let eqs = random_schema_instances(&schema, gen_theory, &cfg, 100, admitted)
            .map_err(|e| e.to_string())?;
        out.push((schema.name, schema.theory, eqs));
    }
    Ok(out)
}

fn criterion_1(instances: &[(&'static str, Theory, Vec<Equation>)]) -> Outcome {
    let n_schemata = instances.len();
    let mut checked = 0usize;
    let mut valuations = 0usize;
    for (name, _, eqs) in instances {
        for eq in eqs {
            let vals = default_valuations(&eq.letters());
            valuations += vals.len();
            let verdict = check_equation(eq, &vals).map_err(|e| format!("{name}: {eq}: {e}"))?;
            if !verdict.holds() {
                return Err(format!("{name}: {eq} fails: {verdict:?}"));
            }
            checked += 1;
        }
    }
    if n_schemata != 27 {
        return Err(format!("expected 27 RMC schemata, found {n_schemata}"));
    }
    Ok(format!(
        "{n_schemata} schemata, {checked} instances, {valuations} valuations, 0 failures"
    ))
}

/// Random ReMon terms out of small sources, bucketed by type and relation;
/// distinct terms in one bucket form an Equal pair.
fn random_equal_pairs(count: usize) -> Vec<(ArrowTerm, ArrowTerm)> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let alphabet = letters(&["p", "q"]);
    let mut pairs = Vec::new();
    let sources = [
        "p",
        "p /\\ q",
        "p /\\ T",
        "(p /\\ q) /\\ p",
        "T /\\ q",
        "p /\\ (q /\\ T)",
    ];
    while pairs.len() < count {
        let src = parse_formula(sources[rng.gen_range(0..sources.len())]).unwrap();
        let mut buckets: BTreeMap<String, Vec<ArrowTerm>> = BTreeMap::new();
        for _ in 0..60 {
            let mut gen = TermGenerator {
                rng: &mut rng,
                theory: Theory::ReMon,
                letters: alphabet.clone(),
                size_bound: 1,
                max_steps: 4,
            };
            let t = gen.forward(&src);
            let ty = t.infer_type().expect("generated terms are well typed");
            let Ok(rel) = rel_of(&t) else { continue };
            let key = format!("{ty} | {rel}");
            let bucket = buckets.entry(key).or_default();
            if !bucket.contains(&t) {
                bucket.push(t);
            }
        }
        for bucket in buckets.values() {
            for w in bucket.windows(2) {
                if pairs.len() < count {
                    pairs.push((w[0].clone(), w[1].clone()));
                }
            }
        }
    }
    pairs
}

fn criterion_2(instances: &[(&'static str, Theory, Vec<Equation>)]) -> Outcome {
    let mut remon = 0usize;
    for (name, theory, eqs) in instances {
        if !is_remon_schema(*theory) {
            continue;
        }
        for eq in eqs {
            let (l, r) = (
                rel_of(&eq.lhs).map_err(|e| format!("{name}: {e}"))?,
                rel_of(&eq.rhs).map_err(|e| e.to_string())?,
            );
            if l != r {
                return Err(format!("{name}: {eq}: {l} vs {r}"));
            }
            remon += 1;
        }
    }
    let pairs = random_equal_pairs(500);
    let (mut held, mut skipped) = (0usize, 0usize);
    for (f, g) in &pairs {
        let verdict = decide_remon_eq(f, g).map_err(|e| e.to_string())?;
        if !verdict.is_equal() {
            return Err(format!("bucketed pair not Equal: {f} vs {g}"));
        }
        let eq = Equation::new(f.clone(), g.clone()).map_err(|e| e.to_string())?;
        if !admitted(&eq) {
            skipped += 1;
            continue;
        }
        let checked =
            check_equation(&eq, &default_valuations(&eq.letters())).map_err(|e| e.to_string())?;
        if !checked.holds() {
            return Err(format!("Equal but fails in the model: {eq}: {checked:?}"));
        }
        held += 1;
    }
    if skipped > 0 {
        return Err(format!(
            "{skipped} Equal pairs exceeded the evaluation budget"
        ));
    }
    Ok(format!(
        "{remon} ReMon instances agree, {held} random Equal pairs hold, 0 violations"
    ))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let alphabet = letters(&["p", "q", "r"]);
    let (mut done, mut redraws) = (0usize, 0usize);
    while done < 1000 {
        let a = random_formula(&mut rng, &alphabet, 6, Theory::Smc);
        let v = Valuation::from_sizes(alphabet.iter().map(|m| (&**m, rng.gen_range(1..=4usize))))
            .unwrap();
        let size = match interp_formula(&a, &v) {
            Ok(s) => s.size(),
            Err(ModelError::Overflow(_)) => {
                redraws += 1;
                continue;
            }
            Err(e) => return Err(e.to_string()),
        };
        let sigma = v.non_point_counts();
        let arith = arith_eval(&a, &sigma).map_err(|e| e.to_string())?;
        if &arith + 1u32 != BigUint::from(size) {
            return Err(format!("{a} at {v}: model size {size}, arithmetic {arith}"));
        }
        done += 1;
    }
    Ok(format!(
        "{done} formulae exact ({redraws} redrawn on overflow)"
    ))
}

fn criterion_4() -> Outcome {
    let sigma = [(Arc::from("p"), 2u64), (Arc::from("q"), 3u64)]
        .into_iter()
        .collect();
    let v = arith_eval(&parse_formula("p -> q").unwrap(), &sigma).map_err(|e| e.to_string())?;
    // b^(a-1) maps fixing the point
    let hom = internal_hom(&sizes(3), &sizes(4))
        .map_err(|e| e.to_string())?
        .set
        .size();
    let sm = smash(&sizes(3), &sizes(4))
        .map_err(|e| e.to_string())?
        .size();
    let prod = product(&sizes(3), &sizes(4))
        .map_err(|e| e.to_string())?
        .size();
    let coprod = coproduct(&sizes(3), &sizes(4))
        .map_err(|e| e.to_string())?
        .size();
    let two = sizes(2);
    let left = product(&two, &coproduct(&two, &two).unwrap())
        .unwrap()
        .size();
    let right = coproduct(&product(&two, &two).unwrap(), &product(&two, &two).unwrap())
        .unwrap()
        .size();
    let got = (v.clone(), hom, sm, prod, coprod, left, right);
    let want = (
        BigUint::from(15u32),
        4usize.pow(2),
        2 * 3 + 1,
        3 * 4,
        2 + 3 + 1,
        2 * 3,
        3 + 3 + 1,
    );
    if got != want {
        return Err(format!("got {got:?}, want {want:?}"));
    }
    Ok(format!("p→q at (2,3) = {v}; |3→4| = {hom}; |3⊗4| = {sm}; |3×4| = {prod}; |3+4| = {coprod}; distribution {left} vs {right}"))
}

fn criterion_5() -> Outcome {
    let cfg = ScanConfig {
        max_size: 4,
        letters: letters(&["p", "q", "r"]),
        bound: 4,
        diversified_only: true,
        ..ScanConfig::default()
    };
    let started = Instant::now();
    let report = conjecture_scan(&cfg).map_err(|e| e.to_string())?;
    let secs = started.elapsed().as_secs_f64();
    if report.sampled {
        return Err("scan fell back to sampling".into());
    }
    if !report.s_matches_arith() {
        return Err(format!(
            "{} soundness violations, {} candidates",
            report.soundness_violations.len(),
            report.candidates.len()
        ));
    }
    Ok(format!(
        "{} diversified formulae, {} S-classes = {} arithmetic classes, 0 discrepancies ({secs:.1} s)",
        report.formulas, report.s_classes, report.arith_classes
    ))
}

fn criterion_6() -> Outcome {
    let w = naturality_failure_witness();
    if !w.verify() {
        return Err(format!("witness does not verify:\n{w}"));
    }
    let (a, b) = (w.f.dom().size(), w.g.dom().size());
    if a > 3 || b > 3 || w.f.cod().size() > 3 || w.g.cod().size() > 3 {
        return Err("witness uses a set larger than 3".into());
    }
    // x ⊗ g(y) collapses when g(y) = ∗, while f(proj x) need not
    let k = w
        .element
        .checked_sub(1)
        .ok_or("witness element is the point")?;
    let (x, y) = (k / (b - 1) + 1, k % (b - 1) + 1);
    let (fx, gy) = (w.f.apply(x), w.g.apply(y));
    let lhs = if fx == 0 || gy == 0 { 0 } else { fx };
    if (lhs, fx) != (w.lhs, w.rhs) || lhs == fx {
        return Err(format!(
            "independent recomputation at ({x},{y}) gives {lhs} vs {fx}"
        ));
    }
    Ok(format!(
        "f : {a} → {}, g : {b} → {}, element ({x},{y}): {lhs} vs {fx}",
        w.f.cod().size(),
        w.g.cod().size()
    ))
}

/// Every partial function between plain sets `0..n` and `0..m`.
fn all_partials(n: usize, m: usize) -> Vec<PartialFn> {
    let mut out: Vec<Vec<Option<usize>>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|g| {
                std::iter::once(None).chain((0..m).map(Some)).map(move |y| {
                    let mut g = g.clone();
                    g.push(y);
                    g
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|g| PartialFn::new(n, m, g).expect("valid graph"))
        .collect()
}

fn criterion_7() -> Outcome {
    let mut maps = 0usize;
    let mut composites = 0usize;
    for a in 1..=3 {
        for b in 1..=3 {
            let partials = all_partials(a - 1, b - 1);
            if partials.len() != b.pow(a as u32 - 1) {
                return Err(format!(
                    "oracle enumerates {} partial functions {a} → {b}",
                    partials.len()
                ));
            }
            for p in &partials {
                if to_partial(&from_partial(p)) != *p {
                    return Err(format!("partial function round trip fails on {p}"));
                }
            }
            for f in all_maps(&sizes(a), &sizes(b)) {
                if from_partial(&to_partial(&f)) != f {
                    return Err(format!("pointed map round trip fails on\n{f}"));
                }
                maps += 1;
                for c in 1..=3 {
                    for g in all_maps(&sizes(b), &sizes(c)) {
                        let lhs = to_partial(&g.after(&f).map_err(|e| e.to_string())?);
                        let rhs = to_partial(&g)
                            .after(&to_partial(&f))
                            .map_err(|e| e.to_string())?;
                        if lhs != rhs {
                            return Err(format!("composition not preserved:\n{f}\nthen\n{g}"));
                        }
                        composites += 1;
                    }
                }
            }
            for i in 1..=3 {
                if to_partial(&relcat::pointedsets::PointedMap::identity(&sizes(i))).graph
                    != (0..i - 1).map(Some).collect::<Vec<_>>()
                {
                    return Err(format!("identity on {i} is not the partial identity"));
                }
            }
        }
    }
    Ok(format!(
        "{maps} maps round-trip, {composites} composites preserved, 0 failures"
    ))
}

fn criterion_8() -> Outcome {
    let schemata = axioms(Theory::Rmc);
    let pick = |name: &str| {
        schemata
            .iter()
            .find(|s| s.name == name)
            .cloned()
            .ok_or(format!("no schema {name}"))
    };
    let triangles = [pick("(εη ∧)")?, pick("(εη →)")?];
    let formulas: Vec<Formula> = ["p", "q", "T", "p /\\ q", "q -> p"]
        .iter()
        .map(|s| parse_formula(s).unwrap())
        .collect();
    let (mut checked, mut skipped) = (0usize, 0usize);
    for schema in &triangles {
        for a in &formulas {
            for b in &formulas {
                let subst = Substitution::new()
                    .formula("A", a.clone())
                    .formula("B", b.clone());
                let eq = instantiate(schema, &subst).map_err(|e| e.to_string())?;
                for v in valuations_over(&eq.letters(), &[1, 2, 3], usize::MAX) {
                    let mut ev =
                        Evaluator::new(&v, EvalConfig::default()).map_err(|e| e.to_string())?;
                    if ev.admits(&eq.lhs).is_err() {
                        skipped += 1;
                        continue;
                    }
                    let m = ev.eval(&eq.lhs).map_err(|e| format!("{eq} at {v}: {e}"))?;
                    if !m.is_identity() {
                        return Err(format!("{} at {v} is not the identity", eq.lhs));
                    }
                    checked += 1;
                }
            }
        }
    }
    let base = valuations_over(
        &letters(&["p", "q"]).into_iter().collect(),
        &[1, 2, 3],
        usize::MAX,
    )
    .len();
    Ok(format!("{checked} instance valuations give identity tables (all {base} letter valuations; {skipped} over budget)"))
}

fn report(n: usize, name: &str, started: Instant, outcome: &Outcome) {
    let secs = started.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => println!("PASS {n} {name}: {detail} [{secs:.1} s]"),
        Err(why) => println!("FAIL {n} {name}: {why} [{secs:.1} s]"),
    }
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut record = |n: usize, name: &str, started: Instant, outcome: Outcome| {
        report(n, name, started, &outcome);
        failed += outcome.is_err() as usize;
    };

    let t = Instant::now();
    let instances = rmc_instances();
    match &instances {
        Ok(inst) => {
            record(1, "axiom soundness in pointed sets", t, criterion_1(inst));
            let t = Instant::now();
            record(2, "coherence agreement", t, criterion_2(inst));
        }
        Err(e) => {
            record(1, "axiom soundness in pointed sets", t, Err(e.clone()));
            record(2, "coherence agreement", t, Err("no instances".into()));
        }
    }
    let t = Instant::now();
    record(3, "cardinality bridge", t, criterion_3());
    let t = Instant::now();
    record(4, "specific values", t, criterion_4());
    let t = Instant::now();
    record(
        5,
        "S agrees with arithmetic on diversified formulae",
        t,
        criterion_5(),
    );
    let t = Instant::now();
    record(6, "smash projections are not natural", t, criterion_6());
    let t = Instant::now();
    record(7, "partial-function functor", t, criterion_7());
    let t = Instant::now();
    record(8, "triangular equations", t, criterion_8());

    if failed == 0 {
        println!("acceptance: all 8 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 8 criteria fail");
        ExitCode::FAILURE
    }
}
