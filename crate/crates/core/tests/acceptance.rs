//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fail.

use std::time::{Duration, Instant};

use num_rational::Rational64;
use p2bundles::bundles::{make_bundle, rr_chi_p2, rr_chi_p3, Presentation, SerreBundle};
use p2bundles::field::{Field, PrimeField, Rationals};
use p2bundles::ideals::{graded_betti, GradedBetti, ResolutionClass};
use p2bundles::schemes::ZeroDimScheme;
use p2bundles::verifier::{
    ensemble_reports_for, realize_ten_cases, verify_bundle, verify_remarks, CheckReport, EnsembleConfig,
    StabilityMix, Status, Summary,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    for c2 in 0..=10i64 {
        let r = |n: i64, d: i64| Rational64::new(n, d);
        let cases: [(&str, bool); 6] = [
            ("p2(0,c2,0) at c2=0 is 2", c2 != 0 || rr_chi_p2(0, 0, 0) == Ok(2)),
            ("p2(-1,c2,0) = 1 - c2", rr_chi_p2(-1, c2, 0) == Ok(1 - c2)),
            ("p2(-1,c2,1) = 4 - c2", rr_chi_p2(-1, c2, 1) == Ok(4 - c2)),
            ("p2(-1,c2,2) = 9 - c2", rr_chi_p2(-1, c2, 2) == Ok(9 - c2)),
            ("p3(-1,c2,0) = 1 - 3c2/2", rr_chi_p3(-1, c2, 0) == Ok(r(2 - 3 * c2, 2))),
            ("p3(-1,c2,1) = 5 - 5c2/2", rr_chi_p3(-1, c2, 1) == Ok(r(10 - 5 * c2, 2))),
        ];
        for (name, ok) in cases {
            ensure(ok, || format!("{name} fails at c2 = {c2}"))?;
        }
    }
    Ok("66 identities".into())
}

fn omega<F: Field>(field: F) -> Result<SerreBundle<F>, String> {
    let z = ZeroDimScheme::from_int_points(field, &[[2, -3, 1]]).map_err(|e| e.to_string())?;
    make_bundle(z, -1, 1).map_err(|e| e.to_string())
}

/// Integer data of the cotangent example, compared across backends.
fn omega_outputs<F: Field>(field: F) -> Result<(Vec<(i64, usize, usize, usize)>, Presentation, bool, Vec<CheckReport>), String> {
    let e = omega(field)?;
    let table = e.cohomology_table(None).map_err(|e| e.to_string())?;
    let rows = table.rows.iter().map(|r| (r.k, r.h0, r.h1, r.h2)).collect();
    Ok((rows, e.bundle_resolution(), e.splits().map_err(|e| e.to_string())?, verify_bundle(&e)))
}

fn criterion_2() -> Outcome {
    let e = omega(PrimeField::default())?;
    ensure(e.c2() == 1, || format!("c2 = {}", e.c2()))?;
    let (rows, res, split, reports) = omega_outputs(PrimeField::default())?;
    for &(k, _, h1, _) in &rows {
        ensure(h1 == usize::from(k == -1), || format!("h1({k}) = {h1}"))?;
    }
    ensure(rows.iter().any(|r| r.0 == -1), || "window misses -1".into())?;
    ensure(res == Presentation::new(vec![-1, -1, -1], vec![-2]), || format!("resolution {res:?}"))?;
    ensure(!split, || "reported split".into())?;
    let bad: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
    ensure(bad.is_empty(), || format!("{bad:?}"))?;
    Ok(format!("{} twists, {} checks", rows.len(), reports.len()))
}

fn ten_case_betti<F: Field>(field: &F) -> Result<Vec<(String, GradedBetti)>, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let cases = realize_ten_cases(field, &mut rng).map_err(|e| e.to_string())?;
    cases
        .iter()
        .map(|(class, z)| Ok((class.to_string(), graded_betti(z).map_err(|e| e.to_string())?)))
        .collect()
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let got = ten_case_betti(&PrimeField::default())?;
    ensure(got.len() == 10, || format!("{} labels", got.len()))?;
    for class in ResolutionClass::ALL {
        let betti = got
            .iter()
            .find(|(l, _)| *l == class.to_string())
            .map(|(_, b)| b)
            .ok_or_else(|| format!("{class} missing"))?;
        ensure(*betti == class.template(), || format!("{class}: {betti:?}"))?;
    }
    within(start, 10)?;
    Ok("10 labels".into())
}

fn within(start: Instant, secs: u64) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < Duration::from_secs(secs), || format!("took {took:?}, budget {secs} s"))
}

fn ensemble(trials: usize, mix: StabilityMix, seed: u64) -> Result<Vec<CheckReport>, String> {
    ensemble_reports_for(&EnsembleConfig::new(trials, mix, seed)).map_err(|e| e.to_string())
}

fn summarize(reports: &[CheckReport]) -> Summary {
    Summary::from_reports(serde_json::Value::Null, reports)
}

fn require_every(s: &Summary, id: &str, trials: usize) -> Result<(), String> {
    let c = s.count(id).ok_or_else(|| format!("no {id} reports"))?;
    ensure(c.pass == trials && c.fail == 0, || format!("{id}: {} pass, {} fail of {trials}", c.pass, c.fail))
}

fn no_failures(s: &Summary) -> Result<(), String> {
    ensure(s.fail_count() == 0, || {
        let first = s.failures.first().map(|f| format!("{f:?}")).unwrap_or_default();
        format!("{} fail reports, first: {first}", s.fail_count())
    })
}

fn criterion_4(reports: &[CheckReport], took: Duration) -> Outcome {
    let s = summarize(reports);
    no_failures(&s)?;
    for id in ["lemma.u", "tcv2.max_at_minus_one", "h1.connected", "resolution.rank_plus_two"] {
        require_every(&s, id, 500)?;
    }
    ensure(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    Ok(format!("500 trials, {} reports, {took:.1?}", reports.len()))
}

fn criterion_5(reports: &[CheckReport], took: Duration) -> Outcome {
    let s = summarize(reports);
    no_failures(&s)?;
    require_every(&s, "lemma.u", 200)?;
    require_every(&s, "trial.recipe_c2", 200)?;
    let prop = s.count("prop.stable_small_u").ok_or("no proposition reports")?;
    ensure(prop.pass > 0, || "proposition never exercised".into())?;
    let special = reports
        .iter()
        .filter(|r| r.check_id == "prop.stable_small_u" && r.instance_digest.contains("recipe=(-1,4,2)"))
        .count();
    ensure(special > 0, || "r = 2 construction never exercised".into())?;
    ensure(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    Ok(format!("200 trials, {} proposition checks, {took:.1?}", prop.pass))
}

fn criterion_6(all: &[CheckReport], split_trials: usize) -> Outcome {
    let s = summarize(all);
    let c = s.count("tcv2.splitting").ok_or("no splitting reports")?;
    ensure(c.fail == 0, || format!("{} oracle mismatches", c.fail))?;
    let split = all
        .iter()
        .filter(|r| r.check_id == "tcv2.splitting" && r.details.iter().any(|d| d.computed == "true"))
        .count();
    ensure(split >= split_trials, || format!("only {split} split instances"))?;
    Ok(format!("{} instances, {split} split", c.pass))
}

fn criterion_7(all: &[CheckReport]) -> Outcome {
    let s = summarize(all);
    let u1 = s.count("corollary.u1").ok_or("no u = 1 instances")?;
    let u2 = s.count("corollary.u2").ok_or("no u = 2 instances")?;
    ensure(u1.fail == 0 && u2.fail == 0, || format!("u1 fails {}, u2 fails {}", u1.fail, u2.fail))?;
    let z = ZeroDimScheme::from_int_points(Rationals, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).map_err(|e| e.to_string())?;
    let e = make_bundle(z, 0, 1).map_err(|e| e.to_string())?;
    ensure(e.is_stable() && e.h1(-1) == 2, || "three points do not give a stable u = 2 bundle".into())?;
    let res = e.bundle_resolution();
    ensure(res == Presentation::new(vec![-1; 4], vec![-2, -2]), || format!("resolution {res:?}"))?;
    Ok(format!("{} u=1, {} u=2 instances", u1.pass, u2.pass))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let reports = verify_remarks(&PrimeField::default(), &mut rng).map_err(|e| e.to_string())?;
    let get = |id: &str| reports.iter().find(|r| r.check_id == id).ok_or_else(|| format!("{id} missing"));
    ensure(get("remark.unstable_point")?.passed(), || "single point, r = 0".into())?;
    ensure(get("remark.h1_positive.six_points")?.passed(), || "six points".into())?;
    let flags: Vec<_> = reports.iter().filter(|r| r.status == Status::Flag).collect();
    ensure(flags.len() == 1, || format!("{} flags", flags.len()))?;
    let flag = flags[0];
    ensure(flag.check_id == "remark.h1_positive.three_points", || flag.check_id.clone())?;
    ensure(
        flag.details.iter().any(|d| d.name == "h1(E) = c2 - 1" && d.expected == d.computed && d.computed == "2"),
        || format!("{flag:?}"),
    )?;
    ensure(reports.iter().all(|r| r.status != Status::Fail), || "a remark check failed".into())?;
    Ok("1 flag: h1(E) = 2 = c2 - 1".into())
}

fn criterion_9() -> Outcome {
    let fp = omega_outputs(PrimeField::default())?;
    let q = omega_outputs(Rationals)?;
    ensure(fp.0 == q.0 && fp.1 == q.1 && fp.2 == q.2, || "cotangent example differs".into())?;
    let statuses = |r: &[CheckReport]| r.iter().map(|c| (c.check_id.clone(), c.status)).collect::<Vec<_>>();
    ensure(statuses(&fp.3) == statuses(&q.3), || "check outcomes differ".into())?;
    let a = ten_case_betti(&PrimeField::default())?;
    let b = ten_case_betti(&Rationals)?;
    ensure(a == b, || format!("betti tables differ: {a:?} vs {b:?}"))?;
    Ok("cotangent table and ten Betti tables agree".into())
}

fn main() {
    let mut results: Vec<(usize, Outcome)> = vec![(1, criterion_1()), (2, criterion_2()), (3, criterion_3())];

    let t = Instant::now();
    let non_stable = ensemble(500, StabilityMix::NonStable, SEED);
    let t4 = t.elapsed();
    let t = Instant::now();
    let stable = ensemble(200, StabilityMix::Stable, SEED + 1);
    let t5 = t.elapsed();
    let split = ensemble(50, StabilityMix::Split, SEED + 2);

    results.push((4, non_stable.as_deref().map_err(Clone::clone).and_then(|r| criterion_4(r, t4))));
    results.push((5, stable.as_deref().map_err(Clone::clone).and_then(|r| criterion_5(r, t5))));

    let combined = (|| -> Result<Vec<CheckReport>, String> {
        let mut all = omega_outputs(PrimeField::default())?.3;
        all.extend(non_stable.clone()?);
        all.extend(stable.clone()?);
        all.extend(split.clone()?);
        Ok(all)
    })();
    results.push((6, combined.as_deref().map_err(Clone::clone).and_then(|a| criterion_6(a, 50))));
    results.push((7, combined.as_deref().map_err(Clone::clone).and_then(criterion_7)));
    results.push((8, criterion_8()));
    results.push((9, criterion_9()));

    let mut failed = 0;
    for (n, outcome) in &results {
        match outcome {
            Ok(msg) => println!("criterion {n}: PASS ({msg})"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n}: FAIL ({msg})");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
