//! Executable checks of the splitting criterion, the `h^1` maximum at twist
//! `-1`, connectedness of the `H^1` module, and the low-`u` classification,
//! run on named constructions and on seeded random ensembles.
//!
//! A `fail` report means a claim was falsified on a concrete instance. A
//! `flag` marks a known, documented discrepancy that is not a falsification.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bundles::{make_bundle, BundleError, Presentation, SerreBundle};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::ideals::{self, ResolutionClass};
use crate::schemes::{random_scheme, Constraint, SchemeError, SchemeSpec, ZeroDimScheme, MAX_RESAMPLES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("could not realize case {0} in {MAX_RESAMPLES} attempts")]
    RealizationFailed(String),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Bundle(#[from] BundleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Flag,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Detail {
    pub name: String,
    pub expected: String,
    pub computed: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check_id: String,
    pub instance_digest: String,
    pub status: Status,
    pub details: Vec<Detail>,
}

impl CheckReport {
    fn new(check_id: &str, digest: &str, ok: bool) -> Self {
        CheckReport {
            check_id: check_id.to_string(),
            instance_digest: digest.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            details: Vec::new(),
        }
    }

    fn detail(mut self, name: &str, expected: impl ToString, computed: impl ToString) -> Self {
        self.details.push(Detail {
            name: name.to_string(),
            expected: expected.to_string(),
            computed: computed.to_string(),
        });
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Short description of a bundle used to tag its reports.
pub fn describe<F: Field>(e: &SerreBundle<F>) -> String {
    let z = e.scheme();
    format!(
        "c1={} r={} c2={} degZ={} points={} arcs={}",
        e.c1(),
        e.r(),
        e.c2(),
        z.degree(),
        z.points().len(),
        z.arcs().len()
    )
}

/// Every structural check on one bundle, one report per check.
pub fn verify_bundle<F: Field>(e: &SerreBundle<F>) -> Vec<CheckReport> {
    let digest = describe(e);
    let d = digest.as_str();
    let table = match e.cohomology_table(None) {
        Ok(t) => t,
        Err(err) => return vec![CheckReport::new("table.build", d, false).detail("error", "", err)],
    };
    let u = e.h1(-1);
    let degree = e.scheme().degree();
    let mut out = Vec::new();

    let max = table.max_h1();
    let argmax: Vec<i64> = table.rows.iter().filter(|r| r.h1 == max).map(|r| r.k).collect();
    out.push(
        CheckReport::new("tcv2.max_at_minus_one", d, max == u && (u == 0 || argmax.contains(&-1)))
            .detail("max h1", u, max),
    );

    out.push(match e.splits() {
        Ok(split) => CheckReport::new("tcv2.splitting", d, true).detail("splits", degree == 0, split),
        Err(err) => CheckReport::new("tcv2.splitting", d, false).detail("oracle", "agreement", err),
    });

    let boundary_ok = table.rows.first().is_none_or(|r| r.h1 == 0) && table.rows.last().is_none_or(|r| r.h1 == 0);
    out.push(CheckReport::new("table.window_boundary", d, boundary_ok).detail(
        "h1 at window ends",
        "0, 0",
        format!(
            "{}, {}",
            table.rows.first().map_or(0, |r| r.h1),
            table.rows.last().map_or(0, |r| r.h1)
        ),
    ));

    let dual_bad: Vec<i64> = table
        .rows
        .iter()
        .filter(|r| {
            let partner = -e.c1() - r.k - 3;
            table
                .row(partner)
                .is_some_and(|p| p.h1 != r.h1 || r.h2 != p.h0)
        })
        .map(|r| r.k)
        .collect();
    out.push(CheckReport::new("table.duality", d, dual_bad.is_empty()).detail("asymmetric twists", "[]", format!("{dual_bad:?}")));

    let chi_bad: Vec<i64> = table
        .rows
        .iter()
        .filter(|r| {
            let general = e.chern().twist(r.k).chi();
            r.chi != general || r.chi != r.h0 as i64 - r.h1 as i64 + r.h2 as i64
        })
        .map(|r| r.k)
        .collect();
    out.push(CheckReport::new("table.rr_chi", d, chi_bad.is_empty()).detail("inconsistent twists", "[]", format!("{chi_bad:?}")));

    out.push(match e.h1_module() {
        Ok(m) => CheckReport::new("h1.connected", d, true).detail("support", "interval", format!("{:?}", m.support)),
        Err(err) => CheckReport::new("h1.connected", d, false).detail("support", "interval", err),
    });

    let (expected_u, which) = if e.is_stable() {
        (e.c2(), "c2")
    } else {
        (degree as i64, "deg Z")
    };
    out.push(CheckReport::new("lemma.u", d, u as i64 == expected_u).detail(&format!("h1(E(-1)) = {which}"), expected_u, u));

    let twist = e.minimal_section_twist();
    out.push(CheckReport::new("bundle.minimal_twist", d, twist == e.r()).detail("r", e.r(), twist));

    let res = e.bundle_resolution();
    let h0_bad: Vec<i64> = table
        .rows
        .iter()
        .filter(|r| res.h0_sum(r.k) != r.h0 as i64)
        .map(|r| r.k)
        .collect();
    out.push(CheckReport::new("resolution.two_route_h0", d, h0_bad.is_empty()).detail("mismatched twists", "[]", format!("{h0_bad:?}")));

    let dual = e.dual_presentation();
    let plus_two = e.h1_module().is_ok_and(|m| m.gens_plus_two);
    out.push(
        CheckReport::new("resolution.rank_plus_two", d, dual.middle.len() == dual.back.len() + 2 && plus_two)
            .detail("|middle| - |back|", 2, dual.middle.len() as i64 - dual.back.len() as i64),
    );

    if e.c1() == -1 && !e.is_stable() && degree > 0 {
        // Unstable, c1 = -1, non-split: h1(E) != 0, and h1(E(1)) = 0 forces
        // r = 0 with a single point.
        let h1_0 = e.h1(0);
        let h1_1 = e.h1(1);
        let forced = h1_1 != 0 || (e.r() == 0 && degree == 1);
        out.push(
            CheckReport::new("remark.unstable_c1_odd", d, h1_0 != 0 && forced)
                .detail("h1(E)", ">0", h1_0)
                .detail("h1(E(1)) = 0 => r = 0, deg Z = 1", "true", forced),
        );
    }
    out
}

/// Least-twist statement for stable bundles with `h^1(E(-1)) <= 4`.
pub fn verify_prop_stable<F: Field>(e: &SerreBundle<F>) -> Result<CheckReport, VerifyError> {
    let u = e.h1(-1);
    if !e.is_stable() || u > 4 {
        return Err(VerifyError::PreconditionViolation(format!(
            "needs a stable bundle with u <= 4 (stable = {}, u = {u})",
            e.is_stable()
        )));
    }
    let digest = describe(e);
    let z = e.scheme();
    let lines = ideals::ideal_cohomology(z, 1).h0;
    let conics = ideals::ideal_cohomology(z, 2).h0;
    let r_ok = e.r() == 1 || (e.r() == 2 && e.c1() == -1 && u == 4);
    let case_ok = match (e.c1(), e.r()) {
        (0, 1) => u >= 2 && lines == 0 && z.degree() == u + 1,
        (-1, 1) => u >= 1 && z.degree() == u,
        (-1, 2) => z.degree() == 6 && conics == 0,
        _ => false,
    };
    Ok(CheckReport::new("prop.stable_small_u", &digest, r_ok && case_ok)
        .detail("r", "1, or 2 with c1 = -1 and u = 4", e.r())
        .detail("u", "c2", u)
        .detail("h0(I_Z(1))", if e.c1() == 0 { "0" } else { "-" }, lines)
        .detail("h0(I_Z(2))", if e.r() == 2 { "0" } else { "-" }, conics))
}

/// Resolution shapes for `u = 1` and `u = 2`.
pub fn verify_corollaries<F: Field>(e: &SerreBundle<F>) -> Result<CheckReport, VerifyError> {
    let u = e.h1(-1);
    if u != 1 && u != 2 {
        return Err(VerifyError::PreconditionViolation(format!("needs u in {{1, 2}}, got {u}")));
    }
    let digest = describe(e);
    let a = e.r();
    let b = -e.r() - e.c1() + 1;
    let res = e.bundle_resolution();
    let report = if u == 1 {
        let template = Presentation::new(vec![-a, -b, -b], vec![-b - 1]);
        let stable_iff = e.is_stable() == (a == b);
        let omega = !e.is_stable() || (a == b && e.c1() == -1);
        CheckReport::new("corollary.u1", &digest, res == template && a <= b && stable_iff && omega)
            .detail("resolution", format!("{template:?}"), format!("{res:?}"))
            .detail("a, b", "a <= b; a = b iff stable", format!("{a}, {b}"))
    } else {
        let first = Presentation::new(vec![-b - 1, -b, -a], vec![-b - 2]);
        let second = Presentation::new(vec![-1; 4], vec![-2, -2]);
        let matched = if res == first && a <= b {
            "first"
        } else if res == second {
            "second"
        } else {
            "none"
        };
        let ok = matched != "none" && (!(e.is_stable() && e.c1() == 0) || matched == "second");
        CheckReport::new("corollary.u2", &digest, ok)
            .detail("template", "first or second", matched)
            .detail("resolution", format!("{first:?} | {second:?}"), format!("{res:?}"))
    };
    Ok(report)
}

fn bundle_from<F: Field>(
    field: &F,
    spec: SchemeSpec,
    c1: i64,
    r: i64,
    rng: &mut ChaCha8Rng,
) -> Result<SerreBundle<F>, VerifyError> {
    let z = random_scheme(field, &spec, rng)?;
    Ok(make_bundle(z, c1, r)?)
}

/// The named instances from the remarks on extremal and unstable bundles.
pub fn verify_remarks<F: Field>(field: &F, rng: &mut ChaCha8Rng) -> Result<Vec<CheckReport>, VerifyError> {
    let mut out = Vec::new();

    let omega = bundle_from(field, SchemeSpec::new(1, Constraint::Generic), -1, 1, rng)?;
    let t = omega.cohomology_table(None)?;
    let off = t.rows.iter().filter(|r| r.k != -1 && r.h1 != 0).count();
    out.push(
        CheckReport::new("remark.omega_extremal", &describe(&omega), off == 0 && !omega.splits()?)
            .detail("twists k != -1 with h1 != 0", 0, off)
            .detail("splits", false, omega.splits()?),
    );

    let e = bundle_from(field, SchemeSpec::new(1, Constraint::Generic), -1, 0, rng)?;
    let (h1, split) = (e.h1(1), e.splits()?);
    out.push(
        CheckReport::new("remark.unstable_point", &describe(&e), h1 == 0 && !split)
            .detail("h1(E(1))", 0, h1)
            .detail("splits", false, split),
    );

    let e = bundle_from(field, SchemeSpec::new(6, Constraint::Generic), -1, 2, rng)?;
    let h1 = e.h1(1);
    out.push(
        CheckReport::new("remark.h1_positive.six_points", &describe(&e), h1 == 0 && e.c2() == 4)
            .detail("h1(E(1))", 0, h1)
            .detail("c2", 4, e.c2()),
    );

    // Three non-collinear points as the zero scheme of E(1), c1 = -1: the
    // computed h1(E) is c2 - 1 = 2, not 0. Reported as a flag.
    let e = bundle_from(field, SchemeSpec::new(3, Constraint::Generic), -1, 1, rng)?;
    let h1 = e.h1(0);
    let mut flag = CheckReport::new("remark.h1_positive.three_points", &describe(&e), true)
        .detail("h1(E) claimed", 0, h1)
        .detail("h1(E) = c2 - 1", e.c2() - 1, h1)
        .detail("c2", 3, e.c2());
    flag.status = if h1 as i64 == e.c2() - 1 && e.c2() == 3 {
        Status::Flag
    } else {
        Status::Fail
    };
    out.push(flag);
    Ok(out)
}

/// Random scheme specs realizing each resolution case.
fn case_spec(class: ResolutionClass) -> SchemeSpec {
    match class {
        ResolutionClass::CiLine(u) => SchemeSpec::new(u, Constraint::CollinearSubset(u)),
        ResolutionClass::B1 => SchemeSpec::new(3, Constraint::Generic),
        ResolutionClass::B2 => SchemeSpec::new(4, Constraint::CollinearSubset(3)),
        ResolutionClass::B3 => SchemeSpec::new(4, Constraint::Generic),
        ResolutionClass::B4 => SchemeSpec::new(5, Constraint::CollinearSubset(4)),
        ResolutionClass::B5 => SchemeSpec::new(5, Constraint::Generic),
    }
}

/// A witness scheme for every one of the ten resolution cases.
pub fn realize_ten_cases<F: Field, R: Rng + ?Sized>(
    field: &F,
    rng: &mut R,
) -> Result<BTreeMap<ResolutionClass, ZeroDimScheme<F>>, VerifyError> {
    let mut out = BTreeMap::new();
    for class in ResolutionClass::ALL {
        let spec = case_spec(class);
        let witness = (0..MAX_RESAMPLES).find_map(|_| {
            let z = random_scheme(field, &spec, rng).ok()?;
            (ideals::classify_resolution(&z).ok()? == class).then_some(z)
        });
        out.insert(class, witness.ok_or_else(|| VerifyError::RealizationFailed(class.to_string()))?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilityMix {
    NonStable,
    Stable,
    Both,
    Split,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnsembleConfig {
    pub trials: usize,
    pub u_range: (usize, usize),
    pub stability_mix: StabilityMix,
    pub field: FieldSpec,
    pub seed: u64,
}

impl EnsembleConfig {
    pub fn new(trials: usize, stability_mix: StabilityMix, seed: u64) -> Self {
        EnsembleConfig {
            trials,
            u_range: (1, 5),
            stability_mix,
            field: FieldSpec::default(),
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckCount {
    pub id: String,
    pub pass: usize,
    pub fail: usize,
    pub flag: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub config: serde_json::Value,
    pub checks: Vec<CheckCount>,
    pub failures: Vec<CheckReport>,
}

impl Summary {
    pub fn from_reports(config: serde_json::Value, reports: &[CheckReport]) -> Self {
        let mut counts: BTreeMap<&str, CheckCount> = BTreeMap::new();
        for r in reports {
            let c = counts.entry(&r.check_id).or_insert_with(|| CheckCount {
                id: r.check_id.clone(),
                pass: 0,
                fail: 0,
                flag: 0,
            });
            match r.status {
                Status::Pass => c.pass += 1,
                Status::Fail => c.fail += 1,
                Status::Flag => c.flag += 1,
            }
        }
        Summary {
            config,
            checks: counts.into_values().collect(),
            failures: reports.iter().filter(|r| r.status == Status::Fail).cloned().collect(),
        }
    }

    pub fn fail_count(&self) -> usize {
        self.checks.iter().map(|c| c.fail).sum()
    }

    pub fn flag_count(&self) -> usize {
        self.checks.iter().map(|c| c.flag).sum()
    }

    pub fn count(&self, id: &str) -> Option<&CheckCount> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}

/// Per-trial generator: stream `index` of the seeded ChaCha generator, so a
/// trial's instance does not depend on scheduling.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Constraints applicable to a scheme of degree `u`; `off_line` drops the
/// all-collinear one.
fn constraint_menu(u: usize, off_line: bool) -> Vec<Constraint> {
    let mut menu = vec![Constraint::Generic];
    let top = if off_line { u.saturating_sub(1) } else { u };
    menu.extend((3..=top).map(Constraint::CollinearSubset));
    if u >= 3 {
        menu.push(Constraint::OnConic);
    }
    menu.extend((2..=u.min(5)).map(Constraint::WithArc));
    menu
}

/// `(c1, c2, r)` of the stable constructions; the last one is the
/// `c1 = -1, c2 = 4` bundle whose least section lives on `E(2)`.
pub const STABLE_RECIPES: [(i64, i64, i64); 10] = [
    (0, 2, 1),
    (0, 3, 1),
    (0, 4, 1),
    (0, 5, 1),
    (-1, 1, 1),
    (-1, 2, 1),
    (-1, 3, 1),
    (-1, 4, 1),
    (-1, 5, 1),
    (-1, 4, 2),
];

fn trial_digest(seed: u64, index: usize, kind: &str) -> String {
    format!("seed={seed} trial={index} {kind}")
}

fn stamp(mut reports: Vec<CheckReport>, prefix: &str) -> Vec<CheckReport> {
    for r in &mut reports {
        r.instance_digest = format!("{prefix} {}", r.instance_digest);
    }
    reports
}

fn construction_failure(prefix: &str, err: impl ToString) -> Vec<CheckReport> {
    vec![CheckReport::new("trial.construct", prefix, false).detail("construction", "ok", err.to_string())]
}

/// Reports for one bundle: structural checks plus the statements whose
/// hypotheses it meets.
fn bundle_reports<F: Field>(e: &SerreBundle<F>, prefix: &str) -> Vec<CheckReport> {
    let mut reports = verify_bundle(e);
    let u = e.h1(-1);
    if e.is_stable() && u <= 4 {
        reports.extend(verify_prop_stable(e));
    }
    if u == 1 || u == 2 {
        reports.extend(verify_corollaries(e));
    }
    let z = e.scheme();
    if !e.is_stable() && (1..=5).contains(&z.degree()) {
        let d = describe(e);
        reports.push(match ideals::classify_resolution(z) {
            Ok(class) => CheckReport::new("lemma.ten_cases", &d, true).detail("label", "one of ten", class),
            Err(err) => CheckReport::new("lemma.ten_cases", &d, false).detail("label", "one of ten", err),
        });
    }
    stamp(reports, prefix)
}

fn non_stable_trial<F: Field>(field: &F, cfg: &EnsembleConfig, index: usize) -> Vec<CheckReport> {
    let mut rng = trial_rng(cfg.seed, index as u64);
    let (lo, hi) = cfg.u_range;
    let u = rng.gen_range(lo..=hi);
    let c1 = *[-1i64, 0].choose(&mut rng).unwrap();
    let r = rng.gen_range(-2i64..=0);
    let constraint = *constraint_menu(u, false).choose(&mut rng).unwrap();
    let prefix = trial_digest(cfg.seed, index, &format!("non-stable u={u} constraint={constraint}"));
    match bundle_from(field, SchemeSpec::new(u, constraint), c1, r, &mut rng) {
        Ok(e) => bundle_reports(&e, &prefix),
        Err(err) => construction_failure(&prefix, err),
    }
}

fn stable_trial<F: Field>(field: &F, cfg: &EnsembleConfig, index: usize) -> Vec<CheckReport> {
    let mut rng = trial_rng(cfg.seed, index as u64);
    let (c1, c2, r) = STABLE_RECIPES[index % STABLE_RECIPES.len()];
    let (u, constraint) = match (c1, r) {
        (0, 1) => {
            let u = (c2 + 1) as usize;
            (u, *constraint_menu(u, true).choose(&mut rng).unwrap())
        }
        (-1, 1) => {
            let u = c2 as usize;
            (u, *constraint_menu(u, false).choose(&mut rng).unwrap())
        }
        _ => (6, *[Constraint::Generic, Constraint::WithArc(2)].choose(&mut rng).unwrap()),
    };
    let prefix = trial_digest(cfg.seed, index, &format!("stable recipe=({c1},{c2},{r}) constraint={constraint}"));
    match bundle_from(field, SchemeSpec::new(u, constraint), c1, r, &mut rng) {
        Ok(e) => {
            let mut reports = bundle_reports(&e, &prefix);
            reports.push(
                CheckReport::new("trial.recipe_c2", &prefix, e.c2() == c2).detail("c2", c2, e.c2()),
            );
            reports
        }
        Err(err) => construction_failure(&prefix, err),
    }
}

fn split_trial<F: Field>(field: &F, cfg: &EnsembleConfig, index: usize) -> Vec<CheckReport> {
    let mut rng = trial_rng(cfg.seed, index as u64);
    let c1 = *[-1i64, 0].choose(&mut rng).unwrap();
    let r = rng.gen_range(-3i64..=0);
    let prefix = trial_digest(cfg.seed, index, "split");
    match make_bundle(ZeroDimScheme::empty(field.clone()), c1, r) {
        Ok(e) => bundle_reports(&e, &prefix),
        Err(err) => construction_failure(&prefix, err),
    }
}

fn ensemble_reports<F: Field>(field: &F, cfg: &EnsembleConfig) -> Vec<CheckReport> {
    (0..cfg.trials)
        .into_par_iter()
        .map(|i| match cfg.stability_mix {
            StabilityMix::NonStable => non_stable_trial(field, cfg, i),
            StabilityMix::Stable => stable_trial(field, cfg, i),
            StabilityMix::Split => split_trial(field, cfg, i),
            StabilityMix::Both if i % 2 == 0 => non_stable_trial(field, cfg, i),
            StabilityMix::Both => stable_trial(field, cfg, i),
        })
        .collect::<Vec<_>>()
        .concat()
}

fn with_field<T>(spec: FieldSpec, fp: impl FnOnce(&PrimeField) -> T, q: impl FnOnce(&Rationals) -> T) -> Result<T, VerifyError> {
    match spec {
        FieldSpec::PrimeField { p } => {
            let f = PrimeField::new(p).map_err(SchemeError::from)?;
            Ok(fp(&f))
        }
        FieldSpec::Rationals => Ok(q(&Rationals)),
    }
}

/// Runs the randomized ensemble; the result depends only on `cfg`.
pub fn verify_ensemble(cfg: &EnsembleConfig) -> Result<Summary, VerifyError> {
    if cfg.trials == 0 {
        return Err(VerifyError::PreconditionViolation("trials must be >= 1".into()));
    }
    let (lo, hi) = cfg.u_range;
    if lo > hi || hi > crate::schemes::MAX_RANDOM_DEGREE {
        return Err(VerifyError::PreconditionViolation(format!("bad u range {lo}..={hi}")));
    }
    let reports = ensemble_reports_for(cfg)?;
    Ok(Summary::from_reports(serde_json::to_value(cfg).expect("config serializes"), &reports))
}

pub fn ensemble_reports_for(cfg: &EnsembleConfig) -> Result<Vec<CheckReport>, VerifyError> {
    with_field(cfg.field, |f| ensemble_reports(f, cfg), |q| ensemble_reports(q, cfg))
}

/// Ten-case realization as reports: one per label, checked against its
/// Betti template.
pub fn ten_case_reports<F: Field>(field: &F, seed: u64) -> Result<Vec<CheckReport>, VerifyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases = realize_ten_cases(field, &mut rng)?;
    Ok(cases
        .iter()
        .map(|(class, z)| {
            let betti = ideals::graded_betti(z);
            let ok = betti.as_ref().is_ok_and(|b| *b == class.template());
            CheckReport::new("lemma.ten_cases.realized", &format!("seed={seed} label={class}"), ok).detail(
                "betti",
                format!("{:?}", class.template()),
                format!("{betti:?}"),
            )
        })
        .collect())
}

/// Which group of checks the `verify` command runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Tcv2,
    Resolutions,
    Remarks,
}

/// Runs a suite with `trials` random trials per ensemble.
pub fn run_suite(suite: Suite, trials: usize, seed: u64, field: FieldSpec) -> Result<Summary, VerifyError> {
    let mut reports = Vec::new();
    if matches!(suite, Suite::All | Suite::Tcv2) {
        for mix in [StabilityMix::NonStable, StabilityMix::Stable, StabilityMix::Split] {
            let cfg = EnsembleConfig {
                field,
                ..EnsembleConfig::new(trials, mix, seed)
            };
            reports.extend(ensemble_reports_for(&cfg)?);
        }
    }
    if matches!(suite, Suite::All | Suite::Resolutions) {
        reports.extend(with_field(field, |f| ten_case_reports(f, seed), |q| ten_case_reports(q, seed))??);
    }
    if matches!(suite, Suite::All | Suite::Remarks) {
        reports.extend(with_field(
            field,
            |f| verify_remarks(f, &mut ChaCha8Rng::seed_from_u64(seed)),
            |q| verify_remarks(q, &mut ChaCha8Rng::seed_from_u64(seed)),
        )??);
    }
    let config = serde_json::json!({
        "suite": suite,
        "trials": trials,
        "seed": seed,
        "field": field,
    });
    Ok(Summary::from_reports(config, &reports))
}
