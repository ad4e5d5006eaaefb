//! The workbench commands. Each one returns a [`Report`]; rendering and exit
//! codes are left to the caller.

use std::collections::BTreeMap;
use std::time::Instant;

use cartan_core::algebra::{algebra_law_suite, AdjointFault};
use cartan_core::cocycle::{check_inverse_symmetry, equivalence_chain_suite, eta_t_suite, is_symmetric_on, is_trivial_on, validate_cocycle};
use cartan_core::error::WeylError;
use cartan_core::group::validate_descriptor;
use cartan_core::scalars::kernel_suite;
use cartan_core::subgroup::{immediately_centralizing_scan, maximality_scan, normality_report, validate_subgroup};
use cartan_core::weyl::validate_transversal;
use cartan_core::{
    sampling, AlgebraElement, Ball, Character, CheckReport, Clause, CocycleDescriptor, GroupDescriptor,
    GroupElement, SubgroupDescriptor, TwistedAlgebra, Verdict, WeylContext, Witness,
};
use rayon::prelude::*;

use crate::builtins::{self, ClosedForm};
use crate::config::{ConfigError, WorkbenchConfig};
use crate::report::{CheckRecord, Expectation, Report, Section, WeylRow};

/// Number of characters per class in the closed-form comparisons.
pub const CLOSED_FORM_CHARACTERS: usize = 200;

/// Largest conjugacy orbit turned into a counterexample candidate.
const ORBIT_CAP: usize = 256;

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// Scan parameters shared by every check of one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub ball: u32,
    pub k_max: u32,
    pub samples: usize,
    pub seed: u64,
    pub fault: AdjointFault,
}

impl RunOptions {
    pub fn from_config(cfg: &WorkbenchConfig) -> Self {
        RunOptions {
            ball: cfg.ball_radius,
            k_max: cfg.k_max,
            samples: cfg.samples,
            seed: cfg.seed,
            fault: AdjointFault::None,
        }
    }

    fn ball(&self) -> Ball {
        Ball::new(self.ball)
    }

    fn report(&self, command: &str) -> Report {
        Report::new(command, self.seed, self.ball, self.k_max, self.samples)
    }
}

fn timed<F: FnOnce() -> CheckReport>(f: F) -> CheckRecord {
    let t = Instant::now();
    let r = f();
    CheckRecord::from_report(r, t.elapsed())
}

fn timed_merged<F: FnOnce() -> Vec<CheckReport>>(name: &str, radius: Option<u32>, f: F) -> CheckRecord {
    let t = Instant::now();
    let parts = f();
    CheckRecord::merged(name, radius, parts, t.elapsed())
}

fn pair_report(name: &str, radius: u32, checked: u64, pair: Option<(GroupElement, GroupElement)>, c: &CocycleDescriptor) -> CheckReport {
    let w = pair.map(|(a, b)| {
        Witness::new()
            .element("s", &a)
            .element("t", &b)
            .value("c(s,t)", c.eval(&a, &b))
            .value("c(t,s)", c.eval(&b, &a))
    });
    CheckReport::new(name, Some(radius)).with(Clause::from_witness(name, checked, w))
}

/// Validates the group, the cocycle and every named subgroup.
pub fn cmd_validate(cfg: &WorkbenchConfig) -> Report {
    let opts = RunOptions::from_config(cfg);
    let d = cfg.descriptor();
    let ball = opts.ball();
    let mut report = opts.report("validate");
    let mut base = Section::new("config");
    base.checks.push(timed(|| validate_descriptor(&d, ball, opts.samples, opts.seed)));
    base.checks.push(timed(|| validate_cocycle(&cfg.cocycle, &d, ball, opts.samples, opts.seed)));
    base.checks.push(timed(|| check_inverse_symmetry(&cfg.cocycle, &d, ball)));
    report.sections.push(base);
    for (name, s) in &cfg.subgroups {
        let mut sec = Section::new(name);
        sec.checks.push(timed(|| validate_subgroup(s, &d, ball)));
        report.sections.push(sec);
    }
    report.finish_from_sections()
}

/// One record per hypothesis of the Cartan criterion, in a fixed order.
pub fn cartan_section(scenario: &str, d: &GroupDescriptor, c: &CocycleDescriptor, s: &SubgroupDescriptor, opts: &RunOptions) -> Section {
    let ball = opts.ball();
    let b = opts.ball;
    let mut sec = Section::new(scenario);
    sec.checks.push(timed_merged("group", Some(b), || vec![validate_descriptor(d, ball, opts.samples, opts.seed)]));
    sec.checks.push(timed_merged("cocycle", Some(b), || {
        vec![validate_cocycle(c, d, ball, opts.samples, opts.seed), check_inverse_symmetry(c, d, ball)]
    }));
    let sub = timed_merged("subgroup", Some(b), || vec![validate_subgroup(s, d, ball)]);
    let sub_ok = sub.verdict.is_pass();
    sec.checks.push(sub);
    sec.checks.push(CheckRecord::from_report(
        CheckReport::new("clopen", None).with(Clause::pass("clopen", 1).with_note("discrete group: every subgroup is clopen")),
        Default::default(),
    ));

    let downstream = [
        "c-symmetric-on-S",
        "c-trivial-on-S",
        "normal",
        "maximal",
        "immediately-centralizing",
        "abelian-on-S",
    ];
    if !sub_ok {
        for name in downstream {
            let rec = CheckRecord::skipped(name, Some(b), "skipped: subgroup validation failed");
            sec.checks.push(if name == "c-trivial-on-S" { rec.informational() } else { rec });
        }
        return sec;
    }

    let checked = (s.elements_in_ball(d, ball).len().pow(2)) as u64;
    sec.checks.push(timed(|| pair_report("c-symmetric-on-S", b, checked, is_symmetric_on(c, d, s, ball).1, c)));
    sec.checks.push(timed(|| pair_report("c-trivial-on-S", b, checked, is_trivial_on(c, d, s, ball).1, c)).informational());
    sec.checks.push(timed(|| normality_report(s, d, ball)));
    sec.checks.push(timed(|| maximality_scan(s, d, c, ball).to_check()));
    sec.checks.push(timed(|| immediately_centralizing_scan(s, d, opts.k_max, ball).to_check()));
    let alg = TwistedAlgebra::new(d.clone(), c.clone()).with_fault(opts.fault);
    sec.checks.push(timed(|| alg.abelian_on_s_check(s, ball, opts.samples, opts.seed)));
    sec
}

pub fn cmd_check_cartan(cfg: &WorkbenchConfig, subgroup: &str) -> Result<Report, CommandError> {
    let opts = RunOptions::from_config(cfg);
    let s = cfg.subgroup(subgroup)?;
    let mut report = opts.report("check-cartan");
    report.sections.push(cartan_section(subgroup, &cfg.descriptor(), &cfg.cocycle, s, &opts));
    Ok(report.finish_from_sections())
}

fn angles(nu: &Character) -> Vec<String> {
    nu.angles.iter().map(|a| a.to_string()).collect()
}

/// First failing sample, kept as a witness.
#[derive(Default)]
struct FirstFailure(Option<Witness>);

impl FirstFailure {
    fn record(&mut self, w: impl FnOnce() -> Witness) {
        if self.0.is_none() {
            self.0 = Some(w());
        }
    }

    fn clause(self, name: &str, checked: u64) -> Clause {
        Clause::from_witness(name, checked, self.0)
    }
}

fn error_witness(e: &WeylError) -> Witness {
    Witness::new().value("error", e)
}

/// The Weyl table and every invariant of the Weyl construction. Fails with
/// [`WeylError::CocycleNontrivial`] when the construction does not apply.
pub fn weyl_section(
    scenario: &str,
    d: &GroupDescriptor,
    c: &CocycleDescriptor,
    s: &SubgroupDescriptor,
    opts: &RunOptions,
) -> Result<(Section, Vec<WeylRow>), WeylError> {
    let w = WeylContext::new(d.clone(), c.clone(), s.clone())?;
    let ball = opts.ball();
    let b = opts.ball;
    let mut rng = sampling::substream(opts.seed, "weyl");
    let mut sec = Section::new(scenario);
    sec.checks.push(timed(|| validate_transversal(s, d, ball)));

    // table: sampled classes and characters, σ̃ by both routes on every row
    let t = Instant::now();
    let draws: Vec<(GroupElement, GroupElement, GroupElement, Character)> = (0..opts.samples)
        .map(|_| {
            (
                d.random_element(ball, &mut rng),
                d.random_element(ball, &mut rng),
                d.random_element(ball, &mut rng),
                w.random_character(&mut rng),
            )
        })
        .collect();
    let mut rows = Vec::with_capacity(draws.len());
    let mut dual = FirstFailure::default();
    for (g, h, _, nu) in &draws {
        let out = w.weyl_action(g, nu);
        let sigma = w.weyl_cocycle(g, h, nu);
        match (out, sigma) {
            (Ok(out), Ok(sigma)) => rows.push(WeylRow {
                class: w.coset_rep(g).coords().to_vec(),
                second: w.coset_rep(h).coords().to_vec(),
                input: angles(nu),
                output: angles(&out),
                sigma: sigma.to_string(),
            }),
            (Err(e), _) | (_, Err(e)) => dual.record(|| error_witness(&e).element("g", g).element("h", h).value("nu", nu)),
        }
    }
    let table = CheckReport::new("weyl-table", Some(b))
        .with(dual.clause("dual-path", draws.len() as u64).with_note("closed scalar and convolution through Psi agree on every call"));
    sec.checks.push(CheckRecord::from_report(table, t.elapsed()));

    // rep-independence over the whole S-ball for a slice of the samples
    let s_ball = s.elements_in_ball(d, ball);
    let slice = &draws[..draws.len().min(50)];
    sec.checks.push(timed(|| {
        let failures: Vec<Witness> = slice
            .par_iter()
            .filter_map(|(g, _, _, nu)| {
                let base = w.weyl_action(g, nu).ok()?;
                s_ball.iter().find_map(|x| {
                    let moved = w.weyl_action(&d.mul(x, g), nu).ok();
                    (moved.as_ref() != Some(&base)).then(|| Witness::new().element("g", g).element("s", x).value("nu", nu))
                })
            })
            .collect();
        let n = (slice.len() * s_ball.len()) as u64;
        CheckReport::new("rep-independence", Some(b)).with(Clause::from_witness("rep-independence", n, failures.into_iter().next()))
    }));

    sec.checks.push(timed(|| {
        let mut law = FirstFailure::default();
        let mut integrity = FirstFailure::default();
        let mut normal = FirstFailure::default();
        let mut identity = FirstFailure::default();
        let pairs: Vec<(GroupElement, GroupElement)> = (0..8)
            .map(|i| (s_ball[(i * 7919) % s_ball.len()].clone(), s_ball[(i * 104729 + 3) % s_ball.len()].clone()))
            .collect();
        let e = d.identity();
        for (g, h, k, nu) in &draws {
            let lhs = w.weyl_action(h, nu).and_then(|a| w.weyl_action(g, &a));
            let rhs = w.weyl_action(&d.mul(g, h), nu);
            if lhs.is_err() || lhs != rhs {
                law.record(|| Witness::new().element("g", g).element("h", h).value("nu", nu));
            }
            let ok = w.weyl_action(g, nu).is_ok_and(|out| {
                w.validate_character(&out).is_ok()
                    && pairs.iter().all(|(x, y)| {
                        let xy = w.action_formula_at(g, nu, &d.mul(x, y));
                        let sep = w.action_formula_at(g, nu, x).and_then(|a| Ok(a * w.action_formula_at(g, nu, y)?));
                        xy.is_ok() && xy == sep
                    })
            });
            if !ok {
                integrity.record(|| Witness::new().element("g", g).value("nu", nu));
            }
            let norm = w.weyl_cocycle(&e, h, nu).is_ok_and(|v| v.is_identity()) && w.weyl_cocycle(g, &e, nu).is_ok_and(|v| v.is_identity());
            if !norm {
                normal.record(|| Witness::new().element("g", g).element("h", h).value("nu", nu));
            }
            if !w.sigma_cocycle_identity_check(g, h, k, nu).unwrap_or(false) {
                identity.record(|| Witness::new().element("g", g).element("h", h).element("k", k).value("nu", nu));
            }
        }
        let n = draws.len() as u64;
        CheckReport::new("weyl-laws", Some(b))
            .with(law.clause("action-law", n))
            .with(integrity.clause("character-integrity", n))
            .with(normal.clause("sigma-normalization", n))
            .with(identity.clause("sigma-cocycle-identity", n))
    }));

    if let Some(form) = ClosedForm::detect(d, c, s) {
        sec.checks.push(timed(|| closed_form_check(&w, form, ball, opts.seed)));
    }
    sec.checks.push(timed(|| w.freeness_scan(ball, 20, opts.seed).to_check()));
    Ok((sec, rows))
}

/// Every class with a representative in the ball, against
/// [`CLOSED_FORM_CHARACTERS`] seeded characters each.
fn closed_form_check(w: &WeylContext, form: ClosedForm, ball: Ball, seed: u64) -> CheckReport {
    let d = w.group();
    let mut classes: Vec<GroupElement> = d.enumerate_ball(ball).map(|g| w.coset_rep(&g)).collect();
    classes.sort_by_key(|r| d.witness_key(r));
    classes.dedup();
    let mut rng = sampling::substream(seed, "closed-form");
    let jobs: Vec<(usize, Character)> = classes
        .iter()
        .enumerate()
        .flat_map(|(i, _)| (0..CLOSED_FORM_CHARACTERS).map(move |_| i))
        .map(|i| (i, w.random_character(&mut rng)))
        .collect();
    let results: Vec<(Option<Witness>, Option<Witness>)> = jobs
        .par_iter()
        .map(|(i, nu)| {
            let g = &classes[*i];
            let h = &classes[(i + 1 + nu.order() as usize) % classes.len()];
            let action = match w.weyl_action(g, nu) {
                Ok(a) if a == form.action(g, nu) => None,
                Ok(a) => Some(Witness::new().element("g", g).value("nu", nu).value("computed", &a).value("closed", form.action(g, nu))),
                Err(e) => Some(error_witness(&e).element("g", g).value("nu", nu)),
            };
            let sigma = match w.weyl_cocycle(g, h, nu) {
                Ok(v) if v == form.sigma(g, h, nu) => None,
                Ok(v) => Some(
                    Witness::new()
                        .element("g", g)
                        .element("h", h)
                        .value("nu", nu)
                        .value("computed", v)
                        .value("closed", form.sigma(g, h, nu)),
                ),
                Err(e) => Some(error_witness(&e).element("g", g).element("h", h).value("nu", nu)),
            };
            (action, sigma)
        })
        .collect();
    let n = jobs.len() as u64;
    let first = |pick: fn(&(Option<Witness>, Option<Witness>)) -> &Option<Witness>| results.iter().find_map(|r| pick(r).clone());
    CheckReport::new("closed-form", Some(ball.radius))
        .with(Clause::from_witness("action", n, first(|r| &r.0)).with_note(format!("{} classes x {} characters", classes.len(), CLOSED_FORM_CHARACTERS)))
        .with(Clause::from_witness("sigma", n, first(|r| &r.1)))
}

/// Table of the Weyl action and σ̃. Unless `force` is set the Cartan
/// hypotheses are checked first and a failure stops the command.
pub fn cmd_weyl(cfg: &WorkbenchConfig, subgroup: &str, force: bool) -> Result<Report, CommandError> {
    let opts = RunOptions::from_config(cfg);
    let s = cfg.subgroup(subgroup)?;
    let d = cfg.descriptor();
    let mut report = opts.report("weyl");
    // c must be trivial on S whatever the flags say
    WeylContext::new(d.clone(), cfg.cocycle.clone(), s.clone())?;
    if !force {
        let hyp = cartan_section(&format!("{subgroup}/hypotheses"), &d, &cfg.cocycle, s, &opts);
        let ok = hyp.verdict().is_pass();
        report.sections.push(hyp);
        if !ok {
            return Ok(report.finish_from_sections());
        }
    }
    let (sec, rows) = weyl_section(subgroup, &d, &cfg.cocycle, s, &opts)?;
    report.sections.push(sec);
    report.weyl_table = rows;
    Ok(report.finish_from_sections())
}

/// Closure of `seed` under conjugation by the generators of `S` and their
/// inverses.
pub fn conjugacy_orbit(d: &GroupDescriptor, s: &SubgroupDescriptor, seed: &GroupElement) -> Vec<GroupElement> {
    let gens: Vec<GroupElement> = s.generators(d).into_iter().flat_map(|g| [d.inverse(&g), g]).collect();
    let mut orbit = vec![seed.clone()];
    let mut frontier = vec![seed.clone()];
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = d.conjugate(g, &x);
            if !orbit.contains(&y) && orbit.len() < ORBIT_CAP {
                orbit.push(y.clone());
                frontier.push(y);
            }
        }
    }
    orbit.sort_by_key(|g| d.witness_key(g));
    orbit
}

/// `h = Σ δ_x` over the probe, or over the S-orbit of the smallest element
/// that is k-centralizing without being 1-centralizing.
pub fn counterexample_candidate(
    d: &GroupDescriptor,
    s: &SubgroupDescriptor,
    probe: Option<Vec<GroupElement>>,
    opts: &RunOptions,
) -> Option<Vec<GroupElement>> {
    probe.or_else(|| {
        let scan = immediately_centralizing_scan(s, d, opts.k_max, opts.ball());
        scan.witness.map(|w| conjugacy_orbit(d, s, &w.element))
    })
}

pub fn counterexample_section(
    scenario: &str,
    d: &GroupDescriptor,
    c: &CocycleDescriptor,
    s: &SubgroupDescriptor,
    support: Option<Vec<GroupElement>>,
    opts: &RunOptions,
) -> Section {
    let mut sec = Section::new(scenario);
    let Some(support) = support else {
        sec.checks.push(CheckRecord::skipped("commutant", Some(opts.ball + 1), "no candidate: no probe given and no immediately-centralizing failure"));
        return sec;
    };
    let alg = TwistedAlgebra::new(d.clone(), c.clone()).with_fault(opts.fault);
    let h = AlgebraElement::from_terms(support.iter().map(|g| (g.clone(), alg.one())));
    let scan_ball = Ball::new(opts.ball + 1);
    sec.checks.push(timed(|| {
        let scan = alg.commutant_scan(&h, s, scan_ball);
        let mut hw = Witness::new();
        for (i, g) in support.iter().enumerate() {
            hw = hw.element(&format!("h{i}"), g);
        }
        let w = scan
            .witness
            .as_ref()
            .map(|(x, comm)| hw.clone().element("s", x).value("commutator", format!("{comm:?}")));
        let cond = alg.cond_expect(&h, s);
        let outside = support.iter().find(|g| !s.contains(g));
        CheckReport::new("commutant", Some(scan_ball.radius))
            .with(Clause::from_witness("commutes-with-Cc(S)", scan.probes, w).with_note(format!("{} nonzero commutators", scan.nonzero)))
            .with(match outside {
                Some(g) => Clause::pass("support-outside-S", support.len() as u64).with_witness(hw.clone().element("outside", g)),
                None => Clause::fail("support-outside-S", support.len() as u64, hw.clone()).with_note("h is supported in S"),
            })
            .with(if cond.is_zero() {
                Clause::pass("cond-expect-zero", 1)
            } else {
                Clause::fail("cond-expect-zero", 1, Witness::new().value("E(h)", format!("{cond:?}")))
            })
    }));
    sec.checks.push(timed(|| {
        let ss = s.elements_in_ball(d, scan_ball);
        let bad: Vec<(GroupElement, GroupElement)> = ss
            .par_iter()
            .filter_map(|x| {
                alg.orbit_identity_probes(&h, x)
                    .into_iter()
                    .find(|nu| !alg.orbit_identity_check(&h, x, nu))
                    .map(|nu| (x.clone(), nu))
            })
            .collect();
        let w = bad
            .into_iter()
            .min_by_key(|(x, nu)| d.tuple_key(&[x, nu]))
            .map(|(x, nu)| Witness::new().element("s", &x).element("nu", &nu));
        CheckReport::new("orbit-identity", Some(scan_ball.radius)).with(Clause::from_witness("orbit-identity", ss.len() as u64, w))
    }));
    sec
}

/// Builds `h` and checks that it commutes with `C_c(S)` without lying in it.
pub fn cmd_counterexample(cfg: &WorkbenchConfig, subgroup: &str) -> Result<Report, CommandError> {
    let opts = RunOptions::from_config(cfg);
    let s = cfg.subgroup(subgroup)?;
    let d = cfg.descriptor();
    let support = counterexample_candidate(&d, s, cfg.probe_elements(), &opts);
    let mut report = opts.report("counterexample");
    report.sections.push(counterexample_section(subgroup, &d, &cfg.cocycle, s, support, &opts));
    Ok(report.finish_from_sections())
}

/// Overrides applied on top of the built-in configs by `reproduce`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReproduceOptions {
    pub ball: Option<u32>,
    pub k_max: Option<u32>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub fault: Option<AdjointFault>,
}

impl ReproduceOptions {
    fn apply(&self, cfg: &WorkbenchConfig) -> RunOptions {
        let mut o = RunOptions::from_config(cfg);
        o.ball = self.ball.unwrap_or(o.ball);
        o.k_max = self.k_max.unwrap_or(o.k_max);
        o.samples = self.samples.unwrap_or(o.samples);
        o.seed = self.seed.unwrap_or(o.seed);
        o.fault = self.fault.unwrap_or(o.fault);
        o
    }
}

/// Expected verdicts, keyed by scenario then check.
pub type ExpectedTable = BTreeMap<String, BTreeMap<String, Verdict>>;

pub fn expected_table() -> ExpectedTable {
    serde_json::from_str(builtins::EXPECTED_JSON).expect("expected-verdict fixture parses")
}

type Job<'a> = Box<dyn Fn() -> Vec<Section> + Send + Sync + 'a>;

/// Runs every built-in scenario and compares each verdict with the fixture.
pub fn cmd_reproduce(overrides: &ReproduceOptions) -> Report {
    let g5 = builtins::builtin("g5").expect("built-in");
    let tor = builtins::builtin("counterexample").expect("built-in");
    let rot = builtins::builtin("rotation").expect("built-in");
    let (og5, otor, orot) = (overrides.apply(&g5), overrides.apply(&tor), overrides.apply(&rot));
    let (dg5, dtor, drot) = (g5.descriptor(), tor.descriptor(), rot.descriptor());
    let tor_s = tor.subgroup("S").expect("built-in").clone();
    let rot_s = rot.subgroup("S").expect("built-in").clone();
    // the jobs below only borrow
    let (g5, tor, rot) = (&g5, &tor, &rot);
    let (dg5, dtor, drot) = (&dg5, &dtor, &drot);
    let (tor_s, rot_s) = (&tor_s, &rot_s);
    let (og5, otor, orot) = (&og5, &otor, &orot);

    let weyl = |name: &str, d: &GroupDescriptor, c: &CocycleDescriptor, s: &SubgroupDescriptor, o: &RunOptions| -> Vec<Section> {
        match weyl_section(name, d, c, s, o) {
            Ok((sec, _)) => vec![sec],
            Err(e) => {
                let mut sec = Section::new(name);
                sec.checks.push(CheckRecord::from_report(
                    CheckReport::new("weyl-table", Some(o.ball)).with(Clause::fail("construction", 1, error_witness(&e))),
                    Default::default(),
                ));
                vec![sec]
            }
        }
    };

    let mut jobs: Vec<Job> = vec![Box::new(move || {
        let mut sec = Section::new("kernel");
        sec.checks.push(timed(|| kernel_suite(og5.samples, og5.seed)));
        vec![sec]
    })];
    jobs.push(Box::new(move || vec![cartan_section("rotation", drot, &rot.cocycle, rot_s, orot)]));
    jobs.push(Box::new(move || weyl("rotation/weyl", drot, &rot.cocycle, rot_s, orot)));
    for name in ["S0", "S1", "S2"] {
        let s = g5.subgroup(name).expect("built-in");
        jobs.push(Box::new(move || vec![cartan_section(&format!("g5/{name}"), dg5, &g5.cocycle, s, og5)]));
        jobs.push(Box::new(move || weyl(&format!("g5/{name}/weyl"), dg5, &g5.cocycle, s, og5)));
    }
    jobs.push(Box::new(move || vec![cartan_section("counterexample/S", dtor, &tor.cocycle, tor_s, otor)]));
    jobs.push(Box::new(move || {
        let support = counterexample_candidate(dtor, tor_s, tor.probe_elements(), otor);
        vec![counterexample_section("counterexample/S/commutant", dtor, &tor.cocycle, tor_s, support, otor)]
    }));
    let equivalence_ball = Ball::new(2);
    jobs.push(Box::new(move || {
        let s1 = g5.subgroup("S1").expect("built-in");
        let mut a = Section::new("equivalences/g5");
        a.checks.push(timed(|| equivalence_chain_suite(&g5.cocycle, dg5, equivalence_ball)));
        a.checks.push(timed(|| eta_t_suite(&g5.cocycle, dg5, s1, equivalence_ball)));
        let mut b = Section::new("equivalences/counterexample");
        b.checks.push(timed(|| equivalence_chain_suite(&tor.cocycle, dtor, equivalence_ball)));
        b.checks.push(timed(|| eta_t_suite(&tor.cocycle, dtor, tor_s, equivalence_ball)));
        vec![a, b]
    }));
    let law = |name: &str, d: &GroupDescriptor, c: &CocycleDescriptor, s: &SubgroupDescriptor, o: &RunOptions| {
        let alg = TwistedAlgebra::new(d.clone(), c.clone()).with_fault(o.fault);
        let mut sec = Section::new(name);
        sec.checks.push(timed(|| algebra_law_suite(&alg, s, Ball::new(2), o.samples.max(200), o.seed)));
        vec![sec]
    };
    jobs.push(Box::new(move || law("algebra/g5", dg5, &g5.cocycle, g5.subgroup("S1").expect("built-in"), og5)));
    jobs.push(Box::new(move || law("algebra/counterexample", dtor, &tor.cocycle, tor_s, otor)));
    jobs.push(Box::new(move || law("algebra/rotation", drot, &rot.cocycle, rot_s, orot)));

    // independent scenarios run on the pool; assembly keeps the job order
    let sections: Vec<Section> = jobs.par_iter().map(|j| j()).collect::<Vec<_>>().into_iter().flatten().collect();

    let mut report = Report::new("reproduce", og5.seed, og5.ball, og5.k_max, og5.samples);
    report.sections = sections;
    report.expectations = compare(&report.sections, &expected_table());
    let all_met = report.mismatches().next().is_none();
    report.verdict = Verdict::from_bool(all_met);
    report
}

fn compare(sections: &[Section], table: &ExpectedTable) -> Vec<Expectation> {
    let mut out = Vec::new();
    for sec in sections {
        let expected = table.get(&sec.scenario);
        for c in &sec.checks {
            out.push(Expectation {
                scenario: sec.scenario.clone(),
                check: c.check.clone(),
                expected: expected.and_then(|e| e.get(&c.check)).copied(),
                actual: Some(c.verdict),
            });
        }
    }
    for (scenario, checks) in table {
        for (check, v) in checks {
            let seen = sections.iter().any(|s| &s.scenario == scenario && s.check(check).is_some());
            if !seen {
                out.push(Expectation {
                    scenario: scenario.clone(),
                    check: check.clone(),
                    expected: Some(*v),
                    actual: None,
                });
            }
        }
    }
    out
}
