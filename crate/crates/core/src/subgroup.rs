//! Box-form subgroups `S = k_1ℤ × … × k_nℤ` (a zero scaling forces the
//! coordinate to zero) and ball-relative scans for the hypotheses of the
//! Cartan theorem: closure, abelianness, normality, maximality and the
//! immediately-centralizing property.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::check::{CheckReport, Clause, Verdict, Witness};
use crate::cocycle::CocycleDescriptor;
use crate::error::SubgroupError;
use crate::group::{Ball, Component, GroupDescriptor, GroupElement};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubgroupDescriptor {
    scalings: Vec<u64>,
}

impl SubgroupDescriptor {
    pub fn new(d: &GroupDescriptor, scalings: Vec<u64>) -> Result<Self, SubgroupError> {
        let s = SubgroupDescriptor { scalings };
        s.structural_check(d)?;
        Ok(s)
    }

    /// Skips the checks against a group; used for built-ins and parsing.
    pub fn unchecked(scalings: Vec<u64>) -> Self {
        SubgroupDescriptor { scalings }
    }

    pub fn structural_check(&self, d: &GroupDescriptor) -> Result<(), SubgroupError> {
        if self.scalings.len() != d.rank() {
            return Err(SubgroupError::Arity {
                expected: d.rank(),
                got: self.scalings.len(),
            });
        }
        for (i, (&k, comp)) in self.scalings.iter().zip(d.components()).enumerate() {
            if let Component::Cyclic(m) = comp {
                if k != 0 && m % k != 0 {
                    return Err(SubgroupError::Divisibility {
                        component: i + 1,
                        scaling: k,
                        modulus: *m,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn scalings(&self) -> &[u64] {
        &self.scalings
    }

    /// 0-based indices of the components that are not forced to zero.
    pub fn free_components(&self) -> Vec<usize> {
        (0..self.scalings.len()).filter(|&i| self.scalings[i] != 0).collect()
    }

    /// Whether every scaling is 1, i.e. `S = G`.
    pub fn is_whole(&self) -> bool {
        self.scalings.iter().all(|&k| k == 1)
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        a.coords().iter().zip(&self.scalings).all(|(&x, &k)| match k {
            0 => x == 0,
            k => x.rem_euclid(k as i64) == 0,
        })
    }

    /// Generator coordinates `s_i / k_i`, one per free component.
    pub fn coordinates(&self, s: &GroupElement) -> Result<Vec<i64>, SubgroupError> {
        if !self.contains(s) {
            return Err(SubgroupError::NotMember(s.clone()));
        }
        Ok(self
            .free_components()
            .into_iter()
            .map(|i| s.coords()[i] / self.scalings[i] as i64)
            .collect())
    }

    /// `k_i` in slot `i`, for each free component.
    pub fn generators(&self, d: &GroupDescriptor) -> Vec<GroupElement> {
        self.free_components()
            .into_iter()
            .map(|i| {
                let mut v = vec![0i64; d.rank()];
                v[i] = self.scalings[i] as i64;
                d.elem(&v)
            })
            .collect()
    }

    /// Order of the image of generator `i` (0-based component index), if
    /// the component is torsion.
    pub fn generator_order(&self, d: &GroupDescriptor, i: usize) -> Option<u64> {
        d.components()[i].modulus().map(|m| m / self.scalings[i])
    }

    /// `S ∩ ball` in lexicographic order.
    pub fn elements_in_ball(&self, d: &GroupDescriptor, ball: Ball) -> Vec<GroupElement> {
        let r = ball.radius as i64;
        let axes: Vec<Vec<i64>> = self
            .scalings
            .iter()
            .zip(d.components())
            .map(|(&k, comp)| match (k, comp) {
                (0, _) => vec![0],
                (k, Component::Integer) => (-r..=r).filter(|x| x % k as i64 == 0).collect(),
                (k, Component::Cyclic(m)) => (0..*m as i64).step_by(k as usize).collect(),
            })
            .collect();
        let total: usize = axes.iter().map(Vec::len).product();
        let mut out = Vec::with_capacity(total);
        for mut idx in 0..total {
            let mut v = vec![0i64; axes.len()];
            for (i, axis) in axes.iter().enumerate().rev() {
                v[i] = axis[idx % axis.len()];
                idx /= axis.len();
            }
            out.push(d.elem(&v));
        }
        out
    }
}

/// Result of a pair scan over `S ∩ ball`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairScan {
    /// Smallest failing pair under [`GroupDescriptor::tuple_key`].
    pub failure: Option<(GroupElement, GroupElement)>,
    pub checked: u64,
}

/// Scans all pairs of `S ∩ ball` for `fails`, returning the smallest failing
/// pair.
///
/// The scan grows the radius from 1 and stops as soon as the best failure
/// found has total size at most the current radius: every pair with a
/// smaller key then lies inside the radius already scanned, so the witness
/// is the same one a full scan would report.
pub fn min_failing_pair<F>(d: &GroupDescriptor, s: &SubgroupDescriptor, ball: Ball, fails: F) -> PairScan
where
    F: Fn(&GroupElement, &GroupElement) -> bool + Sync,
{
    let mut radius = ball.radius.min(1);
    loop {
        let elems = s.elements_in_ball(d, Ball::new(radius));
        let best = elems
            .par_iter()
            .filter_map(|a| {
                elems
                    .iter()
                    .filter(|b| fails(a, b))
                    .map(|b| (d.tuple_key(&[a, b]), a.clone(), b.clone()))
                    .min_by(|x, y| x.0.cmp(&y.0))
            })
            .min_by(|x, y| x.0.cmp(&y.0));
        let checked = (elems.len() * elems.len()) as u64;
        let done = match &best {
            Some((key, _, _)) => key.0 <= radius as u64,
            None => false,
        };
        if done || radius >= ball.radius {
            return PairScan {
                failure: best.map(|(_, a, b)| (a, b)),
                checked,
            };
        }
        radius += 1;
    }
}

/// Closure, abelianness and coordinatewise multiplication on `S ∩ ball`.
pub fn validate_subgroup(s: &SubgroupDescriptor, d: &GroupDescriptor, ball: Ball) -> CheckReport {
    let mut report = CheckReport::new("validate-subgroup", Some(ball.radius));
    if let Err(e) = s.structural_check(d) {
        report.push(Clause::fail("structure", 1, Witness::new().value("error", &e)).with_note(e.to_string()));
        return report;
    }
    report.push(Clause::pass("structure", 1));

    let pair_clause = |name: &str, scan: PairScan| match scan.failure {
        None => Clause::pass(name, scan.checked),
        Some((a, b)) => Clause::fail(name, scan.checked, Witness::new().element("s", &a).element("t", &b)),
    };

    let closure = if s.is_whole() {
        Clause::pass("closure", 0).with_note("S = G")
    } else {
        pair_clause(
            "closure",
            min_failing_pair(d, s, ball, |a, b| !s.contains(&d.mul(a, b)) || !s.contains(&d.inverse(a))),
        )
    };
    report.push(closure);
    report.push(pair_clause("abelian", min_failing_pair(d, s, ball, |a, b| !d.commutes(a, b))));
    report.push(pair_clause(
        "coordinatewise",
        min_failing_pair(d, s, ball, |a, b| {
            let sum: Vec<i64> = a.coords().iter().zip(b.coords()).map(|(x, y)| x + y).collect();
            d.mul(a, b) != d.elem(&sum)
        }),
    ));
    report
}

/// Whether `g⁻¹ s g ∈ S` for every ball `g` and ball `s ∈ S`, with the
/// smallest `(g, s)` that escapes otherwise.
pub fn is_normal(s: &SubgroupDescriptor, d: &GroupDescriptor, ball: Ball) -> (bool, Option<(GroupElement, GroupElement)>) {
    if s.is_whole() {
        return (true, None);
    }
    let ss = s.elements_in_ball(d, ball);
    let bad = (0..d.ball_size(ball))
        .into_par_iter()
        .filter_map(|i| {
            let g = d.ball_element(ball, i);
            let gi = d.inverse(&g);
            ss.iter()
                .filter(|x| !s.contains(&d.mul(&d.mul(&gi, x), &g)))
                .map(|x| (d.tuple_key(&[&g, x]), g.clone(), x.clone()))
                .min_by(|a, b| a.0.cmp(&b.0))
        })
        .min_by(|a, b| a.0.cmp(&b.0))
        .map(|(_, g, x)| (g, x));
    (bad.is_none(), bad)
}

pub fn normality_report(s: &SubgroupDescriptor, d: &GroupDescriptor, ball: Ball) -> CheckReport {
    let (_, bad) = is_normal(s, d, ball);
    let checked = (d.ball_size(ball) * s.elements_in_ball(d, ball).len()) as u64;
    let w = bad.map(|(g, x)| {
        let conj = d.mul(&d.mul(&d.inverse(&g), &x), &g);
        Witness::new().element("g", &g).element("s", &x).element("g^-1 s g", &conj)
    });
    CheckReport::new("normal", Some(ball.radius)).with(Clause::from_witness("normal", checked, w))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "class")]
pub enum Centralizing {
    /// Commutes with every `t ∈ S ∩ ball`.
    OneCentralizing,
    /// `k`-centralizing with `k > 1` minimal, not 1-centralizing.
    KCentralizing { k: u32 },
    /// Not `k_max`-centralizing.
    NotCentralizing { k_max: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizingReport {
    pub element: GroupElement,
    pub class: Centralizing,
    /// The smallest `t` that does not commute with the element.
    pub witness_t: Option<GroupElement>,
    /// For `witness_t`, the least `j` with `ν t^j = t^j ν`, if one exists.
    pub exponent: Option<u32>,
}

impl CentralizingReport {
    /// Re-evaluates the witness: `t` must not commute with `ν`, and `t^j`
    /// must commute exactly when an exponent is reported.
    pub fn reverify(&self, d: &GroupDescriptor) -> bool {
        match &self.witness_t {
            None => self.class == Centralizing::OneCentralizing,
            Some(t) => {
                let nu = &self.element;
                let ok_t = !d.commutes(nu, t);
                match self.exponent {
                    Some(j) => ok_t && d.commutes(nu, &d.pow(t, j as i64)),
                    None => ok_t,
                }
            }
        }
    }
}

/// Powers `t^1..t^k_max` for every ball `t ∈ S`, sorted by witness key.
struct PowerTable {
    ts: Vec<GroupElement>,
    powers: Vec<Vec<GroupElement>>,
}

impl PowerTable {
    fn new(s: &SubgroupDescriptor, d: &GroupDescriptor, k_max: u32, ball: Ball) -> Self {
        let mut ts = s.elements_in_ball(d, ball);
        ts.sort_by_key(|t| d.witness_key(t));
        let powers = ts
            .iter()
            .map(|t| (1..=k_max as i64).map(|j| d.pow(t, j)).collect())
            .collect();
        PowerTable { ts, powers }
    }

    fn classify(&self, d: &GroupDescriptor, nu: &GroupElement, k_max: u32) -> CentralizingReport {
        let mut worst = 1u32;
        let mut witness = None;
        for (t, pw) in self.ts.iter().zip(&self.powers) {
            if d.commutes(nu, &pw[0]) {
                continue;
            }
            let j = pw.iter().position(|p| d.commutes(nu, p)).map(|j| j as u32 + 1);
            if witness.is_none() {
                witness = Some((t.clone(), j));
            }
            match j {
                Some(j) => worst = worst.max(j),
                None => {
                    // a t with no good exponent decides the class
                    return CentralizingReport {
                        element: nu.clone(),
                        class: Centralizing::NotCentralizing { k_max },
                        witness_t: Some(t.clone()),
                        exponent: None,
                    };
                }
            }
        }
        let class = if worst == 1 {
            Centralizing::OneCentralizing
        } else {
            Centralizing::KCentralizing { k: worst }
        };
        let (witness_t, exponent) = match witness {
            Some((t, j)) => (Some(t), j),
            None => (None, None),
        };
        CentralizingReport {
            element: nu.clone(),
            class,
            witness_t,
            exponent,
        }
    }
}

/// Classifies `ν` against `S ∩ ball` and exponents up to `k_max`.
pub fn centralizing_class(
    s: &SubgroupDescriptor,
    d: &GroupDescriptor,
    nu: &GroupElement,
    k_max: u32,
    ball: Ball,
) -> CentralizingReport {
    PowerTable::new(s, d, k_max, ball).classify(d, nu, k_max)
}

/// Outcome of the unique-root scan: `g^j = h^j` with `g ≠ h` in the ball.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootCollision {
    pub g: GroupElement,
    pub h: GroupElement,
    pub j: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImmediateReport {
    pub ball_radius: u32,
    pub k_max: u32,
    pub checked: u64,
    /// Number of ball elements that are k-centralizing but not 1-centralizing.
    pub failures: u64,
    /// The smallest such element, fully classified.
    pub witness: Option<CentralizingReport>,
    /// `None` when the unique-root property holds on the ball.
    pub root_collision: Option<RootCollision>,
}

impl ImmediateReport {
    pub fn verdict(&self) -> Verdict {
        Verdict::from_bool(self.failures == 0)
    }

    pub fn unique_root_on_ball(&self) -> bool {
        self.root_collision.is_none()
    }

    pub fn to_check(&self) -> CheckReport {
        let mut direct = match &self.witness {
            None => Clause::pass("immediately-centralizing", self.checked),
            Some(w) => {
                let mut wit = Witness::new().element("nu", &w.element);
                if let Some(t) = &w.witness_t {
                    wit = wit.element("t", t);
                }
                if let Some(j) = w.exponent {
                    wit = wit.value("j", j);
                }
                if let Centralizing::KCentralizing { k } = w.class {
                    wit = wit.value("k", k);
                }
                Clause::fail("immediately-centralizing", self.checked, wit)
                    .with_note(format!("{} ball elements are k-centralizing but not 1-centralizing", self.failures))
            }
        };
        if self.failures == 0 && self.unique_root_on_ball() {
            direct = direct.with_note("unique-root-on-ball");
        }
        let root = match &self.root_collision {
            None => Clause::pass("unique-root", self.checked).with_note("unique-root-on-ball"),
            Some(rc) => Clause::pass("unique-root", self.checked)
                .with_note(format!("fast path unavailable: g^{} = h^{}", rc.j, rc.j))
                .with_witness(Witness::new().element("g", &rc.g).element("h", &rc.h).value("j", rc.j)),
        };
        CheckReport::new("immediately-centralizing", Some(self.ball_radius))
            .with(direct)
            .with(root)
    }
}

/// Looks for `g ≠ h` in the ball with `g^j = h^j`, smallest `j` first.
pub fn unique_root_scan(d: &GroupDescriptor, k_max: u32, ball: Ball) -> Option<RootCollision> {
    let elems = d.ball_elements(ball);
    for j in 2..=k_max {
        let mut seen: HashMap<GroupElement, &GroupElement> = HashMap::with_capacity(elems.len());
        for g in &elems {
            let p = d.pow(g, j as i64);
            if let Some(h) = seen.insert(p, g) {
                return Some(RootCollision {
                    g: h.clone(),
                    h: g.clone(),
                    j,
                });
            }
        }
    }
    None
}

/// Every ball element that is k-centralizing for some `k ≤ k_max` must be
/// 1-centralizing. Runs the direct scan and the unique-root scan.
pub fn immediately_centralizing_scan(s: &SubgroupDescriptor, d: &GroupDescriptor, k_max: u32, ball: Ball) -> ImmediateReport {
    let table = PowerTable::new(s, d, k_max, ball);
    let n = d.ball_size(ball);
    let bad: Vec<CentralizingReport> = (0..n)
        .into_par_iter()
        .filter_map(|i| {
            let nu = d.ball_element(ball, i);
            let r = table.classify(d, &nu, k_max);
            matches!(r.class, Centralizing::KCentralizing { .. }).then_some(r)
        })
        .collect();
    let witness = bad.iter().min_by_key(|r| d.witness_key(&r.element)).cloned();
    ImmediateReport {
        ball_radius: ball.radius,
        k_max,
        checked: n as u64,
        failures: bad.len() as u64,
        witness,
        root_collision: unique_root_scan(d, k_max, ball),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MaxReason {
    NotCommuting,
    Asymmetric,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalityWitness {
    pub eta: GroupElement,
    pub s: GroupElement,
    pub reason: MaxReason,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalityReport {
    pub ball_radius: u32,
    pub checked: u64,
    /// Witness for the smallest ball element outside `S`.
    pub example: Option<MaximalityWitness>,
    /// Elements outside `S` with no witness in the ball.
    pub missing: Vec<GroupElement>,
}

impl MaximalityReport {
    pub fn verdict(&self) -> Verdict {
        if self.missing.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Inconclusive
        }
    }

    pub fn to_check(&self) -> CheckReport {
        let clause = match self.missing.first() {
            None => {
                let c = Clause::pass("maximal", self.checked).with_note("maximal-on-ball");
                match &self.example {
                    Some(w) => c.with_witness(
                        Witness::new()
                            .element("eta", &w.eta)
                            .element("s", &w.s)
                            .value("reason", serde_plain(&w.reason)),
                    ),
                    None => c,
                }
            }
            Some(eta) => Clause {
                name: "maximal".into(),
                verdict: Verdict::Inconclusive,
                checked: self.checked,
                witness: Some(Witness::new().element("eta", eta)),
                note: Some(format!("{} elements outside S have no witness in the ball", self.missing.len())),
            },
        };
        CheckReport::new("maximal", Some(self.ball_radius)).with(clause)
    }
}

fn serde_plain(r: &MaxReason) -> &'static str {
    match r {
        MaxReason::NotCommuting => "not-commuting",
        MaxReason::Asymmetric => "asymmetric",
    }
}

/// The smallest `s ∈ S ∩ ball` that stops `η` from being adjoined to `S`.
pub fn maximality_witness(
    s_grp: &SubgroupDescriptor,
    d: &GroupDescriptor,
    c: &CocycleDescriptor,
    eta: &GroupElement,
    ball: Ball,
) -> Option<MaximalityWitness> {
    let mut ss = s_grp.elements_in_ball(d, ball);
    ss.sort_by_key(|t| d.witness_key(t));
    first_witness(&ss, d, c, eta)
}

fn first_witness(sorted: &[GroupElement], d: &GroupDescriptor, c: &CocycleDescriptor, eta: &GroupElement) -> Option<MaximalityWitness> {
    sorted.iter().find_map(|s| {
        let reason = if !d.commutes(eta, s) {
            MaxReason::NotCommuting
        } else if c.eval(s, eta) != c.eval(eta, s) {
            MaxReason::Asymmetric
        } else {
            return None;
        };
        Some(MaximalityWitness {
            eta: eta.clone(),
            s: s.clone(),
            reason,
        })
    })
}

/// For every ball `η ∉ S`, finds `s ∈ S ∩ ball` with `ηs ≠ sη` or
/// `c(s,η) ≠ c(η,s)`.
pub fn maximality_scan(s_grp: &SubgroupDescriptor, d: &GroupDescriptor, c: &CocycleDescriptor, ball: Ball) -> MaximalityReport {
    let mut ss = s_grp.elements_in_ball(d, ball);
    ss.sort_by_key(|t| d.witness_key(t));
    let n = d.ball_size(ball);
    let results: Vec<(GroupElement, Option<MaximalityWitness>)> = (0..n)
        .into_par_iter()
        .filter_map(|i| {
            let eta = d.ball_element(ball, i);
            (!s_grp.contains(&eta)).then(|| {
                let w = first_witness(&ss, d, c, &eta);
                (eta, w)
            })
        })
        .collect();
    let checked = results.len() as u64;
    let example = results
        .iter()
        .filter_map(|(_, w)| w.as_ref())
        .min_by_key(|w| d.witness_key(&w.eta))
        .cloned();
    let mut missing: Vec<GroupElement> = results.into_iter().filter(|(_, w)| w.is_none()).map(|(e, _)| e).collect();
    missing.sort_by_key(|e| d.witness_key(e));
    MaximalityReport {
        ball_radius: ball.radius,
        checked,
        example,
        missing,
    }
}
