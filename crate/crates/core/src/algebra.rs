//! The twisted convolution *-algebra `C_c(G, c)` with exact cyclotomic
//! coefficients.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::check::{CheckReport, Clause, Witness};
use crate::cocycle::CocycleDescriptor;
use crate::group::{Ball, GroupDescriptor, GroupElement};
use crate::sampling;
use crate::scalars::{CircleElement, Cyclotomic, CyclotomicField};
use crate::subgroup::SubgroupDescriptor;

/// A finitely supported function `G → Q(ζ_N)`. Zero coefficients are never
/// stored.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct AlgebraElement {
    terms: BTreeMap<GroupElement, Cyclotomic>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (GroupElement, Cyclotomic)>>(terms: I) -> Self {
        let mut f = Self::zero();
        for (g, a) in terms {
            f.add_term(g, a);
        }
        f
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElement> {
        self.terms.keys()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient at `g`; `None` stands for zero.
    pub fn coeff(&self, g: &GroupElement) -> Option<&Cyclotomic> {
        self.terms.get(g)
    }

    pub fn add_term(&mut self, g: GroupElement, a: Cyclotomic) {
        if a.is_zero() {
            return;
        }
        match self.terms.remove(&g) {
            None => {
                self.terms.insert(g, a);
            }
            Some(b) => {
                let s = &a + &b;
                if !s.is_zero() {
                    self.terms.insert(g, s);
                }
            }
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (g, a) in &other.terms {
            out.add_term(g.clone(), a.clone());
        }
        out
    }

    pub fn scale(&self, z: &Cyclotomic) -> AlgebraElement {
        AlgebraElement::from_terms(self.terms.iter().map(|(g, a)| (g.clone(), z * a)))
    }

    pub fn neg(&self) -> AlgebraElement {
        AlgebraElement {
            terms: self.terms.iter().map(|(g, a)| (g.clone(), -a)).collect(),
        }
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.neg())
    }

    pub fn is_supported_in(&self, s: &SubgroupDescriptor) -> bool {
        self.terms.keys().all(|g| s.contains(g))
    }
}

impl std::fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (g, a) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({a})δ{g:?}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    element: GroupElement,
    coeff: Cyclotomic,
}

impl Serialize for AlgebraElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let v: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(g, a)| TermRepr {
                element: g.clone(),
                coeff: a.clone(),
            })
            .collect();
        v.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AlgebraElement {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = Vec::<TermRepr>::deserialize(deserializer)?;
        Ok(AlgebraElement::from_terms(v.into_iter().map(|t| (t.element, t.coeff))))
    }
}

/// Deliberate defects for negative-control runs.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AdjointFault {
    #[default]
    None,
    /// The coefficient keeps its angle instead of having it negated, i.e.
    /// complex conjugation of the coefficient is dropped.
    CoefficientAngleSign,
}

/// Group, cocycle and coefficient field of one convolution algebra.
#[derive(Debug, Clone)]
pub struct TwistedAlgebra {
    group: GroupDescriptor,
    cocycle: CocycleDescriptor,
    field: Arc<CyclotomicField>,
    fault: AdjointFault,
}

impl TwistedAlgebra {
    /// Uses the conductor `lcm(order of c, 4)`, which admits `ζ_4` test
    /// coefficients.
    pub fn new(group: GroupDescriptor, cocycle: CocycleDescriptor) -> Self {
        let n = num_integer::lcm(cocycle.order(), 4);
        Self::with_conductor(group, cocycle, n)
    }

    /// Panics if the conductor is not a multiple of the cocycle's order.
    pub fn with_conductor(group: GroupDescriptor, cocycle: CocycleDescriptor, conductor: u64) -> Self {
        assert!(conductor.is_multiple_of(cocycle.order()), "conductor {conductor} cannot hold the cocycle values");
        TwistedAlgebra {
            group,
            cocycle,
            field: CyclotomicField::new(conductor),
            fault: AdjointFault::None,
        }
    }

    #[doc(hidden)]
    pub fn with_fault(mut self, fault: AdjointFault) -> Self {
        self.fault = fault;
        self
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn cocycle(&self) -> &CocycleDescriptor {
        &self.cocycle
    }

    pub fn conductor(&self) -> u64 {
        self.field.conductor()
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// A root of unity as a coefficient of this algebra.
    pub fn scalar(&self, a: CircleElement) -> Cyclotomic {
        Cyclotomic::from_circle_in(&self.field, a).expect("angle fits the session conductor")
    }

    pub fn one(&self) -> Cyclotomic {
        Cyclotomic::one_in(&self.field)
    }

    pub fn delta(&self, g: &GroupElement) -> AlgebraElement {
        AlgebraElement::from_terms([(g.clone(), self.one())])
    }

    pub fn unit(&self) -> AlgebraElement {
        self.delta(&self.group.identity())
    }

    /// Evaluation as a function on `G`: absent elements give zero.
    pub fn eval(&self, f: &AlgebraElement, g: &GroupElement) -> Cyclotomic {
        f.coeff(g).cloned().unwrap_or_else(|| Cyclotomic::zero_in(&self.field))
    }

    /// `f * h = Σ f(α) h(β) c(α, β) δ_{αβ}`.
    pub fn convolve(&self, f: &AlgebraElement, h: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (a, x) in &f.terms {
            for (b, y) in &h.terms {
                let coeff = &(x * y) * &self.scalar(self.cocycle.eval(a, b));
                out.add_term(self.group.mul(a, b), coeff);
            }
        }
        out
    }

    /// `f*(γ) = conj(f(γ⁻¹) c(γ, γ⁻¹))`: the term `a·δ_g` goes to
    /// `conj(a·c(g⁻¹, g))·δ_{g⁻¹}`.
    pub fn adjoint(&self, f: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::from_terms(f.terms.iter().map(|(g, a)| {
            let gi = self.group.inverse(g);
            let c = self.scalar(self.cocycle.eval(&gi, g)).conj();
            let a = match self.fault {
                AdjointFault::None => a.conj(),
                AdjointFault::CoefficientAngleSign => a.clone(),
            };
            (gi, &a * &c)
        }))
    }

    /// `δ_g * f * δ_g*` by convolution.
    pub fn conj_by_delta(&self, g: &GroupElement, f: &AlgebraElement) -> AlgebraElement {
        let d = self.delta(g);
        self.convolve(&self.convolve(&d, f), &self.adjoint(&d))
    }

    /// `δ_g δ_s δ_g* = conj(c(g,g⁻¹)) c(s,g⁻¹) c(g,sg⁻¹) δ_{gsg⁻¹}`.
    pub fn closed_form_delta_conj(&self, g: &GroupElement, s: &GroupElement) -> (CircleElement, GroupElement) {
        let d = &self.group;
        let c = &self.cocycle;
        let gi = d.inverse(g);
        let sgi = d.mul(s, &gi);
        let lambda = c.eval(g, &gi).conj() * c.eval(s, &gi) * c.eval(g, &sgi);
        (lambda, d.mul(g, &sgi))
    }

    /// The conditional expectation onto `C_c(S)`: restriction to `S`.
    pub fn cond_expect(&self, f: &AlgebraElement, s: &SubgroupDescriptor) -> AlgebraElement {
        AlgebraElement {
            terms: f
                .terms
                .iter()
                .filter(|(g, _)| s.contains(g))
                .map(|(g, a)| (g.clone(), a.clone()))
                .collect(),
        }
    }

    /// `(Φ(f* f)(e), Σ |f(γ)|², equal)`.
    pub fn faithfulness_identity(&self, f: &AlgebraElement, s: &SubgroupDescriptor) -> (Cyclotomic, Cyclotomic, bool) {
        let lhs = self.eval(&self.cond_expect(&self.convolve(&self.adjoint(f), f), s), &self.group.identity());
        let rhs = f
            .terms
            .values()
            .fold(Cyclotomic::zero_in(&self.field), |acc, a| &acc + &a.norm_sq());
        let eq = lhs == rhs;
        (lhs, rhs, eq)
    }

    /// `h(ν) c(s,ν) = h(sνs⁻¹) c(sνs⁻¹, s)`.
    pub fn orbit_identity_check(&self, h: &AlgebraElement, s: &GroupElement, nu: &GroupElement) -> bool {
        let d = &self.group;
        let c = &self.cocycle;
        let conj = d.conjugate(s, nu);
        let lhs = &self.eval(h, nu) * &self.scalar(c.eval(s, nu));
        let rhs = &self.eval(h, &conj) * &self.scalar(c.eval(&conj, s));
        lhs == rhs
    }

    /// Probes for the orbit identity at `s`: the support of `h` and its preimages
    /// under conjugation by `s`. Any other `ν` gives `0 = 0`.
    pub fn orbit_identity_probes(&self, h: &AlgebraElement, s: &GroupElement) -> Vec<GroupElement> {
        let d = &self.group;
        let si = d.inverse(s);
        let mut v: Vec<GroupElement> = h.support().cloned().collect();
        v.extend(h.support().map(|x| d.conjugate(&si, x)));
        v.sort();
        v.dedup();
        v
    }

    /// `h δ_s − δ_s h` for every ball `s ∈ S`.
    pub fn commutant_scan(&self, h: &AlgebraElement, s: &SubgroupDescriptor, ball: Ball) -> CommutantReport {
        let probes = s.elements_in_ball(&self.group, ball);
        let results: Vec<(GroupElement, AlgebraElement)> = probes
            .par_iter()
            .map(|x| {
                let dx = self.delta(x);
                (x.clone(), self.convolve(h, &dx).sub(&self.convolve(&dx, h)))
            })
            .collect();
        let max_support = results.iter().map(|(_, c)| c.len()).max().unwrap_or(0);
        let nonzero = results.iter().filter(|(_, c)| !c.is_zero()).count() as u64;
        let witness = results
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .min_by_key(|(x, _)| self.group.witness_key(x));
        CommutantReport {
            ball_radius: ball.radius,
            probes: probes.len() as u64,
            nonzero,
            max_support,
            witness,
        }
    }

    /// Random element with support of size 1..=`max_support` in `pool`,
    /// coefficients from `{1, ζ_4, −1}`.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, pool: &[GroupElement], max_support: usize) -> AlgebraElement {
        let coeffs = [CircleElement::IDENTITY, CircleElement::new(1, 4), CircleElement::MINUS_ONE];
        let n = rng.gen_range(1..=max_support);
        AlgebraElement::from_terms((0..n).map(|_| {
            let g = pool[rng.gen_range(0..pool.len())].clone();
            (g, self.scalar(coeffs[rng.gen_range(0..3)]))
        }))
    }

    /// `f * g = g * f` for seeded random pairs supported in `S ∩ ball`.
    pub fn abelian_on_s_check(&self, s: &SubgroupDescriptor, ball: Ball, samples: usize, seed: u64) -> CheckReport {
        let pool = s.elements_in_ball(&self.group, ball);
        let mut rng = sampling::substream(seed, "abelian-on-S");
        let mut bad = None;
        for _ in 0..samples {
            let f = self.random_element(&mut rng, &pool, 3);
            let g = self.random_element(&mut rng, &pool, 3);
            if self.convolve(&f, &g) != self.convolve(&g, &f) {
                bad = Some((f, g));
                break;
            }
        }
        // a failing random pair is reduced to a pair of deltas when one exists
        let w = bad.map(|(f, g)| {
            let pair = f
                .support()
                .flat_map(|a| g.support().map(move |b| (a, b)))
                .find(|(a, b)| {
                    let (da, db) = (self.delta(a), self.delta(b));
                    self.convolve(&da, &db) != self.convolve(&db, &da)
                });
            match pair {
                Some((a, b)) => Witness::new().element("f", a).element("g", b),
                None => Witness::new().value("f", format!("{f:?}")).value("g", format!("{g:?}")),
            }
        });
        CheckReport::new("abelian-on-S", Some(ball.radius)).with(Clause::from_witness("abelian-on-S", samples as u64, w))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutantReport {
    pub ball_radius: u32,
    pub probes: u64,
    /// Number of probes with a nonzero commutator.
    pub nonzero: u64,
    /// Largest commutator support seen.
    pub max_support: usize,
    /// Smallest probe with a nonzero commutator, and that commutator.
    pub witness: Option<(GroupElement, AlgebraElement)>,
}

impl CommutantReport {
    pub fn commutes(&self) -> bool {
        self.nonzero == 0
    }
}

/// Seeded law suite: associativity, anti-multiplicativity, involution,
/// unit, the delta product rule, the delta-conjugation closed form, the
/// bimodule law of the conditional expectation and the faithfulness
/// identity.
pub fn algebra_law_suite(alg: &TwistedAlgebra, s: &SubgroupDescriptor, ball: Ball, samples: usize, seed: u64) -> CheckReport {
    let d = alg.group();
    let pool = d.ball_elements(ball);
    let s_pool = s.elements_in_ball(d, ball);
    let mut rng = sampling::substream(seed, "algebra-laws");
    let mut report = CheckReport::new("algebra-laws", Some(ball.radius));
    let n = samples as u64;

    let triples: Vec<_> = (0..samples)
        .map(|_| {
            (
                alg.random_element(&mut rng, &pool, 3),
                alg.random_element(&mut rng, &pool, 3),
                alg.random_element(&mut rng, &pool, 3),
            )
        })
        .collect();
    let fmt = |x: &AlgebraElement| format!("{x:?}");

    let assoc = triples.iter().find_map(|(f, g, h)| {
        let l = alg.convolve(&alg.convolve(f, g), h);
        let r = alg.convolve(f, &alg.convolve(g, h));
        (l != r).then(|| Witness::new().value("f", fmt(f)).value("g", fmt(g)).value("h", fmt(h)))
    });
    report.push(Clause::from_witness("associativity", n, assoc));

    let anti = triples.iter().find_map(|(f, g, _)| {
        let l = alg.adjoint(&alg.convolve(f, g));
        let r = alg.convolve(&alg.adjoint(g), &alg.adjoint(f));
        (l != r).then(|| Witness::new().value("f", fmt(f)).value("g", fmt(g)))
    });
    report.push(Clause::from_witness("adjoint-anti-multiplicative", n, anti));

    let invol = triples.iter().find_map(|(f, _, _)| {
        let ff = alg.adjoint(&alg.adjoint(f));
        (&ff != f).then(|| Witness::new().value("f", fmt(f)).value("f**", fmt(&ff)))
    });
    report.push(Clause::from_witness("adjoint-involution", n, invol));

    let e = alg.unit();
    let unit = triples.iter().find_map(|(f, _, _)| {
        (alg.convolve(&e, f) != *f || alg.convolve(f, &e) != *f).then(|| Witness::new().value("f", fmt(f)))
    });
    report.push(Clause::from_witness("unit", n, unit));

    let mut pair_rng = sampling::substream(seed, "delta-pairs");
    let pairs: Vec<(GroupElement, GroupElement)> = (0..samples)
        .map(|_| (d.random_element(ball, &mut pair_rng), d.random_element(ball, &mut pair_rng)))
        .collect();
    let rule = pairs.iter().find_map(|(g, h)| {
        let l = alg.convolve(&alg.delta(g), &alg.delta(h));
        let r = alg.delta(&d.mul(g, h)).scale(&alg.scalar(alg.cocycle().eval(g, h)));
        (l != r).then(|| Witness::new().element("g", g).element("h", h))
    });
    report.push(Clause::from_witness("delta-product", n, rule));

    let conj = pairs.iter().find_map(|(g, s)| {
        let (lambda, x) = alg.closed_form_delta_conj(g, s);
        let closed = alg.delta(&x).scale(&alg.scalar(lambda));
        let conv = alg.conj_by_delta(g, &alg.delta(s));
        (closed != conv).then(|| Witness::new().element("g", g).element("s", s).value("closed-scalar", lambda))
    });
    report.push(Clause::from_witness("delta-conjugation", n, conj));

    let bimod = if s_pool.is_empty() {
        None
    } else {
        triples.iter().find_map(|(f, _, _)| {
            let b = alg.random_element(&mut rng, &s_pool, 3);
            let b2 = alg.random_element(&mut rng, &s_pool, 3);
            let l = alg.cond_expect(&alg.convolve(&alg.convolve(&b, f), &b2), s);
            let r = alg.convolve(&alg.convolve(&b, &alg.cond_expect(f, s)), &b2);
            (l != r).then(|| Witness::new().value("b", fmt(&b)).value("f", fmt(f)).value("b'", fmt(&b2)))
        })
    };
    report.push(Clause::from_witness("expectation-bimodule", n, bimod));

    let faith = triples.iter().find_map(|(f, _, _)| {
        let (l, r, ok) = alg.faithfulness_identity(f, s);
        (!ok).then(|| Witness::new().value("f", fmt(f)).value("phi(f*f)(e)", l).value("sum |f|^2", r))
    });
    report.push(Clause::from_witness("faithfulness", n, faith));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::check::Verdict;

    fn z5() -> TwistedAlgebra {
        TwistedAlgebra::new(catalog::z5_group(), catalog::z5_cocycle())
    }

    fn t7() -> TwistedAlgebra {
        TwistedAlgebra::new(catalog::torsion_group(), catalog::torsion_cocycle())
    }

    #[test]
    fn linear_structure() {
        let a = z5();
        let d = a.group();
        let f = a.delta(&d.elem(&[1, 0, 0, 0, 0])).add(&a.delta(&d.elem(&[0, 2, 0, 0, 0])));
        assert!(f.add(&f.scale(&Cyclotomic::from_integer(-1, 4))).is_zero());
        assert_eq!(a.convolve(&a.unit(), &f), f);
    }

    #[test]
    fn convolution_examples() {
        let a = z5();
        let d = a.group();
        let p = a.convolve(&a.delta(&d.elem(&[0, 0, 0, 1, 0])), &a.delta(&d.elem(&[1, 0, 0, 0, 0])));
        assert_eq!(p, a.delta(&d.elem(&[1, 0, 0, 1, 0])).neg());
        let f = a.delta(&d.elem(&[2, 1, 0, 3, 1])).scale(&Cyclotomic::zeta(4));
        assert_eq!(a.convolve(&f, &a.unit()), f);
    }

    #[test]
    fn adjoint_examples() {
        let a = z5();
        let d = a.group();
        let g = d.elem(&[1, 1, 1, 1, 1]);
        let gi = d.inverse(&g);
        let expected = a.delta(&gi).scale(&a.scalar(a.cocycle().eval(&g, &gi).conj()));
        assert_eq!(a.adjoint(&a.delta(&g)), expected);

        let b = t7();
        let t = b.group();
        let (nu, mu) = (t.elem(&[0, 0, 0, 0, 1]), t.elem(&[2, 0, 0, 0, 1]));
        let h = b.delta(&nu).add(&b.delta(&mu));
        let expected = b.delta(&t.inverse(&nu)).add(&b.delta(&t.inverse(&mu)));
        assert_eq!(b.adjoint(&h), expected);
    }

    #[test]
    fn delta_conjugation_examples() {
        let a = z5();
        let d = a.group();
        let (g, s) = (d.elem(&[0, 0, 0, 0, 1]), d.elem(&[1, 0, 0, 0, 0]));
        assert_eq!(a.closed_form_delta_conj(&g, &s), (CircleElement::IDENTITY, s.clone()));
        assert_eq!(a.conj_by_delta(&g, &a.delta(&s)), a.delta(&s));
        assert_eq!(a.closed_form_delta_conj(&d.identity(), &s), (CircleElement::IDENTITY, s.clone()));

        let b = t7();
        let t = b.group();
        let (g, s) = (t.elem(&[0, 0, 0, 0, 1]), t.elem(&[0, 0, 1, 0, 0]));
        let x = t.elem(&[2, 0, 1, 0, 0]);
        assert_eq!(b.closed_form_delta_conj(&g, &s), (CircleElement::IDENTITY, x.clone()));
        assert_eq!(b.conj_by_delta(&g, &b.delta(&s)), b.delta(&x));
    }

    #[test]
    fn expectation_examples() {
        let b = t7();
        let t = b.group();
        let s = catalog::torsion_s();
        let h = b.delta(&t.elem(&[0, 0, 0, 0, 1])).add(&b.delta(&t.elem(&[2, 0, 0, 0, 1])));
        assert!(b.cond_expect(&h, &s).is_zero());
        let inside = b.delta(&t.elem(&[1, 2, 3, 2, 2]));
        assert_eq!(b.cond_expect(&inside, &s), inside);
        let a = z5();
        assert!(a.cond_expect(&a.delta(&a.group().elem(&[0, 0, 0, 1, 0])), &catalog::s1()).is_zero());
    }

    #[test]
    fn faithfulness_examples() {
        let a = z5();
        let d = a.group();
        let s = catalog::s1();
        let g = d.elem(&[0, 0, 1, 0, 1]);
        let (l, r, ok) = a.faithfulness_identity(&a.delta(&g), &s);
        assert!(ok && l.is_one() && r.is_one());
        let f = a.delta(&g).add(&a.delta(&d.elem(&[1, 0, 0, 1, 0])).scale(&Cyclotomic::zeta(4)));
        let (l, r, ok) = a.faithfulness_identity(&f, &s);
        assert!(ok);
        assert_eq!(l, Cyclotomic::from_integer(2, 4));
        assert_eq!(r, Cyclotomic::from_integer(2, 4));
        let (l, _, ok) = a.faithfulness_identity(&AlgebraElement::zero(), &s);
        assert!(ok && l.is_zero());
    }

    #[test]
    fn commutant_examples() {
        let b = t7();
        let t = b.group();
        let s = catalog::torsion_s();
        let h = b.delta(&t.elem(&[0, 0, 0, 0, 1])).add(&b.delta(&t.elem(&[2, 0, 0, 0, 1])));
        let r = b.commutant_scan(&h, &s, Ball::new(4));
        assert!(r.commutes(), "{r:?}");
        let s0 = b.delta(&t.elem(&[1, 1, 1, 2, 2]));
        assert!(b.commutant_scan(&s0, &s, Ball::new(2)).commutes());

        // (0,0,0,0,1) lies in S0, so its delta commutes with C_c(S0)
        let a = z5();
        let d = a.group();
        let r = a.commutant_scan(&a.delta(&d.elem(&[0, 0, 0, 0, 1])), &catalog::s0(), Ball::new(2));
        assert!(r.commutes());
        let nu = d.elem(&[0, 0, 1, 0, 0]);
        let r = a.commutant_scan(&a.delta(&nu), &catalog::s0(), Ball::new(2));
        assert!(!r.commutes());
        let (x, comm) = r.witness.unwrap();
        assert_eq!(x, d.elem(&[0, 0, 0, 0, 1]));
        // independent check of both orders
        assert_ne!(d.mul(&nu, &x), d.mul(&x, &nu));
        assert_eq!(comm, a.delta(&d.mul(&nu, &x)).sub(&a.delta(&d.mul(&x, &nu))));
    }

    #[test]
    fn orbit_identity_examples() {
        let b = t7();
        let t = b.group();
        let (nu, mu) = (t.elem(&[0, 0, 0, 0, 1]), t.elem(&[2, 0, 0, 0, 1]));
        let h = b.delta(&nu).add(&b.delta(&mu));
        for s in catalog::torsion_s().elements_in_ball(t, Ball::new(2)) {
            assert!(b.orbit_identity_check(&h, &s, &nu));
            for probe in b.orbit_identity_probes(&h, &s) {
                assert!(b.orbit_identity_check(&h, &s, &probe));
            }
        }
        let a = z5();
        let d = a.group();
        assert!(a.orbit_identity_check(&a.unit(), &d.elem(&[1, 2, 3, 4, 5]), &d.identity()));
        let g = d.elem(&[0, 0, 1, 0, 0]);
        let s = d.elem(&[0, 0, 0, 0, 1]);
        assert!(!a.orbit_identity_check(&a.delta(&g), &s, &g));
    }

    #[test]
    fn abelian_on_s_examples() {
        let a = z5();
        assert_eq!(a.abelian_on_s_check(&catalog::s1(), Ball::new(3), 200, 0).verdict(), Verdict::Pass);
        assert_eq!(t7().abelian_on_s_check(&catalog::torsion_s(), Ball::new(3), 200, 0).verdict(), Verdict::Pass);
        let full = SubgroupDescriptor::new(a.group(), vec![1; 5]).unwrap();
        let r = a.abelian_on_s_check(&full, Ball::new(3), 200, 0);
        assert_eq!(r.verdict(), Verdict::Fail);
        let w = r.first_witness().unwrap();
        let (f, g) = (w.get("f").unwrap(), w.get("g").unwrap());
        assert!(!a.group().commutes(f, g));
    }

    #[test]
    fn law_suites_pass_on_builtins() {
        let cases = [
            (z5(), catalog::s1()),
            (t7(), catalog::torsion_s()),
            (
                TwistedAlgebra::new(catalog::rotation_group(), catalog::rotation_cocycle(catalog::default_theta())),
                catalog::rotation_s(),
            ),
        ];
        for (alg, s) in cases {
            let r = algebra_law_suite(&alg, &s, Ball::new(2), 200, 0);
            assert_eq!(r.verdict(), Verdict::Pass, "{r:?}");
        }
    }

    #[test]
    fn injected_fault_breaks_involution() {
        let alg = TwistedAlgebra::new(catalog::rotation_group(), catalog::rotation_cocycle(catalog::default_theta()))
            .with_fault(AdjointFault::CoefficientAngleSign);
        let r = algebra_law_suite(&alg, &catalog::rotation_s(), Ball::new(2), 200, 0);
        assert_eq!(r.clause("adjoint-involution").unwrap().verdict, Verdict::Fail);
    }

    /// Oracle: the convolution written literally as
    /// `(f*h)(γ) = Σ_η f(γη) h(η⁻¹) c(γη, η⁻¹)`, summed over a window
    /// large enough to contain every contributing `η`.
    #[test]
    fn convolution_matches_literal_formula() {
        let a = z5();
        let d = a.group();
        let mut rng = sampling::rng(3);
        let pool = d.ball_elements(Ball::new(1));
        for _ in 0..30 {
            let f = a.random_element(&mut rng, &pool, 3);
            let h = a.random_element(&mut rng, &pool, 3);
            let prod = a.convolve(&f, &h);
            let etas: Vec<GroupElement> = h.support().map(|b| d.inverse(b)).collect();
            let mut gammas: Vec<GroupElement> = f
                .support()
                .flat_map(|x| h.support().map(move |y| (x, y)))
                .map(|(x, y)| d.mul(x, y))
                .collect();
            gammas.push(d.elem(&[9, 9, 9, 9, 9]));
            for gamma in gammas {
                let mut sum = Cyclotomic::zero(4);
                for eta in &etas {
                    let ge = d.mul(&gamma, eta);
                    let ei = d.inverse(eta);
                    sum = &sum + &(&(&a.eval(&f, &ge) * &a.eval(&h, &ei)) * &a.scalar(a.cocycle().eval(&ge, &ei)));
                }
                assert_eq!(a.eval(&prod, &gamma), sum);
            }
        }
    }
}
