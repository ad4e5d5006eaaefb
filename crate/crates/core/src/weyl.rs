//! Characters of `S`, the canonical coset transversal, the Weyl action of
//! `G/S` on the dual of `S` and the Weyl 2-cocycle σ̃.
//!
//! Everything here assumes `c` is trivial on `S` and `S` is normal. Under
//! those hypotheses the dual of `C*(S)` is the Pontryagin dual of `S`, and a
//! character is determined by its angles on the generators of `S`.

use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::TwistedAlgebra;
use crate::check::{CheckReport, Clause, Witness};
use crate::cocycle::CocycleDescriptor;
use crate::error::WeylError;
use crate::group::{Ball, GroupDescriptor, GroupElement};
use crate::sampling;
use crate::scalars::{CircleElement, Cyclotomic};
use crate::subgroup::SubgroupDescriptor;

/// A character of `S`, given by one angle per free component of `S` (the
/// value on the generator with `k_i` in slot `i`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Character {
    pub angles: Vec<CircleElement>,
}

impl Character {
    pub fn new(angles: Vec<CircleElement>) -> Self {
        Character { angles }
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// Least common multiple of the angle denominators.
    pub fn order(&self) -> u64 {
        self.angles.iter().fold(1, |acc, a| num_integer::lcm(acc, a.den()))
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.angles.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// An arrow `([g], ν)` of the transformation groupoid `(G/S) ⋉ Ŝ`, from `ν`
/// to `α̃_[g](ν)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylArrow {
    /// Canonical representative of the class.
    pub class: GroupElement,
    pub source: Character,
}

/// The pieces of one σ̃ evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaValue {
    /// `w = r[gh]⁻¹ r[g] r[h] ∈ S`.
    pub w: GroupElement,
    /// `δ_{r[gh]}* δ_{r[g]} δ_{r[h]} = λ δ_w`.
    pub lambda: CircleElement,
    /// `λ·ν(w)`.
    pub value: CircleElement,
    /// The same value obtained by convolution and evaluation of `Ψ(ν)`.
    pub via_convolution: Cyclotomic,
}

/// Group, cocycle and subgroup of one Cartan pair, validated for the Weyl
/// construction.
#[derive(Debug, Clone)]
pub struct WeylContext {
    alg: TwistedAlgebra,
    subgroup: SubgroupDescriptor,
    free: Vec<usize>,
    gens: Vec<GroupElement>,
}

impl WeylContext {
    /// Fails when `c` is not trivial on `S`. Normality is checked lazily,
    /// for each element the action is evaluated at.
    pub fn new(group: GroupDescriptor, cocycle: CocycleDescriptor, subgroup: SubgroupDescriptor) -> Result<Self, WeylError> {
        subgroup.structural_check(&group)?;
        let gens = subgroup.generators(&group);
        if !cocycle.structurally_trivial_on(&subgroup) {
            let pair = gens
                .iter()
                .flat_map(|a| gens.iter().map(move |b| (a, b)))
                .find(|(a, b)| !cocycle.eval(a, b).is_identity())
                .expect("a nontrivial bilinear form is nontrivial on some generator pair");
            return Err(WeylError::CocycleNontrivial(pair.0.clone(), pair.1.clone()));
        }
        Ok(WeylContext {
            free: subgroup.free_components(),
            alg: TwistedAlgebra::new(group, cocycle),
            subgroup,
            gens,
        })
    }

    pub fn group(&self) -> &GroupDescriptor {
        self.alg.group()
    }

    pub fn cocycle(&self) -> &CocycleDescriptor {
        self.alg.cocycle()
    }

    pub fn subgroup(&self) -> &SubgroupDescriptor {
        &self.subgroup
    }

    pub fn algebra(&self) -> &TwistedAlgebra {
        &self.alg
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.gens
    }

    /// Torsion order of each generator, `None` for infinite order.
    fn generator_orders(&self) -> Vec<Option<u64>> {
        self.free
            .iter()
            .map(|&i| self.subgroup.generator_order(self.group(), i))
            .collect()
    }

    /// Checks arity and that every torsion generator's angle respects its
    /// order.
    pub fn validate_character(&self, nu: &Character) -> Result<(), WeylError> {
        if nu.len() != self.free.len() {
            return Err(WeylError::CharacterArity {
                expected: self.free.len(),
                got: nu.len(),
            });
        }
        for ((&i, order), angle) in self.free.iter().zip(self.generator_orders()).zip(&nu.angles) {
            if let Some(o) = order {
                if !angle.pow(o as i64).is_identity() {
                    return Err(WeylError::CharacterTorsion {
                        component: i + 1,
                        angle: *angle,
                        order: o,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn character(&self, angles: Vec<CircleElement>) -> Result<Character, WeylError> {
        let nu = Character::new(angles);
        self.validate_character(&nu)?;
        Ok(nu)
    }

    /// The trivial character.
    pub fn trivial_character(&self) -> Character {
        Character::new(vec![CircleElement::IDENTITY; self.free.len()])
    }

    /// `ν(s) = Σ (s_i / k_i)·θ_i`.
    pub fn char_eval(&self, nu: &Character, s: &GroupElement) -> Result<CircleElement, WeylError> {
        let coords = self.subgroup.coordinates(s)?;
        Ok(coords.iter().zip(&nu.angles).map(|(&x, a)| a.pow(x)).product())
    }

    /// Componentwise residue: `g_i mod k_i`, or `g_i` where the scaling is 0.
    pub fn coset_rep(&self, g: &GroupElement) -> GroupElement {
        coset_rep(&self.subgroup, self.group(), g)
    }

    /// `conj(c(g,g⁻¹)) c(g⁻¹,s) c(g⁻¹s,g) ν(g⁻¹sg)` at a single `s ∈ S`.
    pub fn action_formula_at(&self, g: &GroupElement, nu: &Character, s: &GroupElement) -> Result<CircleElement, WeylError> {
        let d = self.group();
        let c = self.cocycle();
        let gi = d.inverse(g);
        let gis = d.mul(&gi, s);
        let conj = d.mul(&gis, g);
        if !self.subgroup.contains(&conj) {
            return Err(WeylError::NotNormal {
                g: g.clone(),
                generator: s.clone(),
            });
        }
        Ok(c.eval(g, &gi).conj() * c.eval(&gi, s) * c.eval(&gis, g) * self.char_eval(nu, &conj)?)
    }

    /// `α̃_[g](ν)`, evaluated on the generators of `S`.
    pub fn weyl_action(&self, g: &GroupElement, nu: &Character) -> Result<Character, WeylError> {
        self.validate_character(nu)?;
        let angles = self
            .gens
            .iter()
            .map(|e| self.action_formula_at(g, nu, e))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Character::new(angles))
    }

    /// σ̃ at `(([g], α̃_[h] ν), ([h], ν))`, by both routes.
    pub fn weyl_cocycle_parts(&self, g: &GroupElement, h: &GroupElement, nu: &Character) -> Result<SigmaValue, WeylError> {
        let d = self.group();
        let c = self.cocycle();
        let (rg, rh) = (self.coset_rep(g), self.coset_rep(h));
        let rgh = self.coset_rep(&d.mul(g, h));
        let rghi = d.inverse(&rgh);
        let w = d.mul(&d.mul(&rghi, &rg), &rh);
        if !self.subgroup.contains(&w) {
            return Err(WeylError::TransversalDefect(w));
        }
        // δ_x* = conj(c(x, x⁻¹)) δ_{x⁻¹}
        let lambda = c.eval(&rgh, &rghi).conj() * c.eval(&rghi, &rg) * c.eval(&d.mul(&rghi, &rg), &rh);
        let value = lambda * self.char_eval(nu, &w)?;

        let alg = &self.alg;
        let b = alg.convolve(&alg.convolve(&alg.adjoint(&alg.delta(&rgh)), &alg.delta(&rg)), &alg.delta(&rh));
        let via_convolution = self.psi(nu, &b)?;
        let closed = Cyclotomic::from_circle(value, value.den())?;
        if closed != via_convolution {
            return Err(WeylError::DualPathMismatch {
                closed: closed.to_string(),
                convolution: via_convolution.to_string(),
            });
        }
        Ok(SigmaValue {
            w,
            lambda,
            value,
            via_convolution,
        })
    }

    /// `Ψ(ν)(b) = Σ_{s∈S} b(s) ν(s)` for `b` supported in `S`. Works in the
    /// smallest cyclotomic field holding the coefficients and the values
    /// actually taken.
    pub fn psi(&self, nu: &Character, b: &crate::algebra::AlgebraElement) -> Result<Cyclotomic, WeylError> {
        let mut values = Vec::with_capacity(b.len());
        let mut n = self.alg.conductor();
        for (s, coeff) in b.terms() {
            if !self.subgroup.contains(s) {
                return Err(WeylError::TransversalDefect(s.clone()));
            }
            let v = self.char_eval(nu, s)?;
            n = num_integer::lcm(n, v.den());
            values.push((coeff, v));
        }
        let mut acc = Cyclotomic::zero(n);
        for (coeff, v) in values {
            acc = &acc + &(coeff * &Cyclotomic::from_circle(v, n)?);
        }
        Ok(acc)
    }

    /// σ̃ as a point of T. Errors if the two evaluation routes disagree.
    pub fn weyl_cocycle(&self, g: &GroupElement, h: &GroupElement, nu: &Character) -> Result<CircleElement, WeylError> {
        Ok(self.weyl_cocycle_parts(g, h, nu)?.value)
    }

    /// The groupoid 2-cocycle identity for arrows `([g], α̃_{hk}ν)`,
    /// `([h], α̃_k ν)`, `([k], ν)`, plus the normalization at the unit class.
    pub fn sigma_cocycle_identity_check(
        &self,
        g: &GroupElement,
        h: &GroupElement,
        k: &GroupElement,
        nu: &Character,
    ) -> Result<bool, WeylError> {
        let d = self.group();
        let e = d.identity();
        let ak = self.weyl_action(k, nu)?;
        let lhs = self.weyl_cocycle(g, h, &ak)? * self.weyl_cocycle(&d.mul(g, h), k, nu)?;
        let rhs = self.weyl_cocycle(g, &d.mul(h, k), nu)? * self.weyl_cocycle(h, k, nu)?;
        let normalized = self.weyl_cocycle(&e, h, nu)?.is_identity() && self.weyl_cocycle(g, &e, nu)?.is_identity();
        Ok(lhs == rhs && normalized)
    }

    /// A seeded random character: angles `j/q` with one common `q ≤ 24`,
    /// torsion generators restricted to their order.
    pub fn random_character<R: Rng + ?Sized>(&self, rng: &mut R) -> Character {
        let common: u64 = rng.gen_range(1..=24);
        let angles = self
            .generator_orders()
            .into_iter()
            .map(|o| {
                let q = o.unwrap_or(common);
                CircleElement::new(rng.gen_range(0..q as i64), q)
            })
            .collect();
        Character::new(angles)
    }

    /// Characters with angles `j/p` for the primes `p ≤ 23`.
    pub fn prime_family(&self) -> Vec<Character> {
        const PRIMES: [u64; 9] = [2, 3, 5, 7, 11, 13, 17, 19, 23];
        let orders = self.generator_orders();
        PRIMES
            .iter()
            .map(|&p| {
                let angles = orders
                    .iter()
                    .enumerate()
                    .map(|(j, o)| match o {
                        Some(o) => CircleElement::new(1, *o),
                        None => CircleElement::new(j as i64 + 1, p),
                    })
                    .collect();
                Character::new(angles)
            })
            .collect()
    }

    /// Arrow `([g], ν)`.
    pub fn arrow(&self, g: &GroupElement, source: Character) -> WeylArrow {
        WeylArrow {
            class: self.coset_rep(g),
            source,
        }
    }

    pub fn range(&self, a: &WeylArrow) -> Result<Character, WeylError> {
        self.weyl_action(&a.class, &a.source)
    }

    /// `a1 · a2`, defined when `range(a2) = source(a1)`.
    pub fn compose_arrows(&self, a1: &WeylArrow, a2: &WeylArrow) -> Result<WeylArrow, WeylError> {
        let range = self.range(a2)?;
        if range != a1.source {
            return Err(WeylError::NotComposable {
                range: range.to_string(),
                source_character: a1.source.to_string(),
            });
        }
        Ok(WeylArrow {
            class: self.coset_rep(&self.group().mul(&a1.class, &a2.class)),
            source: a2.source.clone(),
        })
    }

    /// Distinct non-identity coset representatives of ball elements.
    pub fn classes_in_ball(&self, ball: Ball) -> Vec<GroupElement> {
        let d = self.group();
        let mut reps: Vec<GroupElement> = d.enumerate_ball(ball).map(|g| self.coset_rep(&g)).collect();
        reps.sort_by_key(|r| d.witness_key(r));
        reps.dedup();
        reps.retain(|r| !self.subgroup.contains(r));
        reps
    }

    /// For every nontrivial class with a representative in the ball, looks
    /// for a character it moves.
    pub fn freeness_scan(&self, ball: Ball, char_samples: usize, seed: u64) -> FreenessReport {
        let mut rng = sampling::substream(seed, "freeness");
        let mut chars = self.prime_family();
        chars.extend((0..char_samples).map(|_| self.random_character(&mut rng)));
        let classes = self.classes_in_ball(ball);
        let evidence: Vec<ClassEvidence> = classes
            .par_iter()
            .map(|r| {
                let moved = chars
                    .iter()
                    .find(|nu| matches!(self.weyl_action(r, nu), Ok(a) if &a != *nu))
                    .cloned();
                ClassEvidence { class: r.clone(), moved }
            })
            .collect();
        FreenessReport {
            ball_radius: ball.radius,
            characters: chars.len() as u64,
            classes: evidence,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEvidence {
    pub class: GroupElement,
    /// A character moved by the class, if one was found.
    pub moved: Option<Character>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessReport {
    pub ball_radius: u32,
    pub characters: u64,
    pub classes: Vec<ClassEvidence>,
}

impl FreenessReport {
    pub fn without_witness(&self) -> impl Iterator<Item = &ClassEvidence> {
        self.classes.iter().filter(|c| c.moved.is_none())
    }

    pub fn to_check(&self) -> CheckReport {
        let missing: Vec<_> = self.without_witness().collect();
        let n = self.classes.len() as u64;
        let clause = match missing.first() {
            None => Clause::pass("moving-witness", n).with_note("every nontrivial class moves some tested character"),
            Some(c) => Clause {
                name: "moving-witness".into(),
                verdict: crate::check::Verdict::Inconclusive,
                checked: n,
                witness: Some(Witness::new().element("class", &c.class)),
                note: Some(format!("{} classes fix every tested character", missing.len())),
            },
        };
        CheckReport::new("freeness", Some(self.ball_radius)).with(clause)
    }
}

/// Componentwise residue transversal.
pub fn coset_rep(s: &SubgroupDescriptor, d: &GroupDescriptor, g: &GroupElement) -> GroupElement {
    let v: Vec<i64> = g
        .coords()
        .iter()
        .zip(s.scalings())
        .map(|(&x, &k)| if k == 0 { x } else { x.rem_euclid(k as i64) })
        .collect();
    d.elem(&v)
}

/// Checks a transversal on the ball: `rep(g)⁻¹ g ∈ S`, `rep` is idempotent,
/// and distinct representatives lie in distinct cosets. Together with the
/// first clause the last one gives `rep(g) = rep(h) ⇔ g⁻¹h ∈ S`.
pub fn validate_transversal_with<F>(s: &SubgroupDescriptor, d: &GroupDescriptor, ball: Ball, rep: F) -> CheckReport
where
    F: Fn(&GroupElement) -> GroupElement + Sync,
{
    let n = d.ball_size(ball);
    let min_by_key = |items: Vec<(GroupElement, Witness)>| items.into_iter().min_by_key(|(g, _)| d.witness_key(g)).map(|(_, w)| w);

    let coset: Vec<_> = (0..n)
        .into_par_iter()
        .filter_map(|i| {
            let g = d.ball_element(ball, i);
            let r = rep(&g);
            (!s.contains(&d.mul(&d.inverse(&r), &g))).then(|| (g.clone(), Witness::new().element("g", &g).element("rep", &r)))
        })
        .collect();
    let idem: Vec<_> = (0..n)
        .into_par_iter()
        .filter_map(|i| {
            let g = d.ball_element(ball, i);
            let r = rep(&g);
            let rr = rep(&r);
            (rr != r).then(|| (g.clone(), Witness::new().element("g", &g).element("rep", &r).element("rep(rep)", &rr)))
        })
        .collect();

    let mut reps: Vec<GroupElement> = (0..n).map(|i| rep(&d.ball_element(ball, i))).collect();
    reps.sort();
    reps.dedup();
    let sep: Vec<_> = reps
        .par_iter()
        .enumerate()
        .filter_map(|(i, a)| {
            let ai = d.inverse(a);
            reps[i + 1..]
                .iter()
                .find(|b| s.contains(&d.mul(&ai, b)))
                .map(|b| (a.clone(), Witness::new().element("rep-a", a).element("rep-b", b)))
        })
        .collect();
    let pairs = (reps.len() * reps.len().saturating_sub(1) / 2) as u64;

    CheckReport::new("transversal", Some(ball.radius))
        .with(Clause::from_witness("in-coset", n as u64, min_by_key(coset)))
        .with(Clause::from_witness("idempotent", n as u64, min_by_key(idem)))
        .with(Clause::from_witness("separation", pairs, min_by_key(sep)))
}

pub fn validate_transversal(s: &SubgroupDescriptor, d: &GroupDescriptor, ball: Ball) -> CheckReport {
    validate_transversal_with(s, d, ball, |g| coset_rep(s, d, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::check::Verdict;

    fn t(p: i64, q: u64) -> CircleElement {
        CircleElement::new(p, q)
    }

    fn ctx(s: SubgroupDescriptor) -> WeylContext {
        WeylContext::new(catalog::z5_group(), catalog::z5_cocycle(), s).unwrap()
    }

    #[test]
    fn coset_rep_examples() {
        let d = catalog::z5_group();
        assert_eq!(coset_rep(&catalog::s1(), &d, &d.elem(&[5, -2, 7, 3, 4])), d.elem(&[0, 0, 0, 1, 4]));
        assert_eq!(coset_rep(&catalog::s0(), &d, &d.elem(&[1, 2, 3, 4, 5])), d.elem(&[0, 0, 3, 4, 0]));
        let s = d.elem(&[3, -1, 2, 4, 0]);
        assert_eq!(coset_rep(&catalog::s1(), &d, &s), d.identity());
    }

    #[test]
    fn transversal_examples() {
        let d = catalog::z5_group();
        for s in [catalog::s0(), catalog::s1(), catalog::s2()] {
            assert_eq!(validate_transversal(&s, &d, Ball::new(3)).verdict(), Verdict::Pass);
        }
        let t7 = catalog::torsion_group();
        assert_eq!(validate_transversal(&catalog::torsion_s(), &t7, Ball::new(3)).verdict(), Verdict::Pass);

        // skipping the reduction on coordinate 4 keeps distinct reps of one coset
        let s1 = catalog::s1();
        let broken = |g: &GroupElement| {
            let mut v: Vec<i64> = coset_rep(&s1, &d, g).coords().to_vec();
            v[3] = g.coords()[3];
            d.elem(&v)
        };
        let r = validate_transversal_with(&s1, &d, Ball::new(3), broken);
        assert_eq!(r.verdict(), Verdict::Fail);
        assert_eq!(r.clause("separation").unwrap().verdict, Verdict::Fail);
    }

    #[test]
    fn char_eval_examples() {
        let w = ctx(catalog::s1());
        let d = w.group();
        let nu = w.character(vec![t(1, 8), t(1, 3), t(0, 1), t(0, 1)]).unwrap();
        assert_eq!(w.char_eval(&nu, &d.elem(&[1, 1, 0, 2, 0])).unwrap(), t(11, 24));
        assert!(w.char_eval(&nu, &d.identity()).unwrap().is_identity());
        assert!(w.char_eval(&nu, &d.elem(&[0, 0, 0, 1, 0])).is_err());

        let w7 = WeylContext::new(catalog::torsion_group(), catalog::torsion_cocycle(), catalog::torsion_s()).unwrap();
        let t7 = w7.group();
        let nu = w7.character(vec![t(0, 1), t(0, 1), t(0, 1), t(0, 1), t(1, 2)]).unwrap();
        assert_eq!(w7.char_eval(&nu, &t7.elem(&[0, 0, 0, 0, 2])).unwrap(), t(1, 2));
        assert!(matches!(
            w7.character(vec![t(0, 1), t(0, 1), t(0, 1), t(0, 1), t(1, 4)]),
            Err(WeylError::CharacterTorsion { component: 5, .. })
        ));
        assert!(matches!(w7.character(vec![t(0, 1)]), Err(WeylError::CharacterArity { .. })));
    }

    #[test]
    fn action_examples() {
        let w0 = ctx(catalog::s0());
        let d = w0.group();
        let nu = w0.character(vec![t(1, 8), t(1, 3), t(0, 1)]).unwrap();
        let out = w0.weyl_action(&d.elem(&[0, 0, 1, 1, 0]), &nu).unwrap();
        assert_eq!(out.angles, vec![t(5, 8), t(1, 3), t(11, 12)]);
        assert_eq!(w0.weyl_action(&d.elem(&[4, -1, 0, 0, 2]), &nu).unwrap(), nu);

        let w2 = ctx(catalog::s2());
        let nu = w2.character(vec![t(1, 8), t(1, 3), t(0, 1), t(0, 1)]).unwrap();
        let out = w2.weyl_action(&d.elem(&[1, 0, 0, 0, 1]), &nu).unwrap();
        assert_eq!(out.angles, vec![t(1, 8), t(1, 3), t(7, 8), t(5, 6)]);
    }

    #[test]
    fn nontrivial_cocycle_is_rejected() {
        let d = catalog::z5_group();
        let full = SubgroupDescriptor::new(&d, vec![1, 1, 1, 1, 0]).unwrap();
        let err = WeylContext::new(d.clone(), catalog::z5_cocycle(), full).unwrap_err();
        assert!(matches!(err, WeylError::CocycleNontrivial(..)));
    }

    #[test]
    fn non_normal_subgroup_is_reported() {
        let d = catalog::z5_group();
        let s = SubgroupDescriptor::new(&d, vec![0, 0, 1, 0, 0]).unwrap();
        let w = WeylContext::new(d.clone(), catalog::z5_cocycle(), s).unwrap();
        let nu = w.trivial_character();
        assert!(matches!(w.weyl_action(&d.elem(&[0, 0, 0, 0, 1]), &nu), Err(WeylError::NotNormal { .. })));
    }

    #[test]
    fn cocycle_examples() {
        let d = catalog::z5_group();
        let w0 = ctx(catalog::s0());
        let nu = w0.character(vec![t(1, 8), t(1, 3), t(2, 7)]).unwrap();
        assert!(w0.weyl_cocycle(&d.elem(&[1, 2, 3, 1, 5]), &d.elem(&[0, 1, -2, 3, 1]), &nu).unwrap().is_identity());

        let w1 = ctx(catalog::s1());
        let nu = w1.character(vec![t(0, 1), t(1, 3), t(0, 1), t(0, 1)]).unwrap();
        let v = w1.weyl_cocycle(&d.elem(&[0, 0, 0, 0, 1]), &d.elem(&[0, 0, 0, 1, 0]), &nu).unwrap();
        assert_eq!(v, t(2, 3));

        let w2 = ctx(catalog::s2());
        let nu = w2.character(vec![t(1, 4), t(0, 1), t(0, 1), t(0, 1)]).unwrap();
        let v = w2.weyl_cocycle(&d.elem(&[1, 0, 0, 0, 0]), &d.elem(&[1, 0, 0, 0, 2]), &nu).unwrap();
        assert_eq!(v, t(1, 4));
    }

    #[test]
    fn sigma_identity_and_normalization() {
        let d = catalog::z5_group();
        for w in [ctx(catalog::s1()), ctx(catalog::s2())] {
            let nu = w.trivial_character();
            assert!(w.sigma_cocycle_identity_check(&d.identity(), &d.identity(), &d.identity(), &nu).unwrap());
            let mut rng = sampling::rng(11);
            for _ in 0..50 {
                let g = d.random_element(Ball::new(3), &mut rng);
                let h = d.random_element(Ball::new(3), &mut rng);
                let k = d.random_element(Ball::new(3), &mut rng);
                let nu = w.random_character(&mut rng);
                assert!(w.sigma_cocycle_identity_check(&g, &h, &k, &nu).unwrap());
            }
        }
    }

    #[test]
    fn freeness_examples() {
        for w in [ctx(catalog::s1()), ctx(catalog::s2())] {
            let r = w.freeness_scan(Ball::new(2), 20, 0);
            assert!(!r.classes.is_empty());
            assert_eq!(r.without_witness().count(), 0);
            assert!(r.classes.iter().all(|c| !w.subgroup().contains(&c.class)));
        }
    }

    #[test]
    fn arrow_composition() {
        let w0 = ctx(catalog::s0());
        let d = w0.group();
        let nu = w0.character(vec![t(1, 8), t(1, 3), t(1, 5)]).unwrap();
        let a2 = w0.arrow(&d.elem(&[0, 0, 0, 1, 0]), nu.clone());
        let a1 = w0.arrow(&d.elem(&[0, 0, 1, 0, 0]), w0.range(&a2).unwrap());
        let a = w0.compose_arrows(&a1, &a2).unwrap();
        assert_eq!(a.class, d.elem(&[0, 0, 1, 1, 0]));
        assert_eq!(a.source, nu);

        let unit = w0.arrow(&d.identity(), w0.range(&a2).unwrap());
        assert_eq!(w0.compose_arrows(&unit, &a2).unwrap(), a2);
        assert!(matches!(w0.compose_arrows(&a2, &a2), Err(WeylError::NotComposable { .. })));
    }

    #[test]
    fn rotation_translates() {
        let th = catalog::default_theta();
        let w = WeylContext::new(catalog::rotation_group(), catalog::rotation_cocycle(th), catalog::rotation_s()).unwrap();
        let d = w.group();
        let nu = w.character(vec![t(1, 7)]).unwrap();
        for n in -3..=3 {
            let g = d.elem(&[n, 2]);
            assert_eq!(w.weyl_action(&g, &nu).unwrap().angles, vec![t(1, 7) * th.pow(n)]);
            assert!(w.weyl_cocycle(&g, &d.elem(&[1, -1]), &nu).unwrap().is_identity());
        }
    }
}
