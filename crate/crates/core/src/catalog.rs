//! Built-in groups, cocycles and subgroups, together with hand-derived
//! closed forms for the Weyl action and σ̃ used as independent oracles.

use crate::cocycle::{CocycleDescriptor, CocycleTerm};
use crate::group::{Component, GroupDescriptor, GroupElement, TwistTerm};
use crate::scalars::CircleElement;
use crate::subgroup::SubgroupDescriptor;
use crate::weyl::Character;

fn twist() -> Vec<TwistTerm> {
    vec![TwistTerm::new(1, 5, 3, 2), TwistTerm::new(2, 5, 4, 2)]
}

/// `Z⁵` with `(ab)_1 += 2 a5 b3` and `(ab)_2 += 2 a5 b4`.
pub fn z5_group() -> GroupDescriptor {
    GroupDescriptor::new(vec![Component::Integer; 5], twist()).expect("built-in group is well formed")
}

/// Same twist on `Z/4 × Z/4 × Z × Z × Z/4`.
pub fn torsion_group() -> GroupDescriptor {
    use Component::*;
    GroupDescriptor::new(vec![Cyclic(4), Cyclic(4), Integer, Integer, Cyclic(4)], twist())
        .expect("built-in group is well formed")
}

/// `c(a, b) = (-1)^{a4 b1}`.
pub fn z5_cocycle() -> CocycleDescriptor {
    CocycleDescriptor::new(vec![CocycleTerm::new(4, 1, CircleElement::MINUS_ONE)])
}

pub fn torsion_cocycle() -> CocycleDescriptor {
    z5_cocycle()
}

pub fn rotation_group() -> GroupDescriptor {
    GroupDescriptor::free_abelian(2)
}

/// `c(a, b) = θ^{a2 b1}`.
pub fn rotation_cocycle(theta: CircleElement) -> CocycleDescriptor {
    CocycleDescriptor::new(vec![CocycleTerm::new(2, 1, theta)])
}

pub fn default_theta() -> CircleElement {
    CircleElement::new(1, 5)
}

/// `Z × Z × 0 × 0 × Z`.
pub fn s0() -> SubgroupDescriptor {
    SubgroupDescriptor::unchecked(vec![1, 1, 0, 0, 1])
}

/// `Z × Z × Z × 2Z × 0`.
pub fn s1() -> SubgroupDescriptor {
    SubgroupDescriptor::unchecked(vec![1, 1, 1, 2, 0])
}

/// `2Z × Z × Z × Z × 0`.
pub fn s2() -> SubgroupDescriptor {
    SubgroupDescriptor::unchecked(vec![2, 1, 1, 1, 0])
}

/// `Z/4 × Z/4 × Z × 2Z × 2Z/4` inside the torsion group.
pub fn torsion_s() -> SubgroupDescriptor {
    SubgroupDescriptor::unchecked(vec![1, 1, 1, 2, 2])
}

/// `0 × Z` inside the rotation group.
pub fn rotation_s() -> SubgroupDescriptor {
    SubgroupDescriptor::unchecked(vec![0, 1])
}

/// Parity of an integer, 0 or 1.
pub fn parity(x: i64) -> i64 {
    x.rem_euclid(2)
}

fn half(k: i64) -> CircleElement {
    CircleElement::MINUS_ONE.pow(k)
}

/// `g⁻¹ s g` for `s ∈ S₀`: `(s1 + 2 s5 g3, s2 + 2 s5 g4, 0, 0, s5)`.
pub fn s0_conjugate(d: &GroupDescriptor, g: &GroupElement, s: &GroupElement) -> GroupElement {
    let (g, s) = (g.coords(), s.coords());
    d.elem(&[s[0] + 2 * s[4] * g[2], s[1] + 2 * s[4] * g[3], 0, 0, s[4]])
}

/// Weyl action of the class of `g` on a character of `S₀`.
pub fn s0_action(g: &GroupElement, nu: &Character) -> Character {
    let [t1, t2, t3] = [nu.angles[0], nu.angles[1], nu.angles[2]];
    let (c, d) = (g.coords()[2], g.coords()[3]);
    Character::new(vec![t1 * half(d), t2, t1.pow(2 * c) * t2.pow(2 * d) * t3])
}

pub fn s1_action(g: &GroupElement, nu: &Character) -> Character {
    let a = &nu.angles;
    let g = g.coords();
    Character::new(vec![a[0] * half(g[3]), a[1], a[0].pow(-2 * g[4]) * a[2], a[1].pow(-4 * g[4]) * a[3]])
}

pub fn s2_action(g: &GroupElement, nu: &Character) -> Character {
    let a = &nu.angles;
    let g = g.coords();
    Character::new(vec![a[0], a[1], a[0].pow(-g[4]) * a[2], half(g[0]) * a[1].pow(-2 * g[4]) * a[3]])
}

pub fn rotation_action(theta: CircleElement, g: &GroupElement, nu: &Character) -> Character {
    Character::new(vec![nu.angles[0] * theta.pow(g.coords()[0])])
}

/// σ̃ on `S₀` is identically 1.
pub fn s0_sigma(_g: &GroupElement, _h: &GroupElement, _nu: &Character) -> CircleElement {
    CircleElement::IDENTITY
}

/// σ̃ on `S₁`, with `ν` the source of the arrow of `h`.
pub fn s1_sigma(g: &GroupElement, h: &GroupElement, nu: &Character) -> CircleElement {
    let (g, h) = (g.coords(), h.coords());
    let z = &nu.angles;
    match (parity(g[3]), parity(h[3])) {
        (_, 0) => CircleElement::IDENTITY,
        (0, _) => z[1].pow(2 * g[4]),
        _ => z[1].pow(-2 * g[4] - 4 * h[4]) * z[3],
    }
}

pub fn s2_sigma(g: &GroupElement, h: &GroupElement, nu: &Character) -> CircleElement {
    if parity(g.coords()[0]) == 1 && parity(h.coords()[0]) == 1 {
        nu.angles[0]
    } else {
        CircleElement::IDENTITY
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Ball;
    use crate::sampling;
    use crate::weyl::WeylContext;

    #[test]
    fn builtins_are_consistent() {
        let d = z5_group();
        for s in [s0(), s1(), s2()] {
            s.structural_check(&d).unwrap();
            assert!(z5_cocycle().structurally_trivial_on(&s));
        }
        torsion_s().structural_check(&torsion_group()).unwrap();
        rotation_s().structural_check(&rotation_group()).unwrap();
    }

    #[test]
    fn s0_conjugate_matches_group_law() {
        let d = z5_group();
        let s = s0();
        let mut rng = sampling::rng(3);
        for _ in 0..500 {
            let g = d.random_element(Ball::new(4), &mut rng);
            let mut x = d.random_element(Ball::new(4), &mut rng).coords().to_vec();
            x[2] = 0;
            x[3] = 0;
            let x = d.elem(&x);
            assert!(s.contains(&x));
            let direct = d.mul(&d.mul(&d.inverse(&g), &x), &g);
            assert_eq!(direct, s0_conjugate(&d, &g, &x));
        }
    }

    #[test]
    fn closed_forms_match_small_sample() {
        let d = z5_group();
        type Act = fn(&GroupElement, &Character) -> Character;
        type Sig = fn(&GroupElement, &GroupElement, &Character) -> CircleElement;
        let cases: [(SubgroupDescriptor, Act, Sig); 3] =
            [(s0(), s0_action, s0_sigma), (s1(), s1_action, s1_sigma), (s2(), s2_action, s2_sigma)];
        let mut rng = sampling::rng(5);
        for (s, act, sig) in cases {
            let w = WeylContext::new(d.clone(), z5_cocycle(), s).unwrap();
            for _ in 0..40 {
                let g = d.random_element(Ball::new(3), &mut rng);
                let h = d.random_element(Ball::new(3), &mut rng);
                let nu = w.random_character(&mut rng);
                assert_eq!(w.weyl_action(&g, &nu).unwrap(), act(&g, &nu));
                assert_eq!(w.weyl_cocycle(&g, &h, &nu).unwrap(), sig(&g, &h, &nu));
            }
        }
    }
}
