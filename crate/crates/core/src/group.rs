//! Discrete groups on integer coordinate vectors with a triangular
//! quadratic twist.
//!
//! The underlying set is a product of copies of `Z` and `Z/m`. The product
//! adds coordinates and, for every twist term `(target i, left j, right k,
//! coeff q)`, adds `q·a_j·b_k` to coordinate `i`. Strict triangularity
//! (`j > i` and `k > i`) makes the law solvable from the last coordinate
//! backwards, which is how inverses are computed.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::check::{CheckReport, Clause, Witness};
use crate::error::GroupError;
use crate::sampling;

pub type Coords = SmallVec<[i64; 6]>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    /// A copy of the integers.
    Integer,
    /// `Z/m` with residues stored in `[0, m)`.
    Cyclic(u64),
}

impl Component {
    pub fn modulus(&self) -> Option<u64> {
        match self {
            Component::Integer => None,
            Component::Cyclic(m) => Some(*m),
        }
    }

    fn canonical(&self, x: i64) -> i64 {
        match self {
            Component::Integer => x,
            Component::Cyclic(m) => x.rem_euclid(*m as i64),
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Integer => f.write_str("Z"),
            Component::Cyclic(m) => write!(f, "Z/{m}"),
        }
    }
}

impl FromStr for Component {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Z" {
            return Ok(Component::Integer);
        }
        s.strip_prefix("Z/")
            .and_then(|m| m.trim().parse::<u64>().ok())
            .map(Component::Cyclic)
            .ok_or_else(|| format!("unknown component kind {s:?}, expected \"Z\" or \"Z/m\""))
    }
}

impl Serialize for Component {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Component {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// `(a·b)_target += coeff · a_left · b_right`, with 1-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistTerm {
    pub target: usize,
    pub left: usize,
    pub right: usize,
    #[serde(default = "unit_coeff")]
    pub coeff: i64,
}

fn unit_coeff() -> i64 {
    1
}

impl TwistTerm {
    pub fn new(target: usize, left: usize, right: usize, coeff: i64) -> Self {
        TwistTerm {
            target,
            left,
            right,
            coeff,
        }
    }
}

/// A group element: one integer per component, torsion coordinates reduced.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Coords);

impl GroupElement {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Wraps raw coordinates without canonicalizing; callers outside this
    /// module go through [`GroupDescriptor::element`].
    pub(crate) fn from_coords(c: Coords) -> Self {
        GroupElement(c)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.as_slice().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(deserializer)?;
        Ok(GroupElement(Coords::from_vec(v)))
    }
}

/// Finite window: integer coordinates in `[-radius, radius]`, torsion
/// coordinates unrestricted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ball {
    pub radius: u32,
}

impl Ball {
    pub fn new(radius: u32) -> Self {
        Ball { radius }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDescriptor {
    components: Vec<Component>,
    twist: Vec<TwistTerm>,
    /// Twist terms grouped by 0-based target, stored as (left, right, coeff)
    /// with 0-based indices.
    by_target: Vec<Vec<(usize, usize, i64)>>,
}

impl GroupDescriptor {
    /// Builds a descriptor and runs the structural checks.
    pub fn new(components: Vec<Component>, twist: Vec<TwistTerm>) -> Result<Self, GroupError> {
        let d = Self::unchecked(components, twist);
        d.structural_check()?;
        Ok(d)
    }

    /// Builds a descriptor without structural checks. Multiplication still
    /// works; inversion is only meaningful for triangular twists.
    ///
    /// Out-of-range twist indices are dropped from the multiplication table
    /// (and reported by [`structural_check`](Self::structural_check)).
    pub fn unchecked(components: Vec<Component>, twist: Vec<TwistTerm>) -> Self {
        let n = components.len();
        let mut by_target = vec![Vec::new(); n];
        for t in &twist {
            let ok = (1..=n).contains(&t.target) && (1..=n).contains(&t.left) && (1..=n).contains(&t.right);
            if ok && t.coeff != 0 {
                by_target[t.target - 1].push((t.left - 1, t.right - 1, t.coeff));
            }
        }
        GroupDescriptor {
            components,
            twist,
            by_target,
        }
    }

    /// Free abelian group `Z^n` (no twist).
    pub fn free_abelian(n: usize) -> Self {
        Self::unchecked(vec![Component::Integer; n], Vec::new())
    }

    pub fn structural_check(&self) -> Result<(), GroupError> {
        let n = self.components.len();
        for (i, c) in self.components.iter().enumerate() {
            if let Component::Cyclic(m) = c {
                if *m < 2 {
                    return Err(GroupError::Modulus { component: i + 1 });
                }
            }
        }
        for (idx, t) in self.twist.iter().enumerate() {
            let term = idx + 1;
            for index in [t.target, t.left, t.right] {
                if !(1..=n).contains(&index) {
                    return Err(GroupError::TwistIndex { term, index, len: n });
                }
            }
            if t.left <= t.target || t.right <= t.target {
                return Err(GroupError::Triangularity {
                    term,
                    target: t.target,
                    left: t.left,
                    right: t.right,
                });
            }
            if t.coeff == 0 {
                continue;
            }
            // shifting a torsion input by its modulus must not change the output
            let target_mod = self.components[t.target - 1].modulus();
            for input in [t.left, t.right] {
                if let Some(m) = self.components[input - 1].modulus() {
                    let shift = t.coeff as i128 * m as i128;
                    let ok = match target_mod {
                        Some(mt) => shift.rem_euclid(mt as i128) == 0,
                        None => false,
                    };
                    if !ok {
                        return Err(GroupError::TorsionTwist { term, component: input });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn twist(&self) -> &[TwistTerm] {
        &self.twist
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn element(&self, coords: &[i64]) -> Result<GroupElement, GroupError> {
        if coords.len() != self.rank() {
            return Err(GroupError::Arity {
                expected: self.rank(),
                got: coords.len(),
            });
        }
        Ok(GroupElement(
            coords
                .iter()
                .zip(&self.components)
                .map(|(&x, c)| c.canonical(x))
                .collect(),
        ))
    }

    /// Like [`element`](Self::element) but panics on an arity mismatch.
    pub fn elem(&self, coords: &[i64]) -> GroupElement {
        self.element(coords).expect("coordinate count matches the group")
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(smallvec::smallvec![0; self.rank()])
    }

    pub fn is_identity(&self, a: &GroupElement) -> bool {
        a.0.iter().all(|&x| x == 0)
    }

    pub fn checked_mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        for x in [a, b] {
            if x.len() != self.rank() {
                return Err(GroupError::Arity {
                    expected: self.rank(),
                    got: x.len(),
                });
            }
        }
        Ok(self.mul(a, b))
    }

    /// The group product. Panics if either operand has the wrong arity.
    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let n = self.rank();
        assert!(a.len() == n && b.len() == n, "arity mismatch in group product");
        let mut out = Coords::with_capacity(n);
        for i in 0..n {
            let mut x = a.0[i] + b.0[i];
            for &(j, k, q) in &self.by_target[i] {
                x += q * a.0[j] * b.0[k];
            }
            out.push(self.components[i].canonical(x));
        }
        GroupElement(out)
    }

    /// Inverse by back-substitution from the last coordinate.
    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        let n = self.rank();
        let mut x = smallvec::smallvec![0i64; n];
        for i in (0..n).rev() {
            let mut v = -a.0[i];
            for &(j, k, q) in &self.by_target[i] {
                v -= q * a.0[j] * x[k];
            }
            x[i] = self.components[i].canonical(v);
        }
        GroupElement(x)
    }

    /// `a^j` for any integer `j`, by repeated squaring.
    pub fn pow(&self, a: &GroupElement, j: i64) -> GroupElement {
        let mut base = if j < 0 { self.inverse(a) } else { a.clone() };
        let mut e = j.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `g·s·g⁻¹`.
    pub fn conjugate(&self, g: &GroupElement, s: &GroupElement) -> GroupElement {
        self.mul(&self.mul(g, s), &self.inverse(g))
    }

    pub fn commutes(&self, a: &GroupElement, b: &GroupElement) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn ball_size(&self, ball: Ball) -> usize {
        self.components
            .iter()
            .map(|c| match c {
                Component::Integer => 2 * ball.radius as usize + 1,
                Component::Cyclic(m) => *m as usize,
            })
            .product()
    }

    /// The `index`-th ball element in lexicographic order (last coordinate
    /// varies fastest). Lets scans split the ball into index ranges.
    pub fn ball_element(&self, ball: Ball, mut index: usize) -> GroupElement {
        let r = ball.radius as i64;
        let mut out: Coords = smallvec::smallvec![0; self.rank()];
        for (i, c) in self.components.iter().enumerate().rev() {
            let (width, offset) = match c {
                Component::Integer => (2 * r as usize + 1, -r),
                Component::Cyclic(m) => (*m as usize, 0),
            };
            out[i] = (index % width) as i64 + offset;
            index /= width;
        }
        GroupElement(out)
    }

    pub fn enumerate_ball(&self, ball: Ball) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.ball_size(ball)).map(move |i| self.ball_element(ball, i))
    }

    pub fn ball_elements(&self, ball: Ball) -> Vec<GroupElement> {
        self.enumerate_ball(ball).collect()
    }

    pub fn in_ball(&self, ball: Ball, a: &GroupElement) -> bool {
        a.0.iter()
            .zip(&self.components)
            .all(|(&x, c)| matches!(c, Component::Cyclic(_)) || x.unsigned_abs() <= ball.radius as u64)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, ball: Ball, rng: &mut R) -> GroupElement {
        let r = ball.radius as i64;
        GroupElement(
            self.components
                .iter()
                .map(|c| match c {
                    Component::Integer => rng.gen_range(-r..=r),
                    Component::Cyclic(m) => rng.gen_range(0..*m as i64),
                })
                .collect(),
        )
    }

    /// Signed representative of a coordinate: torsion residues above `m/2`
    /// are read as negative.
    fn signed(&self, i: usize, x: i64) -> i64 {
        match self.components[i] {
            Component::Cyclic(m) if 2 * x > m as i64 => x - m as i64,
            _ => x,
        }
    }

    /// Ordering key used to pick the smallest witness of a scan: total
    /// absolute size first, then coordinates in the order 0, 1, -1, 2, -2, …
    pub fn witness_key(&self, a: &GroupElement) -> (u64, SmallVec<[u64; 6]>) {
        let mut norm = 0u64;
        let mut digits = SmallVec::new();
        for (i, &x) in a.0.iter().enumerate() {
            let s = self.signed(i, x);
            norm += s.unsigned_abs();
            digits.push(match s {
                0 => 0,
                s if s > 0 => 2 * s as u64 - 1,
                s => 2 * s.unsigned_abs(),
            });
        }
        (norm, digits)
    }

    /// Key for a tuple of elements: summed size, then element keys in order.
    pub fn tuple_key(&self, elems: &[&GroupElement]) -> (u64, Vec<SmallVec<[u64; 6]>>) {
        let keys: Vec<_> = elems.iter().map(|a| self.witness_key(a)).collect();
        (keys.iter().map(|k| k.0).sum(), keys.into_iter().map(|k| k.1).collect())
    }
}

/// Checks the descriptor structurally, then the group axioms on `samples`
/// seeded random triples drawn from `ball`.
pub fn validate_descriptor(d: &GroupDescriptor, ball: Ball, samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new("validate-descriptor", Some(ball.radius));
    if let Err(e) = d.structural_check() {
        report.push(Clause::fail("triangularity", d.twist().len() as u64, Witness::new().value("error", &e)).with_note(e.to_string()));
        return report;
    }
    report.push(Clause::pass("triangularity", d.twist().len() as u64));

    let mut rng = sampling::rng(seed);
    let e = d.identity();
    let mut assoc = None;
    let mut ident = None;
    let mut inv = None;
    for _ in 0..samples {
        let a = d.random_element(ball, &mut rng);
        let b = d.random_element(ball, &mut rng);
        let c = d.random_element(ball, &mut rng);
        if assoc.is_none() {
            let lhs = d.mul(&d.mul(&a, &b), &c);
            let rhs = d.mul(&a, &d.mul(&b, &c));
            if lhs != rhs {
                assoc = Some(
                    Witness::new()
                        .element("a", &a)
                        .element("b", &b)
                        .element("c", &c)
                        .element("(ab)c", &lhs)
                        .element("a(bc)", &rhs),
                );
            }
        }
        if ident.is_none() && (d.mul(&e, &a) != a || d.mul(&a, &e) != a) {
            ident = Some(Witness::new().element("a", &a));
        }
        if inv.is_none() {
            let ai = d.inverse(&a);
            if !d.is_identity(&d.mul(&a, &ai)) || !d.is_identity(&d.mul(&ai, &a)) {
                inv = Some(Witness::new().element("a", &a).element("inverse", &ai));
            }
        }
    }
    let n = samples as u64;
    report.push(Clause::from_witness("associativity", n, assoc));
    report.push(Clause::from_witness("identity", n, ident));
    report.push(Clause::from_witness("inverse", n, inv));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::check::Verdict;
    use proptest::prelude::*;

    #[test]
    fn z5_products() {
        let g = catalog::z5_group();
        assert_eq!(g.mul(&g.elem(&[0, 0, 0, 0, 1]), &g.elem(&[0, 0, 1, 0, 0])), g.elem(&[2, 0, 1, 0, 1]));
        let a = g.elem(&[3, -1, 4, 1, -5]);
        assert_eq!(g.mul(&g.identity(), &a), a);
    }

    #[test]
    fn torsion_group_products() {
        let g = catalog::torsion_group();
        let a = g.elem(&[1, 0, 0, 0, 1]);
        let b = g.elem(&[0, 0, 1, 0, 0]);
        // [a + a' + 2ec']_4 = [1 + 0 + 2]_4
        assert_eq!(g.mul(&a, &b), g.elem(&[3, 0, 1, 0, 1]));
    }

    #[test]
    fn inverse_examples() {
        let g = catalog::z5_group();
        assert_eq!(g.inverse(&g.elem(&[1, 1, 1, 1, 1])), g.elem(&[1, 1, -1, -1, -1]));
        assert_eq!(g.inverse(&g.identity()), g.identity());
        let t = catalog::torsion_group();
        assert_eq!(t.inverse(&t.elem(&[1, 0, 1, 0, 1])), t.elem(&[1, 0, -1, 0, 3]));
    }

    #[test]
    fn power_examples() {
        let g = catalog::z5_group();
        assert_eq!(g.pow(&g.elem(&[0, 0, 1, 0, 1]), 2), g.elem(&[2, 0, 2, 0, 2]));
        assert_eq!(g.pow(&g.elem(&[4, 2, 1, 0, 1]), 0), g.identity());
        assert_eq!(g.pow(&g.elem(&[1, 0, 0, 0, 0]), 3), g.elem(&[3, 0, 0, 0, 0]));
    }

    #[test]
    fn arity_is_checked() {
        let g = catalog::z5_group();
        assert!(matches!(g.element(&[1, 2]), Err(GroupError::Arity { expected: 5, got: 2 })));
        let short = GroupElement::from_coords(smallvec::smallvec![1, 2]);
        assert!(g.checked_mul(&short, &g.identity()).is_err());
    }

    #[test]
    fn torsion_residues_are_canonical() {
        let t = catalog::torsion_group();
        assert_eq!(t.elem(&[-1, 5, -3, 2, 7]).coords(), &[3, 1, -3, 2, 3]);
    }

    #[test]
    fn validation_examples() {
        let r = validate_descriptor(&catalog::z5_group(), Ball::new(3), 500, 0);
        assert_eq!(r.verdict(), Verdict::Pass, "{r:?}");
        let r = validate_descriptor(&catalog::torsion_group(), Ball::new(3), 500, 0);
        assert_eq!(r.verdict(), Verdict::Pass, "{r:?}");

        let bad = GroupDescriptor::unchecked(vec![Component::Integer; 2], vec![TwistTerm::new(1, 1, 2, 1)]);
        let r = validate_descriptor(&bad, Ball::new(3), 500, 0);
        assert_eq!(r.verdict(), Verdict::Fail);
        assert_eq!(r.clause("triangularity").unwrap().verdict, Verdict::Fail);
        assert!(matches!(bad.structural_check(), Err(GroupError::Triangularity { term: 1, .. })));
    }

    #[test]
    fn torsion_twist_must_be_well_defined() {
        // Z/4 feeding Z with coefficient 1 depends on the residue chosen
        let d = GroupDescriptor::new(
            vec![Component::Integer, Component::Integer, Component::Cyclic(4)],
            vec![TwistTerm::new(1, 3, 2, 1)],
        );
        assert!(matches!(d, Err(GroupError::TorsionTwist { term: 1, component: 3 })));
        // Z/4 feeding Z/4 with coefficient 2 against an odd modulus shift fails too
        let d = GroupDescriptor::new(
            vec![Component::Cyclic(4), Component::Integer, Component::Cyclic(3)],
            vec![TwistTerm::new(1, 3, 2, 2)],
        );
        assert!(matches!(d, Err(GroupError::TorsionTwist { .. })));
        assert!(GroupDescriptor::new(vec![Component::Cyclic(1)], vec![]).is_err());
    }

    #[test]
    fn ball_counts() {
        assert_eq!(catalog::z5_group().enumerate_ball(Ball::new(1)).count(), 243);
        assert_eq!(catalog::torsion_group().enumerate_ball(Ball::new(1)).count(), 576);
        let z2 = GroupDescriptor::free_abelian(2);
        let all: Vec<_> = z2.enumerate_ball(Ball::new(0)).collect();
        assert_eq!(all, vec![z2.identity()]);
    }

    #[test]
    fn ball_is_lexicographic_and_deterministic() {
        let t = catalog::torsion_group();
        let first: Vec<_> = t.enumerate_ball(Ball::new(1)).collect();
        let second: Vec<_> = t.enumerate_ball(Ball::new(1)).collect();
        assert_eq!(first, second);
        assert!(first.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(first[0].coords(), &[0, 0, -1, -1, 0]);
        assert!(first.iter().all(|a| t.in_ball(Ball::new(1), a)));
    }

    #[test]
    fn witness_key_prefers_small_positive() {
        let g = catalog::z5_group();
        let mut v = [g.elem(&[-1, 0, 0, 0, 0]), g.elem(&[1, 0, 0, 0, 0]), g.elem(&[0, 2, 0, 0, 0])];
        v.sort_by_key(|a| g.witness_key(a));
        assert_eq!(v[0], g.elem(&[1, 0, 0, 0, 0]));
        let t = catalog::torsion_group();
        assert!(t.witness_key(&t.elem(&[0, 0, 0, 0, 1])) < t.witness_key(&t.elem(&[0, 0, 0, 0, 3])));
    }

    /// The closed form for powers in the Z^5 group, written out by hand.
    fn z5_power_closed_form(g: &[i64], j: i64) -> Vec<i64> {
        vec![
            j * g[0] + j * (j - 1) * g[4] * g[2],
            j * g[1] + j * (j - 1) * g[4] * g[3],
            j * g[2],
            j * g[3],
            j * g[4],
        ]
    }

    #[test]
    fn z5_powers_match_closed_form_on_ball() {
        let g = catalog::z5_group();
        for a in g.enumerate_ball(Ball::new(2)) {
            for j in 0..=5 {
                assert_eq!(g.pow(&a, j).coords(), z5_power_closed_form(a.coords(), j).as_slice());
            }
        }
    }

    #[test]
    fn inverse_is_involutive_on_balls() {
        for g in [catalog::z5_group(), catalog::torsion_group()] {
            for a in g.enumerate_ball(Ball::new(2)) {
                let ai = g.inverse(&a);
                assert!(g.is_identity(&g.mul(&a, &ai)));
                assert_eq!(g.inverse(&ai), a);
            }
        }
    }

    fn z5_elem() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-4i64..=4, 5)
    }

    proptest! {
        #[test]
        fn power_law(a in z5_elem(), j in -6i64..=6, k in -6i64..=6) {
            for g in [catalog::z5_group(), catalog::torsion_group()] {
                let a = g.elem(&a);
                prop_assert_eq!(g.pow(&a, j + k), g.mul(&g.pow(&a, j), &g.pow(&a, k)));
            }
        }
    }
}
