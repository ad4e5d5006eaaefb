use thiserror::Error;

use crate::group::GroupElement;
use crate::scalars::CircleElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed angle {0:?}, expected \"p/q\"")]
    Angle(String),
    #[error("malformed cyclotomic {0:?}, expected \"N:[a/b,...]\"")]
    Cyclotomic(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("angle {angle} is not an N-th root of unity for conductor N={conductor}")]
    ConductorMismatch { angle: CircleElement, conductor: u64 },
    #[error("cannot promote conductor {from} to {to}: not a multiple")]
    Promotion { from: u64, to: u64 },
    #[error("zero has no multiplicative inverse")]
    DivisionByZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("element has {got} coordinates, group has {expected} components")]
    Arity { expected: usize, got: usize },
    #[error("cyclic component {component} must have modulus at least 2")]
    Modulus { component: usize },
    #[error("twist term {term} refers to component {index} outside 1..={len}")]
    TwistIndex { term: usize, index: usize, len: usize },
    #[error("twist term {term} (target {target}, left {left}, right {right}) is not strictly triangular")]
    Triangularity {
        term: usize,
        target: usize,
        left: usize,
        right: usize,
    },
    #[error("twist term {term} is not well defined modulo the torsion of component {component}")]
    TorsionTwist { term: usize, component: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CocycleError {
    #[error("cocycle term {term} refers to component {index} outside 1..={len}")]
    Index { term: usize, index: usize, len: usize },
    #[error("cocycle term {term} is not well defined on the torsion of component {component}")]
    Torsion { term: usize, component: usize },
    #[error("elements {0:?} and {1:?} do not commute")]
    NotCommuting(GroupElement, GroupElement),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubgroupError {
    #[error("subgroup has {got} scalings, group has {expected} components")]
    Arity { expected: usize, got: usize },
    #[error("scaling {scaling} does not divide the modulus {modulus} of component {component}")]
    Divisibility {
        component: usize,
        scaling: u64,
        modulus: u64,
    },
    #[error("{0:?} is not a member of the subgroup")]
    NotMember(GroupElement),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("cocycle is not trivial on the subgroup: c({0:?}, {1:?}) != 1")]
    CocycleNontrivial(GroupElement, GroupElement),
    #[error("subgroup is not normal: conjugating generator {generator:?} by {g:?} leaves it")]
    NotNormal { g: GroupElement, generator: GroupElement },
    #[error("character has {got} angles, subgroup has {expected} free components")]
    CharacterArity { expected: usize, got: usize },
    #[error("angle {angle} on component {component} ignores its torsion order {order}")]
    CharacterTorsion {
        component: usize,
        angle: CircleElement,
        order: u64,
    },
    #[error("r[gh]^-1 r[g] r[h] = {0:?} is not in the subgroup")]
    TransversalDefect(GroupElement),
    #[error("closed-form weyl cocycle {closed} disagrees with the convolution route {convolution}")]
    DualPathMismatch { closed: String, convolution: String },
    #[error("arrows are not composable: range {range} differs from source {source_character}")]
    NotComposable {
        range: String,
        source_character: String,
    },
    #[error(transparent)]
    Subgroup(#[from] SubgroupError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
