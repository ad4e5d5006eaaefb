//! Seeded self-test of the scalar kernel: exact field axioms, canonical
//! forms, and agreement with floating evaluation.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::Rng;

use super::{CircleElement, Cyclotomic, CyclotomicField};
use crate::check::{CheckReport, Clause, Witness};
use crate::sampling;

/// Absolute tolerance, scaled by the magnitude of the values compared.
pub const NUMERIC_TOLERANCE: f64 = 1e-9;

const CONDUCTORS: [u64; 8] = [1, 3, 4, 5, 7, 8, 12, 20];

fn random_element<R: Rng + ?Sized>(rng: &mut R, n: u64) -> Cyclotomic {
    let field = CyclotomicField::new(n);
    let mut x = Cyclotomic::zero_in(&field);
    for _ in 0..rng.gen_range(1..=3) {
        let num = BigInt::from(rng.gen_range(-6i64..=6));
        let den = BigInt::from(rng.gen_range(1i64..=4));
        let r = Cyclotomic::from_rational_in(&field, BigRational::new(num, den));
        x = &x + &(&r * &Cyclotomic::root_of_unity_in(&field, rng.gen_range(0..n as i64)));
    }
    x
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= NUMERIC_TOLERANCE * a.norm().max(b.norm()).max(1.0)
}

pub fn kernel_suite(samples: usize, seed: u64) -> CheckReport {
    let mut rng = sampling::substream(seed, "kernel");
    let mut axioms = None;
    let mut numeric = None;
    let mut canonical = None;
    let mut numeric_checked = 0u64;

    for i in 0..samples {
        let n = CONDUCTORS[i % CONDUCTORS.len()];
        let (a, b, c) = (random_element(&mut rng, n), random_element(&mut rng, n), random_element(&mut rng, n));
        let one = Cyclotomic::one(n);
        let zero = Cyclotomic::zero(n);

        let mut ok = &(&a + &b) + &c == &a + &(&b + &c)
            && &(&a * &b) * &c == &a * &(&b * &c)
            && &a + &b == &b + &a
            && &a * &b == &b * &a
            && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
            && &a + &(-&a) == zero
            && &a * &one == a;
        if !a.is_zero() {
            ok &= (&a * &a.inv().expect("nonzero")).is_one();
        }
        if !ok && axioms.is_none() {
            axioms = Some(Witness::new().value("a", &a).value("b", &b).value("c", &c));
        }

        let mut values = vec![a.clone(), b.clone(), &a + &b, &a * &b, a.conj(), a.norm_sq()];
        let mut expect = vec![
            a.eval_numeric(),
            b.eval_numeric(),
            a.eval_numeric() + b.eval_numeric(),
            a.eval_numeric() * b.eval_numeric(),
            a.eval_numeric().conj(),
            Complex64::new(a.eval_numeric().norm_sqr(), 0.0),
        ];
        if !a.is_zero() {
            values.push(a.inv().expect("nonzero"));
            expect.push(a.eval_numeric().inv());
        }
        let m = CONDUCTORS[(i + 3) % CONDUCTORS.len()];
        let mixed = random_element(&mut rng, m);
        values.push(&a * &mixed);
        expect.push(a.eval_numeric() * mixed.eval_numeric());
        numeric_checked += values.len() as u64;
        if numeric.is_none() {
            if let Some((v, e)) = values.iter().zip(&expect).find(|(v, e)| !close(v.eval_numeric(), **e)) {
                numeric = Some(Witness::new().value("value", v).value("expected", e));
            }
        }

        let field = a.field().clone();
        let zeta = Cyclotomic::root_of_unity_in(&field, 1);
        let mut z = Cyclotomic::one_in(&field);
        let mut sum = Cyclotomic::zero_in(&field);
        for _ in 0..n {
            sum = &sum + &z;
            z = &z * &zeta;
        }
        let p = CircleElement::new(rng.gen_range(0..n as i64), n);
        let q = CircleElement::new(rng.gen_range(0..n as i64), n);
        let roots = (Cyclotomic::from_circle(p, n).unwrap() * Cyclotomic::from_circle(q, n).unwrap())
            == Cyclotomic::from_circle(p * q, n).unwrap();
        let promoted = a.promote(n * 6).map(|x| x == a && x.promote(n * 12).map(|y| y == x).unwrap_or(false));
        let ok = z.is_one() && (n == 1 || sum.is_zero()) && roots && promoted == Ok(true) && a.conj().conj() == a;
        if !ok && canonical.is_none() {
            canonical = Some(Witness::new().value("conductor", n).value("a", &a));
        }
    }

    let n = samples as u64;
    CheckReport::new("kernel", None)
        .with(Clause::from_witness("field-axioms", n, axioms))
        .with(Clause::from_witness("numeric-agreement", numeric_checked, numeric).with_note(format!("tolerance {NUMERIC_TOLERANCE:e}")))
        .with(Clause::from_witness("canonical-form", n, canonical))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::Verdict;

    #[test]
    fn kernel_suite_passes() {
        let r = kernel_suite(120, 0);
        assert_eq!(r.verdict(), Verdict::Pass, "{r:?}");
    }
}
