//! Replays FAIL witnesses through the core operations.

use cartan_core::{CocycleDescriptor, GroupDescriptor, GroupElement, SubgroupDescriptor, TwistedAlgebra, Verdict, Witness};

use crate::report::CheckRecord;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Replay {
    pub check: String,
    pub clause: String,
    /// `None` when the clause kind has no replay rule.
    pub confirmed: Option<bool>,
}

fn elems<'a>(w: &'a Witness, names: &[&str]) -> Option<Vec<&'a GroupElement>> {
    names.iter().map(|n| w.get(n)).collect()
}

/// Re-evaluates one witness. Clause names are matched on their last path
/// segment, so merged records replay like the originals.
pub fn replay_witness(
    d: &GroupDescriptor,
    c: &CocycleDescriptor,
    s: &SubgroupDescriptor,
    clause: &str,
    w: &Witness,
) -> Option<bool> {
    let leaf = clause.rsplit('/').next().unwrap_or(clause);
    match leaf {
        "abelian" => elems(w, &["s", "t"]).map(|v| s.contains(v[0]) && s.contains(v[1]) && !d.commutes(v[0], v[1])),
        "closure" => elems(w, &["s", "t"]).map(|v| !s.contains(&d.mul(v[0], v[1])) || !s.contains(&d.inverse(v[0]))),
        "coordinatewise" => elems(w, &["s", "t"]).map(|v| {
            let sum: Vec<i64> = v[0].coords().iter().zip(v[1].coords()).map(|(x, y)| x + y).collect();
            d.mul(v[0], v[1]) != d.elem(&sum)
        }),
        "c-symmetric-on-S" => elems(w, &["s", "t"]).map(|v| c.eval(v[0], v[1]) != c.eval(v[1], v[0])),
        "c-trivial-on-S" => elems(w, &["s", "t"]).map(|v| !c.eval(v[0], v[1]).is_identity()),
        "normal" => elems(w, &["g", "s"]).map(|v| s.contains(v[1]) && !s.contains(&d.mul(&d.mul(&d.inverse(v[0]), v[1]), v[0]))),
        "immediately-centralizing" => {
            let v = elems(w, &["nu", "t"])?;
            let j: i64 = w.values.get("j")?.parse().ok()?;
            Some(s.contains(v[1]) && !d.commutes(v[0], v[1]) && d.commutes(v[0], &d.pow(v[1], j)))
        }
        "commutes-with-Cc(S)" => {
            let x = w.get("s")?;
            let h = support_from(w)?;
            let alg = TwistedAlgebra::new(d.clone(), c.clone());
            let h = cartan_core::AlgebraElement::from_terms(h.into_iter().map(|g| (g, alg.one())));
            let dx = alg.delta(x);
            Some(!alg.convolve(&h, &dx).sub(&alg.convolve(&dx, &h)).is_zero())
        }
        "support-outside-S" => support_from(w).map(|h| h.iter().all(|g| s.contains(g))),
        "separation" => elems(w, &["rep-a", "rep-b"]).map(|v| v[0] != v[1] && s.contains(&d.mul(&d.inverse(v[0]), v[1]))),
        "in-coset" => elems(w, &["g", "rep"]).map(|v| !s.contains(&d.mul(&d.inverse(v[1]), v[0]))),
        _ => None,
    }
}

fn support_from(w: &Witness) -> Option<Vec<GroupElement>> {
    let h: Vec<GroupElement> = w
        .elements
        .iter()
        .filter(|(k, _)| k.starts_with('h') && k[1..].chars().all(|ch| ch.is_ascii_digit()))
        .map(|(_, g)| g.clone())
        .collect();
    (!h.is_empty()).then_some(h)
}

/// Replays every failing clause of a record.
pub fn replay_record(d: &GroupDescriptor, c: &CocycleDescriptor, s: &SubgroupDescriptor, rec: &CheckRecord) -> Vec<Replay> {
    rec.clauses
        .iter()
        .filter(|cl| cl.verdict == Verdict::Fail)
        .map(|cl| Replay {
            check: rec.check.clone(),
            clause: cl.name.clone(),
            confirmed: cl.witness.as_ref().and_then(|w| replay_witness(d, c, s, &cl.name, w)),
        })
        .collect()
}
