//! Freeness certificates from the proportionality inequalities, slide
//! expansion, and the expansion procedure for larger collections.

use crate::criteria::{
    first_proportional_violation, proportional_records, proportional_violations, InequalityRecord,
    Triple, TwistCollection,
};
use crate::error::{Error, Result};
use crate::homology::{geo, twist_apply, Curve, TwistPower};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// One slide expansion: item `index` has its exponent doubled and the
/// conjugates `T_index^{sign * s_index}(x_l)` are appended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlideStep {
    pub index: usize,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessCertificate {
    pub original: TwistCollection,
    /// The collection the inequalities were checked on.
    pub collection: TwistCollection,
    pub evidence: Vec<InequalityRecord>,
    pub derivation: Vec<SlideStep>,
}

impl FreenessCertificate {
    /// Rank of the free group generated by the original collection.
    pub fn rank(&self) -> usize {
        self.original.len()
    }

    pub fn verify(&self) -> Result<()> {
        let mut current = self.original.clone();
        for step in &self.derivation {
            let e = slide_expand(&current, step.index, step.sign)?;
            if !e.dropped.is_empty() || !e.conflicts.is_empty() {
                return Err(Error::Replay("derivation step loses a generator".into()));
            }
            current = e.collection;
        }
        if current != self.collection {
            return Err(Error::Replay(
                "derivation does not reach the certified collection".into(),
            ));
        }
        if self.evidence != proportional_records(&self.collection) {
            return Err(Error::Replay(
                "evidence is not the full inequality list".into(),
            ));
        }
        if let Some(r) = self.evidence.iter().find(|r| !r.holds()) {
            return Err(Error::Replay(format!(
                "inequality at {:?} fails: {} > {}",
                r.triple, r.lhs, r.rhs
            )));
        }
        if let Some(p) = weak_pair(&self.collection) {
            return Err(Error::Replay(format!(
                "pair {p:?} is too close for ping pong"
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PingPong {
    Certified {
        certificate: FreenessCertificate,
    },
    NotApplicable {
        violations: Vec<Triple>,
        /// For two curves: both `s_i * geo` must be at least 2.
        #[serde(skip_serializing_if = "Option::is_none")]
        pair: Option<[usize; 2]>,
    },
}

/// A two-element collection only plays ping pong when each exponent times
/// the intersection number is at least 2. With three or more curves this is
/// implied by proportionality.
fn weak_pair(c: &TwistCollection) -> Option<[usize; 2]> {
    if c.len() != 2 {
        return None;
    }
    let g = geo(&c.items()[0].curve, &c.items()[1].curve);
    let two = BigInt::from(2);
    c.items()
        .iter()
        .any(|t| &g * t.exponent < two)
        .then_some([0, 1])
}

pub fn pingpong_certificate(c: &TwistCollection) -> PingPong {
    let violations = proportional_violations(c);
    let pair = weak_pair(c);
    if violations.is_empty() && pair.is_none() {
        PingPong::Certified {
            certificate: FreenessCertificate {
                original: c.clone(),
                collection: c.clone(),
                evidence: proportional_records(c),
                derivation: Vec::new(),
            },
        }
    } else {
        PingPong::NotApplicable { violations, pair }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlideExpansion {
    pub collection: TwistCollection,
    /// Conjugates added to the collection, in order.
    pub appended: Vec<TwistPower>,
    /// Conjugates equal to an existing item with the same exponent.
    pub dropped: Vec<TwistPower>,
    /// Conjugates landing on an existing curve with another exponent.
    pub conflicts: Vec<TwistPower>,
}

pub fn slide_expand(c: &TwistCollection, j: usize, sign: i8) -> Result<SlideExpansion> {
    let actor = c.items().get(j).ok_or(Error::BadIndex(j))?.clone();
    if sign != 1 && sign != -1 {
        return Err(Error::Replay(format!(
            "slide sign must be 1 or -1, got {sign}"
        )));
    }
    let k = BigInt::from(sign) * actor.exponent;
    let mut items = c.items().to_vec();
    items[j].exponent *= 2;
    let mut exponent_of: HashMap<Curve, u64> = items
        .iter()
        .map(|t| (t.curve.clone(), t.exponent))
        .collect();

    let (mut appended, mut dropped, mut conflicts) = (Vec::new(), Vec::new(), Vec::new());
    for (l, item) in c.items().iter().enumerate() {
        if l == j {
            continue;
        }
        let curve =
            Curve::from_primitive(twist_apply(&actor.curve, k.clone(), item.curve.vector()));
        let tp = TwistPower {
            curve,
            exponent: item.exponent,
        };
        match exponent_of.get(&tp.curve) {
            Some(&e) if e == tp.exponent => dropped.push(tp),
            Some(_) => conflicts.push(tp),
            None => {
                exponent_of.insert(tp.curve.clone(), tp.exponent);
                appended.push(tp.clone());
                items.push(tp);
            }
        }
    }
    Ok(SlideExpansion {
        collection: TwistCollection::new(items)?,
        appended,
        dropped,
        conflicts,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProcedureConfig {
    pub max_steps: usize,
    pub max_curves: usize,
}

impl Default for ProcedureConfig {
    fn default() -> Self {
        ProcedureConfig {
            max_steps: 16,
            max_curves: 2048,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InconclusiveReason {
    StepsExhausted,
    /// An appended conjugate already was a generator.
    DuplicateConjugate,
    ExponentConflict,
    SizeBudget,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ProcedureOutcome {
    FreeCertified {
        rank: usize,
        certificate: FreenessCertificate,
    },
    /// Two twist powers with `s * geo <= 2`, found after `steps` expansions.
    PairFound {
        pair: [TwistPower; 2],
        #[serde(with = "crate::intser")]
        product: BigInt,
        small: bool,
        steps: usize,
        derivation: Vec<SlideStep>,
    },
    Inconclusive {
        steps: usize,
        reason: InconclusiveReason,
        derivation: Vec<SlideStep>,
        size: usize,
    },
}

fn pairwise_geo_sum(c: &TwistCollection) -> BigInt {
    let items = c.items();
    let mut total = BigInt::default();
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            total += geo(&items[i].curve, &items[j].curve);
        }
    }
    total
}

/// Lexicographically first pair whose known exponents times the
/// intersection number is at most 2.
fn small_pair(c: &TwistCollection, known: &[u64]) -> Option<(usize, usize, BigInt)> {
    let items = c.items();
    let two = BigInt::from(2);
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            let product = geo(&items[i].curve, &items[j].curve) * known[i].max(known[j]);
            if product <= two {
                return Some((i, j, product));
            }
        }
    }
    None
}

fn inconclusive(
    steps: usize,
    reason: InconclusiveReason,
    derivation: Vec<SlideStep>,
    size: usize,
) -> ProcedureOutcome {
    ProcedureOutcome::Inconclusive {
        steps,
        reason,
        derivation,
        size,
    }
}

/// Repeatedly slide-expand at the middle of the first violated inequality
/// until the collection is proportional (the original collection is then
/// free), a pair with `s * geo <= 2` appears, or a budget runs out.
///
/// A pair is judged with each generator's exponent as it entered the
/// collection, since doubling an exponent does not remove the original
/// power from the group.
pub fn procedure_run(c: &TwistCollection, config: ProcedureConfig) -> ProcedureOutcome {
    let mut current = c.clone();
    let mut known: Vec<u64> = c.items().iter().map(|t| t.exponent).collect();
    let mut derivation = Vec::new();
    let mut steps = 0;
    loop {
        if let Some((i, j, product)) = small_pair(&current, &known) {
            let items = current.items();
            return ProcedureOutcome::PairFound {
                pair: [items[i].clone(), items[j].clone()],
                small: product <= BigInt::from(2),
                product,
                steps,
                derivation,
            };
        }
        let violation = first_proportional_violation(current.items());
        let Some(Triple { middle, .. }) = violation else {
            let certificate = FreenessCertificate {
                original: c.clone(),
                evidence: proportional_records(&current),
                collection: current,
                derivation,
            };
            return ProcedureOutcome::FreeCertified {
                rank: c.len(),
                certificate,
            };
        };
        if steps >= config.max_steps {
            let size = current.len();
            return inconclusive(steps, InconclusiveReason::StepsExhausted, derivation, size);
        }

        let mut best: Option<(BigInt, i8, SlideExpansion)> = None;
        for sign in [1i8, -1] {
            let e = slide_expand(&current, middle, sign).expect("index from violation");
            let cost = pairwise_geo_sum(&e.collection);
            if best.as_ref().is_none_or(|(b, _, _)| cost < *b) {
                best = Some((cost, sign, e));
            }
        }
        let (_, sign, expansion) = best.expect("two candidates");
        derivation.push(SlideStep {
            index: middle,
            sign,
        });
        steps += 1;
        let size = expansion.collection.len();
        if !expansion.conflicts.is_empty() {
            return inconclusive(
                steps,
                InconclusiveReason::ExponentConflict,
                derivation,
                size,
            );
        }
        if !expansion.dropped.is_empty() {
            return inconclusive(
                steps,
                InconclusiveReason::DuplicateConjugate,
                derivation,
                size,
            );
        }
        if size > config.max_curves {
            return inconclusive(steps, InconclusiveReason::SizeBudget, derivation, size);
        }
        known.extend(expansion.appended.iter().map(|t| t.exponent));
        current = expansion.collection;
    }
}
