//! Euclidean reduction of up to three uniform twist powers.
//!
//! Each step either merges two twist powers about the same curve into one
//! (exponent = gcd), or replaces a curve `t` by `T_a^k(t)` for an actor `a`
//! in the collection and `k` a multiple of the actor's exponent. Since
//! `T_{T_a^k(t)}^s = T_a^k T_t^s T_a^-k`, the generated subgroup never
//! changes. A conjugation is only made for a triple violating the
//! comparable inequality, and then the intersection number of `t` with the
//! third curve strictly drops, so the process stops.

use crate::criteria::{comparable_violations, uniform_exponent, TwistCollection};
use crate::error::{Error, Result};
use crate::homology::{twist_apply, twist_matrix, Curve, Mat2, TwistPower};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::rc::Rc;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReductionMove {
    /// Replace item `target` by `T_actor^exponent (target)`.
    ConjugateByTwistPower {
        actor: usize,
        #[serde(with = "crate::intser")]
        exponent: BigInt,
        target: usize,
        result: Curve,
    },
    /// Items `keep < drop` share a curve; `keep` takes the gcd exponent and
    /// `drop` is removed.
    MergeParallel {
        keep: usize,
        drop: usize,
        exponent: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub initial: Vec<TwistPower>,
    pub moves: Vec<ReductionMove>,
    #[serde(rename = "final")]
    pub final_items: Vec<TwistPower>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    /// Curves are distinct and (if there are three) comparable.
    Stable,
    Moved {
        items: Vec<TwistPower>,
        step: ReductionMove,
    },
}

fn check_input(items: &[TwistPower]) -> Result<()> {
    if items.len() > 3 {
        return Err(Error::TooManyCurves(items.len()));
    }
    if !items.is_empty() && uniform_exponent(items).is_none() {
        return Err(Error::MixedPowers);
    }
    Ok(())
}

/// Power `k` (a multiple of `s`) of `T_actor` minimizing the intersection of
/// `T_actor^k(target)` with `other`; the signed pairing lands in
/// `(-|d|/2, |d|/2]`.
fn centered_power(actor: &Curve, target: &Curve, other: &Curve, s: u64) -> BigInt {
    let (a, t, o) = (actor.vector(), target.vector(), other.vector());
    let r = o.det(t);
    let d = a.det(t) * o.det(a) * s;
    let modulus = d.abs();
    let mut rem = r.mod_floor(&modulus);
    if &rem * 2 > modulus {
        rem -= &modulus;
    }
    let q = (rem - &r) / &d;
    q * s
}

pub fn reduce_step(items: &[TwistPower]) -> Result<StepOutcome> {
    check_input(items)?;
    for keep in 0..items.len() {
        for drop in keep + 1..items.len() {
            if items[keep].curve == items[drop].curve {
                let step = ReductionMove::MergeParallel {
                    keep,
                    drop,
                    exponent: items[keep].exponent.gcd(&items[drop].exponent),
                };
                let items = apply_move(items, &step)?;
                return Ok(StepOutcome::Moved { items, step });
            }
        }
    }
    if items.len() < 3 {
        return Ok(StepOutcome::Stable);
    }

    let collection = TwistCollection::new(items.to_vec())?;
    let mut best: Option<((BigInt, usize, usize), ReductionMove)> = None;
    for triple in comparable_violations(&collection) {
        let actor = triple.middle;
        for (target, other) in [(triple.first, triple.last), (triple.last, triple.first)] {
            let exponent = centered_power(
                &items[actor].curve,
                &items[target].curve,
                &items[other].curve,
                items[actor].exponent,
            );
            let result = Curve::from_primitive(twist_apply(
                &items[actor].curve,
                exponent.clone(),
                items[target].curve.vector(),
            ));
            // smallest resulting representative, then (actor, target)
            let key = (result.vector().max_abs(), actor, target);
            if best.as_ref().is_none_or(|(k, _)| key < *k) {
                best = Some((
                    key,
                    ReductionMove::ConjugateByTwistPower {
                        actor,
                        exponent,
                        target,
                        result,
                    },
                ));
            }
        }
    }
    match best {
        None => Ok(StepOutcome::Stable),
        Some((_, step)) => {
            let items = apply_move(items, &step)?;
            Ok(StepOutcome::Moved { items, step })
        }
    }
}

/// Apply one move, checking it is well formed.
pub fn apply_move(items: &[TwistPower], mv: &ReductionMove) -> Result<Vec<TwistPower>> {
    let get = |i: usize| items.get(i).ok_or(Error::BadIndex(i));
    match mv {
        ReductionMove::ConjugateByTwistPower {
            actor,
            exponent,
            target,
            result,
        } => {
            let (a, t) = (get(*actor)?, get(*target)?);
            if actor == target {
                return Err(Error::Replay("actor equals target".into()));
            }
            if exponent.is_zero() || !(exponent % a.exponent).is_zero() {
                return Err(Error::Replay(format!(
                    "exponent {exponent} is not a nonzero multiple of {}",
                    a.exponent
                )));
            }
            let image =
                Curve::from_primitive(twist_apply(&a.curve, exponent.clone(), t.curve.vector()));
            if &image != result {
                return Err(Error::Replay(format!(
                    "conjugate is {image}, transcript says {result}"
                )));
            }
            let mut out = items.to_vec();
            out[*target].curve = image;
            Ok(out)
        }
        ReductionMove::MergeParallel {
            keep,
            drop,
            exponent,
        } => {
            let (k, d) = (get(*keep)?, get(*drop)?);
            if keep >= drop || k.curve != d.curve {
                return Err(Error::Replay("merge of non-parallel items".into()));
            }
            if *exponent != k.exponent.gcd(&d.exponent) {
                return Err(Error::Replay("merged exponent is not the gcd".into()));
            }
            let mut out = items.to_vec();
            out[*keep].exponent = *exponent;
            out.remove(*drop);
            Ok(out)
        }
    }
}

pub fn euclid_reduce(items: &[TwistPower]) -> Result<(TwistCollection, Transcript)> {
    check_input(items)?;
    let mut current = items.to_vec();
    let mut moves = Vec::new();
    while let StepOutcome::Moved { items, step } = reduce_step(&current)? {
        current = items;
        moves.push(step);
    }
    let transcript = Transcript {
        initial: items.to_vec(),
        moves,
        final_items: current.clone(),
    };
    Ok((TwistCollection::new(current)?, transcript))
}

/// A generator written in terms of another generating list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorExpr {
    Gen(usize),
    /// `by^power * inner * by^-power`
    Conjugate {
        by: Rc<GeneratorExpr>,
        power: BigInt,
        inner: Rc<GeneratorExpr>,
    },
    Power {
        base: Rc<GeneratorExpr>,
        exponent: BigInt,
    },
    Product(Vec<Rc<GeneratorExpr>>),
}

impl GeneratorExpr {
    pub fn evaluate(&self, gens: &[Mat2]) -> Result<Mat2> {
        Ok(match self {
            GeneratorExpr::Gen(i) => gens.get(*i).ok_or(Error::BadIndex(*i))?.clone(),
            GeneratorExpr::Conjugate { by, power, inner } => {
                let b = by.evaluate(gens)?;
                let p = b.pow(power);
                let q = b.pow(&-power);
                &(&p * &inner.evaluate(gens)?) * &q
            }
            GeneratorExpr::Power { base, exponent } => base.evaluate(gens)?.pow(exponent),
            GeneratorExpr::Product(factors) => {
                let mut acc = Mat2::identity();
                for f in factors {
                    acc = &acc * &f.evaluate(gens)?;
                }
                acc
            }
        })
    }
}

impl Transcript {
    /// Every intermediate collection, starting with `initial`.
    pub fn states(&self) -> Result<Vec<Vec<TwistPower>>> {
        let mut states = vec![self.initial.clone()];
        for mv in &self.moves {
            let next = apply_move(states.last().expect("nonempty"), mv)?;
            states.push(next);
        }
        Ok(states)
    }

    pub fn replay(&self) -> Result<Vec<TwistPower>> {
        Ok(self.states()?.pop().expect("nonempty"))
    }

    /// Replay the moves, compare with `final`, and check each conjugation as
    /// a matrix identity.
    pub fn verify(&self) -> Result<()> {
        let states = self.states()?;
        if states.last() != Some(&self.final_items) {
            return Err(Error::Replay(
                "replay does not reach the final collection".into(),
            ));
        }
        for (before, mv) in states.iter().zip(&self.moves) {
            if let ReductionMove::ConjugateByTwistPower {
                actor,
                exponent,
                target,
                result,
            } = mv
            {
                let shift = twist_matrix(&before[*actor].curve, exponent.clone());
                let s = before[*target].exponent;
                let lhs = twist_matrix(result, s);
                let rhs = &(&shift * &twist_matrix(&before[*target].curve, s)) * &shift.inverse();
                if lhs != rhs {
                    return Err(Error::Replay(format!("conjugation to {result} fails")));
                }
            }
        }
        Ok(())
    }

    /// Each final generator as an expression in the initial generators.
    pub fn forward_exprs(&self) -> Result<Vec<GeneratorExpr>> {
        let states = self.states()?;
        let mut exprs: Vec<Rc<GeneratorExpr>> = (0..self.initial.len())
            .map(|i| Rc::new(GeneratorExpr::Gen(i)))
            .collect();
        for (before, mv) in states.iter().zip(&self.moves) {
            match mv {
                ReductionMove::ConjugateByTwistPower {
                    actor,
                    exponent,
                    target,
                    ..
                } => {
                    let power = exponent / before[*actor].exponent;
                    exprs[*target] = Rc::new(GeneratorExpr::Conjugate {
                        by: exprs[*actor].clone(),
                        power,
                        inner: exprs[*target].clone(),
                    });
                }
                ReductionMove::MergeParallel { keep, drop, .. } => {
                    let (a, b) = (
                        BigInt::from(before[*keep].exponent),
                        BigInt::from(before[*drop].exponent),
                    );
                    let eg = a.extended_gcd(&b);
                    exprs[*keep] = Rc::new(GeneratorExpr::Product(vec![
                        Rc::new(GeneratorExpr::Power {
                            base: exprs[*keep].clone(),
                            exponent: eg.x,
                        }),
                        Rc::new(GeneratorExpr::Power {
                            base: exprs[*drop].clone(),
                            exponent: eg.y,
                        }),
                    ]));
                    exprs.remove(*drop);
                }
            }
        }
        Ok(exprs.into_iter().map(|e| (*e).clone()).collect())
    }

    /// Each initial generator as an expression in the final generators.
    pub fn backward_exprs(&self) -> Result<Vec<GeneratorExpr>> {
        let states = self.states()?;
        let mut exprs: Vec<Rc<GeneratorExpr>> = (0..self.final_items.len())
            .map(|i| Rc::new(GeneratorExpr::Gen(i)))
            .collect();
        for (before, mv) in states.iter().zip(&self.moves).rev() {
            match mv {
                ReductionMove::ConjugateByTwistPower {
                    actor,
                    exponent,
                    target,
                    ..
                } => {
                    let power = -(exponent / before[*actor].exponent);
                    exprs[*target] = Rc::new(GeneratorExpr::Conjugate {
                        by: exprs[*actor].clone(),
                        power,
                        inner: exprs[*target].clone(),
                    });
                }
                ReductionMove::MergeParallel {
                    keep,
                    drop,
                    exponent,
                } => {
                    let merged = exprs[*keep].clone();
                    let part = |s: u64| {
                        Rc::new(GeneratorExpr::Power {
                            base: merged.clone(),
                            exponent: BigInt::from(s / exponent),
                        })
                    };
                    exprs[*keep] = part(before[*keep].exponent);
                    exprs.insert(*drop, part(before[*drop].exponent));
                }
            }
        }
        Ok(exprs.into_iter().map(|e| (*e).clone()).collect())
    }
}
