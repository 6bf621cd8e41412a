//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use num_bigint::BigInt;
use num_integer::Integer;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::process::ExitCode;
use twistlab::euclid::apply_move;
use twistlab::*;

fn curve(a: i64, b: i64) -> Curve {
    Curve::new(a, b).unwrap()
}

fn uniform(curves: &[(i64, i64)], s: u64) -> Vec<TwistPower> {
    curves
        .iter()
        .map(|&(a, b)| TwistPower::new(curve(a, b), s).unwrap())
        .collect()
}

fn collection(curves: &[(i64, i64)], s: u64) -> TwistCollection {
    TwistCollection::new(uniform(curves, s)).unwrap()
}

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, ok: impl Into<String>, bad: impl Into<String>) -> Outcome {
    if cond {
        Ok(ok.into())
    } else {
        Err(bad.into())
    }
}

fn worked_examples() -> Outcome {
    let cases: [(&[(i64, i64)], GroupType); 4] = [
        (&[(1, 0), (1, 0), (1, 0)], GroupType::free(1)),
        (&[(1, 0), (1, 3), (-11, 3)], GroupType::free(2)),
        (&[(1, 0), (4, 3), (1, 6)], GroupType::free(3)),
        (&[(1, 0), (7, 3), (1, 4)], GroupType::SL2Z),
    ];
    let mut got = Vec::new();
    for (curves, expected) in cases {
        let verdict = classify_three_uniform(&uniform(curves, 1)).map_err(|e| e.to_string())?;
        if verdict.group != expected {
            return Err(format!("expected {expected}, got {}", verdict.group));
        }
        got.push(verdict.group.to_string());
    }
    Ok(got.join(", "))
}

fn squares_triple() -> Outcome {
    let verdict = classify_three_uniform(&uniform(&[(1, 0), (0, 1), (1, 1)], 2))
        .map_err(|e| e.to_string())?;
    let gens = uniform(&[(1, 0), (0, 1)], 2);
    let w = [WordLetter::pos(0), WordLetter::pos(1)];
    let lhs = word_to_matrix(&gens, &w).map_err(|e| e.to_string())?;
    let rhs = -&twist_matrix(&curve(1, 1), -2);
    check(
        verdict.group == GroupType::FreeTimesC2 && lhs == rhs,
        format!("{} and T_x^2 T_y^2 = {lhs} = iota T_z^-2", verdict.group),
        format!("verdict {} / identity {}", verdict.group, lhs == rhs),
    )
}

fn relation_oracle() -> Outcome {
    let three = uniform(&[(1, 0), (0, 1), (1, 1)], 2);
    let two = uniform(&[(1, 0), (0, 1)], 2);
    let found = relation_search(&three, 6);
    let none = relation_search(&two, 8);
    let valid = found
        .as_ref()
        .is_some_and(|w| word_to_matrix(&three, w).is_ok_and(|m| m.is_identity()));
    check(
        valid && none.is_none(),
        format!(
            "relation of length {} among three squares; none for two squares at depth 8",
            found.as_ref().map_or(0, |w| w.len())
        ),
        format!("three squares: {found:?}; two squares: {none:?}"),
    )
}

fn pair_collections() -> Outcome {
    let cases = [
        (
            collection(&[(1, 0), (1, 2), (3, 2), (5, 4)], 1),
            GroupType::free(2),
        ),
        (collection(&[(1, 0), (1, 2), (2, 5)], 1), GroupType::SL2Z),
        (
            collection(&[(1, 0), (0, 1), (1, 1)], 2),
            GroupType::FreeTimesC2,
        ),
    ];
    let mut got = Vec::new();
    for (c, expected) in cases {
        let v = classify_pair_collection(&c, (0, 1)).map_err(|e| e.to_string())?;
        if v.group != expected {
            return Err(format!("expected {expected}, got {}", v.group));
        }
        got.push(v.group.to_string());
    }
    Ok(got.join(", "))
}

fn procedure() -> Outcome {
    let eg7 = collection(&[(1, 0), (1, 3), (1, 10), (3, 17)], 1);
    let within_two = ProcedureConfig {
        max_steps: 2,
        ..ProcedureConfig::default()
    };
    let eg7_out = procedure_run(&eg7, within_two);
    let eg7_ok = matches!(&eg7_out, ProcedureOutcome::FreeCertified { rank: 4, .. });

    let eg8 = collection(&[(1, 0), (0, 1), (1, 1), (2, 1), (3, 1)], 4);
    let eight = ProcedureConfig {
        max_steps: 8,
        ..ProcedureConfig::default()
    };
    let eg8_out = procedure_run(&eg8, eight);
    let eg8_ok = matches!(eg8_out, ProcedureOutcome::Inconclusive { .. });

    let summary = |o: &ProcedureOutcome| match o {
        ProcedureOutcome::FreeCertified { rank, certificate } => {
            format!(
                "free rank {rank} after {} expansions",
                certificate.derivation.len()
            )
        }
        ProcedureOutcome::PairFound { steps, .. } => format!("pair found after {steps} steps"),
        ProcedureOutcome::Inconclusive { steps, reason, .. } => {
            format!("inconclusive after {steps} steps ({reason:?})")
        }
    };
    check(
        eg7_ok && eg8_ok,
        format!("eg7 {}; eg8 {}", summary(&eg7_out), summary(&eg8_out)),
        format!(
            "eg7 {} (expected free rank 4 within 2 expansions); eg8 {}",
            summary(&eg7_out),
            summary(&eg8_out)
        ),
    )
}

fn congruence_indices() -> Outcome {
    let got: Vec<u64> = (2..=5)
        .map(sl2_mod_order)
        .collect::<Result<_>>()
        .map_err(|e| e.to_string())?;
    check(
        got == [6, 24, 48, 120],
        format!("{got:?}"),
        format!("{got:?}"),
    )
}

fn farey() -> Outcome {
    let mut cells = Vec::new();
    for s in 3..=5 {
        let st = farey_quotient(s).map_err(|e| e.to_string())?;
        cells.push((st.v, st.e, st.f));
    }
    if cells != [(4, 6, 4), (6, 12, 8), (12, 30, 20)] {
        return Err(format!("cells {cells:?}"));
    }
    for s in 3..=12u64 {
        let st = farey_quotient(s).map_err(|e| e.to_string())?;
        if 6 * st.euler != st.v as i64 * (6 - s as i64) {
            return Err(format!("euler {} at s={s} with v={}", st.euler, st.v));
        }
    }
    Ok(format!("{cells:?}; euler = v(6-s)/6 for s = 3..12"))
}

fn ns_structure() -> Outcome {
    let expected = [
        GroupType::SL2Z,
        GroupType::FreeTimesC2,
        GroupType::free(3),
        GroupType::free(5),
        GroupType::free(11),
        GroupType::Free {
            rank: Cardinality::Infinite,
        },
    ];
    let lists: [&[(i64, i64)]; 3] = [
        &[(1, 0), (0, 1), (1, 1), (1, -1)],
        &[(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1)],
        &[
            (1, 0),
            (0, 1),
            (1, 1),
            (1, -1),
            (1, 2),
            (2, 1),
            (1, -2),
            (-2, 1),
            (2, 3),
            (-2, 3),
            (2, 5),
            (5, 2),
        ],
    ];
    let mut got = Vec::new();
    for (s, group) in (1..=6).zip(expected) {
        let st = n_s_structure(s);
        if st.group != group {
            return Err(format!("s={s}: expected {group}, got {}", st.group));
        }
        if (3..=5).contains(&s) {
            let want: Vec<Curve> = lists[s as usize - 3]
                .iter()
                .map(|&(a, b)| curve(a, b))
                .collect();
            if st.curves != want {
                return Err(format!("s={s}: curve list differs"));
            }
        }
        got.push(st.group.to_string());
    }
    let y3z3x3 = TwistRelation {
        generators: uniform(&[(0, 1), (1, 1), (1, 0)], 3),
        word: (0..3).map(WordLetter::pos).collect(),
        iota: false,
        curve: curve(1, -1),
        power: -3,
    };
    let five = TwistRelation {
        generators: uniform(&[(1, 1), (2, 1), (1, 0), (1, -1), (0, 1)], 4),
        word: (0..5).map(WordLetter::pos).collect(),
        iota: false,
        curve: curve(1, 2),
        power: -4,
    };
    check(
        y3z3x3.holds() && five.holds(),
        format!("{}; both twist relations hold", got.join(", ")),
        format!("relations: {} {}", y3z3x3.holds(), five.holds()),
    )
}

fn random_curve(rng: &mut StdRng, bound: i64) -> Curve {
    loop {
        let (a, b) = (rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound));
        if a.gcd(&b) == 1 {
            return curve(a, b);
        }
    }
}

fn random_triple(rng: &mut StdRng, bound: i64) -> [Curve; 3] {
    loop {
        let t = [
            random_curve(rng, bound),
            random_curve(rng, bound),
            random_curve(rng, bound),
        ];
        if t[0] != t[1] && t[1] != t[2] && t[0] != t[2] {
            return t;
        }
    }
}

fn pairwise_sum(items: &[TwistPower]) -> BigInt {
    let mut total = BigInt::default();
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            total += geo(&items[i].curve, &items[j].curve);
        }
    }
    total
}

fn property_suite() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x0074_571d);
    let mut failures = Vec::new();

    let mut comparable = 0;
    for _ in 0..1000 {
        let t = random_triple(&mut rng, 50);
        let s = [1u64, 3, 4, 5, 6][rng.gen_range(0..5)];
        let c = TwistCollection::uniform(t, s).unwrap();
        if is_comparable(&c) {
            comparable += 1;
            if !is_proportional(&c) {
                failures.push(format!("comparable but not proportional: {:?}", c.items()));
            }
        }
    }

    for _ in 0..1000 {
        let s = rng.gen_range(1..=4u64);
        let t = [
            random_curve(&mut rng, 50),
            random_curve(&mut rng, 50),
            random_curve(&mut rng, 50),
        ];
        let start: Vec<TwistPower> = t
            .iter()
            .map(|c| TwistPower::new(c.clone(), s).unwrap())
            .collect();
        let (reduced, transcript) = match euclid_reduce(&start) {
            Ok(r) => r,
            Err(e) => {
                failures.push(e.to_string());
                continue;
            }
        };
        let initial: Vec<Mat2> = start.iter().map(|g| g.matrix()).collect();
        let fin: Vec<Mat2> = reduced.items().iter().map(|g| g.matrix()).collect();
        let forward = transcript.forward_exprs().unwrap();
        let backward = transcript.backward_exprs().unwrap();
        let same_group = forward
            .iter()
            .zip(&fin)
            .all(|(e, m)| e.evaluate(&initial).as_ref() == Ok(m))
            && backward
                .iter()
                .zip(&initial)
                .all(|(e, m)| e.evaluate(&fin).as_ref() == Ok(m));
        if !same_group || transcript.verify().is_err() {
            failures.push(format!("subgroup not preserved for {start:?}"));
        }
        let mut state = start.clone();
        for mv in &transcript.moves {
            let next = apply_move(&state, mv).unwrap();
            if (pairwise_sum(&next), next.len()) >= (pairwise_sum(&state), state.len()) {
                failures.push(format!("no progress at {mv:?}"));
            }
            state = next;
        }
        if BigInt::from(transcript.moves.len()) > pairwise_sum(&start) + 3 {
            failures.push(format!("too many steps for {start:?}"));
        }
    }

    let mut certified = 0;
    for _ in 0..60 {
        let t = random_triple(&mut rng, 12);
        let s = rng.gen_range(1..=4u64);
        let c = TwistCollection::uniform(t, s).unwrap();
        if let ProcedureOutcome::FreeCertified { .. } =
            procedure_run(&c, ProcedureConfig::default())
        {
            certified += 1;
            if relation_search(c.items(), 6).is_some() {
                failures.push(format!(
                    "certified collection has a relation: {:?}",
                    c.items()
                ));
            }
        }
    }

    let gens = HConfig::G1S2.generators();
    for _ in 0..200 {
        let v = random_curve(&mut rng, 10);
        let e = 4 * rng.gen_range(1..=3u64);
        let ok = express_twist_in_squares(&v, e)
            .and_then(|w| word_to_matrix(&gens, &w))
            .is_ok_and(|m| m == twist_matrix(&v, e));
        if !ok {
            failures.push(format!("squares word wrong for {v}^{e}"));
        }
    }

    if failures.is_empty() {
        Ok(format!(
            "1000 triples ({comparable} comparable), 1000 reductions, {certified} certified collections, 200 squares words"
        ))
    } else {
        Err(format!(
            "{} failures, first: {}",
            failures.len(),
            failures[0]
        ))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 worked examples", worked_examples),
        ("2 F2 x C2 detection", squares_triple),
        ("3 relation oracle", relation_oracle),
        ("4 sg = 2 pair collections", pair_collections),
        ("5 expansion procedure", procedure),
        ("6 congruence indices", congruence_indices),
        ("7 Farey quotients", farey),
        ("8 N_s structure", ns_structure),
        ("9 property suite", property_suite),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
