use super::farey::{farey_quotient, projective_primitive_count, FareyStats};
use super::modular::{sl2_mod_order, MOD_LIMIT};
use super::words::{TwistRelation, WordLetter};
use crate::classify::{Cardinality, GroupType};
use crate::homology::{Curve, TwistPower};
use serde::{Deserialize, Serialize};

/// The normal closure of all `s`-th twist powers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NsStructure {
    pub s: u64,
    #[serde(flatten)]
    pub group: GroupType,
    /// Curves whose `s`-th twist powers generate (for `3 <= s <= 5`, all
    /// but any one of them generate freely).
    pub curves: Vec<Curve>,
    pub index: Cardinality,
    /// Quotient of the Farey complex, when `3 <= s` is within the
    /// enumeration limit.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub farey: Option<FareyStats>,
    pub relations: Vec<TwistRelation>,
}

const LEVEL_FIVE: [(i64, i64); 12] = [
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
];

fn curves(list: &[(i64, i64)]) -> Vec<Curve> {
    list.iter()
        .map(|&(a, b)| Curve::new(a, b).expect("primitive"))
        .collect()
}

fn relation(s: u64, gens: &[(i64, i64)], rhs: (i64, i64), power: i64, iota: bool) -> TwistRelation {
    TwistRelation {
        generators: curves(gens)
            .into_iter()
            .map(|c| TwistPower {
                curve: c,
                exponent: s,
            })
            .collect(),
        word: (0..gens.len()).map(WordLetter::pos).collect(),
        iota,
        curve: Curve::new(rhs.0, rhs.1).expect("primitive"),
        power,
    }
}

/// For `s >= 6` the rank is infinite: the level-`s` quotient surface has
/// Euler characteristic `v(6 - s)/6 <= 0`, hence positive genus, so the
/// normal closure has infinite index and is not finitely generated.
pub fn n_s_structure(s: u64) -> NsStructure {
    let s = s.max(1);
    let farey = (3..=MOD_LIMIT)
        .contains(&s)
        .then(|| farey_quotient(s).expect("in range"));
    let index = match s {
        1 => Cardinality::Finite(1),
        2..=5 => Cardinality::Finite(sl2_mod_order(s).expect("in range")),
        _ => Cardinality::Infinite,
    };
    let (group, list, relations): (GroupType, &[(i64, i64)], Vec<TwistRelation>) = match s {
        1 => (GroupType::SL2Z, &LEVEL_FIVE[..2], Vec::new()),
        2 => (
            GroupType::FreeTimesC2,
            &LEVEL_FIVE[..3],
            vec![relation(2, &[(1, 0), (0, 1)], (1, 1), -2, true)],
        ),
        3..=5 => {
            let n = projective_primitive_count(s) as usize;
            let relations = match s {
                3 => vec![relation(3, &[(0, 1), (1, 1), (1, 0)], (1, -1), -3, false)],
                4 => vec![relation(
                    4,
                    &[(1, 1), (2, 1), (1, 0), (1, -1), (0, 1)],
                    (1, 2),
                    -4,
                    false,
                )],
                _ => Vec::new(),
            };
            (GroupType::free(n as u64 - 1), &LEVEL_FIVE[..n], relations)
        }
        _ => (
            GroupType::Free {
                rank: Cardinality::Infinite,
            },
            &[][..],
            Vec::new(),
        ),
    };
    NsStructure {
        s,
        group,
        curves: curves(list),
        index,
        farey,
        relations,
    }
}
