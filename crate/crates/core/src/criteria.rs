//! The comparable and proportional inequality systems on pairwise
//! geometric intersection numbers.

use crate::error::{Error, Result};
use crate::homology::{geo, Curve, TwistPower};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// Twist powers about pairwise distinct curves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<TwistPower>", into = "Vec<TwistPower>")]
pub struct TwistCollection {
    items: Vec<TwistPower>,
}

impl TwistCollection {
    pub fn new(items: Vec<TwistPower>) -> Result<TwistCollection> {
        let mut seen = HashSet::with_capacity(items.len());
        for item in &items {
            if !seen.insert(&item.curve) {
                return Err(Error::DuplicateCurve(item.curve.to_string()));
            }
        }
        Ok(TwistCollection { items })
    }

    /// All curves with the same exponent `s`.
    pub fn uniform(curves: impl IntoIterator<Item = Curve>, s: u64) -> Result<TwistCollection> {
        let items = curves
            .into_iter()
            .map(|c| TwistPower::new(c, s))
            .collect::<Result<Vec<_>>>()?;
        TwistCollection::new(items)
    }

    pub fn items(&self) -> &[TwistPower] {
        &self.items
    }

    pub fn into_items(self) -> Vec<TwistPower> {
        self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn curves(&self) -> impl Iterator<Item = &Curve> {
        self.items.iter().map(|t| &t.curve)
    }

    /// The common exponent, if every item has the same one.
    pub fn uniform_exponent(&self) -> Option<u64> {
        uniform_exponent(&self.items)
    }

    pub fn position(&self, curve: &Curve) -> Option<usize> {
        self.items.iter().position(|t| &t.curve == curve)
    }
}

impl TryFrom<Vec<TwistPower>> for TwistCollection {
    type Error = Error;
    fn try_from(items: Vec<TwistPower>) -> Result<TwistCollection> {
        TwistCollection::new(items)
    }
}

impl From<TwistCollection> for Vec<TwistPower> {
    fn from(c: TwistCollection) -> Vec<TwistPower> {
        c.items
    }
}

pub(crate) fn uniform_exponent(items: &[TwistPower]) -> Option<u64> {
    let s = items.first()?.exponent;
    items.iter().all(|t| t.exponent == s).then_some(s)
}

/// True iff `s*a*b >= 2(a+b)` fails, i.e. `(a, b, s)` is one of the
/// enumerated exceptional cases.
pub fn ob1_exception(a: u64, b: u64, s: u64) -> bool {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    match s {
        1 => a < 3 || (a == 3 && b <= 5),
        2 => a == 1,
        3 => a == 1 && b == 1,
        _ => false,
    }
}

/// An index triple; `first < last`, and `middle` carries the exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Triple {
    pub first: usize,
    pub middle: usize,
    pub last: usize,
}

/// One evaluated proportionality inequality,
/// `(f,m) + (m,l) + (l,f) <= s_m (f,m)(m,l)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityRecord {
    #[serde(flatten)]
    pub triple: Triple,
    #[serde(with = "crate::intser")]
    pub lhs: BigInt,
    #[serde(with = "crate::intser")]
    pub rhs: BigInt,
}

impl InequalityRecord {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }
}

struct GeoTable {
    n: usize,
    geo: Vec<BigInt>,
}

impl GeoTable {
    fn new(items: &[TwistPower]) -> GeoTable {
        let n = items.len();
        let mut table = vec![BigInt::default(); n * n];
        for i in 0..n {
            for j in i + 1..n {
                let g = geo(&items[i].curve, &items[j].curve);
                table[j * n + i] = g.clone();
                table[i * n + j] = g;
            }
        }
        GeoTable { n, geo: table }
    }

    fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.geo[i * self.n + j]
    }
}

fn triples(n: usize) -> impl Iterator<Item = Triple> {
    (0..n).flat_map(move |first| {
        (0..n).flat_map(move |middle| {
            (first + 1..n)
                .filter(move |&last| middle != first && middle != last)
                .map(move |last| Triple {
                    first,
                    middle,
                    last,
                })
        })
    })
}

fn comparable_sides(items: &[TwistPower], g: &GeoTable, t: Triple) -> (BigInt, BigInt) {
    let lhs = g.get(t.first, t.last) * 2u32;
    let rhs = g.get(t.first, t.middle) * g.get(t.middle, t.last) * items[t.middle].exponent;
    (lhs, rhs)
}

fn proportional_sides(items: &[TwistPower], g: &GeoTable, t: Triple) -> (BigInt, BigInt) {
    let (fm, ml, lf) = (
        g.get(t.first, t.middle),
        g.get(t.middle, t.last),
        g.get(t.last, t.first),
    );
    let lhs = fm + ml + lf;
    let rhs = fm * ml * items[t.middle].exponent;
    (lhs, rhs)
}

/// Triples violating `2(f,l) <= s_m (f,m)(m,l)`, in lexicographic order.
pub fn comparable_violations(c: &TwistCollection) -> Vec<Triple> {
    let g = GeoTable::new(&c.items);
    triples(c.len())
        .filter(|&t| {
            let (lhs, rhs) = comparable_sides(&c.items, &g, t);
            lhs > rhs
        })
        .collect()
}

/// Triples violating `(f,m)+(m,l)+(l,f) <= s_m (f,m)(m,l)`, in
/// lexicographic order.
pub fn proportional_violations(c: &TwistCollection) -> Vec<Triple> {
    let g = GeoTable::new(&c.items);
    triples(c.len())
        .filter(|&t| {
            let (lhs, rhs) = proportional_sides(&c.items, &g, t);
            lhs > rhs
        })
        .collect()
}

/// `Ok(())` when the collection has comparable intersection numbers,
/// otherwise every violating triple.
pub fn check_comparable(c: &TwistCollection) -> std::result::Result<(), Vec<Triple>> {
    let v = comparable_violations(c);
    if v.is_empty() {
        Ok(())
    } else {
        Err(v)
    }
}

pub fn check_proportional(c: &TwistCollection) -> std::result::Result<(), Vec<Triple>> {
    let v = proportional_violations(c);
    if v.is_empty() {
        Ok(())
    } else {
        Err(v)
    }
}

pub fn is_comparable(c: &TwistCollection) -> bool {
    check_comparable(c).is_ok()
}

pub fn is_proportional(c: &TwistCollection) -> bool {
    first_proportional_violation(c.items()).is_none()
}

/// Every proportionality inequality, one record per triple and middle index.
pub fn proportional_records(c: &TwistCollection) -> Vec<InequalityRecord> {
    let g = GeoTable::new(&c.items);
    triples(c.len())
        .map(|triple| {
            let (lhs, rhs) = proportional_sides(&c.items, &g, triple);
            InequalityRecord { triple, lhs, rhs }
        })
        .collect()
}

/// Lexicographically first violating triple, computed without building the
/// full intersection table. Items must have distinct curves.
pub(crate) fn first_proportional_violation(items: &[TwistPower]) -> Option<Triple> {
    let n = items.len();
    for first in 0..n {
        for middle in 0..n {
            if middle == first {
                continue;
            }
            let fm = geo(&items[first].curve, &items[middle].curve);
            let scaled = &fm * items[middle].exponent;
            for last in first + 1..n {
                if last == middle {
                    continue;
                }
                let ml = geo(&items[middle].curve, &items[last].curve);
                let lf = geo(&items[last].curve, &items[first].curve);
                if &fm + &ml + lf > &scaled * &ml {
                    return Some(Triple {
                        first,
                        middle,
                        last,
                    });
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coll(curves: &[(i64, i64)], s: u64) -> TwistCollection {
        TwistCollection::uniform(curves.iter().map(|&(a, b)| Curve::new(a, b).unwrap()), s).unwrap()
    }

    #[test]
    fn ob1_matches_inequality() {
        for s in 1..=12u64 {
            for a in 1..=40u64 {
                for b in 1..=40u64 {
                    let fails = s * a * b < 2 * (a + b);
                    assert_eq!(ob1_exception(a, b, s), fails, "a={a} b={b} s={s}");
                    assert_eq!(ob1_exception(a, b, s), ob1_exception(b, a, s));
                }
            }
        }
    }

    #[test]
    fn ob1_examples() {
        assert!(ob1_exception(3, 5, 1));
        assert!(ob1_exception(1, 7, 2));
        assert!(!ob1_exception(4, 4, 1));
    }

    #[test]
    fn comparable_examples() {
        // eg3 end state (the vector -(2;3) represents the curve (2,3))
        assert!(is_comparable(&coll(&[(1, 0), (1, 3), (2, 3)], 1)));
        assert!(is_comparable(&coll(&[(1, 0), (0, 1), (1, 1)], 2)));
        let tricky = coll(&[(1, 0), (1, 3), (1, 10), (3, 17)], 1);
        assert_eq!(
            check_comparable(&tricky),
            Err(vec![Triple {
                first: 0,
                middle: 1,
                last: 3
            }])
        );
        // the literal (-2,3) is a different curve and is not comparable
        assert!(!is_comparable(&coll(&[(1, 0), (1, 3), (-2, 3)], 1)));
    }

    #[test]
    fn proportional_examples() {
        assert!(is_proportional(&coll(&[(1, 0), (1, 3), (2, 3)], 1)));
        assert!(!is_proportional(&coll(&[(1, 0), (0, 1), (1, 1)], 2)));
        assert!(is_proportional(&coll(&[(1, 0), (0, 1), (1, 1)], 3)));
        assert_eq!(
            proportional_violations(&coll(&[(1, 0), (0, 1), (1, 1)], 2)).len(),
            3
        );
    }

    #[test]
    fn small_collections_are_vacuous() {
        let c = coll(&[(1, 0), (0, 1)], 1);
        assert!(is_comparable(&c));
        assert!(is_proportional(&c));
        assert!(proportional_records(&c).is_empty());
    }

    #[test]
    fn first_violation_agrees_with_full_list() {
        let c = coll(&[(1, 0), (1, 3), (1, 10), (3, 17)], 1);
        assert_eq!(
            first_proportional_violation(c.items()),
            proportional_violations(&c).first().copied()
        );
    }

    #[test]
    fn duplicate_curves_rejected() {
        let c = Curve::new(1, 0).unwrap();
        assert!(matches!(
            TwistCollection::uniform([c.clone(), c], 1),
            Err(Error::DuplicateCurve(_))
        ));
    }

    #[test]
    fn records_cover_every_middle() {
        let c = coll(&[(1, 0), (0, 1), (1, 1), (1, -1)], 3);
        let r = proportional_records(&c);
        assert_eq!(r.len(), 4 * 3);
        let json = serde_json::to_value(&r[0]).unwrap();
        assert!(json.get("middle").is_some() && json.get("lhs").is_some());
    }
}
