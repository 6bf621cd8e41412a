//! Integer model of the first homology of the torus.
//!
//! Curves are primitive vectors up to sign, twists act by
//! `v -> v + k * <x, v> * x`, and mapping classes are elements of SL(2, Z).
//! Everything is exact: entries are `BigInt`.

use crate::error::{Error, Result};
use crate::intser::Int;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A homology class `a * e1 + b * e2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HVector {
    pub a: BigInt,
    pub b: BigInt,
}

impl HVector {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        HVector {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).is_one()
    }

    /// Determinant of the matrix with columns `self`, `other`.
    pub fn det(&self, other: &HVector) -> BigInt {
        &self.a * &other.b - &self.b * &other.a
    }

    pub fn scaled(&self, k: &BigInt) -> HVector {
        HVector {
            a: &self.a * k,
            b: &self.b * k,
        }
    }

    /// `max(|a|, |b|)`
    pub fn max_abs(&self) -> BigInt {
        self.a.abs().max(self.b.abs())
    }
}

impl Add for &HVector {
    type Output = HVector;
    fn add(self, rhs: &HVector) -> HVector {
        HVector {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub for &HVector {
    type Output = HVector;
    fn sub(self, rhs: &HVector) -> HVector {
        HVector {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Neg for &HVector {
    type Output = HVector;
    fn neg(self) -> HVector {
        HVector {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl Serialize for HVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [Int(self.a.clone()), Int(self.b.clone())].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[Int; 2]>::deserialize(deserializer)?;
        Ok(HVector { a: a.0, b: b.0 })
    }
}

/// An unoriented essential simple closed curve: a primitive vector up to
/// sign, stored with `b > 0`, or `b = 0` and `a = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Curve {
    rep: HVector,
}

impl Curve {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<Curve> {
        Curve::from_vector(HVector::new(a, b))
    }

    pub fn from_vector(v: HVector) -> Result<Curve> {
        if v.is_zero() {
            return Err(Error::Zero);
        }
        if !v.is_primitive() {
            return Err(Error::NonPrimitive(v.a.to_string(), v.b.to_string()));
        }
        let flip = v.b.is_negative() || (v.b.is_zero() && v.a.is_negative());
        Ok(Curve {
            rep: if flip { -&v } else { v },
        })
    }

    /// Canonicalize a vector already known to be primitive, e.g. the image of
    /// a curve under an element of SL(2, Z).
    pub(crate) fn from_primitive(v: HVector) -> Curve {
        debug_assert!(v.is_primitive());
        let flip = v.b.is_negative() || (v.b.is_zero() && v.a.is_negative());
        Curve {
            rep: if flip { -&v } else { v },
        }
    }

    pub fn vector(&self) -> &HVector {
        &self.rep
    }

    pub fn a(&self) -> &BigInt {
        &self.rep.a
    }

    pub fn b(&self) -> &BigInt {
        &self.rep.b
    }
}

/// Canonical representative of the curve carried by `v`.
pub fn curve_from_vector(v: HVector) -> Result<Curve> {
    Curve::from_vector(v)
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

impl Serialize for Curve {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rep.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Curve {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = HVector::deserialize(deserializer)?;
        Curve::from_vector(v).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intersection {
    /// Signed count, `det[x | y]` on the canonical representatives.
    pub alg: BigInt,
    /// Geometric intersection number, `|alg|` on the torus.
    pub geo: BigInt,
}

pub fn intersection(x: &Curve, y: &Curve) -> Intersection {
    let alg = x.rep.det(&y.rep);
    let geo = alg.abs();
    Intersection { alg, geo }
}

/// Geometric intersection number of two curves.
pub fn geo(x: &Curve, y: &Curve) -> BigInt {
    x.rep.det(&y.rep).abs()
}

/// `T_x^k (v) = v + k <x, v> x`.
pub fn twist_apply(x: &Curve, k: impl Into<BigInt>, v: &HVector) -> HVector {
    let k = k.into();
    let coeff = k * x.rep.det(v);
    v + &x.rep.scaled(&coeff)
}

/// Matrix of `T_x^k` acting on column vectors.
pub fn twist_matrix(x: &Curve, k: impl Into<BigInt>) -> Mat2 {
    let k = k.into();
    let (a, b) = (&x.rep.a, &x.rep.b);
    let ab = a * b;
    Mat2 {
        m11: BigInt::one() - &k * &ab,
        m12: &k * a * a,
        m21: -(&k * b * b),
        m22: BigInt::one() + &k * &ab,
    }
}

/// An element of SL(2, Z).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    m11: BigInt,
    m12: BigInt,
    m21: BigInt,
    m22: BigInt,
}

impl Mat2 {
    pub fn new(
        m11: impl Into<BigInt>,
        m12: impl Into<BigInt>,
        m21: impl Into<BigInt>,
        m22: impl Into<BigInt>,
    ) -> Result<Mat2> {
        let m = Mat2 {
            m11: m11.into(),
            m12: m12.into(),
            m21: m21.into(),
            m22: m22.into(),
        };
        let det = m.det();
        if !det.is_one() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        Ok(m)
    }

    pub fn identity() -> Mat2 {
        Mat2 {
            m11: BigInt::one(),
            m12: BigInt::zero(),
            m21: BigInt::zero(),
            m22: BigInt::one(),
        }
    }

    /// The hyperelliptic involution, `-I`.
    pub fn iota() -> Mat2 {
        -&Mat2::identity()
    }

    pub fn entries(&self) -> [[&BigInt; 2]; 2] {
        [[&self.m11, &self.m12], [&self.m21, &self.m22]]
    }

    fn det(&self) -> BigInt {
        &self.m11 * &self.m22 - &self.m12 * &self.m21
    }

    pub fn is_identity(&self) -> bool {
        self.m11.is_one() && self.m12.is_zero() && self.m21.is_zero() && self.m22.is_one()
    }

    pub fn inverse(&self) -> Mat2 {
        Mat2 {
            m11: self.m22.clone(),
            m12: -&self.m12,
            m21: -&self.m21,
            m22: self.m11.clone(),
        }
    }

    pub fn apply(&self, v: &HVector) -> HVector {
        HVector {
            a: &self.m11 * &v.a + &self.m12 * &v.b,
            b: &self.m21 * &v.a + &self.m22 * &v.b,
        }
    }

    /// Image of a curve under this mapping class.
    pub fn apply_curve(&self, c: &Curve) -> Curve {
        Curve::from_primitive(self.apply(c.vector()))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, k: &BigInt) -> Mat2 {
        let mut base = if k.is_negative() {
            self.inverse()
        } else {
            self.clone()
        };
        let mut e = k.abs();
        let mut acc = Mat2::identity();
        let two = BigInt::from(2);
        while !e.is_zero() {
            if e.is_odd() {
                acc = &acc * &base;
            }
            e /= &two;
            if !e.is_zero() {
                base = &base * &base;
            }
        }
        acc
    }

    /// Entries reduced into `[0, s)`.
    pub fn reduce_mod(&self, s: u64) -> [[u64; 2]; 2] {
        let m = BigInt::from(s);
        let r = |x: &BigInt| -> u64 {
            let v = x.mod_floor(&m);
            u64::try_from(v).expect("residue fits in u64")
        };
        [[r(&self.m11), r(&self.m12)], [r(&self.m21), r(&self.m22)]]
    }

    pub fn is_identity_mod(&self, s: u64) -> bool {
        let id = if s == 1 {
            [[0, 0], [0, 0]]
        } else {
            [[1, 0], [0, 1]]
        };
        self.reduce_mod(s) == id
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            m11: &self.m11 * &rhs.m11 + &self.m12 * &rhs.m21,
            m12: &self.m11 * &rhs.m12 + &self.m12 * &rhs.m22,
            m21: &self.m21 * &rhs.m11 + &self.m22 * &rhs.m21,
            m22: &self.m21 * &rhs.m12 + &self.m22 * &rhs.m22,
        }
    }
}

impl Neg for &Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2 {
            m11: -&self.m11,
            m12: -&self.m12,
            m21: -&self.m21,
            m22: -&self.m22,
        }
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{},{}],[{},{}]]",
            self.m11, self.m12, self.m21, self.m22
        )
    }
}

impl Serialize for Mat2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [
            [Int(self.m11.clone()), Int(self.m12.clone())],
            [Int(self.m21.clone()), Int(self.m22.clone())],
        ]
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Mat2 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [[a, b], [c, d]] = <[[Int; 2]; 2]>::deserialize(deserializer)?;
        Mat2::new(a.0, b.0, c.0, d.0).map_err(serde::de::Error::custom)
    }
}

/// `T_c^s` with `s >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTwistPower")]
pub struct TwistPower {
    pub curve: Curve,
    #[serde(rename = "power")]
    pub exponent: u64,
}

#[derive(Deserialize)]
struct RawTwistPower {
    curve: Curve,
    power: i64,
}

impl TryFrom<RawTwistPower> for TwistPower {
    type Error = Error;
    fn try_from(raw: RawTwistPower) -> Result<TwistPower> {
        TwistPower::from_signed(raw.curve, raw.power).ok_or(Error::ZeroExponent)
    }
}

impl TwistPower {
    pub fn new(curve: Curve, exponent: u64) -> Result<TwistPower> {
        if exponent == 0 {
            return Err(Error::ZeroExponent);
        }
        Ok(TwistPower { curve, exponent })
    }

    /// `T_c^k` generates the same cyclic group as `T_c^{|k|}`; `k = 0`
    /// contributes nothing and yields `None`.
    pub fn from_signed(curve: Curve, k: i64) -> Option<TwistPower> {
        (k != 0).then(|| TwistPower {
            curve,
            exponent: k.unsigned_abs(),
        })
    }

    pub fn matrix(&self) -> Mat2 {
        twist_matrix(&self.curve, self.exponent)
    }
}

impl fmt::Display for TwistPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}^{}", self.curve, self.exponent)
    }
}

/// Coordinates in which a pair of curves reads `x' = (1,0)`,
/// `y' = (a, n)` with `0 < a < n` (or `y' = (0,1)` when `n = 1`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalizedPair {
    /// Basis change sending `x` to `(1,0)`.
    pub change: Mat2,
    /// Power of `T_(1,0)` applied after `change`.
    #[serde(with = "crate::intser")]
    pub tpower: BigInt,
    pub x: Curve,
    pub y: Curve,
}

impl NormalizedPair {
    /// `T_(1,0)^tpower * change`
    pub fn full_map(&self) -> Mat2 {
        let t = twist_matrix(&e1(), self.tpower.clone());
        &t * &self.change
    }
}

fn e1() -> Curve {
    Curve::from_primitive(HVector::new(1, 0))
}

pub fn normalize_pair(x: &Curve, y: &Curve) -> Result<NormalizedPair> {
    if x == y {
        return Err(Error::SameCurve);
    }
    let (p, q) = (x.a(), x.b());
    let eg = p.extended_gcd(q);
    // u p + v q = 1, so [[u, v], [-q, p]] sends x to e1.
    let change = Mat2 {
        m11: eg.x,
        m12: eg.y,
        m21: -q,
        m22: p.clone(),
    };
    debug_assert!(change.det().is_one());
    let mut image = change.apply(y.vector());
    if image.b.is_negative() {
        image = -&image;
    }
    let n = image.b.clone();
    let tpower = if n.is_one() {
        -&image.a
    } else {
        let rem = image.a.mod_floor(&n);
        (rem - &image.a) / &n
    };
    let normalized = NormalizedPair {
        change,
        tpower,
        x: e1(),
        y: e1(),
    };
    let y_img = normalized.full_map().apply_curve(y);
    Ok(NormalizedPair {
        y: y_img,
        ..normalized
    })
}
