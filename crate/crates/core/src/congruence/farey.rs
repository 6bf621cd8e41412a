use super::modular::MOD_LIMIT;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};

/// Cell counts of the Farey complex modulo the principal congruence
/// subgroup of level `s`, a triangulated closed surface with `v` punctures
/// filled in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FareyStats {
    pub s: u64,
    pub v: u64,
    pub e: u64,
    pub f: u64,
    pub euler: i64,
    pub genus: u64,
    pub punctures: u64,
}

/// Number of primitive vectors in `(Z/s)^2` up to sign, from the closed form
/// `s^2 prod (1 - 1/p^2)`, halved when `-v != v`.
pub fn projective_primitive_count(s: u64) -> u64 {
    let mut count = s * s;
    let mut n = s;
    let mut p = 2;
    while n > 1 {
        if n.is_multiple_of(p) {
            count = count / (p * p) * (p * p - 1);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if s > 2 {
        count / 2
    } else {
        count
    }
}

pub fn farey_quotient(s: u64) -> Result<FareyStats> {
    farey_quotient_with_limit(s, MOD_LIMIT)
}

type Residue = (u64, u64);

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Enumerates vertices, edges (determinant `±1` mod `s`) and triangles
/// (`{u, w, u ± w}`) explicitly.
pub fn farey_quotient_with_limit(s: u64, limit: u64) -> Result<FareyStats> {
    if s < 3 {
        return Err(Error::BadModulus(s));
    }
    if s > limit {
        return Err(Error::BudgetExceeded(format!(
            "modulus {s} exceeds enumeration limit {limit}"
        )));
    }
    let neg = |(a, b): Residue| ((s - a) % s, (s - b) % s);
    let class = |v: Residue| v.min(neg(v));

    let mut vertices: Vec<Residue> = Vec::new();
    for a in 0..s {
        for b in 0..s {
            if gcd(gcd(a, b), s) == 1 && class((a, b)) == (a, b) {
                vertices.push((a, b));
            }
        }
    }
    let index: HashMap<Residue, usize> =
        vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();

    let det = |(a, b): Residue, (c, d): Residue| (a * d % s + s - b * c % s) % s;
    let mut edges = Vec::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            let d = det(vertices[i], vertices[j]);
            if d == 1 || d == s - 1 {
                edges.push((i, j));
            }
        }
    }

    let mut faces = BTreeSet::new();
    for &(i, j) in &edges {
        let (u, w) = (vertices[i], vertices[j]);
        for third in [
            ((u.0 + w.0) % s, (u.1 + w.1) % s),
            ((u.0 + s - w.0) % s, (u.1 + s - w.1) % s),
        ] {
            let k = index[&class(third)];
            let mut tri = [i, j, k];
            tri.sort_unstable();
            faces.insert(tri);
        }
    }

    let (v, e, f) = (
        vertices.len() as u64,
        edges.len() as u64,
        faces.len() as u64,
    );
    let euler = v as i64 - e as i64 + f as i64;
    Ok(FareyStats {
        s,
        v,
        e,
        f,
        euler,
        genus: ((2 - euler) / 2) as u64,
        punctures: v,
    })
}
