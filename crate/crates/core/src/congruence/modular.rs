use crate::error::{Error, Result};

/// Largest modulus the enumerations accept by default.
pub const MOD_LIMIT: u64 = 30;

/// `|SL(2, Z/s)|`, which is the index of the principal congruence subgroup.
pub fn sl2_mod_order(s: u64) -> Result<u64> {
    sl2_mod_order_with_limit(s, MOD_LIMIT)
}

/// Counts all `(a, b, c, d)` mod `s` with `ad - bc = 1`.
pub fn sl2_mod_order_with_limit(s: u64, limit: u64) -> Result<u64> {
    if s < 2 {
        return Err(Error::BadModulus(s));
    }
    if s > limit {
        return Err(Error::BudgetExceeded(format!(
            "modulus {s} exceeds enumeration limit {limit}"
        )));
    }
    // For each (b, c), count (a, d) with ad = 1 + bc.
    let mut products = vec![0u64; s as usize];
    for a in 0..s {
        for d in 0..s {
            products[(a * d % s) as usize] += 1;
        }
    }
    let mut count = 0;
    for b in 0..s {
        for c in 0..s {
            count += products[((1 + b * c) % s) as usize];
        }
    }
    Ok(count)
}
