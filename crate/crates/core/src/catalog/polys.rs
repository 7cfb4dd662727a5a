use crate::algebra::poly;
use crate::error::{Error, Result};

pub(crate) const DEFAULT_POLYS: &[(u32, u32, &str)] = &[
    (2, 2, "x^2+x+1"),
    (2, 3, "x^3+x+1"),
    (2, 4, "x^4+x+1"),
    (2, 5, "x^5+x^2+1"),
    (2, 6, "x^6+x+1"),
    (2, 7, "x^7+x+1"),
    (2, 8, "x^8+x^4+x^3+x^2+1"),
    (3, 2, "x^2+x+2"),
    (3, 3, "x^3+2x+1"),
    (3, 4, "x^4+x+2"),
];

/// Default modulus for GF(p^u), constant term first.
///
/// Degree one uses x+1 for every p. Orders without a listed polynomial fall
/// back to the lexicographically first monic irreducible.
pub fn default_irreducible(p: u32, u: u32) -> Result<Vec<u32>> {
    if !poly::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if u == 1 {
        return Ok(vec![1 % p, 1]);
    }
    if let Some((_, _, text)) = DEFAULT_POLYS.iter().find(|(q, v, _)| *q == p && *v == u) {
        return poly::parse(text, p);
    }
    let count = (p as u64).pow(u);
    for index in 0..count {
        let mut m = poly::from_index(index as u32, p, u as usize);
        m.push(1);
        if m[0] != 0 && poly::find_factor(&m, p).is_none() {
            return Ok(m);
        }
    }
    Err(Error::InvalidParameter(format!("no irreducible polynomial of degree {u} over Z_{p}")))
}
