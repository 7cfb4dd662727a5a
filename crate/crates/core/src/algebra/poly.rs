//! Dense polynomials over a prime field Z_p, stored constant term first.

use crate::error::{Error, Result};

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Drops trailing zero coefficients. The zero polynomial becomes empty.
pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn add(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(out)
}

pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` divided by the monic polynomial `m`.
pub fn rem_monic(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = degree(m).expect("modulus must be nonzero");
    debug_assert_eq!(m[dm], 1);
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let lead = r[dr];
        let shift = dr - dm;
        for (i, &c) in m.iter().enumerate().take(dm + 1) {
            let sub = (lead * c) % p;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

/// Coefficient vector of the base-p number `index`, constant term first.
pub fn from_index(mut index: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(index % p);
        index /= p;
    }
    out
}

pub fn to_index(a: &[u32], p: u32) -> u32 {
    a.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Returns the lexicographically first monic factor of degree `1..=deg/2`,
/// or `None` if `m` is irreducible.
pub fn find_factor(m: &[u32], p: u32) -> Option<Vec<u32>> {
    let d = degree(m)?;
    for fd in 1..=d / 2 {
        let count = p.pow(fd as u32);
        for lower in 0..count {
            let mut f = from_index(lower, p, fd);
            f.push(1);
            if rem_monic(m, &f, p).is_empty() {
                return Some(f);
            }
        }
    }
    None
}

/// Renders a polynomial in the usual `2x^2+x+1` form; zero renders as `0`.
pub fn format(a: &[u32]) -> String {
    let terms: Vec<String> = a
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            match i {
                0 => coef,
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{i}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// Parses `x^3+2x+1`-style text into coefficients reduced mod `p`.
///
/// Repeated powers are summed. Whitespace is ignored.
pub fn parse(text: &str, p: u32) -> Result<Vec<u32>> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::InvalidPolynomial(text.to_string());
    if cleaned.is_empty() {
        return Err(bad());
    }
    let mut coeffs: Vec<u32> = Vec::new();
    for term in cleaned.split('+') {
        if term.is_empty() {
            return Err(bad());
        }
        let (coef, power) = match term.find('x') {
            None => (term.parse::<u64>().map_err(|_| bad())?, 0usize),
            Some(pos) => {
                let head = &term[..pos];
                let tail = &term[pos + 1..];
                let coef = if head.is_empty() {
                    1
                } else {
                    head.trim_end_matches('*').parse::<u64>().map_err(|_| bad())?
                };
                let power = if tail.is_empty() {
                    1
                } else {
                    let digits = tail.strip_prefix('^').ok_or_else(bad)?;
                    digits.parse::<usize>().map_err(|_| bad())?
                };
                (coef, power)
            }
        };
        if power > 64 {
            return Err(bad());
        }
        if coeffs.len() <= power {
            coeffs.resize(power + 1, 0);
        }
        coeffs[power] = ((coeffs[power] as u64 + coef) % p as u64) as u32;
    }
    Ok(trim(coeffs))
}
