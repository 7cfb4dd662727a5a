use std::fmt;

use super::field::{prime_power, FieldSpec};
use super::poly;
use super::Elem;
use crate::error::{Error, Result};

/// A finite abelian group used as a level alphabet.
///
/// Elements are indexed `0..order`, with index 0 the identity. Direct
/// products are enumerated lexicographically with the last component varying
/// fastest, so `Z2*Z2` lists `00, 01, 10, 11`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GroupSpec {
    /// Additive group of a Galois field.
    Field(FieldSpec),
    /// Residue ring Z_s under addition.
    Cyclic(u32),
    /// Direct product of groups.
    Product(Vec<GroupSpec>),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Field(field) => write!(f, "{field}"),
            GroupSpec::Cyclic(s) => write!(f, "Z{s}"),
            GroupSpec::Product(parts) => {
                for (i, g) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    if matches!(g, GroupSpec::Product(_)) {
                        write!(f, "[{g}]")?;
                    } else {
                        write!(f, "{g}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

impl From<FieldSpec> for GroupSpec {
    fn from(f: FieldSpec) -> Self {
        GroupSpec::Field(f)
    }
}

impl GroupSpec {
    pub fn order(&self) -> u32 {
        match self {
            GroupSpec::Field(f) => f.order(),
            GroupSpec::Cyclic(s) => *s,
            GroupSpec::Product(parts) => parts.iter().map(GroupSpec::order).product(),
        }
    }

    pub fn contains(&self, e: Elem) -> bool {
        e.0 < self.order()
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order()).map(Elem)
    }

    pub fn as_field(&self) -> Option<&FieldSpec> {
        match self {
            GroupSpec::Field(f) => Some(f),
            _ => None,
        }
    }

    fn check(&self, e: Elem) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange { element: e.0, group: self.to_string() })
        }
    }

    pub fn add(&self, a: Elem, b: Elem) -> Result<Elem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    pub(crate) fn add_unchecked(&self, a: Elem, b: Elem) -> Elem {
        match self {
            GroupSpec::Field(f) => f.add_unchecked(a, b),
            GroupSpec::Cyclic(s) => Elem((a.0 + b.0) % s),
            GroupSpec::Product(parts) => {
                let ca = self.components(a);
                let cb = self.components(b);
                let sum: Vec<Elem> = parts
                    .iter()
                    .zip(ca.iter().zip(&cb))
                    .map(|(g, (&x, &y))| g.add_unchecked(x, y))
                    .collect();
                self.compose_unchecked(&sum)
            }
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        match self {
            GroupSpec::Field(f) => f.neg(a),
            GroupSpec::Cyclic(s) => Elem((s - a.0 % s) % s),
            GroupSpec::Product(parts) => {
                let c: Vec<Elem> = parts
                    .iter()
                    .zip(self.components(a))
                    .map(|(g, x)| g.neg(x))
                    .collect();
                self.compose_unchecked(&c)
            }
        }
    }

    /// `a - b`.
    pub fn sub(&self, a: Elem, b: Elem) -> Result<Elem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, self.neg(b)))
    }

    pub(crate) fn sub_unchecked(&self, a: Elem, b: Elem) -> Elem {
        self.add_unchecked(a, self.neg(b))
    }

    /// Splits a product element into its components. Non-products yield `[e]`.
    pub fn components(&self, e: Elem) -> Vec<Elem> {
        match self {
            GroupSpec::Product(parts) => {
                let mut rest = e.0;
                let mut out = vec![Elem(0); parts.len()];
                for (slot, g) in out.iter_mut().zip(parts).rev() {
                    let o = g.order();
                    *slot = Elem(rest % o);
                    rest /= o;
                }
                out
            }
            _ => vec![e],
        }
    }

    pub fn compose(&self, comps: &[Elem]) -> Result<Elem> {
        match self {
            GroupSpec::Product(parts) => {
                if comps.len() != parts.len() {
                    return Err(Error::Shape(format!(
                        "{} components given for {self}",
                        comps.len()
                    )));
                }
                for (g, &c) in parts.iter().zip(comps) {
                    g.check(c)?;
                }
                Ok(self.compose_unchecked(comps))
            }
            _ => match comps {
                [e] => self.check(*e).map(|_| *e),
                _ => Err(Error::Shape(format!("{self} is not a product"))),
            },
        }
    }

    fn compose_unchecked(&self, comps: &[Elem]) -> Elem {
        match self {
            GroupSpec::Product(parts) => Elem(
                parts
                    .iter()
                    .zip(comps)
                    .fold(0, |acc, (g, c)| acc * g.order() + c.0),
            ),
            _ => comps[0],
        }
    }

    /// Canonical element text: polynomials for fields, decimals for Z_s,
    /// concatenated component text for products (multi-character components
    /// are parenthesized, e.g. `(x+1)2`).
    pub fn format(&self, e: Elem) -> String {
        match self {
            GroupSpec::Field(f) => f.format(e),
            GroupSpec::Cyclic(_) => e.0.to_string(),
            GroupSpec::Product(parts) => parts
                .iter()
                .zip(self.components(e))
                .map(|(g, c)| {
                    let t = g.format(c);
                    if t.chars().count() == 1 {
                        t
                    } else {
                        format!("({t})")
                    }
                })
                .collect(),
        }
    }

    pub fn parse(&self, text: &str) -> Result<Elem> {
        let err = || Error::ParseElement { text: text.to_string(), group: self.to_string() };
        let t = text.trim();
        match self {
            GroupSpec::Field(f) => f.parse(t),
            GroupSpec::Cyclic(s) => {
                let v: u32 = t.parse().map_err(|_| err())?;
                if v < *s {
                    Ok(Elem(v))
                } else {
                    Err(err())
                }
            }
            GroupSpec::Product(parts) => {
                let chars: Vec<char> = t.chars().collect();
                let mut pos = 0;
                let mut comps = Vec::with_capacity(parts.len());
                for g in parts {
                    if pos >= chars.len() {
                        return Err(err());
                    }
                    let piece: String = if chars[pos] == '(' {
                        let mut depth = 0;
                        let start = pos + 1;
                        let mut end = None;
                        for (i, &c) in chars.iter().enumerate().skip(pos) {
                            match c {
                                '(' => depth += 1,
                                ')' => {
                                    depth -= 1;
                                    if depth == 0 {
                                        end = Some(i);
                                        break;
                                    }
                                }
                                _ => {}
                            }
                        }
                        let end = end.ok_or_else(err)?;
                        pos = end + 1;
                        chars[start..end].iter().collect()
                    } else {
                        pos += 1;
                        chars[pos - 1].to_string()
                    };
                    comps.push(g.parse(&piece).map_err(|_| err())?);
                }
                if pos != chars.len() {
                    return Err(err());
                }
                Ok(self.compose_unchecked(&comps))
            }
        }
    }

    /// Parses group text: `GF(8)`, `GF(8;x^3+x+1)`, `Z6`, and `*`-joined
    /// products such as `Z2*Z6` or `GF(4)*GF(3)`. Brackets group nested products.
    pub fn parse_spec(text: &str) -> Result<GroupSpec> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let parts = split_top_level(&t, '*').ok_or_else(|| Error::ParseGroup(text.to_string()))?;
        if parts.len() > 1 {
            let groups = parts
                .iter()
                .map(|p| GroupSpec::parse_spec(p))
                .collect::<Result<Vec<_>>>()?;
            return Ok(GroupSpec::Product(groups));
        }
        let t = parts[0].as_str();
        if let Some(inner) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            return GroupSpec::parse_spec(inner);
        }
        if let Some(rest) = t.strip_prefix('Z') {
            let s: u32 = rest.parse().map_err(|_| Error::ParseGroup(text.to_string()))?;
            if s == 0 {
                return Err(Error::ParseGroup(text.to_string()));
            }
            return Ok(GroupSpec::Cyclic(s));
        }
        if let Some(inner) = t.strip_prefix("GF(").and_then(|s| s.strip_suffix(')')) {
            let (order_text, modulus) = match inner.split_once(';') {
                Some((o, m)) => (o, Some(m)),
                None => (inner, None),
            };
            let order: u32 = order_text
                .parse()
                .map_err(|_| Error::ParseGroup(text.to_string()))?;
            let (p, u) = prime_power(order).ok_or_else(|| Error::ParseGroup(text.to_string()))?;
            let field = match modulus {
                Some(m) => FieldSpec::new(p, u, Some(&poly::parse(m, p)?))?,
                None => FieldSpec::new(p, u, None)?,
            };
            return Ok(GroupSpec::Field(field));
        }
        Err(Error::ParseGroup(text.to_string()))
    }

    /// Prime divisors of the group order.
    pub fn primes(&self) -> Vec<u32> {
        let mut n = self.order();
        let mut out = Vec::new();
        let mut d = 2;
        while n > 1 {
            if n % d == 0 {
                out.push(d);
                while n % d == 0 {
                    n /= d;
                }
            }
            d += 1;
        }
        out
    }

    /// True when this group and `other` have identical addition on indices,
    /// so arrays can be moved between them without renumbering (e.g. GF(4)
    /// and Z2*Z2, where x maps to `10`).
    pub fn same_addition(&self, other: &GroupSpec) -> bool {
        if self.order() != other.order() {
            return false;
        }
        self.elements().all(|a| {
            self.elements()
                .all(|b| self.add_unchecked(a, b) == other.add_unchecked(a, b))
        })
    }
}

fn split_top_level(text: &str, sep: char) -> Option<Vec<String>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in text.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return None;
        }
        if c == sep && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    if depth != 0 || out.iter().any(String::is_empty) || cur.is_empty() {
        return None;
    }
    out.push(cur);
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(text: &str) -> GroupSpec {
        GroupSpec::parse_spec(text).unwrap()
    }

    #[test]
    fn product_addition() {
        let z2z6 = g("Z2*Z6");
        let a = z2z6.parse("15").unwrap();
        let b = z2z6.parse("11").unwrap();
        assert_eq!(z2z6.format(z2z6.add(a, b).unwrap()), "00");
        let c = z2z6.parse("13").unwrap();
        assert_eq!(z2z6.format(z2z6.add(a, c).unwrap()), "02");

        let z2z2 = g("Z2*Z2");
        let s = z2z2.add(z2z2.parse("01").unwrap(), z2z2.parse("11").unwrap()).unwrap();
        assert_eq!(z2z2.format(s), "10");

        let z12 = GroupSpec::Cyclic(12);
        assert_eq!(z12.add(Elem(7), Elem(8)).unwrap(), Elem(3));
    }

    #[test]
    fn product_enumeration_is_last_fastest() {
        let z2z2 = g("Z2*Z2");
        let names: Vec<String> = z2z2.elements().map(|e| z2z2.format(e)).collect();
        assert_eq!(names, ["00", "01", "10", "11"]);
    }

    #[test]
    fn paired_level_text() {
        let pg = g("GF(4)*GF(3)");
        assert_eq!(pg.order(), 12);
        for (text, idx) in [("00", 0), ("x1", 7), ("(x+1)2", 11), ("12", 5)] {
            let e = pg.parse(text).unwrap();
            assert_eq!(e, Elem(idx));
            assert_eq!(pg.format(e), text);
        }
        assert!(pg.parse("x").is_err());
        assert!(pg.parse("x13").is_err());
    }

    #[test]
    fn spec_text_round_trip() {
        for t in ["Z6", "Z2*Z6", "GF(8;x^3+x+1)", "GF(4;x^2+x+1)*GF(3;x+1)"] {
            assert_eq!(g(t).to_string(), t);
        }
        assert_eq!(g("GF(8)"), g("GF(8;x^3+x+1)"));
        assert!(GroupSpec::parse_spec("GF(6)").is_err());
        assert!(GroupSpec::parse_spec("Q7").is_err());
        assert!(GroupSpec::parse_spec("Z2*").is_err());
    }

    #[test]
    fn gf4_and_z2z2_share_addition() {
        assert!(g("GF(4)").same_addition(&g("Z2*Z2")));
        assert!(!g("GF(4)").same_addition(&g("Z4")));
    }

    #[test]
    fn negation() {
        let z6 = GroupSpec::Cyclic(6);
        assert_eq!(z6.neg(Elem(2)), Elem(4));
        assert_eq!(z6.neg(Elem(0)), Elem(0));
        let gf9 = g("GF(9)");
        for a in gf9.elements() {
            assert_eq!(gf9.add(a, gf9.neg(a)).unwrap(), Elem(0));
        }
    }
}
