use std::fmt;
use std::str::FromStr;

use crate::abgroup::Elem;
use crate::error::{Error, Result};

/// Name of a simple object.
///
/// Text form: `g(x)`, `pt(x,i)`, `rho(x,i)`, `sigma(x,y)`, `1`, `alpha`,
/// `rho0`, `rho1`, `sigma(x)` and `(a;b)` for products, where group elements
/// are written `3` or `[1,2]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// Simple object of a pointed category.
    Pointed(Elem),
    /// Invertible object ρ^i_g of the center of a TY category.
    TYPt(Elem, u8),
    /// Object ρ^{(g,i)} of dimension √|G| of the center.
    TYRho(Elem, u8),
    /// Object σ_{g,h} of dimension 2, stored with index(g) < index(h).
    TYSigma(Elem, Elem),
    MPUnit,
    MPAlpha,
    MPRho(u8),
    /// σ_h for h in the positive set.
    MPSigma(Elem),
    Product(Box<Label>, Box<Label>),
}

impl Label {
    pub fn product(a: Label, b: Label) -> Label {
        Label::Product(Box::new(a), Box::new(b))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Pointed(g) => write!(f, "g({g})"),
            Label::TYPt(g, i) => write!(f, "pt({g},{i})"),
            Label::TYRho(g, i) => write!(f, "rho({g},{i})"),
            Label::TYSigma(g, h) => write!(f, "sigma({g},{h})"),
            Label::MPUnit => write!(f, "1"),
            Label::MPAlpha => write!(f, "alpha"),
            Label::MPRho(i) => write!(f, "rho{i}"),
            Label::MPSigma(h) => write!(f, "sigma({h})"),
            Label::Product(a, b) => write!(f, "({a};{b})"),
        }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn bad(s: &str) -> Error {
    Error::Parse(format!("bad label {s:?}"))
}

/// Splits at top-level occurrences of `sep`, ignoring nested brackets.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

pub(crate) fn parse_elem(s: &str) -> Result<Elem> {
    s.parse()
}

fn parse_bit(s: &str, whole: &str) -> Result<u8> {
    match s.trim() {
        "0" => Ok(0),
        "1" => Ok(1),
        _ => Err(bad(whole)),
    }
}

impl FromStr for Label {
    type Err = Error;
    fn from_str(s: &str) -> Result<Label> {
        let s = s.trim();
        match s {
            "1" => return Ok(Label::MPUnit),
            "alpha" => return Ok(Label::MPAlpha),
            "rho0" => return Ok(Label::MPRho(0)),
            "rho1" => return Ok(Label::MPRho(1)),
            _ => {}
        }
        if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            let parts = split_top(inner, ';');
            if parts.len() == 2 {
                return Ok(Label::product(parts[0].parse()?, parts[1].parse()?));
            }
            return Err(bad(s));
        }
        let open = s.find('(').ok_or_else(|| bad(s))?;
        let head = &s[..open];
        let args = s[open + 1..].strip_suffix(')').ok_or_else(|| bad(s))?;
        let args = split_top(args, ',');
        match (head, args.as_slice()) {
            ("g", [x]) => Ok(Label::Pointed(parse_elem(x)?)),
            ("pt", [x, i]) => Ok(Label::TYPt(parse_elem(x)?, parse_bit(i, s)?)),
            ("rho", [x, i]) => Ok(Label::TYRho(parse_elem(x)?, parse_bit(i, s)?)),
            ("sigma", [x, y]) => Ok(Label::TYSigma(parse_elem(x)?, parse_elem(y)?)),
            ("sigma", [x]) => Ok(Label::MPSigma(parse_elem(x)?)),
            _ => Err(bad(s)),
        }
    }
}

impl serde::Serialize for Label {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Label {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Label, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let labels = vec![
            Label::Pointed(Elem(vec![2])),
            Label::TYPt(Elem(vec![1, 2]), 1),
            Label::TYRho(Elem(vec![0]), 0),
            Label::TYSigma(Elem(vec![1]), Elem(vec![2])),
            Label::MPUnit,
            Label::MPAlpha,
            Label::MPRho(1),
            Label::MPSigma(Elem(vec![0, 1])),
            Label::product(Label::MPRho(0), Label::product(Label::MPAlpha, Label::Pointed(Elem(vec![1, 1])))),
            Label::Pointed(Elem(vec![])),
        ];
        for l in labels {
            let s = l.to_string();
            assert_eq!(s.parse::<Label>().unwrap(), l, "{s}");
        }
        assert!("rho2".parse::<Label>().is_err());
        assert!("pt(1,2)".parse::<Label>().is_err());
        assert!("(1;2;3)".parse::<Label>().is_err());
    }
}
