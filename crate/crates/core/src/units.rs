//! SI prefixes for performance values.
//!
//! Internally everything is flop/s. Prefixes appear only where numbers are
//! read from or written for people: `0.1254E` is 0.1254 Eflop/s.

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Prefix {
    None,
    Kilo,
    Mega,
    Giga,
    Tera,
    Peta,
    Exa,
}

impl Prefix {
    pub fn factor(self) -> f64 {
        match self {
            Prefix::None => 1.0,
            Prefix::Kilo => 1e3,
            Prefix::Mega => 1e6,
            Prefix::Giga => 1e9,
            Prefix::Tera => 1e12,
            Prefix::Peta => 1e15,
            Prefix::Exa => 1e18,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Prefix::None => "",
            Prefix::Kilo => "k",
            Prefix::Mega => "M",
            Prefix::Giga => "G",
            Prefix::Tera => "T",
            Prefix::Peta => "P",
            Prefix::Exa => "E",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        Some(match s {
            "" => Prefix::None,
            "k" | "K" => Prefix::Kilo,
            "M" => Prefix::Mega,
            "G" => Prefix::Giga,
            "T" => Prefix::Tera,
            "P" => Prefix::Peta,
            "E" => Prefix::Exa,
            _ => return None,
        })
    }

    /// Unit label such as `Pflop/s`.
    pub fn flops_label(self) -> String {
        format!("{}flop/s", self.symbol())
    }

    /// Converts a base-unit value into this prefix.
    pub fn scale(self, value: f64) -> f64 {
        value / self.factor()
    }
}

impl FromStr for Prefix {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_end_matches("flop/s").trim_end_matches("flops");
        Prefix::from_symbol(trimmed).ok_or_else(|| format!("unknown unit prefix '{s}'"))
    }
}

impl fmt::Display for Prefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Parses a number with an optional trailing SI prefix.
///
/// `"100e9"`, `"100G"` and `"0.1E"` are all accepted. A trailing `E` is a
/// prefix only when nothing follows it, so `"1E5"` still means 10⁵.
pub fn parse_quantity(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let (digits, prefix) = match s.char_indices().last() {
        Some((idx, c)) if c.is_ascii_alphabetic() => match Prefix::from_symbol(&s[idx..]) {
            Some(p) => (&s[..idx], p),
            None => return Err(format!("invalid number '{s}'")),
        },
        Some(_) => (s, Prefix::None),
        None => return Err("empty number".to_string()),
    };
    let value: f64 = digits
        .parse()
        .map_err(|_| format!("invalid number '{s}'"))?;
    if !value.is_finite() {
        return Err(format!("number '{s}' is not finite"));
    }
    Ok(value * prefix.factor())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suffixes() {
        assert_eq!(parse_quantity("100e9").unwrap(), 100e9);
        assert_eq!(parse_quantity("100G").unwrap(), 100e9);
        assert_eq!(parse_quantity("0.1254E").unwrap(), 0.1254 * 1e18);
        assert_eq!(parse_quantity("1E5").unwrap(), 1e5);
        assert_eq!(parse_quantity("2.5").unwrap(), 2.5);
        assert_eq!(parse_quantity(" 3P ").unwrap(), 3e15);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_quantity("").is_err());
        assert!(parse_quantity("abc").is_err());
        assert!(parse_quantity("1X").is_err());
        assert!(parse_quantity("1e").is_err());
        assert!(parse_quantity("inf").is_err());
    }

    #[test]
    fn prefix_parse() {
        assert_eq!("P".parse::<Prefix>().unwrap(), Prefix::Peta);
        assert_eq!("Eflop/s".parse::<Prefix>().unwrap(), Prefix::Exa);
        assert_eq!(Prefix::Exa.flops_label(), "Eflop/s");
        assert!("Q".parse::<Prefix>().is_err());
    }
}
