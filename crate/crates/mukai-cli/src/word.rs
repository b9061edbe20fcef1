//! Text syntax for vectors and equivalence words.
//!
//! A vector is `r,c,s` with arbitrary-precision integer components. A word
//! is a semicolon-separated list of generators, applied left to right as
//! written: `dual`, `shift`, `tensor:d`, `reflect:r,c,s`. Example:
//!
//! ```text
//! reflect:2,1,5;dual;shift;tensor:1
//! ```

use std::str::FromStr;

use num_bigint::BigInt;

use mukai_core::{EquivalenceWord, Generator, MukaiVector};

pub fn parse_vector(input: &str) -> Result<MukaiVector, String> {
    let parts: Vec<&str> = input.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!(
            "expected three comma-separated integers r,c,s, got `{input}`"
        ));
    }
    let component = |label: &str, text: &str| {
        BigInt::from_str(text).map_err(|_| format!("component {label} is not an integer: `{text}`"))
    };
    Ok(MukaiVector {
        r: component("r", parts[0])?,
        c: component("c", parts[1])?,
        s: component("s", parts[2])?,
    })
}

pub fn parse_word(input: &str) -> Result<EquivalenceWord, String> {
    let mut generators = Vec::new();
    for token in input.split(';') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        let (head, tail) = match token.split_once(':') {
            Some((head, tail)) => (head.trim(), Some(tail.trim())),
            None => (token, None),
        };
        let gen = match (head, tail) {
            ("dual", None) => Generator::Dual,
            ("shift", None) => Generator::Shift,
            ("tensor", Some(d)) => Generator::Tensor(
                BigInt::from_str(d)
                    .map_err(|_| format!("tensor degree is not an integer: `{d}`"))?,
            ),
            ("reflect", Some(v)) => Generator::Reflect(parse_vector(v)?),
            ("tensor" | "reflect", None) => {
                return Err(format!(
                    "generator `{head}` needs an argument, e.g. `{head}:...`"
                ))
            }
            _ => {
                return Err(format!(
                    "unknown generator `{token}`; expected dual, shift, tensor:d or reflect:r,c,s"
                ))
            }
        };
        generators.push(gen);
    }
    Ok(EquivalenceWord(generators))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_vectors() {
        assert_eq!(parse_vector("1,1,7").unwrap(), MukaiVector::new(1, 1, 7));
        assert_eq!(
            parse_vector(" -2 , 0 , 13 ").unwrap(),
            MukaiVector::new(-2, 0, 13)
        );
        assert!(parse_vector("1,2").is_err());
        assert!(parse_vector("1,2,x").is_err());
        assert!(parse_vector("1.5,2,3").is_err());
    }

    #[test]
    fn parses_words() {
        let word = parse_word("reflect:2,1,5;dual;shift;tensor:1").unwrap();
        assert_eq!(
            word.0,
            vec![
                Generator::Reflect(MukaiVector::new(2, 1, 5)),
                Generator::Dual,
                Generator::Shift,
                Generator::Tensor(BigInt::from(1)),
            ]
        );
        assert_eq!(parse_word("").unwrap(), EquivalenceWord::identity());
        assert_eq!(parse_word("dual;;dual").unwrap().0.len(), 2);
        assert!(parse_word("twist:1").is_err());
        assert!(parse_word("tensor").is_err());
        assert!(parse_word("reflect:1,2").is_err());
    }
}
