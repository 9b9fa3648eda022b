//! Parsing of modular-form expressions such as `24*Delta^-1 - c4^3*c6/2`.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := ["+"|"-"] term (("+"|"-") term)*
//! term   := factor ("*" factor | "/" integer)*
//! factor := rational | gen ["^" exponent]
//! gen    := c4 | c6 | Delta | D | Δ | DELTA_INV
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::mfring::{normalize, MfElement, Polynomial};

/// Parses `src` into a normal-form element.
pub fn parse_element(src: &str) -> Result<MfElement> {
    normalize(&parse_polynomial(src)?)
}

/// Parses `src` without rewriting `c6²`.
pub fn parse_polynomial(src: &str) -> Result<Polynomial> {
    let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { chars, pos: 0 };
    let mut poly = Polynomial::new();
    let mut first = true;
    while p.pos < p.chars.len() {
        let negative = match p.peek() {
            Some('+') => {
                p.pos += 1;
                false
            }
            Some('-') => {
                p.pos += 1;
                true
            }
            _ if first => false,
            Some(c) => return Err(p.error(&format!("expected `+` or `-`, found `{c}`"))),
            None => unreachable!(),
        };
        first = false;
        let (mut c, c4, c6, d) = p.term()?;
        if negative {
            c = -c;
        }
        poly.push(c, c4, c6, d);
    }
    Ok(poly)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at position {}", self.pos))
    }

    fn term(&mut self) -> Result<(BigRational, u32, u32, i64)> {
        let mut coeff = BigRational::one();
        let (mut c4, mut c6, mut d) = (0u32, 0u32, 0i64);
        self.factor(&mut coeff, &mut c4, &mut c6, &mut d)?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    self.factor(&mut coeff, &mut c4, &mut c6, &mut d)?;
                }
                Some('/') => {
                    self.pos += 1;
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(self.error("division by zero"));
                    }
                    coeff /= BigRational::from_integer(den);
                }
                _ => break,
            }
        }
        Ok((coeff, c4, c6, d))
    }

    fn factor(&mut self, coeff: &mut BigRational, c4: &mut u32, c6: &mut u32, d: &mut i64) -> Result<()> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                *coeff *= BigRational::from_integer(self.integer()?);
                Ok(())
            }
            Some(_) => {
                let name = self.ident();
                let (gc4, gc6, gd) = match name.as_str() {
                    "c4" => (1, 0, 0),
                    "c6" => (0, 1, 0),
                    "Delta" | "delta" | "DELTA" | "D" | "Δ" => (0, 0, 1),
                    "DELTA_INV" | "Delta_inv" | "delta_inv" => (0, 0, -1),
                    "" => return Err(self.error("expected a factor")),
                    other => return Err(Error::Parse(format!("unknown generator `{other}`"))),
                };
                let e = if self.peek() == Some('^') {
                    self.pos += 1;
                    self.exponent()?
                } else {
                    1
                };
                if e < 0 && (gc4 > 0 || gc6 > 0) {
                    return Err(Error::Parse(format!("negative exponent on `{name}`")));
                }
                *c4 += (gc4 * e) as u32;
                *c6 += (gc6 * e) as u32;
                *d += gd * e;
                Ok(())
            }
            None => Err(self.error("expected a factor")),
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = self.peek() == Some('(');
        if paren {
            self.pos += 1;
        }
        let negative = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let n: i64 = self
            .integer()?
            .try_into()
            .map_err(|_| self.error("exponent out of range"))?;
        if paren {
            if self.peek() != Some(')') {
                return Err(self.error("expected `)`"));
            }
            self.pos += 1;
        }
        Ok(if negative { -n } else { n })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mfring::Monomial;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn single_generators() {
        assert_eq!(parse_element("Delta^-1").unwrap(), MfElement::delta_power(-1));
        assert_eq!(parse_element("DELTA_INV").unwrap(), MfElement::delta_power(-1));
        assert_eq!(parse_element("c4").unwrap(), MfElement::c4());
        assert_eq!(parse_element("Δ^(-16)").unwrap(), MfElement::delta_power(-16));
    }

    #[test]
    fn coefficients_and_signs() {
        let f = parse_element("-c4^3 + 1728*Delta").unwrap();
        assert_eq!(f.to_string(), "-c4^3 + 1728*Delta");
        let g = parse_element("3/2 * c4 * c6 * Delta^-1").unwrap();
        assert_eq!(g.coefficient(&Monomial::new(1, 1, -1).unwrap()), r(3, 2));
        let h = parse_element("c4^2*c6/12").unwrap();
        assert_eq!(h.coefficient(&Monomial::new(2, 1, 0).unwrap()), r(1, 12));
    }

    #[test]
    fn c6_squared_is_rewritten() {
        let f = parse_element("c6^2 - c4^3").unwrap();
        assert_eq!(f, MfElement::delta_power(1).scale(&r(-1728, 1)));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_element(""), Err(Error::Parse(_))));
        assert!(matches!(parse_element("c5"), Err(Error::Parse(_))));
        assert!(matches!(parse_element("c4^-1"), Err(Error::Parse(_))));
        assert!(matches!(parse_element("c4 c6"), Err(Error::Parse(_))));
        assert!(matches!(parse_element("1/0"), Err(Error::Parse(_))));
        assert!(matches!(parse_element("c4 + c6"), Err(Error::MixedWeight { .. })));
    }
}
