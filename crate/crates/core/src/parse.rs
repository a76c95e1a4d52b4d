//! Recursive-descent parser for the series and pair text grammar.
//!
//! ```text
//! series := ['-'] term (('+'|'-') term)* ['+' 'O(x^' nat ')']
//! term   := coeff | coeff '*'? 'x' ('^' nat)? | 'x' ('^' nat)?
//! coeff  := int ('/' posint)?
//! pair   := '(' series ';' series ')'
//! ```
//!
//! An explicit `O(x^N)` suffix fixes the precision of that series; otherwise
//! the caller-supplied default applies. Exponents at or above the precision
//! are a parse error, never silent truncation.

use num_bigint::BigInt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rational::{Field, Rational};
use crate::riordan::RiordanElement;
use crate::series::Series;

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            input: text.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, expected: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            expected: expected.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.input.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, byte: u8, expected: &str) -> Result<()> {
        if self.eat(byte) {
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.input.len()
    }

    fn digits(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while self.peek().map_or(false, |b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("digit"));
        }
        Ok(std::str::from_utf8(&self.input[start..self.pos]).expect("ascii digits"))
    }

    fn natural(&mut self) -> Result<usize> {
        let d = self.digits()?;
        d.parse::<usize>().map_err(|_| self.error("natural number"))
    }

    /// coeff := int ('/' posint)?  (sign handled by the caller)
    fn unsigned_coeff(&mut self) -> Result<Rational> {
        let numer = BigInt::from_str(self.digits()?).expect("digits");
        if self.eat(b'/') {
            let denom = BigInt::from_str(self.digits()?).expect("digits");
            if denom == BigInt::from(0) {
                return Err(self.error("positive denominator"));
            }
            Rational::from_big(numer, denom)
        } else {
            Rational::from_big(numer, BigInt::from(1))
        }
    }

    /// One term: returns (coefficient, power). Does not consume the sign.
    fn term(&mut self) -> Result<(Rational, usize)> {
        self.skip_ws();
        let coeff = if self.peek().map_or(false, |b| b.is_ascii_digit()) {
            let c = self.unsigned_coeff()?;
            self.skip_ws();
            // optional '*' before x
            let mark = self.pos;
            if self.eat(b'*') {
                self.skip_ws();
                if self.peek() != Some(b'x') {
                    self.pos = mark;
                    return Err(self.error("'x' after '*'"));
                }
            }
            Some(c)
        } else {
            None
        };
        self.skip_ws();
        if self.eat(b'x') {
            let power = if self.eat(b'^') { self.natural()? } else { 1 };
            Ok((coeff.unwrap_or_else(|| Rational::from_int(1)), power))
        } else {
            match coeff {
                Some(c) => Ok((c, 0)),
                None => Err(self.error("coefficient or 'x'")),
            }
        }
    }

    /// Whole series body. Returns accumulated terms and an optional explicit
    /// precision from an `O(x^N)` suffix. Stops at `;` or `)` when `nested`.
    fn series_body(&mut self, nested: bool) -> Result<(Vec<(Rational, usize)>, Option<usize>)> {
        let mut terms = Vec::new();
        let mut explicit_precision = None;
        self.skip_ws();
        let mut negate = self.eat(b'-');
        loop {
            self.skip_ws();
            // O(x^N) suffix ends the series
            if self.peek() == Some(b'O') {
                self.pos += 1;
                self.expect(b'(', "'(' after O")?;
                self.skip_ws();
                self.expect(b'x', "'x' in O(x^N)")?;
                self.expect(b'^', "'^' in O(x^N)")?;
                let n = self.natural()?;
                self.skip_ws();
                self.expect(b')', "')' closing O(x^N)")?;
                explicit_precision = Some(n);
                break;
            }
            let (c, k) = self.term()?;
            terms.push((if negate { c.neg() } else { c }, k));
            self.skip_ws();
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else if self.at_end() || (nested && matches!(self.peek(), Some(b';') | Some(b')'))) {
                break;
            } else {
                return Err(self.error("'+', '-', or end of series"));
            }
        }
        Ok((terms, explicit_precision))
    }

    fn build_series(
        &self,
        terms: Vec<(Rational, usize)>,
        explicit: Option<usize>,
        default_precision: usize,
    ) -> Result<Series> {
        let precision = explicit.unwrap_or(default_precision);
        if precision < 1 {
            return Err(Error::InvalidPrecision {
                given: precision,
                required: 1,
            });
        }
        let mut coeffs = vec![Rational::from_int(0); precision];
        for (c, k) in terms {
            if k >= precision {
                return Err(Error::Parse {
                    offset: self.pos,
                    expected: format!("exponent below precision {precision}, found x^{k}"),
                });
            }
            coeffs[k] = Field::add(&coeffs[k], &c);
        }
        Series::from_coeffs(coeffs)
    }
}

/// Parses a series; `default_precision` applies when the text carries no
/// `O(x^N)` suffix.
pub fn parse_series(text: &str, default_precision: usize) -> Result<Series> {
    let mut p = Parser::new(text);
    let (terms, explicit) = p.series_body(false)?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("end of input"));
    }
    p.build_series(terms, explicit, default_precision)
}

/// Parses a pair `( series ; series )`.
pub fn parse_pair(text: &str, default_precision: usize) -> Result<RiordanElement> {
    let mut p = Parser::new(text);
    p.skip_ws();
    p.expect(b'(', "'('")?;
    let (mu_terms, mu_explicit) = p.series_body(true)?;
    p.skip_ws();
    p.expect(b';', "';' between the pair components")?;
    let (sigma_terms, sigma_explicit) = p.series_body(true)?;
    p.skip_ws();
    p.expect(b')', "')'")?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("end of input"));
    }
    let mu = p.build_series(mu_terms, mu_explicit, default_precision)?;
    let sigma = p.build_series(sigma_terms, sigma_explicit, default_precision)?;
    RiordanElement::new(mu, sigma)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_series() {
        let s = parse_series("1 + 2*x + x^3", 5).unwrap();
        assert_eq!(s, Series::from_ints(&[1, 2, 0, 1, 0]).unwrap());
    }

    #[test]
    fn rational_coefficients_and_signs() {
        let s = parse_series("-1/2*x + 3 - x^2", 4).unwrap();
        assert_eq!(s.coeff(0).unwrap(), &Rational::from_int(3));
        assert_eq!(s.coeff(1).unwrap(), &Rational::new(-1, 2));
        assert_eq!(s.coeff(2).unwrap(), &Rational::from_int(-1));
    }

    #[test]
    fn omitted_star_and_bare_x() {
        assert_eq!(
            parse_series("2x + x", 3).unwrap(),
            Series::from_ints(&[0, 3, 0]).unwrap()
        );
    }

    #[test]
    fn big_o_suffix_sets_precision() {
        let s = parse_series("1 + x + O(x^7)", 16).unwrap();
        assert_eq!(s.precision(), 7);
    }

    #[test]
    fn exponent_at_or_above_precision_is_error() {
        assert!(matches!(
            parse_series("x^5", 4),
            Err(Error::Parse { .. })
        ));
        assert!(parse_series("x^4", 4).is_err());
        assert!(parse_series("x^3", 4).is_ok());
    }

    #[test]
    fn parse_error_reports_offset() {
        match parse_series("1 + @", 4) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn pair_round_trip() {
        let p = parse_pair("(1 + x ; x + x^2)", 5).unwrap();
        assert_eq!(p.mu(), &Series::from_ints(&[1, 1, 0, 0, 0]).unwrap());
        assert_eq!(p.sigma(), &Series::from_ints(&[0, 1, 1, 0, 0]).unwrap());
        let again = parse_pair(&p.to_string(), 5).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn pair_requires_ideal_sigma() {
        assert!(matches!(
            parse_pair("(1 ; 1 + x)", 4),
            Err(Error::SigmaOutsideIdeal)
        ));
    }

    #[test]
    fn print_parse_round_trip() {
        let cases = [
            Series::from_ints(&[0, 0, 0, 0]).unwrap(),
            Series::from_ints(&[1, -2, 0, 5]).unwrap(),
            Series::from_coeffs(vec![
                Rational::new(-1, 2),
                Rational::from_int(0),
                Rational::new(3, 7),
            ])
            .unwrap(),
        ];
        for s in cases {
            let printed = s.to_string();
            assert_eq!(parse_series(&printed, 99).unwrap(), s, "{printed}");
        }
    }
}
