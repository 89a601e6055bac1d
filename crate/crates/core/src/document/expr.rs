//! Recursive-descent parser for rational expressions in chart coordinates.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor (('*' | '/') factor)*
//! factor  := base ('^' unsigned-int)?
//! base    := literal | identifier | '(' expr ')' | '-' factor
//! literal := int | int '/' int
//! ```
//!
//! Error positions are 0-based byte offsets into the source.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{Chart, OneForm, Rational, RationalFn};

const MAX_EXPONENT: u32 = 256;

struct Parser<'a, F> {
    src: &'a str,
    pos: usize,
    nvars: usize,
    resolve: F,
}

impl<'a, F: Fn(&str) -> Option<RationalFn>> Parser<'a, F> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn syntax(&self, expected: &str) -> Error {
        Error::Syntax {
            position: self.pos,
            expected: expected.into(),
        }
    }

    fn expr(&mut self) -> Result<RationalFn> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFn> {
        let mut acc = self.factor()?;
        while let Some(c @ ('*' | '/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.factor()?;
            acc = if c == '*' {
                &acc * &rhs
            } else {
                acc.checked_div(&rhs)
                    .ok_or(Error::ZeroDenominator { position: at })?
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RationalFn> {
        let base = self.base()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.syntax("unsigned integer exponent"));
            }
            let e: u32 = digits
                .parse()
                .ok()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or(Error::Syntax {
                    position: start,
                    expected: format!("exponent at most {MAX_EXPONENT}"),
                })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        let len = self.src[start..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        self.pos += len;
        &self.src[start..start + len]
    }

    fn base(&mut self) -> Result<RationalFn> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.syntax("')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some('-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(c) if c.is_ascii_digit() => self.literal(),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                let len = self.src[start..]
                    .bytes()
                    .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
                    .count();
                self.pos += len;
                let name = &self.src[start..start + len];
                (self.resolve)(name).ok_or_else(|| Error::UnknownIdentifier {
                    name: name.into(),
                    position: start,
                })
            }
            _ => Err(self.syntax("number, coordinate, '(' or '-'")),
        }
    }

    fn literal(&mut self) -> Result<RationalFn> {
        let num: BigInt = self.digits().parse().expect("digits");
        let save = self.pos;
        if self.peek() == Some('/') {
            let slash = self.pos;
            self.pos += 1;
            self.skip_ws();
            let den = self.digits();
            if den.is_empty() {
                // operator division, handled by `term`
                self.pos = save;
            } else {
                let den: BigInt = den.parse().expect("digits");
                if den.is_zero() {
                    return Err(Error::ZeroDenominator { position: slash });
                }
                return Ok(RationalFn::constant(self.nvars, Rational::new(num, den)));
            }
        }
        Ok(RationalFn::constant(self.nvars, Rational::from_integer(num)))
    }
}

fn parse_with(src: &str, nvars: usize, resolve: impl Fn(&str) -> Option<RationalFn>) -> Result<RationalFn> {
    let mut p = Parser {
        src,
        pos: 0,
        nvars,
        resolve,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.syntax("operator or end of input"));
    }
    Ok(e)
}

/// Parses a rational function in the chart's coordinates.
pub fn parse_expression(src: &str, chart: &Chart) -> Result<RationalFn> {
    let dim = chart.dim();
    parse_with(src, dim, |name| {
        chart.index_of(name).map(|i| RationalFn::var(dim, i))
    })
}

/// Canonical printing, re-parsable by [`parse_expression`].
pub fn print_expression(f: &RationalFn, chart: &Chart) -> String {
    f.to_expr(chart.names())
}

/// Parses a 1-form such as `dz - y*dx`: an expression that is linear in the
/// coordinate differentials `d<name>`.
pub fn parse_one_form(src: &str, chart: &crate::exact::ChartRef) -> Result<OneForm> {
    let dim = chart.dim();
    let total = 2 * dim;
    let lifted = parse_with(src, total, |name| {
        if let Some(i) = chart.index_of(name) {
            return Some(RationalFn::var(total, i));
        }
        name.strip_prefix('d')
            .and_then(|rest| chart.index_of(rest))
            .map(|i| RationalFn::var(total, dim + i))
    })?;
    let not_linear = || Error::Syntax {
        position: 0,
        expected: "an expression linear in the coordinate differentials".into(),
    };
    let map: Vec<Option<usize>> = (0..total).map(|k| (k < dim).then_some(k)).collect();
    let mut comps = Vec::with_capacity(dim);
    let mut rest = lifted.clone();
    for i in 0..dim {
        let c = lifted.derivative(dim + i);
        let base = c.remap(dim, &map).ok_or_else(not_linear)?;
        rest -= &(&c * &RationalFn::var(total, dim + i));
        comps.push(base);
    }
    if !rest.is_zero() {
        return Err(not_linear());
    }
    OneForm::new(chart, comps)
}

/// Canonical 1-form printing, e.g. `-y*dx + dz`.
pub fn print_one_form(w: &OneForm) -> String {
    w.to_expr()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chart() -> crate::exact::ChartRef {
        Chart::darboux(1)
    }

    #[test]
    fn examples() {
        let c = chart();
        let f = parse_expression("y^2*z - 1/2", &c).unwrap();
        let y = RationalFn::var(3, 1);
        let z = RationalFn::var(3, 2);
        assert_eq!(f, &(&(&y * &y) * &z) - &RationalFn::from_ratio(3, 1, 2));
        assert_eq!(
            parse_expression("1/(x", &c),
            Err(Error::Syntax {
                position: 4,
                expected: "')'".into()
            })
        );
        assert_eq!(parse_expression("-y", &c).unwrap(), -&y);
    }

    #[test]
    fn one_forms() {
        let c = chart();
        let w = parse_one_form("dz - y*dx", &c).unwrap();
        assert_eq!(print_one_form(&w), "-y*dx + dz");
        assert!(parse_one_form("x*dx*dy", &c).is_err());
        assert!(parse_one_form("dz + 1", &c).is_err());
        assert!(parse_one_form("dz/dx", &c).is_err());
    }
}
