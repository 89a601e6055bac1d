//! Rational functions `num / den` over ℚ.
//!
//! There is no multivariate gcd. Normalization cancels common monomial
//! factors, folds constant denominators, attempts exact trial division in
//! both directions and finally scales the pair to primitive integer
//! coefficients with a positive leading denominator coefficient. Equality is
//! decided by cross-multiplication.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::{format_rational, Monomial, MultiPoly};
use super::Rational;

#[derive(Clone, Debug)]
pub struct RationalFn {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFn {
    pub fn zero(nvars: usize) -> Self {
        RationalFn {
            num: MultiPoly::zero(nvars),
            den: MultiPoly::one(nvars),
        }
    }

    pub fn one(nvars: usize) -> Self {
        RationalFn {
            num: MultiPoly::one(nvars),
            den: MultiPoly::one(nvars),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_poly(MultiPoly::constant(nvars, c))
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rational::from_integer(BigInt::from(c)))
    }

    pub fn from_ratio(nvars: usize, n: i64, d: i64) -> Self {
        Self::constant(nvars, Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Self::from_poly(MultiPoly::var(nvars, index))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let nvars = p.nvars();
        Self::normalized(p, MultiPoly::one(nvars))
    }

    /// `None` when `den` is the zero polynomial.
    pub fn try_new(num: MultiPoly, den: MultiPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        assert_eq!(num.nvars(), den.nvars(), "variable count mismatch");
        Some(Self::normalized(num, den))
    }

    pub fn new(num: MultiPoly, den: MultiPoly) -> Self {
        Self::try_new(num, den).expect("rational function with zero denominator")
    }

    fn normalized(mut num: MultiPoly, mut den: MultiPoly) -> Self {
        let nvars = num.nvars();
        if num.is_zero() {
            return Self::zero(nvars);
        }
        if let (Some(a), Some(b)) = (num.monomial_content(), den.monomial_content()) {
            let common = a.meet(&b);
            if !common.is_one() {
                num = num.div_monomial(&common);
                den = den.div_monomial(&common);
            }
        }
        if let Some(c) = den.constant_value() {
            num = num.scale(&c.recip());
            den = MultiPoly::one(nvars);
        } else if let Some(q) = num.div_exact(&den) {
            num = q;
            den = MultiPoly::one(nvars);
        } else if !num.is_constant() && num.total_degree() <= den.total_degree() {
            if let Some(q) = den.div_exact(&num) {
                num = MultiPoly::one(nvars);
                den = q;
            }
        }
        let lcm = num_integer::Integer::lcm(
            &num.coefficient_denominator_lcm(),
            &den.coefficient_denominator_lcm(),
        );
        let mut factor = Rational::from_integer(lcm);
        let scaled_num = num.scale(&factor);
        let scaled_den = den.scale(&factor);
        let g = num_integer::Integer::gcd(
            &scaled_num.coefficient_numerator_gcd(),
            &scaled_den.coefficient_numerator_gcd(),
        );
        factor = Rational::from_integer(g).recip();
        let mut num = scaled_num.scale(&factor);
        let mut den = scaled_den.scale(&factor);
        if den.leading_term().is_some_and(|(_, c)| c.is_negative()) {
            num = -&num;
            den = -&den;
        }
        RationalFn { num, den }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(n / d)
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn checked_div(&self, rhs: &RationalFn) -> Option<RationalFn> {
        if rhs.is_zero() {
            return None;
        }
        Some(Self::normalized(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn recip(&self) -> Option<RationalFn> {
        if self.is_zero() {
            return None;
        }
        Some(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, exp: u32) -> RationalFn {
        RationalFn {
            num: self.num.pow(exp),
            den: self.den.pow(exp),
        }
    }

    pub fn scale(&self, c: &Rational) -> RationalFn {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    /// Exact partial derivative by the quotient rule.
    pub fn derivative(&self, var: usize) -> RationalFn {
        let dn = self.num.derivative(var);
        if self.den.is_constant() {
            return Self::normalized(dn, self.den.clone());
        }
        let dd = self.den.derivative(var);
        if dd.is_zero() {
            return Self::normalized(dn, self.den.clone());
        }
        let top = &(&dn * &self.den) - &(&self.num * &dd);
        Self::normalized(top, &self.den * &self.den)
    }

    /// Value at a point, or the value of the vanishing denominator's
    /// polynomial when the point is a pole.
    pub fn eval(&self, values: &[Rational]) -> Result<Rational, Rational> {
        let d = self.den.eval(values);
        if d.is_zero() {
            return Err(d);
        }
        Ok(self.num.eval(values) / d)
    }

    pub fn to_expr(&self, names: &[String]) -> String {
        if let Some(c) = self.den.constant_value() {
            return self.num.scale(&c.recip()).to_expr(names);
        }
        let num = self.num.to_expr(names);
        let num = if self.num.num_terms() > 1 {
            format!("({num})")
        } else {
            num
        };
        let den_is_bare_monomial = self.den.num_terms() == 1
            && self.den.leading_term().is_some_and(|(_, c)| c.is_one());
        let den = self.den.to_expr(names);
        if den_is_bare_monomial {
            format!("{num}/{den}")
        } else {
            format!("{num}/({den})")
        }
    }

    /// Display adaptor with explicit coordinate names.
    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        Named { f: self, names }
    }

    /// Lifts into a larger variable set via an index map.
    pub fn remap(&self, nvars: usize, map: &[Option<usize>]) -> Option<RationalFn> {
        Some(Self::normalized(
            self.num.remap(nvars, map)?,
            self.den.remap(nvars, map)?,
        ))
    }
}

struct Named<'a> {
    f: &'a RationalFn,
    names: &'a [String],
}

impl fmt::Display for Named<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.f.to_expr(self.names))
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars()).map(|i| format!("v{i}")).collect();
        f.write_str(&self.to_expr(&names))
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        if self.num == other.num && self.den == other.den {
            return true;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFn {}

impl std::ops::Add for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            return RationalFn::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RationalFn::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl std::ops::Sub for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFn::normalized(&self.num - &rhs.num, self.den.clone());
        }
        RationalFn::normalized(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl std::ops::Mul for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        if self.is_zero() || rhs.is_zero() {
            return RationalFn::zero(self.nvars());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFn::normalized(&self.num * &rhs.num, self.den.clone());
        }
        RationalFn::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl std::ops::Div for &RationalFn {
    type Output = RationalFn;
    fn div(self, rhs: &RationalFn) -> RationalFn {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

impl std::ops::Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl std::ops::$tr<RationalFn> for RationalFn {
            type Output = RationalFn;
            fn $m(self, rhs: RationalFn) -> RationalFn { std::ops::$tr::$m(&self, &rhs) }
        }
        impl std::ops::$tr<&RationalFn> for RationalFn {
            type Output = RationalFn;
            fn $m(self, rhs: &RationalFn) -> RationalFn { std::ops::$tr::$m(&self, rhs) }
        }
        impl std::ops::$tr<RationalFn> for &RationalFn {
            type Output = RationalFn;
            fn $m(self, rhs: RationalFn) -> RationalFn { std::ops::$tr::$m(self, &rhs) }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl std::ops::Neg for RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        -&self
    }
}

impl std::ops::AddAssign<&RationalFn> for RationalFn {
    fn add_assign(&mut self, rhs: &RationalFn) {
        *self = &*self + rhs;
    }
}

impl std::ops::SubAssign<&RationalFn> for RationalFn {
    fn sub_assign(&mut self, rhs: &RationalFn) {
        *self = &*self - rhs;
    }
}

/// Prints an exact rational as an expression literal.
pub fn rational_to_expr(c: &Rational) -> String {
    format_rational(c)
}

/// Convenience used by the monomial-aware constructors in tests and gallery
/// code.
pub fn monomial_fn(nvars: usize, coeff: Rational, exps: Vec<u32>) -> RationalFn {
    assert_eq!(exps.len(), nvars);
    RationalFn::from_poly(MultiPoly::term(coeff, Monomial::from_exponents(exps)))
}

impl RationalFn {
    pub fn is_minus_one(&self) -> bool {
        self.constant_value().is_some_and(|c| (-c).is_one())
    }

    pub fn is_nonzero_constant(&self) -> bool {
        self.constant_value().is_some_and(|c| !c.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into(), "z".into()]
    }

    fn y() -> RationalFn {
        RationalFn::var(3, 1)
    }

    #[test]
    fn partial_derivatives() {
        let z = RationalFn::var(3, 2);
        let f = &y().pow(2) * &z;
        assert_eq!(f.derivative(1), RationalFn::from_int(3, 2) * (&y() * &z));
        assert!(RationalFn::from_int(3, 7).derivative(0).is_zero());
        let inv = RationalFn::one(3) / y();
        assert_eq!(inv.derivative(1), -(RationalFn::one(3) / y().pow(2)));
        assert_eq!(inv.derivative(1).to_expr(&names()), "-1/y^2");
    }

    #[test]
    fn normalization_cancels_obvious_factors() {
        let x = RationalFn::var(3, 0);
        let one = RationalFn::one(3);
        let a = &(&x + &y()) * &(&x - &one);
        let q = &a / &(&x - &one);
        assert!(q.is_polynomial());
        assert_eq!(q, &x + &y());
        let r = (&y() * &y()) / (RationalFn::from_int(3, -2) * y());
        assert_eq!(r.to_expr(&names()), "-1/2*y");
        assert!(r.denom().is_constant());
    }

    #[test]
    fn equality_is_cross_multiplicative() {
        let x = RationalFn::var(3, 0);
        let one = RationalFn::one(3);
        let a = &one / &(&x + &one);
        let b = &y() / &(&(&x * &y()) + &y());
        assert_eq!(a, b);
        assert_ne!(a, &one / &x);
    }

    #[test]
    fn printing_distinguishes_literal_and_quotient() {
        let two_over_y = RationalFn::from_int(3, 2) / y();
        assert_eq!(two_over_y.to_expr(&names()), "2/y");
        let f = &RationalFn::one(3) / &(RationalFn::from_int(3, 2) * y());
        assert_eq!(f.to_expr(&names()), "1/(2*y)");
        let g = &(&y() + &RationalFn::one(3)) / &(&y() - &RationalFn::one(3));
        assert_eq!(g.to_expr(&names()), "(y + 1)/(y - 1)");
    }

    #[test]
    fn evaluation_reports_poles() {
        let inv = RationalFn::one(3) / y();
        let zero = Rational::zero();
        let two = Rational::from_integer(BigInt::from(2));
        assert!(inv.eval(&[zero.clone(), zero.clone(), zero.clone()]).is_err());
        assert_eq!(
            inv.eval(&[zero.clone(), two, zero]).unwrap(),
            Rational::new(BigInt::one(), BigInt::from(2))
        );
    }
}
