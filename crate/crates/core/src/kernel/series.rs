//! Dense truncated power series over exact rationals.
//!
//! A series of order `N` stores the coefficients of `z^0 ..= z^N`. Binary
//! operations on series of different orders truncate to the smaller order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{format_rational, int, ExactRational};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct TruncatedPowerSeries {
    coeffs: Vec<ExactRational>,
}

/// Selector for [`series_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Ring operation on two series, truncated at the smaller of their orders.
pub fn series_arith(
    f: &TruncatedPowerSeries,
    g: &TruncatedPowerSeries,
    op: ArithOp,
) -> Result<TruncatedPowerSeries> {
    match op {
        ArithOp::Add => Ok(f + g),
        ArithOp::Sub => Ok(f - g),
        ArithOp::Mul => Ok(f * g),
        ArithOp::Div => f.div(g),
    }
}

impl TruncatedPowerSeries {
    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    ///
    /// Panics if `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<ExactRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least a constant term");
        Self { coeffs }
    }

    /// Integer coefficients, zero-padded (or truncated) to `order`.
    pub fn from_ints(values: &[i64], order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|k| values.get(k).copied().map_or_else(ExactRational::zero, int))
            .collect();
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![ExactRational::zero(); order + 1],
        }
    }

    pub fn constant(c: ExactRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(ExactRational::one(), order)
    }

    /// The series `z`. At order 0 this is the zero series.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = ExactRational::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<ExactRational> {
        self.coeffs
    }

    /// Coefficient of `z^k`, or `None` past the truncation order.
    pub fn coeff(&self, k: usize) -> Option<&ExactRational> {
        self.coeffs.get(k)
    }

    pub fn constant_term(&self) -> &ExactRational {
        &self.coeffs[0]
    }

    pub fn set_coeff(&mut self, k: usize, value: ExactRational) {
        self.coeffs[k] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Drops every coefficient above `order`; a larger `order` is a no-op.
    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Self {
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Exact quotient `self / g`. Requires `g` to have a nonzero constant term.
    pub fn div(&self, g: &Self) -> Result<Self> {
        let g0 = g.constant_term();
        if g0.is_zero() {
            return Err(Error::NonUnitDivisor);
        }
        let n = self.order().min(g.order());
        let inv_g0 = g0.recip();
        let mut q: Vec<ExactRational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                acc -= &g.coeffs[j] * &q[k - j];
            }
            q.push(acc * &inv_g0);
        }
        Ok(Self { coeffs: q })
    }

    /// Multiplicative inverse `1 / self`.
    pub fn recip(&self) -> Result<Self> {
        Self::one(self.order()).div(self)
    }

    /// Logarithm of a series with constant term exactly 1.
    ///
    /// Uses the recurrence `n f_n = sum_{k=1}^{n} k L_k f_{n-k}`, which is the
    /// coefficient form of `f' = f L'`.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::LogOfNonUnit);
        }
        let n = self.order();
        let f = &self.coeffs;
        let mut l = vec![ExactRational::zero(); n + 1];
        for m in 1..=n {
            let mut acc = f[m].clone() * int(m as i64);
            for k in 1..m {
                acc -= &l[k] * int(k as i64) * &f[m - k];
            }
            l[m] = acc / int(m as i64);
        }
        Ok(Self { coeffs: l })
    }

    /// Exponential of a series with zero constant term, from `E' = E f'`.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::ExpNonzeroConstant);
        }
        let n = self.order();
        let f = &self.coeffs;
        let mut e = vec![ExactRational::zero(); n + 1];
        e[0] = ExactRational::one();
        for m in 1..=n {
            let mut acc = ExactRational::zero();
            for k in 1..=m {
                if !f[k].is_zero() {
                    acc += &f[k] * int(k as i64) * &e[m - k];
                }
            }
            e[m] = acc / int(m as i64);
        }
        Ok(Self { coeffs: e })
    }

    /// `self^alpha` for rational `alpha`.
    ///
    /// Non-negative integer exponents use repeated squaring and accept any
    /// base. Every other exponent needs constant term exactly 1: negative
    /// integers invert first, fractional exponents go through `exp(alpha log f)`.
    pub fn pow(&self, alpha: &ExactRational) -> Result<Self> {
        if alpha.is_integer() {
            let n = alpha.to_integer();
            if !n.is_negative() {
                if let Some(n) = n.to_u64() {
                    return Ok(self.pow_u64(n));
                }
            }
        }
        if !self.constant_term().is_one() {
            return Err(Error::RationalPowerOfNonUnit);
        }
        if alpha.is_integer() {
            if let Some(n) = (-alpha.to_integer()).to_u64() {
                return Ok(self.recip()?.pow_u64(n));
            }
        }
        self.log()?.scale(alpha).exp()
    }

    /// Integer power; negative exponents need constant term exactly 1.
    pub fn pow_int(&self, n: i64) -> Result<Self> {
        self.pow(&ExactRational::from_integer(BigInt::from(n)))
    }

    fn pow_u64(&self, mut n: u64) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `self(g(z))` by Horner evaluation in the truncated ring.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if !g.constant_term().is_zero() {
            return Err(Error::CompositionNonzeroConstant);
        }
        let n = self.order().min(g.order());
        let g = g.truncate(n);
        let mut acc = Self::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = &acc * &g;
            acc.coeffs[0] += &self.coeffs[k];
        }
        Ok(acc)
    }

    /// Compositional inverse: returns `g` with `self(g(z)) = z`.
    ///
    /// Coefficients are fixed one degree at a time: with `g` known through
    /// `z^(n-1)` and `g_n = 0`, the `z^n` coefficient of `self(g)` is
    /// `r + f_1 g_n`, so `g_n = -r / f_1`.
    pub fn revert(&self) -> Result<Self> {
        let n = self.order();
        if !self.constant_term().is_zero() || n == 0 || self.coeffs[1].is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv_f1 = self.coeffs[1].recip();
        let mut g = Self::zero(n);
        g.coeffs[1] = inv_f1.clone();
        for m in 2..=n {
            let partial = g.truncate(m);
            let r = self.truncate(m).compose(&partial)?.coeffs[m].clone();
            g.coeffs[m] = -(r * &inv_f1);
        }
        Ok(g)
    }

    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * int(k as i64))
            .collect();
        Self { coeffs }
    }
}

/// Coefficientwise equality up to the smaller of the two orders.
impl PartialEq for TruncatedPowerSeries {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a == b)
    }
}

impl fmt::Display for TruncatedPowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        write!(f, "[{}] + O(z^{})", parts.join(", "), self.order() + 1)
    }
}

impl Add for &TruncatedPowerSeries {
    type Output = TruncatedPowerSeries;

    fn add(self, rhs: Self) -> TruncatedPowerSeries {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        TruncatedPowerSeries { coeffs }
    }
}

impl Sub for &TruncatedPowerSeries {
    type Output = TruncatedPowerSeries;

    fn sub(self, rhs: Self) -> TruncatedPowerSeries {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        TruncatedPowerSeries { coeffs }
    }
}

impl Neg for &TruncatedPowerSeries {
    type Output = TruncatedPowerSeries;

    fn neg(self) -> TruncatedPowerSeries {
        TruncatedPowerSeries {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

/// Cauchy product truncated at the smaller order.
impl Mul for &TruncatedPowerSeries {
    type Output = TruncatedPowerSeries;

    fn mul(self, rhs: Self) -> TruncatedPowerSeries {
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![ExactRational::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        TruncatedPowerSeries { coeffs }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for TruncatedPowerSeries {
            type Output = TruncatedPowerSeries;
            fn $m(self, rhs: Self) -> TruncatedPowerSeries {
                (&self).$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::frac;

    fn s(values: &[i64], order: usize) -> TruncatedPowerSeries {
        TruncatedPowerSeries::from_ints(values, order)
    }

    #[test]
    fn difference_of_squares() {
        let p = series_arith(&s(&[1, 1], 4), &s(&[1, -1], 4), ArithOp::Mul).unwrap();
        assert_eq!(p.coeffs(), s(&[1, 0, -1], 4).coeffs());
    }

    #[test]
    fn geometric_series_by_division() {
        let q = series_arith(&s(&[1], 4), &s(&[1, -1], 4), ArithOp::Div).unwrap();
        assert_eq!(q.coeffs(), s(&[1, 1, 1, 1, 1], 4).coeffs());
    }

    #[test]
    fn self_subtraction_is_zero() {
        let f = s(&[1, 3], 5);
        assert!(series_arith(&f, &f, ArithOp::Sub).unwrap().is_zero());
    }

    #[test]
    fn division_by_non_unit_fails() {
        let err = s(&[1], 3).div(&s(&[0, 1], 3)).unwrap_err();
        assert_eq!(err, Error::NonUnitDivisor);
    }

    #[test]
    fn mixed_orders_truncate_to_minimum() {
        let p = &s(&[1, 1, 1, 1, 1, 1], 5) * &s(&[1, 1], 2);
        assert_eq!(p.order(), 2);
        assert_eq!(p.coeffs(), s(&[1, 2, 2], 2).coeffs());
    }

    #[test]
    fn log_of_one_is_zero() {
        assert!(TruncatedPowerSeries::one(6).log().unwrap().is_zero());
    }

    #[test]
    fn exp_log_roundtrip_on_one_plus_z() {
        let f = s(&[1, 1], 6);
        let back = f.log().unwrap().exp().unwrap();
        assert_eq!(back.coeffs(), f.coeffs());
    }

    #[test]
    fn log_of_geometric_series() {
        let f = s(&[1], 4).div(&s(&[1, -1], 4)).unwrap();
        let l = f.log().unwrap();
        let expected = [frac(0, 1), frac(1, 1), frac(1, 2), frac(1, 3), frac(1, 4)];
        assert_eq!(l.coeffs(), &expected);
        assert_eq!(l.exp().unwrap().coeffs(), f.coeffs());
    }

    #[test]
    fn log_and_exp_preconditions() {
        assert_eq!(s(&[2, 1], 3).log().unwrap_err(), Error::LogOfNonUnit);
        assert_eq!(s(&[1, 1], 3).exp().unwrap_err(), Error::ExpNonzeroConstant);
    }

    #[test]
    fn zeroth_power_is_one() {
        let p = s(&[1, 1], 5).pow_int(0).unwrap();
        assert_eq!(p.coeffs(), TruncatedPowerSeries::one(5).coeffs());
    }

    #[test]
    fn square_of_square_root() {
        let f = s(&[1, 1], 6);
        let root = f.pow(&frac(1, 2)).unwrap();
        assert_eq!(root.coeff(2), Some(&frac(-1, 8)));
        assert_eq!(root.pow_int(2).unwrap().coeffs(), f.coeffs());
    }

    #[test]
    fn negative_power_is_geometric() {
        let p = s(&[1, -1], 3).pow_int(-1).unwrap();
        assert_eq!(p.coeffs(), s(&[1, 1, 1, 1], 3).coeffs());
    }

    #[test]
    fn non_negative_integer_power_of_non_unit() {
        let p = s(&[2, 1], 3).pow_int(3).unwrap();
        assert_eq!(p.coeffs(), s(&[8, 12, 6, 1], 3).coeffs());
        let z3 = s(&[0, 1], 4).pow_int(3).unwrap();
        assert_eq!(z3.coeffs(), s(&[0, 0, 0, 1, 0], 4).coeffs());
    }

    #[test]
    fn fractional_power_of_non_unit_fails() {
        let f = s(&[2, 1], 3);
        assert_eq!(f.pow(&frac(1, 2)).unwrap_err(), Error::RationalPowerOfNonUnit);
        assert_eq!(f.pow_int(-1).unwrap_err(), Error::RationalPowerOfNonUnit);
    }

    #[test]
    fn compose_with_identity() {
        let f = s(&[3, -1, 4, 1, -5], 4);
        let c = f.compose(&TruncatedPowerSeries::variable(4)).unwrap();
        assert_eq!(c.coeffs(), f.coeffs());
    }

    #[test]
    fn compose_geometric_with_square() {
        let geo = s(&[1], 5).div(&s(&[1, -1], 5)).unwrap();
        let c = geo.compose(&s(&[0, 0, 1], 5)).unwrap();
        assert_eq!(c.coeffs(), s(&[1, 0, 1, 0, 1, 0], 5).coeffs());
    }

    #[test]
    fn exp_after_log_by_composition() {
        let exp_z = s(&[0, 1], 6).exp().unwrap();
        let log_1pz = s(&[1, 1], 6).log().unwrap();
        let c = exp_z.compose(&log_1pz).unwrap();
        assert_eq!(c.coeffs(), s(&[1, 1], 6).coeffs());
    }

    #[test]
    fn compose_needs_zero_constant() {
        let err = s(&[1, 1], 3).compose(&s(&[1, 1], 3)).unwrap_err();
        assert_eq!(err, Error::CompositionNonzeroConstant);
    }

    #[test]
    fn revert_identity() {
        let z = TruncatedPowerSeries::variable(7);
        assert_eq!(z.revert().unwrap().coeffs(), z.coeffs());
    }

    #[test]
    fn revert_z_over_one_minus_z() {
        let f = s(&[0, 1, 1, 1, 1, 1], 5);
        let g = f.revert().unwrap();
        assert_eq!(g.coeffs(), s(&[0, 1, -1, 1, -1, 1], 5).coeffs());
        let z = TruncatedPowerSeries::variable(5);
        assert_eq!(f.compose(&g).unwrap().coeffs(), z.coeffs());
        assert_eq!(g.compose(&f).unwrap().coeffs(), z.coeffs());
    }

    #[test]
    fn revert_general_linear_term() {
        let f = s(&[0, 3, 2], 6);
        let g = f.revert().unwrap();
        assert_eq!(g.coeff(1), Some(&frac(1, 3)));
        let z = TruncatedPowerSeries::variable(6);
        assert_eq!(f.compose(&g).unwrap().coeffs(), z.coeffs());
    }

    #[test]
    fn revert_low_order_lehn_substitution() {
        let g = s(&[0, 1, 9, 68, 466], 4).revert().unwrap();
        assert_eq!(g.coeffs()[..4], s(&[0, 1, -9, 94], 3).coeffs()[..]);
    }

    #[test]
    fn revert_rejects_bad_input() {
        assert_eq!(s(&[1, 1], 3).revert().unwrap_err(), Error::NotInvertible);
        assert_eq!(s(&[0, 0, 1], 3).revert().unwrap_err(), Error::NotInvertible);
    }

    #[test]
    fn equality_is_up_to_smaller_order() {
        assert_eq!(s(&[1, 2, 3], 2), s(&[1, 2, 3, 4, 5], 4));
        assert_ne!(s(&[1, 2, 3], 2), s(&[1, 2, 4], 5));
    }
}
