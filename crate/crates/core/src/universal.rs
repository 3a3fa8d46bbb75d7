//! Universal series `A, B, C, D` with `s(z) = A^d B^e C^pi D^kappa`, and the
//! Segre numbers `s_k(d, pi, kappa, e)` they generate.
//!
//! `A` and `B` come from the abelian and K3 data produced by the recursion in
//! [`crate::k3`]. `C` and `D` are fixed one order at a time by requiring
//! `s_k` to vanish at the two blow-up targets of [`blowup_targets`].
//!
//! The `z^k` coefficient of `C^pi` is `pi C_k` plus a polynomial in
//! `C_1..C_{k-1}`, because `(log C)_k = C_k + (terms in lower coefficients)`
//! and every factor has constant term 1. So `s_k` is affine in the unknowns
//! `(C_k, D_k)` with linear part `pi C_k + kappa D_k`, and one probe with
//! both unknowns set to zero recovers the constant part exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;
use std::sync::{Arc, Mutex};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::k3::determine_b_s1;
use crate::kernel::{frac, int, ExactRational, TruncatedPowerSeries};

/// `(d, pi, kappa, e) = (H^2, H.K, K^2, c_2)`. Any integer tuple is accepted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub d: i64,
    pub pi: i64,
    pub kappa: i64,
    pub e: i64,
}

impl SurfaceInvariants {
    pub const fn new(d: i64, pi: i64, kappa: i64, e: i64) -> Self {
        Self { d, pi, kappa, e }
    }

    /// K3 surface with a polarization of square `2g - 2`.
    pub const fn k3(g: i64) -> Self {
        Self::new(2 * g - 2, 0, 0, 24)
    }

    /// Abelian surface with a polarization of square `d`.
    pub const fn abelian(d: i64) -> Self {
        Self::new(d, 0, 0, 0)
    }

    /// Noether's formula (`12 | kappa + e`) and adjunction parity
    /// (`d + pi` even) hold. Tuples failing either are purely formal.
    pub fn passes_numerical_checks(&self) -> bool {
        (self.kappa + self.e).rem_euclid(12) == 0 && (self.d + self.pi).rem_euclid(2) == 0
    }
}

impl Add for SurfaceInvariants {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Self::new(self.d + o.d, self.pi + o.pi, self.kappa + o.kappa, self.e + o.e)
    }
}

impl fmt::Display for SurfaceInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.d, self.pi, self.kappa, self.e)
    }
}

/// The four universal series, all of one common order.
#[derive(Clone, Debug, PartialEq)]
pub struct UniversalSeriesSet {
    pub a: TruncatedPowerSeries,
    pub b: TruncatedPowerSeries,
    pub c: TruncatedPowerSeries,
    pub d: TruncatedPowerSeries,
}

impl UniversalSeriesSet {
    /// Runs the full determination to order `order`.
    pub fn determine(order: usize) -> Self {
        let (a, b) = determine_ab(order);
        let (c, d) = determine_cd(order, &a, &b).expect("A and B are determined to the same order");
        Self { a, b, c, d }
    }

    pub fn order(&self) -> usize {
        self.a
            .order()
            .min(self.b.order())
            .min(self.c.order())
            .min(self.d.order())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self {
            a: self.a.truncate(order),
            b: self.b.truncate(order),
            c: self.c.truncate(order),
            d: self.d.truncate(order),
        }
    }

    /// Looks a series up by its one-letter name (`A`..`D`, case-insensitive).
    pub fn by_name(&self, name: &str) -> Option<&TruncatedPowerSeries> {
        match name {
            "A" | "a" => Some(&self.a),
            "B" | "b" => Some(&self.b),
            "C" | "c" => Some(&self.c),
            "D" | "d" => Some(&self.d),
            _ => None,
        }
    }
}

/// `A = b(z)^(1/2)` from the abelian numbers, `B = s_1(z)^(1/24)` from the
/// genus-one K3 column.
pub fn determine_ab(order: usize) -> (TruncatedPowerSeries, TruncatedPowerSeries) {
    let seqs = determine_b_s1(order);
    let abelian = TruncatedPowerSeries::from_coeffs(seqs.b);
    let k3_genus_one = TruncatedPowerSeries::from_coeffs(seqs.s1);
    let a = abelian.pow(&frac(1, 2)).expect("b_0 = 1");
    let b = k3_genus_one.pow(&frac(1, 24)).expect("s_{0,1} = 1");
    (a, b)
}

/// Determines `C` and `D` to `order` by probing and solving at the blow-up targets.
pub fn determine_cd(
    order: usize,
    a: &TruncatedPowerSeries,
    b: &TruncatedPowerSeries,
) -> Result<(TruncatedPowerSeries, TruncatedPowerSeries)> {
    let available = a.order().min(b.order());
    if order > available {
        return Err(Error::InsufficientOrder {
            requested: order,
            order: available,
        });
    }
    // s_1 = d for every tuple, so C_1 = D_1 = 0.
    let mut c = TruncatedPowerSeries::one(order);
    let mut d = TruncatedPowerSeries::one(order);
    for k in 2..=order {
        let targets = blowup_targets(k)?;
        let probe = UniversalSeriesSet {
            a: a.truncate(k),
            b: b.truncate(k),
            c: c.truncate(k),
            d: d.truncate(k),
        };
        let nu = segre_number(&targets.first, k, &probe)?;
        let nu_prime = segre_number(&targets.second, k, &probe)?;
        // 0 = (k-1) C_k - D_k + nu,  0 = k C_k - D_k + nu'
        let c_k = &nu - &nu_prime;
        let d_k = &c_k * int(k as i64 - 1) + nu;
        c.set_coeff(k, c_k);
        d.set_coeff(k, d_k);
    }
    Ok((c, d))
}

/// `A^d B^e C^pi D^kappa` truncated at `order`.
pub fn segre_series(
    inv: &SurfaceInvariants,
    order: usize,
    u: &UniversalSeriesSet,
) -> Result<TruncatedPowerSeries> {
    if order > u.order() {
        return Err(Error::InsufficientOrder {
            requested: order,
            order: u.order(),
        });
    }
    let u = u.truncate(order);
    let factors = [(&u.a, inv.d), (&u.b, inv.e), (&u.c, inv.pi), (&u.d, inv.kappa)];
    let mut s = TruncatedPowerSeries::one(order);
    for (base, exp) in factors {
        if exp != 0 {
            s = &s * &base.pow_int(exp)?;
        }
    }
    Ok(s)
}

/// `s_k(d, pi, kappa, e)`, the `z^k` coefficient of [`segre_series`].
pub fn segre_number(inv: &SurfaceInvariants, k: usize, u: &UniversalSeriesSet) -> Result<ExactRational> {
    let s = segre_series(inv, k, u)?;
    Ok(s.coeffs()[k].clone())
}

/// The two blow-up tuples at which `s_k` vanishes, with their derivation.
///
/// A K3 of Picard rank one with `L^2 = 2g - 2`, blown up at a point with
/// exceptional curve `E`, and `H = L - lE` has `kappa = -1`, `e = 25`,
/// `d = 2g - 2 - l^2`, `pi = l`. Choosing `g - l(l+1)/2 = 3k - 2` with
/// `l = k - 1` or `l = k` gives the two targets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupTargets {
    pub k: usize,
    /// `(7(k-1), k-1, -1, 25)` from `l = k - 1`.
    pub first: SurfaceInvariants,
    /// `(7(k-1)+1, k, -1, 25)` from `l = k`.
    pub second: SurfaceInvariants,
    /// `(g, l)` for the first and second target.
    pub genus_and_multiplicity: [(i64, i64); 2],
    /// `h^0(H) = g + 1 - l(l+1)/2`, equal to `3k - 1` in both cases.
    pub section_count: i64,
}

impl BlowupTargets {
    pub fn tuples(&self) -> [SurfaceInvariants; 2] {
        [self.first, self.second]
    }
}

pub fn blowup_targets(k: usize) -> Result<BlowupTargets> {
    if k < 2 {
        return Err(Error::TargetsBelowTwo(k));
    }
    let kk = k as i64;
    let tuple_for = |l: i64| {
        let g = 3 * kk - 2 + l * (l + 1) / 2;
        (g, SurfaceInvariants::new(2 * g - 2 - l * l, l, -1, 25))
    };
    let (g1, first) = tuple_for(kk - 1);
    let (g2, second) = tuple_for(kk);
    Ok(BlowupTargets {
        k,
        first,
        second,
        genus_and_multiplicity: [(g1, kk - 1), (g2, kk)],
        section_count: g1 + 1 - (kk - 1) * kk / 2,
    })
}

/// Which construction produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Closed,
    Engine,
    Lehn,
}

impl Route {
    pub fn as_str(&self) -> &'static str {
        match self {
            Route::Closed => "closed",
            Route::Engine => "engine",
            Route::Lehn => "lehn",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Segre numbers keyed by `(invariants, k)`, one slot per route.
#[derive(Clone, Debug, Default)]
pub struct SegreTable {
    entries: BTreeMap<(SurfaceInvariants, usize), BTreeMap<Route, ExactRational>>,
}

impl SegreTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, inv: SurfaceInvariants, k: usize, route: Route, value: ExactRational) {
        self.entries.entry((inv, k)).or_default().insert(route, value);
    }

    pub fn get(&self, inv: &SurfaceInvariants, k: usize, route: Route) -> Option<&ExactRational> {
        self.entries.get(&(*inv, k)).and_then(|m| m.get(&route))
    }

    pub fn len(&self) -> usize {
        self.entries.values().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Every `(invariants, k, route, value)` in key order.
    pub fn records(&self) -> impl Iterator<Item = (SurfaceInvariants, usize, Route, &ExactRational)> {
        self.entries
            .iter()
            .flat_map(|(&(inv, k), m)| m.iter().map(move |(&r, v)| (inv, k, r, v)))
    }

    /// Keys whose routes disagree.
    pub fn conflicts(&self) -> Vec<(SurfaceInvariants, usize)> {
        self.entries
            .iter()
            .filter(|(_, m)| {
                let mut vals = m.values();
                let first = vals.next();
                vals.any(|v| Some(v) != first)
            })
            .map(|(&key, _)| key)
            .collect()
    }
}

/// Caches a [`UniversalSeriesSet`] per truncation order.
#[derive(Debug, Default)]
pub struct Engine {
    cache: Mutex<BTreeMap<usize, Arc<UniversalSeriesSet>>>,
}

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn universal(&self, order: usize) -> Arc<UniversalSeriesSet> {
        if let Some(u) = self.cache.lock().unwrap().get(&order) {
            return Arc::clone(u);
        }
        let u = Arc::new(UniversalSeriesSet::determine(order));
        self.cache
            .lock()
            .unwrap()
            .entry(order)
            .or_insert(u)
            .clone()
    }

    pub fn segre_series(&self, inv: &SurfaceInvariants, order: usize) -> TruncatedPowerSeries {
        segre_series(inv, order, &self.universal(order)).expect("cached set has the requested order")
    }

    /// Computes `s_k` and records it in `table` under [`Route::Engine`].
    pub fn segre_number_into(
        &self,
        inv: &SurfaceInvariants,
        k: usize,
        table: &mut SegreTable,
    ) -> ExactRational {
        let v = self.segre_series(inv, k).coeffs()[k].clone();
        table.insert(*inv, k, Route::Engine, v.clone());
        v
    }
}

/// One term `coeff * d^i pi^j kappa^l e^n`, exponents stored as `[i, j, l, n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: ExactRational,
    pub exps: [u32; 4],
}

impl Monomial {
    pub fn new(coeff: ExactRational, exps: [u32; 4]) -> Self {
        Self { coeff, exps }
    }

    pub fn eval(&self, inv: &SurfaceInvariants) -> ExactRational {
        let vars = [inv.d, inv.pi, inv.kappa, inv.e];
        let mut v = self.coeff.clone();
        for (x, &p) in vars.iter().zip(&self.exps) {
            for _ in 0..p {
                v *= int(*x);
            }
        }
        v
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::kernel::format_rational(&self.coeff))?;
        for (name, &p) in ["d", "pi", "kappa", "e"].iter().zip(&self.exps) {
            match p {
                0 => {}
                1 => write!(f, "*{name}")?,
                _ => write!(f, "*{name}^{p}")?,
            }
        }
        Ok(())
    }
}

/// `k! s_k` as a polynomial in `(d, pi, kappa, e)`, read off from the universal series.
///
/// With `alpha = log A` and so on, `s(z) = exp(d alpha + e beta + pi gamma + kappa delta)`,
/// so the coefficient of `d^i pi^j kappa^l e^n` in `s_k` is
/// `[z^k] alpha^i gamma^j delta^l beta^n / (i! j! l! n!)`. Zero terms are dropped.
pub fn segre_polynomial(k: usize, u: &UniversalSeriesSet) -> Result<Vec<Monomial>> {
    if k > u.order() {
        return Err(Error::InsufficientOrder {
            requested: k,
            order: u.order(),
        });
    }
    let u = u.truncate(k);
    // d, pi, kappa, e
    let logs = [u.a.log()?, u.c.log()?, u.d.log()?, u.b.log()?];
    let powers: Vec<Vec<TruncatedPowerSeries>> = logs
        .iter()
        .map(|l| {
            let mut p = vec![TruncatedPowerSeries::one(k)];
            for i in 1..=k {
                let next = &p[i - 1] * l;
                p.push(next);
            }
            p
        })
        .collect();
    let factorial = |n: usize| -> ExactRational { (1..=n as i64).map(int).product() };
    let k_fact = factorial(k);
    let mut terms = Vec::new();
    for total in (0..=k).rev() {
        for i in (0..=total).rev() {
            for j in (0..=total - i).rev() {
                for l in (0..=total - i - j).rev() {
                    let n = total - i - j - l;
                    let prod = &(&powers[0][i] * &powers[1][j]) * &(&powers[2][l] * &powers[3][n]);
                    let c = &prod.coeffs()[k] * &k_fact
                        / (factorial(i) * factorial(j) * factorial(l) * factorial(n));
                    if !c.is_zero() {
                        terms.push(Monomial::new(c, [i as u32, j as u32, l as u32, n as u32]));
                    }
                }
            }
        }
    }
    Ok(terms)
}

/// Terms where two polynomials differ: `(exponents, left coefficient, right coefficient)`.
pub fn polynomial_differences(
    left: &[Monomial],
    right: &[Monomial],
) -> Vec<([u32; 4], ExactRational, ExactRational)> {
    let mut merged: BTreeMap<[u32; 4], (ExactRational, ExactRational)> = BTreeMap::new();
    for m in left {
        merged.entry(m.exps).or_insert_with(|| (ExactRational::zero(), ExactRational::zero())).0 += &m.coeff;
    }
    for m in right {
        merged.entry(m.exps).or_insert_with(|| (ExactRational::zero(), ExactRational::zero())).1 += &m.coeff;
    }
    merged
        .into_iter()
        .filter(|(_, (l, r))| l != r)
        .map(|(e, (l, r))| (e, l, r))
        .collect()
}

/// True when every coefficient in `1..=order` of `s` is zero.
pub fn is_identically_one(s: &TruncatedPowerSeries) -> bool {
    s.constant_term() == &int(1) && s.coeffs()[1..].iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::k3::closed_segre;

    #[test]
    fn a_and_b_low_coefficients() {
        let (a, b) = determine_ab(4);
        assert_eq!(a.coeffs()[..3], [int(1), int(1), frac(-9, 2)]);
        assert_eq!(b.coeffs()[..2], [int(1), int(0)]);
    }

    #[test]
    fn c_and_d_vanish_at_order_one() {
        let u = UniversalSeriesSet::determine(3);
        assert_eq!(u.c.coeffs()[..2], [int(1), int(0)]);
        assert_eq!(u.d.coeffs()[..2], [int(1), int(0)]);
    }

    #[test]
    fn order_two_targets_vanish() {
        let u = UniversalSeriesSet::determine(2);
        assert!(segre_number(&SurfaceInvariants::new(7, 1, -1, 25), 2, &u).unwrap().is_zero());
        assert!(segre_number(&SurfaceInvariants::new(8, 2, -1, 25), 2, &u).unwrap().is_zero());
    }

    #[test]
    fn empty_surface_has_unit_series() {
        let u = UniversalSeriesSet::determine(5);
        let s = segre_series(&SurfaceInvariants::default(), 5, &u).unwrap();
        assert!(is_identically_one(&s));
    }

    #[test]
    fn first_coefficient_is_d() {
        let u = UniversalSeriesSet::determine(3);
        for inv in [
            SurfaceInvariants::new(5, -2, 7, 1),
            SurfaceInvariants::new(-3, 4, 0, 25),
            SurfaceInvariants::new(0, 9, -1, -12),
        ] {
            assert_eq!(segre_number(&inv, 1, &u).unwrap(), int(inv.d));
        }
    }

    #[test]
    fn k3_column_matches_closed_formula() {
        let u = UniversalSeriesSet::determine(6);
        for g in -3..=9 {
            let s = segre_series(&SurfaceInvariants::k3(g), 6, &u).unwrap();
            for k in 0..=6 {
                assert_eq!(s.coeffs()[k], closed_segre(k, g), "k={k} g={g}");
            }
        }
    }

    #[test]
    fn named_examples() {
        let u = UniversalSeriesSet::determine(5);
        assert_eq!(segre_number(&SurfaceInvariants::abelian(2), 1, &u).unwrap(), int(2));
        assert!(segre_number(&SurfaceInvariants::new(28, 4, -1, 25), 5, &u).unwrap().is_zero());
        let s = segre_series(&SurfaceInvariants::new(0, 2, 1, 11), 5, &u).unwrap();
        assert!(is_identically_one(&s));
    }

    #[test]
    fn insufficient_order() {
        let u = UniversalSeriesSet::determine(3);
        assert_eq!(
            segre_number(&SurfaceInvariants::k3(2), 4, &u).unwrap_err(),
            Error::InsufficientOrder { requested: 4, order: 3 }
        );
    }

    #[test]
    fn blowup_target_examples() {
        let t = blowup_targets(5).unwrap();
        assert_eq!(t.first, SurfaceInvariants::new(28, 4, -1, 25));
        assert_eq!(t.second, SurfaceInvariants::new(29, 5, -1, 25));
        assert_eq!(t.genus_and_multiplicity[0], (23, 4));
        assert_eq!(t.section_count, 14);
        let t = blowup_targets(2).unwrap();
        assert_eq!(t.tuples(), [SurfaceInvariants::new(7, 1, -1, 25), SurfaceInvariants::new(8, 2, -1, 25)]);
        assert_eq!(blowup_targets(1).unwrap_err(), Error::TargetsBelowTwo(1));
    }

    #[test]
    fn targets_follow_closed_form_for_all_k() {
        for k in 2..40usize {
            let t = blowup_targets(k).unwrap();
            let kk = k as i64;
            assert_eq!(t.first, SurfaceInvariants::new(7 * (kk - 1), kk - 1, -1, 25));
            assert_eq!(t.second, SurfaceInvariants::new(7 * (kk - 1) + 1, kk, -1, 25));
            assert_eq!(t.section_count, 3 * kk - 1);
            let (g2, l2) = t.genus_and_multiplicity[1];
            assert_eq!(g2 + 1 - l2 * (l2 + 1) / 2, 3 * kk - 1);
        }
    }

    #[test]
    fn table_detects_conflicts() {
        let mut t = SegreTable::new();
        let inv = SurfaceInvariants::k3(3);
        t.insert(inv, 2, Route::Closed, int(0));
        t.insert(inv, 2, Route::Engine, int(0));
        assert!(t.conflicts().is_empty());
        t.insert(inv, 2, Route::Lehn, int(1));
        assert_eq!(t.conflicts(), vec![(inv, 2)]);
        assert_eq!(t.len(), 3);
    }

    #[test]
    fn polynomial_reproduces_series_coefficients() {
        let u = UniversalSeriesSet::determine(4);
        for k in 0..=4 {
            let poly = segre_polynomial(k, &u).unwrap();
            let k_fact: ExactRational = (1..=k as i64).map(int).product();
            for inv in [SurfaceInvariants::new(3, -2, 1, 7), SurfaceInvariants::k3(5)] {
                let value: ExactRational = poly.iter().map(|m| m.eval(&inv)).sum();
                assert_eq!(value, segre_number(&inv, k, &u).unwrap() * &k_fact, "k={k}");
            }
        }
    }

    #[test]
    fn polynomial_of_order_one_is_d() {
        let u = UniversalSeriesSet::determine(1);
        assert_eq!(segre_polynomial(1, &u).unwrap(), vec![Monomial::new(int(1), [1, 0, 0, 0])]);
    }

    #[test]
    fn engine_caches_per_order() {
        let engine = Engine::new();
        let a = engine.universal(4);
        let b = engine.universal(4);
        assert!(Arc::ptr_eq(&a, &b));
        let mut table = SegreTable::new();
        let v = engine.segre_number_into(&SurfaceInvariants::k3(7), 2, &mut table);
        assert_eq!(v, int(24));
        assert_eq!(table.get(&SurfaceInvariants::k3(7), 2, Route::Engine), Some(&int(24)));
    }
}
