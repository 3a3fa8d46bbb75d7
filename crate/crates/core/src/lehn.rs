//! Lehn's generating function
//!
//! ```text
//! s(z) = (1-w)^a (1-2w)^b / (1-6w+6w^2)^c,   z = w(1-w)(1-2w)^4 / (1-6w+6w^2)^3
//! ```
//!
//! with `chi = (kappa+e)/12`, `a = pi - 2 kappa`, `b = d - 2 pi + kappa + 3 chi`,
//! `c = (d - pi)/2 + chi`. The expansion in `z` is obtained by reverting the
//! substitution and composing. Nothing here uses the universal-series engine,
//! which makes it an independent check on it.

use num_traits::Zero;

use crate::error::Result;
use crate::kernel::{frac, int, ExactRational, TruncatedPowerSeries};
use crate::universal::{blowup_targets, Monomial, SurfaceInvariants, UniversalSeriesSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LehnExponents {
    pub a: ExactRational,
    pub b: ExactRational,
    pub c: ExactRational,
    pub chi: ExactRational,
}

pub fn lehn_exponents(inv: &SurfaceInvariants) -> LehnExponents {
    let SurfaceInvariants { d, pi, kappa, e } = *inv;
    let chi = frac(kappa + e, 12);
    let a = int(pi - 2 * kappa);
    let b = int(d - 2 * pi + kappa) + &chi * int(3);
    let c = frac(d - pi, 2) + &chi;
    LehnExponents { a, b, c, chi }
}

/// `(z(w), w(z))`, both to `order`.
pub fn change_of_variable(order: usize) -> (TruncatedPowerSeries, TruncatedPowerSeries) {
    let zw = substitution(order);
    if order == 0 {
        return (zw.clone(), zw);
    }
    let wz = zw.revert().expect("substitution has unit linear term");
    (zw, wz)
}

/// `w(1-w)(1-2w)^4 (1-6w+6w^2)^(-3)` as a series in `w`.
fn substitution(order: usize) -> TruncatedPowerSeries {
    let w = TruncatedPowerSeries::variable(order);
    let one_minus_w = TruncatedPowerSeries::from_ints(&[1, -1], order);
    let one_minus_2w = TruncatedPowerSeries::from_ints(&[1, -2], order);
    let quadratic = TruncatedPowerSeries::from_ints(&[1, -6, 6], order);
    let num = &(&w * &one_minus_w) * &one_minus_2w.pow_int(4).unwrap();
    &num * &quadratic.pow_int(-3).expect("unit constant term")
}

/// Holds the change of variable for one truncation order.
#[derive(Clone, Debug)]
pub struct LehnOracle {
    order: usize,
    zw: TruncatedPowerSeries,
    wz: TruncatedPowerSeries,
}

impl LehnOracle {
    pub fn new(order: usize) -> Self {
        let (zw, wz) = change_of_variable(order);
        Self { order, zw, wz }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn z_of_w(&self) -> &TruncatedPowerSeries {
        &self.zw
    }

    pub fn w_of_z(&self) -> &TruncatedPowerSeries {
        &self.wz
    }

    /// The Lehn function in `w`, before substitution.
    pub fn series_in_w(&self, inv: &SurfaceInvariants) -> Result<TruncatedPowerSeries> {
        let n = self.order;
        let LehnExponents { a, b, c, .. } = lehn_exponents(inv);
        let f1 = TruncatedPowerSeries::from_ints(&[1, -1], n).pow(&a)?;
        let f2 = TruncatedPowerSeries::from_ints(&[1, -2], n).pow(&b)?;
        let f3 = TruncatedPowerSeries::from_ints(&[1, -6, 6], n).pow(&-c)?;
        Ok(&(&f1 * &f2) * &f3)
    }

    /// The Lehn function expanded in `z`.
    pub fn series(&self, inv: &SurfaceInvariants) -> Result<TruncatedPowerSeries> {
        let f = self.series_in_w(inv)?;
        if self.order == 0 {
            return Ok(f);
        }
        f.compose(&self.wz)
    }

    pub fn coefficient(&self, inv: &SurfaceInvariants, k: usize) -> Result<ExactRational> {
        Ok(self.series(inv)?.coeffs()[k].clone())
    }
}

pub fn lehn_series(inv: &SurfaceInvariants, order: usize) -> Result<TruncatedPowerSeries> {
    LehnOracle::new(order).series(inv)
}

/// Single-exponent specializations of the Lehn function, which carry the same
/// multiplicative structure as the engine's `A, B, C, D`.
pub fn extract_lehn_universal(order: usize) -> UniversalSeriesSet {
    let oracle = LehnOracle::new(order);
    let unit = |inv: SurfaceInvariants| oracle.series(&inv).expect("all bases are unit series");
    UniversalSeriesSet {
        a: unit(SurfaceInvariants::new(1, 0, 0, 0)),
        b: unit(SurfaceInvariants::new(0, 0, 0, 1)),
        c: unit(SurfaceInvariants::new(0, 1, 0, 0)),
        d: unit(SurfaceInvariants::new(0, 0, 1, 0)),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VanishingEntry {
    pub k: usize,
    pub target: SurfaceInvariants,
    pub coefficient: ExactRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VanishingReport {
    pub entries: Vec<VanishingEntry>,
}

impl VanishingReport {
    pub fn all_vanish(&self) -> bool {
        self.entries.iter().all(|e| e.coefficient.is_zero())
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &VanishingEntry> {
        self.entries.iter().filter(|e| !e.coefficient.is_zero())
    }

    /// The two entries for order `k`, if present.
    pub fn at(&self, k: usize) -> Vec<&VanishingEntry> {
        self.entries.iter().filter(|e| e.k == k).collect()
    }
}

/// Lehn-side `z^k` coefficients at both blow-up targets for `2 <= k <= max_k`.
pub fn verify_blowup_vanishing(max_k: usize) -> VanishingReport {
    let oracle = LehnOracle::new(max_k);
    let mut entries = Vec::new();
    for k in 2..=max_k {
        let targets = blowup_targets(k).expect("k >= 2");
        for target in targets.tuples() {
            let coefficient = oracle.coefficient(&target, k).expect("unit bases");
            entries.push(VanishingEntry { k, target, coefficient });
        }
    }
    VanishingReport { entries }
}

/// Lehn's printed polynomial for `5! s_5`, term by term.
pub fn s5_polynomial_terms() -> Vec<Monomial> {
    // (coefficient, [d, pi, kappa, e])
    const TERMS: [(i64, [u32; 4]); 29] = [
        (1, [5, 0, 0, 0]),
        (-100, [4, 0, 0, 0]),
        (3740, [3, 0, 0, 0]),
        (10, [3, 0, 0, 1]),
        (-50, [3, 1, 0, 0]),
        (-10, [3, 0, 1, 0]),
        (-62000, [2, 0, 0, 0]),
        (3420, [2, 1, 0, 0]),
        (-700, [2, 0, 0, 1]),
        (860, [2, 0, 1, 0]),
        (384384, [1, 0, 0, 0]),
        (15, [1, 0, 0, 2]),
        (15960, [1, 0, 0, 1]),
        (-30, [1, 0, 1, 1]),
        (-150, [1, 1, 0, 1]),
        (15, [1, 0, 2, 0]),
        (150, [1, 1, 1, 0]),
        (-75610, [1, 1, 0, 0]),
        (-24340, [1, 0, 1, 0]),
        (375, [1, 2, 0, 0]),
        (-400, [0, 0, 0, 2]),
        (-117120, [0, 0, 0, 1]),
        (3920, [0, 1, 0, 1]),
        (960, [0, 0, 1, 1]),
        (226560, [0, 0, 1, 0]),
        (-4720, [0, 1, 1, 0]),
        (-560, [0, 0, 2, 0]),
        (530880, [0, 1, 0, 0]),
        (-9600, [0, 2, 0, 0]),
    ];
    TERMS
        .iter()
        .map(|&(c, exps)| Monomial::new(int(c), exps))
        .collect()
}

/// `s_5` from the printed polynomial: its value divided by `5!`.
pub fn eval_s5_polynomial(inv: &SurfaceInvariants) -> ExactRational {
    let total: ExactRational = s5_polynomial_terms().iter().map(|m| m.eval(inv)).sum();
    total / int(120)
}
