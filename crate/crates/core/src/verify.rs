//! The cross-route verification suite behind `segre verify`.
//!
//! Checks run in a fixed order and each produces one report line. A failing
//! check carries its first counterexample. The report is a pure function of
//! the configuration.

use std::fmt;

use num_traits::{One, Zero};

use crate::k3::{closed_segre, determine_b_s1, in_vanishing_range, recursion_table};
use crate::kernel::{format_rational, frac, int, ExactRational, TruncatedPowerSeries};
use crate::lehn::{
    eval_s5_polynomial, extract_lehn_universal, s5_polynomial_terms, verify_blowup_vanishing, LehnOracle,
};
use crate::universal::{
    blowup_targets, is_identically_one, polynomial_differences, segre_number, segre_polynomial, segre_series,
    SurfaceInvariants, UniversalSeriesSet,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_k: usize,
    pub max_order: usize,
    /// Perturbs `D_2` in the engine's series before the cross-route checks.
    pub inject_fault: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            max_k: 8,
            max_order: 8,
            inject_fault: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: impl Into<String>, result: Result<String, String>) -> Self {
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        Self {
            name: name.into(),
            passed,
            detail,
        }
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{}: {} {}", self.name, self.detail, status)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn find(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.failures().count();
        if failed == 0 {
            writeln!(f, "all {} checks passed", self.checks.len())
        } else {
            writeln!(f, "{failed} of {} checks failed", self.checks.len())
        }
    }
}

type Check = Result<String, String>;

/// Bounds of the engine-vs-Lehn comparison grid.
pub const GRID_RADIUS: i64 = 3;
pub const GRID_EULER: [i64; 3] = [0, 12, 24];

/// `|d|, |pi|, |kappa| <= 3`, `e` in `{0, 12, 24}`.
pub fn standard_grid() -> Vec<SurfaceInvariants> {
    let r = -GRID_RADIUS..=GRID_RADIUS;
    let mut out = Vec::new();
    for d in r.clone() {
        for pi in r.clone() {
            for kappa in r.clone() {
                for e in GRID_EULER {
                    out.push(SurfaceInvariants::new(d, pi, kappa, e));
                }
            }
        }
    }
    out
}

/// Deterministic spread of small tuples, used where a sample suffices.
pub fn sample_tuples(count: usize) -> Vec<SurfaceInvariants> {
    (0..count as i64)
        .map(|i| {
            SurfaceInvariants::new(
                (i * 7 + 3) % 13 - 6,
                (i * 5 + 1) % 9 - 4,
                (i * 3 + 2) % 7 - 3,
                (i * 11 + 4) % 31 - 5,
            )
        })
        .collect()
}

/// Deterministic family of unit series used by the kernel checks.
pub fn sample_unit_series(count: usize, order: usize) -> Vec<TruncatedPowerSeries> {
    (0..count as i64)
        .map(|i| {
            let mut coeffs = vec![ExactRational::one()];
            for j in 1..=order as i64 {
                coeffs.push(frac((i * 7 + j * 3) % 11 - 5, (i + j) % 4 + 1));
            }
            TruncatedPowerSeries::from_coeffs(coeffs)
        })
        .collect()
}

pub fn run(config: &VerifyConfig) -> VerifyReport {
    let max_k = config.max_k.max(2);
    let order = config.max_order;
    let mut checks = Vec::new();

    checks.push(CheckOutcome::new("kernel roundtrips", check_kernel(order.max(1))));
    checks.push(CheckOutcome::new("closed vs recursion", check_closed_vs_recursion(max_k)));
    checks.push(CheckOutcome::new("vanishing range", check_vanishing_range(max_k)));
    checks.push(CheckOutcome::new("pascal identity", check_pascal(max_k)));
    checks.push(CheckOutcome::new("b vs b'", check_b_prime(max_k)));

    let engine_order = order.max(max_k).max(5);
    let mut engine = UniversalSeriesSet::determine(engine_order);
    if config.inject_fault && engine_order >= 2 {
        let bumped = &engine.d.coeffs()[2] + ExactRational::one();
        engine.d.set_coeff(2, bumped);
    }
    let oracle = LehnOracle::new(engine_order);

    checks.push(CheckOutcome::new("engine vs closed (K3)", check_engine_k3(&engine, order)));
    checks.push(CheckOutcome::new("engine vs lehn (grid)", check_engine_vs_lehn(&engine, &oracle, order)));
    checks.push(CheckOutcome::new(
        "universal series vs lehn",
        check_universal_sets(&engine, order),
    ));

    let vanishing = verify_blowup_vanishing(max_k);
    for k in 2..=max_k {
        let entries = vanishing.at(k);
        let values: Vec<String> = entries.iter().map(|e| format_rational(&e.coefficient)).collect();
        let ok = entries.iter().all(|e| e.coefficient.is_zero());
        let mut detail = values.join(", ");
        let engine_bad: Vec<String> = blowup_targets(k)
            .expect("k >= 2")
            .tuples()
            .iter()
            .filter_map(|t| {
                let v = segre_number(t, k, &engine).ok()?;
                (!v.is_zero()).then(|| format!("engine s_{k}{t} = {}", format_rational(&v)))
            })
            .collect();
        if !engine_bad.is_empty() {
            detail = format!("{detail}; {}", engine_bad.join("; "));
        }
        let result = if ok && engine_bad.is_empty() { Ok(detail) } else { Err(detail) };
        checks.push(CheckOutcome::new(format!("blowup-vanishing k={k}"), result));
    }

    checks.push(CheckOutcome::new("s5 polynomial", check_s5(&engine)));
    checks.push(CheckOutcome::new("degenerate family", check_degenerate(&engine, &oracle, order)));

    VerifyReport { checks }
}

fn check_kernel(order: usize) -> Check {
    let samples = sample_unit_series(24, order);
    let z = TruncatedPowerSeries::variable(order);
    let (alpha, beta) = (frac(2, 3), frac(-5, 4));
    for (i, f) in samples.iter().enumerate() {
        let l = f.log().map_err(|e| e.to_string())?;
        if l.exp().map_err(|e| e.to_string())? != *f {
            return Err(format!("exp(log f) != f for sample {i}"));
        }
        if l.exp().and_then(|e| e.log()).map_err(|e| e.to_string())? != l {
            return Err(format!("log(exp g) != g for sample {i}"));
        }
        let lhs = &f.pow(&alpha).unwrap() * &f.pow(&beta).unwrap();
        if lhs != f.pow(&(&alpha + &beta)).unwrap() {
            return Err(format!("f^a f^b != f^(a+b) for sample {i}"));
        }
        // f - 1 has zero constant term; shift so the linear term is nonzero
        let mut g = f - &TruncatedPowerSeries::one(order);
        if g.coeffs()[1].is_zero() {
            g.set_coeff(1, int(1));
        }
        let r = g.revert().map_err(|e| e.to_string())?;
        if g.compose(&r).unwrap() != z || r.compose(&g).unwrap() != z {
            return Err(format!("reversion roundtrip fails for sample {i}"));
        }
    }
    Ok(format!("{} series to order {order}", samples.len()))
}

fn check_closed_vs_recursion(max_k: usize) -> Check {
    let seqs = determine_b_s1(max_k);
    let table = recursion_table(max_k, 30, &seqs).map_err(|e| e.to_string())?;
    for k in 0..=max_k {
        for g in 1..=30 {
            let r = table[g as usize - 1][k].clone();
            let c = closed_segre(k, g);
            if r != c {
                return Err(format!(
                    "k={k} g={g}: recursion {} closed {}",
                    format_rational(&r),
                    format_rational(&c)
                ));
            }
        }
    }
    Ok(format!("k<={max_k}, 1<=g<=30"))
}

fn check_vanishing_range(max_k: usize) -> Check {
    for k in 0..=max_k {
        for g in -40..=40 {
            let zero = closed_segre(k, g).is_zero();
            if zero != in_vanishing_range(k, g) {
                return Err(format!("k={k} g={g}: value zero = {zero}"));
            }
        }
    }
    Ok(format!("k<={max_k}, |g|<=40"))
}

fn closed_signed(k: i64, g: i64) -> ExactRational {
    if k < 0 {
        ExactRational::zero()
    } else {
        closed_segre(k as usize, g)
    }
}

fn check_pascal(max_k: usize) -> Check {
    for k in 1..=max_k as i64 {
        for g in -40..=40 {
            let lhs = closed_signed(k - 1, g - 3) * int(2);
            let rhs = closed_signed(k, g) - closed_signed(k, g - 1);
            if lhs != rhs {
                return Err(format!("k={k} g={g}"));
            }
        }
    }
    Ok(format!("1<=k<={max_k}, |g|<=40"))
}

fn check_b_prime(max_k: usize) -> Check {
    let seqs = determine_b_s1(max_k);
    match seqs.b.iter().zip(&seqs.b_prime).position(|(a, b)| a != b) {
        Some(i) => Err(format!(
            "index {i}: b = {}, b' = {}",
            format_rational(&seqs.b[i]),
            format_rational(&seqs.b_prime[i])
        )),
        None => Ok(format!("indices 0..={max_k}")),
    }
}

fn check_engine_k3(engine: &UniversalSeriesSet, order: usize) -> Check {
    for g in 1..=30 {
        let s = segre_series(&SurfaceInvariants::k3(g), order, engine).map_err(|e| e.to_string())?;
        for k in 0..=order {
            if s.coeffs()[k] != closed_segre(k, g) {
                return Err(format!(
                    "k={k} g={g}: engine {} closed {}",
                    format_rational(&s.coeffs()[k]),
                    format_rational(&closed_segre(k, g))
                ));
            }
        }
    }
    Ok(format!("k<={order}, 1<=g<=30"))
}

fn first_difference(a: &TruncatedPowerSeries, b: &TruncatedPowerSeries) -> Option<usize> {
    a.coeffs().iter().zip(b.coeffs()).position(|(x, y)| x != y)
}

fn check_engine_vs_lehn(engine: &UniversalSeriesSet, oracle: &LehnOracle, order: usize) -> Check {
    let grid = standard_grid();
    for inv in &grid {
        let s = segre_series(inv, order, engine).map_err(|e| e.to_string())?;
        let l = oracle.series(inv).map_err(|e| e.to_string())?.truncate(order);
        if let Some(k) = first_difference(&s, &l) {
            return Err(format!(
                "{inv} k={k}: engine {} lehn {}",
                format_rational(&s.coeffs()[k]),
                format_rational(&l.coeffs()[k])
            ));
        }
    }
    Ok(format!("{} tuples to order {order}", grid.len()))
}

fn check_universal_sets(engine: &UniversalSeriesSet, order: usize) -> Check {
    let lehn = extract_lehn_universal(order);
    for name in ["A", "B", "C", "D"] {
        let (x, y) = (engine.by_name(name).unwrap(), lehn.by_name(name).unwrap());
        if let Some(k) = first_difference(x, y) {
            return Err(format!(
                "{name}_{k}: engine {} lehn {}",
                format_rational(&x.coeffs()[k]),
                format_rational(&y.coeffs()[k])
            ));
        }
    }
    Ok(format!("A, B, C, D to order {order}"))
}

fn check_s5(engine: &UniversalSeriesSet) -> Check {
    for t in blowup_targets(5).unwrap().tuples() {
        let v = eval_s5_polynomial(&t);
        if !v.is_zero() {
            return Err(format!("printed polynomial at {t} = {}", format_rational(&v)));
        }
    }
    let samples = sample_tuples(24);
    let mismatch = samples.iter().find_map(|inv| {
        let engine_value = segre_number(inv, 5, engine).ok()?;
        let printed = eval_s5_polynomial(inv);
        (engine_value != printed).then(|| (*inv, printed, engine_value))
    });
    match mismatch {
        None => Ok(format!("zero at both k=5 targets; matches engine on {} tuples", samples.len())),
        Some((inv, printed, engine_value)) => {
            let mut msg = format!(
                "at {inv}: printed {} engine {}",
                format_rational(&printed),
                format_rational(&engine_value)
            );
            if let Ok(poly) = segre_polynomial(5, engine) {
                let diffs = polynomial_differences(&s5_polynomial_terms(), &poly);
                let shown: Vec<String> = diffs
                    .iter()
                    .take(4)
                    .map(|(e, p, q)| {
                        format!(
                            "d^{} pi^{} kappa^{} e^{}: printed {} engine {}",
                            e[0],
                            e[1],
                            e[2],
                            e[3],
                            format_rational(p),
                            format_rational(q)
                        )
                    })
                    .collect();
                msg = format!("{msg}; transcription discrepancy in {} term(s): {}", diffs.len(), shown.join("; "));
            }
            Err(msg)
        }
    }
}

fn check_degenerate(engine: &UniversalSeriesSet, oracle: &LehnOracle, order: usize) -> Check {
    for kappa in 1..=3 {
        let inv = SurfaceInvariants::new(0, 2 * kappa, kappa, 11 * kappa);
        let s = segre_series(&inv, order, engine).map_err(|e| e.to_string())?;
        if !is_identically_one(&s) {
            return Err(format!("engine series at {inv} is not 1"));
        }
        let l = oracle.series(&inv).map_err(|e| e.to_string())?.truncate(order);
        if !is_identically_one(&l) {
            return Err(format!("lehn series at {inv} is not 1"));
        }
    }
    Ok(format!("kappa in 1..=3 to order {order}"))
}
