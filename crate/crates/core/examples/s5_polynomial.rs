//! Expands 5! s_5 as a polynomial in (d, pi, kappa, e) and checks it against the printed quintic.

use segre::lehn::s5_polynomial_terms;
use segre::universal::{polynomial_differences, segre_polynomial};
use segre::UniversalSeriesSet;

fn main() -> segre::Result<()> {
    let k = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let u = UniversalSeriesSet::determine(k);
    let terms = segre_polynomial(k, &u)?;
    println!("{k}! s_{k} has {} terms:", terms.len());
    for t in &terms {
        println!("  {t}");
    }
    if k == 5 {
        let diffs = polynomial_differences(&s5_polynomial_terms(), &terms);
        println!("differences from the printed quintic: {}", diffs.len());
    }
    Ok(())
}
