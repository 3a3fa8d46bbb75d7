//! The two blown-up K3 targets for each k and their vanishing Segre numbers on both routes.

use num_traits::Zero;

use segre::lehn::verify_blowup_vanishing;
use segre::universal::{blowup_targets, segre_number};
use segre::UniversalSeriesSet;

fn main() -> segre::Result<()> {
    let max_k = 7;
    let u = UniversalSeriesSet::determine(max_k);
    for k in 2..=max_k {
        let t = blowup_targets(k)?;
        let [(g1, l1), (g2, l2)] = t.genus_and_multiplicity;
        println!(
            "k={k}: {} from (g={g1}, l={l1}), {} from (g={g2}, l={l2}), h0 = {}",
            t.first, t.second, t.section_count
        );
        for inv in t.tuples() {
            assert!(segre_number(&inv, k, &u)?.is_zero());
        }
    }
    let report = verify_blowup_vanishing(max_k);
    for e in &report.entries {
        println!("lehn k={} {} -> {}", e.k, e.target, e.coefficient);
    }
    assert!(report.all_vanish());
    Ok(())
}
