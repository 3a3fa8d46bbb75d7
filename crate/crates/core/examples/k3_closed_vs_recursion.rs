//! K3 Segre numbers from the closed formula and from the abelian splitting recursion.

use segre::k3::{closed_segre, determine_b_s1, in_vanishing_range, recursion_table};

fn main() -> segre::Result<()> {
    let max_k = 6;
    let max_g = 16;
    let seqs = determine_b_s1(max_k);

    let show = |v: &[segre::ExactRational]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    println!("b      = {}", show(&seqs.b));
    println!("s_(.,1) = {}", show(&seqs.s1));
    println!("b'     = {}", show(&seqs.b_prime));

    let table = recursion_table(max_k, max_g, &seqs)?;
    print!("{:>4}", "g\\k");
    for k in 0..=max_k {
        print!("{k:>10}");
    }
    println!();
    for g in 1..=max_g {
        print!("{g:>4}");
        for k in 0..=max_k {
            let v = &table[g - 1][k];
            assert_eq!(*v, closed_segre(k, g as i64));
            let mark = if in_vanishing_range(k, g as i64) { "*" } else { " " };
            print!("{:>9}{mark}", v.to_string());
        }
        println!();
    }
    println!("* marks 2k-1 <= g <= 3k-2, where s_(k,g) vanishes");
    Ok(())
}
