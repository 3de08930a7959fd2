//! Pseudo-pure state preparation for the five-spin sample and three four-spin layouts.

use siam_dmft::pps::{run_pps_sequence, Sp2Variant, SpinLayout};

fn main() -> siam_dmft::Result<()> {
    let layouts = [
        SpinLayout::fffhh(0.9407)?,
        SpinLayout::aaaa(),
        SpinLayout::abbb(2.0)?,
        SpinLayout::aabb(2.0)?,
    ];
    for variant in [Sp2Variant::Packed, Sp2Variant::Crushed] {
        println!("SP2 {variant:?}");
        println!("{:>7} {:>6} {:>10} {:>11} {:>12} {:>12}", "layout", "pps", "signal", "background", "offdiag", "spread");
        for layout in &layouts {
            let r = run_pps_sequence(layout, variant)?.report;
            println!(
                "{:>7} {:>6} {:>10.6} {:>11.6} {:>12.3e} {:>12.3e}",
                layout.label(),
                r.is_pps,
                r.signal,
                r.background,
                r.max_offdiag,
                r.background_spread
            );
        }
        println!();
    }
    Ok(())
}
