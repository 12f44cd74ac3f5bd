//! Operation counts of the recursive DCT-2 for n = 2 .. 1024, measured from
//! the factorization and checked against the closed forms.
//!
//! Run with: `cargo run -p dctfactor --example op_counts`

use dctfactor::{closed_form_adds, closed_form_core_mults, CountRow};

fn main() -> dctfactor::Result<()> {
    println!(
        "{:>6} {:>10} {:>8} {:>8} {:>8}",
        "n", "core_mul", "scale", "total", "adds"
    );
    for k in 1..=10u32 {
        let row = CountRow::measure(1 << k)?;
        assert_eq!(row.core_mults, closed_form_core_mults(k));
        assert_eq!(row.adds, closed_form_adds(k));
        println!(
            "{:>6} {:>10} {:>8} {:>8} {:>8}",
            row.n, row.core_mults, row.scaling_mults, row.total_mults, row.adds
        );
    }
    let eight = CountRow::measure(8)?;
    println!();
    println!(
        "8-point core: {} multiplications, {} additions",
        eight.core_mults, eight.adds
    );
    Ok(())
}
