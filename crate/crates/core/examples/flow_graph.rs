//! Lowers the 16-point transform to straight-line code and writes the flow
//! graph as Graphviz DOT plus a plain listing.
//!
//! Run with: `cargo run -p dctfactor --example flow_graph -- [out_dir]`
//! then e.g. `dot -Tsvg out_dir/dct16_core.dot > dct16.svg`.

use std::path::PathBuf;

use dctfactor::{build_dct2, emit_dot, emit_listing, lower, lower_with, LowerOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    std::fs::create_dir_all(&dir)?;

    let node = build_dct2(16)?;
    let full = lower(&node)?;
    // Without the output scaling only the 17 core multiplications remain.
    let core = lower_with(
        &node,
        LowerOptions {
            include_scaling: false,
        },
    )?;

    for (name, prog) in [("dct16_full", &full), ("dct16_core", &core)] {
        std::fs::write(dir.join(format!("{name}.dot")), emit_dot(prog))?;
        std::fs::write(dir.join(format!("{name}.txt")), emit_listing(prog))?;
        println!(
            "{name}: {} instructions, {} -> {}",
            prog.instructions().len(),
            prog.op_count(),
            dir.join(format!("{name}.dot")).display()
        );
    }

    println!("\nstages of the core graph:");
    for stage in core.stages() {
        println!("  {:<18} t{}..t{}", stage.label, stage.start, stage.end - 1);
    }
    Ok(())
}
