//! Load a configuration and run every construction-time check, printing the
//! derived data: discriminant, level, conductors, units, and alpha.
//!
//!     cargo run --release --example verify_config [path/to/config.json]

use geodesic_theta::config::load_path;
use geodesic_theta::ratio::format_rational;

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        format!("{}/configs/disc14_d3d5.json", env!("CARGO_MANIFEST_DIR"))
    });
    let loaded = match load_path(std::path::Path::new(&path)) {
        Ok(l) => l,
        Err(e) => {
            eprintln!("configuration rejected: {e}");
            std::process::exit(1);
        }
    };
    let ctx = &loaded.ctx;
    println!("configuration {} ({})", loaded.config.name, path);
    println!("  algebra        ({}, {})", format_rational(&ctx.alg.a), format_rational(&ctx.alg.b));
    println!("  discriminant   {}", loaded.disc);
    println!("  level          {}", loaded.level);
    println!("  reduced disc   {}", ctx.order.reduced_disc);
    println!("  D1, D2         {}, {} (conductors {}, {})", ctx.d1, ctx.d2, ctx.emb1.f, ctx.emb2.f);
    println!(
        "  unit 1         {} + {} sqrt({})",
        format_rational(&ctx.u1.a), format_rational(&ctx.u1.b), ctx.d1
    );
    println!(
        "  unit 2         {} + {} sqrt({})",
        format_rational(&ctx.u2.a), format_rational(&ctx.u2.b), ctx.d2
    );
    println!(
        "  alpha          {} + {} sqrt({})  totally positive: {}",
        format_rational(&ctx.alpha.a), format_rational(&ctx.alpha.b), ctx.d,
        ctx.alpha_totally_positive()
    );
    println!("all invariants verified");
}
