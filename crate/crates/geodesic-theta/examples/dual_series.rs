//! Compute the intersection-number series by both routes and print them side
//! by side with the calibration sign.
//!
//!     cargo run --release --example dual_series [config.json] [n_max]

use geodesic_theta::config::load_path;
use geodesic_theta::series::report;

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        format!("{}/configs/disc14_d3d5.json", env!("CARGO_MANIFEST_DIR"))
    });
    let n_max: u32 = std::env::args()
        .nth(2)
        .and_then(|s| s.parse().ok())
        .unwrap_or(24);
    let loaded = load_path(std::path::Path::new(&path)).expect("config verifies");
    let table = report(&loaded.ctx, n_max, loaded.level * loaded.disc).expect("both methods run");
    println!("{} (calibration sign {:+})", loaded.config.name, table.calibration_sign);
    println!("{:>4} {:>8} {:>8}  {:7} {}", "n", "theta", "oracle", "match", "coprime");
    for row in &table.rows {
        println!(
            "{:>4} {:>8} {:>8}  {:7} {}",
            row.n, row.a_theta, row.a_oracle, row.matches, row.coprime_to_level
        );
    }
    if table.all_match() {
        println!("all {} coefficients agree after calibration", table.rows.len());
    } else {
        println!("MISMATCHES at n = {:?}", table.mismatches);
    }
}
