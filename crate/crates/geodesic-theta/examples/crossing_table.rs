//! Term-by-term comparison of the algebraic sign with the geometric crossing
//! sign, orbit by orbit, plus a scan for crossings among norm-n elements
//! outside the positive cone.
//!
//!     cargo run --release --example crossing_table [config.json] [n_max]

use geodesic_theta::config::load_path;
use geodesic_theta::geodesic::termwise_compare;
use geodesic_theta::ratio::format_rational;

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        format!("{}/configs/disc14_d3d5.json", env!("CARGO_MANIFEST_DIR"))
    });
    let n_max: u32 = std::env::args()
        .nth(2)
        .and_then(|s| s.parse().ok())
        .unwrap_or(10);
    let loaded = load_path(std::path::Path::new(&path)).expect("config verifies");
    let ctx = &loaded.ctx;
    let mut agree = 0usize;
    let mut anti = 0usize;
    let mut total = 0usize;
    for n in 1..=n_max {
        let report = termwise_compare(ctx, n, 4).expect("termwise comparison");
        println!(
            "n = {n}: {} orbits, theta total {}, crossing total {}",
            report.rows.len(),
            report.theta_total(),
            report.crossing_total()
        );
        for row in &report.rows {
            let coords: Vec<String> = row.rep.key.iter().map(format_rational).collect();
            println!(
                "    b = ({})  sign {:+}  crossing {:+}  {}",
                coords.join(", "),
                row.varsigma,
                row.crossing,
                if row.varsigma == row.crossing { "agree" } else { "differ" }
            );
        }
        if report.scanned_nonpositive > 0 {
            println!(
                "    scanned {} non-totally-positive elements: {} crossings",
                report.scanned_nonpositive, report.nonpositive_crossings
            );
        }
        agree += report.agree;
        anti += report.anti;
        total += report.rows.len();
    }
    println!("termwise: {agree}/{total} orbits equal, {anti}/{total} negated");
}
