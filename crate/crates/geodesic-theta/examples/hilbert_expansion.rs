//! Print the Hilbert coefficients c(beta) for totally positive beta up to a
//! trace bound, grouped by trace, together with the diagonal restriction.
//!
//!     cargo run --release --example hilbert_expansion [config.json] [trace_max]

use geodesic_theta::config::load_path;
use geodesic_theta::ratio::format_rational;
use geodesic_theta::series::{elliptic_coeff, hilbert_coeffs};

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        format!("{}/configs/disc14_d3d5.json", env!("CARGO_MANIFEST_DIR"))
    });
    let trace_max: u32 = std::env::args()
        .nth(2)
        .and_then(|s| s.parse().ok())
        .unwrap_or(15);
    let loaded = load_path(std::path::Path::new(&path)).expect("config verifies");
    let ctx = &loaded.ctx;
    let table = hilbert_coeffs(ctx, trace_max);
    let mut current = 0u32;
    for ((tr, v), c) in &table {
        if *tr != current {
            current = *tr;
            println!("trace {tr}  (a_{tr} = {})", elliptic_coeff(ctx, *tr));
        }
        let vs = format_rational(v);
        let (sign, mag) = match vs.strip_prefix('-') {
            Some(m) => ("-", m.to_string()),
            None => ("+", vs),
        };
        println!("    c({}/2 {} {} sqrt({})) = {c}", tr, sign, mag, ctx.d);
    }
}
