//! Totally positive fundamental units of real quadratic orders by the
//! continued-fraction route, checked against bounded brute force.
//!
//!     cargo run --release --example fundamental_units

use geodesic_theta::pell::{brute_force_tp_unit, fundamental_tp_unit};
use geodesic_theta::ratio::format_rational;

fn main() {
    println!("{:>4} {:>4}  {:28} {}", "D", "f", "unit", "oracle agrees");
    for (d, f) in [
        (2u64, 1u64),
        (2, 3),
        (3, 1),
        (5, 1),
        (5, 2),
        (6, 1),
        (7, 1),
        (10, 1),
        (13, 1),
        (15, 1),
        (21, 1),
        (29, 1),
    ] {
        let u = fundamental_tp_unit(d, f);
        let brute = brute_force_tp_unit(d, f, 2_000_000);
        let pretty = format!(
            "{} + {} sqrt({})",
            format_rational(&u.a),
            format_rational(&u.b),
            d
        );
        println!(
            "{d:>4} {f:>4}  {pretty:28} {}",
            match brute {
                Some(b) if b == u => "yes",
                Some(_) => "NO",
                None => "oracle bound too small",
            }
        );
    }
}
