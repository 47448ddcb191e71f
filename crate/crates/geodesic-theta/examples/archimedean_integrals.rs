//! The orbital integral of the boundary Schwartz function: closed form
//! against quadrature on a grid, and the symmetric-space coefficient.
//!
//!     cargo run --release --example archimedean_integrals

use geodesic_theta::arch::{i_closed, i_quadrature, km_coeff, phi_inf};

fn main() {
    println!("{:>6} {:>6} {:>14} {:>14} {:>10}", "x", "y", "closed", "quadrature", "diff");
    let grid = [-2.0, -1.0, -0.5, 0.25, 0.5, 1.0, 2.0];
    let mut worst: f64 = 0.0;
    for &x in &grid {
        for &y in &grid {
            let c = i_closed(x, y);
            let q = i_quadrature(x, y, 1e-9).expect("quadrature converges");
            let d = (c - q).abs();
            worst = worst.max(d);
            if x.abs() <= 1.0 && y.abs() <= 1.0 {
                println!("{x:>6} {y:>6} {c:>14.10} {q:>14.10} {d:>10.2e}");
            }
        }
    }
    println!("worst deviation over the 49-point grid: {worst:.2e}");
    println!();
    println!("coefficient at t = 1 equals the Schwartz function:");
    for (x, y) in [(0.5, 0.5), (1.0, -0.3)] {
        println!(
            "  ({x}, {y}): km_coeff = {:.12}, phi_inf = {:.12}",
            km_coeff(x, y, 1.0),
            phi_inf(x, y)
        );
    }
}
