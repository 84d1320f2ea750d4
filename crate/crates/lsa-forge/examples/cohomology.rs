//! Second cohomology of the two complete structures on the Euclidean
//! algebra, with a trivial one-dimensional bimodule: cocycle spaces,
//! coboundaries, and the class representatives that parametrize the central
//! extensions.
//!
//! ```sh
//! cargo run --example cohomology
//! ```

use lsa_forge::catalog::{self, bindings};
use lsa_forge::extension::{cohomology_h2, BimoduleCtx};
use lsa_forge::rint;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for eps in [0i64, 1] {
        let base = catalog::named_algebra("a3", &bindings(&[("eps", rint(eps))]))?;
        let ctx = BimoduleCtx::trivial(base, 1);

        // the coboundary operators as exact matrices; delta2 . delta1 = 0
        let d1 = ctx.delta1_matrix()?;
        let d2 = ctx.delta2_matrix()?;
        assert!(d2.mul(&d1)?.is_zero());
        println!("eps = {eps}:");
        println!(
            "  delta1: {}x{} matrix, delta2: {}x{} matrix, delta2 . delta1 = 0",
            d1.rows(),
            d1.cols(),
            d2.rows(),
            d2.cols()
        );

        let coh = cohomology_h2(&ctx)?;
        println!(
            "  Z^2 dim {}  B^2 dim {}  H^2 dim {}",
            coh.z2.dim(),
            coh.b2.dim(),
            coh.h2_dim
        );
        for (i, rep) in coh.representatives.iter().enumerate() {
            let m = rep.to_matrix()?;
            print!("  representative {i}:");
            for r in 0..m.rows() {
                let row: Vec<String> = m.row(r).iter().map(|s| s.to_string()).collect();
                print!("  [{}]", row.join(" "));
            }
            println!();
        }
        println!();
    }
    Ok(())
}
