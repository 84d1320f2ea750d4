//! Walk the whole catalog: build every named algebra with symbolic
//! parameters, certify its defining identity, and run the applicable
//! analyses against the recorded regression values.
//!
//! ```sh
//! cargo run --example catalog_checks
//! ```

use lsa_forge::catalog::{self, ParamBindings};
use lsa_forge::report::run_suite;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for entry in catalog::entries() {
        // symbolic build: certifies left-symmetry / Jacobi as polynomial
        // identities in the declared parameters
        let symbolic = entry.build(&ParamBindings::new())?;
        println!(
            "{:<12} dim {}  kind {}  params {:?}",
            entry.name,
            symbolic.dim(),
            symbolic.kind(),
            entry.params
        );

        // the default rational specialization drives the full suite
        let specialized = entry.build_default_spec()?;
        let report = run_suite(&specialized, Some(&entry.expected), None)?;
        for check in &report.checks {
            print!("    {:<5} {}", check.status.as_str(), check.name);
            if let Some(w) = &check.witness {
                print!("  [{w}]");
            }
            println!();
        }
        if report.any_failed() {
            return Err(format!("{} failed its regression record", entry.name).into());
        }
    }
    println!("\nall catalog entries verified");
    Ok(())
}
