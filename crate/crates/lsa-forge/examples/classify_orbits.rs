//! The orbit classification: automorphism families of the base, the
//! (mu, eta) action on cocycles, normalization of the three-parameter family
//! onto A4(s, t), and conjugacy decisions with verified witnesses.
//!
//! ```sh
//! cargo run --example classify_orbits
//! ```

use lsa_forge::classify::{
    a4_conjugate, a4_normalize, aut_family_a3, cocycle_pullback, AutCase,
};
use lsa_forge::{rat, rint, ExactMatrix, Scalar};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // the automorphism family of the base, verified symbolically
    let fam = aut_family_a3(AutCase::Case1);
    println!("Aut family (case 1), parameters {:?}:", fam.param_names);
    for r in 0..fam.matrix.rows() {
        let row: Vec<String> = fam.matrix.row(r).iter().map(|s| s.to_string()).collect();
        println!("  [{}]", row.join(", "));
    }
    println!("  constraints: {:?}\n", fam.constraints);

    // pull a representative cocycle back along a symbolic family member
    let g = ExactMatrix::from_rows(vec![
        vec![Scalar::var("alpha"), Scalar::zero(), Scalar::zero()],
        vec![Scalar::zero(), Scalar::var("beta"), Scalar::var("gamma")],
        vec![Scalar::zero(), Scalar::var("gamma").neg(), Scalar::var("beta")],
    ])?;
    let pulled = cocycle_pullback(&Scalar::var("mu"), &fam.matrix, &g)?.reduce_squares(&fam.rules);
    println!("orbit of the representative under (mu, eta):");
    println!("  alpha slot: {}", pulled.at(0, 0));
    println!("  beta  slot: {}", pulled.at(1, 1));
    println!("  gamma slot: {}\n", pulled.at(1, 2));

    // normalization of a concrete member of the three-parameter family
    let res = a4_normalize(&rint(2), &rint(4), &rint(2))?;
    println!("A4(2, 4, 2) normalizes to (s, t) = ({}, {}):", res.s, res.t);
    for step in &res.steps {
        println!("  step: {} (verified: {})", step.description, step.verify()?);
    }
    println!();

    // conjugacy decisions
    for (s, t, sp, tp) in [
        (rint(1), rint(1), rint(3), rint(1)),
        (rint(1), rint(1), rint(-1), rint(-1)),
        (rint(0), rint(5), rint(0), rint(-5)),
        (rint(1), rint(1), rint(1), rint(-1)),
    ] {
        let d = a4_conjugate(&s, &t, &sp, &tp)?;
        println!("A4({s}, {t}) vs A4({sp}, {tp}): {}", d.report.decision);
        if let Some(w) = &d.report.witness {
            println!(
                "  mu = {}, eps = {}, r = b^2 + c^2 = {}{}",
                w.mu,
                w.eps,
                w.r,
                if w.symbolic_radical { " (symbolic radical)" } else { "" }
            );
        }
        for o in &d.report.obstructions {
            println!("  obstruction: {o}");
        }
    }

    // a pair landing on a sum of two rational squares gets an explicit (b, c)
    let d = a4_conjugate(&rint(1), &rint(1), &rat(5, 1), &rint(1))?;
    if let Some(w) = &d.report.witness {
        println!("\nA4(1,1) vs A4(5,1): rational witness with (b, c) = ({}, {})", w.b, w.c);
    }
    Ok(())
}
