//! Build the oscillator-algebra structures as central extensions: the Lie
//! extension of the Euclidean algebra recovering the oscillator bracket, and
//! the left-symmetric central extensions giving the three-parameter family,
//! with exactness and center checks.
//!
//! ```sh
//! cargo run --example central_extensions
//! ```

use lsa_forge::algebra::{check_morphism, AlgebraKind};
use lsa_forge::catalog::{self, bindings, ParamBindings};
use lsa_forge::extension::{
    central_extend, exactness_ideal, lie_extend, BilinearMap, LieExtensionData,
};
use lsa_forge::{rint, Algebra, ExactMatrix, RingTag, Scalar};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Lie side: fiber R, base the Euclidean algebra, omega(e2, e3) = 1
    let e2 = catalog::named_algebra("e2", &ParamBindings::new())?;
    let fiber = Algebra::bilinear("R", 1, RingTag::Rational, vec![Scalar::zero()], vec![])?
        .certify(AlgebraKind::Lie)?;
    let mut omega = BilinearMap::zero(3, 1);
    omega.set(1, 2, vec![Scalar::one()]);
    omega.set(2, 1, vec![Scalar::int(-1)]);
    let data = LieExtensionData::new(
        fiber,
        e2,
        vec![ExactMatrix::zeros(1, 1, RingTag::Rational); 3],
        omega,
    )?;
    let (oscillator, verdict) = lie_extend(&data)?;
    println!(
        "Lie extension: conditions {}, jacobi {}, agree {}",
        verdict.conditions_hold(),
        verdict.jacobi,
        verdict.consistent
    );
    let adapted = catalog::named_algebra("o4-adapted", &ParamBindings::new())?;
    let perm = ExactMatrix::from_rows(vec![
        vec![Scalar::zero(), Scalar::one(), Scalar::zero(), Scalar::zero()],
        vec![Scalar::zero(), Scalar::zero(), Scalar::one(), Scalar::zero()],
        vec![Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::one()],
        vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::zero()],
    ])?;
    println!(
        "isomorphic to the adapted oscillator basis: {}",
        check_morphism(&perm, &oscillator, &adapted, true)?.holds(true)
    );

    // left-symmetric side: central extensions of the Euclidean-algebra
    // structure along the (alpha, beta, gamma) cocycle pattern
    let a3 = catalog::named_algebra("a3", &bindings(&[("eps", rint(0))]))?;
    let (alpha, beta, gamma) = (rint(2), rint(4), rint(2));
    let mut g = BilinearMap::zero(3, 1);
    g.set(0, 0, vec![Scalar::Rat(alpha.clone())]);
    g.set(1, 1, vec![Scalar::Rat(beta.clone())]);
    g.set(2, 2, vec![Scalar::Rat(beta.clone())]);
    g.set(1, 2, vec![Scalar::Rat(gamma.clone())]);
    g.set(2, 1, vec![Scalar::Rat(-gamma.clone())]);

    println!("\ncocycle (alpha, beta, gamma) = ({alpha}, {beta}, {gamma}):");
    let exact = exactness_ideal(&a3, &g)?;
    println!("exactness ideal dim {} (zero means the extension is exact)", exact.dim());

    let built = central_extend(&a3, &g)?;
    let center = built.lsa_center()?;
    println!(
        "built a 4-dimensional complete LSA; center dim {} containing the fiber: {}",
        center.dim(),
        center.contains(&built.basis_element(3))
    );
    println!("complete: {}", built.is_complete()?.complete);

    // the quotient by the fiber reproduces the base structure constants
    let quotient_ok = (0..3).all(|i| {
        (0..3).all(|j| (0..3).all(|k| built.c(i, j, k) == a3.c(i, j, k)))
    });
    println!("quotient by the fiber reproduces the base: {quotient_ok}");
    Ok(())
}
