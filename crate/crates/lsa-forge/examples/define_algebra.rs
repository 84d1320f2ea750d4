//! Define an algebra in the text format, certify it, inspect its ideals and
//! centers, and round-trip it through the serializer.
//!
//! ```sh
//! cargo run --example define_algebra
//! ```

use lsa_forge::algebra::Side;
use lsa_forge::textfmt;

const DEFINITION: &str = "\
# a complete left-symmetric structure on the Heisenberg algebra
algebra demo
field rational
params p q
dim 3
kind lsa
product e1 e1 = p*e3
product e2 e2 = q*e3
product e1 e2 = 1/2*e3
product e2 e1 = -1/2*e3
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let algebra = textfmt::parse_file(DEFINITION)?.single_algebra()?;
    println!("parsed `{}` (dim {}, {})", algebra.name, algebra.dim(), algebra.kind());

    // the identity was certified during parsing; completeness is a symbolic
    // statement about all parameter values at once
    let completeness = algebra.is_complete()?;
    println!("complete for all p, q: {}", completeness.complete);

    // specialize the parameters and look at the exact structure
    let mut bindings = std::collections::BTreeMap::new();
    bindings.insert("p".to_string(), lsa_forge::Scalar::int(0));
    bindings.insert("q".to_string(), lsa_forge::Scalar::int(0));
    let at_origin = algebra.substitute_params(&bindings)?;
    println!("T(A) at p = q = 0: dim {}", at_origin.translation_ideal()?.dim());
    println!("C(A) at p = q = 0: dim {}", at_origin.lsa_center()?.dim());

    let lie = at_origin.associated_lie()?;
    println!("associated Lie invariants: {:?}", lie.lie_invariants()?);

    // multiplication operators of a generic element
    let x = at_origin.element_from_rats(&[lsa_forge::rint(1), lsa_forge::rint(2), lsa_forge::rint(0)]);
    let rx = at_origin.operator_matrix(Side::Right, &x)?;
    println!("power traces of R_x for x = e1 + 2 e2: {:?}", rx.power_traces(3)?);

    // serialize back out: the text form reproduces the tensor exactly
    let text = textfmt::serialize_algebra(&algebra);
    let reparsed = textfmt::parse_file(&text)?.single_algebra()?;
    assert_eq!(algebra.tensor(), reparsed.tensor());
    println!("\nserialized definition:\n{text}");
    Ok(())
}
