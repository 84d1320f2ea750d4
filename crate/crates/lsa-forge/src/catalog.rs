//! Named constructors for the algebras the workbench studies, each with a
//! regression record of known properties checked on demand.
//!
//! Construction certifies the kind identity (left-symmetry or Jacobi), so a
//! transcription mistake in any table below fails loudly.

use crate::algebra::{Algebra, AlgebraKind};
use crate::{Error, Result};
use lsa_exact::{rat, ExactMatrix, Rat, RingTag, Scalar};
use std::collections::BTreeMap;

/// Values for the parameters of a catalog entry; a missing key means the
/// parameter stays symbolic (polynomial ring).
pub type ParamBindings = BTreeMap<String, Rat>;

/// Known properties recorded for regression checking. `None` means the
/// property is not applicable or deliberately unpinned for this entry.
#[derive(Clone, Debug, Default)]
pub struct Expected {
    /// Completeness of the default (possibly symbolic) build.
    pub complete: Option<bool>,
    /// The Novikov identity on the default build.
    pub novikov: Option<bool>,
    /// Lie invariants of the entry itself (Lie entries) or of the associated
    /// Lie algebra under the default rational specialization (LSA entries).
    pub center_dim: Option<usize>,
    pub derived_dims: Option<Vec<usize>>,
    pub solvable: Option<bool>,
    pub nilpotent: Option<bool>,
}

pub struct CatalogEntry {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub params: &'static [&'static str],
    pub kind: AlgebraKind,
    pub description: &'static str,
    /// Rational parameter values used when a field-coefficient instance is
    /// needed for the regression record (Lie invariants etc.).
    pub default_spec: &'static [(&'static str, i64, i64)],
    pub expected: Expected,
    builder: fn(&BTreeMap<String, Scalar>) -> Result<Algebra>,
}

impl CatalogEntry {
    pub fn build(&self, bindings: &ParamBindings) -> Result<Algebra> {
        let mut map: BTreeMap<String, Scalar> = BTreeMap::new();
        for p in self.params {
            match bindings.get(*p) {
                Some(r) => {
                    map.insert(p.to_string(), Scalar::Rat(r.clone()));
                }
                None => {
                    map.insert(p.to_string(), Scalar::var(p));
                }
            }
        }
        for key in bindings.keys() {
            if !self.params.contains(&key.as_str()) {
                return Err(Error::MissingParam(format!(
                    "{key} is not a parameter of {} (expected one of {:?})",
                    self.name, self.params
                )));
            }
        }
        (self.builder)(&map)
    }

    /// The entry with its default rational specialization applied.
    pub fn build_default_spec(&self) -> Result<Algebra> {
        let mut bindings = ParamBindings::new();
        for (k, n, d) in self.default_spec {
            bindings.insert(k.to_string(), rat(*n, *d));
        }
        self.build(&bindings)
    }
}

/// Tiny builder for structure-constant tables; indices are 1-based to match
/// the written relations e_i . e_j = ...
struct Table {
    dim: usize,
    tensor: Vec<Scalar>,
}

impl Table {
    fn new(dim: usize) -> Self {
        Table { dim, tensor: vec![Scalar::zero(); dim * dim * dim] }
    }

    fn put(&mut self, i: usize, j: usize, terms: &[(Scalar, usize)]) -> &mut Self {
        for (c, k) in terms {
            self.tensor[((i - 1) * self.dim + (j - 1)) * self.dim + (k - 1)] = c.clone();
        }
        self
    }

    fn finish(
        self,
        name: &str,
        ring: RingTag,
        kind: AlgebraKind,
        params: Vec<String>,
    ) -> Result<Algebra> {
        Algebra::bilinear(name, self.dim, ring, self.tensor, params)?.certify(kind)
    }
}

fn ring_and_params(map: &BTreeMap<String, Scalar>) -> (RingTag, Vec<String>) {
    let params: Vec<String> = map
        .iter()
        .filter(|(_, v)| matches!(v, Scalar::Poly(_)))
        .map(|(k, _)| k.clone())
        .collect();
    let ring = if params.is_empty() { RingTag::Rational } else { RingTag::Poly };
    (ring, params)
}

fn one() -> Scalar {
    Scalar::one()
}

fn half() -> Scalar {
    Scalar::Rat(rat(1, 2))
}

// ---------------------------------------------------------------------------
// builders

/// Trivial one-dimensional left-symmetric algebra { e0 : e0.e0 = 0 }.
fn build_i0(_: &BTreeMap<String, Scalar>) -> Result<Algebra> {
    Table::new(1).finish("I0", RingTag::Rational, AlgebraKind::LeftSymmetric, vec![])
}

/// Heisenberg Lie algebra: [e1,e2] = e3.
fn build_h3(_: &BTreeMap<String, Scalar>) -> Result<Algebra> {
    let mut t = Table::new(3);
    t.put(1, 2, &[(one(), 3)]).put(2, 1, &[(one().neg(), 3)]);
    t.finish("H3", RingTag::Rational, AlgebraKind::Lie, vec![])
}

/// Lie algebra of Euclidean plane motions: [e1,e2] = e3, [e1,e3] = -e2.
fn build_e2(_: &BTreeMap<String, Scalar>) -> Result<Algebra> {
    let mut t = Table::new(3);
    t.put(1, 2, &[(one(), 3)])
        .put(2, 1, &[(one().neg(), 3)])
        .put(1, 3, &[(one().neg(), 2)])
        .put(3, 1, &[(one(), 2)]);
    t.finish("E2", RingTag::Rational, AlgebraKind::Lie, vec![])
}

/// Oscillator Lie algebra in its defining basis:
/// [e1,e2] = e3, [e4,e1] = lambda e2, [e4,e2] = -lambda e1.
fn build_oscillator(map: &BTreeMap<String, Scalar>) -> Result<Algebra> {
    let lam = map["lambda"].clone();
    let (ring, params) = ring_and_params(map);
    let mut t = Table::new(4);
    t.put(1, 2, &[(one(), 3)])
        .put(2, 1, &[(one().neg(), 3)])
        .put(4, 1, &[(lam.clone(), 2)])
        .put(1, 4, &[(lam.clone().neg(), 2)])
        .put(4, 2, &[(lam.clone().neg(), 1)])
        .put(2, 4, &[(lam, 1)]);
    t.finish("OscillatorLie", ring, AlgebraKind::Lie, params)
}

fn build_o4(_: &BTreeMap<String, Scalar>) -> Result<Algebra> {
    let mut map = BTreeMap::new();
    map.insert("lambda".to_string(), one());
    let mut a = build_oscillator(&map)?;
    a.name = "O4".into();
    Ok(a)
}

/// The oscillator algebra in the basis adapted to its complete
/// left-symmetric structures: [e1,e2] = e3, [e1,e3] = -e2, [e2,e3] = e4.
fn build_o4_adapted(_: &BTreeMap<String, Scalar>) -> Result<Algebra> {
    let mut t = Table::new(4);
    t.put(1, 2, &[(one(), 3)])
        .put(2, 1, &[(one().neg(), 3)])
        .put(1, 3, &[(one().neg(), 2)])
        .put(3, 1, &[(one(), 2)])
        .put(2, 3, &[(one(), 4)])
        .put(3, 2, &[(one().neg(), 4)]);
    t.finish("O4-adapted", RingTag::Rational, AlgebraKind::Lie, vec![])
}

/// The two-parameter family of complete left-symmetric structures on the
/// oscillator algebra: e1.e1 = s e4, e2.e2 = e3.e3 = t e4, e1.e2 = e3,
/// e1.e3 = -e2, e2.e3 = (1/2) e4, e3.e2 = -(1/2) e4.
fn build_a4(map: &BTreeMap<String, Scalar>) -> Result<Algebra> {
    let s = map["s"].clone();
    let t_par = map["t"].clone();
    let (ring, params) = ring_and_params(map);
    let mut t = Table::new(4);
    t.put(1, 1, &[(s, 4)])
        .put(2, 2, &[(t_par.clone(), 4)])
        .put(3, 3, &[(t_par, 4)])
        .put(1, 2, &[(one(), 3)])
        .put(1, 3, &[(one().neg(), 2)])
        .put(2, 3, &[(half(), 4)])
        .put(3, 2, &[(half().neg(), 4)]);
    t.finish("A4", ring, AlgebraKind::LeftSymmetric, params)
}

/// The isolated complete left-symmetric structure on the oscillator algebra:
/// e1.e2 = e3, e1.e3 = -e2, e2.e2 = e3.e3 = e1, e2.e3 = (1/2) e4,
/// e3.e2 = -(1/2) e4.
fn build_b4(_: &BTreeMap<String, Scalar>) -> Result<Algebra> {
    let mut t = Table::new(4);
    t.put(1, 2, &[(one(), 3)])
        .put(1, 3, &[(one().neg(), 2)])
        .put(2, 2, &[(one(), 1)])
        .put(3, 3, &[(one(), 1)])
        .put(2, 3, &[(half(), 4)])
        .put(3, 2, &[(half().neg(), 4)]);
    t.finish("B4", RingTag::Rational, AlgebraKind::LeftSymmetric, vec![])
}

/// Pre-normalization central-extension family on the oscillator algebra:
/// e1.e1 = alpha e4, e2.e2 = e3.e3 = beta e4, e1.e2 = e3, e1.e3 = -e2,
/// e2.e3 = gamma e4, e3.e2 = -gamma e4. Kept distinct from A4(s,t) so the
/// normalization onto it stays a testable operation.
fn build_a4abc(map: &BTreeMap<String, Scalar>) -> Result<Algebra> {
    let alpha = map["alpha"].clone();
    let beta = map["beta"].clone();
    let gamma = map["gamma"].clone();
    let (ring, params) = ring_and_params(map);
    let mut t = Table::new(4);
    t.put(1, 1, &[(alpha, 4)])
        .put(2, 2, &[(beta.clone(), 4)])
        .put(3, 3, &[(beta, 4)])
        .put(1, 2, &[(one(), 3)])
        .put(1, 3, &[(one().neg(), 2)])
        .put(2, 3, &[(gamma.clone(), 4)])
        .put(3, 2, &[(gamma.neg(), 4)]);
    t.finish("A4abc", ring, AlgebraKind::LeftSymmetric, params)
}

/// Complete left-symmetric structures on the Euclidean algebra:
/// e1.e2 = e3, e1.e3 = -e2, e2.e2 = e3.e3 = eps e1. The conjugacy classes
/// are eps = 0 and eps != 0.
fn build_a3(map: &BTreeMap<String, Scalar>) -> Result<Algebra> {
    let eps = map["eps"].clone();
    let (ring, params) = ring_and_params(map);
    let mut t = Table::new(3);
    t.put(1, 2, &[(one(), 3)])
        .put(1, 3, &[(one().neg(), 2)])
        .put(2, 2, &[(eps.clone(), 1)])
        .put(3, 3, &[(eps, 1)]);
    t.finish("A3", ring, AlgebraKind::LeftSymmetric, params)
}

/// First family of complete left-symmetric structures on the Heisenberg
/// algebra: e1.e1 = p e3, e2.e2 = q e3, e1.e2 = (1/2) e3, e2.e1 = -(1/2) e3.
fn build_h3_lsa_a(map: &BTreeMap<String, Scalar>) -> Result<Algebra> {
    let p = map["p"].clone();
    let q = map["q"].clone();
    let (ring, params) = ring_and_params(map);
    let mut t = Table::new(3);
    t.put(1, 1, &[(p, 3)])
        .put(2, 2, &[(q, 3)])
        .put(1, 2, &[(half(), 3)])
        .put(2, 1, &[(half().neg(), 3)]);
    t.finish("H3-lsa-a", ring, AlgebraKind::LeftSymmetric, params)
}

/// Second family of complete left-symmetric structures on the Heisenberg
/// algebra: e1.e2 = m e3, e2.e1 = (m-1) e3, e2.e2 = e1.
fn build_h3_lsa_b(map: &BTreeMap<String, Scalar>) -> Result<Algebra> {
    let m = map["m"].clone();
    let (ring, params) = ring_and_params(map);
    let m_minus_1 = m.sub(&one());
    let mut t = Table::new(3);
    t.put(1, 2, &[(m, 3)]).put(2, 1, &[(m_minus_1, 3)]).put(2, 2, &[(one(), 1)]);
    t.finish("H3-lsa-b", ring, AlgebraKind::LeftSymmetric, params)
}

/// The unique two-dimensional complex simple left-symmetric algebra:
/// e1.e1 = 2 e1, e1.e2 = e2, e2.e2 = e1. Not complete.
fn build_b2_complex(_: &BTreeMap<String, Scalar>) -> Result<Algebra> {
    let mut t = Table::new(2);
    t.put(1, 1, &[(Scalar::int(2), 1)]).put(1, 2, &[(one(), 2)]).put(2, 2, &[(one(), 1)]);
    let a = Algebra::bilinear("B2^C", 2, RingTag::Gaussian, t.tensor, vec![])?;
    a.certify(AlgebraKind::LeftSymmetric)
}

/// The four-dimensional complex simple complete left-symmetric algebra:
/// e1.e2 = e2.e1 = e4, e2.e3 = 2e1, e3.e2 = e4.e1 = e1, e4.e2 = -e2,
/// e4.e3 = 2e3.
fn build_b4_complex(_: &BTreeMap<String, Scalar>) -> Result<Algebra> {
    let mut t = Table::new(4);
    t.put(1, 2, &[(one(), 4)])
        .put(2, 1, &[(one(), 4)])
        .put(2, 3, &[(Scalar::int(2), 1)])
        .put(3, 2, &[(one(), 1)])
        .put(4, 1, &[(one(), 1)])
        .put(4, 2, &[(one().neg(), 2)])
        .put(4, 3, &[(Scalar::int(2), 3)]);
    let a = Algebra::bilinear("B4^C", 4, RingTag::Gaussian, t.tensor, vec![])?;
    a.certify(AlgebraKind::LeftSymmetric)
}

/// The complex Lie algebra associated to B4^C; its center is trivial, which
/// separates it from the complexified oscillator algebra.
fn build_g4_complex(map: &BTreeMap<String, Scalar>) -> Result<Algebra> {
    let mut a = build_b4_complex(map)?.associated_lie()?;
    a.name = "G4^C".into();
    Ok(a)
}

// ---------------------------------------------------------------------------
// the catalog

pub fn entries() -> &'static [CatalogEntry] {
    static ENTRIES: std::sync::OnceLock<Vec<CatalogEntry>> = std::sync::OnceLock::new();
    ENTRIES.get_or_init(|| {
        vec![
            CatalogEntry {
                name: "i0",
                aliases: &["I0"],
                params: &[],
                kind: AlgebraKind::LeftSymmetric,
                description: "trivial one-dimensional left-symmetric algebra",
                default_spec: &[],
                expected: Expected {
                    complete: Some(true),
                    novikov: Some(true),
                    center_dim: Some(1),
                    derived_dims: Some(vec![1, 0]),
                    solvable: Some(true),
                    nilpotent: Some(true),
                },
                builder: build_i0,
            },
            CatalogEntry {
                name: "h3",
                aliases: &["H3", "heisenberg"],
                params: &[],
                kind: AlgebraKind::Lie,
                description: "Heisenberg Lie algebra, [e1,e2] = e3",
                default_spec: &[],
                expected: Expected {
                    complete: None,
                    novikov: None,
                    center_dim: Some(1),
                    derived_dims: Some(vec![3, 1, 0]),
                    solvable: Some(true),
                    nilpotent: Some(true),
                },
                builder: build_h3,
            },
            CatalogEntry {
                name: "e2",
                aliases: &["E2", "euclidean"],
                params: &[],
                kind: AlgebraKind::Lie,
                description: "Lie algebra of Euclidean plane motions",
                default_spec: &[],
                expected: Expected {
                    complete: None,
                    novikov: None,
                    center_dim: Some(0),
                    derived_dims: Some(vec![3, 2, 0]),
                    solvable: Some(true),
                    nilpotent: Some(false),
                },
                builder: build_e2,
            },
            CatalogEntry {
                name: "o4",
                aliases: &["O4"],
                params: &[],
                kind: AlgebraKind::Lie,
                description: "oscillator Lie algebra in its defining basis",
                default_spec: &[],
                expected: Expected {
                    complete: None,
                    novikov: None,
                    center_dim: Some(1),
                    derived_dims: Some(vec![4, 3, 1, 0]),
                    solvable: Some(true),
                    nilpotent: Some(false),
                },
                builder: build_o4,
            },
            CatalogEntry {
                name: "o4-adapted",
                aliases: &["O4-adapted"],
                params: &[],
                kind: AlgebraKind::Lie,
                description: "oscillator algebra in the basis adapted to its complete LSA family",
                default_spec: &[],
                expected: Expected {
                    complete: None,
                    novikov: None,
                    center_dim: Some(1),
                    derived_dims: Some(vec![4, 3, 1, 0]),
                    solvable: Some(true),
                    nilpotent: Some(false),
                },
                builder: build_o4_adapted,
            },
            CatalogEntry {
                name: "oscillator",
                aliases: &["OscillatorLie"],
                params: &["lambda"],
                kind: AlgebraKind::Lie,
                description: "oscillator family, [e4,e1] = lambda e2, [e4,e2] = -lambda e1",
                default_spec: &[("lambda", 1, 1)],
                expected: Expected {
                    complete: None,
                    novikov: None,
                    center_dim: Some(1),
                    derived_dims: Some(vec![4, 3, 1, 0]),
                    solvable: Some(true),
                    nilpotent: Some(false),
                },
                builder: build_oscillator,
            },
            CatalogEntry {
                name: "a4",
                aliases: &["A4"],
                params: &["s", "t"],
                kind: AlgebraKind::LeftSymmetric,
                description: "two-parameter complete LSA family on the oscillator algebra",
                default_spec: &[("s", 1, 1), ("t", 1, 1)],
                expected: Expected {
                    complete: Some(true),
                    novikov: Some(false), // Novikov exactly when t = 0
                    center_dim: Some(1),
                    derived_dims: Some(vec![4, 3, 1, 0]),
                    solvable: Some(true),
                    nilpotent: Some(false),
                },
                builder: build_a4,
            },
            CatalogEntry {
                name: "b4",
                aliases: &["B4"],
                params: &[],
                kind: AlgebraKind::LeftSymmetric,
                description: "isolated complete LSA on the oscillator algebra",
                default_spec: &[],
                expected: Expected {
                    complete: Some(true),
                    novikov: Some(false),
                    center_dim: Some(1),
                    derived_dims: Some(vec![4, 3, 1, 0]),
                    solvable: Some(true),
                    nilpotent: Some(false),
                },
                builder: build_b4,
            },
            CatalogEntry {
                name: "a4abc",
                aliases: &["A4abc"],
                params: &["alpha", "beta", "gamma"],
                kind: AlgebraKind::LeftSymmetric,
                description: "pre-normalization central-extension family on the oscillator algebra",
                default_spec: &[("alpha", 2, 1), ("beta", 4, 1), ("gamma", 2, 1)],
                expected: Expected {
                    complete: Some(true),
                    novikov: None,
                    center_dim: Some(1),
                    derived_dims: Some(vec![4, 3, 1, 0]),
                    solvable: Some(true),
                    nilpotent: Some(false),
                },
                builder: build_a4abc,
            },
            CatalogEntry {
                name: "a3",
                aliases: &["A3"],
                params: &["eps"],
                kind: AlgebraKind::LeftSymmetric,
                description: "complete LSA structures on the Euclidean algebra (eps = 0 or 1)",
                default_spec: &[("eps", 0, 1)],
                expected: Expected {
                    complete: Some(true),
                    novikov: None,
                    center_dim: Some(0),
                    derived_dims: Some(vec![3, 2, 0]),
                    solvable: Some(true),
                    nilpotent: Some(false),
                },
                builder: build_a3,
            },
            CatalogEntry {
                name: "h3-lsa-a",
                aliases: &["H3-lsa-a"],
                params: &["p", "q"],
                kind: AlgebraKind::LeftSymmetric,
                description: "complete LSA family on the Heisenberg algebra (skew pair)",
                default_spec: &[("p", 0, 1), ("q", 0, 1)],
                expected: Expected {
                    complete: Some(true),
                    novikov: Some(true),
                    center_dim: Some(1),
                    derived_dims: Some(vec![3, 1, 0]),
                    solvable: Some(true),
                    nilpotent: Some(true),
                },
                builder: build_h3_lsa_a,
            },
            CatalogEntry {
                name: "h3-lsa-b",
                aliases: &["H3-lsa-b"],
                params: &["m"],
                kind: AlgebraKind::LeftSymmetric,
                description: "complete LSA family on the Heisenberg algebra (with e2.e2 = e1)",
                default_spec: &[("m", 1, 1)],
                expected: Expected {
                    complete: Some(true),
                    novikov: Some(true),
                    center_dim: Some(1),
                    derived_dims: Some(vec![3, 1, 0]),
                    solvable: Some(true),
                    nilpotent: Some(true),
                },
                builder: build_h3_lsa_b,
            },
            CatalogEntry {
                name: "b2-complex",
                aliases: &["B2", "B2^C"],
                params: &[],
                kind: AlgebraKind::LeftSymmetric,
                description: "the two-dimensional complex simple LSA; not complete",
                default_spec: &[],
                expected: Expected {
                    complete: Some(false),
                    novikov: None,
                    center_dim: None,
                    derived_dims: None,
                    solvable: None,
                    nilpotent: None,
                },
                builder: build_b2_complex,
            },
            CatalogEntry {
                name: "b4-complex",
                aliases: &["B4^C"],
                params: &[],
                kind: AlgebraKind::LeftSymmetric,
                description: "the four-dimensional complex simple complete LSA",
                default_spec: &[],
                expected: Expected {
                    complete: Some(true),
                    novikov: None,
                    center_dim: None,
                    derived_dims: None,
                    solvable: None,
                    nilpotent: None,
                },
                builder: build_b4_complex,
            },
            CatalogEntry {
                name: "g4-complex",
                aliases: &["G4^C"],
                params: &[],
                kind: AlgebraKind::Lie,
                description: "complex Lie algebra associated to B4^C; trivial center",
                default_spec: &[],
                expected: Expected {
                    complete: None,
                    novikov: None,
                    center_dim: Some(0),
                    derived_dims: None,
                    solvable: Some(true),
                    nilpotent: None,
                },
                builder: build_g4_complex,
            },
        ]
    })
}

pub fn find(name: &str) -> Option<&'static CatalogEntry> {
    let lower = name.to_lowercase();
    entries()
        .iter()
        .find(|e| e.name == lower || e.aliases.iter().any(|a| a.eq_ignore_ascii_case(name)))
}

/// Build a catalog algebra by name. Parameters omitted from `bindings` stay
/// symbolic; identities are certified during construction.
pub fn named_algebra(name: &str, bindings: &ParamBindings) -> Result<Algebra> {
    let entry = find(name).ok_or_else(|| Error::UnknownCatalogName(name.to_string()))?;
    entry.build(bindings)
}

/// The verified relabeling between the two oscillator bases:
/// e4 -> e1, e1 -> e2, e2 -> e3, e3 -> e4 maps the defining-basis brackets
/// onto the adapted-basis brackets.
pub fn o4_basis_change() -> ExactMatrix {
    // columns are images of the defining-basis vectors
    let rows = vec![
        vec![Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::one()],
        vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::zero()],
        vec![Scalar::zero(), Scalar::one(), Scalar::zero(), Scalar::zero()],
        vec![Scalar::zero(), Scalar::zero(), Scalar::one(), Scalar::zero()],
    ];
    ExactMatrix::from_rows(rows).unwrap()
}

pub fn bindings(pairs: &[(&str, Rat)]) -> ParamBindings {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_morphism, Side};
    use lsa_exact::rint;

    #[test]
    fn every_entry_builds_and_certifies_symbolically() {
        for e in entries() {
            let a = e.build(&ParamBindings::new())
                .unwrap_or_else(|err| panic!("{} failed: {err}", e.name));
            assert_eq!(a.kind(), e.kind, "{}", e.name);
        }
    }

    #[test]
    fn a4_products_match_the_table() {
        let a = named_algebra("A4", &bindings(&[("s", rint(1)), ("t", rat(1, 2))])).unwrap();
        // e2.e3 = 1/2 e4 and e2.e2 = t e4 = 1/2 e4
        let p23 = a.multiply(&a.basis_element(1), &a.basis_element(2)).unwrap();
        assert_eq!(p23[3], Scalar::Rat(rat(1, 2)));
        let p22 = a.multiply(&a.basis_element(1), &a.basis_element(1)).unwrap();
        assert_eq!(p22[3], Scalar::Rat(rat(1, 2)));
    }

    #[test]
    fn b4_products_match_the_table() {
        let b4 = named_algebra("B4", &ParamBindings::new()).unwrap();
        let p22 = b4.multiply(&b4.basis_element(1), &b4.basis_element(1)).unwrap();
        assert_eq!(p22, b4.basis_element(0));
        let p33 = b4.multiply(&b4.basis_element(2), &b4.basis_element(2)).unwrap();
        assert_eq!(p33, b4.basis_element(0));
    }

    #[test]
    fn multiply_by_zero_is_zero() {
        let a = named_algebra("A4", &bindings(&[("s", rint(1)), ("t", rint(1))])).unwrap();
        let z = a.zero_element();
        let y = a.element_from_rats(&[rint(1), rint(2), rint(3), rint(4)]);
        assert_eq!(a.multiply(&z, &y).unwrap(), a.zero_element());
    }

    #[test]
    fn oscillator_lambda_scales_the_bracket() {
        let g = named_algebra("OscillatorLie", &bindings(&[("lambda", rint(2))])).unwrap();
        let br = g.multiply(&g.basis_element(3), &g.basis_element(0)).unwrap();
        assert_eq!(br[1], Scalar::int(2));
    }

    #[test]
    fn unknown_name_and_bad_param_fail() {
        assert!(matches!(
            named_algebra("nope", &ParamBindings::new()),
            Err(Error::UnknownCatalogName(_))
        ));
        assert!(named_algebra("A4", &bindings(&[("zz", rint(1))])).is_err());
    }

    #[test]
    fn o4_bases_are_isomorphic_via_the_stored_relabeling() {
        let intro = named_algebra("o4", &ParamBindings::new()).unwrap();
        let adapted = named_algebra("o4-adapted", &ParamBindings::new()).unwrap();
        let phi = o4_basis_change();
        let verdict = check_morphism(&phi, &intro, &adapted, true).unwrap();
        assert!(verdict.holds(true));
    }

    #[test]
    fn a4_specialization_commutes_with_construction() {
        let sym = named_algebra("A4", &ParamBindings::new()).unwrap();
        let mut sub = BTreeMap::new();
        sub.insert("s".to_string(), Scalar::Rat(rat(2, 3)));
        sub.insert("t".to_string(), Scalar::Rat(rat(-1, 2)));
        let specialized = sym.substitute_params(&sub).unwrap();
        let direct = named_algebra("A4", &bindings(&[("s", rat(2, 3)), ("t", rat(-1, 2))])).unwrap();
        assert_eq!(specialized.tensor(), direct.tensor());
    }

    #[test]
    fn specialization_commutes_for_every_parametric_entry() {
        for e in entries() {
            if e.params.is_empty() {
                continue;
            }
            let symbolic = e.build(&ParamBindings::new()).unwrap();
            let mut values = ParamBindings::new();
            let mut subst = BTreeMap::new();
            for (i, p) in e.params.iter().enumerate() {
                let v = rat(i as i64 + 2, 3);
                values.insert(p.to_string(), v.clone());
                subst.insert(p.to_string(), Scalar::Rat(v));
            }
            let specialized_after = symbolic.substitute_params(&subst).unwrap();
            let built_directly = e.build(&values).unwrap();
            assert_eq!(specialized_after.tensor(), built_directly.tensor(), "{}", e.name);
        }
    }

    #[test]
    fn left_operator_by_e4_vanishes_on_a4() {
        let a = named_algebra("A4", &ParamBindings::new()).unwrap();
        let l = a.operator_matrix(Side::Left, &a.basis_element(3)).unwrap();
        assert!(l.is_zero());
    }
}
