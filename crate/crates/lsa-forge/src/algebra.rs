//! Structure-constant algebras and the per-algebra analyses: identity
//! certification, associated Lie algebra, multiplication operators,
//! completeness, ideals, centers, derivations, Lie invariants,
//! complexification, and morphism checking.

use crate::{Error, Result};
use lsa_exact::{ExactMatrix, Rat, RingTag, Scalar, Subspace};
use num::{One, Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// An element of an algebra, as exact coordinates in the chosen basis.
pub type Element = Vec<Scalar>;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum AlgebraKind {
    /// Certified left-symmetric: (x,y,z) = (y,x,z) holds symbolically.
    LeftSymmetric,
    /// Certified Lie: antisymmetry and Jacobi hold symbolically.
    Lie,
    /// No identity certified; a raw bilinear product.
    Bilinear,
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraKind::LeftSymmetric => write!(f, "lsa"),
            AlgebraKind::Lie => write!(f, "lie"),
            AlgebraKind::Bilinear => write!(f, "bilinear"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

/// A finite-dimensional algebra as a structure-constant tensor:
/// `e_i . e_j = sum_k c[i][j][k] e_k` (for Lie kind, the bracket).
#[derive(Clone, PartialEq)]
pub struct Algebra {
    pub name: String,
    dim: usize,
    ring: RingTag,
    kind: AlgebraKind,
    tensor: Vec<Scalar>, // flattened c[i][j][k], dim^3
    pub basis_names: Vec<String>,
    pub params: Vec<String>,
}

/// Outcome of a symbolic identity check, with a counterexample on failure.
#[derive(Clone, Debug, PartialEq)]
pub enum IdentityVerdict {
    Pass,
    Counterexample {
        triple: (usize, usize, usize),
        lhs: Element,
        rhs: Element,
    },
}

impl IdentityVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, IdentityVerdict::Pass)
    }
}

/// Completeness verdict; the witness is an element whose right-multiplication
/// operator has a nonzero power trace, together with those traces.
#[derive(Clone, Debug)]
pub struct CompletenessVerdict {
    pub complete: bool,
    pub witness: Option<(Element, Vec<Scalar>)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LieInvariants {
    pub derived_dims: Vec<usize>,
    pub lower_central_dims: Vec<usize>,
    pub center_dim: usize,
    pub solvable: bool,
    pub nilpotent: bool,
}

/// Result of scanning a Lie algebra for ideals of dimension 1 and
/// codimension 1. Each entry of `line_families` is a subspace in which every
/// line is a one-dimensional ideal (rational joint eigenlines of the adjoint
/// operators); `hyperplanes` enumerates codimension-1 ideals when the derived
/// algebra has codimension at most 1, otherwise every hyperplane containing
/// `derived` is an ideal and only the family is described.
#[derive(Clone, Debug)]
pub struct SmallIdealScan {
    pub line_families: Vec<Subspace>,
    pub derived: Subspace,
    pub hyperplanes: Vec<Subspace>,
    pub hyperplane_family_is_infinite: bool,
}

impl SmallIdealScan {
    /// Concrete one-dimensional ideals (families of dimension one).
    pub fn isolated_lines(&self) -> Vec<&Subspace> {
        self.line_families.iter().filter(|s| s.dim() == 1).collect()
    }
}

#[derive(Clone, Debug)]
pub struct MorphismVerdict {
    pub is_morphism: bool,
    pub invertible: Option<bool>,
    pub failures: Vec<(usize, usize)>,
}

impl MorphismVerdict {
    pub fn holds(&self, require_iso: bool) -> bool {
        self.is_morphism && (!require_iso || self.invertible == Some(true))
    }
}

impl Algebra {
    /// Build without certifying any identity.
    pub fn bilinear(
        name: &str,
        dim: usize,
        ring: RingTag,
        tensor: Vec<Scalar>,
        params: Vec<String>,
    ) -> Result<Self> {
        if tensor.len() != dim * dim * dim {
            return Err(Error::Exact(lsa_exact::Error::DimensionMismatch(format!(
                "tensor length {} for dimension {dim}",
                tensor.len()
            ))));
        }
        let tensor = tensor
            .into_iter()
            .map(|s| s.coerce(ring).map_err(Error::from))
            .collect::<Result<Vec<_>>>()?;
        Ok(Algebra {
            name: name.to_string(),
            dim,
            ring,
            kind: AlgebraKind::Bilinear,
            tensor,
            basis_names: (1..=dim).map(|i| format!("e{i}")).collect(),
            params,
        })
    }

    /// Certify the identity belonging to `kind` and tag the algebra with it.
    /// Fails loudly with the first counterexample triple.
    pub fn certify(mut self, kind: AlgebraKind) -> Result<Self> {
        match kind {
            AlgebraKind::Bilinear => {}
            AlgebraKind::LeftSymmetric => {
                if let IdentityVerdict::Counterexample { triple, .. } = self.check_left_symmetric()
                {
                    return Err(Error::IdentityCheckFailed(format!(
                        "{}: left-symmetry fails at basis triple {:?}",
                        self.name, triple
                    )));
                }
            }
            AlgebraKind::Lie => {
                if let IdentityVerdict::Counterexample { triple, .. } = self.check_antisymmetry() {
                    return Err(Error::IdentityCheckFailed(format!(
                        "{}: antisymmetry fails at basis pair ({}, {})",
                        self.name, triple.0, triple.1
                    )));
                }
                if let IdentityVerdict::Counterexample { triple, .. } = self.check_jacobi() {
                    return Err(Error::IdentityCheckFailed(format!(
                        "{}: Jacobi fails at basis triple {:?}",
                        self.name, triple
                    )));
                }
            }
        }
        self.kind = kind;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ring(&self) -> RingTag {
        self.ring
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.tensor[(i * self.dim + j) * self.dim + k]
    }

    pub fn tensor(&self) -> &[Scalar] {
        &self.tensor
    }

    pub fn zero_element(&self) -> Element {
        vec![Scalar::zero(); self.dim]
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut v = self.zero_element();
        v[i] = Scalar::one();
        v
    }

    pub fn element_from_rats(&self, coords: &[Rat]) -> Element {
        coords.iter().map(|r| Scalar::Rat(r.clone())).collect()
    }

    /// Product of two basis vectors as an element.
    pub fn basis_product(&self, i: usize, j: usize) -> Element {
        (0..self.dim).map(|k| self.c(i, j, k).clone()).collect()
    }

    /// Bilinear expansion of x . y through the structure tensor.
    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::Exact(lsa_exact::Error::DimensionMismatch(format!(
                "elements of length {}, {} in dimension {}",
                x.len(),
                y.len(),
                self.dim
            ))));
        }
        let mut out = self.zero_element();
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let xy = x[i].mul(&y[j]);
                for k in 0..self.dim {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        out[k] = out[k].add(&xy.mul(c));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element> {
        let xy = self.multiply(x, y)?;
        let yx = self.multiply(y, x)?;
        Ok(sub_elements(&xy, &yx))
    }

    /// Left or right multiplication operator by x; column j is x.e_j (left)
    /// or e_j.x (right).
    pub fn operator_matrix(&self, side: Side, x: &Element) -> Result<ExactMatrix> {
        let mut cols = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            let ej = self.basis_element(j);
            let col = match side {
                Side::Left => self.multiply(x, &ej)?,
                Side::Right => self.multiply(&ej, x)?,
            };
            cols.push(col);
        }
        let mut ring = self.ring;
        for col in &cols {
            for s in col {
                ring = ring.join(s.ring()).map_err(Error::from)?;
            }
        }
        ExactMatrix::from_fn(self.dim, self.dim, ring, |i, j| cols[j][i].clone())
            .map_err(Error::from)
    }

    /// The left-symmetry identity (x,y,z) = (y,x,z) on all basis triples,
    /// i.e. (e_i e_j) e_k - e_i (e_j e_k) = (e_j e_i) e_k - e_j (e_i e_k)
    /// as an exact (possibly polynomial) identity.
    pub fn check_left_symmetric(&self) -> IdentityVerdict {
        for i in 0..self.dim {
            for j in 0..i {
                // the identity is symmetric in (i, j) and trivial for i = j
                for k in 0..self.dim {
                    let lhs = self.associator(i, j, k);
                    let rhs = self.associator(j, i, k);
                    if lhs != rhs {
                        return IdentityVerdict::Counterexample { triple: (i, j, k), lhs, rhs };
                    }
                }
            }
        }
        IdentityVerdict::Pass
    }

    fn associator(&self, i: usize, j: usize, k: usize) -> Element {
        let ij = self.basis_product(i, j);
        let jk = self.basis_product(j, k);
        let left = self.multiply(&ij, &self.basis_element(k)).unwrap();
        let right = self.multiply(&self.basis_element(i), &jk).unwrap();
        sub_elements(&left, &right)
    }

    /// The Novikov condition (x.y).z = (x.z).y on all basis triples.
    pub fn check_novikov(&self) -> IdentityVerdict {
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..j {
                    let lhs = self
                        .multiply(&self.basis_product(i, j), &self.basis_element(k))
                        .unwrap();
                    let rhs = self
                        .multiply(&self.basis_product(i, k), &self.basis_element(j))
                        .unwrap();
                    if lhs != rhs {
                        return IdentityVerdict::Counterexample { triple: (i, j, k), lhs, rhs };
                    }
                }
            }
        }
        IdentityVerdict::Pass
    }

    pub fn check_antisymmetry(&self) -> IdentityVerdict {
        for i in 0..self.dim {
            for j in 0..=i {
                let ij = self.basis_product(i, j);
                let ji = self.basis_product(j, i);
                let sum = add_elements(&ij, &ji);
                if sum.iter().any(|s| !s.is_zero()) {
                    return IdentityVerdict::Counterexample { triple: (i, j, 0), lhs: ij, rhs: ji };
                }
            }
        }
        IdentityVerdict::Pass
    }

    /// Jacobi identity for the tensor taken as a bracket.
    pub fn check_jacobi(&self) -> IdentityVerdict {
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let a = self
                        .multiply(&self.basis_product(i, j), &self.basis_element(k))
                        .unwrap();
                    let b = self
                        .multiply(&self.basis_product(j, k), &self.basis_element(i))
                        .unwrap();
                    let c = self
                        .multiply(&self.basis_product(k, i), &self.basis_element(j))
                        .unwrap();
                    let sum = add_elements(&add_elements(&a, &b), &c);
                    if sum.iter().any(|s| !s.is_zero()) {
                        return IdentityVerdict::Counterexample {
                            triple: (i, j, k),
                            lhs: sum,
                            rhs: self.zero_element(),
                        };
                    }
                }
            }
        }
        IdentityVerdict::Pass
    }

    /// The associated Lie algebra of a certified LSA: bracket tensor
    /// c[i][j][.] - c[j][i][.]; the result is certified (Jacobi holds).
    pub fn associated_lie(&self) -> Result<Algebra> {
        if self.kind != AlgebraKind::LeftSymmetric {
            return Err(Error::Precondition(format!(
                "{}: associated_lie requires a certified left-symmetric algebra",
                self.name
            )));
        }
        let mut tensor = Vec::with_capacity(self.dim * self.dim * self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    tensor.push(self.c(i, j, k).sub(self.c(j, i, k)));
                }
            }
        }
        let mut lie = Algebra::bilinear(
            &format!("lie({})", self.name),
            self.dim,
            self.ring,
            tensor,
            self.params.clone(),
        )?;
        lie.basis_names = self.basis_names.clone();
        lie.certify(AlgebraKind::Lie)
    }

    /// Fresh generic-element variable names xi1..xin, avoiding collisions
    /// with declared parameters.
    fn generic_vars(&self) -> Vec<String> {
        (1..=self.dim)
            .map(|i| {
                let mut name = format!("xi{i}");
                while self.params.contains(&name) {
                    name.push('_');
                }
                name
            })
            .collect()
    }

    /// The algebra with the same constants over the polynomial ring (used to
    /// pair rational tensors with symbolic elements).
    pub fn over_poly(&self) -> Result<Algebra> {
        let tensor = self
            .tensor
            .iter()
            .map(|s| s.coerce(RingTag::Poly).map_err(Error::from))
            .collect::<Result<Vec<_>>>()?;
        let mut a =
            Algebra::bilinear(&self.name, self.dim, RingTag::Poly, tensor, self.params.clone())?;
        a.kind = self.kind;
        a.basis_names = self.basis_names.clone();
        Ok(a)
    }

    /// Completeness: every right multiplication R_x is nilpotent. Decided by
    /// the vanishing of all power traces of the generic right-multiplication
    /// operator, with fresh symbolic coordinates standing in for "for all x".
    /// Gaussian algebras are decided through their realification, which has
    /// the same right-multiplication operators viewed over the reals.
    pub fn is_complete(&self) -> Result<CompletenessVerdict> {
        if self.kind != AlgebraKind::LeftSymmetric {
            return Err(Error::Precondition(format!(
                "{}: completeness is defined for certified left-symmetric algebras",
                self.name
            )));
        }
        match self.ring {
            RingTag::Gaussian => {
                let real = self.realify()?;
                let verdict = real.is_complete()?;
                if verdict.complete {
                    return Ok(CompletenessVerdict { complete: true, witness: None });
                }
                // map the real witness (a_1..a_n, b_1..b_n) back to complex
                // coordinates a_j + i b_j and recompute its traces here
                let (real_witness, _) = verdict.witness.expect("incomplete needs witness");
                let n = self.dim;
                let witness: Element = (0..n)
                    .map(|j| {
                        let re = real_witness[j].as_rat().unwrap_or_else(Rat::zero);
                        let im = real_witness[n + j].as_rat().unwrap_or_else(Rat::zero);
                        Scalar::Gauss(lsa_exact::GaussRat::new(re, im))
                    })
                    .collect();
                let traces = self
                    .operator_matrix(Side::Right, &witness)?
                    .power_traces(self.dim)
                    .map_err(Error::from)?;
                Ok(CompletenessVerdict { complete: false, witness: Some((witness, traces)) })
            }
            RingTag::Rational | RingTag::Poly => {
                let sym = self.over_poly()?;
                let vars = self.generic_vars();
                let x: Element = vars.iter().map(|v| Scalar::var(v)).collect();
                let rx = sym.operator_matrix(Side::Right, &x)?;
                let traces = rx.power_traces(self.dim).map_err(Error::from)?;
                if traces.iter().all(|t| t.is_zero()) {
                    return Ok(CompletenessVerdict { complete: true, witness: None });
                }
                if self.ring == RingTag::Poly {
                    // symbolic witness: the generic element itself, with the
                    // nonvanishing symbolic traces
                    return Ok(CompletenessVerdict { complete: false, witness: Some((x, traces)) });
                }
                let witness = self.incompleteness_witness(&vars, &traces)?;
                Ok(CompletenessVerdict { complete: false, witness: Some(witness) })
            }
        }
    }

    /// Find a concrete point where some power trace is nonzero. Basis vectors
    /// are tried first, then a small integer grid; a nonzero polynomial of
    /// bounded degree cannot vanish on a wide enough grid.
    fn incompleteness_witness(
        &self,
        vars: &[String],
        traces: &[Scalar],
    ) -> Result<(Element, Vec<Scalar>)> {
        let nonzero = traces.iter().find(|t| !t.is_zero()).unwrap();
        let degree = match nonzero {
            Scalar::Poly(p) => p.degree() as i64,
            _ => 0,
        };
        let try_point = |coords: Vec<Rat>| -> Result<Option<(Element, Vec<Scalar>)>> {
            let subst: BTreeMap<String, Scalar> = vars
                .iter()
                .cloned()
                .zip(coords.iter().map(|r| Scalar::Rat(r.clone())))
                .collect();
            let specialized = traces
                .iter()
                .map(|t| t.substitute(&subst))
                .collect::<lsa_exact::Result<Vec<_>>>()
                .map_err(Error::from)?;
            if specialized.iter().all(|t| t.is_zero()) {
                return Ok(None);
            }
            let x: Element = coords.into_iter().map(Scalar::Rat).collect();
            let actual = self
                .operator_matrix(Side::Right, &x)?
                .power_traces(self.dim)
                .map_err(Error::from)?;
            Ok(Some((x, actual)))
        };
        for i in 0..self.dim {
            let mut coords = vec![Rat::zero(); self.dim];
            coords[i] = Rat::one();
            if let Some(found) = try_point(coords)? {
                return Ok(found);
            }
        }
        // grid walk with values 0, ±1, ±2, ..., wide enough for the degree
        let radius = (degree / 2 + 2).max(2);
        let values: Vec<Rat> = (0..=radius)
            .flat_map(|v| {
                if v == 0 {
                    vec![Rat::zero()]
                } else {
                    vec![Rat::from(num::BigInt::from(v)), Rat::from(num::BigInt::from(-v))]
                }
            })
            .collect();
        let mut idx = vec![0usize; self.dim];
        loop {
            let coords: Vec<Rat> = idx.iter().map(|&i| values[i].clone()).collect();
            if let Some(found) = try_point(coords)? {
                return Ok(found);
            }
            let mut carry = true;
            for slot in idx.iter_mut() {
                *slot += 1;
                if *slot == values.len() {
                    *slot = 0;
                } else {
                    carry = false;
                    break;
                }
            }
            if carry {
                return Err(Error::Precondition(
                    "no rational incompleteness witness found on the search grid".into(),
                ));
            }
        }
    }

    /// The translation ideal T(A) = { x : L_x = 0 }, verified two-sided.
    pub fn translation_ideal(&self) -> Result<Subspace> {
        self.require_field("translation_ideal")?;
        // rows indexed by (j, k): sum_i x_i c[i][j][k] = 0
        let m = ExactMatrix::from_fn(self.dim * self.dim, self.dim, self.ring, |row, i| {
            let j = row / self.dim;
            let k = row % self.dim;
            self.c(i, j, k).clone()
        })?;
        let t = m.kernel()?;
        debug_assert!(matches!(self.is_two_sided_ideal(&t), Ok(true)));
        Ok(t)
    }

    /// The center C(A) = { x : x.y = y.x = 0 for all y }, cross-checked
    /// against T(A) intersected with the Lie center of the associated Lie
    /// algebra.
    pub fn lsa_center(&self) -> Result<Subspace> {
        self.require_field("lsa_center")?;
        let m = ExactMatrix::from_fn(2 * self.dim * self.dim, self.dim, self.ring, |row, i| {
            let side = row / (self.dim * self.dim);
            let j = (row / self.dim) % self.dim;
            let k = row % self.dim;
            if side == 0 {
                self.c(i, j, k).clone() // x . e_j
            } else {
                self.c(j, i, k).clone() // e_j . x
            }
        })?;
        let center = m.kernel()?;
        if self.kind == AlgebraKind::LeftSymmetric {
            let t = self.translation_ideal()?;
            let z = self.associated_lie()?.lie_center()?;
            debug_assert!(t.intersect(&z).map(|i| i == center).unwrap_or(false));
        }
        Ok(center)
    }

    /// Lie center { x : [x, y] = 0 for all y } of a Lie-kind algebra.
    pub fn lie_center(&self) -> Result<Subspace> {
        self.require_field("lie_center")?;
        let m = ExactMatrix::from_fn(self.dim * self.dim, self.dim, self.ring, |row, i| {
            let j = row / self.dim;
            let k = row % self.dim;
            self.c(i, j, k).clone()
        })?;
        m.kernel().map_err(Error::from)
    }

    /// Smallest subspace containing v that is closed under all left and right
    /// multiplications by basis vectors; a two-sided ideal by construction.
    pub fn ideal_closure(&self, v: &Element) -> Result<Subspace> {
        self.require_field("ideal_closure")?;
        if v.iter().all(|s| s.is_zero()) {
            return Ok(Subspace::zero(self.dim, self.ring));
        }
        let mut space =
            Subspace::from_spanning(self.dim, self.ring, vec![v.clone()]).map_err(Error::from)?;
        loop {
            let mut new_vecs = Vec::new();
            for b in space.basis() {
                for i in 0..self.dim {
                    let ei = self.basis_element(i);
                    for w in [self.multiply(&ei, b)?, self.multiply(b, &ei)?] {
                        if !space.contains(&w) {
                            new_vecs.push(w);
                        }
                    }
                }
            }
            if new_vecs.is_empty() {
                debug_assert!(matches!(self.is_two_sided_ideal(&space), Ok(true)));
                return Ok(space);
            }
            let mut vecs = space.basis().to_vec();
            vecs.extend(new_vecs);
            space = Subspace::from_spanning(self.dim, self.ring, vecs).map_err(Error::from)?;
        }
    }

    pub fn is_two_sided_ideal(&self, s: &Subspace) -> Result<bool> {
        for b in s.basis() {
            for i in 0..self.dim {
                let ei = self.basis_element(i);
                if !s.contains(&self.multiply(&ei, b)?) || !s.contains(&self.multiply(b, &ei)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// [g, s] contained in s, checked exactly.
    pub fn lie_ideal_check(&self, s: &Subspace) -> Result<bool> {
        for b in s.basis() {
            for i in 0..self.dim {
                let w = self.bracket(&self.basis_element(i), b)?;
                if !s.contains(&w) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Scan a Lie algebra for its 1-dimensional and codimension-1 ideals.
    ///
    /// One-dimensional ideals spanned by rational vectors are exactly the
    /// rational joint eigenlines of the adjoint operators; these are found by
    /// intersecting eigenspaces over the rational eigenvalues of each ad(e_i)
    /// (rational roots of exact characteristic polynomials). Codimension-1
    /// ideals are exactly the hyperplanes containing the derived algebra.
    /// Real-but-irrational eigenlines are outside this scan by design.
    pub fn small_ideal_scan(&self) -> Result<SmallIdealScan> {
        if self.kind != AlgebraKind::Lie {
            return Err(Error::Precondition("small_ideal_scan expects a Lie algebra".into()));
        }
        if self.dim > 6 {
            return Err(Error::Precondition(
                "small_ideal_scan is restricted to dimension <= 6".into(),
            ));
        }
        self.require_field("small_ideal_scan")?;
        let ops: Vec<ExactMatrix> = (0..self.dim)
            .map(|i| self.operator_matrix(Side::Left, &self.basis_element(i)))
            .collect::<Result<Vec<_>>>()?;
        let mut spaces = vec![Subspace::full(self.dim, self.ring)];
        for op in &ops {
            let eigs = rational_eigenvalues(op)?;
            let mut next = Vec::new();
            for s in &spaces {
                for mu in &eigs {
                    let shifted = op
                        .sub(
                            &ExactMatrix::identity(self.dim, op.ring())
                                .scale(mu)
                                .map_err(Error::from)?,
                        )
                        .map_err(Error::from)?;
                    let eig_space = shifted.kernel().map_err(Error::from)?;
                    let joint = s.intersect(&eig_space).map_err(Error::from)?;
                    if !joint.is_zero() {
                        next.push(joint);
                    }
                }
            }
            spaces = next;
        }
        spaces.dedup_by(|a, b| a == b);
        for s in &spaces {
            debug_assert!(s.dim() != 1 || matches!(self.lie_ideal_check(s), Ok(true)));
        }

        let derived = self.derived_subspace(&Subspace::full(self.dim, self.ring))?;
        let codim = self.dim - derived.dim();
        let (hyperplanes, infinite) = match codim {
            0 => (Vec::new(), false),
            1 => (vec![derived.clone()], false),
            _ => (Vec::new(), true),
        };
        Ok(SmallIdealScan {
            line_families: spaces,
            derived,
            hyperplanes,
            hyperplane_family_is_infinite: infinite,
        })
    }

    fn derived_subspace(&self, of: &Subspace) -> Result<Subspace> {
        let mut vecs = Vec::new();
        for a in of.basis() {
            for b in of.basis() {
                vecs.push(self.multiply(a, b)?);
            }
        }
        Subspace::from_spanning(self.dim, self.ring, vecs).map_err(Error::from)
    }

    /// Span of all products x.y (for Lie kind, all brackets).
    pub fn product_span(&self) -> Result<Subspace> {
        self.require_field("product_span")?;
        let mut vecs = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                vecs.push(self.basis_product(i, j));
            }
        }
        Subspace::from_spanning(self.dim, self.ring, vecs).map_err(Error::from)
    }

    /// Derived/lower-central series dimensions, center dimension, and the
    /// solvability/nilpotency flags they decide. An isomorphism invariant.
    pub fn lie_invariants(&self) -> Result<LieInvariants> {
        if self.kind != AlgebraKind::Lie {
            return Err(Error::Precondition("lie_invariants expects a Lie algebra".into()));
        }
        self.require_field("lie_invariants")?;
        let full = Subspace::full(self.dim, self.ring);
        let mut derived_dims = vec![self.dim];
        let mut cur = full.clone();
        while !cur.is_zero() {
            let next = self.derived_subspace(&cur)?;
            if next.dim() == cur.dim() {
                break;
            }
            derived_dims.push(next.dim());
            cur = next;
        }
        let solvable = *derived_dims.last().unwrap() == 0;

        let mut lower_central_dims = vec![self.dim];
        let mut cur = full.clone();
        while !cur.is_zero() {
            let mut vecs = Vec::new();
            for a in full.basis() {
                for b in cur.basis() {
                    vecs.push(self.multiply(a, b)?);
                }
            }
            let next = Subspace::from_spanning(self.dim, self.ring, vecs).map_err(Error::from)?;
            if next.dim() == cur.dim() {
                break;
            }
            lower_central_dims.push(next.dim());
            cur = next;
        }
        let nilpotent = *lower_central_dims.last().unwrap() == 0;
        let center_dim = self.lie_center()?.dim();
        Ok(LieInvariants { derived_dims, lower_central_dims, center_dim, solvable, nilpotent })
    }

    /// Exact kernel of the Leibniz constraints
    /// D(e_i . e_j) = D(e_i) . e_j + e_i . D(e_j), as a subspace of the
    /// dim^2-dimensional space of matrices (row-major flattening).
    pub fn derivations(&self) -> Result<Subspace> {
        self.require_field("derivations")?;
        let n = self.dim;
        // unknowns D[r][c] at flat index r*n + c
        let m = ExactMatrix::from_fn(n * n * n, n * n, self.ring, |row, unknown| {
            let i = row / (n * n);
            let j = (row / n) % n;
            let r = row % n;
            let dr = unknown / n;
            let dc = unknown % n;
            // coefficient of D[dr][dc] in
            //   sum_k c[i][j][k] D[r][k] - sum_m D[m][i] c[m][j][r]
            //   - sum_m D[m][j] c[i][m][r]
            let mut coeff = Scalar::zero();
            if dr == r {
                coeff = coeff.add(self.c(i, j, dc));
            }
            if dc == i {
                coeff = coeff.sub(self.c(dr, j, r));
            }
            if dc == j {
                coeff = coeff.sub(self.c(i, dr, r));
            }
            coeff
        })?;
        m.kernel().map_err(Error::from)
    }

    /// Unflatten a derivations-space vector into a matrix.
    pub fn derivation_matrix(&self, flat: &[Scalar]) -> Result<ExactMatrix> {
        let n = self.dim;
        ExactMatrix::from_fn(n, n, self.ring, |r, c| flat[r * n + c].clone()).map_err(Error::from)
    }

    /// Check the Leibniz rule for a candidate derivation on all basis pairs.
    pub fn is_derivation(&self, d: &ExactMatrix) -> Result<bool> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = d.mul_vec(&self.basis_product(i, j)).map_err(Error::from)?;
                let dei = d.col(i);
                let dej = d.col(j);
                let rhs = add_elements(
                    &self.multiply(&dei, &self.basis_element(j))?,
                    &self.multiply(&self.basis_element(i), &dej)?,
                );
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Same constants over the Gaussian rationals. The associated Lie algebra
    /// of the result has the same (real) structure constants.
    pub fn complexify(&self) -> Result<Algebra> {
        if self.ring != RingTag::Rational {
            return Err(Error::Precondition("complexify expects a rational algebra".into()));
        }
        let tensor = self
            .tensor
            .iter()
            .map(|s| s.coerce(RingTag::Gaussian).map_err(Error::from))
            .collect::<Result<Vec<_>>>()?;
        let mut a = Algebra::bilinear(
            &format!("{}^C", self.name),
            self.dim,
            RingTag::Gaussian,
            tensor,
            self.params.clone(),
        )?;
        a.basis_names = self.basis_names.clone();
        a.certify(self.kind)
    }

    /// Restriction of scalars: a Gaussian algebra of dimension n as a real
    /// algebra of dimension 2n on the basis e_1..e_n, i e_1..i e_n.
    pub fn realify(&self) -> Result<Algebra> {
        if self.ring != RingTag::Gaussian {
            return Err(Error::Precondition("realify expects a gaussian algebra".into()));
        }
        let n = self.dim;
        let dim = 2 * n;
        let mut tensor = vec![Scalar::zero(); dim * dim * dim];
        {
            let mut set = |i: usize, j: usize, k: usize, v: Scalar| {
                tensor[(i * dim + j) * dim + k] = v;
            };
            for i in 0..n {
                for j in 0..n {
                    let prod = self.basis_product(i, j);
                    for (k, s) in prod.iter().enumerate() {
                        let g = match s {
                            Scalar::Gauss(g) => g.clone(),
                            other => lsa_exact::GaussRat::from_rat(other.as_rat().unwrap()),
                        };
                        let p = Scalar::Rat(g.re.clone());
                        let q = Scalar::Rat(g.im.clone());
                        // e_i e_j = p e_k + q (i e_k)
                        set(i, j, k, p.clone());
                        set(i, j, n + k, q.clone());
                        // e_i (i e_j) = (i e_i) e_j = -q e_k + p (i e_k)
                        set(i, n + j, k, q.neg());
                        set(i, n + j, n + k, p.clone());
                        set(n + i, j, k, q.neg());
                        set(n + i, j, n + k, p.clone());
                        // (i e_i)(i e_j) = -(e_i e_j)
                        set(n + i, n + j, k, p.neg());
                        set(n + i, n + j, n + k, q.neg());
                    }
                }
            }
        }
        let mut a = Algebra::bilinear(
            &format!("{}^R", self.name),
            dim,
            RingTag::Rational,
            tensor,
            self.params.clone(),
        )?;
        a.kind = self.kind;
        Ok(a)
    }

    /// Specialize declared parameters to rationals (or other polynomials).
    pub fn substitute_params(&self, bindings: &BTreeMap<String, Scalar>) -> Result<Algebra> {
        let tensor = self
            .tensor
            .iter()
            .map(|s| s.substitute(bindings).map_err(Error::from))
            .collect::<Result<Vec<_>>>()?;
        let params: Vec<String> = self
            .params
            .iter()
            .filter(|p| !bindings.contains_key(*p))
            .cloned()
            .collect();
        let ring = if params.is_empty() {
            if tensor.iter().any(|s| s.ring() == RingTag::Gaussian) {
                RingTag::Gaussian
            } else {
                RingTag::Rational
            }
        } else {
            RingTag::Poly
        };
        let mut a = Algebra::bilinear(&self.name, self.dim, ring, tensor, params)?;
        a.basis_names = self.basis_names.clone();
        a.kind = self.kind;
        Ok(a)
    }

    fn require_field(&self, what: &str) -> Result<()> {
        if self.ring.is_field() {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "{what} needs specialized (field) coefficients; parameters {:?} are still symbolic",
                self.params
            )))
        }
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({}, dim {}, {} over {})", self.name, self.dim, self.kind, self.ring)
    }
}

pub fn add_elements(a: &Element, b: &Element) -> Element {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn sub_elements(a: &Element, b: &Element) -> Element {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn scale_element(c: &Scalar, a: &Element) -> Element {
    a.iter().map(|x| c.mul(x)).collect()
}

pub fn element_is_zero(a: &Element) -> bool {
    a.iter().all(|s| s.is_zero())
}

/// All rational eigenvalues of a square field matrix, by the rational-root
/// theorem on its exact characteristic polynomial.
fn rational_eigenvalues(m: &ExactMatrix) -> Result<Vec<Scalar>> {
    let coeffs = m.char_poly().map_err(Error::from)?;
    let rats: Option<Vec<Rat>> = coeffs.iter().map(|c| c.as_rat()).collect();
    let Some(rats) = rats else {
        // gaussian entries with non-real characteristic coefficients:
        // fall back to a direct determinant test over a small candidate set
        return rational_eigenvalues_by_det(m);
    };
    let mut denom_lcm = num::BigInt::one();
    for r in &rats {
        denom_lcm = num::Integer::lcm(&denom_lcm, r.denom());
    }
    let ints: Vec<num::BigInt> =
        rats.iter().map(|r| r.numer() * (&denom_lcm / r.denom())).collect();
    let mut candidates: Vec<Rat> = vec![];
    let mut low = 0;
    while low < ints.len() && ints[low].is_zero() {
        low += 1;
    }
    if low > 0 {
        candidates.push(Rat::zero());
    }
    if low < ints.len() {
        let a0 = ints[low].clone();
        let an = ints.last().unwrap().clone();
        for p in divisors(&a0) {
            for q in divisors(&an) {
                for sign in [1i64, -1] {
                    candidates.push(Rat::new(&p * num::BigInt::from(sign), q.clone()));
                }
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    let mut eigs = Vec::new();
    for mu in candidates {
        if eval_poly(&rats, &mu).is_zero() {
            eigs.push(Scalar::Rat(mu));
        }
    }
    Ok(eigs)
}

fn rational_eigenvalues_by_det(m: &ExactMatrix) -> Result<Vec<Scalar>> {
    let mut eigs = Vec::new();
    for num_c in -6i64..=6 {
        for den in 1i64..=3 {
            let mu = Scalar::Rat(lsa_exact::rat(num_c, den));
            let shifted = m
                .sub(&ExactMatrix::identity(m.rows(), m.ring()).scale(&mu).map_err(Error::from)?)
                .map_err(Error::from)?;
            if shifted.det().map_err(Error::from)?.is_zero() && !eigs.contains(&mu) {
                eigs.push(mu);
            }
        }
    }
    Ok(eigs)
}

fn eval_poly(coeffs: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn divisors(n: &num::BigInt) -> Vec<num::BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![num::BigInt::one()];
    }
    let mut out = Vec::new();
    let mut d = num::BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    out
}

/// Check f(x . y) = f(x) . f(y) on all basis pairs, and invertibility when an
/// isomorphism is required. Over polynomial rings invertibility means the
/// determinant is a nonzero polynomial.
pub fn check_morphism(
    f: &ExactMatrix,
    a: &Algebra,
    b: &Algebra,
    require_iso: bool,
) -> Result<MorphismVerdict> {
    check_morphism_mod(f, a, b, &[], require_iso)
}

/// Morphism check modulo quadratic rewrite rules (for parametric maps whose
/// entries satisfy relations such as eps^2 = 1 or b^2 + c^2 = r).
pub fn check_morphism_mod(
    f: &ExactMatrix,
    a: &Algebra,
    b: &Algebra,
    rules: &[lsa_exact::SquareRule],
    require_iso: bool,
) -> Result<MorphismVerdict> {
    if a.dim() != b.dim() || f.rows() != a.dim() || f.cols() != a.dim() {
        return Err(Error::Exact(lsa_exact::Error::DimensionMismatch(
            "morphism check needs equal dimensions".into(),
        )));
    }
    let mut failures = Vec::new();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = f.mul_vec(&a.basis_product(i, j)).map_err(Error::from)?;
            let rhs = b.multiply(&f.col(i), &f.col(j))?;
            let diff = sub_elements(&lhs, &rhs);
            if diff.iter().any(|s| !s.reduce_squares(rules).is_zero()) {
                failures.push((i, j));
            }
        }
    }
    let invertible = if require_iso {
        Some(match f.ring() {
            RingTag::Poly => !f.det().map_err(Error::from)?.reduce_squares(rules).is_zero(),
            _ => f.rank().map_err(Error::from)? == a.dim(),
        })
    } else {
        None
    };
    Ok(MorphismVerdict { is_morphism: failures.is_empty(), invertible, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, bindings, ParamBindings};
    use lsa_exact::{rat, rint};

    fn a4(s: i64, t: i64) -> Algebra {
        catalog::named_algebra("a4", &bindings(&[("s", rint(s)), ("t", rint(t))])).unwrap()
    }

    fn line(n: usize, coords: &[i64]) -> Subspace {
        Subspace::from_spanning(
            n,
            RingTag::Rational,
            vec![coords.iter().map(|&c| Scalar::int(c)).collect()],
        )
        .unwrap()
    }

    #[test]
    fn perturbed_a4_fails_left_symmetry_with_a_located_triple() {
        // changing e2.e3 from (1/2) e4 to e4 breaks the identity; brute
        // force over all triples locates a counterexample
        let good = catalog::named_algebra("a4", &ParamBindings::new()).unwrap();
        let mut tensor = good.tensor().to_vec();
        let dim = good.dim();
        tensor[((1 * dim) + 2) * dim + 3] = Scalar::one();
        let bad = Algebra::bilinear("A4-perturbed", dim, RingTag::Poly, tensor, good.params.clone())
            .unwrap();
        match bad.check_left_symmetric() {
            IdentityVerdict::Counterexample { triple, .. } => {
                assert!(triple.0 < 4 && triple.1 < 4);
            }
            IdentityVerdict::Pass => panic!("perturbation must break left-symmetry"),
        }
        assert!(bad.certify(AlgebraKind::LeftSymmetric).is_err());
    }

    #[test]
    fn trivial_product_is_left_symmetric_and_complete() {
        let t = Algebra::bilinear("T", 3, RingTag::Rational, vec![Scalar::zero(); 27], vec![])
            .unwrap()
            .certify(AlgebraKind::LeftSymmetric)
            .unwrap();
        assert!(t.check_left_symmetric().passed());
        assert!(t.is_complete().unwrap().complete);
        assert!(t.translation_ideal().unwrap().is_full());
    }

    #[test]
    fn associated_lie_of_a4_is_the_adapted_oscillator() {
        let lie = catalog::named_algebra("a4", &ParamBindings::new())
            .unwrap()
            .associated_lie()
            .unwrap();
        let adapted = catalog::named_algebra("o4-adapted", &ParamBindings::new()).unwrap();
        // structure constants agree after specializing the parameters away
        let specialized = lie
            .substitute_params(
                &[("s".to_string(), Scalar::int(1)), ("t".to_string(), Scalar::int(1))]
                    .into_iter()
                    .collect(),
            )
            .unwrap();
        assert_eq!(specialized.tensor(), adapted.tensor());
    }

    #[test]
    fn associated_lie_of_heisenberg_family() {
        let lie = catalog::named_algebra("h3-lsa-a", &ParamBindings::new())
            .unwrap()
            .associated_lie()
            .unwrap();
        let h3 = catalog::named_algebra("h3", &ParamBindings::new()).unwrap();
        let specialized = lie
            .substitute_params(
                &[("p".to_string(), Scalar::int(2)), ("q".to_string(), Scalar::int(-3))]
                    .into_iter()
                    .collect(),
            )
            .unwrap();
        assert_eq!(specialized.tensor(), h3.tensor());
    }

    #[test]
    fn commutative_product_gives_abelian_lie() {
        // symmetric product: e1.e1 = e2 (commutative, associative enough)
        let mut tensor = vec![Scalar::zero(); 8];
        tensor[1] = Scalar::one(); // c[0][0][1]
        let a = Algebra::bilinear("comm", 2, RingTag::Rational, tensor, vec![])
            .unwrap()
            .certify(AlgebraKind::LeftSymmetric)
            .unwrap();
        let lie = a.associated_lie().unwrap();
        assert!(lie.tensor().iter().all(|s| s.is_zero()));
    }

    #[test]
    fn generic_right_operator_of_a4_is_nilpotent_symbolically() {
        let a = catalog::named_algebra("a4", &ParamBindings::new()).unwrap();
        let sym = a.over_poly().unwrap();
        let x: Element = (1..=4).map(|i| Scalar::var(&format!("xi{i}"))).collect();
        let rx = sym.operator_matrix(Side::Right, &x).unwrap();
        let traces = rx.power_traces(4).unwrap();
        assert!(traces.iter().all(|s| s.is_zero()));
    }

    #[test]
    fn operator_matrix_of_zero_is_zero() {
        let a = a4(1, 1);
        let l = a.operator_matrix(Side::Left, &a.zero_element()).unwrap();
        assert!(l.is_zero());
    }

    #[test]
    fn completeness_verdicts_across_the_catalog() {
        for name in ["a4", "b4", "h3-lsa-a", "h3-lsa-b", "a3", "i0", "b4-complex", "a4abc"] {
            let a = catalog::named_algebra(name, &ParamBindings::new()).unwrap();
            let verdict = a.is_complete().unwrap();
            assert!(verdict.complete, "{name} should be complete");
        }
    }

    #[test]
    fn complex_b2_is_incomplete_with_witness_e1() {
        let b2 = catalog::named_algebra("b2-complex", &ParamBindings::new()).unwrap();
        let verdict = b2.is_complete().unwrap();
        assert!(!verdict.complete);
        let (witness, traces) = verdict.witness.unwrap();
        let e1: Element = b2
            .basis_element(0)
            .iter()
            .map(|s| s.coerce(RingTag::Gaussian).unwrap())
            .collect();
        assert_eq!(witness, e1);
        assert_eq!(traces, vec![
            Scalar::int(2).coerce(RingTag::Gaussian).unwrap(),
            Scalar::int(4).coerce(RingTag::Gaussian).unwrap()
        ]);
    }

    #[test]
    fn translation_ideal_of_a4_is_the_e4_line() {
        assert_eq!(a4(1, 1).translation_ideal().unwrap(), line(4, &[0, 0, 0, 1]));
    }

    #[test]
    fn translation_ideal_of_a3_eps1_is_zero() {
        let a3 = catalog::named_algebra("a3", &bindings(&[("eps", rint(1))])).unwrap();
        assert!(a3.translation_ideal().unwrap().is_zero());
    }

    #[test]
    fn center_of_a4_is_the_e4_line() {
        assert_eq!(a4(1, 1).lsa_center().unwrap(), line(4, &[0, 0, 0, 1]));
    }

    #[test]
    fn center_of_h3_family_at_origin_is_e3() {
        let h = catalog::named_algebra("h3-lsa-a", &bindings(&[("p", rint(0)), ("q", rint(0))]))
            .unwrap();
        assert_eq!(h.lsa_center().unwrap(), line(3, &[0, 0, 1]));
    }

    #[test]
    fn center_of_i0_is_everything() {
        let i0 = catalog::named_algebra("i0", &ParamBindings::new()).unwrap();
        assert!(i0.lsa_center().unwrap().is_full());
    }

    #[test]
    fn ideal_closure_examples_on_a4() {
        let a = a4(1, 1);
        let e4_closure = a.ideal_closure(&a.basis_element(3)).unwrap();
        assert_eq!(e4_closure, line(4, &[0, 0, 0, 1]));
        assert!(e4_closure.dim() < a.dim(), "proper ideal");

        let e2_closure = a.ideal_closure(&a.basis_element(1)).unwrap();
        assert_eq!(e2_closure.dim(), 3);
        assert!(e2_closure.contains(&a.basis_element(1)));
        assert!(e2_closure.contains(&a.basis_element(2)));
        assert!(e2_closure.contains(&a.basis_element(3)));
        assert!(!e2_closure.contains(&a.basis_element(0)));

        assert!(a.ideal_closure(&a.zero_element()).unwrap().is_zero());
    }

    #[test]
    fn lsa_ideals_are_lie_ideals() {
        let a = a4(1, 1);
        let lie = a.associated_lie().unwrap();
        for v in [a.basis_element(3), a.basis_element(1)] {
            let ideal = a.ideal_closure(&v).unwrap();
            assert!(lie.lie_ideal_check(&ideal).unwrap());
        }
    }

    #[test]
    fn o4_known_ideals_pass_the_check() {
        let o4 = catalog::named_algebra("o4", &ParamBindings::new()).unwrap();
        let center = line(4, &[0, 0, 1, 0]);
        let derived = Subspace::from_spanning(
            4,
            RingTag::Rational,
            vec![
                vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::zero()],
                vec![Scalar::zero(), Scalar::one(), Scalar::zero(), Scalar::zero()],
                vec![Scalar::zero(), Scalar::zero(), Scalar::one(), Scalar::zero()],
            ],
        )
        .unwrap();
        assert!(o4.lie_ideal_check(&center).unwrap());
        assert!(o4.lie_ideal_check(&derived).unwrap());
        assert!(!o4.lie_ideal_check(&line(4, &[1, 0, 0, 0])).unwrap());
    }

    #[test]
    fn o4_scan_finds_exactly_center_and_derived() {
        let o4 = catalog::named_algebra("o4", &ParamBindings::new()).unwrap();
        let scan = o4.small_ideal_scan().unwrap();
        assert_eq!(scan.line_families.len(), 1);
        assert_eq!(scan.line_families[0], line(4, &[0, 0, 1, 0]));
        assert_eq!(scan.hyperplanes.len(), 1);
        assert_eq!(scan.hyperplanes[0], scan.derived);
        assert_eq!(scan.derived.dim(), 3);
        assert!(!scan.hyperplane_family_is_infinite);
    }

    #[test]
    fn abelian_plane_scan_returns_families() {
        let ab = Algebra::bilinear("ab2", 2, RingTag::Rational, vec![Scalar::zero(); 8], vec![])
            .unwrap()
            .certify(AlgebraKind::Lie)
            .unwrap();
        let scan = ab.small_ideal_scan().unwrap();
        // every line is an ideal: one family covering the whole plane
        assert_eq!(scan.line_families.len(), 1);
        assert!(scan.line_families[0].is_full());
        assert!(scan.hyperplane_family_is_infinite);
    }

    #[test]
    fn lie_invariants_of_o4() {
        let o4 = catalog::named_algebra("o4", &ParamBindings::new()).unwrap();
        let inv = o4.lie_invariants().unwrap();
        assert_eq!(inv.derived_dims, vec![4, 3, 1, 0]);
        assert!(inv.solvable);
        assert!(!inv.nilpotent);
        assert_eq!(inv.center_dim, 1);
    }

    #[test]
    fn lie_invariants_separate_g4_from_complexified_o4() {
        let g4 = catalog::named_algebra("g4-complex", &ParamBindings::new()).unwrap();
        assert_eq!(g4.lie_invariants().unwrap().center_dim, 0);
        let o4c = catalog::named_algebra("o4", &ParamBindings::new())
            .unwrap()
            .complexify()
            .unwrap();
        assert_eq!(o4c.lie_invariants().unwrap().center_dim, 1);
    }

    #[test]
    fn abelian_lie_invariants() {
        let ab = Algebra::bilinear("ab3", 3, RingTag::Rational, vec![Scalar::zero(); 27], vec![])
            .unwrap()
            .certify(AlgebraKind::Lie)
            .unwrap();
        let inv = ab.lie_invariants().unwrap();
        assert_eq!(inv.derived_dims, vec![3, 0]);
        assert!(inv.nilpotent);
        assert_eq!(inv.center_dim, 3);
    }

    #[test]
    fn derivations_of_h3_have_the_recorded_pattern() {
        let h3 = catalog::named_algebra("h3", &ParamBindings::new()).unwrap();
        let der = h3.derivations().unwrap();
        assert_eq!(der.dim(), 6);
        for flat in der.basis() {
            let d = h3.derivation_matrix(flat).unwrap();
            assert!(h3.is_derivation(&d).unwrap());
            // zero (1,3) and (2,3) entries; (3,3) = (1,1) + (2,2)
            assert!(d.at(0, 2).is_zero());
            assert!(d.at(1, 2).is_zero());
            assert_eq!(d.at(2, 2), &d.at(0, 0).add(d.at(1, 1)));
        }
    }

    #[test]
    fn derivations_of_abelian_are_all_maps() {
        let ab = Algebra::bilinear("ab3", 3, RingTag::Rational, vec![Scalar::zero(); 27], vec![])
            .unwrap()
            .certify(AlgebraKind::Lie)
            .unwrap();
        assert_eq!(ab.derivations().unwrap().dim(), 9);
    }

    #[test]
    fn derivations_of_o4_regression() {
        // exact kernel dimension, recorded as a regression constant; every
        // returned matrix satisfies the Leibniz rule on all basis pairs
        let o4 = catalog::named_algebra("o4", &ParamBindings::new()).unwrap();
        let der = o4.derivations().unwrap();
        assert_eq!(der.dim(), 5);
        for flat in der.basis() {
            let d = o4.derivation_matrix(flat).unwrap();
            assert!(o4.is_derivation(&d).unwrap());
        }
    }

    #[test]
    fn novikov_verdicts() {
        // A4(s, 0) is Novikov as a polynomial identity in s
        let a = catalog::named_algebra("a4", &bindings(&[("t", rint(0))])).unwrap();
        assert!(a.check_novikov().passed());
        // B4 is not, with a witness triple
        let b4 = catalog::named_algebra("b4", &ParamBindings::new()).unwrap();
        match b4.check_novikov() {
            IdentityVerdict::Counterexample { .. } => {}
            IdentityVerdict::Pass => panic!("B4 must fail the Novikov identity"),
        }
        // a commutative associative product passes
        let mut tensor = vec![Scalar::zero(); 8];
        tensor[1] = Scalar::one(); // c[0][0][1]
        let comm = Algebra::bilinear("comm", 2, RingTag::Rational, tensor, vec![]).unwrap();
        assert!(comm.check_novikov().passed());
    }

    #[test]
    fn complexification_preserves_constants_and_completeness() {
        let a = a4(1, 1);
        let ac = a.complexify().unwrap();
        assert_eq!(ac.ring(), RingTag::Gaussian);
        for (x, y) in a.tensor().iter().zip(ac.tensor()) {
            assert_eq!(x.as_rat(), y.as_rat());
        }
        // the second family at m = 1, complexified, stays complete
        let h = catalog::named_algebra("h3-lsa-b", &bindings(&[("m", rint(1))])).unwrap();
        assert!(h.complexify().unwrap().is_complete().unwrap().complete);
    }

    #[test]
    fn complexify_commutes_with_associated_lie() {
        let a = a4(2, -1);
        let left = a.complexify().unwrap().associated_lie().unwrap();
        let right = a.associated_lie().unwrap().complexify().unwrap();
        assert_eq!(left.tensor(), right.tensor());
    }

    #[test]
    fn bracket_equals_commutator_on_random_elements() {
        let a = a4(2, 3);
        let lie = a.associated_lie().unwrap();
        let x = a.element_from_rats(&[rat(1, 2), rint(-1), rint(2), rat(3, 4)]);
        let y = a.element_from_rats(&[rint(1), rat(1, 3), rint(0), rint(5)]);
        let xy = a.multiply(&x, &y).unwrap();
        let yx = a.multiply(&y, &x).unwrap();
        assert_eq!(sub_elements(&xy, &yx), lie.multiply(&x, &y).unwrap());
    }

    #[test]
    fn center_is_contained_in_translations_and_lie_center() {
        for name in ["a4", "b4", "a3", "h3-lsa-a", "h3-lsa-b"] {
            let entry = catalog::find(name).unwrap();
            let a = entry.build_default_spec().unwrap();
            let center = a.lsa_center().unwrap();
            let t = a.translation_ideal().unwrap();
            let z = a.associated_lie().unwrap().lie_center().unwrap();
            assert!(t.contains_subspace(&center), "{name}");
            assert!(z.contains_subspace(&center), "{name}");
        }
    }

    /// Transport the structure tensor through an invertible map T:
    /// x o' y = T^{-1}(T x o T y).
    fn conjugate_tensor(a: &Algebra, t: &ExactMatrix) -> Algebra {
        let tinv = t.inverse().unwrap().unwrap();
        let dim = a.dim();
        let mut tensor = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let prod = a.multiply(&t.col(i), &t.col(j)).unwrap();
                let back = tinv.mul_vec(&prod).unwrap();
                tensor.extend(back);
            }
        }
        Algebra::bilinear(&format!("{}~", a.name), dim, a.ring(), tensor, vec![]).unwrap()
    }

    #[test]
    fn completeness_is_invariant_under_conjugation() {
        let t = ExactMatrix::from_rows(vec![
            vec![Scalar::int(1), Scalar::int(2), Scalar::int(0), Scalar::int(1)],
            vec![Scalar::int(0), Scalar::int(1), Scalar::int(3), Scalar::int(0)],
            vec![Scalar::int(0), Scalar::int(0), Scalar::int(1), Scalar::int(-1)],
            vec![Scalar::int(2), Scalar::int(0), Scalar::int(0), Scalar::int(1)],
        ])
        .unwrap();
        assert!(t.inverse().unwrap().is_some());
        for (name, complete) in [("a4", true), ("b4", true)] {
            let a = catalog::find(name).unwrap().build_default_spec().unwrap();
            let conj = conjugate_tensor(&a, &t).certify(AlgebraKind::LeftSymmetric).unwrap();
            let v = check_morphism(&t, &conj, &a, true).unwrap();
            assert!(v.holds(true));
            assert_eq!(conj.is_complete().unwrap().complete, complete, "{name}");
        }
        // and the incomplete complex example stays incomplete under a
        // gaussian change of basis
        let b2 = catalog::named_algebra("b2-complex", &ParamBindings::new()).unwrap();
        let tg = ExactMatrix::from_rows(vec![
            vec![Scalar::one(), Scalar::i()],
            vec![Scalar::zero(), Scalar::one()],
        ])
        .unwrap();
        let conj = conjugate_tensor(&b2, &tg).certify(AlgebraKind::LeftSymmetric).unwrap();
        assert!(!conj.is_complete().unwrap().complete);
    }

    #[test]
    fn check_morphism_identity_and_failures() {
        let a = a4(1, 1);
        let id = ExactMatrix::identity(4, RingTag::Rational);
        assert!(check_morphism(&id, &a, &a, true).unwrap().holds(true));
        let b = a4(2, 1);
        let v = check_morphism(&id, &a, &b, false).unwrap();
        assert!(!v.is_morphism);
        assert!(!v.failures.is_empty());
    }

    #[test]
    fn realified_b2_doubles_dimension() {
        let b2 = catalog::named_algebra("b2-complex", &ParamBindings::new()).unwrap();
        let real = b2.realify().unwrap();
        assert_eq!(real.dim(), 4);
        assert_eq!(real.ring(), RingTag::Rational);
        // the realification of an LSA still satisfies the identity
        assert!(real.check_left_symmetric().passed());
    }
}
