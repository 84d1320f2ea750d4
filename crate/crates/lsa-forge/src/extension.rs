//! Lie-algebra and left-symmetric extensions: construction and validation of
//! extension data, coboundary operators, exact second cohomology, exactness
//! ideals, and central extensions.

use crate::algebra::{
    add_elements, element_is_zero, scale_element, sub_elements, Algebra, AlgebraKind, Element,
    Side,
};
use crate::{Error, Result};
use lsa_exact::{ExactMatrix, RingTag, Scalar, Subspace};

/// A fiber-valued bilinear map on the base: vals[(i, j)] is the image of
/// (e_i, e_j) in fiber coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearMap {
    pub base_dim: usize,
    pub fiber_dim: usize,
    vals: Vec<Element>,
}

impl BilinearMap {
    pub fn zero(base_dim: usize, fiber_dim: usize) -> Self {
        BilinearMap { base_dim, fiber_dim, vals: vec![vec![Scalar::zero(); fiber_dim]; base_dim * base_dim] }
    }

    pub fn from_fn(
        base_dim: usize,
        fiber_dim: usize,
        mut f: impl FnMut(usize, usize) -> Element,
    ) -> Self {
        let mut vals = Vec::with_capacity(base_dim * base_dim);
        for i in 0..base_dim {
            for j in 0..base_dim {
                let v = f(i, j);
                assert_eq!(v.len(), fiber_dim);
                vals.push(v);
            }
        }
        BilinearMap { base_dim, fiber_dim, vals }
    }

    /// Scalar-valued map (one-dimensional fiber) from a square matrix.
    pub fn from_matrix(m: &ExactMatrix) -> Self {
        BilinearMap::from_fn(m.rows(), 1, |i, j| vec![m.at(i, j).clone()])
    }

    /// The matrix of a scalar-valued map.
    pub fn to_matrix(&self) -> Result<ExactMatrix> {
        if self.fiber_dim != 1 {
            return Err(Error::Precondition("to_matrix needs a one-dimensional fiber".into()));
        }
        ExactMatrix::from_fn(self.base_dim, self.base_dim, RingTag::Rational.join({
            let mut r = RingTag::Rational;
            for v in &self.vals {
                r = r.join(v[0].ring()).map_err(Error::from)?;
            }
            r
        }).map_err(Error::from)?, |i, j| self.at(i, j)[0].clone())
        .map_err(Error::from)
    }

    pub fn at(&self, i: usize, j: usize) -> &Element {
        &self.vals[i * self.base_dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Element) {
        assert_eq!(v.len(), self.fiber_dim);
        self.vals[i * self.base_dim + j] = v;
    }

    /// Bilinear evaluation at arbitrary base elements.
    pub fn eval(&self, x: &Element, y: &Element) -> Element {
        let mut out = vec![Scalar::zero(); self.fiber_dim];
        for i in 0..self.base_dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.base_dim {
                if y[j].is_zero() {
                    continue;
                }
                let c = x[i].mul(&y[j]);
                out = add_elements(&out, &scale_element(&c, self.at(i, j)));
            }
        }
        out
    }

    pub fn is_alternating(&self) -> bool {
        for i in 0..self.base_dim {
            if !element_is_zero(self.at(i, i)) {
                return false;
            }
            for j in 0..i {
                if !element_is_zero(&add_elements(self.at(i, j), self.at(j, i))) {
                    return false;
                }
            }
        }
        true
    }

    pub fn sub(&self, other: &Self) -> Self {
        BilinearMap::from_fn(self.base_dim, self.fiber_dim, |i, j| {
            sub_elements(self.at(i, j), other.at(i, j))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.vals.iter().all(element_is_zero)
    }

    /// Flatten to coordinates (i*base_dim + j)*fiber_dim + v.
    pub fn flatten(&self) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(self.vals.len() * self.fiber_dim);
        for v in &self.vals {
            out.extend(v.iter().cloned());
        }
        out
    }

    pub fn unflatten(base_dim: usize, fiber_dim: usize, flat: &[Scalar]) -> Self {
        BilinearMap::from_fn(base_dim, fiber_dim, |i, j| {
            let start = (i * base_dim + j) * fiber_dim;
            flat[start..start + fiber_dim].to_vec()
        })
    }
}

// ---------------------------------------------------------------------------
// Lie extensions

/// Data for a Lie extension of `base` by `fiber`: an action candidate
/// phi : base -> End(fiber) (one matrix per base basis vector) and an
/// alternating bilinear map omega : base x base -> fiber.
///
/// The built bracket on fiber + base coordinates (fiber first) is
/// [(a,x),(b,y)] = ([a,b] + phi(x)b - phi(y)a + omega(x,y), [x,y]).
#[derive(Clone, Debug)]
pub struct LieExtensionData {
    pub fiber: Algebra,
    pub base: Algebra,
    pub phi: Vec<ExactMatrix>,
    pub omega: BilinearMap,
}

/// Per-condition report for Lie extension data. The extension bracket
/// satisfies Jacobi exactly when all three conditions hold; `consistent`
/// records that the two routes agreed.
#[derive(Clone, Debug)]
pub struct LieExtendVerdict {
    /// each phi(x) is a derivation of the fiber
    pub acts_by_derivations: bool,
    /// [phi(x), phi(y)] = phi([x,y]) + ad_{omega(x,y)}
    pub factor_identity: bool,
    /// the alternating-sum cocycle identity for omega
    pub cocycle_identity: bool,
    pub jacobi: bool,
    pub consistent: bool,
}

impl LieExtendVerdict {
    pub fn conditions_hold(&self) -> bool {
        self.acts_by_derivations && self.factor_identity && self.cocycle_identity
    }
}

impl LieExtensionData {
    pub fn new(
        fiber: Algebra,
        base: Algebra,
        phi: Vec<ExactMatrix>,
        omega: BilinearMap,
    ) -> Result<Self> {
        if phi.len() != base.dim() || omega.base_dim != base.dim() || omega.fiber_dim != fiber.dim()
        {
            return Err(Error::Exact(lsa_exact::Error::DimensionMismatch(
                "phi/omega sizes must match the base and fiber".into(),
            )));
        }
        if !omega.is_alternating() {
            return Err(Error::Precondition("omega must be alternating".into()));
        }
        Ok(LieExtensionData { fiber, base, phi, omega })
    }

    pub fn phi_of(&self, x: &Element) -> Result<ExactMatrix> {
        let mut acc = ExactMatrix::zeros(self.fiber.dim(), self.fiber.dim(), ring_of(x, self.fiber.ring()));
        for (i, m) in self.phi.iter().enumerate() {
            if !x[i].is_zero() {
                acc = acc.add(&m.scale(&x[i]).map_err(Error::from)?).map_err(Error::from)?;
            }
        }
        Ok(acc)
    }

    /// Condition: each phi(e_i) satisfies the Leibniz rule on the fiber.
    pub fn check_acts_by_derivations(&self) -> Result<bool> {
        for m in &self.phi {
            if !self.fiber.is_derivation(m)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Condition: [phi(x), phi(y)] = phi([x,y]) + ad_{omega(x,y)} on basis
    /// pairs.
    pub fn check_factor_identity(&self) -> Result<bool> {
        for i in 0..self.base.dim() {
            for j in 0..i {
                let lhs = {
                    let a = &self.phi[i];
                    let b = &self.phi[j];
                    a.mul(b).map_err(Error::from)?.sub(&b.mul(a).map_err(Error::from)?).map_err(Error::from)?
                };
                let bracket_ij = self.base.basis_product(i, j);
                let phi_bracket = self.phi_of(&bracket_ij)?;
                let ad_omega = self
                    .fiber
                    .operator_matrix(Side::Left, self.omega.at(i, j))?;
                let rhs = phi_bracket.add(&ad_omega).map_err(Error::from)?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Condition: omega([x,y],z) - omega(x,[y,z]) + omega(y,[x,z])
    /// = phi(x) omega(y,z) + phi(y) omega(z,x) + phi(z) omega(x,y).
    pub fn check_cocycle_identity(&self) -> Result<bool> {
        let n = self.base.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let br = |a: usize, b: usize| self.base.basis_product(a, b);
                    let lhs = sub_elements(
                        &add_elements(
                            &self.omega.eval(&br(i, j), &self.base.basis_element(k)),
                            &self.omega.eval(&self.base.basis_element(j), &br(i, k)),
                        ),
                        &self.omega.eval(&self.base.basis_element(i), &br(j, k)),
                    );
                    let term = |p: usize, w: &Element| -> Result<Element> {
                        self.phi[p].mul_vec(w).map_err(Error::from)
                    };
                    let rhs = add_elements(
                        &add_elements(
                            &term(i, self.omega.at(j, k))?,
                            &term(j, &self.omega.at(i, k).iter().map(|s| s.neg()).collect())?,
                        ),
                        &term(k, self.omega.at(i, j))?,
                    );
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// The factor-system test: the action/omega pair satisfies the factor
    /// identity and the cocycle identity. For an abelian fiber this says phi
    /// is a representation and omega a 2-cocycle for it.
    pub fn factor_system_check(&self) -> Result<bool> {
        Ok(self.check_factor_identity()? && self.check_cocycle_identity()?)
    }
}

fn ring_of(x: &Element, base: RingTag) -> RingTag {
    let mut r = base;
    for s in x {
        r = r.join(s.ring()).unwrap_or(RingTag::Poly);
    }
    r
}

/// Build the extension bracket on fiber + base coordinates and report whether
/// the three structure conditions hold and whether the built bracket passes
/// Jacobi; the two must agree.
pub fn lie_extend(d: &LieExtensionData) -> Result<(Algebra, LieExtendVerdict)> {
    let nf = d.fiber.dim();
    let nb = d.base.dim();
    let dim = nf + nb;
    let ring = d.fiber.ring().join(d.base.ring()).map_err(Error::from)?;
    let mut tensor = vec![Scalar::zero(); dim * dim * dim];
    let mut put = |i: usize, j: usize, fiber_part: &Element, base_part: &Element| {
        for (k, s) in fiber_part.iter().enumerate() {
            tensor[(i * dim + j) * dim + k] = s.clone();
        }
        for (k, s) in base_part.iter().enumerate() {
            tensor[(i * dim + j) * dim + nf + k] = s.clone();
        }
    };
    let zero_base = vec![Scalar::zero(); nb];
    for i in 0..nf {
        for j in 0..nf {
            put(i, j, &d.fiber.basis_product(i, j), &zero_base);
        }
    }
    for i in 0..nf {
        for j in 0..nb {
            // [(a,0),(0,y)] = (-phi(y) a, 0)
            let v = d.phi[j].col(i).iter().map(|s| s.neg()).collect::<Vec<_>>();
            put(i, nf + j, &v, &zero_base);
            let w = d.phi[j].col(i);
            put(nf + j, i, &w, &zero_base);
        }
    }
    for i in 0..nb {
        for j in 0..nb {
            put(nf + i, nf + j, d.omega.at(i, j), &d.base.basis_product(i, j));
        }
    }
    let built = Algebra::bilinear(
        &format!("ext({}, {})", d.base.name, d.fiber.name),
        dim,
        ring,
        tensor,
        vec![],
    )?;
    let jacobi = built.check_antisymmetry().passed() && built.check_jacobi().passed();
    let verdict = LieExtendVerdict {
        acts_by_derivations: d.check_acts_by_derivations()?,
        factor_identity: d.check_factor_identity()?,
        cocycle_identity: d.check_cocycle_identity()?,
        jacobi,
        consistent: true,
    };
    let verdict = LieExtendVerdict { consistent: verdict.conditions_hold() == jacobi, ..verdict };
    let built = if jacobi { built.certify(AlgebraKind::Lie)? } else { built };
    Ok((built, verdict))
}

// ---------------------------------------------------------------------------
// LSA extensions

/// Data for a left-symmetric extension of `base` (K) by `fiber` (E): linear
/// maps lambda, rho : K -> End(E) and a bilinear map g : K x K -> E.
///
/// The built product on base + fiber coordinates (base first) is
/// (x,a).(y,b) = (x.y, a.b + lambda_x(b) + rho_y(a) + g(x,y)).
#[derive(Clone, Debug)]
pub struct LsaExtensionData {
    pub fiber: Algebra,
    pub base: Algebra,
    pub lambda: Vec<ExactMatrix>,
    pub rho: Vec<ExactMatrix>,
    pub g: BilinearMap,
}

/// Reports each structure condition individually, the simplified forms when
/// they apply, and whether the built product is left-symmetric. The
/// conjunction of the five conditions must match the left-symmetry verdict.
#[derive(Clone, Debug)]
pub struct LsaExtendVerdict {
    pub conditions: [bool; 5],
    /// simplified three-condition form, when the fiber product is trivial
    pub simplified: Option<[bool; 3]>,
    /// one-dimensional-base specialization, when dim(K) = 1
    pub one_dim_base: Option<[bool; 3]>,
    pub left_symmetric: bool,
    pub consistent: bool,
}

impl LsaExtendVerdict {
    pub fn conditions_hold(&self) -> bool {
        self.conditions.iter().all(|&b| b)
    }
}

impl LsaExtensionData {
    pub fn new(
        fiber: Algebra,
        base: Algebra,
        lambda: Vec<ExactMatrix>,
        rho: Vec<ExactMatrix>,
        g: BilinearMap,
    ) -> Result<Self> {
        if lambda.len() != base.dim()
            || rho.len() != base.dim()
            || g.base_dim != base.dim()
            || g.fiber_dim != fiber.dim()
        {
            return Err(Error::Exact(lsa_exact::Error::DimensionMismatch(
                "lambda/rho/g sizes must match the base and fiber".into(),
            )));
        }
        Ok(LsaExtensionData { fiber, base, lambda, rho, g })
    }

    /// Trivial actions and cocycle.
    pub fn central(fiber: Algebra, base: Algebra, g: BilinearMap) -> Result<Self> {
        let nf = fiber.dim();
        let ring = fiber.ring().join(base.ring()).map_err(Error::from)?;
        let zeros = vec![ExactMatrix::zeros(nf, nf, ring); base.dim()];
        LsaExtensionData::new(fiber, base, zeros.clone(), zeros, g)
    }

    fn lam(&self, i: usize) -> &ExactMatrix {
        &self.lambda[i]
    }

    fn rh(&self, i: usize) -> &ExactMatrix {
        &self.rho[i]
    }

    fn fiber_left(&self, a: &Element) -> Result<ExactMatrix> {
        self.fiber.operator_matrix(Side::Left, a)
    }

    fn fiber_right(&self, a: &Element) -> Result<ExactMatrix> {
        self.fiber.operator_matrix(Side::Right, a)
    }

    fn op_of(&self, maps: &[ExactMatrix], x: &Element) -> Result<ExactMatrix> {
        let mut acc = ExactMatrix::zeros(self.fiber.dim(), self.fiber.dim(), ring_of(x, self.fiber.ring()));
        for (i, m) in maps.iter().enumerate() {
            if !x[i].is_zero() {
                acc = acc.add(&m.scale(&x[i]).map_err(Error::from)?).map_err(Error::from)?;
            }
        }
        Ok(acc)
    }

    /// Condition (i): lambda_x(a.b) = lambda_x(a).b + a.lambda_x(b)
    /// - rho_x(a).b.
    pub fn check_condition_i(&self) -> Result<bool> {
        let ne = self.fiber.dim();
        for x in 0..self.base.dim() {
            for a in 0..ne {
                for b in 0..ne {
                    let ea = self.fiber.basis_element(a);
                    let eb = self.fiber.basis_element(b);
                    let lhs = self.lam(x).mul_vec(&self.fiber.basis_product(a, b)).map_err(Error::from)?;
                    let t1 = self.fiber.multiply(&self.lam(x).col(a), &eb)?;
                    let t2 = self.fiber.multiply(&ea, &self.lam(x).col(b))?;
                    let t3 = self.fiber.multiply(&self.rh(x).col(a), &eb)?;
                    let rhs = sub_elements(&add_elements(&t1, &t2), &t3);
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Condition (ii): rho_x([a,b]) = a.rho_x(b) - b.rho_x(a).
    pub fn check_condition_ii(&self) -> Result<bool> {
        let ne = self.fiber.dim();
        for x in 0..self.base.dim() {
            for a in 0..ne {
                for b in 0..a {
                    let ea = self.fiber.basis_element(a);
                    let eb = self.fiber.basis_element(b);
                    let br = sub_elements(
                        &self.fiber.basis_product(a, b),
                        &self.fiber.basis_product(b, a),
                    );
                    let lhs = self.rh(x).mul_vec(&br).map_err(Error::from)?;
                    let rhs = sub_elements(
                        &self.fiber.multiply(&ea, &self.rh(x).col(b))?,
                        &self.fiber.multiply(&eb, &self.rh(x).col(a))?,
                    );
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Condition (iii): [lambda_x, lambda_y] = lambda_{[x,y]}
    /// + L_{g(x,y) - g(y,x)}.
    pub fn check_condition_iii(&self) -> Result<bool> {
        for x in 0..self.base.dim() {
            for y in 0..x {
                let lx = self.lam(x);
                let ly = self.lam(y);
                let comm = lx.mul(ly).map_err(Error::from)?.sub(&ly.mul(lx).map_err(Error::from)?).map_err(Error::from)?;
                let br = sub_elements(
                    &self.base.basis_product(x, y),
                    &self.base.basis_product(y, x),
                );
                let lam_br = self.op_of(&self.lambda, &br)?;
                let skew = sub_elements(self.g.at(x, y), self.g.at(y, x));
                let rhs = lam_br.add(&self.fiber_left(&skew)?).map_err(Error::from)?;
                if comm != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Condition (iv): [lambda_x, rho_y] = rho_{x.y} - rho_y rho_x
    /// + R_{g(x,y)}.
    pub fn check_condition_iv(&self) -> Result<bool> {
        for x in 0..self.base.dim() {
            for y in 0..self.base.dim() {
                let lx = self.lam(x);
                let ry = self.rh(y);
                let comm = lx.mul(ry).map_err(Error::from)?.sub(&ry.mul(lx).map_err(Error::from)?).map_err(Error::from)?;
                let rho_xy = self.op_of(&self.rho, &self.base.basis_product(x, y))?;
                let rr = ry.mul(self.rh(x)).map_err(Error::from)?;
                let rhs = rho_xy
                    .sub(&rr)
                    .map_err(Error::from)?
                    .add(&self.fiber_right(self.g.at(x, y))?)
                    .map_err(Error::from)?;
                if comm != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Condition (v): the cocycle identity for g.
    pub fn check_condition_v(&self) -> Result<bool> {
        Ok(self.delta2_values()?.iter().all(element_is_zero))
    }

    /// The six-term coboundary of g evaluated on all basis triples, in the
    /// bimodule given by (lambda, rho) over the base product.
    fn delta2_values(&self) -> Result<Vec<Element>> {
        let n = self.base.dim();
        let mut out = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    out.push(self.delta2_at(x, y, z)?);
                }
            }
        }
        Ok(out)
    }

    fn delta2_at(&self, x: usize, y: usize, z: usize) -> Result<Element> {
        let ex = self.base.basis_element(x);
        let ey = self.base.basis_element(y);
        let yz = self.base.basis_product(y, z);
        let xz = self.base.basis_product(x, z);
        let br = sub_elements(&self.base.basis_product(x, y), &self.base.basis_product(y, x));
        let mut acc = self.g.eval(&ex, &yz);
        acc = sub_elements(&acc, &self.g.eval(&ey, &xz));
        acc = add_elements(&acc, &self.lam(x).mul_vec(self.g.at(y, z)).map_err(Error::from)?);
        acc = sub_elements(&acc, &self.lam(y).mul_vec(self.g.at(x, z)).map_err(Error::from)?);
        acc = sub_elements(&acc, &self.g.eval(&br, &self.base.basis_element(z)));
        let skew = sub_elements(self.g.at(x, y), self.g.at(y, x));
        acc = sub_elements(&acc, &self.rh(z).mul_vec(&skew).map_err(Error::from)?);
        Ok(acc)
    }

    pub fn fiber_product_is_trivial(&self) -> bool {
        self.fiber.tensor().iter().all(|s| s.is_zero())
    }

    /// Simplified conditions for a trivial fiber product:
    /// (a) lambda is a Lie-algebra representation,
    /// (b) [lambda_x, rho_y] = rho_{x.y} - rho_y rho_x,
    /// (c) the cocycle identity.
    pub fn check_simplified(&self) -> Result<[bool; 3]> {
        let mut rep = true;
        for x in 0..self.base.dim() {
            for y in 0..x {
                let lx = self.lam(x);
                let ly = self.lam(y);
                let comm = lx.mul(ly).map_err(Error::from)?.sub(&ly.mul(lx).map_err(Error::from)?).map_err(Error::from)?;
                let br = sub_elements(
                    &self.base.basis_product(x, y),
                    &self.base.basis_product(y, x),
                );
                if comm != self.op_of(&self.lambda, &br)? {
                    rep = false;
                }
            }
        }
        let mut bimap = true;
        for x in 0..self.base.dim() {
            for y in 0..self.base.dim() {
                let lx = self.lam(x);
                let ry = self.rh(y);
                let comm = lx.mul(ry).map_err(Error::from)?.sub(&ry.mul(lx).map_err(Error::from)?).map_err(Error::from)?;
                let rho_xy = self.op_of(&self.rho, &self.base.basis_product(x, y))?;
                let rr = ry.mul(self.rh(x)).map_err(Error::from)?;
                if comm != rho_xy.sub(&rr).map_err(Error::from)? {
                    bimap = false;
                }
            }
        }
        Ok([rep, bimap, self.check_condition_v()?])
    }

    /// One-dimensional-base specialization (base spanned by e0 with trivial
    /// product, lambda := lambda_{e0}, rho := rho_{e0}, e := g(e0,e0)):
    /// (1) lambda(x.y) = lambda(x).y + x.lambda(y) - rho(x).y,
    /// (2) rho([x,y]) = x.rho(y) - y.rho(x),
    /// (3) [lambda, rho] + rho^2 = R_e,
    /// with x, y running over the fiber.
    pub fn check_one_dim_base(&self) -> Result<[bool; 3]> {
        if self.base.dim() != 1 {
            return Err(Error::Precondition("one-dimensional base required".into()));
        }
        let c1 = self.check_condition_i()?;
        let c2 = self.check_condition_ii()?;
        let lam = self.lam(0);
        let rho = self.rh(0);
        let comm = lam.mul(rho).map_err(Error::from)?.sub(&rho.mul(lam).map_err(Error::from)?).map_err(Error::from)?;
        let lhs = comm.add(&rho.mul(rho).map_err(Error::from)?).map_err(Error::from)?;
        let re = self.fiber_right(self.g.at(0, 0))?;
        Ok([c1, c2, lhs == re])
    }

    /// Lie-side data extracted from the product formula: the alternating
    /// cocycle g(x,y) - g(y,x) and the action lambda - rho.
    pub fn extracted_lie_cocycle(&self) -> BilinearMap {
        BilinearMap::from_fn(self.base.dim(), self.fiber.dim(), |i, j| {
            sub_elements(self.g.at(i, j), self.g.at(j, i))
        })
    }

    pub fn extracted_lie_action(&self) -> Result<Vec<ExactMatrix>> {
        self.lambda
            .iter()
            .zip(&self.rho)
            .map(|(l, r)| l.sub(r).map_err(Error::from))
            .collect()
    }
}

/// Build the extension product on base + fiber coordinates and report the
/// five structure conditions against the left-symmetry of the result.
pub fn lsa_extend(d: &LsaExtensionData) -> Result<(Algebra, LsaExtendVerdict)> {
    let nb = d.base.dim();
    let ne = d.fiber.dim();
    let dim = nb + ne;
    let ring = d.fiber.ring().join(d.base.ring()).map_err(Error::from)?;
    let mut tensor = vec![Scalar::zero(); dim * dim * dim];
    {
        let mut put = |i: usize, j: usize, base_part: &Element, fiber_part: &Element| {
            for (k, s) in base_part.iter().enumerate() {
                tensor[(i * dim + j) * dim + k] = s.clone();
            }
            for (k, s) in fiber_part.iter().enumerate() {
                tensor[(i * dim + j) * dim + nb + k] = s.clone();
            }
        };
        let zero_base = vec![Scalar::zero(); nb];
        for i in 0..nb {
            for j in 0..nb {
                put(i, j, &d.base.basis_product(i, j), d.g.at(i, j));
            }
        }
        for i in 0..nb {
            for j in 0..ne {
                // (x,0).(0,b) = (0, lambda_x(b))
                put(i, nb + j, &zero_base, &d.lambda[i].col(j));
                // (0,a).(x,0) = (0, rho_x(a))
                put(nb + j, i, &zero_base, &d.rho[i].col(j));
            }
        }
        for i in 0..ne {
            for j in 0..ne {
                put(nb + i, nb + j, &zero_base, &d.fiber.basis_product(i, j));
            }
        }
    }
    let built = Algebra::bilinear(
        &format!("ext({}, {})", d.base.name, d.fiber.name),
        dim,
        ring,
        tensor,
        [d.base.params.clone(), d.fiber.params.clone()].concat(),
    )?;
    let left_symmetric = built.check_left_symmetric().passed();
    let conditions = [
        d.check_condition_i()?,
        d.check_condition_ii()?,
        d.check_condition_iii()?,
        d.check_condition_iv()?,
        d.check_condition_v()?,
    ];
    let simplified =
        if d.fiber_product_is_trivial() { Some(d.check_simplified()?) } else { None };
    let one_dim_base = if d.base.dim() == 1 { Some(d.check_one_dim_base()?) } else { None };
    let all = conditions.iter().all(|&b| b);
    let mut consistent = all == left_symmetric;
    if let Some(s) = simplified {
        consistent &= s.iter().all(|&b| b) == all;
    }
    if let Some(s) = one_dim_base {
        consistent &= s.iter().all(|&b| b) == all;
    }
    let verdict =
        LsaExtendVerdict { conditions, simplified, one_dim_base, left_symmetric, consistent };
    let built =
        if left_symmetric { built.certify(AlgebraKind::LeftSymmetric)? } else { built };
    Ok((built, verdict))
}

// ---------------------------------------------------------------------------
// bimodules, coboundaries, cohomology

/// A bimodule context: a vector space V with actions (lambda, rho) of the
/// base algebra K satisfying the two trivial-fiber compatibility conditions.
#[derive(Clone, Debug)]
pub struct BimoduleCtx {
    pub base: Algebra,
    pub dim_v: usize,
    pub lambda: Vec<ExactMatrix>,
    pub rho: Vec<ExactMatrix>,
}

impl BimoduleCtx {
    pub fn new(
        base: Algebra,
        dim_v: usize,
        lambda: Vec<ExactMatrix>,
        rho: Vec<ExactMatrix>,
    ) -> Result<Self> {
        let ctx = BimoduleCtx { base, dim_v, lambda, rho };
        if !ctx.is_bimodule()? {
            return Err(Error::Precondition(
                "(lambda, rho) do not define a bimodule over the base".into(),
            ));
        }
        Ok(ctx)
    }

    pub fn trivial(base: Algebra, dim_v: usize) -> Self {
        let ring = base.ring();
        let zeros = vec![ExactMatrix::zeros(dim_v, dim_v, ring); base.dim()];
        BimoduleCtx { base, dim_v, lambda: zeros.clone(), rho: zeros }
    }

    fn as_extension_data(&self) -> Result<LsaExtensionData> {
        let fiber = Algebra::bilinear(
            "V",
            self.dim_v,
            self.base.ring(),
            vec![Scalar::zero(); self.dim_v * self.dim_v * self.dim_v],
            vec![],
        )?
        .certify(AlgebraKind::LeftSymmetric)?;
        LsaExtensionData::new(
            fiber,
            self.base.clone(),
            self.lambda.clone(),
            self.rho.clone(),
            BilinearMap::zero(self.base.dim(), self.dim_v),
        )
    }

    pub fn is_bimodule(&self) -> Result<bool> {
        let d = self.as_extension_data()?;
        let s = d.check_simplified()?;
        Ok(s[0] && s[1])
    }

    /// delta1 h (x,y) = rho_y(h(x)) + lambda_x(h(y)) - h(x.y); h is the
    /// matrix of a linear map K -> V.
    pub fn delta1(&self, h: &ExactMatrix) -> Result<BilinearMap> {
        let n = self.base.dim();
        let mut out = BilinearMap::zero(n, self.dim_v);
        for x in 0..n {
            for y in 0..n {
                let t1 = self.rho[y].mul_vec(&h.col(x)).map_err(Error::from)?;
                let t2 = self.lambda[x].mul_vec(&h.col(y)).map_err(Error::from)?;
                let t3 = h.mul_vec(&self.base.basis_product(x, y)).map_err(Error::from)?;
                out.set(x, y, sub_elements(&add_elements(&t1, &t2), &t3));
            }
        }
        Ok(out)
    }

    /// The six-term delta2 of a bilinear map, on all basis triples, flattened
    /// as ((x*n + y)*n + z)*dim_v + v.
    pub fn delta2(&self, g: &BilinearMap) -> Result<Vec<Scalar>> {
        let mut d = self.as_extension_data()?;
        d.g = g.clone();
        Ok(d.delta2_values()?.into_iter().flatten().collect())
    }

    /// Matrix of delta1 : L^1(K,V) -> L^2(K,V), columns indexed by the flat
    /// coordinates x*dim_v + v of h.
    pub fn delta1_matrix(&self) -> Result<ExactMatrix> {
        let n = self.base.dim();
        let cols = n * self.dim_v;
        let rows = n * n * self.dim_v;
        let mut columns = Vec::with_capacity(cols);
        for x in 0..n {
            for v in 0..self.dim_v {
                let mut h = ExactMatrix::zeros(self.dim_v, n, self.base.ring());
                h.set(v, x, Scalar::one());
                columns.push(self.delta1(&h)?.flatten());
            }
        }
        ExactMatrix::from_fn(rows, cols, self.base.ring(), |r, c| columns[c][r].clone())
            .map_err(Error::from)
    }

    /// Matrix of delta2 : L^2(K,V) -> L^3(K,V), columns indexed by the flat
    /// coordinates (x*n + y)*dim_v + v of g.
    pub fn delta2_matrix(&self) -> Result<ExactMatrix> {
        let n = self.base.dim();
        let cols = n * n * self.dim_v;
        let rows = n * n * n * self.dim_v;
        let mut columns = Vec::with_capacity(cols);
        for x in 0..n {
            for y in 0..n {
                for v in 0..self.dim_v {
                    let mut g = BilinearMap::zero(n, self.dim_v);
                    let mut val = vec![Scalar::zero(); self.dim_v];
                    val[v] = Scalar::one();
                    g.set(x, y, val);
                    columns.push(self.delta2(&g)?);
                }
            }
        }
        ExactMatrix::from_fn(rows, cols, self.base.ring(), |r, c| columns[c][r].clone())
            .map_err(Error::from)
    }
}

/// Second cohomology of the base with coefficients in a bimodule: the cocycle
/// space, coboundary space, quotient dimension, and a deterministic echelon
/// choice of class representatives.
#[derive(Clone, Debug)]
pub struct CohomologySpace {
    pub z2: Subspace,
    pub b2: Subspace,
    pub h2_dim: usize,
    pub representatives: Vec<BilinearMap>,
}

/// Compute Z^2 = ker(delta2), B^2 = im(delta1) and representatives of a
/// complement of B^2 inside Z^2 by echelon completion.
pub fn cohomology_h2(ctx: &BimoduleCtx) -> Result<CohomologySpace> {
    let n = ctx.base.dim();
    let z2 = ctx.delta2_matrix()?.kernel().map_err(Error::from)?;
    let d1 = ctx.delta1_matrix()?;
    let mut image_vecs = Vec::new();
    for c in 0..d1.cols() {
        image_vecs.push(d1.col(c));
    }
    let b2 = Subspace::from_spanning(n * n * ctx.dim_v, ctx.base.ring(), image_vecs)
        .map_err(Error::from)?;
    debug_assert!(z2.contains_subspace(&b2));
    let reps = b2.complement_within(&z2).map_err(Error::from)?;
    let representatives = reps
        .iter()
        .map(|flat| BilinearMap::unflatten(n, ctx.dim_v, flat))
        .collect();
    Ok(CohomologySpace { h2_dim: z2.dim() - b2.dim(), z2, b2, representatives })
}

/// The exactness ideal { x in K : x.y = y.x = 0 and g(x,y) = g(y,x) = 0 for
/// all y }. The central extension defined by g is exact iff this is zero.
pub fn exactness_ideal(base: &Algebra, g: &BilinearMap) -> Result<Subspace> {
    let n = base.dim();
    let fv = g.fiber_dim;
    let rows = 2 * n * n + 2 * n * fv;
    let m = ExactMatrix::from_fn(rows, n, base.ring(), |row, i| {
        if row < n * n {
            let j = row / n;
            let k = row % n;
            base.c(i, j, k).clone() // x . e_j
        } else if row < 2 * n * n {
            let r = row - n * n;
            let j = r / n;
            let k = r % n;
            base.c(j, i, k).clone() // e_j . x
        } else if row < 2 * n * n + n * fv {
            let r = row - 2 * n * n;
            let j = r / fv;
            let v = r % fv;
            g.at(i, j)[v].clone() // g(x, e_j)
        } else {
            let r = row - 2 * n * n - n * fv;
            let j = r / fv;
            let v = r % fv;
            g.at(j, i)[v].clone() // g(e_j, x)
        }
    })
    .map_err(Error::from)?;
    m.kernel().map_err(Error::from)
}

/// Central extension of `base` by a trivial fiber along the cocycle g:
/// (x,a).(y,b) = (x.y, g(x,y)). Requires delta2 g = 0 for the trivial
/// bimodule. The fiber lands inside the center of the result.
pub fn central_extend(base: &Algebra, g: &BilinearMap) -> Result<Algebra> {
    let ctx = BimoduleCtx::trivial(base.clone(), g.fiber_dim);
    if ctx.delta2(g)?.iter().any(|s| !s.is_zero()) {
        return Err(Error::Precondition("g is not a cocycle (delta2 g != 0)".into()));
    }
    let fiber = Algebra::bilinear(
        "I0",
        g.fiber_dim,
        base.ring(),
        vec![Scalar::zero(); g.fiber_dim * g.fiber_dim * g.fiber_dim],
        vec![],
    )?
    .certify(AlgebraKind::LeftSymmetric)?;
    let data = LsaExtensionData::central(fiber, base.clone(), g.clone())?;
    let (built, verdict) = lsa_extend(&data)?;
    debug_assert!(verdict.left_symmetric && verdict.consistent);
    Ok(built)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, bindings, ParamBindings};
    use lsa_exact::{rat, rint};

    fn trivial_fiber(dim: usize) -> Algebra {
        Algebra::bilinear("R", dim, RingTag::Rational, vec![Scalar::zero(); dim * dim * dim], vec![])
            .unwrap()
            .certify(AlgebraKind::LeftSymmetric)
            .unwrap()
    }

    #[test]
    fn oscillator_as_lie_extension_of_e2_by_r() {
        // fiber R (abelian), base E2, phi = 0, omega(e2,e3) = 1: the result
        // is the oscillator algebra in its adapted basis after relabeling
        // the fiber coordinate to the last slot.
        let e2 = catalog::named_algebra("e2", &ParamBindings::new()).unwrap();
        let fiber = trivial_fiber(1).certify(AlgebraKind::Lie).unwrap();
        let mut omega = BilinearMap::zero(3, 1);
        omega.set(1, 2, vec![Scalar::one()]);
        omega.set(2, 1, vec![Scalar::int(-1)]);
        let phi = vec![ExactMatrix::zeros(1, 1, RingTag::Rational); 3];
        let data = LieExtensionData::new(fiber, e2, phi, omega).unwrap();
        let (built, verdict) = lie_extend(&data).unwrap();
        assert!(verdict.conditions_hold() && verdict.jacobi && verdict.consistent);
        assert!(data.factor_system_check().unwrap());

        // coordinates are (fiber, e1, e2, e3); move the fiber to slot 4
        let perm = ExactMatrix::from_rows(vec![
            vec![Scalar::zero(), Scalar::one(), Scalar::zero(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::zero(), Scalar::one(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::one()],
            vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::zero()],
        ])
        .unwrap();
        let adapted = catalog::named_algebra("o4-adapted", &ParamBindings::new()).unwrap();
        let v = crate::algebra::check_morphism(&perm, &built, &adapted, true).unwrap();
        assert!(v.holds(true));
    }

    #[test]
    fn direct_sum_passes_jacobi() {
        let e2 = catalog::named_algebra("e2", &ParamBindings::new()).unwrap();
        let fiber = trivial_fiber(1).certify(AlgebraKind::Lie).unwrap();
        let data = LieExtensionData::new(
            fiber,
            e2,
            vec![ExactMatrix::zeros(1, 1, RingTag::Rational); 3],
            BilinearMap::zero(3, 1),
        )
        .unwrap();
        let (_, verdict) = lie_extend(&data).unwrap();
        assert!(verdict.jacobi && verdict.conditions_hold() && verdict.consistent);
    }

    #[test]
    fn non_derivation_phi_fails_both_ways() {
        // fiber H3, base R, phi(1) not a derivation: condition and Jacobi
        // must fail together.
        let h3 = catalog::named_algebra("h3", &ParamBindings::new()).unwrap();
        let base = trivial_fiber(1).certify(AlgebraKind::Lie).unwrap();
        // D(e1) = e1 and zero otherwise violates Leibniz for [e1,e2] = e3
        let mut bad = ExactMatrix::zeros(3, 3, RingTag::Rational);
        bad.set(0, 0, Scalar::one());
        assert!(!h3.is_derivation(&bad).unwrap());
        let data =
            LieExtensionData::new(h3, base, vec![bad], BilinearMap::zero(1, 3)).unwrap();
        let (_, verdict) = lie_extend(&data).unwrap();
        assert!(!verdict.acts_by_derivations);
        assert!(!verdict.jacobi);
        assert!(verdict.consistent);
    }

    #[test]
    fn factor_check_representation_and_violation() {
        // phi a true representation with omega = 0 passes; breaking
        // commutativity of the images on an abelian base fails.
        let fiber = catalog::named_algebra("h3", &ParamBindings::new()).unwrap();
        let base2 = Algebra::bilinear(
            "ab2",
            2,
            RingTag::Rational,
            vec![Scalar::zero(); 8],
            vec![],
        )
        .unwrap()
        .certify(AlgebraKind::Lie)
        .unwrap();
        // inner derivations ad(e1), ad(e2) of H3 commute, so they define a
        // representation of the abelian plane
        let ad1 = fiber.operator_matrix(Side::Left, &fiber.basis_element(0)).unwrap();
        let ad2 = fiber.operator_matrix(Side::Left, &fiber.basis_element(1)).unwrap();
        let good = LieExtensionData::new(
            fiber.clone(),
            base2.clone(),
            vec![ad1.clone(), ad2.clone()],
            BilinearMap::zero(2, 3),
        )
        .unwrap();
        assert!(good.factor_system_check().unwrap());

        // a diagonal derivation does not commute with a nilpotent one
        let mut diag = ExactMatrix::zeros(3, 3, RingTag::Rational);
        diag.set(0, 0, Scalar::one());
        diag.set(2, 2, Scalar::one());
        assert!(fiber.is_derivation(&diag).unwrap());
        let bad = LieExtensionData::new(fiber, base2, vec![ad1, diag], BilinearMap::zero(2, 3))
            .unwrap();
        assert!(!bad.factor_system_check().unwrap());
    }

    #[test]
    fn central_extension_of_a3_is_the_a4abc_family() {
        let a3 = catalog::named_algebra("a3", &bindings(&[("eps", rint(0))])).unwrap();
        let mut g = BilinearMap::zero(3, 1);
        let (alpha, beta, gamma) = (rat(2, 1), rat(4, 1), rat(2, 1));
        g.set(0, 0, vec![Scalar::Rat(alpha.clone())]);
        g.set(1, 1, vec![Scalar::Rat(beta.clone())]);
        g.set(2, 2, vec![Scalar::Rat(beta.clone())]);
        g.set(1, 2, vec![Scalar::Rat(gamma.clone())]);
        g.set(2, 1, vec![Scalar::Rat(-gamma.clone())]);
        let built = central_extend(&a3, &g).unwrap();
        let expected = catalog::named_algebra(
            "a4abc",
            &bindings(&[("alpha", alpha), ("beta", beta), ("gamma", gamma)]),
        )
        .unwrap();
        assert_eq!(built.tensor(), expected.tensor());
        // the fiber sits inside the center and the extension is exact
        let center = built.lsa_center().unwrap();
        assert!(center.contains(&built.basis_element(3)));
        assert_eq!(center.dim(), 1);
        assert!(exactness_ideal(&a3, &g).unwrap().is_zero());
    }

    #[test]
    fn symmetric_cocycle_part_changes_the_lie_algebra() {
        // replacing the skew pair g(e2,e3) = -g(e3,e2) by a symmetric pair
        // breaks the cocycle condition (the six-term coboundary at
        // (e1,e2,e2) evaluates to -2), and with it left-symmetry of the
        // built product -- the two verdicts agree. The extracted Lie cocycle
        // g - g^T vanishes, so the candidate bracket is the degenerate
        // direct-sum one: the 3-step solvable structure is lost.
        let a3 = catalog::named_algebra("a3", &bindings(&[("eps", rint(0))])).unwrap();
        let mut g = BilinearMap::zero(3, 1);
        g.set(1, 2, vec![Scalar::one()]);
        g.set(2, 1, vec![Scalar::one()]);
        let fiber = trivial_fiber(1);
        let data = LsaExtensionData::central(fiber, a3, g).unwrap();
        let (built, verdict) = lsa_extend(&data).unwrap();
        assert!(!verdict.conditions[4], "the cocycle condition must fail");
        assert!(!verdict.left_symmetric);
        assert!(verdict.consistent);
        assert!(data.extracted_lie_cocycle().is_zero());

        // antisymmetrizing the built tensor still yields a Lie algebra here
        // (the direct sum of the base bracket with an abelian line), but its
        // derived series is shorter than the oscillator one
        let dim = built.dim();
        let mut tensor = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for kk in 0..dim {
                    tensor.push(built.c(i, j, kk).sub(built.c(j, i, kk)));
                }
            }
        }
        let lie = Algebra::bilinear("skewed", dim, built.ring(), tensor, vec![])
            .unwrap()
            .certify(AlgebraKind::Lie)
            .unwrap();
        let inv = lie.lie_invariants().unwrap();
        let reference = catalog::named_algebra("o4-adapted", &ParamBindings::new())
            .unwrap()
            .lie_invariants()
            .unwrap();
        assert_ne!(inv, reference);
        assert_eq!(inv.derived_dims, vec![4, 2, 0]);
        assert_eq!(reference.derived_dims, vec![4, 3, 1, 0]);
    }

    #[test]
    fn delta1_matrix_shape_case1() {
        let a3 = catalog::named_algebra("a3", &bindings(&[("eps", rint(0))])).unwrap();
        let ctx = BimoduleCtx::trivial(a3, 1);
        let h = {
            let mut m = ExactMatrix::zeros(1, 3, RingTag::Rational);
            m.set(0, 1, Scalar::int(7)); // h(e2) = 7
            m.set(0, 2, Scalar::int(5)); // h(e3) = 5
            m
        };
        let d1 = ctx.delta1(&h).unwrap();
        // only slots (1,2) and (1,3): -h(e3) and h(e2)
        assert_eq!(d1.at(0, 1), &vec![Scalar::int(-5)]);
        assert_eq!(d1.at(0, 2), &vec![Scalar::int(7)]);
        let mut rest = 0;
        for i in 0..3 {
            for j in 0..3 {
                if (i, j) != (0, 1) && (i, j) != (0, 2) && !element_is_zero(d1.at(i, j)) {
                    rest += 1;
                }
            }
        }
        assert_eq!(rest, 0);
        assert!(ctx.delta1(&ExactMatrix::zeros(1, 3, RingTag::Rational)).unwrap().is_zero());
    }

    #[test]
    fn delta1_case2_has_diagonal_entry() {
        let a3 = catalog::named_algebra("a3", &bindings(&[("eps", rint(1))])).unwrap();
        let ctx = BimoduleCtx::trivial(a3, 1);
        let mut h = ExactMatrix::zeros(1, 3, RingTag::Rational);
        h.set(0, 0, Scalar::int(3)); // h(e1) = 3
        let d1 = ctx.delta1(&h).unwrap();
        // h22 = -h(e1) shows up on (2,2) and (3,3)
        assert_eq!(d1.at(1, 1), &vec![Scalar::int(-3)]);
        assert_eq!(d1.at(2, 2), &vec![Scalar::int(-3)]);
    }

    #[test]
    fn delta2_after_delta1_is_zero_exactly() {
        for eps in [0i64, 1] {
            let a3 = catalog::named_algebra("a3", &bindings(&[("eps", rint(eps))])).unwrap();
            let ctx = BimoduleCtx::trivial(a3, 1);
            let d1 = ctx.delta1_matrix().unwrap();
            let d2 = ctx.delta2_matrix().unwrap();
            assert!(d2.mul(&d1).unwrap().is_zero());
        }
    }

    #[test]
    fn h2_dimensions_for_both_cases() {
        let a3_0 = catalog::named_algebra("a3", &bindings(&[("eps", rint(0))])).unwrap();
        let coh0 = cohomology_h2(&BimoduleCtx::trivial(a3_0, 1)).unwrap();
        assert_eq!(coh0.z2.dim(), 5);
        assert_eq!(coh0.b2.dim(), 2);
        assert_eq!(coh0.h2_dim, 3);

        let a3_1 = catalog::named_algebra("a3", &bindings(&[("eps", rint(1))])).unwrap();
        let coh1 = cohomology_h2(&BimoduleCtx::trivial(a3_1, 1)).unwrap();
        assert_eq!(coh1.z2.dim(), 4);
        assert_eq!(coh1.b2.dim(), 3);
        assert_eq!(coh1.h2_dim, 1);
    }

    #[test]
    fn trivial_base_h2_is_everything() {
        let i0 = catalog::named_algebra("i0", &ParamBindings::new()).unwrap();
        let coh = cohomology_h2(&BimoduleCtx::trivial(i0, 1)).unwrap();
        assert_eq!(coh.z2.dim(), 1);
        assert_eq!(coh.b2.dim(), 0);
        assert_eq!(coh.h2_dim, 1);
    }

    #[test]
    fn exactness_ideal_cases() {
        let a3 = catalog::named_algebra("a3", &bindings(&[("eps", rint(0))])).unwrap();
        // even with g = 0 the products alone force x = 0 on this base
        assert!(exactness_ideal(&a3, &BilinearMap::zero(3, 1)).unwrap().is_zero());
        let i0 = catalog::named_algebra("i0", &ParamBindings::new()).unwrap();
        let full = exactness_ideal(&i0, &BilinearMap::zero(1, 1)).unwrap();
        assert!(full.is_full());
    }

    #[test]
    fn extracted_lie_data_matches_the_built_bracket() {
        // the commutator of the built product determines the alternating
        // cocycle g - g^T on the fiber component and the action lambda - rho;
        // for central data both vanish
        let fiber = catalog::named_algebra("h3-lsa-a", &bindings(&[("p", rint(0)), ("q", rint(0))]))
            .unwrap();
        let base = catalog::named_algebra("i0", &ParamBindings::new()).unwrap();
        // lambda = an LSA derivation of the fiber, rho = 0, g(e0,e0) = e3:
        // a valid one-dimensional-base instance
        let ders = fiber.derivations().unwrap();
        let lam = fiber.derivation_matrix(&ders.basis()[0]).unwrap();
        let rho = ExactMatrix::zeros(3, 3, RingTag::Rational);
        let mut g = BilinearMap::zero(1, 3);
        g.set(0, 0, vec![Scalar::zero(), Scalar::zero(), Scalar::one()]);
        let data =
            LsaExtensionData::new(fiber.clone(), base, vec![lam.clone()], vec![rho], g).unwrap();
        let (built, verdict) = lsa_extend(&data).unwrap();
        assert!(verdict.conditions_hold(), "{verdict:?}");
        assert!(verdict.left_symmetric && verdict.consistent);
        assert_eq!(verdict.one_dim_base, Some([true, true, true]));

        // fiber component of [(x,0),(y,0)] equals g(x,y) - g(y,x) (here 0)
        let omega = data.extracted_lie_cocycle();
        assert!(omega.is_zero());
        let bx = built.basis_element(0); // the base coordinate
        let by = built.basis_element(0);
        let br = built.bracket(&bx, &by).unwrap();
        assert!(element_is_zero(&br));
        // action of the bracket on fiber vectors is lambda - rho
        let action = data.extracted_lie_action().unwrap();
        for j in 0..3 {
            let fj = built.basis_element(1 + j);
            let lhs = built.bracket(&bx, &fj).unwrap();
            let expected = action[0].mul_vec(
                &fiber.basis_element(j)
            ).unwrap();
            assert_eq!(&lhs[1..4], &expected[..]);
        }
    }

    #[test]
    fn central_case_forces_matching_actions() {
        // in a central extension lambda = rho = 0, so the extracted Lie
        // action vanishes and omega(x,y) = g(x,y) - g(y,x)
        let a3 = catalog::named_algebra("a3", &bindings(&[("eps", rint(0))])).unwrap();
        let mut g = BilinearMap::zero(3, 1);
        g.set(0, 0, vec![Scalar::int(2)]);
        g.set(1, 2, vec![Scalar::one()]);
        g.set(2, 1, vec![Scalar::int(-1)]);
        let fiber = trivial_fiber(1);
        let data = LsaExtensionData::central(fiber, a3, g.clone()).unwrap();
        let (built, verdict) = lsa_extend(&data).unwrap();
        assert!(verdict.left_symmetric);
        for m in data.extracted_lie_action().unwrap() {
            assert!(m.is_zero());
        }
        let omega = data.extracted_lie_cocycle();
        for i in 0..3 {
            for j in 0..3 {
                let br = built
                    .bracket(&built.basis_element(i), &built.basis_element(j))
                    .unwrap();
                assert_eq!(&br[3..4], &omega.at(i, j)[..], "({i},{j})");
            }
        }
    }

    #[test]
    fn quotient_of_central_extension_reproduces_the_base() {
        let a3 = catalog::named_algebra("a3", &bindings(&[("eps", rint(1))])).unwrap();
        let mut g = BilinearMap::zero(3, 1);
        g.set(1, 2, vec![Scalar::one()]);
        g.set(2, 1, vec![Scalar::int(-1)]);
        let built = central_extend(&a3, &g).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    assert_eq!(built.c(i, j, k), a3.c(i, j, k));
                }
            }
        }
        assert!(built.lsa_center().unwrap().contains(&built.basis_element(3)));
    }

    #[test]
    fn translation_ideal_of_fiber_extension_matches_kernel_formula() {
        // for extensions of the one-dimensional trivial base by a
        // 3-dimensional fiber: T(A) intersected with the fiber equals
        // T(fiber) intersected with ker rho
        let base = catalog::named_algebra("i0", &ParamBindings::new()).unwrap();

        // instance 1: the decomposition of the two-parameter family along
        // its Heisenberg ideal: lambda = rotation, rho = 0, e = s f3
        let fiber = catalog::named_algebra(
            "h3-lsa-a",
            &bindings(&[("p", rint(1)), ("q", rint(1))]),
        )
        .unwrap();
        let lam = ExactMatrix::from_rows(vec![
            vec![Scalar::zero(), Scalar::int(-1), Scalar::zero()],
            vec![Scalar::one(), Scalar::zero(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::zero(), Scalar::zero()],
        ])
        .unwrap();
        let rho = ExactMatrix::zeros(3, 3, RingTag::Rational);
        let mut g = BilinearMap::zero(1, 3);
        g.set(0, 0, vec![Scalar::zero(), Scalar::zero(), Scalar::int(1)]);
        let data = LsaExtensionData::new(fiber.clone(), base.clone(), vec![lam], vec![rho.clone()], g)
            .unwrap();
        let (built, verdict) = lsa_extend(&data).unwrap();
        assert!(verdict.left_symmetric && verdict.consistent, "{verdict:?}");

        let t_a = built.translation_ideal().unwrap();
        // intersect with the fiber (coordinates 1..4)
        let fiber_space = Subspace::from_spanning(
            4,
            RingTag::Rational,
            (1..4)
                .map(|i| {
                    let mut v = vec![Scalar::zero(); 4];
                    v[i] = Scalar::one();
                    v
                })
                .collect(),
        )
        .unwrap();
        let lhs = t_a.intersect(&fiber_space).unwrap();
        let t_fiber = fiber.translation_ideal().unwrap();
        let ker_rho = rho.kernel().unwrap(); // everything
        let rhs = t_fiber.intersect(&ker_rho).unwrap();
        // embed rhs into the 4-dimensional total space (fiber slots 1..4)
        let rhs_embedded = Subspace::from_spanning(
            4,
            RingTag::Rational,
            rhs.basis()
                .iter()
                .map(|v| {
                    let mut w = vec![Scalar::zero(); 4];
                    w[1..4].clone_from_slice(v);
                    w
                })
                .collect(),
        )
        .unwrap();
        assert_eq!(lhs, rhs_embedded);
        assert_eq!(lhs.dim(), 1);

        // instance 2: lambda an LSA derivation, rho = 0, e = f3 on the
        // p = q = 0 fiber
        let fiber0 = catalog::named_algebra(
            "h3-lsa-a",
            &bindings(&[("p", rint(0)), ("q", rint(0))]),
        )
        .unwrap();
        let ders = fiber0.derivations().unwrap();
        let lam0 = fiber0.derivation_matrix(&ders.basis()[1]).unwrap();
        let mut g0 = BilinearMap::zero(1, 3);
        g0.set(0, 0, vec![Scalar::zero(), Scalar::zero(), Scalar::one()]);
        let data0 =
            LsaExtensionData::new(fiber0.clone(), base, vec![lam0], vec![rho.clone()], g0).unwrap();
        let (built0, v0) = lsa_extend(&data0).unwrap();
        if v0.left_symmetric {
            let lhs0 = built0
                .translation_ideal()
                .unwrap()
                .intersect(&fiber_space)
                .unwrap();
            let rhs0 = fiber0
                .translation_ideal()
                .unwrap()
                .intersect(&rho.kernel().unwrap())
                .unwrap();
            assert_eq!(lhs0.dim(), rhs0.dim());
        }
    }

    #[test]
    fn general_bimodule_contexts_satisfy_the_complex_property() {
        // the regular bimodule of a left-symmetric algebra: lambda = L,
        // rho = R satisfy the two compatibility conditions, and
        // delta2 . delta1 = 0 holds for the resulting non-trivial context
        let a3 = catalog::named_algebra("a3", &bindings(&[("eps", rint(1))])).unwrap();
        let lambdas: Vec<ExactMatrix> = (0..3)
            .map(|i| a3.operator_matrix(Side::Left, &a3.basis_element(i)).unwrap())
            .collect();
        let rhos: Vec<ExactMatrix> = (0..3)
            .map(|i| a3.operator_matrix(Side::Right, &a3.basis_element(i)).unwrap())
            .collect();
        let ctx = BimoduleCtx::new(a3, 3, lambdas, rhos).unwrap();
        let d1 = ctx.delta1_matrix().unwrap();
        let d2 = ctx.delta2_matrix().unwrap();
        assert_eq!((d1.rows(), d1.cols()), (27, 9));
        assert_eq!((d2.rows(), d2.cols()), (81, 27));
        assert!(d2.mul(&d1).unwrap().is_zero());

        // a nilpotent action pair on a one-dimensional base
        let i0 = catalog::named_algebra("i0", &ParamBindings::new()).unwrap();
        let mut nil = ExactMatrix::zeros(2, 2, RingTag::Rational);
        nil.set(0, 1, Scalar::one());
        let ctx = BimoduleCtx::new(i0, 2, vec![nil.clone()], vec![nil]).unwrap();
        let d1 = ctx.delta1_matrix().unwrap();
        let d2 = ctx.delta2_matrix().unwrap();
        assert!(d2.mul(&d1).unwrap().is_zero());

        // and a pair violating the compatibility conditions is rejected
        let i0 = catalog::named_algebra("i0", &ParamBindings::new()).unwrap();
        let mut bad = ExactMatrix::zeros(2, 2, RingTag::Rational);
        bad.set(0, 0, Scalar::one()); // rho^2 != 0 while [lambda, rho] = 0
        assert!(BimoduleCtx::new(
            i0,
            2,
            vec![ExactMatrix::zeros(2, 2, RingTag::Rational)],
            vec![bad]
        )
        .is_err());
    }

    #[test]
    fn non_cocycle_is_rejected_by_central_extend() {
        let a3 = catalog::named_algebra("a3", &bindings(&[("eps", rint(0))])).unwrap();
        let mut g = BilinearMap::zero(3, 1);
        g.set(1, 0, vec![Scalar::one()]); // g21 != 0 violates the cocycle shape
        assert!(central_extend(&a3, &g).is_err());
    }
}
