//! Affine realization of complete left-symmetric algebras: the
//! representation X -> (L_X, X) into affine maps, numeric exponentials, the
//! closed-form subgroups, and the sampling harnesses that verify simple
//! transitivity and the closed-form matrix entries.
//!
//! This is the only module that computes in doubles. Every check carries an
//! explicit tolerance and an explicit seed, and reports are deterministic
//! given the seed.

use crate::algebra::{Algebra, AlgebraKind, Side};
use crate::{Error, Result};
use lsa_exact::{Rat, RingTag};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

// ---------------------------------------------------------------------------
// special functions

/// sin(x)/x, continued by 1 at x = 0.
pub fn f(x: f64) -> f64 {
    if x.abs() < 1e-2 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0 - x2 * x2 * x2 / 5040.0
    } else {
        x.sin() / x
    }
}

/// (1 - cos(x))/x, continued by 0 at x = 0.
pub fn g(x: f64) -> f64 {
    if x.abs() < 1e-2 {
        let x2 = x * x;
        x / 2.0 - x * x2 / 24.0 + x * x2 * x2 / 720.0
    } else {
        (1.0 - x.cos()) / x
    }
}

/// (x - sin(x))/x^2, continued by 0 at x = 0.
pub fn h(x: f64) -> f64 {
    if x.abs() < 1e-2 {
        let x2 = x * x;
        x / 6.0 - x * x2 / 120.0 + x * x2 * x2 / 5040.0
    } else {
        (x - x.sin()) / (x * x)
    }
}

/// (1 - cos(x))/x^2, continued by 1/2 at x = 0.
pub fn k(x: f64) -> f64 {
    if x.abs() < 1e-2 {
        let x2 = x * x;
        0.5 - x2 / 24.0 + x2 * x2 / 720.0
    } else {
        (1.0 - x.cos()) / (x * x)
    }
}

/// The row-four entries of the one-parameter rotation family:
/// Phi_t = (y/2 + t z) g(x) - (z/2 - t y) f(x),
/// Psi_t = (y/2 + t z) f(x) + (z/2 - t y) g(x).
pub fn phi_psi(t: f64, x: f64, y: f64, z: f64) -> (f64, f64) {
    let a = t * y - z / 2.0;
    let b = y / 2.0 + t * z;
    (a * f(x) + b * g(x), b * f(x) - a * g(x))
}

// ---------------------------------------------------------------------------
// affine elements

/// An affine map v -> A v + b in doubles.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineElement {
    pub n: usize,
    /// row-major n x n linear part
    pub linear: Vec<f64>,
    pub translation: Vec<f64>,
}

impl AffineElement {
    pub fn identity(n: usize) -> Self {
        let mut linear = vec![0.0; n * n];
        for i in 0..n {
            linear[i * n + i] = 1.0;
        }
        AffineElement { n, linear, translation: vec![0.0; n] }
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.linear[i * self.n + j]
    }

    /// (A1, b1) o (A2, b2) = (A1 A2, A1 b2 + b1).
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.n;
        let mut linear = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0.0;
                for l in 0..n {
                    acc += self.linear[i * n + l] * other.linear[l * n + j];
                }
                linear[i * n + j] = acc;
            }
        }
        let mut translation = self.translation.clone();
        for i in 0..n {
            for l in 0..n {
                translation[i] += self.linear[i * n + l] * other.translation[l];
            }
        }
        AffineElement { n, linear, translation }
    }

    pub fn act(&self, v: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut out = self.translation.clone();
        for i in 0..n {
            for j in 0..n {
                out[i] += self.linear[i * n + j] * v[j];
            }
        }
        out
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let inv = invert_f64(&self.linear, n)?;
        let mut translation = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                translation[i] -= inv[i * n + j] * self.translation[j];
            }
        }
        Some(AffineElement { n, linear: inv, translation })
    }

    /// Largest absolute entry difference across linear and translation parts.
    pub fn max_diff(&self, other: &Self) -> f64 {
        let mut m: f64 = 0.0;
        for (a, b) in self.linear.iter().zip(&other.linear) {
            m = m.max((a - b).abs());
        }
        for (a, b) in self.translation.iter().zip(&other.translation) {
            m = m.max((a - b).abs());
        }
        m
    }
}

fn invert_f64(a: &[f64], n: usize) -> Option<Vec<f64>> {
    let mut aug = vec![0.0; n * 2 * n];
    for i in 0..n {
        for j in 0..n {
            aug[i * 2 * n + j] = a[i * n + j];
        }
        aug[i * 2 * n + n + i] = 1.0;
    }
    for col in 0..n {
        let piv = (col..n).max_by(|&r1, &r2| {
            aug[r1 * 2 * n + col]
                .abs()
                .total_cmp(&aug[r2 * 2 * n + col].abs())
        })?;
        if aug[piv * 2 * n + col].abs() < 1e-14 {
            return None;
        }
        if piv != col {
            for j in 0..2 * n {
                aug.swap(col * 2 * n + j, piv * 2 * n + j);
            }
        }
        let d = aug[col * 2 * n + col];
        for j in 0..2 * n {
            aug[col * 2 * n + j] /= d;
        }
        for r in 0..n {
            if r != col {
                let factor = aug[r * 2 * n + col];
                if factor != 0.0 {
                    for j in 0..2 * n {
                        aug[r * 2 * n + j] -= factor * aug[col * 2 * n + j];
                    }
                }
            }
        }
    }
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = aug[i * 2 * n + n + j];
        }
    }
    Some(out)
}

/// An infinitesimal affine map (L_X, X), lowered to doubles from exact data.
#[derive(Clone, Debug)]
pub struct AffineGenerator {
    pub n: usize,
    pub linear: Vec<f64>,
    pub translation: Vec<f64>,
}

impl AffineGenerator {
    pub fn scale(&self, c: f64) -> Self {
        AffineGenerator {
            n: self.n,
            linear: self.linear.iter().map(|v| v * c).collect(),
            translation: self.translation.iter().map(|v| v * c).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1.0)
    }
}

/// The affine realization of a certified complete LSA over the rationals:
/// X -> (L_X, X). Construction verifies completeness and the Lie
/// representation identity [hom X, hom Y] = hom [X, Y] exactly on all basis
/// pairs before anything is lowered to doubles.
pub struct AffineRealization {
    pub n: usize,
    pub algebra_name: String,
    basis_ops: Vec<Vec<f64>>,
    /// basis directions whose left-multiplication operator is not nilpotent
    /// (decided exactly); along these the exponential has rotation walls and
    /// the orbit solver scans them for separate Newton basins
    non_nilpotent_dirs: Vec<usize>,
}

impl AffineRealization {
    pub fn new(a: &Algebra) -> Result<Self> {
        if a.kind() != AlgebraKind::LeftSymmetric || a.ring() != RingTag::Rational {
            return Err(Error::Precondition(
                "affine realization needs a certified rational LSA".into(),
            ));
        }
        if !a.is_complete()?.complete {
            return Err(Error::Precondition(format!(
                "{} is not complete; its affine action is not simply transitive",
                a.name
            )));
        }
        verify_representation(a)?;
        let n = a.dim();
        let mut basis_ops = Vec::with_capacity(n);
        let mut non_nilpotent_dirs = Vec::new();
        for i in 0..n {
            let l = a.operator_matrix(Side::Left, &a.basis_element(i))?;
            let traces = l.power_traces(n).map_err(Error::from)?;
            if traces.iter().any(|t| !t.is_zero()) {
                non_nilpotent_dirs.push(i);
            }
            let rows = l
                .to_f64_rows()
                .ok_or_else(|| Error::Precondition("non-numeric operator entries".into()))?;
            basis_ops.push(rows.into_iter().flatten().collect());
        }
        Ok(AffineRealization { n, algebra_name: a.name.clone(), basis_ops, non_nilpotent_dirs })
    }

    /// (L_X, X) at double coordinates.
    pub fn generator(&self, x: &[f64]) -> AffineGenerator {
        let n = self.n;
        let mut linear = vec![0.0; n * n];
        for (i, op) in self.basis_ops.iter().enumerate() {
            if x[i] != 0.0 {
                for (slot, v) in linear.iter_mut().zip(op) {
                    *slot += x[i] * v;
                }
            }
        }
        AffineGenerator { n, linear, translation: x.to_vec() }
    }

    pub fn exp_at(&self, x: &[f64], tol: f64) -> AffineElement {
        affine_exp(&self.generator(x), tol)
    }

    /// The orbit map at the origin: X -> exp(hom X) . 0.
    pub fn orbit_of_zero(&self, x: &[f64], tol: f64) -> Vec<f64> {
        self.exp_at(x, tol).translation
    }
}

/// Exact check of the Lie representation identity for X -> (L_X, X): on all
/// basis pairs, [L_i, L_j] = L_{[e_i, e_j]} and L_i e_j - L_j e_i =
/// [e_i, e_j]. This is precisely left-symmetry plus bracket compatibility.
pub fn verify_representation(a: &Algebra) -> Result<()> {
    for i in 0..a.dim() {
        for j in 0..i {
            let li = a.operator_matrix(Side::Left, &a.basis_element(i))?;
            let lj = a.operator_matrix(Side::Left, &a.basis_element(j))?;
            let comm = li
                .mul(&lj)
                .map_err(Error::from)?
                .sub(&lj.mul(&li).map_err(Error::from)?)
                .map_err(Error::from)?;
            let bracket = a.bracket(&a.basis_element(i), &a.basis_element(j))?;
            let l_bracket = a.operator_matrix(Side::Left, &bracket)?;
            if comm != l_bracket {
                return Err(Error::IdentityCheckFailed(format!(
                    "{}: [L_{i}, L_{j}] != L_[e{i},e{j}]",
                    a.name
                )));
            }
            let lhs = crate::algebra::sub_elements(
                &li.mul_vec(&a.basis_element(j)).map_err(Error::from)?,
                &lj.mul_vec(&a.basis_element(i)).map_err(Error::from)?,
            );
            if lhs != bracket {
                return Err(Error::IdentityCheckFailed(format!(
                    "{}: L_i e_j - L_j e_i != [e_i, e_j] at ({i}, {j})",
                    a.name
                )));
            }
        }
    }
    Ok(())
}

/// Convenience wrapper building a single generator from rational coordinates
/// (with the full exact verification of the realization).
pub fn affine_hom(a: &Algebra, x: &[Rat]) -> Result<AffineGenerator> {
    let real = AffineRealization::new(a)?;
    let coords: Vec<f64> = x
        .iter()
        .map(|r| lsa_exact::Scalar::Rat(r.clone()).to_f64().unwrap())
        .collect();
    Ok(real.generator(&coords))
}

// compensated (double-double) arithmetic for the exponential kernel: the
// scaling-and-squaring route passes through intermediates much larger than
// the result near the rotation walls, and plain f64 squaring would cap the
// reachable orbit accuracy around 1e-8 there
#[derive(Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    fn from(v: f64) -> Dd {
        Dd { hi: v, lo: 0.0 }
    }

    fn two_sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        Dd { hi: s, lo: err }
    }

    fn add(self, other: Dd) -> Dd {
        let s = Dd::two_sum(self.hi, other.hi);
        let lo = s.lo + self.lo + other.lo;
        let r = Dd::two_sum(s.hi, lo);
        Dd { hi: r.hi, lo: r.lo }
    }

    fn mul(self, other: Dd) -> Dd {
        let p = self.hi * other.hi;
        let err = self.hi.mul_add(other.hi, -p);
        let lo = err + self.hi * other.lo + self.lo * other.hi;
        let r = Dd::two_sum(p, lo);
        Dd { hi: r.hi, lo: r.lo }
    }

    fn div_f64(self, d: f64) -> Dd {
        let q0 = self.hi / d;
        // remainder computed exactly via fma
        let r_hi = (-q0).mul_add(d, self.hi);
        let q1 = (r_hi + self.lo) / d;
        let r = Dd::two_sum(q0, q1);
        Dd { hi: r.hi, lo: r.lo }
    }

    fn abs(self) -> f64 {
        self.hi.abs()
    }
}

fn dd_mat_mul(a: &[Dd], b: &[Dd], n: usize) -> Vec<Dd> {
    let mut out = vec![Dd::ZERO; n * n];
    for i in 0..n {
        for l in 0..n {
            let v = a[i * n + l];
            if v.hi != 0.0 || v.lo != 0.0 {
                for j in 0..n {
                    out[i * n + j] = out[i * n + j].add(v.mul(b[l * n + j]));
                }
            }
        }
    }
    out
}

/// Exponential of the homogeneous (n+1)x(n+1) matrix [[L, v], [0, 0]] by
/// scaling and squaring with a truncated Taylor kernel, computed in
/// compensated arithmetic; for nilpotent L the series terminates on its own.
/// `tol` is the truncation target for the scaled kernel.
pub fn affine_exp(gen: &AffineGenerator, tol: f64) -> AffineElement {
    let n = gen.n;
    let m = n + 1;
    let mut hom = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            hom[i * m + j] = gen.linear[i * n + j];
        }
        hom[i * m + n] = gen.translation[i];
    }
    // scale so the kernel norm is at most 1/4
    let norm = inf_norm(&hom, m);
    let mut s = 0u32;
    while norm / f64::powi(2.0, s as i32) > 0.25 && s < 60 {
        s += 1;
    }
    let scale = f64::powi(2.0, s as i32);
    let scaled: Vec<Dd> = hom.iter().map(|v| Dd::from(v / scale)).collect();
    // Taylor kernel
    let mut acc: Vec<Dd> = (0..m * m)
        .map(|idx| if idx % (m + 1) == 0 { Dd::from(1.0) } else { Dd::ZERO })
        .collect();
    let mut term = acc.clone();
    let target = (tol.min(1e-24)).max(1e-300);
    for kk in 1..=48 {
        term = dd_mat_mul(&term, &scaled, m);
        for v in term.iter_mut() {
            *v = v.div_f64(kk as f64);
        }
        for (a, b) in acc.iter_mut().zip(&term) {
            *a = a.add(*b);
        }
        if term.iter().map(|v| v.abs()).fold(0.0, f64::max) < target {
            break;
        }
    }
    for _ in 0..s {
        acc = dd_mat_mul(&acc, &acc, m);
    }
    let mut linear = vec![0.0; n * n];
    let mut translation = vec![0.0; n];
    for i in 0..n {
        for j in 0..n {
            linear[i * n + j] = acc[i * m + j].hi + acc[i * m + j].lo;
        }
        translation[i] = acc[i * m + n].hi + acc[i * m + n].lo;
    }
    AffineElement { n, linear, translation }
}

fn inf_norm(a: &[f64], n: usize) -> f64 {
    (0..n)
        .map(|i| (0..n).map(|j| a[i * n + j].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

// ---------------------------------------------------------------------------
// closed forms

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CaseKind {
    /// the closed form realizing the isolated structure (B4-type)
    G4,
    /// the closed form realizing the two-parameter family (A4(s,t)-type)
    G4St,
}

impl CaseKind {
    pub fn parse(s: &str) -> Option<CaseKind> {
        match s.to_lowercase().as_str() {
            "g4" => Some(CaseKind::G4),
            "g4st" | "g4(s,t)" => Some(CaseKind::G4St),
            _ => None,
        }
    }
}

/// The closed-form group element for the given case and parameters.
pub fn closed_form_element(case: CaseKind, s: f64, t: f64, x: f64, y: f64, z: f64, w: f64) -> AffineElement {
    let (cx, sx) = (x.cos(), x.sin());
    let r2 = y * y + z * z;
    match case {
        CaseKind::G4 => {
            let (phi, psi) = phi_psi(0.0, x, y, z);
            let linear = vec![
                1.0, y * f(x) + z * g(x), z * f(x) - y * g(x), 0.0,
                0.0, cx, -sx, 0.0,
                0.0, sx, cx, 0.0,
                0.0, phi, psi, 1.0,
            ];
            let translation = vec![
                x + r2 * k(x),
                y * f(x) - z * g(x),
                z * f(x) + y * g(x),
                w + r2 / 2.0 * h(x),
            ];
            AffineElement { n: 4, linear, translation }
        }
        CaseKind::G4St => {
            let (phi, psi) = phi_psi(t, x, y, z);
            let linear = vec![
                1.0, 0.0, 0.0, 0.0,
                0.0, cx, -sx, 0.0,
                0.0, sx, cx, 0.0,
                s * x, phi, psi, 1.0,
            ];
            let translation = vec![
                x,
                y * f(x) - z * g(x),
                z * f(x) + y * g(x),
                w + s / 2.0 * x * x + r2 * (h(x) / 2.0 + t * k(x)),
            ];
            AffineElement { n: 4, linear, translation }
        }
    }
}

/// Result of fitting an affine element back into the closed form.
#[derive(Clone, Debug, Serialize)]
pub struct MembershipFit {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub w: f64,
    pub residual: f64,
    pub degenerate: bool,
    pub candidates_tried: usize,
}

/// Recover (x, y, z, w) from an affine element against the closed form:
/// the angle from the rotation block (principal branch plus up to three
/// extra turns), then (y, z) from the second and third translation
/// components through the [[f, -g], [g, f]] system, then w from the fourth.
/// Near x in 2 pi Z \ {0} the system degenerates (f = g = k = 0) and only a
/// y = z = 0 reconstruction is attempted, flagged as degenerate.
pub fn closed_form_membership(
    e: &AffineElement,
    case: CaseKind,
    s: f64,
    t: f64,
    tol: f64,
) -> MembershipFit {
    let det_floor = tol.clamp(1e-14, 1e-6);
    let base_angle = e.at(2, 1).atan2(e.at(1, 1));
    let t2 = e.translation[1];
    let t3 = e.translation[2];
    let t4 = e.translation[3];
    let mut best: Option<MembershipFit> = None;
    let mut tried = 0;
    for m in -3i32..=3 {
        let x = base_angle + 2.0 * std::f64::consts::PI * m as f64;
        tried += 1;
        let (fx, gx) = (f(x), g(x));
        let det = fx * fx + gx * gx;
        let (y, z, degenerate) = if det > det_floor {
            (
                (fx * t2 + gx * t3) / det,
                (-gx * t2 + fx * t3) / det,
                false,
            )
        } else {
            (0.0, 0.0, true)
        };
        let r2 = y * y + z * z;
        let w = match case {
            CaseKind::G4 => t4 - r2 / 2.0 * h(x),
            CaseKind::G4St => t4 - s / 2.0 * x * x - r2 * (h(x) / 2.0 + t * k(x)),
        };
        let rebuilt = closed_form_element(case, s, t, x, y, z, w);
        let residual = rebuilt.max_diff(e);
        let fit = MembershipFit { x, y, z, w, residual, degenerate, candidates_tried: tried };
        if best.as_ref().map(|b| residual < b.residual).unwrap_or(true) {
            best = Some(fit);
        }
    }
    best.unwrap()
}

// ---------------------------------------------------------------------------
// verification reports

#[derive(Clone, Debug, Serialize)]
pub struct Regime {
    pub name: String,
    pub count: usize,
    pub max_residual: f64,
}

/// Deterministic (seeded) numeric verification output.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub test: String,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub max_residual: f64,
    pub pass: Option<bool>,
    pub regimes: Vec<Regime>,
    pub notes: Vec<String>,
}

fn sample_coords(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(lo..=hi)).collect()
}

struct RegimeAcc {
    name: &'static str,
    count: usize,
    max: f64,
}

impl RegimeAcc {
    fn new(name: &'static str) -> Self {
        RegimeAcc { name, count: 0, max: 0.0 }
    }

    fn push(&mut self, v: f64) {
        self.count += 1;
        self.max = self.max.max(v);
    }

    fn into_regime(self) -> Regime {
        Regime { name: self.name.to_string(), count: self.count, max_residual: self.max }
    }
}

/// Group-closure harness. The exponential-generated set is a group by
/// construction, so it is checked through associativity and inverses (hard
/// pass at `tol`); the closed-form set is probed by composing closed-form
/// elements and fitting the products back, with residuals reported by
/// rotation-angle regime rather than asserted: products whose total angle
/// wraps to a nonzero multiple of 2 pi leave the closed-form parametrization
/// (f = g = 0 hides the (y, z) data), which is an observation about the
/// closed-form set, not a numerical failure.
pub fn group_closure_check(
    realization: &AffineRealization,
    case: CaseKind,
    s: f64,
    t: f64,
    samples: usize,
    seed: u64,
    tol: f64,
) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assoc = RegimeAcc::new("exp-associativity");
    let mut inv = RegimeAcc::new("exp-inverse");
    let exp_tol = 1e-13;
    for _ in 0..samples {
        let x1 = sample_coords(&mut rng, 4, -2.0, 2.0);
        let x2 = sample_coords(&mut rng, 4, -2.0, 2.0);
        let x3 = sample_coords(&mut rng, 4, -2.0, 2.0);
        let g1 = realization.exp_at(&x1, exp_tol);
        let g2 = realization.exp_at(&x2, exp_tol);
        let g3 = realization.exp_at(&x3, exp_tol);
        assoc.push(g1.compose(&g2).compose(&g3).max_diff(&g1.compose(&g2.compose(&g3))));
        let ginv = affine_exp(&realization.generator(&x1).neg(), exp_tol);
        inv.push(g1.compose(&ginv).max_diff(&AffineElement::identity(4)));
    }
    let exp_max = assoc.max.max(inv.max);

    let mut principal = RegimeAcc::new("closed-form-principal");
    let mut wrapped = RegimeAcc::new("closed-form-wrapped");
    let mut degenerate = RegimeAcc::new("closed-form-near-degenerate");
    let mut fit_pair = |x1: Vec<f64>, x2: Vec<f64>| {
        let e1 = closed_form_element(case, s, t, x1[0], x1[1], x1[2], x1[3]);
        let e2 = closed_form_element(case, s, t, x2[0], x2[1], x2[2], x2[3]);
        let prod = e1.compose(&e2);
        let fit = closed_form_membership(&prod, case, s, t, tol);
        let total = x1[0] + x2[0];
        let turns = (total / (2.0 * std::f64::consts::PI)).round();
        let near_turn =
            turns != 0.0 && (total - turns * 2.0 * std::f64::consts::PI).abs() < 0.1;
        if fit.degenerate || near_turn {
            degenerate.push(fit.residual);
        } else if total.abs() < std::f64::consts::PI {
            principal.push(fit.residual);
        } else {
            wrapped.push(fit.residual);
        }
    };
    for _ in 0..samples {
        let p1 = sample_coords(&mut rng, 4, -1.0, 1.0);
        let p2 = sample_coords(&mut rng, 4, -1.0, 1.0);
        fit_pair(p1, p2);
    }
    // deterministic probes: push the total rotation angle onto and just off
    // a full turn, where the closed-form parametrization hides the (y, z) data
    for offset in [0.0, 1e-6, 1e-3, 0.05, 0.5, 1.0] {
        let half = std::f64::consts::PI + offset / 2.0;
        let mut p1 = sample_coords(&mut rng, 4, -1.0, 1.0);
        let mut p2 = sample_coords(&mut rng, 4, -1.0, 1.0);
        p1[0] = half;
        p2[0] = half;
        fit_pair(p1, p2);
    }
    VerificationReport {
        test: format!("group-closure[{case:?}]"),
        samples,
        seed,
        tol,
        max_residual: exp_max,
        pass: Some(exp_max < tol),
        regimes: vec![
            assoc.into_regime(),
            inv.into_regime(),
            principal.into_regime(),
            wrapped.into_regime(),
            degenerate.into_regime(),
        ],
        notes: vec![
            "pass gate covers the exponential-generated group only".into(),
            "closed-form closure residuals are reported per rotation regime; sums of angles \
             near nonzero multiples of 2 pi are outside the closed-form parametrization"
                .into(),
        ],
    }
}

/// Simple-transitivity harness: transitivity by damped Newton on the orbit
/// map (the Jacobian at 0 is the identity), freeness by orbit separation and
/// Jacobian nonsingularity along samples.
pub fn simply_transitive_check(
    realization: &AffineRealization,
    samples: usize,
    seed: u64,
    tol: f64,
) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = realization.n;
    let exp_tol = 1e-13;
    let mut converged = 0usize;
    let mut worst_final = 0.0f64;
    for _ in 0..samples {
        let target = sample_coords(&mut rng, n, -3.0, 3.0);
        let res = solve_orbit_target(realization, &target, tol, exp_tol);
        if res.converged {
            converged += 1;
        }
        worst_final = worst_final.max(res.final_residual);
    }
    let rate = converged as f64 / samples as f64;

    let mut min_sep_ratio = f64::INFINITY;
    let mut min_jac_det = f64::INFINITY;
    let pairs = (samples / 4).max(8);
    for _ in 0..pairs {
        let xa = sample_coords(&mut rng, n, -2.0, 2.0);
        let xb = sample_coords(&mut rng, n, -2.0, 2.0);
        let pa = realization.orbit_of_zero(&xa, exp_tol);
        let pb = realization.orbit_of_zero(&xb, exp_tol);
        let dp = linf(&pa, &pb);
        let dx = linf(&xa, &xb);
        if dx > 1e-9 {
            min_sep_ratio = min_sep_ratio.min(dp / dx);
        }
        let j = orbit_jacobian(realization, &xa, exp_tol);
        min_jac_det = min_jac_det.min(det_f64(&j, n).abs());
    }
    let pass = rate >= 0.99 && min_sep_ratio > 1e-6 && min_jac_det > 1e-9;
    VerificationReport {
        test: format!("simply-transitive[{}]", realization.algebra_name),
        samples,
        seed,
        tol,
        max_residual: worst_final,
        pass: Some(pass),
        regimes: vec![
            Regime { name: "newton-converged".into(), count: converged, max_residual: worst_final },
            Regime { name: "min-separation-ratio".into(), count: pairs, max_residual: min_sep_ratio },
            Regime { name: "min-jacobian-det".into(), count: pairs, max_residual: min_jac_det },
        ],
        notes: vec![format!("newton convergence rate {rate}")],
    }
}

struct NewtonResult {
    converged: bool,
    final_residual: f64,
}

/// Solve exp(hom X) . 0 = target. Plain damped Newton from the origin
/// first (the Jacobian there is the identity). Targets behind a rotation
/// wall are reached by a nested solve: along each non-nilpotent direction,
/// the complementary coordinates are fitted by the reduced subsystem Newton
/// and the remaining scalar mismatch phi(x0) is driven to zero by a
/// safeguarded secant/bisection iteration over the scanned coordinate,
/// followed by a full Newton polish.
fn solve_orbit_target(
    realization: &AffineRealization,
    target: &[f64],
    tol: f64,
    exp_tol: f64,
) -> NewtonResult {
    let n = realization.n;
    let origin = vec![0.0; n];
    let first = newton_orbit_solve(realization, &origin, target, tol, 50, exp_tol);
    if first.converged {
        return first;
    }
    let mut best = first;
    for &dir in &realization.non_nilpotent_dirs {
        // phi(x0): fix coordinate dir at x0, fit the others on the
        // complementary components, return the mismatch of component dir
        let phi = |x0: f64, warm: Option<&[f64]>| -> (f64, Vec<f64>) {
            let mut start = warm.map(|w| w.to_vec()).unwrap_or_else(|| vec![0.0; n]);
            start[dir] = x0;
            let refined = reduced_gauss_newton(realization, start, dir, target, 10, exp_tol);
            let p = realization.orbit_of_zero(&refined, exp_tol);
            // invalidate fits that did not solve the subsystem
            let sub_ok = (0..n)
                .filter(|&i| i != dir)
                .map(|i| (p[i] - target[i]).abs())
                .fold(0.0, f64::max)
                < 1e-9;
            let value = if sub_ok { p[dir] - target[dir] } else { f64::NAN };
            (value, refined)
        };
        // coarse grid over a few turns
        let grid: Vec<f64> = (0..=124).map(|i| -15.5 + i as f64 * 0.25).collect();
        let mut evals: Vec<(f64, f64, Vec<f64>)> = Vec::new();
        for &x0 in &grid {
            let (v, pt) = phi(x0, None);
            if v.is_finite() {
                evals.push((x0, v, pt));
            }
        }
        // try sign-change brackets in order of increasing endpoint mismatch
        let mut brackets: Vec<usize> = (0..evals.len().saturating_sub(1))
            .filter(|&i| {
                (evals[i].0 - evals[i + 1].0).abs() < 0.3 // adjacent grid points
                    && evals[i].1.signum() != evals[i + 1].1.signum()
            })
            .collect();
        brackets.sort_by(|&a, &b| {
            let ma = evals[a].1.abs().min(evals[a + 1].1.abs());
            let mb = evals[b].1.abs().min(evals[b + 1].1.abs());
            ma.total_cmp(&mb)
        });
        for &bi in brackets.iter().take(4) {
            let (mut lo, mut flo, mut pt_lo) =
                (evals[bi].0, evals[bi].1, evals[bi].2.clone());
            let (mut hi, mut fhi, _pt_hi) =
                (evals[bi + 1].0, evals[bi + 1].1, evals[bi + 1].2.clone());
            let mut cur = pt_lo.clone();
            for _ in 0..80 {
                // secant proposal, safeguarded by the bracket midpoint
                let mut xm = lo - flo * (hi - lo) / (fhi - flo);
                if !xm.is_finite() || xm <= lo.min(hi) || xm >= lo.max(hi) {
                    xm = 0.5 * (lo + hi);
                }
                let (fm, pm) = phi(xm, Some(&cur));
                if !fm.is_finite() {
                    break;
                }
                cur = pm.clone();
                if fm.abs() < tol * 0.5 {
                    break;
                }
                if fm.signum() == flo.signum() {
                    lo = xm;
                    flo = fm;
                    pt_lo = pm;
                } else {
                    hi = xm;
                    fhi = fm;
                }
                if (hi - lo).abs() < 1e-15 {
                    break;
                }
            }
            let _ = pt_lo;
            // full Newton polish from the nested solution
            let polished = newton_orbit_solve(realization, &cur, target, tol, 30, exp_tol);
            if polished.converged {
                return polished;
            }
            if polished.final_residual < best.final_residual {
                best = polished;
            }
        }
    }
    best
}

/// Damped Newton on the square subsystem { F_i = p_i : i != frozen } over
/// the coordinates other than `frozen`. Freezing the scanned coordinate and
/// excluding the component it controls at the origin keeps the subsystem
/// well-posed inside each rotation basin.
fn reduced_gauss_newton(
    realization: &AffineRealization,
    mut x: Vec<f64>,
    frozen: usize,
    target: &[f64],
    iters: usize,
    exp_tol: f64,
) -> Vec<f64> {
    let n = realization.n;
    let free: Vec<usize> = (0..n).filter(|&i| i != frozen).collect();
    let m = free.len();
    let sub_res = |p: &[f64]| -> f64 {
        free.iter().map(|&i| (p[i] - target[i]).abs()).fold(0.0, f64::max)
    };
    for _ in 0..iters {
        let p = realization.orbit_of_zero(&x, exp_tol);
        let rn = sub_res(&p);
        if rn < 1e-13 {
            break;
        }
        let jac = orbit_jacobian(realization, &x, exp_tol);
        let mut jsub = vec![0.0; m * m];
        let mut rsub = vec![0.0; m];
        for (a, &row) in free.iter().enumerate() {
            for (b, &col) in free.iter().enumerate() {
                jsub[a * m + b] = jac[row * n + col];
            }
            rsub[a] = p[row] - target[row];
        }
        let Some(jinv) = invert_f64(&jsub, m) else {
            break;
        };
        let mut step = vec![0.0; m];
        for a in 0..m {
            for b in 0..m {
                step[a] += jinv[a * m + b] * rsub[b];
            }
        }
        // undamped: this stage only proposes scan candidates, and the
        // subsystem is polynomial-triangular for these realizations, where
        // full steps converge in a few iterations; a magnitude guard drops
        // runaway proposals
        let mut cand = x.clone();
        for (a, &ca) in free.iter().enumerate() {
            cand[ca] -= step[a];
        }
        if cand.iter().any(|v| !v.is_finite() || v.abs() > 1e8) {
            break;
        }
        x = cand;
    }
    x
}

fn newton_orbit_solve(
    realization: &AffineRealization,
    start: &[f64],
    target: &[f64],
    tol: f64,
    max_iter: usize,
    exp_tol: f64,
) -> NewtonResult {
    let n = realization.n;
    let mut x = start.to_vec();
    let fres = |x: &[f64]| -> Vec<f64> {
        let p = realization.orbit_of_zero(x, exp_tol);
        p.iter().zip(target).map(|(a, b)| a - b).collect()
    };
    let mut r = fres(&x);
    let mut rn = linf(&r, &vec![0.0; n]);
    for _ in 0..max_iter {
        if rn <= tol {
            return NewtonResult { converged: true, final_residual: rn };
        }
        let jac = orbit_jacobian(realization, &x, exp_tol);
        let Some(jinv) = invert_f64(&jac, n) else {
            break;
        };
        let mut step = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                step[i] += jinv[i * n + j] * r[j];
            }
        }
        // damping: halve until the residual decreases
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..20 {
            let cand: Vec<f64> = x.iter().zip(&step).map(|(a, s)| a - lambda * s).collect();
            let rc = fres(&cand);
            let rcn = linf(&rc, &vec![0.0; n]);
            if rcn < rn {
                x = cand;
                r = rc;
                rn = rcn;
                accepted = true;
                break;
            }
            lambda /= 2.0;
        }
        if !accepted {
            break;
        }
    }
    NewtonResult { converged: rn <= tol, final_residual: rn }
}

fn orbit_jacobian(realization: &AffineRealization, x: &[f64], exp_tol: f64) -> Vec<f64> {
    let n = realization.n;
    let hstep = 1e-6;
    let mut jac = vec![0.0; n * n];
    for j in 0..n {
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[j] += hstep;
        xm[j] -= hstep;
        let fp = realization.orbit_of_zero(&xp, exp_tol);
        let fm = realization.orbit_of_zero(&xm, exp_tol);
        for i in 0..n {
            jac[i * n + j] = (fp[i] - fm[i]) / (2.0 * hstep);
        }
    }
    jac
}

fn det_f64(a: &[f64], n: usize) -> f64 {
    let mut m = a.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&r1, &r2| m[r1 * n + col].abs().total_cmp(&m[r2 * n + col].abs()))
            .unwrap();
        if m[piv * n + col].abs() < 1e-300 {
            return 0.0;
        }
        if piv != col {
            for j in 0..n {
                m.swap(col * n + j, piv * n + j);
            }
            det = -det;
        }
        det *= m[col * n + col];
        for r in col + 1..n {
            let factor = m[r * n + col] / m[col * n + col];
            for j in col..n {
                m[r * n + j] -= factor * m[col * n + j];
            }
        }
    }
    det
}

fn linf(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Hard check that the (4,1), (4,2), (4,3) linear entries of exp(hom X) for
/// the two-parameter family are (s x, Phi_t(x), Psi_t(x)).
pub fn row4_check(
    realization: &AffineRealization,
    s: f64,
    t: f64,
    samples: usize,
    seed: u64,
    tol: f64,
) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_res = 0.0f64;
    for _ in 0..samples {
        let xv = sample_coords(&mut rng, 4, -2.0, 2.0);
        let e = realization.exp_at(&xv, 1e-13);
        let (phi, psi) = phi_psi(t, xv[0], xv[1], xv[2]);
        let res = (e.at(3, 0) - s * xv[0])
            .abs()
            .max((e.at(3, 1) - phi).abs())
            .max((e.at(3, 2) - psi).abs());
        max_res = max_res.max(res);
    }
    VerificationReport {
        test: "row4-entries".into(),
        samples,
        seed,
        tol,
        max_residual: max_res,
        pass: Some(max_res < tol),
        regimes: vec![],
        notes: vec!["(4,1),(4,2),(4,3) of exp(hom X) vs (s x, Phi_t, Psi_t)".into()],
    }
}

/// Quantify the first translation component of exp(hom X) against the two
/// closed-form variants: the plain component `x` (the two-parameter case) and the
/// variant carrying the extra `(y^2+z^2) k(x)` term (the isolated case). The
/// gap between the exponential image and the k-term variant must equal the
/// predicted formula (y^2+z^2) k(x) to `tol`, and the plain variant must
/// match the exponential image directly.
pub fn translation_component_report(
    realization: &AffineRealization,
    samples: usize,
    seed: u64,
    tol: f64,
) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut plain = RegimeAcc::new("exp-vs-plain-x");
    let mut formula = RegimeAcc::new("k-term-gap-vs-predicted");
    let mut gap = RegimeAcc::new("measured-k-term-gap");
    for _ in 0..samples {
        let xv = sample_coords(&mut rng, 4, -2.0, 2.0);
        let e = realization.exp_at(&xv, 1e-13);
        let t1 = e.translation[0];
        let (x, y, z) = (xv[0], xv[1], xv[2]);
        let predicted = (y * y + z * z) * k(x);
        let measured_plain = (t1 - x).abs();
        let measured_k_gap = (x + predicted - t1).abs();
        plain.push(measured_plain);
        gap.push(measured_k_gap);
        formula.push((measured_k_gap - predicted.abs()).abs());
    }
    let max_res = plain.max.max(formula.max);
    VerificationReport {
        test: format!("translation-component[{}]", realization.algebra_name),
        samples,
        seed,
        tol,
        max_residual: max_res,
        pass: Some(max_res < tol),
        regimes: vec![plain.into_regime(), gap.into_regime(), formula.into_regime()],
        notes: vec![
            "for the two-parameter family the exponential image has first translation \
             component exactly x; imposing the isolated case's extra (y^2+z^2) k(x) term \
             produces a discrepancy matching that formula"
                .into(),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, bindings, ParamBindings};
    use lsa_exact::{rat, rint};

    fn a4_realization(s: i64, t: i64) -> AffineRealization {
        let a = catalog::named_algebra("a4", &bindings(&[("s", rint(s)), ("t", rint(t))])).unwrap();
        AffineRealization::new(&a).unwrap()
    }

    #[test]
    fn special_function_identities() {
        for i in 0..2000 {
            let x = -10.0 + i as f64 * 0.01;
            assert!((f(x) * f(x) + g(x) * g(x) - 2.0 * k(x)).abs() < 1e-12, "x = {x}");
        }
        // series and direct branches agree at the crossover, where both are
        // accurate; far below it the direct formula cancels catastrophically
        for x in [0.009f64, 0.01, 0.011, -0.0099] {
            let hs = h(x);
            let hd = (x - x.sin()) / (x * x);
            assert!((hs - hd).abs() < 1e-12, "h mismatch at {x}");
        }
        let tiny = 1e-5;
        assert!((h(tiny) - tiny / 6.0).abs() < 1e-15);
        assert_eq!(f(0.0), 1.0);
        assert_eq!(g(0.0), 0.0);
        assert_eq!(h(0.0), 0.0);
        assert_eq!(k(0.0), 0.5);
    }

    #[test]
    fn generator_of_e4_is_pure_translation() {
        let real = a4_realization(1, 1);
        let gen = real.generator(&[0.0, 0.0, 0.0, 1.0]);
        assert!(gen.linear.iter().all(|&v| v == 0.0));
        let e = affine_exp(&gen, 1e-13);
        assert_eq!(e.linear, AffineElement::identity(4).linear);
        assert_eq!(e.translation, vec![0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn exp_of_e1_matches_the_closed_series() {
        // exp(hom(x e1)): rotation by x on the (e2,e3) block, entry s x at
        // (4,1), translation (x, 0, 0, s x^2 / 2)
        let s = 1.0;
        let real = a4_realization(1, 1);
        for x in [0.5f64, -1.2, 2.0] {
            let e = real.exp_at(&[x, 0.0, 0.0, 0.0], 1e-13);
            assert!((e.at(1, 1) - x.cos()).abs() < 1e-12);
            assert!((e.at(1, 2) + x.sin()).abs() < 1e-12);
            assert!((e.at(3, 0) - s * x).abs() < 1e-12);
            assert!((e.translation[0] - x).abs() < 1e-12);
            assert!((e.translation[3] - s * x * x / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn exp_of_e2_matches_the_two_term_series() {
        // exp(hom(y e2)): translation (0, y, 0, t y^2 / 2), row 4 linear
        // entries (0, t y, y/2)
        let t = 1.0;
        let real = a4_realization(1, 1);
        for y in [0.7f64, -1.5] {
            let e = real.exp_at(&[0.0, y, 0.0, 0.0], 1e-13);
            assert!((e.translation[1] - y).abs() < 1e-12);
            assert!((e.translation[3] - t * y * y / 2.0).abs() < 1e-12);
            assert!((e.at(3, 1) - t * y).abs() < 1e-12);
            assert!((e.at(3, 2) - y / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn orbit_of_the_rotation_translation_plane() {
        // X = (x, 0, 0, w) has orbit point (x, 0, 0, w + s x^2 / 2), and the
        // zero element generates the identity
        let real = a4_realization(1, 1);
        for (x, w) in [(0.8, 0.3), (-1.4, 2.0)] {
            let p = real.orbit_of_zero(&[x, 0.0, 0.0, w], 1e-13);
            assert!((p[0] - x).abs() < 1e-12);
            assert!(p[1].abs() < 1e-12 && p[2].abs() < 1e-12);
            assert!((p[3] - (w + x * x / 2.0)).abs() < 1e-12);
        }
        let zero_gen = real.generator(&[0.0; 4]);
        assert!(zero_gen.linear.iter().all(|&v| v == 0.0));
        assert!(zero_gen.translation.iter().all(|&v| v == 0.0));
        assert_eq!(affine_exp(&zero_gen, 1e-13), AffineElement::identity(4));
    }

    #[test]
    fn exp_compose_with_inverse_is_identity() {
        let real = a4_realization(2, -1);
        let x = [0.3, -0.8, 1.1, 0.4];
        let e = real.exp_at(&x, 1e-13);
        let einv = affine_exp(&real.generator(&x).neg(), 1e-13);
        assert!(e.compose(&einv).max_diff(&AffineElement::identity(4)) < 1e-12);
    }

    #[test]
    fn one_parameter_property() {
        let real = a4_realization(1, 2);
        let x = [0.4, 0.9, -0.3, 0.2];
        for (a, b) in [(0.5, 1.3), (-0.7, 0.7), (2.0, -1.0)] {
            let lhs = real.exp_at(&x.map(|v| (a + b) * v), 1e-13);
            let rhs = real
                .exp_at(&x.map(|v| a * v), 1e-13)
                .compose(&real.exp_at(&x.map(|v| b * v), 1e-13));
            assert!(lhs.max_diff(&rhs) < 1e-10);
        }
    }

    #[test]
    fn exp_image_matches_the_g4st_closed_form() {
        let (s, t) = (1.5, -0.5);
        let a = catalog::named_algebra("a4", &bindings(&[("s", rat(3, 2)), ("t", rat(-1, 2))]))
            .unwrap();
        let real = AffineRealization::new(&a).unwrap();
        for coords in [[0.7, 0.4, -0.2, 0.9], [0.0, 1.0, 0.0, 0.0], [-1.3, 0.2, 0.8, -0.4]] {
            let e = real.exp_at(&coords, 1e-13);
            let closed =
                closed_form_element(CaseKind::G4St, s, t, coords[0], coords[1], coords[2], coords[3]);
            assert!(e.max_diff(&closed) < 1e-12, "mismatch at {coords:?}");
        }
    }

    #[test]
    fn exp_image_of_b4_matches_the_g4_closed_form() {
        let b4 = catalog::named_algebra("b4", &ParamBindings::new()).unwrap();
        let real = AffineRealization::new(&b4).unwrap();
        for coords in [[0.7, 0.4, -0.2, 0.9], [1.9, -0.6, 0.3, 0.1]] {
            let e = real.exp_at(&coords, 1e-13);
            let closed =
                closed_form_element(CaseKind::G4, 0.0, 0.0, coords[0], coords[1], coords[2], coords[3]);
            assert!(e.max_diff(&closed) < 1e-12, "mismatch at {coords:?}");
        }
    }

    #[test]
    fn closed_form_identity_element() {
        let e = closed_form_element(CaseKind::G4St, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0);
        assert!(e.max_diff(&AffineElement::identity(4)) < 1e-15);
    }

    #[test]
    fn closed_form_at_y_one() {
        // row 4 = (0, t, 1/2, 1) and translation (0, 1, 0, t/2) at
        // (x,y,z,w) = (0,1,0,0)
        let t = 0.75;
        let e = closed_form_element(CaseKind::G4St, 2.0, t, 0.0, 1.0, 0.0, 0.0);
        assert_eq!(e.at(3, 0), 0.0);
        assert!((e.at(3, 1) - t).abs() < 1e-15);
        assert!((e.at(3, 2) - 0.5).abs() < 1e-15);
        assert_eq!(e.translation, vec![0.0, 1.0, 0.0, t / 2.0]);
    }

    #[test]
    fn closed_form_g4_rotation_by_pi() {
        let x = std::f64::consts::PI;
        let e = closed_form_element(CaseKind::G4, 0.0, 0.0, x, 0.0, 0.0, 1.0);
        assert!((e.at(1, 1) + 1.0).abs() < 1e-12);
        assert!((e.at(2, 2) + 1.0).abs() < 1e-12);
        // y = z = 0 kills the k(x) correction
        assert!((e.translation[0] - x).abs() < 1e-15);
        assert_eq!(e.translation[3], 1.0);
    }

    #[test]
    fn membership_round_trip() {
        let (s, t) = (1.0, 1.0);
        let e = closed_form_element(CaseKind::G4St, s, t, 0.3, 0.5, -0.2, 1.0);
        let fit = closed_form_membership(&e, CaseKind::G4St, s, t, 1e-9);
        assert!(fit.residual < 1e-10, "{fit:?}");
        assert!((fit.x - 0.3).abs() < 1e-10);
        assert!((fit.y - 0.5).abs() < 1e-10);
        assert!((fit.z + 0.2).abs() < 1e-10);
        assert!((fit.w - 1.0).abs() < 1e-10);
        assert!(!fit.degenerate);
    }

    #[test]
    fn membership_fit_of_exp_e2() {
        // exp(hom(e2)) fits the closed form at x = 0
        let t = 1.0;
        let real = a4_realization(1, 1);
        let e = real.exp_at(&[0.0, 1.0, 0.0, 0.0], 1e-13);
        let fit = closed_form_membership(&e, CaseKind::G4St, 1.0, t, 1e-9);
        assert!(fit.residual < 1e-10, "{fit:?}");
        assert!((fit.x - 0.0).abs() < 1e-10);
        assert!((fit.y - 1.0).abs() < 1e-10);
        assert!((fit.w - 0.0).abs() < 1e-10);
    }

    #[test]
    fn membership_degenerate_at_full_turn() {
        let (s, t) = (1.0, 1.0);
        let x = 2.0 * std::f64::consts::PI;
        let e = closed_form_element(CaseKind::G4St, s, t, x, 0.7, 0.4, 0.0);
        let fit = closed_form_membership(&e, CaseKind::G4St, s, t, 1e-9);
        // (y, z) are invisible at f = g = 0; the fit reports the degeneracy
        assert!(fit.degenerate || fit.residual < 1e-9, "{fit:?}");
    }

    #[test]
    fn row4_hard_pass() {
        let real = a4_realization(1, 1);
        let rep = row4_check(&real, 1.0, 1.0, 50, 7, 1e-9);
        assert_eq!(rep.pass, Some(true));
    }

    #[test]
    fn representation_identity_holds_for_every_complete_catalog_entry() {
        for entry in catalog::entries() {
            if entry.expected.complete != Some(true) {
                continue;
            }
            let a = entry.build_default_spec().unwrap();
            if a.ring() != RingTag::Rational {
                continue;
            }
            verify_representation(&a).unwrap_or_else(|e| panic!("{}: {e}", entry.name));
        }
    }

    #[test]
    fn realization_rejects_incomplete_algebras() {
        // an LSA that is not complete must be rejected: x e1.e1 = e1 has
        // R_{e1} = id on a 1-dim algebra
        let one_dim = crate::textfmt::parse_file("algebra U\ndim 1\nproduct e1 e1 = e1\n")
            .unwrap()
            .single_algebra()
            .unwrap();
        assert!(AffineRealization::new(&one_dim).is_err());
    }

    #[test]
    fn reports_are_deterministic_given_the_seed() {
        let real = a4_realization(1, 1);
        let r1 = simply_transitive_check(&real, 20, 42, 1e-10);
        let r2 = simply_transitive_check(&real, 20, 42, 1e-10);
        assert_eq!(serde_json::to_string(&r1).unwrap(), serde_json::to_string(&r2).unwrap());
        let g1 = group_closure_check(&real, CaseKind::G4St, 1.0, 1.0, 20, 9, 1e-9);
        let g2 = group_closure_check(&real, CaseKind::G4St, 1.0, 1.0, 20, 9, 1e-9);
        assert_eq!(serde_json::to_string(&g1).unwrap(), serde_json::to_string(&g2).unwrap());
    }
}
