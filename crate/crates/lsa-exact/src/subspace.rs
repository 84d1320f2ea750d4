//! Coordinate subspaces in canonical reduced row-echelon form.
//!
//! Two subspaces are equal iff their echelon bases are identical, so derived
//! objects (ideals, centers, cohomology spaces) compare structurally.

use crate::matrix::ExactMatrix;
use crate::scalar::{RingTag, Scalar};
use crate::{Error, Result};
use std::fmt;

#[derive(Clone, PartialEq)]
pub struct Subspace {
    ambient: usize,
    ring: RingTag,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(ambient: usize, ring: RingTag) -> Self {
        Subspace { ambient, ring, basis: Vec::new() }
    }

    pub fn full(ambient: usize, ring: RingTag) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![Scalar::zero(); ambient];
                v[i] = Scalar::one();
                v
            })
            .collect();
        Subspace { ambient, ring, basis }
    }

    /// Canonicalize a spanning set into an echelon basis.
    pub fn from_spanning(ambient: usize, ring: RingTag, vectors: Vec<Vec<Scalar>>) -> Result<Self> {
        if !ring.is_field() {
            return Err(Error::PolyEntries);
        }
        for v in &vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch(format!(
                    "vector of length {} in ambient dimension {ambient}",
                    v.len()
                )));
            }
        }
        if vectors.is_empty() {
            return Ok(Subspace::zero(ambient, ring));
        }
        let m = ExactMatrix::from_rows(vectors)?.coerce_ring(ring)?;
        let (r, pivots) = m.rref()?;
        let basis = (0..pivots.len()).map(|i| r.row(i)).collect();
        Ok(Subspace { ambient, ring, basis })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn ring(&self) -> RingTag {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    fn pivot_of_row(&self, row: &[Scalar]) -> Option<usize> {
        row.iter().position(|s| !s.is_zero())
    }

    /// Reduce a vector against the basis; the residual is zero iff contained.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out: Vec<Scalar> = v
            .iter()
            .map(|s| s.coerce(self.ring).unwrap_or_else(|_| s.clone()))
            .collect();
        for row in &self.basis {
            let Some(p) = self.pivot_of_row(row) else { continue };
            if !out[p].is_zero() {
                let factor = out[p].clone();
                for (o, r) in out.iter_mut().zip(row) {
                    *o = o.sub(&factor.mul(r));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|s| s.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        let mut vecs = self.basis.clone();
        vecs.extend(other.basis.iter().cloned());
        Subspace::from_spanning(self.ambient, self.ring.join(other.ring)?, vecs)
    }

    /// Exact intersection via the kernel of [U^T | -V^T].
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(
                "intersection of different ambient spaces".into(),
            ));
        }
        let ring = self.ring.join(other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient, ring));
        }
        let k = self.dim();
        let l = other.dim();
        let m = ExactMatrix::from_fn(self.ambient, k + l, ring, |i, j| {
            if j < k {
                self.basis[j][i].clone()
            } else {
                other.basis[j - k][i].neg()
            }
        })?;
        let ker = m.kernel()?;
        let mut vecs = Vec::new();
        for coeffs in ker.basis() {
            let mut v = vec![Scalar::zero(); self.ambient];
            for (bi, row) in self.basis.iter().enumerate() {
                for (vi, s) in v.iter_mut().zip(row) {
                    *vi = vi.add(&coeffs[bi].mul(s));
                }
            }
            vecs.push(v);
        }
        Subspace::from_spanning(self.ambient, ring, vecs)
    }

    /// Vectors of `larger` that extend this subspace's basis to a basis of
    /// `larger`. Deterministic echelon completion.
    pub fn complement_within(&self, larger: &Subspace) -> Result<Vec<Vec<Scalar>>> {
        if !larger.contains_subspace(self) {
            return Err(Error::DimensionMismatch(
                "complement_within requires containment".into(),
            ));
        }
        let mut current = self.clone();
        let mut added = Vec::new();
        for v in &larger.basis {
            if !current.contains(v) {
                added.push(v.clone());
                current = current.sum(&Subspace::from_spanning(
                    self.ambient,
                    self.ring,
                    vec![v.clone()],
                )?)?;
            }
        }
        Ok(added)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}; ", self.dim(), self.ambient)?;
        for (i, row) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, s) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{s}")?;
            }
            write!(f, "]")?;
        }
        write!(f, ")")
    }
}
