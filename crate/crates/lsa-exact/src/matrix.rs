//! Dense exact matrices with kernel/solve/trace machinery.

use crate::scalar::{RingTag, Scalar};
use crate::subspace::Subspace;
use crate::{Error, Result};
use std::fmt;

/// A rectangular matrix whose entries all live in one scalar ring.
#[derive(Clone, PartialEq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    ring: RingTag,
    data: Vec<Scalar>,
}

/// Result of an exact linear solve.
#[derive(Clone, Debug, PartialEq)]
pub enum SolveOutcome {
    /// One particular solution plus the kernel describing all others.
    Solution { particular: Vec<Scalar>, kernel: Subspace },
    NoSolution,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize, ring: RingTag) -> Self {
        let zero = Scalar::zero().coerce(ring).unwrap();
        ExactMatrix { rows, cols, ring, data: vec![zero; rows * cols] }
    }

    pub fn identity(n: usize, ring: RingTag) -> Self {
        let mut m = ExactMatrix::zeros(n, n, ring);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Build from row vectors; the ring is the join of all entry rings.
    pub fn from_rows(rows_in: Vec<Vec<Scalar>>) -> Result<Self> {
        let rows = rows_in.len();
        let cols = rows_in.first().map(|r| r.len()).unwrap_or(0);
        let mut ring = RingTag::Rational;
        for r in &rows_in {
            if r.len() != cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for s in r {
                ring = ring.join(s.ring())?;
            }
        }
        let mut data = Vec::with_capacity(rows * cols);
        for r in rows_in {
            for s in r {
                data.push(s.coerce(ring)?);
            }
        }
        Ok(ExactMatrix { rows, cols, ring, data })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        ring: RingTag,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j).coerce(ring)?);
            }
        }
        Ok(ExactMatrix { rows, cols, ring, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> RingTag {
        self.ring
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v.coerce(self.ring).expect("ring mismatch in set");
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }

    pub fn coerce_ring(&self, ring: RingTag) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|s| s.coerce(ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, ring, data })
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Result<Self> {
        let mut ring = RingTag::Rational;
        let data: Vec<Scalar> = self.data.iter().map(&f).collect();
        for s in &data {
            ring = ring.join(s.ring())?;
        }
        let data = data.into_iter().map(|s| s.coerce(ring).unwrap()).collect();
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, ring, data })
    }

    pub fn transpose(&self) -> Self {
        let mut out = ExactMatrix::zeros(self.cols, self.rows, self.ring);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j).clone());
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ring = self.ring.join(other.ring)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.add(b).coerce(ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, ring, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&Scalar::int(-1))?)
    }

    pub fn scale(&self, c: &Scalar) -> Result<Self> {
        let ring = self.ring.join(c.ring())?;
        let data = self
            .data
            .iter()
            .map(|a| a.mul(c).coerce(ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, ring, data })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ring = self.ring.join(other.ring)?;
        let mut out = ExactMatrix::zeros(self.rows, other.cols, ring);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Scalar::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.at(i, k).mul(other.at(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix {}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = Scalar::zero();
            for k in 0..self.cols {
                acc = acc.add(&self.at(i, k).mul(&v[k]));
            }
            out.push(acc);
        }
        Ok(out)
    }

    pub fn trace(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::NotSquare);
        }
        let mut acc = Scalar::zero();
        for i in 0..self.rows {
            acc = acc.add(self.at(i, i));
        }
        Ok(acc)
    }

    /// Traces of m^1 .. m^k_max; works over any scalar ring including Poly.
    ///
    /// Over characteristic zero a square matrix of size n is nilpotent iff
    /// tr(m^k) = 0 for k = 1..n, which is how nilpotency is decided here
    /// without forming characteristic polynomials.
    pub fn power_traces(&self, k_max: usize) -> Result<Vec<Scalar>> {
        if self.rows != self.cols {
            return Err(Error::NotSquare);
        }
        let mut traces = Vec::with_capacity(k_max);
        let mut acc = self.clone();
        for k in 0..k_max {
            traces.push(acc.trace()?);
            if k + 1 < k_max {
                acc = acc.mul(self)?;
            }
        }
        Ok(traces)
    }

    fn require_field(&self) -> Result<()> {
        if self.ring.is_field() {
            Ok(())
        } else {
            Err(Error::PolyEntries)
        }
    }

    /// Reduced row echelon form. Field entries only.
    pub fn rref(&self) -> Result<(ExactMatrix, Vec<usize>)> {
        self.require_field()?;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    let a = m.at(r, j).clone();
                    let b = m.at(p, j).clone();
                    m.set(r, j, b);
                    m.set(p, j, a);
                }
            }
            let inv = m.at(r, c).inv()?;
            for j in 0..m.cols {
                let v = m.at(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let factor = m.at(i, c).clone();
                    for j in 0..m.cols {
                        let v = m.at(i, j).sub(&factor.mul(m.at(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok((m, pivots))
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.1.len())
    }

    /// Exact null space {x : m x = 0} as a canonical subspace.
    pub fn kernel(&self) -> Result<Subspace> {
        let (r, pivots) = self.rref()?;
        let mut basis = Vec::new();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = Some(row);
            }
            v
        };
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut vec_out = vec![Scalar::zero(); self.cols];
            vec_out[free] = Scalar::one();
            for (row, &pc) in pivots.iter().enumerate() {
                vec_out[pc] = r.at(row, free).neg();
            }
            basis.push(vec_out);
        }
        Subspace::from_spanning(self.cols, self.ring, basis)
    }

    /// Solve m x = rhs exactly.
    pub fn solve(&self, rhs: &[Scalar]) -> Result<SolveOutcome> {
        self.require_field()?;
        if rhs.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "rhs length {} for {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let mut aug = ExactMatrix::zeros(self.rows, self.cols + 1, self.ring.join({
            let mut ring = RingTag::Rational;
            for s in rhs {
                ring = ring.join(s.ring())?;
            }
            ring
        })?);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let (r, pivots) = aug.rref()?;
        if pivots.contains(&self.cols) {
            return Ok(SolveOutcome::NoSolution);
        }
        let mut particular = vec![Scalar::zero(); self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            particular[c] = r.at(row, self.cols).clone();
        }
        Ok(SolveOutcome::Solution { particular, kernel: self.kernel()? })
    }

    /// Inverse of a square field matrix, if it exists.
    pub fn inverse(&self) -> Result<Option<ExactMatrix>> {
        self.require_field()?;
        if self.rows != self.cols {
            return Err(Error::NotSquare);
        }
        let n = self.rows;
        let mut aug = ExactMatrix::zeros(n, 2 * n, self.ring);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one());
        }
        let (r, pivots) = aug.rref()?;
        if pivots.len() < n || pivots[n - 1] >= n {
            return Ok(None);
        }
        let mut out = ExactMatrix::zeros(n, n, self.ring);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.at(i, n + j).clone());
            }
        }
        Ok(Some(out))
    }

    /// Determinant by cofactor expansion; fine for the small sizes used here
    /// and valid over any ring, including polynomials.
    pub fn det(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::NotSquare);
        }
        fn go(m: &ExactMatrix) -> Scalar {
            let n = m.rows;
            if n == 0 {
                return Scalar::one();
            }
            if n == 1 {
                return m.at(0, 0).clone();
            }
            let mut acc = Scalar::zero();
            for j in 0..n {
                if m.at(0, j).is_zero() {
                    continue;
                }
                let minor = ExactMatrix::from_fn(n - 1, n - 1, m.ring, |r, c| {
                    m.at(r + 1, if c < j { c } else { c + 1 }).clone()
                })
                .unwrap();
                let term = m.at(0, j).mul(&go(&minor));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
        Ok(go(self))
    }

    /// Characteristic polynomial coefficients [c_0, ..., c_n] with
    /// det(xI - m) = sum c_k x^k, by the Faddeev-LeVerrier recurrence.
    pub fn char_poly(&self) -> Result<Vec<Scalar>> {
        self.require_field()?;
        if self.rows != self.cols {
            return Err(Error::NotSquare);
        }
        let n = self.rows;
        let mut coeffs = vec![Scalar::zero(); n + 1];
        coeffs[n] = Scalar::one();
        let mut mk = ExactMatrix::identity(n, self.ring);
        for k in 1..=n {
            mk = self.mul(&mk)?;
            let c = mk
                .trace()?
                .mul(&Scalar::Rat(crate::rat(-1, k as i64)));
            coeffs[n - k] = c.clone();
            for i in 0..n {
                let v = mk.at(i, i).add(&c);
                mk.set(i, i, v);
            }
        }
        Ok(coeffs)
    }

    pub fn substitute(
        &self,
        map: &std::collections::BTreeMap<String, Scalar>,
    ) -> Result<ExactMatrix> {
        let mut out_rows = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                row.push(self.at(i, j).substitute(map)?);
            }
            out_rows.push(row);
        }
        ExactMatrix::from_rows(out_rows)
    }

    pub fn reduce_squares(&self, rules: &[crate::poly::SquareRule]) -> ExactMatrix {
        let data = self.data.iter().map(|s| s.reduce_squares(rules)).collect::<Vec<_>>();
        let mut ring = RingTag::Rational;
        for s in &data {
            ring = ring.join(s.ring()).unwrap_or(RingTag::Poly);
        }
        let data = data.into_iter().map(|s| s.coerce(ring).unwrap()).collect();
        ExactMatrix { rows: self.rows, cols: self.cols, ring, data }
    }

    pub fn to_f64_rows(&self) -> Option<Vec<Vec<f64>>> {
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                row.push(self.at(i, j).to_f64()?);
            }
            out.push(row);
        }
        Some(out)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rint};

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let k = m(&[&[1, 0], &[0, 1]]).kernel().unwrap();
        assert_eq!(k.dim(), 0);
    }

    #[test]
    fn rank_nullity_on_ones_row() {
        let a = m(&[&[1, 1, 1]]);
        let k = a.kernel().unwrap();
        assert_eq!(k.dim(), 2);
        assert!(k.contains(&[Scalar::int(1), Scalar::int(-1), Scalar::int(0)]));
        for v in k.basis() {
            let prod = a.mul_vec(v).unwrap();
            assert!(prod.iter().all(|s| s.is_zero()));
        }
    }

    #[test]
    fn solve_identity() {
        let a = m(&[&[1, 0], &[0, 1]]);
        match a.solve(&[Scalar::int(1), Scalar::int(2)]).unwrap() {
            SolveOutcome::Solution { particular, kernel } => {
                assert_eq!(particular, vec![Scalar::int(1), Scalar::int(2)]);
                assert_eq!(kernel.dim(), 0);
            }
            _ => panic!("no solution"),
        }
    }

    #[test]
    fn solve_underdetermined() {
        let a = m(&[&[1, 1]]);
        match a.solve(&[Scalar::int(3)]).unwrap() {
            SolveOutcome::Solution { particular, kernel } => {
                assert_eq!(particular, vec![Scalar::int(3), Scalar::int(0)]);
                assert_eq!(kernel.dim(), 1);
                assert!(kernel.contains(&[Scalar::int(1), Scalar::int(-1)]));
            }
            _ => panic!("no solution"),
        }
    }

    #[test]
    fn solve_rotation_like_system_at_rational_pi_surrogate() {
        // f(pi) = 0 and g(pi) = 2/pi evaluated at the rational surrogate
        // pi ~ 355/113; the system [[f,-g],[g,f]] stays invertible with
        // determinant f^2 + g^2 = 4/pi^2.
        let pi = rat(355, 113);
        let f = Scalar::zero();
        let g = Scalar::Rat(rat(2, 1) / &pi);
        let a = ExactMatrix::from_rows(vec![
            vec![f.clone(), g.neg()],
            vec![g.clone(), f.clone()],
        ])
        .unwrap();
        let det = a.det().unwrap();
        assert_eq!(det, Scalar::Rat(rat(4, 1) / (&pi * &pi)));
        match a.solve(&[Scalar::int(1), Scalar::int(2)]).unwrap() {
            SolveOutcome::Solution { particular, kernel } => {
                assert_eq!(kernel.dim(), 0);
                let back = a.mul_vec(&particular).unwrap();
                assert_eq!(back, vec![Scalar::int(1), Scalar::int(2)]);
            }
            _ => panic!("system should be solvable"),
        }
    }

    #[test]
    fn power_traces_nilpotent_upper_triangular() {
        let a = m(&[&[0, 1, 5], &[0, 0, 2], &[0, 0, 0]]);
        let t = a.power_traces(3).unwrap();
        assert!(t.iter().all(|s| s.is_zero()));
    }

    #[test]
    fn power_traces_diag() {
        let a = m(&[&[2, 0], &[0, 0]]);
        assert_eq!(
            a.power_traces(2).unwrap(),
            vec![Scalar::int(2), Scalar::int(4)]
        );
    }

    #[test]
    fn kernel_rejects_poly_entries() {
        let a = ExactMatrix::from_rows(vec![vec![Scalar::var("x")]]).unwrap();
        assert_eq!(a.kernel().unwrap_err(), Error::PolyEntries);
        assert!(a.power_traces(1).is_ok());
    }

    #[test]
    fn char_poly_of_companion() {
        // x^2 - 3x + 2 for diag(1,2)
        let a = m(&[&[1, 0], &[0, 2]]);
        let c = a.char_poly().unwrap();
        assert_eq!(c, vec![Scalar::int(2), Scalar::int(-3), Scalar::int(1)]);
    }

    #[test]
    fn gaussian_inverse() {
        let i = Scalar::i();
        let a = ExactMatrix::from_rows(vec![
            vec![i.clone(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::one()],
        ])
        .unwrap();
        let inv = a.inverse().unwrap().unwrap();
        assert_eq!(inv.mul(&a).unwrap(), ExactMatrix::identity(2, RingTag::Gaussian));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_rat() -> impl Strategy<Value = Scalar> {
            (-6i64..=6, 1i64..=3).prop_map(|(n, d)| Scalar::Rat(rat(n, d)))
        }

        fn small_matrix(n: usize, m_cols: usize) -> impl Strategy<Value = ExactMatrix> {
            proptest::collection::vec(proptest::collection::vec(small_rat(), m_cols), n)
                .prop_map(|rows| ExactMatrix::from_rows(rows).unwrap())
        }

        proptest! {
            #[test]
            fn kernel_vectors_annihilate(a in small_matrix(3, 4)) {
                let k = a.kernel().unwrap();
                prop_assert_eq!(k.dim() + a.rank().unwrap(), 4);
                for v in k.basis() {
                    let prod = a.mul_vec(v).unwrap();
                    prop_assert!(prod.iter().all(|s| s.is_zero()));
                }
            }

            #[test]
            fn power_traces_invariant_under_conjugation(a in small_matrix(3, 3), p in small_matrix(3, 3)) {
                if let Some(pinv) = p.inverse().unwrap() {
                    let conj = p.mul(&a).unwrap().mul(&pinv).unwrap();
                    prop_assert_eq!(a.power_traces(3).unwrap(), conj.power_traces(3).unwrap());
                }
            }
        }

        fn small_poly() -> impl Strategy<Value = Scalar> {
            let vars = ["u", "v", "w", "x", "y", "z"];
            proptest::collection::vec((0usize..6, 0u32..=1, -3i64..=3), 0..5).prop_map(
                move |terms| {
                    let mut acc = Scalar::zero();
                    for (vi, extra, c) in terms {
                        let mut t = Scalar::Rat(rint(c));
                        t = t.mul(&Scalar::var(vars[vi]));
                        if extra == 1 {
                            t = t.mul(&Scalar::var(vars[(vi + 1) % 6]));
                            t = t.mul(&Scalar::var(vars[(vi + 2) % 6]));
                        }
                        acc = acc.add(&t);
                    }
                    acc
                },
            )
        }

        proptest! {
            #[test]
            fn poly_right_distributivity(p in small_poly(), q in small_poly(), r in small_poly()) {
                let left = p.add(&q).mul(&r);
                let right = p.mul(&r).add(&q.mul(&r));
                prop_assert_eq!(left, right);
            }
        }
    }
}
