//! Exact linear algebra over Z, Q and F_p: Smith normal form with unimodular
//! transforms, (co)homology of finite free complexes, and coordinates of
//! (co)cycles in the chosen basis.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, x) in row.iter().enumerate() {
                m.data[i * c + j] = BigInt::from(*x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|r| {
                let mut acc = BigInt::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// Columns `from..` as a new matrix.
    pub fn columns_from(&self, from: usize) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, self.cols - from);
        for r in 0..self.rows {
            for c in from..self.cols {
                out.data[r * out.cols + (c - from)] = self.get(r, c).clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt, dom: Domain) {
        for c in 0..self.cols {
            let s = &self.data[src * self.cols + c];
            if !s.is_zero() {
                let v = &self.data[dst * self.cols + c] + q * s;
                self.data[dst * self.cols + c] = dom.reduce(v);
            }
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt, dom: Domain) {
        for r in 0..self.rows {
            let s = &self.data[r * self.cols + src];
            if !s.is_zero() {
                let v = &self.data[r * self.cols + dst] + q * s;
                self.data[r * self.cols + dst] = dom.reduce(v);
            }
        }
    }

    fn scale_row(&mut self, r: usize, q: &BigInt, dom: Domain) {
        for c in 0..self.cols {
            let v = &self.data[r * self.cols + c] * q;
            self.data[r * self.cols + c] = dom.reduce(v);
        }
    }

    fn scale_col(&mut self, c: usize, q: &BigInt, dom: Domain) {
        for r in 0..self.rows {
            let v = &self.data[r * self.cols + c] * q;
            self.data[r * self.cols + c] = dom.reduce(v);
        }
    }

    fn reduce_all(&mut self, dom: Domain) {
        for x in self.data.iter_mut() {
            *x = dom.reduce(std::mem::take(x));
        }
    }

    /// Rank over Q, via elimination mod nothing (fraction-free SNF diagonal).
    pub fn rank(&self) -> usize {
        smith_normal_form(self).rank()
    }

    /// Rank after reducing entries into the given coefficient ring.
    pub fn rank_over(&self, ring: CoefficientRing) -> usize {
        match ring.domain() {
            Domain::Integers => self.rank(),
            dom => factorize(self, dom).rank(),
        }
    }

    /// Determinant of a square matrix (Bareiss fraction-free elimination).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }
}

/// Coefficients for (co)homology computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoefficientRing {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl CoefficientRing {
    pub fn prime(p: u64) -> Result<Self> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::Validation(format!("{p} is not prime")));
        }
        Ok(CoefficientRing::PrimeField(p))
    }

    pub fn is_field(self) -> bool {
        !matches!(self, CoefficientRing::Integers)
    }

    pub(crate) fn domain(self) -> Domain {
        match self {
            CoefficientRing::Integers | CoefficientRing::Rationals => Domain::Integers,
            CoefficientRing::PrimeField(p) => Domain::Field(p),
        }
    }

    /// Canonical representative of an integer in this ring.
    pub fn reduce(self, x: BigInt) -> BigInt {
        self.domain().reduce(x)
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "Z"),
            CoefficientRing::Rationals => write!(f, "Q"),
            CoefficientRing::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for CoefficientRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Z" => Ok(CoefficientRing::Integers),
            "Q" => Ok(CoefficientRing::Rationals),
            _ => {
                let p = s
                    .strip_prefix("Fp:")
                    .or_else(|| s.strip_prefix('F'))
                    .and_then(|t| t.parse::<u64>().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown coefficient ring '{s}'")))?;
                CoefficientRing::prime(p)
            }
        }
    }
}

/// Arithmetic context used by the elimination routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Domain {
    Integers,
    Field(u64),
}

impl Domain {
    pub(crate) fn reduce(self, x: BigInt) -> BigInt {
        match self {
            Domain::Integers => x,
            Domain::Field(p) => x.mod_floor(&BigInt::from(p)),
        }
    }

    fn norm(self, x: &BigInt) -> BigInt {
        match self {
            Domain::Integers => x.abs(),
            Domain::Field(_) => BigInt::one(),
        }
    }

    /// Quotient `q` with `a - q b` of smaller norm (zero for fields).
    fn quotient(self, a: &BigInt, b: &BigInt) -> BigInt {
        match self {
            Domain::Integers => a.div_floor(b),
            Domain::Field(p) => {
                let p = BigInt::from(p);
                (a * inverse_mod(b, &p)).mod_floor(&p)
            }
        }
    }

    fn divides(self, d: &BigInt, x: &BigInt) -> bool {
        match self {
            Domain::Integers => x.is_multiple_of(d),
            Domain::Field(_) => true,
        }
    }

    fn neg(self, x: &BigInt) -> BigInt {
        self.reduce(-x)
    }
}

fn inverse_mod(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    assert!(e.gcd.is_one(), "non-invertible element in prime field");
    e.x.mod_floor(p)
}

/// `U·A·V = S` with `S` diagonal, `d_1 | d_2 | …`, and `U`, `V` invertible over
/// the working ring. Inverses are tracked alongside.
#[derive(Clone, Debug)]
pub struct SNFactorization {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SNFactorization {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

/// Smith normal form over the integers.
pub fn smith_normal_form(a: &IntMatrix) -> SNFactorization {
    factorize(a, Domain::Integers)
}

/// Smith normal form over the given coefficient ring (rank form for fields).
pub fn smith_normal_form_over(a: &IntMatrix, ring: CoefficientRing) -> SNFactorization {
    factorize(a, ring.domain())
}

pub(crate) fn factorize(a: &IntMatrix, dom: Domain) -> SNFactorization {
    let (rows, cols) = (a.rows, a.cols);
    let mut s = a.clone();
    s.reduce_all(dom);
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // Pivot: smallest norm, ties broken by (row, col).
            let mut best: Option<(BigInt, usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = s.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    let n = dom.norm(x);
                    if best.as_ref().is_none_or(|(bn, _, _)| n < *bn) {
                        best = Some((n, i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                return SNFactorization { u, u_inv, s, v, v_inv };
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let q = dom.quotient(s.get(i, t), s.get(t, t));
                let nq = dom.neg(&q);
                s.add_row(i, t, &nq, dom);
                u.add_row(i, t, &nq, dom);
                u_inv.add_col(t, i, &q, dom);
                if !s.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let q = dom.quotient(s.get(t, j), s.get(t, t));
                let nq = dom.neg(&q);
                s.add_col(j, t, &nq, dom);
                v.add_col(j, t, &nq, dom);
                v_inv.add_row(t, j, &q, dom);
                if !s.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into row t and retry.
            let d = s.get(t, t).clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !dom.divides(&d, s.get(i, j))));
            if let Some(i) = bad {
                let one = BigInt::one();
                let neg_one = dom.neg(&one);
                s.add_row(t, i, &one, dom);
                u.add_row(t, i, &one, dom);
                u_inv.add_col(i, t, &neg_one, dom);
                continue;
            }
            break;
        }
        // Normalize the pivot: positive over Z, one over a field.
        let d = s.get(t, t).clone();
        let scale = match dom {
            Domain::Integers if d.is_negative() => Some((BigInt::from(-1), BigInt::from(-1))),
            Domain::Field(p) if !d.is_one() => {
                let p = BigInt::from(p);
                Some((inverse_mod(&d, &p), d.clone()))
            }
            _ => None,
        };
        if let Some((q, q_inv)) = scale {
            s.scale_row(t, &q, dom);
            u.scale_row(t, &q, dom);
            u_inv.scale_col(t, &q_inv, dom);
        }
    }
    SNFactorization { u, u_inv, s, v, v_inv }
}

/// Whether a complex is graded with differentials raising or lowering degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `δ_n : C^n → C^{n+1}`
    Cochain,
    /// `d_n : C_n → C_{n-1}`
    Chain,
}

/// A finite free complex in degrees `0..dims.len()`. `maps[n]` leaves degree
/// `n`: for cochains it is `dims[n+1] × dims[n]`, for chains `dims[n-1] × dims[n]`
/// (with `maps[0]` a `0 × dims[0]` matrix).
#[derive(Clone, Debug)]
pub struct FreeComplex {
    pub direction: Direction,
    pub dims: Vec<usize>,
    pub maps: Vec<IntMatrix>,
}

impl FreeComplex {
    pub fn cochain(dims: Vec<usize>, maps: Vec<IntMatrix>) -> Result<Self> {
        FreeComplex::build(Direction::Cochain, dims, maps)
    }

    pub fn chain(dims: Vec<usize>, maps: Vec<IntMatrix>) -> Result<Self> {
        FreeComplex::build(Direction::Chain, dims, maps)
    }

    fn build(direction: Direction, dims: Vec<usize>, maps: Vec<IntMatrix>) -> Result<Self> {
        if maps.len() != dims.len() {
            return Err(Error::Validation("one map per degree required".into()));
        }
        for (n, m) in maps.iter().enumerate() {
            let target = match direction {
                Direction::Cochain => dims.get(n + 1).copied().unwrap_or(0),
                Direction::Chain => n.checked_sub(1).map_or(0, |k| dims[k]),
            };
            if m.cols != dims[n] || m.rows != target {
                return Err(Error::Validation(format!(
                    "map leaving degree {n} has shape {}x{}, expected {target}x{}",
                    m.rows, m.cols, dims[n]
                )));
            }
        }
        Ok(FreeComplex { direction, dims, maps })
    }

    /// The dual complex (transposed maps, opposite direction).
    pub fn dual(&self) -> FreeComplex {
        let n = self.dims.len();
        let mut maps = Vec::with_capacity(n);
        for d in 0..n {
            // The dual map leaving degree d is the transpose of the map entering it.
            let entering = match self.direction {
                Direction::Cochain => d.checked_sub(1).map(|k| &self.maps[k]),
                Direction::Chain => self.maps.get(d + 1),
            };
            let target = match self.direction {
                Direction::Cochain => d.checked_sub(1).map_or(0, |k| self.dims[k]),
                Direction::Chain => self.dims.get(d + 1).copied().unwrap_or(0),
            };
            maps.push(match entering {
                Some(m) => m.transpose(),
                None => IntMatrix::zeros(target, self.dims[d]),
            });
        }
        let direction = match self.direction {
            Direction::Cochain => Direction::Chain,
            Direction::Chain => Direction::Cochain,
        };
        FreeComplex { direction, dims: self.dims.clone(), maps }
    }

    fn incoming(&self, n: usize) -> IntMatrix {
        let src = match self.direction {
            Direction::Cochain => n.checked_sub(1),
            Direction::Chain => (n + 1 < self.dims.len()).then_some(n + 1),
        };
        match src {
            Some(k) => self.maps[k].clone(),
            None => IntMatrix::zeros(self.dims[n], 0),
        }
    }

    pub fn squares_to_zero(&self) -> bool {
        (0..self.dims.len()).all(|n| {
            let inc = self.incoming(n);
            inc.cols == 0 || self.maps[n].rows == 0 || self.maps[n].mul(&inc).is_zero()
        })
    }
}

/// (Co)homology in one degree: free and torsion generators with
/// representatives, plus the transforms needed for coordinates.
#[derive(Clone, Debug)]
pub struct DegreeSummary {
    pub free_reps: Vec<Vec<BigInt>>,
    /// `(order, representative)` for each torsion generator.
    pub torsion: Vec<(BigInt, Vec<BigInt>)>,
    outgoing: IntMatrix,
    u: IntMatrix,
    rank_in: usize,
    torsion_slots: Vec<usize>,
    v2_inv: IntMatrix,
    rank_out: usize,
    dom: Domain,
}

impl DegreeSummary {
    pub fn free_rank(&self) -> usize {
        self.free_reps.len()
    }

    pub fn torsion_orders(&self) -> Vec<BigInt> {
        self.torsion.iter().map(|(o, _)| o.clone()).collect()
    }

    /// Number of generators: free first, then torsion.
    pub fn generator_count(&self) -> usize {
        self.free_reps.len() + self.torsion.len()
    }

    pub fn is_cycle(&self, z: &[BigInt]) -> bool {
        self.outgoing.mul_vec(z).into_iter().all(|x| self.dom.reduce(x).is_zero())
    }

    /// Coordinates of a (co)cycle: free coefficients followed by torsion
    /// coefficients reduced modulo their orders.
    pub fn coordinates(&self, z: &[BigInt]) -> Result<Vec<BigInt>> {
        if z.len() != self.u.cols {
            return Err(Error::Validation(format!(
                "vector of length {} in a degree of rank {}",
                z.len(),
                self.u.cols
            )));
        }
        if !self.is_cycle(z) {
            return Err(Error::Consistency("coordinates requested for a non-cycle".into()));
        }
        let y: Vec<BigInt> = self.u.mul_vec(z).into_iter().map(|x| self.dom.reduce(x)).collect();
        let tail = y[self.rank_in..].to_vec();
        let t: Vec<BigInt> = self.v2_inv.mul_vec(&tail).into_iter().map(|x| self.dom.reduce(x)).collect();
        if t[..self.rank_out].iter().any(|x| !x.is_zero()) {
            return Err(Error::Consistency("cycle outside the computed kernel".into()));
        }
        let mut out: Vec<BigInt> = t[self.rank_out..].to_vec();
        for (slot, (order, _)) in self.torsion_slots.iter().zip(&self.torsion) {
            out.push(y[*slot].mod_floor(order));
        }
        Ok(out)
    }
}

/// Per-degree (co)homology of a free complex.
#[derive(Clone, Debug)]
pub struct HomologySummary {
    pub ring: CoefficientRing,
    pub degrees: Vec<DegreeSummary>,
}

impl HomologySummary {
    pub fn free_rank(&self, n: usize) -> usize {
        self.degrees.get(n).map_or(0, |d| d.free_rank())
    }

    pub fn torsion(&self, n: usize) -> Vec<BigInt> {
        self.degrees.get(n).map_or(Vec::new(), |d| d.torsion_orders())
    }

    pub fn coordinates(&self, n: usize, z: &[BigInt]) -> Result<Vec<BigInt>> {
        self.degrees
            .get(n)
            .ok_or_else(|| Error::Validation(format!("degree {n} outside the complex")))?
            .coordinates(z)
    }
}

/// (Co)homology of `c` with coefficients in `ring`. Over Q the torsion is
/// discarded; over F_p the entries are reduced first.
pub fn homology(c: &FreeComplex, ring: CoefficientRing) -> Result<HomologySummary> {
    if !c.squares_to_zero() {
        return Err(Error::Validation("differential does not square to zero".into()));
    }
    let dom = ring.domain();
    let mut degrees = Vec::with_capacity(c.dims.len());
    for n in 0..c.dims.len() {
        let incoming = c.incoming(n);
        let f1 = factorize(&incoming, dom);
        let diag = f1.diagonal();
        let rank_in = diag.len();
        let mut outgoing = c.maps[n].clone();
        outgoing.reduce_all(dom);
        let w_tail = f1.u_inv.columns_from(rank_in);
        let restricted = outgoing.mul(&w_tail);
        let f2 = factorize(&restricted, dom);
        let rank_out = f2.rank();
        let kernel = f2.v.columns_from(rank_out);
        let free_block = w_tail.mul(&kernel);
        let free_reps = (0..free_block.cols)
            .map(|j| free_block.column(j).into_iter().map(|x| dom.reduce(x)).collect())
            .collect();
        let mut torsion = Vec::new();
        let mut torsion_slots = Vec::new();
        if ring == CoefficientRing::Integers {
            for (i, d) in diag.iter().enumerate() {
                if !d.is_one() {
                    torsion.push((d.clone(), f1.u_inv.column(i)));
                    torsion_slots.push(i);
                }
            }
        }
        degrees.push(DegreeSummary {
            free_reps,
            torsion,
            outgoing,
            u: f1.u,
            rank_in,
            torsion_slots,
            v2_inv: f2.v_inv,
            rank_out,
            dom,
        });
    }
    Ok(HomologySummary { ring, degrees })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_identity(a: &IntMatrix, f: &SNFactorization) {
        assert_eq!(f.u.mul(a).mul(&f.v), f.s);
        assert_eq!(f.u.mul(&f.u_inv), IntMatrix::identity(a.rows()));
        assert_eq!(f.v.mul(&f.v_inv), IntMatrix::identity(a.cols()));
    }

    #[test]
    fn snf_single_entry() {
        let a = IntMatrix::from_rows(&[vec![2]]);
        let f = smith_normal_form(&a);
        assert_eq!(f.s, a);
        check_identity(&a, &f);
    }

    #[test]
    fn snf_zero_matrix() {
        let a = IntMatrix::zeros(2, 3);
        let f = smith_normal_form(&a);
        assert!(f.s.is_zero());
        assert_eq!(f.u, IntMatrix::identity(2));
        assert_eq!(f.v, IntMatrix::identity(3));
    }

    #[test]
    fn snf_two_by_two() {
        // d1·d2 = |det| = 8 with d1 = gcd of entries = 2.
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let f = smith_normal_form(&a);
        assert_eq!(f.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
        check_identity(&a, &f);
    }

    #[test]
    fn snf_over_prime_field() {
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let f = smith_normal_form_over(&a, CoefficientRing::PrimeField(2));
        assert_eq!(f.rank(), 0);
        let f = smith_normal_form_over(&a, CoefficientRing::PrimeField(3));
        assert_eq!(f.rank(), 2);
        let f = smith_normal_form_over(&IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]]), CoefficientRing::PrimeField(5));
        assert_eq!(f.rank(), 1);
    }

    #[test]
    fn determinant_small() {
        assert_eq!(IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]).determinant(), BigInt::from(-8));
        assert_eq!(IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).determinant(), BigInt::from(-1));
        assert_eq!(IntMatrix::identity(0).determinant(), BigInt::from(1));
    }

    #[test]
    fn ring_parsing() {
        assert_eq!("Z".parse::<CoefficientRing>().unwrap(), CoefficientRing::Integers);
        assert_eq!("Q".parse::<CoefficientRing>().unwrap(), CoefficientRing::Rationals);
        assert_eq!("Fp:3".parse::<CoefficientRing>().unwrap(), CoefficientRing::PrimeField(3));
        assert_eq!("F2".parse::<CoefficientRing>().unwrap(), CoefficientRing::PrimeField(2));
        assert!("Fp:4".parse::<CoefficientRing>().is_err());
        assert!("R".parse::<CoefficientRing>().is_err());
    }

    #[test]
    fn cohomology_of_circle_cochains() {
        // Vertices a,b; edges e,f both from a to b: δ has rows e,f and columns a,b.
        let d0 = IntMatrix::from_rows(&[vec![-1, 1], vec![-1, 1]]);
        let c = FreeComplex::cochain(vec![2, 2], vec![d0, IntMatrix::zeros(0, 2)]).unwrap();
        let h = homology(&c, CoefficientRing::Integers).unwrap();
        assert_eq!(h.free_rank(0), 1);
        assert_eq!(h.free_rank(1), 1);
        // A coboundary has zero coordinates.
        let cob = vec![BigInt::from(-1), BigInt::from(-1)];
        assert_eq!(h.coordinates(1, &cob).unwrap(), vec![BigInt::zero()]);
        let rep = h.degrees[1].free_reps[0].clone();
        assert_eq!(h.coordinates(1, &rep).unwrap(), vec![BigInt::one()]);
    }

    #[test]
    fn torsion_from_multiplication_by_two() {
        let c = FreeComplex::cochain(
            vec![1, 1],
            vec![IntMatrix::from_rows(&[vec![2]]), IntMatrix::zeros(0, 1)],
        )
        .unwrap();
        let h = homology(&c, CoefficientRing::Integers).unwrap();
        assert_eq!(h.free_rank(1), 0);
        assert_eq!(h.torsion(1), vec![BigInt::from(2)]);
        assert_eq!(h.coordinates(1, &[BigInt::from(3)]).unwrap(), vec![BigInt::one()]);
        let h2 = homology(&c, CoefficientRing::PrimeField(2)).unwrap();
        assert_eq!((h2.free_rank(0), h2.free_rank(1)), (1, 1));
        let hq = homology(&c, CoefficientRing::Rationals).unwrap();
        assert_eq!((hq.free_rank(0), hq.free_rank(1)), (0, 0));
    }

    #[test]
    fn rejects_non_complex() {
        let c = FreeComplex::cochain(
            vec![1, 1, 1],
            vec![
                IntMatrix::from_rows(&[vec![1]]),
                IntMatrix::from_rows(&[vec![1]]),
                IntMatrix::zeros(0, 1),
            ],
        )
        .unwrap();
        assert!(homology(&c, CoefficientRing::Integers).is_err());
    }

    #[test]
    fn non_cycle_coordinates_rejected() {
        let d0 = IntMatrix::from_rows(&[vec![-1, 1]]);
        let c = FreeComplex::cochain(vec![2, 1], vec![d0, IntMatrix::zeros(0, 1)]).unwrap();
        let h = homology(&c, CoefficientRing::Integers).unwrap();
        assert!(h.coordinates(0, &[BigInt::one(), BigInt::zero()]).is_err());
    }
}
