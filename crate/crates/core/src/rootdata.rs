//! Finite Coxeter root data: Cartan matrices, root systems, coroots and fundamental weights.
//!
//! Everything is expressed in simple-root coordinates. The Cartan convention is
//! `c[i][j] = alpha_j^vee(alpha_i)`, so `s_i(alpha_j) = alpha_j - c[j][i] alpha_i`.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{NumberRing, Scalar, Q};

pub const ROOT_CAP: usize = 1_000_000;

pub type Vector = Vec<Scalar>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum I2Kind {
    #[default]
    Normalized,
    Polarized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Lattice {
    #[default]
    Root,
    Weight,
}

/// A Cartan type such as `A3`, `I2(7):normalized` or `B2@weight`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypeSpec {
    pub family: Family,
    pub rank: usize,
    /// Dihedral order for `I2(m)`.
    pub m: u32,
    pub kind: I2Kind,
    pub lattice: Lattice,
}

impl TypeSpec {
    pub fn new(family: Family, rank: usize) -> Self {
        TypeSpec { family, rank, m: 0, kind: I2Kind::Normalized, lattice: Lattice::Root }
    }

    pub fn dihedral(m: u32, kind: I2Kind) -> Self {
        TypeSpec { family: Family::I, rank: 2, m, kind, lattice: Lattice::Root }
    }

    pub fn with_lattice(mut self, lattice: Lattice) -> Self {
        self.lattice = lattice;
        self
    }
}

impl FromStr for TypeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad type spec {s:?}"));
        let s = s.trim();
        let (body, lattice) = match s.split_once('@') {
            None => (s, Lattice::Root),
            Some((b, "root")) => (b, Lattice::Root),
            Some((b, "weight")) => (b, Lattice::Weight),
            Some(_) => return Err(bad()),
        };
        let (body, kind) = match body.split_once(':') {
            None => (body, None),
            Some((b, "normalized")) => (b, Some(I2Kind::Normalized)),
            Some((b, "polarized")) => (b, Some(I2Kind::Polarized)),
            Some(_) => return Err(bad()),
        };
        let mut chars = body.chars();
        let letter = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let rest = chars.as_str();
        let family = match letter {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            'H' => Family::H,
            'I' => Family::I,
            _ => return Err(bad()),
        };
        let spec = if family == Family::I {
            let inner = rest.strip_prefix("2(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
            let m: u32 = inner.parse().map_err(|_| bad())?;
            TypeSpec::dihedral(m, kind.unwrap_or_default())
        } else {
            if kind.is_some() {
                return Err(bad());
            }
            let rank: usize = rest.parse().map_err(|_| bad())?;
            TypeSpec::new(family, rank)
        };
        Ok(spec.with_lattice(lattice))
    }
}

impl fmt::Display for TypeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family == Family::I {
            let k = match self.kind {
                I2Kind::Normalized => "normalized",
                I2Kind::Polarized => "polarized",
            };
            write!(f, "I2({}):{k}", self.m)?;
        } else {
            write!(f, "{:?}{}", self.family, self.rank)?;
        }
        if self.lattice == Lattice::Weight {
            write!(f, "@weight")?;
        }
        Ok(())
    }
}

/// Square matrix over [`Scalar`], row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![Scalar::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = Scalar::one();
        }
        Matrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let n = rows.len();
        Matrix { n, data: rows.into_iter().flatten().collect() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.n + c]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.n).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        let n = self.n;
        let mut data = vec![Scalar::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        data[i * n + j] += &(a * b);
                    }
                }
            }
        }
        Matrix { n, data }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        (0..self.n)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        Matrix { n, data: (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect() }
    }

    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.n;
        let mut a: Vec<Vec<Scalar>> = self.rows();
        let mut inv = Matrix::identity(n).rows();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero())?;
            a.swap(c, p);
            inv.swap(c, p);
            let piv = a[c][c].inv()?;
            for x in a[c].iter_mut().chain(inv[c].iter_mut()) {
                *x = &*x * &piv;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for j in 0..n {
                        let t = &f * &a[c][j];
                        a[r][j] -= &t;
                        let t = &f * &inv[c][j];
                        inv[r][j] -= &t;
                    }
                }
            }
        }
        Some(Matrix::from_rows(inv))
    }

    pub fn determinant(&self) -> Scalar {
        let n = self.n;
        let mut a = self.rows();
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                a.swap(c, p);
                det = -det;
            }
            det = &det * &a[c][c];
            let piv = a[c][c].inv().unwrap();
            for r in c + 1..n {
                if !a[r][c].is_zero() {
                    let f = &a[r][c] * &piv;
                    for j in c..n {
                        let t = &f * &a[c][j];
                        a[r][j] -= &t;
                    }
                }
            }
        }
        det
    }
}

/// Sign of a nonzero root-like vector: the sign of its first nonzero coordinate.
pub fn vector_sign(v: &[Scalar]) -> Ordering {
    v.iter().map(|x| x.sign()).find(|s| *s != Ordering::Equal).unwrap_or(Ordering::Equal)
}

pub fn simple_vector(n: usize, i: usize) -> Vector {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

#[derive(Debug)]
pub struct RootDatum {
    spec: TypeSpec,
    ring: Arc<NumberRing>,
    cartan: Matrix,
    reflections: Vec<Matrix>,
    positive: Vec<Vector>,
    // pairing functional of each positive coroot: coroots[b][k] = beta^vee(alpha_k)
    coroots: Vec<Vector>,
    // root -> (index into positive, is_positive)
    index: HashMap<Vector, (usize, bool)>,
    crystallographic: bool,
}

fn chain(n: usize) -> Vec<(usize, usize)> {
    (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect()
}

impl RootDatum {
    pub fn parse(s: &str) -> Result<Arc<Self>> {
        Self::new(s.parse()?)
    }

    pub fn new(spec: TypeSpec) -> Result<Arc<Self>> {
        let unsupported = || Error::Unsupported(format!("type {spec}"));
        let n = spec.rank;
        let (ring, rows) = match spec.family {
            Family::I => {
                if spec.m < 2 {
                    return Err(unsupported());
                }
                let ring = NumberRing::new(spec.m)?;
                let t = ring.tau();
                let rows = match spec.kind {
                    I2Kind::Normalized => vec![vec![Scalar::int(2), -&t], vec![-&t, Scalar::int(2)]],
                    I2Kind::Polarized => {
                        if spec.m % 2 == 1 && spec.m != 3 {
                            return Err(Error::Unsupported(format!(
                                "polarized I2({}) needs even m or m = 3",
                                spec.m
                            )));
                        }
                        vec![vec![Scalar::int(2), -(&t * &t)], vec![Scalar::int(-1), Scalar::int(2)]]
                    }
                };
                (ring, rows)
            }
            Family::H => {
                if n != 3 && n != 4 {
                    return Err(unsupported());
                }
                let ring = NumberRing::new(5)?;
                let t = ring.tau();
                let mut rows = integer_cartan(n, &chain(n), &[]);
                rows[0][1] = -&t;
                rows[1][0] = -&t;
                (ring, rows)
            }
            f => {
                let ok = match f {
                    Family::A => n >= 1,
                    Family::B | Family::C => n >= 2,
                    Family::D => n >= 4,
                    Family::E => (6..=8).contains(&n),
                    Family::F => n == 4,
                    Family::G => n == 2,
                    _ => unreachable!(),
                };
                if !ok {
                    return Err(unsupported());
                }
                let rows = match f {
                    Family::A => integer_cartan(n, &chain(n), &[]),
                    Family::B => integer_cartan(n, &chain(n), &[(n - 2, n - 1, -2, -1)]),
                    Family::C => integer_cartan(n, &chain(n), &[(n - 2, n - 1, -1, -2)]),
                    Family::D => {
                        let mut e = chain(n - 1);
                        e.push((n - 3, n - 1));
                        integer_cartan(n, &e, &[])
                    }
                    Family::E => {
                        let mut e = vec![(0, 2), (1, 3)];
                        e.extend((2..n - 1).map(|i| (i, i + 1)));
                        integer_cartan(n, &e, &[])
                    }
                    Family::F => integer_cartan(4, &chain(4), &[(1, 2, -2, -1)]),
                    Family::G => integer_cartan(2, &[], &[(0, 1, -3, -1)]),
                    _ => unreachable!(),
                };
                (NumberRing::integers(), rows)
            }
        };
        Self::from_cartan(spec, ring, rows)
    }

    /// Builds a datum from an explicit Cartan matrix `c[i][j] = alpha_j^vee(alpha_i)`.
    pub fn from_cartan(spec: TypeSpec, ring: Arc<NumberRing>, rows: Vec<Vec<Scalar>>) -> Result<Arc<Self>> {
        let n = rows.len();
        let cartan = Matrix::from_rows(rows);
        let crystallographic = cartan.data.iter().all(|c| c.as_integer().is_some());
        let reflections: Vec<Matrix> = (0..n)
            .map(|i| {
                let mut m = Matrix::identity(n);
                for j in 0..n {
                    // column j: alpha_j - c[j][i] alpha_i
                    let v = m.data[i * n + j].clone() - cartan.get(j, i);
                    m.data[i * n + j] = v;
                }
                m
            })
            .collect();

        let mut roots: Vec<(Vector, Vector)> = Vec::new();
        let mut seen: HashMap<Vector, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let v = simple_vector(n, i);
            let co = cartan.column(i);
            seen.insert(v.clone(), roots.len());
            roots.push((v, co));
            queue.push_back(i);
        }
        while let Some(r) = queue.pop_front() {
            for i in 0..n {
                let (v, co) = &roots[r];
                let nv = reflections[i].apply(v);
                if seen.contains_key(&nv) {
                    continue;
                }
                // (s_i beta)^vee(alpha_k) = beta^vee(s_i alpha_k)
                let nco: Vector = (0..n).map(|k| &co[k] - &(cartan.get(k, i) * &co[i])).collect();
                if roots.len() >= ROOT_CAP {
                    return Err(Error::CapExceeded { what: "root enumeration", cap: ROOT_CAP });
                }
                seen.insert(nv.clone(), roots.len());
                roots.push((nv, nco));
                queue.push_back(roots.len() - 1);
            }
        }
        let mut positive = Vec::new();
        let mut coroots = Vec::new();
        let mut index = HashMap::new();
        for (v, co) in &roots {
            if vector_sign(v) == Ordering::Greater {
                index.insert(v.clone(), (positive.len(), true));
                positive.push(v.clone());
                coroots.push(co.clone());
            }
        }
        for (b, v) in positive.iter().enumerate() {
            let neg: Vector = v.iter().map(|x| -x).collect();
            if !seen.contains_key(&neg) {
                return Err(Error::Invariant(format!("root system not closed under negation for {spec}")));
            }
            index.insert(neg, (b, false));
        }
        Ok(Arc::new(RootDatum { spec, ring, cartan, reflections, positive, coroots, index, crystallographic }))
    }

    pub fn spec(&self) -> &TypeSpec {
        &self.spec
    }
    pub fn rank(&self) -> usize {
        self.cartan.n
    }
    pub fn ring(&self) -> &Arc<NumberRing> {
        &self.ring
    }
    pub fn cartan(&self) -> &Matrix {
        &self.cartan
    }
    pub fn is_crystallographic(&self) -> bool {
        self.crystallographic
    }
    pub fn lattice(&self) -> Lattice {
        self.spec.lattice
    }

    /// `c[i][j] = alpha_j^vee(alpha_i)`, zero-based.
    pub fn cartan_entry(&self, i: usize, j: usize) -> &Scalar {
        self.cartan.get(i, j)
    }

    pub fn reflection(&self, i: usize) -> &Matrix {
        &self.reflections[i]
    }

    /// Positive roots; the first `rank` entries are the simple roots in order.
    pub fn positive_roots(&self) -> &[Vector] {
        &self.positive
    }

    pub fn all_roots(&self) -> Vec<Vector> {
        let mut out = self.positive.clone();
        out.extend(self.positive.iter().map(|v| v.iter().map(|x| -x).collect::<Vector>()));
        out
    }

    /// Index of `+-v` among the positive roots and whether `v` itself is positive.
    pub fn root_index(&self, v: &[Scalar]) -> Option<(usize, bool)> {
        self.index.get(v).copied()
    }

    /// `alpha_i^vee(lambda)` for a zero-based simple index.
    pub fn simple_pairing(&self, i: usize, lambda: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (k, x) in lambda.iter().enumerate() {
            if !x.is_zero() {
                acc += &(x * self.cartan.get(k, i));
            }
        }
        acc
    }

    /// `beta^vee(lambda)` for a root `beta`.
    pub fn pairing(&self, beta: &[Scalar], lambda: &[Scalar]) -> Result<Scalar> {
        let (b, pos) = self.root_index(beta).ok_or_else(|| Error::Invariant("not a root".into()))?;
        let v = self.coroot_pairing(b, lambda);
        Ok(if pos { v } else { -v })
    }

    /// `beta^vee(lambda)` for the positive root with index `b`.
    pub fn coroot_pairing(&self, b: usize, lambda: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (x, g) in lambda.iter().zip(&self.coroots[b]) {
            if !x.is_zero() && !g.is_zero() {
                acc += &(x * g);
            }
        }
        acc
    }

    pub fn reflect(&self, i: usize, lambda: &[Scalar]) -> Vector {
        self.reflections[i].apply(lambda)
    }

    /// `s_beta(lambda) = lambda - beta^vee(lambda) beta`.
    pub fn reflect_root(&self, b: usize, lambda: &[Scalar]) -> Vector {
        let k = self.coroot_pairing(b, lambda);
        lambda.iter().zip(&self.positive[b]).map(|(l, x)| l - &(&k * x)).collect()
    }

    /// Matrix of the reflection in the positive root `b`.
    pub fn root_reflection(&self, b: usize) -> Matrix {
        let n = self.rank();
        let cols: Vec<Vector> = (0..n).map(|j| self.reflect_root(b, &simple_vector(n, j))).collect();
        Matrix::from_rows((0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect())
    }

    /// Order of `s_i s_j` (zero-based), `None` if infinite.
    pub fn coxeter_exponent(&self, i: usize, j: usize) -> Option<u32> {
        if i == j {
            return Some(1);
        }
        let p = (self.cartan.get(i, j) * self.cartan.get(j, i)).to_f64();
        if p.abs() < 1e-12 {
            return Some(2);
        }
        (3..=1000u32).find(|&m| {
            let c = (std::f64::consts::PI / m as f64).cos();
            (4.0 * c * c - p).abs() < 1e-10
        })
    }

    pub fn coxeter_matrix(&self) -> Vec<Vec<Option<u32>>> {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| self.coxeter_exponent(i, j)).collect()).collect()
    }

    /// Fundamental weights in simple-root coordinates: `omega_i = sum_j (C^-1)[i][j] alpha_j`.
    pub fn fundamental_weights(&self) -> Vec<Vector> {
        self.cartan.inverse().expect("finite-type Cartan matrix is invertible").rows()
    }

    /// `|Lambda_w / Lambda_r|`, the norm of `det C`.
    pub fn lattice_index(&self) -> Q {
        self.cartan.determinant().norm()
    }

    /// Basis of the chosen lattice in simple-root coordinates.
    pub fn lattice_basis(&self) -> Vec<Vector> {
        match self.spec.lattice {
            Lattice::Root => (0..self.rank()).map(|i| simple_vector(self.rank(), i)).collect(),
            Lattice::Weight => self.fundamental_weights(),
        }
    }

    pub fn height_sign(&self, v: &[Scalar]) -> Ordering {
        vector_sign(v)
    }

    pub fn require_crystallographic(&self) -> Result<()> {
        if self.crystallographic {
            Ok(())
        } else {
            Err(Error::NotCrystallographic)
        }
    }
}

fn integer_cartan(n: usize, simple_edges: &[(usize, usize)], weighted: &[(usize, usize, i64, i64)]) -> Vec<Vec<Scalar>> {
    let mut c = vec![vec![Scalar::zero(); n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = Scalar::int(2);
    }
    for &(i, j) in simple_edges {
        c[i][j] = Scalar::int(-1);
        c[j][i] = Scalar::int(-1);
    }
    for &(i, j, a, b) in weighted {
        c[i][j] = Scalar::int(a);
        c[j][i] = Scalar::int(b);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(d: &RootDatum) -> Vec<Vec<i128>> {
        d.cartan().rows().iter().map(|r| r.iter().map(|x| x.as_integer().unwrap()).collect()).collect()
    }

    #[test]
    fn small_cartans() {
        assert_eq!(ints(&RootDatum::parse("A2").unwrap()), vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(ints(&RootDatum::parse("B2").unwrap()), vec![vec![2, -2], vec![-1, 2]]);
        assert_eq!(ints(&RootDatum::parse("G2").unwrap()), vec![vec![2, -3], vec![-1, 2]]);
        assert_eq!(ints(&RootDatum::parse("I2(6):polarized").unwrap()), vec![vec![2, -3], vec![-1, 2]]);
        assert_eq!(ints(&RootDatum::parse("I2(4):polarized").unwrap()), vec![vec![2, -2], vec![-1, 2]]);
    }

    #[test]
    fn root_counts() {
        for (t, k) in [
            ("A3", 6),
            ("B3", 9),
            ("C3", 9),
            ("D4", 12),
            ("E6", 36),
            ("E8", 120),
            ("F4", 24),
            ("G2", 6),
            ("H3", 15),
            ("H4", 60),
            ("I2(5)", 5),
            ("I2(7):normalized", 7),
            ("I2(8):polarized", 8),
        ] {
            assert_eq!(RootDatum::parse(t).unwrap().positive_roots().len(), k, "{t}");
        }
    }

    #[test]
    fn spec_roundtrip() {
        for s in ["A3", "I2(7):normalized", "I2(8):polarized", "H3", "B2@weight"] {
            assert_eq!(s.parse::<TypeSpec>().unwrap().to_string(), s);
        }
        assert!("X3".parse::<TypeSpec>().is_err());
        assert!("I2(7)".parse::<TypeSpec>().is_ok());
        assert!(RootDatum::parse("I2(7):polarized").is_err());
    }

    #[test]
    fn weights_and_index() {
        let a2 = RootDatum::parse("A2").unwrap();
        let w = a2.fundamental_weights();
        assert_eq!(w[0], vec![Scalar::rat(2, 3), Scalar::rat(1, 3)]);
        assert_eq!(a2.lattice_index(), Q::from_integer(3));
        assert_eq!(RootDatum::parse("I2(5)").unwrap().lattice_index(), Q::from_integer(5));
        assert_eq!(a2.pairing(&[Scalar::int(0), Scalar::int(1)], &[Scalar::int(1), Scalar::int(0)]).unwrap(), Scalar::int(-1));
    }

    #[test]
    fn coxeter_exponents() {
        assert_eq!(RootDatum::parse("H3").unwrap().coxeter_matrix()[0][1], Some(5));
        assert_eq!(RootDatum::parse("G2").unwrap().coxeter_exponent(0, 1), Some(6));
        assert_eq!(RootDatum::parse("I2(8):polarized").unwrap().coxeter_exponent(0, 1), Some(8));
        assert_eq!(RootDatum::parse("A3").unwrap().coxeter_exponent(0, 2), Some(2));
    }
}
