//! Coefficient rings `Z[tau_m]` with `tau_m = 2cos(pi/m)`, and the scalar type used everywhere else.
//!
//! Elements are stored in the power basis `1, tau, ..., tau^(d-1)`. Rational elements of any ring
//! share one representation ([`Scalar::Rat`]), so constants never need to know their ring.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Q = Ratio<i128>;

const MAX_M: u32 = 90;

/// `Z[tau_m]` together with its real embedding.
#[derive(Debug)]
pub struct NumberRing {
    m: u32,
    minpoly: Vec<i64>,
    embedding: f64,
    // coordinates of tau^k, k < 2d - 1
    powers: Vec<Vec<i128>>,
}

impl PartialEq for NumberRing {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m
    }
}
impl Eq for NumberRing {}

fn poly_divexact(num: &[i128], den: &[i128]) -> Vec<i128> {
    // both monic, integer coefficients, ascending order
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let mut q = vec![0i128; num.len() - dn];
    for k in (0..q.len()).rev() {
        let c = rem[k + dn];
        q[k] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

fn cyclotomic(n: u32) -> Vec<i128> {
    let mut p = vec![0i128; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_divexact(&p, &cyclotomic(d));
        }
    }
    p
}

/// Minimal polynomial of `2cos(pi/m)` over `Q`, ascending coefficients, monic.
pub fn minpoly_2cos(m: u32) -> Result<Vec<i64>> {
    if m < 2 {
        return Err(Error::Unsupported(format!("m = {m} (need m >= 2)")));
    }
    if m > MAX_M {
        return Err(Error::Unsupported(format!("m = {m} (rings are built for m <= {MAX_M})")));
    }
    if m == 2 {
        return Ok(vec![0, 1]);
    }
    // Phi_{2m}(z) = z^h M(z + 1/z); z^k + z^-k = P_k(z + 1/z)
    let phi = cyclotomic(2 * m);
    let h = (phi.len() - 1) / 2;
    let mut cheb: Vec<Vec<i128>> = vec![vec![2], vec![0, 1]];
    for k in 2..=h {
        let mut next = vec![0i128; k + 1];
        for (j, &c) in cheb[k - 1].iter().enumerate() {
            next[j + 1] += c;
        }
        for (j, &c) in cheb[k - 2].iter().enumerate() {
            next[j] = next[j].checked_sub(c).ok_or(Error::Unsupported(format!("m = {m}")))?;
        }
        cheb.push(next);
    }
    let mut out = vec![0i128; h + 1];
    out[0] = phi[h];
    for k in 1..=h {
        for (j, &c) in cheb[k].iter().enumerate() {
            out[j] += phi[h + k] * c;
        }
    }
    out.into_iter()
        .map(|c| i64::try_from(c).map_err(|_| Error::Unsupported(format!("m = {m}"))))
        .collect()
}

impl NumberRing {
    pub fn new(m: u32) -> Result<Arc<Self>> {
        let minpoly = minpoly_2cos(m)?;
        let d = minpoly.len() - 1;
        let mut powers: Vec<Vec<i128>> = Vec::new();
        for k in 0..(2 * d).max(1) - 1 {
            let v = if k < d {
                let mut e = vec![0i128; d];
                e[k] = 1;
                e
            } else {
                // tau * tau^(k-1)
                let prev = &powers[k - 1];
                let mut e = vec![0i128; d];
                for j in 0..d - 1 {
                    e[j + 1] = prev[j];
                }
                let top = prev[d - 1];
                for j in 0..d {
                    e[j] -= top * minpoly[j] as i128;
                }
                e
            };
            powers.push(v);
        }
        let embedding = 2.0 * (std::f64::consts::PI / m as f64).cos();
        Ok(Arc::new(NumberRing { m, minpoly, embedding, powers }))
    }

    /// The ring `Z`, presented as `Z[tau_3]`.
    pub fn integers() -> Arc<Self> {
        Self::new(3).expect("m = 3")
    }

    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }
    pub fn minpoly(&self) -> &[i64] {
        &self.minpoly
    }
    pub fn embedding(&self) -> f64 {
        self.embedding
    }

    /// `tau_m` as a scalar of this ring.
    pub fn tau(self: &Arc<Self>) -> Scalar {
        if self.degree() == 1 {
            return Scalar::Rat(Q::from_integer(-self.minpoly[0] as i128));
        }
        let mut c = vec![Q::zero(); self.degree()];
        c[1] = Q::one();
        Scalar::from_coords(self, c)
    }

    fn mul_coords(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let d = self.degree();
        let mut conv = vec![Q::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += x * y;
                }
            }
        }
        let mut out = conv[..d].to_vec();
        for (k, c) in conv.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (j, p) in self.powers[k].iter().enumerate() {
                if *p != 0 {
                    out[j] += c * Q::from_integer(*p);
                }
            }
        }
        out
    }

    fn inverse_coords(&self, a: &[Q]) -> Option<Vec<Q>> {
        let d = self.degree();
        // columns: a * tau^j
        let mut cols = Vec::with_capacity(d);
        for j in 0..d {
            let mut e = vec![Q::zero(); d];
            e[j] = Q::one();
            cols.push(self.mul_coords(a, &e));
        }
        let mut mat: Vec<Vec<Q>> = (0..d)
            .map(|r| {
                let mut row: Vec<Q> = (0..d).map(|c| cols[c][r]).collect();
                row.push(if r == 0 { Q::one() } else { Q::zero() });
                row
            })
            .collect();
        for c in 0..d {
            let p = (c..d).find(|&r| !mat[r][c].is_zero())?;
            mat.swap(c, p);
            let piv = mat[c][c];
            for x in mat[c].iter_mut() {
                *x /= piv;
            }
            for r in 0..d {
                if r != c && !mat[r][c].is_zero() {
                    let f = mat[r][c];
                    let src = mat[c].clone();
                    for (x, s) in mat[r].iter_mut().zip(src) {
                        *x -= f * s;
                    }
                }
            }
        }
        Some(mat.into_iter().map(|row| row[d]).collect())
    }

    /// Field norm `N(a) = det(mult-by-a)`.
    fn norm_coords(&self, a: &[Q]) -> Q {
        let d = self.degree();
        let mut mat: Vec<Vec<Q>> = vec![vec![Q::zero(); d]; d];
        for j in 0..d {
            let mut e = vec![Q::zero(); d];
            e[j] = Q::one();
            let col = self.mul_coords(a, &e);
            for r in 0..d {
                mat[r][j] = col[r];
            }
        }
        determinant(mat)
    }

    fn eval_f64(&self, a: &[Q]) -> (f64, f64) {
        let mut v = 0.0;
        let mut mag = 0.0;
        let mut p = 1.0;
        for c in a {
            let cf = c.to_f64().unwrap_or(f64::NAN);
            v += cf * p;
            mag += cf.abs() * p;
            p *= self.embedding;
        }
        (v, mag)
    }

    fn sign_coords(&self, a: &[Q]) -> Ordering {
        if a.iter().all(|c| c.is_zero()) {
            return Ordering::Equal;
        }
        let (v, mag) = self.eval_f64(a);
        if v.is_finite() && v.abs() > mag * 1e-9 {
            return v.partial_cmp(&0.0).unwrap();
        }
        self.sign_exact(a)
    }

    fn minpoly_at(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.minpoly.iter().rev() {
            acc = acc * x + BigRational::from_integer(BigInt::from(*c));
        }
        acc
    }

    /// Interval evaluation with `tau` isolated to width `2^-bits`, doubling `bits` until decisive.
    fn sign_exact(&self, a: &[Q]) -> Ordering {
        let big = |q: &Q| BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()));
        let scale = BigInt::from(1u64 << 40);
        let approx = BigRational::new(
            BigInt::from((self.embedding * (1u64 << 40) as f64).round() as i64),
            scale.clone(),
        );
        let eps = BigRational::new(BigInt::one(), BigInt::from(1u64 << 28));
        let mut lo = &approx - &eps;
        let mut hi = &approx + &eps;
        let s_lo = self.minpoly_at(&lo).signum();
        assert!(s_lo != self.minpoly_at(&hi).signum(), "tau isolation failed for m = {}", self.m);
        let coeffs: Vec<BigRational> = a.iter().map(big).collect();
        let mut bits = 64u32;
        loop {
            let target = BigRational::new(BigInt::one(), BigInt::one() << bits);
            while &hi - &lo > target {
                let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
                if self.minpoly_at(&mid).signum() == s_lo {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            // tau > 0, so tau^i lies in [lo^i, hi^i]
            let mut min = BigRational::zero();
            let mut max = BigRational::zero();
            let mut plo = BigRational::one();
            let mut phi = BigRational::one();
            for c in &coeffs {
                if c.is_positive() {
                    min += c * &plo;
                    max += c * &phi;
                } else {
                    min += c * &phi;
                    max += c * &plo;
                }
                plo *= &lo;
                phi *= &hi;
            }
            if min.is_positive() {
                return Ordering::Greater;
            }
            if max.is_negative() {
                return Ordering::Less;
            }
            bits *= 2;
        }
    }
}

pub(crate) fn determinant(mut mat: Vec<Vec<Q>>) -> Q {
    let d = mat.len();
    let mut det = Q::one();
    for c in 0..d {
        let Some(p) = (c..d).find(|&r| !mat[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            mat.swap(c, p);
            det = -det;
        }
        let piv = mat[c][c];
        det *= piv;
        for r in c + 1..d {
            if !mat[r][c].is_zero() {
                let f = mat[r][c] / piv;
                let src = mat[c].clone();
                for (x, s) in mat[r].iter_mut().zip(src) {
                    *x -= f * s;
                }
            }
        }
    }
    det
}

/// An element of `Q(tau_m)`.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rat(Q),
    Alg(Arc<NumberRing>, Box<[Q]>),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(Q::zero())
    }
    pub fn one() -> Self {
        Scalar::Rat(Q::one())
    }
    pub fn int(n: i64) -> Self {
        Scalar::Rat(Q::from_integer(n as i128))
    }
    pub fn rat(n: i64, d: i64) -> Self {
        Scalar::Rat(Q::new(n as i128, d as i128))
    }

    pub fn from_coords(ring: &Arc<NumberRing>, coords: Vec<Q>) -> Self {
        let mut coords = coords;
        coords.resize(ring.degree(), Q::zero());
        if coords[1..].iter().all(|c| c.is_zero()) {
            Scalar::Rat(coords[0])
        } else {
            Scalar::Alg(ring.clone(), coords.into_boxed_slice())
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(q) if q.is_zero())
    }
    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(q) if q.is_one())
    }

    pub fn as_rational(&self) -> Option<Q> {
        match self {
            Scalar::Rat(q) => Some(*q),
            Scalar::Alg(..) => None,
        }
    }

    pub fn as_integer(&self) -> Option<i128> {
        self.as_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    pub fn ring(&self) -> Option<&Arc<NumberRing>> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Alg(r, _) => Some(r),
        }
    }

    /// Power-basis coordinates padded to `d`.
    pub fn coords(&self, d: usize) -> Vec<Q> {
        match self {
            Scalar::Rat(q) => {
                let mut v = vec![Q::zero(); d.max(1)];
                v[0] = *q;
                v
            }
            Scalar::Alg(_, c) => {
                let mut v = c.to_vec();
                v.resize(d.max(c.len()), Q::zero());
                v
            }
        }
    }

    pub fn is_integral(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_integer(),
            Scalar::Alg(_, c) => c.iter().all(|q| q.is_integer()),
        }
    }

    pub fn sign(&self) -> Ordering {
        match self {
            Scalar::Rat(q) => q.cmp(&Q::zero()),
            Scalar::Alg(r, c) => r.sign_coords(c),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rat(q) => q.to_f64().unwrap_or(f64::NAN),
            Scalar::Alg(r, c) => r.eval_f64(c).0,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(q) if q.is_zero() => None,
            Scalar::Rat(q) => Some(Scalar::Rat(q.recip())),
            Scalar::Alg(r, c) => r.inverse_coords(c).map(|v| Scalar::from_coords(r, v)),
        }
    }

    /// Norm down to `Q`.
    pub fn norm(&self) -> Q {
        match self {
            Scalar::Rat(q) => *q,
            Scalar::Alg(r, c) => r.norm_coords(c),
        }
    }

    fn pair_ring<'a>(a: &'a Scalar, b: &'a Scalar) -> Result<Option<&'a Arc<NumberRing>>> {
        match (a.ring(), b.ring()) {
            (Some(x), Some(y)) if x.m != y.m => Err(Error::RingMismatch(x.m, y.m)),
            (Some(x), _) | (None, Some(x)) => Ok(Some(x)),
            (None, None) => Ok(None),
        }
    }

    pub fn try_add(&self, o: &Scalar) -> Result<Scalar> {
        Ok(match Self::pair_ring(self, o)? {
            None => Scalar::Rat(self.as_rational().unwrap() + o.as_rational().unwrap()),
            Some(r) => {
                let d = r.degree();
                let v = self.coords(d).into_iter().zip(o.coords(d)).map(|(x, y)| x + y).collect();
                Scalar::from_coords(r, v)
            }
        })
    }

    pub fn try_mul(&self, o: &Scalar) -> Result<Scalar> {
        Ok(match (self, o) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (Scalar::Rat(x), Scalar::Alg(r, c)) | (Scalar::Alg(r, c), Scalar::Rat(x)) => {
                if x.is_zero() {
                    Scalar::zero()
                } else {
                    Scalar::Alg(r.clone(), c.iter().map(|y| x * y).collect())
                }
            }
            (Scalar::Alg(r, a), Scalar::Alg(s, b)) => {
                if r.m != s.m {
                    return Err(Error::RingMismatch(r.m, s.m));
                }
                Scalar::from_coords(r, r.mul_coords(a, b))
            }
        })
    }

    pub fn pow(&self, k: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a == b,
            (Scalar::Alg(r, a), Scalar::Alg(s, b)) => r.m == s.m && a == b,
            _ => false,
        }
    }
}
impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Scalar::Rat(q) => {
                0u8.hash(state);
                q.hash(state);
            }
            Scalar::Alg(r, c) => {
                1u8.hash(state);
                r.m.hash(state);
                c.hash(state);
            }
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}
impl From<Q> for Scalar {
    fn from(q: Q) -> Self {
        Scalar::Rat(q)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $f:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $f(self, o: &Scalar) -> Scalar {
                $body(self, o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, o: Scalar) -> Scalar {
                $body(&self, &o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, o: &Scalar) -> Scalar {
                $body(&self, o)
            }
        }
    };
}

forward_binop!(Add, add, |a: &Scalar, b: &Scalar| a.try_add(b).expect("scalar ring mismatch"));
forward_binop!(Sub, sub, |a: &Scalar, b: &Scalar| a.try_add(&-b).expect("scalar ring mismatch"));
forward_binop!(Mul, mul, |a: &Scalar, b: &Scalar| a.try_mul(b).expect("scalar ring mismatch"));
forward_binop!(Div, div, |a: &Scalar, b: &Scalar| a
    .try_mul(&b.inv().expect("division by zero"))
    .expect("scalar ring mismatch"));

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(q) => Scalar::Rat(-q),
            Scalar::Alg(r, c) => Scalar::Alg(r.clone(), c.iter().map(|x| -x).collect()),
        }
    }
}
impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        if let (Scalar::Rat(a), Scalar::Rat(b)) = (&mut *self, o) {
            *a += b;
            return;
        }
        *self = &*self + o;
    }
}
impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        if let (Scalar::Rat(a), Scalar::Rat(b)) = (&mut *self, o) {
            *a -= b;
            return;
        }
        *self = &*self - o;
    }
}
impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

fn fmt_q(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) => write!(f, "{}", fmt_q(q)),
            Scalar::Alg(_, c) => {
                let mut first = true;
                for (k, q) in c.iter().enumerate().rev() {
                    if q.is_zero() {
                        continue;
                    }
                    let neg = q.is_negative();
                    let a = q.abs();
                    if first {
                        if neg {
                            write!(f, "-")?;
                        }
                    } else {
                        write!(f, " {} ", if neg { "-" } else { "+" })?;
                    }
                    first = false;
                    let mon = match k {
                        0 => String::new(),
                        1 => "tau".to_string(),
                        _ => format!("tau^{k}"),
                    };
                    if k == 0 {
                        write!(f, "{}", fmt_q(&a))?;
                    } else if a.is_one() {
                        write!(f, "{mon}")?;
                    } else {
                        write!(f, "{}*{mon}", fmt_q(&a))?;
                    }
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    pub minpoly: Vec<i64>,
    pub m: u32,
}

/// An element of `Z[tau_m]` with integer power-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicInteger {
    ring: Arc<NumberRing>,
    coords: Vec<i64>,
}

/// An element of `Q(tau_m)` with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicNumber {
    ring: Arc<NumberRing>,
    coords: Vec<Q>,
}

impl AlgebraicInteger {
    pub fn new(ring: &Arc<NumberRing>, coords: &[i64]) -> Result<Self> {
        if coords.len() > ring.degree() {
            return Err(Error::Unsupported(format!(
                "{} coordinates for a degree-{} ring",
                coords.len(),
                ring.degree()
            )));
        }
        let mut c = coords.to_vec();
        c.resize(ring.degree(), 0);
        Ok(AlgebraicInteger { ring: ring.clone(), coords: c })
    }
    pub fn ring(&self) -> &Arc<NumberRing> {
        &self.ring
    }
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }
    pub fn to_scalar(&self) -> Scalar {
        Scalar::from_coords(&self.ring, self.coords.iter().map(|&c| Q::from_integer(c as i128)).collect())
    }

    pub fn from_scalar(ring: &Arc<NumberRing>, s: &Scalar) -> Result<Self> {
        if let Some(r) = s.ring() {
            if r.m != ring.m {
                return Err(Error::RingMismatch(r.m, ring.m));
            }
        }
        let coords = s
            .coords(ring.degree())
            .iter()
            .map(|q| {
                if q.is_integer() {
                    i64::try_from(q.to_integer()).map_err(|_| Error::NotIntegral(s.to_string()))
                } else {
                    Err(Error::NotIntegral(s.to_string()))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AlgebraicInteger { ring: ring.clone(), coords })
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.ring.m != o.ring.m {
            return Err(Error::RingMismatch(self.ring.m, o.ring.m));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Self::from_scalar(&self.ring, &(self.to_scalar() + o.to_scalar()))
    }
    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Self::from_scalar(&self.ring, &(self.to_scalar() - o.to_scalar()))
    }
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Self::from_scalar(&self.ring, &(self.to_scalar() * o.to_scalar()))
    }

    /// `a / b`, which must lie in the ring.
    pub fn exact_divide(&self, b: &Self) -> Result<Self> {
        self.check(b)?;
        let inv = b.to_scalar().inv().ok_or_else(|| Error::NotDivisible("division by zero".into()))?;
        let q = self.to_scalar() * inv;
        Self::from_scalar(&self.ring, &q)
            .map_err(|_| Error::NotDivisible(format!("{} / {}", self.to_scalar(), b.to_scalar())))
    }

    pub fn sign(&self) -> Ordering {
        self.to_scalar().sign()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ring": RingJson { minpoly: self.ring.minpoly.clone(), m: self.ring.m },
            "coords": self.coords,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            ring: RingJson,
            coords: Vec<i64>,
        }
        let raw: Raw = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let ring = NumberRing::new(raw.ring.m)?;
        if ring.minpoly != raw.ring.minpoly {
            return Err(Error::Parse(format!("minpoly {:?} does not match m = {}", raw.ring.minpoly, raw.ring.m)));
        }
        Self::new(&ring, &raw.coords)
    }
}

impl AlgebraicNumber {
    pub fn new(ring: &Arc<NumberRing>, coords: Vec<Q>) -> Self {
        let mut coords = coords;
        coords.resize(ring.degree(), Q::zero());
        AlgebraicNumber { ring: ring.clone(), coords }
    }
    pub fn from_scalar(ring: &Arc<NumberRing>, s: &Scalar) -> Self {
        Self::new(ring, s.coords(ring.degree()))
    }
    pub fn to_scalar(&self) -> Scalar {
        Scalar::from_coords(&self.ring, self.coords.clone())
    }
    pub fn coords(&self) -> &[Q] {
        &self.coords
    }
    /// `Some` exactly when every coordinate is an integer.
    pub fn is_integral(&self) -> Option<AlgebraicInteger> {
        AlgebraicInteger::from_scalar(&self.ring, &self.to_scalar()).ok()
    }
}
