//! Closed forms for augmented constants in rank two.
//!
//! With Cartan matrix `[[2, -a], [-b, 2]]` and `sqrt(ab) = 2cos(pi/m)`, define
//! `A_k = a B_{k-1} - A_{k-2}`, `B_k = b A_{k-1} - B_{k-2}` from `A_0 = B_0 = 0`, `A_1 = B_1 = 1`.
//! Then `c^{u_{r+t}}_{u_r,u_t}` is the `A`-binomial `C(r,t)` and `c^{v_{r+t}}_{v_r,v_t}` the
//! `B`-binomial `D(r,t)`, where `u_r = ...s_2 s_1` and `v_r = ...s_1 s_2` have length `r`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{AlgebraicInteger, NumberRing, Scalar};
use crate::rootdata::RootDatum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// Elements ending in `s_1`; constants `C(r,t)`.
    U,
    /// Elements ending in `s_2`; constants `D(r,t)`.
    V,
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "u" | "U" => Ok(Side::U),
            "v" | "V" => Ok(Side::V),
            _ => Err(Error::Parse(format!("side must be u or v, got {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Rank2Data {
    ring: Arc<NumberRing>,
    m: u32,
    a: Scalar,
    b: Scalar,
    seq_a: Vec<AlgebraicInteger>,
    seq_b: Vec<AlgebraicInteger>,
}

impl Rank2Data {
    /// Sequences up to index `m`. For `m = 2` the off-diagonal entries are taken to be 0.
    pub fn new(ring: &Arc<NumberRing>, a: Scalar, b: Scalar, m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::Unsupported(format!("rank-2 data needs m >= 2, got {m}")));
        }
        let (a, b) = if m == 2 { (Scalar::zero(), Scalar::zero()) } else { (a, b) };
        let want = 4.0 * (std::f64::consts::PI / m as f64).cos().powi(2);
        if ((&a * &b).to_f64() - want).abs() > 1e-9 {
            return Err(Error::Invariant(format!("ab = {} is not 4cos^2(pi/{m})", &a * &b)));
        }
        let ai = AlgebraicInteger::from_scalar(ring, &a)?;
        let bi = AlgebraicInteger::from_scalar(ring, &b)?;
        let zero = AlgebraicInteger::new(ring, &[])?;
        let one = AlgebraicInteger::new(ring, &[1])?;
        let mut seq_a = vec![zero.clone(), one.clone()];
        let mut seq_b = vec![zero, one];
        for k in 2..=m as usize {
            let ak = ai.mul(&seq_b[k - 1])?.sub(&seq_a[k - 2])?;
            let bk = bi.mul(&seq_a[k - 1])?.sub(&seq_b[k - 2])?;
            seq_a.push(ak);
            seq_b.push(bk);
        }
        Ok(Rank2Data { ring: ring.clone(), m, a, b, seq_a, seq_b })
    }

    /// Reads `a = -c_{12}` and `b = -c_{21}` off a rank-2 datum.
    pub fn from_datum(datum: &RootDatum) -> Result<Self> {
        if datum.rank() != 2 {
            return Err(Error::Unsupported(format!("rank-2 data for a rank-{} datum", datum.rank())));
        }
        let m = datum
            .coxeter_exponent(0, 1)
            .ok_or_else(|| Error::Unsupported("infinite dihedral group".into()))?;
        Self::new(datum.ring(), -datum.cartan_entry(0, 1), -datum.cartan_entry(1, 0), m)
    }

    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn a(&self) -> &Scalar {
        &self.a
    }
    pub fn b(&self) -> &Scalar {
        &self.b
    }

    pub fn seq(&self, side: Side) -> Vec<Scalar> {
        let s = match side {
            Side::U => &self.seq_a,
            Side::V => &self.seq_b,
        };
        s.iter().map(AlgebraicInteger::to_scalar).collect()
    }

    fn factorial(&self, side: Side, k: usize) -> Result<AlgebraicInteger> {
        let s = match side {
            Side::U => &self.seq_a,
            Side::V => &self.seq_b,
        };
        let mut acc = AlgebraicInteger::new(&self.ring, &[1])?;
        for x in &s[1..=k] {
            acc = acc.mul(x)?;
        }
        Ok(acc)
    }

    /// `C(r,t)` for `Side::U`, `D(r,t)` for `Side::V`.
    pub fn coefficient(&self, r: usize, t: usize, side: Side) -> Result<Scalar> {
        if r + t > self.m as usize {
            return Err(Error::Unsupported(format!("r + t = {} exceeds m = {}", r + t, self.m)));
        }
        if r == 0 || t == 0 {
            return Ok(Scalar::one());
        }
        let num = self.factorial(side, r + t)?;
        let den = self.factorial(side, r)?.mul(&self.factorial(side, t)?)?;
        Ok(num.exact_divide(&den)?.to_scalar())
    }

    /// Zero-based reduced word of `u_r` (`Side::U`) or `v_r` (`Side::V`).
    pub fn word(side: Side, r: usize) -> Vec<usize> {
        let last = match side {
            Side::U => 0,
            Side::V => 1,
        };
        (0..r).map(|j| if (r - 1 - j).is_multiple_of(2) { last } else { 1 - last }).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structconst::StructureConstants;

    fn ints(v: &[Scalar]) -> Vec<i128> {
        v.iter().map(|s| s.as_integer().unwrap()).collect()
    }

    #[test]
    fn g2_sequences() {
        let d = RootDatum::parse("G2").unwrap();
        let r = Rank2Data::from_datum(&d).unwrap();
        assert_eq!(ints(&r.seq(Side::U)), vec![0, 1, 3, 2, 3, 1, 0]);
        assert_eq!(ints(&r.seq(Side::V)), vec![0, 1, 1, 2, 1, 1, 0]);
        assert_eq!(r.coefficient(1, 3, Side::U).unwrap(), Scalar::int(3));
        assert_eq!(r.coefficient(3, 2, Side::V).unwrap(), Scalar::int(1));
    }

    #[test]
    fn words() {
        assert_eq!(Rank2Data::word(Side::U, 3), vec![0, 1, 0]);
        assert_eq!(Rank2Data::word(Side::U, 2), vec![1, 0]);
        assert_eq!(Rank2Data::word(Side::V, 2), vec![0, 1]);
        assert!(Rank2Data::word(Side::V, 0).is_empty());
    }

    #[test]
    fn normalized_g2_is_sqrt3() {
        let d = RootDatum::parse("I2(6):normalized").unwrap();
        let c = Rank2Data::from_datum(&d).unwrap().coefficient(1, 3, Side::U).unwrap();
        assert_eq!(&c * &c, Scalar::int(3));
        assert_eq!(c.sign(), std::cmp::Ordering::Greater);
    }

    #[test]
    fn matches_recursion_a2_b2() {
        for spec in ["A2", "B2", "G2", "I2(5)"] {
            let sc = StructureConstants::for_type(spec).unwrap();
            let g = sc.group();
            let r = Rank2Data::from_datum(sc.datum()).unwrap();
            let m = r.m() as usize;
            for side in [Side::U, Side::V] {
                for x in 1..m {
                    for y in 1..=m - x {
                        let el = |s, k| g.element(&Rank2Data::word(s, k)).unwrap();
                        let got = sc.augmented(el(side, x + y), el(side, x), el(side, y));
                        assert_eq!(got, r.coefficient(x, y, side).unwrap(), "{spec} {side:?} {x} {y}");
                    }
                }
            }
        }
    }
}
