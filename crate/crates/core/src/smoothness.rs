//! Kumar's criterion: smoothness of Schubert varieties read off the normalized transition
//! coefficients `c'_{w,v} = (-1)^(l(w)-l(v)) c_{w,v} prod_{beta in S(w,v)} beta`.
//!
//! For non-crystallographic data the polynomial `c'` is still well defined, but the verdicts
//! have no geometry behind them and are reported as formal.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::Scalar;
use crate::twisted::Transition;
use crate::weyl::{ElemId, WeylGroup};

#[derive(Clone, Debug)]
pub struct SmoothnessReport {
    pub w: ElemId,
    pub v: ElemId,
    /// Positive root indices of `S(w,v)`.
    pub s_set: Vec<usize>,
    pub c_prime: Poly,
    pub smooth: bool,
    pub rationally_smooth: bool,
    /// True when the datum is not crystallographic.
    pub formal: bool,
}

/// `S(w,v) = { beta > 0 : s_beta v <= w }`.
pub fn s_set(g: &WeylGroup, w: ElemId, v: ElemId) -> Result<Vec<usize>> {
    if !g.bruhat_leq(v, w) {
        return Err(Error::Invariant(format!("{:?} is not below {:?} in Bruhat order", g.word(v), g.word(w))));
    }
    Ok((0..g.datum().positive_roots().len())
        .filter(|&b| g.bruhat_leq(g.mul(g.reflection_element(b), v), w))
        .collect())
}

pub fn c_prime(t: &Transition, w: ElemId, v: ElemId) -> Result<Poly> {
    let g = t.group().as_ref();
    let d = g.datum();
    let s = s_set(g, w, v)?;
    let mut f = t.c(w, v);
    for &b in &s {
        f = f.mul_poly(d, &Poly::linear(&d.positive_roots()[b]));
    }
    let p = f
        .as_poly()
        .cloned()
        .ok_or_else(|| Error::Invariant(format!("c'_{{w,v}} has denominator: {}", f.render(d))))?;
    let p = if (g.length(w) + g.length(v)) % 2 == 1 { -p } else { p };
    let want = s.len() as i64 - g.length(w) as i64;
    if want < 0 || p.is_zero() || !p.is_homogeneous() || p.degree() != Some(want as u32) {
        return Err(Error::Invariant(format!("c' = {p} should be homogeneous of degree {want}")));
    }
    if let Some(c) = p.as_constant() {
        if d.is_crystallographic() && (c.sign() != std::cmp::Ordering::Greater || c.as_integer().is_none()) {
            return Err(Error::Invariant(format!("constant c' = {c} is not a positive integer")));
        }
    }
    Ok(p)
}

/// `c'_{w,v} = 1`.
pub fn is_smooth_point(t: &Transition, w: ElemId, v: ElemId) -> Result<bool> {
    Ok(c_prime(t, w, v)?.as_constant().is_some_and(|c| c.is_one()))
}

/// `c'_{w,y}` is a positive integer for every `y` in `[v, w]`.
pub fn is_rationally_smooth_point(t: &Transition, w: ElemId, v: ElemId) -> Result<bool> {
    let g = t.group();
    for y in g.interval(v, w) {
        let ok = c_prime(t, w, y)?
            .as_constant()
            .is_some_and(|c| c.as_integer().is_some_and(|n| n > 0));
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn report(t: &Transition, w: ElemId, v: ElemId) -> Result<SmoothnessReport> {
    let g = t.group();
    let s = s_set(g, w, v)?;
    let c = c_prime(t, w, v)?;
    let smooth = c.as_constant().is_some_and(|x| x == Scalar::one());
    Ok(SmoothnessReport {
        w,
        v,
        s_set: s,
        c_prime: c,
        smooth,
        rationally_smooth: is_rationally_smooth_point(t, w, v)?,
        formal: !g.datum().is_crystallographic(),
    })
}

/// Smoothness of the partial flag Schubert variety of `v` in `W^J`, via `c'_{v u_0, e}`.
pub fn parabolic_smooth(t: &Transition, v: ElemId, j: &[usize]) -> Result<bool> {
    let g = t.group();
    if j.iter().any(|&i| g.is_right_descent(v, i)) {
        return Err(Error::Invariant(format!("{:?} is not a minimal coset representative", g.word(v))));
    }
    let u0 = g.longest_parabolic(j);
    is_smooth_point(t, g.mul(v, u0), ElemId::E)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::RootDatum;
    use std::sync::Arc;

    fn setup(spec: &str) -> Transition {
        let d = RootDatum::parse(spec).unwrap();
        Transition::build(&WeylGroup::generate(&d).unwrap())
    }

    #[test]
    fn kumar_a3() {
        let t = setup("A3");
        let g = t.group().clone();
        let w = g.element(&[1, 0, 2, 1]).unwrap();
        assert_eq!(s_set(&g, w, ElemId::E).unwrap().len(), 5);
        assert_eq!(c_prime(&t, w, ElemId::E).unwrap().to_string(), "a0 + a1 + a2");
        assert!(!is_smooth_point(&t, w, ElemId::E).unwrap());
        assert!(!is_rationally_smooth_point(&t, w, ElemId::E).unwrap());
        // the singular locus of this (3412) Schubert variety is X(s_2)
        let s2 = g.simple(1);
        for v in g.interval(ElemId::E, w) {
            let c = c_prime(&t, w, v).unwrap();
            if g.bruhat_leq(v, s2) {
                assert_eq!(c.to_string(), "a0 + a1 + a2");
            } else {
                assert_eq!(c, Poly::one(3));
            }
        }
    }

    #[test]
    fn diagonal_is_one() {
        for spec in ["A2", "B2", "I2(5)"] {
            let t = setup(spec);
            let g: Arc<WeylGroup> = t.group().clone();
            for w in g.elements() {
                assert_eq!(s_set(&g, w, w).unwrap(), {
                    let mut inv = g.inversion_set(w);
                    inv.sort();
                    inv
                });
                assert!(is_smooth_point(&t, w, w).unwrap());
            }
        }
    }

    #[test]
    fn parabolic_reduces_to_full() {
        let t = setup("A3");
        let g = t.group().clone();
        for v in g.elements() {
            assert_eq!(parabolic_smooth(&t, v, &[]).unwrap(), is_smooth_point(&t, v, ElemId::E).unwrap());
        }
        assert!(parabolic_smooth(&t, ElemId::E, &[0, 2]).unwrap());
        assert!(parabolic_smooth(&t, g.simple(0), &[0]).is_err());
    }
}
