//! Elements of the localization `S[1/beta : beta in Phi+]`: a polynomial over a product of positive roots.

use std::collections::BTreeMap;
use std::fmt;

use crate::poly::Poly;
use crate::ring::Scalar;
use crate::rootdata::RootDatum;
use crate::weyl::{ElemId, WeylGroup};

/// `num / prod(beta_b for b in den)`, kept in lowest terms. `den` is sorted and may repeat.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootFraction {
    num: Poly,
    den: Vec<usize>,
}

fn root_poly(datum: &RootDatum, b: usize) -> Poly {
    Poly::linear(&datum.positive_roots()[b])
}

fn multiset_counts(v: &[usize]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for &b in v {
        *m.entry(b).or_insert(0) += 1;
    }
    m
}

impl RootFraction {
    pub fn zero(n: usize) -> Self {
        RootFraction { num: Poly::zero(n), den: Vec::new() }
    }
    pub fn one(n: usize) -> Self {
        Self::from_poly(Poly::one(n))
    }
    pub fn from_poly(p: Poly) -> Self {
        RootFraction { num: p, den: Vec::new() }
    }
    pub fn constant(n: usize, c: Scalar) -> Self {
        Self::from_poly(Poly::constant(n, c))
    }

    /// `num / prod den`, reduced.
    pub fn new(datum: &RootDatum, num: Poly, mut den: Vec<usize>) -> Self {
        den.sort_unstable();
        let mut f = RootFraction { num, den };
        f.reduce(datum);
        f
    }

    /// `+-1 / beta_b`.
    pub fn inv_root(n: usize, b: usize, positive: bool) -> Self {
        let c = if positive { Scalar::one() } else { Scalar::int(-1) };
        RootFraction { num: Poly::constant(n, c), den: vec![b] }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }
    pub fn denominator(&self) -> &[usize] {
        &self.den
    }
    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.den.is_empty().then_some(&self.num)
    }

    fn reduce(&mut self, datum: &RootDatum) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let mut kept = Vec::with_capacity(self.den.len());
        let den = std::mem::take(&mut self.den);
        for b in den {
            match self.num.div_linear(&datum.positive_roots()[b]) {
                Some(q) => self.num = q,
                None => kept.push(b),
            }
        }
        self.den = kept;
    }

    pub fn neg(&self) -> Self {
        RootFraction { num: -&self.num, den: self.den.clone() }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RootFraction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul(&self, datum: &RootDatum, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.nvars());
        }
        let mut den = self.den.clone();
        den.extend_from_slice(&o.den);
        Self::new(datum, &self.num * &o.num, den)
    }

    pub fn mul_poly(&self, datum: &RootDatum, p: &Poly) -> Self {
        Self::new(datum, &self.num * p, self.den.clone())
    }

    /// Divides by `+-beta_b`.
    pub fn div_root(&self, datum: &RootDatum, b: usize, positive: bool) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let num = if positive { self.num.clone() } else { -&self.num };
        let mut den = self.den.clone();
        den.push(b);
        Self::new(datum, num, den)
    }

    pub fn add(&self, datum: &RootDatum, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if self.den == o.den {
            return Self::new(datum, &self.num + &o.num, self.den.clone());
        }
        let a = multiset_counts(&self.den);
        let b = multiset_counts(&o.den);
        let mut lcm = a.clone();
        for (&k, &v) in &b {
            let e = lcm.entry(k).or_insert(0);
            *e = (*e).max(v);
        }
        let lift = |num: &Poly, have: &BTreeMap<usize, usize>| {
            let mut p = num.clone();
            for (&k, &v) in &lcm {
                let missing = v - have.get(&k).copied().unwrap_or(0);
                for _ in 0..missing {
                    p = &p * &root_poly(datum, k);
                }
            }
            p
        };
        let num = &lift(&self.num, &a) + &lift(&o.num, &b);
        let den = lcm.iter().flat_map(|(&k, &v)| std::iter::repeat_n(k, v)).collect();
        Self::new(datum, num, den)
    }

    pub fn sub(&self, datum: &RootDatum, o: &Self) -> Self {
        self.add(datum, &o.neg())
    }

    /// `w(f)`.
    pub fn act(&self, group: &WeylGroup, w: ElemId) -> Self {
        if w == ElemId::E || self.is_zero() {
            return self.clone();
        }
        let mut num = self.num.act(group.matrix(w));
        let mut den = Vec::with_capacity(self.den.len());
        for &b in &self.den {
            let (c, pos) = group.act_root(w, b);
            if !pos {
                num = -&num;
            }
            den.push(c);
        }
        den.sort_unstable();
        RootFraction { num, den }
    }

    pub fn render(&self, datum: &RootDatum) -> String {
        if self.den.is_empty() {
            return self.num.to_string();
        }
        let d: Vec<String> =
            self.den.iter().map(|&b| format!("({})", Poly::linear(&datum.positive_roots()[b]))).collect();
        format!("({})/({})", self.num, d.join("*"))
    }

    pub fn to_json(&self, datum: &RootDatum) -> serde_json::Value {
        let den: Vec<Vec<String>> = self
            .den
            .iter()
            .map(|&b| datum.positive_roots()[b].iter().map(|c| c.to_string()).collect())
            .collect();
        serde_json::json!({ "numerator": self.num.to_json(), "denominator_roots": den })
    }
}

impl fmt::Display for RootFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            write!(f, "{}", self.num)
        } else {
            let d: Vec<String> = self.den.iter().map(|b| format!("r{b}")).collect();
            write!(f, "({})/({})", self.num, d.join("*"))
        }
    }
}
