//! Polynomials in the simple roots, the Weyl action on them, and divided differences.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use crate::ring::Scalar;
use crate::rootdata::{Matrix, RootDatum};

pub type Mono = SmallVec<[u16; 8]>;

/// A polynomial in `a0, ..., a(n-1)`, where `ai` stands for the simple root `alpha_(i+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Mono, Scalar>,
}

fn degree_of(m: &Mono) -> u32 {
    m.iter().map(|&e| e as u32).sum()
}

/// Graded reverse lexicographic comparison with `a0 > a1 > ...`.
pub fn degrevlex(a: &Mono, b: &Mono) -> Ordering {
    degree_of(a).cmp(&degree_of(b)).then_with(|| {
        for (x, y) in a.iter().zip(b.iter()).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(SmallVec::from_elem(0, nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m: Mono = SmallVec::from_elem(0, nvars);
        m[i] = 1;
        let mut p = Poly::zero(nvars);
        p.terms.insert(m, Scalar::one());
        p
    }

    /// `sum_i v[i] a_i`.
    pub fn linear(v: &[Scalar]) -> Self {
        let n = v.len();
        let mut p = Poly::zero(n);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                let mut m: Mono = SmallVec::from_elem(0, n);
                m[i] = 1;
                p.terms.insert(m, c.clone());
            }
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u16>, Scalar)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(SmallVec::from_vec(e), &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Mono, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Constant term.
    pub fn augment(&self) -> Scalar {
        self.terms.get(&SmallVec::from_elem(0, self.nvars)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| degree_of(m) == 0)
    }

    /// The value if constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        self.is_constant().then(|| self.augment())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(degree_of).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut d = self.terms.keys().map(degree_of);
        match d.next() {
            None => true,
            Some(first) => d.all(|x| x == first),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integral())
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn add_assign(&mut self, o: &Poly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn sub_assign(&mut self, o: &Poly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), &-c);
        }
    }

    pub fn mul_ref(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let m: Mono = a.iter().zip(b.iter()).map(|(p, q)| p + q).collect();
                out.add_term(m, &(x * y));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul_ref(self);
        }
        acc
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.iter()) {
                t = &t * &x.pow(e as u32);
            }
            acc += &t;
        }
        acc
    }

    /// Substitutes `a_j -> forms[j]`.
    pub fn substitute(&self, forms: &[Poly]) -> Poly {
        let nv = forms.first().map(|f| f.nvars).unwrap_or(self.nvars);
        let mut powers: Vec<Vec<Poly>> = forms.iter().map(|f| vec![Poly::one(nv), f.clone()]).collect();
        let mut out = Poly::zero(nv);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(nv, c.clone());
            for (j, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[j].len() <= e as usize {
                    let next = powers[j].last().unwrap().mul_ref(&forms[j]);
                    powers[j].push(next);
                }
                t = t.mul_ref(&powers[j][e as usize]);
            }
            out.add_assign(&t);
        }
        out
    }

    /// `w(p)` where `w` has matrix `m`: `a_j -> w(alpha_j)`.
    pub fn act(&self, m: &Matrix) -> Poly {
        if self.is_constant() {
            return self.clone();
        }
        let forms: Vec<Poly> = (0..self.nvars).map(|j| Poly::linear(&m.column(j))).collect();
        self.substitute(&forms)
    }

    /// Exact quotient by the linear form `sum l[j] a_j`, or `None` if it does not divide.
    pub fn div_linear(&self, l: &[Scalar]) -> Option<Poly> {
        let k = l.iter().position(|c| !c.is_zero())?;
        let lead_inv = l[k].inv()?;
        let others: Vec<(usize, Scalar)> =
            l.iter().enumerate().filter(|(j, c)| *j != k && !c.is_zero()).map(|(j, c)| (j, c.clone())).collect();
        let mut rem: BTreeMap<(u16, Mono), Scalar> = self.terms.iter().map(|(m, c)| ((m[k], m.clone()), c.clone())).collect();
        let mut q = Poly::zero(self.nvars);
        while let Some(((ek, m), c)) = rem.pop_last() {
            if ek == 0 {
                return None;
            }
            let coef = &c * &lead_inv;
            let mut base = m.clone();
            base[k] -= 1;
            for (j, lj) in &others {
                let mut mm = base.clone();
                mm[*j] += 1;
                let key = (mm[k], mm);
                let delta = -(&coef * lj);
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(delta);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += &delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
            q.add_term(base, &coef);
        }
        Some(q)
    }

    /// Terms in degrevlex order, largest first.
    pub fn sorted_terms(&self) -> Vec<(&Mono, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| degrevlex(b.0, a.0));
        v
    }

    /// Text form with variables `a{offset}, a{offset+1}, ...`.
    pub fn render(&self, offset: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("a{}", i + offset) } else { format!("a{}^{e}", i + offset) })
                .collect();
            let mono = mono.join("*");
            let (neg, body) = match c.as_rational() {
                Some(q) => {
                    let neg = q < num_traits::Zero::zero();
                    let a = if neg { -q } else { q };
                    let a = Scalar::Rat(a);
                    let body = if mono.is_empty() {
                        a.to_string()
                    } else if a.is_one() {
                        mono
                    } else {
                        format!("{a}*{mono}")
                    };
                    (neg, body)
                }
                None => (false, if mono.is_empty() { format!("({c})") } else { format!("({c})*{mono}") }),
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| serde_json::json!({ "exponents": m.to_vec(), "coefficient": scalar_json(c) }))
            .collect();
        serde_json::Value::Array(terms)
    }
}

/// Power-basis coordinates as strings.
pub fn scalar_json(c: &Scalar) -> serde_json::Value {
    let d = c.ring().map(|r| r.degree()).unwrap_or(1);
    serde_json::Value::Array(c.coords(d).iter().map(|q| serde_json::Value::String(Scalar::Rat(*q).to_string())).collect())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(0))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut p = self.clone();
        p.add_assign(o);
        p
    }
}
impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut p = self.clone();
        p.sub_assign(o);
        p
    }
}
impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        self.mul_ref(o)
    }
}
impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&Scalar::int(-1))
    }
}
impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}
impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        &self - &o
    }
}
impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}
impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// `s_i(p)`.
pub fn reflect(datum: &RootDatum, i: usize, p: &Poly) -> Poly {
    p.act(datum.reflection(i))
}

/// `(p - s_i p) / alpha_i`.
pub fn ddx(datum: &RootDatum, i: usize, p: &Poly) -> Poly {
    let num = p - &reflect(datum, i, p);
    let mut a = vec![Scalar::zero(); datum.rank()];
    a[i] = Scalar::one();
    num.div_linear(&a).expect("p - s_i(p) is divisible by alpha_i")
}

/// `(s_i p - p) / alpha_i`.
pub fn ddy(datum: &RootDatum, i: usize, p: &Poly) -> Poly {
    -ddx(datum, i, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_divided_difference() {
        let d = RootDatum::parse("A2").unwrap();
        let p = &Poly::var(2, 0) * &Poly::var(2, 1);
        assert_eq!(ddx(&d, 0, &p).to_string(), "a0 + 2*a1");
    }

    #[test]
    fn division() {
        let x = Poly::var(3, 0);
        let y = Poly::var(3, 1);
        let z = Poly::var(3, 2);
        let l = vec![Scalar::int(0), Scalar::int(2), Scalar::int(-3)];
        let p = (&(&x * &x) + &z) * Poly::linear(&l);
        assert_eq!(p.div_linear(&l).unwrap(), &(&x * &x) + &z);
        assert!((&x + &y).div_linear(&l).is_none());
    }

    #[test]
    fn rendering() {
        let p = Poly::from_terms(
            4,
            [
                (vec![0, 0, 0, 2], Scalar::int(1)),
                (vec![0, 1, 1, 0], Scalar::int(1)),
                (vec![0, 0, 1, 1], Scalar::int(2)),
                (vec![0, 0, 2, 0], Scalar::int(1)),
                (vec![0, 1, 0, 1], Scalar::int(1)),
            ],
        );
        assert_eq!(p.to_string(), "a1*a2 + a2^2 + a1*a3 + 2*a2*a3 + a3^2");
        assert_eq!((-Poly::var(2, 0)).to_string(), "-a0");
        assert_eq!(Poly::constant(2, Scalar::rat(-1, 2)).to_string(), "-1/2");
    }
}
