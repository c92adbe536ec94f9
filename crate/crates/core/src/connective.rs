//! Connective K-theory: the formal group law `x_{a+b} = x_a + x_b - t x_a x_b`.
//!
//! Scalars live in the faithful ambient ring `Z[t, t^-1][Lambda]` (Laurent polynomials in `t`
//! over the group ring of the root lattice), with `x_lambda = t^-1 (1 - e^-lambda)`. The unit
//! `1 - t x_lambda` is `e^-lambda`, which is what makes the embedding work. Fractions carry a
//! multiset of positive roots `beta`, each meaning a factor `1 / x_beta`.
//!
//! Setting `t = 1` gives the usual K-theory group ring; the limit `t -> 0` (with `e^mu` read as
//! `exp(t mu)`) recovers equivariant cohomology.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_rational::Ratio;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::{Scalar, Q};
use crate::weyl::{ElemId, WeylGroup};

pub type Exp = SmallVec<[i32; 8]>;

/// Finite sums `c t^a e^mu`, keyed by `(mu, a)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeExponential {
    n: usize,
    terms: BTreeMap<(Exp, i32), i128>,
}

pub type CKScalar = LatticeExponential;

fn height(mu: &[i32]) -> i64 {
    mu.iter().map(|&c| c as i64).sum()
}

fn add_exp(a: &[i32], b: &[i32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl LatticeExponential {
    pub fn zero(n: usize) -> Self {
        LatticeExponential { n, terms: BTreeMap::new() }
    }
    pub fn one(n: usize) -> Self {
        Self::monomial(n, &vec![0; n], 0, 1)
    }
    pub fn monomial(n: usize, mu: &[i32], tpow: i32, c: i128) -> Self {
        let mut z = Self::zero(n);
        z.add_term(Exp::from_slice(mu), tpow, c);
        z
    }
    pub fn t(n: usize) -> Self {
        Self::monomial(n, &vec![0; n], 1, 1)
    }
    /// `e^mu`.
    pub fn exp(mu: &[i32]) -> Self {
        Self::monomial(mu.len(), mu, 0, 1)
    }
    /// `x_lambda = t^-1 (1 - e^-lambda)`.
    pub fn x(lambda: &[i32]) -> Self {
        let n = lambda.len();
        let neg: Vec<i32> = lambda.iter().map(|c| -c).collect();
        let mut z = Self::monomial(n, &vec![0; n], -1, 1);
        z.add_term(Exp::from_vec(neg), -1, -1);
        z
    }

    pub fn nvars(&self) -> usize {
        self.n
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Exp, i32, i128)> {
        self.terms.iter().map(|((m, a), &c)| (m, *a, c))
    }

    fn add_term(&mut self, mu: Exp, tpow: i32, c: i128) {
        if c == 0 {
            return;
        }
        let key = (mu, tpow);
        let e = self.terms.entry(key.clone()).or_insert(0);
        *e = e.checked_add(c).expect("coefficient overflow");
        if *e == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut z = self.clone();
        for ((m, a), &c) in &o.terms {
            z.add_term(m.clone(), *a, c);
        }
        z
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn neg(&self) -> Self {
        LatticeExponential { n: self.n, terms: self.terms.iter().map(|(k, &c)| (k.clone(), -c)).collect() }
    }
    pub fn scale(&self, c: i128) -> Self {
        let mut z = Self::zero(self.n);
        for ((m, a), &d) in &self.terms {
            z.add_term(m.clone(), *a, d.checked_mul(c).expect("coefficient overflow"));
        }
        z
    }
    /// Multiplies by `t^k`.
    pub fn shift_t(&self, k: i32) -> Self {
        LatticeExponential { n: self.n, terms: self.terms.iter().map(|((m, a), &c)| ((m.clone(), a + k), c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut z = Self::zero(self.n);
        for ((m1, a1), &c1) in &self.terms {
            for ((m2, a2), &c2) in &o.terms {
                z.add_term(add_exp(m1, m2), a1 + a2, c1.checked_mul(c2).expect("coefficient overflow"));
            }
        }
        z
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.n), |acc, _| acc.mul(self))
    }

    /// Linear action on exponents; `mat` is in simple-root coordinates.
    pub fn act(&self, mat: &[Vec<i32>]) -> Self {
        let mut z = Self::zero(self.n);
        for ((m, a), &c) in &self.terms {
            let img: Exp = mat.iter().map(|row| row.iter().zip(m.iter()).map(|(x, y)| x * y).sum()).collect();
            z.add_term(img, *a, c);
        }
        z
    }

    /// Exact quotient by `1 - e^-beta` for `beta` of positive height.
    pub fn div_one_minus_exp(&self, beta: &[i32]) -> Option<Self> {
        let hb = height(beta);
        assert!(hb > 0, "divisor exponent must have positive height");
        let Some(low) = self.terms.keys().map(|(m, _)| height(m)).min() else {
            return Some(self.clone());
        };
        let floor = low + hb;
        let mut f = self.clone();
        let mut q = Self::zero(self.n);
        while let Some(((m, a), c)) =
            f.terms.iter().max_by(|x, y| (height(&x.0 .0), &x.0).cmp(&(height(&y.0 .0), &y.0))).map(|(k, &c)| (k.clone(), c))
        {
            if height(&m) < floor {
                return None;
            }
            q.add_term(m.clone(), a, c);
            f.add_term(m.clone(), a, -c);
            let lower: Exp = m.iter().zip(beta).map(|(x, b)| x - b).collect();
            f.add_term(lower, a, c);
        }
        Some(q)
    }

    /// `t = 1`; the result has only `t^0` terms.
    pub fn at_t1(&self) -> Self {
        let mut z = Self::zero(self.n);
        for ((m, _), &c) in &self.terms {
            z.add_term(m.clone(), 0, c);
        }
        z
    }

    /// The limit `t -> 0` after substituting `e^mu = exp(t mu)`, as a polynomial in the simple
    /// roots. Errors if a negative power of `t` survives or the degree would exceed `cap`.
    pub fn at_t0(&self, cap: u32) -> Result<Poly> {
        let n = self.n;
        let Some(amin) = self.terms.keys().map(|(_, a)| *a).min() else {
            return Ok(Poly::zero(n));
        };
        if amin >= 0 {
            let c: i128 = self.terms.iter().filter(|((_, a), _)| *a == 0).map(|(_, &c)| c).sum();
            return Ok(Poly::constant(n, Scalar::from(Q::from_integer(c))));
        }
        if (-amin) as u32 > cap {
            return Err(Error::CapExceeded { what: "t0 specialization degree", cap: cap as usize });
        }
        // coefficient of t^p is sum over terms with a <= p of c mu^(p-a) / (p-a)!
        let coeff_at = |p: i32| -> Poly {
            let mut acc = Poly::zero(n);
            for ((m, a), &c) in &self.terms {
                if *a > p {
                    continue;
                }
                let k = (p - a) as u32;
                let lin: Vec<Scalar> = m.iter().map(|&x| Scalar::int(x as i64)).collect();
                let fact: i128 = (1..=k as i128).product();
                let s = Scalar::from(Ratio::new(c, fact));
                acc.add_assign(&Poly::linear(&lin).pow(k).scale(&s));
            }
            acc
        };
        for p in amin..0 {
            let c = coeff_at(p);
            if !c.is_zero() {
                return Err(Error::Invariant(format!("t^{p} survives the t -> 0 limit: {c}")));
            }
        }
        Ok(coeff_at(0))
    }

    /// `[{mu, laurent_t: {power: coeff}}]`, sorted by `mu`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut by_mu: BTreeMap<&Exp, BTreeMap<i32, i128>> = BTreeMap::new();
        for ((m, a), &c) in &self.terms {
            by_mu.entry(m).or_default().insert(*a, c);
        }
        serde_json::Value::Array(
            by_mu
                .into_iter()
                .map(|(m, lt)| {
                    let lt: serde_json::Map<String, serde_json::Value> =
                        lt.into_iter().map(|(a, c)| (a.to_string(), serde_json::json!(c.to_string()))).collect();
                    serde_json::json!({ "mu": m.to_vec(), "laurent_t": lt })
                })
                .collect(),
        )
    }
}

impl fmt::Display for LatticeExponential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((m, a), &c) in &self.terms {
            let (sign, abs) = if c < 0 { ("-", -c) } else { ("+", c) };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mut parts = Vec::new();
            if abs != 1 {
                parts.push(abs.to_string());
            }
            match *a {
                0 => {}
                1 => parts.push("t".into()),
                _ => parts.push(format!("t^{a}")),
            }
            if m.iter().any(|&x| x != 0) {
                let s: Vec<String> = m.iter().map(|x| x.to_string()).collect();
                parts.push(format!("e^({})", s.join(",")));
            }
            if parts.is_empty() {
                parts.push("1".into());
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// Integer data for the Weyl group action on the root lattice.
#[derive(Debug)]
pub struct CkContext {
    group: Arc<WeylGroup>,
    mats: Vec<Vec<Vec<i32>>>,
    roots: Vec<Exp>,
}

fn to_i32(s: &Scalar) -> Result<i32> {
    s.as_integer().and_then(|x| i32::try_from(x).ok()).ok_or(Error::NotCrystallographic)
}

impl CkContext {
    pub fn new(group: &Arc<WeylGroup>) -> Result<Arc<Self>> {
        group.datum().require_crystallographic()?;
        let mats = group
            .elements()
            .map(|w| group.matrix(w).rows().iter().map(|r| r.iter().map(to_i32).collect()).collect())
            .collect::<Result<Vec<_>>>()?;
        let roots = group
            .datum()
            .positive_roots()
            .iter()
            .map(|r| r.iter().map(to_i32).collect())
            .collect::<Result<Vec<_>>>()?;
        Ok(Arc::new(CkContext { group: group.clone(), mats, roots }))
    }

    pub fn for_type(spec: &str) -> Result<Arc<Self>> {
        let d = crate::rootdata::RootDatum::parse(spec)?;
        Self::new(&WeylGroup::generate(&d)?)
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }
    pub fn rank(&self) -> usize {
        self.group.rank()
    }
    pub fn root(&self, b: usize) -> &[i32] {
        &self.roots[b]
    }

    /// `x_beta` for the positive root `b`.
    pub fn x_root(&self, b: usize) -> CKScalar {
        CKScalar::x(&self.roots[b])
    }
    pub fn x_simple(&self, i: usize) -> CKScalar {
        self.x_root(i)
    }

    pub fn act(&self, w: ElemId, p: &CKScalar) -> CKScalar {
        p.act(&self.mats[w.idx()])
    }

    /// `X_i o p = (p - s_i p) / x_{alpha_i}`, exactly.
    pub fn divided_difference(&self, i: usize, p: &CKScalar) -> Result<CKScalar> {
        let diff = p.sub(&self.act(self.group.simple(i), p));
        diff.div_one_minus_exp(&self.roots[i])
            .map(|q| q.shift_t(1))
            .ok_or_else(|| Error::NotDivisible(format!("({diff}) / x_alpha{}", i + 1)))
    }
}

/// `num / prod x_beta` over the positive roots in `den`, in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CkFraction {
    num: CKScalar,
    den: Vec<usize>,
}

impl CkFraction {
    pub fn zero(n: usize) -> Self {
        CkFraction { num: CKScalar::zero(n), den: Vec::new() }
    }
    pub fn from_scalar(p: CKScalar) -> Self {
        CkFraction { num: p, den: Vec::new() }
    }
    pub fn new(ctx: &CkContext, num: CKScalar, mut den: Vec<usize>) -> Self {
        den.sort_unstable();
        let mut f = CkFraction { num, den };
        f.reduce(ctx);
        f
    }
    /// `1 / x_beta` for a root given by its positive index and sign.
    pub fn inv_x(ctx: &CkContext, b: usize, positive: bool) -> Self {
        let n = ctx.rank();
        if positive {
            CkFraction { num: CKScalar::one(n), den: vec![b] }
        } else {
            // x_{-beta} = -e^beta x_beta
            let neg: Vec<i32> = ctx.root(b).iter().map(|c| -c).collect();
            CkFraction { num: CKScalar::exp(&neg).neg(), den: vec![b] }
        }
    }

    fn reduce(&mut self, ctx: &CkContext) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let mut kept = Vec::new();
        for b in std::mem::take(&mut self.den) {
            match self.num.div_one_minus_exp(ctx.root(b)) {
                Some(q) => self.num = q.shift_t(1),
                None => kept.push(b),
            }
        }
        self.den = kept;
    }

    pub fn numerator(&self) -> &CKScalar {
        &self.num
    }
    pub fn denominator(&self) -> &[usize] {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn as_scalar(&self) -> Option<&CKScalar> {
        self.den.is_empty().then_some(&self.num)
    }
    pub fn neg(&self) -> Self {
        CkFraction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, ctx: &CkContext, o: &Self) -> Self {
        let mut den = self.den.clone();
        den.extend_from_slice(&o.den);
        Self::new(ctx, self.num.mul(&o.num), den)
    }

    pub fn mul_scalar(&self, ctx: &CkContext, p: &CKScalar) -> Self {
        Self::new(ctx, self.num.mul(p), self.den.clone())
    }

    pub fn add(&self, ctx: &CkContext, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let count = |v: &[usize]| {
            let mut m: BTreeMap<usize, usize> = BTreeMap::new();
            for &b in v {
                *m.entry(b).or_default() += 1;
            }
            m
        };
        let (a, b) = (count(&self.den), count(&o.den));
        let mut lcm = a.clone();
        for (&k, &v) in &b {
            let e = lcm.entry(k).or_default();
            *e = (*e).max(v);
        }
        let lift = |num: &CKScalar, have: &BTreeMap<usize, usize>| {
            let mut p = num.clone();
            for (&k, &v) in &lcm {
                for _ in have.get(&k).copied().unwrap_or(0)..v {
                    p = p.mul(&ctx.x_root(k));
                }
            }
            p
        };
        let num = lift(&self.num, &a).add(&lift(&o.num, &b));
        let den = lcm.iter().flat_map(|(&k, &v)| std::iter::repeat_n(k, v)).collect();
        Self::new(ctx, num, den)
    }

    pub fn sub(&self, ctx: &CkContext, o: &Self) -> Self {
        self.add(ctx, &o.neg())
    }

    pub fn act(&self, ctx: &CkContext, w: ElemId) -> Self {
        if w == ElemId::E || self.is_zero() {
            return self.clone();
        }
        let mut num = ctx.act(w, &self.num);
        let mut den = Vec::with_capacity(self.den.len());
        for &b in &self.den {
            let (c, pos) = ctx.group.act_root(w, b);
            if !pos {
                let neg: Vec<i32> = ctx.root(c).iter().map(|x| -x).collect();
                num = num.mul(&CKScalar::exp(&neg)).neg();
            }
            den.push(c);
        }
        Self::new(ctx, num, den)
    }

    /// Inverse of a fraction whose numerator is `+-t^a e^mu`.
    pub fn inv_unit(&self, ctx: &CkContext) -> Option<Self> {
        let mut it = self.num.terms();
        let (mu, a, c) = it.next()?;
        if it.next().is_some() || c.abs() != 1 {
            return None;
        }
        let neg: Vec<i32> = mu.iter().map(|x| -x).collect();
        let mut p = CKScalar::monomial(ctx.rank(), &neg, -a, c);
        for &b in &self.den {
            p = p.mul(&ctx.x_root(b));
        }
        Some(CkFraction::from_scalar(p))
    }

    pub fn to_json(&self, ctx: &CkContext) -> serde_json::Value {
        let den: Vec<Vec<i32>> = self.den.iter().map(|&b| ctx.root(b).to_vec()).collect();
        serde_json::json!({ "numerator": self.num.to_json(), "denominator_x_roots": den })
    }
}

impl fmt::Display for CkFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            write!(f, "{}", self.num)
        } else {
            let d: Vec<String> = self.den.iter().map(|b| format!("x_r{b}")).collect();
            write!(f, "({})/({})", self.num, d.join("*"))
        }
    }
}

/// Element of the twisted group algebra over CK fractions, `sum_w q_w delta_w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CkQW {
    terms: BTreeMap<ElemId, CkFraction>,
}

impl CkQW {
    pub fn zero() -> Self {
        CkQW { terms: BTreeMap::new() }
    }
    pub fn term(w: ElemId, q: CkFraction) -> Self {
        let mut z = Self::zero();
        if !q.is_zero() {
            z.terms.insert(w, q);
        }
        z
    }
    pub fn delta(ctx: &CkContext, w: ElemId) -> Self {
        Self::term(w, CkFraction::from_scalar(CKScalar::one(ctx.rank())))
    }
    pub fn scalar(q: CkFraction) -> Self {
        Self::term(ElemId::E, q)
    }

    /// `X_i = x_{alpha_i}^-1 (delta_e - delta_{s_i})`.
    pub fn x(ctx: &CkContext, i: usize) -> Self {
        let inv = CkFraction::inv_x(ctx, i, true);
        let mut z = Self::term(ElemId::E, inv.clone());
        z.terms.insert(ctx.group.simple(i), inv.neg());
        z
    }
    /// `Y_i = t delta_e - X_i`.
    pub fn y(ctx: &CkContext, i: usize) -> Self {
        let t = Self::scalar(CkFraction::from_scalar(CKScalar::t(ctx.rank())));
        t.sub(ctx, &Self::x(ctx, i))
    }
    pub fn x_word(ctx: &CkContext, word: &[usize]) -> Self {
        word.iter().fold(Self::delta(ctx, ElemId::E), |acc, &i| acc.mul(ctx, &Self::x(ctx, i)))
    }

    pub fn coefficient(&self, w: ElemId) -> Option<&CkFraction> {
        self.terms.get(&w)
    }
    pub fn terms(&self) -> impl Iterator<Item = (&ElemId, &CkFraction)> {
        self.terms.iter()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, ctx: &CkContext, o: &Self) -> Self {
        let mut z = self.clone();
        for (w, q) in &o.terms {
            let s = match z.terms.get(w) {
                Some(p) => p.add(ctx, q),
                None => q.clone(),
            };
            if s.is_zero() {
                z.terms.remove(w);
            } else {
                z.terms.insert(*w, s);
            }
        }
        z
    }
    pub fn sub(&self, ctx: &CkContext, o: &Self) -> Self {
        let neg = CkQW { terms: o.terms.iter().map(|(w, q)| (*w, q.neg())).collect() };
        self.add(ctx, &neg)
    }
    pub fn scale_left(&self, ctx: &CkContext, q: &CkFraction) -> Self {
        let mut z = Self::zero();
        for (w, p) in &self.terms {
            z = z.add(ctx, &Self::term(*w, q.mul(ctx, p)));
        }
        z
    }
    /// `(p delta_w)(q delta_v) = p w(q) delta_{wv}`.
    pub fn mul(&self, ctx: &CkContext, o: &Self) -> Self {
        let g = &ctx.group;
        let mut z = Self::zero();
        for (w, p) in &self.terms {
            for (v, q) in &o.terms {
                z = z.add(ctx, &Self::term(g.mul(*w, *v), p.mul(ctx, &q.act(ctx, *w))));
            }
        }
        z
    }
}

/// Elements of `Q_W (x) Q_W` in the `delta_x (x) delta_y` basis.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CkTensor {
    terms: BTreeMap<(ElemId, ElemId), CkFraction>,
}

impl CkTensor {
    /// `a (x) b`.
    pub fn product(ctx: &CkContext, a: &CkQW, b: &CkQW) -> Self {
        let mut z = Self::default();
        for (x, p) in a.terms() {
            for (y, q) in b.terms() {
                z.add_term(ctx, (*x, *y), p.mul(ctx, q));
            }
        }
        z
    }
    /// `Delta(sum q_x delta_x) = sum q_x delta_x (x) delta_x`.
    pub fn coproduct(z: &CkQW) -> Self {
        CkTensor { terms: z.terms().map(|(x, q)| ((*x, *x), q.clone())).collect() }
    }
    fn add_term(&mut self, ctx: &CkContext, k: (ElemId, ElemId), q: CkFraction) {
        let s = match self.terms.get(&k) {
            Some(p) => p.add(ctx, &q),
            None => q,
        };
        if s.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, s);
        }
    }
    pub fn add(&self, ctx: &CkContext, o: &Self) -> Self {
        let mut z = self.clone();
        for (k, q) in &o.terms {
            z.add_term(ctx, *k, q.clone());
        }
        z
    }
    pub fn scale(&self, ctx: &CkContext, q: &CkFraction) -> Self {
        let mut z = Self::default();
        for (k, p) in &self.terms {
            z.add_term(ctx, *k, q.mul(ctx, p));
        }
        z
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Which form of the last case of the recursion (`s_i` a left descent of both `u` and `v`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CkRule {
    /// `-x_{alpha_i} s_i(p_{s_iu,s_iv} + t p_{s_iu,v} + t p_{u,s_iv} + t^2 p_{u,v})`.
    #[default]
    Full,
    /// The same without the two `t p` cross terms. Agrees with `Full` only at `t = 0`.
    NoCrossTerms,
}

/// CK structure constants `Delta(X_w) = sum p_{u,v}^w X_u (x) X_v` by the left-descent recursion.
#[derive(Debug)]
pub struct CkCoproduct {
    ctx: Arc<CkContext>,
    rule: CkRule,
    memo: RwLock<HashMap<(ElemId, ElemId, ElemId), CKScalar>>,
}

impl CkCoproduct {
    pub fn new(ctx: &Arc<CkContext>) -> Self {
        Self::with_rule(ctx, CkRule::Full)
    }
    pub fn with_rule(ctx: &Arc<CkContext>, rule: CkRule) -> Self {
        CkCoproduct { ctx: ctx.clone(), rule, memo: RwLock::new(HashMap::new()) }
    }
    pub fn context(&self) -> &Arc<CkContext> {
        &self.ctx
    }

    pub fn p(&self, w: ElemId, u: ElemId, v: ElemId) -> Result<CKScalar> {
        let g = self.ctx.group.clone();
        let n = g.rank();
        if w == ElemId::E {
            let one = u == ElemId::E && v == ElemId::E;
            return Ok(if one { CKScalar::one(n) } else { CKScalar::zero(n) });
        }
        if !g.bruhat_leq(u, w) || !g.bruhat_leq(v, w) {
            return Ok(CKScalar::zero(n));
        }
        if let Some(p) = self.memo.read().expect("memo lock").get(&(w, u, v)) {
            return Ok(p.clone());
        }
        let ctx = &self.ctx;
        let i = *g.left_descents(w).first().expect("w != e has a left descent");
        let si = g.simple(i);
        let w1 = g.mul_simple_left(i, w);
        let p = self.p(w1, u, v)?;
        let mut out = ctx.divided_difference(i, &p)?;
        let du = g.is_left_descent(u, i);
        let dv = g.is_left_descent(v, i);
        let tp = p.shift_t(1);
        if du && dv {
            let su = g.mul_simple_left(i, u);
            let sv = g.mul_simple_left(i, v);
            let (puv, pus) = (self.p(w1, su, v)?, self.p(w1, u, sv)?);
            let a = puv.add(&pus).add(&tp.scale(2));
            // X_i X_z = t X_z when s_i is a left descent of z, which also feeds the cross terms
            let mut b = self.p(w1, su, sv)?.add(&p.shift_t(2));
            if self.rule == CkRule::Full {
                b = b.add(&puv.add(&pus).shift_t(1));
            }
            out = out.add(&ctx.act(si, &a)).sub(&ctx.x_simple(i).mul(&ctx.act(si, &b)));
        } else if du {
            let su = g.mul_simple_left(i, u);
            out = out.add(&ctx.act(si, &self.p(w1, su, v)?.add(&tp)));
        } else if dv {
            let sv = g.mul_simple_left(i, v);
            out = out.add(&ctx.act(si, &self.p(w1, u, sv)?.add(&tp)));
        }
        self.memo.write().expect("memo lock").insert((w, u, v), out.clone());
        Ok(out)
    }

    /// All nonzero `(u, v) -> p_{u,v}^w`.
    pub fn table(&self, w: ElemId) -> Result<BTreeMap<(ElemId, ElemId), CKScalar>> {
        let g = self.ctx.group.clone();
        let below: Vec<ElemId> = g.sorted_elements().into_iter().filter(|&x| g.bruhat_leq(x, w)).collect();
        let mut out = BTreeMap::new();
        for &u in &below {
            for &v in &below {
                let p = self.p(w, u, v)?;
                if !p.is_zero() {
                    out.insert((u, v), p);
                }
            }
        }
        Ok(out)
    }
}

/// Independent computation of `p_{u,v}^w` from the `delta` expansions: with `X_u = sum a_{u,x}
/// delta_x` and `B = A^-1`, `p_{u,v}^w = sum_x a_{w,x} b_{x,u} b_{x,v}`.
pub fn brute_force_table(ctx: &CkContext, w: ElemId) -> Result<BTreeMap<(ElemId, ElemId), CKScalar>> {
    let g = ctx.group.as_ref();
    let n = ctx.rank();
    let order = g.sorted_elements();
    let xs: Vec<CkQW> = g.elements().map(|u| CkQW::x_word(ctx, g.word(u))).collect();
    let a = |u: ElemId, y: ElemId| xs[u.idx()].coefficient(y).cloned().unwrap_or_else(|| CkFraction::zero(n));
    // A B = I, lower triangular in any length-compatible order
    let mut b: Vec<BTreeMap<ElemId, CkFraction>> = vec![BTreeMap::new(); g.order()];
    for (pos, &u) in order.iter().enumerate() {
        let inv = a(u, u)
            .inv_unit(ctx)
            .ok_or_else(|| Error::Invariant("diagonal of X_u is not a unit over x-products".into()))?;
        for &z in &order[..=pos] {
            let mut acc = if z == u { CkFraction::from_scalar(CKScalar::one(n)) } else { CkFraction::zero(n) };
            for &y in &order[..pos] {
                let ay = a(u, y);
                if let (false, Some(byz)) = (ay.is_zero(), b[y.idx()].get(&z)) {
                    acc = acc.sub(ctx, &ay.mul(ctx, byz));
                }
            }
            let val = acc.mul(ctx, &inv);
            if !val.is_zero() {
                b[u.idx()].insert(z, val);
            }
        }
    }
    let mut out = BTreeMap::new();
    for u in g.elements() {
        for v in g.elements() {
            let mut acc = CkFraction::zero(n);
            for (x, awx) in xs[w.idx()].terms() {
                if let (Some(bu), Some(bv)) = (b[x.idx()].get(&u), b[x.idx()].get(&v)) {
                    acc = acc.add(ctx, &awx.mul(ctx, &bu.mul(ctx, bv)));
                }
            }
            if acc.is_zero() {
                continue;
            }
            let p = acc
                .as_scalar()
                .cloned()
                .ok_or_else(|| Error::Invariant(format!("p_{{u,v}}^w not in the connective ring: {acc}")))?;
            out.insert((u, v), p);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(spec: &str) -> Arc<CkContext> {
        CkContext::for_type(spec).unwrap()
    }

    #[test]
    fn formal_group_law() {
        let (a, b) = ([1, 0], [1, 1]);
        let s = [2, 1];
        let lhs = CKScalar::x(&s);
        let xa = CKScalar::x(&a);
        let xb = CKScalar::x(&b);
        let rhs = xa.add(&xb).sub(&xa.mul(&xb).shift_t(1));
        assert_eq!(lhs, rhs);
        assert!(CKScalar::x(&[0, 0]).is_zero());
    }

    #[test]
    fn inverse_sum_is_t() {
        let c = ctx("A2");
        let f = CkFraction::inv_x(&c, 0, true).add(&c, &CkFraction::inv_x(&c, 0, false));
        assert_eq!(f, CkFraction::from_scalar(CKScalar::t(2)));
    }

    #[test]
    fn specializations_of_x() {
        let x = CKScalar::x(&[2, -1]);
        assert_eq!(x.at_t0(1).unwrap(), Poly::linear(&[Scalar::int(2), Scalar::int(-1)]));
        assert_eq!(x.at_t1(), CKScalar::one(2).sub(&CKScalar::exp(&[-2, 1])));
        assert!(CKScalar::monomial(2, &[0, 0], -1, 1).at_t0(3).is_err());
    }

    #[test]
    fn idempotent_relation() {
        let c = ctx("B2");
        for i in 0..2 {
            let x = CkQW::x(&c, i);
            let t = CkFraction::from_scalar(CKScalar::t(2));
            assert_eq!(x.mul(&c, &x), x.scale_left(&c, &t));
        }
    }

    #[test]
    fn first_coefficients() {
        let c = ctx("A2");
        let cp = CkCoproduct::new(&c);
        let g = c.group();
        let s = g.simple(0);
        assert_eq!(cp.p(s, s, ElemId::E).unwrap(), CKScalar::one(2));
        assert_eq!(cp.p(s, s, s).unwrap(), c.x_simple(0).neg());
    }

    #[test]
    fn recursion_matches_brute_force_a2() {
        let c = ctx("A2");
        let cp = CkCoproduct::new(&c);
        for w in c.group().elements() {
            assert_eq!(cp.table(w).unwrap(), brute_force_table(&c, w).unwrap(), "{:?}", c.group().word(w));
        }
        let short = CkCoproduct::with_rule(&c, CkRule::NoCrossTerms);
        let w0 = c.group().longest();
        assert_ne!(short.table(w0).unwrap(), brute_force_table(&c, w0).unwrap());
    }
}
