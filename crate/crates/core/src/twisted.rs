//! The twisted group algebra `Q_W`, the nil-Hecke elements `X_i`, `Y_i`, transition matrices
//! between the `Y`/`delta` bases, and the dual module `Q_W^*` with its Hecke action.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fraction::RootFraction;
use crate::poly::Poly;
use crate::ring::Scalar;
use crate::weyl::{ElemId, WeylGroup};

/// `sum_w q_w delta_w` with coefficients on the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QW {
    terms: BTreeMap<ElemId, RootFraction>,
}

impl QW {
    pub fn zero() -> Self {
        QW { terms: BTreeMap::new() }
    }

    pub fn delta(g: &WeylGroup, w: ElemId) -> Self {
        Self::term(w, RootFraction::one(g.rank()))
    }

    pub fn term(w: ElemId, q: RootFraction) -> Self {
        let mut z = QW::zero();
        if !q.is_zero() {
            z.terms.insert(w, q);
        }
        z
    }

    /// `q delta_e`.
    pub fn scalar(q: RootFraction) -> Self {
        Self::term(ElemId::E, q)
    }

    /// `Y_i = (delta_{s_i} - delta_e) / alpha_i`.
    pub fn y(g: &WeylGroup, i: usize) -> Self {
        let n = g.rank();
        let mut z = QW::zero();
        z.terms.insert(g.simple(i), RootFraction::inv_root(n, i, true));
        z.terms.insert(ElemId::E, RootFraction::inv_root(n, i, false));
        z
    }

    /// `X_i = (delta_e - delta_{s_i}) / alpha_i`.
    pub fn x(g: &WeylGroup, i: usize) -> Self {
        Self::y(g, i).scale_left(g, &RootFraction::constant(g.rank(), Scalar::int(-1)))
    }

    pub fn y_word(g: &WeylGroup, word: &[usize]) -> Self {
        word.iter().fold(QW::delta(g, ElemId::E), |acc, &i| acc.mul(g, &QW::y(g, i)))
    }

    pub fn x_word(g: &WeylGroup, word: &[usize]) -> Self {
        word.iter().fold(QW::delta(g, ElemId::E), |acc, &i| acc.mul(g, &QW::x(g, i)))
    }

    pub fn coefficient(&self, w: ElemId) -> Option<&RootFraction> {
        self.terms.get(&w)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ElemId, &RootFraction)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_add(&mut self, g: &WeylGroup, w: ElemId, q: RootFraction) {
        if q.is_zero() {
            return;
        }
        let d = g.datum();
        let v = match self.terms.remove(&w) {
            Some(old) => old.add(d, &q),
            None => q,
        };
        if !v.is_zero() {
            self.terms.insert(w, v);
        }
    }

    pub fn add(&self, g: &WeylGroup, o: &QW) -> QW {
        let mut z = self.clone();
        for (w, q) in &o.terms {
            z.insert_add(g, *w, q.clone());
        }
        z
    }

    pub fn sub(&self, g: &WeylGroup, o: &QW) -> QW {
        let minus = RootFraction::constant(g.rank(), Scalar::int(-1));
        self.add(g, &o.scale_left(g, &minus))
    }

    /// `q * z`.
    pub fn scale_left(&self, g: &WeylGroup, q: &RootFraction) -> QW {
        let mut z = QW::zero();
        for (w, c) in &self.terms {
            z.insert_add(g, *w, q.mul(g.datum(), c));
        }
        z
    }

    /// `(p delta_w)(q delta_v) = p w(q) delta_{wv}`.
    pub fn mul(&self, g: &WeylGroup, o: &QW) -> QW {
        let d = g.datum();
        let mut z = QW::zero();
        for (w, p) in &self.terms {
            for (v, q) in &o.terms {
                z.insert_add(g, g.mul(*w, *v), p.mul(d, &q.act(g, *w)));
            }
        }
        z
    }

    /// `z o q = sum_w q_w w(q)`.
    pub fn circ_apply(&self, g: &WeylGroup, q: &RootFraction) -> RootFraction {
        let d = g.datum();
        let mut acc = RootFraction::zero(g.rank());
        for (w, p) in &self.terms {
            acc = acc.add(d, &p.mul(d, &q.act(g, *w)));
        }
        acc
    }

    pub fn render(&self, g: &WeylGroup) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(w, q)| format!("[{}] delta({})", q.render(g.datum()), crate::weyl::format_word(g.word(*w))))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `c_{w,v}` (coefficient of `delta_v` in `Y_w`) and `d_{u,v} = xi_u(delta_v)` for a whole group.
#[derive(Debug)]
pub struct Transition {
    group: Arc<WeylGroup>,
    c: Vec<BTreeMap<ElemId, RootFraction>>,
    // d_cols[v][u] = d_{u,v}
    d_cols: Vec<BTreeMap<ElemId, Poly>>,
}

impl Transition {
    pub fn build(group: &Arc<WeylGroup>) -> Self {
        let g = group.as_ref();
        let d = g.datum();
        let n = g.rank();
        let mut c: Vec<BTreeMap<ElemId, RootFraction>> = Vec::with_capacity(g.order());
        c.push(BTreeMap::from([(ElemId::E, RootFraction::one(n))]));
        // elements are in breadth-first order, so w = parent * s_i with parent already done
        for w in g.elements().skip(1) {
            let word = g.word(w);
            let i = *word.last().unwrap();
            let parent = g.mul_simple_right(w, i);
            let prev = &c[parent.idx()];
            let mut row: BTreeMap<ElemId, RootFraction> = BTreeMap::new();
            let mut targets: Vec<ElemId> = prev.keys().copied().collect();
            targets.extend(prev.keys().map(|&v| g.mul_simple_right(v, i)));
            targets.sort();
            targets.dedup();
            for x in targets {
                let a = prev.get(&g.mul_simple_right(x, i));
                let b = prev.get(&x);
                let sum = match (a, b) {
                    (Some(a), Some(b)) => a.add(d, b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => continue,
                };
                if sum.is_zero() {
                    continue;
                }
                let (r, pos) = g.act_root(x, i);
                let val = sum.div_root(d, r, !pos);
                if !val.is_zero() {
                    row.insert(x, val);
                }
            }
            c.push(row);
        }
        let d_cols = g.elements().map(|v| billey_column(g, v)).collect();
        Transition { group: group.clone(), c, d_cols }
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    /// `c_{w,v}`.
    pub fn c(&self, w: ElemId, v: ElemId) -> RootFraction {
        self.c[w.idx()].get(&v).cloned().unwrap_or_else(|| RootFraction::zero(self.group.rank()))
    }

    pub fn c_row(&self, w: ElemId) -> &BTreeMap<ElemId, RootFraction> {
        &self.c[w.idx()]
    }

    /// `d_{u,v}`.
    pub fn d(&self, u: ElemId, v: ElemId) -> Poly {
        self.d_cols[v.idx()].get(&u).cloned().unwrap_or_else(|| Poly::zero(self.group.rank()))
    }

    /// `u -> d_{u,v}` for fixed `v`.
    pub fn d_column(&self, v: ElemId) -> &BTreeMap<ElemId, Poly> {
        &self.d_cols[v.idx()]
    }

    /// `Y_w` in the `delta` basis.
    pub fn y_element(&self, w: ElemId) -> QW {
        let mut z = QW::zero();
        for (v, q) in &self.c[w.idx()] {
            z.terms.insert(*v, q.clone());
        }
        z
    }

    /// `X_w = (-1)^l(w) Y_w`.
    pub fn x_element(&self, w: ElemId) -> QW {
        let z = self.y_element(w);
        if self.group.length(w).is_multiple_of(2) {
            z
        } else {
            z.scale_left(&self.group, &RootFraction::constant(self.group.rank(), Scalar::int(-1)))
        }
    }

    /// Checks `sum_v c_{w,v} d_{u,v} = [w = u]` for every pair, returning the first failure.
    pub fn verify_inverse(&self) -> Result<()> {
        let g = self.group.as_ref();
        let d = g.datum();
        let n = g.rank();
        for w in g.elements() {
            let row = &self.c[w.idx()];
            let mut lcm: BTreeMap<usize, usize> = BTreeMap::new();
            for q in row.values() {
                let mut cnt: BTreeMap<usize, usize> = BTreeMap::new();
                for &b in q.denominator() {
                    *cnt.entry(b).or_insert(0) += 1;
                }
                for (b, k) in cnt {
                    let e = lcm.entry(b).or_insert(0);
                    *e = (*e).max(k);
                }
            }
            let mut total = Poly::one(n);
            for (&b, &k) in &lcm {
                total = &total * &Poly::linear(&d.positive_roots()[b]).pow(k as u32);
            }
            let mut acc: HashMap<ElemId, Poly> = HashMap::new();
            for (v, q) in row {
                let mut have: BTreeMap<usize, usize> = BTreeMap::new();
                for &b in q.denominator() {
                    *have.entry(b).or_insert(0) += 1;
                }
                let mut lifted = q.numerator().clone();
                for (&b, &k) in &lcm {
                    let missing = k - have.get(&b).copied().unwrap_or(0);
                    if missing > 0 {
                        lifted = &lifted * &Poly::linear(&d.positive_roots()[b]).pow(missing as u32);
                    }
                }
                for (u, duv) in &self.d_cols[v.idx()] {
                    acc.entry(*u).or_insert_with(|| Poly::zero(n)).add_assign(&(&lifted * duv));
                }
            }
            for u in g.elements() {
                let got = acc.remove(&u).unwrap_or_else(|| Poly::zero(n));
                let want = if u == w { total.clone() } else { Poly::zero(n) };
                if got != want {
                    return Err(Error::Invariant(format!(
                        "(C D^t)[{:?}][{:?}] != identity",
                        g.word(w),
                        g.word(u)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn render_c(&self, w: ElemId, v: ElemId) -> String {
        self.c(w, v).render(self.group.datum())
    }
}

/// `u -> d_{u,v}` by summing `prod beta_k` over reduced subwords of the canonical word of `v`.
pub fn billey_column(g: &WeylGroup, v: ElemId) -> BTreeMap<ElemId, Poly> {
    let n = g.rank();
    let word = g.word(v);
    let betas: Vec<Poly> = g.inversion_roots(word).iter().map(|b| Poly::linear(b)).collect();
    let mut states: BTreeMap<ElemId, Poly> = BTreeMap::from([(ElemId::E, Poly::one(n))]);
    for (k, &i) in word.iter().enumerate() {
        let snapshot: Vec<(ElemId, Poly)> = states.iter().map(|(x, p)| (*x, p.clone())).collect();
        for (x, p) in snapshot {
            let y = g.mul_simple_right(x, i);
            if g.length(y) == g.length(x) + 1 {
                let t = &p * &betas[k];
                let e = states.entry(y).or_insert_with(|| Poly::zero(n));
                e.add_assign(&t);
            }
        }
    }
    states.retain(|_, p| !p.is_zero());
    states
}

/// `d_{u,v}` by summing over subwords of an arbitrary reduced word of `v`.
pub fn billey_word(g: &WeylGroup, u: ElemId, v_word: &[usize]) -> Result<Poly> {
    g.element_reduced(v_word)?;
    let n = g.rank();
    let betas: Vec<Poly> = g.inversion_roots(v_word).iter().map(|b| Poly::linear(b)).collect();
    let mut states: BTreeMap<ElemId, Poly> = BTreeMap::from([(ElemId::E, Poly::one(n))]);
    for (k, &i) in v_word.iter().enumerate() {
        let snapshot: Vec<(ElemId, Poly)> = states.iter().map(|(x, p)| (*x, p.clone())).collect();
        for (x, p) in snapshot {
            let y = g.mul_simple_right(x, i);
            if g.length(y) == g.length(x) + 1 {
                states.entry(y).or_insert_with(|| Poly::zero(n)).add_assign(&(&p * &betas[k]));
            }
        }
    }
    Ok(states.remove(&u).unwrap_or_else(|| Poly::zero(n)))
}

/// `c_{w,v}` by the signed sum over all subwords of the canonical word of `w` with product `v`.
pub fn c_by_subwords(g: &WeylGroup, w: ElemId, v: ElemId) -> RootFraction {
    let d = g.datum();
    let n = g.rank();
    let word = g.word(w);
    let r = word.len();
    let mut acc = RootFraction::zero(n);
    for mask in 0u64..1 << r {
        let mut x = ElemId::E;
        let mut term = RootFraction::one(n);
        for (k, &i) in word.iter().enumerate() {
            // beta_{k,j} = x(alpha_{i_k}) with x the product of chosen letters before k
            let (b, pos) = g.act_root(x, i);
            term = term.div_root(d, b, pos);
            if mask >> k & 1 == 1 {
                x = g.mul_simple_right(x, i);
            }
        }
        if x == v {
            acc = acc.add(d, &term);
        }
    }
    if (g.length(w) + g.length(v)) % 2 == 1 {
        acc.neg()
    } else {
        acc
    }
}

/// All `d_{u,v}` from `d_{u,v s_i} = d_{u,v} + [s_i in D_R(u)] v(alpha_i) d_{u s_i, v}`.
pub fn d_by_recursion(g: &WeylGroup) -> Vec<BTreeMap<ElemId, Poly>> {
    let n = g.rank();
    let mut cols: Vec<BTreeMap<ElemId, Poly>> = Vec::with_capacity(g.order());
    cols.push(BTreeMap::from([(ElemId::E, Poly::one(n))]));
    for v in g.elements().skip(1) {
        let i = *g.word(v).last().unwrap();
        let prev = g.mul_simple_right(v, i);
        let root = Poly::linear(&g.act_vector(prev, &crate::rootdata::simple_vector(n, i)));
        let pc = &cols[prev.idx()];
        let mut col = pc.clone();
        for (u, p) in pc {
            // contributes to d_{u s_i, v} when s_i is a right descent of u s_i
            let us = g.mul_simple_right(*u, i);
            if g.length(us) == g.length(*u) + 1 {
                col.entry(us).or_insert_with(|| Poly::zero(n)).add_assign(&(&root * p));
            }
        }
        col.retain(|_, p| !p.is_zero());
        cols.push(col);
    }
    cols
}

/// `d_{u,v}` from inverting the lower-triangular matrix `C`.
pub fn d_by_inversion(t: &Transition) -> Result<Vec<BTreeMap<ElemId, Poly>>> {
    let g = t.group().as_ref();
    let d = g.datum();
    let n = g.rank();
    let order = g.sorted_elements();
    let mut cols: Vec<BTreeMap<ElemId, Poly>> = vec![BTreeMap::new(); g.order()];
    for u in g.elements() {
        let mut sol: HashMap<ElemId, RootFraction> = HashMap::new();
        for &w in &order {
            let mut rhs = if w == u { RootFraction::one(n) } else { RootFraction::zero(n) };
            let mut diag = None;
            for (v, c) in t.c_row(w) {
                if *v == w {
                    diag = Some(c.clone());
                } else if let Some(x) = sol.get(v) {
                    rhs = rhs.sub(d, &c.mul(d, x));
                }
            }
            let diag = diag.ok_or_else(|| Error::Invariant("zero diagonal in C".into()))?;
            if rhs.is_zero() {
                continue;
            }
            // diag is a constant over a product of roots
            let cst = diag
                .numerator()
                .as_constant()
                .ok_or_else(|| Error::Invariant("diagonal of C is not a monomial in roots".into()))?;
            let mut x = rhs.scale(&cst.inv().unwrap());
            for &b in diag.denominator() {
                x = x.mul_poly(d, &Poly::linear(&d.positive_roots()[b]));
            }
            sol.insert(w, x);
        }
        for (v, x) in sol {
            let p = x.as_poly().ok_or_else(|| Error::Invariant("inverse of C is not polynomial".into()))?;
            if !p.is_zero() {
                cols[v.idx()].insert(u, p.clone());
            }
        }
    }
    Ok(cols)
}

/// An element of `Q_W^*`, stored by its values `f(delta_x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dual {
    vals: Vec<RootFraction>,
}

impl Dual {
    pub fn zero(g: &WeylGroup) -> Self {
        Dual { vals: vec![RootFraction::zero(g.rank()); g.order()] }
    }

    /// `psi_w(delta_x) = [x = w]`.
    pub fn psi(g: &WeylGroup, w: ElemId) -> Self {
        let mut f = Self::zero(g);
        f.vals[w.idx()] = RootFraction::one(g.rank());
        f
    }

    /// `xi_w(delta_x) = d_{w,x}`.
    pub fn xi(t: &Transition, w: ElemId) -> Self {
        let g = t.group();
        Dual { vals: g.elements().map(|x| RootFraction::from_poly(t.d(w, x))).collect() }
    }

    pub fn value(&self, x: ElemId) -> &RootFraction {
        &self.vals[x.idx()]
    }

    pub fn is_zero(&self) -> bool {
        self.vals.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, g: &WeylGroup, o: &Dual) -> Dual {
        let d = g.datum();
        Dual { vals: self.vals.iter().zip(&o.vals).map(|(a, b)| a.add(d, b)).collect() }
    }

    pub fn scale(&self, g: &WeylGroup, q: &RootFraction) -> Dual {
        let d = g.datum();
        Dual { vals: self.vals.iter().map(|a| q.mul(d, a)).collect() }
    }

    /// Pointwise product.
    pub fn mul(&self, g: &WeylGroup, o: &Dual) -> Dual {
        let d = g.datum();
        Dual { vals: self.vals.iter().zip(&o.vals).map(|(a, b)| a.mul(d, b)).collect() }
    }

    /// `f(z)` for `z = sum q_w delta_w`.
    pub fn eval(&self, g: &WeylGroup, z: &QW) -> RootFraction {
        let d = g.datum();
        let mut acc = RootFraction::zero(g.rank());
        for (w, q) in z.terms() {
            acc = acc.add(d, &q.mul(d, &self.vals[w.idx()]));
        }
        acc
    }

    /// `(q delta_v . f)(delta_x) = x(q) f(delta_{xv})`.
    pub fn hecke(&self, g: &WeylGroup, z: &QW) -> Dual {
        let d = g.datum();
        let vals = g
            .elements()
            .map(|x| {
                let mut acc = RootFraction::zero(g.rank());
                for (v, q) in z.terms() {
                    let f = &self.vals[g.mul(x, *v).idx()];
                    if !f.is_zero() {
                        acc = acc.add(d, &q.act(g, x).mul(d, f));
                    }
                }
                acc
            })
            .collect();
        Dual { vals }
    }

    /// `delta_{s_i} . f`.
    pub fn delta_simple(&self, g: &WeylGroup, i: usize) -> Dual {
        Dual { vals: g.elements().map(|x| self.vals[g.mul_simple_right(x, i).idx()].clone()).collect() }
    }

    /// `Y_i . f`, with `(Y_i . f)(x) = (f(x s_i) - f(x)) / x(alpha_i)`.
    pub fn y_simple(&self, g: &WeylGroup, i: usize) -> Dual {
        let d = g.datum();
        let vals = g
            .elements()
            .map(|x| {
                let diff = self.vals[g.mul_simple_right(x, i).idx()].sub(d, &self.vals[x.idx()]);
                let (b, pos) = g.act_root(x, i);
                diff.div_root(d, b, pos)
            })
            .collect();
        Dual { vals }
    }

    /// Coefficients in the `xi` basis: `a_w = f(Y_w) = sum_x c_{w,x} f(delta_x)`.
    pub fn xi_coefficients(&self, t: &Transition) -> BTreeMap<ElemId, RootFraction> {
        let g = t.group();
        let d = g.datum();
        let mut out = BTreeMap::new();
        for w in g.elements() {
            let mut acc = RootFraction::zero(g.rank());
            for (x, c) in t.c_row(w) {
                let f = &self.vals[x.idx()];
                if !f.is_zero() {
                    acc = acc.add(d, &c.mul(d, f));
                }
            }
            if !acc.is_zero() {
                out.insert(w, acc);
            }
        }
        out
    }

    /// Fixed by `delta_{s_j}` for every `j` in `J`.
    pub fn is_invariant(&self, g: &WeylGroup, j: &[usize]) -> bool {
        j.iter().all(|&i| self.delta_simple(g, i) == *self)
    }
}

/// Checks `X_w lambda = w(lambda) X_w + sum_{w' -> w} beta^vee(lambda) X_{w'}` in `Q_W`.
pub fn affine_relation_holds(t: &Transition, w: ElemId, lambda: &[Scalar]) -> bool {
    let g = t.group().as_ref();
    let d = g.datum();
    let n = g.rank();
    let lam = RootFraction::from_poly(Poly::linear(lambda));
    let lhs = t.x_element(w).mul(g, &QW::scalar(lam.clone()));
    let mut rhs = t.x_element(w).scale_left(g, &lam.act(g, w));
    for (u, b) in g.covers_down(w) {
        let k = d.coroot_pairing(b, lambda);
        rhs = rhs.add(g, &t.x_element(u).scale_left(g, &RootFraction::constant(n, k)));
    }
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::RootDatum;

    fn setup(t: &str) -> Transition {
        Transition::build(&WeylGroup::generate(&RootDatum::parse(t).unwrap()).unwrap())
    }

    #[test]
    fn y_elements_match_products() {
        let t = setup("A2");
        let g = t.group().clone();
        for w in g.elements() {
            assert_eq!(t.y_element(w), QW::y_word(&g, g.word(w)));
        }
    }

    #[test]
    fn nil_relations() {
        let t = setup("B2");
        let g = t.group().clone();
        for i in 0..2 {
            let y = QW::y(&g, i);
            assert!(y.mul(&g, &y).is_zero());
        }
        let lhs = QW::y_word(&g, &[0, 1, 0, 1]);
        assert_eq!(lhs, QW::y_word(&g, &[1, 0, 1, 0]));
    }

    #[test]
    fn kumar_example_a3() {
        let t = setup("A3");
        let g = t.group().clone();
        let w = g.element(&[1, 0, 2, 1]).unwrap();
        let c = t.c(w, ElemId::E);
        assert_eq!(c.numerator().to_string(), "a0 + a1 + a2");
        assert_eq!(c.denominator().len(), 5);
    }

    #[test]
    fn inverse_a2() {
        let t = setup("A2");
        t.verify_inverse().unwrap();
    }
}
