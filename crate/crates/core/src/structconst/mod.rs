//! Structure constants `p_{u,v}^w` of the dual nil-Hecke ring in the `xi` basis.
//!
//! `xi_u xi_v = sum_w p_{u,v}^w xi_w`, equivalently `Delta(Y_w) = sum p_{u,v}^w Y_u (x) Y_v`.
//! Several independent algorithms are provided so they can be checked against each other.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::fraction::RootFraction;
use crate::poly::{ddy, reflect, Poly};
use crate::ring::Scalar;
use crate::rootdata::{simple_vector, RootDatum};
use crate::twisted::{Dual, Transition};
pub mod rank2;

pub use rank2::{Rank2Data, Side};

use crate::weyl::{is_reduced_word, reduced_words_of, word_matrix, ElemId, WeylGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algo {
    /// Left-descent recursion on group elements.
    Recursive,
    /// First-letter recursion on fixed reduced words, summed over words of `u` and `v`.
    Complete,
    /// Bott-Samelson operator strings.
    BottSamelson,
    /// Bounded bijections.
    Bijections,
    /// Localization `sum_x d_{u,x} d_{v,x} c_{w,x}`.
    Localization,
    /// Hecke action on the dual module.
    Hecke,
}

impl Algo {
    pub const ALL: [Algo; 6] =
        [Algo::Recursive, Algo::Complete, Algo::BottSamelson, Algo::Bijections, Algo::Localization, Algo::Hecke];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Recursive => "recursive",
            Algo::Complete => "complete",
            Algo::BottSamelson => "bs",
            Algo::Bijections => "bij",
            Algo::Localization => "loc",
            Algo::Hecke => "hecke",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Algo::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown algorithm {s:?}")))
    }
}

/// `p_{j,k}^i` for fixed reduced words (first-letter recursion).
pub fn p_wordfixed(datum: &RootDatum, i_word: &[usize], j_word: &[usize], k_word: &[usize]) -> Result<Poly> {
    for w in [i_word, j_word, k_word] {
        if !is_reduced_word(datum, w)? {
            return Err(Error::NotReduced(w.iter().map(|x| x + 1).collect()));
        }
    }
    let mut memo = HashMap::new();
    Ok(wordfixed_rec(datum, i_word, j_word, k_word, &mut memo))
}

fn wordfixed_rec(
    datum: &RootDatum,
    w: &[usize],
    u: &[usize],
    v: &[usize],
    memo: &mut HashMap<(usize, usize, usize), Poly>,
) -> Poly {
    let n = datum.rank();
    if (w != u && v.is_empty()) || (w != v && u.is_empty()) || w.len() < u.len() || w.len() < v.len() {
        return Poly::zero(n);
    }
    if (w == u && v.is_empty()) || (w == v && u.is_empty()) {
        return Poly::one(n);
    }
    let key = (w.len(), u.len(), v.len());
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let k = w[0];
    let rest = &w[1..];
    let mut out = ddy(datum, k, &wordfixed_rec(datum, rest, u, v, memo));
    let hu = u[0] == k;
    let hv = v[0] == k;
    if hu || hv {
        let mut inner = Poly::zero(n);
        if hv {
            inner.add_assign(&wordfixed_rec(datum, rest, u, &v[1..], memo));
        }
        if hu {
            inner.add_assign(&wordfixed_rec(datum, rest, &u[1..], v, memo));
        }
        out.add_assign(&reflect(datum, k, &inner));
        if hu && hv {
            let both = wordfixed_rec(datum, rest, &u[1..], &v[1..], memo);
            out.add_assign(&(&Poly::var(n, k) * &reflect(datum, k, &both)));
        }
    }
    memo.insert(key, out.clone());
    out
}

/// `p_{u,v}^w` from a reduced word of `w` and any reduced words of `u` and `v`; no group table needed.
pub fn p_complete(datum: &RootDatum, w_word: &[usize], u_word: &[usize], v_word: &[usize]) -> Result<Poly> {
    if !is_reduced_word(datum, w_word)? {
        return Err(Error::NotReduced(w_word.iter().map(|x| x + 1).collect()));
    }
    let mu = word_matrix(datum, u_word)?;
    let mv = word_matrix(datum, v_word)?;
    for w in [u_word, v_word] {
        if !is_reduced_word(datum, w)? {
            return Err(Error::NotReduced(w.iter().map(|x| x + 1).collect()));
        }
    }
    let mut total = Poly::zero(datum.rank());
    for x in reduced_words_of(datum, &mu) {
        for y in reduced_words_of(datum, &mv) {
            let mut memo = HashMap::new();
            total.add_assign(&wordfixed_rec(datum, w_word, &x, &y, &mut memo));
        }
    }
    Ok(total)
}

/// Bit set of positions in a word.
pub type Positions = u64;

fn positions(mask: Positions, r: usize) -> impl Iterator<Item = usize> {
    (0..r).filter(move |k| mask >> k & 1 == 1)
}

/// Subsets `E` of positions of `word` with `word_E` a reduced word of `target`.
pub fn reduced_subwords(g: &WeylGroup, word: &[usize], target: ElemId) -> Vec<Positions> {
    let r = word.len();
    let len = g.length(target);
    let mut out = Vec::new();
    fn go(
        g: &WeylGroup,
        word: &[usize],
        k: usize,
        x: ElemId,
        mask: Positions,
        left: usize,
        target: ElemId,
        out: &mut Vec<Positions>,
    ) {
        if left == 0 {
            if x == target {
                out.push(mask);
            }
            return;
        }
        if word.len() - k < left {
            return;
        }
        let y = g.mul_simple_right(x, word[k]);
        if g.length(y) == g.length(x) + 1 {
            go(g, word, k + 1, y, mask | 1 << k, left - 1, target, out);
        }
        go(g, word, k + 1, x, mask, left, target, out);
    }
    assert!(r < 64, "word too long for subword enumeration");
    go(g, word, 0, ElemId::E, 0, len, target, &mut out);
    out
}

/// `p^i_{E1,E2} = B_1 ... B_r (1)` for one pair of position sets.
pub fn bott_samelson_term(datum: &RootDatum, word: &[usize], e1: Positions, e2: Positions) -> Poly {
    let n = datum.rank();
    let mut p = Poly::one(n);
    for (k, &i) in word.iter().enumerate().rev() {
        let a = e1 >> k & 1 == 1;
        let b = e2 >> k & 1 == 1;
        p = match (a, b) {
            (true, true) => &Poly::var(n, i) * &reflect(datum, i, &p),
            (false, false) => ddy(datum, i, &p),
            _ => reflect(datum, i, &p),
        };
        if p.is_zero() {
            break;
        }
    }
    p
}

/// `p_{u,v}^w` as a sum of Bott-Samelson terms over a reduced word of `w`.
pub fn p_bott_samelson(g: &WeylGroup, w_word: &[usize], u: ElemId, v: ElemId) -> Result<Poly> {
    g.element_reduced(w_word)?;
    let d = g.datum();
    let mut total = Poly::zero(g.rank());
    let eu = reduced_subwords(g, w_word, u);
    let ev = reduced_subwords(g, w_word, v);
    for &a in &eu {
        for &b in &ev {
            total.add_assign(&bott_samelson_term(d, w_word, a, b));
        }
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Admissibility {
    /// Every bounded bijection counts.
    Any,
    /// `word_{L(k)}` has no equal adjacent letters for every position `k`.
    AllPositions,
    /// `word_{L(k)}`, built from the images of `K cap [1, k-1]`, has no equal adjacent letters for every `k` in `K`.
    BeforeEachPreimage,
}

fn adjacent_distinct(word: &[usize], mask: Positions) -> bool {
    let mut last = None;
    for k in positions(mask, word.len()) {
        if last == Some(word[k]) {
            return false;
        }
        last = Some(word[k]);
    }
    true
}

/// Sum over bounded bijections `phi: K -> [r] \ (E1 cup E2)` for one pair `(E1, E2)`.
pub fn bijection_sum(datum: &RootDatum, word: &[usize], e1: Positions, e2: Positions, rule: Admissibility) -> Poly {
    let n = datum.rank();
    let r = word.len();
    let l = e1 | e2;
    let inter = e1 & e2;
    let full: Positions = if r == 64 { !0 } else { (1 << r) - 1 };
    let free = full & !l;
    let need = r - l.count_ones() as usize;
    let inter_pos: Vec<usize> = positions(inter, r).collect();
    let mut total = Poly::zero(n);
    if need > inter_pos.len() {
        return total;
    }
    // choose K and phi together, scanning intersection positions in order
    let mut phi: Vec<Option<usize>> = vec![None; r];
    fn rec(
        datum: &RootDatum,
        word: &[usize],
        inter_pos: &[usize],
        idx: usize,
        chosen: usize,
        need: usize,
        used: Positions,
        free: Positions,
        l: Positions,
        phi: &mut Vec<Option<usize>>,
        rule: Admissibility,
        total: &mut Poly,
    ) {
        if chosen == need {
            if let Some(t) = bijection_term(datum, word, inter_pos, l, phi, rule) {
                total.add_assign(&t);
            }
            return;
        }
        if idx == inter_pos.len() || inter_pos.len() - idx < need - chosen {
            return;
        }
        let k = inter_pos[idx];
        for j in 0..k {
            if free >> j & 1 == 1 && used >> j & 1 == 0 {
                phi[k] = Some(j);
                rec(datum, word, inter_pos, idx + 1, chosen + 1, need, used | 1 << j, free, l, phi, rule, total);
                phi[k] = None;
            }
        }
        rec(datum, word, inter_pos, idx + 1, chosen, need, used, free, l, phi, rule, total);
    }
    rec(datum, word, &inter_pos, 0, 0, need, 0, free, l, &mut phi, rule, &mut total);
    total
}

fn bijection_term(
    datum: &RootDatum,
    word: &[usize],
    inter_pos: &[usize],
    l: Positions,
    phi: &[Option<usize>],
    rule: Admissibility,
) -> Option<Poly> {
    let n = datum.rank();
    let r = word.len();
    // L(k) = L cup phi(K cap [1, k])
    let l_upto = |k: usize, inclusive: bool| -> Positions {
        let mut m = l;
        for (kk, p) in phi.iter().enumerate() {
            if let Some(j) = p {
                if kk < k || (inclusive && kk == k) {
                    m |= 1 << j;
                }
            }
        }
        m
    };
    match rule {
        Admissibility::Any => {}
        Admissibility::AllPositions => {
            if !(0..r).all(|k| adjacent_distinct(word, l_upto(k, true))) {
                return None;
            }
        }
        Admissibility::BeforeEachPreimage => {
            if !(0..r).filter(|&k| phi[k].is_some()).all(|k| adjacent_distinct(word, l_upto(k, false))) {
                return None;
            }
        }
    }
    let mut term = Poly::one(n);
    for &k in inter_pos {
        let lk = l_upto(k, true);
        let lower = phi[k].map(|j| j as isize).unwrap_or(-1);
        let mut v = simple_vector(n, word[k]);
        for j in (0..k).rev() {
            if (j as isize) > lower && lk >> j & 1 == 1 {
                v = datum.reflect(word[j], &v);
            }
        }
        match phi[k] {
            Some(j) => {
                // Y_i o beta = -alpha_i^vee(beta)
                let c = -datum.simple_pairing(word[j], &v);
                if c.is_zero() {
                    return Some(Poly::zero(n));
                }
                term = term.scale(&c);
            }
            None => term = &term * &Poly::linear(&v),
        }
    }
    Some(term)
}

/// `p_{u,v}^w` by the signed-free bounded-bijection expansion.
pub fn p_bounded_bijections(g: &WeylGroup, w_word: &[usize], u: ElemId, v: ElemId) -> Result<Poly> {
    p_bijections_with(g, w_word, u, v, Admissibility::AllPositions)
}

pub fn p_bijections_with(g: &WeylGroup, w_word: &[usize], u: ElemId, v: ElemId, rule: Admissibility) -> Result<Poly> {
    g.element_reduced(w_word)?;
    let d = g.datum();
    let mut total = Poly::zero(g.rank());
    let eu = reduced_subwords(g, w_word, u);
    let ev = reduced_subwords(g, w_word, v);
    for &a in &eu {
        for &b in &ev {
            total.add_assign(&bijection_sum(d, w_word, a, b, rule));
        }
    }
    Ok(total)
}

/// `p_{u,v}^w = sum_x d_{u,x} d_{v,x} c_{w,x}`.
pub fn p_localization(t: &Transition, w: ElemId, u: ElemId, v: ElemId) -> Result<Poly> {
    let g = t.group();
    let d = g.datum();
    let mut acc = RootFraction::zero(g.rank());
    for (x, c) in t.c_row(w) {
        let du = t.d(u, *x);
        if du.is_zero() {
            continue;
        }
        let dv = t.d(v, *x);
        if dv.is_zero() {
            continue;
        }
        acc = acc.add(d, &c.mul_poly(d, &(&du * &dv)));
    }
    acc.as_poly()
        .cloned()
        .ok_or_else(|| Error::Invariant(format!("localization sum is not polynomial: {}", acc.render(d))))
}

/// Hecke-action formula: sum over reduced subwords `J` of `u` in the canonical word of `w` of
/// `(Y_{i_1} ... delta_{s_{i_j}} ... Y_{i_r} . xi_v)(delta_e)`, with `delta` at the positions in `J`.
pub fn p_hecke(t: &Transition, w: ElemId, u: ElemId, v: ElemId) -> Result<Poly> {
    let g = t.group();
    let word = g.word(w).to_vec();
    let xi = Dual::xi(t, v);
    let d = g.datum();
    let mut acc = RootFraction::zero(g.rank());
    for mask in reduced_subwords(g, &word, u) {
        let mut f = xi.clone();
        for (k, &i) in word.iter().enumerate().rev() {
            f = if mask >> k & 1 == 1 { f.delta_simple(g, i) } else { f.y_simple(g, i) };
        }
        acc = acc.add(d, f.value(ElemId::E));
    }
    acc.as_poly().cloned().ok_or_else(|| Error::Invariant("Hecke formula gave a non-polynomial".into()))
}

/// `xi_{s_i} xi_v = d_{s_i,v} xi_v + sum_{v -> w} beta^vee(omega_i) xi_w`, as `w -> coefficient`.
pub fn chevalley(g: &WeylGroup, i: usize, v: ElemId) -> BTreeMap<ElemId, Poly> {
    let d = g.datum();
    let n = g.rank();
    let omega = &d.fundamental_weights()[i];
    let vo = g.act_vector(v, omega);
    let diff: Vec<Scalar> = omega.iter().zip(&vo).map(|(a, b)| a - b).collect();
    let mut out = BTreeMap::new();
    let diag = Poly::linear(&diff);
    if !diag.is_zero() {
        out.insert(v, diag);
    }
    for (w, b) in g.covers_up(v) {
        let k = d.coroot_pairing(b, omega);
        if !k.is_zero() {
            out.insert(w, Poly::constant(n, k));
        }
    }
    out
}

/// Memoized left-descent recursion over a generated group.
#[derive(Debug)]
pub struct StructureConstants {
    group: Arc<WeylGroup>,
    memo: RwLock<HashMap<(ElemId, ElemId, ElemId), Poly>>,
    transition: OnceLock<Transition>,
}

impl StructureConstants {
    pub fn new(group: &Arc<WeylGroup>) -> Self {
        StructureConstants { group: group.clone(), memo: RwLock::new(HashMap::new()), transition: OnceLock::new() }
    }

    pub fn for_type(spec: &str) -> Result<Self> {
        Ok(Self::new(&WeylGroup::generate(&RootDatum::parse(spec)?)?))
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        self.group.datum()
    }

    pub fn transition(&self) -> &Transition {
        self.transition.get_or_init(|| Transition::build(&self.group))
    }

    /// `p_{u,v}^w` by the left-descent recursion.
    pub fn p(&self, w: ElemId, u: ElemId, v: ElemId) -> Poly {
        let g = self.group.as_ref();
        let n = g.rank();
        if g.length(u) + g.length(v) < g.length(w) || !g.bruhat_leq(u, w) || !g.bruhat_leq(v, w) {
            return Poly::zero(n);
        }
        if w == ElemId::E {
            return Poly::one(n);
        }
        if let Some(p) = self.memo.read().unwrap().get(&(w, u, v)) {
            return p.clone();
        }
        let d = g.datum();
        let i = (0..n).find(|&i| g.is_left_descent(w, i)).unwrap();
        let w1 = g.mul_simple_left(i, w);
        let mut out = ddy(d, i, &self.p(w1, u, v));
        let hu = g.is_left_descent(u, i);
        let hv = g.is_left_descent(v, i);
        let su = g.mul_simple_left(i, u);
        let sv = g.mul_simple_left(i, v);
        if hu || hv {
            let mut inner = Poly::zero(n);
            if hu {
                inner.add_assign(&self.p(w1, su, v));
            }
            if hv {
                inner.add_assign(&self.p(w1, u, sv));
            }
            out.add_assign(&reflect(d, i, &inner));
            if hu && hv {
                out.add_assign(&(&Poly::var(n, i) * &reflect(d, i, &self.p(w1, su, sv))));
            }
        }
        self.memo.write().unwrap().insert((w, u, v), out.clone());
        out
    }

    /// `p_{u,v}^w` by the chosen algorithm, using the canonical word of `w` where a word is needed.
    pub fn p_with(&self, algo: Algo, w: ElemId, u: ElemId, v: ElemId) -> Result<Poly> {
        let g = self.group.as_ref();
        let ww = g.word(w);
        match algo {
            Algo::Recursive => Ok(self.p(w, u, v)),
            Algo::Complete => p_complete(g.datum(), ww, g.word(u), g.word(v)),
            Algo::BottSamelson => p_bott_samelson(g, ww, u, v),
            Algo::Bijections => p_bounded_bijections(g, ww, u, v),
            Algo::Localization => p_localization(self.transition(), w, u, v),
            Algo::Hecke => p_hecke(self.transition(), w, u, v),
        }
    }

    /// Coefficient in `Delta(X_w) = sum q X_u (x) X_v`: `(-1)^(l(w)+l(u)+l(v)) p_{u,v}^w`.
    pub fn x_basis(&self, w: ElemId, u: ElemId, v: ElemId) -> Poly {
        let g = &self.group;
        let p = self.p(w, u, v);
        if (g.length(w) + g.length(u) + g.length(v)) % 2 == 1 {
            -p
        } else {
            p
        }
    }

    /// `c_{u,v}^w`: `p_{u,v}^w` when `l(u) + l(v) = l(w)`, otherwise 0.
    pub fn augmented(&self, w: ElemId, u: ElemId, v: ElemId) -> Scalar {
        let g = &self.group;
        if g.length(u) + g.length(v) != g.length(w) {
            return Scalar::zero();
        }
        self.p(w, u, v).augment()
    }

    /// All nonzero `(u, v, p_{u,v}^w)` for fixed `w`.
    pub fn row(&self, algo: Algo, w: ElemId) -> Result<Vec<(ElemId, ElemId, Poly)>> {
        let g = self.group.clone();
        let below: Vec<ElemId> = g.sorted_elements().into_iter().filter(|&x| g.bruhat_leq(x, w)).collect();
        let mut out = Vec::new();
        for &u in &below {
            for &v in &below {
                if g.length(u) + g.length(v) < g.length(w) {
                    continue;
                }
                let p = self.p_with(algo, w, u, v)?;
                if !p.is_zero() {
                    out.push((u, v, p));
                }
            }
        }
        Ok(out)
    }

    /// Checks `p_{u,v}^w = 0` for `u, v` in `W^J` and `w` outside `W^J`, and that the product
    /// `xi_u xi_v` is `W_J`-invariant with the same expansion.
    pub fn parabolic_consistent(&self, j: &[usize]) -> Result<()> {
        let g = self.group.as_ref();
        let t = self.transition();
        let reps = g.min_coset_reps(j);
        for &u in &reps {
            for &v in &reps {
                let prod = Dual::xi(t, u).mul(g, &Dual::xi(t, v));
                if !prod.is_invariant(g, j) {
                    return Err(Error::Invariant(format!("xi_u xi_v not invariant for J = {j:?}")));
                }
                let coeffs = prod.xi_coefficients(t);
                for w in g.elements() {
                    let p = self.p(w, u, v);
                    let got = coeffs.get(&w).map(|f| f.as_poly().cloned()).unwrap_or_else(|| Some(Poly::zero(g.rank())));
                    if got.as_ref() != Some(&p) {
                        return Err(Error::Invariant("parabolic expansion differs from recursion".into()));
                    }
                    if !p.is_zero() && !reps.contains(&w) {
                        return Err(Error::Invariant("product leaves the parabolic subring".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// One computed table of constants with the algorithm that produced it.
#[derive(Clone, Debug)]
pub struct StructureTable {
    pub algo: Algo,
    pub entries: BTreeMap<(ElemId, ElemId, ElemId), Poly>,
}

impl StructureTable {
    /// Every nonzero `p_{u,v}^w` over the whole group.
    pub fn build(sc: &StructureConstants, algo: Algo) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for w in sc.group().elements() {
            for (u, v, p) in sc.row(algo, w)? {
                entries.insert((w, u, v), p);
            }
        }
        Ok(StructureTable { algo, entries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a3_example() {
        let sc = StructureConstants::for_type("A3").unwrap();
        let g = sc.group().clone();
        let w = g.element(&[0, 1, 2, 0]).unwrap();
        let u = g.element(&[0, 2]).unwrap();
        assert_eq!(sc.p(w, u, u), Poly::one(3));
    }

    #[test]
    fn a2_hecke_examples() {
        let sc = StructureConstants::for_type("A2").unwrap();
        let g = sc.group().clone();
        let w = g.element(&[0, 1, 0]).unwrap();
        let s1 = g.simple(0);
        let v12 = g.element(&[0, 1]).unwrap();
        let v21 = g.element(&[1, 0]).unwrap();
        assert_eq!(p_hecke(sc.transition(), w, s1, v12).unwrap(), Poly::one(2));
        assert!(p_hecke(sc.transition(), w, s1, v21).unwrap().is_zero());
    }
}
