//! Finite Coxeter groups as exact matrix groups acting on simple-root coordinates.
//!
//! Letters in words are zero-based (`0` is `s_1`). Canonical words are the lexicographically
//! least reduced words.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::ring::Scalar;
use crate::rootdata::{vector_sign, Matrix, RootDatum, Vector};

pub const GROUP_CAP: usize = 200_000;
const FULL_TABLE_MAX: usize = 5_000;

/// Parses `"1,2,3"` (one-based letters) into a zero-based word. Empty input is the identity.
pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() || s == "e" || s == "[]" {
        return Ok(Vec::new());
    }
    s.trim_matches(|c| c == '[' || c == ']')
        .split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k - 1),
            _ => Err(Error::Parse(format!("bad letter {t:?} in word {s:?}"))),
        })
        .collect()
}

/// Renders a zero-based word with one-based letters.
pub fn format_word(w: &[usize]) -> String {
    w.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn check_letters(datum: &RootDatum, word: &[usize]) -> Result<()> {
    for &i in word {
        if i >= datum.rank() {
            return Err(Error::BadLetter { letter: i + 1, rank: datum.rank() });
        }
    }
    Ok(())
}

/// Matrix of `s_{w1} ... s_{wk}`.
pub fn word_matrix(datum: &RootDatum, word: &[usize]) -> Result<Matrix> {
    check_letters(datum, word)?;
    let mut m = Matrix::identity(datum.rank());
    for &i in word {
        m = m.mul(datum.reflection(i));
    }
    Ok(m)
}

/// Number of positive roots sent to negative roots.
pub fn matrix_length(datum: &RootDatum, m: &Matrix) -> usize {
    datum
        .positive_roots()
        .iter()
        .filter(|b| vector_sign(&m.apply(b)) == Ordering::Less)
        .count()
}

pub fn is_reduced_word(datum: &RootDatum, word: &[usize]) -> Result<bool> {
    Ok(matrix_length(datum, &word_matrix(datum, word)?) == word.len())
}

fn is_right_descent_matrix(m: &Matrix, i: usize) -> bool {
    vector_sign(&m.column(i)) == Ordering::Less
}

/// All reduced words of the element with matrix `m`, in lexicographic order.
pub fn reduced_words_of(datum: &RootDatum, m: &Matrix) -> Vec<Vec<usize>> {
    fn go(datum: &RootDatum, m: &Matrix, memo: &mut HashMap<Matrix, Vec<Vec<usize>>>) -> Vec<Vec<usize>> {
        if let Some(v) = memo.get(m) {
            return v.clone();
        }
        let mut out = Vec::new();
        for i in 0..datum.rank() {
            if is_right_descent_matrix(m, i) {
                let shorter = m.mul(datum.reflection(i));
                for mut w in go(datum, &shorter, memo) {
                    w.push(i);
                    out.push(w);
                }
            }
        }
        if out.is_empty() {
            out.push(Vec::new());
        }
        out.sort();
        memo.insert(m.clone(), out.clone());
        out
    }
    go(datum, m, &mut HashMap::new())
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemId(pub u32);

impl ElemId {
    pub const E: ElemId = ElemId(0);

    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// The whole group, enumerated breadth-first with ascending generators.
#[derive(Debug)]
pub struct WeylGroup {
    datum: Arc<RootDatum>,
    mats: Vec<Matrix>,
    index: HashMap<Matrix, ElemId>,
    right: Vec<Vec<ElemId>>,
    left: Vec<Vec<ElemId>>,
    lengths: Vec<usize>,
    words: Vec<Vec<usize>>,
    inverse: Vec<ElemId>,
    reflections: Vec<ElemId>,
    table: OnceLock<Vec<ElemId>>,
}

impl WeylGroup {
    pub fn generate(datum: &Arc<RootDatum>) -> Result<Arc<Self>> {
        Self::generate_with_cap(datum, GROUP_CAP)
    }

    pub fn generate_with_cap(datum: &Arc<RootDatum>, cap: usize) -> Result<Arc<Self>> {
        let n = datum.rank();
        let mut mats = vec![Matrix::identity(n)];
        let mut index = HashMap::new();
        index.insert(mats[0].clone(), ElemId(0));
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        let mut lengths = vec![0usize];
        let mut right: Vec<Vec<ElemId>> = Vec::new();
        let mut k = 0;
        while k < mats.len() {
            let mut row = Vec::with_capacity(n);
            for i in 0..n {
                let p = mats[k].mul(datum.reflection(i));
                let id = match index.get(&p) {
                    Some(&id) => id,
                    None => {
                        if mats.len() >= cap {
                            return Err(Error::CapExceeded { what: "group order", cap });
                        }
                        let id = ElemId(mats.len() as u32);
                        let mut w = words[k].clone();
                        w.push(i);
                        words.push(w);
                        lengths.push(lengths[k] + 1);
                        index.insert(p.clone(), id);
                        mats.push(p);
                        id
                    }
                };
                row.push(id);
            }
            right.push(row);
            k += 1;
        }
        let left: Vec<Vec<ElemId>> = mats
            .iter()
            .map(|m| (0..n).map(|i| index[&datum.reflection(i).mul(m)]).collect())
            .collect();
        let mut inverse = vec![ElemId(0); mats.len()];
        for (k, w) in words.iter().enumerate() {
            let mut x = ElemId(0);
            for &i in w.iter().rev() {
                x = right[x.idx()][i];
            }
            inverse[k] = x;
        }
        let reflections =
            (0..datum.positive_roots().len()).map(|b| index[&datum.root_reflection(b)]).collect();
        Ok(Arc::new(WeylGroup {
            datum: datum.clone(),
            mats,
            index,
            right,
            left,
            lengths,
            words,
            inverse,
            reflections,
            table: OnceLock::new(),
        }))
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }
    pub fn rank(&self) -> usize {
        self.datum.rank()
    }
    pub fn order(&self) -> usize {
        self.mats.len()
    }
    pub fn elements(&self) -> impl Iterator<Item = ElemId> + '_ {
        (0..self.mats.len() as u32).map(ElemId)
    }
    pub fn identity(&self) -> ElemId {
        ElemId::E
    }
    pub fn matrix(&self, w: ElemId) -> &Matrix {
        &self.mats[w.idx()]
    }
    pub fn length(&self, w: ElemId) -> usize {
        self.lengths[w.idx()]
    }
    /// Canonical (lexicographically least) reduced word.
    pub fn word(&self, w: ElemId) -> &[usize] {
        &self.words[w.idx()]
    }
    pub fn inverse(&self, w: ElemId) -> ElemId {
        self.inverse[w.idx()]
    }
    pub fn lookup(&self, m: &Matrix) -> Option<ElemId> {
        self.index.get(m).copied()
    }
    pub fn simple(&self, i: usize) -> ElemId {
        self.right[0][i]
    }
    pub fn mul_simple_right(&self, w: ElemId, i: usize) -> ElemId {
        self.right[w.idx()][i]
    }
    pub fn mul_simple_left(&self, i: usize, w: ElemId) -> ElemId {
        self.left[w.idx()][i]
    }
    /// `s_beta` for the positive root with index `b`.
    pub fn reflection_element(&self, b: usize) -> ElemId {
        self.reflections[b]
    }

    pub fn element(&self, word: &[usize]) -> Result<ElemId> {
        check_letters(&self.datum, word)?;
        Ok(word.iter().fold(ElemId::E, |x, &i| self.right[x.idx()][i]))
    }

    pub fn element_reduced(&self, word: &[usize]) -> Result<ElemId> {
        let w = self.element(word)?;
        if self.length(w) != word.len() {
            return Err(Error::NotReduced(word.iter().map(|i| i + 1).collect()));
        }
        Ok(w)
    }

    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        if self.order() <= FULL_TABLE_MAX {
            let t = self.table.get_or_init(|| {
                let n = self.order();
                let mut t = vec![ElemId::E; n * n];
                for a in 0..n {
                    for b in 0..n {
                        t[a * n + b] = self.words[b].iter().fold(ElemId(a as u32), |x, &i| self.right[x.idx()][i]);
                    }
                }
                t
            });
            return t[a.idx() * self.order() + b.idx()];
        }
        self.words[b.idx()].iter().fold(a, |x, &i| self.right[x.idx()][i])
    }

    pub fn is_right_descent(&self, w: ElemId, i: usize) -> bool {
        self.lengths[self.right[w.idx()][i].idx()] < self.lengths[w.idx()]
    }
    pub fn is_left_descent(&self, w: ElemId, i: usize) -> bool {
        self.lengths[self.left[w.idx()][i].idx()] < self.lengths[w.idx()]
    }
    pub fn right_descents(&self, w: ElemId) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.is_right_descent(w, i)).collect()
    }
    pub fn left_descents(&self, w: ElemId) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.is_left_descent(w, i)).collect()
    }

    pub fn longest(&self) -> ElemId {
        ElemId(self.order() as u32 - 1)
    }

    pub fn reduced_words(&self, w: ElemId) -> Vec<Vec<usize>> {
        let mut memo: HashMap<ElemId, Vec<Vec<usize>>> = HashMap::new();
        self.reduced_words_memo(w, &mut memo)
    }

    fn reduced_words_memo(&self, w: ElemId, memo: &mut HashMap<ElemId, Vec<Vec<usize>>>) -> Vec<Vec<usize>> {
        if w == ElemId::E {
            return vec![Vec::new()];
        }
        if let Some(v) = memo.get(&w) {
            return v.clone();
        }
        let mut out = Vec::new();
        for i in self.right_descents(w) {
            for mut word in self.reduced_words_memo(self.mul_simple_right(w, i), memo) {
                word.push(i);
                out.push(word);
            }
        }
        out.sort();
        memo.insert(w, out.clone());
        out
    }

    /// `u <= w` in Bruhat order, by lifting along the canonical word of `w`.
    pub fn bruhat_leq(&self, u: ElemId, w: ElemId) -> bool {
        if self.length(u) > self.length(w) {
            return false;
        }
        let mut x = u;
        for &i in self.word(w) {
            if self.is_left_descent(x, i) {
                x = self.mul_simple_left(i, x);
            }
        }
        x == ElemId::E
    }

    /// Elements of the Bruhat interval `[v, w]`.
    pub fn interval(&self, v: ElemId, w: ElemId) -> Vec<ElemId> {
        self.elements().filter(|&x| self.bruhat_leq(v, x) && self.bruhat_leq(x, w)).collect()
    }

    /// Positive root indices of `Phi+ cap w(Phi-)`, in the order of the canonical word.
    pub fn inversion_set(&self, w: ElemId) -> Vec<usize> {
        self.inversion_roots(self.word(w))
            .into_iter()
            .map(|v| self.datum.root_index(&v).expect("root").0)
            .collect()
    }

    /// `beta_k = s_{i1} ... s_{i(k-1)}(alpha_{ik})` along a word.
    pub fn inversion_roots(&self, word: &[usize]) -> Vec<Vector> {
        inversion_roots(&self.datum, word)
    }

    /// `W^J = { w : D_R(w) cap J = empty }`.
    pub fn min_coset_reps(&self, j: &[usize]) -> Vec<ElemId> {
        self.elements().filter(|&w| j.iter().all(|&i| !self.is_right_descent(w, i))).collect()
    }

    /// Longest element of the parabolic subgroup `W_J`.
    pub fn longest_parabolic(&self, j: &[usize]) -> ElemId {
        let mut w = ElemId::E;
        loop {
            match j.iter().find(|&&i| !self.is_right_descent(w, i)) {
                Some(&i) => w = self.mul_simple_right(w, i),
                None => return w,
            }
        }
    }

    /// `(w, b)` with `w = v s_beta` and `l(w) = l(v) + 1`.
    pub fn covers_up(&self, v: ElemId) -> Vec<(ElemId, usize)> {
        (0..self.reflections.len())
            .filter_map(|b| {
                let w = self.mul(v, self.reflections[b]);
                (self.length(w) == self.length(v) + 1).then_some((w, b))
            })
            .collect()
    }

    /// `(u, b)` with `w = u s_beta` and `l(u) = l(w) - 1`.
    pub fn covers_down(&self, w: ElemId) -> Vec<(ElemId, usize)> {
        (0..self.reflections.len())
            .filter_map(|b| {
                let u = self.mul(w, self.reflections[b]);
                (self.length(u) + 1 == self.length(w)).then_some((u, b))
            })
            .collect()
    }

    /// `w(lambda)`.
    pub fn act_vector(&self, w: ElemId, lambda: &[Scalar]) -> Vector {
        self.matrix(w).apply(lambda)
    }

    /// Positive-root index and sign of `w(beta)` for the positive root `b`.
    pub fn act_root(&self, w: ElemId, b: usize) -> (usize, bool) {
        let v = self.act_vector(w, &self.datum.positive_roots()[b]);
        self.datum.root_index(&v).expect("W permutes roots")
    }

    pub fn parse_element(&self, s: &str) -> Result<ElemId> {
        self.element_reduced(&parse_word(s)?)
    }

    /// Elements sorted by length then canonical word.
    pub fn sorted_elements(&self) -> Vec<ElemId> {
        let mut v: Vec<ElemId> = self.elements().collect();
        v.sort_by(|a, b| (self.length(*a), self.word(*a)).cmp(&(self.length(*b), self.word(*b))));
        v
    }

    pub fn subsets(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        (0..1u32 << n).map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect()).collect()
    }

    pub fn descent_set(&self, w: ElemId) -> BTreeSet<usize> {
        self.right_descents(w).into_iter().collect()
    }
}

pub fn inversion_roots(datum: &RootDatum, word: &[usize]) -> Vec<Vector> {
    let n = datum.rank();
    let mut m = Matrix::identity(n);
    let mut out = Vec::with_capacity(word.len());
    for &i in word {
        out.push(m.column(i));
        m = m.mul(datum.reflection(i));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(t: &str) -> Arc<WeylGroup> {
        WeylGroup::generate(&RootDatum::parse(t).unwrap()).unwrap()
    }

    #[test]
    fn orders() {
        for (t, k) in [("A1", 2), ("A3", 24), ("B3", 48), ("D4", 192), ("F4", 1152), ("G2", 12), ("H3", 120), ("I2(5)", 10), ("I2(8):polarized", 16)] {
            assert_eq!(group(t).order(), k, "{t}");
        }
    }

    #[test]
    fn longest_a3_words() {
        let g = group("A3");
        let w0 = g.longest();
        assert_eq!(g.length(w0), 6);
        assert_eq!(g.reduced_words(w0).len(), 16);
        assert_eq!(g.word(w0), &[0, 1, 0, 2, 1, 0]);
    }

    #[test]
    fn coset_reps_a2() {
        let g = group("A2");
        let reps: Vec<Vec<usize>> = g.min_coset_reps(&[1]).iter().map(|&w| g.word(w).to_vec()).collect();
        assert_eq!(reps, vec![vec![], vec![0], vec![1, 0]]);
    }

    #[test]
    fn cap_is_enforced() {
        let d = RootDatum::parse("A4").unwrap();
        assert!(matches!(WeylGroup::generate_with_cap(&d, 50), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn words_parse() {
        assert_eq!(parse_word("1,2,3").unwrap(), vec![0, 1, 2]);
        assert_eq!(parse_word("").unwrap(), Vec::<usize>::new());
        assert!(parse_word("0,1").is_err());
        assert_eq!(format_word(&[0, 2]), "1,3");
    }

    #[test]
    fn bruhat_matches_subwords() {
        let g = group("B3");
        for u in g.elements() {
            for w in g.elements() {
                let word = g.word(w);
                let brute = (0..1u32 << word.len()).any(|mask| {
                    let sub: Vec<usize> = (0..word.len()).filter(|k| mask >> k & 1 == 1).map(|k| word[k]).collect();
                    sub.len() == g.length(u) && g.element(&sub).unwrap() == u
                });
                assert_eq!(g.bruhat_leq(u, w), brute);
            }
        }
    }
}
