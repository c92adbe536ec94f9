//! One PASS/FAIL line per acceptance criterion.
//!
//! A criterion can contain a sub-claim that is false as stated. Such a claim is still checked,
//! and if it fails while the correct alternative holds, the line reads FAIL with the reason but
//! the test does not panic. Anything else that fails is a real failure.

use std::sync::Arc;
use std::time::Instant;

use nilhecke::connective::{CkContext, CkCoproduct, CkFraction, CkQW, CkTensor, CKScalar};
use nilhecke::poly::Poly;
use nilhecke::ring::Scalar;
use nilhecke::rootdata::RootDatum;
use nilhecke::smoothness;
use nilhecke::structconst::{bott_samelson_term, chevalley, Algo, Rank2Data, Side, StructureConstants};
use nilhecke::twisted::{d_by_inversion, d_by_recursion, billey_column, Dual, Transition};
use nilhecke::weyl::{ElemId, WeylGroup};

#[derive(Default)]
struct Criterion {
    failed: Vec<String>,
    disputed: Vec<String>,
}

impl Criterion {
    fn check(&mut self, what: impl Into<String>, ok: bool) {
        if !ok {
            self.failed.push(what.into());
        }
    }
    fn check_res<T>(&mut self, what: &str, r: nilhecke::Result<T>) -> Option<T> {
        match r {
            Ok(x) => Some(x),
            Err(e) => {
                self.failed.push(format!("{what}: {e}"));
                None
            }
        }
    }
    /// A claim that does not hold, recorded with the verified correct statement.
    fn dispute(&mut self, why: impl Into<String>) {
        self.disputed.push(why.into());
    }
}

fn report(n: usize, title: &str, c: &Criterion) -> bool {
    if c.failed.is_empty() && c.disputed.is_empty() {
        println!("PASS criterion {n:>2}: {title}");
    } else {
        println!("FAIL criterion {n:>2}: {title}");
        for f in &c.failed {
            println!("    unexpected: {f}");
        }
        for d in &c.disputed {
            println!("    claim does not hold: {d}");
        }
    }
    c.failed.is_empty()
}

fn group(spec: &str) -> Arc<WeylGroup> {
    WeylGroup::generate(&RootDatum::parse(spec).unwrap()).unwrap()
}

fn el(g: &WeylGroup, word: &str) -> ElemId {
    g.parse_element(word).unwrap()
}

fn lin(coeffs: &[i64]) -> Poly {
    Poly::linear(&coeffs.iter().map(|&c| Scalar::int(c)).collect::<Vec<_>>())
}

fn criterion_1() -> Criterion {
    let mut c = Criterion::default();
    let sc = StructureConstants::for_type("A3").unwrap();
    let g = sc.group().clone();
    let (w, u) = (el(&g, "1,2,3,1"), el(&g, "1,3"));
    for algo in Algo::ALL {
        let p = sc.p_with(algo, w, u, u);
        if let Some(p) = c.check_res(algo.name(), p) {
            c.check(format!("{algo}: p = {p}"), p == Poly::one(3));
        }
    }
    c
}

fn criterion_2() -> Criterion {
    let mut c = Criterion::default();
    let cases = [
        ("1,5,4,3,2,3,4", "2,4", "4,3,2,3,4", "2\n"),
        ("2,4,3,2", "2,3,2", "4,3,2", "a1*a2 + a2^2 + a1*a3 + 2*a2*a3 + a3^2\n"),
    ];
    for (w, u, v, want) in cases {
        let args: Vec<String> = ["schub", "schub", "--type", "A8", "--w", w, "--u", u, "--v", v]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = nilhecke::cli::run_with(&args, &mut out, &mut err);
        let got = String::from_utf8(out).unwrap();
        c.check(format!("w={w}: exit {code}, output {got:?}"), code == 0 && got == want);
    }
    c
}

fn criterion_3() -> Criterion {
    let mut c = Criterion::default();
    for (spec, want) in [("G2", 2), ("I2(6):polarized", 2), ("I2(5):normalized", 1)] {
        let sc = StructureConstants::for_type(spec).unwrap();
        let g = sc.group().clone();
        let (w, u) = (el(&g, "1,2,1,2"), el(&g, "1,2"));
        for algo in Algo::ALL {
            if let Some(p) = c.check_res(spec, sc.p_with(algo, w, u, u)) {
                c.check(format!("{spec} {algo}: p = {p}"), p == Poly::constant(2, Scalar::int(want)));
            }
        }
        c.check(format!("{spec}: c"), sc.augmented(w, u, u) == Scalar::int(want));
    }
    let d = RootDatum::parse("G2").unwrap();
    let mid = bott_samelson_term(&d, &[0, 1, 0, 1], 0b1100, 0b1100);
    c.check(format!("G2 p_{{34,34}} = {mid}"), mid == Poly::constant(2, Scalar::int(-2)));
    c
}

fn criterion_4() -> Criterion {
    let mut c = Criterion::default();
    let ints = |v: Vec<Scalar>| v.iter().map(|s| s.as_integer()).collect::<Vec<_>>();

    let g2 = Rank2Data::from_datum(&RootDatum::parse("G2").unwrap()).unwrap();
    c.check("G2 A", ints(g2.seq(Side::U)) == [0, 1, 3, 2, 3, 1, 0].map(Some));
    c.check("G2 B", ints(g2.seq(Side::V)) == [0, 1, 1, 2, 1, 1, 0].map(Some));
    c.check("c^u4_(u1,u3) = 3", g2.coefficient(1, 3, Side::U).unwrap() == Scalar::int(3));
    c.check("c^v5_(v3,v2) = 1", g2.coefficient(3, 2, Side::V).unwrap() == Scalar::int(1));

    let n6 = Rank2Data::from_datum(&RootDatum::parse("I2(6):normalized").unwrap()).unwrap();
    let r3 = n6.coefficient(1, 3, Side::U).unwrap();
    c.check("normalized G2 gives sqrt 3", &r3 * &r3 == Scalar::int(3) && r3.sign().is_gt());

    let d7 = RootDatum::parse("I2(7)").unwrap();
    let tau = d7.ring().tau();
    let t2 = &(&tau * &tau) - &Scalar::one();
    let want = [Scalar::zero(), Scalar::one(), tau.clone(), t2.clone(), t2, tau, Scalar::one(), Scalar::zero()];
    c.check("I2(7) A sequence", Rank2Data::from_datum(&d7).unwrap().seq(Side::U) == want);

    let mut specs: Vec<String> = (2..=8).map(|m| format!("I2({m}):normalized")).collect();
    specs.extend([4, 6, 8].map(|m| format!("I2({m}):polarized")));
    for spec in &specs {
        let sc = StructureConstants::for_type(spec).unwrap();
        let g = sc.group().clone();
        let r = Rank2Data::from_datum(sc.datum()).unwrap();
        let m = r.m() as usize;
        for side in [Side::U, Side::V] {
            let e = |k| g.element(&Rank2Data::word(side, k)).unwrap();
            for x in 0..=m {
                for y in 0..=m - x {
                    let closed = r.coefficient(x, y, side).unwrap();
                    let rec = sc.augmented(e(x + y), e(x), e(y));
                    c.check(format!("{spec} {side:?} r={x} t={y}: {closed} vs {rec}"), closed == rec);
                }
            }
        }
    }
    c
}

fn criterion_5() -> Criterion {
    let mut c = Criterion::default();
    let d = RootDatum::parse("A3").unwrap();
    let g = WeylGroup::generate(&d).unwrap();
    let t = Transition::build(&g);
    let w = el(&g, "2,1,3,2");

    // c_{w,e} = (a1+a2+a3) / (a1 a2 a3 s2(a1) s2(a3))
    let den = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [0, 1, 1]];
    let cleared = den.iter().fold(t.c(w, ElemId::E), |f, r| f.mul_poly(&d, &lin(r)));
    c.check(format!("c_(w,e) = {}", t.c(w, ElemId::E).render(&d)), cleared.as_poly() == Some(&lin(&[1, 1, 1])));

    let ce = smoothness::c_prime(&t, w, ElemId::E).unwrap();
    c.check(format!("c'_(w,e) = {ce}"), ce == lin(&[1, 1, 1]));
    c.check("singular at e", !smoothness::is_smooth_point(&t, w, ElemId::E).unwrap());

    let s2 = g.simple(1);
    let mut bad = Vec::new();
    for v in g.interval(ElemId::E, w) {
        if v == ElemId::E {
            continue;
        }
        let cv = smoothness::c_prime(&t, w, v).unwrap();
        if cv != Poly::one(3) {
            bad.push((v, cv));
        }
    }
    if !bad.is_empty() {
        let only_s2 = bad.len() == 1 && bad[0].0 == s2 && bad[0].1 == lin(&[1, 1, 1]);
        c.check("c'_(w,v) = 1 for every e < v <= w except v = s2", only_s2);
        if only_s2 {
            c.dispute("c'_(w,v) = 1 for all e < v <= w: at v = s2, c' = a1+a2+a3 and |S(w,s2)| = 5; the singular locus of this Schubert variety is X(s2)");
        }
    }
    c
}

fn criterion_6() -> Criterion {
    let mut c = Criterion::default();
    let start = Instant::now();
    for spec in ["A2", "B2", "G2", "I2(5)"] {
        let sc = StructureConstants::for_type(spec).unwrap();
        let g = sc.group().clone();
        let mut count = 0;
        for w in g.elements() {
            for u in g.elements() {
                for v in g.elements() {
                    let base = sc.p(w, u, v);
                    for algo in Algo::ALL {
                        if algo == Algo::Hecke && g.length(u) + g.length(v) != g.length(w) {
                            continue;
                        }
                        let ok = sc.p_with(algo, w, u, v).is_ok_and(|p| p == base);
                        if !ok {
                            count += 1;
                        }
                    }
                }
            }
        }
        c.check(format!("{spec}: {count} disagreements"), count == 0);
    }
    let secs = start.elapsed().as_secs_f64();
    c.check(format!("took {secs:.1}s"), secs < 180.0);
    c
}

fn criterion_7() -> Criterion {
    let mut c = Criterion::default();
    for spec in ["A3", "B3", "H3"] {
        let t = Transition::build(&group(spec));
        c.check_res(spec, t.verify_inverse());
    }
    let g = group("A3");
    let t = Transition::build(&g);
    let rec = d_by_recursion(&g);
    let inv = d_by_inversion(&t).unwrap();
    for v in g.elements() {
        let billey = billey_column(&g, v);
        c.check(format!("billey vs table at {:?}", g.word(v)), &billey == t.d_column(v));
        c.check(format!("recursion at {:?}", g.word(v)), rec[v.idx()] == billey);
        c.check(format!("inversion at {:?}", g.word(v)), inv[v.idx()] == billey);
    }
    c
}

fn criterion_8() -> Criterion {
    let mut c = Criterion::default();
    for spec in ["A3", "B2"] {
        let sc = StructureConstants::for_type(spec).unwrap();
        let g = sc.group().clone();
        for w in g.elements() {
            for u in g.elements() {
                for v in g.elements() {
                    let p = sc.p(w, u, v);
                    let ok = p.terms().all(|(_, k)| k.as_integer().is_some_and(|n| n >= 0));
                    if !ok {
                        c.check(format!("{spec} {:?} {:?} {:?}: {p}", g.word(w), g.word(u), g.word(v)), false);
                    }
                }
            }
        }
    }
    c
}

fn criterion_9() -> Criterion {
    let mut c = Criterion::default();
    let sc = StructureConstants::for_type("A2").unwrap();
    let g = sc.group().clone();
    let (w, s1) = (el(&g, "1,2,1"), el(&g, "1"));
    let a = sc.p_with(Algo::Hecke, w, s1, el(&g, "1,2")).unwrap();
    let b = sc.p_with(Algo::Hecke, w, s1, el(&g, "2,1")).unwrap();
    c.check(format!("p_(1,12)^121 = {a}"), a == Poly::one(2));
    c.check(format!("p_(1,21)^121 = {b}"), b.is_zero());
    c
}

fn criterion_10() -> Criterion {
    let mut c = Criterion::default();
    let sc = StructureConstants::for_type("A3").unwrap();
    let g = sc.group().clone();
    let d = g.datum();
    for i in 0..3 {
        let si = g.simple(i);
        let omega = &d.fundamental_weights()[i];
        for v in g.elements() {
            let ch = chevalley(&g, i, v);
            for w in g.elements() {
                let got = ch.get(&w).cloned().unwrap_or_else(|| Poly::zero(3));
                c.check(format!("s{} {:?} -> {:?}", i + 1, g.word(v), g.word(w)), got == sc.p(w, si, v));
            }
            let vo = g.act_vector(v, omega);
            let diff: Vec<Scalar> = omega.iter().zip(&vo).map(|(a, b)| a - b).collect();
            c.check("integral diagonal", diff.iter().all(|x| x.as_integer().is_some()));
            c.check(format!("diagonal at {:?}", g.word(v)), sc.p(v, si, v) == Poly::linear(&diff));
        }
    }
    c
}

/// Returns how many simple reflections show the `-t` gap in the printed `Delta(Y_i)`.
fn ck_checks(c: &mut Criterion, spec: &str) -> usize {
    let mut gaps = 0;
    let ctx = CkContext::for_type(spec).unwrap();
    let g = ctx.group().clone();
    let n = g.rank();
    let t = CkFraction::from_scalar(CKScalar::t(n));
    let one = CkQW::delta(&ctx, ElemId::E);
    let ten = |a: &CkQW, b: &CkQW| CkTensor::product(&ctx, a, b);
    for i in 0..n {
        let x = CkQW::x(&ctx, i);
        let y = CkQW::y(&ctx, i);
        let xa = CkFraction::from_scalar(ctx.x_simple(i));
        c.check(format!("{spec}: X_{i}^2 = t X_{i}"), x.mul(&ctx, &x) == x.scale_left(&ctx, &t));
        c.check(format!("{spec}: X_{i} + Y_{i} = t"), x.add(&ctx, &y) == CkQW::scalar(t.clone()));

        let dx = CkTensor::coproduct(&x);
        let want = ten(&x, &one).add(&ctx, &ten(&one, &x)).add(&ctx, &ten(&x, &x).scale(&ctx, &xa.neg()));
        c.check(format!("{spec}: Delta(X_{i})"), dx == want);

        let dy = CkTensor::coproduct(&y);
        let tt = t.mul(&ctx, &t);
        let minus_one = CkFraction::from_scalar(CKScalar::one(n)).neg();
        // t - X (x) 1 - 1 (x) X + x X (x) X, with 1 = delta_e (x) delta_e
        let mid = ten(&one, &one)
            .scale(&ctx, &t)
            .add(&ctx, &ten(&x, &one).scale(&ctx, &minus_one))
            .add(&ctx, &ten(&one, &x).scale(&ctx, &minus_one))
            .add(&ctx, &ten(&x, &x).scale(&ctx, &xa));
        c.check(format!("{spec}: Delta(Y_{i}) first line"), dy == mid);
        let lin_part = CkFraction::from_scalar(CKScalar::one(n)).sub(&ctx, &t.mul(&ctx, &xa));
        let rest = ten(&y, &one)
            .add(&ctx, &ten(&one, &y))
            .scale(&ctx, &lin_part)
            .add(&ctx, &ten(&y, &y).scale(&ctx, &xa));
        let printed = ten(&one, &one).scale(&ctx, &tt.mul(&ctx, &xa)).add(&ctx, &rest);
        let corrected = ten(&one, &one).scale(&ctx, &tt.mul(&ctx, &xa).sub(&ctx, &t)).add(&ctx, &rest);
        if dy != printed {
            c.check(format!("{spec}: Delta(Y_{i}) = (t^2 x - t) + (1 - t x)(Y (x) 1 + 1 (x) Y) + x Y (x) Y"), dy == corrected);
            let gap = dy.add(&ctx, &printed.scale(&ctx, &minus_one));
            let minus_t = ten(&one, &one).scale(&ctx, &t.neg());
            let exact = gap == minus_t;
            c.check(format!("{spec}: Delta(Y_{i}) minus printed form is -t"), exact);
            if exact && dy == corrected {
                gaps += 1;
            }
        }
    }

    let sc = StructureConstants::for_type(spec).unwrap();
    let cp = CkCoproduct::new(&ctx);
    for w in g.elements() {
        let table = c.check_res(spec, cp.table(w)).unwrap_or_default();
        for u in g.elements() {
            for v in g.elements() {
                let p = table.get(&(u, v)).cloned().unwrap_or_else(|| CKScalar::zero(n));
                let cap = (g.length(u) + g.length(v)) as u32;
                let ok = p.at_t0(cap).is_ok_and(|q| q == sc.x_basis(w, u, v));
                c.check(format!("{spec}: t->0 at {:?} {:?} {:?}", g.word(w), g.word(u), g.word(v)), ok);
            }
        }
        let pe = table.get(&(w, ElemId::E)).cloned().unwrap_or_else(|| CKScalar::zero(n));
        c.check(format!("{spec}: p_(w,e)^w at {:?}", g.word(w)), pe == CKScalar::one(n));
        let mut prod = CKScalar::one(n);
        for b in g.inversion_set(w) {
            prod = prod.mul(&ctx.x_root(b));
        }
        if g.length(w) % 2 == 1 {
            prod = prod.neg();
        }
        let pw = table.get(&(w, w)).cloned().unwrap_or_else(|| CKScalar::zero(n));
        c.check(format!("{spec}: p_(w,w)^w at {:?}", g.word(w)), pw == prod);
    }
    gaps
}

fn criterion_11() -> Criterion {
    let mut c = Criterion::default();
    let gaps = ck_checks(&mut c, "A2") + ck_checks(&mut c, "B2");
    if gaps > 0 {
        c.dispute(format!(
            "Delta(Y_i) = t^2 x + (1 - t x)(Y (x) 1 + 1 (x) Y) + x Y (x) Y: the constant term is t^2 x - t; \
             the printed form differs from Delta(Y_i) by exactly -t (1 (x) 1) for {gaps} of the 4 simple reflections of A2 and B2"
        ));
    }
    c
}

fn criterion_12() -> Criterion {
    let mut c = Criterion::default();
    let sc = StructureConstants::for_type("A3").unwrap();
    let g = sc.group().clone();
    let t = sc.transition();
    for j in g.subsets() {
        c.check_res(&format!("J = {j:?}"), sc.parabolic_consistent(&j));
        let reps = g.min_coset_reps(&j);
        for w in g.elements() {
            let inv = Dual::xi(t, w).is_invariant(&g, &j);
            c.check(format!("J = {j:?}, w = {:?}", g.word(w)), inv == reps.contains(&w));
        }
    }
    c
}

type CriterionFn = fn() -> Criterion;

fn main() {
    let criteria: [(&str, CriterionFn); 12] = [
        ("A3 example p_(13,13)^1231 = 1", criterion_1),
        ("A8 golden outputs byte-exact", criterion_2),
        ("G2 and I2(5) Bott-Samelson examples", criterion_3),
        ("rank-2 sequences and binomial closed forms", criterion_4),
        ("Kumar criterion on s2s1s3s2 in A3", criterion_5),
        ("five algorithms plus Hecke agree on A2, B2, G2, I2(5)", criterion_6),
        ("C D^t = I on A3, B3, H3; three d computations agree", criterion_7),
        ("positivity on A3 and B2", criterion_8),
        ("Hecke-product examples in A2", criterion_9),
        ("Chevalley formula on A3", criterion_10),
        ("connective K-theory identities and tables", criterion_11),
        ("parabolic restriction and invariance on A3", criterion_12),
    ];
    let mut unexpected = Vec::new();
    for (k, (title, f)) in criteria.iter().enumerate() {
        if !report(k + 1, title, &f()) {
            unexpected.push(k + 1);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures in criteria {unexpected:?}");
        std::process::exit(1);
    }
}
