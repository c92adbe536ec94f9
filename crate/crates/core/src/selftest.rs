//! Worked examples and small cross-checks, run by `schub selftest`.

use crate::connective::{brute_force_table, CkContext, CkCoproduct, CkQW, CkFraction, CKScalar};
use crate::error::Result;
use crate::poly::Poly;
use crate::rootdata::RootDatum;
use crate::smoothness;
use crate::structconst::{bott_samelson_term, p_complete, Algo, Rank2Data, Side, StructureConstants};
use crate::weyl::ElemId;

#[derive(Clone, Debug)]
pub struct Check {
    pub anchor: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(anchor: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    match f() {
        Ok((passed, detail)) => Check { anchor, passed, detail },
        Err(e) => Check { anchor, passed: false, detail: format!("error: {e}") },
    }
}

fn p_of(spec: &str, w: &[usize], u: &[usize], v: &[usize]) -> Result<Poly> {
    p_complete(&*RootDatum::parse(spec)?, w, u, v)
}

/// Zero-based copy of a one-based word.
fn zb(w: &[usize]) -> Vec<usize> {
    w.iter().map(|x| x - 1).collect()
}

pub fn run_all() -> Vec<Check> {
    let mut out = vec![
        check("a3-example", || {
            let p = p_of("A3", &zb(&[1, 2, 3, 1]), &zb(&[1, 3]), &zb(&[1, 3]))?;
            Ok((p == Poly::one(3), p.to_string()))
        }),
        check("a8-golden-constant", || {
            let p = p_of("A8", &zb(&[1, 5, 4, 3, 2, 3, 4]), &zb(&[2, 4]), &zb(&[4, 3, 2, 3, 4]))?;
            Ok((p.to_string() == "2", p.to_string()))
        }),
        check("a8-golden-polynomial", || {
            let p = p_of("A8", &zb(&[2, 4, 3, 2]), &zb(&[2, 3, 2]), &zb(&[4, 3, 2]))?;
            Ok((p.to_string() == "a1*a2 + a2^2 + a1*a3 + 2*a2*a3 + a3^2", p.to_string()))
        }),
        check("g2-bott-samelson", || {
            let d = RootDatum::parse("G2")?;
            let word = [0, 1, 0, 1];
            let mid = bott_samelson_term(&d, &word, 0b1100, 0b1100);
            let p = p_complete(&d, &word, &[0, 1], &[0, 1])?;
            Ok((mid == Poly::constant(2, (-2).into()) && p.to_string() == "2", format!("p = {p}, p_{{34,34}} = {mid}")))
        }),
        check("i2-5-bott-samelson", || {
            let p = p_of("I2(5)", &[0, 1, 0, 1], &[0, 1], &[0, 1])?;
            Ok((p == Poly::one(2), p.to_string()))
        }),
        check("rank2-g2", || {
            let r = Rank2Data::from_datum(&*RootDatum::parse("G2")?)?;
            let a: Vec<String> = r.seq(Side::U).iter().map(|s| s.to_string()).collect();
            let b: Vec<String> = r.seq(Side::V).iter().map(|s| s.to_string()).collect();
            let ok = a.join(",") == "0,1,3,2,3,1,0"
                && b.join(",") == "0,1,1,2,1,1,0"
                && r.coefficient(1, 3, Side::U)? == 3.into()
                && r.coefficient(3, 2, Side::V)? == 1.into();
            Ok((ok, format!("A = ({}), B = ({})", a.join(","), b.join(","))))
        }),
        check("kumar-a3", || {
            let sc = StructureConstants::for_type("A3")?;
            let g = sc.group();
            let w = g.element(&[1, 0, 2, 1])?;
            let c = smoothness::c_prime(sc.transition(), w, ElemId::E)?;
            Ok((c.to_string() == "a0 + a1 + a2", format!("c'_(w,e) = {c}")))
        }),
        check("hecke-a2", || {
            let sc = StructureConstants::for_type("A2")?;
            let g = sc.group();
            let w = g.element(&[0, 1, 0])?;
            let (s1, s12, s21) = (g.simple(0), g.element(&[0, 1])?, g.element(&[1, 0])?);
            let a = sc.p_with(Algo::Hecke, w, s1, s12)?;
            let b = sc.p_with(Algo::Hecke, w, s1, s21)?;
            Ok((a == Poly::one(2) && b.is_zero(), format!("{a}, {b}")))
        }),
        check("ck-a2", || {
            let ctx = CkContext::for_type("A2")?;
            let cp = CkCoproduct::new(&ctx);
            let t = CkFraction::from_scalar(CKScalar::t(2));
            for i in 0..2 {
                let x = CkQW::x(&ctx, i);
                if x.mul(&ctx, &x) != x.scale_left(&ctx, &t) {
                    return Ok((false, format!("X_{}^2 != t X_{}", i + 1, i + 1)));
                }
            }
            for w in ctx.group().elements() {
                if cp.table(w)? != brute_force_table(&ctx, w)? {
                    return Ok((false, format!("recursion != delta expansion at {:?}", ctx.group().word(w))));
                }
            }
            Ok((true, "X_i^2 = t X_i; recursion matches delta expansion".into()))
        }),
    ];
    for spec in ["A2", "B2", "G2", "I2(5)"] {
        out.push(check("oracle-agreement", || agreement(spec)));
        out.push(check("transition-inverse", || {
            let sc = StructureConstants::for_type(spec)?;
            sc.transition().verify_inverse()?;
            Ok((true, format!("{spec}: C D^t = I")))
        }));
    }
    out
}

fn agreement(spec: &str) -> Result<(bool, String)> {
    let sc = StructureConstants::for_type(spec)?;
    let g = sc.group().clone();
    let mut n = 0;
    for w in g.elements() {
        for u in g.elements() {
            for v in g.elements() {
                let base = sc.p(w, u, v);
                for a in Algo::ALL {
                    if a == Algo::Hecke && g.length(u) + g.length(v) != g.length(w) {
                        continue;
                    }
                    if sc.p_with(a, w, u, v)? != base {
                        let words = (g.word(w).to_vec(), g.word(u).to_vec(), g.word(v).to_vec());
                        return Ok((false, format!("{spec}: {a} differs at {words:?}")));
                    }
                }
                n += 1;
            }
        }
    }
    Ok((true, format!("{spec}: {n} triples")))
}
