//! The `schub` command-line front end.
//!
//! Words are comma-separated one-based letters. Output is deterministic; `--json` wraps every
//! result as `{"query", "result", "algo"}`. Exit codes: 0 success, 1 computation error,
//! 2 bad arguments.

use std::io::Write;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::connective::{CkContext, CkCoproduct};
use crate::error::{Error, Result};
use crate::poly::scalar_json;
use crate::rootdata::RootDatum;
use crate::smoothness;
use crate::structconst::{p_complete, Algo, Rank2Data, Side, StructureConstants};
use crate::twisted::{billey_word, Transition};
use crate::weyl::{format_word, parse_word, ElemId, WeylGroup, GROUP_CAP};

pub const GROUP_CAP_ENV: &str = "SCHUB_GROUP_CAP";

#[derive(Parser, Debug)]
#[command(name = "schub", about = "Equivariant Schubert calculus via nil-Hecke rings")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args, Debug, Clone)]
struct Common {
    /// Cartan type, e.g. A3, G2, H3, I2(5), I2(6):polarized, B2@weight
    #[arg(long = "type")]
    ty: String,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Specialize {
    T0,
    T1,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Order, roots, lattice index and Cartan matrix of a type.
    GroupInfo {
        #[command(flatten)]
        common: Common,
    },
    /// Structure constant p_{u,v}^w.
    Schub {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        w: String,
        #[arg(long, default_value = "")]
        u: String,
        #[arg(long, default_value = "")]
        v: String,
        /// recursive, complete, bs, bij, loc, hecke or all
        #[arg(long, default_value = "complete")]
        algo: String,
        /// Every nonzero p_{u,v}^w for the given w (u and v are ignored).
        #[arg(long)]
        all_pairs: bool,
    },
    /// Transition coefficients c_{w,v} (coefficient of delta_v in Y_w).
    Transition {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        w: String,
        #[arg(long)]
        v: Option<String>,
    },
    /// Localizations d_{u,v} = xi_u(delta_v) by Billey's formula.
    Billey {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Kumar smoothness report for the Schubert variety of w at v.
    Smooth {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        w: String,
        #[arg(long, default_value = "")]
        v: String,
        /// Also list c'_{w,y} over the interval [v, w].
        #[arg(long)]
        rational: bool,
    },
    /// Rank-two sequences and binomial constants.
    Rank2 {
        #[command(flatten)]
        common: Common,
    },
    /// Connective K-theory constants of Delta(X_w).
    CkSchub {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        w: String,
        #[arg(long)]
        u: Option<String>,
        #[arg(long)]
        v: Option<String>,
        #[arg(long, value_enum)]
        specialize: Option<Specialize>,
    },
    /// Worked examples and cross-checks on small types.
    Selftest {
        #[arg(long)]
        json: bool,
    },
}

fn group_cap() -> Result<usize> {
    match std::env::var(GROUP_CAP_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| Error::Parse(format!("{GROUP_CAP_ENV}={s:?}"))),
        Err(_) => Ok(GROUP_CAP),
    }
}

fn group_for(ty: &str) -> Result<Arc<WeylGroup>> {
    WeylGroup::generate_with_cap(&RootDatum::parse(ty)?, group_cap()?)
}

fn word(s: &str, rank: usize) -> Result<Vec<usize>> {
    let w = parse_word(s)?;
    if let Some(&x) = w.iter().find(|&&x| x >= rank) {
        return Err(Error::BadLetter { letter: x + 1, rank });
    }
    Ok(w)
}

fn elem(g: &WeylGroup, s: &str) -> Result<ElemId> {
    g.element_reduced(&word(s, g.rank())?)
}

struct Out {
    json: bool,
    lines: Vec<String>,
    value: Value,
}

impl Out {
    fn new(json: bool) -> Self {
        Out { json, lines: Vec::new(), value: Value::Null }
    }
    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }
    fn emit(self, query: Value, algo: &str, w: &mut dyn Write) -> std::io::Result<()> {
        if self.json {
            let v = json!({ "query": query, "result": self.value, "algo": algo });
            writeln!(w, "{}", serde_json::to_string_pretty(&v).expect("json"))
        } else {
            for l in self.lines {
                writeln!(w, "{l}")?;
            }
            Ok(())
        }
    }
}

fn wjson(g: &WeylGroup, x: ElemId) -> Value {
    json!(g.word(x).iter().map(|i| i + 1).collect::<Vec<_>>())
}

fn group_info(common: &Common) -> Result<(Value, Out)> {
    let d = RootDatum::parse(&common.ty)?;
    let g = WeylGroup::generate_with_cap(&d, group_cap()?)?;
    let mut o = Out::new(common.json);
    let npos = d.positive_roots().len();
    let cartan: Vec<Vec<String>> =
        d.cartan().rows().iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
    let index = d.lattice_index();
    o.line(format!("type: {}", d.spec()));
    o.line(format!("rank: {}", d.rank()));
    o.line(format!("crystallographic: {}", d.is_crystallographic()));
    if !d.is_crystallographic() {
        o.line(format!("tau: 2cos(pi/{}), minimal polynomial coefficients {:?}", d.ring().m(), d.ring().minpoly()));
    }
    o.line(format!("order: {}", g.order()));
    o.line(format!("roots: {} ({npos} positive)", 2 * npos));
    o.line(format!("lattice index: {index}"));
    o.line(format!("longest element: {}", format_word(g.word(g.longest()))));
    for (i, r) in cartan.iter().enumerate() {
        o.line(format!("cartan row {}: [{}]", i + 1, r.join(", ")));
    }
    o.value = json!({
        "type": d.spec().to_string(),
        "rank": d.rank(),
        "crystallographic": d.is_crystallographic(),
        "tau_m": d.ring().m(),
        "minpoly": d.ring().minpoly(),
        "order": g.order(),
        "roots": 2 * npos,
        "positive_roots": npos,
        "lattice_index": index.to_string(),
        "longest": wjson(&g, g.longest()),
        "cartan": cartan,
    });
    Ok((json!({ "type": common.ty }), o))
}

fn schub(common: &Common, w: &str, u: &str, v: &str, algo: &str, all_pairs: bool) -> Result<(Value, Out, String)> {
    let mut o = Out::new(common.json);
    let query = json!({ "type": common.ty, "w": w, "u": u, "v": v, "all_pairs": all_pairs });
    let algos: Vec<Algo> = if algo == "all" {
        Algo::ALL.to_vec()
    } else {
        vec![algo.parse().map_err(|e: Error| Error::Parse(e.to_string()))?]
    };
    // the word recursion needs no group, which keeps large types like A8 cheap
    if algos == [Algo::Complete] && !all_pairs {
        let d = RootDatum::parse(&common.ty)?;
        let (ww, uw, vw) = (word(w, d.rank())?, word(u, d.rank())?, word(v, d.rank())?);
        let p = p_complete(&d, &ww, &uw, &vw)?;
        o.line(p.to_string());
        o.value = json!([{ "u": u, "v": v, "w": w, "polynomial": p.to_string(), "algo": "complete" }]);
        return Ok((query, o, algo.to_string()));
    }
    let sc = StructureConstants::new(&group_for(&common.ty)?);
    let g = sc.group().clone();
    let we = elem(&g, w)?;
    let pairs: Vec<(ElemId, ElemId)> = if all_pairs {
        let below: Vec<ElemId> = g.sorted_elements().into_iter().filter(|&x| g.bruhat_leq(x, we)).collect();
        below.iter().flat_map(|&a| below.iter().map(move |&b| (a, b))).collect()
    } else {
        vec![(elem(&g, u)?, elem(&g, v)?)]
    };
    let mut rows = Vec::new();
    for (ue, ve) in pairs {
        let mut first: Option<crate::poly::Poly> = None;
        for &a in &algos {
            let p = sc.p_with(a, we, ue, ve)?;
            if let Some(f) = &first {
                if *f != p {
                    return Err(Error::Invariant(format!(
                        "{a} disagrees with {} at u = {}, v = {}: {p} vs {f}",
                        algos[0],
                        format_word(g.word(ue)),
                        format_word(g.word(ve))
                    )));
                }
            } else {
                first = Some(p.clone());
            }
            if all_pairs && p.is_zero() {
                continue;
            }
            let (us, vs) = (format_word(g.word(ue)), format_word(g.word(ve)));
            if all_pairs || algos.len() > 1 {
                o.line(format!("u={us} v={vs} [{a}]: {p}"));
            } else {
                o.line(p.to_string());
            }
            rows.push(json!({ "u": us, "v": vs, "w": format_word(g.word(we)), "polynomial": p.to_string(), "algo": a.name() }));
        }
    }
    o.value = Value::Array(rows);
    Ok((query, o, algo.to_string()))
}

fn transition(common: &Common, w: &str, v: Option<&str>) -> Result<(Value, Out)> {
    let g = group_for(&common.ty)?;
    let t = Transition::build(&g);
    let we = elem(&g, w)?;
    let mut o = Out::new(common.json);
    let targets: Vec<ElemId> = match v {
        Some(v) => vec![elem(&g, v)?],
        None => g.sorted_elements().into_iter().filter(|x| t.c_row(we).contains_key(x)).collect(),
    };
    let d = g.datum();
    let mut rows = Vec::new();
    for x in targets {
        let c = t.c(we, x);
        o.line(format!("c[{}]: {}", format_word(g.word(x)), c.render(d)));
        rows.push(json!({ "v": wjson(&g, x), "c": c.to_json(d), "text": c.render(d) }));
    }
    o.value = Value::Array(rows);
    Ok((json!({ "type": common.ty, "w": w, "v": v }), o))
}

fn billey(common: &Common, u: &str, v: &str) -> Result<(Value, Out)> {
    let g = group_for(&common.ty)?;
    let ue = elem(&g, u)?;
    let vw = word(v, g.rank())?;
    let d = billey_word(&g, ue, &vw)?;
    let mut o = Out::new(common.json);
    o.line(d.to_string());
    o.value = json!({ "d": d.to_string(), "terms": d.to_json() });
    Ok((json!({ "type": common.ty, "u": u, "v": v }), o))
}

fn smooth(common: &Common, w: &str, v: &str, rational: bool) -> Result<(Value, Out)> {
    let g = group_for(&common.ty)?;
    let t = Transition::build(&g);
    let (we, ve) = (elem(&g, w)?, elem(&g, v)?);
    let r = smoothness::report(&t, we, ve)?;
    let d = g.datum();
    let mut o = Out::new(common.json);
    let roots: Vec<String> =
        r.s_set.iter().map(|&b| crate::poly::Poly::linear(&d.positive_roots()[b]).to_string()).collect();
    let tag = if r.formal { " (formal)" } else { "" };
    o.line(format!("S(w,v): {{{}}}", roots.join(", ")));
    o.line(format!("c': {}", r.c_prime));
    o.line(format!("smooth: {}{tag}", r.smooth));
    o.line(format!("rationally smooth: {}{tag}", r.rationally_smooth));
    let mut interval = Vec::new();
    if rational {
        for y in g.interval(ve, we) {
            let c = smoothness::c_prime(&t, we, y)?;
            o.line(format!("c'[{}]: {c}", format_word(g.word(y))));
            interval.push(json!({ "y": wjson(&g, y), "c_prime": c.to_string() }));
        }
    }
    o.value = json!({
        "s_set": roots,
        "c_prime": r.c_prime.to_string(),
        "smooth": r.smooth,
        "rationally_smooth": r.rationally_smooth,
        "formal": r.formal,
        "interval": interval,
    });
    Ok((json!({ "type": common.ty, "w": w, "v": v, "rational": rational }), o))
}

fn rank2(common: &Common) -> Result<(Value, Out)> {
    let d = RootDatum::parse(&common.ty)?;
    let r = Rank2Data::from_datum(&d)?;
    let m = r.m() as usize;
    let mut o = Out::new(common.json);
    let show = |v: Vec<crate::ring::Scalar>| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let (sa, sb) = (show(r.seq(Side::U)), show(r.seq(Side::V)));
    o.line(format!("m: {m}"));
    o.line(format!("a: {}  b: {}", r.a(), r.b()));
    o.line(format!("A: ({})", sa.join(", ")));
    o.line(format!("B: ({})", sb.join(", ")));
    let mut table = Vec::new();
    for x in 1..m {
        for y in 1..=m - x {
            let c = r.coefficient(x, y, Side::U)?;
            let dd = r.coefficient(x, y, Side::V)?;
            o.line(format!("C({x},{y}) = {c}   D({x},{y}) = {dd}"));
            table.push(json!({ "r": x, "t": y, "C": scalar_json(&c), "D": scalar_json(&dd) }));
        }
    }
    o.value = json!({ "m": m, "a": scalar_json(r.a()), "b": scalar_json(r.b()), "A": sa, "B": sb, "table": table });
    Ok((json!({ "type": common.ty }), o))
}

fn ck_schub(
    common: &Common,
    w: &str,
    u: Option<&str>,
    v: Option<&str>,
    spec: Option<Specialize>,
) -> Result<(Value, Out)> {
    let ctx = CkContext::new(&group_for(&common.ty)?)?;
    let g = ctx.group().clone();
    let we = elem(&g, w)?;
    let cp = CkCoproduct::new(&ctx);
    let entries: Vec<(ElemId, ElemId, crate::connective::CKScalar)> = match (u, v) {
        (Some(u), Some(v)) => {
            let (ue, ve) = (elem(&g, u)?, elem(&g, v)?);
            vec![(ue, ve, cp.p(we, ue, ve)?)]
        }
        (None, None) => cp.table(we)?.into_iter().map(|((a, b), p)| (a, b, p)).collect(),
        _ => return Err(Error::Parse("give both --u and --v, or neither".into())),
    };
    let mut o = Out::new(common.json);
    let mut rows = Vec::new();
    for (ue, ve, p) in entries {
        let (us, vs) = (format_word(g.word(ue)), format_word(g.word(ve)));
        let (text, val) = match spec {
            None => (p.to_string(), p.to_json()),
            Some(Specialize::T1) => {
                let q = p.at_t1();
                (q.to_string(), q.to_json())
            }
            Some(Specialize::T0) => {
                let cap = (g.length(ue) + g.length(ve)) as u32;
                let q = p.at_t0(cap)?;
                (q.to_string(), json!(q.to_string()))
            }
        };
        o.line(format!("u={us} v={vs}: {text}"));
        rows.push(json!({ "u": us, "v": vs, "w": format_word(g.word(we)), "value": val }));
    }
    o.value = Value::Array(rows);
    let sp = spec.map(|s| format!("{s:?}").to_lowercase());
    Ok((json!({ "type": common.ty, "w": w, "u": u, "v": v, "specialize": sp }), o))
}

fn selftest(json_out: bool) -> (Out, bool) {
    let mut o = Out::new(json_out);
    let results = crate::selftest::run_all();
    let ok = results.iter().all(|r| r.passed);
    for r in &results {
        o.line(format!("{} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.anchor, r.detail));
    }
    o.value = Value::Array(
        results.iter().map(|r| json!({ "anchor": r.anchor, "passed": r.passed, "detail": r.detail })).collect(),
    );
    (o, ok)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::BadLetter { .. } => 2,
        _ => 1,
    }
}

/// Runs the CLI on `args` (including the program name), writing to the given streams.
pub fn run_with(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let res: Result<(Value, Out, String)> = match &cli.cmd {
        Cmd::GroupInfo { common } => group_info(common).map(|(q, o)| (q, o, "-".into())),
        Cmd::Schub { common, w, u, v, algo, all_pairs } => schub(common, w, u, v, algo, *all_pairs),
        Cmd::Transition { common, w, v } => transition(common, w, v.as_deref()).map(|(q, o)| (q, o, "recursion".into())),
        Cmd::Billey { common, u, v } => billey(common, u, v).map(|(q, o)| (q, o, "billey".into())),
        Cmd::Smooth { common, w, v, rational } => smooth(common, w, v, *rational).map(|(q, o)| (q, o, "kumar".into())),
        Cmd::Rank2 { common } => rank2(common).map(|(q, o)| (q, o, "closed-form".into())),
        Cmd::CkSchub { common, w, u, v, specialize } => {
            ck_schub(common, w, u.as_deref(), v.as_deref(), *specialize).map(|(q, o)| (q, o, "ck-recursion".into()))
        }
        Cmd::Selftest { json } => {
            let (o, ok) = selftest(*json);
            let _ = o.emit(json!({}), "selftest", out);
            return if ok { 0 } else { 1 };
        }
    };
    match res {
        Ok((q, o, algo)) => {
            if o.emit(q, &algo, out).is_err() {
                return 1;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run(args: &[String]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
