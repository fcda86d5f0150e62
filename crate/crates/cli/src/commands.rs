use std::process::ExitCode;

use nt_core::charvar::{separate as separate_curves, PiOneWord};
use nt_core::classify::{Classifier, SearchConfig};
use nt_core::recoupling::Recoupling;
use nt_core::tqft::{relation_suite, verlinde_dim, CurveSpec, Genus, MCWord, SpineBasis};
use nt_core::{CycloNum, ExactRep, FloatRep, Level, RootCtx};
use serde_json::{json, Value};

use crate::Common;

type Res = Result<ExitCode, String>;

/// Exit code for a failed internal check.
const INVARIANT: u8 = 3;

fn emit(mut v: Value, json: bool, text: impl FnOnce() -> String) {
    if json {
        if let Value::Object(m) = &mut v {
            m.insert("schema".into(), "nt/1".into());
        }
        println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
    } else {
        print!("{}", text());
    }
}

pub fn parse_levels(s: &str) -> Result<Vec<u32>, String> {
    let bad = || format!("bad level set {s:?}");
    let levels: Vec<u32> = if let Some((lo, hi)) = s.split_once("..") {
        let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
        (lo..=hi).collect()
    } else {
        s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?
    };
    if levels.is_empty() {
        return Err(bad());
    }
    if let Some(r) = levels.iter().find(|&&r| r < 3) {
        return Err(format!("level r = {r} is below 3"));
    }
    Ok(levels)
}

fn setup(c: &Common) -> Result<(Genus, Vec<u32>), String> {
    let g = Genus::new(c.genus).map_err(|e| e.to_string())?;
    let levels = match &c.levels {
        Some(s) => parse_levels(s)?,
        None => g.default_levels(),
    };
    Ok((g, levels))
}

fn level(r: u32) -> Level {
    Level::new(r).expect("levels are validated")
}

pub fn classify(c: &Common, word: &str, depth: Option<usize>, power_bound: Option<u32>, threads: usize, json: bool) -> Res {
    let (g, levels) = setup(c)?;
    let w = MCWord::parse(g, word).map_err(|e| e.to_string())?;
    let mut config = SearchConfig { levels, threads, ..SearchConfig::new(g) };
    if let Some(d) = depth {
        config.depth = d;
    }
    if let Some(m) = power_bound {
        config.power_bound = m;
    }
    let classifier = Classifier::new(config).map_err(|e| e.to_string())?;
    let v = classifier.classify(&w);
    let value = serde_json::to_value(&v).expect("serializable");
    emit(value, json, || {
        let mut s = format!("word: {}\nkind: {:?}\n", if v.word.is_empty() { "(empty)" } else { &v.word }, v.kind);
        if let Some(o) = &v.order {
            s += &format!("M: {} (order divides {}", o.power, o.order_divides);
            if let Some(h) = o.homology_order {
                s += &format!(", homology gives order {h}");
            }
            s += ")\n";
        }
        if let Some(cv) = &v.curve {
            s += &format!("curve: {}  M: {}  exact commutation at r = {:?}\n", cv.spec, cv.power, cv.levels);
        }
        if let Some(b) = &v.bounds {
            s += &format!(
                "exhausted: M <= {}, depth {}, {} distinct curves ({} enumerated), r = {:?}\n",
                b.power_bound, b.depth, b.curves_distinct, b.curves_enumerated, b.levels
            );
        }
        s += &format!("homology: {:?}, trace {}\n", v.homology.status, v.homology.trace);
        s
    });
    Ok(ExitCode::SUCCESS)
}

pub fn dims(c: &Common, json: bool) -> Res {
    let (g, levels) = setup(c)?;
    let rows: Vec<(u32, usize, u64)> =
        levels.iter().map(|&r| (r, SpineBasis::new(g, r).dim(), verlinde_dim(g.as_u32(), r))).collect();
    let ok = rows.iter().all(|&(_, d, v)| d as u64 == v);
    let value = json!({
        "genus": g.as_u32(),
        "rows": rows.iter().map(|&(r, d, v)| json!({"r": r, "dim": d, "verlinde": v})).collect::<Vec<_>>(),
        "ok": ok,
    });
    emit(value, json, || {
        let mut s = format!("{:>4} {:>8} {:>9}\n", "r", "dim", "verlinde");
        for (r, d, v) in &rows {
            s += &format!("{r:>4} {d:>8} {v:>9}\n");
        }
        s
    });
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(INVARIANT) })
}

pub fn verify_relations(c: &Common, json: bool) -> Res {
    let (g, levels) = setup(c)?;
    let checks: Vec<_> = levels.iter().flat_map(|&r| relation_suite(&ExactRep::new(g, level(r)))).collect();
    let ok = checks.iter().all(|c| c.passed);
    let value = json!({"genus": g.as_u32(), "checks": checks, "ok": ok});
    emit(value, json, || {
        let mut s = String::new();
        for c in &checks {
            s += &format!("r={:<3} {:<4} {} {}\n", c.r, if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
        }
        s += if ok { "all relations hold\n" } else { "relation failures\n" };
        s
    });
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(INVARIANT) })
}

pub fn commutator(c: &Common, word: &str, curve: &str, json: bool) -> Res {
    let (g, levels) = setup(c)?;
    let w = MCWord::parse(g, word).map_err(|e| e.to_string())?;
    let spec = CurveSpec::parse(g, curve).map_err(|e| e.to_string())?;
    let rows: Vec<(u32, bool, f64)> = levels
        .iter()
        .map(|&r| {
            let exact = ExactRep::new(g, level(r)).commutes_exactly(&w, &spec);
            let norm = FloatRep::new(g, RootCtx::new(r)).comm_norm(&w, &spec);
            (r, exact, norm)
        })
        .collect();
    let value = json!({
        "word": w.to_string(),
        "curve": spec.to_string(),
        "levels": rows.iter().map(|&(r, z, n)| json!({"r": r, "exact_zero": z, "norm": n})).collect::<Vec<_>>(),
    });
    emit(value, json, || {
        let mut s = format!("[rho({w}), V({spec})]\n");
        for (r, z, n) in &rows {
            s += &format!("r={r:<3} {:<8} norm {n:.6e}\n", if *z { "zero" } else { "nonzero" });
        }
        s
    });
    Ok(ExitCode::SUCCESS)
}

pub fn norm_sweep(c: &Common, curve: &str, json: bool) -> Res {
    let (g, levels) = setup(c)?;
    let spec = CurveSpec::parse(g, curve).map_err(|e| e.to_string())?;
    let rows: Vec<(u32, f64, f64)> = levels
        .iter()
        .map(|&r| {
            let n = FloatRep::new(g, RootCtx::new(r)).curve_norm(&spec);
            (r, n, 2.0 * (std::f64::consts::PI / r as f64).cos())
        })
        .collect();
    let value = json!({
        "curve": spec.to_string(),
        "rows": rows.iter().map(|&(r, n, e)| json!({"r": r, "norm": n, "two_cos": e})).collect::<Vec<_>>(),
    });
    emit(value, json, || {
        let mut s = format!("{:>4} {:>14} {:>14}\n", "r", "norm", "2cos(pi/r)");
        for (r, n, e) in &rows {
            s += &format!("{r:>4} {n:>14.10} {e:>14.10}\n");
        }
        s
    });
    Ok(ExitCode::SUCCESS)
}

pub fn separate(c1: &str, c2: &str, trials: usize, seed: u64, json: bool) -> Res {
    let w1 = PiOneWord::curve_or_word(c1).map_err(|e| e.to_string())?;
    let w2 = PiOneWord::curve_or_word(c2).map_err(|e| e.to_string())?;
    let rep = separate_curves(c1, &w1, c2, &w2, trials, seed);
    let value = serde_json::to_value(&rep).expect("serializable");
    emit(value, json, || match (rep.h1, rep.h2, rep.margin, rep.seed) {
        (Some(h1), Some(h2), Some(m), Some(s)) => {
            format!("{c1} vs {c2}: separated at seed {s}: h1 = {h1:.6}, h2 = {h2:.6}, margin {m:.6}\n")
        }
        _ => format!("{c1} vs {c2}: {} after {} trials\n", rep.status, rep.trials),
    });
    Ok(ExitCode::SUCCESS)
}

pub fn dump_tables(c: &Common, tets: bool, json: bool) -> Res {
    let (_, levels) = setup(c)?;
    let mut out = Vec::new();
    let mut text = String::new();
    for &r in &levels {
        let rc: Recoupling<CycloNum> = Recoupling::new(level(r));
        let top = rc.max_color();
        let show = |x: CycloNum| x.to_string();
        let deltas: Vec<String> = (0..=top).map(|n| show(rc.delta_n(n).unwrap())).collect();
        let twists: Vec<String> = (0..=top).map(|n| show(rc.twist_coeff(n).unwrap())).collect();
        let mut thetas = Vec::new();
        for a in 0..=top {
            for b in a..=top {
                for cc in b..=top {
                    if rc.admissible(a, b, cc) {
                        thetas.push(json!({"colors": [a, b, cc], "value": show(rc.theta(a, b, cc).unwrap())}));
                    }
                }
            }
        }
        text += &format!("r = {r}  (A^{} = 1, delta = {})\n", 4 * r, show(rc.loop_value()));
        for n in 0..=top as usize {
            text += &format!("  Delta_{n} = {}   twist_{n} = {}\n", deltas[n], twists[n]);
        }
        for t in &thetas {
            text += &format!("  theta{} = {}\n", t["colors"], t["value"].as_str().unwrap_or_default());
        }
        let mut entry = json!({"r": r, "delta": show(rc.loop_value()), "Delta": deltas, "twist": twists, "theta": thetas});
        if tets {
            let mut list = Vec::new();
            let cols = 0..=top;
            for a in cols.clone() {
                for b in cols.clone() {
                    for e in cols.clone() {
                        for cc in cols.clone() {
                            for d in cols.clone() {
                                for f in cols.clone() {
                                    if let Ok(v) = rc.tet(a, b, e, cc, d, f) {
                                        text += &format!("  Tet[{a} {b} {e}; {cc} {d} {f}] = {}\n", show(v.clone()));
                                        list.push(json!({"colors": [a, b, e, cc, d, f], "value": show(v)}));
                                    }
                                }
                            }
                        }
                    }
                }
            }
            entry["tet"] = Value::Array(list);
        }
        out.push(entry);
    }
    emit(json!({"levels": out}), json, || text);
    Ok(ExitCode::SUCCESS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_syntax() {
        assert_eq!(parse_levels("3..6").unwrap(), vec![3, 4, 5, 6]);
        assert_eq!(parse_levels("3, 5,7").unwrap(), vec![3, 5, 7]);
        assert!(parse_levels("2..4").is_err());
        assert!(parse_levels("6..4").is_err());
        assert!(parse_levels("x").is_err());
    }
}
