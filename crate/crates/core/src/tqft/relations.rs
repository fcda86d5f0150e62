//! Mapping class group relations checked on the exact representation.

use serde::Serialize;

use super::rep::LevelRep;
use super::words::{BaseCurve, CurveSpec, Genus, MCWord};
use crate::cyclo::CycloNum;
use crate::homology::hyperelliptic_word;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Serialize)]
pub struct RelationCheck {
    pub r: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// `Some(λ)` with x = λ·y exactly.
pub fn proportional<S: Scalar>(x: &Matrix<S>, y: &Matrix<S>) -> Option<S> {
    let k = y.entries().iter().position(|v| !v.is_zero())?;
    let lambda = x.entries()[k].div(&y.entries()[k])?;
    x.sub(&y.scale(&lambda)).is_zero().then_some(lambda)
}

pub const UNITARY_TOL: f64 = 1e-9;

fn word(g: Genus, s: &str) -> MCWord {
    MCWord::parse(g, s).unwrap()
}

/// Runs the relation suite at one level.
pub fn relation_suite(rep: &LevelRep<CycloNum>) -> Vec<RelationCheck> {
    let r = rep.r();
    let g = rep.genus();
    let mut out = Vec::new();
    let mut push = |name: String, passed: bool, detail: String| out.push(RelationCheck { r, name, passed, detail });
    let names = g.generator_names();
    let n = names.len();

    for i in 0..n - 1 {
        let (a, b) = (names[i], names[i + 1]);
        let lhs = rep.rep(&word(g, &format!("{a} {b} {a}")));
        let rhs = rep.rep(&word(g, &format!("{b} {a} {b}")));
        push(format!("braid {a} {b}"), proportional(&lhs, &rhs).is_some(), String::new());
    }
    for i in 0..n {
        for j in i + 2..n {
            let (a, b) = (names[i], names[j]);
            let lhs = rep.rep(&word(g, &format!("{a} {b}")));
            let rhs = rep.rep(&word(g, &format!("{b} {a}")));
            push(format!("commute {a} {b}"), lhs == rhs, "exact equality".into());
        }
    }
    match g {
        Genus::One => {
            let m = rep.rep(&word(g, "Ta Tb").pow(6));
            push("(Ta Tb)^6 scalar".into(), m.as_scalar().is_some(), String::new());
            let (s, _) = rep.s_move();
            let t = rep.generator(0).to_dense(rep.ctx());
            let st = s.mul(&t);
            let st3 = st.mul(&st).mul(&st);
            push("(S T)^3 ~ S^2".into(), proportional(&st3, &s.mul(s)).is_some(), String::new());
            push("S^4 scalar".into(), s.pow(4).as_scalar().is_some(), String::new());
        }
        Genus::Two => {
            let chain = rep.rep(&word(g, "T1 T2 T3 T4 T5").pow(6));
            push("(T1 T2 T3 T4 T5)^6 scalar".into(), chain.as_scalar().is_some(), String::new());
            let h = rep.rep(&hyperelliptic_word());
            push("hyperelliptic scalar".into(), h.as_scalar().is_some(), String::new());
            let sep = rep.curve_twist(BaseCurve { genus: g, index: 5 }).to_dense(rep.ctx());
            for (a, b) in [("T1", "T2"), ("T4", "T5")] {
                let m = rep.rep(&word(g, &format!("{a} {b}")).pow(6));
                push(format!("({a} {b})^6 ~ Ts"), proportional(&m, &sep).is_some(), String::new());
            }
        }
    }
    for (i, name) in names.iter().enumerate() {
        let m = rep.generator(i as u8).to_dense(rep.ctx());
        let d = rep.unitarity_defect(&m);
        push(format!("{name} unitary"), d <= UNITARY_TOL, format!("{d:.3e}"));
    }
    for c in BaseCurve::all(g) {
        let v = rep.curve_op(&CurveSpec::table(c));
        let d = rep.self_adjoint_defect(&v);
        push(format!("V({c}) self-adjoint"), d <= UNITARY_TOL, format!("{d:.3e}"));
    }
    out
}
