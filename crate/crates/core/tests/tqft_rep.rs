use num_complex::Complex64;
use nt_core::cyclo::{CycloNum, Level};
use nt_core::homology::hyperelliptic_word;
use nt_core::tqft::*;
use nt_core::RootCtx;

fn exact(g: Genus, r: u32) -> LevelRep<CycloNum> {
    LevelRep::new(g, Level::new(r).unwrap())
}

fn float(g: Genus, r: u32) -> LevelRep<Complex64> {
    LevelRep::new(g, RootCtx::new(r))
}

fn w(g: Genus, s: &str) -> MCWord {
    MCWord::parse(g, s).unwrap()
}

fn c(g: Genus, s: &str) -> CurveSpec {
    CurveSpec::parse(g, s).unwrap()
}

#[test]
fn relation_suite_small_levels() {
    for g in [Genus::One, Genus::Two] {
        for r in 3..=7 {
            for check in relation_suite(&exact(g, r)) {
                assert!(check.passed, "{g:?} r={r}: {} {}", check.name, check.detail);
            }
        }
    }
}

#[test]
fn hyperelliptic_is_scalar() {
    for r in 3..=8 {
        let m = exact(Genus::Two, r).rep(&hyperelliptic_word());
        assert!(m.as_scalar().is_some(), "r={r}");
    }
}

#[test]
fn single_twist_is_not_scalar() {
    // each level alone has T1^{4r} scalar; jointly no power up to 20 is
    let reps: Vec<_> = (5..=7).map(|r| exact(Genus::Two, r)).collect();
    for k in 1..=20 {
        let word = w(Genus::Two, "T1").pow(k);
        assert!(reps.iter().any(|rep| rep.rep(&word).as_scalar().is_none()), "k={k}");
    }
}

#[test]
fn float_route_matches_exact() {
    for g in [Genus::One, Genus::Two] {
        for r in 3..=6 {
            let (e, f) = (exact(g, r), float(g, r));
            let word = match g {
                Genus::One => w(g, "Ta Tb^-1 Ta Ta Tb"),
                Genus::Two => w(g, "T1 T2^-1 T3 T4 T5^-1 T3 T2"),
            };
            let diff = e.rep(&word).to_c64() - f.rep(&word).to_c64();
            assert!(diff.norm() < 1e-9, "{g:?} r={r} {}", diff.norm());
            let curves: &[&str] = match g {
                Genus::One => &["a", "Tb:a"],
                Genus::Two => &["c1", "T2:c1", "s"],
            };
            for name in curves {
                let spec = c(g, name);
                let d = e.curve_op(&spec).to_c64() - f.curve_op(&spec).to_c64();
                assert!(d.norm() < 1e-9);
            }
        }
    }
}

#[test]
fn nonseparating_norm_closed_form() {
    for r in 3..=9 {
        let expect = 2.0 * (std::f64::consts::PI / r as f64).cos();
        let n1 = float(Genus::One, r).curve_norm(&c(Genus::One, "b"));
        assert!((n1 - expect).abs() < 1e-9, "g=1 r={r} {n1}");
        let rep = float(Genus::Two, r);
        for name in ["c1", "c2", "c3", "T2 T3:c4"] {
            let n2 = rep.curve_norm(&c(Genus::Two, name));
            assert!((n2 - expect).abs() < 1e-9, "g=2 r={r} {name} {n2}");
        }
    }
}

#[test]
fn exact_commutation_examples() {
    let g = Genus::Two;
    let rep = exact(g, 5);
    assert!(rep.commutes_exactly(&w(g, "T1"), &c(g, "c1")));
    assert!(rep.commutes_exactly(&w(g, "T1"), &c(g, "c3")));
    assert!(!rep.commutes_exactly(&w(g, "T1"), &c(g, "c2")));
    assert!(!rep.commutator(&w(g, "T1"), &c(g, "c2")).is_zero());
    assert!(rep.commutes_exactly(&w(g, "T2 T1 T2^-1"), &c(g, "T2:c1")));
    assert!(!rep.commutes_exactly(&w(g, "T2 T1 T2^-1"), &c(g, "c1")));
    assert!(rep.commutator(&w(g, "T2 T1 T2^-1"), &c(g, "T2:c1")).is_zero());
    let f = float(g, 5);
    assert!(f.comm_norm(&w(g, "T1"), &c(g, "c2")) > 1e-3);
    assert!(f.comm_norm(&w(g, "T1"), &c(g, "c1")) < 1e-12);
}

#[test]
fn twist_conjugates_curve_operator() {
    // ρ(w) V(γ) ρ(w)⁻¹ = V(w(γ))
    let g = Genus::Two;
    let rep = exact(g, 5);
    let conj = w(g, "T3 T2^-1");
    let lhs = rep.apply_right(&rep.rep(&conj).mul(&rep.curve_op(&c(g, "c4"))), &conj.inverse());
    assert_eq!(lhs, rep.curve_op(&c(g, "T3 T2^-1:c4")));
}

#[test]
fn curve_spectra_are_loop_values() {
    let g = Genus::Two;
    let rep = float(g, 6);
    let lambdas: Vec<f64> = (0..=4).map(|k| -2.0 * (std::f64::consts::PI * (k + 1) as f64 / 6.0).cos()).collect();
    for spec in ["c2", "c3", "T1:c2"] {
        let m = rep.orthonormalize(&rep.curve_op(&c(g, spec)).to_c64());
        let h = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        for e in h.symmetric_eigenvalues().iter() {
            assert!(lambdas.iter().any(|l| (l - e).abs() < 1e-8), "{spec}: {e}");
        }
    }
}
