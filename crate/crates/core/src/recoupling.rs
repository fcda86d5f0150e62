//! Closed-form skein coefficients: quantum integers, colored loop values,
//! theta and tetrahedral networks, F-moves and twist eigenvalues.
//!
//! Conventions: δ = −A² − A⁻², [n] = (A^{2n} − A^{−2n})/(A² − A⁻²),
//! Δ_n = (−1)^n [n+1], μ_c = (−1)^c A^{c(c+2)}. Colors live in 0..=r−2.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecouplingError {
    #[error("color {color} out of range 0..={max}")]
    ColorOutOfRange { color: u32, max: u32 },
    #[error("triple ({0}, {1}, {2}) is not admissible")]
    Inadmissible(u32, u32, u32),
}

/// Parity, triangle inequality and the level cutoff a+b+c <= 2r−4.
pub fn admissible(r: u32, a: u32, b: u32, c: u32) -> bool {
    (a + b + c) % 2 == 0 && a <= b + c && b <= a + c && c <= a + b && a + b + c <= 2 * r - 4
}

/// Memoizing evaluator for one level.
pub struct Recoupling<S: Scalar> {
    ctx: S::Ctx,
    r: u32,
    qint: Vec<S>,
    fact: Vec<S>,
    fact_inv: Mutex<HashMap<u32, S>>,
    theta: Mutex<HashMap<(u32, u32, u32), S>>,
    tet: Mutex<HashMap<[u32; 6], S>>,
}

impl<S: Scalar> Recoupling<S> {
    pub fn new(ctx: S::Ctx) -> Self {
        let r = S::ctx_r(ctx);
        let top = 3 * r as i64 + 2;
        let qint: Vec<S> = (0..=top).map(|n| quantum_int_raw::<S>(ctx, n)).collect();
        let mut fact = vec![S::one(ctx)];
        for n in 1..=top as usize {
            let next = fact[n - 1].mul(&qint[n]);
            fact.push(next);
        }
        Recoupling {
            ctx,
            r,
            qint,
            fact,
            fact_inv: Mutex::new(HashMap::new()),
            theta: Mutex::new(HashMap::new()),
            tet: Mutex::new(HashMap::new()),
        }
    }

    pub fn ctx(&self) -> S::Ctx {
        self.ctx
    }
    pub fn r(&self) -> u32 {
        self.r
    }
    pub fn max_color(&self) -> u32 {
        self.r - 2
    }

    fn check_color(&self, c: u32) -> Result<(), RecouplingError> {
        if c > self.max_color() {
            Err(RecouplingError::ColorOutOfRange { color: c, max: self.max_color() })
        } else {
            Ok(())
        }
    }

    pub fn admissible(&self, a: u32, b: u32, c: u32) -> bool {
        admissible(self.r, a, b, c)
    }

    fn check_triple(&self, a: u32, b: u32, c: u32) -> Result<(), RecouplingError> {
        if self.admissible(a, b, c) {
            Ok(())
        } else {
            Err(RecouplingError::Inadmissible(a, b, c))
        }
    }

    /// [n] for any integer n.
    pub fn quantum_int(&self, n: i64) -> S {
        match self.qint.get(n.unsigned_abs() as usize) {
            Some(q) if n >= 0 => q.clone(),
            Some(q) => q.neg(),
            None => quantum_int_raw::<S>(self.ctx, n),
        }
    }

    /// [n]! (zero once n >= r).
    pub fn quantum_factorial(&self, n: u32) -> S {
        self.fact[n as usize].clone()
    }

    fn fact_inv(&self, n: u32) -> S {
        assert!(n < self.r, "[{n}]! vanishes at r = {}", self.r);
        if let Some(v) = self.fact_inv.lock().unwrap().get(&n) {
            return v.clone();
        }
        let v = self.fact[n as usize].try_inv().expect("nonzero quantum factorial");
        self.fact_inv.lock().unwrap().insert(n, v.clone());
        v
    }

    /// Loop value δ = −A² − A⁻².
    pub fn loop_value(&self) -> S {
        S::root_power(self.ctx, 2).add(&S::root_power(self.ctx, -2)).neg()
    }

    /// Δ_n = (−1)^n [n+1], the n-colored unknot.
    pub fn delta_n(&self, n: u32) -> Result<S, RecouplingError> {
        self.check_color(n)?;
        Ok(sign(n).apply(self.quantum_int(n as i64 + 1)))
    }

    /// μ_c = (−1)^c A^{c(c+2)}.
    pub fn twist_coeff(&self, c: u32) -> Result<S, RecouplingError> {
        self.check_color(c)?;
        Ok(sign(c).apply(S::root_power(self.ctx, (c * (c + 2)) as i64)))
    }

    /// Eigenvalue of an uncolored curve encircling a c-colored edge:
    /// −(A^{2(c+1)} + A^{−2(c+1)}).
    pub fn curve_eigenvalue(&self, c: u32) -> Result<S, RecouplingError> {
        self.check_color(c)?;
        let e = 2 * (c as i64 + 1);
        Ok(S::root_power(self.ctx, e).add(&S::root_power(self.ctx, -e)).neg())
    }

    pub fn theta(&self, a: u32, b: u32, c: u32) -> Result<S, RecouplingError> {
        self.check_triple(a, b, c)?;
        let key = sort3(a, b, c);
        if let Some(v) = self.theta.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let i = (b + c - a) / 2;
        let j = (a + c - b) / 2;
        let k = (a + b - c) / 2;
        let num = self
            .quantum_factorial(i + j + k + 1)
            .mul(&self.quantum_factorial(i))
            .mul(&self.quantum_factorial(j))
            .mul(&self.quantum_factorial(k));
        let den = self.fact_inv(i + j).mul(&self.fact_inv(j + k)).mul(&self.fact_inv(i + k));
        let v = sign(i + j + k).apply(num.mul(&den));
        self.theta.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    /// Tetrahedral network Tet[A B E; C D F] with vertex triples
    /// (A,D,E), (B,C,E), (A,B,F), (C,D,F).
    pub fn tet(&self, a: u32, b: u32, e: u32, c: u32, d: u32, f: u32) -> Result<S, RecouplingError> {
        self.check_triple(a, d, e)?;
        self.check_triple(b, c, e)?;
        self.check_triple(a, b, f)?;
        self.check_triple(c, d, f)?;
        let key = [a, b, e, c, d, f];
        if let Some(v) = self.tet.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let faces = [(a + d + e) / 2, (b + c + e) / 2, (a + b + f) / 2, (c + d + f) / 2];
        let verts = [(b + d + e + f) / 2, (a + c + e + f) / 2, (a + b + c + d) / 2];
        let mut prefactor = S::one(self.ctx);
        for &bj in &verts {
            for &ai in &faces {
                prefactor = prefactor.mul(&self.quantum_factorial(bj - ai));
            }
        }
        for x in [a, b, c, d, e, f] {
            prefactor = prefactor.mul(&self.fact_inv(x));
        }
        let lo = *faces.iter().max().unwrap();
        let hi = *verts.iter().min().unwrap();
        let mut sum = S::zero(self.ctx);
        for s in lo..=hi {
            let top = self.quantum_factorial(s + 1);
            if top.is_zero() {
                continue;
            }
            let mut term = top;
            for &ai in &faces {
                term = term.mul(&self.fact_inv(s - ai));
            }
            for &bj in &verts {
                term = term.mul(&self.fact_inv(bj - s));
            }
            sum = sum.add(&sign(s).apply(term));
        }
        let v = prefactor.mul(&sum);
        self.tet.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    /// F-move coefficient for a four-holed sphere with boundary colors p, q, s, t
    /// (cyclic order): internal edge d separating {p,q}|{s,t} is re-expressed
    /// through d' separating {p,t}|{q,s}.
    pub fn f_move(&self, p: u32, q: u32, s: u32, t: u32, d: u32, d2: u32) -> Result<S, RecouplingError> {
        let tet = self.tet(p, t, d, s, q, d2)?;
        let num = tet.mul(&self.delta_n(d2)?);
        let den = self.theta(p, t, d2)?.mul(&self.theta(q, s, d2)?);
        Ok(num.mul(&den.try_inv().expect("theta is nonzero on admissible triples")))
    }

    /// Admissible internal colors for boundary colors (x, y).
    pub fn fusion_channels(&self, x: u32, y: u32) -> Vec<u32> {
        (0..=self.max_color()).filter(|&c| self.admissible(x, y, c)).collect()
    }

    /// Square F-move matrix between the {p,q}|{s,t} and {p,t}|{q,s} channels;
    /// rows indexed by d, columns by d'.
    pub fn f_matrix(&self, p: u32, q: u32, s: u32, t: u32) -> (Vec<u32>, Vec<u32>, Vec<Vec<S>>) {
        let ds: Vec<u32> = self.fusion_channels(p, q).into_iter().filter(|&d| self.admissible(s, t, d)).collect();
        let d2s: Vec<u32> = self.fusion_channels(p, t).into_iter().filter(|&d| self.admissible(q, s, d)).collect();
        let m = ds
            .iter()
            .map(|&d| d2s.iter().map(|&d2| self.f_move(p, q, s, t, d, d2).unwrap()).collect())
            .collect();
        (ds, d2s, m)
    }
}

fn quantum_int_raw<S: Scalar>(ctx: S::Ctx, n: i64) -> S {
    // [n] = Σ_{k=0}^{n−1} A^{2(n−1−2k)}
    let m = n.abs();
    let mut acc = S::zero(ctx);
    for k in 0..m {
        acc = acc.add(&S::root_power(ctx, 2 * (m - 1 - 2 * k)));
    }
    if n < 0 {
        acc.neg()
    } else {
        acc
    }
}

fn sort3(a: u32, b: u32, c: u32) -> (u32, u32, u32) {
    let mut v = [a, b, c];
    v.sort_unstable();
    (v[0], v[1], v[2])
}

#[derive(Clone, Copy)]
struct Sign(bool);

fn sign(n: u32) -> Sign {
    Sign(n % 2 == 1)
}

impl Sign {
    fn apply<S: Scalar>(self, x: S) -> S {
        if self.0 {
            x.neg()
        } else {
            x
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{CycloNum, Level};
    use crate::scalar::RootCtx;
    use num_complex::Complex64;

    fn exact(r: u32) -> Recoupling<CycloNum> {
        Recoupling::new(Level::new(r).unwrap())
    }

    #[test]
    fn quantum_integers() {
        for r in 3..=9 {
            let rc = exact(r);
            assert!(rc.quantum_int(1).is_one());
            assert!(rc.quantum_int(r as i64).is_zero());
            for n in 0..=r as i64 {
                let want = (n as f64 * std::f64::consts::PI / r as f64).sin() / (std::f64::consts::PI / r as f64).sin();
                assert!((rc.quantum_int(n).embed().re - want).abs() < 1e-12);
            }
        }
        assert!((exact(5).quantum_int(2).embed().re - 1.6180339887).abs() < 1e-9);
    }

    #[test]
    fn small_deltas_and_thetas() {
        let rc = exact(5);
        let l = Level::new(5).unwrap();
        let d = rc.loop_value();
        assert!(rc.delta_n(0).unwrap().is_one());
        assert_eq!(rc.delta_n(1).unwrap(), d);
        let d2 = &d * &d - CycloNum::one(l);
        assert_eq!(rc.delta_n(2).unwrap(), d2);
        assert!(rc.theta(0, 0, 0).unwrap().is_one());
        assert_eq!(rc.theta(1, 1, 0).unwrap(), d);
        assert_eq!(rc.theta(1, 1, 2).unwrap(), d2);
        assert_eq!(rc.delta_n(4).unwrap_err(), RecouplingError::ColorOutOfRange { color: 4, max: 3 });
        assert_eq!(rc.theta(1, 1, 1).unwrap_err(), RecouplingError::Inadmissible(1, 1, 1));
    }

    #[test]
    fn twist_coefficients() {
        let rc = exact(6);
        let l = Level::new(6).unwrap();
        assert!(rc.twist_coeff(0).unwrap().is_one());
        assert_eq!(rc.twist_coeff(1).unwrap(), -CycloNum::monomial(l, 3));
        assert_eq!(rc.twist_coeff(2).unwrap(), CycloNum::monomial(l, 8));
        for c in 0..=4 {
            assert!((rc.twist_coeff(c).unwrap().embed().norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn curve_eigenvalue_examples() {
        let rc = exact(4);
        let vals: Vec<f64> = (0..=2).map(|c| rc.curve_eigenvalue(c).unwrap().embed().re).collect();
        let s = std::f64::consts::SQRT_2;
        assert!((vals[0] + s).abs() < 1e-12 && vals[1].abs() < 1e-12 && (vals[2] - s).abs() < 1e-12);
        assert_eq!(rc.curve_eigenvalue(0).unwrap(), rc.loop_value());
        let r7 = exact(7);
        assert!((r7.curve_eigenvalue(5).unwrap().embed().re - 2.0 * (std::f64::consts::PI / 7.0).cos()).abs() < 1e-12);
    }

    #[test]
    fn theta_never_vanishes() {
        for r in 3..=12 {
            let rc = exact(r);
            for a in 0..=r - 2 {
                for b in 0..=r - 2 {
                    for c in 0..=r - 2 {
                        if rc.admissible(a, b, c) {
                            assert!(!rc.theta(a, b, c).unwrap().is_zero(), "theta({a},{b},{c}) at r={r}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn tet_with_a_zero_edge_is_a_theta() {
        // Tet[A B E; C D 0] forces A=B, C=D and reduces to θ(A,D,E)
        let rc = exact(7);
        for a in 0..=5 {
            for d in 0..=5 {
                for e in 0..=5 {
                    if rc.admissible(a, d, e) {
                        assert_eq!(rc.tet(a, a, e, d, d, 0).unwrap(), rc.theta(a, d, e).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn f_matrix_with_zero_boundary_is_trivial() {
        let rc = exact(6);
        for q in 0..=4 {
            for s in 0..=4 {
                // p = 0: the only channels are d = q and d' = t = ...
                for t in 0..=4 {
                    let (ds, d2s, m) = rc.f_matrix(0, q, s, t);
                    if ds.is_empty() {
                        continue;
                    }
                    assert_eq!((ds.clone(), d2s.clone()), (vec![q], vec![t]));
                    assert!(m[0][0].is_one());
                }
            }
        }
    }

    #[test]
    fn f_moves_are_orthogonal() {
        for r in 3..=6 {
            let rc = exact(r);
            let n = r - 2;
            for p in 0..=n {
                for q in 0..=n {
                    for s in 0..=n {
                        for t in 0..=n {
                            let (ds, es, f) = rc.f_matrix(p, q, s, t);
                            let (es2, ds2, g) = rc.f_matrix(q, s, t, p);
                            assert_eq!((ds.len(), es.clone()), (es.len(), es2));
                            assert_eq!(ds, ds2);
                            for i in 0..ds.len() {
                                for k in 0..ds.len() {
                                    let mut acc = CycloNum::zero(Level::new(r).unwrap());
                                    for j in 0..es.len() {
                                        acc = acc + &f[i][j] * &g[j][k];
                                    }
                                    assert_eq!(acc.is_one(), i == k, "r={r} {p}{q}{s}{t}");
                                    if i != k {
                                        assert!(acc.is_zero());
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn float_and_exact_agree() {
        let ex = exact(8);
        let fl: Recoupling<Complex64> = Recoupling::new(RootCtx::new(8));
        for (a, b, e, c, d, f) in [(1, 1, 0, 1, 1, 2), (2, 2, 2, 2, 2, 2), (3, 3, 2, 3, 3, 4), (4, 2, 2, 2, 4, 2)] {
            let x = ex.tet(a, b, e, c, d, f).unwrap().embed();
            let y = fl.tet(a, b, e, c, d, f).unwrap();
            assert!((x - y).norm() < 1e-9 * (1.0 + x.norm()));
        }
        for c in 0..=6 {
            assert!((ex.theta(c, c, 0).unwrap().embed() - fl.theta(c, c, 0).unwrap()).norm() < 1e-9);
        }
    }
}
