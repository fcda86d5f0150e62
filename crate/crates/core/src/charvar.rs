//! SU(2) representations of the closed genus 2 surface group as unit
//! quaternions, and trace functions of curves on them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Matrix4x6, Vector4};
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quat<T> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Float> Quat<T> {
    pub fn new(w: T, x: T, y: T, z: T) -> Self {
        Quat { w, x, y, z }
    }

    pub fn one() -> Self {
        Quat::new(T::one(), T::zero(), T::zero(), T::zero())
    }

    pub fn norm(&self) -> T {
        (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn normalize(&self) -> Self {
        self.scale(T::one() / self.norm())
    }

    pub fn scale(&self, s: T) -> Self {
        Quat::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn conj(&self) -> Self {
        Quat::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Trace of the corresponding SU(2) matrix.
    pub fn trace(&self) -> T {
        self.w + self.w
    }

    /// Uniform (Haar) sample from the unit sphere.
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        loop {
            let mut c = [T::zero(); 4];
            for v in &mut c {
                *v = T::from(rng.gen_range(-1.0..1.0)).unwrap();
            }
            let q = Quat::new(c[0], c[1], c[2], c[3]);
            let n = q.norm();
            if n > T::from(1e-3).unwrap() && n <= T::one() {
                return q.scale(T::one() / n);
            }
        }
    }

    /// exp of a pure quaternion (x, y, z).
    pub fn exp_pure(x: T, y: T, z: T) -> Self {
        let th = (x * x + y * y + z * z).sqrt();
        if th < T::epsilon() {
            return Quat::new(T::one(), x, y, z).normalize();
        }
        let s = th.sin() / th;
        Quat::new(th.cos(), x * s, y * s, z * s)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other * self.conj() * other.conj()
    }
}

impl<T: Float> Mul for Quat<T> {
    type Output = Quat<T>;
    fn mul(self, q: Quat<T>) -> Quat<T> {
        let p = self;
        Quat::new(
            p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
        )
    }
}

impl<T: Float> Add for Quat<T> {
    type Output = Quat<T>;
    fn add(self, q: Quat<T>) -> Quat<T> {
        Quat::new(self.w + q.w, self.x + q.x, self.y + q.y, self.z + q.z)
    }
}

impl<T: Float> Sub for Quat<T> {
    type Output = Quat<T>;
    fn sub(self, q: Quat<T>) -> Quat<T> {
        Quat::new(self.w - q.w, self.x - q.x, self.y - q.y, self.z - q.z)
    }
}

impl<T: Float> Neg for Quat<T> {
    type Output = Quat<T>;
    fn neg(self) -> Quat<T> {
        self.scale(-T::one())
    }
}

/// Images of the standard generators a, b, c, d with [a,b][c,d] = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SU2Point<T = f64> {
    pub gens: [Quat<T>; 4],
}

impl<T: Float> SU2Point<T> {
    pub fn trivial() -> Self {
        SU2Point { gens: [Quat::one(); 4] }
    }

    /// ‖[a,b][c,d] − I‖ as 2×2 matrices (Frobenius).
    pub fn residual(&self) -> T {
        let [a, b, c, d] = self.gens;
        let rel = a.commutator(&b) * c.commutator(&d);
        (rel - Quat::one()).norm() * T::from(2.0).unwrap().sqrt()
    }

    /// Simultaneous conjugation by g.
    pub fn conjugate(&self, g: &Quat<T>) -> Self {
        SU2Point { gens: self.gens.map(|q| *g * q * g.conj()) }
    }

    pub fn eval(&self, w: &PiOneWord) -> Quat<T> {
        w.letters.iter().fold(Quat::one(), |acc, &(g, inv)| {
            let q = self.gens[g as usize];
            acc * if inv { q.conj() } else { q }
        })
    }

    /// h_γ = tr ρ(γ).
    pub fn holonomy(&self, w: &PiOneWord) -> T {
        self.eval(w).trace()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CharVarError {
    #[error("bad π1 letter {0:?}")]
    BadLetter(String),
    #[error("unknown curve {0:?}")]
    UnknownCurve(String),
    #[error("sampler did not converge for seed {0}")]
    NoConvergence(u64),
}

/// Word in a, b, c, d and inverses, freely reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiOneWord {
    letters: Vec<(u8, bool)>,
}

const NAMES: [&str; 4] = ["a", "b", "c", "d"];

impl PiOneWord {
    pub fn new(letters: Vec<(u8, bool)>) -> Self {
        let mut out: Vec<(u8, bool)> = Vec::new();
        for l in letters {
            assert!(l.0 < 4);
            if out.last() == Some(&(l.0, !l.1)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        PiOneWord { letters: out }
    }

    /// Tokens like `a`, `c^-1`.
    pub fn parse(s: &str) -> Result<Self, CharVarError> {
        let mut v = Vec::new();
        for tok in s.split_whitespace() {
            let (name, inv) = match tok.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (tok.strip_suffix("^1").unwrap_or(tok), false),
            };
            let g = NAMES.iter().position(|&n| n == name).ok_or_else(|| CharVarError::BadLetter(tok.into()))?;
            v.push((g as u8, inv));
        }
        Ok(PiOneWord::new(v))
    }

    /// Representative of a table curve c1..c5, s.
    pub fn curve(name: &str) -> Result<Self, CharVarError> {
        let w = match name {
            "c1" => "a",
            "c2" => "b",
            "c3" => "a c^-1",
            "c4" => "d",
            "c5" => "c",
            "s" => "a b a^-1 b^-1",
            _ => return Err(CharVarError::UnknownCurve(name.into())),
        };
        PiOneWord::parse(w)
    }

    /// Curve name or, failing that, a literal word.
    pub fn curve_or_word(s: &str) -> Result<Self, CharVarError> {
        PiOneWord::curve(s.trim()).or_else(|_| PiOneWord::parse(s))
    }

    pub fn inverse(&self) -> Self {
        PiOneWord { letters: self.letters.iter().rev().map(|&(g, i)| (g, !i)).collect() }
    }

    pub fn rotate(&self, k: usize) -> Self {
        let mut l = self.letters.clone();
        if !l.is_empty() {
            let n = l.len();
            l.rotate_left(k % n);
        }
        PiOneWord { letters: l }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for PiOneWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> =
            self.letters.iter().map(|&(g, i)| format!("{}{}", NAMES[g as usize], if i { "^-1" } else { "" })).collect();
        write!(f, "{}", toks.join(" "))
    }
}

pub const RESIDUAL_TOL: f64 = 1e-10;
const RESTARTS: usize = 10;
const MAX_ITERS: usize = 10_000;

/// Draws c, d from Haar measure and solves [a, b] = [c, d]⁻¹ for (a, b) by
/// damped Gauss–Newton on S³ × S³ from random starts.
pub fn sample_rep(seed: u64) -> Result<SU2Point, CharVarError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = Quat::random(&mut rng);
    let d = Quat::random(&mut rng);
    let target = c.commutator(&d).conj();
    for _ in 0..RESTARTS {
        let a = Quat::random(&mut rng);
        let b = Quat::random(&mut rng);
        if let Some((a, b)) = solve_commutator(a, b, target) {
            let p = SU2Point { gens: [a, b, c, d] };
            if p.residual() <= RESIDUAL_TOL {
                return Ok(p);
            }
        }
    }
    Err(CharVarError::NoConvergence(seed))
}

fn residual_vec(a: Quat<f64>, b: Quat<f64>, target: Quat<f64>) -> Vector4<f64> {
    let r = a.commutator(&b) - target;
    Vector4::new(r.w, r.x, r.y, r.z)
}

/// Left-multiplicative tangent steps a ← exp(u)·a, b ← exp(v)·b.
fn step(a: Quat<f64>, b: Quat<f64>, x: &[f64]) -> (Quat<f64>, Quat<f64>) {
    let a = (Quat::exp_pure(x[0], x[1], x[2]) * a).normalize();
    let b = (Quat::exp_pure(x[3], x[4], x[5]) * b).normalize();
    (a, b)
}

fn solve_commutator(mut a: Quat<f64>, mut b: Quat<f64>, target: Quat<f64>) -> Option<(Quat<f64>, Quat<f64>)> {
    let mut lambda = 1e-3;
    let mut r = residual_vec(a, b, target);
    for _ in 0..MAX_ITERS {
        if r.norm() < 1e-13 {
            return Some((a, b));
        }
        let h = 1e-7;
        let mut jac = Matrix4x6::zeros();
        for k in 0..6 {
            let mut e = [0.0; 6];
            e[k] = h;
            let (ap, bp) = step(a, b, &e);
            e[k] = -h;
            let (am, bm) = step(a, b, &e);
            jac.set_column(k, &((residual_vec(ap, bp, target) - residual_vec(am, bm, target)) / (2.0 * h)));
        }
        let jt = jac.transpose();
        let mut normal = jt * jac;
        for k in 0..6 {
            normal[(k, k)] += lambda * (1.0 + normal[(k, k)]);
        }
        let dx = normal.lu().solve(&(-(jt * r)))?;
        let (an, bn) = step(a, b, dx.as_slice());
        let rn = residual_vec(an, bn, target);
        if rn.norm() < r.norm() {
            a = an;
            b = bn;
            r = rn;
            lambda = (lambda * 0.3).max(1e-12);
        } else {
            lambda *= 10.0;
            if lambda > 1e8 {
                return None;
            }
        }
    }
    (r.norm() < 1e-12).then_some((a, b))
}

#[derive(Debug, Clone, Serialize)]
pub struct Separation {
    pub curve1: String,
    pub curve2: String,
    pub h1: Option<f64>,
    pub h2: Option<f64>,
    pub margin: Option<f64>,
    pub seed: Option<u64>,
    pub residual: Option<f64>,
    pub trials: usize,
    /// "separated", "identical-word" or "inconclusive".
    pub status: &'static str,
}

pub const SEPARATION_MARGIN: f64 = 0.1;

/// Looks for a sampled representation with |h_γ1 − h_γ2| ≥ 0.1, trying
/// seeds seed, seed+1, ….
pub fn separate(name1: &str, g1: &PiOneWord, name2: &str, g2: &PiOneWord, trials: usize, seed: u64) -> Separation {
    let mut out = Separation {
        curve1: name1.into(),
        curve2: name2.into(),
        h1: None,
        h2: None,
        margin: None,
        seed: None,
        residual: None,
        trials: 0,
        status: "inconclusive",
    };
    if g1 == g2 {
        out.status = "identical-word";
        return out;
    }
    for t in 0..trials {
        out.trials = t + 1;
        let s = seed.wrapping_add(t as u64);
        let Ok(p) = sample_rep(s) else { continue };
        let (h1, h2) = (p.holonomy(g1), p.holonomy(g2));
        if (h1 - h2).abs() >= SEPARATION_MARGIN {
            out.h1 = Some(h1);
            out.h2 = Some(h2);
            out.margin = Some((h1 - h2).abs());
            out.seed = Some(s);
            out.residual = Some(p.residual());
            out.status = "separated";
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternion_basics() {
        let i = Quat::new(0.0, 1.0, 0.0, 0.0);
        let j = Quat::new(0.0, 0.0, 1.0, 0.0);
        assert_eq!(i * j, Quat::new(0.0, 0.0, 0.0, 1.0));
        assert_eq!(i * i, -Quat::one());
        assert_eq!(Quat::<f64>::one().trace(), 2.0);
    }

    #[test]
    fn trivial_and_central_points() {
        let p = SU2Point::<f64>::trivial();
        assert_eq!(p.residual(), 0.0);
        for name in ["c1", "c2", "c3", "c4", "c5", "s"] {
            assert_eq!(p.holonomy(&PiOneWord::curve(name).unwrap()), 2.0);
        }
        let m = SU2Point { gens: [-Quat::<f64>::one(); 4] };
        assert_eq!(m.residual(), 0.0);
        assert_eq!(m.holonomy(&PiOneWord::curve("c1").unwrap()), -2.0);
        assert_eq!(m.holonomy(&PiOneWord::curve("c3").unwrap()), 2.0);
        assert_eq!(m.holonomy(&PiOneWord::curve("s").unwrap()), 2.0);
    }

    #[test]
    fn word_parsing() {
        assert_eq!(PiOneWord::parse("a b b^-1 c").unwrap().to_string(), "a c");
        assert!(PiOneWord::parse("e").is_err());
        assert_eq!(PiOneWord::curve_or_word("s").unwrap().len(), 4);
        assert_eq!(PiOneWord::curve_or_word("d^-1 a").unwrap().to_string(), "d^-1 a");
    }

    #[test]
    fn sampler_residuals() {
        let mut ok = 0;
        for seed in 0..100 {
            if let Ok(p) = sample_rep(seed) {
                assert!(p.residual() <= RESIDUAL_TOL);
                for q in p.gens {
                    assert!((q.norm() - 1.0).abs() < 1e-12);
                }
                ok += 1;
            }
        }
        assert!(ok >= 95, "{ok}");
    }

    #[test]
    fn separation_short_circuits() {
        let c1 = PiOneWord::curve("c1").unwrap();
        assert_eq!(separate("c1", &c1, "c1", &c1, 100, 0).status, "identical-word");
        let c2 = PiOneWord::curve("c2").unwrap();
        let s = separate("c1", &c1, "c2", &c2, 100, 0);
        assert_eq!(s.status, "separated");
        assert!(s.margin.unwrap() >= SEPARATION_MARGIN);
    }
}
