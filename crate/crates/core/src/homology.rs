//! Action on H_1(Σ; Z) and the Casson–Bleiler test.
//!
//! Basis (a1, b1, …, ag, bg) with ⟨a_i, b_i⟩ = 1. A twist along c acts by the
//! transvection x ↦ x + ⟨c, x⟩ c.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cyclo::cyclotomic_polynomial;
use crate::tqft::{Genus, MCWord};

/// Integer 2g×2g matrix preserving the symplectic form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticMatrix {
    pub genus: Genus,
    pub entries: Vec<Vec<BigInt>>,
}

fn dim(genus: Genus) -> usize {
    2 * genus.as_u32() as usize
}

/// The form J = ⊕ [[0, 1], [−1, 0]].
pub fn form(genus: Genus) -> Vec<Vec<i64>> {
    let n = dim(genus);
    let mut j = vec![vec![0; n]; n];
    for k in (0..n).step_by(2) {
        j[k][k + 1] = 1;
        j[k + 1][k] = -1;
    }
    j
}

/// Homology class of each table curve (generator curves, then separating).
pub fn curve_class(genus: Genus, index: u8) -> Vec<i64> {
    match (genus, index) {
        (Genus::One, 0) => vec![1, 0],
        (Genus::One, 1) => vec![0, 1],
        (Genus::Two, 0) => vec![1, 0, 0, 0],
        (Genus::Two, 1) => vec![0, 1, 0, 0],
        (Genus::Two, 2) => vec![1, 0, -1, 0],
        (Genus::Two, 3) => vec![0, 0, 0, 1],
        (Genus::Two, 4) => vec![0, 0, 1, 0],
        (Genus::Two, 5) => vec![0, 0, 0, 0],
        _ => panic!("no curve {index} in genus {}", genus.as_u32()),
    }
}

impl SymplecticMatrix {
    pub fn identity(genus: Genus) -> SymplecticMatrix {
        let n = dim(genus);
        let entries = (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect()).collect();
        SymplecticMatrix { genus, entries }
    }

    pub fn from_i64(genus: Genus, rows: &[Vec<i64>]) -> SymplecticMatrix {
        SymplecticMatrix { genus, entries: rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect() }
    }

    /// Transvection along class c, with power ±1.
    pub fn transvection(genus: Genus, c: &[i64], sign: i64) -> SymplecticMatrix {
        let j = form(genus);
        let n = dim(genus);
        // M = I + sign · c (cᵀ J)
        let row: Vec<i64> = (0..n).map(|k| (0..n).map(|i| c[i] * j[i][k]).sum()).collect();
        let entries = (0..n)
            .map(|i| (0..n).map(|k| BigInt::from((i == k) as i64 + sign * c[i] * row[k])).collect())
            .collect();
        SymplecticMatrix { genus, entries }
    }

    pub fn mul(&self, rhs: &SymplecticMatrix) -> SymplecticMatrix {
        let n = self.entries.len();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|k| (0..n).fold(BigInt::zero(), |acc, j| acc + &self.entries[i][j] * &rhs.entries[j][k]))
                    .collect()
            })
            .collect();
        SymplecticMatrix { genus: self.genus, entries }
    }

    pub fn neg(&self) -> SymplecticMatrix {
        SymplecticMatrix {
            genus: self.genus,
            entries: self.entries.iter().map(|r| r.iter().map(|x| -x).collect()).collect(),
        }
    }

    pub fn is_symplectic(&self) -> bool {
        let j = form(self.genus);
        let n = j.len();
        for a in 0..n {
            for b in 0..n {
                let mut s = BigInt::zero();
                for i in 0..n {
                    for k in 0..n {
                        if j[i][k] != 0 {
                            s += &self.entries[i][a] * &self.entries[k][b] * j[i][k];
                        }
                    }
                }
                if s != BigInt::from(j[a][b]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn trace(&self) -> BigInt {
        (0..self.entries.len()).map(|i| self.entries[i][i].clone()).sum()
    }

    /// Characteristic polynomial det(tI − M), constant term first.
    pub fn char_poly(&self) -> Vec<BigInt> {
        // Faddeev–LeVerrier over Q; the divisions are exact over Z.
        let n = self.entries.len();
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut m_k: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
        for k in 1..=n {
            // M_k = A·M_{k−1} + c_{n−k+1} I
            let mut next = vec![vec![BigInt::zero(); n]; n];
            for i in 0..n {
                for j in 0..n {
                    let mut s = BigInt::zero();
                    for l in 0..n {
                        s += &self.entries[i][l] * &m_k[l][j];
                    }
                    if i == j {
                        s += &coeffs[n - k + 1];
                    }
                    next[i][j] = s;
                }
            }
            m_k = next;
            let mut tr = BigInt::zero();
            for i in 0..n {
                for l in 0..n {
                    tr += &self.entries[i][l] * &m_k[l][i];
                }
            }
            coeffs[n - k] = -tr / BigInt::from(k as i64);
        }
        coeffs
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        let n = self.entries.len();
        DMatrix::from_fn(n, n, |i, j| self.entries[i][j].to_f64().unwrap_or(f64::NAN))
    }

    /// Largest |eigenvalue|; a lower bound on the stretch factor, for
    /// information only.
    pub fn spectral_radius(&self) -> f64 {
        self.to_f64().complex_eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

pub fn sympl_generator(genus: Genus, gen: u8, inverse: bool) -> SymplecticMatrix {
    SymplecticMatrix::transvection(genus, &curve_class(genus, gen), if inverse { -1 } else { 1 })
}

/// Ordered product of generator transvections.
pub fn sympl_rep(w: &MCWord) -> SymplecticMatrix {
    let mut m = SymplecticMatrix::identity(w.genus());
    for l in w.letters() {
        m = m.mul(&sympl_generator(w.genus(), l.gen, l.inv));
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CassonBleiler {
    CertifiedPa,
    Inconclusive,
}

/// Outcome with the evidence behind it.
#[derive(Debug, Clone, Serialize)]
pub struct HomologyReport {
    pub status: CassonBleiler,
    /// Characteristic polynomial, constant term first.
    pub char_poly: Vec<String>,
    pub trace: String,
    pub irreducible: bool,
    pub cyclotomic: bool,
    pub power_of_t: bool,
    /// Homological spectral radius (non-normative lower bound on the stretch factor).
    pub spectral_radius: f64,
}

/// Irreducible over Q, not cyclotomic, and not a polynomial in t^k (k ≥ 2).
pub fn casson_bleiler(m: &SymplecticMatrix) -> HomologyReport {
    let p = m.char_poly();
    let irreducible = is_irreducible(&p);
    let cyclotomic = is_cyclotomic(&p);
    let power_of_t = is_power_polynomial(&p);
    let status = if irreducible && !cyclotomic && !power_of_t {
        CassonBleiler::CertifiedPa
    } else {
        CassonBleiler::Inconclusive
    };
    HomologyReport {
        status,
        char_poly: p.iter().map(|c| c.to_string()).collect(),
        trace: m.trace().to_string(),
        irreducible,
        cyclotomic,
        power_of_t,
        spectral_radius: m.spectral_radius(),
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(-d.clone());
            let e = &n / &d;
            if e != d {
                out.push(e.clone());
                out.push(-e);
            }
        }
        d += 1;
    }
    out
}

fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Exact irreducibility over Q for monic integer polynomials of degree ≤ 4.
pub fn is_irreducible(p: &[BigInt]) -> bool {
    let deg = p.len() - 1;
    assert!(p[deg].is_one(), "monic polynomials only");
    assert!(deg <= 4, "degree ≤ 4 only");
    if deg <= 1 {
        return deg == 1;
    }
    if p[0].is_zero() {
        return false;
    }
    // monic: rational roots are integer divisors of the constant term
    if divisors(&p[0]).iter().any(|d| eval(p, d).is_zero()) {
        return false;
    }
    if deg <= 3 {
        return true;
    }
    // (t² + x t + q)(t² + y t + q') with q q' = c0, x + y = c3
    let (c0, c1, c2, c3) = (&p[0], &p[1], &p[2], &p[3]);
    for q in divisors(c0) {
        let q2 = c0 / &q;
        // x² − c3 x + (c2 − q − q2) = 0
        let disc = c3 * c3 - BigInt::from(4) * (c2 - &q - &q2);
        if disc.is_negative() {
            continue;
        }
        let s = disc.sqrt();
        if &s * &s != disc {
            continue;
        }
        for root2 in [c3 + &s, c3 - &s] {
            if root2.is_odd() {
                continue;
            }
            let x: BigInt = root2 / 2;
            let y = c3 - &x;
            if &x * &q2 + &y * &q == *c1 {
                return false;
            }
        }
    }
    true
}

/// Equal to one of the cyclotomic polynomials of the same degree.
pub fn is_cyclotomic(p: &[BigInt]) -> bool {
    let deg = p.len() - 1;
    (1..=64usize).any(|n| {
        let phi = cyclotomic_polynomial(n);
        phi.len() == deg + 1 && phi.iter().zip(p).all(|(a, b)| BigInt::from(*a) == *b)
    })
}

/// p(t) = q(t^k) for some k ≥ 2.
pub fn is_power_polynomial(p: &[BigInt]) -> bool {
    let deg = p.len() - 1;
    (2..=deg.max(1)).any(|k| deg % k == 0 && p.iter().enumerate().all(|(i, c)| i % k == 0 || c.is_zero()))
}

/// The shipped hyperelliptic involution T1 T2 T3 T4 T5 T5 T4 T3 T2 T1.
pub fn hyperelliptic_word() -> MCWord {
    MCWord::parse(Genus::Two, "T1 T2 T3 T4 T5 T5 T4 T3 T2 T1").unwrap()
}

/// Penner-type witness: positive twists on c1, c3, c5 and negative on c2, c4.
pub fn penner_word() -> MCWord {
    MCWord::parse(Genus::Two, "T1 T1 T2^-1 T3 T4^-1 T5").unwrap()
}
