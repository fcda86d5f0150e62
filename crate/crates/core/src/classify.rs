//! Nielsen–Thurston type of a mapping class from its quantum representations:
//! finite order, then reducibility along a curve, otherwise a pseudo-Anosov
//! candidate backed by the homology check.

use std::collections::HashSet;
use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::cyclo::{CycloNum, Level};
use crate::homology::{casson_bleiler, sympl_rep, HomologyReport, SymplecticMatrix};
use crate::matrix::{scalar_defect, spectral_norm};
use crate::scalar::RootCtx;
use crate::tqft::{BaseCurve, CurveSpec, Genus, Letter, LevelRep, MCWord};

/// Float screening threshold; every positive answer is re-proved exactly.
const FLOAT_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("empty level set")]
    NoLevels,
    #[error("level r = {0} is below 3")]
    LevelTooSmall(u32),
    #[error("power bound must be at least 1")]
    ZeroPowerBound,
    #[error("empty curve set")]
    NoCurves,
    #[error("curve {0} belongs to another genus")]
    CurveGenus(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchConfig {
    pub genus: Genus,
    pub levels: Vec<u32>,
    pub power_bound: u32,
    pub depth: usize,
    #[serde(skip)]
    pub curves: Vec<BaseCurve>,
    #[serde(skip)]
    pub threads: usize,
}

impl SearchConfig {
    pub fn new(genus: Genus) -> SearchConfig {
        SearchConfig {
            genus,
            levels: genus.default_levels(),
            power_bound: 2 * (4 * genus.as_u32() + 2),
            depth: 3,
            curves: BaseCurve::all(genus),
            threads: 1,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.levels.is_empty() {
            return Err(ConfigError::NoLevels);
        }
        if let Some(&r) = self.levels.iter().find(|&&r| r < 3) {
            return Err(ConfigError::LevelTooSmall(r));
        }
        if self.power_bound == 0 {
            return Err(ConfigError::ZeroPowerBound);
        }
        if self.curves.is_empty() {
            return Err(ConfigError::NoCurves);
        }
        if let Some(c) = self.curves.iter().find(|c| c.genus != self.genus) {
            return Err(ConfigError::CurveGenus(c.to_string()));
        }
        Ok(())
    }

    /// Sorted, deduplicated levels.
    fn sorted_levels(&self) -> Vec<u32> {
        let mut l = self.levels.clone();
        l.sort_unstable();
        l.dedup();
        l
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum VerdictKind {
    FiniteOrder,
    Reducible,
    PseudoAnosovCandidate,
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelScalar {
    pub r: u32,
    pub scalar: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderCertificate {
    /// Smallest M with ρ(φ)^M scalar at every level.
    #[serde(rename = "M")]
    pub power: u32,
    /// The mapping class order divides this (the representations can't tell
    /// φ^M = 1 from φ^M = hyperelliptic involution).
    pub order_divides: u32,
    /// Order pinned down by the homology action of φ^M (I or −I).
    pub homology_order: Option<u32>,
    pub scalars: Vec<LevelScalar>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveCertificate {
    pub spec: String,
    pub base: String,
    pub conjugator: String,
    #[serde(rename = "M")]
    pub power: u32,
    /// Levels at which [ρ(φ^M), V(γ)] = 0 was checked exactly.
    pub levels: Vec<u32>,
    #[serde(skip)]
    pub curve: CurveSpec,
}

#[derive(Debug, Clone, Serialize)]
pub struct Bounds {
    pub levels: Vec<u32>,
    pub power_bound: u32,
    pub depth: usize,
    pub curves_enumerated: usize,
    pub curves_distinct: usize,
    pub fingerprint_level: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub word: String,
    pub genus: u32,
    pub levels: Vec<u32>,
    #[serde(rename = "M")]
    pub power: Option<u32>,
    pub order: Option<OrderCertificate>,
    pub curve: Option<CurveCertificate>,
    pub homology: HomologyReport,
    pub bounds: Option<Bounds>,
}

struct Candidate {
    spec: CurveSpec,
    /// Float V(γ) per sorted level index, filled on demand.
    ops: Vec<OnceLock<DMatrix<Complex64>>>,
}

/// Cached exact and float representations for a fixed configuration.
pub struct Classifier {
    config: SearchConfig,
    levels: Vec<u32>,
    exact: Vec<LevelRep<CycloNum>>,
    float: Vec<LevelRep<Complex64>>,
    /// Index into `levels` used for fingerprints and screened first.
    fp: usize,
    candidates: OnceLock<(Vec<Candidate>, usize)>,
}

impl Classifier {
    pub fn new(config: SearchConfig) -> Result<Classifier, ConfigError> {
        config.validate()?;
        let levels = config.sorted_levels();
        let g = config.genus;
        let exact = levels.iter().map(|&r| LevelRep::new(g, Level::new(r).expect("validated level"))).collect();
        let float = levels.iter().map(|&r| LevelRep::new(g, RootCtx::new(r))).collect();
        let fp = levels
            .iter()
            .position(|&r| r >= 5 && r != 6)
            .unwrap_or(levels.len() - 1);
        Ok(Classifier { config, levels, exact, float, fp, candidates: OnceLock::new() })
    }

    pub fn config(&self) -> &SearchConfig {
        &self.config
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn exact_rep(&self, r: u32) -> Option<&LevelRep<CycloNum>> {
        self.levels.iter().position(|&x| x == r).map(|i| &self.exact[i])
    }

    /// Screening order: the fingerprint level, then the rest ascending.
    fn screen_order(&self) -> Vec<usize> {
        std::iter::once(self.fp).chain((0..self.levels.len()).filter(|&i| i != self.fp)).collect()
    }

    fn float_unitary(&self, i: usize, w: &MCWord) -> DMatrix<Complex64> {
        let rep = &self.float[i];
        rep.orthonormalize(&rep.rep(w).to_c64())
    }

    /// Exact per-level jobs, run on up to `threads` scoped threads.
    fn per_level<T: Send>(&self, f: impl Fn(usize) -> T + Sync) -> Vec<T> {
        let n = self.levels.len();
        let threads = self.config.threads.clamp(1, n);
        if threads == 1 {
            return (0..n).map(f).collect();
        }
        let mut out: Vec<Option<T>> = (0..n).map(|_| None).collect();
        std::thread::scope(|s| {
            let f = &f;
            let handles: Vec<_> = (0..threads)
                .map(|t| s.spawn(move || (t..n).step_by(threads).map(|i| (i, f(i))).collect::<Vec<_>>()))
                .collect();
            for h in handles {
                for (i, v) in h.join().expect("worker panicked") {
                    out[i] = Some(v);
                }
            }
        });
        out.into_iter().map(|v| v.expect("every level computed")).collect()
    }

    /// Smallest M ≤ M_max with ρ(w)^M exactly scalar at every level.
    pub fn finite_order_test(&self, word: &MCWord) -> Option<OrderCertificate> {
        let word = word.free_reduce();
        let mut powers = Powers::new(self.levels.len());
        let order = self.screen_order();
        for m in 1..=self.config.power_bound {
            let alive = order
                .iter()
                .all(|&i| scalar_defect(powers.get(i, m, || self.float_unitary(i, &word))) < FLOAT_TOL);
            if alive {
                if let Some(cert) = self.certify_order(&word, m) {
                    return Some(cert);
                }
            }
        }
        None
    }

    fn certify_order(&self, word: &MCWord, m: u32) -> Option<OrderCertificate> {
        let wm = word.pow(m);
        let scalars = self.per_level(|i| self.exact[i].rep(&wm).as_scalar());
        let scalars: Option<Vec<CycloNum>> = scalars.into_iter().collect();
        let scalars = scalars?;
        let h = sympl_rep(&wm);
        let homology_order = if h == SymplecticMatrix::identity(word.genus()) {
            Some(m)
        } else if h == SymplecticMatrix::identity(word.genus()).neg() {
            Some(2 * m)
        } else {
            None
        };
        Some(OrderCertificate {
            power: m,
            order_divides: 2 * m,
            homology_order,
            scalars: self
                .levels
                .iter()
                .zip(scalars)
                .map(|(&r, s)| LevelScalar { r, scalar: s.to_string() })
                .collect(),
        })
    }

    /// Conjugator words of reduced length ≤ depth applied to the base curves,
    /// deduplicated by the rounded curve operator at the fingerprint level.
    fn candidates(&self) -> &(Vec<Candidate>, usize) {
        self.candidates.get_or_init(|| {
            let g = self.config.genus;
            let rep = &self.float[self.fp];
            let letters: Vec<Letter> = (0..g.num_generators() as u8)
                .flat_map(|gen| [Letter { gen, inv: false }, Letter { gen, inv: true }])
                .collect();
            let gens: Vec<(DMatrix<Complex64>, DMatrix<Complex64>)> = letters
                .iter()
                .map(|&l| {
                    let m = rep.letter(l).to_c64();
                    let inv = rep.letter(l.inverse()).to_c64();
                    (m, inv)
                })
                .collect();
            let mut seen = HashSet::new();
            let mut out = Vec::new();
            let mut enumerated = 0;
            let mut frontier: Vec<(BaseCurve, MCWord, DMatrix<Complex64>)> = self
                .config
                .curves
                .iter()
                .map(|&b| (b, MCWord::empty(g), rep.base_curve_op(b).to_c64()))
                .collect();
            for len in 0..=self.config.depth {
                let mut next = Vec::new();
                for (base, u, v) in frontier {
                    enumerated += 1;
                    if seen.insert(fingerprint(&rep.orthonormalize(&v))) {
                        let ops = (0..self.levels.len()).map(|_| OnceLock::new()).collect::<Vec<_>>();
                        let _ = ops[self.fp].set(rep.orthonormalize(&v));
                        out.push(Candidate { spec: CurveSpec { base, conjugator: u.clone() }, ops });
                    }
                    if len == self.config.depth {
                        continue;
                    }
                    for (k, &l) in letters.iter().enumerate() {
                        if u.letters().first() == Some(&l.inverse()) {
                            continue;
                        }
                        let (m, inv) = &gens[k];
                        next.push((base, u.prepend(l), m * &v * inv));
                    }
                }
                frontier = next;
            }
            (out, enumerated)
        })
    }

    fn candidate_op<'a>(&self, c: &'a Candidate, i: usize) -> &'a DMatrix<Complex64> {
        c.ops[i].get_or_init(|| {
            let rep = &self.float[i];
            rep.orthonormalize(&rep.curve_op(&c.spec).to_c64())
        })
    }

    /// First (γ, M) in enumeration order with ρ(w^M) commuting exactly with
    /// V(γ) at every level.
    pub fn reducibility_search(&self, word: &MCWord) -> Option<CurveCertificate> {
        let word = word.free_reduce();
        let (cands, _) = self.candidates();
        let order = self.screen_order();
        let mut powers = Powers::new(self.levels.len());
        let mut excluded: HashSet<(usize, u32)> = HashSet::new();
        for m in 1..=self.config.power_bound {
            for (ci, c) in cands.iter().enumerate() {
                if excluded.contains(&(ci, m)) {
                    continue;
                }
                let passes = order.iter().all(|&i| {
                    let v = self.candidate_op(c, i);
                    let p = powers.get(i, m, || self.float_unitary(i, &word));
                    spectral_norm(&(p * v - v * p)) < FLOAT_TOL
                });
                if !passes {
                    continue;
                }
                let wm = word.pow(m);
                if self.per_level(|i| self.exact[i].commutes_exactly(&wm, &c.spec)).into_iter().all(|b| b) {
                    return Some(CurveCertificate {
                        spec: c.spec.to_string(),
                        base: c.spec.base.to_string(),
                        conjugator: c.spec.conjugator.to_string(),
                        power: m,
                        levels: self.levels.clone(),
                        curve: c.spec.clone(),
                    });
                }
                excluded.insert((ci, m));
            }
        }
        None
    }

    /// Runs the three steps on the cyclically reduced conjugacy
    /// representative and transports the curve back.
    pub fn classify(&self, word: &MCWord) -> Verdict {
        assert_eq!(word.genus(), self.config.genus);
        let reduced = word.free_reduce();
        let (v, canon) = reduced.conjugacy_normal_form();
        let homology = casson_bleiler(&sympl_rep(&reduced));
        let mut verdict = Verdict {
            kind: VerdictKind::PseudoAnosovCandidate,
            word: reduced.to_string(),
            genus: word.genus().as_u32(),
            levels: self.levels.clone(),
            power: None,
            order: None,
            curve: None,
            homology,
            bounds: None,
        };
        if let Some(cert) = self.finite_order_test(&canon) {
            verdict.kind = VerdictKind::FiniteOrder;
            verdict.power = Some(cert.power);
            verdict.order = Some(cert);
            return verdict;
        }
        if let Some(cert) = self.reducibility_search(&canon) {
            let spec = cert.curve.transform(&v);
            verdict.kind = VerdictKind::Reducible;
            verdict.power = Some(cert.power);
            verdict.curve = Some(CurveCertificate {
                spec: spec.to_string(),
                base: spec.base.to_string(),
                conjugator: spec.conjugator.to_string(),
                curve: spec,
                ..cert
            });
            return verdict;
        }
        let (cands, enumerated) = self.candidates();
        verdict.bounds = Some(Bounds {
            levels: self.levels.clone(),
            power_bound: self.config.power_bound,
            depth: self.config.depth,
            curves_enumerated: *enumerated,
            curves_distinct: cands.len(),
            fingerprint_level: self.levels[self.fp],
        });
        verdict
    }
}

/// Float powers of ρ(w) per level, advanced lazily.
struct Powers {
    base: Vec<Option<DMatrix<Complex64>>>,
    cur: Vec<(u32, Option<DMatrix<Complex64>>)>,
}

impl Powers {
    fn new(n: usize) -> Powers {
        Powers { base: vec![None; n], cur: vec![(0, None); n] }
    }

    fn get(&mut self, i: usize, m: u32, make: impl FnOnce() -> DMatrix<Complex64>) -> &DMatrix<Complex64> {
        let b = self.base[i].get_or_insert_with(make);
        let (k, p) = &mut self.cur[i];
        let p = p.get_or_insert_with(|| DMatrix::identity(b.nrows(), b.ncols()));
        while *k < m {
            *p = &*p * &*b;
            *k += 1;
        }
        p
    }
}

/// Entries rounded to 1e-6.
fn fingerprint(m: &DMatrix<Complex64>) -> Vec<(i64, i64)> {
    m.iter().map(|z| ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64)).collect()
}

pub fn classify(word: &MCWord, config: SearchConfig) -> Result<Verdict, ConfigError> {
    Ok(Classifier::new(config)?.classify(word))
}
