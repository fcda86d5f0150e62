use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::basis::SpineBasis;
use super::words::{BaseCurve, CurveSpec, Genus, Letter, MCWord};
use crate::matrix::{spectral_norm, Matrix, SparseMatrix};
use crate::recoupling::Recoupling;
use crate::scalar::Scalar;

struct Twist<S> {
    fwd: SparseMatrix<S>,
    inv: SparseMatrix<S>,
}

/// The level-r quantum representation in the spine basis: generator twists,
/// table curve operators, and the Hermitian weights.
///
/// Matrices are built on first use.
pub struct LevelRep<S: Scalar> {
    ctx: S::Ctx,
    basis: SpineBasis,
    rc: Recoupling<S>,
    weights: Vec<S>,
    twists: Vec<OnceLock<Twist<S>>>,
    curves: Vec<OnceLock<SparseMatrix<S>>>,
    s_move: OnceLock<(Matrix<S>, S)>,
}

impl<S: Scalar> LevelRep<S> {
    pub fn new(genus: Genus, ctx: S::Ctx) -> LevelRep<S> {
        let r = S::ctx_r(ctx);
        let basis = SpineBasis::new(genus, r);
        let rc: Recoupling<S> = Recoupling::new(ctx);
        let weights = match genus {
            Genus::One => vec![S::one(ctx); basis.dim()],
            Genus::Two => basis
                .colorings
                .iter()
                .map(|col| {
                    let (a, b, c) = (col[0], col[1], col[2]);
                    let num = rc.theta(a, a, c).unwrap().mul(&rc.theta(b, b, c).unwrap());
                    let den = rc.delta_n(a).unwrap().mul(&rc.delta_n(b).unwrap()).mul(&rc.delta_n(c).unwrap());
                    num.div(&den).expect("loop values are nonzero")
                })
                .collect(),
        };
        LevelRep {
            ctx,
            twists: (0..genus.num_generators()).map(|_| OnceLock::new()).collect(),
            curves: (0..genus.curve_names().len()).map(|_| OnceLock::new()).collect(),
            s_move: OnceLock::new(),
            basis,
            rc,
            weights,
        }
    }

    pub fn ctx(&self) -> S::Ctx {
        self.ctx
    }
    pub fn r(&self) -> u32 {
        self.basis.r
    }
    pub fn genus(&self) -> Genus {
        self.basis.genus
    }
    pub fn basis(&self) -> &SpineBasis {
        &self.basis
    }
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
    pub fn recoupling(&self) -> &Recoupling<S> {
        &self.rc
    }
    /// Diagonal of the Hermitian form in the spine basis.
    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    fn diag_by(&self, f: impl Fn(&[u32]) -> S) -> SparseMatrix<S> {
        SparseMatrix::from_diagonal(self.basis.colorings.iter().map(|c| f(c)).collect())
    }

    /// Genus 1 S-move and the scalar s with S² = s·I.
    pub fn s_move(&self) -> (&Matrix<S>, &S) {
        assert_eq!(self.genus(), Genus::One, "the S-move is a genus 1 matrix");
        let (m, s) = self.s_move.get_or_init(|| {
            let n = self.dim();
            let m = Matrix::from_fn(n, n, |a, b| {
                let q = self.rc.quantum_int(((a + 1) * (b + 1)) as i64);
                if (a + b) % 2 == 1 {
                    q.neg()
                } else {
                    q
                }
            });
            let s = m.mul(&m).get(0, 0).clone();
            (m, s)
        });
        (m, s)
    }

    /// Conjugates a genus 1 diagonal by S: S·D·S⁻¹.
    fn s_conjugate(&self, d: &SparseMatrix<S>) -> SparseMatrix<S> {
        let (s, s2) = self.s_move();
        let s_inv = s.scale(&s2.try_inv().expect("S is invertible"));
        SparseMatrix::from_dense(&d.dense_mul(s).mul(&s_inv))
    }

    /// Operator of a table curve.
    pub fn base_curve_op(&self, c: BaseCurve) -> &SparseMatrix<S> {
        assert_eq!(c.genus, self.genus());
        self.curves[c.index as usize].get_or_init(|| self.build_curve(c.index))
    }

    fn lambda(&self, c: u32) -> S {
        self.rc.curve_eigenvalue(c).unwrap()
    }
    fn mu(&self, c: u32) -> S {
        self.rc.twist_coeff(c).unwrap()
    }

    fn build_curve(&self, idx: u8) -> SparseMatrix<S> {
        match (self.genus(), idx) {
            (Genus::One, 0) => self.diag_by(|c| self.lambda(c[0])),
            (Genus::One, 1) => self.s_conjugate(self.base_curve_op(BaseCurve { genus: Genus::One, index: 0 })),
            (Genus::Two, 0) => self.diag_by(|c| self.lambda(c[0])),
            (Genus::Two, 4) => self.diag_by(|c| self.lambda(c[1])),
            (Genus::Two, 5) => self.diag_by(|c| self.lambda(c[2])),
            (Genus::Two, 1) => self.fusion_op(0),
            (Genus::Two, 3) => self.fusion_op(1),
            (Genus::Two, 2) => self.f_conjugated(|e| self.lambda(e)),
            _ => unreachable!("curve index {idx}"),
        }
    }

    /// A curve meeting the loop `slot` once: shifts that loop color by ±1.
    fn fusion_op(&self, slot: usize) -> SparseMatrix<S> {
        let n = self.dim();
        let mut m = SparseMatrix::new(n, n);
        for (j, col) in self.basis.colorings.iter().enumerate() {
            let (x, c) = (col[slot], col[2]);
            for x2 in [x.wrapping_sub(1), x + 1] {
                let mut target = col.clone();
                target[slot] = x2;
                let Some(i) = self.basis.index_of(&target) else { continue };
                let rc = &self.rc;
                let v = rc
                    .delta_n(x2)
                    .unwrap()
                    .mul(&rc.tet(x, x2, c, x2, x, 1).unwrap())
                    .div(&rc.theta(x, 1, x2).unwrap().mul(&rc.theta(x2, x2, c).unwrap()))
                    .unwrap();
                m.add_entry(i, j, v);
            }
        }
        m
    }

    /// Blocks of basis indices sharing every color but `slot`.
    fn blocks(&self, slot: usize) -> Vec<Vec<usize>> {
        let mut groups: Vec<(Vec<u32>, Vec<usize>)> = Vec::new();
        for (i, col) in self.basis.colorings.iter().enumerate() {
            let mut key = col.clone();
            key.remove(slot);
            match groups.iter_mut().find(|(k, _)| *k == key) {
                Some((_, v)) => v.push(i),
                None => groups.push((key, vec![i])),
            }
        }
        groups.into_iter().map(|(_, v)| v).collect()
    }

    /// Σ_x g(x) Π_{y≠x} (V − λ_y)/(λ_x − λ_y) blockwise, for the curve
    /// operator V whose color lives in `slot`.
    fn spectral_function(&self, v: &SparseMatrix<S>, slot: usize, g: impl Fn(u32) -> S) -> SparseMatrix<S> {
        let n = self.dim();
        let mut out = SparseMatrix::new(n, n);
        for block in self.blocks(slot) {
            let colors: Vec<u32> = block.iter().map(|&i| self.basis.colorings[i][slot]).collect();
            let m = block.len();
            let vb = Matrix::from_fn(m, m, |i, j| {
                v.get(block[i], block[j]).cloned().unwrap_or_else(|| S::zero(self.ctx))
            });
            let mut acc = Matrix::zeros(self.ctx, m, m);
            for &x in &colors {
                let lx = self.lambda(x);
                let mut term = Matrix::identity(self.ctx, m).scale(&g(x));
                for &y in &colors {
                    if y == x {
                        continue;
                    }
                    let ly = self.lambda(y);
                    let shifted = vb.sub(&Matrix::identity(self.ctx, m).scale(&ly));
                    let scale = lx.sub(&ly).try_inv().expect("distinct curve eigenvalues");
                    term = term.mul(&shifted).scale(&scale);
                }
                acc = acc.add(&term);
            }
            for i in 0..m {
                for j in 0..m {
                    out.add_entry(block[i], block[j], acc.get(i, j).clone());
                }
            }
        }
        out
    }

    /// F⁻¹·diag(g(e))·F on each (a, b) block, F the move from bridge colors c
    /// to the theta-graph colors e.
    fn f_conjugated(&self, g: impl Fn(u32) -> S) -> SparseMatrix<S> {
        let n = self.dim();
        let mut out = SparseMatrix::new(n, n);
        for block in self.blocks(2) {
            let (a, b) = (self.basis.colorings[block[0]][0], self.basis.colorings[block[0]][1]);
            let cs: Vec<u32> = block.iter().map(|&i| self.basis.colorings[i][2]).collect();
            let es = self.rc.fusion_channels(a, b);
            assert_eq!(cs.len(), es.len(), "F-move block must be square");
            let m = cs.len();
            let f = Matrix::from_fn(m, m, |i, j| self.rc.f_move(a, a, b, b, cs[j], es[i]).unwrap());
            let f_inv = f.inverse().expect("F-move is invertible");
            let d = SparseMatrix::from_diagonal(es.iter().map(|&e| g(e)).collect());
            let t = f_inv.mul(&d.mul_dense(&f));
            for i in 0..m {
                for j in 0..m {
                    out.add_entry(block[i], block[j], t.get(i, j).clone());
                }
            }
        }
        out
    }

    fn twist(&self, gen: u8) -> &Twist<S> {
        self.twists[gen as usize].get_or_init(|| self.build_twist(gen))
    }

    fn build_twist(&self, gen: u8) -> Twist<S> {
        let mu = |c: u32| self.mu(c);
        let mu_inv = |c: u32| self.mu(c).conj();
        match (self.genus(), gen) {
            (Genus::One, 0) => Twist { fwd: self.diag_by(|c| mu(c[0])), inv: self.diag_by(|c| mu_inv(c[0])) },
            (Genus::One, 1) => {
                let ta = self.twist(0);
                Twist { fwd: self.s_conjugate(&ta.fwd), inv: self.s_conjugate(&ta.inv) }
            }
            (Genus::Two, 0) => Twist { fwd: self.diag_by(|c| mu(c[0])), inv: self.diag_by(|c| mu_inv(c[0])) },
            (Genus::Two, 4) => Twist { fwd: self.diag_by(|c| mu(c[1])), inv: self.diag_by(|c| mu_inv(c[1])) },
            (Genus::Two, 1) | (Genus::Two, 3) => {
                let slot = if gen == 1 { 0 } else { 1 };
                let v = self.base_curve_op(BaseCurve { genus: Genus::Two, index: gen });
                Twist { fwd: self.spectral_function(v, slot, mu), inv: self.spectral_function(v, slot, mu_inv) }
            }
            (Genus::Two, 2) => Twist { fwd: self.f_conjugated(mu), inv: self.f_conjugated(mu_inv) },
            _ => unreachable!("generator {gen}"),
        }
    }

    /// Matrix of a generator (or its inverse).
    pub fn letter(&self, l: Letter) -> &SparseMatrix<S> {
        let t = self.twist(l.gen);
        if l.inv {
            &t.inv
        } else {
            &t.fwd
        }
    }

    pub fn generator(&self, gen: u8) -> &SparseMatrix<S> {
        &self.twist(gen).fwd
    }

    /// Twist about a table curve; the separating curve acts by μ on the bridge.
    pub fn curve_twist(&self, c: BaseCurve) -> SparseMatrix<S> {
        match c.generator() {
            Some(g) => self.generator(g).clone(),
            None => self.diag_by(|col| self.mu(col[2])),
        }
    }

    /// `m · ρ(w)`
    pub fn apply_right(&self, m: &Matrix<S>, w: &MCWord) -> Matrix<S> {
        let mut acc = m.clone();
        for &l in w.letters() {
            acc = self.letter(l).dense_mul(&acc);
        }
        acc
    }

    /// ρ(w) as an ordered product of generator matrices.
    pub fn rep(&self, w: &MCWord) -> Matrix<S> {
        assert_eq!(w.genus(), self.genus());
        let w = w.free_reduce();
        match w.letters().split_first() {
            None => Matrix::identity(self.ctx, self.dim()),
            Some((first, rest)) => {
                let start = self.letter(*first).to_dense(self.ctx);
                self.apply_right(&start, &MCWord::from_letters(w.genus(), rest.to_vec()))
            }
        }
    }

    /// ρ(w)·V(base)·ρ(w)⁻¹.
    pub fn curve_op(&self, c: &CurveSpec) -> Matrix<S> {
        let base = self.base_curve_op(c.base);
        let w = c.conjugator.free_reduce();
        if w.is_empty() {
            return base.to_dense(self.ctx);
        }
        let left = base.dense_mul(&self.rep(&w));
        self.apply_right(&left, &w.inverse())
    }

    /// Whether ρ(w) commutes with V(γ), checked as ρ(u⁻¹wu) against the
    /// sparse table operator (γ = u(base)). Exact for exact scalars.
    pub fn commutes_exactly(&self, w: &MCWord, c: &CurveSpec) -> bool {
        let pulled = w.conjugate_by(&c.conjugator.inverse());
        let x = self.rep(&pulled);
        self.base_curve_op(c.base).commutes_with(&x)
    }

    /// ρ(w)·V(γ)·ρ(w)⁻¹ − V(γ) in the spine basis.
    pub fn commutator(&self, w: &MCWord, c: &CurveSpec) -> Matrix<S> {
        let v = self.curve_op(c);
        let conj = self.apply_right(&self.rep(w).mul(&v), &w.inverse());
        conj.sub(&v)
    }

    /// Float embedding conjugated by diag(√weight): the form becomes standard.
    pub fn orthonormalize(&self, m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        let sq: Vec<f64> = self.weights.iter().map(|w| w.to_c64().re.sqrt()).collect();
        DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)] * (sq[i] / sq[j]))
    }

    /// Spectral norm of the commutator in the orthonormalized basis.
    pub fn comm_norm(&self, w: &MCWord, c: &CurveSpec) -> f64 {
        spectral_norm(&self.orthonormalize(&self.commutator(w, c).to_c64()))
    }

    /// Spectral norm of V(γ) in the orthonormalized basis.
    pub fn curve_norm(&self, c: &CurveSpec) -> f64 {
        spectral_norm(&self.orthonormalize(&self.curve_op(c).to_c64()))
    }

    /// ‖U*U − I‖ for the orthonormalized embedding of `m`.
    pub fn unitarity_defect(&self, m: &Matrix<S>) -> f64 {
        let u = self.orthonormalize(&m.to_c64());
        let id = DMatrix::<Complex64>::identity(u.nrows(), u.ncols());
        spectral_norm(&(u.adjoint() * &u - id))
    }

    /// ‖U* − U‖ for the orthonormalized embedding of `m`.
    pub fn self_adjoint_defect(&self, m: &Matrix<S>) -> f64 {
        let u = self.orthonormalize(&m.to_c64());
        spectral_norm(&(u.adjoint() - &u))
    }
}
