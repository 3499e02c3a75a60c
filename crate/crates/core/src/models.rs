//! Explicit unitary models of the irreps of `CL(n)`, the permutation
//! representation `η` of `G×G×H` on `L(G×G)`, exact intertwiner spaces and
//! the maps between `Hom(ρ₁⊠ρ₂⊠θ, η)` and `Hom(Res(ρ₁⊗ρ₂), θ′)`.
//!
//! The non-linear irreps are built from anticommuting Pauli strings
//! (Jordan–Wigner). Every image is a monomial matrix with entries in
//! `{0, ±1, ±i}`, so products stay exact and cheap.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::characters::{irreps, IrrepKind, IrrepLabel};
use crate::clifford::{act_unchecked, CliffordElement, Sign, Subset, TripleElement, TripleGroup};
use crate::error::{Error, Result};
use crate::gelfand::{diagonal_invariant_dim, TripleIrrepLabel};
use crate::group::CliffordGroup;
use crate::linalg::{Echelon, Matrix};
use crate::scalar::{Field, GaussianRational, GaussianSurd, Rational};

/// Largest `n` for matrix models of `ρ_n`, `ρ_n^±`.
pub const RHO_MODEL_MAX_DEGREE: u32 = 6;
/// Largest `n` for which `η` is realized (dimension `2^{2n+2}`).
pub const ETA_MAX_DEGREE: u32 = 2;
/// Largest number of unknowns `dim(src)·dim(dst)` in an intertwiner system.
pub const INTERTWINER_MAX_UNKNOWNS: usize = 1 << 14;

type Q = GaussianRational;

/// A representation given by exact matrices.
pub trait Representation {
    type Element: Copy;

    fn dim(&self) -> usize;

    /// A generating set of the group.
    fn generators(&self) -> Vec<Self::Element>;

    /// Every group element, for post-verification.
    fn elements(&self) -> Result<Vec<Self::Element>>;

    fn image(&self, g: &Self::Element) -> Result<Matrix<Q>>;

    /// `image(g)·m`.
    fn left_mul<F: Field>(&self, g: &Self::Element, m: &Matrix<F>) -> Result<Matrix<F>> {
        self.image(g)?.map(F::from_gaussian).mul(m)
    }

    /// `m·image(g)`.
    fn right_mul<F: Field>(&self, m: &Matrix<F>, g: &Self::Element) -> Result<Matrix<F>> {
        m.mul(&self.image(g)?.map(F::from_gaussian))
    }
}

fn pauli(which: char) -> Matrix<Q> {
    let (z, o, i) = (Q::ZERO, Q::ONE, Q::I);
    let rows = match which {
        'x' => vec![vec![z, o], vec![o, z]],
        'y' => vec![vec![z, -i], vec![i, z]],
        'z' => vec![vec![o, z], vec![z, -o]],
        _ => vec![vec![o, z], vec![z, o]],
    };
    Matrix::from_rows(rows).expect("square")
}

/// `k` anticommuting Hermitian involutions pairs: `2k` matrices of size `2^k`.
fn jordan_wigner(k: u32) -> Vec<Matrix<Q>> {
    let mut out = Vec::with_capacity(2 * k as usize);
    for j in 0..k {
        for which in ['x', 'y'] {
            let mut m = Matrix::identity(1);
            for pos in 0..k {
                let factor = if pos < j {
                    pauli('z')
                } else if pos == j {
                    pauli(which)
                } else {
                    pauli('i')
                };
                m = m.kron(&factor);
            }
            out.push(m);
        }
    }
    out
}

/// Matrix model of an irrep of `CL(n)` (or of its conjugate).
#[derive(Clone, Debug)]
pub struct MatrixRep {
    label: IrrepLabel,
    generators: Vec<Matrix<Q>>,
    minus_one: Matrix<Q>,
}

/// Builds the model of `label`; for `n` odd the phase of `γ_n` is solved for
/// so that the trace at `γ_{X_n}` matches the character.
pub fn build_matrix_rep(label: &IrrepLabel) -> Result<MatrixRep> {
    let n = label.degree();
    match label.kind() {
        IrrepKind::OneDim(a) => {
            let one = |v: i64| Matrix::from_vec(1, 1, vec![Q::from_int(v)]).expect("1x1");
            Ok(MatrixRep {
                label: *label,
                generators: (1..=n)
                    .map(|j| one(if a.contains(j) { -1 } else { 1 }))
                    .collect(),
                minus_one: one(1),
            })
        }
        _ if n > RHO_MODEL_MAX_DEGREE => Err(Error::DegreeTooLarge {
            degree: n,
            max: RHO_MODEL_MAX_DEGREE,
            operation: "matrix models of rho",
        }),
        IrrepKind::Rho => {
            let gens = jordan_wigner(n / 2);
            let d = 1 << (n / 2);
            Ok(MatrixRep {
                label: *label,
                generators: gens,
                minus_one: Matrix::identity(d).scale(-Q::ONE),
            })
        }
        IrrepKind::RhoPlus | IrrepKind::RhoMinus => {
            let k = (n - 1) / 2;
            let d = 1usize << k;
            let mut gens = jordan_wigner(k);
            let mut p = Matrix::identity(d);
            for g in &gens {
                p = p.mul(g)?;
            }
            let i_pow_k = [Q::ONE, Q::I, -Q::ONE, -Q::I][(k % 4) as usize];
            let target: Q = label.value_int(Sign::Plus, Subset::full(n)).into();
            for lambda in [i_pow_k, -i_pow_k] {
                let top = p.scale(lambda);
                // γ_{X_n} = γ_1⋯γ_{2k}·γ_n = λ·P².
                if p.mul(&top)?.trace() == target {
                    gens.push(top);
                    return Ok(MatrixRep {
                        label: *label,
                        generators: gens,
                        minus_one: Matrix::identity(d).scale(-Q::ONE),
                    });
                }
            }
            Err(Error::PhaseUnresolved {
                label: format!("{label}"),
            })
        }
    }
}

impl MatrixRep {
    /// The irrep this model realizes (the dual label after [`Self::conjugate`]).
    pub fn label(&self) -> IrrepLabel {
        self.label
    }

    pub fn degree(&self) -> u32 {
        self.label.degree()
    }

    /// Images of `γ_{1}, …, γ_{n}`.
    pub fn generator_images(&self) -> &[Matrix<Q>] {
        &self.generators
    }

    pub fn minus_one_image(&self) -> &Matrix<Q> {
        &self.minus_one
    }

    /// Entrywise conjugate model, realizing the conjugate representation.
    pub fn conjugate(&self) -> Self {
        Self {
            label: self.label.dual(),
            generators: self.generators.iter().map(Matrix::conj).collect(),
            minus_one: self.minus_one.conj(),
        }
    }

    /// `σ(εγ_A) = σ(ε)·σ(γ_{a₁})⋯σ(γ_{a_k})`, `a₁ < … < a_k`.
    pub fn image_of(&self, g: &CliffordElement) -> Result<Matrix<Q>> {
        if g.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                left: g.degree(),
                right: self.degree(),
            });
        }
        let mut m = if g.sign() == Sign::Minus {
            self.minus_one.clone()
        } else {
            Matrix::identity(self.minus_one.rows())
        };
        for j in g.subset().indices() {
            m = m.mul(&self.generators[j as usize - 1])?;
        }
        Ok(m)
    }

    /// Checks homomorphism, unitarity and trace = character on all of `CL(n)`.
    pub fn verify(&self) -> Result<()> {
        let n = self.degree();
        let group = CliffordGroup::new(n)?;
        let images: Vec<Matrix<Q>> = group
            .elements()
            .iter()
            .map(|g| self.image_of(g))
            .collect::<Result<_>>()?;
        for (x, mx) in group.elements().iter().zip(&images) {
            if !mx.is_unitary() {
                return Err(Error::Check(format!("{} not unitary at {x}", self.label)));
            }
            if mx.trace() != self.label.value(x)? {
                return Err(Error::Check(format!(
                    "trace of {} at {x} is {:#}, character is {:#}",
                    self.label,
                    mx.trace(),
                    self.label.value(x)?
                )));
            }
            for (y, my) in group.elements().iter().zip(&images) {
                let xy = x.multiply(y)?;
                if mx.mul(my)? != images[xy.index()] {
                    return Err(Error::Check(format!(
                        "{} is not multiplicative at ({x}, {y})",
                        self.label
                    )));
                }
            }
        }
        Ok(())
    }
}

fn clifford_generators(n: u32) -> Vec<CliffordElement> {
    let mut v: Vec<CliffordElement> = (1..=n)
        .map(|j| CliffordElement::gamma(n, Subset::from_indices([j])).expect("j ≤ n"))
        .collect();
    v.push(CliffordElement::minus_one(n).expect("valid degree"));
    v
}

impl Representation for MatrixRep {
    type Element = CliffordElement;

    fn dim(&self) -> usize {
        self.minus_one.rows()
    }

    fn generators(&self) -> Vec<CliffordElement> {
        clifford_generators(self.degree())
    }

    fn elements(&self) -> Result<Vec<CliffordElement>> {
        crate::group::enumerate_group(self.degree())
    }

    fn image(&self, g: &CliffordElement) -> Result<Matrix<Q>> {
        self.image_of(g)
    }
}

/// The left regular representation of `CL(n)` on `L(CL(n))`.
#[derive(Clone, Debug)]
pub struct RegularRep {
    degree: u32,
}

impl RegularRep {
    pub fn new(n: u32) -> Result<Self> {
        if n > ETA_MAX_DEGREE + 2 {
            return Err(Error::DegreeTooLarge {
                degree: n,
                max: ETA_MAX_DEGREE + 2,
                operation: "the regular representation",
            });
        }
        Ok(Self { degree: n })
    }
}

impl Representation for RegularRep {
    type Element = CliffordElement;

    fn dim(&self) -> usize {
        2 << self.degree
    }

    fn generators(&self) -> Vec<CliffordElement> {
        clifford_generators(self.degree)
    }

    fn elements(&self) -> Result<Vec<CliffordElement>> {
        crate::group::enumerate_group(self.degree)
    }

    fn image(&self, g: &CliffordElement) -> Result<Matrix<Q>> {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for x in 0..d {
            let y = g.multiply(&CliffordElement::from_index(self.degree, x)?)?;
            m.set(y.index(), x, Q::ONE);
        }
        Ok(m)
    }
}

/// `ρ₁ ⊠ ρ₂ ⊠ θ` on `V₁⊗V₂⊗W`, basis index `(a·d₂ + b)·d_θ + c`.
#[derive(Clone, Debug)]
pub struct TripleRep {
    group: TripleGroup,
    rho1: MatrixRep,
    rho2: MatrixRep,
    theta: MatrixRep,
}

impl TripleRep {
    pub fn new(sigma: &TripleIrrepLabel) -> Result<Self> {
        Ok(Self {
            group: TripleGroup::new(sigma.degree(), sigma.subgroup_degree())?,
            rho1: build_matrix_rep(&sigma.rho1)?,
            rho2: build_matrix_rep(&sigma.rho2)?,
            theta: build_matrix_rep(&sigma.theta)?,
        })
    }
}

impl Representation for TripleRep {
    type Element = TripleElement;

    fn dim(&self) -> usize {
        self.rho1.dim() * self.rho2.dim() * self.theta.dim()
    }

    fn generators(&self) -> Vec<TripleElement> {
        self.group.generators()
    }

    fn elements(&self) -> Result<Vec<TripleElement>> {
        self.group.elements()
    }

    fn image(&self, t: &TripleElement) -> Result<Matrix<Q>> {
        self.group.check(t)?;
        let h = t.h.restrict_to(self.group.subgroup_degree())?;
        Ok(self
            .rho1
            .image_of(&t.g1)?
            .kron(&self.rho2.image_of(&t.g2)?)
            .kron(&self.theta.image_of(&h)?))
    }
}

/// `Res^G_H(ρ₁ ⊗ ρ₂)` as a representation of `H = CL(m)`.
#[derive(Clone, Debug)]
pub struct RestrictedTensorRep {
    m: u32,
    rho1: MatrixRep,
    rho2: MatrixRep,
}

impl RestrictedTensorRep {
    pub fn new(rho1: &IrrepLabel, rho2: &IrrepLabel, m: u32) -> Result<Self> {
        let n = rho1.degree();
        if rho2.degree() != n {
            return Err(Error::DegreeMismatch {
                left: n,
                right: rho2.degree(),
            });
        }
        if m > n || m + 1 < n {
            return Err(Error::InvalidSubgroup { n, m });
        }
        Ok(Self {
            m,
            rho1: build_matrix_rep(rho1)?,
            rho2: build_matrix_rep(rho2)?,
        })
    }
}

impl Representation for RestrictedTensorRep {
    type Element = CliffordElement;

    fn dim(&self) -> usize {
        self.rho1.dim() * self.rho2.dim()
    }

    fn generators(&self) -> Vec<CliffordElement> {
        clifford_generators(self.m)
    }

    fn elements(&self) -> Result<Vec<CliffordElement>> {
        crate::group::enumerate_group(self.m)
    }

    fn image(&self, h: &CliffordElement) -> Result<Matrix<Q>> {
        let g = h.embed(self.rho1.degree())?;
        Ok(self.rho1.image_of(&g)?.kron(&self.rho2.image_of(&g)?))
    }
}

/// `H` acting diagonally on `V₁⊗V₂⊗W`; its invariants are `(V₁⊗V₂⊗W)^{H̃}`.
#[derive(Clone, Debug)]
pub struct DiagonalRep {
    tensor: RestrictedTensorRep,
    theta: MatrixRep,
}

impl DiagonalRep {
    pub fn new(sigma: &TripleIrrepLabel) -> Result<Self> {
        Ok(Self {
            tensor: RestrictedTensorRep::new(&sigma.rho1, &sigma.rho2, sigma.subgroup_degree())?,
            theta: build_matrix_rep(&sigma.theta)?,
        })
    }
}

impl Representation for DiagonalRep {
    type Element = CliffordElement;

    fn dim(&self) -> usize {
        self.tensor.dim() * self.theta.dim()
    }

    fn generators(&self) -> Vec<CliffordElement> {
        self.tensor.generators()
    }

    fn elements(&self) -> Result<Vec<CliffordElement>> {
        self.tensor.elements()
    }

    fn image(&self, h: &CliffordElement) -> Result<Matrix<Q>> {
        Ok(self.tensor.image(h)?.kron(&self.theta.image_of(h)?))
    }
}

/// `η(t)δ_x = δ_{t·x}` on `L(G×G)`; the point `(g₃, g₄)` has index
/// `idx(g₃)·|G| + idx(g₄)`.
#[derive(Clone, Debug)]
pub struct EtaRep {
    group: TripleGroup,
    points: Vec<CliffordElement>,
}

/// The permutation representation `η` of `G×G×H` on `L(G×G)`.
pub fn permutation_rep_eta(n: u32, m: u32) -> Result<EtaRep> {
    if n > ETA_MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: n,
            max: ETA_MAX_DEGREE,
            operation: "the permutation representation η",
        });
    }
    Ok(EtaRep {
        group: TripleGroup::new(n, m)?,
        points: crate::group::enumerate_group(n)?,
    })
}

impl EtaRep {
    pub fn point_index(&self, x: &CliffordElement, y: &CliffordElement) -> usize {
        x.index() * self.points.len() + y.index()
    }

    fn permutation(&self, t: &TripleElement) -> Result<Vec<usize>> {
        self.group.check(t)?;
        let mut perm = Vec::with_capacity(self.dim());
        for x in &self.points {
            for y in &self.points {
                let (a, b) = act_unchecked(t, *x, *y);
                perm.push(self.point_index(&a, &b));
            }
        }
        Ok(perm)
    }

    pub fn group(&self) -> &TripleGroup {
        &self.group
    }

    /// Group order `|G|`.
    pub fn base_order(&self) -> usize {
        self.points.len()
    }
}

impl Representation for EtaRep {
    type Element = TripleElement;

    fn dim(&self) -> usize {
        self.points.len() * self.points.len()
    }

    fn generators(&self) -> Vec<TripleElement> {
        self.group.generators()
    }

    fn elements(&self) -> Result<Vec<TripleElement>> {
        self.group.elements()
    }

    fn image(&self, t: &TripleElement) -> Result<Matrix<Q>> {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for (p, q) in self.permutation(t)?.into_iter().enumerate() {
            m.set(q, p, Q::ONE);
        }
        Ok(m)
    }

    fn left_mul<F: Field>(&self, t: &TripleElement, m: &Matrix<F>) -> Result<Matrix<F>> {
        if m.rows() != self.dim() {
            return Err(Error::Shape(format!("{} rows for η", m.rows())));
        }
        let perm = self.permutation(t)?;
        let mut out = Matrix::zeros(m.rows(), m.cols());
        for (p, &q) in perm.iter().enumerate() {
            for j in 0..m.cols() {
                out.set(q, j, m.get(p, j));
            }
        }
        Ok(out)
    }

    fn right_mul<F: Field>(&self, m: &Matrix<F>, t: &TripleElement) -> Result<Matrix<F>> {
        if m.cols() != self.dim() {
            return Err(Error::Shape(format!("{} columns for η", m.cols())));
        }
        let perm = self.permutation(t)?;
        Ok(Matrix::from_fn(m.rows(), m.cols(), |i, p| {
            m.get(i, perm[p])
        }))
    }
}

/// A basis of `Hom_G(src, dst)`, each element a `dim dst × dim src` matrix.
#[derive(Clone, Debug)]
pub struct IntertwinerBasis<F: Field = Q> {
    pub src_dim: usize,
    pub dst_dim: usize,
    pub basis: Vec<Matrix<F>>,
}

impl<F: Field> IntertwinerBasis<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Normalized Hilbert–Schmidt Gram matrix `⟨T_i, T_j⟩`.
    pub fn gram(&self) -> Result<Matrix<F>> {
        let k = self.basis.len();
        let mut g = Matrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                g.set(i, j, self.basis[i].hs_inner(&self.basis[j])?);
            }
        }
        Ok(g)
    }

    /// Gram–Schmidt without normalization.
    pub fn orthogonalize(&self) -> Result<Self> {
        let mut out: Vec<Matrix<F>> = Vec::with_capacity(self.basis.len());
        let mut norms: Vec<F> = Vec::new();
        for t in &self.basis {
            let mut v = t.clone();
            for (u, nu) in out.iter().zip(&norms) {
                let c = v.hs_inner(u)? * nu.inv().expect("non-zero norm");
                v = v.sub(&u.scale(c))?;
            }
            let nv = v.hs_inner(&v)?;
            if nv.is_zero() {
                return Err(Error::Check(
                    "intertwiner basis is linearly dependent".into(),
                ));
            }
            norms.push(nv);
            out.push(v);
        }
        Ok(Self {
            basis: out,
            ..*self
        })
    }

    /// `T_j*·T_i = ⟨T_i,T_j⟩·I` for every pair; for an irreducible source this
    /// is Schur's lemma, and for an orthonormal basis it reads `δ_{ij}·I`.
    pub fn schur_products_hold(&self) -> Result<bool> {
        for (i, ti) in self.basis.iter().enumerate() {
            for tj in &self.basis[..=i] {
                let lhs = tj.adjoint().mul(ti)?;
                let rhs = Matrix::identity(self.src_dim).scale(ti.hs_inner(tj)?);
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl IntertwinerBasis<Q> {
    /// Orthonormal basis over `Q(i, √2)`; fails when a norm has no square
    /// root there.
    pub fn orthonormalize(&self) -> Result<IntertwinerBasis<GaussianSurd>> {
        let orth = self.orthogonalize()?;
        let mut basis = Vec::with_capacity(orth.basis.len());
        for t in &orth.basis {
            let norm = t.hs_inner(t)?;
            let root = GaussianSurd::sqrt_rational(norm.re())?;
            let inv = root.inv().expect("positive norm");
            basis.push(t.map(GaussianSurd::from).scale(inv));
        }
        Ok(IntertwinerBasis {
            src_dim: self.src_dim,
            dst_dim: self.dst_dim,
            basis,
        })
    }

    pub fn lift(&self) -> IntertwinerBasis<GaussianSurd> {
        IntertwinerBasis {
            src_dim: self.src_dim,
            dst_dim: self.dst_dim,
            basis: self
                .basis
                .iter()
                .map(|t| t.map(GaussianSurd::from))
                .collect(),
        }
    }
}

/// Whether `T·src(g) = dst(g)·T` for every group element.
pub fn intertwines<F, S, D>(src: &S, dst: &D, t: &Matrix<F>) -> Result<bool>
where
    F: Field,
    S: Representation,
    D: Representation<Element = S::Element>,
{
    if (t.rows(), t.cols()) != (dst.dim(), src.dim()) {
        return Err(Error::Shape(format!(
            "{}x{} is not a map from dimension {} to {}",
            t.rows(),
            t.cols(),
            src.dim(),
            dst.dim()
        )));
    }
    for g in src.elements()? {
        if src.right_mul(t, &g)? != dst.left_mul(&g, t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact basis of `Hom_G(src, dst)`: the nullspace of `Tσ(g) − τ(g)T = 0`
/// over generators, then checked against every element.
pub fn intertwiner_space<S, D>(src: &S, dst: &D) -> Result<IntertwinerBasis>
where
    S: Representation,
    D: Representation<Element = S::Element>,
{
    let (ds, dd) = (src.dim(), dst.dim());
    if ds * dd > INTERTWINER_MAX_UNKNOWNS {
        return Err(Error::Shape(format!(
            "intertwiner system with {} unknowns exceeds {}",
            ds * dd,
            INTERTWINER_MAX_UNKNOWNS
        )));
    }
    // Unknown T[i][k] has column i·ds + k.
    let mut echelon = Echelon::new(ds * dd);
    for g in src.generators() {
        let sigma = src.image(&g)?;
        let tau = dst.image(&g)?;
        let sigma_cols: Vec<Vec<(usize, Q)>> = (0..ds)
            .map(|j| {
                (0..ds)
                    .filter(|&k| !sigma.get(k, j).is_zero())
                    .map(|k| (k, sigma.get(k, j)))
                    .collect()
            })
            .collect();
        let tau_rows: Vec<Vec<(usize, Q)>> =
            (0..dd).map(|i| tau.row_support(i).collect()).collect();
        for (i, tau_row) in tau_rows.iter().enumerate() {
            for (j, sigma_col) in sigma_cols.iter().enumerate() {
                let mut row: Vec<(usize, Q)> = Vec::new();
                for &(k, v) in sigma_col {
                    row.push((i * ds + k, v));
                }
                for &(k, v) in tau_row {
                    row.push((k * ds + j, -v));
                }
                row.sort_by_key(|e| e.0);
                let mut merged: Vec<(usize, Q)> = Vec::with_capacity(row.len());
                for (c, v) in row {
                    match merged.last_mut() {
                        Some(last) if last.0 == c => last.1 += v,
                        _ => merged.push((c, v)),
                    }
                }
                echelon.insert(merged);
            }
        }
    }
    let basis: Vec<Matrix<Q>> = echelon
        .nullspace()
        .into_iter()
        .map(|v| Matrix::from_vec(dd, ds, v).expect("sized"))
        .collect();
    for t in &basis {
        if !intertwines(src, dst, t)? {
            return Err(Error::Check(
                "a solution of the generator system fails on some group element".into(),
            ));
        }
    }
    Ok(IntertwinerBasis {
        src_dim: ds,
        dst_dim: dd,
        basis,
    })
}

/// Fixed vectors of a representation.
pub fn invariant_vectors<R: Representation>(rep: &R) -> Result<Vec<Vec<Q>>> {
    let d = rep.dim();
    let mut echelon = Echelon::new(d);
    for g in rep.generators() {
        let m = rep.image(&g)?;
        for i in 0..d {
            let mut row: Vec<(usize, Q)> = m.row_support(i).collect();
            match row.iter_mut().find(|e| e.0 == i) {
                Some(e) => e.1 -= Q::ONE,
                None => row.push((i, -Q::ONE)),
            }
            echelon.insert(row);
        }
    }
    let basis = echelon.nullspace();
    for g in rep.elements()? {
        let m = rep.image(&g)?;
        for v in &basis {
            if m.apply(v)? != *v {
                return Err(Error::Check(
                    "invariant vector moved by a group element".into(),
                ));
            }
        }
    }
    Ok(basis)
}

/// `(V₁⊗V₂⊗W)^{H̃}`.
pub fn invariant_subspace(sigma: &TripleIrrepLabel) -> Result<Vec<Vec<Q>>> {
    invariant_vectors(&DiagonalRep::new(sigma)?)
}

/// Whether the adjoint of an intertwiner `src → dst` intertwines `dst → src`.
pub fn adjoint_intertwines<S, D>(src: &S, dst: &D, t: &Matrix<Q>) -> Result<bool>
where
    S: Representation,
    D: Representation<Element = S::Element>,
{
    intertwines(dst, src, &t.adjoint())
}

/// `⟨T₁,T₂⟩_{Hom(W,U)} = (dim U/dim W)·⟨T₂*,T₁*⟩_{Hom(U,W)}`.
pub fn adjoint_scaling_holds<F: Field>(t1: &Matrix<F>, t2: &Matrix<F>) -> Result<bool> {
    let (du, dw) = (t1.rows() as i64, t1.cols() as i64);
    let lhs = t1.hs_inner(t2)?;
    let rhs = t2.adjoint().hs_inner(&t1.adjoint())?;
    Ok(lhs * F::from_int(dw) == rhs * F::from_int(du))
}

/// Square root of a power of two, `√(2^k)`.
fn sqrt_pow2(k: u32) -> GaussianSurd {
    GaussianSurd::sqrt2_pow(k)
}

fn log2(d: usize) -> u32 {
    debug_assert!(d.is_power_of_two());
    d.trailing_zeros()
}

/// Everything needed to move between `Hom(ρ₁⊠ρ₂⊠θ, η)` and
/// `Hom(Res(ρ₁⊗ρ₂), θ′)` for one irrep triple.
#[derive(Clone, Debug)]
pub struct FrobeniusSetting {
    pub sigma: TripleIrrepLabel,
    pub triple: TripleRep,
    pub eta: EtaRep,
    pub restricted: RestrictedTensorRep,
    /// `θ′`, the entrywise conjugate model of `θ`.
    pub theta_prime: MatrixRep,
    group: Vec<CliffordElement>,
}

impl FrobeniusSetting {
    pub fn new(sigma: &TripleIrrepLabel) -> Result<Self> {
        let (n, m) = (sigma.degree(), sigma.subgroup_degree());
        let eta = permutation_rep_eta(n, m)?;
        Ok(Self {
            sigma: *sigma,
            triple: TripleRep::new(sigma)?,
            eta,
            restricted: RestrictedTensorRep::new(&sigma.rho1, &sigma.rho2, m)?,
            theta_prime: build_matrix_rep(&sigma.theta)?.conjugate(),
            group: crate::group::enumerate_group(n)?,
        })
    }

    fn dims(&self) -> (usize, usize, usize) {
        (
            self.triple.rho1.dim(),
            self.triple.rho2.dim(),
            self.triple.theta.dim(),
        )
    }

    fn order(&self) -> i64 {
        self.group.len() as i64
    }

    pub fn hom_eta(&self) -> Result<IntertwinerBasis> {
        intertwiner_space(&self.triple, &self.eta)
    }

    pub fn hom_restricted(&self) -> Result<IntertwinerBasis> {
        intertwiner_space(&self.restricted, &self.theta_prime)
    }

    /// `T̃[ℓ,(i,j)] = (|G|/√d_θ)·T[(1,1),(i,j,ℓ)]`.
    pub fn tilde<F: Field>(&self, t: &Matrix<F>) -> Result<Matrix<GaussianSurd>>
    where
        GaussianSurd: From<F>,
    {
        let (d1, d2, dt) = self.dims();
        if (t.rows(), t.cols()) != (self.eta.dim(), d1 * d2 * dt) {
            return Err(Error::Shape("tilde expects a map into η".into()));
        }
        let c = GaussianSurd::from_int(self.order()) * sqrt_pow2(log2(dt)).inv().expect("non-zero");
        let origin = 0; // (+γ_∅, +γ_∅)
        Ok(Matrix::from_fn(dt, d1 * d2, |l, ij| {
            GaussianSurd::from(t.get(origin, ij * dt + l)) * c
        }))
    }

    /// `Ŝ[(g₁,g₂),(i,j,ℓ)] = (√d_θ/|G|)·Σ_{a,b} ρ₁(g₂⁻¹g₁⁻¹)[a,i]·ρ₂(g₂⁻¹)[b,j]·S[ℓ,(a,b)]`.
    pub fn hat<F: Field>(&self, s: &Matrix<F>) -> Result<Matrix<GaussianSurd>>
    where
        GaussianSurd: From<F>,
    {
        let (d1, d2, dt) = self.dims();
        if (s.rows(), s.cols()) != (dt, d1 * d2) {
            return Err(Error::Shape("hat expects a map Res(ρ₁⊗ρ₂) → θ′".into()));
        }
        let s = s.map(GaussianSurd::from);
        let c = sqrt_pow2(log2(dt))
            * GaussianSurd::from_int(self.order())
                .inv()
                .expect("non-zero");
        let mut out = Matrix::zeros(self.eta.dim(), d1 * d2 * dt);
        for g1 in &self.group {
            for g2 in &self.group {
                let g2i = g2.inverse();
                let a = self.triple.rho1.image_of(&g2i.multiply(&g1.inverse())?)?;
                let b = self.triple.rho2.image_of(&g2i)?;
                let m = a.kron(&b).map(GaussianSurd::from_gaussian);
                // (S·M)[ℓ,(i,j)] = Σ_{(a,b)} S[ℓ,(a,b)]·M[(a,b),(i,j)]
                let sm = s.mul(&m)?;
                let row = self.eta.point_index(g1, g2);
                for ij in 0..d1 * d2 {
                    for l in 0..dt {
                        out.set(row, ij * dt + l, sm.get(l, ij) * c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `T_B[(g₁,g₂),k] = (√(d₁d₂d_θ)/|G|)·(b*·M)_k` with
    /// `M = ρ₁(g₂⁻¹g₁⁻¹)⊗ρ₂(g₂⁻¹)⊗I`, i.e. the conjugate of
    /// `B(ρ₁(g₂⁻¹g₁⁻¹)v₁, ρ₂(g₂⁻¹)v₂, w)` for `B(u) = ⟨u, b⟩`.
    pub fn intertwiner_from_invariant(&self, b: &[Q]) -> Result<Matrix<GaussianSurd>> {
        let (d1, d2, dt) = self.dims();
        if b.len() != d1 * d2 * dt {
            return Err(Error::Shape(format!(
                "invariant tensor of length {}",
                b.len()
            )));
        }
        let diag = DiagonalRep::new(&self.sigma)?;
        for h in diag.elements()? {
            if diag.image(&h)?.apply(b)? != b {
                return Err(Error::NotInvariant);
            }
        }
        let c = sqrt_pow2(log2(d1 * d2 * dt))
            * GaussianSurd::from_int(self.order())
                .inv()
                .expect("non-zero");
        let bstar = Matrix::from_vec(1, b.len(), b.iter().map(|z| z.conj()).collect())?;
        let mut out = Matrix::zeros(self.eta.dim(), b.len());
        for g1 in &self.group {
            for g2 in &self.group {
                let g2i = g2.inverse();
                let m = self
                    .triple
                    .rho1
                    .image_of(&g2i.multiply(&g1.inverse())?)?
                    .kron(&self.triple.rho2.image_of(&g2i)?)
                    .kron(&Matrix::identity(dt));
                let row = bstar.mul(&m)?;
                let x = self.eta.point_index(g1, g2);
                for k in 0..b.len() {
                    out.set(x, k, GaussianSurd::from(row.get(0, k)) * c);
                }
            }
        }
        Ok(out)
    }

    /// `T̃_B[ℓ,(i,j)] = √(d₁d₂)·conj b[(i,j,ℓ)]`.
    pub fn tilde_of_invariant(&self, b: &[Q]) -> Matrix<GaussianSurd> {
        let (d1, d2, dt) = self.dims();
        let c = sqrt_pow2(log2(d1 * d2));
        Matrix::from_fn(dt, d1 * d2, |l, ij| {
            GaussianSurd::from(b[ij * dt + l].conj()) * c
        })
    }

    /// `(T_w v)(x) = √(d_σ/|X|)·⟨v, σ(g_x)w⟩` with `g_x = (g₁g₂, g₂, 1)`
    /// carrying `(1,1)` to `x = (g₁,g₂)`.
    pub fn t_w(&self, w: &[Q]) -> Result<Matrix<GaussianSurd>> {
        let d = self.triple.dim();
        if w.len() != d {
            return Err(Error::Shape(format!("vector of length {}", w.len())));
        }
        let n = self.sigma.degree();
        let c = sqrt_pow2(log2(d))
            * GaussianSurd::from_int(self.order())
                .inv()
                .expect("non-zero");
        let id = CliffordElement::identity(n)?;
        let mut out = Matrix::zeros(self.eta.dim(), d);
        for g1 in &self.group {
            for g2 in &self.group {
                let gx = TripleElement {
                    g1: g1.multiply(g2)?,
                    g2: *g2,
                    h: id,
                };
                let sw = self.triple.image(&gx)?.apply(w)?;
                let x = self.eta.point_index(g1, g2);
                for (k, v) in sw.iter().enumerate() {
                    out.set(x, k, GaussianSurd::from(v.conj()) * c);
                }
            }
        }
        Ok(out)
    }

    /// `⟨T_{w₁}v₁, T_{w₂}v₂⟩_{L(X)} = ⟨v₁,v₂⟩⟨w₂,w₁⟩` on standard basis
    /// vectors `v` and the given invariant vectors `w`.
    pub fn t_w_isometry_holds(&self, invariants: &[Vec<Q>]) -> Result<bool> {
        let d = self.triple.dim();
        let maps: Vec<Matrix<GaussianSurd>> = invariants
            .iter()
            .map(|w| self.t_w(w))
            .collect::<Result<_>>()?;
        let inner = |u: &[Q], v: &[Q]| -> Q { u.iter().zip(v).map(|(a, b)| *a * b.conj()).sum() };
        for (i1, w1) in invariants.iter().enumerate() {
            for (i2, w2) in invariants.iter().enumerate() {
                let rhs_w = GaussianSurd::from(inner(w2, w1));
                for v1 in 0..d {
                    for v2 in 0..d {
                        let lhs: GaussianSurd = (0..self.eta.dim())
                            .map(|x| maps[i1].get(x, v1) * maps[i2].get(x, v2).conj())
                            .sum();
                        let rhs = if v1 == v2 {
                            rhs_w
                        } else {
                            GaussianSurd::zero()
                        };
                        if lhs != rhs {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Outcome of the full comparison for one irrep triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusReport {
    pub sigma: TripleIrrepLabel,
    pub hom_eta_dim: usize,
    pub hom_restricted_dim: usize,
    pub invariant_dim: usize,
    pub character_dim: u64,
    /// `T̃` intertwines `Res(ρ₁⊗ρ₂)` with `θ′` and `Ŝ` intertwines
    /// `ρ₁⊠ρ₂⊠θ` with `η`, for every basis element.
    pub maps_intertwine: bool,
    /// `hat∘tilde = id` and `tilde∘hat = id` on the computed bases.
    pub mutually_inverse: bool,
    /// `tilde` preserves the normalized Hilbert–Schmidt Gram matrix.
    pub isometric: bool,
    /// `T_B` intertwines, `B ↦ T_B` is injective and `T̃_B = √(d₁d₂)·conj B`.
    pub invariant_maps_ok: bool,
    /// Orthogonalized `Hom(ρ₁⊠ρ₂⊠θ, η)` satisfies `T_j*T_i = ⟨T_i,T_j⟩ I`.
    pub schur_ok: bool,
    /// Adjoints of the `η` intertwiners intertwine back.
    pub adjoints_ok: bool,
}

impl FrobeniusReport {
    pub fn passed(&self) -> bool {
        let dims = self.hom_eta_dim == self.hom_restricted_dim
            && self.hom_eta_dim == self.invariant_dim
            && self.hom_eta_dim as u64 == self.character_dim;
        dims && self.maps_intertwine
            && self.mutually_inverse
            && self.isometric
            && self.invariant_maps_ok
            && self.schur_ok
            && self.adjoints_ok
    }
}

fn surd_rank(mats: &[Matrix<GaussianSurd>]) -> usize {
    let cols = mats.first().map_or(0, |m| m.data().len());
    let mut e = Echelon::new(cols);
    for m in mats {
        e.insert_dense(m.data());
    }
    e.rank()
}

/// Runs every check for one triple.
pub fn frobenius_check(sigma: &TripleIrrepLabel) -> Result<FrobeniusReport> {
    let setting = FrobeniusSetting::new(sigma)?;
    let hom_eta = setting.hom_eta()?;
    let hom_res = setting.hom_restricted()?;
    let invariants = invariant_subspace(sigma)?;
    let character_dim = diagonal_invariant_dim(&sigma.rho1, &sigma.rho2, &sigma.theta)?;

    let mut maps_intertwine = true;
    let mut mutually_inverse = true;
    let tildes: Vec<Matrix<GaussianSurd>> = hom_eta
        .basis
        .iter()
        .map(|t| setting.tilde(t))
        .collect::<Result<_>>()?;
    for (t, tt) in hom_eta.basis.iter().zip(&tildes) {
        maps_intertwine &= intertwines(&setting.restricted, &setting.theta_prime, tt)?;
        mutually_inverse &= setting.hat(tt)? == t.map(GaussianSurd::from);
    }
    for s in &hom_res.basis {
        let hs = setting.hat(s)?;
        maps_intertwine &= intertwines(&setting.triple, &setting.eta, &hs)?;
        mutually_inverse &= setting.tilde(&hs)? == s.map(GaussianSurd::from);
    }
    // Bijectivity: images of a basis stay independent.
    mutually_inverse &= surd_rank(&tildes) == hom_eta.dim();

    let lifted = hom_eta.lift();
    let tilde_basis = IntertwinerBasis {
        src_dim: setting.restricted.dim(),
        dst_dim: setting.theta_prime.dim(),
        basis: tildes,
    };
    let isometric = lifted.gram()? == tilde_basis.gram()?;

    let mut invariant_maps_ok = true;
    let mut tbs = Vec::new();
    for b in &invariants {
        let tb = setting.intertwiner_from_invariant(b)?;
        invariant_maps_ok &= intertwines(&setting.triple, &setting.eta, &tb)?;
        invariant_maps_ok &= setting.tilde(&tb)? == setting.tilde_of_invariant(b);
        tbs.push(tb);
    }
    invariant_maps_ok &= surd_rank(&tbs) == invariants.len();
    if sigma.degree() == 1 {
        invariant_maps_ok &= setting.t_w_isometry_holds(&invariants)?;
    }

    let schur_ok = hom_eta.orthogonalize()?.schur_products_hold()?;
    let mut adjoints_ok = true;
    for t in &hom_eta.basis {
        adjoints_ok &= adjoint_intertwines(&setting.triple, &setting.eta, t)?;
    }

    Ok(FrobeniusReport {
        sigma: *sigma,
        hom_eta_dim: hom_eta.dim(),
        hom_restricted_dim: hom_res.dim(),
        invariant_dim: invariants.len(),
        character_dim,
        maps_intertwine,
        mutually_inverse,
        isometric,
        invariant_maps_ok,
        schur_ok,
        adjoints_ok,
    })
}

/// Counts from [`matrix_coefficient_checks`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoefficientReport {
    pub orthogonality_checked: usize,
    pub convolution_checked: usize,
    pub failures: Vec<String>,
}

impl CoefficientReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks, with `u^σ_{i,j}(g) = σ(g)[i,j]`,
///
/// * `Σ_g u^σ_{i,j}(g)·conj u^ρ_{h,k}(g) = (|G|/d_σ)·δ_{σ,ρ}δ_{i,h}δ_{j,k}`
/// * `u^σ_{i,j} * u^ρ_{h,k} = (|G|/d_σ)·δ_{σ,ρ}δ_{j,h}·u^σ_{i,k}`
///
/// for all irreps of `CL(n)` and all indices.
pub fn matrix_coefficient_checks(n: u32) -> Result<CoefficientReport> {
    if n > ETA_MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: n,
            max: ETA_MAX_DEGREE,
            operation: "matrix coefficient checks",
        });
    }
    let group = crate::group::enumerate_group(n)?;
    let order = group.len() as i64;
    let reps: Vec<MatrixRep> = irreps(n)?
        .iter()
        .map(build_matrix_rep)
        .collect::<Result<_>>()?;
    let images: Vec<Vec<Matrix<Q>>> = reps
        .iter()
        .map(|r| group.iter().map(|g| r.image_of(g)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let mut report = CoefficientReport::default();
    for (s, sigma) in reps.iter().enumerate() {
        let ds = sigma.dim();
        let scale = Q::real(Rational::new(order, ds as i64));
        for (r, _) in reps.iter().enumerate() {
            let dr = reps[r].dim();
            for i in 0..ds {
                for j in 0..ds {
                    for h in 0..dr {
                        for k in 0..dr {
                            let ort: Q = (0..group.len())
                                .map(|g| images[s][g].get(i, j) * images[r][g].get(h, k).conj())
                                .sum();
                            let expect = if s == r && i == h && j == k {
                                scale
                            } else {
                                Q::ZERO
                            };
                            report.orthogonality_checked += 1;
                            if ort != expect {
                                report.failures.push(format!(
                                    "ORT {} ({i},{j}) vs {} ({h},{k}): {ort:#}",
                                    sigma.label(),
                                    reps[r].label()
                                ));
                            }
                            for (gi, g) in group.iter().enumerate() {
                                let conv: Q = group
                                    .iter()
                                    .enumerate()
                                    .map(|(xi, x)| {
                                        let y = x.inverse().mul_unchecked(g);
                                        images[s][xi].get(i, j) * images[r][y.index()].get(h, k)
                                    })
                                    .sum();
                                let expect = if s == r && j == h {
                                    scale * images[s][gi].get(i, k)
                                } else {
                                    Q::ZERO
                                };
                                report.convolution_checked += 1;
                                if conv != expect {
                                    report.failures.push(format!(
                                        "CON {} ({i},{j}) * {} ({h},{k}) at {g}: {conv:#}",
                                        sigma.label(),
                                        reps[r].label()
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Splits an entry into `(re_num, re_den, im_num, im_den)`.
pub fn entry_parts(z: &Q) -> [i64; 4] {
    [
        *z.re().numer(),
        *z.re().denom(),
        *z.im().numer(),
        *z.im().denom(),
    ]
}
