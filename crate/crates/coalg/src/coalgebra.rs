//! Coalgebras, their convolution dual algebras, radicals and coradicals,
//! idempotent lifting, and the decomposition of C into injective blocks.
//!
//! Conventions, fixed for the whole crate: a right C-comodule M has
//! ρ(m) = Σ m₀⊗m₁ ∈ M⊗C and is a left C*-module via c*⇀m = Σ m₀·c*(m₁);
//! a left C-comodule M has ρ(m) = Σ m₋₁⊗m₀ ∈ C⊗M and is a right
//! C*-module via m↼c* = Σ c*(m₋₁)·m₀.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Scalar, SubspaceBasis};

/// A finite-dimensional coalgebra given by sparse structure constants:
/// Δ(c_i) = Σ μ[i][(j,k)] c_j ⊗ c_k and ε(c_i) = counit[i].
#[derive(Clone, Debug, PartialEq)]
pub struct Coalgebra {
    field: Field,
    basis: Vec<String>,
    delta: Vec<Vec<(usize, usize, Scalar)>>,
    counit: Vec<Scalar>,
}

/// An element of the dual algebra C*, as coefficients on the dual basis.
#[derive(Clone, Debug, PartialEq)]
pub struct DualElement {
    pub coeffs: Vec<Scalar>,
}

impl DualElement {
    pub fn zero(dim: usize, field: Field) -> Self {
        DualElement {
            coeffs: vec![Scalar::zero(field); dim],
        }
    }

    pub fn dual_basis(i: usize, dim: usize, field: Field) -> Self {
        let mut d = DualElement::zero(dim, field);
        d.coeffs[i] = Scalar::one(field);
        d
    }

    /// Evaluate on an element of C given in basis coordinates.
    pub fn eval(&self, v: &[Scalar]) -> Scalar {
        assert_eq!(v.len(), self.coeffs.len());
        let field = self.coeffs[0].field();
        let mut acc = Scalar::zero(field);
        for (c, x) in self.coeffs.iter().zip(v) {
            acc = acc + c.clone() * x.clone();
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &DualElement) -> DualElement {
        DualElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &DualElement) -> DualElement {
        DualElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> DualElement {
        DualElement {
            coeffs: self.coeffs.iter().map(|a| s.clone() * a.clone()).collect(),
        }
    }
}

/// A distinguished subspace, either inside C or inside C*.
#[derive(Clone, Debug, PartialEq)]
pub enum SubspaceKind {
    SubcoalgebraOfC,
    IdealOfDual,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubcoalgebraOrSubspace {
    pub kind: SubspaceKind,
    pub basis: SubspaceBasis,
}

/// One axiom check inside a validation report.
#[derive(Clone, Debug)]
pub struct AxiomCheck {
    pub axiom: String,
    pub ok: bool,
    pub first_violation: Option<String>,
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match (&c.ok, &c.first_violation) {
                (true, _) => writeln!(f, "{:<24} pass", c.axiom)?,
                (false, Some(w)) => writeln!(f, "{:<24} FAIL at {}", c.axiom, w)?,
                (false, None) => writeln!(f, "{:<24} FAIL", c.axiom)?,
            }
        }
        Ok(())
    }
}

/// A summand of C = ⊕ E(T_j) (or ⊕ E(S_i) on the left side).
#[derive(Clone, Debug)]
pub struct BlockSummand {
    pub idempotent: DualElement,
    pub basis: SubspaceBasis,
    pub socle: SubspaceBasis,
}

/// Which comodule side a decomposition or socle refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
        }
    }
}

impl Coalgebra {
    pub fn new(
        field: Field,
        basis: Vec<String>,
        delta: Vec<Vec<(usize, usize, Scalar)>>,
        counit: Vec<Scalar>,
    ) -> Result<Self> {
        let n = basis.len();
        if delta.len() != n || counit.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "basis has {} elements, delta has {}, counit has {}",
                n,
                delta.len(),
                counit.len()
            )));
        }
        for row in &delta {
            for (j, k, s) in row {
                if *j >= n || *k >= n {
                    return Err(Error::ShapeMismatch(format!(
                        "delta index ({}, {}) out of range for dim {}",
                        j, k, n
                    )));
                }
                if s.field() != field {
                    return Err(Error::FieldMismatch {
                        expected: field,
                        got: s.field(),
                    });
                }
            }
        }
        for s in &counit {
            if s.field() != field {
                return Err(Error::FieldMismatch {
                    expected: field,
                    got: s.field(),
                });
            }
        }
        Ok(Coalgebra {
            field,
            basis,
            delta,
            counit,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|l| l == label)
    }

    pub fn delta_terms(&self, i: usize) -> &[(usize, usize, Scalar)] {
        &self.delta[i]
    }

    pub fn counit_values(&self) -> &[Scalar] {
        &self.counit
    }

    /// The counit as an element of C*; the unit of the convolution algebra.
    pub fn counit_dual(&self) -> DualElement {
        DualElement {
            coeffs: self.counit.clone(),
        }
    }

    // ---- axioms ---------------------------------------------------------

    pub fn validate(&self) -> AxiomReport {
        let mut checks = Vec::new();

        // coassociativity: (Δ⊗id)Δ = (id⊗Δ)Δ on each basis element
        let mut coassoc_fail = None;
        'outer: for i in 0..self.dim() {
            let mut lhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            let mut rhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            for (j, k, mu) in &self.delta[i] {
                for (a, b, nu) in &self.delta[*j] {
                    let e = lhs
                        .entry((*a, *b, *k))
                        .or_insert_with(|| Scalar::zero(self.field));
                    *e = e.clone() + mu.clone() * nu.clone();
                }
                for (b, c, nu) in &self.delta[*k] {
                    let e = rhs
                        .entry((*j, *b, *c))
                        .or_insert_with(|| Scalar::zero(self.field));
                    *e = e.clone() + mu.clone() * nu.clone();
                }
            }
            lhs.retain(|_, v| !v.is_zero());
            rhs.retain(|_, v| !v.is_zero());
            if lhs != rhs {
                coassoc_fail = Some(self.basis[i].clone());
                break 'outer;
            }
        }
        checks.push(AxiomCheck {
            axiom: "coassociativity".into(),
            ok: coassoc_fail.is_none(),
            first_violation: coassoc_fail,
        });

        // counit laws: (ε⊗id)Δ = id and (id⊗ε)Δ = id
        let mut left_fail = None;
        let mut right_fail = None;
        for i in 0..self.dim() {
            let mut left = vec![Scalar::zero(self.field); self.dim()];
            let mut right = vec![Scalar::zero(self.field); self.dim()];
            for (j, k, mu) in &self.delta[i] {
                left[*k] = left[*k].clone() + self.counit[*j].clone() * mu.clone();
                right[*j] = right[*j].clone() + self.counit[*k].clone() * mu.clone();
            }
            let mut expect = vec![Scalar::zero(self.field); self.dim()];
            expect[i] = Scalar::one(self.field);
            if left_fail.is_none() && left != expect {
                left_fail = Some(self.basis[i].clone());
            }
            if right_fail.is_none() && right != expect {
                right_fail = Some(self.basis[i].clone());
            }
        }
        checks.push(AxiomCheck {
            axiom: "counit (left)".into(),
            ok: left_fail.is_none(),
            first_violation: left_fail,
        });
        checks.push(AxiomCheck {
            axiom: "counit (right)".into(),
            ok: right_fail.is_none(),
            first_violation: right_fail,
        });

        AxiomReport { checks }
    }

    // ---- convolution algebra --------------------------------------------

    /// (f*g)(c_i) = Σ μ[i][(j,k)] f(c_j) g(c_k).
    pub fn convolve(&self, f: &DualElement, g: &DualElement) -> Result<DualElement> {
        if f.coeffs.len() != self.dim() || g.coeffs.len() != self.dim() {
            return Err(Error::ShapeMismatch(format!(
                "dual elements of length {}, {} over a coalgebra of dim {}",
                f.coeffs.len(),
                g.coeffs.len(),
                self.dim()
            )));
        }
        let mut out = DualElement::zero(self.dim(), self.field);
        for i in 0..self.dim() {
            for (j, k, mu) in &self.delta[i] {
                out.coeffs[i] = out.coeffs[i].clone()
                    + mu.clone() * f.coeffs[*j].clone() * g.coeffs[*k].clone();
            }
        }
        Ok(out)
    }

    /// Matrix of c ↦ Σ f(c_1)·c_2 on C (contraction of f with the first
    /// tensor leg). This is the right C*-action on C as a left comodule;
    /// its image for a block idempotent is the right-comodule summand.
    pub fn act_first_leg(&self, f: &DualElement) -> Matrix {
        let mut m = Matrix::zero(self.dim(), self.dim(), self.field);
        for i in 0..self.dim() {
            for (j, k, mu) in &self.delta[i] {
                m.add_to(*k, i, mu.clone() * f.coeffs[*j].clone())
                    .expect("same field");
            }
        }
        m
    }

    /// Matrix of c ↦ Σ c_1·f(c_2) (contraction with the second leg); the
    /// left C*-action on C as a right comodule.
    pub fn act_second_leg(&self, f: &DualElement) -> Matrix {
        let mut m = Matrix::zero(self.dim(), self.dim(), self.field);
        for i in 0..self.dim() {
            for (j, k, mu) in &self.delta[i] {
                m.add_to(*j, i, mu.clone() * f.coeffs[*k].clone())
                    .expect("same field");
            }
        }
        m
    }

    /// Δ applied to an arbitrary element, flattened to a dim×dim matrix
    /// with entry (j,k) the coefficient of c_j ⊗ c_k.
    pub fn delta_of_vector(&self, v: &[Scalar]) -> Matrix {
        let mut m = Matrix::zero(self.dim(), self.dim(), self.field);
        for (i, coef) in v.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (j, k, mu) in &self.delta[i] {
                m.add_to(*j, *k, coef.clone() * mu.clone()).expect("same field");
            }
        }
        m
    }

    // ---- radical and coradical ------------------------------------------

    /// Jacobson radical of C* as the kernel of the trace form
    /// (x, y) ↦ trace of left convolution by x*y. Characteristic 0 only.
    pub fn dual_radical(&self) -> Result<SubcoalgebraOrSubspace> {
        if self.field != Field::Q {
            return Err(Error::UnsupportedField(self.field));
        }
        let n = self.dim();
        // trace of left multiplication by x is Σ_j t_j x_j with
        // t_j = Σ_i μ[i][(j, i)]
        let mut t = vec![Scalar::zero(self.field); n];
        for i in 0..n {
            for (j, k, mu) in &self.delta[i] {
                if *k == i {
                    t[*j] = t[*j].clone() + mu.clone();
                }
            }
        }
        // Gram[a][b] = trace(L_{δ_a * δ_b}) = Σ_i t_i μ[i][(a, b)]
        let mut gram = Matrix::zero(n, n, self.field);
        for (ti, delta_i) in t.iter().zip(&self.delta) {
            if ti.is_zero() {
                continue;
            }
            for (a, b, mu) in delta_i {
                gram.add_to(*a, *b, ti.clone() * mu.clone())?;
            }
        }
        let basis = SubspaceBasis::kernel_of(&gram);
        debug_assert!(self.radical_is_nilpotent(&basis));
        Ok(SubcoalgebraOrSubspace {
            kind: SubspaceKind::IdealOfDual,
            basis,
        })
    }

    /// Witness check: J^(dim+1) = 0 under convolution powering.
    pub fn radical_is_nilpotent(&self, j: &SubspaceBasis) -> bool {
        let mut current: Vec<DualElement> = j
            .vectors()
            .iter()
            .map(|v| DualElement { coeffs: v.clone() })
            .collect();
        let gens = current.clone();
        for _ in 0..=self.dim() {
            if current.is_empty() {
                return true;
            }
            let mut products = Vec::new();
            for a in &current {
                for b in &gens {
                    let p = self.convolve(a, b).expect("dims match");
                    if !p.is_zero() {
                        products.push(p.coeffs);
                    }
                }
            }
            let span = SubspaceBasis::from_vectors(self.dim(), self.field, &products)
                .expect("same ambient");
            current = span
                .vectors()
                .iter()
                .map(|v| DualElement { coeffs: v.clone() })
                .collect();
        }
        current.is_empty()
    }

    /// Coradical C₀ = annihilator of Rad(C*) inside C, as a subcoalgebra.
    pub fn coradical(&self) -> Result<SubcoalgebraOrSubspace> {
        let rad = self.dual_radical()?;
        let basis = rad.basis.annihilator();
        debug_assert_eq!(basis.dim() + rad.basis.dim(), self.dim());
        debug_assert!(self.is_subcoalgebra(&basis));
        Ok(SubcoalgebraOrSubspace {
            kind: SubspaceKind::SubcoalgebraOfC,
            basis,
        })
    }

    /// Δ(D) ⊆ D⊗D, tested through Δ(D) ⊆ D⊗C ∩ C⊗D.
    pub fn is_subcoalgebra(&self, d: &SubspaceBasis) -> bool {
        for v in d.vectors() {
            let m = self.delta_of_vector(v);
            for k in 0..self.dim() {
                let col: Vec<Scalar> = (0..self.dim()).map(|j| m.get(j, k)).collect();
                if !d.contains_vector(&col) {
                    return false;
                }
            }
            for j in 0..self.dim() {
                let row = m.dense_row(j);
                if !d.contains_vector(&row) {
                    return false;
                }
            }
        }
        true
    }

    // ---- idempotent lifting ----------------------------------------------

    /// Lift an almost-idempotent x (x*x − x ∈ Rad C*) to an exact
    /// idempotent congruent to x mod Rad C*, by iterating y ← 3y² − 2y³.
    /// Returns the idempotent and the number of iterations used.
    pub fn lift_idempotent(&self, x: &DualElement) -> Result<(DualElement, usize)> {
        let rad = self.dual_radical()?;
        let defect = self.convolve(x, x)?.sub(x);
        if !rad.basis.contains_vector(&defect.coeffs) {
            return Err(Error::NotAlmostIdempotent);
        }
        let mut y = x.clone();
        let mut iters = 0;
        // quadratic convergence: the defect lives in J^(2^iters)
        let max_iters = 64 - (self.dim() as u64).leading_zeros() as usize + 2;
        loop {
            let y2 = self.convolve(&y, &y)?;
            if y2 == y {
                break;
            }
            if iters >= max_iters {
                return Err(Error::Validation(
                    "idempotent lifting did not stabilize".into(),
                ));
            }
            let y3 = self.convolve(&y2, &y)?;
            let three = Scalar::from_int(3, self.field);
            let two = Scalar::from_int(2, self.field);
            y = y2.scale(&three).sub(&y3.scale(&two));
            iters += 1;
        }
        debug_assert!(rad.basis.contains_vector(&y.sub(x).coeffs));
        Ok((y, iters))
    }

    // ---- injective block decomposition ------------------------------------

    /// Resolving idempotents derived automatically in the pointed case:
    /// the coradical must be spanned by grouplike basis elements, and the
    /// idempotents are their dual-basis functionals.
    pub fn resolving_idempotents_auto(&self) -> Result<Vec<DualElement>> {
        let corad = self.coradical()?;
        let mut idems = Vec::new();
        for v in corad.basis.vectors() {
            let nonzero: Vec<usize> = v
                .iter()
                .enumerate()
                .filter(|(_, s)| !s.is_zero())
                .map(|(i, _)| i)
                .collect();
            if nonzero.len() != 1 || !v[nonzero[0]].is_one() {
                return Err(Error::IdempotentsUnavailable(
                    "coradical is not spanned by basis labels; supply idempotents".into(),
                ));
            }
            let g = nonzero[0];
            let grouplike = self.delta[g].len() == 1
                && self.delta[g][0].0 == g
                && self.delta[g][0].1 == g
                && self.delta[g][0].2.is_one()
                && self.counit[g].is_one();
            if !grouplike {
                return Err(Error::IdempotentsUnavailable(format!(
                    "coradical basis element {} is not grouplike; supply idempotents",
                    self.basis[g]
                )));
            }
            idems.push(DualElement::dual_basis(g, self.dim(), self.field));
        }
        Ok(idems)
    }

    fn check_resolving_idempotents(&self, idems: &[DualElement]) -> Result<()> {
        let eps = self.counit_dual();
        let mut sum = DualElement::zero(self.dim(), self.field);
        for (a, e) in idems.iter().enumerate() {
            if self.convolve(e, e)? != *e {
                return Err(Error::BadIdempotents(format!(
                    "element {} is not idempotent",
                    a
                )));
            }
            sum = sum.add(e);
            for (b, f) in idems.iter().enumerate() {
                if a != b {
                    let ef = self.convolve(e, f)?;
                    if !ef.is_zero() {
                        return Err(Error::BadIdempotents(format!(
                            "elements {} and {} are not orthogonal",
                            a, b
                        )));
                    }
                }
            }
        }
        if sum != eps {
            return Err(Error::BadIdempotents(
                "idempotents do not sum to the counit".into(),
            ));
        }
        // Centrality is deliberately not required: resolving idempotents
        // for a matrix-coalgebra block (e.g. the diagonal duals in
        // M^c(n, k)) are orthogonal and sum to ε without being central.
        // The decomposition itself is verified downstream: each summand
        // must be a subcomodule and the sum must be direct.
        Ok(())
    }

    /// C = ⊕ ε_j·C as comodules of the given side. Every summand is a
    /// subcomodule, the sum is direct, and each socle is reported.
    pub fn injective_block_decomposition_sided(
        &self,
        side: Side,
        idempotents: Option<&[DualElement]>,
    ) -> Result<Vec<BlockSummand>> {
        let idems = match idempotents {
            Some(list) => list.to_vec(),
            None => self.resolving_idempotents_auto()?,
        };
        self.check_resolving_idempotents(&idems)?;
        let rad = if self.field == Field::Q {
            Some(self.dual_radical()?)
        } else {
            None
        };
        let mut blocks = Vec::new();
        let mut total = 0usize;
        for e in &idems {
            let proj = match side {
                Side::Right => self.act_first_leg(e),
                Side::Left => self.act_second_leg(e),
            };
            let cols: Vec<Vec<Scalar>> = (0..self.dim())
                .map(|i| (0..self.dim()).map(|r| proj.get(r, i)).collect())
                .collect();
            let basis = SubspaceBasis::from_vectors(self.dim(), self.field, &cols)?;
            if !self.is_subcomodule_of_c(side, &basis) {
                return Err(Error::BadIdempotents(
                    "idempotent image is not a subcomodule".into(),
                ));
            }
            total += basis.dim();
            let socle = match &rad {
                Some(r) => self.socle_inside(side, &basis, &r.basis)?,
                None => SubspaceBasis::zero(self.dim(), self.field),
            };
            blocks.push(BlockSummand {
                idempotent: e.clone(),
                basis,
                socle,
            });
        }
        if total != self.dim() {
            return Err(Error::BadIdempotents(format!(
                "summand dimensions total {}, expected {}",
                total,
                self.dim()
            )));
        }
        for a in 0..blocks.len() {
            for b in (a + 1)..blocks.len() {
                if blocks[a].basis.intersection(&blocks[b].basis)?.dim() != 0 {
                    return Err(Error::BadIdempotents(
                        "summands do not intersect trivially".into(),
                    ));
                }
            }
        }
        Ok(blocks)
    }

    /// Right-comodule block decomposition C = ⊕ E(T_j).
    pub fn injective_block_decomposition(
        &self,
        idempotents: Option<&[DualElement]>,
    ) -> Result<Vec<BlockSummand>> {
        self.injective_block_decomposition_sided(Side::Right, idempotents)
    }

    /// Δ(D) ⊆ D⊗C (right side) or C⊗D (left side).
    pub fn is_subcomodule_of_c(&self, side: Side, d: &SubspaceBasis) -> bool {
        for v in d.vectors() {
            let m = self.delta_of_vector(v);
            match side {
                Side::Right => {
                    // first legs must stay inside D
                    for k in 0..self.dim() {
                        let col: Vec<Scalar> = (0..self.dim()).map(|j| m.get(j, k)).collect();
                        if !d.contains_vector(&col) {
                            return false;
                        }
                    }
                }
                Side::Left => {
                    for j in 0..self.dim() {
                        if !d.contains_vector(&m.dense_row(j)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Socle of a subcomodule of C: vectors annihilated by the radical
    /// under the action matching the side.
    fn socle_inside(
        &self,
        side: Side,
        inside: &SubspaceBasis,
        rad: &SubspaceBasis,
    ) -> Result<SubspaceBasis> {
        let mut ann = SubspaceBasis::full(self.dim(), self.field);
        for j in rad.vectors() {
            let je = DualElement { coeffs: j.clone() };
            let act = match side {
                Side::Right => self.act_second_leg(&je),
                Side::Left => self.act_first_leg(&je),
            };
            ann = ann.intersection(&SubspaceBasis::kernel_of(&act))?;
        }
        inside.intersection(&ann)
    }

    // ---- standard examples -------------------------------------------------

    /// The grouplike coalgebra k^n (incidence coalgebra of an antichain).
    pub fn grouplike(n: usize, field: Field) -> Coalgebra {
        let basis = (0..n).map(|i| format!("g{}", i)).collect();
        let delta = (0..n).map(|i| vec![(i, i, Scalar::one(field))]).collect();
        let counit = vec![Scalar::one(field); n];
        Coalgebra::new(field, basis, delta, counit).expect("well-formed")
    }

    /// The matrix coalgebra M^c(n, k): Δ(e_ij) = Σ_k e_ik ⊗ e_kj.
    pub fn matrix_coalgebra(n: usize, field: Field) -> Coalgebra {
        let mut basis = Vec::new();
        for i in 0..n {
            for j in 0..n {
                basis.push(format!("e{}{}", i + 1, j + 1));
            }
        }
        let idx = |i: usize, j: usize| i * n + j;
        let mut delta = Vec::new();
        let mut counit = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let terms = (0..n)
                    .map(|k| (idx(i, k), idx(k, j), Scalar::one(field)))
                    .collect();
                delta.push(terms);
                counit.push(if i == j {
                    Scalar::one(field)
                } else {
                    Scalar::zero(field)
                });
            }
        }
        Coalgebra::new(field, basis, delta, counit).expect("well-formed")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::{parse_poset, build_incidence};

    fn two_chain() -> Coalgebra {
        let p = parse_poset("elements: 0 1\n0 < 1\n").unwrap();
        build_incidence(&p, Field::Q)
    }

    #[test]
    fn two_chain_passes_axioms() {
        assert!(two_chain().validate().passed());
    }

    #[test]
    fn grouplike_passes_axioms() {
        assert!(Coalgebra::grouplike(1, Field::Q).validate().passed());
        assert!(Coalgebra::grouplike(3, Field::Q).validate().passed());
    }

    #[test]
    fn matrix_coalgebra_passes_axioms() {
        assert!(Coalgebra::matrix_coalgebra(2, Field::Q).validate().passed());
    }

    #[test]
    fn perturbed_two_chain_fails() {
        let c = two_chain();
        // drop the e00 ⊗ e01 term of Δ(e01)
        let i01 = c.label_index("e[0,1]").unwrap();
        let i00 = c.label_index("e[0,0]").unwrap();
        let mut delta = c.delta.clone();
        delta[i01].retain(|(j, _, _)| *j != i00);
        let broken =
            Coalgebra::new(c.field, c.basis.clone(), delta, c.counit.clone()).unwrap();
        let report = broken.validate();
        assert!(!report.passed());
    }

    #[test]
    fn convolution_unit_law() {
        let c = two_chain();
        let eps = c.counit_dual();
        assert_eq!(c.convolve(&eps, &eps).unwrap(), eps);
        for i in 0..c.dim() {
            let f = DualElement::dual_basis(i, c.dim(), c.field);
            assert_eq!(c.convolve(&eps, &f).unwrap(), f);
            assert_eq!(c.convolve(&f, &eps).unwrap(), f);
        }
    }

    #[test]
    fn convolution_two_chain_examples() {
        let c = two_chain();
        let e00 = DualElement::dual_basis(c.label_index("e[0,0]").unwrap(), 3, Field::Q);
        let e11 = DualElement::dual_basis(c.label_index("e[1,1]").unwrap(), 3, Field::Q);
        // e00* * e00* = e00*
        assert_eq!(c.convolve(&e00, &e00).unwrap(), e00);
        // e00* * e11* = 0
        assert!(c.convolve(&e00, &e11).unwrap().is_zero());
    }

    #[test]
    fn convolution_is_associative_on_basis() {
        let c = two_chain();
        for a in 0..3 {
            for b in 0..3 {
                for d in 0..3 {
                    let fa = DualElement::dual_basis(a, 3, Field::Q);
                    let fb = DualElement::dual_basis(b, 3, Field::Q);
                    let fd = DualElement::dual_basis(d, 3, Field::Q);
                    let l = c.convolve(&c.convolve(&fa, &fb).unwrap(), &fd).unwrap();
                    let r = c.convolve(&fa, &c.convolve(&fb, &fd).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn radical_of_two_chain() {
        let c = two_chain();
        let rad = c.dual_radical().unwrap();
        assert_eq!(rad.basis.dim(), 1);
        // J = span{e01*}
        let mut v = vec![Scalar::zero(Field::Q); 3];
        v[c.label_index("e[0,1]").unwrap()] = Scalar::one(Field::Q);
        assert!(rad.basis.contains_vector(&v));
    }

    #[test]
    fn radical_of_grouplike_is_zero() {
        let c = Coalgebra::grouplike(4, Field::Q);
        assert_eq!(c.dual_radical().unwrap().basis.dim(), 0);
    }

    #[test]
    fn radical_of_matrix_coalgebra_is_zero() {
        let c = Coalgebra::matrix_coalgebra(2, Field::Q);
        assert_eq!(c.dual_radical().unwrap().basis.dim(), 0);
    }

    #[test]
    fn radical_rejects_prime_fields() {
        let c = Coalgebra::grouplike(2, Field::Fp(5));
        assert!(matches!(c.dual_radical(), Err(Error::UnsupportedField(_))));
    }

    #[test]
    fn coradical_of_two_chain() {
        let c = two_chain();
        let corad = c.coradical().unwrap();
        assert_eq!(corad.basis.dim(), 2);
        let mut v = vec![Scalar::zero(Field::Q); 3];
        v[c.label_index("e[0,0]").unwrap()] = Scalar::one(Field::Q);
        assert!(corad.basis.contains_vector(&v));
        let mut w = vec![Scalar::zero(Field::Q); 3];
        w[c.label_index("e[1,1]").unwrap()] = Scalar::one(Field::Q);
        assert!(corad.basis.contains_vector(&w));
    }

    #[test]
    fn coradical_of_cosemisimple_is_everything() {
        let g = Coalgebra::grouplike(3, Field::Q);
        assert_eq!(g.coradical().unwrap().basis.dim(), 3);
        let m = Coalgebra::matrix_coalgebra(2, Field::Q);
        assert_eq!(m.coradical().unwrap().basis.dim(), 4);
    }

    #[test]
    fn lift_fixed_point() {
        let c = two_chain();
        let e00 = DualElement::dual_basis(c.label_index("e[0,0]").unwrap(), 3, Field::Q);
        let (e, iters) = c.lift_idempotent(&e00).unwrap();
        assert_eq!(e, e00);
        assert_eq!(iters, 0);
    }

    #[test]
    fn lift_zero() {
        let c = two_chain();
        let z = DualElement::zero(3, Field::Q);
        let (e, _) = c.lift_idempotent(&z).unwrap();
        assert!(e.is_zero());
    }

    #[test]
    fn lift_three_chain_example() {
        // 3-chain dual is upper-triangular 3x3; x = e00* + e12* lifts to e00*
        let p = parse_poset("elements: 0 1 2\n0 < 1\n1 < 2\n").unwrap();
        let c = build_incidence(&p, Field::Q);
        let i00 = c.label_index("e[0,0]").unwrap();
        let i12 = c.label_index("e[1,2]").unwrap();
        let mut x = DualElement::zero(c.dim(), Field::Q);
        x.coeffs[i00] = Scalar::one(Field::Q);
        x.coeffs[i12] = Scalar::one(Field::Q);
        let (e, _) = c.lift_idempotent(&x).unwrap();
        assert_eq!(e, DualElement::dual_basis(i00, c.dim(), Field::Q));
        let diff = e.sub(&x);
        assert!(c.dual_radical().unwrap().basis.contains_vector(&diff.coeffs));
    }

    #[test]
    fn lift_rejects_non_almost_idempotent() {
        let c = two_chain();
        // ε + ε is not an almost-idempotent: (2ε)² − 2ε = 2ε ∉ J
        let x = c.counit_dual().scale(&Scalar::from_int(2, Field::Q));
        assert!(matches!(
            c.lift_idempotent(&x),
            Err(Error::NotAlmostIdempotent)
        ));
    }

    #[test]
    fn blocks_of_two_chain() {
        let c = two_chain();
        let blocks = c.injective_block_decomposition(None).unwrap();
        assert_eq!(blocks.len(), 2);
        let dims: Vec<usize> = blocks.iter().map(|b| b.basis.dim()).collect();
        let mut sorted = dims.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 2]);
        // the block containing e00 is span{e00, e01}
        let i00 = c.label_index("e[0,0]").unwrap();
        let i01 = c.label_index("e[0,1]").unwrap();
        let mut v00 = vec![Scalar::zero(Field::Q); 3];
        v00[i00] = Scalar::one(Field::Q);
        let mut v01 = vec![Scalar::zero(Field::Q); 3];
        v01[i01] = Scalar::one(Field::Q);
        let big = blocks.iter().find(|b| b.basis.dim() == 2).unwrap();
        assert!(big.basis.contains_vector(&v00));
        assert!(big.basis.contains_vector(&v01));
        assert_eq!(big.socle.dim(), 1);
        assert!(big.socle.contains_vector(&v00));
    }

    #[test]
    fn blocks_of_antichain() {
        let c = Coalgebra::grouplike(3, Field::Q);
        let blocks = c.injective_block_decomposition(None).unwrap();
        assert_eq!(blocks.len(), 3);
        assert!(blocks.iter().all(|b| b.basis.dim() == 1));
    }

    #[test]
    fn blocks_of_matrix_coalgebra_with_supplied_idempotents() {
        let c = Coalgebra::matrix_coalgebra(2, Field::Q);
        // auto-derivation must refuse: the coradical is not pointed
        assert!(c.injective_block_decomposition(None).is_err());
        let e1 = DualElement::dual_basis(c.label_index("e11").unwrap(), 4, Field::Q);
        let e2 = DualElement::dual_basis(c.label_index("e22").unwrap(), 4, Field::Q);
        let blocks = c
            .injective_block_decomposition(Some(&[e1, e2]))
            .unwrap();
        assert_eq!(blocks.len(), 2);
        assert!(blocks.iter().all(|b| b.basis.dim() == 2));
    }

    #[test]
    fn rad_is_annihilator_of_coradical() {
        for c in [
            two_chain(),
            Coalgebra::grouplike(3, Field::Q),
            Coalgebra::matrix_coalgebra(2, Field::Q),
        ] {
            let rad = c.dual_radical().unwrap();
            let corad = c.coradical().unwrap();
            assert_eq!(rad.basis.dim() + corad.basis.dim(), c.dim());
            let ann = corad.basis.annihilator();
            assert!(ann.contains(&rad.basis) && rad.basis.contains(&ann));
        }
    }
}
