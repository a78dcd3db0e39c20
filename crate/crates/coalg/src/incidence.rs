//! Finite posets, their incidence coalgebras, the injective
//! indecomposables E_r(S_x) and E_l(S_x), and the closed-form integral
//! dimensions dim E_r(S_u) = |u⁺|, dim ∫_r = |u⁻|.

use std::fmt;
use std::sync::Arc;

use crate::coalgebra::{Coalgebra, Side};
use crate::comodule::{Comodule, ComoduleMorphism};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Scalar};

/// A finite poset: ground set, cover relations, and the derived
/// reflexive-transitive order.
#[derive(Clone, Debug, PartialEq)]
pub struct FinitePoset {
    elements: Vec<String>,
    covers: Vec<(usize, usize)>,
    leq: Vec<bool>, // row-major n×n, leq[a*n+b] ⇔ a ≤ b
}

impl FinitePoset {
    pub fn new(elements: Vec<String>, covers: Vec<(usize, usize)>) -> Result<Self> {
        let n = elements.len();
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].contains(e) {
                return Err(Error::PosetParse {
                    line: 0,
                    msg: format!("duplicate element `{}`", e),
                });
            }
        }
        for &(a, b) in &covers {
            if a >= n || b >= n {
                return Err(Error::PosetParse {
                    line: 0,
                    msg: "cover index out of range".into(),
                });
            }
        }
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in &covers {
            leq[a * n + b] = true;
        }
        // Warshall closure
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && leq[a * n + b] && leq[b * n + a] {
                    return Err(Error::PosetParse {
                        line: 0,
                        msg: format!(
                            "cycle detected through `{}` and `{}`",
                            elements[a], elements[b]
                        ),
                    });
                }
            }
        }
        Ok(FinitePoset {
            elements,
            covers,
            leq,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == label)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    /// x⁺ = { y : x ≤ y }.
    pub fn up_set(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.leq(x, y)).collect()
    }

    /// x⁻ = { y : y ≤ x }.
    pub fn down_set(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.leq(y, x)).collect()
    }

    pub fn interval(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&z| self.leq(x, z) && self.leq(z, y))
            .collect()
    }

    /// All order-related pairs (x, y) with x ≤ y, in (x, y) index order.
    pub fn related_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            for y in 0..self.len() {
                if self.leq(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// The opposite poset (all relations reversed).
    pub fn opposite(&self) -> FinitePoset {
        let covers = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        FinitePoset::new(self.elements.clone(), covers).expect("opposite of a poset is a poset")
    }

    pub fn chain(n: usize) -> FinitePoset {
        let elements = (0..n).map(|i| i.to_string()).collect();
        let covers = (1..n).map(|i| (i - 1, i)).collect();
        FinitePoset::new(elements, covers).expect("chain is a poset")
    }

    pub fn antichain(n: usize) -> FinitePoset {
        let elements = (0..n).map(|i| i.to_string()).collect();
        FinitePoset::new(elements, Vec::new()).expect("antichain is a poset")
    }
}

/// Parse the textual poset format:
/// a line `elements: a b c`, then cover lines `a < b`; `#` comments.
pub fn parse_poset(text: &str) -> Result<FinitePoset> {
    let mut elements: Vec<String> = Vec::new();
    let mut covers: Vec<(usize, usize, usize)> = Vec::new(); // (a, b, line)
    let mut seen_elements = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        // allow `elements: a b; covers a<b` on one physical line
        for stmt in line.split(';') {
            let stmt = stmt.trim();
            if stmt.is_empty() {
                continue;
            }
            if let Some(rest) = stmt
                .strip_prefix("elements:")
                .or_else(|| stmt.strip_prefix("elements "))
            {
                for tok in rest.split([',', ' ', '\t']).map(str::trim) {
                    if tok.is_empty() {
                        continue;
                    }
                    if elements.contains(&tok.to_string()) {
                        return Err(Error::PosetParse {
                            line: lineno + 1,
                            msg: format!("duplicate element `{}`", tok),
                        });
                    }
                    elements.push(tok.to_string());
                }
                seen_elements = true;
            } else {
                let body = stmt.strip_prefix("covers").unwrap_or(stmt);
                for rel in body.split(',') {
                    let rel = rel.trim();
                    if rel.is_empty() {
                        continue;
                    }
                    let parts: Vec<&str> = rel.split('<').map(str::trim).collect();
                    if parts.len() != 2 || parts[0].is_empty() || parts[1].is_empty() {
                        return Err(Error::PosetParse {
                            line: lineno + 1,
                            msg: format!("expected `a < b`, got `{}`", rel),
                        });
                    }
                    if !seen_elements {
                        return Err(Error::PosetParse {
                            line: lineno + 1,
                            msg: "cover relation before `elements:` line".into(),
                        });
                    }
                    let a = elements.iter().position(|e| e == parts[0]).ok_or_else(|| {
                        Error::PosetParse {
                            line: lineno + 1,
                            msg: format!("unknown label `{}` in cover", parts[0]),
                        }
                    })?;
                    let b = elements.iter().position(|e| e == parts[1]).ok_or_else(|| {
                        Error::PosetParse {
                            line: lineno + 1,
                            msg: format!("unknown label `{}` in cover", parts[1]),
                        }
                    })?;
                    covers.push((a, b, lineno + 1));
                }
            }
        }
    }
    if !seen_elements {
        return Err(Error::PosetParse {
            line: 0,
            msg: "missing `elements:` line".into(),
        });
    }
    let plain: Vec<(usize, usize)> = covers.iter().map(|&(a, b, _)| (a, b)).collect();
    match FinitePoset::new(elements, plain) {
        Ok(p) => Ok(p),
        Err(Error::PosetParse { msg, .. }) => Err(Error::PosetParse {
            line: covers.last().map_or(0, |&(_, _, l)| l),
            msg,
        }),
        Err(e) => Err(e),
    }
}

/// Label of the basis element e_{x,y} of the incidence coalgebra.
pub fn pair_label(p: &FinitePoset, x: usize, y: usize) -> String {
    format!("e[{},{}]", p.elements()[x], p.elements()[y])
}

/// The incidence coalgebra of a finite poset:
/// Δ(e_{x,y}) = Σ_{x≤z≤y} e_{x,z} ⊗ e_{z,y}, ε(e_{x,y}) = δ_{x,y}.
pub fn build_incidence(p: &FinitePoset, field: Field) -> Coalgebra {
    let pairs = p.related_pairs();
    let index_of = |x: usize, y: usize| pairs.iter().position(|&q| q == (x, y)).unwrap();
    let basis: Vec<String> = pairs.iter().map(|&(x, y)| pair_label(p, x, y)).collect();
    let mut delta = Vec::with_capacity(pairs.len());
    let mut counit = Vec::with_capacity(pairs.len());
    for &(x, y) in &pairs {
        let terms = p
            .interval(x, y)
            .into_iter()
            .map(|z| (index_of(x, z), index_of(z, y), Scalar::one(field)))
            .collect();
        delta.push(terms);
        counit.push(if x == y {
            Scalar::one(field)
        } else {
            Scalar::zero(field)
        });
    }
    Coalgebra::new(field, basis, delta, counit).expect("incidence data is well-formed")
}

/// E_r(S_x) = span{ e_{x,y} : y ∈ x⁺ } as a right comodule over the
/// incidence coalgebra of `p` (which must be `coalg`).
pub fn e_r_injective(p: &FinitePoset, coalg: &Arc<Coalgebra>, x: usize) -> Result<Comodule> {
    if x >= p.len() {
        return Err(Error::UnknownElement(x.to_string()));
    }
    let ups = p.up_set(x);
    let basis: Vec<String> = ups.iter().map(|&y| pair_label(p, x, y)).collect();
    let m_index = |y: usize| ups.iter().position(|&u| u == y).unwrap();
    let field = coalg.field();
    let mut rho = Vec::with_capacity(ups.len());
    for &y in &ups {
        // ρ(e_{x,y}) = Σ_{z ∈ [x,y]} e_{x,z} ⊗ e_{z,y}
        let terms: Vec<(usize, usize, Scalar)> = p
            .interval(x, y)
            .into_iter()
            .map(|z| {
                let c_idx = coalg.label_index(&pair_label(p, z, y)).expect("basis label");
                (m_index(z), c_idx, Scalar::one(field))
            })
            .collect();
        rho.push(terms);
    }
    Comodule::new(Side::Right, basis, rho, Arc::clone(coalg))
}

/// E_l(S_x) = span{ e_{y,x} : y ∈ x⁻ } as a left comodule.
pub fn e_l_injective(p: &FinitePoset, coalg: &Arc<Coalgebra>, x: usize) -> Result<Comodule> {
    if x >= p.len() {
        return Err(Error::UnknownElement(x.to_string()));
    }
    let downs = p.down_set(x);
    let basis: Vec<String> = downs.iter().map(|&y| pair_label(p, y, x)).collect();
    let m_index = |y: usize| downs.iter().position(|&d| d == y).unwrap();
    let field = coalg.field();
    let mut rho = Vec::with_capacity(downs.len());
    for &y in &downs {
        // ρ(e_{y,x}) = Σ_{z ∈ [y,x]} e_{y,z} ⊗ e_{z,x} ∈ C ⊗ M
        let terms: Vec<(usize, usize, Scalar)> = p
            .interval(y, x)
            .into_iter()
            .map(|z| {
                let c_idx = coalg.label_index(&pair_label(p, y, z)).expect("basis label");
                (m_index(z), c_idx, Scalar::one(field))
            })
            .collect();
        rho.push(terms);
    }
    Comodule::new(Side::Left, basis, rho, Arc::clone(coalg))
}

/// dim Hom(E_r(S_x), E_r(S_u)): 1 if x ≤ u, else 0.
pub fn closed_form_hom_dim(p: &FinitePoset, x: usize, u: usize) -> Result<usize> {
    if x >= p.len() {
        return Err(Error::UnknownElement(x.to_string()));
    }
    if u >= p.len() {
        return Err(Error::UnknownElement(u.to_string()));
    }
    Ok(if p.leq(x, u) { 1 } else { 0 })
}

/// The morphism E_r(S_x) → E_r(S_u) with f(e_{x,y}) = α e_{u,y} when
/// u ∈ [x,y] and 0 otherwise.
pub fn construct_integral(
    p: &FinitePoset,
    coalg: &Arc<Coalgebra>,
    x: usize,
    u: usize,
    alpha: &Scalar,
) -> Result<ComoduleMorphism> {
    if !p.leq(x, u) && !alpha.is_zero() {
        return Err(Error::Precondition(format!(
            "{} ≰ {}: only the zero morphism exists",
            p.elements()[x],
            p.elements()[u]
        )));
    }
    let source = e_r_injective(p, coalg, x)?;
    let target = e_r_injective(p, coalg, u)?;
    let ups_x = p.up_set(x);
    let ups_u = p.up_set(u);
    let mut mat = Matrix::zero(target.dim(), source.dim(), coalg.field());
    for (col, &y) in ups_x.iter().enumerate() {
        if p.leq(x, u) && p.leq(u, y) {
            let row = ups_u.iter().position(|&v| v == y).expect("u ≤ y");
            mat.set(row, col, alpha.clone())?;
        }
    }
    ComoduleMorphism::new(source, target, mat)
}

/// A dimension that is either finite or countably infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CardinalDim {
    Finite(usize),
    CountablyInfinite,
}

impl std::ops::Add for CardinalDim {
    type Output = CardinalDim;

    fn add(self, other: CardinalDim) -> CardinalDim {
        match (self, other) {
            (CardinalDim::Finite(a), CardinalDim::Finite(b)) => CardinalDim::Finite(a + b),
            _ => CardinalDim::CountablyInfinite,
        }
    }
}

impl fmt::Display for CardinalDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardinalDim::Finite(n) => write!(f, "{}", n),
            CardinalDim::CountablyInfinite => write!(f, "infinite"),
        }
    }
}

/// User-declared cardinalities |u⁺| and |u⁻| for a point of a (possibly
/// infinite) locally finite poset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntegralProfile {
    pub u_plus: CardinalDim,
    pub u_minus: CardinalDim,
}

impl IntegralProfile {
    pub fn new(u_plus: CardinalDim, u_minus: CardinalDim) -> Result<Self> {
        for c in [u_plus, u_minus] {
            if let CardinalDim::Finite(0) = c {
                return Err(Error::Precondition(
                    "|u⁺| and |u⁻| are at least 1 (u belongs to both)".into(),
                ));
            }
        }
        Ok(IntegralProfile { u_plus, u_minus })
    }
}

/// For M = E_r(S_u): (dim M, dim ∫_{r,C,M}) = (|u⁺|, |u⁻|).
pub fn closed_form_integral_dims(profile: &IntegralProfile) -> (CardinalDim, CardinalDim) {
    (profile.u_plus, profile.u_minus)
}

/// Semiperfectness of the incidence coalgebra: right ⇔ every x⁻ finite,
/// left ⇔ every x⁺ finite. Both hold trivially for finite posets.
#[derive(Clone, Debug)]
pub struct SemiperfectReport {
    pub right: bool,
    pub left: bool,
    pub witness: String,
}

pub fn semiperfect_predicates(p: &FinitePoset) -> SemiperfectReport {
    let max_down = (0..p.len()).map(|x| p.down_set(x).len()).max().unwrap_or(0);
    let max_up = (0..p.len()).map(|x| p.up_set(x).len()).max().unwrap_or(0);
    SemiperfectReport {
        right: true,
        left: true,
        witness: format!(
            "finite poset: max |x⁻| = {}, max |x⁺| = {}",
            max_down, max_up
        ),
    }
}

/// The poset-level co-Frobenius criterion: the order is the equality.
pub fn equality_order(p: &FinitePoset) -> bool {
    p.covers().is_empty()
}

/// The chain x₁ < … < x_{n−1} < u < y₁ < … < y_{m−1}, with |u⁺| = m and
/// |u⁻| = n. Returns the poset and the index of u.
pub fn realizability_poset(m: usize, n: usize) -> Result<(FinitePoset, usize)> {
    if m == 0 || n == 0 {
        return Err(Error::Precondition("m and n must be positive".into()));
    }
    let mut elements: Vec<String> = (1..n).map(|i| format!("x{}", i)).collect();
    elements.push("u".to_string());
    elements.extend((1..m).map(|i| format!("y{}", i)));
    let covers = (1..elements.len()).map(|i| (i - 1, i)).collect();
    let p = FinitePoset::new(elements, covers)?;
    Ok((p, n - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_two_chain() {
        let p = parse_poset("elements: a b\na < b\n").unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.leq(0, 1));
        assert!(!p.leq(1, 0));
    }

    #[test]
    fn parse_inline_form() {
        let p = parse_poset("elements: a b; covers a<b").unwrap();
        assert_eq!(p.covers(), &[(0, 1)]);
    }

    #[test]
    fn parse_cycle_is_rejected() {
        let err = parse_poset("elements: a b\na < b\nb < a\n").unwrap_err();
        assert!(matches!(err, Error::PosetParse { .. }));
    }

    #[test]
    fn parse_duplicate_element() {
        assert!(parse_poset("elements: a a\n").is_err());
    }

    #[test]
    fn parse_unknown_label() {
        let err = parse_poset("elements: a b\na < c\n").unwrap_err();
        match err {
            Error::PosetParse { line, msg } => {
                assert_eq!(line, 2);
                assert!(msg.contains("unknown label"));
            }
            other => panic!("unexpected error {:?}", other),
        }
    }

    #[test]
    fn diamond_interval() {
        let p = parse_poset("elements: 0 a b 1\n0 < a, 0 < b, a < 1, b < 1\n").unwrap();
        assert_eq!(p.len(), 4);
        let iv = p.interval(0, 3);
        assert_eq!(iv, vec![0, 1, 2, 3]);
    }

    #[test]
    fn incidence_dims() {
        let two = FinitePoset::chain(2);
        assert_eq!(build_incidence(&two, Field::Q).dim(), 3);
        let anti = FinitePoset::antichain(4);
        assert_eq!(build_incidence(&anti, Field::Q).dim(), 4);
        let diamond = parse_poset("elements: 0 a b 1\n0 < a, 0 < b, a < 1, b < 1\n").unwrap();
        assert_eq!(build_incidence(&diamond, Field::Q).dim(), 9);
    }

    #[test]
    fn incidence_validates() {
        for p in [
            FinitePoset::chain(1),
            FinitePoset::chain(4),
            FinitePoset::antichain(3),
            parse_poset("elements: 0 a b 1\n0 < a, 0 < b, a < 1, b < 1\n").unwrap(),
        ] {
            assert!(build_incidence(&p, Field::Q).validate().passed());
        }
    }

    #[test]
    fn e_r_bases() {
        let p = FinitePoset::chain(2);
        let c = Arc::new(build_incidence(&p, Field::Q));
        let e0 = e_r_injective(&p, &c, 0).unwrap();
        assert_eq!(e0.dim(), 2);
        assert_eq!(e0.basis_labels(), &["e[0,0]".to_string(), "e[0,1]".to_string()]);
        let e1 = e_r_injective(&p, &c, 1).unwrap();
        assert_eq!(e1.dim(), 1);
        let l1 = e_l_injective(&p, &c, 1).unwrap();
        assert_eq!(l1.dim(), 2);
        assert_eq!(l1.basis_labels(), &["e[0,1]".to_string(), "e[1,1]".to_string()]);
    }

    #[test]
    fn closed_form_examples() {
        let p = FinitePoset::chain(2);
        assert_eq!(closed_form_hom_dim(&p, 0, 1).unwrap(), 1);
        assert_eq!(closed_form_hom_dim(&p, 1, 0).unwrap(), 0);
        assert_eq!(closed_form_hom_dim(&p, 1, 1).unwrap(), 1);
    }

    #[test]
    fn integral_profile_zero_rejected() {
        assert!(IntegralProfile::new(CardinalDim::Finite(0), CardinalDim::Finite(1)).is_err());
        let prof =
            IntegralProfile::new(CardinalDim::Finite(1), CardinalDim::Finite(2)).unwrap();
        assert_eq!(
            closed_form_integral_dims(&prof),
            (CardinalDim::Finite(1), CardinalDim::Finite(2))
        );
        let inf =
            IntegralProfile::new(CardinalDim::Finite(3), CardinalDim::CountablyInfinite).unwrap();
        assert_eq!(
            closed_form_integral_dims(&inf),
            (CardinalDim::Finite(3), CardinalDim::CountablyInfinite)
        );
    }

    #[test]
    fn equality_order_predicate() {
        assert!(equality_order(&FinitePoset::antichain(3)));
        assert!(!equality_order(&FinitePoset::chain(2)));
        let sp = semiperfect_predicates(&FinitePoset::chain(3));
        assert!(sp.right && sp.left);
    }

    #[test]
    fn realizability_shapes() {
        let (p, u) = realizability_poset(1, 1).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(u, 0);
        let (p, u) = realizability_poset(1, 2).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(u, 1);
        let (p, u) = realizability_poset(3, 2).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.up_set(u).len(), 3);
        assert_eq!(p.down_set(u).len(), 2);
    }
}
