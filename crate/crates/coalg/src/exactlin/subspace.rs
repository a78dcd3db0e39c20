use crate::error::{Error, Result};

use super::matrix::{kernel_basis, Echelon, Matrix};
use super::scalar::{Field, Scalar};

/// A subspace of k^n, stored as a reduced-echelon basis.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceBasis {
    ambient: usize,
    field: Field,
    vectors: Vec<Vec<Scalar>>, // reduced echelon rows, pivots strictly increasing
}

impl SubspaceBasis {
    pub fn zero(ambient: usize, field: Field) -> Self {
        SubspaceBasis {
            ambient,
            field,
            vectors: Vec::new(),
        }
    }

    pub fn full(ambient: usize, field: Field) -> Self {
        let id = Matrix::identity(ambient, field);
        SubspaceBasis {
            ambient,
            field,
            vectors: (0..ambient).map(|i| id.dense_row(i)).collect(),
        }
    }

    /// Span of the given vectors, echelonized.
    pub fn from_vectors(ambient: usize, field: Field, vecs: &[Vec<Scalar>]) -> Result<Self> {
        let mut ech = Echelon::new(ambient, field);
        for v in vecs {
            if v.len() != ambient {
                return Err(Error::AmbientMismatch(v.len(), ambient));
            }
            for s in v {
                if s.field() != field {
                    return Err(Error::FieldMismatch {
                        expected: field,
                        got: s.field(),
                    });
                }
            }
            ech.insert(
                v.iter()
                    .enumerate()
                    .filter(|(_, s)| !s.is_zero())
                    .map(|(j, s)| (j, s.clone()))
                    .collect(),
            );
        }
        Ok(SubspaceBasis {
            ambient,
            field,
            vectors: ech.rows_dense(),
        })
    }

    /// Kernel of a matrix as a subspace of k^cols.
    pub fn kernel_of(m: &Matrix) -> Self {
        let vecs = kernel_basis(m);
        SubspaceBasis::from_vectors(m.cols(), m.field(), &vecs).expect("kernel vectors fit")
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vectors(&self) -> &[Vec<Scalar>] {
        &self.vectors
    }

    fn echelon(&self) -> Echelon {
        let mut ech = Echelon::new(self.ambient, self.field);
        for v in &self.vectors {
            ech.insert(
                v.iter()
                    .enumerate()
                    .filter(|(_, s)| !s.is_zero())
                    .map(|(j, s)| (j, s.clone()))
                    .collect(),
            );
        }
        ech
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.echelon().contains(v)
    }

    pub fn contains(&self, other: &SubspaceBasis) -> bool {
        let ech = self.echelon();
        other.vectors.iter().all(|v| ech.contains(v))
    }

    fn check_compatible(&self, other: &SubspaceBasis) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                expected: self.field,
                got: other.field,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.check_compatible(other)?;
        let mut all = self.vectors.clone();
        all.extend(other.vectors.iter().cloned());
        SubspaceBasis::from_vectors(self.ambient, self.field, &all)
    }

    /// U ∩ V via the kernel of the column matrix [u_1 … u_r, -v_1 … -v_s].
    pub fn intersection(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.check_compatible(other)?;
        let (r, s) = (self.dim(), other.dim());
        let mut m = Matrix::zero(self.ambient, r + s, self.field);
        for (c, u) in self.vectors.iter().enumerate() {
            for (row, val) in u.iter().enumerate() {
                m.set(row, c, val.clone())?;
            }
        }
        for (c, v) in other.vectors.iter().enumerate() {
            for (row, val) in v.iter().enumerate() {
                m.set(row, r + c, -val.clone())?;
            }
        }
        let ker = kernel_basis(&m);
        let mut vecs = Vec::with_capacity(ker.len());
        for coeffs in ker {
            let mut w = vec![Scalar::zero(self.field); self.ambient];
            for (c, u) in self.vectors.iter().enumerate() {
                for (row, val) in u.iter().enumerate() {
                    w[row] = w[row].clone() + coeffs[c].clone() * val.clone();
                }
            }
            vecs.push(w);
        }
        SubspaceBasis::from_vectors(self.ambient, self.field, &vecs)
    }

    /// { v : u·v = 0 for all u in self }, the annihilator under the dot pairing.
    pub fn annihilator(&self) -> SubspaceBasis {
        let m = Matrix::from_rows(self.field, self.vectors.clone()).expect("echelon rows");
        if self.vectors.is_empty() {
            return SubspaceBasis::full(self.ambient, self.field);
        }
        SubspaceBasis::kernel_of(&m)
    }
}

/// (sum, intersection, self ⊆ other, other ⊆ self)
pub fn subspace_ops(
    u: &SubspaceBasis,
    v: &SubspaceBasis,
) -> Result<(SubspaceBasis, SubspaceBasis, bool, bool)> {
    let sum = u.sum(v)?;
    let inter = u.intersection(v)?;
    Ok((sum, inter, v.contains(u), u.contains(v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qvec(ns: &[i64]) -> Vec<Scalar> {
        ns.iter().map(|&n| Scalar::from_int(n, Field::Q)).collect()
    }

    #[test]
    fn equal_subspaces() {
        let u = SubspaceBasis::from_vectors(2, Field::Q, &[qvec(&[1, 2])]).unwrap();
        let (sum, inter, a, b) = subspace_ops(&u, &u).unwrap();
        assert_eq!(sum, u);
        assert_eq!(inter, u);
        assert!(a && b);
    }

    #[test]
    fn complementary_lines() {
        let u = SubspaceBasis::from_vectors(2, Field::Q, &[qvec(&[1, 0])]).unwrap();
        let v = SubspaceBasis::from_vectors(2, Field::Q, &[qvec(&[0, 1])]).unwrap();
        let (sum, inter, a, b) = subspace_ops(&u, &v).unwrap();
        assert_eq!(sum.dim(), 2);
        assert_eq!(inter.dim(), 0);
        assert!(!a && !b);
    }

    #[test]
    fn planes_sharing_a_line() {
        let u =
            SubspaceBasis::from_vectors(3, Field::Q, &[qvec(&[1, 0, 0]), qvec(&[0, 1, 0])]).unwrap();
        let v =
            SubspaceBasis::from_vectors(3, Field::Q, &[qvec(&[0, 1, 0]), qvec(&[0, 0, 1])]).unwrap();
        let (sum, inter, _, _) = subspace_ops(&u, &v).unwrap();
        assert_eq!(sum.dim(), 3);
        assert_eq!(inter.dim(), 1);
        assert!(inter.contains_vector(&qvec(&[0, 1, 0])));
    }

    #[test]
    fn ambient_mismatch_rejected() {
        let u = SubspaceBasis::zero(2, Field::Q);
        let v = SubspaceBasis::zero(3, Field::Q);
        assert!(subspace_ops(&u, &v).is_err());
    }

    #[test]
    fn annihilator_dims() {
        let u = SubspaceBasis::from_vectors(3, Field::Q, &[qvec(&[1, 1, 0])]).unwrap();
        let ann = u.annihilator();
        assert_eq!(ann.dim(), 2);
        assert!(ann.contains_vector(&qvec(&[1, -1, 0])));
    }
}
