use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The base field: exact rationals or a prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Q,
    Fp(u64),
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Fp(p) => write!(f, "F{}", p),
        }
    }
}

impl Field {
    /// All nonzero field elements, for exhaustive enumeration oracles.
    /// Only meaningful over F_p.
    pub fn elements(&self) -> Vec<Scalar> {
        match self {
            Field::Q => panic!("cannot enumerate Q"),
            Field::Fp(p) => (0..*p).map(|v| Scalar::fp(v, *p)).collect(),
        }
    }
}

/// An exact field element tagged with its field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rat(BigRational),
    Mod(u64, u64), // value, prime; value reduced to [0, p)
}

impl Scalar {
    pub fn zero(field: Field) -> Self {
        match field {
            Field::Q => Scalar::Rat(BigRational::zero()),
            Field::Fp(p) => Scalar::Mod(0, p),
        }
    }

    pub fn one(field: Field) -> Self {
        match field {
            Field::Q => Scalar::Rat(BigRational::one()),
            Field::Fp(p) => Scalar::Mod(1 % p, p),
        }
    }

    pub fn from_int(n: i64, field: Field) -> Self {
        match field {
            Field::Q => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Fp(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                Scalar::Mod(r, p)
            }
        }
    }

    pub fn rat(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn fp(v: u64, p: u64) -> Self {
        Scalar::Mod(v % p, p)
    }

    /// Build a scalar from a numerator/denominator pair in the given field.
    /// Over F_p the denominator is inverted mod p.
    pub fn from_fraction(num: i64, den: i64, field: Field) -> Self {
        match field {
            Field::Q => Scalar::rat(num, den),
            Field::Fp(_) => {
                let d = Scalar::from_int(den, field);
                Scalar::from_int(num, field) * d.inv().expect("denominator is 0 mod p")
            }
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Q,
            Scalar::Mod(_, p) => Field::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod(v, p) => *v == 1 % *p,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(r.recip()))
                }
            }
            Scalar::Mod(v, p) => {
                if *v == 0 {
                    None
                } else {
                    Some(Scalar::Mod(mod_inv(*v, *p), *p))
                }
            }
        }
    }

    fn check_same_field(&self, other: &Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "scalar arithmetic across different fields"
        );
    }
}

// p is expected prime; panics if v is not invertible.
fn mod_inv(v: u64, p: u64) -> u64 {
    // extended Euclid on (v, p)
    let (mut r0, mut r1) = (v as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert_eq!(r0, 1, "{} is not invertible mod {}", v, p);
    s0.rem_euclid(p as i128) as u64
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.check_same_field(&rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod(a, p), Scalar::Mod(b, _)) => Scalar::Mod((a + b) % p, p),
            _ => unreachable!(),
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.check_same_field(&rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod(a, p), Scalar::Mod(b, _)) => Scalar::Mod((a + p - b) % p, p),
            _ => unreachable!(),
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.check_same_field(&rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod(a, p), Scalar::Mod(b, _)) => {
                Scalar::Mod(((a as u128 * b as u128) % p as u128) as u64, p)
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod(a, p) => Scalar::Mod((p - a) % p, p),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod(v, _) => write!(f, "{}", v),
        }
    }
}

impl Scalar {
    /// Numerator/denominator view used by the JSON file formats.
    pub fn to_fraction(&self) -> (String, String) {
        match self {
            Scalar::Rat(r) => (r.numer().to_string(), r.denom().to_string()),
            Scalar::Mod(v, _) => (v.to_string(), "1".to_string()),
        }
    }

    /// Rough magnitude used only to pick readable representatives in output.
    pub fn complexity(&self) -> usize {
        match self {
            Scalar::Rat(r) => {
                r.numer().abs().to_string().len() + r.denom().to_string().len()
            }
            Scalar::Mod(v, _) => *v as usize,
        }
    }
}
