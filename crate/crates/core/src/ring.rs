//! The ring R of smooth endomorphisms of C*, as matrices [[b,0],[c,v]].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::linalg::{self, RatMatrix};
use crate::rational::{format_rat, rat, Rat};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("expected {expected} rays of dimension {expected}, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("the b-vectors are linearly dependent")]
    BSingular,
    #[error("the v-vectors do not form a Z-basis (det {0})")]
    VNotUnimodular(i128),
}

/// Element (b, c, v) of R, the matrix [[b,0],[c,v]].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RElem {
    pub b: Rat,
    pub c: Rat,
    pub v: i64,
}

impl RElem {
    pub fn new(b: Rat, c: Rat, v: i64) -> Self {
        Self { b, c, v }
    }

    pub fn ints(b: i64, c: i64, v: i64) -> Self {
        Self::new(rat(b), rat(c), v)
    }

    pub fn one() -> Self {
        Self::ints(1, 0, 1)
    }

    pub fn zero() -> Self {
        Self::ints(0, 0, 0)
    }

    /// μ₀ = (1, 0, −1), the complex conjugation.
    pub fn mu0() -> Self {
        Self::ints(1, 0, -1)
    }

    pub fn is_zero(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.v == 0
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.b.clone(), -self.c.clone(), -self.v)
    }

    /// Membership in 𝒮 = {b > 0, v = ±1}.
    pub fn in_s(&self) -> bool {
        self.b.is_positive() && (self.v == 1 || self.v == -1)
    }

    /// g ↦ g^p ḡ^q for integers p, q: b integral, b ≡ v mod 2, c = 0.
    pub fn is_laurent(&self) -> bool {
        self.c.is_zero()
            && self.b.is_integer()
            && (self.b.to_integer() - BigInt::from(self.v)).is_even()
    }

    /// Algebraic elements: b = v, c = 0.
    pub fn is_algebraic(&self) -> bool {
        self.c.is_zero() && self.b == rat(self.v)
    }

    pub fn as_matrix(&self) -> RatMatrix {
        vec![vec![self.b.clone(), Rat::zero()], vec![self.c.clone(), rat(self.v)]]
    }
}

impl Add for &RElem {
    type Output = RElem;
    fn add(self, o: &RElem) -> RElem {
        RElem::new(&self.b + &o.b, &self.c + &o.c, self.v + o.v)
    }
}

impl Sub for &RElem {
    type Output = RElem;
    fn sub(self, o: &RElem) -> RElem {
        RElem::new(&self.b - &o.b, &self.c - &o.c, self.v - o.v)
    }
}

impl Neg for &RElem {
    type Output = RElem;
    fn neg(self) -> RElem {
        RElem::new(-self.b.clone(), -self.c.clone(), -self.v)
    }
}

/// `self * o` is the matrix product, i.e. μ₂μ₁ with μ₂ = self.
impl Mul for &RElem {
    type Output = RElem;
    fn mul(self, o: &RElem) -> RElem {
        RElem::new(&self.b * &o.b, &o.b * &self.c + &o.c * rat(self.v), self.v * o.v)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for RElem {
            type Output = RElem;
            fn $f(self, o: RElem) -> RElem { (&self).$f(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl fmt::Display for RElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", format_rat(&self.b), format_rat(&self.c), self.v)
    }
}

/// `[b_num, b_den, c_num, c_den, v]`.
impl Serialize for RElem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let parts = [
            self.b.numer().to_string(),
            self.b.denom().to_string(),
            self.c.numer().to_string(),
            self.c.denom().to_string(),
            self.v.to_string(),
        ];
        let nums: Vec<serde_json::Value> = parts
            .iter()
            .map(|p| match p.parse::<i64>() {
                Ok(x) => serde_json::Value::from(x),
                Err(_) => serde_json::Value::from(p.clone()),
            })
            .collect();
        nums.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<serde_json::Value>::deserialize(d)?;
        if raw.len() != 5 {
            return Err(de::Error::custom("RElem needs [b_num, b_den, c_num, c_den, v]"));
        }
        let int = |v: &serde_json::Value| -> Result<BigInt, D::Error> {
            match v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| de::Error::custom("non-integral component")),
                serde_json::Value::String(s) => s.parse().map_err(de::Error::custom),
                _ => Err(de::Error::custom("expected integer")),
            }
        };
        let (bn, bd, cn, cd) = (int(&raw[0])?, int(&raw[1])?, int(&raw[2])?, int(&raw[3])?);
        if bd.is_zero() || cd.is_zero() {
            return Err(de::Error::custom("zero denominator"));
        }
        let v = raw[4].as_i64().ok_or_else(|| de::Error::custom("v must be an integer"))?;
        Ok(RElem::new(Rat::new(bn, bd), Rat::new(cn, cd), v))
    }
}

/// A vector in Rⁿ stored as its three coordinate vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RVec {
    pub b: Vec<Rat>,
    pub c: Vec<Rat>,
    pub v: Vec<i64>,
}

impl RVec {
    pub fn new(b: Vec<Rat>, c: Vec<Rat>, v: Vec<i64>) -> Self {
        assert!(b.len() == c.len() && c.len() == v.len(), "RVec parts must have equal length");
        Self { b, c, v }
    }

    /// b = v, c = 0.
    pub fn algebraic(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&x| rat(x)).collect(), vec![Rat::zero(); v.len()], v.to_vec())
    }

    pub fn from_elems(es: &[RElem]) -> Self {
        Self::new(
            es.iter().map(|e| e.b.clone()).collect(),
            es.iter().map(|e| e.c.clone()).collect(),
            es.iter().map(|e| e.v).collect(),
        )
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(vec![Rat::zero(); n], vec![Rat::zero(); n], vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }

    pub fn get(&self, k: usize) -> RElem {
        RElem::new(self.b[k].clone(), self.c[k].clone(), self.v[k])
    }

    pub fn elems(&self) -> Vec<RElem> {
        (0..self.len()).map(|k| self.get(k)).collect()
    }

    pub fn add(&self, o: &RVec) -> RVec {
        RVec::from_elems(&self.elems().iter().zip(o.elems()).map(|(a, b)| a + &b).collect::<Vec<_>>())
    }

    /// Componentwise right multiplication β·μ, i.e. βᵏμ in each slot.
    pub fn right_mul(&self, mu: &RElem) -> RVec {
        RVec::from_elems(&self.elems().iter().map(|e| e * mu).collect::<Vec<_>>())
    }

    pub fn conjugate(&self) -> RVec {
        self.right_mul(&RElem::mu0())
    }
}

/// ⟨α, β⟩ = Σ_k αᵏβᵏ.
pub fn pairing(alpha: &RVec, beta: &RVec) -> Result<RElem, RingError> {
    if alpha.len() != beta.len() {
        return Err(RingError::LengthMismatch(alpha.len(), beta.len()));
    }
    let mut acc = RElem::zero();
    for k in 0..alpha.len() {
        acc = &acc + &(&alpha.get(k) * &beta.get(k));
    }
    Ok(acc)
}

/// The α_i with ⟨α_i, β_j⟩ = δ_ij 𝟏, in the order of `betas`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualBasis {
    pub alphas: Vec<RVec>,
}

fn parts(betas: &[RVec]) -> Result<(RatMatrix, RatMatrix, Vec<Vec<i64>>), RingError> {
    let n = betas.first().map_or(0, RVec::len);
    if betas.len() != n {
        return Err(RingError::WrongCount { expected: n, got: betas.len() });
    }
    let bcols: Vec<Vec<Rat>> = betas.iter().map(|r| r.b.clone()).collect();
    let ccols: Vec<Vec<Rat>> = betas.iter().map(|r| r.c.clone()).collect();
    let vcols: Vec<Vec<i64>> = betas.iter().map(|r| r.v.clone()).collect();
    Ok((linalg::from_columns(&bcols), linalg::from_columns(&ccols), linalg::from_int_columns(&vcols)))
}

/// Dual set via the block inverse [[B⁻¹, 0], [−V⁻¹CB⁻¹, V⁻¹]].
pub fn dual_basis(betas: &[RVec]) -> Result<DualBasis, RingError> {
    let (b, c, v) = parts(betas)?;
    let n = betas.len();
    let binv = linalg::inverse(&b).ok_or(RingError::BSingular)?;
    let dv = linalg::det_int(&v);
    if dv.abs() != 1 {
        return Err(RingError::VNotUnimodular(dv));
    }
    let vrat: RatMatrix = v.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    let vinv = linalg::inverse(&vrat).expect("unimodular matrix is invertible");
    let cpart = linalg::mat_mul(&linalg::mat_mul(&vinv, &c), &binv);
    let alphas = (0..n)
        .map(|i| {
            RVec::new(
                binv[i].clone(),
                cpart[i].iter().map(|x| -x.clone()).collect(),
                vinv[i].iter().map(|x| x.to_integer().try_into().expect("unimodular inverse is small")).collect(),
            )
        })
        .collect();
    Ok(DualBasis { alphas })
}

/// sign(det B · det V); +1 or −1.
pub fn orientation_sign(betas: &[RVec]) -> Result<i32, RingError> {
    let (b, _, v) = parts(betas)?;
    let db = linalg::det(&b);
    if db.is_zero() {
        return Err(RingError::BSingular);
    }
    let dv = linalg::det_int(&v);
    if dv == 0 {
        return Err(RingError::VNotUnimodular(0));
    }
    let s = if db.is_positive() { 1 } else { -1 };
    Ok(if dv > 0 { s } else { -s })
}

/// The 2n×2n real matrix with the 2×2 block of β_iᵏ at block position (k, i).
pub fn interleaved_matrix(betas: &[RVec]) -> RatMatrix {
    let n = betas.len();
    let mut m = vec![vec![Rat::zero(); 2 * n]; 2 * n];
    for (i, beta) in betas.iter().enumerate() {
        for k in 0..beta.len() {
            let blk = beta.get(k).as_matrix();
            for r in 0..2 {
                for c in 0..2 {
                    m[2 * k + r][2 * i + c] = blk[r][c].clone();
                }
            }
        }
    }
    m
}

impl Zero for RElem {
    fn zero() -> Self {
        RElem::zero()
    }
    fn is_zero(&self) -> bool {
        RElem::is_zero(self)
    }
}

impl One for RElem {
    fn one() -> Self {
        RElem::one()
    }
}
