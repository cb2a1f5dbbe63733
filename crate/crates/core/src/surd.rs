//! Exact arithmetic in real quadratic fields `Q(√d)`.
//!
//! Orthogonal intertwiners between coset representations generally have
//! irrational entries (the Fano-plane pair needs `√2`), so "exact" here
//! means exact in a single quadratic extension of the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::{format_q, parse_q, q, rational_sqrt, QMatrix, Q};

/// `rational + coeff·√radicand` with `radicand` square-free and `> 1`, or
/// `radicand = 1` and `coeff = 0` for plain rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    rational: Q,
    coeff: Q,
    radicand: u64,
}

impl Surd {
    pub fn zero() -> Self {
        Self::from(Q::zero())
    }

    pub fn one() -> Self {
        Self::from(Q::one())
    }

    pub fn new(rational: Q, coeff: Q, radicand: u64) -> Self {
        assert!(radicand > 0, "radicand must be positive");
        let (square, free) = split_square(radicand);
        let coeff = coeff * Q::from_integer(BigInt::from(square));
        if coeff.is_zero() || free == 1 {
            let extra = if free == 1 { coeff } else { Q::zero() };
            return Self {
                rational: rational + extra,
                coeff: Q::zero(),
                radicand: 1,
            };
        }
        Self {
            rational,
            coeff,
            radicand: free,
        }
    }

    /// `√x` for a non-negative rational.
    pub fn sqrt_of_rational(x: &Q) -> Option<Self> {
        if x.is_negative() {
            return None;
        }
        // √(n/d) = √(n·d) / d
        let nd = (x.numer() * x.denom()).to_u64()?;
        Some(Self::new(
            Q::zero(),
            Q::new(BigInt::one(), x.denom().clone()),
            nd,
        ))
    }

    pub fn rational_part(&self) -> &Q {
        &self.rational
    }

    pub fn irrational_part(&self) -> &Q {
        &self.coeff
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Q> {
        self.is_rational().then_some(&self.rational)
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.coeff.is_zero()
    }

    fn common_radicand(&self, other: &Self) -> u64 {
        match (self.radicand, other.radicand) {
            (1, d) | (d, 1) => d,
            (a, b) if a == b => a,
            (a, b) => panic!("mixing Q(√{a}) and Q(√{b})"),
        }
    }

    /// Sign of the real number: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let a = sign(&self.rational);
        let b = sign(&self.coeff);
        if b == 0 {
            return a;
        }
        if a == 0 || a == b {
            return b;
        }
        // opposite signs: compare a² with d·b²
        let a2 = &self.rational * &self.rational;
        let db2 = &self.coeff * &self.coeff * q(self.radicand as i64);
        match a2.cmp(&db2) {
            std::cmp::Ordering::Greater => a,
            std::cmp::Ordering::Less => b,
            std::cmp::Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Conjugate `a - b√d`.
    pub fn conjugate(&self) -> Self {
        Self {
            rational: self.rational.clone(),
            coeff: -self.coeff.clone(),
            radicand: self.radicand,
        }
    }

    /// Field norm `a² - d·b²`.
    pub fn norm(&self) -> Q {
        &self.rational * &self.rational - &self.coeff * &self.coeff * q(self.radicand as i64)
    }

    pub fn recip(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conjugate();
        Some(Self {
            rational: c.rational / &n,
            coeff: c.coeff / &n,
            radicand: self.radicand,
        })
    }

    /// Exact square root inside `Q(√d)` (or a fresh `Q(√k)` when `self` is
    /// rational). Returns `None` if the root is not expressible that way.
    pub fn sqrt(&self) -> Option<Self> {
        if self.signum() < 0 {
            return None;
        }
        if self.is_rational() {
            return Self::sqrt_of_rational(&self.rational);
        }
        // (p + r√d)² = p² + d r² + 2pr√d
        let a = &self.rational;
        let b = &self.coeff;
        let w = rational_sqrt(&self.norm())?;
        let two = q(2);
        for cand in [(a + &w) / &two, (a - &w) / &two] {
            if let Some(p) = rational_sqrt(&cand) {
                if p.is_zero() {
                    continue;
                }
                let r = b / (&two * &p);
                let root = Self {
                    rational: p,
                    coeff: r,
                    radicand: self.radicand,
                };
                if &root * &root == *self {
                    return Some(root.abs());
                }
            }
        }
        None
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        let b = self.coeff.to_f64().unwrap_or(f64::NAN);
        a + b * (self.radicand as f64).sqrt()
    }

    /// Text form: `"p/q"` for rationals, `"a+b*sqrt(d)"` otherwise.
    pub fn to_text(&self) -> String {
        if self.is_rational() {
            return format_q(&self.rational);
        }
        let b = format_q(&self.coeff);
        let b = if b.starts_with('-') {
            b
        } else {
            format!("+{b}")
        };
        format!("{}{}*sqrt({})", format_q(&self.rational), b, self.radicand)
    }

    pub fn parse(text: &str) -> Option<Self> {
        let t = text.trim();
        let Some(stripped) = t.strip_suffix(')') else {
            return parse_q(t).map(Self::from);
        };
        let (head, radicand) = stripped.rsplit_once("*sqrt(")?;
        let radicand: u64 = radicand.parse().ok()?;
        // split head into rational and coefficient at the last sign that is not leading
        let split = head
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last()?;
        let rational = parse_q(&head[..split])?;
        let coeff_text = head[split..].trim_start_matches('+');
        let coeff = parse_q(coeff_text)?;
        Some(Self::new(rational, coeff, radicand))
    }
}

fn sign(x: &Q) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Writes `n = s²·f` with `f` square-free; returns `(s, f)`.
fn split_square(mut n: u64) -> (u64, u64) {
    let mut square = 1;
    let mut free = 1;
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        square *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
        p += 1;
    }
    (square, free * n)
}

impl From<Q> for Surd {
    fn from(rational: Q) -> Self {
        Self {
            rational,
            coeff: Q::zero(),
            radicand: 1,
        }
    }
}

impl From<i64> for Surd {
    fn from(n: i64) -> Self {
        Self::from(q(n))
    }
}

impl<'a> Add<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn add(self, rhs: &'a Surd) -> Surd {
        let d = self.common_radicand(rhs);
        Surd::normalised(&self.rational + &rhs.rational, &self.coeff + &rhs.coeff, d)
    }
}

impl<'a> Sub<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn sub(self, rhs: &'a Surd) -> Surd {
        let d = self.common_radicand(rhs);
        Surd::normalised(&self.rational - &rhs.rational, &self.coeff - &rhs.coeff, d)
    }
}

impl<'a> Mul<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn mul(self, rhs: &'a Surd) -> Surd {
        let d = self.common_radicand(rhs);
        let rational = &self.rational * &rhs.rational + &self.coeff * &rhs.coeff * q(d as i64);
        let coeff = &self.rational * &rhs.coeff + &self.coeff * &rhs.rational;
        Surd::normalised(rational, coeff, d)
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, rhs: Surd) -> Surd {
        &self + &rhs
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, rhs: Surd) -> Surd {
        &self - &rhs
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, rhs: Surd) -> Surd {
        &self * &rhs
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            rational: -self.rational,
            coeff: -self.coeff,
            radicand: self.radicand,
        }
    }
}

impl Surd {
    fn normalised(rational: Q, coeff: Q, radicand: u64) -> Self {
        if coeff.is_zero() {
            Self::from(rational)
        } else {
            Self {
                rational,
                coeff,
                radicand,
            }
        }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Surd({})", self.to_text())
    }
}

/// Dense row-major matrix over `Q(√d)`.
#[derive(Clone, PartialEq, Eq)]
pub struct SurdMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Surd>,
}

impl SurdMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Surd::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Surd::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Surd>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_q(m: &QMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: (0..m.rows())
                .flat_map(|i| m.row(i).iter().cloned().map(Surd::from).collect::<Vec<_>>())
                .collect(),
        }
    }

    /// The matrix as rationals, if every entry is rational.
    pub fn to_q(&self) -> Option<QMatrix> {
        let rows: Option<Vec<Vec<Q>>> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.as_rational().cloned())
                    .collect()
            })
            .collect();
        Some(QMatrix::from_rows_with_cols(&rows?, self.cols))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Surd] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Surd> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Surd>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &SurdMatrix) -> SurdMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Surd]) -> Vec<Surd> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Surd::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    pub fn scale(&self, s: &Surd) -> SurdMatrix {
        SurdMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &SurdMatrix) -> SurdMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        SurdMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &SurdMatrix) -> SurdMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        SurdMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Surd::is_zero)
    }

    /// Exactly `MᵀM = I`.
    pub fn is_orthogonal(&self) -> bool {
        self.rows == self.cols && self.transpose().mul(self) == Self::identity(self.rows)
    }

    pub fn is_rational(&self) -> bool {
        self.data.iter().all(Surd::is_rational)
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(Surd::to_f64).collect())
            .collect()
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &SurdMatrix) -> SurdMatrix {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for SurdMatrix {
    type Output = Surd;
    fn index(&self, (i, j): (usize, usize)) -> &Surd {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for SurdMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Surd {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for SurdMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SurdMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(Surd::to_text).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q_frac;

    fn s(a: Q, b: Q, d: u64) -> Surd {
        Surd::new(a, b, d)
    }

    #[test]
    fn field_operations() {
        let r2 = s(q(0), q(1), 2);
        assert_eq!(&r2 * &r2, Surd::from(2));
        let x = s(q(1), q(1), 2);
        let inv = x.recip().unwrap();
        assert_eq!(&x * &inv, Surd::one());
        assert_eq!(Surd::new(q(0), q(1), 8), s(q(0), q(2), 2));
        assert!(Surd::new(q(3), q(5), 9).is_rational());
    }

    #[test]
    fn signs() {
        assert_eq!(s(q(1), q(-1), 2).signum(), -1);
        assert_eq!(s(q(2), q(-1), 2).signum(), 1);
        assert_eq!(s(q(-3), q(2), 2).signum(), -1);
        assert_eq!(Surd::zero().signum(), 0);
    }

    #[test]
    fn square_roots() {
        // √(9 - 4√2) = 2√2 - 1
        let x = s(q(9), q(-4), 2);
        let r = x.sqrt().unwrap();
        assert_eq!(r, s(q(-1), q(2), 2));
        assert_eq!(
            Surd::from(q_frac(1, 2)).sqrt().unwrap(),
            s(q(0), q_frac(1, 2), 2)
        );
        assert!(s(q(1), q(1), 2).sqrt().is_none());
        assert!(Surd::from(-1).sqrt().is_none());
    }

    #[test]
    fn text_round_trip() {
        for v in [
            s(q_frac(3, 7), q_frac(-2, 7), 2),
            s(q(0), q(1), 3),
            Surd::from(q_frac(-5, 2)),
        ] {
            assert_eq!(Surd::parse(&v.to_text()).unwrap(), v);
        }
        assert_eq!(
            s(q_frac(1, 2), q_frac(1, 3), 2).to_text(),
            "1/2+1/3*sqrt(2)"
        );
    }

    #[test]
    fn rotation_by_eighth_turn_is_orthogonal() {
        let h = s(q(0), q_frac(1, 2), 2);
        let m = SurdMatrix::from_rows(vec![vec![h.clone(), -h.clone()], vec![h.clone(), h]]);
        assert!(m.is_orthogonal());
        assert!(!m.is_rational());
        assert!(!m.scale(&Surd::from(2)).is_orthogonal());
        let q_id = SurdMatrix::identity(3).to_q().unwrap();
        assert_eq!(q_id, QMatrix::identity(3));
    }

    #[test]
    #[should_panic(expected = "mixing")]
    fn mixed_fields_panic() {
        let _ = &s(q(0), q(1), 2) + &s(q(0), q(1), 3);
    }
}
