//! Integer polynomials in `z`, exact Gaussian-integer evaluation, and the
//! Conway polynomials this crate knows about.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("the K_n family starts at n = 1")]
    ZeroIndex,
    #[error("value at 2i has imaginary part {0}; not the Conway polynomial of a knot")]
    NotAKnotPolynomial(BigInt),
}

/// Polynomial with integer coefficients, stored from degree 0 upward with
/// trailing zeros trimmed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn z() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval_gauss(&self, z: &GaussInt) -> GaussInt {
        self.coeffs.iter().rev().fold(GaussInt::zero(), |acc, c| {
            &(&acc * z) + &GaussInt::real(c.clone())
        })
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match deg {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if deg == 1 {
                        f.write_str("z")?;
                    } else {
                        write!(f, "z^{deg}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        IntPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

/// Exact Gaussian integer `re + im·i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        Self {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn real(re: BigInt) -> Self {
        Self {
            re,
            im: BigInt::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    /// The evaluation point `2i = t - t⁻¹` at `t = i`.
    pub fn two_i() -> Self {
        Self::new(0, 2)
    }
}

impl Add for &GaussInt {
    type Output = GaussInt;
    fn add(self, rhs: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Mul for &GaussInt {
    type Output = GaussInt;
    fn mul(self, rhs: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_negative() {
            write!(f, "{} - {}i", self.re, -&self.im)
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

pub fn eval_gauss(p: &IntPoly, z: &GaussInt) -> GaussInt {
    p.eval_gauss(z)
}

/// Conway polynomial of the `n`-th member of the C(n)-witness family:
/// `∇(K₁) = -z⁶ - z⁴ + 1` and `∇(Kₙ) = 1 + z² - z²·∇(Kₙ₋₁)`.
pub fn conway_kn(n: u32) -> Result<IntPoly, PolyError> {
    if n == 0 {
        return Err(PolyError::ZeroIndex);
    }
    let base = IntPoly::from_i64(&[1, 0, 0, 0, -1, 0, -1]);
    let one_plus_z2 = IntPoly::from_i64(&[1, 0, 1]);
    let z2 = IntPoly::from_i64(&[0, 0, 1]);
    Ok((1..n).fold(base, |prev, _| &one_plus_z2 - &(&z2 * &prev)))
}

/// `Δ_K(-1) = ∇(K)(2i)`, signed. Its absolute value is the determinant.
pub fn alexander_at_minus1(conway: &IntPoly) -> Result<BigInt, PolyError> {
    let v = conway.eval_gauss(&GaussInt::two_i());
    if !v.im.is_zero() {
        return Err(PolyError::NotAKnotPolynomial(v.im));
    }
    Ok(v.re)
}

/// Checks `∇(L₊) - ∇(L₋) = z·∇(L₀)` exactly.
pub fn skein_verify(p_plus: &IntPoly, p_minus: &IntPoly, p_zero: &IntPoly) -> bool {
    (p_plus - p_minus) == (&IntPoly::z() * p_zero)
}

/// A stored Conway polynomial of a classical knot or link.
#[derive(Debug, Clone)]
pub struct KnownPolynomial {
    pub name: &'static str,
    pub is_knot: bool,
    pub conway: IntPoly,
}

pub fn known_polynomials() -> Vec<KnownPolynomial> {
    let entry = |name, is_knot, c: &[i64]| KnownPolynomial {
        name,
        is_knot,
        conway: IntPoly::from_i64(c),
    };
    vec![
        entry("unknot", true, &[1]),
        entry("trefoil", true, &[1, 0, 1]),
        entry("figure-eight", true, &[1, 0, -1]),
        entry("hopf-link", false, &[0, 1]),
        entry("unlink-2", false, &[]),
    ]
}

pub fn known_polynomial(name: &str) -> Option<IntPoly> {
    known_polynomials()
        .into_iter()
        .find(|k| k.name == name)
        .map(|k| k.conway)
}

/// A crossing-change triple `(L₊, L₋, L₀)` by name.
#[derive(Debug, Clone, Copy)]
pub struct SkeinTriple {
    pub plus: &'static str,
    pub minus: &'static str,
    pub zero: &'static str,
}

pub fn known_skein_triples() -> Vec<SkeinTriple> {
    let t = |plus, minus, zero| SkeinTriple { plus, minus, zero };
    vec![
        // a nugatory crossing on the unknot
        t("unknot", "unknot", "unlink-2"),
        t("trefoil", "unknot", "hopf-link"),
        t("hopf-link", "unlink-2", "unknot"),
        t("unknot", "figure-eight", "hopf-link"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn gaussian_evaluation() {
        let two_i = GaussInt::two_i();
        assert_eq!(
            eval_gauss(&IntPoly::one(), &GaussInt::new(17, -4)),
            GaussInt::new(1, 0)
        );
        assert_eq!(
            eval_gauss(&conway_kn(1).unwrap(), &two_i),
            GaussInt::new(49, 0)
        );
        assert_eq!(
            eval_gauss(&IntPoly::from_i64(&[1, 0, 1]), &two_i),
            GaussInt::new(-3, 0)
        );
        assert_eq!(eval_gauss(&IntPoly::z(), &two_i), GaussInt::new(0, 2));
    }

    #[test]
    fn family_examples() {
        assert_eq!(
            conway_kn(1).unwrap(),
            IntPoly::from_i64(&[1, 0, 0, 0, -1, 0, -1])
        );
        assert_eq!(
            conway_kn(2).unwrap(),
            IntPoly::from_i64(&[1, 0, 0, 0, 0, 0, 1, 0, 1])
        );
        assert_eq!(
            alexander_at_minus1(&conway_kn(2).unwrap()).unwrap(),
            big(193)
        );
        assert_eq!(big(193), big(-3) + big(4) * big(49));
        assert_eq!(conway_kn(0), Err(PolyError::ZeroIndex));
    }

    #[test]
    fn alexander_values() {
        assert_eq!(alexander_at_minus1(&IntPoly::one()).unwrap(), big(1));
        assert_eq!(
            alexander_at_minus1(&conway_kn(1).unwrap()).unwrap(),
            big(49)
        );
        assert_eq!(
            alexander_at_minus1(&IntPoly::from_i64(&[1, 0, 1])).unwrap(),
            big(-3)
        );
        assert_eq!(
            alexander_at_minus1(&IntPoly::z()),
            Err(PolyError::NotAKnotPolynomial(big(2)))
        );
    }

    #[test]
    fn skein_examples() {
        let (one, zero, z) = (IntPoly::one(), IntPoly::zero(), IntPoly::z());
        assert!(skein_verify(&one, &one, &zero));
        assert!(skein_verify(&IntPoly::from_i64(&[1, 0, 1]), &one, &z));
        assert!(!skein_verify(&one, &one, &one));
    }

    #[test]
    fn display() {
        assert_eq!(conway_kn(1).unwrap().to_string(), "-z^6 - z^4 + 1");
        assert_eq!(IntPoly::from_i64(&[0, -2, 3]).to_string(), "3z^2 - 2z");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }
}
