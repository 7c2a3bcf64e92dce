//! Euler quadratic form of line Nakayama algebras.
//!
//! Line algebras are directed, so their global dimension is finite and the
//! Euler form is `q(x) = x^T C^{-T} x` for the Cartan matrix `C`. The form is
//! non-negative iff the symmetrization `B = C^{-T} + C^{-1}` is positive
//! semidefinite, which is decided exactly: `B` is PSD iff every coefficient of
//! `det(tI + B)` is non-negative.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{is_negative, rational_string, RationalMatrix};
use crate::presentation::{NakPath, NakayamaPresentation, QuiverKind};

/// `C[i][j] = 1` iff the path from vertex `i+1` to vertex `j+1` is nonzero.
pub fn cartan_matrix(pres: &NakayamaPresentation) -> Result<Vec<Vec<i64>>> {
    let QuiverKind::Line(n) = pres.kind() else {
        return Err(Error::WrongKind { expected: "line" });
    };
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| i64::from(j >= i && pres.is_nonzero(NakPath::new(i + 1, j - i))))
                .collect()
        })
        .collect())
}

/// Result of [`is_psd_exact`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsdVerdict {
    pub psd: bool,
    /// Coefficients `[c_0, .., c_n]` of `det(tI + B)`.
    pub char_coefficients: Vec<BigRational>,
    /// Integer `x` with `x^T B x < 0` when not PSD.
    pub certificate: Option<Vec<i64>>,
}

/// Exact positive-semidefiniteness test for a rational symmetric matrix.
pub fn is_psd_exact(b: &RationalMatrix) -> Result<PsdVerdict> {
    if !b.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let char_coefficients = b.neg().characteristic_polynomial();
    let psd = !char_coefficients.iter().any(is_negative);
    let certificate = negative_direction(b);
    assert_eq!(
        psd,
        certificate.is_none(),
        "characteristic polynomial and pivoted elimination disagree"
    );
    Ok(PsdVerdict {
        psd,
        char_coefficients,
        certificate,
    })
}

/// Symmetric pivoted elimination; returns an integer vector on which the
/// form is negative, or `None` if the form is semidefinite.
fn negative_direction(b: &RationalMatrix) -> Option<Vec<i64>> {
    let n = b.rows();
    let bilinear = |u: &[BigRational], v: &[BigRational]| -> BigRational {
        let mut acc = BigRational::zero();
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if !v[j].is_zero() {
                    acc += &u[i] * b.get(i, j) * &v[j];
                }
            }
        }
        acc
    };
    let mut basis: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut e = vec![BigRational::zero(); n];
            e[i] = BigRational::one();
            e
        })
        .collect();
    loop {
        if basis.is_empty() {
            return None;
        }
        let diag: Vec<BigRational> = basis.iter().map(|v| bilinear(v, v)).collect();
        if let Some(k) = diag.iter().position(is_negative) {
            return Some(integer_vector(&basis[k]));
        }
        if let Some(p) = diag.iter().position(|d| d.is_positive()) {
            let pivot = basis.remove(p);
            let dp = &diag[p];
            for v in basis.iter_mut() {
                let s = bilinear(&pivot, v);
                if s.is_zero() {
                    continue;
                }
                let f = s / dp;
                for (vi, pi) in v.iter_mut().zip(&pivot) {
                    *vi -= &f * pi;
                }
            }
            continue;
        }
        // every remaining diagonal entry is zero
        for k in 0..basis.len() {
            for l in k + 1..basis.len() {
                let s = bilinear(&basis[k], &basis[l]);
                if !s.is_zero() {
                    let sign = if s.is_positive() { -BigRational::one() } else { BigRational::one() };
                    let x: Vec<BigRational> = basis[k].iter().zip(&basis[l]).map(|(a, c)| a + &sign * c).collect();
                    return Some(integer_vector(&x));
                }
            }
        }
        return None;
    }
}

fn integer_vector(v: &[BigRational]) -> Vec<i64> {
    let lcm = v.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = v.iter().map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let g = if g.is_zero() { BigInt::one() } else { g };
    ints.iter()
        .map(|x| (x / &g).to_i64().expect("certificate entry exceeds i64"))
        .collect()
}

/// Euler form data for a line algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerReport {
    pub cartan: Vec<Vec<i64>>,
    pub inverse: RationalMatrix,
    pub sym_form: RationalMatrix,
    pub psd: bool,
    pub char_coefficients: Vec<BigRational>,
    pub certificate: Option<Vec<i64>>,
}

impl EulerReport {
    /// `q(x) = x^T C^{-T} x`.
    pub fn euler_form(&self, x: &[i64]) -> BigRational {
        self.inverse.transpose().quadratic_form(x)
    }
}

#[derive(Serialize)]
struct EulerReportJson {
    cartan: Vec<Vec<i64>>,
    inverse: Vec<Vec<String>>,
    sym_form: Vec<Vec<String>>,
    char_coefficients: Vec<String>,
    psd: bool,
    certificate: Option<Vec<i64>>,
}

impl Serialize for EulerReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        EulerReportJson {
            cartan: self.cartan.clone(),
            inverse: self.inverse.to_strings(),
            sym_form: self.sym_form.to_strings(),
            char_coefficients: self.char_coefficients.iter().map(rational_string).collect(),
            psd: self.psd,
            certificate: self.certificate.clone(),
        }
        .serialize(s)
    }
}

/// Decides non-negativity of the Euler form of a line algebra.
pub fn euler_nonnegative(pres: &NakayamaPresentation) -> Result<EulerReport> {
    let cartan = cartan_matrix(pres)?;
    let c = RationalMatrix::from_integers(&cartan);
    let inverse = c.inverse().expect("Cartan matrix of a line algebra is unitriangular");
    let sym_form = inverse.transpose().add(&inverse);
    let verdict = is_psd_exact(&sym_form)?;
    Ok(EulerReport {
        cartan,
        inverse,
        sym_form,
        psd: verdict.psd,
        char_coefficients: verdict.char_coefficients,
        certificate: verdict.certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_presentation;

    fn m(rows: &[Vec<i64>]) -> RationalMatrix {
        RationalMatrix::from_integers(rows)
    }

    #[test]
    fn cartan_examples() {
        let l2 = parse_presentation("line n=2").unwrap();
        assert_eq!(cartan_matrix(&l2).unwrap(), vec![vec![1, 1], vec![0, 1]]);
        let l4 = parse_presentation("line n=4 rel=(1,3)").unwrap();
        assert_eq!(
            cartan_matrix(&l4).unwrap(),
            vec![vec![1, 1, 1, 0], vec![0, 1, 1, 1], vec![0, 0, 1, 1], vec![0, 0, 0, 1]]
        );
        let l3 = parse_presentation("line n=3 rel=(1,2)").unwrap();
        assert_eq!(cartan_matrix(&l3).unwrap(), vec![vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]]);
        let c3 = parse_presentation("cycle n=3 rel=(0,2)").unwrap();
        assert_eq!(cartan_matrix(&c3), Err(Error::WrongKind { expected: "line" }));
    }

    #[test]
    fn psd_small_matrices() {
        assert!(is_psd_exact(&m(&[vec![2, -1], vec![-1, 2]])).unwrap().psd);
        let v = is_psd_exact(&m(&[vec![0, 1], vec![1, 0]])).unwrap();
        assert!(!v.psd);
        assert_eq!(v.certificate, Some(vec![1, -1]));
        let v = is_psd_exact(&m(&[vec![1, 1], vec![1, 1]])).unwrap();
        assert!(v.psd);
        assert!(v.certificate.is_none());
        assert_eq!(is_psd_exact(&m(&[vec![1, 2], vec![0, 1]])), Err(Error::NotSymmetric));
    }

    #[test]
    fn boundary_perturbation_is_rejected() {
        let base = m(&[vec![1, 1], vec![1, 1]]);
        for eps in ["1/1000000000000", "1/3", "7/2"] {
            let eps = crate::linalg::parse_rational(eps).unwrap();
            let shift = RationalMatrix::from_rationals(vec![
                vec![-eps.clone(), BigRational::zero()],
                vec![BigRational::zero(), -eps.clone()],
            ]);
            let v = is_psd_exact(&base.add(&shift)).unwrap();
            assert!(!v.psd);
            let x = v.certificate.unwrap();
            assert!(base.add(&shift).quadratic_form(&x).is_negative());
        }
    }

    #[test]
    fn hereditary_a2_is_positive() {
        let r = euler_nonnegative(&parse_presentation("line n=2").unwrap()).unwrap();
        assert!(r.psd);
        assert_eq!(r.sym_form, m(&[vec![2, -1], vec![-1, 2]]));
    }

    #[test]
    fn euler_form_on_unit_vectors_is_diagonal_of_inverse_transpose() {
        let r = euler_nonnegative(&parse_presentation("line n=5 rel=(1,3),(3,2)").unwrap()).unwrap();
        let t = r.inverse.transpose();
        for i in 0..5 {
            let mut e = vec![0; 5];
            e[i] = 1;
            assert_eq!(&r.euler_form(&e), t.get(i, i));
            // 2 q(x) = x^T B x
            assert_eq!(r.euler_form(&e) * BigRational::from_integer(2.into()), r.sym_form.quadratic_form(&e));
        }
    }

    #[test]
    fn exhaustive_small_vectors_respect_verdict() {
        // a wild and a tame example
        for text in ["line n=6 rel=(1,2),(2,2),(3,2),(4,2)", "line n=6 rel=(2,4)", "line n=6"] {
            let r = euler_nonnegative(&parse_presentation(text).unwrap()).unwrap();
            let n = 6;
            // the inverse of a unitriangular integer matrix is integral
            let b: Vec<Vec<i64>> = (0..n)
                .map(|i| (0..n).map(|j| r.sym_form.get(i, j).to_integer().to_i64().unwrap()).collect())
                .collect();
            let mut x = vec![-3i64; n];
            loop {
                let q: i64 = (0..n).map(|i| (0..n).map(|j| x[i] * b[i][j] * x[j]).sum::<i64>()).sum();
                if r.psd {
                    assert!(q >= 0, "{text}: {x:?}");
                }
                let mut k = 0;
                while k < n && x[k] == 3 {
                    x[k] = -3;
                    k += 1;
                }
                if k == n {
                    break;
                }
                x[k] += 1;
            }
            if let Some(cert) = &r.certificate {
                assert!(r.sym_form.quadratic_form(cert).is_negative());
            }
        }
    }

    #[test]
    fn json_uses_exact_strings() {
        let r = euler_nonnegative(&parse_presentation("line n=2").unwrap()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["sym_form"][0][1], "-1/1");
        assert_eq!(v["psd"], true);
    }
}
