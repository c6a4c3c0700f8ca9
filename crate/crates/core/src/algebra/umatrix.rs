//! Kernel-tagged matrices and the JSON wire format.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::exact::ExactScalar;
use super::matrix::SquareMatrix;
use crate::error::{Error, Result};

/// Scalar backend of a matrix: exact ring arithmetic or double-precision
/// complex numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    Exact,
    Float,
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kernel::Exact => write!(f, "exact"),
            Kernel::Float => write!(f, "float"),
        }
    }
}

/// A scalar drawn from either kernel. Used for determinants and truth-table
/// phases, which inherit the kernel of the matrix they came from.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarValue {
    Exact(ExactScalar),
    Float(Complex64),
}

impl ScalarValue {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            ScalarValue::Exact(x) => x.to_complex(),
            ScalarValue::Float(z) => *z,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            ScalarValue::Exact(x) => x.is_one(),
            ScalarValue::Float(z) => *z == Complex64::new(1.0, 0.0),
        }
    }
}

impl fmt::Display for ScalarValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarValue::Exact(x) => write!(f, "{x}"),
            ScalarValue::Float(z) => write!(f, "{}{:+}i", z.re, z.im),
        }
    }
}

/// Dense square matrix over one of the two scalar kernels.
///
/// Supported dimensions are 2, 4 and 8 (one, two and three q-bits). Matrix
/// values are immutable once built; all operations return fresh matrices.
#[derive(Debug, Clone, PartialEq)]
pub enum UMatrix {
    Exact(SquareMatrix<ExactScalar>),
    Float(SquareMatrix<Complex64>),
}

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if matches!(dim, 2 | 4 | 8) {
        Ok(())
    } else {
        Err(Error::UnsupportedDim(dim))
    }
}

impl UMatrix {
    /// Wraps an exact matrix, checking the dimension.
    pub fn exact(m: SquareMatrix<ExactScalar>) -> Result<Self> {
        check_dim(m.dim())?;
        Ok(UMatrix::Exact(m))
    }

    /// Wraps a float matrix, checking the dimension and rejecting non-finite
    /// entries.
    pub fn float(m: SquareMatrix<Complex64>) -> Result<Self> {
        check_dim(m.dim())?;
        for i in 0..m.dim() {
            for j in 0..m.dim() {
                let z = m.get(i, j);
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite(i, j));
                }
            }
        }
        Ok(UMatrix::Float(m))
    }

    pub fn identity(dim: usize, kernel: Kernel) -> Result<Self> {
        check_dim(dim)?;
        Ok(match kernel {
            Kernel::Exact => UMatrix::Exact(SquareMatrix::identity(dim)),
            Kernel::Float => UMatrix::Float(SquareMatrix::identity(dim)),
        })
    }

    pub fn dim(&self) -> usize {
        match self {
            UMatrix::Exact(m) => m.dim(),
            UMatrix::Float(m) => m.dim(),
        }
    }

    pub fn kernel(&self) -> Kernel {
        match self {
            UMatrix::Exact(_) => Kernel::Exact,
            UMatrix::Float(_) => Kernel::Float,
        }
    }

    pub fn as_exact(&self) -> Option<&SquareMatrix<ExactScalar>> {
        match self {
            UMatrix::Exact(m) => Some(m),
            UMatrix::Float(_) => None,
        }
    }

    pub fn as_float(&self) -> Option<&SquareMatrix<Complex64>> {
        match self {
            UMatrix::Float(m) => Some(m),
            UMatrix::Exact(_) => None,
        }
    }

    fn same_shape(&self, rhs: &UMatrix) -> Result<()> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimMismatch(self.dim(), rhs.dim()));
        }
        if self.kernel() != rhs.kernel() {
            return Err(Error::KernelMismatch(self.kernel(), rhs.kernel()));
        }
        Ok(())
    }

    /// Matrix product. Both operands must share dimension and kernel.
    pub fn matmul(&self, rhs: &UMatrix) -> Result<UMatrix> {
        self.same_shape(rhs)?;
        Ok(match (self, rhs) {
            (UMatrix::Exact(a), UMatrix::Exact(b)) => UMatrix::Exact(a.mul(b)),
            (UMatrix::Float(a), UMatrix::Float(b)) => UMatrix::Float(a.mul(b)),
            _ => unreachable!(),
        })
    }

    pub fn add(&self, rhs: &UMatrix) -> Result<UMatrix> {
        self.same_shape(rhs)?;
        Ok(match (self, rhs) {
            (UMatrix::Exact(a), UMatrix::Exact(b)) => UMatrix::Exact(a.add(b)),
            (UMatrix::Float(a), UMatrix::Float(b)) => UMatrix::Float(a.add(b)),
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, rhs: &UMatrix) -> Result<UMatrix> {
        self.same_shape(rhs)?;
        Ok(match (self, rhs) {
            (UMatrix::Exact(a), UMatrix::Exact(b)) => UMatrix::Exact(a.sub(b)),
            (UMatrix::Float(a), UMatrix::Float(b)) => UMatrix::Float(a.sub(b)),
            _ => unreachable!(),
        })
    }

    /// Kronecker product, left factor on the more-significant wire.
    pub fn kron(&self, rhs: &UMatrix) -> Result<UMatrix> {
        if self.kernel() != rhs.kernel() {
            return Err(Error::KernelMismatch(self.kernel(), rhs.kernel()));
        }
        check_dim(self.dim() * rhs.dim())?;
        Ok(match (self, rhs) {
            (UMatrix::Exact(a), UMatrix::Exact(b)) => UMatrix::Exact(a.kron(b)),
            (UMatrix::Float(a), UMatrix::Float(b)) => UMatrix::Float(a.kron(b)),
            _ => unreachable!(),
        })
    }

    /// Conjugate transpose. For unitary matrices this is the inverse.
    pub fn adjoint(&self) -> UMatrix {
        match self {
            UMatrix::Exact(m) => UMatrix::Exact(m.adjoint()),
            UMatrix::Float(m) => UMatrix::Float(m.adjoint()),
        }
    }

    pub fn determinant(&self) -> ScalarValue {
        match self {
            UMatrix::Exact(m) => ScalarValue::Exact(m.determinant()),
            UMatrix::Float(m) => ScalarValue::Float(m.determinant()),
        }
    }

    /// Unitarity test. The exact kernel compares `M†M` to the identity
    /// structurally and ignores the tolerance; the float kernel checks the
    /// max-norm of `M†M − I` against `tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        match self {
            UMatrix::Exact(m) => m.adjoint().mul(m) == SquareMatrix::identity(m.dim()),
            UMatrix::Float(m) => {
                let gram = m.adjoint().mul(m);
                gram.max_abs_diff(&SquareMatrix::<Complex64>::identity(m.dim())) <= tol
            }
        }
    }

    /// Global-phase-invariant distance `1 − |tr(T†W)| / n`.
    ///
    /// Zero exactly when `self = e^{iφ}·target`; symmetric; kernels may
    /// differ (the value is floating point either way).
    pub fn phase_distance(&self, target: &UMatrix) -> Result<f64> {
        if self.dim() != target.dim() {
            return Err(Error::DimMismatch(self.dim(), target.dim()));
        }
        let w = self.to_float_matrix();
        let t = target.to_float_matrix();
        let mut overlap = Complex64::new(0.0, 0.0);
        for i in 0..w.dim() {
            for j in 0..w.dim() {
                overlap += t.get(i, j).conj() * w.get(i, j);
            }
        }
        Ok(1.0 - overlap.norm() / w.dim() as f64)
    }

    /// Largest entrywise absolute difference, in floating point. Kernels may
    /// differ.
    pub fn max_abs_diff(&self, rhs: &UMatrix) -> Result<f64> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimMismatch(self.dim(), rhs.dim()));
        }
        Ok(self.to_float_matrix().max_abs_diff(&rhs.to_float_matrix()))
    }

    /// Entrywise evaluation into the float kernel (identity on float input).
    pub fn to_float(&self) -> UMatrix {
        UMatrix::Float(self.to_float_matrix())
    }

    pub(crate) fn to_float_matrix(&self) -> SquareMatrix<Complex64> {
        match self {
            UMatrix::Exact(m) => m.to_float(),
            UMatrix::Float(m) => m.clone(),
        }
    }

    pub fn entry_complex(&self, row: usize, col: usize) -> Complex64 {
        match self {
            UMatrix::Exact(m) => m.get(row, col).to_complex(),
            UMatrix::Float(m) => *m.get(row, col),
        }
    }

    /// Plain-text grid rendering for terminal output.
    pub fn render_text(&self) -> String {
        let n = self.dim();
        let cells: Vec<Vec<String>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match self {
                        UMatrix::Exact(m) => m.get(i, j).to_string(),
                        UMatrix::Float(m) => {
                            let z = m.get(i, j);
                            format!("{:.4}{:+.4}i", z.re, z.im)
                        }
                    })
                    .collect()
            })
            .collect();
        let width = cells
            .iter()
            .flatten()
            .map(|s| s.chars().count())
            .max()
            .unwrap_or(1);
        cells
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| format!("{s:>width$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

// JSON wire format:
//   {"kernel": "exact"|"float", "dim": n, "rows": [...]}
// with exact entries [a, b, c, d, k] and float entries [re, im].
#[derive(Serialize, Deserialize)]
#[serde(tag = "kernel", rename_all = "lowercase")]
enum MatrixJson {
    Exact { dim: usize, rows: Vec<Vec<[i64; 5]>> },
    Float { dim: usize, rows: Vec<Vec<[f64; 2]>> },
}

impl Serialize for UMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let json = match self {
            UMatrix::Exact(m) => {
                let mut rows = Vec::with_capacity(m.dim());
                for i in 0..m.dim() {
                    let mut row = Vec::with_capacity(m.dim());
                    for j in 0..m.dim() {
                        let (a, b, c, d, k) = m.get(i, j).coords();
                        let conv = |n: &BigInt| {
                            n.to_i64().ok_or_else(|| S::Error::custom(Error::JsonRange))
                        };
                        row.push([conv(a)?, conv(b)?, conv(c)?, conv(d)?, k as i64]);
                    }
                    rows.push(row);
                }
                MatrixJson::Exact { dim: m.dim(), rows }
            }
            UMatrix::Float(m) => {
                let rows = (0..m.dim())
                    .map(|i| {
                        (0..m.dim())
                            .map(|j| {
                                let z = m.get(i, j);
                                [z.re, z.im]
                            })
                            .collect()
                    })
                    .collect();
                MatrixJson::Float { dim: m.dim(), rows }
            }
        };
        json.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for UMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = MatrixJson::deserialize(deserializer)?;
        let built = match json {
            MatrixJson::Exact { dim, rows } => {
                let entries = flatten_rows(dim, rows).map_err(D::Error::custom)?;
                let entries = entries
                    .into_iter()
                    .map(|[a, b, c, d, k]| {
                        if k < 0 {
                            Err("negative denominator exponent".to_string())
                        } else {
                            Ok(ExactScalar::new(a, b, c, d, k as u32))
                        }
                    })
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(D::Error::custom)?;
                UMatrix::exact(SquareMatrix::new(dim, entries))
            }
            MatrixJson::Float { dim, rows } => {
                let entries = flatten_rows(dim, rows).map_err(D::Error::custom)?;
                let entries = entries
                    .into_iter()
                    .map(|[re, im]| Complex64::new(re, im))
                    .collect();
                UMatrix::float(SquareMatrix::new(dim, entries))
            }
        };
        built.map_err(D::Error::custom)
    }
}

fn flatten_rows<T>(dim: usize, rows: Vec<Vec<T>>) -> std::result::Result<Vec<T>, String> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(format!("rows do not form a {dim}x{dim} matrix"));
    }
    Ok(rows.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_mismatch_is_rejected() {
        let e = UMatrix::identity(2, Kernel::Exact).unwrap();
        let f = UMatrix::identity(2, Kernel::Float).unwrap();
        assert!(matches!(e.matmul(&f), Err(Error::KernelMismatch(..))));
    }

    #[test]
    fn kron_dim_guard() {
        let a = UMatrix::identity(4, Kernel::Exact).unwrap();
        assert!(matches!(a.kron(&a), Err(Error::UnsupportedDim(16))));
    }

    #[test]
    fn non_finite_entries_rejected() {
        let m = SquareMatrix::new(
            2,
            vec![
                Complex64::new(f64::NAN, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
            ],
        );
        assert!(matches!(UMatrix::float(m), Err(Error::NonFinite(0, 0))));
    }

    #[test]
    fn scaled_identity_is_not_unitary() {
        let two = ExactScalar::from_int(2);
        let m = UMatrix::exact(SquareMatrix::identity(2).scaled(&two)).unwrap();
        assert!(!m.is_unitary(0.0));
    }

    #[test]
    fn phase_distance_examples() {
        let id = UMatrix::identity(2, Kernel::Float).unwrap();
        assert_eq!(id.phase_distance(&id).unwrap(), 0.0);

        let sx = UMatrix::float(SquareMatrix::new(
            2,
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        ))
        .unwrap();
        let i_sx = UMatrix::float(SquareMatrix::new(
            2,
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, 0.0),
            ],
        ))
        .unwrap();
        // i·σ₁ equals σ₁ up to a global phase.
        assert!(i_sx.phase_distance(&sx).unwrap().abs() < 1e-15);
        // tr(σ₁) = 0, so the distance from the identity is exactly 1.
        assert_eq!(id.phase_distance(&sx).unwrap(), 1.0);
    }

    #[test]
    fn json_round_trip_exact_is_bit_exact() {
        let m = UMatrix::exact(SquareMatrix::new(
            2,
            vec![
                ExactScalar::inv_sqrt2(),
                ExactScalar::new(0, -1, 0, 0, 1),
                ExactScalar::new(0, 1, 0, 0, 1),
                -&ExactScalar::inv_sqrt2(),
            ],
        ))
        .unwrap();
        let text = serde_json::to_string(&m).unwrap();
        let back: UMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn json_round_trip_float() {
        let m = UMatrix::float(SquareMatrix::new(
            2,
            vec![
                Complex64::new(0.1234567890123456, -1.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(std::f64::consts::SQRT_2, 0.7071067811865476),
            ],
        ))
        .unwrap();
        let text = serde_json::to_string(&m).unwrap();
        let back: UMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
    }
}
