//! Matrix files and the fixed-precision number format used in CSV output.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::{ComplexMatrix, C64};

/// Value of the `basis` field every matrix file must carry.
pub const BASIS_TAG: &str = "product-00-01-10-11";

/// Significant digits in CSV and report output.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// On-disk form of a 4×4 complex matrix:
///
/// ```json
/// { "basis": "product-00-01-10-11",
///   "matrix": [[[0.5, 0.0], [0.0, 0.0], [0.0, 0.0], [0.5, 0.0]], ...] }
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub basis: String,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        MatrixFile {
            basis: BASIS_TAG.to_string(),
            matrix: (0..m.rows())
                .map(|i| {
                    (0..m.cols())
                        .map(|j| [m[(i, j)].re, m[(i, j)].im])
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        if self.basis != BASIS_TAG {
            return Err(Error::Parse(format!(
                "unsupported basis `{}` (expected `{BASIS_TAG}`)",
                self.basis
            )));
        }
        if self.matrix.len() != 4 {
            return Err(Error::Parse(format!(
                "expected 4 rows, found {}",
                self.matrix.len()
            )));
        }
        let mut rows = Vec::with_capacity(4);
        for (i, row) in self.matrix.iter().enumerate() {
            if row.len() != 4 {
                return Err(Error::Parse(format!(
                    "row {i}: expected 4 entries, found {}",
                    row.len()
                )));
            }
            rows.push(row.iter().map(|&[re, im]| C64::new(re, im)).collect());
        }
        ComplexMatrix::from_rows(&rows).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Pretty JSON. Floats are written in shortest round-trip form, so reading
    /// the file back reproduces every entry bit for bit.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("matrix file serializes")
    }
}

pub fn read_matrix_file(path: &Path) -> Result<ComplexMatrix> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    MatrixFile::parse(&text)
        .and_then(|f| f.to_matrix())
        .map_err(|e| match e {
            Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
            other => other,
        })
}

pub fn write_matrix_file(path: &Path, m: &ComplexMatrix) -> Result<()> {
    std::fs::write(path, MatrixFile::from_matrix(m).to_json() + "\n")
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Fixed-point rendering of `x` with `digits` significant digits.
///
/// Rounding is delegated to the standard library's exponent formatting, so the
/// output is the same on every platform.
pub fn format_significant(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return format!("{:.*}", digits - 1, 0.0);
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let negative = mantissa.starts_with('-');
    let mant_digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();

    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if exp >= 0 {
        let int_len = exp as usize + 1;
        if int_len >= mant_digits.len() {
            out.push_str(&mant_digits);
            out.extend(std::iter::repeat_n('0', int_len - mant_digits.len()));
        } else {
            out.push_str(&mant_digits[..int_len]);
            out.push('.');
            out.push_str(&mant_digits[int_len..]);
        }
    } else {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-exp - 1) as usize));
        out.push_str(&mant_digits);
    }
    out
}

pub fn fmt12(x: f64) -> String {
    format_significant(x, SIGNIFICANT_DIGITS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn significant_formatting() {
        assert_eq!(fmt12(0.0), "0.00000000000");
        assert_eq!(fmt12(1.0), "1.00000000000");
        assert_eq!(fmt12(2.0 / 3f64.sqrt()), "1.15470053838");
        assert_eq!(fmt12(-0.25), "-0.250000000000");
        assert_eq!(fmt12(1.0 / 3f64.sqrt()), "0.577350269190");
        assert_eq!(fmt12(1.5e-13), "0.000000000000150000000000");
        assert_eq!(fmt12(123456789012345.0), "123456789012000");
        assert_eq!(fmt12(0.99999999999999), "1.00000000000");
    }

    #[test]
    fn matrix_file_rejects_wrong_basis_and_shape() {
        let mut f = MatrixFile::from_matrix(&ComplexMatrix::identity(4));
        f.basis = "bell".into();
        assert!(matches!(f.to_matrix(), Err(Error::Parse(_))));

        let f = MatrixFile::from_matrix(&ComplexMatrix::identity(2));
        assert!(matches!(f.to_matrix(), Err(Error::Parse(_))));

        let err =
            MatrixFile::parse(r#"{"basis": "product-00-01-10-11", "matrix": [[[1.0, "x"]]]}"#)
                .unwrap_err();
        assert!(err.to_string().contains("line"), "{err}");
    }

    proptest! {
        #[test]
        fn matrix_file_round_trip_is_bit_exact(entries in proptest::collection::vec((-1e3f64..1e3, -1e3f64..1e3), 16)) {
            let m = ComplexMatrix::new(4, 4, entries.iter().map(|&(a, b)| C64::new(a, b)).collect()).unwrap();
            let json = MatrixFile::from_matrix(&m).to_json();
            let back = MatrixFile::parse(&json).unwrap().to_matrix().unwrap();
            prop_assert_eq!(back, m);
        }

        #[test]
        fn formatting_keeps_twelve_digits(x in -10.0f64..10.0) {
            let s = fmt12(x);
            let parsed: f64 = s.parse().unwrap();
            prop_assert!((parsed - x).abs() <= 1e-11 * x.abs().max(1e-300) + 1e-300 || x.abs() < 1e-280);
            let digits = s.trim_start_matches('-').trim_start_matches(['0', '.']).chars().filter(char::is_ascii_digit).count();
            prop_assert_eq!(digits, 12);
        }
    }
}
