use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::exactfield::{inertia_psd_rank, rational, Matrix, OrderedField, QuadExt, Rational, Ring};

/// A spherical two-distance set given by its Gram matrix.
///
/// The Gram matrix has unit diagonal and off-diagonal entries in `{a, b}`;
/// it is PSD of rank at most the ambient dimension. Floating-point
/// coordinates may be attached for coordinate-level checks; every exact
/// computation goes through the Gram matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct GramTwoDistance<T> {
    ambient_dim: usize,
    affine_dim: Option<usize>,
    value_a: T,
    value_b: T,
    gram: Matrix<T>,
    coords: Option<Vec<Vec<f64>>>,
}

impl<T: OrderedField> GramTwoDistance<T> {
    pub fn new(
        ambient_dim: usize,
        value_a: T,
        value_b: T,
        gram: Matrix<T>,
        coords: Option<Vec<Vec<f64>>>,
    ) -> Result<Self> {
        let g = Self::from_parts_unchecked(ambient_dim, value_a, value_b, gram, coords);
        g.validate()?;
        Ok(g)
    }

    /// Skips validation; used for fault injection and raw input that the
    /// certifier should judge on its own.
    pub fn from_parts_unchecked(
        ambient_dim: usize,
        value_a: T,
        value_b: T,
        gram: Matrix<T>,
        coords: Option<Vec<Vec<f64>>>,
    ) -> Self {
        Self {
            ambient_dim,
            affine_dim: None,
            value_a,
            value_b,
            gram,
            coords,
        }
    }

    /// Records the dimension of the affine span when it is smaller than the ambient space.
    pub fn with_affine_dim(mut self, dim: usize) -> Self {
        self.affine_dim = Some(dim);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let one = self.value_a.one_like();
        if self.value_a == one || self.value_b == one {
            return Err(Error::hypothesis("inner product values must differ from 1"));
        }
        if self.value_a == self.value_b {
            return Err(Error::hypothesis("inner product values a and b coincide"));
        }
        let n = self.gram.rows();
        if !self.gram.is_square() {
            return Err(Error::malformed("Gram matrix is not square"));
        }
        for i in 0..n {
            if *self.gram.get(i, i) != one {
                return Err(Error::malformed(format!("Gram diagonal entry {} is not 1", i + 1)));
            }
            for j in 0..n {
                let x = self.gram.get(i, j);
                if i != j && *x != self.value_a && *x != self.value_b {
                    return Err(Error::malformed(format!(
                        "Gram entry ({}, {}) = {x} is neither a nor b",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let inertia = inertia_psd_rank(&self.gram)?;
        if !inertia.is_psd {
            return Err(Error::hypothesis("Gram matrix is not positive semidefinite"));
        }
        if inertia.rank > self.ambient_dim {
            return Err(Error::hypothesis(format!(
                "Gram rank {} exceeds ambient dimension {}",
                inertia.rank, self.ambient_dim
            )));
        }
        if let Some(coords) = &self.coords {
            if coords.len() != n || coords.iter().any(|c| c.len() != self.ambient_dim) {
                return Err(Error::malformed(format!(
                    "coordinates must be {n} points in R^{}",
                    self.ambient_dim
                )));
            }
        }
        Ok(())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn affine_dim(&self) -> Option<usize> {
        self.affine_dim
    }

    /// Affine dimension when recorded, otherwise the ambient dimension.
    pub fn effective_dim(&self) -> usize {
        self.affine_dim.unwrap_or(self.ambient_dim)
    }

    pub fn point_count(&self) -> usize {
        self.gram.rows()
    }

    pub fn value_a(&self) -> &T {
        &self.value_a
    }

    pub fn value_b(&self) -> &T {
        &self.value_b
    }

    pub fn gram(&self) -> &Matrix<T> {
        &self.gram
    }

    pub fn coords(&self) -> Option<&[Vec<f64>]> {
        self.coords.as_deref()
    }
}

/// The regular pentagon on the unit circle: `a = cos 72° = (√5−1)/4` for
/// adjacent vertices, `b = cos 144° = −(√5+1)/4` otherwise.
pub fn pentagon() -> GramTwoDistance<QuadExt> {
    let q = |r: Rational, s: Rational| QuadExt::new(r, s, 5).expect("5 is squarefree");
    let a = q(rational(-1, 4), rational(1, 4));
    let b = q(rational(-1, 4), rational(-1, 4));
    let one = a.one_like();
    let gram = Matrix::from_fn(5, 5, |i, j| match (i + 5 - j) % 5 {
        0 => one.clone(),
        1 | 4 => a.clone(),
        _ => b.clone(),
    })
    .expect("5x5");
    let coords = (0..5)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / 5.0;
            vec![t.cos(), t.sin()]
        })
        .collect();
    GramTwoDistance::new(2, a, b, gram, Some(coords)).expect("pentagon is a valid two-distance set")
}

/// A line among the 27 on a cubic surface, in double-six labelling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchlafliLabel {
    A(usize),
    B(usize),
    C(usize, usize),
}

impl std::fmt::Display for SchlafliLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SchlafliLabel::A(i) => write!(f, "a{}", i + 1),
            SchlafliLabel::B(i) => write!(f, "b{}", i + 1),
            SchlafliLabel::C(i, j) => write!(f, "c{}{}", i + 1, j + 1),
        }
    }
}

/// `a1..a6, b1..b6, c12..c56` in that order.
pub fn schlafli_labels() -> Vec<SchlafliLabel> {
    let mut labels: Vec<SchlafliLabel> = (0..6).map(SchlafliLabel::A).collect();
    labels.extend((0..6).map(SchlafliLabel::B));
    for i in 0..6 {
        for j in i + 1..6 {
            labels.push(SchlafliLabel::C(i, j));
        }
    }
    labels
}

/// Whether two distinct lines of the 27 meet.
pub fn lines_meet(x: SchlafliLabel, y: SchlafliLabel) -> bool {
    use SchlafliLabel::*;
    match (x, y) {
        (A(i), B(j)) | (B(j), A(i)) => i != j,
        (A(i), C(j, k)) | (C(j, k), A(i)) | (B(i), C(j, k)) | (C(j, k), B(i)) => i == j || i == k,
        (C(i, j), C(k, l)) => x != y && i != k && i != l && j != k && j != l,
        _ => false,
    }
}

/// The 27 lines as a two-distance set in ℝ⁶: Gram entry −1/2 for meeting
/// lines and 1/4 otherwise.
pub fn schlafli27() -> GramTwoDistance<Rational> {
    schlafli_with_values(rational(-1, 2), rational(1, 4))
        .and_then(|g| {
            g.validate()?;
            Ok(g)
        })
        .expect("Schlafli Gram matrix is valid")
}

/// The Schläfli Gram pattern with arbitrary values, unvalidated.
pub fn schlafli_with_values(meeting: Rational, skew: Rational) -> Result<GramTwoDistance<Rational>> {
    let labels = schlafli_labels();
    for &x in &labels {
        let degree = labels.iter().filter(|&&y| lines_meet(x, y)).count();
        if degree != 10 {
            return Err(Error::internal(format!("line {x} meets {degree} others, expected 10")));
        }
    }
    let gram = Matrix::from_fn(27, 27, |i, j| {
        if i == j {
            rational(1, 1)
        } else if lines_meet(labels[i], labels[j]) {
            meeting.clone()
        } else {
            skew.clone()
        }
    })?;
    Ok(GramTwoDistance::from_parts_unchecked(6, skew, meeting, gram, None))
}

/// The `C(m,2)` unit vectors `(e_i + e_j)/√2`: inner product 1/2 when the
/// pairs share an index and 0 otherwise. They span ℝ^m but lie in an
/// affine hyperplane, so the affine dimension is `m − 1`.
pub fn johnson_pairs(m: usize) -> Result<GramTwoDistance<Rational>> {
    if m < 4 {
        return Err(Error::hypothesis(format!("johnson_pairs needs m >= 4, got {m}")));
    }
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let n = pairs.len();
    let gram = Matrix::from_fn(n, n, |s, t| {
        let (i, j) = pairs[s];
        let (k, l) = pairs[t];
        if s == t {
            rational(1, 1)
        } else if i == k || i == l || j == k || j == l {
            rational(1, 2)
        } else {
            rational(0, 1)
        }
    })?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let coords = pairs
        .iter()
        .map(|&(i, j)| {
            let mut v = vec![0.0; m];
            v[i] = h;
            v[j] = h;
            v
        })
        .collect();
    let g = GramTwoDistance::new(m, rational(1, 2), rational(0, 1), gram, Some(coords))?;
    Ok(g.with_affine_dim(m - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::gauss_rank;

    #[test]
    fn pentagon_values() {
        let p = pentagon();
        assert_eq!(p.value_a().to_string(), "-1/4+1/4*sqrt(5)");
        assert!((p.value_a().to_f64() - (2.0 * PI / 5.0).cos()).abs() < 1e-12);
        assert!((p.value_b().to_f64() - (4.0 * PI / 5.0).cos()).abs() < 1e-12);
        let ab = p.value_a().clone() * p.value_b().clone();
        assert_eq!(ab.to_rational(), Some(rational(-1, 4)));
        let inertia = inertia_psd_rank(p.gram()).unwrap();
        assert!(inertia.is_psd);
        assert_eq!(inertia.rank, 2);
    }

    #[test]
    fn pentagon_coordinates_match_gram() {
        let p = pentagon();
        let coords = p.coords().unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let dot: f64 = coords[i].iter().zip(&coords[j]).map(|(x, y)| x * y).sum();
                assert!((dot - p.gram().get(i, j).to_f64()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn schlafli_structure() {
        let s = schlafli27();
        assert_eq!(s.point_count(), 27);
        for i in 0..27 {
            let row_sum = s.gram().row(i).iter().fold(rational(0, 1), |acc, x| acc + x);
            assert_eq!(row_sum, rational(0, 1));
        }
        assert_eq!(s.gram().rank(), 6);
        assert_eq!(gauss_rank(s.gram()), 6);
        let inertia = inertia_psd_rank(s.gram()).unwrap();
        assert!(inertia.is_psd);
        assert_eq!(inertia.rank, 6);
    }

    #[test]
    fn schlafli_degrees() {
        let labels = schlafli_labels();
        assert_eq!(labels.len(), 27);
        for &x in &labels {
            assert_eq!(labels.iter().filter(|&&y| lines_meet(x, y)).count(), 10);
        }
        assert!(!lines_meet(SchlafliLabel::A(0), SchlafliLabel::B(0)));
        assert!(lines_meet(SchlafliLabel::C(0, 1), SchlafliLabel::C(2, 3)));
        assert!(!lines_meet(SchlafliLabel::C(0, 1), SchlafliLabel::C(0, 1)));
    }

    #[test]
    fn mutated_schlafli_is_not_psd_rank_six() {
        let g = schlafli_with_values(rational(-1, 2), rational(1, 3)).unwrap();
        assert!(g.validate().is_err());
    }

    #[test]
    fn johnson_examples() {
        let j6 = johnson_pairs(6).unwrap();
        assert_eq!(j6.point_count(), 15);
        assert_eq!(j6.value_a(), &rational(1, 2));
        assert_eq!(j6.value_b(), &rational(0, 1));
        assert_eq!(j6.effective_dim(), 5);
        assert_eq!(j6.gram().rank(), 6);
        assert_eq!(johnson_pairs(4).unwrap().point_count(), 6);
        assert_eq!(johnson_pairs(4).unwrap().gram().rank(), 4);
        assert!(johnson_pairs(3).is_err());
    }

    #[test]
    fn validation_failures() {
        let one = rational(1, 1);
        let gram = Matrix::identity(2, &one);
        assert!(GramTwoDistance::new(2, one.clone(), rational(0, 1), gram.clone(), None).is_err());
        let bad = Matrix::from_rows(vec![
            vec![rational(1, 1), rational(2, 1)],
            vec![rational(2, 1), rational(1, 1)],
        ])
        .unwrap();
        assert!(matches!(
            GramTwoDistance::new(2, rational(2, 1), rational(0, 1), bad, None),
            Err(Error::HypothesisViolation(_))
        ));
    }
}
