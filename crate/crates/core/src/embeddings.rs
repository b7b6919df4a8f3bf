//! Isometric embeddings of small configurations into scaled semicrosses
//! and batons, with exact distance validation.
//!
//! A scaled `k`-semicross `SC^k(l_1..l_k)` is `{0, l_1 e_1, .., l_k e_k}`.
//! A baton `B(l_1..l_k)` is the collinear set `{0, l_1, l_1+l_2, ..}`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, usage, Error, Result};

/// Absolute slack, scaled by the largest squared side, for detecting right angles.
pub const RIGHT_ANGLE_TOL: f64 = 1e-9;
/// Slack, relative to the largest expected distance, for distance validation.
pub const VALIDATION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    Euclidean,
    Manhattan,
}

impl Norm {
    pub fn distance(self, x: &[f64], y: &[f64]) -> f64 {
        let diffs = x.iter().zip(y).map(|(a, b)| a - b);
        match self {
            Norm::Euclidean => diffs.map(|d| d * d).sum::<f64>().sqrt(),
            Norm::Manhattan => diffs.map(f64::abs).sum(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SemicrossSpec {
    pub scalings: Vec<f64>,
}

impl SemicrossSpec {
    pub fn new(scalings: Vec<f64>) -> Result<Self> {
        check_scalings(&scalings)?;
        Ok(Self { scalings })
    }

    pub fn k(&self) -> usize {
        self.scalings.len()
    }

    /// The origin followed by `l_i e_i` for each `i`.
    pub fn points(&self) -> Vec<Vec<f64>> {
        let k = self.k();
        let mut pts = vec![vec![0.0; k]];
        for (i, &l) in self.scalings.iter().enumerate() {
            let mut p = vec![0.0; k];
            p[i] = l;
            pts.push(p);
        }
        pts
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatonSpec {
    pub scalings: Vec<f64>,
}

impl BatonSpec {
    pub fn new(scalings: Vec<f64>) -> Result<Self> {
        check_scalings(&scalings)?;
        Ok(Self { scalings })
    }

    pub fn k(&self) -> usize {
        self.scalings.len()
    }

    /// Positions on the line: the prefix sums of the gaps.
    pub fn positions(&self) -> Vec<f64> {
        let mut acc = 0.0;
        let mut out = vec![0.0];
        for &l in &self.scalings {
            acc += l;
            out.push(acc);
        }
        out
    }

    /// The baton laid along a staircase in a `k`-dimensional box with
    /// sides `l_1..l_k`. In the Manhattan norm this is an isometric copy.
    pub fn box_points(&self) -> Vec<Vec<f64>> {
        let k = self.k();
        (0..=k)
            .map(|j| {
                let mut p = vec![0.0; k];
                p[..j].copy_from_slice(&self.scalings[..j]);
                p
            })
            .collect()
    }
}

fn check_scalings(scalings: &[f64]) -> Result<()> {
    if let Some(bad) = scalings.iter().find(|l| !(**l > 0.0) || !l.is_finite()) {
        return domain(format!("scaling {bad} must be positive and finite"));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TriangleShape {
    Acute,
    Right,
    Obtuse,
}

fn check_triangle(a: f64, b: f64, c: f64) -> Result<()> {
    if [a, b, c].iter().any(|x| !(*x > 0.0) || !x.is_finite()) {
        return domain(format!("side lengths ({a}, {b}, {c}) must be positive"));
    }
    if a + b <= c || b + c <= a || c + a <= b {
        return domain(format!(
            "side lengths ({a}, {b}, {c}) violate the strict triangle inequality"
        ));
    }
    Ok(())
}

/// Classifies a non-degenerate triangle by comparing the largest squared side
/// against the sum of the other two.
pub fn classify_triangle(a: f64, b: f64, c: f64) -> Result<TriangleShape> {
    check_triangle(a, b, c)?;
    let mut sq = [a * a, b * b, c * c];
    sq.sort_by(f64::total_cmp);
    let excess = sq[2] - sq[0] - sq[1];
    Ok(if excess.abs() <= RIGHT_ANGLE_TOL * sq[2].max(1.0) {
        TriangleShape::Right
    } else if excess < 0.0 {
        TriangleShape::Acute
    } else {
        TriangleShape::Obtuse
    })
}

/// Euclidean embedding of a triangle into a scaled semicross.
///
/// A right triangle with legs `a`, `b` is `SC^2(a, b)` itself (the right
/// angle at the origin). An acute triangle sits on the three non-origin
/// points of `SC^3(sqrt((a²+b²-c²)/2), sqrt((b²+c²-a²)/2), sqrt((c²+a²-b²)/2))`.
pub fn euclidean_triangle_to_semicross(a: f64, b: f64, c: f64) -> Result<SemicrossSpec> {
    match classify_triangle(a, b, c)? {
        TriangleShape::Right => {
            let sides = [a, b, c];
            let hyp = (0..3).max_by(|&i, &j| sides[i].total_cmp(&sides[j])).unwrap();
            let legs: Vec<f64> = (0..3).filter(|&i| i != hyp).map(|i| sides[i]).collect();
            SemicrossSpec::new(legs)
        }
        TriangleShape::Acute => {
            let (a2, b2, c2) = (a * a, b * b, c * c);
            let spec = SemicrossSpec::new(vec![
                ((a2 + b2 - c2) / 2.0).sqrt(),
                ((b2 + c2 - a2) / 2.0).sqrt(),
                ((c2 + a2 - b2) / 2.0).sqrt(),
            ])?;
            if !validate_semicross(&spec, &triangle_matrix_nonorigin(a, b, c), Norm::Euclidean)? {
                return Err(Error::Certification(format!(
                    "acute embedding of ({a}, {b}, {c}) does not reproduce its sides"
                )));
            }
            Ok(spec)
        }
        TriangleShape::Obtuse => Err(Error::Unsupported(format!(
            "obtuse triangle ({a}, {b}, {c}): embedding obtuse triangles needs further \
             machinery and is not supported"
        ))),
    }
}

/// Manhattan embedding of any triangle into
/// `SC^3((a+b-c)/2, (b+c-a)/2, (c+a-b)/2)`; the three non-origin points
/// realize the sides since `l_i + l_j` recovers each of `a`, `b`, `c`.
pub fn manhattan_triangle_to_semicross(a: f64, b: f64, c: f64) -> Result<SemicrossSpec> {
    check_triangle(a, b, c)?;
    let spec = SemicrossSpec::new(vec![
        (a + b - c) / 2.0,
        (b + c - a) / 2.0,
        (c + a - b) / 2.0,
    ])?;
    if !validate_semicross(&spec, &triangle_matrix_nonorigin(a, b, c), Norm::Manhattan)? {
        return Err(Error::Certification(format!(
            "Manhattan embedding of ({a}, {b}, {c}) does not reproduce its sides"
        )));
    }
    Ok(spec)
}

/// Pairwise distances the non-origin points `p1, p2, p3` must realize for
/// either triangle formula: `|p1 p2| = b`, `|p2 p3| = c`, `|p1 p3| = a`.
pub fn triangle_matrix_nonorigin(a: f64, b: f64, c: f64) -> Vec<Vec<f64>> {
    vec![vec![0.0, b, a], vec![b, 0.0, c], vec![a, c, 0.0]]
}

/// Distances `origin, a e1, b e2` of a right triangle with legs `a`, `b`.
pub fn right_triangle_matrix(a: f64, b: f64) -> Vec<Vec<f64>> {
    let h = a.hypot(b);
    vec![vec![0.0, a, b], vec![a, 0.0, h], vec![b, h, 0.0]]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplexEmbedding {
    pub semicross: SemicrossSpec,
    /// Common distance between the `k + 1` non-origin points.
    pub side: f64,
    /// Factor turning the realized simplex into one with unit side.
    pub unit_rescale: f64,
}

/// The regular `k`-simplex as the non-origin points of a `(k+1)`-semicross.
/// Euclidean: unit scalings at mutual distance `sqrt 2`. Manhattan:
/// scalings `1/2` at mutual distance `1`.
pub fn simplex_to_semicross(k: usize, norm: Norm) -> Result<SimplexEmbedding> {
    if k == 0 {
        return domain("simplex dimension must be at least 1");
    }
    let (scale, side) = match norm {
        Norm::Euclidean => (1.0, 2f64.sqrt()),
        Norm::Manhattan => (0.5, 1.0),
    };
    let semicross = SemicrossSpec::new(vec![scale; k + 1])?;
    let expected: Vec<Vec<f64>> = (0..=k)
        .map(|i| (0..=k).map(|j| if i == j { 0.0 } else { side }).collect())
        .collect();
    if !validate_semicross(&semicross, &expected, norm)? {
        return Err(Error::Certification(format!("regular {k}-simplex embedding failed")));
    }
    Ok(SimplexEmbedding { semicross, side, unit_rescale: 1.0 / side })
}

/// Each coordinate projection of a finite point set, encoded as the baton
/// of its sorted distinct values. The input lies in the product of these
/// batons (each shifted by its minimum).
pub fn finite_set_to_grid(points: &[Vec<f64>]) -> Result<Vec<BatonSpec>> {
    let Some(first) = points.first() else {
        return usage("point list is empty");
    };
    let d = first.len();
    if points.iter().any(|p| p.len() != d) {
        return usage("points have inconsistent dimensions");
    }
    if points.iter().flatten().any(|x| !x.is_finite()) {
        return domain("point coordinates must be finite");
    }
    let mut batons = Vec::with_capacity(d);
    for i in 0..d {
        let mut values: Vec<f64> = points.iter().map(|p| p[i]).collect();
        values.sort_by(f64::total_cmp);
        values.dedup();
        let gaps: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
        let baton = BatonSpec::new(gaps)?;
        let positions = baton.positions();
        for p in points {
            let offset = p[i] - values[0];
            let tol = VALIDATION_TOL * positions.last().unwrap().abs().max(1.0);
            if !positions.iter().any(|q| (q - offset).abs() <= tol) {
                return Err(Error::Certification(format!(
                    "coordinate {i} value {} not on its grid baton",
                    p[i]
                )));
            }
        }
        batons.push(baton);
    }
    Ok(batons)
}

/// Either shape that can be realized as a point set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Realizable {
    Semicross(SemicrossSpec),
    Baton(BatonSpec),
}

/// Checks every pairwise distance of a realized configuration against
/// `expected`.
///
/// For a semicross, a `(k+1) x (k+1)` matrix is compared with all points
/// (origin first) and a `k x k` matrix with the non-origin points only.
/// A baton always needs `(k+1) x (k+1)`; its points are collinear so the
/// norm does not matter.
pub fn validate_embedding(spec: &Realizable, expected: &[Vec<f64>], norm: Norm) -> Result<bool> {
    match spec {
        Realizable::Semicross(s) => validate_semicross(s, expected, norm),
        Realizable::Baton(b) => {
            let pts: Vec<Vec<f64>> = b.positions().into_iter().map(|x| vec![x]).collect();
            compare(&pts, expected, norm)
        }
    }
}

fn validate_semicross(spec: &SemicrossSpec, expected: &[Vec<f64>], norm: Norm) -> Result<bool> {
    let pts = spec.points();
    if expected.len() == pts.len() {
        compare(&pts, expected, norm)
    } else if expected.len() == spec.k() {
        compare(&pts[1..], expected, norm)
    } else {
        usage(format!(
            "distance matrix is {0}x{0}; a {1}-semicross needs {2}x{2} or {1}x{1}",
            expected.len(),
            spec.k(),
            spec.k() + 1
        ))
    }
}

fn compare(pts: &[Vec<f64>], expected: &[Vec<f64>], norm: Norm) -> Result<bool> {
    if expected.len() != pts.len() || expected.iter().any(|row| row.len() != pts.len()) {
        return usage(format!(
            "distance matrix must be {0}x{0} for {0} points",
            pts.len()
        ));
    }
    let scale = expected.iter().flatten().fold(1.0f64, |m, x| m.max(x.abs()));
    let tol = VALIDATION_TOL * scale;
    for (i, p) in pts.iter().enumerate() {
        for (j, q) in pts.iter().enumerate().skip(i + 1) {
            if (norm.distance(p, q) - expected[i][j]).abs() > tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn three_four_five_is_right() {
        let s = euclidean_triangle_to_semicross(3.0, 4.0, 5.0).unwrap();
        assert_eq!(s.scalings, vec![3.0, 4.0]);
        let ok = validate_embedding(
            &Realizable::Semicross(s.clone()),
            &right_triangle_matrix(3.0, 4.0),
            Norm::Euclidean,
        );
        assert!(ok.unwrap());
        // hypotenuse is 7 in l1
        let l1 = validate_embedding(
            &Realizable::Semicross(s),
            &right_triangle_matrix(3.0, 4.0),
            Norm::Manhattan,
        );
        assert!(!l1.unwrap());
        // legs come out in input order whichever side is the hypotenuse
        assert_eq!(euclidean_triangle_to_semicross(5.0, 4.0, 3.0).unwrap().scalings, vec![4.0, 3.0]);
    }

    #[test]
    fn equilateral_euclidean() {
        let s = euclidean_triangle_to_semicross(1.0, 1.0, 1.0).unwrap();
        for l in &s.scalings {
            assert!((l - 0.5f64.sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn obtuse_and_degenerate_rejected() {
        assert!(matches!(
            euclidean_triangle_to_semicross(1.0, 1.0, 1.5),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            euclidean_triangle_to_semicross(1.0, 1.0, 2.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            manhattan_triangle_to_semicross(1.0, 1.0, 2.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn manhattan_triangles() {
        assert_eq!(manhattan_triangle_to_semicross(1.0, 1.0, 1.0).unwrap().scalings, vec![0.5; 3]);
        let s = manhattan_triangle_to_semicross(3.0, 4.0, 5.0).unwrap();
        assert_eq!(s.scalings, vec![1.0, 3.0, 2.0]);
        let ones = vec![vec![0.0, 1.0, 1.0], vec![1.0, 0.0, 1.0], vec![1.0, 1.0, 0.0]];
        let half = Realizable::Semicross(SemicrossSpec::new(vec![0.5; 3]).unwrap());
        assert!(validate_embedding(&half, &ones, Norm::Manhattan).unwrap());
    }

    #[test]
    fn simplices() {
        let e = simplex_to_semicross(2, Norm::Euclidean).unwrap();
        assert_eq!(e.semicross.k(), 3);
        assert!((e.side - 2f64.sqrt()).abs() < 1e-15);
        let m = simplex_to_semicross(2, Norm::Manhattan).unwrap();
        assert_eq!(m.semicross.scalings, vec![0.5; 3]);
        assert_eq!(m.side, 1.0);
        let one = simplex_to_semicross(1, Norm::Manhattan).unwrap();
        assert_eq!(one.semicross.k(), 2);
        assert!(simplex_to_semicross(0, Norm::Euclidean).is_err());
    }

    #[test]
    fn grids() {
        let pts = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 2.0]];
        let g = finite_set_to_grid(&pts).unwrap();
        assert_eq!(g[0].scalings, vec![1.0]);
        assert_eq!(g[1].scalings, vec![2.0]);
        let single = finite_set_to_grid(&[vec![3.0, 4.0, 5.0]]).unwrap();
        assert!(single.iter().all(|b| b.k() == 0));
        let line: Vec<Vec<f64>> = (0..5).map(|i| vec![0.5 * i as f64, 7.0]).collect();
        let g = finite_set_to_grid(&line).unwrap();
        assert_eq!(g[0].scalings, vec![0.5; 4]);
        assert!(finite_set_to_grid(&[]).is_err());
        assert!(finite_set_to_grid(&[vec![1.0], vec![1.0, 2.0]]).is_err());
    }

    #[test]
    fn dimension_mismatch_is_usage_error() {
        let s = Realizable::Semicross(SemicrossSpec::new(vec![1.0, 1.0]).unwrap());
        assert!(matches!(
            validate_embedding(&s, &[vec![0.0]], Norm::Euclidean),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn baton_validation() {
        let b = BatonSpec::new(vec![1.0, 2.0]).unwrap();
        let m = vec![vec![0.0, 1.0, 3.0], vec![1.0, 0.0, 2.0], vec![3.0, 2.0, 0.0]];
        assert!(validate_embedding(&Realizable::Baton(b.clone()), &m, Norm::Euclidean).unwrap());
        let pts = b.box_points();
        for (w, gap) in pts.windows(2).zip(&b.scalings) {
            assert_eq!(Norm::Manhattan.distance(&w[0], &w[1]), *gap);
        }
        assert_eq!(Norm::Manhattan.distance(&pts[0], &pts[2]), 3.0);
    }

    proptest! {
        #[test]
        fn classification_is_permutation_invariant(a in 0.1f64..10.0, b in 0.1f64..10.0, c in 0.1f64..10.0) {
            if let Ok(shape) = classify_triangle(a, b, c) {
                for (x, y, z) in [(b, c, a), (c, a, b), (b, a, c), (a, c, b), (c, b, a)] {
                    prop_assert_eq!(classify_triangle(x, y, z).unwrap(), shape);
                }
            }
        }

        #[test]
        fn manhattan_half_defects_reproduce_sides(a in 0.1f64..10.0, b in 0.1f64..10.0, c in 0.1f64..10.0) {
            if let Ok(s) = manhattan_triangle_to_semicross(a, b, c) {
                let l = &s.scalings;
                prop_assert!((l[0] + l[1] - b).abs() < 1e-12);
                prop_assert!((l[1] + l[2] - c).abs() < 1e-12);
                prop_assert!((l[0] + l[2] - a).abs() < 1e-12);
            }
        }
    }
}
