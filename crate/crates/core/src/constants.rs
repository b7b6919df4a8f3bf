//! Named growth constants and the chromatic-number / sunflower bases that
//! follow from them.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::embeddings::{self, Norm, TriangleShape};
use crate::error::{domain, usage, Error, Result};
use crate::rates::GrowthRate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NamedConstant {
    /// `(1 + sqrt 2) / 2`, the inverse rate of the sunflower block problem.
    Psi,
    /// `(1 + sqrt 3) / 2`, unit distances in the Manhattan norm.
    Psi1,
    /// `sup_{0<=x<=1} (1 + x + x³) / (1 + x² + x⁴)`, unit distances in the
    /// Euclidean norm.
    Psi2,
}

impl std::str::FromStr for NamedConstant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "psi" => Ok(NamedConstant::Psi),
            "psi1" => Ok(NamedConstant::Psi1),
            "psi2" => Ok(NamedConstant::Psi2),
            other => usage(format!("unknown constant '{other}' (expected psi, psi1, psi2)")),
        }
    }
}

impl NamedConstant {
    pub const ALL: [NamedConstant; 3] = [NamedConstant::Psi2, NamedConstant::Psi1, NamedConstant::Psi];

    pub fn name(self) -> &'static str {
        match self {
            NamedConstant::Psi => "psi",
            NamedConstant::Psi1 => "psi1",
            NamedConstant::Psi2 => "psi2",
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            NamedConstant::Psi => "Theorem 1.3",
            NamedConstant::Psi1 => "Theorem 3.1",
            NamedConstant::Psi2 => "Theorem 1.1",
        }
    }
}

pub fn named_constant(name: NamedConstant) -> GrowthRate {
    let base = match name {
        NamedConstant::Psi => (1.0 + 2f64.sqrt()) / 2.0,
        NamedConstant::Psi1 => (1.0 + 3f64.sqrt()) / 2.0,
        NamedConstant::Psi2 => psi2_maximum().value,
    };
    GrowthRate { log_base: base.ln() }
}

/// The rational function whose supremum over `[0, 1]` is `psi2`.
pub fn psi2_objective(x: f64) -> f64 {
    let x2 = x * x;
    (1.0 + x + x2 * x) / (1.0 + x2 + x2 * x2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Maximum {
    pub argmax: f64,
    pub value: f64,
}

static PSI2: OnceLock<Maximum> = OnceLock::new();

/// Maximizer of [`psi2_objective`] on `[0, 1]`, computed once per process.
pub fn psi2_maximum() -> Maximum {
    *PSI2.get_or_init(|| golden_section_max(psi2_objective, 0.0, 1.0, 1e-10))
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`,
/// finished by one parabolic step through the final bracket.
pub fn golden_section_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64, x_tol: f64) -> Maximum {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > x_tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let (mut best_x, mut best_f) = if fc >= fd { (c, fc) } else { (d, fd) };

    // vertex of the parabola through (a, m, b)
    let m = (a + b) / 2.0;
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let denom = (m - a) * (fm - fb) - (m - b) * (fm - fa);
    if denom != 0.0 {
        let num = (m - a).powi(2) * (fm - fb) - (m - b).powi(2) * (fm - fa);
        let x = (m - 0.5 * num / denom).clamp(lo, hi);
        let fx = f(x);
        if fx > best_f {
            best_x = x;
            best_f = fx;
        }
    }
    for (x, fx) in [(a, fa), (m, fm), (b, fb)] {
        if fx > best_f {
            best_x = x;
            best_f = fx;
        }
    }
    Maximum { argmax: best_x, value: best_f }
}

/// A configuration whose monochromatic copies are forbidden.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConfigKind {
    TwoPoint,
    /// Vertices of the regular `k`-simplex.
    Simplex { k: usize },
    Semicross { scalings: Vec<f64> },
    RightTriangle { a: f64, b: f64 },
    AcuteTriangle { a: f64, b: f64, c: f64 },
    /// Any non-degenerate triangle; only meaningful for the Manhattan norm.
    Triangle { a: f64, b: f64, c: f64 },
    Baton { scalings: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForbiddenConfig {
    pub kind: ConfigKind,
    pub norm: Norm,
}

/// A base together with where it comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaggedRate {
    pub rate: GrowthRate,
    pub tag: &'static str,
}

fn check_scalings(s: &[f64]) -> Result<()> {
    if s.is_empty() {
        return domain("at least one scaling is required");
    }
    embeddings::SemicrossSpec::new(s.to_vec()).map(|_| ())
}

/// The best proven base for `chi(R^n, config)` in the given norm.
///
/// Euclidean: a `k`-semicross gets `psi2^{1/k}`, a `k`-simplex sits inside a
/// `(k+1)`-semicross, a right triangle is a 2-semicross and an acute one
/// fits in a 3-semicross. Manhattan: batons and semicrosses with `k` gaps
/// get `psi1^{1/k}`, simplices `psi1^{1/(k+1)}`, any triangle `psi1^{1/3}`.
pub fn chromatic_base(config: &ForbiddenConfig) -> Result<TaggedRate> {
    let psi2 = named_constant(NamedConstant::Psi2);
    let psi1 = named_constant(NamedConstant::Psi1);
    let root = |g: GrowthRate, k: usize| g.pow(1.0 / k as f64);
    use ConfigKind::*;
    let (rate, tag) = match (&config.kind, config.norm) {
        (TwoPoint, Norm::Euclidean) => (psi2, "Theorem 1.1"),
        (TwoPoint, Norm::Manhattan) => (psi1, "Theorem 3.1"),
        (Simplex { k }, norm) => {
            if *k == 0 {
                return domain("simplex dimension must be at least 1");
            }
            match norm {
                Norm::Euclidean => (root(psi2, k + 1), "Theorem 1.4"),
                Norm::Manhattan => (root(psi1, k + 1), "Theorem 3.2"),
            }
        }
        (Semicross { scalings }, norm) => {
            check_scalings(scalings)?;
            match norm {
                Norm::Euclidean => (root(psi2, scalings.len()), "Theorem 1.4"),
                Norm::Manhattan => (root(psi1, scalings.len()), "Theorem 3.2"),
            }
        }
        (RightTriangle { a, b }, Norm::Euclidean) => {
            if embeddings::classify_triangle(*a, *b, a.hypot(*b))? != TriangleShape::Right {
                return domain("legs do not form a right triangle");
            }
            (root(psi2, 2), "Theorem 1.5")
        }
        (AcuteTriangle { a, b, c }, Norm::Euclidean) => {
            match embeddings::classify_triangle(*a, *b, *c)? {
                TriangleShape::Acute => {}
                other => return domain(format!("triangle ({a}, {b}, {c}) is {other:?}, not acute")),
            }
            embeddings::euclidean_triangle_to_semicross(*a, *b, *c)?;
            (root(psi2, 3), "Theorem 1.5")
        }
        (Triangle { a, b, c }, Norm::Euclidean) => {
            return Err(Error::Unsupported(format!(
                "general triangle ({a}, {b}, {c}) in the Euclidean norm: use right_triangle or \
                 acute_triangle (obtuse triangles are not supported)"
            )))
        }
        (
            RightTriangle { a, b },
            Norm::Manhattan,
        ) => {
            embeddings::manhattan_triangle_to_semicross(*a, *b, a.hypot(*b))?;
            (root(psi1, 3), "Theorem 3.2")
        }
        (AcuteTriangle { a, b, c } | Triangle { a, b, c }, Norm::Manhattan) => {
            embeddings::manhattan_triangle_to_semicross(*a, *b, *c)?;
            (root(psi1, 3), "Theorem 3.2")
        }
        (Baton { scalings }, Norm::Manhattan) => {
            check_scalings(scalings)?;
            (root(psi1, scalings.len()), "Theorem 3.2")
        }
        (Baton { .. }, Norm::Euclidean) => {
            return Err(Error::Unsupported(
                "batons are only handled in the Manhattan norm".into(),
            ))
        }
    };
    Ok(TaggedRate { rate, tag })
}

/// Base `2 psi^{-1/k}` bounding families with no weak `k`-sunflower.
pub fn sunflower_base(k: usize) -> Result<GrowthRate> {
    if k < 3 {
        return domain(format!("weak sunflowers need k >= 3 (got {k})"));
    }
    let psi = named_constant(NamedConstant::Psi);
    Ok(GrowthRate { log_base: std::f64::consts::LN_2 - psi.log_base / k as f64 })
}

/// `n ln psi2 - ln k`: log of `psi2^n / k`, the lower bound on
/// `chi(R^{kn}, SC^k)` with the `o(1)` term dropped.
pub fn semicross_chromatic_log(n: u64, k: u64) -> Result<f64> {
    if n == 0 || k == 0 {
        return domain("n and k must be positive");
    }
    Ok(n as f64 * named_constant(NamedConstant::Psi2).log_base - (k as f64).ln())
}

/// `floor((ln psi2 - eps) n / ln n)`: simplex dimensions up to this keep
/// `chi(R^n, simplex)` growing, with the `o(1)` term dropped.
pub fn simplex_dimension_threshold(n: u64, epsilon: f64) -> Result<u64> {
    let ln_psi2 = named_constant(NamedConstant::Psi2).log_base;
    if n < 3 {
        return domain("n must be at least 3");
    }
    if !(epsilon > 0.0 && epsilon < ln_psi2) {
        return domain(format!("epsilon must lie in (0, ln psi2 = {ln_psi2:.6})"));
    }
    let nf = n as f64;
    Ok(((ln_psi2 - epsilon) * nf / nf.ln()).floor() as u64)
}
