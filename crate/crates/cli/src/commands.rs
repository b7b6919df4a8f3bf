use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ramsey_rates::constants::{self, ConfigKind, ForbiddenConfig, NamedConstant};
use ramsey_rates::embeddings::{self, Norm, Realizable, SemicrossSpec, TriangleShape};
use ramsey_rates::family_oracle::{self, SetFamily};
use ramsey_rates::partition_search::{self, OptimizerSettings, PartitionPlan};
use ramsey_rates::prime_split;
use ramsey_rates::product_compose::{self, SuperRamseyParams};
use ramsey_rates::rates::PrimeClass;
use ramsey_rates::tree_concat::{self, Shape};
use ramsey_rates::{Error, Result};
use clap::ValueEnum;
use serde_json::{json, Value};

use crate::args::*;
use crate::config::FileConfig;
use crate::output::{Output, PLUMBING};

pub struct Outcome {
    pub inputs: Value,
    pub outputs: Vec<Output>,
}

impl From<NormArg> for Norm {
    fn from(n: NormArg) -> Self {
        match n {
            NormArg::Euclidean => Norm::Euclidean,
            NormArg::Manhattan => Norm::Manhattan,
        }
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::Usage(format!("--{flag} is required here")))
}

fn triple(v: &[f64], flag: &str) -> Result<(f64, f64, f64)> {
    match v {
        [a, b, c] => Ok((*a, *b, *c)),
        _ => Err(Error::Usage(format!("--{flag} takes three comma-separated values"))),
    }
}

pub fn constants() -> Result<Outcome> {
    let mut out = Vec::new();
    for name in NamedConstant::ALL {
        out.push(Output::rate(name.name(), constants::named_constant(name), name.tag()));
    }
    out.push(Output::value("psi2_argmax", constants::psi2_maximum().argmax, "Theorem 1.1"));

    let chrom = |kind: ConfigKind, norm: Norm| constants::chromatic_base(&ForbiddenConfig { kind, norm });
    let rows: Vec<(&str, ConfigKind, Norm)> = vec![
        ("simplex_k2", ConfigKind::Simplex { k: 2 }, Norm::Euclidean),
        ("simplex_k3", ConfigKind::Simplex { k: 3 }, Norm::Euclidean),
        ("right_triangle", ConfigKind::RightTriangle { a: 3.0, b: 4.0 }, Norm::Euclidean),
        ("acute_triangle", ConfigKind::AcuteTriangle { a: 1.0, b: 1.0, c: 1.0 }, Norm::Euclidean),
        ("manhattan_triangle", ConfigKind::Triangle { a: 1.0, b: 1.0, c: 1.0 }, Norm::Manhattan),
        ("manhattan_simplex_k3", ConfigKind::Simplex { k: 3 }, Norm::Manhattan),
    ];
    for (name, kind, norm) in rows {
        let t = chrom(kind, norm)?;
        out.push(Output::rate(name, t.rate, t.tag));
    }
    out.push(Output::rate("sunflower_k3", constants::sunflower_base(3)?, "Theorem 1.3"));
    let fi = partition_search::forbidden_intersection_base;
    out.push(Output::rate("intersection_centered_c1", fi(0.5, 0.25, PrimeClass::PrimePower)?, "Theorem 1.6"));
    out.push(Output::rate("intersection_centered_c3", fi(0.5, 0.25, PrimeClass::Odd)?, "Theorem 1.8"));
    out.push(Output::rate(
        "symmetric_thirds_0.5_0.15",
        partition_search::plan_rate(&PartitionPlan::symmetric(0.5, 0.15, 3), 0.5)?,
        "Theorem 1.8",
    ));
    out.push(Output::rate("prime_difference_0.5_0.15", fi(0.5, 0.15, PrimeClass::PrimePower)?, "Theorem 1.6"));
    Ok(Outcome { inputs: json!({}), outputs: out })
}

fn intersection_class(c: Option<u32>, hypothetical: bool) -> Result<PrimeClass> {
    if hypothetical {
        return match c {
            None | Some(2) => Ok(PrimeClass::HypotheticalEven),
            Some(other) => Err(Error::Usage(format!("--hypothetical fixes c = 2, got --c {other}"))),
        };
    }
    PrimeClass::from_c(c.unwrap_or(1))
}

fn class_tag(class: PrimeClass, proven: &'static str) -> &'static str {
    match class {
        PrimeClass::PrimePower => "Theorem 1.6",
        PrimeClass::HypotheticalEven => "hypothetical (c = 2)",
        _ => proven,
    }
}

pub fn bound(a: &BoundArgs) -> Result<Outcome> {
    let norm: Norm = a.norm.into();
    let config = a.config.to_possible_value().map(|v| v.get_name().to_owned()).unwrap_or_default();
    let mut inputs = json!({ "config": config, "norm": norm });
    let chromatic = |kind: ConfigKind| -> Result<Vec<Output>> {
        let t = constants::chromatic_base(&ForbiddenConfig { kind, norm })?;
        Ok(vec![Output::rate("base", t.rate, t.tag)])
    };
    let outputs = match a.config {
        BoundKind::TwoPoint => chromatic(ConfigKind::TwoPoint)?,
        BoundKind::Simplex => {
            let k = need(a.k, "k")?;
            inputs["k"] = json!(k);
            chromatic(ConfigKind::Simplex { k })?
        }
        BoundKind::Semicross | BoundKind::Baton => {
            if a.scalings.is_empty() {
                return Err(Error::Usage("--scalings is required here".into()));
            }
            inputs["scalings"] = json!(a.scalings);
            let scalings = a.scalings.clone();
            chromatic(if a.config == BoundKind::Baton {
                ConfigKind::Baton { scalings }
            } else {
                ConfigKind::Semicross { scalings }
            })?
        }
        BoundKind::RightTriangle => {
            let (x, y) = match a.sides.as_slice() {
                [x, y] => (*x, *y),
                _ => return Err(Error::Usage("--sides takes the two legs".into())),
            };
            inputs["sides"] = json!(a.sides);
            chromatic(ConfigKind::RightTriangle { a: x, b: y })?
        }
        BoundKind::AcuteTriangle | BoundKind::Triangle => {
            let (x, y, z) = triple(&a.sides, "sides")?;
            inputs["sides"] = json!(a.sides);
            chromatic(if a.config == BoundKind::Triangle {
                ConfigKind::Triangle { a: x, b: y, c: z }
            } else {
                ConfigKind::AcuteTriangle { a: x, b: y, c: z }
            })?
        }
        BoundKind::Sunflower => {
            let k = a.k.unwrap_or(3);
            inputs["k"] = json!(k);
            inputs["n"] = json!(a.n);
            let chain = partition_search::sunflower_chain(k, a.n)?;
            let mut out = vec![Output::rate("base", chain.rate, "Theorem 1.3")];
            out.push(Output::value("block_rho", chain.block_rho, "Theorem 1.3"));
            out.push(Output::value("block_sigma", chain.block_sigma, "Theorem 1.3"));
            for step in &chain.steps {
                out.push(Output::value(
                    format!("step_{}", step.name),
                    json!({ "log_rate_cost": step.log_rate_cost, "polynomial": step.polynomial, "description": step.description }),
                    "Theorem 1.3",
                ));
            }
            if let Some(f) = chain.finite {
                out.push(Output::value("finite", f, PLUMBING));
            }
            out
        }
        BoundKind::Intersection | BoundKind::Clique => {
            let rho = need(a.rho, "rho")?;
            let sigma = need(a.sigma, "sigma")?;
            let class = intersection_class(a.c, a.hypothetical)?;
            inputs["rho"] = json!(rho);
            inputs["sigma"] = json!(sigma);
            inputs["c"] = json!(class.c());
            if a.config == BoundKind::Clique {
                let k = need(a.k, "k")?;
                inputs["k"] = json!(k);
                let r = partition_search::clique_base(rho, sigma, k, class)?;
                let tag = if class.is_hypothetical() { "hypothetical (c = 2)" } else { "Theorem 1.9" };
                vec![Output::rate("base", r, tag)]
            } else {
                let r = partition_search::forbidden_intersection_base(rho, sigma, class)?;
                vec![Output::rate("base", r, class_tag(class, "Theorem 1.8"))]
            }
        }
        BoundKind::Plan => {
            let path = a.plan.as_deref().ok_or_else(|| Error::Usage("--plan is required here".into()))?;
            let plan = read_plan(path)?;
            let rho = a.rho.unwrap_or_else(|| plan.rho());
            inputs["rho"] = json!(rho);
            inputs["plan"] = json!(plan);
            let rate = partition_search::plan_rate(&plan, rho)?;
            let blocks = partition_search::block_log_rates(&plan, rho)?;
            vec![Output::rate("base", rate, "Theorem 1.8"), Output::value("block_log_rates", blocks, "Theorem 1.8")]
        }
    };
    Ok(Outcome { inputs, outputs })
}

fn read_plan(path: &Path) -> Result<PartitionPlan> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("cannot read plan {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Usage(format!("plan {}: {e}", path.display())))
}

pub fn optimize(a: &OptimizeArgs, cfg: &FileConfig) -> Result<Outcome> {
    let d = OptimizerSettings::default();
    let o = &cfg.optimizer;
    let settings = OptimizerSettings {
        starts: a.starts.or(o.starts).unwrap_or(d.starts),
        tolerance: a.tolerance.or(o.tolerance).unwrap_or(d.tolerance),
        max_iter: a.max_iter.or(o.max_iter).unwrap_or(d.max_iter),
        restarts: o.restarts.unwrap_or(d.restarts),
        seed: a.seed.or(o.seed).unwrap_or(d.seed),
    };
    let inputs = json!({ "rho": a.rho, "sigma": a.sigma, "k": a.k, "settings": settings, "certify_n": a.certify_n });
    if !(3..=4).contains(&a.k) {
        return Err(Error::Domain(format!("--k must be 3 or 4 (got {})", a.k)));
    }
    let r = partition_search::optimize_plan(a.rho, a.sigma, a.k, &settings)?;
    let floor = partition_search::forbidden_intersection_base(a.rho, a.sigma, PrimeClass::PrimePower)?;
    let mut outputs = vec![
        Output::rate("base", r.rate, "Theorem 1.8"),
        Output::rate("symmetric_base", r.symmetric_rate, "Theorem 1.8"),
        Output::rate("prime_difference_base", floor, "Theorem 1.6"),
        Output::value("log_improvement", r.log_improvement, PLUMBING),
        Output::value("plan", &r.plan, PLUMBING),
        Output::value("evaluations", r.evaluations, PLUMBING),
    ];
    if let Some(n) = a.certify_n {
        outputs.push(Output::value("certificate", partition_search::plan_certificate(&r.plan, n)?, PLUMBING));
    }
    Ok(Outcome { inputs, outputs })
}

pub fn prime_split(a: &PrimeArgs) -> Result<Outcome> {
    let inputs = json!({
        "target": a.target, "parts": a.parts, "proportions": a.proportions,
        "recipe": a.recipe, "goldbach": a.goldbach,
    });
    let outputs = if a.goldbach {
        vec![Output::value("split", prime_split::goldbach_pair_split(a.target)?, "empirical (Goldbach)")]
    } else if a.recipe {
        vec![Output::value("recipe", prime_split::four_prime_recipe(a.target)?, PLUMBING)]
    } else if !a.proportions.is_empty() {
        vec![Output::value("split", prime_split::proportional_prime_split(a.target, &a.proportions)?, PLUMBING)]
    } else {
        vec![Output::value("split", prime_split::near_equal_prime_split(a.target, a.parts)?, PLUMBING)]
    };
    Ok(Outcome { inputs, outputs })
}

pub fn compose(a: &ComposeArgs) -> Result<Outcome> {
    let p1 = SuperRamseyParams::new(a.c1, a.eps1, a.m1)?;
    let p2 = SuperRamseyParams::new(a.c2, a.eps2, a.m2)?;
    let inputs = json!({ "first": p1, "second": p2, "iterate": a.iterate });
    let comp = product_compose::composed_rate(&p1, &p2)?;
    let mut outputs = vec![
        Output::rate("ratio_base", comp.rate, "Theorem 1.2"),
        Output::value("eta", comp.eta, "Theorem 1.2"),
        Output::value("product", comp.product, "Theorem 1.2"),
        Output::value("summand_log_rates", comp.summand_log_rates, "Theorem 1.2"),
    ];
    if let Some(k) = a.iterate {
        for (i, r) in product_compose::iterated_rates(&p1, k)?.into_iter().enumerate() {
            outputs.push(Output::rate(format!("power_{}", i + 1), r, "Theorem 1.2"));
        }
    }
    Ok(Outcome { inputs, outputs })
}

pub fn embed(a: &EmbedArgs) -> Result<Outcome> {
    let norm: Norm = a.norm.into();
    let given = [!a.triangle.is_empty(), a.simplex.is_some(), !a.baton.is_empty()];
    if given.iter().filter(|&&g| g).count() != 1 {
        return Err(Error::Usage("give exactly one of --triangle, --simplex, --baton".into()));
    }
    let mut inputs = json!({ "norm": norm });
    let mut outputs = Vec::new();
    let push_semicross = |outputs: &mut Vec<Output>, spec: &SemicrossSpec, expected: &[Vec<f64>]| -> Result<()> {
        let ok = embeddings::validate_embedding(&Realizable::Semicross(spec.clone()), expected, norm)?;
        if !ok {
            return Err(Error::Certification("embedding does not reproduce the distances".into()));
        }
        outputs.push(Output::value("semicross", &spec.scalings, PLUMBING));
        outputs.push(Output::value("validated", ok, PLUMBING));
        Ok(())
    };
    if !a.triangle.is_empty() {
        let (x, y, z) = triple(&a.triangle, "triangle")?;
        inputs["triangle"] = json!(a.triangle);
        let shape = embeddings::classify_triangle(x, y, z)?;
        outputs.push(Output::value("shape", shape, PLUMBING));
        let kind = match norm {
            Norm::Euclidean => {
                let spec = embeddings::euclidean_triangle_to_semicross(x, y, z)?;
                if shape == TriangleShape::Right {
                    push_semicross(&mut outputs, &spec, &embeddings::right_triangle_matrix(spec.scalings[0], spec.scalings[1]))?;
                    ConfigKind::RightTriangle { a: spec.scalings[0], b: spec.scalings[1] }
                } else {
                    push_semicross(&mut outputs, &spec, &embeddings::triangle_matrix_nonorigin(x, y, z))?;
                    ConfigKind::AcuteTriangle { a: x, b: y, c: z }
                }
            }
            Norm::Manhattan => {
                let spec = embeddings::manhattan_triangle_to_semicross(x, y, z)?;
                push_semicross(&mut outputs, &spec, &embeddings::triangle_matrix_nonorigin(x, y, z))?;
                ConfigKind::Triangle { a: x, b: y, c: z }
            }
        };
        let t = constants::chromatic_base(&ForbiddenConfig { kind, norm })?;
        outputs.push(Output::rate("base", t.rate, t.tag));
    } else if let Some(k) = a.simplex {
        inputs["simplex"] = json!(k);
        let e = embeddings::simplex_to_semicross(k, norm)?;
        outputs.push(Output::value("semicross", &e.semicross.scalings, PLUMBING));
        outputs.push(Output::value("side", e.side, PLUMBING));
        outputs.push(Output::value("unit_rescale", e.unit_rescale, PLUMBING));
        let t = constants::chromatic_base(&ForbiddenConfig { kind: ConfigKind::Simplex { k }, norm })?;
        outputs.push(Output::rate("base", t.rate, t.tag));
    } else {
        inputs["baton"] = json!(a.baton);
        let b = embeddings::BatonSpec::new(a.baton.clone())?;
        outputs.push(Output::value("positions", b.positions(), PLUMBING));
        outputs.push(Output::value("box_points", b.box_points(), PLUMBING));
        let t = constants::chromatic_base(&ForbiddenConfig { kind: ConfigKind::Baton { scalings: a.baton.clone() }, norm })?;
        outputs.push(Output::rate("base", t.rate, t.tag));
    }
    Ok(Outcome { inputs, outputs })
}

pub fn verify(a: &VerifyArgs, cfg: &FileConfig) -> Result<Outcome> {
    let v = &cfg.verify;
    let seed = a.seed.or(v.seed).unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut outputs = Vec::new();
    match a.suite {
        Suite::TreeConcat => {
            let trials = a.trials.or(v.trials).unwrap_or(100);
            let max_vertices = a.max_vertices.or(v.max_vertices).unwrap_or(4);
            let inputs = json!({ "suite": "tree-concat", "seed": seed, "trials": trials, "max_vertices": max_vertices });
            let lemma = tree_concat::certify_random_pairs(&mut rng, trials, 2, max_vertices)?;
            let max_product = (max_vertices * max_vertices).min(tree_concat::EXHAUSTIVE_PRODUCT_LIMIT);
            let instances = tree_concat::random_instances(&mut rng, trials, 2, max_vertices, max_product)?;
            let concat = tree_concat::verify_concat_bound(&instances, &[Shape::Star, Shape::Path])?;
            let count = lemma.violations.len() + concat.violations.len();
            outputs.push(Output::value("tree_homomorphisms", &lemma, PLUMBING));
            outputs.push(Output::value("orthogonal_free", &concat, PLUMBING));
            outputs.push(Output::value("violations", count, PLUMBING));
            finish(inputs, outputs, count)
        }
        Suite::Family => {
            let trials = a.trials.or(v.trials).unwrap_or(1000);
            let max_n = a.max_vertices.or(v.max_vertices).unwrap_or(16);
            let mut inputs = json!({ "suite": "family", "seed": seed, "trials": trials, "max_vertices": max_n });
            let shift = family_oracle::fuzz_shift(&mut rng, trials, max_n)?;
            let mut count = shift.identity_violations + shift.sunflower_violations;
            outputs.push(Output::value("shift", &shift, PLUMBING));
            if let Some(path) = &a.family_file {
                inputs["family_file"] = json!(path.display().to_string());
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Usage(format!("cannot read family {}: {e}", path.display())))?;
                let family = family_oracle::parse_family(&text)?;
                let (summary, bad) = family_summary(&family, &mut rng)?;
                count += bad;
                outputs.push(Output::value("family", summary, PLUMBING));
            }
            outputs.push(Output::value("violations", count, PLUMBING));
            finish(inputs, outputs, count)
        }
    }
}

fn finish(inputs: Value, outputs: Vec<Output>, violations: usize) -> Result<Outcome> {
    if violations > 0 {
        return Err(Error::Certification(format!("{violations} violations; inputs {inputs}")));
    }
    Ok(Outcome { inputs, outputs })
}

fn family_summary(f: &SetFamily, rng: &mut ChaCha8Rng) -> Result<(Value, usize)> {
    use rand::Rng;
    let layer = family_oracle::largest_uniform_layer(f);
    let sunflower = match family_oracle::find_weak_sunflower(f, 3) {
        Ok(found) => json!(found),
        Err(Error::Capacity(m)) => json!({ "skipped": m }),
        Err(e) => return Err(e),
    };
    let avoided: Option<Vec<u32>> = match f.uniformity() {
        Some(r) => Some((0..=r).filter(|&s| family_oracle::is_s_avoiding(f, s).unwrap_or(false)).collect()),
        None => None,
    };
    let mut bad = 0;
    let g = rng.gen::<u32>() & ((1u64 << f.n()) - 1) as u32;
    match family_oracle::symdiff_shift(f, g, (f.n() / 2) as u32) {
        Ok(_) => {}
        Err(Error::Certification(_)) => bad += 1,
        Err(e) => return Err(e),
    }
    Ok((
        json!({
            "n": f.n(), "members": f.len(), "uniformity": f.uniformity(),
            "largest_layer": { "size": layer.uniformity(), "members": layer.len() },
            "weak_3_sunflower": sunflower, "avoided_intersections": avoided, "shift": g,
        }),
        bad,
    ))
}
