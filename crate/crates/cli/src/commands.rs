use std::collections::BTreeSet;
use std::sync::Arc;

use cartan_core::dirichlet::ArrowOrder;
use cartan_core::reps::{gns_cartan_check, invariant_lattice, isotropy_witnesses, norm_achievement, unique_extension_check};
use cartan_core::sample::{random_crossed, random_element, rng_from_seed};
use cartan_core::semicrossed::{phi0_state, phi_functional, rho0, CrossedElement, FiniteDynamicalSystem};
use cartan_core::spec_file::{LoadedOrder, Model};
use cartan_core::tolerance::MATRIX;
use cartan_core::{Complex64, GnsRep, PointId};
use serde_json::{json, Value};

use crate::report::{Check, Status};

/// Norm agreement required by `norm-check`.
pub const NORM_TOL: f64 = 1e-9;
/// Lower bound accepted for `φ₀` on positive elements.
pub const POSITIVITY_TOL: f64 = 1e-9;

fn complex(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn names(model: &Model, points: impl IntoIterator<Item = PointId>) -> Vec<String> {
    points.into_iter().map(|p| model.groupoid.point_name(p).to_string()).collect()
}

fn order_check(model: &Model, name: &str) -> Check {
    match &model.order {
        None => Check::new(name, Status::NotApplicable),
        Some(LoadedOrder { raw, validated }) => match validated {
            Ok(d) => Check::new(name, Status::Pass)
                .value("arrows", raw.arrows().len())
                .value("strong", d.is_strong()),
            Err(report) => Check::new(name, Status::Fail)
                .value("arrows", raw.arrows().len())
                .witnesses(report.describe(&model.groupoid)),
        },
    }
}

fn dynamics_check(model: &Model) -> Check {
    match &model.dynamics {
        None => Check::new("dynamics", Status::NotApplicable),
        Some(sys) => Check::new("dynamics", Status::Pass)
            .value("points", sys.len())
            .value(
                "periods",
                sys.units().points().map(|x| sys.period(x)).collect::<Vec<_>>(),
            ),
    }
}

pub fn validate(model: &Model) -> Vec<Check> {
    let g = &model.groupoid;
    vec![
        Check::new("groupoid", Status::Pass)
            .value("points", g.units().len())
            .value("arrows", g.num_arrows())
            .value("orbits", g.orbits().len())
            .value("twisted", !g.is_untwisted()),
        order_check(model, "order"),
        dynamics_check(model),
    ]
}

pub fn analyze(model: &Model) -> Vec<Check> {
    let g = &model.groupoid;
    let orbits: Vec<Vec<String>> = g.orbits().iter().map(|o| names(model, o.iter().copied())).collect();
    let mut isotropy = serde_json::Map::new();
    let mut nontrivial = Vec::new();
    for x in g.units().points() {
        let w = isotropy_witnesses(g, x).expect("point of the unit space");
        if !w.is_empty() {
            nontrivial.push(g.point_name(x).to_string());
        }
        isotropy.insert(g.point_name(x).to_string(), json!(w.len()));
    }
    let density = match &model.order {
        None => Check::new("density", Status::NotApplicable),
        Some(o) => {
            let (sym, total) = o.raw.density_dimension();
            Check::new("density", Status::from_bool(sym == total)).value("dimensions", json!([sym, total]))
        }
    };
    vec![
        Check::new("orbits", Status::Pass)
            .value("count", orbits.len())
            .value("sizes", orbits.iter().map(Vec::len).collect::<Vec<_>>())
            .value("members", json!(orbits)),
        Check::new("isotropy", Status::from_bool(nontrivial.is_empty()))
            .value("nontrivial_arrows", Value::Object(isotropy))
            .witnesses(nontrivial),
        order_check(model, "dirichlet"),
        density,
        dynamics_check(model),
    ]
}

pub fn rep(model: &Model, x0: PointId, seed: u64) -> Vec<Check> {
    let g = &model.groupoid;
    let rep = GnsRep::new(g, x0).expect("point of the unit space");
    let n = rep.dimension();
    let gram = rep.gram_matrix();
    let gram_dev = (&gram - &cartan_core::CMatrix::identity(n)).max_abs();

    let mut rng = rng_from_seed(seed);
    let mut hom_dev: f64 = 0.0;
    let mut adj_dev: f64 = 0.0;
    for _ in 0..16 {
        let a = random_element(g, &mut rng, 0.6);
        let b = random_element(g, &mut rng, 0.6);
        let ma = rep.matrix(&a).expect("same groupoid");
        let mb = rep.matrix(&b).expect("same groupoid");
        let mab = rep.matrix(&a.convolve(&b).expect("same groupoid")).expect("same groupoid");
        hom_dev = hom_dev.max((&mab - &(&ma * &mb)).max_abs());
        adj_dev = adj_dev.max((&rep.matrix(&a.involute()).expect("same groupoid") - &ma.adjoint()).max_abs());
    }

    let cartan = gns_cartan_check(&rep);
    vec![
        Check::new("basis", Status::from_bool(gram_dev <= MATRIX))
            .value("dimension", n)
            .value("orbit", names(model, rep.orbit().iter().copied()))
            .value(
                "representatives",
                rep.basis().iter().map(|a| g.arrow_label(a)).collect::<Vec<_>>(),
            )
            .value("gram_deviation", gram_dev),
        Check::new("representation", Status::from_bool(hom_dev <= MATRIX && adj_dev <= MATRIX))
            .value("seed", seed)
            .value("samples", 16)
            .value("product_deviation", hom_dev)
            .value("adjoint_deviation", adj_dev),
        Check::new("irreducible", Status::from_bool(cartan.image_dimension == n * n))
            .value("image_dimension", cartan.image_dimension)
            .value("full_dimension", n * n),
        Check::new("masa", Status::from_bool(cartan.masa_ok()))
            .value("masa_dimension", cartan.masa_dimension)
            .value("commutant_dimension", cartan.commutant_dimension)
            .value("diagonal", cartan.masa_is_diagonal),
        Check::new("regularity", Status::from_bool(cartan.regular_ok()))
            .value("normalizers_normalize", cartan.normalizers_normalize)
            .value("normalizer_span", cartan.normalizer_span),
        Check::new("expectation", Status::from_bool(cartan.expectation_ok()))
            .value("consistent", cartan.expectation_consistent)
            .value("idempotent", cartan.expectation_idempotent)
            .value("bimodular", cartan.expectation_bimodular)
            .value("faithful", cartan.expectation_faithful)
            .value("samples", cartan.samples),
        Check::new(
            "unique_extension",
            Status::from_bool(unique_extension_check(g, x0).expect("point of the unit space")),
        ),
    ]
}

fn render_set(model: &Model, s: &BTreeSet<PointId>) -> String {
    format!("{{{}}}", names(model, s.iter().copied()).join(","))
}

pub fn nest_check(model: &Model) -> Vec<Check> {
    let Some(loaded) = &model.order else {
        return vec![Check::new("order", Status::Fail).witnesses(["the file has no order".to_string()])];
    };
    let order: &ArrowOrder = &loaded.raw;
    let mut checks = vec![order_check(model, "order")];
    for x in model.groupoid.units().points() {
        let rep = GnsRep::new(&model.groupoid, x).expect("point of the unit space");
        let lattice = invariant_lattice(&rep, order).expect("same groupoid");
        let total = order.is_total_on(rep.orbit());
        let mut check = Check::new(
            format!("lattice@{}", model.groupoid.point_name(x)),
            Status::from_bool(lattice.is_nest && total),
        )
        .value("count", lattice.count.to_string())
        .value("is_nest", lattice.is_nest)
        .value("total", total)
        .value("exhaustive", lattice.exhaustive);
        if !lattice.subspaces.is_empty() {
            check = check.value(
                "subspaces",
                lattice.subspaces.iter().map(|s| render_set(model, s)).collect::<Vec<_>>(),
            );
        }
        if let Some((a, b)) = &lattice.incomparable {
            check = check.witnesses([render_set(model, a), render_set(model, b)]);
        }
        if lattice.is_nest != total {
            check.status = Status::Fail;
            check.witnesses.push("lattice verdict disagrees with the totality scan".to_string());
        }
        checks.push(check);
    }
    checks
}

pub fn norm_check(model: &Model, trials: usize, seed: u64) -> Vec<Check> {
    let g = &model.groupoid;
    let mut rng = rng_from_seed(seed);
    let mut max_dev: f64 = 0.0;
    let mut max_norm: f64 = 0.0;
    let mut bad = Vec::new();
    for t in 0..trials {
        let a = random_element(g, &mut rng, 0.6);
        let result = norm_achievement(&a);
        max_dev = max_dev.max(result.deviation());
        max_norm = max_norm.max(result.lhs);
        if result.deviation() > NORM_TOL && bad.len() < 3 {
            bad.push(format!(
                "trial {t}: operator norm {} against representation norm {}",
                result.lhs, result.rhs
            ));
        }
    }
    vec![Check::new("norm_achievement", Status::from_bool(max_dev <= NORM_TOL))
        .value("trials", trials)
        .value("seed", seed)
        .value("max_deviation", max_dev)
        .value("max_norm", max_norm)
        .value("tolerance", NORM_TOL)
        .witnesses(bad)]
}

/// `φ₀` differs from `ρ₀` on `U^p` and agrees with evaluation at `x₀` on
/// the point indicators.
fn second_state_check(sys: &Arc<FiniteDynamicalSystem>, x0: PointId, name: String) -> Check {
    let verdict = sys.unique_extension(x0);
    let p = sys.period(x0) as i64;
    let witness = CrossedElement::u_power(sys, p);
    let (r, f) = (rho0(&witness, x0), phi0_state(&witness, x0));
    let extends = sys.units().points().all(|y| {
        let mut delta = vec![Complex64::new(0.0, 0.0); sys.len()];
        delta[y.0] = Complex64::new(1.0, 0.0);
        let e = CrossedElement::function(sys, delta).expect("length matches");
        let expected = if y == x0 { 1.0 } else { 0.0 };
        (phi0_state(&e, x0) - expected).norm() <= MATRIX
    });
    let distinct = (r - f).norm() > MATRIX;
    Check::new(name, Status::from_bool(!verdict.unique && distinct && extends))
        .value("unique", verdict.unique)
        .value("witness_power", p)
        .value("rho0_of_witness", complex(r))
        .value("phi0_of_witness", complex(f))
        .value("extends_evaluation", extends)
}

pub fn extension_check(model: &Model) -> Vec<Check> {
    let g = &model.groupoid;
    let mut checks: Vec<Check> = g
        .units()
        .points()
        .map(|x| {
            let unique = unique_extension_check(g, x).expect("point of the unit space");
            Check::new(format!("unique@{}", g.point_name(x)), Status::from_bool(unique)).value("unique", unique)
        })
        .collect();
    if let Some(sys) = &model.dynamics {
        for x in sys.units().points() {
            checks.push(second_state_check(sys, x, format!("crossed@{}", sys.units().name(x))));
        }
    }
    checks
}

pub struct DemoArgs {
    pub size: usize,
    pub perm: String,
    pub point: String,
    pub trials: usize,
    pub seed: u64,
    pub degree: i64,
}

pub fn demo_semicrossed(sys: &Arc<FiniteDynamicalSystem>, x0: PointId, args: &DemoArgs) -> Vec<Check> {
    let p = sys.period(x0) as i64;
    let u = CrossedElement::u_power(sys, p);
    let one = CrossedElement::one(sys);

    let mut rng = rng_from_seed(args.seed);
    let mut min_phi0 = f64::INFINITY;
    let mut worst_ratio: f64 = 0.0;
    let mut negative = Vec::new();
    let mut violations = Vec::new();
    for t in 0..args.trials {
        let b = random_crossed(sys, &mut rng, args.degree);
        let a = b.involute().multiply(&b).expect("same system");
        let state = phi0_state(&a, x0);
        let r = rho0(&a, x0).re;
        let phi = phi_functional(&a, x0).norm();
        min_phi0 = min_phi0.min(state.re);
        if r > 0.0 {
            worst_ratio = worst_ratio.max(phi / r);
        }
        if state.re < -POSITIVITY_TOL && negative.len() < 3 {
            negative.push(format!("trial {t}: phi0 = {}", state.re));
        }
        if phi > r + MATRIX * r.max(1.0) && violations.len() < 3 {
            violations.push(format!("trial {t}: |phi| = {phi} exceeds rho0 = {r}"));
        }
    }

    vec![
        Check::new("system", Status::Pass)
            .value("size", args.size)
            .value("perm", args.perm.clone())
            .value("point", args.point.clone())
            .value("period", p),
        second_state_check(sys, x0, "distinct_extensions".to_string())
            .value("phi_of_witness", complex(phi_functional(&u, x0)))
            .value("phi0_of_one", complex(phi0_state(&one, x0))),
        Check::new("positivity", Status::from_bool(negative.is_empty()))
            .value("trials", args.trials)
            .value("seed", args.seed)
            .value("degree", args.degree)
            .value("min_phi0", min_phi0)
            .value("tolerance", POSITIVITY_TOL)
            .witnesses(negative),
        Check::new("isotropy_inequality", Status::from_bool(violations.is_empty()))
            .value("trials", args.trials)
            .value("max_ratio", worst_ratio)
            .witnesses(violations),
    ]
}
