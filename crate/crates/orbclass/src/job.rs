use orbclass_core::algebra::{int, Rational};
use orbclass_core::apps::{
    binary_form, elliptic_degree, profile_from_j, ratmap_class, ratmap_from_orders, split_hom,
    EllipticReport, FiberDatum, FixedPointProfile, HomPair, KodairaType, ProjectiveRoot,
    RatmapReport,
};
use orbclass_core::newton::{build_polygon, NewtonPolygon, WeightedPoint};
use orbclass_core::orbit::{
    defining_points, orbit_class_with, projective_degree, validate, EquivariantClass, FTermVariant,
};
use orbclass_core::torus::{torus_orbit_class, CharacterList};
use orbclass_core::verify::verify_with;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::schema::{
    fraction, parse, ClassInput, EllipticInput, PointsInput, PolynomialJson,
    RatmapInput, RationalTermJson, TorusInput, WeightedPointJson,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Class,
    Elliptic,
    Ratmap,
    Torus,
    Polygon,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Class => "class",
            Command::Elliptic => "elliptic",
            Command::Ratmap => "ratmap",
            Command::Torus => "torus",
            Command::Polygon => "polygon",
            Command::Verify => "verify",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Command,
    pub payload: Value,
    #[serde(default)]
    pub output: OutputFormat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckJson {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckJson {
    fn new(name: &str, pass: bool) -> Self {
        CheckJson { name: String::from(name), pass, detail: None }
    }
}

/// The output of one job: a command-specific result object plus notes and
/// named checks. Serializes as one flat JSON object.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: Command,
    #[serde(flatten)]
    pub result: Map<String, Value>,
    pub notes: Vec<String>,
    pub checks: Vec<CheckJson>,
    /// `key: value` lines for text output.
    #[serde(skip)]
    pub text: Vec<String>,
}

impl Report {
    fn new(command: Command) -> Self {
        Report { command, result: Map::new(), notes: Vec::new(), checks: Vec::new(), text: Vec::new() }
    }

    fn set(&mut self, key: &str, value: Value) {
        self.result.insert(String::from(key), value);
    }

    fn line(&mut self, key: &str, value: impl std::fmt::Display) {
        self.text.push(format!("{}: {}", key, value));
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command.name());
        for l in &self.text {
            out.push_str(l);
            out.push('\n');
        }
        for n in &self.notes {
            out.push_str(&format!("note: {}\n", n));
        }
        for c in &self.checks {
            let mark = if c.pass { "pass" } else { "FAIL" };
            match &c.detail {
                Some(d) if !c.pass => out.push_str(&format!("check {}: {} ({})\n", c.name, mark, d)),
                _ => out.push_str(&format!("check {}: {}\n", c.name, mark)),
            }
        }
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Text => self.to_text(),
        }
    }
}

/// Runs one job.
pub fn run(job: &JobSpec) -> Result<Report, CliError> {
    run_command(job.command, job.payload.clone())
}

pub fn run_command(command: Command, payload: Value) -> Result<Report, CliError> {
    match command {
        Command::Class => class(parse(payload)?),
        Command::Elliptic => elliptic(parse(payload)?),
        Command::Ratmap => ratmap(parse(payload)?),
        Command::Torus => torus(parse(payload)?),
        Command::Polygon => polygon(payload),
        Command::Verify => verify(parse(payload)?),
    }
}

/// Class fields shared by `class`, `elliptic`, and `ratmap`.
fn put_class(report: &mut Report, c: &EquivariantClass) {
    report.set("class", json!(PolynomialJson::from(&c.poly)));
    report.set("class_text", json!(c.poly.to_canonical_string()));
    report.set("codim", json!(c.codim));
    report.line("class", c.poly.to_canonical_string());
    report.line("codim", c.codim);
    report.notes.extend(c.notes.iter().cloned());
}

fn put_degree(report: &mut Report, degree: &Rational, weighted: bool) {
    report.set("degree", json!(fraction(degree)));
    report.set("stabilizer_weighted", json!(weighted));
    report.line("degree", fraction(degree));
    report.line("stabilizer_weighted", weighted);
}

fn class(input: ClassInput) -> Result<Report, CliError> {
    let (rep, datum) = input.to_core();
    let mut c = orbit_class_with(&rep, &datum, input.f_variant.into())?;
    let mut report = Report::new(Command::Class);
    let weighted = match input.stabilizer_order {
        Some(0) => return Err(CliError::schema("stabilizer_order", "must be positive")),
        Some(k) => {
            c = c.divide_by_stabilizer(k);
            false
        }
        None => true,
    };
    put_class(&mut report, &c);
    if !weighted {
        report.set("stabilizer_weighted", json!(false));
    }
    if let Some(w) = &input.projective_weights {
        let degree = projective_degree(&c, &rep, w)?;
        put_degree(&mut report, &degree, weighted);
    }
    report.checks.push(CheckJson::new("symmetric", c.poly.is_symmetric()));
    report.checks.push(CheckJson::new(
        "homogeneous",
        c.poly.is_zero() || (c.poly.is_homogeneous() && c.poly.degree() == Some(c.codim as u32)),
    ));
    Ok(report)
}

fn elliptic(input: EllipticInput) -> Result<Report, CliError> {
    let mut fibers: Vec<FiberDatum> = input
        .fibers
        .iter()
        .enumerate()
        .map(|(k, f)| {
            FiberDatum::new(f.label.clone().unwrap_or_else(|| format!("f{}", k)), f.ord_a, f.ord_b)
        })
        .collect();
    for (k, t) in input.types.iter().enumerate() {
        let ty: KodairaType = t.parse()?;
        let (a, b) = ty.witness();
        fibers.push(FiberDatum::new(format!("t{}", k), a, b));
    }
    let r: EllipticReport = elliptic_degree(input.n, &fibers)?;
    let mut report = Report::new(Command::Elliptic);
    report.set("n", json!(input.n));
    put_class(&mut report, &r.class);
    put_degree(&mut report, &r.degree, true);
    let rows: Vec<Value> = r
        .fibers
        .iter()
        .zip(&fibers)
        .map(|(f, d)| {
            json!({
                "label": f.label,
                "ord_a": d.ord_a,
                "ord_b": d.ord_b,
                "c": fraction(&f.c),
                "contribution": fraction(&f.contribution),
                "kodaira": f.kodaira.map(|k| k.name()),
            })
        })
        .collect();
    for (f, d) in r.fibers.iter().zip(&fibers) {
        report.text.push(format!(
            "fiber {}: ord_A={} ord_B={} c={} contribution={} type={}",
            f.label,
            d.ord_a,
            d.ord_b,
            fraction(&f.c),
            fraction(&f.contribution),
            f.kodaira.map_or("non-minimal", |k| k.name())
        ));
    }
    report.set("fibers", Value::Array(rows));
    report.checks.push(CheckJson::new("closed-form", true));
    Ok(report)
}

fn ratmap(input: RatmapInput) -> Result<Report, CliError> {
    let modes = [input.profile.is_some(), input.orders.is_some(), input.f.is_some() || input.g.is_some()];
    if modes.iter().filter(|&&m| m).count() != 1 {
        return Err(CliError::schema("<root>", "give exactly one of profile, orders, or F/G"));
    }
    let n = input.n;
    let mut report = Report::new(Command::Ratmap);
    report.set("n", json!(n));
    let r: RatmapReport = if let Some(p) = &input.profile {
        ratmap_class(n, &FixedPointProfile { multiplicities: p.clone() })?
    } else if let Some(o) = &input.orders {
        let entries: Vec<(u32, u32)> = o.iter().map(|e| (e[0], e[1])).collect();
        ratmap_from_orders(n, &entries)?
    } else {
        let (Some(f), Some(g)) = (&input.f, &input.g) else {
            return Err(CliError::schema("<root>", "F and G must be given together"));
        };
        let Some(roots) = &input.roots else {
            return Err(CliError::schema("roots", "required with F/G"));
        };
        let expected = usize::try_from(n + 1).unwrap_or(0);
        for (key, c) in [("F", f), ("G", g)] {
            if c.len() != expected {
                return Err(CliError::schema(key, format!("expected n + 1 = {} coefficients", expected)));
            }
        }
        let to_q = |c: &Vec<crate::schema::Fraction>| -> Result<Vec<Rational>, CliError> {
            c.iter().map(|x| x.value()).collect()
        };
        let h = HomPair { f: binary_form(&to_q(f)?), g: binary_form(&to_q(g)?) };
        let split = split_hom(&h)?;
        let roots: Vec<(ProjectiveRoot, u32)> = roots
            .iter()
            .map(|r| Ok((ProjectiveRoot::new(r.root[0].value()?, r.root[1].value()?), r.mult)))
            .collect::<Result<_, CliError>>()?;
        let profile = profile_from_j(n, &roots, Some(&split.i), Some(&split.j))?;
        report.set("I", json!(split.i.to_canonical_string()));
        report.set("J", json!(split.j.to_canonical_string()));
        report.line("I", split.i.to_canonical_string());
        report.line("J", split.j.to_canonical_string());
        ratmap_class(n, &profile)?
    };
    put_class(&mut report, &r.class);
    put_degree(&mut report, &r.degree, true);
    report.set("profile", json!(r.profile.multiplicities));
    report.set("within_hypothesis", json!(r.within_hypothesis));
    report.line(
        "profile",
        r.profile.multiplicities.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
    );
    report.line("within_hypothesis", r.within_hypothesis);
    if r.within_hypothesis {
        report.checks.push(CheckJson::new("closed-product", true));
        report.checks.push(CheckJson::new("degree n(n+1)(n-1)", r.degree == int(n * (n + 1) * (n - 1))));
    }
    Ok(report)
}

fn torus(input: TorusInput) -> Result<Report, CliError> {
    let c = CharacterList {
        d: input.d,
        support: input.support.clone().unwrap_or_else(|| vec![true; input.characters.len()]),
        chars: input.characters,
    };
    let t = torus_orbit_class(&c)?;
    let mut report = Report::new(Command::Torus);
    report.set("pointed", json!(t.pointed));
    report.set("rank", json!(t.rank));
    report.set("e_sigma", json!(t.e_sigma.as_ref().map(RationalTermJson::from)));
    report.set(
        "pieces",
        json!(t
            .pieces
            .iter()
            .map(|p| json!({"generators": p.generators, "det_abs": p.det_abs.to_string()}))
            .collect::<Vec<_>>()),
    );
    report.set("class", json!(PolynomialJson::from(&t.class)));
    report.set("class_text", json!(t.class.to_canonical_string()));
    report.line("pointed", t.pointed);
    report.line("rank", t.rank);
    if let Some(e) = &t.e_sigma {
        report.line("e_sigma", e.to_canonical_string());
    }
    report.line("class", t.class.to_canonical_string());
    report.notes.extend(t.notes.iter().cloned());
    Ok(report)
}

fn polygon_json(label: Option<&str>, p: &NewtonPolygon) -> Result<Value, CliError> {
    let pair = |v: &(Rational, Rational)| json!([fraction(&v.0), fraction(&v.1)]);
    let normals = (0..p.vertices().len())
        .map(|j| {
            let vn = p.vertex_normals(j).map_err(|e| CliError::Internal(e.to_string()))?;
            Ok(json!({"j": j, "eta": vn.eta, "zeta": vn.zeta, "det": vn.det}))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let sc = p.scalars();
    let beta = p.beta_vectors();
    let div = p.divisibility_check();
    let kind = |k: orbclass_core::newton::FaceKind| format!("{:?}", k).to_lowercase();
    Ok(json!({
        "label": label,
        "points": p.defining_points().iter().map(|q| WeightedPointJson {
            x: fraction(&q.x), y: fraction(&q.y), weight: q.weight,
        }).collect::<Vec<_>>(),
        "vertices": p.vertices().iter().map(pair).collect::<Vec<_>>(),
        "vertex_weights": p.vertex_weights(),
        "faces": p.faces().iter().map(|f| json!({
            "kind": kind(f.kind), "normal": f.normal, "value": fraction(&f.value),
        })).collect::<Vec<_>>(),
        "normals": normals,
        "scalars": {
            "b_local": fraction(&sc.b_local),
            "r": fraction(&sc.r),
            "lambda0_x": fraction(&sc.lambda0_x),
            "s": fraction(&sc.s),
            "k": sc.k,
        },
        "beta": {
            "rays": beta.rays.iter().map(|b| json!({
                "kind": kind(b.kind), "can": b.can, "res": b.res, "face_value": fraction(&b.face_value),
            })).collect::<Vec<_>>(),
            "notes": beta.notes,
        },
        "divisibility": {
            "passed": div.passed,
            "nonnegativity_checked": div.nonnegativity_checked,
            "failures": div.failures,
        },
    }))
}

fn polygon(payload: Value) -> Result<Report, CliError> {
    let mut built: Vec<(Option<String>, NewtonPolygon)> = Vec::new();
    if payload.get("summands").is_some() {
        let input: ClassInput = parse(payload)?;
        let (rep, datum) = input.to_core();
        validate(&rep, &datum)?;
        for p in &datum.points {
            let poly = build_polygon(&defining_points(&rep, &datum.nonzero, p))
                .map_err(|e| CliError::Validation(e.to_string()))?;
            built.push((Some(p.label.clone()), poly));
        }
    } else {
        let input: PointsInput = parse(payload)?;
        let pts = input
            .points
            .iter()
            .enumerate()
            .map(|(k, q)| {
                let get = |s: &String, axis: &str| {
                    orbclass_core::algebra::parse_rational(s).ok_or_else(|| {
                        CliError::schema(format!("points[{}].{}", k, axis), format!("{:?} is not a fraction", s))
                    })
                };
                Ok(WeightedPoint::new(get(&q.x, "x")?, get(&q.y, "y")?, q.weight))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let poly = build_polygon(&pts).map_err(|e| CliError::Validation(e.to_string()))?;
        built.push((None, poly));
    }
    let mut report = Report::new(Command::Polygon);
    let mut out = Vec::new();
    for (label, p) in &built {
        out.push(polygon_json(label.as_deref(), p)?);
        let name = label.clone().unwrap_or_else(|| String::from("polygon"));
        let verts: Vec<String> = p
            .vertices()
            .iter()
            .map(|v| format!("({}, {})", fraction(&v.0), fraction(&v.1)))
            .collect();
        report.text.push(format!("{} vertices: {}", name, verts.join(" ")));
        let rays: Vec<String> = p
            .beta_vectors()
            .rays
            .iter()
            .map(|b| format!("can({},{}) res({},{})", b.can[0], b.can[1], b.res[0], b.res[1]))
            .collect();
        report.text.push(format!("{} beta: {}", name, rays.join(" ")));
        let div = p.divisibility_check();
        report.checks.push(CheckJson {
            name: format!("divisibility {}", name),
            pass: div.passed,
            detail: (!div.passed).then(|| div.failures.join("; ")),
        });
        report.notes.extend(p.beta_vectors().notes.iter().map(|n| format!("{}: {}", name, n)));
    }
    report.set("polygons", Value::Array(out));
    Ok(report)
}

fn verify(input: ClassInput) -> Result<Report, CliError> {
    let (rep, datum) = input.to_core();
    let variant = FTermVariant::from(input.f_variant);
    let checks = verify_with(&rep, &datum, variant)?;
    let mut report = Report::new(Command::Verify);
    if variant == FTermVariant::AsPrinted {
        report.notes.push(String::from("engine built with the alternative F/G second factor (negative control)"));
    }
    report.checks = checks
        .into_iter()
        .map(|c| CheckJson { name: c.name, pass: c.pass, detail: if c.pass { None } else { c.detail } })
        .collect();
    let all = report.all_checks_pass();
    report.set("all_pass", json!(all));
    report.line("all_pass", all);
    Ok(report)
}
