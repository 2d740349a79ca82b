//! Named batches of checks. Each assertion is reported by name, so a
//! failing run pinpoints what broke.

use serde_json::{json, Value};

use scatlin_core::equiv::{self, L4Variant, SearchOptions};
use scatlin_core::family::{self, FamilySpec, FamilyTag, HVariant};
use scatlin_core::geom;
use scatlin_core::mrd;
use scatlin_core::scatter::{self, ScanMode};
use scatlin_core::{Elem, Field};

use crate::args::{ReproduceArgs, Tag};
use crate::{CliError, Outcome};

struct Suite {
    field: Field,
    assertions: Vec<Value>,
    details: serde_json::Map<String, Value>,
}

impl Suite {
    fn new(p: u64, s: u32) -> Result<Self, CliError> {
        Ok(Suite {
            field: Field::new(p, s)?,
            assertions: Vec::new(),
            details: serde_json::Map::new(),
        })
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: Value) {
        self.assertions
            .push(json!({"name": name.into(), "passed": passed, "detail": detail}));
    }

    fn detail(&mut self, key: &str, value: Value) {
        self.details.insert(key.into(), value);
    }

    fn fmt(&self, x: Elem) -> String {
        self.field.format(x)
    }

    fn finish(self, tag: &str) -> Outcome {
        let failed = self
            .assertions
            .iter()
            .filter(|a| a["passed"] != true)
            .count();
        Outcome {
            field: Some(serde_json::to_value(self.field.summary()).expect("summary serializes")),
            result: json!({
                "tag": tag,
                "passed": self.assertions.len() - failed,
                "failed": failed,
                "assertions": self.assertions,
                "details": self.details,
            }),
            ok: failed == 0,
        }
    }
}

pub fn run(a: &ReproduceArgs) -> Result<Outcome, CliError> {
    match a.tag {
        Tag::Case1Q5 => case1_q5(),
        Tag::Case1Q7Negative => case1_q7_negative(),
        Tag::Case2Q3 => case2_q3(),
        Tag::EvenQ4Negative => even_q4_negative(),
        Tag::IntnQ3 => intn_q3(),
        Tag::TrinomialQ3 => trinomial_q3(),
        Tag::L4Q5Power5 => l4_q5_power5(),
        Tag::MrdQ3 => mrd_q3(),
    }
}

fn case1_q5() -> Result<Outcome, CliError> {
    let mut s = Suite::new(5, 1)?;
    let f = &s.field;
    let p = family::case1(f);
    let oracle = scatter::is_scattered_oracle(f, &p);
    let dickson = scatter::is_scattered_dickson(f, &p);
    let spec = scatter::weight_spectrum(f, &p);
    let spec_json = serde_json::to_value(&spec.counts).expect("map serializes");
    let spectrum_ok = spec.counts.len() == 1 && spec.counts.get(&1) == Some(&3906);
    let mass = spec.mass_conserved();
    s.check("oracle: scattered", oracle.scattered, Value::Null);
    s.check("dickson: scattered", dickson.scattered, Value::Null);
    s.check("spectrum = {1: 3906}", spectrum_ok, spec_json.clone());
    s.check("spectrum mass = q^6 - 1", mass, json!(spec.mass()));
    s.detail("spectrum", spec_json);
    Ok(s.finish("case1-q5"))
}

fn case1_q7_negative() -> Result<Outcome, CliError> {
    let mut s = Suite::new(7, 1)?;
    let f = &s.field;
    let p = family::case1(f);
    let oracle = scatter::is_scattered_oracle(f, &p);
    let dickson = scatter::scan_dickson(f, &p, ScanMode::Exhaustive);
    let minus_four = f.from_int(-4);
    let proof_witness = |m: Elem| -> Result<bool, CliError> {
        Ok(f.mul(m, m) == minus_four && f.in_subfield(m, 2)? && !f.in_subfield(m, 1)?)
    };
    let mut checks = vec![
        (
            "oracle: not scattered".to_string(),
            !oracle.scattered,
            Value::Null,
        ),
        (
            "dickson: not scattered".to_string(),
            !dickson.scattered,
            Value::Null,
        ),
    ];
    for &m in &dickson.violations {
        let name = format!("dickson root {}: m^2 = -4, m in F_q^2 \\ F_q", f.format(m));
        checks.push((name, proof_witness(m)?, Value::Null));
        let kernel = p.with_diagonal(m).kernel_dim(f);
        checks.push((
            format!("dickson root {}: kernel dim >= 2", f.format(m)),
            kernel >= 2,
            json!(kernel),
        ));
    }
    if let Some(m) = oracle.witness {
        checks.push((
            format!("oracle witness {}: m^2 = -4", f.format(m)),
            proof_witness(m)?,
            json!(scatter::point_weight(f, &p, m)),
        ));
    }
    let roots: Vec<String> = dickson.violations.iter().map(|&m| f.format(m)).collect();
    for (name, passed, detail) in checks {
        s.check(name, passed, detail);
    }
    s.detail("dickson_roots", json!(roots));
    Ok(s.finish("case1-q7-negative"))
}

fn case2_q3() -> Result<Outcome, CliError> {
    let mut s = Suite::new(3, 1)?;
    let hs = family::enumerate_h(&s.field, HVariant::Odd)?;
    s.check("28 valid h", hs.len() == 28, json!(hs.len()));
    for h in hs {
        let f = &s.field;
        let p = family::f_h(f, h);
        let o = scatter::is_scattered_oracle(f, &p).scattered;
        let d = scatter::is_scattered_dickson(f, &p).scattered;
        let name = format!("h = {}: scattered by both methods", s.fmt(h));
        s.check(name, o && d, json!({"oracle": o, "dickson": d}));
    }
    Ok(s.finish("case2-q3"))
}

fn even_q4_negative() -> Result<Outcome, CliError> {
    let mut s = Suite::new(2, 2)?;
    let hs = family::enumerate_h(&s.field, HVariant::Even)?;
    s.check("q^3 + 1 valid h", hs.len() == 65, json!(hs.len()));
    for h in hs {
        let f = &s.field;
        let p = family::f_h(f, h);
        let mb = family::m_bar(f, h);
        let dickson = scatter::dickson_common_root(f, &p, mb);
        let weight = scatter::point_weight(f, &p, mb);
        let name = format!(
            "h = {}: witness m = h^(q^2) + h^q = {}",
            s.fmt(h),
            s.fmt(mb)
        );
        s.check(
            name,
            dickson && weight >= 2,
            json!({"dickson": dickson, "weight": weight}),
        );
    }
    Ok(s.finish("even-q4-negative"))
}

fn intn_q3() -> Result<Outcome, CliError> {
    let mut s = Suite::new(3, 1)?;
    for h in family::enumerate_h(&s.field, HVariant::Odd)? {
        let f = &s.field;
        let gamma = geom::gamma_of(f, h)?;
        let r1 = geom::intn(f, &gamma, 1)?;
        let r5 = geom::intn(f, &gamma, 5)?;
        let passed = r1.intn == 3 && r5.intn == 3 && r1.dims_chain.starts_with(&[3, 1, -1]);
        let detail = json!({"dims_chain": r1.dims_chain, "intn": r1.intn, "intn_power5": r5.intn});
        let name = format!(
            "h = {}: chain (3, 1, -1), intn 3 under both powers",
            s.fmt(h)
        );
        s.check(name, passed, detail);
    }
    Ok(s.finish("intn-q3"))
}

fn trinomial_q3() -> Result<Outcome, CliError> {
    let mut s = Suite::new(3, 1)?;
    let hs: Vec<Elem> = family::enumerate_h(&s.field, HVariant::Odd)?
        .into_iter()
        .filter(|&h| s.field.in_subfield(h, 2).unwrap_or(false))
        .collect();
    s.check("4 valid h in F_9", hs.len() == 4, json!(hs.len()));
    for h in hs {
        let f = &s.field;
        let fh = family::build(f, &FamilySpec::new(FamilyTag::NewFh, Some(h)))?;
        let tri = family::build(f, &FamilySpec::new(FamilyTag::Trinomial, Some(h)))?;
        let w = equiv::trinomial_witness(f, h)?;
        let printed = equiv::verify_witness_enumerated(f, &fh, &tri, &w, 1);
        let out = equiv::gl_equivalent(f, &fh, &tri, &SearchOptions::default())?;
        let found = out.verdict.witness().copied();
        let found_ok = found.is_some_and(|w| equiv::verify_witness_enumerated(f, &fh, &tri, &w, 1));
        let (wj, fj) = (w.to_json(f), found.map(|w| w.to_json(f)));
        let hs_ = s.fmt(h);
        s.check(
            format!("h = {hs_}: printed witness maps all 729 vectors"),
            printed,
            wj,
        );
        s.check(
            format!("h = {hs_}: search finds a witness"),
            found_ok,
            json!(fj),
        );
    }
    Ok(s.finish("trinomial-q3"))
}

fn l4_q5_power5() -> Result<Outcome, CliError> {
    let mut s = Suite::new(5, 1)?;
    let f = &s.field;
    let h = f.from_int(2);
    let deltas = equiv::l4_deltas(f);
    let mut found = None;
    for &delta in &deltas {
        for variant in [L4Variant::Trin, L4Variant::Trin2] {
            let out = equiv::check_system_l4(f, h, delta, variant)?;
            if let (None, Some(w)) = (&found, out.found) {
                found = Some((delta, variant, w));
            }
        }
    }
    let mut checks = vec![(
        "system has a solution with ad - bc != 0",
        found.is_some(),
        Value::Null,
    )];
    let mut k_detail = Value::Null;
    if let Some((delta, variant, w)) = &found {
        let k = w.k;
        let quad = f.add(
            f.sub(f.mul(f.from_int(9), f.mul(k, k)), f.mul(f.from_int(3), k)),
            f.from_int(5),
        );
        k_detail = json!({
            "k": f.format(k),
            "delta": f.format(*delta),
            "variant": serde_json::to_value(variant).expect("enum serializes"),
            "witness": w.witness.to_json(f),
        });
        let target = variant.target(f, *delta);
        let enumerated =
            equiv::verify_witness_enumerated(f, &family::f_h(f, h), &target, &w.witness, 1);
        checks.push(("9k^2 - 3k + 5 = 0", f.is_zero(quad), Value::Null));
        checks.push(("k = 2", k == f.from_int(2), Value::Null));
        checks.push((
            "witness satisfies the composition identity",
            w.verified,
            Value::Null,
        ));
        checks.push(("witness maps every vector of U_h", enumerated, Value::Null));
    }
    let mut cross = Vec::new();
    for &delta in &deltas {
        let u4 = family::build(f, &FamilySpec::new(FamilyTag::CsajbokMz, Some(delta)))?;
        let out = equiv::pgl_linear_sets_equivalent(
            f,
            &family::f_h(f, h),
            &u4,
            FamilyTag::CsajbokMz,
            &SearchOptions::default(),
        )?;
        cross.push((f.format(delta), out.equivalent));
    }
    for (name, passed, detail) in checks {
        s.check(name, passed, detail);
    }
    for (d, eq) in cross {
        s.check(
            format!("general search: f_2 equivalent to U^4 with delta = {d}"),
            eq,
            Value::Null,
        );
    }
    s.detail("solution", k_detail);
    Ok(s.finish("l4-q5-power5"))
}

fn mrd_q3() -> Result<Outcome, CliError> {
    let mut s = Suite::new(3, 1)?;
    let f = &s.field;
    let h = family::enumerate_h(f, HVariant::Odd)?[0];
    let code = mrd::code_from(f, &family::f_h(f, h))?;
    let report = mrd::mrd_report(f, &code);
    let full = mrd::rank_distribution_full(f, &code, 1 << 20)?;
    let ideal = mrd::left_idealiser_field_check(f, &code, 16);
    let dist = serde_json::to_value(&full.counts).expect("map serializes");
    let hs = f.format(h);
    s.check(
        "min distance 5",
        report.min_distance == 5,
        json!(report.min_distance),
    );
    s.check("count(0) = 1", full.count(0) == 1, json!(full.count(0)));
    s.check(
        "q^12 codewords",
        full.total() == 3u64.pow(12),
        json!(full.total()),
    );
    s.check(
        "Singleton equality q^12 = q^(6*2)",
        report.singleton_equality,
        Value::Null,
    );
    s.check(
        "orbit count equals full enumeration",
        full == report.distribution,
        Value::Null,
    );
    s.check(
        "left idealiser contains F_q^6 (728 nonzero c)",
        ideal.holds && ideal.tested == 728,
        serde_json::to_value(&ideal).expect("report serializes"),
    );
    s.detail("h", json!(hs));
    s.detail("distribution", dist);
    Ok(s.finish("mrd-q3"))
}
