use hermite_core::hankel::{
    eagon_northcott_betti, generalized_hermite_check, hankel_matrix, hilbert_series, hilbert_series_cross_check,
    mcm_data, secant_invariants, BettiTable,
};
use hermite_core::hermite::{freeness_certificate, hermite_maps, star_action, verify_compatibilities};
use hermite_core::koszul_oracle::{koszul_tor_oracle, ORACLE_PRIME};
use hermite_core::multilinear::Mode;
use hermite_core::schwarzenberger::{
    h0_sym_power_twist, line_cohomology, supernatural_check, twist_window, twist_window_kind, wedge_e_cohomology,
    CohTable,
};
use hermite_core::verify::{run_suite, Suite};
use hermite_core::weyman::{
    bigraded_complex, bigraded_identification, green_check, tor_profiles, weyman_complex, QPolicy, WeymanComplex,
};
use hermite_core::{Error, Field, Result, Scalar};
use serde::Serialize;
use serde_json::{json, Value};

use crate::output::{matrix_json, Payload};
use crate::{CohomologyArgs, Command, GreenArgs, HankelArgs, HermiteArgs, McmArgs, WeymanArgs};

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("core types serialize to JSON")
}

fn need<T: Copy>(x: Option<T>, flag: &str) -> Result<T> {
    x.ok_or_else(|| invalid(format!("missing --{flag}")))
}

pub fn dispatch(command: &Command, characteristic: u64) -> Result<Payload> {
    let field = Field::from_characteristic(characteristic)?;
    match command {
        Command::Hermite(a) => hermite(a, field),
        Command::Cohomology(a) => cohomology(a, field),
        Command::Hankel(a) => hankel(a, field),
        Command::Mcm(a) => mcm(a, field),
        Command::Weyman(a) => weyman(a, field),
        Command::Green(a) => green(a, field),
        Command::Verify(a) => {
            let suite: Suite = a.suite.parse()?;
            let report = run_suite(suite, characteristic)?;
            let mut p = Payload::new(
                "verify",
                json!({"suite": suite.to_string(), "char": characteristic}),
                to_value(&report),
                field.to_string(),
            );
            p.summary = Some(report.summary_table());
            p.passed = Some(report.passed);
            Ok(p)
        }
    }
}

fn hermite(a: &HermiteArgs, field: Field) -> Result<Payload> {
    let mode: Mode = a.mode.parse()?;
    let m = a.m;
    if a.star || a.freeness {
        let d = need(a.d, "d")?;
        let params = json!({"m": m, "d": d, "mode": mode.to_string()});
        if a.star {
            let s = star_action(m, d, mode, field)?;
            return Ok(Payload::new(
                "hermite.star",
                params,
                json!({"star": matrix_json(&s)}),
                field.to_string(),
            ));
        }
        let cert = freeness_certificate(m, d, mode, field)?;
        let mut p = Payload::new("hermite.freeness", params, to_value(&cert), field.to_string());
        p.passed = Some(cert.passed);
        return Ok(p);
    }
    let n = need(a.n, "n")?;
    let maps = hermite_maps(m, n, field)?;
    let mut result = json!({
        "alpha": matrix_json(&maps.alpha),
        "beta": matrix_json(&maps.beta),
        "gamma": matrix_json(&maps.gamma),
    });
    let mut passed = None;
    if a.verify {
        let report = verify_compatibilities(m, n, field)?;
        passed = Some(report.passed);
        result["verification"] = to_value(&report);
    }
    let mut p = Payload::new(
        "hermite",
        json!({"m": m, "n": n, "verify": a.verify}),
        result,
        field.to_string(),
    );
    p.passed = passed;
    Ok(p)
}

fn coh_csv(tables: &[CohTable]) -> String {
    let mut out = String::from("t,j,h\n");
    for t in tables {
        for (j, h) in &t.values {
            out.push_str(&format!("{},{j},{h}\n", t.t));
        }
    }
    out
}

fn cohomology(a: &CohomologyArgs, field: Field) -> Result<Payload> {
    let f = field.to_string();
    if let Some(big_n) = a.big_n {
        let (k, n) = (need(a.k, "k")?, need(a.n, "n")?);
        let t = a.t.unwrap_or(0);
        let window = twist_window_kind(k, n, big_n, t)?;
        let h0 = h0_sym_power_twist(k, n, big_n, t)?;
        let mut p = Payload::new(
            "cohomology.sym_power",
            json!({"k": k, "n": n, "N": big_n, "t": t}),
            json!({"h0": h0}),
            f,
        );
        p.metadata.insert("twist_window".into(), to_value(&window));
        p.metadata.insert(
            "twist_window_policy".into(),
            json!("only windows where a single cohomology row of the resolution survives are computed"),
        );
        return Ok(p);
    }
    if a.m.is_none() {
        let (k, t) = (need(a.k, "k")?, need(a.t, "t")?);
        let (h0, hk) = line_cohomology(k, t)?;
        let mut p = Payload::new(
            "cohomology.line",
            json!({"k": k, "t": t}),
            json!({"h0": h0, "hk": hk}),
            f,
        );
        p.csv = Some(format!("t,j,h\n{t},0,{h0}\n{t},{k},{hk}\n"));
        return Ok(p);
    }
    let (m, d, i) = (need(a.m, "m")?, need(a.d, "d")?, need(a.i, "i")?);
    if let Some(t) = a.t {
        let table = wedge_e_cohomology(m, d, i, t)?;
        let mut p = Payload::new(
            "cohomology.wedge",
            json!({"m": m, "d": d, "i": i, "t": t}),
            to_value(&table),
            f,
        );
        p.csv = Some(coh_csv(std::slice::from_ref(&table)));
        return Ok(p);
    }
    let report = supernatural_check(m, d, i)?;
    let tables = twist_window(m, d)
        .rev()
        .map(|t| wedge_e_cohomology(m, d, i, t))
        .collect::<Result<Vec<_>>>()?;
    let mut p = Payload::new(
        "cohomology.supernatural",
        json!({"m": m, "d": d, "i": i}),
        json!({"report": to_value(&report), "tables": to_value(&tables)}),
        f,
    );
    p.csv = Some(coh_csv(&tables));
    p.passed = Some(report.passed);
    Ok(p)
}

fn parse_point(s: &str, field: Field) -> Result<Vec<Scalar>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map(|v| field.from_i64(v))
                .map_err(|e| invalid(format!("bad coordinate {x:?}: {e}")))
        })
        .collect()
}

fn hankel(a: &HankelArgs, field: Field) -> Result<Payload> {
    let (n, k) = (a.n, a.k);
    let inv = secant_invariants(n, k)?;
    let betti = eagon_northcott_betti(n, k)?;
    let hs = hilbert_series(n, k)?;
    let mut result = json!({
        "invariants": to_value(&inv),
        "betti": to_value(&betti),
        "betti_totals": betti.totals(),
        "hilbert_series": {
            "numerator": hs.numerator,
            "denom_power": hs.denom_power,
            "display": hs.to_string(),
            "matches_betti_expansion": hilbert_series_cross_check(n, k)?,
        },
        "hankel_matrix": hankel_matrix(n, k)?.entries,
    });
    if let Some(pt) = &a.point {
        let z = parse_point(pt, field)?;
        let mat = hankel_matrix(n, k)?.evaluate(&z)?;
        result["evaluation"] = json!({"point": pt, "rank": mat.rank(), "matrix": matrix_json(&mat)});
    }
    let mut p = Payload::new(
        "hankel",
        json!({"n": n, "k": k, "oracle": a.oracle}),
        result,
        field.to_string(),
    );
    p.csv = Some(betti.to_csv());
    if a.oracle {
        let oracle: BettiTable = koszul_tor_oracle(n, k, n + 2 - 2 * k)?;
        p.result["oracle"] = json!({
            "betti": to_value(&oracle),
            "prime": ORACLE_PRIME,
            "agrees": oracle == betti,
        });
        p.passed = Some(oracle == betti);
    }
    Ok(p)
}

fn mcm(a: &McmArgs, field: Field) -> Result<Payload> {
    let (n, k) = (a.n, a.k);
    if let Some(i) = a.i {
        let r = generalized_hermite_check(n, k, i)?;
        let mut p = Payload::new(
            "mcm.generalized_hermite",
            json!({"n": n, "k": k, "i": i}),
            to_value(&r),
            field.to_string(),
        );
        p.passed = Some(r.passed);
        return Ok(p);
    }
    let r = need(a.r, "r")?;
    let data = mcm_data(n, k, r)?;
    let mut p = Payload::new(
        "mcm",
        json!({"n": n, "k": k, "r": r}),
        to_value(&data),
        field.to_string(),
    );
    p.metadata
        .insert("grading".into(), json!("generators of M_r in degree 0"));
    Ok(p)
}

fn complex_json(c: &WeymanComplex, matrices: bool) -> Value {
    let mut v = json!({
        "layers": to_value(&c.layers),
        "homology": c.middle_homology(),
        "composite_zero": c.composite_is_zero(),
        "ranks": [c.d1.rank(), c.d2.rank()],
    });
    if matrices {
        v["d1"] = matrix_json(&c.d1);
        v["d2"] = matrix_json(&c.d2);
    }
    v
}

fn parse_pair(s: &str) -> Result<(usize, usize)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [x, y] => match (x.parse(), y.parse()) {
            (Ok(x), Ok(y)) => Ok((x, y)),
            _ => Err(invalid(format!("bad bidegree {s:?}"))),
        },
        _ => Err(invalid(format!("bidegree needs the form d1,d2, got {s:?}"))),
    }
}

fn weyman(a: &WeymanArgs, field: Field) -> Result<Payload> {
    let f = field.to_string();
    if let (Some(u), Some(v)) = (a.u, a.v) {
        if let Some(g) = a.g {
            let sa = need(a.a, "a")?;
            let r = bigraded_identification(g, sa, u, v, field)?;
            let mut p = Payload::new(
                "weyman.identification",
                json!({"g": g, "a": sa, "u": u, "v": v}),
                to_value(&r),
                f,
            );
            p.passed = Some(r.passed);
            return Ok(p);
        }
        let (d1, d2) = parse_pair(a.bidegree.as_deref().ok_or_else(|| invalid("missing --bidegree"))?)?;
        let policy: QPolicy = a.policy.parse()?;
        let c = bigraded_complex(u, v, d1, d2, field, policy)?;
        let params = json!({"u": u, "v": v, "bidegree": [d1, d2], "policy": to_value(&policy)});
        return Ok(Payload::new("weyman.bigraded", params, complex_json(&c, a.matrices), f));
    }
    let (i, d) = (need(a.i, "i")?, need(a.d, "d")?);
    let c = weyman_complex(i, d, field)?;
    Ok(Payload::new(
        "weyman",
        json!({"i": i, "d": d}),
        complex_json(&c, a.matrices),
        f,
    ))
}

fn green(a: &GreenArgs, field: Field) -> Result<Payload> {
    let report = green_check(a.g, field)?;
    let mut result = json!({
        "report": to_value(&report),
        "pass_vector": report.entries.iter().map(|e| e.passed).collect::<Vec<_>>(),
        "tangential_profile": to_value(&tor_profiles(a.g, None)?),
    });
    if let Some(sa) = a.a {
        result["scroll_profile"] = to_value(&tor_profiles(a.g, Some(sa))?);
    }
    let mut p = Payload::new("green", json!({"g": a.g, "a": a.a}), result, field.to_string());
    p.metadata.insert("degree_dictionary".into(), json!("d = g - i"));
    Ok(p)
}
