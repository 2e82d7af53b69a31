use std::fmt::Write as _;
use std::sync::Arc;

use fgl_cobord::lazard::{mishchenko_elements, parse_generator_name, LazardPresentation, Mode};
use fgl_cobord::lbmodule::build_psi;
use fgl_cobord::poly::parse_terms;
use fgl_cobord::wpbf::{decompose, proj_map};
use fgl_cobord::{
    CoeffRing, FglTable, GradedElement, LbAlgebra, ProjRing, SeriesSpace, TruncatedSeries, WpbfDecomposition,
};
use serde_json::{json, Value};

use crate::context::{emit, mode, morphism, presentation, read_argument, Failure, Outcome};
use crate::{checks, Cli, Command, Global, WpbfAction};

pub fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    if g.max_weight == 0 {
        return Err(Failure::Usage("empty truncation".into()));
    }
    match &cli.command {
        Command::Lazard => lazard(g),
        Command::Verify(args) => checks::verify(g, args),
        Command::Lbmul(args) => lbmul(g, args.i, args.j, args.specialize.as_deref()),
        Command::Wpbf { action: WpbfAction::Compose { n, alphas } } => compose(g, *n, alphas),
        Command::Wpbf { action: WpbfAction::Decompose { n, element } } => decompose_cmd(g, *n, element),
        Command::Specialize { morphism } => specialize(g, morphism),
        Command::Mishchenko { depth } => mishchenko(g, depth.unwrap_or(g.max_weight)),
    }
}

fn lazard(g: &Global) -> Outcome {
    let pres = presentation(g)?;
    let mut v = pres.to_json();
    v["ranks"] = json!(pres.ranks());
    emit(g, v, |v| {
        let mut out = format!("L<=N with N = {}\n", v["max_weight"]);
        for c in v["components"].as_array().into_iter().flatten() {
            let basis: Vec<&str> = c["basis"].as_array().into_iter().flatten().filter_map(Value::as_str).collect();
            let _ = writeln!(out, "weight {}  rank {}  basis {}", c["weight"], c["rank"], basis.join(", "));
        }
        out
    })
}

/// `e_i • e_j` as (JSON, display string).
fn product<R: CoeffRing>(table: FglTable<R>, i: usize, j: usize, mode: Mode) -> Outcome<(Value, String)> {
    let cache = mishchenko_elements(&table, i + j, mode)?;
    let alg = LbAlgebra::new(table, cache, i + j)?;
    let e = alg.eps(i, j)?;
    Ok((e.to_json(), e.to_string()))
}

fn lbmul(g: &Global, i: usize, j: usize, specialize: Option<&str>) -> Outcome {
    let pres = presentation(g)?;
    let (ring, e) = match specialize {
        None => ("universal".to_string(), product(pres.universal_table(), i, j, mode(g))?),
        Some(which) => {
            let m = morphism(&pres, which)?;
            (which.to_string(), product(m.specialize(), i, j, mode(g))?)
        }
    };
    let payload = json!({ "i": i, "j": j, "ring": ring, "product": e.0, "display": e.1 });
    emit(g, payload, |v| format!("e{i} • e{j} = {}\n", v["display"].as_str().unwrap_or_default()))
}

fn parse_alphas(pres: &Arc<LazardPresentation>, n: usize, text: &str) -> Outcome<WpbfDecomposition<LazardPresentation>> {
    let v: Value = serde_json::from_str(text).map_err(|e| Failure::Usage(format!("alphas: {e}")))?;
    let d = match &v {
        Value::Array(items) => {
            let alphas = items.iter().map(|a| pres.elem_from_json(a)).collect::<Result<Vec<_>, _>>()?;
            WpbfDecomposition::new(Arc::clone(pres), alphas)?
        }
        other => WpbfDecomposition::from_json(Arc::clone(pres), other)?,
    };
    if d.n() != n {
        return Err(Failure::Usage(format!("expected {} coefficients for n = {n}, got {}", n + 1, d.n() + 1)));
    }
    Ok(d)
}

fn decomposition_payload(pres: &LazardPresentation, d: &WpbfDecomposition<LazardPresentation>, e: &TruncatedSeries<LazardPresentation>) -> Value {
    let mut v = d.to_json();
    v["display"] = json!(d.alphas().iter().map(|a| pres.format(a)).collect::<Vec<_>>());
    v["series"] = json!(e.to_string());
    v["element"] = e.to_json();
    v
}

fn compose(g: &Global, n: usize, alphas: &str) -> Outcome {
    let pres = presentation(g)?;
    let d = parse_alphas(&pres, n, &read_argument(alphas)?)?;
    let r = ProjRing::new(Arc::clone(&pres), &[n])?;
    let e = proj_map(&d, &r)?;
    emit(g, decomposition_payload(&pres, &d, &e), |v| format!("{}\n", v["series"].as_str().unwrap_or_default()))
}

/// A series in `t` with coefficients polynomial in the `a_ij`, e.g.
/// `3*t - a11*t^2`, or series JSON.
fn parse_series(pres: &Arc<LazardPresentation>, r: &ProjRing<LazardPresentation>, text: &str) -> Outcome<TruncatedSeries<LazardPresentation>> {
    let text = text.trim();
    if text.starts_with('{') {
        let v: Value = serde_json::from_str(text).map_err(|e| Failure::Usage(format!("element: {e}")))?;
        // Accept the output of `wpbf compose` as well as bare series JSON.
        let v = v.get("element").unwrap_or(&v);
        let e = TruncatedSeries::from_json(Arc::clone(pres), v)?;
        r.check(&e)?;
        return Ok(e);
    }
    let mut e = r.zero();
    for (c, factors) in parse_terms(text)? {
        let mut coeff = pres.from_rational(&c);
        let mut power = 0u32;
        for (name, k) in factors {
            if name == "t" {
                power += k;
                continue;
            }
            let (i, j) = parse_generator_name(&name)
                .ok_or_else(|| Failure::Usage(format!("unknown symbol {name:?}; expected t or a generator a_ij")))?;
            let x: GradedElement = pres.reduce(&pres.generator_poly(i, j)?)?;
            coeff = pres.mul(&coeff, &pres.pow(&x, k));
        }
        let term = TruncatedSeries::monomial(Arc::clone(pres), SeriesSpace::univariate("t", r.caps()[0]), vec![power], coeff);
        e = e.add(&term.recap(r.space().clone())?)?;
    }
    Ok(e)
}

fn decompose_cmd(g: &Global, n: usize, element: &str) -> Outcome {
    let pres = presentation(g)?;
    if n > pres.max_weight() {
        return Err(Failure::Usage(format!("n = {n} exceeds the truncation N = {}", pres.max_weight())));
    }
    let r = ProjRing::new(Arc::clone(&pres), &[n])?;
    let e = parse_series(&pres, &r, &read_argument(element)?)?;
    let cache = mishchenko_elements(&pres.universal_table(), n, mode(g))?;
    let psi = build_psi(&cache, n)?;
    let d = decompose(&e, &r, &psi, &cache)?;
    emit(g, decomposition_payload(&pres, &d, &e), |v| {
        let shown: Vec<&str> = v["display"].as_array().into_iter().flatten().filter_map(Value::as_str).collect();
        format!("({})\n", shown.join(", "))
    })
}

fn specialize(g: &Global, which: &str) -> Outcome {
    let pres = presentation(g)?;
    let m = morphism(&pres, which)?;
    let table = m.specialize();
    let space = SeriesSpace::total_degree(&["x", "y"], pres.max_weight() + 1);
    let law = table.as_series(&space)?;
    let payload = json!({ "morphism": m.to_json(), "table": table.to_json(), "law": law.to_string() });
    emit(g, payload, |v| format!("F(x, y) = {}\n", v["law"].as_str().unwrap_or_default()))
}

fn mishchenko(g: &Global, depth: usize) -> Outcome {
    let pres = presentation(g)?;
    let cache = mishchenko_elements(&pres.universal_table(), depth, mode(g))?;
    for n in 0..=depth {
        cache.p_checked(n)?;
    }
    let mut v = cache.to_json();
    v["display"] = json!((0..=depth).map(|n| pres.format(cache.p(n).expect("within depth"))).collect::<Vec<_>>());
    emit(g, v, |v| {
        let mut out = String::new();
        for (n, p) in v["display"].as_array().into_iter().flatten().enumerate() {
            let _ = writeln!(out, "p{n} = {}", p.as_str().unwrap_or_default());
        }
        out
    })
}
