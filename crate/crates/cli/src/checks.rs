use std::fmt::Write as _;
use std::sync::Arc;

use fgl_cobord::fgl::{dpc_expand, verify_inverse_identity};
use fgl_cobord::lazard::{mishchenko_elements, LazardPresentation};
use fgl_cobord::wpbf::{decompose, iota, proj_map};
use fgl_cobord::{CoeffRing, FglTable, LbAlgebra, ProjRing, WpbfDecomposition};
use serde_json::{json, Value};

use crate::context::{emit, mode, presentation, Failure, Outcome};
use crate::{Check, Global, VerifyArgs};

struct Report {
    name: &'static str,
    params: Value,
    pass: bool,
    residual: String,
}

impl Report {
    fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "params": self.params,
            "status": if self.pass { "PASS" } else { "FAIL" },
            "residual": self.residual,
        })
    }
}

struct Setup {
    pres: Arc<LazardPresentation>,
    table: FglTable<LazardPresentation>,
    n: usize,
}

fn within(setup: &Setup, what: &str, k: usize) -> Outcome {
    if k > setup.n {
        return Err(Failure::Usage(format!("{what} {k} exceeds the truncation N = {}", setup.n)));
    }
    Ok(())
}

fn caps(args: &VerifyArgs, n: usize) -> (usize, usize) {
    match args.caps.as_deref() {
        Some([a, b]) => (*a, *b),
        _ => (n, n),
    }
}

fn inverse_identity(s: &Setup, cap: usize) -> Outcome<Report> {
    let check = verify_inverse_identity(&s.table, cap)?;
    Ok(Report { name: "inverse-identity", params: json!({ "cap": cap }), pass: check.holds, residual: check.residual.to_string() })
}

fn dpc_split(s: &Setup, (n, m): (usize, usize)) -> Outcome<Report> {
    let split = dpc_expand(&s.table, n, m)?;
    let residual = format!("split: {}; bridge: {}", split.split_residual, split.bridge_residual);
    Ok(Report { name: "dpc-split", params: json!({ "caps": [n, m] }), pass: split.holds(), residual })
}

fn fgl_roundtrip(s: &Setup, (n, m): (usize, usize)) -> Outcome<Report> {
    let r = ProjRing::new(Arc::clone(&s.pres), &[n, m])?;
    let c = r.chern_of_line_bundle(&s.table, &[1, 1])?;
    let extracted = r.extract_fgl_coeffs(&c)?;
    let mut differing = Vec::new();
    for i in 1..=n {
        for j in 1..=m {
            let diff = s.pres.sub(&extracted.coeff(i, j)?, &s.table.coeff(i, j)?);
            if !s.pres.is_zero(&diff) {
                differing.push(format!("a{i}{j}: {}", s.pres.format(&diff)));
            }
        }
    }
    let residual = if differing.is_empty() { "0".to_string() } else { differing.join("; ") };
    Ok(Report { name: "fgl-roundtrip", params: json!({ "caps": [n, m] }), pass: differing.is_empty(), residual })
}

fn psi_biorthogonality(s: &Setup, depth: usize, g: &Global) -> Outcome<Report> {
    within(s, "depth", depth)?;
    let cache = mishchenko_elements(&s.table, depth, mode(g))?;
    let alg = LbAlgebra::new(s.table.clone(), cache, depth)?;
    let mut bad = Vec::new();
    for i in 0..=depth {
        for j in 0..=depth {
            let v = alg.psi0(&alg.basis(j).shift_by(i))?;
            let expected = if i == j { s.pres.one() } else { s.pres.zero() };
            if v != expected {
                bad.push(format!("ψ0(∂^{i} e{j}) = {}", s.pres.format(&v)));
            }
        }
    }
    let residual = if bad.is_empty() { "0".to_string() } else { bad.join("; ") };
    Ok(Report { name: "psi-biorthogonality", params: json!({ "depth": depth }), pass: bad.is_empty(), residual })
}

/// Round trips on every α_a ranging over the weight bases, for each n <= depth.
fn wpbf_roundtrip(s: &Setup, depth: usize, g: &Global) -> Outcome<Report> {
    within(s, "depth", depth)?;
    let cache = mishchenko_elements(&s.table, depth, mode(g))?;
    let alg = LbAlgebra::new(s.table.clone(), cache, depth)?;
    let basis: Vec<_> = (0..=s.n)
        .flat_map(|w| (0..s.pres.ranks()[w]).map(move |k| (w, k)))
        .map(|(w, k)| s.pres.basis_element(w, k))
        .collect::<Result<_, _>>()?;
    let mut failures = Vec::new();
    let mut count = 0;
    for n in 0..=depth {
        let r = ProjRing::new(Arc::clone(&s.pres), &[n])?;
        for a in 0..=n {
            for x in &basis {
                let mut alphas = vec![s.pres.zero(); n + 1];
                alphas[a] = x.clone();
                let d = WpbfDecomposition::new(Arc::clone(&s.pres), alphas)?;
                let e = proj_map(&d, &r)?;
                if decompose(&e, &r, alg.psi(), alg.cache())? != d {
                    failures.push(format!("n = {n}, α{a} = {}", s.pres.format(x)));
                }
                if !iota(&e, &r)?.shift_by(n + 1).is_zero() {
                    failures.push(format!("n = {n}: shift^(n+1) iota nonzero"));
                }
                count += 1;
            }
        }
    }
    let residual = if failures.is_empty() { "0".to_string() } else { failures.join("; ") };
    Ok(Report { name: "wpbf-roundtrip", params: json!({ "depth": depth, "vectors": count }), pass: failures.is_empty(), residual })
}

pub fn verify(g: &Global, args: &VerifyArgs) -> Outcome {
    let pres = presentation(g)?;
    let n = pres.max_weight();
    let setup = Setup { table: pres.universal_table(), pres, n };
    let cap = args.cap.unwrap_or(n);
    let depth = args.depth.unwrap_or(n);
    let pair = caps(args, n);
    let mut reports = Vec::new();
    let all = args.check == Check::All;
    if all || args.check == Check::InverseIdentity {
        reports.push(inverse_identity(&setup, cap)?);
    }
    if all || args.check == Check::DpcSplit {
        reports.push(dpc_split(&setup, pair)?);
    }
    if all || args.check == Check::FglRoundtrip {
        reports.push(fgl_roundtrip(&setup, pair)?);
    }
    if all || args.check == Check::PsiBiorthogonality {
        reports.push(psi_biorthogonality(&setup, depth, g)?);
    }
    if all || args.check == Check::WpbfRoundtrip {
        reports.push(wpbf_roundtrip(&setup, depth, g)?);
    }
    let pass = reports.iter().all(|r| r.pass);
    let payload = json!({
        "max_weight": n,
        "checks": reports.iter().map(Report::to_json).collect::<Vec<_>>(),
        "passed": pass,
    });
    emit(g, payload, |_| {
        let mut out = String::new();
        for r in &reports {
            let _ = writeln!(out, "{}  {} {}: residual {}", if r.pass { "PASS" } else { "FAIL" }, r.name, r.params, r.residual);
        }
        out
    })?;
    if pass {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
