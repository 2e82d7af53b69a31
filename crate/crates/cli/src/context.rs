use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use fgl_cobord::lazard::{LazardPresentation, Mode, RingMorphism, SCHEMA};
use fgl_cobord::{Error, PolyRing};
use serde_json::Value;

use crate::{Emit, Global, ModeArg};

/// Presentations above this truncation take noticeably long to build.
const COSTLY_WEIGHT: usize = 8;

#[derive(Debug)]
pub enum Failure {
    /// A check ran and did not hold; the report is already printed.
    Verification,
    /// Integral mode met an uncertified value.
    Refused(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Uncertified(_) => Failure::Refused(e.to_string()),
            e => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

pub type Outcome<T = ()> = std::result::Result<T, Failure>;

pub fn mode(g: &Global) -> Mode {
    match g.mode {
        ModeArg::Integral => Mode::Integral,
        ModeArg::Rational => Mode::Rational,
    }
}

fn cache_file(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("lazard-{n}.json"))
}

/// Builds `L_{<=N}`, reusing `$FGL_COBORD_CACHE/lazard-N.json` when present.
pub fn presentation(g: &Global) -> Outcome<Arc<LazardPresentation>> {
    let n = g.max_weight;
    if n > COSTLY_WEIGHT {
        eprintln!("warning: building the presentation at N = {n}; relation matrices grow quickly with N");
    }
    let dir = std::env::var_os("FGL_COBORD_CACHE").map(PathBuf::from);
    if let Some(dir) = &dir {
        let path = cache_file(dir, n);
        if let Ok(text) = std::fs::read_to_string(&path) {
            match LazardPresentation::from_cache_str(&text) {
                Ok(p) if p.max_weight() == n => return Ok(Arc::new(p)),
                _ => eprintln!("warning: ignoring unreadable cache file {}", path.display()),
            }
        }
    }
    let pres = LazardPresentation::build(n)?;
    if let Some(dir) = &dir {
        let written = std::fs::create_dir_all(dir).and_then(|_| std::fs::write(cache_file(dir, n), pres.to_cache_string()));
        if let Err(e) = written {
            eprintln!("warning: could not write presentation cache: {e}");
        }
    }
    Ok(Arc::new(pres))
}

/// `additive`, `multiplicative`, or a morphism JSON file.
pub fn morphism(pres: &Arc<LazardPresentation>, which: &str) -> Outcome<RingMorphism<PolyRing>> {
    match which {
        "additive" => Ok(RingMorphism::additive(Arc::clone(pres))),
        "multiplicative" => Ok(RingMorphism::multiplicative(Arc::clone(pres))),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
            Ok(RingMorphism::from_json(Arc::clone(pres), &v)?)
        }
    }
}

/// Reads an argument that may be `-` (standard input) or `@path`.
pub fn read_argument(arg: &str) -> Outcome<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)?;
        Ok(s)
    } else if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

/// Writes the JSON payload (with the schema tag) or its table rendering.
pub fn emit(g: &Global, mut payload: Value, table: impl FnOnce(&Value) -> String) -> Outcome {
    if let Value::Object(map) = &mut payload {
        map.insert("schema".into(), Value::String(SCHEMA.into()));
    }
    let text = match g.emit {
        Emit::Json => serde_json::to_string_pretty(&payload).expect("JSON value serializes") + "\n",
        Emit::Table => table(&payload),
    };
    match &g.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
