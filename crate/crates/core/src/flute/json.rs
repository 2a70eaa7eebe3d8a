use serde::{Deserialize, Serialize};

use super::{constant_c, BisectorData, Enumeration, GroupSpec, Rational};
use crate::{Error, Result};

pub const SPEC_VERSION: &str = "hypflute-spec-1";

/// Relative tolerance when comparing stored numbers with recomputed ones.
const LOAD_TOL: f64 = 1e-9;

#[derive(Serialize, Deserialize)]
struct SpecFile {
    version: String,
    #[serde(rename = "C")]
    c: f64,
    n_max: u32,
    generators: Vec<GeneratorFile>,
    enumeration: EnumerationFile,
}

#[derive(Serialize, Deserialize)]
struct GeneratorFile {
    m: usize,
    q: Rational,
    n: u32,
    matrix: [f64; 4],
    bisectors: BisectorPair,
}

#[derive(Serialize, Deserialize)]
struct BisectorPair {
    forward: BisectorFile,
    inverse: BisectorFile,
}

#[derive(Serialize, Deserialize)]
struct BisectorFile {
    center: f64,
    radius: f64,
    extremities: [f64; 2],
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum EnumerationFile {
    SternBrocotCantor,
    Explicit { q: Vec<Rational> },
}

impl From<&BisectorData> for BisectorFile {
    fn from(b: &BisectorData) -> Self {
        BisectorFile { center: b.center, radius: b.radius, extremities: b.extremities }
    }
}

fn close(stored: f64, computed: f64) -> bool {
    (stored - computed).abs() <= LOAD_TOL * (1.0 + computed.abs())
}

fn check(what: &str, m: usize, stored: &[f64], computed: &[f64]) -> Result<()> {
    for (s, c) in stored.iter().zip(computed) {
        if !close(*s, *c) {
            return Err(Error::MalformedSpec(format!(
                "generator {m}: stored {what} {stored:?} disagrees with recomputed {computed:?}"
            )));
        }
    }
    Ok(())
}

impl GroupSpec {
    pub fn to_json(&self) -> String {
        let file = SpecFile {
            version: SPEC_VERSION.to_string(),
            c: self.c,
            n_max: self.n_max,
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorFile {
                    m: g.m,
                    q: g.q(),
                    n: g.n(),
                    matrix: g.element.matrix().entries(),
                    bisectors: BisectorPair {
                        forward: (&g.bisector_fwd).into(),
                        inverse: (&g.bisector_inv).into(),
                    },
                })
                .collect(),
            enumeration: match &self.enumeration {
                Enumeration::SternBrocotCantor => EnumerationFile::SternBrocotCantor,
                Enumeration::Explicit(q) => EnumerationFile::Explicit { q: q.clone() },
            },
        };
        let mut s = serde_json::to_string_pretty(&file).expect("spec serializes");
        s.push('\n');
        s
    }

    /// Parses a spec and rebuilds every generator from `(q, n)`; stored
    /// matrices and bisectors must agree with the recomputation.
    ///
    /// Selection conditions are not rechecked here; see
    /// [`GroupSpec::check_conditions`].
    pub fn from_json(text: &str) -> Result<Self> {
        let file: SpecFile = serde_json::from_str(text).map_err(|e| Error::MalformedSpec(e.to_string()))?;
        if file.version != SPEC_VERSION {
            return Err(Error::MalformedSpec(format!(
                "unsupported version {:?}, expected {SPEC_VERSION:?}",
                file.version
            )));
        }
        if !close(file.c, constant_c()) {
            return Err(Error::MalformedSpec(format!("C = {} differs from {}", file.c, constant_c())));
        }
        let enumeration = match file.enumeration {
            EnumerationFile::SternBrocotCantor => Enumeration::SternBrocotCantor,
            EnumerationFile::Explicit { q } => Enumeration::Explicit(q),
        };
        for (k, g) in file.generators.iter().enumerate() {
            if g.m != k {
                return Err(Error::MalformedSpec(format!("generator at position {k} has m = {}", g.m)));
            }
            let (q, _) = enumeration.entry(k).map_err(|e| Error::MalformedSpec(e.to_string()))?;
            if q != g.q {
                return Err(Error::MalformedSpec(format!(
                    "generator {k} has q = {}, enumeration gives {q}",
                    g.q
                )));
            }
        }
        let indices: Vec<u32> = file.generators.iter().map(|g| g.n).collect();
        let spec = GroupSpec::from_parts(enumeration, &indices, file.n_max)
            .map_err(|e| Error::MalformedSpec(e.to_string()))?;
        for (stored, built) in file.generators.iter().zip(&spec.generators) {
            check("matrix", stored.m, &stored.matrix, &built.element.matrix().entries())?;
            for (s, b) in [(&stored.bisectors.forward, &built.bisector_fwd), (&stored.bisectors.inverse, &built.bisector_inv)] {
                check(
                    "bisector",
                    stored.m,
                    &[s.center, s.radius, s.extremities[0], s.extremities[1]],
                    &[b.center, b.radius, b.extremities[0], b.extremities[1]],
                )?;
            }
        }
        Ok(spec)
    }
}
