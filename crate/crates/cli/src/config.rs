//! Algebra definitions: builtin names and TOML files.

use std::path::Path;
use std::sync::Arc;

use formal_pbw::lie::{make_example, ExampleKind, LiePresentation};
use formal_pbw::{BasisElement, GradedSpace};
use serde::Deserialize;

use crate::expr::{self, as_vector, BracketMode};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraConfig {
    pub name: Option<String>,
    #[serde(default)]
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub brackets: Vec<String>,
    pub builtin: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    #[serde(default)]
    pub degree: i64,
}

#[derive(Clone, Debug)]
pub struct Algebra {
    pub name: String,
    pub presentation: Arc<LiePresentation>,
}

pub fn parse_builtin(spec: &str) -> Result<ExampleKind, String> {
    let parts: Vec<&str> = spec.trim().split(':').collect();
    let num = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| format!("'{s}' is not a non-negative integer in builtin '{spec}'"))
    };
    match parts.as_slice() {
        ["heisenberg"] => Ok(ExampleKind::Heisenberg),
        ["abelian", d] => Ok(ExampleKind::Abelian(num(d)?)),
        ["upper_triangular", n] => Ok(ExampleKind::StrictUpperTriangular(num(n)?)),
        ["free_nilpotent", m, c] => Ok(ExampleKind::FreeNilpotent {
            generators: num(m)?,
            class: num(c)?,
        }),
        ["vector_fields", d, c] => Ok(ExampleKind::FormalVectorFields {
            dim: num(d)?,
            cutoff: num(c)?,
        }),
        _ => Err(format!(
            "unknown builtin '{spec}' (expected heisenberg, abelian:d, upper_triangular:n, free_nilpotent:m:c or vector_fields:d:c)"
        )),
    }
}

pub fn builtin(spec: &str) -> Result<Algebra, String> {
    let p = make_example(parse_builtin(spec)?).map_err(|e| e.to_string())?;
    Ok(Algebra {
        name: spec.trim().to_string(),
        presentation: Arc::new(p),
    })
}

pub fn load(path: &Path) -> Result<Algebra, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let fallback = path.file_stem().map_or_else(
        || "algebra".to_string(),
        |s| s.to_string_lossy().into_owned(),
    );
    from_toml(&text, &fallback)
}

pub fn from_toml(text: &str, fallback_name: &str) -> Result<Algebra, String> {
    let config: AlgebraConfig = toml::from_str(text).map_err(|e| format!("invalid config: {e}"))?;
    config.build(fallback_name)
}

impl AlgebraConfig {
    pub fn build(&self, fallback_name: &str) -> Result<Algebra, String> {
        let explicit = !self.generators.is_empty() || !self.brackets.is_empty();
        let name = |default: &str| self.name.clone().unwrap_or_else(|| default.to_string());
        match (&self.builtin, explicit) {
            (Some(_), true) => Err("config gives both a builtin and generators/brackets".into()),
            (Some(spec), false) => {
                let mut a = builtin(spec)?;
                a.name = name(&a.name);
                Ok(a)
            }
            (None, _) => {
                let space = GradedSpace::new(
                    self.generators
                        .iter()
                        .map(|g| BasisElement::new(g.name.clone(), g.degree))
                        .collect(),
                )
                .map_err(|e| e.to_string())?;
                let space = Arc::new(space);
                let mut entries = Vec::new();
                for entry in &self.brackets {
                    let (a, b, rhs) = expr::parse_relation(entry)
                        .map_err(|e| format!("bracket \"{entry}\": {e}"))?;
                    let index = |n: &str| {
                        space
                            .index_of(n)
                            .ok_or_else(|| format!("bracket \"{entry}\": unknown generator '{n}'"))
                    };
                    let (i, j) = (index(&a)?, index(&b)?);
                    let value = expr::evaluate(
                        &rhs,
                        &space,
                        rhs.order_bound().max(1),
                        BracketMode::Forbidden,
                    )
                    .and_then(|t| as_vector(&t))
                    .map_err(|e| format!("bracket \"{entry}\": {e}"))?;
                    entries.push(((i, j), value));
                }
                let p = LiePresentation::new(space, entries).map_err(|e| e.to_string())?;
                Ok(Algebra {
                    name: name(fallback_name),
                    presentation: Arc::new(p),
                })
            }
        }
    }
}
