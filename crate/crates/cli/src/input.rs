use std::path::Path;

use macloops_core::relations::preset_template;
use macloops_core::{RelationTemplate, SimplicialComplex};
use thiserror::Error;

pub const MAX_VERTICES_VAR: &str = "MACLOOPS_MAX_VERTICES";
const DEFAULT_MAX_VERTICES: usize = 12;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }
}

impl From<macloops_core::Error> for CliError {
    fn from(e: macloops_core::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub fn max_vertices() -> Result<usize, CliError> {
    match std::env::var(MAX_VERTICES_VAR) {
        Err(_) => Ok(DEFAULT_MAX_VERTICES),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("{} must be a non-negative integer, got {:?}", MAX_VERTICES_VAR, v))),
    }
}

/// A preset name (`pentagon`, `hexagon`, `square`, `simplex:<m>`) or a JSON file.
pub fn load_complex(arg: &str) -> Result<SimplicialComplex, CliError> {
    let complex = match arg {
        "pentagon" => SimplicialComplex::polygon_boundary(5)?,
        "hexagon" => SimplicialComplex::polygon_boundary(6)?,
        "square" => SimplicialComplex::polygon_boundary(4)?,
        _ => match arg.strip_prefix("simplex:") {
            Some(m) => {
                let m = m.parse().map_err(|_| CliError::Input(format!("bad simplex size {:?}", m)))?;
                SimplicialComplex::simplex(m)?
            }
            None => SimplicialComplex::from_json(&read(arg)?)
                .map_err(|e| CliError::Input(format!("{}: {}", arg, e)))?,
        },
    };
    let cap = max_vertices()?;
    if complex.m() > cap {
        return Err(CliError::Input(format!(
            "complex has {} vertices, above the limit {} (set {})",
            complex.m(),
            cap,
            MAX_VERTICES_VAR
        )));
    }
    Ok(complex)
}

/// A preset relation name or a template JSON file. Presets must be used
/// with their own complex.
pub fn load_template(arg: &str, complex: &SimplicialComplex) -> Result<RelationTemplate, CliError> {
    if let Some((preset_complex, template)) = preset_template(arg) {
        if preset_complex != *complex {
            return Err(CliError::Input(format!("relation preset {:?} needs the {} complex", arg, arg)));
        }
        return Ok(template);
    }
    RelationTemplate::from_json(&read(arg)?).map_err(|e| CliError::Input(format!("{}: {}", arg, e)))
}

fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(Path::new(path)).map_err(|e| CliError::Input(format!("cannot read {}: {}", path, e)))
}
