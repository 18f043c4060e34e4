//! Loading documents named on the command line, optionally specialized at a
//! parameter point given with `--at`.

use std::path::Path;

use homleib::corpus::{parse_point, Loader};
use homleib::linalg::LinearMap;
use homleib::model::{ActionFamily, AlgebraPresentation};
use homleib::scalar::FieldSpec;
use num_rational::BigRational;

use crate::error::{CliError, Result};

pub struct Inputs {
    at: Option<Vec<(String, BigRational)>>,
}

impl Inputs {
    pub fn new(at: Option<&str>) -> Result<Self> {
        let at = at.map(|s| parse_point(s).map_err(|e| CliError::usage(format!("--at: {e}")))).transpose()?;
        Ok(Inputs { at })
    }

    fn loader(&self) -> Loader<'_> {
        Loader { dir: Path::new(""), at: self.at.as_deref() }
    }

    pub fn presentation(&self, path: &Path) -> Result<AlgebraPresentation> {
        Ok(self.loader().presentation(&name(path))?)
    }

    pub fn action(&self, path: &Path) -> Result<ActionFamily> {
        Ok(self.loader().action(&name(path))?)
    }

    /// A matrix with entries over `field`, the (unspecialized) field of the document it belongs to.
    pub fn matrix(&self, path: &Path, field: &FieldSpec) -> Result<LinearMap> {
        Ok(self.loader().matrix(&name(path), field)?)
    }

    /// The field a presentation declares, before any specialization.
    pub fn declared_field(&self, path: &Path) -> Result<FieldSpec> {
        Ok(self.loader().declared_field(&name(path))?)
    }
}

fn name(path: &Path) -> String {
    path.to_string_lossy().into_owned()
}

/// Write `text` to `out`, or to standard output when no path is given.
pub fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
