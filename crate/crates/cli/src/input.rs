//! Turning command-line strings into fields, elements and polynomials.

use scatlin_core::family::{self, FamilySpec, FamilyTag, HVariant};
use scatlin_core::{Elem, Field, QPoly};

use crate::args::PolyArgs;
use crate::CliError;

pub fn field(spec: &str) -> Result<Field, CliError> {
    Ok(Field::from_spec(spec)?)
}

pub fn elem(field: &Field, text: &str) -> Result<Elem, CliError> {
    Ok(field.parse(text)?)
}

/// A resolved polynomial and, when it came from a family, its spec.
pub struct Resolved {
    pub poly: QPoly,
    pub spec: Option<FamilySpec>,
}

impl Resolved {
    pub fn describe(&self, field: &Field) -> serde_json::Value {
        serde_json::json!({
            "family": self.spec.map(|s| s.format(field)),
            "coeffs": self.poly.to_json(field)["coeffs"],
        })
    }
}

/// JSON when the text starts with `{` or `[`, a family spec otherwise.
pub fn poly_text(field: &Field, text: &str) -> Result<Resolved, CliError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(Resolved {
            poly: QPoly::from_json(field, text)?,
            spec: None,
        });
    }
    let spec = FamilySpec::parse(field, text)?;
    Ok(Resolved {
        poly: family::build(field, &spec)?,
        spec: Some(spec),
    })
}

pub fn poly(field: &Field, args: &PolyArgs) -> Result<Resolved, CliError> {
    match (&args.poly, &args.family) {
        (Some(text), None) => {
            if args.h.is_some() || args.delta.is_some() {
                return Err(CliError::Usage(
                    "--h/--delta go with --family, not --poly".into(),
                ));
            }
            poly_text(field, text)
        }
        (None, Some(name)) => {
            let tag = FamilyTag::from_name(name)?;
            let given = args.h.as_deref().or(args.delta.as_deref());
            let param = match (tag.parameter(), given) {
                (Some("h"), _) if args.delta.is_some() => {
                    return Err(CliError::Usage(format!("{tag} takes --h, not --delta")));
                }
                (Some("delta"), _) if args.h.is_some() => {
                    return Err(CliError::Usage(format!("{tag} takes --delta, not --h")));
                }
                (Some(p), None) => return Err(CliError::Usage(format!("{tag} needs --{p}"))),
                (None, Some(_)) => {
                    return Err(CliError::Usage(format!("{tag} takes no parameter")))
                }
                (_, g) => g.map(|t| elem(field, t)).transpose()?,
            };
            let spec = FamilySpec::new(tag, param);
            Ok(Resolved {
                poly: family::build(field, &spec)?,
                spec: Some(spec),
            })
        }
        (None, None) => Err(CliError::Usage("give --poly or --family".into())),
        (Some(_), Some(_)) => Err(CliError::Usage("--poly and --family are exclusive".into())),
    }
}

pub fn parity(field: &Field) -> HVariant {
    if field.is_odd() {
        HVariant::Odd
    } else {
        HVariant::Even
    }
}

/// `all` expands to every valid `h` for the parity of `q`.
pub fn h_list(field: &Field, text: &str) -> Result<Vec<Elem>, CliError> {
    if text == "all" {
        Ok(family::enumerate_h(field, parity(field))?)
    } else {
        Ok(vec![elem(field, text)?])
    }
}
