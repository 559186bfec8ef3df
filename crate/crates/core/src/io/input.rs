//! Line-oriented input format:
//!
//! ```text
//! # comment
//! length a = 10
//! set release_cutoff = 7
//! T = a b
//! B = b* a*
//! ```

use std::collections::BTreeMap;

use crate::enumerate::EnumConfig;
use crate::error::InputError;
use crate::kernel;
use crate::model::{self, Complex};

#[derive(Clone, Debug, Default)]
pub struct InputSpec {
    pub domains: BTreeMap<String, u32>,
    pub complexes: Vec<Complex>,
    /// `(key, value, line)` overrides in file order.
    pub settings: Vec<(String, String, usize)>,
}

impl InputSpec {
    /// Applies the file's `set` lines on top of `cfg`.
    pub fn apply_settings(&self, cfg: &mut EnumConfig) -> Result<(), InputError> {
        for (key, value, line) in &self.settings {
            apply_setting(cfg, key, value).map_err(|message| InputError {
                line: *line,
                column: None,
                message,
            })?;
        }
        Ok(())
    }
}

/// Sets one configuration field by name. Values are read as JSON scalars,
/// so `7`, `1.5e6` and `false` all work.
pub fn apply_setting(cfg: &mut EnumConfig, key: &str, value: &str) -> Result<(), String> {
    let parsed: serde_json::Value =
        serde_json::from_str(value).map_err(|_| format!("invalid value '{value}' for '{key}'"))?;
    let mut doc = serde_json::to_value(&*cfg).expect("config serializes");
    let slot = if doc.get(key).is_some() {
        &mut doc[key]
    } else if doc["moves"].get(key).is_some() {
        &mut doc["moves"][key]
    } else if doc["kinetics"].get(key).is_some() {
        &mut doc["kinetics"][key]
    } else {
        return Err(format!("unknown setting '{key}'"));
    };
    *slot = parsed;
    let updated: EnumConfig =
        serde_json::from_value(doc).map_err(|e| format!("invalid value for '{key}': {e}"))?;
    updated.kinetics.validate()?;
    if updated.moves.release_cutoff == 0 || updated.max_complexes == 0 || updated.max_reactions == 0
    {
        return Err(format!("'{key}' must be at least 1"));
    }
    *cfg = updated;
    Ok(())
}

fn is_ident(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.')
}

fn err(line: usize, column: Option<usize>, message: impl Into<String>) -> InputError {
    InputError {
        line,
        column,
        message: message.into(),
    }
}

/// Parses an input document. Complexes are validated and canonicalized;
/// errors carry 1-based line and column numbers.
pub fn parse_input(text: &str) -> Result<InputSpec, InputError> {
    let mut spec = InputSpec::default();
    let mut seen: BTreeMap<String, String> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let Some((lhs, rhs)) = line.split_once('=') else {
            return Err(err(line_no, None, "expected '='"));
        };
        let rhs_col = lhs.chars().count() + 2;
        let words: Vec<&str> = lhs.split_whitespace().collect();
        match words[..] {
            ["length", name] => {
                if !is_ident(name) {
                    return Err(err(line_no, None, format!("invalid domain name '{name}'")));
                }
                let len: u32 = rhs
                    .trim()
                    .parse()
                    .ok()
                    .filter(|&l| l > 0)
                    .ok_or_else(|| err(line_no, Some(rhs_col), "domain length must be a positive integer"))?;
                if spec.domains.insert(name.to_string(), len).is_some() {
                    return Err(err(line_no, None, format!("domain '{name}' declared twice")));
                }
            }
            ["set", key] => {
                spec.settings
                    .push((key.to_string(), rhs.trim().to_string(), line_no));
            }
            [name] => {
                if !is_ident(name) {
                    return Err(err(line_no, None, format!("invalid complex name '{name}'")));
                }
                let (strands, structure) = kernel::parse(rhs, &spec.domains)
                    .map_err(|e| err(line_no, Some(rhs_col - 1 + e.column), e.message))?;
                let complex = Complex::new(name, strands, structure).map_err(|v| {
                    err(line_no, None, format!("complex '{name}' is invalid: {v}"))
                })?;
                let canon = model::canonical_form(&complex);
                if seen.contains_key(name) {
                    return Err(err(line_no, None, format!("complex '{name}' declared twice")));
                }
                if let Some((other, _)) = seen.iter().find(|(_, k)| **k == canon.kernel()) {
                    return Err(err(
                        line_no,
                        None,
                        format!("complex '{name}' is the same as '{other}'"),
                    ));
                }
                seen.insert(name.to_string(), canon.kernel());
                spec.complexes.push(canon);
            }
            _ => return Err(err(line_no, None, "expected 'length NAME', 'set KEY' or 'NAME' before '='")),
        }
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_strand_system() {
        let s = parse_input("length a = 10\nlength b = 10\nT = a b\nB = b* a*\n").unwrap();
        assert_eq!(s.domains.len(), 2);
        assert_eq!(s.complexes.len(), 2);
        assert!(s.complexes.iter().all(|c| c.size() == 1));
    }

    #[test]
    fn hairpin_and_duplex() {
        let s = parse_input("length a = 6\nlength b = 4\nC = a( b )\nD = a( + )").unwrap();
        assert_eq!(s.complexes[0].size(), 1);
        assert_eq!(s.complexes[0].pair_list().len(), 1);
        assert_eq!(s.complexes[1].strands()[1].name(), "a*");
    }

    #[test]
    fn comments_and_settings() {
        let s = parse_input("# x\nlength a = 6 # six\nset release_cutoff = 7\nA = a\n").unwrap();
        let mut cfg = EnumConfig::default();
        s.apply_settings(&mut cfg).unwrap();
        assert_eq!(cfg.moves.release_cutoff, 7);
    }

    #[test]
    fn errors_have_positions() {
        let e = parse_input("length a = 6\nA = a( q )").unwrap_err();
        assert_eq!((e.line, e.column), (2, Some(8)));
        let e = parse_input("length a = 6\n\nA = a(").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_input("length a = zero").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(parse_input("length a = 6\nA = a\nA = a*").is_err());
        assert!(parse_input("length a = 6\nset warp = 9").unwrap().apply_settings(&mut EnumConfig::default()).is_err());
    }

    #[test]
    fn disconnected_declaration_rejected() {
        let e = parse_input("length a = 6\nlength b = 6\nK = a + b").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("not connected"));
    }

    #[test]
    fn settings_reach_every_section() {
        let mut cfg = EnumConfig::default();
        apply_setting(&mut cfg, "max_complexes", "50").unwrap();
        apply_setting(&mut cfg, "enable_4way", "false").unwrap();
        apply_setting(&mut cfg, "k_bind_bi", "2e6").unwrap();
        assert_eq!(cfg.max_complexes, 50);
        assert!(!cfg.moves.enable_4way);
        assert_eq!(cfg.kinetics.k_bind_bi, 2e6);
        assert!(apply_setting(&mut cfg, "k_bind_bi", "-1").is_err());
        assert!(apply_setting(&mut cfg, "max_complexes", "0").is_err());
    }
}
