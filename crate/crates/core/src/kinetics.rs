//! Approximate rate constants for the detailed move types.
//!
//! Unimolecular constants are in /s, bimolecular in /M/s. The constants are
//! tuned for roughly 25 C and 10 mM Mg2+; there is no temperature input.

use serde::{Deserialize, Serialize};

use crate::error::KineticsError;
use crate::moves::Mechanism;

/// Nucleotides charged per stem when sizing a multiloop.
pub const STEM_PENALTY_NT: f64 = 5.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KineticsConfig {
    /// (2,1) association, /M/s.
    pub k_bind_bi: f64,
    /// Zipping numerator: k = zip_prefactor / length.
    pub zip_prefactor: f64,
    /// Loop closure prefactor: k = a (len + 5)^-3.
    pub loop_prefactor_a: f64,
    /// Opening: k = 10^(log10(k_bind_bi) - a len).
    pub open_exponent_a: f64,
    pub bm3_init_a: f64,
    pub bm3_step_b: f64,
    pub bm4_init_a: f64,
    pub bm4_step_b: f64,
    /// Remote-toehold initiation scale; the default makes a zero-size loop
    /// behave like direct branch migration.
    pub remote_alpha: f64,
}

impl Default for KineticsConfig {
    fn default() -> Self {
        let loop_prefactor_a = 2.54e8;
        KineticsConfig {
            k_bind_bi: 1.0e6,
            zip_prefactor: 1.0e8,
            loop_prefactor_a,
            open_exponent_a: 1.24,
            bm3_init_a: 2.8e-3,
            bm3_step_b: 0.1e-3,
            bm4_init_a: 77.0,
            bm4_step_b: 1.0,
            remote_alpha: loop_prefactor_a * STEM_PENALTY_NT.powi(-3),
        }
    }
}

impl KineticsConfig {
    pub fn validate(&self) -> Result<(), String> {
        let fields = [
            ("k_bind_bi", self.k_bind_bi),
            ("zip_prefactor", self.zip_prefactor),
            ("loop_prefactor_a", self.loop_prefactor_a),
            ("open_exponent_a", self.open_exponent_a),
            ("bm3_init_a", self.bm3_init_a),
            ("bm3_step_b", self.bm3_step_b),
            ("bm4_init_a", self.bm4_init_a),
            ("bm4_step_b", self.bm4_step_b),
            ("remote_alpha", self.remote_alpha),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(format!("{name} must be positive and finite, got {v}"));
            }
        }
        Ok(())
    }
}

/// Loop geometry closed by a (1,1) binding step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum LoopContext {
    /// New pair stacks directly on an existing helix; `length` is the domain length.
    Zipping { length: u32 },
    /// Single-stem loop of `length` unpaired nucleotides.
    Hairpin { length: u32 },
    /// Two-stem internal loop with unpaired runs `y` and `w` on either side.
    Bulge { y: u32, w: u32 },
    /// Loop with `stems` stems and unpaired runs `domains`.
    Multiloop { domains: Vec<u32>, stems: u32 },
}

impl LoopContext {
    /// Effective loop size in nucleotides (the zipping length for zipping).
    pub fn effective_length(&self) -> f64 {
        match self {
            LoopContext::Zipping { length } | LoopContext::Hairpin { length } => *length as f64,
            LoopContext::Bulge { y, w } => (*y + *w) as f64 + STEM_PENALTY_NT,
            LoopContext::Multiloop { domains, stems } => multiloop_size(domains, *stems),
        }
    }
}

/// Loop size with a five-nucleotide charge per additional stem.
pub fn multiloop_size(domains: &[u32], stems: u32) -> f64 {
    let unpaired: u32 = domains.iter().sum();
    unpaired as f64 + STEM_PENALTY_NT * (stems.max(1) - 1) as f64
}

pub fn k_bind21(cfg: &KineticsConfig) -> f64 {
    cfg.k_bind_bi
}

fn loop_closing(cfg: &KineticsConfig, size: f64) -> f64 {
    cfg.loop_prefactor_a * (size + STEM_PENALTY_NT).powi(-3)
}

pub fn k_bind11(context: &LoopContext, cfg: &KineticsConfig) -> Result<f64, KineticsError> {
    match context {
        LoopContext::Zipping { length } => {
            if *length == 0 {
                return Err(KineticsError::NonPositiveLength(0.0));
            }
            Ok(cfg.zip_prefactor / *length as f64)
        }
        LoopContext::Hairpin { length } => {
            if *length == 0 {
                return Err(KineticsError::NonPositiveLength(0.0));
            }
            Ok(loop_closing(cfg, *length as f64))
        }
        LoopContext::Bulge { .. } => Ok(loop_closing(cfg, context.effective_length())),
        LoopContext::Multiloop { stems, .. } => {
            if *stems == 0 {
                return Err(KineticsError::NoStems);
            }
            let size = context.effective_length();
            if size <= 0.0 {
                return Err(KineticsError::NonPositiveLength(size));
            }
            Ok(loop_closing(cfg, size))
        }
    }
}

/// Opening rate of a helix of `helix_length` nucleotides, /s.
pub fn k_open(helix_length: u32, cfg: &KineticsConfig) -> f64 {
    cfg.k_bind_bi * 10f64.powf(-cfg.open_exponent_a * helix_length as f64)
}

/// Branch-migration initiation kind.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ThreeWayKind {
    Direct,
    /// Remote toehold separated by a loop of the given effective size.
    Remote { loop_size: f64 },
}

/// Slow-down of remote-toehold initiation relative to direct.
pub fn remote_penalty(loop_size: f64, cfg: &KineticsConfig) -> f64 {
    cfg.remote_alpha / loop_closing(cfg, loop_size)
}

pub fn k_three_way(
    kind: &ThreeWayKind,
    bm_length: u32,
    cfg: &KineticsConfig,
) -> Result<f64, KineticsError> {
    if bm_length == 0 {
        return Err(KineticsError::NonPositiveLength(0.0));
    }
    let l = bm_length as f64;
    let init = match kind {
        ThreeWayKind::Direct => cfg.bm3_init_a,
        ThreeWayKind::Remote { loop_size } => remote_penalty(*loop_size, cfg) * cfg.bm3_init_a,
    };
    Ok(1.0 / (init + cfg.bm3_step_b * l * l))
}

pub fn k_four_way(bm_length: u32, cfg: &KineticsConfig) -> Result<f64, KineticsError> {
    if bm_length == 0 {
        return Err(KineticsError::NonPositiveLength(0.0));
    }
    let l = bm_length as f64;
    Ok(1.0 / (cfg.bm4_init_a + cfg.bm4_step_b * l * l))
}

/// Rate constant of a move given its mechanism.
pub fn rate_constant(mechanism: &Mechanism, cfg: &KineticsConfig) -> Result<f64, KineticsError> {
    let k = match mechanism {
        Mechanism::Bind21 => Ok(k_bind21(cfg)),
        Mechanism::Bind11 { context } => k_bind11(context, cfg),
        Mechanism::Open { helix_length } => Ok(k_open(*helix_length, cfg)),
        Mechanism::ThreeWay {
            migrated,
            stems_crossed,
            loop_unpaired,
        } => {
            let kind = if *stems_crossed <= 1 {
                ThreeWayKind::Direct
            } else {
                ThreeWayKind::Remote {
                    loop_size: multiloop_size(&[*loop_unpaired], *stems_crossed),
                }
            };
            k_three_way(&kind, *migrated, cfg)
        }
        Mechanism::FourWay { migrated } => k_four_way(*migrated, cfg),
    }?;
    if k.is_finite() && k > 0.0 {
        Ok(k)
    } else {
        Err(KineticsError::NotFinite(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn bind21_default_and_override() {
        let cfg = KineticsConfig::default();
        assert_eq!(k_bind21(&cfg), 1.0e6);
        let cfg = KineticsConfig {
            k_bind_bi: 3e6,
            ..Default::default()
        };
        assert_eq!(k_bind21(&cfg), 3e6);
    }

    #[test]
    fn bind11_values() {
        let cfg = KineticsConfig::default();
        let zip = k_bind11(&LoopContext::Zipping { length: 8 }, &cfg).unwrap();
        assert!(rel(zip, 1.25e7) < 1e-12);
        let hp = k_bind11(&LoopContext::Hairpin { length: 12 }, &cfg).unwrap();
        // 2.54e8 / 17^3 = 51699.57...
        assert!(rel(hp, 2.54e8 / 4913.0) < 1e-12);
        assert!((hp / 5.0e4) < 1.5 && (5.0e4 / hp) < 1.5);
        let ml = k_bind11(
            &LoopContext::Multiloop {
                domains: vec![6, 6],
                stems: 2,
            },
            &cfg,
        )
        .unwrap();
        assert!(rel(ml, 2.54e8 / 22f64.powi(3)) < 1e-12);
        assert!(rel(ml, 2.386e4) < 1e-3);
    }

    #[test]
    fn bulge_matches_two_stem_multiloop() {
        let cfg = KineticsConfig::default();
        let b = k_bind11(&LoopContext::Bulge { y: 3, w: 4 }, &cfg).unwrap();
        let m = k_bind11(
            &LoopContext::Multiloop {
                domains: vec![3, 4],
                stems: 2,
            },
            &cfg,
        )
        .unwrap();
        assert!(rel(b, m) < 1e-15);
    }

    #[test]
    fn nonpositive_lengths_rejected() {
        let cfg = KineticsConfig::default();
        assert!(k_bind11(&LoopContext::Zipping { length: 0 }, &cfg).is_err());
        assert!(k_bind11(&LoopContext::Hairpin { length: 0 }, &cfg).is_err());
        assert!(k_three_way(&ThreeWayKind::Direct, 0, &cfg).is_err());
        assert!(k_four_way(0, &cfg).is_err());
    }

    #[test]
    fn open_values() {
        let cfg = KineticsConfig::default();
        assert!(rel(k_open(5, &cfg), 10f64.powf(-0.2)) < 1e-12);
        assert!(rel(k_open(5, &cfg), 0.6310) < 1e-4);
        assert!(rel(k_open(7, &cfg), 2.089e-3) < 1e-3);
    }

    #[test]
    fn branch_migration_values() {
        let cfg = KineticsConfig::default();
        let d20 = k_three_way(&ThreeWayKind::Direct, 20, &cfg).unwrap();
        assert!(rel(d20, 1.0 / 0.0428) < 1e-12);
        let d1 = k_three_way(&ThreeWayKind::Direct, 1, &cfg).unwrap();
        assert!(rel(d1, 344.8) < 1e-4);
        assert!(rel(k_four_way(1, &cfg).unwrap(), 1.0 / 78.0) < 1e-12);
        assert!(rel(k_four_way(10, &cfg).unwrap(), 1.0 / 177.0) < 1e-12);
    }

    #[test]
    fn remote_with_unit_penalty_equals_direct() {
        let cfg = KineticsConfig::default();
        assert!(rel(remote_penalty(0.0, &cfg), 1.0) < 1e-12);
        let direct = k_three_way(&ThreeWayKind::Direct, 12, &cfg).unwrap();
        let remote = k_three_way(&ThreeWayKind::Remote { loop_size: 0.0 }, 12, &cfg).unwrap();
        assert!(rel(remote, direct) < 1e-12);
        let slower = k_three_way(&ThreeWayKind::Remote { loop_size: 10.0 }, 12, &cfg).unwrap();
        assert!(slower < direct);
    }

    #[test]
    fn monotone_in_length() {
        let cfg = KineticsConfig::default();
        for l in 1..40 {
            assert!(k_four_way(l + 1, &cfg).unwrap() < k_four_way(l, &cfg).unwrap());
            assert!(
                k_three_way(&ThreeWayKind::Direct, l + 1, &cfg).unwrap()
                    < k_three_way(&ThreeWayKind::Direct, l, &cfg).unwrap()
            );
        }
    }

    #[test]
    fn config_validation() {
        assert!(KineticsConfig::default().validate().is_ok());
        let bad = KineticsConfig {
            bm4_init_a: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
