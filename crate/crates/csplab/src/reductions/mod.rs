//! Constraint-to-example constructions and their witness builders.
//!
//! Every reduction here maps a CSP instance (or a formula) to a
//! [`LabeledSample`] plus, for planted inputs, an explicit hypothesis that
//! realizes the sample. Randomness is never consumed: the constructions are
//! deterministic, so a random instance law pushes forward to a random
//! sample law untouched.

mod automaton;
mod dnf;
mod halfspace;
mod inter4;
mod parity;
mod threesat;

pub use automaton::{dnf_to_automaton, Automaton, AUTOMATON_CLAUSE_BUDGET};
pub use dnf::{
    dnf_sample, dnf_shift_alternate, phi_u_formula, psi_decode, psi_embed, psi_index, DnfFormula,
};
pub use halfspace::{halfspace_sample, tri_to_pm, weights_lift, Halfspace, Intersection4};
pub use inter4::{inter4_sample, inter4_witness};
pub use parity::{parity_sample, ParityHypothesis};
pub use threesat::{extend_with_true_blocks, threesat_to_tkl, TklReduction};

use crate::instance::InstanceError;
use crate::pred::PredError;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReductionError {
    #[error("expected predicate family {expected}, found {found:?}")]
    WrongPredicate {
        expected: &'static str,
        found: Option<String>,
    },
    #[error("sample vector at example {idx} is outside {domain:?}")]
    OutsideDomain { idx: usize, domain: Domain },
    #[error("this construction needs an even constraint count, got {0}")]
    OddConstraintCount(usize),
    #[error("shift vector has length {got}, predicate arity is {expected}")]
    ShiftLength { expected: usize, got: usize },
    #[error("target dimension {target} is below the current dimension {current}")]
    PadShrinks { target: usize, current: usize },
    #[error("domain mismatch: expected {expected:?}, got {found:?}")]
    DomainMismatch { expected: Domain, found: Domain },
    #[error("clause count {0} exceeds the automaton state budget (2^c states per layer)")]
    ClauseBudget(usize),
    #[error("dnf formula invalid: {0}")]
    BadFormula(String),
    #[error("threshold parameters need 1 <= l <= k-2, got k={k} l={l}")]
    BadThresholdParams { k: usize, l: usize },
    #[error("halfspace needs at least one nonzero weight")]
    ZeroHalfspace,
    #[error("format error: {0}")]
    Format(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Pred(#[from] PredError),
}

/// Example domains. `Pm` is `{-1,+1}^d`, `Tri` is `{-1,0,+1}^d`, and `Bin`
/// is `{0,1}^d` — the 0/1-convention domain the parity construction lives
/// in (values stored as the integers 0 and 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Pm(usize),
    Tri(usize),
    Bin(usize),
}

impl Domain {
    pub fn dim(&self) -> usize {
        match *self {
            Domain::Pm(d) | Domain::Tri(d) | Domain::Bin(d) => d,
        }
    }

    pub fn contains(&self, v: &[i8]) -> bool {
        if v.len() != self.dim() {
            return false;
        }
        match self {
            Domain::Pm(_) => v.iter().all(|&x| x == 1 || x == -1),
            Domain::Tri(_) => v.iter().all(|&x| (-1..=1).contains(&x)),
            Domain::Bin(_) => v.iter().all(|&x| x == 0 || x == 1),
        }
    }

    fn tag(&self) -> &'static str {
        match self {
            Domain::Pm(_) => "pm",
            Domain::Tri(_) => "tri",
            Domain::Bin(_) => "bin",
        }
    }

    fn from_tag(tag: &str, d: usize) -> Result<Domain, ReductionError> {
        match tag {
            "pm" => Ok(Domain::Pm(d)),
            "tri" => Ok(Domain::Tri(d)),
            "bin" => Ok(Domain::Bin(d)),
            _ => Err(ReductionError::Format(format!("unknown domain {tag:?}"))),
        }
    }
}

/// An ordered sequence of labeled example vectors over a declared domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledSample {
    domain: Domain,
    examples: Vec<(Vec<i8>, bool)>,
}

impl LabeledSample {
    pub fn new(
        domain: Domain,
        examples: Vec<(Vec<i8>, bool)>,
    ) -> Result<LabeledSample, ReductionError> {
        for (idx, (v, _)) in examples.iter().enumerate() {
            if !domain.contains(v) {
                return Err(ReductionError::OutsideDomain { idx, domain });
            }
        }
        Ok(LabeledSample { domain, examples })
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }

    pub fn examples(&self) -> &[(Vec<i8>, bool)] {
        &self.examples
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[i8], bool)> {
        self.examples.iter().map(|(v, y)| (v.as_slice(), *y))
    }

    /// Text form: a JSON header line `{"domain":..,"d":..,"m":..}`, then one
    /// `label v_1 ... v_d` line per example.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{{\"domain\":\"{}\",\"d\":{},\"m\":{}}}\n",
            self.domain.tag(),
            self.domain.dim(),
            self.examples.len()
        );
        for (v, y) in &self.examples {
            out.push_str(if *y { "1" } else { "0" });
            for x in v {
                out.push(' ');
                out.push_str(&x.to_string());
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<LabeledSample, ReductionError> {
        let fmt = |msg: String| ReductionError::Format(msg);
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| fmt("missing header".into()))?;
        #[derive(Deserialize)]
        struct Header {
            domain: String,
            d: usize,
            m: usize,
        }
        let h: Header =
            serde_json::from_str(header).map_err(|e| fmt(format!("bad header: {e}")))?;
        let domain = Domain::from_tag(&h.domain, h.d)?;
        let mut examples = Vec::with_capacity(h.m);
        for line in lines.take(h.m) {
            let mut toks = line.split_whitespace();
            let label = match toks.next() {
                Some("1") => true,
                Some("0") => false,
                other => return Err(fmt(format!("bad label {other:?}"))),
            };
            let v: Vec<i8> = toks
                .map(|t| t.parse::<i8>().map_err(|_| fmt(format!("bad value {t:?}"))))
                .collect::<Result<_, _>>()?;
            examples.push((v, label));
        }
        if examples.len() != h.m {
            return Err(fmt(format!(
                "header claims {} examples, found {}",
                h.m,
                examples.len()
            )));
        }
        LabeledSample::new(domain, examples)
    }

    /// Binary form with 2-bit value packing: magic `CSPS`, version, domain
    /// tag, dims, then per example one label byte plus `ceil(d/4)` packed
    /// bytes (`00` = 0, `01` = +1, `10` = -1).
    pub fn to_binary(&self) -> Vec<u8> {
        let d = self.domain.dim();
        let mut out = Vec::with_capacity(16 + self.examples.len() * (1 + d.div_ceil(4)));
        out.extend_from_slice(b"CSPS");
        out.push(1);
        out.push(match self.domain {
            Domain::Pm(_) => 0,
            Domain::Tri(_) => 1,
            Domain::Bin(_) => 2,
        });
        out.extend_from_slice(&(d as u32).to_le_bytes());
        out.extend_from_slice(&(self.examples.len() as u32).to_le_bytes());
        for (v, y) in &self.examples {
            out.push(*y as u8);
            let mut byte = 0u8;
            for (i, &x) in v.iter().enumerate() {
                let code = match x {
                    0 => 0u8,
                    1 => 1,
                    -1 => 2,
                    _ => unreachable!("validated on construction"),
                };
                byte |= code << ((i % 4) * 2);
                if i % 4 == 3 {
                    out.push(byte);
                    byte = 0;
                }
            }
            if !d.is_multiple_of(4) {
                out.push(byte);
            }
        }
        out
    }

    pub fn from_binary(data: &[u8]) -> Result<LabeledSample, ReductionError> {
        let fmt = |msg: &str| ReductionError::Format(msg.to_string());
        if data.len() < 14 || &data[0..4] != b"CSPS" || data[4] != 1 {
            return Err(fmt("bad magic or version"));
        }
        let d = u32::from_le_bytes(data[6..10].try_into().unwrap()) as usize;
        let m = u32::from_le_bytes(data[10..14].try_into().unwrap()) as usize;
        let domain = match data[5] {
            0 => Domain::Pm(d),
            1 => Domain::Tri(d),
            2 => Domain::Bin(d),
            _ => return Err(fmt("bad domain tag")),
        };
        let stride = 1 + d.div_ceil(4);
        if data.len() != 14 + m * stride {
            return Err(fmt("truncated payload"));
        }
        let mut examples = Vec::with_capacity(m);
        for e in 0..m {
            let base = 14 + e * stride;
            let label = match data[base] {
                0 => false,
                1 => true,
                _ => return Err(fmt("bad label byte")),
            };
            let mut v = Vec::with_capacity(d);
            for i in 0..d {
                let byte = data[base + 1 + i / 4];
                let code = (byte >> ((i % 4) * 2)) & 3;
                v.push(match code {
                    0 => 0i8,
                    1 => 1,
                    2 => -1,
                    _ => return Err(fmt("bad value code")),
                });
            }
            examples.push((v, label));
        }
        LabeledSample::new(domain, examples)
    }
}

/// Pad a `{-1,+1}^n` sample with constant `+1` coordinates up to
/// `target_dim`. Any realizing formula over the original coordinates
/// remains realizing verbatim.
pub fn pad_embed(s: &LabeledSample, target_dim: usize) -> Result<LabeledSample, ReductionError> {
    let Domain::Pm(d) = s.domain() else {
        return Err(ReductionError::DomainMismatch {
            expected: Domain::Pm(s.domain().dim()),
            found: s.domain(),
        });
    };
    if target_dim < d {
        return Err(ReductionError::PadShrinks {
            target: target_dim,
            current: d,
        });
    }
    let examples = s
        .examples
        .iter()
        .map(|(v, y)| {
            let mut w = v.clone();
            w.resize(target_dim, 1);
            (w, *y)
        })
        .collect();
    LabeledSample::new(Domain::Pm(target_dim), examples)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy_sample() -> LabeledSample {
        LabeledSample::new(
            Domain::Tri(3),
            vec![
                (vec![1, 0, -1], true),
                (vec![-1, 0, 1], false),
                (vec![0, 0, 0], true),
            ],
        )
        .unwrap()
    }

    #[test]
    fn domain_membership() {
        assert!(Domain::Pm(2).contains(&[1, -1]));
        assert!(!Domain::Pm(2).contains(&[1, 0]));
        assert!(Domain::Tri(2).contains(&[0, -1]));
        assert!(Domain::Bin(2).contains(&[0, 1]));
        assert!(!Domain::Bin(2).contains(&[-1, 1]));
        assert!(!Domain::Pm(2).contains(&[1, 1, 1]));
    }

    #[test]
    fn text_round_trip() {
        let s = toy_sample();
        let text = s.to_text();
        assert!(text.starts_with("{\"domain\":\"tri\",\"d\":3,\"m\":3}\n1 1 0 -1\n"));
        assert_eq!(LabeledSample::from_text(&text).unwrap(), s);
    }

    #[test]
    fn binary_round_trip() {
        let s = toy_sample();
        assert_eq!(LabeledSample::from_binary(&s.to_binary()).unwrap(), s);
    }

    #[test]
    fn pad_embed_behaviour() {
        let s = LabeledSample::new(
            Domain::Pm(2),
            vec![(vec![1, -1], true), (vec![-1, -1], false)],
        )
        .unwrap();
        // identity at the current dimension
        assert_eq!(pad_embed(&s, 2).unwrap(), s);
        let padded = pad_embed(&s, 4).unwrap();
        assert_eq!(padded.examples()[0].0, vec![1, -1, 1, 1]);
        assert!(!padded.examples()[1].1);
        assert!(matches!(
            pad_embed(&s, 1),
            Err(ReductionError::PadShrinks { .. })
        ));
        assert!(matches!(
            pad_embed(&toy_sample(), 5),
            Err(ReductionError::DomainMismatch { .. })
        ));
    }
}
