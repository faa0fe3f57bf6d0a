//! Run configuration: a TOML or JSON file, overlaid by command-line flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use turanlab::conditions::FoxWrightParams;
use turanlab::exact::rational::serde_pq;
use turanlab::exact::{parse_rational, Rational};
use turanlab::families::{FamilySpec, SequenceSpec};
use turanlab::harness::{ConjectureId, Expected, Theorem};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Turanian,
    Scan,
    Verify,
    Conditions,
    Reproduce,
    Fuzz,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Md,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// The identity ledger.
    Identities,
    /// Sampled one-sign-change implication for T_{k,m}.
    Lemma,
    /// Partial sums against closed forms.
    Closedform,
    /// Evidence scans for the coefficient-sign theorems.
    Theorems,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Case {
    /// δ₂ of the r = 3 series at the two printed μ.
    RemarkR3,
    /// The above plus the sign search for F_4.
    Counterexamples,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypTermCheck {
    #[serde(with = "serde_pq::vec")]
    pub a: Vec<Rational>,
    #[serde(with = "serde_pq::vec")]
    pub b: Vec<Rational>,
    pub r: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<CommandKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<SequenceSpec>,
    #[serde(default, with = "serde_pq::option", skip_serializing_if = "Option::is_none")]
    pub mu: Option<Rational>,
    #[serde(default, with = "serde_pq::option", skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Rational>,
    #[serde(default, with = "serde_pq::option", skip_serializing_if = "Option::is_none")]
    pub beta: Option<Rational>,
    #[serde(default, with = "serde_pq::vec", skip_serializing_if = "Vec::is_empty")]
    pub mu_grid: Vec<Rational>,
    #[serde(default, with = "serde_pq::vec", skip_serializing_if = "Vec::is_empty")]
    pub alpha_grid: Vec<Rational>,
    #[serde(default, with = "serde_pq::vec", skip_serializing_if = "Vec::is_empty")]
    pub beta_grid: Vec<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strict_from: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem: Option<Theorem>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<Suite>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<Case>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjecture: Option<ConjectureId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub foxwright: Option<FoxWrightParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyp_term: Option<HypTermCheck>,
}

/// Parse config text; JSON when `json` is set, TOML otherwise. Errors name
/// the offending field path.
pub fn parse_config(text: &str, json: bool) -> Result<RunConfig, CliError> {
    let value: serde_json::Value = if json {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?
    } else {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?
    };
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        CliError::Config(format!("at `{path}`: {}", e.into_inner()))
    })
}

pub fn load_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
    parse_config(&text, json)
}

#[cfg(test)]
pub fn to_toml(config: &RunConfig) -> Result<String, CliError> {
    toml::to_string(config).map_err(|e| CliError::Config(e.to_string()))
}

/// `KS`, `G2`, `F3`, `GammaSeries1`, `PochReciprocal2`, `H`, `Y`, `YRecip`,
/// `YGamma`, with an optional `[k=p/q]` suffix for the k-Pochhammer variant.
pub fn parse_family(text: &str) -> Result<FamilySpec, CliError> {
    let bad = |why: &str| CliError::Config(format!("family `{text}`: {why}"));
    let t = text.trim();
    if let Some((base, rest)) = t.split_once('[') {
        let k = rest
            .strip_suffix(']')
            .and_then(|r| r.trim().strip_prefix("k="))
            .ok_or_else(|| bad("expected a `[k=p/q]` suffix"))?;
        let k = parse_rational(k).map_err(|e| bad(&e.to_string()))?;
        return Ok(FamilySpec::KScaled {
            base: Box::new(parse_family(base)?),
            k,
        });
    }
    let with_r = |prefix: &str| -> Option<Result<usize, CliError>> {
        t.strip_prefix(prefix)
            .filter(|r| !r.is_empty() && r.chars().all(|c| c.is_ascii_digit()))
            .map(|r| r.parse().map_err(|_| bad("r is not an integer")))
    };
    let fam = match t {
        "KS" => FamilySpec::KS,
        "H" => FamilySpec::H,
        "Y" => FamilySpec::Y,
        "YRecip" => FamilySpec::YRecip,
        "YGamma" => FamilySpec::YGamma,
        _ => {
            if let Some(r) = with_r("GammaSeries") {
                FamilySpec::GammaSeries { r: r? }
            } else if let Some(r) = with_r("PochReciprocal") {
                FamilySpec::PochReciprocal { r: r? }
            } else if let Some(r) = with_r("G") {
                FamilySpec::G { r: r? }
            } else if let Some(r) = with_r("F") {
                FamilySpec::F { r: r? }
            } else {
                return Err(bad("unknown family"));
            }
        }
    };
    fam.validate().map_err(|e| bad(&e.to_string()))?;
    Ok(fam)
}

fn rational_list(text: &str) -> Result<Vec<Rational>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| parse_rational(s).map_err(|e| CliError::Config(e.to_string())))
        .collect()
}

/// `constant:c`, `factorial`, `factorial-reciprocal`, `geometric:r`,
/// `list:v0,v1,...`, `hyp:a1,a2;b1,b2`.
pub fn parse_sequence(text: &str) -> Result<SequenceSpec, CliError> {
    let bad = |why: String| CliError::Config(format!("sequence `{text}`: {why}"));
    let (kind, arg) = text.trim().split_once(':').unwrap_or((text.trim(), ""));
    let one = |arg: &str| parse_rational(arg).map_err(|e| bad(e.to_string()));
    let seq = match kind {
        "constant" => SequenceSpec::Constant { c: one(arg)? },
        "factorial" => SequenceSpec::Factorial,
        "factorial-reciprocal" => SequenceSpec::FactorialReciprocal,
        "geometric" => SequenceSpec::Geometric { ratio: one(arg)? },
        "list" => SequenceSpec::List {
            values: rational_list(arg)?,
        },
        "hyp" => {
            let (a, b) = arg.split_once(';').ok_or_else(|| bad("expected `a…;b…`".into()))?;
            SequenceSpec::HypTermRatio {
                a: rational_list(a)?,
                b: rational_list(b)?,
            }
        }
        _ => return Err(bad("unknown kind".into())),
    };
    seq.validate().map_err(|e| bad(e.to_string()))?;
    Ok(seq)
}

pub fn parse_grid(text: &str) -> Result<Vec<Rational>, CliError> {
    rational_list(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use turanlab::exact::{int, rat};

    #[test]
    fn family_names() {
        assert_eq!(parse_family("G2").unwrap(), FamilySpec::G { r: 2 });
        assert_eq!(parse_family("PochReciprocal3").unwrap(), FamilySpec::PochReciprocal { r: 3 });
        assert_eq!(
            parse_family("GammaSeries1[k=3/2]").unwrap(),
            FamilySpec::KScaled {
                base: Box::new(FamilySpec::GammaSeries { r: 1 }),
                k: rat(3, 2)
            }
        );
        assert!(parse_family("G0").is_err());
        assert!(parse_family("Q").is_err());
        assert!(parse_family("G").is_err());
    }

    #[test]
    fn sequence_shorthand() {
        assert_eq!(parse_sequence("constant:1").unwrap(), SequenceSpec::constant_one());
        assert_eq!(
            parse_sequence("hyp:1,1;3/2").unwrap(),
            SequenceSpec::HypTermRatio {
                a: vec![int(1), int(1)],
                b: vec![rat(3, 2)]
            }
        );
        assert!(parse_sequence("constant:-1").is_err());
        assert!(parse_sequence("wibble").is_err());
    }

    #[test]
    fn unknown_keys_rejected_with_path() {
        let err = parse_config("command = \"scan\"\n[output]\nformat = \"json\"\ncolour = 1\n", false)
            .unwrap_err();
        assert!(err.to_string().contains("output"), "{err}");
        let err = parse_config("{\"command\": \"scan\", \"mu_grid\": [\"1/0\"]}", true).unwrap_err();
        assert!(err.to_string().contains("mu_grid"), "{err}");
    }

    #[test]
    fn toml_round_trip() {
        let text = r#"
command = "scan"
order = 12
mu_grid = ["1/2", 1, "7/2"]
alpha_grid = [1]
beta_grid = ["2/3"]
expected = "NonPositive"
strict_from = 2

[family]
id = "Y"

[sequence]
kind = "Geometric"
ratio = "3"

[output]
format = "md"
"#;
        let cfg = parse_config(text, false).unwrap();
        assert_eq!(cfg.mu_grid, vec![rat(1, 2), int(1), rat(7, 2)]);
        let again = parse_config(&to_toml(&cfg).unwrap(), false).unwrap();
        assert_eq!(cfg, again);
        let json = serde_json::to_string(&cfg).unwrap();
        assert_eq!(parse_config(&json, true).unwrap(), cfg);
    }
}
