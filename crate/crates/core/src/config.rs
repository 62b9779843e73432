//! Group configuration files and the bundled groups.
//!
//! The JSON schema: `generators` (names), `cartan` (square integer matrix),
//! `delta` (rationals as strings "n" or "n/d", optional), and `orientation`
//! (directed edges as [source, target] pairs). Alternatively `b_matrix`
//! replaces `cartan` + `orientation`.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cartan::{from_b_matrix, CartanSpec, CoxeterData, Orientation};
use crate::error::{Error, Result};
use crate::Rational;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConfigFile {
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cartan: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_matrix: Option<Vec<Vec<i64>>>,
}

/// A parsed config together with its raw-text digest.
pub struct LoadedConfig {
    pub data: CoxeterData,
    pub ori: Orientation,
    pub digest: String,
    pub source: String,
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim())
        .map_err(|e| Error::Config(format!("bad rational {s:?}: {e}")))
}

pub fn parse_config(text: &str) -> Result<(CoxeterData, Orientation)> {
    let file: ConfigFile =
        serde_json::from_str(text).map_err(|e| Error::Config(format!("bad JSON: {e}")))?;
    build(&file)
}

fn build(file: &ConfigFile) -> Result<(CoxeterData, Orientation)> {
    let delta = match &file.delta {
        Some(d) => Some(d.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?),
        None => None,
    };
    match (&file.cartan, &file.b_matrix) {
        (Some(_), Some(_)) => Err(Error::Config(
            "give either \"cartan\"+\"orientation\" or \"b_matrix\", not both".into(),
        )),
        (None, None) => Err(Error::Config("missing \"cartan\" or \"b_matrix\"".into())),
        (Some(cartan), None) => {
            let spec = CartanSpec {
                generators: file.generators.clone(),
                matrix: cartan.clone(),
                delta,
            };
            let data = CoxeterData::validate(&spec)?;
            let Some(pairs) = &file.orientation else {
                return Err(Error::Config("missing \"orientation\"".into()));
            };
            let arrows = pairs
                .iter()
                .map(|(s, t)| Ok((data.index_of(s)?, data.index_of(t)?)))
                .collect::<Result<Vec<_>>>()?;
            let ori = Orientation::new(&data, &arrows)?;
            Ok((data, ori))
        }
        (None, Some(b)) => {
            if file.orientation.is_some() {
                return Err(Error::Config(
                    "\"orientation\" is derived from \"b_matrix\"; do not give both".into(),
                ));
            }
            let (spec, ori) = from_b_matrix(file.generators.clone(), b, delta.as_deref())?;
            let data = CoxeterData::validate(&spec)?;
            Ok((data, ori))
        }
    }
}

const BUNDLED: &[(&str, &str)] = &[
    ("a2", include_str!("../configs/a2.json")),
    ("a3", include_str!("../configs/a3.json")),
    ("b3", include_str!("../configs/b3.json")),
    ("affine-a2-cyclic", include_str!("../configs/affine-a2-cyclic.json")),
    ("hyperbolic-b3-mutation", include_str!("../configs/hyperbolic-b3-mutation.json")),
    ("dihedral-infinite", include_str!("../configs/dihedral-infinite.json")),
];

pub fn bundled_names() -> Vec<&'static str> {
    BUNDLED.iter().map(|(n, _)| *n).collect()
}

pub fn bundled_text(name: &str) -> Option<&'static str> {
    BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
}

pub fn bundled_group(name: &str) -> Result<(CoxeterData, Orientation)> {
    let text = bundled_text(name)
        .ok_or_else(|| Error::Config(format!("unknown bundled config {name:?}")))?;
    parse_config(text)
}

pub fn digest_of(text: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    let mut out = String::with_capacity(64);
    for byte in hasher.finalize() {
        let _ = write!(out, "{byte:02x}");
    }
    out
}

/// Resolve a `--config` argument: an existing file path wins; otherwise the
/// name (with an optional .json suffix stripped) is looked up among the
/// bundled configs.
pub fn load_config(arg: &str) -> Result<LoadedConfig> {
    let path = Path::new(arg);
    let (text, source): (String, String) = if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {arg}: {e}")))?;
        (text, arg.to_string())
    } else {
        let name = arg.strip_suffix(".json").unwrap_or(arg);
        match bundled_text(name) {
            Some(text) => (text.to_string(), format!("bundled:{name}")),
            None => {
                return Err(Error::Config(format!(
                    "{arg} is neither a file nor a bundled config (available: {})",
                    bundled_names().join(", ")
                )))
            }
        }
    };
    let digest = digest_of(&text);
    let (data, ori) = parse_config(&text)?;
    Ok(LoadedConfig { data, ori, digest, source })
}

/// The rank d+2 counterexample family: generators p, q1..qd, r, where the
/// q's commute pairwise, every other pair has Cartan entry -1, and the
/// precedence is cyclic p < q_i < r < p. Returns the word p q1 ... qd r.
pub fn s5_family(d: usize) -> Result<(CoxeterData, Orientation, Vec<usize>)> {
    if d < 1 {
        return Err(Error::Config("family parameter d must be at least 1".into()));
    }
    if d + 2 > 12 {
        return Err(Error::Config("family parameter d too large".into()));
    }
    let n = d + 2;
    let mut generators = vec!["p".to_string()];
    for i in 1..=d {
        generators.push(format!("q{i}"));
    }
    generators.push("r".to_string());
    let q_range = 1..=d;
    let matrix: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        2
                    } else if q_range.contains(&i) && q_range.contains(&j) {
                        0
                    } else {
                        -1
                    }
                })
                .collect()
        })
        .collect();
    let spec = CartanSpec { generators, matrix, delta: None };
    let data = CoxeterData::validate(&spec)?;
    // p precedes each q_i, each q_i precedes r, r precedes p; arrows point
    // from the later generator to the earlier one.
    let mut arrows = Vec::new();
    let r = n - 1;
    for i in 1..=d {
        arrows.push((i, 0));
        arrows.push((r, i));
    }
    arrows.push((0, r));
    let ori = Orientation::new(&data, &arrows)?;
    let mut word: Vec<usize> = (0..=d).collect();
    word.push(r);
    Ok((data, ori, word))
}

/// Rank 3 group with all three bond orders infinite: symmetric Cartan matrix
/// with off-diagonal entries -X, -Y, -Z (each at least 2), cyclic precedence
/// p < q < r < p, and the word p q r.
pub fn s5_remark(x: i64, y: i64, z: i64) -> Result<(CoxeterData, Orientation, Vec<usize>)> {
    if x < 2 || y < 2 || z < 2 {
        return Err(Error::Config("X, Y, Z must each be at least 2".into()));
    }
    let spec = CartanSpec {
        generators: vec!["p".into(), "q".into(), "r".into()],
        matrix: vec![vec![2, -x, -y], vec![-x, 2, -z], vec![-y, -z, 2]],
        delta: None,
    };
    let data = CoxeterData::validate(&spec)?;
    let ori = Orientation::new(&data, &[(1, 0), (2, 1), (0, 2)])?;
    Ok((data, ori, vec![0, 1, 2]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::GenSet;

    #[test]
    fn bundled_configs_all_load() {
        for name in bundled_names() {
            let (data, ori) = bundled_group(name).unwrap();
            assert_eq!(ori.rank(), data.rank());
        }
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("2").unwrap(), Rational::from_integer(2));
        assert_eq!(parse_rational("3/2").unwrap(), Rational::new(3, 2));
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn b_matrix_config() {
        let text = r#"{
            "generators": ["p", "q", "r"],
            "b_matrix": [[0, 1, -1], [-1, 0, 1], [2, -2, 0]]
        }"#;
        let (data, ori) = parse_config(text).unwrap();
        let (bundled, bundled_ori) = bundled_group("hyperbolic-b3-mutation").unwrap();
        assert_eq!(data.cartan_matrix(), bundled.cartan_matrix());
        assert_eq!(data.deltas(), bundled.deltas());
        assert_eq!(ori.arrows(), bundled_ori.arrows());
    }

    #[test]
    fn config_errors() {
        assert!(matches!(
            parse_config("{"),
            Err(Error::Config(_))
        ));
        let missing_ori = r#"{"generators": ["a", "b"], "cartan": [[2, -1], [-1, 2]]}"#;
        assert!(parse_config(missing_ori).is_err());
        let unknown_name = r#"{
            "generators": ["a", "b"],
            "cartan": [[2, -1], [-1, 2]],
            "orientation": [["a", "zz"]]
        }"#;
        assert!(matches!(
            parse_config(unknown_name),
            Err(Error::UnknownGenerator(_))
        ));
    }

    #[test]
    fn family_orientation_is_cyclic_and_word_matches() {
        for d in 1..=3 {
            let (data, ori, word) = s5_family(d).unwrap();
            assert_eq!(data.rank(), d + 2);
            assert_eq!(word.len(), d + 2);
            assert!(!ori.is_acyclic(data.full_set()));
            // Dropping r makes the support acyclic with p first.
            let j = GenSet::from_indices(0..=d);
            assert_eq!(ori.coxeter_word(j).unwrap(), (0..=d).collect::<Vec<_>>());
        }
        assert!(s5_family(0).is_err());
    }

    #[test]
    fn remark_group_builds() {
        let (data, ori, word) = s5_remark(2, 2, 2).unwrap();
        assert_eq!(word, vec![0, 1, 2]);
        assert!(!ori.is_acyclic(data.full_set()));
        assert!(s5_remark(1, 2, 2).is_err());
    }

    #[test]
    fn digests_are_stable() {
        let a = digest_of("hello");
        let b = digest_of("hello");
        assert_eq!(a, b);
        assert_eq!(a.len(), 64);
    }
}
