//! Configuration files: the algebra, an order basis, and two embeddings,
//! with every rational carried as a "p/q" string. Ingestion re-derives and
//! verifies everything the computation relies on.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mat::Mat4;
use crate::qform::FFormContext;
use crate::quat::{order_verify, ramified_primes, EmbeddingData, QuatAlgebra, Quaternion};
use crate::ratio::parse_rational;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigOptions {
    #[serde(default = "default_n_max")]
    pub n_max: u32,
    #[serde(default = "default_sign_convention")]
    pub sign_convention: i32,
    #[serde(default = "default_box_slack")]
    pub box_slack: f64,
    #[serde(default = "default_precision_bits")]
    pub precision_bits: u32,
}

fn default_n_max() -> u32 {
    50
}
fn default_sign_convention() -> i32 {
    1
}
fn default_box_slack() -> f64 {
    0.01
}
fn default_precision_bits() -> u32 {
    128
}

impl Default for ConfigOptions {
    fn default() -> Self {
        ConfigOptions {
            n_max: default_n_max(),
            sign_convention: default_sign_convention(),
            box_slack: default_box_slack(),
            precision_bits: default_precision_bits(),
        }
    }
}

/// On-disk form: rationals as strings, the order basis as four rows, each a
/// basis element in (1, i, j, k) coordinates.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Config {
    #[serde(default)]
    pub name: String,
    pub a: String,
    pub b: String,
    pub order_basis: [[String; 4]; 4],
    pub d1: u64,
    pub w1: [String; 4],
    pub d2: u64,
    pub w2: [String; 4],
    #[serde(default)]
    pub options: ConfigOptions,
}

/// Everything derived and verified from a config.
pub struct LoadedConfig {
    pub config: Config,
    pub ctx: FFormContext,
    pub disc: u64,
    pub level: u64,
    pub config_hash: String,
}

/// FNV-1a over the raw file bytes, for reproducible output stamping.
pub fn fnv1a_hex(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

fn quaternion_from_strings(s: &[String; 4]) -> Result<Quaternion> {
    Ok(Quaternion::new(
        parse_rational(&s[0])?,
        parse_rational(&s[1])?,
        parse_rational(&s[2])?,
        parse_rational(&s[3])?,
    ))
}

impl Config {
    pub fn from_str(text: &str) -> Result<Config> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_path(path: &std::path::Path) -> Result<(Config, String)> {
        let bytes = std::fs::read(path)?;
        let cfg = Config::from_str(std::str::from_utf8(&bytes).map_err(|_| {
            Error::InvalidConfig("config file is not utf-8".into())
        })?)?;
        Ok((cfg, fnv1a_hex(&bytes)))
    }

    /// Run all construction-time checks and build the computation context.
    pub fn load(self, hash: String) -> Result<LoadedConfig> {
        let a = parse_rational(&self.a)?;
        let b = parse_rational(&self.b)?;
        let alg = QuatAlgebra::new(a.clone(), b.clone())?;
        if !alg.is_indefinite() {
            return Err(Error::InvalidConfig(
                "algebra is definite: neither structure constant is positive".into(),
            ));
        }
        let (ram, disc) = ramified_primes(&a, &b);
        if ram.is_empty() {
            return Err(Error::InvalidConfig(
                "algebra is split: empty ramification set".into(),
            ));
        }

        let mut cols = [
            [
                crate::ratio::Rational::default(),
                crate::ratio::Rational::default(),
                crate::ratio::Rational::default(),
                crate::ratio::Rational::default(),
            ],
            [
                crate::ratio::Rational::default(),
                crate::ratio::Rational::default(),
                crate::ratio::Rational::default(),
                crate::ratio::Rational::default(),
            ],
            [
                crate::ratio::Rational::default(),
                crate::ratio::Rational::default(),
                crate::ratio::Rational::default(),
                crate::ratio::Rational::default(),
            ],
            [
                crate::ratio::Rational::default(),
                crate::ratio::Rational::default(),
                crate::ratio::Rational::default(),
                crate::ratio::Rational::default(),
            ],
        ];
        for (row, col) in self.order_basis.iter().zip(cols.iter_mut()) {
            for (s, slot) in row.iter().zip(col.iter_mut()) {
                *slot = parse_rational(s)?;
            }
        }
        let order = order_verify(&alg, &Mat4::from_columns(cols))?;

        if order.reduced_disc % disc != 0 {
            return Err(Error::InvalidConfig(format!(
                "reduced discriminant {} is not a multiple of the algebra discriminant {}",
                order.reduced_disc, disc
            )));
        }
        let level = order.reduced_disc / disc;
        if num_integer::gcd(level, disc) != 1 {
            // A genuine Eichler order has level coprime to the discriminant;
            // the ring checks cannot see the difference, so flag it early.
            return Err(Error::InvalidConfig(format!(
                "level {level} shares a factor with the discriminant {disc}"
            )));
        }

        if num_integer::gcd(self.d1, self.d2) != 1 {
            return Err(Error::InvalidConfig(format!(
                "D1 = {} and D2 = {} are not coprime",
                self.d1, self.d2
            )));
        }
        let w1 = quaternion_from_strings(&self.w1)?;
        let w2 = quaternion_from_strings(&self.w2)?;
        let emb1 = EmbeddingData::new(&alg, &order, self.d1, w1, None)?;
        let emb2 = EmbeddingData::new(&alg, &order, self.d2, w2, None)?;

        let opts = &self.options;
        if !(opts.box_slack >= 0.0 && opts.box_slack < 1.0) {
            return Err(Error::InvalidConfig("box_slack must be in [0, 1)".into()));
        }
        let precision_bits = match std::env::var("PRECISION_BITS") {
            Ok(v) => v
                .parse::<u32>()
                .map_err(|_| Error::InvalidConfig("PRECISION_BITS must be an integer".into()))?,
            Err(_) => opts.precision_bits,
        };
        let ctx = FFormContext::new(
            alg,
            order,
            emb1,
            emb2,
            opts.sign_convention,
            opts.box_slack,
            precision_bits,
        )?;
        Ok(LoadedConfig {
            config: self,
            ctx,
            disc,
            level,
            config_hash: hash,
        })
    }
}

/// Read and fully validate a config file.
pub fn load_path(path: &std::path::Path) -> Result<LoadedConfig> {
    let (cfg, hash) = Config::from_path(path)?;
    cfg.load(hash)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn disc14_json() -> String {
        r#"{
            "name": "disc14-d3d5",
            "a": "-1", "b": "7",
            "order_basis": [
                ["1", "0", "0", "0"],
                ["0", "1", "0", "0"],
                ["0", "0", "1", "0"],
                ["1/2", "1/2", "1/2", "1/2"]
            ],
            "d1": 3, "w1": ["0", "2", "1", "0"],
            "d2": 5, "w2": ["0", "3", "1", "1"]
        }"#
        .to_string()
    }

    #[test]
    fn loads_and_verifies() {
        let cfg = Config::from_str(&disc14_json()).unwrap();
        let loaded = cfg.load("test".into()).unwrap();
        assert_eq!(loaded.disc, 14);
        assert_eq!(loaded.level, 1);
        assert_eq!(loaded.ctx.emb1.f, 1);
        assert_eq!(loaded.ctx.emb2.f, 1);
        assert_eq!(loaded.ctx.order.reduced_disc, 14);
    }

    #[test]
    fn rejects_bad_embedding_square() {
        let text = disc14_json().replace("[\"0\", \"2\", \"1\", \"0\"]", "[\"0\", \"1\", \"0\", \"0\"]");
        let cfg = Config::from_str(&text).unwrap();
        assert!(matches!(
            cfg.load("t".into()),
            Err(Error::EmbeddingSquareMismatch { .. })
        ));
    }

    #[test]
    fn rejects_non_coprime_radicands() {
        let text = disc14_json().replace("\"d2\": 5", "\"d2\": 6");
        let cfg = Config::from_str(&text).unwrap();
        // w2^2 = 5 != 6 would also fail, but the coprimality check fires first
        assert!(cfg.load("t".into()).is_err());
    }

    #[test]
    fn rejects_definite_algebra() {
        let text = disc14_json().replace("\"b\": \"7\"", "\"b\": \"-7\"");
        let cfg = Config::from_str(&text).unwrap();
        assert!(matches!(cfg.load("t".into()), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn rejects_split_algebra() {
        // (1, b) is split everywhere: empty ramification set
        let text = disc14_json().replace("\"a\": \"-1\"", "\"a\": \"1\"");
        let cfg = Config::from_str(&text).unwrap();
        match cfg.load("t".into()) {
            Err(Error::InvalidConfig(msg)) => assert!(msg.contains("split")),
            Err(other) => panic!("expected split rejection, got {other}"),
            Ok(_) => panic!("split algebra must be rejected"),
        }
    }

    #[test]
    fn rejects_non_squarefree_radicand() {
        let text = disc14_json()
            .replace("\"d1\": 3", "\"d1\": 12")
            .replace("[\"0\", \"2\", \"1\", \"0\"]", "[\"0\", \"4\", \"2\", \"0\"]");
        let cfg = Config::from_str(&text).unwrap();
        assert!(matches!(cfg.load("t".into()), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn hash_is_stable() {
        assert_eq!(fnv1a_hex(b"abc"), fnv1a_hex(b"abc"));
        assert_ne!(fnv1a_hex(b"abc"), fnv1a_hex(b"abd"));
    }
}
