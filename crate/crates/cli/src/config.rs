use crate::Failure;
use clap::Args;
use ringcodes::construct::{GroupSpec, RingKind};
use serde::Deserialize;
use std::path::{Path, PathBuf};

/// Keys accepted both as flags and in a `--config` TOML file; flags win.
#[derive(Args, Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecArgs {
    /// Ring kind: dual or gr
    #[arg(long)]
    pub ring: Option<String>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub s: Option<u32>,
    #[arg(long)]
    pub e: Option<u64>,
    /// Basis of V, comma-separated digit strings; "" is the zero subspace
    #[arg(long = "V")]
    #[serde(rename = "V", alias = "v")]
    pub v: Option<String>,
    /// Worker threads for enumeration
    #[arg(long)]
    pub workers: Option<usize>,
    /// Report path (standard output if absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Deserialize, Default, Debug)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(flatten)]
    pub spec: SpecArgs,
    pub suite: Option<String>,
    pub force_enumerate: Option<bool>,
    pub max_p: Option<u32>,
    pub max_m: Option<u32>,
    pub max_s: Option<u32>,
    pub max_e: Option<u64>,
    pub max_l: Option<u32>,
    pub gen_matrix: Option<PathBuf>,
    pub gray_words: Option<PathBuf>,
}

pub fn load(path: Option<&Path>) -> Result<FileConfig, Failure> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| Failure::invalid(format!("bad config {}: {e}", path.display())))
}

impl SpecArgs {
    pub fn merged(&self, file: &SpecArgs) -> SpecArgs {
        SpecArgs {
            ring: self.ring.clone().or_else(|| file.ring.clone()),
            p: self.p.or(file.p),
            m: self.m.or(file.m),
            s: self.s.or(file.s),
            e: self.e.or(file.e),
            v: self.v.clone().or_else(|| file.v.clone()),
            workers: self.workers.or(file.workers),
            out: self.out.clone().or_else(|| file.out.clone()),
        }
    }

    pub fn kind(&self) -> Result<Option<RingKind>, Failure> {
        self.ring.as_deref().map(|r| r.parse().map_err(Failure::from)).transpose()
    }

    fn require<T: Copy>(v: Option<T>, name: &str) -> Result<T, Failure> {
        v.ok_or_else(|| Failure::invalid(format!("missing --{name}")))
    }

    pub fn pms(&self) -> Result<(u32, u32, u32), Failure> {
        Ok((Self::require(self.p, "p")?, Self::require(self.m, "m")?, Self::require(self.s, "s")?))
    }

    /// The full spec; `e` defaults to 1 and `V` to the zero subspace.
    pub fn spec(&self) -> Result<GroupSpec, Failure> {
        let kind = self.kind()?.ok_or_else(|| Failure::invalid("missing --ring"))?;
        let (p, m, s) = self.pms()?;
        Ok(GroupSpec::parse(kind, p, m, s, self.e.unwrap_or(1), self.v.as_deref().unwrap_or(""))?)
    }
}
