//! Run configuration: an optional TOML file overlaid by command-line flags.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Table,
}

/// Settings as read from a config file. Relative paths are resolved against
/// the directory of that file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub lexicon: Option<PathBuf>,
    pub stoplist: Option<PathBuf>,
    pub gazetteer: Option<PathBuf>,
    pub profile: Option<PathBuf>,
    pub spec: Option<PathBuf>,
    pub rules: Option<PathBuf>,
    pub morph: Option<bool>,
    pub umlauts: Option<bool>,
    pub depth: Option<usize>,
    pub format: Option<Format>,
    pub jobs: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::read(path, e))?;
        let mut cfg: FileConfig =
            toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        for p in [
            &mut cfg.lexicon,
            &mut cfg.stoplist,
            &mut cfg.gazetteer,
            &mut cfg.profile,
            &mut cfg.spec,
            &mut cfg.rules,
        ]
        .into_iter()
        .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }
}

/// The effective configuration after flags have been applied.
#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    pub lexicon: Option<PathBuf>,
    pub stoplist: Option<PathBuf>,
    pub gazetteer: Option<PathBuf>,
    pub profile: Option<PathBuf>,
    pub spec: Option<PathBuf>,
    pub rules: Option<PathBuf>,
    /// `None` leaves the choice to the command.
    pub morph: Option<bool>,
    pub umlauts: Option<bool>,
    pub depth: usize,
    pub format: Format,
    pub jobs: usize,
}

impl RunConfig {
    pub fn merge(file: FileConfig, flags: &crate::GlobalArgs) -> Result<Self, CliError> {
        let flag_bool = |on: bool, off: bool| match (on, off) {
            (true, _) => Some(true),
            (_, true) => Some(false),
            _ => None,
        };
        let cfg = RunConfig {
            lexicon: flags.lexicon.clone().or(file.lexicon),
            stoplist: flags.stoplist.clone().or(file.stoplist),
            gazetteer: flags.gazetteer.clone().or(file.gazetteer),
            profile: flags.profile.clone().or(file.profile),
            spec: flags.spec.clone().or(file.spec),
            rules: flags.rules.clone().or(file.rules),
            morph: flag_bool(flags.morph, flags.no_morph).or(file.morph),
            umlauts: flag_bool(flags.umlauts, flags.no_umlauts).or(file.umlauts),
            depth: flags.depth.or(file.depth).unwrap_or(semlex::semtag::DEFAULT_DEPTH),
            format: flags.format.or(file.format).unwrap_or_default(),
            jobs: flags.jobs.or(file.jobs).unwrap_or(0),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.depth == 0 {
            return Err(CliError::Config("depth must be at least 1".into()));
        }
        for (name, path) in [
            ("lexicon", &self.lexicon),
            ("stoplist", &self.stoplist),
            ("gazetteer", &self.gazetteer),
            ("profile", &self.profile),
            ("spec", &self.spec),
            ("rules", &self.rules),
        ] {
            if let Some(p) = path {
                if !p.is_file() {
                    return Err(CliError::Input(format!("{name} file {} does not exist", p.display())));
                }
            }
        }
        Ok(())
    }

    pub fn lexicon(&self) -> Result<&Path, CliError> {
        self.lexicon
            .as_deref()
            .ok_or_else(|| CliError::Config("no lexicon given (use --lexicon or a config file)".into()))
    }

    /// Lookup options with per-command defaults for unset toggles.
    pub fn lookup(&self, morph: bool, umlauts: bool) -> semlex::LookupOptions {
        semlex::LookupOptions::new()
            .morph(self.morph.unwrap_or(morph))
            .umlauts(self.umlauts.unwrap_or(umlauts))
    }
}
