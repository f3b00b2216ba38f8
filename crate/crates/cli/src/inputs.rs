//! Loading games, profiles and scenarios from `builtin:` names or files.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use sigrefine::format::scenario::Scenario;
use sigrefine::format::{parse_game, parse_profile};
use sigrefine::{suite, SignalingGame, StrategyProfile};

const BUILTIN: &str = "builtin:";

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn resolve(base: Option<&Path>, path: &str) -> PathBuf {
    match base {
        Some(dir) if Path::new(path).is_relative() => dir.join(path),
        _ => PathBuf::from(path),
    }
}

pub fn game(spec: &str, base: Option<&Path>) -> Result<SignalingGame> {
    if let Some(name) = spec.strip_prefix(BUILTIN) {
        let src = suite::game_source(name).ok_or_else(|| unknown("game", name, suite::game_names()))?;
        return Ok(parse_game(src)?);
    }
    let path = resolve(base, spec);
    parse_game(&read(&path)?).with_context(|| path.display().to_string())
}

pub fn profile(spec: &str, game: &SignalingGame, base: Option<&Path>) -> Result<StrategyProfile> {
    if let Some(name) = spec.strip_prefix(BUILTIN) {
        let (g, p) = name.split_once('/').ok_or_else(|| anyhow!(sigrefine::Error::Contract(format!("expected builtin:<game>/<profile>, got `{spec}`"))))?;
        let src = suite::profile_source(g, p)
            .ok_or_else(|| unknown("profile", name, suite::profile_names().into_iter().map(|(g, p)| format!("{g}/{p}")).collect()))?;
        return Ok(parse_profile(src, game).with_context(|| format!("builtin profile {name}"))?);
    }
    let path = resolve(base, spec);
    parse_profile(&read(&path)?, game).with_context(|| path.display().to_string())
}

/// A scenario with its game and starting profile resolved.
pub struct LoadedScenario {
    pub scenario: Scenario,
    pub game: SignalingGame,
    pub init: Option<StrategyProfile>,
}

pub fn scenario(spec: &str) -> Result<LoadedScenario> {
    let (scenario, base) = match spec.strip_prefix(BUILTIN) {
        Some(name) => {
            let src = suite::scenario_source(name).ok_or_else(|| unknown("scenario", name, suite::scenario_names()))?;
            (Scenario::parse(src)?, None)
        }
        None => {
            let path = PathBuf::from(spec);
            let sc = Scenario::parse(&read(&path)?).with_context(|| path.display().to_string())?;
            (sc, path.parent().map(Path::to_path_buf))
        }
    };
    let base = base.as_deref();
    let game = game(&scenario.game, base)?;
    let init = match &scenario.init {
        Some(p) => Some(profile(p, &game, base)?),
        None => None,
    };
    Ok(LoadedScenario { scenario, game, init })
}

fn unknown<S: std::fmt::Display>(what: &str, name: &str, known: Vec<S>) -> anyhow::Error {
    let known: Vec<String> = known.iter().map(|k| k.to_string()).collect();
    anyhow!(sigrefine::Error::Contract(format!("no builtin {what} `{name}` (known: {})", known.join(", "))))
}
