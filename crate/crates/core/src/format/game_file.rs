use std::collections::HashMap;

use super::{keyed_row, lines, parse_err, split_list};
use crate::error::{Error, Result};
use crate::game::SignalingGame;
use crate::rational::{self, Q};

#[derive(Clone, Copy, PartialEq)]
enum Section {
    None,
    Prior,
    U1,
    U2,
}

/// Parses the line-oriented game format.
///
/// ```text
/// types: H L
/// signals: N C
/// actions: low high
/// prior:
///   H: 1/2
///   L: 1/2
/// u1:
///   (H, N): 0 9
///   ...
/// u2:
///   ...
/// ```
pub fn parse_game(src: &str) -> Result<SignalingGame> {
    let mut types: Option<Vec<String>> = None;
    let mut signals: Option<Vec<String>> = None;
    let mut actions: Option<Vec<String>> = None;
    let mut prior: HashMap<String, (usize, Q)> = HashMap::new();
    let mut u1: HashMap<(String, String), (usize, Vec<Q>)> = HashMap::new();
    let mut u2: HashMap<(String, String), (usize, Vec<Q>)> = HashMap::new();
    let mut section = Section::None;
    let mut last_line = 0;

    for line in lines(src) {
        last_line = line.no;
        if !line.indented {
            let (head, rest) = line.text.split_once(':').ok_or_else(|| parse_err(line.no, "expected `section:`"))?;
            let rest = rest.trim();
            let list = || {
                let v = split_list(rest);
                if v.is_empty() {
                    Err(parse_err(line.no, format!("`{head}` needs at least one name")))
                } else {
                    Ok(v)
                }
            };
            section = Section::None;
            match head.trim() {
                "types" => types = Some(list()?),
                "signals" => signals = Some(list()?),
                "actions" => actions = Some(list()?),
                "prior" | "u1" | "u2" if !rest.is_empty() => {
                    return Err(parse_err(line.no, format!("`{head}` is a block; put rows on indented lines")))
                }
                "prior" => section = Section::Prior,
                "u1" => section = Section::U1,
                "u2" => section = Section::U2,
                other => return Err(parse_err(line.no, format!("unknown section `{other}`"))),
            }
            continue;
        }
        match section {
            Section::None => return Err(parse_err(line.no, "indented row outside a block")),
            Section::Prior => {
                let (name, value) = line.text.split_once(':').ok_or_else(|| parse_err(line.no, "expected `type: probability`"))?;
                let v = rational::parse(value).ok_or_else(|| parse_err(line.no, format!("bad number `{}`", value.trim())))?;
                if prior.insert(name.trim().to_string(), (line.no, v)).is_some() {
                    return Err(parse_err(line.no, format!("duplicate prior entry `{}`", name.trim())));
                }
            }
            Section::U1 | Section::U2 => {
                let (key, rest) = keyed_row(&line)?;
                if key.len() != 2 {
                    return Err(parse_err(line.no, "payoff rows are keyed `(type, signal)`"));
                }
                let vals = split_list(&rest)
                    .iter()
                    .map(|v| rational::parse(v).ok_or_else(|| parse_err(line.no, format!("bad number `{v}`"))))
                    .collect::<Result<Vec<_>>>()?;
                let table = if section == Section::U1 { &mut u1 } else { &mut u2 };
                if table.insert((key[0].clone(), key[1].clone()), (line.no, vals)).is_some() {
                    return Err(parse_err(line.no, format!("duplicate row ({}, {})", key[0], key[1])));
                }
            }
        }
    }

    let missing = |what: &str| parse_err(last_line, format!("missing `{what}` section"));
    let types = types.ok_or_else(|| missing("types"))?;
    let signals = signals.ok_or_else(|| missing("signals"))?;
    let actions = actions.ok_or_else(|| missing("actions"))?;

    for (name, (no, _)) in &prior {
        if !types.contains(name) {
            return Err(parse_err(*no, format!("unknown type `{name}`")));
        }
    }
    let prior_vec = types
        .iter()
        .map(|t| prior.get(t).map(|(_, v)| v.clone()).ok_or_else(|| parse_err(last_line, format!("no prior for type `{t}`"))))
        .collect::<Result<Vec<_>>>()?;

    let build = |table: &HashMap<(String, String), (usize, Vec<Q>)>, name: &str| -> Result<Vec<Vec<Vec<Q>>>> {
        for ((t, s), (no, row)) in table {
            if !types.contains(t) {
                return Err(parse_err(*no, format!("unknown type `{t}`")));
            }
            if !signals.contains(s) {
                return Err(parse_err(*no, format!("unknown signal `{s}`")));
            }
            if row.len() != actions.len() {
                return Err(parse_err(*no, format!("expected {} values, got {}", actions.len(), row.len())));
            }
        }
        types
            .iter()
            .map(|t| {
                signals
                    .iter()
                    .map(|s| {
                        table
                            .get(&(t.clone(), s.clone()))
                            .map(|(_, r)| r.clone())
                            .ok_or_else(|| parse_err(last_line, format!("{name} has no row ({t}, {s})")))
                    })
                    .collect()
            })
            .collect()
    };
    let u1 = build(&u1, "u1")?;
    let u2 = build(&u2, "u2")?;
    SignalingGame::new(types, signals, actions, prior_vec, u1, u2).map_err(|e| match e {
        Error::InvalidGame(m) => parse_err(last_line, m),
        other => other,
    })
}

/// Serializes a game; `parse_game(write_game(g)) == g`.
pub fn write_game(game: &SignalingGame) -> String {
    let mut out = String::new();
    out.push_str(&format!("types: {}\n", game.types().join(" ")));
    out.push_str(&format!("signals: {}\n", game.signals().join(" ")));
    out.push_str(&format!("actions: {}\n", game.actions().join(" ")));
    out.push_str("prior:\n");
    for (t, p) in game.types().iter().zip(game.prior()) {
        out.push_str(&format!("  {t}: {}\n", rational::format(p)));
    }
    for (name, u2) in [("u1", false), ("u2", true)] {
        out.push_str(&format!("{name}:\n"));
        for (ti, t) in game.types().iter().enumerate() {
            for (si, s) in game.signals().iter().enumerate() {
                let row = if u2 { game.u2_row(ti, si) } else { game.u1_row(ti, si) };
                let vals: Vec<String> = row.iter().map(rational::format).collect();
                out.push_str(&format!("  ({t}, {s}): {}\n", vals.join(" ")));
            }
        }
    }
    out
}
