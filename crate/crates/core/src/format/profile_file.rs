use std::collections::HashMap;

use super::{keyed_row, lines, parse_err, split_list};
use crate::error::Result;
use crate::game::{ReceiverStrategy, SenderStrategy, SignalingGame, StrategyProfile};
use crate::rational::{self, Q};

/// Parses a profile file against `game`.
///
/// ```text
/// sender:
///   (H): 0 1 0
/// receiver:
///   (N): 1 0 0
/// ```
pub fn parse_profile(src: &str, game: &SignalingGame) -> Result<StrategyProfile> {
    let mut sender: HashMap<String, (usize, Vec<Q>)> = HashMap::new();
    let mut receiver: HashMap<String, (usize, Vec<Q>)> = HashMap::new();
    let mut section: Option<bool> = None;
    let mut last_line = 0;

    for line in lines(src) {
        last_line = line.no;
        if !line.indented {
            section = match line.text {
                "sender:" => Some(true),
                "receiver:" => Some(false),
                other => return Err(parse_err(line.no, format!("unknown section `{other}`"))),
            };
            continue;
        }
        let Some(is_sender) = section else { return Err(parse_err(line.no, "indented row outside a block")) };
        let (key, rest) = keyed_row(&line)?;
        if key.len() != 1 {
            return Err(parse_err(line.no, "profile rows are keyed by a single name"));
        }
        let (names, width) = if is_sender { (game.types(), game.n_signals()) } else { (game.signals(), game.n_actions()) };
        if !names.contains(&key[0]) {
            return Err(parse_err(line.no, format!("unknown name `{}`", key[0])));
        }
        let vals = split_list(&rest)
            .iter()
            .map(|v| rational::parse(v).ok_or_else(|| parse_err(line.no, format!("bad number `{v}`"))))
            .collect::<Result<Vec<_>>>()?;
        if vals.len() != width {
            return Err(parse_err(line.no, format!("expected {width} values, got {}", vals.len())));
        }
        if !rational::is_distribution(&vals) {
            return Err(parse_err(line.no, "row is not a probability vector"));
        }
        let map = if is_sender { &mut sender } else { &mut receiver };
        if map.insert(key[0].clone(), (line.no, vals)).is_some() {
            return Err(parse_err(line.no, format!("duplicate row `{}`", key[0])));
        }
    }
    let collect = |map: &HashMap<String, (usize, Vec<Q>)>, names: &[String]| -> Result<Vec<Vec<Q>>> {
        names
            .iter()
            .map(|n| map.get(n).map(|(_, r)| r.clone()).ok_or_else(|| parse_err(last_line, format!("no row for `{n}`"))))
            .collect()
    };
    let s = SenderStrategy::new(game, collect(&sender, game.types())?)?;
    let r = ReceiverStrategy::new(game, collect(&receiver, game.signals())?)?;
    Ok(StrategyProfile::new(s, r))
}

pub fn write_profile(profile: &StrategyProfile, game: &SignalingGame) -> String {
    let row = |r: &[Q]| r.iter().map(rational::format).collect::<Vec<_>>().join(" ");
    let mut out = String::from("sender:\n");
    for (t, name) in game.types().iter().enumerate() {
        out.push_str(&format!("  ({name}): {}\n", row(profile.sender.row(t))));
    }
    out.push_str("receiver:\n");
    for (s, name) in game.signals().iter().enumerate() {
        out.push_str(&format!("  ({name}): {}\n", row(profile.receiver.row(s))));
    }
    out
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::suite;

    #[test]
    fn round_trip_bundled_profiles() {
        for ex in suite::examples() {
            for (_, p) in &ex.profiles {
                let text = write_profile(p, &ex.game);
                assert_eq!(&parse_profile(&text, &ex.game).unwrap(), p);
            }
        }
    }

    #[test]
    fn rejects_bad_rows() {
        let g = suite::left_right_game();
        let ok = "sender:\n  (t1): 1 0\n  (t2): 1 0\nreceiver:\n  (L): 0 1 0\n  (R): 0 1 0\n";
        assert!(parse_profile(ok, &g).is_ok());
        let bad = ok.replace("(t2): 1 0", "(t2): 1/2 1/3");
        assert!(matches!(parse_profile(&bad, &g), Err(Error::Parse { line: 3, .. })));
        let bad = ok.replace("  (R): 0 1 0\n", "");
        assert!(matches!(parse_profile(&bad, &g), Err(Error::Parse { .. })));
        let bad = ok.replace("(L)", "(Q)");
        assert!(matches!(parse_profile(&bad, &g), Err(Error::Parse { line: 5, .. })));
    }
}
