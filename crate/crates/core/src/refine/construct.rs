use super::beliefs::{br_or_none, rationality_compatible_beliefs_with};
use super::Analysis;
use crate::error::{Error, Result};
use crate::game::StrategyProfile;

impl Analysis<'_> {
    /// Path-equivalent RCE built from a uRCE: off-path receiver play that
    /// already best responds to rationality-compatible beliefs is kept, the
    /// rest is replaced by the first such best response.
    pub fn urce_path_equivalent_rce(&self, profile: &StrategyProfile) -> Result<StrategyProfile> {
        if !self.is_urce(profile)? {
            return Err(Error::Contract("profile is not a uRCE".into()));
        }
        let game = self.game;
        let mut out = profile.clone();
        for s in (0..game.n_signals()).filter(|&s| !game.is_on_path(&profile.sender, s)) {
            let br = br_or_none(game, &rationality_compatible_beliefs_with(game, &self.order, profile, s), s)?;
            if profile.receiver.support(s).iter().all(|a| br.contains(a)) {
                continue;
            }
            let &a = br.first().ok_or_else(|| Error::Internal(format!("no rationality-compatible belief after `{}`", game.signals()[s])))?;
            out.receiver.set_pure(s, a);
        }
        if !self.is_rce(&out)? {
            return Err(Error::Internal("path-equivalent profile is not an RCE".into()));
        }
        Ok(out)
    }

    /// Path-equivalent uRCE that passes NWBR.
    pub fn urce_path_equivalent_nwbr(&self, profile: &StrategyProfile) -> Result<StrategyProfile> {
        if !self.is_urce(profile)? {
            return Err(Error::Contract("profile is not a uRCE".into()));
        }
        let out = super::divine::nwbr_path_equivalent(self.game, profile)?;
        if !self.is_urce(&out)? || !super::divine::passes_nwbr(self.game, &out)? {
            return Err(Error::Internal("NWBR repair did not produce an NWBR-passing uRCE".into()));
        }
        Ok(out)
    }
}
