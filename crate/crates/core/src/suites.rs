//! Named verification suites over one datum, shared by the command-line driver
//! and the integration tests.

use std::cell::OnceCell;
use std::sync::Arc;
use std::time::Instant;

use thiserror::Error;

use crate::freealg::Alphabet;
use crate::pairing::{verify_convolution, PairError, PairingSpec};
use crate::presentations::{all_tables, cross_check, mixed_cartan_check, rll_in_rep, st_duality, twist_equivalence};
use crate::report::CheckRow;
use crate::rmatrix::{build_r, build_rep, check_chevalley, check_serre, check_structure, FundRep, RError, RMatrixBundle};
use crate::rootdata::{RootDatum, Weight};
use crate::rootvectors::{
    anchor_check, correspondence_check, gram_check, vector_check, verify_ru_factorization, DjRootVectors, RepModel,
    RootError,
};

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error(transparent)]
    R(#[from] RError),
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error(transparent)]
    Root(#[from] RootError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Structure,
    Relations,
    Convolution,
    Twist,
    Cross,
    Tables,
    Gram,
    Factorize,
    Correspondence,
}

impl Suite {
    /// Every suite, in execution order.
    pub const ALL: [Suite; 9] = [
        Suite::Structure,
        Suite::Relations,
        Suite::Convolution,
        Suite::Twist,
        Suite::Cross,
        Suite::Tables,
        Suite::Gram,
        Suite::Factorize,
        Suite::Correspondence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Structure => "structure",
            Suite::Relations => "relations",
            Suite::Convolution => "convolution",
            Suite::Twist => "twist",
            Suite::Cross => "cross",
            Suite::Tables => "tables",
            Suite::Gram => "gram",
            Suite::Factorize => "factorize",
            Suite::Correspondence => "correspondence",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    /// Height bound for PBW enumeration.
    pub height: u32,
    /// Restrict Gram checks to one Q-degree.
    pub degree: Option<Weight>,
    pub parallel: bool,
    /// Longest word per side in the convolution identity.
    pub conv_len: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            height: 4,
            degree: None,
            parallel: false,
            conv_len: 2,
        }
    }
}

/// Everything built once per datum and reused across suites.
pub struct Context {
    pub bundle: RMatrixBundle,
    pub rep: FundRep,
    pub sigma: PairingSpec,
    pub sigma_tilde: PairingSpec,
    model: OnceCell<RepModel>,
}

impl Context {
    pub fn new(d: RootDatum) -> Result<Self, SuiteError> {
        let d = Arc::new(d);
        let bundle = build_r(&d)?;
        let rep = build_rep(&d);
        let alph = Arc::new(Alphabet::new(d));
        let sigma = PairingSpec::sigma_r(&bundle, alph.clone());
        let sigma_tilde = PairingSpec::sigma_tilde_r(&bundle, alph)?;
        Ok(Context {
            bundle,
            rep,
            sigma,
            sigma_tilde,
            model: OnceCell::new(),
        })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.bundle.datum
    }

    fn model(&self) -> Result<&RepModel, SuiteError> {
        if self.model.get().is_none() {
            let _ = self.model.set(RepModel::new(&self.bundle)?);
        }
        Ok(self.model.get().expect("just set"))
    }

    /// Rows of one suite.
    pub fn run(&self, suite: Suite, opts: &SuiteOptions) -> Result<Vec<CheckRow>, SuiteError> {
        let rows = match suite {
            Suite::Structure => check_structure(&self.bundle, &self.rep)?,
            Suite::Relations => {
                let mut rows = check_serre(&self.rep);
                rows.extend(check_chevalley(&self.rep));
                rows
            }
            Suite::Convolution => verify_convolution(&self.sigma, &self.sigma_tilde, opts.conv_len),
            Suite::Twist => twist_equivalence(&self.bundle)?,
            Suite::Cross => vec![cross_check(&self.bundle, &self.sigma)?],
            Suite::Tables => {
                let (b, m) = (&self.bundle, self.model()?);
                let mut rows = rll_in_rep(b, m, "rll-model")?;
                rows.extend(rll_in_rep(b, &m.omega(), "rll-model-omega")?);
                rows.extend(st_duality(b)?);
                rows.extend(all_tables(m));
                rows.extend(mixed_cartan_check(m));
                rows
            }
            Suite::Gram => gram_check(&self.sigma_tilde, opts.height, opts.degree, opts.parallel)?,
            Suite::Factorize => verify_ru_factorization(&self.bundle)?,
            Suite::Correspondence => {
                let dj = DjRootVectors::new(&self.bundle.datum);
                let mut rows = vector_check(&dj, self.model()?);
                rows.extend(correspondence_check(&self.bundle)?);
                rows.extend(anchor_check(&self.bundle)?);
                rows
            }
        };
        Ok(rows)
    }

    /// Runs one suite and records its wall time in milliseconds.
    pub fn run_timed(&self, suite: Suite, opts: &SuiteOptions) -> Result<(Vec<CheckRow>, u128), SuiteError> {
        let t = Instant::now();
        let rows = self.run(suite, opts)?;
        Ok((rows, t.elapsed().as_millis()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_pass;

    #[test]
    fn names_roundtrip_in_order() {
        for s in Suite::ALL {
            assert_eq!(Suite::parse(s.name()), Some(s));
        }
        assert!(Suite::ALL.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Suite::parse("everything"), None);
    }

    #[test]
    fn every_suite_passes_for_gl11() {
        let ctx = Context::new(RootDatum::gl_str("01").unwrap()).unwrap();
        for s in Suite::ALL {
            let rows = ctx.run(s, &SuiteOptions::default()).unwrap();
            assert!(!rows.is_empty(), "{}", s.name());
            assert!(all_pass(&rows), "{}", s.name());
        }
    }
}
