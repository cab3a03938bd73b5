use crate::error::{GxeError, Result};
use crate::scalar::Real;

/// Akaike and Bayesian information criteria.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InformationCriteria<T> {
    pub aic: T,
    pub bic: T,
}

/// `aic = 2k − 2ℓ`, `bic = k ln n − 2ℓ`.
pub fn information_criteria<T: Real>(
    log_likelihood: T,
    n_params: usize,
    n_obs: usize,
) -> Result<InformationCriteria<T>> {
    if n_obs == 0 {
        return Err(GxeError::Domain("information criteria need at least one observation".into()));
    }
    let k = T::from_count(n_params);
    let two = T::lit(2.0);
    Ok(InformationCriteria {
        aic: two * k - two * log_likelihood,
        bic: k * T::from_count(n_obs).ln() - two * log_likelihood,
    })
}
