//! Process-wide memo of power-sum expansions keyed by `(κ, k)`.
//!
//! Values are deterministic, so concurrent fills of the same key are
//! harmless: the first one stored wins and later ones are dropped.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;

use super::{JackParam, PExpansion};
use crate::partitions::Partition;

type Key = (Partition, BigRational);

fn store() -> &'static Mutex<HashMap<Key, Arc<PExpansion>>> {
    static STORE: OnceLock<Mutex<HashMap<Key, Arc<PExpansion>>>> = OnceLock::new();
    STORE.get_or_init(Default::default)
}

pub(super) fn get_or_compute(kappa: &Partition, k: &JackParam, compute: impl FnOnce() -> PExpansion) -> Arc<PExpansion> {
    let key = (kappa.clone(), k.k().clone());
    if let Some(hit) = store().lock().expect("jack cache poisoned").get(&key) {
        return Arc::clone(hit);
    }
    let value = Arc::new(compute());
    let mut guard = store().lock().expect("jack cache poisoned");
    Arc::clone(guard.entry(key).or_insert(value))
}

/// Overwrites the cached expansion of `C_κ` with a copy scaled by 2.
///
/// Test hook for checking that the self-test notices a corrupted cache.
#[doc(hidden)]
pub fn inject_fault(kappa: &Partition, k: &JackParam) {
    let good = super::jack_p_expansion(kappa, k);
    let two = BigRational::from_integer(2.into());
    let bad = PExpansion::new(good.degree(), good.coeffs().iter().map(|(mu, c)| (mu.clone(), c * &two)))
        .expect("same support");
    store()
        .lock()
        .expect("jack cache poisoned")
        .insert((kappa.clone(), k.k().clone()), Arc::new(bad));
}
