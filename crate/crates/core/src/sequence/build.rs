use std::sync::Arc;

use num_bigint::BigUint;

use super::SequenceData;
use crate::error::{Error, Result};
use crate::module::{action_functor_matrix, module_components, BasedModule};
use crate::ring::{deligne_product, FusionRing};

/// `A → A ⊠ C → C ⊠ End(M)` with `ι(X_a) = X_a ⊠ 1` and
/// `F(X_a ⊠ Y_t) = Y_t ⊠ F_M(X_a)`. The basis of `B` is `(a, t)` at index
/// `a rank(C) + t`.
pub fn make_deligne_sequence(a: &Arc<FusionRing>, c: &Arc<FusionRing>, m: &BasedModule) -> Result<SequenceData> {
    if m.ring() != a.as_ref() {
        return Err(Error::Precondition("module is not over A".into()));
    }
    let comps = module_components(m);
    if comps.len() != 1 {
        return Err(Error::Decomposable {
            components: comps.len(),
        });
    }
    if c.is_multifusion() {
        return Err(Error::Precondition("C must have a simple unit".into()));
    }
    let (ra, rc) = (a.rank(), c.rank());
    let b = Arc::new(deligne_product(a, c));
    let uc = c.unit_components()[0];
    let iota = (0..ra * rc)
        .map(|x| (0..ra).map(|col| BigUint::from((x == col * rc + uc) as u32)).collect())
        .collect();
    let act = action_functor_matrix(m);
    let m2 = m.mrank() * m.mrank();
    let f = (0..rc * m2)
        .map(|row| {
            let (t, e) = (row / m2, row % m2);
            (0..ra * rc)
                .map(|x| if x % rc == t { act[e][x / rc].clone() } else { BigUint::default() })
                .collect()
        })
        .collect();
    Ok(SequenceData {
        a: a.clone(),
        b,
        c: c.clone(),
        module: m.clone(),
        iota,
        f,
    })
}
