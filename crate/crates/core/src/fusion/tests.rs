use super::*;
use crate::abgroup::FinAbGroup;

#[test]
fn builders_pass_checks() {
    for n in [1u64, 3, 5, 9, 15] {
        let g = FinAbGroup::cyclic(n);
        for r in [ty_fusion_ring(&g).unwrap(), gen_ty_fusion_ring(&g).unwrap(), gen_mp_fusion_ring(&g).unwrap()] {
            let rep = check_fusion_ring(&r);
            assert!(rep.ok, "{n}: {:?}", rep.failures);
        }
    }
}
