mod support;

use proptest::prelude::*;
use support::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_operations_satisfy_axioms(a in scalar(), b in scalar(), c in scalar()) {
        field_axioms(&a, &b, &c)?;
    }

    #[test]
    fn kron_obeys_mixed_product(a in matrix(2, 3), b in matrix(2, 2), c in matrix(3, 2), d in matrix(2, 3)) {
        kron_mixed_product(&a, &b, &c, &d)?;
    }

    #[test]
    fn flip_is_natural(a in matrix(2, 3), b in matrix(3, 2)) {
        flip_naturality(&a, &b)?;
    }

    #[test]
    fn inverse_is_exact(a in prop_oneof![int_matrix(3, 3), matrix(3, 3)]) {
        inverse_exact(&a)?;
    }

    #[test]
    fn nullspace_is_exact(a in int_matrix(3, 4)) {
        nullspace_exact(&a)?;
    }
}
