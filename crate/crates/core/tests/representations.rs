use cgk_core::reps::{rep_check, right_check};
use cgk_core::{AlgebraSpec, Params};

#[test]
fn left_action_is_a_homomorphism() {
    for s in AlgebraSpec::extended_up_to(5) {
        let r = rep_check(&s, &Params::symbolic()).unwrap();
        for f in &r.failures {
            eprintln!("{s} [{}, {}]: {}", f.x, f.y, f.residual);
        }
        assert!(r.is_ok(), "{s}: {} failing pairs of {}", r.failures.len(), r.pairs_checked);
    }
}

#[test]
fn right_action_is_a_homomorphism_on_the_creation_part() {
    for s in AlgebraSpec::all_up_to(6) {
        assert!(right_check(&s).unwrap().is_ok(), "{s}");
    }
}
