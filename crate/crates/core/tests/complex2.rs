mod common;

use stackcoh::complex2::{secondary_cohomology, tu_cohomology, tu_sequence};

#[test]
fn random_complexes_agree_across_routes() {
    let mut r = common::rng(7);
    for _ in 0..40 {
        let len = rand::Rng::gen_range(&mut r, 1..=4);
        let c = common::random_complex(&mut r, len);
        for n in -2..=len as i64 + 1 {
            let h = secondary_cohomology(&c, n);
            let hu = tu_cohomology(&c, n);
            assert!(h.pi0().is_isomorphic(&hu), "π^0 of secondary cohomology in degree {n}");
            let h1 = secondary_cohomology(&c, n + 1);
            assert!(h1.pi1().is_isomorphic(&hu), "π^-1 of secondary cohomology in degree {}", n + 1);
        }
        assert!(tu_sequence(&c).is_exact());
    }
}
