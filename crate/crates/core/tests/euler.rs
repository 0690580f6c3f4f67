//! Hom and Ext¹ dimensions against the projective-resolution oracle and the
//! Euler form.

mod oracles;

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sigmatilt::quiver::{catalog, euler_form, Quiver};
use sigmatilt::rep::{ext_space, hom_space};

fn quivers() -> Vec<Quiver> {
    vec![
        catalog::linear_a(3),
        catalog::d4(),
        Quiver::new(4, [(1, 2), (1, 3), (3, 4)]).unwrap(),
        Quiver::new(2, [(1, 2), (1, 2)]).unwrap(),
        Quiver::new(3, [(1, 2), (1, 3), (2, 3)]).unwrap(),
    ]
}

#[test]
fn euler_identity_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for q in quivers() {
        let q = Arc::new(q);
        let form = euler_form(&q);
        for _ in 0..200 {
            let m = oracles::random_rep(&q, &mut rng, 2);
            let n = oracles::random_rep(&q, &mut rng, 2);
            let hom = hom_space(&m, &n).unwrap().dim();
            let ext = ext_space(&m, &n).unwrap().dim;
            assert_eq!((hom, ext), oracles::hom_ext_by_resolution(&m, &n), "{q}");
            let expected = oracles::euler_pair(&q, m.dims(), n.dims());
            assert_eq!(hom as i64 - ext as i64, expected, "{q}");
            assert_eq!(form.pair(&m.dim_vector(), &n.dim_vector()), expected);
        }
    }
}
