use drinfeld_core::ffpoly::{field_from_q, parse_poly, Fq, IdealA, Poly, RatFunc};
use drinfeld_core::modmatrix::{
    al_representative, coset_key, coset_reps, gamma0_index, hnf, p1_point, p1_points, perturb_al, random_gamma0,
    random_gl2, Mat2,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(f: &Fq, s: &str) -> Poly {
    parse_poly(f, s).unwrap()
}
fn id(f: &Fq, s: &str) -> IdealA {
    IdealA::new(p(f, s)).unwrap()
}
fn mat(f: &Fq, e: [&str; 4]) -> Mat2 {
    Mat2::from_polys(p(f, e[0]), p(f, e[1]), p(f, e[2]), p(f, e[3]))
}

fn random_nonsingular(f: &Fq, rng: &mut ChaCha8Rng) -> Mat2 {
    loop {
        let e: Vec<Poly> = (0..4)
            .map(|_| {
                let deg = rng.gen_range(0..3);
                Poly::from_coeffs(f, (0..=deg).map(|_| rng.gen_range(0..f.q()) as u8).collect())
            })
            .collect();
        let m = Mat2::from_polys(e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone());
        if !m.is_singular() {
            return m;
        }
    }
}

#[test]
fn hnf_examples() {
    let f = Fq::prime(3).unwrap();
    let (h, _) = hnf(&Mat2::identity(&f)).unwrap();
    assert_eq!(h, Mat2::identity(&f));
    let (h, eps) = hnf(&mat(&f, ["0", "1", "t", "0"])).unwrap();
    assert_eq!(h, mat(&f, ["t", "0", "0", "1"]));
    assert_eq!(&eps * &mat(&f, ["0", "1", "t", "0"]), h);
    let (h, _) = hnf(&mat(&f, ["1", "0", "t", "1"])).unwrap();
    assert_eq!(h, Mat2::identity(&f));
}

#[test]
fn hnf_is_invariant_under_gl2() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for f in [Fq::prime(2).unwrap(), Fq::prime(3).unwrap(), field_from_q(4, Some("x^2+x+1")).unwrap()] {
        for _ in 0..40 {
            let m = random_nonsingular(&f, &mut rng);
            let g = random_gl2(&f, &mut rng, 4, 1);
            let (h1, e1) = hnf(&m).unwrap();
            let (h2, _) = hnf(&(&g * &m)).unwrap();
            assert_eq!(h1, h2);
            assert_eq!(&e1 * &m, h1);
            assert!(e1.det().as_constant().is_some_and(|c| c != 0));
        }
    }
}

#[test]
fn coset_key_is_invariant_under_gamma0() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let f = Fq::prime(3).unwrap();
    for lvl in ["t", "t^2+t", "t^3+2*t+1"] {
        let n = id(&f, lvl);
        for _ in 0..30 {
            let m = random_nonsingular(&f, &mut rng);
            let d = random_gamma0(&n, &mut rng, 4, 1);
            let (k1, s1) = coset_key(&m, &n, 4, 1).unwrap();
            let (k2, s2) = coset_key(&(&d * &m), &n, 4, 1).unwrap();
            assert_eq!(k1, k2);
            assert_eq!(s1, s2);
        }
    }
}

#[test]
fn coset_key_examples() {
    let f = Fq::prime(3).unwrap();
    let n = id(&f, "t");
    let (k, s) = coset_key(&mat(&f, ["2", "0", "0", "2"]), &n, 4, 1).unwrap();
    assert!(k.is_identity_class());
    assert_eq!(s, RatFunc::one(&f));
    let (k, s) = coset_key(&mat(&f, ["0", "2", "t", "0"]), &n, 4, 1).unwrap();
    assert_eq!(k.hnf(), mat(&f, ["t", "0", "0", "1"]));
    assert_eq!(k.p1.to_string(), "(1 : 0)");
    assert_eq!(s, RatFunc::one(&f));
}

#[test]
fn p1_examples() {
    let f = Fq::prime(3).unwrap();
    let n = id(&f, "t");
    assert_eq!(p1_point(&p(&f, "t"), &p(&f, "1"), &n).unwrap().to_string(), "(0 : 1)");
    assert_eq!(p1_point(&p(&f, "1"), &p(&f, "t"), &n).unwrap().to_string(), "(1 : 0)");
    let n2 = id(&f, "t^2+t");
    assert!(p1_point(&p(&f, "t+1"), &p(&f, "t+1"), &n2).is_err());
}

#[test]
fn p1_count_equals_index() {
    let fs = [Fq::prime(2).unwrap(), Fq::prime(3).unwrap(), field_from_q(4, Some("x^2+x+1")).unwrap()];
    for f in &fs {
        for deg in 1..=3usize {
            if f.q() == 4 && deg == 3 {
                continue;
            }
            for nu in Poly::monics_of_degree(f, deg) {
                let n = IdealA::new(nu).unwrap();
                assert_eq!(p1_points(&n).len() as u64, gamma0_index(&n), "{n}");
            }
        }
    }
    let f4 = &fs[2];
    let n = IdealA::new(Poly::monics_of_degree(f4, 3).nth(5).unwrap()).unwrap();
    assert_eq!(p1_points(&n).len() as u64, gamma0_index(&n));
}

#[test]
fn al_representative_examples() {
    let f = Fq::prime(3).unwrap();
    let n = id(&f, "t^2+t");
    assert_eq!(al_representative(&IdealA::unit(&f), &n).unwrap().matrix, Mat2::identity(&f));
    let w = al_representative(&id(&f, "t"), &id(&f, "t")).unwrap();
    assert_eq!(w.matrix, mat(&f, ["0", "2", "t", "0"]));
    let w = al_representative(&id(&f, "t"), &n).unwrap();
    assert_eq!(w.matrix, mat(&f, ["t", "2", "t^2+t", "2*t"]));
    assert_eq!(w.matrix.det(), RatFunc::t(&f));
}

#[test]
fn al_matrices_normalize_gamma0() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = Fq::prime(3).unwrap();
    for lvl in ["t^2+t", "t^3+t^2+t+1", "t^2+1"] {
        let n = id(&f, lvl);
        for d in n.exact_divisors() {
            let w = al_representative(&d, &n).unwrap();
            let winv = w.matrix.inverse().unwrap();
            for _ in 0..10 {
                let g = random_gamma0(&n, &mut rng, 4, 1);
                assert!((&(&w.matrix * &g) * &winv).in_gamma0(&n), "W_{d} at {n}");
            }
            let w2 = perturb_al(&w, &mut rng);
            let (k1, _) = coset_key(&w.matrix, &n, 4, 1).unwrap();
            let (k2, _) = coset_key(&w2.matrix, &n, 4, 1).unwrap();
            assert_eq!(k1, k2);
        }
    }
}

#[test]
fn trace_representatives() {
    let f3 = Fq::prime(3).unwrap();
    let f2 = Fq::prime(2).unwrap();
    let reps = coset_reps(&id(&f3, "t+1"), &id(&f3, "t")).unwrap();
    assert_eq!(reps.len(), 4);
    assert!(reps.contains(&Mat2::identity(&f3)));
    assert_eq!(coset_reps(&id(&f2, "t+1"), &id(&f2, "t")).unwrap().len(), 3);
    for (f, m, pp) in [(&f3, "t^2+1", "t^2+t+2"), (&f2, "t^2+t+1", "t^3+t+1")] {
        let (m, pp) = (id(f, m), id(f, pp));
        let n = m.mul(&pp);
        let reps = coset_reps(&m, &pp).unwrap();
        assert_eq!(reps.len() as u64, pp.norm() + 1);
        let keys: std::collections::BTreeSet<_> = reps.iter().map(|g| coset_key(g, &n, 0, 0).unwrap().0).collect();
        assert_eq!(keys.len(), reps.len());
        assert!(reps.iter().all(|g| g.in_gamma0(&m)));
    }
}
