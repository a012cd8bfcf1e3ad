use drinfeld_core::ffpoly::{parse_poly, Fq, IdealA, Poly, RatFunc};
use drinfeld_core::modmatrix::{coset_key, random_gamma0, Mat2};
use drinfeld_core::opcalc::{
    op_embed, op_equal, op_tp, op_trace, op_trace_twisted, op_up, op_w, verify_identity, AlReps, Embed, IdentityId,
    Operator, Status, Tuple, VerifyOptions, WeightType,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn p(f: &Fq, s: &str) -> Poly {
    parse_poly(f, s).unwrap()
}
fn id(f: &Fq, s: &str) -> IdealA {
    IdealA::new(p(f, s)).unwrap()
}
fn rf(f: &Fq, s: &str) -> RatFunc {
    RatFunc::from_poly(p(f, s))
}
fn f3() -> Fq {
    Fq::prime(3).unwrap()
}
fn w41() -> WeightType {
    WeightType::new(4, 1, 3).unwrap()
}

#[test]
fn gamma0_terms_collapse() {
    let f = f3();
    let n = id(&f, "t^2+t");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let d = random_gamma0(&n, &mut rng, 4, 1);
    let op = Operator::new(n.clone(), n.clone(), w41(), vec![(RatFunc::one(&f), d.clone())]);
    assert!(op_equal(&op, &Operator::identity(&n, w41())).unwrap());

    let m = Mat2::from_polys(p(&f, "t"), p(&f, "1"), p(&f, "0"), p(&f, "1"));
    let pair =
        Operator::new(n.clone(), n.clone(), w41(), vec![(RatFunc::one(&f), m.clone()), (-&RatFunc::one(&f), &d * &m)]);
    assert!(pair.canonicalize().unwrap().is_zero());

    let two =
        Operator::new(n.clone(), n.clone(), w41(), vec![(RatFunc::one(&f), Mat2::scalar(RatFunc::from_int(&f, 2)))]);
    assert!(op_equal(&two, &Operator::identity(&n, w41())).unwrap());
}

#[test]
fn composition_is_associative_and_bilinear() {
    let f = f3();
    let n = id(&f, "t^2+t");
    let reps = AlReps::Canonical;
    let a = op_w(&id(&f, "t"), &n, w41(), &reps).unwrap();
    let b = op_up(&id(&f, "t"), &n, w41()).unwrap();
    let c = op_w(&id(&f, "t+1"), &n, w41(), &reps).unwrap();
    let ab_c = Operator::compose(&Operator::compose(&a, &b).unwrap(), &c).unwrap();
    let a_bc = Operator::compose(&a, &Operator::compose(&b, &c).unwrap()).unwrap();
    assert!(op_equal(&ab_c, &a_bc).unwrap());

    let x = rf(&f, "t+2");
    let lhs = Operator::compose(&a, &b.scale(&x).add(&c).unwrap()).unwrap();
    let rhs = Operator::compose(&a, &b).unwrap().scale(&x).add(&Operator::compose(&a, &c).unwrap()).unwrap();
    assert!(op_equal(&lhs, &rhs).unwrap());
}

#[test]
fn canonical_table_reproduces_operator() {
    let f = f3();
    let n = id(&f, "t^2+1");
    let tp = op_tp(&id(&f, "t"), &n, w41()).unwrap();
    let can = tp.canonicalize().unwrap();
    assert!(op_equal(&can.to_operator(), &tp).unwrap());
    for (key, _) in &can.table {
        let (k2, s) = coset_key(&key.representative(), &n, 4, 1).unwrap();
        assert_eq!(&k2, key);
        assert!(s.is_one());
    }
}

#[test]
fn hecke_term_counts() {
    let f = f3();
    let f2 = Fq::prime(2).unwrap();
    let tp = op_tp(&id(&f, "t"), &id(&f, "t+1"), w41()).unwrap();
    assert_eq!(tp.terms().len(), 4);
    assert!(tp.terms().iter().all(|(c, _)| *c == rf(&f, "t^3")));
    let w20 = WeightType::new(2, 0, 2).unwrap();
    assert_eq!(op_tp(&id(&f2, "t"), &id(&f2, "t+1"), w20).unwrap().terms().len(), 3);
    assert_eq!(op_up(&id(&f, "t"), &id(&f, "t^2+t"), w41()).unwrap().terms().len(), 3);
    assert_eq!(op_up(&id(&f2, "t^2+t+1"), &id(&f2, "t^3+t+1").mul(&id(&f2, "t^2+t+1")), w20).unwrap().terms().len(), 4);
    assert_eq!(op_trace(&id(&f, "t+1"), &id(&f, "t"), w41()).unwrap().terms().len(), 4);
}

#[test]
fn up_kills_dp() {
    let f = f3();
    let m = id(&f, "t+1");
    let n = id(&f, "t^2+t");
    let up = op_up(&id(&f, "t"), &n, w41()).unwrap();
    let dp = op_embed(&m, &n, Embed::Quotient, w41()).unwrap();
    assert!(Operator::compose(&up, &dp).unwrap().canonicalize().unwrap().is_zero());
    assert!(!up.canonicalize().unwrap().is_zero());
}

#[test]
fn atkin_lehner_square_and_identity() {
    let f = f3();
    let t = id(&f, "t");
    let w = op_w(&t, &t, w41(), &AlReps::Canonical).unwrap();
    let sq = Operator::compose(&w, &w).unwrap().canonicalize().unwrap();
    assert_eq!(sq.table.len(), 1);
    let (key, c) = sq.table.iter().next().unwrap();
    assert!(key.is_identity_class());
    assert_eq!(*c, rf(&f, "t").pow(-2).unwrap());
    let one = op_w(&IdealA::unit(&f), &t, w41(), &AlReps::Canonical).unwrap();
    assert!(op_equal(&one, &Operator::identity(&t, w41())).unwrap());
}

#[test]
fn trace_formula() {
    let f = f3();
    let m = id(&f, "t+1");
    let pp = id(&f, "t");
    let n = m.mul(&pp);
    let tr = op_trace(&m, &pp, w41()).unwrap();
    let up = op_up(&pp, &n, w41()).unwrap().restrict(&n).unwrap();
    let w = op_w(&pp, &n, w41(), &AlReps::Canonical).unwrap();
    let one = op_embed(&n, &n, Embed::One, w41()).unwrap();
    let rhs = one.add(&Operator::compose(&up, &w).unwrap().scale(&rf(&f, "t").pow(-1).unwrap())).unwrap();
    assert!(op_equal(&Operator::compose(&op_embed(&m, &m, Embed::One, w41()).unwrap(), &tr).unwrap(), &rhs).unwrap());

    let emb = op_embed(&m, &n, Embed::One, w41()).unwrap();
    assert!(op_equal(&Operator::compose(&tr, &emb).unwrap(), &Operator::identity(&m, w41())).unwrap());
    let tw = op_trace_twisted(&IdealA::unit(&f), &m, &pp, w41(), &AlReps::Canonical).unwrap();
    assert!(op_equal(&tw, &tr).unwrap());
}

#[test]
fn catalog_passes_at_a_grid_point() {
    let f = f3();
    let tuple = Tuple { pi: p(&f, "t+1"), p: p(&f, "t"), wt: w41() };
    for id in IdentityId::ALL {
        for r in verify_identity(id, &tuple, &AlReps::randomized(5), VerifyOptions::default()) {
            assert_eq!(r.status, Status::Pass, "{} {:?}", r.identity, r.params);
        }
    }
}

#[test]
fn corrupted_sides_fail() {
    let f = f3();
    let tuple = Tuple { pi: p(&f, "t+1"), p: p(&f, "t"), wt: w41() };
    for id in [IdentityId::EqTr, IdentityId::ThmComm, IdentityId::TpDecomposition] {
        for r in verify_identity(id, &tuple, &AlReps::Canonical, VerifyOptions { corrupt: true }) {
            assert_eq!(r.status, Status::Fail, "{}", r.identity);
            assert!(!r.diff.is_empty());
        }
    }
}

#[test]
fn hypothesis_violations_are_not_applicable() {
    let f = f3();
    let tuple = Tuple { pi: p(&f, "t^2+t"), p: p(&f, "t"), wt: w41() };
    let r = &verify_identity(IdentityId::EqTr, &tuple, &AlReps::Canonical, VerifyOptions::default())[0];
    assert_eq!(r.status, Status::NotApplicable);
    assert_eq!(r.reason.as_deref(), Some("hypothesis (π,P)=1"));
}
