use drinfeld_core::ffpoly::{
    field_from_q, gcd_bezout, parse_poly, parse_ratfunc, Fq, IdealA, Poly, RatFunc, Valuation,
};
use proptest::prelude::*;

fn fields() -> Vec<Fq> {
    vec![Fq::prime(2).unwrap(), Fq::prime(3).unwrap(), field_from_q(4, Some("x^2+x+1")).unwrap(), Fq::prime(5).unwrap()]
}

fn p(f: &Fq, s: &str) -> Poly {
    parse_poly(f, s).unwrap()
}

fn arb_poly(fi: usize) -> impl Strategy<Value = Poly> {
    let q = fields()[fi].q();
    prop::collection::vec(0..q as u8, 0..7).prop_map(move |c| Poly::from_coeffs(&fields()[fi], c))
}

fn triple() -> impl Strategy<Value = (Poly, Poly, Poly)> {
    (0..4usize).prop_flat_map(|fi| (arb_poly(fi), arb_poly(fi), arb_poly(fi)))
}

proptest! {
    #[test]
    fn ring_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&(&a - &b) + &b) == a);
        prop_assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn div_rem_invariant((a, b, _) in triple()) {
        prop_assume!(!b.is_zero());
        let (qt, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&qt * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn bezout((a, b, _) in triple()) {
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let (g, u, v) = gcd_bezout(&a, &b).unwrap();
        prop_assert_eq!(&(&u * &a) + &(&v * &b), g.clone());
        prop_assert!(g.is_monic());
        prop_assert!(g.divides(&a) && g.divides(&b));
    }

    #[test]
    fn print_parse_round_trip((a, b, _) in triple()) {
        let f = a.field().clone();
        prop_assert_eq!(parse_poly(&f, &a.to_string()).unwrap(), a.clone());
        if !b.is_zero() {
            let x = RatFunc::new(a, b).unwrap();
            prop_assert_eq!(parse_ratfunc(&f, &x.to_string()).unwrap(), x);
        }
    }

    #[test]
    fn valuation_is_additive((a, b, _) in triple()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let f = a.field().clone();
        let pr = IdealA::new(Poly::t(&f)).unwrap();
        let va = RatFunc::from_poly(a.clone()).valuation(&pr);
        let vb = RatFunc::from_poly(b.clone()).valuation(&pr);
        prop_assert_eq!(RatFunc::from_poly(&a * &b).valuation(&pr), va + vb);
    }
}

/// Gauss's count of monic irreducibles of degree n.
fn necklace(q: u64, n: u32) -> u64 {
    let mut total: i64 = 0;
    for d in 1..=n {
        if n % d == 0 {
            total += mobius(n / d) * (q as i64).pow(d);
        }
    }
    (total / n as i64) as u64
}

fn mobius(mut n: u32) -> i64 {
    let mut s = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            s = -s;
        }
        d += 1;
    }
    if n > 1 {
        s = -s;
    }
    s
}

#[test]
fn irreducible_counts() {
    for f in fields() {
        let max = if f.q() <= 3 { 4 } else { 3 };
        for n in 1..=max {
            let count = Poly::monics_of_degree(&f, n).filter(|x| x.is_irreducible().unwrap()).count() as u64;
            assert_eq!(count, necklace(f.q() as u64, n as u32), "q={} n={n}", f.q());
        }
    }
}

#[test]
fn bezout_examples() {
    let f = Fq::prime(3).unwrap();
    assert_eq!(gcd_bezout(&p(&f, "t"), &p(&f, "t+1")).unwrap(), (p(&f, "1"), p(&f, "2"), p(&f, "1")));
    assert_eq!(gcd_bezout(&p(&f, "t^2"), &p(&f, "t")).unwrap(), (p(&f, "t"), p(&f, "0"), p(&f, "1")));
    assert!(gcd_bezout(&p(&f, "t^2+1"), &p(&f, "t+2")).unwrap().0.is_one());
}

#[test]
fn irreducibility_examples() {
    let f3 = Fq::prime(3).unwrap();
    let f2 = Fq::prime(2).unwrap();
    assert!(p(&f3, "t^2+1").is_irreducible().unwrap());
    assert!(!p(&f3, "t^2").is_irreducible().unwrap());
    assert!(p(&f2, "t^2+t+1").is_irreducible().unwrap());
}

#[test]
fn valuation_examples() {
    let f = Fq::prime(3).unwrap();
    let t = IdealA::new(p(&f, "t")).unwrap();
    let t1 = IdealA::new(p(&f, "t+1")).unwrap();
    assert_eq!(parse_ratfunc(&f, "t^3/(t+1)").unwrap().valuation(&t), Valuation::Finite(3));
    assert_eq!(parse_ratfunc(&f, "1/(t+1)^2").unwrap().valuation(&t1), Valuation::Finite(-2));
    assert_eq!(RatFunc::from_int(&f, 2).valuation(&t), Valuation::Finite(0));
    assert_eq!(RatFunc::zero(&f).valuation(&t), Valuation::Infinite);
}

#[test]
fn extension_field_arithmetic() {
    let f = field_from_q(4, Some("x^2+x+1")).unwrap();
    let units: Vec<_> = f.units().collect();
    assert_eq!(units.len(), 3);
    for &a in &units {
        assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        assert_eq!(f.pow(a, 3), 1);
        assert_eq!(f.add(a, a), 0);
    }
}
