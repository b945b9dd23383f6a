use super::*;
use proptest::prelude::*;

fn e(n: u64, k: i64) -> CycNum {
    CycNum::e(n, k)
}

#[test]
fn roots_and_relations() {
    assert_eq!(root_of_unity(1, 0).unwrap(), CycNum::one());
    assert_eq!(root_of_unity(0, 1), Err(CycloError::ZeroOrder));
    let i = e(4, 1);
    assert_eq!(&i * &i, CycNum::from_int(-1));
    assert_eq!(e(7, 3).pow(7), CycNum::one());
    assert_eq!(&e(3, 1) + &e(3, 2), CycNum::from_int(-1));
    assert_eq!(&e(5, 2) * &e(5, 3), CycNum::one());
    assert_eq!(i.conj(), -&i);
}

#[test]
fn conductor_reduction() {
    assert_eq!(e(6, 2), e(3, 1));
    assert_eq!(e(2, 1), CycNum::from_int(-1));
    assert_eq!(e(10, 1).conductor(), 5);
    assert_eq!(e(12, 3), e(4, 1));
    let x = &e(9, 3) + &e(9, 6);
    assert_eq!(x, CycNum::from_int(-1));
    // ζ₁₅ + ζ₁₅⁴ + ... scattered over 3 and 5 parts
    let s: CycNum = (1..15).map(|k| e(15, k)).sum();
    assert_eq!(s, CycNum::from_int(-1));
    assert!(e(8, 1).conductor() == 8);
    let sq2 = &e(8, 1) + &e(8, 7);
    assert_eq!(&sq2 * &sq2, CycNum::from_int(2));
}

#[test]
fn geometric_sums() {
    assert_eq!(geometric_sum(5, 1), CycNum::from_int(-1));
    assert_eq!(geometric_sum(6, 6), CycNum::from_int(5));
    assert_eq!(geometric_sum(8, 2), CycNum::from_int(-1));
}

#[test]
fn gauss_sums() {
    let g5 = gauss_sqrt(5).unwrap();
    assert_eq!(&g5 * &g5, CycNum::from_int(5));
    let g7 = gauss_sqrt(7).unwrap();
    assert_eq!(&g7 * &g7, CycNum::from_int(-7));
    // expanded by hand: (1|3) ζ₃ + (2|3) ζ₃²
    assert_eq!(gauss_sqrt(3).unwrap(), &e(3, 1) - &e(3, 2));
    assert_eq!(gauss_sqrt(3).unwrap(), sqrt_m3());
    assert_eq!(gauss_sqrt(9), Err(CycloError::NotOddPrime(9)));
    assert_eq!(gauss_sqrt(2), Err(CycloError::NotOddPrime(2)));
}

#[test]
fn square_roots_of_q() {
    assert_eq!(sqrt_q(3, 2).unwrap(), CycNum::from_int(3));
    let v = sqrt_q(5, 1).unwrap();
    assert_eq!(&v * &v, CycNum::from_int(5));
    let v = sqrt_q(7, 3).unwrap();
    assert_eq!(&v * &v, CycNum::from_int(-343));
}

#[test]
fn rationals() {
    assert_eq!(CycNum::from_int(-1).as_rational(), Some(int(-1)));
    assert_eq!(e(5, 1).as_rational(), None);
    assert!((&(&e(3, 1) + &e(3, 2)) + &CycNum::one()).is_nonneg_integer());
    assert!(!CycNum::from_rat(rat(1, 2)).is_nonneg_integer());
    assert!(!CycNum::from_int(-2).is_nonneg_integer());
}

#[test]
fn render_and_parse() {
    let x: CycNum = "-E(7)-E(7)^2+1/2".parse().unwrap();
    let y = &(&-&e(7, 1) - &e(7, 2)) + &CycNum::from_rat(rat(1, 2));
    assert_eq!(x, y);
    assert_eq!(x.to_string().parse::<CycNum>().unwrap(), x);
    assert_eq!("E(4)".parse::<CycNum>().unwrap().to_string(), "E(4)");
    assert_eq!("0".parse::<CycNum>().unwrap(), CycNum::zero());
    assert_eq!("3/6".parse::<CycNum>().unwrap().to_string(), "1/2");
    assert_eq!("2*E(3)^-1".parse::<CycNum>().unwrap(), e(3, 2).scale(&int(2)));
    assert_eq!("E(12)^3".parse::<CycNum>().unwrap(), e(4, 1));
    for bad in ["", "E(0)", "E(3", "1/0", "1 2", "+", "E(3)^", "x"] {
        assert!(bad.parse::<CycNum>().is_err(), "{bad:?}");
    }
    let err = "1+E(".parse::<CycNum>().unwrap_err();
    assert_eq!(err.col, 5);
}

#[test]
fn galois_action() {
    let g = gauss_sqrt(5).unwrap();
    assert_eq!(g.galois(2), -&g);
    assert_eq!(g.galois(4), g);
    assert_eq!(e(9, 2).galois(4), e(9, 8));
}

fn arb_cyc() -> impl Strategy<Value = CycNum> {
    let n = prop::sample::select(vec![1u64, 3, 4, 5, 7, 8, 9, 12, 15, 20, 21, 24, 36, 45]);
    (n, prop::collection::vec((0i64..60, -3i64..4, 1i64..4), 0..6)).prop_map(|(n, ts)| {
        let mut acc = Accum::new();
        for (k, c, d) in ts {
            acc.push(Root::new(n, k), rat(c, d));
        }
        acc.finish()
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in arb_cyc(), b in arb_cyc(), c in arb_cyc()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(&a * &a.conj(), &a.conj() * &a);
    }

    #[test]
    fn round_trip(a in arb_cyc()) {
        prop_assert_eq!(a.to_string().parse::<CycNum>().unwrap(), a);
    }

    #[test]
    fn canonical_uniqueness(f in 1u64..50, s in 0i64..100) {
        // Σ_{t=1}^{f−1} ζ_f^{st} built termwise equals f·[f | s] − 1.
        let direct: CycNum = (1..f as i64).map(|t| CycNum::e(f, s * t)).sum();
        let expect = if s % f as i64 == 0 { f as i64 - 1 } else { -1 };
        prop_assert_eq!(&direct, &CycNum::from_int(expect));
        prop_assert_eq!(geometric_sum(f, s), direct);
    }

    #[test]
    fn single_root_norm(n in 1u64..200, k in 0i64..400) {
        let z = CycNum::e(n, k);
        prop_assert_eq!(z.norm2(), Some(int(1)));
        let c = z.conductor();
        prop_assert!(c % 4 != 2);
    }
}

#[test]
fn gauss_squares_up_to_100() {
    for p in (3..100).filter(|&p| crate::numth::is_prime(p)) {
        let g = gauss_sqrt(p).unwrap();
        let s = if p % 4 == 1 { p as i64 } else { -(p as i64) };
        assert_eq!(&g * &g, CycNum::from_int(s), "p = {p}");
        assert_eq!(g.conductor(), p);
    }
}

#[test]
fn geometric_sum_grid() {
    for f in 1..=50u64 {
        for s in 0..2 * f as i64 {
            let v = &geometric_sum(f, s) + &CycNum::one();
            let expect = if s % f as i64 == 0 { f as i64 } else { 0 };
            assert_eq!(v, CycNum::from_int(expect), "f={f} s={s}");
        }
    }
}

#[test]
fn mixed_conductors_collapse() {
    // Σ over all primitive 271st and 61st roots: μ(271) + μ(61) = −2.
    let mut acc = Accum::new();
    for k in 1..271 {
        acc.push(Root::new(271, k), int(1));
    }
    for k in 1..61 {
        acc.push(Root::new(61, k), int(1));
    }
    assert_eq!(acc.finish(), CycNum::from_int(-2));
    let mut acc = Accum::new();
    acc.add_product(&e(271, 5), &e(61, 3), &int(1));
    acc.add_product(&e(271, 5), &e(61, 3), &int(-1));
    acc.push(Root::new(7, 2), int(1));
    assert_eq!(acc.finish(), e(7, 2));
}

fn in_basis(n: u64, e: u64) -> bool {
    crate::numth::factorize(n).into_iter().all(|(p, a)| {
        let pp = p.pow(a);
        let comp = e * crate::numth::inv_mod((n / pp) % pp, pp).unwrap() % pp;
        let top = comp / (pp / p);
        if p == 2 { top == 0 } else { top != 0 }
    })
}

proptest! {
    #[test]
    fn canonical_form_is_basis_and_value(
        ts in prop::collection::vec((prop::sample::select(vec![2u64, 3, 4, 5, 6, 7, 9, 10, 12, 16, 18, 25, 35, 63]), 0i64..100, -4i64..5), 1..8)
    ) {
        let mut acc = Accum::new();
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for &(n, k, c) in &ts {
            acc.push(Root::new(n, k), int(c));
            let t = std::f64::consts::TAU * k as f64 / n as f64;
            re += c as f64 * t.cos();
            im += c as f64 * t.sin();
        }
        let x = acc.finish();
        let (xr, xi) = x.approx();
        prop_assert!((xr - re).abs() < 1e-9 && (xi - im).abs() < 1e-9);
        prop_assert!(x.conductor() % 4 != 2);
        for (e, _) in x.terms() {
            prop_assert!(in_basis(x.conductor(), *e), "{} not in basis of {}", e, x.conductor());
        }
    }
}
