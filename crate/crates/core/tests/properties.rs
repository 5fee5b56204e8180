use proptest::prelude::*;

use hypermono::algebra::arith::{gcd, is_prime, lcm, mult_order};
use hypermono::algebra::{Cyc, Fq, FqMat, UnityClass};
use hypermono::chargeom::HypDescriptor;
use hypermono::constructions::{alt2_family, sawin, SawinSide};
use hypermono::gates::{brauerp_transfer, ClassTrace, TraceTable};
use hypermono::gates::{landau, ppd};
use hypermono::repkit::{power, spectrum, GroupElem, MonoMat, Represented, Spectrum};
use hypermono::stonevn::{heisenberg_irrep, Eps};
use hypermono::splus::{indecomposability_ok, splus_verdict, tensor_induction_candidates, Primitivity, Status};
use hypermono::weilgl::{weil_spectrum, ClassicalGroup, Family, WeilCharSpec};

const PRIMES: &[u64] = &[2, 3, 5, 7];

fn unity_class() -> impl Strategy<Value = UnityClass> {
    (-40i64..40, 1u64..25).prop_map(|(a, n)| UnityClass::new(a, n))
}

fn mono_mat(n: usize, l: u64) -> impl Strategy<Value = MonoMat> {
    (Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(0..l as i64, n))
        .prop_map(move |(perm, s)| MonoMat::new(perm, s.into_iter().map(|a| UnityClass::new(a, l)).collect()).unwrap())
}

/// Random descriptor: p from a small list, tame characters with denominators prime to p.
fn descriptor() -> impl Strategy<Value = HypDescriptor> {
    (
        prop::sample::select(PRIMES),
        prop::collection::vec((0i64..24, 1u64..13), 1..8),
        prop::collection::vec((0i64..24, 1u64..13), 0..6),
    )
        .prop_filter_map("invalid descriptor", |(p, up, down)| {
            let mk = |v: Vec<(i64, u64)>| -> Vec<UnityClass> {
                v.into_iter().filter(|&(_, n)| n % p != 0).map(|(a, n)| UnityClass::new(a, n)).collect()
            };
            HypDescriptor::new(p, mk(up), mk(down)).ok()
        })
}

fn brute_kernel_size(a: &FqMat, lambda: Fq) -> u64 {
    let k = a.field();
    let n = a.n();
    let q = k.q();
    let mut count = 0;
    for idx in 0..q.pow(n as u32) {
        let v: Vec<Fq> = (0..n).map(|i| ((idx / q.pow(i as u32)) % q) as Fq).collect();
        let zero = (0..n).all(|i| {
            let mut s = k.mul(lambda, v[i]);
            s = k.neg(s);
            for (j, &vj) in v.iter().enumerate() {
                s = k.add(s, k.mul(a.get(i, j), vj));
            }
            s == 0
        });
        count += zero as u64;
    }
    count
}

fn stable_under(xs: &[UnityClass], t: UnityClass) -> bool {
    let mut a = xs.to_vec();
    let mut b: Vec<UnityClass> = xs.iter().map(|&x| x + t).collect();
    a.sort();
    b.sort();
    a == b
}

fn traces(d: i64, rest: &[(bool, i64)], shift: i64) -> TraceTable {
    let mut classes = vec![ClassTrace { id: "1A".into(), p_class: true, trace: Cyc::int(d + shift) }];
    for (i, &(pc, t)) in rest.iter().enumerate() {
        let t = if pc { t + shift } else { t * (shift + 1) };
        classes.push(ClassTrace { id: format!("c{i}"), p_class: pc, trace: Cyc::int(t) });
    }
    TraceTable::new("t", classes).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn unity_addition_is_a_group_law(u in unity_class(), v in unity_class(), w in unity_class()) {
        prop_assert_eq!((u + v) + w, u + (v + w));
        prop_assert_eq!(u + v, v + u);
        prop_assert_eq!(u + UnityClass::ONE, u);
        prop_assert_eq!(u + (-u), UnityClass::ONE);
        prop_assert_eq!(lcm(u.den(), v.den()) % (u + v).den(), 0);
        prop_assert_eq!(gcd(u.num(), u.den()), 1);
    }

    #[test]
    fn unity_scale_is_repeated_addition(u in unity_class(), k in 0i64..12) {
        let mut acc = UnityClass::ONE;
        for _ in 0..k {
            acc = acc + u;
        }
        prop_assert_eq!(u.scale(k), acc);
        prop_assert_eq!(u.scale(u.order() as i64), UnityClass::ONE);
    }

    #[test]
    fn cyc_norms(u in unity_class(), v in unity_class(), a in -5i64..5, b in -5i64..5) {
        prop_assert!(Cyc::root(u).abs2().is_one());
        let x = &Cyc::root(u).scale(a) + &Cyc::root(v).scale(b);
        prop_assert_eq!(x.abs2(), x.conj().abs2());
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!(&Cyc::root(u) * &Cyc::root(v), Cyc::root(u + v));
        let (re, im) = x.abs2().to_complex();
        let (xr, xi) = x.to_complex();
        prop_assert!((re - (xr * xr + xi * xi)).abs() < 1e-9 && im.abs() < 1e-9);
    }

    #[test]
    fn mult_order_is_least_exponent(a in 1u64..200, n in 2u64..200) {
        match mult_order(a, n) {
            Ok(k) => {
                let mut x = 1u64;
                for j in 1..=k {
                    x = x * a % n;
                    prop_assert_eq!(x == 1, j == k);
                }
            }
            Err(_) => prop_assert_ne!(gcd(a, n), 1),
        }
    }

    #[test]
    fn kernel_dimension_counts_vectors(
        q in prop::sample::select(vec![2u64, 3, 4, 5]),
        n in 1usize..4,
        seed in prop::collection::vec(0u64..1000, 9),
        lam in 0u64..1000,
    ) {
        let k = hypermono::algebra::field_of_order(q).unwrap();
        let e: Vec<Fq> = (0..n * n).map(|i| (seed[i] % q) as Fq).collect();
        let a = FqMat::from_entries(&k, e).unwrap();
        let lambda = (lam % q) as Fq;
        let dim = a.kernel_dim(lambda).unwrap();
        prop_assert_eq!(q.pow(dim as u32), brute_kernel_size(&a, lambda));
        prop_assert_eq!(dim + a.shift(lambda).rank(), n);
    }

    #[test]
    fn monomial_spectrum_pushforward(g in (1usize..6, 1u64..9).prop_flat_map(|(n, l)| mono_mat(n, l)), k in -6i64..12) {
        let s = spectrum(&g).unwrap();
        prop_assert_eq!(s.dim(), g.dim() as u64);
        let gk = if k >= 0 { power(&g, k as u64) } else { power(&g, (-k) as u64 * (spectrum_period(&s) - 1)) };
        prop_assert_eq!(spectrum(&gk).unwrap(), s.pushforward(k));
    }

    #[test]
    fn canonical_rotation_is_rotation_invariant(
        vals in prop::collection::vec(unity_class(), 1..7),
        t in unity_class(),
    ) {
        let s = Spectrum::from_values(vals);
        prop_assert_eq!(s.rotate(t).canonical_rotation(), s.canonical_rotation());
        prop_assert_eq!(s.rotate(t).dim(), s.dim());
    }

    #[test]
    fn descriptor_invariants(h in descriptor()) {
        prop_assert!(h.w() >= 1);
        prop_assert_eq!(h.w(), h.d() - h.m());
        prop_assert_eq!(h.max_slope(), (1, h.w() as u64));
        prop_assert_eq!(h.swan_infinity(), 1);
        let w = h.w() as u64;
        let p = h.p();
        let want = if w.is_multiple_of(p) {
            None
        } else {
            (1..64u32).map(|k| p.pow(k)).find(|pk| (pk - 1) % w == 0)
        };
        prop_assert_eq!(h.wild_image_order(), want);
        if let Some(k) = h.kummer_induced() {
            prop_assert_eq!(h.d() as u64 % k, 0);
            prop_assert_eq!(gcd(k, p), 1);
            prop_assert!(h.m() == 0 || (h.m() as u64).is_multiple_of(k));
            prop_assert!(stable_under(h.upstairs(), UnityClass::new(1, k)));
            prop_assert!(stable_under(h.downstairs(), UnityClass::new(1, k)));
        }
    }

    #[test]
    fn determinant_ignores_odd_full_groups(h in descriptor(), half in 0u64..6) {
        let n = 2 * half + 1;
        prop_assume!(n % h.p() != 0);
        let mut up: Vec<UnityClass> = h.upstairs().to_vec();
        up.extend((0..n).map(|a| UnityClass::new(a as i64, n)));
        let extended = HypDescriptor::new(h.p(), up, h.downstairs().to_vec());
        prop_assume!(extended.is_ok());
        prop_assert_eq!(extended.unwrap().determinant_char(), h.determinant_char());
    }

    #[test]
    fn splus_respects_obstructions(h in descriptor(), prim in prop::sample::select(vec![Primitivity::Yes, Primitivity::No, Primitivity::Unknown])) {
        let v = splus_verdict(&h, prim);
        if !tensor_induction_candidates(&h).is_empty() || !indecomposability_ok(&h).ok {
            prop_assert!(!v.is_guaranteed());
        }
        if prim == Primitivity::No {
            prop_assert!(!v.is_guaranteed());
        }
        if let Status::Guaranteed { checks, .. } = &v.status {
            for c in checks {
                prop_assert!(c.holds(), "{}", c);
            }
        }
    }

    #[test]
    fn weil_spectrum_is_a_class_function(seed in 0u64..10_000, i in 0u64..2) {
        let grp = ClassicalGroup::new(Family::Linear, 3, 3).unwrap();
        let s = grp.sample(2, seed);
        let (g, h) = (&s[0], &s[1]);
        let conj = h.mul(g).mul(&h.inverse().unwrap());
        let spec = WeilCharSpec::new(Family::Linear, 3, 3, i).unwrap();
        let a = weil_spectrum(&spec, g).unwrap();
        prop_assert_eq!(a.dim(), spec.degree());
        prop_assert_eq!(a, weil_spectrum(&spec, &conj).unwrap());
    }

    #[test]
    fn ppd_is_primitive(p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]), k in 1u32..13) {
        prop_assume!((p as f64).powi(k as i32) < 1e18);
        match ppd(p, k).unwrap() {
            Some(l) => {
                prop_assert!(is_prime(l));
                prop_assert_eq!(mult_order(p, l).unwrap(), k as u64);
                if k > 1 {
                    prop_assert_eq!(l % k as u64, 1);
                }
            }
            None => {
                let exception = (p == 2 && (k == 1 || k == 6)) || (k == 2 && (p + 1).is_power_of_two());
                prop_assert!(exception, "no ppd for ({}, {})", p, k);
            }
        }
    }

    #[test]
    fn brauer_transfer_symmetry(
        d1 in 2i64..20,
        m1 in 0i64..6,
        a in -1i64..6,
        rest in prop::collection::vec((any::<bool>(), -5i64..15), 0..6),
    ) {
        prop_assume!(m1 < d1 && m1 + a >= 0);
        let t1 = traces(d1, &rest, 0);
        let t2 = traces(d1, &rest, a);
        let fwd = brauerp_transfer(&t1, &t2, (d1, m1)).unwrap().unwrap();
        prop_assert_eq!((fwd.a, fwd.d, fwd.m), (a, d1 + a, m1 + a));
        let back = brauerp_transfer(&t2, &t1, (fwd.d, fwd.m)).unwrap().unwrap();
        prop_assert_eq!((back.a, back.d, back.m), (-a, d1, m1));
    }

    #[test]
    fn brauer_transfer_additivity(
        d1 in 2i64..20,
        m1 in 0i64..4,
        a in 0i64..4,
        b in 0i64..4,
        rest in prop::collection::vec((any::<bool>(), -5i64..15), 0..6),
    ) {
        prop_assume!(m1 < d1);
        let t1 = traces(d1, &rest, 0);
        let t2 = traces(d1, &rest, a);
        let t3 = traces(d1, &rest, a + b);
        let x = brauerp_transfer(&t1, &t2, (d1, m1)).unwrap().unwrap();
        let y = brauerp_transfer(&t2, &t3, (x.d, x.m)).unwrap().unwrap();
        let z = brauerp_transfer(&t1, &t3, (d1, m1)).unwrap().unwrap();
        prop_assert_eq!((y.d, y.m, x.a + y.a), (z.d, z.m, z.a));
    }

    #[test]
    fn sawin_accepts_valid_inputs(a in 1u64..40, b in 1u64..40, p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])) {
        prop_assume!(gcd(a, b) == 1);
        let c = sawin(a, b, p, SawinSide::QuotientAtC);
        prop_assert_eq!(c.is_ok(), (a + b) % p == 0);
        let s = sawin(a, b, p, SawinSide::QuotientAtA);
        prop_assert_eq!(s.is_ok(), a % p == 0);
    }

    #[test]
    fn heisenberg_lift_is_projective(
        (p, f, eps) in prop::sample::select(vec![(3u64, 1u32, None), (5, 1, None), (3, 2, None), (2, 1, Some(Eps::Plus)), (2, 1, Some(Eps::Minus))]),
        raw in prop::collection::vec(0u64..100, 8),
    ) {
        let n = if p == 2 { 2 } else { 1 };
        let model = heisenberg_irrep(p, n, f, eps, 64).unwrap();
        let k = model.field().clone();
        let q = k.q();
        let v: Vec<Fq> = raw[..2 * n].iter().map(|&x| (x % q) as Fq).collect();
        let w: Vec<Fq> = raw[4..4 + 2 * n].iter().map(|&x| (x % q) as Fq).collect();
        let vw: Vec<Fq> = v.iter().zip(&w).map(|(&a, &b)| k.add(a, b)).collect();
        let prod = model.rho(&v).unwrap().op(&model.rho(&w).unwrap());
        let sum = model.rho(&vw).unwrap();
        prop_assert_eq!(prod.perm(), sum.perm());
        let diffs: Vec<UnityClass> = prod.scalars().iter().zip(sum.scalars()).map(|(&a, &b)| a - b).collect();
        prop_assert!(diffs.windows(2).all(|d| d[0] == d[1]));
    }
}

fn spectrum_period(s: &Spectrum) -> u64 {
    s.iter().fold(1, |acc, (u, _)| lcm(acc, u.order()))
}

#[test]
fn landau_is_nondecreasing() {
    let vals: Vec<u128> = (1..=80).map(|n| landau(n).unwrap()).collect();
    assert!(vals.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn alt2_part_i_needs_p_prime_to_n() {
    for n in 5u32..40 {
        for p in (2..=n as u64 - 3).filter(|&p| is_prime(p)) {
            assert_eq!(alt2_family(n, None, p).is_ok(), !(n as u64).is_multiple_of(p), "n={n} p={p}");
        }
    }
}

#[test]
fn group_law_for_monomials() {
    let g = MonoMat::new(vec![1, 0, 2], vec![UnityClass::new(1, 4), UnityClass::ONE, UnityClass::new(1, 2)]).unwrap();
    assert!(power(&g, 8).is_identity());
    assert!(!power(&g, 4).is_identity());
}
