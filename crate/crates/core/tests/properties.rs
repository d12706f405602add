mod common;

use common::{bareiss_rank, coordinate_product, product};
use cralg::algebra::{
    direct_sum, preset_algebra, tensor_product, Algebra, AlgebraElement, ComplexAlgebraElement,
};
use cralg::autalg::{lie_bracket, VectorFieldPoly};
use cralg::cli::expr::parse_expression;
use cralg::linalg;
use cralg::poly::{AlgebraPoly, Monomial, Poly, Table, VarTable};
use cralg::scalar::{gi, int, rat, Gaussian, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

const PRESETS: [&str; 6] = [
    "reals",
    "complex_as_real",
    "dual",
    "split",
    "truncated_poly(3)",
    "reals^2",
];

fn table() -> Table {
    VarTable::new(
        vec![("z1".into(), 1), ("z2".into(), 1)],
        vec![("u1".into(), 2)],
    )
    .unwrap()
}

fn hol_table() -> Table {
    VarTable::new(vec![("z1".into(), 1), ("w1".into(), 2)], vec![]).unwrap()
}

fn mono(exps: &[u16]) -> Monomial {
    Monomial::new(exps.iter().copied().collect())
}

fn poly_strategy(table: Table, max_exp: u16, hol_only: bool) -> impl Strategy<Value = Poly> {
    let nvars = table.nvars();
    let hol = table.hol_count();
    let term = (
        proptest::collection::vec(0..=max_exp, nvars),
        -4i64..=4,
        -4i64..=4,
    );
    proptest::collection::vec(term, 0..5).prop_map(move |terms| {
        Poly::from_terms(
            &table,
            terms.into_iter().map(|(mut e, re, im)| {
                if hol_only {
                    e[hol..].iter_mut().for_each(|x| *x = 0);
                }
                (mono(&e), gi(re, im))
            }),
        )
    })
}

fn polys() -> impl Strategy<Value = Poly> {
    poly_strategy(table(), 2, false)
}

proptest! {
    #[test]
    fn ring_axioms(a in polys(), b in polys(), c in polys()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_identically_zero());
    }

    #[test]
    fn conjugation_and_real_parts(a in polys(), b in polys()) {
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        let re = a.re();
        let im = a.im();
        prop_assert!(re.is_real() && im.is_real());
        prop_assert_eq!(&re + &im.scale(&gi(0, 1)), a.clone());
        prop_assert!((&a * &a.conjugate()).is_real());
    }

    #[test]
    fn grades_sum_back(a in polys()) {
        let t = table();
        let mut sum = Poly::zero(&t);
        for (w, part) in a.grade_decompose() {
            prop_assert_eq!(part.homogeneous_weight(), Some(w));
            sum = &sum + &part;
        }
        prop_assert_eq!(sum, a);
    }

    #[test]
    fn leibniz_rule(a in polys(), b in polys(), pos in 0usize..5) {
        let lhs = (&a * &b).derivative(pos);
        let rhs = &(&a.derivative(pos) * &b) + &(&a * &b.derivative(pos));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_parses_back(a in polys()) {
        let t = table();
        let text = a.to_string();
        prop_assert_eq!(parse_expression(&text, &t).unwrap(), a, "{}", text);
    }
}

fn coeff_vec(l: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    proptest::collection::vec((-3i64..=3, -3i64..=3), l)
}

fn algebra_poly(
    a: &Algebra,
    table: &Table,
    terms: Terms,
) -> AlgebraPoly {
    let mut p = AlgebraPoly::zero(table, a);
    for (e, c) in terms {
        let coeffs: Vec<Gaussian> = c.into_iter().map(|(re, im)| gi(re, im)).collect();
        let el = ComplexAlgebraElement::new(a, coeffs).unwrap();
        p = p.add(&AlgebraPoly::term(table, mono(&e), &el)).unwrap();
    }
    p
}

type Terms = Vec<(Vec<u16>, Vec<(i64, i64)>)>;

fn expansion_case() -> impl Strategy<Value = (usize, Terms, Terms)> {
    (0..PRESETS.len()).prop_flat_map(|idx| {
        let l = preset_algebra(PRESETS[idx]).unwrap().dim();
        let terms = move || {
            proptest::collection::vec((proptest::collection::vec(0u16..=2, 2), coeff_vec(l)), 0..4)
        };
        (Just(idx), terms(), terms())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn scalar_expansion_is_a_homomorphism((idx, ta, tb) in expansion_case()) {
        let a = preset_algebra(PRESETS[idx]).unwrap();
        let base = VarTable::new(vec![("z1".into(), 1)], vec![]).unwrap();
        let target = base.expanded(a.dim()).unwrap();
        let p = algebra_poly(&a, &base, ta);
        let q = algebra_poly(&a, &base, tb);
        let ep = p.scalar_expand(&target);
        let eq = q.scalar_expand(&target);
        let sum: Vec<Poly> = ep.iter().zip(&eq).map(|(x, y)| x + y).collect();
        prop_assert_eq!(p.add(&q).unwrap().scalar_expand(&target), sum);
        prop_assert_eq!(p.mul(&q).unwrap().scalar_expand(&target), coordinate_product(&a, &ep, &eq));
        let conj: Vec<Poly> = ep.iter().map(Poly::conjugate).collect();
        prop_assert_eq!(p.conjugate().scalar_expand(&target), conj);
    }
}

fn combined_algebra() -> impl Strategy<Value = Algebra> {
    let leaf = (0..PRESETS.len()).prop_map(|i| preset_algebra(PRESETS[i]).unwrap());
    (leaf.clone(), leaf, 0u8..3).prop_map(|(a, b, op)| match op {
        0 => a,
        1 => tensor_product(&a, &b).unwrap(),
        _ => direct_sum(&a, &b).unwrap(),
    })
}

fn rational_vec(l: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((-5i64..=5, 1i64..=3), l)
        .prop_map(|v| v.into_iter().map(|(n, d)| rat(n, d)).collect())
}

fn with_elements(n: usize) -> impl Strategy<Value = (Algebra, Vec<Vec<Rational>>)> {
    combined_algebra().prop_flat_map(move |a| {
        let l = a.dim();
        (Just(a), proptest::collection::vec(rational_vec(l), n))
    })
}

proptest! {
    #[test]
    fn combined_algebras_satisfy_axioms((a, els) in with_elements(3)) {
        prop_assert!(a.validate().is_ok());
        let (x, y, z) = (&els[0], &els[1], &els[2]);
        prop_assert_eq!(product(&a, x, y), product(&a, y, x));
        prop_assert_eq!(product(&a, &product(&a, x, y), z), product(&a, x, &product(&a, y, z)));
        let mut one = vec![Rational::zero(); a.dim()];
        one[0] = int(1);
        prop_assert_eq!(&product(&a, &one, x), x);
    }

    #[test]
    fn norm_is_submultiplicative((a, els) in with_elements(2)) {
        let x = AlgebraElement::new(&a, els[0].clone()).unwrap();
        let y = AlgebraElement::new(&a, els[1].clone()).unwrap();
        let xy = x.mul(&y).unwrap();
        prop_assert_eq!(xy.coeffs(), &product(&a, x.coeffs(), y.coeffs())[..]);
        prop_assert!(xy.operator_norm_bound() <= x.operator_norm_bound() * y.operator_norm_bound());
    }
}

#[test]
fn presets_satisfy_axioms() {
    for name in PRESETS
        .iter()
        .chain(&["truncated_poly(1)", "reals^4", "truncated_poly(5)"])
    {
        assert!(preset_algebra(name).unwrap().validate().is_ok(), "{name}");
    }
}

fn matrix() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..=7).prop_flat_map(|ncols| {
        let entry = prop_oneof![3 => Just(0i64), 2 => -3i64..=3];
        (
            Just(ncols),
            proptest::collection::vec(proptest::collection::vec(entry, ncols), 0..=6),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn nullspace_matches_fraction_free_rank((ncols, rows) in matrix()) {
        let exact: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
        let sparse: Vec<_> = exact.iter().map(|r| linalg::sparse(r)).collect();
        let basis = linalg::nullspace(ncols, sparse.clone());
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        let rank = bareiss_rank(big, ncols);
        prop_assert_eq!(basis.len(), ncols - rank);
        prop_assert_eq!(linalg::rank(ncols, sparse.clone()), rank);
        for v in &basis {
            for r in &exact {
                let dot = r.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b);
                prop_assert!(dot.is_zero());
            }
        }
        let full = linalg::nullspace(ncols, basis.iter().map(|v| linalg::sparse(v)).collect());
        prop_assert_eq!(full.len(), rank);
        prop_assert!(basis.iter().all(|v| v.iter().any(|x| !x.is_zero())));
        prop_assert!(basis.iter().flatten().all(|x| x.abs() < rat(1_000_000, 1)));
    }
}

fn fields() -> impl Strategy<Value = VectorFieldPoly> {
    let t = hol_table();
    (
        poly_strategy(t.clone(), 2, true),
        poly_strategy(t.clone(), 2, true),
    )
        .prop_map(move |(f, g)| VectorFieldPoly::new(&t, vec![f], vec![g]).unwrap())
}

proptest! {
    #[test]
    fn brackets_are_antisymmetric_and_satisfy_jacobi(x in fields(), y in fields(), z in fields()) {
        let br = |a: &VectorFieldPoly, b: &VectorFieldPoly| lie_bracket(a, b).unwrap();
        prop_assert!(br(&x, &y).add(&br(&y, &x)).is_zero());
        let jacobi = br(&x, &br(&y, &z)).add(&br(&y, &br(&z, &x))).add(&br(&z, &br(&x, &y)));
        prop_assert!(jacobi.is_zero());
    }
}

fn local_element() -> impl Strategy<Value = ComplexAlgebraElement> {
    let names = ["reals", "dual", "truncated_poly(3)", "truncated_poly(4)"];
    (0..names.len()).prop_flat_map(move |i| {
        let a = preset_algebra(names[i]).unwrap();
        let l = a.dim();
        proptest::collection::vec((-2i64..=2, -2i64..=2), l).prop_map(move |c| {
            let coeffs = c.into_iter().map(|(re, im)| gi(re, im)).collect();
            ComplexAlgebraElement::new(&a, coeffs).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn local_algebras_non_invertible_iff_nilpotent(x in local_element()) {
        prop_assert!(x.algebra().is_local());
        prop_assert_eq!(x.is_invertible(), !x.is_nilpotent());
    }
}

#[test]
fn non_invertible_elements_of_split_are_not_a_subspace() {
    let s = preset_algebra("split").unwrap();
    assert!(!s.is_local());
    let p = ComplexAlgebraElement::basis(&s, 1);
    let q = ComplexAlgebraElement::one(&s)
        .add(&p.scale(&gi(-1, 0)))
        .unwrap();
    assert!(!p.is_invertible() && !q.is_invertible());
    assert!(p.add(&q).unwrap().is_invertible());
}
