mod common;

use common::{quartic, sphere};
use cralg::algebra::preset_algebra;
use cralg::autalg::{compute_aut, AutOptions, VectorFieldPoly};
use cralg::cli::expr::parse_expression;
use cralg::flow::{
    exponentiate, one_parameter_check, s_flow_check, verify_flow_tangency, FormalFlow,
};
use cralg::poly::Poly;
use cralg::surface::{algebraize, ModelSurface};
use num_bigint::BigInt;
use num_rational::BigRational;

fn field(q: &ModelSurface, comps: &[&str]) -> VectorFieldPoly {
    let t = q.table();
    let polys: Vec<_> = comps
        .iter()
        .map(|c| parse_expression(c, t).unwrap())
        .collect();
    let (f, g) = polys.split_at(q.n());
    VectorFieldPoly::new(t, f.to_vec(), g.to_vec()).unwrap()
}

fn on_flow(f: &FormalFlow, text: &str) -> Poly {
    parse_expression(text, f.table()).unwrap()
}

fn factorial(m: u32) -> BigInt {
    (1..=m).map(BigInt::from).product()
}

fn central_binomial_over_4m(m: u32) -> BigRational {
    let num = factorial(2 * m);
    let den = factorial(m) * factorial(m) * BigInt::from(4).pow(m);
    BigRational::new(num, den)
}

#[test]
fn translation_flow_is_exact() {
    let q = sphere();
    let f = exponentiate(&field(&q, &["0", "5"]), 6);
    assert!(f.terminates());
    assert!(f.is_identity_at_zero());
    assert_eq!(f.component(1), &on_flow(&f, "w1 + 5*t"));
    assert_eq!(f.component(0), &on_flow(&f, "z1"));
    assert_eq!(f.t_degree(), 1);
}

#[test]
fn real_scaling_flow_is_exponential() {
    let q = quartic();
    let f = exponentiate(&field(&q, &["3*z1", "12*w1"]), 6);
    assert!(!f.terminates());
    for m in 0..=6u32 {
        let fact = factorial(m);
        let z = format!("3^{m}/{fact}*z1");
        let w = format!("12^{m}/{fact}*w1");
        assert_eq!(
            f.coefficient(0, m as u16),
            on_flow(&f, &z),
            "z at order {m}"
        );
        assert_eq!(
            f.coefficient(1, m as u16),
            on_flow(&f, &w),
            "w at order {m}"
        );
    }
}

#[test]
fn quartic_weight_four_flow() {
    let q = quartic();
    let x = field(&q, &["1/2*z1*w1", "w1^2"]);
    let f = exponentiate(&x, 6);
    assert!(!f.terminates());
    for m in 0..=6u32 {
        let c = central_binomial_over_4m(m);
        let z = format!("{}/{}*z1*w1^{m}", c.numer(), c.denom());
        assert_eq!(
            f.coefficient(0, m as u16),
            on_flow(&f, &z),
            "z at order {m}"
        );
        let w = format!("w1^{}", m + 1);
        assert_eq!(
            f.coefficient(1, m as u16),
            on_flow(&f, &w),
            "w at order {m}"
        );
    }
    assert!(verify_flow_tangency(&q, &f).unwrap().ok);
}

#[test]
fn sphere_weight_minus_one_flow() {
    let q = sphere();
    // p = 1 + i, so 2 i conj(p) = 2 + 2i and |p|^2 = 2
    let x = field(&q, &["1 + i", "(2 + 2*i)*z1"]);
    for n in 1..=6 {
        let f = exponentiate(&x, n);
        assert_eq!(f.terminates(), n >= 2);
        let expect = if n == 1 {
            "w1 + (2 + 2*i)*z1*t"
        } else {
            "w1 + (2 + 2*i)*z1*t + 2*i*t^2"
        };
        assert_eq!(f.component(1), &on_flow(&f, expect));
        assert_eq!(f.component(0), &on_flow(&f, "z1 + (1 + i)*t"));
        assert!(verify_flow_tangency(&q, &f).unwrap().ok, "order {n}");
    }
}

#[test]
fn non_tangent_field_fails_at_first_order() {
    let q = sphere();
    let f = exponentiate(&field(&q, &["0", "z1"]), 4);
    let r = verify_flow_tangency(&q, &f).unwrap();
    assert!(!r.ok);
    assert_eq!(r.first_bad_order, Some(1));
}

#[test]
fn flows_of_basis_fields_are_tangent_and_one_parameter() {
    for q in [sphere(), quartic()] {
        let b = compute_aut(&q, &AutOptions::default()).unwrap();
        for (w, x) in b.fields() {
            let f = exponentiate(x, 5);
            assert!(verify_flow_tangency(&q, &f).unwrap().ok, "weight {w}: {x}");
            assert!(one_parameter_check(&f), "weight {w}: {x}");
        }
    }
}

#[test]
fn termination_by_weight() {
    let s = sphere();
    let b = compute_aut(&s, &AutOptions::default()).unwrap();
    for w in [-2, -1] {
        for x in &b.component(w).unwrap().fields {
            assert!(exponentiate(x, 6).terminates(), "weight {w}");
        }
    }
    let q = quartic();
    let b = compute_aut(&q, &AutOptions::default()).unwrap();
    assert!(exponentiate(&b.component(-4).unwrap().fields[0], 6).terminates());
    assert!(!exponentiate(&b.component(4).unwrap().fields[0], 6).terminates());
    let zero = exponentiate(&VectorFieldPoly::zero(q.table(), 1), 3);
    assert!(zero.terminates() && zero.is_identity_at_zero());
}

#[test]
fn algebra_holomorphic_flows() {
    let dq = algebraize(&quartic(), &preset_algebra("dual").unwrap()).unwrap();
    let b = compute_aut(
        &dq,
        &AutOptions {
            max_weight: Some(0),
            with_s_part: true,
        },
    )
    .unwrap();
    let c = b.component(0).unwrap();
    assert_eq!(c.s_dim(), 4);
    for (x, s) in c.fields.iter().zip(&c.s_flags) {
        let f = exponentiate(x, 3);
        assert_eq!(s_flow_check(&dq, &f).unwrap(), *s, "{x}");
    }
}

#[test]
fn translations_regroup_over_every_algebra() {
    for name in ["split", "complex_as_real", "dual"] {
        let q = algebraize(&sphere(), &preset_algebra(name).unwrap()).unwrap();
        let b = compute_aut(
            &q,
            &AutOptions {
                max_weight: Some(-2),
                with_s_part: false,
            },
        )
        .unwrap();
        let c = b.component(-2).unwrap();
        assert_eq!(c.dim(), 2);
        for x in &c.fields {
            assert!(
                s_flow_check(&q, &exponentiate(x, 2)).unwrap(),
                "{name}: {x}"
            );
        }
    }
}

#[test]
fn s_flow_check_needs_an_algebraization() {
    let q = sphere();
    let f = exponentiate(&field(&q, &["0", "1"]), 2);
    assert_eq!(
        s_flow_check(&q, &f).unwrap_err().code(),
        "NotAnAlgebraization"
    );
}
