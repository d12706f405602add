mod common;

use common::{quartic, sphere};
use cralg::algebra::preset_algebra;
use cralg::autalg::{
    build_tangency_system, check_bracket_closure, compute_aut, is_tangent, lie_bracket,
    s_exhaustion_report, s_holomorphic_component, solve_nullspace, tangency_residual,
    verify_basis_shape, verify_shape_of_fields, AutError, AutOptions, CapRule, VectorFieldPoly,
};
use cralg::cli::expr::parse_expression;
use cralg::linalg;
use cralg::scalar::{int, Rational};
use cralg::surface::{algebraize, make_surface, ModelSurface};

fn field(q: &ModelSurface, comps: &[&str]) -> VectorFieldPoly {
    let t = q.table();
    let polys: Vec<_> = comps
        .iter()
        .map(|c| parse_expression(c, t).unwrap())
        .collect();
    let (f, g) = polys.split_at(q.n());
    VectorFieldPoly::new(t, f.to_vec(), g.to_vec()).unwrap()
}

fn dims(q: &ModelSurface) -> Vec<(i64, usize)> {
    compute_aut(q, &AutOptions::default())
        .unwrap()
        .nonzero_dims()
        .into_iter()
        .collect()
}

#[test]
fn residual_of_real_translation_vanishes() {
    let q = sphere();
    let r = tangency_residual(&q, &field(&q, &["0", "7/3"])).unwrap();
    assert!(r.iter().all(|p| p.is_identically_zero()));
}

#[test]
fn residual_of_quartic_scaling_vanishes() {
    let q = quartic();
    // beta = 2 + 5i, so 4 Re(beta) = 8
    let x = field(&q, &["(2 + 5*i)*z1", "8*w1"]);
    assert!(is_tangent(&q, &x));
    let bad = field(&q, &["(2 + 5*i)*z1", "9*w1"]);
    assert!(!is_tangent(&q, &bad));
}

#[test]
fn residual_of_z_d_dw_is_im_z() {
    let q = sphere();
    let r = tangency_residual(&q, &field(&q, &["0", "z1"])).unwrap();
    assert_eq!(r[0], parse_expression("Im(z1)", q.table()).unwrap());
}

#[test]
fn residual_rejects_foreign_fields() {
    let q = sphere();
    let other = quartic();
    let x = field(&other, &["z1", "0"]);
    let q2 = make_surface(2, 1, &["z1*zb1 + z2*zb2"], &[1, 1], &[2]).unwrap();
    let y = field(&q2, &["z1", "0", "0"]);
    assert!(tangency_residual(&q, &x).is_err());
    assert_eq!(tangency_residual(&q, &y), Err(AutError::VariableMismatch));
}

#[test]
fn single_weight_solution_spaces() {
    let s = sphere();
    assert_eq!(solve_nullspace(&build_tangency_system(&s, -2)).len(), 1);
    assert_eq!(solve_nullspace(&build_tangency_system(&s, 1)).len(), 2);
    let q = quartic();
    for mu in 1..=3 {
        assert_eq!(
            solve_nullspace(&build_tangency_system(&q, mu)).len(),
            0,
            "weight {mu}"
        );
    }
}

#[test]
fn trivial_nullspaces() {
    let zero: Vec<Vec<(usize, Rational)>> = vec![vec![]; 2];
    let basis = linalg::nullspace(3, zero);
    let identity: Vec<Vec<Rational>> = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| if i == j { int(1) } else { int(0) })
                .collect()
        })
        .collect();
    assert_eq!(basis, identity);
    let eye: Vec<Vec<(usize, Rational)>> = (0..3).map(|i| vec![(i, int(1))]).collect();
    assert!(linalg::nullspace(3, eye).is_empty());
}

#[test]
fn sphere_and_quartic_dimensions() {
    assert_eq!(
        dims(&sphere()),
        vec![(-2, 1), (-1, 2), (0, 2), (1, 2), (2, 1)]
    );
    assert_eq!(dims(&quartic()), vec![(-4, 1), (0, 2), (4, 1)]);
}

#[test]
fn dual_quartic_dimensions() {
    let q = algebraize(&quartic(), &preset_algebra("dual").unwrap()).unwrap();
    assert_eq!(dims(&q), vec![(-4, 2), (0, 5), (4, 2)]);
}

#[test]
fn default_caps() {
    let b = compute_aut(&sphere(), &AutOptions::default()).unwrap();
    assert_eq!((b.floor, b.cap, b.cap_rule), (-2, 4, CapRule::Default));
    let q = quartic();
    let b = compute_aut(&q, &AutOptions::default()).unwrap();
    assert_eq!((b.floor, b.cap), (-4, 12));
    assert!(b.cap_disclosure().contains("-4..=12"));
    let cubic = make_surface(1, 1, &["z1^2*zb1 + z1*zb1^2"], &[1], &[3]).unwrap();
    let b = compute_aut(&cubic, &AutOptions::default()).unwrap();
    assert_eq!((b.cap, b.cap_rule), (6, CapRule::Default));
    let b = compute_aut(
        &q,
        &AutOptions {
            max_weight: Some(0),
            with_s_part: false,
        },
    )
    .unwrap();
    assert_eq!(
        (b.cap, b.cap_rule, b.total_dim()),
        (0, CapRule::Override, 3)
    );
}

#[test]
fn every_basis_field_is_tangent() {
    for q in [sphere(), quartic()] {
        let b = compute_aut(&q, &AutOptions::default()).unwrap();
        for (w, x) in b.fields() {
            assert!(is_tangent(&q, &x.clone()), "weight {w}: {x}");
            assert_eq!(x.weight(), Some(w));
        }
    }
}

#[test]
fn weighted_euler_field_is_present() {
    for (q, euler) in [(sphere(), ["z1", "2*w1"]), (quartic(), ["z1", "4*w1"])] {
        let b = compute_aut(&q, &AutOptions::default()).unwrap();
        let x = field(&q, &euler);
        assert!(b.component(0).unwrap().contains(&x));
    }
}

#[test]
fn degenerate_forms_are_rejected() {
    let q = make_surface(1, 2, &["z1*zb1", "2*z1*zb1"], &[1], &[2, 2]).unwrap();
    assert_eq!(
        compute_aut(&q, &AutOptions::default()).unwrap_err(),
        AutError::DegenerateSurface
    );
}

#[test]
fn brackets() {
    let q = sphere();
    let dw = field(&q, &["0", "1"]);
    let zdz = field(&q, &["z1", "0"]);
    assert!(lie_bracket(&dw, &zdz).unwrap().is_zero());
    let b = compute_aut(&q, &AutOptions::default()).unwrap();
    let x = &b.component(-1).unwrap().fields[0];
    let y = &b.component(1).unwrap().fields[0];
    let z = lie_bracket(x, y).unwrap();
    assert!(!z.is_zero());
    assert!(is_tangent(&q, &z));
    assert_eq!(z.weight(), Some(0));
    assert!(b.component(0).unwrap().contains(&z));
    assert!(lie_bracket(x, x).unwrap().is_zero());
    assert!(check_bracket_closure(&q, &b).ok());
}

#[test]
fn algebra_holomorphic_components() {
    let dual = preset_algebra("dual").unwrap();
    let ds = algebraize(&sphere(), &dual).unwrap();
    let c = s_holomorphic_component(&ds, 0).unwrap();
    assert_eq!(c.fields.len(), 4);
    assert!(c.embeds);
    let dq = algebraize(&quartic(), &dual).unwrap();
    assert_eq!(s_holomorphic_component(&dq, 0).unwrap().fields.len(), 4);
    let g4 = s_holomorphic_component(&dq, 4).unwrap();
    assert_eq!(g4.fields.len(), 2);
    assert!(s_holomorphic_component(&sphere(), 0).is_err());
}

#[test]
fn exhaustion_reports() {
    let dual = preset_algebra("dual").unwrap();
    let r = s_exhaustion_report(&quartic(), &dual, None).unwrap();
    assert!(r.row(-4).unwrap().exhausted);
    assert!(r.row(4).unwrap().exhausted);
    let w0 = r.row(0).unwrap();
    assert_eq!((w0.s_dim, w0.dim_alg, w0.exhausted), (4, 5, false));
    assert!(r.scaling_holds());
    assert!(!r.exhausted());

    let r = s_exhaustion_report(&sphere(), &dual, None).unwrap();
    assert!(!r.row(0).unwrap().exhausted);

    let reals = preset_algebra("reals").unwrap();
    let r = s_exhaustion_report(&sphere(), &reals, None).unwrap();
    assert!(r.exhausted() && r.scaling_holds());
}

#[test]
fn shape_of_bidegree_22_bases() {
    let q = quartic();
    let b = compute_aut(&q, &AutOptions::default()).unwrap();
    let report = verify_basis_shape(&q, &b).unwrap();
    assert!(report.holds() && report.fd_holds);
    assert_eq!(report.checked, 4);

    let dq = algebraize(&q, &preset_algebra("dual").unwrap()).unwrap();
    let b = compute_aut(&dq, &AutOptions::default()).unwrap();
    assert!(verify_basis_shape(&dq, &b).unwrap().holds());

    let bad = field(&q, &["z1^2", "0"]);
    let report = verify_shape_of_fields(&q, std::iter::once((1, &bad))).unwrap();
    assert!(!report.holds());
    let s = sphere();
    let b = compute_aut(&s, &AutOptions::default()).unwrap();
    assert_eq!(
        verify_basis_shape(&s, &b).unwrap_err().code(),
        "WrongBidegree"
    );
}

#[test]
fn bases_are_deterministic() {
    let q = algebraize(&sphere(), &preset_algebra("split").unwrap()).unwrap();
    let opts = AutOptions {
        max_weight: None,
        with_s_part: true,
    };
    let render = |q: &ModelSurface| {
        compute_aut(q, &opts)
            .unwrap()
            .fields()
            .map(|(w, x)| format!("{w}: {x}"))
            .collect::<Vec<_>>()
    };
    assert_eq!(render(&q), render(&q));
}

#[test]
fn explicit_description_groups_parameters_by_weight() {
    let b = compute_aut(&quartic(), &AutOptions::default()).unwrap();
    let lines = b.explicit_description();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("F[z1] = "));
    assert!(lines[1].contains("p[-4,1]"));
}
