use kz_core::arith::{int, rat, RFMatrix};
use kz_core::assembly::{assemble_product, swap_solution, verify_full_system, BasePointConfig};
use kz_core::builder::{fundamental_solution, numeric_params, pole_degree_profile};
use kz_core::coords::{check_leading_asymptotics, to_u_coordinates};
use kz_core::KzError;

#[test]
fn product_is_identity_at_base_point() {
    let base = BasePointConfig::new(vec![rat(1, 2), int(-3), int(4)]).unwrap();
    for rho in [-1, 2] {
        let sol = assemble_product(3, rho, &base).unwrap();
        assert!(verify_full_system(&sol.product, 3, &int(rho)).all_passed());
        assert!(sol.product.eval(&base.points).unwrap().determinant() != int(0));
        assert_eq!(sol.factors.len(), 3);
    }
}

#[test]
fn swapped_solution_still_solves() {
    let sol = assemble_product(3, -1, &BasePointConfig::default_for(3)).unwrap();
    let swapped = swap_solution(&sol.product, 1, &int(-1)).unwrap();
    assert!(verify_full_system(&swapped, 3, &int(-1)).all_passed());
}

#[test]
fn coincident_base_points_are_rejected() {
    assert!(matches!(BasePointConfig::new(vec![int(0), int(0), int(2)]), Err(KzError::DegenerateBasePoints)));
}

#[test]
fn numeric_pole_locations() {
    let xi = numeric_params(&[int(1), rat(5, 2), int(-2)]);
    for rho in [-2i64, 1] {
        let sol = fundamental_solution(4, rho, &xi).unwrap();
        let prof = pole_degree_profile(&sol).unwrap();
        let m = rho.unsigned_abs() as usize;
        assert!(prof.pole_orders.iter().all(|&p| p <= m));
        assert_eq!(prof.poly_degree, Some(if rho > 0 { 3 * m } else { m }));
    }
}

#[test]
fn solutions_do_not_depend_on_the_sum_of_coordinates() {
    let sol = assemble_product(4, -1, &BasePointConfig::default_for(4)).unwrap();
    let wu = to_u_coordinates(&sol.product).unwrap();
    assert!(wu.entries().iter().all(|e| !e.contains_var(3)));
}

#[test]
fn leading_asymptotics_four_points() {
    let sol = assemble_product(4, -1, &BasePointConfig::default_for(4)).unwrap();
    let la = check_leading_asymptotics(&sol.product, 4, -1).unwrap();
    assert_eq!(la.orders, la.expected);
    assert!(la.basis_change.determinant() != int(0));
}

#[test]
fn identity_has_trivial_asymptotics() {
    let id = RFMatrix::identity(3, 3);
    let la = check_leading_asymptotics(&id, 3, 0).unwrap();
    assert!(la.orders.iter().flatten().all(|&x| x == 0));
}
