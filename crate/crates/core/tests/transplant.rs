mod common;

use common::*;
use gassmann_core::error::TransplantError;
use gassmann_core::group::{double_cosets, IDENTITY};
use gassmann_core::linalg::QMatrix;
use gassmann_core::transplant::{
    equivariance_residual, find_invertible_intertwiner, frobenius_embed, intertwiner_basis, invariant_basis,
    invariant_projector, is_tensor_invariant, orthogonalize, orthogonalize_matrix, transplant_composite_form,
    transplant_operator_form, transplantation, verify_commutation, GModule, Intertwiner, IntertwinerSearch,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn catalog_intertwiner(f: &Fixture) -> Intertwiner {
    let basis = intertwiner_basis(&f.table, &f.x1, &f.x2).unwrap();
    find_invertible_intertwiner(&basis, IntertwinerSearch::default()).unwrap()
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[test]
fn gl32_basis_is_fano_incidence() {
    let f = fixture("gl32");
    let basis = intertwiner_basis(&f.table, &f.x1, &f.x2).unwrap();
    assert_eq!(basis.len(), 2);
    assert_eq!(basis.shape(), (7, 7));
    let ms = basis.matrices();
    let mut row_sums: Vec<i64> = ms.iter().map(|m| m[0].iter().sum()).collect();
    row_sums.sort();
    assert_eq!(row_sums, vec![3, 4]);
    // The orbit through the identity pair is incidence.
    let n = &ms[basis.orbit_of(0, 0)];
    for (r, row) in n.iter().enumerate() {
        assert_eq!(row.iter().sum::<i64>(), 3);
        assert_eq!((0..7).map(|c| n[c][r]).sum::<i64>(), 3);
    }
    let nt: Vec<Vec<i64>> = (0..7).map(|c| (0..7).map(|r| n[r][c]).collect()).collect();
    let nnt = int_mul(n, &nt);
    for (i, row) in nnt.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            assert_eq!(v, if i == j { 3 } else { 1 });
        }
    }
    let total: Vec<Vec<i64>> = (0..7).map(|r| (0..7).map(|c| ms[0][r][c] + ms[1][r][c]).collect()).collect();
    assert!(total.iter().flatten().all(|&v| v == 1));
}

#[test]
fn gl32_determinants_match_closed_form() {
    // a·N + b·(J − N) has eigenvalues 3a + 4b once and ±√2 (a − b) three
    // times each.
    let f = fixture("gl32");
    let basis = intertwiner_basis(&f.table, &f.x1, &f.x2).unwrap();
    let incident = basis.orbit_to_double_coset[basis.orbit_of(0, 0)];
    for a in -3i64..=3 {
        for b in -3i64..=3 {
            let mut phi = vec![b, b];
            phi[incident] = a;
            let s = basis.intertwiner(phi);
            let expected = -8 * (3 * a + 4 * b) * (a - b).pow(6);
            assert_eq!(s.det, BigInt::from(expected), "a={a} b={b}");
            assert_eq!(leibniz_det(&s.matrix), expected as i128);
            if a == b {
                assert!(!s.is_invertible());
            }
        }
    }
}

#[test]
fn positive_pairs_have_small_invertible_intertwiners() {
    for name in POSITIVE.iter().chain(["s3"].iter()) {
        let f = fixture(name);
        let s = catalog_intertwiner(&f);
        assert!(s.max_norm() <= 3, "{name}");
        assert!(!s.det.is_zero(), "{name}");
        assert_eq!(BigInt::from(leibniz_det(&s.matrix)), s.det, "{name}");
        assert!(s.is_equivariant(&f.table, &f.x1, &f.x2));
        for g in 0..f.table.order() {
            let lhs = int_mul(&s.matrix, &coset_matrix(&f.x1, g));
            let rhs = int_mul(&coset_matrix(&f.x2, g), &s.matrix);
            assert_eq!(lhs, rhs, "{name} g={g}");
        }
    }
}

#[test]
fn scan_is_minimal_in_max_norm() {
    for name in POSITIVE {
        let f = fixture(name);
        let basis = intertwiner_basis(&f.table, &f.x1, &f.x2).unwrap();
        let s = catalog_intertwiner(&f);
        let c = s.max_norm();
        let k = basis.len() as u32;
        let base = 2 * (c - 1) + 1;
        for code in 0..(base as u64).pow(k) {
            let mut rest = code;
            let phi: Vec<i64> = (0..k)
                .map(|_| {
                    let d = (rest % base as u64) as i64 - (c - 1);
                    rest /= base as u64;
                    d
                })
                .collect();
            assert!(!basis.intertwiner(phi).is_invertible(), "{name}");
        }
    }
}

#[test]
fn s4_has_no_invertible_intertwiner() {
    let f = fixture("s4");
    let basis = intertwiner_basis(&f.table, &f.x1, &f.x2).unwrap();
    assert_eq!(basis.len(), 3);
    let err = find_invertible_intertwiner(&basis, IntertwinerSearch::default()).unwrap_err();
    assert_eq!(
        err,
        TransplantError::NoInvertibleFound {
            scanned: 342,
            max_norm: 3,
            random_tries: 64
        }
    );
    // Independently: every combination has determinant 0.
    for a in -3i64..=3 {
        for b in -3i64..=3 {
            for c in -3i64..=3 {
                assert_eq!(leibniz_det(&basis.combine(&[a, b, c])), 0);
            }
        }
    }
}

#[test]
fn equal_subgroups_admit_the_identity() {
    let f = fixture("gl32");
    let basis = intertwiner_basis(&f.table, &f.x1, &f.x1).unwrap();
    let mut phi = vec![0; basis.len()];
    phi[basis.identity_double_coset()] = 1;
    let s = basis.intertwiner(phi);
    for (r, row) in s.matrix.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            assert_eq!(v, i64::from(r == c));
        }
    }
    assert_eq!(s.det, BigInt::one());
    assert!(find_invertible_intertwiner(&basis, IntertwinerSearch::default()).is_ok());

    let whole = gassmann_core::Subgroup::whole(&f.table);
    let x = gassmann_core::group::left_cosets(&f.table, &whole).unwrap();
    let basis = intertwiner_basis(&f.table, &x, &x).unwrap();
    let s = find_invertible_intertwiner(&basis, IntertwinerSearch::default()).unwrap();
    assert_eq!(s.phi, vec![1]);
    assert_eq!(s.matrix, vec![vec![1]]);
    assert_eq!(s.det, BigInt::one());
}

#[test]
fn trivial_module_is_scalar() {
    for name in POSITIVE {
        let f = fixture(name);
        let s = catalog_intertwiner(&f);
        let dcs = double_cosets(&f.table, &f.h2, &f.h1).unwrap();
        let sum: i64 = dcs.classes.iter().enumerate().map(|(d, c)| s.phi[d] * c.len() as i64).sum();
        let t = transplant_operator_form(&f.table, &GModule::trivial(&f.table), &f.x1, &f.x2, &s).unwrap();
        assert_eq!(t.matrix.rows(), 1);
        assert_eq!(
            *t.matrix.get(0, 0),
            BigRational::new(BigInt::from(sum), BigInt::from(f.h1.order() as i64))
        );
    }
    // phi = [0, 1] on the non-incident double coset of size 96.
    let f = fixture("gl32");
    let s = catalog_intertwiner(&f);
    assert_eq!(s.phi, vec![0, 1]);
    let t = transplant_operator_form(&f.table, &GModule::trivial(&f.table), &f.x1, &f.x2, &s).unwrap();
    assert_eq!(*t.matrix.get(0, 0), q(4));
}

#[test]
fn operator_and_composite_forms_agree() {
    for name in POSITIVE {
        let f = fixture(name);
        let s = catalog_intertwiner(&f);
        let modules = [
            ("regular", GModule::regular(&f.table)),
            ("natural", GModule::natural(&f.table)),
            ("cosets", GModule::cosets(&f.x1)),
        ];
        for (label, module) in modules {
            let a = transplant_operator_form(&f.table, &module, &f.x1, &f.x2, &s).unwrap();
            let b = transplant_composite_form(&f.table, &module, &f.x1, &f.x2, &s).unwrap();
            assert_eq!(a.matrix, b.matrix, "{name} {label}");
            assert_eq!(a.source, b.source);
            assert_eq!(a.target, b.target);
        }
    }
}

/// Operator form with the weight read at `g⁻¹` instead of `g`.
fn inverse_weighted(f: &Fixture, module: &GModule, s: &Intertwiner) -> QMatrix {
    let dcs = double_cosets(&f.table, &f.h2, &f.h1).unwrap();
    let source = invariant_basis(module, &f.h1);
    let target = invariant_basis(module, &f.h2);
    let p2 = invariant_projector(module, &f.h2);
    let cols: Vec<Vec<BigRational>> = (0..source.dim())
        .map(|j| {
            let b = source.basis.column(j);
            let mut acc = vec![BigRational::zero(); module.dim()];
            for g in 0..f.table.order() {
                let w = q(s.phi[dcs.class_of[f.table.inv(g)]]);
                for (a, v) in acc.iter_mut().zip(module.apply(g, &b)) {
                    *a += &w * v;
                }
            }
            let scale = BigRational::new(BigInt::one(), BigInt::from(f.h1.order()));
            let acc: Vec<BigRational> = acc.into_iter().map(|v| v * &scale).collect();
            target.coordinates(&p2.mul_vec(&acc)).unwrap()
        })
        .collect();
    QMatrix::from_columns(target.dim(), &cols)
}

#[test]
fn inverse_weighting_is_not_the_composite() {
    let differs = POSITIVE.iter().any(|name| {
        let f = fixture(name);
        let s = catalog_intertwiner(&f);
        let module = GModule::regular(&f.table);
        let composite = transplant_composite_form(&f.table, &module, &f.x1, &f.x2, &s).unwrap();
        inverse_weighted(&f, &module, &s) != composite.matrix
    });
    assert!(differs);
}

#[test]
fn regular_module_transplantation_is_invertible() {
    let f = fixture("gl32");
    let s = catalog_intertwiner(&f);
    let t = transplantation(&f.table, &GModule::regular(&f.table), &f.x1, &f.x2, &s).unwrap();
    assert_eq!(t.source.dim(), 7);
    assert_eq!(t.target.dim(), 7);
    assert_eq!(t.rank(), 7);
}

#[test]
fn singular_intertwiner_is_rank_deficient() {
    let f = fixture("gl32");
    let basis = intertwiner_basis(&f.table, &f.x1, &f.x2).unwrap();
    let s = basis.intertwiner(vec![1, 1]);
    let err = transplantation(&f.table, &GModule::regular(&f.table), &f.x1, &f.x2, &s).unwrap_err();
    assert!(matches!(err, TransplantError::RankDeficient { rank: 1, expected: 7 }));
}

#[test]
fn scaling_phi_scales_the_transplantation() {
    let f = fixture("affine8");
    let s = catalog_intertwiner(&f);
    let basis = intertwiner_basis(&f.table, &f.x1, &f.x2).unwrap();
    let doubled = basis.intertwiner(s.phi.iter().map(|v| 2 * v).collect());
    let module = GModule::regular(&f.table);
    let t1 = transplant_operator_form(&f.table, &module, &f.x1, &f.x2, &s).unwrap();
    let t2 = transplant_operator_form(&f.table, &module, &f.x1, &f.x2, &doubled).unwrap();
    assert_eq!(t2.matrix, t1.matrix.scale(&q(2)));
}

#[test]
fn transplantation_commutes_with_equivariant_operators() {
    for name in POSITIVE {
        let f = fixture(name);
        let s = catalog_intertwiner(&f);
        let module = GModule::regular(&f.table);
        let t = transplantation(&f.table, &module, &f.x1, &f.x2, &s).unwrap();
        for class in &f.classes.classes {
            let delta = module.element_sum(class);
            assert!(verify_commutation(&f.table, &module, &delta, &t).unwrap(), "{name}");
        }
        // Right multiplications commute with the left regular action.
        let n = f.table.order();
        for k in [1, n / 2, n - 1] {
            let delta = QMatrix::from_fn(n, n, |r, c| {
                if f.table.mul(c, k) == r {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            });
            assert!(verify_commutation(&f.table, &module, &delta, &t).unwrap(), "{name} k={k}");
        }
    }
}

#[test]
fn non_equivariant_delta_is_rejected() {
    let f = fixture("gl32");
    let s = catalog_intertwiner(&f);
    let module = GModule::regular(&f.table);
    let t = transplantation(&f.table, &module, &f.x1, &f.x2, &s).unwrap();
    let x = f.table.generator_indices()[0];
    let delta = module.element_sum(&[x]);
    assert!(matches!(
        verify_commutation(&f.table, &module, &delta, &t),
        Err(TransplantError::DeltaNotEquivariant { .. })
    ));
}

#[test]
fn frobenius_embedding_is_invariant() {
    for name in POSITIVE {
        let f = fixture(name);
        let module = GModule::natural(&f.table);
        let inv = invariant_basis(&module, &f.h1);
        for j in 0..inv.dim() {
            let t = frobenius_embed(&module, &f.x1, &inv.basis.column(j)).unwrap();
            assert!(is_tensor_invariant(&f.table, &module, &f.x1, &t));
            // Column at the identity coset is the vector itself.
            assert_eq!(t.column(f.x1.coset_of(IDENTITY)), inv.basis.column(j));
        }
        let mut v = vec![BigRational::zero(); module.dim()];
        let moved = (0..module.dim())
            .find(|&p| f.h1.members().iter().any(|&h| f.table.element(h).apply(p) != p))
            .unwrap();
        v[moved] = BigRational::one();
        assert_eq!(frobenius_embed(&module, &f.x1, &v).unwrap_err(), TransplantError::NotInvariant);
    }
}

#[test]
fn matrix_modules_are_validated() {
    let f = fixture("s3");
    let perm_module = GModule::natural(&f.table);
    let rho: Vec<QMatrix> = (0..f.table.order()).map(|g| perm_module.rho(g)).collect();
    let m = GModule::from_matrices(&f.table, rho.clone()).unwrap();
    assert_eq!(m.dim(), 3);
    let mut broken = rho;
    broken.swap(1, 2);
    assert!(matches!(
        GModule::from_matrices(&f.table, broken),
        Err(TransplantError::NotAModule(_))
    ));
}

#[test]
fn orthogonalization_converges_on_catalog() {
    for name in POSITIVE.iter().chain(["s3"].iter()) {
        let f = fixture(name);
        let s = catalog_intertwiner(&f);
        let o = orthogonalize(&s, 1e-13).unwrap();
        assert!(o.iterations <= 100);
        assert!(o.residual < 1e-12, "{name}: {}", o.residual);
        let eq = equivariance_residual(&f.table, &o.u, &f.x1, &f.x2);
        assert!(eq < 1e-11, "{name}: {eq}");
    }
}

#[test]
fn orthogonalization_edge_cases() {
    let perm = vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]];
    let o = orthogonalize_matrix(&perm, 1e-12).unwrap();
    assert_eq!(o.iterations, 0);
    assert!(matches!(
        orthogonalize_matrix(&[vec![1, 1], vec![1, 1]], 1e-12),
        Err(TransplantError::Singular)
    ));
    assert!(matches!(
        orthogonalize_matrix(&[vec![1, 0], vec![0, 1e6 as i64]], 0.0),
        Err(TransplantError::NoConvergence { iterations: 100, .. })
    ));
}
