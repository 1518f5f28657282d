use subcodes::codes::{build_so_code, is_self_orthogonal};
use subcodes::designs::{fano_incidence, is_sgdd, SgddParams};
use subcodes::deza::build_family;
use subcodes::partitions::{
    build_so_code_quotient, check_orbit_matrix_conditions, commutes_with_cells, orbit_partition, quotient,
    quotient_family, quotient_product_identity, sgdd_quotient_identity, verify_equitable, EquitablePartition,
};
use subcodes::{Error, Field, IntMatrix};

fn complete(n: usize) -> IntMatrix {
    IntMatrix::ones(n, n).sub(&IntMatrix::identity(n)).unwrap()
}

#[test]
fn deza_members_collapse_to_scaled_complete_graphs() {
    for (desc, q) in [("2", 2usize), ("3", 3)] {
        let field = Field::parse(desc).unwrap();
        let fam = build_family(&field).unwrap();
        let part = EquitablePartition::blocks(2 * q + 3, q * q).unwrap();
        let expected = complete(2 * q + 3).scalar_mul(q as i64).unwrap();
        for m in fam.members() {
            assert!(verify_equitable(m, &part).unwrap().is_pass());
            assert!(commutes_with_cells(m, &part).unwrap());
            assert_eq!(quotient(m, &part).unwrap().matrix, expected);
        }
        // every quotient vanishes mod p, so the span is degenerate
        assert_eq!(
            build_so_code_quotient(fam.members(), &part, &field).unwrap_err(),
            Error::DegenerateSpan
        );
    }
}

#[test]
fn quotient_family_rejects_unequal_cells() {
    let fam = build_family(&Field::parse("2").unwrap()).unwrap();
    let mut cells: Vec<Vec<usize>> = (0..7).map(|b| (4 * b..4 * b + 4).collect()).collect();
    let moved = cells[0].pop().unwrap();
    cells[1].push(moved);
    let part = EquitablePartition::new(28, cells).unwrap();
    assert!(matches!(
        quotient_family(fam.members(), &part, 2),
        Err(Error::Hypothesis(_))
    ));
}

#[test]
fn fano_orbit_matrices() {
    let fano = fano_incidence();
    // x -> 2x mod 7 has orbits {0}, {1,2,4}, {3,5,6}
    let mult: Vec<usize> = (0..7).map(|x| 2 * x % 7).collect();
    let part = orbit_partition(7, &[mult.clone()]).unwrap();
    assert_eq!(part.cell_sizes(), vec![1, 3, 3]);
    assert!(verify_equitable(&fano, &part).unwrap().is_pass());
    // full cyclic group: one orbit of length 7
    let shift: Vec<usize> = (0..7).map(|x| (x + 1) % 7).collect();
    let part = orbit_partition(7, &[shift, mult]).unwrap();
    assert_eq!(part.num_cells(), 1);
    let om = quotient(&fano, &part).unwrap().matrix;
    assert!(check_orbit_matrix_conditions(&om, 7, 3, 1, 7).unwrap());
    assert!(!check_orbit_matrix_conditions(&om, 7, 3, 2, 7).unwrap());
}

#[test]
fn sgdd_canonical_quotient_identity() {
    // (J_m - I_m) ⊗ J_n: k = n(m-1), λ1 = k, λ2 = n(m-2)
    for (m, n) in [(3, 2), (4, 3), (5, 2)] {
        let a = complete(m).kron(&IntMatrix::ones(n, n)).unwrap();
        let k = (n * (m - 1)) as i64;
        let params = SgddParams::new(m * n, k, m, n, k, (n * (m - 2)) as i64).unwrap();
        assert!(is_sgdd(&a, &params).unwrap());
        assert!(sgdd_quotient_identity(&a, &params).unwrap());
    }
}

#[test]
fn quotient_identity_and_code_on_a_block_family() {
    // members of the form B ⊗ J_2 commute with the block partition
    let f2 = Field::parse("2").unwrap();
    let fam: Vec<IntMatrix> = [complete(4), IntMatrix::identity(4)]
        .iter()
        .map(|b| b.kron(&IntMatrix::ones(2, 2)).unwrap())
        .collect();
    let part = EquitablePartition::blocks(4, 2).unwrap();
    for a in &fam {
        assert!(commutes_with_cells(a, &part).unwrap());
        for b in &fam {
            assert!(quotient_product_identity(a, b, &part).unwrap());
        }
    }
    assert_eq!(quotient(&fam[0], &part).unwrap().matrix, complete(4).scalar_mul(2).unwrap());
    // every product carries a factor J_2 J_2 = 2 J_2
    let built = build_so_code(&fam, &f2).unwrap();
    // J - I is invertible mod 2, so (J - I) ⊗ J_2 and I ⊗ J_2 share a row space
    assert_eq!(built.representatives, 3);
    assert_eq!(built.code.len(), 2);
    assert!(is_self_orthogonal(&built.code));
    // the quotients are 2(J - I) and 2I, both zero mod 2
    assert_eq!(build_so_code_quotient(&fam, &part, &f2).unwrap_err(), Error::DegenerateSpan);
}
