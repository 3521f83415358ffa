use nilcone::linalg::{is_nilpotent, rat, RationalMatrix};
use nilcone::liealg::{
    centralizer_dim_oracle, classical_nilpotent, contains, nilradical_basis, parabolic_basis, richardson_class,
    AlgebraKind, FlagSpec,
};
use nilcone::partition::{enumerate_partitions, Partition, PartitionFilter};

#[test]
fn richardson_centralizer_equals_levi_dimension() {
    let mut flags = Vec::new();
    for n in 1..=3 {
        flags.extend(FlagSpec::all(AlgebraKind::sp(n)));
    }
    for m in 1..=5 {
        flags.extend(FlagSpec::all(AlgebraKind::gl(m)));
    }
    for flag in flags {
        let p = parabolic_basis(&flag);
        let n = nilradical_basis(&p);
        let class = richardson_class(&flag, 30, 9, 5).unwrap();
        let z = centralizer_dim_oracle(flag.kind(), &class.representative).unwrap();
        assert_eq!(z, p.dim() - n.dim(), "{flag}: Richardson ({})", class.partition);
        assert_eq!(
            class.partition.centralizer_dim(flag.kind().form_kind()).unwrap(),
            z,
            "{flag}"
        );
    }
}

#[test]
fn nilradical_span_is_nilpotent_on_all_zero_one_combinations() {
    let kinds = [AlgebraKind::gl(3), AlgebraKind::sl(4), AlgebraKind::sp(2), AlgebraKind::so(5), AlgebraKind::so(4)];
    for kind in kinds {
        for flag in FlagSpec::all(kind) {
            let n = nilradical_basis(&parabolic_basis(&flag));
            if n.dim() > 12 {
                continue;
            }
            for mask in 0u32..(1 << n.dim()) {
                let mut x = RationalMatrix::zero(kind.size());
                for (i, b) in n.elements().iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        x = x.add(b).unwrap();
                    }
                }
                assert!(is_nilpotent(&x), "{flag} mask {mask:b}");
            }
        }
    }
}

#[test]
fn parabolics_contain_their_nilradicals() {
    for kind in [AlgebraKind::gl(5), AlgebraKind::sp(3), AlgebraKind::so(6), AlgebraKind::so(7)] {
        for flag in FlagSpec::all(kind) {
            let p = parabolic_basis(&flag);
            let n = nilradical_basis(&p);
            assert_eq!(p.dim() + n.dim(), kind.dim(), "{flag}");
            assert!(n.elements().iter().all(|x| p.spans(x) && contains(kind, x)), "{flag}");
        }
    }
}

#[test]
fn classical_nilpotents_for_every_admissible_partition() {
    for m in 1..=8 {
        let mut cases: Vec<(AlgebraKind, Partition)> = enumerate_partitions(m, PartitionFilter::Orthogonal)
            .into_iter()
            .map(|mu| (AlgebraKind::so(m), mu))
            .collect();
        if m % 2 == 0 {
            cases.extend(
                enumerate_partitions(m, PartitionFilter::Symplectic)
                    .into_iter()
                    .map(|mu| (AlgebraKind::sp(m / 2), mu)),
            );
        }
        for (kind, mu) in cases {
            let e = classical_nilpotent(kind, &mu).unwrap();
            assert!(contains(kind, &e));
            assert_eq!(nilcone::linalg::jordan_type(&e).unwrap(), mu);
        }
    }
}

#[test]
fn gl_centralizers_match_formula() {
    for m in 1..=6 {
        for mu in enumerate_partitions(m, PartitionFilter::All) {
            let e = nilcone::liealg::jordan_nilpotent(&mu);
            let oracle = centralizer_dim_oracle(AlgebraKind::gl(m), &e).unwrap();
            assert_eq!(oracle, mu.centralizer_dim(nilcone::partition::FormKind::Gl).unwrap(), "({mu})");
        }
    }
}

#[test]
fn membership_rejects_non_members() {
    let x = RationalMatrix::from_flat(2, vec![rat(1), rat(0), rat(0), rat(1)]).unwrap();
    assert!(contains(AlgebraKind::gl(2), &x));
    assert!(!contains(AlgebraKind::sl(2), &x));
    assert!(!contains(AlgebraKind::sp(1), &x));
    assert!(!contains(AlgebraKind::so(2), &x));
    assert!(!contains(AlgebraKind::gl(3), &x));
}
