mod common;

use common::{brute_eta, brute_gamma, supports};
use proptest::prelude::*;
use tprim_core::engine::{power_entry, EtaResult, FamilyTrace, GammaResult};
use tprim_core::format::{parse_tensor, tensor_to_string, Layout};
use tprim_core::screening::{conclusions, filter_bits, filter_report};
use tprim_core::search::Relabeler;
use tprim_core::{
    eta, explicit_power, gamma, mat_exponent, BooleanMatrix, BooleanTensor, MatrixExpResult,
    MultiIndex, NestedIndex, Permutation,
};

const SHAPES: [(usize, usize); 11] = [
    (2, 1),
    (2, 2),
    (2, 3),
    (2, 4),
    (3, 2),
    (3, 3),
    (3, 4),
    (4, 2),
    (2, 5),
    (5, 2),
    (6, 2),
];

fn small_tensor() -> impl Strategy<Value = BooleanTensor> {
    (0..SHAPES.len(), any::<u64>(), 0..4u32).prop_map(|(s, bits, thin)| {
        let (m, n) = SHAPES[s];
        let len = n.pow(m as u32);
        let mask = if len == 64 {
            u64::MAX
        } else {
            (1u64 << len) - 1
        };
        // Dense patterns are mostly strongly primitive; OR-ing shifted copies
        // skews towards ones, AND-ing towards zeros, to cover both regimes.
        let bits = match thin {
            0 => bits,
            1 => bits | bits.rotate_left(17),
            2 => bits | bits.rotate_left(17) | bits.rotate_left(31),
            _ => bits & bits.rotate_left(11),
        };
        BooleanTensor::from_pattern(m, n, bits & mask).unwrap()
    })
}

fn with_perm() -> impl Strategy<Value = (BooleanTensor, Permutation)> {
    small_tensor().prop_flat_map(|t| {
        let n = t.dim();
        (Just(t), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|(t, p)| (t, Permutation::from_zero_based(p).unwrap()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn degrees_are_relabeling_invariant((t, p) in with_perm()) {
        let r = t.relabel(&p).unwrap();
        prop_assert_eq!(gamma(&t).unwrap().degree(), gamma(&r).unwrap().degree());
        prop_assert_eq!(eta(&t).unwrap().degree(), eta(&r).unwrap().degree());
        prop_assert_eq!(t.canonical_form().unwrap(), r.canonical_form().unwrap());
        prop_assert_eq!(r.relabel(&p.inverse()).unwrap(), t);
    }

    #[test]
    fn slices_match_entries(t in small_tensor()) {
        for i in 0..t.dim() {
            let s = t.slice(i + 1).unwrap();
            for p in 0..s.len() {
                let rest = s.decode(p);
                let mut idx = vec![i];
                idx.extend(&rest);
                prop_assert_eq!(s.get(&rest), t.get(&idx));
            }
            prop_assert_eq!(s.is_zero(), !t.ones_positions().iter().any(|x| x.as_slice()[0] == i + 1));
        }
    }

    #[test]
    fn representations_round_trip(t in small_tensor()) {
        let back = BooleanTensor::from_ones(t.order(), t.dim(), &t.ones_positions()).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(&BooleanTensor::from_dense_str(t.order(), t.dim(), &t.to_dense_string()).unwrap(), &t);
        for layout in [Layout::Ones, Layout::Dense] {
            prop_assert_eq!(&parse_tensor(&tensor_to_string(&t, layout)).unwrap(), &t);
        }
        prop_assert_eq!(t.ones_positions().len() + t.zero_positions().len(), t.len());
    }

    #[test]
    fn majorization_reads_diagonal_columns(t in small_tensor()) {
        let mm = t.majorization();
        for i in 0..t.dim() {
            for j in 0..t.dim() {
                let mut idx = vec![j; t.order()];
                idx[0] = i;
                prop_assert_eq!(mm.get(i, j), t.get(&idx));
            }
        }
        prop_assert_eq!(t.is_essentially_positive(), mm.is_all_ones());
    }

    #[test]
    fn verdicts_match_brute_force(t in small_tensor()) {
        let g = gamma(&t).unwrap();
        let e = eta(&t).unwrap();
        prop_assert_eq!(g.degree(), brute_gamma(&t));
        prop_assert_eq!(e.degree(), brute_eta(&t));
        if let (Some(g), Some(e)) = (g.degree(), e.degree()) {
            prop_assert!(g <= e);
        }
        if e.degree().is_some() {
            prop_assert!(g.degree().is_some());
        }
        if let GammaResult::NotPrimitive(c) = &g {
            prop_assert!(c.verify(&t).is_ok(), "{:?}", c);
        }
        if let EtaResult::NotStronglyPrimitive(c) = &e {
            prop_assert!(c.verify(&t).is_ok(), "{:?}", c);
        }
    }

    #[test]
    fn positivity_persists(t in small_tensor()) {
        if let Some(e) = eta(&t).unwrap().degree() {
            let mut trace = FamilyTrace::new(&t).unwrap();
            trace.extend_to(e + 3);
            for k in e..=e + 3 {
                prop_assert!(trace.level(k).is_full_only(t.dim()));
            }
        }
    }

    #[test]
    fn filters_never_contradict_the_engine(t in small_tensor()) {
        let bits = filter_bits(&t);
        prop_assert_eq!(bits, filter_report(&t).bits());
        let (not_primitive, not_strong) = conclusions(bits);
        if not_primitive {
            prop_assert!(gamma(&t).unwrap().degree().is_none());
        }
        if not_strong {
            prop_assert!(eta(&t).unwrap().degree().is_none());
        }
    }

    #[test]
    fn orbit_keys_agree(t in small_tensor()) {
        let r = Relabeler::new(t.order(), t.dim());
        let (key, size) = r.canonical(t.pattern().unwrap());
        let (ck, csize) = t.canonical_form().unwrap();
        prop_assert_eq!(ck.words(), &[key]);
        prop_assert_eq!(csize as u64, size);
        let rep = BooleanTensor::from_pattern(t.order(), t.dim(), key).unwrap();
        prop_assert_eq!(eta(&rep).unwrap().degree(), eta(&t).unwrap().degree());
        prop_assert_eq!(gamma(&rep).unwrap().degree(), gamma(&t).unwrap().degree());
    }

    #[test]
    fn matrices_reduce_to_exponents(bits in any::<u64>(), n in 1usize..=8) {
        let rows: Vec<Vec<u8>> = (0..n).map(|i| (0..n).map(|j| (bits >> ((i * n + j) % 64) & 1) as u8).collect()).collect();
        let a = BooleanMatrix::from_rows(&rows).unwrap();
        let t = a.to_tensor();
        let e = match mat_exponent(&a) {
            MatrixExpResult::Exponent(e) => Some(e),
            MatrixExpResult::NotPrimitive => None,
        };
        prop_assert_eq!(gamma(&t).unwrap().degree(), e);
        prop_assert_eq!(eta(&t).unwrap().degree(), e);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn families_match_explicit_powers(s in 0usize..6, bits in any::<u64>(), picks in prop::collection::vec(any::<u64>(), 8)) {
        let (m, n, k): (usize, usize, usize) = [(2, 3, 3), (2, 4, 3), (3, 2, 3), (3, 3, 2), (4, 2, 2), (5, 2, 2)][s];
        let len = n.pow(m as u32);
        let t = BooleanTensor::from_pattern(m, n, bits & ((1u64 << len) - 1)).unwrap();
        let mut trace = FamilyTrace::new(&t).unwrap();
        trace.extend_to(k);
        for level in 1..=k {
            let a = explicit_power(&t, level).unwrap();
            let engine: std::collections::BTreeSet<u64> = trace.level(level).members().iter().map(|x| x.mask()).collect();
            prop_assert_eq!(engine, supports(&a));
            // Spot entries through the tree index.
            for &r in &picks {
                let p = (r % a.len() as u64) as usize;
                let idx = a.decode(p);
                let flat: Vec<usize> = idx[1..].iter().map(|x| x + 1).collect();
                let col = NestedIndex::from_flat(&flat, level, m - 1).unwrap();
                prop_assert_eq!(power_entry(&t, level, idx[0] + 1, &col).unwrap(), a.get(&idx));
                let one_based = MultiIndex::from_zero_based(&idx);
                prop_assert_eq!(a.entry(&one_based).unwrap(), a.get(&idx));
            }
        }
    }
}
