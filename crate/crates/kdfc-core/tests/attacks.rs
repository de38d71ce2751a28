use kdfc_core::attacks::{
    build_snow2_tables, gd_closure, gd_search, keystream_needed, linearization_size, log2_big, pileup_bias,
    recurrence_row_tables, IndexTables, KDFC_TABLE_ROWS,
};
use kdfc_core::snow2::snow2_char_poly;
use kdfc_core::Error;
use proptest::prelude::*;

#[test]
fn bias_cells() {
    let f1 = pileup_bias(-27.61, 250);
    assert!((f1 - -6653.5).abs() <= 0.1, "{f1}");
    assert!((keystream_needed(f1) - 13307.0).abs() <= 0.1);
    let f2 = pileup_bias(-15.496, 250);
    assert!((f2 - -3625.0).abs() <= 0.1, "{f2}");
    assert!((keystream_needed(f2) - 7250.0).abs() <= 0.1);
    assert!((keystream_needed(-86.9) - 173.8).abs() < 1e-9);
    assert_eq!(pileup_bias(-7.25, 1), -7.25);
}

#[test]
fn linearization_counts() {
    let small = linearization_size(544, 2);
    assert_eq!(small.to_string(), "148241");
    assert!((log2_big(&small) - 17.0).abs() <= 0.2);
    let big = linearization_size(16416, 497);
    let l = log2_big(&big);
    assert!((l - 3207.0).abs() <= 2.0, "{l}");
    assert_eq!(linearization_size(100, 0).to_string(), "1");
    assert_eq!(linearization_size(20, 20), num_bigint::BigUint::from(1u32 << 20));
}

#[test]
fn snow2_table_shape() {
    let t = build_snow2_tables();
    assert_eq!(t.node_count(), 56);
    assert_eq!(t.rows().len(), 57);
    assert_eq!(t.rows()[0], vec![0, 2, 11, 16]);
    assert_eq!(t.rows()[18], vec![18, 20, 29, 34]);
    assert_eq!(t.rows()[19], vec![4, 35, 37]);
    assert_eq!(t.rows()[37], vec![22, 53, 55]);
    assert_eq!(t.rows()[38], vec![0, 15, 36, 37]);
    assert_eq!(t.rows()[56], vec![18, 33, 54, 55]);
}

#[test]
fn kdfc_table_shape() {
    let t = recurrence_row_tables(&snow2_char_poly(), KDFC_TABLE_ROWS).unwrap();
    assert_eq!(t.node_count(), 1542);
    assert_eq!(t.rows().len(), 3 * 514);
    assert_eq!(&t.rows()[0][..4], &[512, 510, 504, 502]);
    assert_eq!(&t.rows()[0][249..], &[5, 0]);
    assert_eq!(&t.rows()[1][..4], &[513, 511, 505, 503]);
    assert_eq!(&t.rows()[1][250..], &[1]);
    assert_eq!(t.rows()[513][0], 1025);
    assert_eq!(*t.rows()[513].last().unwrap(), 513);
    assert_eq!(t.rows()[514], vec![4, 1026, 1028]);
    assert_eq!(t.rows()[515], vec![5, 1027, 1029]);
    assert_eq!(t.rows()[1027], vec![517, 1539, 1541]);
    assert_eq!(t.rows()[1028], vec![0, 15, 1027, 1028]);
    assert_eq!(t.rows()[1029], vec![1, 16, 1028, 1029]);
    assert_eq!(t.rows()[1541], vec![513, 528, 1540, 1541]);
}

#[test]
fn snow2_search() {
    let t = build_snow2_tables();
    let path = gd_search(&t, 12).unwrap();
    println!("snow2 basis {} {:?}", path.len(), path.nodes);
    assert!(path.len() <= 9);
    assert_eq!(gd_closure(&t, &path.nodes).len(), 56);
    let mut dedup = path.nodes.clone();
    dedup.sort_unstable();
    dedup.dedup();
    assert_eq!(dedup.len(), path.len());
    assert_eq!(path.complexity_log2(32), 32 * path.len());
}

#[test]
fn no_cover_reported() {
    let t = build_snow2_tables();
    assert!(matches!(gd_search(&t, 2), Err(Error::NoCover { stages: 2 })));
}

#[test]
fn kdfc_tables_first_stage_runs() {
    let t = recurrence_row_tables(&snow2_char_poly(), KDFC_TABLE_ROWS).unwrap();
    assert!(matches!(gd_search(&t, 1), Err(Error::NoCover { .. })));
    assert!(gd_closure(&t, &[]).is_empty());
}

fn exhaustive_min(t: &IndexTables, max_k: usize) -> Option<usize> {
    let n = t.node_count();
    for k in 1..=max_k {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            if gd_closure(t, &idx).len() == n {
                return Some(k);
            }
            // next combination
            let mut i = k;
            while i > 0 && idx[i - 1] == n - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    None
}

#[test]
fn toy_tables_match_exhaustive() {
    let t = IndexTables::new(vec![vec![0, 1, 2]], 3).unwrap();
    assert_eq!(gd_search(&t, 4).unwrap().len(), 2);
    assert_eq!(exhaustive_min(&t, 3), Some(2));
    let t = IndexTables::new(vec![vec![0, 1], vec![1, 2]], 3).unwrap();
    assert_eq!(gd_closure(&t, &[0]), vec![0, 1, 2]);
    assert_eq!(gd_search(&t, 4).unwrap().len(), 1);
    // two independent chains need one guess each
    let t = IndexTables::new(vec![vec![0, 1], vec![1, 2], vec![3, 4], vec![4, 5, 6]], 7).unwrap();
    assert_eq!(exhaustive_min(&t, 4), Some(3));
    assert_eq!(gd_search(&t, 6).unwrap().len(), 3);
}

fn table_strategy() -> impl Strategy<Value = IndexTables> {
    (4usize..10).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::btree_set(0..n, 2..4), 1..8).prop_map(move |rows| {
            IndexTables::new(rows.into_iter().map(|r| r.into_iter().collect()).collect(), n).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn closure_is_monotone_and_idempotent(t in table_strategy(), a in prop::collection::vec(0usize..10, 0..4), b in prop::collection::vec(0usize..10, 0..4)) {
        let ca = gd_closure(&t, &a);
        let cc = gd_closure(&t, &ca);
        prop_assert_eq!(&ca, &cc);
        let mut ab = a.clone();
        ab.extend(&b);
        let cab = gd_closure(&t, &ab);
        prop_assert!(ca.iter().all(|x| cab.contains(x)));
        for x in a.iter().filter(|&&x| x < t.node_count()) {
            prop_assert!(ca.contains(x));
        }
    }

    #[test]
    fn search_close_to_exhaustive(t in table_strategy()) {
        let n = t.node_count();
        let best = exhaustive_min(&t, 4.min(n));
        if let Some(k) = best {
            let found = gd_search(&t, n).unwrap();
            prop_assert_eq!(gd_closure(&t, &found.nodes).len(), n);
            // greedy extension may overshoot; it must never beat the optimum
            prop_assert!(found.len() >= k);
            prop_assert!(found.len() <= k + 2, "found {} optimum {}", found.len(), k);
        }
    }
}
