use cxdim_core::DefiningGraph;
use cxdim_roundtree::*;
use proptest::prelude::*;

fn eleven() -> DefiningGraph {
    DefiningGraph::uniform(11, 3).unwrap()
}

#[test]
fn two_stages_pass_every_audit() {
    let tree = build_round_tree(&eleven(), 2, 2).unwrap();
    let r = audit_inductive_hypotheses(&tree);
    assert!(r.pass, "{:#?}", r.stages);
    assert_eq!((r.v, r.h, r.big_m), (2, 5, 3));
    let polys: Vec<usize> = r.stages.iter().map(|s| s.polygons).collect();
    assert_eq!(polys, vec![3, 11, 51]);
    let addresses: Vec<usize> = r.stages.iter().map(|s| s.addresses).collect();
    assert_eq!(addresses, vec![1, 2, 4]);
    // a plain strip polygon meets exactly 2M - 1 polygons of the next strip
    let m = r.stages[2].meets.unwrap();
    assert_eq!((m.per_strip, m.all_strips, m.per_strip_edges), (5, 10, 3));
    let m = r.stages[1].meets.unwrap();
    assert!(m.all_strips <= 10);
    assert!((r.lower_bound.unwrap() - (1.0 + 2f64.ln() / 5f64.ln())).abs() < 1e-12);
}

#[test]
fn stage_three_breaks_horizontal_branching_at_a_corner() {
    let tree = build_round_tree(&eleven(), 2, 3).unwrap();
    let r = audit_inductive_hypotheses(&tree);
    let s = &r.stages[3];
    assert_eq!(s.polygons, 283);
    assert!(s.ih1.pass && s.ih3.pass && s.ih4.pass && s.convex);
    assert!(r.systolic.pass);
    let w = s.ih2.witness.as_deref().unwrap();
    assert!(w.contains("meets 6 > H = 5"), "{w}");
    let m = s.meets.unwrap();
    assert_eq!((m.per_strip, m.all_strips, m.per_strip_edges), (6, 11, 3));
    // every such excess comes with a corner polygon in the strip
    assert!(tree.stages[3].strips.iter().any(|st| st.polygons.iter().any(|p| p.corner)));
    assert!(tree.stages[2].strips.iter().all(|st| st.polygons.iter().all(|p| !p.corner)));
    assert!(!r.pass);
}

#[test]
fn tree_lines_have_the_stated_lengths() {
    let tree = build_round_tree(&eleven(), 2, 2).unwrap();
    for st in &tree.stages {
        for b in &st.branches {
            assert_eq!(b.left.len() - 1, 4 + 2 * st.n);
            assert_eq!(b.right.len() - 1, 4 + 2 * st.n);
        }
    }
}

#[test]
fn every_mutation_is_caught() {
    let tree = build_round_tree(&eleven(), 2, 2).unwrap();
    for m in Mutation::ALL {
        let (bad, poly) = tree.mutated(m);
        let r = audit_inductive_hypotheses(&bad);
        assert!(!r.pass, "{m:?}");
        let failing: Vec<(usize, &str, &Check)> = r
            .stages
            .iter()
            .flat_map(|s| [(s.stage, "IH1", &s.ih1), (s.stage, "IH2", &s.ih2), (s.stage, "IH4", &s.ih4)])
            .filter(|(_, _, c)| !c.pass)
            .collect();
        let expected = match m {
            Mutation::RelabelIntoTriple => "IH4",
            Mutation::DeletePolygon => "IH1",
            Mutation::ShareStripPolygon => "IH2",
        };
        let (stage, _, check) = failing.iter().find(|(_, name, _)| *name == expected).unwrap_or_else(|| panic!("{m:?}: {failing:?}"));
        let w = check.witness.as_deref().unwrap();
        assert!(!w.is_empty());
        match m {
            Mutation::RelabelIntoTriple => {
                assert_eq!(*stage, 2);
                assert!(w.contains(&poly.to_string()), "{w}");
            }
            Mutation::DeletePolygon => assert!(w.contains("not a disk"), "{w}"),
            Mutation::ShareStripPolygon => assert_eq!(*stage, 2),
        }
    }
}

#[test]
fn unscaled_corners_fail_the_simplex_condition() {
    let tree = build_round_tree(&eleven(), 2, 2).unwrap();
    let c = check_strictly_systolic(&tree, 1.0);
    assert!(!c.simplex_ok);
    assert!((c.max_simplex_sum - 1.0).abs() < 1e-12);
    assert!(c.simplex_witness.unwrap().contains("angle sum"));
    let c = check_strictly_systolic(&tree, 0.75);
    assert!(c.pass);
    assert!((c.max_simplex_sum - 23.0 / 24.0).abs() < 1e-12);
    assert!(c.min_cycle_length.unwrap() >= 2.0 - 1e-9);
    assert_eq!(c.three_flag, "vacuous");
}

#[test]
fn forbidden_triples_cycle_lexicographically() {
    let tree = build_round_tree(&eleven(), 2, 1).unwrap();
    assert_eq!(tree.forbidden_triple(0), [0, 1, 2]);
    assert_eq!(tree.forbidden_triple(1), [0, 1, 3]);
    assert_eq!(tree.forbidden_triple(165), [0, 1, 2]);
    assert_eq!(tree.stages[1].forbidden_triple_index, 1);
}

#[test]
fn preconditions() {
    assert!(matches!(build_round_tree(&DefiningGraph::uniform(13, 3).unwrap(), 3, 1), Err(RoundTreeError::Precondition(_))));
    assert!(build_round_tree(&DefiningGraph::uniform(14, 3).unwrap(), 3, 1).is_ok());
    assert!(lower_bound(10, 3, None).is_err());
}

#[test]
fn three_strips_on_fourteen_generators() {
    let tree = build_round_tree(&DefiningGraph::uniform(14, 3).unwrap(), 3, 1).unwrap();
    let r = audit_inductive_hypotheses(&tree);
    assert!(r.pass, "{:#?}", r.stages);
    assert_eq!(r.stages[1].addresses, 3);
    assert!((r.lower_bound.unwrap() - (1.0 + 3f64.ln() / 5f64.ln())).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 4, ..ProptestConfig::default() })]

    #[test]
    fn mixed_labels_pass_through_stage_two(big in 4u32..=5, mask in proptest::collection::vec(any::<bool>(), 55)) {
        let mut bits = mask.into_iter();
        let mut labels = vec![vec![0u32; 11]; 11];
        for i in 0..11 {
            for j in i + 1..11 {
                let l = if bits.next().unwrap() { big } else { 3 };
                labels[i][j] = l;
                labels[j][i] = l;
            }
        }
        let g = DefiningGraph::from_fn(11, |i, j| labels[i][j]).unwrap();
        let tree = build_round_tree(&g, 2, 2).unwrap();
        let r = audit_inductive_hypotheses(&tree);
        for s in &r.stages {
            prop_assert!(s.ih1.pass && s.ih2.pass && s.ih3.pass && s.ih4.pass, "{:?}", s);
            prop_assert_eq!(s.addresses, 2usize.pow(s.stage as u32));
        }
        prop_assert!(r.systolic.pass);
    }
}
