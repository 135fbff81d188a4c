use proptest::prelude::*;

use super::*;
use crate::drawing::Drawing;
use crate::fixtures;
use crate::graph::Graph;

fn single(drawing: Drawing, witness: Option<Witness>) -> Corpus {
    let kind = if witness.is_some() {
        EntryKind::WitnessDerived
    } else {
        EntryKind::RandomPlanar
    };
    Corpus {
        seed: 0,
        params: CorpusParams::default(),
        entries: vec![CorpusEntry {
            id: 0,
            kind,
            origin: Origin::Triangulation {
                n: drawing.n(),
                chords: 0,
                dropped: 0,
            },
            drawing,
            witness,
        }],
    }
}

fn opts() -> VerifyOptions {
    VerifyOptions {
        exec: Execution::Sequential,
        ..VerifyOptions::default()
    }
}

fn record<'r>(report: &'r VerificationReport, case: &str) -> &'r Record {
    report
        .records
        .iter()
        .find(|r| r.case == case)
        .unwrap_or_else(|| panic!("no record {case}: {:#?}", report.records))
}

fn small_params() -> CorpusParams {
    CorpusParams {
        count: 10,
        n_min: 4,
        n_max: 6,
        ..CorpusParams::default()
    }
}

#[test]
fn subdiv_triangle() {
    let report = check(&single(Drawing::plain(Graph::cycle(3)), None), CheckId::Subdiv, &opts());
    let lower = record(&report, "k=3 d=0 lower");
    assert_eq!((lower.lhs.as_str(), lower.rhs.as_str()), ("c_0(G)=1", "c_0(G^(3))=2"));
    assert_eq!(lower.status, Status::Pass);
    let upper = record(&report, "k=3 d=0 upper");
    assert_eq!((upper.lhs.as_str(), upper.rhs.as_str()), ("c_0(G^(3))=2", "c_0(G)+1=2"));
    assert_eq!(upper.status, Status::Pass);
    assert_eq!(report.failed, 0);
}

#[test]
fn mono_petersen() {
    let report = check(&single(Drawing::plain(Graph::petersen()), None), CheckId::Mono, &opts());
    assert_eq!(report.failed, 0);
    assert_eq!(report.skipped, 0);
    let first = record(&report, "d=1 vs d=0");
    assert_eq!(first.rhs, "c_0(G)=3");
    let c1: usize = first.lhs.trim_start_matches("c_1(G)=").parse().unwrap();
    let second = record(&report, "d=2 vs d=1");
    let c2: usize = second.lhs.trim_start_matches("c_2(G)=").parse().unwrap();
    assert!(c2 <= c1 && c1 <= 3);
    // diameter 2: one cop anywhere is within 2 of the robber
    assert_eq!(c2, 1);
}

#[test]
fn map_star_witness() {
    let h = Graph::new(4, vec![(0, 3), (1, 3), (2, 3)]).unwrap();
    let is_face = vec![false, false, false, true];
    let (g, _) = crate::transform::map_from_witness(&h, &is_face).unwrap();
    assert_eq!(g.m(), 3);
    let w = Witness { graph: h, is_face };
    let report = check(&single(Drawing::plain(g), Some(w)), CheckId::Map, &opts());
    let r = record(&report, "c(G) <= c(H)");
    assert_eq!(
        (r.lhs.as_str(), r.rhs.as_str(), r.status),
        ("c(G)=1", "c(H)=1", Status::Pass)
    );
}

#[test]
fn corpus_is_deterministic() {
    let p = small_params();
    let a = gen_corpus(7, &p);
    let b = gen_corpus_with(7, &p, Execution::Sequential);
    assert_eq!(a, b);
    let c = gen_corpus(8, &p);
    assert_ne!(a.entries, c.entries);
}

#[test]
fn corpus_entries_validate() {
    let corpus = gen_corpus(3, &CorpusParams::default());
    assert_eq!(corpus.entries.len(), 100);
    for e in &corpus.entries {
        assert!(
            e.drawing.validate().is_empty(),
            "entry {} {:?}",
            e.id,
            e.drawing.validate()
        );
        assert_eq!(e.kind, CorpusParams::default().kinds[e.id % 5]);
    }
    for kind in EntryKind::ALL {
        assert!(corpus.entries.iter().any(|e| e.kind == kind));
    }
    assert!(corpus
        .entries
        .iter()
        .any(|e| e.kind == EntryKind::Random1Plane && !e.drawing.crossings().is_empty()));
}

#[test]
fn zero_density_is_planar() {
    let p = CorpusParams {
        count: 20,
        crossing_density: 0.0,
        kinds: vec![EntryKind::RandomPlanar, EntryKind::Random1Plane],
        ..CorpusParams::default()
    };
    for e in gen_corpus(11, &p).entries {
        assert!(e.drawing.crossings().is_empty());
        assert!(e.drawing.graph().is_connected());
    }
}

#[test]
fn random_one_plane_entries_are_one_plane() {
    let p = CorpusParams {
        count: 20,
        crossing_density: 1.0,
        kinds: vec![EntryKind::Random1Plane],
        ..CorpusParams::default()
    };
    let corpus = gen_corpus(5, &p);
    for e in &corpus.entries {
        assert!(e.drawing.max_crossings_per_edge() <= 1);
    }
    assert!(corpus.entries.iter().all(|e| !e.drawing.crossings().is_empty()));
}

#[test]
fn witness_entries_carry_their_map() {
    let p = CorpusParams {
        count: 10,
        kinds: vec![EntryKind::WitnessDerived],
        ..CorpusParams::default()
    };
    for e in gen_corpus(2, &p).entries {
        let w = e.witness.expect("witness");
        assert!(w.graph.n() <= 14);
        let (g, _) = crate::transform::map_from_witness(&w.graph, &w.is_face).unwrap();
        assert_eq!(&g, e.drawing.graph());
        assert!(g.is_connected());
    }
}

#[test]
fn every_check_accounts_for_every_entry() {
    let corpus = gen_corpus(1, &small_params());
    let report = check_many(&corpus, &CheckId::ALL, &opts());
    assert!(report.accounts_for_all());
    let failures: Vec<&Record> = report.failures().collect();
    assert!(failures.is_empty(), "{failures:#?}");
    assert!(report
        .records
        .iter()
        .all(|r| r.status != Status::Skip || r.reason.is_some()));
}

#[test]
fn reports_are_reproducible() {
    let corpus = gen_corpus(4, &small_params());
    let a = check(&corpus, CheckId::Retract, &opts());
    let b = check(
        &corpus,
        CheckId::Retract,
        &VerifyOptions {
            exec: Execution::Parallel,
            ..opts()
        },
    );
    assert_eq!(a, b);
}

#[test]
fn check_ids_round_trip() {
    for c in CheckId::ALL {
        assert_eq!(c.name().parse::<CheckId>().unwrap(), c);
        assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{}\"", c.name()));
    }
    assert!("NOPE".parse::<CheckId>().is_err());
}

#[test]
fn counts_compare() {
    let three = Count::Exactly(3);
    let over = Count::AtLeast { p: 4, budget: false };
    assert_eq!(le(Count::Exactly(1), three), Some(true));
    assert_eq!(le(over, three), Some(false));
    assert_eq!(le(three, over), Some(true));
    assert_eq!(le(over, over), None);
    assert_eq!(three.max(over).lo(), 4);
    assert_eq!(three.plus(1), Count::Exactly(4));
}

#[test]
fn gen_far_entries_pass_structure() {
    let corpus = Corpus {
        seed: 0,
        params: CorpusParams::default(),
        entries: vec![CorpusEntry {
            id: 0,
            kind: EntryKind::GeneratorDerived,
            origin: Origin::FarCrossings {
                seed: "c4".into(),
                m: 2,
                dist: 0,
                f: 2,
            },
            drawing: crate::transform::gen_far_crossings(&fixtures::bowtie_c4(), 0, 2)
                .unwrap()
                .drawing,
            witness: None,
        }],
    };
    let report = check(&corpus, CheckId::GenFar, &opts());
    assert_eq!(report.failed, 0, "{:#?}", report.records);
    assert_eq!(record(&report, "c_0(G) >= 2").status, Status::Pass);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn corpus_entries_are_valid(seed in any::<u64>()) {
        let p = CorpusParams {
            count: 40,
            ..CorpusParams::default()
        };
        for e in gen_corpus(seed, &p).entries {
            prop_assert!(e.drawing.validate().is_empty(), "entry {} {:?}", e.id, e.origin);
            if let Origin::Triangulation { chords, .. } = e.origin {
                prop_assert_eq!(e.drawing.crossings().len(), chords);
            }
        }
    }

    #[test]
    fn kite_kind_entries_are_kite_augmented(seed in any::<u64>()) {
        let p = CorpusParams {
            count: 6,
            kinds: vec![EntryKind::KiteAugmented],
            ..CorpusParams::default()
        };
        for e in gen_corpus(seed, &p).entries {
            prop_assert_eq!(e.drawing.profile().is_kite_augmented, Some(true));
            prop_assert!(e.drawing.validate().is_empty());
        }
    }
}
