use localfields::catalog::store::{parse_entry, serialize_entry, TableFile};
use localfields::catalog::{Gms, LocalFieldEntry, SubfieldRef};
use localfields::enumerate::StratumCertificate;
use localfields::invariants::{DiscClass, GaloisData, SlopeContent};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::strategy::ValueTree;

const LABELS: [&str; 10] = ["C4", "V4", "D4", "A4", "S4", "T9/T13", "C2", "<e>", "F5", "C3.C2"];

fn rational() -> impl Strategy<Value = BigRational> {
    (-50i64..500, 1i64..40).prop_map(|(a, b)| BigRational::new(a.into(), b.into()))
}

fn galois() -> impl Strategy<Value = Option<GaloisData>> {
    prop::option::of((
        prop::sample::select(LABELS.to_vec()),
        prop::option::of(prop::sample::select(LABELS.to_vec())),
        prop::option::of(1u64..100),
        prop::option::of(1u64..5000),
    ))
    .prop_map(|g| {
        g.map(|(group, inertia, t, order)| GaloisData {
            group: group.into(),
            inertia: inertia.map(String::from),
            t,
            order,
        })
    })
}

fn subfield(p: u64) -> impl Strategy<Value = SubfieldRef> {
    prop_oneof![
        (-1000i64..1000).prop_filter("nonzero", |x| *x != 0).prop_map(move |x| {
            SubfieldRef::Quadratic(DiscClass::of(&BigInt::from(x), p).unwrap())
        }),
        (1usize..9).prop_map(SubfieldRef::Unramified),
        prop::collection::vec(-10_000i64..10_000, 2..8)
            .prop_map(|c| SubfieldRef::Poly(c.into_iter().map(BigInt::from).collect())),
    ]
}

fn entry() -> impl Strategy<Value = LocalFieldEntry> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11]).prop_flat_map(|p| {
        (
            (1usize..10, 1usize..10, 0u32..80, 1usize..10),
            prop::collection::vec(any::<i64>(), 2..11),
            (-10_000i64..10_000).prop_filter("nonzero", |x| *x != 0),
            galois(),
            prop::collection::vec(rational(), 0..5),
            (1u64..50, any::<bool>(), rational(), any::<bool>()),
            prop::collection::vec(subfield(p), 0..4),
        )
            .prop_map(move |((e, f, c, aut), poly, d, galois, mut slopes, (t_vis, exact, g, g_exact), subfields)| {
                slopes.sort_by(|a, b| b.cmp(a));
                LocalFieldEntry {
                    p,
                    n: e * f,
                    poly: poly.into_iter().map(BigInt::from).collect(),
                    c,
                    e,
                    f,
                    d: DiscClass::of(&BigInt::from(d), p).unwrap(),
                    aut,
                    galois,
                    slopes: SlopeContent { slopes, t_vis, f: f as u32, exact },
                    gms: if g_exact { Gms::Exact(g) } else { Gms::AtLeast(g) },
                    subfields,
                }
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn entry_lines_round_trip(e in entry()) {
        let line = serialize_entry(&e);
        prop_assert!(!line.contains('\n'));
        prop_assert_eq!(parse_entry(&line).unwrap(), e);
    }
}

#[test]
fn table_files_round_trip() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let entries: Vec<LocalFieldEntry> = (0..200)
        .map(|_| entry().new_tree(&mut runner).unwrap().current())
        .map(|mut e| {
            e.p = 5;
            e.n = 4;
            e.d = DiscClass::parse("5*", 5).unwrap();
            e.subfields.clear();
            e
        })
        .collect();
    let file = TableFile {
        p: 5,
        n: 4,
        allow_long: false,
        certificate: vec![StratumCertificate {
            e: 4,
            f: 1,
            c: 3,
            fields: 4,
            expected_mass: BigRational::from_integer(1.into()),
            found_mass: BigRational::from_integer(1.into()),
            candidates_tried: 4,
        }],
        entries,
    };
    let text = file.to_text();
    assert_eq!(TableFile::parse(&text).unwrap(), file);
    assert_eq!(TableFile::parse(&text).unwrap().to_text(), text);
}
