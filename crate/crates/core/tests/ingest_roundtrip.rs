use proptest::prelude::*;

use perfwall::ingest::{derive, parse_records, write_records, Benchmark, MachineRecord, RecordFormat};

fn record() -> impl Strategy<Value = MachineRecord> {
    (
        "[A-Za-z][A-Za-z0-9-]{0,10}( [A-Za-z0-9]{1,5})?",
        1990.0f64..2100.0,
        prop_oneof![Just(Benchmark::Hpl), Just(Benchmark::Hpcg)],
        proptest::option::of(1e9f64..1e19),
        0.0f64..1.0,
        proptest::option::of(1u64..100_000_000),
    )
        .prop_map(|(machine, date, benchmark, r_peak, frac, cores)| {
            let r_max = match r_peak {
                Some(rp) => (rp * frac).max(1.0),
                None => 1e9 + frac * 1e17,
            };
            MachineRecord {
                machine,
                date,
                benchmark,
                r_peak,
                r_max,
                cores,
            }
        })
}

proptest! {
    #[test]
    fn write_then_parse_is_identity(records in proptest::collection::vec(record(), 0..20)) {
        let mut buf = Vec::new();
        write_records(&records, &mut buf).unwrap();
        let parsed = parse_records(buf.as_slice(), RecordFormat::default()).unwrap();
        prop_assert!(parsed.warnings.is_empty());
        prop_assert_eq!(parsed.records, records);
    }

    #[test]
    fn derive_keeps_cardinality_and_bounds(records in proptest::collection::vec(record(), 0..20)) {
        let derived = derive(&records);
        prop_assert_eq!(derived.len(), records.len());
        for d in &derived {
            if let Some(e) = d.efficiency {
                prop_assert!(e > 0.0 && e <= 1.0);
            }
            let multi_core = d.record.cores.is_some_and(|c| c >= 2);
            prop_assert_eq!(d.nonparallel.is_some(), multi_core && d.record.r_peak.is_some());
        }
    }
}

#[test]
fn semicolon_dialect() {
    let text = "machine;date;benchmark;rpeak_flops;rmax_flops;cores\nA;2019.0;HPL;2e15;1e15;4\n";
    let format = RecordFormat {
        delimiter: b';',
        ..RecordFormat::default()
    };
    let parsed = parse_records(text.as_bytes(), format).unwrap();
    assert_eq!(parsed.records.len(), 1);
    assert_eq!(parsed.records[0].cores, Some(4));
}
