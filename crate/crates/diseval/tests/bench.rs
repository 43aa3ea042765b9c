mod common;

use common::*;
use diseval::bench::UNASSIGNED;
use diseval::report::METRIC_LABELS;
use diseval::{emit_report, run_benchmark, scan_and_pair, BenchConfig, Format, Manifest, ManifestEntry, Mode, Report};

fn report(m: &Manifest, workers: usize) -> Report {
    let config = BenchConfig { workers, ..BenchConfig::default() };
    Report::new(&config, run_benchmark(m, &config).unwrap(), false)
}

#[test]
fn perfect_predictions_aggregate_to_ideal_scores() {
    let dir = tempfile::tempdir().unwrap();
    for i in 0..3 {
        let g = square_mask(40, 40, 5 + i, 7, 12 + 3 * i);
        write_mask(dir.path(), &format!("gt/{}.png", i), &g);
        write_mask(dir.path(), &format!("pred/{}.png", i), &g);
    }
    let m = scan_and_pair(&dir.path().join("pred"), &dir.path().join("gt")).unwrap();
    let r = report(&m, 2);
    let o = &r.aggregate.overall;
    assert_eq!(o.count, 3);
    assert_eq!(
        (o.max_f, o.weighted_f, o.mae, o.s_measure, o.e_measure_mean, o.hce),
        (Some(1.0), Some(1.0), Some(0.0), Some(1.0), Some(1.0), Some(0.0))
    );
}

#[test]
fn worker_count_does_not_change_reports() {
    let dir = tempfile::tempdir().unwrap();
    let (pred, gt) = dataset(dir.path(), 4, 7);
    let m = scan_and_pair(&pred, &gt).unwrap();
    let (one, four) = (report(&m, 1), report(&m, 4));
    for f in [Format::Json, Format::Csv, Format::Markdown] {
        assert_eq!(emit_report(&one, f), emit_report(&four, f));
    }
}

#[test]
fn corrupt_input_only_affects_its_own_entry() {
    let dir = tempfile::tempdir().unwrap();
    let (pred, gt) = dataset(dir.path(), 4, 3);
    std::fs::write(pred.join("img02.png"), b"\x89PNG\r\n\x1a\nbroken").unwrap();
    let m = scan_and_pair(&pred, &gt).unwrap();
    let r = report(&m, 2);
    assert_eq!(r.errors.len(), 1);
    assert_eq!((r.errors[0].id.as_str(), r.errors[0].kind.as_str()), ("img02", "decode"));
    let ids: Vec<_> = r.records.iter().map(|r| r.id.as_str()).collect();
    assert_eq!(ids, ["img00", "img01", "img03"]);
    assert_eq!(r.aggregate.overall.count, 3);
}

#[test]
fn aggregates_are_plain_means_of_records() {
    let dir = tempfile::tempdir().unwrap();
    let (pred, gt) = dataset(dir.path(), 6, 21);
    let paired = scan_and_pair(&pred, &gt).unwrap();
    let entries: Vec<ManifestEntry> = paired
        .entries()
        .iter()
        .enumerate()
        .map(|(i, e)| ManifestEntry {
            subset: (i % 3 != 2).then(|| format!("TE{}", 1 + i % 2)),
            group: Some(if i < 4 { "animals" } else { "tools" }.into()),
            ..e.clone()
        })
        .collect();
    let r = report(&Manifest::new(entries).unwrap(), 3);
    assert_eq!(r.records.len(), 6);

    let check = |name: &str, picked: Vec<&diseval::EvalRecord>, got: &diseval::Summary| {
        assert_eq!(got.name, name);
        assert_eq!(got.count, picked.len());
        let n = picked.len() as f64;
        let mean = |f: fn(&diseval::EvalRecord) -> f64| picked.iter().map(|r| f(r)).sum::<f64>() / n;
        let close = |a: Option<f64>, b: f64| assert!((a.unwrap() - b).abs() < 1e-12, "{} {:?} {}", name, a, b);
        close(got.max_f, mean(|r| r.scores.unwrap().max_f));
        close(got.weighted_f, mean(|r| r.scores.unwrap().weighted_f));
        close(got.mae, mean(|r| r.scores.unwrap().mae));
        close(got.s_measure, mean(|r| r.scores.unwrap().s_measure));
        close(got.e_measure_mean, mean(|r| r.scores.unwrap().e_measure_mean));
        close(got.hce, mean(|r| r.hce.total as f64));
    };
    let agg = &r.aggregate;
    check("overall", r.records.iter().collect(), &agg.overall);
    let names: Vec<_> = agg.subsets.iter().map(|s| s.name.as_str()).collect();
    assert_eq!(names, ["TE1", "TE2", UNASSIGNED]);
    for s in &agg.subsets {
        let label = (s.name != UNASSIGNED).then_some(s.name.as_str());
        check(&s.name, r.records.iter().filter(|x| x.subset.as_deref() == label).collect(), s);
    }
    for g in &agg.groups {
        check(&g.name, r.records.iter().filter(|x| x.group.as_deref() == Some(g.name.as_str())).collect(), g);
    }
    assert_eq!(agg.subsets.iter().map(|s| s.count).sum::<usize>(), 6);
    assert_eq!(agg.groups.iter().map(|s| s.count).sum::<usize>(), 6);
}

#[test]
fn one_record_csv_layout() {
    let dir = tempfile::tempdir().unwrap();
    let (pred, gt) = dataset(dir.path(), 1, 5);
    let r = report(&scan_and_pair(&pred, &gt).unwrap(), 1);
    let csv = String::from_utf8(emit_report(&r, Format::Csv)).unwrap();
    let lines: Vec<_> = csv.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("kind,id,group,subset,count,max_f"));
    assert!(lines[1].starts_with("image,img00,,,1,"));
    assert!(lines[2].starts_with("aggregate_overall,,,,1,"));
}

#[test]
fn markdown_rows_and_json_keys() {
    let dir = tempfile::tempdir().unwrap();
    let (pred, gt) = dataset(dir.path(), 2, 9);
    let r = report(&scan_and_pair(&pred, &gt).unwrap(), 1);
    let md = String::from_utf8(emit_report(&r, Format::Markdown)).unwrap();
    for label in METRIC_LABELS {
        assert!(md.lines().any(|l| l.starts_with(&format!("| {} |", label))), "{}", label);
    }
    let json: serde_json::Value = serde_json::from_slice(&emit_report(&r, Format::Json)).unwrap();
    assert_eq!(json["schema_version"], 1);
    let rec = &json["records"][0];
    for key in ["id", "fn_boundary_points", "fn_region_clicks", "fp_boundary_points", "fp_region_clicks", "total"] {
        assert!(rec.get(key).is_some(), "{}", key);
    }
    assert!(rec.get("wall_time_ms").is_none());
    let back = Report::from_json(&emit_report(&r, Format::Json)).unwrap();
    assert_eq!(back, r);
}

#[test]
fn hce_mode_accepts_empty_ground_truth() {
    let dir = tempfile::tempdir().unwrap();
    let empty = square_mask(20, 20, 0, 0, 0);
    let blob = square_mask(20, 20, 8, 8, 2);
    let entry = |id: &str| ManifestEntry {
        id: id.into(),
        pred_path: write_mask(dir.path(), "p.png", &blob),
        gt_path: write_mask(dir.path(), "g.png", &empty),
        group: None,
        subset: None,
    };
    let m = Manifest::new(vec![entry("x")]).unwrap();
    let full = run_benchmark(&m, &BenchConfig::default()).unwrap();
    assert_eq!(full.errors[0].kind, "empty_ground_truth");
    let config = BenchConfig { mode: Mode::HceOnly, ..BenchConfig::default() };
    let out = run_benchmark(&m, &config).unwrap();
    assert!(out.errors.is_empty());
    assert_eq!(out.records[0].scores, None);
}
