use std::fs;

use holofrft_cli::io::{read_field, read_samples, read_signal, write_field_file, write_samples_file, ParseError};
use holofrft_core::closedform::coherent_state;
use holofrft_core::engine::{hfrft_apply, sb_apply, EngineOptions, Method};
use holofrft_core::{CoherentLabel, LineGrid, LineSamples, PlaneGrid, SampledSignal, TransformParameter};
use num_complex::Complex64;

fn line_of(err: &anyhow::Error) -> u64 {
    err.chain().find_map(|c| c.downcast_ref::<ParseError>()).expect("a parse error").line
}

#[test]
fn samples_round_trip_bit_identically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sig.csv");
    let y = CoherentLabel::new(0.3, -0.7).unwrap();
    let grid = LineGrid::new(-7.3, 9.1, 333).unwrap();
    let samples = LineSamples::from_fn(grid, |x| coherent_state(&y, x) * Complex64::new(1.0 / 3.0, 0.1));
    write_samples_file(&samples, &path).unwrap();
    let back = read_samples(&path).unwrap();
    assert_eq!(back.grid(), samples.grid());
    for (a, b) in back.values().iter().zip(samples.values()) {
        assert_eq!((a.re.to_bits(), a.im.to_bits()), (b.re.to_bits(), b.im.to_bits()));
    }
}

#[test]
fn fields_round_trip_in_both_gauges() {
    let dir = tempfile::tempdir().unwrap();
    let f = SampledSignal::coherent(CoherentLabel::new(0.5, 0.5).unwrap());
    let grid = PlaneGrid::new((-3.0, 3.0, 13), (-2.0, 2.0, 9)).unwrap();
    let fields = [
        hfrft_apply(&TransformParameter::from_t(0.4).unwrap(), &f, &grid, Method::Kernel).unwrap(),
        hfrft_apply(&TransformParameter::fourier(), &f, &grid, Method::Kernel).unwrap(),
        hfrft_apply(&TransformParameter::identity(), &f, &grid, Method::Kernel).unwrap(),
        sb_apply(1.7, &f, &grid, Method::Kernel, &EngineOptions::default()).unwrap(),
    ];
    for (k, field) in fields.iter().enumerate() {
        let path = dir.path().join(format!("f{k}.csv"));
        write_field_file(field, &path).unwrap();
        assert_eq!(&read_field(&path).unwrap(), field);
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("x,p,re,im,gauge,param\n"));
    }
}

#[test]
fn malformed_signal_files() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("empty.csv", "", 1),
        ("header.csv", "x,y,z\n0,1,0\n", 1),
        ("columns.csv", "x,re,im\n0,1,0\n1,1\n", 3),
        ("nan.csv", "x,re,im\n0,1,0\n1,NaN,0\n2,0,0\n", 3),
        ("word.csv", "x,re,im\n0,1,0\n1,one,0\n", 3),
        ("uneven.csv", "x,re,im\n0,1,0\n1,1,0\n2.5,1,0\n", 3),
        ("empty.json", "  \n", 1),
    ];
    for (name, text, line) in cases {
        let path = dir.path().join(name);
        fs::write(&path, text).unwrap();
        let err = read_signal(&path).unwrap_err();
        assert_eq!(line_of(&err), line, "{name}: {err:#}");
    }
}

#[test]
fn bundled_json_is_the_ground_state() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/psi00.json");
    assert_eq!(read_signal(path.as_ref()).unwrap(), SampledSignal::coherent(CoherentLabel::origin()));
}
