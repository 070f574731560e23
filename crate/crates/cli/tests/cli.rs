use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dfnt::{dfnt_entry, Complex64, DfntOperator, Variant};
use rand::{Rng, SeedableRng};
use tempfile::TempDir;

fn dfnt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dfnt"))
        .args(args)
        .output()
        .expect("spawn dfnt")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_vec(dir: &TempDir, name: &str, v: &[Complex64]) -> PathBuf {
    let path = dir.path().join(name);
    let mut text = String::from("re,im\n");
    for z in v {
        text.push_str(&format!("{:e},{:e}\n", z.re, z.im));
    }
    std::fs::write(&path, text).unwrap();
    path
}

fn parse_vec(text: &str) -> Vec<Complex64> {
    text.lines()
        .filter(|l| *l != "re,im")
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            Complex64::new(a.parse().unwrap(), b.parse().unwrap())
        })
        .collect()
}

/// Rows `m,x,re,im` as `(m, x, value)`.
fn parse_rows(text: &str) -> Vec<(usize, f64, Complex64)> {
    text.lines()
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            assert_eq!(f.len(), 4, "{l}");
            (
                f[0].parse().unwrap(),
                f[1].parse().unwrap(),
                Complex64::new(f[2].parse().unwrap(), f[3].parse().unwrap()),
            )
        })
        .collect()
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn random(seed: u64, n: usize) -> Vec<Complex64> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

fn delta(n: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    v[0] = Complex64::new(1.0, 0.0);
    v
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn matrix_dumps() {
    let out = dfnt(&["matrix", "1"]);
    assert_eq!(code(&out), 0);
    let rows = parse_rows(&stdout(&out));
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].2, Complex64::new(1.0, 0.0));

    let rows = parse_rows(&stdout(&dfnt(&["matrix", "2"])));
    assert_eq!(rows.len(), 4);
    for (i, (m, n, z)) in rows.iter().enumerate() {
        let n = *n as usize;
        assert_eq!((*m, n), (i / 2, i % 2), "row-major order");
        assert_eq!(*z, dfnt_entry(2, *m, n).unwrap());
    }

    let modern = stdout(&dfnt(&["matrix", "3"]));
    let legacy = stdout(&dfnt(&["matrix", "3", "--variant", "legacy"]));
    assert_ne!(modern, legacy);
    assert_eq!(legacy, stdout(&dfnt(&["--legacy", "matrix", "3"])));
}

#[test]
fn matrix_errors() {
    assert_eq!(code(&dfnt(&["matrix", "0"])), 2);
    assert_eq!(code(&dfnt(&["matrix", "-3"])), 2);
    assert_eq!(code(&dfnt(&["matrix", "20000"])), 2);
    let out = dfnt(&["matrix", "2", "--out", "/nonexistent-dir/m.csv"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn transform_delta_and_round_trip() {
    let dir = TempDir::new().unwrap();
    let input = write_vec(&dir, "delta.csv", &delta(2));
    let out = dfnt(&["transform", s(&input)]);
    assert_eq!(code(&out), 0);
    let y = parse_vec(&stdout(&out));
    let col = [dfnt_entry(2, 0, 0).unwrap(), dfnt_entry(2, 1, 0).unwrap()];
    assert!(max_diff(&y, &col) < 1e-15);

    let x = random(1, 11);
    let input = write_vec(&dir, "x.csv", &x);
    let fwd = dir.path().join("fwd.csv");
    assert_eq!(code(&dfnt(&["transform", s(&input), "--out", s(&fwd)])), 0);
    for path in ["fast", "direct"] {
        let back = dfnt(&["transform", s(&fwd), "--inverse", "--path", path]);
        assert_eq!(code(&back), 0);
        assert!(max_diff(&parse_vec(&stdout(&back)), &x) < 1e-12);
    }
}

#[test]
fn transform_paths_agree_on_large_input() {
    let dir = TempDir::new().unwrap();
    let big = write_vec(&dir, "big.csv", &random(2, 4096));
    let out = dfnt(&["transform", s(&big)]);
    assert_eq!(code(&out), 0);
    let fast = parse_vec(&stdout(&out));
    assert_eq!(fast.len(), 4096);

    let small = write_vec(&dir, "small.csv", &random(3, 512));
    let fast = dfnt(&["transform", s(&small), "--path", "fast"]);
    let direct = dfnt(&["transform", s(&small), "--path", "direct"]);
    assert_ne!(fast.stdout, direct.stdout);
    let (f, d) = (parse_vec(&stdout(&fast)), parse_vec(&stdout(&direct)));
    let scale = d.iter().map(|z| z.norm()).fold(0.0, f64::max);
    assert!(max_diff(&f, &d) / scale < 1e-10);
}

#[test]
fn transform_errors() {
    let dir = TempDir::new().unwrap();
    let empty = dir.path().join("empty.csv");
    std::fs::write(&empty, "re,im\n").unwrap();
    assert_eq!(code(&dfnt(&["transform", s(&empty)])), 2);
    let junk = dir.path().join("junk.csv");
    std::fs::write(&junk, "1,2\nthree,4\n").unwrap();
    assert_eq!(code(&dfnt(&["transform", s(&junk)])), 2);
    assert_eq!(code(&dfnt(&["transform", "/nonexistent/x.csv"])), 3);

    let odd = write_vec(&dir, "odd.csv", &random(4, 5));
    assert_eq!(code(&dfnt(&["--legacy", "transform", s(&odd), "--inverse"])), 2);
    assert_eq!(code(&dfnt(&["--legacy", "transform", s(&odd)])), 2);
    assert_eq!(code(&dfnt(&["--legacy", "transform", s(&odd), "--path", "direct"])), 0);
}

#[test]
fn convolve_sides_agree() {
    let dir = TempDir::new().unwrap();
    let sv = random(5, 6);
    let h = write_vec(&dir, "h.csv", &delta(6));
    let sp = write_vec(&dir, "s.csv", &sv);
    let op = DfntOperator::new(6, Variant::Modern).unwrap();
    let want = op
        .apply_direct(&dfnt::ComplexVector::new(sv).unwrap())
        .unwrap();
    for side in ["none", "h", "s"] {
        let out = dfnt(&["convolve", s(&h), s(&sp), "--side", side]);
        assert_eq!(code(&out), 0);
        assert!(max_diff(&parse_vec(&stdout(&out)), want.as_slice()) < 1e-14);
    }

    let h = write_vec(&dir, "h9.csv", &random(6, 9));
    let sp = write_vec(&dir, "s9.csv", &random(7, 9));
    let outs: Vec<Vec<Complex64>> = ["none", "h", "s"]
        .iter()
        .map(|side| parse_vec(&stdout(&dfnt(&["convolve", s(&h), s(&sp), "--side", side]))))
        .collect();
    assert!(max_diff(&outs[0], &outs[1]) < 1e-11);
    assert!(max_diff(&outs[0], &outs[2]) < 1e-11);
    assert!(max_diff(&outs[1], &outs[2]) < 1e-11);
    assert_eq!(code(&dfnt(&["convolve", s(&h), s(&sp), "--strict"])), 0);

    let legacy = dfnt(&["--legacy", "convolve", s(&h), s(&sp), "--strict"]);
    assert_eq!(code(&legacy), 1);
    let err = String::from_utf8(legacy.stderr).unwrap();
    let reported: f64 = err
        .lines()
        .find_map(|l| l.strip_prefix("max pairwise difference between sides: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(reported > 1e-3, "{err}");
}

#[test]
fn convolve_length_mismatch() {
    let dir = TempDir::new().unwrap();
    let h = write_vec(&dir, "h.csv", &random(8, 4));
    let sp = write_vec(&dir, "s.csv", &random(9, 5));
    assert_eq!(code(&dfnt(&["convolve", s(&h), s(&sp)])), 2);
}

fn eig_rows(n: &str) -> Vec<(String, Complex64)> {
    let out = dfnt(&["eig", n, "--csv"]);
    assert_eq!(code(&out), 0);
    stdout(&out)
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (
                f[0].to_string(),
                Complex64::new(f[1].parse().unwrap(), f[2].parse().unwrap()),
            )
        })
        .collect()
}

#[test]
fn eig_tables() {
    let two = eig_rows("2");
    assert_eq!(two.len(), 3);
    assert_eq!(two[0].1, Complex64::new(1.0, 0.0));
    assert!((two[1].1 - Complex64::new(0.0, -1.0)).norm() < 1e-15);
    assert_eq!(two[2].0, "det");
    assert!((two[2].1 - Complex64::new(0.0, -1.0)).norm() < 1e-15);

    let one = eig_rows("1");
    assert_eq!(one.len(), 2);
    assert_eq!(one[1].1, Complex64::new(1.0, 0.0));

    let three = eig_rows("3");
    let det = Complex64::from_polar(1.0, -8.0 * std::f64::consts::PI / 3.0);
    assert!((three[3].1 - det).norm() < 1e-15);

    let table = stdout(&dfnt(&["eig", "4"]));
    assert_eq!(table.lines().count(), 6);
    assert!(table.lines().last().unwrap().trim_start().starts_with("det"));
    assert_eq!(code(&dfnt(&["eig", "0"])), 2);
}

#[test]
fn talbot_fields() {
    let dir = TempDir::new().unwrap();
    let g = write_vec(&dir, "delta4.csv", &delta(4));
    let out = dfnt(&["talbot", s(&g), "--fraction", "2/4"]);
    assert_eq!(code(&out), 0);
    let rows = parse_rows(&stdout(&out));
    let zeros: Vec<usize> = rows
        .iter()
        .filter(|(_, _, z)| z.norm() < 1e-12)
        .map(|(m, _, _)| *m)
        .collect();
    assert_eq!(zeros, vec![1, 3]);

    let samples = random(10, 5);
    let g5 = write_vec(&dir, "g5.csv", &samples);
    let echo = parse_rows(&stdout(&dfnt(&["talbot", s(&g5), "--fraction", "0/1"])));
    let values: Vec<Complex64> = echo.iter().map(|r| r.2).collect();
    assert!(max_diff(&values, &samples) < 1e-15);
    assert!(echo.iter().all(|r| r.1 == 0.0));

    let samples = random(11, 3);
    let g3 = write_vec(&dir, "g3.csv", &samples);
    let out = dfnt(&[
        "talbot", s(&g3), "--fraction", "1/3", "--offset", "1/2", "--period", "2e-3",
        "--wavelength", "6.328e-7",
    ]);
    let rows = parse_rows(&stdout(&out));
    assert!(rows.iter().all(|r| r.1 == 0.5));
    let values: Vec<Complex64> = rows.iter().map(|r| r.2).collect();
    let op = DfntOperator::new(3, Variant::Modern).unwrap();
    let want = op
        .apply_direct(&dfnt::ComplexVector::new(samples).unwrap())
        .unwrap();
    assert!(max_diff(&values, want.as_slice()) < 1e-14);
}

#[test]
fn talbot_default_offset_matches_transform() {
    let dir = TempDir::new().unwrap();
    for n in [6usize, 7] {
        let g = write_vec(&dir, &format!("g{n}.csv"), &random(12 + n as u64, n));
        let frac = format!("1/{n}");
        let rows = parse_rows(&stdout(&dfnt(&["talbot", s(&g), "--fraction", &frac])));
        let values: Vec<Complex64> = rows.iter().map(|r| r.2).collect();
        let transformed = parse_vec(&stdout(&dfnt(&["transform", s(&g)])));
        assert!(max_diff(&values, &transformed) < 1e-13, "N={n}");
    }
}

#[test]
fn talbot_errors() {
    let dir = TempDir::new().unwrap();
    let g = write_vec(&dir, "g.csv", &delta(4));
    for bad in ["1/0", "half", "1-2", "1/"] {
        assert_eq!(code(&dfnt(&["talbot", s(&g), "--fraction", bad])), 2, "{bad}");
    }
    assert_eq!(
        code(&dfnt(&["talbot", s(&g), "--fraction", "1/4", "--period", "0"])),
        2
    );
    assert_eq!(
        code(&dfnt(&["talbot", s(&g), "--fraction", "1/4", "--offset", "1.5"])),
        2
    );
}

#[test]
fn verify_exit_codes() {
    let out = dfnt(&["verify"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).lines().all(|l| l.starts_with("PASS")));

    let legacy = dfnt(&["verify", "--properties", "legacy-odd"]);
    assert_eq!(code(&legacy), 0);
    let line = stdout(&legacy);
    assert!(line.contains("legacy-odd"));

    let csv = dfnt(&["verify", "--properties", "legacy-odd,degeneracy", "--csv", "--seed", "99"]);
    assert_eq!(code(&csv), 0);
    let text = stdout(&csv);
    let row = text.lines().nth(1).unwrap();
    let measured: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
    assert!(measured > 1e-3);

    assert_eq!(code(&dfnt(&["verify", "--n-range", "0..4"])), 2);
    assert_eq!(code(&dfnt(&["verify", "--n-range", "5..2"])), 2);
    assert_eq!(code(&dfnt(&["verify", "--properties", "nonsense"])), 2);
    assert_eq!(code(&dfnt(&["verify", "--seed", "abc"])), 2);
}

#[test]
fn verify_is_deterministic_per_seed() {
    let args = ["verify", "--n-range", "1..12", "--seed", "7", "--csv"];
    assert_eq!(dfnt(&args).stdout, dfnt(&args).stdout);
}
