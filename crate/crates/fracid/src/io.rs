//! CSV serialization of sampled signals.
//!
//! Signals travel as two-column CSV with the header `t,value`. Numbers are
//! written in Rust's shortest round-trip decimal form, so a write/read cycle
//! reproduces every sample bit for bit.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::signal::SampledSignal;

pub fn signal_to_csv(signal: &SampledSignal) -> String {
    let mut out = String::with_capacity(16 * signal.len() + 8);
    out.push_str("t,value\n");
    for (t, v) in signal.iter() {
        writeln!(out, "{t},{v}").expect("string write cannot fail");
    }
    out
}

pub fn write_csv(path: &Path, signal: &SampledSignal) -> Result<()> {
    std::fs::write(path, signal_to_csv(signal)).map_err(|source| Error::WriteFile {
        path: path.to_path_buf(),
        source,
    })
}

pub fn signal_from_csv(path: &Path, text: &str) -> Result<SampledSignal> {
    let bad = |detail: String| Error::CsvFormat {
        path: path.to_path_buf(),
        detail,
    };
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == "t,value" => {}
        Some((_, header)) => {
            return Err(bad(format!(
                "expected header \"t,value\", found {header:?}"
            )))
        }
        None => return Err(bad("file is empty".into())),
    }

    let mut times = Vec::new();
    let mut values = Vec::new();
    for (lineno, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (t_text, v_text) = line.split_once(',').ok_or_else(|| {
            bad(format!(
                "line {}: expected two comma-separated fields",
                lineno + 1
            ))
        })?;
        let t: f64 = t_text
            .trim()
            .parse()
            .map_err(|e| bad(format!("line {}: bad time {t_text:?}: {e}", lineno + 1)))?;
        let v: f64 = v_text
            .trim()
            .parse()
            .map_err(|e| bad(format!("line {}: bad value {v_text:?}: {e}", lineno + 1)))?;
        times.push(t);
        values.push(v);
    }
    if times.len() < 2 {
        return Err(bad("need at least two samples to infer the period".into()));
    }
    let start = times[0];
    let period = times[1] - times[0];
    if !(period.is_finite() && period > 0.0) {
        return Err(bad(format!("inferred period {period} is not positive")));
    }
    for (k, &t) in times.iter().enumerate() {
        let expect = start + k as f64 * period;
        if (t - expect).abs() > 1e-9 * expect.abs().max(1.0) {
            return Err(bad(format!(
                "sample {k} at t = {t} breaks the uniform grid (expected {expect})"
            )));
        }
    }
    SampledSignal::new(start, period, values)
}

pub fn read_csv(path: &Path) -> Result<SampledSignal> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::ReadFile {
        path: path.to_path_buf(),
        source,
    })?;
    signal_from_csv(path, &text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::PathBuf;

    fn parse(text: &str) -> Result<SampledSignal> {
        signal_from_csv(&PathBuf::from("test.csv"), text)
    }

    #[test]
    fn round_trip_preserves_bits() {
        let signal = SampledSignal::new(
            0.0,
            0.05,
            vec![0.0, 1.0 / 3.0, -2.5e-17, std::f64::consts::PI, 1e300],
        )
        .unwrap();
        let text = signal_to_csv(&signal);
        let back = parse(&text).unwrap();
        assert_eq!(back.samples(), signal.samples());
        assert_eq!(back.start_time(), signal.start_time());
        assert_eq!(back.period(), signal.period());
    }

    #[test]
    fn header_and_grid_are_validated() {
        assert!(parse("").is_err());
        assert!(parse("time,value\n0,1\n0.1,2\n").is_err());
        assert!(parse("t,value\n0,1\n").is_err());
        assert!(parse("t,value\n0,1\n0.1,2\n0.3,3\n").is_err());
        assert!(parse("t,value\n0,1\n0.1,abc\n").is_err());
        assert!(parse("t,value\n0,1\n0.1\n").is_err());
        let ok = parse("t,value\n0,1\n0.1,2\n0.2,3\n").unwrap();
        assert_eq!(ok.len(), 3);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]

            #[test]
            fn csv_round_trip_is_lossless(
                samples in proptest::collection::vec(-1e6f64..1e6, 2..40),
                period_exp in -4i32..2,
            ) {
                let period = 10f64.powi(period_exp);
                let signal = SampledSignal::new(0.0, period, samples).unwrap();
                let back = parse(&signal_to_csv(&signal)).unwrap();
                prop_assert_eq!(back.samples(), signal.samples());
                prop_assert_eq!(back.period(), signal.period());
            }
        }
    }
}
