//! Output encoding: every floating-point number is written with 17
//! significant digits (`{:.16e}`), which round-trips `f64` exactly.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

struct Sig17;

impl Formatter for Sig17 {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(fmt_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Compact JSON with 17-digit floats.
pub fn to_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut buf = Vec::new();
    let mut ser = Serializer::with_formatter(&mut buf, Sig17);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

/// CSV with a header row; every cell is a float.
pub fn write_csv<W: Write>(mut out: W, header: &[&str], rows: impl Iterator<Item = Vec<f64>>) -> io::Result<()> {
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        let cells: Vec<String> = row.into_iter().map(fmt_f64).collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Rec {
        value: f64,
        count: u64,
        seed: Option<u64>,
        tag: &'static str,
    }

    #[test]
    fn json_floats_have_17_digits() {
        let s = to_json(&Rec { value: 1.5, count: 3, seed: None, tag: "quad" }).unwrap();
        assert_eq!(s, r#"{"value":1.5000000000000000e0,"count":3,"seed":null,"tag":"quad"}"#);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["value"].as_f64(), Some(1.5));
    }

    #[test]
    fn round_trip_is_exact() {
        for x in [0.1, std::f64::consts::PI, 1e-300, -2.5e17, 0.8354195179910547] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &["a", "b"], vec![vec![1.0, 0.25]].into_iter()).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a,b\n1.0000000000000000e0,2.5000000000000000e-1\n");
    }
}
