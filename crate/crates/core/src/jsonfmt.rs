//! Deterministic JSON emission: struct-ordered fields and a fixed float
//! format of 17 significant digits, so identical inputs serialize to
//! byte-identical output.

use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::Serializer;
use std::io;

#[derive(Default)]
struct Fixed17;

impl Formatter for Fixed17 {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        // 16 digits after the point = 17 significant digits.
        write!(writer, "{:.16e}", value)
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{:.16e}", value as f64)
    }
}

/// Serialize with fixed float formatting, compact.
pub fn to_string<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = Serializer::with_formatter(&mut out, Fixed17);
    value
        .serialize(&mut ser)
        .expect("serialization cannot fail for plain data");
    String::from_utf8(out).expect("serde_json emits utf-8")
}
