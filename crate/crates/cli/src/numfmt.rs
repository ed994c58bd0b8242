//! Fixed numeric text: 12 significant digits, shortest decimal that
//! round-trips, scientific notation for `|x| ≥ 1e6` and `|x| < 1e-4`.

use std::io;

use serde_json::ser::{Formatter, PrettyFormatter};

const SIGNIFICANT: usize = 12;
const SCI_ABOVE: f64 = 1e6;
const SCI_BELOW: f64 = 1e-4;

/// Rounds to 12 significant digits; non-finite values pass through.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.prec$e}", prec = SIGNIFICANT - 1).parse().unwrap_or(x)
}

/// Text of a finite number; `None` for infinities and NaN.
pub fn format_number(x: f64) -> Option<String> {
    if !x.is_finite() {
        return None;
    }
    let r = round_sig(x);
    if r == 0.0 {
        return Some("0".into());
    }
    let mag = r.abs();
    Some(if !(SCI_BELOW..SCI_ABOVE).contains(&mag) { format!("{r:e}") } else { format!("{r}") })
}

/// Table cell for a number: finite values as above, otherwise `inf`,
/// `-inf` or `nan`.
pub fn cell(x: f64) -> String {
    format_number(x).unwrap_or_else(|| {
        if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    })
}

/// Pretty JSON with numbers written by [`format_number`]; non-finite
/// values become `null`.
pub struct NumberFormatter {
    inner: PrettyFormatter<'static>,
}

impl NumberFormatter {
    pub fn new() -> Self {
        Self { inner: PrettyFormatter::new() }
    }
}

impl Formatter for NumberFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        match format_number(value) {
            Some(text) => writer.write_all(text.as_bytes()),
            None => writer.write_all(b"null"),
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_array(writer)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object(writer)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object_value(writer)
    }
}

/// Serializes `value` as pretty JSON with fixed number text and a
/// trailing newline.
pub fn to_json<T: serde::Serialize>(value: &T) -> serde_json::Result<Vec<u8>> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, NumberFormatter::new());
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(buf)
}
