//! Number formatting and the JSON writer.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;

/// Significant digits for reals in machine-readable output.
pub const MACHINE_DIGITS: usize = 17;
/// Significant digits for human-readable tables.
pub const HUMAN_DIGITS: usize = 10;

/// `x` with exactly `digits` significant digits; positional notation for
/// moderate exponents, scientific otherwise.
pub fn sig(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if (-5..digits as i32).contains(&exp) {
        format!("{:.*}", (digits as i32 - 1 - exp) as usize, x)
    } else {
        sci
    }
}

pub fn human(x: f64) -> String {
    sig(x, HUMAN_DIGITS)
}

/// Compact JSON with every `f64` written at [`MACHINE_DIGITS`].
struct Sig17;

impl Formatter for Sig17 {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            writer.write_all(sig(value, MACHINE_DIGITS).as_bytes())
        } else {
            writer.write_all(b"null")
        }
    }
}

/// Serialized JSON text followed by a newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17);
    value.serialize(&mut ser).expect("report serializes");
    buf.push(b'\n');
    String::from_utf8(buf).expect("JSON is UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig(0.5, 17), "0.50000000000000000");
        assert_eq!(sig(1.0, 10), "1.000000000");
        assert_eq!(sig(-1234.5, 5), "-1234.5");
        assert_eq!(sig(1e-9, 3), "1.00e-9");
        assert_eq!(sig(0.0, 3), "0.00");
        for x in [std::f64::consts::PI, 1.0 / 3.0, 1e-300, -2.5e17, 5e-324] {
            assert_eq!(sig(x, 17).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn json_reals() {
        assert_eq!(to_json(&[0.25, -3.0]), "[0.25000000000000000,-3.0000000000000000]\n");
        assert_eq!(to_json(&f64::NAN), "null\n");
    }
}
