//! Modified UTF-8 as used by class-file `Utf8` constants: NUL is encoded as
//! `C0 80` and supplementary characters as surrogate pairs.

pub(crate) fn encode(text: &str) -> Vec<u8> {
    let mut out = Vec::with_capacity(text.len());
    for ch in text.chars() {
        let c = ch as u32;
        match c {
            0x01..=0x7F => out.push(c as u8),
            0x00 | 0x80..=0x7FF => {
                out.push(0xC0 | (c >> 6) as u8);
                out.push(0x80 | (c & 0x3F) as u8);
            }
            0x800..=0xFFFF => push_three(&mut out, c),
            _ => {
                let v = c - 0x10000;
                push_three(&mut out, 0xD800 | (v >> 10));
                push_three(&mut out, 0xDC00 | (v & 0x3FF));
            }
        }
    }
    out
}

fn push_three(out: &mut Vec<u8>, unit: u32) {
    out.push(0xE0 | (unit >> 12) as u8);
    out.push(0x80 | ((unit >> 6) & 0x3F) as u8);
    out.push(0x80 | (unit & 0x3F) as u8);
}

pub(crate) fn decode(bytes: &[u8]) -> Option<String> {
    let mut units: Vec<u16> = Vec::with_capacity(bytes.len());
    let mut i = 0;
    let cont = |b: Option<&u8>| b.filter(|b| *b & 0xC0 == 0x80).map(|b| (*b & 0x3F) as u16);
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            0x01..=0x7F => {
                units.push(b as u16);
                i += 1;
            }
            0xC0..=0xDF => {
                let lo = cont(bytes.get(i + 1))?;
                units.push(((b & 0x1F) as u16) << 6 | lo);
                i += 2;
            }
            0xE0..=0xEF => {
                let mid = cont(bytes.get(i + 1))?;
                let lo = cont(bytes.get(i + 2))?;
                units.push(((b & 0x0F) as u16) << 12 | mid << 6 | lo);
                i += 3;
            }
            _ => return None,
        }
    }
    String::from_utf16(&units).ok()
}
