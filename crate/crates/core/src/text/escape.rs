//! Diacritics written as HTML entities whose terminating `;` is replaced by
//! `^` (so `;` can stay a punctuation mark): `&auml^` → `ä`.

use std::borrow::Cow;

/// Named entities seen in German, Polish, French and Latin passages.
static ENTITIES: &[(&str, char)] = &[
    ("Aacute", 'Á'),
    ("aacute", 'á'),
    ("Acirc", 'Â'),
    ("acirc", 'â'),
    ("AElig", 'Æ'),
    ("aelig", 'æ'),
    ("Agrave", 'À'),
    ("agrave", 'à'),
    ("Aogon", 'Ą'),
    ("aogon", 'ą'),
    ("Auml", 'Ä'),
    ("auml", 'ä'),
    ("Cacute", 'Ć'),
    ("cacute", 'ć'),
    ("Ccedil", 'Ç'),
    ("ccedil", 'ç'),
    ("Eacute", 'É'),
    ("eacute", 'é'),
    ("Ecirc", 'Ê'),
    ("ecirc", 'ê'),
    ("Egrave", 'È'),
    ("egrave", 'è'),
    ("Eogon", 'Ę'),
    ("eogon", 'ę'),
    ("Euml", 'Ë'),
    ("euml", 'ë'),
    ("Icirc", 'Î'),
    ("icirc", 'î'),
    ("Iuml", 'Ï'),
    ("iuml", 'ï'),
    ("Lstrok", 'Ł'),
    ("lstrok", 'ł'),
    ("Nacute", 'Ń'),
    ("nacute", 'ń'),
    ("Oacute", 'Ó'),
    ("oacute", 'ó'),
    ("Ocirc", 'Ô'),
    ("ocirc", 'ô'),
    ("OElig", 'Œ'),
    ("oelig", 'œ'),
    ("Ouml", 'Ö'),
    ("ouml", 'ö'),
    ("Sacute", 'Ś'),
    ("sacute", 'ś'),
    ("szlig", 'ß'),
    ("Ucirc", 'Û'),
    ("ucirc", 'û'),
    ("Ugrave", 'Ù'),
    ("ugrave", 'ù'),
    ("Uuml", 'Ü'),
    ("uuml", 'ü'),
    ("Yuml", 'Ÿ'),
    ("yuml", 'ÿ'),
    ("Zacute", 'Ź'),
    ("zacute", 'ź'),
    ("Zdot", 'Ż'),
    ("zdot", 'ż'),
];

fn lookup_entity(name: &str) -> Option<char> {
    if let Some(num) = name.strip_prefix('#') {
        let code = match num.strip_prefix(['x', 'X']) {
            Some(hex) => u32::from_str_radix(hex, 16).ok()?,
            None => num.parse::<u32>().ok()?,
        };
        // ASCII results could build a new `&..^` sequence; keep them verbatim.
        return char::from_u32(code).filter(|c| !c.is_ascii());
    }
    ENTITIES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, c)| *c)
}

/// Length in bytes of a well-formed `&name^` sequence starting at `s`, if any.
pub(crate) fn escape_len(s: &str) -> Option<usize> {
    let rest = s.strip_prefix('&')?;
    let end = rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == '#'))?;
    if end == 0 || rest.as_bytes()[end] != b'^' {
        return None;
    }
    let name = &rest[..end];
    let valid = match name.strip_prefix('#') {
        Some(num) => !num.is_empty() && !num.contains('#'),
        None => name.starts_with(|c: char| c.is_ascii_alphabetic()) && !name.contains('#'),
    };
    valid.then_some(end + 2)
}

/// Replaces every known `&name^` sequence with its character. Unknown names
/// are left in place and logged.
pub fn decode_escapes(s: &str) -> Cow<'_, str> {
    if !s.contains('&') {
        return Cow::Borrowed(s);
    }
    let mut out = String::with_capacity(s.len());
    let mut rest = s;
    while let Some(pos) = rest.find('&') {
        out.push_str(&rest[..pos]);
        rest = &rest[pos..];
        match escape_len(rest) {
            Some(len) => {
                let name = &rest[1..len - 1];
                match lookup_entity(name) {
                    Some(c) => out.push(c),
                    None => {
                        log::warn!("unknown escape sequence `{}`", &rest[..len]);
                        out.push_str(&rest[..len]);
                    }
                }
                rest = &rest[len..];
            }
            None => {
                out.push('&');
                rest = &rest[1..];
            }
        }
    }
    out.push_str(rest);
    Cow::Owned(out)
}
