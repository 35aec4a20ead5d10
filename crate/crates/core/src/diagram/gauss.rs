use std::collections::BTreeMap;

use super::{DiagramError, Pass, Role, Sign, VirtualLinkDiagram};

/// A token of the extended Gauss-code grammar shared with tangle input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Token {
    Pass { crossing: u32, role: Role, sign: Sign },
    Boundary(u32),
    Unknot,
    Separator,
}

/// Lexes `text` into `(offset, token)` pairs. Whitespace is ignored. Boundary
/// tokens (`B<n>`) are only accepted when `boundaries` is set.
pub(crate) fn lex(text: &str, boundaries: bool) -> Result<Vec<(usize, Token)>, DiagramError> {
    let chars: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |offset: usize, message: String| DiagramError::Parse { offset, message };
    let read_int = |i: &mut usize| -> Option<u32> {
        let start = *i;
        while *i < chars.len() && chars[*i].1.is_ascii_digit() {
            *i += 1;
        }
        if *i == start {
            return None;
        }
        chars[start..*i]
            .iter()
            .map(|(_, c)| *c)
            .collect::<String>()
            .parse()
            .ok()
    };
    while i < chars.len() {
        let (offset, c) = chars[i];
        match c {
            ';' => {
                out.push((offset, Token::Separator));
                i += 1;
            }
            'O' | 'U' => {
                i += 1;
                let role = if c == 'O' { Role::Over } else { Role::Under };
                let has_digit = i < chars.len() && chars[i].1.is_ascii_digit();
                if c == 'U' && !has_digit {
                    out.push((offset, Token::Unknot));
                    continue;
                }
                let crossing = read_int(&mut i)
                    .ok_or_else(|| err(offset, format!("expected crossing number after '{c}'")))?;
                let sign = match chars.get(i).map(|x| x.1) {
                    Some('+') => Sign::Positive,
                    Some('-') => Sign::Negative,
                    Some(other) => {
                        return Err(err(
                            chars[i].0,
                            format!("expected '+' or '-' after '{c}{crossing}', found '{other}'"),
                        ))
                    }
                    None => {
                        return Err(err(
                            text.len(),
                            format!("missing sign after '{c}{crossing}'"),
                        ))
                    }
                };
                i += 1;
                out.push((offset, Token::Pass { crossing, role, sign }));
            }
            'B' if boundaries => {
                i += 1;
                let n = read_int(&mut i)
                    .ok_or_else(|| err(offset, "expected boundary number after 'B'".into()))?;
                out.push((offset, Token::Boundary(n)));
            }
            other => return Err(err(offset, format!("unexpected character '{other}'"))),
        }
    }
    Ok(out)
}

/// Records a crossing sign, rejecting passes whose signs disagree.
pub(crate) fn record_sign(
    signs: &mut BTreeMap<u32, Sign>,
    crossing: u32,
    sign: Sign,
) -> Result<(), DiagramError> {
    match signs.insert(crossing, sign) {
        Some(prev) if prev != sign => Err(DiagramError::Validation(format!(
            "sign mismatch at crossing {crossing}: its passes are marked both '+' and '-'"
        ))),
        _ => Ok(()),
    }
}

/// `diagram := component (";" component)*`,
/// `component := pass+ | "U"`,
/// `pass := ("O" | "U") integer ("+" | "-")`.
pub fn parse_gauss_code(text: &str) -> Result<VirtualLinkDiagram, DiagramError> {
    let tokens = lex(text, false)?;
    let mut components: Vec<Vec<Pass>> = Vec::new();
    let mut signs = BTreeMap::new();
    let mut current: Vec<Pass> = Vec::new();
    let mut unknot_marker = false;
    let mut last_offset = 0;

    let close = |current: &mut Vec<Pass>,
                     unknot_marker: &mut bool,
                     offset: usize,
                     components: &mut Vec<Vec<Pass>>|
     -> Result<(), DiagramError> {
        if current.is_empty() && !*unknot_marker {
            return Err(DiagramError::Parse {
                offset,
                message: "empty component".into(),
            });
        }
        components.push(std::mem::take(current));
        *unknot_marker = false;
        Ok(())
    };

    for (offset, tok) in tokens {
        last_offset = offset;
        match tok {
            Token::Separator => close(&mut current, &mut unknot_marker, offset, &mut components)?,
            Token::Unknot => {
                if unknot_marker || !current.is_empty() {
                    return Err(DiagramError::Parse {
                        offset,
                        message: "'U' marker must stand alone in its component".into(),
                    });
                }
                unknot_marker = true;
            }
            Token::Pass { crossing, role, sign } => {
                if unknot_marker {
                    return Err(DiagramError::Parse {
                        offset,
                        message: "'U' marker must stand alone in its component".into(),
                    });
                }
                record_sign(&mut signs, crossing, sign)?;
                current.push(Pass { crossing, role });
            }
            Token::Boundary(_) => unreachable!("boundaries disabled"),
        }
    }
    close(&mut current, &mut unknot_marker, last_offset, &mut components)?;
    VirtualLinkDiagram::new(components, signs)
}
