use super::matroid::{Matroid, Oracle};
use super::set::Set;
use crate::error::{Error, Result};
use crate::field::Matrix;

/// Peels single-element extensions off `m`, returning the innermost base
/// and the generating flats of each step in order.
fn extension_chain(m: &Matroid) -> Option<(Matroid, Vec<Vec<Set>>)> {
    let mut steps = Vec::new();
    let mut cur = m.clone();
    while let Oracle::Extension { base, gens } = cur.oracle() {
        steps.push(gens.clone());
        let next = base.clone();
        cur = next;
    }
    if steps.is_empty() {
        return None;
    }
    steps.reverse();
    Some((cur, steps))
}

fn flat_text(f: Set) -> String {
    if f.is_empty() {
        "-".into()
    } else {
        f.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
    }
}

/// Writes a matroid block. Matroids with a linear representation are written
/// as `type linear`, iterated extensions of one as `type extension` (the base
/// block followed by the generating flats of each cut), everything else as a
/// basis list.
pub fn matroid_to_text(name: &str, m: &Matroid) -> String {
    let mut out = format!("matroid {name}\n");
    if let Some(rep) = m.representation() {
        out.push_str("type linear\n");
        out.push_str(&rep.to_matrix().to_text(rep.field()));
        return out;
    }
    if let Some((base, steps)) = extension_chain(m) {
        out.push_str("type extension\n");
        out.push_str(&matroid_to_text("base", &base));
        out.push_str(&format!("extensions {}\n", steps.len()));
        for gens in steps {
            out.push_str("cut");
            let parts: Vec<String> = gens.iter().map(|&g| flat_text(g)).collect();
            if !parts.is_empty() {
                out.push(' ');
                out.push_str(&parts.join(" ; "));
            }
            out.push('\n');
        }
        return out;
    }
    out.push_str(&format!("type explicit\nrank {}\nelements {}\nbases\n", m.full_rank(), m.n()));
    for b in m.bases() {
        if b.is_empty() {
            out.push_str("-\n");
        } else {
            let line: Vec<String> = b.iter().map(|e| e.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
    }
    out
}

pub(crate) fn skip_blank(lines: &[&str], mut i: usize) -> usize {
    while i < lines.len() && {
        let t = lines[i].trim();
        t.is_empty() || t.starts_with('#')
    } {
        i += 1;
    }
    i
}

fn keyword<'a>(lines: &[&'a str], i: usize, key: &str) -> Result<&'a str> {
    let line = lines.get(i).ok_or_else(|| Error::parse(i + 1, 1, format!("expected `{key}`, found end of input")))?;
    let t = line.trim_start();
    match t.strip_prefix(key) {
        Some(rest) if rest.is_empty() || rest.starts_with(char::is_whitespace) => Ok(rest.trim()),
        _ => Err(Error::parse(i + 1, 1, format!("expected `{key}`"))),
    }
}

fn number(lines: &[&str], i: usize, key: &str) -> Result<usize> {
    let rest = keyword(lines, i, key)?;
    rest.parse().map_err(|_| Error::parse(i + 1, key.len() + 2, format!("`{rest}` is not a number")))
}

fn is_basis_line(line: &str) -> bool {
    let t = line.trim();
    t == "-" || (!t.is_empty() && t.split_whitespace().all(|w| w.bytes().all(|b| b.is_ascii_digit())))
}

/// Parses one matroid block starting at `lines[start]` (leading blank lines
/// are skipped). Returns the name, the matroid and the next unread line.
pub fn parse_matroid_block(lines: &[&str], start: usize) -> Result<(String, Matroid, usize)> {
    block(lines, start, true)
}

fn block(lines: &[&str], start: usize, checked: bool) -> Result<(String, Matroid, usize)> {
    let mut i = skip_blank(lines, start);
    let name = keyword(lines, i, "matroid")?.to_string();
    i += 1;
    let kind = keyword(lines, i, "type")?;
    i += 1;
    match kind {
        "linear" => {
            let (field, matrix, next) = Matrix::parse_lines(lines, i)?;
            let m = Matroid::linear(&field, &matrix).map_err(|e| Error::parse(i + 1, 1, e.to_string()))?;
            Ok((name, m, next))
        }
        "explicit" => {
            let rank = number(lines, i, "rank")?;
            let n = number(lines, i + 1, "elements")?;
            keyword(lines, i + 2, "bases")?;
            i += 3;
            let mut bases = Vec::new();
            while i < lines.len() && is_basis_line(lines[i]) {
                let line = lines[i];
                let mut b = Set::EMPTY;
                if line.trim() != "-" {
                    for tok in line.split_whitespace() {
                        let col = line.find(tok).unwrap_or(0) + 1;
                        let e: usize = tok.parse().map_err(|_| Error::parse(i + 1, col, "bad element"))?;
                        if e >= n {
                            return Err(Error::parse(i + 1, col, format!("element {e} outside 0..{n}")));
                        }
                        if b.contains(e) {
                            return Err(Error::parse(i + 1, col, format!("element {e} repeated")));
                        }
                        b = b.with(e);
                    }
                }
                if b.len() != rank {
                    return Err(Error::parse(i + 1, 1, format!("basis of size {} in a rank-{rank} matroid", b.len())));
                }
                bases.push(b);
                i += 1;
            }
            let m = if checked { Matroid::from_bases(n, &bases) } else { Matroid::from_bases_unchecked(n, &bases) };
            let m = m.map_err(|e| Error::parse(i.min(lines.len()), 1, e.to_string()))?;
            Ok((name, m, i))
        }
        "extension" => {
            let (_, mut m, next) = block(lines, i, checked)?;
            i = next;
            let steps = number(lines, i, "extensions")?;
            i += 1;
            for _ in 0..steps {
                let rest = keyword(lines, i, "cut")?;
                let mut gens = Vec::new();
                if !rest.is_empty() {
                    for part in rest.split(';') {
                        let mut f = Set::EMPTY;
                        for tok in part.split_whitespace().filter(|t| *t != "-") {
                            let e: usize = tok
                                .parse()
                                .map_err(|_| Error::parse(i + 1, 1, format!("`{tok}` is not an element")))?;
                            if e >= m.n() {
                                return Err(Error::parse(i + 1, 1, format!("element {e} outside 0..{}", m.n())));
                            }
                            f = f.with(e);
                        }
                        gens.push(f);
                    }
                }
                m = crate::geometry::CutSpec::Generated(gens)
                    .generators(&m)
                    .and_then(|g| m.extend_unchecked(g))
                    .map_err(|e| Error::parse(i + 1, 1, e.to_string()))?;
                i += 1;
            }
            Ok((name, m, i))
        }
        other => Err(Error::parse(i, 6, format!("unknown matroid type `{other}`"))),
    }
}

/// Parses a text holding exactly one matroid block.
pub fn parse_matroid(text: &str) -> Result<(String, Matroid)> {
    parse_whole(text, true)
}

/// Like [`parse_matroid`], but a basis list is taken as given, without the
/// exchange check, so that a broken family can be examined.
pub fn parse_matroid_unchecked(text: &str) -> Result<(String, Matroid)> {
    parse_whole(text, false)
}

fn parse_whole(text: &str, checked: bool) -> Result<(String, Matroid)> {
    let lines: Vec<&str> = text.lines().collect();
    let (name, m, next) = block(&lines, 0, checked)?;
    let rest = skip_blank(&lines, next);
    if rest < lines.len() {
        return Err(Error::parse(rest + 1, 1, "unexpected trailing content"));
    }
    Ok((name, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{projective_points, FieldSpec};

    #[test]
    fn explicit_round_trip() {
        let m = Matroid::uniform(2, 4);
        let text = matroid_to_text("u24", &m);
        assert!(text.starts_with("matroid u24\ntype explicit\nrank 2\nelements 4\nbases\n"));
        let (name, back) = parse_matroid(&text).unwrap();
        assert_eq!(name, "u24");
        assert!(back.same_rank_function(&m));
    }

    #[test]
    fn linear_round_trip() {
        let f = FieldSpec::new(3).unwrap();
        let m = Matroid::linear(&f, &Matrix::from_columns(2, &projective_points(&f, 2))).unwrap();
        let (_, back) = parse_matroid(&matroid_to_text("pg13", &m)).unwrap();
        assert!(back.representation().is_some());
        assert!(back.same_rank_function(&m));
    }

    #[test]
    fn rank_zero_uses_dash() {
        let m = Matroid::uniform(0, 2);
        let text = matroid_to_text("loops", &m);
        assert!(text.ends_with("bases\n-\n"));
        assert!(parse_matroid(&text).unwrap().1.same_rank_function(&m));
    }

    #[test]
    fn errors_carry_positions() {
        let bad = "matroid x\ntype explicit\nrank 2\nelements 3\nbases\n0 5\n";
        match parse_matroid(bad) {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (6, 3)),
            other => panic!("unexpected {other:?}"),
        }
        let broken = "matroid x\ntype explicit\nrank 1\nelements 3\nbases\n0 1\n";
        assert!(matches!(parse_matroid(broken), Err(Error::Parse { line: 6, .. })));
        let nonmatroid = "matroid x\ntype explicit\nrank 2\nelements 4\nbases\n0 1\n2 3\n";
        assert!(parse_matroid(nonmatroid).is_err());
    }
}
