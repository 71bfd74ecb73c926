//! Single-output PLA text (`.type fr`): on-set rows end in `1`, off-set
//! rows in `0`, and vertices listed in neither are don't cares. Input
//! column `j` is variable `x_j`.

use std::io::{self, Write};

use thiserror::Error;

use super::{BoolTable, Cover, Cube, LogicError, Ternary};

pub enum PlaSource<'a> {
    /// On- and off-set vertices as full minterm rows.
    Table(&'a BoolTable),
    /// Cover cubes as on-set rows.
    Cover(&'a Cover),
}

pub fn write_pla<W: Write>(src: &PlaSource<'_>, out: &mut W) -> io::Result<()> {
    let (vars, rows): (u32, Vec<(String, char)>) = match src {
        PlaSource::Table(t) => {
            let rows = (0..t.vertex_count() as u32)
                .filter_map(|x| match t.get(x) {
                    Ternary::One => Some((Cube::minterm(t.vars(), x).pattern(t.vars()), '1')),
                    Ternary::Zero => Some((Cube::minterm(t.vars(), x).pattern(t.vars()), '0')),
                    Ternary::DontCare => None,
                })
                .collect();
            (t.vars(), rows)
        }
        PlaSource::Cover(c) => (c.vars, c.cubes.iter().map(|cube| (cube.pattern(c.vars), '1')).collect()),
    };
    writeln!(out, ".i {vars}")?;
    writeln!(out, ".o 1")?;
    writeln!(out, ".type fr")?;
    writeln!(out, ".p {}", rows.len())?;
    for (pattern, o) in rows {
        writeln!(out, "{pattern} {o}")?;
    }
    writeln!(out, ".e")
}

pub fn export_pla(src: &PlaSource<'_>) -> String {
    let mut buf = Vec::new();
    write_pla(src, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("PLA text is ASCII")
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlaError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `.i` directive")]
    MissingInputs,
    #[error("`.p {declared}` but {found} rows")]
    RowCount { declared: usize, found: usize },
    #[error(transparent)]
    Logic(#[from] LogicError),
}

/// Parsed single-output PLA.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaFunction {
    pub vars: u32,
    pub on: Vec<Cube>,
    pub off: Vec<Cube>,
}

impl PlaFunction {
    /// Table with don't cares outside the listed rows; off rows are applied
    /// after on rows.
    pub fn to_table(&self) -> Result<BoolTable, LogicError> {
        let mut t = BoolTable::dont_care(self.vars)?;
        for c in &self.on {
            c.for_each_vertex(self.vars, |x| t.set(x, Ternary::One));
        }
        for c in &self.off {
            c.for_each_vertex(self.vars, |x| t.set(x, Ternary::Zero));
        }
        Ok(t)
    }
}

pub fn parse_pla(text: &str) -> Result<PlaFunction, PlaError> {
    let mut vars: Option<u32> = None;
    let mut declared = None;
    let mut on = Vec::new();
    let mut off = Vec::new();
    let syntax = |line: usize, msg: &str| PlaError::Syntax { line, msg: msg.to_string() };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tok = line.split_whitespace();
        let head = tok.next().unwrap_or_default();
        match head {
            ".i" => {
                let v: u32 = tok.next().and_then(|s| s.parse().ok()).ok_or_else(|| syntax(line_no, "bad .i"))?;
                if v > super::MAX_TABLE_VARS {
                    return Err(LogicError::TooManyVars(v).into());
                }
                vars = Some(v);
            }
            ".o" => {
                if tok.next() != Some("1") {
                    return Err(syntax(line_no, "only single-output PLAs are supported"));
                }
            }
            ".type" => match tok.next() {
                Some("fr") | Some("f") => {}
                _ => return Err(syntax(line_no, "unsupported .type")),
            },
            ".p" => {
                declared =
                    Some(tok.next().and_then(|s| s.parse::<usize>().ok()).ok_or_else(|| syntax(line_no, "bad .p"))?);
            }
            ".e" | ".end" => break,
            ".ilb" | ".ob" => {}
            _ if head.starts_with('.') => return Err(syntax(line_no, &format!("unknown directive {head}"))),
            pattern => {
                let v = vars.ok_or(PlaError::MissingInputs)?;
                // with no inputs the row is just the output column
                let (pattern, out) = match (v, tok.next()) {
                    (0, None) => ("", pattern),
                    (_, Some(out)) => (pattern, out),
                    (_, None) => return Err(syntax(line_no, "missing output column")),
                };
                if pattern.chars().count() != v as usize {
                    return Err(syntax(line_no, "input pattern width does not match .i"));
                }
                let cube = Cube::parse_pattern(pattern).ok_or_else(|| syntax(line_no, "bad input pattern"))?;
                match out {
                    "1" => on.push(cube),
                    "0" => off.push(cube),
                    "-" | "~" | "2" => {}
                    _ => return Err(syntax(line_no, "bad output column")),
                }
            }
        }
    }
    let vars = vars.ok_or(PlaError::MissingInputs)?;
    if let Some(d) = declared {
        let found = on.len() + off.len();
        if d != found {
            return Err(PlaError::RowCount { declared: d, found });
        }
    }
    Ok(PlaFunction { vars, on, off })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn and_cover() {
        let cover = Cover { vars: 2, cubes: vec![Cube { mask: 0b11, value: 0b11 }] };
        assert_eq!(export_pla(&PlaSource::Cover(&cover)), ".i 2\n.o 1\n.type fr\n.p 1\n11 1\n.e\n");
    }

    #[test]
    fn empty_cover() {
        let cover = Cover { vars: 3, cubes: vec![] };
        assert_eq!(export_pla(&PlaSource::Cover(&cover)), ".i 3\n.o 1\n.type fr\n.p 0\n.e\n");
    }

    #[test]
    fn table_rows_skip_dont_cares() {
        let mut t = BoolTable::from_bits(2, &[0, 1, 1, 0]).unwrap();
        t.set(3, Ternary::DontCare);
        assert_eq!(export_pla(&PlaSource::Table(&t)), ".i 2\n.o 1\n.type fr\n.p 3\n00 0\n10 1\n01 1\n.e\n");
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_pla("11 1\n"), Err(PlaError::MissingInputs));
        assert!(matches!(parse_pla(".i 2\n.p 2\n11 1\n.e\n"), Err(PlaError::RowCount { declared: 2, found: 1 })));
        assert!(matches!(parse_pla(".i 2\n111 1\n"), Err(PlaError::Syntax { line: 2, .. })));
        assert!(matches!(parse_pla(".i 2\n.o 2\n"), Err(PlaError::Syntax { line: 2, .. })));
    }

    proptest! {
        #[test]
        fn table_round_trip(vars in 0u32..=7, cells in proptest::collection::vec(0u8..3, 128)) {
            let t = BoolTable::from_fn(vars, |x| match cells[x as usize] {
                0 => Ternary::Zero,
                1 => Ternary::One,
                _ => Ternary::DontCare,
            }).unwrap();
            let parsed = parse_pla(&export_pla(&PlaSource::Table(&t))).unwrap();
            prop_assert_eq!(parsed.to_table().unwrap(), t);
        }
    }
}
