//! Line-oriented parser for `.knit` files.
//!
//! ```text
//! pattern  = { blank } , cast_on , { row | blank } ;
//! cast_on  = "co" , integer ;
//! row      = "row" , [ integer ] , ":" , item , { [ "," ] , item } ;
//! item     = group | instr ;
//! group    = "*" , instr , { [ "," ] , instr } , "*" , repeat ;
//! instr    = "turn" | stitch , [ "to" , target ] | stitch , [ repeat ] ;
//! target   = "end" | "center" | "last" , integer ;
//! repeat   = "x" , integer ;          (* "x3" or "x 3" *)
//! stitch   = word ;                   (* "k3" is sugar for k x3 *)
//! ```
//!
//! `#` starts a comment that runs to the end of the line.

use crate::error::{Error, Result};

use super::{Instruction, Pattern, Row, Target};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Int(usize),
    Star,
    Comma,
    Colon,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    col: usize,
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        col,
        message: message.into(),
    }
}

fn lex(text: &str, line: usize) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() => i += 1,
            '*' | ',' | ':' => {
                out.push(Spanned {
                    tok: match c {
                        '*' => Tok::Star,
                        ',' => Tok::Comma,
                        _ => Tok::Colon,
                    },
                    col,
                });
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let value = digits
                    .parse()
                    .map_err(|_| syntax(line, col, format!("number `{digits}` is too large")))?;
                out.push(Spanned {
                    tok: Tok::Int(value),
                    col,
                });
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '-' || chars[i] == '_')
                {
                    i += 1;
                }
                out.push(Spanned {
                    tok: Tok::Word(chars[start..i].iter().collect()),
                    col,
                });
            }
            other => return Err(syntax(line, col, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

/// `k3` → ("k", 3). Only letters-then-digits words are sugar, so names such
/// as `k2tog` or `m1L` pass through untouched.
fn split_count(word: &str) -> Option<(&str, &str)> {
    let split = word.find(|c: char| c.is_ascii_digit())?;
    let (name, digits) = word.split_at(split);
    (digits.chars().all(|c| c.is_ascii_digit()) && name.chars().all(|c| c.is_ascii_alphabetic()))
        .then_some((name, digits))
}

struct Cursor<'a> {
    toks: &'a [Spanned],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |s| s.col)
    }

    fn next(&mut self) -> Option<Tok> {
        let tok = self.toks.get(self.pos).map(|s| s.tok.clone());
        self.pos += 1;
        tok
    }

    fn err(&self, message: impl Into<String>) -> Error {
        syntax(self.line, self.col(), message)
    }

    fn skip_commas(&mut self) {
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
        }
    }

    fn positive(&mut self, what: &str) -> Result<usize> {
        let col = self.col();
        match self.next() {
            Some(Tok::Int(0)) => Err(syntax(self.line, col, format!("{what} must be at least 1"))),
            Some(Tok::Int(n)) => Ok(n),
            _ => Err(syntax(self.line, col, format!("expected {what}"))),
        }
    }

    /// Optional `xN` / `x N` suffix.
    fn repeat_suffix(&mut self) -> Result<Option<usize>> {
        let Some(Tok::Word(w)) = self.peek() else {
            return Ok(None);
        };
        if w == "x" {
            self.pos += 1;
            return self.positive("repeat count").map(Some);
        }
        match w.strip_prefix('x') {
            Some(digits) if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) => {
                let col = self.col();
                let n: usize = digits
                    .parse()
                    .map_err(|_| syntax(self.line, col, "repeat count is too large"))?;
                if n == 0 {
                    return Err(syntax(self.line, col, "repeat count must be at least 1"));
                }
                self.pos += 1;
                Ok(Some(n))
            }
            _ => Ok(None),
        }
    }

    fn instruction(&mut self) -> Result<Instruction> {
        let col = self.col();
        let word = match self.next() {
            Some(Tok::Word(w)) => w,
            Some(_) => return Err(syntax(self.line, col, "expected a stitch")),
            None => {
                return Err(syntax(
                    self.line,
                    col,
                    "expected a stitch, found end of line",
                ))
            }
        };
        if word == "turn" {
            return Ok(Instruction::Turn);
        }
        if let Some((name, digits)) = split_count(&word) {
            let count: usize = digits
                .parse()
                .map_err(|_| syntax(self.line, col, "stitch count is too large"))?;
            if count == 0 {
                return Err(syntax(self.line, col, "stitch count must be at least 1"));
            }
            let count = match self.repeat_suffix()? {
                Some(times) => count * times,
                None => count,
            };
            return Ok(Instruction::times(name, count));
        }
        if self.peek() == Some(&Tok::Word("to".into())) {
            self.pos += 1;
            let col = self.col();
            let target = match self.next() {
                Some(Tok::Word(w)) if w == "end" => Target::End,
                Some(Tok::Word(w)) if w == "center" || w == "centre" => Target::Center,
                Some(Tok::Word(w)) if w == "last" => {
                    let col = self.col();
                    match self.next() {
                        Some(Tok::Int(n)) => Target::Last(n),
                        _ => {
                            return Err(syntax(
                                self.line,
                                col,
                                "expected a stitch count after `last`",
                            ))
                        }
                    }
                }
                _ => {
                    return Err(syntax(
                        self.line,
                        col,
                        "expected `end`, `center` or `last N` after `to`",
                    ))
                }
            };
            return Ok(Instruction::until(&word, target));
        }
        let count = self.repeat_suffix()?.unwrap_or(1);
        Ok(Instruction::times(&word, count))
    }

    fn row(&mut self) -> Result<Row> {
        let mut row = Vec::new();
        loop {
            self.skip_commas();
            match self.peek() {
                None => break,
                Some(Tok::Star) => {
                    self.pos += 1;
                    let mut group = Vec::new();
                    loop {
                        self.skip_commas();
                        match self.peek() {
                            Some(Tok::Star) => {
                                self.pos += 1;
                                break;
                            }
                            None => return Err(self.err("unterminated repeat group")),
                            _ => {
                                let col = self.col();
                                let instr = self.instruction()?;
                                if instr == Instruction::Turn {
                                    return Err(syntax(
                                        self.line,
                                        col,
                                        "`turn` cannot be repeated",
                                    ));
                                }
                                group.push(instr);
                            }
                        }
                    }
                    if group.is_empty() {
                        return Err(self.err("empty repeat group"));
                    }
                    let times = self
                        .repeat_suffix()?
                        .ok_or_else(|| self.err("expected `xN` after repeat group"))?;
                    for _ in 0..times {
                        row.extend(group.iter().cloned());
                    }
                }
                Some(_) => {
                    let col = self.col();
                    if row.last() == Some(&Instruction::Turn) {
                        return Err(syntax(self.line, col, "`turn` must end the row"));
                    }
                    row.push(self.instruction()?);
                }
            }
        }
        if row.is_empty() {
            return Err(self.err("row has no instructions"));
        }
        Ok(row)
    }
}

/// Parses `.knit` text. Stitch names are not checked here; unknown stitches
/// surface when the pattern is converted.
pub fn parse(text: &str) -> Result<Pattern> {
    let mut cast_on = None;
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = lex(raw, line)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor {
            toks: &toks,
            pos: 0,
            line,
            end_col: raw.chars().count() + 1,
        };
        match cur.next() {
            Some(Tok::Word(w)) if w == "co" && cast_on.is_none() => {
                cast_on = Some(cur.positive("cast-on count")?);
                if cur.peek().is_some() {
                    return Err(cur.err("unexpected text after cast-on"));
                }
            }
            Some(Tok::Word(w)) if w == "co" => {
                return Err(syntax(line, 1, "pattern has more than one cast-on line"))
            }
            Some(Tok::Word(w)) if w == "row" => {
                if cast_on.is_none() {
                    return Err(syntax(line, 1, "rows must follow the `co N` line"));
                }
                if let Some(Tok::Int(_)) = cur.peek() {
                    cur.pos += 1;
                }
                if cur.next() != Some(Tok::Colon) {
                    cur.pos -= 1;
                    return Err(cur.err("expected `:` after `row`"));
                }
                rows.push(cur.row()?);
            }
            _ => return Err(syntax(line, 1, "expected `co N` or `row:`")),
        }
    }
    let cast_on = cast_on.ok_or_else(|| syntax(1, 1, "missing `co N` line"))?;
    Ok(Pattern { cast_on, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Instruction {
        Instruction::times("k", n)
    }

    #[test]
    fn literal_rows() {
        let p = parse("co 3\nrow: k3\nrow: k3").unwrap();
        assert_eq!(p.cast_on, 3);
        assert_eq!(p.rows, vec![vec![k(3)], vec![k(3)]]);
    }

    #[test]
    fn repeat_groups_expand() {
        let p = parse("co 4\nrow: k1, *yo, k2tog* x1, k1").unwrap();
        assert_eq!(
            p.rows[0],
            vec![
                k(1),
                Instruction::times("yo", 1),
                Instruction::times("k2tog", 1),
                k(1)
            ]
        );
        let p = parse("co 6\nrow: *k1 p1* x 3").unwrap();
        assert_eq!(p.rows[0].len(), 6);
    }

    #[test]
    fn missing_colon_is_a_syntax_error() {
        match parse("co 2\nrow k2") {
            Err(Error::Syntax { line, col, .. }) => assert_eq!((line, col), (2, 5)),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn until_targets_and_turn() {
        let p =
            parse("co 7 # top\nrow 1: k2, yo, k to center, k to last 2, p to end\nrow: k3 turn")
                .unwrap();
        assert_eq!(
            p.rows[0],
            vec![
                k(2),
                Instruction::times("yo", 1),
                Instruction::until("k", Target::Center),
                Instruction::until("k", Target::Last(2)),
                Instruction::until("p", Target::End),
            ]
        );
        assert_eq!(p.rows[1], vec![k(3), Instruction::Turn]);
    }

    #[test]
    fn non_sugar_names_take_a_repeat_suffix() {
        let p = parse("co 8\nrow: k2tog x2, sl1-k2-psso, m1L").unwrap();
        assert_eq!(
            p.rows[0],
            vec![
                Instruction::times("k2tog", 2),
                Instruction::times("sl1-k2-psso", 1),
                Instruction::times("m1L", 1)
            ]
        );
    }

    #[test]
    fn rejects_malformed_input() {
        for text in [
            "",
            "row: k1",
            "co 0",
            "co 3\nco 3",
            "co 3\nrow:",
            "co 3\nrow: k0",
            "co 3\nrow: turn, k1",
            "co 3\nrow: *k1, turn* x2",
            "co 3\nrow: *k1",
            "co 3\nrow: *k1*",
            "co 3\nrow: k to middle",
            "co 3\nrow: k1; k2",
            "co 3 4",
        ] {
            assert!(matches!(parse(text), Err(Error::Syntax { .. })), "{text:?}");
        }
    }

    #[test]
    fn pretty_print_round_trips() {
        let text = "co 7\nrow: k2, yo, k to center, yo, k, yo, k to last 2, yo, k2\nrow: k2tog x3, p4, kfb, turn\n";
        let p = parse(text).unwrap();
        assert_eq!(p.to_string(), text);
        assert_eq!(parse(&p.to_string()).unwrap(), p);
    }
}
