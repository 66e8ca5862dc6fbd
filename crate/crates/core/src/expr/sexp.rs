//! Text form: `(du A B ...)`, `(sc A B)`, leaves `L<k>` and `E`.

use thiserror::Error;

use super::WitnessTree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

pub fn serialize(t: &WitnessTree) -> String {
    let mut s = String::new();
    write(t, &mut s);
    s
}

fn write(t: &WitnessTree, s: &mut String) {
    match t {
        WitnessTree::Leaf(i) => {
            s.push('L');
            s.push_str(&i.to_string());
        }
        WitnessTree::Empty => s.push('E'),
        WitnessTree::DUnion(cs) => {
            s.push_str("(du");
            for c in cs {
                s.push(' ');
                write(c, s);
            }
            s.push(')');
        }
        WitnessTree::SComp(l, r) => {
            s.push_str("(sc ");
            write(l, s);
            s.push(' ');
            write(r, s);
            s.push(')');
        }
    }
}

pub fn parse(text: &str) -> Result<WitnessTree, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let t = p.tree()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(t)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ParseError {
        ParseError {
            pos: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn word(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("")
    }

    fn tree(&mut self) -> Result<WitnessTree, ParseError> {
        self.skip_ws();
        match self.src.get(self.pos) {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let at = self.pos;
                let op = self.word().to_string();
                let mut children = Vec::new();
                loop {
                    self.skip_ws();
                    match self.src.get(self.pos) {
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        None => return Err(self.error("unclosed parenthesis")),
                        _ => children.push(self.tree()?),
                    }
                }
                match op.as_str() {
                    "du" if !children.is_empty() => Ok(WitnessTree::DUnion(children)),
                    "du" => Err(ParseError {
                        pos: at,
                        message: "du needs at least one child".into(),
                    }),
                    "sc" if children.len() == 2 => {
                        let r = children.pop().unwrap();
                        let l = children.pop().unwrap();
                        Ok(WitnessTree::scomp(l, r))
                    }
                    "sc" => Err(ParseError {
                        pos: at,
                        message: "sc needs exactly two children".into(),
                    }),
                    _ => Err(ParseError {
                        pos: at,
                        message: format!("unknown operator {op:?}"),
                    }),
                }
            }
            Some(_) => {
                let at = self.pos;
                let w = self.word().to_string();
                if w == "E" {
                    Ok(WitnessTree::Empty)
                } else if let Some(k) = w.strip_prefix('L').and_then(|d| d.parse().ok()) {
                    Ok(WitnessTree::Leaf(k))
                } else {
                    Err(ParseError {
                        pos: at,
                        message: format!("expected a leaf, found {w:?}"),
                    })
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_case() {
        let t = parse("(du (sc L0 L2) L1)").unwrap();
        assert_eq!(
            t,
            WitnessTree::dunion(vec![
                WitnessTree::scomp(WitnessTree::Leaf(0), WitnessTree::Leaf(2)),
                WitnessTree::Leaf(1)
            ])
        );
        assert_eq!(serialize(&t), "(du (sc L0 L2) L1)");
    }

    #[test]
    fn whitespace_is_free() {
        let t = parse("  ( du\n(sc L0   E ) L12 )").unwrap();
        assert_eq!(serialize(&t), "(du (sc L0 E) L12)");
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse("(sc L0)").unwrap_err().pos, 1);
        assert_eq!(parse("(du L0").unwrap_err().pos, 6);
        assert_eq!(parse("L0 L1").unwrap_err().pos, 3);
        assert_eq!(parse("(xx L0)").unwrap_err().message, "unknown operator \"xx\"");
        assert_eq!(parse("Q").unwrap_err().pos, 0);
    }
}
