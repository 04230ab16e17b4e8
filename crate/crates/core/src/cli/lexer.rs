use num_bigint::BigInt;

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Int(BigInt),
    /// Name with an optional derivative marker: `y'` gives `Some([1])`,
    /// `y_(2,1)` gives `Some([2, 1])`.
    Ident(String, Option<Vec<u32>>, bool),
    Sym(char),
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub(crate) fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Tokenizes `text`, which starts at `column` (1-based) of `line`.
pub(crate) fn tokenize(text: &str, line: usize, column: usize) -> Result<Vec<Token>, Error> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = column + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Int(s.parse().expect("digits")),
                line,
                column: col,
            });
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric()) {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            let mut marker = None;
            let mut primes = false;
            if i < chars.len() && chars[i] == '\'' {
                let p = i;
                while i < chars.len() && chars[i] == '\'' {
                    i += 1;
                }
                marker = Some(vec![(i - p) as u32]);
                primes = true;
            } else if i + 1 < chars.len() && chars[i] == '_' && chars[i + 1] == '(' {
                i += 2;
                let mut exps = Vec::new();
                loop {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    if start == i {
                        return Err(err(line, column + i, "expected a derivative order"));
                    }
                    let s: String = chars[start..i].iter().collect();
                    let k = s
                        .parse()
                        .map_err(|_| err(line, column + start, "derivative order too large"))?;
                    exps.push(k);
                    match chars.get(i) {
                        Some(',') => i += 1,
                        Some(')') => {
                            i += 1;
                            break;
                        }
                        _ => return Err(err(line, column + i, "expected ',' or ')' in multi-index")),
                    }
                }
                marker = Some(exps);
            }
            out.push(Token {
                tok: Tok::Ident(name, marker, primes),
                line,
                column: col,
            });
        } else if "+-*/^()[],;=<".contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                line,
                column: col,
            });
            i += 1;
        } else {
            return Err(err(line, col, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

/// A cursor over tokens; `end` is the column just past the text for messages.
pub(crate) struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    line: usize,
    end: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(toks: &'a [Token], line: usize, end: usize) -> Self {
        Self {
            toks,
            pos: 0,
            line,
            end,
        }
    }

    pub fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.pos)
    }

    pub fn next(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn is_sym(&self, c: char) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Sym(s), .. }) if *s == c)
    }

    /// Position of the current token, or the end of the line.
    pub fn here(&self) -> (usize, usize) {
        self.peek()
            .map_or((self.line, self.end), |t| (t.line, t.column))
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        let (l, c) = self.here();
        err(l, c, message)
    }

    pub fn expect_sym(&mut self, c: char) -> Result<(), Error> {
        if self.is_sym(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }
}
