//! Recursive-descent parser for formulas and sequents.
//!
//! ```text
//! disj  := conj (('|' | '∨') conj)*
//! conj  := unary (('&' | '∧') unary)*
//! unary := ('~' | '!' | '¬') unary | atom | '(' disj ')'
//! atom  := [a-z][a-zA-Z0-9_']*
//! ```
//!
//! Offsets in errors count characters from the start of the input.

use super::{Formula, Sequent};
use crate::error::SyntaxError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Atom(String),
    Not,
    And,
    Or,
    LParen,
    RParen,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Atom(name) => format!("atom {name:?}"),
            Token::Not => "'~'".into(),
            Token::And => "'&'".into(),
            Token::Or => "'|'".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
        }
    }
}

fn tokenize(text: &str, base: usize) -> Result<Vec<(usize, Token)>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let at = base + i;
        match c {
            c if c.is_whitespace() => {}
            '~' | '!' | '¬' => out.push((at, Token::Not)),
            '&' | '∧' => out.push((at, Token::And)),
            '|' | '∨' => out.push((at, Token::Or)),
            '(' => out.push((at, Token::LParen)),
            ')' => out.push((at, Token::RParen)),
            'a'..='z' => {
                let start = i;
                while i + 1 < chars.len()
                    && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_' || chars[i + 1] == '\'')
                {
                    i += 1;
                }
                out.push((at, Token::Atom(chars[start..=i].iter().collect())));
            }
            other => return Err(SyntaxError::new(at, format!("unexpected character {other:?}"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn disjunction(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.conjunction()?;
        while self.peek() == Some(&Token::Or) {
            self.pos += 1;
            lhs = lhs.or(self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Token::And) {
            self.pos += 1;
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        let at = self.offset();
        match self.tokens.get(self.pos).map(|(_, t)| t.clone()) {
            Some(Token::Not) => {
                self.pos += 1;
                Ok(self.unary()?.not())
            }
            Some(Token::Atom(name)) => {
                self.pos += 1;
                Ok(Formula::Atom(name))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.disjunction()?;
                match self.peek() {
                    Some(Token::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    Some(t) => Err(SyntaxError::new(self.offset(), format!("expected ')', found {}", t.describe()))),
                    None => Err(SyntaxError::new(self.end, "expected ')', found end of input")),
                }
            }
            Some(t) => Err(SyntaxError::new(at, format!("expected a formula, found {}", t.describe()))),
            None => Err(SyntaxError::new(at, "expected a formula, found end of input")),
        }
    }
}

fn parse_at(text: &str, base: usize) -> Result<Formula, SyntaxError> {
    let tokens = tokenize(text, base)?;
    let end = base + text.chars().count();
    if tokens.is_empty() {
        return Err(SyntaxError::new(base, "empty formula"));
    }
    let mut parser = Parser { tokens, pos: 0, end };
    let formula = parser.disjunction()?;
    if let Some(t) = parser.peek() {
        return Err(SyntaxError::new(parser.offset(), format!("unexpected {}", t.describe())));
    }
    Ok(formula)
}

/// Parses a single formula. Whitespace is insignificant.
pub fn parse_formula(text: &str) -> Result<Formula, SyntaxError> {
    parse_at(text, 0)
}

fn parse_side(text: &str, base: usize) -> Result<Vec<Formula>, SyntaxError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut start = 0usize;
    for piece in text.split(',') {
        let offset = base + text[..start].chars().count();
        out.push(parse_at(piece, offset)?);
        start += piece.len() + 1;
    }
    Ok(out)
}

/// Parses `Γ |- Δ` with comma-separated sides. `⊢` is accepted for `|-`.
/// Duplicate formulas on a side collapse.
pub fn parse_sequent(text: &str) -> Result<Sequent, SyntaxError> {
    let (split, turnstile_len) = match (text.find("|-"), text.find('⊢')) {
        (Some(a), Some(b)) if b < a => (b, '⊢'.len_utf8()),
        (Some(a), _) => (a, 2),
        (None, Some(b)) => (b, '⊢'.len_utf8()),
        (None, None) => {
            return Err(SyntaxError::new(text.chars().count(), "missing \"|-\" between premises and conclusions"))
        }
    };
    let (lhs, rest) = text.split_at(split);
    let rhs = &rest[turnstile_len..];
    let rhs_base = text[..split + turnstile_len].chars().count();
    Ok(Sequent::new(parse_side(lhs, 0)?, parse_side(rhs, rhs_base)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }
    fn q() -> Formula {
        Formula::atom("q")
    }
    fn r() -> Formula {
        Formula::atom("r")
    }

    #[test]
    fn formula_examples() {
        assert_eq!(parse_formula("~(p & q) | r").unwrap(), p().and(q()).not().or(r()));
        assert_eq!(parse_formula("p & q & r").unwrap(), p().and(q()).and(r()));
        assert_eq!(parse_formula("p | q | r").unwrap(), p().or(q()).or(r()));
        let err = parse_formula("p ~q").unwrap_err();
        assert_eq!(err.offset, 2);
    }

    #[test]
    fn aliases_and_precedence() {
        assert_eq!(parse_formula("¬p ∧ q ∨ r").unwrap(), p().not().and(q()).or(r()));
        assert_eq!(parse_formula("!p&q|r").unwrap(), parse_formula("((~p) & q) | r").unwrap());
        assert_eq!(parse_formula("p & (q | r)").unwrap(), p().and(q().or(r())));
        assert_eq!(parse_formula("p'_1").unwrap(), Formula::atom("p'_1"));
    }

    #[test]
    fn formula_errors() {
        assert_eq!(parse_formula("").unwrap_err().offset, 0);
        assert_eq!(parse_formula("   ").unwrap_err().offset, 0);
        assert_eq!(parse_formula("(p & q").unwrap_err().offset, 6);
        assert_eq!(parse_formula("p &").unwrap_err().offset, 3);
        assert_eq!(parse_formula("P").unwrap_err().offset, 0);
        assert_eq!(parse_formula("p )").unwrap_err().offset, 2);
        assert_eq!(parse_formula("p # q").unwrap_err().offset, 2);
    }

    #[test]
    fn sequent_examples() {
        let s = parse_sequent("p, ~p |- q").unwrap();
        assert_eq!(s, Sequent::new([p(), p().not()], [q()]));
        let s = parse_sequent("|- p | ~p").unwrap();
        assert!(s.premises.is_empty());
        assert_eq!(s.conclusions.iter().collect::<Vec<_>>(), vec![&p().or(p().not())]);
        assert_eq!(parse_sequent("p |- p").unwrap(), Sequent::new([p()], [p()]));
        assert_eq!(parse_sequent("p ⊢ p").unwrap(), Sequent::new([p()], [p()]));
        assert_eq!(parse_sequent("|-").unwrap(), Sequent::default());
    }

    #[test]
    fn sequent_sides_are_sets() {
        assert_eq!(parse_sequent("p, p |- q").unwrap(), parse_sequent("p |- q").unwrap());
    }

    #[test]
    fn sequent_errors() {
        let err = parse_sequent("p, q").unwrap_err();
        assert!(err.message.contains("|-"));
        let err = parse_sequent("p |- q, ~").unwrap_err();
        assert_eq!(err.offset, 9);
        let err = parse_sequent("p |- q, ~)").unwrap_err();
        assert_eq!(err.offset, 9);
        let err = parse_sequent("p,,q |- r").unwrap_err();
        assert_eq!(err.offset, 2);
    }
}
