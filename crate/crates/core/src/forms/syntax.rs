//! Text syntax for forms.
//!
//! ```text
//! phi[1,3;2]                          phi^{13} ^ phib^{2}
//! phi[1,3;1] + phi[2,3;2]
//! phi[1,3;2] + phi[2,3;1] + (0,-2)*phi[2,3;2]
//! -V3bg*phi[1,2;3]                    symbolic coefficient
//! (1/2,0)*V3g^2*phi[;]                0-form
//! ```
//!
//! `φ` is accepted for `phi`, `·` for `*` and `−` for `-`.

use num_traits::One;

use super::{Form, Generator};
use crate::error::{Error, Result};
use crate::scalars::{format_rational, parse_rational, Coefficient, GaussianRational, Monomial};

/// Renders forms in the text syntax accepted by [`parse_form`].
#[derive(Clone, Copy, Debug, Default)]
pub struct FormPrinter {
    unicode: bool,
}

impl FormPrinter {
    pub fn ascii() -> Self {
        Self { unicode: false }
    }

    pub fn unicode() -> Self {
        Self { unicode: true }
    }

    pub fn new(ascii: bool) -> Self {
        Self { unicode: !ascii }
    }

    pub fn print(&self, f: &Form) -> String {
        let (phi, times) = if self.unicode {
            ("φ", "·")
        } else {
            ("phi", "*")
        };
        let mut out = String::new();
        for (m, c) in f.terms() {
            let hol: Vec<String> = m.hol().map(|k| (k + 1).to_string()).collect();
            let anti: Vec<String> = m.anti().map(|k| (k + 1).to_string()).collect();
            let basis = format!("{phi}[{};{}]", hol.join(","), anti.join(","));
            for (mono, s) in c.terms() {
                let (negative, scalar) = if s.is_one() {
                    (false, None)
                } else if (-s).is_one() {
                    (true, None)
                } else {
                    (false, Some(s))
                };
                let mut body = Vec::new();
                if let Some(s) = scalar {
                    body.push(format!(
                        "({},{})",
                        format_rational(s.re()),
                        format_rational(s.im())
                    ));
                }
                if !mono.is_unit() {
                    for (sym, e) in mono.factors() {
                        body.push(if *e == 1 {
                            sym.clone()
                        } else {
                            format!("{sym}^{e}")
                        });
                    }
                }
                body.push(basis.clone());
                let body = body.join(times);
                match (out.is_empty(), negative) {
                    (true, false) => out.push_str(&body),
                    (true, true) => {
                        out.push('-');
                        out.push_str(&body);
                    }
                    (false, false) => {
                        out.push_str(" + ");
                        out.push_str(&body);
                    }
                    (false, true) => {
                        out.push_str(" - ");
                        out.push_str(&body);
                    }
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Parses the text syntax over a coframe of half-dimension `n`.
pub fn parse_form(n: usize, text: &str) -> Result<Form> {
    let mut p = Parser {
        chars: text.char_indices().collect(),
        pos: 0,
        len: text.len(),
        n,
    };
    let f = p.form()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

fn wedge_into(acc: Option<Form>, m: Form) -> Form {
    match acc {
        Some(a) => a.wedge(&m),
        None => m,
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
    n: usize,
}

impl Parser {
    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |c| c.0)
    }

    fn error(&self, message: &str) -> Error {
        Error::FormSyntax {
            position: self.offset(),
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn sign(&mut self) -> Option<bool> {
        self.skip_ws();
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Some(false)
            }
            Some('-') | Some('−') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn form(&mut self) -> Result<Form> {
        let mut out = Form::zero(self.n);
        let mut negative = self.sign().unwrap_or(false);
        loop {
            let t = self.term()?;
            if negative {
                out.add_assign(&-&t);
            } else {
                out.add_assign(&t);
            }
            match self.sign() {
                Some(neg) => negative = neg,
                None => break,
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Form> {
        let mut coeff = Coefficient::one();
        let mut basis: Option<Form> = None;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('(') => {
                    self.pos += 1;
                    let re = self.rational()?;
                    self.expect(',')?;
                    let im = self.rational()?;
                    self.expect(')')?;
                    coeff = coeff.scale(&GaussianRational::new(re, im));
                }
                Some(c) if c.is_ascii_digit() => {
                    let r = self.rational()?;
                    coeff = coeff.scale(&GaussianRational::real(r));
                }
                Some('φ') => {
                    self.pos += 1;
                    let m = self.monomial()?;
                    basis = Some(wedge_into(basis, m));
                }
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                    let name = self.identifier();
                    self.skip_ws();
                    if name == "phi" && self.peek() == Some('[') {
                        let m = self.monomial()?;
                        basis = Some(wedge_into(basis, m));
                    } else {
                        let mut e = 1;
                        if self.eat('^') {
                            self.skip_ws();
                            let digits = self.digits();
                            e = digits
                                .parse()
                                .map_err(|_| self.error("expected exponent"))?;
                        }
                        coeff = coeff.multiply(&Coefficient::from_term(
                            Monomial::from_factors([(name, e)]),
                            GaussianRational::one(),
                        ));
                    }
                }
                _ => return Err(self.error("expected a coefficient or phi[...]")),
            }
            self.skip_ws();
            match self.peek() {
                Some('*') | Some('·') => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        let basis = basis.unwrap_or_else(|| Form::one(self.n));
        Ok(basis.scale(&coeff))
    }

    fn identifier(&mut self) -> String {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().map(|c| c.1).collect()
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().map(|c| c.1).collect()
    }

    fn rational(&mut self) -> Result<num_rational::BigRational> {
        self.skip_ws();
        let mut text = String::new();
        if matches!(self.peek(), Some('-') | Some('−')) {
            self.pos += 1;
            text.push('-');
        }
        let num = self.digits();
        if num.is_empty() {
            return Err(self.error("expected digits"));
        }
        text.push_str(&num);
        if self.peek() == Some('/') {
            self.pos += 1;
            let den = self.digits();
            if den.is_empty() {
                return Err(self.error("expected denominator"));
            }
            text.push('/');
            text.push_str(&den);
        }
        parse_rational(&text).map_err(|_| self.error("invalid rational"))
    }

    fn index_list(&mut self, close: char) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        self.skip_ws();
        if self.peek() == Some(close) {
            return Ok(out);
        }
        loop {
            self.skip_ws();
            let d = self.digits();
            let k: usize = d.parse().map_err(|_| self.error("expected an index"))?;
            if k == 0 || k > self.n {
                return Err(self.error(&format!("index {k} outside 1..={}", self.n)));
            }
            out.push(k);
            if !self.eat(',') {
                break;
            }
        }
        Ok(out)
    }

    /// `[h1,h2;a1,a2]` after the `phi` keyword.
    fn monomial(&mut self) -> Result<Form> {
        self.expect('[')?;
        let hol = self.index_list(';')?;
        self.expect(';')?;
        let anti = self.index_list(']')?;
        self.expect(']')?;
        let factors: Vec<Generator> = hol
            .iter()
            .map(|&k| Generator::hol(k - 1))
            .chain(anti.iter().map(|&k| Generator::anti(k - 1)))
            .collect();
        Ok(Form::product(self.n, &factors))
    }
}
