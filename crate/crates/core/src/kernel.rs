//! Kernel notation for complexes.
//!
//! Tokens are whitespace separated (parentheses may also be attached):
//! `d` is an unpaired domain, `d*` its complement, `d(` opens a pair closed
//! by the matching `)` (which stands for the complement of `d`), and `+`
//! separates strands.

use std::collections::BTreeMap;

use crate::model::{Domain, Loc, Strand, Structure};

/// Serializes strands and structure into kernel notation.
pub fn format_structure(strands: &[Strand], structure: &Structure) -> String {
    let mut out = String::new();
    for (i, (s, row)) in strands.iter().zip(structure).enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        for (j, (d, b)) in s.domains().iter().zip(row).enumerate() {
            if j > 0 {
                out.push(' ');
            }
            match b {
                Some(t) if *t > Loc::new(i, j) => {
                    out.push_str(&d.to_string());
                    out.push('(');
                }
                Some(_) => out.push(')'),
                None => out.push_str(&d.to_string()),
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Token {
    Domain { name: String, complement: bool, opens: bool },
    Close,
    Break,
}

/// Kernel syntax problem at a 1-based column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelError {
    pub column: usize,
    pub message: String,
}

impl KernelError {
    fn at(column: usize, message: impl Into<String>) -> Self {
        KernelError {
            column,
            message: message.into(),
        }
    }
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.'
}

/// Splits an expression into tokens with their 1-based columns.
pub fn tokenize(expr: &str) -> Result<Vec<(usize, Token)>, KernelError> {
    let chars: Vec<char> = expr.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c == '+' {
            out.push((col, Token::Break));
            i += 1;
        } else if c == ')' {
            out.push((col, Token::Close));
            i += 1;
        } else if is_name_char(c) {
            let start = i;
            while i < chars.len() && is_name_char(chars[i]) {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            let complement = i < chars.len() && chars[i] == '*';
            if complement {
                i += 1;
            }
            let opens = i < chars.len() && chars[i] == '(';
            if opens {
                i += 1;
            }
            out.push((
                col,
                Token::Domain {
                    name,
                    complement,
                    opens,
                },
            ));
        } else {
            return Err(KernelError::at(col, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

/// Parses a kernel expression against a table of domain lengths.
///
/// The result is the strand list and structure in the order written; it is
/// not yet validated for connectivity or nesting.
pub fn parse(
    expr: &str,
    lengths: &BTreeMap<String, u32>,
) -> Result<(Vec<Strand>, Structure), KernelError> {
    let tokens = tokenize(expr)?;
    if tokens.is_empty() {
        return Err(KernelError::at(1, "empty complex expression"));
    }
    let mut strands: Vec<Vec<Domain>> = vec![Vec::new()];
    let mut pairs: Vec<(Loc, Loc)> = Vec::new();
    // open pairs: (location, opener domain, column)
    let mut stack: Vec<(Loc, Domain, usize)> = Vec::new();
    let mut last_col = 1;
    for (col, tok) in tokens {
        last_col = col;
        let here = Loc::new(strands.len() - 1, strands.last().unwrap().len());
        match tok {
            Token::Break => {
                if strands.last().unwrap().is_empty() {
                    return Err(KernelError::at(col, "empty strand"));
                }
                strands.push(Vec::new());
            }
            Token::Domain {
                name,
                complement,
                opens,
            } => {
                let Some(&len) = lengths.get(&name) else {
                    return Err(KernelError::at(col, format!("undeclared domain '{name}'")));
                };
                let d = Domain::new(name, len, complement)
                    .map_err(|e| KernelError::at(col, e.to_string()))?;
                if opens {
                    stack.push((here, d.clone(), col));
                }
                strands.last_mut().unwrap().push(d);
            }
            Token::Close => {
                let Some((open, d, _)) = stack.pop() else {
                    return Err(KernelError::at(col, "unbalanced ')'"));
                };
                strands.last_mut().unwrap().push(d.complement());
                pairs.push((open, here));
            }
        }
    }
    if let Some((_, d, col)) = stack.pop() {
        return Err(KernelError::at(col, format!("unclosed '{d}('")));
    }
    if strands.last().unwrap().is_empty() {
        return Err(KernelError::at(last_col, "empty strand"));
    }
    let strands: Vec<Strand> = strands
        .into_iter()
        .map(|ds| Strand::new(ds).expect("non-empty strand"))
        .collect();
    let mut structure: Structure = strands.iter().map(|s| vec![None; s.len()]).collect();
    for (a, b) in pairs {
        structure[a.strand][a.domain] = Some(b);
        structure[b.strand][b.domain] = Some(a);
    }
    Ok((strands, structure))
}
