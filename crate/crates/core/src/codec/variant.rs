use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A variant of the AND/OR tree for `S(n, m)`.
///
/// The context `(n, m)` is not stored; it is threaded through every
/// operation that interprets a variant.
///
/// * `Empty` selects the leaf `S(n, 0)`: `n` unpaired bases.
/// * `Star` selects a leading unpaired base followed by a structure of
///   context `(n - 1, m)`.
/// * `Pair` selects a leading base-pair enclosing `inner`, followed by
///   `tail`. `tail_len` and `tail_pairs` are the length and pair count of
///   the tail, so `inner` has context `(n - 2 - tail_len, m - 1 - tail_pairs)`.
#[derive(Debug)]
pub enum VariantTree {
    Empty,
    Star(Box<VariantTree>),
    Pair {
        tail_pairs: usize,
        tail_len: usize,
        inner: Box<VariantTree>,
        tail: Box<VariantTree>,
    },
}

/// One node of a variant in preorder (`Pair`, then inner, then tail).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Step {
    Empty,
    Star,
    Pair { tail_pairs: usize, tail_len: usize },
}

impl VariantTree {
    pub fn star(sub: VariantTree) -> Self {
        VariantTree::Star(Box::new(sub))
    }

    pub fn pair(tail_pairs: usize, tail_len: usize, inner: VariantTree, tail: VariantTree) -> Self {
        VariantTree::Pair {
            tail_pairs,
            tail_len,
            inner: Box::new(inner),
            tail: Box::new(tail),
        }
    }

    /// Assembles a tree from a complete preorder step list.
    pub(crate) fn from_preorder(steps: Vec<Step>) -> Self {
        let mut built: Vec<VariantTree> = Vec::new();
        for step in steps.into_iter().rev() {
            let node = match step {
                Step::Empty => VariantTree::Empty,
                Step::Star => VariantTree::star(built.pop().expect("star operand")),
                Step::Pair { tail_pairs, tail_len } => {
                    let inner = built.pop().expect("pair inner");
                    let tail = built.pop().expect("pair tail");
                    VariantTree::pair(tail_pairs, tail_len, inner, tail)
                }
            };
            built.push(node);
        }
        debug_assert_eq!(built.len(), 1);
        built.pop().expect("non-empty preorder")
    }

    /// Preorder step list; inverse of `from_preorder`.
    pub(crate) fn preorder(&self) -> Vec<Step> {
        let mut steps = Vec::new();
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            match node {
                VariantTree::Empty => steps.push(Step::Empty),
                VariantTree::Star(sub) => {
                    steps.push(Step::Star);
                    stack.push(sub);
                }
                VariantTree::Pair {
                    tail_pairs,
                    tail_len,
                    inner,
                    tail,
                } => {
                    steps.push(Step::Pair {
                        tail_pairs: *tail_pairs,
                        tail_len: *tail_len,
                    });
                    stack.push(tail);
                    stack.push(inner);
                }
            }
        }
        steps
    }

    /// Number of `Pair` nodes, i.e. the `m` the variant encodes.
    pub fn pair_count(&self) -> usize {
        let mut count = 0;
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            match node {
                VariantTree::Empty => {}
                VariantTree::Star(sub) => stack.push(sub),
                VariantTree::Pair { inner, tail, .. } => {
                    count += 1;
                    stack.push(tail);
                    stack.push(inner);
                }
            }
        }
        count
    }
}

// Star chains can be as long as the word, so the structural traits below
// walk the tree with an explicit stack instead of recursing.

impl Clone for VariantTree {
    fn clone(&self) -> Self {
        VariantTree::from_preorder(self.preorder())
    }
}

impl PartialEq for VariantTree {
    fn eq(&self, other: &Self) -> bool {
        self.preorder() == other.preorder()
    }
}

impl Eq for VariantTree {}

impl Drop for VariantTree {
    fn drop(&mut self) {
        fn detach(node: &mut VariantTree, out: &mut Vec<VariantTree>) {
            let mut take = |child: &mut Box<VariantTree>| {
                if !matches!(**child, VariantTree::Empty) {
                    out.push(*std::mem::replace(child, Box::new(VariantTree::Empty)));
                }
            };
            match node {
                VariantTree::Empty => {}
                VariantTree::Star(sub) => take(sub),
                VariantTree::Pair { inner, tail, .. } => {
                    take(inner);
                    take(tail);
                }
            }
        }
        let mut pending = Vec::new();
        detach(self, &mut pending);
        while let Some(mut node) = pending.pop() {
            detach(&mut node, &mut pending);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("variant syntax error at position {position}: {message}")]
pub struct VariantSyntaxError {
    pub position: usize,
    pub message: String,
}

enum Pending {
    CloseStar,
    PairTail,
    ClosePair,
}

struct Cursor<'a> {
    text: &'a [u8],
    position: usize,
}

impl Cursor<'_> {
    fn error(&self, message: impl Into<String>) -> VariantSyntaxError {
        VariantSyntaxError {
            position: self.position,
            message: message.into(),
        }
    }

    fn expect(&mut self, literal: &str) -> Result<(), VariantSyntaxError> {
        for &byte in literal.as_bytes() {
            if self.text.get(self.position) != Some(&byte) {
                return Err(self.error(format!("expected '{}'", byte as char)));
            }
            self.position += 1;
        }
        Ok(())
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.position).copied()
    }

    fn integer(&mut self) -> Result<usize, VariantSyntaxError> {
        let start = self.position;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.position += 1;
        }
        let digits = &self.text[start..self.position];
        if digits.is_empty() {
            return Err(self.error("expected integer"));
        }
        if digits.len() > 1 && digits[0] == b'0' {
            self.position = start;
            return Err(self.error("leading zero in integer"));
        }
        std::str::from_utf8(digits)
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| {
                self.position = start;
                self.error("integer out of range")
            })
    }
}

/// Parses the canonical variant text:
///
/// ```text
/// V ::= "()" | "(0," V ")" | "(1,(" INT "," INT "," V "," V "))"
/// ```
pub fn parse_variant(text: &str) -> Result<VariantTree, VariantSyntaxError> {
    let mut cursor = Cursor {
        text: text.as_bytes(),
        position: 0,
    };
    let mut steps = Vec::new();
    let mut pending = Vec::new();
    'variant: loop {
        cursor.expect("(")?;
        match cursor.peek() {
            Some(b')') => {
                cursor.position += 1;
                steps.push(Step::Empty);
            }
            Some(b'0') => {
                cursor.expect("0,")?;
                steps.push(Step::Star);
                pending.push(Pending::CloseStar);
                continue 'variant;
            }
            Some(b'1') => {
                cursor.expect("1,(")?;
                let tail_pairs = cursor.integer()?;
                cursor.expect(",")?;
                let tail_len = cursor.integer()?;
                cursor.expect(",")?;
                steps.push(Step::Pair { tail_pairs, tail_len });
                pending.push(Pending::PairTail);
                continue 'variant;
            }
            _ => return Err(cursor.error("expected ')', '0' or '1'")),
        }
        // A complete variant was just read; unwind finished parents.
        loop {
            match pending.pop() {
                None => break 'variant,
                Some(Pending::CloseStar) => cursor.expect(")")?,
                Some(Pending::ClosePair) => cursor.expect("))")?,
                Some(Pending::PairTail) => {
                    cursor.expect(",")?;
                    pending.push(Pending::ClosePair);
                    continue 'variant;
                }
            }
        }
    }
    if cursor.position != cursor.text.len() {
        return Err(cursor.error("trailing input"));
    }
    Ok(VariantTree::from_preorder(steps))
}

/// Canonical text of a variant, without whitespace.
pub fn print_variant(variant: &VariantTree) -> String {
    enum Item<'a> {
        Node(&'a VariantTree),
        Text(&'static str),
    }
    let mut out = String::new();
    let mut stack = vec![Item::Node(variant)];
    while let Some(item) = stack.pop() {
        match item {
            Item::Text(text) => out.push_str(text),
            Item::Node(VariantTree::Empty) => out.push_str("()"),
            Item::Node(VariantTree::Star(sub)) => {
                out.push_str("(0,");
                stack.push(Item::Text(")"));
                stack.push(Item::Node(sub));
            }
            Item::Node(VariantTree::Pair {
                tail_pairs,
                tail_len,
                inner,
                tail,
            }) => {
                out.push_str(&format!("(1,({tail_pairs},{tail_len},"));
                stack.push(Item::Text("))"));
                stack.push(Item::Node(tail));
                stack.push(Item::Text(","));
                stack.push(Item::Node(inner));
            }
        }
    }
    out
}

impl fmt::Display for VariantTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_variant(self))
    }
}

impl FromStr for VariantTree {
    type Err = VariantSyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_variant(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_table_variant() {
        let v = parse_variant("(0,(1,(0,0,(1,(0,0,(),())),())))").unwrap();
        let expected = VariantTree::star(VariantTree::pair(
            0,
            0,
            VariantTree::pair(0, 0, VariantTree::Empty, VariantTree::Empty),
            VariantTree::Empty,
        ));
        assert_eq!(v, expected);
        assert_eq!(v.pair_count(), 2);
    }

    #[test]
    fn empty_variant() {
        assert_eq!(parse_variant("()").unwrap(), VariantTree::Empty);
        assert_eq!(print_variant(&VariantTree::Empty), "()");
    }

    #[test]
    fn rejects_bad_selector() {
        let err = parse_variant("(2,())").unwrap_err();
        assert_eq!(err.position, 1);
    }

    #[test]
    fn rejects_malformed_text() {
        for bad in [
            "", "(", "(0,()", "(0,()))", "(1,(0,0,(),()))x", "(1,(0,0,()))", "(1,(a,0,(),()))",
            "(1,(01,0,(),()))", "( )", "(1,(0,0,(),())", "(1,(99999999999999999999999,0,(),()))",
        ] {
            assert!(parse_variant(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn print_pair() {
        let v = VariantTree::pair(
            1,
            3,
            VariantTree::Empty,
            VariantTree::pair(0, 0, VariantTree::Empty, VariantTree::Empty),
        );
        assert_eq!(print_variant(&v), "(1,(1,3,(),(1,(0,0,(),()))))");
    }

    #[test]
    fn deep_star_chain_round_trips() {
        let depth = 100_000;
        let text = format!("{}(){}", "(0,".repeat(depth), ")".repeat(depth));
        let steps = {
            let mut s = vec![Step::Star; depth];
            s.push(Step::Empty);
            s
        };
        let v = parse_variant(&text).unwrap();
        assert_eq!(print_variant(&v), text);
        assert_eq!(v.preorder(), steps);
        assert_eq!(v, VariantTree::from_preorder(steps).clone());
    }
}
