use thiserror::Error;

use super::variant::{Step, VariantTree};
use super::word::{MotzkinWord, CLOSE, OPEN, UNPAIRED};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed variant for context (n={n}, m={m}): {reason}")]
pub struct MalformedVariant {
    pub n: usize,
    pub m: usize,
    pub reason: String,
}

impl MalformedVariant {
    fn new(n: usize, m: usize, reason: impl Into<String>) -> Self {
        Self {
            n,
            m,
            reason: reason.into(),
        }
    }
}

/// Checks the `Pair` bounds `tail_pairs < m` and
/// `2 * tail_pairs <= tail_len <= n - 2(m - tail_pairs) - 1`.
pub(crate) fn check_pair(
    n: usize,
    m: usize,
    tail_pairs: usize,
    tail_len: usize,
) -> Result<(), MalformedVariant> {
    if tail_pairs >= m {
        return Err(MalformedVariant::new(
            n,
            m,
            format!("tail pair count {tail_pairs} must be below {m}"),
        ));
    }
    let upper = n as i128 - 2 * (m - tail_pairs) as i128 - 1;
    if tail_len < 2 * tail_pairs || tail_len as i128 > upper {
        return Err(MalformedVariant::new(
            n,
            m,
            format!("tail length {tail_len} outside {}..={upper}", 2 * tail_pairs),
        ));
    }
    Ok(())
}

/// Converts a word into its AND/OR-tree variant.
///
/// A leading `*` gives `Star`. Otherwise the word is scanned from its first
/// symbol, counting opening and closing brackets, up to the 1-based position
/// `i` where both counts first agree: that is the bracket closing the leading
/// pair. The tail is then the last `n - i` symbols and carries
/// `m - opened` pairs.
///
/// Works on index ranges of the original word; nothing is copied.
pub fn structure_to_variant(word: &MotzkinWord) -> VariantTree {
    let symbols = word.as_bytes();
    let mut steps = Vec::new();
    // (start, n, m)
    let mut pending = vec![(0usize, word.len(), word.pairs())];
    while let Some((start, n, m)) = pending.pop() {
        if m == 0 {
            steps.push(Step::Empty);
            continue;
        }
        let region = &symbols[start..start + n];
        if region[0] == UNPAIRED {
            steps.push(Step::Star);
            pending.push((start + 1, n - 1, m));
            continue;
        }
        let (mut opened, mut closed) = (0usize, 0usize);
        let mut split = None;
        for (offset, &symbol) in region.iter().enumerate() {
            match symbol {
                OPEN => opened += 1,
                CLOSE => closed += 1,
                _ => {}
            }
            if opened == closed {
                split = Some((offset + 1, opened));
                break;
            }
        }
        let (position, opened) = split.expect("valid word closes its leading pair");
        let tail_pairs = m - opened;
        let tail_len = n - position;
        steps.push(Step::Pair {
            tail_pairs,
            tail_len,
        });
        pending.push((start + position, tail_len, tail_pairs));
        pending.push((start + 1, n - 2 - tail_len, m - 1 - tail_pairs));
    }
    VariantTree::from_preorder(steps)
}

/// Converts a variant back into the word it encodes in context `(n, m)`.
///
/// At `m = 0` only `Empty` is accepted; `Empty` in any other context is
/// rejected, as is a `Pair` whose bounds fall outside its context.
pub fn variant_to_structure(
    variant: &VariantTree,
    n: usize,
    m: usize,
) -> Result<MotzkinWord, MalformedVariant> {
    enum Item<'a> {
        Node(&'a VariantTree, usize, usize),
        Close,
    }
    let mut symbols = Vec::with_capacity(n);
    let mut pending = vec![Item::Node(variant, n, m)];
    while let Some(item) = pending.pop() {
        let (node, n, m) = match item {
            Item::Close => {
                symbols.push(CLOSE);
                continue;
            }
            Item::Node(node, n, m) => (node, n, m),
        };
        match node {
            VariantTree::Empty => {
                if m != 0 {
                    return Err(MalformedVariant::new(n, m, "empty variant needs m = 0"));
                }
                symbols.extend(std::iter::repeat_n(UNPAIRED, n));
            }
            VariantTree::Star(sub) => {
                if m == 0 || n == 0 {
                    return Err(MalformedVariant::new(n, m, "star branch needs m > 0 and n > 0"));
                }
                symbols.push(UNPAIRED);
                pending.push(Item::Node(sub, n - 1, m));
            }
            VariantTree::Pair {
                tail_pairs,
                tail_len,
                inner,
                tail,
            } => {
                let (tail_pairs, tail_len) = (*tail_pairs, *tail_len);
                check_pair(n, m, tail_pairs, tail_len)?;
                symbols.push(OPEN);
                pending.push(Item::Node(tail, tail_len, tail_pairs));
                pending.push(Item::Close);
                pending.push(Item::Node(inner, n - 2 - tail_len, m - 1 - tail_pairs));
            }
        }
    }
    debug_assert_eq!(symbols.len(), n);
    Ok(MotzkinWord::from_valid(symbols, m))
}
