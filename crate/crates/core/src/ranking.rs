//! Ranking, unranking, enumeration and uniform sampling.
//!
//! Structures of context `(n, m)` are ordered by their variants:
//!
//! 1. every `Star` variant (words starting with `*`), ranked by the
//!    `(n - 1, m)` sub-variant;
//! 2. then `Pair` variants, grouped in blocks by `(tail_pairs, tail_len)`
//!    in lexicographic order, `tail_pairs` from `0` to `m - 1` and
//!    `tail_len` from `2 * tail_pairs` to `n - 2(m - tail_pairs) - 1`;
//! 3. inside a block, the tail rank is the high digit and the inner rank
//!    the low digit: `offset = inner_rank + S(inner) * tail_rank`.
//!
//! This order is not lexicographic on the words.
//!
//! Every `tail_pairs` group holds exactly `n - 2m` blocks, so blocks are
//! addressed by a flat index. Finding a block's starting offset (ranking)
//! or the block containing a residual rank (unranking) needs a running sum
//! of block sizes. [`rank_variant`] and [`unrank_variant`] accumulate from
//! whichever end of the block list is closer, using the known total
//! `S(n, m) - S(n - 1, m)`; the `_sequential` variants always start from
//! the first block. Both produce identical results.

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::codec::{
    check_pair, structure_to_variant, variant_to_structure, MalformedVariant, MotzkinWord, Step,
    VariantTree,
};
use crate::counting::{BigCount, Counts};

/// 0-based position in the structure order for some context `(n, m)`.
pub type Rank = BigCount;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RankError {
    #[error(transparent)]
    MalformedVariant(#[from] MalformedVariant),
    #[error("count table does not cover (n={n}, m={m})")]
    TableTooSmall { n: usize, m: usize },
    #[error("rank {rank} out of range: S({n}, {m}) = {count}")]
    RankOutOfRange {
        rank: Rank,
        n: usize,
        m: usize,
        count: BigCount,
    },
    #[error("no structures of length {n} with {m} base-pairs")]
    EmptySet { n: usize, m: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Scan {
    FromFirst,
    NearestEnd,
}

fn ensure_covers<C: Counts + ?Sized>(counts: &C, n: usize, m: usize) -> Result<(), RankError> {
    if counts.covers(n, m) {
        Ok(())
    } else {
        Err(RankError::TableTooSmall { n, m })
    }
}

/// The `Pair` blocks of one context.
struct Blocks<'c, C: ?Sized> {
    counts: &'c C,
    n: usize,
    m: usize,
    width: usize,
}

impl<'c, C: Counts + ?Sized> Blocks<'c, C> {
    /// Requires `m > 0` and `n > 2m`.
    fn new(counts: &'c C, n: usize, m: usize) -> Self {
        debug_assert!(m > 0 && n > 2 * m);
        Self {
            counts,
            n,
            m,
            width: n - 2 * m,
        }
    }

    fn len(&self) -> usize {
        self.m * self.width
    }

    fn index_of(&self, tail_pairs: usize, tail_len: usize) -> usize {
        tail_pairs * self.width + (tail_len - 2 * tail_pairs)
    }

    /// `(tail_pairs, tail_len)` of a block index.
    fn params(&self, index: usize) -> (usize, usize) {
        let tail_pairs = index / self.width;
        (tail_pairs, 2 * tail_pairs + index % self.width)
    }

    fn inner_count(&self, tail_pairs: usize, tail_len: usize) -> BigCount {
        self.counts
            .count(self.n - 2 - tail_len, self.m - 1 - tail_pairs)
            .into_owned()
    }

    fn size(&self, index: usize) -> BigCount {
        let (tail_pairs, tail_len) = self.params(index);
        let inner = self.counts.count(self.n - 2 - tail_len, self.m - 1 - tail_pairs);
        let tail = self.counts.count(tail_len, tail_pairs);
        if inner.is_zero() || tail.is_zero() {
            BigCount::zero()
        } else {
            inner.as_ref() * tail.as_ref()
        }
    }

    fn sum(&self, range: std::ops::Range<usize>) -> BigCount {
        range.fold(BigCount::zero(), |acc, index| acc + self.size(index))
    }

    /// Number of pair-led structures, `S(n, m) - S(n - 1, m)`.
    fn total(&self) -> BigCount {
        self.counts.count(self.n, self.m).as_ref() - self.counts.count(self.n - 1, self.m).as_ref()
    }

    /// Rank offset at which block `index` starts.
    fn start_of(&self, index: usize, scan: Scan) -> BigCount {
        let after = self.len() - index;
        if scan == Scan::FromFirst || index <= after {
            self.sum(0..index)
        } else {
            self.total() - self.sum(index..self.len())
        }
    }

    /// Block containing `residual` and the offset inside it.
    fn locate(&self, residual: &BigCount, scan: Scan) -> (usize, BigCount) {
        let mut low = 0usize;
        let mut low_sum = BigCount::zero();
        if scan == Scan::FromFirst {
            loop {
                let next = &low_sum + self.size(low);
                if &next > residual {
                    return (low, residual - low_sum);
                }
                low_sum = next;
                low += 1;
            }
        }
        let total = self.total();
        let mut high = self.len() - 1;
        // Mass of blocks after `high`.
        let mut high_sum = BigCount::zero();
        loop {
            let next = &low_sum + self.size(low);
            if &next > residual {
                return (low, residual - low_sum);
            }
            low_sum = next;
            low += 1;

            high_sum += self.size(high);
            let start = &total - &high_sum;
            if residual >= &start {
                return (high, residual - start);
            }
            high -= 1;
        }
    }
}

fn rank_variant_with<C: Counts + ?Sized>(
    variant: &VariantTree,
    n: usize,
    m: usize,
    counts: &C,
    scan: Scan,
) -> Result<Rank, RankError> {
    ensure_covers(counts, n, m)?;
    // rank(Pair) = base + inner_rank + S(inner) * tail_rank, unrolled: every
    // node contributes its base times the product of S(inner) factors on
    // the tail edges above it.
    let mut rank = Rank::zero();
    let mut pending = vec![(variant, n, m, BigCount::one())];
    while let Some((node, n, m, weight)) = pending.pop() {
        match node {
            VariantTree::Empty => {
                if m != 0 {
                    return Err(MalformedVariant {
                        n,
                        m,
                        reason: "empty variant needs m = 0".into(),
                    }
                    .into());
                }
            }
            VariantTree::Star(sub) => {
                if m == 0 || n == 0 {
                    return Err(MalformedVariant {
                        n,
                        m,
                        reason: "star branch needs m > 0 and n > 0".into(),
                    }
                    .into());
                }
                pending.push((sub, n - 1, m, weight));
            }
            VariantTree::Pair {
                tail_pairs,
                tail_len,
                inner,
                tail,
            } => {
                let (tail_pairs, tail_len) = (*tail_pairs, *tail_len);
                check_pair(n, m, tail_pairs, tail_len)?;
                let blocks = Blocks::new(counts, n, m);
                let base = counts.count(n - 1, m).as_ref()
                    + blocks.start_of(blocks.index_of(tail_pairs, tail_len), scan);
                rank += &weight * base;
                let inner_count = blocks.inner_count(tail_pairs, tail_len);
                pending.push((tail, tail_len, tail_pairs, &weight * inner_count));
                pending.push((inner, n - 2 - tail_len, m - 1 - tail_pairs, weight));
            }
        }
    }
    Ok(rank)
}

fn unrank_variant_with<C: Counts + ?Sized>(
    rank: &Rank,
    n: usize,
    m: usize,
    counts: &C,
    scan: Scan,
) -> Result<VariantTree, RankError> {
    ensure_covers(counts, n, m)?;
    let count = counts.count(n, m);
    if count.is_zero() {
        return Err(RankError::EmptySet { n, m });
    }
    if rank >= count.as_ref() {
        return Err(RankError::RankOutOfRange {
            rank: rank.clone(),
            n,
            m,
            count: count.into_owned(),
        });
    }
    let mut steps = Vec::new();
    let mut pending = vec![(rank.clone(), n, m)];
    while let Some((rank, n, m)) = pending.pop() {
        if m == 0 {
            steps.push(Step::Empty);
            continue;
        }
        let star_count = counts.count(n - 1, m);
        if &rank < star_count.as_ref() {
            steps.push(Step::Star);
            pending.push((rank, n - 1, m));
            continue;
        }
        let residual = rank - star_count.as_ref();
        let blocks = Blocks::new(counts, n, m);
        let (index, offset) = blocks.locate(&residual, scan);
        let (tail_pairs, tail_len) = blocks.params(index);
        let (tail_rank, inner_rank) = offset.div_rem(&blocks.inner_count(tail_pairs, tail_len));
        steps.push(Step::Pair {
            tail_pairs,
            tail_len,
        });
        pending.push((tail_rank, tail_len, tail_pairs));
        pending.push((inner_rank, n - 2 - tail_len, m - 1 - tail_pairs));
    }
    Ok(VariantTree::from_preorder(steps))
}

/// Rank of a variant in context `(n, m)`.
pub fn rank_variant<C: Counts + ?Sized>(
    variant: &VariantTree,
    n: usize,
    m: usize,
    counts: &C,
) -> Result<Rank, RankError> {
    rank_variant_with(variant, n, m, counts, Scan::NearestEnd)
}

/// Variant of rank `rank` in context `(n, m)`.
pub fn unrank_variant<C: Counts + ?Sized>(
    rank: &Rank,
    n: usize,
    m: usize,
    counts: &C,
) -> Result<VariantTree, RankError> {
    unrank_variant_with(rank, n, m, counts, Scan::NearestEnd)
}

/// [`rank_variant`] summing block sizes strictly from the first block.
pub fn rank_variant_sequential<C: Counts + ?Sized>(
    variant: &VariantTree,
    n: usize,
    m: usize,
    counts: &C,
) -> Result<Rank, RankError> {
    rank_variant_with(variant, n, m, counts, Scan::FromFirst)
}

/// [`unrank_variant`] walking blocks strictly from the first block.
pub fn unrank_variant_sequential<C: Counts + ?Sized>(
    rank: &Rank,
    n: usize,
    m: usize,
    counts: &C,
) -> Result<VariantTree, RankError> {
    unrank_variant_with(rank, n, m, counts, Scan::FromFirst)
}

pub fn rank_structure<C: Counts + ?Sized>(word: &MotzkinWord, counts: &C) -> Result<Rank, RankError> {
    rank_variant(&structure_to_variant(word), word.len(), word.pairs(), counts)
}

pub fn unrank_structure<C: Counts + ?Sized>(
    rank: &Rank,
    n: usize,
    m: usize,
    counts: &C,
) -> Result<MotzkinWord, RankError> {
    let variant = unrank_variant(rank, n, m, counts)?;
    Ok(variant_to_structure(&variant, n, m)?)
}

/// Structures with ranks in `from..to`, in rank order.
pub struct Enumerate<'c, C: ?Sized> {
    counts: &'c C,
    n: usize,
    m: usize,
    next: Rank,
    end: Rank,
}

impl<C: Counts + ?Sized> Iterator for Enumerate<'_, C> {
    type Item = MotzkinWord;

    fn next(&mut self) -> Option<MotzkinWord> {
        if self.next >= self.end {
            return None;
        }
        let word = unrank_structure(&self.next, self.n, self.m, self.counts)
            .expect("rank checked against S(n, m)");
        self.next += 1u32;
        Some(word)
    }
}

pub fn enumerate<'c, C: Counts + ?Sized>(
    n: usize,
    m: usize,
    from: &Rank,
    to: &Rank,
    counts: &'c C,
) -> Result<Enumerate<'c, C>, RankError> {
    ensure_covers(counts, n, m)?;
    let count = counts.count(n, m).into_owned();
    for bound in [from, to] {
        if bound > &count || from > to {
            return Err(RankError::RankOutOfRange {
                rank: bound.clone(),
                n,
                m,
                count,
            });
        }
    }
    Ok(Enumerate {
        counts,
        n,
        m,
        next: from.clone(),
        end: to.clone(),
    })
}

/// Uniform integers below a bound.
pub trait RandomSource {
    /// Uniform on `0..bound`. `bound` must be positive.
    fn next_below(&mut self, bound: &BigCount) -> BigCount;
}

impl<R: RngCore + ?Sized> RandomSource for R {
    /// Rejection sampling over `bits(bound)` random bits, drawn as
    /// little-endian bytes, so the stream is platform independent.
    fn next_below(&mut self, bound: &BigCount) -> BigCount {
        assert!(!bound.is_zero(), "empty sampling range");
        let bits = bound.bits();
        let len = bits.div_ceil(8) as usize;
        let mask = 0xffu8 >> (len as u64 * 8 - bits);
        let mut buf = vec![0u8; len];
        loop {
            self.fill_bytes(&mut buf);
            buf[len - 1] &= mask;
            let candidate = BigCount::from_bytes_le(&buf);
            if &candidate < bound {
                return candidate;
            }
        }
    }
}

/// Deterministic random source for a 64-bit seed.
pub fn seeded_source(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `k` independent uniform structures of context `(n, m)`.
pub fn sample<R: RandomSource + ?Sized, C: Counts + ?Sized>(
    n: usize,
    m: usize,
    k: usize,
    rng: &mut R,
    counts: &C,
) -> Result<Vec<MotzkinWord>, RankError> {
    ensure_covers(counts, n, m)?;
    let count = counts.count(n, m).into_owned();
    if count.is_zero() {
        return Err(RankError::EmptySet { n, m });
    }
    (0..k)
        .map(|_| unrank_structure(&rng.next_below(&count), n, m, counts))
        .collect()
}
