//! Shift-add Rabin hashing: `h <- (h << 1) + byte` with wrapping arithmetic.
//!
//! For a window of length `m` this is `sum(b_i * 2^(m-1-i))` reduced modulo
//! `2^BITS` of the word. There is no prime modulus; the word width is the
//! only reduction. A consequence is that only the trailing `BITS` bytes of a
//! window influence its hash.

use std::fmt;
use std::hash::Hash;

use num_traits::{PrimInt, Unsigned, WrappingAdd, WrappingMul, WrappingShl, WrappingSub};

use crate::{Error, HashValue, Result};

/// Unsigned machine word used to accumulate a window hash.
pub trait HashWord:
    PrimInt
    + Unsigned
    + WrappingAdd
    + WrappingSub
    + WrappingMul
    + WrappingShl
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
    const BITS: u32;

    fn from_byte(b: u8) -> Self;
}

macro_rules! impl_hash_word {
    ($($t:ty)*) => ($(
        impl HashWord for $t {
            const BITS: u32 = <$t>::BITS;

            #[inline]
            fn from_byte(b: u8) -> Self {
                b as $t
            }
        }
    )*)
}

impl_hash_word! { u8 u16 u32 u64 u128 }

/// A window hash accumulated in the word `W`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShiftAddHash<W>(W);

impl<W: HashWord> ShiftAddHash<W> {
    /// Hash of the empty string.
    pub fn zero() -> Self {
        ShiftAddHash(W::zero())
    }

    pub fn from_word(word: W) -> Self {
        ShiftAddHash(word)
    }

    pub fn word(self) -> W {
        self.0
    }

    /// Appends one byte: `h * 2 + b`.
    #[inline(always)]
    pub fn push(self, b: u8) -> Self {
        ShiftAddHash(self.0.wrapping_shl(1).wrapping_add(&W::from_byte(b)))
    }

    #[inline]
    pub fn of(bytes: &[u8]) -> Self {
        bytes.iter().fold(Self::zero(), |h, &b| h.push(b))
    }

    /// Hashes `text[offset..offset + m]` from scratch.
    pub fn of_window(text: &[u8], offset: usize, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroWindow);
        }
        match offset.checked_add(m) {
            Some(end) if end <= text.len() => Ok(Self::of(&text[offset..end])),
            _ => Err(Error::WindowOutOfRange {
                offset,
                len: m,
                text_len: text.len(),
            }),
        }
    }

    /// Slides an `m`-byte window one position right: drops `outgoing` from
    /// the front and appends `incoming`.
    pub fn roll(self, outgoing: u8, incoming: u8, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroWindow);
        }
        let lead = W::from_byte(outgoing).wrapping_mul(&pow2::<W>(m - 1));
        Ok(ShiftAddHash(self.0.wrapping_sub(&lead)).push(incoming))
    }
}

impl<W: HashWord> fmt::Display for ShiftAddHash<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl From<ShiftAddHash<u64>> for u64 {
    fn from(h: ShiftAddHash<u64>) -> u64 {
        h.0
    }
}

/// `2^k mod 2^BITS`.
fn pow2<W: HashWord>(k: usize) -> W {
    if k >= W::BITS as usize {
        W::zero()
    } else {
        W::one() << k
    }
}

pub fn hash_full(bytes: &[u8]) -> HashValue {
    HashValue::of(bytes)
}

pub fn hash_window(text: &[u8], offset: usize, m: usize) -> Result<HashValue> {
    HashValue::of_window(text, offset, m)
}

pub fn roll(prev: HashValue, outgoing: u8, incoming: u8, m: usize) -> Result<HashValue> {
    prev.roll(outgoing, incoming, m)
}
