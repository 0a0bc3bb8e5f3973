//! Seeded DNA corpora and planted ground-truth occurrences.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const DNA_ALPHABET: &[u8] = b"ACGT";

/// splitmix64 (Steele, Lea and Flood). Output is identical on every platform.
#[derive(Clone, Copy, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish value in `0..bound` by plain modulo reduction.
    #[inline]
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DnaSpec {
    pub seed: u64,
    pub length: usize,
    #[serde(with = "alphabet_str")]
    pub alphabet: Vec<u8>,
}

impl DnaSpec {
    pub fn dna(seed: u64, length: usize) -> Self {
        DnaSpec {
            seed,
            length,
            alphabet: DNA_ALPHABET.to_vec(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.alphabet.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut seen = [false; 256];
        for &b in &self.alphabet {
            if std::mem::replace(&mut seen[b as usize], true) {
                return Err(Error::DuplicateSymbol(b));
            }
        }
        Ok(())
    }
}

/// `length` symbols, each `alphabet[next_u64() % |alphabet|]` from a
/// splitmix64 stream seeded with `spec.seed`.
pub fn generate(spec: &DnaSpec) -> Result<Vec<u8>> {
    spec.validate()?;
    let mut rng = SplitMix64::new(spec.seed);
    let k = spec.alphabet.len() as u64;
    Ok((0..spec.length)
        .map(|_| spec.alphabet[rng.below(k) as usize])
        .collect())
}

/// Copy of `text` with `pattern` written at each offset. Offsets may come in
/// any order but must not overlap or run past the end.
pub fn plant(text: &[u8], pattern: &[u8], offsets: &[usize]) -> Result<Vec<u8>> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let mut sorted = offsets.to_vec();
    sorted.sort_unstable();
    for &x in &sorted {
        if x.checked_add(pattern.len())
            .is_none_or(|end| end > text.len())
        {
            return Err(Error::PlantOutOfRange {
                offset: x,
                text_len: text.len(),
            });
        }
    }
    for w in sorted.windows(2) {
        if w[1] < w[0] + pattern.len() {
            return Err(Error::PlantOverlap {
                first: w[0],
                second: w[1],
            });
        }
    }
    let mut out = text.to_vec();
    for &x in &sorted {
        out[x..x + pattern.len()].copy_from_slice(pattern);
    }
    Ok(out)
}

/// Up to `count` non-overlapping offsets for a pattern of length `m`: the
/// text is cut into equal slots and one offset is drawn inside each.
pub fn spread_offsets(text_len: usize, m: usize, count: usize, seed: u64) -> Vec<usize> {
    if m == 0 || m > text_len {
        return Vec::new();
    }
    let slots = count.min(text_len / m);
    if slots == 0 {
        return Vec::new();
    }
    let stride = text_len / slots;
    let mut rng = SplitMix64::new(seed);
    (0..slots)
        .map(|slot| slot * stride + rng.below((stride - m + 1) as u64) as usize)
        .collect()
}

mod alphabet_str {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(alphabet: &[u8], s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&String::from_utf8_lossy(alphabet))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<u8>, D::Error> {
        Ok(String::deserialize(d)?.into_bytes())
    }
}
