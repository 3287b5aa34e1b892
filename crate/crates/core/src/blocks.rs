// SPDX-License-Identifier: Apache-2.0

//! Layer/antilayer block structures of layered permutations.
//!
//! A layered permutation is determined by its composition of layer sizes.
//! Runs of singleton layers are written as antilayers. The canonical form
//! writes a lone singleton as `L1` and a maximal run of two or more
//! singletons as one antilayer, so every layered permutation has exactly one
//! canonical [`BlockStructure`].

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    /// Decreasing run of consecutive values.
    Layer,
    /// Increasing run of consecutive values; equivalent to that many `L1`s.
    Antilayer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Block {
    pub kind: BlockKind,
    pub size: usize,
}

impl Block {
    pub fn layer(size: usize) -> Self {
        Self {
            kind: BlockKind::Layer,
            size,
        }
    }

    pub fn antilayer(size: usize) -> Self {
        Self {
            kind: BlockKind::Antilayer,
            size,
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            BlockKind::Layer => write!(f, "L{}", self.size),
            BlockKind::Antilayer => write!(f, "A{}", self.size),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BlockStructure {
    blocks: Vec<Block>,
}

impl BlockStructure {
    /// Accepts any list of positive-size blocks, canonical or not.
    pub fn new(blocks: Vec<Block>) -> Result<Self> {
        if let Some(index) = blocks.iter().position(|b| b.size == 0) {
            return Err(Error::EmptyBlock { index });
        }
        Ok(Self { blocks })
    }

    /// Canonical structure for a composition of layer sizes. Zero parts are
    /// skipped.
    pub fn from_layer_sizes(parts: &[usize]) -> Self {
        let mut blocks = Vec::new();
        let mut singles = 0usize;
        let flush = |blocks: &mut Vec<Block>, singles: &mut usize| {
            match *singles {
                0 => {}
                1 => blocks.push(Block::layer(1)),
                s => blocks.push(Block::antilayer(s)),
            }
            *singles = 0;
        };
        for &p in parts {
            match p {
                0 => {}
                1 => singles += 1,
                _ => {
                    flush(&mut blocks, &mut singles);
                    blocks.push(Block::layer(p));
                }
            }
        }
        flush(&mut blocks, &mut singles);
        Self { blocks }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.size).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Expanded composition: every antilayer becomes that many `1`s.
    pub fn layer_sizes(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            match b.kind {
                BlockKind::Layer => out.push(b.size),
                BlockKind::Antilayer => out.extend(std::iter::repeat_n(1, b.size)),
            }
        }
        out
    }

    pub fn canonicalize(&self) -> Self {
        Self::from_layer_sizes(&self.layer_sizes())
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonicalize()
    }
}

impl fmt::Display for BlockStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl Serialize for BlockStructure {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses `"L3,L2,L4"` / `"A2,L3"`. The empty string is the empty structure.
pub fn parse_blocks(text: &str) -> Result<BlockStructure> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(BlockStructure::default());
    }
    let mut blocks = Vec::new();
    for raw in text.split(',') {
        let tok = raw.trim();
        let bad = |reason: &str| Error::BadToken {
            token: tok.to_string(),
            reason: reason.to_string(),
        };
        let mut chars = tok.chars();
        let kind = match chars.next() {
            Some('L') | Some('l') => BlockKind::Layer,
            Some('A') | Some('a') => BlockKind::Antilayer,
            _ => return Err(bad("expected L<size> or A<size>")),
        };
        let size: usize = chars
            .as_str()
            .parse()
            .map_err(|_| bad("block size must be a positive integer"))?;
        if size == 0 {
            return Err(bad("block size must be a positive integer"));
        }
        blocks.push(Block { kind, size });
    }
    BlockStructure::new(blocks)
}

impl FromStr for BlockStructure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_blocks(s)
    }
}

/// Splits a permutation into its layers, or returns `None` when it is not
/// layered.
///
/// Layers are read greedily: a layer starting with value `v` above the
/// previous top `t` must continue `v-1, v-2, ..., t+1`.
pub fn layer_composition(values: &[u32]) -> Option<Vec<usize>> {
    let mut parts = Vec::new();
    let mut top = 0u32;
    let mut i = 0;
    while i < values.len() {
        let v = values[i];
        if v <= top {
            return None;
        }
        let size = (v - top) as usize;
        if i + size > values.len() {
            return None;
        }
        for (offset, &w) in values[i..i + size].iter().enumerate() {
            if w != v - offset as u32 {
                return None;
            }
        }
        parts.push(size);
        top = v;
        i += size;
    }
    Some(parts)
}

pub fn decompose_blocks(p: &Permutation) -> Option<BlockStructure> {
    layer_composition(p.as_slice()).map(|parts| BlockStructure::from_layer_sizes(&parts))
}

/// The layered permutation with composition `parts`.
pub fn layered_from_sizes(parts: &[usize]) -> Permutation {
    let mut values = Vec::with_capacity(parts.iter().sum());
    let mut top = 0u32;
    for &p in parts {
        let p = p as u32;
        values.extend((top + 1..=top + p).rev());
        top += p;
    }
    Permutation::from_vec_unchecked(values)
}

pub fn build_from_blocks(b: &BlockStructure) -> Permutation {
    layered_from_sizes(&b.layer_sizes())
}
