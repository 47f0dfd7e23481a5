use crate::Word;

/// Flat array of 32-bit words holding every replica of every logical cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhysicalMemory {
    words: Vec<Word>,
}

impl PhysicalMemory {
    pub fn new(capacity: usize) -> Self {
        PhysicalMemory {
            words: vec![0; capacity],
        }
    }

    pub fn capacity(&self) -> usize {
        self.words.len()
    }

    /// Panics if `addr` is not below the capacity.
    pub fn load(&self, addr: usize) -> Word {
        self.words[addr]
    }

    pub fn store(&mut self, addr: usize, value: Word) {
        self.words[addr] = value;
    }

    /// XORs `mask` into the word at `addr`.
    pub fn corrupt(&mut self, addr: usize, mask: Word) {
        self.words[addr] ^= mask;
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }
}
