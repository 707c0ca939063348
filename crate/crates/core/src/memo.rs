//! Per-round memo of rejected edge ranks.

/// Dense bitmaps are used while `C(n, k)` fits in this many bits (1 GiB).
pub(crate) const BITMAP_LIMIT: u64 = 1 << 33;
/// Words per lazily allocated page (2^16 bits).
const PAGE_WORDS: usize = 1 << 10;

/// Exact set of ranks. Above [`BITMAP_LIMIT`] the bitmap is split into pages
/// that are allocated on first write, so memory follows the ranks touched.
#[derive(Debug)]
pub(crate) enum RejectMemo {
    Dense(Vec<u64>),
    Paged(Vec<Option<Box<[u64; PAGE_WORDS]>>>),
}

impl RejectMemo {
    pub(crate) fn new(total_edges: u64) -> Self {
        if total_edges <= BITMAP_LIMIT {
            RejectMemo::Dense(vec![0; total_edges.div_ceil(64) as usize])
        } else {
            let pages = total_edges.div_ceil(64 * PAGE_WORDS as u64) as usize;
            RejectMemo::Paged(std::iter::repeat_with(|| None).take(pages).collect())
        }
    }

    pub(crate) fn contains(&self, rank: u64) -> bool {
        let word = (rank / 64) as usize;
        let bit = rank % 64;
        match self {
            RejectMemo::Dense(bits) => bits[word] >> bit & 1 == 1,
            RejectMemo::Paged(pages) => pages[word / PAGE_WORDS]
                .as_ref()
                .is_some_and(|p| p[word % PAGE_WORDS] >> bit & 1 == 1),
        }
    }

    pub(crate) fn insert(&mut self, rank: u64) {
        let word = (rank / 64) as usize;
        let bit = rank % 64;
        match self {
            RejectMemo::Dense(bits) => bits[word] |= 1 << bit,
            RejectMemo::Paged(pages) => {
                let page = pages[word / PAGE_WORDS].get_or_insert_with(|| Box::new([0; PAGE_WORDS]));
                page[word % PAGE_WORDS] |= 1 << bit;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_variants_remember() {
        let big = BITMAP_LIMIT * 4;
        assert!(matches!(RejectMemo::new(1000), RejectMemo::Dense(_)));
        assert!(matches!(RejectMemo::new(big), RejectMemo::Paged(_)));
        for (mut m, last) in [(RejectMemo::new(1000), 999), (RejectMemo::new(big), big - 1)] {
            assert!(!m.contains(777));
            m.insert(777);
            m.insert(0);
            m.insert(last);
            assert!(m.contains(777) && m.contains(0) && m.contains(last));
            assert!(!m.contains(776) && !m.contains(last - 1));
        }
    }
}
