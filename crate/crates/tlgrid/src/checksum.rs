//! Order-independent checksums for cross-method result validation.
//!
//! Benchmarks compare these across index/join implementations before
//! trusting any timing: identical result sets give identical checksums
//! regardless of emission order or thread count.

use crate::join::JoinPair;

fn mix64(mut v: u64) -> u64 {
    // splitmix64 finalizer
    v = v.wrapping_add(0x9e37_79b9_7f4a_7c15);
    v = (v ^ (v >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    v = (v ^ (v >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    v ^ (v >> 31)
}

/// Commutative checksum of a multiset of ids.
pub fn id_checksum<I: IntoIterator<Item = u64>>(ids: I) -> u64 {
    ids.into_iter().fold(0u64, |acc, id| acc.wrapping_add(mix64(id)))
}

/// Commutative checksum of a multiset of ordered (r, s) pairs.
pub fn pair_checksum<'a, I: IntoIterator<Item = &'a JoinPair>>(pairs: I) -> u64 {
    pairs
        .into_iter()
        .fold(0u64, |acc, p| acc.wrapping_add(mix64(mix64(p.r_id) ^ p.s_id.rotate_left(32))))
}
