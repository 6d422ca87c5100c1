//! Deterministic derivation of child seeds from a master seed.
//!
//! Child streams are independent functions of `(master, purpose, index)`, so
//! adding more runs or refinement cells never perturbs the streams of earlier
//! ones. The mix is an FNV-1a hash of the purpose tag folded with the master
//! seed and index, finished with the SplitMix64 permutation.

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the seed for the `index`-th stream of the given purpose.
pub fn derive_seed(master: u64, purpose: &str, index: u64) -> u64 {
    let mut h: u64 = 0xCBF2_9CE4_8422_2325 ^ master;
    for byte in purpose.bytes() {
        h ^= u64::from(byte);
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    splitmix64(h ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}
