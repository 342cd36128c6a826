//! The `{-1,+1}` value convention and point/index mappings.
//!
//! `+1` is *true*. Points of `{-1,+1}^k` are carried as `&[i8]` slices and
//! indexed by the integer whose bit `j` is set exactly when coordinate `j`
//! is `+1`. The 0/1 convention maps `+1 <-> 1`, `-1 <-> 0`.

/// True iff `v` is a legal sign value.
pub fn is_sign(v: i8) -> bool {
    v == 1 || v == -1
}

/// `+1 -> 1`, `-1 -> 0`.
#[inline]
pub fn bit(v: i8) -> usize {
    debug_assert!(is_sign(v));
    ((v + 1) >> 1) as usize
}

/// `1 -> +1`, `0 -> -1`.
#[inline]
pub fn sign_of_bit(b: usize) -> i8 {
    debug_assert!(b <= 1);
    (b as i8) * 2 - 1
}

/// Index of a point of `{-1,+1}^k` (bit `j` set iff coordinate `j` is `+1`).
pub fn point_index(x: &[i8]) -> usize {
    debug_assert!(x.len() < usize::BITS as usize);
    x.iter()
        .enumerate()
        .fold(0usize, |acc, (j, &v)| acc | (bit(v) << j))
}

/// Inverse of [`point_index`].
pub fn index_point(idx: usize, k: usize) -> Vec<i8> {
    (0..k).map(|j| sign_of_bit((idx >> j) & 1)).collect()
}

/// Coordinate `j` of the point with index `idx`.
#[inline]
pub fn index_coord(idx: usize, j: usize) -> i8 {
    sign_of_bit((idx >> j) & 1)
}

/// Hamming distance between two sign vectors of equal length.
pub fn hamming(a: &[i8], b: &[i8]) -> usize {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Number of `+1` coordinates of the point with index `idx` in `{-1,+1}^k`.
#[inline]
pub fn index_ones(idx: usize, k: usize) -> u32 {
    (idx & ((1usize << k) - 1)).count_ones()
}
