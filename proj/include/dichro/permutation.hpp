#pragma once

#include <cstdint>
#include <vector>

namespace dichro {

/// n! as an unsigned 64-bit value; throws TooLarge past 20!.
std::uint64_t factorial(int n);

/// Rank of a permutation of 0..n-1 in lexicographic order (Lehmer code).
std::uint64_t permutation_rank(const std::vector<int>& perm);

/// Inverse of permutation_rank. Throws OutOfRange when rank >= n!.
std::vector<int> permutation_unrank(std::uint64_t rank, int n);

}  // namespace dichro
