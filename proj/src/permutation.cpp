#include "dichro/permutation.hpp"

#include <string>

#include "dichro/error.hpp"

namespace dichro {

std::uint64_t factorial(int n) {
    if (n < 0 || n > 20) throw Error(ErrorKind::TooLarge, std::to_string(n) + "! does not fit in 64 bits");
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

std::uint64_t permutation_rank(const std::vector<int>& perm) {
    const int n = static_cast<int>(perm.size());
    std::uint64_t rank = 0;
    for (int i = 0; i < n; ++i) {
        std::uint64_t smaller = 0;
        for (int j = i + 1; j < n; ++j) smaller += perm[j] < perm[i];
        rank += smaller * factorial(n - 1 - i);
    }
    return rank;
}

std::vector<int> permutation_unrank(std::uint64_t rank, int n) {
    if (rank >= factorial(n))
        throw Error(ErrorKind::OutOfRange, "rank " + std::to_string(rank) + " exceeds " + std::to_string(n) + "!");
    std::vector<int> pool(n), perm;
    for (int i = 0; i < n; ++i) pool[i] = i;
    for (int i = 0; i < n; ++i) {
        std::uint64_t f = factorial(n - 1 - i);
        auto idx = static_cast<std::size_t>(rank / f);
        rank %= f;
        perm.push_back(pool[idx]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    return perm;
}

}  // namespace dichro
