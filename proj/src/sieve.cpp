#include "alphaforge/sieve.hpp"

namespace alphaforge {

std::vector<u32> primes_up_to(u32 n) {
    std::vector<u32> out;
    if (n < 2) return out;
    std::vector<char> comp(static_cast<size_t>(n) + 1, 0);
    for (u64 i = 2; i * i <= n; ++i)
        if (!comp[i])
            for (u64 j = i * i; j <= n; j += i) comp[j] = 1;
    for (u32 i = 2; i <= n; ++i)
        if (!comp[i]) out.push_back(i);
    return out;
}

}  // namespace alphaforge
