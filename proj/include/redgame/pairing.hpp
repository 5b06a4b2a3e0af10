#ifndef REDGAME_PAIRING_HPP
#define REDGAME_PAIRING_HPP

#include <cstdint>
#include <utility>

namespace rg {

using u64 = std::uint64_t;

/// Cantor pairing: pair_code(i, x) = (i+x)(i+x+1)/2 + x. Bijective on N x N.
constexpr u64 pair_code(u64 i, u64 x) {
    const u64 s = i + x;
    return s * (s + 1) / 2 + x;
}

/// Two-sided inverse of pair_code. 128-bit products keep the triangular-root
/// search exact over the whole u64 range.
constexpr std::pair<u64, u64> unpair_code(u64 z) {
    u64 lo = 0, hi = 6074001000ULL; // w(w+1)/2 exceeds u64 beyond this
    while (lo < hi) {
        const u64 mid = lo + (hi - lo + 1) / 2;
        if ((unsigned __int128)mid * (mid + 1) / 2 <= z) lo = mid;
        else hi = mid - 1;
    }
    const u64 t = static_cast<u64>((unsigned __int128)lo * (lo + 1) / 2);
    const u64 x = z - t;
    return {lo - x, x};
}

} // namespace rg

#endif
