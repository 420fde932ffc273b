#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "qchain/rng.hpp"

namespace qchain {

/// Vose alias table: O(K) construction, O(1) per draw. Throws
/// std::invalid_argument for negative entries or a total off 1 by more
/// than 1e-6; the weights are renormalized internally.
class AliasTable {
  public:
    explicit AliasTable(std::span<const double> probs);

    /// One category index; consumes exactly two engine values per draw.
    std::uint64_t draw(std::mt19937_64& gen) const {
        // map 64 random bits onto [0, K) by 128-bit multiply; bias O(K/2^64)
        const std::uint64_t column = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(gen()) * size_) >> 64);
        return rng::uniform_double(gen) < accept_[column] ? column : alias_[column];
    }

    std::uint64_t size() const { return size_; }

  private:
    std::uint64_t size_ = 0;
    std::vector<double> accept_;
    std::vector<std::uint32_t> alias_;
};

} // namespace qchain
