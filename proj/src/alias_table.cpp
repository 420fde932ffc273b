#include "qchain/alias_table.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qchain {

AliasTable::AliasTable(std::span<const double> probs) : size_(probs.size()) {
    if (probs.empty()) {
        throw std::invalid_argument("AliasTable: empty distribution");
    }
    if (size_ > std::numeric_limits<std::uint32_t>::max()) {
        throw std::invalid_argument("AliasTable: too many categories");
    }
    double total = 0.0;
    for (const double p : probs) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw std::invalid_argument("AliasTable: probabilities must be finite and >= 0");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-6) {
        throw std::invalid_argument("AliasTable: probabilities must sum to 1 within 1e-6");
    }

    const auto k = static_cast<std::size_t>(size_);
    accept_.assign(k, 1.0);
    alias_.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        alias_[i] = static_cast<std::uint32_t>(i);
    }

    std::vector<double> scaled(k);
    const double norm = static_cast<double>(size_) / total;
    for (std::size_t i = 0; i < k; ++i) {
        scaled[i] = probs[i] * norm;
    }

    std::vector<std::uint32_t> small;
    std::vector<std::uint32_t> large;
    for (std::size_t i = 0; i < k; ++i) {
        (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
    }
    while (!small.empty() && !large.empty()) {
        const std::uint32_t s = small.back();
        small.pop_back();
        const std::uint32_t l = large.back();
        accept_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] = (scaled[l] + scaled[s]) - 1.0;
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    // leftovers in either worklist keep accept = 1 (rounding residue)
}

} // namespace qchain
