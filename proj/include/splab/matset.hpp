#pragma once

#include <bit>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "splab/matrix.hpp"

namespace splab {

// Dense bitset over [0, universe) with a maintained element count.
class IndexSet {
  public:
    IndexSet() = default;
    explicit IndexSet(std::uint64_t universe)
        : universe_(universe), words_((universe + 63) / 64, 0) {}

    std::uint64_t universe() const { return universe_; }
    std::uint64_t size() const { return count_; }
    bool empty() const { return count_ == 0; }

    bool contains(std::uint64_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1;
    }
    void insert(std::uint64_t i) {
        std::uint64_t& w = words_[i >> 6];
        std::uint64_t bit = 1ull << (i & 63);
        if (!(w & bit)) {
            w |= bit;
            ++count_;
        }
    }
    void erase(std::uint64_t i) {
        std::uint64_t& w = words_[i >> 6];
        std::uint64_t bit = 1ull << (i & 63);
        if (w & bit) {
            w &= ~bit;
            --count_;
        }
    }
    void clear() {
        std::fill(words_.begin(), words_.end(), 0);
        count_ = 0;
    }

    // Visits members in ascending order.
    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                unsigned b = static_cast<unsigned>(std::countr_zero(w));
                fn(static_cast<std::uint64_t>(wi) * 64 + b);
                w &= w - 1;
            }
        }
    }
    std::vector<std::uint64_t> to_vector() const;

    bool operator==(const IndexSet& o) const {
        return universe_ == o.universe_ && words_ == o.words_;
    }

  private:
    std::uint64_t universe_ = 0;
    std::uint64_t count_ = 0;
    std::vector<std::uint64_t> words_;
};

// A subset of M_n(F_q), tagged with its ring parameters. The text form is a
// header line "n q count" followed by count ascending decimal indices, one
// per line, each in [0, q^{n^2}).
struct MatSet {
    std::uint32_t n = 0;
    std::uint64_t q = 0;
    IndexSet elems;

    MatSet() = default;
    MatSet(std::uint32_t n_, std::uint64_t q_);

    std::uint64_t size() const { return elems.size(); }
    std::uint64_t universe() const { return elems.universe(); }
    bool compatible(const MatSet& o) const { return n == o.n && q == o.q; }

    std::string to_text() const;
    static MatSet from_text(const std::string& text);
    void save(const std::filesystem::path& path) const;
    static MatSet load(const std::filesystem::path& path);
};

// Universe size q^{n^2}; throws if it cannot be represented.
std::uint64_t mat_universe(std::uint32_t n, std::uint64_t q);

MatSet matset_from_indices(std::uint32_t n, std::uint64_t q, const std::vector<MatIndex>& idx);
MatSet matset_from_stratum(const MatRing& ring, Stratum s);

}  // namespace splab
