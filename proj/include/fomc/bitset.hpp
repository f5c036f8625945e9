#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace fomc {

/// Fixed-length bitset whose length is chosen at runtime.
///
/// Used for adjacency rows, vertex sets and neighbourhood traces. Two bitsets
/// compare equal only if they have the same length and the same bits; ordering
/// is by length, then by numeric value (bit i has weight 2^i).
class Bitset {
  public:
    Bitset() = default;
    explicit Bitset(std::size_t size);

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void set(std::size_t i, bool value) { value ? set(i) : reset(i); }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    void set_all();
    void reset_all();

    std::size_t count() const;
    bool any() const;
    bool none() const { return !any(); }
    bool is_subset_of(const Bitset & other) const;
    bool intersects(const Bitset & other) const;

    /// Index of the first set bit at or after `from`, or size() if none.
    std::size_t find_next(std::size_t from) const;
    std::size_t find_first() const { return find_next(0); }

    std::vector<int> to_vector() const;
    static Bitset from_indices(std::size_t size, const std::vector<int> & indices);

    /// Bit string with bit 0 first, e.g. "0110".
    std::string to_string() const;

    Bitset & operator&=(const Bitset & o);
    Bitset & operator|=(const Bitset & o);
    Bitset & operator^=(const Bitset & o);
    /// Clears every bit that is set in `o`.
    Bitset & subtract(const Bitset & o);

    friend Bitset operator&(Bitset a, const Bitset & b) { return a &= b; }
    friend Bitset operator|(Bitset a, const Bitset & b) { return a |= b; }
    friend Bitset operator^(Bitset a, const Bitset & b) { return a ^= b; }

    bool operator==(const Bitset & o) const = default;
    std::strong_ordering operator<=>(const Bitset & o) const;

    std::size_t hash() const;

    template <typename F>
    void for_each(F && f) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                int b = __builtin_ctzll(bits);
                f(static_cast<int>(w * 64 + b));
                bits &= bits - 1;
            }
        }
    }

  private:
    void trim();

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

struct BitsetHash {
    std::size_t operator()(const Bitset & b) const { return b.hash(); }
};

} // namespace fomc
