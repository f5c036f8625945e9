#include "fomc/bitset.hpp"

#include <stdexcept>

namespace fomc {

Bitset::Bitset(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

void Bitset::trim()
{
    if (size_ % 64 != 0 && !words_.empty())
        words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
}

void Bitset::set_all()
{
    for (auto & w : words_)
        w = ~std::uint64_t{0};
    trim();
}

void Bitset::reset_all()
{
    for (auto & w : words_)
        w = 0;
}

std::size_t Bitset::count() const
{
    std::size_t c = 0;
    for (auto w : words_)
        c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
}

bool Bitset::any() const
{
    for (auto w : words_)
        if (w)
            return true;
    return false;
}

bool Bitset::is_subset_of(const Bitset & other) const
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~other.words_[i])
            return false;
    return true;
}

bool Bitset::intersects(const Bitset & other) const
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & other.words_[i])
            return true;
    return false;
}

std::size_t Bitset::find_next(std::size_t from) const
{
    if (from >= size_)
        return size_;
    std::size_t w = from >> 6;
    std::uint64_t bits = words_[w] & (~std::uint64_t{0} << (from & 63));
    while (true) {
        if (bits)
            return w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits));
        if (++w >= words_.size())
            return size_;
        bits = words_[w];
    }
}

std::vector<int> Bitset::to_vector() const
{
    std::vector<int> out;
    out.reserve(count());
    for_each([&](int i) { out.push_back(i); });
    return out;
}

Bitset Bitset::from_indices(std::size_t size, const std::vector<int> & indices)
{
    Bitset b(size);
    for (int i : indices) {
        if (i < 0 || static_cast<std::size_t>(i) >= size)
            throw std::out_of_range("bitset index " + std::to_string(i) + " out of range");
        b.set(static_cast<std::size_t>(i));
    }
    return b;
}

std::string Bitset::to_string() const
{
    std::string s(size_, '0');
    for_each([&](int i) { s[static_cast<std::size_t>(i)] = '1'; });
    return s;
}

Bitset & Bitset::operator&=(const Bitset & o)
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] &= o.words_[i];
    return *this;
}

Bitset & Bitset::operator|=(const Bitset & o)
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] |= o.words_[i];
    return *this;
}

Bitset & Bitset::operator^=(const Bitset & o)
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] ^= o.words_[i];
    return *this;
}

Bitset & Bitset::subtract(const Bitset & o)
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] &= ~o.words_[i];
    return *this;
}

std::strong_ordering Bitset::operator<=>(const Bitset & o) const
{
    if (auto c = size_ <=> o.size_; c != 0)
        return c;
    for (std::size_t i = words_.size(); i-- > 0;)
        if (auto c = words_[i] <=> o.words_[i]; c != 0)
            return c;
    return std::strong_ordering::equal;
}

std::size_t Bitset::hash() const
{
    std::size_t h = size_ * 0x9e3779b97f4a7c15ULL;
    for (auto w : words_)
        h = (h ^ (w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
    return h;
}

} // namespace fomc
