#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace hgdecomp {

// Fixed-universe bitset used for vertex and edge sets throughout the search
// code. The universe size is set at construction and all binary operations
// assume equal universes.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t size)
        : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t universe_size() const { return size_; }

    void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1;
    }

    bool any() const {
        for (auto w : words_) {
            if (w) {
                return true;
            }
        }
        return false;
    }
    bool none() const { return !any(); }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) {
            c += static_cast<std::size_t>(__builtin_popcountll(w));
        }
        return c;
    }

    Bitset& operator|=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            words_[i] |= o.words_[i];
        }
        return *this;
    }
    Bitset& operator&=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            words_[i] &= o.words_[i];
        }
        return *this;
    }
    // Set difference.
    Bitset& operator-=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            words_[i] &= ~o.words_[i];
        }
        return *this;
    }

    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

    bool intersects(const Bitset& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            if (words_[i] & o.words_[i]) {
                return true;
            }
        }
        return false;
    }

    bool is_subset_of(const Bitset& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            if (words_[i] & ~o.words_[i]) {
                return false;
            }
        }
        return true;
    }

    bool operator==(const Bitset& o) const {
        return size_ == o.size_ && words_ == o.words_;
    }
    bool operator!=(const Bitset& o) const { return !(*this == o); }
    // Lexicographic on word content; gives a stable total order.
    bool operator<(const Bitset& o) const {
        if (size_ != o.size_) {
            return size_ < o.size_;
        }
        return words_ < o.words_;
    }

    // Index of the lowest set bit, or npos.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t find_first() const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            if (words_[i]) {
                return i * 64 + static_cast<std::size_t>(__builtin_ctzll(words_[i]));
            }
        }
        return npos;
    }
    std::size_t find_next(std::size_t prev) const {
        std::size_t i = prev + 1;
        if (i >= size_) {
            return npos;
        }
        std::size_t wi = i >> 6;
        std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (i & 63));
        while (true) {
            if (w) {
                return wi * 64 + static_cast<std::size_t>(__builtin_ctzll(w));
            }
            if (++wi == words_.size()) {
                return npos;
            }
            w = words_[wi];
        }
    }

    std::vector<std::size_t> to_indices() const {
        std::vector<std::size_t> out;
        for (std::size_t i = find_first(); i != npos; i = find_next(i)) {
            out.push_back(i);
        }
        return out;
    }

    std::size_t hash() const {
        std::size_t h = size_;
        for (auto w : words_) {
            h ^= static_cast<std::size_t>(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

struct BitsetHash {
    std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

}  // namespace hgdecomp
