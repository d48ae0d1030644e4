#ifndef METDIM_BITSET_HPP
#define METDIM_BITSET_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace metdim {

/**
 * Heap-backed bitset sized at runtime. Only the handful of operations the
 * hitting-set search needs; every binary operation assumes both operands
 * were built with the same width.
 */
class DynamicBitset {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t bits_per_word = 64;

    DynamicBitset() = default;
    explicit DynamicBitset(std::size_t width)
        : width_(width), words_((width + bits_per_word - 1) / bits_per_word, 0) {}

    auto width() const -> std::size_t { return width_; }
    auto word_count() const -> std::size_t { return words_.size(); }
    auto word(std::size_t i) const -> Word { return words_[i]; }

    auto set(std::size_t i) -> void { words_[i / bits_per_word] |= Word{1} << (i % bits_per_word); }
    auto reset(std::size_t i) -> void { words_[i / bits_per_word] &= ~(Word{1} << (i % bits_per_word)); }
    auto test(std::size_t i) const -> bool {
        return (words_[i / bits_per_word] >> (i % bits_per_word)) & Word{1};
    }

    auto count() const -> std::size_t {
        std::size_t result = 0;
        for (auto w : words_)
            result += static_cast<std::size_t>(std::popcount(w));
        return result;
    }

    auto none() const -> bool {
        for (auto w : words_)
            if (w != 0)
                return false;
        return true;
    }

    auto intersects(const DynamicBitset& other) const -> bool {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & other.words_[i])
                return true;
        return false;
    }

    /// popcount(this & ~mask) without materializing the difference.
    auto count_without(const DynamicBitset& mask) const -> std::size_t {
        std::size_t result = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            result += static_cast<std::size_t>(std::popcount(words_[i] & ~mask.words_[i]));
        return result;
    }

    auto operator|=(const DynamicBitset& other) -> DynamicBitset& {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] |= other.words_[i];
        return *this;
    }

    auto operator&=(const DynamicBitset& other) -> DynamicBitset& {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= other.words_[i];
        return *this;
    }

    auto subtract(const DynamicBitset& other) -> DynamicBitset& {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= ~other.words_[i];
        return *this;
    }

    /// this |= (other & ~mask)
    auto unite_without(const DynamicBitset& other, const DynamicBitset& mask) -> DynamicBitset& {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] |= other.words_[i] & ~mask.words_[i];
        return *this;
    }

    auto clear() -> void {
        for (auto& w : words_)
            w = 0;
    }

    /// Index of the lowest set bit, or width() if empty.
    auto first() const -> std::size_t { return next(0); }

    /// Index of the lowest set bit at or after `from`, or width() if none.
    auto next(std::size_t from) const -> std::size_t {
        if (from >= width_)
            return width_;
        std::size_t wi = from / bits_per_word;
        Word w = words_[wi] & (~Word{0} << (from % bits_per_word));
        while (true) {
            if (w != 0)
                return wi * bits_per_word + static_cast<std::size_t>(std::countr_zero(w));
            if (++wi == words_.size())
                return width_;
            w = words_[wi];
        }
    }

    /// Index of the highest set bit, or width() if empty.
    auto last() const -> std::size_t {
        for (std::size_t wi = words_.size(); wi-- > 0;)
            if (words_[wi] != 0)
                return wi * bits_per_word + (bits_per_word - 1 - static_cast<std::size_t>(std::countl_zero(words_[wi])));
        return width_;
    }

    friend auto operator==(const DynamicBitset&, const DynamicBitset&) -> bool = default;

private:
    std::size_t width_ = 0;
    std::vector<Word> words_;
};

} // namespace metdim

#endif
