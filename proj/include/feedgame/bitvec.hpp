#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace feedgame {

// Fixed-width bit vector. Bit 0 is the least significant bit of word 0.
// Hex serialization treats the whole vector as one unsigned integer,
// written big-endian and zero-padded to ceil(size/4) digits, so a given
// width always round-trips to the same string length.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    std::size_t size() const { return nbits_; }

    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    void set(std::size_t i, bool v = true) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    // In-place intersection; both operands must have the same width.
    void and_with(const BitVec& other) {
        require_same_width(other);
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
    }

    // True when every set bit of *this is also set in other.
    bool is_subset_of(const BitVec& other) const {
        require_same_width(other);
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w] & ~other.words_[w]) return false;
        return true;
    }

    std::size_t count() const {
        std::size_t n = 0;
        for (std::uint64_t w : words_) n += static_cast<std::size_t>(__builtin_popcountll(w));
        return n;
    }

    bool any() const {
        for (std::uint64_t w : words_)
            if (w) return true;
        return false;
    }

    bool none() const { return !any(); }

    friend bool operator==(const BitVec&, const BitVec&) = default;

    std::size_t hash() const {
        std::uint64_t h = 14695981039346656037ull;
        auto mix = [&h](std::uint64_t v) {
            h ^= v;
            h *= 1099511628211ull;
        };
        mix(nbits_);
        for (std::uint64_t w : words_) mix(w);
        return static_cast<std::size_t>(h);
    }

    std::string to_hex() const {
        const std::size_t digits = (nbits_ + 3) / 4;
        std::string out(digits, '0');
        for (std::size_t d = 0; d < digits; ++d) {
            const std::size_t lo = d * 4;
            unsigned nibble = 0;
            for (std::size_t b = 0; b < 4 && lo + b < nbits_; ++b)
                if (test(lo + b)) nibble |= 1u << b;
            out[digits - 1 - d] = "0123456789abcdef"[nibble];
        }
        return out;
    }

    static BitVec from_hex(std::string_view hex, std::size_t nbits) {
        const std::size_t digits = (nbits + 3) / 4;
        if (hex.size() != digits)
            throw std::invalid_argument("bit vector hex has wrong width: expected " +
                                        std::to_string(digits) + " digits, got " +
                                        std::to_string(hex.size()));
        BitVec out(nbits);
        for (std::size_t d = 0; d < digits; ++d) {
            const char c = hex[digits - 1 - d];
            unsigned nibble;
            if (c >= '0' && c <= '9')
                nibble = static_cast<unsigned>(c - '0');
            else if (c >= 'a' && c <= 'f')
                nibble = static_cast<unsigned>(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F')
                nibble = static_cast<unsigned>(c - 'A' + 10);
            else
                throw std::invalid_argument(std::string("bad hex digit '") + c + "'");
            for (std::size_t b = 0; b < 4; ++b) {
                if (!(nibble & (1u << b))) continue;
                const std::size_t i = d * 4 + b;
                if (i >= nbits) throw std::invalid_argument("bit set beyond declared width");
                out.set(i);
            }
        }
        return out;
    }

private:
    void require_same_width(const BitVec& other) const {
        if (nbits_ != other.nbits_) throw std::logic_error("bit vector width mismatch");
    }

    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

struct BitVecHash {
    std::size_t operator()(const BitVec& v) const { return v.hash(); }
};

}  // namespace feedgame
