#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace growthlab {

using u128 = unsigned __int128;

/// Unsigned big integer, just enough for exact growth-inequality
/// comparisons (multiply, power, compare, print). Limbs little-endian,
/// no trailing zero limbs; empty vector encodes zero.
class BigUint {
public:
    BigUint() = default;
    BigUint(std::uint64_t v) {
        if (v != 0) limbs_.push_back(v);
    }
    static BigUint from_u128(u128 v) {
        BigUint r;
        if (v != 0) {
            r.limbs_.push_back(static_cast<std::uint64_t>(v));
            if (std::uint64_t hi = static_cast<std::uint64_t>(v >> 64)) {
                r.limbs_.push_back(hi);
            }
        }
        return r;
    }

    bool is_zero() const { return limbs_.empty(); }

    BigUint& operator*=(std::uint64_t m) {
        if (m == 0 || limbs_.empty()) {
            limbs_.clear();
            return *this;
        }
        std::uint64_t carry = 0;
        for (auto& limb : limbs_) {
            u128 prod = static_cast<u128>(limb) * m + carry;
            limb = static_cast<std::uint64_t>(prod);
            carry = static_cast<std::uint64_t>(prod >> 64);
        }
        if (carry) limbs_.push_back(carry);
        return *this;
    }

    BigUint operator*(const BigUint& other) const {
        if (is_zero() || other.is_zero()) return BigUint{};
        BigUint r;
        r.limbs_.assign(limbs_.size() + other.limbs_.size(), 0);
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < other.limbs_.size(); ++j) {
                u128 cur = static_cast<u128>(limbs_[i]) * other.limbs_[j] +
                           r.limbs_[i + j] + carry;
                r.limbs_[i + j] = static_cast<std::uint64_t>(cur);
                carry = static_cast<std::uint64_t>(cur >> 64);
            }
            std::size_t k = i + other.limbs_.size();
            while (carry) {
                u128 cur = static_cast<u128>(r.limbs_[k]) + carry;
                r.limbs_[k] = static_cast<std::uint64_t>(cur);
                carry = static_cast<std::uint64_t>(cur >> 64);
                ++k;
            }
        }
        r.trim();
        return r;
    }

    BigUint& operator+=(const BigUint& other) {
        if (limbs_.size() < other.limbs_.size()) limbs_.resize(other.limbs_.size(), 0);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            u128 cur = static_cast<u128>(limbs_[i]) + carry +
                       (i < other.limbs_.size() ? other.limbs_[i] : 0);
            limbs_[i] = static_cast<std::uint64_t>(cur);
            carry = static_cast<std::uint64_t>(cur >> 64);
        }
        if (carry) limbs_.push_back(carry);
        return *this;
    }

    static BigUint pow(const BigUint& base, unsigned exp) {
        BigUint r{1};
        for (unsigned i = 0; i < exp; ++i) r = r * base;
        return r;
    }
    static BigUint pow(std::uint64_t base, unsigned exp) {
        return pow(BigUint{base}, exp);
    }

    std::strong_ordering operator<=>(const BigUint& other) const {
        if (limbs_.size() != other.limbs_.size())
            return limbs_.size() <=> other.limbs_.size();
        for (std::size_t i = limbs_.size(); i-- > 0;) {
            if (limbs_[i] != other.limbs_[i]) return limbs_[i] <=> other.limbs_[i];
        }
        return std::strong_ordering::equal;
    }
    bool operator==(const BigUint& other) const = default;

    bool fits_u64() const { return limbs_.size() <= 1; }
    std::uint64_t to_u64() const { return limbs_.empty() ? 0 : limbs_[0]; }

    std::string to_string() const {
        if (limbs_.empty()) return "0";
        std::vector<std::uint64_t> work = limbs_;
        std::string out;
        while (!work.empty()) {
            // divide by 10^18, collect remainder digits
            constexpr std::uint64_t kChunk = 1000000000000000000ULL;
            std::uint64_t rem = 0;
            for (std::size_t i = work.size(); i-- > 0;) {
                u128 cur = (static_cast<u128>(rem) << 64) | work[i];
                work[i] = static_cast<std::uint64_t>(cur / kChunk);
                rem = static_cast<std::uint64_t>(cur % kChunk);
            }
            while (!work.empty() && work.back() == 0) work.pop_back();
            std::string digits = std::to_string(rem);
            if (!work.empty()) digits.insert(0, 18 - digits.size(), '0');
            out.insert(0, digits);
        }
        return out;
    }

private:
    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }

    std::vector<std::uint64_t> limbs_;
};

/// Reduced nonnegative rational with 64-bit parts, for report fields
/// like the tripling constant |A^3|/|A|.
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    static Rational reduced(std::uint64_t n, std::uint64_t d) {
        std::uint64_t a = n, b = d;
        while (b) {
            std::uint64_t t = a % b;
            a = b;
            b = t;
        }
        if (a == 0) a = 1;
        return Rational{n / a, d / a};
    }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string to_string() const {
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

} // namespace growthlab
