#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include "growthlab/bigint.hpp"
#include "growthlab/errors.hpp"
#include "growthlab/finite_field.hpp"

namespace growthlab {

enum class Family { SL, GL, PSL };

inline std::string family_name(Family f) {
    switch (f) {
        case Family::SL: return "SL";
        case Family::GL: return "GL";
        case Family::PSL: return "PSL";
    }
    return "?";
}

/// A group element is its canonical encoding: the n*n matrix entries,
/// row-major, each packed into ceil(log2 q) bits with entry (0,0) in
/// the most significant position. Equal group elements have equal
/// values; byte/hex serialisations preserve the numeric order. For PSL
/// the stored value is the minimum over the scalar class.
using GroupElem = u128;

class GroupSpec;
using GroupSpecPtr = std::shared_ptr<const GroupSpec>;

/// Family descriptor for SL/GL/PSL(n,q) plus the packing geometry and
/// the scalar subgroup used for PSL canonicalisation. Immutable and
/// freely shareable across threads.
class GroupSpec : public std::enable_shared_from_this<GroupSpec> {
public:
    static constexpr std::uint32_t kMaxEntries = 128;

    GroupSpec(Family family, std::uint32_t n, FieldCtxPtr field)
        : family_(family), n_(n), field_(std::move(field)) {
        if (n_ < 2) throw UnsupportedSpec("matrix dimension must be >= 2");
        bits_per_entry_ = std::bit_width(field_->q() - 1);
        total_bits_ = n_ * n_ * bits_per_entry_;
        if (total_bits_ > 128)
            throw UnsupportedSpec("encoding for " + to_string() +
                                  " does not fit 128 bits");
        if (family_ == Family::PSL) {
            const auto& F = *field_;
            for (FieldElem a = 1; a < F.q(); ++a) {
                if (F.pow(a, n_) == 1) scalar_roots_.push_back(a);
            }
        } else {
            scalar_roots_.push_back(1);
        }
    }

    Family family() const { return family_; }
    std::uint32_t n() const { return n_; }
    std::uint32_t q() const { return field_->q(); }
    std::uint32_t rank() const { return n_ - 1; }
    const FieldCtx& field() const { return *field_; }
    FieldCtxPtr field_ptr() const { return field_; }
    std::uint32_t entry_count() const { return n_ * n_; }
    std::uint32_t bits_per_entry() const { return bits_per_entry_; }
    std::uint32_t encoded_bytes() const { return (total_bits_ + 7) / 8; }

    bool same_as(const GroupSpec& other) const {
        return family_ == other.family_ && n_ == other.n_ && *field_ == other.field();
    }

    std::string to_string() const {
        return family_name(family_) + "(" + std::to_string(n_) + "," +
               std::to_string(q()) + ")";
    }

    /// |SL(n,q)| = q^{n(n-1)/2} * prod_{i=2..n} (q^i - 1);
    /// |GL| = (q-1)|SL|; |PSL| = |SL| / gcd(n, q-1).
    BigUint order() const {
        std::uint64_t q = field_->q();
        BigUint result{1};
        std::uint32_t half = n_ * (n_ - 1) / 2;
        for (std::uint32_t i = 0; i < half; ++i) result *= q;
        std::uint64_t divisor = 1;
        if (family_ == Family::PSL) {
            std::uint64_t a = n_, b = q - 1;
            while (b) {
                std::uint64_t t = a % b;
                a = b;
                b = t;
            }
            divisor = a;
        }
        for (std::uint32_t i = 2; i <= n_; ++i) {
            // q^i - 1 = (q - 1) * (q^{i-1} + ... + 1)
            BigUint series{1};
            for (std::uint32_t j = 1; j < i; ++j) {
                series *= q;
                series += BigUint{1};
            }
            std::uint64_t first = q - 1;
            if (divisor > 1) { // gcd(n, q-1) divides q - 1
                first /= divisor;
                divisor = 1;
            }
            series *= first;
            result = result * series;
        }
        if (family_ == Family::GL) result *= (q - 1);
        return result;
    }

    /// Order as u64; throws when past the cap (callers that enumerate
    /// pass their enumeration cap here).
    std::uint64_t order_u64(std::uint64_t cap) const {
        BigUint o = order();
        if (!o.fits_u64() || o.to_u64() > cap)
            throw TooLarge("order of " + to_string() + " exceeds cap " +
                           std::to_string(cap));
        return o.to_u64();
    }

    // --- packing -----------------------------------------------------------

    GroupElem pack(const FieldElem* entries) const {
        GroupElem v = 0;
        std::uint32_t count = entry_count();
        for (std::uint32_t i = 0; i < count; ++i) {
            v = (v << bits_per_entry_) | entries[i];
        }
        return v;
    }

    void unpack(GroupElem g, FieldElem* out) const {
        std::uint32_t count = entry_count();
        GroupElem mask = (GroupElem{1} << bits_per_entry_) - 1;
        for (std::uint32_t i = count; i-- > 0;) {
            out[i] = static_cast<FieldElem>(g & mask);
            g >>= bits_per_entry_;
        }
    }

    /// Bytes of the encoding, big-endian, zero-padded at the front to
    /// ceil(n^2 b / 8) bytes; lexicographic byte order matches element order.
    std::vector<std::uint8_t> encode_bytes(GroupElem g) const {
        std::uint32_t nbytes = encoded_bytes();
        std::vector<std::uint8_t> out(nbytes);
        for (std::uint32_t i = nbytes; i-- > 0;) {
            out[i] = static_cast<std::uint8_t>(g & 0xff);
            g >>= 8;
        }
        return out;
    }

    GroupElem decode_bytes(const std::vector<std::uint8_t>& bytes) const {
        if (bytes.size() != encoded_bytes())
            throw ParseError("element encoding has wrong byte length");
        GroupElem g = 0;
        for (std::uint8_t b : bytes) g = (g << 8) | b;
        return g;
    }

    std::string encode_hex(GroupElem g) const {
        static const char* digits = "0123456789abcdef";
        auto bytes = encode_bytes(g);
        std::string out;
        out.reserve(bytes.size() * 2);
        for (std::uint8_t b : bytes) {
            out.push_back(digits[b >> 4]);
            out.push_back(digits[b & 0xf]);
        }
        return out;
    }

    GroupElem decode_hex(const std::string& hex) const {
        if (hex.size() != encoded_bytes() * 2)
            throw ParseError("element hex has wrong length: " + hex);
        std::vector<std::uint8_t> bytes(encoded_bytes());
        auto nibble = [&](char c) -> std::uint8_t {
            if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
            if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
            if (c >= 'A' && c <= 'F') return static_cast<std::uint8_t>(c - 'A' + 10);
            throw ParseError("bad hex digit in element line");
        };
        for (std::size_t i = 0; i < bytes.size(); ++i) {
            bytes[i] = static_cast<std::uint8_t>((nibble(hex[2 * i]) << 4) |
                                                 nibble(hex[2 * i + 1]));
        }
        return decode_bytes(bytes);
    }

    // --- element construction ----------------------------------------------

    GroupElem identity() const {
        std::array<FieldElem, kMaxEntries> m{};
        for (std::uint32_t i = 0; i < n_; ++i) m[i * n_ + i] = 1;
        return pack(m.data());
    }

    /// Canonical element from raw matrix entries (row-major). Checks the
    /// family's determinant constraint and, for PSL, reduces to the
    /// minimum encoding over the scalar class.
    GroupElem element(const std::vector<FieldElem>& entries) const {
        if (entries.size() != entry_count())
            throw SpecMismatch("entry count does not match n^2");
        for (FieldElem v : entries) {
            if (!field_->valid(v)) throw SpecMismatch("entry out of field range");
        }
        FieldElem d = determinant(entries.data());
        if (family_ == Family::GL) {
            if (d == 0) throw SpecMismatch("matrix is singular");
        } else if (d != 1) {
            throw SpecMismatch("determinant must be 1 for " + to_string());
        }
        return canonicalize_entries(entries.data());
    }

    /// Transvection I + c*E_{ij}, i != j (0-based indices).
    GroupElem transvection(std::uint32_t i, std::uint32_t j, FieldElem c) const {
        std::array<FieldElem, kMaxEntries> m{};
        for (std::uint32_t k = 0; k < n_; ++k) m[k * n_ + k] = 1;
        m[i * n_ + j] = c;
        return canonicalize_entries(m.data());
    }

    GroupElem mul(GroupElem a, GroupElem b) const {
        std::array<FieldElem, kMaxEntries> ma, mb, mc{};
        unpack(a, ma.data());
        unpack(b, mb.data());
        const FieldCtx& F = *field_;
        for (std::uint32_t i = 0; i < n_; ++i) {
            for (std::uint32_t k = 0; k < n_; ++k) {
                FieldElem aik = ma[i * n_ + k];
                if (aik == 0) continue;
                for (std::uint32_t j = 0; j < n_; ++j) {
                    FieldElem prod = F.mul(aik, mb[k * n_ + j]);
                    mc[i * n_ + j] = F.add(mc[i * n_ + j], prod);
                }
            }
        }
        return canonicalize_entries(mc.data());
    }

    GroupElem inverse(GroupElem a) const {
        std::array<FieldElem, kMaxEntries> m, inv{};
        unpack(a, m.data());
        const FieldCtx& F = *field_;
        for (std::uint32_t i = 0; i < n_; ++i) inv[i * n_ + i] = 1;
        // Gauss-Jordan on [m | inv]
        for (std::uint32_t col = 0; col < n_; ++col) {
            std::uint32_t pivot = col;
            while (pivot < n_ && m[pivot * n_ + col] == 0) ++pivot;
            if (pivot == n_) throw Error("singular matrix in inverse");
            if (pivot != col) {
                for (std::uint32_t j = 0; j < n_; ++j) {
                    std::swap(m[pivot * n_ + j], m[col * n_ + j]);
                    std::swap(inv[pivot * n_ + j], inv[col * n_ + j]);
                }
            }
            FieldElem scale = F.inv(m[col * n_ + col]);
            for (std::uint32_t j = 0; j < n_; ++j) {
                m[col * n_ + j] = F.mul(m[col * n_ + j], scale);
                inv[col * n_ + j] = F.mul(inv[col * n_ + j], scale);
            }
            for (std::uint32_t row = 0; row < n_; ++row) {
                if (row == col) continue;
                FieldElem factor = m[row * n_ + col];
                if (factor == 0) continue;
                for (std::uint32_t j = 0; j < n_; ++j) {
                    m[row * n_ + j] =
                        F.sub(m[row * n_ + j], F.mul(factor, m[col * n_ + j]));
                    inv[row * n_ + j] =
                        F.sub(inv[row * n_ + j], F.mul(factor, inv[col * n_ + j]));
                }
            }
        }
        return canonicalize_entries(inv.data());
    }

    GroupElem conjugate(GroupElem g, GroupElem by) const {
        return mul(mul(inverse(by), g), by);
    }

    FieldElem determinant(const FieldElem* entries) const {
        std::array<FieldElem, kMaxEntries> m;
        std::copy(entries, entries + entry_count(), m.begin());
        const FieldCtx& F = *field_;
        FieldElem det = 1;
        for (std::uint32_t col = 0; col < n_; ++col) {
            std::uint32_t pivot = col;
            while (pivot < n_ && m[pivot * n_ + col] == 0) ++pivot;
            if (pivot == n_) return 0;
            if (pivot != col) {
                for (std::uint32_t j = 0; j < n_; ++j)
                    std::swap(m[pivot * n_ + j], m[col * n_ + j]);
                det = F.neg(det);
            }
            det = F.mul(det, m[col * n_ + col]);
            FieldElem scale = F.inv(m[col * n_ + col]);
            for (std::uint32_t row = col + 1; row < n_; ++row) {
                FieldElem factor = F.mul(m[row * n_ + col], scale);
                if (factor == 0) continue;
                for (std::uint32_t j = col; j < n_; ++j) {
                    m[row * n_ + j] =
                        F.sub(m[row * n_ + j], F.mul(factor, m[col * n_ + j]));
                }
            }
        }
        return det;
    }

    FieldElem determinant_of(GroupElem g) const {
        std::array<FieldElem, kMaxEntries> m;
        unpack(g, m.data());
        return determinant(m.data());
    }

    /// Minimum encoding over the scalar class {s*m : s^n = 1}. Identity
    /// for SL and GL, idempotent in all families.
    GroupElem canonicalize(GroupElem g) const {
        if (scalar_roots_.size() == 1) return g;
        std::array<FieldElem, kMaxEntries> m;
        unpack(g, m.data());
        return canonicalize_entries(m.data());
    }

    bool is_scalar(GroupElem g) const {
        std::array<FieldElem, kMaxEntries> m;
        unpack(g, m.data());
        FieldElem diag = m[0];
        for (std::uint32_t i = 0; i < n_; ++i) {
            for (std::uint32_t j = 0; j < n_; ++j) {
                FieldElem want = i == j ? diag : 0;
                if (m[i * n_ + j] != want) return false;
            }
        }
        return true;
    }

private:
    GroupElem canonicalize_entries(const FieldElem* entries) const {
        GroupElem best = pack(entries);
        if (scalar_roots_.size() > 1) {
            const FieldCtx& F = *field_;
            std::array<FieldElem, kMaxEntries> scaled;
            std::uint32_t count = entry_count();
            for (std::size_t r = 1; r < scalar_roots_.size(); ++r) {
                FieldElem s = scalar_roots_[r];
                for (std::uint32_t i = 0; i < count; ++i)
                    scaled[i] = F.mul(s, entries[i]);
                GroupElem cand = pack(scaled.data());
                if (cand < best) best = cand;
            }
        }
        return best;
    }

    Family family_;
    std::uint32_t n_;
    FieldCtxPtr field_;
    std::uint32_t bits_per_entry_ = 0;
    std::uint32_t total_bits_ = 0;
    std::vector<FieldElem> scalar_roots_;
};

inline GroupSpecPtr make_group_spec(Family family, std::uint32_t n, FieldCtxPtr field) {
    return std::make_shared<GroupSpec>(family, n, std::move(field));
}

/// Parse "SL(n,q)", "GL(n,q)" or "PSL(n,q)".
inline GroupSpecPtr parse_group_spec(const std::string& text) {
    Family family;
    std::size_t at = 0;
    if (text.rfind("PSL(", 0) == 0) {
        family = Family::PSL;
        at = 4;
    } else if (text.rfind("SL(", 0) == 0) {
        family = Family::SL;
        at = 3;
    } else if (text.rfind("GL(", 0) == 0) {
        family = Family::GL;
        at = 3;
    } else {
        throw ParseError("group spec must look like SL(n,q), GL(n,q) or PSL(n,q): " +
                         text);
    }
    if (text.back() != ')') throw ParseError("group spec missing ')': " + text);
    std::string body = text.substr(at, text.size() - at - 1);
    auto comma = body.find(',');
    if (comma == std::string::npos)
        throw ParseError("group spec needs both n and q: " + text);
    std::uint64_t n = 0;
    std::string qpart = body.substr(comma + 1);
    try {
        n = std::stoull(body.substr(0, comma));
    } catch (const std::exception&) {
        throw ParseError("cannot parse matrix dimension in: " + text);
    }
    FieldCtxPtr field = parse_field_spec("GF(" + qpart + ")");
    return make_group_spec(family, static_cast<std::uint32_t>(n), std::move(field));
}

/// Freely reduced word over letters x_1..x_d and their inverses,
/// stored as signed 1-based indices.
struct Word {
    std::vector<int> letters;
    int arity = 0;

    static Word from_letters(std::vector<int> raw) {
        std::vector<int> reduced;
        for (int v : raw) {
            if (v == 0) throw ParseError("word letters are nonzero signed indices");
            if (!reduced.empty() && reduced.back() == -v) {
                reduced.pop_back();
            } else {
                reduced.push_back(v);
            }
        }
        if (reduced.empty())
            throw PreconditionViolated("word reduces to the trivial word");
        int d = 0;
        for (int v : reduced) d = std::max(d, std::abs(v));
        return Word{std::move(reduced), d};
    }

    /// Parse e.g. "x1", "x1^2", "x1*x2^-1*x1", or the shorthand "x^2"
    /// (single variable).
    static Word parse(const std::string& text) {
        std::vector<int> raw;
        std::size_t pos = 0;
        while (pos < text.size()) {
            if (text[pos] == '*' || text[pos] == ' ') {
                ++pos;
                continue;
            }
            if (text[pos] != 'x') throw ParseError("bad word syntax: " + text);
            ++pos;
            std::size_t len = 0;
            int index = 1;
            while (pos + len < text.size() && std::isdigit(text[pos + len])) ++len;
            if (len > 0) {
                index = std::stoi(text.substr(pos, len));
                pos += len;
            }
            if (index < 1) throw ParseError("variable index must be >= 1: " + text);
            long exponent = 1;
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                std::size_t start = pos;
                if (pos < text.size() && text[pos] == '-') ++pos;
                while (pos < text.size() && std::isdigit(text[pos])) ++pos;
                if (pos == start) throw ParseError("missing exponent: " + text);
                exponent = std::stol(text.substr(start, pos - start));
            }
            int letter = exponent < 0 ? -index : index;
            for (long i = 0; i < std::labs(exponent); ++i) raw.push_back(letter);
        }
        return from_letters(std::move(raw));
    }

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < letters.size(); ++i) {
            if (i) out += "*";
            out += "x" + std::to_string(std::abs(letters[i]));
            if (letters[i] < 0) out += "^-1";
        }
        return out;
    }
};

} // namespace growthlab
