#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "growthlab/errors.hpp"

namespace growthlab {

/// Element of GF(p^e), encoded as an integer in [0, q): the base-p
/// digit vector (little-endian) of a polynomial residue.
using FieldElem = std::uint32_t;

/// Arithmetic context for GF(p^e), q = p^e <= 2^16. Immutable after
/// construction; all operations are pure table lookups or digit loops,
/// safe to share across threads.
///
/// Multiplication and inversion go through log/antilog tables built at
/// construction from polynomial arithmetic modulo the (verified
/// irreducible) modulus. The polynomial routines stay available as the
/// fallback for any element the tables cannot serve, but with q capped
/// at 2^16 the tables always cover the full field.
class FieldCtx {
public:
    static constexpr std::uint32_t kMaxQ = 1u << 16;

    /// Context with the lexicographically smallest monic irreducible
    /// modulus of degree e (coefficients compared constant term first),
    /// so element encodings are reproducible across machines.
    FieldCtx(std::uint32_t p, std::uint32_t e) : FieldCtx(p, e, {}, true) {}

    /// Context with an explicit monic modulus, given as e+1 coefficients
    /// with the constant term first.
    FieldCtx(std::uint32_t p, std::uint32_t e, std::vector<std::uint32_t> modulus)
        : FieldCtx(p, e, std::move(modulus), false) {}

    std::uint32_t p() const { return p_; }
    std::uint32_t e() const { return e_; }
    std::uint32_t q() const { return q_; }

    /// Modulus coefficients, constant term first (length e+1, monic).
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    std::string modulus_string() const {
        std::string out = "[";
        for (std::size_t i = 0; i < modulus_.size(); ++i) {
            if (i) out += ", ";
            out += std::to_string(modulus_[i]);
        }
        out += "]";
        return out;
    }

    bool valid(FieldElem a) const { return a < q_; }

    FieldElem add(FieldElem a, FieldElem b) const {
        if (p_ == 2) return a ^ b;
        if (e_ == 1) {
            std::uint32_t s = a + b;
            return s >= p_ ? s - p_ : s;
        }
        FieldElem r = 0;
        std::uint32_t place = 1;
        for (std::uint32_t i = 0; i < e_; ++i) {
            std::uint32_t d = a % p_ + b % p_;
            if (d >= p_) d -= p_;
            r += d * place;
            a /= p_;
            b /= p_;
            place *= p_;
        }
        return r;
    }

    FieldElem neg(FieldElem a) const {
        if (p_ == 2) return a;
        if (e_ == 1) return a == 0 ? 0 : p_ - a;
        FieldElem r = 0;
        std::uint32_t place = 1;
        for (std::uint32_t i = 0; i < e_; ++i) {
            std::uint32_t d = a % p_;
            r += (d == 0 ? 0 : p_ - d) * place;
            a /= p_;
            place *= p_;
        }
        return r;
    }

    FieldElem sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }

    FieldElem mul(FieldElem a, FieldElem b) const {
        if (a == 0 || b == 0) return 0;
        std::uint32_t s = log_[a] + log_[b];
        if (s >= q_ - 1) s -= q_ - 1;
        return exp_[s];
    }

    FieldElem inv(FieldElem a) const {
        if (a == 0) throw ZeroInverse("inverse of zero in GF(" + std::to_string(q_) + ")");
        std::uint32_t l = log_[a];
        return exp_[l == 0 ? 0 : q_ - 1 - l];
    }

    FieldElem pow(FieldElem a, std::uint64_t k) const {
        if (a == 0) return k == 0 ? 1 : 0;
        std::uint64_t l = (static_cast<std::uint64_t>(log_[a]) * (k % (q_ - 1))) % (q_ - 1);
        return exp_[l];
    }

    /// A fixed generator of the multiplicative group (the one the
    /// log/antilog tables are built on).
    FieldElem generator() const { return generator_; }

    /// All q elements in increasing encoded order.
    std::vector<FieldElem> enumerate() const {
        std::vector<FieldElem> all(q_);
        for (std::uint32_t v = 0; v < q_; ++v) all[v] = v;
        return all;
    }

    /// Element from base-p digits, constant term first.
    FieldElem from_coeffs(const std::vector<std::uint32_t>& coeffs) const {
        FieldElem v = 0;
        std::uint32_t place = 1;
        for (std::uint32_t i = 0; i < e_ && i < coeffs.size(); ++i) {
            v += (coeffs[i] % p_) * place;
            place *= p_;
        }
        return v;
    }

    bool operator==(const FieldCtx& other) const {
        return p_ == other.p_ && e_ == other.e_ && modulus_ == other.modulus_;
    }

private:
    FieldCtx(std::uint32_t p, std::uint32_t e, std::vector<std::uint32_t> modulus,
             bool pick_default) {
        if (p < 2 || !is_prime(p))
            throw NotPrime("characteristic " + std::to_string(p) + " is not prime");
        if (e < 1) throw DegreeMismatch("extension degree must be >= 1");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < e; ++i) {
            q *= p;
            if (q > kMaxQ)
                throw TooLarge("field size p^e exceeds 2^16");
        }
        p_ = p;
        e_ = e;
        q_ = static_cast<std::uint32_t>(q);

        if (pick_default) {
            modulus_ = smallest_irreducible(p, e);
        } else {
            if (modulus.size() != e + 1)
                throw DegreeMismatch("modulus must have exactly e+1 coefficients");
            for (auto& c : modulus) c %= p;
            if (modulus.back() != 1)
                throw DegreeMismatch("modulus must be monic");
            if (e > 1 && !is_irreducible(modulus, p))
                throw ReducibleModulus("modulus is reducible over GF(" + std::to_string(p) + ")");
            modulus_ = std::move(modulus);
        }
        build_tables();
    }

    static bool is_prime(std::uint32_t n) {
        if (n < 2) return false;
        for (std::uint32_t d = 2; d * d <= n; ++d) {
            if (n % d == 0) return false;
        }
        return true;
    }

    // Polynomials over GF(p) as coefficient vectors, constant term
    // first, degree = size-1 (leading coefficient nonzero unless zero
    // polynomial).

    // remainder of a / b, b monic-normalizable (leading coeff nonzero)
    static std::vector<std::uint32_t> poly_mod(std::vector<std::uint32_t> a,
                                               const std::vector<std::uint32_t>& b,
                                               std::uint32_t p) {
        std::uint32_t lead_inv = mod_inverse(b.back(), p);
        while (a.size() >= b.size()) {
            std::uint32_t factor = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
            if (factor != 0) {
                std::size_t shift = a.size() - b.size();
                for (std::size_t i = 0; i < b.size(); ++i) {
                    std::uint64_t sub = static_cast<std::uint64_t>(factor) * b[i] % p;
                    a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
                }
            }
            a.pop_back();
            while (!a.empty() && a.back() == 0) a.pop_back();
            if (a.size() < b.size()) break;
        }
        return a;
    }

    static std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
        // p prime, a != 0: Fermat
        std::uint64_t result = 1, base = a % p;
        for (std::uint32_t exp = p - 2; exp; exp >>= 1) {
            if (exp & 1) result = result * base % p;
            base = base * base % p;
        }
        return static_cast<std::uint32_t>(result);
    }

    /// Trial division against every monic polynomial of degree 1..e/2.
    static bool is_irreducible(const std::vector<std::uint32_t>& m, std::uint32_t p) {
        std::uint32_t e = static_cast<std::uint32_t>(m.size()) - 1;
        if (m[0] == 0) return e == 1; // divisible by x unless m == x itself
        for (std::uint32_t d = 1; 2 * d <= e; ++d) {
            std::uint64_t count = 1;
            for (std::uint32_t i = 0; i < d; ++i) count *= p;
            std::vector<std::uint32_t> div(d + 1);
            div[d] = 1;
            for (std::uint64_t v = 0; v < count; ++v) {
                std::uint64_t rest = v;
                for (std::uint32_t i = 0; i < d; ++i) {
                    div[i] = static_cast<std::uint32_t>(rest % p);
                    rest /= p;
                }
                if (poly_mod(m, div, p).empty()) return false;
            }
        }
        return true;
    }

    static std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p, std::uint32_t e) {
        if (e == 1) return {0, 1}; // x
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < e; ++i) count *= p;
        std::vector<std::uint32_t> m(e + 1);
        m[e] = 1;
        // lexicographic order with the constant term most significant
        for (std::uint64_t v = 0; v < count; ++v) {
            std::uint64_t rest = v;
            for (std::uint32_t i = e; i-- > 0;) {
                m[i] = static_cast<std::uint32_t>(rest % p);
                rest /= p;
            }
            if (is_irreducible(m, p)) return m;
        }
        throw Error("no irreducible polynomial found"); // unreachable
    }

    FieldElem poly_mul_mod(FieldElem a, FieldElem b) const {
        std::vector<std::uint32_t> prod(2 * e_ - 1, 0);
        std::vector<std::uint32_t> da(e_), db(e_);
        for (std::uint32_t i = 0; i < e_; ++i) {
            da[i] = a % p_;
            a /= p_;
            db[i] = b % p_;
            b /= p_;
        }
        for (std::uint32_t i = 0; i < e_; ++i) {
            if (da[i] == 0) continue;
            for (std::uint32_t j = 0; j < e_; ++j) {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
            }
        }
        // reduce by modulus
        for (std::uint32_t i = 2 * e_ - 2; i >= e_; --i) {
            std::uint32_t c = prod[i];
            if (c != 0) {
                for (std::uint32_t j = 0; j <= e_; ++j) {
                    std::uint64_t sub = static_cast<std::uint64_t>(c) * modulus_[j] % p_;
                    prod[i - e_ + j] =
                        static_cast<std::uint32_t>((prod[i - e_ + j] + p_ - sub) % p_);
                }
            }
            if (i == e_) break;
        }
        FieldElem r = 0;
        std::uint32_t place = 1;
        for (std::uint32_t i = 0; i < e_; ++i) {
            r += prod[i] * place;
            place *= p_;
        }
        return r;
    }

    void build_tables() {
        exp_.assign(q_ - 1, 0);
        log_.assign(q_, 0);
        for (std::uint32_t cand = (e_ == 1 ? 2u : p_); cand < q_; ++cand) {
            FieldElem acc = 1;
            bool primitive = true;
            for (std::uint32_t i = 0; i < q_ - 1; ++i) {
                exp_[i] = acc;
                if (acc == 1 && i > 0) {
                    primitive = false;
                    break;
                }
                acc = e_ == 1 ? static_cast<FieldElem>(
                                    static_cast<std::uint64_t>(acc) * cand % p_)
                              : poly_mul_mod(acc, cand);
            }
            if (primitive && acc == 1) {
                generator_ = cand;
                for (std::uint32_t i = 0; i < q_ - 1; ++i) log_[exp_[i]] = i;
                return;
            }
        }
        // q == 2: the loop above never runs (cand starts at 2 == q)
        if (q_ == 2) {
            exp_ = {1};
            log_ = {0, 0};
            generator_ = 1;
            return;
        }
        throw Error("no multiplicative generator found"); // unreachable
    }

    std::uint32_t p_ = 0;
    std::uint32_t e_ = 0;
    std::uint32_t q_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::vector<FieldElem> exp_; // exp_[i] = g^i, i in [0, q-1)
    std::vector<std::uint32_t> log_;
    FieldElem generator_ = 1;
};

using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

/// Parse "GF(q)" or "GF(p^e)". Rejects sizes that are not prime powers.
inline FieldCtxPtr parse_field_spec(const std::string& text) {
    std::string s = text;
    if (s.size() < 5 || s.substr(0, 3) != "GF(" || s.back() != ')')
        throw ParseError("field spec must look like GF(q) or GF(p^e): " + text);
    s = s.substr(3, s.size() - 4);
    std::uint64_t p = 0, e = 1;
    auto caret = s.find('^');
    try {
        if (caret == std::string::npos) {
            std::uint64_t q = std::stoull(s);
            if (q < 2) throw ParseError("field size must be >= 2: " + text);
            // factor q as p^e
            std::uint64_t base = 0;
            for (std::uint64_t d = 2; d * d <= q; ++d) {
                if (q % d == 0) {
                    base = d;
                    break;
                }
            }
            if (base == 0) base = q; // q prime
            std::uint64_t rest = q;
            e = 0;
            while (rest % base == 0) {
                rest /= base;
                ++e;
            }
            if (rest != 1)
                throw ParseError("field size is not a prime power: " + text);
            p = base;
        } else {
            p = std::stoull(s.substr(0, caret));
            e = std::stoull(s.substr(caret + 1));
        }
    } catch (const std::invalid_argument&) {
        throw ParseError("cannot parse field spec: " + text);
    } catch (const std::out_of_range&) {
        throw ParseError("field spec out of range: " + text);
    }
    return std::make_shared<FieldCtx>(static_cast<std::uint32_t>(p),
                                      static_cast<std::uint32_t>(e));
}

} // namespace growthlab
