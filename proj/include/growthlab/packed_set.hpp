#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "growthlab/matrix_group.hpp"

namespace growthlab {

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
} // namespace detail

/// Open-addressing hash set of packed group elements. When the
/// encoding fits 64 bits the slots are stored narrow, halving memory
/// for enumeration-scale breadth-first searches. Iteration order is
/// exposed only as a sorted snapshot.
class PackedSet {
public:
    explicit PackedSet(bool narrow, std::size_t expected = 16) : narrow_(narrow) {
        std::size_t cap = 16;
        while (cap * 10 < expected * 16) cap <<= 1; // keep load below ~0.62
        if (narrow_) {
            slots64_.assign(cap, 0);
        } else {
            slots128_.assign(cap, 0);
        }
        occupied_.assign((cap + 63) / 64, 0);
        mask_ = cap - 1;
    }

    static PackedSet for_spec(const GroupSpec& spec, std::size_t expected = 16) {
        return PackedSet(spec.encoded_bytes() <= 8, expected);
    }

    std::size_t size() const { return size_; }

    bool contains(GroupElem key) const {
        std::size_t idx = probe_start(key);
        for (;;) {
            if (!is_occupied(idx)) return false;
            if (load(idx) == key) return true;
            idx = (idx + 1) & mask_;
        }
    }

    /// Returns true when the key was newly inserted.
    bool insert(GroupElem key) {
        if ((size_ + 1) * 16 > (mask_ + 1) * 10) grow();
        std::size_t idx = probe_start(key);
        for (;;) {
            if (!is_occupied(idx)) {
                store(idx, key);
                mark(idx);
                ++size_;
                return true;
            }
            if (load(idx) == key) return false;
            idx = (idx + 1) & mask_;
        }
    }

    std::vector<GroupElem> sorted_elements() const {
        std::vector<GroupElem> out;
        out.reserve(size_);
        for (std::size_t idx = 0; idx <= mask_; ++idx) {
            if (is_occupied(idx)) out.push_back(load(idx));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::size_t probe_start(GroupElem key) const {
        std::uint64_t h = detail::mix64(static_cast<std::uint64_t>(key) ^
                                        (static_cast<std::uint64_t>(key >> 64) *
                                         0x9e3779b97f4a7c15ULL));
        return static_cast<std::size_t>(h) & mask_;
    }

    bool is_occupied(std::size_t idx) const {
        return (occupied_[idx >> 6] >> (idx & 63)) & 1;
    }
    void mark(std::size_t idx) { occupied_[idx >> 6] |= std::uint64_t{1} << (idx & 63); }

    GroupElem load(std::size_t idx) const {
        return narrow_ ? GroupElem{slots64_[idx]} : slots128_[idx];
    }
    void store(std::size_t idx, GroupElem key) {
        if (narrow_) {
            slots64_[idx] = static_cast<std::uint64_t>(key);
        } else {
            slots128_[idx] = key;
        }
    }

    void grow() {
        PackedSet bigger(narrow_, size_ * 2 + 16);
        for (std::size_t idx = 0; idx <= mask_; ++idx) {
            if (is_occupied(idx)) bigger.insert(load(idx));
        }
        *this = std::move(bigger);
    }

    bool narrow_;
    std::vector<std::uint64_t> slots64_;
    std::vector<GroupElem> slots128_;
    std::vector<std::uint64_t> occupied_;
    std::size_t mask_ = 0;
    std::size_t size_ = 0;
};

} // namespace growthlab
