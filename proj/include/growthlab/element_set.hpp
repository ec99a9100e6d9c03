#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "growthlab/errors.hpp"
#include "growthlab/matrix_group.hpp"
#include "growthlab/packed_set.hpp"

namespace growthlab {

/// Deduplicated set of group elements keyed by canonical encoding.
/// Immutable once built: elements are held sorted, so iteration order,
/// serialisation and sampling are deterministic regardless of how the
/// set was produced.
class ElementSet {
public:
    ElementSet(GroupSpecPtr spec, std::vector<GroupElem> elems,
               std::optional<bool> symmetric_hint = std::nullopt)
        : spec_(std::move(spec)), elems_(std::move(elems)) {
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
        contains_identity_ = contains(spec_->identity());
        is_symmetric_ = symmetric_hint ? *symmetric_hint : check_symmetric();
    }

    static ElementSet from_packed_set(GroupSpecPtr spec, const PackedSet& set,
                                      std::optional<bool> symmetric_hint = std::nullopt) {
        return ElementSet(std::move(spec), set.sorted_elements(), symmetric_hint);
    }

    const GroupSpec& spec() const { return *spec_; }
    GroupSpecPtr spec_ptr() const { return spec_; }

    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    const std::vector<GroupElem>& elements() const { return elems_; }
    auto begin() const { return elems_.begin(); }
    auto end() const { return elems_.end(); }

    bool contains(GroupElem g) const {
        return std::binary_search(elems_.begin(), elems_.end(), g);
    }

    bool contains_identity() const { return contains_identity_; }
    bool is_symmetric() const { return is_symmetric_; }

    /// Re-verifies closure under inversion directly (the flag is
    /// normally computed once at construction).
    bool check_symmetric() const {
        for (GroupElem g : elems_) {
            if (!contains(spec_->inverse(g))) return false;
        }
        return true;
    }

    bool same_spec(const ElementSet& other) const {
        return spec_->same_as(other.spec());
    }

    ElementSet with_identity() const {
        if (contains_identity_) return *this;
        std::vector<GroupElem> elems = elems_;
        elems.push_back(spec_->identity());
        return ElementSet(spec_, std::move(elems), is_symmetric_);
    }

    /// Union with the elementwise inverses.
    ElementSet symmetric_closure() const {
        std::vector<GroupElem> elems = elems_;
        for (GroupElem g : elems_) elems.push_back(spec_->inverse(g));
        return ElementSet(spec_, std::move(elems), true);
    }

    ElementSet set_union(const ElementSet& other) const {
        if (!same_spec(other)) throw SpecMismatch("set union across different specs");
        std::vector<GroupElem> elems = elems_;
        elems.insert(elems.end(), other.elems_.begin(), other.elems_.end());
        return ElementSet(spec_, std::move(elems));
    }

    /// Finite nonempty subsets closed under multiplication are
    /// subgroups; this checks that closure directly (quadratic).
    bool is_subgroup() const {
        if (elems_.empty()) return false;
        for (GroupElem a : elems_) {
            for (GroupElem b : elems_) {
                if (!contains(spec_->mul(a, b))) return false;
            }
        }
        return true;
    }

    bool operator==(const ElementSet& other) const {
        return spec_->same_as(other.spec()) && elems_ == other.elems_;
    }

private:
    GroupSpecPtr spec_;
    std::vector<GroupElem> elems_;
    bool contains_identity_ = false;
    bool is_symmetric_ = false;
};

/// One element per line as hex of the canonical encoding; the header
/// line carries the group spec string.
inline void write_element_file(const std::string& path, const ElementSet& set) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << set.spec().to_string() << "\n";
    for (GroupElem g : set) out << set.spec().encode_hex(g) << "\n";
}

inline ElementSet read_element_file(const std::string& path,
                                    GroupSpecPtr expected_spec = nullptr) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::string header;
    if (!std::getline(in, header)) throw ParseError("empty element file: " + path);
    while (!header.empty() && (header.back() == '\r' || header.back() == ' '))
        header.pop_back();
    GroupSpecPtr spec = parse_group_spec(header);
    if (expected_spec && !expected_spec->same_as(*spec))
        throw SpecMismatch("element file is for " + header + ", expected " +
                           expected_spec->to_string());
    if (expected_spec) spec = expected_spec;
    std::vector<GroupElem> elems;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        GroupElem raw = spec->decode_hex(line);
        std::vector<FieldElem> entries(spec->entry_count());
        spec->unpack(raw, entries.data());
        elems.push_back(spec->element(entries)); // validates and canonicalizes
    }
    return ElementSet(std::move(spec), std::move(elems));
}

} // namespace growthlab
