#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "growthlab/errors.hpp"
#include "growthlab/matrix_group.hpp"

namespace growthlab {

/// Minimum degree of a nontrivial complex representation: either an
/// exact published value or the (q-1)/2 lower bound for (P)SL(2,q).
/// Thresholds that consume these values stay sound with the lower
/// bound, since a smaller k only makes the threshold stricter.
struct RepDegreeEntry {
    std::string spec;
    std::uint64_t k_lower = 1;
    std::optional<std::uint64_t> k_exact;
    std::vector<std::uint64_t> degrees; // full list when known
    std::string provenance;
    std::string source;
};

// Mirrors data/degc_table.txt; the test suite keeps the two in sync.
inline const char* kDegcTableText = R"(# Minimum nontrivial complex representation degrees for small (P)SL(2,q).
# k_lower is the ceil((q-1)/2) bound; k_exact and the full degree list
# come from published character tables (ATLAS of Finite Groups). The
# test suite cross-checks each degree list against the enumerated class
# count and the sum-of-squares identity.
#
# columns: spec k_lower k_exact degrees provenance source
PSL(2,4) 2 3 1,3,3,4,5 table ATLAS
PSL(2,5) 2 3 1,3,3,4,5 table ATLAS
PSL(2,7) 3 3 1,3,3,6,7,8 table ATLAS
PSL(2,8) 4 7 1,7,7,7,7,8,9,9,9 table ATLAS
PSL(2,9) 4 5 1,5,5,8,8,9,10 table ATLAS
PSL(2,11) 5 5 1,5,5,10,10,11,12,12 table ATLAS
PSL(2,13) 6 7 1,7,7,12,12,12,13,14,14 table ATLAS
SL(2,5) 2 2 1,2,2,3,3,4,4,5,6 table ATLAS
SL(2,7) 3 3 1,3,3,4,4,6,6,6,7,8,8 table ATLAS
)";

class DegcTable {
public:
    static DegcTable parse(const std::string& text) {
        DegcTable table;
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::istringstream row(line);
            RepDegreeEntry entry;
            std::uint64_t k_exact = 0;
            std::string degrees;
            if (!(row >> entry.spec >> entry.k_lower >> k_exact >> degrees >>
                  entry.provenance >> entry.source))
                throw ParseError("bad degc table row: " + line);
            entry.k_exact = k_exact;
            std::istringstream ds(degrees);
            std::string token;
            while (std::getline(ds, token, ',')) {
                entry.degrees.push_back(std::stoull(token));
            }
            if (entry.k_lower < 1 || k_exact < entry.k_lower)
                throw ParseError("degc entry violates 1 <= k_lower <= k_exact: " + line);
            table.entries_[entry.spec] = std::move(entry);
        }
        return table;
    }

    static const DegcTable& bundled() {
        static DegcTable table = parse(kDegcTableText);
        return table;
    }

    static DegcTable load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw Error("cannot open degc table " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse(buf.str());
    }

    /// Exact entry when bundled; otherwise the (P)SL(2,q) bound family.
    RepDegreeEntry lookup(const GroupSpec& spec) const {
        auto it = entries_.find(spec.to_string());
        if (it != entries_.end()) return it->second;
        if (spec.n() == 2 && spec.family() != Family::GL) {
            RepDegreeEntry entry;
            entry.spec = spec.to_string();
            entry.k_lower = (spec.q() - 1 + 1) / 2; // ceil((q-1)/2)
            if (entry.k_lower < 1) entry.k_lower = 1;
            entry.provenance = "bound";
            entry.source = "minimal degree bound for (P)SL(2,q)";
            return entry;
        }
        throw UnknownGroup("no representation degree data for " + spec.to_string());
    }

    const std::map<std::string, RepDegreeEntry>& entries() const { return entries_; }

private:
    std::map<std::string, RepDegreeEntry> entries_;
};

/// The k fed into quasirandomness thresholds: exact when known, else
/// the lower bound (sound, see RepDegreeEntry).
inline std::uint64_t degc_threshold_value(const RepDegreeEntry& entry) {
    return entry.k_exact ? *entry.k_exact : entry.k_lower;
}

} // namespace growthlab
