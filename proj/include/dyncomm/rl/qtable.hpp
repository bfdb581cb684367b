#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "dyncomm/detectors/actions.hpp"
#include "dyncomm/rl/state.hpp"
#include "dyncomm/util.hpp"

namespace dyncomm {

// Learned value table keyed by (state, action); absent entries read as 0.
class QTable {
public:
    struct Entry {
        double value = 0.0;
        std::uint64_t visits = 0;
    };

    double get(const State& s, const Action& a) const {
        auto it = table_.find({s, a});
        return it == table_.end() ? 0.0 : it->second.value;
    }

    Entry& slot(const State& s, const Action& a) { return table_[{s, a}]; }

    std::size_t size() const { return table_.size(); }
    const auto& entries() const { return table_; }

    // One line per entry: "state<TAB>action<TAB>value<TAB>visits", sorted by
    // the textual encodings.
    void dump(std::ostream& out) const {
        std::vector<std::pair<std::string, std::string>> lines;
        lines.reserve(table_.size());
        for (const auto& [key, entry] : table_) {
            lines.emplace_back(encode(key.first) + '\t' + encode(key.second),
                               format_double(entry.value) + '\t' + std::to_string(entry.visits));
        }
        std::sort(lines.begin(), lines.end());
        for (const auto& [head, tail] : lines) out << head << '\t' << tail << '\n';
    }

private:
    using Key = std::pair<State, Action>;
    std::map<Key, Entry> table_;
};

}  // namespace dyncomm
