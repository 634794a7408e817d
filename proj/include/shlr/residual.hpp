#pragma once

#include <string>
#include <vector>

namespace shlr {

// One nonzero value of an identity that should vanish.
struct ResidualEntry {
    int weight = 0;
    std::string site;
    std::string value;
};

struct Residual {
    std::string name;
    std::vector<ResidualEntry> entries;

    bool empty() const { return entries.empty(); }
    void add(int weight, std::string site, std::string value) {
        entries.push_back({weight, std::move(site), std::move(value)});
    }
    void append(const Residual& other) { entries.insert(entries.end(), other.entries.begin(), other.entries.end()); }
    std::string str() const {
        std::string out;
        for (const auto& e : entries) out += name + " [w" + std::to_string(e.weight) + "] " + e.site + ": " + e.value + "\n";
        return out;
    }
    // Smallest weight carrying a nonzero entry, or -1.
    int lowest_weight() const {
        int w = -1;
        for (const auto& e : entries)
            if (w < 0 || e.weight < w) w = e.weight;
        return w;
    }
};

}  // namespace shlr
