#pragma once

#include "bpcalc/render.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace bpcalc {

// One series from a reference table.
struct GoldenEntry {
    std::string name;
    // log, exp, reduced-pseries, a, a-reduced, mc
    std::string kind;
    int prime = 0;
    int truncation = 0;
    // i for a / a-reduced, n for mc
    int index = 0;
    // Generators set to zero before comparing.
    std::vector<int> ideal;
    RationalSeries series{2, Basis::V, 0};
};

struct GoldenSuite {
    std::string name;
    std::vector<GoldenEntry> entries;
};

// $BPCALC_GOLDEN_DIR if set, else the directory shipped with the sources.
std::filesystem::path golden_dir();

std::vector<std::string> suite_names();

GoldenSuite load_suite(const std::filesystem::path& file);
GoldenSuite load_suite(const std::string& name);
inline GoldenSuite load_suite(const char* name) { return load_suite(std::string(name)); }

struct Comparison {
    bool match = true;
    // Coefficients below xi^compared were checked.
    int compared = 0;
    int golden_validity = 0;
    int computed_validity = 0;
    std::string mismatch;
};

// Exact comparison on the jointly known range.
Comparison compare_series(const RationalSeries& computed, const RationalSeries& golden);

} // namespace bpcalc
