#include "bpcalc/golden.hpp"

#include <cstdlib>
#include <fstream>

#ifndef BPCALC_DEFAULT_GOLDEN_DIR
#define BPCALC_DEFAULT_GOLDEN_DIR "golden"
#endif

namespace bpcalc {

std::filesystem::path golden_dir()
{
    if (const char* env = std::getenv("BPCALC_GOLDEN_DIR"); env && *env)
        return env;
    return BPCALC_DEFAULT_GOLDEN_DIR;
}

std::vector<std::string> suite_names() { return {"example", "p2", "p3", "p5", "p7", "p11", "p13"}; }

GoldenSuite load_suite(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in)
        throw InvalidArgument("cannot open golden file " + file.string());
    Json doc;
    try {
        in >> doc;
    } catch (const Json::exception& e) {
        throw ParseError(file.string() + ": " + e.what());
    }
    GoldenSuite suite;
    suite.name = doc.value("suite", file.stem().string());
    for (const auto& e : doc.at("entries")) {
        GoldenEntry entry;
        entry.name = e.at("name").get<std::string>();
        entry.kind = e.at("kind").get<std::string>();
        entry.prime = e.at("prime").get<int>();
        entry.truncation = e.at("truncation").get<int>();
        entry.index = e.value("index", 0);
        entry.ideal = e.value("ideal", std::vector<int>{});
        entry.series = series_from_json(e.at("series"));
        suite.entries.push_back(std::move(entry));
    }
    return suite;
}

GoldenSuite load_suite(const std::string& name) { return load_suite(golden_dir() / (name + ".json")); }

Comparison compare_series(const RationalSeries& computed, const RationalSeries& golden)
{
    Comparison c;
    c.golden_validity = golden.validity();
    c.computed_validity = computed.validity();
    c.compared = std::min(golden.validity(), computed.validity());
    if (computed.prime() != golden.prime()) {
        c.match = false;
        c.mismatch = "prime differs";
        return c;
    }
    const int rows = std::max(computed.row_count(), golden.row_count());
    const int cap = std::min(computed.x_cap(), golden.x_cap());
    for (int j = 0; j < rows && j <= cap; ++j) {
        for (int i = 0; i + j < c.compared; ++i) {
            const auto& a = computed.stored(i, j);
            const auto& b = golden.stored(i, j);
            if (a == b)
                continue;
            c.match = false;
            c.mismatch = "xi^" + std::to_string(i) + (j ? " x^" + std::to_string(j) : std::string()) + ": expected "
                         + render_polynomial(b) + ", got " + render_polynomial(a);
            return c;
        }
    }
    return c;
}

} // namespace bpcalc
