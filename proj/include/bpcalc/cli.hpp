#pragma once

#include "bpcalc/fgl.hpp"
#include "bpcalc/golden.hpp"
#include "bpcalc/obstruction.hpp"
#include "bpcalc/powerop.hpp"

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace bpcalc {

enum class Format { Text, Json };

struct RunConfig {
    std::string command;
    int prime = 2;
    std::optional<int> n;
    std::optional<int> truncation;
    std::vector<int> ideal;
    Format format = Format::Text;
    unsigned threads = 0;
    bool force_full = false;
    std::optional<Basis> basis;
    std::optional<int> max_index;
    bool show_raw = false;
    bool reduce = false;
    std::vector<std::string> suites;
    bool progress = false;
};

enum ExitCode { kOk = 0, kValidationFailure = 1, kGoldenMismatch = 2 };

// Truncation used when none is given: enough for the reference tables at p <= 13.
int default_truncation(int prime);

// "v2,v3" or "2,3"
std::vector<int> parse_ideal(const std::string& text);

// Caches contexts, power operation data and p-series across requests.
class Workspace {
public:
    explicit Workspace(std::ostream* progress = nullptr) : progress_(progress) {}

    const FglContext& context(int prime, int truncation);
    const PowerOpData& power_op(int prime, int truncation, int max_index);
    PSeriesReducer& reducer(int prime);
    std::ostream* progress() const { return progress_; }

private:
    std::map<std::pair<int, int>, std::unique_ptr<FglContext>> contexts_;
    std::map<std::pair<int, int>, PowerOpData> power_ops_;
    std::map<int, std::unique_ptr<PSeriesReducer>> reducers_;
    std::ostream* progress_;
};

// Computes the series a golden entry describes, with the entry's ideal applied.
RationalSeries compute_entry(const GoldenEntry& entry, Workspace& ws);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv into a config and runs it.
int main_entry(int argc, char** argv);

} // namespace bpcalc
