#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pdm/catalog.hpp"
#include "pdm/grid.hpp"

namespace pdm {

enum class Command { List, Potential, Spectrum, Wavefunction, Verify, Sweep };
enum class Format { Csv, Json };

struct SweepSpec {
    std::string key;
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
    std::vector<double> values() const;
};

struct RunConfig {
    Command command = Command::List;
    std::string case_id;  // "all" selects every case
    Params params;
    std::optional<Grid> grid;
    std::optional<int> levels;
    std::optional<std::vector<int>> l_set;
    double tol = 1e-3;
    Format format = Format::Csv;
    std::string out;  // empty: standard output
    std::optional<SweepSpec> sweep;
    int n = 0;
    bool normalize = false;
    bool help = false;
    std::string help_text;
};

// args excludes the program name; throws UsageError naming the offending flag
RunConfig parse_args(const std::vector<std::string>& args);

// 0 success, 1 failed verification or runtime error, 2 usage or parameter error
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

int main_entry(int argc, char** argv);

}  // namespace pdm
