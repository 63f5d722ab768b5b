#pragma once

#include "hcsos/extremality.hpp"
#include "hcsos/model.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace hcsos {

struct PhaseRow {
    Branch branch = Branch::Symmetric;
    double x = 0.0;
    double y = 0.0;
    double s2 = 0.0;
    double kappa = 0.0;
    double ks_value = 0.0;
    double msw_value = 0.0;
    Verdict verdict = Verdict::Undetermined;

    bool operator==(const PhaseRow&) const = default;
};

/// All translation-invariant measures at one (k, theta) grid point.
struct PhaseRecord {
    int k = 2;
    double theta = 0.0;
    double theta_cr = 0.0;
    bool critical = false;  ///< rows are reported but not classified
    std::vector<PhaseRow> rows;

    bool operator==(const PhaseRecord&) const = default;
};

PhaseRecord phase_record(int k, double theta);

/// Inclusive uniform grid [theta_min, theta_max] with `steps` points.
std::vector<double> theta_grid(double theta_min, double theta_max, int steps);

/// Grid points are evaluated on up to `threads` workers; the result is in
/// grid order and independent of the worker count.
std::vector<PhaseRecord> sweep(int k, double theta_min, double theta_max, int steps, unsigned threads = 1);

inline constexpr std::string_view kCsvHeader = "k,theta,theta_cr,branch,x,y,s2,kappa,ks_value,msw_value,verdict";

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);
double parse_double(std::string_view s);

/// One line per solution; critical records carry the verdict "Critical".
void write_csv(std::ostream& os, const std::vector<PhaseRecord>& records);
std::vector<PhaseRecord> read_csv(std::istream& is);

/// One JSON object per record per line.
void write_jsonl(std::ostream& os, const std::vector<PhaseRecord>& records);
std::vector<PhaseRecord> read_jsonl(std::istream& is);

}  // namespace hcsos
