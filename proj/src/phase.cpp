#include "hcsos/phase.hpp"

#include "hcsos/errors.hpp"
#include "hcsos/tisgm.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

namespace hcsos {

PhaseRecord phase_record(int k, double theta)
{
    PhaseRecord rec;
    rec.k = k;
    rec.theta = theta;
    rec.theta_cr = theta_cr(k);

    const auto set = enumerate(k, theta);
    rec.critical = set.critical;
    for (const auto& sol : set.solutions) {
        const Measure m = sol.branch == Branch::Symmetric ? Measure::Mu0
                        : sol.branch == Branch::Upper     ? Measure::Mu1
                                                          : Measure::Mu2;
        const auto v = classify(k, theta, m);
        rec.rows.push_back({sol.branch, sol.x, sol.y, v.s2, v.kappa, v.ks_value, v.msw_value,
                            set.critical ? Verdict::Undetermined : v.verdict});
    }
    return rec;
}

std::vector<double> theta_grid(double theta_min, double theta_max, int steps)
{
    if (!(theta_min > 0.0) || !(theta_min < theta_max) || !std::isfinite(theta_max))
        throw DomainError("sweep requires 0 < theta_min < theta_max");
    if (steps < 2)
        throw DomainError("sweep requires steps >= 2");
    std::vector<double> g(static_cast<std::size_t>(steps));
    const double h = (theta_max - theta_min) / (steps - 1);
    for (int i = 0; i < steps; ++i)
        g[static_cast<std::size_t>(i)] = theta_min + i * h;
    g.back() = theta_max;
    return g;
}

std::vector<PhaseRecord> sweep(int k, double theta_min, double theta_max, int steps, unsigned threads)
{
    require_order(k);
    const auto grid = theta_grid(theta_min, theta_max, steps);
    std::vector<PhaseRecord> out(grid.size());
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(grid.size())));

    if (workers == 1) {
        for (std::size_t i = 0; i < grid.size(); ++i)
            out[i] = phase_record(k, grid[i]);
        return out;
    }

    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < grid.size(); i += workers)
                        out[i] = phase_record(k, grid[i]);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view s)
{
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw DomainError("malformed number '" + std::string(s) + "'");
    return v;
}

namespace {

std::string_view row_label(const PhaseRecord& rec, const PhaseRow& row)
{
    return rec.critical ? std::string_view("Critical") : to_string(row.verdict);
}

std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

int parse_int(std::string_view s)
{
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw DomainError("malformed integer '" + std::string(s) + "'");
    return v;
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<PhaseRecord>& records)
{
    os << kCsvHeader << '\n';
    for (const auto& rec : records) {
        for (const auto& row : rec.rows) {
            os << rec.k << ',' << format_double(rec.theta) << ',' << format_double(rec.theta_cr) << ','
               << to_string(row.branch) << ',' << format_double(row.x) << ',' << format_double(row.y) << ','
               << format_double(row.s2) << ',' << format_double(row.kappa) << ','
               << format_double(row.ks_value) << ',' << format_double(row.msw_value) << ','
               << row_label(rec, row) << '\n';
        }
    }
}

std::vector<PhaseRecord> read_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader)
        throw DomainError("CSV header does not match the phase-record schema");

    std::vector<PhaseRecord> out;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        const auto f = split(line, ',');
        if (f.size() != 11)
            throw DomainError("CSV line has " + std::to_string(f.size()) + " fields, expected 11");

        const int k = parse_int(f[0]);
        const double theta = parse_double(f[1]);
        if (out.empty() || out.back().k != k || out.back().theta != theta) {
            PhaseRecord rec;
            rec.k = k;
            rec.theta = theta;
            rec.theta_cr = parse_double(f[2]);
            rec.critical = f[10] == "Critical";
            out.push_back(std::move(rec));
        }
        PhaseRow row;
        row.branch = parse_branch(f[3]);
        row.x = parse_double(f[4]);
        row.y = parse_double(f[5]);
        row.s2 = parse_double(f[6]);
        row.kappa = parse_double(f[7]);
        row.ks_value = parse_double(f[8]);
        row.msw_value = parse_double(f[9]);
        row.verdict = f[10] == "Critical" ? Verdict::Undetermined : parse_verdict(f[10]);
        out.back().rows.push_back(row);
    }
    return out;
}

void write_jsonl(std::ostream& os, const std::vector<PhaseRecord>& records)
{
    for (const auto& rec : records) {
        nlohmann::json j;
        j["k"] = rec.k;
        j["theta"] = rec.theta;
        j["theta_cr"] = rec.theta_cr;
        j["critical"] = rec.critical;
        j["solutions"] = nlohmann::json::array();
        for (const auto& row : rec.rows) {
            j["solutions"].push_back({{"branch", to_string(row.branch)},
                                      {"x", row.x},
                                      {"y", row.y},
                                      {"s2", row.s2},
                                      {"kappa", row.kappa},
                                      {"ks_value", row.ks_value},
                                      {"msw_value", row.msw_value},
                                      {"verdict", row_label(rec, row)}});
        }
        os << j.dump() << '\n';
    }
}

std::vector<PhaseRecord> read_jsonl(std::istream& is)
{
    std::vector<PhaseRecord> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        const auto j = nlohmann::json::parse(line);
        PhaseRecord rec;
        rec.k = j.at("k").get<int>();
        rec.theta = j.at("theta").get<double>();
        rec.theta_cr = j.at("theta_cr").get<double>();
        rec.critical = j.at("critical").get<bool>();
        for (const auto& s : j.at("solutions")) {
            PhaseRow row;
            row.branch = parse_branch(s.at("branch").get<std::string>());
            row.x = s.at("x").get<double>();
            row.y = s.at("y").get<double>();
            row.s2 = s.at("s2").get<double>();
            row.kappa = s.at("kappa").get<double>();
            row.ks_value = s.at("ks_value").get<double>();
            row.msw_value = s.at("msw_value").get<double>();
            const auto label = s.at("verdict").get<std::string>();
            row.verdict = label == "Critical" ? Verdict::Undetermined : parse_verdict(label);
            rec.rows.push_back(row);
        }
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace hcsos
