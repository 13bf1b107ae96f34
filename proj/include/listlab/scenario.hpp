#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "listlab/rational.hpp"

namespace listlab {

// Flat `key = value` configuration with `#` comments. Rationals are
// written "a/b" or as decimal literals. Unknown keys are rejected by each
// scenario before it runs.
class ScenarioConfig {
  public:
    ScenarioConfig() = default;
    explicit ScenarioConfig(std::string scenario) : scenario_(std::move(scenario)) {}

    static ScenarioConfig from_stream(std::istream& in);
    static ScenarioConfig from_file(const std::string& path);

    const std::string& scenario() const { return scenario_; }
    void set_scenario(std::string s) { scenario_ = std::move(s); }

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    long long get_int(const std::string& key, long long fallback) const;
    uint64_t get_u64(const std::string& key, uint64_t fallback) const;
    Rational get_rational(const std::string& key, const Rational& fallback) const;
    std::string require_string(const std::string& key) const;
    Rational require_rational(const std::string& key) const;
    long long require_int(const std::string& key) const;

    // throws ConfigError naming the first key outside `allowed`
    void reject_unknown_keys(const std::vector<std::string>& allowed) const;

    // fully resolved key = value lines, sorted, for the CSV comment echo
    std::vector<std::string> echo_lines() const;

  private:
    std::string scenario_;
    std::map<std::string, std::string> values_;
};

struct ScenarioReport {
    ScenarioConfig config;                       // fully resolved (defaults filled in)
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;  // tokens; no quoting needed
    std::vector<std::string> extra_comments;     // e.g. witness dumps
    double wallclock_ms = 0.0;
    bool assertions_ok = true;  // false -> CLI exit 1
};

// Dispatch on config.scenario(): check, construct, bounds, montecarlo,
// verify-facts. ConfigError for unknown scenarios or bad keys.
ScenarioReport run_scenario(const ScenarioConfig& config);

// CSV body: `# key = value` comment echo, header row, data rows. The
// wall-clock goes into a trailing comment so the body is byte-reproducible.
void write_csv(std::ostream& out, const ScenarioReport& report);
std::string csv_string(const ScenarioReport& report);
// the byte-reproducible part (everything except volatile comment lines)
std::string csv_body(const std::string& csv);

// Whitespace-separated (x, y...) rows sorted numerically by x.
// ConfigError when a named column is missing.
void emit_plotdata(const ScenarioReport& report, const std::string& x_column,
                   const std::vector<std::string>& y_columns, std::ostream& out);

// Same projection over a parsed CSV file (for the plot subcommand).
void emit_plotdata_csv(std::istream& csv_in, const std::string& x_column,
                       const std::vector<std::string>& y_columns, std::ostream& out);

}  // namespace listlab
