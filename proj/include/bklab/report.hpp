#ifndef BKLAB_REPORT_HPP
#define BKLAB_REPORT_HPP

// Flat key-value experiment configs and the frozen CSV/JSON output layer.
// Outputs are deterministic: fixed column order, %.17g for doubles, no
// timestamps, seed echoed into every artifact.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace bklab {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Config {
public:
    Config() = default;

    // Lines of "key = value"; '#' starts a comment; blank lines ignored.
    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text);

    void set(const std::string& key, const std::string& value) { kv_[key] = value; }
    bool has(const std::string& key) const { return kv_.count(key) > 0; }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    long get_long(const std::string& key, long fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::vector<long> get_longs(const std::string& key, const std::string& fallback) const;
    std::vector<double> get_doubles(const std::string& key, const std::string& fallback) const;
    // "x,y;x,y;..." pairs.
    std::vector<std::pair<double, double>> get_points(const std::string& key,
                                                      const std::string& fallback) const;

    const std::map<std::string, std::string>& items() const { return kv_; }

private:
    std::map<std::string, std::string> kv_;
};

std::string format_double(double v);  // shortest-exact %.17g

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

    void row(std::vector<std::string> cells);
    std::string dump() const;
    void save(const std::string& path) const;
    std::size_t rows() const { return rows_.size(); }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

struct ExperimentReport {
    std::string name;
    bool pass = true;
    nlohmann::json summary;             // config echo, seed, verdicts, headline numbers
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;

    // Writes <out>/<name>.csv and <out>/<name>.json.
    void save(const std::string& out_dir) const;
};

}  // namespace bklab

#endif  // BKLAB_REPORT_HPP
