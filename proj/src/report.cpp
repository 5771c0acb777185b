#include "bklab/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace bklab {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

Config Config::from_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        cfg.kv_[key] = value;
    }
    return cfg;
}

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str());
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

long Config::get_long(const std::string& key, long fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    try {
        std::size_t pos = 0;
        const long v = std::stol(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ConfigError("config key '" + key + "': not an integer: " + it->second);
    }
}

double Config::get_double(const std::string& key, double fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ConfigError("config key '" + key + "': not a number: " + it->second);
    }
}

std::vector<long> Config::get_longs(const std::string& key, const std::string& fallback) const {
    const std::string raw = get_string(key, fallback);
    std::vector<long> out;
    if (trim(raw).empty()) return out;
    for (const auto& piece : split(raw, ',')) {
        try {
            out.push_back(std::stol(trim(piece)));
        } catch (...) {
            throw ConfigError("config key '" + key + "': bad integer list: " + raw);
        }
    }
    return out;
}

std::vector<double> Config::get_doubles(const std::string& key, const std::string& fallback) const {
    const std::string raw = get_string(key, fallback);
    std::vector<double> out;
    if (trim(raw).empty()) return out;
    for (const auto& piece : split(raw, ',')) {
        try {
            out.push_back(std::stod(trim(piece)));
        } catch (...) {
            throw ConfigError("config key '" + key + "': bad number list: " + raw);
        }
    }
    return out;
}

std::vector<std::pair<double, double>> Config::get_points(const std::string& key,
                                                          const std::string& fallback) const {
    const std::string raw = get_string(key, fallback);
    std::vector<std::pair<double, double>> out;
    if (trim(raw).empty()) return out;
    for (const auto& piece : split(raw, ';')) {
        const auto xy = split(piece, ',');
        if (xy.size() != 2) throw ConfigError("config key '" + key + "': expected x,y;x,y pairs");
        try {
            out.emplace_back(std::stod(trim(xy[0])), std::stod(trim(xy[1])));
        } catch (...) {
            throw ConfigError("config key '" + key + "': bad point list: " + raw);
        }
    }
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CsvWriter::row(std::vector<std::string> cells) {
    if (cells.size() != header_.size())
        throw std::invalid_argument("CsvWriter: row width does not match header");
    rows_.push_back(std::move(cells));
}

std::string CsvWriter::dump() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < header_.size(); ++i)
        out << header_[i] << (i + 1 < header_.size() ? "," : "");
    out << "\n";
    for (const auto& r : rows_) {
        for (std::size_t i = 0; i < r.size(); ++i) out << r[i] << (i + 1 < r.size() ? "," : "");
        out << "\n";
    }
    return out.str();
}

void CsvWriter::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("CsvWriter: cannot write " + path);
    out << dump();
}

void ExperimentReport::save(const std::string& out_dir) const {
    std::filesystem::create_directories(out_dir);
    CsvWriter csv(csv_header);
    for (const auto& r : csv_rows) csv.row(r);
    csv.save(out_dir + "/" + name + ".csv");
    std::ofstream out(out_dir + "/" + name + ".json", std::ios::binary);
    if (!out) throw std::runtime_error("ExperimentReport: cannot write json");
    out << summary.dump(2) << "\n";
}

}  // namespace bklab
