#pragma once

#include <map>
#include <string>
#include <vector>

#include "plastiflow/convergence.hpp"
#include "plastiflow/scenario.hpp"

namespace plastiflow {

// Flat key-value scenario files with [section] headers. Values are plain
// scalars, comma lists, or named built-ins; no expression language, so a file
// pins a run completely.
class Config {
  public:
    static Config parse_file(const std::string& path);
    static Config parse_text(const std::string& text);

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double_or(const std::string& section, const std::string& key, double fallback) const;
    int get_int_or(const std::string& section, const std::string& key, int fallback) const;
    bool get_bool_or(const std::string& section, const std::string& key, bool fallback) const;
    std::vector<double> get_list_or(const std::string& section, const std::string& key,
                                    std::vector<double> fallback) const;

    void set(const std::string& section, const std::string& key, const std::string& value);

    // Canonical text: sections and keys in sorted order, values normalized.
    // parse(serialize(parse(x))) == parse(x).
    std::string serialize() const;

    bool operator==(const Config& other) const { return data_ == other.data_; }

    Scenario to_scenario() const;
    std::vector<SweepCell> sweep_cells() const;

  private:
    std::map<std::string, std::map<std::string, std::string>> data_;
};

}  // namespace plastiflow
