#ifndef KINLAB_CONFIG_HPP
#define KINLAB_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

#include "kinlab/potential.hpp"
#include "kinlab/simulator.hpp"
#include "kinlab/transmission.hpp"

namespace kinlab {

// Flat key/value run settings: one `section.key = value` per line, `#` starts
// a comment, blank lines are ignored. Keys outside the documented vocabulary,
// duplicate keys, and malformed lines are all errors.
class Settings {
public:
    Settings() = default;
    static Settings from_file(const std::string& path);
    static Settings from_string(const std::string& text);

    bool has(const std::string& key) const;
    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    int integer_or(const std::string& key, int fallback) const;
    std::string text(const std::string& key) const;
    std::string text_or(const std::string& key, const std::string& fallback) const;
    // Space- or comma-separated list of numbers.
    std::vector<double> number_list(const std::string& key) const;

private:
    std::map<std::string, std::string> kv_;
};

// Builders from settings (all keys optional, struct defaults apply).
DoubleWellPotential potential_from_settings(const Settings& s);
Bar1D bar_from_settings(const Settings& s);
SimConfig sim_from_settings(const Settings& s);

}  // namespace kinlab

#endif  // KINLAB_CONFIG_HPP
