#include "ldh/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "ldh/types.hpp"

namespace ldh {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

void Manifest::set(const std::string& key, const std::string& value) {
    for (auto& entry : entries_)
        if (entry.first == key) {
            entry.second = value;
            return;
        }
    entries_.emplace_back(key, value);
}

void Manifest::set(const std::string& key, double value) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    set(key, std::string(buf));
}

void Manifest::set(const std::string& key, long long value) { set(key, std::to_string(value)); }

bool Manifest::has(const std::string& key) const {
    for (const auto& entry : entries_)
        if (entry.first == key) return true;
    return false;
}

const std::string& Manifest::get(const std::string& key) const {
    for (const auto& entry : entries_)
        if (entry.first == key) return entry.second;
    throw FormatError("manifest is missing key '" + key + "'");
}

std::string Manifest::get_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? get(key) : fallback;
}

double Manifest::get_double(const std::string& key) const {
    try {
        return std::stod(get(key));
    } catch (const std::invalid_argument&) {
        throw FormatError("manifest key '" + key + "' is not a number");
    }
}

long long Manifest::get_int(const std::string& key) const {
    try {
        return std::stoll(get(key));
    } catch (const std::invalid_argument&) {
        throw FormatError("manifest key '" + key + "' is not an integer");
    }
}

void Manifest::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    for (const auto& [key, value] : entries_) out << key << " = " << value << "\n";
    if (!out) throw FormatError("short write to '" + path + "'");
}

Manifest Manifest::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open manifest '" + path + "'");
    Manifest manifest;
    std::string line;
    while (std::getline(in, line)) {
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw FormatError("manifest '" + path + "': malformed line '" + stripped + "'");
        manifest.set(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
    return manifest;
}

}  // namespace ldh
