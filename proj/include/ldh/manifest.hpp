#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ldh {

/// Ordered key = value record of one run: every parameter needed to replay
/// it plus versions and timings. Plain text, one `key = value` per line,
/// `#` comments allowed.
class Manifest {
public:
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    void set(const std::string& key, long long value);

    bool has(const std::string& key) const;
    const std::string& get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    long long get_int(const std::string& key) const;

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

    void save(const std::string& path) const;
    static Manifest load(const std::string& path);

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace ldh
