#pragma once

#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace zomin {

/// Flat key = value configuration text. Lines starting with '#' (or blank)
/// are ignored and duplicate keys are rejected. Typed getters throw with the
/// offending key in the message, and finalize() rejects unknown keys so
/// typos fail loudly.
class KeyValueConfig {
public:
    static KeyValueConfig parse_text(const std::string& text, std::string source = "<string>") {
        KeyValueConfig cfg;
        cfg.source_ = std::move(source);
        std::istringstream in(text);
        std::string line;
        long lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const std::string trimmed = trim(line);
            if (trimmed.empty()) continue;
            const auto eq = trimmed.find('=');
            if (eq == std::string::npos) {
                cfg.fail_at(lineno, "expected 'key = value'");
            }
            const std::string key = trim(trimmed.substr(0, eq));
            const std::string value = trim(trimmed.substr(eq + 1));
            if (key.empty()) cfg.fail_at(lineno, "empty key");
            if (cfg.values_.count(key)) cfg.fail_at(lineno, "duplicate key '" + key + "'");
            cfg.values_[key] = value;
        }
        return cfg;
    }

    static KeyValueConfig parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open config file: " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_text(buf.str(), path);
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_string(const std::string& key) const {
        touch(key);
        const auto it = values_.find(key);
        if (it == values_.end()) fail(key, "missing required key");
        return it->second;
    }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        touch(key);
        const auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    double get_double(const std::string& key) const { return to_double(key, get_string(key)); }

    double get_double(const std::string& key, double fallback) const {
        touch(key);
        const auto it = values_.find(key);
        return it == values_.end() ? fallback : to_double(key, it->second);
    }

    long get_long(const std::string& key) const { return to_long(key, get_string(key)); }

    long get_long(const std::string& key, long fallback) const {
        touch(key);
        const auto it = values_.find(key);
        return it == values_.end() ? fallback : to_long(key, it->second);
    }

    bool get_bool(const std::string& key, bool fallback) const {
        touch(key);
        const auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        if (it->second == "true" || it->second == "1") return true;
        if (it->second == "false" || it->second == "0") return false;
        fail(key, "expected a boolean (true/false), got '" + it->second + "'");
        return false;
    }

    /// Comma- or space-separated list of unsigned integers.
    std::vector<std::uint64_t> get_seed_list(const std::string& key) const {
        const std::string raw = get_string(key);
        std::vector<std::uint64_t> out;
        std::string token;
        std::istringstream in(raw);
        while (std::getline(in, token, ',')) {
            std::istringstream parts(token);
            std::string word;
            while (parts >> word) {
                try {
                    out.push_back(std::stoull(word));
                } catch (const std::exception&) {
                    fail(key, "expected an unsigned integer list, got '" + word + "'");
                }
            }
        }
        if (out.empty()) fail(key, "seed list is empty");
        return out;
    }

    /// Throws if any key in the file was never consumed by a getter.
    void finalize() const {
        for (const auto& [key, value] : values_) {
            if (!consumed_.count(key)) fail(key, "unknown key");
        }
    }

    const std::string& source() const { return source_; }

private:
    static std::string trim(const std::string& s) {
        const auto begin = s.find_first_not_of(" \t\r");
        if (begin == std::string::npos) return "";
        const auto end = s.find_last_not_of(" \t\r");
        return s.substr(begin, end - begin + 1);
    }

    double to_double(const std::string& key, const std::string& raw) const {
        if (raw == "inf") return std::numeric_limits<double>::infinity();
        try {
            std::size_t used = 0;
            const double v = std::stod(raw, &used);
            if (used != raw.size()) throw std::invalid_argument(raw);
            return v;
        } catch (const std::exception&) {
            fail(key, "expected a real number, got '" + raw + "'");
        }
        return 0;
    }

    long to_long(const std::string& key, const std::string& raw) const {
        try {
            std::size_t used = 0;
            const long v = std::stol(raw, &used);
            if (used != raw.size()) throw std::invalid_argument(raw);
            return v;
        } catch (const std::exception&) {
            fail(key, "expected an integer, got '" + raw + "'");
        }
        return 0;
    }

    void touch(const std::string& key) const { consumed_.insert(key); }

    [[noreturn]] void fail(const std::string& key, const std::string& what) const {
        throw std::runtime_error(source_ + ": key '" + key + "': " + what);
    }

    [[noreturn]] void fail_at(long lineno, const std::string& what) const {
        throw std::runtime_error(source_ + ":" + std::to_string(lineno) + ": " + what);
    }

    std::string source_;
    std::map<std::string, std::string> values_;
    mutable std::set<std::string> consumed_;
};

}  // namespace zomin
