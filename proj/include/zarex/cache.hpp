#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "zarex/io.hpp"

namespace zarex {

/// Append-only JSON-lines result cache. Each line is
/// {"key", "created_at", "tool_version", "record"}; readers take a shared and
/// writers an exclusive advisory lock on the file.
class Cache {
public:
    /// ZAREX_CACHE_DIR, else $XDG_CACHE_HOME/zarex, else $HOME/.cache/zarex.
    static std::filesystem::path default_dir();

    explicit Cache(std::filesystem::path dir);

    std::filesystem::path file() const { return dir_ / "cache.jsonl"; }

    /// Content hash of an operation name and its canonical parameters.
    static std::string key(const std::string& operation, const Json& params);

    /// Latest record stored under `key`, if any.
    std::optional<Json> lookup(const std::string& key) const;
    void append(const std::string& key, const Json& record) const;
    std::vector<Json> entries() const;
    void clear() const;

private:
    std::filesystem::path dir_;
};

}  // namespace zarex
