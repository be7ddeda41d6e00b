#pragma once

#include "dt4/va.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace dt4 {

struct CacheKey {
    std::uint64_t model_hash = 0;
    std::string kind;        // "hilb", "hilb-bracket", "quot", ...
    int n = 0;
    std::string convention;  // convention tag the class depends on
};

// On-disk store of virtual classes, one versioned text file per key.
// Stores go through a temporary file and a rename, so readers never see a
// partial entry.
class ClassCache {
public:
    static constexpr int kFormatVersion = 1;
    static constexpr const char* kEnvVar = "DT4_CACHE_DIR";

    explicit ClassCache(std::filesystem::path dir);
    // Uses $DT4_CACHE_DIR when set and non-empty.
    static std::optional<ClassCache> from_env();

    const std::filesystem::path& dir() const { return dir_; }
    std::filesystem::path path(const CacheKey& key) const;
    std::optional<VAState> load(const CacheKey& key) const;
    void store(const CacheKey& key, const VAState& state) const;
    // Exact file contents written for (key, state).
    static std::string serialize(const CacheKey& key, const VAState& state);

private:
    std::filesystem::path dir_;
};

}  // namespace dt4
