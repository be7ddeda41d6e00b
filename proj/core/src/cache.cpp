#include "dt4/cache.hpp"

#include <atomic>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace dt4 {

namespace fs = std::filesystem;

namespace {

std::string hex(std::uint64_t h)
{
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) s[static_cast<std::size_t>(i)] = digits[h & 15];
    return s;
}

std::string header(const CacheKey& key)
{
    return "dt4-class v" + std::to_string(ClassCache::kFormatVersion) + " " + key.kind + " " + hex(key.model_hash) +
           " " + std::to_string(key.n) + " " + key.convention;
}

bool safe_token(const std::string& s)
{
    if (s.empty()) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.' || c == '+'))
            return false;
    return true;
}

}  // namespace

ClassCache::ClassCache(fs::path dir) : dir_(std::move(dir)) {}

std::optional<ClassCache> ClassCache::from_env()
{
    const char* d = std::getenv(kEnvVar);
    if (!d || !*d) return std::nullopt;
    return ClassCache(d);
}

fs::path ClassCache::path(const CacheKey& key) const
{
    if (!safe_token(key.kind) || !safe_token(key.convention))
        throw std::invalid_argument("cache key tokens must be non-empty file-name safe strings");
    return dir_ / (key.kind + "-" + hex(key.model_hash) + "-n" + std::to_string(key.n) + "-" + key.convention +
                   ".v" + std::to_string(kFormatVersion) + ".json");
}

std::string ClassCache::serialize(const CacheKey& key, const VAState& state)
{
    return header(key) + "\n" + state.json() + "\n";
}

std::optional<VAState> ClassCache::load(const CacheKey& key) const
{
    std::ifstream in(path(key), std::ios::binary);
    if (!in) return std::nullopt;
    std::string head, body;
    std::getline(in, head);
    std::getline(in, body);
    // A header mismatch means a stale or foreign file: treat as a miss.
    if (head != header(key)) return std::nullopt;
    return VAState::from_json(body);
}

void ClassCache::store(const CacheKey& key, const VAState& state) const
{
    fs::create_directories(dir_);
    fs::path final_path = path(key);
    static std::atomic<unsigned> counter{0};
    std::ostringstream tmpname;
    tmpname << final_path.filename().string() << ".tmp" << std::this_thread::get_id() << "." << counter++;
    fs::path tmp = dir_ / tmpname.str();
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
        out << serialize(key, state);
        if (!out) throw std::runtime_error("short write to cache file " + tmp.string());
    }
    fs::rename(tmp, final_path);
}

}  // namespace dt4
