#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "periods/field.hpp"

namespace periods {

/// Bumped whenever serialized formats or enumeration conventions change;
/// part of every cache key, so stale entries simply miss.
inline constexpr const char* kCacheCodeVersion = "1";

/// Environment variable naming the cache root directory.
inline constexpr const char* kCacheEnvVar = "PERIODS_CACHE_DIR";

struct CacheEntryInfo {
    std::string file; // basename within the cache root
    std::string key;  // full logical key, empty if unreadable
    bool valid = false;
};

/// A content-checked JSON store on disk. Entries are single files holding
/// {key, checksum, payload}; a checksum or key mismatch marks the entry
/// corrupt. Reads of corrupt entries report a miss and evict the file.
class DiskCache {
public:
    explicit DiskCache(std::string root);

    /// Cache root resolution: the environment variable if set, else
    /// ".periods-cache" under the current directory.
    static std::string default_root();

    const std::string& root() const { return root_; }

    /// Writes (or overwrites) the entry; returns the file basename.
    std::string put(const std::string& key, const std::string& payload_json);

    /// Checksum-validated read; nullopt on miss. A corrupt entry is evicted
    /// and reported through `corruption_log`.
    std::optional<std::string> get(const std::string& key);

    std::vector<CacheEntryInfo> list() const;
    bool evict(const std::string& key);
    int evict_all();
    /// Re-checks every entry, evicting corrupt ones; returns the full survey
    /// (valid and evicted alike).
    std::vector<CacheEntryInfo> validate();

    const std::vector<std::string>& corruption_log() const { return corruption_log_; }

private:
    std::string root_;
    std::vector<std::string> corruption_log_;
    std::string file_for(const std::string& key) const;
};

/// Logical key for an enumerated matrix-group model or its character table:
/// field data including the chosen quadratic modulus, the form sign and
/// dimension, and which subgroup of the full isometry group is meant.
std::string group_cache_key(const ExtensionContext& ctx, int eps, int dim,
                            const std::string& subgroup_id);

/// Load-or-compute for a deterministic payload: on hit returns the cached
/// text after checking it matches nothing (trusted); on miss computes,
/// stores, and returns. The `check_against_fresh` flag recomputes on every
/// call and treats any divergence from the cached copy as corruption.
std::string cached_payload(DiskCache& cache, const std::string& key,
                           const std::function<std::string()>& compute,
                           bool check_against_fresh = false);

} // namespace periods
