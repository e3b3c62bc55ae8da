#include "periods/cache.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace periods {

namespace {

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) out[i] = digits[v & 0xf];
    return out;
}

} // namespace

DiskCache::DiskCache(std::string root) : root_(std::move(root)) {
    fs::create_directories(root_);
}

std::string DiskCache::default_root() {
    if (const char* env = std::getenv(kCacheEnvVar); env && *env) return env;
    return ".periods-cache";
}

std::string DiskCache::file_for(const std::string& key) const {
    return hex64(fnv1a(key)) + ".json";
}

std::string DiskCache::put(const std::string& key, const std::string& payload_json) {
    nlohmann::ordered_json entry;
    entry["key"] = key;
    entry["checksum"] = hex64(fnv1a(payload_json));
    entry["payload"] = payload_json;
    std::string name = file_for(key);
    std::ofstream out(fs::path(root_) / name, std::ios::trunc);
    out << entry.dump(2) << "\n";
    if (!out) throw std::runtime_error("cache: failed to write " + name);
    return name;
}

std::optional<std::string> DiskCache::get(const std::string& key) {
    fs::path path = fs::path(root_) / file_for(key);
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        nlohmann::json entry = nlohmann::json::parse(buf.str());
        std::string stored_key = entry.at("key").get<std::string>();
        std::string payload = entry.at("payload").get<std::string>();
        std::string checksum = entry.at("checksum").get<std::string>();
        if (stored_key != key || checksum != hex64(fnv1a(payload)))
            throw std::runtime_error("checksum/key mismatch");
        return payload;
    } catch (const std::exception& e) {
        corruption_log_.push_back(path.filename().string() + ": " + e.what());
        std::error_code ec;
        fs::remove(path, ec);
        return std::nullopt;
    }
}

std::vector<CacheEntryInfo> DiskCache::list() const {
    std::vector<CacheEntryInfo> out;
    if (!fs::exists(root_)) return out;
    std::vector<fs::path> files;
    for (auto& e : fs::directory_iterator(root_))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (auto& path : files) {
        CacheEntryInfo info;
        info.file = path.filename().string();
        std::ifstream in(path);
        std::stringstream buf;
        buf << in.rdbuf();
        try {
            nlohmann::json entry = nlohmann::json::parse(buf.str());
            info.key = entry.at("key").get<std::string>();
            std::string payload = entry.at("payload").get<std::string>();
            info.valid = entry.at("checksum").get<std::string>() == hex64(fnv1a(payload));
        } catch (...) {
            info.valid = false;
        }
        out.push_back(info);
    }
    return out;
}

bool DiskCache::evict(const std::string& key) {
    std::error_code ec;
    return fs::remove(fs::path(root_) / file_for(key), ec);
}

int DiskCache::evict_all() {
    int n = 0;
    if (!fs::exists(root_)) return 0;
    for (auto& e : fs::directory_iterator(root_))
        if (e.is_regular_file() && e.path().extension() == ".json") {
            std::error_code ec;
            if (fs::remove(e.path(), ec)) ++n;
        }
    return n;
}

std::vector<CacheEntryInfo> DiskCache::validate() {
    auto survey = list();
    for (auto& info : survey)
        if (!info.valid) {
            corruption_log_.push_back(info.file + ": failed validation, evicted");
            std::error_code ec;
            fs::remove(fs::path(root_) / info.file, ec);
        }
    return survey;
}

std::string group_cache_key(const ExtensionContext& ctx, int eps, int dim,
                            const std::string& subgroup_id) {
    std::ostringstream os;
    os << "v" << kCacheCodeVersion << "|p=" << ctx.p << "|f=" << ctx.f << "|mod="
       << ctx.mod_c0 << "," << ctx.mod_c1 << "|eps=" << eps << "|dim=" << dim
       << "|sub=" << subgroup_id;
    return os.str();
}

std::string cached_payload(DiskCache& cache, const std::string& key,
                           const std::function<std::string()>& compute,
                           bool check_against_fresh) {
    auto hit = cache.get(key);
    if (hit && !check_against_fresh) return *hit;
    std::string fresh = compute();
    if (hit && *hit != fresh) {
        // cached copy diverges from a deterministic recomputation: corrupt
        cache.evict(key);
        cache.put(key, fresh);
        return fresh;
    }
    if (!hit) cache.put(key, fresh);
    return fresh;
}

} // namespace periods
