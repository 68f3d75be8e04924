#include "zarex/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "zarex/errors.hpp"

namespace zarex {
namespace {

// RAII advisory lock on an open file descriptor.
class FileLock {
public:
    FileLock(const std::filesystem::path& path, int flags, int op)
    {
        fd_ = ::open(path.c_str(), flags | O_CLOEXEC, 0644);
        if (fd_ < 0) throw IoError("cannot open cache file " + path.string());
        if (::flock(fd_, op) != 0) {
            ::close(fd_);
            throw IoError("cannot lock cache file " + path.string());
        }
    }
    ~FileLock()
    {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
    FileLock(const FileLock&) = delete;
    FileLock& operator=(const FileLock&) = delete;
    int fd() const { return fd_; }

private:
    int fd_ = -1;
};

std::string utc_now()
{
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string read_all(int fd)
{
    std::string out;
    char buf[65536];
    ::lseek(fd, 0, SEEK_SET);
    for (ssize_t got; (got = ::read(fd, buf, sizeof buf)) > 0;) out.append(buf, static_cast<std::size_t>(got));
    return out;
}

}  // namespace

std::filesystem::path Cache::default_dir()
{
    if (const char* d = std::getenv("ZAREX_CACHE_DIR"); d && *d) return d;
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::filesystem::path(x) / "zarex";
    if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "zarex";
    return ".zarex-cache";
}

Cache::Cache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::string Cache::key(const std::string& operation, const Json& params)
{
    return hex64(fnv1a64(operation + "\n" + canonical(params)));
}

std::vector<Json> Cache::entries() const
{
    if (!std::filesystem::exists(file())) return {};
    FileLock lock(file(), O_RDONLY, LOCK_SH);
    std::istringstream in(read_all(lock.fd()));
    std::vector<Json> out;
    for (std::string line; std::getline(in, line);) {
        if (line.empty()) continue;
        try {
            out.push_back(Json::parse(line));
        } catch (const Json::parse_error&) {
            // A torn line from an interrupted writer; skip it.
        }
    }
    return out;
}

std::optional<Json> Cache::lookup(const std::string& key) const
{
    std::optional<Json> hit;
    for (auto& e : entries())
        if (e.is_object() && e.value("key", "") == key && e.contains("record")) hit = e["record"];
    return hit;
}

void Cache::append(const std::string& key, const Json& record) const
{
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create cache directory " + dir_.string());
    Json entry = {{"key", key}, {"created_at", utc_now()}, {"tool_version", kToolVersion}, {"record", record}};
    std::string line = canonical(entry) + "\n";
    FileLock lock(file(), O_RDWR | O_CREAT | O_APPEND, LOCK_EX);
    // Terminate a torn last line so the new entry stays parseable.
    const off_t size = ::lseek(lock.fd(), 0, SEEK_END);
    char last = '\n';
    if (size > 0 && ::pread(lock.fd(), &last, 1, size - 1) == 1 && last != '\n') line.insert(line.begin(), '\n');
    if (::write(lock.fd(), line.data(), line.size()) != static_cast<ssize_t>(line.size()))
        throw IoError("short write to cache file " + file().string());
}

void Cache::clear() const
{
    if (!std::filesystem::exists(file())) return;
    FileLock lock(file(), O_WRONLY, LOCK_EX);
    if (::ftruncate(lock.fd(), 0) != 0) throw IoError("cannot truncate cache file " + file().string());
}

}  // namespace zarex
