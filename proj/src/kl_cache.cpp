#include "affschur/kl_cache.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <optional>
#include <vector>

#include "affschur/serialize.hpp"

namespace affschur {

namespace {

struct Record {
    int r;
    AffPerm y;
    AffPerm w;
    LaurentPoly p;
};

/// nullopt for a line that is not a well-formed record.
std::optional<Record> parse_record(const std::string& line) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    try {
        if (!j.contains("r") || !j.at("r").is_number_integer()) return std::nullopt;
        int r = j.at("r").get<int>();
        AffPerm y = parse_window(j.at("y").dump(), r);
        AffPerm w = parse_window(j.at("w").dump(), r);
        return Record{r, y, w, poly_from_json(j.at("P"))};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::pair<AffPerm, AffPerm> normalized(const AffPerm& y, const AffPerm& w) {
    long a = w.omega_degree();
    return {y.rho_shifted(-a), w.rho_shifted(-a)};
}

template <class F>
void for_each_line(const std::string& path, F&& f) {
    std::ifstream in(path);
    if (!in) {
        if (access(path.c_str(), F_OK) == 0) throw IoError("cannot read cache " + path);
        return;
    }
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        f(line);
    }
}

}  // namespace

CacheLoadStats KLCache::load(HeckeAlgebra& alg) {
    if (alg.period() != r_) throw PeriodMismatch(alg.period(), r_);
    CacheLoadStats st;
    for_each_line(path_, [&](const std::string& line) {
        auto rec = parse_record(line);
        if (!rec) {
            ++st.warnings;
            return;
        }
        if (rec->r != r_) {
            ++st.other_period;
            return;
        }
        on_disk_.insert(normalized(rec->y, rec->w));
        if (alg.preload(rec->y, rec->w, rec->p))
            ++st.loaded;
        else
            ++st.duplicates;
    });
    return st;
}

std::size_t KLCache::save(const HeckeAlgebra& alg) {
    std::vector<std::pair<std::pair<AffPerm, AffPerm>, LaurentPoly>> fresh;
    alg.for_each_kl([&](const AffPerm& y, const AffPerm& w, const LaurentPoly& p) {
        if (p.is_zero()) return;
        auto key = normalized(y, w);
        if (!on_disk_.count(key)) fresh.emplace_back(key, p);
    });
    if (fresh.empty()) return 0;
    std::sort(fresh.begin(), fresh.end(), [](const auto& a, const auto& b) {
        if (a.first.second != b.first.second) return canonical_less(a.first.second, b.first.second);
        return canonical_less(a.first.first, b.first.first);
    });

    std::string buf;
    for (const auto& [key, p] : fresh) {
        json rec = {{"r", r_}, {"y", window_json(key.first)}, {"w", window_json(key.second)}, {"P", poly_json(p)}};
        buf += rec.dump() + "\n";
    }

    int fd = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
    if (fd < 0) throw IoError("cannot open cache " + path_ + ": " + std::strerror(errno));
    const char* data = buf.data();
    std::size_t left = buf.size();
    while (left > 0) {
        ssize_t n = ::write(fd, data, left);
        if (n < 0) {
            if (errno == EINTR) continue;
            int err = errno;
            ::close(fd);
            throw IoError("cannot write cache " + path_ + ": " + std::strerror(err));
        }
        data += n;
        left -= static_cast<std::size_t>(n);
    }
    ::close(fd);
    for (const auto& [key, p] : fresh) on_disk_.insert(key);
    return fresh.size();
}

CacheFileStats scan_cache_file(const std::string& path) {
    CacheFileStats st;
    for_each_line(path, [&](const std::string& line) {
        ++st.lines;
        auto rec = parse_record(line);
        if (!rec)
            ++st.warnings;
        else
            ++st.per_period[rec->r];
    });
    return st;
}

}  // namespace affschur
