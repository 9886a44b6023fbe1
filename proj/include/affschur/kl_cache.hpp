#pragma once

// On-disk cache of Kazhdan-Lusztig polynomials: one JSON record per line,
//   {"r":2,"y":[...],"w":[...],"P":{"0":"1"}}
// Loading tolerates duplicates and skips corrupt lines (counted as warnings);
// records for another period are ignored.  New entries are appended with a
// single O_APPEND write, so concurrent writers never interleave lines.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "affschur/affperm.hpp"
#include "affschur/hecke.hpp"

namespace affschur {

struct CacheLoadStats {
    std::size_t loaded = 0;
    std::size_t duplicates = 0;
    std::size_t other_period = 0;
    std::size_t warnings = 0;
};

class KLCache {
public:
    /// Period r entries of path; the file need not exist yet.
    KLCache(std::string path, int r) : path_(std::move(path)), r_(r) {}

    const std::string& path() const { return path_; }
    int period() const { return r_; }

    /// Reads the file and seeds alg (whose period must be r).  Throws IoError
    /// when the file exists but cannot be read.
    CacheLoadStats load(HeckeAlgebra& alg);
    /// Appends the nonzero polynomials of alg not yet on disk; returns how many.
    std::size_t save(const HeckeAlgebra& alg);

private:
    std::string path_;
    int r_;
    std::set<std::pair<AffPerm, AffPerm>> on_disk_;
};

/// Scans a cache file without loading it: records per period and bad lines.
struct CacheFileStats {
    std::size_t lines = 0;
    std::size_t warnings = 0;
    std::map<int, std::size_t> per_period;
};
CacheFileStats scan_cache_file(const std::string& path);

}  // namespace affschur
