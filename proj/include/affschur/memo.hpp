#pragma once

#include <atomic>
#include <cstddef>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace affschur {

/// Memo table with concurrent lookups and serialized, idempotent inserts.
///
/// Values are never erased, and unordered_map nodes are stable, so the
/// pointers handed out by find() and insert() stay valid for the lifetime of
/// the table.  When two threads race to insert the same key the first value
/// wins; since every value is a deterministic function of its key both are
/// equal anyway.
template <class Key, class Value, class Hash = std::hash<Key>>
class ConcurrentMemo {
public:
    const Value* find(const Key& key) const {
        std::shared_lock lock(mutex_);
        auto it = table_.find(key);
        if (it == table_.end()) {
            misses_.fetch_add(1, std::memory_order_relaxed);
            return nullptr;
        }
        hits_.fetch_add(1, std::memory_order_relaxed);
        return &it->second;
    }

    const Value& insert(const Key& key, Value value) {
        std::unique_lock lock(mutex_);
        auto [it, inserted] = table_.try_emplace(key, std::move(value));
        return it->second;
    }

    template <class F>
    void for_each(F&& f) const {
        std::shared_lock lock(mutex_);
        for (const auto& [k, v] : table_) f(k, v);
    }

    std::size_t size() const {
        std::shared_lock lock(mutex_);
        return table_.size();
    }
    std::size_t hits() const { return hits_.load(); }
    std::size_t misses() const { return misses_.load(); }

private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<Key, Value, Hash> table_;
    mutable std::atomic<std::size_t> hits_{0};
    mutable std::atomic<std::size_t> misses_{0};
};

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace affschur
